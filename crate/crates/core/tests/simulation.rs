use interval_robust::simulation::{
    breakdown_experiment, consistency_experiment, large_sample_median, population_median_truth,
    sample_intervals, substream, Contamination, ExperimentSpec, IntervalDistribution, MidLaw, SprLaw,
    TruthProvenance, LARGE_SAMPLE_N,
};
use interval_robust::{d_theta, Sample, Theta, ThetaConfig};

fn clean_five() -> Sample {
    Sample::from_endpoints(&[(1.0, 3.0), (2.0, 7.0), (4.0, 5.0), (0.0, 6.0), (3.0, 9.0)]).unwrap()
}

const MAGNITUDES: [f64; 5] = [1e4, 1e5, 1e6, 1e7, 1e8];

#[test]
fn contaminated_fraction_concentrates() {
    // spr ~ uniform(1,1) and spr_shift 10 make contaminated draws recognisable
    let dist = IntervalDistribution::new(
        MidLaw::Normal { mean: 0.0, sd: 1.0 },
        SprLaw::Uniform { low: 1.0, high: 1.0 },
    )
    .unwrap()
    .with_contamination(Contamination {
        fraction: 0.2,
        mid_shift: 0.0,
        spr_shift: 10.0,
    })
    .unwrap();
    let n = 100_000;
    let sample = sample_intervals(&dist, n, &mut substream(11, 0, 0)).unwrap();
    let hits = sample.iter().filter(|k| k.spr() > 5.0).count();
    let rate = hits as f64 / n as f64;
    // binomial sd is sqrt(0.2 * 0.8 / 1e5) ~ 1.3e-3, so 0.01 is ~8 sd
    assert!((rate - 0.2).abs() <= 0.01, "rate {rate}");
}

#[test]
fn large_sample_truth_is_stable_for_skewed_spreads() {
    let dist = IntervalDistribution::new(
        MidLaw::Normal { mean: 0.0, sd: 1.0 },
        SprLaw::LogNormal { mu: 0.0, sigma: 1.0 },
    )
    .unwrap();
    let (truth, prov) = population_median_truth(&dist, Theta::ONE).unwrap();
    assert_eq!(prov, TruthProvenance::LargeSample { n: LARGE_SAMPLE_N });
    let other = large_sample_median(&dist, Theta::ONE, LARGE_SAMPLE_N, 99).unwrap();
    let gap = d_theta(&truth, &other, Theta::ONE);
    assert!(gap < 5e-3, "two plug-in truths differ by {gap}");
}

#[test]
fn symmetry_truth_matches_large_sample() {
    for (mid_law, spr_law, theta) in [
        (
            MidLaw::Normal { mean: 0.0, sd: 1.0 },
            SprLaw::Uniform { low: 1.0, high: 3.0 },
            1.0,
        ),
        (
            MidLaw::Uniform { low: -1.0, high: 1.0 },
            SprLaw::Uniform { low: 0.0, high: 2.0 },
            0.5,
        ),
    ] {
        let dist = IntervalDistribution::new(mid_law, spr_law).unwrap();
        let theta = Theta::new(theta).unwrap();
        let (truth, prov) = population_median_truth(&dist, theta).unwrap();
        assert_eq!(prov, TruthProvenance::Symmetry);
        let plug_in = large_sample_median(&dist, theta, LARGE_SAMPLE_N, 3).unwrap();
        let gap = d_theta(&truth, &plug_in, theta);
        assert!(gap < 5e-3, "{truth} vs {plug_in}: {gap}");
    }
}

#[test]
fn error_shrinks_with_sample_size() {
    let spec = ExperimentSpec {
        distribution: IntervalDistribution::new(
            MidLaw::Normal { mean: 0.0, sd: 1.0 },
            SprLaw::Uniform { low: 1.0, high: 3.0 },
        )
        .unwrap(),
        theta: Theta::ONE,
        tol: ThetaConfig::DEFAULT_TOL,
        max_iter: ThetaConfig::DEFAULT_MAX_ITER,
        sample_sizes: vec![100, 10_000],
        replications: 50,
        seed: 4,
    };
    let result = consistency_experiment(&spec).unwrap();
    assert!(result.summaries[1].median < result.summaries[0].median);
    assert_eq!(result, consistency_experiment(&spec).unwrap());
}

#[test]
fn no_replacement_means_no_drift() {
    let rows = breakdown_experiment(&clean_five(), &ThetaConfig::default(), &MAGNITUDES, 0).unwrap();
    assert!(rows.iter().all(|r| r.median_drift == 0.0 && r.mean_drift == 0.0));
}

#[test]
fn two_of_five_replaced_keeps_median_bounded() {
    let rows = breakdown_experiment(&clean_five(), &ThetaConfig::default(), &MAGNITUDES, 2).unwrap();
    let first = rows.first().unwrap().median_drift;
    let last = rows.last().unwrap().median_drift;
    assert!(last <= 2.0 * first, "drift {first} -> {last}");
    assert!(last < 20.0);
    // the mean follows the outliers linearly
    for r in &rows {
        assert!(r.mean_drift >= 2.0 * r.magnitude / 5.0 - 20.0);
    }
}

#[test]
fn three_of_five_replaced_breaks_the_median() {
    let rows = breakdown_experiment(&clean_five(), &ThetaConfig::default(), &MAGNITUDES, 3).unwrap();
    let first = rows.first().unwrap().median_drift;
    let last = rows.last().unwrap().median_drift;
    assert!(last > 1e3 * first, "drift {first} -> {last}");
    for r in &rows {
        assert!(r.median_drift > r.magnitude / 2.0);
    }
}

#[test]
fn majority_contamination_drags_the_median_mid() {
    for (n, k) in [(5, 3), (5, 4), (6, 3), (7, 4)] {
        let base =
            Sample::from_endpoints(&(0..n).map(|i| (i as f64, i as f64 + 2.0)).collect::<Vec<_>>()).unwrap();
        let cfg = ThetaConfig::default();
        let rows = breakdown_experiment(&base, &cfg, &[1e6], k).unwrap();
        let mut items = base.items().to_vec();
        items[n - k..].fill(interval_robust::Interval::point(1e6).unwrap());
        let median = interval_robust::dtheta_median(&Sample::new(items).unwrap(), &cfg).unwrap();
        assert!(
            median.estimate.mid() > 1e6 / 2.0,
            "n={n} k={k}: {}",
            median.estimate
        );
        assert!(rows[0].median_drift > 1e5);
    }
}

#[test]
fn single_outlier_moves_mean_not_median() {
    let base = clean_five();
    let diameter = base
        .iter()
        .flat_map(|a| base.iter().map(move |b| d_theta(a, b, Theta::ONE)))
        .fold(0.0, f64::max);
    let scale = base
        .iter()
        .map(|k| k.inf().abs().max(k.sup().abs()))
        .fold(0.0, f64::max);
    let rows = breakdown_experiment(&base, &ThetaConfig::default(), &MAGNITUDES, 1).unwrap();
    for r in rows {
        assert!(r.mean_drift >= r.magnitude / 10.0 - scale);
        assert!(r.median_drift < diameter, "{} vs {diameter}", r.median_drift);
    }
}
