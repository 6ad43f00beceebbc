//! Read and write interval datasets in either column layout.
//!
//! `cargo run --example datasets`

use interval_robust::cli::{parse_dataset, write_dataset, DatasetFormat};
use interval_robust::simulation::{sample_intervals, substream, IntervalDistribution, MidLaw, SprLaw};

fn main() -> interval_robust::Result<()> {
    let text = "# blood pressure, systolic range\ninf,sup\n118,131\n121,140\n109,127\n";
    let (format, sample) = parse_dataset(text)?;
    println!("parsed {} rows as {:?}", sample.len(), format);
    print!("{}", write_dataset(&sample, DatasetFormat::MidSpr));

    // malformed rows are reported with their line number
    if let Err(e) = parse_dataset("mid,spr\n1,0.5\n2,-1\n") {
        println!("rejected: {e}");
    }

    let dist = IntervalDistribution::new(
        MidLaw::Uniform { low: -1.0, high: 1.0 },
        SprLaw::HalfNormal { sigma: 0.5 },
    )?;
    let drawn = sample_intervals(&dist, 3, &mut substream(42, 3, 0))?;
    print!("{}", write_dataset(&drawn, DatasetFormat::InfSup));
    Ok(())
}
