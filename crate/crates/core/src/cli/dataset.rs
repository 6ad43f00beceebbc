//! Two-column CSV datasets.
//!
//! ```text
//! # comment lines and blank lines are skipped
//! inf,sup
//! 0,2
//! 1.5,3
//! ```
//!
//! The header is either `inf,sup` or `mid,spr`. Numbers use a decimal point
//! regardless of locale; LF and CRLF line endings are both accepted.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::interval::{Interval, Sample};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    InfSup,
    MidSpr,
}

impl DatasetFormat {
    pub fn header(self) -> &'static str {
        match self {
            DatasetFormat::InfSup => "inf,sup",
            DatasetFormat::MidSpr => "mid,spr",
        }
    }
}

fn parse_real(field: &str, line: usize, column: &str) -> Result<f64> {
    let value: f64 = field.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{}` is not a decimal number ({column})", field.trim()),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("{column} must be finite, got `{}`", field.trim()),
        });
    }
    Ok(value)
}

/// Parses a dataset, reporting the 1-based line of the first problem.
pub fn parse_dataset(text: &str) -> Result<(DatasetFormat, Sample)> {
    let mut format = None;
    let mut items = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        let content = raw.strip_suffix('\r').unwrap_or(raw).trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        last_line = line;
        let Some(fmt) = format else {
            format = Some(match content {
                "inf,sup" => DatasetFormat::InfSup,
                "mid,spr" => DatasetFormat::MidSpr,
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("header must be `inf,sup` or `mid,spr`, got `{other}`"),
                    })
                }
            });
            continue;
        };
        let fields: Vec<&str> = content.split(',').collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, got {}", fields.len()),
            });
        }
        let interval = match fmt {
            DatasetFormat::InfSup => {
                let lo = parse_real(fields[0], line, "inf")?;
                let hi = parse_real(fields[1], line, "sup")?;
                Interval::new(lo, hi)
            }
            DatasetFormat::MidSpr => {
                let mid = parse_real(fields[0], line, "mid")?;
                let spr = parse_real(fields[1], line, "spr")?;
                Interval::from_mid_spr(mid, spr)
            }
        }
        .map_err(|e| Error::Parse {
            line,
            message: match e {
                Error::InvalidInput(m) | Error::ArithmeticOverflow(m) => m,
                other => other.to_string(),
            },
        })?;
        items.push(interval);
    }
    let format = format.ok_or_else(|| Error::Parse {
        line: last_line.max(1),
        message: "missing header `inf,sup` or `mid,spr`".into(),
    })?;
    if items.is_empty() {
        return Err(Error::Parse {
            line: last_line,
            message: "dataset has no rows".into(),
        });
    }
    Ok((format, Sample::new(items)?))
}

/// Renders a dataset with shortest round-trip decimals.
pub fn write_dataset(sample: &Sample, format: DatasetFormat) -> String {
    let mut out = String::new();
    out.push_str(format.header());
    out.push('\n');
    for k in sample {
        let (a, b) = match format {
            DatasetFormat::InfSup => (k.inf(), k.sup()),
            DatasetFormat::MidSpr => (k.mid(), k.spr()),
        };
        writeln!(out, "{a},{b}").expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_headers() {
        let (f, s) = parse_dataset("inf,sup\n0,2\n2,4\n").unwrap();
        assert_eq!(f, DatasetFormat::InfSup);
        assert_eq!(s, Sample::from_endpoints(&[(0.0, 2.0), (2.0, 4.0)]).unwrap());
        let (f, s) = parse_dataset("mid,spr\r\n1,1\r\n3,0.5\r\n").unwrap();
        assert_eq!(f, DatasetFormat::MidSpr);
        assert_eq!(s, Sample::from_endpoints(&[(0.0, 2.0), (2.5, 3.5)]).unwrap());
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let text = "# exported 2024\n\ninf,sup\n# a note\n3,7\n\n";
        let (_, s) = parse_dataset(text).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_dataset("mid,spr\n1,-0.5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_dataset("# c\ninf,sup\n0,1\n3,2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = parse_dataset("inf,sup\n0,1,2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_dataset("inf,sup\n0,abc\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_dataset("inf,sup\n0,inf\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_dataset("lo,hi\n0,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn rejects_empty_datasets() {
        assert!(parse_dataset("").is_err());
        assert!(parse_dataset("inf,sup\n").is_err());
        assert!(parse_dataset("# only a comment\n").is_err());
    }

    #[test]
    fn locale_style_decimal_commas_are_rejected() {
        assert!(parse_dataset("inf,sup\n0,5;1,5\n").is_err());
        assert!(parse_dataset("inf,sup\n\"0,5\",1\n").is_err());
    }

    #[test]
    fn writes_shortest_decimals() {
        let s = Sample::from_endpoints(&[(0.1, 0.30000000000000004), (-2.0, 1e300)]).unwrap();
        let text = write_dataset(&s, DatasetFormat::InfSup);
        assert!(text.starts_with("inf,sup\n0.1,0.30000000000000004\n"));
        let (_, back) = parse_dataset(&text).unwrap();
        assert_eq!(back, s);
    }
}
