//! Rotation-angle syntax: `P/Qpi`, `Ppi`, `pi` or raw radians.

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim().to_ascii_lowercase();
    let err = || format!("malformed angle {text:?} (expected e.g. 15/32pi, pi, or radians)");
    let coef = t.strip_suffix("pi").or_else(|| t.strip_suffix('π'));
    let value = match coef {
        Some(c) => {
            let c = c.trim().trim_end_matches('*').trim();
            if c.is_empty() {
                PI
            } else if let Some((p, q)) = c.split_once('/') {
                let p: f64 = p.trim().parse().map_err(|_| err())?;
                let q: f64 = q.trim().parse().map_err(|_| err())?;
                if q == 0.0 {
                    return Err(err());
                }
                p * PI / q
            } else {
                c.parse::<f64>().map_err(|_| err())? * PI
            }
        }
        None => t.parse().map_err(|_| err())?,
    };
    if !value.is_finite() {
        return Err(err());
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_multiples() {
        assert_eq!(parse_angle("15/32pi").unwrap(), 15.0 * PI / 32.0);
        assert_eq!(parse_angle("17/32pi").unwrap(), 17.0 * PI / 32.0);
        assert_eq!(parse_angle("1/2pi").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("2/3*pi").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("0.5pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "pie", "1/0pi", "a/2pi", "1/2/3pi", "inf", "NaN"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }
}
