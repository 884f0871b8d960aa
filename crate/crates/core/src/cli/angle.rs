//! Angle literals: plain decimals (`0.25`, `-1e-3`) or multiples and fractions
//! of π (`pi`, `-pi/2`, `3pi/4`, `2*pi/3`, `π/200`).

use std::f64::consts::PI;

pub fn parse_angle(input: &str) -> Result<f64, String> {
    let s = input.trim().to_ascii_lowercase().replace('π', "pi");
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let value = match s.find("pi") {
        None => s
            .parse::<f64>()
            .map_err(|e| format!("invalid angle {input:?}: {e}"))?,
        Some(pos) => {
            let coef = s[..pos].trim().trim_end_matches('*').trim();
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c
                    .parse::<f64>()
                    .map_err(|e| format!("invalid coefficient in {input:?}: {e}"))?,
            };
            let rest = s[pos + 2..].trim();
            let denom = if rest.is_empty() {
                1.0
            } else {
                let d = rest
                    .strip_prefix('/')
                    .ok_or_else(|| format!("expected '/denominator' after pi in {input:?}"))?;
                d.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("invalid denominator in {input:?}: {e}"))?
            };
            if denom == 0.0 {
                return Err(format!("zero denominator in {input:?}"));
            }
            coef * PI / denom
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle {input:?} is not finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(parse_angle("0.25"), Ok(0.25));
        assert_eq!(parse_angle("-1e-3"), Ok(-1e-3));
        assert_eq!(parse_angle(" 3 "), Ok(3.0));
    }

    #[test]
    fn pi_fractions() {
        assert_eq!(parse_angle("pi"), Ok(PI));
        assert_eq!(parse_angle("-pi"), Ok(-PI));
        assert_eq!(parse_angle("pi/200"), Ok(PI / 200.0));
        assert_eq!(parse_angle("-pi/30000"), Ok(-PI / 30000.0));
        assert_eq!(parse_angle("3pi/4"), Ok(3.0 * PI / 4.0));
        assert_eq!(parse_angle("2*pi/3"), Ok(2.0 * PI / 3.0));
        assert_eq!(parse_angle("π/2"), Ok(PI / 2.0));
        assert_eq!(parse_angle("PI/2"), Ok(PI / 2.0));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "pi/", "pi/0", "pi*2", "xpi", "1e999"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }
}
