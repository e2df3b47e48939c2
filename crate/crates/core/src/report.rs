use serde::{Deserialize, Serialize};

/// One verified relation: its measured defect against a tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    /// Non-finite values (a computation that failed) are written as strings.
    #[serde(with = "extended_float")]
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes_checked: Option<usize>,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, defect: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            defect,
            tolerance,
            pass: defect.is_finite() && defect <= tolerance,
            modes_checked: None,
        }
    }

    /// A yes/no property recorded as defect 0 or 1.
    pub fn predicate(id: impl Into<String>, anchor: impl Into<String>, holds: bool) -> Self {
        Self::new(id, anchor, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    /// A check whose computation failed outright.
    pub fn failed(id: impl Into<String>, anchor: impl Into<String>, tolerance: f64) -> Self {
        Self::new(id, anchor, f64::INFINITY, tolerance)
    }

    pub fn with_modes(mut self, modes: usize) -> Self {
        self.modes_checked = Some(modes);
        self
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// `f64` that survives JSON when infinite or NaN: those become `"inf"`,
/// `"-inf"` and `"nan"`.
pub mod extended_float {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Finite(f64),
        Special(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        match *x {
            x if x.is_finite() => Repr::Finite(x),
            x if x.is_nan() => Repr::Special("nan".into()),
            x if x > 0.0 => Repr::Special("inf".into()),
            _ => Repr::Special("-inf".into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Finite(x) => Ok(x),
            Repr::Special(s) => match s.as_str() {
                "nan" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(serde::de::Error::custom(format!("not a number: {other:?}"))),
            },
        }
    }
}

/// Complex numbers as `{re, im}` objects.
pub mod complex_obj {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Repr { re: c.re, im: c.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(Complex64::new(r.re, r.im))
    }
}

pub mod complex_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|c| Repr { re: c.re, im: c.im })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| Complex64::new(r.re, r.im))
            .collect())
    }
}

/// Parses `"a+bi"`, `"a-bi"`, `"bi"`, `"a"`, `"i"`, `"-i"`.
pub fn parse_complex(s: &str) -> crate::Result<num_complex::Complex64> {
    use num_complex::Complex64;
    let bad = || crate::Error::Config(format!("cannot parse complex number {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (real, imag) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let imag = match imag {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re = real.parse::<f64>().map_err(|_| bad())?;
    let im = imag.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn complex_strings() {
        let cases = [
            ("0.3", Complex64::new(0.3, 0.0)),
            ("0.5i", Complex64::new(0.0, 0.5)),
            ("-0.7", Complex64::new(-0.7, 0.0)),
            ("0.3+0.4i", Complex64::new(0.3, 0.4)),
            ("0.3 - 0.4i", Complex64::new(0.3, -0.4)),
            ("i", Complex64::new(0.0, 1.0)),
            ("-i", Complex64::new(0.0, -1.0)),
            ("1e-3-2e-1i", Complex64::new(1e-3, -0.2)),
            ("-2.5e+1+1i", Complex64::new(-25.0, 1.0)),
        ];
        for (s, want) in cases {
            assert_eq!(parse_complex(s).unwrap(), want, "{s}");
        }
        for bad in ["", "abc", "1+2", "0.3+xi"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn failed_checks_survive_json() {
        let failed = Check::failed("x", "y", 1e-3);
        let text = serde_json::to_string(&failed).unwrap();
        assert!(text.contains("\"inf\""));
        let back: Check = serde_json::from_str(&text).unwrap();
        assert_eq!(back, failed);
    }

    #[test]
    fn check_pass_logic() {
        assert!(Check::new("a", "b", 1e-13, 1e-12).pass);
        assert!(!Check::new("a", "b", f64::NAN, 1e-12).pass);
        assert!(!Check::predicate("a", "b", false).pass);
        assert!(Check::predicate("a", "b", true).pass);
    }
}
