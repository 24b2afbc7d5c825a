//! Output formatting and argument parsing shared by the `orbital` binary and
//! its tests.

use std::io;

use padic_orbital::grid::EvalReport;
use padic_orbital::{MultiplicativeCharacter, SquareClass};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

pub const REPORT_HEADER: [&str; 17] = [
    "p",
    "phi_depth",
    "beta",
    "theta",
    "s",
    "thetap",
    "sigma2",
    "regime",
    "gamma_re",
    "gamma_im",
    "closed_re",
    "closed_im",
    "oracle_re",
    "oracle_im",
    "abs_error",
    "pass",
    "structure",
];

pub const TABLE_HEADER: [&str; 9] = [
    "ord_s",
    "s",
    "thetap",
    "regime",
    "value_re",
    "value_im",
    "normalized_re",
    "normalized_im",
    "scale",
];

/// Doubles as `{:.16e}`: 17 significant digits, which parse back to the
/// same f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty JSON whose floats are written by [`fmt_f64`].
struct SciFormatter<'a>(PrettyFormatter<'a>);

impl Formatter for SciFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn report_record(r: &EvalReport) -> Vec<String> {
    let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
    vec![
        r.p.to_string(),
        r.phi_depth.to_string(),
        r.beta.to_string(),
        r.theta.to_string(),
        r.s.to_string(),
        r.thetap.to_string(),
        r.sigma2.to_string(),
        r.regime.to_string(),
        fmt_f64(r.gamma.re),
        fmt_f64(r.gamma.im),
        fmt_f64(r.closed_value.re),
        fmt_f64(r.closed_value.im),
        opt(r.oracle_value.map(|v| v.re)),
        opt(r.oracle_value.map(|v| v.im)),
        opt(r.abs_error),
        r.pass.to_string(),
        serde_json::to_string(&r.structure).expect("structure serializes"),
    ]
}

pub fn to_csv<R: AsRef<[String]>>(header: &[&str], rows: &[R]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.as_ref())?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("records are UTF-8"))
}

pub fn parse_square_class(s: &str) -> Result<SquareClass, String> {
    SquareClass::ALL
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| format!("unknown square class {s:?}; expected 1, eps, pi or eps-pi"))
}

/// Characters ν^α·sgn_τ written as `trivial`, `nu-half`, `nu-0.25`,
/// `sgn-eps-pi`, `nu-half-sgn-pi` and so on.
pub fn parse_character(s: &str) -> Result<MultiplicativeCharacter, String> {
    if s == "trivial" {
        return Ok(MultiplicativeCharacter::trivial());
    }
    let (nu, sgn) = match s.find("sgn-") {
        Some(i) => (s[..i].trim_end_matches('-'), Some(&s[i + 4..])),
        None => (s, None),
    };
    let alpha = match nu {
        "" => 0.0,
        _ => {
            let a = nu
                .strip_prefix("nu-")
                .ok_or_else(|| format!("cannot parse character {s:?}"))?;
            if a == "half" {
                0.5
            } else {
                a.parse().map_err(|_| format!("cannot parse exponent {a:?} in {s:?}"))?
            }
        }
    };
    let tau = match sgn {
        Some(c) => parse_square_class(c)?,
        None => SquareClass::One,
    };
    Ok(MultiplicativeCharacter::real(alpha, tau))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters_parse() {
        let chi = parse_character("nu-half-sgn-pi").unwrap();
        assert_eq!(chi, MultiplicativeCharacter::nu_half(SquareClass::Pi));
        assert_eq!(
            parse_character("sgn-eps-pi").unwrap(),
            MultiplicativeCharacter::real(0.0, SquareClass::EpsPi)
        );
        assert_eq!(
            parse_character("nu-0.25").unwrap(),
            MultiplicativeCharacter::real(0.25, SquareClass::One)
        );
        assert_eq!(parse_character("trivial").unwrap(), MultiplicativeCharacter::trivial());
        assert!(parse_character("nu-x").is_err());
        assert!(parse_character("sgn-7").is_err());
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        let x = 0.1 + 0.2;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        let json = to_json(&[x, -2.5e-300]).unwrap();
        let back: Vec<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![x, -2.5e-300]);
    }
}
