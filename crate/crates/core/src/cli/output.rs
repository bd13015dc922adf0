//! CSV emission with stable float formatting.

use std::fmt::Write as _;

use crate::region::RegionResult;

pub const REGION_HEADER: &str =
    "k,l,r1_target,r2_target,r1_achieved,r2_achieved,re_min,sum_secrecy,p1s,p1n,p2s,p2n,feasible";
pub const FRONTIER_HEADER: &str = "r1,r2";

/// Formats `x` with 9 significant digits, like C's `%.9g`.
pub fn sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // `{:e}` rounds correctly; take the decimal exponent from it.
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

pub fn region_csv(result: &RegionResult) -> String {
    let mut out = String::new();
    out.push_str(REGION_HEADER);
    out.push('\n');
    for p in &result.points {
        let a = &p.alloc;
        let fields = [
            p.r1_target,
            p.r2_target,
            p.r1_achieved,
            p.r2_achieved,
            p.re_min,
            p.sum_secrecy,
            a.p1s,
            a.p1n,
            a.p2s,
            a.p2n,
        ];
        let _ = write!(out, "{},{}", p.k, p.l);
        for f in fields {
            let _ = write!(out, ",{}", sig9(f));
        }
        let _ = writeln!(out, ",{}", u8::from(p.feasible));
    }
    out
}

pub fn frontier_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::new();
    out.push_str(FRONTIER_HEADER);
    out.push('\n');
    for (a, b) in points {
        let _ = writeln!(out, "{},{}", sig9(*a), sig9(*b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(-0.0), "0");
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(1.69127825294849), "1.69127825");
        assert_eq!(sig9(-0.000123456789123), "-0.000123456789");
        assert_eq!(sig9(123456789.4), "123456789");
        assert_eq!(sig9(1234567891.0), "1.23456789e+09");
        assert_eq!(sig9(1e-6), "1e-06");
        assert_eq!(sig9(9.999999999), "10");
        assert_eq!(sig9(f64::NAN), "nan");
        assert_eq!(sig9(-1e-20), "-1e-20");
    }
}
