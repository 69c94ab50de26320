/// Formats `x` with `digits` significant digits, `%g` style: plain decimal
/// for exponents in `-5..15`, scientific otherwise, trailing zeros removed.
/// Independent of locale; the decimal separator is always `.`.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.clamp(1, 17);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let rounded: f64 = sci.parse().expect("valid float");
        trim(&format!("{rounded:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

pub fn opt(x: Option<f64>, digits: usize) -> String {
    x.map_or_else(|| "-".to_string(), |v| sig(v, digits))
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(sig(1.0149416064096536, 12), "1.01494160641");
        assert_eq!(sig(56.83673, 4), "56.84");
        assert_eq!(sig(0.5, 12), "0.5");
        assert_eq!(sig(1e20, 3), "1e20");
        assert_eq!(sig(1.5e-7, 3), "1.5e-7");
        assert_eq!(sig(-2.0, 12), "-2");
        assert_eq!(sig(123456.0, 3), "123000");
        assert_eq!(opt(None, 3), "-");
    }
}
