//! CSV emission. Every number is printed with 6 significant digits through
//! a deterministic formatter, so identical runs produce identical bytes.

/// Format with 6 significant digits: plain decimal notation in a sane
/// magnitude window, scientific outside it.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..=8).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

/// A CSV cell: empty for fields that do not apply to the row's case.
pub fn opt_sig6(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_default()
}

pub fn opt_int(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Join cells into one newline-terminated CSV record. Cells are numeric or
/// identifier text only, so no quoting is needed.
pub fn record(cells: &[String]) -> String {
    let mut line = cells.join(",");
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(1.462512345), "1.46251");
        assert_eq!(sig6(0.508333333), "0.508333");
        assert_eq!(sig6(102.0), "102.000");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(-0.0001639), "-0.000163900");
        assert_eq!(sig6(1.5e12), "1.50000e12");
    }

    #[test]
    fn record_is_newline_terminated() {
        assert_eq!(record(&["a".into(), "1".into()]), "a,1\n");
    }
}
