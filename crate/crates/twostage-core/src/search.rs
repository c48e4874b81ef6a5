//! Scalar root-finding and line-search used by the solvers.

/// Bisection for a strictly decreasing function with a sign change on
/// `(lo, hi)`. Returns the root once the bracket is narrower than `x_tol`
/// or the value test `accept` passes at the midpoint.
///
/// Returns `None` when the endpoints do not actually bracket a sign change.
pub(crate) fn bisect_decreasing(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
    accept: impl Fn(f64) -> bool,
) -> Option<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if !(flo > 0.0 && fhi < 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if accept(fm) || hi - lo < x_tol {
            return Some(mid);
        }
        if fm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
/// Shrinks the bracket until it is narrower than `x_tol` and returns the
/// best abscissa seen.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, x_tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > x_tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    // Return the better of the midpoint and the surviving probes.
    let fm = f(mid);
    if f1 >= f2 && f1 >= fm {
        x1
    } else if f2 >= f1 && f2 >= fm {
        x2
    } else {
        mid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_a_linear_root() {
        let root = bisect_decreasing(|x| 0.3 - x, 0.0, 1.0, 1e-14, |_| false).unwrap();
        assert!((root - 0.3).abs() < 1e-12);
    }

    #[test]
    fn bisect_rejects_same_sign_endpoints() {
        assert!(bisect_decreasing(|x| 1.0 + x, 0.0, 1.0, 1e-12, |_| false).is_none());
    }

    #[test]
    fn golden_finds_a_quadratic_maximum() {
        let x = golden_max(|x| -(x - 0.37).powi(2), 0.0, 1.0, 1e-10);
        assert!((x - 0.37).abs() < 1e-8);
    }
}
