//! Output formatting shared by the CLI and its tests.

/// Formats a float with 17 significant digits and a `.` decimal separator
/// (locale-independent), enough to round-trip any finite `f64` exactly.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// An evenly spaced grid of `points >= 2` values covering `[lo, hi]`
/// inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points).map(|i| lo + (hi - lo) * i as f64 / last).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips() {
        for &v in &[0.5, 1.0 / 3.0, 6.02e23, -1.2345678901234567e-8] {
            assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn linspace_hits_endpoints() {
        let g = linspace(0.0, 1.0, 11);
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 1.0);
        assert!((g[5] - 0.5).abs() < 1e-15);
    }
}
