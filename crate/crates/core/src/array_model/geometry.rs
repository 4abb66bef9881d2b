//! Uniform circular array geometry. Spacings are adjacent-element
//! separations in carrier wavelengths.

/// `r = d / (2 sin(pi/N))`; zero for a single element.
pub fn circumradius(n: usize, spacing: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    spacing / (2.0 * (std::f64::consts::PI / n as f64).sin())
}

/// Distance between elements `a` and `b`: `2 r sin(pi |a - b| / N)`.
pub fn pair_distance(n: usize, spacing: f64, a: usize, b: usize) -> f64 {
    if n < 2 || a == b {
        return 0.0;
    }
    let sep = a.abs_diff(b) % n;
    if n == 2 {
        // sin(pi/2) would round; the two-element case is exactly d.
        return spacing;
    }
    2.0 * circumradius(n, spacing) * (std::f64::consts::PI * sep as f64 / n as f64).sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacent_distance_is_spacing() {
        for n in 2..=8 {
            let d = pair_distance(n, 0.3, 0, 1);
            assert!((d - 0.3).abs() < 1e-15, "n={n} d={d}");
        }
    }

    #[test]
    fn square_diagonal() {
        let d = pair_distance(4, 1.0, 0, 2);
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        assert!((circumradius(4, 1.0) - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }
}
