//! Sample weights for `integral f(t) e^{i nu t} dt` over a sampled interval.

use num_complex::Complex64;

/// `|nu| h` at or below which the phase is folded into Simpson's rule.
pub const FILON_THRESHOLD: f64 = 0.1;

/// Weights `w_j` with `integral f(t) e^{i nu t} dt ~ sum_j w_j f(t_j)`.
///
/// Slow phases use composite Simpson on uniform grids with an even number of
/// intervals (trapezoid otherwise); fast phases use Filon's rule with `f`
/// interpolated linearly between samples and the phase integrated exactly.
pub fn oscillatory_weights(times: &[f64], nu: f64) -> Vec<Complex64> {
    let n = times.len();
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    if n < 2 {
        return w;
    }
    let h_max = times.windows(2).map(|p| p[1] - p[0]).fold(0.0, f64::max);
    if nu.abs() * h_max <= FILON_THRESHOLD {
        let base = smooth_weights(times);
        for (j, wj) in w.iter_mut().enumerate() {
            *wj = Complex64::from_polar(base[j], nu * times[j]);
        }
        return w;
    }
    for j in 0..n - 1 {
        let (t0, h) = (times[j], times[j + 1] - times[j]);
        let th = nu * h;
        let e = Complex64::from_polar(1.0, th);
        let i = Complex64::i();
        // integral_0^1 e^{i th u} du and integral_0^1 u e^{i th u} du
        let i0 = (e - 1.0) / (i * th);
        let i1 = e / (i * th) - (e - 1.0) / (i * th * i * th);
        let pre = Complex64::from_polar(h, nu * t0);
        w[j] += pre * (i0 - i1);
        w[j + 1] += pre * i1;
    }
    w
}

/// Real quadrature weights: Simpson when the grid is uniform with an even
/// interval count, trapezoid otherwise.
pub fn smooth_weights(times: &[f64]) -> Vec<f64> {
    let n = times.len();
    let mut w = vec![0.0; n];
    if n < 2 {
        return w;
    }
    let h = (times[n - 1] - times[0]) / (n - 1) as f64;
    let uniform = times.windows(2).all(|p| ((p[1] - p[0]) - h).abs() <= 1e-9 * h.abs());
    if uniform && (n - 1).is_multiple_of(2) {
        for (j, wj) in w.iter_mut().enumerate() {
            let c = if j == 0 || j == n - 1 {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            *wj = c * h / 3.0;
        }
    } else {
        for j in 0..n - 1 {
            let d = 0.5 * (times[j + 1] - times[j]);
            w[j] += d;
            w[j + 1] += d;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, t1: f64) -> Vec<f64> {
        (0..=n).map(|j| t1 * j as f64 / n as f64).collect()
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let t = grid(10, 2.0);
        let w = smooth_weights(&t);
        let s: f64 = t.iter().zip(&w).map(|(x, w)| w * (x * x * x - x + 1.0)).sum();
        assert!((s - (4.0 - 2.0 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn filon_integrates_linear_times_phase_exactly() {
        let t = grid(7, 3.0);
        let nu = 40.0;
        let w = oscillatory_weights(&t, nu);
        let s: Complex64 = t.iter().zip(&w).map(|(x, w)| w * (2.0 * x + 1.0)).sum();
        // integral (2t + 1) e^{i nu t} over [0, T]
        let i = Complex64::i();
        let tt = 3.0;
        let e = Complex64::from_polar(1.0, nu * tt);
        let exact = (2.0 * tt + 1.0) * e / (i * nu) - 1.0 / (i * nu) - 2.0 * (e - 1.0) / (i * nu * i * nu);
        assert!((s - exact).norm() < 1e-12, "{s} {exact}");
    }

    #[test]
    fn fast_phase_of_smooth_function_averages_out() {
        let t = grid(50, 400e-9);
        let nu = 2.0 * std::f64::consts::PI * 6.8e9;
        let w = oscillatory_weights(&t, nu);
        let s: Complex64 = w.iter().sum();
        let exact = (Complex64::from_polar(1.0, nu * 400e-9) - 1.0) / (Complex64::i() * nu);
        assert!((s - exact).norm() < 1e-15);
        assert!(s.norm() < 1e-3 * 400e-9);
    }

    #[test]
    fn slow_phase_matches_closed_form() {
        let t = grid(50, 1.0);
        let nu = 0.5;
        let w = oscillatory_weights(&t, nu);
        let s: Complex64 = w.iter().sum();
        let exact = (Complex64::from_polar(1.0, nu) - 1.0) / (Complex64::i() * nu);
        assert!((s - exact).norm() < 1e-9);
    }
}
