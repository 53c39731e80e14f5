//! Closed-form two-level propagators for plane-wave excitation.

use num_complex::Complex64;

pub type Mat3 = [[Complex64; 3]; 3];

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Generalized Rabi frequency `sqrt(|Omega|^2 + Delta^2)`.
pub fn generalized_rabi(omega: Complex64, delta: f64) -> f64 {
    omega.norm().hypot(delta)
}

/// The 3x3 interaction-picture propagator acting on `(c_r, c_b, c_a)` over a
/// pulse of duration `tau` that starts at `t = 0`.
pub fn plane_wave_matrix(omega: Complex64, tau: f64, delta: f64) -> Mat3 {
    let om = omega.norm();
    let phi = omega.arg();
    let op = generalized_rabi(omega, delta);
    let half = 0.5 * op * tau;
    let (s, c) = half.sin_cos();
    // sin(x)/x-safe ratios
    let (d_ratio, o_ratio) = if op == 0.0 { (0.0, 0.0) } else { (delta / op * s, om / op * s) };
    let i = Complex64::i();
    let e_m = Complex64::from_polar(1.0, -0.5 * delta * tau);
    let e_p = Complex64::from_polar(1.0, 0.5 * delta * tau);
    [
        [(c + i * d_ratio) * e_m, i * o_ratio * Complex64::from_polar(1.0, phi) * e_m, ZERO],
        [i * o_ratio * Complex64::from_polar(1.0, -phi) * e_p, (c - i * d_ratio) * e_p, ZERO],
        [ZERO, ZERO, ONE],
    ]
}

/// Apply the plane-wave propagator to amplitudes `(c_r, c_b, c_a)` at one momentum.
pub fn plane_wave_step(state: [Complex64; 3], omega: Complex64, tau: f64, delta: f64) -> [Complex64; 3] {
    mat3_apply(&plane_wave_matrix(omega, tau, delta), state)
}

/// Propagator in the frame used for chaining pulses: ground levels in the
/// bare interaction picture, `|r>` rotating with the lasers, so the generator
/// `-Delta |r><r| - (Omega/2 |r><b| + h.c.) + shift_b (|b><b| + |r><r|) + shift_a |a><a|`
/// is time independent. Ordering `(r, b, a)`.
pub fn frame_propagator(omega: Complex64, tau: f64, delta: f64, shift_b: f64, shift_a: f64) -> Mat3 {
    let mut u = plane_wave_matrix(omega, tau, delta);
    let rot = Complex64::from_polar(1.0, delta * tau);
    for v in u[0].iter_mut() {
        *v *= rot;
    }
    let lb = Complex64::from_polar(1.0, -shift_b * tau);
    for row in u.iter_mut().take(2) {
        for v in row.iter_mut().take(2) {
            *v *= lb;
        }
    }
    u[2][2] = Complex64::from_polar(1.0, -shift_a * tau);
    u
}

/// Free evolution of an undriven atom in the same frame (`|r>` keeps rotating).
pub fn idle_propagator(tau: f64, delta: f64) -> Mat3 {
    [
        [Complex64::from_polar(1.0, delta * tau), ZERO, ZERO],
        [ZERO, ONE, ZERO],
        [ZERO, ZERO, ONE],
    ]
}

pub fn mat3_apply(m: &Mat3, v: [Complex64; 3]) -> [Complex64; 3] {
    let mut out = [ZERO; 3];
    for (o, row) in out.iter_mut().zip(m.iter()) {
        *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

pub fn mat3_identity() -> Mat3 {
    [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]
}
