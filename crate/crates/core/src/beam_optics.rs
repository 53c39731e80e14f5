//! Focused TEM00 Gaussian beams and the near-focus expansion of their profile.

use std::f64::consts::PI;

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct GaussianBeam {
    pub w0: f64,
    pub lambda: f64,
    /// Quantization length of the mode normalization; bookkeeping only.
    pub quantization_length: f64,
}

impl GaussianBeam {
    pub fn new(w0: f64, lambda: f64) -> Self {
        assert!(w0 > 0.0 && lambda > 0.0, "waist and wavelength must be positive");
        Self { w0, lambda, quantization_length: 1.0 }
    }

    /// Infinite waist: the plane-wave limit.
    pub fn plane_wave(lambda: f64) -> Self {
        Self::new(f64::INFINITY, lambda)
    }

    pub fn rayleigh_range(&self) -> f64 {
        PI * self.w0 * self.w0 / self.lambda
    }

    pub fn wave_number(&self) -> f64 {
        2.0 * PI / self.lambda
    }

    pub fn waist_at(&self, z: f64) -> f64 {
        let zr = self.rayleigh_range();
        self.w0 * (1.0 + (z / zr).powi(2)).sqrt()
    }

    /// Wavefront curvature radius `R(z)`; infinite at the focus.
    pub fn curvature_radius(&self, z: f64) -> f64 {
        if z == 0.0 {
            return f64::INFINITY;
        }
        let zr = self.rayleigh_range();
        z * (1.0 + (zr / z).powi(2))
    }

    pub fn gouy_phase(&self, z: f64) -> f64 {
        (z / self.rayleigh_range()).atan()
    }

    /// Slowly varying amplitude `u(rho, z)`, normalized to unit power on every plane.
    pub fn mode_amplitude(&self, rho: f64, z: f64) -> Complex64 {
        let zr = self.rayleigh_range();
        let w = self.waist_at(z);
        let inv_r = z / (z * z + zr * zr);
        let a = (2.0 / (PI * w * w)).sqrt();
        let phase = 0.5 * self.wave_number() * rho * rho * inv_r + self.gouy_phase(z);
        a * (-(rho * rho) / (w * w)).exp() * Complex64::from_polar(1.0, phase)
    }

    /// Second-order expansion of `u(rho, z) / u(0, 0)` near the focus.
    pub fn caustic_expansion(&self) -> CausticExpansion {
        let zr = self.rayleigh_range();
        CausticExpansion {
            transverse: -1.0 / (self.w0 * self.w0),
            axial_quadratic: -0.5 / (zr * zr),
            axial_linear: Complex64::new(0.0, 1.0 / zr),
        }
    }
}

/// `u(rho, z)/u(0, 0) ~ 1 + transverse rho^2 + axial_quadratic z^2 + axial_linear z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausticExpansion {
    pub transverse: f64,
    pub axial_quadratic: f64,
    pub axial_linear: Complex64,
}

impl CausticExpansion {
    pub fn evaluate(&self, rho: f64, z: f64) -> Complex64 {
        Complex64::new(1.0 + self.transverse * rho * rho + self.axial_quadratic * z * z, 0.0) + self.axial_linear * z
    }
}

/// Combined length scales of the two-photon coupling `u1 u2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveBeamParams {
    /// `2/w*^2 = 1/w01^2 + 1/w02^2`.
    pub w_star: f64,
    /// First-order axial scale, `2/z* = 1/zR1 + 1/zR2`.
    pub z_star_linear: f64,
    /// Second-order axial scale, `2/z*^2 = 1/zR1^2 + 1/zR2^2`.
    pub z_star_quadratic: f64,
}

pub fn effective_beam_params(b1: &GaussianBeam, b2: &GaussianBeam) -> EffectiveBeamParams {
    let w = 1.0 / b1.w0.powi(2) + 1.0 / b2.w0.powi(2);
    let z1 = 1.0 / b1.rayleigh_range() + 1.0 / b2.rayleigh_range();
    let z2 = 1.0 / b1.rayleigh_range().powi(2) + 1.0 / b2.rayleigh_range().powi(2);
    EffectiveBeamParams { w_star: (2.0 / w).sqrt(), z_star_linear: 2.0 / z1, z_star_quadratic: (2.0 / z2).sqrt() }
}
