//! Material parameters, impedance boundary data and analytic waveguide
//! solutions. Time convention `e^{+iωt}`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::interpolation::Field3;

/// Vacuum permittivity in F/m, as used for the waveguide experiments.
pub const PERMITTIVITY: f64 = 8.85e-12;
/// Vacuum permeability in H/m, as used for the waveguide experiments.
pub const PERMEABILITY: f64 = 1.26e-6;
/// Conductivity of the dissipative runs, S/m.
pub const LOSSY_CONDUCTIVITY: f64 = 0.15;

/// Angular frequencies of the planar sweeps (rad/s).
pub const OMEGA_1: f64 = 16e9;
pub const OMEGA_2: f64 = 32e9;
pub const OMEGA_3: f64 = 64e9;
/// Frequency fixing the 3d propagation constant and mesh size (rad/s).
pub const OMEGA_BETA: f64 = 32e9;

/// Planar waveguide extents `(c, b)` in metres.
pub const PLANAR_EXTENTS: [f64; 2] = [0.0502, 0.00254];
/// Rectangular waveguide extents `(c, b, a)` in metres.
pub const SOLID_EXTENTS: [f64; 3] = [0.1004, 0.00508, 0.01016];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub omega: f64,
    pub epsilon: f64,
    pub mu: f64,
    pub sigma: f64,
}

impl PhysicalParams {
    pub fn new(omega: f64, epsilon: f64, mu: f64, sigma: f64) -> Result<Self> {
        let p = PhysicalParams { omega, epsilon, mu, sigma };
        p.validate()?;
        Ok(p)
    }

    /// Waveguide parameters with the standard ε and μ.
    pub fn waveguide(omega: f64, sigma: f64) -> Result<Self> {
        Self::new(omega, PERMITTIVITY, PERMEABILITY, sigma)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::InvalidParams(format!("ω = {} must be positive", self.omega)));
        }
        if !(self.epsilon > 0.0) || !(self.mu > 0.0) {
            return Err(Error::InvalidParams("ε and μ must be positive".into()));
        }
        if !(self.sigma >= 0.0) {
            return Err(Error::InvalidParams(format!("σ = {} must be non-negative", self.sigma)));
        }
        Ok(())
    }

    /// `ε − iσ/ω`.
    pub fn complex_permittivity(&self) -> Complex64 {
        Complex64::new(self.epsilon, -self.sigma / self.omega)
    }

    /// `ω √(μ ε_σ)`, principal root.
    pub fn gamma(&self) -> Complex64 {
        (self.complex_permittivity() * self.mu).sqrt() * self.omega
    }

    /// `ω √(μ ε)`.
    pub fn omega_tilde(&self) -> f64 {
        self.omega * (self.mu * self.epsilon).sqrt()
    }
}

/// Shared vector field callback.
pub type FieldFn = Arc<dyn Fn(Vec3) -> Field3 + Send + Sync>;

/// Impedance data on the input and output ports.
#[derive(Clone)]
pub struct ImpedanceData {
    /// `η` of the physical port condition.
    pub eta: f64,
    pub g_in: Option<FieldFn>,
    pub g_out: Option<FieldFn>,
}

impl std::fmt::Debug for ImpedanceData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ImpedanceData")
            .field("eta", &self.eta)
            .field("g_in", &self.g_in.is_some())
            .field("g_out", &self.g_out.is_some())
            .finish()
    }
}

/// Analytic solutions of the waveguide problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceSolution {
    /// `E = (0, e^{−iγx})` on the planar strip.
    PlaneWave { gamma: Complex64, omega_tilde: f64 },
    /// Transverse electric mode `(m, n)` of the rectangular guide.
    TransverseElectric {
        m: u32,
        n: u32,
        a: f64,
        b: f64,
        beta: f64,
        amplitude: Complex64,
    },
}

impl ReferenceSolution {
    pub fn plane_wave(params: &PhysicalParams) -> Self {
        ReferenceSolution::PlaneWave {
            gamma: params.gamma(),
            omega_tilde: params.omega_tilde(),
        }
    }

    /// TE mode with amplitude `iωμ/(ω̃² − β²)`, where `β` follows from the
    /// dispersion relation at `params.omega`.
    pub fn transverse_electric(params: &PhysicalParams, m: u32, n: u32, a: f64, b: f64) -> Result<Self> {
        let cutoff2 = (m as f64 * PI / a).powi(2) + (n as f64 * PI / b).powi(2);
        let wt2 = params.omega_tilde().powi(2);
        if !(wt2 > cutoff2) || cutoff2 == 0.0 {
            return Err(Error::InvalidParams(format!("mode ({m},{n}) does not propagate at ω = {}", params.omega)));
        }
        let beta = (wt2 - cutoff2).sqrt();
        let amplitude = Complex64::new(0.0, params.omega * params.mu / cutoff2);
        Ok(ReferenceSolution::TransverseElectric { m, n, a, b, beta, amplitude })
    }

    pub fn eval(&self, x: Vec3) -> Field3 {
        let zero = Complex64::new(0.0, 0.0);
        match *self {
            ReferenceSolution::PlaneWave { gamma, .. } => {
                [zero, (-Complex64::i() * gamma * x[0]).exp(), zero]
            }
            ReferenceSolution::TransverseElectric { m, n, a, b, beta, amplitude } => {
                let phase = Complex64::new(0.0, -beta * x[0]).exp();
                let (km, kn) = (m as f64 * PI / a, n as f64 * PI / b);
                let ey = -amplitude * km * (km * x[2]).sin() * (kn * x[1]).cos() * phase;
                let ez = amplitude * kn * (km * x[2]).cos() * (kn * x[1]).sin() * phase;
                [zero, ey, ez]
            }
        }
    }

    /// Port impedance and data for which `self` solves the boundary value problem.
    pub fn impedance_data(&self) -> ImpedanceData {
        let this = *self;
        let i = Complex64::i();
        let (eta, k_in, k_out) = match this {
            ReferenceSolution::PlaneWave { gamma, omega_tilde } => {
                (omega_tilde, i * gamma + i * omega_tilde, -i * gamma + i * omega_tilde)
            }
            ReferenceSolution::TransverseElectric { beta, .. } => (beta, i * 2.0 * beta, Complex64::new(0.0, 0.0)),
        };
        let scaled = move |k: Complex64| -> Option<FieldFn> {
            if k == Complex64::new(0.0, 0.0) {
                return None;
            }
            Some(Arc::new(move |x| {
                let e = this.eval(x);
                [e[0] * k, e[1] * k, e[2] * k]
            }))
        };
        ImpedanceData {
            eta,
            g_in: scaled(k_in),
            g_out: scaled(k_out),
        }
    }
}

/// Planar mesh size `√(2/ω̃³)`.
pub fn planar_mesh_size(params: &PhysicalParams) -> f64 {
    (2.0 / params.omega_tilde().powi(3)).sqrt()
}

/// Propagation constant `ω_β √(με)` of the 3d runs.
pub fn solid_beta(omega_beta: f64) -> f64 {
    omega_beta * (PERMEABILITY * PERMITTIVITY).sqrt()
}

/// 3d mesh size `√(1/β³)`.
pub fn solid_mesh_size(beta: f64) -> f64 {
    (1.0 / beta.powi(3)).sqrt()
}

/// Angular frequency giving propagation constant `beta` for the `(1,0)` mode
/// of a guide of width `a`: `ω = √(β² + (π/a)²)/√(με)`.
pub fn solid_omega(beta: f64, a: f64) -> f64 {
    (beta * beta + (PI / a).powi(2)).sqrt() / (PERMEABILITY * PERMITTIVITY).sqrt()
}
