//! Time evolution under the dissipative generator: classical fixed-step
//! fourth-order Runge-Kutta on coordinates. The trace is renormalized
//! after every step; eigenvalues are never clipped, so positivity drift
//! surfaces as a diagnostic instead of being hidden.

use crate::error::{Error, Result};

use super::dual::{DensityState, DualElement, STATE_TOL};
use super::fields::{kl_vector_field_at, AlgebraConfig, LindbladSpec};

/// One recorded point of a trajectory.
#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub tau: f64,
    pub state: DensityState,
}

fn step_count(t_max: f64, dt: f64) -> Result<usize> {
    if !(t_max > 0.0) || !(dt > 0.0) || !t_max.is_finite() || !dt.is_finite() {
        return Err(Error::InvalidInput(
            "t_max and dt must be positive and finite".into(),
        ));
    }
    if t_max < dt * (1.0 - 1e-9) {
        return Err(Error::InvalidInput("t_max must be at least dt".into()));
    }
    Ok(((t_max / dt).round() as usize).max(1))
}

fn rk4_step(
    spec: &LindbladSpec,
    cfg: &AlgebraConfig,
    xi: &DualElement,
    h: f64,
) -> Result<DualElement> {
    let k1 = kl_vector_field_at(spec, xi, cfg)?;
    let k2 = kl_vector_field_at(spec, &xi.add(&k1.scaled(h / 2.0))?, cfg)?;
    let k3 = kl_vector_field_at(spec, &xi.add(&k2.scaled(h / 2.0))?, cfg)?;
    let k4 = kl_vector_field_at(spec, &xi.add(&k3.scaled(h))?, cfg)?;
    let increment = k1
        .add(&k2.scaled(2.0))?
        .add(&k3.scaled(2.0))?
        .add(&k4)?
        .scaled(h / 6.0);
    xi.add(&increment)
}

/// Forward evolution with per-sample validation: trace drift within 1e-8
/// before renormalization, eigenvalues above -1e-8. Samples are recorded
/// at every step including tau = 0.
pub fn integrate(
    spec: &LindbladSpec,
    rho0: &DensityState,
    t_max: f64,
    dt: f64,
) -> Result<Vec<TrajectorySample>> {
    if spec.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho0.dim(),
            got: spec.dim(),
        });
    }
    let cfg = AlgebraConfig::default();
    let steps = step_count(t_max, dt)?;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(TrajectorySample {
        tau: 0.0,
        state: rho0.clone(),
    });
    let mut xi = rho0.dual().clone();
    for k in 0..steps {
        let tau = (k + 1) as f64 * dt;
        xi = rk4_step(spec, &cfg, &xi, dt)?;
        let trace = xi.trace_component();
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::NotAState(format!(
                "trace drifted to {trace} at tau={tau}"
            )));
        }
        xi = xi.scaled(1.0 / trace);
        let spectrum = xi.spectrum();
        if spectrum[0] < -STATE_TOL {
            return Err(Error::PositivityViolation {
                tau,
                min_eig: spectrum[0],
            });
        }
        samples.push(TrajectorySample {
            tau,
            state: DensityState::new(xi.clone())?,
        });
    }
    Ok(samples)
}

/// Signed-time flow with no state validation and no renormalization; the
/// raw integrator, usable outside the state space. Negative `t_max` runs
/// backward.
pub fn flow_unchecked(
    spec: &LindbladSpec,
    xi0: &DualElement,
    t_max: f64,
    dt: f64,
    cfg: &AlgebraConfig,
) -> Result<Vec<(f64, DualElement)>> {
    if spec.dim() != xi0.dim() {
        return Err(Error::DimensionMismatch {
            expected: xi0.dim(),
            got: spec.dim(),
        });
    }
    let steps = step_count(t_max.abs(), dt)?;
    let h = dt.copysign(t_max);
    let mut out = Vec::with_capacity(steps + 1);
    out.push((0.0, xi0.clone()));
    let mut xi = xi0.clone();
    for k in 0..steps {
        xi = rk4_step(spec, cfg, &xi, h)?;
        out.push(((k + 1) as f64 * h, xi.clone()));
    }
    Ok(out)
}
