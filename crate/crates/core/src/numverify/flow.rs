use serde::{Deserialize, Serialize};

use super::eval::Derivatives;
use super::field::{integrate_trace, MatrixField};
use super::grid::GridPotential;
use super::spectral::Spectral;
use crate::hierarchy::g_operator;
use crate::ncalg::NCPoly;
use crate::{Error, Result};

/// `dt ≤ STABILITY_CONSTANT · π³ · (Δx/π)^{2n-1}` for the level-`n` flow,
/// i.e. `STABILITY_CONSTANT · Δx³` at `n = 2`. The product of `dt` and the
/// largest dispersive rate `k_max^{2n-1}` is the same at every level.
pub const STABILITY_CONSTANT: f64 = 0.05;
/// Largest tolerated share of spectral energy in `|k| ≥ N/3`.
pub const TAIL_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub potential: GridPotential,
    pub time: f64,
}

impl FlowState {
    pub fn new(potential: GridPotential) -> Self {
        FlowState {
            potential,
            time: 0.0,
        }
    }
}

/// The flow `∂_t U = ∂_x G_n[U]`, discretized by Fourier collocation.
#[derive(Debug, Clone)]
pub struct KdvFlow {
    level: u32,
    density: NCPoly,
    max_letter: u32,
    spectral: Spectral,
}

impl KdvFlow {
    pub fn new(level: u32, points: usize, length: f64) -> Result<Self> {
        let density = g_operator(level)?;
        Ok(KdvFlow {
            level,
            max_letter: density.max_letter().unwrap_or(0),
            density,
            spectral: Spectral::new(points, length),
        })
    }

    pub fn for_potential(level: u32, u: &GridPotential) -> Result<Self> {
        Self::new(level, u.points(), u.length())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn stability_bound(&self) -> f64 {
        let h = self.spectral.dx() / std::f64::consts::PI;
        STABILITY_CONSTANT * std::f64::consts::PI.powi(3) * h.powi(2 * self.level as i32 - 1)
    }

    /// `∂_x G_n[U]` on the grid.
    pub fn rhs(&self, u: &MatrixField) -> MatrixField {
        let g = Derivatives::new(u, &self.spectral, self.max_letter).evaluate(&self.density);
        g.map_series(|s| self.spectral.derivative_in_place(s, 1))
    }

    fn check_tail(&self, u: &MatrixField) -> Result<()> {
        let r = u.rank();
        let (mut tail, mut total) = (0.0, 0.0);
        for a in 0..r {
            for b in 0..r {
                let (t, e) = self.spectral.tail_fraction(&u.entry_series(a, b));
                tail += t;
                total += e;
            }
        }
        if total > 0.0 && tail / total > TAIL_LIMIT {
            return Err(Error::SpectralTail {
                fraction: tail / total,
                limit: TAIL_LIMIT,
            });
        }
        Ok(())
    }

    /// One classical RK4 step followed by re-hermitization. Returns the new
    /// state and the size of the hermitian correction.
    pub fn step(&self, state: &FlowState, dt: f64) -> Result<(FlowState, f64)> {
        let bound = self.stability_bound();
        if !(dt > 0.0 && dt <= bound) {
            return Err(Error::UnstableStep { dt, bound });
        }
        let u = state.potential.samples();
        let k1 = self.rhs(u);
        let mut stage = u.clone();
        stage.axpy(0.5 * dt, &k1);
        let k2 = self.rhs(&stage);
        let mut stage = u.clone();
        stage.axpy(0.5 * dt, &k2);
        let k3 = self.rhs(&stage);
        let mut stage = u.clone();
        stage.axpy(dt, &k3);
        let k4 = self.rhs(&stage);

        let mut next = u.clone();
        next.axpy(dt / 6.0, &k1);
        next.axpy(dt / 3.0, &k2);
        next.axpy(dt / 3.0, &k3);
        next.axpy(dt / 6.0, &k4);
        let correction = next.hermitize();
        self.check_tail(&next)?;
        let potential = GridPotential::new(state.potential.length(), next)?;
        Ok((
            FlowState {
                potential,
                time: state.time + dt,
            },
            correction,
        ))
    }

    /// Integrates to `t_end` with `ceil(t_end / dt)` equal steps.
    pub fn run(&self, start: &FlowState, dt: f64, t_end: f64) -> Result<FlowRun> {
        if !(t_end >= start.time && dt > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "cannot integrate from {} to {t_end} with dt = {dt}",
                start.time
            )));
        }
        let span = t_end - start.time;
        let steps = ((span / dt) - 1e-9).ceil().max(0.0) as usize;
        let h = if steps == 0 { 0.0 } else { span / steps as f64 };
        let mut state = start.clone();
        let mut correction = 0.0;
        for _ in 0..steps {
            let (next, c) = self.step(&state, h)?;
            state = next;
            correction += c;
        }
        Ok(FlowRun {
            state,
            steps,
            dt: h,
            hermitian_correction: correction,
        })
    }
}

#[derive(Debug, Clone)]
pub struct FlowRun {
    pub state: FlowState,
    pub steps: usize,
    pub dt: f64,
    /// Sum of the per-step re-hermitization corrections.
    pub hermitian_correction: f64,
}

pub fn flow_step(state: &FlowState, n: u32, dt: f64) -> Result<FlowState> {
    Ok(KdvFlow::for_potential(n, &state.potential)?
        .step(state, dt)?
        .0)
}

/// `(∫ tr U dx, ∫ tr U² dx)`.
pub fn conserved_quantities(u: &GridPotential) -> Result<(f64, f64)> {
    let s = u.samples();
    Ok((
        integrate_trace(s, u.length())?,
        integrate_trace(&s.matmul(s), u.length())?,
    ))
}

/// `|after - before| / |before|`, or the absolute change when `before`
/// vanishes.
pub fn relative_drift(before: f64, after: f64) -> f64 {
    let d = (after - before).abs();
    if before.abs() > 1e-300 {
        d / before.abs()
    } else {
        d
    }
}

/// `U(x) ↦ U(x + s)` by exact Fourier phase shift.
pub fn translate(u: &GridPotential, s: f64) -> Result<GridPotential> {
    let spectral = Spectral::new(u.points(), u.length());
    let mut shifted = u.samples().map_series(|v| spectral.shift_in_place(v, s));
    shifted.hermitize();
    GridPotential::new(u.length(), shifted)
}

/// Conservation diagnostics of one flow run, inputs echoed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservationReport {
    pub level: u32,
    pub points: usize,
    pub rank: usize,
    pub length: f64,
    pub dt: f64,
    pub t_end: f64,
    pub steps: usize,
    pub trace_u: [f64; 2],
    pub trace_u2: [f64; 2],
    pub drift_trace_u: f64,
    pub drift_trace_u2: f64,
    pub hermitian_correction: f64,
}

pub fn run_with_report(
    start: &FlowState,
    level: u32,
    dt: f64,
    t_end: f64,
) -> Result<(FlowState, ConservationReport)> {
    let flow = KdvFlow::for_potential(level, &start.potential)?;
    let (q1, q2) = conserved_quantities(&start.potential)?;
    let run = flow.run(start, dt, t_end)?;
    let (p1, p2) = conserved_quantities(&run.state.potential)?;
    let report = ConservationReport {
        level,
        points: start.potential.points(),
        rank: start.potential.rank(),
        length: start.potential.length(),
        dt: run.dt,
        t_end,
        steps: run.steps,
        trace_u: [q1, p1],
        trace_u2: [q2, p2],
        drift_trace_u: relative_drift(q1, p1),
        drift_trace_u2: relative_drift(q2, p2),
        hermitian_correction: run.hermitian_correction,
    };
    Ok((run.state, report))
}
