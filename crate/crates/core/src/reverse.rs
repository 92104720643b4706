//! Reverse Hamiltonian engineering: build `H(t)` from a moving frame so that
//! every frame state is carried along the path, then check the defining
//! conditions as residuals.
//!
//! In the frame basis the synthesized Hamiltonian has entries
//!
//! ```text
//! ⟨ψ_a|H|ψ_b⟩ = i⟨ψ_a|ψ̇_b⟩                       a ≠ b
//! ⟨ψ_j|H|ψ_j⟩ = η·i⟨ψ_j|ψ̇_j⟩                     computational j
//! ⟨ψ_k|H|ψ_k⟩ = i⟨ψ_k|ψ̇_k⟩ − γ̇_k                 ancilla k
//! ```
//!
//! With `η = 0` the computational states pick up no dynamical phase and the
//! evolution over a cyclic path is purely geometric.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::frames::{FramePath, StateFrame};
use crate::laws::PathPoint;
use crate::numerics::CMat;
use crate::scalar::Real;

/// Rate `γ̇(t)` assigned to an ancilla diagonal.
#[derive(Clone)]
pub enum GammaLaw<T> {
    Zero,
    /// `ξ̇ (3 + cos χ) / 2`: removes the ancilla energy offset of the
    /// bright-state drive and of the two-qubit construction.
    XiCompensated,
    /// Rate that cancels the direct `|0⟩⟨1|` coupling of the phase-driven frame:
    /// `φ̇ {4(3 + cos χ) + cos θ (11 + 4 cos χ + cos 2χ) csc²(χ/2)} / 16`.
    PhaseDrivenDecoupling,
    /// Piecewise-linear table of `(t, γ̇)` knots, held constant outside.
    Table(Vec<(T, T)>),
    Custom(Arc<dyn Fn(&PathPoint<T>) -> T + Send + Sync>),
}

impl<T: Real> GammaLaw<T> {
    pub fn rate(&self, p: &PathPoint<T>) -> T {
        let (a, r) = (&p.angles, &p.rates);
        match self {
            GammaLaw::Zero => T::zero(),
            GammaLaw::XiCompensated => r.xi * (T::lit(3.0) + a.chi.cos()) * T::lit(0.5),
            GammaLaw::PhaseDrivenDecoupling => {
                let csc2 = (a.chi * T::lit(0.5)).sin().powi(-2);
                let bracket = T::lit(4.0) * (T::lit(3.0) + a.chi.cos())
                    + a.theta.cos()
                        * (T::lit(11.0) + T::lit(4.0) * a.chi.cos() + (a.chi + a.chi).cos())
                        * csc2;
                r.phi * bracket / T::lit(16.0)
            }
            GammaLaw::Table(knots) => interpolate(knots, p.time),
            GammaLaw::Custom(f) => f(p),
        }
    }
}

impl<T: std::fmt::Debug> std::fmt::Debug for GammaLaw<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GammaLaw::Zero => write!(f, "Zero"),
            GammaLaw::XiCompensated => write!(f, "XiCompensated"),
            GammaLaw::PhaseDrivenDecoupling => write!(f, "PhaseDrivenDecoupling"),
            GammaLaw::Table(k) => f.debug_tuple("Table").field(k).finish(),
            GammaLaw::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

fn interpolate<T: Real>(knots: &[(T, T)], t: T) -> T {
    match knots {
        [] => T::zero(),
        [(_, v)] => *v,
        _ => {
            if t <= knots[0].0 {
                return knots[0].1;
            }
            for w in knots.windows(2) {
                let ((t0, v0), (t1, v1)) = (w[0], w[1]);
                if t <= t1 {
                    if t1 == t0 {
                        return v1;
                    }
                    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
                }
            }
            knots[knots.len() - 1].1
        }
    }
}

fn synthesize<T: Real>(frame: &StateFrame<T>, ancilla_rates: &[T], eta: T) -> Result<CMat<T>> {
    frame.check_orthonormal()?;
    if frame.computational.len() + frame.ancilla.len() != frame.len() {
        return Err(Error::InvalidArgument(format!(
            "frame labels cover {} of {} states",
            frame.computational.len() + frame.ancilla.len(),
            frame.len()
        )));
    }
    if frame.ancilla.len() != ancilla_rates.len() {
        return Err(Error::InvalidArgument(format!(
            "frame has {} ancilla states but {} gamma rates were given",
            frame.ancilla.len(),
            ancilla_rates.len()
        )));
    }

    let n = frame.len();
    let mut h = CMat::zeros(frame.dim());
    for a in 0..n {
        for b in (a + 1)..n {
            let g = frame.coupling(a, b);
            if g.is_zero() {
                continue;
            }
            h.add_outer(g, &frame.states[a], &frame.states[b]);
            h.add_outer(g.conj(), &frame.states[b], &frame.states[a]);
        }
    }
    for &j in &frame.computational {
        let d = eta * frame.connection(j);
        if d != T::zero() {
            h.add_outer(Complex::new(d, T::zero()), &frame.states[j], &frame.states[j]);
        }
    }
    for (&k, &rate) in frame.ancilla.iter().zip(ancilla_rates) {
        let d = frame.connection(k) - rate;
        if d != T::zero() {
            h.add_outer(Complex::new(d, T::zero()), &frame.states[k], &frame.states[k]);
        }
    }
    Ok(h.hermitian_part())
}

/// Hamiltonian carrying a frame with `L` computational states and one ancilla.
pub fn reverse_hamiltonian<T: Real>(frame: &StateFrame<T>, ancilla_rate: T) -> Result<CMat<T>> {
    synthesize(frame, &[ancilla_rate], T::zero())
}

/// Variant whose computational diagonals equal `η` times the connection,
/// `⟨ψ_j|H|ψ_j⟩ = η⟨ψ_j|i∂_t|ψ_j⟩`. `η = 0` reproduces [`reverse_hamiltonian`].
pub fn reverse_hamiltonian_unconventional<T: Real>(
    frame: &StateFrame<T>,
    ancilla_rate: T,
    eta: T,
) -> Result<CMat<T>> {
    synthesize(frame, &[ancilla_rate], eta)
}

/// Two-ancilla extension: both ancilla diagonals plus the ancilla–ancilla
/// cross coupling.
pub fn reverse_hamiltonian_two_ancilla<T: Real>(
    frame: &StateFrame<T>,
    ancilla_rates: [T; 2],
) -> Result<CMat<T>> {
    synthesize(frame, &ancilla_rates, T::zero())
}

/// Synthesis with any number of ancillas and any `η`.
pub fn reverse_hamiltonian_general<T: Real>(
    frame: &StateFrame<T>,
    ancilla_rates: &[T],
    eta: T,
) -> Result<CMat<T>> {
    synthesize(frame, ancilla_rates, eta)
}

/// `max_i ‖ d/dt(|ψ_i⟩⟨ψ_i|) − i[|ψ_i⟩⟨ψ_i|, H] ‖_max` over computational states.
pub fn von_neumann_residual<T: Real>(h: &CMat<T>, frame: &StateFrame<T>) -> T {
    let i = Complex::<T>::i();
    frame
        .computational
        .iter()
        .map(|&j| {
            let psi = &frame.states[j];
            let dpsi = &frame.derivs[j];
            let p = CMat::projector(psi);
            let mut dp = CMat::outer(dpsi, psi);
            dp += &CMat::outer(psi, dpsi);
            let comm = &(&p * h) - &(h * &p);
            (&dp - &comm.scale(i)).max_abs()
        })
        .fold(T::zero(), T::max)
}

/// `max_i |⟨ψ_i|H|ψ_i⟩ − η⟨ψ_i|i∂_t|ψ_i⟩|` over computational states.
pub fn parallel_transport_residual<T: Real>(h: &CMat<T>, frame: &StateFrame<T>, eta: T) -> T {
    frame
        .computational
        .iter()
        .map(|&j| {
            let psi = &frame.states[j];
            let diag = h.sandwich(psi, psi);
            (diag - Complex::new(eta * frame.connection(j), T::zero())).norm()
        })
        .fold(T::zero(), T::max)
}

/// `∫₀^τ ⟨ψ_index|i∂_t|ψ_index⟩ dt` by composite Simpson on each segment,
/// with instantaneous jumps added in closed form.
///
/// `steps` is spread over the segments in proportion to their duration; every
/// segment boundary is a grid point.
pub fn geometric_phase<T: Real>(path: &FramePath<T>, index: usize, tau: T, steps: usize) -> Result<T> {
    if steps < 2 {
        return Err(Error::InvalidArgument("quadrature needs at least 2 steps".into()));
    }
    let laws = &path.laws;
    let total = laws.duration().min(tau);
    let mut phase = T::zero();

    for (seg, &start) in laws.segments().iter().zip(laws.segment_starts()) {
        if seg.is_jump() || start >= tau {
            continue;
        }
        let end = (start + seg.duration).min(tau);
        let span = end - start;
        if span <= T::zero() {
            continue;
        }
        let share = (span / total * T::from_usize_lossy(steps)).ceil();
        let mut n = share.to_usize().unwrap_or(2).max(2);
        if n % 2 == 1 {
            n += 1;
        }
        let h = span / T::from_usize_lossy(n);
        let seg_law = *seg;
        let eval = |local: T| -> Result<T> {
            let point = PathPoint {
                time: start + local,
                angles: seg_law.angles_at(local),
                rates: seg_law.rates(),
            };
            Ok(path.family.frame_at_point(&point)?.connection(index))
        };
        let mut acc = eval(T::zero())? + eval(span)?;
        for k in 1..n {
            let w = if k % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
            acc += w * eval(h * T::from_usize_lossy(k))?;
        }
        phase += acc * h / T::lit(3.0);
    }

    for jump in laws.jumps() {
        if jump.time <= tau {
            phase += path.jump_frame(jump.before, jump.delta, jump.time)?.connection(index);
        }
    }
    Ok(phase)
}

/// Accumulated phases of every computational state over the whole path.
pub fn computational_phases<T: Real>(path: &FramePath<T>, steps: usize) -> Result<Vec<T>> {
    let frame0 = path.frame_at(T::zero())?;
    frame0
        .computational
        .iter()
        .map(|&i| geometric_phase(path, i, path.duration(), steps))
        .collect()
}
