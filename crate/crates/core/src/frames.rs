//! Path-parametrized orthonormal state frames and their exact time derivatives.
//!
//! Three families are provided, all built from the same three-level block
//!
//! ```text
//! ψ₁ = cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩
//! ψ₂ = cos(χ/2)|b⟩ + sin(χ/2)e^{iξ}|e⟩
//! ψ₃ = sin(χ/2)e^{−iξ}|b⟩ − cos(χ/2)|e⟩,   |b⟩ = sin(θ/2)e^{−iφ}|0⟩ − cos(θ/2)|1⟩
//! ```
//!
//! * [`three_level_frame`]: the block itself in the basis `(|0⟩, |1⟩, |e⟩)`.
//! * [`phase_driven_frame`]: the same block with `θ` and `ξ` pinned and a
//!   guard on small `χ`.
//! * [`two_qubit_frame`]: the block embedded on `(|10⟩, |11⟩, |ee⟩)` of the
//!   ordered basis `(|00⟩, |01⟩, |10⟩, |11⟩, |ee⟩, |0e⟩)`, completed by the
//!   static states `|00⟩`, `|01⟩`, `|0e⟩`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laws::{Angles, Channel, PathLaws, PathPoint};
use crate::numerics::CVec;
use crate::scalar::Real;

/// Lower bound on `χ` for the phase-driven family.
pub const CHI_GUARD: f64 = 1e-6;

/// Ordered orthonormal frame at one instant.
#[derive(Clone, Debug)]
pub struct StateFrame<T> {
    pub states: Vec<CVec<T>>,
    pub derivs: Vec<CVec<T>>,
    /// Indices into `states` spanning the computational subspace.
    pub computational: Vec<usize>,
    /// Indices of the auxiliary states, in order (`L+1`, `L+2`).
    pub ancilla: Vec<usize>,
    pub time: T,
}

impl<T: Real> StateFrame<T> {
    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, CVec::dim)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `‖Gram − I‖_max`.
    pub fn gram_error(&self) -> T {
        let mut worst = T::zero();
        for (i, u) in self.states.iter().enumerate() {
            for (j, v) in self.states.iter().enumerate() {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((u.inner(v) - Complex::new(target, T::zero())).norm());
            }
        }
        worst
    }

    pub fn check_orthonormal(&self) -> Result<()> {
        let dev = self.gram_error();
        if dev > T::orthonormal_tol() || dev.is_nan() {
            return Err(Error::NotOrthonormal {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// `⟨ψ_i|i∂_t|ψ_i⟩`, the geometric connection of state `i` (rad/s).
    pub fn connection(&self, i: usize) -> T {
        let z = self.states[i].inner(&self.derivs[i]);
        // i·⟨ψ|ψ̇⟩ with ⟨ψ|ψ̇⟩ purely imaginary
        -z.im
    }

    /// `i⟨ψ_a|ψ̇_b⟩`.
    pub fn coupling(&self, a: usize, b: usize) -> Complex<T> {
        self.states[a].inner(&self.derivs[b]) * Complex::i()
    }

    /// Same states with a different computational/ancilla split.
    pub fn relabel(mut self, computational: &[usize], ancilla: &[usize]) -> Self {
        self.computational = computational.to_vec();
        self.ancilla = ancilla.to_vec();
        self
    }
}

/// Which pair of three-level states carries the qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThreeLevelSubspace {
    /// Computational `{ψ₁, ψ₂}`, ancilla `ψ₃` (bright-state drive with detuned `|e⟩`).
    ExcitedAncilla,
    /// Computational `{ψ₂, ψ₃}`, ancilla `ψ₁` (decoupled dark state).
    #[default]
    DarkAncilla,
}

impl ThreeLevelSubspace {
    fn labels(self) -> (Vec<usize>, Vec<usize>) {
        match self {
            ThreeLevelSubspace::ExcitedAncilla => (vec![0, 1], vec![2]),
            ThreeLevelSubspace::DarkAncilla => (vec![1, 2], vec![0]),
        }
    }
}

/// Frame family together with its labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameFamily {
    ThreeLevel(ThreeLevelSubspace),
    PhaseDriven,
    TwoQubit,
}

impl FrameFamily {
    pub fn dim(self) -> usize {
        match self {
            FrameFamily::ThreeLevel(_) | FrameFamily::PhaseDriven => 3,
            FrameFamily::TwoQubit => 6,
        }
    }

    pub fn frame_at_point<T: Real>(self, point: &PathPoint<T>) -> Result<StateFrame<T>> {
        match self {
            FrameFamily::ThreeLevel(sub) => Ok(three_level_at(point, sub)),
            FrameFamily::PhaseDriven => phase_driven_at(point),
            FrameFamily::TwoQubit => Ok(two_qubit_at(point)),
        }
    }
}

/// Three raw block states and derivatives in coordinates `(|0⟩, |1⟩, |e⟩)`.
struct Block<T> {
    states: [CVec<T>; 3],
    derivs: [CVec<T>; 3],
}

fn block<T: Real>(a: &Angles<T>, r: &Angles<T>) -> Block<T> {
    let half = T::lit(0.5);
    let zero = Complex::<T>::zero();
    let (sth, cth) = (a.theta * half).sin_cos();
    let (sch, cch) = (a.chi * half).sin_cos();
    let e_phi = Complex::from_polar(T::one(), a.phi);
    let e_xi = Complex::from_polar(T::one(), a.xi);
    let re = |x: T| Complex::new(x, T::zero());
    let i = Complex::<T>::i();

    let psi1 = CVec::from_vec(vec![re(cth), e_phi * sth, zero]);
    let b = CVec::from_vec(vec![e_phi.conj() * sth, re(-cth), zero]);
    let e = CVec::from_vec(vec![zero, zero, Complex::new(T::one(), T::zero())]);

    // d/dt of ψ₁ and |b⟩ through θ and φ
    let dpsi1 = CVec::from_vec(vec![
        re(-sth * half * r.theta),
        e_phi * (cth * half * r.theta) + e_phi * i * (sth * r.phi),
        zero,
    ]);
    let db = CVec::from_vec(vec![
        e_phi.conj() * (cth * half * r.theta) - e_phi.conj() * i * (sth * r.phi),
        re(sth * half * r.theta),
        zero,
    ]);

    let psi2 = b.scale(re(cch)).axpy(e_xi * sch, &e);
    let psi3 = b.scale(e_xi.conj() * sch).axpy(re(-cch), &e);

    let dpsi2 = db
        .scale(re(cch))
        .axpy(re(-sch * half * r.chi), &b)
        .axpy(e_xi * (re(cch * half * r.chi) + i * (sch * r.xi)), &e);
    let dpsi3 = db
        .scale(e_xi.conj() * sch)
        .axpy(e_xi.conj() * (re(cch * half * r.chi) - i * (sch * r.xi)), &b)
        .axpy(re(sch * half * r.chi), &e);

    Block {
        states: [psi1, psi2, psi3],
        derivs: [dpsi1, dpsi2, dpsi3],
    }
}

fn three_level_at<T: Real>(point: &PathPoint<T>, sub: ThreeLevelSubspace) -> StateFrame<T> {
    let Block { states, derivs } = block(&point.angles, &point.rates);
    let (computational, ancilla) = sub.labels();
    StateFrame {
        states: states.into(),
        derivs: derivs.into(),
        computational,
        ancilla,
        time: point.time,
    }
}

fn phase_driven_at<T: Real>(point: &PathPoint<T>) -> Result<StateFrame<T>> {
    let guard = T::lit(CHI_GUARD);
    if point.angles.chi <= guard {
        return Err(Error::SingularFrame {
            chi: point.angles.chi.to_f64().unwrap_or(f64::NAN),
            guard: CHI_GUARD,
        });
    }
    if point.rates.theta != T::zero() || point.rates.xi != T::zero() {
        return Err(Error::InvalidLaws(
            "phase-driven frames require constant theta and xi".into(),
        ));
    }
    Ok(three_level_at(point, ThreeLevelSubspace::ExcitedAncilla))
}

/// Block slots inside the two-qubit basis `(|00⟩,|01⟩,|10⟩,|11⟩,|ee⟩,|0e⟩)`.
const TWO_QUBIT_SLOTS: [usize; 3] = [2, 3, 4];

fn two_qubit_at<T: Real>(point: &PathPoint<T>) -> StateFrame<T> {
    let Block { states, derivs } = block(&point.angles, &point.rates);
    let embed = |v: &CVec<T>| v.embed(6, &TWO_QUBIT_SLOTS);
    let still = CVec::zeros(6);
    let mut all_states = vec![CVec::basis(6, 0), CVec::basis(6, 1)];
    let mut all_derivs = vec![still.clone(), still.clone()];
    for (s, d) in states.iter().zip(&derivs) {
        all_states.push(embed(s));
        all_derivs.push(embed(d));
    }
    all_states.push(CVec::basis(6, 5));
    all_derivs.push(still);
    StateFrame {
        states: all_states,
        derivs: all_derivs,
        computational: vec![0, 1, 2, 3],
        ancilla: vec![4, 5],
        time: point.time,
    }
}

/// Three-level frame in `(|0⟩, |1⟩, |e⟩)`; `χ = 0` is allowed.
pub fn three_level_frame<T: Real>(
    laws: &PathLaws<T>,
    t: T,
    subspace: ThreeLevelSubspace,
) -> StateFrame<T> {
    three_level_at(&laws.sample(t), subspace)
}

/// Frame with `φ(t)` and `χ(t)` moving and `θ`, `ξ` fixed.
///
/// Fails with [`Error::SingularFrame`] when `χ ≤ 1e−6` rad, where the
/// coupling-elimination rate for this family diverges.
pub fn phase_driven_frame<T: Real>(laws: &PathLaws<T>, t: T) -> Result<StateFrame<T>> {
    if !laws.channel_is_constant(Channel::Theta) || !laws.channel_is_constant(Channel::Xi) {
        return Err(Error::InvalidLaws(
            "phase-driven frames require constant theta and xi".into(),
        ));
    }
    phase_driven_at(&laws.sample(t))
}

/// Six-state two-qubit frame; computational `{ψ₁..ψ₄}`, ancillas `ψ₅` then `ψ₆`.
pub fn two_qubit_frame<T: Real>(laws: &PathLaws<T>, t: T) -> StateFrame<T> {
    two_qubit_at(&laws.sample(t))
}

/// A frame family bound to its path laws: the full time-dependent frame.
#[derive(Clone, Debug)]
pub struct FramePath<T> {
    pub family: FrameFamily,
    pub laws: PathLaws<T>,
}

impl<T: Real> FramePath<T> {
    pub fn new(family: FrameFamily, laws: PathLaws<T>) -> Result<Self> {
        if family == FrameFamily::PhaseDriven
            && (!laws.channel_is_constant(Channel::Theta) || !laws.channel_is_constant(Channel::Xi))
        {
            return Err(Error::InvalidLaws(
                "phase-driven frames require constant theta and xi".into(),
            ));
        }
        Ok(Self { family, laws })
    }

    pub fn duration(&self) -> T {
        self.laws.duration()
    }

    pub fn frame_at(&self, t: T) -> Result<StateFrame<T>> {
        self.family.frame_at_point(&self.laws.sample(t))
    }

    /// Frame used to evaluate the connection across an instantaneous jump:
    /// states at the pre-jump angles with the jump deltas as unit-time rates.
    pub fn jump_frame(&self, before: Angles<T>, delta: Angles<T>, time: T) -> Result<StateFrame<T>> {
        self.family.frame_at_point(&PathPoint {
            time,
            angles: before,
            rates: delta,
        })
    }
}

/// `max_i ‖ψ_i(τ) − ψ_i(0)‖` over the computational states.
pub fn check_cyclic<T: Real>(path: &FramePath<T>, tau: T) -> Result<T> {
    let start = path.frame_at(T::zero())?;
    let end = path.frame_at(tau)?;
    Ok(start
        .computational
        .iter()
        .map(|&i| (&end.states[i] - &start.states[i]).norm())
        .fold(T::zero(), T::max))
}
