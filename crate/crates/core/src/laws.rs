//! Piecewise time laws for the path angles `(θ, φ, χ, ξ)`.
//!
//! A [`PathLaws`] is an ordered list of segments sharing one time grid. Each
//! segment carries one law per angle. Zero-duration segments model
//! instantaneous phase jumps of `φ` or `ξ`; `θ` and `χ` are always continuous.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The four path angles, or their time derivatives.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Angles<T> {
    pub theta: T,
    pub phi: T,
    pub chi: T,
    pub xi: T,
}

impl<T: Real> Angles<T> {
    pub fn new(theta: T, phi: T, chi: T, xi: T) -> Self {
        Self { theta, phi, chi, xi }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.theta * s, self.phi * s, self.chi * s, self.xi * s)
    }

    fn channels(&self) -> [T; 4] {
        [self.theta, self.phi, self.chi, self.xi]
    }
}

/// Angle values and rates at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathPoint<T> {
    pub time: T,
    pub angles: Angles<T>,
    pub rates: Angles<T>,
}

/// Time law of one angle on one segment. Times are local to the segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngleLaw<T> {
    Constant(T),
    Linear { start: T, rate: T },
    /// Instantaneous change from `from` to `from + delta`; zero-duration segments only.
    Jump { from: T, delta: T },
}

impl<T: Real> AngleLaw<T> {
    pub fn value_at(&self, local_t: T) -> T {
        match *self {
            AngleLaw::Constant(c) => c,
            AngleLaw::Linear { start, rate } => start + rate * local_t,
            AngleLaw::Jump { from, .. } => from,
        }
    }

    pub fn rate(&self) -> T {
        match *self {
            AngleLaw::Linear { rate, .. } => rate,
            _ => T::zero(),
        }
    }

    pub fn start_value(&self) -> T {
        self.value_at(T::zero())
    }

    pub fn end_value(&self, duration: T) -> T {
        match *self {
            AngleLaw::Jump { from, delta } => from + delta,
            _ => self.value_at(duration),
        }
    }

    pub fn jump_delta(&self) -> T {
        match *self {
            AngleLaw::Jump { delta, .. } => delta,
            _ => T::zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, AngleLaw::Constant(_))
    }
}

/// One segment of the time grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LawSegment<T> {
    /// Seconds; zero for jump segments.
    pub duration: T,
    pub theta: AngleLaw<T>,
    pub phi: AngleLaw<T>,
    pub chi: AngleLaw<T>,
    pub xi: AngleLaw<T>,
}

impl<T: Real> LawSegment<T> {
    pub fn laws(&self) -> [&AngleLaw<T>; 4] {
        [&self.theta, &self.phi, &self.chi, &self.xi]
    }

    pub fn angles_at(&self, local_t: T) -> Angles<T> {
        Angles::new(
            self.theta.value_at(local_t),
            self.phi.value_at(local_t),
            self.chi.value_at(local_t),
            self.xi.value_at(local_t),
        )
    }

    pub fn rates(&self) -> Angles<T> {
        Angles::new(
            self.theta.rate(),
            self.phi.rate(),
            self.chi.rate(),
            self.xi.rate(),
        )
    }

    pub fn start_angles(&self) -> Angles<T> {
        self.angles_at(T::zero())
    }

    pub fn end_angles(&self) -> Angles<T> {
        Angles::new(
            self.theta.end_value(self.duration),
            self.phi.end_value(self.duration),
            self.chi.end_value(self.duration),
            self.xi.end_value(self.duration),
        )
    }

    pub fn jump_deltas(&self) -> Angles<T> {
        Angles::new(
            self.theta.jump_delta(),
            self.phi.jump_delta(),
            self.chi.jump_delta(),
            self.xi.jump_delta(),
        )
    }

    pub fn is_jump(&self) -> bool {
        self.duration == T::zero()
    }
}

/// An instantaneous phase jump located at `time`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpEvent<T> {
    pub time: T,
    pub before: Angles<T>,
    pub delta: Angles<T>,
}

/// Validated piecewise angle laws on `[0, τ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathLaws<T> {
    segments: Vec<LawSegment<T>>,
    starts: Vec<T>,
}

const CHANNEL_NAMES: [&str; 4] = ["theta", "phi", "chi", "xi"];

impl<T: Real> PathLaws<T> {
    pub fn new(segments: Vec<LawSegment<T>>) -> Result<Self> {
        let join_tol = T::lit(1e-12);
        let chi_tol = T::lit(1e-12);
        let mut starts = Vec::with_capacity(segments.len());
        let mut clock = T::zero();
        for (k, seg) in segments.iter().enumerate() {
            if !(seg.duration >= T::zero()) || !seg.duration.is_finite() {
                return Err(Error::InvalidLaws(format!(
                    "segment {k}: duration must be finite and non-negative"
                )));
            }
            for (name, law) in CHANNEL_NAMES.iter().zip(seg.laws()) {
                if let AngleLaw::Jump { .. } = law {
                    if !seg.is_jump() {
                        return Err(Error::InvalidLaws(format!(
                            "segment {k}: {name} jumps inside a segment of positive duration"
                        )));
                    }
                    if *name == "theta" || *name == "chi" {
                        return Err(Error::InvalidLaws(format!(
                            "segment {k}: {name} must be continuous, only phi and xi may jump"
                        )));
                    }
                }
            }
            for chi in [seg.start_angles().chi, seg.end_angles().chi] {
                if chi < -chi_tol || chi > T::PI() + chi_tol || chi.is_nan() {
                    return Err(Error::InvalidLaws(format!(
                        "segment {k}: chi = {chi} leaves [0, pi]"
                    )));
                }
            }
            if k > 0 {
                let prev = segments[k - 1].end_angles().channels();
                let next = seg.start_angles().channels();
                for (i, (a, b)) in prev.iter().zip(next.iter()).enumerate() {
                    let scale = T::one().max(a.abs());
                    if (*a - *b).abs() > join_tol * scale {
                        return Err(Error::InvalidLaws(format!(
                            "{} is discontinuous at the start of segment {k} ({a} -> {b}); use a jump segment",
                            CHANNEL_NAMES[i]
                        )));
                    }
                }
            }
            starts.push(clock);
            clock += seg.duration;
        }
        Ok(Self { segments, starts })
    }

    /// All four angles held at fixed values for `duration`.
    pub fn hold(duration: T, angles: Angles<T>) -> Result<Self> {
        Self::new(vec![LawSegment {
            duration,
            theta: AngleLaw::Constant(angles.theta),
            phi: AngleLaw::Constant(angles.phi),
            chi: AngleLaw::Constant(angles.chi),
            xi: AngleLaw::Constant(angles.xi),
        }])
    }

    /// Single segment with every angle moving linearly.
    pub fn linear(duration: T, start: Angles<T>, rates: Angles<T>) -> Result<Self> {
        let law = |s, r| {
            if r == T::zero() {
                AngleLaw::Constant(s)
            } else {
                AngleLaw::Linear { start: s, rate: r }
            }
        };
        Self::new(vec![LawSegment {
            duration,
            theta: law(start.theta, rates.theta),
            phi: law(start.phi, rates.phi),
            chi: law(start.chi, rates.chi),
            xi: law(start.xi, rates.xi),
        }])
    }

    pub fn segments(&self) -> &[LawSegment<T>] {
        &self.segments
    }

    /// Start time of each segment (seconds).
    pub fn segment_starts(&self) -> &[T] {
        &self.starts
    }

    pub fn duration(&self) -> T {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Distinct segment boundaries `T_0 = 0 < … < T_n = τ`.
    pub fn knots(&self) -> Vec<T> {
        let mut knots = vec![T::zero()];
        for (seg, &start) in self.segments.iter().zip(&self.starts) {
            let end = start + seg.duration;
            if end > *knots.last().unwrap() {
                knots.push(end);
            }
        }
        knots
    }

    /// Angles and rates at time `t`.
    ///
    /// Inside `[T_k, T_{k+1})` the law of segment `k` applies; at `t ≥ τ` the
    /// last segment of positive duration is evaluated at its end. Zero-duration
    /// segments are never sampled: their effect is carried by the start values
    /// of the segment that follows.
    pub fn sample(&self, t: T) -> PathPoint<T> {
        let mut chosen: Option<usize> = None;
        for (k, seg) in self.segments.iter().enumerate() {
            if seg.is_jump() {
                continue;
            }
            chosen = Some(k);
            if t < self.starts[k] + seg.duration {
                break;
            }
        }
        match chosen {
            Some(k) => {
                let seg = &self.segments[k];
                let local = (t - self.starts[k]).max(T::zero()).min(seg.duration);
                PathPoint {
                    time: t,
                    angles: seg.angles_at(local),
                    rates: seg.rates(),
                }
            }
            None => PathPoint {
                time: t,
                angles: self
                    .segments
                    .last()
                    .map(|s| s.end_angles())
                    .unwrap_or_else(Angles::zero),
                rates: Angles::zero(),
            },
        }
    }

    /// Angles at `t = 0`.
    pub fn start_angles(&self) -> Angles<T> {
        self.segments
            .first()
            .map(|s| s.start_angles())
            .unwrap_or_else(Angles::zero)
    }

    /// Angles after the last segment, trailing jumps included.
    pub fn end_angles(&self) -> Angles<T> {
        self.segments
            .last()
            .map(|s| s.end_angles())
            .unwrap_or_else(Angles::zero)
    }

    pub fn jumps(&self) -> Vec<JumpEvent<T>> {
        self.segments
            .iter()
            .zip(&self.starts)
            .filter(|(s, _)| s.is_jump())
            .map(|(s, &time)| JumpEvent {
                time,
                before: s.start_angles(),
                delta: s.jump_deltas(),
            })
            .filter(|j| j.delta != Angles::zero())
            .collect()
    }

    /// True when `channel` never changes; used by frame families that pin an angle.
    pub fn channel_is_constant(&self, channel: Channel) -> bool {
        self.segments.iter().all(|s| match channel {
            Channel::Theta => s.theta.is_constant(),
            Channel::Phi => s.phi.is_constant(),
            Channel::Chi => s.chi.is_constant(),
            Channel::Xi => s.xi.is_constant(),
        })
    }

    /// Same path traversed with every rate multiplied by `factor` (durations divided).
    pub fn time_scaled(&self, factor: T) -> Result<Self> {
        let scale_law = |law: &AngleLaw<T>| match *law {
            AngleLaw::Linear { start, rate } => AngleLaw::Linear {
                start,
                rate: rate * factor,
            },
            other => other,
        };
        Self::new(
            self.segments
                .iter()
                .map(|s| LawSegment {
                    duration: s.duration / factor,
                    theta: scale_law(&s.theta),
                    phi: scale_law(&s.phi),
                    chi: scale_law(&s.chi),
                    xi: scale_law(&s.xi),
                })
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    Theta,
    Phi,
    Chi,
    Xi,
}
