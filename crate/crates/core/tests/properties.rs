use std::f64::consts::PI;

use holonome_core::evolve::{
    kappa_sweep, propagate_lindblad, propagate_unitary, schedule_drive, FnDrive, LindbladParams, SweepSubject,
};
use holonome_core::frames::{FrameFamily, FramePath, StateFrame, ThreeLevelSubspace};
use holonome_core::laws::{AngleLaw, Angles, LawSegment, PathLaws};
use holonome_core::numerics::{fidelity_up_to_global_phase, min_eigenvalue, unitary_step, CMat, CVec};
use holonome_core::paths::{op_geometric_phase, op_schedule, ossp_schedule, s_gate, Schedule};
use holonome_core::reverse::{
    computational_phases, geometric_phase, parallel_transport_residual, reverse_hamiltonian_general,
    von_neumann_residual,
};
use num_complex::Complex;
use proptest::prelude::*;

type C = Complex<f64>;

fn hermitian(dim: usize, raw: &[f64]) -> CMat<f64> {
    let mut m = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let k = 2 * (i * dim + j);
            m[(i, j)] = C::new(raw[k], raw[k + 1]);
        }
    }
    m.hermitian_part()
}

fn hermitian_strategy() -> impl Strategy<Value = CMat<f64>> {
    (2usize..=6).prop_flat_map(|d| prop::collection::vec(-1.0f64..1.0, 2 * d * d).prop_map(move |raw| hermitian(d, &raw)))
}

/// Spectral norm bound via the Frobenius norm.
fn norm_bound(h: &CMat<f64>) -> f64 {
    h.rows().iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn unitary_strategy() -> impl Strategy<Value = CMat<f64>> {
    hermitian_strategy().prop_map(|h| unitary_step(&h, 1.0).unwrap())
}

fn angles() -> impl Strategy<Value = Angles<f64>> {
    (0.0..PI, -PI..PI, 0.0..PI, -PI..PI).prop_map(|(a, b, c, d)| Angles::new(a, b, c, d))
}

/// Unit-duration linear laws with `χ` kept inside `[lo, π − lo]`.
fn laws_strategy(lo: f64, fixed_theta_xi: bool) -> impl Strategy<Value = PathLaws<f64>> {
    (angles(), lo..PI - lo, lo..PI - lo, -2.0..2.0f64, -2.0..2.0f64, 0.0..PI).prop_map(
        move |(start, chi0, chi1, dphi, dxi, theta1)| {
            let start = Angles::new(start.theta, start.phi, chi0, start.xi);
            let rates = if fixed_theta_xi {
                Angles::new(0.0, dphi, chi1 - chi0, 0.0)
            } else {
                Angles::new(theta1 - start.theta, dphi, chi1 - chi0, dxi)
            };
            PathLaws::linear(1.0, start, rates).unwrap()
        },
    )
}

fn family_strategy() -> impl Strategy<Value = FrameFamily> {
    prop_oneof![
        Just(FrameFamily::ThreeLevel(ThreeLevelSubspace::ExcitedAncilla)),
        Just(FrameFamily::ThreeLevel(ThreeLevelSubspace::DarkAncilla)),
        Just(FrameFamily::PhaseDriven),
        Just(FrameFamily::TwoQubit),
    ]
}

fn path_strategy() -> impl Strategy<Value = FramePath<f64>> {
    family_strategy().prop_flat_map(|family| {
        let laws = if family == FrameFamily::PhaseDriven {
            laws_strategy(0.2, true).boxed()
        } else {
            laws_strategy(0.0, false).boxed()
        };
        laws.prop_map(move |l| FramePath::new(family, l).unwrap())
    })
}

fn ancilla_rates(frame: &StateFrame<f64>, seed: f64) -> Vec<f64> {
    (0..frame.ancilla.len()).map(|k| seed * (k as f64 + 1.0)).collect()
}

/// Largest deviation between analytic derivatives and a central difference.
fn fd_error(path: &FramePath<f64>, t: f64, h: f64) -> f64 {
    let f = path.frame_at(t).unwrap();
    let plus = path.frame_at(t + h).unwrap();
    let minus = path.frame_at(t - h).unwrap();
    f.derivs
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let fd = (&plus.states[i] - &minus.states[i]).scale(C::new(0.5 / h, 0.0));
            fd.max_abs_diff(d)
        })
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn unitary_step_is_unitary(h in hermitian_strategy(), frac in 0.0..1.0f64) {
        let dt = frac / norm_bound(&h).max(1e-12);
        let u = unitary_step(&h, dt).unwrap();
        prop_assert!(u.unitarity_error() < 1e-12);
    }

    #[test]
    fn unitary_step_composes(h in hermitian_strategy(), a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let ab = unitary_step(&h, a + b).unwrap();
        let prod = &unitary_step(&h, a).unwrap() * &unitary_step(&h, b).unwrap();
        prop_assert!(ab.max_abs_diff(&prod) < 1e-10);
    }

    #[test]
    fn fidelity_is_symmetric_and_unitarily_invariant(
        (u, v, w) in (2usize..=4).prop_flat_map(|d| {
            let one = prop::collection::vec(-1.0f64..1.0, 2 * d * d)
                .prop_map(move |r| unitary_step(&hermitian(d, &r), 1.0).unwrap());
            (one.clone(), one.clone(), one)
        })
    ) {
        let f = fidelity_up_to_global_phase(&u, &v).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
        prop_assert!((f - fidelity_up_to_global_phase(&v, &u).unwrap()).abs() < 1e-12);
        let left = fidelity_up_to_global_phase(&(&w * &u), &(&w * &v)).unwrap();
        let right = fidelity_up_to_global_phase(&(&u * &w), &(&v * &w)).unwrap();
        prop_assert!((f - left).abs() < 1e-12);
        prop_assert!((f - right).abs() < 1e-12);
    }

    #[test]
    fn fidelity_ignores_global_phase(u in unitary_strategy(), phase in -PI..PI) {
        let v = u.scale(C::from_polar(1.0, phase));
        prop_assert!((fidelity_up_to_global_phase(&u, &v).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frames_stay_orthonormal(path in path_strategy(), t in 0.0..1.0f64) {
        let f = path.frame_at(t).unwrap();
        prop_assert!(f.gram_error() < 1e-10);
        for i in 0..f.len() {
            prop_assert!(f.states[i].inner(&f.derivs[i]).re.abs() < 1e-10);
            for j in 0..f.len() {
                let d = f.derivs[i].inner(&f.states[j]) + f.states[i].inner(&f.derivs[j]);
                prop_assert!(d.norm() < 1e-8);
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences(path in path_strategy(), t in 0.1..0.9f64) {
        let coarse = fd_error(&path, t, 2e-3);
        let fine = fd_error(&path, t, 1e-3);
        prop_assert!(coarse < 1e-4);
        if fine > 1e-11 {
            let order = (coarse / fine).log2();
            prop_assert!(order >= 1.9, "observed order {order}");
        }
    }

    #[test]
    fn synthesized_hamiltonians_meet_both_conditions(
        path in path_strategy(),
        t in 0.0..1.0f64,
        rate in -2.0..2.0f64,
        eta in prop_oneof![Just(0.0), Just(0.5), Just(1.0), Just(2.0)],
    ) {
        let f = path.frame_at(t).unwrap();
        let h = reverse_hamiltonian_general(&f, &ancilla_rates(&f, rate), eta).unwrap();
        prop_assert!(h.hermiticity_error() < 1e-10);
        prop_assert!(von_neumann_residual(&h, &f) < 1e-8);
        prop_assert!(parallel_transport_residual(&h, &f, eta) < 1e-8);
    }

    #[test]
    fn synthesis_is_linear_in_rates(path in path_strategy(), t in 0.0..1.0f64, rate in -2.0..2.0f64) {
        let scaled = path.laws.time_scaled(2.0).unwrap();
        let fast = FramePath::new(path.family, scaled).unwrap();
        let slow = path.frame_at(t).unwrap();
        let quick = fast.frame_at(t * 0.5).unwrap();
        let h1 = reverse_hamiltonian_general(&slow, &ancilla_rates(&slow, rate), 0.7).unwrap();
        let h2 = reverse_hamiltonian_general(&quick, &ancilla_rates(&quick, 2.0 * rate), 0.7).unwrap();
        prop_assert!(h2.max_abs_diff(&h1.scale_real(2.0)) < 1e-10);
    }

    #[test]
    fn ancilla_rate_only_moves_ancilla_diagonal(path in path_strategy(), t in 0.0..1.0f64, a in -2.0..2.0f64, b in -2.0..2.0f64) {
        let f = path.frame_at(t).unwrap();
        let ha = reverse_hamiltonian_general(&f, &ancilla_rates(&f, a), 0.0).unwrap();
        let hb = reverse_hamiltonian_general(&f, &ancilla_rates(&f, b), 0.0).unwrap();
        let diff = &ha - &hb;
        for (i, si) in f.states.iter().enumerate() {
            for (j, sj) in f.states.iter().enumerate() {
                let entry = diff.sandwich(si, sj);
                if i == j && f.ancilla.contains(&i) {
                    let k = f.ancilla.iter().position(|&x| x == i).unwrap() as f64 + 1.0;
                    prop_assert!((entry.re + (a - b) * k).abs() < 1e-10);
                } else {
                    prop_assert!(entry.norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn op_area_matches_closed_formula(chi1 in 0.01..PI, xi2 in 0.0..(2.0 * PI)) {
        prop_assume!((chi1 - PI / 2.0).abs() > 1e-3);
        let k = 2.0 * PI * 20e6;
        let s = op_schedule(chi1, xi2, 0.0, k).unwrap();
        let closed = 2.0 * chi1 + xi2 * (chi1.sin() * chi1.cos()).abs();
        let closed = if (chi1 - PI).abs() < 1e-12 { 2.0 * chi1 } else { closed };
        prop_assert!((s.pulse_area() - closed).abs() < 1e-12);
        prop_assert!((s.duration() - s.pulse_area() / k).abs() < 1e-12);
    }

    #[test]
    fn geometric_phase_ignores_reparametrization(
        chi1 in 0.2..3.0f64,
        xi2 in -3.0..3.0f64,
        splits in prop::collection::vec((0.1..0.9f64, 0.2..5.0f64), 3),
    ) {
        prop_assume!((chi1 - PI / 2.0).abs() > 0.05);
        let base = cyclic_laws(chi1, xi2, &[(0.5, 1.0); 3]);
        let warped = cyclic_laws(chi1, xi2, &splits);
        let family = FrameFamily::ThreeLevel(ThreeLevelSubspace::DarkAncilla);
        let p0 = FramePath::new(family, base).unwrap();
        let p1 = FramePath::new(family, warped).unwrap();
        for idx in [1, 2] {
            let a = geometric_phase(&p0, idx, p0.duration(), 4000).unwrap();
            let b = geometric_phase(&p1, idx, p1.duration(), 4000).unwrap();
            prop_assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }
}

/// Three coordinate legs of unit nominal length; each leg is split at
/// fraction `f` of its angle, with the second half run `speed` times faster.
fn cyclic_laws(chi1: f64, xi2: f64, splits: &[(f64, f64)]) -> PathLaws<f64> {
    let theta = AngleLaw::Constant(PI);
    let phi = AngleLaw::Constant(0.0);
    let mut segs = Vec::new();
    let mut leg = |chi: (f64, f64), xi: (f64, f64), (f, speed): (f64, f64)| {
        let mid_chi = chi.0 + f * (chi.1 - chi.0);
        let mid_xi = xi.0 + f * (xi.1 - xi.0);
        for (a, b, dur) in [((chi.0, xi.0), (mid_chi, mid_xi), f), ((mid_chi, mid_xi), (chi.1, xi.1), (1.0 - f) / speed)] {
            let law = |s: f64, e: f64| {
                if s == e {
                    AngleLaw::Constant(s)
                } else {
                    AngleLaw::Linear { start: s, rate: (e - s) / dur }
                }
            };
            segs.push(LawSegment { duration: dur, theta, phi, chi: law(a.0, b.0), xi: law(a.1, b.1) });
        }
    };
    leg((0.0, chi1), (0.0, 0.0), splits[0]);
    leg((chi1, chi1), (0.0, xi2), splits[1]);
    leg((chi1, 0.0), (xi2, xi2), splits[2]);
    PathLaws::new(segs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn unitary_propagation_preserves_norm(path in path_strategy(), rate in -2.0..2.0f64, pick in 0usize..6) {
        let f0 = path.frame_at(0.0).unwrap();
        let rates = ancilla_rates(&f0, rate);
        let drive = holonome_core::evolve::SynthesizedDrive::new(
            path.clone(),
            rates.iter().map(|&r| holonome_core::reverse::GammaLaw::Table(vec![(0.0, r), (1.0, r)])).collect(),
            0.0,
        );
        let u = propagate_unitary(&drive, 1.0, 10_000).unwrap();
        let v = CVec::basis(f0.dim(), pick % f0.dim());
        prop_assert!((u.matvec(&v).norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lindblad_keeps_density_matrices_physical(raw in prop::collection::vec(-1.0f64..1.0, 18), kz in 0.0..2.0f64, km in 0.0..2.0f64) {
        let h = hermitian(3, &raw);
        let drive = FnDrive { dim: 3, tau: 1.0, f: |t: f64| h.scale_real(1.0 + 0.5 * t.sin()) };
        let mut psi = CVec::from_vec(vec![C::new(raw[0], raw[1]), C::new(raw[2], raw[3]), C::new(raw[4], raw[5])]);
        prop_assume!(psi.norm() > 0.1);
        psi = psi.scale(C::new(1.0 / psi.norm(), 0.0));
        let run = propagate_lindblad(&drive, &CMat::projector(&psi), &LindbladParams::new(kz, km), 1.0, 2000).unwrap();
        prop_assert!((run.rho.trace().re - 1.0).abs() < 1e-8);
        prop_assert!(run.trace_drift < 1e-8);
        prop_assert!(run.hermiticity < 1e-10);
        prop_assert!(min_eigenvalue(&run.rho).unwrap() >= -1e-8);
    }
}

#[test]
fn closed_form_phase_matches_quadrature_on_grid() {
    let k = 2.0 * PI * 20e6;
    let mut worst = 0.0f64;
    for i in 0..20 {
        // χ₁ spans (0, π] while skipping π/2
        let chi1 = PI * (i as f64 + 0.75) / 20.0;
        for j in 0..20 {
            let xi2 = 2.0 * PI * (j as f64) / 19.0;
            let s = op_schedule(chi1, xi2, 0.1, k).unwrap();
            let phases = computational_phases(&s.frame_path().unwrap(), 4000).unwrap();
            let relative = phases[1] - phases[0];
            worst = worst.max((relative - op_geometric_phase(chi1, xi2)).abs());
        }
    }
    assert!(worst < 1e-6, "worst deviation {worst}");
}

#[test]
fn sweep_rows_do_not_depend_on_grid_order() {
    let k = 2.0 * PI * 20e6;
    let schedules: Vec<Schedule<f64>> = vec![
        op_schedule(PI / 3.0, PI, 0.0, k).unwrap(),
        ossp_schedule(PI / 4.0, 0.0, k).unwrap(),
    ];
    let drives: Vec<_> = schedules.iter().map(|s| schedule_drive(s).unwrap()).collect();
    let subjects: Vec<SweepSubject<'_, f64>> = schedules
        .iter()
        .zip(&drives)
        .map(|(s, d)| {
            let b = holonome_core::evolve::computational_basis(&d.path).unwrap();
            SweepSubject {
                name: String::new(),
                hamiltonian: d,
                tau: s.duration(),
                logical: [b[0].clone(), b[1].clone()],
            }
        })
        .collect();
    let unit = 2.0 * PI * 20e3;
    let grid: Vec<LindbladParams<f64>> = [0.0, 3.0, 7.0].iter().map(|n| LindbladParams::uniform(n * unit)).collect();
    let reversed: Vec<LindbladParams<f64>> = grid.iter().rev().copied().collect();
    let a = kappa_sweep(&subjects, &s_gate(), &grid, 2000).unwrap();
    let b = kappa_sweep(&subjects, &s_gate(), &reversed, 2000).unwrap();
    for (ra, rb) in a.iter().zip(b.iter().rev()) {
        assert_eq!(ra.kappa_z.to_bits(), rb.kappa_z.to_bits());
        for (x, y) in ra.reports.iter().zip(&rb.reports) {
            assert_eq!(x.fidelity.to_bits(), y.fidelity.to_bits());
        }
    }
}
