mod common;

use common::*;
use hubbard_swd::fock::{Basis, Sector};
use hubbard_swd::hubbard::{
    block_diagonalize, build_hamiltonian, build_pseudospin_ops, build_spin_ops, diagonalize, verify_symmetries,
    Boundary, ModelParams, SectorSelection, Strategy, SymmetrySelection,
};
use hubbard_swd::swd::{sector_ledger, HalfInt};
use hubbard_swd::Operator64;
use proptest::prelude::*;

fn dimer_closed_form(t: f64, u: f64) -> Vec<f64> {
    let r = (u * u + 16.0 * t * t).sqrt();
    sorted(vec![0.0, u, (u - r) / 2.0, (u + r) / 2.0])
}

#[test]
fn dimer_against_brute_force() {
    for t in [0.5, 1.0, 2.0] {
        for u in [0.0, 1.0, 4.0, 10.0] {
            let states = sector_states(2, 1, 1);
            let oracle = matrix(2, &states, &hamiltonian_words(2, t, u, false));
            let brute = reference_eigenvalues(&oracle);
            let want = dimer_closed_form(t, u);
            assert!(max_pairwise(&brute, &want) <= 1e-12, "oracle t={t} u={u}");

            let params = ModelParams::new(2, t, u, Boundary::Open);
            let basis = Basis::sector(2, Sector::new(1, 1)).unwrap();
            let h = build_hamiltonian(&params, &basis).unwrap();
            let got = diagonalize(&h).unwrap().eigenvalues;
            assert!(max_pairwise(&got, &want) <= 1e-12, "library t={t} u={u}: {got:?}");
        }
    }
}

#[test]
fn free_dimer_spectrum() {
    let params = ModelParams::new(2, 1.0, 0.0, Boundary::Open);
    let h = build_hamiltonian(&params, &Basis::sector(2, Sector::new(1, 1)).unwrap()).unwrap();
    let got = diagonalize(&h).unwrap().eigenvalues;
    assert!(max_pairwise(&got, &[-2.0, 0.0, 0.0, 2.0]) <= 1e-14);
}

#[test]
fn periodic_dimer_doubles_the_bond() {
    let open = ModelParams::new(2, 2.0, 3.0, Boundary::Open);
    let periodic = ModelParams::new(2, 1.0, 3.0, Boundary::Periodic);
    let basis = Basis::full(2).unwrap();
    let a = build_hamiltonian(&open, &basis).unwrap();
    let b = build_hamiltonian(&periodic, &basis).unwrap();
    assert_eq!(a.sub(&b).frobenius_norm(), 0.0);
}

#[test]
fn single_site_is_diagonal() {
    let params = ModelParams::new(1, 1.0, 5.0, Boundary::Periodic);
    let basis = Basis::full(1).unwrap();
    let h = build_hamiltonian(&params, &basis).unwrap();
    let d = h.to_dense();
    assert_eq!((0..4).map(|i| d[(i, i)]).collect::<Vec<_>>(), [0.0, 0.0, 0.0, 5.0]);
    assert_eq!(h.nnz(), 1);
}

#[test]
fn hamiltonian_is_symmetric() {
    for n in 1..=5 {
        for boundary in [Boundary::Open, Boundary::Periodic] {
            let h = build_hamiltonian(&ModelParams::new(n, 1.0, 4.0, boundary), &Basis::full(n).unwrap()).unwrap();
            assert_eq!(h.sub(&h.transpose()).frobenius_norm(), 0.0);
        }
    }
}

#[test]
fn commutators_vanish() {
    for n in [2, 3, 4] {
        for boundary in [Boundary::Open, Boundary::Periodic] {
            let report =
                verify_symmetries(&ModelParams::new(n, 1.0, 4.0, boundary), 1e-10, SymmetrySelection::default())
                    .unwrap();
            assert!(report.passed(), "N={n} {boundary}: {:?}", report.checks);
            let skipped = report.checks.iter().filter(|c| c.skipped.is_some()).count();
            let pseudo_ok = n % 2 == 0 || boundary == Boundary::Open;
            assert_eq!(skipped > 0, !pseudo_ok || boundary == Boundary::Open, "N={n} {boundary}");
        }
    }
}

fn commutator_norm(a: &Operator64, b: &Operator64) -> f64 {
    a.commutator(b).frobenius_norm()
}

#[test]
fn generator_algebra() {
    for n in [2, 3, 4] {
        let basis = Basis::full(n).unwrap();
        let s = build_spin_ops(&basis).unwrap();
        let j = build_pseudospin_ops(&basis).unwrap();
        for g in [&s, &j] {
            assert!(g.z.commutator(&g.plus).sub(&g.plus).frobenius_norm() <= 1e-12);
            assert!(g.plus.commutator(&g.minus).sub(&g.z.scale(2.0)).frobenius_norm() <= 1e-12);
            assert!(g.minus.sub(&g.plus.transpose()).frobenius_norm() <= 1e-12);
            assert!(commutator_norm(&g.casimir, &g.plus) <= 1e-12);
        }
        for a in [&s.z, &s.plus, &s.minus, &s.casimir] {
            for b in [&j.z, &j.plus, &j.minus, &j.casimir] {
                assert!(commutator_norm(a, b) <= 1e-12, "[S,J] N={n}");
            }
        }
    }
}

fn spectrum(params: &ModelParams, selection: SectorSelection, strategy: Strategy) -> (Vec<f64>, f64, Vec<usize>) {
    let d = block_diagonalize(params, selection, strategy).unwrap();
    let mut all = Vec::new();
    let mut dims = Vec::new();
    for b in &d.blocks {
        let s = b.operator.diagonalize().unwrap();
        assert!(s.relative_residual() <= 1e-10, "{}: residual {}", b.label, s.relative_residual());
        dims.push(b.operator.dim());
        all.extend(s.eigenvalues);
    }
    (sorted(all), d.off_block_residual, dims)
}

fn naive_spectrum(params: &ModelParams, selection: SectorSelection) -> Vec<f64> {
    let states: Vec<_> = match selection {
        SectorSelection::Electrons(ne) => (0..=ne)
            .filter(|&p| p <= params.n && ne - p <= params.n)
            .flat_map(|p| sector_states(params.n, p, ne - p))
            .collect(),
        SectorSelection::All => all_states(params.n),
        SectorSelection::Single(s) => sector_states(params.n, s.n_plus, s.n_minus),
    };
    let h = matrix(
        params.n,
        &states,
        &hamiltonian_words(params.n, params.t, params.u, params.boundary == Boundary::Periodic),
    );
    reference_eigenvalues(&h)
}

#[test]
fn strategies_preserve_the_spectrum() {
    for n in 2..=6 {
        let periodic = ModelParams::new(n, 1.0, 4.0, Boundary::Periodic);
        let half = SectorSelection::Electrons(n);
        let naive = naive_spectrum(&periodic, half);
        for strategy in [Strategy::Sector, Strategy::SectorMomentum] {
            let (got, off, _) = spectrum(&periodic, half, strategy);
            assert!(max_pairwise(&got, &naive) <= 1e-8, "N={n} {strategy}");
            assert!(off <= 1e-10, "N={n} {strategy}: off-block {off}");
        }
        let swd_params = if n % 2 == 0 { periodic } else { ModelParams::new(n, 1.0, 4.0, Boundary::Open) };
        let naive = naive_spectrum(&swd_params, half);
        let (got, off, _) = spectrum(&swd_params, half, Strategy::SectorSwd);
        assert!(max_pairwise(&got, &naive) <= 1e-8, "N={n} swd");
        assert!(off <= 1e-10, "N={n} swd: off-block {off}");
    }
}

#[test]
fn momentum_blocks_cover_every_sector() {
    for n in 1..=5 {
        let params = ModelParams::new(n, 1.0, 4.0, Boundary::Periodic);
        let (got, off, dims) = spectrum(&params, SectorSelection::All, Strategy::SectorMomentum);
        assert_eq!(dims.iter().sum::<usize>(), 1 << (2 * n));
        assert!(max_pairwise(&got, &naive_spectrum(&params, SectorSelection::All)) <= 1e-8);
        assert!(off <= 1e-12);
    }
}

#[test]
fn momentum_labels_in_sector_two_two() {
    let params = ModelParams::new(4, 1.0, 4.0, Boundary::Periodic);
    let d = block_diagonalize(&params, SectorSelection::Single(Sector::new(2, 2)), Strategy::SectorMomentum).unwrap();
    let zone = hubbard_swd::translation::brillouin_zone(4);
    assert_eq!(d.blocks.iter().map(|b| b.operator.dim()).sum::<usize>(), 36);
    let ks: Vec<i64> = d.blocks.iter().map(|b| b.label.momentum.unwrap()).collect();
    assert!(ks.iter().all(|k| zone.contains(*k)));
    assert_eq!(ks, zone.momenta);
}

#[test]
fn sector_dimensions_at_eight_sites() {
    let params = ModelParams::new(8, 1.0, 4.0, Boundary::Periodic);
    let d = block_diagonalize(&params, SectorSelection::Electrons(8), Strategy::Sector).unwrap();
    let dims: Vec<usize> = d.blocks.iter().map(|b| b.operator.dim()).collect();
    assert_eq!(dims, [1, 64, 784, 3136, 4900, 3136, 784, 64, 1]);
}

#[test]
fn swd_blocks_follow_the_ledger() {
    let params = ModelParams::new(6, 1.0, 4.0, Boundary::Periodic);
    let d = block_diagonalize(&params, SectorSelection::Single(Sector::new(4, 2)), Strategy::SectorSwd).unwrap();
    let ledger = sector_ledger(6, 4, 2, Boundary::Periodic).unwrap();
    // Each (S, J) block holds Σ τ·dim′·dim″ over the ledger entries with those labels.
    let mut expected = std::collections::BTreeMap::<(HalfInt, HalfInt), u128>::new();
    for row in &ledger.rows {
        let pseudo = if row.pseudo.is_empty() {
            vec![(HalfInt::from_twice(0), 1)]
        } else {
            row.pseudo.iter().map(|e| (e.quantum, e.dim)).collect()
        };
        for s in &row.spin {
            for (j, dj) in &pseudo {
                *expected.entry((s.quantum, *j)).or_default() += row.tau * s.dim * dj;
            }
        }
    }
    let got: std::collections::BTreeMap<(HalfInt, HalfInt), u128> =
        d.blocks.iter().map(|b| ((b.label.spin.unwrap(), b.label.pseudo.unwrap()), b.operator.dim() as u128)).collect();
    assert_eq!(got, expected);
    assert!(d.off_block_residual <= 1e-10);
}

#[test]
fn swd_preconditions() {
    let odd = ModelParams::new(3, 1.0, 4.0, Boundary::Periodic);
    assert!(block_diagonalize(&odd, SectorSelection::Electrons(3), Strategy::SectorSwd).is_err());
    let even = ModelParams::new(4, 1.0, 4.0, Boundary::Periodic);
    assert!(block_diagonalize(&even, SectorSelection::Electrons(3), Strategy::SectorSwd).is_err());
    let open = ModelParams::new(4, 1.0, 4.0, Boundary::Open);
    assert!(block_diagonalize(&open, SectorSelection::All, Strategy::SectorMomentum).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn swd_matches_naive_for_random_couplings(t in -2.0f64..2.0, u in -6.0f64..10.0, open in any::<bool>()) {
        let n = if open { 3 } else { 4 };
        let boundary = if open { Boundary::Open } else { Boundary::Periodic };
        let params = ModelParams::new(n, t, u, boundary);
        let naive = naive_spectrum(&params, SectorSelection::Electrons(n));
        let (got, off, _) = spectrum(&params, SectorSelection::Electrons(n), Strategy::SectorSwd);
        let scale = 1.0f64.max(t.abs()).max(u.abs());
        prop_assert!(max_pairwise(&got, &naive) <= 1e-8 * scale);
        prop_assert!(off <= 1e-10 * scale);
    }

    #[test]
    fn momentum_matches_naive_for_random_couplings(t in -2.0f64..2.0, u in -6.0f64..10.0, n in 2usize..=5) {
        let params = ModelParams::new(n, t, u, Boundary::Periodic);
        let sel = SectorSelection::Electrons(n);
        let (got, _, _) = spectrum(&params, sel, Strategy::SectorMomentum);
        prop_assert!(max_pairwise(&got, &naive_spectrum(&params, sel)) <= 1e-8 * (1.0 + t.abs() + u.abs()));
    }
}
