mod common;

use common::{reference_value, REFERENCE_2X2, REFERENCE_COLUMNS};
use hubbard_swd::cli::report::Format;
use hubbard_swd::cli::{basis, BasisArgs, OutputArgs};
use hubbard_swd::symrep::{exact_squared_coefficients, orbit_labels, projector_image, OrbitSpace};
use hubbard_swd::Exact;

fn word_index(space: &OrbitSpace, literal: &str) -> usize {
    let letters: Vec<u8> = literal.chars().map(|c| if c == 'u' { 0 } else { 1 }).collect();
    space.index_of(space.word_from_letters(&letters)).unwrap()
}

/// Squared coefficients agree exactly; signs agree up to one flip per column.
#[test]
fn two_up_two_down_basis_is_exact() {
    let space = OrbitSpace::new((2, 2));
    let labels = orbit_labels(&space);
    assert_eq!(labels.len(), 6);
    for (col, tableau) in REFERENCE_COLUMNS.iter().enumerate() {
        let label = labels.iter().find(|l| l.tableau.to_string() == *tableau).expect("tableau present");
        let image = projector_image::<Exact>(label, &space).unwrap();
        let squares = exact_squared_coefficients(&image);
        let mut flip: Option<bool> = None;
        for (row, entries) in REFERENCE_2X2.iter() {
            let (sign, p, q) = entries[col];
            let i = word_index(&space, row);
            assert_eq!(squares[i], Exact::new(p as i128, q as i128), "{row} on {tableau}");
            let ours = image[i].numer().signum() as i8;
            if sign != 0 {
                let f = ours != sign;
                assert_eq!(*flip.get_or_insert(f), f, "column {tableau} needs more than one sign flip");
            } else {
                assert_eq!(ours, 0);
            }
        }
    }
}

#[test]
fn rendered_basis_matches_to_twelve_digits() {
    let args = BasisArgs { n: 4, mu: [2, 2, 0, 0], output: OutputArgs { format: Format::Json, out: None } };
    let report = basis(&args).unwrap();
    for (col, tableau) in REFERENCE_COLUMNS.iter().enumerate() {
        let j = report.tableaux.iter().position(|t| t == tableau).unwrap();
        let mut dev_same: f64 = 0.0;
        let mut dev_flip: f64 = 0.0;
        for (row, entries) in REFERENCE_2X2.iter() {
            let i = report.rows.iter().position(|r| r == row).unwrap();
            let want = reference_value(entries[col]);
            dev_same = dev_same.max((report.coefficients[i][j] - want).abs());
            dev_flip = dev_flip.max((report.coefficients[i][j] + want).abs());
        }
        assert!(dev_same.min(dev_flip) <= 1e-12, "{tableau}: {dev_same} / {dev_flip}");
    }
}

#[test]
fn small_bases() {
    let args = |n, mu| BasisArgs { n, mu, output: OutputArgs { format: Format::Json, out: None } };
    let b = basis(&args(2, [1, 1, 0, 0])).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(b.rows, ["ud", "du"]);
    assert!((b.coefficients[0][0] - h).abs() < 1e-15 && (b.coefficients[1][0] - h).abs() < 1e-15);
    assert!((b.coefficients[0][1] - h).abs() < 1e-15 && (b.coefficients[1][1] + h).abs() < 1e-15);

    let b = basis(&args(4, [3, 1, 0, 0])).unwrap();
    assert_eq!(b.coefficients.len(), 4);
    for i in 0..4 {
        for j in 0..4 {
            let dot: f64 = (0..4).map(|r| b.coefficients[r][i] * b.coefficients[r][j]).sum();
            assert!((dot - (i == j) as u8 as f64).abs() < 1e-14);
        }
    }

    // Doublons and holes use the same machinery.
    let b = basis(&args(3, [0, 0, 1, 2])).unwrap();
    assert_eq!(b.rows, ["002", "020", "200"]);
}
