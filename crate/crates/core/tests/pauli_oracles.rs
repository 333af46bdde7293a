//! The symplectic picture checked against dense matrices and against an
//! explicit, phase-tracking commutator on Pauli strings.

use num_complex::Complex64;
use parity_forge::pauli::{evaluate_sequence, Pauli, PauliString, PauliVector};
use parity_forge::simulator::StateVector;
use proptest::prelude::*;

fn all_strings(n: usize) -> Vec<PauliString> {
    (0..1usize << (2 * n))
        .map(|i| PauliVector::from_index(n, i).unwrap().to_pauli_string())
        .collect()
}

/// Column-major dense matrix, built from the simulator's action on basis
/// states.
fn dense(p: &PauliString) -> Vec<Complex64> {
    let n = p.len();
    let dim = 1 << n;
    let mut m = Vec::with_capacity(dim * dim);
    for b in 0..dim {
        let col = StateVector::basis(n, b).unwrap().apply_pauli(p).unwrap();
        m.extend_from_slice(col.amplitudes());
    }
    m
}

fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for col in 0..dim {
        for k in 0..dim {
            let bk = b[col * dim + k];
            if bk.norm_sqr() == 0.0 {
                continue;
            }
            for row in 0..dim {
                out[col * dim + row] += a[k * dim + row] * bk;
            }
        }
    }
    out
}

#[test]
fn symplectic_form_matches_matrix_commutation() {
    for n in 1..=4 {
        let strings = all_strings(n);
        let dim = 1 << n;
        let mats: Vec<_> = strings.iter().map(dense).collect();
        for (i, p) in strings.iter().enumerate() {
            let vp = PauliVector::from_pauli_string(p).unwrap();
            for (j, q) in strings.iter().enumerate() {
                let vq = PauliVector::from_pauli_string(q).unwrap();
                let pq = matmul(&mats[i], &mats[j], dim);
                let qp = matmul(&mats[j], &mats[i], dim);
                let commute = pq.iter().zip(&qp).all(|(a, b)| (a - b).norm() < 1e-12);
                assert_eq!(!vp.symplectic_product(&vq).unwrap(), commute, "{p} vs {q}");
            }
        }
    }
}

/// `[A, B]` for Pauli strings with phases: `2AB` when they anticommute,
/// otherwise `None`.
fn commutator(a: &PauliString, b: &PauliString) -> Option<PauliString> {
    let ab = a.mul(b).unwrap();
    let ba = b.mul(a).unwrap();
    if ab == ba {
        return None;
    }
    assert_eq!(ab.letters(), ba.letters());
    assert_eq!((ab.phase_quarter() + 2) % 4, ba.phase_quarter());
    Some(ab)
}

/// Nested commutator of `i P_r` operators, dropping real positive factors.
fn nested(seq: &[PauliString]) -> Option<PauliString> {
    let (seed, rest) = seq.split_last().unwrap();
    let mut acc = seed.clone().with_extra_phase(1);
    for u in rest.iter().rev() {
        acc = commutator(&u.clone().with_extra_phase(1), &acc)?;
    }
    Some(acc)
}

fn string(n: usize, letters: &[(usize, Pauli)]) -> PauliString {
    let mut v = vec![Pauli::I; n];
    for &(q, p) in letters {
        v[q - 1] = p;
    }
    PauliString::new(v, 0).unwrap()
}

#[test]
fn parity_conjugation_example() {
    // [z_j, x_j, z^S] with j in S evaluates to x_j + z^{S \ {j}}.
    let n = 4;
    let zs = string(n, &[(1, Pauli::Z), (2, Pauli::Z), (3, Pauli::Z)]);
    for j in 1..=3 {
        let seq = vec![
            string(n, &[(j, Pauli::Z)]),
            string(n, &[(j, Pauli::X)]),
            zs.clone(),
        ];
        let vectors: Vec<_> = seq
            .iter()
            .map(|s| PauliVector::from_pauli_string(s).unwrap())
            .collect();
        let got = evaluate_sequence(&vectors).unwrap();
        let oracle = nested(&seq).expect("nonvanishing");
        assert_eq!(got, PauliVector::from_pauli_string(&oracle).unwrap());
        // The commutator of anti-Hermitian operators is anti-Hermitian.
        assert_eq!(oracle.phase_quarter() % 2, 1);
        assert_eq!(got.x_support(), vec![j]);
        let mut rest: Vec<usize> = vec![1, 2, 3];
        rest.retain(|&q| q != j);
        assert_eq!(got.z_support(), rest);
    }
}

fn arb_sequence(n: usize) -> impl Strategy<Value = Vec<PauliVector>> {
    proptest::collection::vec(
        (1..1usize << (2 * n)).prop_map(move |i| PauliVector::from_index(n, i).unwrap()),
        1..8,
    )
}

proptest! {
    #[test]
    fn fold_agrees_with_phase_tracking_oracle(seq in arb_sequence(4)) {
        let strings: Vec<_> = seq.iter().map(|v| v.to_pauli_string()).collect();
        let got = evaluate_sequence(&seq).unwrap();
        match nested(&strings) {
            None => prop_assert!(got.is_zero()),
            Some(s) => {
                prop_assert_eq!(got, PauliVector::from_pauli_string(&s).unwrap());
                prop_assert_eq!(s.phase_quarter() % 2, 1);
            }
        }
    }
}
