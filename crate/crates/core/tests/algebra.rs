mod common;

use common::*;
use proptest::prelude::*;
use stabq::{Pauli, PauliString, StateVector};

#[test]
fn symplectic_commutation_matches_matrix_commutator() {
    for n in 1..=3 {
        let paulis = all_paulis(n, 2);
        let dense_ops: Vec<Matrix> = paulis.iter().map(dense).collect();
        for (a, ma) in paulis.iter().zip(&dense_ops) {
            for (b, mb) in paulis.iter().zip(&dense_ops) {
                let ab = matmul(ma, mb);
                let ba = matmul(mb, ma);
                assert_eq!(a.commutes(b).unwrap(), close(&ab, &ba, 1e-12), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn multiply_matches_matrix_product() {
    for n in 1..=2 {
        let paulis = all_paulis(n, n);
        for a in &paulis {
            for b in &paulis {
                let c = a.multiply(b).unwrap();
                assert!(
                    close(&dense(&c), &matmul(&dense(a), &dense(b)), 1e-12),
                    "{a}·{b}"
                );
            }
        }
    }
}

#[test]
fn stabilizer_squared_is_identity_dense() {
    let h1 = PauliString::parse("XZZXI", 5).unwrap();
    let sq = h1.multiply(&h1).unwrap();
    let m = dense(&h1);
    let id = dense(&PauliString::identity(5).unwrap());
    assert!(close(&matmul(&m, &m), &id, 1e-12));
    assert!(close(&dense(&sq), &id, 1e-12));
}

#[test]
fn apply_pauli_matches_dense_matrix() {
    for n in 1..=3 {
        let dim = 1usize << n;
        // fixed normalized non-symmetric state
        let raw: Vec<_> = (0..dim)
            .map(|i| c(1.0 + i as f64, 0.5 * i as f64 - 1.0))
            .collect();
        let norm: f64 = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps: Vec<_> = raw.iter().map(|a| a / norm).collect();
        let s = StateVector::from_amplitudes(amps.clone()).unwrap();
        for p in all_paulis(n, n) {
            for phase in ["", "-", "+i", "-i"] {
                let p = PauliString::parse(&format!("{phase}{p}"), n).unwrap();
                let want = apply(&dense(&p), &amps);
                let got = s.apply_pauli(&p).unwrap();
                for (g, w) in got.amplitudes().iter().zip(&want) {
                    assert!((g - w).norm() < 1e-12, "{p}");
                }
            }
        }
    }
}

#[test]
fn indexed_collision_matches_matrix() {
    let p = PauliString::parse("X1Z1", 1).unwrap();
    let want = matmul(&single(Pauli::X), &single(Pauli::Z));
    assert!(close(&dense(&p), &want, 1e-12));
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    (
        proptest::collection::vec(0usize..4, n),
        prop_oneof![Just(""), Just("-"), Just("+i"), Just("-i")],
    )
        .prop_map(move |(letters, phase)| {
            let body: String = letters.iter().map(|&l| ['I', 'X', 'Y', 'Z'][l]).collect();
            PauliString::parse(&format!("{phase}{body}"), n).unwrap()
        })
}

fn state_strategy(n: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map(
        "nonzero",
        |raw| {
            let norm: f64 = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| {
                StateVector::from_amplitudes(raw.iter().map(|&(a, b)| c(a, b) / norm).collect())
                    .unwrap()
            })
        },
    )
}

proptest! {
    #[test]
    fn multiply_is_associative(a in pauli_strategy(4), b in pauli_strategy(4), d in pauli_strategy(4)) {
        let left = a.multiply(&b).unwrap().multiply(&d).unwrap();
        let right = a.multiply(&b.multiply(&d).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn square_has_identity_bits_and_real_phase(a in pauli_strategy(5)) {
        let sq = a.multiply(&a).unwrap();
        prop_assert!(sq.is_identity());
        prop_assert!(sq.phase().is_real());
        if a.phase() == stabq::Phase::PlusOne {
            prop_assert_eq!(sq.phase(), stabq::Phase::PlusOne);
        }
    }

    #[test]
    fn format_parse_round_trip(a in pauli_strategy(6)) {
        let text = a.to_string();
        let back = PauliString::parse(&text, 6).unwrap();
        prop_assert_eq!(&back, &a);
        let label = a.label();
        prop_assert_eq!(PauliString::parse(&label, 6).unwrap(), a);
    }

    #[test]
    fn gates_preserve_norm(s in state_strategy(3), p in pauli_strategy(3), q in 1usize..=3) {
        prop_assert!((s.apply_pauli(&p).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((s.apply_hadamard(q).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        let control = (q % 3) + 1;
        let target = PauliString::single(3, Pauli::X, q).unwrap();
        if control != q {
            let out = s.apply_controlled(&[control], &target).unwrap();
            prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hadamard_is_involution(s in state_strategy(3), q in 1usize..=3) {
        let back = s.apply_hadamard(q).unwrap().apply_hadamard(q).unwrap();
        prop_assert!(back.fidelity(&s).unwrap() >= 1.0 - 1e-12);
        for (a, b) in back.amplitudes().iter().zip(s.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn expectation_is_bounded(s in state_strategy(3), p in pauli_strategy(3)) {
        let p = p.with_phase(stabq::Phase::PlusOne);
        let e = s.expectation(&p).unwrap();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&e));
    }

    #[test]
    fn eigenstates_give_unit_expectation(s in state_strategy(3), p in pauli_strategy(3), sign in prop_oneof![Just(1i8), Just(-1i8)]) {
        let p = p.with_phase(stabq::Phase::PlusOne);
        prop_assume!(!p.is_identity() || sign == 1);
        if let Ok((eig, _)) = s.project_eigenspace(&p, sign) {
            let e = eig.expectation(&p).unwrap();
            prop_assert!((e - f64::from(sign)).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_control_is_plain_pauli(s in state_strategy(3), p in pauli_strategy(3)) {
        prop_assert_eq!(s.apply_controlled(&[], &p).unwrap(), s.apply_pauli(&p).unwrap());
    }
}
