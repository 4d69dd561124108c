//! Dense-matrix oracle shared by the integration tests. Builds explicit
//! 2^n x 2^n matrices from the textbook 2x2 Paulis, independent of the
//! symplectic phase bookkeeping in the library.

#![allow(dead_code)]

use stabq::{Complex64, Pauli, PauliString, Phase};

pub type Matrix = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single(letter: Pauli) -> Matrix {
    let (o, z, i) = (c(1., 0.), c(0., 0.), c(0., 1.));
    match letter {
        Pauli::I => vec![vec![o, z], vec![z, o]],
        Pauli::X => vec![vec![z, o], vec![o, z]],
        Pauli::Y => vec![vec![z, -i], vec![i, z]],
        Pauli::Z => vec![vec![o, z], vec![z, -o]],
    }
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0., 0.); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![c(0., 0.); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0., 0.) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn phase_value(p: Phase) -> Complex64 {
    match p {
        Phase::PlusOne => c(1., 0.),
        Phase::PlusI => c(0., 1.),
        Phase::MinusOne => c(-1., 0.),
        Phase::MinusI => c(0., -1.),
    }
}

pub fn dense(p: &PauliString) -> Matrix {
    let mut m = vec![vec![c(1., 0.)]];
    for letter in p.letters() {
        m = kron(&m, &single(letter));
    }
    let ph = phase_value(p.phase());
    m.iter()
        .map(|r| r.iter().map(|v| v * ph).collect())
        .collect()
}

pub fn apply(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    a.iter()
        .zip(b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() < tol))
}

/// Every Pauli string on `n` qubits with weight at most `max_weight`, phase +1.
pub fn all_paulis(n: usize, max_weight: usize) -> Vec<PauliString> {
    let letters = ['I', 'X', 'Y', 'Z'];
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            let mut s = String::new();
            for _ in 0..n {
                s.push(letters[k % 4]);
                k /= 4;
            }
            PauliString::parse(&s, n).unwrap()
        })
        .filter(|p| p.weight() <= max_weight)
        .collect()
}
