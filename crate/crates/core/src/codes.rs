//! The three small codes: five-qubit perfect code, three-qubit repetition
//! code and the nine-qubit Shor code, with their encoders and the quantum
//! Hamming bound.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::statevec::StateVector;

/// Tolerance on `|alpha0|^2 + |alpha1|^2 = 1` for encoder inputs.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeId {
    Five,
    Rep3,
    Shor9,
}

impl CodeId {
    pub const ALL: [CodeId; 3] = [CodeId::Five, CodeId::Rep3, CodeId::Shor9];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeId::Five => "five",
            CodeId::Rep3 => "rep3",
            CodeId::Shor9 => "shor9",
        }
    }

    pub fn build(self) -> StabilizerCode {
        match self {
            CodeId::Five => StabilizerCode::five_qubit(),
            CodeId::Rep3 => StabilizerCode::rep3(),
            CodeId::Shor9 => StabilizerCode::shor9(),
        }
    }
}

impl fmt::Display for CodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "five" => Ok(CodeId::Five),
            "rep3" => Ok(CodeId::Rep3),
            "shor9" => Ok(CodeId::Shor9),
            other => Err(Error::UnknownCode(other.to_string())),
        }
    }
}

/// A stabilizer code with one logical qubit.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    id: CodeId,
    n: usize,
    k: usize,
    stabilizers: Vec<PauliString>,
    preferred_representatives: Vec<PauliString>,
    logical_zero: StateVector,
    logical_one: StateVector,
}

impl StabilizerCode {
    /// The (5,1) perfect code.
    pub fn five_qubit() -> Self {
        Self::new(CodeId::Five, 5, &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"], &[])
    }

    /// The (3,1) bit-flip repetition code.
    pub fn rep3() -> Self {
        Self::new(CodeId::Rep3, 3, &["Z1Z2", "Z2Z3"], &[])
    }

    /// The (9,1) Shor code. Phase-flip triples are corrected by the middle
    /// qubit of each block.
    pub fn shor9() -> Self {
        Self::new(
            CodeId::Shor9,
            9,
            &[
                "Z1Z2",
                "Z2Z3",
                "Z4Z5",
                "Z5Z6",
                "Z7Z8",
                "Z8Z9",
                "X1X2X3X4X5X6",
                "X4X5X6X7X8X9",
            ],
            &["Z2", "Z5", "Z8"],
        )
    }

    fn new(id: CodeId, n: usize, stabilizers: &[&str], preferred: &[&str]) -> Self {
        let parse = |s: &&str| PauliString::parse(s, n).expect("built-in operator");
        let stabilizers: Vec<PauliString> = stabilizers.iter().map(parse).collect();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let logical_zero = run_encoder(id, n, &stabilizers, one, zero).expect("built-in encoder");
        let logical_one = run_encoder(id, n, &stabilizers, zero, one).expect("built-in encoder");
        StabilizerCode {
            id,
            n,
            k: 1,
            stabilizers,
            preferred_representatives: preferred.iter().map(parse).collect(),
            logical_zero,
            logical_one,
        }
    }

    pub fn id(&self) -> CodeId {
        self.id
    }

    pub fn name(&self) -> &'static str {
        self.id.as_str()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Generators in order; `stabilizers()[0]` is H1.
    pub fn stabilizers(&self) -> &[PauliString] {
        &self.stabilizers
    }

    /// Errors that should represent their syndrome class when present.
    pub fn preferred_representatives(&self) -> &[PauliString] {
        &self.preferred_representatives
    }

    pub fn logical_zero(&self) -> &StateVector {
        &self.logical_zero
    }

    pub fn logical_one(&self) -> &StateVector {
        &self.logical_one
    }

    /// Encodes `alpha0|0> + alpha1|1>` into `alpha0|0_L> + alpha1|1_L>`.
    pub fn encode(&self, alpha0: Complex64, alpha1: Complex64) -> Result<StateVector> {
        run_encoder(self.id, self.n, &self.stabilizers, alpha0, alpha1)
    }
}

fn run_encoder(
    id: CodeId,
    n: usize,
    stabilizers: &[PauliString],
    alpha0: Complex64,
    alpha1: Complex64,
) -> Result<StateVector> {
    let norm = alpha0.norm_sqr() + alpha1.norm_sqr();
    if (norm - 1.0).abs() > INPUT_NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    let info = StateVector::qubit(alpha0, alpha1)?;
    let register = info.tensor(&StateVector::basis_state(&"0".repeat(n - 1))?)?;
    match id {
        CodeId::Five => encode_five(register, stabilizers),
        CodeId::Rep3 => register.apply_controlled(&[1], &PauliString::parse("X2X3", 3)?),
        CodeId::Shor9 => encode_shor(register),
    }
}

/// C1 fans the information qubit out to |00000> / |11111>, then
/// T1 = prod_i (I + H_i) is applied as a product of projectors and the
/// result renormalized.
fn encode_five(register: StateVector, stabilizers: &[PauliString]) -> Result<StateVector> {
    let mut state = register.apply_controlled(&[1], &PauliString::parse("X2X3X4X5", 5)?)?;
    for h in stabilizers {
        state = state.project_eigenspace(h, 1)?.0;
    }
    Ok(state)
}

/// Block leaders 1, 4, 7 are entangled and rotated into the Hadamard basis,
/// then each block gets a repetition encoder.
fn encode_shor(register: StateVector) -> Result<StateVector> {
    let op = |t: &str| PauliString::parse(t, 9);
    let mut s = register.apply_controlled(&[1], &op("X4X7")?)?;
    for q in [1, 4, 7] {
        s = s.apply_hadamard(q)?;
    }
    for (leader, targets) in [(1, "X2X3"), (4, "X5X6"), (7, "X8X9")] {
        s = s.apply_controlled(&[leader], &op(targets)?)?;
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BoundRelation {
    Perfect,
    Satisfied,
    Violated,
}

impl fmt::Display for BoundRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundRelation::Perfect => "PERFECT",
            BoundRelation::Satisfied => "SATISFIED",
            BoundRelation::Violated => "VIOLATED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HammingBound {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub lhs: u128,
    pub rhs: u128,
    pub relation: BoundRelation,
}

impl fmt::Display for HammingBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.relation == BoundRelation::Violated {
            ">"
        } else {
            "≤"
        };
        write!(f, "{} {} {} {}", self.lhs, op, self.rhs, self.relation)
    }
}

/// Checks `sum_{j=0..t} C(n,j) 3^j 2^k <= 2^n` in exact integer arithmetic.
pub fn quantum_hamming_bound(n: u32, k: u32, t: u32) -> Result<HammingBound> {
    if n == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= k < n, got n={n} k={k}"
        )));
    }
    let overflow = || Error::InvalidParameters(format!("bound for n={n} overflows 128 bits"));
    let rhs = 1u128
        .checked_shl(n)
        .filter(|_| n < 128)
        .ok_or_else(overflow)?;
    let mut sum = 0u128;
    let mut binom = 1u128;
    let mut pow3 = 1u128;
    for j in 0..=t.min(n) {
        if j > 0 {
            // C(n, j) = C(n, j-1) * (n - j + 1) / j, exact at every step
            binom = binom
                .checked_mul(u128::from(n - j + 1))
                .ok_or_else(overflow)?
                / u128::from(j);
            pow3 = pow3.checked_mul(3).ok_or_else(overflow)?;
        }
        let term = binom.checked_mul(pow3).ok_or_else(overflow)?;
        sum = sum.checked_add(term).ok_or_else(overflow)?;
    }
    let lhs = sum.checked_mul(1u128 << k).ok_or_else(overflow)?;
    let relation = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Equal => BoundRelation::Perfect,
        std::cmp::Ordering::Less => BoundRelation::Satisfied,
        std::cmp::Ordering::Greater => BoundRelation::Violated,
    };
    Ok(HammingBound {
        n,
        k,
        t,
        lhs,
        rhs,
        relation,
    })
}
