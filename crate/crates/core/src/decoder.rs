//! Syndrome extraction, derived lookup tables and the decode pipeline.
//!
//! A syndrome entry `S_i` is the expectation of generator `H_i` on the
//! received state. Because every legal received state is a Pauli-displaced
//! codeword, each entry is exactly +1 or -1; anything else is reported as
//! [`Error::NotPauliEigenstate`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::codes::{CodeId, StabilizerCode};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::statevec::StateVector;

/// Raw expectations must lie this close to +1 or -1.
pub const SNAP_TOLERANCE: f64 = 1e-9;

/// A decode succeeds when the recovered qubit has at least `1 - FIDELITY_TOLERANCE`
/// fidelity with the input.
pub const FIDELITY_TOLERANCE: f64 = 1e-9;

/// Ordered ±1 outcomes, one per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome(Vec<i8>);

impl Syndrome {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameters(format!(
                "syndrome entries must be +1 or -1, got {signs:?}"
            )));
        }
        Ok(Syndrome(signs))
    }

    pub fn trivial(len: usize) -> Self {
        Syndrome(vec![1; len])
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&s| s == 1)
    }

    /// 1-based generator indices with outcome -1.
    pub fn flipped(&self) -> Vec<usize> {
        (1..=self.0.len())
            .filter(|&i| self.0[i - 1] == -1)
            .collect()
    }

    /// Bit `i-1` is set iff `S_i = -1`.
    pub fn mask(&self) -> u32 {
        self.flipped().iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn from_mask(mask: u32, len: usize) -> Self {
        Syndrome(
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }
}

/// Lexicographic over entries with +1 before -1.
impl Ord for Syndrome {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |s: &Syndrome| s.0.iter().map(|&v| v == -1).collect::<Vec<_>>();
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Syndrome {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses a run of `1` / `-1` tokens. Separators (spaces, commas, brackets)
/// are ignored, and so is whitespace between a minus sign and its `1`, so
/// `"-1-1 1 1"`, `"1,-1"` and `"[1, -1]"` all parse.
impl FromStr for Syndrome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("cannot parse syndrome {s:?}"));
        let mut signs = Vec::new();
        let mut negative = false;
        for c in s.chars() {
            match c {
                '-' if !negative => negative = true,
                '+' if !negative => {}
                '1' => {
                    signs.push(if negative { -1 } else { 1 });
                    negative = false;
                }
                c if c.is_whitespace() || matches!(c, ',' | '[' | ']' | '(' | ')') => {}
                _ => return Err(bad()),
            }
        }
        if negative {
            return Err(bad());
        }
        Syndrome::new(signs).map_err(|_| bad())
    }
}

impl Serialize for Syndrome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for v in &self.0 {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// Measures every generator on `state` and snaps the results to ±1.
pub fn syndrome(code: &StabilizerCode, state: &StateVector) -> Result<Syndrome> {
    let mut signs = Vec::with_capacity(code.stabilizers().len());
    for (i, h) in code.stabilizers().iter().enumerate() {
        let value = state.expectation(h)?;
        let sign = if (value - 1.0).abs() <= SNAP_TOLERANCE {
            1
        } else if (value + 1.0).abs() <= SNAP_TOLERANCE {
            -1
        } else {
            return Err(Error::NotPauliEigenstate {
                stabilizer: i + 1,
                value,
            });
        };
        signs.push(sign);
    }
    Ok(Syndrome(signs))
}

/// Syndrome from commutation alone: `S_i = -1` iff `error` anticommutes with `H_i`.
pub fn predicted_syndrome(code: &StabilizerCode, error: &PauliString) -> Result<Syndrome> {
    code.stabilizers()
        .iter()
        .map(|h| Ok(if error.commutes(h)? { 1 } else { -1 }))
        .collect::<Result<Vec<i8>>>()
        .map(Syndrome)
}

/// `I` followed by every `X_i`, `Y_i`, `Z_i`.
pub fn single_qubit_errors(n: usize) -> Vec<PauliString> {
    let mut out = vec![PauliString::identity(n).expect("n >= 1")];
    for letter in [Pauli::X, Pauli::Y, Pauli::Z] {
        for site in 1..=n {
            out.push(PauliString::single(n, letter, site).expect("site in range"));
        }
    }
    out
}

/// Whether `p` lies in the group generated by the code's stabilizers,
/// ignoring phase. Decided by Gaussian elimination over GF(2) on the
/// symplectic vectors.
pub fn in_stabilizer_group(code: &StabilizerCode, p: &PauliString) -> Result<bool> {
    if p.num_qubits() != code.n() {
        return Err(Error::LengthMismatch {
            left: p.num_qubits(),
            right: code.n(),
        });
    }
    let mut basis: Vec<u64> = Vec::new();
    for h in code.stabilizers() {
        let mut v = symplectic_vector(h);
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let mut v = symplectic_vector(p);
    for b in &basis {
        v = v.min(v ^ b);
    }
    Ok(v == 0)
}

fn symplectic_vector(p: &PauliString) -> u64 {
    let n = p.num_qubits();
    let mut v = 0u64;
    for q in 0..n {
        if p.x_bits()[q] {
            v |= 1 << q;
        }
        if p.z_bits()[q] {
            v |= 1 << (n + q);
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassMember {
    pub error: PauliString,
    pub label: String,
    /// `representative · error` is in the stabilizer group, so correcting
    /// this error with the representative restores the codeword.
    pub sound: bool,
}

/// All single-qubit errors sharing one syndrome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrectionClass {
    pub syndrome: Syndrome,
    pub representative: PauliString,
    /// Sorted by [`PauliString::sort_key`].
    pub members: Vec<ClassMember>,
}

impl CorrectionClass {
    /// Member labels with the representative first, then the other sound
    /// members.
    pub fn sound_labels(&self) -> Vec<String> {
        let mut out = vec![self.representative.label()];
        out.extend(
            self.members
                .iter()
                .filter(|m| m.sound && m.error != self.representative)
                .map(|m| m.label.clone()),
        );
        out
    }

    pub fn unsound_labels(&self) -> Vec<String> {
        self.members
            .iter()
            .filter(|m| !m.sound)
            .map(|m| m.label.clone())
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.members.iter().filter(|m| m.sound).count() > 1
    }
}

/// Syndrome → correction class, ordered by syndrome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeTable {
    code: CodeId,
    stabilizer_count: usize,
    classes: BTreeMap<Syndrome, CorrectionClass>,
}

impl SyndromeTable {
    /// Derives the table from commutation over `{I} ∪ {X_i, Y_i, Z_i}`.
    ///
    /// The representative of a class is the code's preferred representative
    /// if one is a member, otherwise the smallest member by
    /// [`PauliString::sort_key`]. A member is sound when its product with the
    /// representative lies in the stabilizer group.
    pub fn build(code: &StabilizerCode) -> Result<Self> {
        let mut groups: BTreeMap<Syndrome, Vec<PauliString>> = BTreeMap::new();
        for e in single_qubit_errors(code.n()) {
            groups
                .entry(predicted_syndrome(code, &e)?)
                .or_default()
                .push(e);
        }
        let mut classes = BTreeMap::new();
        for (syn, mut errors) in groups {
            errors.sort_by_key(|e| e.sort_key());
            let representative = errors
                .iter()
                .find(|e| code.preferred_representatives().contains(e))
                .unwrap_or(&errors[0])
                .clone();
            let members = errors
                .into_iter()
                .map(|e| {
                    let sound = in_stabilizer_group(code, &representative.multiply(&e)?)?;
                    Ok(ClassMember {
                        label: e.label(),
                        error: e,
                        sound,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            classes.insert(
                syn.clone(),
                CorrectionClass {
                    syndrome: syn,
                    representative,
                    members,
                },
            );
        }
        Ok(SyndromeTable {
            code: code.id(),
            stabilizer_count: code.stabilizers().len(),
            classes,
        })
    }

    /// Assembles a table from explicit classes.
    pub fn from_classes(
        code: CodeId,
        stabilizer_count: usize,
        classes: impl IntoIterator<Item = CorrectionClass>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for class in classes {
            if class.syndrome.len() != stabilizer_count {
                return Err(Error::LengthMismatch {
                    left: class.syndrome.len(),
                    right: stabilizer_count,
                });
            }
            map.insert(class.syndrome.clone(), class);
        }
        Ok(SyndromeTable {
            code,
            stabilizer_count,
            classes: map,
        })
    }

    pub fn code(&self) -> CodeId {
        self.code
    }

    pub fn stabilizer_count(&self) -> usize {
        self.stabilizer_count
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, syndrome: &Syndrome) -> Option<&CorrectionClass> {
        self.classes.get(syndrome)
    }

    /// Classes in syndrome order.
    pub fn classes(&self) -> impl Iterator<Item = &CorrectionClass> {
        self.classes.values()
    }

    /// Class containing `error` as a member, if any.
    pub fn class_of(&self, error: &PauliString) -> Option<&CorrectionClass> {
        self.classes
            .values()
            .find(|c| c.members.iter().any(|m| &m.error == error))
    }

    /// Errors in sound position: the representative or a sound member.
    pub fn sound_errors(&self) -> Vec<PauliString> {
        self.classes()
            .flat_map(|c| {
                c.members
                    .iter()
                    .filter(|m| m.sound)
                    .map(|m| m.error.clone())
            })
            .collect()
    }
}

impl Serialize for SyndromeTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            code: CodeId,
            stabilizer_count: usize,
            classes: Vec<&'a CorrectionClass>,
        }
        View {
            code: self.code,
            stabilizer_count: self.stabilizer_count,
            classes: self.classes.values().collect(),
        }
        .serialize(serializer)
    }
}

/// One printed table row: the error labels and the syndrome as printed.
#[derive(Debug, Clone, Copy)]
pub struct PrintedRow {
    pub errors: &'static [&'static str],
    pub printed: &'static str,
    pub note: Option<&'static str>,
}

const fn row(errors: &'static [&'static str], printed: &'static str) -> PrintedRow {
    PrintedRow {
        errors,
        printed,
        note: None,
    }
}

/// Correctable error patterns of the five-qubit code, verbatim including
/// spacing and the Y2 row.
pub const PRINTED_FIVE: &[PrintedRow] = &[
    row(&["X1"], "1 1 1 -1"),
    row(&["X2"], "-1 1 1 1"),
    row(&["X3"], "-1-1 1 1"),
    row(&["X4"], "1-1-1 1"),
    PrintedRow {
        errors: &["X5"],
        printed: "11- 1 -1",
        note: Some("X5 printed as \"11- 1 -1\" with a detached minus sign; read as 1 1 -1 -1"),
    },
    row(&["Z1"], "-1 1 -1 1"),
    row(&["Z2"], "1 -11 -1"),
    row(&["Z3"], "1 1-1 1"),
    row(&["Z4"], "-1 11 -1"),
    row(&["Z5"], "1 -1 1 1"),
    row(&["Y1"], "-1 1-1-1"),
    row(&["Y2"], "-1 -1 1 1"),
    row(&["Y3"], "-1-1-1 1"),
    row(&["Y4"], "-1-1-1-1"),
    row(&["Y5"], "1-1-1-1"),
];

pub const PRINTED_REP3: &[PrintedRow] = &[
    row(&["X1"], "-1 1"),
    row(&["X2"], "-1-1"),
    row(&["X3"], "1-1"),
    row(&["I"], "1 1"),
];

pub const PRINTED_SHOR9: &[PrintedRow] = &[
    row(&["X1"], "-1 1 1 1 1 1 1 1"),
    row(&["X2"], "-1 -1 1 1 1 1 1 1"),
    row(&["X3"], "1 -1 1 1 1 1 1 1"),
    row(&["X4"], "1 1 -1 1 1 1 1 1"),
    row(&["X5"], "1 1 -1 -1 1 1 1 1"),
    row(&["X6"], "1 1 1 -1 1 1 1 1"),
    row(&["X7"], "1 1 1 1 -1 1 1 1"),
    row(&["X8"], "1 1 1 1 -1 -1 1 1"),
    row(&["X9"], "1 1 1 1 1 -1 1 1"),
    row(&["Z1", "Z2", "Z3"], "1 1 1 1 1 1 -1 1"),
    row(&["Z4", "Z5", "Z6"], "1 1 1 1 1 1 -1 -1"),
    row(&["Z7", "Z8", "Z9"], "1 1 1 1 1 1 1 -1"),
    row(&["I"], "1 1 1 1 1 1 1 1"),
];

pub fn printed_table(code: CodeId) -> &'static [PrintedRow] {
    match code {
        CodeId::Five => PRINTED_FIVE,
        CodeId::Rep3 => PRINTED_REP3,
        CodeId::Shor9 => PRINTED_SHOR9,
    }
}

/// Discrepancies the published tables are known to contain.
pub const KNOWN_ERRATA: &[(CodeId, &str)] = &[(CodeId::Five, "Y2")];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub error: String,
    pub printed: Syndrome,
    pub derived: Syndrome,
    pub known_erratum: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub code: CodeId,
    pub rows_checked: usize,
    pub errors_checked: usize,
    pub discrepancies: Vec<Discrepancy>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// True when every discrepancy is a whitelisted erratum.
    pub fn only_known_errata(&self) -> bool {
        self.discrepancies.iter().all(|d| d.known_erratum)
    }
}

/// Compares the printed table for `code` against [`predicted_syndrome`].
pub fn verify_against_printed(code: &StabilizerCode) -> Result<VerificationReport> {
    let rows = printed_table(code.id());
    let mut discrepancies = Vec::new();
    let mut notes = Vec::new();
    let mut errors_checked = 0;
    for r in rows {
        let printed: Syndrome = r.printed.parse()?;
        if let Some(note) = r.note {
            notes.push(note.to_string());
        }
        for label in r.errors {
            let error = PauliString::parse(label, code.n())?;
            let derived = predicted_syndrome(code, &error)?;
            errors_checked += 1;
            if derived != printed {
                discrepancies.push(Discrepancy {
                    error: label.to_string(),
                    printed: printed.clone(),
                    derived,
                    known_erratum: KNOWN_ERRATA.contains(&(code.id(), *label)),
                });
            }
        }
    }
    Ok(VerificationReport {
        code: code.id(),
        rows_checked: rows.len(),
        errors_checked,
        discrepancies,
        notes,
    })
}

/// Result of [`Decoder::correct`].
#[derive(Debug, Clone, PartialEq)]
pub struct Correction {
    pub syndrome: Syndrome,
    pub applied: PauliString,
    pub state: StateVector,
}

/// Result of [`Decoder::decode`].
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    pub syndrome: Syndrome,
    pub applied: PauliString,
    pub alpha0: Complex64,
    pub alpha1: Complex64,
}

/// A code together with its derived syndrome table.
#[derive(Debug, Clone)]
pub struct Decoder {
    code: StabilizerCode,
    table: SyndromeTable,
}

impl Decoder {
    pub fn new(code: StabilizerCode) -> Result<Self> {
        let table = SyndromeTable::build(&code)?;
        Ok(Decoder { code, table })
    }

    pub fn for_code(id: CodeId) -> Result<Self> {
        Self::new(id.build())
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn table(&self) -> &SyndromeTable {
        &self.table
    }

    /// Looks up the syndrome of `received` and applies the class
    /// representative. Paulis here are Hermitian, so the inverse of the
    /// identified error is the error itself.
    pub fn correct(&self, received: &StateVector) -> Result<Correction> {
        let syn = syndrome(&self.code, received)?;
        let class = self
            .table
            .get(&syn)
            .ok_or_else(|| Error::UncorrectableSyndrome(syn.to_string()))?;
        let applied = class.representative.clone();
        let state = received.apply_pauli(&applied)?;
        Ok(Correction {
            syndrome: syn,
            applied,
            state,
        })
    }

    /// Logical amplitudes `(<0_L|s>, <1_L|s>)` of a code-space state.
    pub fn extract_logical(&self, corrected: &StateVector) -> Result<(Complex64, Complex64)> {
        let a0 = self.code.logical_zero().inner(corrected)?;
        let a1 = self.code.logical_one().inner(corrected)?;
        let weight = a0.norm_sqr() + a1.norm_sqr();
        if weight < 1.0 - FIDELITY_TOLERANCE {
            return Err(Error::StateOutsideCodeSpace(weight));
        }
        let scale = weight.sqrt().recip();
        Ok((a0 * scale, a1 * scale))
    }

    /// Retrieves the logical qubit by running a circuit on the register
    /// instead of taking overlaps.
    ///
    /// For the five-qubit and repetition codes: project with
    /// `P = |0..0><0..0| + |1..1><1..1|`, append an ancilla, flip it
    /// controlled on qubit 1, flip qubits `1..n` controlled on the ancilla,
    /// then collapse qubits `1..n` onto `|0..0>`. For the Shor code the
    /// encoder is run backwards and qubits `2..9` collapse onto `|0>`.
    pub fn extract_logical_circuit(
        &self,
        corrected: &StateVector,
    ) -> Result<(Complex64, Complex64)> {
        let outside = |e: Error| match e {
            Error::ZeroProbability => Error::StateOutsideCodeSpace(0.0),
            other => other,
        };
        let n = self.code.n();
        let zeros = "0".repeat(n);
        let ones = "1".repeat(n);
        let (a0, a1) = match self.code.id() {
            CodeId::Five | CodeId::Rep3 => {
                let (projected, _) = corrected
                    .project_span(&[zeros.as_str(), ones.as_str()])
                    .map_err(outside)?;
                let with_ancilla = projected.tensor(&StateVector::basis_state("0")?)?;
                let m = n + 1;
                let mut flip_ancilla = PauliString::identity(m)?;
                flip_ancilla = flip_ancilla.multiply(&PauliString::single(m, Pauli::X, m)?)?;
                let mut flip_block = PauliString::identity(m)?;
                for q in 1..=n {
                    flip_block = flip_block.multiply(&PauliString::single(m, Pauli::X, q)?)?;
                }
                let s = with_ancilla
                    .apply_controlled(&[1], &flip_ancilla)?
                    .apply_controlled(&[m], &flip_block)?;
                let a0_label = format!("{zeros}0");
                let a1_label = format!("{zeros}1");
                let (collapsed, _) = s
                    .project_span(&[a0_label.as_str(), a1_label.as_str()])
                    .map_err(outside)?;
                // Undo the codeword amplitudes on |0..0> and |1..1>.
                let c0 = self.code.logical_zero().amplitude(&zeros)?;
                let c1 = self.code.logical_one().amplitude(&ones)?;
                (
                    collapsed.amplitude(&a0_label)? / c0,
                    collapsed.amplitude(&a1_label)? / c1,
                )
            }
            CodeId::Shor9 => {
                let op = |t: &str| PauliString::parse(t, 9);
                let mut s = corrected.clone();
                for (leader, targets) in [(7, "X8X9"), (4, "X5X6"), (1, "X2X3")] {
                    s = s.apply_controlled(&[leader], &op(targets)?)?;
                }
                for q in [1, 4, 7] {
                    s = s.apply_hadamard(q)?;
                }
                s = s.apply_controlled(&[1], &op("X4X7")?)?;
                let (collapsed, _) = s
                    .project_span(&["000000000", "100000000"])
                    .map_err(outside)?;
                (
                    collapsed.amplitude("000000000")?,
                    collapsed.amplitude("100000000")?,
                )
            }
        };
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        Ok((a0 / norm, a1 / norm))
    }

    /// [`Decoder::correct`] followed by [`Decoder::extract_logical`].
    pub fn decode(&self, received: &StateVector) -> Result<DecodeOutcome> {
        let correction = self.correct(received)?;
        let (alpha0, alpha1) = self.extract_logical(&correction.state)?;
        Ok(DecodeOutcome {
            syndrome: correction.syndrome,
            applied: correction.applied,
            alpha0,
            alpha1,
        })
    }
}

/// `|<a|b>|` for single-qubit amplitude pairs.
pub fn qubit_fidelity(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    (a.0.conj() * b.0 + a.1.conj() * b.1).norm().min(1.0)
}
