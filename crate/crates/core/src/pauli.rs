//! n-qubit Pauli operators in binary symplectic form.
//!
//! A [`PauliString`] stores one `(x, z)` bit pair per qubit plus a global
//! phase `i^k`. Sites map to single-qubit operators as
//!
//! | x | z | operator |
//! |---|---|----------|
//! | 0 | 0 | I        |
//! | 1 | 0 | X        |
//! | 0 | 1 | Z        |
//! | 1 | 1 | Y        |
//!
//! Y is stored with phase +1, so the site operator is `i^(x·z) X^x Z^z`
//! and `Y = iXZ` holds exactly. Multiplying two sites gives
//!
//! | a·b | I  | X   | Y   | Z   |
//! |-----|----|-----|-----|-----|
//! | I   | I  | X   | Y   | Z   |
//! | X   | X  | I   | iZ  | -iY |
//! | Y   | Y  | -iZ | I   | iX  |
//! | Z   | Z  | iY  | -iX | I   |
//!
//! Qubits are numbered from 1; position 1 is the leftmost tensor factor.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Global phase `i^k`, one of the fourth roots of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Phase {
    #[default]
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    /// Exponent `k` in `i^k`.
    pub fn power(self) -> u8 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn from_power(k: u32) -> Phase {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::PlusOne | Phase::MinusOne)
    }

    fn prefix(self) -> &'static str {
        match self {
            Phase::PlusOne => "",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Phase::PlusOne => "+1",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-1",
            Phase::MinusI => "-i",
        };
        f.write_str(s)
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis with a global phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: Vec<bool>,
    z: Vec<bool>,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(PauliString {
            x: vec![false; n],
            z: vec![false; n],
            phase: Phase::PlusOne,
        })
    }

    /// A single `letter` acting on 1-based `site` of an `n`-qubit register.
    pub fn single(n: usize, letter: Pauli, site: usize) -> Result<Self> {
        let mut p = Self::identity(n)?;
        if site == 0 || site > n {
            return Err(Error::IndexOutOfRange { index: site, n });
        }
        let (x, z) = letter.bits();
        p.x[site - 1] = x;
        p.z[site - 1] = z;
        Ok(p)
    }

    pub fn from_bits(x: Vec<bool>, z: Vec<bool>, phase: Phase) -> Result<Self> {
        check_n(x.len())?;
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(PauliString { x, z, phase })
    }

    /// Parses either the dense form (`"XZZXI"`, optionally prefixed by one of
    /// `+`, `-`, `+i`, `-i`) or the indexed form (`"Z1Z2"`, `"X1X2X3"`).
    ///
    /// In the indexed form repeated sites are folded by multiplication, so
    /// `"X1Z1"` is `-iY` on qubit 1. The bare string `"I"` is the identity
    /// for any `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        check_n(n)?;
        let malformed = |reason: &str| Error::MalformedPauli {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        let (phase, body) = split_phase(trimmed);
        if body.is_empty() {
            return Err(malformed("empty operator"));
        }

        let mut out = if body.chars().any(|c| c.is_ascii_digit()) {
            parse_indexed(body, n, text)?
        } else if body == "I" {
            Self::identity(n)?
        } else {
            let letters: Vec<Pauli> = body
                .chars()
                .map(|c| {
                    Pauli::from_char(c).ok_or_else(|| malformed(&format!("bad character {c:?}")))
                })
                .collect::<Result<_>>()?;
            if letters.len() != n {
                return Err(malformed(&format!(
                    "expected {n} letters, found {}",
                    letters.len()
                )));
            }
            let (x, z) = letters.iter().map(|l| l.bits()).unzip();
            PauliString {
                x,
                z,
                phase: Phase::PlusOne,
            }
        };
        out.phase = Phase::from_power(u32::from(out.phase.power() + phase.power()));
        Ok(out)
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &[bool] {
        &self.x
    }

    pub fn z_bits(&self) -> &[bool] {
        &self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// Letter at 1-based `site`.
    pub fn letter(&self, site: usize) -> Pauli {
        Pauli::from_bits(self.x[site - 1], self.z[site - 1])
    }

    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(&x, &z)| Pauli::from_bits(x, z))
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(&x, &z)| x || z).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// 1-based sites where the operator is not the identity.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.num_qubits())
            .filter(|&s| self.x[s - 1] || self.z[s - 1])
            .collect()
    }

    /// Symplectic inner product test: `true` iff `self·other = other·self`.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        let odd = self
            .x
            .iter()
            .zip(&self.z)
            .zip(other.x.iter().zip(&other.z))
            .filter(|((&ax, &az), (&bx, &bz))| (ax && bz) ^ (az && bx))
            .count()
            % 2;
        Ok(odd == 0)
    }

    /// Operator product `self·other` with exact phase tracking.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        let n = self.num_qubits();
        let mut x = Vec::with_capacity(n);
        let mut z = Vec::with_capacity(n);
        let mut k = u32::from(self.phase.power() + other.phase.power());
        for p in 0..n {
            let (ax, az) = (self.x[p] as u32, self.z[p] as u32);
            let (bx, bz) = (other.x[p] as u32, other.z[p] as u32);
            let (cx, cz) = (ax ^ bx, az ^ bz);
            // i^(ax·az) X^ax Z^az · i^(bx·bz) X^bx Z^bz
            //   = i^(ax·az + bx·bz + 2·az·bx - cx·cz) · σ(cx, cz)
            k += ax * az + bx * bz + 2 * az * bx + 3 * cx * cz;
            x.push(cx == 1);
            z.push(cz == 1);
        }
        Ok(PauliString {
            x,
            z,
            phase: Phase::from_power(k),
        })
    }

    /// Indexed label such as `X1`, `Z1Z2` or `I`, with a phase prefix when the
    /// phase is not +1.
    pub fn label(&self) -> String {
        let mut s = String::from(self.phase.prefix());
        if self.is_identity() {
            s.push('I');
            return s;
        }
        for (site, letter) in self.letters().enumerate() {
            if letter != Pauli::I {
                s.push(letter.as_char());
                s.push_str(&(site + 1).to_string());
            }
        }
        s
    }

    /// Ordering used to pick class representatives: by weight, then site by
    /// site with letter order X < Y < Z, then by index.
    pub fn sort_key(&self) -> (usize, Vec<(Pauli, usize)>) {
        let sites = self
            .letters()
            .enumerate()
            .filter(|(_, l)| *l != Pauli::I)
            .map(|(i, l)| (l, i + 1))
            .collect();
        (self.weight(), sites)
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::LengthMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidQubitCount {
            got: 0,
            max: usize::MAX,
        });
    }
    Ok(())
}

fn split_phase(s: &str) -> (Phase, &str) {
    if let Some(rest) = s.strip_prefix("+i") {
        (Phase::PlusI, rest)
    } else if let Some(rest) = s.strip_prefix("-i") {
        (Phase::MinusI, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (Phase::PlusOne, rest)
    } else if let Some(rest) = s.strip_prefix('-') {
        (Phase::MinusOne, rest)
    } else {
        (Phase::PlusOne, s)
    }
}

fn parse_indexed(body: &str, n: usize, original: &str) -> Result<PauliString> {
    let malformed = |reason: String| Error::MalformedPauli {
        text: original.to_string(),
        reason,
    };
    let mut acc = PauliString::identity(n)?;
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        let letter =
            Pauli::from_char(c).ok_or_else(|| malformed(format!("bad character {c:?}")))?;
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        if digits.is_empty() {
            return Err(malformed(format!("letter {c} has no qubit index")));
        }
        let site: usize = digits
            .parse()
            .map_err(|_| malformed(format!("bad index {digits}")))?;
        if site == 0 || site > n {
            return Err(Error::IndexOutOfRange { index: site, n });
        }
        acc = acc.multiply(&PauliString::single(n, letter, site)?)?;
    }
    Ok(acc)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.prefix())?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// Dense form only; the qubit count is the number of letters.
impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (_, body) = split_phase(s.trim());
        if body.chars().any(|c| c.is_ascii_digit()) {
            return Err(Error::MalformedPauli {
                text: s.to_string(),
                reason: "indexed form needs an explicit qubit count".into(),
            });
        }
        PauliString::parse(s, body.chars().count())
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
