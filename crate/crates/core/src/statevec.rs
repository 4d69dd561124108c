//! Dense state vectors for up to [`MAX_QUBITS`] qubits.
//!
//! Amplitude index `i` is the computational basis label read with qubit 1 as
//! the most significant bit, so `|10000>` on five qubits is index 16.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliString;

pub const MAX_QUBITS: usize = 10;

/// Allowed drift of the squared norm after an operation.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Amplitudes smaller than this are omitted from dumps.
pub const DUMP_CUTOFF: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state from a string of `0`/`1` characters.
    pub fn basis_state(bits: &str) -> Result<Self> {
        let n = bits.len();
        check_n(n)?;
        let index = parse_label(bits, n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Builds a state from raw amplitudes; the squared norm must be 1 within 1e-9.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::InvalidParameters(format!(
                "amplitude count {len} is not 2^n with n >= 1"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_n(n)?;
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(StateVector { n, amps })
    }

    /// Single-qubit state `alpha0|0> + alpha1|1>`.
    pub fn qubit(alpha0: Complex64, alpha1: Complex64) -> Result<Self> {
        Self::from_amplitudes(vec![alpha0, alpha1])
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, bits: &str) -> Result<Complex64> {
        Ok(self.amps[parse_label(bits, self.n)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Kronecker product with `self`'s qubits first.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.n + other.n;
        check_n(n)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { n, amps })
    }

    /// Exact action of `p`, including its phase.
    ///
    /// Site operators are `i^(x·z) X^x Z^z`, so on a basis state
    /// `P|b> = i^(k + |x∧z|) (-1)^|z∧b| |b ⊕ x>`.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<StateVector> {
        self.check_len(p.num_qubits())?;
        let (xmask, zmask) = masks(p, self.n);
        let k = u32::from(p.phase().power()) + (xmask & zmask).count_ones();
        let base = I.powu(k % 4);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (zmask & b).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            amps[b ^ xmask] = a * base * sign;
        }
        Ok(StateVector { n: self.n, amps })
    }

    /// Hadamard on 1-based qubit `q`.
    pub fn apply_hadamard(&self, q: usize) -> Result<StateVector> {
        let bit = self.bit_of(q)?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                amps[i] = (a0 + a1) * h;
                amps[i | bit] = (a0 - a1) * h;
            }
        }
        Ok(StateVector { n: self.n, amps })
    }

    /// Applies `targets` to every basis component whose `controls` all read 1.
    pub fn apply_controlled(
        &self,
        controls: &[usize],
        targets: &PauliString,
    ) -> Result<StateVector> {
        self.check_len(targets.num_qubits())?;
        let support = targets.support();
        let mut cmask = 0usize;
        for &c in controls {
            if support.contains(&c) {
                return Err(Error::ControlTargetOverlap(c));
            }
            cmask |= self.bit_of(c)?;
        }
        // Targets never touch control bits, so each branch maps onto itself.
        let flipped = self.apply_pauli(targets)?;
        let mut amps = self.amps.clone();
        for (i, a) in amps.iter_mut().enumerate() {
            if i & cmask == cmask {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        for (i, a) in flipped.amps.iter().enumerate() {
            if i & cmask == cmask {
                amps[i] += a;
            }
        }
        Ok(StateVector { n: self.n, amps })
    }

    /// `Re <self|p|self>` for a Hermitian `p`.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.phase().to_string()));
        }
        let image = self.apply_pauli(p)?;
        Ok(self.inner(&image)?.re)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_len(other.n)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    /// Projects onto the span of the given basis labels and renormalizes.
    /// Returns the projected state and the probability of the projection.
    pub fn project_span(&self, labels: &[&str]) -> Result<(StateVector, f64)> {
        let mut keep = vec![false; self.amps.len()];
        for label in labels {
            let idx = parse_label(label, self.n)?;
            if keep[idx] {
                return Err(Error::InvalidBitString(format!("duplicate label {label}")));
            }
            keep[idx] = true;
        }
        let amps: Vec<Complex64> = self
            .amps
            .iter()
            .zip(&keep)
            .map(|(&a, &k)| if k { a } else { Complex64::new(0.0, 0.0) })
            .collect();
        Self::renormalized(self.n, amps)
    }

    /// Projects onto the `sign` eigenspace of Hermitian `p`, i.e. applies
    /// `(I ± p)/2`, and renormalizes.
    pub fn project_eigenspace(&self, p: &PauliString, sign: i8) -> Result<(StateVector, f64)> {
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.phase().to_string()));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameters(format!("eigenvalue sign {sign}")));
        }
        let image = self.apply_pauli(p)?;
        let s = f64::from(sign);
        let amps = self
            .amps
            .iter()
            .zip(&image.amps)
            .map(|(a, b)| (a + b * s) * 0.5)
            .collect();
        Self::renormalized(self.n, amps)
    }

    fn renormalized(n: usize, mut amps: Vec<Complex64>) -> Result<(StateVector, f64)> {
        let prob: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if prob < 1e-24 {
            return Err(Error::ZeroProbability);
        }
        let scale = prob.sqrt().recip();
        for a in &mut amps {
            *a *= scale;
        }
        Ok((StateVector { n, amps }, prob))
    }

    /// Bit mask for 1-based qubit `q` within an amplitude index.
    fn bit_of(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.n {
            return Err(Error::IndexOutOfRange {
                index: q,
                n: self.n,
            });
        }
        Ok(1 << (self.n - q))
    }

    fn check_len(&self, other: usize) -> Result<()> {
        if self.n != other {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other,
            });
        }
        Ok(())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::InvalidQubitCount {
            got: n,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

fn parse_label(bits: &str, n: usize) -> Result<usize> {
    if bits.len() != n || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidBitString(bits.to_string()));
    }
    Ok(usize::from_str_radix(bits, 2).expect("validated binary string"))
}

fn masks(p: &PauliString, n: usize) -> (usize, usize) {
    let mut xmask = 0;
    let mut zmask = 0;
    for q in 0..n {
        let bit = 1 << (n - 1 - q);
        if p.x_bits()[q] {
            xmask |= bit;
        }
        if p.z_bits()[q] {
            zmask |= bit;
        }
    }
    (xmask, zmask)
}

/// Formats a real number with 9 significant digits, trailing zeros trimmed.
pub fn format_real(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() {
            "0".into()
        } else {
            v.to_string()
        };
    }
    let s = format!("{:.8e}", v);
    let rounded: f64 = s.parse().expect("formatted float");
    if rounded == 0.0 {
        return "0".into();
    }
    let digits = 8 - rounded.abs().log10().floor() as i32;
    let mut out = format!("{:.*}", digits.max(0) as usize, rounded);
    if out.contains('.') {
        out = out.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    out
}

/// `re`, `imi` or `re±imi`, dropping parts below [`DUMP_CUTOFF`].
pub fn format_complex(c: Complex64) -> String {
    let re = if c.re.abs() < DUMP_CUTOFF { 0.0 } else { c.re };
    let im = if c.im.abs() < DUMP_CUTOFF { 0.0 } else { c.im };
    match (re == 0.0, im == 0.0) {
        (_, true) => format_real(re),
        (true, false) => format!("{}i", format_real(im)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{}{}{}i", format_real(re), sign, format_real(im.abs()))
        }
    }
}

/// One line per amplitude above [`DUMP_CUTOFF`]: `bitstring: value`.
impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() >= DUMP_CUTOFF {
                writeln!(f, "{:0width$b}: {}", i, format_complex(*a), width = self.n)?;
            }
        }
        Ok(())
    }
}
