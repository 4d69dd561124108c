//! Small stabilizer codes simulated exactly.
//!
//! The crate covers the five-qubit perfect code, the three-qubit repetition
//! code and the nine-qubit Shor code: Pauli algebra in symplectic form,
//! dense state vectors, encoders, syndrome tables derived from commutation,
//! the correct-and-retrieve pipeline, Venn diagrams of the syndromes and a
//! depolarizing-channel Monte-Carlo harness.

pub mod codes;
pub mod decoder;
pub mod error;
pub mod montecarlo;
pub mod pauli;
pub mod statevec;
pub mod venn;

pub use codes::{quantum_hamming_bound, BoundRelation, CodeId, HammingBound, StabilizerCode};
pub use decoder::{
    predicted_syndrome, qubit_fidelity, syndrome, verify_against_printed, Decoder, Syndrome,
    SyndromeTable, VerificationReport,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use pauli::{Pauli, PauliString, Phase};
pub use statevec::StateVector;
pub use venn::{layout, region_listing, render_ascii, render_svg, VennLayout};
