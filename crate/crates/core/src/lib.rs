//! Exact verification of the comparison between Kaletha's and Tam's χ-data
//! for tame elliptic maximal tori of `GL_n`, together with the DeBacker–Spice
//! sign character.
//!
//! Everything is modeled combinatorially: roots of unity are elements of
//! ℚ/ℤ, residue fields are explicit finite fields, the Galois group of the
//! tame extension is the semidirect product `⟨σ⟩ ⋊ ⟨φ⟩`, and characters of
//! `E^×` are determined by their values on a generator of `μ_E` and on a
//! uniformizer.
//!
//! ```
//! use tamechi::galois::{enumerate_orbits, FieldDatum, OrbitKind};
//!
//! let datum = FieldDatum::new(3, 1, 4, 1, 0).unwrap();
//! let orbits = enumerate_orbits(&datum).unwrap();
//! assert_eq!(orbits.len(), 2);
//! assert!(orbits.iter().any(|o| o.kind == OrbitKind::SymRamified));
//! ```

pub mod arith;
pub mod chars;
pub mod error;
pub mod ffield;
pub mod galois;
pub mod gauss;
pub mod strata;
pub mod verify;

pub use arith::{CyclotomicInt, RootOfUnity, Sign};
pub use error::{Error, Result};
