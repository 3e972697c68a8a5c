//! Exact computations around Newton polygons, p-divisible groups and
//! abelian varieties in characteristic p.
//!
//! Everything here is exact: rationals and integers are arbitrary precision,
//! p-adic quantities live in explicit truncated rings and every truncation is
//! reported. The modules are
//!
//! * [`np`]: Newton polygons, their duality and order, the lattice regions
//!   whose point counts give strata dimensions, and p-adic polygons of
//!   polynomials;
//! * [`poset`]: the ranked poset of polygons with fixed endpoints;
//! * [`weil`]: q-Weil numbers and their Honda–Tate invariants;
//! * [`field`], [`witt`], [`cartier`], [`series`]: finite fields, truncated
//!   Witt vectors, the local Cartier ring and the Artin–Hasse series;
//! * [`dieudonne`]: Dieudonné module presentations, a-numbers, duality and
//!   slope computations;
//! * [`semimod`]: semimodules over the semigroup generated by m and n;
//! * [`cli`]: the `isocrystal-lab` command line.

pub mod arith;
pub mod cartier;
pub mod cli;
pub mod dieudonne;
pub mod error;
pub mod field;
pub mod hull;
pub mod linalg;
pub mod np;
pub mod poly;
pub mod poset;
pub mod semimod;
pub mod series;
pub mod weil;
pub mod witt;

pub use error::{Error, ErrorKind, Result};
