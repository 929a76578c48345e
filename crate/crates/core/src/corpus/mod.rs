//! Ground truth: brute-force references, enumerators, random generators and
//! the library of known constructions.

pub mod constructions;
pub mod entries;
pub mod enumerate;
pub mod random;
pub mod reference;
