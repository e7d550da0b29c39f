//! Exact computation of a HOMFLYPT-type invariant for oriented pseudo
//! links presented as pseudo braid words.
//!
//! The pipeline: parse a word over σᵢ±¹ and the pseudo generators pᵢ
//! ([`braid`]), resolve each pseudo letter into X·gᵢ + Y·gᵢ⁻¹ inside the
//! Iwahori–Hecke algebra and take the Ocneanu trace ([`hecke`]), then
//! normalize by writhe and pseudo degree ([`invariant`]). All arithmetic
//! is exact, over a quadratic extension of the rational function field
//! ℚ(q, z, X, Y) ([`coeff`]). The [`verify`] module re-tests every
//! invariance claim on randomized inputs.

pub mod braid;
pub mod coeff;
pub mod hecke;
pub mod invariant;
pub mod verify;
