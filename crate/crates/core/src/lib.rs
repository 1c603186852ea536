//! Coloring numbers of graph powers.
//!
//! Exact maximum average degree with the matching fractional and integral
//! orientations, weak `k`-coloring numbers of orderings (evaluation, exact
//! search and heuristics), the weighted orientation of `G^p` bounding
//! `mad(G^p)` through `wcol`, and the harmonious collection order that
//! certifies `col(G^2) <= (2k-1)Δ + 2k + 1`. Brute-force oracles and a
//! calculator for the closed-form bounds sit alongside, so every inequality
//! can be checked on concrete graphs.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the CLI
//! live in the `powercol` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod density;
mod error;
pub mod families;
mod flow;
pub mod graph;
pub mod oracles;
pub mod ordering;
pub mod power;
pub mod report;
pub mod square;

pub use error::{Error, Result};
pub use graph::{Distance, Graph, Vertex, VertexOrdering, VertexSet};

/// Exact rational used for densities, weights and bounds.
pub type Rational = num_rational::Ratio<i128>;

/// Builds a rational from integer numerator and denominator.
///
/// Panics if `den` is zero, like [`num_rational::Ratio::new`].
pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn rational_string(r: &Rational) -> alloc::string::String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}
