//! Invariants of singularities computed from Newton polyhedra in `R^n_+`.
//!
//! Polyhedra passed here are Newton polyhedra: their recession cone is the
//! positive orthant. Most formulas pair a polyhedron `Δ` with the orthant,
//! which needs `R^n_+ \ Δ` to be bounded.

mod chi;
mod determinantal;
mod milnor;
mod series;

use crate::error::{MixvolError, Result};
use crate::mixed::PolyhedronPair;
use crate::polyhedron::{self, Polyhedron};
use crate::rational::Rational;

pub use chi::{chi_compatible_faces, chi_compatible_faces_explained};
pub use determinantal::{
    collection_multiplicity, collection_multiplicity_explained, det_multiplicity, det_multiplicity_explained,
    determinantal_encoding, euler_char_det, euler_char_det_explained, radial_index_det, resultantal_multiplicity,
    resultantal_multiplicity_explained,
};
pub use milnor::{gz_index, gz_index_explained, milnor_number, milnor_number_explained, mu, res_eg, ResEgMode};
pub use series::{eval_pair_function, eval_pair_terms, PairFunction, PairPolynomial, SeriesTerm};

fn check_newton(p: &Polyhedron, n: usize) -> Result<()> {
    if p.dim() != n {
        return Err(MixvolError::DimensionMismatch { expected: n, found: p.dim() });
    }
    if p.is_empty() {
        return Err(MixvolError::Empty);
    }
    if p.rays() != Polyhedron::orthant(n)?.rays() {
        return Err(MixvolError::Precondition("the recession cone of a Newton polyhedron must be the positive orthant".into()));
    }
    Ok(())
}

/// `(R^n_+, Δ)`.
pub fn orthant_pair(p: &Polyhedron) -> Result<PolyhedronPair> {
    check_newton(p, p.dim())?;
    PolyhedronPair::new(Polyhedron::orthant(p.dim())?, p.clone())
}

/// Whether the polyhedron meets every coordinate axis.
pub fn meets_all_axes(p: &Polyhedron) -> Result<bool> {
    for i in 0..p.dim() {
        if polyhedron::restrict_to_axes(p, &[i])?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_axes(p: &Polyhedron, what: &str) -> Result<()> {
    check_newton(p, p.dim())?;
    if !meets_all_axes(p)? {
        return Err(MixvolError::Precondition(format!("{what} misses a coordinate axis")));
    }
    Ok(())
}

/// Nonempty subsets of `{0, ..., n-1}` in increasing mask order.
fn axis_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Subsets of `{0, ..., k-1}` of the given size, lexicographically.
fn subsets_of_size(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, size, &mut Vec::new(), &mut out);
    out
}

fn sign(exp: i64) -> Rational {
    if exp.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `R^n_+ minus the open unit simplex`, paired with the orthant.
fn linear_pair(n: usize) -> Result<PolyhedronPair> {
    orthant_pair(&Polyhedron::simplex_complement(n, 1)?)
}
