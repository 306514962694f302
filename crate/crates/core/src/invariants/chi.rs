//! Euler characteristic of the Milnor fiber of `s_1` on `s_2 = ... = s_k = 0`,
//! summed over compatible unbounded faces of the supports.

use rayon::prelude::*;

use super::series::{eval_pair_function, PairFunction};
use crate::error::{precondition, MixvolError, Result};
use crate::explain::{Explained, Term};
use crate::linalg::{self, LatticeFrame, Vector};
use crate::mixed::{pairs_into_frame, PolyhedronPair};
use crate::polyhedron::{self, Polyhedron};
use crate::rational::{factorial, Rational};

/// `supports[i]` is `Δ_i` (the first one the orthant) and `sections[i]` the
/// Newton polyhedron `N_i ⊆ Δ_i` of `s_i`.
pub fn chi_compatible_faces(supports: &[Polyhedron], sections: &[Polyhedron]) -> Result<Rational> {
    Ok(chi_compatible_faces_explained(supports, sections)?.value)
}

pub fn chi_compatible_faces_explained(supports: &[Polyhedron], sections: &[Polyhedron]) -> Result<Explained> {
    if supports.is_empty() || supports.len() != sections.len() {
        return precondition("need one section polyhedron per support");
    }
    let n = supports[0].dim();
    if supports[0] != Polyhedron::orthant(n)? {
        return precondition("the first support must be the positive orthant");
    }
    for p in supports.iter().chain(sections) {
        if p.dim() != n {
            return Err(MixvolError::DimensionMismatch { expected: n, found: p.dim() });
        }
        if p.is_empty() {
            return Err(MixvolError::Empty);
        }
        if p.rays() != supports[0].rays() {
            return Err(MixvolError::SupportConeMismatch);
        }
    }
    for (i, (d, s)) in supports.iter().zip(sections).enumerate() {
        if !s.vertices().iter().all(|v| d.contains(v)) {
            return Err(MixvolError::Precondition(format!("section {} is not contained in its support", i + 1)));
        }
    }
    let refs: Vec<&Polyhedron> = supports.iter().collect();
    let total = polyhedron::minkowski_sum_all(&refs, n)?;
    let faces: Vec<polyhedron::Face> = polyhedron::faces(&total).into_iter().filter(|f| !f.bounded).collect();
    let k = supports.len();
    let f = PairFunction::product_over_one_plus(k);
    let mut terms: Vec<(Vector, Term)> = faces
        .into_par_iter()
        .map(|face| {
            let gamma = &face.normal;
            let mut pairs = Vec::with_capacity(k);
            let mut dirs: Vec<Vector> = Vec::new();
            for (i, (d, s)) in supports.iter().zip(sections).enumerate() {
                let a = d.support_face(gamma)?;
                if s.support_value(gamma)? != d.support_value(gamma)? {
                    return Err(MixvolError::Precondition(format!("section {} misses the face of its support with normal {gamma:?}", i + 1)));
                }
                let b = s.support_face(gamma)?;
                let base = &a.vertices()[0];
                dirs.extend(a.vertices()[1..].iter().map(|v| linalg::sub(v, base)));
                dirs.extend(a.rays().iter().map(|r| linalg::ints(r)));
                pairs.push(PolyhedronPair::new(a, b)?);
            }
            let frame = LatticeFrame::spanned_by(&dirs, n)?;
            let q = frame.rank();
            let mapped = pairs_into_frame(&pairs, &frame)?;
            let v = factorial(q) * eval_pair_function(&f, &mapped, q)?;
            Ok((gamma.clone(), Term::new(format!("face normal {}", vector_label(gamma)), v)))
        })
        .collect::<Result<_>>()?;
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let terms: Vec<Term> = terms.into_iter().map(|(_, t)| t).collect();
    let value = terms.iter().map(|t| &t.value).sum();
    Ok(Explained::new(value, terms))
}

fn vector_label(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
