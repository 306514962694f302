//! Convenience of a collection of sections and the stable mixed volume.
//!
//! The collection is given by supports `Δ_i` (all with one recession cone)
//! and section polyhedra `N_i` with the same recession cone. Faces of the
//! total sum `Σ (N_i + Δ_i)` index the cones of the common normal fan.

use crate::error::{precondition, MixvolError, Result};
use crate::linalg::{self, dot, Vector};
use crate::mixed::{mixed_volume_pairs, Method, PolyhedronPair};
use crate::polyhedron::{self, Polyhedron};
use crate::rational::Rational;

/// Which flavour of the condition to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convenience {
    Plain,
    /// The dimension bound is strict away from the zero covector.
    Very,
    /// Like `Plain`, with `Δ_1` a cone and the first section never used away from zero.
    Cone,
}

fn direction_basis(p: &Polyhedron) -> Vec<Vector> {
    let vs = p.vertices();
    let dirs: Vec<Vector> = vs[1..].iter().map(|v| linalg::sub(v, &vs[0])).collect();
    linalg::rref(&dirs, p.dim()).0
}

fn check_inputs(supports: &[Polyhedron], sections: &[Polyhedron]) -> Result<usize> {
    if supports.len() != sections.len() || supports.is_empty() {
        return precondition("need one section polyhedron per support");
    }
    let n = supports[0].dim();
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
    Ok(n)
}

fn check(supports: &[Polyhedron], sections: &[Polyhedron], kind: Convenience) -> Result<bool> {
    let n = check_inputs(supports, sections)?;
    let k = supports.len();
    if kind == Convenience::Cone && supports[0].vertices().len() != 1 {
        return Ok(false);
    }
    let parts: Vec<&Polyhedron> = supports.iter().chain(sections).collect();
    let total = polyhedron::minkowski_sum_all(&parts, n)?;
    if !total.is_full_dimensional() {
        return precondition("convenience needs a full-dimensional total sum");
    }
    let all = polyhedron::faces(&total);
    let zero = vec![Rational::zero(); n];
    for f in all.iter().filter(|f| !f.bounded) {
        let at_zero = f.normal == zero;
        let mut eligible = Vec::new();
        for i in 0..k {
            if kind == Convenience::Cone && !at_zero && i == 0 {
                continue;
            }
            if sections[i].support_value(&f.normal)? == supports[i].support_value(&f.normal)? {
                eligible.push(i);
            }
        }
        let strict = PLAIN_STRICT || (kind == Convenience::Very && !at_zero);
        for g in all.iter().filter(|g| g.bounded && g.generators.is_subset(&f.generators)) {
            let summands: Vec<Vec<Vector>> =
                eligible.iter().map(|&i| sections[i].support_face(&g.normal).map(|s| direction_basis(&s))).collect::<Result<_>>()?;
            if !thin_subfamily(&summands, n, strict) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const PLAIN_STRICT: bool = true;

/// Whether some nonempty subfamily has a sum of dimension below its size.
fn thin_subfamily(summands: &[Vec<Vector>], n: usize, strict: bool) -> bool {
    let m = summands.len();
    (1u32..(1u32 << m)).any(|mask| {
        let rows: Vec<Vector> = (0..m).filter(|i| mask >> i & 1 == 1).flat_map(|i| summands[i].iter().cloned()).collect();
        let r = linalg::rank(&rows, n);
        let size = mask.count_ones() as usize;
        if strict {
            r < size
        } else {
            r <= size
        }
    })
}

pub fn is_convenient(supports: &[Polyhedron], sections: &[Polyhedron]) -> Result<bool> {
    check(supports, sections, Convenience::Plain)
}

pub fn is_very_convenient(supports: &[Polyhedron], sections: &[Polyhedron]) -> Result<bool> {
    check(supports, sections, Convenience::Very)
}

pub fn is_cone_convenient(supports: &[Polyhedron], sections: &[Polyhedron]) -> Result<bool> {
    check(supports, sections, Convenience::Cone)
}

/// Mixed volume of the pairs `(Δ_i, conv(N_i ∪ (Δ_i ∩ {γ0 >= M})))` once it no
/// longer depends on `M`; fails with `NotStable` when it keeps growing.
pub fn stable_mixed_volume_pairs(supports: &[Polyhedron], sections: &[Polyhedron], gamma0: Option<&[i64]>) -> Result<Rational> {
    let n = check_inputs(supports, sections)?;
    if supports.len() != n {
        return Err(MixvolError::DimensionMismatch { expected: n, found: supports.len() });
    }
    let rays = supports[0].rays();
    let g: Vec<i64> = match gamma0 {
        Some(g) => {
            if g.len() != n {
                return Err(MixvolError::DimensionMismatch { expected: n, found: g.len() });
            }
            if rays.iter().any(|r| r.iter().zip(g).map(|(a, b)| a * b).sum::<i64>() <= 0) {
                return precondition("gamma0 must be positive on the recession cone");
            }
            g.to_vec()
        }
        None => polyhedron::positive_functional(rays, n)?,
    };
    let gq = linalg::ints(&g);
    let top = supports
        .iter()
        .chain(sections)
        .flat_map(|p| p.vertices().iter().map(|v| dot(&gq, v)))
        .max()
        .expect("nonempty polyhedra");
    // Edges joining a vertex of N_i to the far slice only settle into their
    // final position relative to the other faces once the level exceeds the
    // coordinates by a factor of about K^n; past that the value is a
    // polynomial of degree <= n in the level, so n + 1 equal samples pin it.
    let k = supports
        .iter()
        .chain(sections)
        .flat_map(|p| p.vertices().iter().flatten().map(Rational::abs))
        .chain(g.iter().map(|&x| Rational::from(x.abs())))
        .max()
        .expect("nonempty polyhedra")
        .ceil();
    let scale = (0..n).fold(Rational::one(), |acc, _| acc * (Rational::from(k.clone()) + Rational::one()));
    let base = (Rational::from(top.ceil()) + Rational::one()) * scale;
    let value_at = |level: &Rational| -> Result<Rational> {
        let pairs: Vec<PolyhedronPair> = supports
            .iter()
            .zip(sections)
            .map(|(d, s)| {
                let high = polyhedron::slice_above(d, &gq, level)?;
                let h = polyhedron::convex_union(&[s, &high], n)?;
                PolyhedronPair::new(d.clone(), h)
            })
            .collect::<Result<_>>()?;
        mixed_volume_pairs(&pairs, Method::FaceFormula)
    };
    let first = value_at(&base)?;
    let mut level = base;
    for _ in 0..n {
        level = &level + &Rational::one();
        let next = value_at(&level)?;
        if next != first {
            return Err(MixvolError::NotStable(first.to_string(), next.to_string()));
        }
    }
    Ok(first)
}
