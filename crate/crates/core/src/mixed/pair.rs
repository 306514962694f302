use std::fmt;

use crate::error::{MixvolError, Result};
use crate::linalg::{self, dot, Vector};
use crate::polyhedron::{self, Polyhedron};
use crate::rational::Rational;

/// Two polyhedra with the same recession cone that differ on a bounded set,
/// read as the virtual region `A \ B` minus `B \ A`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyhedronPair {
    a: Polyhedron,
    b: Polyhedron,
}

impl fmt::Debug for PolyhedronPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pair({:?}, {:?})", self.a, self.b)
    }
}

impl PolyhedronPair {
    pub fn new(a: Polyhedron, b: Polyhedron) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(MixvolError::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        if a.is_empty() || b.is_empty() {
            return Err(MixvolError::Empty);
        }
        if a.rays() != b.rays() {
            return Err(MixvolError::SupportConeMismatch);
        }
        let pair = PolyhedronPair { a, b };
        if !pair.has_bounded_difference()? {
            return Err(MixvolError::UnboundedDifference);
        }
        Ok(pair)
    }

    /// `(P, P)`, which has volume zero but still contributes to mixed volumes.
    pub fn diagonal(p: Polyhedron) -> Result<Self> {
        PolyhedronPair::new(p.clone(), p)
    }

    pub fn first(&self) -> &Polyhedron {
        &self.a
    }

    pub fn second(&self) -> &Polyhedron {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        self.a.rays()
    }

    /// Both components agree above the highest vertex level of a covector that
    /// is positive on the recession cone, exactly when the difference is bounded.
    fn has_bounded_difference(&self) -> Result<bool> {
        if self.a.is_bounded() {
            return Ok(true);
        }
        let g = linalg::ints(&polyhedron::positive_functional(self.rays(), self.dim())?);
        let top = self.top_level(&g);
        let sa = polyhedron::slice_above(&self.a, &g, &top)?;
        let sb = polyhedron::slice_above(&self.b, &g, &top)?;
        Ok(sa == sb)
    }

    /// Largest value of `g` over the vertices of both components.
    pub fn top_level(&self, g: &[Rational]) -> Rational {
        self.a
            .vertices()
            .iter()
            .chain(self.b.vertices())
            .map(|v| dot(g, v))
            .max()
            .expect("nonempty components")
    }

    pub fn sum(&self, other: &PolyhedronPair) -> Result<PolyhedronPair> {
        Ok(PolyhedronPair {
            a: polyhedron::minkowski_sum(&self.a, &other.a)?,
            b: polyhedron::minkowski_sum(&self.b, &other.b)?,
        })
    }

    pub fn swap(&self) -> PolyhedronPair {
        PolyhedronPair { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn embed(&self, offset: usize, total: usize) -> Result<PolyhedronPair> {
        Ok(PolyhedronPair { a: self.a.embed(offset, total)?, b: self.b.embed(offset, total)? })
    }

    pub fn translate(&self, t: &[Rational]) -> PolyhedronPair {
        PolyhedronPair { a: self.a.translate(t), b: self.b.translate(t) }
    }

    /// Componentwise support faces, used for bounded-face computations.
    pub fn support_faces(&self, gamma: &[Rational]) -> Result<(Polyhedron, Polyhedron)> {
        Ok((self.a.support_face(gamma)?, self.b.support_face(gamma)?))
    }
}

/// Covector positive on the common recession cone of all pairs.
pub(crate) fn common_functional(pairs: &[&PolyhedronPair]) -> Result<Vector> {
    let first = pairs.first().ok_or_else(|| MixvolError::Precondition("no pairs given".into()))?;
    for p in pairs {
        if p.dim() != first.dim() {
            return Err(MixvolError::DimensionMismatch { expected: first.dim(), found: p.dim() });
        }
        if p.rays() != first.rays() {
            return Err(MixvolError::SupportConeMismatch);
        }
    }
    Ok(linalg::ints(&polyhedron::positive_functional(first.rays(), first.dim())?))
}

/// Volume of `A \ B` minus volume of `B \ A`.
pub fn pair_volume(pair: &PolyhedronPair) -> Result<Rational> {
    let g = common_functional(&[pair])?;
    let level = pair.top_level(&g) + Rational::one();
    truncated_difference(pair, &g, &level)
}

pub(crate) fn truncated_difference(pair: &PolyhedronPair, g: &[Rational], level: &Rational) -> Result<Rational> {
    let ta = polyhedron::truncate_below(&pair.a, g, level)?;
    let tb = polyhedron::truncate_below(&pair.b, g, level)?;
    Ok(polyhedron::full_volume(&ta)? - polyhedron::full_volume(&tb)?)
}
