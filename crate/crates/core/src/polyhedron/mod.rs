//! Rational polyhedra `conv(vertices) + cone(rays)` with exact arithmetic.
//!
//! Every value keeps a canonical V-representation: irredundant vertices in
//! lexicographic order and primitive extreme rays in lexicographic order. The
//! facet description is computed once and cached.

mod cone;
mod faces;
mod ops;
mod volume;

use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{MixvolError, Result};
use crate::linalg::{self, dot, Vector};
use crate::rational::Rational;

pub use cone::{extreme_rays, ExtremeRay};
pub use faces::{faces, Face};
pub use ops::{
    bounded_facet_normals, convex_union, minkowski_sum, minkowski_sum_all, positive_functional, restrict_to_axes,
    slice_above, truncate_below,
};
pub use volume::{full_volume, lattice_volume, triangulate, volume_in_frame};

/// Upper bound on the ambient dimension, overridable through `MIXVOL_MAX_DIM`.
pub fn max_dim() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("MIXVOL_MAX_DIM").ok().and_then(|s| s.parse().ok()).unwrap_or(8)
    })
}

/// An inequality `normal · x >= offset` defining a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: Rational,
}

/// Facet description of a nonempty polyhedron.
#[derive(Clone, Debug)]
pub struct HRep {
    /// Affine equations `normal · x = offset` cutting out the affine hull.
    pub equations: Vec<Facet>,
    pub facets: Vec<Facet>,
    /// For each facet, the indices of the vertices lying on it.
    pub vertex_incidence: Vec<FixedBitSet>,
    pub affine_dim: usize,
}

#[derive(Clone)]
pub struct Polyhedron {
    dim: usize,
    vertices: Vec<Vector>,
    rays: Vec<Vec<i64>>,
    hrep: OnceLock<Arc<HRep>>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices && self.rays == other.rays
    }
}

impl Eq for Polyhedron {}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "Polyhedron(empty in R^{})", self.dim);
        }
        write!(f, "Polyhedron(R^{}; vertices {:?}; rays {:?})", self.dim, self.vertices, self.rays)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    let limit = max_dim();
    if dim > limit {
        return Err(MixvolError::DimensionLimit { dim, limit });
    }
    Ok(())
}

fn primitive_ray(r: &[i64]) -> Result<Vec<i64>> {
    let g = r.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(MixvolError::InvalidRay(format!("{r:?} is zero")));
    }
    Ok(r.iter().map(|x| x / g).collect())
}

impl Polyhedron {
    /// Builds `conv(points) + cone(rays)` and reduces it to canonical form.
    ///
    /// With no points the result is the empty polyhedron and rays are ignored.
    pub fn new(dim: usize, points: Vec<Vector>, rays: Vec<Vec<i64>>) -> Result<Self> {
        check_dim(dim)?;
        for p in &points {
            if p.len() != dim {
                return Err(MixvolError::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        for r in &rays {
            if r.len() != dim {
                return Err(MixvolError::DimensionMismatch { expected: dim, found: r.len() });
            }
        }
        if points.is_empty() {
            return Ok(Polyhedron::empty(dim));
        }
        let mut rays: Vec<Vec<i64>> = rays.iter().map(|r| primitive_ray(r)).collect::<Result<_>>()?;
        rays.sort();
        rays.dedup();
        let mut points = points;
        points.sort();
        points.dedup();
        let (vertices, rays, hrep) = hull(dim, points, rays)?;
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(hrep));
        Ok(Polyhedron { dim, vertices, rays, hrep: cell })
    }

    /// Trusts the caller that the data is already canonical.
    pub(crate) fn from_canonical(dim: usize, vertices: Vec<Vector>, rays: Vec<Vec<i64>>) -> Self {
        Polyhedron { dim, vertices, rays, hrep: OnceLock::new() }
    }

    pub fn from_integer_points(dim: usize, points: &[Vec<i64>], rays: Vec<Vec<i64>>) -> Result<Self> {
        Polyhedron::new(dim, points.iter().map(|p| linalg::ints(p)).collect(), rays)
    }

    pub fn empty(dim: usize) -> Self {
        Polyhedron { dim, vertices: vec![], rays: vec![], hrep: OnceLock::new() }
    }

    pub fn point(coords: Vector) -> Result<Self> {
        let dim = coords.len();
        Polyhedron::new(dim, vec![coords], vec![])
    }

    /// The positive orthant `R^n_+`.
    pub fn orthant(dim: usize) -> Result<Self> {
        Polyhedron::newton(dim, &[vec![0; dim]])
    }

    /// Newton polyhedron `conv(exponents) + R^n_+`.
    pub fn newton(dim: usize, exponents: &[Vec<i64>]) -> Result<Self> {
        Polyhedron::from_integer_points(dim, exponents, unit_vectors(dim))
    }

    /// `R^n_+` minus the open standard simplex: the Newton polyhedron of a generic linear form.
    pub fn simplex_complement(dim: usize, scale: i64) -> Result<Self> {
        let pts: Vec<Vec<i64>> = unit_vectors(dim).into_iter().map(|e| e.into_iter().map(|x| x * scale).collect()).collect();
        Polyhedron::newton(dim, &pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Facet description, computed on first use.
    pub fn hrep(&self) -> &HRep {
        assert!(!self.is_empty(), "facet description of the empty polyhedron");
        self.hrep.get_or_init(|| {
            let (_, _, h) = hull(self.dim, self.vertices.clone(), self.rays.clone()).expect("canonical data");
            Arc::new(h)
        })
    }

    pub fn affine_dim(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.hrep().affine_dim)
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == Some(self.dim)
    }

    /// Value of the support function `min over the polyhedron of γ`; `None`
    /// stands for minus infinity.
    pub fn support_value(&self, gamma: &[Rational]) -> Result<Option<Rational>> {
        if gamma.len() != self.dim {
            return Err(MixvolError::DimensionMismatch { expected: self.dim, found: gamma.len() });
        }
        if self.is_empty() {
            return Err(MixvolError::Empty);
        }
        if self.rays.iter().any(|r| dot(gamma, &linalg::ints(r)).is_negative()) {
            return Ok(None);
        }
        Ok(self.vertices.iter().map(|v| dot(gamma, v)).min())
    }

    /// Face on which `γ` attains its minimum.
    pub fn support_face(&self, gamma: &[Rational]) -> Result<Polyhedron> {
        let Some(m) = self.support_value(gamma)? else {
            return Err(MixvolError::OutsideSupportCone);
        };
        let vertices: Vec<Vector> = self.vertices.iter().filter(|v| dot(gamma, v) == m).cloned().collect();
        let rays: Vec<Vec<i64>> = self.rays.iter().filter(|r| dot(gamma, &linalg::ints(r)).is_zero()).cloned().collect();
        Ok(Polyhedron::from_canonical(self.dim, vertices, rays))
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if self.is_empty() {
            return false;
        }
        let h = self.hrep();
        h.equations.iter().all(|e| dot(&linalg::ints(&e.normal), x) == e.offset)
            && h.facets.iter().all(|f| dot(&linalg::ints(&f.normal), x) >= f.offset)
    }

    pub fn translate(&self, t: &[Rational]) -> Polyhedron {
        let vertices = self.vertices.iter().map(|v| linalg::add(v, t)).collect();
        Polyhedron::from_canonical(self.dim, vertices, self.rays.clone())
    }

    /// Places the polyhedron into `R^total`, occupying the coordinates starting at `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> Result<Polyhedron> {
        check_dim(total)?;
        let lift = |v: &[Rational]| {
            let mut w = vec![Rational::zero(); total];
            w[offset..offset + self.dim].clone_from_slice(v);
            w
        };
        let lift_ray = |r: &[i64]| {
            let mut w = vec![0; total];
            w[offset..offset + self.dim].copy_from_slice(r);
            w
        };
        Ok(Polyhedron::from_canonical(
            total,
            self.vertices.iter().map(|v| lift(v)).collect(),
            self.rays.iter().map(|r| lift_ray(r)).collect(),
        ))
    }
}

pub fn unit_vectors(dim: usize) -> Vec<Vec<i64>> {
    (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect()
}

/// Irredundant V-representation and facets of `conv(points) + cone(rays)`.
///
/// Works on the homogenization: the cone generated by `(1, p)` and `(0, r)`.
fn hull(dim: usize, points: Vec<Vector>, rays: Vec<Vec<i64>>) -> Result<(Vec<Vector>, Vec<Vec<i64>>, HRep)> {
    let npts = points.len();
    let mut gens: Vec<Vector> = Vec::with_capacity(npts + rays.len());
    for p in &points {
        let mut g = Vec::with_capacity(dim + 1);
        g.push(Rational::one());
        g.extend(p.iter().cloned());
        gens.push(g);
    }
    for r in &rays {
        let mut g = Vec::with_capacity(dim + 1);
        g.push(Rational::zero());
        g.extend(linalg::ints(r));
        gens.push(g);
    }
    let (_, pivots) = linalg::rref(&gens, dim + 1);
    let span = pivots.len();
    let equations: Vec<Facet> = linalg::kernel(&gens, dim + 1)
        .into_iter()
        .map(|z| to_facet(&z))
        .collect::<Result<_>>()?;
    if span == 1 {
        let h = HRep { equations, facets: vec![], vertex_incidence: vec![], affine_dim: 0 };
        return Ok((vec![points[0].clone()], vec![], h));
    }
    let coords: Vec<Vector> = gens.iter().map(|g| pivots.iter().map(|&p| g[p].clone()).collect()).collect();
    let duals = extreme_rays(&coords, span)?;
    let dual_dirs: Vec<Vector> = duals.iter().map(|d| d.direction.clone()).collect();
    if linalg::rank(&dual_dirs, span) < span {
        return Err(MixvolError::NotPointed);
    }
    let is_extreme = |j: usize| {
        let tight: Vec<Vector> = duals.iter().filter(|d| d.tight.contains(j)).map(|d| d.direction.clone()).collect();
        tight.len() + 1 >= span && linalg::rank(&tight, span) == span - 1
    };
    let mut vertices: Vec<Vector> = (0..npts).filter(|&j| is_extreme(j)).map(|j| points[j].clone()).collect();
    let mut ext_rays: Vec<Vec<i64>> = (0..rays.len()).filter(|&j| is_extreme(npts + j)).map(|j| rays[j].clone()).collect();
    vertices.sort();
    ext_rays.sort();
    let mut facets = Vec::new();
    for d in &duals {
        if !(0..npts).any(|j| d.tight.contains(j)) {
            continue;
        }
        let mut z = vec![Rational::zero(); dim + 1];
        for (k, &p) in pivots.iter().enumerate() {
            z[p] = d.direction[k].clone();
        }
        facets.push(to_facet(&z)?);
    }
    let vertex_incidence = facets
        .iter()
        .map(|f| {
            let n = linalg::ints(&f.normal);
            let mut bits = FixedBitSet::with_capacity(vertices.len());
            for (i, v) in vertices.iter().enumerate() {
                if dot(&n, v) == f.offset {
                    bits.insert(i);
                }
            }
            bits
        })
        .collect();
    let h = HRep { equations, facets, vertex_incidence, affine_dim: span - 1 };
    Ok((vertices, ext_rays, h))
}

/// Converts a homogeneous functional `z0 + z·x >= 0` into `normal · x >= offset`
/// with a primitive integer normal.
fn to_facet(z: &[Rational]) -> Result<Facet> {
    let normal_part = &z[1..];
    let normal = linalg::primitive(normal_part)?;
    // the scale factor that turned normal_part into `normal`
    let idx = normal.iter().position(|&x| x != 0);
    let offset = match idx {
        Some(i) => -(&z[0] * &Rational::from_int(normal[i]) / &normal_part[i]),
        None => -z[0].clone(),
    };
    Ok(Facet { normal, offset })
}
