//! Mixed volumes of bounded polyhedra and of polyhedron pairs.

mod convenient;
mod pair;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{precondition, MixvolError, Result};
use crate::explain::{Explained, Term};
use crate::linalg::{self, LatticeFrame, Vector};
use crate::polyhedron::{self, Polyhedron};
use crate::rational::{factorial, Rational};

pub use convenient::{is_cone_convenient, is_convenient, is_very_convenient, stable_mixed_volume_pairs, Convenience};
pub use pair::{pair_volume, PolyhedronPair};
pub(crate) use pair::common_functional;

/// How a mixed volume of pairs is evaluated. All three agree exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Sum over bounded facet normals of the total sum.
    #[default]
    FaceFormula,
    /// Inclusion-exclusion over pair volumes of partial sums.
    Polarization,
    /// Cut every pair at a common level and subtract classical mixed volumes.
    Truncation,
}

impl FromStr for Method {
    type Err = MixvolError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "face_formula" | "face-formula" | "faces" => Ok(Method::FaceFormula),
            "polarization" => Ok(Method::Polarization),
            "truncation" => Ok(Method::Truncation),
            other => Err(MixvolError::Schema(format!("unknown method `{other}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::FaceFormula => "face_formula",
            Method::Polarization => "polarization",
            Method::Truncation => "truncation",
        })
    }
}

fn subsets(n: usize) -> impl Iterator<Item = u32> {
    1..(1u32 << n)
}

fn sign(exp: usize) -> Rational {
    if exp % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Rewrites `p - origin` in the coordinates of `frame`.
fn into_frame(p: &Polyhedron, origin: &[Rational], frame: &LatticeFrame) -> Result<Polyhedron> {
    let mut vertices: Vec<Vector> = p.vertices().iter().map(|v| frame.coords(&linalg::sub(v, origin))).collect();
    let mut rays: Vec<Vec<i64>> = p
        .rays()
        .iter()
        .map(|r| {
            frame
                .coords(&linalg::ints(r))
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| MixvolError::Precondition("ray outside the frame lattice".into())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    vertices.sort();
    rays.sort();
    Ok(Polyhedron::from_canonical(frame.rank(), vertices, rays))
}

/// Classical mixed volume of `n` bounded polyhedra in `R^n`, normalized so
/// that the mixed volume of `n` copies of `P` is the lattice volume of `P`.
pub fn mixed_volume(ps: &[Polyhedron]) -> Result<Rational> {
    let n = ps.len();
    for p in ps {
        if p.dim() != n {
            return Err(MixvolError::DimensionMismatch { expected: n, found: p.dim() });
        }
        if p.is_empty() {
            return Err(MixvolError::Empty);
        }
        if !p.is_bounded() {
            return Err(MixvolError::Unbounded);
        }
    }
    let refs: Vec<&Polyhedron> = ps.iter().collect();
    mixed_volume_in_frame(&refs, &LatticeFrame::new(polyhedron::unit_vectors(n), n))
}

/// Classical mixed volume of polytopes, each parallel to the span of `frame`,
/// measured in the frame lattice.
pub(crate) fn mixed_volume_in_frame(ps: &[&Polyhedron], frame: &LatticeFrame) -> Result<Rational> {
    let q = frame.rank();
    if ps.len() != q {
        return precondition("number of operands differs from the frame rank");
    }
    if q == 0 {
        return Ok(Rational::one());
    }
    let mapped: Vec<Polyhedron> = ps.iter().map(|p| into_frame(p, &p.vertices()[0], frame)).collect::<Result<_>>()?;
    // a subfamily whose sum is too thin forces the mixed volume to vanish
    let bases: Vec<Vec<Vector>> = mapped.iter().map(|p| linalg::rref(p.vertices(), q).0).collect();
    for mask in subsets(q) {
        let rows: Vec<Vector> = (0..q).filter(|i| mask >> i & 1 == 1).flat_map(|i| bases[i].iter().cloned()).collect();
        if linalg::rank(&rows, q) < mask.count_ones() as usize {
            return Ok(Rational::zero());
        }
    }
    let mut sums: Vec<Option<Polyhedron>> = vec![None; 1 << q];
    let mut total = Rational::zero();
    for mask in subsets(q) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let s = match &sums[rest as usize] {
            Some(prev) => polyhedron::minkowski_sum(prev, &mapped[low])?,
            None => mapped[low].clone(),
        };
        let v = polyhedron::full_volume(&s)?;
        total += sign(q - mask.count_ones() as usize) * v;
        sums[mask as usize] = Some(s);
    }
    Ok(total / factorial(q))
}

/// Mixed volume of `n` pairs in `R^n` sharing one support cone.
pub fn mixed_volume_pairs(pairs: &[PolyhedronPair], method: Method) -> Result<Rational> {
    let n = pairs.len();
    for p in pairs {
        if p.dim() != n {
            return Err(MixvolError::DimensionMismatch { expected: n, found: p.dim() });
        }
    }
    let refs: Vec<&PolyhedronPair> = pairs.iter().collect();
    let g = common_functional(&refs)?;
    match method {
        Method::FaceFormula => Ok(face_contributions(pairs)?.into_iter().map(|(_, v)| v).sum::<Rational>() / Rational::from_int(n as i64)),
        Method::Polarization => polarization(pairs, &g),
        Method::Truncation => truncation(pairs, &g),
    }
}

/// Per-facet terms of the face formula (before division by `n`), keyed by
/// the primitive inner normal of the bounded facet of the total sum.
pub fn face_contributions(pairs: &[PolyhedronPair]) -> Result<Vec<(Vec<i64>, Rational)>> {
    let n = pairs.len();
    if n == 0 {
        return Ok(vec![]);
    }
    let parts: Vec<&Polyhedron> = pairs.iter().flat_map(|p| [p.first(), p.second()]).collect();
    let total = polyhedron::minkowski_sum_all(&parts, n)?;
    if !total.is_full_dimensional() {
        return Ok(vec![]);
    }
    let normals = polyhedron::bounded_facet_normals(&total)?;
    normals
        .into_par_iter()
        .map(|normal| {
            let gamma = linalg::ints(&normal);
            let frame = LatticeFrame::spanned_by(&linalg::kernel(std::slice::from_ref(&gamma), n), n)?;
            let mut faces_a = Vec::with_capacity(n);
            let mut faces_b = Vec::with_capacity(n);
            let mut gaps = Vec::with_capacity(n);
            for p in pairs {
                let (fa, fb) = p.support_faces(&gamma)?;
                let va = p.first().support_value(&gamma)?.ok_or(MixvolError::OutsideSupportCone)?;
                let vb = p.second().support_value(&gamma)?.ok_or(MixvolError::OutsideSupportCone)?;
                faces_a.push(fa);
                faces_b.push(fb);
                gaps.push(vb - va);
            }
            let mut term = Rational::zero();
            for k in 0..n {
                if gaps[k].is_zero() {
                    continue;
                }
                let ops: Vec<&Polyhedron> = faces_a[..k].iter().chain(&faces_b[k + 1..]).collect();
                let mv = mixed_volume_in_frame(&ops, &frame)?;
                term += &gaps[k] * &mv;
            }
            Ok((normal, term))
        })
        .collect()
}

/// `scale` times the mixed volume of pairs, reported facet by facet.
pub fn scaled_mixed_volume_pairs(pairs: &[PolyhedronPair], scale: &Rational) -> Result<Explained> {
    let n = pairs.len();
    if let Some(p) = pairs.iter().find(|p| p.dim() != n) {
        return Err(MixvolError::DimensionMismatch { expected: n, found: p.dim() });
    }
    let refs: Vec<&PolyhedronPair> = pairs.iter().collect();
    common_functional(&refs)?;
    let per_facet = scale / Rational::from_int(n as i64);
    let terms: Vec<Term> =
        face_contributions(pairs)?.into_iter().map(|(normal, v)| Term::new(format!("facet {normal:?}"), v * &per_facet)).collect();
    let value = terms.iter().map(|t| &t.value).sum();
    Ok(Explained::new(value, terms))
}

fn polarization(pairs: &[PolyhedronPair], g: &[Rational]) -> Result<Rational> {
    let n = pairs.len();
    let terms: Vec<Rational> = subsets(n)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|mask| {
            let chosen: Vec<&PolyhedronPair> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &pairs[i]).collect();
            let mut acc = chosen[0].clone();
            for p in &chosen[1..] {
                acc = acc.sum(p)?;
            }
            let level = acc.top_level(g) + Rational::one();
            let v = pair::truncated_difference(&acc, g, &level)?;
            Ok(sign(n - chosen.len()) * v)
        })
        .collect::<Result<_>>()?;
    Ok(terms.into_iter().sum::<Rational>() / factorial(n))
}

fn truncation(pairs: &[PolyhedronPair], g: &[Rational]) -> Result<Rational> {
    let n = pairs.len();
    let level = pairs.iter().map(|p| p.top_level(g)).max().unwrap_or_else(Rational::zero) + Rational::one();
    let cut = |p: &Polyhedron| polyhedron::truncate_below(p, g, &level);
    let ta: Vec<Polyhedron> = pairs.iter().map(|p| cut(p.first())).collect::<Result<_>>()?;
    let tb: Vec<Polyhedron> = pairs.iter().map(|p| cut(p.second())).collect::<Result<_>>()?;
    let frame = LatticeFrame::new(polyhedron::unit_vectors(n), n);
    let ra: Vec<&Polyhedron> = ta.iter().collect();
    let rb: Vec<&Polyhedron> = tb.iter().collect();
    Ok(mixed_volume_in_frame(&ra, &frame)? - mixed_volume_in_frame(&rb, &frame)?)
}

/// Mixed volume of pairs that lie in translates of the span of `frame`,
/// measured in the frame lattice. Each pair is moved by one of its own
/// vertices before the change of coordinates.
pub fn mixed_volume_pairs_in_frame(pairs: &[PolyhedronPair], frame: &LatticeFrame, method: Method) -> Result<Rational> {
    if frame.rank() == 0 {
        return Ok(if pairs.is_empty() { Rational::one() } else { Rational::zero() });
    }
    mixed_volume_pairs(&pairs_into_frame(pairs, frame)?, method)
}

/// Moves each pair by one of its own vertices and rewrites it in frame coordinates.
pub fn pairs_into_frame(pairs: &[PolyhedronPair], frame: &LatticeFrame) -> Result<Vec<PolyhedronPair>> {
    pairs
        .iter()
        .map(|p| {
            let origin = p.first().vertices()[0].clone();
            PolyhedronPair::new(into_frame(p.first(), &origin, frame)?, into_frame(p.second(), &origin, frame)?)
        })
        .collect()
}

/// Vertices of the standard simplex used to stack prism layers: the origin
/// first, then the unit vectors.
fn layer_offset(i: usize, width: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); width];
    if i > 0 {
        v[i - 1] = Rational::one();
    }
    v
}

/// `conv` of the layers `{b_i} x P_i`, placed in `R^total_simplex ⊕ R^m` with
/// the simplex coordinates starting at `offset`. Empty layers are skipped.
pub fn prism_embedded(layers: &[&Polyhedron], offset: usize, total_simplex: usize) -> Result<Polyhedron> {
    let n = layers.len();
    let Some(m) = layers.first().map(|p| p.dim()) else {
        return precondition("prism of no polyhedra");
    };
    if n == 0 || offset + n - 1 > total_simplex {
        return precondition("prism does not fit into the simplex coordinates");
    }
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for (i, p) in layers.iter().enumerate() {
        if p.dim() != m {
            return Err(MixvolError::DimensionMismatch { expected: m, found: p.dim() });
        }
        if p.is_empty() {
            continue;
        }
        let mut head = vec![Rational::zero(); total_simplex];
        head[offset..offset + n - 1].clone_from_slice(&layer_offset(i, n - 1));
        for v in p.vertices() {
            let mut w = head.clone();
            w.extend(v.iter().cloned());
            points.push(w);
        }
        for r in p.rays() {
            let mut w = vec![0; total_simplex];
            w.extend(r.iter().copied());
            rays.push(w);
        }
    }
    Polyhedron::new(total_simplex + m, points, rays)
}

/// `P_1 * ... * P_n` in `R^(n-1) ⊕ R^m`.
pub fn prism(layers: &[Polyhedron]) -> Result<Polyhedron> {
    let refs: Vec<&Polyhedron> = layers.iter().collect();
    prism_embedded(&refs, 0, layers.len().saturating_sub(1))
}

/// Componentwise prism of pairs, embedded like [`prism_embedded`].
pub fn prism_pairs_embedded(layers: &[&PolyhedronPair], offset: usize, total_simplex: usize) -> Result<PolyhedronPair> {
    let a: Vec<&Polyhedron> = layers.iter().map(|p| p.first()).collect();
    let b: Vec<&Polyhedron> = layers.iter().map(|p| p.second()).collect();
    PolyhedronPair::new(prism_embedded(&a, offset, total_simplex)?, prism_embedded(&b, offset, total_simplex)?)
}

pub fn prism_pairs(layers: &[PolyhedronPair]) -> Result<PolyhedronPair> {
    let refs: Vec<&PolyhedronPair> = layers.iter().collect();
    prism_pairs_embedded(&refs, 0, layers.len().saturating_sub(1))
}

/// `conv` of `{a} x P_a` over the points `a` of a configuration in `Z^N`.
pub fn cayley(points: &[Vec<i64>], polys: &[&Polyhedron]) -> Result<Polyhedron> {
    if points.len() != polys.len() || points.is_empty() {
        return precondition("cayley needs one polyhedron per configuration point");
    }
    let big_n = points[0].len();
    let n = polys[0].dim();
    let mut vs = Vec::new();
    let mut rays = Vec::new();
    for (a, p) in points.iter().zip(polys) {
        if a.len() != big_n {
            return Err(MixvolError::DimensionMismatch { expected: big_n, found: a.len() });
        }
        if p.dim() != n {
            return Err(MixvolError::DimensionMismatch { expected: n, found: p.dim() });
        }
        for v in p.vertices() {
            let mut w = linalg::ints(a);
            w.extend(v.iter().cloned());
            vs.push(w);
        }
        for r in p.rays() {
            let mut w = vec![0; big_n];
            w.extend(r.iter().copied());
            rays.push(w);
        }
    }
    Polyhedron::new(big_n + n, vs, rays)
}
