use fixedbitset::FixedBitSet;

use crate::error::{precondition, MixvolError, Result};
use crate::linalg::{self, LatticeFrame, Vector};
use crate::polyhedron::Polyhedron;
use crate::rational::{factorial, Rational};

/// Pulling triangulation of a bounded polyhedron, as lists of vertex indices.
pub fn triangulate(p: &Polyhedron) -> Result<Vec<Vec<usize>>> {
    if p.is_empty() {
        return Ok(vec![]);
    }
    if !p.is_bounded() {
        return Err(MixvolError::Unbounded);
    }
    let h = p.hrep();
    let mut all = FixedBitSet::with_capacity(p.vertices().len());
    all.insert_range(..);
    let mut out = Vec::new();
    pull(&all, h.affine_dim, &h.vertex_incidence, &mut Vec::new(), &mut out);
    Ok(out)
}

fn pull(face: &FixedBitSet, dim: usize, facets: &[FixedBitSet], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let apex = face.ones().next().expect("nonempty face");
    if dim == 0 {
        let mut s = prefix.clone();
        s.push(apex);
        out.push(s);
        return;
    }
    let mut subfaces: Vec<FixedBitSet> = Vec::new();
    for f in facets {
        let mut s = face.clone();
        s.intersect_with(f);
        if s.count_ones(..) == 0 || s == *face {
            continue;
        }
        if subfaces.iter().any(|t| s.is_subset(t)) {
            continue;
        }
        subfaces.retain(|t| !t.is_subset(&s));
        subfaces.push(s);
    }
    prefix.push(apex);
    for s in subfaces.iter().filter(|s| !s.contains(apex)) {
        pull(s, dim - 1, facets, prefix, out);
    }
    prefix.pop();
}

/// Volume of a bounded polyhedron measured in the lattice of `frame`, which
/// must contain the directions of the polyhedron. Lower-dimensional
/// polyhedra have volume zero.
pub fn volume_in_frame(p: &Polyhedron, frame: &LatticeFrame) -> Result<Rational> {
    if p.is_empty() {
        return Ok(Rational::zero());
    }
    if !p.is_bounded() {
        return Err(MixvolError::Unbounded);
    }
    let q = frame.rank();
    let d = p.hrep().affine_dim;
    if d < q {
        return Ok(Rational::zero());
    }
    if d > q {
        return precondition("polyhedron does not fit in the lattice frame");
    }
    if q == 0 {
        return Ok(Rational::one());
    }
    let vs = p.vertices();
    let total: Rational = triangulate(p)?
        .iter()
        .map(|s| {
            let m: Vec<Vector> = s[1..].iter().map(|&i| frame.coords(&linalg::sub(&vs[i], &vs[s[0]]))).collect();
            linalg::det(&m).abs()
        })
        .sum();
    Ok(total / factorial(q))
}

/// Volume in the ambient lattice `Z^n`; zero for lower-dimensional input.
pub fn full_volume(p: &Polyhedron) -> Result<Rational> {
    let n = p.dim();
    volume_in_frame(p, &LatticeFrame::new(crate::polyhedron::unit_vectors(n), n))
}

/// Lattice-normalized volume in the affine span, measured against the
/// lattice of integer vectors parallel to that span.
pub fn lattice_volume(p: &Polyhedron) -> Result<Rational> {
    if p.is_empty() {
        return Ok(Rational::zero());
    }
    if !p.is_bounded() {
        return Err(MixvolError::Unbounded);
    }
    let vs = p.vertices();
    let dirs: Vec<Vector> = vs[1..].iter().map(|v| linalg::sub(v, &vs[0])).collect();
    let frame = LatticeFrame::spanned_by(&dirs, p.dim())?;
    volume_in_frame(p, &frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;

    fn poly(dim: usize, pts: &[&[i64]]) -> Polyhedron {
        Polyhedron::new(dim, pts.iter().map(|p| ints(p)).collect(), vec![]).unwrap()
    }

    #[test]
    fn triangle_and_cube() {
        assert_eq!(lattice_volume(&poly(2, &[&[0, 0], &[2, 0], &[0, 3]])).unwrap(), Rational::from_int(3));
        let cube: Vec<Vec<i64>> = (0..8).map(|m| (0..3).map(|i| (m >> i) & 1).collect()).collect();
        let refs: Vec<&[i64]> = cube.iter().map(|v| v.as_slice()).collect();
        let c = poly(3, &refs);
        assert_eq!(lattice_volume(&c).unwrap(), Rational::one());
        assert_eq!(triangulate(&c).unwrap().len(), 6);
    }

    #[test]
    fn induced_lattice_for_slanted_segment() {
        // (0,0)-(2,2) has two lattice steps along (1,1)
        assert_eq!(lattice_volume(&poly(2, &[&[0, 0], &[2, 2]])).unwrap(), Rational::from_int(2));
        // a triangle in the plane x+y+z=1 is unimodular
        assert_eq!(lattice_volume(&poly(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), Rational::new(1, 2));
        assert_eq!(full_volume(&poly(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), Rational::zero());
    }

    #[test]
    fn point_and_unbounded() {
        assert_eq!(lattice_volume(&poly(2, &[&[1, 1]])).unwrap(), Rational::one());
        let o = Polyhedron::orthant(2).unwrap();
        assert_eq!(lattice_volume(&o).unwrap_err(), MixvolError::Unbounded);
    }

    #[test]
    fn rational_vertices() {
        let p = Polyhedron::new(2, vec![ints(&[0, 0]), vec![Rational::new(1, 2), Rational::zero()], ints(&[0, 1])], vec![]).unwrap();
        assert_eq!(lattice_volume(&p).unwrap(), Rational::new(1, 4));
    }
}
