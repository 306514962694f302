use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::Polyhedron;
use crate::linalg::{self, dot, Vector};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct Face {
    /// Generator incidence: vertices first, then rays.
    pub generators: FixedBitSet,
    /// Sum of the inner normals of the facets containing the face; zero for
    /// the polyhedron itself.
    pub normal: Vector,
    pub bounded: bool,
}

/// All nonempty faces of a full-dimensional polyhedron with a relative-interior normal each.
pub fn faces(p: &Polyhedron) -> Vec<Face> {
    let nv = p.vertices().len();
    let nr = p.rays().len();
    let h = p.hrep();
    let facet_gens: Vec<FixedBitSet> = h
        .facets
        .iter()
        .map(|f| {
            let n = linalg::ints(&f.normal);
            let mut bits = FixedBitSet::with_capacity(nv + nr);
            for (i, v) in p.vertices().iter().enumerate() {
                if dot(&n, v) == f.offset {
                    bits.insert(i);
                }
            }
            for (j, r) in p.rays().iter().enumerate() {
                if dot(&n, &linalg::ints(r)).is_zero() {
                    bits.insert(nv + j);
                }
            }
            bits
        })
        .collect();
    let mut all = FixedBitSet::with_capacity(nv + nr);
    all.insert_range(..);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(all.ones().collect());
    let mut queue = vec![all];
    let mut out = Vec::new();
    while let Some(f) = queue.pop() {
        for g in &facet_gens {
            let mut s = f.clone();
            s.intersect_with(g);
            if s.ones().next().is_some_and(|i| i < nv) && seen.insert(s.ones().collect()) {
                queue.push(s);
            }
        }
        let mut normal = vec![Rational::zero(); p.dim()];
        for (g, facet) in facet_gens.iter().zip(&h.facets) {
            if f.is_subset(g) {
                normal = linalg::add(&normal, &linalg::ints(&facet.normal));
            }
        }
        let bounded = !f.ones().any(|i| i >= nv);
        out.push(Face { generators: f, normal, bounded });
    }
    out
}
