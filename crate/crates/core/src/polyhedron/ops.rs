use crate::error::{MixvolError, Result};
use crate::linalg::{self, dot, Vector};
use crate::polyhedron::{extreme_rays, Facet, Polyhedron};
use crate::rational::Rational;

fn same_dim(a: &Polyhedron, b: &Polyhedron) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(MixvolError::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// `a + b`; the empty polyhedron is absorbing.
pub fn minkowski_sum(a: &Polyhedron, b: &Polyhedron) -> Result<Polyhedron> {
    same_dim(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(Polyhedron::empty(a.dim()));
    }
    let points = a
        .vertices()
        .iter()
        .flat_map(|v| b.vertices().iter().map(move |w| linalg::add(v, w)))
        .collect();
    let rays = a.rays().iter().chain(b.rays()).cloned().collect();
    Polyhedron::new(a.dim(), points, rays)
}

/// Sum of a nonempty list; the sum of no polyhedra is the origin of `R^dim`.
pub fn minkowski_sum_all(ps: &[&Polyhedron], dim: usize) -> Result<Polyhedron> {
    let mut acc = Polyhedron::point(vec![Rational::zero(); dim])?;
    for p in ps {
        acc = minkowski_sum(&acc, p)?;
    }
    Ok(acc)
}

/// Convex hull of a union; empty operands are neutral.
pub fn convex_union(ps: &[&Polyhedron], dim: usize) -> Result<Polyhedron> {
    for p in ps {
        if p.dim() != dim {
            return Err(MixvolError::DimensionMismatch { expected: dim, found: p.dim() });
        }
    }
    let points = ps.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
    let rays = ps.iter().filter(|p| !p.is_empty()).flat_map(|p| p.rays().iter().cloned()).collect();
    Polyhedron::new(dim, points, rays)
}

/// Polyhedron given by equations and inequalities `a · x >= b`.
pub(crate) fn from_inequalities(dim: usize, equations: &[(Vector, Rational)], inequalities: &[(Vector, Rational)]) -> Result<Polyhedron> {
    let mut cons: Vec<Vector> = Vec::new();
    let hom = |a: &Vector, b: &Rational, sign: i64| {
        let s = Rational::from_int(sign);
        let mut row = vec![-(b * &s)];
        row.extend(a.iter().map(|x| x * &s));
        row
    };
    let mut x0 = vec![Rational::zero(); dim + 1];
    x0[0] = Rational::one();
    cons.push(x0);
    for (a, b) in equations {
        cons.push(hom(a, b, 1));
        cons.push(hom(a, b, -1));
    }
    for (a, b) in inequalities {
        cons.push(hom(a, b, 1));
    }
    let rays = extreme_rays(&cons, dim + 1)?;
    let mut points = Vec::new();
    let mut dirs = Vec::new();
    for r in rays {
        let d = &r.direction;
        if d[0].is_zero() {
            dirs.push(linalg::primitive(&d[1..])?);
        } else {
            points.push(d[1..].iter().map(|x| x / &d[0]).collect());
        }
    }
    Polyhedron::new(dim, points, dirs)
}

/// `P ∩ {x_i = 0 for i not in axes}`, written in the coordinates listed in `axes`.
pub fn restrict_to_axes(p: &Polyhedron, axes: &[usize]) -> Result<Polyhedron> {
    let k = axes.len();
    if let Some(&bad) = axes.iter().find(|&&i| i >= p.dim()) {
        return Err(MixvolError::DimensionMismatch { expected: p.dim(), found: bad + 1 });
    }
    if p.is_empty() {
        return Ok(Polyhedron::empty(k));
    }
    let h = p.hrep();
    let restrict = |f: &Facet| -> (Vector, Rational) { (axes.iter().map(|&i| Rational::from_int(f.normal[i])).collect(), f.offset.clone()) };
    let eqs: Vec<_> = h.equations.iter().map(restrict).collect();
    let ineqs: Vec<_> = h.facets.iter().map(restrict).collect();
    if k == 0 {
        let ok = eqs.iter().all(|(_, b)| b.is_zero()) && ineqs.iter().all(|(_, b)| !b.is_positive());
        return Ok(if ok { Polyhedron::point(vec![])? } else { Polyhedron::empty(0) });
    }
    from_inequalities(k, &eqs, &ineqs)
}

/// An integer covector strictly positive on every nonzero element of the
/// recession cone spanned by `rays`; zero when there are no rays.
pub fn positive_functional(rays: &[Vec<i64>], dim: usize) -> Result<Vec<i64>> {
    if rays.is_empty() {
        return Ok(vec![0; dim]);
    }
    let cone = Polyhedron::new(dim, vec![vec![Rational::zero(); dim]], rays.to_vec())?;
    let mut sum = vec![Rational::zero(); dim];
    for f in &cone.hrep().facets {
        sum = linalg::add(&sum, &linalg::ints(&f.normal));
    }
    let g = linalg::primitive(&sum)?;
    debug_assert!(rays.iter().all(|r| r.iter().zip(&g).map(|(a, b)| a * b).sum::<i64>() > 0));
    Ok(g)
}

fn level_points(p: &Polyhedron, gamma0: &[Rational], level: &Rational) -> Vec<Vector> {
    let mut out = Vec::new();
    for v in p.vertices() {
        let gap = level - &dot(gamma0, v);
        if gap.is_zero() {
            out.push(v.clone());
        }
        for r in p.rays() {
            let rr = linalg::ints(r);
            let t = &gap / &dot(gamma0, &rr);
            out.push(linalg::add(v, &linalg::scale(&rr, &t)));
        }
    }
    out
}

fn max_level(p: &Polyhedron, gamma0: &[Rational]) -> Option<Rational> {
    p.vertices().iter().map(|v| dot(gamma0, v)).max()
}

/// `P ∩ {γ0 <= level}` for a covector positive on the recession cone.
pub fn truncate_below(p: &Polyhedron, gamma0: &[Rational], level: &Rational) -> Result<Polyhedron> {
    if p.is_empty() {
        return Ok(p.clone());
    }
    if max_level(p, gamma0).is_some_and(|m| m <= *level) {
        let mut points: Vec<Vector> = p.vertices().to_vec();
        points.extend(level_points(p, gamma0, level));
        return Polyhedron::new(p.dim(), points, vec![]);
    }
    let h = p.hrep();
    let eqs: Vec<_> = h.equations.iter().map(|f| (linalg::ints(&f.normal), f.offset.clone())).collect();
    let mut ineqs: Vec<_> = h.facets.iter().map(|f| (linalg::ints(&f.normal), f.offset.clone())).collect();
    ineqs.push((gamma0.iter().map(|x| -x).collect(), -level));
    from_inequalities(p.dim(), &eqs, &ineqs)
}

/// `P ∩ {γ0 >= level}`, valid when `level` is at least the value of γ0 at every vertex.
pub fn slice_above(p: &Polyhedron, gamma0: &[Rational], level: &Rational) -> Result<Polyhedron> {
    if p.is_empty() {
        return Ok(p.clone());
    }
    if max_level(p, gamma0).is_some_and(|m| m > *level) {
        return crate::error::precondition("slice level below a vertex");
    }
    Polyhedron::new(p.dim(), level_points(p, gamma0, level), p.rays().to_vec())
}

/// Primitive normals of the bounded facets of a full-dimensional polyhedron.
pub fn bounded_facet_normals(p: &Polyhedron) -> Result<Vec<Vec<i64>>> {
    if p.is_empty() {
        return Err(MixvolError::Empty);
    }
    if !p.is_full_dimensional() {
        return crate::error::precondition("bounded facet normals need a full-dimensional polyhedron");
    }
    let mut out: Vec<Vec<i64>> = p
        .hrep()
        .facets
        .iter()
        .filter(|f| p.rays().iter().all(|r| r.iter().zip(&f.normal).map(|(a, b)| a * b).sum::<i64>() > 0))
        .map(|f| f.normal.clone())
        .collect();
    out.sort();
    Ok(out)
}
