//! Multiplicities of determinantal and resultantal singularities, and the
//! Euler characteristic of Milnor fibers of functions on determinantal sets.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{axis_subsets, check_newton, linear_pair, orthant_pair, require_axes, sign, subsets_of_size};
use crate::error::{precondition, MixvolError, Result};
use crate::explain::{index_label, Explained, Term};
use crate::mixed::{cayley, mixed_volume_pairs, prism_pairs_embedded, scaled_mixed_volume_pairs, Method, PolyhedronPair};
use crate::polyhedron::{self, Polyhedron};
use crate::rational::{binomial, factorial, Rational};
use crate::resultant::{self, PointConfiguration};

fn common_dim(ps: &[Polyhedron]) -> Result<usize> {
    let Some(first) = ps.first() else {
        return precondition("no polyhedra given");
    };
    let n = first.dim();
    for p in ps {
        check_newton(p, n)?;
    }
    Ok(n)
}

/// Multiplicity of the determinantal set of a generic `rows x k` matrix whose
/// column `j` has Newton polyhedron `columns[j]` in every row.
pub fn det_multiplicity(rows: usize, columns: &[Polyhedron]) -> Result<Rational> {
    Ok(det_multiplicity_explained(rows, columns)?.value)
}

pub fn det_multiplicity_explained(rows: usize, columns: &[Polyhedron]) -> Result<Explained> {
    let n = common_dim(columns)?;
    let k = columns.len();
    if rows == 0 || rows >= k {
        return Err(MixvolError::Precondition(format!("a {rows} x {k} matrix needs fewer rows than columns")));
    }
    if n + rows < k + 1 {
        return Err(MixvolError::Precondition(format!("a {rows} x {k} determinantal set in dimension {n} has negative expected dimension")));
    }
    let pairs: Vec<PolyhedronPair> = columns.iter().map(orthant_pair).collect::<Result<_>>()?;
    let linear = linear_pair(n)?;
    let scale = factorial(n);
    let terms: Vec<Term> = subsets_of_size(k, k - rows + 1)
        .into_par_iter()
        .map(|cols| {
            let mut ops: Vec<PolyhedronPair> = cols.iter().map(|&j| pairs[j].clone()).collect();
            ops.resize(n, linear.clone());
            let v = &scale * mixed_volume_pairs(&ops, Method::FaceFormula)?;
            Ok(Term::new(format!("columns {}", index_label(&cols)), v))
        })
        .collect::<Result<_>>()?;
    let value = terms.iter().map(|t| &t.value).sum();
    Ok(Explained::new(value, terms))
}

/// One matrix of a collection, as rows of Newton polyhedra of its entries.
pub type MatrixBlock = Vec<Vec<Polyhedron>>;

fn block_shape(block: &MatrixBlock) -> Result<(usize, usize)> {
    let rows = block.len();
    let cols = block.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 || block.iter().any(|r| r.len() != cols) {
        return precondition("every matrix must be a nonempty rectangle");
    }
    Ok((rows, cols))
}

/// Multiplicity of a generic collection of matrices with the given Newton
/// polyhedra of entries.
pub fn collection_multiplicity(blocks: &[MatrixBlock]) -> Result<Rational> {
    Ok(collection_multiplicity_explained(blocks)?.value)
}

pub fn collection_multiplicity_explained(blocks: &[MatrixBlock]) -> Result<Explained> {
    let shapes: Vec<(usize, usize)> = blocks.iter().map(block_shape).collect::<Result<_>>()?;
    let all: Vec<Polyhedron> = blocks.iter().flatten().flatten().cloned().collect();
    let n = common_dim(&all)?;
    let expected: i64 = shapes.iter().map(|&(i, k)| 1 + k as i64 - i as i64).sum();
    if expected != n as i64 {
        return Err(MixvolError::Precondition(format!("the matrix shapes need {expected} variables, found {n}")));
    }
    let simplex_dims: usize = shapes.iter().map(|&(i, _)| i - 1).sum();
    let mut pairs = Vec::new();
    let mut offset = 0;
    for (block, &(rows, cols)) in blocks.iter().zip(&shapes) {
        for j in 0..cols {
            let layers: Vec<PolyhedronPair> = block.iter().map(|row| orthant_pair(&row[j])).collect::<Result<_>>()?;
            let refs: Vec<&PolyhedronPair> = layers.iter().collect();
            pairs.push(prism_pairs_embedded(&refs, offset, simplex_dims)?);
        }
        offset += rows - 1;
    }
    scaled_mixed_volume_pairs(&pairs, &factorial(pairs.len()))
}

/// The collection of point configurations and entry polyhedra encoding a
/// collection of matrices: column `l` of an `I x k` block becomes the linear
/// function with coefficients at `e_1, ..., e_(I-1)` and the constant term at 0.
pub fn determinantal_encoding(blocks: &[MatrixBlock]) -> Result<(Vec<PointConfiguration>, Vec<Vec<Polyhedron>>)> {
    let shapes: Vec<(usize, usize)> = blocks.iter().map(block_shape).collect::<Result<_>>()?;
    let width: usize = shapes.iter().map(|&(i, _)| i - 1).sum();
    let mut configs = Vec::new();
    let mut components = Vec::new();
    let mut offset = 0;
    for (block, &(rows, cols)) in blocks.iter().zip(&shapes) {
        let points: Vec<Vec<i64>> = (0..rows)
            .map(|i| {
                let mut p = vec![0; width];
                if i + 1 < rows {
                    p[offset + i] = 1;
                }
                p
            })
            .collect();
        let config = PointConfiguration::new(points)?;
        for j in 0..cols {
            configs.push(config.clone());
            components.push(block.iter().map(|row| row[j].clone()).collect());
        }
        offset += rows - 1;
    }
    Ok((configs, components))
}

/// Multiplicity of a resultantal singularity: `components[i][a]` is the
/// Newton polyhedron of the coefficient of the `a`-th point of `sigmas[i]`.
pub fn resultantal_multiplicity(sigmas: &[PointConfiguration], components: &[Vec<Polyhedron>]) -> Result<Rational> {
    Ok(resultantal_multiplicity_explained(sigmas, components)?.value)
}

pub fn resultantal_multiplicity_explained(sigmas: &[PointConfiguration], components: &[Vec<Polyhedron>]) -> Result<Explained> {
    if sigmas.len() != components.len() {
        return Err(MixvolError::Precondition(format!("{} configurations but {} component lists", sigmas.len(), components.len())));
    }
    for (s, c) in sigmas.iter().zip(components) {
        if s.len() != c.len() {
            return Err(MixvolError::Precondition(format!("{} components for a configuration of {} points", c.len(), s.len())));
        }
    }
    let all: Vec<Polyhedron> = components.iter().flatten().cloned().collect();
    let n = common_dim(&all)?;
    let count = sigmas.len();
    let big_n = sigmas[0].ambient();
    if count != big_n + n {
        return Err(MixvolError::Precondition(format!(
            "{count} configurations in Z^{big_n} need {} variables, found {n}",
            count as i64 - big_n as i64
        )));
    }
    if !resultant::is_essential(sigmas)? {
        return precondition("the collection is not essential; reduce it to its essential subcollection first");
    }
    if !resultant::generates_lattice(sigmas)? {
        return precondition("the configurations do not generate the integer lattice");
    }
    let orthant = Polyhedron::orthant(n)?;
    let pairs: Vec<PolyhedronPair> = sigmas
        .iter()
        .zip(components)
        .map(|(s, c)| {
            let plain: Vec<&Polyhedron> = vec![&orthant; s.len()];
            let entries: Vec<&Polyhedron> = c.iter().collect();
            PolyhedronPair::new(cayley(s.points(), &plain)?, cayley(s.points(), &entries)?)
        })
        .collect::<Result<_>>()?;
    scaled_mixed_volume_pairs(&pairs, &factorial(count))
}

/// Euler characteristic of a Milnor fiber of a generic function with Newton
/// polyhedron `function` on the determinantal set of a `rows x k` matrix.
pub fn euler_char_det(rows: usize, function: &Polyhedron, columns: &[Polyhedron]) -> Result<Rational> {
    Ok(euler_char_det_explained(rows, function, columns)?.value)
}

pub fn euler_char_det_explained(rows: usize, function: &Polyhedron, columns: &[Polyhedron]) -> Result<Explained> {
    let n = common_dim(columns)?;
    check_newton(function, n)?;
    let k = columns.len();
    if rows == 0 || rows >= k {
        return Err(MixvolError::Precondition(format!("a {rows} x {k} matrix needs fewer rows than columns")));
    }
    if n > 2 * (k - rows + 2) {
        return Err(MixvolError::Precondition(format!("dimension {n} exceeds {} for a {rows} x {k} matrix", 2 * (k - rows + 2))));
    }
    require_axes(function, "the Newton polyhedron of the function")?;
    for c in columns {
        orthant_pair(c)?;
    }
    let (k, rows) = (k as i64, rows as i64);
    let terms: Vec<Term> = axis_subsets(n)
        .into_par_iter()
        .map(|axes| {
            let size = axes.len();
            let restrict = |p: &Polyhedron| polyhedron::restrict_to_axes(p, &axes).and_then(|r| orthant_pair(&r));
            let f = restrict(function)?;
            let cols: Vec<PolyhedronPair> = columns.iter().map(restrict).collect::<Result<_>>()?;
            let mut cache: HashMap<(usize, Vec<usize>), Rational> = HashMap::new();
            let mut total = Rational::zero();
            for q in 1..=k as usize {
                for chosen in subsets_of_size(k as usize, q) {
                    // the multiplicity of the function starts at one, like every column's
                    for a0 in 1..=size.saturating_sub(q) {
                        let c = binomial((size + q) as i64 - a0 as i64 - 2, q as i64 - k + rows - 1);
                        if c.is_zero() {
                            continue;
                        }
                        let mut inner = Rational::zero();
                        for parts in compositions(size - a0, q) {
                            let mut counts = vec![0; k as usize];
                            for (&j, &a) in chosen.iter().zip(&parts) {
                                counts[j] = a;
                            }
                            let key = (a0, counts);
                            if let Some(v) = cache.get(&key) {
                                inner += v;
                                continue;
                            }
                            let mut ops: Vec<PolyhedronPair> = vec![f.clone(); a0];
                            for (j, &a) in key.1.iter().enumerate() {
                                ops.extend(std::iter::repeat(cols[j].clone()).take(a));
                            }
                            let v = factorial(size) * mixed_volume_pairs(&ops, Method::FaceFormula)?;
                            inner += &v;
                            cache.insert(key, v);
                        }
                        total += sign(size as i64 + k - rows) * c * inner;
                    }
                }
            }
            Ok(Term::new(format!("axes {}", index_label(&axes)), total))
        })
        .collect::<Result<_>>()?;
    let value = terms.iter().map(|t| &t.value).sum();
    Ok(Explained::new(value, terms))
}

/// Radial index of a generic 1-form on the determinantal set: one minus the
/// Euler characteristic above.
pub fn radial_index_det(rows: usize, form: &Polyhedron, columns: &[Polyhedron]) -> Result<Rational> {
    Ok(Rational::one() - euler_char_det(rows, form, columns)?)
}

/// Ways to write `total` as an ordered sum of `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if total < parts {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
