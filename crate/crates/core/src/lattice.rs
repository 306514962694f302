//! Lattice point counts of polyhedra and pairs, and the counting formula for
//! mixed volumes of prisms.

use num_traits::ToPrimitive;

use crate::error::{precondition, MixvolError, Result};
use crate::mixed::{common_functional, PolyhedronPair};
use crate::polyhedron::{self, Polyhedron};
use crate::rational::{factorial, Rational};

/// Facet data with integer right-hand sides, so membership of integer points
/// is decided in machine integers.
struct IntegerTest {
    equations: Vec<(Vec<i64>, i64)>,
    inequalities: Vec<(Vec<i64>, i64)>,
    infeasible: bool,
}

impl IntegerTest {
    fn new(p: &Polyhedron) -> Result<Self> {
        let h = p.hrep();
        let mut infeasible = false;
        let mut equations = Vec::new();
        for e in &h.equations {
            match e.offset.to_i64() {
                Some(b) => equations.push((e.normal.clone(), b)),
                None if e.offset.is_integer() => return Err(MixvolError::Overflow),
                None => infeasible = true,
            }
        }
        let inequalities = h
            .facets
            .iter()
            .map(|f| f.offset.ceil().to_i64().map(|b| (f.normal.clone(), b)).ok_or(MixvolError::Overflow))
            .collect::<Result<_>>()?;
        Ok(IntegerTest { equations, inequalities, infeasible })
    }

    fn contains(&self, x: &[i64]) -> bool {
        let d = |a: &[i64]| a.iter().zip(x).map(|(p, q)| p * q).sum::<i64>();
        self.equations.iter().all(|(a, b)| d(a) == *b) && self.inequalities.iter().all(|(a, b)| d(a) >= *b)
    }
}

/// Number of integer points of a bounded polyhedron.
pub fn count_points(p: &Polyhedron) -> Result<u64> {
    if p.is_empty() {
        return Ok(0);
    }
    if !p.is_bounded() {
        return Err(MixvolError::Unbounded);
    }
    let test = IntegerTest::new(p)?;
    if test.infeasible {
        return Ok(0);
    }
    let n = p.dim();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        let min = p.vertices().iter().map(|v| v[i].clone()).min().expect("nonempty");
        let max = p.vertices().iter().map(|v| v[i].clone()).max().expect("nonempty");
        lo.push(min.ceil().to_i64().ok_or(MixvolError::Overflow)?);
        hi.push(max.floor().to_i64().ok_or(MixvolError::Overflow)?);
    }
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(0);
    }
    let mut count = 0u64;
    let mut x = lo.clone();
    loop {
        if test.contains(&x) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// Integer points of `A \ B` minus those of `B \ A`.
pub fn count_points_pair(pair: &PolyhedronPair) -> Result<i64> {
    let g = common_functional(&[pair])?;
    let top = pair.top_level(&g);
    let a = polyhedron::truncate_below(pair.first(), &g, &top)?;
    let b = polyhedron::truncate_below(pair.second(), &g, &top)?;
    let (ca, cb) = (count_points(&a)?, count_points(&b)?);
    Ok(ca as i64 - cb as i64)
}

/// Something the counting formula can add, join and count.
trait Operand: Clone + Sized + Send + Sync {
    fn plus(&self, other: &Self) -> Result<Self>;
    fn join(items: &[Self]) -> Result<Self>;
    fn count(&self) -> Result<Rational>;
    /// Count of the empty sum.
    fn unit_count() -> Rational;
}

impl Operand for PolyhedronPair {
    fn plus(&self, other: &Self) -> Result<Self> {
        self.sum(other)
    }

    fn join(items: &[Self]) -> Result<Self> {
        let dim = items[0].dim();
        let a: Vec<&Polyhedron> = items.iter().map(|p| p.first()).collect();
        let b: Vec<&Polyhedron> = items.iter().map(|p| p.second()).collect();
        PolyhedronPair::new(polyhedron::convex_union(&a, dim)?, polyhedron::convex_union(&b, dim)?)
    }

    fn count(&self) -> Result<Rational> {
        Ok(Rational::from_int(count_points_pair(self)?))
    }

    fn unit_count() -> Rational {
        Rational::zero()
    }
}

impl Operand for Polyhedron {
    fn plus(&self, other: &Self) -> Result<Self> {
        polyhedron::minkowski_sum(self, other)
    }

    fn join(items: &[Self]) -> Result<Self> {
        let refs: Vec<&Polyhedron> = items.iter().collect();
        polyhedron::convex_union(&refs, items[0].dim())
    }

    fn count(&self) -> Result<Rational> {
        Ok(Rational::from_int(count_points(self)? as i64))
    }

    fn unit_count() -> Rational {
        Rational::one()
    }
}

/// All ways to send each element of `cols` to one of `rows` rows with the
/// prescribed row sizes.
fn assignments(cols: &[usize], sizes: &[usize]) -> Vec<Vec<usize>> {
    fn go(cols: &[usize], left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == cols.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                go(cols, left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(cols, &mut sizes.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One labelled term of the counting formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTerm {
    pub columns: Vec<usize>,
    pub row_sizes: Vec<usize>,
    pub signed_count: Rational,
}

fn formula_terms<T: Operand>(grid: &[Vec<Option<T>>]) -> Result<(Vec<CountTerm>, usize)> {
    let n = grid.len();
    let k = grid.first().map_or(0, |r| r.len());
    if n == 0 || k == 0 || grid.iter().any(|r| r.len() != k) {
        return precondition("the grid must be a nonempty rectangle");
    }
    let mut terms = Vec::new();
    for mask in 0u32..(1u32 << k) {
        let cols: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).collect();
        let sign = if (k - cols.len()) % 2 == 0 { Rational::one() } else { -Rational::one() };
        if cols.is_empty() {
            terms.push(CountTerm { columns: vec![], row_sizes: vec![0; n], signed_count: sign * T::unit_count() });
            continue;
        }
        for sizes in compositions(cols.len(), n) {
            let mut pieces: Vec<T> = Vec::new();
            for assign in assignments(&cols, &sizes) {
                let mut acc: Option<T> = None;
                let mut empty = false;
                for (&j, &i) in cols.iter().zip(&assign) {
                    match &grid[i][j] {
                        None => {
                            empty = true;
                            break;
                        }
                        Some(b) => {
                            acc = Some(match acc {
                                None => b.clone(),
                                Some(a) => a.plus(b)?,
                            })
                        }
                    }
                }
                if !empty {
                    pieces.push(acc.expect("nonempty column set"));
                }
            }
            let count = if pieces.is_empty() { Rational::zero() } else { T::join(&pieces)?.count()? };
            terms.push(CountTerm { columns: cols.clone(), row_sizes: sizes, signed_count: &sign * &count });
        }
    }
    Ok((terms, k))
}

/// Mixed volume of the column prisms `B_{1,j} * ... * B_{n,j}` computed by
/// counting lattice points. `grid[i][j]` is the pair in row `i`, column `j`;
/// `None` marks an empty entry.
pub fn prism_mixed_volume_lattice(grid: &[Vec<Option<PolyhedronPair>>]) -> Result<Rational> {
    check_grid_shape(grid.len(), grid.first().map_or(0, |r| r.len()), grid.iter().flatten().flatten().map(|p| p.dim()))?;
    let (terms, k) = formula_terms(grid)?;
    Ok(terms.into_iter().map(|t| t.signed_count).sum::<Rational>() / factorial(k))
}

/// The same formula for bounded lattice polytopes.
pub fn prism_mixed_volume_lattice_polytopes(grid: &[Vec<Option<Polyhedron>>]) -> Result<Rational> {
    check_grid_shape(grid.len(), grid.first().map_or(0, |r| r.len()), grid.iter().flatten().flatten().map(|p| p.dim()))?;
    for p in grid.iter().flatten().flatten() {
        if !p.is_bounded() {
            return Err(MixvolError::Unbounded);
        }
    }
    let (terms, k) = formula_terms(grid)?;
    Ok(terms.into_iter().map(|t| t.signed_count).sum::<Rational>() / factorial(k))
}

/// Terms of the counting formula for pairs, for term-by-term reports.
pub fn prism_lattice_terms(grid: &[Vec<Option<PolyhedronPair>>]) -> Result<Vec<CountTerm>> {
    Ok(formula_terms(grid)?.0)
}

fn check_grid_shape(n: usize, k: usize, mut dims: impl Iterator<Item = usize>) -> Result<()> {
    let Some(m) = dims.next() else {
        return precondition("the grid has no nonempty entries");
    };
    if let Some(d) = dims.find(|&d| d != m) {
        return Err(MixvolError::DimensionMismatch { expected: m, found: d });
    }
    if n == 0 || k + 1 != m + n {
        return precondition(format!("a grid with {n} rows in dimension {m} needs {} columns, found {k}", m + n - 1));
    }
    Ok(())
}
