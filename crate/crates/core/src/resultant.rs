//! Point configurations, their codimension and essential subcollections, and
//! the support function of the Newton polytope of the sparse resultant.

use std::fmt;
use std::str::FromStr;

use crate::error::{precondition, MixvolError, Result};
use crate::explain::Explained;
use crate::linalg;
use crate::mixed::{self, cayley, PolyhedronPair};
use crate::polyhedron::Polyhedron;
use crate::rational::{factorial, Rational};

/// Subset scans enumerate `2^I - 1` subcollections.
pub const MAX_CONFIGURATIONS: usize = 12;

/// A finite set of distinct points of `Z^N`, kept in input order so that
/// weights can be attached positionally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<Vec<i64>>,
    ambient: usize,
}

impl PointConfiguration {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return precondition("a point configuration needs at least one point");
        };
        let ambient = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != ambient) {
            return Err(MixvolError::DimensionMismatch { expected: ambient, found: p.len() });
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(MixvolError::Precondition(format!("point {p:?} is listed twice")));
            }
        }
        Ok(PointConfiguration { points, ambient })
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Differences from the first point.
    fn directions(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let base = &self.points[0];
        self.points[1..].iter().map(move |p| p.iter().zip(base).map(|(a, b)| a - b).collect())
    }
}

fn check_collection(cs: &[PointConfiguration]) -> Result<usize> {
    let Some(first) = cs.first() else {
        return precondition("the collection is empty");
    };
    if cs.len() > MAX_CONFIGURATIONS {
        return Err(MixvolError::Unsupported(format!("at most {MAX_CONFIGURATIONS} configurations are scanned")));
    }
    let n = first.ambient();
    if let Some(c) = cs.iter().find(|c| c.ambient() != n) {
        return Err(MixvolError::DimensionMismatch { expected: n, found: c.ambient() });
    }
    Ok(n)
}

/// Dimension of `conv(Σ_1 + ... + Σ_I)`.
fn sum_dimension(cs: &[&PointConfiguration], n: usize) -> usize {
    let rows: Vec<linalg::Vector> = cs.iter().flat_map(|c| c.directions()).map(|d| linalg::ints(&d)).collect();
    linalg::rank(&rows, n)
}

fn codim_of(cs: &[&PointConfiguration], n: usize) -> i64 {
    cs.len() as i64 - sum_dimension(cs, n) as i64
}

fn members(cs: &[PointConfiguration], mask: u32) -> Vec<&PointConfiguration> {
    (0..cs.len()).filter(|i| mask >> i & 1 == 1).map(|i| &cs[i]).collect()
}

/// Number of configurations minus the dimension of their Minkowski sum.
pub fn codim_config(cs: &[PointConfiguration]) -> Result<i64> {
    let n = check_collection(cs)?;
    let all: Vec<&PointConfiguration> = cs.iter().collect();
    Ok(codim_of(&all, n))
}

/// Codimension of the resultantal variety: the largest codimension of a
/// nonempty subcollection.
pub fn resultantal_codim(cs: &[PointConfiguration]) -> Result<i64> {
    let n = check_collection(cs)?;
    Ok((1u32..1 << cs.len()).map(|m| codim_of(&members(cs, m), n)).max().expect("nonempty collection"))
}

/// Smallest subcollection reaching the resultantal codimension, as sorted
/// indices. Ties between subsets of equal size go to the lexicographically first.
pub fn essential_subcollection(cs: &[PointConfiguration]) -> Result<Vec<usize>> {
    let n = check_collection(cs)?;
    let target = resultantal_codim(cs)?;
    let best = (1u32..1 << cs.len())
        .filter(|&m| codim_of(&members(cs, m), n) == target)
        .min_by_key(|&m| (m.count_ones(), (0..cs.len()).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
        .expect("the full collection reaches the maximum");
    Ok((0..cs.len()).filter(|i| best >> i & 1 == 1).collect())
}

/// Every proper subcollection has strictly smaller codimension.
pub fn is_essential(cs: &[PointConfiguration]) -> Result<bool> {
    let n = check_collection(cs)?;
    let full = (1u32 << cs.len()) - 1;
    let top = codim_of(&members(cs, full), n);
    Ok((1u32..full).all(|m| codim_of(&members(cs, m), n) < top))
}

/// Whether `(Σ_1 + ... + Σ_I) x {1}` generates `Z^N ⊕ Z`, which holds
/// exactly when the differences inside the configurations generate `Z^N`.
pub fn generates_lattice(cs: &[PointConfiguration]) -> Result<bool> {
    let n = check_collection(cs)?;
    let dirs: Vec<Vec<i64>> = cs.iter().flat_map(|c| c.directions()).collect();
    Ok(linalg::generates_lattice(&dirs, n))
}

/// Which extremum of the support function is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SupportConvention {
    /// Minimum of `γ` over the Newton polytope of the resultant.
    #[default]
    Min,
    /// Maximum of `γ`, equal to minus the minimum of `-γ`.
    Max,
}

impl FromStr for SupportConvention {
    type Err = MixvolError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(SupportConvention::Min),
            "max" => Ok(SupportConvention::Max),
            other => Err(MixvolError::Schema(format!("unknown convention `{other}`"))),
        }
    }
}

impl fmt::Display for SupportConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportConvention::Min => "min",
            SupportConvention::Max => "max",
        })
    }
}

/// Cayley pair `(conv(Σ) x R_+, conv ∪ {a} x [w_a, ∞))` in `R^N ⊕ R`.
fn weighted_cayley_pair(c: &PointConfiguration, weights: &[i64]) -> Result<PolyhedronPair> {
    let half_line = Polyhedron::orthant(1)?;
    let plain: Vec<&Polyhedron> = vec![&half_line; c.len()];
    let shifted: Vec<Polyhedron> = weights.iter().map(|&w| Polyhedron::newton(1, &[vec![w]])).collect::<Result<_>>()?;
    let shifted_refs: Vec<&Polyhedron> = shifted.iter().collect();
    PolyhedronPair::new(cayley(c.points(), &plain)?, cayley(c.points(), &shifted_refs)?)
}

/// Support function of the resultant polytope at the weight `γ`, given as
/// one weight per point of every configuration.
pub fn resultant_support(cs: &[PointConfiguration], gamma: &[Vec<i64>], convention: SupportConvention) -> Result<Rational> {
    Ok(resultant_support_explained(cs, gamma, convention)?.value)
}

pub fn resultant_support_explained(cs: &[PointConfiguration], gamma: &[Vec<i64>], convention: SupportConvention) -> Result<Explained> {
    let n = check_collection(cs)?;
    if cs.len() != n + 1 {
        return Err(MixvolError::Precondition(format!("{} configurations in Z^{n}; the resultant needs {}", cs.len(), n + 1)));
    }
    if gamma.len() != cs.len() {
        return Err(MixvolError::Precondition(format!("{} weight lists for {} configurations", gamma.len(), cs.len())));
    }
    for (c, w) in cs.iter().zip(gamma) {
        if w.len() != c.len() {
            return Err(MixvolError::Precondition(format!("{} weights for a configuration of {} points", w.len(), c.len())));
        }
    }
    let all: Vec<&PointConfiguration> = cs.iter().collect();
    if sum_dimension(&all, n) != n {
        return precondition("the Minkowski sum of the configurations is not full-dimensional");
    }
    if !is_essential(cs)? {
        return precondition("the collection is not essential; reduce it to its essential subcollection first");
    }
    let mut warnings = Vec::new();
    if !generates_lattice(cs)? {
        warnings.push("the configurations do not generate the integer lattice".to_string());
    }
    let weights: Vec<Vec<i64>> = match convention {
        SupportConvention::Min => gamma.to_vec(),
        SupportConvention::Max => gamma.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
    };
    let pairs: Vec<PolyhedronPair> = cs.iter().zip(&weights).map(|(c, w)| weighted_cayley_pair(c, w)).collect::<Result<_>>()?;
    let mut report = mixed::scaled_mixed_volume_pairs(&pairs, &factorial(n + 1))?;
    if convention == SupportConvention::Max {
        report.value = -report.value;
        for t in &mut report.terms {
            t.value = -t.value.clone();
        }
    }
    report.warnings = warnings;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(pts: &[&[i64]]) -> PointConfiguration {
        PointConfiguration::new(pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn codimensions() {
        let seg = config(&[&[0], &[1]]);
        assert_eq!(codim_config(&[seg.clone(), seg.clone()]).unwrap(), 1);
        assert_eq!(resultantal_codim(&[seg.clone(), seg.clone()]).unwrap(), 1);
        let square = config(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(codim_config(&[square]).unwrap(), -1);
    }

    #[test]
    fn segment_segment_polygon() {
        let s = config(&[&[0, 0], &[1, 0]]);
        let poly = config(&[&[0, 0], &[1, 0], &[0, 1]]);
        let cs = [s.clone(), s.clone(), poly];
        assert_eq!(codim_config(&cs[..2]).unwrap(), 1);
        assert_eq!(codim_config(&cs).unwrap(), 1);
        assert_eq!(resultantal_codim(&cs).unwrap(), 1);
        assert_eq!(essential_subcollection(&cs).unwrap(), vec![0, 1]);
        assert!(!is_essential(&cs).unwrap());
        assert!(is_essential(&cs[..2]).unwrap());
    }

    #[test]
    fn point_and_segment() {
        let cs = [config(&[&[0]]), config(&[&[0], &[1]])];
        assert_eq!(essential_subcollection(&cs).unwrap(), vec![0]);
    }

    #[test]
    fn two_linear_forms() {
        let seg = config(&[&[0], &[1]]);
        let cs = [seg.clone(), seg];
        let at = |g: [i64; 4]| resultant_support(&cs, &[vec![g[0], g[1]], vec![g[2], g[3]]], SupportConvention::Min).unwrap();
        assert_eq!(at([0, 0, 0, 0]), Rational::zero());
        assert_eq!(at([1, 0, 0, 0]), Rational::zero());
        assert_eq!(at([1, 1, 1, 1]), Rational::from_int(2));
        // monomials a0 b1 and a1 b0
        assert_eq!(at([3, -1, 2, 5]), Rational::from_int(1));
        let max = resultant_support(&cs, &[vec![3, -1], vec![2, 5]], SupportConvention::Max).unwrap();
        assert_eq!(max, Rational::from_int(8));
    }

    #[test]
    fn rejects_non_essential_input() {
        let cs = [config(&[&[0]]), config(&[&[0], &[1]])];
        assert!(matches!(
            resultant_support(&cs, &[vec![0], vec![0, 0]], SupportConvention::Min),
            Err(MixvolError::Precondition(_))
        ));
    }

    #[test]
    fn warns_about_sublattices() {
        let seg = config(&[&[0], &[2]]);
        let e = resultant_support_explained(&[seg.clone(), seg], &[vec![0, 0], vec![0, 0]], SupportConvention::Min).unwrap();
        assert_eq!(e.warnings.len(), 1);
    }
}
