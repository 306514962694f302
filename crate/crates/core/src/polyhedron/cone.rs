//! Double description method for pointed polyhedral cones.

use fixedbitset::FixedBitSet;

use crate::error::{MixvolError, Result};
use crate::linalg::{self, dot, Vector};
use crate::rational::Rational;

/// An extreme ray together with the constraints it makes tight.
#[derive(Clone, Debug)]
pub struct ExtremeRay {
    pub direction: Vector,
    pub tight: FixedBitSet,
}

/// Rescales a nonzero vector to a primitive integer vector.
pub(crate) fn normalize(v: &[Rational]) -> Result<Vector> {
    Ok(linalg::ints(&linalg::primitive(v)?))
}

/// Extreme rays of `{y : c · y >= 0 for every constraint c}`.
///
/// The constraint matrix must have full column rank, which makes the cone
/// pointed; otherwise `NotPointed` is returned.
pub fn extreme_rays(constraints: &[Vector], dim: usize) -> Result<Vec<ExtremeRay>> {
    let m = constraints.len();
    // pick a basis of rows
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vector> = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(c.clone());
        let (r, _) = linalg::rref(&trial, dim);
        if r.len() > echelon.len() {
            echelon = r;
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return Err(MixvolError::NotPointed);
    }
    let square: Vec<Vector> = basis.iter().map(|&i| constraints[i].clone()).collect();
    let inv = linalg::inverse(&square).expect("independent rows");
    let mut rays: Vec<ExtremeRay> = Vec::with_capacity(dim);
    for j in 0..dim {
        let col: Vector = inv.iter().map(|row| row[j].clone()).collect();
        let mut tight = FixedBitSet::with_capacity(m);
        for (k, &b) in basis.iter().enumerate() {
            if k != j {
                tight.insert(b);
            }
        }
        rays.push(ExtremeRay { direction: normalize(&col)?, tight });
    }
    let mut processed = FixedBitSet::with_capacity(m);
    for &b in &basis {
        processed.insert(b);
    }
    for (i, c) in constraints.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        processed.insert(i);
        let values: Vec<Rational> = rays.iter().map(|r| dot(c, &r.direction)).collect();
        let (mut pos, mut zero, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for (k, v) in values.iter().enumerate() {
            match v.signum() {
                1 => pos.push(k),
                0 => zero.push(k),
                _ => neg.push(k),
            }
        }
        if neg.is_empty() {
            for &k in &zero {
                rays[k].tight.insert(i);
            }
            continue;
        }
        let mut next: Vec<ExtremeRay> = Vec::with_capacity(pos.len() + zero.len() + pos.len() * neg.len());
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].tight.clone();
                common.intersect_with(&rays[n].tight);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(k, r)| k != p && k != n && common.is_subset(&r.tight));
                if blocked {
                    continue;
                }
                let a = &values[p];
                let b = -&values[n];
                let dir: Vector = rays[n]
                    .direction
                    .iter()
                    .zip(&rays[p].direction)
                    .map(|(x, y)| a * x + &b * y)
                    .collect();
                common.insert(i);
                next.push(ExtremeRay { direction: normalize(&dir)?, tight: common });
            }
        }
        for &k in &zero {
            let mut r = rays[k].clone();
            r.tight.insert(i);
            next.push(r);
        }
        for &k in &pos {
            next.push(rays[k].clone());
        }
        rays = next;
    }
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;

    #[test]
    fn square_cone_has_four_rays() {
        // cone over the square [-1,1]^2 at height 1: constraints t +- x >= 0, t +- y >= 0
        let cons = vec![ints(&[1, 1, 0]), ints(&[1, -1, 0]), ints(&[1, 0, 1]), ints(&[1, 0, -1])];
        let rays = extreme_rays(&cons, 3).unwrap();
        let mut dirs: Vec<Vec<i64>> = rays.iter().map(|r| r.direction.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
        dirs.sort();
        assert_eq!(dirs, vec![vec![1, -1, -1], vec![1, -1, 1], vec![1, 1, -1], vec![1, 1, 1]]);
        for r in &rays {
            assert_eq!(r.tight.count_ones(..), 2);
        }
    }

    #[test]
    fn rank_deficient_is_not_pointed() {
        let cons = vec![ints(&[1, 0]), ints(&[2, 0])];
        assert_eq!(extreme_rays(&cons, 2).unwrap_err(), MixvolError::NotPointed);
    }

    #[test]
    fn redundant_constraints_are_harmless() {
        let cons = vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1]), ints(&[2, 1])];
        let rays = extreme_rays(&cons, 2).unwrap();
        assert_eq!(rays.len(), 2);
    }
}
