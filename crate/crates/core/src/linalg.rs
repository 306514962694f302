//! Exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MixvolError, Result};
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if inv != Rational::one() {
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row · x = 0 for every row}`.
pub fn kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Determinant of a square matrix by fraction-free style elimination.
pub fn det(matrix: &[Vector]) -> Rational {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d = &d * &piv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    d
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(matrix: &[Vector]) -> Option<Vec<Vector>> {
    let n = matrix.len();
    let aug: Vec<Vector> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Scales a rational vector to the primitive integer vector with the same direction.
pub fn primitive(v: &[Rational]) -> Result<Vec<i64>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| {
            let y = if g.is_zero() { x } else { x / &g };
            y.to_i64().ok_or(MixvolError::Overflow)
        })
        .collect()
}

/// A `Z`-basis of the lattice `{x in Z^n : A x = 0}` for an integer matrix `A`.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    // columns of u track the unimodular column operations
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
        for row in m.iter_mut() {
            let t = &row[src] * f;
            row[dst] -= t;
        }
        for row in u.iter_mut() {
            let t = &row[src] * f;
            row[dst] -= t;
        }
    };
    let swap = |m: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in u.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut k = 0;
    for r in 0..m.len() {
        if k == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (k..n).filter(|&j| !m[r][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let &p = nz.iter().min_by_key(|&&j| m[r][j].abs()).unwrap();
            if nz.len() == 1 {
                swap(&mut m, &mut u, k, p);
                k += 1;
                break;
            }
            for &j in &nz {
                if j != p {
                    let f = m[r][j].div_floor(&m[r][p]);
                    col_op(&mut m, &mut u, j, p, &f);
                }
            }
        }
    }
    (k..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

/// A `Z`-basis of `Z^n ∩ span(vectors)`.
pub fn saturated_basis(vectors: &[Vector], n: usize) -> Result<Vec<Vec<i64>>> {
    let perp = kernel(vectors, n);
    let a: Vec<Vec<BigInt>> = perp
        .iter()
        .map(|w| primitive(w).map(|p| p.into_iter().map(BigInt::from).collect()))
        .collect::<Result<_>>()?;
    let basis = if a.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    } else {
        integer_kernel(&a, n)
    };
    basis
        .into_iter()
        .map(|v| v.into_iter().map(|x| x.to_i64().ok_or(MixvolError::Overflow)).collect())
        .collect()
}

/// Whether the integer vectors generate all of `Z^n`.
pub fn generates_lattice(vectors: &[Vec<i64>], n: usize) -> bool {
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut top = 0;
    for c in 0..n {
        loop {
            let nz: Vec<usize> = (top..rows.len()).filter(|&r| !rows[r][c].is_zero()).collect();
            let Some(&p) = nz.iter().min_by_key(|&&r| rows[r][c].abs()) else {
                return false;
            };
            if nz.len() == 1 {
                rows.swap(top, p);
                if !rows[top][c].abs().is_one() {
                    return false;
                }
                top += 1;
                break;
            }
            let pivot = rows[p].clone();
            for &r in nz.iter().filter(|&&r| r != p) {
                let f = rows[r][c].div_floor(&pivot[c]);
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    true
}

/// Coordinates with respect to a lattice basis of a linear subspace.
#[derive(Clone, Debug)]
pub struct LatticeFrame {
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    inverse: Vec<Vector>,
}

impl LatticeFrame {
    pub fn new(basis: Vec<Vec<i64>>, ambient: usize) -> Self {
        let q = basis.len();
        if q == 0 {
            return LatticeFrame { basis, pivots: vec![], inverse: vec![] };
        }
        // rows of the n x q matrix whose columns are the basis vectors
        let rows: Vec<Vector> = (0..ambient).map(|i| basis.iter().map(|b| Rational::from_int(b[i])).collect()).collect();
        let mut chosen: Vec<usize> = Vec::new();
        let mut chosen_rows: Vec<Vector> = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let mut trial = chosen_rows.clone();
            trial.push(row.clone());
            if rank(&trial, q) > chosen_rows.len() {
                chosen.push(i);
                chosen_rows = trial;
                if chosen.len() == q {
                    break;
                }
            }
        }
        let inverse = inverse(&chosen_rows).expect("basis vectors are independent");
        LatticeFrame { basis, pivots: chosen, inverse }
    }

    /// Frame for `Z^n ∩ span(vectors)`.
    pub fn spanned_by(vectors: &[Vector], ambient: usize) -> Result<Self> {
        Ok(LatticeFrame::new(saturated_basis(vectors, ambient)?, ambient))
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Coordinates of a vector assumed to lie in the span of the basis.
    pub fn coords(&self, v: &[Rational]) -> Vector {
        self.inverse
            .iter()
            .map(|row| row.iter().zip(&self.pivots).fold(Rational::zero(), |acc, (a, &p)| acc + a * &v[p]))
            .collect()
    }
}
