//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls into the geometry of the library
//! except to build inputs.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use mixvol::{Polyhedron, PolyhedronPair, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---- polynomials over F_p and local colengths ----

pub const PRIME: u64 = 2_147_483_647;

/// Sparse polynomial with coefficients in `F_p`, keyed by exponent vectors.
pub type Poly = BTreeMap<Vec<u32>, u64>;

fn reduce(c: i64) -> u64 {
    c.rem_euclid(PRIME as i64) as u64
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    powmod(a, PRIME - 2)
}

pub fn poly(terms: &[(&[u32], i64)]) -> Poly {
    let mut out = Poly::new();
    for (e, c) in terms {
        let slot = out.entry(e.to_vec()).or_insert(0);
        *slot = (*slot + reduce(*c)) % PRIME;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(e.clone()).or_insert(0);
        *slot = (*slot + c) % PRIME;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn scale(a: &Poly, s: i64) -> Poly {
    let s = reduce(s);
    let mut out: Poly = a.iter().map(|(e, c)| (e.clone(), mulmod(*c, s))).collect();
    out.retain(|_, c| *c != 0);
    out
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = (*slot + mulmod(*ca, *cb)) % PRIME;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn derivative(a: &Poly, var: usize) -> Poly {
    let mut out = Poly::new();
    for (e, c) in a {
        if e[var] > 0 {
            let mut d = e.clone();
            d[var] -= 1;
            out.insert(d, mulmod(*c, e[var] as u64 % PRIME));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Polynomial with the given monomials and random nonzero coefficients.
pub fn generic(monomials: &[Vec<u32>], r: &mut impl Rng) -> Poly {
    monomials.iter().map(|m| (m.clone(), r.gen_range(1..PRIME))).collect()
}

fn monomials_below(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, nvars: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            go(prefix, nvars, left - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if degree > 0 {
        go(&mut Vec::new(), nvars, degree - 1, &mut out);
    }
    out
}

/// `dim k[x] / (I + m^level)`.
fn truncated_colength(gens: &[Poly], nvars: usize, level: u32) -> usize {
    let monomials = monomials_below(nvars, level);
    let index: HashMap<&Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let width = monomials.len();
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    for g in gens {
        let order = g.keys().map(|e| e.iter().sum::<u32>()).min().unwrap_or(level);
        for m in &monomials {
            if m.iter().sum::<u32>() + order >= level {
                continue;
            }
            let mut row = vec![0u64; width];
            for (e, c) in g {
                let shifted: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&i) = index.get(&shifted) {
                    row[i] = *c;
                }
            }
            // reduce against existing pivots in column order
            while let Some(lead) = row.iter().position(|&c| c != 0) {
                match pivots.get(&lead) {
                    Some(p) => {
                        let f = row[lead];
                        for (x, y) in row.iter_mut().zip(p) {
                            *x = (*x + PRIME - mulmod(f, *y)) % PRIME;
                        }
                    }
                    None => {
                        let s = inv(row[lead]);
                        row.iter_mut().for_each(|x| *x = mulmod(*x, s));
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
    }
    width - pivots.len()
}

/// Length of `O / (gens)` at the origin, for an ideal that is primary to the
/// maximal ideal there. Stops once two consecutive truncations agree, which
/// by Nakayama means the maximal ideal power already lies in the ideal.
pub fn local_colength(gens: &[Poly], nvars: usize) -> usize {
    let mut prev = truncated_colength(gens, nvars, 1);
    for level in 2..64 {
        let d = truncated_colength(gens, nvars, level);
        if d == prev {
            return d;
        }
        prev = d;
    }
    panic!("ideal is not primary to the maximal ideal");
}

/// Milnor number of a hypersurface as the length of its Jacobian algebra.
pub fn jacobian_length(f: &Poly, nvars: usize) -> usize {
    let partials: Vec<Poly> = (0..nvars).map(|i| derivative(f, i)).collect();
    local_colength(&partials, nvars)
}

// ---- resultants ----

/// Exponent vectors, over `(a_0..a_d0, b_0..b_d1)`, of the monomials of the
/// Sylvester resultant of `a_0 + ... + a_d0 x^d0` and `b_0 + ... + b_d1 x^d1`.
pub fn sylvester_monomials(d0: usize, d1: usize) -> Vec<Vec<u32>> {
    let size = d0 + d1;
    let vars = d0 + d1 + 2;
    // entry (row, col) names a coefficient variable or is zero
    let entry = |row: usize, col: usize| -> Option<usize> {
        if row < d1 {
            (col >= row && col - row <= d0).then(|| col - row)
        } else {
            let shift = row - d1;
            (col >= shift && col - shift <= d1).then(|| d0 + 1 + col - shift)
        }
    };
    let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
    let mut perm: Vec<usize> = (0..size).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut e = vec![0u32; vars];
        for (row, &col) in p.iter().enumerate() {
            match entry(row, col) {
                Some(v) => e[v] += 1,
                None => return,
            }
        }
        *acc.entry(e).or_insert(0) += parity(p);
    });
    let mut out: Vec<Vec<u32>> = acc.into_iter().filter(|(_, c)| *c != 0).map(|(e, _)| e).collect();
    out.sort();
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn parity(p: &[usize]) -> i64 {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

// ---- series ----

/// Order at 0 of `det [[x^p u_1, x^q u_2], [x^r u_3, x^t u_4]]` for random
/// unit series `u_i` truncated at a generous degree.
pub fn series_det_order(p: usize, q: usize, r: usize, t: usize, rng: &mut impl Rng) -> Option<usize> {
    const LEN: usize = 24;
    let mut series = |shift: usize| -> Vec<i64> {
        let mut s = vec![0i64; LEN];
        for (i, c) in s.iter_mut().enumerate().skip(shift) {
            *c = if i == shift { rng.gen_range(1..=9) } else { rng.gen_range(-9..=9) };
        }
        s
    };
    let (a, b, c, d) = (series(p), series(q), series(r), series(t));
    let product = |x: &[i64], y: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; LEN];
        for i in 0..LEN {
            for j in 0..LEN - i {
                out[i + j] += x[i] * y[j];
            }
        }
        out
    };
    let ad = product(&a, &d);
    let bc = product(&b, &c);
    (0..LEN).find(|&i| ad[i] != bc[i])
}

// ---- exact plane areas ----

type Point = (Rational, Rational);

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Area of the positive quadrant below the Newton boundary of
/// `conv(points) + R^2_+`, assuming it meets both axes.
pub fn newton_complement_area(points: &[Point]) -> Rational {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut hull: Vec<Point> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p).is_positive() {
            hull.pop();
        }
        hull.push(p);
    }
    // keep the strictly descending part: the compact edges
    let mut boundary = vec![hull[0].clone()];
    for p in &hull[1..] {
        if p.1 < boundary.last().unwrap().1 {
            boundary.push(p.clone());
        } else {
            break;
        }
    }
    assert!(boundary[0].0.is_zero() && boundary.last().unwrap().1.is_zero(), "polyhedron must meet both axes");
    let mut polygon = vec![(Rational::zero(), Rational::zero())];
    polygon.extend(boundary.into_iter().rev());
    let twice: Rational = (0..polygon.len())
        .map(|i| {
            let (a, b) = (&polygon[i], &polygon[(i + 1) % polygon.len()]);
            &a.0 * &b.1 - &b.0 * &a.1
        })
        .sum();
    twice / Rational::from_int(2)
}

/// `∫_0^1 area(t) dt` for a quadratic `area`, by Simpson's rule. Panics when
/// the two half-interval estimates disagree with the whole one.
pub fn integrate_quadratic(area: impl Fn(&Rational) -> Rational) -> Rational {
    let simpson = |a: Rational, b: Rational| {
        let mid = (&a + &b) / Rational::from_int(2);
        (&b - &a) * (area(&a) + Rational::from_int(4) * area(&mid) + area(&b)) / Rational::from_int(6)
    };
    let half = Rational::new(1, 2);
    let whole = simpson(Rational::zero(), Rational::one());
    let split = simpson(Rational::zero(), half.clone()) + simpson(half, Rational::one());
    assert_eq!(whole, split, "slice area is not quadratic");
    whole
}

// ---- random instances ----

/// Newton polyhedron in `R^n_+` meeting every axis: one point per axis and a
/// few extra points, all coordinates at most `max`.
pub fn random_convenient(n: usize, max: i64, r: &mut impl Rng) -> Polyhedron {
    let mut pts: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = r.gen_range(1..=max);
            e
        })
        .collect();
    for _ in 0..r.gen_range(0..=2) {
        pts.push((0..n).map(|_| r.gen_range(0..=max)).collect());
    }
    Polyhedron::newton(n, &pts).unwrap()
}

/// Newton polyhedron of a few random points; it may miss axes.
pub fn random_newton(n: usize, max: i64, r: &mut impl Rng) -> Polyhedron {
    let count = r.gen_range(1..=3);
    let pts: Vec<Vec<i64>> = (0..count).map(|_| (0..n).map(|_| r.gen_range(0..=max)).collect()).collect();
    Polyhedron::newton(n, &pts).unwrap()
}

/// Lattice polytope spanned by a few random points.
pub fn random_polytope(n: usize, max: i64, r: &mut impl Rng) -> Polyhedron {
    let count = r.gen_range(1..=n + 2);
    let pts: Vec<Vec<i64>> = (0..count).map(|_| (0..n).map(|_| r.gen_range(0..=max)).collect()).collect();
    Polyhedron::from_integer_points(n, &pts, vec![]).unwrap()
}

/// `count` pairs with one common support cone: pairs of polytopes, or pairs
/// of Newton polyhedra meeting every axis.
pub fn random_pairs(n: usize, count: usize, max: i64, r: &mut impl Rng) -> Vec<PolyhedronPair> {
    let bounded = r.gen_bool(0.5);
    (0..count)
        .map(|_| {
            let (a, b) = if bounded {
                (random_polytope(n, max, r), random_polytope(n, max, r))
            } else {
                (random_convenient(n, max, r), random_convenient(n, max, r))
            };
            PolyhedronPair::new(a, b).unwrap()
        })
        .collect()
}

/// `(R^n_+, Δ)` for a random convenient `Δ`.
pub fn random_orthant_pair(n: usize, max: i64, r: &mut impl Rng) -> PolyhedronPair {
    PolyhedronPair::new(Polyhedron::orthant(n).unwrap(), random_convenient(n, max, r)).unwrap()
}

/// `conv(exponents) + R^n_+` as a polynomial with random coefficients.
pub fn generic_polynomial(exponents: &[Vec<u32>], r: &mut impl Rng) -> Poly {
    generic(exponents, r)
}

pub fn int(n: i64) -> Rational {
    Rational::from_int(n)
}
