//! Acceptance criteria 1 to 10. Every comparison is exact; each test prints
//! one line naming its criterion when it passes.

mod support;

use mixvol::invariants::{
    chi_compatible_faces, collection_multiplicity, det_multiplicity, determinantal_encoding, euler_char_det, gz_index,
    milnor_number, orthant_pair, radial_index_det, resultantal_multiplicity, ResEgMode,
};
use mixvol::lattice::prism_mixed_volume_lattice;
use mixvol::mixed::{self, is_convenient, mixed_volume_pairs, pair_volume, stable_mixed_volume_pairs, Method};
use mixvol::rational::factorial;
use mixvol::resultant::{resultant_support, PointConfiguration, SupportConvention};
use mixvol::{MixvolError, Polyhedron, PolyhedronPair, Rational};
use rand::seq::SliceRandom;
use rand::Rng;
use support::*;

fn newton(exps: &[&[i64]]) -> Polyhedron {
    let rows: Vec<Vec<i64>> = exps.iter().map(|e| e.to_vec()).collect();
    Polyhedron::newton(rows[0].len(), &rows).unwrap()
}

fn pass(n: usize, what: &str) {
    println!("criterion {n:>2}: PASS  {what}");
}

// local colength of the staircase ideal, computed once with the oracle below
const STAIRCASE_COLENGTH: usize = 34;
// lengths of O/(f, b f_x - a f_y) for the cusp and the node
const FORM_INDEX_CUSP: usize = 3;
const FORM_INDEX_NODE: usize = 2;

#[test]
fn c01_two_by_three_matrix_multiplicity() {
    let a = newton(&[&[2, 0], &[0, 3]]);
    let b = newton(&[&[5, 0], &[0, 4]]);
    let block = vec![vec![a.clone(); 3], vec![b.clone(); 3]];
    assert_eq!(collection_multiplicity(&[block]).unwrap(), int(34));

    let prism = mixed::prism_pairs(&[orthant_pair(&a).unwrap(), orthant_pair(&b).unwrap()]).unwrap();
    assert_eq!(pair_volume(&prism).unwrap(), Rational::new(17, 3));
    // slice of the prism over t is the complement of (1-t) A + t B
    let slices = integrate_quadratic(|t| {
        let s = Rational::one() - t;
        let (va, vb) = ([(2, 0), (0, 3)], [(5, 0), (0, 4)]);
        let pts: Vec<(Rational, Rational)> = va
            .iter()
            .flat_map(|p| vb.iter().map(move |q| (p, q)))
            .map(|(p, q)| (&s * int(p.0) + t * int(q.0), &s * int(p.1) + t * int(q.1)))
            .collect();
        newton_complement_area(&pts)
    });
    assert_eq!(slices, Rational::new(17, 3));

    // <y^4 (x^2 - y^3), x^2 (x^5 + y^4), y^3 (x^5 + y^4)>
    let gens = vec![
        poly(&[(&[2, 4], 1), (&[0, 7], -1)]),
        poly(&[(&[7, 0], 1), (&[2, 4], 1)]),
        poly(&[(&[5, 3], 1), (&[0, 7], 1)]),
    ];
    assert_eq!(local_colength(&gens, 2), STAIRCASE_COLENGTH);
    pass(1, "collection multiplicity 34, prism pair volume 17/3, staircase colength 34");
}

fn half_line(start: i64) -> PolyhedronPair {
    PolyhedronPair::new(Polyhedron::orthant(1).unwrap(), newton(&[&[start]])).unwrap()
}

fn direct_prism_volume(grid: &[Vec<Option<PolyhedronPair>>]) -> Rational {
    let m = grid.iter().flatten().flatten().next().unwrap().dim();
    let k = grid[0].len();
    let prisms: Vec<PolyhedronPair> = (0..k)
        .map(|j| {
            let layer = |first: bool| -> Vec<Polyhedron> {
                grid.iter()
                    .map(|row| match &row[j] {
                        Some(p) => if first { p.first().clone() } else { p.second().clone() },
                        None => Polyhedron::empty(m),
                    })
                    .collect()
            };
            PolyhedronPair::new(mixed::prism(&layer(true)).unwrap(), mixed::prism(&layer(false)).unwrap()).unwrap()
        })
        .collect();
    mixed_volume_pairs(&prisms, Method::Polarization).unwrap()
}

#[test]
fn c02_lattice_prism_formula() {
    let worked = vec![vec![Some(half_line(1)), Some(half_line(3))], vec![Some(half_line(2)), Some(half_line(1))]];
    assert_eq!(prism_mixed_volume_lattice(&worked).unwrap(), Rational::one());
    assert_eq!(direct_prism_volume(&worked), Rational::one());

    let mut r = rng(2);
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=2);
        let k = m + n - 1;
        let grid: Vec<Vec<Option<PolyhedronPair>>> = (0..n)
            .map(|i| (0..k).map(|_| (i == 0 || r.gen_bool(0.85)).then(|| random_orthant_pair(m, 4, &mut r))).collect())
            .collect();
        assert_eq!(prism_mixed_volume_lattice(&grid).unwrap(), direct_prism_volume(&grid), "{grid:?}");
    }
    pass(2, "lattice prism formula agrees with polarization");
}

#[test]
fn c03_method_agreement() {
    let mut r = rng(3);
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let mut pairs = random_pairs(n, n, 5, &mut r);
        let face = mixed_volume_pairs(&pairs, Method::FaceFormula).unwrap();
        assert_eq!(mixed_volume_pairs(&pairs, Method::Polarization).unwrap(), face);
        assert_eq!(mixed_volume_pairs(&pairs, Method::Truncation).unwrap(), face);
        assert!((&face * &factorial(n)).is_integer(), "{face} is not in Z/{n}!");
        pairs.shuffle(&mut r);
        assert_eq!(mixed_volume_pairs(&pairs, Method::FaceFormula).unwrap(), face);
        pairs.reverse();
        assert_eq!(mixed_volume_pairs(&pairs, Method::FaceFormula).unwrap(), face);
    }
    pass(3, "face formula, polarization and truncation agree");
}

#[test]
fn c04_milnor_table() {
    let mut r = rng(4);
    let check = |equation: Polyhedron, f: Poly, vars: usize, expected: i64| {
        let oracle = jacobian_length(&f, vars) as i64;
        assert_eq!(oracle, expected);
        assert_eq!(milnor_number(&[equation]).unwrap(), int(expected));
    };
    check(newton(&[&[2, 0], &[0, 3]]), generic(&[vec![2, 0], vec![0, 3]], &mut r), 2, 2);
    check(newton(&[&[2, 0], &[0, 2]]), generic(&[vec![2, 0], vec![0, 2]], &mut r), 2, 1);
    check(Polyhedron::simplex_complement(3, 2).unwrap(), generic(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]], &mut r), 3, 1);
    for a in 2..=4u32 {
        for b in 2..=4u32 {
            let f = generic(&[vec![a, 0], vec![0, b]], &mut r);
            check(newton(&[&[a as i64, 0], &[0, b as i64]]), f, 2, ((a - 1) * (b - 1)) as i64);
        }
    }
    // a zero-dimensional complete intersection: mu is the length minus one
    let quadrics = [vec![2, 0], vec![1, 1], vec![0, 2]];
    let length = local_colength(&[generic(&quadrics, &mut r), generic(&quadrics, &mut r)], 2);
    let conic = Polyhedron::simplex_complement(2, 2).unwrap();
    assert_eq!(milnor_number(&[conic.clone(), conic]).unwrap(), int(length as i64 - 1));
    assert_eq!(length, 4);
    pass(4, "Milnor numbers match Jacobian algebra lengths");
}

fn divisor_pair(top: i64, bottom: i64) -> PolyhedronPair {
    let strip = Polyhedron::from_integer_points(2, &[vec![0, 0], vec![1, 0]], vec![vec![0, 1]]).unwrap();
    let section = Polyhedron::from_integer_points(2, &[vec![1, top], vec![0, bottom]], vec![vec![0, 1]]).unwrap();
    PolyhedronPair::new(strip, section).unwrap()
}

#[test]
fn c05_divisor_family() {
    let mut r = rng(5);
    for p in 0..=4 {
        for q in 0..=4 {
            for s in 0..=4 {
                for t in 0..=4 {
                    let pairs = [divisor_pair(p, q), divisor_pair(s, t)];
                    let mv = mixed_volume_pairs(&pairs, Method::FaceFormula).unwrap();
                    assert_eq!(mv, Rational::new((p + t).min(q + s), 2), "{p} {q} {s} {t}");
                    if p + t != q + s {
                        let order = series_det_order(p as usize, q as usize, s as usize, t as usize, &mut r).unwrap();
                        assert_eq!(int(2) * &mv, int(order as i64));
                    }
                }
            }
        }
    }
    pass(5, "pair mixed volumes equal min(p+t, q+r)/2 and the determinant order");
}

fn configurations(sigmas: &[&[i64]]) -> Vec<PointConfiguration> {
    sigmas.iter().map(|s| PointConfiguration::new(s.iter().map(|&a| vec![a]).collect()).unwrap()).collect()
}

#[test]
fn c06_resultant_support() {
    let mut r = rng(6);
    for (d0, d1) in [(1usize, 1usize), (2, 1)] {
        let s0: Vec<i64> = (0..=d0 as i64).collect();
        let s1: Vec<i64> = (0..=d1 as i64).collect();
        let cs = configurations(&[&s0, &s1]);
        let monomials = sylvester_monomials(d0, d1);
        let value = |gamma: &[Vec<i64>]| -> i64 {
            let flat: Vec<i64> = gamma.iter().flatten().copied().collect();
            monomials.iter().map(|e| e.iter().zip(&flat).map(|(&a, &g)| a as i64 * g).sum::<i64>()).min().unwrap()
        };
        let support = |gamma: &[Vec<i64>], c| resultant_support(&cs, gamma, c).unwrap();
        let zero = vec![vec![0; d0 + 1], vec![0; d1 + 1]];
        assert_eq!(support(&zero, SupportConvention::Min), Rational::zero());
        let samples: Vec<Vec<Vec<i64>>> = (0..20)
            .map(|_| vec![(0..=d0).map(|_| r.gen_range(-6..=6)).collect(), (0..=d1).map(|_| r.gen_range(-6..=6)).collect()])
            .collect();
        for (i, gamma) in samples.iter().enumerate() {
            let h = support(gamma, SupportConvention::Min);
            assert_eq!(h, int(value(gamma)), "{gamma:?}");
            let negated: Vec<Vec<i64>> = gamma.iter().map(|g| g.iter().map(|x| -x).collect()).collect();
            assert_eq!(support(gamma, SupportConvention::Max), int(-value(&negated)));
            let tripled: Vec<Vec<i64>> = gamma.iter().map(|g| g.iter().map(|x| 3 * x).collect()).collect();
            assert_eq!(support(&tripled, SupportConvention::Min), int(3) * &h);
            let other = &samples[(i + 1) % samples.len()];
            let sum: Vec<Vec<i64>> = gamma.iter().zip(other).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
            assert!(support(&sum, SupportConvention::Min) >= h + support(other, SupportConvention::Min));
        }
    }
    pass(6, "resultant support matches the Sylvester expansion");
}

#[test]
fn c07_stability_and_convenience() {
    let o = Polyhedron::orthant(2).unwrap();
    let (dx, dy) = (newton(&[&[1, 0]]), newton(&[&[0, 1]]));
    let supports = vec![o.clone(), o.clone()];
    assert_eq!(stable_mixed_volume_pairs(&supports, &[dx.clone(), dy], None).unwrap(), Rational::new(1, 2));
    assert!(matches!(stable_mixed_volume_pairs(&supports, &[dx.clone(), dx], None), Err(MixvolError::NotStable(..))));

    let mut r = rng(7);
    let mut stable = 0;
    for _ in 0..50 {
        let n = r.gen_range(2..=3);
        let supports = vec![Polyhedron::orthant(n).unwrap(); n];
        let sections: Vec<Polyhedron> = (0..n).map(|_| random_newton(n, 3, &mut r)).collect();
        let outcome = stable_mixed_volume_pairs(&supports, &sections, None);
        let convenient = is_convenient(&supports, &sections).unwrap();
        assert_eq!(outcome.is_ok(), convenient, "{sections:?}: {outcome:?}");
        stable += usize::from(convenient);
    }
    // both outcomes occur in the sample
    assert!(stable > 0 && stable < 50);
    pass(7, "stabilization succeeds exactly on convenient collections");
}

#[test]
fn c08_euler_characteristics_and_radial_index() {
    let o = Polyhedron::orthant(2).unwrap();
    let cusp = newton(&[&[2, 0], &[0, 3]]);
    assert_eq!(chi_compatible_faces(std::slice::from_ref(&o), &[cusp]).unwrap(), int(-1));
    assert_eq!(chi_compatible_faces(std::slice::from_ref(&o), &[Polyhedron::simplex_complement(2, 1).unwrap()]).unwrap(), int(1));
    assert_eq!(chi_compatible_faces(std::slice::from_ref(&o), &[Polyhedron::simplex_complement(2, 2).unwrap()]).unwrap(), int(0));
    let mut r = rng(8);
    for _ in 0..25 {
        let f = random_convenient(2, 5, &mut r);
        assert_eq!(chi_compatible_faces(std::slice::from_ref(&o), std::slice::from_ref(&f)).unwrap(), Rational::one() - milnor_number(&[f]).unwrap());
    }

    // a generic 1 x 2 matrix of linear forms cuts out a smooth curve in C^3;
    // a function of degree d meets it in d points
    let linear = Polyhedron::simplex_complement(3, 1).unwrap();
    let columns = [linear.clone(), linear.clone()];
    let unit: Vec<Vec<u32>> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    for d in 1..=2u32 {
        let degree_d: Vec<Vec<u32>> = (0..=d).flat_map(|a| (0..=d - a).map(move |b| vec![a, b, d - a - b])).collect();
        let oracle = local_colength(&[generic(&unit, &mut r), generic(&unit, &mut r), generic(&degree_d, &mut r)], 3);
        let function = Polyhedron::simplex_complement(3, d as i64).unwrap();
        let chi = euler_char_det(1, &function, &columns).unwrap();
        assert_eq!(chi, int(oracle as i64));
        assert_eq!(chi, int(d as i64));
        assert_eq!(radial_index_det(1, &function, &columns).unwrap(), Rational::one() - chi);
    }
    for _ in 0..5 {
        let function = random_convenient(3, 3, &mut r);
        let columns = [random_convenient(3, 2, &mut r), random_convenient(3, 2, &mut r)];
        let chi = euler_char_det(1, &function, &columns).unwrap();
        assert_eq!(radial_index_det(1, &function, &columns).unwrap(), Rational::one() - chi);
    }
    pass(8, "compatible face sums, determinantal Euler characteristics and radial indices");
}

#[test]
fn c09_determinantal_consistency() {
    for n in [2, 3] {
        let s = Polyhedron::simplex_complement(n, 1).unwrap();
        assert_eq!(det_multiplicity(2, &[s.clone(), s.clone(), s]).unwrap(), int(3));
    }
    let mut r = rng(9);
    for _ in 0..25 {
        let (rows, n) = *[(1usize, 2usize), (1, 3), (2, 2), (2, 3), (3, 2)].choose(&mut r).unwrap();
        let k = n + rows - 1;
        let columns: Vec<Polyhedron> = (0..k).map(|_| random_convenient(n, 3, &mut r)).collect();
        let block: Vec<Vec<Polyhedron>> = vec![columns.clone(); rows];
        let collection = collection_multiplicity(std::slice::from_ref(&block)).unwrap();
        assert_eq!(collection, det_multiplicity(rows, &columns).unwrap(), "{rows} x {k} in dimension {n}");
        let (sigmas, components) = determinantal_encoding(&[block]).unwrap();
        assert_eq!(resultantal_multiplicity(&sigmas, &components).unwrap(), collection);
    }
    pass(9, "determinantal, collection and resultantal multiplicities agree");
}

#[test]
fn c10_index_of_a_generic_form() {
    let mut r = rng(10);
    let o = Polyhedron::orthant(2).unwrap();
    // length of O / (f, b f_x - a f_y) for generic constants a, b
    let mut form_length = |f: &Poly| {
        let (a, b) = (r.gen_range(1..1000), r.gen_range(1..1000));
        let minor = add(&scale(&derivative(f, 0), b), &scale(&derivative(f, 1), -a));
        local_colength(&[f.clone(), minor], 2)
    };
    let cusp = generic(&[vec![2, 0], vec![0, 3]], &mut rng(11));
    let node = generic(&[vec![2, 0], vec![0, 2]], &mut rng(12));
    assert_eq!(form_length(&cusp), FORM_INDEX_CUSP);
    assert_eq!(form_length(&node), FORM_INDEX_NODE);
    let value = |eq: Polyhedron| gz_index(&[eq], &[o.clone(), o.clone()], ResEgMode::Verbatim).unwrap();
    assert_eq!(value(newton(&[&[2, 0], &[0, 3]])), int(FORM_INDEX_CUSP as i64));
    assert_eq!(value(newton(&[&[2, 0], &[0, 2]])), int(FORM_INDEX_NODE as i64));
    pass(10, "index of a generic 1-form matches local algebra lengths");
}
