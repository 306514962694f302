//! Polynomials and rational functions whose variables stand for pairs of
//! polyhedra. Such a function is evaluated by expanding it into a power
//! series and reading off the part of total degree equal to the dimension,
//! where a monomial `X_1^a_1 ... X_m^a_m` means the mixed volume of the
//! pairs repeated accordingly.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{precondition, MixvolError, Result};
use crate::mixed::{mixed_volume_pairs, Method, PolyhedronPair};
use crate::rational::Rational;

type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPolynomial {
    vars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl PairPolynomial {
    pub fn zero(vars: usize) -> Self {
        PairPolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = PairPolynomial::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn variable(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = PairPolynomial::zero(vars);
        p.add_term(e, Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` terms; repeated
    /// exponents are added up.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = PairPolynomial::zero(vars);
        for (e, c) in terms {
            if e.len() != vars {
                return Err(MixvolError::DimensionMismatch { expected: vars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.vars]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &PairPolynomial) -> PairPolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Product with every term of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &PairPolynomial, max_degree: u32) -> PairPolynomial {
        let mut out = PairPolynomial::zero(self.vars);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<u32>() > max_degree {
                    continue;
                }
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Series inverse up to `max_degree`; the constant term has to be 1.
    pub fn inverse_truncated(&self, max_degree: u32) -> Result<PairPolynomial> {
        if self.constant_term() != Rational::one() {
            return precondition("the denominator must have constant term 1");
        }
        // 1 / (1 + e) = sum of (-e)^j
        let minus_rest = self.add(&PairPolynomial::constant(self.vars, -Rational::one())).scaled(&-Rational::one());
        let mut power = PairPolynomial::constant(self.vars, Rational::one());
        let mut out = power.clone();
        for _ in 0..max_degree {
            power = power.mul_truncated(&minus_rest, max_degree);
            out = out.add(&power);
        }
        Ok(out)
    }

    fn scaled(&self, s: &Rational) -> PairPolynomial {
        let mut out = PairPolynomial::zero(self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    /// Terms of total degree exactly `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> PairPolynomial {
        PairPolynomial {
            vars: self.vars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == degree).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }
}

/// `numerator / denominator`, the denominator being optional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFunction {
    pub numerator: PairPolynomial,
    pub denominator: Option<PairPolynomial>,
}

impl PairFunction {
    pub fn polynomial(p: PairPolynomial) -> Self {
        PairFunction { numerator: p, denominator: None }
    }

    /// `X_1 ... X_m / ((1 + X_1) ... (1 + X_m))`.
    pub fn product_over_one_plus(vars: usize) -> Self {
        let mut num = PairPolynomial::constant(vars, Rational::one());
        let mut den = num.clone();
        for i in 0..vars {
            let x = PairPolynomial::variable(vars, i);
            num = num.mul_truncated(&x, u32::MAX);
            den = den.mul_truncated(&x.add(&PairPolynomial::constant(vars, Rational::one())), u32::MAX);
        }
        PairFunction { numerator: num, denominator: Some(den) }
    }

    pub fn vars(&self) -> usize {
        self.numerator.vars()
    }

    /// Power series expansion truncated at total degree `max_degree`.
    pub fn expand(&self, max_degree: u32) -> Result<PairPolynomial> {
        match &self.denominator {
            None => Ok(self.numerator.mul_truncated(&PairPolynomial::constant(self.vars(), Rational::one()), max_degree)),
            Some(d) => {
                if d.vars() != self.vars() {
                    return Err(MixvolError::DimensionMismatch { expected: self.vars(), found: d.vars() });
                }
                Ok(self.numerator.mul_truncated(&d.inverse_truncated(max_degree)?, max_degree))
            }
        }
    }
}

/// One monomial of the degree-`n` part together with its mixed volume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTerm {
    pub exponents: Vec<u32>,
    pub coefficient: Rational,
    pub mixed_volume: Rational,
}

/// Monomials of the degree-`n` part of the expansion, each with the mixed
/// volume of the pairs it repeats.
pub fn eval_pair_terms(f: &PairFunction, bindings: &[PolyhedronPair], n: usize) -> Result<Vec<SeriesTerm>> {
    if bindings.len() != f.vars() {
        return Err(MixvolError::Precondition(format!("{} pairs bound to a function of {} variables", bindings.len(), f.vars())));
    }
    if let Some(b) = bindings.iter().find(|b| b.dim() != n) {
        return Err(MixvolError::DimensionMismatch { expected: n, found: b.dim() });
    }
    let part = f.expand(n as u32)?.homogeneous_part(n as u32);
    part.terms()
        .map(|(e, c)| {
            let operands: Vec<PolyhedronPair> =
                e.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(bindings[i].clone()).take(a as usize)).collect();
            let mv = if n == 0 { Rational::one() } else { mixed_volume_pairs(&operands, Method::FaceFormula)? };
            Ok(SeriesTerm { exponents: e.to_vec(), coefficient: c.clone(), mixed_volume: mv })
        })
        .collect()
}

/// Value of a rational function of pairs in dimension `n`.
pub fn eval_pair_function(f: &PairFunction, bindings: &[PolyhedronPair], n: usize) -> Result<Rational> {
    Ok(eval_pair_terms(f, bindings, n)?.iter().map(|t| &t.coefficient * &t.mixed_volume).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Polyhedron;

    fn orthant_pair(exps: &[Vec<i64>]) -> PolyhedronPair {
        let n = exps[0].len();
        PolyhedronPair::new(Polyhedron::orthant(n).unwrap(), Polyhedron::newton(n, exps).unwrap()).unwrap()
    }

    #[test]
    fn inverse_of_one_plus_x() {
        let d = PairPolynomial::from_terms(1, [(vec![0], Rational::one()), (vec![1], Rational::one())]).unwrap();
        let inv = d.inverse_truncated(3).unwrap();
        let got: Vec<(Vec<u32>, Rational)> = inv.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect();
        assert_eq!(got, vec![(vec![0], Rational::one()), (vec![1], -Rational::one()), (vec![2], Rational::one()), (vec![3], -Rational::one())]);
        assert_eq!(d.mul_truncated(&inv, 3), PairPolynomial::constant(1, Rational::one()));
    }

    #[test]
    fn rejects_bad_denominator() {
        let f = PairFunction {
            numerator: PairPolynomial::variable(1, 0),
            denominator: Some(PairPolynomial::constant(1, Rational::from_int(2))),
        };
        assert!(matches!(f.expand(2), Err(MixvolError::Precondition(_))));
    }

    #[test]
    fn cusp_examples() {
        let cusp = orthant_pair(&[vec![2, 0], vec![0, 3]]);
        let f = PairFunction::product_over_one_plus(1);
        assert_eq!(eval_pair_function(&f, std::slice::from_ref(&cusp), 2).unwrap(), Rational::from_int(-3));
        let one = PairFunction::polynomial(PairPolynomial::constant(1, Rational::one()));
        assert_eq!(eval_pair_function(&one, &[cusp], 2).unwrap(), Rational::zero());
    }

    #[test]
    fn product_is_the_mixed_volume() {
        let a = orthant_pair(&[vec![2, 0], vec![0, 3]]);
        let b = orthant_pair(&[vec![5, 0], vec![0, 4]]);
        let xy = PairPolynomial::variable(2, 0).mul_truncated(&PairPolynomial::variable(2, 1), 2);
        let v = eval_pair_function(&PairFunction::polynomial(xy), &[a.clone(), b.clone()], 2).unwrap();
        assert_eq!(v, mixed_volume_pairs(&[a, b], Method::FaceFormula).unwrap());
    }
}
