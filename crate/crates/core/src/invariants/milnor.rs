//! Milnor numbers of complete intersections and indices of 1-forms on them.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::series::{eval_pair_function, PairFunction};
use super::{axis_subsets, check_newton, orthant_pair, require_axes, sign};
use crate::error::{precondition, MixvolError, Result};
use crate::explain::{index_label, Explained, Term};
use crate::linalg;
use crate::mixed::{mixed_volume_pairs, prism_embedded, Method, PolyhedronPair};
use crate::polyhedron::{self, Polyhedron};
use crate::rational::{factorial, Rational};

/// `m!` times the value of `∏ X_i / (1 + X_i)` with `X_i = (R^m_+, N_i)`.
pub fn mu(sections: &[Polyhedron]) -> Result<Rational> {
    let Some(first) = sections.first() else {
        return precondition("no polyhedra given");
    };
    let m = first.dim();
    let pairs: Vec<PolyhedronPair> = sections.iter().map(orthant_pair).collect::<Result<_>>()?;
    if let Some(p) = pairs.iter().find(|p| p.dim() != m) {
        return Err(MixvolError::DimensionMismatch { expected: m, found: p.dim() });
    }
    let f = PairFunction::product_over_one_plus(pairs.len());
    Ok(factorial(m) * eval_pair_function(&f, &pairs, m)?)
}

/// Milnor number of a generic complete intersection `f_0 = ... = f_k = 0`
/// with the given Newton polyhedra.
pub fn milnor_number(newton: &[Polyhedron]) -> Result<Rational> {
    Ok(milnor_number_explained(newton)?.value)
}

pub fn milnor_number_explained(newton: &[Polyhedron]) -> Result<Explained> {
    let Some(first) = newton.first() else {
        return precondition("no polyhedra given");
    };
    let n = first.dim();
    if newton.len() > n {
        return Err(MixvolError::Precondition(format!("{} equations in {n} variables do not cut out a point", newton.len())));
    }
    for p in newton {
        check_newton(p, n)?;
        orthant_pair(p)?;
    }
    let k = newton.len() as i64 - 1;
    let outer = sign(n as i64 - k - 1);
    let mut terms: Vec<Term> = axis_subsets(n)
        .into_par_iter()
        .map(|axes| {
            let restricted: Vec<Polyhedron> =
                newton.iter().map(|p| polyhedron::restrict_to_axes(p, &axes)).collect::<Result<_>>()?;
            // a polyhedron missing the coordinate plane contributes nothing
            let value = if restricted.iter().any(|p| p.is_empty()) { Rational::zero() } else { mu(&restricted)? };
            Ok(Term::new(format!("axes {}", index_label(&axes)), &outer * &value))
        })
        .collect::<Result<_>>()?;
    terms.push(Term::new("constant", sign(n as i64 - k)));
    let value = terms.iter().map(|t| &t.value).sum();
    Ok(Explained::new(value, terms))
}

/// How the second family of pairs in the index formula is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResEgMode {
    /// Diagonal pairs `(M_j * N_1 * ... * N_k, M_j * N_1 * ... * N_k)`.
    #[default]
    Verbatim,
    /// Pairs `(R^m_+ * N_1 * ... * N_k, M_j * N_1 * ... * N_k)`.
    Alternate,
}

impl FromStr for ResEgMode {
    type Err = MixvolError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verbatim" => Ok(ResEgMode::Verbatim),
            "alternate" => Ok(ResEgMode::Alternate),
            other => Err(MixvolError::Schema(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for ResEgMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResEgMode::Verbatim => "verbatim",
            ResEgMode::Alternate => "alternate",
        })
    }
}

/// Mixed volume in `R^k ⊕ R^m` of the pairs `({0} x R^m_+, {0} x N_i)` and
/// the prism pairs built from `M_j` and the `N_i`.
pub fn res_eg(sections: &[Polyhedron], forms: &[Polyhedron], mode: ResEgMode) -> Result<Rational> {
    let Some(m) = forms.first().map(|p| p.dim()) else {
        return precondition("no form polyhedra given");
    };
    if forms.len() != m {
        return Err(MixvolError::Precondition(format!("{} form polyhedra in dimension {m}", forms.len())));
    }
    for p in sections.iter().chain(forms) {
        check_newton(p, m)?;
    }
    let k = sections.len();
    let total = k + m;
    let mut pairs: Vec<PolyhedronPair> = sections.iter().map(|s| orthant_pair(s)?.embed(k, total)).collect::<Result<_>>()?;
    let orthant = Polyhedron::orthant(m)?;
    let layers = |head: &Polyhedron| -> Result<Polyhedron> {
        let refs: Vec<&Polyhedron> = std::iter::once(head).chain(sections).collect();
        prism_embedded(&refs, 0, k)
    };
    for form in forms {
        let top = layers(form)?;
        let bottom = match mode {
            ResEgMode::Verbatim => top.clone(),
            ResEgMode::Alternate => layers(&orthant)?,
        };
        pairs.push(PolyhedronPair::new(bottom, top)?);
    }
    mixed_volume_pairs(&pairs, Method::FaceFormula)
}

/// Index of the 1-form `w_1 dx_1 + ... + w_n dx_n` on the complete
/// intersection `f_1 = ... = f_k = 0`, from the Newton polyhedra of the
/// `f_i` and of the coefficients `w_j`.
pub fn gz_index(equations: &[Polyhedron], coefficients: &[Polyhedron], mode: ResEgMode) -> Result<Rational> {
    Ok(gz_index_explained(equations, coefficients, mode)?.value)
}

pub fn gz_index_explained(equations: &[Polyhedron], coefficients: &[Polyhedron], mode: ResEgMode) -> Result<Explained> {
    if equations.is_empty() {
        return Err(MixvolError::Unsupported("the index formula degenerates without equations".into()));
    }
    let n = coefficients.len();
    if n == 0 {
        return precondition("no coefficient polyhedra given");
    }
    for p in equations.iter().chain(coefficients) {
        check_newton(p, n)?;
    }
    for (i, p) in equations.iter().enumerate() {
        require_axes(p, &format!("the Newton polyhedron of equation {}", i + 1))?;
    }
    for (j, p) in coefficients.iter().enumerate() {
        require_axes(p, &format!("the Newton polyhedron of coefficient {}", j + 1))?;
    }
    let k = equations.len();
    // Newton polyhedron of x_j w_j
    let forms: Vec<Polyhedron> = coefficients
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let mut e = vec![0; n];
            e[j] = 1;
            w.translate(&linalg::ints(&e))
        })
        .collect();
    let terms: Vec<Term> = axis_subsets(n)
        .into_par_iter()
        .map(|axes| {
            let m = axes.len();
            let restrict = |p: &Polyhedron| polyhedron::restrict_to_axes(p, &axes);
            let ns: Vec<Polyhedron> = equations.iter().map(restrict).collect::<Result<_>>()?;
            let ms: Vec<Polyhedron> = axes.iter().map(|&j| restrict(&forms[j])).collect::<Result<_>>()?;
            let v = res_eg(&ns, &ms, mode)?;
            Ok(Term::new(format!("axes {}", index_label(&axes)), sign((n - m) as i64) * factorial(m + k) * v))
        })
        .collect::<Result<_>>()?;
    let value = terms.iter().map(|t| &t.value).sum();
    Ok(Explained::new(value, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn newton(exps: &[Vec<i64>]) -> Polyhedron {
        Polyhedron::newton(exps[0].len(), exps).unwrap()
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu(&[newton(&[vec![2, 0], vec![0, 3]])]).unwrap(), Rational::from_int(-6));
        assert_eq!(mu(&[newton(&[vec![2]])]).unwrap(), Rational::from_int(2));
        assert_eq!(mu(&[Polyhedron::simplex_complement(3, 2).unwrap()]).unwrap(), Rational::from_int(8));
    }

    #[test]
    fn plane_curves() {
        assert_eq!(milnor_number(&[newton(&[vec![2, 0], vec![0, 3]])]).unwrap(), Rational::from_int(2));
        for a in 2..=4 {
            for b in 2..=4 {
                let v = milnor_number(&[newton(&[vec![a, 0], vec![0, b]])]).unwrap();
                assert_eq!(v, Rational::from_int((a - 1) * (b - 1)));
            }
        }
    }

    #[test]
    fn quadrics_and_conics() {
        assert_eq!(milnor_number(&[Polyhedron::simplex_complement(3, 2).unwrap()]).unwrap(), Rational::one());
        let conic = Polyhedron::simplex_complement(2, 2).unwrap();
        assert_eq!(milnor_number(&[conic.clone(), conic]).unwrap(), Rational::from_int(3));
    }

    #[test]
    fn milnor_terms_for_the_cusp() {
        let e = milnor_number_explained(&[newton(&[vec![2, 0], vec![0, 3]])]).unwrap();
        let values: Vec<Rational> = e.terms.iter().map(|t| t.value.clone()).collect();
        assert_eq!(values, vec![Rational::from_int(-2), Rational::from_int(-3), Rational::from_int(6), Rational::one()]);
    }

    #[test]
    fn index_of_a_generic_form() {
        let o = Polyhedron::orthant(2).unwrap();
        let cusp = newton(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(gz_index(&[cusp], &[o.clone(), o.clone()], ResEgMode::Verbatim).unwrap(), Rational::from_int(3));
        let a1 = Polyhedron::simplex_complement(2, 2).unwrap();
        assert_eq!(gz_index(&[a1], &[o.clone(), o], ResEgMode::Verbatim).unwrap(), Rational::from_int(2));
    }

    #[test]
    fn index_needs_equations() {
        let o = Polyhedron::orthant(2).unwrap();
        assert!(matches!(gz_index(&[], &[o.clone(), o], ResEgMode::Verbatim), Err(MixvolError::Unsupported(_))));
    }

    #[test]
    fn res_eg_without_equations_vanishes() {
        let m = newton(&[vec![1]]);
        assert_eq!(res_eg(&[], &[m], ResEgMode::Verbatim).unwrap(), Rational::zero());
    }
}
