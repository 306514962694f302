//! Term-by-term reports returned alongside computed values.

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub label: String,
    pub value: Rational,
}

impl Term {
    pub fn new(label: impl Into<String>, value: Rational) -> Self {
        Term { label: label.into(), value }
    }
}

/// A value with the summands that produced it and any non-fatal warnings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Explained {
    pub value: Rational,
    pub terms: Vec<Term>,
    pub warnings: Vec<String>,
}

impl Explained {
    pub fn new(value: Rational, terms: Vec<Term>) -> Self {
        Explained { value, terms, warnings: Vec::new() }
    }

    pub fn bare(value: Rational) -> Self {
        Explained::new(value, Vec::new())
    }
}

/// `{1,3}`-style label for an index set, counting from one.
pub(crate) fn index_label(indices: &[usize]) -> String {
    let inner: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
