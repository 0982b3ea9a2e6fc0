//! Elements of `H ⊗ H` and `H ⊗ H ⊗ H` as sparse maps from monomial tuples.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::Monomial;
use crate::error::Result;
use crate::format::{self, join_signed, Format, Symbol};
use crate::poly::Polynomial;
use crate::rational::{format_rational, parse_rational, Rational};

fn bump<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Sparse element of `H ⊗ H`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor<M: Monomial> {
    terms: BTreeMap<(M, M), Rational>,
}

impl<M: Monomial> Default for Tensor<M> {
    fn default() -> Self {
        Tensor {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Monomial> Tensor<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 ⊗ 1`.
    pub fn one() -> Self {
        let mut t = Self::zero();
        t.add_term(M::one(), M::one(), Rational::from_integer(1.into()));
        t
    }

    /// `p ⊗ q`.
    pub fn simple(p: &Polynomial<M>, q: &Polynomial<M>) -> Self {
        let mut t = Self::zero();
        for (a, ca) in p.terms() {
            for (b, cb) in q.terms() {
                t.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        t
    }

    pub fn add_term(&mut self, left: M, right: M, c: Rational) {
        bump(&mut self.terms, (left, right), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &M, &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &M, right: &M) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), -c);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c * r);
        }
        out
    }

    /// Leg-wise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a.mul(a2), b.mul(b2), c * c2);
            }
        }
        out
    }

    /// Multiplication `m(a ⊗ b) = ab`.
    pub fn multiply(&self) -> Polynomial<M> {
        Polynomial::from_terms(self.terms.iter().map(|((a, b), c)| (a.mul(b), c.clone())))
    }

    /// `(f ⊗ g)` for linear maps given on monomials.
    pub fn map_legs<F, G>(&self, f: F, g: G) -> Self
    where
        F: Fn(&M) -> Polynomial<M>,
        G: Fn(&M) -> Polynomial<M>,
    {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out = out.add(&Tensor::simple(&f(a), &g(b)).scale(c));
        }
        out
    }

    /// Applies a functional to the left leg: `(φ ⊗ id)`.
    pub fn contract_left<F: Fn(&M) -> Rational>(&self, phi: F) -> Polynomial<M> {
        Polynomial::from_terms(self.terms.iter().map(|((a, b), c)| (b.clone(), c * phi(a))))
    }

    /// Applies a functional to the right leg: `(id ⊗ φ)`.
    pub fn contract_right<F: Fn(&M) -> Rational>(&self, phi: F) -> Polynomial<M> {
        Polynomial::from_terms(self.terms.iter().map(|((a, b), c)| (a.clone(), c * phi(b))))
    }

    /// Left legs collected by right leg, in canonical order of the right leg.
    pub fn by_right(&self) -> BTreeMap<M, Polynomial<M>> {
        let mut out: BTreeMap<M, Polynomial<M>> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            out.entry(b.clone())
                .or_default()
                .add_term(a.clone(), c.clone());
        }
        out
    }

    /// Leg-wise relabelling of monomials (e.g. abelianization).
    pub fn map_monomials<N: Monomial, F: Fn(&M) -> N>(&self, f: F) -> Tensor<N> {
        let mut out = Tensor::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(f(a), f(b), c.clone());
        }
        out
    }

    /// `X4 (x) 1 + (6*X1*X2 + 4*X2*X1 + 5*X3) (x) X1 + ...`
    pub fn to_text(&self, sym: Symbol) -> String {
        self.render_grouped(
            " (x) ",
            |p| format::to_text(p, sym),
            |m| format::monomial_text(m, sym),
        )
    }

    pub fn to_latex(&self, sym: Symbol) -> String {
        self.render_grouped(
            " \\otimes ",
            |p| format::to_latex(p, sym),
            |m| format::monomial_latex(m, sym),
        )
    }

    fn render_grouped<P, Q>(&self, otimes: &str, poly: P, mono: Q) -> String
    where
        P: Fn(&Polynomial<M>) -> String,
        Q: Fn(&M) -> String,
    {
        join_signed(self.by_right().into_iter().map(|(right, left)| {
            let r = mono(&right);
            if left.len() == 1 {
                let (m, c) = left.terms().next().expect("one term");
                let single = Polynomial::monomial(m.clone(), c.abs());
                (
                    c < &Rational::zero(),
                    format!("{}{otimes}{r}", poly(&single)),
                )
            } else {
                (false, format!("({}){otimes}{r}", poly(&left)))
            }
        }))
    }

    pub fn to_doc(&self, sym: Symbol) -> TensorDoc {
        TensorDoc {
            algebra: format::to_doc(&Polynomial::<M>::zero(), sym).algebra,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| TensorTermDoc {
                    coeff: format_rational(c),
                    left: a.letters().iter().map(|l| l.code() as i64).collect(),
                    right: b.letters().iter().map(|l| l.code() as i64).collect(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &TensorDoc) -> Result<Self> {
        let word = |codes: &[i64]| -> Result<M> {
            Ok(M::from_letters(
                codes
                    .iter()
                    .map(|&c| crate::alphabet::Letter::from_code(c))
                    .collect::<Result<Vec<_>>>()?,
            ))
        };
        let mut t = Self::zero();
        for term in &doc.terms {
            t.add_term(
                word(&term.left)?,
                word(&term.right)?,
                parse_rational(&term.coeff)?,
            );
        }
        Ok(t)
    }

    pub fn render(&self, sym: Symbol, fmt: Format) -> String {
        match fmt {
            Format::Text => self.to_text(sym),
            Format::Latex => self.to_latex(sym),
            Format::Json => serde_json::to_string_pretty(&self.to_doc(sym)).expect("serializable"),
        }
    }
}

/// Structured form of a tensor: `{coeff, left, right}` records, letters as
/// signed index codes as in the polynomial format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDoc {
    pub algebra: String,
    pub terms: Vec<TensorTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermDoc {
    pub coeff: String,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

/// Sparse element of `H ⊗ H ⊗ H`, used for coassociativity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3<M: Monomial> {
    terms: BTreeMap<(M, M, M), Rational>,
}

impl<M: Monomial> Default for Tensor3<M> {
    fn default() -> Self {
        Tensor3 {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Monomial> Tensor3<M> {
    pub fn add_term(&mut self, a: M, b: M, c: M, coeff: Rational) {
        bump(&mut self.terms, (a, b, c), coeff);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &M, &M, &Rational)> {
        self.terms.iter().map(|((a, b, c), r)| (a, b, c, r))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b, c), r) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone(), -r);
        }
        out
    }

    /// `Σ Δ(a) ⊗ b` given `t = Σ a ⊗ b`.
    pub fn expand_left<F: Fn(&M) -> Tensor<M>>(t: &Tensor<M>, delta: F) -> Self {
        let mut out = Self::default();
        for (a, b, c) in t.terms() {
            for (a1, a2, c2) in delta(a).terms() {
                out.add_term(a1.clone(), a2.clone(), b.clone(), c * c2);
            }
        }
        out
    }

    /// `Σ a ⊗ Δ(b)` given `t = Σ a ⊗ b`.
    pub fn expand_right<F: Fn(&M) -> Tensor<M>>(t: &Tensor<M>, delta: F) -> Self {
        let mut out = Self::default();
        for (a, b, c) in t.terms() {
            for (b1, b2, c2) in delta(b).terms() {
                out.add_term(a.clone(), b1.clone(), b2.clone(), c * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;
    use crate::poly::NCPoly;
    use crate::rational::rat;

    #[test]
    fn grouped_text() {
        let mut t = Tensor::<Word>::zero();
        t.add_term(Word::from_indices(&[2]), Word::empty(), rat(1));
        t.add_term(Word::from_indices(&[1]), Word::from_indices(&[1]), rat(3));
        t.add_term(Word::empty(), Word::from_indices(&[2]), rat(1));
        assert_eq!(t.to_text(Symbol::X), "X2 (x) 1 + 3*X1 (x) X1 + 1 (x) X2");
        t.add_term(Word::from_indices(&[2]), Word::from_indices(&[1]), rat(-1));
        assert_eq!(
            t.to_text(Symbol::X),
            "X2 (x) 1 + (-X2 + 3*X1) (x) X1 + 1 (x) X2"
        );
        assert_eq!(Tensor::from_doc(&t.to_doc(Symbol::X)).unwrap(), t);
    }

    #[test]
    fn legwise_product_and_multiply() {
        let x1 = NCPoly::d(1);
        let delta = Tensor::simple(&x1, &NCPoly::one()).add(&Tensor::simple(&NCPoly::one(), &x1));
        let sq = delta.mul(&delta);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.multiply(), x1.pow(2).scale(&rat(4)));
    }
}
