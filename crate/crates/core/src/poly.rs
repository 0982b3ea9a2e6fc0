//! Sparse polynomials with exact rational coefficients over a monomial basis.
//!
//! [`NCPoly`] lives in the free algebra on the `d`-letters, [`CPoly`] in its
//! commutative quotient. Both share one implementation through [`Monomial`].

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::alphabet::{CMonomial, Letter, Monomial, Word};
use crate::error::{Error, Result};
use crate::parallel::{self, Exec};
use crate::rational::Rational;

/// Ring interface used by the generic determinant, series and evaluation code.
pub trait Ring:
    Clone + PartialEq + Debug + Send + Sync + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
    fn scale(&self, r: &Rational) -> Self;

    fn from_rational(r: &Rational) -> Self {
        Self::one().scale(r)
    }
}

/// Marker for rings whose multiplication commutes.
pub trait CommRing: Ring {}

impl Ring for Rational {
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl CommRing for Rational {}

/// Finite linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<M: Monomial> {
    terms: BTreeMap<M, Rational>,
}

pub type NCPoly = Polynomial<Word>;
pub type CPoly = Polynomial<CMonomial>;

impl<M: Monomial> Default for Polynomial<M> {
    fn default() -> Self {
        Self::zero()
    }
}

/// Above this many term pairs a product is split across threads.
const PAR_MUL_THRESHOLD: usize = 4096;

impl<M: Monomial> Polynomial<M> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(M::one(), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(M::one(), c)
    }

    pub fn monomial(m: M, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(M::from_letter(l), Rational::one())
    }

    /// The letter `d_i` (or `X_i`, `B_i` depending on context).
    pub fn d(i: u32) -> Self {
        Self::letter(Letter::d(i))
    }

    pub fn from_terms<I: IntoIterator<Item = (M, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: M, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in canonical order (ascending length, then lexicographic).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<M, Rational> {
        self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &M) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn mul_with(&self, other: &Self, exec: Exec) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let left: Vec<(&M, &Rational)> = self.terms.iter().collect();
        let exec = if left.len() * other.len() < PAR_MUL_THRESHOLD {
            Exec::Sequential
        } else {
            exec
        };
        parallel::fold_chunks(
            exec,
            &left,
            Self::zero,
            |mut acc, (m1, c1)| {
                for (m2, c2) in &other.terms {
                    acc.add_term(m1.mul(m2), *c1 * c2);
                }
                acc
            },
            |a, b| a + b,
        )
    }

    /// Keeps the terms whose monomial has exactly `k` letters.
    pub fn restrict_length(&self, k: usize) -> Self {
        self.filter(|m| m.len() == k)
    }

    pub fn filter<F: Fn(&M) -> bool>(&self, keep: F) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The derivation `d_i -> d_{i+1}` extended by the Leibniz rule.
    pub fn derive(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let letters = m.letters();
            if letters.iter().any(|l| l.is_inverted()) {
                return Err(Error::DeriveOfInverse);
            }
            for pos in 0..letters.len() {
                let mut ls = letters.clone();
                ls[pos] = ls[pos].raised().expect("checked above");
                out.add_term(M::from_letters(ls), c.clone());
            }
        }
        Ok(out)
    }

    /// Multiplicative substitution of each letter by a polynomial over another
    /// monomial basis. Word order is preserved.
    pub fn substitute<N, F>(&self, sigma: F) -> Result<Polynomial<N>>
    where
        N: Monomial,
        F: Fn(Letter) -> Option<Polynomial<N>>,
    {
        let mut cache: BTreeMap<Letter, Polynomial<N>> = BTreeMap::new();
        let mut out = Polynomial::<N>::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::<N>::constant(c.clone());
            for l in m.letters() {
                if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(l) {
                    let img = sigma(l).ok_or(Error::MissingSubstitution(l.index()))?;
                    e.insert(img);
                }
                acc = &acc * &cache[&l];
                if acc.is_zero() {
                    break;
                }
            }
            out += acc;
        }
        Ok(out)
    }

    /// Evaluates into a commutative ring by sending each letter to a value.
    pub fn eval<R: Ring, F: Fn(Letter) -> R>(&self, value: F) -> R {
        let mut total = R::zero();
        for (m, c) in &self.terms {
            let term = m
                .letters()
                .into_iter()
                .fold(R::from_rational(c), |acc, l| acc * value(l));
            total = total + term;
        }
        total
    }

    /// Renames letters monomial by monomial (e.g. `d_j -> X_{j-1}`).
    pub fn map_monomials<N: Monomial, F: Fn(&M) -> N>(&self, f: F) -> Polynomial<N> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Sum of all coefficients, i.e. the evaluation at `d_i = 1` (and `d_1^{-1} = 1`).
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Set of standard grades of the terms.
    pub fn grades(&self) -> Vec<Option<u32>> {
        let mut g: Vec<_> = self.terms.keys().map(|m| m.std_grade()).collect();
        g.sort();
        g.dedup();
        g
    }

    /// `true` if every term lies in standard grade `n`.
    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|m| m.std_grade() == Some(n))
    }
}

impl NCPoly {
    /// Collapses each word to its multiset of letters.
    pub fn abelianize(&self) -> CPoly {
        self.map_monomials(|w| CMonomial::from(w))
    }

    /// Reverses every word (the anti-automorphism `w -> w^op`).
    pub fn reversed(&self) -> NCPoly {
        self.map_monomials(Word::reversed)
    }
}

impl<M: Monomial> AddAssign for Polynomial<M> {
    fn add_assign(&mut self, rhs: Self) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(&mut self.terms, rhs.terms);
            for (m, c) in lhs {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl<M: Monomial> AddAssign<&Polynomial<M>> for Polynomial<M> {
    fn add_assign(&mut self, rhs: &Polynomial<M>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<M: Monomial> Add for Polynomial<M> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<M: Monomial> Add for &Polynomial<M> {
    type Output = Polynomial<M>;
    fn add(self, rhs: Self) -> Polynomial<M> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<M: Monomial> Neg for &Polynomial<M> {
    type Output = Polynomial<M>;
    fn neg(self) -> Polynomial<M> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<M: Monomial> Neg for Polynomial<M> {
    type Output = Polynomial<M>;
    fn neg(self) -> Polynomial<M> {
        -&self
    }
}

impl<M: Monomial> Sub for &Polynomial<M> {
    type Output = Polynomial<M>;
    fn sub(self, rhs: Self) -> Polynomial<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<M: Monomial> Sub for Polynomial<M> {
    type Output = Polynomial<M>;
    fn sub(self, rhs: Self) -> Polynomial<M> {
        &self - &rhs
    }
}

impl<M: Monomial> Mul for &Polynomial<M> {
    type Output = Polynomial<M>;
    fn mul(self, rhs: Self) -> Polynomial<M> {
        self.mul_with(rhs, Exec::default())
    }
}

impl<M: Monomial> Mul for Polynomial<M> {
    type Output = Polynomial<M>;
    fn mul(self, rhs: Self) -> Polynomial<M> {
        &self * &rhs
    }
}

impl<M: Monomial> Zero for Polynomial<M> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<M: Monomial> One for Polynomial<M> {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl<M: Monomial> Ring for Polynomial<M> {
    fn scale(&self, r: &Rational) -> Self {
        Polynomial::scale(self, r)
    }
}

impl CommRing for CPoly {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn d(i: u32) -> NCPoly {
        NCPoly::d(i)
    }

    fn word(ix: &[u32]) -> Word {
        Word::from_indices(ix)
    }

    #[test]
    fn product_is_bilinear_concatenation() {
        let p = &(&d(1) + &d(2)) * &d(1);
        assert_eq!(
            p,
            NCPoly::from_terms([(word(&[1, 1]), rat(1)), (word(&[2, 1]), rat(1))])
        );
        assert_eq!(&NCPoly::one() * &p, p);
    }

    #[test]
    fn inverse_reduces_in_products() {
        let inv = NCPoly::letter(Letter::INV1);
        let p = &inv * &(&d(1) * &d(2));
        assert_eq!(p, d(2));
    }

    #[test]
    fn derivation_on_generators_and_words() {
        assert_eq!(
            (&d(1) * &d(2)).derive().unwrap(),
            &(&d(2) * &d(2)) + &(&d(1) * &d(3))
        );
        assert!(NCPoly::one().derive().unwrap().is_zero());
        assert_eq!(d(3).derive().unwrap(), d(4));
        assert!(NCPoly::letter(Letter::INV1).derive().is_err());
    }

    #[test]
    fn abelianize_collapses_multisets() {
        let p = &(&d(2) * &d(1)) + &(&d(1) * &d(2)).scale(&rat(2));
        let c = p.abelianize();
        assert_eq!(c, (&CPoly::d(1) * &CPoly::d(2)).scale(&rat(3)));
        assert_eq!(d(1).pow(3).abelianize(), CPoly::d(1).pow(3));
    }

    #[test]
    fn substitution_deletes_unit_letters() {
        let x1 = NCPoly::d(7);
        let p = &d(1) * &d(2);
        let out = p
            .substitute(|l| match l.index() {
                1 => Some(NCPoly::one()),
                2 => Some(x1.clone()),
                _ => None,
            })
            .unwrap();
        assert_eq!(out, x1);
        let sq = d(1).pow(2).substitute(|_| Some(&d(1) + &d(2))).unwrap();
        assert_eq!(sq.len(), 4);
        assert!(d(3).substitute(|_| None::<NCPoly>).is_err());
    }

    #[test]
    fn restrict_length_picks_words() {
        let p = &(&d(1).pow(2) + &d(2)) + &NCPoly::constant(rat(5));
        assert_eq!(p.restrict_length(0), NCPoly::constant(rat(5)));
        assert_eq!(p.restrict_length(1), d(2));
        assert!(p.restrict_length(3).is_zero());
    }

    #[test]
    fn parallel_and_sequential_products_agree() {
        let a = (1..=6).fold(NCPoly::zero(), |acc, i| &acc + &d(i)).pow(3);
        let b = (1..=5)
            .fold(NCPoly::zero(), |acc, i| &acc + &d(i).scale(&rat(i as i64)))
            .pow(2);
        assert_eq!(
            a.mul_with(&b, Exec::Sequential),
            a.mul_with(&b, Exec::Parallel)
        );
    }
}
