//! Letters `d_i` (plus the formal inverse of `d_1`), reduced words and
//! commutative monomials.
//!
//! The same alphabet is reused for the Hopf generators `X_n` and for the
//! `B_j` symbols of Möbius inversion; only rendering differs (see [`crate::format::Symbol`]).

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A graded letter. Encoded as its index, with `-1` standing for `d_1^{-1}`,
/// so that the natural integer order puts the inverse of `d_1` first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(i32);

impl Letter {
    pub const INV1: Letter = Letter(-1);

    pub fn new(index: u32) -> Result<Letter> {
        if index == 0 || index > i32::MAX as u32 {
            return Err(Error::InvalidLetter(index as i64));
        }
        Ok(Letter(index as i32))
    }

    /// `d_i`. Panics on `i = 0`; use [`Letter::new`] for untrusted input.
    pub fn d(index: u32) -> Letter {
        Letter::new(index).expect("letter index must be positive")
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverted(self) -> bool {
        self.0 < 0
    }

    /// The letter cancelling this one, if any.
    pub fn inverse(self) -> Option<Letter> {
        match self.0 {
            1 => Some(Letter::INV1),
            -1 => Some(Letter(1)),
            _ => None,
        }
    }

    /// Signed integer code used by the structured format.
    pub fn code(self) -> i32 {
        self.0
    }

    pub fn from_code(code: i64) -> Result<Letter> {
        match code {
            -1 => Ok(Letter::INV1),
            c if c >= 1 && c <= i32::MAX as i64 => Ok(Letter(c as i32)),
            c => Err(Error::InvalidLetter(c)),
        }
    }

    /// `d_i -> d_{i+1}`; `None` for the inverted letter.
    pub fn raised(self) -> Option<Letter> {
        if self.is_inverted() {
            None
        } else {
            Some(Letter(self.0 + 1))
        }
    }
}

/// Monomials of a polynomial algebra over the `d`-alphabet.
///
/// Implemented by [`Word`] (free algebra) and [`CMonomial`] (its abelianization).
#[allow(clippy::len_without_is_empty)] // `is_one` plays that role
pub trait Monomial: Clone + Ord + Eq + Hash + Debug + Send + Sync + 'static {
    const COMMUTATIVE: bool;

    fn one() -> Self;
    fn from_letter(letter: Letter) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Letters in product order. Commutative monomials list them by index.
    fn letters(&self) -> Vec<Letter>;
    /// Number of letters (an inverse letter counts once).
    fn len(&self) -> usize;

    fn is_one(&self) -> bool {
        self.len() == 0
    }

    fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        letters
            .into_iter()
            .fold(Self::one(), |acc, l| acc.mul(&Self::from_letter(l)))
    }

    fn has_inverse(&self) -> bool {
        self.letters().iter().any(|l| l.is_inverted())
    }

    /// `Σ i` over letters `d_i`; `None` if an inverted letter occurs.
    fn std_grade(&self) -> Option<u32> {
        let mut g = 0;
        for l in self.letters() {
            if l.is_inverted() {
                return None;
            }
            g += l.index();
        }
        Some(g)
    }

    /// Grading with `|d_i| = i - 1` and `|d_1^{-1}| = 0`.
    fn mobius_grade(&self) -> u32 {
        self.letters()
            .iter()
            .map(|l| if l.is_inverted() { 0 } else { l.index() - 1 })
            .sum()
    }
}

/// A reduced word: no adjacent `d_1 d_1^{-1}` or `d_1^{-1} d_1`.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Builds a word, cancelling adjacent inverse pairs.
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Word of plain letters `d_{j_1} ... d_{j_k}`.
    pub fn from_indices(indices: &[u32]) -> Word {
        Word::new(indices.iter().map(|&i| Letter::d(i)))
    }

    pub fn push(&mut self, l: Letter) {
        match (self.0.last(), l.inverse()) {
            (Some(&last), Some(inv)) if last == inv => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    /// Index sequence `(j_1, ..., j_k)`; `None` if an inverted letter occurs.
    pub fn indices(&self) -> Option<Vec<u32>> {
        self.0
            .iter()
            .map(|l| (!l.is_inverted()).then(|| l.index()))
            .collect()
    }

    pub fn reversed(&self) -> Word {
        Word::new(self.0.iter().rev().copied())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Monomial for Word {
    const COMMUTATIVE: bool = false;

    fn one() -> Self {
        Word::empty()
    }

    fn from_letter(letter: Letter) -> Self {
        Word(vec![letter])
    }

    fn mul(&self, other: &Self) -> Self {
        let mut w = self.clone();
        w.0.reserve(other.0.len());
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    fn letters(&self) -> Vec<Letter> {
        self.0.clone()
    }

    fn len(&self) -> usize {
        self.0.len()
    }
}

/// Commutative monomial `Π d_i^{e_i}`: sorted `(index, exponent)` pairs,
/// no zero exponents, negative exponents only for index 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CMonomial(Vec<(u32, i32)>);

impl CMonomial {
    pub fn from_exponents<I: IntoIterator<Item = (u32, i32)>>(pairs: I) -> Result<CMonomial> {
        let mut m = CMonomial::one();
        for (i, e) in pairs {
            if i == 0 {
                return Err(Error::InvalidLetter(0));
            }
            if e < 0 && i != 1 {
                return Err(Error::InvalidArgument(format!(
                    "negative exponent only allowed on d1, got d{i}^{e}"
                )));
            }
            m.add_exponent(i, e);
        }
        Ok(m)
    }

    pub fn exponents(&self) -> &[(u32, i32)] {
        &self.0
    }

    pub fn exponent(&self, index: u32) -> i32 {
        self.0
            .iter()
            .find(|(i, _)| *i == index)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    fn add_exponent(&mut self, index: u32, e: i32) {
        match self.0.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => {
                self.0[pos].1 += e;
                if self.0[pos].1 == 0 {
                    self.0.remove(pos);
                }
            }
            Err(pos) => {
                if e != 0 {
                    self.0.insert(pos, (index, e));
                }
            }
        }
    }
}

impl PartialOrd for CMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letter_iter().cmp(other.letter_iter()))
    }
}

impl CMonomial {
    fn letter_iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().flat_map(|&(i, e)| {
            let l = if e < 0 { Letter::INV1 } else { Letter::d(i) };
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        })
    }
}

impl Monomial for CMonomial {
    const COMMUTATIVE: bool = true;

    fn one() -> Self {
        CMonomial(Vec::new())
    }

    fn from_letter(letter: Letter) -> Self {
        if letter.is_inverted() {
            CMonomial(vec![(1, -1)])
        } else {
            CMonomial(vec![(letter.index(), 1)])
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for &(i, e) in &other.0 {
            m.add_exponent(i, e);
        }
        m
    }

    fn letters(&self) -> Vec<Letter> {
        self.letter_iter().collect()
    }

    fn len(&self) -> usize {
        self.0.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }
}

impl From<&Word> for CMonomial {
    fn from(w: &Word) -> Self {
        CMonomial::from_letters(w.as_slice().iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_pairs_cancel() {
        let w = Word::new([Letter::INV1, Letter::d(1), Letter::d(2)]);
        assert_eq!(w, Word::from_indices(&[2]));
        let a = Word::new([Letter::d(2), Letter::d(1)]);
        let b = Word::new([Letter::INV1, Letter::INV1, Letter::d(3)]);
        assert_eq!(
            a.mul(&b),
            Word::new([Letter::d(2), Letter::INV1, Letter::d(3)])
        );
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let mut ws = [
            Word::from_indices(&[1, 1]),
            Word::from_indices(&[3]),
            Word::from_indices(&[1, 2]),
            Word::new([Letter::INV1, Letter::d(2)]),
            Word::empty(),
        ];
        ws.sort();
        assert_eq!(ws[0], Word::empty());
        assert_eq!(ws[1], Word::from_indices(&[3]));
        assert_eq!(ws[2], Word::new([Letter::INV1, Letter::d(2)]));
        assert_eq!(ws[3], Word::from_indices(&[1, 1]));
    }

    #[test]
    fn commutative_monomials() {
        let m = CMonomial::from_letters([Letter::d(2), Letter::d(1), Letter::INV1, Letter::INV1]);
        assert_eq!(m.exponents(), &[(1, -1), (2, 1)]);
        assert_eq!(m.len(), 2);
        assert!(CMonomial::from_exponents([(2, -1)]).is_err());
        assert_eq!(m.mobius_grade(), 1);
        assert_eq!(m.std_grade(), None);
    }

    #[test]
    fn letter_codes() {
        assert_eq!(Letter::from_code(-1).unwrap(), Letter::INV1);
        assert!(Letter::from_code(0).is_err());
        assert!(Letter::from_code(-2).is_err());
        assert_eq!(Letter::d(4).code(), 4);
        assert_eq!(Letter::INV1.raised(), None);
    }
}
