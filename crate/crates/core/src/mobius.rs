//! Bialgebras on the `d`-letters with `d_1` invertible, graded by
//! `|d_i| = i - 1`: coproduct `Δ(d_n) = Σ_k B_{n,k} ⊗ d_k`, both antipode
//! recursions, the ζ and μ characters, and inversion of Bell polynomials.
//!
//! Results of [`bell_map`] and [`mobius_invert`] reuse the letter `d_j` to
//! stand for the symbol `B_j`; render them with [`Symbol::B`](crate::format::Symbol).

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::alphabet::{Letter, Monomial};
use crate::bell::{bell, bell_partial};
use crate::error::{Error, Result};
use crate::hopf::Side;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::tensor::Tensor;

/// Memoized coproducts and antipodes of the `d_n`.
pub struct MobiusAlgebra<M: Monomial> {
    delta: RwLock<HashMap<u32, Tensor<M>>>,
    antipode: RwLock<HashMap<(u32, Side), Polynomial<M>>>,
}

impl<M: Monomial> Default for MobiusAlgebra<M> {
    fn default() -> Self {
        MobiusAlgebra {
            delta: RwLock::new(HashMap::new()),
            antipode: RwLock::new(HashMap::new()),
        }
    }
}

fn inv1<M: Monomial>() -> Polynomial<M> {
    Polynomial::letter(Letter::INV1)
}

impl<M: Monomial> MobiusAlgebra<M> {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Δ(d_n) = Σ_{k=1}^{n} B_{n,k}(d_1, ..., d_n) ⊗ d_k`.
    pub fn coproduct_m(&self, n: u32) -> Result<Tensor<M>> {
        if n == 0 {
            return Err(Error::InvalidArgument("generators start at d1".into()));
        }
        if let Some(t) = self.delta.read().expect("cache lock").get(&n) {
            return Ok(t.clone());
        }
        let mut t = Tensor::zero();
        for k in 1..=n {
            t = t.add(&Tensor::simple(&bell_partial::<M>(n, k), &Polynomial::d(k)));
        }
        Ok(self
            .delta
            .write()
            .expect("cache lock")
            .entry(n)
            .or_insert(t)
            .clone())
    }

    fn coproduct_letter(&self, l: Letter) -> Tensor<M> {
        if l.is_inverted() {
            Tensor::simple(&inv1(), &inv1())
        } else {
            self.coproduct_m(l.index()).expect("index >= 1")
        }
    }

    /// Multiplicative extension, with `Δ(d_1^{-1}) = d_1^{-1} ⊗ d_1^{-1}`.
    pub fn coproduct(&self, p: &Polynomial<M>) -> Tensor<M> {
        let mut out = Tensor::zero();
        for (m, c) in p.terms() {
            let t = m
                .letters()
                .iter()
                .fold(Tensor::one(), |acc, &l| acc.mul(&self.coproduct_letter(l)));
            out = out.add(&t.scale(c));
        }
        out
    }

    /// `ε(d_1^{±1}) = 1`, `ε(d_n) = 0` for `n >= 2`, extended multiplicatively.
    pub fn counit(&self, p: &Polynomial<M>) -> Rational {
        p.terms()
            .filter(|(m, _)| m.letters().iter().all(|l| l.index() == 1))
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// `S(d_n)`. With `Side::LeftLeg` (from `m(S ⊗ id)Δ = ηε`):
    /// `S(d_n) = (-d_1^{-n} d_n - Σ_{k=2}^{n-1} S(B_{n,k}) d_k) d_1^{-1}`.
    /// With `Side::RightLeg` (from `m(id ⊗ S)Δ = ηε`):
    /// `S(d_n) = d_1^{-n} (-d_n d_1^{-1} - Σ_{k=2}^{n-1} B_{n,k} S(d_k))`.
    pub fn antipode_m(&self, n: u32, side: Side) -> Result<Polynomial<M>> {
        match n {
            0 => return Err(Error::InvalidArgument("generators start at d1".into())),
            1 => return Ok(inv1()),
            _ => {}
        }
        if let Some(v) = self.antipode.read().expect("cache lock").get(&(n, side)) {
            return Ok(v.clone());
        }
        let inv_n = inv1::<M>().pow(n);
        let dn = Polynomial::<M>::d(n);
        let s = match side {
            Side::LeftLeg => {
                let mut acc = -(&inv_n * &dn);
                for k in 2..n {
                    acc = acc
                        - &self.antipode_with(&bell_partial::<M>(n, k), side)? * &Polynomial::d(k);
                }
                &acc * &inv1()
            }
            Side::RightLeg => {
                let mut acc = -(&dn * &inv1());
                for k in 2..n {
                    acc = acc - &bell_partial::<M>(n, k) * &self.antipode_m(k, side)?;
                }
                &inv_n * &acc
            }
        };
        Ok(self
            .antipode
            .write()
            .expect("cache lock")
            .entry((n, side))
            .or_insert(s)
            .clone())
    }

    /// `S` as an anti-morphism, `S(d_1^{-1}) = d_1`.
    pub fn antipode_with(&self, p: &Polynomial<M>, side: Side) -> Result<Polynomial<M>> {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let mut img = Polynomial::constant(c.clone());
            for l in m.letters().iter().rev() {
                let s = if l.is_inverted() {
                    Polynomial::d(1)
                } else {
                    self.antipode_m(l.index(), side)?
                };
                img = &img * &s;
            }
            out += img;
        }
        Ok(out)
    }

    /// `(α ⋆ β)(d_n) = Σ_k α(B_{n,k}) β(d_k)` on `d_1..d_N`.
    pub fn convolve(
        &self,
        alpha: &MobiusCharacter,
        beta: &MobiusCharacter,
    ) -> Result<MobiusCharacter> {
        let order = alpha.order().min(beta.order());
        let mut values = Vec::with_capacity(order);
        for n in 1..=order as u32 {
            let mut v = Rational::zero();
            for (a, b, c) in self.coproduct_m(n)?.terms() {
                v += c * alpha.eval_monomial(a)? * beta.eval_monomial(b)?;
            }
            values.push(v);
        }
        MobiusCharacter::new(values)
    }

    /// `μ = ζ ∘ S` on `d_1..d_N`.
    pub fn mobius_char(&self, order: usize) -> Result<MobiusCharacter> {
        let zeta = MobiusCharacter::zeta(order);
        let values = (1..=order as u32)
            .map(|n| zeta.eval(&self.antipode_m(n, Side::RightLeg)?))
            .collect::<Result<Vec<_>>>()?;
        MobiusCharacter::new(values)
    }

    /// `d_n = Σ_k μ(d_k) B(B_{n,k}(d))`, written in the `B` symbols.
    pub fn mobius_invert(&self, n: u32) -> Result<Polynomial<M>> {
        if n == 0 {
            return Err(Error::InvalidArgument("generators start at d1".into()));
        }
        let mu = self.mobius_char(n as usize)?;
        let mut out = Polynomial::zero();
        for k in 1..=n {
            out += bell_map(&bell_partial::<M>(n, k)).scale(&mu.value(k)?);
        }
        Ok(out)
    }
}

/// `d_n` in the `B` symbols by triangular back-substitution:
/// `d_n = B_n - (B_n - d_n)` with every `d_j`, `j < n`, replaced recursively.
/// Independent of the coproduct, so it serves as an oracle for [`MobiusAlgebra::mobius_invert`].
pub fn invert_by_substitution<M: Monomial>(n: u32) -> Result<Polynomial<M>> {
    if n == 0 {
        return Err(Error::InvalidArgument("generators start at d1".into()));
    }
    let mut inv: Vec<Polynomial<M>> = vec![Polynomial::zero(), Polynomial::d(1)];
    for m in 2..=n {
        let rest = bell::<M>(m) - Polynomial::d(m);
        let lower = rest.substitute(|l: Letter| inv.get(l.index() as usize).cloned())?;
        inv.push(Polynomial::d(m) - lower);
    }
    Ok(inv.swap_remove(n as usize))
}

/// The multiplicative map `d_j -> B_j`; the result's letters denote `B`-symbols.
pub fn bell_map<M: Monomial>(p: &Polynomial<M>) -> Polynomial<M> {
    p.clone()
}

/// Substitutes `B_j -> B_j(d_1, ..., d_j)` (and `B_1^{-1} -> d_1^{-1}`).
pub fn expand_bell_symbols<M: Monomial>(p: &Polynomial<M>) -> Result<Polynomial<M>> {
    p.substitute(|l: Letter| {
        Some(if l.is_inverted() {
            inv1()
        } else {
            bell::<M>(l.index())
        })
    })
}

/// A character given by its values on `d_1, d_2, ...`; `d_1^{-1}` gets `1/φ(d_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusCharacter {
    values: Vec<Rational>,
}

impl MobiusCharacter {
    /// `values[n-1] = φ(d_n)`; `φ(d_1)` must be invertible.
    pub fn new(values: Vec<Rational>) -> Result<MobiusCharacter> {
        match values.first() {
            Some(v) if v.is_zero() => Err(Error::NonInvertibleLinearTerm),
            _ => Ok(MobiusCharacter { values }),
        }
    }

    /// `ζ(d_i) = 1`.
    pub fn zeta(order: usize) -> MobiusCharacter {
        MobiusCharacter {
            values: vec![Rational::one(); order],
        }
    }

    /// The counit as a character.
    pub fn counit(order: usize) -> MobiusCharacter {
        let mut values = vec![Rational::zero(); order];
        if let Some(v) = values.first_mut() {
            *v = Rational::one();
        }
        MobiusCharacter { values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `φ(d_n)`.
    pub fn value(&self, n: u32) -> Result<Rational> {
        self.values
            .get((n as usize).wrapping_sub(1))
            .cloned()
            .ok_or(Error::TruncationExceeded {
                requested: n as usize,
                available: self.order(),
            })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    fn letter(&self, l: Letter) -> Result<Rational> {
        if l.is_inverted() {
            Ok(Rational::one() / self.value(1)?)
        } else {
            self.value(l.index())
        }
    }

    pub fn eval_monomial<M: Monomial>(&self, m: &M) -> Result<Rational> {
        m.letters()
            .into_iter()
            .try_fold(Rational::one(), |acc, l| Ok(acc * self.letter(l)?))
    }

    pub fn eval<M: Monomial>(&self, p: &Polynomial<M>) -> Result<Rational> {
        p.terms().try_fold(Rational::zero(), |acc, (m, c)| {
            Ok(acc + c * self.eval_monomial(m)?)
        })
    }
}
