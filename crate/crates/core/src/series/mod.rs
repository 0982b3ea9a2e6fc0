//! Truncated power series over a commutative coefficient ring.
//!
//! Coefficients are stored raw (`c_n` multiplies `t^n`); the divided-power
//! view `f_n = n! c_n` is computed on demand.

pub mod fields;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::{CMonomial, Letter};
use crate::bell::{bell, bell_partial};
use crate::error::{Error, Result};
use crate::poly::{CPoly, CommRing, Ring};
use crate::rational::{factorial, format_rational, from_bigint, parse_rational, Rational};

/// `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> FormalSeries<R> {
    /// Series of truncation order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Result<FormalSeries<R>> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(FormalSeries { coeffs })
    }

    pub fn zero(order: usize) -> FormalSeries<R> {
        FormalSeries {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn constant(c: R, order: usize) -> FormalSeries<R> {
        let mut s = FormalSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn identity(order: usize) -> FormalSeries<R> {
        let mut s = FormalSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = R::one();
        }
        s
    }

    /// From divided powers: `c_n = f_n / n!`.
    pub fn from_divided(f: Vec<R>) -> Result<FormalSeries<R>> {
        let coeffs = f
            .into_iter()
            .enumerate()
            .map(|(n, v)| v.scale(&(Rational::one() / from_bigint(factorial(n as u32)))))
            .collect();
        FormalSeries::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Raw coefficient of `t^n`; `None` beyond the truncation.
    pub fn coeff(&self, n: usize) -> Option<&R> {
        self.coeffs.get(n)
    }

    /// `f_n = n! c_n`.
    pub fn divided(&self, n: usize) -> Option<R> {
        self.coeffs
            .get(n)
            .map(|c| c.scale(&from_bigint(factorial(n as u32))))
    }

    pub fn truncate(&self, order: usize) -> FormalSeries<R> {
        FormalSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn add(&self, other: &FormalSeries<R>) -> FormalSeries<R> {
        let n = self.order().min(other.order());
        FormalSeries {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &FormalSeries<R>) -> FormalSeries<R> {
        let n = self.order().min(other.order());
        FormalSeries {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() - other.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> FormalSeries<R> {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &FormalSeries<R>) -> FormalSeries<R> {
        let n = self.order().min(other.order());
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        FormalSeries { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> FormalSeries<R> {
        (0..e).fold(FormalSeries::constant(R::one(), self.order()), |acc, _| {
            acc.mul(self)
        })
    }

    /// `f ∘ g` by Horner's rule; `g` must have zero constant term.
    pub fn compose(&self, g: &FormalSeries<R>) -> Result<FormalSeries<R>> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = FormalSeries::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[i].clone();
        }
        Ok(acc)
    }

    /// `exp(s) = Σ s^k / k!` for `s` with zero constant term.
    pub fn exp(&self) -> Result<FormalSeries<R>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order();
        let mut out = FormalSeries::constant(R::one(), n);
        let mut power = FormalSeries::constant(R::one(), n);
        for k in 1..=n {
            power = power.mul(self);
            out = out.add(&power.scale(&(Rational::one() / from_bigint(factorial(k as u32)))));
        }
        Ok(out)
    }
}

impl<R: CommRing> FormalSeries<R> {
    /// Divided-power coefficients `h_n = Σ_k f_k B_{n,k}(g_1, g_2, ...)` of `f ∘ g`.
    pub fn compose_via_bell(&self, g: &FormalSeries<R>) -> Result<FormalSeries<R>> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order().min(g.order());
        let gd: Vec<R> = (0..=n)
            .map(|i| g.divided(i).expect("within order"))
            .collect();
        let mut h = vec![self.coeffs[0].clone()];
        for m in 1..=n {
            let mut hm = R::zero();
            for k in 1..=m {
                let b = bell_partial::<CMonomial>(m as u32, k as u32);
                let val: R = b.eval(|l: Letter| gd[l.index() as usize].clone());
                hm = hm + self.divided(k).expect("within order") * val;
            }
            h.push(hm);
        }
        FormalSeries::from_divided(h)
    }
}

impl FormalSeries<Rational> {
    /// Compositional inverse: `g(h(t)) = h(g(t)) = t` through the truncation order.
    pub fn reversion(&self) -> Result<FormalSeries<Rational>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order();
        let g1 = self.coeffs.get(1).cloned().unwrap_or_else(Rational::zero);
        if g1.is_zero() {
            return Err(Error::NonInvertibleLinearTerm);
        }
        let inv = Rational::one() / g1;
        let t = FormalSeries::identity(n);
        let mut h = t.scale(&inv);
        // Each pass fixes one more coefficient.
        for _ in 1..n {
            let err = t.sub(&self.compose(&h)?);
            h = h.add(&err.scale(&inv));
        }
        Ok(h)
    }

    pub fn to_doc(&self) -> SeriesDoc {
        SeriesDoc {
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
    }

    pub fn from_doc(doc: &SeriesDoc) -> Result<FormalSeries<Rational>> {
        if doc.coeffs.len() != doc.order + 1 {
            return Err(Error::Parse(format!(
                "series of order {} needs {} coefficients, got {}",
                doc.order,
                doc.order + 1,
                doc.coeffs.len()
            )));
        }
        FormalSeries::new(
            doc.coeffs
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_>>()?,
        )
    }

    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match n {
                0 => String::new(),
                1 => "t".into(),
                n => format!("t^{n}"),
            };
            parts.push(match (var.is_empty(), c.is_one()) {
                (true, _) => format_rational(c),
                (false, true) => var,
                (false, false) if *c == -Rational::one() => format!("-{var}"),
                (false, false) => format!("{}*{var}", format_rational(c)),
            });
        }
        parts.push(format!("O(t^{})", self.order() + 1));
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Series file format: the raw coefficients `c_0..c_N` as rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub order: usize,
    pub coeffs: Vec<String>,
}

/// Result of comparing `n! [t^n] exp(Σ d_m t^m / m!)` with `B_n`.
#[derive(Clone, Debug)]
pub struct EgfReport {
    pub order: usize,
    /// Degrees whose coefficient disagreed with the Bell polynomial.
    pub mismatches: Vec<usize>,
}

impl EgfReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks `1 + Σ B_n t^n/n! = exp(Σ d_m t^m/m!)` with commuting letters.
pub fn egf_bell_check(order: usize) -> Result<EgfReport> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let mut inner = vec![CPoly::zero()];
    for m in 1..=order {
        inner.push(CPoly::d(m as u32));
    }
    let e = FormalSeries::from_divided(inner)?.exp()?;
    let mismatches = (0..=order)
        .filter(|&n| e.divided(n).expect("within order") != bell::<CMonomial>(n as u32))
        .collect();
    Ok(EgfReport { order, mismatches })
}
