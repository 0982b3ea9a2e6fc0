//! Polynomial scalar and vector fields on rational affine space, Lie
//! derivatives, and the Taylor coefficients of pullbacks along flows.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::FormalSeries;
use crate::alphabet::Word;
use crate::bell::bell;
use crate::error::{Error, Result};
use crate::poly::{CommRing, Ring};
use crate::rational::{factorial, format_rational, from_bigint, parse_rational, rat, Rational};

/// Polynomial in `x_1, x_2, ...`. Exponent vectors carry no trailing zeros,
/// so the number of variables is implicit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MultiPoly {
    pub fn constant(c: Rational) -> MultiPoly {
        let mut p = MultiPoly::default();
        p.add_term(Vec::new(), c);
        p
    }

    /// The coordinate `x_i`, 0-based.
    pub fn var(i: usize) -> MultiPoly {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        MultiPoly::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: Rational) -> MultiPoly {
        let mut p = MultiPoly::default();
        p.add_term(exponents, c);
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(trim(exponents)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Number of variables actually used.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// `∂/∂x_i`, 0-based.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (e, c) in &self.terms {
            if let Some(&k) = e.get(i) {
                if k > 0 {
                    let mut e2 = e.clone();
                    e2[i] -= 1;
                    out.add_term(e2, c * rat(k as i64));
                }
            }
        }
        out
    }

    /// Evaluates at ring values for `x_1, x_2, ...`.
    pub fn eval<R: Ring>(&self, values: &[R]) -> Result<R> {
        if self.nvars() > values.len() {
            return Err(Error::DimensionMismatch {
                expected: values.len(),
                got: self.nvars(),
            });
        }
        let mut total = R::zero();
        for (e, c) in &self.terms {
            let mut term = R::from_rational(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term * values[i].clone();
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<(bool, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{k}", i + 1)
                        }
                    })
                    .collect();
                let abs = if c < &Rational::zero() { -c } else { c.clone() };
                let body = match (vars.is_empty(), abs.is_one()) {
                    (true, _) => format_rational(&abs),
                    (false, true) => vars.join("*"),
                    (false, false) => format!("{}*{}", format_rational(&abs), vars.join("*")),
                };
                (c < &Rational::zero(), body)
            })
            .collect();
        crate::format::join_signed(parts)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Ring for MultiPoly {
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }
}

impl CommRing for MultiPoly {}

/// `F = Σ F^i ∂/∂x_i` on `m`-dimensional space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    components: Vec<MultiPoly>,
}

impl VectorField {
    pub fn new(components: Vec<MultiPoly>) -> Result<VectorField> {
        let m = components.len();
        if m == 0 {
            return Err(Error::InvalidArgument(
                "a vector field needs at least one component".into(),
            ));
        }
        if let Some(bad) = components.iter().find(|c| c.nvars() > m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: bad.nvars(),
            });
        }
        Ok(VectorField { components })
    }

    pub fn zero(m: usize) -> VectorField {
        VectorField {
            components: vec![MultiPoly::zero(); m],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    fn check(&self, nvars: usize) -> Result<()> {
        if nvars > self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: nvars,
            });
        }
        Ok(())
    }

    /// `F[ψ] = Σ F^i ∂ψ/∂x_i`.
    pub fn lie(&self, psi: &MultiPoly) -> Result<MultiPoly> {
        self.check(psi.nvars())?;
        Ok(self
            .components
            .iter()
            .enumerate()
            .fold(MultiPoly::zero(), |acc, (i, fi)| acc + fi * &psi.partial(i)))
    }

    /// `F[G]`, the derivative of `G` along `F`, component by component.
    pub fn lie_field(&self, g: &VectorField) -> Result<VectorField> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: g.dim(),
            });
        }
        Ok(VectorField {
            components: g
                .components
                .iter()
                .map(|c| self.lie(c))
                .collect::<Result<_>>()?,
        })
    }
}

/// `F_t = Σ_{j>=0} t^j/j! F_{j+1}`, known through `F_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeDependentField {
    coeffs: Vec<VectorField>,
}

impl TimeDependentField {
    pub fn new(coeffs: Vec<VectorField>) -> Result<TimeDependentField> {
        let m = coeffs
            .first()
            .ok_or_else(|| Error::InvalidArgument("no time coefficients".into()))?
            .dim();
        if let Some(bad) = coeffs.iter().find(|f| f.dim() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: bad.dim(),
            });
        }
        Ok(TimeDependentField { coeffs })
    }

    /// `F_t = F` for all `t`, padded with zero fields up to `order`.
    pub fn autonomous(f: VectorField, order: usize) -> TimeDependentField {
        let m = f.dim();
        let mut coeffs = vec![f];
        coeffs.resize(order.max(1), VectorField::zero(m));
        TimeDependentField { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    /// `F_1, F_2, ...`.
    pub fn coeffs(&self) -> &[VectorField] {
        &self.coeffs
    }
}

/// Applies `B_n(F_1, ..., F_n)` to `ψ`; the word `d_{j_1}...d_{j_k}` acts as
/// `F_{j_1}[F_{j_2}[... F_{j_k}[ψ]]]`, leftmost letter outermost.
pub fn bell_apply(fields: &[VectorField], psi: &MultiPoly, n: u32) -> Result<MultiPoly> {
    if (fields.len() as u32) < n {
        return Err(Error::TruncationExceeded {
            requested: n as usize,
            available: fields.len(),
        });
    }
    let mut total = MultiPoly::zero();
    for (w, c) in bell::<Word>(n).terms() {
        let mut acc = psi.clone();
        for l in w.as_slice().iter().rev() {
            acc = fields[l.index() as usize - 1].lie(&acc)?;
        }
        total = total + acc.scale(c);
    }
    Ok(total)
}

/// Substitutes series for the variables, padding constants to `order`.
fn eval_on_series(
    p: &MultiPoly,
    ys: &[FormalSeries<MultiPoly>],
    order: usize,
) -> Result<FormalSeries<MultiPoly>> {
    Ok(promote(p.eval(ys)?, FormalSeries::zero(order)).0)
}

impl Zero for FormalSeries<MultiPoly> {
    fn zero() -> Self {
        FormalSeries::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs().iter().all(Zero::is_zero)
    }
}

impl One for FormalSeries<MultiPoly> {
    fn one() -> Self {
        FormalSeries::constant(MultiPoly::one(), 0)
    }
}

/// Ring structure on truncated series used only for substitution into
/// polynomials. Constants of order 0 are promoted to the other operand's order.
impl Add for FormalSeries<MultiPoly> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = promote(self, rhs);
        FormalSeries::add(&a, &b)
    }
}

impl Sub for FormalSeries<MultiPoly> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (a, b) = promote(self, rhs);
        FormalSeries::sub(&a, &b)
    }
}

impl Neg for FormalSeries<MultiPoly> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-Rational::one())
    }
}

impl Mul for FormalSeries<MultiPoly> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = promote(self, rhs);
        FormalSeries::mul(&a, &b)
    }
}

impl Ring for FormalSeries<MultiPoly> {
    fn scale(&self, r: &Rational) -> Self {
        FormalSeries::scale(self, r)
    }
}

fn promote(
    a: FormalSeries<MultiPoly>,
    b: FormalSeries<MultiPoly>,
) -> (FormalSeries<MultiPoly>, FormalSeries<MultiPoly>) {
    let pad = |s: FormalSeries<MultiPoly>, n: usize| {
        if s.order() == 0 && n > 0 {
            let mut c = s.coeffs().to_vec();
            c.resize(n + 1, MultiPoly::zero());
            FormalSeries::new(c).expect("non-empty")
        } else {
            s
        }
    };
    let (na, nb) = (a.order(), b.order());
    (pad(a, nb), pad(b, na))
}

/// `n! [t^n] ψ(y(t))` for `n = 0..=order`, where `y' = F_t(y)`, `y(0) = x`,
/// obtained by Picard iteration over series with polynomial coefficients.
pub fn flow_pullback_taylor(
    f: &TimeDependentField,
    psi: &MultiPoly,
    order: usize,
) -> Result<Vec<MultiPoly>> {
    if order > f.coeffs.len() {
        return Err(Error::TruncationExceeded {
            requested: order,
            available: f.coeffs.len(),
        });
    }
    let m = f.dim();
    if psi.nvars() > m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: psi.nvars(),
        });
    }
    let time_weight = |j: usize| Rational::one() / from_bigint(factorial(j as u32));
    let start: Vec<FormalSeries<MultiPoly>> = (0..m)
        .map(|i| FormalSeries::constant(MultiPoly::var(i), order))
        .collect();
    let mut y = start.clone();
    for _ in 0..order {
        let mut next = start.clone();
        for (i, yi) in next.iter_mut().enumerate() {
            // velocity(t) = Σ_j t^j/j! F_{j+1}^i(y(t))
            let mut velocity = FormalSeries::zero(order);
            for (j, fj) in f.coeffs.iter().enumerate().take(order) {
                let comp = eval_on_series(&fj.components[i], &y, order)?;
                let shifted = shift(&comp, j).scale(&time_weight(j));
                velocity = FormalSeries::add(&velocity, &shifted);
            }
            *yi = FormalSeries::add(yi, &integrate(&velocity));
        }
        y = next;
    }
    let pulled = eval_on_series(psi, &y, order)?;
    Ok((0..=order)
        .map(|n| pulled.divided(n).expect("within order"))
        .collect())
}

/// Multiplies by `t^j`, keeping the truncation order.
fn shift(s: &FormalSeries<MultiPoly>, j: usize) -> FormalSeries<MultiPoly> {
    let n = s.order();
    let mut c = vec![MultiPoly::zero(); n + 1];
    for k in 0..=n {
        if k + j <= n {
            c[k + j] = s.coeffs()[k].clone();
        }
    }
    FormalSeries::new(c).expect("non-empty")
}

/// `∫_0^t`, keeping the truncation order.
fn integrate(s: &FormalSeries<MultiPoly>) -> FormalSeries<MultiPoly> {
    let n = s.order();
    let mut c = vec![MultiPoly::zero(); n + 1];
    for k in 0..n {
        c[k + 1] = s.coeffs()[k].scale(&(Rational::one() / rat(k as i64 + 1)));
    }
    FormalSeries::new(c).expect("non-empty")
}

/// Random polynomial in `m` variables of degree `<= max_degree` with small
/// integer and half-integer coefficients.
pub fn random_multipoly<G: rand::Rng>(
    rng: &mut G,
    m: usize,
    max_degree: u32,
    terms: usize,
) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let mut e = vec![0u32; m];
        let mut budget = rng.gen_range(0..=max_degree);
        while budget > 0 {
            e[rng.gen_range(0..m)] += 1;
            budget -= 1;
        }
        let c = Rational::new(
            rng.gen_range(-3i64..=3).into(),
            rng.gen_range(1i64..=2).into(),
        );
        p.add_term(e, c);
    }
    p
}

pub fn random_field<G: rand::Rng>(rng: &mut G, m: usize, max_degree: u32) -> VectorField {
    VectorField {
        components: (0..m)
            .map(|_| random_multipoly(rng, m, max_degree, 3))
            .collect(),
    }
}

/// Field file format: per component a list of `{coeff, exponents}` records.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldDoc {
    /// `F_1, F_2, ...`, each a list of components.
    pub time_coefficients: Vec<Vec<Vec<MonomialDoc>>>,
    pub psi: Vec<MonomialDoc>,
}

impl MultiPoly {
    pub fn from_docs(docs: &[MonomialDoc]) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero();
        for d in docs {
            p.add_term(d.exponents.clone(), parse_rational(&d.coeff)?);
        }
        Ok(p)
    }

    pub fn to_docs(&self) -> Vec<MonomialDoc> {
        self.terms
            .iter()
            .map(|(e, c)| MonomialDoc {
                coeff: format_rational(c),
                exponents: e.clone(),
            })
            .collect()
    }
}

impl FieldDoc {
    pub fn parse(&self) -> Result<(TimeDependentField, MultiPoly)> {
        let coeffs = self
            .time_coefficients
            .iter()
            .map(|f| {
                VectorField::new(
                    f.iter()
                        .map(|c| MultiPoly::from_docs(c))
                        .collect::<Result<_>>()?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((
            TimeDependentField::new(coeffs)?,
            MultiPoly::from_docs(&self.psi)?,
        ))
    }
}

/// A reproducible random instance for the pullback check.
pub fn random_instance<G: rand::Rng>(
    rng: &mut G,
    m: usize,
    order: usize,
) -> (TimeDependentField, MultiPoly) {
    let coeffs = (0..order).map(|_| random_field(rng, m, 2)).collect();
    let psi = random_multipoly(rng, m, 2, 3);
    (TimeDependentField { coeffs }, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn one_dimensional_lie_derivative() {
        let f = VectorField::new(vec![&x(0) * &x(0)]).unwrap();
        assert_eq!(f.lie(&x(0)).unwrap(), &x(0) * &x(0));
        let psi = &x(0) * &(&x(0) * &x(0));
        // ψ' F = 3x^2 * x^2
        assert_eq!(f.lie(&psi).unwrap(), (&psi * &x(0)).scale(&rat(3)));
        assert!(f.lie(&x(1)).is_err());
    }

    #[test]
    fn leibniz_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let f = random_field(&mut rng, 2, 2);
            let a = random_multipoly(&mut rng, 2, 2, 3);
            let b = random_multipoly(&mut rng, 2, 2, 3);
            let lhs = f.lie(&(&a * &b)).unwrap();
            let rhs = &f.lie(&a).unwrap() * &b + &a * &f.lie(&b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn autonomous_flow_gives_powers() {
        let f = VectorField::new(vec![&x(0) * &x(1), x(0) + MultiPoly::constant(rat(1))]).unwrap();
        let psi = x(0) + &x(1) * &x(1);
        let taylor =
            flow_pullback_taylor(&TimeDependentField::autonomous(f.clone(), 4), &psi, 4).unwrap();
        let mut iterate = psi.clone();
        for t in taylor {
            assert_eq!(t, iterate);
            iterate = f.lie(&iterate).unwrap();
        }
    }

    #[test]
    fn time_dependent_flow_matches_bell_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (f, psi) = random_instance(&mut rng, 2, 4);
        let taylor = flow_pullback_taylor(&f, &psi, 4).unwrap();
        assert_eq!(taylor[0], psi);
        for (n, t) in taylor.iter().enumerate().skip(1) {
            assert_eq!(*t, bell_apply(f.coeffs(), &psi, n as u32).unwrap());
        }
        assert!(flow_pullback_taylor(&f, &psi, 5).is_err());
    }

    #[test]
    fn second_order_bell_operator() {
        let f1 = VectorField::new(vec![&x(0) * &x(0)]).unwrap();
        let f2 = VectorField::new(vec![MultiPoly::constant(rat(1))]).unwrap();
        let psi = &x(0) * &x(0);
        let got = bell_apply(&[f1.clone(), f2.clone()], &psi, 2).unwrap();
        assert_eq!(
            got,
            f1.lie(&f1.lie(&psi).unwrap()).unwrap() + f2.lie(&psi).unwrap()
        );
        assert_eq!(x(0).to_text(), "x1");
    }
}
