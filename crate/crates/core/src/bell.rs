//! Bell polynomials: the derivation recursion, the binomial recursion, the
//! composition sum with `κ` weights, the commutative multinomial formula,
//! scaled polynomials and the commutative q-analog.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::alphabet::{CMonomial, Monomial, Word};
use crate::error::{Error, Result};
use crate::format::{bracketed_term, monomial_text, Symbol};
use crate::parallel::{self, Exec};
use crate::poly::{CPoly, NCPoly, Polynomial, Ring};
use crate::qpoly::QPoly;
use crate::rational::{binomial, factorial, from_bigint, multinomial, Rational};

/// Commutative or noncommutative letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    C,
    NC,
}

/// `B_0 = 1`, `B_n = (d_1 + ∂) B_{n-1}`.
pub fn bell<M: Monomial>(n: u32) -> Polynomial<M> {
    bell_sequence(n).pop().expect("sequence is non-empty")
}

/// `[B_0, ..., B_n]` by the derivation recursion.
pub fn bell_sequence<M: Monomial>(n: u32) -> Vec<Polynomial<M>> {
    let d1 = Polynomial::<M>::d(1);
    let mut out = vec![Polynomial::one()];
    for _ in 0..n {
        let prev = out.last().expect("non-empty");
        let next = &(&d1 * prev)
            + &prev
                .derive()
                .expect("Bell polynomials have no inverse letters");
        out.push(next);
    }
    out
}

/// `[B_0, ..., B_n]` by `B_{m+1} = Σ_k binom(m, k) B_{m-k} d_{k+1}`. No derivation involved.
pub fn bell_sequence_recursion<M: Monomial>(n: u32) -> Vec<Polynomial<M>> {
    let mut out: Vec<Polynomial<M>> = vec![Polynomial::one()];
    for m in 0..n {
        let mut next = Polynomial::zero();
        for k in 0..=m {
            let term = &out[(m - k) as usize] * &Polynomial::d(k + 1);
            next += term.scale(&from_bigint(binomial(m, k)));
        }
        out.push(next);
    }
    out
}

pub fn bell_recursion<M: Monomial>(n: u32) -> Polynomial<M> {
    bell_sequence_recursion(n)
        .pop()
        .expect("sequence is non-empty")
}

/// `B_{n,k}`: the length-`k` part of `B_n`. Zero for `k > n` and for `k = 0 < n`.
pub fn bell_partial<M: Monomial>(n: u32, k: u32) -> Polynomial<M> {
    if k > n {
        return Polynomial::zero();
    }
    bell::<M>(n).restrict_length(k as usize)
}

/// `κ(d_{j_1}...d_{j_k}) = j_1...j_k / (j_1 (j_1+j_2) ... (j_1+...+j_k))`.
pub fn kappa(w: &Word) -> Result<Rational> {
    let js = w
        .indices()
        .ok_or_else(|| Error::InvalidArgument("κ is undefined on d1^-1".into()))?;
    if js.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(kappa_of(&js))
}

fn kappa_of(js: &[u32]) -> Rational {
    let mut s = 0u64;
    let mut num = Rational::one();
    let mut den = Rational::one();
    for &j in js {
        s += j as u64;
        num *= Rational::from_integer(j.into());
        den *= Rational::from_integer(s.into());
    }
    num / den
}

/// Compositions of `n` into exactly `k` positive parts, lexicographically.
pub fn compositions(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, slots: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if rest < slots {
            return;
        }
        for j in 1..=rest - (slots - 1) {
            prefix.push(j);
            go(rest - j, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// `B_{n,k} = Σ_ω binom(n; ω) κ(ω) ω` over compositions of `n` into `k` parts.
pub fn bell_explicit(n: u32, k: u32) -> NCPoly {
    bell_explicit_with(n, k, Exec::default())
}

pub fn bell_explicit_with(n: u32, k: u32, exec: Exec) -> NCPoly {
    let comps = compositions(n, k);
    let terms = parallel::map(exec, &comps, |js| {
        let c = from_bigint(multinomial(n, js)) * kappa_of(js);
        (Word::from_indices(js), c)
    });
    NCPoly::from_terms(terms)
}

/// Integer partitions of `n` into exactly `k` parts, as multiplicity vectors
/// `α` with `α[i-1]` parts equal to `i`.
fn multiplicity_vectors(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, parts: u32, largest: u32, alpha: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(alpha.clone());
            }
            return;
        }
        for i in (1..=largest.min(rest)).rev() {
            if i * parts < rest {
                break;
            }
            alpha[i as usize - 1] += 1;
            go(rest - i, parts - 1, i, alpha, out);
            alpha[i as usize - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, k, n, &mut vec![0; n as usize], &mut out);
    out
}

/// `B_{n,k} = Σ_α n!/(α_1!...α_n!) Π (d_i/i!)^{α_i}` with commuting letters.
pub fn bell_c_explicit(n: u32, k: u32) -> CPoly {
    if k == 0 || k > n {
        return if n == 0 && k == 0 {
            CPoly::one()
        } else {
            CPoly::zero()
        };
    }
    let mut out = CPoly::zero();
    for alpha in multiplicity_vectors(n, k) {
        let mut c = from_bigint(factorial(n));
        let mut exps = Vec::new();
        for (idx, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let i = idx as u32 + 1;
            c /= from_bigint(factorial(a));
            c /= from_bigint(factorial(i).pow(a));
            exps.push((i, a as i32));
        }
        let m = CMonomial::from_exponents(exps).expect("positive exponents");
        out.add_term(m, c);
    }
    out
}

/// `Q_{n,k} = (1/n!) B_{n,k}(1! d_1, 2! d_2, ...)`.
pub fn bell_scaled(n: u32, k: u32) -> NCPoly {
    let b = bell_partial::<Word>(n, k);
    let scaled = b
        .substitute(|l| Some(NCPoly::letter(l).scale(&from_bigint(factorial(l.index())))))
        .expect("every letter has an image");
    scaled.scale(&(Rational::one() / from_bigint(factorial(n))))
}

/// `Q_n = Σ_k Q_{n,k}`.
pub fn bell_scaled_total(n: u32) -> NCPoly {
    (1..=n).fold(NCPoly::zero(), |acc, k| acc + bell_scaled(n, k))
}

/// `Σ_ω κ(ω) ω` over compositions of `n` into `k` parts.
pub fn kappa_sum(n: u32, k: u32) -> NCPoly {
    NCPoly::from_terms(
        compositions(n, k)
            .into_iter()
            .map(|js| (Word::from_indices(&js), kappa_of(&js))),
    )
}

/// How the numerator `p_1 ... p_k` of the q-Bell coefficient is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QNumerator {
    /// Plain integers over q-brackets. Yields non-polynomial quotients.
    Plain,
    /// `[p_1] ... [p_k]`; the working reading.
    #[default]
    Bracketed,
}

/// Commutative q-Bell polynomial: coefficients are polynomials in `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBell {
    pub n: u32,
    pub k: u32,
    /// Per-word coefficients before the letters are allowed to commute.
    pub word_coeffs: BTreeMap<Word, QPoly>,
    pub terms: BTreeMap<CMonomial, QPoly>,
}

impl QBell {
    /// Specializes `q` to a rational value.
    pub fn at_q(&self, q: &Rational) -> CPoly {
        CPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.eval(q))))
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| bracketed_term(&c.to_string(), &monomial_text(m, Symbol::D)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `Σ_ω ([n]!/([p_1]!...[p_k]!)) · num(ω) / ([p_1][p_1+p_2]...[p_1+...+p_k]) · ω`.
pub fn qbell(n: u32, k: u32, numerator: QNumerator) -> Result<QBell> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "q-Bell needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut word_coeffs = BTreeMap::new();
    let mut terms: BTreeMap<CMonomial, QPoly> = BTreeMap::new();
    for js in compositions(n, k) {
        let mut num = QPoly::q_factorial(n);
        let mut den = QPoly::one();
        let mut s = 0;
        for &p in &js {
            s += p;
            den = &den * &(&QPoly::q_factorial(p) * &QPoly::q_int(s));
            num = match numerator {
                QNumerator::Plain => Ring::scale(&num, &Rational::from_integer(p.into())),
                QNumerator::Bracketed => &num * &QPoly::q_int(p),
            };
        }
        let c = num.div_exact(&den)?;
        let w = Word::from_indices(&js);
        let cm = CMonomial::from(&w);
        let slot = terms.entry(cm).or_insert_with(QPoly::zero);
        *slot = &*slot + &c;
        word_coeffs.insert(w, c);
    }
    Ok(QBell {
        n,
        k,
        word_coeffs,
        terms,
    })
}

/// Word coefficients of `B_{n,k}` in max-ordered form: `Π binom(s_{i+1}-1, p_{i+1}-1)`.
pub fn coefficient_product(js: &[u32]) -> Rational {
    let mut s = js.first().copied().unwrap_or(0);
    let mut out = Rational::one();
    for &p in js.iter().skip(1) {
        s += p;
        out *= from_bigint(binomial(s - 1, p - 1));
    }
    out
}

/// `true` if every coefficient is a positive integer.
pub fn has_positive_integer_coefficients<M: Monomial>(p: &Polynomial<M>) -> bool {
    p.terms()
        .all(|(_, c)| c.is_integer() && c > &Rational::zero())
}
