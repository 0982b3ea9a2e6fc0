//! Polynomials in one variable `q` with rational coefficients, and the
//! q-analogs `[n]`, `[n]!` and q-binomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{CommRing, Ring};
use crate::rational::{format_rational, rat, Rational};

/// Dense coefficient vector, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn constant(c: Rational) -> QPoly {
        QPoly::new(vec![c])
    }

    pub fn from_ints(cs: &[i64]) -> QPoly {
        QPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> QPoly {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        QPoly { coeffs: c }
    }

    /// `[n] = 1 + q + ... + q^{n-1}`; `[0] = 0`.
    pub fn q_int(n: u32) -> QPoly {
        QPoly::new(vec![Rational::one(); n as usize])
    }

    pub fn q_factorial(n: u32) -> QPoly {
        (1..=n).fold(QPoly::one(), |acc, i| &acc * &QPoly::q_int(i))
    }

    /// Gaussian binomial, built from the q-Pascal rule
    /// `[n, k] = [n-1, k-1] + q^k [n-1, k]`.
    pub fn q_binomial(n: u32, k: u32) -> QPoly {
        if k > n {
            return QPoly::zero();
        }
        let mut row = vec![QPoly::one()];
        for m in 1..=n as usize {
            let mut next = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let left = if j >= 1 {
                    row[j - 1].clone()
                } else {
                    QPoly::zero()
                };
                let right = if j < m {
                    &QPoly::q_pow(j) * &row[j]
                } else {
                    QPoly::zero()
                };
                next.push(&left + &right);
            }
            row = next;
        }
        row.swap_remove(k as usize)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.coeffs.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * q + c)
    }

    /// Long division; errors if the remainder is non-zero.
    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero q-polynomial".into()))?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(QPoly::zero())
            } else {
                Err(Error::NonPolynomialQuotient(format!("({self}) / ({d})")))
            };
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonPolynomialQuotient(format!("({self}) / ({d})")));
        }
        Ok(QPoly::new(quot))
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly::constant(Rational::one())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        &self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl Ring for QPoly {
    fn scale(&self, r: &Rational) -> Self {
        QPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }
}

impl CommRing for QPoly {}

impl fmt::Display for QPoly {
    /// Ascending powers: `1 + 2*q + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match deg {
                0 => String::new(),
                1 => "q".to_string(),
                d => format!("q^{d}"),
            };
            if var.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_binomials() {
        assert_eq!(QPoly::q_binomial(3, 1), QPoly::from_ints(&[1, 1, 1]));
        assert_eq!(QPoly::q_binomial(4, 2), QPoly::from_ints(&[1, 1, 2, 1, 1]));
        assert_eq!(QPoly::q_binomial(2, 3), QPoly::zero());
        let ratio = QPoly::q_factorial(5)
            .div_exact(&(&QPoly::q_factorial(2) * &QPoly::q_factorial(3)))
            .unwrap();
        assert_eq!(ratio, QPoly::q_binomial(5, 2));
        assert_eq!(QPoly::q_binomial(6, 3).eval(&rat(1)), rat(20));
    }

    #[test]
    fn inexact_division_is_an_error() {
        assert!(QPoly::from_ints(&[2]).div_exact(&QPoly::q_int(2)).is_err());
        assert_eq!(
            QPoly::from_ints(&[1, 0, -1])
                .div_exact(&QPoly::from_ints(&[1, 1]))
                .unwrap(),
            QPoly::from_ints(&[1, -1])
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            QPoly::from_ints(&[1, 2, 0, -1]).to_string(),
            "1 + 2*q - q^3"
        );
        assert_eq!(QPoly::zero().to_string(), "0");
    }
}
