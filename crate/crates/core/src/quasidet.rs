//! Quasideterminants and determinants.
//!
//! Polynomial entries are only supported in the Hessenberg case (ones below
//! the diagonal equal to `-1`, zeros further down), where the quasideterminant
//! at the top-right corner is a polynomial in the entries. Rational matrices
//! get the general definition through an exact inverse of the minor.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::Monomial;
use crate::error::{Error, Result};
use crate::format::{self, Symbol, TermDoc};
use crate::poly::{CommRing, Polynomial, Ring};
use crate::rational::{binomial, from_bigint, parse_rational, Rational};

/// Dense square matrix, row-major, indexed from 1 in the public accessors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Matrix<T>> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// `f(i, j)` with 1-based indices.
    pub fn from_fn<F: FnMut(usize, usize) -> T>(n: usize, mut f: F) -> Matrix<T> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(<[T]>::to_vec).collect()
    }

    /// Deletes row `p` and column `q` (1-based).
    pub fn minor(&self, p: usize, q: usize) -> Matrix<T> {
        let mut entries = Vec::with_capacity((self.n - 1) * (self.n - 1));
        for i in 1..=self.n {
            for j in 1..=self.n {
                if i != p && j != q {
                    entries.push(self.get(i, j).clone());
                }
            }
        }
        Matrix {
            n: self.n - 1,
            entries,
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn identity(n: usize) -> Matrix<T> {
        Matrix::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(self.n, |i, j| {
            (1..=self.n).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        })
    }

    /// Checks the `-1` band below the diagonal and zeros further down.
    pub fn check_hessenberg(&self) -> Result<()> {
        let minus_one = -T::one();
        for i in 1..=self.n {
            for j in 1..i {
                let e = self.get(i, j);
                if j + 1 == i && *e != minus_one {
                    return Err(Error::NotHessenberg(format!("entry ({i},{j}) must be -1")));
                }
                if j + 1 < i && !e.is_zero() {
                    return Err(Error::NotHessenberg(format!("entry ({i},{j}) must be 0")));
                }
            }
        }
        Ok(())
    }
}

/// `|A|_{1n}` of a Hessenberg matrix by `P(m) = Σ_{k=1}^{m} P(k-1) a_{km}`, `P(0) = 1`.
pub fn hessenberg_quasidet<T: Ring>(a: &Matrix<T>) -> Result<T> {
    a.check_hessenberg()?;
    let n = a.n();
    let mut p: Vec<T> = Vec::with_capacity(n + 1);
    p.push(T::one());
    for m in 1..=n {
        let next = (1..=m).fold(T::zero(), |acc, k| {
            acc + p[k - 1].clone() * a.get(k, m).clone()
        });
        p.push(next);
    }
    Ok(p.pop().expect("n >= 1"))
}

/// `a_{1n} + Σ a_{1 j_1} a_{j_1+1, j_2} ... a_{j_k+1, n}` over `1 <= j_1 < ... < j_k < n`.
pub fn hessenberg_quasidet_sum<T: Ring>(a: &Matrix<T>) -> Result<T> {
    a.check_hessenberg()?;
    let n = a.n();
    let mut total = T::zero();
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut row = 1;
        let mut prod = T::one();
        for j in 1..n {
            if mask & (1 << (j - 1)) != 0 {
                prod = prod * a.get(row, j).clone();
                row = j + 1;
            }
        }
        total = total + prod * a.get(row, n).clone();
    }
    Ok(total)
}

/// First-row expansion `P(n) = Σ_k a_{1,n-k} |M_k|`, where `M_k` is the
/// lower-right `k × k` block. Evaluated from the bottom corner upwards.
pub fn hessenberg_quasidet_first_row<T: Ring>(a: &Matrix<T>) -> Result<T> {
    a.check_hessenberg()?;
    let n = a.n();
    // q[i] is the quasideterminant of the block on rows and columns i..n.
    let mut q: Vec<T> = vec![T::zero(); n + 2];
    q[n + 1] = T::one();
    for i in (1..=n).rev() {
        q[i] = (i..=n).fold(T::zero(), |acc, j| {
            acc + a.get(i, j).clone() * q[j + 1].clone()
        });
    }
    Ok(q.swap_remove(1))
}

/// `(B_n)_{ij} = binom(j-1, i-1) d_{j-i+1}` on and above the diagonal, `-1` below it.
pub fn bell_matrix<M: Monomial>(n: usize) -> Matrix<Polynomial<M>> {
    Matrix::from_fn(n, |i, j| {
        if i <= j {
            Polynomial::d((j - i + 1) as u32)
                .scale(&from_bigint(binomial(j as u32 - 1, i as u32 - 1)))
        } else if i == j + 1 {
            -Polynomial::one()
        } else {
            Polynomial::zero()
        }
    })
}

/// `B_n = |B_n|_{1n}` (any letters; noncommutative is the interesting case).
pub fn bell_via_quasidet<M: Monomial>(n: usize) -> Polynomial<M> {
    if n == 0 {
        return Polynomial::one();
    }
    hessenberg_quasidet(&bell_matrix::<M>(n)).expect("Bell matrices are Hessenberg")
}

/// `B_n = det(B_n)` with commuting letters.
pub fn bell_via_det(n: usize) -> crate::poly::CPoly {
    if n == 0 {
        return crate::poly::CPoly::one();
    }
    det(&bell_matrix::<crate::alphabet::CMonomial>(n))
}

/// Determinant by Laplace expansion with memoization over column subsets;
/// `O(2^n n)` ring operations, suited to symbolic entries.
pub fn det<T: CommRing>(a: &Matrix<T>) -> T {
    let n = a.n();
    assert!(n < 25, "subset expansion is limited to small matrices");
    // d[mask] = signed sum over bijections from the first |mask| rows onto `mask`.
    let mut d: HashMap<u32, T> = HashMap::new();
    d.insert(0, T::one());
    for row in 1..=n {
        let mut next: HashMap<u32, T> = HashMap::new();
        for (mask, val) in &d {
            if val.is_zero() {
                continue;
            }
            for col in 1..=n {
                let bit = 1u32 << (col - 1);
                if mask & bit != 0 {
                    continue;
                }
                let e = a.get(row, col);
                if e.is_zero() {
                    continue;
                }
                let above = (mask >> col).count_ones();
                let term = val.clone() * e.clone();
                let term = if above % 2 == 1 { -term } else { term };
                let slot = next.entry(mask | bit).or_insert_with(T::zero);
                *slot = slot.clone() + term;
            }
        }
        d = next;
    }
    d.remove(&((1u32 << n) - 1)).unwrap_or_else(T::zero)
}

/// Fraction-free (Bareiss) elimination with row pivoting.
pub fn det_bareiss(a: &Matrix<Rational>) -> Rational {
    let n = a.n();
    let mut m = a.rows();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = Rational::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn inverse(a: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let n = a.n();
    let mut m = a.rows();
    let mut inv = Matrix::<Rational>::identity(n).rows();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularMinor)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = Rational::one() / &m[col][col];
        for j in 0..n {
            m[col][j] *= &scale;
            inv[col][j] *= &scale;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let (mv, iv) = (&f * &m[col][j], &f * &inv[col][j]);
                m[r][j] -= mv;
                inv[r][j] -= iv;
            }
        }
    }
    Matrix::from_rows(inv)
}

/// `|A|_{pq} = a_{pq} - Σ a_{pj} ((A^{pq})^{-1})_{ji} a_{iq}`, indices 1-based.
pub fn numeric_quasidet(a: &Matrix<Rational>, p: usize, q: usize) -> Result<Rational> {
    let n = a.n();
    if p == 0 || q == 0 || p > n || q > n {
        return Err(Error::InvalidArgument(format!(
            "index ({p},{q}) outside a {n}x{n} matrix"
        )));
    }
    if n == 1 {
        return Ok(a.get(1, 1).clone());
    }
    let inv = inverse(&a.minor(p, q))?;
    let rows: Vec<usize> = (1..=n).filter(|&i| i != p).collect();
    let cols: Vec<usize> = (1..=n).filter(|&j| j != q).collect();
    let mut s = Rational::zero();
    for (jj, &j) in cols.iter().enumerate() {
        for (ii, &i) in rows.iter().enumerate() {
            s += a.get(p, j) * inv.get(jj + 1, ii + 1) * a.get(i, q);
        }
    }
    Ok(a.get(p, q) - s)
}

/// `(-1)^{p+q} det A / det A^{pq}`; errors if the minor is singular.
pub fn quasidet_ratio(a: &Matrix<Rational>, p: usize, q: usize) -> Result<Rational> {
    if a.n() == 1 {
        return Ok(a.get(1, 1).clone());
    }
    let minor = det_bareiss(&a.minor(p, q));
    if minor.is_zero() {
        return Err(Error::SingularMinor);
    }
    let r = det_bareiss(a) / minor;
    Ok(if (p + q) % 2 == 1 { -r } else { r })
}

/// Table layout with the entry `(p, q)` bracketed as `[a]`.
pub fn pretty<T, F: Fn(&T) -> String>(a: &Matrix<T>, p: usize, q: usize, show: F) -> String
where
    T: Clone,
{
    let n = a.n();
    let cells: Vec<Vec<String>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let s = show(a.get(i, j));
                    if (i, j) == (p, q) {
                        format!("[{s}]")
                    } else {
                        format!(" {s} ")
                    }
                })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..n)
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push('|');
        out.push_str(line.join(" ").trim_end());
        out.push_str(" |\n");
    }
    out
}

/// Matrix file format: `{"algebra": "nc"|"c"|"q", "rows": [[entry, ...], ...]}`
/// where each entry is either a text polynomial or a list of terms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub algebra: String,
    pub rows: Vec<Vec<EntryDoc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryDoc {
    Text(String),
    Terms(Vec<TermDoc>),
}

impl MatrixDoc {
    pub fn polynomial_matrix<M: Monomial>(&self) -> Result<Matrix<Polynomial<M>>> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        EntryDoc::Text(s) => format::parse::<M>(s),
                        EntryDoc::Terms(t) => format::from_doc(&format::PolyDoc {
                            algebra: self.algebra.clone(),
                            variant: None,
                            terms: t.clone(),
                        }),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn rational_matrix(&self) -> Result<Matrix<Rational>> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        EntryDoc::Text(s) => parse_rational(s),
                        EntryDoc::Terms(_) => Err(Error::Parse(
                            "rational matrix entries must be strings".into(),
                        )),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn from_polynomial_matrix<M: Monomial>(a: &Matrix<Polynomial<M>>) -> MatrixDoc {
        MatrixDoc {
            algebra: if M::COMMUTATIVE { "c" } else { "nc" }.into(),
            rows: a
                .rows()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|p| EntryDoc::Terms(format::to_doc(p, Symbol::D).terms))
                        .collect()
                })
                .collect(),
        }
    }
}
