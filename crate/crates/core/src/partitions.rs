//! Set partitions of `{1..n}`: enumeration, max-ordered counts, the q-weight
//! statistic and Stirling/Bell numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::alphabet::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::parallel::{self, Exec};
use crate::qpoly::QPoly;
use crate::rational::binomial;

/// A partition of `{1..n}` in canonical form: blocks sorted internally and
/// listed by increasing minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    /// Validates and canonicalizes.
    pub fn new(n: u32, mut blocks: Vec<Vec<u32>>) -> Result<SetPartition> {
        let mut seen = vec![false; n as usize + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n || seen[x as usize] {
                    return Err(Error::InvalidArgument(format!(
                        "element {x} is out of range or repeated"
                    )));
                }
                seen[x as usize] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "blocks do not cover 1..{n}"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// From a restricted growth string (`rgs[i]` is the block of element `i+1`).
    fn from_rgs(rgs: &[u32]) -> SetPartition {
        let k = rgs.iter().max().map_or(0, |m| m + 1) as usize;
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b as usize].push(i as u32 + 1);
        }
        SetPartition {
            n: rgs.len() as u32,
            blocks,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Blocks listed by increasing maximum.
    pub fn blocks_by_max(&self) -> Vec<&[u32]> {
        let mut bs: Vec<&[u32]> = self.blocks.iter().map(Vec::as_slice).collect();
        bs.sort_unstable_by_key(|b| *b.last().expect("blocks are non-empty"));
        bs
    }

    /// Block sizes in max order.
    pub fn sizes_by_max(&self) -> Vec<u32> {
        self.blocks_by_max()
            .iter()
            .map(|b| b.len() as u32)
            .collect()
    }

    /// `|P|_m`: how many blocks have size `m`, as a map `m -> count`.
    pub fn size_census(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            *out.entry(b.len() as u32).or_insert(0) += 1;
        }
        out
    }

    /// `d_{|P_1|} ... d_{|P_k|}` with blocks in max order. For commutative
    /// monomials the order is immaterial.
    pub fn monomial<M: Monomial>(&self) -> M {
        M::from_letters(self.sizes_by_max().into_iter().map(Letter::d))
    }

    /// q-weight with the default reading ([`WeightReading::Displacement`]).
    pub fn weight(&self) -> u64 {
        self.weight_with(WeightReading::Displacement)
    }

    /// Repeatedly deletes the block with the largest maximum and relabels the
    /// survivors to `1..m` in order. Each step contributes `r_i` according to
    /// `reading`; the weight is the sum.
    pub fn weight_with(&self, reading: WeightReading) -> u64 {
        let mut blocks: Vec<Vec<u32>> = self
            .blocks_by_max()
            .into_iter()
            .map(<[u32]>::to_vec)
            .collect();
        let mut total = 0u64;
        while let Some(removed) = blocks.pop() {
            let rest: Vec<u32> = blocks.iter().flatten().copied().collect();
            let below = |y: u32| removed.iter().filter(|&&x| x < y).count() as u64;
            total += match reading {
                WeightReading::Displacement => rest.iter().map(|&y| below(y)).sum(),
                WeightReading::ChangedLabels => {
                    rest.iter().filter(|&&y| below(y) > 0).count() as u64
                }
                WeightReading::RemovedBelowRemaining => match rest.iter().max() {
                    Some(&top) => removed.iter().filter(|&&x| x < top).count() as u64,
                    None => 0,
                },
            };
            for b in &mut blocks {
                for y in b.iter_mut() {
                    *y -= below(*y) as u32;
                }
            }
        }
        total
    }
}

/// Readings of "number of relabelings" in the q-weight statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightReading {
    /// Total amount by which surviving labels decrease. Satisfies the
    /// q-binomial product law; the default.
    Displacement,
    /// Number of surviving elements whose label changes.
    ChangedLabels,
    /// Number of deleted elements lying below some survivor.
    RemovedBelowRemaining,
}

impl fmt::Display for SetPartition {
    /// `1 2 | 3 | 4 5`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Accepts `1 2 | 3 | 4 5`, or the compact `12|3|45` when no spaces occur.
    fn from_str(s: &str) -> Result<SetPartition> {
        let compact = !s.trim().contains(char::is_whitespace);
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let block: Vec<u32> = if compact {
                part.trim()
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .ok_or_else(|| Error::Parse(format!("bad element {c:?}")))
                    })
                    .collect::<Result<_>>()?
            } else {
                part.split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::Parse(format!("bad element {t:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum::<usize>() as u32;
        SetPartition::new(n, blocks)
    }
}

/// Iterator over all partitions of `{1..n}` in restricted-growth-string order.
pub struct Partitions {
    rgs: Vec<u32>,
    /// `prefix_max[i] = max(rgs[0..=i])`.
    prefix_max: Vec<u32>,
    done: bool,
}

impl Partitions {
    fn new(n: u32) -> Partitions {
        Partitions {
            rgs: vec![0; n as usize],
            prefix_max: vec![0; n as usize],
            done: n == 0,
        }
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let p = SetPartition::from_rgs(&self.rgs);
        self.advance();
        Some(p)
    }
}

/// Lazily enumerates the partitions of `{1..n}`.
pub fn partitions(n: u32) -> Result<Partitions> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "ground set must be non-empty".into(),
        ));
    }
    Ok(Partitions::new(n))
}

/// All partitions of `{1..n}`, or only those with exactly `k` blocks.
pub fn enumerate(n: u32, k: Option<usize>) -> Result<Vec<SetPartition>> {
    Ok(partitions(n)?
        .filter(|p| k.is_none_or(|k| p.k() == k))
        .collect())
}

fn check_sizes(sizes: &[u32]) -> Result<u32> {
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument(
            "block sizes must be positive".into(),
        ));
    }
    Ok(sizes.iter().sum())
}

/// Number of partitions of `{1..n}` into blocks of sizes `p_1..p_k` (in max
/// order) for every size list at once; keys are the size lists.
pub fn max_ordered_census(n: u32, exec: Exec) -> Result<BTreeMap<Vec<u32>, u64>> {
    let all = enumerate(n, None)?;
    Ok(parallel::fold_chunks(
        exec,
        &all,
        BTreeMap::new,
        |mut acc, p| {
            *acc.entry(p.sizes_by_max()).or_insert(0u64) += 1;
            acc
        },
        merge_counts,
    ))
}

fn merge_counts<K: Ord, V: std::ops::AddAssign>(
    mut a: BTreeMap<K, V>,
    b: BTreeMap<K, V>,
) -> BTreeMap<K, V> {
    for (k, v) in b {
        match a.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => *e.get_mut() += v,
        }
    }
    a
}

/// Brute-force `N(n; p_1..p_k)`. The blocks cover `Σp_i` elements; when
/// `n > Σp_i` the count is multiplied by the number of ways to choose them.
pub fn count_max_ordered(n: u32, sizes: &[u32]) -> Result<BigInt> {
    let s = check_sizes(sizes)?;
    if s > n {
        return Err(Error::InvalidArgument(format!(
            "block sizes sum to {s}, more than n = {n}"
        )));
    }
    if sizes.is_empty() {
        return Ok(BigInt::one());
    }
    let count = partitions(s)?
        .filter(|p| p.k() == sizes.len() && p.sizes_by_max() == sizes)
        .count();
    Ok(BigInt::from(count) * binomial(n, s))
}

/// `Π_i binom(p_1 + ... + p_{i+1} - 1, p_{i+1} - 1)`.
pub fn n_formula(sizes: &[u32]) -> Result<BigInt> {
    check_sizes(sizes)?;
    let mut s = sizes.first().copied().unwrap_or(0);
    let mut out = BigInt::one();
    for &p in sizes.iter().skip(1) {
        s += p;
        out *= binomial(s - 1, p - 1);
    }
    Ok(out)
}

/// The same product written as `Π_i binom(p_1 + ... + p_{i+1} - 1, p_1 + ... + p_i)`.
pub fn n_formula_alt(sizes: &[u32]) -> Result<BigInt> {
    check_sizes(sizes)?;
    let mut s = sizes.first().copied().unwrap_or(0);
    let mut out = BigInt::one();
    for &p in sizes.iter().skip(1) {
        out *= binomial(s + p - 1, s);
        s += p;
    }
    Ok(out)
}

/// Both sides of the q-counting law for one size list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCount {
    /// `Σ_P q^{w(P)}` over max-ordered partitions with these sizes.
    pub brute: QPoly,
    /// `Π_i [p_1 + ... + p_{i+1} - 1 choose p_{i+1} - 1]_q`.
    pub product: QPoly,
}

impl QCount {
    pub fn agrees(&self) -> bool {
        self.brute == self.product
    }
}

/// q-binomial product side of the q-counting law.
pub fn q_n_formula(sizes: &[u32]) -> Result<QPoly> {
    check_sizes(sizes)?;
    let mut s = sizes.first().copied().unwrap_or(0);
    let mut out = QPoly::one();
    for &p in sizes.iter().skip(1) {
        s += p;
        out = &out * &QPoly::q_binomial(s - 1, p - 1);
    }
    Ok(out)
}

fn weight_poly<'a, I: Iterator<Item = &'a SetPartition>>(ps: I, reading: WeightReading) -> QPoly {
    ps.fold(QPoly::zero(), |acc, p| {
        &acc + &QPoly::q_pow(p.weight_with(reading) as usize)
    })
}

pub fn qcount_max_ordered(sizes: &[u32]) -> Result<QCount> {
    qcount_max_ordered_with(sizes, WeightReading::Displacement)
}

pub fn qcount_max_ordered_with(sizes: &[u32], reading: WeightReading) -> Result<QCount> {
    let s = check_sizes(sizes)?;
    let product = q_n_formula(sizes)?;
    if s == 0 {
        return Ok(QCount {
            brute: QPoly::one(),
            product,
        });
    }
    let matching: Vec<SetPartition> = partitions(s)?
        .filter(|p| p.k() == sizes.len() && p.sizes_by_max() == sizes)
        .collect();
    Ok(QCount {
        brute: weight_poly(matching.iter(), reading),
        product,
    })
}

/// `Σ_P q^{w(P)}` grouped by max-ordered size list, over all partitions of `{1..n}`.
pub fn q_weight_census(
    n: u32,
    reading: WeightReading,
    exec: Exec,
) -> Result<BTreeMap<Vec<u32>, QPoly>> {
    let all = enumerate(n, None)?;
    Ok(parallel::fold_chunks(
        exec,
        &all,
        BTreeMap::new,
        |mut acc: BTreeMap<Vec<u32>, QPoly>, p| {
            let e = acc.entry(p.sizes_by_max()).or_insert_with(QPoly::zero);
            *e = &*e + &QPoly::q_pow(p.weight_with(reading) as usize);
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                let e = a.entry(k).or_insert_with(QPoly::zero);
                *e = &*e + &v;
            }
            a
        },
    ))
}

/// Stirling numbers of the second kind from `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for m in 1..=n as usize {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let stay = if j < m {
                &row[j] * BigInt::from(j)
            } else {
                BigInt::zero()
            };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row[k as usize].clone()
}

pub fn bell_number(n: u32) -> BigInt {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

/// Stirling number counted by enumeration.
pub fn stirling2_enumerated(n: u32, k: u32) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    if n == 0 {
        return Ok(1);
    }
    Ok(partitions(n)?.filter(|p| p.k() == k as usize).count() as u64)
}

/// Bell number counted by enumeration.
pub fn bell_number_enumerated(n: u32) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    Ok(partitions(n)?.count() as u64)
}
