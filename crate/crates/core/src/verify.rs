//! Cross-checking suites behind `ncbell verify`. Suites run concurrently;
//! reports come back in suite order and depend only on the configuration.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{CMonomial, Monomial, Word};
use crate::bell::{
    bell, bell_c_explicit, bell_explicit, bell_partial, bell_recursion, qbell, QNumerator,
};
use crate::error::{Error, Result};
use crate::hopf::{
    character_of_series, detect_convolution_order, random_unit_series, ConvolutionOrder, Fdb,
    HopfAlgebra, Side,
};
use crate::mobius::{expand_bell_symbols, MobiusAlgebra, MobiusCharacter};
use crate::parallel::{self, Exec};
use crate::partitions::{
    bell_number, enumerate, max_ordered_census, n_formula, qcount_max_ordered, stirling2,
    WeightReading,
};
use crate::poly::{NCPoly, Polynomial};
use crate::quasidet::{
    bell_via_det, bell_via_quasidet, det_bareiss, numeric_quasidet, quasidet_ratio, Matrix,
};
use crate::rational::{from_bigint, from_u64, Rational};
use crate::series::fields::{bell_apply, flow_pullback_taylor, random_instance};
use crate::series::{egf_bell_check, FormalSeries};
use crate::trees::{pushforward, tree_bell};

/// Independent groups of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Bell,
    Partitions,
    Quasidet,
    Hopf,
    Mobius,
    Series,
    Q,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Bell,
        Suite::Partitions,
        Suite::Quasidet,
        Suite::Hopf,
        Suite::Mobius,
        Suite::Series,
        Suite::Q,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bell => "bell",
            Suite::Partitions => "partitions",
            Suite::Quasidet => "quasidet",
            Suite::Hopf => "hopf",
            Suite::Mobius => "mobius",
            Suite::Series => "series",
            Suite::Q => "q",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Upper degree for every family of checks (individual checks cap it further).
    pub max_degree: u32,
    pub seed: u64,
    /// Random samples per randomized check.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_degree: 6,
            seed: 2024,
            samples: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// First witness of failure; empty on success.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Default)]
struct Checks(Vec<CheckResult>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, failures: Vec<String>) {
        self.0.push(CheckResult {
            name: name.into(),
            passed: failures.is_empty(),
            detail: failures.into_iter().next().unwrap_or_default(),
        });
    }

    fn check_result(&mut self, name: impl Into<String>, r: Result<Vec<String>>) {
        match r {
            Ok(f) => self.check(name, f),
            Err(e) => self.check(name, vec![format!("error: {e}")]),
        }
    }
}

fn fails(cond: bool, what: impl FnOnce() -> String) -> Option<String> {
    (!cond).then(what)
}

/// Runs the requested suites and returns their reports in the order given.
pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Vec<SuiteReport> {
    parallel::map(Exec::default(), suites, |&s| SuiteReport {
        suite: s,
        checks: run_suite(s, cfg).0,
    })
}

fn run_suite(s: Suite, cfg: &VerifyConfig) -> Checks {
    let mut c = Checks::default();
    match s {
        Suite::Bell => bell_suite(&mut c, cfg),
        Suite::Partitions => partition_suite(&mut c, cfg),
        Suite::Quasidet => quasidet_suite(&mut c, cfg),
        Suite::Hopf => {
            hopf_suite(&mut c, cfg, &HopfAlgebra::<CMonomial>::new());
            hopf_suite(&mut c, cfg, &HopfAlgebra::<Word>::new());
            character_suite(&mut c, cfg);
        }
        Suite::Mobius => {
            mobius_suite::<CMonomial>(&mut c, cfg, "c");
            mobius_suite::<Word>(&mut c, cfg, "nc");
        }
        Suite::Series => series_suite(&mut c, cfg),
        Suite::Q => q_suite(&mut c, cfg),
    }
    c
}

/// Plain-text pass/fail table.
pub fn render_table(reports: &[SuiteReport]) -> String {
    let width = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .map(|c| c.name.len() + r.suite.name().len() + 1)
        })
        .max()
        .unwrap_or(10);
    let mut out = String::new();
    for r in reports {
        for ch in &r.checks {
            let label = format!("{}/{}", r.suite, ch.name);
            let status = if ch.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{label:<width$}  {status}"));
            if !ch.passed {
                out.push_str(&format!("  {}", ch.detail));
            }
            out.push('\n');
        }
    }
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: usize = reports
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| !c.passed)
        .count();
    out.push_str(&format!(
        "{} checks, {} passed, {} failed\n",
        total,
        total - failed,
        failed
    ));
    out
}

fn bell_suite(c: &mut Checks, cfg: &VerifyConfig) {
    let n_max = cfg.max_degree.min(8);
    c.check(
        "term count 2^(n-1)",
        (1..=cfg.max_degree.min(12))
            .filter_map(|n| {
                let len = bell::<Word>(n).len();
                fails(len == 1 << (n - 1), || format!("B_{n} has {len} terms"))
            })
            .collect(),
    );
    c.check_result(
        "noncommutative constructions agree",
        (0..=n_max)
            .map(|n| {
                let b = bell::<Word>(n);
                let explicit = (0..=n).fold(NCPoly::zero(), |acc, k| acc + bell_explicit(n, k));
                let mut out = Vec::new();
                out.extend(fails(bell_recursion::<Word>(n) == b, || {
                    format!("binomial recursion at n = {n}")
                }));
                out.extend(fails(explicit == b, || format!("kappa sum at n = {n}")));
                if n >= 1 {
                    out.extend(fails(bell_via_quasidet::<Word>(n as usize) == b, || {
                        format!("quasideterminant at n = {n}")
                    }));
                }
                out.extend(fails(pushforward(&b)? == tree_bell(n, true), || {
                    format!("trees at n = {n}")
                }));
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.concat()),
    );
    c.check_result(
        "commutative constructions agree",
        (0..=n_max)
            .map(|n| {
                let b = bell::<CMonomial>(n);
                let mut out = Vec::new();
                out.extend(fails(bell_recursion::<CMonomial>(n) == b, || {
                    format!("binomial recursion at n = {n}")
                }));
                let explicit =
                    (0..=n).fold(Polynomial::zero(), |acc, k| acc + bell_c_explicit(n, k));
                out.extend(fails(explicit == b, || {
                    format!("multinomial sum at n = {n}")
                }));
                out.extend(fails(bell::<Word>(n).abelianize() == b, || {
                    format!("abelianization at n = {n}")
                }));
                if n >= 1 {
                    out.extend(fails(bell_via_det(n as usize) == b, || {
                        format!("determinant at n = {n}")
                    }));
                    out.extend(fails(
                        bell_via_quasidet::<CMonomial>(n as usize) == b,
                        || format!("quasideterminant at n = {n}"),
                    ));
                    let sum = enumerate(n, None)?
                        .iter()
                        .fold(Polynomial::zero(), |acc, p| {
                            acc + Polynomial::monomial(p.monomial::<CMonomial>(), Rational::one())
                        });
                    out.extend(fails(sum == b, || format!("partition sum at n = {n}")));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.concat()),
    );
    c.check_result(
        "exponential generating series",
        egf_bell_check(n_max.max(1) as usize)
            .map(|r| r.mismatches.iter().map(|n| format!("degree {n}")).collect()),
    );
}

fn partition_suite(c: &mut Checks, cfg: &VerifyConfig) {
    let n_max = cfg.max_degree.min(9);
    c.check_result(
        "coefficients count max-ordered partitions",
        coefficient_oracle(n_max),
    );
    c.check(
        "Stirling and Bell numbers",
        (1..=n_max)
            .flat_map(|n| {
                let mut out: Vec<String> = (1..=n)
                    .filter_map(|k| {
                        let v = bell_partial::<CMonomial>(n, k).coefficient_sum();
                        fails(v == from_bigint(stirling2(n, k)), || format!("S({n},{k})"))
                    })
                    .collect();
                out.extend(fails(
                    bell::<CMonomial>(n).coefficient_sum() == from_bigint(bell_number(n)),
                    || format!("Bell number {n}"),
                ));
                out
            })
            .collect(),
    );
}

/// For every word of `B_{n,k}`, `n <= n_max`: coefficient = max-ordered count = product formula.
pub fn coefficient_oracle(n_max: u32) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let census = max_ordered_census(n, Exec::default())?;
        let b = bell::<Word>(n);
        for (w, coeff) in b.terms() {
            let sizes = w.indices().expect("no inverse letters");
            let brute = census.get(&sizes).copied().unwrap_or(0);
            let formula = from_bigint(n_formula(&sizes)?);
            if *coeff != from_u64(brute) || *coeff != formula {
                out.push(format!(
                    "word {sizes:?}: coefficient {coeff}, count {brute}, formula {formula}"
                ));
            }
        }
        if census.len() != b.len() {
            out.push(format!(
                "n = {n}: {} size lists but {} words",
                census.len(),
                b.len()
            ));
        }
    }
    Ok(out)
}

/// Random `n × n` matrix with small rational entries.
pub fn random_rational_matrix<G: Rng>(rng: &mut G, n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, |_, _| {
        Rational::new(
            rng.gen_range(-5i64..=5).into(),
            rng.gen_range(1i64..=4).into(),
        )
    })
}

/// Numeric quasideterminants against signed determinant ratios on `count`
/// random nonsingular matrices of sizes 2..=6, at every entry.
pub fn quasidet_ratio_check(count: usize, seed: u64) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tested = 0;
    while tested < count {
        let n = 2 + tested % 5;
        let a = random_rational_matrix(&mut rng, n);
        if det_bareiss(&a).is_zero() {
            continue;
        }
        tested += 1;
        for p in 1..=n {
            for q in 1..=n {
                match (numeric_quasidet(&a, p, q), quasidet_ratio(&a, p, q)) {
                    (Ok(x), Ok(y)) if x == y => {}
                    (Err(_), Err(_)) => {}
                    (x, y) => out.push(format!("{n}x{n} at ({p},{q}): {x:?} vs {y:?}")),
                }
            }
        }
    }
    Ok(out)
}

fn quasidet_suite(c: &mut Checks, cfg: &VerifyConfig) {
    c.check_result(
        "quasideterminant = signed determinant ratio",
        quasidet_ratio_check(cfg.samples.max(1) * 5, cfg.seed),
    );
    let n_max = cfg.max_degree.min(8) as usize;
    c.check(
        "Bell matrix quasideterminant",
        (1..=n_max)
            .filter_map(|n| {
                fails(
                    bell_via_quasidet::<Word>(n) == bell::<Word>(n as u32),
                    || format!("n = {n}"),
                )
            })
            .collect(),
    );
}

fn hopf_suite<M: Monomial>(c: &mut Checks, cfg: &VerifyConfig, h: &HopfAlgebra<M>) {
    let v = h.variant().name();
    let n_oracle = cfg.max_degree.min(6);
    c.check_result(
        format!("{v} coproduct = partition oracle"),
        (0..=n_oracle)
            .map(|n| {
                Ok(fails(
                    h.coproduct_oracle(n, Exec::default())? == h.coproduct_generator(n),
                    || format!("n = {n}"),
                ))
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().flatten().collect()),
    );
    let n_anti = cfg.max_degree.min(7);
    c.check_result(
        format!("{v} antipodes agree"),
        (1..=n_anti)
            .map(|n| {
                let right = h.antipode_recursive(n, Side::RightLeg);
                let mut out = Vec::new();
                out.extend(fails(
                    h.antipode_recursive(n, Side::LeftLeg) == right,
                    || format!("left vs right recursion at n = {n}"),
                ));
                out.extend(fails(h.antipode_quasidet(n)? == right, || {
                    format!("quasideterminant at n = {n}")
                }));
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.concat()),
    );
    c.check_result(
        format!("{v} Hopf axioms"),
        h.hopf_axiom_check(cfg.max_degree.min(7), cfg.samples, cfg.seed)
            .map(|r| r.failures),
    );
}

fn character_suite(c: &mut Checks, cfg: &VerifyConfig) {
    let fdb = Fdb::new();
    let dfdb = HopfAlgebra::<Word>::new();
    let n_max = cfg.max_degree.min(7);
    c.check(
        "abelianized DFdB = FdB",
        (1..=n_max)
            .filter_map(|n| {
                let cm = |w: &Word| CMonomial::from(w);
                let d = dfdb.coproduct_generator(n).map_monomials(cm) == fdb.coproduct_generator(n);
                let s = dfdb.antipode_recursive(n, Side::RightLeg).abelianize()
                    == fdb.antipode_recursive(n, Side::RightLeg);
                fails(d && s, || format!("n = {n}"))
            })
            .collect(),
    );
    c.check_result(
        "characters compose",
        character_composition(cfg.max_degree.min(8) as usize, cfg.samples, cfg.seed),
    );
}

/// Fixes the convolution order on a first pair at degree 3, then checks
/// `φ_f ⋆ φ_g` against the composed series and `φ_g ∘ S` against the reversion.
pub fn character_composition(order: usize, samples: usize, seed: u64) -> Result<Vec<String>> {
    let h = Fdb::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (f0, g0) = (
        random_unit_series(&mut rng, 4),
        random_unit_series(&mut rng, 4),
    );
    let Some(dir) = detect_convolution_order(&h, &f0, &g0)? else {
        return Ok(vec!["no composition order matches convolution".into()]);
    };
    let order = order + 1;
    let mut out = Vec::new();
    for i in 0..samples {
        let f = random_unit_series(&mut rng, order);
        let g = random_unit_series(&mut rng, order);
        let conv = h.convolve(&character_of_series(&f)?, &character_of_series(&g)?)?;
        let composed = match dir {
            ConvolutionOrder::LeftInner => g.compose(&f)?,
            ConvolutionOrder::RightInner => f.compose(&g)?,
        };
        if conv != character_of_series(&composed)? {
            out.push(format!("convolution, sample {i}"));
        }
        let small = g.truncate(order.min(7));
        let s = h.compose_antipode(&character_of_series(&small)?)?;
        if s != character_of_series(&small.reversion()?)? {
            out.push(format!("antipode vs reversion, sample {i}"));
        }
    }
    Ok(out)
}

fn mobius_suite<M: Monomial>(c: &mut Checks, cfg: &VerifyConfig, tag: &str) {
    let m = MobiusAlgebra::<M>::new();
    let n_max = cfg.max_degree.min(6);
    c.check_result(
        format!("{tag} inversion round trip"),
        (1..=n_max)
            .map(|n| {
                Ok(fails(
                    expand_bell_symbols(&m.mobius_invert(n)?)? == Polynomial::d(n),
                    || format!("n = {n}"),
                ))
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().flatten().collect()),
    );
    c.check_result(
        format!("{tag} left antipode = right antipode"),
        (1..=n_max)
            .map(|n| {
                Ok(fails(
                    m.antipode_m(n, Side::LeftLeg)? == m.antipode_m(n, Side::RightLeg)?,
                    || format!("n = {n}"),
                ))
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().flatten().collect()),
    );
    c.check_result(
        format!("{tag} mu * zeta = zeta * mu = counit"),
        (|| {
            let mu = m.mobius_char(n_max as usize)?;
            let zeta = MobiusCharacter::zeta(n_max as usize);
            let eps = MobiusCharacter::counit(n_max as usize);
            let mut out = Vec::new();
            out.extend(fails(m.convolve(&mu, &zeta)? == eps, || {
                "mu * zeta".to_string()
            }));
            out.extend(fails(m.convolve(&zeta, &mu)? == eps, || {
                "zeta * mu".to_string()
            }));
            Ok(out)
        })(),
    );
}

/// Random series with zero constant term and small rational coefficients.
pub fn random_series<G: Rng>(rng: &mut G, order: usize) -> FormalSeries<Rational> {
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend((1..=order).map(|_| {
        Rational::new(
            rng.gen_range(-4i64..=4).into(),
            rng.gen_range(1i64..=3).into(),
        )
    }));
    FormalSeries::new(coeffs).expect("non-empty")
}

/// `compose = compose_via_bell` on random pairs.
pub fn riordan_check(order: usize, samples: usize, seed: u64) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..samples {
        let f = random_series(&mut rng, order);
        let g = random_series(&mut rng, order);
        if f.compose(&g)? != f.compose_via_bell(&g)? {
            out.push(format!("sample {i}"));
        }
    }
    Ok(out)
}

/// `flow_pullback_taylor = bell_apply` on random polynomial fields.
pub fn flow_check(samples: usize, max_dim: usize, order: usize, seed: u64) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..samples {
        let m = 1 + i % max_dim;
        let (f, psi) = random_instance(&mut rng, m, order);
        let taylor = flow_pullback_taylor(&f, &psi, order)?;
        for (n, t) in taylor.iter().enumerate().skip(1) {
            if *t != bell_apply(f.coeffs(), &psi, n as u32)? {
                out.push(format!("sample {i} (m = {m}), order {n}"));
            }
        }
    }
    Ok(out)
}

fn series_suite(c: &mut Checks, cfg: &VerifyConfig) {
    let order = cfg.max_degree.clamp(1, 8) as usize;
    c.check_result(
        "compose = Riordan formula",
        riordan_check(order, cfg.samples, cfg.seed),
    );
    c.check_result(
        "reversion round trip",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 1);
            let mut out = Vec::new();
            for i in 0..cfg.samples {
                let g = random_unit_series(&mut rng, order);
                let h = g.reversion()?;
                let t = FormalSeries::identity(order);
                out.extend(fails(g.compose(&h)? == t && h.compose(&g)? == t, || {
                    format!("sample {i}")
                }));
            }
            Ok(out)
        })(),
    );
    c.check_result(
        "pullback = Bell operators",
        flow_check(
            cfg.samples,
            3,
            cfg.max_degree.clamp(1, 5) as usize,
            cfg.seed ^ 2,
        ),
    );
}

fn q_suite(c: &mut Checks, cfg: &VerifyConfig) {
    let n_max = cfg.max_degree.min(8);
    c.check_result(
        "q-counting law",
        (1..=n_max)
            .map(|n| {
                let census = crate::partitions::q_weight_census(
                    n,
                    WeightReading::Displacement,
                    Exec::default(),
                )?;
                let mut out = Vec::new();
                for (sizes, q) in census {
                    if q != crate::partitions::q_n_formula(&sizes)? {
                        out.push(format!("sizes {sizes:?}"));
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.concat()),
    );
    c.check_result(
        "q-Bell at q = 1",
        (1..=n_max)
            .flat_map(|n| (1..=n).map(move |k| (n, k)))
            .map(|(n, k)| {
                let q = qbell(n, k, QNumerator::Bracketed)?;
                let mut out = Vec::new();
                out.extend(fails(
                    q.at_q(&Rational::one()) == bell_partial::<CMonomial>(n, k),
                    || format!("B_{{{n},{k}}}"),
                ));
                for (w, c) in &q.word_coeffs {
                    let count = qcount_max_ordered(&w.indices().expect("plain word"))?;
                    out.extend(fails(*c == count.product, || format!("word {w:?}")));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.concat()),
    );
}
