//! Acceptance criteria, one line each. Exact comparisons throughout.
//! Runs without the libtest harness so every line is printed on every run;
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use ncbell::bell::{
    bell, bell_c_explicit, bell_explicit, bell_partial, bell_recursion, bell_scaled_total, qbell,
    QNumerator,
};
use ncbell::format::{parse, to_text, Symbol};
use ncbell::hopf::{HopfAlgebra, Side};
use ncbell::mobius::{expand_bell_symbols, MobiusAlgebra, MobiusCharacter};
use ncbell::partitions::{
    bell_number, enumerate, q_n_formula, q_weight_census, stirling2, SetPartition, WeightReading,
};
use ncbell::quasidet::{bell_via_det, bell_via_quasidet, hessenberg_quasidet, Matrix};
use ncbell::rational::{from_bigint, rat};
use ncbell::series::egf_bell_check;
use ncbell::tensor::Tensor;
use ncbell::trees::{pushforward, tree_bell};
use ncbell::verify::{
    character_composition, coefficient_oracle, flow_check, quasidet_ratio_check, riordan_check,
};
use ncbell::{CMonomial, Exec, Monomial, NCPoly, Polynomial, Rational, Word};

const SEED: u64 = 20_240_601;

type Outcome = Vec<String>;

fn p<M: Monomial>(s: &str) -> Polynomial<M> {
    parse(s).unwrap_or_else(|e| panic!("golden {s:?} does not parse: {e}"))
}

fn expect<T: PartialEq + std::fmt::Debug>(out: &mut Outcome, what: &str, got: T, want: T) {
    if got != want {
        let clip = |s: String| {
            if s.len() > 160 {
                format!("{}...", &s[..160])
            } else {
                s
            }
        };
        out.push(format!(
            "{what}: got {}, want {}",
            clip(format!("{got:?}")),
            clip(format!("{want:?}"))
        ));
    }
}

/// Polynomial comparison reporting `got - want` in text form.
fn expect_poly<M: Monomial>(
    out: &mut Outcome,
    what: &str,
    got: Polynomial<M>,
    want: Polynomial<M>,
) {
    if got != want {
        out.push(format!(
            "{what}: got - want = {}",
            to_text(&(got - want), Symbol::D)
        ));
    }
}

fn ok<T>(out: &mut Outcome, what: &str, r: ncbell::Result<T>) -> Option<T> {
    r.map_err(|e| out.push(format!("{what}: error {e}"))).ok()
}

fn golden_tables() -> Outcome {
    let mut out = Vec::new();
    let table = [
        "1",
        "d1",
        "d1^2 + d2",
        "d1^3 + d2*d1 + 2*d1*d2 + d3",
        "d1^4 + 3*d1^2*d2 + 3*d2^2 + d3*d1 + d2*d1^2 + 2*d1*d2*d1 + 3*d1*d3 + d4",
        "d1^5 + 6*d1^2*d3 + 6*d2*d3 + 4*d3*d2 + 4*d1^3*d2 + 4*d2*d1*d2 + 8*d1*d2^2 + d4*d1 \
         + 3*d1^2*d2*d1 + 3*d2^2*d1 + d3*d1^2 + d2*d1^3 + 2*d1*d2*d1^2 + 3*d1*d3*d1 + 4*d1*d4 + d5",
    ];
    for (n, s) in table.iter().enumerate() {
        expect_poly(&mut out, &format!("B_{n}"), bell::<Word>(n as u32), p(s));
    }
    expect(&mut out, "terms of B_5", bell::<Word>(5).len(), 16);
    expect_poly(
        &mut out,
        "B_{3,2}",
        bell_partial::<Word>(3, 2),
        p("d2*d1 + 2*d1*d2"),
    );
    expect_poly(&mut out, "Q_2", bell_scaled_total(2), p("1/2*d1^2 + d2"));
    expect_poly(
        &mut out,
        "Q_3",
        bell_scaled_total(3),
        p("1/6*d1^3 + 1/3*d2*d1 + 2/3*d1*d2 + d3"),
    );
    out
}

fn term_count_law() -> Outcome {
    let mut out = Vec::new();
    for n in 1..=12u32 {
        expect(
            &mut out,
            &format!("terms of B_{n}"),
            bell::<Word>(n).len(),
            1usize << (n - 1),
        );
    }
    out
}

fn four_constructions() -> Outcome {
    let mut out = Vec::new();
    for n in 0..=8u32 {
        let b = bell::<Word>(n);
        expect_poly(
            &mut out,
            &format!("nc binomial recursion, n = {n}"),
            bell_recursion::<Word>(n),
            b.clone(),
        );
        let kappa = (0..=n).fold(NCPoly::zero(), |acc, k| acc + bell_explicit(n, k));
        expect_poly(
            &mut out,
            &format!("nc kappa sum, n = {n}"),
            kappa,
            b.clone(),
        );
        if n >= 1 {
            expect_poly(
                &mut out,
                &format!("nc quasideterminant, n = {n}"),
                bell_via_quasidet::<Word>(n as usize),
                b.clone(),
            );
        }
        if let Some(t) = ok(&mut out, "tree pushforward", pushforward(&b)) {
            expect(
                &mut out,
                &format!("nc trees, n = {n}"),
                t,
                tree_bell(n, true),
            );
        }

        let c = bell::<CMonomial>(n);
        expect_poly(
            &mut out,
            &format!("c binomial recursion, n = {n}"),
            bell_recursion::<CMonomial>(n),
            c.clone(),
        );
        expect_poly(
            &mut out,
            &format!("c abelianized, n = {n}"),
            b.abelianize(),
            c.clone(),
        );
        let multinomial = (0..=n).fold(Polynomial::zero(), |acc, k| acc + bell_c_explicit(n, k));
        expect_poly(
            &mut out,
            &format!("c explicit sum, n = {n}"),
            multinomial,
            c.clone(),
        );
        if n >= 1 {
            expect_poly(
                &mut out,
                &format!("c determinant, n = {n}"),
                bell_via_det(n as usize),
                c.clone(),
            );
            expect_poly(
                &mut out,
                &format!("c quasideterminant, n = {n}"),
                bell_via_quasidet::<CMonomial>(n as usize),
                c.clone(),
            );
            if let Some(parts) = ok(&mut out, "enumerate", enumerate(n, None)) {
                let sum = parts.iter().fold(Polynomial::zero(), |acc, q| {
                    acc + Polynomial::monomial(q.monomial::<CMonomial>(), rat(1))
                });
                expect_poly(&mut out, &format!("c partition sum, n = {n}"), sum, c);
            }
        }
    }
    if let Some(r) = ok(&mut out, "egf", egf_bell_check(8)) {
        expect(&mut out, "egf mismatches", r.mismatches, vec![]);
    }
    out
}

fn partition_oracle() -> Outcome {
    let mut out = coefficient_oracle(9).unwrap_or_else(|e| vec![format!("error {e}")]);
    let w = Word::from_indices(&[2, 1, 2]);
    expect(
        &mut out,
        "coefficient of d2*d1*d2 in B_{5,3}",
        bell_partial::<Word>(5, 3).coeff(&w),
        rat(4),
    );
    out
}

fn stirling() -> Outcome {
    let mut out = Vec::new();
    for n in 1..=9u32 {
        for k in 1..=n {
            let ones = bell_partial::<CMonomial>(n, k).coefficient_sum();
            expect(
                &mut out,
                &format!("S({n},{k})"),
                ones,
                from_bigint(stirling2(n, k)),
            );
        }
        expect(
            &mut out,
            &format!("Bell number {n}"),
            bell::<CMonomial>(n).coefficient_sum(),
            from_bigint(bell_number(n)),
        );
    }
    out
}

/// `a_ij` is encoded as the letter `d_{10i+j}`.
fn symbolic_hessenberg(n: usize) -> Matrix<NCPoly> {
    Matrix::from_fn(n, |i, j| match () {
        _ if i == j + 1 => NCPoly::constant(rat(-1)),
        _ if i > j + 1 => NCPoly::zero(),
        _ => NCPoly::d((10 * i + j) as u32),
    })
}

fn quasideterminants() -> Outcome {
    let mut out = Vec::new();
    let p3 = "d13 + d11*d23 + d12*d33 + d11*d22*d33";
    let p4 = "d14 + d11*d24 + d12*d34 + d13*d44 + d11*d22*d34 + d11*d23*d44 + d12*d33*d44 + d11*d22*d33*d44";
    for (n, golden) in [(3, p3), (4, p4)] {
        if let Some(q) = ok(
            &mut out,
            "P(n)",
            hessenberg_quasidet(&symbolic_hessenberg(n)),
        ) {
            expect_poly(&mut out, &format!("P({n})"), q, p(golden));
        }
    }
    let x = |s: &str| p::<Word>(s);
    let small = Matrix::from_rows(vec![
        vec![x("d1"), x("d2"), x("d3")],
        vec![x("-1"), x("d1"), x("2*d2")],
        vec![x("0"), x("-1"), x("d1")],
    ]);
    let big = Matrix::from_rows(vec![
        vec![x("d1"), x("d2"), x("d3"), x("d4")],
        vec![x("-1"), x("d1"), x("2*d2"), x("3*d3")],
        vec![x("0"), x("-1"), x("d1"), x("3*d2")],
        vec![x("0"), x("0"), x("-1"), x("d1")],
    ]);
    for (n, m) in [(3u32, small), (4, big)] {
        if let Some(q) = ok(&mut out, "matrix", m)
            .and_then(|m| ok(&mut out, "quasidet", hessenberg_quasidet(&m)))
        {
            expect_poly(&mut out, &format!("{n}x{n} example"), q, bell::<Word>(n));
        }
    }
    out.extend(quasidet_ratio_check(100, SEED).unwrap_or_else(|e| vec![format!("error {e}")]));
    out
}

/// `Δ(X_n)` from `(left leg, right index)` pairs; index 0 is the unit.
fn tensor<M: Monomial>(parts: &[(&str, u32)]) -> Tensor<M> {
    parts.iter().fold(Tensor::zero(), |acc, (left, right)| {
        let r = if *right == 0 {
            Polynomial::one()
        } else {
            Polynomial::d(*right)
        };
        acc.add(&Tensor::simple(&p::<M>(left), &r))
    })
}

fn hopf_goldens_for<M: Monomial>(
    out: &mut Outcome,
    tag: &str,
    x4_split: &str,
    antipodes: [&str; 4],
) {
    let h = HopfAlgebra::<M>::new();
    let deltas: [Vec<(&str, u32)>; 4] = [
        vec![("X1", 0), ("1", 1)],
        vec![("X2", 0), ("1", 2), ("3*X1", 1)],
        vec![("X3", 0), ("1", 3), ("3*X1^2 + 4*X2", 1), ("6*X1", 2)],
        vec![
            ("X4", 0),
            ("1", 4),
            (x4_split, 1),
            ("10*X2 + 15*X1^2", 2),
            ("10*X1", 3),
        ],
    ];
    expect(
        out,
        &format!("{tag} Delta(X0)"),
        h.coproduct_generator(0),
        Tensor::one(),
    );
    for (i, parts) in deltas.iter().enumerate() {
        let n = i as u32 + 1;
        expect(
            out,
            &format!("{tag} Delta(X{n})"),
            h.coproduct_generator(n),
            tensor::<M>(parts),
        );
    }
    for (i, s) in antipodes.iter().enumerate() {
        let n = i as u32 + 1;
        for side in [Side::RightLeg, Side::LeftLeg] {
            expect_poly(
                out,
                &format!("{tag} S(X{n}) {side:?}"),
                h.antipode_recursive(n, side),
                p::<M>(s),
            );
        }
    }
}

fn hopf_goldens() -> Outcome {
    let mut out = Vec::new();
    hopf_goldens_for::<CMonomial>(
        &mut out,
        "FdB",
        "10*X1*X2 + 5*X3",
        [
            "-X1",
            "-X2 + 3*X1^2",
            "-X3 + 10*X1*X2 - 15*X1^3",
            "-X4 + 15*X1*X3 + 10*X2^2 - 105*X1^2*X2 + 105*X1^4",
        ],
    );
    hopf_goldens_for::<Word>(
        &mut out,
        "DFdB",
        "6*X1*X2 + 4*X2*X1 + 5*X3",
        [
            "-X1",
            "-X2 + 3*X1^2",
            "-X3 + 6*X1*X2 + 4*X2*X1 - 15*X1^3",
            "-X4 + 10*X1*X3 + 5*X3*X1 + 10*X2^2 - 45*X1^2*X2 - 34*X1*X2*X1 - 26*X2*X1^2 + 105*X1^4",
        ],
    );
    out
}

fn antipodes_for<M: Monomial>(out: &mut Outcome) {
    let h = HopfAlgebra::<M>::new();
    let tag = h.variant().name();
    for n in 1..=7 {
        let right = h.antipode_recursive(n, Side::RightLeg);
        expect_poly(
            out,
            &format!("{tag} left vs right, n = {n}"),
            h.antipode_recursive(n, Side::LeftLeg),
            right.clone(),
        );
        if let Some(q) = ok(out, "antipode_quasidet", h.antipode_quasidet(n)) {
            expect_poly(
                out,
                &format!("{tag} quasideterminant vs right, n = {n}"),
                q,
                right,
            );
        }
    }
}

fn antipode_algorithms() -> Outcome {
    let mut out = Vec::new();
    antipodes_for::<CMonomial>(&mut out);
    antipodes_for::<Word>(&mut out);
    out
}

fn coproduct_oracle_for<M: Monomial>(out: &mut Outcome) {
    let h = HopfAlgebra::<M>::new();
    let tag = h.variant().name();
    for n in 0..=6 {
        if let Some(o) = ok(
            out,
            "coproduct_oracle",
            h.coproduct_oracle(n, Exec::default()),
        ) {
            expect(
                out,
                &format!("{tag} oracle, n = {n}"),
                o,
                h.coproduct_generator(n),
            );
        }
    }
}

fn coproduct_oracle() -> Outcome {
    let mut out = Vec::new();
    coproduct_oracle_for::<CMonomial>(&mut out);
    coproduct_oracle_for::<Word>(&mut out);
    out
}

fn hopf_axioms() -> Outcome {
    let mut out = Vec::new();
    let c = HopfAlgebra::<CMonomial>::new().hopf_axiom_check(7, 50, SEED);
    let nc = HopfAlgebra::<Word>::new().hopf_axiom_check(7, 50, SEED);
    for (tag, r) in [("FdB", c), ("DFdB", nc)] {
        if let Some(r) = ok(&mut out, tag, r) {
            out.extend(r.failures.into_iter().map(|f| format!("{tag}: {f}")));
        }
    }
    out
}

fn characters() -> Outcome {
    character_composition(8, 20, SEED).unwrap_or_else(|e| vec![format!("error {e}")])
}

fn mobius_for<M: Monomial>(out: &mut Outcome, tag: &str, d2: &str, d3: &str) {
    let m = MobiusAlgebra::<M>::new();
    for (n, golden) in [(2, d2), (3, d3)] {
        if let Some(inv) = ok(out, "mobius_invert", m.mobius_invert(n)) {
            expect_poly(out, &format!("{tag} inverse of d{n}"), inv, p::<M>(golden));
        }
    }
    for n in 1..=6 {
        if let Some(e) = ok(
            out,
            "round trip",
            m.mobius_invert(n).and_then(|i| expand_bell_symbols(&i)),
        ) {
            expect_poly(
                out,
                &format!("{tag} round trip, n = {n}"),
                e,
                Polynomial::d(n),
            );
        }
    }
    let order = 6;
    let mu = m.mobius_char(order);
    if let Some(mu) = ok(out, "mobius_char", mu) {
        let zeta = MobiusCharacter::zeta(order);
        let eps = MobiusCharacter::counit(order);
        if let Some(c) = ok(out, "convolve", m.convolve(&mu, &zeta)) {
            expect(out, &format!("{tag} mu * zeta"), c, eps.clone());
        }
        if let Some(c) = ok(out, "convolve", m.convolve(&zeta, &mu)) {
            expect(out, &format!("{tag} zeta * mu"), c, eps);
        }
    }
}

fn mobius() -> Outcome {
    let mut out = Vec::new();
    mobius_for::<CMonomial>(&mut out, "c", "B2 - B1^2", "B3 - 3*B1*B2 + 2*B1^3");
    mobius_for::<Word>(&mut out, "nc", "B2 - B1^2", "B3 - 2*B1*B2 - B2*B1 + 2*B1^3");

    let c = MobiusAlgebra::<CMonomial>::new();
    let primed = [
        "-d1^-3*d2",
        "-d1^-4*d3 + 3*d1^-5*d2^2",
        "-d1^-5*d4 + 10*d1^-6*d2*d3 - 15*d1^-7*d2^3",
    ];
    for (i, s) in primed.iter().enumerate() {
        let n = i as u32 + 2;
        for side in [Side::RightLeg, Side::LeftLeg] {
            if let Some(a) = ok(&mut out, "antipode", c.antipode_m(n, side)) {
                expect_poly(&mut out, &format!("S'(d{n}) {side:?}"), a, p(s));
            }
        }
    }
    let nc = MobiusAlgebra::<Word>::new();
    let tilde = [
        "-d1^-2*d2*d1^-1",
        "-d1^-3*d3*d1^-1 + 2*d1^-2*d2*d1^-2*d2*d1^-1 + d1^-3*d2*d1^-1*d2*d1^-1",
    ];
    for (i, s) in tilde.iter().enumerate() {
        let n = i as u32 + 2;
        for side in [Side::RightLeg, Side::LeftLeg] {
            if let Some(a) = ok(&mut out, "antipode", nc.antipode_m(n, side)) {
                expect_poly(&mut out, &format!("S~(d{n}) {side:?}"), a, p(s));
            }
        }
    }
    out
}

fn q_statistics() -> Outcome {
    let mut out = Vec::new();
    let blocks = vec![
        vec![1, 2, 7],
        vec![3, 6],
        vec![4, 5],
        vec![8, 9, 13, 14],
        vec![10, 12],
        vec![11],
    ];
    if let Some(part) = ok(&mut out, "partition", SetPartition::new(14, blocks)) {
        expect(
            &mut out,
            "weight of the 14-element example",
            part.weight(),
            9,
        );
    }
    for n in 1..=8 {
        if let Some(census) = ok(
            &mut out,
            "census",
            q_weight_census(n, WeightReading::Displacement, Exec::default()),
        ) {
            for (sizes, q) in census {
                if let Some(f) = ok(&mut out, "q formula", q_n_formula(&sizes)) {
                    expect(&mut out, &format!("q-count for sizes {sizes:?}"), q, f);
                }
            }
        }
    }
    for n in 1..=8 {
        for k in 1..=n {
            if let Some(q) = ok(&mut out, "qbell", qbell(n, k, QNumerator::Bracketed)) {
                expect_poly(
                    &mut out,
                    &format!("q-Bell at q = 1, ({n},{k})"),
                    q.at_q(&Rational::from_integer(1.into())),
                    bell_partial::<CMonomial>(n, k),
                );
            }
        }
    }
    out
}

fn analytic_layer() -> Outcome {
    let mut out =
        riordan_check(8, 50, SEED).unwrap_or_else(|e| vec![format!("compose: error {e}")]);
    out.extend(flow_check(20, 3, 5, SEED).unwrap_or_else(|e| vec![format!("flow: error {e}")]));
    match egf_bell_check(8) {
        Ok(r) => expect(&mut out, "egf mismatches", r.mismatches, vec![]),
        Err(e) => out.push(format!("egf: error {e}")),
    }
    out
}

type Criterion = (u32, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 14] = [
    (1, "golden Bell tables", golden_tables),
    (2, "term-count law", term_count_law),
    (3, "construction agreement", four_constructions),
    (4, "coefficient/partition oracle", partition_oracle),
    (5, "Stirling evaluation", stirling),
    (6, "quasideterminant goldens", quasideterminants),
    (7, "Hopf goldens", hopf_goldens),
    (8, "antipode cross-algorithm", antipode_algorithms),
    (9, "coproduct oracle", coproduct_oracle),
    (10, "Hopf axioms", hopf_axioms),
    (11, "characters and composition", characters),
    (12, "Moebius inversion", mobius),
    (13, "q-statistics", q_statistics),
    (14, "analytic layer", analytic_layer),
];

fn main() -> ExitCode {
    let start = Instant::now();
    let results: Vec<(Criterion, Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(c.2)
                        .unwrap_or_else(|_| vec!["panicked".to_string()]);
                    (*c, r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    });

    let mut failed = 0;
    for ((id, title, _), failures, secs) in &results {
        if failures.is_empty() {
            println!("criterion {id:>2} PASS  {title} ({secs:.1}s)");
        } else {
            failed += 1;
            println!(
                "criterion {id:>2} FAIL  {title} ({secs:.1}s): {} mismatch(es)",
                failures.len()
            );
            for f in failures.iter().take(5) {
                println!("      {f}");
            }
            if failures.len() > 5 {
                println!("      ... {} more", failures.len() - 5);
            }
        }
    }
    println!(
        "acceptance: {} passed, {} failed in {:.1}s",
        results.len() - failed,
        failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
