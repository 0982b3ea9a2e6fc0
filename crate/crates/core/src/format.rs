//! Text, LaTeX and JSON forms of polynomials.
//!
//! Text form: `d1^3 + d2*d1 + 2*d1*d2 + d3`, with `d1^-1` for the inverse letter.
//! Terms print from the longest word down, which matches the way the Bell
//! tables are usually written. JSON keeps the canonical ascending order.

use std::fmt::Write as _;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::alphabet::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{format_rational, parse_rational, Rational};

/// Which family of letters a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Symbol {
    /// `d1, d2, ...`
    #[default]
    D,
    /// Hopf generators `X1, X2, ...`
    X,
    /// Bell-polynomial symbols `B1, B2, ...`
    B,
}

impl Symbol {
    pub fn prefix(self) -> &'static str {
        match self {
            Symbol::D => "d",
            Symbol::X => "X",
            Symbol::B => "B",
        }
    }
}

/// Output format shared by the CLI and the tensor renderers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

/// Consecutive runs of equal letters, as `(letter, run length)`.
fn runs(letters: &[Letter]) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((last, n)) if *last == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

/// Text form of a monomial; the empty monomial renders as `1`.
pub fn monomial_text<M: Monomial>(m: &M, sym: Symbol) -> String {
    let parts: Vec<String> = runs(&m.letters())
        .into_iter()
        .map(|(l, n)| {
            let base = format!("{}{}", sym.prefix(), l.index());
            match (l.is_inverted(), n) {
                (false, 1) => base,
                (false, n) => format!("{base}^{n}"),
                (true, n) => format!("{base}^-{n}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn monomial_latex<M: Monomial>(m: &M, sym: Symbol) -> String {
    let parts: Vec<String> = runs(&m.letters())
        .into_iter()
        .map(|(l, n)| {
            let i = l.index();
            let base = if i < 10 {
                format!("{}_{i}", sym.prefix())
            } else {
                format!("{}_{{{i}}}", sym.prefix())
            };
            let e = if l.is_inverted() {
                -(n as i64)
            } else {
                n as i64
            };
            match e {
                1 => base,
                2..=9 => format!("{base}^{e}"),
                _ => format!("{base}^{{{e}}}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Joins signed terms as `a + b - c`. Each item is `(negative, body)`.
pub fn join_signed<I: IntoIterator<Item = (bool, String)>>(items: I) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in items.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Plain text, longest words first.
pub fn to_text<M: Monomial>(p: &Polynomial<M>, sym: Symbol) -> String {
    join_signed(p.terms().rev().map(|(m, c)| {
        let abs = c.abs();
        let body = if m.is_one() {
            format_rational(&abs)
        } else if abs.is_one() {
            monomial_text(m, sym)
        } else {
            format!("{}*{}", format_rational(&abs), monomial_text(m, sym))
        };
        (c.is_negative(), body)
    }))
}

pub fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

pub fn to_latex<M: Monomial>(p: &Polynomial<M>, sym: Symbol) -> String {
    join_signed(p.terms().rev().map(|(m, c)| {
        let abs = c.abs();
        let body = if m.is_one() {
            latex_rational(&abs)
        } else if abs.is_one() {
            monomial_latex(m, sym)
        } else {
            format!("{} {}", latex_rational(&abs), monomial_latex(m, sym))
        };
        (c.is_negative(), body)
    }))
}

/// Parses the text form. Letter prefixes `d`, `X`, `x` and `B` are all accepted.
pub fn parse<M: Monomial>(s: &str) -> Result<Polynomial<M>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if compact == "0" {
        return Ok(Polynomial::zero());
    }
    let mut out = Polynomial::zero();
    let mut term = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        // A sign splits terms unless it belongs to an exponent (`^-1`).
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if !term.is_empty() {
                let (m, c) = parse_term::<M>(&term)?;
                out.add_term(m, if negative { -c } else { c });
                term.clear();
            } else if prev.is_some() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            negative = ch == '-';
        } else {
            term.push(ch);
        }
        prev = Some(ch);
    }
    if term.is_empty() {
        return Err(Error::Parse(format!("trailing sign in {s:?}")));
    }
    let (m, c) = parse_term::<M>(&term)?;
    out.add_term(m, if negative { -c } else { c });
    Ok(out)
}

fn parse_term<M: Monomial>(term: &str) -> Result<(M, Rational)> {
    let mut coeff = Rational::one();
    let mut letters = Vec::new();
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {term:?}")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let body = factor.trim_start_matches(['d', 'X', 'x', 'B']);
        if body.len() + 1 != factor.len() {
            return Err(Error::Parse(format!("unknown factor {factor:?}")));
        }
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e),
            None => (body, "1"),
        };
        let idx: u32 = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad letter index in {factor:?}")))?;
        let exp: i64 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
        let letter = Letter::new(idx)?;
        let l = match exp {
            e if e > 0 => letter,
            e if e < 0 && idx == 1 => Letter::INV1,
            0 => continue,
            _ => {
                return Err(Error::Parse(format!(
                    "negative exponent only allowed on index 1: {factor:?}"
                )))
            }
        };
        letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
    }
    Ok((M::from_letters(letters), coeff))
}

/// One term of the structured format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    /// Letter indices in product order, `-1` for the inverse of `d1`.
    pub word: Vec<i64>,
}

/// Structured polynomial document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    /// `"nc"`, `"c"` or `"b-symbols"`.
    pub algebra: String,
    /// For `"b-symbols"`, whether the symbols commute (`"c"`) or not (`"nc"`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub terms: Vec<TermDoc>,
}

fn algebra_tag<M: Monomial>() -> &'static str {
    if M::COMMUTATIVE {
        "c"
    } else {
        "nc"
    }
}

fn word_codes<M: Monomial>(m: &M) -> Vec<i64> {
    m.letters().iter().map(|l| l.code() as i64).collect()
}

pub fn to_doc<M: Monomial>(p: &Polynomial<M>, sym: Symbol) -> PolyDoc {
    let terms = p
        .terms()
        .map(|(m, c)| TermDoc {
            coeff: format_rational(c),
            word: word_codes(m),
        })
        .collect();
    match sym {
        Symbol::B => PolyDoc {
            algebra: "b-symbols".into(),
            variant: Some(algebra_tag::<M>().into()),
            terms,
        },
        _ => PolyDoc {
            algebra: algebra_tag::<M>().into(),
            variant: None,
            terms,
        },
    }
}

pub fn from_doc<M: Monomial>(doc: &PolyDoc) -> Result<Polynomial<M>> {
    let tag = match doc.algebra.as_str() {
        "b-symbols" => doc.variant.as_deref().unwrap_or("nc"),
        other => other,
    };
    if tag != algebra_tag::<M>() {
        return Err(Error::Parse(format!(
            "document algebra {tag:?} does not match expected {:?}",
            algebra_tag::<M>()
        )));
    }
    let mut p = Polynomial::zero();
    for t in &doc.terms {
        let letters = t
            .word
            .iter()
            .map(|&c| Letter::from_code(c))
            .collect::<Result<Vec<_>>>()?;
        p.add_term(M::from_letters(letters), parse_rational(&t.coeff)?);
    }
    Ok(p)
}

pub fn to_json<M: Monomial>(p: &Polynomial<M>, sym: Symbol) -> String {
    serde_json::to_string_pretty(&to_doc(p, sym)).expect("documents always serialize")
}

pub fn from_json<M: Monomial>(s: &str) -> Result<Polynomial<M>> {
    from_doc(&serde_json::from_str::<PolyDoc>(s)?)
}

/// Renders in the requested format.
pub fn render<M: Monomial>(p: &Polynomial<M>, sym: Symbol, fmt: Format) -> String {
    match fmt {
        Format::Text => to_text(p, sym),
        Format::Latex => to_latex(p, sym),
        Format::Json => to_json(p, sym),
    }
}

/// Text form of a coefficient-times-monomial where the coefficient is
/// an arbitrary ring element already rendered (e.g. a q-polynomial).
pub fn bracketed_term(coeff: &str, monomial: &str) -> String {
    let mut s = String::new();
    let simple = !coeff.contains([' ', '+']) && !coeff.starts_with('-');
    match (coeff, monomial) {
        ("1", m) => s.push_str(m),
        (c, "1") => s.push_str(c),
        (c, m) if simple => {
            let _ = write!(s, "{c}*{m}");
        }
        (c, m) => {
            let _ = write!(s, "({c})*{m}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{CMonomial, Word};
    use crate::poly::{CPoly, NCPoly};
    use crate::rational::{rat, ratio};

    fn b3() -> NCPoly {
        NCPoly::from_terms([
            (Word::from_indices(&[1, 1, 1]), rat(1)),
            (Word::from_indices(&[2, 1]), rat(1)),
            (Word::from_indices(&[1, 2]), rat(2)),
            (Word::from_indices(&[3]), rat(1)),
        ])
    }

    #[test]
    fn text_matches_table_layout() {
        assert_eq!(to_text(&b3(), Symbol::D), "d1^3 + d2*d1 + 2*d1*d2 + d3");
        assert_eq!(to_text(&NCPoly::one(), Symbol::D), "1");
        assert_eq!(to_text(&NCPoly::zero(), Symbol::D), "0");
        let p = NCPoly::from_terms([
            (
                Word::new([Letter::INV1, Letter::INV1, Letter::d(2)]),
                ratio(-1, 2),
            ),
            (Word::empty(), rat(3)),
        ]);
        assert_eq!(to_text(&p, Symbol::D), "-1/2*d1^-2*d2 + 3");
    }

    #[test]
    fn latex_form() {
        assert_eq!(
            to_latex(&b3(), Symbol::D),
            "d_1^3 + d_2 d_1 + 2 d_1 d_2 + d_3"
        );
        let p = NCPoly::monomial(Word::new([Letter::INV1, Letter::d(12)]), ratio(1, 2));
        assert_eq!(to_latex(&p, Symbol::X), "\\frac{1}{2} X_1^{-1} X_{12}");
    }

    #[test]
    fn text_round_trip() {
        let p: NCPoly = parse("d1^3 + d2*d1 + 2*d1*d2 + d3").unwrap();
        assert_eq!(p, b3());
        let q: NCPoly = parse("-1/2*d1^-2*d2 + 3 - d1^-1").unwrap();
        assert_eq!(parse::<Word>(&to_text(&q, Symbol::D)).unwrap(), q);
        let c: CPoly = parse("d2*d1 + 2*d1*d2").unwrap();
        assert_eq!(
            c.coeff(&CMonomial::from(&Word::from_indices(&[1, 2]))),
            rat(3)
        );
        assert!(parse::<Word>("d0").is_err());
        assert!(parse::<Word>("d2^-1").is_err());
        assert!(parse::<Word>("d1 +").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p: NCPoly = parse("1/3*d1^-1*d2 - 4*d1 + 2").unwrap();
        let s = to_json(&p, Symbol::D);
        assert!(s.contains("\"algebra\": \"nc\""));
        assert_eq!(from_json::<Word>(&s).unwrap(), p);
        assert!(from_json::<CMonomial>(&s).is_err());
        let doc = to_doc(&p, Symbol::B);
        assert_eq!(doc.algebra, "b-symbols");
        assert_eq!(from_doc::<Word>(&doc).unwrap(), p);
    }

    #[test]
    fn bracketed_terms() {
        assert_eq!(bracketed_term("1 + q", "d1*d2"), "(1 + q)*d1*d2");
        assert_eq!(bracketed_term("1", "d3"), "d3");
        assert_eq!(bracketed_term("2", "d3"), "2*d3");
    }
}
