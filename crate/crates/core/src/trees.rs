//! Rooted trees and the tree form of Bell polynomials.
//!
//! Trees serialize as balanced strings: a node is `a`, its children, then `b`.
//! The single node is `ab`, the one-edge ladder `aabb`, the cherry `aababb`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::poly::NCPoly;
use crate::rational::{format_rational, Rational};

/// Planar rooted tree: a root with an ordered list of subtrees.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PlanarTree {
    children: Vec<PlanarTree>,
}

impl PlanarTree {
    /// The single node.
    pub fn node() -> PlanarTree {
        PlanarTree::default()
    }

    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    pub fn edges(&self) -> usize {
        self.children.iter().map(|c| 1 + c.edges()).sum()
    }

    pub fn is_node(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaves(&self) -> usize {
        if self.is_node() {
            1
        } else {
            self.children.iter().map(PlanarTree::leaves).sum()
        }
    }

    /// Balanced-string encoding.
    pub fn paren(&self) -> String {
        let mut s = String::with_capacity(2 * self.edges() + 2);
        self.write_paren(&mut s);
        s
    }

    fn write_paren(&self, s: &mut String) {
        s.push('a');
        for c in &self.children {
            c.write_paren(s);
        }
        s.push('b');
    }

    /// Children sorted recursively, giving the nonplanar representative.
    pub fn normalized(&self) -> PlanarTree {
        let mut children: Vec<PlanarTree> =
            self.children.iter().map(PlanarTree::normalized).collect();
        children.sort();
        PlanarTree { children }
    }

    /// Indented drawing, one node per line.
    pub fn ascii(&self) -> String {
        let mut out = String::from("o\n");
        self.ascii_children("", &mut out);
        out
    }

    fn ascii_children(&self, prefix: &str, out: &mut String) {
        let n = self.children.len();
        for (i, c) in self.children.iter().enumerate() {
            let last = i + 1 == n;
            out.push_str(prefix);
            out.push_str(if last { "`-- o\n" } else { "|-- o\n" });
            let next = format!("{prefix}{}", if last { "    " } else { "|   " });
            c.ascii_children(&next, out);
        }
    }
}

impl Ord for PlanarTree {
    /// Edge count first, then the balanced string.
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges()
            .cmp(&other.edges())
            .then_with(|| self.paren().cmp(&other.paren()))
    }
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.paren())
    }
}

impl FromStr for PlanarTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<PlanarTree> {
        let bytes = s.trim().as_bytes();
        let (t, used) = parse_node(bytes, 0)?;
        if used != bytes.len() {
            return Err(Error::Parse(format!("trailing characters in tree {s:?}")));
        }
        Ok(t)
    }
}

fn parse_node(b: &[u8], at: usize) -> Result<(PlanarTree, usize)> {
    if b.get(at) != Some(&b'a') {
        return Err(Error::Parse(format!("expected 'a' at offset {at}")));
    }
    let mut pos = at + 1;
    let mut children = Vec::new();
    loop {
        match b.get(pos) {
            Some(b'a') => {
                let (c, next) = parse_node(b, pos)?;
                children.push(c);
                pos = next;
            }
            Some(b'b') => return Ok((PlanarTree { children }, pos + 1)),
            _ => {
                return Err(Error::Parse(format!(
                    "unbalanced tree string at offset {pos}"
                )))
            }
        }
    }
}

/// Adds a common root to a forest.
pub fn bplus(forest: Vec<PlanarTree>) -> PlanarTree {
    PlanarTree { children: forest }
}

/// The path with `i` edges.
pub fn ladder(i: usize) -> PlanarTree {
    (0..i).fold(PlanarTree::node(), |t, _| bplus(vec![t]))
}

/// `s ⋉ t`: `s` becomes the first child of `t`'s root.
pub fn left_butcher(s: &PlanarTree, t: &PlanarTree) -> PlanarTree {
    let mut children = Vec::with_capacity(t.children.len() + 1);
    children.push(s.clone());
    children.extend(t.children.iter().cloned());
    PlanarTree { children }
}

/// `s ↷ t`: the sum over leaves of `t` of the tree in which that leaf gains
/// `s` as its only child. The single node counts as one leaf.
pub fn leaf_graft(s: &PlanarTree, t: &PlanarTree) -> TreePoly {
    let mut out = TreePoly::zero();
    for g in graft_each_leaf(s, t) {
        out.add_term(g, Rational::one());
    }
    out
}

fn graft_each_leaf(s: &PlanarTree, t: &PlanarTree) -> Vec<PlanarTree> {
    if t.is_node() {
        return vec![bplus(vec![s.clone()])];
    }
    let mut out = Vec::new();
    for (i, c) in t.children.iter().enumerate() {
        for replaced in graft_each_leaf(s, c) {
            let mut children = t.children.clone();
            children[i] = replaced;
            out.push(PlanarTree { children });
        }
    }
    out
}

/// Linear combination of trees with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TreePoly {
    terms: BTreeMap<PlanarTree, Rational>,
}

impl TreePoly {
    pub fn zero() -> TreePoly {
        TreePoly::default()
    }

    pub fn tree(t: PlanarTree) -> TreePoly {
        let mut p = TreePoly::zero();
        p.add_term(t, Rational::one());
        p
    }

    pub fn add_term(&mut self, t: PlanarTree, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
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

    pub fn add(&mut self, other: &TreePoly) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PlanarTree, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &PlanarTree) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Maps every tree to its nonplanar representative and merges.
    pub fn normalized(&self) -> TreePoly {
        let mut out = TreePoly::zero();
        for (t, c) in &self.terms {
            out.add_term(t.normalized(), c.clone());
        }
        out
    }

    pub fn map_linear<F: Fn(&PlanarTree) -> TreePoly>(&self, f: F) -> TreePoly {
        let mut out = TreePoly::zero();
        for (t, c) in &self.terms {
            for (u, d) in f(t).terms {
                out.add_term(u, c * d);
            }
        }
        out
    }

    /// `2*aabaabbb + aaaabbbb`, largest trees first.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(t, c)| {
                if c.is_one() {
                    t.paren()
                } else {
                    format!("{}*{}", format_rational(c), t.paren())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `B̂_0 = •`, `B̂_n = (• ⋉ + • ↷) B̂_{n-1}`.
///
/// The single node plays the role of the empty word, on which the derivation
/// vanishes, so it receives no graft term.
pub fn tree_bell(n: u32, planar: bool) -> TreePoly {
    let dot = PlanarTree::node();
    let mut cur = TreePoly::tree(dot.clone());
    for _ in 0..n {
        cur = cur.map_linear(|t| {
            let mut step = TreePoly::tree(left_butcher(&dot, t));
            if !t.is_node() {
                step.add(&leaf_graft(&dot, t));
            }
            step
        });
        if !planar {
            cur = cur.normalized();
        }
    }
    cur
}

/// `d_{j_1} ... d_{j_k} -> B⁺(ladder_{j_1-1}, ..., ladder_{j_k-1})`, the
/// iterate of `d_i ω' -> ladder_{i-1} ⋉ tree(ω')`.
pub fn word_to_tree(w: &Word) -> Result<PlanarTree> {
    let js = w
        .indices()
        .ok_or_else(|| Error::InvalidArgument("words with d1^-1 have no tree".into()))?;
    if js.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(bplus(js.iter().map(|&j| ladder(j as usize - 1)).collect()))
}

/// Applies [`word_to_tree`] term by term; the unit maps to the single node.
pub fn pushforward(p: &NCPoly) -> Result<TreePoly> {
    let mut out = TreePoly::zero();
    for (w, c) in p.terms() {
        let t = if w.as_slice().is_empty() {
            PlanarTree::node()
        } else {
            word_to_tree(w)?
        };
        out.add_term(t, c.clone());
    }
    Ok(out)
}
