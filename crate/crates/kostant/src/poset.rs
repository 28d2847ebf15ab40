//! Generic finite-poset services: Poincare polynomials, palindromicity,
//! graded intervals, rank functions, and Hasse-diagram export.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::poly::IntPolynomial;
use crate::weyl::CosetPoset;
use crate::{Error, Result};

/// P_w(t) = sum of t^{l(v)} over v <= w.
pub fn poincare_polynomial(p: &CosetPoset, w: u32) -> IntPolynomial {
    let mut coeffs = vec![0i64; p.length(w) as usize + 1];
    for v in p.lower_ideal(w) {
        coeffs[p.length(v) as usize] += 1;
    }
    IntPolynomial::from_coeffs(coeffs)
}

pub fn is_palindromic(f: &IntPolynomial) -> bool {
    f.is_palindromic()
}

/// An explicit finite poset on indices 0..n with a full order matrix.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = leq(a, b);
            }
        }
        let p = FinitePoset { n, leq: m };
        debug_assert!(p.check_order_axioms());
        p
    }

    /// Builds the order as the reflexive-transitive closure of cover
    /// relations.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Self {
        let mut m = vec![false; n * n];
        for a in 0..n {
            m[a * n + a] = true;
        }
        for &(lo, hi) in covers {
            m[lo * n + hi] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if m[a * n + k] {
                    for b in 0..n {
                        if m[k * n + b] {
                            m[a * n + b] = true;
                        }
                    }
                }
            }
        }
        FinitePoset { n, leq: m }
    }

    fn check_order_axioms(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            if !self.leq[a * n + a] {
                return false;
            }
            for b in 0..n {
                if a != b && self.leq[a * n + b] && self.leq[b * n + a] {
                    return false;
                }
            }
        }
        true
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|z| self.lt(a, z) && self.lt(z, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| !(0..self.n).any(|b| self.lt(b, a)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| !(0..self.n).any(|b| self.lt(a, b)))
            .collect()
    }

    /// Connected components of the comparability graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(a) = stack.pop() {
                comp.push(a);
                for b in 0..self.n {
                    if !seen[b] && (self.lt(a, b) || self.lt(b, a)) {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Rank function counting Hasse edges from the unique minimum, provided
    /// every cover raises the rank by exactly one. Returns None otherwise.
    pub fn edge_rank(&self) -> Option<Vec<usize>> {
        if self.minimal_elements().len() != 1 {
            return None;
        }
        let covers = self.covers();
        let mut rank = vec![0usize; self.n];
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| (0..self.n).filter(|&b| self.lt(b, a)).count());
        for &b in &order {
            for &(lo, hi) in &covers {
                if hi == b {
                    rank[b] = rank[b].max(rank[lo] + 1);
                }
            }
        }
        for &(lo, hi) in &covers {
            if rank[hi] != rank[lo] + 1 {
                return None;
            }
        }
        Some(rank)
    }

    /// All maximal chains from a to b, as index sequences.
    pub fn maximal_chains(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        if !self.leq(a, b) {
            return Vec::new();
        }
        if a == b {
            return vec![vec![a]];
        }
        let mut out = Vec::new();
        for z in 0..self.n {
            // covers of a within [a, b]
            if self.lt(a, z)
                && self.leq(z, b)
                && !(0..self.n).any(|y| self.lt(a, y) && self.lt(y, z) && self.leq(y, b))
            {
                for mut chain in self.maximal_chains(z, b) {
                    chain.insert(0, a);
                    out.push(chain);
                }
            }
        }
        out
    }
}

/// A graded interval [v, w] with its rank slices.
#[derive(Debug, Clone)]
pub struct GradedInterval {
    pub bottom: u32,
    pub top: u32,
    /// Element ids, sorted by (length, id).
    pub elements: Vec<u32>,
    /// rank[i] is the rank of elements[i]; rank(bottom) = 0.
    pub rank: Vec<usize>,
    /// slices[j] lists the elements of rank j.
    pub slices: Vec<Vec<u32>>,
}

impl GradedInterval {
    pub fn top_rank(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn rank_of(&self, x: u32) -> usize {
        let i = self.elements.iter().position(|&y| y == x).unwrap();
        self.rank[i]
    }
}

/// Extracts [v, w] in a coset poset and checks gradedness. The error for a
/// non-graded interval names two maximal chains of different lengths.
pub fn interval(p: &CosetPoset, v: u32, w: u32) -> Result<GradedInterval> {
    if !p.bruhat_leq(v, w) {
        return Err(Error::NotComparable(format!("{v} <= {w} fails")));
    }
    let mut elements: Vec<u32> = p
        .lower_ideal(w)
        .into_iter()
        .filter(|&x| p.bruhat_leq(v, x))
        .collect();
    elements.sort_by_key(|&x| (p.length(x), x));
    interval_of_elements(p, v, w, &elements)
}

/// Gradedness check over an explicit element set (used both for Bruhat
/// intervals and for singular subposets, where covers may jump lengths).
pub fn interval_of_elements(
    p: &CosetPoset,
    v: u32,
    w: u32,
    elements: &[u32],
) -> Result<GradedInterval> {
    let idx = |x: u32| elements.iter().position(|&y| y == x).unwrap();
    let fp = FinitePoset::from_leq(elements.len(), |a, b| {
        p.bruhat_leq(elements[a], elements[b])
    });
    let covers = fp.covers();
    let vb = idx(v);
    let mut rank = vec![0usize; elements.len()];
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by_key(|&a| p.length(elements[a]));
    for &b in &order {
        for &(lo, hi) in &covers {
            if hi == b {
                rank[b] = rank[b].max(rank[lo] + 1);
            }
        }
    }
    for &(lo, hi) in &covers {
        if rank[hi] != rank[lo] + 1 {
            // witness: two maximal chains from v to hi of different lengths
            let l1 = longest_chain(&fp, &rank, vb, hi);
            let mut l2 = longest_chain(&fp, &rank, vb, lo);
            l2.push(hi);
            let name = |c: &[usize]| {
                c.iter()
                    .map(|&i| elements[i].to_string())
                    .collect::<Vec<_>>()
                    .join("-")
            };
            return Err(Error::NotGraded(format!(
                "maximal chains {} (length {}) and {} (length {}) disagree",
                name(&l1),
                l1.len() - 1,
                name(&l2),
                l2.len() - 1
            )));
        }
    }
    let top_rank = rank[idx(w)];
    let mut slices = vec![Vec::new(); top_rank + 1];
    for (i, &x) in elements.iter().enumerate() {
        slices[rank[i]].push(x);
    }
    Ok(GradedInterval {
        bottom: v,
        top: w,
        elements: elements.to_vec(),
        rank,
        slices,
    })
}

fn longest_chain(fp: &FinitePoset, rank: &[usize], from: usize, to: usize) -> Vec<usize> {
    let covers = fp.covers();
    let mut chain = vec![to];
    let mut cur = to;
    while cur != from {
        let prev = covers
            .iter()
            .filter(|&&(lo, hi)| hi == cur && rank[lo] + 1 == rank[cur])
            .map(|&(lo, _)| lo)
            .next()
            .or_else(|| {
                covers
                    .iter()
                    .filter(|&&(_, hi)| hi == cur)
                    .map(|&(lo, _)| lo)
                    .next()
            });
        match prev {
            Some(lo) => {
                chain.push(lo);
                cur = lo;
            }
            None => break,
        }
    }
    chain.reverse();
    chain
}

/// Node and edge decorations for exports.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Annotations {
    /// Circled nodes (Kostant modules).
    pub circled: BTreeSet<u32>,
    /// Extra text per node, e.g. the subdiagram of a standard Kostant module.
    pub notes: std::collections::BTreeMap<u32, String>,
    /// Edges drawn dashed (coverings of length difference greater than one).
    pub dashed: BTreeSet<(u32, u32)>,
}

/// Emits a Hasse diagram bottom-to-top as a DOT digraph. Stable node order.
pub fn export_dot(
    name: &str,
    nodes: &[(u32, String)],
    edges: &[(u32, u32, Option<String>)],
    ann: &Annotations,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle, fontsize=10];");
    for (id, label) in nodes {
        let mut attrs = vec![format!("label=\"{label}\"")];
        if ann.circled.contains(id) {
            attrs.push("peripheries=2".to_string());
        }
        if let Some(note) = ann.notes.get(id) {
            attrs.push(format!("xlabel=\"{note}\""));
        }
        let _ = writeln!(out, "  n{id} [{}];", attrs.join(", "));
    }
    for (lo, hi, label) in edges {
        let mut attrs = vec!["dir=none".to_string()];
        if let Some(l) = label {
            attrs.push(format!("label=\"{l}\""));
        }
        if ann.dashed.contains(&(*lo, *hi)) {
            attrs.push("style=dashed".to_string());
        }
        let _ = writeln!(out, "  n{lo} -> n{hi} [{}];", attrs.join(", "));
    }
    let _ = writeln!(out, "}}");
    out
}

/// DOT export of a whole coset poset with labelled covers.
pub fn coset_poset_dot(p: &CosetPoset, ann: &Annotations) -> String {
    let nodes: Vec<(u32, String)> = (0..p.size() as u32)
        .map(|id| (id, format!("{id}:{}", p.length(id))))
        .collect();
    let edges: Vec<(u32, u32, Option<String>)> = p
        .covers()
        .iter()
        .map(|c| {
            let label = c.label.map(|node| {
                p.diagram()
                    .label_of(node)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| node.to_string())
            });
            (c.lo, c.hi, label)
        })
        .collect();
    export_dot(&p.diagram().canonical_form(), &nodes, &edges, ann)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{LieType, MarkedDiagram};

    fn poset(t: LieType, crossed: &[u32]) -> CosetPoset {
        let d = MarkedDiagram::standard(t, crossed, &[]).unwrap();
        CosetPoset::generate(&d).unwrap()
    }

    #[test]
    fn poincare_polynomials_on_the_box_poset() {
        let p = poset(LieType::A(3), &[2]);
        assert!(poincare_polynomial(&p, p.identity()).is_constant_one());
        // the length-3 element covers both length-2 elements
        let l3 = p.levels()[3][0];
        let f = poincare_polynomial(&p, l3);
        assert_eq!(f.coeffs(), &[1, 1, 2, 1]);
        assert!(!is_palindromic(&f));
        let f = poincare_polynomial(&p, p.top());
        assert_eq!(f.coeffs(), &[1, 1, 2, 1, 1]);
        assert!(is_palindromic(&f));
    }

    #[test]
    fn f4_c3_top_is_palindromic_of_degree_15() {
        let p = poset(LieType::F4, &[1]);
        let f = poincare_polynomial(&p, p.top());
        assert_eq!(f.degree(), 15);
        assert!(is_palindromic(&f));
        assert_eq!(f.constant_coeff(), 1);
        assert_eq!(f.leading_coeff(), 1);
    }

    #[test]
    fn intervals_and_gradedness() {
        let p = poset(LieType::A(3), &[2]);
        let e = p.identity();
        let i = interval(&p, e, e).unwrap();
        assert_eq!(i.slices.len(), 1);
        let i = interval(&p, e, p.top()).unwrap();
        for (k, &x) in i.elements.iter().enumerate() {
            assert_eq!(i.rank[k] as u32, p.length(x));
        }
        let mid = &p.levels()[2];
        assert!(matches!(
            interval(&p, mid[0], mid[1]),
            Err(Error::NotComparable(_))
        ));
    }

    #[test]
    fn gradedness_matches_exhaustive_chain_enumeration() {
        for (t, crossed) in [
            (LieType::A(3), vec![2u32]),
            (LieType::B(3), vec![1]),
            (LieType::D(4), vec![3, 4]),
        ] {
            let d = MarkedDiagram::standard(t, &crossed, &[]).unwrap();
            let p = CosetPoset::generate(&d).unwrap();
            assert!(p.size() <= 200);
            let fp = FinitePoset::from_leq(p.size(), |a, b| p.bruhat_leq(a as u32, b as u32));
            for w in 0..p.size() {
                let chains = fp.maximal_chains(0, w);
                let lens: BTreeSet<usize> = chains.iter().map(|c| c.len()).collect();
                let graded = interval(&p, 0, w as u32).is_ok();
                assert_eq!(graded, lens.len() <= 1, "{t} w={w}");
                // the full ^S W is graded by length, so every [e, w] is graded
                assert!(graded);
            }
        }
    }

    #[test]
    fn dot_export_is_stable_and_handles_empty() {
        let ann = Annotations::default();
        let empty = export_dot("empty", &[], &[], &ann);
        assert!(empty.starts_with("digraph"));
        assert!(empty.contains("rankdir=BT"));
        let p = poset(LieType::A(3), &[2]);
        let a = coset_poset_dot(&p, &ann);
        let b = coset_poset_dot(&p, &ann);
        assert_eq!(a, b);
        assert_eq!(a.matches("->").count(), 6);
    }

    #[test]
    fn finite_poset_from_covers() {
        // diamond
        let fp = FinitePoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(fp.leq(0, 3));
        assert!(!fp.leq(1, 2));
        assert_eq!(fp.covers().len(), 4);
        assert_eq!(fp.minimal_elements(), vec![0]);
        assert_eq!(fp.maximal_elements(), vec![3]);
        assert_eq!(fp.edge_rank(), Some(vec![0, 1, 1, 2]));
        assert_eq!(fp.maximal_chains(0, 3).len(), 2);
        // a bounded poset with maximal chains of lengths 3 and 2
        let fp = FinitePoset::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]);
        assert_eq!(fp.edge_rank(), None);
        let lens: BTreeSet<usize> = fp.maximal_chains(0, 4).iter().map(|c| c.len()).collect();
        assert_eq!(lens.len(), 2);
    }
}
