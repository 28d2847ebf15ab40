//! Dynkin diagrams with crossed and singular node markings.
//!
//! Nodes carry Bourbaki numbers for the standard types A-G. The crossed set is
//! the complement of the Levi subset S; the singular set J marks the walls of
//! a singular central character. Subdiagrams keep their original node ids so
//! that Levi data can be traced back into the ambient diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Node = u32;

/// Irreducible Dynkin types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LieType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E(u32),
    F4,
    G2,
}

impl LieType {
    pub fn rank(self) -> u32 {
        match self {
            LieType::A(n) | LieType::B(n) | LieType::C(n) | LieType::D(n) | LieType::E(n) => n,
            LieType::F4 => 4,
            LieType::G2 => 2,
        }
    }

    /// |Phi^+| for the type.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank() as usize;
        match self {
            LieType::A(_) => n * (n + 1) / 2,
            LieType::B(_) | LieType::C(_) => n * n,
            LieType::D(_) => n * (n - 1),
            LieType::E(6) => 36,
            LieType::E(7) => 63,
            LieType::E(8) => 120,
            LieType::E(_) => unreachable!(),
            LieType::F4 => 24,
            LieType::G2 => 6,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u128 {
        let n = self.rank() as u128;
        let fact = |m: u128| (1..=m).product::<u128>();
        match self {
            LieType::A(_) => fact(n + 1),
            LieType::B(_) | LieType::C(_) => fact(n) << n,
            LieType::D(_) => fact(n) << (n - 1),
            LieType::E(6) => 51_840,
            LieType::E(7) => 2_903_040,
            LieType::E(8) => 696_729_600,
            LieType::E(_) => unreachable!(),
            LieType::F4 => 1152,
            LieType::G2 => 12,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (letter, digits) = s.split_at(1);
        let n: u32 = digits
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        let t = match (letter, n) {
            ("A" | "a", n) if n >= 1 => LieType::A(n),
            ("B" | "b", n) if n >= 2 => LieType::B(n),
            ("C" | "c", n) if n >= 2 => LieType::C(n),
            ("D" | "d", n) if n >= 3 => LieType::D(n),
            ("E" | "e", 6..=8) => LieType::E(n),
            ("F" | "f", 4) => LieType::F4,
            ("G" | "g", 2) => LieType::G2,
            _ => return Err(Error::UnknownType(s.to_string())),
        };
        Ok(t)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieType::A(n) => write!(f, "A{n}"),
            LieType::B(n) => write!(f, "B{n}"),
            LieType::C(n) => write!(f, "C{n}"),
            LieType::D(n) => write!(f, "D{n}"),
            LieType::E(n) => write!(f, "E{n}"),
            LieType::F4 => write!(f, "F4"),
            LieType::G2 => write!(f, "G2"),
        }
    }
}

/// A bond of the diagram. For multiplicity > 1 the arrow points at the short
/// root, recorded in `short`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: Node,
    pub b: Node,
    pub mult: u8,
    pub short: Option<Node>,
}

impl Edge {
    fn touches(&self, n: Node) -> bool {
        self.a == n || self.b == n
    }
    fn other(&self, n: Node) -> Node {
        if self.a == n {
            self.b
        } else {
            self.a
        }
    }
}

/// A Dynkin diagram with crossed nodes (the complement of the Levi subset S)
/// and an optional set of singular nodes J.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedDiagram {
    nodes: BTreeSet<Node>,
    edges: Vec<Edge>,
    crossed: BTreeSet<Node>,
    singular: BTreeSet<Node>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<Node, String>,
}

/// JSON input form: `{"type":"F4","crossed":[1],"singular":[4]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramInput {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub crossed: Vec<Node>,
    #[serde(default)]
    pub singular: Vec<Node>,
    #[serde(default)]
    pub labels: Option<BTreeMap<String, String>>,
}

/// One connected component typed and ordered: `order[i]` is the node sitting
/// at Bourbaki position i+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedComponent {
    pub lie_type: LieType,
    pub order: Vec<Node>,
}

impl MarkedDiagram {
    /// Builds the Bourbaki diagram of an irreducible type with the given
    /// crossed and singular node numbers.
    pub fn standard(t: LieType, crossed: &[Node], singular: &[Node]) -> Result<Self> {
        let n = t.rank();
        let nodes: BTreeSet<Node> = (1..=n).collect();
        let mut edges = Vec::new();
        let single = |a: Node, b: Node| Edge {
            a,
            b,
            mult: 1,
            short: None,
        };
        match t {
            LieType::A(_) => {
                for i in 1..n {
                    edges.push(single(i, i + 1));
                }
            }
            LieType::B(_) => {
                for i in 1..n - 1 {
                    edges.push(single(i, i + 1));
                }
                edges.push(Edge {
                    a: n - 1,
                    b: n,
                    mult: 2,
                    short: Some(n),
                });
            }
            LieType::C(_) => {
                for i in 1..n - 1 {
                    edges.push(single(i, i + 1));
                }
                edges.push(Edge {
                    a: n - 1,
                    b: n,
                    mult: 2,
                    short: Some(n - 1),
                });
            }
            LieType::D(_) => {
                if n < 3 {
                    return Err(Error::UnknownType(format!("D{n}")));
                }
                for i in 1..n - 1 {
                    edges.push(single(i, i + 1));
                }
                edges.push(single(n - 2, n));
            }
            LieType::E(_) => {
                edges.push(single(1, 3));
                edges.push(single(2, 4));
                edges.push(single(3, 4));
                for i in 4..n {
                    edges.push(single(i, i + 1));
                }
            }
            LieType::F4 => {
                edges.push(single(1, 2));
                edges.push(Edge {
                    a: 2,
                    b: 3,
                    mult: 2,
                    short: Some(3),
                });
                edges.push(single(3, 4));
            }
            LieType::G2 => {
                edges.push(Edge {
                    a: 1,
                    b: 2,
                    mult: 3,
                    short: Some(1),
                });
            }
        }
        let d = MarkedDiagram {
            nodes,
            edges,
            crossed: crossed.iter().copied().collect(),
            singular: singular.iter().copied().collect(),
            labels: BTreeMap::new(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn from_input(input: &DiagramInput) -> Result<Self> {
        let t = LieType::parse(&input.kind)?;
        let mut d = Self::standard(t, &input.crossed, &input.singular)?;
        if let Some(labels) = &input.labels {
            for (k, v) in labels {
                let node: Node = k
                    .parse()
                    .map_err(|_| Error::BadDiagram(format!("label key `{k}` is not a node id")))?;
                if !d.nodes.contains(&node) {
                    return Err(Error::BadDiagram(format!(
                        "label refers to unknown node {node}"
                    )));
                }
                d.labels.insert(node, v.clone());
            }
        }
        Ok(d)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let input: DiagramInput = serde_json::from_str(s)?;
        Self::from_input(&input)
    }

    /// Assembles a diagram from raw parts (used for subdiagrams, duals and
    /// extended diagrams).
    pub fn from_parts(
        nodes: BTreeSet<Node>,
        edges: Vec<Edge>,
        crossed: BTreeSet<Node>,
        singular: BTreeSet<Node>,
    ) -> Self {
        MarkedDiagram {
            nodes,
            edges,
            crossed,
            singular,
            labels: BTreeMap::new(),
        }
    }

    pub fn empty() -> Self {
        MarkedDiagram {
            nodes: BTreeSet::new(),
            edges: Vec::new(),
            crossed: BTreeSet::new(),
            singular: BTreeSet::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.nodes.iter().copied()
    }

    pub fn node_vec(&self) -> Vec<Node> {
        self.nodes.iter().copied().collect()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn crossed(&self) -> &BTreeSet<Node> {
        &self.crossed
    }

    pub fn singular(&self) -> &BTreeSet<Node> {
        &self.singular
    }

    /// The Levi subset S = nodes minus crossed.
    pub fn levi(&self) -> BTreeSet<Node> {
        self.nodes.difference(&self.crossed).copied().collect()
    }

    pub fn is_crossed(&self, n: Node) -> bool {
        self.crossed.contains(&n)
    }

    pub fn set_singular(&mut self, j: &[Node]) {
        self.singular = j.iter().copied().collect();
    }

    pub fn with_singular(&self, j: &[Node]) -> Self {
        let mut d = self.clone();
        d.set_singular(j);
        d
    }

    pub fn label_of(&self, n: Node) -> Option<&str> {
        self.labels.get(&n).map(|s| s.as_str())
    }

    pub fn set_label(&mut self, n: Node, label: &str) {
        self.labels.insert(n, label.to_string());
    }

    /// Resolves a node given either its number or an alias label.
    pub fn resolve_node(&self, s: &str) -> Result<Node> {
        if let Ok(n) = s.parse::<Node>() {
            if self.nodes.contains(&n) {
                return Ok(n);
            }
        }
        for (n, l) in &self.labels {
            if l == s {
                return Ok(*n);
            }
        }
        Err(Error::BadDiagram(format!("unknown node `{s}`")))
    }

    pub fn neighbors(&self, n: Node) -> Vec<Node> {
        let mut out: Vec<Node> = self
            .edges
            .iter()
            .filter(|e| e.touches(n))
            .map(|e| e.other(n))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn adjacent(&self, a: Node, b: Node) -> bool {
        self.edges
            .iter()
            .any(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<BTreeSet<Node>> {
        let mut seen: BTreeSet<Node> = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in &self.nodes {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !comp.insert(v) {
                    continue;
                }
                for w in self.neighbors(v) {
                    if !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            comps.push(comp);
        }
        comps
    }

    /// Induced subdiagram on I, keeping original node ids and markings.
    pub fn subdiagram(&self, i_set: &BTreeSet<Node>) -> Result<Self> {
        for n in i_set {
            if !self.nodes.contains(n) {
                return Err(Error::BadDiagram(format!(
                    "subdiagram refers to unknown node {n}"
                )));
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| i_set.contains(&e.a) && i_set.contains(&e.b))
            .copied()
            .collect();
        Ok(MarkedDiagram {
            nodes: i_set.clone(),
            edges,
            crossed: self.crossed.intersection(i_set).copied().collect(),
            singular: self.singular.intersection(i_set).copied().collect(),
            labels: self
                .labels
                .iter()
                .filter(|(n, _)| i_set.contains(n))
                .map(|(n, l)| (*n, l.clone()))
                .collect(),
        })
    }

    /// Components of the induced subdiagram D(I), each flagged S-trivial iff
    /// it contains no crossed node. The empty I yields no components.
    pub fn subdiagram_components(&self, i_set: &BTreeSet<Node>) -> Result<Vec<(BTreeSet<Node>, bool)>> {
        let sub = self.subdiagram(i_set)?;
        Ok(sub
            .components()
            .into_iter()
            .map(|c| {
                let trivial = c.iter().all(|n| !self.is_crossed(*n));
                (c, trivial)
            })
            .collect())
    }

    /// True iff every component of D(I) contains a crossed node (I = empty is
    /// allowed). These are the I that index standard Kostant modules.
    pub fn has_no_s_trivial_components(&self, i_set: &BTreeSet<Node>) -> bool {
        match self.subdiagram_components(i_set) {
            Ok(comps) => comps.iter().all(|(_, trivial)| !trivial),
            Err(_) => false,
        }
    }

    /// Arrow-reversed diagram (long and short roots swapped). An involution.
    pub fn dual(&self) -> Self {
        let mut d = self.clone();
        for e in &mut d.edges {
            if let Some(s) = e.short {
                e.short = Some(e.other(s));
            }
        }
        d
    }

    /// Simply-laced cover, defined for the duals of the non-simply-laced
    /// Hermitian symmetric pairs. Accepts either the pair itself,
    /// (B_n, B_{n-1}) or (C_n, A_{n-1}), or its dual; folds to
    /// (A_{2n-1}, A_{2n-2}) resp. (D_{n+1}, A_n).
    pub fn simply_laced_cover(&self) -> Result<Self> {
        let comps = self.components();
        if comps.len() != 1 {
            return Err(Error::UnsupportedCover("diagram is not connected".into()));
        }
        let tc = self.component_type(&comps[0])?;
        let crossed: Vec<Node> = self.crossed.iter().copied().collect();
        if crossed.len() != 1 {
            return Err(Error::UnsupportedCover(
                "cover needs exactly one crossed node".into(),
            ));
        }
        let pos = tc
            .order
            .iter()
            .position(|&v| v == crossed[0])
            .map(|p| p as u32 + 1)
            .ok_or_else(|| Error::UnsupportedCover("crossed node outside component".into()))?;
        match (tc.lie_type, pos) {
            // (B_n, B_{n-1}) or its dual (C_n, crossed alpha_1): fold A_{2n-1} at node n
            (LieType::B(m) | LieType::C(m), 1) if m >= 2 => {
                MarkedDiagram::standard(LieType::A(2 * m - 1), &[1], &[])
            }
            // (C_n, A_{n-1}) or its dual (B_n, crossed alpha_n): fold D_{n+1} at node n-1
            (LieType::B(m) | LieType::C(m), p) if p == m => {
                MarkedDiagram::standard(LieType::D(m + 1), &[m + 1], &[])
            }
            _ => Err(Error::UnsupportedCover(format!(
                "no cover for ({}, crossed alpha_{pos})",
                tc.lie_type
            ))),
        }
    }

    /// Recognizes one connected component and returns its type together with
    /// a Bourbaki ordering of its nodes.
    pub fn component_type(&self, comp: &BTreeSet<Node>) -> Result<TypedComponent> {
        let nodes: Vec<Node> = comp.iter().copied().collect();
        let m = nodes.len();
        let sub = self.subdiagram(comp)?;
        let deg = |v: Node| sub.neighbors(v).len();
        let triple: Vec<&Edge> = sub.edges.iter().filter(|e| e.mult == 3).collect();
        let double: Vec<&Edge> = sub.edges.iter().filter(|e| e.mult == 2).collect();
        if sub.edges.len() != m.saturating_sub(1) {
            return Err(Error::BadDiagram(format!(
                "component {nodes:?} is not a tree"
            )));
        }
        if !triple.is_empty() {
            if m == 2 && triple.len() == 1 && double.is_empty() {
                let e = triple[0];
                let short = e.short.ok_or_else(|| {
                    Error::BadDiagram(format!("triple edge {}-{} lacks arrow", e.a, e.b))
                })?;
                return Ok(TypedComponent {
                    lie_type: LieType::G2,
                    order: vec![short, e.other(short)],
                });
            }
            return Err(Error::BadDiagram(format!(
                "component {nodes:?} has an invalid triple bond"
            )));
        }
        if !double.is_empty() {
            if double.len() != 1 {
                return Err(Error::BadDiagram(format!(
                    "component {nodes:?} has more than one double bond"
                )));
            }
            // must be a path
            if nodes.iter().any(|&v| deg(v) > 2) {
                return Err(Error::BadDiagram(format!(
                    "component {nodes:?} has a branch and a double bond"
                )));
            }
            let path = sub.path_order()?;
            let e = double[0];
            let short = e
                .short
                .ok_or_else(|| Error::BadDiagram(format!("double edge {}-{} lacks arrow", e.a, e.b)))?;
            let ia = path.iter().position(|&v| v == e.a).unwrap();
            let ib = path.iter().position(|&v| v == e.b).unwrap();
            let (lo, hi) = if ia < ib { (ia, ib) } else { (ib, ia) };
            if lo + 1 != hi {
                return Err(Error::BadDiagram("double bond not along the path".into()));
            }
            if m == 4 && lo == 1 {
                // F4: order from the end adjacent to the long side of the bond
                let long = e.other(short);
                let order: Vec<Node> = if path[1] == long {
                    path
                } else {
                    path.into_iter().rev().collect()
                };
                return Ok(TypedComponent {
                    lie_type: LieType::F4,
                    order,
                });
            }
            if hi == m - 1 {
                // bond at the end taken in path order
                let order = path;
                let t = if order[m - 1] == short {
                    LieType::B(m as u32)
                } else {
                    LieType::C(m as u32)
                };
                return Ok(TypedComponent { lie_type: t, order });
            }
            if lo == 0 {
                // bond at the front: reverse
                let order: Vec<Node> = path.into_iter().rev().collect();
                let t = if order[m - 1] == short {
                    LieType::B(m as u32)
                } else {
                    LieType::C(m as u32)
                };
                return Ok(TypedComponent { lie_type: t, order });
            }
            return Err(Error::BadDiagram(format!(
                "component {nodes:?} has a double bond in the middle but is not F4"
            )));
        }
        // simply laced
        let branch: Vec<Node> = nodes.iter().copied().filter(|&v| deg(v) >= 3).collect();
        match branch.len() {
            0 => {
                let order = sub.path_order()?;
                Ok(TypedComponent {
                    lie_type: LieType::A(m as u32),
                    order,
                })
            }
            1 => {
                let center = branch[0];
                if deg(center) != 3 {
                    return Err(Error::BadDiagram(format!(
                        "node {center} has degree {} > 3",
                        deg(center)
                    )));
                }
                let mut arms: Vec<Vec<Node>> = sub
                    .neighbors(center)
                    .into_iter()
                    .map(|first| {
                        let mut arm = vec![first];
                        let mut prev = center;
                        loop {
                            let cur = *arm.last().unwrap();
                            let next: Vec<Node> = sub
                                .neighbors(cur)
                                .into_iter()
                                .filter(|&x| x != prev)
                                .collect();
                            match next.len() {
                                0 => break,
                                1 => {
                                    prev = cur;
                                    arm.push(next[0]);
                                }
                                _ => unreachable!("second branch point"),
                            }
                        }
                        arm
                    })
                    .collect();
                arms.sort_by_key(|a| a.len());
                let (a, b, c) = (arms[0].len(), arms[1].len(), arms[2].len());
                if a != 1 {
                    return Err(Error::BadDiagram(format!(
                        "component {nodes:?} has arm lengths ({a},{b},{c})"
                    )));
                }
                if b == 1 {
                    // D_m: long arm first (positions 1..m-2 ending at center),
                    // fork last. Ties broken toward the smallest far node.
                    let long = arms
                        .iter()
                        .enumerate()
                        .max_by_key(|(_, a)| (a.len(), std::cmp::Reverse(*a.last().unwrap())))
                        .map(|(i, _ )| i)
                        .unwrap();
                    let mut order: Vec<Node> = arms[long].iter().rev().copied().collect();
                    order.push(center);
                    let mut fork: Vec<Node> = (0..3)
                        .filter(|&i| i != long)
                        .map(|i| arms[i][0])
                        .collect();
                    fork.sort_unstable();
                    order.extend(fork);
                    Ok(TypedComponent {
                        lie_type: LieType::D(m as u32),
                        order,
                    })
                } else if b == 2 && (2..=4).contains(&c) {
                    // E6, E7, E8: positions 1,3 on the 2-arm, 2 on the 1-arm,
                    // 4 at the center, 5.. down the long arm
                    let mut order = vec![arms[1][1], arms[0][0], arms[1][0], center];
                    order.extend(arms[2].iter().copied());
                    Ok(TypedComponent {
                        lie_type: LieType::E(m as u32),
                        order,
                    })
                } else {
                    Err(Error::BadDiagram(format!(
                        "component {nodes:?} has arm lengths ({a},{b},{c})"
                    )))
                }
            }
            _ => Err(Error::BadDiagram(format!(
                "component {nodes:?} has more than one branch node"
            ))),
        }
    }

    /// Orders the nodes of a path-shaped diagram from one end to the other.
    fn path_order(&self) -> Result<Vec<Node>> {
        if self.nodes.len() == 1 {
            return Ok(vec![*self.nodes.iter().next().unwrap()]);
        }
        let ends: Vec<Node> = self
            .nodes
            .iter()
            .copied()
            .filter(|&v| self.neighbors(v).len() == 1)
            .collect();
        if ends.len() != 2 {
            return Err(Error::BadDiagram("not a path".into()));
        }
        let start = ends[0].min(ends[1]);
        let mut order = vec![start];
        let mut prev = None;
        loop {
            let cur = *order.last().unwrap();
            let next: Vec<Node> = self
                .neighbors(cur)
                .into_iter()
                .filter(|&x| Some(x) != prev)
                .collect();
            match next.len() {
                0 => break,
                1 => {
                    prev = Some(cur);
                    order.push(next[0]);
                }
                _ => return Err(Error::BadDiagram("not a path".into())),
            }
        }
        if order.len() != self.nodes.len() {
            return Err(Error::BadDiagram("not a path".into()));
        }
        Ok(order)
    }

    /// Checks structural invariants: edge endpoints exist, markings are
    /// subsets of the nodes, and every component is a valid Dynkin graph.
    pub fn validate(&self) -> Result<()> {
        for e in &self.edges {
            if !self.nodes.contains(&e.a) || !self.nodes.contains(&e.b) {
                return Err(Error::BadDiagram(format!(
                    "edge {}-{} references a missing node",
                    e.a, e.b
                )));
            }
            if e.a == e.b {
                return Err(Error::BadDiagram(format!("loop edge at node {}", e.a)));
            }
            if e.mult > 1 && e.short.is_none() {
                return Err(Error::BadDiagram(format!(
                    "edge {}-{} of multiplicity {} lacks an arrow",
                    e.a, e.b, e.mult
                )));
            }
        }
        for n in &self.crossed {
            if !self.nodes.contains(n) {
                return Err(Error::BadDiagram(format!("crossed node {n} does not exist")));
            }
        }
        for n in &self.singular {
            if !self.nodes.contains(n) {
                return Err(Error::BadDiagram(format!(
                    "singular node {n} does not exist"
                )));
            }
        }
        for comp in self.components() {
            self.component_type(&comp)?;
        }
        Ok(())
    }

    /// All automorphisms of the underlying decorated graph, as node maps.
    /// Diagram ranks are at most 9, so brute-force search is fine.
    pub fn automorphisms(&self) -> Vec<BTreeMap<Node, Node>> {
        let nodes = self.node_vec();
        let mut out = Vec::new();
        let mut partial: BTreeMap<Node, Node> = BTreeMap::new();
        self.extend_automorphism(&nodes, 0, &mut partial, &mut out);
        out
    }

    fn edge_between(&self, a: Node, b: Node) -> Option<&Edge> {
        self.edges
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
    }

    fn compatible(&self, partial: &BTreeMap<Node, Node>, v: Node, img: Node) -> bool {
        for (&u, &iu) in partial {
            match (self.edge_between(u, v), self.edge_between(iu, img)) {
                (None, None) => {}
                (Some(e1), Some(e2)) => {
                    if e1.mult != e2.mult {
                        return false;
                    }
                    let s1 = e1.short.map(|s| s == v);
                    let s2 = e2.short.map(|s| s == img);
                    if s1 != s2 {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    fn extend_automorphism(
        &self,
        nodes: &[Node],
        i: usize,
        partial: &mut BTreeMap<Node, Node>,
        out: &mut Vec<BTreeMap<Node, Node>>,
    ) {
        if i == nodes.len() {
            out.push(partial.clone());
            return;
        }
        let v = nodes[i];
        for &img in nodes {
            if partial.values().any(|&x| x == img) {
                continue;
            }
            if self.neighbors(v).len() != self.neighbors(img).len() {
                continue;
            }
            if !self.compatible(partial, v, img) {
                continue;
            }
            partial.insert(v, img);
            self.extend_automorphism(nodes, i + 1, partial, out);
            partial.remove(&v);
        }
    }

    /// Canonical description used for cache keys and table lookups:
    /// components sorted, each as (type, crossed positions, singular
    /// positions) minimized over diagram automorphisms.
    pub fn canonical_form(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for comp in self.components() {
            let sub = self.subdiagram(&comp).expect("component of a valid diagram");
            let tc = self.component_type(&comp).expect("valid component");
            let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
            for auto in sub.automorphisms() {
                // positions (1-based in Bourbaki order) of crossed and singular nodes
                let pos = |set: &BTreeSet<Node>| -> Vec<u32> {
                    let mut v: Vec<u32> = set
                        .iter()
                        .map(|n| {
                            let img = auto[n];
                            tc.order.iter().position(|&x| x == img).unwrap() as u32 + 1
                        })
                        .collect();
                    v.sort_unstable();
                    v
                };
                let cand = (pos(&sub.crossed), pos(&sub.singular));
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
            let (cx, sx) = best.unwrap_or_default();
            let fmt_set = |v: &[u32]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            parts.push(format!(
                "{}[x:{};j:{}]",
                tc.lie_type,
                fmt_set(&cx),
                fmt_set(&sx)
            ));
        }
        parts.sort();
        if parts.is_empty() {
            "empty".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Pair notation like "(F4, C3)": ambient type against the Levi type.
    pub fn pair_name(&self) -> String {
        let ambient: Vec<String> = self
            .components()
            .iter()
            .map(|c| self.component_type(c).map(|t| t.lie_type.to_string()))
            .collect::<Result<_>>()
            .unwrap_or_else(|_| vec!["?".into()]);
        let levi = self.levi();
        let levi_types: Vec<String> = self
            .subdiagram(&levi)
            .ok()
            .map(|sub| {
                let mut ts: Vec<String> = sub
                    .components()
                    .iter()
                    .filter_map(|c| sub.component_type(c).ok().map(|t| t.lie_type.to_string()))
                    .collect();
                ts.sort();
                ts
            })
            .unwrap_or_default();
        let levi_str = if levi_types.is_empty() {
            "-".to_string()
        } else {
            levi_types.join("x")
        };
        format!("({}, {})", ambient.join("x"), levi_str)
    }
}

impl fmt::Display for MarkedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_form())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[Node]) -> BTreeSet<Node> {
        v.iter().copied().collect()
    }

    #[test]
    fn standard_types_validate() {
        for t in [
            LieType::A(3),
            LieType::B(4),
            LieType::C(3),
            LieType::D(4),
            LieType::E(6),
            LieType::E(7),
            LieType::E(8),
            LieType::F4,
            LieType::G2,
        ] {
            let d = MarkedDiagram::standard(t, &[1], &[]).unwrap();
            assert_eq!(d.rank() as u32, t.rank());
            let comps = d.components();
            assert_eq!(comps.len(), 1);
            let tc = d.component_type(&comps[0]).unwrap();
            assert_eq!(tc.lie_type, t);
            // Bourbaki order of the standard construction is the identity
            assert_eq!(tc.order, (1..=t.rank()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn json_input_round_trip() {
        let d = MarkedDiagram::from_json(r#"{"type":"F4","crossed":[1],"singular":[4]}"#).unwrap();
        assert_eq!(d.crossed(), &set(&[1]));
        assert_eq!(d.singular(), &set(&[4]));
        assert_eq!(d.levi(), set(&[2, 3, 4]));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(MarkedDiagram::from_json(r#"{"type":"Q9"}"#).is_err());
        assert!(MarkedDiagram::standard(LieType::A(3), &[7], &[]).is_err());
        assert!(MarkedDiagram::standard(LieType::A(3), &[1], &[9]).is_err());
    }

    #[test]
    fn f4_subdiagrams() {
        let d = MarkedDiagram::standard(LieType::F4, &[1], &[]).unwrap();
        // I = {} -> empty diagram, no components
        assert!(d.subdiagram_components(&set(&[])).unwrap().is_empty());
        assert!(d.has_no_s_trivial_components(&set(&[])));
        // I = {1,2} -> connected, contains the crossed node
        let comps = d.subdiagram_components(&set(&[1, 2])).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].1);
        // I = {2,3} -> one S-trivial component
        let comps = d.subdiagram_components(&set(&[2, 3])).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].1);
        assert!(!d.has_no_s_trivial_components(&set(&[2, 3])));
    }

    #[test]
    fn levi_of_f4_is_c3() {
        let d = MarkedDiagram::standard(LieType::F4, &[1], &[]).unwrap();
        let sub = d.subdiagram(&d.levi()).unwrap();
        let comps = sub.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(sub.component_type(&comps[0]).unwrap().lie_type, LieType::C(3));
        assert_eq!(d.pair_name(), "(F4, C3)");
    }

    #[test]
    fn dual_is_involution_and_swaps_b_c() {
        for t in [LieType::B(4), LieType::C(4), LieType::F4, LieType::G2, LieType::A(5)] {
            let d = MarkedDiagram::standard(t, &[1], &[]).unwrap();
            assert_eq!(d.dual().dual(), d);
        }
        let b = MarkedDiagram::standard(LieType::B(4), &[1], &[]).unwrap();
        let comps = b.dual().components();
        assert_eq!(
            b.dual().component_type(&comps[0]).unwrap().lie_type,
            LieType::C(4)
        );
    }

    #[test]
    fn covers_match_the_folding_table() {
        // (B3, B2) -> (A5, A4) with crossed alpha_1
        let b = MarkedDiagram::standard(LieType::B(3), &[1], &[]).unwrap();
        let cover = b.simply_laced_cover().unwrap();
        assert_eq!(cover.canonical_form(), "A5[x:1;j:]");
        let bd = b.dual().simply_laced_cover().unwrap();
        assert_eq!(bd, cover);
        // (C3, A2) -> (D4, A3) with crossed alpha_4
        let c = MarkedDiagram::standard(LieType::C(3), &[3], &[]).unwrap();
        let cover = c.simply_laced_cover().unwrap();
        let comps = cover.components();
        assert_eq!(
            cover.component_type(&comps[0]).unwrap().lie_type,
            LieType::D(4)
        );
        assert_eq!(cover.crossed(), &set(&[4]));
        // simply-laced input -> error
        let a = MarkedDiagram::standard(LieType::A(4), &[2], &[]).unwrap();
        assert!(a.simply_laced_cover().is_err());
    }

    #[test]
    fn canonical_form_uses_automorphisms() {
        // crossing node 3 of A3 is the same as crossing node 1
        let d1 = MarkedDiagram::standard(LieType::A(3), &[1], &[]).unwrap();
        let d3 = MarkedDiagram::standard(LieType::A(3), &[3], &[]).unwrap();
        assert_eq!(d1.canonical_form(), d3.canonical_form());
        let d2 = MarkedDiagram::standard(LieType::A(3), &[2], &[]).unwrap();
        assert_ne!(d1.canonical_form(), d2.canonical_form());
        // D4 triality identifies the three outer crossings
        let l1 = MarkedDiagram::standard(LieType::D(4), &[1], &[]).unwrap();
        let l4 = MarkedDiagram::standard(LieType::D(4), &[4], &[]).unwrap();
        assert_eq!(l1.canonical_form(), l4.canonical_form());
    }

    #[test]
    fn e_type_orderings() {
        let d = MarkedDiagram::standard(LieType::E(7), &[7], &[]).unwrap();
        let comps = d.components();
        let tc = d.component_type(&comps[0]).unwrap();
        assert_eq!(tc.lie_type, LieType::E(7));
        assert_eq!(tc.order.len(), 7);
        // node 4 is the branch node, node 2 hangs off it
        assert!(d.adjacent(2, 4));
        assert!(d.adjacent(3, 4));
        assert!(d.adjacent(4, 5));
        assert!(!d.adjacent(2, 3));
    }
}
