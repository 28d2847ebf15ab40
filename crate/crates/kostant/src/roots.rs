//! Root systems built from marked diagrams: Cartan data, positive roots,
//! inner products, rho, and the Weyl dimension formula. Roots are integer
//! vectors in the simple-root basis; weights are integer vectors in the
//! fundamental-weight basis. All arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::diagram::{Edge, MarkedDiagram, Node};
use crate::{Error, Result};

/// Integer vector in the fundamental-weight basis; coordinate i is the
/// pairing with the i-th simple coroot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, pos: usize) -> Self {
        let mut v = vec![0; rank];
        v[pos] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.0.iter().all(|&c| c <= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<i64>,
    pub height: i64,
    /// Half the squared length, in the normalization where short simple
    /// roots of the component have d = 1.
    pub d: i64,
}

pub struct RootSystem {
    diagram: MarkedDiagram,
    nodes: Vec<Node>,
    node_pos: BTreeMap<Node, usize>,
    /// cartan[i][j] = <alpha_j, alpha_i^vee>
    cartan: Vec<Vec<i64>>,
    /// Symmetrizers: (alpha_i, alpha_j) = d[i] * cartan[i][j].
    d: Vec<i64>,
    positive_roots: Vec<Root>,
    root_index: HashMap<Vec<i64>, usize>,
    rho: Weight,
}

impl RootSystem {
    /// Generates the root system of a valid marked diagram (possibly
    /// reducible). Positive roots are ordered by height then lexicographic.
    pub fn build(diagram: &MarkedDiagram) -> Result<Self> {
        diagram.validate()?;
        let nodes = diagram.node_vec();
        let n = nodes.len();
        let node_pos: BTreeMap<Node, usize> =
            nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();

        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for e in diagram.edges() {
            let ia = node_pos[&e.a];
            let ib = node_pos[&e.b];
            match e.mult {
                1 => {
                    cartan[ia][ib] = -1;
                    cartan[ib][ia] = -1;
                }
                m => {
                    let short = e.short.ok_or_else(|| {
                        Error::BadDiagram(format!("edge {}-{} lacks arrow", e.a, e.b))
                    })?;
                    let is_ = node_pos[&short];
                    let il = if is_ == ia { ib } else { ia };
                    // <alpha_long, alpha_short^vee> = -mult
                    cartan[is_][il] = -(m as i64);
                    cartan[il][is_] = -1;
                }
            }
        }

        // Symmetrizers per component: d_i a_ij = d_j a_ji, scaled to integers
        // with minimum 1.
        let mut d = vec![0i64; n];
        for comp in diagram.components() {
            let mut ratio: BTreeMap<usize, Ratio<i64>> = BTreeMap::new();
            let start = node_pos[comp.iter().next().unwrap()];
            ratio.insert(start, Ratio::one());
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i != j && cartan[i][j] != 0 && !ratio.contains_key(&j) {
                        // d_j = d_i * a_ij / a_ji
                        let r = ratio[&i] * Ratio::new(cartan[i][j], cartan[j][i]);
                        ratio.insert(j, r);
                        stack.push(j);
                    }
                }
            }
            let denom_lcm = ratio
                .values()
                .map(|r| *r.denom())
                .fold(1i64, num_integer::lcm);
            let mut vals: BTreeMap<usize, i64> = ratio
                .iter()
                .map(|(&i, r)| (i, (r * Ratio::from_integer(denom_lcm)).to_integer()))
                .collect();
            let g = vals.values().fold(0i64, |acc, &v| num_integer::gcd(acc, v));
            for (&i, v) in vals.iter_mut() {
                d[i] = *v / g;
            }
        }

        // Close the simple roots under all simple reflections.
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut work: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut c = vec![0i64; n];
            c[i] = 1;
            roots.insert(c.clone());
            work.push(c);
        }
        while let Some(c) = work.pop() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| c[j] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut r = c.clone();
                r[i] -= pairing;
                if roots.insert(r.clone()) {
                    work.push(r);
                }
            }
        }

        let dd = d.clone();
        let norm = |c: &[i64]| -> i64 {
            // (beta, beta) / 2
            let mut s = 0i64;
            for j in 0..n {
                for k in 0..n {
                    s += c[j] * c[k] * dd[j] * cartan[j][k];
                }
            }
            debug_assert!(s % 2 == 0);
            s / 2
        };

        let mut positive_roots: Vec<Root> = roots
            .into_iter()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .map(|c| {
                let height = c.iter().sum();
                let d = norm(&c);
                Root { coords: c, height, d }
            })
            .collect();
        positive_roots.sort_by(|a, b| a.height.cmp(&b.height).then(a.coords.cmp(&b.coords)));
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect();

        Ok(RootSystem {
            diagram: diagram.clone(),
            rho: Weight(vec![1; n]),
            nodes,
            node_pos,
            cartan,
            d,
            positive_roots,
            root_index,
        })
    }

    pub fn diagram(&self) -> &MarkedDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_at(&self, pos: usize) -> Node {
        self.nodes[pos]
    }

    pub fn pos_of(&self, node: Node) -> usize {
        self.node_pos[&node]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// <alpha_j, alpha_i^vee>
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn is_positive_root(&self, coords: &[i64]) -> bool {
        self.root_index.contains_key(coords)
    }

    pub fn root_by_coords(&self, coords: &[i64]) -> Option<&Root> {
        self.root_index.get(coords).map(|&i| &self.positive_roots[i])
    }

    fn min_d(&self) -> i64 {
        self.positive_roots.iter().map(|r| r.d).min().unwrap_or(1)
    }

    /// Short in the Enright-Shelton convention: if all roots have the same
    /// length they are all short.
    pub fn is_short(&self, r: &Root) -> bool {
        r.d == self.min_d()
    }

    /// Unique highest root of a connected diagram.
    pub fn highest_root(&self) -> Result<&Root> {
        if self.diagram.components().len() != 1 {
            return Err(Error::BadDiagram(
                "highest root requires a connected diagram".into(),
            ));
        }
        Ok(self.positive_roots.last().expect("nonempty root system"))
    }

    pub fn highest_short_root(&self) -> Result<&Root> {
        if self.diagram.components().len() != 1 {
            return Err(Error::BadDiagram(
                "highest short root requires a connected diagram".into(),
            ));
        }
        Ok(self
            .positive_roots
            .iter()
            .filter(|r| self.is_short(r))
            .max_by_key(|r| (r.height, r.coords.clone()))
            .expect("nonempty root system"))
    }

    /// s_i acting on a weight in fundamental coordinates.
    pub fn reflect_weight(&self, v: &Weight, i: usize) -> Weight {
        let vi = v.0[i];
        if vi == 0 {
            return v.clone();
        }
        let mut out = v.0.clone();
        for (j, o) in out.iter_mut().enumerate() {
            *o -= vi * self.cartan[j][i];
        }
        Weight(out)
    }

    /// A simple root written in fundamental coordinates (column i of the
    /// Cartan matrix).
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|j| self.cartan[j][i]).collect())
    }

    /// A root (simple-root coordinates) converted to fundamental coordinates.
    pub fn root_to_weight(&self, coords: &[i64]) -> Weight {
        Weight(
            (0..self.rank())
                .map(|j| (0..self.rank()).map(|k| coords[k] * self.cartan[j][k]).sum())
                .collect(),
        )
    }

    /// (u, v) for two roots in simple-root coordinates.
    pub fn inner_roots(&self, a: &[i64], b: &[i64]) -> Ratio<i64> {
        let mut s = 0i64;
        for j in 0..self.rank() {
            if a[j] == 0 {
                continue;
            }
            for k in 0..self.rank() {
                s += a[j] * b[k] * self.d[j] * self.cartan[j][k];
            }
        }
        Ratio::from_integer(s)
    }

    /// (v, beta) for a weight v (fundamental coords) and a root beta
    /// (simple-root coords); equals sum_j beta_j d_j v_j.
    pub fn inner_weight_root(&self, v: &Weight, beta: &[i64]) -> Ratio<i64> {
        let s: i64 = (0..self.rank()).map(|j| beta[j] * self.d[j] * v.0[j]).sum();
        Ratio::from_integer(s)
    }

    /// (u, v) for two weights in fundamental coordinates; solves the linear
    /// system to express v over the simple roots.
    pub fn inner_weights(&self, u: &Weight, v: &Weight) -> Ratio<i64> {
        let coords = self.weight_to_root_coords(v);
        let mut s = Ratio::zero();
        for j in 0..self.rank() {
            s += coords[j] * Ratio::from_integer(self.d[j] * u.0[j]);
        }
        s
    }

    /// Expresses a weight in the simple-root basis (rational coordinates).
    pub fn weight_to_root_coords(&self, v: &Weight) -> Vec<Ratio<i64>> {
        // Solve A^T c = v where A[j][i] = cartan[j][i] gives the fundamental
        // coordinates of alpha_i.
        let n = self.rank();
        let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| Ratio::from_integer(self.cartan[j][i]))
                    .chain(std::iter::once(Ratio::from_integer(v.0[j])))
                    .collect()
            })
            .collect();
        // Gaussian elimination
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .expect("Cartan matrix is invertible");
            m.swap(col, pivot);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    for c in col..=n {
                        let sub = f * m[col][c];
                        m[r][c] -= sub;
                    }
                }
            }
        }
        (0..n).map(|j| m[j][n]).collect()
    }

    /// <v, beta^vee> = 2 (v, beta) / (beta, beta); exact integer for
    /// integral weights.
    pub fn pair_coroot(&self, v: &Weight, beta: &Root) -> i64 {
        let num: i64 = (0..self.rank())
            .map(|j| beta.coords[j] * self.d[j] * v.0[j])
            .sum();
        debug_assert_eq!(num % beta.d, 0, "coroot pairing must be integral");
        num / beta.d
    }

    /// Conjugates v into the antidominant chamber; returns the antidominant
    /// representative and the node ids where the pairing vanishes.
    pub fn antidominant(&self, v: &Weight) -> (Weight, BTreeSet<Node>) {
        let mut w = v.clone();
        loop {
            match w.0.iter().position(|&c| c > 0) {
                Some(i) => w = self.reflect_weight(&w, i),
                None => break,
            }
        }
        let j = w
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| self.nodes[i])
            .collect();
        (w, j)
    }

    /// The unique S-dominant element of the W_S-orbit of v.
    pub fn levi_dominant(&self, v: &Weight, s_set: &BTreeSet<Node>) -> Weight {
        let positions: Vec<usize> = s_set.iter().map(|n| self.node_pos[n]).collect();
        let mut w = v.clone();
        loop {
            match positions.iter().find(|&&i| w.0[i] < 0) {
                Some(&i) => w = self.reflect_weight(&w, i),
                None => break,
            }
        }
        w
    }

    /// Positive roots supported on S.
    pub fn levi_positive_roots<'a>(&'a self, s_set: &'a BTreeSet<Node>) -> impl Iterator<Item = &'a Root> {
        self.positive_roots.iter().filter(move |r| {
            r.coords
                .iter()
                .enumerate()
                .all(|(j, &c)| c == 0 || s_set.contains(&self.nodes[j]))
        })
    }

    /// Weyl dimension formula for the Levi on S: the dimension of the simple
    /// finite-dimensional module of S-dominant highest weight hw,
    /// prod <hw+rho, beta^vee> / <rho, beta^vee> over beta in Phi_S^+.
    pub fn weyl_dimension(&self, s_set: &BTreeSet<Node>, hw: &Weight) -> Result<num_bigint::BigUint> {
        for n in s_set {
            let i = self.node_pos[n];
            if hw.0[i] < 0 {
                return Err(Error::NotDominant { node: *n });
            }
        }
        let shifted = hw.add(&self.rho);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for beta in self.levi_positive_roots(s_set) {
            num *= BigInt::from(self.pair_coroot(&shifted, beta));
            den *= BigInt::from(self.pair_coroot(&self.rho, beta));
        }
        debug_assert!(!den.is_zero());
        let (q, r) = num_integer::Integer::div_rem(&num, &den);
        debug_assert!(r.is_zero(), "Weyl dimension must be an exact integer");
        debug_assert!(q.is_positive() || q.is_zero());
        Ok(q.to_biguint().unwrap_or_default())
    }

    /// Attaches a node labelled "-gamma" to the diagram, adjacent to exactly
    /// the nodes alpha with (gamma, alpha) != 0.
    pub fn extended_attach(&self, gamma: &Root, base: &MarkedDiagram) -> Result<(MarkedDiagram, Node)> {
        if !self.is_positive_root(&gamma.coords) {
            return Err(Error::OutOfRange("gamma is not a positive root".into()));
        }
        let new_id = self.nodes.iter().copied().max().unwrap_or(0)
            .max(base.nodes().max().unwrap_or(0))
            + 1;
        let mut nodes: BTreeSet<Node> = base.nodes().collect();
        nodes.insert(new_id);
        let mut edges: Vec<Edge> = base.edges().to_vec();
        let mut attached = false;
        for node in base.nodes() {
            let i = self.node_pos[&node];
            let mut alpha = vec![0i64; self.rank()];
            alpha[i] = 1;
            if !self.inner_roots(&gamma.coords, &alpha).is_zero() {
                edges.push(Edge {
                    a: new_id,
                    b: node,
                    mult: 1,
                    short: None,
                });
                attached = true;
            }
        }
        assert!(
            attached || base.is_empty(),
            "a nonzero root pairs nontrivially with some node of an irreducible diagram"
        );
        let mut out = MarkedDiagram::from_parts(
            nodes,
            edges,
            base.crossed().clone(),
            base.singular().clone(),
        );
        out.set_label(new_id, "-gamma");
        Ok((out, new_id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LieType;

    fn rs(t: LieType, crossed: &[Node]) -> RootSystem {
        let d = MarkedDiagram::standard(t, crossed, &[]).unwrap();
        RootSystem::build(&d).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for t in [
            LieType::A(3),
            LieType::B(3),
            LieType::C(4),
            LieType::D(4),
            LieType::E(6),
            LieType::E(7),
            LieType::E(8),
            LieType::F4,
            LieType::G2,
        ] {
            let r = rs(t, &[1]);
            assert_eq!(r.num_positive_roots(), t.positive_root_count(), "{t}");
        }
    }

    #[test]
    fn rho_pairs_to_one_with_simple_coroots() {
        for t in [LieType::A(4), LieType::B(3), LieType::F4, LieType::G2] {
            let r = rs(t, &[1]);
            for i in 0..r.rank() {
                let mut alpha = vec![0; r.rank()];
                alpha[i] = 1;
                let root = r.root_by_coords(&alpha).unwrap().clone();
                assert_eq!(r.pair_coroot(r.rho(), &root), 1);
            }
        }
    }

    #[test]
    fn f4_cartan_entries() {
        let r = rs(LieType::F4, &[1]);
        // alpha_2 long, alpha_3 short: <alpha_2, alpha_3^vee> = -2
        assert_eq!(r.cartan_entry(2, 1), -2);
        assert_eq!(r.cartan_entry(1, 2), -1);
        // <alpha, alpha^vee> = 2 for every simple root
        for i in 0..4 {
            assert_eq!(r.cartan_entry(i, i), 2);
        }
    }

    #[test]
    fn weyl_dimensions() {
        // trivial module
        let r = rs(LieType::A(3), &[2]);
        let s = r.diagram().levi();
        assert_eq!(r.weyl_dimension(&s, &Weight::zero(3)).unwrap(), 1u32.into());
        // adjoint of A1 x A1 at hw = theta is 3-dimensional per factor
        // sl2 with hw = alpha: dim 3
        let a1 = rs(LieType::A(1), &[]);
        let s: BTreeSet<Node> = [1].into();
        let hw = a1.root_to_weight(&[1]);
        assert_eq!(a1.weyl_dimension(&s, &hw).unwrap(), 3u32.into());
        // non-dominant -> error naming the violating node
        let bad = Weight(vec![-1]);
        match a1.weyl_dimension(&s, &bad) {
            Err(Error::NotDominant { node }) => assert_eq!(node, 1),
            other => panic!("expected dominance error, got {other:?}"),
        }
    }

    #[test]
    fn e7_highest_root_attaches_to_alpha_1() {
        let r = rs(LieType::E(7), &[7]);
        let theta = r.highest_root().unwrap().clone();
        assert_eq!(theta.coords, vec![2, 2, 3, 4, 3, 2, 1]);
        let (ext, new_id) = r.extended_attach(&theta, r.diagram()).unwrap();
        assert_eq!(ext.neighbors(new_id), vec![1]);
    }

    #[test]
    fn a3_highest_root_attaches_to_both_ends() {
        let r = rs(LieType::A(3), &[2]);
        let theta = r.highest_root().unwrap().clone();
        let (ext, new_id) = r.extended_attach(&theta, r.diagram()).unwrap();
        assert_eq!(ext.neighbors(new_id), vec![1, 3]);
    }

    #[test]
    fn antidominant_examples() {
        let r = rs(LieType::A(3), &[2]);
        // lambda = -2 rho: lambda + rho = -rho already antidominant, J empty
        let v = r.rho().scale(-1);
        let (anti, j) = r.antidominant(&v);
        assert_eq!(anti, v);
        assert!(j.is_empty());
        // lambda = -rho: zero vector, J = all nodes
        let (anti, j) = r.antidominant(&Weight::zero(3));
        assert_eq!(anti, Weight::zero(3));
        assert_eq!(j.len(), 3);
    }

    #[test]
    fn weight_root_conversions_agree() {
        let r = rs(LieType::F4, &[1]);
        for beta in r.positive_roots() {
            let w = r.root_to_weight(&beta.coords);
            let back = r.weight_to_root_coords(&w);
            for (j, c) in back.iter().enumerate() {
                assert_eq!(*c, Ratio::from_integer(beta.coords[j]));
            }
            // <beta, beta^vee> = 2
            assert_eq!(r.pair_coroot(&w, beta), 2);
        }
    }
}
