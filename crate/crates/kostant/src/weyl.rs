//! Weyl group elements and parabolic quotients ^S W.
//!
//! Elements are identified with orbit points of a generic weight: a full-group
//! element w is keyed by w^{-1}(rho), a coset W_S w by w^{-1}(lambda_S) where
//! lambda_S is the sum of the fundamental weights of the crossed nodes. Right
//! multiplication by a simple reflection acts on keys as the reflection
//! itself, so generation is a BFS over reflected weights. The sign of key
//! coordinate g tells whether right multiplication by s_g ascends (positive),
//! descends (negative) or stays in the same coset (zero).

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::diagram::{MarkedDiagram, Node};
use crate::roots::{RootSystem, Weight};
use crate::{Error, Result};

/// Default cap on generated elements.
pub const DEFAULT_MAX_ELEMENTS: usize = 1 << 20;
/// Posets up to this size materialize the full Bruhat relation as bitsets;
/// larger ones answer order queries per element on demand.
pub const DEFAULT_RELATION_THRESHOLD: usize = 20_000;

#[derive(Debug, Clone, Copy)]
pub struct GenOptions {
    pub max_elements: usize,
    pub relation_threshold: usize,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            max_elements: DEFAULT_MAX_ELEMENTS,
            relation_threshold: DEFAULT_RELATION_THRESHOLD,
        }
    }
}

struct Elem {
    key: Vec<i64>,
    len: u32,
    parent: u32,
    parent_gen: u8,
}

/// BFS orbit of a weight under right multiplication by simple reflections.
struct Orbit {
    rank: usize,
    elems: Vec<Elem>,
    trans: Vec<u32>,
    index: HashMap<Vec<i64>, u32>,
}

impl Orbit {
    fn generate(rs: &RootSystem, start: &Weight, cap: usize) -> Result<Orbit> {
        let rank = rs.rank();
        let mut orbit = Orbit {
            rank,
            elems: Vec::new(),
            trans: Vec::new(),
            index: HashMap::new(),
        };
        orbit.elems.push(Elem {
            key: start.0.clone(),
            len: 0,
            parent: 0,
            parent_gen: 0,
        });
        orbit.index.insert(start.0.clone(), 0);
        let mut head = 0usize;
        while head < orbit.elems.len() {
            let id = head as u32;
            head += 1;
            let key = orbit.elems[id as usize].key.clone();
            let len = orbit.elems[id as usize].len;
            for g in 0..rank {
                let target;
                if key[g] == 0 {
                    target = id; // stays in the coset
                } else {
                    let img = rs.reflect_weight(&Weight(key.clone()), g);
                    if let Some(&t) = orbit.index.get(&img.0) {
                        target = t;
                    } else {
                        if orbit.elems.len() >= cap {
                            return Err(Error::PosetTooLarge { cap });
                        }
                        let t = orbit.elems.len() as u32;
                        debug_assert!(key[g] > 0, "BFS must discover along ascents");
                        orbit.elems.push(Elem {
                            key: img.0.clone(),
                            len: len + 1,
                            parent: id,
                            parent_gen: g as u8,
                        });
                        orbit.index.insert(img.0, t);
                        target = t;
                    }
                }
                orbit.trans.push(target);
            }
            debug_assert_eq!(orbit.trans.len(), head * rank);
        }
        Ok(orbit)
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn trans(&self, id: u32, g: usize) -> u32 {
        self.trans[id as usize * self.rank + g]
    }

    fn length(&self, id: u32) -> u32 {
        self.elems[id as usize].len
    }

    fn key(&self, id: u32) -> &[i64] {
        &self.elems[id as usize].key
    }

    /// A reduced word, read left to right as a product of simple reflections.
    fn word(&self, id: u32) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.length(id) as usize);
        let mut cur = id;
        while cur != 0 {
            let e = &self.elems[cur as usize];
            w.push(e.parent_gen);
            cur = e.parent;
        }
        w.reverse();
        w
    }

    /// First generator g with key coordinate < 0, i.e. a right descent.
    fn first_descent(&self, id: u32) -> Option<usize> {
        self.key(id).iter().position(|&c| c < 0)
    }

    fn descents(&self, id: u32) -> Vec<usize> {
        self.key(id)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c < 0)
            .map(|(g, _)| g)
            .collect()
    }

    fn ascents(&self, id: u32) -> Vec<usize> {
        self.key(id)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(g, _)| g)
            .collect()
    }
}

/// Bit matrix holding the full order relation of a poset: row w has bit x set
/// iff x <= w.
pub struct BitRel {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitRel {
    fn new(n: usize) -> BitRel {
        let words = n.div_ceil(64);
        BitRel {
            n,
            words,
            bits: vec![0; words * n],
        }
    }

    #[inline]
    pub fn get(&self, w: u32, x: u32) -> bool {
        let row = w as usize * self.words;
        self.bits[row + (x as usize >> 6)] >> (x & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, w: u32, x: u32) {
        let row = w as usize * self.words;
        self.bits[row + (x as usize >> 6)] |= 1 << (x & 63);
    }

    pub fn row(&self, w: u32) -> &[u64] {
        &self.bits[w as usize * self.words..(w as usize + 1) * self.words]
    }

    pub fn row_count(&self, w: u32) -> usize {
        self.row(w).iter().map(|x| x.count_ones() as usize).sum()
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

/// The full Weyl group of a root system, generated as the rho-orbit.
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    orbit: Orbit,
    bruhat_memo: DashMap<(u32, u32), bool>,
}

impl WeylGroup {
    pub fn generate(rs: Arc<RootSystem>, opts: &GenOptions) -> Result<Self> {
        let orbit = Orbit::generate(&rs, rs.rho(), opts.max_elements)?;
        Ok(WeylGroup {
            rs,
            orbit,
            bruhat_memo: DashMap::new(),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.orbit.len()
    }

    pub fn rank(&self) -> usize {
        self.orbit.rank
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn length(&self, id: u32) -> u32 {
        self.orbit.length(id)
    }

    pub fn trans(&self, id: u32, g: usize) -> u32 {
        self.orbit.trans(id, g)
    }

    pub fn word(&self, id: u32) -> Vec<u8> {
        self.orbit.word(id)
    }

    pub fn right_descents(&self, id: u32) -> Vec<usize> {
        self.orbit.descents(id)
    }

    pub fn first_right_descent(&self, id: u32) -> Option<usize> {
        self.orbit.first_descent(id)
    }

    /// id * s_{w[0]} * s_{w[1]} * ...
    pub fn product_with_word(&self, id: u32, word: &[u8]) -> u32 {
        word.iter()
            .fold(id, |cur, &g| self.orbit.trans(cur, g as usize))
    }

    pub fn mult(&self, a: u32, b: u32) -> u32 {
        self.product_with_word(a, &self.orbit.word(b))
    }

    /// w acting on a weight.
    pub fn act(&self, id: u32, v: &Weight) -> Weight {
        let word = self.orbit.word(id);
        let mut out = v.clone();
        for &g in word.iter().rev() {
            out = self.rs.reflect_weight(&out, g as usize);
        }
        out
    }

    pub fn inverse(&self, id: u32) -> u32 {
        let img = self.act(id, self.rs.rho());
        *self
            .orbit
            .index
            .get(&img.0)
            .expect("inverse image stays in the regular orbit")
    }

    /// Longest element of the parabolic subgroup generated by the given
    /// simple reflections (as generator positions).
    pub fn longest_in(&self, gens: &BTreeSet<usize>) -> u32 {
        let mut cur = self.identity();
        loop {
            match gens
                .iter()
                .find(|&&g| self.orbit.key(cur)[g] > 0)
            {
                Some(&g) => cur = self.orbit.trans(cur, g),
                None => return cur,
            }
        }
    }

    /// All elements of the parabolic subgroup generated by `gens`.
    pub fn subgroup_elements(&self, gens: &BTreeSet<usize>) -> Vec<u32> {
        let mut seen = BTreeSet::from([self.identity()]);
        let mut work = vec![self.identity()];
        while let Some(x) = work.pop() {
            for &g in gens {
                let y = self.orbit.trans(x, g);
                if seen.insert(y) {
                    work.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Bruhat order on the full group; memoized recursion on a right descent
    /// of w.
    pub fn bruhat_leq(&self, x: u32, w: u32) -> bool {
        if x == w || x == self.identity() {
            return true;
        }
        if self.length(x) >= self.length(w) {
            return false;
        }
        if let Some(v) = self.bruhat_memo.get(&(x, w)) {
            return *v;
        }
        let g = self
            .orbit
            .first_descent(w)
            .expect("non-identity element has a descent");
        let wp = self.orbit.trans(w, g);
        let xs = self.orbit.trans(x, g);
        let xp = if self.length(xs) < self.length(x) { xs } else { x };
        let ans = self.bruhat_leq(xp, wp);
        self.bruhat_memo.insert((x, w), ans);
        ans
    }
}

/// One Hasse edge of a coset poset, labelled by a simple root node when the
/// upper element is the lower times that simple reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub lo: u32,
    pub hi: u32,
    pub label: Option<Node>,
}

/// The parabolic quotient ^S W of minimal-length coset representatives of
/// W_S \ W, graded by length, with a memoized Bruhat oracle.
pub struct CosetPoset {
    rs: Arc<RootSystem>,
    diagram: MarkedDiagram,
    orbit: Orbit,
    opts: GenOptions,
    relation: OnceLock<Option<BitRel>>,
    covers: OnceLock<Vec<Cover>>,
    bruhat_memo: DashMap<(u32, u32), bool>,
}

impl CosetPoset {
    pub fn generate(diagram: &MarkedDiagram) -> Result<Self> {
        Self::generate_with(diagram, GenOptions::default())
    }

    pub fn generate_with(diagram: &MarkedDiagram, opts: GenOptions) -> Result<Self> {
        let rs = Arc::new(RootSystem::build(diagram)?);
        let mut start = Weight::zero(rs.rank());
        for n in diagram.crossed() {
            start.0[rs.pos_of(*n)] = 1;
        }
        let orbit = Orbit::generate(&rs, &start, opts.max_elements)?;
        Ok(CosetPoset {
            rs,
            diagram: diagram.clone(),
            orbit,
            opts,
            relation: OnceLock::new(),
            covers: OnceLock::new(),
            bruhat_memo: DashMap::new(),
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn diagram(&self) -> &MarkedDiagram {
        &self.diagram
    }

    pub fn size(&self) -> usize {
        self.orbit.len()
    }

    pub fn rank(&self) -> usize {
        self.orbit.rank
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn length(&self, id: u32) -> u32 {
        self.orbit.length(id)
    }

    pub fn key(&self, id: u32) -> &[i64] {
        self.orbit.key(id)
    }

    pub fn trans(&self, id: u32, g: usize) -> u32 {
        self.orbit.trans(id, g)
    }

    pub fn trans_by_node(&self, id: u32, node: Node) -> u32 {
        self.orbit.trans(id, self.rs.pos_of(node))
    }

    pub fn word(&self, id: u32) -> Vec<u8> {
        self.orbit.word(id)
    }

    pub fn max_length(&self) -> u32 {
        (0..self.size() as u32)
            .map(|i| self.length(i))
            .max()
            .unwrap_or(0)
    }

    /// The unique maximal element ^S w.
    pub fn top(&self) -> u32 {
        let max = self.max_length();
        let tops: Vec<u32> = (0..self.size() as u32)
            .filter(|&i| self.length(i) == max)
            .collect();
        assert_eq!(tops.len(), 1, "^S W has a unique maximal element");
        tops[0]
    }

    /// Ids grouped by length.
    pub fn levels(&self) -> Vec<Vec<u32>> {
        let mut levels = vec![Vec::new(); self.max_length() as usize + 1];
        for id in 0..self.size() as u32 {
            levels[self.length(id) as usize].push(id);
        }
        levels
    }

    /// Right descents of w that stay inside ^S W (i.e. the covers w > ws).
    pub fn quotient_descents(&self, id: u32) -> Vec<usize> {
        self.orbit.descents(id)
    }

    /// Generators g with w < w s_g in ^S W.
    pub fn quotient_ascents(&self, id: u32) -> Vec<usize> {
        self.orbit.ascents(id)
    }

    fn relation(&self) -> Option<&BitRel> {
        self.relation
            .get_or_init(|| {
                if self.size() > self.opts.relation_threshold {
                    return None;
                }
                let n = self.size();
                let mut rel = BitRel::new(n);
                rel.set(0, 0);
                // BFS order is nondecreasing in length, and the descent
                // target of an element appears earlier.
                for w in 1..n as u32 {
                    let g = self
                        .orbit
                        .first_descent(w)
                        .expect("non-identity element has a descent");
                    let wp = self.orbit.trans(w, g);
                    debug_assert!(wp < w);
                    for x in 0..n as u32 {
                        let xs = self.orbit.trans(x, g);
                        let xp = if self.orbit.length(xs) < self.orbit.length(x) {
                            xs
                        } else {
                            x
                        };
                        if rel.get(wp, xp) {
                            rel.set(w, x);
                        }
                    }
                    debug_assert!(rel.get(w, w));
                }
                Some(rel)
            })
            .as_ref()
    }

    /// Bruhat order via the recursion on a quotient descent of w, with the
    /// projected comparison element. Materialized below the size threshold,
    /// memoized above it.
    pub fn bruhat_leq(&self, x: u32, w: u32) -> bool {
        if x == w || x == 0 {
            return true;
        }
        if self.length(x) >= self.length(w) {
            return false;
        }
        if let Some(rel) = self.relation() {
            return rel.get(w, x);
        }
        self.bruhat_leq_memo(x, w)
    }

    fn bruhat_leq_memo(&self, x: u32, w: u32) -> bool {
        if x == w || x == 0 {
            return true;
        }
        if self.length(x) >= self.length(w) {
            return false;
        }
        if let Some(v) = self.bruhat_memo.get(&(x, w)) {
            return *v;
        }
        let g = self.orbit.first_descent(w).expect("descent exists");
        let wp = self.orbit.trans(w, g);
        let xs = self.orbit.trans(x, g);
        let xp = if self.orbit.length(xs) < self.orbit.length(x) {
            xs
        } else {
            x
        };
        let ans = self.bruhat_leq_memo(xp, wp);
        self.bruhat_memo.insert((x, w), ans);
        ans
    }

    /// All x <= w, computed from the materialized relation or by walking a
    /// descent chain when the poset is large.
    pub fn lower_ideal(&self, w: u32) -> Vec<u32> {
        if let Some(rel) = self.relation() {
            return (0..self.size() as u32).filter(|&x| rel.get(w, x)).collect();
        }
        // chain of descents w = c_0 > c_1 > ... > e
        let mut chain = vec![w];
        let mut cur = w;
        while cur != 0 {
            let g = self.orbit.first_descent(cur).expect("descent exists");
            cur = self.orbit.trans(cur, g);
            chain.push(cur);
        }
        chain.reverse();
        let n = self.size();
        let mut ideal = vec![false; n];
        ideal[0] = true;
        for win in chain.windows(2) {
            let (lo, hi) = (win[0], win[1]);
            let g = self
                .orbit
                .first_descent(hi)
                .expect("descent exists");
            debug_assert_eq!(self.orbit.trans(hi, g), lo);
            let mut next = vec![false; n];
            for x in 0..n as u32 {
                let xs = self.orbit.trans(x, g);
                let xp = if self.orbit.length(xs) < self.orbit.length(x) {
                    xs
                } else {
                    x
                };
                next[x as usize] = ideal[xp as usize];
            }
            ideal = next;
        }
        (0..n as u32).filter(|&x| ideal[x as usize]).collect()
    }

    /// Hasse edges with simple-root labels where the cover is a right
    /// multiplication.
    pub fn covers(&self) -> &[Cover] {
        self.covers.get_or_init(|| {
            let levels = self.levels();
            let mut out = Vec::new();
            for pair in levels.windows(2) {
                for &hi in &pair[1] {
                    for &lo in &pair[0] {
                        if self.bruhat_leq(lo, hi) {
                            let label = (0..self.rank())
                                .find(|&g| self.orbit.trans(lo, g) == hi)
                                .map(|g| self.rs.node_at(g));
                            out.push(Cover { lo, hi, label });
                        }
                    }
                }
            }
            out.sort_by_key(|c| (c.lo, c.hi));
            out
        })
    }

    /// Elements covered by w.
    pub fn covered_by(&self, w: u32) -> Vec<u32> {
        self.covers()
            .iter()
            .filter(|c| c.hi == w)
            .map(|c| c.lo)
            .collect()
    }

    /// Simple roots appearing in a reduced word of w (independent of the
    /// choice of word).
    pub fn support(&self, w: u32) -> BTreeSet<Node> {
        self.word(w)
            .into_iter()
            .map(|g| self.rs.node_at(g as usize))
            .collect()
    }

    /// The maximal element of ^{S cap I} W_I viewed inside ^S W, found by
    /// greedy ascent through transitions restricted to I. phi(empty) = e.
    pub fn phi(&self, i_set: &BTreeSet<Node>) -> u32 {
        let gens: Vec<usize> = i_set.iter().map(|n| self.rs.pos_of(*n)).collect();
        let mut cur = self.identity();
        loop {
            match gens.iter().find(|&&g| self.orbit.key(cur)[g] > 0) {
                Some(&g) => cur = self.orbit.trans(cur, g),
                None => return cur,
            }
        }
    }

    /// Members of ^S W^J: w with w < w s_alpha in ^S W for every alpha in J.
    pub fn singular_members(&self, j_set: &BTreeSet<Node>) -> Vec<u32> {
        let gens: Vec<usize> = j_set.iter().map(|n| self.rs.pos_of(*n)).collect();
        let mut out: Vec<u32> = (0..self.size() as u32)
            .filter(|&w| gens.iter().all(|&g| self.orbit.key(w)[g] > 0))
            .collect();
        out.sort_by_key(|&w| (self.length(w), w));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LieType;

    fn poset(t: LieType, crossed: &[Node]) -> CosetPoset {
        let d = MarkedDiagram::standard(t, crossed, &[]).unwrap();
        CosetPoset::generate(&d).unwrap()
    }

    fn group(t: LieType) -> WeylGroup {
        let d = MarkedDiagram::standard(t, &[], &[]).unwrap();
        let rs = Arc::new(RootSystem::build(&d).unwrap());
        WeylGroup::generate(rs, &GenOptions::default()).unwrap()
    }

    #[test]
    fn full_group_orders() {
        assert_eq!(group(LieType::A(3)).order(), 24);
        assert_eq!(group(LieType::B(3)).order(), 48);
        assert_eq!(group(LieType::D(4)).order(), 192);
        assert_eq!(group(LieType::F4).order(), 1152);
        assert_eq!(group(LieType::G2).order(), 12);
    }

    #[test]
    fn quotient_sizes() {
        // |^S W| = |W| / |W_S|
        assert_eq!(poset(LieType::A(3), &[1, 3]).size(), 12); // 24/2
        assert_eq!(poset(LieType::A(3), &[2]).size(), 6); // 24/4
        assert_eq!(poset(LieType::F4, &[1]).size(), 24); // 1152/48
        assert_eq!(poset(LieType::D(4), &[3, 4]).size(), 32); // 192/6
    }

    #[test]
    fn lagrangian_quotient_lengths() {
        // (F4, C3): 24 elements over lengths 0..15 with widths
        // 1,1,1,1,2,2,2,2,2,2,2,2,1,1,1,1
        let p = poset(LieType::F4, &[1]);
        let widths: Vec<usize> = p.levels().iter().map(|l| l.len()).collect();
        assert_eq!(widths, vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1]);
        assert_eq!(p.max_length(), 15);
    }

    #[test]
    fn word_lengths_match_inversions() {
        // length = number of positive roots sent negative
        let p = poset(LieType::B(3), &[1]);
        let rs = p.root_system().clone();
        for id in 0..p.size() as u32 {
            let word = p.word(id);
            assert_eq!(word.len() as u32, p.length(id));
            let mut inversions = 0;
            for beta in rs.positive_roots() {
                // w(beta): apply the reflections right-to-left
                let mut c = beta.coords.clone();
                for &g in word.iter().rev() {
                    let pairing: i64 =
                        (0..rs.rank()).map(|j| c[j] * rs.cartan_entry(g as usize, j)).sum();
                    let mut r = c.clone();
                    r[g as usize] -= pairing;
                    c = r;
                }
                if c.iter().any(|&x| x < 0) {
                    inversions += 1;
                }
            }
            assert_eq!(inversions, p.length(id));
        }
    }

    #[test]
    fn group_products_and_inverses() {
        let g = group(LieType::B(3));
        for a in (0..g.order() as u32).step_by(7) {
            let inv = g.inverse(a);
            assert_eq!(g.mult(a, inv), g.identity());
            assert_eq!(g.mult(inv, a), g.identity());
        }
        // positions 1,2 carry the double bond: a B2 parabolic
        let gens: BTreeSet<usize> = [1, 2].into();
        let w_s = g.longest_in(&gens);
        assert_eq!(g.length(w_s), 4);
        assert_eq!(g.subgroup_elements(&gens).len(), 8);
    }

    /// Brute-force subword test: the lower Bruhat ideal of w is the set of
    /// products of all subsequences of a fixed reduced word for w.
    fn brute_ideal(g: &WeylGroup, w: u32) -> BTreeSet<u32> {
        let word = g.word(w);
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<u8> = word
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &g)| g)
                .collect();
            out.insert(g.product_with_word(g.identity(), &sub));
        }
        out
    }

    #[test]
    fn bruhat_matches_subword_criterion_on_a3_and_b3() {
        for t in [LieType::A(3), LieType::B(3)] {
            let g = group(t);
            for w in 0..g.order() as u32 {
                let ideal = brute_ideal(&g, w);
                for x in 0..g.order() as u32 {
                    assert_eq!(
                        g.bruhat_leq(x, w),
                        ideal.contains(&x),
                        "{t}: x={x} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_bruhat_agrees_with_full_group() {
        // the quotient order is induced: compare against the full group via
        // the word embedding
        for (t, crossed) in [(LieType::A(3), vec![2]), (LieType::B(3), vec![1])] {
            let p = poset(t, &crossed);
            let g = group(t);
            let embed: Vec<u32> = (0..p.size() as u32)
                .map(|i| g.product_with_word(g.identity(), &p.word(i)))
                .collect();
            for x in 0..p.size() as u32 {
                for w in 0..p.size() as u32 {
                    assert_eq!(
                        p.bruhat_leq(x, w),
                        g.bruhat_leq(embed[x as usize], embed[w as usize]),
                        "{t:?} x={x} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn a3_box_poset_is_the_young_lattice_of_a_2x2_box() {
        // (A3, crossed {2}): 6 elements, diamond: unique elements at lengths
        // 0,1,3,4 and two incomparable elements at length 2
        let p = poset(LieType::A(3), &[2]);
        let widths: Vec<usize> = p.levels().iter().map(|l| l.len()).collect();
        assert_eq!(widths, vec![1, 1, 2, 1, 1]);
        let mid = &p.levels()[2];
        assert!(!p.bruhat_leq(mid[0], mid[1]));
        assert!(!p.bruhat_leq(mid[1], mid[0]));
        // covers: 6 edges forming the diamond
        assert_eq!(p.covers().len(), 6);
    }

    #[test]
    fn phi_examples() {
        let p = poset(LieType::F4, &[1]);
        // phi(empty) = e
        assert_eq!(p.phi(&BTreeSet::new()), p.identity());
        // phi(full diagram) = top (length 15)
        let full: BTreeSet<Node> = [1, 2, 3, 4].into();
        assert_eq!(p.length(p.phi(&full)), 15);
        assert_eq!(p.phi(&full), p.top());
        // phi({a}) = s_a, length 1
        let a: BTreeSet<Node> = [1].into();
        assert_eq!(p.length(p.phi(&a)), 1);
    }

    #[test]
    fn support_examples() {
        let p = poset(LieType::F4, &[1]);
        assert!(p.support(p.identity()).is_empty());
        let full: BTreeSet<Node> = [1, 2, 3, 4].into();
        assert_eq!(p.support(p.top()), full);
    }

    #[test]
    fn f4_singular_subposet_is_a_6_chain() {
        let p = poset(LieType::F4, &[1]);
        let j: BTreeSet<Node> = [4].into();
        let members = p.singular_members(&j);
        assert_eq!(members.len(), 6);
        let lengths: Vec<u32> = members.iter().map(|&w| p.length(w)).collect();
        assert_eq!(lengths, vec![3, 4, 5, 9, 10, 11]);
        // totally ordered
        for i in 0..members.len() {
            for k in i + 1..members.len() {
                assert!(p.bruhat_leq(members[i], members[k]));
            }
        }
        // J = {} gives back the whole poset
        assert_eq!(p.singular_members(&BTreeSet::new()).len(), 24);
    }

    #[test]
    fn b_chain_singular_subposet_empty_for_two_singular_roots() {
        let p = poset(LieType::B(4), &[1]);
        assert_eq!(p.size(), 8);
        let j: BTreeSet<Node> = [2, 4].into();
        assert!(p.singular_members(&j).is_empty());
    }

    #[test]
    fn poset_cap_is_enforced() {
        let d = MarkedDiagram::standard(LieType::D(5), &[1, 2, 3, 4, 5], &[]).unwrap();
        let opts = GenOptions {
            max_elements: 100,
            ..Default::default()
        };
        match CosetPoset::generate_with(&d, opts) {
            Err(Error::PosetTooLarge { cap }) => assert_eq!(cap, 100),
            other => panic!("expected size-cap error, got {:?}", other.map(|p| p.size())),
        }
    }
}
