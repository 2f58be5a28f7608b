//! Finite preorders on edge-label sets.
//!
//! The relation is stored as one bitmask row per ground element: bit `j` of
//! row `i` is set when `ground[i] ≼ ground[j]`. Ground sets are sorted, so two
//! preorders on the same labels are equal exactly when their rows agree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{EdgeLabel, EdgeSet};

/// Row width; ground sets are far smaller in practice.
pub const MAX_GROUND: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preorder {
    ground: Vec<EdgeLabel>,
    rows: Vec<u64>,
}

/// Equivalence classes with the induced order and its covering relation.
/// Class indices follow the order of `classes`, which is by smallest label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientPoset {
    pub classes: Vec<EdgeSet>,
    /// Strict relations `(i, j)` meaning class `i` lies below class `j`.
    pub order: Vec<(usize, usize)>,
    /// Covering pairs of `order`.
    pub hasse: Vec<(usize, usize)>,
}

impl QuotientPoset {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, e: &EdgeLabel) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(e))
    }

    /// For each class, the class directly below it in the Hasse forest, if any.
    /// Meaningful when every class has at most one lower cover.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.classes.len()];
        for &(lo, hi) in &self.hasse {
            parent[hi] = Some(lo);
        }
        parent
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Preorder {
    fn check_size(n: usize) -> Result<()> {
        if n > MAX_GROUND {
            return Err(Error::guard("preorder ground size", n, MAX_GROUND));
        }
        Ok(())
    }

    fn sorted_ground<I: IntoIterator<Item = EdgeLabel>>(ground: I) -> Result<Vec<EdgeLabel>> {
        let set: BTreeSet<EdgeLabel> = ground.into_iter().collect();
        Self::check_size(set.len())?;
        Ok(set.into_iter().collect())
    }

    /// Only reflexive relations.
    pub fn discrete<I: IntoIterator<Item = EdgeLabel>>(ground: I) -> Result<Self> {
        let ground = Self::sorted_ground(ground)?;
        let rows = (0..ground.len()).map(|i| 1u64 << i).collect();
        Ok(Preorder { ground, rows })
    }

    /// Every element related to every other.
    pub fn total<I: IntoIterator<Item = EdgeLabel>>(ground: I) -> Result<Self> {
        let ground = Self::sorted_ground(ground)?;
        let all = full_mask(ground.len());
        Ok(Preorder {
            rows: vec![all; ground.len()],
            ground,
        })
    }

    /// Smallest preorder on `ground` containing every `(a, b)` as `a ≼ b`.
    pub fn from_relations<I>(ground: I, pairs: &[(EdgeLabel, EdgeLabel)]) -> Result<Self>
    where
        I: IntoIterator<Item = EdgeLabel>,
    {
        let mut p = Self::discrete(ground)?;
        for (a, b) in pairs {
            let i = p.index(a)?;
            let j = p.index(b)?;
            p.rows[i] |= 1 << j;
        }
        p.close();
        Ok(p)
    }

    /// Builds from raw rows and applies reflexive-transitive closure.
    pub(crate) fn from_rows(ground: Vec<EdgeLabel>, rows: Vec<u64>) -> Self {
        debug_assert!(ground.windows(2).all(|w| w[0] < w[1]));
        let mut p = Preorder { ground, rows };
        p.close();
        p
    }

    fn close(&mut self) {
        let n = self.ground.len();
        for i in 0..n {
            self.rows[i] |= 1 << i;
        }
        // Warshall on bit rows
        for k in 0..n {
            let rk = self.rows[k];
            for i in 0..n {
                if self.rows[i] >> k & 1 == 1 {
                    self.rows[i] |= rk;
                }
            }
        }
    }

    pub fn ground(&self) -> &[EdgeLabel] {
        &self.ground
    }

    pub fn ground_set(&self) -> EdgeSet {
        self.ground.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn index(&self, e: &EdgeLabel) -> Result<usize> {
        self.ground
            .binary_search(e)
            .map_err(|_| Error::UnknownEdge(e.clone()))
    }

    pub(crate) fn mask(&self, s: &EdgeSet) -> Result<u64> {
        s.iter().try_fold(0u64, |m, e| Ok(m | 1 << self.index(e)?))
    }

    pub(crate) fn set_of(&self, mask: u64) -> EdgeSet {
        bits(mask).map(|i| self.ground[i].clone()).collect()
    }

    /// `a ≼ b`. Unknown labels are never related.
    pub fn leq(&self, a: &EdgeLabel, b: &EdgeLabel) -> bool {
        match (self.index(a), self.index(b)) {
            (Ok(i), Ok(j)) => self.rows[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// `a ≼ b` and `b ≼ a`.
    pub fn equiv(&self, a: &EdgeLabel, b: &EdgeLabel) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// `a ≼ b` but not `b ≼ a`.
    pub fn less(&self, a: &EdgeLabel, b: &EdgeLabel) -> bool {
        self.leq(a, b) && !self.leq(b, a)
    }

    pub fn comparable(&self, a: &EdgeLabel, b: &EdgeLabel) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub(crate) fn up_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub(crate) fn down_mask(&self, i: usize) -> u64 {
        (0..self.len())
            .filter(|&k| self.rows[k] >> i & 1 == 1)
            .fold(0, |m, k| m | 1 << k)
    }

    fn class_mask(&self, i: usize) -> u64 {
        self.up_mask(i) & self.down_mask(i)
    }

    /// Antisymmetric, i.e. every class is a singleton.
    pub fn is_partial_order(&self) -> bool {
        (0..self.len()).all(|i| self.class_mask(i) == 1 << i)
    }

    /// Any two elements comparable.
    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| self.rows[i] >> j & 1 == 1 || self.rows[j] >> i & 1 == 1)
        })
    }

    /// Equivalence classes, ordered by smallest label.
    pub fn classes(&self) -> Vec<EdgeSet> {
        self.class_masks().into_iter().map(|m| self.set_of(m)).collect()
    }

    pub(crate) fn class_masks(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen >> i & 1 == 1 {
                continue;
            }
            let c = self.class_mask(i);
            seen |= c;
            out.push(c);
        }
        out
    }

    pub fn class_of(&self, e: &EdgeLabel) -> Result<EdgeSet> {
        Ok(self.set_of(self.class_mask(self.index(e)?)))
    }

    /// Number of equivalence classes.
    pub fn rank(&self) -> usize {
        self.class_masks().len()
    }

    pub fn quotient(&self) -> QuotientPoset {
        let masks = self.class_masks();
        let reps: Vec<usize> = masks.iter().map(|m| m.trailing_zeros() as usize).collect();
        let k = masks.len();
        let below = |a: usize, b: usize| a != b && self.rows[reps[a]] >> reps[b] & 1 == 1;
        let mut order = Vec::new();
        let mut hasse = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if below(a, b) {
                    order.push((a, b));
                    if !(0..k).any(|c| below(a, c) && below(c, b)) {
                        hasse.push((a, b));
                    }
                }
            }
        }
        QuotientPoset {
            classes: masks.iter().map(|&m| self.set_of(m)).collect(),
            order,
            hasse,
        }
    }

    /// Whether the classes of `a` and `b` are distinct with nothing strictly between.
    pub fn consecutive(&self, a: &EdgeLabel, b: &EdgeLabel) -> Result<bool> {
        let i = self.index(a)?;
        let j = self.index(b)?;
        if !self.less(a, b) {
            return Ok(false);
        }
        let between = (0..self.len()).any(|k| {
            self.rows[i] >> k & 1 == 1
                && self.rows[k] >> j & 1 == 1
                && self.rows[k] >> i & 1 == 0
                && self.rows[j] >> k & 1 == 0
        });
        Ok(!between)
    }

    pub(crate) fn is_lower_mask(&self, m: u64) -> bool {
        bits(m).all(|i| self.down_mask(i) & !m == 0)
    }

    pub(crate) fn is_upper_mask(&self, m: u64) -> bool {
        bits(m).all(|i| self.rows[i] & !m == 0)
    }

    /// Down-closed: with `e` it contains everything below `e`.
    pub fn is_lower_set(&self, s: &EdgeSet) -> Result<bool> {
        Ok(self.is_lower_mask(self.mask(s)?))
    }

    /// Up-closed: with `e` it contains everything above `e`.
    pub fn is_upper_set(&self, s: &EdgeSet) -> Result<bool> {
        Ok(self.is_upper_mask(self.mask(s)?))
    }

    /// `{e' : e ≼ e'}`.
    pub fn up_closure(&self, e: &EdgeLabel) -> Result<EdgeSet> {
        Ok(self.set_of(self.rows[self.index(e)?]))
    }

    /// `{e' : e' ≼ e}`.
    pub fn down_closure(&self, e: &EdgeLabel) -> Result<EdgeSet> {
        Ok(self.set_of(self.down_mask(self.index(e)?)))
    }

    /// Principal up-closures, one per class, in class order.
    pub fn irreducible_upper_sets(&self) -> Vec<EdgeSet> {
        self.class_masks()
            .into_iter()
            .map(|c| self.set_of(self.rows[c.trailing_zeros() as usize]))
            .collect()
    }

    /// All lower sets as masks, by brute force over subsets of the ground set.
    pub(crate) fn lower_masks(&self) -> Vec<u64> {
        // enumerate down-closed unions of classes
        let classes = self.class_masks();
        let mut out = Vec::new();
        for pick in 0u64..(1u64 << classes.len()) {
            let m = bits(pick).fold(0, |m, c| m | classes[c]);
            if self.is_lower_mask(m) {
                out.push(m);
            }
        }
        out.sort_by_key(|m| (m.count_ones(), *m));
        out
    }

    /// All lower sets, smallest first.
    pub fn lower_sets(&self) -> Vec<EdgeSet> {
        self.lower_masks().into_iter().map(|m| self.set_of(m)).collect()
    }

    /// All upper sets, smallest first.
    pub fn upper_sets(&self) -> Vec<EdgeSet> {
        let all = full_mask(self.len());
        let mut out: Vec<u64> = self.lower_masks().into_iter().map(|m| all & !m).collect();
        out.sort_by_key(|m| (m.count_ones(), *m));
        out.into_iter().map(|m| self.set_of(m)).collect()
    }

    /// `p|_S`.
    pub fn restrict(&self, s: &EdgeSet) -> Result<Preorder> {
        let idx: Vec<usize> = s.iter().map(|e| self.index(e)).collect::<Result<_>>()?;
        let rows = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|(_, &j)| self.rows[i] >> j & 1 == 1)
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        Ok(Preorder {
            ground: s.iter().cloned().collect(),
            rows,
        })
    }

    /// Disjoint union of preorders on disjoint ground sets; no cross relations.
    pub fn disjoint_union(parts: &[Preorder]) -> Result<Preorder> {
        let ground = Self::sorted_ground(parts.iter().flat_map(|p| p.ground.iter().cloned()))?;
        let total: usize = parts.iter().map(Preorder::len).sum();
        if total != ground.len() {
            return Err(Error::GroundMismatch);
        }
        let pos = |e: &EdgeLabel| ground.binary_search(e).expect("present");
        let mut rows = vec![0u64; ground.len()];
        for p in parts {
            for (i, e) in p.ground.iter().enumerate() {
                rows[pos(e)] = bits(p.rows[i]).fold(0, |m, j| m | 1 << pos(&p.ground[j]));
            }
        }
        Ok(Preorder { ground, rows })
    }

    /// Same preorder with extra relations added, then closed.
    pub fn with_relations(&self, pairs: &[(EdgeLabel, EdgeLabel)]) -> Result<Preorder> {
        let mut rows = self.rows.clone();
        for (a, b) in pairs {
            rows[self.index(a)?] |= 1 << self.index(b)?;
        }
        Ok(Preorder::from_rows(self.ground.clone(), rows))
    }

    /// Whether every relation of `self` holds in `other`; both on the same ground.
    pub fn is_refined_by(&self, other: &Preorder) -> bool {
        self.ground == other.ground
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Transports the relation along an edge bijection defined on the ground set.
    pub fn relabel(&self, map: &BTreeMap<EdgeLabel, EdgeLabel>) -> Result<Preorder> {
        let images: Vec<EdgeLabel> = self
            .ground
            .iter()
            .map(|e| map.get(e).cloned().ok_or_else(|| Error::UnknownEdge(e.clone())))
            .collect::<Result<_>>()?;
        let pairs: Vec<(EdgeLabel, EdgeLabel)> = self
            .relation_pairs()
            .into_iter()
            .map(|(a, b)| (map[&a].clone(), map[&b].clone()))
            .collect();
        let p = Preorder::from_relations(images.iter().cloned(), &pairs)?;
        if p.len() != self.len() {
            return Err(Error::GroundMismatch);
        }
        Ok(p)
    }

    /// All non-reflexive pairs `a ≼ b`.
    pub fn relation_pairs(&self) -> Vec<(EdgeLabel, EdgeLabel)> {
        let mut out = Vec::new();
        for (i, a) in self.ground.iter().enumerate() {
            for j in bits(self.rows[i]) {
                if i != j {
                    out.push((a.clone(), self.ground[j].clone()));
                }
            }
        }
        out
    }

    /// Compact human form, e.g. `e1~e3 < e2, e1~e3 < e4`: covering relations
    /// between classes, then unrelated classes on their own.
    pub fn describe(&self) -> String {
        let q = self.quotient();
        let name = |c: &EdgeSet| {
            c.iter().map(|e| e.as_str()).collect::<Vec<_>>().join("~")
        };
        let mut parts: Vec<String> = q
            .hasse
            .iter()
            .map(|&(a, b)| format!("{} < {}", name(&q.classes[a]), name(&q.classes[b])))
            .collect();
        for (i, c) in q.classes.iter().enumerate() {
            if !q.hasse.iter().any(|&(a, b)| a == i || b == i) {
                parts.push(name(c));
            }
        }
        parts.join(", ")
    }

    /// Reads the [`describe`](Self::describe) form on the given ground set:
    /// comma-separated chains `A < B < ...` whose members are classes
    /// `e1~e2`. `<=` is accepted for `<`; unmentioned labels stay alone.
    pub fn parse<I: IntoIterator<Item = EdgeLabel>>(ground: I, text: &str) -> Result<Preorder> {
        let ground = Self::sorted_ground(ground)?;
        let mut pairs = Vec::new();
        let known = |e: &str| -> Result<EdgeLabel> {
            let l = EdgeLabel::new(e);
            if ground.binary_search(&l).is_ok() {
                Ok(l)
            } else {
                Err(Error::UnknownEdge(l))
            }
        };
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let mut prev: Option<Vec<EdgeLabel>> = None;
            for class in part.replace("<=", "<").split('<') {
                let members: Vec<EdgeLabel> = class
                    .split('~')
                    .map(|e| e.trim())
                    .map(|e| {
                        if e.is_empty() {
                            Err(Error::Parse(format!("empty label in `{part}`")))
                        } else {
                            known(e)
                        }
                    })
                    .collect::<Result<_>>()?;
                for a in &members {
                    for b in &members {
                        pairs.push((a.clone(), b.clone()));
                    }
                }
                if let Some(lower) = &prev {
                    for a in lower {
                        for b in &members {
                            pairs.push((a.clone(), b.clone()));
                        }
                    }
                }
                prev = Some(members);
            }
        }
        Preorder::from_relations(ground, &pairs)
    }

    /// Hasse diagram of the classes in DOT.
    pub fn to_dot(&self) -> String {
        let q = self.quotient();
        let mut s = String::from("digraph hasse {\n");
        for (i, c) in q.classes.iter().enumerate() {
            let label: Vec<&str> = c.iter().map(|e| e.as_str()).collect();
            let _ = writeln!(s, "  c{i} [label=\"{}\"];", label.join(","));
        }
        for (a, b) in &q.hasse {
            let _ = writeln!(s, "  c{a} -> c{b};");
        }
        s.push_str("}\n");
        s
    }
}

impl std::fmt::Debug for Preorder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Preorder[{}]", self.describe())
    }
}

#[derive(Serialize, Deserialize)]
struct PreorderJson {
    ground: Vec<EdgeLabel>,
    pairs: Vec<(EdgeLabel, EdgeLabel)>,
}

impl Serialize for Preorder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PreorderJson {
            ground: self.ground.clone(),
            pairs: self.relation_pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Preorder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PreorderJson::deserialize(d)?;
        Preorder::from_relations(raw.ground, &raw.pairs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::edge_set;
    use proptest::prelude::*;

    #[test]
    fn parse_round_trips_describe() {
        let ground: Vec<EdgeLabel> = ["a", "b", "c", "d"].iter().map(|s| l(s)).collect();
        let p = Preorder::parse(ground.clone(), "a~b < c, a~b < d").unwrap();
        assert!(p.equiv(&l("a"), &l("b")));
        assert!(p.less(&l("a"), &l("c")));
        assert!(!p.comparable(&l("c"), &l("d")));
        assert_eq!(Preorder::parse(ground.clone(), &p.describe()).unwrap(), p);
        let chain = Preorder::parse(ground.clone(), "a <= b < c").unwrap();
        assert!(chain.less(&l("a"), &l("c")));
        assert_eq!(Preorder::parse(ground.clone(), "").unwrap(), Preorder::discrete(ground.clone()).unwrap());
        assert!(matches!(Preorder::parse(ground.clone(), "a < z"), Err(Error::UnknownEdge(_))));
        assert!(matches!(Preorder::parse(ground, "a < "), Err(Error::Parse(_))));
    }

    fn l(s: &str) -> EdgeLabel {
        EdgeLabel::new(s)
    }

    fn rel(ground: &[&str], pairs: &[(&str, &str)]) -> Preorder {
        let pairs: Vec<_> = pairs.iter().map(|(a, b)| (l(a), l(b))).collect();
        Preorder::from_relations(ground.iter().map(|s| l(s)), &pairs).unwrap()
    }

    fn p1() -> Preorder {
        rel(
            &["e1", "e2", "e3", "e4"],
            &[("e1", "e2"), ("e1", "e3"), ("e3", "e4")],
        )
    }

    #[test]
    fn closure_constructor() {
        let d = rel(&["a", "b"], &[]);
        assert!(d.is_partial_order() && d.rank() == 2);
        let c = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(c.leq(&l("a"), &l("c")));
        let e = rel(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(e.equiv(&l("a"), &l("b")));
        assert_eq!(e.rank(), 1);
        let err = Preorder::from_relations([l("a")], &[(l("a"), l("z"))]);
        assert_eq!(err, Err(Error::UnknownEdge(l("z"))));
    }

    #[test]
    fn quotient_of_p1_has_four_classes() {
        let q = p1().quotient();
        assert_eq!(q.rank(), 4);
        let named: Vec<(EdgeSet, EdgeSet)> = q
            .hasse
            .iter()
            .map(|&(a, b)| (q.classes[a].clone(), q.classes[b].clone()))
            .collect();
        assert_eq!(
            named,
            vec![
                (edge_set(["e1"]), edge_set(["e2"])),
                (edge_set(["e1"]), edge_set(["e3"])),
                (edge_set(["e3"]), edge_set(["e4"])),
            ]
        );
    }

    #[test]
    fn quotient_of_p3_has_rank_three() {
        let p3 = rel(
            &["e1", "e2", "e3", "e4"],
            &[("e1", "e3"), ("e3", "e1"), ("e1", "e2"), ("e1", "e4")],
        );
        let q = p3.quotient();
        assert_eq!(q.rank(), 3);
        assert_eq!(q.classes[0], edge_set(["e1", "e3"]));
        let discrete = rel(&["a", "b", "c"], &[]).quotient();
        assert_eq!(discrete.rank(), 3);
        assert!(discrete.hasse.is_empty());
    }

    #[test]
    fn lower_and_upper_sets() {
        let p = p1();
        assert!(p.is_lower_set(&edge_set(["e1"])).unwrap());
        assert!(p.is_upper_set(&edge_set(["e4"])).unwrap());
        assert!(!p.is_lower_set(&edge_set(["e4"])).unwrap());
        for s in [EdgeSet::new(), p.ground_set()] {
            assert!(p.is_lower_set(&s).unwrap() && p.is_upper_set(&s).unwrap());
        }
    }

    #[test]
    fn irreducible_upper_sets_examples() {
        let chain = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let mut got = chain.irreducible_upper_sets();
        got.sort();
        let mut want = vec![edge_set(["c"]), edge_set(["b", "c"]), edge_set(["a", "b", "c"])];
        want.sort();
        assert_eq!(got, want);

        let vee = rel(&["a", "b", "c"], &[("a", "b"), ("a", "c")]);
        let mut got = vee.irreducible_upper_sets();
        got.sort();
        let mut want = vec![edge_set(["b"]), edge_set(["c"]), edge_set(["a", "b", "c"])];
        want.sort();
        assert_eq!(got, want);

        let d = rel(&["a", "b"], &[]);
        assert_eq!(d.irreducible_upper_sets(), vec![edge_set(["a"]), edge_set(["b"])]);
    }

    #[test]
    fn restriction_examples() {
        let p = p1();
        assert_eq!(p.restrict(&p.ground_set()).unwrap(), p);
        let r = p.restrict(&edge_set(["e3", "e4"])).unwrap();
        assert!(r.less(&l("e3"), &l("e4")));
        assert!(p.restrict(&EdgeSet::new()).unwrap().is_empty());
    }

    #[test]
    fn consecutive_classes() {
        let p = p1();
        assert!(p.consecutive(&l("e1"), &l("e3")).unwrap());
        assert!(!p.consecutive(&l("e1"), &l("e4")).unwrap());
        assert!(!p.consecutive(&l("e2"), &l("e1")).unwrap());
    }

    #[test]
    fn json_round_trip_closes_relations() {
        let json = r#"{"ground":["a","b","c"],"pairs":[["a","b"],["b","c"]]}"#;
        let p: Preorder = serde_json::from_str(json).unwrap();
        assert!(p.leq(&l("a"), &l("c")));
        let back: Preorder = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn dot_lists_classes_and_covers() {
        let dot = p1().to_dot();
        assert!(dot.contains("c0 -> c1"));
        assert!(dot.starts_with("digraph"));
    }

    fn arb_preorder() -> impl Strategy<Value = Preorder> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..10).prop_map(move |pairs| {
                let ground: Vec<EdgeLabel> = (0..n).map(|i| l(&format!("x{i}"))).collect();
                let pairs: Vec<_> = pairs
                    .into_iter()
                    .map(|(a, b)| (ground[a].clone(), ground[b].clone()))
                    .collect();
                Preorder::from_relations(ground.clone(), &pairs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn lower_upper_duality(p in arb_preorder(), pick in any::<u64>()) {
            let m = pick & full_mask(p.len());
            let s = p.set_of(m);
            let c = p.set_of(full_mask(p.len()) & !m);
            prop_assert_eq!(p.is_lower_set(&s).unwrap(), p.is_upper_set(&c).unwrap());
        }

        #[test]
        fn irreducible_upper_sets_match_brute_force(p in arb_preorder()) {
            // irreducible: nonempty upper set that is not a union of two proper upper subsets
            let uppers: Vec<EdgeSet> = p.upper_sets();
            let mut brute: Vec<EdgeSet> = uppers
                .iter()
                .filter(|u| !u.is_empty())
                .filter(|u| {
                    let proper: Vec<&EdgeSet> = uppers
                        .iter()
                        .filter(|v| v.is_subset(u) && v.len() < u.len())
                        .collect();
                    !proper.iter().any(|a| {
                        proper
                            .iter()
                            .any(|b| a.union(b).cloned().collect::<EdgeSet>() == **u)
                    })
                })
                .cloned()
                .collect();
            brute.sort();
            let mut got = p.irreducible_upper_sets();
            got.sort();
            prop_assert_eq!(got, brute);
            // and every upper set is a union of irreducible ones
            for u in &uppers {
                let union: EdgeSet = p
                    .irreducible_upper_sets()
                    .into_iter()
                    .filter(|t| t.is_subset(u))
                    .flatten()
                    .collect();
                prop_assert_eq!(&union, u);
            }
        }

        #[test]
        fn hasse_reachability_reconstructs_order(p in arb_preorder()) {
            let q = p.quotient();
            let k = q.rank();
            let mut reach = vec![vec![false; k]; k];
            for &(a, b) in &q.hasse {
                reach[a][b] = true;
            }
            for m in 0..k {
                for a in 0..k {
                    for b in 0..k {
                        if reach[a][m] && reach[m][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
            for a in 0..k {
                for b in 0..k {
                    prop_assert_eq!(reach[a][b], q.order.contains(&(a, b)));
                }
            }
            for (ci, c) in q.classes.iter().enumerate() {
                for (di, d) in q.classes.iter().enumerate() {
                    for x in c {
                        for y in d {
                            prop_assert_eq!(p.leq(x, y), ci == di || reach[ci][di]);
                        }
                    }
                }
            }
        }

        #[test]
        fn rank_splits_over_a_lower_set(p in arb_preorder(), pick in any::<usize>()) {
            let lowers = p.lower_sets();
            let s = &lowers[pick % lowers.len()];
            let rest: EdgeSet = p.ground_set().difference(s).cloned().collect();
            let inside = p.classes().iter().filter(|c| c.is_subset(s)).count();
            prop_assert_eq!(p.restrict(&rest).unwrap().rank() + inside, p.rank());
        }
    }
}
