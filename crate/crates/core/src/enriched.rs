//! Enriched structures: validation, enumeration, bond descriptions and specializations.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bond, MultiGraph};
use crate::label::{EdgeLabel, EdgeSet};
use crate::preorder::Preorder;

/// Default edge bound for exhaustive enumeration.
pub const DEFAULT_EDGE_GUARD: usize = 8;

/// A graph together with an enriched structure on its edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawEnriched", into = "RawEnriched")]
pub struct EnrichedGraph {
    graph: MultiGraph,
    preorder: Preorder,
}

#[derive(Serialize, Deserialize)]
struct RawEnriched {
    graph: MultiGraph,
    preorder: Preorder,
}

impl TryFrom<RawEnriched> for EnrichedGraph {
    type Error = Error;
    fn try_from(r: RawEnriched) -> Result<Self> {
        EnrichedGraph::new(r.graph, r.preorder)
    }
}

impl From<EnrichedGraph> for RawEnriched {
    fn from(e: EnrichedGraph) -> Self {
        RawEnriched {
            graph: e.graph,
            preorder: e.preorder,
        }
    }
}

impl EnrichedGraph {
    pub fn new(graph: MultiGraph, preorder: Preorder) -> Result<Self> {
        if !is_enriched(&graph, &preorder)? {
            return Err(Error::NotEnriched(preorder.describe()));
        }
        Ok(EnrichedGraph { graph, preorder })
    }

    pub(crate) fn new_unchecked(graph: MultiGraph, preorder: Preorder) -> Self {
        debug_assert!(is_enriched(&graph, &preorder).unwrap_or(false));
        EnrichedGraph { graph, preorder }
    }

    /// Builds the preorder from relation pairs and validates.
    pub fn from_pairs(graph: MultiGraph, pairs: &[(&str, &str)]) -> Result<Self> {
        let pairs: Vec<(EdgeLabel, EdgeLabel)> = pairs
            .iter()
            .map(|(a, b)| (EdgeLabel::new(a), EdgeLabel::new(b)))
            .collect();
        let p = Preorder::from_relations(graph.edge_list(), &pairs)?;
        Self::new(graph, p)
    }

    /// All edges of each block equivalent, blocks incomparable.
    pub fn canonical(graph: MultiGraph) -> Self {
        let parts: Vec<Preorder> = graph
            .edge_blocks()
            .iter()
            .map(|b| Preorder::total(b.edge_list()).expect("small block"))
            .collect();
        let p = Preorder::disjoint_union(&parts).expect("blocks partition the edges");
        Self::new_unchecked(graph, p)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn preorder(&self) -> &Preorder {
        &self.preorder
    }

    pub fn rank(&self) -> usize {
        self.preorder.rank()
    }

    /// The preorder is a partial order.
    pub fn is_generic(&self) -> bool {
        self.preorder.is_partial_order()
    }

    /// `(Γ/S, p|)` for a lower set `S`.
    pub fn contract_lower_set(&self, s: &EdgeSet) -> Result<EnrichedGraph> {
        if !self.preorder.is_lower_set(s)? {
            return Err(Error::InvalidSpecialization(format!(
                "{} is not a lower set",
                set_name(s)
            )));
        }
        let g = self.graph.contract(s)?;
        let p = self.preorder.restrict(&g.edge_labels())?;
        Ok(Self::new_unchecked(g, p))
    }
}

pub(crate) fn set_name(s: &EdgeSet) -> String {
    let parts: Vec<&str> = s.iter().map(|e| e.as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Recursive check of the enriched-graph conditions.
pub fn is_enriched(g: &MultiGraph, p: &Preorder) -> Result<bool> {
    if p.ground_set() != g.edge_labels() {
        return Err(Error::GroundMismatch);
    }
    Ok(check(g, p))
}

fn check(g: &MultiGraph, p: &Preorder) -> bool {
    if p.len() <= 1 {
        return true;
    }
    let blocks = g.edge_blocks();
    if blocks.len() > 1 {
        let edge_sets: Vec<EdgeSet> = blocks.iter().map(MultiGraph::edge_labels).collect();
        for (i, a) in edge_sets.iter().enumerate() {
            for b in &edge_sets[i + 1..] {
                if a.iter().any(|x| b.iter().any(|y| p.comparable(x, y))) {
                    return false;
                }
            }
        }
        return blocks
            .iter()
            .zip(&edge_sets)
            .all(|(b, es)| check(b, &p.restrict(es).expect("subset")));
    }
    // a class lying below every edge
    let all = p.ground_set();
    let Some(bottom) = p.ground().iter().find(|e| all.iter().all(|f| p.leq(e, f))) else {
        return false;
    };
    let class = p.class_of(bottom).expect("in ground");
    let rest: EdgeSet = all.difference(&class).cloned().collect();
    if rest.is_empty() {
        return true;
    }
    let h = g.contract(&class).expect("edges of g");
    check(&h, &p.restrict(&rest).expect("subset"))
}

/// Memoized enumeration keyed by the (labelled) graph; contractions recur often.
#[derive(Default)]
pub struct EnrichedCache {
    memo: HashMap<MultiGraph, Arc<Vec<Preorder>>>,
    guard: usize,
}

impl EnrichedCache {
    pub fn new(guard: usize) -> Self {
        EnrichedCache {
            memo: HashMap::new(),
            guard,
        }
    }

    /// All enriched structures on `g`, sorted.
    pub fn structures(&mut self, g: &MultiGraph) -> Result<Arc<Vec<Preorder>>> {
        if g.num_edges() > self.guard {
            return Err(Error::guard("enriched enumeration edges", g.num_edges(), self.guard));
        }
        if let Some(hit) = self.memo.get(g) {
            return Ok(hit.clone());
        }
        let mut out = self.compute(g)?;
        out.sort();
        let out = Arc::new(out);
        self.memo.insert(g.clone(), out.clone());
        Ok(out)
    }

    fn compute(&mut self, g: &MultiGraph) -> Result<Vec<Preorder>> {
        let edges = g.edge_list();
        if edges.len() <= 1 {
            return Ok(vec![Preorder::discrete(edges)?]);
        }
        let blocks = g.edge_blocks();
        if blocks.len() > 1 {
            let mut partial: Vec<Vec<Preorder>> = vec![Vec::new()];
            for b in &blocks {
                let options = self.structures(b)?;
                partial = partial
                    .iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |q| {
                            let mut v = prefix.clone();
                            v.push(q.clone());
                            v
                        })
                    })
                    .collect();
            }
            return partial
                .iter()
                .map(|parts| Preorder::disjoint_union(parts))
                .collect();
        }
        // choose the bottom class S, then an enriched structure on Γ/S
        let n = edges.len();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << n) {
            let s: EdgeSet = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| edges[i].clone())
                .collect();
            let h = g.contract(&s)?;
            let index: Vec<usize> = h
                .edge_list()
                .iter()
                .map(|e| edges.binary_search(e).expect("subset"))
                .collect();
            for q in self.structures(&h)?.iter() {
                let mut rows = vec![0u64; n];
                for i in 0..n {
                    if mask >> i & 1 == 1 {
                        rows[i] = (1u64 << n) - 1;
                    }
                }
                for (a, &ia) in index.iter().enumerate() {
                    for (b, &ib) in index.iter().enumerate() {
                        if q.leq(&q.ground()[a], &q.ground()[b]) {
                            rows[ia] |= 1 << ib;
                        }
                    }
                }
                out.push(Preorder::from_rows(edges.clone(), rows));
            }
        }
        Ok(out)
    }
}

/// Every enriched structure on `g`, each once, sorted.
pub fn enumerate_enriched(g: &MultiGraph) -> Result<Vec<EnrichedGraph>> {
    enumerate_enriched_with_guard(g, DEFAULT_EDGE_GUARD)
}

pub fn enumerate_enriched_with_guard(g: &MultiGraph, guard: usize) -> Result<Vec<EnrichedGraph>> {
    let mut cache = EnrichedCache::new(guard);
    Ok(cache
        .structures(g)?
        .iter()
        .map(|p| EnrichedGraph::new_unchecked(g.clone(), p.clone()))
        .collect())
}

/// The generic (partial-order) structures on `g`.
pub fn enumerate_generic(g: &MultiGraph) -> Result<Vec<EnrichedGraph>> {
    Ok(enumerate_enriched(g)?
        .into_iter()
        .filter(EnrichedGraph::is_generic)
        .collect())
}

/// The preorder generated by `e ≼ e'` for `e ∈ T_B`, `e' ∈ B`, over all bonds.
/// `t` is keyed by the edge set of each bond.
pub fn from_bond_collection(
    g: &MultiGraph,
    t: &BTreeMap<EdgeSet, EdgeSet>,
) -> Result<EnrichedGraph> {
    let bonds = g.bonds()?;
    for key in t.keys() {
        if !bonds.iter().any(|b| &b.edges == key) {
            return Err(Error::InvalidBondSubset(format!(
                "{} is not a bond",
                set_name(key)
            )));
        }
    }
    let mut pairs = Vec::new();
    for b in &bonds {
        let tb = t.get(&b.edges).ok_or_else(|| Error::MissingBond(b.name()))?;
        if tb.is_empty() || !tb.is_subset(&b.edges) {
            return Err(Error::InvalidBondSubset(format!(
                "{} for bond {}",
                set_name(tb),
                b.name()
            )));
        }
        for e in tb {
            for f in &b.edges {
                pairs.push((e.clone(), f.clone()));
            }
        }
    }
    let p = Preorder::from_relations(g.edge_list(), &pairs)?;
    EnrichedGraph::new(g.clone(), p)
}

/// Edges of `b` lying below every edge of `b`.
pub fn bond_minima(eg: &EnrichedGraph, b: &Bond) -> Result<EdgeSet> {
    match eg.graph.bond_from_side(&b.side) {
        Ok(real) if real == *b => {}
        _ => return Err(Error::NotABond),
    }
    Ok(b.edges
        .iter()
        .filter(|e| b.edges.iter().all(|f| eg.preorder.leq(e, f)))
        .cloned()
        .collect())
}

/// `(Γ,p) ⇝ (Γ/S, p')`, recorded with the contracted lower set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Specialization {
    pub source: EnrichedGraph,
    pub target: EnrichedGraph,
    pub contracted: EdgeSet,
}

impl Specialization {
    /// Checks the three specialization conditions.
    pub fn new(source: EnrichedGraph, target: EnrichedGraph, contracted: EdgeSet) -> Result<Self> {
        if source.graph.contract(&contracted)? != target.graph {
            return Err(Error::InvalidSpecialization(
                "target graph is not the contraction".into(),
            ));
        }
        if !source.preorder.is_lower_set(&contracted)? {
            return Err(Error::InvalidSpecialization(format!(
                "{} is not a lower set",
                set_name(&contracted)
            )));
        }
        let restricted = source.preorder.restrict(&target.graph.edge_labels())?;
        if !restricted.is_refined_by(&target.preorder) {
            return Err(Error::InvalidSpecialization(
                "target preorder drops a relation of the source".into(),
            ));
        }
        Ok(Specialization {
            source,
            target,
            contracted,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.contracted.is_empty() && self.source.preorder == self.target.preorder
    }
}

/// All specializations of `eg`, identity included, ordered by contracted set
/// size then target.
pub fn specializations_of(eg: &EnrichedGraph) -> Result<Vec<Specialization>> {
    let mut cache = EnrichedCache::new(DEFAULT_EDGE_GUARD);
    specializations_with(eg, &mut cache)
}

pub(crate) fn specializations_with(
    eg: &EnrichedGraph,
    cache: &mut EnrichedCache,
) -> Result<Vec<Specialization>> {
    let n = eg.graph.num_edges();
    if n > cache.guard {
        return Err(Error::guard("specialization edges", n, cache.guard));
    }
    let mut out = Vec::new();
    for s in eg.preorder.lower_sets() {
        let h = eg.graph.contract(&s)?;
        let restricted = eg.preorder.restrict(&h.edge_labels())?;
        for q in cache.structures(&h)?.iter() {
            if restricted.is_refined_by(q) {
                out.push(Specialization {
                    source: eg.clone(),
                    target: EnrichedGraph::new_unchecked(h.clone(), q.clone()),
                    contracted: s.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Merges two consecutive classes, given by representatives, and closes.
pub fn simple_specialization(
    eg: &EnrichedGraph,
    c1: &EdgeLabel,
    c2: &EdgeLabel,
) -> Result<EnrichedGraph> {
    let p = &eg.preorder;
    let (lo, hi) = if p.consecutive(c1, c2)? {
        (c1, c2)
    } else if p.consecutive(c2, c1)? {
        (c2, c1)
    } else {
        return Err(Error::NotConsecutive(c1.clone(), c2.clone()));
    };
    let merged = p.with_relations(&[(hi.clone(), lo.clone())])?;
    EnrichedGraph::new(eg.graph.clone(), merged)
}

/// For each class of the target, the source class of its `p`-least edge.
/// Pairs are listed in target class order.
pub fn class_inclusion(sp: &Specialization) -> Result<Vec<(EdgeSet, EdgeSet)>> {
    let p = &sp.source.preorder;
    sp.target
        .preorder
        .classes()
        .into_iter()
        .map(|c| {
            let least = c
                .iter()
                .find(|e| c.iter().all(|f| p.leq(e, f)))
                .ok_or_else(|| {
                    Error::InvalidSpecialization(format!("class {} has no least edge", set_name(&c)))
                })?;
            Ok((c.clone(), p.class_of(least)?))
        })
        .collect()
}

/// The structures on `g` with simple specializations between them, in DOT.
pub fn specialization_dot(g: &MultiGraph) -> Result<String> {
    let all = enumerate_enriched(g)?;
    let index: BTreeMap<&Preorder, usize> =
        all.iter().enumerate().map(|(i, e)| (&e.preorder, i)).collect();
    let mut s = String::from("digraph specializations {\n");
    for (i, e) in all.iter().enumerate() {
        let _ = writeln!(s, "  p{i} [label=\"{}\"];", e.preorder.describe());
    }
    for (i, e) in all.iter().enumerate() {
        for (a, b) in e.preorder.quotient().hasse {
            let q = e.preorder.quotient();
            let lo = q.classes[a].first().expect("nonempty");
            let hi = q.classes[b].first().expect("nonempty");
            let t = simple_specialization(e, lo, hi)?;
            let _ = writeln!(s, "  p{i} -> p{};", index[&t.preorder]);
        }
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::label::edge_set;

    fn l(s: &str) -> EdgeLabel {
        EdgeLabel::new(s)
    }

    pub(crate) fn p1() -> EnrichedGraph {
        EnrichedGraph::from_pairs(
            corpus::figure1(),
            &[("e1", "e2"), ("e1", "e3"), ("e3", "e4")],
        )
        .unwrap()
    }

    pub(crate) fn p2() -> EnrichedGraph {
        EnrichedGraph::from_pairs(
            corpus::figure1(),
            &[("e3", "e1"), ("e1", "e2"), ("e1", "e4")],
        )
        .unwrap()
    }

    pub(crate) fn p3() -> EnrichedGraph {
        EnrichedGraph::from_pairs(
            corpus::figure1(),
            &[("e1", "e3"), ("e3", "e1"), ("e3", "e2"), ("e3", "e4")],
        )
        .unwrap()
    }

    #[test]
    fn figure1_examples_are_enriched() {
        assert!(p1().is_generic());
        assert!(p2().is_generic());
        assert!(!p3().is_generic());
        assert_eq!(p3().rank(), 3);
    }

    #[test]
    fn discrete_theta_is_not_enriched() {
        let g = corpus::theta(3);
        let p = Preorder::discrete(g.edge_list()).unwrap();
        assert!(!is_enriched(&g, &p).unwrap());
        let single = corpus::single_edge();
        let p = Preorder::discrete(single.edge_list()).unwrap();
        assert!(is_enriched(&single, &p).unwrap());
    }

    #[test]
    fn ground_mismatch_is_an_error() {
        let p = Preorder::discrete([l("zz")]).unwrap();
        assert_eq!(is_enriched(&corpus::single_edge(), &p), Err(Error::GroundMismatch));
    }

    #[test]
    fn counts_on_triangle_and_theta() {
        let c3 = enumerate_enriched(&corpus::triangle()).unwrap();
        assert_eq!(c3.len(), 13);
        assert_eq!(c3.iter().filter(|e| e.is_generic()).count(), 6);
        let th = enumerate_enriched(&corpus::theta(3)).unwrap();
        assert_eq!(th.len(), 7);
        assert_eq!(th.iter().filter(|e| e.is_generic()).count(), 3);
        assert_eq!(enumerate_generic(&corpus::dumbbell()).unwrap().len(), 1);
    }

    #[test]
    fn generic_structures_on_cycles_are_total_orders() {
        for n in 2..=5 {
            let gen = enumerate_generic(&corpus::cycle(n)).unwrap();
            assert_eq!(gen.len(), (1..=n).product::<usize>());
            assert!(gen.iter().all(|e| e.preorder().is_total()));
        }
    }

    #[test]
    fn enumeration_respects_the_guard() {
        let err = enumerate_enriched_with_guard(&corpus::cycle(4), 3).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn figure1_enumeration_contains_the_three_examples() {
        let all = enumerate_enriched(&corpus::figure1()).unwrap();
        for want in [p1(), p2(), p3()] {
            assert!(all.contains(&want));
        }
    }

    #[test]
    fn bond_collection_examples() {
        let theta = corpus::theta(3);
        let t = BTreeMap::from([(edge_set(["a", "b", "c"]), edge_set(["a"]))]);
        let eg = from_bond_collection(&theta, &t).unwrap();
        assert_eq!(
            eg,
            EnrichedGraph::from_pairs(theta.clone(), &[("a", "b"), ("a", "c")]).unwrap()
        );

        let tri = corpus::triangle();
        let whole: BTreeMap<EdgeSet, EdgeSet> = tri
            .bonds()
            .unwrap()
            .into_iter()
            .map(|b| (b.edges.clone(), b.edges))
            .collect();
        let eg = from_bond_collection(&tri, &whole).unwrap();
        assert_eq!(eg.rank(), 1);

        let fig = corpus::figure1();
        let t = BTreeMap::from([
            (edge_set(["e3", "e4"]), edge_set(["e3"])),
            (edge_set(["e1", "e2", "e3"]), edge_set(["e3"])),
            (edge_set(["e1", "e2", "e4"]), edge_set(["e1"])),
        ]);
        assert_eq!(from_bond_collection(&fig, &t).unwrap(), p2());
    }

    #[test]
    fn bond_collection_errors() {
        let fig = corpus::figure1();
        let t = BTreeMap::from([(edge_set(["e3", "e4"]), edge_set(["e3"]))]);
        assert!(matches!(from_bond_collection(&fig, &t), Err(Error::MissingBond(_))));
        let theta = corpus::theta(3);
        let t = BTreeMap::from([(edge_set(["a", "b", "c"]), EdgeSet::new())]);
        assert!(matches!(
            from_bond_collection(&theta, &t),
            Err(Error::InvalidBondSubset(_))
        ));
    }

    #[test]
    fn bond_minima_examples() {
        let fig = corpus::figure1();
        let bonds = fig.bonds().unwrap();
        let find = |es: EdgeSet| bonds.iter().find(|b| b.edges == es).unwrap().clone();
        assert_eq!(
            bond_minima(&p1(), &find(edge_set(["e3", "e4"]))).unwrap(),
            edge_set(["e3"])
        );
        assert_eq!(
            bond_minima(&p1(), &find(edge_set(["e1", "e2", "e3"]))).unwrap(),
            edge_set(["e1"])
        );
        let canonical = EnrichedGraph::canonical(fig.clone());
        for b in &bonds {
            assert_eq!(bond_minima(&canonical, b).unwrap(), b.edges);
        }
        let fake = Bond {
            edges: edge_set(["e1"]),
            side: bonds[0].side.clone(),
        };
        assert_eq!(bond_minima(&p1(), &fake), Err(Error::NotABond));
    }

    #[test]
    fn specializations_of_single_edge_and_theta() {
        let e = EnrichedGraph::canonical(corpus::single_edge());
        let sp = specializations_of(&e).unwrap();
        assert_eq!(sp.len(), 2);
        assert!(sp[0].is_identity());
        assert_eq!(sp[1].target.graph().num_edges(), 0);

        let theta = corpus::theta(3);
        let generic = EnrichedGraph::from_pairs(theta.clone(), &[("a", "b"), ("a", "c")]).unwrap();
        assert_eq!(specializations_of(&generic).unwrap().len(), 8);
        let canonical = EnrichedGraph::canonical(theta);
        let sp = specializations_of(&canonical).unwrap();
        assert_eq!(sp.len(), 2);
    }

    #[test]
    fn specialization_constructor_checks_conditions() {
        let src = p1();
        let tgt = src.contract_lower_set(&edge_set(["e1"])).unwrap();
        assert!(Specialization::new(src.clone(), tgt.clone(), edge_set(["e1"])).is_ok());
        assert!(src.contract_lower_set(&edge_set(["e3"])).is_err());
        let wrong = EnrichedGraph::canonical(corpus::figure1());
        assert!(Specialization::new(src, wrong, EdgeSet::new()).is_ok());
        assert!(Specialization::new(p3(), p1(), EdgeSet::new()).is_err());
    }

    #[test]
    fn simple_specialization_examples() {
        let merged = simple_specialization(&p1(), &l("e3"), &l("e4")).unwrap();
        assert!(merged.preorder().equiv(&l("e3"), &l("e4")));
        assert_eq!(merged.rank(), 3);

        let merged = simple_specialization(&p2(), &l("e3"), &l("e1")).unwrap();
        assert!(merged.preorder().equiv(&l("e3"), &l("e1")));
        assert!(merged.preorder().less(&l("e1"), &l("e2")));
        assert!(merged.preorder().less(&l("e1"), &l("e4")));

        let chain = EnrichedGraph::from_pairs(corpus::cycle(2), &[("a", "b")]).unwrap();
        let merged = simple_specialization(&chain, &l("a"), &l("b")).unwrap();
        assert_eq!(merged.rank(), 1);

        assert_eq!(
            simple_specialization(&p1(), &l("e1"), &l("e4")),
            Err(Error::NotConsecutive(l("e1"), l("e4")))
        );
    }

    #[test]
    fn class_inclusion_examples() {
        let e = p1();
        let id = Specialization::new(e.clone(), e.clone(), EdgeSet::new()).unwrap();
        for (t, s) in class_inclusion(&id).unwrap() {
            assert_eq!(t, s);
        }

        let merged = simple_specialization(&e, &l("e1"), &l("e3")).unwrap();
        let sp = Specialization::new(e.clone(), merged, EdgeSet::new()).unwrap();
        let map = class_inclusion(&sp).unwrap();
        assert!(map.contains(&(edge_set(["e1", "e3"]), edge_set(["e1"]))));

        let theta = corpus::theta(3);
        let generic = EnrichedGraph::from_pairs(theta, &[("a", "b"), ("a", "c")]).unwrap();
        let tgt = generic.contract_lower_set(&edge_set(["a"])).unwrap();
        let sp = Specialization::new(generic, tgt, edge_set(["a"])).unwrap();
        assert_eq!(
            class_inclusion(&sp).unwrap(),
            vec![
                (edge_set(["b"]), edge_set(["b"])),
                (edge_set(["c"]), edge_set(["c"]))
            ]
        );
    }

    #[test]
    fn json_round_trip_validates() {
        let s = serde_json::to_string(&p2()).unwrap();
        let back: EnrichedGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p2());
        let mut raw: serde_json::Value = serde_json::from_str(&s).unwrap();
        raw["preorder"]["pairs"] = serde_json::json!([]);
        assert!(serde_json::from_value::<EnrichedGraph>(raw).is_err());
    }

    #[test]
    fn specialization_dot_has_one_node_per_structure() {
        let dot = specialization_dot(&corpus::theta(3)).unwrap();
        assert_eq!(dot.matches("[label=").count(), 7);
    }
}
