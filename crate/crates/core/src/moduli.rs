//! Cells of the moduli space of enriched tropical curves of small genus.
//!
//! Cells are isomorphism classes of stable weighted enriched graphs. The
//! space itself is represented only by cells, automorphism groups, the
//! specialization poset between cells and the integral gluing maps.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enriched::{self, EnrichedCache, EnrichedGraph, DEFAULT_EDGE_GUARD};
use crate::error::{Error, Result};
use crate::fan;
use crate::graph::{self, EdgePermutation, MultiGraph, WeightedGraph};
use crate::label::{EdgeLabel, EdgeSet, VertexId};
use crate::linalg::Vector;
use crate::preorder::Preorder;

pub const MAX_GENUS: usize = 3;

fn check_genus(g: usize) -> Result<()> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::guard("genus (supported range 1..=3)", g, MAX_GENUS));
    }
    Ok(())
}

/// `(Γ, p, w)` with `(Γ, p)` enriched.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedEnrichedGraph {
    pub graph: WeightedGraph,
    pub preorder: Preorder,
}

impl WeightedEnrichedGraph {
    pub fn new(graph: WeightedGraph, preorder: Preorder) -> Result<Self> {
        EnrichedGraph::new(graph.graph().clone(), preorder.clone())?;
        Ok(WeightedEnrichedGraph { graph, preorder })
    }

    pub fn enriched(&self) -> EnrichedGraph {
        EnrichedGraph::new_unchecked(self.graph.graph().clone(), self.preorder.clone())
    }

    pub fn rank(&self) -> usize {
        self.preorder.rank()
    }
}

/// Automorphisms of `(Γ, w)` whose edge action preserves the preorder.
pub fn aut_enriched(weg: &WeightedEnrichedGraph) -> Result<Vec<EdgePermutation>> {
    let mut out = Vec::new();
    for a in graph::automorphisms(&weg.graph)? {
        if weg.preorder.relabel(&a.edge_map)? == weg.preorder {
            out.push(a);
        }
    }
    Ok(out)
}

type CanonKey = (Vec<u32>, Vec<usize>);

/// Smallest (weights, multiplicity upper triangle) encoding over all vertex orders.
fn canonical_key(n: usize, weights: &[u32], mult: &[Vec<usize>]) -> CanonKey {
    let mut best: Option<CanonKey> = None;
    for perm in graph::permutations(n) {
        let w: Vec<u32> = perm.iter().map(|&i| weights[i]).collect();
        let mut m = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                m.push(mult[perm[i]][perm[j]]);
            }
        }
        let key = (w, m);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("at least one permutation")
}

fn graph_from_key(n: usize, key: &CanonKey) -> WeightedGraph {
    let vid = |i: usize| VertexId::new(format!("v{}", i + 1));
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            for _ in 0..key.1[k] {
                edges.push((EdgeLabel::new(format!("e{}", edges.len() + 1)), vid(i), vid(j)));
            }
            k += 1;
        }
    }
    let g = MultiGraph::new((0..n).map(vid), edges).expect("well-formed");
    let weights = (0..n).map(|i| (vid(i), key.0[i])).collect();
    WeightedGraph::new(g, weights).expect("weights on every vertex")
}

fn multisets(k: usize, choices: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, left: usize, choices: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for c in start..choices {
            cur.push(c);
            rec(c, left - 1, choices, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, choices, &mut Vec::new(), &mut out);
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Stable weighted graphs of genus `g`, one per isomorphism class, ordered by
/// decreasing edge count, then vertex count, then canonical encoding.
/// Vertices are `v1, v2, ...` and edges `e1, e2, ...`.
pub fn enumerate_stable_weighted_graphs(g: usize) -> Result<Vec<WeightedGraph>> {
    check_genus(g)?;
    let max_v = (2 * g).saturating_sub(2).max(1);
    let max_e = 3 * g - 3;
    let mut found: BTreeMap<(usize, usize, CanonKey), WeightedGraph> = BTreeMap::new();
    for n in 1..=max_v {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        for k in n - 1..=max_e {
            let b1 = k + 1 - n;
            if b1 > g {
                continue;
            }
            let wsum = u32::try_from(g - b1).expect("small genus");
            for pick in multisets(k, pairs.len()) {
                let mut mult = vec![vec![0usize; n]; n];
                let mut valence = vec![0usize; n];
                for &c in &pick {
                    let (i, j) = pairs[c];
                    mult[i][j] += 1;
                    if i != j {
                        mult[j][i] += 1;
                    }
                    valence[i] += 1;
                    valence[j] += 1;
                }
                if !connected(n, &mult) {
                    continue;
                }
                for w in compositions(wsum, n) {
                    if (0..n).any(|v| w[v] == 0 && valence[v] < 3) {
                        continue;
                    }
                    let key = canonical_key(n, &w, &mult);
                    found
                        .entry((usize::MAX - k, usize::MAX - n, key.clone()))
                        .or_insert_with(|| graph_from_key(n, &key));
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

fn connected(n: usize, mult: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if !seen[u] && mult[v][u] > 0 {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// One cell `K(Γ,p,w) / Aut(Γ,p,w)`.
#[derive(Clone, Debug, Serialize)]
pub struct ModuliCell {
    pub id: usize,
    /// Index of the underlying weighted graph in the cell list's graph table.
    pub graph_index: usize,
    pub representative: WeightedEnrichedGraph,
    pub dim: usize,
    pub genus: usize,
    #[serde(skip)]
    pub aut: Vec<EdgePermutation>,
    pub aut_order: usize,
    /// Cells this one specializes to, excluding itself.
    pub specializes_to: BTreeSet<usize>,
}

/// An integral map from the coordinates of a cell to those of a cell it
/// specializes to, realized by one explicit specialization.
#[derive(Clone, Debug, Serialize)]
pub struct GluingMap {
    pub source: usize,
    pub target: usize,
    pub contracted: EdgeSet,
    /// Rows indexed by target classes, columns by source classes.
    pub projection: Vec<Vector>,
    /// Columns indexed by target classes: each target class sent to the
    /// source class containing its least edge.
    pub inclusion: Vec<Vector>,
}

/// Cells of genus `g` with their specialization data.
#[derive(Clone, Debug, Serialize)]
pub struct ModuliSpace {
    pub genus: usize,
    pub graphs: Vec<WeightedGraph>,
    pub cells: Vec<ModuliCell>,
    pub gluing: Vec<GluingMap>,
    #[serde(skip)]
    lookup: HashMap<(usize, Preorder), usize>,
}

impl ModuliSpace {
    /// Cell of `(Γ,p,w)`; `None` when `(Γ,w)` is not one of the enumerated graphs.
    pub fn cell_of(&self, weg: &WeightedEnrichedGraph) -> Result<Option<usize>> {
        for (gi, rep) in self.graphs.iter().enumerate() {
            if let Some(iso) = graph::find_isomorphism(&weg.graph, rep)? {
                let moved = weg.preorder.relabel(&iso.edge_map)?;
                return Ok(self.lookup.get(&(gi, moved)).copied());
            }
        }
        Ok(None)
    }

    pub fn maximal_cells(&self) -> Vec<&ModuliCell> {
        let top = 3 * self.genus - 3;
        self.cells.iter().filter(|c| c.dim == top).collect()
    }

    /// Covering relations of the specialization order between cells.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in &self.cells {
            for &t in &c.specializes_to {
                let indirect = c
                    .specializes_to
                    .iter()
                    .any(|&m| m != t && self.cells[m].specializes_to.contains(&t));
                if !indirect {
                    out.push((c.id, t));
                }
            }
        }
        out
    }

    /// The cell specialization poset in DOT.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph cells {\n  rankdir=TB;\n");
        for c in &self.cells {
            let w: Vec<String> = c
                .representative
                .graph
                .weights()
                .iter()
                .filter(|(_, &w)| w > 0)
                .map(|(v, w)| format!("{v}:{w}"))
                .collect();
            let _ = writeln!(
                s,
                "  c{} [label=\"#{} dim {} |Aut| {}\\nE={} w={}\\n{}\"];",
                c.id,
                c.id,
                c.dim,
                c.aut_order,
                c.representative.graph.graph().num_edges(),
                if w.is_empty() { "0".to_string() } else { w.join(",") },
                c.representative.preorder.describe()
            );
        }
        for (a, b) in self.hasse() {
            let _ = writeln!(s, "  c{a} -> c{b};");
        }
        s.push_str("}\n");
        s
    }

    /// JSON list of cells with graph, weights, preorder pairs, dimension,
    /// automorphism order and specialization targets.
    pub fn cells_json(&self) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|c| {
                serde_json::json!({
                    "id": c.id,
                    "graph": c.representative.graph.graph(),
                    "weights": c.representative.graph.weights(),
                    "preorder": c.representative.preorder.relation_pairs(),
                    "dim": c.dim,
                    "aut_order": c.aut_order,
                    "specializes_to": c.specializes_to,
                })
            })
            .collect();
        serde_json::Value::Array(cells)
    }
}

/// Every cell of genus `g`, with specialization targets and gluing maps.
pub fn enumerate_cells(g: usize) -> Result<ModuliSpace> {
    let graphs = enumerate_stable_weighted_graphs(g)?;
    let mut cache = EnrichedCache::new(DEFAULT_EDGE_GUARD);
    let mut cells = Vec::new();
    let mut lookup = HashMap::new();
    for (gi, wg) in graphs.iter().enumerate() {
        let auts = graph::automorphisms(wg)?;
        let structures = cache.structures(wg.graph())?;
        let mut assigned: BTreeSet<&Preorder> = BTreeSet::new();
        for p in structures.iter() {
            if assigned.contains(p) {
                continue;
            }
            let id = cells.len();
            let mut stabilizer = Vec::new();
            for a in &auts {
                let q = p.relabel(&a.edge_map)?;
                if q == *p {
                    stabilizer.push(a.clone());
                }
                lookup.insert((gi, q), id);
            }
            for q in structures.iter() {
                if lookup.get(&(gi, q.clone())) == Some(&id) {
                    assigned.insert(q);
                }
            }
            cells.push(ModuliCell {
                id,
                graph_index: gi,
                representative: WeightedEnrichedGraph {
                    graph: wg.clone(),
                    preorder: p.clone(),
                },
                dim: p.rank(),
                genus: g,
                aut_order: stabilizer.len(),
                aut: stabilizer,
                specializes_to: BTreeSet::new(),
            });
        }
    }
    let mut space = ModuliSpace {
        genus: g,
        graphs,
        cells,
        gluing: Vec::new(),
        lookup,
    };
    let mut gluing = Vec::new();
    for id in 0..space.cells.len() {
        let rep = space.cells[id].representative.clone();
        let mut targets = BTreeSet::new();
        for sp in enriched::specializations_with(&rep.enriched(), &mut cache)? {
            if sp.is_identity() {
                continue;
            }
            let wtarget = rep.graph.contract(&sp.contracted)?;
            let target = WeightedEnrichedGraph {
                graph: wtarget,
                preorder: sp.target.preorder().clone(),
            };
            let tid = space
                .cell_of(&target)?
                .ok_or_else(|| Error::InvalidSpecialization("target cell not found".into()))?;
            if targets.insert(tid) {
                gluing.push(gluing_map(&space, id, tid, &sp)?);
            }
        }
        space.cells[id].specializes_to = targets;
    }
    space.gluing = gluing;
    Ok(space)
}

fn gluing_map(
    space: &ModuliSpace,
    source: usize,
    target: usize,
    sp: &enriched::Specialization,
) -> Result<GluingMap> {
    let src_q = sp.source.preorder().quotient();
    let tgt_q = sp.target.preorder().quotient();
    let pairs = enriched::class_inclusion(sp)?;
    // rows follow the target representative's classes, via an isomorphism
    let rep = &space.cells[target].representative;
    let wtarget = space.cells[source].representative.graph.contract(&sp.contracted)?;
    let iso = graph::find_isomorphism(&wtarget, &rep.graph)?
        .ok_or_else(|| Error::InvalidSpecialization("no isomorphism to target".into()))?;
    let moved = sp.target.preorder().relabel(&iso.edge_map)?;
    // the isomorphism may land on another member of the orbit; fix it with a
    // representative automorphism
    let fix = graph::automorphisms(&rep.graph)?
        .into_iter()
        .find(|a| moved.relabel(&a.edge_map).ok().as_ref() == Some(&rep.preorder))
        .ok_or_else(|| Error::InvalidSpecialization("orbit mismatch".into()))?;
    let rep_q = rep.preorder.quotient();
    let k_src = src_q.rank();
    let k_tgt = tgt_q.rank();
    let mut projection = vec![vec![BigInt::zero(); k_src]; k_tgt];
    let mut inclusion = vec![vec![BigInt::zero(); k_tgt]; k_src];
    for (tclass, sclass) in &pairs {
        let e = tclass.first().expect("nonempty");
        let image = fix.apply(iso.apply(e));
        let row = rep_q.class_index(image).expect("edge of the representative");
        let col = src_q.class_index(sclass.first().expect("nonempty")).expect("source class");
        projection[row][col] = BigInt::one();
        inclusion[col][row] = BigInt::one();
    }
    Ok(GluingMap {
        source,
        target,
        contracted: sp.contracted.clone(),
        projection,
        inclusion,
    })
}

/// Codimension-one cell types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CodimOneType {
    /// Weight zero, one 4-valent vertex, the rest 3-valent, generic preorder.
    FourValentVertex,
    /// One 1-valent weight-one vertex, the rest 3-valent of weight zero, generic.
    WeightedLeaf,
    /// 3-regular, weight zero, one merge away from generic.
    SimpleMerge,
    Unclassified,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodimOneCell {
    pub cell: usize,
    pub kind: CodimOneType,
    /// Number of maximal cells whose closure contains this cell.
    pub adjacent_maximal: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub maximal: Vec<usize>,
    pub codim_one: Vec<CodimOneCell>,
}

impl Classification {
    pub fn count(&self, kind: CodimOneType) -> usize {
        self.codim_one.iter().filter(|c| c.kind == kind).count()
    }
}

fn valences(g: &MultiGraph) -> Vec<usize> {
    g.vertices().iter().map(|v| g.valence(v)).collect()
}

/// Maximal cells and codimension-one cells with their type.
pub fn classify_cells(space: &ModuliSpace) -> Classification {
    let top = 3 * space.genus - 3;
    let maximal: Vec<usize> = space.cells.iter().filter(|c| c.dim == top).map(|c| c.id).collect();
    let mut codim_one = Vec::new();
    for c in space.cells.iter().filter(|c| c.dim + 1 == top) {
        let wg = &c.representative.graph;
        let g = wg.graph();
        let val = valences(g);
        let weights: Vec<u32> = g.vertices().iter().map(|v| wg.weight(v)).collect();
        let generic = c.representative.preorder.is_partial_order();
        let all_zero = weights.iter().all(|&w| w == 0);
        let kind = if all_zero && generic && val.iter().filter(|&&v| v == 4).count() == 1
            && val.iter().filter(|&&v| v == 3).count() == val.len() - 1
        {
            CodimOneType::FourValentVertex
        } else if generic
            && val.iter().zip(&weights).filter(|(&v, &w)| v == 1 && w == 1).count() == 1
            && val.iter().zip(&weights).filter(|(&v, &w)| v == 3 && w == 0).count() == val.len() - 1
        {
            CodimOneType::WeightedLeaf
        } else if all_zero && val.iter().all(|&v| v == 3) && c.dim + 1 == g.num_edges() {
            CodimOneType::SimpleMerge
        } else {
            CodimOneType::Unclassified
        };
        let adjacent_maximal = maximal
            .iter()
            .filter(|&&m| space.cells[m].specializes_to.contains(&c.id))
            .count();
        codim_one.push(CodimOneCell {
            cell: c.id,
            kind,
            adjacent_maximal,
        });
    }
    Classification { maximal, codim_one }
}

/// Outcome of lifting sampled points of `R^E_{>0} / Aut(Γ,w)`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BetaReport {
    pub points: usize,
    pub failures: Vec<String>,
}

impl BetaReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The lift of one point: its cell and the orbit of representatives.
#[derive(Clone, Debug, Serialize)]
pub struct Lift {
    pub cell: usize,
    pub preorder: Preorder,
    /// Points of the `Aut(Γ,w)`-orbit lying in the representative cone.
    pub orbit: Vec<Vec<BigRational>>,
}

fn permute_point(
    edges: &[EdgeLabel],
    a: &EdgePermutation,
    x: &[BigRational],
) -> Vec<BigRational> {
    let mut y = vec![BigRational::zero(); x.len()];
    for (i, e) in edges.iter().enumerate() {
        let j = edges.binary_search(a.apply(e)).expect("edge of the graph");
        y[j] = x[i].clone();
    }
    y
}

/// Lifts `x` (coordinates on the sorted edges of graph `graph_index`) to the
/// cells over it. Errors when the lift is not unique.
pub fn lift_point(space: &ModuliSpace, graph_index: usize, x: &[BigRational]) -> Result<Lift> {
    let wg = &space.graphs[graph_index];
    let g = wg.graph();
    let edges = g.edge_list();
    let auts = graph::automorphisms(wg)?;
    let mut cell: Option<usize> = None;
    let mut points: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    for a in &auts {
        let y = permute_point(&edges, a, x);
        let p = fan::locate(g, &y)?;
        let id = space.lookup[&(graph_index, p.preorder().clone())];
        match cell {
            None => cell = Some(id),
            Some(c) if c != id => {
                return Err(Error::InvalidSpecialization(format!(
                    "point lies over cells {c} and {id}"
                )))
            }
            _ => {}
        }
        if p.preorder() == &space.cells[id].representative.preorder {
            points.insert(y);
        }
    }
    let id = cell.expect("identity automorphism");
    let rep = &space.cells[id];
    // all points in the representative cone form one orbit of the stabilizer
    let first = points.first().cloned().expect("the orbit meets the representative cone");
    let orbit: BTreeSet<Vec<BigRational>> = rep
        .aut
        .iter()
        .map(|a| permute_point(&edges, a, &first))
        .collect();
    if orbit != points {
        return Err(Error::InvalidSpecialization(format!(
            "cell {id}: {} lifts form {} orbit points",
            points.len(),
            orbit.len()
        )));
    }
    Ok(Lift {
        cell: id,
        preorder: rep.representative.preorder.clone(),
        orbit: points.into_iter().collect(),
    })
}

/// Positive rational with denominator at most 64.
pub fn random_positive(rng: &mut ChaCha8Rng) -> BigRational {
    let den: i64 = rng.gen_range(1..=64);
    let num: i64 = rng.gen_range(1..=4 * den);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `count` seeded points of `R^n_{>0}` with small-denominator coordinates.
pub fn random_points(seed: u64, n: usize, count: usize) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| random_positive(&mut rng)).collect())
        .collect()
}

/// Samples `samples` points spread over all weighted graphs and checks that
/// each lifts to exactly one cell and one stabilizer orbit.
pub fn beta_check(space: &ModuliSpace, samples: usize, seed: u64) -> BetaReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = BetaReport::default();
    let graphs = space.graphs.len();
    for i in 0..samples {
        let gi = i % graphs;
        let n = space.graphs[gi].graph().num_edges();
        // a coincidence-rich grid point every other sample, to hit small cells
        let x: Vec<BigRational> = if i % 2 == 0 {
            (0..n).map(|_| random_positive(&mut rng)).collect()
        } else {
            (0..n)
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(1..=3))))
                .collect()
        };
        report.points += 1;
        if let Err(e) = lift_point(space, gi, &x) {
            report.failures.push(format!("graph {gi}: {e}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::{int_vec, to_rational};

    #[test]
    fn stable_graph_counts() {
        assert_eq!(enumerate_stable_weighted_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_stable_weighted_graphs(2).unwrap().len(), 7);
        assert_eq!(enumerate_stable_weighted_graphs(3).unwrap().len(), 42);
        assert!(enumerate_stable_weighted_graphs(4).unwrap_err().is_guard());
        assert!(enumerate_stable_weighted_graphs(0).unwrap_err().is_guard());
    }

    #[test]
    fn enumerated_graphs_are_stable_of_the_right_genus() {
        for g in 1..=3 {
            for wg in enumerate_stable_weighted_graphs(g).unwrap() {
                assert_eq!(wg.genus().unwrap(), g);
                assert!(wg.is_stable());
            }
        }
    }

    #[test]
    fn genus2_fixtures_match_the_enumeration() {
        let reps = enumerate_stable_weighted_graphs(2).unwrap();
        for (name, g) in corpus::genus2() {
            let hits = reps
                .iter()
                .filter(|r| graph::find_isomorphism(&g, r).unwrap().is_some())
                .count();
            assert_eq!(hits, 1, "{name}");
        }
    }

    #[test]
    fn genus2_cells() {
        let space = enumerate_cells(2).unwrap();
        assert_eq!(space.cells.len(), 9);
        let max = space.maximal_cells();
        assert_eq!(max.len(), 2);
        assert!(max.iter().all(|c| c.dim == 3));
        let mut orders: Vec<usize> = max.iter().map(|c| c.aut_order).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 2]);
        assert!(space.cells.iter().all(|c| c.dim == c.representative.rank()));
    }

    #[test]
    fn genus2_classification() {
        let space = enumerate_cells(2).unwrap();
        let c = classify_cells(&space);
        assert_eq!(c.maximal.len(), 2);
        assert_eq!(c.count(CodimOneType::FourValentVertex), 1);
        assert_eq!(c.count(CodimOneType::WeightedLeaf), 1);
        assert_eq!(c.count(CodimOneType::SimpleMerge), 1);
        assert_eq!(c.count(CodimOneType::Unclassified), 0);
    }

    #[test]
    fn genus3_codimension_one_adjacency() {
        let space = enumerate_cells(3).unwrap();
        let c = classify_cells(&space);
        assert!(space.maximal_cells().iter().all(|m| m.dim == 6));
        assert_eq!(c.count(CodimOneType::Unclassified), 0);
        for cell in &c.codim_one {
            let range = match cell.kind {
                CodimOneType::FourValentVertex => 1..=3,
                CodimOneType::WeightedLeaf => 1..=1,
                CodimOneType::SimpleMerge => 1..=2,
                CodimOneType::Unclassified => unreachable!(),
            };
            assert!(range.contains(&cell.adjacent_maximal), "{cell:?}");
        }
        assert!(beta_check(&space, 100, 3).ok());
    }

    #[test]
    fn aut_enriched_orders() {
        let theta = WeightedGraph::unweighted(corpus::theta(3));
        let generic = EnrichedGraph::from_pairs(corpus::theta(3), &[("a", "b"), ("a", "c")])
            .unwrap()
            .preorder()
            .clone();
        let weg = WeightedEnrichedGraph::new(theta.clone(), generic).unwrap();
        assert_eq!(aut_enriched(&weg).unwrap().len(), 2);
        let canonical = EnrichedGraph::canonical(corpus::theta(3)).preorder().clone();
        let weg = WeightedEnrichedGraph::new(theta, canonical).unwrap();
        assert_eq!(aut_enriched(&weg).unwrap().len(), 6);
        let dumbbell = WeightedGraph::unweighted(corpus::dumbbell());
        let discrete = Preorder::discrete(corpus::dumbbell().edge_list()).unwrap();
        let weg = WeightedEnrichedGraph::new(dumbbell, discrete).unwrap();
        assert_eq!(aut_enriched(&weg).unwrap().len(), 2);
    }

    #[test]
    fn theta_point_lifts_to_the_generic_cell() {
        let space = enumerate_cells(2).unwrap();
        let gi = space
            .graphs
            .iter()
            .position(|g| {
                graph::find_isomorphism(g, &WeightedGraph::unweighted(corpus::theta(3)))
                    .unwrap()
                    .is_some()
            })
            .unwrap();
        let lift = lift_point(&space, gi, &to_rational(&int_vec(&[1, 2, 4]))).unwrap();
        let cell = &space.cells[lift.cell];
        assert_eq!(cell.dim, 3);
        assert_eq!(cell.aut_order, 2);
        assert_eq!(lift.orbit.len(), 2);

        let lift = lift_point(&space, gi, &to_rational(&int_vec(&[5, 5, 5]))).unwrap();
        assert_eq!(space.cells[lift.cell].dim, 1);
    }

    #[test]
    fn beta_lifts_are_unique_in_genus_two() {
        let space = enumerate_cells(2).unwrap();
        let r = beta_check(&space, 200, 7);
        assert_eq!(r.points, 200);
        assert!(r.ok(), "{:?}", r.failures);
    }

    #[test]
    fn gluing_maps_compose_to_identity() {
        let space = enumerate_cells(2).unwrap();
        assert!(!space.gluing.is_empty());
        for m in &space.gluing {
            let k_src = space.cells[m.source].dim;
            let k_tgt = space.cells[m.target].dim;
            let prod = crate::linalg::mat_mul(&m.projection, &m.inclusion, k_src, k_tgt);
            assert_eq!(prod, crate::linalg::identity(k_tgt));
        }
    }

    #[test]
    fn every_cell_is_below_a_maximal_cell() {
        let space = enumerate_cells(2).unwrap();
        let max: Vec<usize> = space.maximal_cells().iter().map(|c| c.id).collect();
        for c in &space.cells {
            assert!(
                max.contains(&c.id) || max.iter().any(|&m| space.cells[m].specializes_to.contains(&c.id)),
                "cell {}",
                c.id
            );
        }
    }

    #[test]
    fn outputs_are_well_formed() {
        let space = enumerate_cells(2).unwrap();
        let json = space.cells_json();
        assert_eq!(json.as_array().unwrap().len(), 9);
        let dot = space.to_dot();
        assert_eq!(dot.matches("[label=").count(), 9);
    }
}
