//! Labeled multigraphs with loops, their contractions, biconnected blocks and bonds.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{EdgeLabel, EdgeSet, VertexId, VertexSet};

/// Exhaustive bond enumeration walks `2^(|V|-1)` vertex subsets.
pub const BOND_VERTEX_GUARD: usize = 20;
/// Brute-force isomorphism search bound.
pub const AUTOMORPHISM_VERTEX_GUARD: usize = 12;

/// A finite multigraph. Edge endpoints are stored with the smaller id first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiGraph {
    vertices: VertexSet,
    edges: BTreeMap<EdgeLabel, (VertexId, VertexId)>,
}

fn ordered(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if v < u {
        (v, u)
    } else {
        (u, v)
    }
}

/// Tiny union-find over dense indices.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so representatives are minimal ids
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl MultiGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (EdgeLabel, VertexId, VertexId)>,
    {
        let mut vs = VertexSet::new();
        for v in vertices {
            if !vs.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut es = BTreeMap::new();
        for (label, u, v) in edges {
            for end in [&u, &v] {
                if !vs.contains(end) {
                    return Err(Error::UnknownVertex(end.clone()));
                }
            }
            if es.insert(label.clone(), ordered(u, v)).is_some() {
                return Err(Error::DuplicateEdge(label));
            }
        }
        Ok(MultiGraph {
            vertices: vs,
            edges: es,
        })
    }

    /// Builds a graph from `(label, u, v)` triples; the vertex set is the set of endpoints.
    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Result<Self> {
        let vertices: VertexSet = edges
            .iter()
            .flat_map(|(_, u, v)| [VertexId::new(u), VertexId::new(v)])
            .collect();
        Self::new(
            vertices,
            edges
                .iter()
                .map(|(l, u, v)| (EdgeLabel::new(l), VertexId::new(u), VertexId::new(v))),
        )
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in label order with their endpoints.
    pub fn edges(&self) -> impl Iterator<Item = (&EdgeLabel, &VertexId, &VertexId)> {
        self.edges.iter().map(|(l, (u, v))| (l, u, v))
    }

    pub fn edge_labels(&self) -> EdgeSet {
        self.edges.keys().cloned().collect()
    }

    pub fn edge_list(&self) -> Vec<EdgeLabel> {
        self.edges.keys().cloned().collect()
    }

    pub fn has_edge(&self, e: &EdgeLabel) -> bool {
        self.edges.contains_key(e)
    }

    pub fn ends(&self, e: &EdgeLabel) -> Option<(&VertexId, &VertexId)> {
        self.edges.get(e).map(|(u, v)| (u, v))
    }

    pub fn is_loop(&self, e: &EdgeLabel) -> bool {
        self.edges.get(e).is_some_and(|(u, v)| u == v)
    }

    /// Number of edge ends at `v`; a loop contributes two.
    pub fn valence(&self, v: &VertexId) -> usize {
        self.edges
            .values()
            .map(|(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn loop_count(&self, v: &VertexId) -> usize {
        self.edges.values().filter(|(a, b)| a == v && b == v).count()
    }

    /// Number of edges joining `u` and `v` (loops when `u == v`).
    pub fn multiplicity(&self, u: &VertexId, v: &VertexId) -> usize {
        let key = ordered(u.clone(), v.clone());
        self.edges.values().filter(|ends| **ends == key).count()
    }

    /// The subgraph `Γ(V)`: vertices `vs` and every edge with both ends in `vs`.
    pub fn induced(&self, vs: &VertexSet) -> MultiGraph {
        MultiGraph {
            vertices: vs.intersection(&self.vertices).cloned().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(_, (u, v))| vs.contains(u) && vs.contains(v))
                .map(|(l, e)| (l.clone(), e.clone()))
                .collect(),
        }
    }

    /// The subgraph spanned by a set of edges and their endpoints.
    pub fn edge_subgraph(&self, es: &EdgeSet) -> Result<MultiGraph> {
        let mut edges = BTreeMap::new();
        let mut vertices = VertexSet::new();
        for e in es {
            let (u, v) = self.edges.get(e).ok_or_else(|| Error::UnknownEdge(e.clone()))?;
            vertices.insert(u.clone());
            vertices.insert(v.clone());
            edges.insert(e.clone(), (u.clone(), v.clone()));
        }
        Ok(MultiGraph { vertices, edges })
    }

    fn vertex_index(&self) -> BTreeMap<&VertexId, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect()
    }

    /// Connected components as vertex sets, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let idx = self.vertex_index();
        let mut dsu = Dsu::new(self.vertices.len());
        for (u, v) in self.edges.values() {
            dsu.union(idx[u], idx[v]);
        }
        let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            groups.entry(dsu.find(i)).or_default().insert(v.clone());
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// `|E| - |V| + #components`.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + self.connected_components().len() - self.vertices.len()
    }

    /// `Γ/S`. Each class of vertices joined by edges of `s` collapses onto its
    /// smallest id; edges of `s` disappear, the remaining labels are kept.
    pub fn contract(&self, s: &EdgeSet) -> Result<MultiGraph> {
        if s.is_empty() {
            return Ok(self.clone());
        }
        let rep = self.contraction_map(s)?;
        let edges = self
            .edges
            .iter()
            .filter(|(l, _)| !s.contains(*l))
            .map(|(l, (u, v))| (l.clone(), ordered(rep[u].clone(), rep[v].clone())))
            .collect();
        Ok(MultiGraph {
            vertices: rep.values().cloned().collect(),
            edges,
        })
    }

    /// Maps each vertex to its representative in `Γ/S`.
    pub fn contraction_map(&self, s: &EdgeSet) -> Result<BTreeMap<VertexId, VertexId>> {
        let idx = self.vertex_index();
        let mut dsu = Dsu::new(self.vertices.len());
        for e in s {
            let (u, v) = self.edges.get(e).ok_or_else(|| Error::UnknownEdge(e.clone()))?;
            dsu.union(idx[u], idx[v]);
        }
        let verts: Vec<&VertexId> = self.vertices.iter().collect();
        Ok(self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), verts[dsu.find(i)].clone()))
            .collect())
    }

    /// Whether `y` and `z` are joined by a path avoiding `x`.
    fn connected_avoiding(&self, x: &VertexId, y: &VertexId, z: &VertexId) -> bool {
        if y == z {
            return true;
        }
        let mut seen = BTreeSet::from([y]);
        let mut stack = vec![y];
        while let Some(a) = stack.pop() {
            for (u, v) in self.edges.values() {
                let other = if u == a {
                    v
                } else if v == a {
                    u
                } else {
                    continue;
                };
                if other == x || !seen.insert(other) {
                    continue;
                }
                if other == z {
                    return true;
                }
                stack.push(other);
            }
        }
        false
    }

    /// Maximal biconnected subgraphs. Their edge sets partition `E(Γ)`; a loop
    /// with its vertex is a block of its own; isolated vertices give edgeless
    /// blocks. Ordered by smallest edge label, edgeless blocks last.
    pub fn biconnected_components(&self) -> Vec<MultiGraph> {
        let labels: Vec<&EdgeLabel> = self.edges.keys().collect();
        let mut dsu = Dsu::new(labels.len());
        // two non-loop edges meeting at x share a block iff their far ends stay
        // connected once x is removed
        for x in &self.vertices {
            let incident: Vec<(usize, &VertexId)> = labels
                .iter()
                .enumerate()
                .filter_map(|(i, l)| {
                    let (u, v) = &self.edges[*l];
                    if u == v {
                        None
                    } else if u == x {
                        Some((i, v))
                    } else if v == x {
                        Some((i, u))
                    } else {
                        None
                    }
                })
                .collect();
            for (a, &(i, y)) in incident.iter().enumerate() {
                for &(j, z) in &incident[a + 1..] {
                    if dsu.find(i) != dsu.find(j) && self.connected_avoiding(x, y, z) {
                        dsu.union(i, j);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, EdgeSet> = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            groups.entry(dsu.find(i)).or_default().insert((*l).clone());
        }
        let mut blocks: Vec<MultiGraph> = groups
            .into_values()
            .map(|es| self.edge_subgraph(&es).expect("labels come from the graph"))
            .collect();
        for v in &self.vertices {
            if self.valence(v) == 0 {
                blocks.push(MultiGraph {
                    vertices: VertexSet::from([v.clone()]),
                    edges: BTreeMap::new(),
                });
            }
        }
        blocks
    }

    /// Blocks that carry at least one edge.
    pub fn edge_blocks(&self) -> Vec<MultiGraph> {
        self.biconnected_components()
            .into_iter()
            .filter(|b| b.num_edges() > 0)
            .collect()
    }

    /// Connected with no separating vertex. A lone loop, a single edge and the
    /// one-vertex edgeless graph all qualify.
    pub fn is_biconnected(&self) -> bool {
        self.is_connected() && self.biconnected_components().len() == 1
    }

    /// `E(V, V^c)`.
    pub fn cut(&self, side: &VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .filter(|(_, (u, v))| side.contains(u) != side.contains(v))
            .map(|(l, _)| l.clone())
            .collect()
    }

    fn complement(&self, side: &VertexSet) -> VertexSet {
        self.vertices.difference(side).cloned().collect()
    }

    /// Whether `side` is one half of a bond: a proper nonempty vertex subset
    /// with `Γ(V)` and `Γ(V^c)` both connected.
    pub fn is_bond_side(&self, side: &VertexSet) -> bool {
        if side.is_empty() || !side.is_subset(&self.vertices) || side.len() == self.vertices.len()
        {
            return false;
        }
        self.induced(side).is_connected() && self.induced(&self.complement(side)).is_connected()
    }

    /// The bond determined by one of its sides.
    pub fn bond_from_side(&self, side: &VertexSet) -> Result<Bond> {
        if !self.is_bond_side(side) {
            return Err(Error::NotABond);
        }
        let first = self.vertices.first().expect("nonempty");
        let canonical = if side.contains(first) {
            side.clone()
        } else {
            self.complement(side)
        };
        Ok(Bond {
            edges: self.cut(side),
            side: canonical,
        })
    }

    /// All bonds, each once, by exhaustive search over sides containing the
    /// smallest vertex.
    pub fn bonds(&self) -> Result<Vec<Bond>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = self.vertices.len();
        if n > BOND_VERTEX_GUARD {
            return Err(Error::guard("bond enumeration vertices", n, BOND_VERTEX_GUARD));
        }
        let verts: Vec<&VertexId> = self.vertices.iter().collect();
        let mut out = Vec::new();
        // bit 0 (smallest vertex) is always on the canonical side
        for mask in 0u64..(1u64 << (n - 1)) {
            let side: VertexSet = std::iter::once(verts[0].clone())
                .chain(
                    (1..n)
                        .filter(|i| mask >> (i - 1) & 1 == 1)
                        .map(|i| verts[i].clone()),
                )
                .collect();
            if side.len() == n {
                continue;
            }
            if self.is_bond_side(&side) {
                out.push(Bond {
                    edges: self.cut(&side),
                    side,
                });
            }
        }
        out.sort();
        Ok(out)
    }

    /// `E(V1,V1^c) + E(V2,V2^c) = E(V1 ∪ V2, V1^c ∩ V2^c)` for disjoint sides.
    pub fn bond_sum(&self, v1: &VertexSet, v2: &VertexSet) -> Result<Bond> {
        if !self.is_bond_side(v1) || !self.is_bond_side(v2) {
            return Err(Error::NotABond);
        }
        if !v1.is_disjoint(v2) {
            return Err(Error::OverlappingSides);
        }
        let union: VertexSet = v1.union(v2).cloned().collect();
        self.bond_from_side(&union)
    }

    /// Partition of the vertices into connected blocks, one per vertex of `vs`,
    /// each containing its vertex. Every component of `Γ(V^c)` joins the block
    /// of the first listed vertex it is adjacent to.
    pub fn connected_partition(&self, vs: &[VertexId]) -> Result<Vec<VertexSet>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let chosen: VertexSet = vs.iter().cloned().collect();
        if chosen.len() != vs.len() {
            return Err(Error::DuplicateVertex(
                vs.iter()
                    .find(|v| vs.iter().filter(|w| w == v).count() > 1)
                    .cloned()
                    .expect("some duplicate"),
            ));
        }
        if let Some(v) = vs.iter().find(|v| !self.vertices.contains(*v)) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        let mut blocks: Vec<VertexSet> = vs.iter().map(|v| VertexSet::from([v.clone()])).collect();
        let rest = self.induced(&self.complement(&chosen));
        for comp in rest.connected_components() {
            let slot = vs
                .iter()
                .position(|v| {
                    self.edges.values().any(|(a, b)| {
                        (a == v && comp.contains(b)) || (b == v && comp.contains(a))
                    })
                })
                .expect("connected graph: every component touches a chosen vertex");
            blocks[slot].extend(comp);
        }
        Ok(blocks)
    }
}

/// A minimal cut `E(V, V^c)`. The stored side is the one containing the
/// smallest vertex, so complementary descriptions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bond {
    pub edges: EdgeSet,
    pub side: VertexSet,
}

impl Bond {
    /// Both sides, canonical one first.
    pub fn sides(&self, g: &MultiGraph) -> (VertexSet, VertexSet) {
        (self.side.clone(), g.complement(&self.side))
    }

    /// `{e1,e2,...}` rendering used in reports and equation strings.
    pub fn name(&self) -> String {
        let parts: Vec<&str> = self.edges.iter().map(|e| e.as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A connected multigraph with nonnegative integer vertex weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedGraph {
    graph: MultiGraph,
    weights: BTreeMap<VertexId, u32>,
}

impl WeightedGraph {
    pub fn new(graph: MultiGraph, weights: BTreeMap<VertexId, u32>) -> Result<Self> {
        for v in weights.keys() {
            if !graph.vertices.contains(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        if let Some(v) = graph.vertices.iter().find(|v| !weights.contains_key(*v)) {
            return Err(Error::Parse(format!("no weight for vertex `{v}`")));
        }
        Ok(WeightedGraph { graph, weights })
    }

    /// Every vertex gets weight zero.
    pub fn unweighted(graph: MultiGraph) -> Self {
        let weights = graph.vertices.iter().map(|v| (v.clone(), 0)).collect();
        WeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn weights(&self) -> &BTreeMap<VertexId, u32> {
        &self.weights
    }

    pub fn weight(&self, v: &VertexId) -> u32 {
        self.weights.get(v).copied().unwrap_or(0)
    }

    /// Total weight plus first Betti number.
    pub fn genus(&self) -> Result<usize> {
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let total: usize = self.weights.values().map(|&w| w as usize).sum();
        Ok(total + self.graph.betti_number())
    }

    /// Every weight-0 vertex has valence at least 3.
    pub fn is_stable(&self) -> bool {
        self.graph
            .vertices
            .iter()
            .all(|v| self.weight(v) > 0 || self.graph.valence(v) >= 3)
    }

    /// Weighted specialization: each merged vertex carries the total weight of
    /// its class plus the first Betti number of the contracted edges inside it.
    pub fn contract(&self, s: &EdgeSet) -> Result<WeightedGraph> {
        let rep = self.graph.contraction_map(s)?;
        let graph = self.graph.contract(s)?;
        let mut weights: BTreeMap<VertexId, i64> =
            graph.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for (v, r) in &rep {
            *weights.get_mut(r).expect("representative") += i64::from(self.weight(v)) - 1;
        }
        for e in s {
            let (u, _) = self.graph.ends(e).expect("checked by contraction_map");
            *weights.get_mut(&rep[u]).expect("representative") += 1;
        }
        let weights = weights
            .into_iter()
            .map(|(v, w)| (v, u32::try_from(w + 1).expect("weight stays nonnegative")))
            .collect();
        Ok(WeightedGraph { graph, weights })
    }
}

/// An isomorphism between weighted multigraphs, recorded as a vertex bijection
/// and the induced edge bijection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgePermutation {
    pub edge_map: BTreeMap<EdgeLabel, EdgeLabel>,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
}

impl EdgePermutation {
    pub fn identity(g: &MultiGraph) -> Self {
        EdgePermutation {
            edge_map: g.edges.keys().map(|e| (e.clone(), e.clone())).collect(),
            vertex_map: g.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
        }
    }

    pub fn apply(&self, e: &EdgeLabel) -> &EdgeLabel {
        &self.edge_map[e]
    }

    pub fn apply_set(&self, s: &EdgeSet) -> EdgeSet {
        s.iter().map(|e| self.edge_map[e].clone()).collect()
    }

    pub fn is_identity_on_edges(&self) -> bool {
        self.edge_map.iter().all(|(a, b)| a == b)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &EdgePermutation) -> EdgePermutation {
        EdgePermutation {
            edge_map: other
                .edge_map
                .iter()
                .map(|(k, v)| (k.clone(), self.edge_map[v].clone()))
                .collect(),
            vertex_map: other
                .vertex_map
                .iter()
                .map(|(k, v)| (k.clone(), self.vertex_map[v].clone()))
                .collect(),
        }
    }

    pub fn inverse(&self) -> EdgePermutation {
        EdgePermutation {
            edge_map: self.edge_map.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
            vertex_map: self.vertex_map.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }
}

fn vertex_signature(g: &WeightedGraph, v: &VertexId) -> (u32, usize, usize) {
    (g.weight(v), g.graph.valence(v), g.graph.loop_count(v))
}

/// Calls `visit` with every weight- and incidence-preserving vertex bijection
/// `a -> b`. Stops early when `visit` returns false.
fn for_each_vertex_bijection(
    a: &WeightedGraph,
    b: &WeightedGraph,
    visit: &mut dyn FnMut(&BTreeMap<VertexId, VertexId>) -> bool,
) {
    let av: Vec<&VertexId> = a.graph.vertices.iter().collect();
    let bv: Vec<&VertexId> = b.graph.vertices.iter().collect();
    if av.len() != bv.len() || a.graph.num_edges() != b.graph.num_edges() {
        return;
    }
    let mut map: Vec<Option<usize>> = vec![None; av.len()];
    let mut used = vec![false; bv.len()];

    fn rec(
        i: usize,
        a: &WeightedGraph,
        b: &WeightedGraph,
        av: &[&VertexId],
        bv: &[&VertexId],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&BTreeMap<VertexId, VertexId>) -> bool,
    ) -> bool {
        if i == av.len() {
            let m = av
                .iter()
                .zip(map.iter())
                .map(|(x, y)| ((*x).clone(), bv[y.expect("complete")].clone()))
                .collect();
            return visit(&m);
        }
        let sig = vertex_signature(a, av[i]);
        for j in 0..bv.len() {
            if used[j] || vertex_signature(b, bv[j]) != sig {
                continue;
            }
            let consistent = (0..i).all(|k| {
                let jk = map[k].expect("assigned");
                a.graph.multiplicity(av[i], av[k]) == b.graph.multiplicity(bv[j], bv[jk])
            });
            if !consistent {
                continue;
            }
            map[i] = Some(j);
            used[j] = true;
            let go_on = rec(i + 1, a, b, av, bv, map, used, visit);
            used[j] = false;
            map[i] = None;
            if !go_on {
                return false;
            }
        }
        true
    }

    rec(0, a, b, &av, &bv, &mut map, &mut used, visit);
}

/// Every edge bijection compatible with a vertex bijection: parallel classes
/// map onto parallel classes in all possible ways.
fn edge_bijections(
    a: &MultiGraph,
    b: &MultiGraph,
    vmap: &BTreeMap<VertexId, VertexId>,
) -> Vec<BTreeMap<EdgeLabel, EdgeLabel>> {
    let mut classes_a: BTreeMap<(VertexId, VertexId), Vec<EdgeLabel>> = BTreeMap::new();
    for (l, (u, v)) in &a.edges {
        classes_a.entry((u.clone(), v.clone())).or_default().push(l.clone());
    }
    let mut classes_b: BTreeMap<(VertexId, VertexId), Vec<EdgeLabel>> = BTreeMap::new();
    for (l, (u, v)) in &b.edges {
        classes_b.entry((u.clone(), v.clone())).or_default().push(l.clone());
    }
    let mut partial: Vec<BTreeMap<EdgeLabel, EdgeLabel>> = vec![BTreeMap::new()];
    for ((u, v), src) in &classes_a {
        let key = ordered(vmap[u].clone(), vmap[v].clone());
        let dst = &classes_b[&key];
        let perms = permutations(dst.len());
        let mut next = Vec::with_capacity(partial.len() * perms.len());
        for m in &partial {
            for p in &perms {
                let mut m2 = m.clone();
                for (k, &t) in p.iter().enumerate() {
                    m2.insert(src[k].clone(), dst[t].clone());
                }
                next.push(m2);
            }
        }
        partial = next;
    }
    partial
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

/// The edge-permutation image of `Aut(Γ,w)`: all edge bijections induced by
/// weight-preserving graph automorphisms, deduplicated, identity first.
/// Loop flips act trivially on edges and do not appear separately.
pub fn automorphisms(g: &WeightedGraph) -> Result<Vec<EdgePermutation>> {
    let n = g.graph.num_vertices();
    if n > AUTOMORPHISM_VERTEX_GUARD {
        return Err(Error::guard("automorphism vertices", n, AUTOMORPHISM_VERTEX_GUARD));
    }
    let mut seen: BTreeMap<BTreeMap<EdgeLabel, EdgeLabel>, BTreeMap<VertexId, VertexId>> =
        BTreeMap::new();
    for_each_vertex_bijection(g, g, &mut |vmap| {
        for emap in edge_bijections(&g.graph, &g.graph, vmap) {
            seen.entry(emap).or_insert_with(|| vmap.clone());
        }
        true
    });
    let id = EdgePermutation::identity(&g.graph);
    let mut out = vec![id.clone()];
    out.extend(
        seen.into_iter()
            .map(|(edge_map, vertex_map)| EdgePermutation {
                edge_map,
                vertex_map,
            })
            .filter(|p| p.edge_map != id.edge_map),
    );
    Ok(out)
}

/// Some isomorphism `a -> b` of weighted graphs, if one exists.
pub fn find_isomorphism(a: &WeightedGraph, b: &WeightedGraph) -> Result<Option<EdgePermutation>> {
    let n = a.graph.num_vertices();
    if n > AUTOMORPHISM_VERTEX_GUARD {
        return Err(Error::guard("isomorphism vertices", n, AUTOMORPHISM_VERTEX_GUARD));
    }
    let mut found = None;
    for_each_vertex_bijection(a, b, &mut |vmap| {
        let emap = edge_bijections(&a.graph, &b.graph, vmap)
            .into_iter()
            .next()
            .expect("multiplicities agree");
        found = Some(EdgePermutation {
            edge_map: emap,
            vertex_map: vmap.clone(),
        });
        false
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::label::edge_set;

    fn vs(ids: &[&str]) -> VertexSet {
        ids.iter().map(VertexId::new).collect()
    }

    #[test]
    fn contracting_a_triangle_edge_leaves_a_two_cycle() {
        let g = corpus::triangle();
        let h = g.contract(&edge_set(["a"])).unwrap();
        assert_eq!(h.edge_labels(), edge_set(["b", "c"]));
        assert_eq!(h.num_vertices(), 2);
        assert!(!h.is_loop(&"b".into()) && !h.is_loop(&"c".into()));
    }

    #[test]
    fn contracting_a_theta_edge_leaves_two_loops() {
        let h = corpus::theta(3).contract(&edge_set(["a"])).unwrap();
        assert_eq!(h.num_vertices(), 1);
        assert!(h.is_loop(&"b".into()) && h.is_loop(&"c".into()));
    }

    #[test]
    fn contracting_nothing_is_identity_and_unknown_labels_fail() {
        let g = corpus::figure1();
        assert_eq!(g.contract(&EdgeSet::new()).unwrap(), g);
        assert_eq!(
            g.contract(&edge_set(["zz"])),
            Err(Error::UnknownEdge("zz".into()))
        );
    }

    #[test]
    fn contracting_a_loop_deletes_it() {
        let g = corpus::dumbbell();
        let h = g.contract(&edge_set(["l1"])).unwrap();
        assert_eq!(h.num_vertices(), 2);
        assert_eq!(h.edge_labels(), edge_set(["bridge", "l2"]));
    }

    #[test]
    fn blocks_of_small_graphs() {
        assert_eq!(corpus::theta(3).biconnected_components().len(), 1);
        let dumbbell: Vec<EdgeSet> = corpus::dumbbell()
            .biconnected_components()
            .iter()
            .map(|b| b.edge_labels())
            .collect();
        assert_eq!(
            dumbbell,
            vec![edge_set(["bridge"]), edge_set(["l1"]), edge_set(["l2"])]
        );
        let fig = corpus::figure1().contract(&edge_set(["e1"])).unwrap();
        let blocks: Vec<EdgeSet> = fig
            .biconnected_components()
            .iter()
            .map(|b| b.edge_labels())
            .collect();
        assert_eq!(blocks, vec![edge_set(["e2"]), edge_set(["e3", "e4"])]);
    }

    #[test]
    fn single_loop_and_single_edge_are_biconnected() {
        assert!(MultiGraph::from_edges(&[("l", "v", "v")]).unwrap().is_biconnected());
        assert!(MultiGraph::from_edges(&[("e", "u", "v")]).unwrap().is_biconnected());
        let two_loops = MultiGraph::from_edges(&[("l", "v", "v"), ("m", "v", "v")]).unwrap();
        assert!(!two_loops.is_biconnected());
    }

    #[test]
    fn bonds_of_theta_triangle_and_figure1() {
        let theta = corpus::theta(3).bonds().unwrap();
        assert_eq!(theta.len(), 1);
        assert_eq!(theta[0].edges, edge_set(["a", "b", "c"]));

        let tri: Vec<EdgeSet> = corpus::triangle().bonds().unwrap().into_iter().map(|b| b.edges).collect();
        assert_eq!(tri.len(), 3);
        assert!(tri.contains(&edge_set(["a", "c"])));
        assert!(tri.iter().all(|b| b.len() == 2));

        let mut fig: Vec<EdgeSet> = corpus::figure1().bonds().unwrap().into_iter().map(|b| b.edges).collect();
        fig.sort();
        let mut want = vec![
            edge_set(["e3", "e4"]),
            edge_set(["e1", "e2", "e3"]),
            edge_set(["e1", "e2", "e4"]),
        ];
        want.sort();
        assert_eq!(fig, want);
    }

    #[test]
    fn bonds_reject_disconnected_input() {
        let g = MultiGraph::from_edges(&[("a", "u", "v"), ("b", "x", "y")]).unwrap();
        assert_eq!(g.bonds(), Err(Error::Disconnected));
    }

    #[test]
    fn bond_sum_examples() {
        let g = corpus::figure1();
        let s = g.bond_sum(&vs(&["b"]), &vs(&["d"])).unwrap();
        assert_eq!(s.edges, edge_set(["e3", "e4"]));

        let t = corpus::triangle();
        let s = t.bond_sum(&vs(&["v1"]), &vs(&["v2"])).unwrap();
        assert_eq!(s.edges, t.cut(&vs(&["v3"])));

        assert_eq!(
            t.bond_sum(&vs(&["v1", "v2"]), &vs(&["v2"])),
            Err(Error::OverlappingSides)
        );
        // sum covering every vertex is no cut at all
        assert_eq!(
            t.bond_sum(&vs(&["v1"]), &vs(&["v2", "v3"])),
            Err(Error::NotABond)
        );
    }

    #[test]
    fn genus_and_stability() {
        let theta = WeightedGraph::unweighted(corpus::theta(3));
        assert_eq!(theta.genus().unwrap(), 2);
        assert!(theta.is_stable());

        let point = WeightedGraph::new(
            MultiGraph::new(vs(&["v"]), Vec::new()).unwrap(),
            BTreeMap::from([(VertexId::new("v"), 2)]),
        )
        .unwrap();
        assert_eq!(point.genus().unwrap(), 2);
        assert!(point.is_stable());

        let two_cycle = WeightedGraph::unweighted(corpus::cycle(2));
        assert_eq!(two_cycle.genus().unwrap(), 1);
        assert!(!two_cycle.is_stable());
    }

    #[test]
    fn genus_rejects_disconnected_graphs() {
        let g = MultiGraph::from_edges(&[("a", "u", "v"), ("b", "x", "y")]).unwrap();
        assert_eq!(WeightedGraph::unweighted(g).genus(), Err(Error::Disconnected));
    }

    #[test]
    fn weighted_contraction_preserves_genus() {
        let g = WeightedGraph::unweighted(corpus::figure1());
        for s in [edge_set(["e1"]), edge_set(["e1", "e2"]), edge_set(["e1", "e3", "e4"])] {
            let h = g.contract(&s).unwrap();
            assert_eq!(h.genus().unwrap(), 2, "contracting {s:?}");
        }
    }

    #[test]
    fn automorphism_orders() {
        let theta = automorphisms(&WeightedGraph::unweighted(corpus::theta(3))).unwrap();
        assert_eq!(theta.len(), 6);
        let edge = automorphisms(&WeightedGraph::unweighted(corpus::single_edge())).unwrap();
        assert_eq!(edge.len(), 1);
        let dumbbell = automorphisms(&WeightedGraph::unweighted(corpus::dumbbell())).unwrap();
        assert_eq!(dumbbell.len(), 2);
    }

    #[test]
    fn automorphisms_are_closed_under_composition() {
        let auts = automorphisms(&WeightedGraph::unweighted(corpus::cycle(4))).unwrap();
        assert_eq!(auts.len(), 8);
        let maps: BTreeSet<_> = auts.iter().map(|a| a.edge_map.clone()).collect();
        for a in &auts {
            assert!(maps.contains(&a.inverse().edge_map));
            for b in &auts {
                assert!(maps.contains(&a.compose(b).edge_map));
            }
        }
    }

    #[test]
    fn connected_partition_examples() {
        let t = corpus::triangle();
        let all: Vec<VertexId> = t.vertices().iter().cloned().collect();
        let blocks = t.connected_partition(&all).unwrap();
        assert!(blocks.iter().all(|b| b.len() == 1));

        let path = MultiGraph::from_edges(&[("x", "u", "v"), ("y", "v", "w")]).unwrap();
        let blocks = path
            .connected_partition(&[VertexId::new("u"), VertexId::new("w")])
            .unwrap();
        assert_eq!(blocks, vec![vs(&["u", "v"]), vs(&["w"])]);

        let one = path.connected_partition(&[VertexId::new("v")]).unwrap();
        assert_eq!(one, vec![vs(&["u", "v", "w"])]);
    }
}
