//! Brute-force reference implementations, written directly from the
//! definitions and sharing as little code as possible with the fast paths.
//! Used by tests and by the `verify` suite; only suitable for tiny inputs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::label::{EdgeLabel, EdgeSet};
use crate::linalg::{self, Matrix, Vector};
use crate::preorder::Preorder;

/// Edge limit for the oracles.
pub const ORACLE_EDGE_GUARD: usize = 5;

fn guard(n: usize) -> Result<()> {
    if n > ORACLE_EDGE_GUARD {
        return Err(Error::guard("oracle edges", n, ORACLE_EDGE_GUARD));
    }
    Ok(())
}

/// A relation as a boolean matrix: `r[i][j]` iff `i ≼ j`.
pub type Relation = Vec<Vec<bool>>;

/// Every preorder on `n` points, built by adding one point at a time with a
/// down-closed set below it and an up-closed set above it.
pub fn all_preorder_relations(n: usize) -> Vec<Relation> {
    let mut current: Vec<Relation> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for r in &current {
            for down in 0u32..(1 << k) {
                for up in 0u32..(1 << k) {
                    let d = |i: usize| down >> i & 1 == 1;
                    let u = |i: usize| up >> i & 1 == 1;
                    let ok = (0..k).all(|i| {
                        (0..k).all(|j| {
                            // down-closed, up-closed, and everything below sits below everything above
                            !(r[i][j] && d(j) && !d(i))
                                && !(r[i][j] && u(i) && !u(j))
                                && !(d(i) && u(j) && !r[i][j])
                        })
                    });
                    if !ok {
                        continue;
                    }
                    let mut s: Relation = r.iter().map(|row| {
                        let mut row = row.clone();
                        row.push(false);
                        row
                    }).collect();
                    let mut last = vec![false; k + 1];
                    for i in 0..k {
                        s[i][k] = d(i);
                        last[i] = u(i);
                    }
                    last[k] = true;
                    s.push(last);
                    next.push(s);
                }
            }
        }
        current = next;
    }
    current
}

fn to_preorder(ground: &[EdgeLabel], r: &Relation) -> Result<Preorder> {
    let mut pairs = Vec::new();
    for (i, a) in ground.iter().enumerate() {
        for (j, b) in ground.iter().enumerate() {
            if r[i][j] {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Preorder::from_relations(ground.iter().cloned(), &pairs)
}

/// Every preorder on the given labels.
pub fn all_preorders(ground: &[EdgeLabel]) -> Result<Vec<Preorder>> {
    guard(ground.len())?;
    all_preorder_relations(ground.len())
        .iter()
        .map(|r| to_preorder(ground, r))
        .collect()
}

/// Edge sets of the simple cycles (loops and pairs of parallel edges included).
pub fn cycles(g: &MultiGraph) -> Vec<EdgeSet> {
    let edges = g.edge_list();
    let n = edges.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let s: EdgeSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| edges[i].clone()).collect();
        let Ok(h) = g.edge_subgraph(&s) else { continue };
        let touched: Vec<_> = h.vertices().iter().filter(|v| h.valence(v) > 0).cloned().collect();
        if touched.iter().all(|v| h.valence(v) == 2) {
            let core = h.induced(&touched.into_iter().collect());
            if core.is_connected() {
                out.push(s);
            }
        }
    }
    out
}

/// Edge blocks: two edges share a block iff some cycle contains both.
pub fn edge_blocks(g: &MultiGraph) -> Vec<EdgeSet> {
    let cyc = cycles(g);
    let mut blocks: Vec<EdgeSet> = Vec::new();
    for e in g.edge_list() {
        let mut block: EdgeSet = EdgeSet::from([e.clone()]);
        for c in cyc.iter().filter(|c| c.contains(&e)) {
            block.extend(c.iter().cloned());
        }
        if !blocks.iter().any(|b| b.contains(&e)) {
            blocks.push(block);
        }
    }
    blocks
}

/// The definition of an enriched graph, with condition (2) tried over every
/// admissible lower set rather than only the bottom class.
pub fn literal_is_enriched(g: &MultiGraph, p: &Preorder) -> bool {
    let edges = g.edge_list();
    if edges.len() <= 1 {
        return true;
    }
    let blocks = edge_blocks(g);
    if blocks.len() > 1 {
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i + 1..] {
                if a.iter().any(|x| b.iter().any(|y| p.leq(x, y) || p.leq(y, x))) {
                    return false;
                }
            }
        }
        return blocks.iter().all(|b| {
            let sub = g.edge_subgraph(b).expect("edges of g");
            literal_is_enriched(&sub, &p.restrict(b).expect("subset"))
        });
    }
    let n = edges.len();
    for mask in 1u64..(1u64 << n) {
        let s: EdgeSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| edges[i].clone()).collect();
        let below_all = s.iter().all(|e| edges.iter().all(|f| p.leq(e, f)));
        let lower = edges
            .iter()
            .all(|e| s.iter().all(|f| !p.leq(e, f) || s.contains(e)));
        if !below_all || !lower {
            continue;
        }
        let rest: EdgeSet = edges.iter().filter(|e| !s.contains(*e)).cloned().collect();
        let h = g.contract(&s).expect("edges of g");
        if literal_is_enriched(&h, &p.restrict(&rest).expect("subset")) {
            return true;
        }
    }
    false
}

/// All preorders on `E(g)` passing [`literal_is_enriched`], sorted.
pub fn enriched_structures(g: &MultiGraph) -> Result<Vec<Preorder>> {
    let mut out: Vec<Preorder> = all_preorders(&g.edge_list())?
        .into_iter()
        .filter(|p| literal_is_enriched(g, p))
        .collect();
    out.sort();
    Ok(out)
}

/// Extreme rays of `{x ≥ 0, x_f ≥ x_e for e ≼ f}` found by solving every
/// subset of `|E| − 1` tight constraints.
pub fn extreme_rays(p: &Preorder) -> Result<BTreeSet<Vector>> {
    let ground = p.ground();
    let n = ground.len();
    guard(n)?;
    let mut constraints: Matrix = Vec::new();
    for i in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::from(1);
        constraints.push(v);
    }
    for (i, a) in ground.iter().enumerate() {
        for (j, b) in ground.iter().enumerate() {
            if i != j && p.leq(a, b) {
                let mut v = vec![BigInt::zero(); n];
                v[j] += 1;
                v[i] -= 1;
                constraints.push(v);
            }
        }
    }
    let mut rays = BTreeSet::new();
    if n == 0 {
        return Ok(rays);
    }
    let m = constraints.len();
    for mask in 0u64..(1u64 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let rows: Matrix = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| constraints[i].clone())
            .collect();
        let kernel = linalg::integer_kernel(&rows, rows.len(), n);
        if kernel.len() != 1 {
            continue;
        }
        for sign in [1i64, -1] {
            let r: Vector = kernel[0].iter().map(|x| x * sign).collect();
            let feasible = constraints
                .iter()
                .all(|c| !c.iter().zip(&r).map(|(a, b)| a * b).sum::<BigInt>().is_negative());
            if feasible {
                rays.insert(linalg::primitive(&r));
            }
        }
    }
    Ok(rays)
}

/// Specializations straight from the definition: every `S` closed downward,
/// every preorder on the remaining edges that is enriched on `Γ/S` and keeps
/// the source relations. Keyed by contracted set.
pub fn specializations(g: &MultiGraph, p: &Preorder) -> Result<BTreeMap<EdgeSet, Vec<Preorder>>> {
    let edges = g.edge_list();
    let n = edges.len();
    guard(n)?;
    let mut out = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let s: EdgeSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| edges[i].clone()).collect();
        let closed = edges.iter().all(|e| {
            edges
                .iter()
                .all(|f| !(p.leq(e, f) && s.contains(f)) || s.contains(e))
        });
        if !closed {
            continue;
        }
        let h = g.contract(&s)?;
        let rest = h.edge_list();
        let mut targets = Vec::new();
        for q in all_preorders(&rest)? {
            let keeps = rest
                .iter()
                .all(|a| rest.iter().all(|b| !p.leq(a, b) || q.leq(a, b)));
            if keeps && literal_is_enriched(&h, &q) {
                targets.push(q);
            }
        }
        targets.sort();
        out.insert(s, targets);
    }
    Ok(out)
}
