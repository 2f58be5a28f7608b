//! The invariant suite behind `verify all`: every property is re-checked on
//! the built-in corpus, exhaustively where feasible and on seeded random
//! points otherwise.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone;
use crate::corpus;
use crate::enriched::{self, EnrichedGraph};
use crate::fan::{self, Fan, LatticeQuotient};
use crate::graph::{self, MultiGraph, WeightedGraph};
use crate::label::{EdgeLabel, EdgeSet};
use crate::linalg::{self, Vector};
use crate::moduli;
use crate::oracle;
use crate::preorder::Preorder;
use crate::toric;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:<34} {:>6} ms  {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.millis,
                c.detail
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        s
    }
}

pub type Outcome = std::result::Result<String, String>;

fn run(name: &str, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let out = f();
    let millis = start.elapsed().as_millis();
    match out {
        Ok(detail) => Check {
            name: name.into(),
            passed: true,
            detail,
            millis,
        },
        Err(detail) => Check {
            name: name.into(),
            passed: false,
            detail,
            millis,
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn subsets(edges: &[EdgeLabel]) -> Vec<EdgeSet> {
    (0u64..(1u64 << edges.len()))
        .map(|m| {
            (0..edges.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| edges[i].clone())
                .collect()
        })
        .collect()
}

fn structures(g: &MultiGraph) -> std::result::Result<Vec<EnrichedGraph>, String> {
    enriched::enumerate_enriched(g).map_err(err)
}

/// Every check, in a fixed order.
pub fn verify_all(seed: u64) -> Report {
    let checks = vec![
        run("blocks partition and contain bonds", blocks_and_bonds),
        run("bond contraction and minimality", bond_contraction),
        run("contraction composes", contraction_composes),
        run("genus under weighted contraction", weighted_contraction),
        run("automorphism groups", automorphism_groups),
        run("lower/upper duality", lower_upper_duality),
        run("irreducible upper sets", irreducible_upper_sets),
        run("hasse reconstructs the order", hasse_reconstructs),
        run("rank splits along lower sets", rank_split),
        run("enumeration matches oracle", enumeration_matches_oracle),
        run("lower-set contraction", lower_set_contraction),
        run("tree property", tree_property),
        run("component incomparability", component_incomparability),
        run("bond collection round trip", bond_round_trip),
        run("bond collections are enriched", bond_collections_enriched),
        run("specializations match oracle", specializations_match_oracle),
        run("simple specializations generate", simple_specializations_generate),
        run("open cones cover the orthant", || cover(seed, 1000)),
        run("faces are specializations", faces_are_specializations),
        run("rays and smoothness", rays_and_smoothness),
        run("star pipeline equals direct fan", star_pipeline),
        run("fan product over blocks", fan_product),
        run("quotient fan complete", quotient_complete),
        run("moduli cells and orbits", moduli_cells),
        run("moduli specialization chains", moduli_chains),
        run("gluing maps split", gluing_maps),
        run("point lifts unique", || point_lifts(seed, 500)),
        run("kernel lattice", kernel_lattice),
        run("torus points and mutants", || torus_points(seed)),
        run("blowup schedule", blowup_schedule),
        run("quotient product rule", quotient_product),
    ];
    Report { seed, checks }
}

fn blocks_and_bonds() -> Outcome {
    let mut bonds_seen = 0;
    for (name, g) in corpus::graphs() {
        let blocks: Vec<EdgeSet> = g.edge_blocks().iter().map(MultiGraph::edge_labels).collect();
        let union: EdgeSet = blocks.iter().flatten().cloned().collect();
        let total: usize = blocks.iter().map(BTreeSet::len).sum();
        ensure(union == g.edge_labels() && total == g.num_edges(), || {
            format!("{name}: blocks do not partition the edges")
        })?;
        for b in g.bonds().map_err(err)? {
            bonds_seen += 1;
            let holders = blocks.iter().filter(|bl| b.edges.is_subset(bl)).count();
            ensure(holders == 1, || format!("{name}: bond {} in {holders} blocks", b.name()))?;
        }
    }
    Ok(format!("{bonds_seen} bonds"))
}

fn bond_contraction() -> Outcome {
    for (name, g) in corpus::graphs() {
        for b in g.bonds().map_err(err)? {
            let rest: EdgeSet = g.edge_labels().difference(&b.edges).cloned().collect();
            let h = g.contract(&rest).map_err(err)?;
            ensure(h.num_vertices() == 2 || h.num_vertices() == 1, || {
                format!("{name}: contracting outside {} leaves {} vertices", b.name(), h.num_vertices())
            })?;
            let (s, c) = b.sides(&g);
            ensure(g.induced(&s).is_connected() && g.induced(&c).is_connected(), || {
                format!("{name}: a side of {} is disconnected", b.name())
            })?;
        }
    }
    Ok("all bonds".into())
}

fn contraction_composes() -> Outcome {
    let mut pairs = 0;
    for (name, g) in corpus::graphs() {
        let edges = g.edge_list();
        for s1 in subsets(&edges) {
            let rest: Vec<EdgeLabel> = edges.iter().filter(|e| !s1.contains(*e)).cloned().collect();
            let h = g.contract(&s1).map_err(err)?;
            for s2 in subsets(&rest) {
                let both: EdgeSet = s1.union(&s2).cloned().collect();
                ensure(h.contract(&s2).map_err(err)? == g.contract(&both).map_err(err)?, || {
                    format!("{name}: contraction does not compose")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn weighted_contraction() -> Outcome {
    let mut n = 0;
    for (name, wg) in corpus::genus2() {
        let g0 = wg.genus().map_err(err)?;
        for s in subsets(&wg.graph().edge_list()) {
            let h = wg.contract(&s).map_err(err)?;
            ensure(h.genus().map_err(err)? == g0, || format!("{name}: genus changes"))?;
            n += 1;
        }
    }
    Ok(format!("{n} contractions"))
}

fn automorphism_groups() -> Outcome {
    let mut graphs: Vec<(String, WeightedGraph)> = corpus::graphs()
        .into_iter()
        .map(|(n, g)| (n.to_string(), WeightedGraph::unweighted(g)))
        .collect();
    graphs.extend(corpus::genus2().into_iter().map(|(n, g)| (n.to_string(), g)));
    for (name, wg) in graphs {
        let auts = graph::automorphisms(&wg).map_err(err)?;
        let maps: BTreeSet<_> = auts.iter().map(|a| a.edge_map.clone()).collect();
        ensure(auts[0].is_identity_on_edges(), || format!("{name}: identity missing"))?;
        for a in &auts {
            ensure(maps.contains(&a.inverse().edge_map), || format!("{name}: inverse missing"))?;
            for b in &auts {
                ensure(maps.contains(&a.compose(b).edge_map), || format!("{name}: not closed"))?;
            }
        }
        if wg.graph().is_connected() {
            let bonds: BTreeSet<EdgeSet> = wg.graph().bonds().map_err(err)?.into_iter().map(|b| b.edges).collect();
            for a in &auts {
                ensure(bonds.iter().all(|b| bonds.contains(&a.apply_set(b))), || {
                    format!("{name}: a bond is not mapped to a bond")
                })?;
            }
        }
    }
    Ok("closed under composition and inverse".into())
}

/// All preorders on four labels plus every enriched structure of the corpus.
fn sample_preorders() -> std::result::Result<Vec<Preorder>, String> {
    let ground: Vec<EdgeLabel> = ["a", "b", "c", "d"].iter().map(|s| EdgeLabel::new(*s)).collect();
    let mut out = oracle::all_preorders(&ground).map_err(err)?;
    for (_, g) in corpus::graphs() {
        out.extend(structures(&g)?.into_iter().map(|eg| eg.preorder().clone()));
    }
    Ok(out)
}

fn lower_upper_duality() -> Outcome {
    let ps = sample_preorders()?;
    for p in &ps {
        let all = p.ground_set();
        for s in subsets(p.ground()) {
            let c: EdgeSet = all.difference(&s).cloned().collect();
            ensure(p.is_lower_set(&s).map_err(err)? == p.is_upper_set(&c).map_err(err)?, || {
                format!("{}: duality fails", p.describe())
            })?;
        }
    }
    Ok(format!("{} preorders", ps.len()))
}

fn irreducible_upper_sets() -> Outcome {
    let ps = sample_preorders()?;
    for p in &ps {
        let upper = p.upper_sets();
        let irreducible: BTreeSet<EdgeSet> = p.irreducible_upper_sets().into_iter().collect();
        let principal: BTreeSet<EdgeSet> = p
            .ground()
            .iter()
            .map(|e| p.up_closure(e).map_err(err))
            .collect::<std::result::Result<_, _>>()?;
        // brute force: nonempty upper sets that are not a union of two proper upper subsets
        let brute: BTreeSet<EdgeSet> = upper
            .iter()
            .filter(|u| !u.is_empty())
            .filter(|u| {
                !upper.iter().any(|a| {
                    a.is_subset(u)
                        && a != *u
                        && upper.iter().any(|b| {
                            b.is_subset(u) && b != *u && a.union(b).cloned().collect::<EdgeSet>() == **u
                        })
                })
            })
            .cloned()
            .collect();
        ensure(irreducible == principal && irreducible == brute, || {
            format!("{}: irreducible upper sets differ", p.describe())
        })?;
        for u in &upper {
            let union: EdgeSet = irreducible.iter().filter(|t| t.is_subset(u)).flatten().cloned().collect();
            ensure(&union == u, || format!("{}: upper set not a union", p.describe()))?;
        }
    }
    Ok(format!("{} preorders", ps.len()))
}

fn hasse_reconstructs() -> Outcome {
    for p in sample_preorders()? {
        let q = p.quotient();
        let k = q.rank();
        let mut reach = vec![vec![false; k]; k];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &q.hasse {
            reach[a][b] = true;
        }
        for m in 0..k {
            for i in 0..k {
                for j in 0..k {
                    if reach[i][m] && reach[m][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        for a in p.ground() {
            for b in p.ground() {
                let (i, j) = (q.class_index(a).expect("class"), q.class_index(b).expect("class"));
                ensure(reach[i][j] == p.leq(a, b), || format!("{}: hasse mismatch", p.describe()))?;
            }
        }
    }
    Ok("all sampled preorders".into())
}

fn rank_split() -> Outcome {
    for p in sample_preorders()? {
        for s in p.lower_sets() {
            let rest: EdgeSet = p.ground_set().difference(&s).cloned().collect();
            let inside = p.classes().iter().filter(|c| c.is_subset(&s)).count();
            ensure(p.restrict(&rest).map_err(err)?.rank() + inside == p.rank(), || {
                format!("{}: rank does not split", p.describe())
            })?;
        }
    }
    Ok("all lower sets".into())
}

fn enumeration_matches_oracle() -> Outcome {
    let mut total = 0;
    for (name, g) in corpus::graphs() {
        let fast: Vec<Preorder> = structures(&g)?.into_iter().map(|eg| eg.preorder().clone()).collect();
        let slow = oracle::enriched_structures(&g).map_err(err)?;
        ensure(fast == slow, || format!("{name}: {} vs oracle {}", fast.len(), slow.len()))?;
        total += fast.len();
    }
    Ok(format!("{total} structures"))
}

fn lower_set_contraction() -> Outcome {
    for (name, g) in corpus::graphs() {
        for eg in structures(&g)? {
            for s in eg.preorder().lower_sets() {
                if s.is_empty() {
                    continue;
                }
                let h = g.contract(&s).map_err(err)?;
                let p = eg.preorder().restrict(&h.edge_labels()).map_err(err)?;
                ensure(enriched::is_enriched(&h, &p).map_err(err)?, || {
                    format!("{name}: {} contracted by {s:?} is not enriched", eg.preorder().describe())
                })?;
            }
        }
    }
    Ok("all nonempty lower sets".into())
}

fn tree_property() -> Outcome {
    for (name, g) in corpus::graphs() {
        for eg in structures(&g)? {
            let p = eg.preorder();
            for e3 in p.ground() {
                for e1 in p.ground() {
                    for e2 in p.ground() {
                        if p.leq(e1, e3) && p.leq(e2, e3) {
                            ensure(p.comparable(e1, e2), || {
                                format!("{name}: {} breaks the tree property", p.describe())
                            })?;
                        }
                    }
                }
            }
            let q = p.quotient();
            for c in 0..q.rank() {
                let covers = q.hasse.iter().filter(|(_, hi)| *hi == c).count();
                ensure(covers <= 1, || format!("{name}: {} is not a forest", p.describe()))?;
            }
        }
    }
    Ok("hasse diagrams are rooted forests".into())
}

fn component_incomparability() -> Outcome {
    for (name, g) in corpus::graphs() {
        let blocks: Vec<EdgeSet> = g.edge_blocks().iter().map(MultiGraph::edge_labels).collect();
        for eg in structures(&g)? {
            for (i, a) in blocks.iter().enumerate() {
                for b in &blocks[i + 1..] {
                    let bad = a.iter().any(|x| b.iter().any(|y| eg.preorder().comparable(x, y)));
                    ensure(!bad, || format!("{name}: blocks comparable"))?;
                }
            }
        }
    }
    Ok("all structures".into())
}

pub fn bond_round_trip() -> Outcome {
    let mut n = 0;
    for (name, g) in corpus::graphs() {
        if g.num_edges() < 2 || !g.is_biconnected() {
            continue;
        }
        for eg in structures(&g)? {
            let t = toric::bond_data(&eg).map_err(err)?;
            let back = enriched::from_bond_collection(&g, &t).map_err(err)?;
            ensure(back.preorder() == eg.preorder(), || {
                format!("{name}: {} does not round-trip", eg.preorder().describe())
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} structures"))
}

/// Every choice of nonempty subset per bond on `g`, checked to give an enriched structure.
pub fn all_bond_collections_enriched(g: &MultiGraph) -> std::result::Result<usize, String> {
    let bonds = g.bonds().map_err(err)?;
    let choices: Vec<Vec<EdgeSet>> = bonds
        .iter()
        .map(|b| {
            let es: Vec<EdgeLabel> = b.edges.iter().cloned().collect();
            subsets(&es).into_iter().filter(|s| !s.is_empty()).collect()
        })
        .collect();
    let mut idx = vec![0usize; bonds.len()];
    let mut count = 0;
    loop {
        let t: BTreeMap<EdgeSet, EdgeSet> = bonds
            .iter()
            .zip(&idx)
            .enumerate()
            .map(|(k, (b, &i))| (b.edges.clone(), choices[k][i].clone()))
            .collect();
        let eg = enriched::from_bond_collection(g, &t).map_err(|e| format!("{t:?}: {e}"))?;
        if !enriched::is_enriched(g, eg.preorder()).map_err(err)? {
            return Err(format!("{t:?} is not enriched"));
        }
        count += 1;
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(count);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn bond_collections_enriched() -> Outcome {
    let a = all_bond_collections_enriched(&corpus::theta(3))?;
    let b = all_bond_collections_enriched(&corpus::triangle())?;
    Ok(format!("{a} on theta3, {b} on the triangle"))
}

fn specializations_match_oracle() -> Outcome {
    let mut n = 0;
    for (name, g) in corpus::graphs() {
        for eg in structures(&g)? {
            let mut fast: BTreeMap<EdgeSet, Vec<Preorder>> = BTreeMap::new();
            for sp in enriched::specializations_of(&eg).map_err(err)? {
                fast.entry(sp.contracted).or_default().push(sp.target.preorder().clone());
            }
            for v in fast.values_mut() {
                v.sort();
            }
            let slow = oracle::specializations(&g, eg.preorder()).map_err(err)?;
            let slow: BTreeMap<EdgeSet, Vec<Preorder>> =
                slow.into_iter().filter(|(_, v)| !v.is_empty()).collect();
            ensure(fast == slow, || format!("{name}: {} differs from oracle", eg.preorder().describe()))?;
            n += fast.values().map(Vec::len).sum::<usize>();
        }
    }
    Ok(format!("{n} specializations"))
}

fn simple_steps(eg: &EnrichedGraph) -> std::result::Result<Vec<EnrichedGraph>, String> {
    let reps: Vec<EdgeLabel> = eg.preorder().classes().iter().map(|c| c.first().expect("nonempty").clone()).collect();
    let mut out = Vec::new();
    for a in &reps {
        for b in &reps {
            if eg.preorder().consecutive(a, b).map_err(err)? {
                out.push(enriched::simple_specialization(eg, a, b).map_err(err)?);
            }
        }
    }
    Ok(out)
}

fn simple_specializations_generate() -> Outcome {
    for (name, g) in corpus::graphs() {
        for eg in structures(&g)? {
            let targets: BTreeSet<Preorder> = enriched::specializations_of(&eg)
                .map_err(err)?
                .into_iter()
                .filter(|sp| sp.contracted.is_empty())
                .map(|sp| sp.target.preorder().clone())
                .collect();
            let mut reached: BTreeSet<Preorder> = BTreeSet::from([eg.preorder().clone()]);
            let mut queue = VecDeque::from([eg.clone()]);
            while let Some(cur) = queue.pop_front() {
                for next in simple_steps(&cur)? {
                    ensure(next.rank() + 1 == cur.rank(), || format!("{name}: simple step drops rank by more than one"))?;
                    if reached.insert(next.preorder().clone()) {
                        queue.push_back(next);
                    }
                }
            }
            ensure(reached == targets, || {
                format!("{name}: {} simple chains reach {} of {}", eg.preorder().describe(), reached.len(), targets.len())
            })?;
            let one_step: BTreeSet<Preorder> = simple_steps(&eg)?.into_iter().map(|t| t.preorder().clone()).collect();
            for t in &targets {
                if t.rank() + 1 == eg.rank() {
                    ensure(one_step.contains(t), || format!("{name}: rank-one drop is not simple"))?;
                }
            }
        }
    }
    Ok("every same-graph specialization is a chain of simple ones".into())
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| moduli::random_positive(rng)).collect()
}

fn grid(n: usize, max: i64) -> Vec<Vec<BigRational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(BigRational::from_integer(BigInt::from(v)));
                    q
                })
            })
            .collect();
    }
    out
}

/// Every corpus point lies in exactly one open cone and `locate` finds it.
pub fn cover(seed: u64, random_points: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0;
    for (name, g) in corpus::graphs() {
        let n = g.num_edges();
        let cones: Vec<(Preorder, cone::RationalCone)> = structures(&g)?
            .iter()
            .map(|eg| (eg.preorder().clone(), cone::cone_k(eg)))
            .collect();
        let mut points = grid(n, 4);
        points.extend((0..random_points).map(|_| random_point(&mut rng, n)));
        for x in &points {
            let hits: Vec<&Preorder> = cones
                .iter()
                .filter(|(_, c)| c.satisfies_halfspaces(x, false))
                .map(|(p, _)| p)
                .collect();
            let found = fan::locate(&g, x).map_err(err)?;
            ensure(hits.len() == 1 && hits[0] == found.preorder(), || {
                format!("{name}: point {x:?} lies in {} cones", hits.len())
            })?;
        }
        total += points.len();
    }
    Ok(format!("{total} points"))
}

/// Each face of each closed cone is the closed cone of one specialization.
pub fn faces_are_specializations() -> Outcome {
    let mut faces = 0;
    for (name, g) in corpus::graphs() {
        let axes = g.edge_list();
        for eg in structures(&g)? {
            let c = cone::cone_k(&eg);
            let specs: BTreeSet<(EdgeSet, Preorder)> = enriched::specializations_of(&eg)
                .map_err(err)?
                .into_iter()
                .map(|sp| (sp.contracted, sp.target.preorder().clone()))
                .collect();
            let mut seen = BTreeSet::new();
            for f in c.faces() {
                let b = f.barycenter();
                ensure(c.satisfies_halfspaces(&linalg::to_rational(&b), true), || {
                    format!("{name}: face outside the closed cone")
                })?;
                let s: EdgeSet = axes.iter().zip(&b).filter(|(_, v)| v.is_zero()).map(|(e, _)| e.clone()).collect();
                let h = g.contract(&s).map_err(err)?;
                let rest: Vec<BigRational> = b.iter().filter(|v| !v.is_zero()).map(|v| BigRational::from_integer(v.clone())).collect();
                let target = fan::locate(&h, &rest).map_err(err)?;
                // the face's rays are the target's rays padded with zeros on S
                let embedded: BTreeSet<Vector> = cone::ray_generators(&target)
                    .into_iter()
                    .map(|r| {
                        let mut it = r.into_iter();
                        axes.iter()
                            .map(|e| if s.contains(e) { BigInt::zero() } else { it.next().expect("coordinate") })
                            .collect()
                    })
                    .collect();
                ensure(embedded == f.ray_set(), || format!("{name}: face is not a target cone"))?;
                let key = (s, target.preorder().clone());
                ensure(specs.contains(&key), || format!("{name}: face gives no specialization"))?;
                ensure(seen.insert(key), || format!("{name}: two faces give one specialization"))?;
            }
            ensure(seen.len() == specs.len(), || {
                format!("{name}: {} faces, {} specializations", seen.len(), specs.len())
            })?;
            faces += seen.len();
        }
    }
    Ok(format!("{faces} faces"))
}

/// Rays are the irreducible-upper-set indicators, match the oracle, number
/// rank(p), and span smooth cones.
pub fn rays_and_smoothness() -> Outcome {
    let mut n = 0;
    for (name, g) in corpus::graphs() {
        for eg in structures(&g)? {
            let rays: BTreeSet<Vector> = cone::ray_generators(&eg).into_iter().collect();
            let brute = oracle::extreme_rays(eg.preorder()).map_err(err)?;
            let c = cone::cone_k(&eg);
            ensure(rays == brute, || format!("{name}: {} rays differ from oracle", eg.preorder().describe()))?;
            ensure(rays.len() == eg.rank() && c.dim() == eg.rank(), || format!("{name}: ray count"))?;
            ensure(c.is_smooth(), || format!("{name}: cone not smooth"))?;
            n += 1;
        }
    }
    Ok(format!("{n} cones"))
}

pub fn star_pipeline() -> Outcome {
    for (name, g) in corpus::graphs() {
        let direct = fan::fan_sigma(&g).map_err(err)?;
        for include in [false, true] {
            let star = fan::fan_via_star_with(&g, include).map_err(err)?;
            ensure(fan::fan_equal(&star, &direct), || format!("{name}: star pipeline differs"))?;
        }
    }
    Ok("both good-sequence variants".into())
}

fn fan_product() -> Outcome {
    for (name, g) in corpus::graphs() {
        let blocks = g.edge_blocks();
        if blocks.len() < 2 {
            continue;
        }
        let mut prod: Option<Fan> = None;
        for b in &blocks {
            let f = fan::fan_sigma(b).map_err(err)?;
            prod = Some(match prod {
                None => f,
                Some(p) => p.product(&f),
            });
        }
        let prod = prod.expect("blocks").reorder(fan::fan_sigma(&g).map_err(err)?.axes()).map_err(err)?;
        ensure(prod == fan::fan_sigma(&g).map_err(err)?, || format!("{name}: not a product"))?;
    }
    Ok("non-biconnected corpus graphs".into())
}

pub fn quotient_complete() -> Outcome {
    for (name, g) in corpus::graphs() {
        let f = fan::sigma_y(&g).map_err(err)?;
        ensure(f.ambient() == toric::dim_ey(&g), || format!("{name}: wrong lattice rank"))?;
        ensure(f.is_complete(), || format!("{name}: quotient fan not complete"))?;
    }
    Ok("all corpus graphs".into())
}

fn moduli_cells() -> Outcome {
    let mut detail = Vec::new();
    for g in 1..=2 {
        let space = moduli::enumerate_cells(g).map_err(err)?;
        for (gi, wg) in space.graphs.iter().enumerate() {
            let auts = graph::automorphisms(wg).map_err(err)?;
            let orbits: BTreeSet<Preorder> = oracle::enriched_structures(wg.graph())
                .map_err(err)?
                .into_iter()
                .map(|p| {
                    auts.iter()
                        .map(|a| p.relabel(&a.edge_map).expect("same labels"))
                        .min()
                        .expect("identity")
                })
                .collect();
            let cells = space.cells.iter().filter(|c| c.graph_index == gi).count();
            ensure(cells == orbits.len() && cells > 0, || {
                format!("genus {g}, graph {gi}: {cells} cells, {} orbits", orbits.len())
            })?;
        }
        detail.push(format!("genus {g}: {} graphs, {} cells", space.graphs.len(), space.cells.len()));
    }
    Ok(detail.join("; "))
}

fn moduli_chains() -> Outcome {
    for g in 1..=2 {
        let space = moduli::enumerate_cells(g).map_err(err)?;
        let max: Vec<usize> = space.maximal_cells().iter().map(|c| c.id).collect();
        ensure(!max.is_empty(), || format!("genus {g}: no maximal cell"))?;
        ensure(space.cells.iter().all(|c| c.dim <= 3 * g - 3), || format!("genus {g}: cell above 3g-3"))?;
        for c in &space.cells {
            let reached = max.contains(&c.id) || max.iter().any(|&m| space.cells[m].specializes_to.contains(&c.id));
            ensure(reached, || format!("genus {g}: cell {} unreachable", c.id))?;
        }
    }
    Ok("every cell lies below a maximal cell".into())
}

fn gluing_maps() -> Outcome {
    let space = moduli::enumerate_cells(2).map_err(err)?;
    for m in &space.gluing {
        let (ks, kt) = (space.cells[m.source].dim, space.cells[m.target].dim);
        let prod = linalg::mat_mul(&m.projection, &m.inclusion, ks, kt);
        ensure(prod == linalg::identity(kt), || format!("map {} -> {} does not split", m.source, m.target))?;
    }
    Ok(format!("{} maps", space.gluing.len()))
}

pub fn point_lifts(seed: u64, samples: usize) -> Outcome {
    let space = moduli::enumerate_cells(2).map_err(err)?;
    let r = moduli::beta_check(&space, samples, seed);
    ensure(r.ok(), || r.failures.join("; "))?;
    Ok(format!("{} points", r.points))
}

fn biconnected_corpus() -> Vec<(&'static str, MultiGraph)> {
    corpus::graphs()
        .into_iter()
        .filter(|(_, g)| g.num_edges() >= 2 && g.num_edges() <= 5 && g.is_biconnected())
        .collect()
}

pub fn kernel_lattice() -> Outcome {
    let mut ranks = Vec::new();
    for (name, g) in biconnected_corpus() {
        let r = toric::kernel_report(&g).map_err(err)?;
        ensure(r.ok(), || format!("{name}: {r:?}"))?;
        ranks.push(format!("{name}={}", r.kernel_rank));
    }
    Ok(ranks.join(" "))
}

pub fn torus_points(seed: u64) -> Outcome {
    let mut mutants = 0;
    for (name, g) in biconnected_corpus() {
        let r = toric::torus_point_report(&g, seed, 100).map_err(err)?;
        ensure(r.ok(), || format!("{name}: {r:?}"))?;
        mutants += r.mutants;
    }
    Ok(format!("{mutants} mutants refuted"))
}

fn blowup_schedule() -> Outcome {
    for (name, g) in biconnected_corpus() {
        let mut from_schedule: Vec<EdgeSet> = toric::blowup_schedule(&g)
            .map_err(err)?
            .into_iter()
            .flat_map(|s| s.centers.into_iter().map(|c| c.contracted))
            .collect();
        let mut from_good: Vec<EdgeSet> = fan::good_sequence(&g)
            .map_err(err)?
            .into_iter()
            .map(|s| s.contracted)
            .filter(|s| !s.is_empty())
            .collect();
        from_schedule.sort();
        from_good.sort();
        ensure(from_schedule == from_good, || format!("{name}: schedule differs from good sequence"))?;
        ensure(
            toric::schedule_fan(&g).map_err(err)? == fan::sigma_y(&g).map_err(err)?,
            || format!("{name}: schedule does not reproduce the quotient fan"),
        )?;
    }
    Ok("biconnected corpus graphs".into())
}

fn quotient_product() -> Outcome {
    for (name, g) in corpus::graphs() {
        let blocks = g.edge_blocks();
        let axes = g.edge_list();
        // block-diagonal projection, blocks in order
        let mut projection = Vec::new();
        let mut prod: Option<Fan> = None;
        for b in &blocks {
            let q = LatticeQuotient::of_blocks(b);
            let local = b.edge_list();
            for row in &q.projection {
                projection.push(
                    axes.iter()
                        .map(|e| local.iter().position(|f| f == e).map_or_else(BigInt::zero, |i| row[i].clone()))
                        .collect(),
                );
            }
            let f = fan::sigma_y(b).map_err(err)?;
            prod = Some(match prod {
                None => f,
                Some(p) => p.product(&f),
            });
        }
        let q = LatticeQuotient {
            ambient: axes.len(),
            generators: blocks.iter().map(|b| cone::indicator(&axes, &b.edge_labels())).collect(),
            projection,
        };
        let direct = fan::quotient_fan(&fan::fan_sigma(&g).map_err(err)?, &q).map_err(err)?;
        let prod = prod.unwrap_or_else(|| Fan::new(Vec::new(), [BTreeSet::new()]));
        ensure(direct.maximal() == prod.maximal(), || format!("{name}: quotient fan is not the product"))?;
        let y = fan::sigma_y(&g).map_err(err)?;
        ensure(
            y.maximal().len() == prod.maximal().len() && y.rays().len() == prod.rays().len(),
            || format!("{name}: quotient shape differs from the product"),
        )?;
    }
    Ok("all corpus graphs".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let r = verify_all(DEFAULT_SEED);
        assert!(r.passed(), "{}", r.to_text());
    }
}
