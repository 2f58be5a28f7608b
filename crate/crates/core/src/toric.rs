//! Equations of the variety of enriched structures inside a product of
//! projective spaces, one per bond, and its blowup description.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone;
use crate::enriched::{self, EnrichedGraph};
use crate::error::{Error, Result};
use crate::fan::{ConeRays, Fan, LatticeQuotient};
use crate::graph::{Bond, MultiGraph};
use crate::label::{EdgeLabel, EdgeSet};
use crate::linalg::{self, Matrix, Vector};

/// Edge limit for kernel verification and schedules.
pub const TORIC_EDGE_GUARD: usize = 10;

fn require_biconnected(g: &MultiGraph) -> Result<()> {
    if g.num_edges() < 2 || !g.is_biconnected() {
        return Err(Error::NotBiconnected);
    }
    Ok(())
}

fn guard(g: &MultiGraph) -> Result<()> {
    if g.num_edges() > TORIC_EDGE_GUARD {
        return Err(Error::guard("toric edges", g.num_edges(), TORIC_EDGE_GUARD));
    }
    Ok(())
}

/// Coordinate deletion `Z^E → Z^B` onto the edges of a bond.
#[derive(Clone, Debug, Serialize)]
pub struct BondProjection {
    pub bond: Bond,
    pub edges: Vec<EdgeLabel>,
    /// `|B| × |E|` 0/1 matrix.
    pub matrix: Matrix,
    #[serde(skip)]
    pub quotient: LatticeQuotient,
    /// For each enriched structure, the minima of the bond whose cone
    /// contains the image of the structure's cone.
    pub certificate: Vec<(String, EdgeSet)>,
}

impl BondProjection {
    pub fn apply(&self, x: &[BigInt]) -> Vector {
        linalg::mat_vec(&self.matrix, x)
    }
}

/// Whether `y` (coordinates on the bond's sorted edges) lies in the closed cone
/// where the edges of `t` are minimal and equal; with `open`, the other
/// entries must be strictly larger.
fn in_minimum_cone(bond_edges: &[EdgeLabel], t: &EdgeSet, y: &[BigInt], open: bool) -> bool {
    let tv: Vec<&BigInt> = bond_edges
        .iter()
        .zip(y)
        .filter(|(e, _)| t.contains(*e))
        .map(|(_, v)| v)
        .collect();
    let Some(&m) = tv.first() else { return false };
    if tv.iter().any(|v| *v != m) {
        return false;
    }
    bond_edges.iter().zip(y).filter(|(e, _)| !t.contains(*e)).all(|(_, v)| {
        if open {
            v > m
        } else {
            v >= m
        }
    })
}

/// The projection onto a bond, certified against every enriched structure.
pub fn bond_projection(g: &MultiGraph, b: &Bond) -> Result<BondProjection> {
    require_biconnected(g)?;
    if !g.bonds()?.contains(b) {
        return Err(Error::NotABond);
    }
    let edges = g.edge_list();
    let bond_edges: Vec<EdgeLabel> = b.edges.iter().cloned().collect();
    let matrix: Matrix = bond_edges
        .iter()
        .map(|be| {
            edges
                .iter()
                .map(|e| if e == be { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let ones = vec![vec![BigInt::one(); bond_edges.len()]];
    let quotient = LatticeQuotient::new(bond_edges.len(), ones);
    let mut proj = BondProjection {
        bond: b.clone(),
        edges,
        matrix,
        quotient,
        certificate: Vec::new(),
    };
    for eg in enriched::enumerate_enriched(g)? {
        let t = enriched::bond_minima(&eg, b)?;
        let rays = cone::ray_generators(&eg);
        let mut inner = vec![BigInt::zero(); proj.edges.len()];
        for r in &rays {
            if !in_minimum_cone(&bond_edges, &t, &proj.apply(r), false) {
                return Err(Error::InvalidBondSubset(format!(
                    "{} image leaves the cone of {:?}",
                    eg.preorder().describe(),
                    t
                )));
            }
            for (a, v) in inner.iter_mut().zip(r) {
                *a += v;
            }
        }
        if !in_minimum_cone(&bond_edges, &t, &proj.apply(&inner), true) {
            return Err(Error::InvalidBondSubset(format!(
                "{} interior image leaves the open cone of {:?}",
                eg.preorder().describe(),
                t
            )));
        }
        proj.certificate.push((eg.preorder().describe(), t));
    }
    Ok(proj)
}

/// The two families of relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RelationKind {
    /// Two bonds sharing two edges.
    Binomial,
    /// Three bonds with `B3 = B1 + B2`.
    Trinomial,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Term {
    pub bond: usize,
    pub edge: EdgeLabel,
    pub exponent: i64,
}

/// A monomial relation `∏ (x_e^B)^{ℓ} = 1`; exponents sum to zero on each bond.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LaurentRelation {
    pub kind: RelationKind,
    /// Nonzero terms sorted by bond then edge.
    pub terms: Vec<Term>,
}

impl LaurentRelation {
    pub fn exponent_of(&self, bond: usize, edge: &EdgeLabel) -> i64 {
        self.terms
            .iter()
            .find(|t| t.bond == bond && &t.edge == edge)
            .map_or(0, |t| t.exponent)
    }
}

/// Coordinates `(B, e)` of `⊕_B Z^B`, bond by bond.
#[derive(Clone, Debug)]
struct Coords {
    index: BTreeMap<(usize, EdgeLabel), usize>,
    keys: Vec<(usize, EdgeLabel)>,
}

impl Coords {
    fn new(bonds: &[Bond]) -> Self {
        let keys: Vec<(usize, EdgeLabel)> = bonds
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.edges.iter().map(move |e| (i, e.clone())))
            .collect();
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Coords { index, keys }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn vector(&self, r: &LaurentRelation) -> Vector {
        let mut v = vec![BigInt::zero(); self.len()];
        for t in &r.terms {
            v[self.index[&(t.bond, t.edge.clone())]] = BigInt::from(t.exponent);
        }
        v
    }

    fn relation(&self, kind: RelationKind, v: &[i64]) -> LaurentRelation {
        let sign = v.iter().find(|x| **x != 0).map_or(1, |x| x.signum());
        let terms = self
            .keys
            .iter()
            .zip(v)
            .filter(|(_, x)| **x != 0)
            .map(|((b, e), x)| Term {
                bond: *b,
                edge: e.clone(),
                exponent: sign * x,
            })
            .collect();
        LaurentRelation { kind, terms }
    }
}

/// Bonds with the relations among their coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct ToricEquations {
    pub edges: Vec<EdgeLabel>,
    pub bonds: Vec<Bond>,
    pub relations: Vec<LaurentRelation>,
}

impl ToricEquations {
    fn coords(&self) -> Coords {
        Coords::new(&self.bonds)
    }

    fn variable(&self, bond: usize, edge: &EdgeLabel) -> String {
        format!("x_{{{edge}}}^{{{}}}", self.bonds[bond].name())
    }

    /// `lhs = rhs` with positive exponents on the left.
    pub fn render(&self, r: &LaurentRelation) -> String {
        let side = |positive: bool| -> String {
            let parts: Vec<String> = r
                .terms
                .iter()
                .filter(|t| (t.exponent > 0) == positive)
                .map(|t| {
                    let v = self.variable(t.bond, &t.edge);
                    match t.exponent.abs() {
                        1 => v,
                        k => format!("({v})^{k}"),
                    }
                })
                .collect();
            parts.join(" ")
        };
        format!("{} = {}", side(true), side(false))
    }

    pub fn rendered(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.render(r)).collect()
    }

    /// Plain polynomial text: one generator per line, variables `x_<edge>_<bond>`
    /// with bonds numbered from 1.
    pub fn ideal_text(&self) -> String {
        let var = |t: &Term| format!("x_{}_{}", t.edge, t.bond + 1);
        let mono = |r: &LaurentRelation, positive: bool| -> String {
            let parts: Vec<String> = r
                .terms
                .iter()
                .filter(|t| (t.exponent > 0) == positive)
                .map(|t| match t.exponent.abs() {
                    1 => var(t),
                    k => format!("{}^{k}", var(t)),
                })
                .collect();
            parts.join("*")
        };
        let mut s = String::new();
        for (i, b) in self.bonds.iter().enumerate() {
            let _ = writeln!(s, "-- bond {}: {}", i + 1, b.name());
        }
        let gens: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} - {}", mono(r, true), mono(r, false)))
            .collect();
        let _ = writeln!(s, "ideal(\n  {}\n)", gens.join(",\n  "));
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let bonds: Vec<serde_json::Value> = self
            .bonds
            .iter()
            .enumerate()
            .map(|(i, b)| serde_json::json!({"index": i, "edges": b.edges, "side": b.side}))
            .collect();
        serde_json::json!({
            "bonds": bonds,
            "relations": self.relations,
            "rendered": self.rendered(),
        })
    }
}

/// Both relation families, deduplicated up to sign.
pub fn equations(g: &MultiGraph) -> Result<ToricEquations> {
    require_biconnected(g)?;
    let bonds = g.bonds()?;
    let coords = Coords::new(&bonds);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut relations = Vec::new();
    let mut push = |kind: RelationKind, entries: &[(usize, &EdgeLabel, i64)]| {
        let mut v = vec![0i64; coords.len()];
        for (b, e, x) in entries {
            v[coords.index[&(*b, (*e).clone())]] += x;
        }
        if v.iter().all(|x| *x == 0) {
            return;
        }
        let sign = v.iter().find(|x| **x != 0).map_or(1, |x| x.signum());
        let canon: Vec<i64> = v.iter().map(|x| sign * x).collect();
        if seen.insert(canon.clone()) {
            relations.push(coords.relation(kind, &canon));
        }
    };
    for i in 0..bonds.len() {
        for j in i + 1..bonds.len() {
            let shared: Vec<&EdgeLabel> = bonds[i].edges.intersection(&bonds[j].edges).collect();
            for (a, e1) in shared.iter().enumerate() {
                for e2 in &shared[a + 1..] {
                    push(
                        RelationKind::Binomial,
                        &[(i, e1, 1), (j, e2, 1), (i, e2, -1), (j, e1, -1)],
                    );
                }
            }
        }
    }
    let position: BTreeMap<&EdgeSet, usize> =
        bonds.iter().enumerate().map(|(i, b)| (&b.edges, i)).collect();
    for (i, b1) in bonds.iter().enumerate() {
        for (j, b2) in bonds.iter().enumerate() {
            if i == j {
                continue;
            }
            let (s1, c1) = b1.sides(g);
            let (s2, c2) = b2.sides(g);
            for v1 in [&s1, &c1] {
                for v2 in [&s2, &c2] {
                    if !v1.is_disjoint(v2) {
                        continue;
                    }
                    let Ok(b3) = g.bond_sum(v1, v2) else { continue };
                    let k = position[&b3.edges];
                    for e1 in b1.edges.intersection(&b3.edges) {
                        for e2 in b1.edges.intersection(&b2.edges) {
                            for e3 in b2.edges.intersection(&b3.edges) {
                                push(
                                    RelationKind::Trinomial,
                                    &[
                                        (i, e1, 1),
                                        (i, e2, -1),
                                        (j, e2, 1),
                                        (j, e3, -1),
                                        (k, e3, 1),
                                        (k, e1, -1),
                                    ],
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    relations.sort();
    Ok(ToricEquations {
        edges: g.edge_list(),
        bonds,
        relations,
    })
}

/// Kernel of the dual restriction map, computed without the relations.
#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub bonds: usize,
    pub relations: usize,
    pub kernel_rank: usize,
    pub expected_rank: usize,
    /// Every relation lies in the kernel.
    pub contained: bool,
    /// The relations span the kernel lattice over the integers.
    pub generates: bool,
}

impl KernelReport {
    pub fn ok(&self) -> bool {
        self.contained && self.generates && self.kernel_rank == self.expected_rank
    }
}

/// `{ℓ ∈ ⊕_B Z^B : Σ_{e∈B} ℓ_{B,e} = 0 for each B, Σ_B ℓ_{B,e} = 0 for each e}`.
fn kernel_basis(edges: &[EdgeLabel], bonds: &[Bond], coords: &Coords) -> Matrix {
    let n = coords.len();
    let mut rows: Matrix = Vec::new();
    for e in edges {
        rows.push(
            coords
                .keys
                .iter()
                .map(|(_, f)| if f == e { BigInt::one() } else { BigInt::zero() })
                .collect(),
        );
    }
    for i in 0..bonds.len() {
        rows.push(
            coords
                .keys
                .iter()
                .map(|(b, _)| if *b == i { BigInt::one() } else { BigInt::zero() })
                .collect(),
        );
    }
    linalg::integer_kernel(&rows, rows.len(), n)
}

pub fn kernel_report(g: &MultiGraph) -> Result<KernelReport> {
    guard(g)?;
    let eqs = equations(g)?;
    let coords = eqs.coords();
    let n = coords.len();
    let kernel = kernel_basis(&eqs.edges, &eqs.bonds, &coords);
    let rel: Matrix = eqs.relations.iter().map(|r| coords.vector(r)).collect();
    let kernel_q: Vec<Vec<BigRational>> = kernel.iter().map(|k| linalg::to_rational(k)).collect();
    let contained = rel
        .iter()
        .all(|v| linalg::solve_in_span(&kernel_q, &linalg::to_rational(v)).is_some());
    let generates = linalg::hermite(&rel, n) == linalg::hermite(&kernel, n);
    let domain: usize = eqs.bonds.iter().map(|b| b.edges.len() - 1).sum();
    Ok(KernelReport {
        bonds: eqs.bonds.len(),
        relations: eqs.relations.len(),
        kernel_rank: kernel.len(),
        expected_rank: domain + 1 - eqs.edges.len(),
        contained,
        generates,
    })
}

/// The relations generate the kernel lattice and nothing outside it.
pub fn verify_kernel(g: &MultiGraph) -> Result<bool> {
    Ok(kernel_report(g)?.ok())
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusReport {
    pub points: usize,
    pub relations: usize,
    /// (point, relation) pairs that failed.
    pub failures: usize,
    pub mutants: usize,
    /// Mutants refuted by at least one point.
    pub mutants_caught: usize,
}

impl TorusReport {
    pub fn ok(&self) -> bool {
        self.failures == 0 && self.mutants_caught == self.mutants
    }
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let num: i64 = rng.gen_range(-64..=64);
        let den: i64 = rng.gen_range(1..=64);
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        if !q.is_zero() && q.abs() != BigRational::one() {
            return q;
        }
    }
}

fn evaluate(
    r: &LaurentRelation,
    x: &BTreeMap<EdgeLabel, BigRational>,
    scale: &[BigRational],
) -> BigRational {
    r.terms.iter().fold(BigRational::one(), |acc, t| {
        let v = &scale[t.bond] * &x[&t.edge];
        acc * v.pow(i32::try_from(t.exponent).expect("small exponent"))
    })
}

/// Evaluates every relation at torus points `(λ_B x|_B)_B` with random
/// nonzero `x` and rescalings `λ_B`; each single-exponent `+1` mutant must be
/// refuted by some point.
pub fn torus_point_report(g: &MultiGraph, seed: u64, points: usize) -> Result<TorusReport> {
    let eqs = equations(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mutants: Vec<LaurentRelation> = Vec::new();
    for r in &eqs.relations {
        for (i, _) in r.terms.iter().enumerate() {
            let mut m = r.clone();
            m.terms[i].exponent += 1;
            mutants.push(m);
        }
    }
    let mut caught = vec![false; mutants.len()];
    let mut failures = 0;
    for _ in 0..points {
        let x: BTreeMap<EdgeLabel, BigRational> = eqs
            .edges
            .iter()
            .map(|e| (e.clone(), nonzero_rational(&mut rng)))
            .collect();
        let scale: Vec<BigRational> = eqs.bonds.iter().map(|_| nonzero_rational(&mut rng)).collect();
        for r in &eqs.relations {
            if !evaluate(r, &x, &scale).is_one() {
                failures += 1;
            }
        }
        for (m, c) in mutants.iter().zip(caught.iter_mut()) {
            if !evaluate(m, &x, &scale).is_one() {
                *c = true;
            }
        }
    }
    Ok(TorusReport {
        points,
        relations: eqs.relations.len(),
        failures,
        mutants: mutants.len(),
        mutants_caught: caught.iter().filter(|c| **c).count(),
    })
}

/// 100 torus points per call.
pub fn torus_point_check(g: &MultiGraph, seed: u64) -> Result<bool> {
    Ok(torus_point_report(g, seed, 100)?.ok())
}

/// A linear center `{x_e = 0 : e ∈ E(Γ/S)}` of the projective space `P(C^E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupCenter {
    pub contracted: EdgeSet,
    pub vanishing: EdgeSet,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupStage {
    /// Number of contracted edges; the centers have dimension `size - 1`.
    pub size: usize,
    pub centers: Vec<BlowupCenter>,
}

/// Centers blown up in order: stage `k` holds the sets `S` of size `k` with
/// `Γ/S` biconnected with at least two edges.
pub fn blowup_schedule(g: &MultiGraph) -> Result<Vec<BlowupStage>> {
    guard(g)?;
    if g.num_edges() >= 2 {
        require_biconnected(g)?;
    }
    let edges = g.edge_list();
    let n = edges.len();
    let mut stages: BTreeMap<usize, Vec<BlowupCenter>> = BTreeMap::new();
    for mask in 1u64..(1u64 << n) {
        let s: EdgeSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| edges[i].clone()).collect();
        if n - s.len() < 2 {
            continue;
        }
        let h = g.contract(&s)?;
        if h.is_biconnected() {
            stages.entry(s.len()).or_default().push(BlowupCenter {
                dim: s.len() - 1,
                vanishing: h.edge_labels(),
                contracted: s,
            });
        }
    }
    Ok(stages
        .into_iter()
        .map(|(size, mut centers)| {
            centers.sort_by(|a, b| a.contracted.cmp(&b.contracted));
            BlowupStage { size, centers }
        })
        .collect())
}

/// Applies the schedule to the fan of `P(C^E)` in the quotient lattice.
pub fn schedule_fan(g: &MultiGraph) -> Result<Fan> {
    let schedule = blowup_schedule(g)?;
    let edges = g.edge_list();
    let q = LatticeQuotient::of_blocks(g);
    let image = |e: &EdgeLabel| {
        let unit = cone::indicator(&edges, &EdgeSet::from([e.clone()]));
        linalg::primitive(&q.project(&unit))
    };
    // the fan of P(C^E): all images but one span a maximal cone
    let projective = edges.iter().map(|skip| {
        edges
            .iter()
            .filter(|e| *e != skip)
            .map(image)
            .collect::<ConeRays>()
    });
    let axes = (0..q.rank()).map(|i| format!("q{i}")).collect();
    let mut f = Fan::new(axes, projective);
    for stage in &schedule {
        for c in &stage.centers {
            let tau: ConeRays = c.vanishing.iter().map(image).collect();
            f = f.star_subdivision(&tau)?;
        }
    }
    Ok(f)
}

/// `|E| −` number of blocks carrying edges.
pub fn dim_ey(g: &MultiGraph) -> usize {
    g.num_edges() - g.edge_blocks().len()
}

/// Bond minima of every structure, as a map from bond to minima.
pub fn bond_data(eg: &EnrichedGraph) -> Result<BTreeMap<EdgeSet, EdgeSet>> {
    let mut out = BTreeMap::new();
    for b in eg.graph().bonds()? {
        out.insert(b.edges.clone(), enriched::bond_minima(eg, &b)?);
    }
    Ok(out)
}
