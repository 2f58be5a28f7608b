//! Simplicial fans: the fan of a graph, star subdivisions, point location and
//! quotients by sublattices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cone::{self, RationalCone};
use crate::enriched::{self, EnrichedGraph, DEFAULT_EDGE_GUARD};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::label::{EdgeLabel, EdgeSet};
use crate::linalg::{self, Matrix, Vector};
use crate::preorder::Preorder;

/// A cone of a fan, as its set of primitive rays.
pub type ConeRays = BTreeSet<Vector>;

/// A fan stored by its maximal cones. Every cone is simplicial, so faces are
/// exactly the ray subsets of maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    axes: Vec<String>,
    maximal: BTreeSet<ConeRays>,
}

fn unit(n: usize, i: usize) -> Vector {
    (0..n)
        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
        .collect()
}

impl Fan {
    /// Keeps only cones not contained in another.
    pub fn new(axes: Vec<String>, cones: impl IntoIterator<Item = ConeRays>) -> Self {
        let all: BTreeSet<ConeRays> = cones
            .into_iter()
            .map(|c| c.iter().map(|r| linalg::primitive(r)).collect())
            .collect();
        let maximal = all
            .iter()
            .filter(|c| !all.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
            .cloned()
            .collect();
        Fan { axes, maximal }
    }

    /// The nonnegative orthant with its faces.
    pub fn octant(axes: Vec<String>) -> Self {
        let n = axes.len();
        let cone: ConeRays = (0..n).map(|i| unit(n, i)).collect();
        Fan::new(axes, [cone])
    }

    pub fn axes(&self) -> &[String] {
        &self.axes
    }

    pub fn ambient(&self) -> usize {
        self.axes.len()
    }

    pub fn maximal(&self) -> &BTreeSet<ConeRays> {
        &self.maximal
    }

    pub fn maximal_cones(&self) -> Vec<RationalCone> {
        self.maximal
            .iter()
            .map(|c| RationalCone::from_rays(self.ambient(), c.iter().cloned()))
            .collect()
    }

    /// Distinct rays, sorted.
    pub fn rays(&self) -> Vec<Vector> {
        let set: BTreeSet<&Vector> = self.maximal.iter().flatten().collect();
        set.into_iter().cloned().collect()
    }

    /// Every cone, faces included.
    pub fn all_cones(&self) -> BTreeSet<ConeRays> {
        let mut out = BTreeSet::new();
        for c in &self.maximal {
            let rays: Vec<&Vector> = c.iter().collect();
            for m in 0u64..(1u64 << rays.len()) {
                out.insert(
                    (0..rays.len())
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| rays[i].clone())
                        .collect(),
                );
            }
        }
        out
    }

    pub fn contains_cone(&self, tau: &ConeRays) -> bool {
        self.maximal.iter().any(|c| tau.is_subset(c))
    }

    pub fn dim(&self) -> usize {
        self.maximal.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal_cones().iter().all(RationalCone::is_smooth)
    }

    /// Replaces every cone `σ ⊇ τ` by the cones spanned by `u_τ` and the
    /// facets of `σ` not containing `τ`, where `u_τ` is the sum of `τ`'s rays.
    pub fn star_subdivision(&self, tau: &ConeRays) -> Result<Fan> {
        if tau.is_empty() || !self.contains_cone(tau) {
            return Err(Error::ConeNotInFan);
        }
        let u: Vector = (0..self.ambient())
            .map(|j| tau.iter().map(|r| &r[j]).sum())
            .collect();
        let u = linalg::primitive(&u);
        let mut out = BTreeSet::new();
        for sigma in &self.maximal {
            if !tau.is_subset(sigma) {
                out.insert(sigma.clone());
                continue;
            }
            let rays: Matrix = sigma.iter().cloned().collect();
            if !linalg::rows_extend_to_basis(&rays, self.ambient()) {
                return Err(Error::NotSmooth);
            }
            for t in tau {
                let mut c = sigma.clone();
                c.remove(t);
                c.insert(u.clone());
                out.insert(c);
            }
        }
        Ok(Fan::new(self.axes.clone(), out))
    }

    /// Product fan on the concatenated axes.
    pub fn product(&self, other: &Fan) -> Fan {
        let (n, m) = (self.ambient(), other.ambient());
        let pad_left = |r: &Vector| -> Vector {
            r.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), m)).collect()
        };
        let pad_right = |r: &Vector| -> Vector {
            std::iter::repeat_n(BigInt::zero(), n).chain(r.iter().cloned()).collect()
        };
        let mut cones = BTreeSet::new();
        for a in &self.maximal {
            for b in &other.maximal {
                cones.insert(a.iter().map(pad_left).chain(b.iter().map(pad_right)).collect());
            }
        }
        let axes = self.axes.iter().chain(&other.axes).cloned().collect();
        Fan::new(axes, cones)
    }

    /// Permutes coordinates so the axes follow `order`.
    pub fn reorder(&self, order: &[String]) -> Result<Fan> {
        let pos: Vec<usize> = order
            .iter()
            .map(|a| {
                self.axes
                    .iter()
                    .position(|b| b == a)
                    .ok_or(Error::DimensionMismatch {
                        expected: self.ambient(),
                        actual: order.len(),
                    })
            })
            .collect::<Result<_>>()?;
        if pos.len() != self.ambient() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient(),
                actual: order.len(),
            });
        }
        let cones = self
            .maximal
            .iter()
            .map(|c| c.iter().map(|r| pos.iter().map(|&i| r[i].clone()).collect()).collect());
        Ok(Fan::new(order.to_vec(), cones))
    }

    /// Pure of full dimension, and every facet is shared by exactly two
    /// maximal cones lying on opposite sides of it.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient();
        if n == 0 {
            return self.maximal.len() == 1;
        }
        if self.maximal.iter().any(|c| c.len() != n) || !self.is_smooth_or_simplicial() {
            return false;
        }
        let mut facets: BTreeMap<ConeRays, Vec<Vector>> = BTreeMap::new();
        for c in &self.maximal {
            for r in c {
                let mut f = c.clone();
                f.remove(r);
                facets.entry(f).or_default().push(r.clone());
            }
        }
        facets.iter().all(|(f, opposite)| {
            if opposite.len() != 2 {
                return false;
            }
            // sign of det(f, r) tells the side of the hyperplane span(f)
            let side = |r: &Vector| -> BigInt {
                let mut m: Matrix = f.iter().cloned().collect();
                m.push(r.clone());
                determinant(&m)
            };
            let (a, b) = (side(&opposite[0]), side(&opposite[1]));
            !a.is_zero() && !b.is_zero() && a.is_positive() != b.is_positive()
        })
    }

    fn is_smooth_or_simplicial(&self) -> bool {
        self.maximal_cones().iter().all(RationalCone::is_simplicial)
    }

    /// Maximal cones containing `x` in their closure.
    pub fn cones_containing(&self, x: &[BigRational]) -> Vec<RationalCone> {
        self.maximal_cones()
            .into_iter()
            .filter(|c| c.contains(x))
            .collect()
    }

    /// `{"lattice_rank", "axes", "rays", "maximal_cones"}` with ray indices.
    pub fn to_json(&self) -> serde_json::Value {
        let rays = self.rays();
        let index: BTreeMap<&Vector, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let cones: Vec<Vec<usize>> = self
            .maximal
            .iter()
            .map(|c| c.iter().map(|r| index[r]).collect())
            .collect();
        let rays_json: Vec<Vec<serde_json::Value>> = rays
            .iter()
            .map(|r| r.iter().map(big_to_json).collect())
            .collect();
        serde_json::json!({
            "lattice_rank": self.ambient(),
            "axes": self.axes,
            "rays": rays_json,
            "maximal_cones": cones,
        })
    }
}

fn big_to_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::String(x.to_string()),
    }
}

/// Exact determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(m: &Matrix) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

fn axes_of(g: &MultiGraph) -> Vec<String> {
    g.edge_list().iter().map(|e| e.to_string()).collect()
}

fn check_guard(g: &MultiGraph) -> Result<()> {
    if g.num_edges() > DEFAULT_EDGE_GUARD {
        return Err(Error::guard("fan edges", g.num_edges(), DEFAULT_EDGE_GUARD));
    }
    Ok(())
}

/// Maximal cones are the closures of `K(Γ,p)` over generic `p`.
pub fn fan_sigma(g: &MultiGraph) -> Result<Fan> {
    check_guard(g)?;
    let cones: Vec<ConeRays> = enriched::enumerate_generic(g)?
        .iter()
        .map(|eg| cone::ray_generators(eg).into_iter().collect())
        .collect();
    Ok(Fan::new(axes_of(g), cones))
}

/// One entry of a good sequence: the contracted set and the remaining edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodStep {
    pub contracted: EdgeSet,
    pub remaining: EdgeSet,
}

/// Contractions `Γ/S` that are biconnected with at least two edges, by
/// decreasing edge count, ties broken by the contracted set.
pub fn good_sequence(g: &MultiGraph) -> Result<Vec<GoodStep>> {
    good_sequence_with(g, false)
}

/// As [`good_sequence`]; with `include_single_edge` one-edge targets are
/// listed too (their subdivisions are trivial).
pub fn good_sequence_with(g: &MultiGraph, include_single_edge: bool) -> Result<Vec<GoodStep>> {
    check_guard(g)?;
    let edges = g.edge_list();
    let n = edges.len();
    let min = if include_single_edge { 1 } else { 2 };
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let s: EdgeSet = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| edges[i].clone())
            .collect();
        if n - s.len() < min {
            continue;
        }
        let h = g.contract(&s)?;
        if h.is_biconnected() {
            out.push(GoodStep {
                contracted: s,
                remaining: h.edge_labels(),
            });
        }
    }
    out.sort_by(|a, b| {
        b.remaining
            .len()
            .cmp(&a.remaining.len())
            .then_with(|| a.contracted.cmp(&b.contracted))
    });
    Ok(out)
}

/// Starts from the orthant and star-subdivides at `cone(E(Γ/S))` along the
/// good sequence.
pub fn fan_via_star(g: &MultiGraph) -> Result<Fan> {
    fan_via_star_with(g, false)
}

pub fn fan_via_star_with(g: &MultiGraph, include_single_edge: bool) -> Result<Fan> {
    let axes = g.edge_list();
    let mut fan = Fan::octant(axes_of(g));
    for step in good_sequence_with(g, include_single_edge)? {
        let tau: ConeRays = axes
            .iter()
            .enumerate()
            .filter(|(_, e)| step.remaining.contains(*e))
            .map(|(i, _)| unit(axes.len(), i))
            .collect();
        fan = fan.star_subdivision(&tau)?;
    }
    Ok(fan)
}

/// Same cones, compared exactly.
pub fn fan_equal(a: &Fan, b: &Fan) -> bool {
    a == b
}

/// The unique enriched structure whose open cone contains `x`. Coordinates
/// follow the sorted edge labels.
pub fn locate(g: &MultiGraph, x: &[BigRational]) -> Result<EnrichedGraph> {
    let edges = g.edge_list();
    if x.len() != edges.len() {
        return Err(Error::DimensionMismatch {
            expected: edges.len(),
            actual: x.len(),
        });
    }
    if let Some(i) = x.iter().position(|v| !v.is_positive()) {
        return Err(Error::NonPositive(edges[i].clone()));
    }
    let value: BTreeMap<EdgeLabel, BigRational> = edges.iter().cloned().zip(x.iter().cloned()).collect();
    let mut pairs = Vec::new();
    locate_rec(g, &value, &mut pairs)?;
    let p = Preorder::from_relations(edges, &pairs)?;
    EnrichedGraph::new(g.clone(), p)
}

fn locate_rec(
    g: &MultiGraph,
    x: &BTreeMap<EdgeLabel, BigRational>,
    pairs: &mut Vec<(EdgeLabel, EdgeLabel)>,
) -> Result<()> {
    if g.num_edges() <= 1 {
        return Ok(());
    }
    let blocks = g.edge_blocks();
    if blocks.len() > 1 {
        for b in &blocks {
            locate_rec(b, x, pairs)?;
        }
        return Ok(());
    }
    let edges = g.edge_labels();
    let min = edges.iter().map(|e| &x[e]).min().expect("nonempty");
    let bottom: EdgeSet = edges.iter().filter(|e| &x[*e] == min).cloned().collect();
    for e in &bottom {
        for f in &edges {
            pairs.push((e.clone(), f.clone()));
        }
    }
    if bottom.len() == edges.len() {
        return Ok(());
    }
    locate_rec(&g.contract(&bottom)?, x, pairs)
}

/// `Z^n → Z^n / sat(span(generators))` with an integral projection matrix
/// read off a Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub ambient: usize,
    pub generators: Matrix,
    pub projection: Matrix,
}

impl LatticeQuotient {
    pub fn new(ambient: usize, generators: Matrix) -> Self {
        let cols = generators.len();
        // n x k matrix whose columns are the generators
        let a: Matrix = (0..ambient)
            .map(|i| generators.iter().map(|g| g[i].clone()).collect())
            .collect();
        let s = linalg::smith(&a, ambient, cols);
        let projection = s.u[s.rank..].to_vec();
        LatticeQuotient {
            ambient,
            generators,
            projection,
        }
    }

    /// Quotient by the all-ones vector of each block carrying edges.
    pub fn of_blocks(g: &MultiGraph) -> Self {
        let axes = g.edge_list();
        let gens = g
            .edge_blocks()
            .iter()
            .map(|b| cone::indicator(&axes, &b.edge_labels()))
            .collect();
        LatticeQuotient::new(axes.len(), gens)
    }

    pub fn rank(&self) -> usize {
        self.projection.len()
    }

    pub fn project(&self, v: &[BigInt]) -> Vector {
        linalg::mat_vec(&self.projection, v)
    }
}

/// Image of a fan under a lattice quotient. Rays mapping to zero are dropped;
/// the remaining images of each cone must stay linearly independent.
pub fn quotient_fan(f: &Fan, q: &LatticeQuotient) -> Result<Fan> {
    if q.ambient != f.ambient() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient(),
            actual: q.ambient,
        });
    }
    let mut cones = Vec::new();
    for c in f.maximal() {
        let image: ConeRays = c
            .iter()
            .map(|r| q.project(r))
            .filter(|r| !linalg::is_zero_vec(r))
            .map(|r| linalg::primitive(&r))
            .collect();
        let m: Matrix = image.iter().cloned().collect();
        if linalg::rank(&m, m.len(), q.rank()) != m.len() {
            return Err(Error::NotStronglyConvex);
        }
        cones.push(image);
    }
    let axes = (0..q.rank()).map(|i| format!("q{i}")).collect();
    Ok(Fan::new(axes, cones))
}

/// The fan of the variety of enriched structures: `Σ_Γ` modulo block diagonals.
pub fn sigma_y(g: &MultiGraph) -> Result<Fan> {
    quotient_fan(&fan_sigma(g)?, &LatticeQuotient::of_blocks(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::label::edge_set;
    use crate::linalg::{int_vec, to_rational};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn triangle_fan_has_six_smooth_cones() {
        let f = fan_sigma(&corpus::triangle()).unwrap();
        assert_eq!(f.maximal().len(), 6);
        assert!(f.maximal().iter().all(|c| c.len() == 3));
        assert!(f.is_smooth());
    }

    #[test]
    fn theta_fan_has_three_cones_and_single_edge_is_the_octant() {
        assert_eq!(fan_sigma(&corpus::theta(3)).unwrap().maximal().len(), 3);
        let e = fan_sigma(&corpus::single_edge()).unwrap();
        assert_eq!(e, Fan::octant(names(&["e"])));
    }

    #[test]
    fn star_subdivision_of_the_octant() {
        let oct = Fan::octant(names(&["x", "y", "z"]));
        let tau: ConeRays = oct.maximal().first().unwrap().clone();
        let s = oct.star_subdivision(&tau).unwrap();
        assert_eq!(s.maximal().len(), 3);
        assert!(s.maximal().iter().all(|c| c.contains(&int_vec(&[1, 1, 1]))));

        let ray: ConeRays = [int_vec(&[1, 0, 0])].into();
        assert_eq!(oct.star_subdivision(&ray).unwrap(), oct);

        let missing: ConeRays = [int_vec(&[1, 1, 0])].into();
        assert_eq!(oct.star_subdivision(&missing), Err(Error::ConeNotInFan));
    }

    #[test]
    fn star_subdivision_refuses_singular_cones() {
        let f = Fan::new(names(&["x", "y"]), [[int_vec(&[1, 0]), int_vec(&[1, 2])].into()]);
        let tau: ConeRays = [int_vec(&[1, 0])].into();
        assert_eq!(f.star_subdivision(&tau), Err(Error::NotSmooth));
    }

    #[test]
    fn star_subdivision_acts_on_one_factor_of_a_product() {
        let a = Fan::octant(names(&["x", "y"]));
        let b = Fan::octant(names(&["z"]));
        let tau: ConeRays = a.maximal().first().unwrap().clone();
        let lifted: ConeRays = tau
            .iter()
            .map(|r| r.iter().cloned().chain([BigInt::zero()]).collect())
            .collect();
        let left = a.star_subdivision(&tau).unwrap().product(&b);
        let right = a.product(&b).star_subdivision(&lifted).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn good_sequences() {
        let theta = good_sequence(&corpus::theta(3)).unwrap();
        assert_eq!(theta.len(), 1);
        assert!(theta[0].contracted.is_empty());

        let c3 = good_sequence(&corpus::triangle()).unwrap();
        let contracted: Vec<EdgeSet> = c3.iter().map(|s| s.contracted.clone()).collect();
        assert_eq!(
            contracted,
            vec![EdgeSet::new(), edge_set(["a"]), edge_set(["b"]), edge_set(["c"])]
        );

        let path = MultiGraph::from_edges(&[("x", "u", "v"), ("y", "v", "w")]).unwrap();
        assert!(good_sequence(&path).unwrap().is_empty());
        assert_eq!(good_sequence_with(&path, true).unwrap().len(), 2);
    }

    #[test]
    fn star_pipeline_matches_direct_construction() {
        for (name, g) in corpus::graphs() {
            let direct = fan_sigma(&g).unwrap();
            assert!(fan_equal(&fan_via_star(&g).unwrap(), &direct), "{name}");
            assert!(fan_equal(&fan_via_star_with(&g, true).unwrap(), &direct), "{name}");
        }
    }

    #[test]
    fn locate_examples() {
        let c3 = corpus::triangle();
        let eg = locate(&c3, &to_rational(&int_vec(&[2, 1, 1]))).unwrap();
        let p = eg.preorder();
        let l = EdgeLabel::new;
        assert!(p.equiv(&l("b"), &l("c")) && p.less(&l("b"), &l("a")));

        let theta = corpus::theta(3);
        let eg = locate(&theta, &to_rational(&int_vec(&[1, 2, 4]))).unwrap();
        assert!(eg.preorder().less(&l("a"), &l("b")));
        assert!(eg.preorder().less(&l("a"), &l("c")));
        assert!(!eg.preorder().comparable(&l("b"), &l("c")));

        let eg = locate(&c3, &to_rational(&int_vec(&[3, 3, 3]))).unwrap();
        assert_eq!(eg.rank(), 1);

        assert_eq!(
            locate(&c3, &to_rational(&int_vec(&[1, 0, 1]))),
            Err(Error::NonPositive(l("b")))
        );
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant(&linalg::int_matrix(&[&[1, 0], &[1, 2]])), BigInt::from(2));
        assert_eq!(
            determinant(&linalg::int_matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&linalg::int_matrix(&[&[2, 1, 1], &[1, 3, 2], &[1, 0, 0]])),
            BigInt::from(-1)
        );
    }

    #[test]
    fn quotient_of_theta_fans_is_projective_space() {
        for n in 2..=4 {
            let y = sigma_y(&corpus::theta(n)).unwrap();
            assert_eq!(y.ambient(), n - 1);
            let rays = y.rays();
            assert_eq!(rays.len(), n);
            let sum: Vector = (0..n - 1).map(|j| rays.iter().map(|r| &r[j]).sum()).collect();
            assert!(linalg::is_zero_vec(&sum));
            assert_eq!(y.maximal().len(), n);
            assert!(y.is_complete());
        }
    }

    #[test]
    fn quotient_of_triangle_fan() {
        let y = sigma_y(&corpus::triangle()).unwrap();
        assert_eq!(y.ambient(), 2);
        assert_eq!(y.rays().len(), 6);
        assert_eq!(y.maximal().len(), 6);
        assert!(y.is_complete());
        assert!(y.is_smooth());
    }

    #[test]
    fn dumbbell_quotient_is_a_point() {
        let y = sigma_y(&corpus::dumbbell()).unwrap();
        assert_eq!(y.ambient(), 0);
        assert!(y.is_complete());
    }

    #[test]
    fn fan_json_shape() {
        let j = fan_sigma(&corpus::theta(3)).unwrap().to_json();
        assert_eq!(j["lattice_rank"], 3);
        assert_eq!(j["maximal_cones"].as_array().unwrap().len(), 3);
        assert_eq!(j["rays"].as_array().unwrap().len(), 4);
    }
}
