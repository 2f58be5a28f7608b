//! Exact rational polyhedral cones and the cones attached to enriched graphs.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enriched::EnrichedGraph;
use crate::label::{EdgeLabel, EdgeSet};
use crate::linalg::{self, Vector};

/// `normal · x  (= | ≥ | >)  0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    Equal,
    NonNeg,
    Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Halfspace {
    pub normal: Vector,
    pub relation: Relation,
}

impl Halfspace {
    fn value(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (a, b) in self.normal.iter().zip(x) {
            if a.is_zero() {
                continue;
            }
            if a.is_one() {
                acc += b;
            } else if (-a).is_one() {
                acc -= b;
            } else {
                acc += BigRational::from_integer(a.clone()) * b;
            }
        }
        acc
    }

    /// Whether `x` satisfies the constraint; `closed` weakens `>` to `≥`.
    pub fn holds(&self, x: &[BigRational], closed: bool) -> bool {
        let v = self.value(x);
        match self.relation {
            Relation::Equal => v.is_zero(),
            Relation::NonNeg => !v.is_negative(),
            Relation::Pos if closed => !v.is_negative(),
            Relation::Pos => v.is_positive(),
        }
    }
}

/// A simplicial rational cone given by primitive ray generators, optionally
/// with the halfspace description it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RationalCone {
    ambient: usize,
    rays: Vec<Vector>,
    halfspaces: Vec<Halfspace>,
}

impl RationalCone {
    /// Rays are made primitive, deduplicated and sorted; zero vectors dropped.
    pub fn from_rays(ambient: usize, rays: impl IntoIterator<Item = Vector>) -> Self {
        let set: BTreeSet<Vector> = rays
            .into_iter()
            .filter(|r| !linalg::is_zero_vec(r))
            .map(|r| linalg::primitive(&r))
            .collect();
        RationalCone {
            ambient,
            rays: set.into_iter().collect(),
            halfspaces: Vec::new(),
        }
    }

    pub fn with_halfspaces(mut self, hs: Vec<Halfspace>) -> Self {
        self.halfspaces = hs;
        self
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn ray_set(&self) -> BTreeSet<Vector> {
        self.rays.iter().cloned().collect()
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Dimension of the linear span of the rays.
    pub fn dim(&self) -> usize {
        linalg::rank(&self.rays, self.rays.len(), self.ambient)
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    /// Rays extend to a lattice basis.
    pub fn is_smooth(&self) -> bool {
        linalg::rows_extend_to_basis(&self.rays, self.ambient)
    }

    /// Coefficients of `x` in the ray basis, if `x` is in the span.
    pub fn coordinates(&self, x: &[BigRational]) -> Option<Vec<BigRational>> {
        let gens: Vec<Vec<BigRational>> = self.rays.iter().map(|r| linalg::to_rational(r)).collect();
        linalg::solve_in_span(&gens, x)
    }

    /// Membership in the closed cone via the ray description.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.coordinates(x)
            .is_some_and(|c| c.iter().all(|v| !v.is_negative()))
    }

    /// Membership in the relative interior via the ray description.
    pub fn contains_relint(&self, x: &[BigRational]) -> bool {
        self.coordinates(x)
            .is_some_and(|c| c.iter().all(|v| v.is_positive()))
    }

    /// Membership via the stored halfspaces; `closed` relaxes strict ones.
    pub fn satisfies_halfspaces(&self, x: &[BigRational], closed: bool) -> bool {
        self.halfspaces.iter().all(|h| h.holds(x, closed))
    }

    /// Every face, as ray subsets, including the zero cone and the cone itself.
    pub fn faces(&self) -> Vec<RationalCone> {
        let k = self.rays.len();
        (0u64..(1u64 << k))
            .map(|m| {
                RationalCone::from_rays(
                    self.ambient,
                    (0..k).filter(|i| m >> i & 1 == 1).map(|i| self.rays[i].clone()),
                )
            })
            .collect()
    }

    /// Sum of the ray generators.
    pub fn barycenter(&self) -> Vector {
        (0..self.ambient)
            .map(|j| self.rays.iter().map(|r| &r[j]).sum())
            .collect()
    }
}

/// Indicator vector of `s` in coordinates `axes`.
pub fn indicator(axes: &[EdgeLabel], s: &EdgeSet) -> Vector {
    axes.iter()
        .map(|e| if s.contains(e) { BigInt::one() } else { BigInt::zero() })
        .collect()
}

/// `v_T` for every irreducible upper set `T`, in the coordinates of the edges.
pub fn ray_generators(eg: &EnrichedGraph) -> Vec<Vector> {
    let axes = eg.graph().edge_list();
    let mut rays: Vec<Vector> = eg
        .preorder()
        .irreducible_upper_sets()
        .iter()
        .map(|t| indicator(&axes, t))
        .collect();
    rays.sort();
    rays
}

/// `K(Γ,p)` with its defining halfspaces and the rays of its closure.
pub fn cone_k(eg: &EnrichedGraph) -> RationalCone {
    let axes = eg.graph().edge_list();
    let n = axes.len();
    let p = eg.preorder();
    let unit = |i: usize, c: i64| -> Vector {
        (0..n).map(|j| BigInt::from(if i == j { c } else { 0 })).collect()
    };
    let mut hs = Vec::new();
    for i in 0..n {
        hs.push(Halfspace {
            normal: unit(i, 1),
            relation: Relation::Pos,
        });
    }
    for (i, a) in axes.iter().enumerate() {
        for (j, b) in axes.iter().enumerate() {
            if i == j || !p.leq(a, b) {
                continue;
            }
            let normal: Vector = (0..n)
                .map(|k| {
                    BigInt::from(match k {
                        _ if k == j => 1,
                        _ if k == i => -1,
                        _ => 0,
                    })
                })
                .collect();
            let relation = if p.leq(b, a) {
                Relation::Equal
            } else {
                Relation::Pos
            };
            hs.push(Halfspace { normal, relation });
        }
    }
    RationalCone::from_rays(n, ray_generators(eg)).with_halfspaces(hs)
}

/// Integer matrix of `y_[e] = x_e - x_parent` on class representatives
/// (`y = x_e` at Hasse roots). Rows follow the class order, columns the edges.
pub fn theta_map(eg: &EnrichedGraph) -> Vec<Vector> {
    let axes = eg.graph().edge_list();
    let q = eg.preorder().quotient();
    let parents = q.parents();
    let col = |c: usize| {
        let rep = q.classes[c].first().expect("nonempty class");
        axes.binary_search(rep).expect("edge of the graph")
    };
    (0..q.rank())
        .map(|c| {
            let mut row = vec![BigInt::zero(); axes.len()];
            row[col(c)] += 1;
            if let Some(par) = parents[c] {
                row[col(par)] -= 1;
            }
            row
        })
        .collect()
}

/// Inverse of [`theta_map`] on the span of the cone: column `c` is the image of
/// the unit vector of class `c`. Rows follow the edges.
pub fn theta_inverse(eg: &EnrichedGraph) -> Vec<Vector> {
    let axes = eg.graph().edge_list();
    let q = eg.preorder().quotient();
    let parents = q.parents();
    // x_e is the sum of y over the chain from the root to the class of e
    axes.iter()
        .map(|e| {
            let mut row = vec![BigInt::zero(); q.rank()];
            let mut c = q.class_index(e);
            while let Some(k) = c {
                row[k] += 1;
                c = parents[k];
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::enriched::enumerate_enriched;
    use crate::linalg::{int_vec, mat_vec};

    fn rat(v: &[i64]) -> Vec<BigRational> {
        linalg::to_rational(&int_vec(v))
    }

    fn theta_generic() -> EnrichedGraph {
        EnrichedGraph::from_pairs(corpus::theta(3), &[("a", "b"), ("a", "c")]).unwrap()
    }

    #[test]
    fn generic_theta_rays() {
        let k = cone_k(&theta_generic());
        let want: BTreeSet<Vector> =
            [int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1]), int_vec(&[1, 1, 1])].into();
        assert_eq!(k.ray_set(), want);
        assert_eq!(k.dim(), 3);
        assert!(k.is_smooth());
    }

    #[test]
    fn canonical_theta_is_a_ray() {
        let k = cone_k(&EnrichedGraph::canonical(corpus::theta(3)));
        assert_eq!(k.rays(), &[int_vec(&[1, 1, 1])]);
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn p3_cone_has_dimension_three() {
        let p3 = EnrichedGraph::from_pairs(
            corpus::figure1(),
            &[("e1", "e3"), ("e3", "e1"), ("e3", "e2"), ("e3", "e4")],
        )
        .unwrap();
        assert_eq!(cone_k(&p3).dim(), 3);
    }

    #[test]
    fn chain_rays() {
        let chain =
            EnrichedGraph::from_pairs(corpus::triangle(), &[("a", "b"), ("b", "c")]).unwrap();
        let want = vec![int_vec(&[0, 0, 1]), int_vec(&[0, 1, 1]), int_vec(&[1, 1, 1])];
        assert_eq!(ray_generators(&chain), want);
    }

    #[test]
    fn smoothness_by_determinant() {
        let bad = RationalCone::from_rays(2, [int_vec(&[1, 0]), int_vec(&[1, 2])]);
        assert!(!bad.is_smooth());
        let good = RationalCone::from_rays(2, [int_vec(&[1, 0]), int_vec(&[1, 1])]);
        assert!(good.is_smooth());
    }

    #[test]
    fn theta_map_example() {
        let eg = theta_generic();
        let m = theta_map(&eg);
        let y = mat_vec(&m, &int_vec(&[1, 2, 4]));
        // classes in order [a], [b], [c]
        assert_eq!(y, int_vec(&[1, 1, 3]));
        let inv = theta_inverse(&eg);
        // lengths l1, l1+l2, l1+l3
        assert_eq!(mat_vec(&inv, &int_vec(&[1, 1, 3])), int_vec(&[1, 2, 4]));
        let canonical = EnrichedGraph::canonical(corpus::theta(3));
        assert_eq!(theta_map(&canonical), vec![int_vec(&[1, 0, 0])]);
    }

    #[test]
    fn halfspaces_and_rays_agree_on_interior_points() {
        for eg in enumerate_enriched(&corpus::figure1()).unwrap() {
            let k = cone_k(&eg);
            let inside = linalg::to_rational(&k.barycenter());
            assert!(k.satisfies_halfspaces(&inside, false));
            assert!(k.contains_relint(&inside));
            for r in k.rays() {
                let r = linalg::to_rational(r);
                assert!(k.satisfies_halfspaces(&r, true));
            }
        }
        let k = cone_k(&theta_generic());
        assert!(!k.satisfies_halfspaces(&rat(&[2, 1, 3]), false));
        assert!(!k.contains(&rat(&[2, 1, 3])));
    }

    #[test]
    fn theta_inverse_columns_are_the_rays() {
        for (_, g) in corpus::graphs() {
            for eg in enumerate_enriched(&g).unwrap() {
                let inv = theta_inverse(&eg);
                let k = eg.rank();
                let mut cols: Vec<Vector> = (0..k)
                    .map(|c| inv.iter().map(|row| row[c].clone()).collect())
                    .collect();
                cols.sort();
                assert_eq!(cols, ray_generators(&eg));
                // theta ∘ inverse = identity
                let m = theta_map(&eg);
                for (c, col) in (0..k).map(|c| (c, inv.iter().map(|r| r[c].clone()).collect::<Vector>())) {
                    let y = mat_vec(&m, &col);
                    let e: Vector = (0..k).map(|i| BigInt::from(i64::from(i == c))).collect();
                    assert_eq!(y, e);
                }
            }
        }
    }
}
