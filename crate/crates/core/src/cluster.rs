//! Index-level model of the `(d+2)`-angulated cluster category attached to
//! the algebra with parameters `(n, d)`.
//!
//! Its indecomposable objects are indexed by the interior separated
//! `(d+1)`-tuples at ambient `m = n + 2d + 1`; the `d`-fold shift acts as
//! the cyclic suspension permutation, and mutation of cluster tilting
//! objects is governed by a pair of exchange `(d+2)`-angles whose middle
//! layers are given by the `m_X` and `n_X` index maps.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    crossing, intertwines, is_interior, is_separated, m_index, n_index, suspend, unsuspend,
    DSimplex, Params, SubsetMask,
};
use crate::triangulation::{enumerate_e_sets, FaceSet};
use crate::{Error, Label, Result};

/// Parameters `(n, d)` of the underlying algebra; the ambient polytope of
/// the cluster category is `C(n + 2d + 1, 2d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClusterParams {
    n: Label,
    d: usize,
}

impl ClusterParams {
    pub fn new(n: Label, d: usize) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::invalid("cluster parameters need n >= 1 and d >= 1"));
        }
        Ok(ClusterParams { n, d })
    }

    pub fn n(&self) -> Label {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The ambient polytope parameters, `m = n + 2d + 1`.
    pub fn polytope(&self) -> Params {
        Params::new(self.n + 2 * self.d as Label + 1, self.d).expect("n >= 1 gives m >= 2d + 2")
    }
}

/// An indecomposable object of the cluster category: an interior separated
/// `(d+1)`-tuple at ambient `m = n + 2d + 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClusterObject {
    params: ClusterParams,
    tuple: DSimplex,
}

impl ClusterObject {
    pub fn new(params: ClusterParams, tuple: DSimplex) -> Result<Self> {
        let p = params.polytope();
        if !tuple.fits(&p) || !is_interior(&tuple, &p) {
            return Err(Error::invalid(format!(
                "{tuple} is not an interior index at m = {}",
                p.m()
            )));
        }
        Ok(ClusterObject { params, tuple })
    }

    pub fn params(&self) -> &ClusterParams {
        &self.params
    }

    pub fn tuple(&self) -> &DSimplex {
        &self.tuple
    }
}

impl std::fmt::Debug for ClusterObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "O{}", self.tuple)
    }
}

fn check_same_params(a: &ClusterObject, b: &ClusterObject) {
    assert_eq!(
        a.params, b.params,
        "objects from different cluster categories"
    );
}

/// Nonvanishing of `Hom(O_a, O_b[d])`: the two index tuples cross in either
/// order. Symmetric, and one-dimensional when nonzero.
pub fn cluster_hom_d_nonzero(a: &ClusterObject, b: &ClusterObject) -> bool {
    check_same_params(a, b);
    crossing(&a.tuple, &b.tuple)
}

/// The `d`-fold shift, acting on indices by the cyclic suspension
/// permutation.
pub fn cluster_suspend(a: &ClusterObject) -> ClusterObject {
    let p = a.params.polytope();
    let tuple = suspend(&a.tuple, &p).expect("object indices are interior");
    ClusterObject {
        params: a.params,
        tuple,
    }
}

/// Inverse of [`cluster_suspend`].
pub fn cluster_unsuspend(a: &ClusterObject) -> ClusterObject {
    let p = a.params.polytope();
    let tuple = unsuspend(&a.tuple, &p).expect("object indices are interior");
    ClusterObject {
        params: a.params,
        tuple,
    }
}

/// The two exchange `(d+2)`-angles between the intertwining pair `a ≀ b`:
/// `O_a → E_d → … → E_1 → O_b → O_a[d]` and
/// `O_b → F_1 → … → F_d → O_a → O_b[d]`. Layer `E_r` holds the `m_X` and
/// `F_r` the `n_X` with `|X| = r` that are separated and interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeAngles {
    pub source: ClusterObject,
    pub target: ClusterObject,
    /// `E_d, …, E_1`, outermost layer first.
    pub e_layers: Vec<Vec<ClusterObject>>,
    /// `F_1, …, F_d`.
    pub f_layers: Vec<Vec<ClusterObject>>,
}

/// Serialized form of [`ExchangeAngles`]: `E` lists `E_d → E_1` and `F`
/// lists `F_1 → F_d`, each layer a sorted list of tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeAnglesJson {
    pub source: Vec<Label>,
    pub target: Vec<Label>,
    #[serde(rename = "E")]
    pub e: Vec<Vec<Vec<Label>>>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<Vec<Label>>>,
}

impl ExchangeAngles {
    pub fn to_json(&self) -> ExchangeAnglesJson {
        let strip = |layers: &[Vec<ClusterObject>]| -> Vec<Vec<Vec<Label>>> {
            layers
                .iter()
                .map(|layer| layer.iter().map(|o| o.tuple.entries().to_vec()).collect())
                .collect()
        };
        ExchangeAnglesJson {
            source: self.source.tuple.entries().to_vec(),
            target: self.target.tuple.entries().to_vec(),
            e: strip(&self.e_layers),
            f: strip(&self.f_layers),
        }
    }
}

/// Compute both exchange `(d+2)`-angles for the pair `a ≀ b`. For the
/// reversed order swap the roles of the arguments.
pub fn exchange_angles(a: &ClusterObject, b: &ClusterObject) -> Result<ExchangeAngles> {
    check_same_params(a, b);
    if !intertwines(&a.tuple, &b.tuple) {
        return Err(Error::invalid(format!(
            "exchange angles require the source to intertwine the target; got {} and {}",
            a.tuple, b.tuple
        )));
    }
    let d = a.params.d;
    let p = a.params.polytope();
    let keep = |t: DSimplex| -> Option<ClusterObject> {
        (is_separated(&t) && is_interior(&t, &p)).then_some(ClusterObject {
            params: a.params,
            tuple: t,
        })
    };
    let mut e_layers = Vec::with_capacity(d);
    for r in (1..=d).rev() {
        let mut layer: Vec<ClusterObject> = SubsetMask::of_size(d, r)
            .into_iter()
            .filter_map(|x| keep(m_index(&a.tuple, &b.tuple, x).expect("intertwining pair")))
            .collect();
        layer.sort();
        layer.dedup();
        e_layers.push(layer);
    }
    let mut f_layers = Vec::with_capacity(d);
    for r in 1..=d {
        let mut layer: Vec<ClusterObject> = SubsetMask::of_size(d, r)
            .into_iter()
            .filter_map(|x| keep(n_index(&a.tuple, &b.tuple, x).expect("intertwining pair")))
            .collect();
        layer.sort();
        layer.dedup();
        f_layers.push(layer);
    }
    Ok(ExchangeAngles {
        source: a.clone(),
        target: b.clone(),
        e_layers,
        f_layers,
    })
}

/// All cluster tilting sets: the interior parts of the triangulation
/// `e`-sets of `C(n + 2d + 1, 2d)`, sorted.
pub fn cluster_tilting_sets(params: &ClusterParams, budget: u64) -> Result<Vec<FaceSet>> {
    let p = params.polytope();
    let mut out: Vec<FaceSet> = enumerate_e_sets(&p, budget)?
        .into_iter()
        .map(|x| {
            FaceSet::new(p.m(), p.d(), x.interior_part(&p))
                .expect("interior faces are separated and in range")
        })
        .collect();
    out.sort();
    Ok(out)
}

/// All indecomposable objects, sorted by index tuple.
pub fn all_objects(params: &ClusterParams) -> Vec<ClusterObject> {
    crate::combinatorics::enumerate_index_set(&params.polytope(), true)
        .into_iter()
        .map(|t| ClusterObject {
            params: *params,
            tuple: t,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::enumerate_triangulations;
    use crate::DEFAULT_BUDGET;

    fn co(n: Label, d: usize, v: &[Label]) -> ClusterObject {
        ClusterObject::new(
            ClusterParams::new(n, d).unwrap(),
            DSimplex::new(v.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn hom_predicate() {
        // m = 6 ambient: n = 3, d = 1
        assert!(cluster_hom_d_nonzero(
            &co(3, 1, &[1, 3]),
            &co(3, 1, &[2, 5])
        ));
        assert!(!cluster_hom_d_nonzero(
            &co(3, 1, &[1, 3]),
            &co(3, 1, &[1, 4])
        ));
        // symmetry
        assert!(cluster_hom_d_nonzero(
            &co(3, 1, &[2, 5]),
            &co(3, 1, &[1, 3])
        ));
    }

    #[test]
    fn suspension_on_objects() {
        // m = 7 ambient: n = 2, d = 2
        assert_eq!(cluster_suspend(&co(2, 2, &[2, 4, 6])), co(2, 2, &[1, 3, 5]));
        assert_eq!(cluster_suspend(&co(2, 2, &[1, 3, 5])), co(2, 2, &[2, 4, 7]));
        // suspension orbits partition the 7 interior tuples at m = 7
        let params = ClusterParams::new(2, 2).unwrap();
        let objects = all_objects(&params);
        assert_eq!(objects.len(), 7);
        let mut covered = std::collections::BTreeSet::new();
        for o in &objects {
            let mut cur = o.clone();
            loop {
                covered.insert(cur.clone());
                cur = cluster_suspend(&cur);
                if cur == *o {
                    break;
                }
            }
        }
        assert_eq!(covered.len(), objects.len());
    }

    #[test]
    fn exchange_angle_hexagon() {
        // d = 1, m = 6: quadrilateral 1,2,3,5 with interior sides (1,5), (3,5)
        let angles = exchange_angles(&co(3, 1, &[1, 3]), &co(3, 1, &[2, 5])).unwrap();
        assert_eq!(angles.e_layers, vec![vec![co(3, 1, &[1, 5])]]);
        assert_eq!(angles.f_layers, vec![vec![co(3, 1, &[3, 5])]]);
    }

    #[test]
    fn exchange_angle_degenerate_f() {
        // b = unsuspend(a): the F-angle degenerates entirely
        let a = co(2, 2, &[1, 3, 5]);
        let b = co(2, 2, &[2, 4, 6]);
        assert_eq!(cluster_unsuspend(&a), b);
        let angles = exchange_angles(&a, &b).unwrap();
        assert_eq!(
            angles.e_layers,
            vec![vec![co(2, 2, &[1, 3, 6])], vec![co(2, 2, &[1, 4, 6])]]
        );
        assert!(angles.f_layers.iter().all(|layer| layer.is_empty()));
    }

    #[test]
    fn exchange_angle_rejects_equal_and_noncrossing() {
        let a = co(3, 1, &[1, 3]);
        assert!(exchange_angles(&a, &a).is_err());
        assert!(exchange_angles(&a, &co(3, 1, &[1, 4])).is_err());
    }

    #[test]
    fn degenerate_angle_law_exhaustive() {
        // F-layers all empty iff b = unsuspend(a); E-layers all empty iff
        // a = unsuspend(b). Checked over every intertwining interior pair.
        for (n, d) in [(2u32, 1usize), (3, 1), (4, 1), (1, 2), (2, 2), (1, 3)] {
            let params = ClusterParams::new(n, d).unwrap();
            let objects = all_objects(&params);
            for a in &objects {
                for b in &objects {
                    if !intertwines(a.tuple(), b.tuple()) {
                        continue;
                    }
                    let angles = exchange_angles(a, b).unwrap();
                    let f_empty = angles.f_layers.iter().all(|l| l.is_empty());
                    let e_empty = angles.e_layers.iter().all(|l| l.is_empty());
                    assert_eq!(f_empty, cluster_unsuspend(a) == *b, "F at {a:?}, {b:?}");
                    assert_eq!(e_empty, cluster_unsuspend(b) == *a, "E at {a:?}, {b:?}");
                }
            }
        }
    }

    #[test]
    fn tilting_set_counts() {
        // pentagon and hexagon counts transported through the bijection
        let c21 = cluster_tilting_sets(&ClusterParams::new(2, 1).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(c21.len(), 5);
        assert!(c21.iter().all(|s| s.faces().len() == 2));
        let c31 = cluster_tilting_sets(&ClusterParams::new(3, 1).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(c31.len(), 14);
        assert!(c31.iter().all(|s| s.faces().len() == 3));
        // counts agree with triangulation enumeration at m = n + 2d + 1
        for (n, d) in [(2u32, 2usize), (1, 3)] {
            let params = ClusterParams::new(n, d).unwrap();
            let p = params.polytope();
            assert_eq!(
                cluster_tilting_sets(&params, DEFAULT_BUDGET).unwrap().len(),
                enumerate_triangulations(&p, DEFAULT_BUDGET).unwrap().len()
            );
        }
    }

    #[test]
    fn angle_layers_lie_in_mutation_contexts() {
        // every middle term of the exchange angles lies in T together with
        // the boundary completion, for every mutation of a cluster tilting
        // set
        for (n, d) in [(2u32, 1usize), (3, 1), (1, 2), (2, 2), (1, 3)] {
            let params = ClusterParams::new(n, d).unwrap();
            let p = params.polytope();
            for x in enumerate_e_sets(&p, DEFAULT_BUDGET).unwrap() {
                for a in x.interior_part(&p) {
                    let crate::mutation::FlipOutcome::Flipped { inserted, .. } =
                        crate::mutation::flip(&x, &a).unwrap()
                    else {
                        continue;
                    };
                    let oa = ClusterObject::new(params, a.clone()).unwrap();
                    let ob = ClusterObject::new(params, inserted).unwrap();
                    let (src, tgt) = if intertwines(oa.tuple(), ob.tuple()) {
                        (oa, ob)
                    } else {
                        (ob, oa)
                    };
                    let angles = exchange_angles(&src, &tgt).unwrap();
                    for layer in angles.e_layers.iter().chain(&angles.f_layers) {
                        for term in layer {
                            assert!(
                                x.contains(term.tuple())
                                    || term.tuple() == src.tuple()
                                    || term.tuple() == tgt.tuple()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn set_mutation_matches_flips_of_full_e_sets() {
        // replacing one summand of a cluster tilting set succeeds exactly
        // when the corresponding full e-set flips there; includes the
        // unflippable d = 3 middle summands
        for (n, d) in [(2u32, 1usize), (1, 3)] {
            let params = ClusterParams::new(n, d).unwrap();
            let p = params.polytope();
            let sets = cluster_tilting_sets(&params, DEFAULT_BUDGET).unwrap();
            let set_index: std::collections::BTreeSet<&FaceSet> = sets.iter().collect();
            for x in enumerate_e_sets(&p, DEFAULT_BUDGET).unwrap() {
                for a in x.interior_part(&p) {
                    let flipped = matches!(
                        crate::mutation::flip(&x, &a).unwrap(),
                        crate::mutation::FlipOutcome::Flipped { .. }
                    );
                    // is there another cluster tilting set sharing all
                    // summands except a?
                    let rest: Vec<DSimplex> = x
                        .interior_part(&p)
                        .into_iter()
                        .filter(|t| *t != a)
                        .collect();
                    let mutable = set_index
                        .iter()
                        .any(|t| !t.contains(&a) && rest.iter().all(|f| t.contains(f)));
                    assert_eq!(flipped, mutable, "at {a} in {x:?}");
                }
            }
        }
    }

    #[test]
    fn angle_json_shape() {
        let a = co(2, 2, &[1, 3, 5]);
        let b = co(2, 2, &[2, 4, 6]);
        let angles = exchange_angles(&a, &b).unwrap();
        let json = serde_json::to_string(&angles.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"source":[1,3,5],"target":[2,4,6],"E":[[[1,3,6]],[[1,4,6]]],"F":[[],[]]}"#
        );
        let back: ExchangeAnglesJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back, angles.to_json());
    }
}
