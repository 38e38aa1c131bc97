//! The simplicial complex of pairwise non-crossing interior tuples.
//!
//! Vertices are the interior separated `(d+1)`-tuples at ambient
//! `m = n + 2d + 1`; facets are the cluster tilting sets (equivalently, the
//! internal-simplex sets of triangulations). For `d = 1` this complex is a
//! clique complex — every pairwise compatible set extends to a facet — but
//! from `d = 3` on there are inclusion-maximal non-crossing sets strictly
//! smaller than the facets, which this module searches for.

use serde::{Deserialize, Serialize};

use crate::cluster::{cluster_tilting_sets, ClusterParams};
use crate::combinatorics::{binomial, crossing, enumerate_index_set, DSimplex};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct RawComplex {
    vertices: Vec<Vec<u32>>,
    facets: Vec<Vec<usize>>,
}

/// A simplicial complex given by its vertices (interior tuples) and its
/// facets (sorted vertex-index sets).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct SimplicialComplex {
    vertices: Vec<DSimplex>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn vertices(&self) -> &[DSimplex] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }
}

impl TryFrom<RawComplex> for SimplicialComplex {
    type Error = Error;

    fn try_from(raw: RawComplex) -> Result<Self> {
        let vertices = raw
            .vertices
            .into_iter()
            .map(DSimplex::new)
            .collect::<Result<Vec<_>>>()?;
        let mut facets = raw.facets;
        for f in &mut facets {
            f.sort_unstable();
            f.dedup();
            if f.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::invalid("facet references a missing vertex"));
            }
        }
        facets.sort();
        facets.dedup();
        Ok(SimplicialComplex { vertices, facets })
    }
}

impl From<SimplicialComplex> for RawComplex {
    fn from(c: SimplicialComplex) -> RawComplex {
        RawComplex {
            vertices: c.vertices.into_iter().map(Vec::from).collect(),
            facets: c.facets,
        }
    }
}

/// Build the complex for parameters `(n, d)`: vertices are the interior
/// tuples at `m = n + 2d + 1`, facets the cluster tilting sets.
pub fn build_complex(params: &ClusterParams, budget: u64) -> Result<SimplicialComplex> {
    let p = params.polytope();
    let vertices = enumerate_index_set(&p, true);
    let mut facets: Vec<Vec<usize>> = cluster_tilting_sets(params, budget)?
        .iter()
        .map(|set| {
            let mut facet: Vec<usize> = set
                .faces()
                .iter()
                .map(|f| {
                    vertices
                        .binary_search(f)
                        .expect("facet vertex is enumerated")
                })
                .collect();
            facet.sort_unstable();
            facet
        })
        .collect();
    facets.sort();
    facets.dedup();
    Ok(SimplicialComplex { vertices, facets })
}

/// Pairwise compatibility masks over the vertex list: compatible means
/// non-crossing.
fn compatibility_masks(vertices: &[DSimplex]) -> Result<Vec<u128>> {
    let n = vertices.len();
    if n > 128 {
        return Err(Error::LimitExceeded { budget: n as u64 });
    }
    Ok((0..n)
        .map(|i| {
            let mut mask = 0u128;
            for j in 0..n {
                if i != j && !crossing(&vertices[i], &vertices[j]) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect())
}

/// All maximal cliques of the compatibility graph, as bitmasks, via
/// pivoting Bron–Kerbosch.
fn maximal_cliques(compat: &[u128]) -> Vec<u128> {
    let n = compat.len();
    let mut out = Vec::new();
    let all = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    bron_kerbosch(compat, 0, all, 0, &mut out);
    out.sort_unstable();
    out
}

fn bron_kerbosch(compat: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // pivot on the candidate covering the most of p
    let pivot = iter_bits(p | x)
        .max_by_key(|&u| (p & compat[u]).count_ones())
        .expect("p | x nonempty");
    let mut candidates = p & !compat[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        let bit = 1u128 << v;
        bron_kerbosch(compat, r | bit, p & compat[v], x & compat[v], out);
        p &= !bit;
        x |= bit;
    }
}

fn iter_bits(mask: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |i| mask >> i & 1 == 1)
}

/// Whether every pairwise compatible vertex set is contained in a facet,
/// i.e. every maximal clique of the compatibility graph is a facet.
pub fn is_clique_complex(c: &SimplicialComplex) -> bool {
    let Ok(compat) = compatibility_masks(&c.vertices) else {
        return false;
    };
    let facet_masks: Vec<u128> = c
        .facets
        .iter()
        .map(|f| f.iter().fold(0u128, |acc, &i| acc | (1 << i)))
        .collect();
    maximal_cliques(&compat)
        .into_iter()
        .all(|clique| facet_masks.contains(&clique))
}

/// All inclusion-maximal pairwise non-crossing subsets of the interior index
/// set whose size falls strictly below the facet size `C(n+d-1, d)`. Empty
/// for `d <= 2` at small parameters; nonempty from `d = 3` on.
pub fn find_nonextendable(params: &ClusterParams, _budget: u64) -> Result<Vec<Vec<DSimplex>>> {
    let p = params.polytope();
    let vertices = enumerate_index_set(&p, true);
    let compat = compatibility_masks(&vertices)?;
    let facet_size =
        binomial(params.n() as u64 + params.d() as u64 - 1, params.d() as u64) as usize;
    let mut out: Vec<Vec<DSimplex>> = maximal_cliques(&compat)
        .into_iter()
        .filter(|clique| (clique.count_ones() as usize) < facet_size)
        .map(|clique| iter_bits(clique).map(|i| vertices[i].clone()).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// The face-count vector `(f_0, f_1, …)`: `f_i` is the number of `i`-faces,
/// i.e. of `(i+1)`-subsets of vertices contained in some facet.
pub fn f_vector(c: &SimplicialComplex) -> Vec<u64> {
    use std::collections::BTreeSet;
    let mut faces: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for facet in &c.facets {
        for mask in 1u64..(1 << facet.len()) {
            let face: Vec<usize> = facet
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let dim = face.len() - 1;
            while faces.len() <= dim {
                faces.push(BTreeSet::new());
            }
            faces[dim].insert(face);
        }
    }
    faces.iter().map(|s| s.len() as u64).collect()
}

/// The Euler characteristic `Σ (-1)^i f_i`. (The reduced variant is this
/// value minus one.)
pub fn euler_characteristic(c: &SimplicialComplex) -> i64 {
    f_vector(c)
        .iter()
        .enumerate()
        .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Label, DEFAULT_BUDGET};

    fn cp(n: Label, d: usize) -> ClusterParams {
        ClusterParams::new(n, d).unwrap()
    }

    #[test]
    fn pentagon_complex() {
        let c = build_complex(&cp(2, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.vertices().len(), 5);
        assert_eq!(c.facets().len(), 5);
        assert!(c.facets().iter().all(|f| f.len() == 2));
        assert_eq!(f_vector(&c), vec![5, 5]);
        assert_eq!(euler_characteristic(&c), 0);
        assert!(is_clique_complex(&c));
    }

    #[test]
    fn single_facet_complex_is_contractible() {
        let c = SimplicialComplex::try_from(RawComplex {
            vertices: vec![vec![1, 3], vec![1, 4], vec![1, 5]],
            facets: vec![vec![0, 1, 2]],
        })
        .unwrap();
        assert_eq!(f_vector(&c), vec![3, 3, 1]);
        assert_eq!(euler_characteristic(&c), 1);
    }

    #[test]
    fn d3_complex_is_a_cycle_with_nine_vertices() {
        let c = build_complex(&cp(2, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.vertices().len(), 9);
        assert_eq!(c.facets().len(), 9);
        assert!(c.facets().iter().all(|f| f.len() == 4));
        // each tuple crosses exactly the two maximally distant ones
        let compat = compatibility_masks(c.vertices()).unwrap();
        for (i, mask) in compat.iter().enumerate() {
            let crossing_count = 9 - 1 - mask.count_ones() as usize;
            assert_eq!(crossing_count, 2, "vertex {i}");
        }
        assert_eq!(euler_characteristic(&c), 0);
        assert!(!is_clique_complex(&c));
    }

    #[test]
    fn d2_complex_has_no_small_maximal_sets() {
        let c = build_complex(&cp(2, 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.vertices().len(), 7);
        assert_eq!(euler_characteristic(&c), 0);
        assert!(find_nonextendable(&cp(2, 2), DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
        assert!(is_clique_complex(&c));
    }

    #[test]
    fn known_nonextendable_set_for_d3() {
        let found = find_nonextendable(&cp(2, 3), DEFAULT_BUDGET).unwrap();
        assert!(!found.is_empty());
        let witness: Vec<DSimplex> = [vec![1u32, 3, 5, 7], vec![1, 4, 6, 8], vec![2, 4, 7, 9]]
            .into_iter()
            .map(|v| DSimplex::new(v).unwrap())
            .collect();
        assert!(found.contains(&witness));
        // every reported set is pairwise non-crossing, maximal, undersized
        for set in &found {
            assert!(set.len() < 4);
            for (i, a) in set.iter().enumerate() {
                for b in &set[i + 1..] {
                    assert!(!crossing(a, b));
                }
            }
        }
    }

    #[test]
    fn d1_is_always_a_clique_complex() {
        for n in 1..=6u32 {
            let c = build_complex(&cp(n, 1), DEFAULT_BUDGET).unwrap();
            assert!(is_clique_complex(&c), "failed at n = {n}");
            assert!(find_nonextendable(&cp(n, 1), DEFAULT_BUDGET)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn d4_counterexample_found_by_search() {
        let found = find_nonextendable(&cp(2, 4), DEFAULT_BUDGET).unwrap();
        assert!(!found.is_empty());
        let c = build_complex(&cp(2, 4), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.vertices().len(), 11);
        assert!(!is_clique_complex(&c));
    }

    #[test]
    fn complex_json_round_trip() {
        let c = build_complex(&cp(2, 1), DEFAULT_BUDGET).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: SimplicialComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(s.starts_with(r#"{"vertices":"#));
    }
}
