//! Bistellar flips as single-element exchanges on `e`-sets, and the flip
//! graph of all triangulations.
//!
//! Two triangulations are related by a bistellar flip exactly when their
//! `e`-sets agree except for one tuple, and two tuples are exchangeable
//! exactly when they cross. The graph of all triangulations under flips is
//! connected.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    binomial, crossing, enumerate_index_set, is_interior, DSimplex, Params,
};
use crate::triangulation::{cell_count, enumerate_e_sets, FaceSet};
use crate::{Error, Result};

/// Whether two distinct separated tuples are exchangeable, i.e. are the two
/// complements of some common almost-complete `e`-set. This happens exactly
/// when they cross.
pub fn exchangeable(a: &DSimplex, b: &DSimplex) -> bool {
    crossing(a, b)
}

/// Whether `r` is a common context in which the exchangeable pair `a`, `b`
/// can both complete to a triangulation: `r` is non-intertwining, avoids `a`
/// and `b`, has cardinality `C(m-d-1, d) - 1`, and contains every separated
/// `(d+1)`-tuple from the `2d+2` vertices of `a ∪ b` other than `a` and `b`
/// themselves.
pub fn complements_condition(a: &DSimplex, b: &DSimplex, r: &FaceSet) -> bool {
    let Ok(p) = Params::new(r.m(), r.d()) else {
        return false;
    };
    if r.contains(a) || r.contains(b) {
        return false;
    }
    if r.faces().len() as u64 + 1 != cell_count(&p) {
        return false;
    }
    if !r.is_non_intertwining() {
        return false;
    }
    required_middle_tuples(a, b).iter().all(|t| r.contains(t))
}

/// The separated `(d+1)`-tuples spanned by the vertices of `a ∪ b`, other
/// than `a` and `b` themselves.
pub fn required_middle_tuples(a: &DSimplex, b: &DSimplex) -> Vec<DSimplex> {
    let mut vertices: Vec<u32> = a.entries().iter().chain(b.entries()).copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let len = a.entries().len();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(len);
    separated_subtuples(&vertices, len, 0, &mut pick, &mut out);
    out.retain(|t| t != a && t != b);
    out
}

fn separated_subtuples(
    vertices: &[u32],
    len: usize,
    from: usize,
    pick: &mut Vec<u32>,
    out: &mut Vec<DSimplex>,
) {
    if pick.len() == len {
        out.push(DSimplex::new(pick.clone()).expect("increasing pick"));
        return;
    }
    for i in from..vertices.len() {
        if vertices.len() - i < len - pick.len() {
            break;
        }
        if let Some(&last) = pick.last() {
            if vertices[i] < last + 2 {
                continue;
            }
        }
        pick.push(vertices[i]);
        separated_subtuples(vertices, len, i + 1, pick, out);
        pick.pop();
    }
}

/// Result of attempting a bistellar flip at one tuple of an `e`-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipOutcome {
    /// The exchange succeeded: `inserted` replaced the requested tuple.
    Flipped { set: FaceSet, inserted: DSimplex },
    /// No tuple can replace the requested one. A normal outcome for
    /// `d >= 3`, where not every internal simplex of a triangulation is
    /// flippable.
    NoFlip,
}

/// Exchange `a` for the unique tuple `b` such that `(x ∖ {a}) ∪ {b}` is
/// again a triangulation `e`-set.
///
/// `a` must be an interior member of `x`. Candidates are searched among the
/// interior tuples crossing `a`; finding two distinct valid candidates would
/// violate the uniqueness of bistellar flips and is treated as fatal.
///
/// ```
/// use cyclotope::combinatorics::DSimplex;
/// use cyclotope::mutation::{flip, FlipOutcome};
/// use cyclotope::triangulation::FaceSet;
///
/// let ds = |v: &[u32]| DSimplex::new(v.to_vec()).unwrap();
/// let fan = FaceSet::new(6, 1, vec![ds(&[1, 3]), ds(&[1, 4]), ds(&[1, 5]), ds(&[1, 6])]).unwrap();
/// let FlipOutcome::Flipped { inserted, .. } = flip(&fan, &ds(&[1, 3])).unwrap() else {
///     unreachable!("interior diagonals of a polygon always flip");
/// };
/// assert_eq!(inserted, ds(&[2, 4]));
/// ```
pub fn flip(x: &FaceSet, a: &DSimplex) -> Result<FlipOutcome> {
    let p = Params::new(x.m(), x.d())?;
    if !x.contains(a) {
        return Err(Error::invalid(format!(
            "{a} is not a member of the face set"
        )));
    }
    if !is_interior(a, &p) {
        return Err(Error::invalid(format!(
            "{a} is not an internal simplex of C({}, {})",
            p.m(),
            2 * p.d()
        )));
    }
    let rest: Vec<&DSimplex> = x.faces().iter().filter(|f| *f != a).collect();
    let mut found: Option<DSimplex> = None;
    for b in enumerate_index_set(&p, true) {
        if x.contains(&b) || !crossing(a, &b) {
            continue;
        }
        if rest.iter().all(|f| !crossing(f, &b)) {
            if let Some(prev) = &found {
                panic!("flip of {a} admits two exchanges {prev} and {b}; uniqueness violated");
            }
            found = Some(b);
        }
    }
    match found {
        Some(b) => {
            let mut faces: Vec<DSimplex> = rest.into_iter().cloned().collect();
            faces.push(b.clone());
            let set = FaceSet::new(x.m(), x.d(), faces)?;
            Ok(FlipOutcome::Flipped { set, inserted: b })
        }
        None => Ok(FlipOutcome::NoFlip),
    }
}

/// The pair exchanged along a flip-graph edge, oriented from the
/// lower-indexed node: `out` leaves that node, `in` enters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangedPair {
    #[serde(rename = "out")]
    pub removed: DSimplex,
    #[serde(rename = "in")]
    pub inserted: DSimplex,
}

/// The graph of all triangulations of `C(m, 2d)` under bistellar flips.
/// Nodes are canonical sorted `e`-sets; edges carry the exchanged pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlipGraph {
    pub nodes: Vec<FaceSet>,
    pub edges: Vec<(usize, usize, ExchangedPair)>,
}

/// Enumerate all triangulation `e`-sets and connect those related by a
/// single exchange. Connectivity of the result is asserted.
pub fn build_flip_graph(p: &Params, budget: u64) -> Result<FlipGraph> {
    let nodes = enumerate_e_sets(p, budget)?;
    let index: BTreeMap<&FaceSet, usize> = nodes.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let per_node: Vec<Vec<(usize, usize, ExchangedPair)>> = nodes
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let mut local = Vec::new();
            for a in x.interior_part(p) {
                if let FlipOutcome::Flipped { set, inserted } =
                    flip(x, &a).expect("interior members of e-sets are valid flip arguments")
                {
                    let j = *index.get(&set).expect("flip image is an enumerated e-set");
                    let pair = if i < j {
                        ExchangedPair {
                            removed: a.clone(),
                            inserted,
                        }
                    } else {
                        ExchangedPair {
                            removed: inserted,
                            inserted: a.clone(),
                        }
                    };
                    local.push((i.min(j), i.max(j), pair));
                }
            }
            local
        })
        .collect();
    let mut dedup: BTreeMap<(usize, usize), ExchangedPair> = BTreeMap::new();
    for batch in per_node {
        for (i, j, pair) in batch {
            dedup.insert((i, j), pair);
        }
    }
    let graph = FlipGraph {
        nodes,
        edges: dedup
            .into_iter()
            .map(|((i, j), pair)| (i, j, pair))
            .collect(),
    };
    assert!(
        graph.is_connected(),
        "flip graphs of cyclic polytopes are connected"
    );
    Ok(graph)
}

impl FlipGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut adjacency = vec![Vec::new(); self.nodes.len()];
        for (i, j, _) in &self.edges {
            adjacency[*i].push(*j);
            adjacency[*j].push(*i);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Upper bound on flip degree: only interior tuples can be exchanged.
    pub fn max_degree_bound(&self, p: &Params) -> u64 {
        cell_count(p) - binomial(p.m() as u64 - p.d() as u64 - 2, p.d() as u64 - 1)
    }

    /// DOT rendering with nodes labeled by index and edges by the exchanged
    /// pair.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph flip_graph {\n");
        for i in 0..self.nodes.len() {
            let _ = writeln!(out, "  {i} [label=\"{i}\"];");
        }
        for (i, j, pair) in &self.edges {
            let _ = writeln!(
                out,
                "  {i} -- {j} [label=\"{}→{}\"];",
                pair.removed, pair.inserted
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{e_set, enumerate_triangulations};
    use crate::{Label, DEFAULT_BUDGET};

    fn ds(v: &[Label]) -> DSimplex {
        DSimplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn exchangeability_examples() {
        assert!(exchangeable(&ds(&[1, 3]), &ds(&[2, 4])));
        assert!(!exchangeable(&ds(&[1, 3]), &ds(&[1, 4])));
        assert!(exchangeable(&ds(&[1, 3, 5]), &ds(&[2, 4, 6])));
    }

    #[test]
    fn complements_condition_examples() {
        // C(4, 2): the only separated middle tuple of {1,2,3,4} is (1,4)
        let r = FaceSet::new(4, 1, vec![ds(&[1, 4])]).unwrap();
        assert!(complements_condition(&ds(&[1, 3]), &ds(&[2, 4]), &r));
        let empty = FaceSet::new(4, 1, vec![]).unwrap();
        assert!(!complements_condition(&ds(&[1, 3]), &ds(&[2, 4]), &empty));
        // hexagon: this candidate r has an intertwining pair, so it fails
        let r = FaceSet::new(6, 1, vec![ds(&[1, 5]), ds(&[3, 5]), ds(&[1, 4])]).unwrap();
        assert!(!complements_condition(&ds(&[1, 3]), &ds(&[2, 5]), &r));
    }

    #[test]
    fn hexagon_fan_flip() {
        let x = FaceSet::new(
            6,
            1,
            vec![ds(&[1, 3]), ds(&[1, 4]), ds(&[1, 5]), ds(&[1, 6])],
        )
        .unwrap();
        let FlipOutcome::Flipped { set, inserted } = flip(&x, &ds(&[1, 3])).unwrap() else {
            panic!("hexagon diagonals always flip");
        };
        assert_eq!(inserted, ds(&[2, 4]));
        assert!(set.contains(&ds(&[2, 4])));
        assert!(!set.contains(&ds(&[1, 3])));
        // flipping back is the identity
        let FlipOutcome::Flipped {
            set: back,
            inserted: back_in,
        } = flip(&set, &ds(&[2, 4])).unwrap()
        else {
            panic!("flip is an involution");
        };
        assert_eq!(back, x);
        assert_eq!(back_in, ds(&[1, 3]));
    }

    #[test]
    fn flip_rejects_bad_arguments() {
        let x = FaceSet::new(
            6,
            1,
            vec![ds(&[1, 3]), ds(&[1, 4]), ds(&[1, 5]), ds(&[1, 6])],
        )
        .unwrap();
        assert!(flip(&x, &ds(&[2, 4])).is_err()); // not a member
        assert!(flip(&x, &ds(&[1, 6])).is_err()); // member but not interior
    }

    #[test]
    fn pentagon_and_hexagon_graphs() {
        let p5 = Params::new(5, 1).unwrap();
        let g5 = build_flip_graph(&p5, DEFAULT_BUDGET).unwrap();
        assert_eq!(g5.nodes.len(), 5);
        assert_eq!(g5.edges.len(), 5);
        assert!(g5.is_connected());

        let p6 = Params::new(6, 1).unwrap();
        let g6 = build_flip_graph(&p6, DEFAULT_BUDGET).unwrap();
        assert_eq!(g6.nodes.len(), 14);
        assert_eq!(g6.edges.len(), 21);
        assert!(g6.is_connected());
    }

    #[test]
    fn edges_exchange_crossing_pairs_in_one_order() {
        let p = Params::new(7, 2).unwrap();
        let g = build_flip_graph(&p, DEFAULT_BUDGET).unwrap();
        use crate::combinatorics::intertwines;
        for (i, j, pair) in &g.edges {
            let diff_out: Vec<&DSimplex> = g.nodes[*i]
                .faces()
                .iter()
                .filter(|f| !g.nodes[*j].contains(f))
                .collect();
            let diff_in: Vec<&DSimplex> = g.nodes[*j]
                .faces()
                .iter()
                .filter(|f| !g.nodes[*i].contains(f))
                .collect();
            assert_eq!(diff_out, vec![&pair.removed]);
            assert_eq!(diff_in, vec![&pair.inserted]);
            assert!(
                intertwines(&pair.removed, &pair.inserted)
                    ^ intertwines(&pair.inserted, &pair.removed)
            );
        }
    }

    #[test]
    fn noflip_occurs_for_d3() {
        // at m = 2d + 3 = 9 some interior members of e-sets cannot be flipped
        let p = Params::new(9, 3).unwrap();
        let mut saw_noflip = false;
        for x in enumerate_e_sets(&p, DEFAULT_BUDGET).unwrap() {
            for a in x.interior_part(&p) {
                if flip(&x, &a).unwrap() == FlipOutcome::NoFlip {
                    saw_noflip = true;
                }
            }
        }
        assert!(saw_noflip);
    }

    #[test]
    fn d1_interior_diagonals_always_flip() {
        let p = Params::new(7, 1).unwrap();
        for t in enumerate_triangulations(&p, DEFAULT_BUDGET).unwrap() {
            let x = e_set(&t);
            for a in x.interior_part(&p) {
                assert!(matches!(flip(&x, &a).unwrap(), FlipOutcome::Flipped { .. }));
            }
        }
    }

    #[test]
    fn degree_bound_holds() {
        for (m, d) in [(6u32, 1usize), (7, 1), (7, 2), (8, 2), (9, 3)] {
            let p = Params::new(m, d).unwrap();
            let g = build_flip_graph(&p, DEFAULT_BUDGET).unwrap();
            let bound = g.max_degree_bound(&p);
            let mut degree = vec![0u64; g.nodes.len()];
            for (i, j, _) in &g.edges {
                degree[*i] += 1;
                degree[*j] += 1;
            }
            assert!(degree.iter().all(|&deg| deg <= bound));
        }
    }

    #[test]
    fn pre_flip_context_satisfies_complements_condition() {
        let p = Params::new(7, 1).unwrap();
        for x in enumerate_e_sets(&p, DEFAULT_BUDGET).unwrap() {
            for a in x.interior_part(&p) {
                if let FlipOutcome::Flipped { inserted, .. } = flip(&x, &a).unwrap() {
                    let rest: Vec<DSimplex> =
                        x.faces().iter().filter(|f| **f != a).cloned().collect();
                    let r = FaceSet::new(x.m(), x.d(), rest).unwrap();
                    assert!(complements_condition(&a, &inserted, &r));
                }
            }
        }
    }

    #[test]
    fn dot_and_json_export() {
        let p = Params::new(5, 1).unwrap();
        let g = build_flip_graph(&p, DEFAULT_BUDGET).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph flip_graph {"));
        assert!(dot.contains("--"));
        assert!(dot.contains('→'));
        let json = serde_json::to_string(&g).unwrap();
        let back: FlipGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(json.contains(r#""out":"#));
        assert!(json.contains(r#""in":"#));
    }
}
