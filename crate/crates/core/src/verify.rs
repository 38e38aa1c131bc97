//! The invariant battery behind the `verify` subcommand: one entry point
//! that re-derives the structural identities at a given `(m, d)` and
//! reports each as a named pass/fail check.

use num_bigint::BigInt;

use crate::cluster::{
    all_objects, cluster_hom_d_nonzero, cluster_tilting_sets, cluster_unsuspend, exchange_angles,
    ClusterParams,
};
use crate::combinatorics::{
    binomial, crossing, enumerate_index_set, intertwines, suspend, unsuspend, DSimplex, Params,
};
use crate::geometry::simplices_intersect_interior;
use crate::mutation::{build_flip_graph, complements_condition, flip, FlipOutcome};
use crate::reptheory::{
    all_indices, ext_d_nonzero, injective_coresolution, is_injective, is_projective,
    projective_resolution, tau_d_inv, AlgebraParams,
};
use crate::triangulation::{
    boundary_faces, cell_count, e_set, enumerate_e_sets, enumerate_noncrossing_sets,
    enumerate_triangulations, faceset_contract1, faceset_delete12, reconstruct, FaceSet,
};
use crate::tropical::{run_campaign, CampaignConfig};
use crate::{Rat, Result};

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Check {
            name,
            ok: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Check {
            name,
            ok: false,
            detail: detail.into(),
        }
    }

    fn from(name: &'static str, result: std::result::Result<String, String>) -> Self {
        match result {
            Ok(detail) => Check::pass(name, detail),
            Err(detail) => Check::fail(name, detail),
        }
    }
}

/// Run the full battery at `(m, d)`. Budget overruns abort with an error;
/// logical violations are reported as failed checks.
pub fn run(p: &Params, budget: u64, seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    checks.push(Check::from("index-set-counts", index_counts(p)));
    checks.push(Check::from("suspension-bijection", suspension_bijection(p)));
    let e_sets = enumerate_e_sets(p, budget)?;
    checks.push(Check::from(
        "enumeration-roundtrip",
        enumeration_roundtrip(p, &e_sets),
    ));
    checks.push(Check::from(
        "contraction-compatibility",
        contraction(p, &e_sets),
    ));
    checks.push(Check::from("flip-graph", flip_graph(p, budget, &e_sets)));
    checks.push(Check::from("geometric-oracle", geometric_oracle(p)));
    checks.push(Check::from(
        "exchangeability",
        exchangeability(p, budget, &e_sets),
    ));
    if p.m() as u64 > 2 * p.d() as u64 && p.m() as u64 - 2 * p.d() as u64 >= 1 {
        checks.push(Check::from("representation-layer", representation_layer(p)));
    }
    if p.m() as u64 - 2 * p.d() as u64 >= 2 {
        checks.push(Check::from("cluster-layer", cluster_layer(p, budget)?));
    }
    checks.push(Check::from("tropical-campaign", tropical(p, seed)?));
    Ok(checks)
}

fn index_counts(p: &Params) -> std::result::Result<String, String> {
    let all = enumerate_index_set(p, false).len() as u64;
    let interior = enumerate_index_set(p, true).len() as u64;
    let m = p.m() as u64;
    let d = p.d() as u64;
    if all != binomial(m - d, d + 1) {
        return Err(format!("|I| = {all}, expected C(m-d, d+1)"));
    }
    if all - interior != binomial(m - d - 2, d - 1) {
        return Err(format!("|I \\ interior| = {}", all - interior));
    }
    Ok(format!("|I| = {all}, interior {interior}"))
}

fn suspension_bijection(p: &Params) -> std::result::Result<String, String> {
    let interior = enumerate_index_set(p, true);
    let mut images = std::collections::BTreeSet::new();
    for t in &interior {
        let s = suspend(t, p).map_err(|e| e.to_string())?;
        let back = unsuspend(&s, p).map_err(|e| e.to_string())?;
        if back != *t {
            return Err(format!("unsuspend(suspend({t})) = {back}"));
        }
        images.insert(s);
    }
    if images.len() != interior.len() {
        return Err("suspension is not injective".into());
    }
    Ok(format!("bijective on {} interior tuples", interior.len()))
}

fn enumeration_roundtrip(p: &Params, e_sets: &[FaceSet]) -> std::result::Result<String, String> {
    let expected = cell_count(p);
    let boundary = boundary_faces(p);
    for x in e_sets {
        if x.faces().len() as u64 != expected {
            return Err(format!(
                "e-set with {} faces, expected {expected}",
                x.faces().len()
            ));
        }
        if !x.is_non_intertwining() {
            return Err("intertwining e-set".into());
        }
        if !boundary.iter().all(|b| x.contains(b)) {
            return Err("e-set missing an upper-boundary tuple".into());
        }
        let t = reconstruct(x).map_err(|e| e.to_string())?;
        if e_set(&t) != *x {
            return Err("reconstruction does not invert the e-map".into());
        }
    }
    Ok(format!("{} triangulations, all round-trip", e_sets.len()))
}

fn contraction(p: &Params, e_sets: &[FaceSet]) -> std::result::Result<String, String> {
    if p.m() as u64 == 2 * p.d() as u64 + 1 {
        return Ok("skipped: contraction needs m >= 2d + 2".into());
    }
    for x in e_sets {
        let t = reconstruct(x).map_err(|e| e.to_string())?;
        let contracted = crate::triangulation::contract_vertex1(&t);
        if e_set(&contracted) != faceset_contract1(x) {
            return Err("e(S/1) != e(S)/1".into());
        }
        let kept = faceset_contract1(x).faces().len() + faceset_delete12(x).faces().len();
        if kept != x.faces().len() {
            return Err("|X/1| + |X \\ {1,2}| != |X|".into());
        }
    }
    Ok(format!("checked on {} triangulations", e_sets.len()))
}

fn flip_graph(p: &Params, budget: u64, e_sets: &[FaceSet]) -> std::result::Result<String, String> {
    let graph = build_flip_graph(p, budget).map_err(|e| e.to_string())?;
    if !graph.is_connected() {
        return Err("flip graph disconnected".into());
    }
    // symmetric difference 2 <=> edge
    let mut edge_set = std::collections::BTreeSet::new();
    for (i, j, _) in &graph.edges {
        edge_set.insert((*i, *j));
    }
    for i in 0..e_sets.len() {
        for j in (i + 1)..e_sets.len() {
            let diff = e_sets[i]
                .faces()
                .iter()
                .filter(|f| !e_sets[j].contains(f))
                .count();
            let adjacent = edge_set.contains(&(i, j));
            if (diff == 1) != adjacent {
                return Err(format!(
                    "symmetric-difference mismatch between nodes {i}, {j}"
                ));
            }
        }
    }
    // flip involution
    for x in e_sets {
        for a in x.interior_part(p) {
            if let FlipOutcome::Flipped { set, inserted } =
                flip(x, &a).map_err(|e| e.to_string())?
            {
                let FlipOutcome::Flipped {
                    set: back,
                    inserted: back_in,
                } = flip(&set, &inserted).map_err(|e| e.to_string())?
                else {
                    return Err("flip not invertible".into());
                };
                if back != *x || back_in != a {
                    return Err("flip is not an involution".into());
                }
            }
        }
    }
    Ok(format!(
        "{} nodes, {} edges, connected",
        graph.nodes.len(),
        graph.edges.len()
    ))
}

fn geometric_oracle(p: &Params) -> std::result::Result<String, String> {
    let interior = enumerate_index_set(p, true);
    let as_rat = |t: &DSimplex| -> Vec<Rat> {
        t.entries()
            .iter()
            .map(|&v| Rat::from_integer(BigInt::from(v)))
            .collect()
    };
    let mut pairs = 0u64;
    for a in &interior {
        for b in &interior {
            if a.entries().iter().any(|v| b.entries().contains(v)) {
                continue;
            }
            pairs += 1;
            let geometric =
                simplices_intersect_interior(&as_rat(a), &as_rat(b)).map_err(|e| e.to_string())?;
            if geometric != crossing(a, b) {
                return Err(format!("oracle disagrees with interleaving on {a}, {b}"));
            }
        }
    }
    Ok(format!("agreement on {pairs} disjoint interior pairs"))
}

fn exchangeability(
    p: &Params,
    budget: u64,
    e_sets: &[FaceSet],
) -> std::result::Result<String, String> {
    // forward: every almost-complete context from an actual flip passes the
    // complements condition
    for x in e_sets {
        for a in x.interior_part(p) {
            if let FlipOutcome::Flipped { inserted, .. } = flip(x, &a).map_err(|e| e.to_string())? {
                let rest: Vec<DSimplex> = x.faces().iter().filter(|f| **f != a).cloned().collect();
                let r = FaceSet::new(x.m(), x.d(), rest).map_err(|e| e.to_string())?;
                if !complements_condition(&a, &inserted, &r) {
                    return Err(format!(
                        "context of flip {a} fails the complements condition"
                    ));
                }
            }
        }
    }
    // backward: every context passing the condition completes both ways,
    // for every crossing interior pair
    let universe = enumerate_index_set(p, false);
    let interior = enumerate_index_set(p, true);
    let target = cell_count(p) as usize;
    let mut contexts = 0u64;
    for a in &interior {
        for b in &interior {
            if !intertwines(a, b) {
                continue;
            }
            let mut required = crate::mutation::required_middle_tuples(a, b);
            required.retain(|t| t.last() <= p.m());
            let rest: Vec<DSimplex> = universe
                .iter()
                .filter(|t| *t != a && *t != b)
                .cloned()
                .collect();
            let candidates = enumerate_noncrossing_sets(&rest, &required, target - 1, budget)
                .map_err(|e| e.to_string())?;
            for r_faces in candidates {
                let r = FaceSet::new(p.m(), p.d(), r_faces).map_err(|e| e.to_string())?;
                if !complements_condition(a, b, &r) {
                    continue;
                }
                contexts += 1;
                for extra in [a, b] {
                    let mut faces = r.faces().to_vec();
                    faces.push(extra.clone());
                    let full = FaceSet::new(p.m(), p.d(), faces).map_err(|e| e.to_string())?;
                    if reconstruct(&full).is_err() {
                        return Err(format!(
                            "context of {a}, {b} does not complete to a triangulation with {extra}"
                        ));
                    }
                }
            }
        }
    }
    Ok(format!(
        "complements condition verified on {contexts} contexts"
    ))
}

fn representation_layer(p: &Params) -> std::result::Result<String, String> {
    let n = p.m() - 2 * p.d() as u32;
    let params = AlgebraParams::new(n, p.d()).map_err(|e| e.to_string())?;
    let indices = all_indices(&params);
    for i in &indices {
        for j in &indices {
            if crossing(i.tuple(), j.tuple()) {
                if !(ext_d_nonzero(i, j) ^ ext_d_nonzero(j, i)) {
                    return Err(format!("Ext direction not unique for {i:?}, {j:?}"));
                }
            } else if ext_d_nonzero(i, j) || ext_d_nonzero(j, i) {
                return Err(format!("Ext nonzero on non-crossing pair {i:?}, {j:?}"));
            }
        }
    }
    // translation orbits from the projectives partition the index set
    let mut reached = Vec::new();
    for start in indices.iter().filter(|i| is_projective(i)) {
        let mut cur = Some((*start).clone());
        while let Some(i) = cur {
            reached.push(i.clone());
            cur = tau_d_inv(&i);
        }
    }
    reached.sort();
    if reached != indices {
        return Err("translation orbits do not cover the index set exactly once".into());
    }
    for i in &indices {
        if !projective_resolution(i).iter().all(is_projective) {
            return Err(format!("non-projective resolution term for {i:?}"));
        }
        if !injective_coresolution(i).iter().all(is_injective) {
            return Err(format!("non-injective coresolution term for {i:?}"));
        }
    }
    Ok(format!(
        "n = {n}: Ext directions, orbits and resolutions verified"
    ))
}

fn cluster_layer(p: &Params, budget: u64) -> Result<std::result::Result<String, String>> {
    let n = p.m() - 2 * p.d() as u32 - 1;
    let params = match ClusterParams::new(n, p.d()) {
        Ok(c) => c,
        Err(e) => return Ok(Err(e.to_string())),
    };
    let objects = all_objects(&params);
    for a in &objects {
        for b in &objects {
            if cluster_hom_d_nonzero(a, b) != cluster_hom_d_nonzero(b, a) {
                return Ok(Err("shifted Hom predicate is not symmetric".into()));
            }
            if !intertwines(a.tuple(), b.tuple()) {
                continue;
            }
            let angles = match exchange_angles(a, b) {
                Ok(angles) => angles,
                Err(e) => return Ok(Err(e.to_string())),
            };
            let f_empty = angles.f_layers.iter().all(|l| l.is_empty());
            let e_empty = angles.e_layers.iter().all(|l| l.is_empty());
            if f_empty != (cluster_unsuspend(a) == *b) || e_empty != (cluster_unsuspend(b) == *a) {
                return Ok(Err(format!("degenerate-angle law fails on {a:?}, {b:?}")));
            }
        }
    }
    let sets = cluster_tilting_sets(&params, budget)?;
    let triangulations = enumerate_triangulations(&params.polytope(), budget)?;
    if sets.len() != triangulations.len() {
        return Ok(Err(format!(
            "{} cluster tilting sets vs {} triangulations",
            sets.len(),
            triangulations.len()
        )));
    }
    Ok(Ok(format!(
        "n = {n}: {} cluster tilting sets match triangulations",
        sets.len()
    )))
}

fn tropical(p: &Params, seed: u64) -> Result<std::result::Result<String, String>> {
    if (p.m() as u64) < 2 * p.d() as u64 + 2 {
        return Ok(Ok("skipped: no intertwining interior pairs".into()));
    }
    let config = CampaignConfig {
        m: p.m(),
        d: p.d(),
        cases: 500,
        seed,
        max_leaves: 4,
    };
    let report = run_campaign(&config)?;
    if report.holds != report.cases || report.signed_sums_ok != report.cases {
        return Ok(Err(format!(
            "{}/{} cases hold; first failures: {:?}",
            report.holds, report.cases, report.failures
        )));
    }
    if p.d().is_multiple_of(2) && report.rhs_equal != report.cases {
        return Ok(Err("rhs_m != rhs_n in a d-even case".into()));
    }
    Ok(Ok(format!(
        "{} random cases hold (rhs equal in {})",
        report.cases, report.rhs_equal
    )))
}
