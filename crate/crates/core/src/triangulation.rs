//! Triangulations of `C(m, 2d)` as sets of increasing `(2d+1)`-tuples.
//!
//! A triangulation is completely determined by its set `e(S)` of internal
//! `d`-faces: extracting the even-index entries of each cell gives a maximal
//! non-intertwining subset of the separated index set, and conversely every
//! such subset reconstructs to a unique triangulation. Enumeration therefore
//! backtracks over non-intertwining subsets of the interior index set and
//! materializes each through [`reconstruct`].

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    binomial, classify_face, crossing, enumerate_index_set, is_separated, DSimplex, FaceClass,
    Params,
};
use crate::{Error, Label, Result};

/// A top-dimensional cell of a triangulation of `C(m, 2d)`: a strictly
/// increasing `(2d+1)`-tuple of vertex labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Label>", into = "Vec<Label>")]
pub struct CellSimplex(Vec<Label>);

impl CellSimplex {
    pub fn new(entries: Vec<Label>) -> Result<Self> {
        if entries.is_empty() || entries[0] < 1 || !entries.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "cell {entries:?} is not a strictly increasing 1-based tuple"
            )));
        }
        Ok(CellSimplex(entries))
    }

    pub fn entries(&self) -> &[Label] {
        &self.0
    }

    /// The even-index subtuple `e(A) = (a_0, a_2, …, a_2d)`. Always
    /// separated, since entries two positions apart differ by at least two.
    pub fn even_face(&self) -> DSimplex {
        DSimplex::new(self.0.iter().copied().step_by(2).collect())
            .expect("even subtuple of an increasing tuple is increasing")
    }

    /// The odd-index subtuple `o(A) = (a_1, a_3, …, a_(2d-1))`.
    pub fn odd_face(&self) -> DSimplex {
        DSimplex::new(self.0.iter().copied().skip(1).step_by(2).collect())
            .expect("odd subtuple of an increasing tuple is increasing")
    }
}

impl std::fmt::Debug for CellSimplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", strs.join("."))
    }
}

impl TryFrom<Vec<Label>> for CellSimplex {
    type Error = Error;

    fn try_from(v: Vec<Label>) -> Result<Self> {
        CellSimplex::new(v)
    }
}

impl From<CellSimplex> for Vec<Label> {
    fn from(c: CellSimplex) -> Vec<Label> {
        c.0
    }
}

#[derive(Serialize, Deserialize)]
struct RawTriangulation {
    m: Label,
    d: usize,
    cells: Vec<Vec<Label>>,
}

/// A triangulation of `C(m, 2d)`, stored as its lexicographically sorted set
/// of cells. Construction checks shape only (tuple lengths and label range);
/// [`validate`] performs the full semantic check.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTriangulation", into = "RawTriangulation")]
pub struct Triangulation {
    params: Params,
    cells: Vec<CellSimplex>,
}

impl Triangulation {
    pub fn new(params: Params, cells: Vec<CellSimplex>) -> Result<Self> {
        for c in &cells {
            if c.entries().len() != params.cell_len() {
                return Err(Error::invalid(format!(
                    "cell {c:?} does not have 2d + 1 = {} entries",
                    params.cell_len()
                )));
            }
            if *c.entries().last().unwrap() > params.m() {
                return Err(Error::invalid(format!(
                    "cell {c:?} exceeds the vertex range [1, {}]",
                    params.m()
                )));
            }
        }
        let mut cells = cells;
        cells.sort();
        cells.dedup();
        Ok(Triangulation { params, cells })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn cells(&self) -> &[CellSimplex] {
        &self.cells
    }
}

impl std::fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Triangulation(m={}, d={}, {:?})",
            self.params.m(),
            self.params.d(),
            self.cells
        )
    }
}

impl TryFrom<RawTriangulation> for Triangulation {
    type Error = Error;

    fn try_from(raw: RawTriangulation) -> Result<Self> {
        let params = Params::new(raw.m, raw.d)?;
        let cells = raw
            .cells
            .into_iter()
            .map(CellSimplex::new)
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(params, cells)
    }
}

impl From<Triangulation> for RawTriangulation {
    fn from(t: Triangulation) -> RawTriangulation {
        RawTriangulation {
            m: t.params.m(),
            d: t.params.d(),
            cells: t.cells.into_iter().map(Vec::from).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawFaceSet {
    m: Label,
    d: usize,
    faces: Vec<Vec<Label>>,
}

/// A set of separated `(d+1)`-tuples within `[1, m]`, sorted
/// lexicographically. When it represents the internal `d`-faces `e(S)` of a
/// triangulation it is additionally pairwise non-intertwining of cardinality
/// `C(m-d-1, d)`; those properties are checked by the consumers that need
/// them, not at construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFaceSet", into = "RawFaceSet")]
pub struct FaceSet {
    m: Label,
    d: usize,
    faces: Vec<DSimplex>,
}

impl FaceSet {
    pub fn new(m: Label, d: usize, faces: Vec<DSimplex>) -> Result<Self> {
        for f in &faces {
            if f.entries().len() != d + 1 {
                return Err(Error::invalid(format!(
                    "face {f} does not have d + 1 = {} entries",
                    d + 1
                )));
            }
            if f.last() > m {
                return Err(Error::invalid(format!(
                    "face {f} exceeds the vertex range [1, {m}]"
                )));
            }
            if !is_separated(f) {
                return Err(Error::invalid(format!("face {f} is not separated")));
            }
        }
        let mut faces = faces;
        faces.sort();
        faces.dedup();
        Ok(FaceSet { m, d, faces })
    }

    pub fn m(&self) -> Label {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn faces(&self) -> &[DSimplex] {
        self.faces.as_slice()
    }

    pub fn contains(&self, t: &DSimplex) -> bool {
        self.faces.binary_search(t).is_ok()
    }

    pub fn is_non_intertwining(&self) -> bool {
        for (i, a) in self.faces.iter().enumerate() {
            for b in &self.faces[i + 1..] {
                if crossing(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// The faces that are internal simplices of `C(m, 2d)`.
    pub fn interior_part(&self, p: &Params) -> Vec<DSimplex> {
        self.faces
            .iter()
            .filter(|f| classify_face(f, p) == FaceClass::Internal)
            .cloned()
            .collect()
    }
}

impl std::fmt::Debug for FaceSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FaceSet(m={}, d={}, {:?})", self.m, self.d, self.faces)
    }
}

impl TryFrom<RawFaceSet> for FaceSet {
    type Error = Error;

    fn try_from(raw: RawFaceSet) -> Result<Self> {
        let faces = raw
            .faces
            .into_iter()
            .map(DSimplex::new)
            .collect::<Result<Vec<_>>>()?;
        FaceSet::new(raw.m, raw.d, faces)
    }
}

impl From<FaceSet> for RawFaceSet {
    fn from(x: FaceSet) -> RawFaceSet {
        RawFaceSet {
            m: x.m,
            d: x.d,
            faces: x.faces.into_iter().map(Vec::from).collect(),
        }
    }
}

/// The complete invariant `e(S) = { e(A) : A ∈ S }`: the set of `d`-faces of
/// the triangulation that avoid the lower boundary.
pub fn e_set(t: &Triangulation) -> FaceSet {
    let faces: Vec<DSimplex> = t.cells().iter().map(|c| c.even_face()).collect();
    FaceSet::new(t.params().m(), t.params().d(), faces)
        .expect("even faces of cells are separated and in range")
}

/// Cell count of any triangulation of `C(m, 2d)`: `C(m-d-1, d)`.
pub fn cell_count(p: &Params) -> u64 {
    binomial(p.m() as u64 - p.d() as u64 - 1, p.d() as u64)
}

/// Reconstruct the unique triangulation `S` with `e(S) = x`.
///
/// The cells are exactly the increasing `(2d+1)`-tuples all of whose
/// separated `(d+1)`-subtuples belong to `x`; candidates are grown entry by
/// entry and abandoned as soon as one completed separated subtuple falls
/// outside `x`.
pub fn reconstruct(x: &FaceSet) -> Result<Triangulation> {
    let p = Params::new(x.m(), x.d())?;
    let expected = cell_count(&p);
    if x.faces().len() as u64 != expected {
        return Err(Error::NotATriangulation(format!(
            "face set has {} elements, a triangulation of C({}, {}) has {expected}",
            x.faces().len(),
            p.m(),
            2 * p.d()
        )));
    }
    if !x.is_non_intertwining() {
        return Err(Error::NotATriangulation(
            "face set has an intertwining pair".into(),
        ));
    }
    let mut cells = Vec::new();
    let mut cur: Vec<Label> = Vec::with_capacity(p.cell_len());
    grow_cells(x, &p, 1, &mut cur, &mut cells);
    if cells.len() as u64 != expected {
        return Err(Error::NotATriangulation(format!(
            "candidate cell set has {} cells, expected {expected}",
            cells.len()
        )));
    }
    Triangulation::new(p, cells)
}

fn grow_cells(
    x: &FaceSet,
    p: &Params,
    start: Label,
    cur: &mut Vec<Label>,
    out: &mut Vec<CellSimplex>,
) {
    if cur.len() == p.cell_len() {
        out.push(CellSimplex(cur.clone()));
        return;
    }
    let remaining = (p.cell_len() - cur.len() - 1) as Label;
    for v in start..=(p.m() - remaining) {
        cur.push(v);
        if subtuples_ending_here_allowed(x, p, cur) {
            grow_cells(x, p, v + 1, cur, out);
        }
        cur.pop();
    }
}

/// Check every separated `(d+1)`-subtuple of `cur` whose last entry is the
/// one just pushed; earlier subtuples were checked when their own last entry
/// arrived.
fn subtuples_ending_here_allowed(x: &FaceSet, p: &Params, cur: &[Label]) -> bool {
    let end = cur.len() - 1;
    if end + 1 < p.tuple_len() {
        return true;
    }
    let mut picked: Vec<Label> = Vec::with_capacity(p.tuple_len());
    choose_and_check(x, cur, end, p.tuple_len() - 1, 0, &mut picked)
}

/// Pick `need` entries of `cur[from..end]` in ascending order, append
/// `cur[end]`, and require every separated pick to lie in `x`.
fn choose_and_check(
    x: &FaceSet,
    cur: &[Label],
    end: usize,
    need: usize,
    from: usize,
    picked: &mut Vec<Label>,
) -> bool {
    if need == 0 {
        let mut tuple = picked.clone();
        tuple.push(cur[end]);
        if tuple.windows(2).all(|w| w[0] + 2 <= w[1]) {
            let candidate = DSimplex::new(tuple).expect("subsequence of increasing tuple");
            if !x.contains(&candidate) {
                return false;
            }
        }
        return true;
    }
    if from + need > end {
        return true;
    }
    for i in from..=(end - need) {
        picked.push(cur[i]);
        let ok = choose_and_check(x, cur, end, need - 1, i + 1, picked);
        picked.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Full semantic check: correct cell count, non-intertwining `e`-set of the
/// same cardinality, and reconstruction from the `e`-set returning the
/// triangulation itself. Returns `false` rather than erroring.
pub fn validate(t: &Triangulation) -> bool {
    let expected = cell_count(t.params());
    if t.cells().len() as u64 != expected {
        return false;
    }
    let es = e_set(t);
    if es.faces().len() as u64 != expected || !es.is_non_intertwining() {
        return false;
    }
    match reconstruct(&es) {
        Ok(s) => s == *t,
        Err(_) => false,
    }
}

/// The contraction `S/1`: move vertex 1 onto vertex 2 and drop the cells
/// that degenerate. The result is a triangulation of `C([2, m], 2d)`, kept
/// on the literal label window `[2, m]`.
///
/// Requires `m >= 2d + 2` so the contracted polytope keeps enough vertices.
pub fn contract_vertex1(t: &Triangulation) -> Triangulation {
    let p = t.params();
    assert!(
        p.m() as u64 >= 2 * p.d() as u64 + 2,
        "contraction needs m >= 2d + 2"
    );
    let mut cells = Vec::new();
    for c in t.cells() {
        let e = c.entries();
        if e[0] == 1 {
            if e[1] == 2 {
                continue; // degenerates
            }
            let mut v = e.to_vec();
            v[0] = 2;
            cells.push(CellSimplex(v));
        } else {
            cells.push(c.clone());
        }
    }
    Triangulation::new(*p, cells).expect("contraction preserves cell shape")
}

/// The link `S∖1`: the cells of `S` containing vertex 1, with 1 removed.
/// These `2d`-tuples form a triangulation of `C([2, m], 2d - 1)`.
pub fn link_vertex1(t: &Triangulation) -> Vec<Vec<Label>> {
    let mut out: Vec<Vec<Label>> = t
        .cells()
        .iter()
        .filter(|c| c.entries()[0] == 1)
        .map(|c| c.entries()[1..].to_vec())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The face-set contraction `X/1`: replace every leading 1 by 2 and drop the
/// tuples that stop being separated.
pub fn faceset_contract1(x: &FaceSet) -> FaceSet {
    let mut faces = Vec::new();
    for f in x.faces() {
        let e = f.entries();
        if e[0] == 1 {
            let mut v = e.to_vec();
            v[0] = 2;
            if v.len() > 1 && v[1] < 4 {
                continue; // (2, 3, …) is not separated
            }
            faces.push(DSimplex::new(v).expect("still increasing"));
        } else {
            faces.push(f.clone());
        }
    }
    FaceSet::new(x.m(), x.d(), faces).expect("contracted faces remain separated and in range")
}

/// The face-set deletion `X∖{1,2}`: the `d`-tuples `A` from `[3, m]` such
/// that `1⋆A ∈ X` and either `2⋆A ∈ X` or `3 ∈ A`. (The two possibilities
/// are mutually exclusive: if `3 ∈ A` then `2⋆A` is not separated.)
pub fn faceset_delete12(x: &FaceSet) -> FaceSet {
    assert!(x.d() >= 1, "deletion shortens tuples and needs d >= 1");
    let mut faces = Vec::new();
    for f in x.faces() {
        let e = f.entries();
        if e[0] != 1 {
            continue;
        }
        let tail = &e[1..];
        let qualifies = tail[0] == 3 || {
            let mut two_star = vec![2];
            two_star.extend_from_slice(tail);
            DSimplex::new(two_star).is_ok_and(|t| x.contains(&t))
        };
        if qualifies {
            faces.push(DSimplex::new(tail.to_vec()).expect("suffix of increasing tuple"));
        }
    }
    FaceSet::new(x.m(), x.d() - 1, faces).expect("deleted faces remain separated")
}

/// Enumerate all sorted non-intertwining subsets of `universe` with exactly
/// `size` elements that contain all of `forced`. Budget-limited backtracking
/// over the compatibility graph, parallelized over the first free choice.
pub fn enumerate_noncrossing_sets(
    universe: &[DSimplex],
    forced: &[DSimplex],
    size: usize,
    budget: u64,
) -> Result<Vec<Vec<DSimplex>>> {
    let n = universe.len();
    if n > 128 {
        return Err(Error::LimitExceeded { budget });
    }
    let mut forced_mask: u128 = 0;
    for f in forced {
        let Some(i) = universe.iter().position(|u| u == f) else {
            return Ok(Vec::new());
        };
        forced_mask |= 1 << i;
    }
    if (forced_mask.count_ones() as usize) > size {
        return Ok(Vec::new());
    }
    let compat: Vec<u128> = (0..n)
        .map(|i| {
            let mut mask: u128 = 0;
            for j in 0..n {
                if i != j && !crossing(&universe[i], &universe[j]) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    for i in 0..n {
        if forced_mask >> i & 1 == 1 && forced_mask & !compat[i] & !(1u128 << i) != 0 {
            return Ok(Vec::new()); // forced elements cross each other
        }
    }
    let mut avail: u128 = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    avail &= !forced_mask;
    for i in 0..n {
        if forced_mask >> i & 1 == 1 {
            avail &= compat[i];
        }
    }
    let need = size - forced_mask.count_ones() as usize;
    let counter = AtomicU64::new(budget);
    let branches: Vec<Result<Vec<u128>>> = if need == 0 {
        vec![Ok(vec![forced_mask])]
    } else {
        bits(avail)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&first| {
                let mut out = Vec::new();
                let rest = avail & compat[first] & !low_bits(first + 1);
                descend(
                    &compat,
                    rest,
                    forced_mask | (1 << first),
                    need - 1,
                    &counter,
                    budget,
                    &mut out,
                )?;
                Ok(out)
            })
            .collect()
    };
    let mut sets = Vec::new();
    for b in branches {
        sets.extend(b?);
    }
    let mut out: Vec<Vec<DSimplex>> = sets
        .into_iter()
        .map(|mask| bits(mask).map(|i| universe[i].clone()).collect())
        .collect();
    out.iter_mut().for_each(|s| s.sort());
    out.sort();
    Ok(out)
}

fn descend(
    compat: &[u128],
    avail: u128,
    chosen: u128,
    need: usize,
    counter: &AtomicU64,
    budget: u64,
    out: &mut Vec<u128>,
) -> Result<()> {
    let prev = counter.fetch_sub(1, Ordering::Relaxed);
    if prev == 0 || prev > budget {
        // exhausted, or another worker already wrapped the counter
        return Err(Error::LimitExceeded { budget });
    }
    if need == 0 {
        out.push(chosen);
        return Ok(());
    }
    if (avail.count_ones() as usize) < need {
        return Ok(());
    }
    let mut rest = avail;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        descend(
            compat,
            avail & compat[i] & !low_bits(i + 1),
            chosen | (1 << i),
            need - 1,
            counter,
            budget,
            out,
        )?;
    }
    Ok(())
}

fn low_bits(k: usize) -> u128 {
    if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |i| mask >> i & 1 == 1)
}

/// All `e`-sets of triangulations of `C(m, 2d)`, lexicographically sorted.
///
/// The tuples on the upper boundary belong to every `e`-set (they intertwine
/// nothing and the maximal cardinality forces them in), so the search only
/// chooses the interior part.
pub fn enumerate_e_sets(p: &Params, budget: u64) -> Result<Vec<FaceSet>> {
    let all = enumerate_index_set(p, false);
    let (interior, boundary): (Vec<DSimplex>, Vec<DSimplex>) = all
        .into_iter()
        .partition(|t| classify_face(t, p) == FaceClass::Internal);
    let interior_size = binomial(p.m() as u64 - p.d() as u64 - 2, p.d() as u64) as usize;
    let picks = enumerate_noncrossing_sets(&interior, &[], interior_size, budget)?;
    let mut out: Vec<FaceSet> = picks
        .into_iter()
        .map(|pick| {
            let mut faces = boundary.clone();
            faces.extend(pick);
            FaceSet::new(p.m(), p.d(), faces).expect("faces separated and in range")
        })
        .collect();
    out.sort();
    Ok(out)
}

/// All triangulations of `C(m, 2d)`, materialized from their `e`-sets.
///
/// ```
/// use cyclotope::combinatorics::Params;
/// use cyclotope::triangulation::enumerate_triangulations;
///
/// let hexagon = Params::new(6, 1).unwrap();
/// let all = enumerate_triangulations(&hexagon, cyclotope::DEFAULT_BUDGET).unwrap();
/// assert_eq!(all.len(), 14);
/// ```
pub fn enumerate_triangulations(p: &Params, budget: u64) -> Result<Vec<Triangulation>> {
    let e_sets = enumerate_e_sets(p, budget)?;
    Ok(e_sets
        .par_iter()
        .map(|x| reconstruct(x).expect("maximal non-intertwining sets reconstruct"))
        .collect())
}

/// The upper-boundary tuples `I ∖ Ǐ`, which lie in every `e`-set.
pub fn boundary_faces(p: &Params) -> Vec<DSimplex> {
    enumerate_index_set(p, false)
        .into_iter()
        .filter(|t| classify_face(t, p) == FaceClass::Upper)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BUDGET;

    fn ds(v: &[Label]) -> DSimplex {
        DSimplex::new(v.to_vec()).unwrap()
    }

    fn cell(v: &[Label]) -> CellSimplex {
        CellSimplex::new(v.to_vec()).unwrap()
    }

    fn hexagon_fan() -> Triangulation {
        let p = Params::new(6, 1).unwrap();
        Triangulation::new(
            p,
            vec![
                cell(&[1, 2, 3]),
                cell(&[1, 3, 4]),
                cell(&[1, 4, 5]),
                cell(&[1, 5, 6]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn even_and_odd_faces() {
        let c = cell(&[1, 2, 3, 4, 5]);
        assert_eq!(c.even_face(), ds(&[1, 3, 5]));
        assert_eq!(c.odd_face(), ds(&[2, 4]));
        assert_eq!(cell(&[1, 3, 4, 6, 7]).even_face(), ds(&[1, 4, 7]));
    }

    #[test]
    fn e_set_of_fan() {
        let es = e_set(&hexagon_fan());
        assert_eq!(
            es.faces(),
            &[ds(&[1, 3]), ds(&[1, 4]), ds(&[1, 5]), ds(&[1, 6])]
        );
    }

    #[test]
    fn reconstruct_fan() {
        let x = FaceSet::new(
            6,
            1,
            vec![ds(&[1, 3]), ds(&[1, 4]), ds(&[1, 5]), ds(&[1, 6])],
        )
        .unwrap();
        assert_eq!(reconstruct(&x).unwrap(), hexagon_fan());
    }

    #[test]
    fn reconstruct_rejects_wrong_cardinality() {
        let x = FaceSet::new(6, 1, vec![ds(&[1, 3]), ds(&[1, 4])]).unwrap();
        assert!(matches!(reconstruct(&x), Err(Error::NotATriangulation(_))));
    }

    #[test]
    fn validate_fan_and_corruptions() {
        let fan = hexagon_fan();
        assert!(validate(&fan));
        let p = *fan.params();
        let mut cells = fan.cells().to_vec();
        cells[0] = cell(&[2, 3, 5]);
        let bad = Triangulation::new(p, cells).unwrap();
        assert!(!validate(&bad));
        // the simplex C(2d+1, 2d) has the single-cell triangulation
        let p3 = Params::new(3, 1).unwrap();
        let simplex = Triangulation::new(p3, vec![cell(&[1, 2, 3])]).unwrap();
        assert!(validate(&simplex));
    }

    #[test]
    fn contraction_of_fan() {
        let t = contract_vertex1(&hexagon_fan());
        assert_eq!(
            t.cells(),
            &[cell(&[2, 3, 4]), cell(&[2, 4, 5]), cell(&[2, 5, 6])]
        );
    }

    #[test]
    fn link_of_fan() {
        assert_eq!(
            link_vertex1(&hexagon_fan()),
            vec![vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 6]]
        );
    }

    #[test]
    fn faceset_contraction_and_deletion() {
        let x = FaceSet::new(
            6,
            1,
            vec![ds(&[1, 3]), ds(&[1, 4]), ds(&[1, 5]), ds(&[1, 6])],
        )
        .unwrap();
        let c = faceset_contract1(&x);
        assert_eq!(c.faces(), &[ds(&[2, 4]), ds(&[2, 5]), ds(&[2, 6])]);
        let del = faceset_delete12(&x);
        assert_eq!(del.faces(), &[ds(&[3])]);
        assert_eq!(c.faces().len() + del.faces().len(), x.faces().len());
    }

    #[test]
    fn enumeration_counts() {
        let p5 = Params::new(5, 1).unwrap();
        assert_eq!(
            enumerate_triangulations(&p5, DEFAULT_BUDGET).unwrap().len(),
            5
        );
        let p6 = Params::new(6, 1).unwrap();
        assert_eq!(
            enumerate_triangulations(&p6, DEFAULT_BUDGET).unwrap().len(),
            14
        );
        // the simplex has exactly one triangulation
        let p3 = Params::new(3, 1).unwrap();
        let ts = enumerate_triangulations(&p3, DEFAULT_BUDGET).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].cells(), &[cell(&[1, 2, 3])]);
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let p = Params::new(8, 1).unwrap();
        assert!(matches!(
            enumerate_triangulations(&p, 3),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn roundtrip_and_invariants_small() {
        for (m, d) in [(5u32, 1usize), (6, 1), (7, 1), (6, 2), (7, 2), (8, 3)] {
            let p = Params::new(m, d).unwrap();
            let expected = cell_count(&p);
            let boundary = boundary_faces(&p);
            for t in enumerate_triangulations(&p, DEFAULT_BUDGET).unwrap() {
                assert_eq!(t.cells().len() as u64, expected);
                let es = e_set(&t);
                assert_eq!(es.faces().len() as u64, expected);
                assert!(es.is_non_intertwining());
                assert!(boundary.iter().all(|b| es.contains(b)));
                assert_eq!(reconstruct(&es).unwrap(), t);
                assert!(validate(&t));
            }
        }
    }

    #[test]
    fn contraction_compatibilities_small() {
        for (m, d) in [(5u32, 1usize), (6, 1), (7, 1), (6, 2), (7, 2)] {
            let p = Params::new(m, d).unwrap();
            for t in enumerate_triangulations(&p, DEFAULT_BUDGET).unwrap() {
                let es = e_set(&t);
                // e(S/1) = e(S)/1
                assert_eq!(e_set(&contract_vertex1(&t)), faceset_contract1(&es));
                // cell count drop under contraction
                let dropped = t.cells().len() - contract_vertex1(&t).cells().len();
                assert_eq!(
                    dropped as u64,
                    binomial(m as u64 - d as u64 - 2, d as u64 - 1)
                );
                // |X/1| + |X∖{1,2}| = |X|
                assert_eq!(
                    faceset_contract1(&es).faces().len() + faceset_delete12(&es).faces().len(),
                    es.faces().len()
                );
                // vertex 1 lies in some cell
                assert!(!link_vertex1(&t).is_empty());
                // e(S∖{1,2}) = e(S)∖{1,2}, via the double link
                let link1 = link_vertex1(&t);
                let mut double: Vec<Vec<Label>> = link1
                    .iter()
                    .filter(|c| c[0] == 2)
                    .map(|c| c[1..].to_vec())
                    .collect();
                double.sort();
                let mut e_double: Vec<Vec<Label>> = double
                    .iter()
                    .map(|c| c.iter().copied().step_by(2).collect())
                    .collect();
                e_double.sort();
                e_double.dedup();
                let del: Vec<Vec<Label>> = faceset_delete12(&es)
                    .faces()
                    .iter()
                    .map(|f| f.entries().to_vec())
                    .collect();
                assert_eq!(e_double, del);
            }
        }
    }

    #[test]
    fn e_set_equals_separated_faces_of_cells() {
        // the even-face image coincides with the set of all separated
        // (d+1)-subtuples of the cells
        fn subtuples(
            entries: &[Label],
            len: usize,
            from: usize,
            cur: &mut Vec<Label>,
            out: &mut Vec<Vec<Label>>,
        ) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for i in from..entries.len() {
                cur.push(entries[i]);
                subtuples(entries, len, i + 1, cur, out);
                cur.pop();
            }
        }
        for (m, d) in [(6u32, 1usize), (7, 1), (7, 2), (8, 3)] {
            let p = Params::new(m, d).unwrap();
            for t in enumerate_triangulations(&p, DEFAULT_BUDGET).unwrap() {
                let mut separated_faces = std::collections::BTreeSet::new();
                for c in t.cells() {
                    let mut all = Vec::new();
                    subtuples(c.entries(), d + 1, 0, &mut Vec::new(), &mut all);
                    for f in all {
                        let f = DSimplex::new(f).unwrap();
                        if is_separated(&f) {
                            separated_faces.insert(f);
                        }
                    }
                }
                let es: std::collections::BTreeSet<DSimplex> =
                    e_set(&t).faces().iter().cloned().collect();
                assert_eq!(separated_faces, es);
            }
        }
    }

    #[test]
    fn size_identity_on_arbitrary_subsets() {
        // |X/1| + |X∖{1,2}| = |X| needs no non-intertwining hypothesis
        let p = Params::new(8, 2).unwrap();
        let all = enumerate_index_set(&p, false);
        for pick in 0u32..(1 << 12) {
            let faces: Vec<DSimplex> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| *i < 12 && pick >> i & 1 == 1)
                .map(|(_, f)| f.clone())
                .collect();
            let x = FaceSet::new(8, 2, faces).unwrap();
            assert_eq!(
                faceset_contract1(&x).faces().len() + faceset_delete12(&x).faces().len(),
                x.faces().len(),
                "failed for {x:?}"
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let fan = hexagon_fan();
        let s = serde_json::to_string(&fan).unwrap();
        assert_eq!(
            s,
            r#"{"m":6,"d":1,"cells":[[1,2,3],[1,3,4],[1,4,5],[1,5,6]]}"#
        );
        let back: Triangulation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, fan);
        let es = e_set(&fan);
        let s = serde_json::to_string(&es).unwrap();
        assert_eq!(s, r#"{"m":6,"d":1,"faces":[[1,3],[1,4],[1,5],[1,6]]}"#);
        let back: FaceSet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, es);
    }
}
