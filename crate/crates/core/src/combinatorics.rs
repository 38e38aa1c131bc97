//! Core predicates and index sets on increasing `(d+1)`-tuples.
//!
//! A `d`-simplex with vertices on the moment curve is recorded as a strictly
//! increasing `(d+1)`-tuple from `[1, m]`. A tuple is *separated* when
//! consecutive entries differ by at least two; separated tuples index the
//! `d`-simplices off the lower boundary of `C(m, 2d)`, and the *interior*
//! ones (which additionally satisfy the cyclic gap condition
//! `last + 2 <= first + m`) index the internal `d`-simplices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Label, Result};

/// Ambient parameters of the cyclic polytope `C(m, 2d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params {
    m: Label,
    d: usize,
}

impl Params {
    /// Requires `d >= 1` and `m >= 2d + 1`, otherwise `C(m, 2d)` is not a
    /// polytope with `m` vertices.
    pub fn new(m: Label, d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::invalid(format!("d must be at least 1, got {d}")));
        }
        if (m as u64) < 2 * d as u64 + 1 {
            return Err(Error::invalid(format!(
                "m must be at least 2d + 1 = {}, got {m}",
                2 * d + 1
            )));
        }
        Ok(Params { m, d })
    }

    pub fn m(&self) -> Label {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Length of a `d`-simplex tuple.
    pub fn tuple_len(&self) -> usize {
        self.d + 1
    }

    /// Length of a top-dimensional cell tuple.
    pub fn cell_len(&self) -> usize {
        2 * self.d + 1
    }
}

/// A `d`-simplex on the moment curve: a strictly increasing tuple of 1-based
/// vertex labels. The length is context-dependent (`d + 1` at the polytope
/// level, shorter tuples appear in link and deletion operations).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Label>", into = "Vec<Label>")]
pub struct DSimplex(Vec<Label>);

impl DSimplex {
    pub fn new(entries: Vec<Label>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("simplex tuple must be nonempty"));
        }
        if entries[0] < 1 {
            return Err(Error::invalid("vertex labels are 1-based"));
        }
        if !entries.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "tuple {entries:?} is not strictly increasing"
            )));
        }
        Ok(DSimplex(entries))
    }

    pub fn entries(&self) -> &[Label] {
        &self.0
    }

    pub fn first(&self) -> Label {
        self.0[0]
    }

    pub fn last(&self) -> Label {
        *self.0.last().unwrap()
    }

    /// Whether this tuple has the right length for `p` and stays within
    /// `[1, p.m()]`.
    pub fn fits(&self, p: &Params) -> bool {
        self.0.len() == p.tuple_len() && self.last() <= p.m()
    }
}

impl fmt::Debug for DSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for DSimplex {
    /// Dot-joined labels, e.g. `1.3.5`; used in DOT output and diagnostics.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join("."))
    }
}

impl TryFrom<Vec<Label>> for DSimplex {
    type Error = Error;

    fn try_from(v: Vec<Label>) -> Result<Self> {
        DSimplex::new(v)
    }
}

impl From<DSimplex> for Vec<Label> {
    fn from(s: DSimplex) -> Vec<Label> {
        s.0
    }
}

/// Consecutive entries differ by at least two. Membership in the index set
/// of off-lower-boundary simplices, given that entries stay within `[1, m]`.
pub fn is_separated(t: &DSimplex) -> bool {
    t.entries().windows(2).all(|w| w[0] + 2 <= w[1])
}

/// Separated and additionally `last + 2 <= first + m`: the relative interior
/// of the simplex lies in the interior of `C(m, 2d)`.
pub fn is_interior(t: &DSimplex, p: &Params) -> bool {
    is_separated(t) && t.last() as u64 + 2 <= t.first() as u64 + p.m() as u64
}

/// Position of a `d`-simplex relative to the boundary of `C(m, 2d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceClass {
    /// Lies within a lower boundary facet: contains `i` and `i + 1`.
    Lower,
    /// Lies within an upper boundary facet and no lower one: separated and
    /// contains both `1` and `m`.
    Upper,
    /// Relative interior contained in the interior of the polytope.
    Internal,
}

pub fn classify_face(t: &DSimplex, p: &Params) -> FaceClass {
    if !is_separated(t) {
        FaceClass::Lower
    } else if t.first() == 1 && t.last() == p.m() {
        FaceClass::Upper
    } else {
        FaceClass::Internal
    }
}

/// Strict interleaving `a_0 < b_0 < a_1 < b_1 < … < a_k < b_k` of two
/// equal-length increasing sequences. Generic over the scalar so that
/// integer simplex tuples and rational lamination leaves share one
/// definition.
pub fn interleaves<S, T>(a: &[S], b: &[T]) -> bool
where
    S: PartialOrd<T>,
    T: PartialOrd<S>,
{
    assert_eq!(a.len(), b.len(), "interleaving requires equal lengths");
    if a.is_empty() {
        return false;
    }
    for k in 0..a.len() {
        if !(a[k] < b[k]) {
            return false;
        }
        if k + 1 < a.len() && !(b[k] < a[k + 1]) {
            return false;
        }
    }
    true
}

/// The intertwining relation `a ≀ b`.
pub fn intertwines(a: &DSimplex, b: &DSimplex) -> bool {
    interleaves(a.entries(), b.entries())
}

/// Symmetric closure of intertwining: the two simplices cross in a single
/// interior point.
pub fn crossing(a: &DSimplex, b: &DSimplex) -> bool {
    intertwines(a, b) || intertwines(b, a)
}

/// A subset of `{0, …, d}` selecting positions of a `(d+1)`-tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The full set `{0, …, d}`.
    pub fn full(d: usize) -> Self {
        assert!(d < 32, "subset mask limited to 32 positions");
        SubsetMask(((1u64 << (d + 1)) - 1) as u32)
    }

    pub fn from_elements(elements: &[usize]) -> Self {
        let mut bits = 0u32;
        for &e in elements {
            assert!(e < 32);
            bits |= 1 << e;
        }
        SubsetMask(bits)
    }

    pub fn contains(&self, k: usize) -> bool {
        k < 32 && self.0 >> k & 1 == 1
    }

    pub fn size(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_full(&self, d: usize) -> bool {
        *self == Self::full(d)
    }

    /// All subsets of `{0, …, d}`, ordered by (size, numeric value). This is
    /// the deterministic iteration order used wherever exchange layers are
    /// assembled.
    pub fn all(d: usize) -> Vec<SubsetMask> {
        let mut out: Vec<SubsetMask> = (0..1u32 << (d + 1)).map(SubsetMask).collect();
        out.sort_by_key(|m| (m.size(), m.bits()));
        out
    }

    /// Subsets of `{0, …, d}` with exactly `r` elements, in increasing
    /// numeric order.
    pub fn of_size(d: usize, r: usize) -> Vec<SubsetMask> {
        (0..1u32 << (d + 1))
            .map(SubsetMask)
            .filter(|m| m.size() == r)
            .collect()
    }
}

/// The exchange index map `m_X`: entry `k` is `a_k` if `k ∈ X`, else `b_k`.
///
/// Total on intertwining pairs, where the result is automatically strictly
/// increasing; rejected otherwise rather than silently sorted.
pub fn m_index(a: &DSimplex, b: &DSimplex, x: SubsetMask) -> Result<DSimplex> {
    assert_eq!(a.entries().len(), b.entries().len());
    let out: Vec<Label> = (0..a.entries().len())
        .map(|k| {
            if x.contains(k) {
                a.entries()[k]
            } else {
                b.entries()[k]
            }
        })
        .collect();
    DSimplex::new(out).map_err(|_| {
        Error::invalid(format!(
            "m_X({a}, {b}) is not increasing; the arguments do not intertwine"
        ))
    })
}

/// The exchange index map `n_X`: the sorted union of `{a_k : k ∈ X}` and
/// `{b_(k-1) : k ∉ X}`, where `b_(-1)` means `b_d`.
///
/// Rejected if the multiset has a repeat, which cannot happen when `a ≀ b`.
pub fn n_index(a: &DSimplex, b: &DSimplex, x: SubsetMask) -> Result<DSimplex> {
    let len = a.entries().len();
    assert_eq!(len, b.entries().len());
    let mut out: Vec<Label> = Vec::with_capacity(len);
    for k in 0..len {
        if x.contains(k) {
            out.push(a.entries()[k]);
        } else if k == 0 {
            out.push(b.entries()[len - 1]);
        } else {
            out.push(b.entries()[k - 1]);
        }
    }
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid(format!(
            "n_X({a}, {b}) has a repeated entry; the arguments do not intertwine"
        )));
    }
    DSimplex::new(out)
}

/// The cyclic suspension permutation of the interior index set: shift all
/// entries down by one, wrapping a leading `1` around to a trailing `m`.
pub fn suspend(t: &DSimplex, p: &Params) -> Result<DSimplex> {
    if !is_interior(t, p) {
        return Err(Error::invalid(format!(
            "{t} is not interior for m={}",
            p.m()
        )));
    }
    let e = t.entries();
    let out = if e[0] > 1 {
        e.iter().map(|v| v - 1).collect()
    } else {
        let mut v: Vec<Label> = e[1..].iter().map(|v| v - 1).collect();
        v.push(p.m());
        v
    };
    let s = DSimplex::new(out)?;
    debug_assert!(is_interior(&s, p));
    Ok(s)
}

/// Exact inverse of [`suspend`].
pub fn unsuspend(t: &DSimplex, p: &Params) -> Result<DSimplex> {
    if !is_interior(t, p) {
        return Err(Error::invalid(format!(
            "{t} is not interior for m={}",
            p.m()
        )));
    }
    let e = t.entries();
    let out = if t.last() < p.m() {
        e.iter().map(|v| v + 1).collect()
    } else {
        let mut v = vec![1];
        v.extend(e[..e.len() - 1].iter().map(|v| v + 1));
        v
    };
    let s = DSimplex::new(out)?;
    debug_assert!(is_interior(&s, p));
    Ok(s)
}

/// All separated `(d+1)`-tuples in `[1, m]`, in lexicographic order; with
/// `interior_only` restrict to the interior index set. The full set has
/// `C(m - d, d + 1)` elements.
pub fn enumerate_index_set(p: &Params, interior_only: bool) -> Vec<DSimplex> {
    let mut out = Vec::new();
    let mut cur: Vec<Label> = Vec::with_capacity(p.tuple_len());
    gen_separated(p.m(), p.tuple_len(), 1, &mut cur, &mut out);
    if interior_only {
        out.retain(|t| is_interior(t, p));
    }
    out
}

fn gen_separated(
    m: Label,
    len: usize,
    start: Label,
    cur: &mut Vec<Label>,
    out: &mut Vec<DSimplex>,
) {
    if cur.len() == len {
        out.push(DSimplex(cur.clone()));
        return;
    }
    let remaining = (len - cur.len() - 1) as u64;
    // the last entry must still fit after leaving gaps of two
    let hi = m as u64 - 2 * remaining;
    let mut v = start as u64;
    while v <= hi {
        cur.push(v as Label);
        gen_separated(m, len, v as Label + 2, cur, out);
        cur.pop();
        v += 1;
    }
}

/// Exact binomial coefficient, `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - k + 1 + i) as u128 / (i as u128 + 1);
    }
    acc as u64
}
