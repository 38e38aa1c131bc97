//! Index-level combinatorics of the higher Auslander algebras of linearly
//! oriented type A.
//!
//! The indecomposable summands of the distinguished `d`-cluster tilting
//! module over the algebra with parameters `(n, d)` are indexed by the
//! separated `(d+1)`-tuples in `[1, n+2d]`. Hom and Ext spaces between
//! summands are zero- or one-dimensional and decided by pure inequality
//! chains on the index tuples, which makes tilting mutation an index-level
//! computation.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{intertwines, is_separated, m_index, DSimplex, Params, SubsetMask};
use crate::triangulation::FaceSet;
use crate::{Error, Label, Result};

/// Parameters `(n, d)` of the algebra; summand indices live in
/// `[1, n + 2d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraParams {
    n: Label,
    d: usize,
}

impl AlgebraParams {
    pub fn new(n: Label, d: usize) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::invalid("algebra parameters need n >= 1 and d >= 1"));
        }
        Ok(AlgebraParams { n, d })
    }

    pub fn n(&self) -> Label {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The largest vertex label, `n + 2d`.
    pub fn max_label(&self) -> Label {
        self.n + 2 * self.d as Label
    }

    /// The ambient polytope parameters `(m, d)` with `m = n + 2d`.
    pub fn polytope(&self) -> Params {
        Params::new(self.max_label(), self.d).expect("n >= 1 gives m >= 2d + 1")
    }
}

#[derive(Serialize, Deserialize)]
struct RawModuleIndex {
    n: Label,
    d: usize,
    tuple: Vec<Label>,
}

/// The index of an indecomposable summand of the `d`-cluster tilting
/// module: a separated `(d+1)`-tuple in `[1, n + 2d]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModuleIndex", into = "RawModuleIndex")]
pub struct ModuleIndex {
    params: AlgebraParams,
    tuple: DSimplex,
}

impl ModuleIndex {
    pub fn new(params: AlgebraParams, tuple: DSimplex) -> Result<Self> {
        if tuple.entries().len() != params.d + 1 {
            return Err(Error::invalid(format!(
                "index {tuple} does not have d + 1 = {} entries",
                params.d + 1
            )));
        }
        if tuple.last() > params.max_label() {
            return Err(Error::invalid(format!(
                "index {tuple} exceeds the label range [1, {}]",
                params.max_label()
            )));
        }
        if !is_separated(&tuple) {
            return Err(Error::invalid(format!("index {tuple} is not separated")));
        }
        Ok(ModuleIndex { params, tuple })
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn tuple(&self) -> &DSimplex {
        &self.tuple
    }
}

impl std::fmt::Debug for ModuleIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M{}", self.tuple)
    }
}

impl TryFrom<RawModuleIndex> for ModuleIndex {
    type Error = Error;

    fn try_from(raw: RawModuleIndex) -> Result<Self> {
        ModuleIndex::new(AlgebraParams::new(raw.n, raw.d)?, DSimplex::new(raw.tuple)?)
    }
}

impl From<ModuleIndex> for RawModuleIndex {
    fn from(i: ModuleIndex) -> RawModuleIndex {
        RawModuleIndex {
            n: i.params.n,
            d: i.params.d,
            tuple: i.tuple.into(),
        }
    }
}

fn check_same_params(i: &ModuleIndex, j: &ModuleIndex) {
    assert_eq!(i.params, j.params, "module indices from different algebras");
}

/// Nonvanishing of Hom from summand `i` to summand `j`:
/// `i_0 - 1 < j_0 < i_1 - 1 < j_1 < … < i_d - 1 < j_d`. When nonzero the
/// space is one-dimensional.
pub fn hom_nonzero(i: &ModuleIndex, j: &ModuleIndex) -> bool {
    check_same_params(i, j);
    let a = i.tuple.entries();
    let b = j.tuple.entries();
    for k in 0..a.len() {
        // i_k - 1 < j_k, i.e. j_k >= i_k
        if b[k] < a[k] {
            return false;
        }
        // j_k < i_(k+1) - 1
        if k + 1 < a.len() && b[k] + 1 >= a[k + 1] {
            return false;
        }
    }
    true
}

/// Nonvanishing of `Ext^d` from summand `i` to summand `j`: the tuple of
/// `j` intertwines the tuple of `i`. When nonzero the space is
/// one-dimensional.
pub fn ext_d_nonzero(i: &ModuleIndex, j: &ModuleIndex) -> bool {
    check_same_params(i, j);
    intertwines(&j.tuple, &i.tuple)
}

/// Composition-factor predicate: the simple indexed by the `d`-tuple `s` is
/// a composition factor of the summand `i` iff
/// `i_0 - 1 < s_0 < i_1 - 1 < … < s_(d-1) < i_d - 1`.
pub fn has_composition_factor(i: &ModuleIndex, s: &[Label]) -> bool {
    let a = i.tuple.entries();
    assert_eq!(
        s.len() + 1,
        a.len(),
        "composition factors are indexed by d-tuples"
    );
    for k in 0..s.len() {
        if s[k] < a[k] || s[k] + 1 >= a[k + 1] {
            return false;
        }
    }
    true
}

/// Projective summands are exactly those whose index starts at 1.
pub fn is_projective(i: &ModuleIndex) -> bool {
    i.tuple.first() == 1
}

/// Injective summands are exactly those whose index ends at `n + 2d`.
pub fn is_injective(i: &ModuleIndex) -> bool {
    i.tuple.last() == i.params.max_label()
}

/// The higher Auslander–Reiten translation: zero on projectives, otherwise
/// shift every entry down by one.
pub fn tau_d(i: &ModuleIndex) -> Option<ModuleIndex> {
    if is_projective(i) {
        return None;
    }
    let tuple = DSimplex::new(i.tuple.entries().iter().map(|v| v - 1).collect())
        .expect("shift preserves monotonicity");
    Some(ModuleIndex::new(i.params, tuple).expect("shift preserves separation and range"))
}

/// Inverse translation: zero on injectives, otherwise shift every entry up
/// by one.
pub fn tau_d_inv(i: &ModuleIndex) -> Option<ModuleIndex> {
    if is_injective(i) {
        return None;
    }
    let tuple = DSimplex::new(i.tuple.entries().iter().map(|v| v + 1).collect())
        .expect("shift preserves monotonicity");
    Some(ModuleIndex::new(i.params, tuple).expect("shift preserves separation and range"))
}

/// The projective resolution of the summand `i`, listed cover-first (degree
/// 0 through d). Projective summands resolve as themselves.
///
/// The degree-k term drops `i_k` from the index, shifts the earlier entries
/// up by one and prefixes 1.
pub fn projective_resolution(i: &ModuleIndex) -> Vec<ModuleIndex> {
    if is_projective(i) {
        return vec![i.clone()];
    }
    let e = i.tuple.entries();
    let d = i.params.d;
    (0..=d)
        .map(|k| {
            let mut v = Vec::with_capacity(d + 1);
            v.push(1);
            v.extend(e[..k].iter().map(|x| x + 1));
            v.extend(&e[k + 1..]);
            ModuleIndex::new(i.params, DSimplex::new(v).expect("increasing"))
                .expect("resolution terms are separated indices")
        })
        .collect()
}

/// The injective coresolution of the summand `i`, listed envelope-first.
/// Injective summands coresolve as themselves.
///
/// The degree-k term drops `i_(d-k)`, shifts the later entries down by one
/// and appends `n + 2d`.
pub fn injective_coresolution(i: &ModuleIndex) -> Vec<ModuleIndex> {
    if is_injective(i) {
        return vec![i.clone()];
    }
    let e = i.tuple.entries();
    let d = i.params.d;
    (0..=d)
        .map(|k| {
            let mut v = Vec::with_capacity(d + 1);
            v.extend(&e[..d - k]);
            v.extend(e[d - k + 1..].iter().map(|x| x - 1));
            v.push(i.params.max_label());
            ModuleIndex::new(i.params, DSimplex::new(v).expect("increasing"))
                .expect("coresolution terms are separated indices")
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct RawExchangeSequence {
    n: Label,
    d: usize,
    source: Vec<Label>,
    target: Vec<Label>,
    layers: Vec<Vec<Vec<Label>>>,
}

/// The exchange sequence from summand `i` to summand `j`, with middle
/// layers `E_d, …, E_1` listed outermost-first. Layer `E_r` consists of the
/// separated tuples `m_X` over the subsets `X` of size `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawExchangeSequence", into = "RawExchangeSequence")]
pub struct ExchangeSequence {
    pub source: ModuleIndex,
    pub target: ModuleIndex,
    pub layers: Vec<Vec<ModuleIndex>>,
}

impl TryFrom<RawExchangeSequence> for ExchangeSequence {
    type Error = Error;

    fn try_from(raw: RawExchangeSequence) -> Result<Self> {
        let params = AlgebraParams::new(raw.n, raw.d)?;
        let parse =
            |v: Vec<Label>| -> Result<ModuleIndex> { ModuleIndex::new(params, DSimplex::new(v)?) };
        Ok(ExchangeSequence {
            source: parse(raw.source)?,
            target: parse(raw.target)?,
            layers: raw
                .layers
                .into_iter()
                .map(|layer| layer.into_iter().map(parse).collect())
                .collect::<Result<_>>()?,
        })
    }
}

impl From<ExchangeSequence> for RawExchangeSequence {
    fn from(s: ExchangeSequence) -> RawExchangeSequence {
        RawExchangeSequence {
            n: s.source.params.n,
            d: s.source.params.d,
            source: s.source.tuple.into(),
            target: s.target.tuple.into(),
            layers: s
                .layers
                .into_iter()
                .map(|layer| layer.into_iter().map(|m| m.tuple.into()).collect())
                .collect(),
        }
    }
}

/// The middle layers of the exchange sequence between the intertwining pair
/// `i ≀ j`, without a mutation context: layer `r` (for `r = d, …, 1`) holds
/// the separated `m_X` with `|X| = r`, sorted.
pub fn exchange_layers(i: &ModuleIndex, j: &ModuleIndex) -> Result<Vec<Vec<ModuleIndex>>> {
    check_same_params(i, j);
    if !intertwines(&i.tuple, &j.tuple) {
        return Err(Error::invalid(format!(
            "exchange sequences require the source to intertwine the target; got {} and {}",
            i.tuple, j.tuple
        )));
    }
    let d = i.params.d;
    let mut layers = Vec::with_capacity(d);
    for r in (1..=d).rev() {
        let mut layer = Vec::new();
        for x in SubsetMask::of_size(d, r) {
            let t = m_index(&i.tuple, &j.tuple, x).expect("intertwining pair");
            if is_separated(&t) {
                layer.push(ModuleIndex::new(i.params, t).expect("separated index in range"));
            }
        }
        layer.sort();
        layer.dedup();
        layers.push(layer);
    }
    Ok(layers)
}

/// The exchange sequence replacing summand `i` by summand `j` inside the
/// tilting set `t`.
///
/// Requires `i ≀ j` (the nonvanishing-`Ext^d(M_j, M_i)` direction), `i ∈ t`
/// and `j ∉ t`. Every separated `m_X` other than `i` and `j` must already be
/// a member of `t`; a violation means `t` was not a valid mutation context
/// and raises [`Error::ExchangeObstruction`].
pub fn tilting_exchange(i: &ModuleIndex, j: &ModuleIndex, t: &FaceSet) -> Result<ExchangeSequence> {
    check_same_params(i, j);
    if t.m() != i.params.max_label() || t.d() != i.params.d {
        return Err(Error::invalid(
            "tilting set parameters do not match the algebra",
        ));
    }
    if !t.contains(&i.tuple) || t.contains(&j.tuple) {
        return Err(Error::invalid(format!(
            "the mutation context must contain the source {} and not the target {}",
            i.tuple, j.tuple
        )));
    }
    let layers = exchange_layers(i, j)?;
    for layer in &layers {
        for term in layer {
            if term.tuple != i.tuple && term.tuple != j.tuple && !t.contains(&term.tuple) {
                return Err(Error::ExchangeObstruction(format!(
                    "middle term {} is missing from the tilting set",
                    term.tuple
                )));
            }
        }
    }
    Ok(ExchangeSequence {
        source: i.clone(),
        target: j.clone(),
        layers,
    })
}

/// All summand indices of the algebra, lexicographically sorted.
pub fn all_indices(params: &AlgebraParams) -> Vec<ModuleIndex> {
    crate::combinatorics::enumerate_index_set(&params.polytope(), false)
        .into_iter()
        .map(|t| ModuleIndex::new(*params, t).expect("enumerated indices are valid"))
        .collect()
}
