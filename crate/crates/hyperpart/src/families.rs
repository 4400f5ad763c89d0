//! Families of partial sign functions on coordinates `1..=k`: fullness,
//! conflict-free coordinate sets, the agreement property over subfamilies,
//! and the translation into a hypergraph of domains.
//!
//! A function assigns `p` or `n` to each coordinate of its domain. A family
//! is *full* when every coordinate attains both values across the family.
//! The agreement property at level `n` asks for a subfamily `G` and at least
//! `n` coordinates, inside the union of `G`'s domains, on which no two
//! members of `G` disagree.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexSet};

/// Coordinate universes are capped so domains fit in one machine word.
pub const MAX_COORDS: usize = 64;

/// Subfamily enumeration is exponential in the family size; larger families
/// are rejected rather than silently sampled.
pub const MAX_FAMILY_EXHAUSTIVE: usize = 25;

/// Exhaustive search over all families is only feasible for tiny `k`.
pub const MAX_SEARCH_COORDS: usize = 6;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("coordinate count {0} exceeds the supported maximum {MAX_COORDS}")]
    TooManyCoords(usize),
    #[error("coordinate {coord} out of range 1..={k}")]
    CoordOutOfRange { coord: usize, k: usize },
    #[error("function index {index} out of range ({len} functions)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("family of {0} functions exceeds the exhaustive cap {MAX_FAMILY_EXHAUSTIVE}")]
    FamilyTooLarge(usize),
    #[error("search supports k <= {MAX_SEARCH_COORDS}, got {0}")]
    SearchTooWide(usize),
    #[error("sign value {0:?} is not \"p\" or \"n\"")]
    BadSign(String),
}

// ---------------------------------------------------------------------------
// SignFunction
// ---------------------------------------------------------------------------

/// A partial function from `{1..k}` to `{p, n}`, stored as a domain mask and
/// the mask of coordinates mapped to `p` (bit `i` is coordinate `i+1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignFunction {
    domain: u64,
    positive: u64,
}

impl SignFunction {
    pub fn new(domain: u64, positive: u64) -> Self {
        debug_assert!(positive & !domain == 0);
        SignFunction {
            domain,
            positive: positive & domain,
        }
    }

    /// Builds from 1-based coordinate assignments; `true` means `p`.
    pub fn from_pairs(pairs: &[(usize, bool)]) -> Self {
        let mut domain = 0u64;
        let mut positive = 0u64;
        for &(coord, is_p) in pairs {
            debug_assert!((1..=MAX_COORDS).contains(&coord));
            let bit = 1u64 << (coord - 1);
            domain |= bit;
            if is_p {
                positive |= bit;
            }
        }
        SignFunction { domain, positive }
    }

    /// Total function on `k` coordinates, constant `p` or constant `n`.
    pub fn constant(k: usize, is_p: bool) -> Self {
        let domain = mask_all(k);
        SignFunction {
            domain,
            positive: if is_p { domain } else { 0 },
        }
    }

    pub fn domain(self) -> u64 {
        self.domain
    }

    pub fn positive_mask(self) -> u64 {
        self.positive
    }

    pub fn negative_mask(self) -> u64 {
        self.domain & !self.positive
    }

    pub fn is_defined_at(self, coord: usize) -> bool {
        coord >= 1 && self.domain >> (coord - 1) & 1 == 1
    }

    /// `Some(true)` for `p`, `Some(false)` for `n`, `None` outside the domain.
    pub fn value_at(self, coord: usize) -> Option<bool> {
        self.is_defined_at(coord)
            .then(|| self.positive >> (coord - 1) & 1 == 1)
    }

    pub fn disagrees_with(self, other: SignFunction) -> bool {
        let common = self.domain & other.domain;
        (self.positive ^ other.positive) & common != 0
    }
}

impl fmt::Debug for SignFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        let mut bits = self.domain;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            map.entry(
                &(i + 1),
                &if self.positive >> i & 1 == 1 {
                    "p"
                } else {
                    "n"
                },
            );
        }
        map.finish()
    }
}

fn mask_all(k: usize) -> u64 {
    debug_assert!(k <= MAX_COORDS);
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

// ---------------------------------------------------------------------------
// Family
// ---------------------------------------------------------------------------

/// A family of partial sign functions sharing the coordinate count `k`.
/// Duplicates are kept (they change no predicate) but can be detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub k: usize,
    pub functions: Vec<SignFunction>,
}

/// A subfamily (by indices) and a coordinate set witnessing the agreement
/// property: `coords` lies inside the union of the subfamily's domains and
/// no two selected functions disagree on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementWitness {
    pub function_indices: Vec<usize>,
    /// 1-based coordinates, always the full conflict-free set of the subfamily.
    pub coords: Vec<usize>,
}

/// Outcome of randomized subfamily sampling: a verified witness, or nothing
/// learned.
#[derive(Clone, Debug)]
pub enum SampledAgreement {
    Holds(AgreementWitness),
    Inconclusive { attempts: u64 },
}

impl Family {
    pub fn new(k: usize, functions: Vec<SignFunction>) -> Result<Self, FamilyError> {
        if k > MAX_COORDS {
            return Err(FamilyError::TooManyCoords(k));
        }
        let universe = mask_all(k);
        for f in &functions {
            if f.domain() & !universe != 0 {
                let coord = (f.domain() & !universe).trailing_zeros() as usize + 1;
                return Err(FamilyError::CoordOutOfRange { coord, k });
            }
        }
        Ok(Family { k, functions })
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn has_duplicates(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.functions.iter().any(|f| !seen.insert(*f))
    }

    /// Every coordinate of `1..=k` attains both `p` and `n` across the family.
    pub fn is_full(&self) -> bool {
        let mut seen_p = 0u64;
        let mut seen_n = 0u64;
        for f in &self.functions {
            seen_p |= f.positive_mask();
            seen_n |= f.negative_mask();
        }
        let universe = mask_all(self.k);
        seen_p & seen_n & universe == universe
    }

    /// Coordinates in the union of the selected functions' domains on which
    /// no two selected functions disagree (1-based).
    pub fn conflict_free_coords(&self, indices: &[usize]) -> Result<Vec<usize>, FamilyError> {
        Ok(mask_to_coords(self.conflict_free_mask(indices)?))
    }

    fn conflict_free_mask(&self, indices: &[usize]) -> Result<u64, FamilyError> {
        let mut seen_p = 0u64;
        let mut seen_n = 0u64;
        for &i in indices {
            let f = self.functions.get(i).ok_or(FamilyError::IndexOutOfRange {
                index: i,
                len: self.functions.len(),
            })?;
            seen_p |= f.positive_mask();
            seen_n |= f.negative_mask();
        }
        Ok((seen_p | seen_n) & !(seen_p & seen_n))
    }

    /// Decides whether some subfamily admits at least `n` conflict-free
    /// coordinates, returning a witness when one exists.
    ///
    /// Exhausts all subfamilies (within the size cap), pruning branches whose
    /// remaining domains cannot reach `n` coordinates.
    pub fn agreement_holds(
        &self,
        n: usize,
    ) -> Result<(bool, Option<AgreementWitness>), FamilyError> {
        if self.functions.len() > MAX_FAMILY_EXHAUSTIVE {
            return Err(FamilyError::FamilyTooLarge(self.functions.len()));
        }
        // remaining_union[i] = union of domains of functions i..
        let mut remaining_union = vec![0u64; self.functions.len() + 1];
        for i in (0..self.functions.len()).rev() {
            remaining_union[i] = remaining_union[i + 1] | self.functions[i].domain();
        }
        let mut chosen: Vec<usize> = Vec::new();
        let found = self.agreement_search(0, 0, 0, n, &remaining_union, &mut chosen);
        Ok(match found {
            Some(witness) => (true, Some(witness)),
            None => (false, None),
        })
    }

    fn agreement_search(
        &self,
        idx: usize,
        seen_p: u64,
        seen_n: u64,
        n: usize,
        remaining_union: &[u64],
        chosen: &mut Vec<usize>,
    ) -> Option<AgreementWitness> {
        let conflict = seen_p & seen_n;
        let settled = (seen_p | seen_n) & !conflict;
        if settled.count_ones() as usize >= n && !chosen.is_empty() {
            return Some(AgreementWitness {
                function_indices: chosen.clone(),
                coords: mask_to_coords(settled),
            });
        }
        if idx == self.functions.len() {
            return None;
        }
        // Conflicts only grow along a branch; the potential is what remains.
        let potential = (settled | remaining_union[idx]) & !conflict;
        if (potential.count_ones() as usize) < n {
            return None;
        }
        let f = self.functions[idx];
        chosen.push(idx);
        if let Some(w) = self.agreement_search(
            idx + 1,
            seen_p | f.positive_mask(),
            seen_n | f.negative_mask(),
            n,
            remaining_union,
            chosen,
        ) {
            return Some(w);
        }
        chosen.pop();
        self.agreement_search(idx + 1, seen_p, seen_n, n, remaining_union, chosen)
    }

    /// Full, and no subfamily reaches `n` conflict-free coordinates.
    pub fn is_bounding(&self, n: usize) -> Result<bool, FamilyError> {
        Ok(self.is_full() && !self.agreement_holds(n)?.0)
    }

    /// Randomized fallback for families beyond the exhaustive cap: samples
    /// subfamilies from the seed. Finding one proves the agreement property;
    /// finding none is inconclusive, never a negative verdict.
    pub fn agreement_sampled(&self, n: usize, attempts: u64, seed: u64) -> SampledAgreement {
        use rand::rngs::SmallRng;
        use rand::seq::index::sample;
        use rand::{Rng, SeedableRng};
        let mut rng = SmallRng::seed_from_u64(seed);
        if self.functions.is_empty() {
            return SampledAgreement::Inconclusive { attempts: 0 };
        }
        for _ in 0..attempts {
            // Small subfamilies conflict less; draw the size first.
            let size = rng.gen_range(1..=self.functions.len().min(12));
            let mut chosen: Vec<usize> = sample(&mut rng, self.functions.len(), size).into_vec();
            chosen.sort_unstable();
            let mut seen_p = 0u64;
            let mut seen_n = 0u64;
            for &i in &chosen {
                seen_p |= self.functions[i].positive_mask();
                seen_n |= self.functions[i].negative_mask();
            }
            let settled = (seen_p | seen_n) & !(seen_p & seen_n);
            if settled.count_ones() as usize >= n {
                return SampledAgreement::Holds(AgreementWitness {
                    function_indices: chosen,
                    coords: mask_to_coords(settled),
                });
            }
        }
        SampledAgreement::Inconclusive { attempts }
    }

    /// The hypergraph of domains: vertices `0..k` stand for coordinates
    /// `1..=k`, edges are the distinct domains. A full family yields no
    /// isolated vertices.
    pub fn to_hypergraph(&self) -> Hypergraph {
        let mut seen = Vec::new();
        for f in &self.functions {
            if !seen.contains(&f.domain()) {
                seen.push(f.domain());
            }
        }
        let edges = seen
            .into_iter()
            .map(|d| VertexSet::from_bits(d as u128))
            .collect();
        Hypergraph::new(self.k, edges).expect("domains lie inside the coordinate universe")
    }
}

fn mask_to_coords(mask: u64) -> Vec<usize> {
    let mut coords = Vec::new();
    let mut bits = mask;
    while bits != 0 {
        coords.push(bits.trailing_zeros() as usize + 1);
        bits &= bits - 1;
    }
    coords
}

// ---------------------------------------------------------------------------
// Exhaustive search for full families without the agreement property
// ---------------------------------------------------------------------------

/// Outcome of `search_full_non_agreement`.
#[derive(Clone, Debug)]
pub enum SearchOutcome {
    /// A verified full family on `k` coordinates where no subfamily reaches
    /// `n` conflict-free coordinates.
    Found(Family),
    /// The whole space was exhausted; no such family exists.
    ExhaustedNone,
    /// The time budget ran out before exhaustion; no conclusion.
    BudgetExceeded,
}

/// Searches the `3^k - 1` nonempty partial sign functions for a full family
/// on which no subfamily attains `n` conflict-free coordinates.
///
/// The enumeration adds functions in a fixed order and prunes any branch
/// whose family already has the agreement property (supersets inherit it)
/// or can no longer become full.
pub fn search_full_non_agreement(
    k: usize,
    n: usize,
    budget: Duration,
) -> Result<SearchOutcome, FamilyError> {
    if k > MAX_SEARCH_COORDS {
        return Err(FamilyError::SearchTooWide(k));
    }
    let mut functions = Vec::new();
    for domain in 1..=mask_all(k) {
        let mut sub = domain;
        loop {
            functions.push(SignFunction::new(domain, sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & domain;
        }
    }
    // Bigger domains first: full families appear earlier in the walk.
    functions.sort_by_key(|f| {
        (
            std::cmp::Reverse(f.domain().count_ones()),
            f.domain(),
            f.positive_mask(),
        )
    });
    let mut remaining_p = vec![0u64; functions.len() + 1];
    let mut remaining_n = vec![0u64; functions.len() + 1];
    for i in (0..functions.len()).rev() {
        remaining_p[i] = remaining_p[i + 1] | functions[i].positive_mask();
        remaining_n[i] = remaining_n[i + 1] | functions[i].negative_mask();
    }
    let deadline = Instant::now() + budget;
    let mut chosen: Vec<SignFunction> = Vec::new();
    let universe = mask_all(k);
    let mut exhausted = true;
    let found = search_non_agreement_rec(
        k,
        n,
        universe,
        &functions,
        &remaining_p,
        &remaining_n,
        0,
        0,
        0,
        &mut chosen,
        deadline,
        &mut exhausted,
    );
    Ok(match found {
        Some(family) => SearchOutcome::Found(family),
        None if exhausted => SearchOutcome::ExhaustedNone,
        None => SearchOutcome::BudgetExceeded,
    })
}

#[allow(clippy::too_many_arguments)]
fn search_non_agreement_rec(
    k: usize,
    n: usize,
    universe: u64,
    functions: &[SignFunction],
    remaining_p: &[u64],
    remaining_n: &[u64],
    idx: usize,
    seen_p: u64,
    seen_n: u64,
    chosen: &mut Vec<SignFunction>,
    deadline: Instant,
    exhausted: &mut bool,
) -> Option<Family> {
    if seen_p & seen_n & universe == universe {
        let family = Family::new(k, chosen.clone()).expect("coords validated");
        if let Ok(false) = family.agreement_holds(n).map(|(holds, _)| holds) {
            return Some(family);
        }
    }
    // Capping the size keeps exhaustion complete: fullness needs at most one
    // function per coordinate-value pair (2k <= 12 here), and subfamilies of
    // a non-agreeing family never agree, so any witness family shrinks to
    // one within the cap.
    if idx == functions.len() || chosen.len() >= 2 * k {
        return None;
    }
    if Instant::now() > deadline {
        *exhausted = false;
        return None;
    }
    // Fullness must stay reachable with the functions not yet considered.
    if (seen_p | remaining_p[idx]) & (seen_n | remaining_n[idx]) & universe != universe {
        return None;
    }
    let f = functions[idx];
    // Include f unless the grown family immediately has the agreement
    // property; supersets of an agreeing family always agree.
    chosen.push(f);
    let candidate = Family::new(k, chosen.clone()).expect("coords validated");
    let can_extend = matches!(candidate.agreement_holds(n), Ok((false, _)));
    if can_extend {
        if let Some(found) = search_non_agreement_rec(
            k,
            n,
            universe,
            functions,
            remaining_p,
            remaining_n,
            idx + 1,
            seen_p | f.positive_mask(),
            seen_n | f.negative_mask(),
            chosen,
            deadline,
            exhausted,
        ) {
            return Some(found);
        }
    }
    chosen.pop();
    search_non_agreement_rec(
        k,
        n,
        universe,
        functions,
        remaining_p,
        remaining_n,
        idx + 1,
        seen_p,
        seen_n,
        chosen,
        deadline,
        exhausted,
    )
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    k: usize,
    functions: Vec<BTreeMap<String, String>>,
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let functions = self
            .functions
            .iter()
            .map(|f| {
                let mut map = BTreeMap::new();
                for coord in 1..=self.k {
                    if let Some(is_p) = f.value_at(coord) {
                        map.insert(coord.to_string(), if is_p { "p" } else { "n" }.to_string());
                    }
                }
                map
            })
            .collect();
        FamilyJson {
            k: self.k,
            functions,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = FamilyJson::deserialize(deserializer)?;
        if raw.k > MAX_COORDS {
            return Err(D::Error::custom(FamilyError::TooManyCoords(raw.k)));
        }
        let mut functions = Vec::new();
        for map in raw.functions {
            let mut pairs = Vec::new();
            for (coord_text, sign) in map {
                let coord: usize = coord_text
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad coordinate key {coord_text:?}")))?;
                if coord < 1 || coord > raw.k {
                    return Err(D::Error::custom(FamilyError::CoordOutOfRange {
                        coord,
                        k: raw.k,
                    }));
                }
                let is_p = match sign.as_str() {
                    "p" => true,
                    "n" => false,
                    _ => return Err(D::Error::custom(FamilyError::BadSign(sign))),
                };
                pairs.push((coord, is_p));
            }
            functions.push(SignFunction::from_pairs(&pairs));
        }
        Family::new(raw.k, functions).map_err(D::Error::custom)
    }
}
