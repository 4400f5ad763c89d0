//! A family of `2n` alternating series laid out over rapidly growing blocks,
//! with exact rational evaluation of subseries partial sums, the sign audit
//! at block boundaries, and per-series finite trend verdicts.
//!
//! Index `1, 2, 3, ...` is partitioned into adjacent blocks with even
//! lengths `b_1 = 2` and `b_{m+1} >= m^3 (b_1 + ... + b_m)`, so every block
//! starts at an odd index. Block `m` is special for the residue
//! `j = ((m-1) mod n) + 1`: on it, series `i <= n` with `i != j` runs
//! `+1/m, -1/m, ...`, series `j` runs `-1/m, +1/m, ...`, series `n+j` runs
//! `+1/b_m, -1/b_m, ...`, and the other high series vanish.
//!
//! Selections are stored per block as the counts of chosen odd-position and
//! even-position indices; only the imbalance `delta = odd - even` enters any
//! partial sum, so aggregates are exact and cheap even for huge blocks.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("series index {i} out of range 1..={max}")]
    SeriesOutOfRange { i: usize, max: usize },
    #[error("index {k} lies beyond the {blocks} generated blocks")]
    IndexBeyondTruncation { k: BigUint, blocks: usize },
    #[error("pattern has {got} blocks, spec has {want}")]
    BlockCountMismatch { got: usize, want: usize },
    #[error("block {block}: selection {count} exceeds the {cap} available positions")]
    SelectionTooLarge {
        block: usize,
        count: BigUint,
        cap: BigUint,
    },
}

// ---------------------------------------------------------------------------
// SeriesSpec
// ---------------------------------------------------------------------------

/// Block layout for the `2n` series: minimal admissible even lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    n: usize,
    /// `lengths[m-1]` is the length of block `m`.
    lengths: Vec<BigUint>,
    /// `starts[m-1]` is the 1-based first index of block `m`.
    starts: Vec<BigUint>,
}

/// Builds the minimal admissible layout: `b_1 = 2`, and `b_{m+1}` the
/// smallest even integer at least `m^3 (b_1 + ... + b_m)`.
pub fn build_spec(n: usize, blocks: usize) -> SeriesSpec {
    assert!(n >= 2, "the construction needs n >= 2");
    assert!(blocks >= 1);
    let mut lengths = vec![BigUint::from(2u32)];
    let mut total = BigUint::from(2u32);
    for m in 1..blocks {
        let mut next = BigUint::from(m as u64).pow(3) * &total;
        if (&next % 2u32).is_one() {
            next += 1u32;
        }
        total += &next;
        lengths.push(next);
    }
    let mut starts = Vec::with_capacity(blocks);
    let mut start = BigUint::one();
    for len in &lengths {
        starts.push(start.clone());
        start += len;
    }
    SeriesSpec { n, lengths, starts }
}

impl SeriesSpec {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn series_count(&self) -> usize {
        2 * self.n
    }

    pub fn blocks(&self) -> usize {
        self.lengths.len()
    }

    pub fn block_length(&self, m: usize) -> &BigUint {
        &self.lengths[m - 1]
    }

    pub fn block_start(&self, m: usize) -> &BigUint {
        &self.starts[m - 1]
    }

    /// Total number of indices covered by the generated blocks.
    pub fn truncation(&self) -> BigUint {
        self.lengths.iter().sum()
    }

    /// The series for which block `m` is special.
    pub fn residue(&self, m: usize) -> usize {
        (m - 1) % self.n + 1
    }

    /// `b_1 + ... + b_{m-1}`.
    pub fn prefix_length(&self, m: usize) -> BigUint {
        self.lengths[..m - 1].iter().sum()
    }

    /// Which block contains index `k`, or an error beyond the truncation.
    pub fn block_of(&self, k: &BigUint) -> Result<usize, SeriesError> {
        if k.is_zero() || *k > self.truncation() {
            return Err(SeriesError::IndexBeyondTruncation {
                k: k.clone(),
                blocks: self.blocks(),
            });
        }
        // starts is ascending; find the last start <= k.
        let mut lo = 0usize;
        let mut hi = self.starts.len();
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.starts[mid] <= *k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo + 1)
    }

    /// The exact term of series `i` at index `k`.
    pub fn term(&self, i: usize, k: &BigUint) -> Result<BigRational, SeriesError> {
        if i == 0 || i > self.series_count() {
            return Err(SeriesError::SeriesOutOfRange {
                i,
                max: self.series_count(),
            });
        }
        let m = self.block_of(k)?;
        let j = self.residue(m);
        let odd = (k % 2u32).is_one();
        let magnitude = if i <= self.n {
            BigRational::new(BigInt::one(), BigInt::from(m as u64))
        } else if i == self.n + j {
            BigRational::new(BigInt::one(), BigInt::from(self.block_length(m).clone()))
        } else {
            return Ok(BigRational::zero());
        };
        // Series j runs against the others on its own block.
        let positive_at_odd = if i <= self.n { i != j } else { true };
        Ok(if odd == positive_at_odd {
            magnitude
        } else {
            -magnitude
        })
    }
}

// ---------------------------------------------------------------------------
// BlockPattern
// ---------------------------------------------------------------------------

/// Per-block counts of selected odd-position and even-position indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPattern {
    /// `(odd_count, even_count)` per block.
    pub selected: Vec<(BigUint, BigUint)>,
}

impl BlockPattern {
    pub fn empty(spec: &SeriesSpec) -> Self {
        BlockPattern {
            selected: vec![(BigUint::zero(), BigUint::zero()); spec.blocks()],
        }
    }

    /// Every odd position of every block special for series 1.
    pub fn demo(spec: &SeriesSpec) -> Self {
        let mut pattern = Self::empty(spec);
        for m in 1..=spec.blocks() {
            if spec.residue(m) == 1 {
                pattern.selected[m - 1].0 = spec.block_length(m) / 2u32;
            }
        }
        pattern
    }

    /// Uniform counts in `0..=b_m/2` for both parities of every block.
    pub fn random<R: Rng>(spec: &SeriesSpec, rng: &mut R) -> Self {
        BlockPattern {
            selected: (1..=spec.blocks())
                .map(|m| {
                    let cap = spec.block_length(m) / 2u32 + 1u32;
                    (rng.gen_biguint_below(&cap), rng.gen_biguint_below(&cap))
                })
                .collect(),
        }
    }

    pub fn validate(&self, spec: &SeriesSpec) -> Result<(), SeriesError> {
        if self.selected.len() != spec.blocks() {
            return Err(SeriesError::BlockCountMismatch {
                got: self.selected.len(),
                want: spec.blocks(),
            });
        }
        for (idx, (o, e)) in self.selected.iter().enumerate() {
            let cap = spec.block_length(idx + 1) / 2u32;
            for count in [o, e] {
                if *count > cap {
                    return Err(SeriesError::SelectionTooLarge {
                        block: idx + 1,
                        count: count.clone(),
                        cap,
                    });
                }
            }
        }
        Ok(())
    }

    /// Imbalance of selected odd positions over even positions in block `m`.
    pub fn delta(&self, m: usize) -> BigInt {
        let (o, e) = &self.selected[m - 1];
        BigInt::from(o.clone()) - BigInt::from(e.clone())
    }

    /// The canonical explicit index set for block `m`: the first chosen odd
    /// and even positions. Only for blocks small enough to enumerate.
    pub fn explicit_indices(&self, spec: &SeriesSpec, m: usize) -> Option<Vec<u64>> {
        let start = spec.block_start(m).to_u64()?;
        let len = spec.block_length(m).to_u64()?;
        if len > 1 << 20 {
            return None;
        }
        let (o, e) = &self.selected[m - 1];
        let (o, e) = (o.to_u64()?, e.to_u64()?);
        let mut indices = Vec::new();
        indices.extend((0..o).map(|t| start + 2 * t));
        indices.extend((0..e).map(|t| start + 2 * t + 1));
        indices.sort_unstable();
        Some(indices)
    }
}

/// Block-by-block contribution of the selection to series `i`:
/// `delta/m` against the block's own series, `-delta/m` on it, `delta/b_m`
/// for its high partner, zero for the other high series.
fn block_contribution(
    spec: &SeriesSpec,
    pattern: &BlockPattern,
    i: usize,
    m: usize,
) -> BigRational {
    let j = spec.residue(m);
    let delta = pattern.delta(m);
    if i <= spec.n() {
        let share = BigRational::new(delta, BigInt::from(m as u64));
        if i == j {
            -share
        } else {
            share
        }
    } else if i == spec.n() + j {
        BigRational::new(delta, BigInt::from(spec.block_length(m).clone()))
    } else {
        BigRational::zero()
    }
}

// ---------------------------------------------------------------------------
// Boundary sums
// ---------------------------------------------------------------------------

/// Cumulative exact partial sums of every series at the end of every block.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    /// `sums[i-1][m-1]` is the partial sum of series `i` at the end of block `m`.
    pub sums: Vec<Vec<BigRational>>,
}

pub fn boundary_sums(
    spec: &SeriesSpec,
    pattern: &BlockPattern,
) -> Result<BoundaryReport, SeriesError> {
    pattern.validate(spec)?;
    let mut sums = Vec::with_capacity(spec.series_count());
    for i in 1..=spec.series_count() {
        let mut row = Vec::with_capacity(spec.blocks());
        let mut acc = BigRational::zero();
        for m in 1..=spec.blocks() {
            acc += block_contribution(spec, pattern, i, m);
            row.push(acc.clone());
        }
        sums.push(row);
    }
    Ok(BoundaryReport { sums })
}

// ---------------------------------------------------------------------------
// Claim audit
// ---------------------------------------------------------------------------

/// One block at which the selection's imbalance exceeds `m` times all prior
/// block lengths, together with the sign verdicts the construction forces.
#[derive(Clone, Debug, Serialize)]
pub struct TriggeredBlock {
    pub block: usize,
    /// The series whose residue class the block belongs to.
    pub series: usize,
    pub own_sum_negative: bool,
    pub others_positive: bool,
    pub prior_terms_bounded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimAuditReport {
    pub triggered: Vec<TriggeredBlock>,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// For every block `m` whose imbalance satisfies
/// `delta(m) > m * (b_1 + ... + b_{m-1})`, asserts that at the end of the
/// block the special series `i = residue(m)` has a negative partial sum,
/// every other low series a positive one, and that the terms before the
/// block were bounded by `b_1 + ... + b_{m-1}` in absolute value.
pub fn claim_audit(
    spec: &SeriesSpec,
    pattern: &BlockPattern,
) -> Result<ClaimAuditReport, SeriesError> {
    let report = boundary_sums(spec, pattern)?;
    let mut triggered = Vec::new();
    let mut violations = Vec::new();
    for m in 1..=spec.blocks() {
        let prefix = BigInt::from(spec.prefix_length(m));
        let delta = pattern.delta(m);
        if delta <= BigInt::from(m as u64) * &prefix {
            continue;
        }
        let i = spec.residue(m);
        let own_end = &report.sums[i - 1][m - 1];
        let own_sum_negative = own_end.is_negative();
        if !own_sum_negative {
            violations.push(format!("block {m}: series {i} partial sum is not negative"));
        }
        let mut others_positive = true;
        for j in 1..=spec.n() {
            if j == i {
                continue;
            }
            if !report.sums[j - 1][m - 1].is_positive() {
                others_positive = false;
                violations.push(format!("block {m}: series {j} partial sum is not positive"));
            }
        }
        // |partial before the block| must stay under the prior lengths; the
        // first block has no prior terms and the bound degenerates to zero.
        let prefix_rat = BigRational::from(prefix.clone());
        let mut prior_terms_bounded = true;
        for s in 1..=spec.n() {
            let before = if m == 1 {
                BigRational::zero()
            } else {
                report.sums[s - 1][m - 2].clone()
            };
            let ok = if m == 1 {
                before.is_zero()
            } else {
                before.abs() < prefix_rat
            };
            if !ok {
                prior_terms_bounded = false;
                violations.push(format!(
                    "block {m}: series {s} prior terms exceed the bound"
                ));
            }
        }
        triggered.push(TriggeredBlock {
            block: m,
            series: i,
            own_sum_negative,
            others_positive,
            prior_terms_bounded,
        });
    }
    let pass = violations.is_empty();
    Ok(ClaimAuditReport {
        triggered,
        violations,
        pass,
    })
}

// ---------------------------------------------------------------------------
// Finite trend classification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Rising,
    Falling,
    Oscillating,
    Flat,
}

pub(crate) fn serialize_ratio<S: serde::Serializer>(
    r: &BigRational,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Per-series finite verdict: the boundary-sum trend over the last half of
/// the blocks, plus the exact positive-part and negative-part sums of the
/// selected terms over the whole truncation.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesVerdict {
    pub series: usize,
    pub trend: Trend,
    #[serde(serialize_with = "serialize_ratio")]
    pub positive_part: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub negative_part: BigRational,
}

pub fn classify_pattern(
    spec: &SeriesSpec,
    pattern: &BlockPattern,
) -> Result<Vec<SeriesVerdict>, SeriesError> {
    pattern.validate(spec)?;
    let window = spec.blocks().div_ceil(2);
    let first_block = spec.blocks() - window + 1;
    let mut verdicts = Vec::new();
    for i in 1..=spec.series_count() {
        // Trend of the boundary sums across the last `window` blocks,
        // including the step into the window's first block.
        let mut any_up = false;
        let mut any_down = false;
        for m in first_block..=spec.blocks() {
            let step = block_contribution(spec, pattern, i, m);
            match step.cmp(&BigRational::zero()) {
                std::cmp::Ordering::Greater => any_up = true,
                std::cmp::Ordering::Less => any_down = true,
                std::cmp::Ordering::Equal => {}
            }
        }
        let trend = match (any_up, any_down) {
            (true, true) => Trend::Oscillating,
            (true, false) => Trend::Rising,
            (false, true) => Trend::Falling,
            (false, false) => Trend::Flat,
        };
        let (positive_part, negative_part) = signed_parts(spec, pattern, i);
        verdicts.push(SeriesVerdict {
            series: i,
            trend,
            positive_part,
            negative_part,
        });
    }
    Ok(verdicts)
}

/// Exact sums of the positive and of the negative selected terms of series `i`.
fn signed_parts(spec: &SeriesSpec, pattern: &BlockPattern, i: usize) -> (BigRational, BigRational) {
    let mut pos = BigRational::zero();
    let mut neg = BigRational::zero();
    for m in 1..=spec.blocks() {
        let j = spec.residue(m);
        let (o, e) = &pattern.selected[m - 1];
        let (o, e) = (BigInt::from(o.clone()), BigInt::from(e.clone()));
        let (den, pos_count, neg_count): (BigInt, BigInt, BigInt) = if i <= spec.n() {
            let den = BigInt::from(m as u64);
            if i == j {
                (den, e, o) // its own block: odds negative, evens positive
            } else {
                (den, o, e)
            }
        } else if i == spec.n() + j {
            (BigInt::from(spec.block_length(m).clone()), o, e)
        } else {
            continue;
        };
        pos += BigRational::new(pos_count, den.clone());
        neg -= BigRational::new(neg_count, den);
    }
    (pos, neg)
}

/// Summary of auditing a batch of seeded random patterns.
#[derive(Clone, Debug, Serialize)]
pub struct RandomAuditSummary {
    pub patterns: u64,
    pub seed: u64,
    pub triggered_blocks: u64,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Runs `claim_audit` on `count` random patterns drawn from the given seed.
pub fn audit_random_patterns(
    spec: &SeriesSpec,
    count: u64,
    seed: u64,
) -> Result<RandomAuditSummary, SeriesError> {
    use rand::SeedableRng;
    let mut rng = rand::rngs::SmallRng::seed_from_u64(seed);
    let mut triggered_blocks = 0u64;
    let mut violations = Vec::new();
    for _ in 0..count {
        let pattern = BlockPattern::random(spec, &mut rng);
        let audit = claim_audit(spec, &pattern)?;
        triggered_blocks += audit.triggered.len() as u64;
        violations.extend(audit.violations);
    }
    let pass = violations.is_empty();
    Ok(RandomAuditSummary {
        patterns: count,
        seed,
        triggered_blocks,
        violations,
        pass,
    })
}

/// Term-by-term sum of series `i` over explicit indices, for cross-checking
/// the block aggregates on small blocks.
pub fn sum_terms(spec: &SeriesSpec, i: usize, indices: &[u64]) -> Result<BigRational, SeriesError> {
    let mut acc = BigRational::zero();
    for &k in indices {
        acc += spec.term(i, &BigUint::from(k))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    fn int(x: i64) -> BigRational {
        BigRational::from(BigInt::from(x))
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn minimal_block_lengths() {
        let spec = build_spec(2, 5);
        let lengths: Vec<u64> = spec.lengths.iter().map(|b| b.to_u64().unwrap()).collect();
        assert_eq!(lengths, vec![2, 2, 32, 972, 64512]);
        assert_eq!(build_spec(3, 1).lengths, vec![BigUint::from(2u32)]);
        // Every block starts at an odd index.
        for m in 1..=5 {
            assert!((spec.block_start(m) % 2u32).is_one());
        }
    }

    #[test]
    fn term_rules_for_three_series_pairs() {
        let spec = build_spec(3, 4);
        // Block 1 is special for series 1.
        assert_eq!(spec.term(2, &BigUint::one()).unwrap(), int(1));
        assert_eq!(spec.term(1, &BigUint::one()).unwrap(), int(-1));
        assert_eq!(spec.term(5, &BigUint::one()).unwrap(), int(0));
        // The high partner of block 1 is series n+1 = 4: +1/b_1 at odd.
        assert_eq!(spec.term(4, &BigUint::one()).unwrap(), ratio(1, 2));
        assert_eq!(spec.term(4, &BigUint::from(2u32)).unwrap(), ratio(-1, 2));
        // Block 2 (indices 3, 4) is special for series 2.
        assert_eq!(spec.term(2, &BigUint::from(3u32)).unwrap(), ratio(-1, 2));
        assert_eq!(spec.term(1, &BigUint::from(3u32)).unwrap(), ratio(1, 2));
        assert!(spec.term(1, &BigUint::from(10_000_000u64)).is_err());
        assert!(spec.term(7, &BigUint::one()).is_err());
    }

    #[test]
    fn demo_boundary_sums_grow_by_halves() {
        for n in 2..=4usize {
            let spec = build_spec(n, 10);
            let demo = BlockPattern::demo(&spec);
            let report = boundary_sums(&spec, &demo).unwrap();
            let special: Vec<usize> = (1..=10).filter(|&m| spec.residue(m) == 1).collect();
            let mut count = 0;
            for (m, sum) in report.sums[n].iter().enumerate() {
                count += usize::from(special.contains(&(m + 1)));
                assert_eq!(*sum, ratio(count as i64, 2), "n={n}, boundary {}", m + 1);
            }
        }
    }

    #[test]
    fn all_odd_block_contribution_is_half() {
        let spec = build_spec(2, 4);
        let mut pattern = BlockPattern::empty(&spec);
        pattern.selected[2].0 = spec.block_length(3) / 2u32; // block 3 special for series 1
        let report = boundary_sums(&spec, &pattern).unwrap();
        assert_eq!(report.sums[2][2], ratio(1, 2)); // series n+1 = 3
    }

    #[test]
    fn empty_pattern_is_silent() {
        let spec = build_spec(3, 6);
        let empty = BlockPattern::empty(&spec);
        let report = boundary_sums(&spec, &empty).unwrap();
        assert!(report
            .sums
            .iter()
            .all(|row| row.iter().all(|s| s.is_zero())));
        let audit = claim_audit(&spec, &empty).unwrap();
        assert!(audit.pass);
        assert!(audit.triggered.is_empty());
        let verdicts = classify_pattern(&spec, &empty).unwrap();
        assert!(verdicts.iter().all(|v| v.trend == Trend::Flat));
    }

    #[test]
    fn demo_pattern_audit_and_trends() {
        for n in 2..=4usize {
            let spec = build_spec(n, 10);
            let demo = BlockPattern::demo(&spec);
            let audit = claim_audit(&spec, &demo).unwrap();
            assert!(audit.pass, "violations: {:?}", audit.violations);
            let special = (1..=10).filter(|&m| spec.residue(m) == 1).count();
            assert_eq!(
                audit.triggered.len(),
                special,
                "every special block triggers"
            );
            let verdicts = classify_pattern(&spec, &demo).unwrap();
            assert_eq!(
                verdicts[n].trend,
                Trend::Rising,
                "series n+1 gains 1/2 per special block"
            );
            assert_eq!(verdicts[0].trend, Trend::Falling);
        }
    }

    #[test]
    fn random_patterns_pass_audit() {
        let spec = build_spec(3, 8);
        let mut rng = SmallRng::seed_from_u64(42);
        for _ in 0..200 {
            let pattern = BlockPattern::random(&spec, &mut rng);
            let audit = claim_audit(&spec, &pattern).unwrap();
            assert!(audit.pass, "violations: {:?}", audit.violations);
        }
    }

    #[test]
    fn aggregates_match_term_enumeration_on_small_blocks() {
        let spec = build_spec(2, 4);
        let mut rng = SmallRng::seed_from_u64(7);
        for _ in 0..50 {
            let pattern = BlockPattern::random(&spec, &mut rng);
            for m in 1..=3 {
                let indices = pattern.explicit_indices(&spec, m).unwrap();
                for i in 1..=spec.series_count() {
                    let explicit = sum_terms(&spec, i, &indices).unwrap();
                    let aggregate = block_contribution(&spec, &pattern, i, m);
                    assert_eq!(explicit, aggregate, "series {i}, block {m}");
                }
            }
        }
    }

    #[test]
    fn full_block_sums() {
        let spec = build_spec(3, 5);
        for m in 1..=5usize {
            let mut full = BlockPattern::empty(&spec);
            full.selected[m - 1] = (spec.block_length(m) / 2u32, spec.block_length(m) / 2u32);
            for i in 1..=spec.n() {
                // Balanced selection cancels exactly.
                assert!(block_contribution(&spec, &full, i, m).is_zero());
                // Absolute sum over the block is b_m/m for the low series.
                let abs_total = BigRational::new(
                    BigInt::from(spec.block_length(m).clone()),
                    BigInt::from(m as u64),
                );
                let (pos, neg) = {
                    let mut one_block = BlockPattern::empty(&spec);
                    one_block.selected[m - 1] = full.selected[m - 1].clone();
                    let v = classify_pattern(&spec, &one_block).unwrap();
                    (
                        v[i - 1].positive_part.clone(),
                        v[i - 1].negative_part.clone(),
                    )
                };
                assert_eq!(&pos - &neg, abs_total);
            }
        }
    }

    #[test]
    fn prior_terms_bound_holds_for_random_patterns() {
        let spec = build_spec(4, 8);
        let mut rng = SmallRng::seed_from_u64(3);
        for _ in 0..100 {
            let pattern = BlockPattern::random(&spec, &mut rng);
            let report = boundary_sums(&spec, &pattern).unwrap();
            for m in 2..=spec.blocks() {
                let prefix = BigRational::from(BigInt::from(spec.prefix_length(m)));
                for i in 1..=spec.n() {
                    assert!(report.sums[i - 1][m - 2].abs() < prefix);
                }
            }
        }
    }

    #[test]
    fn pattern_validation() {
        let spec = build_spec(2, 3);
        let mut bad = BlockPattern::empty(&spec);
        bad.selected[0].0 = BigUint::from(2u32); // block 1 has only one odd slot
        assert!(matches!(
            bad.validate(&spec),
            Err(SeriesError::SelectionTooLarge { .. })
        ));
        let short = BlockPattern {
            selected: vec![(BigUint::zero(), BigUint::zero())],
        };
        assert!(matches!(
            short.validate(&spec),
            Err(SeriesError::BlockCountMismatch { .. })
        ));
    }
}
