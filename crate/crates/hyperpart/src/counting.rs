//! Exact arbitrary-precision verification of the binomial identities, the
//! harmonic upper bound, the `k_n` recurrence, and the derived bounds tables.
//!
//! Everything that claims "holds" here is decided in exact integer or rational
//! arithmetic. Real-valued bounds (base-2 logarithms, natural logarithms, the
//! Euler-Mascheroni constant) are handled through certified rational
//! enclosures so a verdict is never the artifact of rounding.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Error)]
pub enum CountingError {
    #[error("audit requires an economical hypergraph (no isolated vertices, every edge owns a private vertex)")]
    NotEconomical,
    #[error(
        "audit requires max_partition <= {n}, but the input contains a partition of size {found}"
    )]
    PartitionTooLarge { n: u64, found: u64 },
    #[error("j must satisfy 0 <= j < n, got j={j}, n={n}")]
    BadIndex { j: u64, n: u64 },
    #[error("hypergraph error: {0}")]
    Hypergraph(#[from] crate::hypergraph::HypergraphError),
}

// ---------------------------------------------------------------------------
// Binomials and small identities
// ---------------------------------------------------------------------------

/// C(n, k) as an exact big integer; zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut res = BigInt::one();
    for i in 0..k {
        res = res * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    res
}

/// First `nmax` values of the recurrence
/// `k_1 = 1`, `k_n = floor(n/2) + k_floor(n/2) + k_floor((n+1)/2)`,
/// returned as `[k_1, ..., k_nmax]`.
pub fn k_sequence(nmax: usize) -> Vec<u64> {
    assert!(nmax >= 1, "k_sequence needs nmax >= 1");
    let mut k = vec![0u64; nmax + 1];
    k[1] = 1;
    for n in 2..=nmax {
        k[n] = (n as u64 / 2) + k[n / 2] + k[n.div_ceil(2)];
    }
    k.remove(0);
    k
}

/// `k_n` for a single index.
pub fn k_n(n: usize) -> u64 {
    *k_sequence(n).last().unwrap()
}

/// Exact value of `sum_{k=1}^{n} n/k`.
pub fn upper_bound_h(n: u64) -> BigRational {
    let mut sum = BigRational::zero();
    for k in 1..=n {
        sum += BigRational::new(BigInt::from(n), BigInt::from(k));
    }
    sum
}

/// `floor(sum_{k=1}^{n} n/k)`, the integer cap on partition-free vertex counts.
pub fn upper_bound_h_floor(n: u64) -> u64 {
    upper_bound_h(n).floor().to_integer().to_u64().unwrap()
}

/// Verdict for one instance of the identity
/// `sum_{j=k-1}^{n-1} C(n-k, j-k+1)/C(n-1, j) = n/k`.
#[derive(Debug, Clone)]
pub struct DdaggerCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

pub fn identity_ddagger(n: u64, k: u64) -> DdaggerCheck {
    assert!(1 <= k && k <= n, "identity_ddagger needs 1 <= k <= n");
    let mut lhs = BigRational::zero();
    for j in (k - 1)..=(n - 1) {
        lhs += BigRational::new(binomial(n - k, j + 1 - k), binomial(n - 1, j));
    }
    let rhs = BigRational::new(BigInt::from(n), BigInt::from(k));
    let equal = lhs == rhs;
    DdaggerCheck { lhs, rhs, equal }
}

/// `sum_{j=r}^{m} C(j, r) == C(m+1, r+1)`, exactly.
pub fn hockey_stick(m: u64, r: u64) -> bool {
    assert!(r <= m, "hockey_stick needs r <= m");
    let lhs: BigInt = (r..=m).map(|j| binomial(j, r)).sum();
    lhs == binomial(m + 1, r + 1)
}

/// `C(m, r) * C(r, s) == C(m, s) * C(m-s, r-s)`, exactly.
pub fn trinomial_revision(m: u64, r: u64, s: u64) -> bool {
    assert!(s <= r && r <= m, "trinomial_revision needs s <= r <= m");
    binomial(m, r) * binomial(r, s) == binomial(m, s) * binomial(m - s, r - s)
}

// ---------------------------------------------------------------------------
// Degree-profile inequalities
// ---------------------------------------------------------------------------

/// Result of evaluating one degree-profile inequality: the exact integer pair
/// and whether `lhs <= rhs`.
#[derive(Debug, Clone)]
pub struct IneqAudit {
    pub j: u64,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

fn weighted_degree_classes(h: &Hypergraph) -> BTreeMap<u64, u64> {
    h.degree_profile()
        .class_sizes
        .iter()
        .filter(|(k, _)| **k >= 1)
        .map(|(k, d)| (*k as u64, (*k as u64) * (*d as u64)))
        .collect()
}

/// Evaluates `sum_{k=1}^{j+1} m_k * C(n-k, j-k+1) <= n * C(n, j)` on an
/// economical hypergraph whose largest partition has size at most `n`.
///
/// The audit refuses input that fails either precondition, because the
/// inequality is only a theorem under them.
pub fn ineq_j_audit(h: &Hypergraph, n: u64, j: u64) -> Result<IneqAudit, CountingError> {
    if j >= n {
        return Err(CountingError::BadIndex { j, n });
    }
    if !h.is_economical() {
        return Err(CountingError::NotEconomical);
    }
    let (max_part, _) = h.max_partition()?;
    if max_part as u64 > n {
        return Err(CountingError::PartitionTooLarge {
            n,
            found: max_part as u64,
        });
    }
    let m = weighted_degree_classes(h);
    let mut lhs = BigInt::zero();
    for k in 1..=(j + 1) {
        if let Some(mk) = m.get(&k) {
            lhs += BigInt::from(*mk) * binomial(n - k, j + 1 - k);
        }
    }
    let rhs = BigInt::from(n) * binomial(n, j);
    let holds = lhs <= rhs;
    Ok(IneqAudit { j, lhs, rhs, holds })
}

/// Exact check of the rearrangement
/// `sum_j [sum_k m_k C(n-k, j-k+1)] / C(n-1, j) == sum_k n*m_k/k`
/// for an arbitrary weighted degree profile `m_k`.
pub fn aggregation_identity(n: u64, m: &BTreeMap<u64, u64>) -> bool {
    let mut lhs = BigRational::zero();
    for j in 0..n {
        let mut inner = BigInt::zero();
        for k in 1..=(j + 1) {
            if let Some(mk) = m.get(&k) {
                inner += BigInt::from(*mk) * binomial(n - k, j + 1 - k);
            }
        }
        lhs += BigRational::new(inner, binomial(n - 1, j));
    }
    let mut rhs = BigRational::zero();
    for (k, mk) in m {
        rhs += BigRational::new(BigInt::from(n) * BigInt::from(*mk), BigInt::from(*k));
    }
    lhs == rhs
}

/// `aggregation_identity` applied to a hypergraph's own degree profile.
pub fn aggregation_identity_for(h: &Hypergraph, n: u64) -> bool {
    aggregation_identity(n, &weighted_degree_classes(h))
}

/// `sum_k m_k / k == |V|` for a hypergraph without isolated vertices.
pub fn degree_sum_identity(h: &Hypergraph) -> bool {
    let mut sum = BigRational::zero();
    for (k, mk) in weighted_degree_classes(h) {
        sum += BigRational::new(BigInt::from(mk), BigInt::from(k));
    }
    sum == BigRational::from(BigInt::from(h.vertex_count() as u64))
}

// ---------------------------------------------------------------------------
// Certified enclosures for log2, ln, and the Euler-Mascheroni constant
// ---------------------------------------------------------------------------

/// Certified rational bounds `lo <= log2(x) <= hi` with `hi - lo <= 2/q`.
///
/// The bounds are verified by exact integer comparisons of `x^q` against
/// powers of two, so they hold unconditionally.
fn log2_bounds(x: u64, qbits: u32) -> (BigRational, BigRational) {
    assert!(x >= 1);
    let q: u64 = 1 << qbits;
    let xq = BigUint::from(x).pow(q as u32);
    // p = floor(q * log2 x): largest p with 2^p <= x^q.
    let mut p = (q as f64 * (x as f64).log2()).floor() as i64;
    if p < 0 {
        p = 0;
    }
    let one = BigUint::one();
    while (&one << (p as u64)) > xq {
        p -= 1;
    }
    while (&one << ((p + 1) as u64)) <= xq {
        p += 1;
    }
    let lo = BigRational::new(BigInt::from(p), BigInt::from(q));
    let hi = BigRational::new(BigInt::from(p + 1), BigInt::from(q));
    (lo, hi)
}

/// Certified rational bounds `lo <= ln(x) <= hi` for an integer `x >= 1`.
///
/// Uses `ln x = e*ln 2 + ln m` with `m = x/2^e` in `[1, 2)`, and the
/// everywhere-positive series `ln m = 2 * sum z^(2j+1)/(2j+1)` with
/// `z = (m-1)/(m+1) < 1/3`, truncated with an explicit tail bound.
fn ln_bounds(x: u64) -> (BigRational, BigRational) {
    assert!(x >= 1);
    if x == 1 {
        return (BigRational::zero(), BigRational::zero());
    }
    // e = floor(log2 x)
    let mut e = 0u64;
    while e + 1 < 64 && (1u64 << (e + 1)) <= x {
        e += 1;
    }
    let pow = 1u64 << e;
    let (ln2_lo, ln2_hi) = ln2_bounds();
    let (m_lo, m_hi) = if x == pow {
        (BigRational::zero(), BigRational::zero())
    } else {
        // z = (x - 2^e) / (x + 2^e), ln(x/2^e) = 2*atanh(z)
        let z = BigRational::new(BigInt::from(x - pow), BigInt::from(x + pow));
        atanh_bounds(&z, 20)
    };
    let e_rat = BigRational::from(BigInt::from(e));
    (
        &e_rat * &ln2_lo + BigRational::from(BigInt::from(2)) * m_lo,
        &e_rat * &ln2_hi + BigRational::from(BigInt::from(2)) * m_hi,
    )
}

/// Bounds on `atanh(z) = sum_{j>=0} z^(2j+1)/(2j+1)` for rational `0 <= z < 1/2`.
fn atanh_bounds(z: &BigRational, terms: u32) -> (BigRational, BigRational) {
    let z2 = z * z;
    let mut power = z.clone();
    let mut lo = BigRational::zero();
    for j in 0..terms {
        lo += &power / BigRational::from(BigInt::from(2 * j as i64 + 1));
        power *= &z2;
    }
    // Tail: sum_{j>=J} z^(2j+1)/(2j+1) <= z^(2J+1) / (1 - z^2).
    let tail = &power / (BigRational::one() - &z2);
    let hi = &lo + tail;
    (lo, hi)
}

fn ln2_bounds() -> (BigRational, BigRational) {
    static LN2: OnceLock<(BigRational, BigRational)> = OnceLock::new();
    LN2.get_or_init(|| {
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        let (lo, hi) = atanh_bounds(&third, 30);
        let two = BigRational::from(BigInt::from(2));
        (&two * lo, &two * hi)
    })
    .clone()
}

/// Euler-Mascheroni constant, 0.5772156649..., as a certified enclosure built
/// from 50 published decimal digits.
fn gamma_bounds() -> (BigRational, BigRational) {
    static GAMMA: OnceLock<(BigRational, BigRational)> = OnceLock::new();
    GAMMA
        .get_or_init(|| {
            let digits = "57721566490153286060651209008240243104215933593992";
            let num: BigInt = digits.parse().unwrap();
            let den = BigInt::from(10u32).pow(digits.len() as u32);
            let lo = BigRational::new(num.clone(), den.clone());
            let hi = BigRational::new(num + BigInt::one(), den);
            (lo, hi)
        })
        .clone()
}

// ---------------------------------------------------------------------------
// Lower-bound audit
// ---------------------------------------------------------------------------

/// Outcome of the lower-bound audit over `1..=nmax`.
#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundAudit {
    pub nmax: usize,
    pub entropy_bound_checked: usize,
    pub convexity_samples_checked: usize,
    pub growth_bound_checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// `f(n) < k_n` where `f(x) = (x log2 x - x + 1)/2`, decided exactly.
///
/// Equivalent to `n*log2(n) < 2*k_n + n - 1`; verified through a certified
/// upper bound on `log2(n)`.
pub fn entropy_bound_holds(n: u64, kn: u64) -> bool {
    // target: n * log2(n) < 2*kn + n - 1
    let target = BigRational::from(BigInt::from(2 * kn as i64 + n as i64 - 1));
    for qbits in [6u32, 10, 14] {
        let (_, hi) = log2_bounds(n, qbits);
        if BigRational::from(BigInt::from(n)) * hi < target {
            return true;
        }
    }
    false
}

/// `k_n > ((n-1) log2(n-1) - n + 4) / 2` for `n >= 2`, decided exactly.
pub fn growth_bound_holds(n: u64, kn: u64) -> bool {
    assert!(n >= 2);
    // target: (n-1) * log2(n-1) < 2*kn + n - 4
    let target = BigRational::from(BigInt::from(2 * kn as i64 + n as i64 - 4));
    for qbits in [6u32, 10, 14] {
        let (_, hi) = log2_bounds(n - 1, qbits);
        if BigRational::from(BigInt::from(n - 1)) * hi < target {
            return true;
        }
    }
    false
}

/// Midpoint convexity of `f` at integer `a`:
/// `f(a + 1/2) <= (f(a) + f(a+1))/2`, decided by the exact integer comparison
/// `(2a+1)^(2a+1) <= 2^(2a+1) * a^a * (a+1)^(a+1)`.
pub fn midpoint_convexity_holds(a: u64) -> bool {
    assert!(a >= 1);
    let lhs = BigUint::from(2 * a + 1).pow((2 * a + 1) as u32);
    let rhs = (BigUint::one() << (2 * a + 1))
        * BigUint::from(a).pow(a as u32)
        * BigUint::from(a + 1).pow((a + 1) as u32);
    lhs <= rhs
}

/// Audits, for `1 <= n <= nmax`:
/// - `f(n) < k_n` with `f(x) = (x log2 x - x + 1)/2`;
/// - midpoint convexity of `f` on sample points;
/// - `k_n > (n-1) log2(n-1)/2 - n/2 + 2` for `n >= 2`.
pub fn lower_bound_audit(nmax: usize) -> LowerBoundAudit {
    let ks = k_sequence(nmax);
    let mut failures = Vec::new();
    for n in 1..=nmax {
        if !entropy_bound_holds(n as u64, ks[n - 1]) {
            failures.push(format!("f({n}) < k_{n} failed"));
        }
    }
    let mut samples: Vec<u64> = (1..=512.min(nmax as u64)).collect();
    let mut p = 1024u64;
    while p <= nmax as u64 && p <= (1 << 12) {
        samples.push(p);
        p *= 2;
    }
    for &a in &samples {
        if !midpoint_convexity_holds(a) {
            failures.push(format!("midpoint convexity failed at {a}"));
        }
    }
    let mut growth_checked = 0;
    for n in 2..=nmax {
        growth_checked += 1;
        if !growth_bound_holds(n as u64, ks[n - 1]) {
            failures.push(format!("growth bound failed at {n}"));
        }
    }
    LowerBoundAudit {
        nmax,
        entropy_bound_checked: nmax,
        convexity_samples_checked: samples.len(),
        growth_bound_checked: growth_checked,
        pass: failures.is_empty(),
        failures,
    }
}

/// `sum_{k=1}^n n/k < n ln n + gamma*n + 1/2`, decided against a certified
/// lower bound of the right-hand side. `harmonic` must be the exact partial
/// sum `sum_{k=1}^n 1/k`.
pub fn harmonic_gamma_check(n: u64, harmonic: &BigRational) -> bool {
    let lhs = BigRational::from(BigInt::from(n)) * harmonic;
    let (ln_lo, _) = ln_bounds(n);
    let (gamma_lo, _) = gamma_bounds();
    let n_rat = BigRational::from(BigInt::from(n));
    let rhs_lo =
        &n_rat * ln_lo + &n_rat * gamma_lo + BigRational::new(BigInt::one(), BigInt::from(2));
    lhs < rhs_lo
}

/// Runs `harmonic_gamma_check` for every `1 <= n <= nmax`, sharing one
/// incrementally built harmonic sum. Returns the first failing `n`, if any.
pub fn harmonic_gamma_sweep(nmax: u64) -> Option<u64> {
    let mut harmonic = BigRational::zero();
    for n in 1..=nmax {
        harmonic += BigRational::new(BigInt::one(), BigInt::from(n));
        if !harmonic_gamma_check(n, &harmonic) {
            return Some(n);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Bounds tables
// ---------------------------------------------------------------------------

/// One row of the derived bounds table. Row `n` carries the interval for
/// `H(n)` together with the interval for `I(n)` (derived from row `n-1`).
#[derive(Debug, Clone, Serialize)]
pub struct BoundsRow {
    pub n: u64,
    pub k_n: u64,
    /// Display value of the lower bound `f(n) = (n log2 n - n + 1)/2`.
    pub f_lower: f64,
    /// Exact numerator/denominator of `sum_{k=1}^n n/k`.
    pub upper_num: String,
    pub upper_den: String,
    pub upper_floor: u64,
    pub h_lo: u64,
    pub h_hi: u64,
    /// Set when the interval collapses or a solver-proved value pins it.
    pub h_exact: Option<u64>,
    pub i_lo: u64,
    pub i_hi: u64,
    pub i_exact: Option<u64>,
    /// Quadratic caps: `H(n) <= n^2` and `I(n) <= n^2 - 2n + 2`.
    pub h_quadratic: u64,
    pub i_quadratic: u64,
    /// Display values of `n ln n + gamma*n + 1/2` and
    /// `n ln n + gamma*n - ln n + 3/2 - gamma`.
    pub h_log_bound: f64,
    pub i_log_bound: f64,
}

const GAMMA_F64: f64 = 0.577_215_664_901_532_9;

/// Derives `[H(n)]` and `[I(n)]` intervals for `1 <= n <= nmax`.
///
/// `known_h` supplies solver-proved exact values of `H(n)`; they must fall
/// inside the analytic interval and tighten both the `H` row and the `I`
/// interval of the following row.
pub fn derive_tables(nmax: u64, known_h: &BTreeMap<u64, u64>) -> Vec<BoundsRow> {
    assert!(nmax >= 1);
    let ks = k_sequence(nmax as usize);
    let mut rows = Vec::new();
    let mut prev: Option<(u64, u64)> = None; // (k_{n-1}, h_hi of row n-1)
    for n in 1..=nmax {
        let kn = ks[(n - 1) as usize];
        let upper = upper_bound_h(n);
        let floor = upper_bound_h_floor(n);
        let mut h_lo = kn;
        let mut h_hi = floor.min(n * n);
        if let Some(&exact) = known_h.get(&n) {
            assert!(
                h_lo <= exact && exact <= h_hi,
                "solver value H({n})={exact} falls outside the analytic interval [{h_lo}, {h_hi}]"
            );
            h_lo = exact;
            h_hi = exact;
        }
        let h_exact = (h_lo == h_hi).then_some(h_lo);

        // I(n) lies in [k_{n-1} + 1, H(n-1) + 1], clipped by the quadratic
        // cap. Only the upper side sees exact H values; the lower side comes
        // from the chain-family construction alone.
        let i_quadratic = n * n + 2 - 2 * n;
        let (i_lo, i_hi) = match prev {
            None => (1, i_quadratic), // I(1): only the trivial and quadratic bounds apply
            Some((prev_k, prev_h_hi)) => (prev_k + 1, (prev_h_hi + 1).min(i_quadratic)),
        };
        let i_exact = (i_lo == i_hi).then_some(i_lo);

        let nf = n as f64;
        rows.push(BoundsRow {
            n,
            k_n: kn,
            f_lower: 0.5 * (nf * nf.log2() - nf + 1.0),
            upper_num: upper.numer().to_string(),
            upper_den: upper.denom().to_string(),
            upper_floor: floor,
            h_lo,
            h_hi,
            h_exact,
            i_lo,
            i_hi,
            i_exact,
            h_quadratic: n * n,
            i_quadratic,
            h_log_bound: nf * nf.ln() + GAMMA_F64 * nf + 0.5,
            i_log_bound: nf * nf.ln() + GAMMA_F64 * nf - nf.ln() + 1.5 - GAMMA_F64,
        });
        prev = Some((kn, h_hi));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    #[test]
    fn k_sequence_matches_recurrence_start() {
        assert_eq!(k_sequence(6), vec![1, 3, 5, 8, 10, 13]);
        assert_eq!(k_n(7), 16);
        assert_eq!(k_n(1), 1);
    }

    #[test]
    fn upper_bound_exact_fractions() {
        // n=5: 5*(1 + 1/2 + 1/3 + 1/4 + 1/5) = 137/12
        let b5 = upper_bound_h(5);
        assert_eq!(b5, BigRational::new(BigInt::from(137), BigInt::from(12)));
        assert_eq!(upper_bound_h_floor(5), 11);
        // n=6: 147/10
        let b6 = upper_bound_h(6);
        assert_eq!(b6, BigRational::new(BigInt::from(147), BigInt::from(10)));
        assert_eq!(upper_bound_h_floor(6), 14);
        assert_eq!(upper_bound_h_floor(1), 1);
    }

    #[test]
    fn ddagger_small_cases() {
        // n=4, k=2: 1/3 + 2/3 + 1 = 2 = 4/2
        let c = identity_ddagger(4, 2);
        assert!(c.equal);
        assert_eq!(c.lhs, BigRational::from(BigInt::from(2)));
        // k = n collapses to a single term 1 = n/n
        assert!(identity_ddagger(9, 9).equal);
        // k = 1 sums to n
        let c = identity_ddagger(7, 1);
        assert!(c.equal);
        assert_eq!(c.rhs, BigRational::from(BigInt::from(7)));
    }

    #[test]
    fn hockey_stick_small_cases() {
        assert!(hockey_stick(4, 2)); // 1+3+6 = 10 = C(5,3)
        assert!(hockey_stick(9, 9)); // C(9,9) = 1 = C(10,10)
        assert!(hockey_stick(12, 0)); // 13 = C(13,1)
    }

    #[test]
    fn trinomial_small_cases() {
        assert!(trinomial_revision(5, 3, 2)); // 10*3 = 10*3
        assert!(trinomial_revision(8, 5, 0));
        assert!(trinomial_revision(8, 5, 5));
    }

    #[test]
    fn ineq_audit_on_three_vertex_witness() {
        // Two edges {0,2}, {1,2}: the 3-vertex witness shape for n=2.
        let h = Hypergraph::from_vertex_lists(3, &[vec![0, 2], vec![1, 2]]).unwrap();
        let a0 = ineq_j_audit(&h, 2, 0).unwrap();
        assert_eq!(a0.lhs, BigInt::from(2)); // m_1 = 2
        assert_eq!(a0.rhs, BigInt::from(2));
        assert!(a0.holds);
        let a1 = ineq_j_audit(&h, 2, 1).unwrap();
        assert_eq!(a1.lhs, BigInt::from(4)); // m_1*1 + m_2*1
        assert_eq!(a1.rhs, BigInt::from(4)); // 2*C(2,1)
        assert!(a1.holds);
    }

    #[test]
    fn ineq_audit_refuses_non_economical() {
        let h = Hypergraph::from_vertex_lists(2, &[vec![0, 1], vec![0], vec![1]]).unwrap();
        // {0,1} owns no private vertex, so the audit must refuse.
        assert!(matches!(
            ineq_j_audit(&h, 3, 0),
            Err(CountingError::NotEconomical)
        ));
    }

    #[test]
    fn ineq_audit_empty_sum_is_trivial() {
        // No degree classes at all: the left side is the empty sum.
        let h = Hypergraph::from_vertex_lists(0, &[]).unwrap();
        for j in 0..3 {
            let audit = ineq_j_audit(&h, 3, j).unwrap();
            assert_eq!(audit.lhs, BigInt::zero());
            assert!(audit.holds);
        }
    }

    #[test]
    fn ineq_audit_rejects_bad_j() {
        let h = Hypergraph::from_vertex_lists(1, &[vec![0]]).unwrap();
        assert!(matches!(
            ineq_j_audit(&h, 2, 2),
            Err(CountingError::BadIndex { .. })
        ));
    }

    #[test]
    fn aggregation_identity_random_profiles() {
        for n in 1..=8u64 {
            let mut m = BTreeMap::new();
            for k in 1..=n {
                m.insert(k, (k * 7 + n) % 5);
            }
            assert!(aggregation_identity(n, &m));
        }
    }

    #[test]
    fn log2_enclosure_is_correct() {
        for x in [2u64, 3, 5, 7, 1024, 999_983] {
            let (lo, hi) = log2_bounds(x, 10);
            let true_log = (x as f64).log2();
            assert!(lo.to_f64().unwrap() <= true_log + 1e-9);
            assert!(hi.to_f64().unwrap() >= true_log - 1e-9);
            assert!(&hi - &lo <= BigRational::new(BigInt::from(2), BigInt::from(1024)));
        }
    }

    #[test]
    fn ln_enclosure_is_correct() {
        for x in [1u64, 2, 3, 10, 9999] {
            let (lo, hi) = ln_bounds(x);
            let truth = (x as f64).ln();
            assert!(lo.to_f64().unwrap() <= truth + 1e-12);
            assert!(hi.to_f64().unwrap() >= truth - 1e-12);
        }
    }

    #[test]
    fn entropy_bound_first_values() {
        // f(1) = 0 < 1, f(6) ~ 5.25 < 13
        let ks = k_sequence(8);
        for n in 1..=8usize {
            assert!(entropy_bound_holds(n as u64, ks[n - 1]), "n={n}");
        }
    }

    #[test]
    fn lower_bound_audit_small() {
        let audit = lower_bound_audit(4096);
        assert!(audit.pass, "failures: {:?}", audit.failures);
    }

    #[test]
    fn harmonic_gamma_small_sweep() {
        assert_eq!(harmonic_gamma_sweep(200), None);
    }

    #[test]
    fn tables_collapse_for_small_n() {
        let rows = derive_tables(5, &BTreeMap::new());
        // H(1..4) collapse from bounds alone: 1, 3, 5, 8.
        let h: Vec<Option<u64>> = rows.iter().map(|r| r.h_exact).collect();
        assert_eq!(h[0], Some(1));
        assert_eq!(h[1], Some(3));
        assert_eq!(h[2], Some(5));
        assert_eq!(h[3], Some(8));
        assert_eq!(h[4], None); // H(5) in [10, 11] without the solver
                                // I(1..5) = 1, 2, 4, 6, 9
        let i: Vec<(u64, u64)> = rows.iter().map(|r| (r.i_lo, r.i_hi)).collect();
        assert_eq!(i, vec![(1, 1), (2, 2), (4, 4), (6, 6), (9, 9)]);
    }

    #[test]
    fn tables_use_solver_values() {
        let mut known = BTreeMap::new();
        known.insert(5u64, 10u64);
        known.insert(6u64, 14u64);
        let rows = derive_tables(7, &known);
        assert_eq!(rows[4].h_exact, Some(10));
        assert_eq!(rows[5].i_exact, Some(11)); // I(6) = 11 once H(5) = 10 is known
        assert_eq!(rows[5].h_exact, Some(14));
        assert_eq!((rows[6].i_lo, rows[6].i_hi), (14, 15)); // I(7) stays open
        assert_eq!(rows[6].i_exact, None);
    }
}
