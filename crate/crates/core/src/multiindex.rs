//! Multi-index and index-tuple combinatorics.
//!
//! A degree-`m` multi-index in `n` variables is `α ∈ ℕ₀ⁿ` with `|α| = Σ αᵢ
//! = m`; the set of those is `Λ(m,n)`. Equivalently one can list the chosen
//! variables as a nondecreasing tuple `j = (j₁ ≤ … ≤ j_m)`, `jᵢ ≤ n`; the set
//! of those is `J(m,n)`. [`alpha_to_j`] / [`j_to_alpha`] convert between the
//! two. The multinomial `|[α]| = m!/α!` counts the orderings of the associated
//! tuple.
//!
//! Canonical enumeration order is graded colexicographic: indices of lower
//! order first, and within an order, `α < β` when `α` has the smaller entry at
//! the *last* position where they differ. All iterators here yield that order,
//! and `Ord` on [`MultiIndex`] agrees with it, so sparse maps keyed by
//! multi-indices iterate reproducibly.

use crate::budget::Budget;
use crate::error::Error;

/// A multi-index `α` with explicit ambient dimension (trailing zeros count).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exponents: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex { exponents }
    }

    /// The multi-index `m·e_k` (k is zero-based) in dimension `n`.
    pub fn single(k: usize, m: u32, n: usize) -> Self {
        assert!(k < n);
        let mut e = vec![0; n];
        e[k] = m;
        MultiIndex { exponents: e }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Order `|α| = Σ αᵢ`.
    pub fn order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn dimension(&self) -> usize {
        self.exponents.len()
    }

    /// All entries in `{0,1}`.
    pub fn is_tetrahedral(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// All entries even.
    pub fn is_even(&self) -> bool {
        self.exponents.iter().all(|&e| e % 2 == 0)
    }

    /// Parity split `α = α_T + α_E`: the tetrahedral part takes a 1 from every
    /// odd entry, the even part keeps the rest.
    pub fn tetra_even_split(&self) -> (MultiIndex, MultiIndex) {
        let tetra: Vec<u32> = self.exponents.iter().map(|&e| e % 2).collect();
        let even: Vec<u32> = self.exponents.iter().map(|&e| e - e % 2).collect();
        (MultiIndex::new(tetra), MultiIndex::new(even))
    }

    /// Halves an even multi-index (`α = 2β ↦ β`). Panics if any entry is odd.
    pub fn halved(&self) -> MultiIndex {
        MultiIndex::new(
            self.exponents
                .iter()
                .map(|&e| {
                    assert!(e % 2 == 0, "halved() requires an even multi-index");
                    e / 2
                })
                .collect(),
        )
    }

    /// Doubles every entry (`β ↦ 2β`).
    pub fn doubled(&self) -> MultiIndex {
        MultiIndex::new(self.exponents.iter().map(|&e| 2 * e).collect())
    }
}

/// Graded colex: order first, then last-differing-entry comparison.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| {
                let n = self.dimension().max(other.dimension());
                for i in (0..n).rev() {
                    let a = self.exponents.get(i).copied().unwrap_or(0);
                    let b = other.exponents.get(i).copied().unwrap_or(0);
                    if a != b {
                        return a.cmp(&b);
                    }
                }
                std::cmp::Ordering::Equal
            })
            .then_with(|| self.dimension().cmp(&other.dimension()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A nondecreasing tuple `1 ≤ j₁ ≤ … ≤ j_m ≤ n` (1-based entries).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JTuple {
    indices: Vec<u32>,
}

impl JTuple {
    pub fn new(indices: Vec<u32>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(indices.iter().all(|&j| j >= 1));
        JTuple { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Last (largest) entry, or 1 for the empty tuple.
    pub fn last_or_one(&self) -> u32 {
        self.indices.last().copied().unwrap_or(1)
    }

    /// The tuple extended by one trailing index `k ≥ j_m`.
    pub fn extended(&self, k: u32) -> JTuple {
        debug_assert!(k >= self.last_or_one() || self.is_empty());
        let mut v = self.indices.clone();
        v.push(k);
        JTuple { indices: v }
    }
}

/// `α ↦ j`: variable `k` (1-based) repeated `α_k` times.
pub fn alpha_to_j(alpha: &MultiIndex) -> JTuple {
    let mut indices = Vec::with_capacity(alpha.order() as usize);
    for (k, &e) in alpha.exponents().iter().enumerate() {
        for _ in 0..e {
            indices.push(k as u32 + 1);
        }
    }
    JTuple { indices }
}

/// `j ↦ α`: `α_k = #{i : jᵢ = k}` in ambient dimension `n`.
pub fn j_to_alpha(j: &JTuple, n: usize) -> Result<MultiIndex, Error> {
    let mut exponents = vec![0u32; n];
    for &idx in j.indices() {
        let k = idx as usize;
        if k < 1 || k > n {
            return Err(Error::IndexOutOfRange {
                what: "tuple entry",
                got: k,
                min: 1,
                max: n,
            });
        }
        exponents[k - 1] += 1;
    }
    Ok(MultiIndex::new(exponents))
}

/// `C(n, k)` as u128, saturating on overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// `|Λ(m,n)| = C(m+n−1, m)`.
pub fn lambda_count(m: u32, n: usize) -> u128 {
    binomial(m as u64 + n as u64 - 1, m as u64)
}

/// Iterator over `Λ(m,n)` in graded colex order.
///
/// Successor rule: find the first position `i` with `α_i > 0`; if `i` is the
/// last position the stream is done, otherwise move one unit from position `i`
/// to position `i+1` and dump the remaining `α_i − 1` units back on position
/// one.
#[derive(Debug)]
pub struct LambdaIter {
    next: Option<Vec<u32>>,
}

impl Iterator for LambdaIter {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let n = current.len();
        let mut succ = current.clone();
        let mut advanced = false;
        for i in 0..n {
            if succ[i] > 0 {
                if i + 1 < n {
                    let t = succ[i];
                    succ[i] = 0;
                    succ[i + 1] += 1;
                    succ[0] = t - 1;
                    advanced = true;
                }
                break;
            }
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(MultiIndex::new(current))
    }
}

/// Enumerates `Λ(m,n)`, checking `C(m+n−1,m)` against the budget first.
pub fn enumerate_lambda(m: u32, n: usize, budget: Budget) -> Result<LambdaIter, Error> {
    assert!(n >= 1, "dimension must be positive");
    budget.check(lambda_count(m, n))?;
    let mut first = vec![0u32; n];
    first[0] = m;
    Ok(LambdaIter { next: Some(first) })
}

/// Enumerates `J(m,n)` in lexicographic tuple order, which corresponds to the
/// graded colex order of the associated multi-indices.
pub fn enumerate_j(
    m: u32,
    n: usize,
    budget: Budget,
) -> Result<impl Iterator<Item = JTuple>, Error> {
    Ok(enumerate_lambda(m, n, budget)?.map(|alpha| alpha_to_j(&alpha)))
}

/// Enumerates the tetrahedral indices `Λ_T(m,n)` (entries in `{0,1}`), i.e.
/// `m`-element subsets of the `n` positions, in colex order. `|Λ_T| = C(n,m)`.
pub fn enumerate_lambda_t(
    m: u32,
    n: usize,
    budget: Budget,
) -> Result<impl Iterator<Item = MultiIndex>, Error> {
    budget.check(binomial(n as u64, m as u64))?;
    Ok(CombinationIter::new(m as usize, n).map(move |positions| {
        let mut e = vec![0u32; n];
        for p in positions {
            e[p] = 1;
        }
        MultiIndex::new(e)
    }))
}

/// Enumerates the even indices `Λ_E(m,n)` as `2·Λ(m/2,n)`; empty for odd `m`.
pub fn enumerate_lambda_e(
    m: u32,
    n: usize,
    budget: Budget,
) -> Result<Box<dyn Iterator<Item = MultiIndex>>, Error> {
    if !m.is_multiple_of(2) {
        return Ok(Box::new(std::iter::empty()));
    }
    Ok(Box::new(
        enumerate_lambda(m / 2, n, budget)?.map(|beta| beta.doubled()),
    ))
}

/// Size-`k` subsets of `{0..n}` in colex order (positions ascending).
struct CombinationIter {
    next: Option<Vec<usize>>,
    n: usize,
}

impl CombinationIter {
    fn new(k: usize, n: usize) -> Self {
        let next = if k <= n { Some((0..k).collect()) } else { None };
        CombinationIter { next, n }
    }
}

impl Iterator for CombinationIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let k = current.len();
        let mut succ = current.clone();
        // colex successor: bump the first entry that can move without
        // touching its right neighbour, resetting everything below it.
        let mut i = 0;
        loop {
            if i == k {
                break; // last combination
            }
            let limit = if i + 1 < k { succ[i + 1] } else { self.n };
            if succ[i] + 1 < limit {
                succ[i] += 1;
                for (j, slot) in succ.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                self.next = Some(succ);
                break;
            }
            i += 1;
        }
        Some(current)
    }
}

/// Natural logs of factorials; table below 1024, Stirling series above.
pub fn ln_factorial(k: u64) -> f64 {
    if k < 2 {
        return 0.0;
    }
    if k <= 1024 {
        (2..=k).map(|i| (i as f64).ln()).sum()
    } else {
        let x = k as f64;
        x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
    }
}

/// The multinomial `|[α]| = m!/α!`, exact for `m ≤ 20`, in log space always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultinomialCard {
    /// Exact value when the order is at most 20.
    pub exact: Option<u128>,
    /// `ln(m!/α!)`, always available.
    pub ln_value: f64,
}

impl MultinomialCard {
    /// Best available floating value.
    pub fn as_f64(&self) -> f64 {
        match self.exact {
            Some(v) => v as f64,
            None => self.ln_value.exp(),
        }
    }
}

pub fn multinomial_card(alpha: &MultiIndex) -> MultinomialCard {
    let m = alpha.order() as u64;
    let ln_value = ln_factorial(m)
        - alpha
            .exponents()
            .iter()
            .map(|&e| ln_factorial(e as u64))
            .sum::<f64>();
    let exact = if m <= 20 {
        let mut acc: u128 = 1;
        let mut seen = 0u64;
        // product of binomials C(seen+e, e accumulates m!/α! exactly
        for &e in alpha.exponents() {
            seen += e as u64;
            acc *= binomial(seen, e as u64);
        }
        Some(acc)
    } else {
        None
    };
    MultinomialCard { exact, ln_value }
}

/// Integer partitions of `m` as nonincreasing part lists, enumerated in
/// descending lexicographic order from `(m)` down to `(1,…,1)`.
pub struct PartitionIter {
    current: Option<Vec<u32>>,
}

impl Iterator for PartitionIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.current.take()?;
        let mut p = current.clone();
        if let Some(i) = p.iter().rposition(|&x| x > 1) {
            // shrink the rightmost part > 1, then refill greedily with chunks
            // no larger than the shrunken part
            let mut rem: u32 = p[i + 1..].iter().sum::<u32>() + 1;
            p.truncate(i + 1);
            p[i] -= 1;
            let v = p[i];
            while rem > v {
                p.push(v);
                rem -= v;
            }
            if rem > 0 {
                p.push(rem);
            }
            self.current = Some(p);
        }
        Some(current)
    }
}

/// Enumerates the integer partitions of `m` (nonincreasing parts).
pub fn enumerate_partitions(m: u32) -> PartitionIter {
    let start = if m == 0 { vec![] } else { vec![m] };
    PartitionIter {
        current: Some(start),
    }
}

/// Default cap on the partition order accepted by [`composition_sup`].
pub const PARTITION_LIMIT: u32 = 40;

/// Supremum over compositions `n₁+…+n_k = m` of
/// `(m^{m/r}/m!) · Π nᵢ!/nᵢ^{nᵢ/r}`, computed in log space.
///
/// The objective is symmetric in the parts, so enumerating partitions instead
/// of compositions loses nothing.
pub fn composition_sup(m: u32, r: f64, limit: u32) -> Result<f64, Error> {
    assert!(m >= 1 && r > 1.0);
    if m > limit {
        return Err(Error::BudgetExceeded {
            required: m as u128,
            budget: limit as u64,
        });
    }
    let base = (m as f64 / r) * (m as f64).ln() - ln_factorial(m as u64);
    let mut best = f64::NEG_INFINITY;
    for parts in enumerate_partitions(m) {
        let mut ln_val = base;
        for &p in &parts {
            ln_val += ln_factorial(p as u64) - (p as f64 / r) * (p as f64).ln();
        }
        if ln_val > best {
            best = ln_val;
        }
    }
    Ok(best.exp())
}

/// Lorentz fine index `s(m)` for the sharpened inclusion scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FineIndex {
    /// No sharpened index at this degree (`m ≤ 2`); the plain `ℓ_q` inclusion
    /// is already the statement there.
    NotApplicable,
    Value(f64),
}

impl FineIndex {
    pub fn value(self) -> Option<f64> {
        match self {
            FineIndex::Value(v) => Some(v),
            FineIndex::NotApplicable => None,
        }
    }
}

/// The derived exponents attached to a degree `m` and domain exponent `r`.
#[derive(Debug, Clone, Copy)]
pub struct ExponentBundle {
    pub m: u32,
    pub r: f64,
    /// Conjugate `r' = r/(r−1)`.
    pub r_conj: f64,
    /// `q = (m r')' = m r / (r(m−1) + 1)`.
    pub q: f64,
    /// Conjugate `q' = m r'`.
    pub q_conj: f64,
    /// Multiplier exponent `σ_m = ((m−1)/m)(1 − 1/r) = 1/q − 1/r`.
    pub sigma_m: f64,
    /// Fine Lorentz index: 2 at `m=3`, `(3+√5)/2` at `m=4`, `m/log m` for
    /// `m ≥ 5`, not applicable below.
    pub s: FineIndex,
    /// Interpolation parameter `θ(m) = log(m+3/2) / (m−1+log(m+3/2))`.
    pub theta: f64,
}

/// Computes the exponent bundle for `m ≥ 1` and `r ∈ (1, 2]`.
pub fn exponent_bundle(m: u32, r: f64) -> ExponentBundle {
    assert!(m >= 1, "degree must be at least 1");
    assert!(r > 1.0 && r <= 2.0, "r must lie in (1, 2], got {r}");
    let mf = m as f64;
    let r_conj = r / (r - 1.0);
    let q = mf * r / (r * (mf - 1.0) + 1.0);
    let q_conj = mf * r_conj;
    let sigma_m = (mf - 1.0) / mf * (1.0 - 1.0 / r);
    let s = match m {
        0..=2 => FineIndex::NotApplicable,
        3 => FineIndex::Value(2.0),
        4 => FineIndex::Value((3.0 + 5.0_f64.sqrt()) / 2.0),
        _ => FineIndex::Value(mf / mf.ln()),
    };
    let lg = (mf + 1.5).ln();
    let theta = lg / (mf - 1.0 + lg);
    ExponentBundle {
        m,
        r,
        r_conj,
        q,
        q_conj,
        sigma_m,
        s,
        theta,
    }
}

/// Both sides of the two bounds `1/θ ≥ m/log m` and
/// `(1/(1−θ))^{m−2} ≥ m/log m` that justify the `m/log m` fine index.
#[derive(Debug, Clone, Copy)]
pub struct ThetaCheck {
    pub theta: f64,
    pub inv_theta: f64,
    pub inv_one_minus_theta_pow: f64,
    pub target: f64,
    pub holds: bool,
}

/// Evaluates the θ inequalities for `m ≥ 5`.
pub fn theta_inequality_check(m: u32) -> ThetaCheck {
    assert!(m >= 5);
    let mf = m as f64;
    let bundle = exponent_bundle(m, 2.0);
    let theta = bundle.theta;
    let inv_theta = 1.0 / theta;
    let inv_one_minus_theta_pow = (1.0 / (1.0 - theta)).powi(m as i32 - 2);
    let target = mf / mf.ln();
    ThetaCheck {
        theta,
        inv_theta,
        inv_one_minus_theta_pow,
        target,
        holds: inv_theta >= target && inv_one_minus_theta_pow >= target,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect_lambda(m: u32, n: usize) -> Vec<MultiIndex> {
        enumerate_lambda(m, n, Budget::default()).unwrap().collect()
    }

    #[test]
    fn lambda_2_2_in_colex_order() {
        let got: Vec<Vec<u32>> = collect_lambda(2, 2)
            .into_iter()
            .map(|a| a.exponents().to_vec())
            .collect();
        assert_eq!(got, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn lambda_edge_cases() {
        assert_eq!(collect_lambda(0, 3).len(), 1);
        assert_eq!(collect_lambda(0, 3)[0].exponents(), &[0, 0, 0]);
        let single = collect_lambda(5, 1);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].exponents(), &[5]);
    }

    #[test]
    fn lambda_counts_match_binomial() {
        for m in 0..=8u32 {
            for n in 1..=8usize {
                let count = collect_lambda(m, n).len() as u128;
                assert_eq!(count, lambda_count(m, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn lambda_order_is_strictly_increasing() {
        let items = collect_lambda(3, 4);
        for w in items.windows(2) {
            assert!(w[0] < w[1], "{:?} !< {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn budget_error_on_huge_enumeration() {
        let err = enumerate_lambda(30, 40, Budget(1000)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn alpha_j_round_trip_exhaustive() {
        for m in 0..=6u32 {
            for n in 1..=6usize {
                for alpha in collect_lambda(m, n) {
                    let j = alpha_to_j(&alpha);
                    let back = j_to_alpha(&j, n).unwrap();
                    assert_eq!(back, alpha);
                }
            }
        }
    }

    #[test]
    fn alpha_to_j_example() {
        let alpha = MultiIndex::new(vec![2, 1]);
        assert_eq!(alpha_to_j(&alpha).indices(), &[1, 1, 2]);
    }

    #[test]
    fn j_counts_match_lambda_counts() {
        for m in 1..=8u32 {
            for n in 1..=8usize {
                let j_count = enumerate_j(m, n, Budget::default()).unwrap().count();
                assert_eq!(j_count as u128, lambda_count(m, n));
            }
        }
    }

    #[test]
    fn j_to_alpha_rejects_out_of_range() {
        let j = JTuple::new(vec![1, 3]);
        assert!(j_to_alpha(&j, 2).is_err());
    }

    #[test]
    fn multinomial_examples() {
        let cases: [(&[u32], u128); 4] =
            [(&[3], 1), (&[2, 1], 3), (&[1, 1, 1], 6), (&[0, 4, 0], 1)];
        for (exp, want) in cases {
            let card = multinomial_card(&MultiIndex::new(exp.to_vec()));
            assert_eq!(card.exact, Some(want));
        }
    }

    #[test]
    fn multinomial_log_agrees_with_exact() {
        for m in 1..=8u32 {
            for alpha in collect_lambda(m, 4) {
                let card = multinomial_card(&alpha);
                let exact = card.exact.unwrap() as f64;
                let rel = (card.ln_value.exp() - exact).abs() / exact;
                assert!(rel < 1e-12, "α={alpha:?} rel={rel}");
            }
        }
    }

    #[test]
    fn tetra_even_split_examples() {
        let (t, e) = MultiIndex::new(vec![3, 2, 1]).tetra_even_split();
        assert_eq!(t.exponents(), &[1, 0, 1]);
        assert_eq!(e.exponents(), &[2, 2, 0]);

        let (t, e) = MultiIndex::new(vec![4, 2]).tetra_even_split();
        assert_eq!(t.order(), 0);
        assert_eq!(e.exponents(), &[4, 2]);

        let (t, e) = MultiIndex::new(vec![1, 1]).tetra_even_split();
        assert_eq!(t.exponents(), &[1, 1]);
        assert_eq!(e.order(), 0);
    }

    #[test]
    fn split_identity_and_factorization_bound() {
        // |[α]| ≤ 2^m |[α_T]| |[α_E]| in exact integer arithmetic
        for m in 0..=6u32 {
            for n in 1..=5usize {
                for alpha in collect_lambda(m, n) {
                    let (t, e) = alpha.tetra_even_split();
                    let sum: Vec<u32> = t
                        .exponents()
                        .iter()
                        .zip(e.exponents())
                        .map(|(a, b)| a + b)
                        .collect();
                    assert_eq!(sum, alpha.exponents());
                    let lhs = multinomial_card(&alpha).exact.unwrap();
                    let rhs = (1u128 << m)
                        * multinomial_card(&t).exact.unwrap()
                        * multinomial_card(&e).exact.unwrap();
                    assert!(lhs <= rhs, "α={alpha:?}");
                }
            }
        }
    }

    #[test]
    fn even_index_bound() {
        // |[2β]| ≤ 2^{|β|} |[β]|² for |β| ≤ 5, dimension ≤ 5. The factor
        // 2^{|β|} is necessary: at β = (1,1), |[2β]| = 6 > 4 = |[β]|².
        let sharp = multinomial_card(&MultiIndex::new(vec![1, 1]).doubled())
            .exact
            .unwrap();
        assert_eq!(sharp, 6);
        for m in 0..=5u32 {
            for n in 1..=5usize {
                for beta in collect_lambda(m, n) {
                    let lhs = multinomial_card(&beta.doubled()).exact.unwrap();
                    let b = multinomial_card(&beta).exact.unwrap();
                    assert!(lhs <= (1u128 << m) * b * b, "β={beta:?}");
                }
            }
        }
    }

    #[test]
    fn tetra_enumeration_counts() {
        let t: Vec<MultiIndex> = enumerate_lambda_t(2, 3, Budget::default())
            .unwrap()
            .collect();
        let got: Vec<Vec<u32>> = t.iter().map(|a| a.exponents().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        for m in 0..=6u32 {
            for n in 1..=8usize {
                let count = enumerate_lambda_t(m, n, Budget::default()).unwrap().count();
                assert_eq!(count as u128, binomial(n as u64, m as u64));
            }
        }
    }

    #[test]
    fn even_enumeration() {
        let e: Vec<Vec<u32>> = enumerate_lambda_e(2, 2, Budget::default())
            .unwrap()
            .map(|a| a.exponents().to_vec())
            .collect();
        assert_eq!(e, vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(
            enumerate_lambda_e(3, 4, Budget::default()).unwrap().count(),
            0
        );
        // Λ_E(m,n) ↔ Λ(m/2,n)
        for n in 1..=5usize {
            for m in [2u32, 4, 6] {
                let count = enumerate_lambda_e(m, n, Budget::default()).unwrap().count();
                assert_eq!(count as u128, lambda_count(m / 2, n));
            }
        }
    }

    #[test]
    fn tuple_card_at_most_factorial_with_tetra_equality() {
        for m in 1..=5u32 {
            for n in 1..=5usize {
                for alpha in collect_lambda(m, n) {
                    let card = multinomial_card(&alpha).exact.unwrap();
                    let fact: u128 = (1..=m as u128).product();
                    assert!(card <= fact);
                    assert_eq!(card == fact, alpha.is_tetrahedral());
                }
            }
        }
    }

    #[test]
    fn partition_enumeration_counts() {
        // p(1..10) = 1,2,3,5,7,11,15,22,30,42
        let expect = [1usize, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (m, want) in (1u32..=10).zip(expect) {
            let parts: Vec<Vec<u32>> = enumerate_partitions(m).collect();
            assert_eq!(parts.len(), want, "p({m})");
            for p in &parts {
                assert_eq!(p.iter().sum::<u32>(), m);
                assert!(p.windows(2).all(|w| w[0] >= w[1]));
            }
            // all distinct
            let mut sorted = parts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), want);
        }
    }

    #[test]
    fn composition_sup_small_cases() {
        // hand enumeration at r=2: the single-part composition always scores
        // m^{m/r}/m! · m!/m^{m/r} = 1, and for m ≤ 3, r = 2 nothing beats it:
        // (2,1) and (1,1,1) both give 3^{3/2}/3! ≈ 0.866
        assert!((composition_sup(1, 2.0, PARTITION_LIMIT).unwrap() - 1.0).abs() < 1e-12);
        assert!((composition_sup(2, 2.0, PARTITION_LIMIT).unwrap() - 1.0).abs() < 1e-12);
        let v = composition_sup(3, 2.0, PARTITION_LIMIT).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "got {v}");
        // for r < 2 finer splits win: at m=2 the composition (1,1) gives 2^{2/r−1} > 1
        let v = composition_sup(2, 1.5, PARTITION_LIMIT).unwrap();
        assert!((v - 2f64.powf(2.0 / 1.5 - 1.0)).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn composition_sup_respects_limit() {
        assert!(composition_sup(41, 2.0, PARTITION_LIMIT).is_err());
    }

    #[test]
    fn exponent_bundle_values() {
        let b = exponent_bundle(2, 2.0);
        assert_eq!(b.q, 4.0 / 3.0);
        assert!((b.sigma_m - 0.25).abs() < 1e-15);
        assert!((b.sigma_m - (1.0 / b.q - 1.0 / b.r)).abs() < 1e-15);
        assert!(b.s.value().is_none());

        let b1 = exponent_bundle(1, 1.7);
        assert!((b1.q - 1.7).abs() < 1e-15);

        assert_eq!(exponent_bundle(3, 2.0).s.value(), Some(2.0));
        let s4 = exponent_bundle(4, 2.0).s.value().unwrap();
        assert!((s4 - 2.618033988749895).abs() < 1e-15);
        let s5 = exponent_bundle(5, 2.0).s.value().unwrap();
        assert!((s5 - 3.1066746727980594).abs() < 1e-12);
    }

    #[test]
    fn sigma_matches_reciprocal_difference_on_grid() {
        for m in 1..=12u32 {
            for &r in &[1.1, 1.25, 1.5, 1.75, 2.0] {
                let b = exponent_bundle(m, r);
                assert!(
                    (b.sigma_m - (1.0 / b.q - 1.0 / b.r)).abs() < 1e-15,
                    "m={m} r={r}"
                );
                assert!((1.0 / b.q + 1.0 / b.q_conj - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn theta_check_examples() {
        let c = theta_inequality_check(5);
        assert!(c.holds);
        assert!((c.inv_theta - 3.136977961325609).abs() < 1e-12);
        assert!((c.inv_one_minus_theta_pow - 3.163255507627887).abs() < 1e-12);
        assert!((c.target - 3.1066746727980594).abs() < 1e-12);
        assert!(theta_inequality_check(100).holds);
    }
}
