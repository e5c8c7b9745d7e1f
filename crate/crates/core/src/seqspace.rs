//! Finite sequence-space machinery: magnitude and complex vectors, decreasing
//! rearrangements, injection-induced operators, and the `ℓ_r` / Lorentz /
//! Marcinkiewicz norms.
//!
//! Vectors carry an ambient dimension at least as large as the number of
//! stored entries; unstored trailing entries read as zero. All norms are
//! symmetric (invariant under rearrangement) and monotone under coordinatewise
//! domination of moduli.

use num_complex::Complex64;

use crate::error::Error;
use crate::exponent::Exponent;

/// A finite vector of nonnegative magnitudes with ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeVector {
    entries: Vec<f64>,
    ambient_dim: usize,
}

impl MagnitudeVector {
    pub fn new(entries: Vec<f64>, ambient_dim: usize) -> Self {
        assert!(
            entries.iter().all(|v| v.is_finite() && *v >= 0.0),
            "entries must be finite and nonnegative"
        );
        assert!(
            ambient_dim >= entries.len(),
            "ambient_dim must cover entries"
        );
        MagnitudeVector {
            entries,
            ambient_dim,
        }
    }

    /// Ambient dimension equal to the entry count.
    pub fn dense(entries: Vec<f64>) -> Self {
        let n = entries.len();
        MagnitudeVector::new(entries, n)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        MagnitudeVector {
            entries: Vec::new(),
            ambient_dim,
        }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Entry at 1-based position `k`; zero past the stored length.
    pub fn get(&self, k: usize) -> f64 {
        if k >= 1 && k <= self.entries.len() {
            self.entries[k - 1]
        } else {
            0.0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0.0)
    }

    /// True when the stored entries are nonincreasing.
    pub fn is_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// Errs with the offending position unless nonincreasing.
    pub fn require_decreasing(&self) -> Result<(), Error> {
        for (i, w) in self.entries.windows(2).enumerate() {
            if w[0] < w[1] {
                return Err(Error::NonDecreasingInput {
                    index: i + 1,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(())
    }
}

/// A finite complex vector with ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
    ambient_dim: usize,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>, ambient_dim: usize) -> Self {
        assert!(
            entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "entries must be finite"
        );
        assert!(ambient_dim >= entries.len());
        ComplexVector {
            entries,
            ambient_dim,
        }
    }

    pub fn dense(entries: Vec<Complex64>) -> Self {
        let n = entries.len();
        ComplexVector::new(entries, n)
    }

    pub fn from_reals(entries: &[f64]) -> Self {
        ComplexVector::dense(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn get(&self, k: usize) -> Complex64 {
        if k >= 1 && k <= self.entries.len() {
            self.entries[k - 1]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Componentwise modulus `|z|`.
    pub fn magnitudes(&self) -> MagnitudeVector {
        MagnitudeVector::new(
            self.entries.iter().map(|z| z.norm()).collect(),
            self.ambient_dim,
        )
    }
}

/// Anything with a modulus vector; lets the norms accept either vector kind.
pub trait HasMagnitudes {
    fn magnitudes(&self) -> MagnitudeVector;
}

impl HasMagnitudes for MagnitudeVector {
    fn magnitudes(&self) -> MagnitudeVector {
        self.clone()
    }
}

impl HasMagnitudes for ComplexVector {
    fn magnitudes(&self) -> MagnitudeVector {
        ComplexVector::magnitudes(self)
    }
}

/// The decreasing rearrangement `v*`: moduli sorted nonincreasing, same
/// ambient dimension. Idempotent and permutation-invariant.
pub fn decreasing_rearrangement<V: HasMagnitudes>(v: &V) -> MagnitudeVector {
    let mags = v.magnitudes();
    let mut entries = mags.entries().to_vec();
    entries.sort_by(|a, b| b.partial_cmp(a).unwrap());
    MagnitudeVector::new(entries, mags.ambient_dim())
}

/// An injective map `σ` given by its first values `σ(1), σ(2), …` (1-based,
/// all distinct).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionMap {
    values: Vec<usize>,
}

impl InjectionMap {
    pub fn new(values: Vec<usize>) -> Self {
        assert!(values.iter().all(|&v| v >= 1), "σ values are 1-based");
        let mut seen = values.clone();
        seen.sort_unstable();
        seen.dedup();
        assert!(seen.len() == values.len(), "σ must be injective");
        InjectionMap { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_value(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// `T_σ v = (v_{σ(k)})_k`: entry `k` of the output is `v_{σ(k)}`, with entries
/// past the stored length reading as zero. Output has one entry per σ value.
pub fn apply_t_sigma(v: &MagnitudeVector, sigma: &InjectionMap) -> MagnitudeVector {
    let entries: Vec<f64> = sigma.values().iter().map(|&s| v.get(s)).collect();
    let n = entries.len();
    MagnitudeVector::new(entries, n)
}

/// `T_σ` on complex vectors.
pub fn apply_t_sigma_complex(v: &ComplexVector, sigma: &InjectionMap) -> ComplexVector {
    let entries: Vec<Complex64> = sigma.values().iter().map(|&s| v.get(s)).collect();
    let n = entries.len();
    ComplexVector::new(entries, n)
}

/// `S_σ v`: places `v_i` at position `σ(i)` and zero elsewhere, so
/// `(S_σ v)_{σ(i)} = v_i`. Output ambient dimension is `max σ`. Requires σ to
/// cover every stored entry of `v`, since dropped entries would break the
/// isometry `(S_σ v)* = v*`.
pub fn apply_s_sigma(v: &MagnitudeVector, sigma: &InjectionMap) -> Result<MagnitudeVector, Error> {
    if sigma.len() < v.entries().len() {
        return Err(Error::InjectionTooShort {
            entries: v.entries().len(),
            sigma_len: sigma.len(),
        });
    }
    let dim = sigma.max_value();
    let mut entries = vec![0.0; dim];
    for (i, &s) in sigma.values().iter().enumerate() {
        entries[s - 1] = v.get(i + 1);
    }
    Ok(MagnitudeVector::new(entries, dim))
}

/// `S_σ` on complex vectors.
pub fn apply_s_sigma_complex(
    v: &ComplexVector,
    sigma: &InjectionMap,
) -> Result<ComplexVector, Error> {
    if sigma.len() < v.entries().len() {
        return Err(Error::InjectionTooShort {
            entries: v.entries().len(),
            sigma_len: sigma.len(),
        });
    }
    let dim = sigma.max_value();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim];
    for (i, &s) in sigma.values().iter().enumerate() {
        entries[s - 1] = v.get(i + 1);
    }
    Ok(ComplexVector::new(entries, dim))
}

/// The Minkowski norm `‖v‖_r = (Σ |vᵢ|^r)^{1/r}`, or `max |vᵢ|` at `r = ∞`.
pub fn ell_norm<V: HasMagnitudes>(v: &V, r: Exponent) -> f64 {
    let mags = v.magnitudes();
    match r {
        Exponent::Infinity => mags.entries().iter().copied().fold(0.0, f64::max),
        Exponent::Finite(r) => {
            if r == 1.0 {
                mags.entries().iter().sum()
            } else if r == 2.0 {
                mags.entries().iter().map(|x| x * x).sum::<f64>().sqrt()
            } else {
                mags.entries()
                    .iter()
                    .map(|x| x.powf(r))
                    .sum::<f64>()
                    .powf(1.0 / r)
            }
        }
    }
}

/// Lorentz indices `(p, q)`, both in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzParams {
    pub p: Exponent,
    pub q: Exponent,
}

impl LorentzParams {
    pub fn new(p: Exponent, q: Exponent) -> Self {
        LorentzParams { p, q }
    }
}

/// The Lorentz quasi-norm `‖v‖_{p,q} = ‖(v*_n · n^{1/p − 1/q})_n‖_q`; for
/// `q = ∞` this is `sup_n v*_n · n^{1/p}`. A norm when `q ≤ p`.
pub fn lorentz_quasinorm<V: HasMagnitudes>(v: &V, params: LorentzParams) -> f64 {
    let star = decreasing_rearrangement(v);
    let inv_p = params.p.reciprocal();
    match params.q {
        Exponent::Infinity => star
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &x)| x * ((i + 1) as f64).powf(inv_p))
            .fold(0.0, f64::max),
        Exponent::Finite(q) => {
            let w = inv_p - 1.0 / q;
            star.entries()
                .iter()
                .enumerate()
                .map(|(i, &x)| (x * ((i + 1) as f64).powf(w)).powf(q))
                .sum::<f64>()
                .powf(1.0 / q)
        }
    }
}

/// A maximal-norm value together with the radius of its certified bracket.
#[derive(Debug, Clone, Copy)]
pub struct MaximalNormValue {
    pub value: f64,
    /// Half-width of the bracket containing the exact series value; at most
    /// the requested tolerance.
    pub tail_radius: f64,
}

/// The maximal Lorentz norm
/// `‖v‖*_{p,q} = (Σ_n n^{q/p − 1} ((1/n) Σ_{k≤n} v*_k)^q)^{1/q}`,
/// an infinite series even for finite vectors.
///
/// Requires `p > 1` and finite `q`; the series diverges otherwise for nonzero
/// input. Strategy: exact partial sum through max(4 × support length, tail
/// start), then a closed-form integral bracket for the constant-numerator
/// tail, doubling the split point until the bracket maps into `±tol`.
pub fn lorentz_maximal_norm<V: HasMagnitudes>(
    v: &V,
    params: LorentzParams,
    tol: f64,
) -> Result<MaximalNormValue, Error> {
    assert!(tol > 0.0);
    let (p, q) = match (params.p, params.q) {
        (Exponent::Finite(p), Exponent::Finite(q)) => (p, q),
        (p, q) => {
            return Err(Error::DivergentParameters {
                p: match p {
                    Exponent::Finite(v) => v,
                    Exponent::Infinity => f64::INFINITY,
                },
                q: match q {
                    Exponent::Finite(v) => v,
                    Exponent::Infinity => f64::INFINITY,
                },
            })
        }
    };
    let star = decreasing_rearrangement(v);
    if star.is_zero() {
        return Ok(MaximalNormValue {
            value: 0.0,
            tail_radius: 0.0,
        });
    }
    // exponent of the tail terms: a = q/p − 1 − q must be < −1, i.e. p > 1
    let a = q / p - 1.0 - q;
    if a >= -1.0 {
        return Err(Error::DivergentParameters { p, q });
    }
    let support = star.entries().iter().filter(|&&x| x > 0.0).count();
    let total: f64 = star.entries().iter().sum();
    let total_pow = total.powf(q);

    // Exact sum of the first `n_split` terms (running means change only on the
    // support, but summing through the split keeps the bracket simple).
    let term = |n: usize| -> f64 {
        let nf = n as f64;
        let partial: f64 = if n >= support {
            total
        } else {
            star.entries()[..n].iter().sum()
        };
        nf.powf(q / p - 1.0) * (partial / nf).powf(q)
    };
    // ∫_x^∞ t^a dt = x^{a+1} / (−a−1)
    let integral_tail = |x: f64| -> f64 { total_pow * x.powf(a + 1.0) / (-a - 1.0) };

    let mut n_split = (4 * support).max(16);
    let mut partial: f64 = (1..=n_split).map(term).sum();
    loop {
        // monotone tail ⇒ Σ_{n>N} ∈ [∫_{N+1}^∞, ∫_N^∞]
        let hi = partial + integral_tail(n_split as f64);
        let lo = partial + integral_tail(n_split as f64 + 1.0);
        let root_hi = hi.powf(1.0 / q);
        let root_lo = lo.powf(1.0 / q);
        if root_hi - root_lo <= 2.0 * tol || n_split > 1 << 40 {
            return Ok(MaximalNormValue {
                value: 0.5 * (root_hi + root_lo),
                tail_radius: 0.5 * (root_hi - root_lo),
            });
        }
        let next = n_split * 2;
        partial += ((n_split + 1)..=next).map(term).sum::<f64>();
        n_split = next;
    }
}

/// A Marcinkiewicz symbol `Ψ`: positive and nondecreasing on the sampled range.
pub struct MarcinkiewiczSymbol {
    evaluator: Box<dyn Fn(usize) -> f64 + Send + Sync>,
    label: String,
}

impl MarcinkiewiczSymbol {
    pub fn new(
        label: impl Into<String>,
        evaluator: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        MarcinkiewiczSymbol {
            evaluator: Box::new(evaluator),
            label: label.into(),
        }
    }

    /// The canonical symbol `Ψ_r(n) = log(n+1)^{1 − 1/r}`.
    pub fn psi_r(r: f64) -> Self {
        assert!(r > 1.0 && r <= 2.0, "Ψ_r requires r ∈ (1, 2]");
        MarcinkiewiczSymbol::new(format!("psi_{r}"), move |n| psi_r(n, r))
    }

    pub fn eval(&self, n: usize) -> f64 {
        let v = (self.evaluator)(n);
        debug_assert!(v > 0.0, "symbol must be positive at n = {n}");
        v
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// `Ψ_r(n) = log(n+1)^{1 − 1/r}` for `n ≥ 1`, `r ∈ (1, 2]`.
pub fn psi_r(n: usize, r: f64) -> f64 {
    assert!(n >= 1);
    ((n as f64) + 1.0).ln().powf(1.0 - 1.0 / r)
}

/// The Marcinkiewicz norm `‖v‖_{m_Ψ} = sup_n (Σ_{k≤n} v*_k) / Ψ(n)`.
///
/// For a finite vector the partial sums are constant past the support and `Ψ`
/// is nondecreasing, so the supremum over `n ≤ ambient_dim` is attained within
/// the stored length.
pub fn marcinkiewicz_norm<V: HasMagnitudes>(v: &V, symbol: &MarcinkiewiczSymbol) -> f64 {
    let star = decreasing_rearrangement(v);
    if star.is_zero() {
        return 0.0;
    }
    let mut best: f64 = 0.0;
    let mut partial = 0.0;
    let mut prev_psi = 0.0;
    for (i, &x) in star.entries().iter().enumerate() {
        partial += x;
        let psi = symbol.eval(i + 1);
        debug_assert!(psi >= prev_psi, "symbol must be nondecreasing");
        prev_psi = psi;
        best = best.max(partial / psi);
    }
    best
}

/// An upper bound, accurate to `tol`, for
/// `(Σ_j log(j+1)^{r−1} / j^r)^{1/r}` — the series dominating the norm of the
/// inclusion of `m_{Ψ_r}` into `ℓ_r`.
///
/// Partial sum plus a closed-form integral bracket on the tail. For `x ≥ N`
/// the summand `f(x) = log(x+1)^{r−1} x^{−r}` is squeezed between
/// `log(N+2)^{r−1} x^{−r}` (the log power is increasing) and
/// `log(N+1)^{r−2} (log 2 + log x) x^{−r}` (the excess log power `r−2 ≤ 0`
/// is decreasing and `log(x+1) ≤ log 2x`), both of which integrate in closed
/// form. The split point doubles until the bracket maps into `±tol` around
/// the root, up to a hard cap of `2^23` summed terms. The returned value
/// never undershoots the true root, and smaller tolerances never increase
/// it.
///
/// Near `r = 1` the tail decays like `N^{1−r}` and tight tolerances become
/// unreachable within the cap; the returned value is then simply the best
/// certified upper bound at the cap, which is all the verification chains
/// need (their direction only ever consumes an upper bound).
pub fn embedding_constant_upper(r: f64, tol: f64) -> f64 {
    assert!(r > 1.0 && r <= 2.0);
    assert!(tol > 0.0);
    let f = |j: f64| -> f64 { (j + 1.0).ln().powf(r - 1.0) / j.powf(r) };
    // ∫_N^∞ (log2 + log x) x^{−r} dx
    let log_integral = |n: f64| -> f64 {
        let c = n.powf(1.0 - r);
        std::f64::consts::LN_2 * c / (r - 1.0)
            + c * ((r - 1.0) * n.ln() + 1.0) / ((r - 1.0) * (r - 1.0))
    };
    let tail_hi = |n: f64| -> f64 { (n + 1.0).ln().powf(r - 2.0) * log_integral(n) };
    let tail_lo =
        |n: f64| -> f64 { (n + 2.0).ln().powf(r - 1.0) * (n + 1.0).powf(1.0 - r) / (r - 1.0) };
    let mut n_split: u64 = 1024;
    let mut partial: f64 = (1..=n_split).map(|j| f(j as f64)).sum();
    loop {
        let upper = (partial + tail_hi(n_split as f64)).powf(1.0 / r);
        let lower = (partial + tail_lo(n_split as f64)).powf(1.0 / r);
        if upper - lower <= tol || n_split >= 1 << 23 {
            return upper;
        }
        let next = n_split * 2;
        partial += ((n_split + 1)..=next).map(|j| f(j as f64)).sum::<f64>();
        n_split = next;
    }
}
