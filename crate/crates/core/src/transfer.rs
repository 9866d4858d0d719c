//! State-transfer analysis: periodicity, exact perfect-state-transfer
//! certificates, closed-form no-PST scans on coronas, and structured time
//! searches for pretty good state transfer.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow these when std is linked
use num_traits::Float;

use crate::arith::{exact_sqrt, gcd_list, two_adic_valuation, Eigenvalue, QuadInt};
use crate::corona::{entry_base_base, entry_base_copy, support_base_vertex, CoronaSpec};
use crate::error::{Error, Result};
use crate::spectral::{graph_decomposition, SpectralDecomposition, Tolerances};

/// Upper end of the 2-adic exponent search.
pub const MAX_ALPHA: u32 = 64;
/// Fidelity a numeric PST confirmation must exceed.
pub const PST_CONFIRM_TOL: f64 = 1e-8;
pub const DEFAULT_L_MAX: u64 = 100_000;
pub const DEFAULT_TARGET: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Periodic {
    Yes,
    No,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodicityCase {
    /// Every support eigenvalue is an integer.
    AllInteger,
    /// Every support eigenvalue is `(a + b√Δ)/2` for one `a` and `Δ`.
    Quadratic {
        a: i64,
        delta: u64,
    },
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicityVerdict {
    pub periodic: Periodic,
    pub case: PeriodicityCase,
    /// A time `T > 0` with `U(T) e_u = γ e_u`.
    pub witness_period: Option<f64>,
}

impl PeriodicityVerdict {
    fn no() -> Self {
        Self {
            periodic: Periodic::No,
            case: PeriodicityCase::None,
            witness_period: None,
        }
    }

    fn inconclusive() -> Self {
        Self {
            periodic: Periodic::Inconclusive,
            case: PeriodicityCase::None,
            witness_period: None,
        }
    }
}

/// Values written as `(a + b_r √Δ)/2` with one shared `a` and `Δ`, sorted
/// by decreasing value. For all-integer input `Δ = 1`, `a = 0`, `b_r = 2λ_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonForm {
    pub a: i64,
    pub delta: u64,
    pub b: Vec<i64>,
}

impl CommonForm {
    pub fn is_integral(&self) -> bool {
        self.delta == 1
    }

    /// `(λ_0 - λ_r)/√Δ = (b_0 - b_r)/2`, or `None` when some difference is odd.
    pub fn differences(&self) -> Option<Vec<u128>> {
        let b0 = *self.b.first()?;
        self.b
            .iter()
            .map(|&b| {
                let d = b0 as i128 - b as i128;
                (d >= 0 && d % 2 == 0).then_some((d / 2) as u128)
            })
            .collect()
    }
}

/// Fits exact values to a shared quadratic form.
pub fn common_form(values: &[QuadInt]) -> Option<CommonForm> {
    let mut sorted: Vec<QuadInt> = values.to_vec();
    sorted.sort_by(|x, y| y.to_f64().total_cmp(&x.to_f64()));
    if sorted.iter().all(QuadInt::is_integer) {
        return Some(CommonForm {
            a: 0,
            delta: 1,
            b: sorted.iter().map(QuadInt::a).collect(),
        });
    }
    let irrational = sorted.iter().find(|q| !q.is_integer())?;
    let (a, delta) = (irrational.a(), irrational.delta());
    let mut b = Vec::with_capacity(sorted.len());
    for q in &sorted {
        if q.is_integer() {
            // an integer fits (a + 0·√Δ)/2 only when 2λ = a
            if q.a() != a {
                return None;
            }
            b.push(0);
        } else if q.a() == a && q.delta() == delta {
            b.push(q.b());
        } else {
            return None;
        }
    }
    Some(CommonForm { a, delta, b })
}

fn all_exact(values: &[Eigenvalue]) -> Option<Vec<QuadInt>> {
    values.iter().map(Eigenvalue::exact).collect()
}

/// Periodicity of a vertex from its eigenvalue support.
///
/// Periodic iff the support is all integers or all `(a + b√Δ)/2` with a
/// shared `a` and `Δ`. The witness is `2π/(g√Δ)` with `g` the gcd of
/// `(λ_0 - λ_r)/√Δ` (`2π` for a one-point support).
pub fn periodicity_test(support: &[Eigenvalue]) -> Result<PeriodicityVerdict> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let Some(exact) = all_exact(support) else {
        return Ok(PeriodicityVerdict::inconclusive());
    };
    let Some(form) = common_form(&exact) else {
        return Ok(PeriodicityVerdict::no());
    };
    let Some(diffs) = form.differences() else {
        return Ok(PeriodicityVerdict::no());
    };
    let witness_period = match gcd_list(&diffs) {
        Ok(g) => 2.0 * PI / (g as f64 * (form.delta as f64).sqrt()),
        Err(_) => 2.0 * PI,
    };
    let case = if form.is_integral() {
        PeriodicityCase::AllInteger
    } else {
        PeriodicityCase::Quadratic {
            a: form.a,
            delta: form.delta,
        }
    };
    Ok(PeriodicityVerdict {
        periodic: Periodic::Yes,
        case,
        witness_period: Some(witness_period),
    })
}

/// Outcome of checking the three periodicity conditions for a base vertex
/// `(v, 0)` of `G ⋆ H`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoronaPeriodicity {
    pub verdict: PeriodicityVerdict,
    pub k_is_zero: bool,
    /// `1 + 4m = t²` for an odd `t > 1`.
    pub odd_square: bool,
    /// Support of `v` in `G` is all integers or all nonzero integer
    /// multiples of one `√Δ`; `None` when the support is not exact.
    pub support_condition: Option<bool>,
    /// `{λ± : λ ∈ Φ_v}`.
    pub corona_support: Vec<Eigenvalue>,
}

/// Periodicity of `(v, 0)` in `G ⋆ H` by direct evaluation of: `k = 0`;
/// `1 + 4m` an odd square above 1; `Φ_v` integral or a set of nonzero
/// integer multiples of a single `√Δ`.
pub fn corona_base_periodicity(spec: &CoronaSpec, v: usize, tol: &Tolerances) -> Result<CoronaPeriodicity> {
    let k = spec.require_regular()?;
    if spec.n() < 2 {
        return Err(Error::TooFewVertices { min: 2, got: spec.n() });
    }
    if !spec.g().is_connected() {
        return Err(Error::Precondition("G must be connected".into()));
    }
    spec.g().check_vertex(v)?;
    let gd = graph_decomposition(spec.g(), tol)?;
    let phi_v = gd.support_values(&gd.eigenvalue_support(v, tol.support)?);

    let k_is_zero = k == 0;
    let odd_square = exact_sqrt(1 + 4 * spec.m() as u128).is_some_and(|t| t > 1 && t % 2 == 1);
    let support_condition = all_exact(&phi_v).map(|exact| {
        exact.iter().all(QuadInt::is_integer) || {
            let delta = exact[0].delta();
            exact
                .iter()
                .all(|q| q.a() == 0 && q.b() != 0 && q.b() % 2 == 0 && q.delta() == delta)
        }
    });
    let corona_support = support_base_vertex(&phi_v, k, spec.m());

    let verdict = match (k_is_zero && odd_square, support_condition) {
        (false, _) | (true, Some(false)) => PeriodicityVerdict::no(),
        (true, None) => PeriodicityVerdict::inconclusive(),
        (true, Some(true)) => {
            let v = periodicity_test(&corona_support)?;
            debug_assert_eq!(v.periodic, Periodic::Yes);
            v
        }
    };
    Ok(CoronaPeriodicity {
        verdict,
        k_is_zero,
        odd_square,
        support_condition,
        corona_support,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PstVerdict {
    Pst,
    NoPst,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PstFailure {
    NotStronglyCospectral,
    SupportNotQuadratic,
    TwoAdicSignPattern,
    InexactSpectrum,
}

/// Verdict and witnesses of an exact PST check between `u` and `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct PstCertificate {
    pub verdict: PstVerdict,
    pub u: usize,
    pub v: usize,
    /// Exact support of `u`, decreasing.
    pub support: Vec<QuadInt>,
    pub a: Option<i64>,
    pub delta: Option<u64>,
    pub b_values: Vec<i64>,
    /// `(λ_0 - λ_r)/√Δ` per support eigenvalue.
    pub differences: Vec<u128>,
    /// Sign of `(E_r)_{u,v}` per support eigenvalue.
    pub signs: Vec<i8>,
    pub g: Option<u128>,
    pub alpha: Option<u32>,
    /// Minimal PST time `π/(g√Δ)`.
    pub tau: Option<f64>,
    /// `U(τ)_{u,v}`.
    pub phase: Option<Complex64>,
    pub confirmed_fidelity: Option<f64>,
    pub failure: Option<PstFailure>,
}

impl PstCertificate {
    fn new(u: usize, v: usize) -> Self {
        Self {
            verdict: PstVerdict::NoPst,
            u,
            v,
            support: Vec::new(),
            a: None,
            delta: None,
            b_values: Vec::new(),
            differences: Vec::new(),
            signs: Vec::new(),
            g: None,
            alpha: None,
            tau: None,
            phase: None,
            confirmed_fidelity: None,
            failure: None,
        }
    }

    fn fail(mut self, verdict: PstVerdict, why: PstFailure) -> Self {
        self.verdict = verdict;
        self.failure = Some(why);
        self
    }
}

/// Smallest `α ∈ [0, MAX_ALPHA]` such that for every `r ≥ 1`:
/// positive sign ⇔ `|D_r|₂ < 2^-α` and negative sign ⇔ `|D_r|₂ = 2^-α`.
fn two_adic_alpha(differences: &[u128], signs: &[i8]) -> Option<u32> {
    (0..=MAX_ALPHA).find(|&alpha| {
        differences.iter().zip(signs).skip(1).all(|(&d, &s)| {
            if d == 0 {
                return false;
            }
            let nu = two_adic_valuation(d as i128);
            match s {
                1 => nu > alpha,
                -1 => nu == alpha,
                _ => false,
            }
        })
    })
}

/// Exact PST test between `u` and `v`.
///
/// Requires strong cospectrality, an exact support fitting
/// `(a + b_r√Δ)/2`, `(E_0)_{u,v} > 0`, and a 2-adic exponent `α` matching the
/// signs of `(E_r)_{u,v}`. On success `τ = π/(g√Δ)` with `g` the gcd of the
/// differences, and the fidelity at `τ` is recomputed numerically.
pub fn pst_certify(d: &SpectralDecomposition, u: usize, v: usize, tol: &Tolerances) -> Result<PstCertificate> {
    if u == v {
        return Err(Error::SameVertex);
    }
    let cert = PstCertificate::new(u, v);
    let support = d.eigenvalue_support(u, tol.support)?;
    let Some(sign_map) = d.strong_cospectral(u, v, tol.cospectral)? else {
        return Ok(cert.fail(PstVerdict::NoPst, PstFailure::NotStronglyCospectral));
    };
    let Some(exact) = all_exact(&d.support_values(&support)) else {
        return Ok(cert.fail(PstVerdict::Inconclusive, PstFailure::InexactSpectrum));
    };
    let mut cert = cert;
    cert.support = exact.clone();
    cert.signs = support
        .classes
        .iter()
        .map(|&c| sign_map.sign_of(c).unwrap_or(0))
        .collect();

    let form = match common_form(&exact) {
        Some(f) => f,
        None => return Ok(cert.fail(PstVerdict::NoPst, PstFailure::SupportNotQuadratic)),
    };
    cert.a = Some(form.a);
    cert.delta = Some(form.delta);
    cert.b_values = form.b.clone();
    let Some(diffs) = form.differences() else {
        return Ok(cert.fail(PstVerdict::NoPst, PstFailure::SupportNotQuadratic));
    };
    cert.differences = diffs.clone();
    if support.classes.len() < 2 {
        return Ok(cert.fail(PstVerdict::NoPst, PstFailure::TwoAdicSignPattern));
    }
    let g = gcd_list(&diffs)?;
    cert.g = Some(g);

    if cert.signs[0] != 1 {
        return Ok(cert.fail(PstVerdict::NoPst, PstFailure::TwoAdicSignPattern));
    }
    let Some(alpha) = two_adic_alpha(&diffs, &cert.signs) else {
        return Ok(cert.fail(PstVerdict::NoPst, PstFailure::TwoAdicSignPattern));
    };
    cert.alpha = Some(alpha);
    let tau = PI / (g as f64 * (form.delta as f64).sqrt());
    let phase = d.amplitude(u, v, tau)?;
    cert.tau = Some(tau);
    cert.phase = Some(phase);
    cert.confirmed_fidelity = Some(phase.norm());
    cert.verdict = PstVerdict::Pst;
    Ok(cert)
}

/// Vertex pair of `G ⋆ H` for the closed-form no-PST scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoronaPair {
    /// `(v, 0)` and `(v', 0)` with `v ≠ v'`.
    BaseBase { v: usize, v_prime: usize },
    /// `(v', 0)` and `(v, w)`.
    BaseCopy { v_prime: usize, v: usize, w: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoPstScan {
    pub pair: CoronaPair,
    pub samples: usize,
    pub max_fidelity: f64,
    pub argmax_time: f64,
    /// Every sampled fidelity is strictly below 1.
    pub all_below_one: bool,
    /// `Σ_λ |⟨v|E_λ|v'⟩|`, itself at most 1.
    pub static_bound: f64,
}

/// Evaluates the closed-form amplitude of `pair` on `t_grid`.
pub fn corona_no_pst_check(
    spec: &CoronaSpec,
    g_decomp: &SpectralDecomposition,
    pair: CoronaPair,
    t_grid: &[f64],
) -> Result<NoPstScan> {
    spec.require_closed_form()?;
    if spec.n() < 2 {
        return Err(Error::TooFewVertices { min: 2, got: spec.n() });
    }
    if !spec.g().is_connected() {
        return Err(Error::Precondition("G must be connected".into()));
    }
    let (a, b) = match pair {
        CoronaPair::BaseBase { v, v_prime } => {
            if v == v_prime {
                return Err(Error::SameVertex);
            }
            (v, v_prime)
        }
        CoronaPair::BaseCopy { v_prime, v, w } => {
            spec.h().check_vertex(w)?;
            (v, v_prime)
        }
    };
    spec.g().check_vertex(a)?;
    spec.g().check_vertex(b)?;
    let static_bound = g_decomp.classes().iter().map(|c| c.projector[(a, b)].abs()).sum();

    let mut max_fidelity = f64::NEG_INFINITY;
    let mut argmax_time = 0.0;
    for &t in t_grid {
        let z = match pair {
            CoronaPair::BaseBase { v, v_prime } => entry_base_base(spec, g_decomp, v, v_prime, t)?,
            CoronaPair::BaseCopy { v_prime, v, w } => entry_base_copy(spec, g_decomp, v_prime, v, w, t)?,
        };
        let f = z.norm();
        if f > max_fidelity {
            max_fidelity = f;
            argmax_time = t;
        }
    }
    if t_grid.is_empty() {
        max_fidelity = 0.0;
    }
    Ok(NoPstScan {
        pair,
        samples: t_grid.len(),
        max_fidelity,
        argmax_time,
        all_below_one: max_fidelity < 1.0,
        static_bound,
    })
}

/// Uniform grid `t_j = j · t_max / (steps - 1)`.
pub fn uniform_grid(t_max: f64, steps: usize) -> Vec<f64> {
    if steps < 2 {
        return alloc::vec![0.0; steps];
    }
    (0..steps).map(|j| j as f64 * t_max / (steps - 1) as f64).collect()
}

/// Requested construction for a pretty-good-state-transfer search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgstFamily {
    /// PST in `G` at `π/g` with `0 ∉ Φ_u`; times `(4ℓ + 2/g)π`.
    LiftedPst,
    /// `0 ∈ Sp(G)` and PST in `G` at `π/2`; times `(4ℓ + 1)π`.
    ZeroInSpectrum,
    /// Antipodal vertices of `cocktail:n`, `n ≥ 3` odd; times `8ℓπ`.
    Cocktail,
}

/// The construction actually run, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyRun {
    LiftedPst { g: u64 },
    ZeroInSpectrum,
    Cocktail,
}

impl FamilyRun {
    pub fn time(&self, l: u64) -> f64 {
        let l = l as f64;
        match *self {
            FamilyRun::LiftedPst { g } => (4.0 * l + 2.0 / g as f64) * PI,
            FamilyRun::ZeroInSpectrum => (4.0 * l + 1.0) * PI,
            FamilyRun::Cocktail => 8.0 * l * PI,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PgstSearchResult {
    pub family: FamilyRun,
    pub best_l: u64,
    pub best_time: f64,
    pub best_fidelity: f64,
    /// `(ℓ, fidelity)` at every strict improvement.
    pub trace: Vec<(u64, f64)>,
    pub evaluated: u64,
    pub reached_target: bool,
}

/// Search parameters for [`pgst_search`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgstParams {
    pub l_max: u64,
    pub target: f64,
}

impl Default for PgstParams {
    fn default() -> Self {
        Self {
            l_max: DEFAULT_L_MAX,
            target: DEFAULT_TARGET,
        }
    }
}

fn precondition(msg: &str) -> Error {
    Error::Precondition(msg.into())
}

/// Checks the family's hypotheses and returns the time sequence to sweep.
pub fn pgst_family_check(
    spec: &CoronaSpec,
    g_decomp: &SpectralDecomposition,
    u: usize,
    v: usize,
    family: PgstFamily,
    tol: &Tolerances,
) -> Result<FamilyRun> {
    let k = spec.require_closed_form()?;
    if k == 0 {
        return Err(precondition("H must have nonzero degree k"));
    }
    if !spec.g().is_connected() {
        return Err(precondition("G must be connected"));
    }
    spec.g().check_vertex(u)?;
    spec.g().check_vertex(v)?;
    if u == v {
        return Err(Error::SameVertex);
    }
    let pst = |need: &str| -> Result<(u64, PstCertificate)> {
        let cert = pst_certify(g_decomp, u, v, tol)?;
        if cert.verdict != PstVerdict::Pst {
            return Err(Error::Precondition(format!(
                "G has no certified PST between {u} and {v} ({need})"
            )));
        }
        if cert.delta != Some(1) {
            return Err(Error::Precondition(format!(
                "PST time is not of the form pi/g ({need})"
            )));
        }
        let g = cert.g.and_then(|g| u64::try_from(g).ok()).ok_or(Error::Overflow("g"))?;
        Ok((g, cert))
    };
    match family {
        PgstFamily::LiftedPst => {
            let (g, _) = pst("lifted-PST family")?;
            let support = g_decomp.eigenvalue_support(u, tol.support)?;
            let zero_in_support = support
                .classes
                .iter()
                .any(|&c| g_decomp.class(c).exact == Some(QuadInt::integer(0)));
            if zero_in_support {
                return Err(precondition("0 lies in the eigenvalue support of u"));
            }
            Ok(FamilyRun::LiftedPst { g })
        }
        PgstFamily::ZeroInSpectrum => {
            let has_zero = g_decomp.classes().iter().any(|c| c.exact == Some(QuadInt::integer(0)));
            if !has_zero {
                return Err(precondition("0 is not an eigenvalue of G"));
            }
            let (g, _) = pst("zero-in-spectrum family")?;
            // PST occurs exactly at odd multiples of π/g
            if g % 4 != 2 {
                return Err(precondition("G has no PST at time pi/2"));
            }
            Ok(FamilyRun::ZeroInSpectrum)
        }
        PgstFamily::Cocktail => {
            let order = spec.n();
            let half = order / 2;
            let is_cocktail = order.is_multiple_of(2) && half >= 1 && spec.g().is_regular() == Some(order - 2);
            if !is_cocktail {
                return Err(precondition("G is not a cocktail party graph"));
            }
            if half < 3 || half.is_multiple_of(2) {
                return Err(precondition("cocktail:n needs odd n >= 3"));
            }
            if spec.g().distance_matrix().get(u, v) != Some(2) {
                return Err(precondition("u and v are not antipodal"));
            }
            Ok(FamilyRun::Cocktail)
        }
    }
}

/// Sweeps `ℓ = 0..=l_max` over the family's time sequence, evaluating the
/// closed-form fidelity between `(u,0)` and `(v,0)`, and stops once the
/// target is reached.
pub fn pgst_search(
    spec: &CoronaSpec,
    g_decomp: &SpectralDecomposition,
    u: usize,
    v: usize,
    family: PgstFamily,
    params: PgstParams,
    tol: &Tolerances,
) -> Result<PgstSearchResult> {
    if params.l_max < 1 {
        return Err(Error::InvalidParameter("l_max must be at least 1"));
    }
    let run = pgst_family_check(spec, g_decomp, u, v, family, tol)?;
    let mut result = PgstSearchResult {
        family: run,
        best_l: 0,
        best_time: run.time(0),
        best_fidelity: f64::NEG_INFINITY,
        trace: Vec::new(),
        evaluated: 0,
        reached_target: false,
    };
    for l in 0..=params.l_max {
        let t = run.time(l);
        let f = entry_base_base(spec, g_decomp, u, v, t)?.norm();
        result.evaluated += 1;
        if f > result.best_fidelity {
            result.best_fidelity = f;
            result.best_l = l;
            result.best_time = t;
            result.trace.push((l, f));
        }
        if f >= params.target {
            result.reached_target = true;
            break;
        }
    }
    Ok(result)
}

/// Fidelities on a uniform grid over `[0, t_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityTrace {
    pub times: Vec<f64>,
    pub fidelities: Vec<f64>,
    /// Index of the first maximal sample.
    pub argmax: usize,
}

pub fn fidelity_sweep(
    d: &SpectralDecomposition,
    u: usize,
    v: usize,
    t_max: f64,
    steps: usize,
) -> Result<FidelityTrace> {
    if steps < 2 {
        return Err(Error::InvalidParameter("steps must be at least 2"));
    }
    if t_max.is_nan() || t_max <= 0.0 {
        return Err(Error::InvalidParameter("t_max must be positive"));
    }
    let times = uniform_grid(t_max, steps);
    let fidelities = times.iter().map(|&t| d.fidelity(u, v, t)).collect::<Result<Vec<_>>>()?;
    let mut argmax = 0;
    for (i, &f) in fidelities.iter().enumerate() {
        if f > fidelities[argmax] {
            argmax = i;
        }
    }
    Ok(FidelityTrace {
        times,
        fidelities,
        argmax,
    })
}
