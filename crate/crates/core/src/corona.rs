//! Neighborhood corona `G ⋆ H`: assembly, closed-form spectrum and
//! eigenprojectors for regular `H`, and closed-form transition amplitudes
//! between base vertices and copy vertices.
//!
//! Vertex layout on `n(m+1)` vertices: base vertex `(v, 0)` is `v`, and the
//! vertex `w` of the copy of `H` attached to `v` is `n + w·n + v`. This
//! matches the block form
//!
//! ```text
//! [ A(G)       jᵀ ⊗ A(G) ]
//! [ j ⊗ A(G)   A(H) ⊗ I_n ]
//! ```

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow these when std is linked
use num_traits::Float;

use crate::arith::{recognize_quad, square_free_part, Eigenvalue, QuadInt, SquareFreeSplit, Surd};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexLabel};
use crate::linalg::Matrix;
use crate::spectral::{phase, EigenClass, SpectralDecomposition, RECOGNITION_TOL};

/// Below this `Λ_λ` is treated as zero (only reachable for `λ = k = 0`).
const LAMBDA_ZERO: f64 = 1e-12;

/// Assembles `G ⋆ H` with vertex labels.
pub fn corona_adjacency(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.order(), h.order());
    let copy = |v: usize, w: usize| n + w * n + v;
    let mut edges = Vec::with_capacity(g.edge_count() + n * h.edge_count() + 2 * m * g.edge_count());
    edges.extend_from_slice(g.edges());
    for v in 0..n {
        for &(w1, w2) in h.edges() {
            edges.push((copy(v, w1), copy(v, w2)));
        }
        for w in 0..m {
            for &u in g.neighbors(v) {
                edges.push((u, copy(v, w)));
            }
        }
    }
    let mut labels: Vec<VertexLabel> = (0..n).map(VertexLabel::Base).collect();
    for w in 0..m {
        labels.extend((0..n).map(|v| VertexLabel::Copy { base: v, h_vertex: w }));
    }
    Graph::from_edges(n * (m + 1), edges)
        .expect("corona edges are simple by construction")
        .with_labels(labels)
}

/// The factor graphs of a corona together with `H`'s degree when regular.
#[derive(Debug, Clone)]
pub struct CoronaSpec {
    g: Graph,
    h: Graph,
    k: Option<usize>,
}

impl CoronaSpec {
    pub fn new(g: Graph, h: Graph) -> Self {
        let k = h.is_regular();
        Self { g, h, k }
    }

    pub fn g(&self) -> &Graph {
        &self.g
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    /// Order of `G`.
    pub fn n(&self) -> usize {
        self.g.order()
    }

    /// Order of `H`.
    pub fn m(&self) -> usize {
        self.h.order()
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn require_regular(&self) -> Result<usize> {
        self.k.ok_or(Error::NotRegular)
    }

    /// Requires `H` connected and regular, as the closed forms do.
    pub fn require_closed_form(&self) -> Result<usize> {
        let k = self.require_regular()?;
        if !self.h.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(k)
    }

    pub fn order(&self) -> usize {
        self.n() * (self.m() + 1)
    }

    pub fn base_index(&self, v: usize) -> usize {
        v
    }

    pub fn copy_index(&self, v: usize, w: usize) -> usize {
        self.n() + w * self.n() + v
    }

    pub fn assemble(&self) -> Graph {
        corona_adjacency(&self.g, &self.h)
    }

    /// Soft hypotheses of the closed forms that do not hold. The closed
    /// forms still run; callers decide how loudly to report these.
    pub fn hypothesis_warnings(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.g.is_connected() {
            out.push("G is disconnected; closed forms assume a connected G");
        }
        out
    }
}

/// The pair `λ± = (λ + k ± Λ_λ)/2` generated by a base eigenvalue `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoronaEigenPair {
    pub lambda: Eigenvalue,
    pub plus: Eigenvalue,
    pub minus: Eigenvalue,
    /// `Λ_λ = √((λ - k)² + 4mλ²)`.
    pub big_lambda: f64,
    /// Square-free split of `(λ - k)² + 4mλ²` when `λ` is an integer.
    pub discriminant_split: Option<SquareFreeSplit>,
}

impl CoronaEigenPair {
    pub fn new(lambda: Eigenvalue, k: usize, m: usize) -> Self {
        let x = lambda.value();
        let kf = k as f64;
        let big_lambda = big_lambda(x, k, m);
        let (plus, minus) = exact_roots(lambda, k, m);
        let discriminant_split = lambda
            .exact()
            .and_then(|q| q.as_integer())
            .and_then(|l| integer_discriminant(l, k, m))
            .and_then(|d| square_free_part(d).ok());
        let numeric = |root: Option<QuadInt>, sign: f64| match root {
            Some(q) => Eigenvalue::Exact(q),
            None => Eigenvalue::Inexact((x + kf + sign * big_lambda) / 2.0),
        };
        Self {
            lambda,
            plus: numeric(plus, 1.0),
            minus: numeric(minus, -1.0),
            big_lambda,
            discriminant_split,
        }
    }
}

/// `Λ_λ = √((λ - k)² + 4mλ²)`.
pub fn big_lambda(lambda: f64, k: usize, m: usize) -> f64 {
    let kf = k as f64;
    ((lambda - kf).powi(2) + 4.0 * m as f64 * lambda * lambda).sqrt()
}

fn integer_discriminant(lambda: i64, k: usize, m: usize) -> Option<u128> {
    let l = lambda as i128;
    let d = (l - k as i128)
        .checked_pow(2)?
        .checked_add((4 * m as i128).checked_mul(l * l)?)?;
    u128::try_from(d).ok().filter(|&d| d > 0)
}

/// Exact `λ±` when they are quadratic integers, verified by substituting
/// into `x² - (λ + k)x + λk - mλ² = 0` over `ℤ[√Δ]`.
fn exact_roots(lambda: Eigenvalue, k: usize, m: usize) -> (Option<QuadInt>, Option<QuadInt>) {
    let Some(q) = lambda.exact() else {
        return (None, None);
    };
    let x = q.to_f64();
    let bl = big_lambda(x, k, m);
    let kf = k as f64;

    let lam2 = q.doubled();
    let delta = lam2.delta;
    let two_k = Surd::int(2 * k as i128, delta);
    // 4·((λ-k)² + 4mλ²) = (2λ - 2k)² + 4m(2λ)²
    let four_disc = lam2
        .checked_add(two_k.checked_scale(-1).unwrap())
        .and_then(|d| d.checked_mul(d))
        .and_then(|d| {
            lam2.checked_mul(lam2)
                .and_then(|l| l.checked_scale(4 * m as i128))
                .and_then(|l| d.checked_add(l))
        });

    let mut candidates: Vec<u64> = vec![1];
    if q.b() != 0 {
        candidates.push(q.delta());
    }
    if let Some(fd) = four_disc {
        if fd.s == 0 && fd.r > 0 {
            if let Ok(sp) = square_free_part(fd.r as u128) {
                if !candidates.contains(&(sp.c as u64)) {
                    candidates.push(sp.c as u64);
                }
            }
        }
    }

    let solve = |value: f64| {
        let r = recognize_quad(value, &candidates, RECOGNITION_TOL)?;
        root_verified(q, r, k, m).then_some(r)
    };
    (solve((x + kf + bl) / 2.0), solve((x + kf - bl) / 2.0))
}

fn root_verified(lambda: QuadInt, root: QuadInt, k: usize, m: usize) -> bool {
    let delta = match (lambda.b(), root.b()) {
        (0, _) => root.delta(),
        (_, 0) => lambda.delta(),
        _ if lambda.delta() == root.delta() => lambda.delta(),
        _ => return false,
    } as i128;
    let check = || -> Option<bool> {
        let l = lambda.doubled().with_delta(delta)?;
        let r = root.doubled().with_delta(delta)?;
        let two_k = Surd::int(2 * k as i128, delta);
        // (2r)² - (2λ + 2k)(2r) + (2λ)(2k) - m(2λ)²
        let lhs = r
            .checked_mul(r)?
            .checked_add(l.checked_add(two_k)?.checked_mul(r)?.checked_scale(-1)?)?
            .checked_add(l.checked_mul(two_k)?)?
            .checked_add(l.checked_mul(l)?.checked_scale(-(m as i128))?)?;
        Some(lhs.is_zero())
    };
    check().unwrap_or(false)
}

/// `λ±` pairs for every class of `G`.
pub fn eigen_pairs(spec: &CoronaSpec, g_decomp: &SpectralDecomposition) -> Result<Vec<CoronaEigenPair>> {
    let k = spec.require_regular()?;
    check_order(spec.n(), g_decomp)?;
    Ok(g_decomp
        .classes()
        .iter()
        .map(|c| CoronaEigenPair::new(c.eigenvalue(), k, spec.m()))
        .collect())
}

fn check_order(expected: usize, d: &SpectralDecomposition) -> Result<()> {
    if d.order() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            got: d.order(),
        })
    }
}

/// Base eigenvalue snapped to its exact label when available.
fn base_value(c: &EigenClass) -> f64 {
    c.exact.map_or(c.value, |q| q.to_f64())
}

fn is_zero_class(c: &EigenClass) -> bool {
    match c.exact {
        Some(q) => q == QuadInt::integer(0),
        None => c.value.abs() < RECOGNITION_TOL,
    }
}

/// Spectral decomposition of `G ⋆ H` assembled from those of `G` and `H`.
///
/// Each eigenvalue `μ ≠ k` of `H` contributes `[[0,0],[0,E_μ(H)]] ⊗ I_n`.
/// Each eigenvalue `λ ≠ 0` of `G` contributes `λ±` with projector
///
/// ```text
/// 1/((λ± - k)² + mλ²) · [ (λ±-k)²       λ(λ±-k) jᵀ ] ⊗ E_λ(G)
///                       [ λ(λ±-k) j     λ² J_m     ]
/// ```
///
/// and `λ = 0` contributes `k` with `(1/m)[[0,0],[0,J_m]] ⊗ E_0(G)` and `0`
/// with `[[1,0],[0,0]] ⊗ E_0(G)`. Coincident eigenvalues are merged.
pub fn spectral_closed_form(
    spec: &CoronaSpec,
    g_decomp: &SpectralDecomposition,
    h_decomp: &SpectralDecomposition,
    group_tol: f64,
) -> Result<SpectralDecomposition> {
    let k = spec.require_closed_form()?;
    let (n, m) = (spec.n(), spec.m());
    check_order(n, g_decomp)?;
    check_order(m, h_decomp)?;
    let total = spec.order();
    let kf = k as f64;
    let copy = |v: usize, w: usize| n + w * n + v;

    let mut classes = Vec::with_capacity(h_decomp.len() + 2 * g_decomp.len());

    // the k class of a connected k-regular H is simple and spanned by j
    let top = h_decomp
        .classes()
        .iter()
        .position(|c| (c.value - kf).abs() < 1e-6 && c.multiplicity == 1)
        .ok_or(Error::Disconnected)?;
    for (idx, hc) in h_decomp.classes().iter().enumerate() {
        if idx == top {
            continue;
        }
        let mut p = Matrix::zeros(total, total);
        for w1 in 0..m {
            for w2 in 0..m {
                let e = hc.projector[(w1, w2)];
                if e == 0.0 {
                    continue;
                }
                for v in 0..n {
                    p[(copy(v, w1), copy(v, w2))] = e;
                }
            }
        }
        classes.push(EigenClass {
            value: hc.value,
            projector: p,
            multiplicity: n * hc.multiplicity,
            exact: hc.exact,
        });
    }

    for gc in g_decomp.classes() {
        let e = &gc.projector;
        if is_zero_class(gc) {
            let mut pk = Matrix::zeros(total, total);
            let mut p0 = Matrix::zeros(total, total);
            for v1 in 0..n {
                for v2 in 0..n {
                    let x = e[(v1, v2)];
                    p0[(v1, v2)] = x;
                    for w1 in 0..m {
                        for w2 in 0..m {
                            pk[(copy(v1, w1), copy(v2, w2))] = x / m as f64;
                        }
                    }
                }
            }
            classes.push(EigenClass {
                value: kf,
                projector: pk,
                multiplicity: gc.multiplicity,
                exact: Some(QuadInt::integer(k as i64)),
            });
            classes.push(EigenClass {
                value: 0.0,
                projector: p0,
                multiplicity: gc.multiplicity,
                exact: Some(QuadInt::integer(0)),
            });
            continue;
        }

        let lambda = base_value(gc);
        let pair = CoronaEigenPair::new(gc.eigenvalue(), k, m);
        for (root, sign) in [(pair.plus, 1.0), (pair.minus, -1.0)] {
            let shift = (lambda - kf + sign * pair.big_lambda) / 2.0;
            let norm = shift * shift + m as f64 * lambda * lambda;
            let bb = shift * shift / norm;
            let bc = lambda * shift / norm;
            let cc = lambda * lambda / norm;
            let mut p = Matrix::zeros(total, total);
            for v1 in 0..n {
                for v2 in 0..n {
                    let x = e[(v1, v2)];
                    p[(v1, v2)] = bb * x;
                    for w in 0..m {
                        p[(v1, copy(v2, w))] = bc * x;
                        p[(copy(v1, w), v2)] = bc * x;
                    }
                    for w1 in 0..m {
                        for w2 in 0..m {
                            p[(copy(v1, w1), copy(v2, w2))] = cc * x;
                        }
                    }
                }
            }
            classes.push(EigenClass {
                value: root.value(),
                projector: p,
                multiplicity: gc.multiplicity,
                exact: root.exact(),
            });
        }
    }
    Ok(SpectralDecomposition::from_classes(total, classes, group_tol))
}

/// `⟨(v,0)| e^{-itA(G⋆H)} |(v',0)⟩`:
///
/// `Σ_λ e^{-it(λ+k)/2} ⟨v|E_λ|v'⟩ (cos(tΛ_λ/2) - ((λ-k)/Λ_λ) i sin(tΛ_λ/2))`,
/// with the bracket equal to 1 when `Λ_λ = 0`.
pub fn entry_base_base(
    spec: &CoronaSpec,
    g_decomp: &SpectralDecomposition,
    v: usize,
    v_prime: usize,
    t: f64,
) -> Result<Complex64> {
    let k = spec.require_regular()?;
    check_order(spec.n(), g_decomp)?;
    spec.g().check_vertex(v)?;
    spec.g().check_vertex(v_prime)?;
    let kf = k as f64;
    let m = spec.m();
    let (a, b) = (v.min(v_prime), v.max(v_prime));
    Ok(g_decomp
        .classes()
        .iter()
        .map(|c| {
            let lambda = base_value(c);
            let bl = big_lambda(lambda, k, m);
            let bracket = if bl < LAMBDA_ZERO {
                Complex64::new(1.0, 0.0)
            } else {
                let half = t * bl / 2.0;
                Complex64::new(half.cos(), -((lambda - kf) / bl) * half.sin())
            };
            phase(t * (lambda + kf) / 2.0) * c.projector[(a, b)] * bracket
        })
        .sum())
}

/// `⟨(v',0)| e^{-itA(G⋆H)} |(v,w)⟩`:
///
/// `Σ_λ e^{-it(λ+k)/2} ⟨v|E_λ|v'⟩ (-2λ/Λ_λ) i sin(tΛ_λ/2)`. Independent of `w`.
pub fn entry_base_copy(
    spec: &CoronaSpec,
    g_decomp: &SpectralDecomposition,
    v_prime: usize,
    v: usize,
    w: usize,
    t: f64,
) -> Result<Complex64> {
    let k = spec.require_regular()?;
    check_order(spec.n(), g_decomp)?;
    spec.g().check_vertex(v)?;
    spec.g().check_vertex(v_prime)?;
    spec.h().check_vertex(w)?;
    let kf = k as f64;
    let m = spec.m();
    let (a, b) = (v.min(v_prime), v.max(v_prime));
    Ok(g_decomp
        .classes()
        .iter()
        .filter(|c| !is_zero_class(c))
        .map(|c| {
            let lambda = base_value(c);
            let bl = big_lambda(lambda, k, m);
            if bl < LAMBDA_ZERO {
                return Complex64::new(0.0, 0.0);
            }
            let coeff = Complex64::new(0.0, -2.0 * lambda / bl * (t * bl / 2.0).sin());
            phase(t * (lambda + kf) / 2.0) * c.projector[(a, b)] * coeff
        })
        .sum())
}

/// `{λ± : λ ∈ Φ_v}` for the base vertex `(v, 0)`.
///
/// Values come out in input order, `λ+` before `λ-`, without duplicates.
/// For `λ = 0` both formal roots `k` and `0` are listed.
pub fn support_base_vertex(phi_v: &[Eigenvalue], k: usize, m: usize) -> Vec<Eigenvalue> {
    let mut out: Vec<Eigenvalue> = Vec::with_capacity(2 * phi_v.len());
    for &lambda in phi_v {
        let pair = CoronaEigenPair::new(lambda, k, m);
        for root in [pair.plus, pair.minus] {
            let dup = out.iter().any(|x| match (x, &root) {
                (Eigenvalue::Exact(a), Eigenvalue::Exact(b)) => a == b,
                (a, b) => (a.value() - b.value()).abs() < RECOGNITION_TOL,
            });
            if !dup {
                out.push(root);
            }
        }
    }
    out
}
