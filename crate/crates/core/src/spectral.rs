//! Numeric spectral engine: eigenvalue classes with orthogonal projectors,
//! the transition matrix `U(t) = Σ exp(-itλ) E_λ`, eigenvalue supports and
//! strong cospectrality.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow these when std is linked
use num_traits::Float;

use crate::arith::{exact_rank, recognize_quad, square_free_part, Eigenvalue, QuadInt};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{default_jacobi_tol, symmetric_eigen, CMatrix, Matrix};

/// Numeric tolerances shared by the spectral and transfer layers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative gap below which sorted eigenvalues share a class.
    pub group: f64,
    /// `‖E_λ e_u‖` threshold for eigenvalue supports.
    pub support: f64,
    /// Entrywise threshold for `E_λ e_u = ±E_λ e_v`.
    pub cospectral: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            group: 1e-8,
            support: 1e-8,
            cospectral: 1e-7,
        }
    }
}

/// Absolute tolerance used when matching numeric eigenvalues to `(a + b√Δ)/2`.
pub const RECOGNITION_TOL: f64 = 1e-9;

/// One eigenvalue with its eigenprojector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenClass {
    pub value: f64,
    pub projector: Matrix,
    pub multiplicity: usize,
    pub exact: Option<QuadInt>,
}

impl EigenClass {
    pub fn eigenvalue(&self) -> Eigenvalue {
        match self.exact {
            Some(q) => Eigenvalue::Exact(q),
            None => Eigenvalue::Inexact(self.value),
        }
    }
}

/// `M = Σ_r λ_r E_r` with classes sorted by decreasing eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    n: usize,
    classes: Vec<EigenClass>,
}

/// Class indices in the support of a vertex, in decomposition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub classes: Vec<usize>,
}

/// Sign `s` per support class with `E_λ e_u = s · E_λ e_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMap {
    pub signs: Vec<(usize, i8)>,
}

impl SignMap {
    pub fn sign_of(&self, class: usize) -> Option<i8> {
        self.signs.iter().find(|(c, _)| *c == class).map(|&(_, s)| s)
    }
}

fn grouping_scale(values: &[f64]) -> f64 {
    values.iter().map(|x| x.abs()).fold(1.0, f64::max)
}

/// Eigendecomposition of a real symmetric matrix grouped into classes.
pub fn decompose(m: &Matrix, group_tol: f64) -> Result<SpectralDecomposition> {
    let eig = symmetric_eigen(m, default_jacobi_tol(m))?;
    let n = m.rows();
    let gap = group_tol * grouping_scale(&eig.values);

    let mut classes: Vec<EigenClass> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end - 1] - eig.values[end] < gap {
            end += 1;
        }
        let mut projector = Matrix::zeros(n, n);
        for col in start..end {
            projector.add_outer(1.0, &eig.vectors.column(col));
        }
        let value = eig.values[start..end].iter().sum::<f64>() / (end - start) as f64;
        classes.push(EigenClass {
            value,
            projector,
            multiplicity: end - start,
            exact: None,
        });
        start = end;
    }
    Ok(SpectralDecomposition { n, classes })
}

/// Decomposition of a graph's adjacency matrix with exact labels attached
/// wherever they can be verified.
pub fn graph_decomposition(g: &Graph, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let mut d = decompose(&g.adjacency_matrix(), tol.group)?;
    d.label_exact(&g.adjacency(), tol.group);
    Ok(d)
}

impl SpectralDecomposition {
    /// Assembles a decomposition from possibly unsorted classes, merging
    /// those whose values coincide within `group_tol` (relative to the
    /// spectral radius) by adding projectors.
    pub fn from_classes(n: usize, mut classes: Vec<EigenClass>, group_tol: f64) -> Self {
        classes.sort_by(|a, b| b.value.total_cmp(&a.value));
        let values: Vec<f64> = classes.iter().map(|c| c.value).collect();
        let gap = group_tol * grouping_scale(&values);
        let mut merged: Vec<EigenClass> = Vec::with_capacity(classes.len());
        for class in classes {
            match merged.last_mut() {
                Some(last) if last.value - class.value < gap => {
                    let total = (last.multiplicity + class.multiplicity) as f64;
                    last.value =
                        (last.value * last.multiplicity as f64 + class.value * class.multiplicity as f64) / total;
                    last.projector.add_scaled(1.0, &class.projector);
                    last.multiplicity += class.multiplicity;
                    if last.exact != class.exact {
                        last.exact = None;
                    }
                }
                _ => merged.push(class),
            }
        }
        Self { n, classes: merged }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[EigenClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &EigenClass {
        &self.classes[i]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.classes.iter().map(|c| c.value.abs()).fold(0.0, f64::max)
    }

    /// Index of the class whose value lies within `tol` of `x`.
    pub fn find_class(&self, x: f64, tol: f64) -> Option<usize> {
        self.classes.iter().position(|c| (c.value - x).abs() < tol)
    }

    /// `true` when every class carries a verified exact label.
    pub fn is_exact(&self) -> bool {
        self.classes.iter().all(|c| c.exact.is_some())
    }

    /// Attaches exact labels `(a + b√Δ)/2` to classes of an integer matrix.
    ///
    /// Candidate Δ come from the square-free parts of `(λ - μ)²` over the
    /// other classes `μ`. A label is kept only if it is verified exactly:
    /// an integer `λ` needs `rank(A - λI) = n - mult(λ)`, and a quadratic
    /// pair `λ, λ̄` needs `n - rank(4A² - 4aA + (a² - b²Δ)I) = mult(λ) + mult(λ̄)`.
    pub fn label_exact(&mut self, adjacency: &[Vec<i64>], group_tol: f64) {
        let n = self.n;
        debug_assert_eq!(adjacency.len(), n);
        let square = int_square(adjacency);
        let match_tol = group_tol * grouping_scale(&self.classes.iter().map(|c| c.value).collect::<Vec<_>>());
        let mut labels: Vec<Option<QuadInt>> = vec![None; self.classes.len()];

        for (i, class) in self.classes.iter().enumerate() {
            let x = class.value;
            let mut candidates = vec![1u64];
            for other in &self.classes {
                let diff2 = (x - other.value).powi(2);
                let d = diff2.round();
                if d >= 1.0 && (diff2 - d).abs() < 1e-6 && d < 1e15 {
                    if let Ok(sp) = square_free_part(d as u128) {
                        let c = sp.c as u64;
                        if !candidates.contains(&c) {
                            candidates.push(c);
                        }
                    }
                }
            }
            let Some(q) = recognize_quad(x, &candidates, RECOGNITION_TOL) else {
                continue;
            };
            let verified = match q.as_integer() {
                Some(lambda) => {
                    let shifted: Vec<Vec<i64>> = (0..n)
                        .map(|r| {
                            (0..n)
                                .map(|c| adjacency[r][c] - if r == c { lambda } else { 0 })
                                .collect()
                        })
                        .collect();
                    n - exact_rank(&shifted) == class.multiplicity
                }
                None => {
                    let conj = q.conjugate();
                    match self.find_class(conj.to_f64(), match_tol.max(RECOGNITION_TOL)) {
                        Some(j) if j != i => quadratic_pair_verified(
                            adjacency,
                            &square,
                            q,
                            class.multiplicity + self.classes[j].multiplicity,
                        ),
                        _ => false,
                    }
                }
            };
            if verified {
                labels[i] = Some(q);
            }
        }
        for (class, label) in self.classes.iter_mut().zip(labels) {
            class.exact = label;
        }
    }

    /// `Σ λ_r E_r`.
    pub fn reconstruct(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for c in &self.classes {
            m.add_scaled(c.value, &c.projector);
        }
        m
    }

    /// `U(t) = Σ_r exp(-i t λ_r) E_r`.
    pub fn transition_matrix(&self, t: f64) -> CMatrix {
        let mut u = CMatrix::zeros(self.n);
        for c in &self.classes {
            u.add_scaled_real(phase(t * c.value), &c.projector);
        }
        u
    }

    /// Single entry `U(t)_{u,v}`.
    pub fn amplitude(&self, u: usize, v: usize, t: f64) -> Result<Complex64> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let (u, v) = (u.min(v), u.max(v));
        Ok(self
            .classes
            .iter()
            .map(|c| phase(t * c.value) * c.projector[(u, v)])
            .sum())
    }

    /// `|U(t)_{u,v}|`.
    pub fn fidelity(&self, u: usize, v: usize, t: f64) -> Result<f64> {
        Ok(self.amplitude(u, v, t)?.norm())
    }

    /// Classes with `‖E_λ e_u‖₂ > tol`.
    pub fn eigenvalue_support(&self, u: usize, tol: f64) -> Result<SupportSet> {
        self.check_vertex(u)?;
        let classes = self
            .classes
            .iter()
            .enumerate()
            .filter(|(_, c)| column_norm(&c.projector, u) > tol)
            .map(|(i, _)| i)
            .collect();
        Ok(SupportSet { classes })
    }

    /// Support as exact-or-numeric eigenvalues.
    pub fn support_values(&self, support: &SupportSet) -> Vec<Eigenvalue> {
        support.classes.iter().map(|&i| self.classes[i].eigenvalue()).collect()
    }

    /// Sign map if `u` and `v` are strongly cospectral.
    ///
    /// For each class, `+` is tried before `-`; classes where both columns
    /// vanish (within `tol`) are skipped.
    pub fn strong_cospectral(&self, u: usize, v: usize, tol: f64) -> Result<Option<SignMap>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex);
        }
        let mut signs = Vec::new();
        for (i, c) in self.classes.iter().enumerate() {
            let e = &c.projector;
            let vanishes = |w: usize| (0..self.n).all(|r| e[(r, w)].abs() <= tol);
            if vanishes(u) && vanishes(v) {
                continue;
            }
            let matches = |s: f64| (0..self.n).all(|r| (e[(r, u)] - s * e[(r, v)]).abs() <= tol);
            if matches(1.0) {
                signs.push((i, 1));
            } else if matches(-1.0) {
                signs.push((i, -1));
            } else {
                return Ok(None);
            }
        }
        Ok(Some(SignMap { signs }))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

/// `exp(-iθ)`.
pub fn phase(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), -theta.sin())
}

fn column_norm(m: &Matrix, col: usize) -> f64 {
    (0..m.rows()).map(|r| m[(r, col)].powi(2)).sum::<f64>().sqrt()
}

fn int_square(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for (row, out_row) in a.iter().zip(&mut out) {
        for (&x, a_k) in row.iter().zip(a) {
            if x == 0 {
                continue;
            }
            for (o, &y) in out_row.iter_mut().zip(a_k) {
                *o += x * y;
            }
        }
    }
    out
}

fn quadratic_pair_verified(a: &[Vec<i64>], a2: &[Vec<i64>], q: QuadInt, expected_nullity: usize) -> bool {
    let n = a.len();
    let (qa, qb, qd) = (q.a() as i128, q.b() as i128, q.delta() as i128);
    let Some(constant) = qb
        .checked_mul(qb)
        .and_then(|b2| b2.checked_mul(qd))
        .and_then(|b2d| (qa * qa).checked_sub(b2d))
        .and_then(|c| i64::try_from(c).ok())
    else {
        return false;
    };
    let m: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| 4 * a2[r][c] - 4 * q.a() * a[r][c] + if r == c { constant } else { 0 })
                .collect()
        })
        .collect();
    n - exact_rank(&m) == expected_nullity
}
