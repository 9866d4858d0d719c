//! Serializable reports. Reals are rounded to 15 significant digits so that
//! parsing and re-emitting a report reproduces it byte for byte.

use std::fmt::Write as _;

use corona_walk_core::arith::{Eigenvalue, QuadInt};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `x` rounded to 15 significant digits; negative zero becomes zero.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// A real that serializes with 15 significant digits; non-finite values
/// become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let x = round15(self.0);
        if x.is_finite() {
            s.serialize_f64(x)
        } else {
            s.serialize_none()
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Real(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

impl std::fmt::Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let x = round15(self.0);
        if x != 0.0 && !(1e-4..1e15).contains(&x.abs()) {
            write!(f, "{x:e}")
        } else {
            write!(f, "{x}")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl std::fmt::Display for Complex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let im = round15(self.im.0);
        let sign = if im < 0.0 { '-' } else { '+' };
        write!(f, "{} {sign} {}i", self.re, Real(im.abs()))
    }
}

impl From<Complex64> for Complex {
    fn from(z: Complex64) -> Self {
        Self {
            re: Real(z.re),
            im: Real(z.im),
        }
    }
}

/// `(a + b·√delta)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    pub a: i64,
    pub b: i64,
    pub delta: u64,
}

impl From<QuadInt> for Exact {
    fn from(q: QuadInt) -> Self {
        Self {
            a: q.a(),
            b: q.b(),
            delta: q.delta(),
        }
    }
}

/// Readable form of a quadratic integer: `4`, `sqrt(2)`, `(3+sqrt(21))/2`.
pub fn symbolic(q: QuadInt) -> String {
    if let Some(x) = q.as_integer() {
        return x.to_string();
    }
    let (a, b, d) = (q.a(), q.b(), q.delta());
    if a % 2 == 0 && b % 2 == 0 {
        let (a, b) = (a / 2, b / 2);
        let root = match b {
            1 => format!("sqrt({d})"),
            -1 => format!("-sqrt({d})"),
            _ => format!("{b}*sqrt({d})"),
        };
        return match a {
            0 => root,
            _ if b > 0 => format!("{a}+{root}"),
            _ => format!("{a}{root}"),
        };
    }
    let root = match b.abs() {
        1 => format!("sqrt({d})"),
        m => format!("{m}*sqrt({d})"),
    };
    let sign = if b < 0 { "-" } else { "+" };
    match a {
        0 => format!("{}{root}/2", if b < 0 { "-" } else { "" }),
        _ => format!("({a}{sign}{root})/2"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Value {
    pub value: Real,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Exact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<String>,
}

impl From<Eigenvalue> for Value {
    fn from(e: Eigenvalue) -> Self {
        Self {
            value: Real(e.value()),
            exact: e.exact().map(Exact::from),
            symbolic: e.exact().map(symbolic),
        }
    }
}

impl Value {
    fn text(&self) -> String {
        match &self.symbolic {
            Some(s) if s.parse::<i64>().is_err() => format!("{} = {}", s, self.value),
            _ => self.value.to_string(),
        }
    }
}

/// `π/(g√Δ)` spelled out, e.g. `pi/2`, `pi/sqrt(2)`, `pi/(2*sqrt(3))`.
pub fn pi_over(g: u128, delta: u64, numerator: &str) -> String {
    match (g, delta) {
        (1, 1) => numerator.to_string(),
        (g, 1) => format!("{numerator}/{g}"),
        (1, d) => format!("{numerator}/sqrt({d})"),
        (g, d) => format!("{numerator}/({g}*sqrt({d}))"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Class {
    pub value: Real,
    pub mult: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Exact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub command: String,
    pub graph: String,
    pub order: usize,
    pub method: String,
    pub classes: Vec<Class>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoronaBuildReport {
    pub command: String,
    pub graph: String,
    pub order: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
}

/// Corona vertex: `h_vertex` is `None` on the base copy of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub base: usize,
    pub h_vertex: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub command: String,
    pub graph: String,
    pub u: usize,
    pub v: usize,
    pub t: Real,
    pub amplitude: Complex,
    pub fidelity: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub command: String,
    pub graph: String,
    pub u: usize,
    pub v: usize,
    pub t_max: Real,
    pub steps: usize,
    pub argmax: usize,
    pub max_fidelity: Real,
    pub times: Vec<Real>,
    pub fidelities: Vec<Real>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportReport {
    pub command: String,
    pub graph: String,
    pub u: usize,
    pub support: Vec<Class>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignedClass {
    pub value: Value,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CospectralReport {
    pub command: String,
    pub graph: String,
    pub u: usize,
    pub v: usize,
    pub strongly_cospectral: bool,
    pub signs: Vec<SignedClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoronaConditions {
    pub periodic: String,
    pub k_is_zero: bool,
    pub odd_square: bool,
    pub support_condition: Option<bool>,
    pub corona_support: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicReport {
    pub command: String,
    pub graph: String,
    pub u: usize,
    pub periodic: String,
    pub case: String,
    pub a: Option<i64>,
    pub delta: Option<u64>,
    pub witness_period: Option<Real>,
    pub witness_symbolic: Option<String>,
    pub support: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corona_conditions: Option<CoronaConditions>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PstReport {
    pub command: String,
    pub graph: String,
    pub u: usize,
    pub v: usize,
    pub verdict: String,
    pub failure_reason: Option<String>,
    pub support: Vec<Value>,
    pub a: Option<i64>,
    pub delta: Option<u64>,
    pub b_values: Vec<i64>,
    pub differences: Vec<u128>,
    pub signs: Vec<i8>,
    pub g: Option<u128>,
    pub alpha: Option<u32>,
    pub tau: Option<String>,
    pub tau_value: Option<Real>,
    pub phase: Option<Complex>,
    pub confirmed_fidelity: Option<Real>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoPstScanReport {
    pub command: String,
    pub graph: String,
    pub pair: String,
    pub u: usize,
    pub v: usize,
    pub w: Option<usize>,
    pub t_max: Real,
    pub steps: usize,
    pub max_fidelity: Real,
    pub argmax_time: Real,
    pub all_below_one: bool,
    pub static_bound: Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub l: u64,
    pub fidelity: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PgstReport {
    pub command: String,
    pub graph: String,
    pub u: usize,
    pub v: usize,
    pub family: String,
    pub g: Option<u64>,
    pub l_max: u64,
    pub target: Real,
    pub best_l: u64,
    pub best_time: Real,
    pub best_fidelity: Real,
    pub reached_target: bool,
    pub evaluated: u64,
    pub trace: Vec<TracePoint>,
}

/// Text and CSV renderings besides JSON.
pub trait Render: Serialize {
    fn text(&self) -> String;

    /// Defaults to `key,value` rows for the scalar top-level fields.
    fn csv(&self) -> String {
        let mut out = String::from("key,value\n");
        if let Ok(serde_json::Value::Object(map)) = serde_json::to_value(self) {
            for (key, value) in map {
                let cell = match value {
                    serde_json::Value::Null => String::new(),
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Array(_) | serde_json::Value::Object(_) => continue,
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{key},{cell}");
            }
        }
        out
    }
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn classes_csv(classes: &[Class]) -> String {
    let mut out = String::from("value,mult,a,b,delta\n");
    for c in classes {
        let (a, b, d) = c.exact.map_or((String::new(), String::new(), String::new()), |e| {
            (e.a.to_string(), e.b.to_string(), e.delta.to_string())
        });
        let _ = writeln!(out, "{},{},{a},{b},{d}", c.value, c.mult);
    }
    out
}

fn class_line(c: &Class) -> String {
    match &c.symbolic {
        Some(s) if s.parse::<i64>().is_err() => format!("{s} = {}  (x{})", c.value, c.mult),
        _ => format!("{}  (x{})", c.value, c.mult),
    }
}

fn values_text(values: &[Value]) -> String {
    values.iter().map(Value::text).collect::<Vec<_>>().join(", ")
}

impl Render for SpectrumReport {
    fn text(&self) -> String {
        let mut out = format!("{} ({} vertices, {})\n", self.graph, self.order, self.method);
        for c in &self.classes {
            let _ = writeln!(out, "  {}", class_line(c));
        }
        out
    }

    fn csv(&self) -> String {
        classes_csv(&self.classes)
    }
}

impl Render for CoronaBuildReport {
    fn text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for [u, v] in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("u,v\n");
        for [u, v] in &self.edges {
            let _ = writeln!(out, "{u},{v}");
        }
        out
    }
}

impl Render for FidelityReport {
    fn text(&self) -> String {
        format!(
            "U({})[{},{}] = {}\nfidelity = {}\n",
            self.t, self.u, self.v, self.amplitude, self.fidelity
        )
    }

    fn csv(&self) -> String {
        format!(
            "t,re,im,fidelity\n{},{},{},{}\n",
            self.t, self.amplitude.re, self.amplitude.im, self.fidelity
        )
    }
}

impl Render for SweepReport {
    fn text(&self) -> String {
        format!(
            "{} samples on [0, {}]: max fidelity {} at t = {}\n",
            self.steps, self.t_max, self.max_fidelity, self.times[self.argmax]
        )
    }

    fn csv(&self) -> String {
        let mut out = String::from("t,fidelity\n");
        for (t, f) in self.times.iter().zip(&self.fidelities) {
            let _ = writeln!(out, "{t},{f}");
        }
        out
    }
}

impl Render for SupportReport {
    fn text(&self) -> String {
        let mut out = format!("support of {} in {}\n", self.u, self.graph);
        for c in &self.support {
            let _ = writeln!(out, "  {}", class_line(c));
        }
        out
    }

    fn csv(&self) -> String {
        classes_csv(&self.support)
    }
}

impl Render for CospectralReport {
    fn text(&self) -> String {
        if !self.strongly_cospectral {
            return format!("{} and {} are not strongly cospectral\n", self.u, self.v);
        }
        let mut out = format!("{} and {} are strongly cospectral\n", self.u, self.v);
        for s in &self.signs {
            let _ = writeln!(out, "  {}: {:+}", s.value.text(), s.sign);
        }
        out
    }
}

impl Render for PeriodicReport {
    fn text(&self) -> String {
        let mut out = format!("periodic at {}: {} ({})\n", self.u, self.periodic, self.case);
        if let (Some(p), Some(s)) = (&self.witness_period, &self.witness_symbolic) {
            let _ = writeln!(out, "period {s} = {p}");
        }
        let _ = writeln!(out, "support: {}", values_text(&self.support));
        if let Some(c) = &self.corona_conditions {
            let _ = writeln!(
                out,
                "corona conditions: {} (k = 0: {}, 1+4m odd square: {}, support condition: {})",
                c.periodic,
                c.k_is_zero,
                c.odd_square,
                opt(&c.support_condition)
            );
        }
        out
    }
}

impl Render for PstReport {
    fn text(&self) -> String {
        let mut out = format!("{} between {} and {}\n", self.verdict, self.u, self.v);
        if let Some(r) = &self.failure_reason {
            let _ = writeln!(out, "reason: {r}");
        }
        if let (Some(tau), Some(tv)) = (&self.tau, &self.tau_value) {
            let _ = writeln!(out, "tau = {tau} = {tv}");
        }
        let _ = writeln!(
            out,
            "delta = {}, g = {}, alpha = {}",
            opt(&self.delta),
            opt(&self.g),
            opt(&self.alpha)
        );
        if let (Some(p), Some(f)) = (&self.phase, &self.confirmed_fidelity) {
            let _ = writeln!(out, "phase = {p}, fidelity = {f}");
        }
        out
    }
}

impl Render for NoPstScanReport {
    fn text(&self) -> String {
        format!(
            "{} pair: max fidelity {} at t = {} over {} samples (all below one: {}); static bound {}\n",
            self.pair, self.max_fidelity, self.argmax_time, self.steps, self.all_below_one, self.static_bound
        )
    }
}

impl Render for PgstReport {
    fn text(&self) -> String {
        let mut out = format!(
            "{}: best fidelity {} at l = {} (t = {}), target {} {}\n",
            self.family,
            self.best_fidelity,
            self.best_l,
            self.best_time,
            self.target,
            if self.reached_target { "reached" } else { "not reached" }
        );
        for p in &self.trace {
            let _ = writeln!(out, "  l = {}: {}", p.l, p.fidelity);
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("l,fidelity\n");
        for p in &self.trace {
            let _ = writeln!(out, "{},{}", p.l, p.fidelity);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round15(2.0 / 3.0), 0.666666666666667);
        let x = round15(1.0 / 3.0);
        assert_eq!(round15(x), x);
    }

    #[test]
    fn symbolic_forms() {
        let q = |a, b, d| QuadInt::new(a, b, d).unwrap();
        assert_eq!(symbolic(QuadInt::integer(-2)), "-2");
        assert_eq!(symbolic(q(0, 2, 2)), "sqrt(2)");
        assert_eq!(symbolic(q(0, -2, 2)), "-sqrt(2)");
        assert_eq!(symbolic(q(2, 4, 3)), "1+2*sqrt(3)");
        assert_eq!(symbolic(q(3, 1, 21)), "(3+sqrt(21))/2");
        assert_eq!(symbolic(q(1, -3, 5)), "(1-3*sqrt(5))/2");
        assert_eq!(symbolic(q(0, -1, 5)), "-sqrt(5)/2");
    }

    #[test]
    fn tau_forms() {
        assert_eq!(pi_over(2, 1, "pi"), "pi/2");
        assert_eq!(pi_over(1, 2, "pi"), "pi/sqrt(2)");
        assert_eq!(pi_over(2, 3, "2*pi"), "2*pi/(2*sqrt(3))");
        assert_eq!(pi_over(1, 1, "pi"), "pi");
    }

    #[test]
    fn real_serializes_rounded_and_nulls_nan() {
        assert_eq!(serde_json::to_string(&Real(0.1 + 0.2)).unwrap(), "0.3");
        assert_eq!(serde_json::to_string(&Real(f64::NAN)).unwrap(), "null");
        let r: Real = serde_json::from_str("1.5").unwrap();
        assert_eq!(r, Real(1.5));
    }
}
