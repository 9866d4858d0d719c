use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corona_walk_core::arith::Eigenvalue;
use corona_walk_core::corona::spectral_closed_form;
use corona_walk_core::graph::{Graph, GraphSpec, VertexLabel};
use corona_walk_core::spectral::{graph_decomposition, SpectralDecomposition, Tolerances};
use corona_walk_core::transfer::{
    corona_base_periodicity, corona_no_pst_check, fidelity_sweep, periodicity_test, pgst_search, pst_certify,
    uniform_grid, CoronaPair, FamilyRun, Periodic, PeriodicityCase, PeriodicityVerdict, PgstFamily, PgstParams,
    PstFailure, PstVerdict, DEFAULT_L_MAX, DEFAULT_TARGET,
};
use corona_walk_core::{CoronaSpec, Error};

use crate::config::{Format, RunConfig};
use crate::edgelist::{build_spec, EdgeListError};
use crate::report::*;
use crate::spec::{format_graph_spec, parse_graph_spec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ANALYSIS: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "corona-walk", version, about = "Quantum walks on neighborhood corona graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Relative gap below which eigenvalues share a class
    #[arg(long, global = true, env = "CORONAWALK_GROUP_TOL", default_value_t = Tolerances::default().group)]
    pub group_tol: f64,
    /// Projector column norm above which an eigenvalue is in a support
    #[arg(long, global = true, env = "CORONAWALK_SUPPORT_TOL", default_value_t = Tolerances::default().support)]
    pub support_tol: f64,
    /// Entrywise tolerance for strong cospectrality
    #[arg(long, global = true, env = "CORONAWALK_COSPECTRAL_TOL", default_value_t = Tolerances::default().cospectral)]
    pub cospectral_tol: f64,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Print timings to stderr
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// PST in G at pi/g with 0 outside the support; times (4l + 2/g)pi
    T51,
    /// 0 in the spectrum of G and PST at pi/2; times (4l + 1)pi
    T52,
    /// Antipodal vertices of cocktail:n with n odd; times 8l*pi
    Cocktail,
}

impl From<FamilyArg> for PgstFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::T51 => PgstFamily::LiftedPst,
            FamilyArg::T52 => PgstFamily::ZeroInSpectrum,
            FamilyArg::Cocktail => PgstFamily::Cocktail,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue classes with multiplicities
    Spectrum {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        /// Use the corona closed form (needs a corona with regular connected H)
        #[arg(long)]
        closed_form: bool,
    },
    /// Assemble a graph and emit its edge list
    CoronaBuild {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
    },
    /// Transition amplitude and fidelity at one time
    Fidelity {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        t: f64,
    },
    /// Fidelity on a uniform time grid
    Sweep {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 50.0)]
        tmax: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Eigenvalue support of a vertex
    Support {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        #[arg(long)]
        u: usize,
    },
    /// Strong cospectrality with signs
    Cospectral {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
    },
    /// Periodicity of a vertex; corona base vertices also get the corona conditions
    Periodic {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        #[arg(long)]
        u: usize,
    },
    /// Exact perfect state transfer certificate
    Pst {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
    },
    /// Closed-form fidelity scan on a corona; --u and --v are vertices of G,
    /// --w picks the copy vertex (v,w) instead of the base vertex (v,0)
    NoPstScan {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        w: Option<usize>,
        #[arg(long, default_value_t = 50.0)]
        tmax: f64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
    },
    /// Pretty good state transfer search between base vertices (u,0) and (v,0)
    Pgst {
        /// Graph spec, e.g. corona(path:2,cycle:3)
        spec: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = DEFAULT_L_MAX)]
        lmax: u64,
        #[arg(long, default_value_t = DEFAULT_TARGET)]
        target: f64,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Analysis(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Analysis(_) => EXIT_ANALYSIS,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Analysis(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VertexOutOfRange { .. } | Error::SameVertex | Error::InvalidParameter(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Analysis(e.to_string()),
        }
    }
}

impl From<EdgeListError> for Failure {
    fn from(e: EdgeListError) -> Self {
        match e {
            EdgeListError::Graph(e) => e.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_vertex(name: &str, x: usize, n: usize, what: &str) -> Result<(), Failure> {
    if x < n {
        Ok(())
    } else {
        Err(usage(format!("--{name} {x} out of range for {what} on {n} vertices")))
    }
}

fn distinct(u: usize, v: usize) -> Result<(), Failure> {
    if u == v {
        Err(usage("--u and --v must differ"))
    } else {
        Ok(())
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn config(g: &GlobalArgs, command: &Command) -> RunConfig {
    let mut c = RunConfig {
        tolerances: Tolerances {
            group: g.group_tol,
            support: g.support_tol,
            cospectral: g.cospectral_tol,
        },
        format: g.format,
        output: g.output.clone(),
        ..RunConfig::default()
    };
    if let Command::Pgst { lmax, target, .. } = command {
        c.l_max = *lmax;
        c.target = *target;
    }
    c
}

fn spec_text(command: &Command) -> &str {
    match command {
        Command::Spectrum { spec, .. }
        | Command::CoronaBuild { spec }
        | Command::Fidelity { spec, .. }
        | Command::Sweep { spec, .. }
        | Command::Support { spec, .. }
        | Command::Cospectral { spec, .. }
        | Command::Periodic { spec, .. }
        | Command::Pst { spec, .. }
        | Command::NoPstScan { spec, .. }
        | Command::Pgst { spec, .. } => spec,
    }
}

struct Timer<'a> {
    verbose: bool,
    err: &'a mut dyn Write,
    last: Instant,
}

impl Timer<'_> {
    fn lap(&mut self, what: &str) {
        if self.verbose {
            let now = Instant::now();
            let _ = writeln!(
                self.err,
                "[time] {what}: {:.3} ms",
                (now - self.last).as_secs_f64() * 1e3
            );
            self.last = now;
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let cfg = config(&cli.global, &cli.command);
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let mut timer = Timer {
        verbose: cli.global.verbose,
        err,
        last: Instant::now(),
    };
    let spec = parse_graph_spec(spec_text(&cli.command)).map_err(|e| usage(e.to_string()))?;
    let ctx = Context {
        name: format_graph_spec(&spec),
        spec,
        tol: cfg.tolerances,
    };
    timer.lap("parse");
    let rendered = match &cli.command {
        Command::Spectrum { closed_form, .. } => emit(&ctx.spectrum(*closed_form)?, cfg.format),
        Command::CoronaBuild { .. } => emit(&ctx.corona_build()?, cfg.format),
        Command::Fidelity { u, v, t, .. } => emit(&ctx.fidelity(*u, *v, *t)?, cfg.format),
        Command::Sweep { u, v, tmax, steps, .. } => emit(&ctx.sweep(*u, *v, *tmax, *steps)?, cfg.format),
        Command::Support { u, .. } => emit(&ctx.support(*u)?, cfg.format),
        Command::Cospectral { u, v, .. } => emit(&ctx.cospectral(*u, *v)?, cfg.format),
        Command::Periodic { u, .. } => emit(&ctx.periodic(*u)?, cfg.format),
        Command::Pst { u, v, .. } => emit(&ctx.pst(*u, *v)?, cfg.format),
        Command::NoPstScan {
            u, v, w, tmax, steps, ..
        } => emit(&ctx.no_pst_scan(*u, *v, *w, *tmax, *steps)?, cfg.format),
        Command::Pgst { u, v, family, .. } => emit(&ctx.pgst(*u, *v, *family, &cfg)?, cfg.format),
    };
    timer.lap("analysis");
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, rendered).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?
        }
        None => out
            .write_all(rendered.as_bytes())
            .map_err(|e| Failure::Analysis(format!("cannot write report: {e}")))?,
    }
    timer.lap("output");
    Ok(())
}

fn emit<R: Render>(report: &R, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => report.csv(),
        Format::Text => report.text(),
    }
}

struct Context {
    name: String,
    spec: GraphSpec,
    tol: Tolerances,
}

fn class_of(d: &SpectralDecomposition, i: usize) -> Class {
    let c = d.class(i);
    Class {
        value: Real(c.exact.map_or(c.value, |q| q.to_f64())),
        mult: c.multiplicity,
        exact: c.exact.map(Exact::from),
        symbolic: c.exact.map(symbolic),
    }
}

fn values(xs: &[Eigenvalue]) -> Vec<Value> {
    xs.iter().copied().map(Value::from).collect()
}

fn periodic_name(p: Periodic) -> String {
    match p {
        Periodic::Yes => "yes",
        Periodic::No => "no",
        Periodic::Inconclusive => "inconclusive",
    }
    .to_string()
}

/// `2π/(g√Δ)` in lowest terms.
fn period_symbolic(verdict: &PeriodicityVerdict) -> Option<String> {
    let period = verdict.witness_period?;
    let delta = match verdict.case {
        PeriodicityCase::AllInteger => 1,
        PeriodicityCase::Quadratic { delta, .. } => delta,
        PeriodicityCase::None => return None,
    };
    let g = (2.0 * std::f64::consts::PI / (period * (delta as f64).sqrt())).round() as u128;
    Some(if g.is_multiple_of(2) {
        pi_over(g / 2, delta, "pi")
    } else {
        pi_over(g, delta, "2*pi")
    })
}

impl Context {
    fn graph(&self) -> Result<Graph, Failure> {
        Ok(build_spec(&self.spec)?)
    }

    fn decomposition(&self) -> Result<(Graph, SpectralDecomposition), Failure> {
        let g = self.graph()?;
        let d = graph_decomposition(&g, &self.tol)?;
        Ok((g, d))
    }

    fn corona(&self) -> Result<CoronaSpec, Failure> {
        let GraphSpec::Corona(g, h) = &self.spec else {
            return Err(usage(format!("`{}` is not a corona spec", self.name)));
        };
        Ok(CoronaSpec::new(build_spec(g)?, build_spec(h)?))
    }

    fn spectrum(&self, closed_form: bool) -> Result<SpectrumReport, Failure> {
        let (order, d, method) = if closed_form {
            let c = self.corona()?;
            let gd = graph_decomposition(c.g(), &self.tol)?;
            let hd = graph_decomposition(c.h(), &self.tol)?;
            let d = spectral_closed_form(&c, &gd, &hd, self.tol.group)?;
            (c.order(), d, "closed-form")
        } else {
            let (g, d) = self.decomposition()?;
            (g.order(), d, "numeric")
        };
        Ok(SpectrumReport {
            command: "spectrum".into(),
            graph: self.name.clone(),
            order,
            method: method.into(),
            classes: (0..d.len()).map(|i| class_of(&d, i)).collect(),
        })
    }

    fn corona_build(&self) -> Result<CoronaBuildReport, Failure> {
        let g = self.graph()?;
        let labels = g.labels().map(|ls| {
            ls.iter()
                .map(|l| match *l {
                    VertexLabel::Base(v) => Label {
                        base: v,
                        h_vertex: None,
                    },
                    VertexLabel::Copy { base, h_vertex } => Label {
                        base,
                        h_vertex: Some(h_vertex),
                    },
                })
                .collect()
        });
        Ok(CoronaBuildReport {
            command: "corona-build".into(),
            graph: self.name.clone(),
            order: g.order(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels,
        })
    }

    fn fidelity(&self, u: usize, v: usize, t: f64) -> Result<FidelityReport, Failure> {
        if !t.is_finite() {
            return Err(usage("--t must be finite"));
        }
        let (g, d) = self.decomposition()?;
        check_vertex("u", u, g.order(), "the graph")?;
        check_vertex("v", v, g.order(), "the graph")?;
        let amp = d.amplitude(u, v, t)?;
        Ok(FidelityReport {
            command: "fidelity".into(),
            graph: self.name.clone(),
            u,
            v,
            t: Real(t),
            amplitude: amp.into(),
            fidelity: Real(amp.norm()),
        })
    }

    fn sweep(&self, u: usize, v: usize, t_max: f64, steps: usize) -> Result<SweepReport, Failure> {
        let (g, d) = self.decomposition()?;
        check_vertex("u", u, g.order(), "the graph")?;
        check_vertex("v", v, g.order(), "the graph")?;
        let trace = fidelity_sweep(&d, u, v, t_max, steps)?;
        Ok(SweepReport {
            command: "sweep".into(),
            graph: self.name.clone(),
            u,
            v,
            t_max: Real(t_max),
            steps,
            argmax: trace.argmax,
            max_fidelity: Real(trace.fidelities[trace.argmax]),
            times: trace.times.into_iter().map(Real).collect(),
            fidelities: trace.fidelities.into_iter().map(Real).collect(),
        })
    }

    fn support(&self, u: usize) -> Result<SupportReport, Failure> {
        let (g, d) = self.decomposition()?;
        check_vertex("u", u, g.order(), "the graph")?;
        let s = d.eigenvalue_support(u, self.tol.support)?;
        Ok(SupportReport {
            command: "support".into(),
            graph: self.name.clone(),
            u,
            support: s.classes.iter().map(|&i| class_of(&d, i)).collect(),
        })
    }

    fn cospectral(&self, u: usize, v: usize) -> Result<CospectralReport, Failure> {
        let (g, d) = self.decomposition()?;
        check_vertex("u", u, g.order(), "the graph")?;
        check_vertex("v", v, g.order(), "the graph")?;
        distinct(u, v)?;
        let map = d.strong_cospectral(u, v, self.tol.cospectral)?;
        Ok(CospectralReport {
            command: "cospectral".into(),
            graph: self.name.clone(),
            u,
            v,
            strongly_cospectral: map.is_some(),
            signs: map
                .map(|m| {
                    m.signs
                        .iter()
                        .map(|&(i, sign)| SignedClass {
                            value: d.class(i).eigenvalue().into(),
                            sign,
                        })
                        .collect()
                })
                .unwrap_or_default(),
        })
    }

    fn periodic(&self, u: usize) -> Result<PeriodicReport, Failure> {
        let (g, d) = self.decomposition()?;
        check_vertex("u", u, g.order(), "the graph")?;
        let support = d.support_values(&d.eigenvalue_support(u, self.tol.support)?);
        let verdict = periodicity_test(&support)?;
        let (case, a, delta) = match verdict.case {
            PeriodicityCase::AllInteger => ("all-integer", None, Some(1)),
            PeriodicityCase::Quadratic { a, delta } => ("quadratic", Some(a), Some(delta)),
            PeriodicityCase::None => ("none", None, None),
        };
        // Closed-form conditions only apply to base vertices of a corona whose
        // factors meet their hypotheses; otherwise the field is left out.
        let corona_conditions = match self.corona() {
            Ok(c) if u < c.n() => corona_base_periodicity(&c, u, &self.tol)
                .ok()
                .map(|p| CoronaConditions {
                    periodic: periodic_name(p.verdict.periodic),
                    k_is_zero: p.k_is_zero,
                    odd_square: p.odd_square,
                    support_condition: p.support_condition,
                    corona_support: values(&p.corona_support),
                }),
            _ => None,
        };
        Ok(PeriodicReport {
            command: "periodic".into(),
            graph: self.name.clone(),
            u,
            periodic: periodic_name(verdict.periodic),
            case: case.into(),
            a,
            delta,
            witness_period: verdict.witness_period.map(Real),
            witness_symbolic: period_symbolic(&verdict),
            support: values(&support),
            corona_conditions,
        })
    }

    fn pst(&self, u: usize, v: usize) -> Result<PstReport, Failure> {
        let (g, d) = self.decomposition()?;
        check_vertex("u", u, g.order(), "the graph")?;
        check_vertex("v", v, g.order(), "the graph")?;
        distinct(u, v)?;
        let c = pst_certify(&d, u, v, &self.tol)?;
        let verdict = match c.verdict {
            PstVerdict::Pst => "PST",
            PstVerdict::NoPst => "NO_PST",
            PstVerdict::Inconclusive => "INCONCLUSIVE",
        };
        let failure_reason = c.failure.map(|f| {
            match f {
                PstFailure::NotStronglyCospectral => "not-strongly-cospectral",
                PstFailure::SupportNotQuadratic => "support-not-quadratic",
                PstFailure::TwoAdicSignPattern => "two-adic-sign-pattern",
                PstFailure::InexactSpectrum => "inexact-spectrum",
            }
            .to_string()
        });
        let tau = match (c.verdict, c.g, c.delta) {
            (PstVerdict::Pst, Some(g), Some(delta)) => Some(pi_over(g, delta, "pi")),
            _ => None,
        };
        Ok(PstReport {
            command: "pst".into(),
            graph: self.name.clone(),
            u,
            v,
            verdict: verdict.into(),
            failure_reason,
            support: c
                .support
                .iter()
                .copied()
                .map(|q| Value::from(Eigenvalue::Exact(q)))
                .collect(),
            a: c.a,
            delta: c.delta,
            b_values: c.b_values,
            differences: c.differences,
            signs: c.signs,
            g: c.g,
            alpha: c.alpha,
            tau,
            tau_value: c.tau.map(Real),
            phase: c.phase.map(Complex::from),
            confirmed_fidelity: c.confirmed_fidelity.map(Real),
        })
    }

    fn no_pst_scan(
        &self,
        u: usize,
        v: usize,
        w: Option<usize>,
        t_max: f64,
        steps: usize,
    ) -> Result<NoPstScanReport, Failure> {
        let c = self.corona()?;
        check_vertex("u", u, c.n(), "G")?;
        check_vertex("v", v, c.n(), "G")?;
        if steps < 2 {
            return Err(usage("--steps must be at least 2"));
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(usage("--tmax must be positive"));
        }
        let pair = match w {
            Some(w) => {
                check_vertex("w", w, c.m(), "H")?;
                CoronaPair::BaseCopy { v_prime: u, v, w }
            }
            None => {
                distinct(u, v)?;
                CoronaPair::BaseBase { v: u, v_prime: v }
            }
        };
        let gd = graph_decomposition(c.g(), &self.tol)?;
        let scan = corona_no_pst_check(&c, &gd, pair, &uniform_grid(t_max, steps))?;
        Ok(NoPstScanReport {
            command: "no-pst-scan".into(),
            graph: self.name.clone(),
            pair: if w.is_some() { "base-copy" } else { "base-base" }.into(),
            u,
            v,
            w,
            t_max: Real(t_max),
            steps: scan.samples,
            max_fidelity: Real(scan.max_fidelity),
            argmax_time: Real(scan.argmax_time),
            all_below_one: scan.all_below_one,
            static_bound: Real(scan.static_bound),
        })
    }

    fn pgst(&self, u: usize, v: usize, family: FamilyArg, cfg: &RunConfig) -> Result<PgstReport, Failure> {
        let c = self.corona()?;
        check_vertex("u", u, c.n(), "G")?;
        check_vertex("v", v, c.n(), "G")?;
        distinct(u, v)?;
        let gd = graph_decomposition(c.g(), &self.tol)?;
        let params = PgstParams {
            l_max: cfg.l_max,
            target: cfg.target,
        };
        let r = pgst_search(&c, &gd, u, v, family.into(), params, &self.tol)?;
        let (name, g) = match r.family {
            FamilyRun::LiftedPst { g } => ("t51", Some(g)),
            FamilyRun::ZeroInSpectrum => ("t52", None),
            FamilyRun::Cocktail => ("cocktail", None),
        };
        Ok(PgstReport {
            command: "pgst".into(),
            graph: self.name.clone(),
            u,
            v,
            family: name.into(),
            g,
            l_max: cfg.l_max,
            target: Real(cfg.target),
            best_l: r.best_l,
            best_time: Real(r.best_time),
            best_fidelity: Real(r.best_fidelity),
            reached_target: r.reached_target,
            evaluated: r.evaluated,
            trace: r
                .trace
                .into_iter()
                .map(|(l, f)| TracePoint { l, fidelity: Real(f) })
                .collect(),
        })
    }
}
