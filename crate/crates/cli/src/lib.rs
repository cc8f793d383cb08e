//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the exit code with everything meant for standard output and
//! standard error, so the binary is a thin wrapper and tests need no process.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use galcoh::cohomology::{group_cohomology, hypercohomology, shapiro_compare, tate_cohomology, CohomologyGroup};
use galcoh::complexes::{
    classify, coflasque_resolution, flasque_resolution, r_equivalence_invariant, uniqueness_invariants, ClassMode,
    InvariantValue, Resolution, ResolutionCertificate, TwoTermComplex,
};
use galcoh::crossed::{h_minus_one, h_zero_with_limit, FiniteCrossedModule, DEFAULT_ENUMERATION_LIMIT};
use galcoh::fixtures;
use galcoh::groups::{sylow_all_cyclic, FiniteGroup, Subgroup};
use galcoh::io;
use galcoh::lattice::{smith_normal_form, AbGroup, GLattice, IntMatrix};
use galcoh::patching::{
    crossed_report, mv_columns, nine_term_report, refine_graph, refinement_orbit_sizes, remark_compare, sha,
    Coefficient, Exactness, PatchingGraph,
};
use galcoh::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "galcoh", version, about = "Galois lattice cohomology workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug, Default)]
struct Opts {
    /// Group file or `fixtures:NAME`
    #[arg(long, global = true)]
    group: Option<String>,
    /// Lattice file or `fixtures:NAME`
    #[arg(long, global = true)]
    lattice: Option<String>,
    /// Two-term complex file or `fixtures:NAME`; `invariants` takes two
    #[arg(long, global = true)]
    complex: Vec<String>,
    /// Patching graph file or `fixtures:NAME`
    #[arg(long, global = true)]
    graph: Option<String>,
    /// Crossed module file or `fixtures:NAME`
    #[arg(long, global = true)]
    crossed: Option<String>,
    /// Certificate file to replay instead of resolving
    #[arg(long, global = true)]
    certificate: Option<String>,
    /// Matrix file or inline JSON list of rows
    #[arg(long, global = true)]
    matrix: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    degree: Option<i32>,
    /// Subgroup as a comma-separated list of element ids
    #[arg(long, global = true)]
    subgroup: Option<String>,
    /// Restrict `classify` to one property
    #[arg(long, global = true)]
    mode: Option<ModeArg>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Replay the resolution certificate and fail if any claim is refuted
    #[arg(long, global = true)]
    verify_certificate: bool,
    /// Bound on enumerations and cochain dimensions
    #[arg(long, global = true)]
    size_limit: Option<u128>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Flasque,
    Coflasque,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// H^n(H, L) for n in 0..2
    Cohomology,
    /// Tate cohomology in degrees -1 and 0
    Tate,
    /// Hypercohomology of a two-term complex in degrees -1..1
    Hyper,
    /// Flasque and coflasque tests over every subgroup
    Classify,
    /// Flasque resolution [P -> F] with certificate
    ResolveFlasque,
    /// Coflasque resolution [C -> Q] with certificate
    ResolveCoflasque,
    /// R-equivalence table of one complex, or the comparison of two
    Invariants,
    /// H^0 of a crossed module by enumeration
    CrossedH0,
    /// Mayer-Vietoris columns over a patching graph
    MvReport,
    /// Kernel of the global-to-vertices restriction
    Sha,
    /// Sha^1 against Sha^2 of a coflasque resolution and the H^0 cokernel
    RemarkCompare,
    /// Base change of a patching graph along a subgroup
    Refine,
    /// H^n(G, Ind L) against H^n(H, L)
    Shapiro,
    /// Whether every Sylow subgroup is cyclic
    SylowCyclic,
    /// Smith normal form U A V = D
    Snf,
    /// List the built-in catalog
    Fixtures,
}

/// Exit code and the two output streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SIZE: i32 = 3;

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stderr: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    match execute(&cli) {
        Ok(r) => Outcome {
            code: if r.verdict { EXIT_OK } else { EXIT_FALSE },
            stdout: r.render(cli.opts.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: match e {
                Error::SizeLimit { .. } => EXIT_SIZE,
                _ => EXIT_INPUT,
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// A finished report: machine form, human form, and the verdict of a check
/// (`true` for commands that are not checks).
struct Report {
    json: Value,
    text: String,
    verdict: bool,
}

impl Report {
    fn new(command: &str, mut json: Value, text: String) -> Self {
        json["command"] = json!(command);
        Report {
            json,
            text,
            verdict: true,
        }
    }

    fn verdict(mut self, v: bool) -> Self {
        self.verdict = v;
        self.json["verdict"] = json!(v);
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => io::to_string(&self.json) + "\n",
            Format::Text => self.text.clone(),
        }
    }
}

fn read_json(reference: &str) -> Result<Value> {
    let text = std::fs::read_to_string(reference).map_err(|e| Error::Parse(format!("{reference}: {e}")))?;
    io::parse(&text)
}

fn fixture_name(reference: &str) -> Option<&str> {
    reference.strip_prefix("fixtures:")
}

/// Group references: catalog names (with or without the `fixtures:` prefix)
/// or paths to group documents, relative to `base` (the directory of the
/// referring file).
fn resolve_group(reference: &str, base: &Path) -> Result<Arc<FiniteGroup>> {
    if let Some(name) = fixture_name(reference) {
        return fixtures::group(name);
    }
    let path = base.join(reference);
    if path.is_file() {
        let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{reference}: {e}")))?;
        return io::group_from_json(&io::parse(&text)?, &|r| resolve_group(r, &dir));
    }
    fixtures::group(reference)
}

fn load<T>(
    reference: &str,
    fixture: impl Fn(&str) -> Result<T>,
    parse: impl Fn(&Value, io::Resolver) -> Result<T>,
) -> Result<T> {
    match fixture_name(reference) {
        Some(name) => fixture(name),
        None => {
            let dir = Path::new(reference).parent().unwrap_or(Path::new("")).to_path_buf();
            parse(&read_json(reference)?, &|r| resolve_group(r, &dir))
        }
    }
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Parse(format!("missing --{flag}")))
}

impl Opts {
    fn group(&self) -> Result<Arc<FiniteGroup>> {
        resolve_group(need(&self.group, "group")?, Path::new(""))
    }

    fn lattice(&self) -> Result<GLattice> {
        let l = load(need(&self.lattice, "lattice")?, fixtures::lattice, io::lattice_from_json)?;
        self.same_group(l.group())?;
        Ok(l)
    }

    fn complexes(&self) -> Result<Vec<TwoTermComplex>> {
        if self.complex.is_empty() {
            return Err(Error::Parse("missing --complex".into()));
        }
        let out = self
            .complex
            .iter()
            .map(|c| load(c, fixtures::complex_fixture, io::complex_from_json))
            .collect::<Result<Vec<_>>>()?;
        for t in &out {
            self.same_group(t.group())?;
        }
        Ok(out)
    }

    fn complex(&self) -> Result<TwoTermComplex> {
        let mut all = self.complexes()?;
        if all.len() != 1 {
            return Err(Error::Parse("expected exactly one --complex".into()));
        }
        Ok(all.remove(0))
    }

    fn graph(&self) -> Result<PatchingGraph> {
        let g = load(need(&self.graph, "graph")?, fixtures::graph, io::graph_from_json)?;
        self.same_group(g.gamma())?;
        Ok(g)
    }

    fn crossed(&self) -> Result<FiniteCrossedModule> {
        let c = load(need(&self.crossed, "crossed")?, fixtures::crossed, io::crossed_from_json)?;
        self.same_group(&c.galois)?;
        Ok(c)
    }

    /// An explicit `--group` must agree with the group of every object.
    fn same_group(&self, g: &FiniteGroup) -> Result<()> {
        if self.group.is_some() && *self.group()? != *g {
            return Err(Error::Mismatch("object is not defined over --group".into()));
        }
        Ok(())
    }

    fn degree(&self) -> Result<i32> {
        self.degree.ok_or_else(|| Error::Parse("missing --degree".into()))
    }

    /// `--subgroup` inside `g`, the whole group by default.
    fn subgroup(&self, g: &Arc<FiniteGroup>) -> Result<Subgroup> {
        match &self.subgroup {
            None => Ok(Subgroup::whole(g)),
            Some(s) => {
                let members = s
                    .split(',')
                    .map(str::trim)
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad element id {x:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                Subgroup::from_members(g, &members)
            }
        }
    }

    fn enumeration_limit(&self) -> u128 {
        self.size_limit.unwrap_or(DEFAULT_ENUMERATION_LIMIT)
    }

    /// Rejects cochain spaces `C^{n+1}(H, Z^dim)` larger than `--size-limit`.
    fn check_cochains(&self, h: &Subgroup, dim: usize, n: i32) -> Result<()> {
        let Some(limit) = self.size_limit else { return Ok(()) };
        let k = (h.order().max(2) - 1) as u128;
        let needed = k.saturating_pow((n + 1).max(0) as u32).saturating_mul(dim as u128);
        if needed > limit {
            return Err(Error::SizeLimit {
                what: "cochain dimension",
                needed,
                limit,
            });
        }
        Ok(())
    }

    fn matrix(&self) -> Result<IntMatrix> {
        let m = need(&self.matrix, "matrix")?;
        let v = if m.trim_start().starts_with('[') {
            io::parse(m)?
        } else {
            let v = read_json(m)?;
            v.get("matrix").cloned().unwrap_or(v)
        };
        io::any_matrix_from_json(&v)
    }
}

fn factors_json(f: &[BigInt]) -> Value {
    Value::Array(f.iter().map(io::bigint_to_json).collect())
}

fn factors_text(f: &[BigInt]) -> String {
    let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn group_json(a: &AbGroup) -> Value {
    json!({ "invariant_factors": factors_json(&a.canonical_factors()), "structure": a.to_string() })
}

fn members_text(m: &[usize]) -> String {
    let parts: Vec<String> = m.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix_text(m: &IntMatrix, indent: &str) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("{indent}({}x{} matrix)\n", m.rows(), m.cols());
    }
    m.to_string().lines().map(|l| format!("{indent}{l}\n")).collect()
}

fn lattice_text(name: &str, l: &GLattice) -> String {
    let mut s = format!("{name}: rank {}\n", l.rank());
    for (g, m) in l.group().generators().iter().zip(l.generator_matrices()) {
        let _ = writeln!(s, "  generator {g}:");
        s += &matrix_text(m, "    ");
    }
    s
}

fn complex_text(t: &TwoTermComplex, l1: &str, l2: &str) -> String {
    let mut s = lattice_text(l1, t.l1());
    s += &lattice_text(l2, t.l2());
    s += "differential:\n";
    s += &matrix_text(t.matrix(), "  ");
    s
}

fn cohomology_report(command: &str, label: &str, h: &Subgroup, c: &CohomologyGroup) -> Report {
    let a = c.group();
    let f = a.canonical_factors();
    let text = format!(
        "{label} over subgroup {} (order {})\nstructure: {a}\ninvariant factors: {}\n",
        members_text(h.members()),
        h.order(),
        factors_text(&f)
    );
    let mut json = group_json(&a);
    json["degree"] = json!(c.degree());
    json["subgroup"] = json!(h.members());
    Report::new(command, json, text)
}

fn execute(cli: &Cli) -> Result<Report> {
    let o = &cli.opts;
    match cli.command {
        Command::Cohomology => {
            let l = o.lattice()?;
            let h = o.subgroup(l.group())?;
            let n = o.degree()?;
            o.check_cochains(&h, l.rank(), n)?;
            let c = group_cohomology(&h, &l, n)?;
            Ok(cohomology_report("cohomology", &format!("H^{n}(H, L)"), &h, &c))
        }
        Command::Tate => {
            let l = o.lattice()?;
            let h = o.subgroup(l.group())?;
            let n = o.degree()?;
            let c = tate_cohomology(&h, &l, n)?;
            Ok(cohomology_report("tate", &format!("Ĥ^{n}(H, L)"), &h, &c))
        }
        Command::Hyper => {
            let t = o.complex()?;
            let h = o.subgroup(t.group())?;
            let n = o.degree()?;
            o.check_cochains(&h, t.l1().rank() + t.l2().rank(), n + 1)?;
            let c = hypercohomology(&h, &t, n)?;
            Ok(cohomology_report("hyper", &format!("ℍ^{n}(H, T)"), &h, &c))
        }
        Command::Classify => cmd_classify(o),
        Command::ResolveFlasque => cmd_resolve(o, ClassMode::Flasque),
        Command::ResolveCoflasque => cmd_resolve(o, ClassMode::Coflasque),
        Command::Invariants => cmd_invariants(o),
        Command::CrossedH0 => cmd_crossed_h0(o),
        Command::MvReport => cmd_mv_report(o),
        Command::Sha => cmd_sha(o),
        Command::RemarkCompare => cmd_remark(o),
        Command::Refine => cmd_refine(o),
        Command::Shapiro => cmd_shapiro(o),
        Command::SylowCyclic => {
            let g = o.group()?;
            let (all, sylows) = sylow_all_cyclic(&g);
            let mut text = String::new();
            let mut rows = vec![];
            for (p, s) in &sylows {
                let cyclic = s.members().iter().any(|&x| s.parent().element_order(x) == s.order());
                let _ = writeln!(text, "p = {p}: order {}, cyclic: {cyclic}", s.order());
                rows.push(json!({ "prime": p, "order": s.order(), "members": s.members(), "cyclic": cyclic }));
            }
            let _ = writeln!(text, "all Sylow subgroups cyclic: {all}");
            Ok(Report::new("sylow-cyclic", json!({ "sylow": rows }), text).verdict(all))
        }
        Command::Snf => {
            let a = o.matrix()?;
            let s = smith_normal_form(&a);
            let text = format!(
                "D:\n{}U:\n{}V:\n{}invariant factors: {}\n",
                matrix_text(&s.d, "  "),
                matrix_text(&s.u, "  "),
                matrix_text(&s.v, "  "),
                factors_text(&s.factors())
            );
            let json = json!({
                "d": io::matrix_to_json(&s.d),
                "u": io::matrix_to_json(&s.u),
                "v": io::matrix_to_json(&s.v),
                "invariant_factors": factors_json(&s.factors()),
            });
            Ok(Report::new("snf", json, text))
        }
        Command::Fixtures => {
            let cat = fixtures::catalog();
            let text: String = cat.iter().map(|e| format!("{e}\n")).collect();
            let rows: Vec<Value> = cat
                .iter()
                .map(|e| {
                    json!({
                        "kind": e.kind.name(),
                        "name": e.name,
                        "group": e.group,
                        "summary": e.summary,
                        "description": e.description,
                    })
                })
                .collect();
            Ok(Report::new("fixtures", json!({ "entries": rows }), text))
        }
    }
}

fn cmd_classify(o: &Opts) -> Result<Report> {
    let l = o.lattice()?;
    let modes: Vec<ClassMode> = match o.mode {
        Some(ModeArg::Flasque) => vec![ClassMode::Flasque],
        Some(ModeArg::Coflasque) => vec![ClassMode::Coflasque],
        None => vec![ClassMode::Flasque, ClassMode::Coflasque],
    };
    let mut text = format!("lattice of rank {}\n", l.rank());
    let mut rows = vec![];
    let mut all = true;
    for mode in modes {
        let c = classify(&l, mode)?;
        all &= c.holds;
        let _ = write!(text, "{}: {}", mode.name(), c.holds);
        let mut row = json!({ "mode": mode.name(), "holds": c.holds });
        if let Some((h, g)) = &c.witness {
            let _ = write!(text, " (witness subgroup {}: {})", members_text(h.members()), g);
            row["witness"] = json!({ "subgroup": h.members(), "group": group_json(&g.group()) });
        }
        text.push('\n');
        rows.push(row);
    }
    let perm = l.permutation_certificate().is_some() && l.verify_permutation_certificate();
    let _ = writeln!(text, "permutation certificate: {perm}");
    let mut report = Report::new("classify", json!({ "modes": rows, "permutation": perm }), text);
    if o.mode.is_some() {
        report = report.verdict(all);
    }
    Ok(report)
}

fn certificate_text(c: &ResolutionCertificate) -> String {
    let mut s = format!("certificate ({}): {} moves\n", c.mode.name(), c.moves.len());
    for (i, m) in c.moves.iter().enumerate() {
        let _ = writeln!(
            s,
            "  move {i}: {:?} {:?}{}",
            m.kind,
            m.direction,
            if m.dualized { " (dualized)" } else { "" }
        );
    }
    for v in &c.vanishing {
        let _ = writeln!(s, "  vanishing over {}: {}", members_text(&v.subgroup), factors_text(&v.factors));
    }
    s
}

fn cmd_resolve(o: &Opts, mode: ClassMode) -> Result<Report> {
    let (command, names) = match mode {
        ClassMode::Coflasque => ("resolve-coflasque", ("C", "Q")),
        ClassMode::Flasque => ("resolve-flasque", ("P", "F")),
    };
    let cert = match &o.certificate {
        Some(path) => {
            let c = load(path, |_| Err(Error::Parse("certificates are not in the catalog".into())), io::certificate_from_json)?;
            if c.mode != mode {
                return Err(Error::Mismatch(format!("certificate is for a {} resolution", c.mode.name())));
            }
            c
        }
        None => {
            let t = o.complex()?;
            let r: Resolution = match mode {
                ClassMode::Coflasque => coflasque_resolution(&t)?,
                ClassMode::Flasque => flasque_resolution(&t)?,
            };
            r.certificate
        }
    };
    let mut text = complex_text(&cert.output, names.0, names.1);
    text += &certificate_text(&cert);
    let mut json = json!({
        "resolved": io::complex_to_json(&cert.output),
        "certificate": io::certificate_to_json(&cert),
    });
    let mut verdict = true;
    if o.verify_certificate || o.certificate.is_some() {
        let replay = cert.replay();
        verdict = replay.ok();
        let _ = writeln!(text, "replay: {}", if verdict { "ok" } else { "FAILED" });
        for f in &replay.failures {
            let _ = writeln!(text, "  {f}");
        }
        json["replay"] = json!({ "ok": verdict, "failures": replay.failures });
    }
    Ok(Report::new(command, json, text).verdict(verdict))
}

fn invariant_value(v: &InvariantValue) -> (Value, String) {
    match v {
        InvariantValue::Count(n) => (json!(n), n.to_string()),
        InvariantValue::Factors(f) => (factors_json(f), factors_text(f)),
    }
}

fn cmd_invariants(o: &Opts) -> Result<Report> {
    let ts = o.complexes()?;
    match ts.as_slice() {
        [t] => {
            let r = r_equivalence_invariant(t)?;
            let mut text = lattice_text("flasque lattice F", &r.flasque);
            let _ = writeln!(text, "{:<20} {:<12} {:<12} H^1", "subgroup", "Ĥ^-1", "Ĥ^0");
            let mut rows = vec![];
            for row in &r.rows {
                let _ = writeln!(
                    text,
                    "{:<20} {:<12} {:<12} {}",
                    members_text(&row.subgroup),
                    factors_text(&row.tate_minus1),
                    factors_text(&row.tate_zero),
                    factors_text(&row.h1)
                );
                rows.push(json!({
                    "subgroup": row.subgroup,
                    "tate_minus1": factors_json(&row.tate_minus1),
                    "tate_zero": factors_json(&row.tate_zero),
                    "h1": factors_json(&row.h1),
                }));
            }
            let global = &r.rows[r.rows.len() - 1];
            let _ = writeln!(text, "R-equivalence group H^1(G, F): {}", factors_text(&global.h1));
            let json = json!({ "flasque": io::lattice_to_json(&r.flasque), "rows": rows });
            Ok(Report::new("invariants", json, text))
        }
        [a, b] => {
            let ra = flasque_resolution(a)?.resolved;
            let rb = flasque_resolution(b)?.resolved;
            let report = uniqueness_invariants(&ra, &rb)?;
            let mut text = String::from("comparing F ⊕ P' with F' ⊕ P\n");
            let mut rows = vec![];
            for row in &report.rows {
                let (lj, lt) = invariant_value(&row.left);
                let (rj, rt) = invariant_value(&row.right);
                let _ = writeln!(
                    text,
                    "{:<20} {:<18} {:<12} {:<12} {}",
                    members_text(&row.subgroup),
                    row.invariant,
                    lt,
                    rt,
                    if row.agrees() { "ok" } else { "DIFFERS" }
                );
                rows.push(json!({
                    "subgroup": row.subgroup,
                    "invariant": row.invariant,
                    "left": lj,
                    "right": rj,
                    "agrees": row.agrees(),
                }));
            }
            let all = report.all_agree();
            let _ = writeln!(text, "all invariants agree: {all}");
            Ok(Report::new("invariants", json!({ "rows": rows }), text).verdict(all))
        }
        _ => Err(Error::Parse("invariants takes one or two --complex".into())),
    }
}

fn cmd_crossed_h0(o: &Opts) -> Result<Report> {
    let c = o.crossed()?;
    let sub = o.subgroup(&c.galois)?;
    let h0 = h_zero_with_limit(&c, &sub, o.enumeration_limit())?;
    let hm1 = h_minus_one(&c, &sub)?;
    let mut text = format!(
        "Galois subgroup {}\nH^0 has {} classes ({} cocycles), neutral class {}\n",
        members_text(sub.members()),
        h0.representatives.len(),
        h0.cocycles.len(),
        h0.neutral
    );
    let mut reps = vec![];
    for (i, z) in h0.representatives.iter().enumerate() {
        let _ = writeln!(text, "  class {i}: alpha = {}, h = {}", members_text(&z.alpha), z.h);
        reps.push(json!({ "alpha": z.alpha, "h": z.h }));
    }
    text += "group law:\n";
    for row in &h0.table {
        let _ = writeln!(text, "  {}", members_text(row));
    }
    let _ = writeln!(text, "H^-1 = {} (elements {})", hm1.structure, members_text(&hm1.elements));
    let json = json!({
        "subgroup": sub.members(),
        "order": h0.representatives.len(),
        "cocycles": h0.cocycles.len(),
        "representatives": reps,
        "neutral": h0.neutral,
        "table": h0.table,
        "h_minus_one": { "elements": hm1.elements, "structure": group_json(&hm1.structure) },
    });
    Ok(Report::new("crossed-h0", json, text))
}

fn exactness(e: &Exactness) -> (Value, String) {
    match e {
        Exactness::Exact => (json!("exact"), "exact".into()),
        Exactness::NotExact { homology, witness } => (
            json!({ "homology": group_json(homology), "witness": factors_json(witness) }),
            format!("not exact (homology {homology}, witness {})", factors_text(witness)),
        ),
        Exactness::NotEvaluated(why) => (json!({ "not_evaluated": why }), format!("not evaluated ({why})")),
    }
}

/// Exactly one coefficient flag among `--lattice`, `--complex`, `--crossed`.
enum Coef {
    Lattice(GLattice),
    Complex(TwoTermComplex),
    Crossed(FiniteCrossedModule),
}

fn coefficient(o: &Opts) -> Result<Coef> {
    let given = [o.lattice.is_some(), !o.complex.is_empty(), o.crossed.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Parse("give exactly one of --lattice, --complex, --crossed".into()));
    }
    Ok(if o.lattice.is_some() {
        Coef::Lattice(o.lattice()?)
    } else if o.crossed.is_some() {
        Coef::Crossed(o.crossed()?)
    } else {
        Coef::Complex(o.complex()?)
    })
}

fn cmd_mv_report(o: &Opts) -> Result<Report> {
    let graph = o.graph()?;
    match coefficient(o)? {
        Coef::Lattice(l) => {
            let mut text = String::new();
            let mut rows = vec![];
            let mut all = true;
            for r in 0..=2 {
                let c = mv_columns(&graph, Coefficient::Lattice(&l), r)?;
                let s = sha(&graph, Coefficient::Lattice(&l), r)?.group();
                let zero = c.composition_zero();
                all &= zero;
                let _ = writeln!(
                    text,
                    "H^{r}: global {} -> vertices {} -> edges {}; composition zero: {zero}; Sha^{r} = {s}",
                    c.global,
                    c.vertex_product(),
                    c.edge_product()
                );
                rows.push(json!({
                    "degree": r,
                    "global": group_json(&c.global.group()),
                    "vertices": group_json(c.vertex_product()),
                    "edges": group_json(c.edge_product()),
                    "composition_zero": zero,
                    "sha": group_json(&s),
                }));
            }
            Ok(Report::new("mv-report", json!({ "rows": rows, "all_compositions_zero": all }), text))
        }
        Coef::Complex(t) => {
            let rep = nine_term_report(&graph, &t)?;
            let mut text = String::new();
            let mut rows = vec![];
            for (i, c) in rep.rows.iter().enumerate() {
                let r = c.degree;
                let _ = writeln!(
                    text,
                    "ℍ^{r}: global {} -> vertices {} -> edges {}; Sha = {}; coker = {}",
                    c.global,
                    c.vertex_product(),
                    c.edge_product(),
                    rep.sha[i].group(),
                    rep.cokernels[i]
                );
                rows.push(json!({
                    "degree": r,
                    "global": group_json(&c.global.group()),
                    "vertices": group_json(c.vertex_product()),
                    "edges": group_json(c.edge_product()),
                    "sha": group_json(&rep.sha[i].group()),
                    "cokernel": group_json(&rep.cokernels[i]),
                }));
            }
            let mut junctions = vec![];
            for j in &rep.junctions {
                let (ej, et) = exactness(&j.exactness);
                let comp = match j.composition_zero {
                    Some(b) => b.to_string(),
                    None => "n/a".into(),
                };
                let _ = writeln!(text, "junction ℍ^{} at {}: composition zero {comp}, {et}", j.row, j.position);
                junctions.push(json!({
                    "row": j.row,
                    "position": j.position,
                    "composition_zero": j.composition_zero,
                    "exactness": ej,
                }));
            }
            let mut candidates = vec![];
            for (r, agree) in &rep.connecting_candidates_agree {
                let _ = writeln!(text, "coker at ℍ^{r} ≅ Sha at ℍ^{}: {agree}", r + 1);
                candidates.push(json!({ "row": r, "agree": agree }));
            }
            let json = json!({
                "rows": rows,
                "junctions": junctions,
                "connecting_candidates": candidates,
                "all_compositions_zero": rep.all_compositions_zero(),
            });
            Ok(Report::new("mv-report", json, text))
        }
        Coef::Crossed(c) => {
            let rep = crossed_report(&graph, &c, o.enumeration_limit())?;
            let mut text = String::new();
            let mut rows = vec![];
            let mut all = true;
            for r in &rep.rows {
                all &= r.exact_at_vertices;
                let _ = writeln!(
                    text,
                    "ℍ^{}: global order {}, vertex orders {}, edge orders {}, Sha size {}, exact at vertices: {}",
                    r.degree,
                    r.global_order,
                    members_text(&r.vertex_orders),
                    members_text(&r.edge_orders),
                    r.sha_size,
                    r.exact_at_vertices
                );
                rows.push(json!({
                    "degree": r.degree,
                    "global_order": r.global_order,
                    "vertex_orders": r.vertex_orders,
                    "edge_orders": r.edge_orders,
                    "sha_size": r.sha_size,
                    "exact_at_vertices": r.exact_at_vertices,
                    "witness": r.witness,
                }));
            }
            Ok(Report::new("mv-report", json!({ "rows": rows, "all_exact_at_vertices": all }), text))
        }
    }
}

fn cmd_sha(o: &Opts) -> Result<Report> {
    let graph = o.graph()?;
    let n = o.degree()?;
    let s = match coefficient(o)? {
        Coef::Lattice(l) => sha(&graph, Coefficient::Lattice(&l), n)?,
        Coef::Complex(t) => sha(&graph, Coefficient::Complex(&t), n)?,
        Coef::Crossed(_) => {
            return Err(Error::UnsupportedCoefficients(
                "use mv-report for crossed modules".into(),
            ))
        }
    };
    let a = s.group();
    let text = format!(
        "Sha^{n} = {a}\ninvariant factors: {}\ninside global group {}\n",
        factors_text(&a.canonical_factors()),
        s.global
    );
    let mut json = group_json(&a);
    json["degree"] = json!(n);
    json["global"] = group_json(&s.global.group());
    Ok(Report::new("sha", json, text))
}

fn cmd_remark(o: &Opts) -> Result<Report> {
    let graph = o.graph()?;
    let t = o.complex()?;
    let r = remark_compare(&graph, &t)?;
    let mut text = format!(
        "Sha^1(T) = {}\nSha^2(C) = {}\ncoker(H^0 vertices -> edges) = {}\n",
        r.sha1, r.sha2_resolution, r.cokernel
    );
    let _ = writeln!(
        text,
        "H^1(-, Q) vanishes on the graph: {}\nSha^2(Q) = {}\nhypotheses hold: {}",
        r.permutation_h1_vanishes,
        r.sha2_permutation,
        r.hypotheses_hold()
    );
    let _ = writeln!(
        text,
        "agreement: Sha^1~Sha^2 {}, Sha^1~coker {}, Sha^2~coker {}",
        r.agreement[0], r.agreement[1], r.agreement[2]
    );
    let json = json!({
        "all_agree": r.all_agree(),
        "sha1": group_json(&r.sha1),
        "sha2_resolution": group_json(&r.sha2_resolution),
        "cokernel": group_json(&r.cokernel),
        "permutation_h1_vanishes": r.permutation_h1_vanishes,
        "sha2_permutation": group_json(&r.sha2_permutation),
        "hypotheses_hold": r.hypotheses_hold(),
        "agreement": r.agreement,
        "resolution": io::complex_to_json(&r.resolution),
    });
    Ok(Report::new("remark-compare", json, text))
}

fn cmd_refine(o: &Opts) -> Result<Report> {
    let graph = o.graph()?;
    let h = o.subgroup(graph.gamma())?;
    let sizes = refinement_orbit_sizes(&graph, &h)?;
    let mut text = String::new();
    for (i, s) in sizes.iter().enumerate() {
        let _ = writeln!(text, "vertex {i}: orbit sizes {}", members_text(s));
    }
    let r = refine_graph(&graph, &h)?;
    let _ = writeln!(
        text,
        "refined graph: {} vertices, {} edges",
        r.graph.vertices().len(),
        r.graph.edges().len()
    );
    for (i, (v, (orig, coset))) in r.graph.vertices().iter().zip(&r.vertex_origin).enumerate() {
        let _ = writeln!(text, "  vertex {i} <- ({orig}, coset {coset}): subgroup {}", members_text(v.members()));
    }
    for (i, (e, (orig, coset))) in r.graph.edges().iter().zip(&r.edge_origin).enumerate() {
        let _ = writeln!(
            text,
            "  edge {i} <- ({orig}, coset {coset}): {} -> {}, subgroup {}",
            e.head,
            e.tail,
            members_text(e.subgroup.members())
        );
    }
    let json = json!({
        "graph": io::graph_to_json(&r.graph),
        "vertex_origin": r.vertex_origin,
        "edge_origin": r.edge_origin,
        "orbit_sizes": sizes,
    });
    Ok(Report::new("refine", json, text))
}

fn cmd_shapiro(o: &Opts) -> Result<Report> {
    let g = o.group()?;
    let h = o.subgroup(&g)?;
    let l = load(need(&o.lattice, "lattice")?, fixtures::lattice, io::lattice_from_json)?;
    let n = o.degree()?;
    let v = shapiro_compare(&h, &l, n)?;
    let text = format!(
        "H^{n}(G, Ind L) = {}\nH^{n}(H, L) = {}\nisomorphic: {}\n",
        v.induced, v.restricted, v.isomorphic
    );
    let json = json!({
        "degree": n,
        "subgroup": h.members(),
        "induced": group_json(&v.induced),
        "restricted": group_json(&v.restricted),
        "isomorphic": v.isomorphic,
    });
    Ok(Report::new("shapiro", json, text).verdict(v.isomorphic))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_accepts_negative_values() {
        let out = run(["galcoh", "tate", "--lattice", "fixtures:sign", "--degree", "-1"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("invariant factors: [2]"));
    }

    #[test]
    fn subgroup_parsing() {
        let g = fixtures::group("S3").unwrap();
        let o = Opts {
            subgroup: Some("0, 1".into()),
            ..Opts::default()
        };
        assert_eq!(o.subgroup(&g).unwrap().order(), 2);
        let bad = Opts {
            subgroup: Some("0,x".into()),
            ..Opts::default()
        };
        assert!(bad.subgroup(&g).is_err());
    }
}
