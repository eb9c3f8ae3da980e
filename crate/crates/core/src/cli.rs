//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 a verification or consistency check failed
//! (the failing certificate is still emitted), 2 malformed input.
//! JSON output is deterministic: struct fields and map keys are emitted in
//! a fixed order and rationals in canonical `p/q` form.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::beta::{
    beta_from_profile, beta_linear_subspace_result, ci_truncated_profile, integral_identity_check,
    lct_lower_bound, truncated_integral, VolumeProfile,
};
use crate::catalog::{builtin_records, load_dir, load_file, lookup, validate, GeometryRecord};
use crate::ci_model::{
    center_codimension, intersection_table, volume_polynomial_bin, volume_polynomial_bypar,
    volume_polynomial_from_table, CIModel,
};
use crate::error::{Error, Result};
use crate::exact_math::Rational;
use crate::monomial::{
    dfem_check, lct_via_facets, lct_via_lp, length_quotient, multiplicity_by_covolume,
    multiplicity_by_limit, newton_polyhedron, random_m_primary_ideal, MonomialIdeal,
};
use crate::stability::{
    alpha12_criterion, alpha_monotonicity_check, fujita_volume_test, lower_bound_consistency,
    top_codimension_bound_check, top_codimension_test, CriterionVerdict,
};

/// Upper limit for sweep bounds such as `--n-max`.
pub const SWEEP_CAP: u32 = 16;

#[derive(Debug, Parser)]
#[command(name = "codim-alpha", version)]
#[command(about = "Exact checks for higher-codimensional alpha invariants of Fano varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub output: OutputFormat,

    /// Also print 12-digit decimal approximations (table output only).
    #[arg(long, global = true)]
    pub decimal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the volume polynomial and integral identities for all 1 <= k <= n <= n-max.
    VerifyIdentities {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Lower bound for α^(k) on a K-semistable Q-Fano of dimension n.
    AlphaBound(ModelArgs),
    /// β of a blown-up complete intersection, or of a profile from --input.
    BetaCi {
        #[command(flatten)]
        model: ModelArgs,
        /// CIModel or VolumeProfile JSON.
        #[arg(long)]
        input: Option<PathBuf>,
        /// lct(X, Z) used for β.
        #[arg(long)]
        lct: Option<Rational>,
        /// Reject non-integral r.
        #[arg(long)]
        integer_r: bool,
    },
    /// β of a codimension-k linear subspace of P^n.
    BetaLinear {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Log canonical threshold of a monomial ideal.
    LctMonomial {
        #[arg(long)]
        input: PathBuf,
    },
    /// Hilbert–Samuel multiplicity and colength of an m-primary monomial ideal.
    MultMonomial {
        #[arg(long)]
        input: PathBuf,
    },
    /// lct^d · e >= d^d over random m-primary monomial ideals.
    DfemSweep {
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 6)]
        max_exp: u32,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every applicable stability criterion on a GeometryRecord.
    StabilityCheck {
        #[arg(long)]
        input: PathBuf,
    },
    /// Show builtin catalog records.
    CatalogShow {
        #[arg(long)]
        name: Option<String>,
    },
    /// Validate builtin records, or records from a file or directory.
    CatalogValidate {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// L = -rK_X.
    #[arg(long)]
    pub r: Option<Rational>,
    /// L^n.
    #[arg(long)]
    pub degree: Option<Rational>,
}

impl ModelArgs {
    fn model(&self) -> Result<CIModel> {
        let n = self.n.ok_or_else(|| Error::Parse("missing --n".into()))?;
        let k = self.k.ok_or_else(|| Error::Parse("missing --k".into()))?;
        CIModel::new(
            n,
            k,
            self.r.clone().unwrap_or_else(Rational::one),
            self.degree.clone().unwrap_or_else(Rational::one),
        )
    }
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// A finished command: exit status plus the table and JSON renderings.
struct Report {
    ok: bool,
    table: String,
    json: Value,
}

impl Report {
    fn new(ok: bool, table: String, json: Value) -> Self {
        Report { ok, table, json }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(report) => {
            let stdout = match cli.output {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("json value");
                    s.push('\n');
                    s
                }
                OutputFormat::Table => report.table,
            };
            Outcome {
                code: if report.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::RouteMismatch(_) | Error::Lp(_) => 1,
        _ => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let fmt = Fmt {
        decimal: cli.decimal,
    };
    match &cli.command {
        Command::VerifyIdentities { n_max } => verify_identities(*n_max, fmt),
        Command::AlphaBound(args) => alpha_bound(args, fmt),
        Command::BetaCi {
            model,
            input,
            lct,
            integer_r,
        } => beta_ci(model, input.as_deref(), lct.as_ref(), *integer_r, fmt),
        Command::BetaLinear { n, k } => beta_linear(*n, *k, fmt),
        Command::LctMonomial { input } => lct_cmd(input, fmt),
        Command::MultMonomial { input } => mult_cmd(input),
        Command::DfemSweep {
            vars,
            max_exp,
            count,
            seed,
        } => dfem_sweep(*vars, *max_exp, *count, *seed, fmt),
        Command::StabilityCheck { input } => stability_check(input, fmt),
        Command::CatalogShow { name } => catalog_show(name.as_deref()),
        Command::CatalogValidate { input } => catalog_validate(input.as_deref(), fmt),
    }
}

#[derive(Clone, Copy)]
struct Fmt {
    decimal: bool,
}

impl Fmt {
    fn q(self, v: &Rational) -> String {
        if self.decimal && !v.is_integer() {
            format!("{v} (≈ {}, approximate)", v.to_decimal_string())
        } else {
            v.to_string()
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

#[derive(Serialize)]
struct IdentityRow {
    n: u32,
    k: u32,
    bypar_equals_bin: bool,
    table_equals_bin: bool,
    integral: Rational,
    integral_expected: Rational,
    integral_ok: bool,
    lct_lower_bound: Rational,
    lct_lower_bound_ok: bool,
    center_codimension: usize,
    center_codimension_ok: bool,
}

impl IdentityRow {
    fn ok(&self) -> bool {
        self.bypar_equals_bin
            && self.table_equals_bin
            && self.integral_ok
            && self.lct_lower_bound_ok
            && self.center_codimension_ok
    }
}

fn check_sweep_bound(name: &str, v: u32) -> Result<()> {
    if v == 0 || v > SWEEP_CAP {
        return Err(Error::Parse(format!(
            "{name} = {v} outside 1..={SWEEP_CAP}"
        )));
    }
    Ok(())
}

fn verify_identities(n_max: u32, fmt: Fmt) -> Result<Report> {
    check_sweep_bound("--n-max", n_max)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for k in 1..=n {
            let m = CIModel::unit(n, k)?;
            let bin = volume_polynomial_bin(&m);
            let table = volume_polynomial_from_table(&intersection_table(&m), &m.degree);
            let integral = integral_identity_check(n, k)?;
            let expected = Rational::one() - Rational::new(k as i64, n as i64 + 1);
            let bound = lct_lower_bound(&m);
            let center = center_codimension(&bin)?;
            rows.push(IdentityRow {
                n,
                k,
                bypar_equals_bin: volume_polynomial_bypar(&m) == bin,
                table_equals_bin: table == bin,
                integral_ok: integral == expected,
                integral,
                integral_expected: expected,
                lct_lower_bound_ok: bound == Rational::new(k as i64, n as i64 + 1),
                lct_lower_bound: bound,
                center_codimension_ok: center == k as usize,
                center_codimension: center,
            });
        }
    }
    let ok = rows.iter().all(IdentityRow::ok);
    let mut table = format!(
        "{:<3} {:<3} {:<12} {:<24} {:<10} {}\n",
        "n", "k", "polynomial", "∫ = 1 − k/(n+1)", "lct bound", "center"
    );
    for r in &rows {
        let poly = format!(
            "bypar=bin {}",
            mark(r.bypar_equals_bin && r.table_equals_bin)
        );
        let integral = format!("∫ = {} {}", fmt.q(&r.integral), mark(r.integral_ok));
        let bound = format!("{} {}", r.lct_lower_bound, mark(r.lct_lower_bound_ok));
        let center = format!("{} {}", r.center_codimension, mark(r.center_codimension_ok));
        let _ = writeln!(
            table,
            "{:<3} {:<3} {poly:<12} {integral:<24} {bound:<10} {center}",
            r.n, r.k
        );
    }
    let _ = writeln!(
        table,
        "{} pairs checked: {}",
        rows.len(),
        if ok {
            "all identities hold"
        } else {
            "FAILURES"
        }
    );
    let json = json!({
        "command": "verify-identities",
        "n_max": n_max,
        "all_ok": ok,
        "rows": to_json(&rows),
    });
    Ok(Report::new(ok, table, json))
}

fn alpha_bound(args: &ModelArgs, fmt: Fmt) -> Result<Report> {
    let m = args.model()?;
    let integral = truncated_integral(&m);
    let bound = lct_lower_bound(&m);
    let table = format!("{}\n", fmt.q(&bound));
    let json = json!({
        "command": "alpha-bound",
        "model": to_json(&m),
        "truncated_integral": to_json(&integral),
        "alpha_lower_bound": to_json(&bound),
    });
    Ok(Report::new(true, table, json))
}

fn beta_ci(
    args: &ModelArgs,
    input: Option<&Path>,
    lct: Option<&Rational>,
    integer_r: bool,
    fmt: Fmt,
) -> Result<Report> {
    let (model, profile) = match input {
        Some(path) => {
            let value: Value = read_json(path)?;
            if value.get("pieces").is_some() {
                let profile: VolumeProfile = serde_json::from_value(value)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                (None, profile)
            } else {
                let m: CIModel = serde_json::from_value(value)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let p = ci_truncated_profile(&m)?;
                (Some(m), p)
            }
        }
        None => {
            let m = args.model()?;
            let p = ci_truncated_profile(&m)?;
            (Some(m), p)
        }
    };
    if integer_r {
        if let Some(m) = &model {
            m.require_integer_r()?;
        }
    }
    let mut table = String::new();
    let mut json = json!({ "command": "beta-ci" });
    if let Some(m) = &model {
        json["model"] = to_json(m);
        let _ = writeln!(
            table,
            "model: n={} k={} r={} degree={}",
            m.n, m.k, m.r, m.degree
        );
    }
    json["profile"] = to_json(&profile);
    let vol = profile.volume_at_zero();
    let integral = profile.integral();
    let induced = &integral / &vol;
    let integral_label = if profile.is_exact() {
        "integral"
    } else {
        "integral (truncated)"
    };
    let _ = writeln!(table, "{:<22} = {}", "vol(-K_X)", fmt.q(&vol));
    let _ = writeln!(table, "{:<22} = {}", integral_label, fmt.q(&integral));
    let _ = writeln!(table, "{:<22} = {}", "induced lct bound", fmt.q(&induced));
    json["volume"] = to_json(&vol);
    json["integral"] = to_json(&integral);
    json["truncated"] = json!(!profile.is_exact());
    json["induced_lct_lower_bound"] = to_json(&induced);
    let mut ok = true;
    if let Some(lct) = lct {
        let b = beta_from_profile(&profile, lct)?;
        let label = if b.truncated {
            "beta (upper bound)"
        } else {
            "beta"
        };
        let _ = writeln!(table, "{:<22} = {}", label, fmt.q(&b.value));
        // a negative value is a certificate of instability, not a tool failure
        ok = !b.value.is_negative();
        json["beta"] = to_json(&b);
    }
    Ok(Report::new(ok, table, json))
}

fn beta_linear(n: u32, k: u32, fmt: Fmt) -> Result<Report> {
    let b = beta_linear_subspace_result(n, k)?;
    let ok = b.value.is_zero();
    let table = format!(
        "beta(P^{n}, codim {k} linear subspace) = {} ({}) {}\n",
        fmt.q(&b.value),
        format_args!(
            "lct {} · vol {} − ∫ {}",
            b.lct_used, b.volume_used, b.integral
        ),
        mark(ok)
    );
    let json = json!({ "command": "beta-linear", "n": n, "k": k, "beta": to_json(&b) });
    Ok(Report::new(ok, table, json))
}

fn lct_cmd(input: &Path, fmt: Fmt) -> Result<Report> {
    let ideal: MonomialIdeal = read_json(input)?;
    let lp = lct_via_lp(&ideal)?;
    let facets = lct_via_facets(&ideal)?;
    let poly = newton_polyhedron(&ideal)?;
    let ok = lp == facets;
    let mut table = format!("{}\n", fmt.q(&lp));
    if !ok {
        let _ = writeln!(table, "route mismatch: LP {lp}, facets {facets}");
    }
    let json = json!({
        "command": "lct-monomial",
        "ideal": to_json(&ideal),
        "lct": to_json(&lp),
        "lct_lp": to_json(&lp),
        "lct_facets": to_json(&facets),
        "routes_agree": ok,
        "newton_polyhedron": to_json(&poly),
    });
    Ok(Report::new(ok, table, json))
}

fn mult_cmd(input: &Path) -> Result<Report> {
    let ideal: MonomialIdeal = read_json(input)?;
    let cov = multiplicity_by_covolume(&ideal)?;
    let lim = multiplicity_by_limit(&ideal)?;
    let len = length_quotient(&ideal)?;
    let ok = cov == lim;
    let mut table = format!("multiplicity {cov}\nlength {len}\n");
    if !ok {
        let _ = writeln!(table, "route mismatch: covolume {cov}, limit {lim}");
    }
    let json = json!({
        "command": "mult-monomial",
        "ideal": to_json(&ideal),
        "multiplicity": cov,
        "multiplicity_covolume": cov,
        "multiplicity_limit": lim,
        "routes_agree": ok,
        "length": len,
    });
    Ok(Report::new(ok, table, json))
}

fn dfem_sweep(vars: usize, max_exp: u32, count: usize, seed: u64, fmt: Fmt) -> Result<Report> {
    check_sweep_bound("--vars", vars as u32)?;
    check_sweep_bound("--max-exp", max_exp)?;
    if vars > 4 {
        return Err(Error::Parse(format!("--vars = {vars} exceeds 4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ideals: Vec<MonomialIdeal> = (1..=vars)
        .map(|d| MonomialIdeal::coordinate(d, d))
        .collect::<Result<_>>()?;
    for _ in 0..count {
        ideals.push(random_m_primary_ideal(&mut rng, vars, max_exp, 4));
    }
    let mut violations = Vec::new();
    let mut equalities = 0usize;
    let mut min_ratio: Option<Rational> = None;
    for ideal in &ideals {
        let w = dfem_check(ideal)?;
        if w.equality {
            equalities += 1;
        }
        let ratio = &w.lhs / &w.rhs;
        if min_ratio.as_ref().is_none_or(|m| ratio < *m) {
            min_ratio = Some(ratio);
        }
        if !w.holds {
            violations.push(json!({ "ideal": to_json(ideal), "witness": to_json(&w) }));
        }
    }
    let ok = violations.is_empty();
    let min_ratio = min_ratio.expect("at least one ideal");
    let table = format!(
        "checked {} ideals (vars <= {vars}, exponents <= {max_exp}, seed {seed})\n\
         equalities {equalities}\nmin lct^d·e / d^d = {}\nviolations {} {}\n",
        ideals.len(),
        fmt.q(&min_ratio),
        violations.len(),
        mark(ok),
    );
    let json = json!({
        "command": "dfem-sweep",
        "vars": vars,
        "max_exp": max_exp,
        "count": count,
        "seed": seed,
        "checked": ideals.len(),
        "equalities": equalities,
        "min_ratio": to_json(&min_ratio),
        "violations": violations,
    });
    Ok(Report::new(ok, table, json))
}

fn render_verdicts(verdicts: &[CriterionVerdict], fmt: Fmt) -> String {
    let mut out = String::new();
    for v in verdicts {
        let _ = writeln!(out, "{:<34} {}", v.criterion, v.verdict);
        for a in &v.assumptions {
            let _ = writeln!(out, "    assumes: {a}");
        }
        for t in &v.trace {
            let _ = writeln!(
                out,
                "    {}: {} {} {}",
                t.label,
                fmt.q(&t.lhs),
                t.rel,
                fmt.q(&t.rhs)
            );
        }
        for note in &v.notes {
            let _ = writeln!(out, "    note: {note}");
        }
    }
    out
}

/// Every criterion whose inputs the record carries.
pub fn applicable_criteria(r: &GeometryRecord) -> Result<Vec<CriterionVerdict>> {
    r.check_structure()?;
    let kss = r.k_semistable == Some(true);
    let mut out = vec![alpha_monotonicity_check(&r.alpha_bounds)];
    if kss {
        out.push(fujita_volume_test(r.n, &r.vol, r.smooth)?);
        out.push(lower_bound_consistency(r));
    }
    if let Some(top) = r.alpha_bounds.get(&r.n) {
        if r.smooth {
            out.push(top_codimension_bound_check(r.n, &r.vol, &top.upper)?);
        }
        // α^(n) <= upper, so a small upper bound is enough
        out.push(top_codimension_test(r.n, &top.upper, r.smooth, kss)?);
    }
    if r.n >= 2 && r.picard_rank_one == Some(true) {
        if let (Some(a1), Some(a2)) = (r.alpha_bounds.get(&1), r.alpha_bounds.get(&2)) {
            // the criterion is monotone in both arguments, so lower bounds suffice
            out.push(alpha12_criterion(r.n, &a1.lower, &a2.lower)?);
        }
    }
    Ok(out)
}

fn stability_check(input: &Path, fmt: Fmt) -> Result<Report> {
    let record: GeometryRecord = read_json(input)?;
    let verdicts = applicable_criteria(&record)?;
    let ok = !verdicts.iter().any(|v| v.verdict.is_failure());
    let mut table = format!("{} (n = {}, vol = {})\n", record.name, record.n, record.vol);
    table.push_str(&render_verdicts(&verdicts, fmt));
    let json = json!({
        "command": "stability-check",
        "record": record.name,
        "ok": ok,
        "verdicts": to_json(&verdicts),
    });
    Ok(Report::new(ok, table, json))
}

fn catalog_show(name: Option<&str>) -> Result<Report> {
    let records = match name {
        Some(name) => vec![lookup(name)?],
        None => builtin_records(),
    };
    let mut table = String::from("name    n  vol       smooth  K-ss   alpha bounds\n");
    for r in &records {
        let bounds: Vec<String> = r
            .alpha_bounds
            .iter()
            .map(|(k, b)| {
                if b.exact {
                    format!("{k}: {}", b.lower)
                } else {
                    let open = if b.lower_strict { "(" } else { "[" };
                    format!("{k}: {open}{}, {}]", b.lower, b.upper)
                }
            })
            .collect();
        let kss = match r.k_semistable {
            Some(true) => "yes",
            Some(false) => "no",
            None => "?",
        };
        let _ = writeln!(
            table,
            "{:<7} {:<2} {:<9} {:<7} {:<6} {}",
            r.name,
            r.n,
            r.vol.to_string(),
            r.smooth,
            kss,
            bounds.join("; ")
        );
    }
    let json = json!({ "command": "catalog-show", "records": to_json(&records) });
    Ok(Report::new(true, table, json))
}

fn catalog_validate(input: Option<&Path>, fmt: Fmt) -> Result<Report> {
    let records = match input {
        None => builtin_records(),
        Some(p) if p.is_dir() => load_dir(p).map_err(as_parse)?,
        Some(p) => vec![load_file(p).map_err(as_parse)?],
    };
    let mut results = Vec::new();
    let mut table = String::new();
    let mut ok = true;
    for r in &records {
        let v = validate(r)?;
        ok &= !v.verdict.is_failure();
        let _ = writeln!(table, "{:<8} {}", r.name, v.verdict);
        if v.verdict.is_failure() {
            table.push_str(&render_verdicts(std::slice::from_ref(&v), fmt));
        }
        results.push(json!({ "name": r.name, "result": to_json(&v) }));
    }
    let json = json!({ "command": "catalog-validate", "ok": ok, "records": results });
    Ok(Report::new(ok, table, json))
}

fn as_parse(e: Error) -> Error {
    match e {
        Error::Io(e) => Error::Parse(e.to_string()),
        Error::Json(e) => Error::Parse(e.to_string()),
        other => other,
    }
}
