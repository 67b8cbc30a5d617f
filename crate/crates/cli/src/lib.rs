//! Command-line front end: parses forms, dispatches to the engine and renders
//! reports as sorted JSON or as indented text.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use foliage::deform::{family_decompose, DeformError, FormFamily};
use foliage::divide::{
    containing_foliation_search, derham_vector_solve, integrating_factor_search, saito_solve,
    DivideError,
};
use foliage::expr::{format_field, parse_field, parse_form, parse_poly, parse_rational, ExprError};
use foliage::fixtures;
use foliage::foliate::{
    complete_intersection, is_decomposable2, is_integrable2_c4, is_integrable2_cleared,
    log_factors, mero_decompose, rotational4, FoliateError,
};
use foliage::forms::{df, fmt_coeff, radial, PForm, VField};
use foliage::homog::{
    case_a_log_data, case_b_normal_data, classify, double_contraction, HomogError, Witness,
};
use foliage::linalg;
use foliage::ratpoly::{rat, ratio, Homogeneity, Poly, Rational};
use foliage::singloc::{
    codim1_certificate, line_in_sing_check, projective_point_scan, quadric_map, sing_line_search,
    sing_lines, singular_ideal, CertificateWitness, SearchBudget, SingCertificate, SingError,
    DEFAULT_HEIGHT,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ExprError),
    #[error("{0}")]
    Foliate(#[from] FoliateError),
    #[error("{0}")]
    Homog(#[from] HomogError),
    #[error("{0}")]
    Sing(#[from] SingError),
    #[error("{0}")]
    Divide(#[from] DivideError),
    #[error("{0}")]
    Deform(#[from] DeformError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("{0}")]
    Usage(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "foliage",
    version,
    about = "Exact computations with polynomial differential forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Opts {
    /// Number of variables.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub n: u8,
    /// Form in the expression grammar, or `@path` to a `.frm` file; repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub form: Vec<String>,
    /// Built-in fixture used as the input form.
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    /// Height of rational point and direction scans.
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT)]
    pub height: u64,
    /// Coefficient degree bound for division problems.
    #[arg(long, global = true, default_value_t = 2)]
    pub dmax: u32,
    /// Truncation order of a family.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Print the report as JSON with sorted keys.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Top eigenvalue for the nilpotent model.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rho: Option<String>,
    /// Bracket constant for the nilpotent model.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// 1-form factor; pairs with `--beta`, repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    /// 1-form factor; pairs with `--alpha`, repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Vec<String>,
    /// Polynomial `P` in the claim `P eta = sum alpha ^ beta`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub denominator: Option<String>,
    /// 1-form claimed to satisfy `d omega = eta`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub primitive: Option<String>,
    /// Vector field `(f1, ..., f4)` claimed to satisfy `d eta = i_X nu`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rot: Option<String>,
    /// First vector field of `eta = i_Y i_X nu`.
    #[arg(long = "field-x", global = true, allow_hyphen_values = true)]
    pub field_x: Option<String>,
    /// Second vector field of `eta = i_Y i_X nu`.
    #[arg(long = "field-y", global = true, allow_hyphen_values = true)]
    pub field_y: Option<String>,
    /// Function claimed to satisfy `dF ^ eta = 0`; repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub integral: Vec<String>,
    /// Direction `(v1, ..., vn)` claimed to span a line in `Sing(eta)`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub line: Option<String>,
    /// Polynomial claimed to divide every coefficient of `eta`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub factor: Option<String>,
    /// 1-form claimed to satisfy `omega ^ eta = 0`; repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub cofactor: Vec<String>,
    /// Polynomial claimed to satisfy `P d omega = dP ^ omega`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub intfactor: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DivideMode {
    Saito,
    Derham,
    Cofoliation,
    Intfactor,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposability, integrability and dicriticity, plus any supplied witnesses.
    Check,
    /// Meromorphic decomposition `P eta = alpha ^ beta`.
    Decompose,
    /// The vector field `X` with `d eta = i_X nu` on four variables.
    Rotational,
    /// Wedge product of integrable 1-forms divided by its content.
    Intersect,
    /// Normal form of a homogeneous integrable 2-form of degree at most two.
    Classify,
    /// Codimension-one content and a certified line in the singular set.
    SingProbe,
    /// Order-by-order decomposition of a truncated family of 2-forms.
    SeriesDecompose,
    /// Division problems solved as exact linear systems.
    Divide {
        #[arg(value_enum)]
        mode: DivideMode,
    },
    /// Built-in example forms and their verified properties.
    Fixtures { name: Option<String> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Decompose => "decompose",
            Command::Rotational => "rotational",
            Command::Intersect => "intersect",
            Command::Classify => "classify",
            Command::SingProbe => "sing-probe",
            Command::SeriesDecompose => "series-decompose",
            Command::Divide { .. } => "divide",
            Command::Fixtures { .. } => "fixtures",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    NoneFound,
    Rejected,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::NoneFound => "none-found",
            Status::Rejected => "rejected",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::NoneFound => 2,
            Status::Rejected => 1,
        }
    }
}

/// Structured outcome of one invocation.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input: Map<String, Value>,
    pub verdicts: Map<String, Value>,
    pub witnesses: Map<String, Value>,
    pub certificates: Vec<Value>,
    pub recheck: Option<Vec<String>>,
    pub status: Status,
    pub timing_ms: Option<u128>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            input: Map::new(),
            verdicts: Map::new(),
            witnesses: Map::new(),
            certificates: Vec::new(),
            recheck: None,
            status: Status::Verified,
            timing_ms: None,
        }
    }

    fn verdict(&mut self, key: &str, v: impl Into<Value>) {
        self.verdicts.insert(key.to_string(), v.into());
    }

    fn witness(&mut self, key: &str, v: impl Into<Value>) {
        self.witnesses.insert(key.to_string(), v.into());
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("input".into(), Value::Object(self.input.clone()));
        m.insert("verdicts".into(), Value::Object(self.verdicts.clone()));
        m.insert("witnesses".into(), Value::Object(self.witnesses.clone()));
        m.insert(
            "certificates".into(),
            Value::Array(self.certificates.clone()),
        );
        m.insert("status".into(), json!(self.status.name()));
        if let Some(r) = &self.recheck {
            m.insert("recheck".into(), json!(r));
        }
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), json!(t));
        }
        Value::Object(m)
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
            s.push('\n');
            s
        } else {
            let mut out = String::new();
            if let Value::Object(m) = self.to_json() {
                for (k, v) in &m {
                    render_text(&mut out, k, v, 0);
                }
            }
            out
        }
    }
}

fn render_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if m.is_empty() => {}
        Value::Array(a) if a.is_empty() => {}
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in m {
                render_text(out, k, v, depth + 1);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(scalar_text).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", parts.join("; ")));
        }
        Value::Array(a) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in a.iter().enumerate() {
                render_text(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn rat_str(r: &Rational) -> String {
    fmt_coeff(r)
}

fn vector_str(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rat_str).collect();
    format!("({})", parts.join(", "))
}

fn parse_vector(text: &str, n: usize) -> Result<Vec<Rational>, CliError> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let v = inner
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(usage(format!("expected {n} entries in '{text}'")));
    }
    Ok(v)
}

fn witness_value(w: &Witness) -> Value {
    match w {
        Witness::Poly(p) => json!(p.to_string()),
        Witness::Polys(ps) => json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        Witness::Form(f) => json!(f.to_string()),
        Witness::Map(m) => json!(m
            .components()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()),
        Witness::Scalar(r) => json!(rat_str(r)),
        Witness::Scalars(rs) => json!(rs.iter().map(rat_str).collect::<Vec<_>>()),
        Witness::Matrix(m) => json!(m
            .iter()
            .map(|row| row.iter().map(rat_str).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
        Witness::Field(v) => json!(format_field(v)),
        Witness::Tag(s) => json!(s),
    }
}

fn certificate_value(c: &SingCertificate, eta: &PForm) -> Value {
    let witness = match &c.witness {
        CertificateWitness::Direction(v) | CertificateWitness::Point(v) => json!(vector_str(v)),
        CertificateWitness::Factor(h) => json!(h.to_string()),
        CertificateWitness::None => Value::Null,
    };
    json!({
        "kind": c.kind.name(),
        "witness": witness,
        "bounds": {
            "height": c.scan_parameters.height,
            "stages": c.scan_parameters.stages,
            "grid_points": c.scan_parameters.grid_points.to_string(),
        },
        "notes": c.notes,
        "verified": c.verify(eta),
    })
}

/// Loads `@path` contents or returns the inline text.
fn source_text(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        }),
        None => Ok(arg.to_string()),
    }
}

struct Ctx<'a> {
    opts: &'a Opts,
    n: usize,
}

impl Ctx<'_> {
    fn form(&self, arg: &str) -> Result<PForm, CliError> {
        Ok(parse_form(&source_text(arg)?, self.n)?)
    }

    fn poly(&self, arg: &str) -> Result<Poly, CliError> {
        Ok(parse_poly(&source_text(arg)?, self.n)?)
    }

    fn field(&self, arg: &str) -> Result<VField, CliError> {
        Ok(parse_field(&source_text(arg)?, self.n)?)
    }

    fn rho_lambda(&self) -> Result<(Rational, Rational), CliError> {
        let rho = self.opts.rho.as_deref().map(parse_rational).transpose()?;
        let lambda = self
            .opts
            .lambda
            .as_deref()
            .map(parse_rational)
            .transpose()?;
        Ok((rho.unwrap_or(ratio(3, 2)), lambda.unwrap_or(rat(1))))
    }

    fn fixture(&self, name: &str) -> Result<PForm, CliError> {
        if name == "case-b" {
            let (rho, lambda) = self.rho_lambda()?;
            return Ok(case_b_normal_data(&rho, &lambda)?.eta);
        }
        fixtures::by_name(name).ok_or_else(|| CliError::UnknownFixture(name.to_string()))
    }

    /// All input forms: the fixture first, then each `--form`.
    fn inputs(&self) -> Result<Vec<PForm>, CliError> {
        let mut out = Vec::new();
        if let Some(name) = &self.opts.fixture {
            out.push(self.fixture(name)?);
        }
        for f in &self.opts.form {
            out.push(self.form(f)?);
        }
        Ok(out)
    }

    fn single(&self) -> Result<PForm, CliError> {
        let mut v = self.inputs()?;
        match v.len() {
            1 => Ok(v.remove(0)),
            0 => Err(usage("no input form; pass --form or --fixture")),
            _ => Err(usage("expected exactly one input form")),
        }
    }

    fn echo(&self, r: &mut Report, eta: &PForm) {
        r.input.insert("n".into(), json!(eta.nvars()));
        r.input.insert("form".into(), json!(eta.to_string()));
        if let Some(f) = &self.opts.fixture {
            r.input.insert("fixture".into(), json!(f));
        }
    }
}

fn expect_two_form(eta: &PForm) -> Result<(), CliError> {
    if eta.degree() == 2 {
        Ok(())
    } else {
        Err(usage(format!(
            "expected a 2-form, got a {}-form",
            eta.degree()
        )))
    }
}

fn homogeneous_degree_value(eta: &PForm) -> Value {
    match eta.coeff_homogeneity() {
        Homogeneity::Degree(d) => json!(d),
        _ => Value::Null,
    }
}

/// Exact properties reported by `check` and `fixtures`.
fn basic_verdicts(r: &mut Report, eta: &PForm) -> Result<(), CliError> {
    let n = eta.nvars();
    r.verdict("degree", eta.degree());
    r.verdict("homogeneous_degree", homogeneous_degree_value(eta));
    r.verdict("closed", eta.degree() >= n || eta.d().is_zero());
    let radial_free = eta.degree() > 0 && eta.interior(&radial(n).expect("valid arity")).is_zero();
    match eta.degree() {
        1 => {
            r.verdict("integrable", eta.wedge(&eta.d()).is_zero());
            r.verdict("dicritical", radial_free);
        }
        2 => {
            let decomposable = is_decomposable2(eta);
            r.verdict("decomposable", decomposable);
            let integrable = if n == 4 {
                is_integrable2_c4(eta)?
            } else {
                is_integrable2_cleared(eta)?
            };
            r.verdict("integrable", integrable);
            r.verdict("dicritical", radial_free);
        }
        _ => {}
    }
    Ok(())
}

fn cmd_check(ctx: &Ctx, r: &mut Report) -> Result<(), CliError> {
    let eta = ctx.single()?;
    ctx.echo(r, &eta);
    basic_verdicts(r, &eta)?;
    let o = ctx.opts;
    let n = eta.nvars();
    let mut checks: Vec<(&str, bool)> = Vec::new();
    if !o.alpha.is_empty() || !o.beta.is_empty() {
        if o.alpha.len() != o.beta.len() {
            return Err(usage("--alpha and --beta must come in pairs"));
        }
        let mut sum = PForm::zero(n, 2);
        for (a, b) in o.alpha.iter().zip(&o.beta) {
            sum = sum.add(&ctx.form(a)?.wedge(&ctx.form(b)?));
        }
        let p = match &o.denominator {
            Some(d) => ctx.poly(d)?,
            None => Poly::one(n),
        };
        checks.push((
            "factors",
            eta.degree() == 2 && !p.is_zero() && eta.mul_poly(&p) == sum,
        ));
    }
    if let Some(w) = &o.primitive {
        let w = ctx.form(w)?;
        checks.push(("primitive", w.degree() + 1 == eta.degree() && w.d() == eta));
    }
    if let Some(x) = &o.rot {
        let x = ctx.field(x)?;
        let ok = n == 4 && eta.degree() == 2 && eta.d() == PForm::volume(n).interior(&x);
        checks.push(("rotational", ok));
    }
    if o.field_x.is_some() || o.field_y.is_some() {
        let (Some(x), Some(y)) = (&o.field_x, &o.field_y) else {
            return Err(usage("--field-x and --field-y must be given together"));
        };
        let ok = n == 4 && double_contraction(&ctx.field(x)?, &ctx.field(y)?) == eta;
        checks.push(("contraction", ok));
    }
    if !o.integral.is_empty() {
        let mut ok = true;
        for f in &o.integral {
            let f = ctx.poly(f)?;
            ok &= !f.is_constant() && (eta.degree() + 1 > n || df(&f).wedge(&eta).is_zero());
        }
        checks.push(("integral", ok));
    }
    if let Some(v) = &o.line {
        checks.push(("line", line_in_sing_check(&eta, &parse_vector(v, n)?)?));
    }
    if let Some(h) = &o.factor {
        let h = ctx.poly(h)?;
        let ok = !h.is_constant()
            && singular_ideal(&eta)
                .iter()
                .all(|c| c.div_exact(&h).is_some());
        checks.push(("factor", ok));
    }
    if !o.cofactor.is_empty() {
        let mut ok = true;
        for w in &o.cofactor {
            let w = ctx.form(w)?;
            ok &= w.degree() == 1
                && !w.is_zero()
                && (eta.degree() + 1 > n || w.wedge(&eta).is_zero());
        }
        checks.push(("cofactor", ok));
    }
    if let Some(p) = &o.intfactor {
        let p = ctx.poly(p)?;
        let ok = eta.degree() == 1 && !p.is_zero() && eta.d().mul_poly(&p) == df(&p).wedge(&eta);
        checks.push(("intfactor", ok));
    }
    for (k, ok) in &checks {
        r.verdict(&format!("witness.{k}"), *ok);
    }
    if checks.iter().any(|(_, ok)| !ok) {
        r.status = Status::Rejected;
    }
    Ok(())
}

fn recheck_base(eta: &PForm) -> Vec<String> {
    vec![
        "check".into(),
        "--n".into(),
        eta.nvars().to_string(),
        "--form".into(),
        eta.to_string(),
    ]
}

fn push_args(v: &mut Vec<String>, flag: &str, value: String) {
    v.push(flag.to_string());
    v.push(value);
}

fn cmd_decompose(ctx: &Ctx, r: &mut Report) -> Result<(), CliError> {
    let eta = ctx.single()?;
    ctx.echo(r, &eta);
    expect_two_form(&eta)?;
    match mero_decompose(&eta) {
        Ok(w) => {
            r.verdict("decomposable", true);
            r.verdict("witness_verified", w.verify(&eta));
            let alpha = w.omega1.numerator.to_string();
            let beta = w.omega2.to_string();
            let den = w.pivot.to_string();
            r.witness("alpha", alpha.clone());
            r.witness("beta", beta.clone());
            r.witness("denominator", den.clone());
            r.witness("z1", format_field(&w.z1));
            r.witness("z2", format_field(&w.z2));
            let mut re = recheck_base(&eta);
            push_args(&mut re, "--alpha", alpha);
            push_args(&mut re, "--beta", beta);
            push_args(&mut re, "--denominator", den);
            r.recheck = Some(re);
        }
        Err(FoliateError::NotDecomposable) => r.verdict("decomposable", false),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn cmd_rotational(ctx: &Ctx, r: &mut Report) -> Result<(), CliError> {
    let eta = ctx.single()?;
    ctx.echo(r, &eta);
    let x = rotational4(&eta)?;
    r.witness("rot", format_field(&x));
    r.verdict("rot_zero", x.is_zero());
    r.verdict(
        "integrable",
        eta.interior(&x).is_zero() && is_decomposable2(&eta),
    );
    let mut re = recheck_base(&eta);
    push_args(&mut re, "--rot", format_field(&x));
    r.recheck = Some(re);
    Ok(())
}

fn cmd_intersect(ctx: &Ctx, r: &mut Report) -> Result<(), CliError> {
    let omegas = ctx.inputs()?;
    if omegas.is_empty() {
        return Err(usage("pass the 1-forms with --form"));
    }
    r.input.insert("n".into(), json!(omegas[0].nvars()));
    r.input.insert(
        "forms".into(),
        json!(omegas.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
    );
    let x = complete_intersection(&omegas)?;
    r.witness("eta", x.eta.to_string());
    r.witness("factor", x.factor.to_string());
    r.verdict("complete", x.complete);
    if omegas.len() == 2 {
        let mut re = recheck_base(&x.eta);
        push_args(&mut re, "--alpha", omegas[0].to_string());
        push_args(&mut re, "--beta", omegas[1].to_string());
        push_args(&mut re, "--denominator", x.factor.to_string());
        r.recheck = Some(re);
    }
    Ok(())
}

fn cmd_classify(ctx: &Ctx, r: &mut Report) -> Result<(), CliError> {
    let eta = ctx.single()?;
    ctx.echo(r, &eta);
    if ctx.opts.fixture.as_deref() == Some("case-b") {
        let (rho, lambda) = ctx.rho_lambda()?;
        r.input.insert("rho".into(), json!(rat_str(&rho)));
        r.input.insert("lambda".into(), json!(rat_str(&lambda)));
    }
    let rep = classify(&eta)?;
    r.verdict("branch", rep.branch.clone());
    r.verdict("degree", rep.degree);
    r.verdict("verified", rep.verified);
    for (k, w) in &rep.witnesses {
        r.witness(k, witness_value(w));
    }
    if !rep.verified {
        r.status = Status::NoneFound;
    }
    Ok(())
}

fn cmd_sing_probe(ctx: &Ctx, r: &mut Report) -> Result<(), CliError> {
    let eta = ctx.single()?;
    ctx.echo(r, &eta);
    r.input.insert("height".into(), json!(ctx.opts.height));
    let mut re = recheck_base(&eta);
    if let Some(c) = codim1_certificate(&eta)? {
        if let CertificateWitness::Factor(h) = &c.witness {
            push_args(&mut re, "--factor", h.to_string());
        }
        r.certificates.push(certificate_value(&c, &eta));
    }
    let budget = SearchBudget {
        height: ctx.opts.height,
    };
    let cert = sing_line_search(&eta, &budget)?;
    r.certificates.push(certificate_value(&cert, &eta));
    match &cert.witness {
        CertificateWitness::Direction(v) => {
            r.verdict("line_found", true);
            r.witness("line", vector_str(v));
            push_args(&mut re, "--line", vector_str(v));
        }
        _ => {
            r.verdict("line_found", false);
            r.status = Status::NoneFound;
        }
    }
    let points = projective_point_scan(&singular_ideal(&eta), eta.nvars(), ctx.opts.height)?;
    r.verdict("projective_zeros_within_height", points.len());
    if re.len() > 5 {
        r.recheck = Some(re);
    }
    Ok(())
}

fn cmd_series(ctx: &Ctx, r: &mut Report) -> Result<(), CliError> {
    let mut etas = ctx.inputs()?;
    if let Some(k) = ctx.opts.order {
        etas.truncate(k + 1);
    }
    let (Some(a0), Some(b0)) = (ctx.opts.alpha.first(), ctx.opts.beta.first()) else {
        return Err(usage(
            "series-decompose needs --alpha and --beta for order zero",
        ));
    };
    let (a0, b0) = (ctx.form(a0)?, ctx.form(b0)?);
    r.input.insert(
        "family".into(),
        json!(etas.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
    );
    r.input.insert("dmax".into(), json!(ctx.opts.dmax));
    let fam = FormFamily::new(etas)?;
    match family_decompose(&fam, &a0, &b0, ctx.opts.dmax) {
        Ok(dec) => {
            r.verdict(
                "residual_zero",
                dec.residual(&fam).iter().all(|x| x.is_zero()),
            );
            r.witness(
                "alphas",
                json!(dec.alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>()),
            );
            r.witness(
                "betas",
                json!(dec.betas.iter().map(|b| b.to_string()).collect::<Vec<_>>()),
            );
        }
        Err(DeformError::SaitoInfeasible { order, dmax }) => {
            r.verdict("infeasible_order", order);
            r.verdict("dmax", dmax);
            r.status = Status::NoneFound;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn cmd_divide(ctx: &Ctx, r: &mut Report, mode: DivideMode) -> Result<(), CliError> {
    let eta = ctx.single()?;
    ctx.echo(r, &eta);
    let dmax = ctx.opts.dmax;
    r.input.insert("dmax".into(), json!(dmax));
    let mut re = recheck_base(&eta);
    let outcome = match mode {
        DivideMode::Saito => {
            let (Some(a0), Some(b0)) = (ctx.opts.alpha.first(), ctx.opts.beta.first()) else {
                return Err(usage("divide saito needs --alpha and --beta"));
            };
            let (a0, b0) = (ctx.form(a0)?, ctx.form(b0)?);
            saito_solve(&a0, &b0, &eta, dmax).map(|(a1, b1)| {
                r.witness("alpha_prime", a1.to_string());
                r.witness("beta_prime", b1.to_string());
                for (a, b) in [(&a0, &b1), (&a1, &b0)] {
                    push_args(&mut re, "--alpha", a.to_string());
                    push_args(&mut re, "--beta", b.to_string());
                }
            })
        }
        DivideMode::Derham => {
            let Some(x) = &ctx.opts.field_x else {
                return Err(usage("divide derham needs --field-x"));
            };
            let x = ctx.field(x)?;
            derham_vector_solve(&eta, &x, dmax).map(|y| {
                r.witness("field_y", format_field(&y));
                push_args(&mut re, "--field-x", format_field(&x));
                push_args(&mut re, "--field-y", format_field(&y));
            })
        }
        DivideMode::Cofoliation => containing_foliation_search(&eta, dmax).map(|c| {
            r.witness(
                "basis",
                json!(c.basis.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
            );
            r.witness(
                "integrable",
                json!(c
                    .integrable
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()),
            );
            for w in &c.basis {
                push_args(&mut re, "--cofactor", w.to_string());
            }
            if c.basis.is_empty() {
                r.status = Status::NoneFound;
            }
        }),
        DivideMode::Intfactor => integrating_factor_search(&eta, dmax).map(|p| {
            r.witness("factor", p.to_string());
            push_args(&mut re, "--intfactor", p.to_string());
        }),
    };
    match outcome {
        Ok(()) => {
            if re.len() > 5 {
                r.recheck = Some(re);
            }
        }
        Err(DivideError::NoSolution(_) | DivideError::NoFactor(_)) => r.status = Status::NoneFound,
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn cmd_fixtures(ctx: &Ctx, r: &mut Report, name: Option<&str>) -> Result<(), CliError> {
    let Some(name) = name else {
        r.verdict("available", json!(fixtures::NAMES));
        return Ok(());
    };
    let eta = ctx.fixture(name)?;
    r.input.insert("fixture".into(), json!(name));
    r.input.insert("n".into(), json!(eta.nvars()));
    basic_verdicts(r, &eta)?;
    r.witness("form", eta.to_string());
    let mut re = recheck_base(&eta);
    match name {
        "kn-theta" => {
            let q = quadric_map(&eta)?;
            r.verdict("quadric_residual", q.residual.to_string());
            r.verdict("square_zero", eta.wedge(&eta).is_zero());
        }
        "log-example" => {
            let (lambda, mu) = (fixtures::log_example_lambda(), fixtures::log_example_mu());
            r.verdict("lambda", vector_str(&lambda));
            r.verdict("mu", vector_str(&mu));
            let (a, b) = log_factors(&lambda, &mu)?;
            let p = (0..4).fold(Poly::one(4), |acc, k| &acc * &Poly::var(4, k));
            r.witness("alpha", a.to_string());
            r.witness("beta", b.to_string());
            r.witness("denominator", p.to_string());
            push_args(&mut re, "--alpha", a.to_string());
            push_args(&mut re, "--beta", b.to_string());
            push_args(&mut re, "--denominator", p.to_string());
            let lines = sing_lines(
                &eta,
                &SearchBudget {
                    height: ctx.opts.height.min(3),
                },
            )?;
            r.verdict(
                "singular_lines",
                json!(lines.iter().map(|v| vector_str(v)).collect::<Vec<_>>()),
            );
        }
        "case-a" => {
            let d = case_a_log_data(&fixtures::case_a_lambda(), &fixtures::case_a_mu())?;
            r.verdict("lambda", vector_str(&fixtures::case_a_lambda()));
            r.verdict("mu", vector_str(&fixtures::case_a_mu()));
            r.witness("field_x", format_field(&d.x.to_field()));
            r.witness("field_y", format_field(&d.y.to_field()));
            push_args(&mut re, "--field-x", format_field(&d.x.to_field()));
            push_args(&mut re, "--field-y", format_field(&d.y.to_field()));
        }
        "case-b" => {
            let (rho, lambda) = ctx.rho_lambda()?;
            let d = case_b_normal_data(&rho, &lambda)?;
            r.input.insert("rho".into(), json!(rat_str(&rho)));
            r.input.insert("lambda".into(), json!(rat_str(&lambda)));
            let [a, b, c] = &d.log_constants;
            r.verdict(
                "log_constants",
                json!({"A": rat_str(a), "B": rat_str(b), "C": rat_str(c)}),
            );
            r.verdict(
                "y_spectrum",
                json!((0..4)
                    .map(|k| rat_str(&(&rho - rat(k) * &lambda)))
                    .collect::<Vec<_>>()),
            );
            r.verdict(
                "bracket_yx_equals_lambda_x",
                d.y.bracket(&d.x).matrix() == &linalg::scale(d.x.matrix(), &lambda),
            );
            r.witness("field_x", format_field(&d.x.to_field()));
            r.witness("field_y", format_field(&d.y.to_field()));
            r.witness("g", d.g.to_string());
            r.witness("h", d.h.to_string());
            push_args(&mut re, "--field-x", format_field(&d.x.to_field()));
            push_args(&mut re, "--field-y", format_field(&d.y.to_field()));
        }
        "pencil" => {
            let (f, g, p, q) = fixtures::pencil_data();
            r.verdict("p", rat_str(&p));
            r.verdict("q", rat_str(&q));
            let omega = fixtures::pencil_omega();
            r.witness("f", f.to_string());
            r.witness("g", g.to_string());
            r.witness("omega", omega.to_string());
            r.verdict("omega_integrable", omega.wedge(&omega.d()).is_zero());
            r.verdict(
                "omega_dicritical",
                omega.interior(&radial(4).expect("valid arity")).is_zero(),
            );
            push_args(&mut re, "--primitive", omega.to_string());
            push_args(&mut re, "--integral", f.to_string());
            push_args(&mut re, "--integral", g.to_string());
        }
        _ => {}
    }
    if eta.degree() == 2 && !matches!(eta.coeff_homogeneity(), Homogeneity::NotHomogeneous) {
        let cert = sing_line_search(
            &eta,
            &SearchBudget {
                height: ctx.opts.height,
            },
        )?;
        if let CertificateWitness::Direction(v) = &cert.witness {
            push_args(&mut re, "--line", vector_str(v));
        }
        r.certificates.push(certificate_value(&cert, &eta));
    }
    r.recheck = Some(re);
    Ok(())
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let ctx = Ctx {
        opts: &cli.opts,
        n: cli.opts.n as usize,
    };
    let mut r = Report::new(cli.command.name());
    match &cli.command {
        Command::Check => cmd_check(&ctx, &mut r)?,
        Command::Decompose => cmd_decompose(&ctx, &mut r)?,
        Command::Rotational => cmd_rotational(&ctx, &mut r)?,
        Command::Intersect => cmd_intersect(&ctx, &mut r)?,
        Command::Classify => cmd_classify(&ctx, &mut r)?,
        Command::SingProbe => cmd_sing_probe(&ctx, &mut r)?,
        Command::SeriesDecompose => cmd_series(&ctx, &mut r)?,
        Command::Divide { mode } => cmd_divide(&ctx, &mut r, *mode)?,
        Command::Fixtures { name } => cmd_fixtures(&ctx, &mut r, name.as_deref())?,
    }
    if cli.opts.timing {
        r.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(r)
}

/// Parses arguments, runs, prints and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.render(cli.opts.json));
            r.status.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
