//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use nqh_core::algebra::{block_sizes, radical, render_blocks, strongly_graded_check, verify_algebra};
use nqh_core::deform::{
    build_bshriek_clifford, build_clifford, centrality_check_minus, centrality_check_plus, normalize_p11, p12_classify, validate_double_ore,
    CliffordData, PCase,
};
use nqh_core::knorrer::{run_case, singularity_report, CaseChoice, CaseResult, MinusCaseResult, PlusCaseResult};
use nqh_core::quadratic::{check_central, hilbert_profile, koszul_dual, QuadraticPresentation};
use nqh_core::rewrite::render_tensor;
use nqh_core::twist::{property_suite, verify_twisting_m2};

use crate::format::{is_double_ore, read_json, DoubleOreFile, InputError, PresentationFile, TwistFile};
use crate::report::Report;

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum CommandError {
    /// Unreadable or malformed input; exit code 2.
    Input(String),
    /// The computation itself failed a mathematical check; exit code 1.
    Math(String),
}

impl From<InputError> for CommandError {
    fn from(e: InputError) -> Self {
        CommandError::Input(e.0)
    }
}

impl From<nqh_core::Error> for CommandError {
    fn from(e: nqh_core::Error) -> Self {
        CommandError::Math(e.to_string())
    }
}

pub type CommandResult = Result<Report, CommandError>;

/// Options shared by all commands.
#[derive(Clone, Debug)]
pub struct Options {
    pub max_degree: usize,
    pub dump_rules: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_degree: 4, dump_rules: false }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn render_relations(p: &QuadraticPresentation) -> String {
    p.relation_elements().iter().map(|r| render_tensor(r, p.generators())).collect::<Vec<_>>().join("\n")
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe_presentation(r: &mut Report, p: &QuadraticPresentation, opts: &Options) -> Result<(), CommandError> {
    r.field("generators", p.generators().join(","));
    r.field("relation dim", p.relations().dim());
    r.field("relations", render_relations(p));
    let profile = hilbert_profile(p, opts.max_degree).map_err(|e| CommandError::Input(e.to_string()))?;
    r.field(&format!("hilbert series up to degree {}", opts.max_degree), join(&profile));
    Ok(())
}

pub fn check_presentation(path: &Path, opts: &Options) -> CommandResult {
    let f: PresentationFile = read_json(path)?;
    let p = f.presentation()?;
    let mut r = Report::new("check-presentation", &path.display().to_string());
    describe_presentation(&mut r, &p, opts)?;
    if let Some(z) = f.central_element()? {
        r.field("central element", render_tensor(&z.lift, p.generators()));
        r.check("central element is central", check_central(&p, &z)?);
    }
    Ok(r)
}

pub fn koszul_dual_cmd(path: &Path, opts: &Options) -> CommandResult {
    let f: PresentationFile = read_json(path)?;
    let p = f.presentation()?;
    let d = koszul_dual(&p);
    let mut r = Report::new("koszul-dual", &path.display().to_string());
    describe_presentation(&mut r, &d, opts)?;
    r.check("dual of the dual recovers the relations", koszul_dual(&d).relations() == p.relations());
    Ok(r)
}

fn clifford_fields(r: &mut Report, c: &CliffordData, opts: &Options) {
    let a = c.algebra();
    r.field("dim", a.dim());
    r.field("dim degree 0", a.component(0).len());
    r.field("dim degree 1", a.component(1).len());
    r.field("radical dim", radical(a).dim());
    r.field("commutative", yes_no(a.is_commutative()));
    r.field("basis", a.labels().join(","));
    if let Some(b) = block_sizes(a) {
        r.field("blocks over the closure", render_blocks(&b));
    }
    if opts.dump_rules {
        r.field("rewrite rules", c.system.dump().trim_end());
    }
    r.check("structure constants define an associative unital algebra", verify_algebra(a).passed());
    r.check("parity grading is strong", strongly_graded_check(a));
}

pub fn clifford(path: &Path, opts: &Options) -> CommandResult {
    let mut r = Report::new("clifford", &path.display().to_string());
    let c = if is_double_ore(path)? {
        let f: DoubleOreFile = read_json(path)?;
        let d = f.data()?;
        let z = f.require_central()?;
        r.field("algebra", "Clifford deformation of B^! at z + y1^2 + y2^2");
        build_bshriek_clifford(&d, &z)?
    } else {
        let f: PresentationFile = read_json(path)?;
        let p = f.presentation()?;
        let z = f.require_central()?;
        r.field("algebra", "Clifford deformation of A^! at z");
        build_clifford(&p, &z)?
    };
    clifford_fields(&mut r, &c, opts);
    Ok(r)
}

pub fn double_ore(path: &Path, _opts: &Options) -> CommandResult {
    let f: DoubleOreFile = read_json(path)?;
    let d = f.data()?;
    let mut r = Report::new("double-ore", &path.display().to_string());
    r.field("p12", &d.p12);
    r.field("p11", &d.p11);
    let case = p12_classify(&d);
    r.field(
        "case",
        match case {
            PCase::PlusCase => "p12 = 1",
            PCase::MinusCase => "p12 = -1",
            PCase::Invalid => "p12 not in {1, -1}",
        },
    );
    let rep = validate_double_ore(&d)?;
    r.checks_from(rep.lines());
    let has_central = f.central.is_some() || f.base.central.is_some();
    if has_central {
        let z = f.require_central()?;
        match case {
            PCase::PlusCase => r.check("z + y1^2 + y2^2 is central", centrality_check_plus(&d, &z)?),
            PCase::MinusCase => match normalize_p11(&d) {
                Ok(n) => r.check("z + y1^2 + y2^2 is central", centrality_check_minus(&n, &z)?),
                Err(e) => r.note(format!("centrality not checked: {e}")),
            },
            PCase::Invalid => r.note("centrality is only checked for p12 = 1 or -1"),
        }
    }
    Ok(r)
}

pub fn verify_twist(path: &Path, _opts: &Options) -> CommandResult {
    let f: TwistFile = read_json(path)?;
    let (c, t) = f.load()?;
    let a = c.algebra();
    let mut r = Report::new("verify-twist", &path.display().to_string());
    r.field("algebra dim", a.dim());
    let rep = verify_twisting_m2(a, &t);
    r.checks_from(rep.lines());
    if let Some(fail) = rep.first_failure() {
        r.note(format!("first counterexample: {fail}"));
        return Ok(r);
    }
    let suite = property_suite(a, &t);
    r.field("twisted algebra dim", 4 * a.dim());
    r.checks_from(suite.checks);
    Ok(r)
}

fn count(lines: &[(String, bool)]) -> String {
    format!("{}/{}", lines.iter().filter(|(_, ok)| *ok).count(), lines.len())
}

fn lambda_blocks(r: &PlusCaseResult) -> Result<String, CommandError> {
    let l0 = r.lambda_zero()?;
    let blocks = match block_sizes(&l0) {
        Some(b) => render_blocks(&b),
        None => return Ok(String::from("undetermined")),
    };
    Ok(if r.lambda.component(1).is_empty() { format!("{blocks} \u{d7}2 components") } else { blocks })
}

fn plus_fields(rep: &mut Report, r: &PlusCaseResult) -> Result<(), CommandError> {
    rep.field("case", "plus");
    rep.field("base dim", r.base.dim());
    rep.field("oracle dim", r.oracle.dim());
    rep.field("twisted dim", r.twisted.dim());
    rep.field("S dim", r.s.dim());
    rep.field("M dim", r.m_basis.len());
    rep.field("Lambda dim", r.lambda.dim());
    let l0 = r.lambda_zero()?;
    rep.field("Lambda_0 dim", l0.dim());
    rep.field("Lambda_1 dim", r.lambda.component(1).len());
    rep.field("Lambda_0 radical dim", radical(&l0).dim());
    rep.field("sigma identities", count(&r.sigma_checks));
    rep.field("twisting system identities", count(&r.twist_report.lines()));
    rep.field("Xi/Phi identities", count(&r.xi_phi_checks));
    rep.field("oracle iso", "isomorphism");
    rep.field("full idempotent", yes_no(r.e_full));
    rep.field("corner iso", "isomorphism");
    rep.field("blocks", lambda_blocks(r)?);
    Ok(())
}

fn minus_fields(rep: &mut Report, r: &MinusCaseResult) {
    rep.field("case", "minus");
    rep.field("p11 used", &r.data.p11);
    rep.field("base dim", r.base.dim());
    rep.field("oracle dim", r.oracle.dim());
    rep.field("Gamma dim", r.gamma.dim());
    rep.field("semitrivial dim", r.semitrivial.dim());
    rep.field("zhang dim", r.zhang.dim());
    rep.field("zhang radical dim", radical(&r.zhang).dim());
    rep.field("sigma identities", count(&r.sigma_checks));
    rep.field("twisting system identities", count(&r.prod_report.lines()));
    rep.field("mu involution", yes_no(r.mu_involution));
    rep.field("oracle iso", "isomorphism");
    rep.field("zhang iso", "isomorphism");
    rep.field("blocks", block_sizes(&r.zhang).map(|b| render_blocks(&b)).unwrap_or_else(|| String::from("undetermined")));
}

/// The full pipeline report shared by `knorrer` and `reproduce`.
pub fn case_report(rep: &mut Report, r: &CaseResult) -> Result<(), CommandError> {
    match r {
        CaseResult::Plus(p) => plus_fields(rep, p)?,
        CaseResult::Minus(m) => minus_fields(rep, m),
    }
    let s = singularity_report(r)?;
    rep.field("oracle radical dim", s.oracle_radical);
    rep.field("oracle degree-0 dim", s.degree_zero_dim);
    rep.field("oracle degree-0 radical dim", s.degree_zero_radical);
    rep.field("oracle degree-0 blocks", s.blocks.as_ref().map(|b| render_blocks(b)).unwrap_or_else(|| String::from("undetermined")));
    rep.field("isolated singularity", yes_no(s.isolated));
    rep.field("description", s.description);
    rep.checks_from(r.checks());
    Ok(())
}

pub fn knorrer(path: &Path, choice: CaseChoice, _opts: &Options) -> CommandResult {
    let f: DoubleOreFile = read_json(path)?;
    let d = f.data()?;
    let z = f.require_central()?;
    let mut rep = Report::new("knorrer", &path.display().to_string());
    let r = run_case(&d, &z, choice)?;
    case_report(&mut rep, &r)?;
    Ok(rep)
}
