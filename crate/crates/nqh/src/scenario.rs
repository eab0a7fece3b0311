//! Embedded worked examples with expected values, each tagged with where the value comes from.

use nqh_core::algebra::{block_sizes, nilpotency_index, radical, render_blocks, spin, verify_decomposition, verify_iso, RightModule};
use nqh_core::deform::CliffordData;
use nqh_core::exactlin::{Scalar, Vector};
use nqh_core::knorrer::{diagonal_factorization, prop51_scenario, run_case, run_minus_case, CaseChoice, CaseResult, MinusCaseResult, PlusCaseResult};
use nqh_core::Error;
use serde::Deserialize;

use crate::commands::{case_report, yes_no, CommandError};
use crate::expr::{parse_element, split_pair};
use crate::format::{DoubleOreFile, InputError};
use crate::report::Report;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// The plus or minus pipeline, chosen by `p12`.
    Knorrer,
    /// The `p11 = +-2i` reduction.
    DegenerateP11,
}

/// A named field of the report and the value it must take.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub key: String,
    #[serde(default)]
    pub value: Option<String>,
    /// For counts rendered as `k/n` or `k`: the least acceptable `k`.
    #[serde(default)]
    pub at_least: Option<usize>,
    /// `published`, `derived` or `invariant`.
    pub source: String,
}

/// `left * right = expected` in the Zhang twist, all in pair notation `(a, b)`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    pub expected: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleSpec {
    pub name: String,
    pub generators: Vec<String>,
    pub multiplicity: usize,
}

/// A printed value that is reported, not enforced.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdvisorySpec {
    /// One of `Xi1`, `Xi2`, `Phi1`, `Phi2`.
    pub map: String,
    pub argument: String,
    pub printed: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub title: String,
    pub kind: Kind,
    pub input: DoubleOreFile,
    #[serde(default)]
    pub expect: Vec<Expectation>,
    #[serde(default)]
    pub products: Vec<ProductSpec>,
    #[serde(default)]
    pub nilpotent: Option<String>,
    #[serde(default)]
    pub submodules: Vec<SubmoduleSpec>,
    #[serde(default)]
    pub advisories: Vec<AdvisorySpec>,
    #[serde(default)]
    pub diagonal: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    pub scenarios: Vec<Scenario>,
}

const EMBEDDED: [&str; 7] = [
    include_str!("../scenarios/ex-4.9-1.json"),
    include_str!("../scenarios/ex-4.9-2.json"),
    include_str!("../scenarios/ex-4.10.json"),
    include_str!("../scenarios/ex-5.9.json"),
    include_str!("../scenarios/prop-5.10.json"),
    include_str!("../scenarios/prop-5.1.json"),
    include_str!("../scenarios/diagonal.json"),
];

impl Registry {
    /// The scenarios compiled into the binary.
    pub fn embedded() -> Result<Registry, InputError> {
        let scenarios = EMBEDDED.iter().map(|s| serde_json::from_str(s).map_err(|e| InputError(format!("embedded scenario: {e}")))).collect::<Result<Vec<Scenario>, _>>()?;
        Registry::new(scenarios)
    }

    pub fn from_json(text: &str) -> Result<Registry, InputError> {
        let r: Registry = serde_json::from_str(text).map_err(|e| InputError(format!("registry: {e}")))?;
        Registry::new(r.scenarios)
    }

    fn new(scenarios: Vec<Scenario>) -> Result<Registry, InputError> {
        for (k, s) in scenarios.iter().enumerate() {
            if scenarios[..k].iter().any(|t| t.id == s.id) {
                return Err(InputError(format!("duplicate scenario id {:?}", s.id)));
            }
        }
        Ok(Registry { scenarios })
    }

    pub fn get(&self, id: &str) -> Option<&Scenario> {
        self.scenarios.iter().find(|s| s.id == id)
    }
}

fn input_err(e: impl ToString) -> CommandError {
    CommandError::Input(e.to_string())
}

fn pair_vector(m: &MinusCaseResult, src: &str) -> Result<Vector, CommandError> {
    let (a, b) = split_pair(src).map_err(input_err)?;
    let p = &m.base.presented;
    let names = p.generators.clone();
    let el = |s: &str| -> Result<Vector, CommandError> { Ok(p.element(&parse_element(s, &names).map_err(input_err)?)?) };
    Ok(m.pair(&el(a)?, &el(b)?)?)
}

fn render_pair(m: &MinusCaseResult, v: &[Scalar]) -> String {
    let c = m.base.algebra();
    let (a, b) = m.unpair(v);
    format!("({}, {})", c.render(&a), c.render(&b))
}

fn minus_extras(rep: &mut Report, s: &Scenario, m: &MinusCaseResult) -> Result<(), CommandError> {
    if !s.products.is_empty() {
        let mut ok = 0;
        for p in &s.products {
            let (l, r, e) = (pair_vector(m, &p.left)?, pair_vector(m, &p.right)?, pair_vector(m, &p.expected)?);
            let got = m.zhang.mul(&l, &r);
            let key = format!("{}*{}", p.left, p.right);
            if got == e {
                ok += 1;
                rep.field(&key, "reproduced");
            } else {
                rep.field(&key, format!("differs: computed {}, printed {}", render_pair(m, &got), p.expected));
            }
        }
        rep.field("printed products reproduced", format!("{ok}/{}", s.products.len()));
    }
    if let Some(w) = &s.nilpotent {
        let v = pair_vector(m, w)?;
        match nilpotency_index(&m.zhang, &v) {
            Some(k) if k > 1 => {
                rep.field("nilpotent witness", w);
                rep.field("nilpotency index", k);
            }
            _ => rep.field("nilpotent witness", "none"),
        }
    }
    if !s.submodules.is_empty() {
        let reg = RightModule::regular(&m.zhang);
        let mut mods = Vec::new();
        let mut dims = Vec::new();
        for sm in &s.submodules {
            let seeds = sm.generators.iter().map(|g| pair_vector(m, g)).collect::<Result<Vec<_>, _>>()?;
            let sub = reg.submodule(&spin(&reg, &seeds))?;
            dims.push(sub.dim().to_string());
            mods.push(sub);
        }
        let mults: Vec<usize> = s.submodules.iter().map(|sm| sm.multiplicity).collect();
        rep.field("submodule dims", dims.join(","));
        let ok = verify_decomposition(&m.zhang, &mods, &mults);
        let sum = s
            .submodules
            .iter()
            .map(|sm| if sm.multiplicity == 1 { sm.name.clone() } else { format!("{}^{}", sm.name, sm.multiplicity) })
            .collect::<Vec<_>>()
            .join(" + ");
        rep.field("decomposition", if ok { sum } else { String::from("not verified") });
    }
    if s.diagonal {
        match diagonal_factorization(m) {
            Ok((prod, _)) => rep.field("diagonal factorization", format!("verified, dim {}", prod.dim())),
            Err(e) => rep.field("diagonal factorization", format!("failed: {e}")),
        }
    }
    Ok(())
}

fn plus_extras(rep: &mut Report, s: &Scenario, p: &PlusCaseResult) -> Result<(), CommandError> {
    let c = p.base.algebra();
    let names = p.base.presented.generators.clone();
    let sum = p.lambda_sum_map()?;
    rep.field("sum map Lambda -> C is a graded isomorphism", yes_no(verify_iso(&p.lambda, c, &sum)));
    if p.lambda.component(1).is_empty() {
        let l0 = p.lambda_zero()?;
        rep.field("sum map Lambda_0 -> C is an isomorphism", yes_no(verify_iso(&l0, &c.regrade(1, |_| 0), &sum)));
    }
    for a in &s.advisories {
        let map = match a.map.as_str() {
            "Xi1" => &p.xi_phi.xi[0],
            "Xi2" => &p.xi_phi.xi[1],
            "Phi1" => &p.xi_phi.phi[0],
            "Phi2" => &p.xi_phi.phi[1],
            other => return Err(input_err(format!("unknown map {other:?}"))),
        };
        let arg = p.base.presented.element(&parse_element(&a.argument, &names).map_err(input_err)?)?;
        let printed = p.base.presented.element(&parse_element(&a.printed, &names).map_err(input_err)?)?;
        let got = map.apply(&arg);
        let key = format!("printed {}({})", a.map, a.argument);
        if got == printed {
            rep.field(&key, "matches");
        } else {
            rep.field(&key, "differs");
            rep.note(format!("{}({}) computes to {}; printed value {} is not enforced", a.map, a.argument, c.render(&got), a.printed));
        }
    }
    Ok(())
}

fn base_fields(rep: &mut Report, c: &CliffordData) {
    let a = c.algebra();
    rep.field("base commutative", yes_no(a.is_commutative()));
    rep.field("base radical dim", radical(a).dim());
    if let Some(b) = block_sizes(a) {
        rep.field("base blocks", render_blocks(&b));
    }
}

fn run_pipeline(rep: &mut Report, s: &Scenario) -> Result<(), CommandError> {
    let d = s.input.data()?;
    let z = s.input.require_central()?;
    match s.kind {
        Kind::Knorrer => {
            let r = run_case(&d, &z, CaseChoice::Auto)?;
            case_report(rep, &r)?;
            match &r {
                CaseResult::Plus(p) => {
                    base_fields(rep, &p.base);
                    plus_extras(rep, s, p)?;
                }
                CaseResult::Minus(m) => {
                    base_fields(rep, &m.base);
                    minus_extras(rep, s, m)?;
                }
            }
        }
        Kind::DegenerateP11 => {
            let r = prop51_scenario(&d, &z)?;
            rep.field("substitution image", if r.image_matches { "z + y2^2" } else { "mismatch" });
            rep.field("reduced algebra dim", r.reduced.dim());
            rep.field("reduced radical dim", r.reduced_radical);
            rep.field("isolated singularity", yes_no(r.isolated));
            let routed = matches!(run_minus_case(&d, &z), Err(Error::DegenerateP11));
            rep.field("minus pipeline rejects p11", yes_no(routed));
            rep.check("substitution maps z + y1^2 + y2^2 to z + y2^2", r.image_matches);
        }
    }
    Ok(())
}

fn check_expectations(rep: &mut Report, s: &Scenario) {
    for e in &s.expect {
        let found = rep.get(&e.key).map(String::from);
        let (name, ok) = match (&e.value, e.at_least) {
            (Some(v), _) => (format!("expect {} = {}", e.key, v), found.as_deref() == Some(v.as_str())),
            (None, Some(k)) => {
                let n = found.as_deref().and_then(|f| f.split('/').next()).and_then(|x| x.trim().parse::<usize>().ok());
                (format!("expect {} >= {}", e.key, k), n.is_some_and(|n| n >= k))
            }
            (None, None) => (format!("expect {} present", e.key), found.is_some()),
        };
        let detail = (!ok).then(|| format!("found {}", found.as_deref().unwrap_or("nothing")));
        rep.check_with(&name, ok, Some(&e.source), detail);
    }
}

/// Runs one scenario; computation errors become failed checks.
pub fn run_scenario(s: &Scenario) -> Result<Report, CommandError> {
    let mut rep = Report::new("reproduce", &s.id);
    rep.field("title", &s.title);
    match run_pipeline(&mut rep, s) {
        Ok(()) => {}
        Err(CommandError::Input(e)) => return Err(CommandError::Input(format!("scenario {}: {e}", s.id))),
        Err(CommandError::Math(e)) => rep.check_with("pipeline", false, None, Some(e)),
    }
    check_expectations(&mut rep, s);
    Ok(rep)
}

/// Runs scenarios on up to `jobs` threads; reports come back in registry order.
pub fn run_all(scenarios: &[&Scenario], jobs: usize) -> Vec<Result<Report, CommandError>> {
    let jobs = jobs.max(1).min(scenarios.len().max(1));
    if jobs == 1 {
        return scenarios.iter().map(|s| run_scenario(s)).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<Report, CommandError>>>> = scenarios.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(s) = scenarios.get(k) else { break };
                *slots[k].lock().expect("slot lock") = Some(run_scenario(s));
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every scenario ran")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_registry_parses_with_unique_ids() {
        let r = Registry::embedded().unwrap();
        assert_eq!(r.scenarios.len(), EMBEDDED.len());
        assert!(r.get("ex-4.10").is_some());
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let one = EMBEDDED[0];
        let text = format!("{{\"scenarios\": [{one}, {one}]}}");
        assert!(Registry::from_json(&text).is_err());
    }
}
