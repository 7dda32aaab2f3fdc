//! The `verify`, `conditions` and `repro` commands.

use std::fs;
use std::path::Path;

use gti_core::conditions;
use gti_core::descriptor::{self, KDescriptor, SystemDescriptor};
use gti_core::oracle;
use gti_core::rational::{self, Rational};
use gti_core::report::TAlphaReport;
use gti_core::talpha;
use gti_core::torus::{self, ExactComplex, StepFunction, TorusSet};
use gti_core::{Complex64, GroupElement, GtiError};
use num::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{float, InputDigest, Provenance, Table};
use crate::{ReproArgs, ReproId, VerifyArgs, VerifyKind};

#[derive(Debug)]
pub enum CliError {
    Gti(GtiError),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Gti(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::Usage(_) => "invalid-input",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Gti(e) => e.to_string(),
            CliError::Io(m) | CliError::Usage(m) => m.clone(),
        }
    }
}

impl From<GtiError> for CliError {
    fn from(e: GtiError) -> Self {
        CliError::Gti(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// What a command produced: the JSON document, an optional residual table, and the verdict.
pub struct Outcome {
    pub json: Value,
    pub table: Table,
    pub pass: bool,
}

struct Inputs {
    digest: InputDigest,
}

impl Inputs {
    fn new(command: &str) -> Self {
        let mut digest = InputDigest::default();
        digest.add("command", command.as_bytes());
        Inputs { digest }
    }

    fn read(&mut self, label: &str, path: &Path) -> Result<Value> {
        let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.digest.add(label, &bytes);
        let text = String::from_utf8(bytes).map_err(|_| {
            CliError::Gti(GtiError::InvalidInput(format!(
                "{} is not UTF-8",
                path.display()
            )))
        })?;
        Ok(descriptor::from_str(&text)?)
    }

    fn param(&mut self, label: &str, value: impl ToString) {
        self.digest.add(label, value.to_string().as_bytes());
    }

    fn provenance(self, command: String) -> Provenance {
        Provenance {
            command,
            input_digest: self.digest.finish(),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn element(e: &GroupElement) -> String {
    e.coords()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(":")
}

fn exact(v: &ExactComplex) -> String {
    if v.is_exact() {
        rational::format(&v.rational)
    } else {
        let z = v.value();
        if z.im == 0.0 {
            float(z.re)
        } else {
            format!("{}{:+.16e}i", float(z.re), z.im)
        }
    }
}

/// Distinct values taken by a step function, in order of appearance.
fn step_values(f: &StepFunction) -> String {
    let mut seen: Vec<String> = Vec::new();
    for c in &f.cells {
        let s = exact(&c.value);
        if !seen.contains(&s) {
            seen.push(s);
        }
    }
    if seen.is_empty() {
        "0".into()
    } else {
        seen.join(";")
    }
}

fn verdict_json(
    condition: &str,
    pass: bool,
    max_residual: f64,
    tolerance: f64,
    details: Value,
    provenance: Provenance,
) -> Value {
    json!({
        "condition": condition,
        "pass": pass,
        "max_residual": max_residual,
        "tolerance": tolerance,
        "details": details,
        "provenance": provenance,
    })
}

fn talpha_table(report: &TAlphaReport) -> Table {
    let mut t = Table::new(&["alpha", "omega", "re", "im", "target", "residual"]);
    for e in &report.entries {
        t.push(vec![
            element(&e.alpha),
            element(&e.omega),
            float(e.re),
            float(e.im),
            float(e.target),
            float(e.residual),
        ]);
    }
    t
}

fn talpha_outcome(report: TAlphaReport, top_k: Option<usize>, provenance: Provenance) -> Outcome {
    let report = match top_k {
        Some(k) => report.top_k(k),
        None => report,
    };
    Outcome {
        table: talpha_table(&report),
        pass: report.pass,
        json: verdict_json(
            &report.condition,
            report.pass,
            report.max_residual,
            report.tolerance,
            to_value(&report),
            provenance,
        ),
    }
}

fn no_sys2(args: &VerifyArgs) -> Result<()> {
    match args.sys2 {
        Some(_) => Err(CliError::Usage(format!(
            "{} reads both windows from --sys; --sys2 is not accepted",
            args.kind.name()
        ))),
        None => Ok(()),
    }
}

pub fn verify(args: &VerifyArgs, tol: f64) -> Result<Outcome> {
    let command = format!("verify {}", args.kind.name());
    let mut inputs = Inputs::new(&command);
    inputs.param("tol", float(tol));
    let sys_v = inputs.read("sys", &args.sys)?;
    let sys2_v = args
        .sys2
        .as_deref()
        .map(|p| inputs.read("sys2", p))
        .transpose()?;
    match args.kind {
        VerifyKind::DualTalpha | VerifyKind::ParsevalTalpha | VerifyKind::DualBrute => {
            let sys = descriptor::parse_system(&sys_v)?;
            let sys2 = sys2_v.as_ref().map(descriptor::parse_system).transpose()?;
            let provenance = inputs.provenance(command);
            match (args.kind, &sys, &sys2) {
                (VerifyKind::DualTalpha, SystemDescriptor::Finite(g), _) => {
                    let h = match &sys2 {
                        Some(s) => s.finite()?,
                        None => g,
                    };
                    Ok(talpha_outcome(
                        talpha::verify_dual_talpha(g, h, tol)?,
                        args.top_k,
                        provenance,
                    ))
                }
                (VerifyKind::ParsevalTalpha, SystemDescriptor::Finite(g), None) => {
                    Ok(talpha_outcome(
                        talpha::verify_parseval_talpha(g, tol)?,
                        args.top_k,
                        provenance,
                    ))
                }
                (VerifyKind::DualBrute, SystemDescriptor::Finite(g), _) => {
                    let h = match &sys2 {
                        Some(s) => s.finite()?,
                        None => g,
                    };
                    dual_brute(g, h, tol, provenance)
                }
                (VerifyKind::DualTalpha, SystemDescriptor::Torus(t), None) => {
                    torus_outcome(torus::verify_torus_talpha(t, tol)?, args.top_k, provenance)
                }
                (VerifyKind::ParsevalTalpha, SystemDescriptor::Torus(t), None) => torus_outcome(
                    torus::verify_torus_talpha(&t.parseval(), tol)?,
                    args.top_k,
                    provenance,
                ),
                (VerifyKind::ParsevalTalpha, _, Some(_)) => Err(CliError::Usage(
                    "parseval-talpha takes a single system".into(),
                )),
                (VerifyKind::DualTalpha, SystemDescriptor::Torus(_), Some(_)) => {
                    Err(CliError::Usage(
                        "torus systems carry both generator sides; --sys2 is not accepted".into(),
                    ))
                }
                _ => Err(CliError::Gti(GtiError::InvalidInput(
                    "dual-brute needs a finite-group system".into(),
                ))),
            }
        }
        VerifyKind::GaborTime | VerifyKind::GaborFreq => {
            no_sys2(args)?;
            let sys = descriptor::parse_gabor(&sys_v)?;
            let report = match args.kind {
                VerifyKind::GaborTime => talpha::gabor_dual_time(&sys, tol)?,
                _ => talpha::gabor_dual_freq(&sys, tol)?,
            };
            Ok(talpha_outcome(
                report,
                args.top_k,
                inputs.provenance(command),
            ))
        }
        VerifyKind::FiniteGabor => {
            no_sys2(args)?;
            let d = descriptor::parse_finite_gabor(&sys_v)?;
            let report = talpha::finite_gabor_check(&d.g, &d.h, d.a, d.b, tol)?;
            let provenance = inputs.provenance(command);
            let characterization = match args.top_k {
                Some(k) => report.characterization.top_k(k),
                None => report.characterization.clone(),
            };
            let details = json!({
                "d": report.d,
                "a": report.a,
                "b": report.b,
                "characterization": to_value(&characterization),
                "bruteforce": to_value(&report.bruteforce),
            });
            Ok(Outcome {
                table: talpha_table(&characterization),
                pass: report.pass,
                json: verdict_json(
                    "finite-gabor",
                    report.pass,
                    report.characterization.max_residual,
                    tol,
                    details,
                    provenance,
                ),
            })
        }
        VerifyKind::Janssen => {
            no_sys2(args)?;
            let d = descriptor::parse_janssen(&sys_v)?;
            let report = torus::janssen_check(&d.g, &d.h, &d.a, &d.b, tol)?;
            let mut table = Table::new(&["alpha", "target", "residual", "exact_match"]);
            for a in &report.alphas {
                table.push(vec![
                    rational::format(&a.alpha),
                    rational::format(&a.target),
                    float(a.residual),
                    a.exact_match.to_string(),
                ]);
            }
            Ok(Outcome {
                table,
                pass: report.pass,
                json: verdict_json(
                    "janssen",
                    report.pass,
                    report.max_residual,
                    tol,
                    to_value(&report),
                    inputs.provenance(command),
                ),
            })
        }
    }
}

fn dual_brute(
    g: &gti_core::GtiSystem,
    h: &gti_core::GtiSystem,
    tol: f64,
    provenance: Provenance,
) -> Result<Outcome> {
    let v = oracle::is_dual_bruteforce(g, h, tol)?;
    let details = json!({
        "operator": v.details.clone().unwrap_or(Value::Null),
        "bounds_g": to_value(&oracle::frame_bounds_bruteforce(g)?),
        "bounds_h": to_value(&oracle::frame_bounds_bruteforce(h)?),
    });
    let mut table = Table::new(&["condition", "max_residual", "tolerance", "pass"]);
    table.push(vec![
        v.condition.clone(),
        float(v.max_residual),
        float(tol),
        v.pass.to_string(),
    ]);
    Ok(Outcome {
        table,
        pass: v.pass,
        json: verdict_json(
            &v.condition,
            v.pass,
            v.max_residual,
            tol,
            details,
            provenance,
        ),
    })
}

fn torus_outcome(
    mut report: torus::TorusTAlphaReport,
    top_k: Option<usize>,
    provenance: Provenance,
) -> Result<Outcome> {
    if let Some(k) = top_k {
        report
            .alphas
            .sort_by(|a, b| b.residual.total_cmp(&a.residual));
        report.alphas.truncate(k);
    }
    let mut table = Table::new(&["alpha", "residual", "exact_match"]);
    for a in &report.alphas {
        table.push(vec![
            rational::format(&a.alpha),
            float(a.residual),
            a.exact_match.to_string(),
        ]);
    }
    Ok(Outcome {
        table,
        pass: report.pass,
        json: verdict_json(
            &report.condition,
            report.pass,
            report.max_residual,
            report.tolerance,
            to_value(&report),
            provenance,
        ),
    })
}

pub fn conditions(sys_path: &Path, k_path: Option<&Path>, j_max: Option<usize>) -> Result<Outcome> {
    let command = "conditions".to_string();
    let mut inputs = Inputs::new(&command);
    if let Some(j) = j_max {
        inputs.param("jmax", j);
    }
    let sys_v = inputs.read("sys", sys_path)?;
    let k_v = k_path.map(|p| inputs.read("K", p)).transpose()?;
    let sys = descriptor::parse_system(&sys_v)?;
    let k = k_v
        .as_ref()
        .map(|v| descriptor::parse_k(v, &sys))
        .transpose()?;
    let provenance = inputs.provenance(command);
    let mut table = Table::new(&["condition", "layer", "term", "partial_sum"]);
    let report = match &sys {
        SystemDescriptor::Finite(s) => {
            let k = match &k {
                Some(KDescriptor::Finite(e)) => Some(e.as_slice()),
                _ => None,
            };
            let b = conditions::bundle(s, k, j_max)?;
            for r in [&b.lic_discrete, &b.lic, &b.alpha_lic] {
                for (j, (t, p)) in r.terms.iter().zip(&r.partial_sums).enumerate() {
                    table.push(vec![
                        r.condition.clone(),
                        (j + 1).to_string(),
                        float(*t),
                        float(*p),
                    ]);
                }
            }
            json!({"domain": "finite", "conditions": to_value(&b)})
        }
        SystemDescriptor::Torus(t) => {
            let t = match j_max {
                Some(j) => t.truncated(j),
                None => t.clone(),
            };
            let k = match k {
                Some(KDescriptor::Torus(set)) => set,
                _ => TorusSet::whole(),
            };
            let lic = torus::lic_torus(&t, &k)?;
            let alpha_lic = torus::alpha_lic_torus(&t, &k)?;
            for s in [&lic, &alpha_lic] {
                for (j, (term, p)) in s.terms.iter().zip(&s.partial_sums).enumerate() {
                    table.push(vec![
                        s.condition.clone(),
                        (j + 1).to_string(),
                        exact(term),
                        exact(p),
                    ]);
                }
            }
            json!({
                "domain": "torus",
                "conditions": {
                    "j_max": t.layers().len(),
                    "tail_bound": t.tail_bound().map(rational::format),
                    "k_measure": rational::format(&k.measure()),
                    "lic": to_value(&lic),
                    "alpha_lic": to_value(&alpha_lic),
                    "cc": to_value(&torus::cc_torus(&t)?),
                    "t0": to_value(&torus::talpha_torus(&t, &Rational::zero())?),
                },
            })
        }
    };
    let mut json = report;
    json["provenance"] = to_value(&provenance);
    Ok(Outcome {
        json,
        table,
        pass: true,
    })
}

/// One line of an expected-vs-computed table.
#[derive(Clone, Debug, Serialize)]
struct Row {
    quantity: String,
    expected: String,
    computed: String,
    residual: f64,
    tolerance: f64,
    #[serde(rename = "match")]
    matches: bool,
}

impl Row {
    fn exact(
        quantity: impl Into<String>,
        expected: String,
        computed: String,
        residual: f64,
        matches: bool,
    ) -> Self {
        Row {
            quantity: quantity.into(),
            expected,
            computed,
            residual,
            tolerance: 0.0,
            matches,
        }
    }

    fn approx(quantity: impl Into<String>, expected: f64, computed: f64, tolerance: f64) -> Self {
        let residual = (computed - expected).abs();
        Row {
            quantity: quantity.into(),
            expected: float(expected),
            computed: float(computed),
            residual,
            tolerance,
            matches: residual <= tolerance,
        }
    }

    fn verdict(
        quantity: impl Into<String>,
        expected_pass: bool,
        residual: f64,
        pass: bool,
        tolerance: f64,
    ) -> Self {
        let word = |p: bool| if p { "pass" } else { "fail" }.to_string();
        Row {
            quantity: quantity.into(),
            expected: word(expected_pass),
            computed: word(pass),
            residual,
            tolerance,
            matches: pass == expected_pass,
        }
    }
}

fn max_residual_of(f: &StepFunction, target: &Rational) -> f64 {
    f.max_deviation(target)
}

pub fn repro(args: &ReproArgs, tol: f64) -> Result<Outcome> {
    let command = format!("repro {}", args.id.name());
    let mut inputs = Inputs::new(&command);
    let mut rows = Vec::new();
    let (parameters, details) = match args.id {
        ReproId::LayeredTiling => {
            let n = args.n.unwrap_or(2);
            let j = args.jmax.unwrap_or(20);
            let r = torus::repro_layered_tiling(n, j)?;
            let expected = rational::format(&r.expected_partial);
            let n_minus_1 = (n - 1).to_string();
            let lic_values: Vec<String> = r.lic.terms.iter().map(exact).collect();
            let lic_computed = if r.lic_terms_constant {
                lic_values.first().cloned().unwrap_or_default()
            } else {
                lic_values.join(";")
            };
            let mut zero_alpha: Vec<String> = Vec::new();
            for v in r.t_alpha.iter().flat_map(|t| {
                step_values(&t.function)
                    .split(';')
                    .map(String::from)
                    .collect::<Vec<_>>()
            }) {
                if !zero_alpha.contains(&v) {
                    zero_alpha.push(v);
                }
            }
            rows.push(Row::exact(
                "lic per-layer term",
                n_minus_1,
                lic_computed,
                r.lic
                    .terms
                    .iter()
                    .map(|t| t.sub_rational(&rational::int(n as i64 - 1)).norm())
                    .fold(0.0, f64::max),
                r.lic_terms_constant,
            ));
            let alpha_lic = r.alpha_lic.total();
            rows.push(Row::exact(
                "alpha-lic partial sum",
                expected.clone(),
                exact(&alpha_lic),
                alpha_lic.sub_rational(&r.expected_partial).norm(),
                r.alpha_lic_exact,
            ));
            rows.push(Row::exact(
                "cc upper bound",
                expected.clone(),
                exact(&r.cc.upper),
                r.cc.upper.sub_rational(&r.expected_partial).norm(),
                r.cc_exact,
            ));
            rows.push(Row::exact(
                "t_0 partial",
                expected,
                step_values(&r.t0.function),
                max_residual_of(&r.t0.function, &r.expected_partial),
                r.t0_exact,
            ));
            rows.push(Row::exact(
                "t_alpha, alpha != 0",
                "0".into(),
                zero_alpha.join(";"),
                r.t_alpha
                    .iter()
                    .map(|t| max_residual_of(&t.function, &Rational::zero()))
                    .fold(0.0, f64::max),
                r.t_alpha_zero,
            ));
            (json!({"N": n, "jmax": j}), to_value(&r))
        }
        ReproId::ExReorderedOnb => {
            let n = args.n.unwrap_or(2);
            let j_star = args.jstar.unwrap_or(4);
            let k = args.k.unwrap_or(1);
            let r = torus::repro_reordered_onb(n, k, j_star)?;
            if k == 0 {
                let closed = (rational::int(n as i64) - Rational::one()).recip();
                rows.push(Row::exact(
                    "t_0",
                    rational::format(&closed),
                    exact(&r.value),
                    r.value.sub_rational(&closed).norm(),
                    r.value.is_exact() && r.value.rational == closed,
                ));
            } else {
                rows.push(Row::exact(
                    format!("t_alpha, alpha = {}", rational::format(&r.alpha)),
                    rational::format(&r.expected),
                    exact(&r.value),
                    r.residual,
                    r.exact,
                ));
            }
            let holds = |b: bool| if b { "holds" } else { "fails" }.to_string();
            let expected_holds = n == 2;
            rows.push(Row::exact(
                "t_alpha = delta_{alpha,0}",
                holds(expected_holds),
                holds(r.characterization_holds),
                r.residual,
                r.characterization_holds == expected_holds,
            ));
            (json!({"N": n, "jstar": j_star, "k": k}), to_value(&r))
        }
        ReproId::ShannonWavelet => {
            let psi = torus::shannon_profile();
            let window = [
                (rational::ratio(-64, 1), rational::ratio(-1, 64)),
                (rational::ratio(1, 64), rational::ratio(64, 1)),
            ];
            let mut all = Vec::new();
            for alpha in [0i64, 1, -1, 2, -2, 3, -3] {
                let t = torus::wavelet_talpha_dyadic(&psi, &psi, alpha, &window, None)?;
                let target = if alpha == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                rows.push(Row::exact(
                    format!("t_{alpha} on 1/64 <= |omega| < 64"),
                    rational::format(&target),
                    step_values(&t.function),
                    max_residual_of(&t.function, &target),
                    t.function.is_exactly(&target) && t.tail_bound == 0.0,
                ));
                all.push(t);
            }
            (
                json!({"window": "[-64, -1/64) u [1/64, 64)"}),
                to_value(&all),
            )
        }
        ReproId::CalderonCont => {
            let c = torus::calderon_continuous(&torus::log_normalized_profile())?;
            let tol = 1e-12;
            rows.push(Row::approx(
                "calderon integral, xi > 0",
                1.0,
                c.xi_positive,
                tol,
            ));
            rows.push(Row::approx(
                "calderon integral, xi < 0",
                1.0,
                c.xi_negative,
                tol,
            ));
            (json!({"profile": "log-normalized"}), to_value(&c))
        }
        ReproId::GaborFinite => {
            let d = args.d.unwrap_or(12);
            let a = args.a.unwrap_or(3);
            let b = args.b.unwrap_or(4);
            let g = reference_window(d);
            let h = oracle::finite_gabor_canonical_dual(&g, a, b)?;
            let good = talpha::finite_gabor_check(&g, &h, a, b, tol)?;
            let mut h_bad = h.clone();
            if let Some(v) = h_bad.first_mut() {
                *v += Complex64::new(1e-3, 0.0);
            }
            let bad = talpha::finite_gabor_check(&g, &h_bad, a, b, tol)?;
            rows.push(Row::verdict(
                "characterization, canonical dual",
                true,
                good.characterization.max_residual,
                good.characterization.pass,
                tol,
            ));
            rows.push(Row::verdict(
                "reproducing formula, canonical dual",
                true,
                good.bruteforce.max_residual,
                good.bruteforce.pass,
                tol,
            ));
            rows.push(Row::verdict(
                "characterization, perturbed dual",
                false,
                bad.characterization.max_residual,
                bad.characterization.pass,
                tol,
            ));
            rows.push(Row::verdict(
                "reproducing formula, perturbed dual",
                false,
                bad.bruteforce.max_residual,
                bad.bruteforce.pass,
                tol,
            ));
            (
                json!({"d": d, "a": a, "b": b}),
                json!({"canonical": to_value(&good), "perturbed": to_value(&bad)}),
            )
        }
        ReproId::JanssenUnit => {
            let unit = torus::unit_box();
            let one = Rational::one();
            let r = torus::janssen_check(&unit, &unit, &one, &one, 0.0)?;
            let exact_pass = r.pass && r.alphas.iter().all(|a| a.exact_match);
            rows.push(Row::verdict(
                "unit box, a = b = 1",
                true,
                r.max_residual,
                exact_pass,
                0.0,
            ));
            let doubled = torus::RationalStepProfile::indicator(
                torus::Domain::Real,
                Rational::zero(),
                Rational::one(),
                torus::Amp::rational(&rational::int(2)),
            )?;
            let s = torus::janssen_check(&unit, &doubled, &one, &one, tol)?;
            rows.push(Row::verdict(
                "unit box against 2 x unit box, a = b = 1",
                false,
                s.max_residual,
                s.pass,
                tol,
            ));
            (
                json!({"a": "1", "b": "1"}),
                json!({"unit": to_value(&r), "doubled": to_value(&s)}),
            )
        }
    };
    inputs.param("parameters", &parameters);
    inputs.param("tol", float(tol));
    let provenance = inputs.provenance(command);
    let pass = rows.iter().all(|r| r.matches);
    let mut table = Table::new(&[
        "quantity",
        "expected",
        "computed",
        "residual",
        "tolerance",
        "match",
    ]);
    for r in &rows {
        table.push(vec![
            r.quantity.clone(),
            r.expected.clone(),
            r.computed.clone(),
            float(r.residual),
            float(r.tolerance),
            r.matches.to_string(),
        ]);
    }
    Ok(Outcome {
        table,
        pass,
        json: json!({
            "example": args.id.name(),
            "parameters": parameters,
            "rows": to_value(&rows),
            "pass": pass,
            "details": details,
            "provenance": provenance,
        }),
    })
}

/// A fixed window with no symmetry that would make the Gabor system degenerate.
fn reference_window(d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|x| {
            let t = x as f64;
            Complex64::new(1.0 + 0.5 * (0.7 * t).cos(), 0.3 * (2.3 * t + 0.4).sin())
        })
        .collect()
}
