//! JSON inputs, run configuration and the reports emitted by each command.
//!
//! Every command returns a [`Report`] `{command, config, results, pass}`.
//! Reports contain no timestamps or timings unless asked for, so reruns with
//! the same configuration are byte-identical.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohomology::{
    basic_model, derham_model, dga_cohomology, hodge_model, lefschetz_check, printed_diamond,
    su3_derham_model, HodgeBeta, SU3_BETTI,
};
use crate::error::{Error, Result};
use crate::geometry::{int, parse_rat, Rat};
use crate::isotropy::{classify_by_weights, freeness_check, singular_stratum_census, Prop53Class};
use crate::quadric::{certify_samples, CertTolerances, SampleConfig, SampleKind};
use crate::weights::{
    check_interpolation_path, check_star, derive, par_enumerate_star_systems,
    weights_from_cone_data, DerivedConeData, InterpolationSpec, WeightSystem,
};

/// Parsed `--config` payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Input {
    Weights(WeightSystem),
    Cone(DerivedConeData),
}

impl Input {
    pub fn cone_data(&self) -> Result<DerivedConeData> {
        match self {
            Input::Weights(ws) => derive(ws),
            Input::Cone(d) => Ok(*d),
        }
    }

    pub fn weights(&self) -> Option<&WeightSystem> {
        match self {
            Input::Weights(ws) => Some(ws),
            Input::Cone(_) => None,
        }
    }
}

impl Serialize for Input {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Input::Weights(ws) => ws.serialize(s),
            Input::Cone(d) => d.serialize(s),
        }
    }
}

/// Parses a weight system `{"wL", "wR"}` or cone data `{"A", "B"}`.
pub fn parse_input_json(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("wL") || obj.contains_key("wR") {
        let ws: WeightSystem = serde_json::from_value(v)?;
        ws.validate()?;
        Ok(Input::Weights(ws))
    } else if obj.contains_key("A") || obj.contains_key("B") {
        Ok(Input::Cone(serde_json::from_value(v)?))
    } else {
        Err(Error::Parse(
            "expected a weight system {\"wL\", \"wR\"} or cone data {\"A\", \"B\"}".into(),
        ))
    }
}

/// Inline JSON if the argument starts with `{`, otherwise a file path.
pub fn load_input(arg: &str) -> Result<Input> {
    if arg.trim_start().starts_with('{') {
        parse_input_json(arg)
    } else {
        parse_input_json(&std::fs::read_to_string(Path::new(arg))?)
    }
}

/// Parses `"p/q,r/s"` into `β = (p/q)·x₂ + (r/s)·x₃`.
pub fn parse_beta(s: &str) -> Result<HodgeBeta> {
    let (u, v) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("beta must look like \"p/q,r/s\", got {s:?}")))?;
    let (u, v) = (parse_rat(u)?, parse_rat(v)?);
    if u == int(0) && v == int(0) {
        return Err(Error::Config("beta must be nonzero".into()));
    }
    Ok(HodgeBeta::rational(u, v))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: Option<Value>,
    pub tol_residual: f64,
    pub tol_zero: f64,
    pub tol_pos: f64,
    pub samples: usize,
    pub seed: u64,
    pub bound: i64,
    /// Steps `n` of the interpolation samples `t = k/n`.
    pub interpolation_steps: u32,
    pub beta: Option<String>,
    pub degenerate: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let tol = CertTolerances::default();
        RunConfig {
            input: None,
            tol_residual: tol.residual,
            tol_zero: tol.tol_zero,
            tol_pos: tol.tol_pos,
            samples: 100,
            seed: 0,
            bound: 1,
            interpolation_steps: 8,
            beta: None,
            degenerate: false,
        }
    }
}

impl RunConfig {
    pub fn with_input(input: &Input) -> Self {
        RunConfig {
            input: Some(serde_json::to_value(input).expect("serializable")),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, t) in [
            ("tol_residual", self.tol_residual),
            ("tol_zero", self.tol_zero),
            ("tol_pos", self.tol_pos),
        ] {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.bound < 0 {
            return Err(Error::Config("bound must be nonnegative".into()));
        }
        if self.interpolation_steps == 0 {
            return Err(Error::Config("interpolation_steps must be at least 1".into()));
        }
        Ok(())
    }

    pub fn input(&self) -> Result<Input> {
        let v = self
            .input
            .as_ref()
            .ok_or_else(|| Error::Config("no input given (use --config)".into()))?;
        parse_input_json(&v.to_string())
    }

    pub fn tolerances(&self) -> CertTolerances {
        CertTolerances {
            residual: self.tol_residual,
            tol_zero: self.tol_zero,
            tol_pos: self.tol_pos,
            ..Default::default()
        }
    }

    pub fn hodge_beta(&self) -> Result<HodgeBeta> {
        match (&self.beta, self.degenerate) {
            (Some(_), true) => Err(Error::Config("--beta and --degenerate are exclusive".into())),
            (Some(b), false) => parse_beta(b),
            (None, true) => Ok(HodgeBeta::degenerate()),
            (None, false) => Ok(HodgeBeta::generic()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub results: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Report {
    fn new(command: &str, config: &RunConfig, results: Value, pass: bool) -> Self {
        Report {
            command: command.into(),
            config: config.clone(),
            results,
            pass,
            wall_time_ms: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// `t₁^a t₂^b` written as `t1^a*t2^b`.
pub fn format_character(w: [i64; 2]) -> String {
    let part = |name: &str, e: i64| match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    };
    let parts: Vec<String> = [part("t1", w[0]), part("t2", w[1])].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn format_diag(ws: &[[i64; 2]; 3]) -> String {
    format!("diag({})", ws.map(format_character).join(", "))
}

fn interpolation_result(d: &DerivedConeData, steps: u32) -> Value {
    match InterpolationSpec::for_data(d, InterpolationSpec::uniform_samples(steps))
        .and_then(|spec| check_interpolation_path(d, &spec).map(|ok| (spec, ok)))
    {
        Ok((spec, ok)) => json!({
            "a": spec.a.to_string(),
            "b": spec.b.to_string(),
            "samples": spec.samples.iter().map(Rat::to_string).collect::<Vec<_>>(),
            "holds": ok,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Derives cone data and checks the cone condition, `(N)`, `(R)`, `(C)` and
/// the interpolation path.
pub fn cmd_check(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let input = config.input()?;
    let d = input.cone_data()?;
    let cond = check_star(&d);
    let interpolation = if cond.star {
        interpolation_result(&d, config.interpolation_steps)
    } else {
        Value::Null
    };
    let pass = cond.star;
    let results = json!({
        "derived": d,
        "condition": cond,
        "interpolation": interpolation,
    });
    Ok(Report::new("check", config, results, pass))
}

/// Freeness, the weight-level classification and the stratum census.
pub fn cmd_isotropy(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let input = config.input()?;
    let d = input.cone_data()?;
    if !d.is_integer() {
        return Err(Error::NonInteger("isotropy needs integer cone data".into()));
    }
    let cond = check_star(&d);
    if !cond.star {
        let results = json!({
            "derived": d,
            "error": "the cone condition fails; isotropy is only classified under it",
        });
        return Ok(Report::new("isotropy", config, results, false));
    }
    let verdict = freeness_check(&d, input.weights())?;
    let class = input.weights().map(classify_by_weights);
    let census = singular_stratum_census(&d)?;
    let pass = verdict.prop53_consistent;
    let results = json!({
        "derived": d,
        "freeness": verdict,
        "classification": class,
        "census": census,
    });
    Ok(Report::new("isotropy", config, results, pass))
}

/// Samples the level set and certifies the transverse Kähler structure at
/// every sample.
pub fn cmd_verify(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let input = config.input()?;
    let d = input.cone_data()?;
    if !check_star(&d).star {
        let results = json!({
            "derived": d,
            "error": "the cone condition fails; the level set is not certified",
        });
        return Ok(Report::new("verify", config, results, false));
    }
    let cfg = SampleConfig {
        count: config.samples,
        seed: config.seed,
        tolerances: config.tolerances(),
        ..Default::default()
    };
    let records = certify_samples(&d, &cfg)?;
    let count_kind = |f: fn(&SampleKind) -> bool| {
        records.iter().filter(|r| r.kind.as_ref().is_some_and(f)).count()
    };
    let passed = records.iter().filter(|r| r.pass).count();
    let irregular = records
        .iter()
        .filter(|r| r.certificate.as_ref().is_some_and(|c| !c.regular))
        .count();
    let pass = passed == records.len();
    let results = json!({
        "derived": d,
        "summary": {
            "count": records.len(),
            "passed": passed,
            "failed": records.len() - passed,
            "irregular": irregular,
            "seed_points": count_kind(|k| matches!(k, SampleKind::Seed { .. })),
            "perturbed_points": count_kind(|k| matches!(k, SampleKind::Perturbed { .. })),
            "su3_points": count_kind(|k| matches!(k, SampleKind::Su3 { .. })),
        },
        "samples": records,
    });
    Ok(Report::new("verify", config, results, pass))
}

/// Solves for weights from cone data and checks the exact round trip.
pub fn cmd_generate(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let d = match config.input()? {
        Input::Cone(d) => d,
        Input::Weights(_) => {
            return Err(Error::Config("generate expects cone data {\"A\", \"B\"}".into()))
        }
    };
    let g = weights_from_cone_data(d.a, d.b)?;
    let back = derive(&g.integer)?;
    let roundtrip = back == d.scale(Rat::from_integer(g.scale as i128));
    let results = json!({
        "input": d,
        "rational": g.rational,
        "scale": g.scale,
        "integer": g.integer,
        "rho_L": format_diag(&g.integer.left),
        "rho_R": format_diag(&g.integer.right),
        "roundtrip": roundtrip,
    });
    Ok(Report::new("generate", config, results, roundtrip))
}

/// One line of the enumeration stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationRecord {
    #[serde(flatten)]
    pub weights: WeightSystem,
    pub free: bool,
    pub classification: Prop53Class,
    pub consistent: bool,
}

/// Every weight system in `[−bound, bound]` satisfying the cone condition,
/// in lexicographic order, with its freeness verdict.
pub fn enumeration_records(bound: i64) -> Result<Vec<EnumerationRecord>> {
    par_enumerate_star_systems(bound)
        .into_iter()
        .map(|ws| {
            let d = derive(&ws)?;
            let v = freeness_check(&d, Some(&ws))?;
            Ok(EnumerationRecord {
                weights: ws,
                free: v.free,
                classification: classify_by_weights(&ws),
                consistent: v.prop53_consistent,
            })
        })
        .collect()
}

/// Summary report for an enumeration; the records themselves are streamed
/// separately.
pub fn enumeration_summary(config: &RunConfig, records: &[EnumerationRecord]) -> Report {
    let free = records.iter().filter(|r| r.free).count();
    let nontrivial_left = records.iter().filter(|r| !r.weights.left_is_trivial()).count();
    let inconsistent = records.iter().filter(|r| !r.consistent).count();
    let results = json!({
        "bound": config.bound,
        "count": records.len(),
        "free": free,
        "orbifold": records.len() - free,
        "nontrivial_left": nontrivial_left,
        "inconsistent": inconsistent,
    });
    Report::new("enumerate", config, results, inconsistent == 0)
}

/// Basic and de Rham Betti numbers, the Lefschetz check and the Hodge
/// diamond for the configured `β`, plus both branches.
pub fn cmd_cohomology(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let beta = config.hodge_beta()?;
    let basic = basic_model();
    basic.validate()?;
    let basic_betti = basic.graded_dims();
    let lefschetz = lefschetz_check(&basic);
    let derham = dga_cohomology(&su3_derham_model())?;
    let control = dga_cohomology(&derham_model([[int(1), int(0)], [int(1), int(0)]])?)?;
    let table = hodge_model(beta)?;
    let generic = hodge_model(HodgeBeta::generic())?;
    let degenerate = hodge_model(HodgeBeta::degenerate())?;
    let fixed: Vec<Vec<Option<usize>>> =
        (0..5).map(|p| (0..5).map(|q| printed_diamond(p, q)).collect()).collect();
    let pass = derham.betti == SU3_BETTI
        && basic_betti == [1, 0, 2, 0, 2, 0, 1]
        && lefschetz.cube_nonzero
        && lefschetz.hard_lefschetz
        && control.betti != SU3_BETTI
        && generic.branch != degenerate.branch;
    let results = json!({
        "betti": derham.betti,
        "basic_betti": basic_betti,
        "lefschetz": lefschetz,
        "negative_control": { "dw1 = dw2 = x2": control.betti },
        "hodge": {
            "fixed": fixed,
            "branch": table.branch,
            "table": table,
        },
        "branches": {
            "generic": generic.branch,
            "degenerate": degenerate.branch,
        },
    });
    Ok(Report::new("cohomology", config, results, pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_input_kinds() {
        let ws = parse_input_json(r#"{"wL": [[-1,1],[-1,1],[2,-2]], "wR": [[-4,1],[5,-5],[-1,4]]}"#).unwrap();
        assert_eq!(ws, Input::Weights(WeightSystem::worked_example()));
        let cd = parse_input_json(r#"{"A": [[1,0],[1,0],[2,-1]], "B": [[0,1],[0,1],[-1,2]]}"#).unwrap();
        assert_eq!(cd, Input::Cone(DerivedConeData::worked_example()));
        let e = parse_input_json(r#"{"wL": [[0,0],[0,0],[0,0]]}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(parse_input_json("[1, 2]").unwrap_err().exit_code(), 2);
        assert_eq!(parse_input_json("{").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn characters() {
        assert_eq!(format_character([-1, 1]), "t1^-1*t2");
        assert_eq!(format_character([0, 0]), "1");
        assert_eq!(format_diag(&WeightSystem::worked_example().right), "diag(t1^-4*t2, t1^5*t2^-5, t1^-1*t2^4)");
    }

    #[test]
    fn beta_parsing() {
        assert_eq!(parse_beta("1/2,3").unwrap(), HodgeBeta::rational(Rat::new(1, 2), int(3)));
        assert_eq!(parse_beta("0,0").unwrap_err().exit_code(), 2);
        assert_eq!(parse_beta("1").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn check_and_generate_reports() {
        let cfg = RunConfig::with_input(&Input::Weights(WeightSystem::worked_example()));
        let r = cmd_check(&cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.results["interpolation"]["holds"], true);

        let zero = WeightSystem::new([[0, 0]; 3], [[0, 0]; 3]).unwrap();
        assert!(!cmd_check(&RunConfig::with_input(&Input::Weights(zero))).unwrap().pass);

        let cfg = RunConfig::with_input(&Input::Cone(DerivedConeData::worked_example()));
        let r = cmd_generate(&cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.results["scale"], 3);
        assert_eq!(r.results["rho_L"], "diag(t1^-1*t2, t1^-1*t2, t1^2*t2^-2)");
    }

    #[test]
    fn zero_samples_is_config_error() {
        let mut cfg = RunConfig::with_input(&Input::Weights(WeightSystem::worked_example()));
        cfg.samples = 0;
        assert_eq!(cmd_verify(&cfg).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn cohomology_report() {
        let r = cmd_cohomology(&RunConfig::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.results["betti"], json!([1, 0, 0, 1, 0, 1, 0, 0, 1]));
        assert_eq!(r.results["branches"]["degenerate"], json!([1, 2, 1]));
    }
}
