use gcditer::cyclo::{cyclotomic_unit, verify_cyc_theorem, CycloElt};
use gcditer::matgcd::{
    eigen_mult_indep, hyperbolic_growth, pm_survey, primitivity_survey, EigenVerdict, IntMat,
    PolyMat,
};
use gcditer::polyarith::parse_poly;
use gcditer::polygcd::{check_progressions, gcd_sequence, levels_from_sequence, mult_indep_poly, PolyPair};
use gcditer::refine::Independence;
use gcditer::zgcd::{coprime_survey, mult_indep_int, IntPair, OrderOracle};
use gcditer::{BigInt, Error, RatPoly};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Experiment, ExperimentConfig};
use crate::CliError;

/// A JSON summary plus the per-`k` table used for CSV output.
pub(crate) struct Report {
    json: Value,
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Report {
    pub(crate) fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.json).expect("serializable");
        text.push('\n');
        text
    }

    pub(crate) fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

fn input(param: &'static str) -> impl FnOnce(Error) -> CliError {
    move |source| CliError::Input { param, source }
}

fn parse_int(param: &'static str, text: &str) -> Result<BigInt, CliError> {
    let trimmed = text.trim();
    trimmed.parse::<BigInt>().map_err(|_| CliError::Input {
        param,
        source: Error::Parse {
            input: text.to_string(),
            pos: text.len() - text.trim_start().len(),
            reason: format!("expected an integer, found {trimmed:?}"),
        },
    })
}

fn default_window(k_max: u64, window: Option<u64>) -> u64 {
    window.unwrap_or_else(|| (k_max / 3).max(1))
}

fn independence_json(ind: Independence) -> Value {
    match ind {
        Independence::Independent => json!({ "independent": true }),
        Independence::Dependent { r, s } => json!({ "independent": false, "r": r, "s": s }),
    }
}

fn fixed(x: f64) -> String {
    format!("{x:.6}")
}

pub(crate) fn build(config: &ExperimentConfig) -> Result<Report, CliError> {
    let k_max = config.k_max;
    match &config.experiment {
        Experiment::IntGcd { a, b, prime_bound } => intgcd(a, b, *prime_bound, k_max),
        Experiment::PolyGcd { f, g, stability_window } => {
            polygcd(f, g, default_window(k_max, *stability_window), k_max)
        }
        Experiment::MatGcd { matrix } => matgcd(matrix, k_max),
        Experiment::Hyperbolic { matrix } => hyperbolic(matrix, k_max),
        Experiment::PolyMat { matrix, stability_window } => {
            polymat(matrix, default_window(k_max, *stability_window), k_max)
        }
        Experiment::Cyclo { p, unit, coeffs } => cyclo(*p, *unit, coeffs.as_deref(), k_max),
    }
}

fn intgcd(a: &str, b: &str, prime_bound: Option<u64>, k_max: u64) -> Result<Report, CliError> {
    let pair = IntPair::new(parse_int("--a", a)?, parse_int("--b", b)?).map_err(input("--a/--b"))?;
    let survey = coprime_survey(&pair, k_max)?;

    let oracle = match prime_bound {
        None => Value::Null,
        Some(bound) => {
            let oracle = OrderOracle::new(&pair, bound).map_err(input("--prime-bound"))?;
            let smooth = survey
                .values
                .par_iter()
                .map(|(k, _)| oracle.smooth_part(*k))
                .collect::<Result<Vec<_>, _>>()?;
            let mismatches: Vec<u64> = survey
                .values
                .iter()
                .zip(&smooth)
                .filter(|((_, g), s)| g != *s)
                .map(|((k, _), _)| *k)
                .collect();
            json!({ "prime_bound": bound, "mismatches": mismatches })
        }
    };

    let rows: Vec<Vec<String>> = survey
        .values
        .iter()
        .map(|(k, g)| {
            vec![
                k.to_string(),
                g.to_string(),
                (*g == BigInt::from(1)).to_string(),
                fixed(gcditer::zgcd::GcdSurvey::log_ratio(*k, g)),
            ]
        })
        .collect();
    let json = json!({
        "command": "intgcd",
        "a": pair.a().to_string(),
        "b": pair.b().to_string(),
        "k_max": k_max,
        "independence": independence_json(mult_indep_int(&pair)),
        "base_gcd": pair.base_gcd().to_string(),
        "coprime_count": survey.coprime_ks.len(),
        "density": survey.density.to_string(),
        "max_log_ratio": { "k": survey.max_log_ratio.0, "value": survey.max_log_ratio.1 },
        "warnings": survey.warnings,
        "oracle": oracle,
        "rows": survey.values.iter().zip(&rows).map(|((k, g), row)| json!({
            "k": k,
            "gcd": g.to_string(),
            "is_coprime": row[2] == "true",
            "log_ratio": gcditer::zgcd::GcdSurvey::log_ratio(*k, g),
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        json,
        header: &["k", "gcd", "is_coprime", "log_ratio"],
        rows,
    })
}

fn polygcd(f: &str, g: &str, window: u64, k_max: u64) -> Result<Report, CliError> {
    let f = parse_poly(f).map_err(input("--f"))?;
    let g = parse_poly(g).map_err(input("--g"))?;
    let pair = PolyPair::new(f, g).map_err(input("--f/--g"))?;
    if window == 0 {
        return Err(CliError::Input {
            param: "--stability-window",
            source: Error::Precondition {
                param: "stability_window",
                reason: "must be at least 1".into(),
            },
        });
    }
    let values = gcd_sequence(&pair, k_max)?;
    let levels = levels_from_sequence(&values, window)?;
    let progress = check_progressions(&values, &levels.progressions);

    let rows: Vec<Vec<String>> = values
        .iter()
        .enumerate()
        .map(|(i, d)| vec![(i + 1).to_string(), d.to_string(), d.is_one().to_string()])
        .collect();
    let json = json!({
        "command": "polygcd",
        "f": pair.f().to_string(),
        "g": pair.g().to_string(),
        "k_max": k_max,
        "stability_window": window,
        "independence": independence_json(mult_indep_poly(&pair)),
        "levels": levels.levels.iter().map(|(d, p)| json!({ "d": d, "level": p.to_string() })).collect::<Vec<_>>(),
        "h_candidate": levels.h_candidate.to_string(),
        "progressions": levels.progressions,
        "stabilized": levels.stabilized,
        "progression_check": {
            "verified_up_to": progress.verified_up_to,
            "always_divides": progress.always_divides.as_ref().map(RatPoly::to_string),
            "violations": progress.violations.iter().map(|v| json!({
                "k": v.k,
                "gcd": v.gcd.to_string(),
                "predicted_trivial": v.predicted_trivial,
            })).collect::<Vec<_>>(),
        },
        "rows": values.iter().enumerate().map(|(i, d)| json!({
            "k": i + 1,
            "gcd": d.to_string(),
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        json,
        header: &["k", "gcd", "is_trivial"],
        rows,
    })
}

fn matgcd(matrix: &str, k_max: u64) -> Result<Report, CliError> {
    let a: IntMat = matrix.parse().map_err(input("--matrix"))?;
    let s = primitivity_survey(&a, k_max).map_err(input("--matrix"))?;
    let rows = s
        .rows
        .iter()
        .map(|r| vec![r.k.to_string(), r.content.to_string(), r.is_primitive.to_string()])
        .collect();
    let json = json!({
        "command": "matgcd",
        "matrix": a.to_string(),
        "k_max": k_max,
        "det": a.det().to_string(),
        "base_content": s.base_content.to_string(),
        "primitive_count": s.primitive_count(),
        "warnings": s.warnings,
        "rows": s.rows.iter().map(|r| json!({
            "k": r.k,
            "content": r.content.to_string(),
            "is_primitive": r.is_primitive,
            "det": r.det.to_string(),
            "content_divides_det": r.content_divides_det,
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        json,
        header: &["k", "content", "is_primitive"],
        rows,
    })
}

fn hyperbolic(matrix: &str, k_max: u64) -> Result<Report, CliError> {
    let a: IntMat = matrix.parse().map_err(input("--matrix"))?;
    let r = hyperbolic_growth(&a, k_max).map_err(input("--matrix"))?;
    let rows = r
        .samples
        .iter()
        .map(|s| vec![s.k.to_string(), s.content.to_string(), fixed(s.log_content)])
        .collect();
    let json = json!({
        "command": "hyperbolic",
        "matrix": a.to_string(),
        "k_max": k_max,
        "trace": r.trace.to_string(),
        "epsilon": r.epsilon,
        "fitted_slope": r.fitted_slope,
        "theoretical_slope": r.theoretical_slope,
        "samples": r.samples.iter().map(|s| json!({
            "k": s.k,
            "content": s.content.to_string(),
            "log_content": s.log_content,
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        json,
        header: &["k", "content", "log_content"],
        rows,
    })
}

fn eigen_json(a: &PolyMat) -> Value {
    let report = eigen_mult_indep(a);
    let verdict = match &report.verdict {
        EigenVerdict::IndependentPair(x, y) => json!({
            "kind": "independent_pair",
            "pair": [x.to_string(), y.to_string()],
        }),
        EigenVerdict::Dependent(rel) => json!({
            "kind": "dependent",
            "relations": rel.iter().map(|(x, y, r, s)| json!({
                "x": x.to_string(), "y": y.to_string(), "r": r, "s": s,
            })).collect::<Vec<_>>(),
        }),
        EigenVerdict::Unsupported(reason) => json!({ "kind": "unsupported", "reason": reason }),
    };
    json!({
        "verdict": verdict,
        "eigenvalues": report.eigenvalues.iter().map(RatPoly::to_string).collect::<Vec<_>>(),
        "skipped_pairs": report.skipped.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect::<Vec<_>>(),
    })
}

fn polymat(matrix: &str, window: u64, k_max: u64) -> Result<Report, CliError> {
    let a: PolyMat = matrix.parse().map_err(input("--matrix"))?;
    let s = pm_survey(&a, k_max, window).map_err(input("--matrix"))?;
    let rows = s
        .contents
        .iter()
        .enumerate()
        .map(|(i, c)| vec![(i + 1).to_string(), c.to_string(), c.is_one().to_string()])
        .collect();
    let json = json!({
        "command": "polymat",
        "matrix": a.to_string(),
        "k_max": k_max,
        "stability_window": window,
        "det": a.det().to_string(),
        "eigen": eigen_json(&a),
        "h": s.h.to_string(),
        "factors": s.factors.iter().map(|f| json!({
            "factor": f.factor.to_string(),
            "first_k": f.first_k,
        })).collect::<Vec<_>>(),
        "progressions": s.progressions,
        "stabilized": s.stabilized,
        "violations": s.violations.iter().map(|v| json!({
            "k": v.k,
            "factor": v.factor.to_string(),
            "divides": v.divides,
        })).collect::<Vec<_>>(),
        "det_failures": s.det_failures,
        "rows": s.contents.iter().enumerate().map(|(i, c)| json!({
            "k": i + 1,
            "content": c.to_string(),
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        json,
        header: &["k", "content", "is_primitive"],
        rows,
    })
}

fn cyclo(p: u32, unit: Option<u32>, coeffs: Option<&str>, k_max: u64) -> Result<Report, CliError> {
    let u = match (unit, coeffs) {
        (Some(a), None) => cyclotomic_unit(p, a).map_err(input("--unit"))?,
        (None, Some(text)) => CycloElt::parse(p, text).map_err(input("--coeffs"))?,
        _ => {
            return Err(CliError::Input {
                param: "--unit/--coeffs",
                source: Error::Precondition {
                    param: "u",
                    reason: "give exactly one of --unit and --coeffs".into(),
                },
            })
        }
    };
    let r = verify_cyc_theorem(p, &u, k_max).map_err(|e| {
        if e.is_mathematical() {
            CliError::Engine(e)
        } else {
            CliError::Input { param: "--p/--unit/--coeffs", source: e }
        }
    })?;
    let modulus = u64::from(p);
    let rows = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.k.to_string(),
                row.content.to_string(),
                row.is_primitive.to_string(),
                (row.k % modulus == 0).to_string(),
            ]
        })
        .collect();
    let json = json!({
        "command": "cyclo",
        "p": p,
        "unit": r.unit.to_string(),
        "k_max": k_max,
        "norm": r.norm.to_string(),
        "x": r.x,
        "primitive_count": r.primitive_count(),
        "exceptional": r.exceptional,
        "formula_checked_up_to": r.formula_checked_up_to,
        "rows": r.rows.iter().map(|row| json!({
            "k": row.k,
            "content": row.content.to_string(),
            "is_primitive": row.is_primitive,
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        json,
        header: &["k", "content", "is_primitive", "k_divisible_by_p"],
        rows,
    })
}
