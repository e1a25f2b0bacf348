use std::path::Path;

use serde_json::{json, Value};

use quadp3::geometry::{
    birational_check, compare_intersections, components, ideal_dim_report, incidence_summary, intersection_points,
    jacobian_checks, pairwise_intersections, verify_components, GeometryError,
};
use quadp3::golden::{point_minors, line_quartics, compare_sets, parse_poly_list, M_VARS, X_VARS};
use quadp3::groebner::{buchberger, GroebnerError};
use quadp3::linescheme::{line_scheme_system, BracketRewriter};
use quadp3::multipoly::{MPoly, MonomialOrder, VarSet};
use quadp3::ncalg::{is_normalizing_in_degree_three, normalizing_elements, ClearDenominators, QuadAlgebra};
use quadp3::pointscheme::{coinciding_pairs, enumerate_points, point_ideal, sigma_report, verify_points, SchemePoint};
use quadp3::scalars::{Field, RatFunc, Rational, Ring, ScalarError, Specialize, TowerElem};
use quadp3::towers::Towers;

use crate::report::witness;
use crate::{load_algebra, parse_poly_file, read_input, AlphaMode, Artifact, CliError, Command, Report, RunConfig};

/// Fixed seed for the randomized Jacobian samples, so reports are
/// reproducible.
const JACOBIAN_SEED: u64 = 0x5eed_0003;
const JACOBIAN_SAMPLES: usize = 6;

pub(crate) fn dispatch(cfg: &RunConfig) -> Result<(Report, Vec<Artifact>), CliError> {
    match &cfg.command {
        Command::Groebner => groebner(cfg),
        cmd => {
            let (name, text, alg) = load_algebra(cfg.input.as_deref())?;
            let sub = match cmd {
                Command::PointScheme => "point-scheme",
                Command::LineScheme => "line-scheme",
                Command::Verify => "verify",
                Command::IdealDim(_) => "ideal-dim",
                _ => "all",
            };
            let mut report = Report::new(sub, &name, text.as_bytes(), cfg.describe());
            let mut artifacts = Vec::new();
            match cmd {
                Command::PointScheme => artifacts.extend(point_scheme(cfg, &alg, &mut report)?),
                Command::LineScheme => artifacts.extend(line_scheme(cfg, &alg, &mut report)?),
                Command::Verify => verify(cfg, &alg, &mut report),
                Command::IdealDim(args) => ideal_dim(&alg, &args.delta, &args.epsilon, &mut report)?,
                _ => {
                    for (prefix, sub) in [("point-scheme", Command::PointScheme), ("line-scheme", Command::LineScheme)] {
                        let mut r = Report::new(prefix, &name, text.as_bytes(), Value::Null);
                        artifacts.extend(match sub {
                            Command::PointScheme => point_scheme(cfg, &alg, &mut r)?,
                            _ => line_scheme(cfg, &alg, &mut r)?,
                        });
                        report.absorb(prefix, r);
                    }
                    let mut r = Report::new("verify", &name, text.as_bytes(), Value::Null);
                    verify(cfg, &alg, &mut r);
                    report.absorb("verify", r);
                    let mut r = Report::new("ideal-dim", &name, text.as_bytes(), Value::Null);
                    ideal_dim(&alg, "-1", "1", &mut r)?;
                    report.absorb("ideal-dim", r);
                    hilbert_checks(cfg, &alg, &mut report);
                }
            }
            Ok((report, artifacts))
        }
    }
}

/// Whether `alg` presents the same algebra as the bundled A(alpha).
fn is_a_alpha(alg: &QuadAlgebra<RatFunc>) -> bool {
    let a = QuadAlgebra::a_alpha();
    alg.gens() == a.gens() && alg.coefficient_matrix().rref().0 == a.coefficient_matrix().rref().0
}

fn specialize_algebra(cfg: &RunConfig, alg: &QuadAlgebra<RatFunc>, v: &Rational) -> Result<QuadAlgebra<Rational>, ScalarError> {
    if cfg.allow_degenerate {
        alg.specialize_unchecked(v)
    } else {
        alg.specialize(v)
    }
}

fn specialize_all(polys: &[MPoly<RatFunc>], v: &Rational) -> Result<Vec<MPoly<Rational>>, ScalarError> {
    polys.iter().map(|p| p.specialize(v)).collect()
}

/// The reference list: `--golden` if given, the bundled list for A(alpha),
/// nothing otherwise.
fn golden_list(
    cfg: &RunConfig,
    alg: &QuadAlgebra<RatFunc>,
    names: &[&str],
    bundled: fn() -> Vec<MPoly<RatFunc>>,
) -> Result<Option<Vec<MPoly<RatFunc>>>, CliError> {
    match &cfg.golden {
        Some(path) => {
            let text = read_input(path)?;
            let vars = VarSet::new(names).expect("distinct names");
            let list = parse_poly_list(&text, &vars).map_err(|(line, e)| CliError::Parse {
                path: path.display().to_string(),
                message: format!("line {line}: {e}"),
            })?;
            Ok(Some(list))
        }
        None if is_a_alpha(alg) => Ok(Some(bundled())),
        None => Ok(None),
    }
}

/// One monic polynomial per line, terms in grevlex order.
fn text_lines<K: Field>(polys: &[MPoly<K>]) -> String {
    polys.iter().map(|p| p.monic(MonomialOrder::GrevLex).to_string_with(MonomialOrder::GrevLex) + "\n").collect()
}

fn minor_checks<K: Field>(
    alg: &QuadAlgebra<K>,
    golden: Option<Vec<MPoly<K>>>,
    report: &mut Report,
) -> Option<Vec<MPoly<K>>> {
    let ideal = match point_ideal(alg) {
        Ok(i) => i,
        Err(e) => {
            report.check("minors", || Err::<(bool, Value), _>(e));
            return None;
        }
    };
    let gens = ideal.generators.clone();
    report.check("minors", || Ok::<_, CliError>((gens.len() == 15, json!({ "count": gens.len() }))));
    if ideal.is_zero() {
        report.note("point scheme = ℙ³");
        report.check("zero_minors", || Ok::<_, CliError>((true, json!({ "zero": gens.len(), "point_scheme": "ℙ³" }))));
        return Some(gens);
    }
    if let Some(g) = golden {
        report.check("golden_match", || {
            let cmp = compare_sets(&gens, &g, |p| p.monic(MonomialOrder::GrevLex));
            Ok::<_, CliError>((cmp.matched, witness(&cmp)))
        });
    }
    Some(gens)
}

fn specialized_point(p: &SchemePoint, v: &Rational) -> Result<Vec<TowerElem<Rational>>, ScalarError> {
    let t = Towers::get();
    p.coords.iter().map(|c| t.to_full(c).specialize(v)).collect()
}

fn point_scheme(cfg: &RunConfig, alg: &QuadAlgebra<RatFunc>, report: &mut Report) -> Result<Vec<Artifact>, CliError> {
    let golden = golden_list(cfg, alg, &X_VARS, point_minors)?;
    let text = match &cfg.alpha {
        AlphaMode::Symbolic => minor_checks(alg, golden, report).map(|g| text_lines(&g)),
        AlphaMode::Value(v) => {
            let spec = specialize_algebra(cfg, alg, v).and_then(|a| {
                let g = golden.map(|g| specialize_all(&g, v)).transpose()?;
                Ok((a, g))
            });
            match spec {
                Ok((a, g)) => minor_checks(&a, g, report).map(|g| text_lines(&g)),
                Err(e) => {
                    report.check("minors", || Err::<(bool, Value), _>(e));
                    None
                }
            }
        }
    };
    if is_a_alpha(alg) {
        point_checks(cfg, alg, report);
    }
    Ok(text.map(|contents| Artifact { name: "point-scheme.txt".into(), contents }).into_iter().collect())
}

fn point_checks(cfg: &RunConfig, alg: &QuadAlgebra<RatFunc>, report: &mut Report) {
    let points = enumerate_points();
    report.check("points_vanish", || -> Result<_, CliError> {
        let failing: Vec<Value> = match &cfg.alpha {
            AlphaMode::Symbolic => {
                let ideal = point_ideal(alg).map_err(|e| CliError::Argument(e.to_string()))?;
                verify_points(&ideal, &points)
                    .into_iter()
                    .filter(|c| !c.vanishes)
                    .map(|c| json!({ "point": c.label, "generators": c.failing_generators }))
                    .collect()
            }
            AlphaMode::Value(v) => {
                let a = specialize_algebra(cfg, alg, v).map_err(|e| CliError::Argument(e.to_string()))?;
                let ideal = point_ideal(&a).map_err(|e| CliError::Argument(e.to_string()))?;
                let mut out = Vec::new();
                for p in &points {
                    let c = specialized_point(p, v).map_err(|e| CliError::Argument(e.to_string()))?;
                    let bad: Vec<usize> = (0..ideal.generators.len())
                        .filter(|&k| !ideal.generators[k].eval(&c, |x| TowerElem::from_base(x.clone())).is_zero())
                        .collect();
                    if !bad.is_empty() {
                        out.push(json!({ "point": p.label, "generators": bad }));
                    }
                }
                out
            }
        };
        Ok((failing.is_empty(), json!({ "points": points.len(), "failing": failing })))
    });
    report.check("points_distinct", || -> Result<_, CliError> {
        let mut per_alpha = serde_json::Map::new();
        let mut ok = points.len() == 20;
        for v in cfg.alpha.check_values() {
            let pairs = coinciding_pairs(&points, &v).map_err(|e| CliError::Argument(e.to_string()))?;
            ok &= pairs.is_empty();
            per_alpha.insert(v.to_string(), witness(&pairs));
        }
        Ok((ok, json!({ "points": points.len(), "coinciding_pairs": per_alpha })))
    });
    report.check("sigma", || -> Result<_, CliError> {
        let s = sigma_report(alg, &points).map_err(|e| CliError::Argument(e.to_string()))?;
        let ok = s.passed() && s.orbits.len() == 10;
        Ok((ok, json!({ "orbits": s.orbits.len(), "report": witness(&s) })))
    });
}

fn line_checks<K: ClearDenominators>(
    alg: &QuadAlgebra<K>,
    golden: Option<Vec<MPoly<K>>>,
    report: &mut Report,
) -> Option<String> {
    let rw = BracketRewriter::new();
    let sys = match line_scheme_system(alg, &rw) {
        Ok(s) => s,
        Err(e) => {
            report.check("system", || Err::<(bool, Value), _>(e));
            return None;
        }
    };
    let summary = sys.summary(&rw);
    let shape = (sys.doubled.nrows(), sys.doubled.ncols());
    report.check("minors", || {
        Ok::<_, CliError>((shape == (10, 8) && summary.minors == 45, json!({ "matrix": [shape.0, shape.1], "minors": summary.minors })))
    });
    report.check("bidegree", || Ok::<_, CliError>((summary.bidegree_ok, json!({ "bidegree": [4, 4] }))));
    report.check("round_trip", || {
        Ok::<_, CliError>((summary.round_trip_failures.is_empty(), json!({ "failures": summary.round_trip_failures })))
    });
    report.check("summary", || Ok::<_, CliError>((true, witness(&summary))));
    if let Some(g) = golden {
        report.check("golden_match", || {
            let cmp = sys.compare(&g);
            Ok::<_, CliError>((cmp.matched && cmp.computed == 46, witness(&cmp)))
        });
    }
    Some(text_lines(&sys.polynomials()))
}

fn line_scheme(cfg: &RunConfig, alg: &QuadAlgebra<RatFunc>, report: &mut Report) -> Result<Vec<Artifact>, CliError> {
    let golden = golden_list(cfg, alg, &M_VARS, line_quartics)?;
    let text = match &cfg.alpha {
        AlphaMode::Symbolic => line_checks(alg, golden, report),
        AlphaMode::Value(v) => {
            let spec = specialize_algebra(cfg, alg, v).and_then(|a| {
                let g = golden.map(|g| specialize_all(&g, v)).transpose()?;
                Ok((a, g))
            });
            match spec {
                Ok((a, g)) => line_checks(&a, g, report),
                Err(e) => {
                    report.check("system", || Err::<(bool, Value), _>(e));
                    None
                }
            }
        }
    };
    Ok(text.map(|contents| Artifact { name: "line-scheme.txt".into(), contents }).into_iter().collect())
}

fn verify(cfg: &RunConfig, alg: &QuadAlgebra<RatFunc>, report: &mut Report) {
    let alphas = cfg.alpha.check_values();
    let rw = BracketRewriter::new();
    let system = match line_scheme_system(alg, &rw) {
        Ok(s) => s.polynomials(),
        Err(e) => {
            report.check("system", || Err::<(bool, Value), _>(e));
            return;
        }
    };
    let comps = components();
    report.check("components", || -> Result<_, GeometryError> {
        let r = verify_components(&system, &alphas, cfg.budget)?;
        Ok((r.passed && r.components.len() == 8, witness(&r)))
    });
    let found = pairwise_intersections(&comps);
    report.check("intersections", || -> Result<_, GeometryError> {
        let r = compare_intersections(found.as_ref().map_err(Clone::clone)?, &alphas)?;
        Ok((r.passed, witness(&r)))
    });
    report.check("incidence", || -> Result<_, GeometryError> {
        let r = incidence_summary(&comps, &system, &enumerate_points(), &alphas)?;
        Ok((r.passed, witness(&r)))
    });
    report.check("jacobians", || -> Result<_, GeometryError> {
        let r = jacobian_checks(&alphas, JACOBIAN_SAMPLES, JACOBIAN_SEED, cfg.budget)?;
        Ok((r.passed, witness(&r)))
    });
    report.check("birational", || -> Result<_, GeometryError> {
        let r = birational_check()?;
        Ok((r.passed, witness(&r)))
    });
}

fn ideal_dim(alg: &QuadAlgebra<RatFunc>, delta: &str, epsilon: &str, report: &mut Report) -> Result<(), CliError> {
    let parse = |flag: &str, s: &str| -> Result<RatFunc, CliError> {
        s.parse().map_err(|_| CliError::Argument(format!("--{flag} {s}")))
    };
    let (d, e) = (parse("delta", delta)?, parse("epsilon", epsilon)?);
    report.check("normalizing_in_degree_three", || {
        let ok = is_normalizing_in_degree_three(alg, &normalizing_elements(&d, &e))?;
        Ok::<_, quadp3::ncalg::NcError>((ok, json!({ "delta": d.to_string(), "epsilon": e.to_string() })))
    });
    report.check("intersection_dims", || -> Result<_, GeometryError> {
        let found = pairwise_intersections(&components())?;
        let r = ideal_dim_report(alg, &d, &e, &intersection_points(&found))?;
        Ok((r.passed && r.dims.len() == 20, witness(&r)))
    });
    Ok(())
}

/// Projective dimension and degree of the point and line ideals after
/// specializing alpha.
fn hilbert_checks(cfg: &RunConfig, alg: &QuadAlgebra<RatFunc>, report: &mut Report) {
    for v in cfg.alpha.check_values() {
        let spec = specialize_algebra(cfg, alg, &v);
        report.check(&format!("hilbert/point-ideal/alpha={v}"), || -> Result<_, String> {
            let a = spec.as_ref().map_err(|e| e.to_string())?;
            let ideal = point_ideal(a).map_err(|e| e.to_string())?;
            let gb = buchberger(&ideal.generators, MonomialOrder::GrevLex, cfg.budget).map_err(|e| e.to_string())?;
            let h = gb.hilbert_data(4).map_err(|e| e.to_string())?;
            Ok(((h.dimension, h.degree) == (0, 20), witness(&h)))
        });
        report.check(&format!("hilbert/line-ideal/alpha={v}"), || -> Result<_, String> {
            let a = spec.as_ref().map_err(|e| e.to_string())?;
            let sys = line_scheme_system(a, &BracketRewriter::new()).map_err(|e| e.to_string())?;
            let gb = buchberger(&sys.polynomials(), MonomialOrder::GrevLex, cfg.budget).map_err(|e| e.to_string())?;
            let h = gb.hilbert_data(6).map_err(|e| e.to_string())?;
            Ok(((h.dimension, h.degree) == (1, 20), witness(&h)))
        });
    }
}

fn groebner_checks<K: Field>(
    gens: &[MPoly<K>],
    cfg: &RunConfig,
    report: &mut Report,
) -> Option<String> {
    let gb = match buchberger(gens, cfg.order, cfg.budget) {
        Ok(gb) => gb,
        Err(e) => {
            report.check("basis", || Err::<(bool, Value), GroebnerError>(e));
            return None;
        }
    };
    let n = gb.vars().len();
    report.check("basis", || {
        Ok::<_, GroebnerError>((gb.verify(), json!({
            "order": cfg.order.to_string(),
            "size": gb.len(),
            "stats": witness(&gb.stats()),
            "basis": gb.basis().iter().map(|p| p.to_string_with(cfg.order)).collect::<Vec<_>>(),
        })))
    });
    report.check("hilbert", || {
        let h = gb.hilbert_data(n)?;
        Ok::<_, GroebnerError>((true, witness(&h)))
    });
    Some(gb.basis().iter().map(|p| p.to_string_with(cfg.order) + "\n").collect())
}

fn groebner(cfg: &RunConfig) -> Result<(Report, Vec<Artifact>), CliError> {
    let path = cfg.input.as_deref().ok_or_else(|| CliError::Argument("groebner needs a polynomial list file".into()))?;
    let text = read_input(path)?;
    let (vars, body) = parse_poly_file(path, &text)?;
    let polys: Vec<MPoly<RatFunc>> = parse_poly_list(&body, &vars).map_err(|(line, e)| CliError::Parse {
        path: path.display().to_string(),
        message: format!("polynomial {line}: {e}"),
    })?;
    if polys.is_empty() {
        return Err(parse_error(path, "no polynomials"));
    }
    let mut report = Report::new("groebner", &path.display().to_string(), text.as_bytes(), cfg.describe());
    let out = match &cfg.alpha {
        AlphaMode::Symbolic => groebner_checks(&polys, cfg, &mut report),
        AlphaMode::Value(v) => {
            let spec = specialize_all(&polys, v).map_err(|e| parse_error(path, &e.to_string()))?;
            groebner_checks(&spec, cfg, &mut report)
        }
    };
    Ok((report, out.map(|contents| Artifact { name: "groebner.txt".into(), contents }).into_iter().collect()))
}

fn parse_error(path: &Path, message: &str) -> CliError {
    CliError::Parse { path: path.display().to_string(), message: message.to_string() }
}
