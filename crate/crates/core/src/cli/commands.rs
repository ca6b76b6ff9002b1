use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::construction::{
    build_ab, build_xy, check_factorization, derive, random_identity_suite, verify_family,
    verify_perturbation, ConstructionParams,
};
use crate::exact::{big, parse_matrix, parse_scalar, scalar_to_string, to_decimal, ExactMatrix, Scalar};
use crate::graphs::{alpha_grp_exhaustive, build_quotient, lift_bound, ExplicitGraph, FractionGraphPower};
use crate::lattice::{certify, SubgroupSet};
use crate::limits::{convergence_csv, convergence_table, scan, scan_csv, spot_check, ScanLimits};
use crate::mis::{alpha_base, solve, solve_vertex_transitive};
use crate::report::{first_failure, Check, CheckStatus};

use super::args::{Command, ParamArgs};
use super::{CliError, Report, RunConfig};

pub fn dispatch(command: &Command, config: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Construct(p) => construct(p, config),
        Command::Verify { params, instances } => match params {
            Some(v) => verify(&params_from_slice(v)?, config),
            None => identities(*instances, config),
        },
        Command::ConstructXy(p) => construct_xy(p),
        Command::Quotient { p, q, power, generators } => quotient(*p, *q, *power, generators, config),
        Command::Mis { graph, dimacs, general } => mis(graph.as_deref(), dimacs.as_deref(), *general, config),
        Command::Bohman { d, ell } => bohman(*d, *ell, config),
        Command::Scan { window, n_max, k_max, b_max, s_max, spot_fraction } => {
            let limits = ScanLimits { n_max: *n_max, k_max: *k_max, b_max: *b_max, s_max: *s_max };
            scan_cmd(&limits, window, *spot_fraction, config)
        }
        Command::Limit { epsilon, x } => limit(epsilon, x),
        Command::VerifyMatrix { a_file, b_file, p, q } => verify_matrix(a_file, b_file, p, q, config),
        Command::AlphaGrp { p, q, n } => alpha_grp(*p, *q, *n, config),
    }
}

fn params(p: &ParamArgs) -> Result<ConstructionParams, CliError> {
    Ok(ConstructionParams::new(p.n, p.k, p.b, p.r, p.s)?)
}

fn params_from_slice(v: &[u64]) -> Result<ConstructionParams, CliError> {
    let n = u32::try_from(v[0]).map_err(|_| CliError::Usage(format!("n = {} is too large", v[0])))?;
    Ok(ConstructionParams::new(n, v[1], v[2], v[3], v[4])?)
}

fn matrix_json(m: &ExactMatrix) -> Value {
    m.rows()
        .map(|r| r.iter().map(scalar_to_string).collect::<Vec<_>>())
        .collect()
}

fn subgroup_json(s: &SubgroupSet, limit: u64) -> Value {
    let mut v = json!({
        "modulus": s.modulus(),
        "order": s.len(),
        "generators": s.generators(),
    });
    if s.len() as u64 <= limit {
        v["elements"] = json!(s.elements());
    }
    v
}

fn scalar_arg(token: &str, what: &str) -> Result<Scalar, CliError> {
    parse_scalar(token).ok_or_else(|| CliError::Usage(format!("invalid {what} {token:?}")))
}

fn integer_arg(token: &str, what: &str) -> Result<BigInt, CliError> {
    token
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid {what} {token:?}")))
}

fn construct(p: &ParamArgs, config: &RunConfig) -> Result<Report, CliError> {
    let params = params(p)?;
    let t = derive(&params)?;
    let (a, b) = build_ab(&params)?;
    let cert = certify(&a, &b, &t.p, &t.q, &config.caps);
    let degenerate = t.p == t.q;
    let mut body = json!({
        "params": params,
        "a": t.a.to_string(),
        "p": t.p.to_string(),
        "q": t.q.to_string(),
        "degenerate": degenerate,
        "A": matrix_json(&a),
        "B": matrix_json(&b),
        "subgroup": cert.subgroup.as_ref().map(|s| subgroup_json(s, config.caps.materialization)),
        "certificate": cert.to_json(),
    });
    if degenerate {
        body["note"] = json!("p/q = 1: the graph is a single vertex");
    }
    Ok(Report::json(body, cert.is_valid(), cert.failed_check()))
}

fn verify(params: &ConstructionParams, config: &RunConfig) -> Result<Report, CliError> {
    let report = verify_family(params, &config.caps)?;
    let reason = first_failure(&report.checks).or_else(|| report.certificate.failed_check());
    Ok(Report::json(report.to_json(), report.is_valid(), reason))
}

fn identities(instances: usize, config: &RunConfig) -> Result<Report, CliError> {
    let report = random_identity_suite(config.seed, instances);
    let ok = report.all_passed();
    Ok(Report::json(
        serde_json::to_value(&report).expect("plain data"),
        ok,
        (!ok).then(|| "an identity failed on a random instance".to_string()),
    ))
}

fn construct_xy(p: &ParamArgs) -> Result<Report, CliError> {
    let params = params(p)?;
    let t = derive(&params)?;
    let (x, y) = build_xy(&params)?;
    let (a, b) = build_ab(&params)?;
    let p_scalar = big(t.p.clone());
    let mut checks = vec![
        Check::new(
            "product",
            CheckStatus::from_bool(a.try_mul(&b)?.is_identity_multiple(&p_scalar)),
            format!("A·B = {}·I", t.p),
        ),
        Check::new(
            "det",
            CheckStatus::from_bool(b.det() == p_scalar),
            format!("det B = {}", scalar_to_string(&b.det())),
        ),
    ];
    checks.push(match check_factorization(&params) {
        Ok(ok) => Check::new("factorization", CheckStatus::from_bool(ok), "X and Y match their diagonal factorizations"),
        Err(e) => Check::new("factorization", CheckStatus::Skipped, e.to_string()),
    });
    let ok = checks.iter().all(|c| c.status != CheckStatus::Fail);
    let reason = first_failure(&checks);
    let body = json!({
        "params": params,
        "a": t.a.to_string(),
        "p": t.p.to_string(),
        "q": t.q.to_string(),
        "X": matrix_json(&x),
        "Y": matrix_json(&y),
        "A": matrix_json(&a),
        "B": matrix_json(&b),
        "checks": checks,
    });
    Ok(Report::json(body, ok, reason))
}

fn parse_generators(text: &str, n: usize) -> Result<Vec<Vec<u64>>, CliError> {
    text.split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| {
            let v: Vec<u64> = g
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("invalid generator {g:?}")))?;
            if v.len() != n {
                return Err(CliError::Usage(format!(
                    "generator {g:?} has {} coordinates, expected {n}",
                    v.len()
                )));
            }
            Ok(v)
        })
        .collect()
}

fn quotient(p: u64, q: u64, n: usize, generators: &str, config: &RunConfig) -> Result<Report, CliError> {
    let base = FractionGraphPower::new(p, q, n)?;
    let gens = parse_generators(generators, n)?;
    let quotient = build_quotient(base, &gens, config.caps.materialization)?;
    let mis = solve_vertex_transitive(&quotient.graph, &config.budget)?;
    let lifted = lift_bound(&quotient, &mis.witness)?;
    let witness: Vec<&Vec<u64>> = mis.witness.iter().map(|&c| &quotient.representatives[c]).collect();
    let body = json!({
        "p": p,
        "q": q,
        "n": n,
        "generators": gens,
        "subgroup_order": lifted.subgroup_order,
        "cosets": quotient.coset_count(),
        "quotient_edges": quotient.graph.edge_count(),
        "quotient_alpha": lifted.quotient_alpha,
        "bound": lifted.bound,
        "optimal": mis.optimal,
        "verified": lifted.verified,
        "nodes": mis.nodes_explored,
        "time_budget_hit": mis.time_budget_hit,
        "witness_representatives": witness,
        "claim": format!("α(E_{{{p}/{q}}}^⊠{n}) ≥ {}", lifted.bound),
    });
    let ok = mis.optimal && lifted.verified;
    let reason = (!mis.optimal).then(|| "MIS search budget exhausted before optimality".to_string());
    Ok(Report::json(body, ok, reason))
}

fn mis(graph: Option<&[u64]>, dimacs: Option<&Path>, general: bool, config: &RunConfig) -> Result<Report, CliError> {
    let (g, fraction, transitive): (ExplicitGraph, Option<FractionGraphPower>, bool) = match (graph, dimacs) {
        (Some(v), None) => {
            let f = FractionGraphPower::new(v[0], v[1], v[2] as usize)?;
            (f.materialize(config.caps.materialization)?, Some(f), !general)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            (ExplicitGraph::from_dimacs(&text)?, None, false)
        }
        _ => return Err(CliError::Usage("give either P Q N or --dimacs FILE".into())),
    };
    let result = if transitive {
        solve_vertex_transitive(&g, &config.budget)?
    } else {
        solve(&g, &config.budget)?
    };
    let mut body = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "alpha": result.size,
        "optimal": result.optimal,
        "nodes": result.nodes_explored,
        "time_budget_hit": result.time_budget_hit,
        "solver": if transitive { "vertex-transitive" } else { "general" },
        "witness": result.witness,
    });
    if let Some(f) = fraction {
        let tuples: Vec<Vec<u64>> = result.witness.iter().map(|&i| f.vertex_at(i)).collect();
        body["witness_vertices"] = json!(tuples);
        body["graph"] = json!({ "p": f.p, "q": f.q, "n": f.n });
        if f.n == 1 {
            body["alpha_base"] = json!(alpha_base(f.p, f.q));
        }
    }
    let reason = (!result.optimal).then(|| "MIS search budget exhausted before optimality".to_string());
    Ok(Report::json(body, result.optimal, reason))
}

fn bohman(d: u32, ell: u64, config: &RunConfig) -> Result<Report, CliError> {
    let report = verify_perturbation(d, ell, config.caps.p0_order)?;
    Ok(Report::json(report.to_json(), report.is_valid(), first_failure(&report.checks)))
}

fn parse_window(window: &str) -> Result<(Scalar, Scalar), CliError> {
    let (lo, hi) = window
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("window {window:?} is not lo:hi")))?;
    let lo = scalar_arg(lo, "window bound")?;
    let hi = scalar_arg(hi, "window bound")?;
    if lo > hi {
        return Err(CliError::Usage(format!("empty window {window:?}")));
    }
    Ok((lo, hi))
}

fn scan_cmd(limits: &ScanLimits, window: &str, fraction: f64, config: &RunConfig) -> Result<Report, CliError> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(CliError::Usage("--spot-fraction must lie in [0, 1]".into()));
    }
    let (lo, hi) = parse_window(window)?;
    let points = scan(limits, &lo, &hi);
    let spot = spot_check(&points, fraction, config.seed, &config.caps);
    let rows: Vec<Value> = points
        .iter()
        .map(|pt| {
            json!({
                "ratio": scalar_to_string(&pt.ratio),
                "params": pt.params,
                "a": pt.a.to_string(),
                "p": pt.p.to_string(),
                "q": pt.q.to_string(),
                "bound_root": to_decimal(&pt.root.lower, 12),
                "family_tags": pt.tags,
                "pareto": pt.pareto,
                "upper_ref": scalar_to_string(&pt.ratio),
            })
        })
        .collect();
    let spot_json = serde_json::to_value(&spot).expect("plain data");
    let ok = spot.all_valid();
    Ok(Report {
        json: json!({ "limits": limits, "window": [scalar_to_string(&lo), scalar_to_string(&hi)], "points": rows, "spot_check": spot_json }),
        csv: Some(scan_csv(&points)),
        ok,
        reason: (!ok).then(|| format!("spot check failed for {:?}", spot.failures)),
        meta: json!({ "limits": limits, "spot_check": spot_json }),
    })
}

fn limit(epsilon: &str, xs: &[String]) -> Result<Report, CliError> {
    let eps = scalar_arg(epsilon, "epsilon")?;
    let xs: Vec<Scalar> = xs.iter().map(|x| scalar_arg(x, "target")).collect::<Result<_, _>>()?;
    let rows = convergence_table(&xs, &eps)?;
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "x": scalar_to_string(&r.x),
                "b": r.b,
                "m": r.m.to_string(),
                "r": r.r,
                "n_m": r.n_m,
                "params": r.params,
                "a": r.a.to_string(),
                "p": r.p.to_string(),
                "q": r.q.to_string(),
                "root_lower": to_decimal(&r.root.lower, 12),
                "gap_upper": to_decimal(&r.gap, 12),
                "delta_bound": scalar_to_string(&r.delta_bound),
                "gap_bound": scalar_to_string(&r.gap_bound),
                "degenerate": r.degenerate,
            })
        })
        .collect();
    Ok(Report {
        json: json!({ "epsilon": scalar_to_string(&eps), "rows": json_rows }),
        csv: Some(convergence_csv(&rows)),
        ok: true,
        reason: None,
        meta: json!({}),
    })
}

fn read_matrix(path: &Path, label: &str) -> Result<ExactMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| CliError::Usage(format!("{label} ({}): {e}", path.display())))
}

fn verify_matrix(a_file: &Path, b_file: &Path, p: &str, q: &str, config: &RunConfig) -> Result<Report, CliError> {
    let a = read_matrix(a_file, "A")?;
    let b = read_matrix(b_file, "B")?;
    let p = integer_arg(p, "p")?;
    let q = integer_arg(q, "q")?;
    let cert = certify(&a, &b, &p, &q, &config.caps);
    let mut body = cert.to_json();
    body["A"] = matrix_json(&a);
    body["B"] = matrix_json(&b);
    if let Some(s) = &cert.subgroup {
        body["subgroup"] = subgroup_json(s, config.caps.materialization);
    }
    Ok(Report::json(body, cert.is_valid(), cert.failed_check()))
}

fn alpha_grp(p: u64, q: u64, n: usize, config: &RunConfig) -> Result<Report, CliError> {
    let value = alpha_grp_exhaustive(p, q, n, config.caps.exhaustive)?;
    let body = json!({
        "p": p,
        "q": q,
        "n": n,
        "alpha_grp": value,
        "claim": format!("α_grp(E_{{{p}/{q}}}^⊠{n}) = {value}"),
    });
    Ok(Report::json(body, true, None))
}
