use ctrace_core::determinantal::{
    mu_in_quotient, teter_formula, teter_verify, verify_mu_multiplicativity,
    verify_pq_identity, GenericMatrixContext, SegreContext, SymbolicMatrix,
};
use ctrace_core::hilbert_burch::{
    hb_check, hb_ideal, hb_trace, parse_matrix_file, parse_plain_matrix, semigroup_hb_trace, trace_of_specialization, Assertions,
    ViolationKind,
};
use ctrace_core::linalg::RankOptions;
use ctrace_core::tree::{alias_map, analyze_tree, Tree};
use ctrace_core::{Error, GeneratorIdeal, MonomialIdeal, Result, Var};
use serde_json::{json, Map, Value};

use crate::Outcome;

fn document(command: &str, inputs: Value) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(1));
    doc.insert("command".into(), json!(command));
    doc.insert("inputs".into(), inputs);
    doc
}

fn set(doc: &mut Map<String, Value>, key: &str, value: Value) {
    doc.insert(key.into(), value);
}

fn ideal_value(ideal: &GeneratorIdeal) -> Value {
    json!({ "count": ideal.len(), "generators": ideal.to_strings() })
}

fn monomial_ideal_value(ideal: &MonomialIdeal, alias: Option<&dyn Fn(&Var) -> String>) -> Value {
    let gens = match alias {
        Some(name) => ideal
            .to_strings_with(name)
            .into_iter()
            .map(|s| {
                let mut f: Vec<&str> = s.split('*').collect();
                f.sort_unstable();
                f.join("*")
            })
            .collect(),
        None => ideal.to_strings(),
    };
    json!({ "count": ideal.len(), "generators": gens })
}

fn matrix_value(m: &SymbolicMatrix) -> Value {
    json!(m.to_strings())
}

pub fn trace_generic(m: usize, n: usize, r: usize, power: Option<u32>, mu: bool, opts: &RankOptions) -> Result<Outcome> {
    let ctx = GenericMatrixContext::new(m, n, r)?;
    let l = power.unwrap_or_else(|| ctx.canonical_exponent());
    let mut doc = document(
        "trace-generic",
        json!({ "m": m, "n": n, "r": r, "power": l }),
    );
    set(&mut doc, "assumptions", json!([]));
    let mut notes = Vec::new();
    if ctx.transposed() {
        notes.push(format!("m > n: working with the transposed {} x {} matrix", ctx.m(), ctx.n()));
    }
    if ctx.is_gorenstein() && power.is_none() {
        notes.push("Gorenstein (m=n): the trace is the unit ideal".to_string());
    }
    if power.is_some() && l != ctx.canonical_exponent() {
        notes.push(format!(
            "power {l} differs from n - m = {}; this is I_r(X)^{l}, not the canonical trace",
            ctx.canonical_exponent()
        ));
    }
    let trace = ctx.trace(Some(l));
    set(&mut doc, "ring", json!(format!("K[X]/I_{}(X), X generic {} x {}", r + 1, ctx.m(), ctx.n())));
    set(&mut doc, "trace", ideal_value(&trace));
    if mu {
        let seg = SegreContext::new(&ctx);
        let mu_trace = mu_in_quotient(&trace, &seg, opts)?;
        set(&mut doc, "mu", json!(mu_trace));
        if !ctx.is_gorenstein() {
            let anti = ctx.anticanonical_module().mu(&seg, opts)?;
            set(&mut doc, "mu_anticanonical", json!(anti));
            notes.push("mu counts minimal generators in the determinantal ring; mu_anticanonical is the Teter number".into());
        }
    }
    set(&mut doc, "notes", json!(notes));
    Ok(Outcome::ok(doc))
}

pub fn teter(m: usize, n: usize, r: usize, verify: bool, opts: &RankOptions) -> Result<Outcome> {
    let mut doc = document("teter", json!({ "m": m, "n": n, "r": r }));
    let formula = teter_formula(m, n, r)?;
    set(&mut doc, "teter", json!(formula.to_string()));
    let mut inconsistent = false;
    if verify {
        let ctx = GenericMatrixContext::new(m, n, r)?;
        let seg = SegreContext::new(&ctx);
        let report = teter_verify(&ctx, &seg, opts)?;
        inconsistent = !report.agree;
        set(
            &mut doc,
            "verification",
            json!({
                "formula": report.formula.to_string(),
                "oracle": report.oracle,
                "agree": report.agree,
            }),
        );
    }
    Ok(Outcome { doc, inconsistent })
}

pub fn tree(edges: &str, vertices: Option<usize>, alias: bool, canonical: bool) -> Result<Outcome> {
    let mut t = Tree::parse(edges, vertices)?;
    if canonical {
        t = t.canonical();
    }
    let mut doc = document(
        "tree",
        json!({ "edges": t.to_string(), "vertices": t.n(), "alias": alias, "canonical": canonical }),
    );
    let report = analyze_tree(&t)?;
    let names = alias_map(&t);
    let rename = |v: &Var| names.get(v).cloned().unwrap_or_else(|| v.to_string());
    let name: Option<&dyn Fn(&Var) -> String> = if alias { Some(&rename) } else { None };
    if alias {
        let sorted: std::collections::BTreeMap<&String, String> =
            names.iter().map(|(v, a)| (a, v.to_string())).collect();
        let map: Map<String, Value> = sorted.into_iter().map(|(a, v)| (a.clone(), json!(v))).collect();
        set(&mut doc, "alias", Value::Object(map));
    }
    let matrix = match name {
        Some(f) => report.matrix.to_strings_with(f),
        None => report.matrix.to_strings(),
    };
    set(&mut doc, "matrix", json!(matrix));
    set(&mut doc, "ideal", monomial_ideal_value(&report.ideal, name));
    set(&mut doc, "trace_minors", monomial_ideal_value(&report.trace_minors, name));
    set(&mut doc, "trace_localized", monomial_ideal_value(&report.trace_localized, name));
    set(&mut doc, "verified", json!(report.verified));
    let mut notes = Vec::new();
    if report.trace_minors.is_unit() {
        notes.push("unit trace: the ring is Gorenstein".to_string());
    }
    if !report.verified {
        notes.push(
            "trace_minors + I differs from the sum of the monomial localizations; the localizations only see the row-expansion quotients"
                .to_string(),
        );
    }
    notes.push("generating sets are minimal over the polynomial ring, not necessarily over the quotient".into());
    set(&mut doc, "notes", json!(notes));
    Ok(Outcome::ok(doc))
}

#[derive(Clone, Copy, Debug)]
pub enum HbMode {
    Check,
    Ideal,
    Trace,
    Specialize(usize),
}

pub fn hb(text: &str, mode: HbMode, assert_gg: bool, assert_height: bool) -> Result<Outcome> {
    let assertions = Assertions {
        generically_gorenstein: assert_gg,
        generic_height: assert_height,
    };
    let mode_name = match mode {
        HbMode::Check => "check".to_string(),
        HbMode::Ideal => "ideal".to_string(),
        HbMode::Trace => "trace".to_string(),
        HbMode::Specialize(r) => format!("specialize {r}"),
    };
    if let HbMode::Specialize(r) = mode {
        if !assert_gg {
            return Err(Error::Hypothesis(
                "the specialized trace formula needs the ring generically Gorenstein; pass --assert-gg".into(),
            ));
        }
        let matrix = parse_plain_matrix(text)?;
        let mut doc = document(
            "hb",
            json!({
                "mode": mode_name,
                "rows": matrix.nrows(),
                "cols": matrix.ncols(),
                "matrix": matrix_value(&matrix),
            }),
        );
        let result = trace_of_specialization(&matrix, r, &assertions)?;
        let mut warnings = result.warnings;
        if !assert_height {
            warnings.push("the height of the ideal of minors was not asserted (--assert-height)".into());
        }
        set(&mut doc, "assumptions", json!(result.assumptions));
        set(&mut doc, "trace", ideal_value(&result.ideal));
        set(&mut doc, "warnings", json!(warnings));
        return Ok(Outcome::ok(doc));
    }
    let input = parse_matrix_file(text)?;
    let mut doc = document(
        "hb",
        json!({
            "mode": mode_name,
            "rows": input.matrix().nrows(),
            "cols": input.matrix().ncols(),
            "matrix": matrix_value(input.matrix()),
        }),
    );
    set(&mut doc, "assumptions", json!(assertions.describe()));
    match mode {
        HbMode::Check => {
            let report = hb_check(&input);
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    let what = match &v.kind {
                        ViolationKind::NotHomogeneous => "not homogeneous".to_string(),
                        ViolationKind::WrongDegree { expected, found } => {
                            format!("degree {found}, expected {expected}")
                        }
                        ViolationKind::ShouldBeZero { expected } => {
                            format!("nonzero entry where the expected degree is {expected}")
                        }
                    };
                    json!(format!("entry ({}, {}): {what}", v.row + 1, v.col + 1))
                })
                .collect();
            let minors: Vec<Value> = report
                .minors
                .iter()
                .map(|m| {
                    json!({
                        "omitted": m.omitted + 1,
                        "zero": m.zero,
                        "homogeneous": m.homogeneous,
                        "degree": m.degree,
                    })
                })
                .collect();
            set(&mut doc, "n", json!(report.n));
            set(&mut doc, "violations", json!(violations));
            set(&mut doc, "zero_rows", json!(report.zero_rows.iter().map(|i| i + 1).collect::<Vec<_>>()));
            set(&mut doc, "zero_cols", json!(report.zero_cols.iter().map(|i| i + 1).collect::<Vec<_>>()));
            set(&mut doc, "minors", json!(minors));
            set(&mut doc, "unchecked", json!(report.unchecked));
            set(&mut doc, "clean", json!(report.is_clean()));
        }
        HbMode::Ideal => {
            let result = hb_ideal(&input)?;
            set(&mut doc, "n", json!(input.n()));
            set(
                &mut doc,
                "minors",
                json!(result.minors.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            );
            set(&mut doc, "ideal", ideal_value(&result.ideal));
            set(&mut doc, "warnings", json!(result.warnings));
        }
        HbMode::Trace => {
            let result = hb_trace(&input, &assertions)?;
            set(&mut doc, "n", json!(input.n()));
            set(&mut doc, "trace", ideal_value(&result.ideal));
            set(&mut doc, "warnings", json!(result.warnings));
        }
        HbMode::Specialize(_) => unreachable!("handled above"),
    }
    Ok(Outcome::ok(doc))
}

pub fn semigroup(n1: u64, n2: u64, n3: u64) -> Result<Outcome> {
    let result = semigroup_hb_trace(n1, n2, n3)?;
    let data = &result.data;
    let mut doc = document("semigroup", json!({ "generators": [n1, n2, n3] }));
    set(&mut doc, "generators", json!(data.generators));
    set(&mut doc, "gaps", json!(data.gaps));
    set(&mut doc, "frobenius", json!(data.frobenius));
    set(&mut doc, "symmetric", json!(data.symmetric));
    set(&mut doc, "critical", json!(data.critical));
    set(
        &mut doc,
        "binomials",
        json!(result.binomials.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
    );
    if let Some(m) = &result.matrix {
        set(&mut doc, "matrix", matrix_value(m));
    }
    set(&mut doc, "trace", monomial_ideal_value(&result.trace, None));
    set(&mut doc, "gorenstein", json!(result.gorenstein));
    set(&mut doc, "nearly_gorenstein", json!(result.nearly_gorenstein));
    let mut notes = Vec::new();
    if data.symmetric {
        notes.push("symmetric ⇒ Gorenstein ⇒ trace = (1)".to_string());
    } else if result.nearly_gorenstein {
        notes.push("nearly Gorenstein: the trace is the maximal ideal (x, y, z)".to_string());
    } else {
        notes.push("not nearly Gorenstein".to_string());
    }
    set(&mut doc, "notes", json!(notes));
    Ok(Outcome::ok(doc))
}

pub fn verify_lasagna(m: usize, n: usize, r: usize, l: u32, opts: &RankOptions) -> Result<Outcome> {
    let ctx = GenericMatrixContext::new(m, n, r)?;
    let seg = SegreContext::new(&ctx);
    let report = verify_mu_multiplicativity(&ctx, &seg, l, opts)?;
    let mut doc = document("verify lasagna", json!({ "m": m, "n": n, "r": r, "l": l }));
    set(&mut doc, "mu_pq", json!(report.mu_pq));
    set(&mut doc, "mu_p", json!(report.mu_p));
    set(&mut doc, "mu_q", json!(report.mu_q));
    set(&mut doc, "holds", json!(report.holds));
    Ok(Outcome {
        doc,
        inconsistent: !report.holds,
    })
}

pub fn verify_pq(m: usize, n: usize, r: usize, opts: &RankOptions) -> Result<Outcome> {
    let ctx = GenericMatrixContext::new(m, n, r)?;
    let seg = SegreContext::new(&ctx);
    let report = verify_pq_identity(&ctx, &seg, opts)?;
    let mut doc = document("verify pq", json!({ "m": m, "n": n, "r": r }));
    set(&mut doc, "pq_generators", json!(report.pq_generators));
    set(&mut doc, "delta_ir_generators", json!(report.delta_ir_generators));
    set(&mut doc, "span_dim", json!(report.span_dim));
    set(&mut doc, "holds", json!(report.holds));
    Ok(Outcome {
        doc,
        inconsistent: !report.holds,
    })
}
