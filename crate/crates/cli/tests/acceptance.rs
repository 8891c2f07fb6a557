//! Acceptance suite. One line per criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use ctrace_core::determinantal::{
    specializes_condition, teter_formula, teter_verify, verify_mu_multiplicativity, verify_pq_identity,
    GenericMatrixContext, SegreContext, SymbolicMatrix,
};
use ctrace_core::hilbert_burch::{hb_trace, trace_of_specialization, Assertions, GradedMatrixInput};
use ctrace_core::linalg::RankOptions;
use ctrace_core::poly::{binomial, parse_polynomials};
use ctrace_core::tree::{tree_matrix, tree_trace_minors, tree_verify_monloc, Tree};
use ctrace_core::{Polynomial, Ring, Var};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

const GG: Assertions = Assertions {
    generically_gorenstein: true,
    generic_height: true,
};

fn ctrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctrace"))
        .args(args)
        .output()
        .expect("ctrace runs")
}

fn ctrace_json(args: &[&str]) -> Result<Value, String> {
    let mut all = args.to_vec();
    all.push("--json");
    let out = ctrace(&all);
    if !out.status.success() {
        return Err(format!(
            "`ctrace {}` exited {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn letters(s: &str) -> String {
    let mut l: Vec<&str> = s.split('*').collect();
    l.sort_unstable();
    l.concat()
}

/// The trees of criterion 2: the Example, one edge, P3, the star S5 and 200
/// random trees from a fixed seed.
fn criterion_trees() -> Vec<Tree> {
    let mut trees: Vec<Tree> = ["1-2,2-3,3-4,3-5", "1-2", "1-2,2-3", "1-2,1-3,1-4,1-5"]
        .iter()
        .map(|s| Tree::parse(s, None).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for _ in 0..200 {
        let n = rng.gen_range(3..=8);
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
        trees.push(Tree::from_prufer(&seq).unwrap());
    }
    trees
}

fn example_tree_fixture() -> Outcome {
    let doc = ctrace_json(&["tree", "1-2,2-3,3-4,3-5", "--alias"])?;
    let ideal: BTreeSet<String> = strings(&doc["ideal"]["generators"]).iter().map(|s| letters(s)).collect();
    let expected_ideal: BTreeSet<String> = ["bdfh", "adfh", "acfh", "aceh", "acfg"].map(String::from).into();
    ensure(ideal == expected_ideal, || format!("I(tree) = {ideal:?}"))?;
    // the same generators under their original names
    let plain = ctrace_json(&["tree", "1-2,2-3,3-4,3-5"])?;
    let named: BTreeSet<String> = strings(&plain["ideal"]["generators"]).into_iter().collect();
    let expected_named: BTreeSet<String> = [
        "x_2_1*x_3_2*x_4_3*x_5_3",
        "x_1_2*x_3_2*x_4_3*x_5_3",
        "x_1_2*x_2_3*x_4_3*x_5_3",
        "x_1_2*x_2_3*x_3_4*x_5_3",
        "x_1_2*x_2_3*x_3_5*x_4_3",
    ]
    .map(String::from)
    .into();
    ensure(named == expected_named, || format!("I(tree) = {named:?}"))?;
    let trace: BTreeSet<String> = strings(&doc["trace_minors"]["generators"]).iter().map(|s| letters(s)).collect();
    let expected: BTreeSet<String> = [
        "ace", "acg", "acf", "adf", "afg", "bdf", "bfg", "cfg", "ach", "adh", "aeh", "bdh", "beh", "ceh", "afh",
        "bfh", "cfh", "dfh",
    ]
    .map(String::from)
    .into();
    ensure(trace == expected, || format!("trace = {trace:?}"))?;
    Ok("5 ideal generators and 18 trace monomials match".into())
}

fn monloc() -> Outcome {
    let trees = criterion_trees();
    let mut failures = Vec::new();
    for t in &trees {
        if !tree_verify_monloc(t).map_err(|e| e.to_string())? {
            failures.push(t.to_string());
        }
    }
    if failures.is_empty() {
        Ok(format!("{} trees", trees.len()))
    } else {
        Err(format!(
            "false on {} of {} trees, first: {}",
            failures.len(),
            trees.len(),
            failures.iter().take(3).cloned().collect::<Vec<_>>().join(" | ")
        ))
    }
}

fn timed_cases<T: std::fmt::Debug>(
    cases: &[T],
    limit: Duration,
    mut run: impl FnMut(&T) -> Result<bool, String>,
) -> Outcome {
    let mut parts = Vec::new();
    for c in cases {
        let start = Instant::now();
        let ok = run(c)?;
        let took = start.elapsed();
        ensure(ok, || format!("{c:?} does not hold"))?;
        ensure(took <= limit, || format!("{c:?} took {took:.2?} (limit {limit:?})"))?;
        parts.push(format!("{c:?} {:.2}s", took.as_secs_f64()));
    }
    Ok(parts.join(", "))
}

fn pq_identity() -> Outcome {
    let opts = RankOptions::default();
    timed_cases(
        &[(2, 3, 1), (2, 4, 1), (3, 4, 2), (3, 5, 2), (4, 5, 3)],
        Duration::from_secs(60),
        |&(m, n, r)| {
            let ctx = GenericMatrixContext::new(m, n, r).map_err(|e| e.to_string())?;
            let seg = SegreContext::new(&ctx);
            Ok(verify_pq_identity(&ctx, &seg, &opts).map_err(|e| e.to_string())?.holds)
        },
    )
}

fn multiplicativity() -> Outcome {
    let opts = RankOptions::default();
    timed_cases(
        &[
            (2, 3, 1, 1),
            (2, 3, 1, 2),
            (2, 4, 1, 1),
            (2, 4, 1, 2),
            (3, 4, 2, 1),
            (3, 4, 2, 2),
            (3, 5, 2, 1),
        ],
        Duration::from_secs(120),
        |&(m, n, r, l)| {
            let ctx = GenericMatrixContext::new(m, n, r).map_err(|e| e.to_string())?;
            let seg = SegreContext::new(&ctx);
            Ok(verify_mu_multiplicativity(&ctx, &seg, l, &opts)
                .map_err(|e| e.to_string())?
                .holds)
        },
    )
}

fn teter_numbers() -> Outcome {
    let opts = RankOptions::default();
    let mut parts = Vec::new();
    for (m, n, r) in [(2, 3, 1), (2, 4, 1), (2, 5, 1), (3, 4, 2), (3, 5, 2)] {
        let ctx = GenericMatrixContext::new(m, n, r).map_err(|e| e.to_string())?;
        let seg = SegreContext::new(&ctx);
        let report = teter_verify(&ctx, &seg, &opts).map_err(|e| e.to_string())?;
        ensure(report.agree, || {
            format!("({m},{n},{r}): formula {} but oracle {}", report.formula, report.oracle)
        })?;
        parts.push(format!("({m},{n},{r})->{}", report.oracle));
    }
    Ok(parts.join(" "))
}

/// Degree-`d` monomials in `k` variables, counted by recursion on the first
/// exponent.
fn count_monomials(k: usize, d: usize) -> BigInt {
    let mut table = vec![BigInt::from(1); d + 1];
    for _ in 1..k {
        for e in 1..=d {
            let prev = table[e - 1].clone();
            table[e] += prev;
        }
    }
    if k == 0 {
        BigInt::from((d == 0) as u8)
    } else {
        table[d].clone()
    }
}

fn closed_form() -> Outcome {
    let mut checked = 0;
    for n in 3..=12 {
        for m in 2..n {
            let f = teter_formula(m, n, 1).map_err(|e| e.to_string())?;
            let b = binomial((2 * n - m - 1) as i64, (n - m) as i64);
            let c = count_monomials(n, n - m);
            ensure(f == b && b == c, || format!("({m},{n},1): {f} {b} {c}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs"))
}

fn hb_consistency() -> Outcome {
    let trees = criterion_trees();
    for t in &trees {
        let input = GradedMatrixInput::new(tree_matrix(t)).map_err(|e| e.to_string())?;
        let hb = hb_trace(&input, &GG).map_err(|e| e.to_string())?;
        let hb = hb
            .ideal
            .as_monomial_ideal()
            .ok_or_else(|| format!("{t}: minors are not monomials"))?;
        let minors = tree_trace_minors(t).map_err(|e| e.to_string())?;
        ensure(hb == minors, || format!("{t}: hb_trace differs from the tree minors"))?;
    }
    Ok(format!("{} trees", trees.len()))
}

/// `x -> t^a, y -> t^b, z -> t^c`.
fn vanishes_on_curve(p: &Polynomial, gens: &[u64]) -> bool {
    let t_ring = Ring::new([Var::plain("t")]);
    let t = t_ring.variable(&Var::plain("t")).unwrap();
    let images: Vec<Polynomial> = p
        .ring()
        .vars()
        .iter()
        .map(|v| {
            let k = ["x", "y", "z"].iter().position(|n| *n == v.to_string()).unwrap();
            t.pow(gens[k] as u32)
        })
        .collect();
    p.substitute(&t_ring, &images, usize::MAX).unwrap().is_zero()
}

fn semigroups() -> Outcome {
    let doc = ctrace_json(&["semigroup", "3", "4", "5"])?;
    let rows: Vec<Vec<String>> = doc["matrix"]
        .as_array()
        .ok_or("no matrix emitted")?
        .iter()
        .map(strings)
        .collect();
    let binomial_texts = strings(&doc["binomials"]);
    let mut texts: Vec<&str> = rows.iter().flatten().map(String::as_str).collect();
    texts.extend(binomial_texts.iter().map(String::as_str));
    let polys = parse_polynomials(&texts, None).map_err(|e| e.to_string())?;
    let ring = polys[0].ring().clone();
    let (entries, binomials) = polys.split_at(6);
    let matrix = SymbolicMatrix::new(&ring, vec![entries[..3].to_vec(), entries[3..].to_vec()])
        .map_err(|e| e.to_string())?;
    let minors = matrix.maximal_minors_by_column().map_err(|e| e.to_string())?;
    ensure(binomials.len() == 3, || "expected three critical binomials".into())?;
    for b in binomials {
        ensure(vanishes_on_curve(b, &[3, 4, 5]), || format!("{b} does not vanish on (t^3, t^4, t^5)"))?;
        ensure(minors.iter().any(|p| p.equal_up_to_sign(b)), || format!("{b} is not a minor"))?;
    }
    ensure(minors.iter().all(|p| binomials.iter().any(|b| b.equal_up_to_sign(p))), || {
        "a minor is not a critical binomial".into()
    })?;
    let trace = strings(&doc["trace"]["generators"]);
    ensure(trace == ["x", "y", "z"], || format!("trace {trace:?}"))?;

    let doc = ctrace_json(&["semigroup", "4", "5", "6"])?;
    ensure(doc["symmetric"] == true && doc["gorenstein"] == true, || "4 5 6 not symmetric".into())?;
    let trace = strings(&doc["trace"]["generators"]);
    ensure(trace == ["1"], || format!("4 5 6 trace {trace:?}"))?;
    Ok("<3,4,5>: minors = critical binomials, trace (x, y, z); <4,5,6>: unit trace".into())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ctrace-acceptance-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn specialization() -> Outcome {
    ensure(specializes_condition(3, 4, 2), || "(3,4,2) should specialize".into())?;
    ensure(!specializes_condition(2, 4, 1), || "(2,4,1) should not specialize".into())?;
    for (m, n, r) in [(2, 3, 1), (2, 4, 1), (3, 4, 2), (3, 5, 2)] {
        let ctx = GenericMatrixContext::new(m, n, r).map_err(|e| e.to_string())?;
        let specialized = trace_of_specialization(ctx.matrix(), r, &GG).map_err(|e| e.to_string())?;
        ensure(specialized.ideal == ctx.trace(None), || format!("({m},{n},{r}) differs"))?;
    }
    // the same through the command line
    let rows: Vec<String> = (1..=3)
        .map(|i| (1..=4).map(|j| format!("x_{i}_{j}")).collect::<Vec<_>>().join("; "))
        .collect();
    let file = temp_file("generic34.txt", &rows.join("\n"));
    let file = file.to_str().unwrap();
    let specialized = ctrace_json(&["hb", file, "--specialize", "2", "--assert-gg", "--assert-height"])?;
    let generic = ctrace_json(&["trace-generic", "3", "4", "2"])?;
    ensure(specialized["trace"] == generic["trace"], || "hb --specialize differs from trace-generic".into())?;
    ensure(specialized["trace"]["count"] == 18, || "expected 18 minors".into())?;
    Ok("condition and identity specialization agree".into())
}

fn refuses_arbitrary_ideals() -> Outcome {
    // the monomial ideal whose trace does not specialize, written as a row
    let ideal = temp_file("ideal.txt", "x1*y1; x2*y2; x3*y3; x1*x2; x2*y3; x1*x3\n");
    let ideal = ideal.to_str().unwrap();
    let path = temp_file("path.txt", "-x_1_2; x_2_1; 0\n0; -x_2_3; x_3_2\n");
    let path = path.to_str().unwrap();
    let attempts: [&[&str]; 6] = [
        &["hb", ideal, "--trace", "--assert-gg"],
        &["hb", ideal, "--ideal"],
        &["hb", ideal, "--specialize", "1", "--assert-gg"],
        &["hb", ideal, "--specialize", "0", "--assert-gg"],
        &["hb", path, "--trace"],
        &["trace-ideal", ideal],
    ];
    for args in attempts {
        let code = ctrace(args).status.code();
        ensure(code == Some(2), || format!("`ctrace {}` exited {code:?}", args.join(" ")))?;
    }
    Ok(format!("{} invocations exit 2", attempts.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("tree example fixture", Duration::from_secs(1), example_tree_fixture),
        ("monomial localization corollary", Duration::from_secs(30), monloc),
        ("PQ = delta I_r(X)", Duration::from_secs(5 * 60), pq_identity),
        ("mu((PQ)^l) = mu(P^l) mu(Q^l)", Duration::from_secs(7 * 120), multiplicativity),
        ("Teter numbers agree with the span-rank oracle", Duration::from_secs(600), teter_numbers),
        ("r = 1 closed form", Duration::from_secs(1), closed_form),
        ("Hilbert-Burch consistency on trees", Duration::from_secs(60), hb_consistency),
        ("semigroup rings", Duration::from_secs(1), semigroups),
        ("specialization", Duration::from_secs(60), specialization),
        ("arbitrary ideals refused", Duration::from_secs(60), refuses_arbitrary_ideals),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let took = start.elapsed();
        if result.is_ok() && took > *limit {
            result = Err(format!("took {took:.2?}, limit {limit:?}"));
        }
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if result.is_err() {
            failed += 1;
        }
        println!("criterion {:>2} {tag} [{:.2}s] {name}: {detail}", k + 1, took.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
