use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use serde_json::{json, Number, Value};
use treepark::bijection::{self, alpha_inverse};
use treepark::parking::{self, PreferenceSeq};
use treepark::series::{check_all, check_identity, closed_counts, IdentityReport, IDENTITIES};
use treepark::tree::{LabeledPlaneTree, Permutation, RootedTree};
use treepark::verify::{self, CensusReport, RandomProps, SuiteReport, VerifyError};

use crate::{Format, Payload, Suite, TreeAndSeq};

pub type Outcome = Result<bool, String>;

type SuiteFn = fn(usize, bool) -> Result<SuiteReport, VerifyError>;

fn parse<T: FromStr>(what: &str, payload: &Payload) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    payload.0.parse().map_err(|e| format!("bad {what}: {e}"))
}

fn tree_and_seq(input: &TreeAndSeq) -> Result<(RootedTree, PreferenceSeq), String> {
    let t: RootedTree = parse("tree", &input.tree)?;
    let s: PreferenceSeq = parse("sequence", &input.seq)?;
    if s.len() != t.len() {
        return Err(parking::ParkingError::LengthMismatch {
            tree: t.len(),
            seq: s.len(),
        }
        .to_string());
    }
    Ok((t, s))
}

fn exact(n: impl ToString) -> Value {
    Value::Number(
        Number::from_str(&n.to_string()).expect("decimal integers are valid JSON numbers"),
    )
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

pub fn park(input: &TreeAndSeq, format: Format) -> Outcome {
    let (t, s) = tree_and_seq(input)?;
    let outcome = parking::park(&t, &s).map_err(|e| e.to_string())?;
    let parked = outcome.all_parked();
    if format == Format::Json {
        let crossings: Vec<Value> = outcome
            .first_crossings()
            .iter()
            .map(|c| json!({ "child": c.edge.child, "parent": c.edge.parent, "driver": c.driver, "step": c.step }))
            .collect();
        print_json(&json!({ "spots": outcome.spots(), "parked": parked, "crossings": crossings }));
    } else {
        let spots: Vec<String> = outcome
            .spots()
            .iter()
            .map(|s| s.map_or("-".to_string(), |v| v.to_string()))
            .collect();
        println!("spots: {}", spots.join(" "));
        println!("parked: {parked}");
        let edges: Vec<String> = outcome
            .first_crossings()
            .iter()
            .map(|c| c.edge.to_string())
            .collect();
        println!("crossings: {}", edges.join(" "));
    }
    Ok(parked)
}

pub fn check(input: &TreeAndSeq, distribution: bool) -> Outcome {
    let (t, s) = tree_and_seq(input)?;
    let holds = if distribution {
        parking::is_parking_distribution(&t, &s)
    } else {
        parking::is_parking_function(&t, &s)
    }
    .map_err(|e| e.to_string())?;
    let what = if distribution {
        "parking distribution"
    } else {
        "parking function"
    };
    println!("{what}: {holds}");
    Ok(holds)
}

pub fn prime(input: &TreeAndSeq) -> Outcome {
    let (t, s) = tree_and_seq(input)?;
    let holds = parking::is_prime(&t, &s).map_err(|e| e.to_string())?;
    println!("prime: {holds}");
    Ok(holds)
}

pub fn used_edges(input: &TreeAndSeq, format: Format) -> Outcome {
    let (t, s) = tree_and_seq(input)?;
    let used = parking::used_edges(&t, &s).map_err(|e| e.to_string())?;
    if format == Format::Json {
        let edges: Vec<Value> = used
            .iter()
            .map(|e| json!({ "child": e.child, "parent": e.parent }))
            .collect();
        print_json(&json!({ "used": edges, "all_used": used.len() + 1 == t.len() }));
    } else {
        let edges: Vec<String> = used.iter().map(ToString::to_string).collect();
        println!("used: {}", edges.join(" "));
    }
    Ok(true)
}

pub fn psi(input: &TreeAndSeq, check: bool) -> Outcome {
    let (t, s) = tree_and_seq(input)?;
    let (sigma, ptree) = bijection::psi(&t, &s).map_err(|e| e.to_string())?;
    println!("sigma: {sigma}");
    println!("ptree: {ptree}");
    if !check {
        return Ok(true);
    }
    let back = bijection::psi_inverse(&sigma, &ptree).map_err(|e| e.to_string())?;
    let ok = back == (t, s);
    println!("roundtrip: {}", if ok { "ok" } else { "mismatch" });
    Ok(ok)
}

pub fn psi_inv(perm: &Payload, ptree: &Payload, check: bool) -> Outcome {
    let sigma: Permutation = parse("permutation", perm)?;
    let tree: LabeledPlaneTree = parse("plane tree", ptree)?;
    let (t, s) = bijection::psi_inverse(&sigma, &tree).map_err(|e| e.to_string())?;
    println!("tree: {t}");
    println!("seq: {s}");
    if !check {
        return Ok(true);
    }
    let ok = bijection::psi(&t, &s).map_err(|e| e.to_string())? == (sigma, tree);
    println!("roundtrip: {}", if ok { "ok" } else { "mismatch" });
    Ok(ok)
}

pub fn borie(perm: &Payload, check: bool) -> Outcome {
    let sigma: Permutation = parse("permutation", perm)?;
    let seq = bijection::borie_map(&sigma).map_err(|e| e.to_string())?;
    println!("seq: {seq}");
    if !check {
        return Ok(true);
    }
    let preimage = alpha_inverse(&LabeledPlaneTree::path(&sigma));
    let ok = preimage.prefs().as_slice()[1..] == *seq.as_slice();
    println!("path preimage: {}", preimage.prefs());
    println!("matches: {ok}");
    Ok(ok)
}

pub fn series(order: usize, identity: &str, list: bool) -> Outcome {
    if list {
        for i in IDENTITIES {
            let note = if i.informational {
                "\t(informational)"
            } else {
                ""
            };
            println!("{}\t{}{note}", i.id, i.statement);
        }
        return Ok(true);
    }
    let reports: Vec<IdentityReport> = if identity == "all" {
        check_all(order)
    } else {
        vec![check_identity(identity, order).map_err(|e| e.to_string())?]
    };
    let failed = reports
        .iter()
        .filter(|r| !r.holds() && !r.identity.informational)
        .count();
    for r in &reports {
        println!("{}", r.line());
    }
    if failed == 0 {
        println!("OK");
    } else {
        println!("FAILED: {failed} of {} identities", reports.len());
    }
    Ok(failed == 0)
}

pub fn counts(max: usize, format: Format) -> Outcome {
    let table = closed_counts(max);
    if format == Format::Json {
        let rows: Vec<Value> = table
            .rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "F": exact(&r.f),
                    "P": exact(&r.p),
                    "Ftilde": exact(&r.ftilde),
                    "Ptilde": exact(&r.ptilde),
                    "Pstar": exact(&r.pstar),
                    "Fstar": exact(&r.fstar),
                    "C": exact(&r.catalan),
                    "S": exact(&r.schroder),
                })
            })
            .collect();
        print_json(&Value::Array(rows));
    } else {
        print!("{}", table.to_tsv());
    }
    Ok(true)
}

pub struct VerifyArgs {
    pub suite: Suite,
    pub max_n: Option<usize>,
    pub format: Format,
    pub allow_large: bool,
    pub seed: u64,
    pub instances: usize,
    pub timing: bool,
}

/// Sizes sampled by the random property suite.
const RANDOM_SIZES: [usize; 3] = [6, 7, 8];

struct Row {
    suite: &'static str,
    n: usize,
    check: String,
    passed: bool,
    cases: Option<u64>,
    counted: Option<u64>,
    expected: Option<String>,
    counterexample: Option<String>,
}

fn census_rows(r: &CensusReport, rows: &mut Vec<Row>) {
    for c in &r.columns {
        rows.push(Row {
            suite: "census",
            n: r.n,
            check: c.name.to_string(),
            passed: c.passed(),
            cases: None,
            counted: Some(c.counted),
            expected: Some(c.expected.to_string()),
            counterexample: None,
        });
    }
}

fn suite_rows(r: &SuiteReport, rows: &mut Vec<Row>) {
    for c in &r.checks {
        rows.push(Row {
            suite: r.suite,
            n: r.n,
            check: c.name.clone(),
            passed: c.passed(),
            cases: Some(c.cases),
            counted: None,
            expected: None,
            counterexample: c.failure.clone(),
        });
    }
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let all = args.suite == Suite::All;
    let wants = |s: Suite| all || args.suite == s;
    // under --suite all an explicit bound is clamped to each suite's range
    let top = |limits: verify::Limits| {
        let cap = if args.allow_large {
            limits.large_max
        } else {
            limits.max
        };
        match args.max_n {
            Some(k) if all => k.min(cap),
            Some(k) => k,
            None => limits.max,
        }
    };
    let err = |e: VerifyError| e.to_string();
    let timed = |label: String, elapsed: Duration| {
        if args.timing {
            eprintln!("{label}: {:.3}s", elapsed.as_secs_f64());
        }
    };

    if let (false, Some(n)) = (all, args.max_n) {
        let (suite, limits) = match args.suite {
            Suite::Census => ("census", verify::CENSUS_LIMITS),
            Suite::Roundtrip => ("roundtrip", verify::ROUNDTRIP_LIMITS),
            Suite::MmpPath => ("mmp-path", verify::MMP_PATH_LIMITS),
            Suite::GrowthPath => ("growth-path", verify::GROWTH_PATH_LIMITS),
            Suite::Props | Suite::All => ("props", verify::PROPS_LIMITS),
        };
        let max = if args.allow_large {
            limits.large_max
        } else {
            limits.max
        };
        if n > max {
            return Err(err(VerifyError::LimitExceeded {
                suite,
                n,
                min: limits.min,
                max,
            }));
        }
    }

    let mut rows = Vec::new();
    if wants(Suite::Census) {
        for n in verify::CENSUS_LIMITS.min..=top(verify::CENSUS_LIMITS) {
            let r = verify::census(n, args.allow_large).map_err(err)?;
            timed(format!("census n={n}"), r.elapsed);
            census_rows(&r, &mut rows);
        }
    }
    let suites: [(Suite, verify::Limits, SuiteFn); 4] = [
        (
            Suite::Roundtrip,
            verify::ROUNDTRIP_LIMITS,
            verify::roundtrip_suite,
        ),
        (
            Suite::MmpPath,
            verify::MMP_PATH_LIMITS,
            verify::mmp_path_suite,
        ),
        (
            Suite::GrowthPath,
            verify::GROWTH_PATH_LIMITS,
            verify::growth_path_suite,
        ),
        (Suite::Props, verify::PROPS_LIMITS, verify::props_exhaustive),
    ];
    for (suite, limits, run) in suites {
        if !wants(suite) {
            continue;
        }
        for n in limits.min..=top(limits) {
            let r = run(n, args.allow_large).map_err(err)?;
            timed(format!("{} n={n}", r.suite), r.elapsed);
            suite_rows(&r, &mut rows);
        }
    }
    if wants(Suite::Props) && args.instances > 0 {
        for n in RANDOM_SIZES {
            let r = verify::props_random(RandomProps::new(n, args.instances, args.seed));
            timed(format!("{} n={n}", r.suite), r.elapsed);
            suite_rows(&r, &mut rows);
        }
    }

    let failed = rows.iter().filter(|r| !r.passed).count();
    match args.format {
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                let _ = write!(out, "{} n={}: {tag} {}", r.suite, r.n, r.check);
                if let (Some(c), Some(e)) = (r.counted, &r.expected) {
                    let _ = write!(out, " counted {c} expected {e}");
                }
                if let Some(cases) = r.cases {
                    let _ = write!(out, " ({cases} cases)");
                }
                if let Some(x) = &r.counterexample {
                    let _ = write!(out, ": first counterexample {x}");
                }
                out.push('\n');
            }
            print!("{out}");
            if failed == 0 {
                println!("all {} checks passed", rows.len());
            } else {
                println!("{failed} of {} checks failed", rows.len());
            }
        }
        Format::Tsv => {
            println!("suite\tn\tcheck\tstatus\tcases\tcounted\texpected\tcounterexample");
            let opt = |v: Option<String>| v.unwrap_or_default();
            for r in &rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.suite,
                    r.n,
                    r.check,
                    if r.passed { "PASS" } else { "FAIL" },
                    opt(r.cases.map(|c| c.to_string())),
                    opt(r.counted.map(|c| c.to_string())),
                    opt(r.expected.clone()),
                    opt(r.counterexample.clone()),
                );
            }
        }
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite,
                        "n": r.n,
                        "check": r.check,
                        "status": if r.passed { "PASS" } else { "FAIL" },
                        "cases": r.cases,
                        "counted": r.counted,
                        "expected": r.expected.as_ref().map(exact),
                        "counterexample": r.counterexample,
                    })
                })
                .collect();
            print_json(&Value::Array(list));
        }
    }
    Ok(failed == 0)
}
