//! Acceptance criteria, one line each. Runs without the libtest harness so
//! that the output is exactly one PASS/FAIL line per criterion.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use qvdomain::fixtures::{fixture_def, FIXTURE_IDS};
use qvdomain::harness::suite::SuiteReport;
use qvdomain::quantale::{check_residuation_laws, validate_quantale};
use qvdomain::{run_suite, Error, FiniteQuantale, GenConfig, Limits, SuiteStatus};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn cfg(instances: usize) -> GenConfig {
    GenConfig {
        instances,
        workers: 4,
        ..GenConfig::default()
    }
}

/// Runs a suite and requires every listed property to have passed on at
/// least `min` instances with no failures anywhere.
fn suite_with(name: &str, c: &GenConfig, props: &[(&str, usize)]) -> Result<SuiteReport, String> {
    let r = run_suite(name, c).map_err(|e| e.to_string())?;
    if r.status != SuiteStatus::Pass {
        return Err(format!("status {:?}\n{}", r.status, r.to_text()));
    }
    for (prop, min) in props {
        let passed = r
            .properties
            .iter()
            .find(|p| p.property == *prop)
            .map_or(0, |p| p.passed);
        if passed < *min {
            return Err(format!("{prop} passed on {passed} instances, expected at least {min}"));
        }
    }
    Ok(r)
}

fn criterion_1() -> Outcome {
    let limits = Limits::default();
    let mut total = 0;
    for id in FIXTURE_IDS {
        let def = fixture_def(id).map_err(|e| e.to_string())?;
        let axioms = validate_quantale(&def, &limits).map_err(|e| e.to_string())?;
        if !axioms.all_passed() {
            return Err(format!("{id}: {}", axioms.first_failure().unwrap()));
        }
        let q = FiniteQuantale::from_def(&def).map_err(|e| e.to_string())?;
        let laws = check_residuation_laws(&q);
        if !laws.all_passed() {
            return Err(format!("{id}: {}", laws.first_failure().unwrap()));
        }
        for label in ["adjunction", "Q6", "Q7"] {
            if laws.get(label).is_none() {
                return Err(format!("{id}: {label} was not checked"));
            }
        }
        total += axioms.checks.len() + laws.checks.len();
    }
    Ok(format!("{total} checks over {} fixtures", FIXTURE_IDS.len()))
}

fn criterion_2() -> Outcome {
    let c = GenConfig {
        quantale: "boolean".into(),
        max_size: 5,
        ..cfg(50)
    };
    let props = [
        ("oracle-directed", 50),
        ("oracle-ideal", 50),
        ("oracle-supremum", 50),
        ("oracle-way-below", 50),
        ("oracle-algebraic", 50),
    ];
    suite_with("oracle", &c, &props)?;
    Ok("50 posets agree with the classical oracle".into())
}

fn criterion_3() -> Outcome {
    suite_with("waybelow", &cfg(30), &[("way-below-forms", 30)])?;
    Ok("30 L-dcpos, exact equality".into())
}

fn criterion_4() -> Outcome {
    let props = [("c-lorder", 30), ("c-ldcpo", 30), ("c-continuous", 30), ("approximants", 30)];
    suite_with("rep1", &cfg(30), &props)?;
    Ok("30 interpolative spaces".into())
}

fn criterion_5() -> Outcome {
    suite_with("rep1", &cfg(30), &[("rep1-carrier", 30), ("rep1-iso", 30)])?;
    Ok("30 isomorphism certificates".into())
}

fn criterion_6() -> Outcome {
    let props = [("lclosure", 30), ("c-algebraic", 30), ("psi-compact", 30), ("rep2-iso", 30)];
    suite_with("rep2", &cfg(30), &props)?;
    Ok("30 L-closure spaces".into())
}

fn criterion_7() -> Outcome {
    let props = [
        ("c-algebraic", 30),
        ("dense-subspace", 30),
        ("dense-iso", 30),
        ("restriction-is-algebraic-closure", 30),
        ("rep3", 30),
    ];
    suite_with("dense", &cfg(30), &props)?;
    let refused = run_suite(
        "dense",
        &GenConfig {
            quantale: "nonintegral-3".into(),
            ..cfg(1)
        },
    );
    if !matches!(refused, Err(Error::NonIntegral(_))) {
        return Err(format!("non-integral fixture not refused: {refused:?}"));
    }
    Ok("30 algebraic domains; non-integral refused".into())
}

fn criterion_8() -> Outcome {
    let props = [
        ("identity-laws", 21),
        ("composite-approximable", 1),
        ("apply-preserves-closed", 1),
        ("round-trip", 21),
        ("functor-identity", 21),
        ("functor-composition", 21),
        ("faithful", 21),
        ("full", 21),
    ];
    let r = suite_with("equiv", &cfg(20), &props)?;
    let tiny = &r.instances[0];
    if !tiny.sampled.is_empty() || !tiny.passed() {
        return Err(format!("tiny instance not exhaustive: {}", tiny.descriptor));
    }
    Ok(format!("tiny exhaustive ({}) and 20 seeded pairs", tiny.descriptor))
}

fn criterion_9() -> Outcome {
    let mut compared = 0;
    for name in ["core", "rep1", "equiv"] {
        let one = GenConfig { workers: 1, ..cfg(12) };
        let four = GenConfig { workers: 4, ..cfg(12) };
        let a = run_suite(name, &one).map_err(|e| e.to_string())?.to_json();
        let b = run_suite(name, &one).map_err(|e| e.to_string())?.to_json();
        let c = run_suite(name, &four).map_err(|e| e.to_string())?.to_json();
        if a != b {
            return Err(format!("{name}: two runs differ"));
        }
        if a != c {
            return Err(format!("{name}: 1 and 4 workers differ"));
        }
        compared += a.len();
    }
    Ok(format!("byte-identical reports ({compared} bytes compared)"))
}

struct Cli {
    bin: PathBuf,
    workspace: tempfile::TempDir,
    fixtures: PathBuf,
}

impl Cli {
    fn run(&self, args: &[&str]) -> (i32, String) {
        let out = Command::new(&self.bin)
            .arg("--workspace")
            .arg(self.workspace.path())
            .args(args)
            .output()
            .expect("binary runs");
        let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
        (out.status.code().unwrap_or(-1), text)
    }

    fn fixture(&self, name: &str) -> String {
        self.fixtures.join(name).display().to_string()
    }

    fn expect(&self, args: &[&str], code: i32, needles: &[&str]) -> Result<(), String> {
        let (got, text) = self.run(args);
        if got != code {
            return Err(format!("`{}` exited {got}, expected {code}:\n{text}", args.join(" ")));
        }
        for n in needles {
            if !text.contains(n) {
                return Err(format!("`{}` output lacks `{n}`:\n{text}", args.join(" ")));
            }
        }
        Ok(())
    }
}

fn criterion_10() -> Outcome {
    let cli = Cli {
        bin: PathBuf::from(env!("CARGO_BIN_EXE_qvdomain")),
        workspace: tempfile::tempdir().map_err(|e| e.to_string())?,
        fixtures: Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    };
    let f = |n: &str| cli.fixture(n);
    let mut n = 0;
    let mut step = |args: &[&str], code: i32, needles: &[&str]| -> Result<(), String> {
        n += 1;
        cli.expect(args, code, needles)
    };
    step(&["validate", &f("quantale-boolean.json")], 0, &["PASS"])?;
    step(&["validate", &f("quantale-lukasiewicz-3-inline.json")], 0, &["adjunction"])?;
    step(&["validate", &f("corrupt-quantale.json")], 1, &["FAIL", "witness="])?;
    step(&["validate", &f("missing-label.json")], 2, &["unknown label `x`"])?;
    step(&["validate", &f("corrupt-lorder.json")], 1, &["antisymmetry", "FAIL"])?;
    step(&["validate", &f("corrupt-gc2.json")], 1, &["GC2", "FAIL", "witness=(a, c)"])?;
    step(&["load", &f("downsets2.json"), "--as", "downsets2"], 0, &["loaded closure-space"])?;
    step(&["load", &f("shift-space2.json"), "--as", "shift"], 0, &[])?;
    step(&["load", &f("chain2.json"), "--as", "chain2"], 0, &[])?;
    step(&["load", &f("antichain2.json"), "--as", "anti"], 0, &[])?;
    step(&["validate", &f("corrupt-ap4.json")], 1, &["AP4", "FAIL", "witness=(a, a)"])?;
    step(&["validate", &f("corrupt-dc1.json")], 1, &["DC1", "FAIL"])?;
    step(&["validate", &f("identity-downsets2.json")], 0, &["approximable"])?;
    step(&["load", &f("const-map.json"), "--as", "cmap"], 0, &[])?;
    step(&["analyze", "chain2"], 0, &["continuous: yes", "algebraic: yes", "K(P): all"])?;
    step(&["analyze", "downsets2"], 0, &["directed closed sets: 2", "sub table"])?;
    step(&["--cap", "3", "analyze", "downsets2"], 0, &["warning"])?;
    step(&["construct", "closure-of-domain", "chain2", "--as", "cd"], 0, &["interpolative", "pass"])?;
    step(&["construct", "theta", "cmap", "--as", "tc"], 0, &["approximable"])?;
    step(&["construct", "restrict", "cd", "--points", "nope", "--as", "r"], 2, &["nope"])?;
    step(&["suite", "core", "--quantale", "lukasiewicz-3", "--instances", "10"], 0, &["PASS"])?;
    step(&["suite", "dense", "--quantale", "nonintegral-3"], 2, &["not integral"])?;
    step(&["suite", "equiv", "--instances", "2", "--budget", "1"], 3, &["sampled"])?;
    let dot = cli.workspace.path().join("chain.dot");
    step(&["export-dot", "chain2", "-o", dot.to_str().unwrap()], 0, &["1 edges"])?;
    let text = std::fs::read_to_string(&dot).map_err(|e| e.to_string())?;
    if text.matches("->").count() != 1 || !text.starts_with("digraph") {
        return Err(format!("unexpected DOT:\n{text}"));
    }
    let anti = cli.workspace.path().join("anti.dot");
    step(&["export-dot", "anti", "-o", anti.to_str().unwrap()], 0, &["0 edges"])?;

    let stored: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(cli.workspace.path().join("chain2.json")).unwrap()).unwrap();
    let original: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(f("chain2.json")).unwrap()).unwrap();
    if stored != original {
        return Err("loading then re-exporting changed chain2".into());
    }
    Ok(format!("{n} commands with the documented exit codes"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("quantale core", criterion_1, Duration::from_secs(1)),
        ("boolean differential oracle", criterion_2, Duration::from_secs(30)),
        ("way-below forms agree", criterion_3, Duration::from_secs(120)),
        ("directed closed sets form a domain", criterion_4, Duration::from_secs(300)),
        ("representation round trip for domains", criterion_5, Duration::from_secs(300)),
        ("algebraic domains and closure spaces", criterion_6, Duration::from_secs(300)),
        ("dense subspaces", criterion_7, Duration::from_secs(300)),
        ("approximable relations and Scott maps", criterion_8, Duration::from_secs(300)),
        ("determinism", criterion_9, Duration::from_secs(300)),
        ("command-line contract", criterion_10, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (i, (name, run, bound)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > *bound => Err(format!("{msg}; took {took:.2?}, bound {bound:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
