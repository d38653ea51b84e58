//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use liebranch_core::fixture::{parse_weight_table, ProjectionFixture};
use liebranch_core::golden::{run_check, CheckReport, Fixtures};
use liebranch_core::subalgebra::{centralizer, transported_fundamental_coweight};
use liebranch_core::torus::center_of;
use liebranch_core::{branching::branch, BranchTarget, BranchingResult, Weight};

fn fixtures() -> Fixtures {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    Fixtures::load_dir(&dir).expect("fixture directory")
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_reports(reports: &[CheckReport]) -> Outcome {
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    let failures: Vec<&String> = reports.iter().flat_map(|r| &r.failures).collect();
    Outcome {
        passed: reports.iter().all(|r| r.passed),
        detail: if failures.is_empty() {
            format!("{cases} cases")
        } else {
            format!("{} of {cases} cases failed; first: {}", failures.len(), failures[0])
        },
    }
}

fn golden(fx: &Fixtures, names: &[&str]) -> Vec<CheckReport> {
    names
        .iter()
        .map(|n| run_check(n, fx).expect("check runs"))
        .collect()
}

fn extra(reports: &mut Vec<CheckReport>, name: &str, ok: bool, why: String) {
    reports.push(CheckReport {
        name: name.to_string(),
        passed: ok,
        cases: 1,
        failures: if ok { vec![] } else { vec![why] },
    });
}

fn example_branch(fx: &Fixtures, file: &str, highest: &str) -> BranchingResult {
    let f = ProjectionFixture::parse(fx.get(file).unwrap()).unwrap();
    let emb = f.embedding().unwrap();
    let target = BranchTarget::Embedding {
        node: f.node,
        embedding: Box::new(emb),
    };
    branch(&f.ambient, &target, &highest.parse().unwrap()).unwrap()
}

fn criterion_1(fx: &Fixtures) -> Outcome {
    from_reports(&golden(fx, &["numbering", "table1"]))
}

fn criterion_2(fx: &Fixtures) -> Outcome {
    from_reports(&golden(fx, &["prime_marks"]))
}

fn criterion_3(fx: &Fixtures) -> Outcome {
    from_reports(&golden(fx, &["tables23"]))
}

fn criterion_4(fx: &Fixtures) -> Outcome {
    from_reports(&golden(fx, &["table4"]))
}

fn criterion_5(fx: &Fixtures) -> Outcome {
    let mut reports = golden(fx, &["example1"]);
    let f = ProjectionFixture::parse(fx.get("example1_f4_a2a2.proj").unwrap()).unwrap();
    let emb = f.embedding().unwrap();
    let sigma = transported_fundamental_coweight(&f.ambient, 2, &emb).unwrap();
    let want: Vec<_> = [0, -2, -3, -2].iter().map(|&x| liebranch_core::linalg::q(x)).collect();
    extra(&mut reports, "sigma", sigma == want, format!("σ(ω̂_2) = {sigma:?}"));
    let r = example_branch(fx, "example1_f4_a2a2.proj", "(1,0,0,0)");
    let labels: Vec<i64> = r.summand_set().iter().map(|s| s.1).collect();
    let mut sorted = labels.clone();
    sorted.sort();
    extra(
        &mut reports,
        "labels",
        r.summands.len() == 4 && sorted == vec![0, 0, 1, 2],
        format!("labels {labels:?}"),
    );
    from_reports(&reports)
}

fn criterion_6(fx: &Fixtures) -> Outcome {
    let mut reports = golden(fx, &["example2"]);
    let mut label_sets = Vec::new();
    for (hw, table) in [("(1,0,0)", "example2_b3_100.tsv"), ("(0,0,1)", "example2_b3_001.tsv")] {
        let r = example_branch(fx, "example2_b3_a3.proj", hw);
        let rows = parse_weight_table(fx.get(table).unwrap()).unwrap();
        extra(
            &mut reports,
            table,
            rows.len() as u64 == r.ambient_dimension,
            format!("{table}: {} rows for dimension {}", rows.len(), r.ambient_dimension),
        );
        let labels: BTreeSet<i64> = r.projection.iter().map(|p| p.label).collect();
        label_sets.push(labels);
    }
    let even: BTreeSet<i64> = [0, 2].into();
    let odd: BTreeSet<i64> = [1, 3].into();
    extra(
        &mut reports,
        "label parity",
        label_sets[0].is_subset(&even) && label_sets[1].is_subset(&odd),
        format!("label sets {label_sets:?}"),
    );
    from_reports(&reports)
}

fn criterion_7(fx: &Fixtures) -> Outcome {
    let mut reports = golden(fx, &["example3"]);
    let rows = parse_weight_table(fx.get("example3_e6_100000.tsv").unwrap()).unwrap();
    extra(&mut reports, "rows", rows.len() == 27, format!("{} rows", rows.len()));
    let r = example_branch(fx, "example3_e6_d5.proj", "(1,0,0,0,0,0)");
    let bad: Vec<i64> = r
        .projection
        .iter()
        .map(|p| p.label)
        .filter(|l| l.rem_euclid(3) != 1)
        .collect();
    extra(&mut reports, "labels mod 3", bad.is_empty() && r.projection.len() == 27, format!("labels {bad:?}"));
    from_reports(&reports)
}

fn criterion_8(fx: &Fixtures) -> Outcome {
    let mut reports = golden(fx, &["example4"]);
    let r8 = example_branch(fx, "example4_d4_a3.proj", "(1,0,0,0)");
    extra(&mut reports, "dim 8", r8.ambient_dimension == 8, format!("{}", r8.ambient_dimension));
    let r28 = example_branch(fx, "example4_d4_a3.proj", "(0,1,0,0)");
    let class0: BTreeSet<Weight> = r28
        .summands
        .iter()
        .filter(|s| s.label == 0)
        .map(|s| s.sub_highest.clone())
        .collect();
    let want: BTreeSet<Weight> = [Weight::new(vec![1, 0, 1]), Weight::new(vec![0, 0, 0])].into();
    extra(
        &mut reports,
        "reducible class",
        r28.ambient_dimension == 28 && class0 == want,
        format!("class [0] = {class0:?}"),
    );
    let f = ProjectionFixture::parse(fx.get("example4_d4_a3.proj").unwrap()).unwrap();
    let d = centralizer(&f.ambient, f.node, &f.embedding().unwrap()).unwrap();
    let inside = d.center_in_u1.clone().map(|g| g.invariant_factors);
    extra(
        &mut reports,
        "centralizer",
        d.structure() == "U_1 × Z_2"
            && inside == Some(vec![2])
            && center_of(&f.ambient).invariant_factors == vec![2, 2],
        format!("{} with Z ∩ U_1 = {inside:?}", d.structure()),
    );
    from_reports(&reports)
}

fn criterion_9() -> Outcome {
    let mut reports = Vec::new();
    match common::freudenthal_vs_kostant() {
        Ok(n) => reports.push(CheckReport {
            name: "freudenthal".into(),
            passed: true,
            cases: n,
            failures: vec![],
        }),
        Err(e) => extra(&mut reports, "freudenthal", false, e),
    }
    let runs = common::random_branchings(0x5eed, 50, 5_000);
    let failures: Vec<String> = runs
        .iter()
        .filter(|r| !(r.round_trip && r.ambient_dimension == r.summand_dimension_sum))
        .map(|r| {
            format!(
                "{}: dim {} vs {}, round trip {}",
                r.description, r.ambient_dimension, r.summand_dimension_sum, r.round_trip
            )
        })
        .collect();
    reports.push(CheckReport {
        name: "branchings".into(),
        passed: failures.is_empty() && runs.len() == 50,
        cases: runs.len(),
        failures,
    });
    match common::snf_perturbation_cases(0xab5, 100) {
        Ok(n) => reports.push(CheckReport {
            name: "snf".into(),
            passed: n == 100,
            cases: n,
            failures: vec![],
        }),
        Err(e) => extra(&mut reports, "snf", false, e),
    }
    from_reports(&reports)
}

#[test]
fn acceptance() {
    let fx = fixtures();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 centers and central congruence forms", Box::new(|| criterion_1(&fx))),
        ("2 prime-mark sweep |C| = m_k |Z|", Box::new(|| criterion_2(&fx))),
        ("3 discrete centralizer families", Box::new(|| criterion_3(&fx))),
        ("4 continuous centralizer families", Box::new(|| criterion_4(&fx))),
        ("5 F4 > A2+A2 example", Box::new(|| criterion_5(&fx))),
        ("6 B3 > A3 example", Box::new(|| criterion_6(&fx))),
        ("7 E6 > D5+H1 example", Box::new(|| criterion_7(&fx))),
        ("8 D4 > A3+H1 example", Box::new(|| criterion_8(&fx))),
        ("9 property suites", Box::new(criterion_9)),
    ];
    let mut all = true;
    for (name, run) in &criteria {
        let o = run();
        all &= o.passed;
        let line = format!(
            "{} criterion {name}: {}\n",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        let _ = std::io::stdout().write_all(line.as_bytes());
    }
    assert!(all, "some acceptance criteria failed");
}
