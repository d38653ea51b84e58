//! Golden checks: the reference tables and worked examples replayed against
//! the library, one report per check.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::branching::{branch, project_system, BranchTarget, LabelRule};
use crate::error::{Error, Result};
use crate::fixture::{
    parse_branching, parse_int_row, parse_weight_table, records, ProjectionFixture,
    WeightTableRow,
};
use crate::lie_core::{
    cartan_matrix, dual_fundamental_coweight, extended_cartan, is_prime, AlgebraType, SimpleAlgebra,
};
use crate::linalg::q;
use crate::subalgebra::{
    centralizer, continuous_centralizer, delete_node_reductive, delete_node_semisimple,
    discrete_centralizer, h1_form_realizes, CentralizerDescription, RelativeForm,
    SemisimpleAlgebra,
};
use crate::torus::{
    center_of, eigenvalue_form, finite_abelian_structure, parse_group, CongruenceForm,
    TorusElement,
};
use crate::weyl_weights::{weight_system, Weight};

pub const FIXTURE_FILES: &[&str] = &[
    "dynkin_numbering.txt",
    "table1.txt",
    "tables23.txt",
    "table4.txt",
    "example1_f4_a2a2.proj",
    "example2_b3_a3.proj",
    "example2_b3_100.tsv",
    "example2_b3_001.tsv",
    "example3_e6_d5.proj",
    "example3_e6_100000.tsv",
    "example4_d4_a3.proj",
    "example4_d4_1000.tsv",
];

pub const CHECKS: &[&str] = &[
    "numbering",
    "table1",
    "prime_marks",
    "tables23",
    "table4",
    "example1",
    "example2",
    "example3",
    "example4",
];

macro_rules! embed {
    ($($name:literal),*) => {
        &[$(($name, include_str!(concat!("../../../fixtures/", $name)))),*]
    };
}

const EMBEDDED: &[(&str, &str)] = embed!(
    "dynkin_numbering.txt",
    "table1.txt",
    "tables23.txt",
    "table4.txt",
    "example1_f4_a2a2.proj",
    "example2_b3_a3.proj",
    "example2_b3_100.tsv",
    "example2_b3_001.tsv",
    "example3_e6_d5.proj",
    "example3_e6_100000.tsv",
    "example4_d4_a3.proj",
    "example4_d4_1000.tsv"
);

/// The fixture texts, keyed by file name.
#[derive(Debug, Clone)]
pub struct Fixtures {
    files: BTreeMap<String, String>,
}

impl Fixtures {
    /// Copies compiled into the library.
    pub fn embedded() -> Self {
        Fixtures {
            files: EMBEDDED
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        let mut files = BTreeMap::new();
        for name in FIXTURE_FILES {
            let path = dir.join(name);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
            files.insert(name.to_string(), text);
        }
        Ok(Fixtures { files })
    }

    pub fn get(&self, name: &str) -> Result<&str> {
        self.files
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::Fixture(format!("missing fixture `{name}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        self.cases += 1;
        if got != want {
            self.failures
                .push(format!("{what}: expected {want:?}, got {got:?}"));
        }
    }

    fn fail(&mut self, what: String) {
        self.cases += 1;
        self.failures.push(what);
    }

    fn report(self, name: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            passed: self.failures.is_empty() && self.cases > 0,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

pub fn run_check(name: &str, fx: &Fixtures) -> Result<CheckReport> {
    let tally = match name {
        "numbering" => check_numbering(fx)?,
        "table1" => check_table1(fx)?,
        "prime_marks" => check_prime_marks(),
        "tables23" => check_tables23(fx)?,
        "table4" => check_table4(fx)?,
        "example1" => check_example(fx, "example1_f4_a2a2.proj")?,
        "example2" => check_example(fx, "example2_b3_a3.proj")?,
        "example3" => check_example(fx, "example3_e6_d5.proj")?,
        "example4" => check_example(fx, "example4_d4_a3.proj")?,
        other => {
            return Err(Error::Fixture(format!(
                "unknown check `{other}` (one of {})",
                CHECKS.join(", ")
            )))
        }
    };
    Ok(tally.report(name))
}

pub fn run_all(fx: &Fixtures, only: Option<&str>) -> Result<Vec<CheckReport>> {
    match only {
        Some(name) => Ok(vec![run_check(name, fx)?]),
        None => CHECKS.iter().map(|c| run_check(c, fx)).collect(),
    }
}

fn field<'a>(rec: &'a [String], i: usize, file: &str) -> Result<&'a str> {
    rec.get(i)
        .map(String::as_str)
        .ok_or_else(|| Error::Fixture(format!("{file}: record {rec:?} is missing field {i}")))
}

fn sorted_types(s: &SemisimpleAlgebra) -> Vec<AlgebraType> {
    let mut t = s.types();
    t.sort();
    t
}

fn check_numbering(fx: &Fixtures) -> Result<Tally> {
    let file = "dynkin_numbering.txt";
    let mut t = Tally::default();
    for rec in records(fx.get(file)?) {
        let alg = SimpleAlgebra::parse(field(&rec, 0, file)?)?;
        let n = alg.rank();
        let mut ext = vec![vec![0i64; n + 1]; n + 1];
        for i in 0..=n {
            ext[i][i] = 2;
        }
        for bond in field(&rec, 1, file)?.split_whitespace() {
            let (sep, long_short) = if bond.contains("≡>") {
                ("≡>", 3)
            } else if bond.contains("=>") {
                ("=>", 2)
            } else {
                ("-", 1)
            };
            let (a, b) = bond
                .split_once(sep)
                .ok_or_else(|| Error::Fixture(format!("{file}: bad bond `{bond}`")))?;
            let parse = |x: &str| {
                x.parse::<usize>()
                    .map_err(|_| Error::Fixture(format!("{file}: bad bond `{bond}`")))
            };
            let (a, b) = (parse(a)?, parse(b)?);
            if a > n || b > n {
                return Err(Error::Fixture(format!("{file}: bond `{bond}` out of range")));
            }
            ext[a][b] = -long_short;
            ext[b][a] = -1;
        }
        let inner: Vec<Vec<i64>> = ext[1..].iter().map(|r| r[1..].to_vec()).collect();
        let name = alg.name();
        t.expect_eq(&format!("{name} Cartan matrix"), cartan_matrix(alg.algebra_type()), inner);
        t.expect_eq(&format!("{name} extended Cartan matrix"), extended_cartan(&alg), ext);
        let marks = parse_int_row(field(&rec, 2, file)?)?;
        t.expect_eq(&format!("{name} marks"), alg.marks().to_vec(), marks);
    }
    Ok(t)
}

fn coweight_form(alg: &SimpleAlgebra, k: usize) -> CongruenceForm {
    eigenvalue_form(&TorusElement::new(&dual_fundamental_coweight(alg, k).unwrap()))
}

fn check_table1(fx: &Fixtures) -> Result<Tally> {
    let file = "table1.txt";
    let mut t = Tally::default();
    let mut forms: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for rec in records(fx.get(file)?) {
        let name = field(&rec, 0, file)?;
        let alg = SimpleAlgebra::parse(name)?;
        let item = field(&rec, 1, file)?;
        let value = field(&rec, 2, file)?;
        let center = center_of(&alg);
        if item == "center" {
            t.expect_eq(
                &format!("{name} center"),
                center.invariant_factors.clone(),
                parse_group(value)?,
            );
        } else if item == "generators" {
            let gens: Vec<TorusElement> = parse_int_row(value)?
                .into_iter()
                .map(|k| TorusElement::new(&dual_fundamental_coweight(&alg, k as usize).unwrap()))
                .collect();
            t.expect_eq(
                &format!("{name} group generated by ω̂_{value}"),
                finite_abelian_structure(alg.rank(), &gens).invariant_factors,
                center.invariant_factors.clone(),
            );
        } else if let Some(nodes) = item.strip_prefix("forms") {
            forms
                .entry((name.to_string(), nodes.trim().to_string()))
                .or_default()
                .push(value.to_string());
        } else {
            return Err(Error::Fixture(format!("{file}: unknown item `{item}`")));
        }
    }
    for ((name, nodes), printed) in forms {
        let alg = SimpleAlgebra::parse(&name)?;
        let n = alg.rank();
        let mut want = printed
            .iter()
            .map(|p| CongruenceForm::parse(p, n).map(|f| f.reduced()))
            .collect::<Result<Vec<_>>>()?;
        let mut got: Vec<CongruenceForm> = parse_int_row(&nodes)?
            .into_iter()
            .map(|k| coweight_form(&alg, k as usize).reduced())
            .collect();
        want.sort_by(|a, b| a.coefficients.cmp(&b.coefficients));
        got.sort_by(|a, b| a.coefficients.cmp(&b.coefficients));
        let show = |v: &[CongruenceForm]| v.iter().map(|f| f.to_string()).collect::<Vec<_>>();
        t.expect_eq(&format!("{name} forms at nodes {nodes}"), show(&got), show(&want));
    }
    Ok(t)
}

/// Algebras of rank ≤ 8 with a prime-mark node, plus the exceptional ones.
pub fn prime_mark_algebras() -> Vec<SimpleAlgebra> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push(SimpleAlgebra::parse(&format!("B{n}")).unwrap());
        out.push(SimpleAlgebra::parse(&format!("C{n}")).unwrap());
    }
    for n in 4..=8 {
        out.push(SimpleAlgebra::parse(&format!("D{n}")).unwrap());
    }
    for s in ["E6", "E7", "E8", "F4", "G2"] {
        out.push(SimpleAlgebra::parse(s).unwrap());
    }
    out
}

fn check_prime_marks() -> Tally {
    let mut t = Tally::default();
    for alg in prime_mark_algebras() {
        let z = center_of(&alg).order();
        for k in (1..=alg.rank()).filter(|&k| is_prime(alg.mark(k))) {
            let m = alg.mark(k) as u64;
            let what = format!("{} node {k} (mark {m})", alg.name());
            let desc = match delete_node_semisimple(&alg, k)
                .and_then(|(_, emb)| discrete_centralizer(&alg, k, &emb))
            {
                Ok(d) => d,
                Err(e) => {
                    t.fail(format!("{what}: {e}"));
                    continue;
                }
            };
            t.expect_eq(&format!("{what} |C|"), desc.finite_part.order(), m * z);
            t.expect_eq(
                &format!("{what} C/Z"),
                desc.quotient_by_center
                    .map(|g| g.invariant_factors)
                    .unwrap_or_default(),
                vec![m],
            );
            t.expect_eq(
                &format!("{what} C vs Z(G')"),
                desc.finite_part.invariant_factors,
                desc.sub_center.invariant_factors,
            );
        }
    }
    t
}

fn check_tables23(fx: &Fixtures) -> Result<Tally> {
    let file = "tables23.txt";
    let mut t = Tally::default();
    for rec in records(fx.get(file)?) {
        let family = field(&rec, 0, file)?;
        let alg = SimpleAlgebra::parse(field(&rec, 1, file)?)?;
        let want_sub = sorted_types(&SemisimpleAlgebra::from_str(field(&rec, 2, file)?)?);
        let want_c = parse_group(field(&rec, 3, file)?)?;
        let want_q = parse_group(field(&rec, 4, file)?)?;
        let what = format!("{family} at {}", alg.name());
        let mut matched = 0;
        for k in (1..=alg.rank()).filter(|&k| is_prime(alg.mark(k))) {
            let Ok((sub, emb)) = delete_node_semisimple(&alg, k) else {
                continue;
            };
            if sorted_types(&sub) != want_sub {
                continue;
            }
            matched += 1;
            match discrete_centralizer(&alg, k, &emb) {
                Ok(d) => {
                    t.expect_eq(
                        &format!("{what} node {k} centralizer"),
                        d.finite_part.invariant_factors,
                        want_c.clone(),
                    );
                    t.expect_eq(
                        &format!("{what} node {k} quotient"),
                        d.quotient_by_center
                            .map(|g| g.invariant_factors)
                            .unwrap_or_default(),
                        want_q.clone(),
                    );
                }
                Err(e) => t.fail(format!("{what} node {k}: {e}")),
            }
        }
        t.case(matched > 0, || format!("{what}: no node deletion gives {}", rec[2]));
    }
    Ok(t)
}

/// `(has U_1, invariant factors)` of `U_1 × Z_2`, `Z_3`, `U_1`.
pub fn parse_structure(s: &str) -> Result<(bool, Vec<u64>)> {
    let t = s.trim();
    let rest = t
        .strip_prefix("U_1")
        .or_else(|| t.strip_prefix("U1"));
    match rest {
        Some(r) => {
            let r = r.trim().trim_start_matches(['×', 'x']).trim();
            Ok((true, if r.is_empty() { vec![] } else { parse_group(r)? }))
        }
        None => Ok((false, parse_group(t)?)),
    }
}

fn primitive(h: &[i64]) -> Vec<i64> {
    let g = h.iter().fold(0i64, |a, &b| a.gcd(&b)).max(1);
    h.iter().map(|x| x / g).collect()
}

fn check_table4(fx: &Fixtures) -> Result<Tally> {
    let file = "table4.txt";
    let mut t = Tally::default();
    for rec in records(fx.get(file)?) {
        let family = field(&rec, 0, file)?;
        let alg = SimpleAlgebra::parse(field(&rec, 1, file)?)?;
        let want_sub = sorted_types(&SemisimpleAlgebra::from_str(field(&rec, 2, file)?)?);
        let want_u1 = parse_group(field(&rec, 3, file)?)?;
        let structure = field(&rec, 4, file)?;
        let h = parse_int_row(field(&rec, 5, file)?)?;
        if h.len() != alg.rank() {
            return Err(Error::Fixture(format!("{file}: h1 of `{family}` has wrong length")));
        }
        let what = format!("{family} at {}", alg.name());
        let mut realized: Option<(usize, CentralizerDescription, Vec<i64>)> = None;
        'search: for sign in [1, -1] {
            for k in (1..=alg.rank()).filter(|&k| alg.mark(k) == 1) {
                let hs: Vec<i64> = h.iter().map(|x| sign * x).collect();
                let Some(emb) = h1_form_realizes(&alg, k, &hs)? else {
                    continue;
                };
                if sorted_types(emb.sub()) != want_sub {
                    continue;
                }
                let d = continuous_centralizer(&alg, k, &emb)?;
                realized = Some((k, d, primitive(&hs)));
                break 'search;
            }
        }
        let Some((k, d, hs)) = realized else {
            t.fail(format!("{what}: H_1 form {h:?} is not realized by any mark-1 deletion"));
            continue;
        };
        t.expect_eq(
            &format!("{what} node {k} u1 quotient"),
            d.u1_quotient.clone().map(|g| g.invariant_factors).unwrap_or_default(),
            want_u1,
        );
        t.expect_eq(
            &format!("{what} node {k} relative form"),
            d.relative_form.clone(),
            RelativeForm::Integral(hs),
        );
        if structure != "-" {
            let (u1, factors) = parse_structure(structure)?;
            t.expect_eq(
                &format!("{what} node {k} structure"),
                (d.has_u1, d.finite_part.invariant_factors.clone()),
                (u1, factors),
            );
        }
    }
    // gcd(k+1, n+1) for every reductive deletion in type A
    for n in 1..=8usize {
        let alg = SimpleAlgebra::parse(&format!("A{n}"))?;
        for j in 1..=n {
            let what = format!("A{n} node {j}");
            match delete_node_reductive(&alg, j).and_then(|(_, e)| continuous_centralizer(&alg, j, &e)) {
                Ok(d) => t.expect_eq(
                    &format!("{what} |C/U_1|"),
                    d.u1_quotient.map(|g| g.order()).unwrap_or(0),
                    (j as u64).gcd(&(n as u64 + 1)),
                ),
                Err(e) => t.fail(format!("{what}: {e}")),
            }
        }
    }
    Ok(t)
}

fn table_rows(
    alg: &SimpleAlgebra,
    emb: &crate::subalgebra::Embedding,
    rule: &LabelRule,
    highest: &Weight,
) -> Result<Vec<WeightTableRow>> {
    let ws = weight_system(alg, highest)?;
    let mut rows = Vec::new();
    for p in project_system(emb, rule, &ws)? {
        for _ in 0..p.multiplicity {
            rows.push(WeightTableRow {
                weight: p.weight.clone(),
                label: p.label,
                image: p.image.clone(),
            });
        }
    }
    rows.sort();
    Ok(rows)
}

fn check_example(fx: &Fixtures, file: &str) -> Result<Tally> {
    let f = ProjectionFixture::parse(fx.get(file)?)
        .map_err(|e| Error::Fixture(format!("{file}: {e}")))?;
    let alg = &f.ambient;
    let n = alg.rank();
    let mut t = Tally::default();
    let emb = match f.embedding() {
        Ok(e) => e,
        Err(e) => {
            t.fail(format!("{file}: embedding rejected: {e}"));
            return Ok(t);
        }
    };
    let d = match centralizer(alg, f.node, &emb) {
        Ok(d) => d,
        Err(e) => {
            t.fail(format!("{file}: centralizer failed: {e}"));
            return Ok(t);
        }
    };
    let rule: LabelRule = d.relative_form.clone().into();
    let mut sub_forms = d.sub_center_forms.iter();
    for (key, value) in &f.entries {
        let what = format!("{file} {key}");
        match key.as_str() {
            "sigma" => t.expect_eq(
                &what,
                d.sigma_coweight.clone(),
                Some(parse_int_row(value)?.into_iter().map(q).collect()),
            ),
            "relative" => match &d.relative_form {
                RelativeForm::Modular(form) => {
                    t.expect_eq(&what, form.reduced(), CongruenceForm::parse(value, n)?.reduced())
                }
                RelativeForm::Integral(h) => {
                    t.expect_eq(&what, h.clone(), crate::torus::parse_linear_form(value, n)?)
                }
            },
            "sub-form" => match sub_forms.next() {
                Some(ff) => t.expect_eq(
                    &what,
                    ff.form.reduced(),
                    CongruenceForm::parse(value, n)?.reduced(),
                ),
                None => t.fail(format!("{what}: more printed forms than factors")),
            },
            "centralizer" => {
                let (u1, factors) = parse_structure(value)?;
                t.expect_eq(
                    &what,
                    (d.has_u1, d.finite_part.invariant_factors.clone()),
                    (u1, factors),
                );
            }
            "quotient" => t.expect_eq(
                &what,
                d.quotient_by_center.clone().map(|g| g.invariant_factors),
                Some(parse_group(value)?),
            ),
            "expect-h1" => t.expect_eq(&what, emb.h1_row().map(<[i64]>::to_vec), Some(parse_int_row(value)?)),
            "center-form" => {
                let want = CongruenceForm::parse(value, n)?;
                let z = center_of(alg);
                t.case(
                    z.generators.len() == 1 && eigenvalue_form(&z.generators[0]).equivalent(&want),
                    || format!("{what}: center of {} is {z}", alg.name()),
                );
            }
            "center-in-u1" => t.expect_eq(
                &what,
                d.center_in_u1.clone().map(|g| g.invariant_factors),
                Some(parse_group(value)?),
            ),
            "center-in-u1-form" => {
                let want = CongruenceForm::parse(value, n)?;
                let ok = d.center_in_u1.as_ref().is_some_and(|g| {
                    g.generators.len() == 1 && eigenvalue_form(&g.generators[0]).equivalent(&want)
                });
                t.case(ok, || format!("{what}: form differs from {value}"));
            }
            "branch" => {
                let printed = parse_branching(value)?;
                let target = BranchTarget::Embedding {
                    node: f.node,
                    embedding: Box::new(emb.clone()),
                };
                match branch(alg, &target, &printed.highest) {
                    Ok(r) => t.expect_eq(&what, r.summand_set(), printed.summands),
                    Err(e) => t.fail(format!("{what}: {e}")),
                }
            }
            "table" => {
                let (w, table_file) = value
                    .rsplit_once(char::is_whitespace)
                    .ok_or_else(|| Error::Fixture(format!("{what}: expected `(weight) file`")))?;
                let highest: Weight = w.trim().parse()?;
                let mut want = parse_weight_table(fx.get(table_file.trim())?)
                    .map_err(|e| Error::Fixture(format!("{table_file}: {e}")))?;
                want.sort();
                match table_rows(alg, &emb, &rule, &highest) {
                    Ok(got) => t.expect_eq(&format!("{what} {table_file}"), got, want),
                    Err(e) => t.fail(format!("{what}: {e}")),
                }
            }
            other => return Err(Error::Fixture(format!("{file}: unknown key `{other}`"))),
        }
    }
    if f.get("sub-form").is_some() {
        t.case(sub_forms.next().is_none(), || {
            format!("{file}: fewer printed sub forms than factors")
        });
    }
    Ok(t)
}
