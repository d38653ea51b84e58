//! Oracles shared by the acceptance and property suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use liebranch_core::branching::branch_with_capacity;
use liebranch_core::lie_core::is_prime;
use liebranch_core::snf::smith_normal_form;
use liebranch_core::subalgebra::{infer_kind, SemisimpleAlgebra};
use liebranch_core::torus::finite_abelian_structure;
use liebranch_core::weyl_weights::{weight_system, weyl_dimension_u64};
use liebranch_core::{BranchTarget, Series, SimpleAlgebra, TorusElement, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Hand-entered rank ≤ 2 root data: Cartan matrix and positive roots in
/// simple-root coordinates.
pub struct SmallRootData {
    pub name: &'static str,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
}

pub fn small_root_data() -> Vec<SmallRootData> {
    vec![
        SmallRootData {
            name: "A1",
            cartan: vec![vec![2]],
            positive_roots: vec![vec![1]],
        },
        SmallRootData {
            name: "A2",
            cartan: vec![vec![2, -1], vec![-1, 2]],
            positive_roots: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        },
        // α_2 short
        SmallRootData {
            name: "B2",
            cartan: vec![vec![2, -2], vec![-1, 2]],
            positive_roots: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]],
        },
    ]
}

impl SmallRootData {
    fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// ω-coordinates of a vector given in simple-root coordinates.
    fn to_weight(&self, c: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|i| c[i] * self.cartan[i][j]).sum())
            .collect()
    }

    /// Simple-root coordinates of an ω-vector, or `None` off the root lattice.
    fn to_root(&self, w: &[i64]) -> Option<Vec<i64>> {
        let a = &self.cartan;
        let (det, adj) = match self.rank() {
            1 => (a[0][0], vec![vec![1]]),
            2 => (
                a[0][0] * a[1][1] - a[0][1] * a[1][0],
                vec![vec![a[1][1], -a[0][1]], vec![-a[1][0], a[0][0]]],
            ),
            _ => unreachable!(),
        };
        let n = self.rank();
        // c = w A^{-1}
        let mut c = Vec::with_capacity(n);
        for j in 0..n {
            let num: i64 = (0..n).map(|i| w[i] * adj[i][j]).sum();
            if num % det != 0 {
                return None;
            }
            c.push(num / det);
        }
        Some(c)
    }

    fn reflect(&self, i: usize, w: &[i64]) -> Vec<i64> {
        let wi = w[i];
        w.iter()
            .zip(&self.cartan[i])
            .map(|(x, a)| x - wi * a)
            .collect()
    }

    /// `(w(v), sign(w))` over the whole Weyl group, using the free orbit of
    /// a regular dominant vector.
    fn weyl_action(&self, v: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let n = self.rank();
        let rho = vec![1i64; n];
        let mut seen: HashMap<Vec<i64>, (Vec<i64>, i64)> = HashMap::new();
        seen.insert(rho.clone(), (v.to_vec(), 1));
        let mut frontier = vec![rho];
        while let Some(r) = frontier.pop() {
            let (img, sign) = seen[&r].clone();
            for i in 0..n {
                let r2 = self.reflect(i, &r);
                if !seen.contains_key(&r2) {
                    seen.insert(r2.clone(), (self.reflect(i, &img), -sign));
                    frontier.push(r2);
                }
            }
        }
        seen.into_values().collect()
    }

    /// Kostant partition function in simple-root coordinates.
    fn partitions(&self, c: &[i64], from: usize, memo: &mut HashMap<(Vec<i64>, usize), u64>) -> u64 {
        if c.iter().any(|&x| x < 0) {
            return 0;
        }
        if c.iter().all(|&x| x == 0) {
            return 1;
        }
        if from == self.positive_roots.len() {
            return 0;
        }
        let key = (c.to_vec(), from);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let root = &self.positive_roots[from];
        let mut total = 0;
        let mut rest = c.to_vec();
        loop {
            total += self.partitions(&rest, from + 1, memo);
            for (r, x) in rest.iter_mut().zip(root) {
                *r -= x;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
        memo.insert(key, total);
        total
    }

    /// All weight multiplicities of the irreducible module `λ` by Kostant's
    /// formula, scanning `λ - Σ c_i α_i` for `0 ≤ c_i ≤ bound`.
    pub fn kostant_character(&self, lambda: &[i64], bound: i64) -> BTreeMap<Vec<i64>, u64> {
        let n = self.rank();
        let shifted: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        let images = self.weyl_action(&shifted);
        let mut memo = HashMap::new();
        let mut out = BTreeMap::new();
        for c in box_points(n, bound) {
            let drop = self.to_weight(&c);
            let mu: Vec<i64> = lambda.iter().zip(&drop).map(|(l, d)| l - d).collect();
            let mut m: i64 = 0;
            for (img, sign) in &images {
                // w(λ+ρ) - (μ+ρ)
                let diff: Vec<i64> = img.iter().zip(&mu).map(|(a, b)| a - b - 1).collect();
                if let Some(rc) = self.to_root(&diff) {
                    m += sign * self.partitions(&rc, 0, &mut memo) as i64;
                }
            }
            assert!(m >= 0, "negative Kostant multiplicity");
            if m > 0 {
                out.insert(mu, m as u64);
            }
        }
        out
    }
}

/// Every integer vector of length `n` with entries in `0..=max`.
pub fn box_points(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=max).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Compares Freudenthal against Kostant for every `λ` with coordinates ≤ 3.
/// Returns the number of modules checked or the first mismatch.
pub fn freudenthal_vs_kostant() -> Result<usize, String> {
    let mut count = 0;
    for data in small_root_data() {
        let alg = SimpleAlgebra::parse(data.name).unwrap();
        if alg.cartan() != data.cartan.as_slice() {
            return Err(format!("{} Cartan matrix disagrees with the oracle", data.name));
        }
        for lambda in box_points(data.rank(), 3) {
            let ws = weight_system(&alg, &Weight::new(lambda.clone()))
                .map_err(|e| format!("{}{lambda:?}: {e}", data.name))?;
            let got: BTreeMap<Vec<i64>, u64> = ws
                .entries()
                .iter()
                .map(|(w, m)| (w.coords().to_vec(), *m))
                .collect();
            let want = data.kostant_character(&lambda, 16);
            if got != want {
                return Err(format!(
                    "{} {lambda:?}: Freudenthal {got:?} vs Kostant {want:?}",
                    data.name
                ));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Character of a semisimple module as a map from concatenated weights to
/// multiplicities.
fn product_character(sub: &SemisimpleAlgebra, highest: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let mut acc: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    acc.insert(vec![], 1);
    for (f, part) in sub.factors().iter().zip(sub.split(highest)) {
        let ws = weight_system(f, &part).unwrap();
        let mut next = BTreeMap::new();
        for (prefix, m) in &acc {
            for (w, k) in ws.entries() {
                let mut key = prefix.clone();
                key.extend_from_slice(w.coords());
                *next.entry(key).or_insert(0) += m * k;
            }
        }
        acc = next;
    }
    acc
}

pub struct RandomBranching {
    pub description: String,
    pub ambient_dimension: u64,
    pub summand_dimension_sum: u64,
    pub round_trip: bool,
}

/// Draws `count` branchings: an algebra of rank ≤ 6, a node admitting a
/// deletion, and a dominant weight with coordinates ≤ 2 of dimension at most
/// `max_dim`. Checks dimension conservation and that the summands' weights,
/// with their labels, reproduce the projected weight multiset.
pub fn random_branchings(seed: u64, count: usize, max_dim: u64) -> Vec<RandomBranching> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut names = Vec::new();
    for n in 1..=6 {
        names.push(format!("A{n}"));
        if n >= 2 {
            names.push(format!("B{n}"));
            names.push(format!("C{n}"));
        }
        if n >= 4 {
            names.push(format!("D{n}"));
        }
    }
    for s in ["E6", "F4", "G2"] {
        names.push(s.to_string());
    }
    let mut out = Vec::new();
    while out.len() < count {
        let alg = SimpleAlgebra::parse(names.choose(&mut rng).unwrap()).unwrap();
        let n = alg.rank();
        let nodes: Vec<usize> = (1..=n)
            .filter(|&k| {
                let m = alg.mark(k);
                m == 1 || (is_prime(m) && alg.series() != Series::A)
            })
            .collect();
        let Some(&k) = nodes.choose(&mut rng) else {
            continue;
        };
        let lambda = Weight::new((0..n).map(|_| rng.gen_range(0..=2)).collect());
        let dim = weyl_dimension_u64(&alg, &lambda).unwrap();
        if dim > max_dim {
            continue;
        }
        let kind = infer_kind(&alg, k).unwrap();
        let target = BranchTarget::Node {
            node: k,
            kind: Some(kind),
        };
        let description = format!("{} node {k} {lambda}", alg.name());
        let r = branch_with_capacity(&alg, &target, &lambda, 1_000_000)
            .unwrap_or_else(|e| panic!("{description}: {e}"));
        let (_, emb) = liebranch_core::subalgebra::delete_node(&alg, k, kind).unwrap();
        let matrix = emb.matrix();
        let sub_rank = emb.sub().rank();
        let label_of = |w: &[i64]| -> i64 {
            let lab = r
                .projection
                .iter()
                .find(|p| p.weight.coords() == w)
                .map(|p| p.label)
                .unwrap();
            lab
        };
        // projected multiset, images computed here from the matrix rows
        let mut projected: BTreeMap<(Vec<i64>, i64), u64> = BTreeMap::new();
        for (w, m) in weight_system(&alg, &lambda).unwrap().entries() {
            let image: Vec<i64> = matrix[..sub_rank]
                .iter()
                .map(|row| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum())
                .collect();
            *projected.entry((image, label_of(w.coords()))).or_insert(0) += m;
        }
        let mut rebuilt: BTreeMap<(Vec<i64>, i64), u64> = BTreeMap::new();
        let mut dim_sum = 0;
        for s in &r.summands {
            let ch = product_character(emb.sub(), s.sub_highest.coords());
            let d: u64 = ch.values().sum();
            dim_sum += d * s.multiplicity;
            for (w, m) in ch {
                *rebuilt.entry((w, s.label)).or_insert(0) += m * s.multiplicity;
            }
        }
        out.push(RandomBranching {
            description,
            ambient_dimension: dim,
            summand_dimension_sum: dim_sum,
            round_trip: rebuilt == projected,
        });
    }
    out
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Size of the subgroup of `Q^n / Z^n` generated by `gens`, by closure.
fn closure_order(gens: &[TorusElement]) -> u64 {
    let n = gens.first().map_or(0, |g| g.coords().len());
    let zero = TorusElement::new(&vec![rational(0, 1); n]);
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.add(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64
}

fn random_unimodular(rng: &mut StdRng, n: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let f = rng.gen_range(-2..=2);
        for c in 0..n {
            m[i][c] += f * m[j][c];
        }
    }
    m.shuffle(rng);
    m.into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect()
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(BigInt::from(0), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// One randomized case: the invariant factors of a torus subgroup are
/// unchanged by lattice shifts, unimodular recombination and redundant
/// generators, and their product matches the closure count; the Smith
/// diagonal of an integer matrix is unchanged by unimodular transforms.
pub fn snf_perturbation_case(rng: &mut StdRng) -> Result<(), String> {
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=3);
    let denoms = [1, 2, 3, 4, 6];
    let gens: Vec<TorusElement> = (0..k)
        .map(|_| {
            let d = *denoms.choose(rng).unwrap();
            TorusElement::new(
                &(0..n)
                    .map(|_| rational(rng.gen_range(0..d), d))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let base = finite_abelian_structure(n, &gens);
    let order = closure_order(&gens);
    if base.order() != order {
        return Err(format!("{gens:?}: SNF order {} vs closure {order}", base.order()));
    }
    // shift by lattice vectors, recombine, add a redundant sum, shuffle
    let mut moved: Vec<Vec<BigRational>> = gens
        .iter()
        .map(|g| {
            g.coords()
                .iter()
                .map(|x| x + rational(rng.gen_range(-3..=3), 1))
                .collect()
        })
        .collect();
    if k > 1 {
        let f = rng.gen_range(-2..=2);
        let src = moved[1].clone();
        for (a, b) in moved[0].iter_mut().zip(&src) {
            *a += rational(f, 1) * b;
        }
    }
    let redundant: Vec<BigRational> = (0..n)
        .map(|i| moved.iter().fold(rational(0, 1), |acc, g| acc + &g[i]))
        .collect();
    moved.push(redundant);
    moved.shuffle(rng);
    let moved: Vec<TorusElement> = moved.iter().map(|v| TorusElement::new(v)).collect();
    let again = finite_abelian_structure(n, &moved);
    if again.invariant_factors != base.invariant_factors {
        return Err(format!(
            "{gens:?}: {:?} became {:?}",
            base.invariant_factors, again.invariant_factors
        ));
    }

    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=4);
    let a: Vec<Vec<BigInt>> = (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect())
        .collect();
    let u = random_unimodular(rng, rows);
    let v = random_unimodular(rng, cols);
    let b = mul(&mul(&u, &a), &v);
    let da = smith_normal_form(&a, cols).diagonal;
    let db = smith_normal_form(&b, cols).diagonal;
    if da != db {
        return Err(format!("{a:?}: diagonal {da:?} vs {db:?} after transform"));
    }
    Ok(())
}

pub fn snf_perturbation_cases(seed: u64, count: usize) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..count {
        snf_perturbation_case(&mut rng)?;
    }
    Ok(count)
}
