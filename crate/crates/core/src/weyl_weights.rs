//! Weyl orbits, Freudenthal multiplicities and full weight systems.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::{self, classify, RankTwoPreference, SimpleAlgebra};
use crate::linalg::{self, q, Q};

pub const DEFAULT_MAX_WEIGHTS: usize = 10_000_000;

/// Integer coordinates in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                got: self.len(),
            })
        }
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseWeight(s.to_string());
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if inner.is_empty() {
            return Ok(Weight(vec![]));
        }
        inner
            .split(',')
            .map(|p| {
                p.trim()
                    .replace('\u{2212}', "-")
                    .parse::<i64>()
                    .map_err(|_| bad())
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

pub fn simple_reflection(alg: &SimpleAlgebra, i: usize, w: &Weight) -> Result<Weight> {
    alg.check_node(i)?;
    w.check_len(alg.rank())?;
    Ok(reflect(alg.cartan(), i - 1, w.coords()).into())
}

fn reflect(cartan: &[Vec<i64>], i: usize, w: &[i64]) -> Vec<i64> {
    let c = w[i];
    w.iter().zip(&cartan[i]).map(|(x, a)| x - c * a).collect()
}

/// Reflects `w` into the dominant chamber.
pub fn to_dominant(cartan: &[Vec<i64>], w: &[i64]) -> Vec<i64> {
    let mut v = w.to_vec();
    while let Some(i) = v.iter().position(|&x| x < 0) {
        v = reflect(cartan, i, &v);
    }
    v
}

/// Reflects `w` into the dominant chamber, returning the result and the
/// 0-based reflection indices applied in order.
pub fn to_dominant_with_word(cartan: &[Vec<i64>], w: &[i64]) -> (Vec<i64>, Vec<usize>) {
    let mut v = w.to_vec();
    let mut word = Vec::new();
    while let Some(i) = v.iter().position(|&x| x < 0) {
        v = reflect(cartan, i, &v);
        word.push(i);
    }
    (v, word)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub seed: Weight,
    pub points: Vec<Weight>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn orbit_points(cartan: &[Vec<i64>], seed: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![seed.to_vec()];
    let mut level = vec![seed.to_vec()];
    while !level.is_empty() {
        let mut next: HashSet<Vec<i64>> = HashSet::new();
        for w in &level {
            for (i, &c) in w.iter().enumerate() {
                if c > 0 {
                    next.insert(reflect(cartan, i, w));
                }
            }
        }
        let mut next: Vec<Vec<i64>> = next.into_iter().collect();
        next.sort_unstable_by(|a, b| b.cmp(a));
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

pub fn weyl_orbit(alg: &SimpleAlgebra, dominant: &Weight) -> Result<Orbit> {
    dominant.check_len(alg.rank())?;
    if !dominant.is_dominant() {
        return Err(Error::NotDominant(dominant.to_string()));
    }
    let points = orbit_points(alg.cartan(), dominant.coords())
        .into_iter()
        .map(Weight)
        .collect();
    Ok(Orbit {
        seed: dominant.clone(),
        points,
    })
}

/// |W| / |W_J| where J is the set of zero coordinates of `dominant`.
pub fn orbit_size(alg: &SimpleAlgebra, dominant: &Weight) -> u128 {
    let zeros: Vec<usize> = (0..alg.rank())
        .filter(|&i| dominant.coords()[i] == 0)
        .collect();
    let stabilizer: u128 = classify(alg.cartan(), &zeros, RankTwoPreference::B)
        .expect("sub-diagrams of a finite diagram are finite")
        .iter()
        .map(|c| lie_core::weyl_group_order(c.algebra_type))
        .product();
    lie_core::weyl_group_order(alg.algebra_type()) / stabilizer
}

pub fn weyl_dimension(alg: &SimpleAlgebra, highest: &Weight) -> Result<BigInt> {
    highest.check_len(alg.rank())?;
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.to_string()));
    }
    let lengths = alg.root_lengths();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for root in alg.positive_roots() {
        // (λ+ρ, α) and (ρ, α) up to the common factor 1/2
        let mut a = Q::zero();
        let mut b = Q::zero();
        for (i, &c) in root.iter().enumerate() {
            let scale = q(c) * &lengths[i];
            a += &scale * q(highest.coords()[i] + 1);
            b += scale;
        }
        let r = a / b;
        num *= r.numer();
        den *= r.denom();
    }
    Ok(num / den)
}

/// Exact integer data for Freudenthal's recursion.
struct FreudenthalData {
    /// `form[i][j] = D (ω_i, ω_j)` with `D` clearing all denominators.
    form: Vec<Vec<i64>>,
    /// Positive roots in ω-coordinates.
    roots: Vec<Vec<i64>>,
    height: Vec<i64>,
}

impl FreudenthalData {
    fn new(alg: &SimpleAlgebra) -> Self {
        let f = lie_core::quadratic_form(alg);
        let d = linalg::lcm_of_denominators(f.iter().flatten());
        let form = f
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * &d).to_integer().to_i64().unwrap())
                    .collect()
            })
            .collect();
        let roots = alg
            .positive_roots()
            .iter()
            .map(|r| alg.root_to_weight(r).into_coords())
            .collect();
        let h = alg.height_coefficients();
        let hd = linalg::lcm_of_denominators(&h);
        let height = h
            .iter()
            .map(|x| (x * &hd).to_integer().to_i64().unwrap())
            .collect();
        FreudenthalData {
            form,
            roots,
            height,
        }
    }

    fn inner(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &self.form[i];
            let mut t = 0i128;
            for (j, &y) in b.iter().enumerate() {
                t += row[j] as i128 * y as i128;
            }
            s += x as i128 * t;
        }
        s
    }

    fn height(&self, w: &[i64]) -> i64 {
        w.iter().zip(&self.height).map(|(a, b)| a * b).sum()
    }
}

/// Dominant weights of the irrep with the given highest weight, sorted by
/// decreasing height then decreasing lexicographic order.
fn dominant_weights(data: &FreudenthalData, highest: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(highest.to_vec());
    let mut stack = vec![highest.to_vec()];
    while let Some(mu) = stack.pop() {
        for root in &data.roots {
            let nu: Vec<i64> = mu.iter().zip(root).map(|(a, b)| a - b).collect();
            if nu.iter().all(|&x| x >= 0) && !seen.contains(&nu) {
                seen.insert(nu.clone());
                stack.push(nu);
            }
        }
    }
    let mut v: Vec<Vec<i64>> = seen.into_iter().collect();
    v.sort_unstable_by(|a, b| data.height(b).cmp(&data.height(a)).then_with(|| b.cmp(a)));
    v
}

/// Multiplicities of all dominant weights, in decreasing height order.
fn dominant_multiplicities(
    alg: &SimpleAlgebra,
    data: &FreudenthalData,
    highest: &[i64],
) -> Vec<(Vec<i64>, u64)> {
    let cartan = alg.cartan();
    let n = alg.rank();
    let doms = dominant_weights(data, highest);
    let rho = vec![1i64; n];
    let lr: Vec<i64> = highest.iter().map(|x| x + 1).collect();
    let top = data.inner(&lr, &lr);
    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut out = Vec::with_capacity(doms.len());
    for mu in doms {
        let m = if mu.as_slice() == highest {
            1
        } else {
            let mr: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
            let denom = top - data.inner(&mr, &mr);
            let mut sum: i128 = 0;
            for root in &data.roots {
                let mut shifted = mu.clone();
                loop {
                    for (s, r) in shifted.iter_mut().zip(root) {
                        *s += r;
                    }
                    let dom = to_dominant(cartan, &shifted);
                    let Some(&k) = mult.get(&dom) else { break };
                    sum += k as i128 * data.inner(&shifted, root);
                }
            }
            let value = 2 * sum / denom;
            debug_assert_eq!(2 * sum % denom, 0);
            value as u64
        };
        mult.insert(mu.clone(), m);
        out.push((mu, m));
    }
    out
}

pub fn freudenthal_multiplicity(alg: &SimpleAlgebra, highest: &Weight, mu: &Weight) -> Result<u64> {
    highest.check_len(alg.rank())?;
    mu.check_len(alg.rank())?;
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.to_string()));
    }
    let data = FreudenthalData::new(alg);
    let target = to_dominant(alg.cartan(), mu.coords());
    Ok(dominant_multiplicities(alg, &data, highest.coords())
        .into_iter()
        .find(|(w, _)| *w == target)
        .map_or(0, |(_, m)| m))
}

/// Dominant weights with their multiplicities.
pub fn dominant_character(alg: &SimpleAlgebra, highest: &Weight) -> Result<Vec<(Weight, u64)>> {
    highest.check_len(alg.rank())?;
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.to_string()));
    }
    let data = FreudenthalData::new(alg);
    Ok(dominant_multiplicities(alg, &data, highest.coords())
        .into_iter()
        .map(|(w, m)| (Weight(w), m))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    algebra: SimpleAlgebra,
    highest: Weight,
    entries: Vec<(Weight, u64)>,
    index: HashMap<Weight, usize>,
}

impl WeightSystem {
    pub fn algebra(&self) -> &SimpleAlgebra {
        &self.algebra
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    /// Weights with multiplicities by decreasing height, ties in decreasing
    /// lexicographic order.
    pub fn entries(&self) -> &[(Weight, u64)] {
        &self.entries
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.index.get(w).map_or(0, |&i| self.entries[i].1)
    }

    pub fn distinct_weights(&self) -> usize {
        self.entries.len()
    }

    pub fn dimension(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

pub fn weight_system(alg: &SimpleAlgebra, highest: &Weight) -> Result<WeightSystem> {
    weight_system_with_capacity(alg, highest, DEFAULT_MAX_WEIGHTS)
}

pub fn weight_system_with_capacity(
    alg: &SimpleAlgebra,
    highest: &Weight,
    max_weights: usize,
) -> Result<WeightSystem> {
    let dominant = dominant_character(alg, highest)?;
    let needed: u128 = dominant.iter().map(|(w, _)| orbit_size(alg, w)).sum();
    if needed > max_weights as u128 {
        return Err(Error::Capacity {
            needed,
            limit: max_weights,
        });
    }
    let mut entries = Vec::with_capacity(needed as usize);
    for (w, m) in dominant {
        for p in orbit_points(alg.cartan(), w.coords()) {
            entries.push((Weight(p), m));
        }
    }
    let data = FreudenthalData::new(alg);
    entries.sort_by_cached_key(|(w, _)| {
        (
            std::cmp::Reverse(data.height(w.coords())),
            std::cmp::Reverse(w.clone()),
        )
    });
    let index = entries
        .iter()
        .enumerate()
        .map(|(i, (w, _))| (w.clone(), i))
        .collect();
    Ok(WeightSystem {
        algebra: alg.clone(),
        highest: highest.clone(),
        entries,
        index,
    })
}

/// Weyl dimension as a machine integer, for places that already hold a
/// weight system in memory.
pub fn weyl_dimension_u64(alg: &SimpleAlgebra, highest: &Weight) -> Result<u64> {
    let d = weyl_dimension(alg, highest)?;
    d.to_u64().ok_or(Error::Capacity {
        needed: u128::MAX,
        limit: usize::MAX,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> SimpleAlgebra {
        SimpleAlgebra::parse(s).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn parse_and_display() {
        let x: Weight = "(1,0,-1)".parse().unwrap();
        assert_eq!(x.coords(), &[1, 0, -1]);
        assert_eq!(x.to_string(), "(1,0,-1)");
        assert_eq!(
            "(0, \u{2212}2)".parse::<Weight>().unwrap().coords(),
            &[0, -2]
        );
        assert!("(1,a)".parse::<Weight>().is_err());
    }

    #[test]
    fn reflections() {
        assert_eq!(
            simple_reflection(&alg("A1"), 1, &w(&[3])).unwrap(),
            w(&[-3])
        );
        assert_eq!(
            simple_reflection(&alg("A2"), 1, &w(&[1, 0])).unwrap(),
            w(&[-1, 1])
        );
        // B2 with α1 = e1 - e2 long and α2 = e2 short: ω2 = (e1 + e2)/2 reflects
        // to (e1 - e2)/2 = ω1 - ω2
        assert_eq!(
            simple_reflection(&alg("B2"), 2, &w(&[0, 1])).unwrap(),
            w(&[1, -1])
        );
        let b3 = alg("B3");
        let x = w(&[1, -2, 3]);
        for i in 1..=3 {
            let y = simple_reflection(&b3, i, &x).unwrap();
            assert_eq!(simple_reflection(&b3, i, &y).unwrap(), x);
        }
    }

    #[test]
    fn orbits() {
        assert_eq!(weyl_orbit(&alg("A2"), &w(&[0, 0])).unwrap().len(), 1);
        assert_eq!(weyl_orbit(&alg("A2"), &w(&[1, 0])).unwrap().len(), 3);
        assert_eq!(weyl_orbit(&alg("D4"), &w(&[1, 0, 0, 0])).unwrap().len(), 8);
        assert!(weyl_orbit(&alg("A2"), &w(&[1, -1])).is_err());
        let e6 = alg("E6");
        let o = weyl_orbit(&e6, &w(&[1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(o.len() as u128, orbit_size(&e6, &o.seed));
    }

    #[test]
    fn dimensions() {
        let d = |s: &str, v: &[i64]| weyl_dimension(&alg(s), &w(v)).unwrap().to_u64().unwrap();
        assert_eq!(d("E6", &[1, 0, 0, 0, 0, 0]), 27);
        assert_eq!(d("D4", &[0, 1, 0, 0]), 28);
        assert_eq!(d("B3", &[1, 0, 0]), 7);
        assert_eq!(d("E8", &[1, 0, 0, 0, 0, 0, 0, 0]), 248);
        assert_eq!(d("E7", &[0, 0, 0, 0, 0, 1, 0]), 56);
        assert_eq!(d("G2", &[0, 1]), 7);
        assert_eq!(d("F4", &[0, 0, 0, 1]), 26);
    }

    #[test]
    fn multiplicities() {
        let b3 = alg("B3");
        assert_eq!(
            freudenthal_multiplicity(&b3, &w(&[1, 0, 0]), &w(&[1, 0, 0])).unwrap(),
            1
        );
        assert_eq!(
            freudenthal_multiplicity(&b3, &w(&[1, 0, 0]), &w(&[0, 0, 0])).unwrap(),
            1
        );
        let d4 = alg("D4");
        assert_eq!(
            freudenthal_multiplicity(&d4, &w(&[0, 1, 0, 0]), &w(&[0; 4])).unwrap(),
            4
        );
        assert_eq!(
            freudenthal_multiplicity(&d4, &w(&[1, 0, 0, 0]), &w(&[0; 4])).unwrap(),
            0
        );
    }

    #[test]
    fn systems() {
        let s = weight_system(&alg("A1"), &w(&[2])).unwrap();
        let e: Vec<(Weight, u64)> = s.entries().to_vec();
        assert_eq!(e, vec![(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)]);
        let b3 = alg("B3");
        let s = weight_system(&b3, &w(&[0, 0, 1])).unwrap();
        assert_eq!(s.distinct_weights(), 8);
        assert!(s.entries().iter().all(|(_, m)| *m == 1));
        let e8 = alg("E8");
        let adj = weight_system(&e8, &w(&[1, 0, 0, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(adj.dimension(), 248);
        assert_eq!(adj.multiplicity(&Weight::zero(8)), 8);
    }

    #[test]
    fn capacity_guard() {
        let e8 = alg("E8");
        let err = weight_system_with_capacity(&e8, &w(&[1, 0, 0, 0, 0, 0, 0, 0]), 100);
        assert!(matches!(err, Err(Error::Capacity { limit: 100, .. })));
    }
}
