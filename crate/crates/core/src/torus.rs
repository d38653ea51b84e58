//! Torus elements modulo the coroot lattice, finite abelian groups they
//! generate, and congruence forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::{dual_fundamental_coweight, SimpleAlgebra};
use crate::linalg::{self, Q};
use crate::snf::smith_normal_form;
use crate::weyl_weights::Weight;

/// A coweight in α̂-coordinates, not reduced.
pub type CoweightVector = Vec<Q>;

/// A coweight taken modulo the coroot lattice; coordinates lie in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement(Vec<Q>);

impl TorusElement {
    pub fn new(coords: &[Q]) -> Self {
        TorusElement(
            coords
                .iter()
                .map(|x| x - Q::from_integer(x.floor().to_integer()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: i64) -> TorusElement {
        let f = Q::from_integer(BigInt::from(k));
        TorusElement::new(&self.0.iter().map(|x| x * &f).collect::<Vec<_>>())
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        TorusElement::new(
            &self
                .0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect::<Vec<_>>(),
        )
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Q::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for TorusElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(Q::to_string).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        let coords = parts
            .iter()
            .map(|p| p.parse::<Q>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TorusElement::new(&coords))
    }
}

/// Least `k ≥ 1` with `k t` in the coroot lattice.
pub fn element_order(t: &TorusElement) -> u64 {
    linalg::lcm_of_denominators(t.coords())
        .to_u64()
        .expect("element order fits in u64")
}

/// `Z_{d_1} × ... × Z_{d_r}` with `d_1 | d_2 | ...` and a generator per factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<TorusElement>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: vec![],
            generators: vec![],
        }
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Every element, as sums of generator multiples.
    pub fn elements(&self) -> Vec<TorusElement> {
        let n = self.generators.first().map_or(0, |g| g.coords().len());
        let mut out = vec![TorusElement::new(&vec![Q::zero(); n])];
        for (g, &d) in self.generators.iter().zip(&self.invariant_factors) {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for k in 0..d as i64 {
                    next.push(e.add(&g.scaled(k)));
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect();
        write!(f, "{}", parts.join(" × "))
    }
}

/// Structure of the group `L1 / L2` for rational lattices `L2 ⊆ L1` of full
/// rank `n`, given by spanning rows. Generators are returned as vectors of
/// `L1`, one per nontrivial invariant factor.
pub fn lattice_quotient(l1: &[Vec<Q>], l2: &[Vec<Q>], n: usize) -> Result<(Vec<u64>, Vec<Vec<Q>>)> {
    let d = linalg::lcm_of_denominators(l1.iter().chain(l2).flatten());
    let dq = Q::from_integer(d.clone());
    let scale = |rows: &[Vec<Q>]| -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect())
            .collect()
    };
    let g1 = scale(l1);
    let g2 = scale(l2);
    let s1 = smith_normal_form(&g1, n);
    if s1.diagonal.len() < n {
        return Err(Error::NotFullRank);
    }
    // basis of L1 (scaled): row i = d_i * row i of V^{-1}
    let basis: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            s1.v_inv[i]
                .iter()
                .map(|x| Q::from_integer(x * &s1.diagonal[i]))
                .collect()
        })
        .collect();
    let basis_inv = linalg::inverse(&basis).ok_or(Error::NotFullRank)?;
    let mut x = Vec::with_capacity(g2.len());
    for row in &g2 {
        let r: Vec<Q> = row.iter().map(|v| Q::from_integer(v.clone())).collect();
        let coords = linalg::vec_mat(&r, &basis_inv);
        if coords.iter().any(|c| !c.is_integer()) {
            return Err(Error::InvalidEmbedding(
                "sublattice is not contained in the lattice".into(),
            ));
        }
        x.push(
            coords
                .into_iter()
                .map(|c| c.to_integer())
                .collect::<Vec<_>>(),
        );
    }
    let s2 = smith_normal_form(&x, n);
    if s2.diagonal.len() < n {
        return Err(Error::NotFullRank);
    }
    let mut factors = Vec::new();
    let mut gens = Vec::new();
    for (i, e) in s2.diagonal.iter().enumerate() {
        if e.is_one() {
            continue;
        }
        factors.push(e.to_u64().expect("invariant factor fits in u64"));
        let y: Vec<Q> = s2.v_inv[i]
            .iter()
            .map(|v| Q::from_integer(v.clone()))
            .collect();
        let g = linalg::vec_mat(&y, &basis);
        gens.push(g.into_iter().map(|c| c / &dq).collect());
    }
    Ok((factors, gens))
}

fn unit_rows(n: usize) -> Vec<Vec<Q>> {
    linalg::identity(n)
}

/// Structure of `(Z-span(gens) + coroot lattice) / coroot lattice`.
pub fn finite_abelian_structure(n: usize, gens: &[TorusElement]) -> FiniteAbelianGroup {
    let lattice = unit_rows(n);
    let mut l1 = lattice.clone();
    l1.extend(gens.iter().map(|g| g.coords().to_vec()));
    let (invariant_factors, g) =
        lattice_quotient(&l1, &lattice, n).expect("torus lattices have full rank");
    FiniteAbelianGroup {
        invariant_factors,
        generators: g.iter().map(|v| TorusElement::new(v)).collect(),
    }
}

/// Generators `e^{2πi ω̂_k}` for the mark-1 nodes `k ≥ 1`.
pub fn center_generators(alg: &SimpleAlgebra) -> Vec<(usize, TorusElement)> {
    (1..=alg.rank())
        .filter(|&k| alg.mark(k) == 1)
        .map(|k| {
            (
                k,
                TorusElement::new(&dual_fundamental_coweight(alg, k).unwrap()),
            )
        })
        .collect()
}

pub fn center_of(alg: &SimpleAlgebra) -> FiniteAbelianGroup {
    let gens: Vec<TorusElement> = center_generators(alg).into_iter().map(|(_, t)| t).collect();
    finite_abelian_structure(alg.rank(), &gens)
}

/// The functional `Σ r_i m_i mod M` on weights `Σ m_i ω_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CongruenceForm {
    pub coefficients: Vec<i64>,
    pub modulus: i64,
}

impl CongruenceForm {
    pub fn new(coefficients: Vec<i64>, modulus: i64) -> Self {
        let coefficients = coefficients
            .into_iter()
            .map(|c| c.rem_euclid(modulus))
            .collect();
        CongruenceForm {
            coefficients,
            modulus,
        }
    }

    /// Divides out the common factor of the modulus and all coefficients.
    pub fn reduced(&self) -> CongruenceForm {
        let g = self
            .coefficients
            .iter()
            .fold(self.modulus, |acc, &c| acc.gcd(&c));
        if g <= 1 {
            return self.clone();
        }
        CongruenceForm::new(
            self.coefficients.iter().map(|c| c / g).collect(),
            self.modulus / g,
        )
    }

    /// Whether the two forms define the same subgroup of characters, i.e.
    /// agree up to a unit multiple after reduction.
    pub fn equivalent(&self, other: &CongruenceForm) -> bool {
        let a = self.reduced();
        let b = other.reduced();
        if a.modulus != b.modulus || a.coefficients.len() != b.coefficients.len() {
            return false;
        }
        let m = a.modulus;
        (1..m.max(2)).filter(|u| u.gcd(&m) == 1).any(|u| {
            b.coefficients
                .iter()
                .zip(&a.coefficients)
                .all(|(x, y)| (u * x).rem_euclid(m) == *y)
        })
    }

    pub fn evaluate(&self, w: &Weight) -> i64 {
        evaluate_form(self, w)
    }

    /// Renders with symmetric residues, e.g. `m_1-m_2+m_4-m_5 mod 4`.
    pub fn display_signed(&self) -> String {
        let m = self.modulus;
        let signed: Vec<i64> = self
            .coefficients
            .iter()
            .map(|&c| if 2 * c > m { c - m } else { c })
            .collect();
        format!("{} mod {m}", linear_form_string(&signed))
    }
}

impl fmt::Display for CongruenceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod {}",
            linear_form_string(&self.coefficients),
            self.modulus
        )
    }
}

/// `m_1+2m_2-m_4`, or `0` for the zero form.
pub fn linear_form_string(coefficients: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in coefficients.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.abs();
        let coef = if mag == 1 {
            String::new()
        } else {
            mag.to_string()
        };
        s.push_str(&format!("{sign}{coef}m_{}", i + 1));
    }
    if s.is_empty() {
        "0".to_string()
    } else {
        s
    }
}

/// Writes `t = (1/M) Σ r_i α̂_i` with minimal `M`.
pub fn eigenvalue_form(t: &TorusElement) -> CongruenceForm {
    let m = element_order(t) as i64;
    let mq = Q::from_integer(BigInt::from(m));
    let r = t
        .coords()
        .iter()
        .map(|x| (x * &mq).to_integer().to_i64().unwrap())
        .collect();
    CongruenceForm::new(r, m)
}

/// Same as [`eigenvalue_form`] but for an unreduced coweight; errors when
/// the coweight does not have finite order (never for rational input).
pub fn eigenvalue_form_of(c: &[Q]) -> Result<CongruenceForm> {
    if c.is_empty() {
        return Err(Error::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    Ok(eigenvalue_form(&TorusElement::new(c)))
}

/// Parses `2m_1-m_3+m_4` into a coefficient vector of length `rank`.
pub fn parse_linear_form(s: &str, rank: usize) -> Result<Vec<i64>> {
    let bad = || Error::Fixture(format!("cannot parse linear form `{s}`"));
    let mut out = vec![0i64; rank];
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.replace('−', "-");
    if t == "0" {
        return Ok(out);
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in t.char_indices() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(&t[start..i]);
            start = i;
        }
    }
    terms.push(&t[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let (coef, idx) = body.split_once("m_").ok_or_else(bad)?;
        let coef: i64 = if coef.is_empty() {
            1
        } else {
            coef.parse().map_err(|_| bad())?
        };
        let idx: usize = idx
            .trim_matches(|c| c == '{' || c == '}')
            .parse()
            .map_err(|_| bad())?;
        if idx == 0 || idx > rank {
            return Err(bad());
        }
        out[idx - 1] += sign * coef;
    }
    Ok(out)
}

impl CongruenceForm {
    /// Parses `m_2+m_4 mod 3`.
    pub fn parse(s: &str, rank: usize) -> Result<CongruenceForm> {
        let (lhs, m) = s
            .rsplit_once("mod")
            .ok_or_else(|| Error::Fixture(format!("missing modulus in `{s}`")))?;
        let modulus: i64 = m
            .trim()
            .trim_matches(|c| c == '(' || c == ')')
            .parse()
            .map_err(|_| Error::Fixture(format!("bad modulus in `{s}`")))?;
        if modulus < 1 {
            return Err(Error::Fixture(format!("bad modulus in `{s}`")));
        }
        Ok(CongruenceForm::new(parse_linear_form(lhs, rank)?, modulus))
    }
}

/// Invariant factors of `Z_{o_1} × ... × Z_{o_r}`.
pub fn invariant_factors_of(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &o in orders {
        let mut o = o;
        let mut p = 2;
        while o > 1 {
            if o % p == 0 {
                let mut pk = 1;
                while o % p == 0 {
                    o /= p;
                    pk *= p;
                }
                by_prime.entry(p).or_default().push(pk);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, pk) in powers.iter().enumerate() {
            out[len - 1 - i] *= pk;
        }
    }
    out
}

/// Parses `Z_2 × Z_4`, `Z2 x Z4` or `1` into invariant factors.
pub fn parse_group(s: &str) -> Result<Vec<u64>> {
    let t = s.trim();
    if t == "1" || t.is_empty() {
        return Ok(vec![]);
    }
    let mut orders = Vec::new();
    for part in t.split(['×', 'x']) {
        let p = part.trim();
        let digits = p
            .strip_prefix("Z_")
            .or_else(|| p.strip_prefix('Z'))
            .ok_or_else(|| Error::Fixture(format!("cannot parse group `{s}`")))?;
        orders.push(
            digits
                .parse()
                .map_err(|_| Error::Fixture(format!("cannot parse group `{s}`")))?,
        );
    }
    Ok(invariant_factors_of(&orders))
}

pub fn evaluate_form(form: &CongruenceForm, w: &Weight) -> i64 {
    let s: i128 = form
        .coefficients
        .iter()
        .zip(w.coords())
        .map(|(&a, &b)| a as i128 * b as i128)
        .sum();
    s.rem_euclid(form.modulus as i128) as i64
}
