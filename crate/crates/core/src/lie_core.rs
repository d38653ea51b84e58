//! Catalog of simple Lie algebras with exact root-system data.
//!
//! Node numbering follows the extended-diagram convention used throughout
//! this crate: see `fixtures/dynkin_numbering.txt` for the full transcription.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use crate::weyl_weights::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraType {
    pub series: Series,
    pub rank: usize,
}

impl AlgebraType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(AlgebraType { series, rank })
        } else {
            Err(Error::RankOutOfBounds {
                series: series.letter(),
                rank,
            })
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for AlgebraType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseAlgebra(s.to_string());
        let mut chars = t.chars();
        let series = chars.next().and_then(Series::from_letter).ok_or_else(bad)?;
        let digits = chars.as_str().trim_start_matches('_');
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: usize = digits.parse().map_err(|_| bad())?;
        AlgebraType::new(series, rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arrow {
    None,
    /// The arrow points from this node to the neighbor (neighbor is shorter).
    ToNeighbor,
    /// The arrow points from the neighbor to this node (this node is shorter).
    FromNeighbor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bond {
    pub neighbor: usize,
    pub multiplicity: u8,
    pub arrow: Arrow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedNode {
    pub index: usize,
    pub mark: i64,
    pub comark: i64,
    pub bonds: Vec<Bond>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedDiagram {
    pub nodes: Vec<ExtendedNode>,
}

impl ExtendedDiagram {
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.nodes[i].bonds.iter().map(|b| b.neighbor).collect()
    }

    /// Adjacency lines such as `0: 2` or `2: 0 1 3=>`.
    pub fn adjacency_lines(&self) -> Vec<String> {
        self.nodes
            .iter()
            .map(|n| {
                let parts: Vec<String> = n
                    .bonds
                    .iter()
                    .map(|b| {
                        let bond = match (b.multiplicity, b.arrow) {
                            (1, _) => String::new(),
                            (m, Arrow::ToNeighbor) => format!("{}>", "=".repeat(m as usize)),
                            (m, Arrow::FromNeighbor) => format!("<{}", "=".repeat(m as usize)),
                            (m, Arrow::None) => "=".repeat(m as usize),
                        };
                        format!("{bond}{}", b.neighbor)
                    })
                    .collect();
                format!("{}: {}", n.index, parts.join(" "))
            })
            .collect()
    }
}

/// A simple Lie algebra together with its precomputed root data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleAlgebra {
    algebra_type: AlgebraType,
    cartan: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    symmetrizer: Vec<i64>,
    root_lengths: Vec<Q>,
    det_cartan: i64,
    inverse_cartan: Vec<Vec<Q>>,
    positive_roots: Vec<Vec<i64>>,
}

fn bond(a: &mut [Vec<i64>], i: usize, j: usize, aij: i64, aji: i64) {
    a[i - 1][j - 1] = aij;
    a[j - 1][i - 1] = aji;
}

fn cartan_of(t: AlgebraType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 1..upto {
            bond(a, i, i + 1, -1, -1);
        }
    };
    match t.series {
        Series::A => chain(&mut a, n),
        Series::B => {
            chain(&mut a, n - 1);
            bond(&mut a, n - 1, n, -2, -1);
        }
        Series::C => {
            chain(&mut a, n - 1);
            bond(&mut a, n - 1, n, -1, -2);
        }
        Series::D => {
            chain(&mut a, n - 2);
            bond(&mut a, n - 2, n - 1, -1, -1);
            bond(&mut a, n - 2, n, -1, -1);
        }
        Series::E => match n {
            6 => {
                chain(&mut a, 5);
                bond(&mut a, 3, 6, -1, -1);
            }
            7 => {
                chain(&mut a, 6);
                bond(&mut a, 3, 7, -1, -1);
            }
            _ => {
                chain(&mut a, 7);
                bond(&mut a, 5, 8, -1, -1);
            }
        },
        Series::F => {
            bond(&mut a, 1, 2, -1, -1);
            bond(&mut a, 2, 3, -2, -1);
            bond(&mut a, 3, 4, -1, -1);
        }
        Series::G => bond(&mut a, 1, 2, -3, -1),
    }
    a
}

/// Marks on nodes 0..=n as drawn on the decorated extended diagrams.
fn marks_of(t: AlgebraType) -> Vec<i64> {
    let n = t.rank;
    let mut m = vec![1i64];
    match t.series {
        Series::A => m.extend(std::iter::repeat_n(1, n)),
        Series::B => {
            m.push(1);
            m.extend(std::iter::repeat_n(2, n - 1));
        }
        Series::C => {
            m.extend(std::iter::repeat_n(2, n - 1));
            m.push(1);
        }
        Series::D => {
            m.push(1);
            m.extend(std::iter::repeat_n(2, n - 3));
            m.extend([1, 1]);
        }
        Series::E => match n {
            6 => m.extend([1, 2, 3, 2, 1, 2]),
            7 => m.extend([2, 3, 4, 3, 2, 1, 2]),
            _ => m.extend([2, 3, 4, 5, 6, 4, 2, 3]),
        },
        Series::F => m.extend([2, 3, 4, 2]),
        Series::G => m.extend([2, 3]),
    }
    m
}

/// Squared lengths of the simple roots with the longest normalized to 2.
pub fn root_lengths_from_cartan(cartan: &[Vec<i64>]) -> Vec<Q> {
    let n = cartan.len();
    let mut len: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if len[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        len[start] = Some(Q::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && len[j].is_none() {
                    let li = len[i].clone().unwrap();
                    len[j] = Some(li * q(cartan[j][i]) / q(cartan[i][j]));
                    component.push(j);
                    stack.push(j);
                }
            }
        }
        let longest = component
            .iter()
            .map(|&i| len[i].clone().unwrap())
            .max()
            .unwrap();
        let scale = q(2) / longest;
        for &i in &component {
            len[i] = Some(len[i].take().unwrap() * &scale);
        }
    }
    len.into_iter().map(Option::unwrap).collect()
}

/// Positive roots in simple-root coordinates, ordered by height then
/// lexicographically.
pub fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut layers: Vec<Vec<Vec<i64>>> = vec![(0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect()];
    let mut all: HashSet<Vec<i64>> = layers[0].iter().cloned().collect();
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in layers.last().unwrap() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        all.insert(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        layers.push(next);
    }
    layers.into_iter().flatten().collect()
}

impl SimpleAlgebra {
    pub fn new(algebra_type: AlgebraType) -> Self {
        let cartan = cartan_of(algebra_type);
        let n = algebra_type.rank;
        let marks = marks_of(algebra_type);
        let root_lengths = root_lengths_from_cartan(&cartan);
        let symmetrizer: Vec<i64> = root_lengths
            .iter()
            .map(|l| (q(2) / l).to_integer().to_i64().unwrap())
            .collect();
        let mut comarks = vec![1i64];
        for i in 1..=n {
            let c = q(marks[i]) * &root_lengths[i - 1] / q(2);
            comarks.push(c.to_integer().to_i64().unwrap());
        }
        let qa = linalg::to_q_matrix(&cartan);
        let det_cartan = linalg::determinant(&qa).to_integer().to_i64().unwrap();
        let inverse_cartan = linalg::inverse(&qa).expect("Cartan matrices are invertible");
        let positive_roots = positive_roots_from_cartan(&cartan);
        SimpleAlgebra {
            algebra_type,
            cartan,
            marks,
            comarks,
            symmetrizer,
            root_lengths,
            det_cartan,
            inverse_cartan,
            positive_roots,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(SimpleAlgebra::new(s.parse()?))
    }

    pub fn algebra_type(&self) -> AlgebraType {
        self.algebra_type
    }

    pub fn series(&self) -> Series {
        self.algebra_type.series
    }

    pub fn rank(&self) -> usize {
        self.algebra_type.rank
    }

    pub fn name(&self) -> String {
        self.algebra_type.to_string()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Marks on nodes `0..=n`; entry 0 is the extension node's mark 1.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn mark(&self, k: usize) -> i64 {
        self.marks[k]
    }

    /// Comarks on nodes `0..=n`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn root_lengths(&self) -> &[Q] {
        &self.root_lengths
    }

    pub fn det_cartan(&self) -> i64 {
        self.det_cartan
    }

    pub fn inverse_cartan(&self) -> &[Vec<Q>] {
        &self.inverse_cartan
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn check_node(&self, k: usize) -> Result<()> {
        if (1..=self.rank()).contains(&k) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: k,
                rank: self.rank(),
            })
        }
    }

    /// Converts simple-root coordinates to ω-coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        let n = self.rank();
        Weight::new(
            (0..n)
                .map(|j| (0..n).map(|i| root[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// Simple-root coordinates of an ω-coordinate weight (rational in general).
    pub fn weight_to_root(&self, w: &[i64]) -> Vec<Q> {
        let v: Vec<Q> = w.iter().map(|&x| q(x)).collect();
        linalg::vec_mat(&v, &self.inverse_cartan)
    }

    /// Coroot Gram matrix `(α̂_i, α̂_j) = d_i A_ij`.
    pub fn coroot_gram(&self) -> Vec<Vec<i64>> {
        self.cartan
            .iter()
            .zip(&self.symmetrizer)
            .map(|(row, &d)| row.iter().map(|&a| d * a).collect())
            .collect()
    }

    /// Value α_i(h) for a coweight `h` in α̂-coordinates.
    pub fn root_on_coweight(&self, i: usize, h: &[Q]) -> Q {
        self.cartan[i]
            .iter()
            .zip(h)
            .fold(Q::zero(), |acc, (&a, x)| acc + q(a) * x)
    }

    /// Coefficients `c` such that the height of a weight `w` is `Σ c_j w_j`.
    pub fn height_coefficients(&self) -> Vec<Q> {
        self.inverse_cartan
            .iter()
            .map(|row| row.iter().fold(Q::zero(), |acc, x| acc + x))
            .collect()
    }
}

pub fn catalog(algebra_type: AlgebraType) -> SimpleAlgebra {
    SimpleAlgebra::new(algebra_type)
}

/// ω̂_j in α̂-coordinates: column `j` of the inverse Cartan matrix.
pub fn dual_fundamental_coweight(alg: &SimpleAlgebra, j: usize) -> Result<Vec<Q>> {
    alg.check_node(j)?;
    Ok(alg
        .inverse_cartan
        .iter()
        .map(|row| row[j - 1].clone())
        .collect())
}

/// Gram matrix of the fundamental weights, long roots of squared length 2.
pub fn quadratic_form(alg: &SimpleAlgebra) -> Vec<Vec<Q>> {
    let n = alg.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| &alg.inverse_cartan[j][i] * &alg.root_lengths[i] / q(2))
                .collect()
        })
        .collect()
}

pub fn highest_root(alg: &SimpleAlgebra) -> Weight {
    alg.root_to_weight(&alg.marks[1..])
}

/// Extended Cartan matrix on nodes `0..=n`.
pub fn extended_cartan(alg: &SimpleAlgebra) -> Vec<Vec<i64>> {
    let n = alg.rank();
    let mut e = vec![vec![0i64; n + 1]; n + 1];
    e[0][0] = 2;
    for i in 1..=n {
        for j in 1..=n {
            e[i][j] = alg.cartan[i - 1][j - 1];
        }
    }
    for j in 1..=n {
        // ⟨α_0, α_j^∨⟩ with α_0 = -Σ m_i α_i
        e[0][j] = -(1..=n)
            .map(|i| alg.marks[i] * alg.cartan[i - 1][j - 1])
            .sum::<i64>();
        // α_j(α̂_0) with α̂_0 = -Σ m^∨_i α̂_i
        e[j][0] = -(1..=n)
            .map(|i| alg.comarks[i] * alg.cartan[j - 1][i - 1])
            .sum::<i64>();
    }
    e
}

pub fn extended_diagram(alg: &SimpleAlgebra) -> ExtendedDiagram {
    let e = extended_cartan(alg);
    let n = alg.rank();
    let nodes = (0..=n)
        .map(|i| {
            let bonds = (0..=n)
                .filter(|&j| j != i && e[i][j] != 0)
                .map(|j| {
                    let (a, b) = (e[i][j].abs(), e[j][i].abs());
                    let arrow = match a.cmp(&b) {
                        std::cmp::Ordering::Greater => Arrow::ToNeighbor,
                        std::cmp::Ordering::Less => Arrow::FromNeighbor,
                        std::cmp::Ordering::Equal => Arrow::None,
                    };
                    Bond {
                        neighbor: j,
                        multiplicity: a.max(b) as u8,
                        arrow,
                    }
                })
                .collect();
            ExtendedNode {
                index: i,
                mark: alg.marks[i],
                comark: alg.comarks[i],
                bonds,
            }
        })
        .collect();
    ExtendedDiagram { nodes }
}

/// One connected component of a sub-diagram, identified with a catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub algebra_type: AlgebraType,
    /// `nodes[a]` is the diagram node playing the role of catalog node `a+1`.
    pub nodes: Vec<usize>,
}

/// Which of B2/C2 to report for a two-node double-bond component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankTwoPreference {
    B,
    C,
}

fn candidate_types(size: usize, pref: RankTwoPreference) -> Vec<AlgebraType> {
    let mut out = vec![];
    let mut push = |s: Series, r: usize| {
        if let Ok(t) = AlgebraType::new(s, r) {
            out.push(t);
        }
    };
    push(Series::A, size);
    if size == 2 && pref == RankTwoPreference::C {
        push(Series::C, 2);
        push(Series::B, 2);
    } else {
        push(Series::B, size);
        push(Series::C, size);
    }
    push(Series::D, size);
    push(Series::E, size);
    push(Series::F, size);
    push(Series::G, size);
    out
}

/// Finds `p` with `sub[p[a]][p[b]] == target[a][b]`, trying candidates in
/// increasing order so an identity match is found first.
pub fn find_isomorphism(
    sub: &[Vec<i64>],
    nodes: &[usize],
    target: &[Vec<i64>],
) -> Option<Vec<usize>> {
    if nodes.len() != target.len() {
        return None;
    }
    fn extend(
        sub: &[Vec<i64>],
        nodes: &[usize],
        target: &[Vec<i64>],
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let a = chosen.len();
        if a == target.len() {
            return true;
        }
        for (idx, &cand) in nodes.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(b, &nb)| sub[cand][nb] == target[a][b] && sub[nb][cand] == target[b][a])
                && sub[cand][cand] == target[a][a];
            if ok {
                used[idx] = true;
                chosen.push(cand);
                if extend(sub, nodes, target, used, chosen) {
                    return true;
                }
                chosen.pop();
                used[idx] = false;
            }
        }
        false
    }
    let mut used = vec![false; nodes.len()];
    let mut chosen = Vec::new();
    extend(sub, nodes, target, &mut used, &mut chosen).then_some(chosen)
}

/// Connected components of the diagram restricted to `nodes`, in order of
/// their smallest node.
pub fn connected_components(cartan: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen: HashSet<usize> = HashSet::new();
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for &s in &sorted {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen.insert(s);
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for &j in &sorted {
                if !seen.contains(&j) && cartan[i][j] != 0 {
                    seen.insert(j);
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Classifies the sub-diagram of `cartan` spanned by `nodes`.
pub fn classify(
    cartan: &[Vec<i64>],
    nodes: &[usize],
    pref: RankTwoPreference,
) -> Result<Vec<Component>> {
    connected_components(cartan, nodes)
        .into_iter()
        .map(|comp| {
            for t in candidate_types(comp.len(), pref) {
                let target = cartan_of(t);
                if let Some(p) = find_isomorphism(cartan, &comp, &target) {
                    return Ok(Component {
                        algebra_type: t,
                        nodes: p,
                    });
                }
            }
            Err(Error::InvalidEmbedding(format!(
                "sub-diagram on nodes {comp:?} is not of finite type"
            )))
        })
        .collect()
}

/// Cartan matrix of a catalog type, without building the full record.
pub fn cartan_matrix(t: AlgebraType) -> Vec<Vec<i64>> {
    cartan_of(t)
}

/// Weyl group order by product formula.
pub fn weyl_group_order(t: AlgebraType) -> u128 {
    let n = t.rank as u128;
    let fact = |k: u128| (1..=k).product::<u128>();
    match t.series {
        Series::A => fact(n + 1),
        Series::B | Series::C => (1u128 << n) * fact(n),
        Series::D => (1u128 << (n - 1)) * fact(n),
        Series::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Series::F => 1152,
        Series::G => 12,
    }
}

pub fn is_prime(m: i64) -> bool {
    m >= 2 && (2..m).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;

    fn alg(s: &str) -> SimpleAlgebra {
        SimpleAlgebra::parse(s).unwrap()
    }

    #[test]
    fn parse_and_bounds() {
        assert!("E6".parse::<AlgebraType>().is_ok());
        assert!("b4".parse::<AlgebraType>().is_ok());
        assert!("H7".parse::<AlgebraType>().is_err());
        assert!("D3".parse::<AlgebraType>().is_err());
        assert!("E9".parse::<AlgebraType>().is_err());
        assert!("A0".parse::<AlgebraType>().is_err());
        assert_eq!("F4".parse::<AlgebraType>().unwrap().to_string(), "F4");
    }

    #[test]
    fn a2_record() {
        let a = alg("A2");
        assert_eq!(a.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(&a.marks()[1..], &[1, 1]);
        assert_eq!(a.det_cartan(), 3);
    }

    #[test]
    fn g2_marks_include_node_zero() {
        assert_eq!(alg("G2").marks(), &[1, 2, 3]);
    }

    #[test]
    fn rank_two_numbering() {
        assert_eq!(alg("B2").cartan(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(alg("C2").cartan(), &[vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn determinants() {
        for (s, d) in [
            ("A1", 2),
            ("A5", 6),
            ("B3", 2),
            ("C4", 2),
            ("D5", 4),
            ("D6", 4),
            ("E6", 3),
            ("E7", 2),
            ("E8", 1),
            ("F4", 1),
            ("G2", 1),
        ] {
            assert_eq!(alg(s).det_cartan(), d, "{s}");
        }
    }

    #[test]
    fn marks_are_highest_root_coefficients() {
        // the highest root is the unique positive root of maximal height
        for s in ["A3", "B4", "C3", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let a = alg(s);
            let top = a.positive_roots().last().unwrap();
            assert_eq!(top.as_slice(), &a.marks()[1..], "{s}");
        }
    }

    #[test]
    fn positive_root_counts() {
        for (s, c) in [
            ("A4", 10),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(alg(s).positive_roots().len(), c, "{s}");
        }
    }

    #[test]
    fn coweights() {
        let a1 = alg("A1");
        assert_eq!(
            dual_fundamental_coweight(&a1, 1).unwrap(),
            vec![q_frac(1, 2)]
        );
        let f4 = alg("F4");
        assert_eq!(
            dual_fundamental_coweight(&f4, 2).unwrap(),
            vec![q(3), q(6), q(4), q(2)]
        );
        let e6 = alg("E6");
        let w = dual_fundamental_coweight(&e6, 1).unwrap();
        let expect: Vec<Q> = [4, 5, 6, 4, 2, 3].iter().map(|&x| q_frac(x, 3)).collect();
        assert_eq!(w, expect);
        assert!(dual_fundamental_coweight(&e6, 7).is_err());
    }

    #[test]
    fn quadratic_forms() {
        assert_eq!(quadratic_form(&alg("A1")), vec![vec![q_frac(1, 2)]]);
        assert_eq!(
            quadratic_form(&alg("A2")),
            vec![
                vec![q_frac(2, 3), q_frac(1, 3)],
                vec![q_frac(1, 3), q_frac(2, 3)]
            ]
        );
        assert_eq!(quadratic_form(&alg("B2"))[1][1], q_frac(1, 2));
    }

    #[test]
    fn highest_roots() {
        assert_eq!(highest_root(&alg("A2")).coords(), &[1, 1]);
        assert_eq!(highest_root(&alg("D4")).coords(), &[0, 1, 0, 0]);
        assert_eq!(highest_root(&alg("F4")).coords(), &[1, 0, 0, 0]);
    }

    #[test]
    fn extended_diagrams() {
        let b2 = extended_diagram(&alg("B2"));
        assert_eq!(b2.neighbors(0), vec![2]);
        let a4 = extended_diagram(&alg("A4"));
        for node in &a4.nodes {
            assert_eq!(node.bonds.len(), 2);
        }
        assert_eq!(extended_diagram(&alg("E8")).neighbors(0), vec![1]);
        assert_eq!(extended_diagram(&alg("E6")).neighbors(0), vec![6]);
        assert_eq!(extended_diagram(&alg("E7")).neighbors(0), vec![1]);
        assert_eq!(extended_diagram(&alg("F4")).neighbors(0), vec![1]);
        assert_eq!(extended_diagram(&alg("G2")).neighbors(0), vec![1]);
        assert_eq!(extended_diagram(&alg("D5")).neighbors(0), vec![2]);
        assert_eq!(extended_diagram(&alg("B4")).neighbors(0), vec![2]);
        assert_eq!(extended_diagram(&alg("C3")).neighbors(0), vec![1]);
    }

    #[test]
    fn classify_f4_node_two() {
        let f4 = alg("F4");
        let e = extended_cartan(&f4);
        let comps = classify(&e, &[0, 1, 3, 4], RankTwoPreference::B).unwrap();
        let names: Vec<String> = comps.iter().map(|c| c.algebra_type.to_string()).collect();
        assert_eq!(names, vec!["A2", "A2"]);
        assert_eq!(comps[0].nodes, vec![0, 1]);
        assert_eq!(comps[1].nodes, vec![3, 4]);
    }

    #[test]
    fn classify_b_node_one_gives_d() {
        let b5 = alg("B5");
        let e = extended_cartan(&b5);
        let comps = classify(&e, &[0, 2, 3, 4, 5], RankTwoPreference::B).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].algebra_type.to_string(), "B5");
        let b4 = alg("B4");
        let e = extended_cartan(&b4);
        let comps = classify(&e, &[0, 1, 2, 3], RankTwoPreference::B).unwrap();
        assert_eq!(comps[0].algebra_type.to_string(), "D4");
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_group_order("A2".parse().unwrap()), 6);
        assert_eq!(weyl_group_order("B3".parse().unwrap()), 48);
        assert_eq!(weyl_group_order("D4".parse().unwrap()), 192);
    }

    #[test]
    fn comarks_match_marks_when_simply_laced() {
        for s in ["A5", "D7", "E6", "E7", "E8"] {
            let a = alg(s);
            assert_eq!(a.marks(), a.comarks(), "{s}");
        }
        assert_eq!(alg("B3").comarks(), &[1, 1, 2, 1]);
        assert_eq!(alg("G2").comarks(), &[1, 2, 1]);
    }

    #[test]
    fn extended_row_is_minus_highest_root() {
        for s in ["B3", "C4", "E7", "F4", "G2"] {
            let a = alg(s);
            let e = extended_cartan(&a);
            let theta = highest_root(&a);
            for j in 1..=a.rank() {
                assert_eq!(e[0][j], -theta.coords()[j - 1], "{s}");
            }
        }
    }
}
