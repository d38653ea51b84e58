//! Maximal regular subalgebras, their embeddings and centralizers.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::{
    classify, dual_fundamental_coweight, extended_cartan, find_isomorphism, is_prime, AlgebraType,
    RankTwoPreference, Series, SimpleAlgebra,
};
use crate::linalg::{self, q, Q};
use crate::snf::smith_normal_form;
use crate::torus::{
    center_generators, center_of, eigenvalue_form, finite_abelian_structure, lattice_quotient,
    CongruenceForm, FiniteAbelianGroup, TorusElement,
};
use crate::weyl_weights::Weight;

/// Ordered direct sum of simple algebras; may be empty when the whole
/// subalgebra is the one-dimensional `H_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimpleAlgebra {
    factors: Vec<SimpleAlgebra>,
}

impl SemisimpleAlgebra {
    pub fn new(factors: Vec<SimpleAlgebra>) -> Self {
        SemisimpleAlgebra { factors }
    }

    pub fn from_types(types: &[AlgebraType]) -> Self {
        SemisimpleAlgebra::new(types.iter().map(|&t| SimpleAlgebra::new(t)).collect())
    }

    pub fn factors(&self) -> &[SimpleAlgebra] {
        &self.factors
    }

    pub fn types(&self) -> Vec<AlgebraType> {
        self.factors
            .iter()
            .map(SimpleAlgebra::algebra_type)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(SimpleAlgebra::rank).sum()
    }

    /// Start offset of each factor within concatenated coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut acc = 0;
        for f in &self.factors {
            out.push(acc);
            acc += f.rank();
        }
        out
    }

    /// Block-diagonal Cartan matrix.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0; n]; n];
        for (f, off) in self.factors.iter().zip(self.offsets()) {
            for (i, row) in f.cartan().iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    a[off + i][off + j] = x;
                }
            }
        }
        a
    }

    /// Splits concatenated coordinates into per-factor weights.
    pub fn split(&self, w: &[i64]) -> Vec<Weight> {
        self.factors
            .iter()
            .zip(self.offsets())
            .map(|(f, off)| Weight::new(w[off..off + f.rank()].to_vec()))
            .collect()
    }

    /// Renders concatenated coordinates per factor, e.g. `(0,0)(1,1)`.
    pub fn format_weight(&self, w: &Weight) -> String {
        if self.factors.is_empty() {
            return "()".to_string();
        }
        self.split(w.coords())
            .iter()
            .map(Weight::to_string)
            .collect()
    }
}

impl fmt::Display for SemisimpleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(SimpleAlgebra::name).collect();
        write!(f, "{}", names.join("+"))
    }
}

impl FromStr for SemisimpleAlgebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "0" || t.eq_ignore_ascii_case("H1") {
            return Ok(SemisimpleAlgebra::new(vec![]));
        }
        let types = t
            .split(['+', '\u{2295}'])
            .map(str::trim)
            .filter(|p| !p.eq_ignore_ascii_case("H1"))
            .map(str::parse::<AlgebraType>)
            .collect::<Result<Vec<_>>>()?;
        Ok(SemisimpleAlgebra::from_types(&types))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    Semisimple,
    Reductive,
}

/// Subalgebra coroots in the ambient α̂ basis; the rows form the
/// projection matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    ambient: SimpleAlgebra,
    sub: SemisimpleAlgebra,
    coroot_rows: Vec<Vec<i64>>,
    h1_row: Option<Vec<i64>>,
    /// Extended-diagram node whose coroot each row is the image of.
    nodes: Option<Vec<usize>>,
    /// Roots dual to the rows, in ambient ω-coordinates.
    roots: Vec<Vec<i64>>,
}

fn coroot_to_root(ambient: &SimpleAlgebra, c: &[i64]) -> Result<Vec<i64>> {
    let g = ambient.coroot_gram();
    let gc: Vec<i64> = g
        .iter()
        .map(|row| row.iter().zip(c).map(|(a, b)| a * b).sum())
        .collect();
    let norm: i64 = gc.iter().zip(c).map(|(a, b)| a * b).sum();
    if norm <= 0 {
        return Err(Error::InvalidEmbedding(format!(
            "row {c:?} is not a coroot"
        )));
    }
    let root: Vec<Q> = gc.iter().map(|&x| q(2 * x) / q(norm)).collect();
    let ints: Option<Vec<i64>> = root.iter().map(linalg::to_i64).collect();
    let ints = ints.ok_or_else(|| Error::InvalidEmbedding(format!("row {c:?} is not a coroot")))?;
    let simple = ambient.weight_to_root(&ints);
    let coeffs: Option<Vec<i64>> = simple.iter().map(linalg::to_i64).collect();
    let is_root = coeffs.is_some_and(|v| {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        ambient
            .positive_roots()
            .iter()
            .any(|r| *r == v || *r == neg)
    });
    if !is_root {
        return Err(Error::InvalidEmbedding(format!(
            "row {c:?} is not a coroot"
        )));
    }
    Ok(ints)
}

fn normalize_h1(v: &[Q]) -> Vec<i64> {
    linalg::normalized_direction(v)
}

impl Embedding {
    pub fn ambient(&self) -> &SimpleAlgebra {
        &self.ambient
    }

    pub fn sub(&self) -> &SemisimpleAlgebra {
        &self.sub
    }

    pub fn coroot_rows(&self) -> &[Vec<i64>] {
        &self.coroot_rows
    }

    pub fn h1_row(&self) -> Option<&[i64]> {
        self.h1_row.as_deref()
    }

    pub fn nodes(&self) -> Option<&[usize]> {
        self.nodes.as_deref()
    }

    /// Retained simple roots in ambient ω-coordinates.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn kind(&self) -> EmbeddingKind {
        if self.h1_row.is_some() {
            EmbeddingKind::Reductive
        } else {
            EmbeddingKind::Semisimple
        }
    }

    /// Full projection matrix including the `H_1` row when present.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let mut m = self.coroot_rows.clone();
        if let Some(h) = &self.h1_row {
            m.push(h.clone());
        }
        m
    }

    /// Attaches the node correspondence used to recover σ.
    pub fn with_nodes(mut self, nodes: Vec<usize>) -> Result<Self> {
        if nodes.len() != self.coroot_rows.len() {
            return Err(Error::InvalidEmbedding(format!(
                "{} node labels for {} rows",
                nodes.len(),
                self.coroot_rows.len()
            )));
        }
        self.nodes = Some(nodes);
        Ok(self)
    }

    /// Fills in `h1_row` as the primitive normal of the retained roots.
    pub fn with_computed_h1(mut self) -> Result<Self> {
        let n = self.ambient.rank();
        if self.sub.rank() + 1 != n {
            return Err(Error::InvalidEmbedding(format!(
                "a reductive embedding in rank {n} needs {} coroot rows",
                n - 1
            )));
        }
        let m: Vec<Vec<Q>> = self
            .roots
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        let k = linalg::kernel(&m, n);
        if k.len() != 1 {
            return Err(Error::InvalidEmbedding(
                "retained roots are dependent".into(),
            ));
        }
        self.h1_row = Some(normalize_h1(&k[0]));
        Ok(self)
    }

    /// Images `(sub weight, H_1 value)` of an ambient weight.
    pub fn project_weight(&self, w: &Weight) -> Result<(Weight, Option<i64>)> {
        w.check_len(self.ambient.rank())?;
        let dot = |row: &[i64]| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum::<i64>();
        let sub = Weight::new(self.coroot_rows.iter().map(|r| dot(r)).collect());
        Ok((sub, self.h1_row.as_deref().map(dot)))
    }

    /// Applies the coweight reflections `s_{i_1} ... s_{i_r}` (0-based
    /// indices, rightmost first) to every row.
    pub fn transported(&self, word: &[usize]) -> Result<Embedding> {
        let apply = |v: &[i64]| {
            let mut h: Vec<Q> = v.iter().map(|&x| q(x)).collect();
            for &i in word.iter().rev() {
                h = reflect_coweight(&self.ambient, i, &h);
            }
            h.iter()
                .map(|x| linalg::to_i64(x).unwrap())
                .collect::<Vec<i64>>()
        };
        let rows = self.coroot_rows.iter().map(|r| apply(r)).collect();
        let mut e = embedding_from_projection(&self.ambient, &self.sub, rows)?;
        e.nodes = self.nodes.clone();
        if self.h1_row.is_some() {
            e = e.with_computed_h1()?;
        }
        Ok(e)
    }
}

/// `s_i(h) = h - α_i(h) α̂_i` for a coweight in α̂-coordinates.
pub fn reflect_coweight(alg: &SimpleAlgebra, i: usize, h: &[Q]) -> Vec<Q> {
    let a = alg.root_on_coweight(i, h);
    let mut out = h.to_vec();
    out[i] -= a;
    out
}

/// Reflects a coweight into the dominant chamber `α_i(h) ≥ 0`, returning the
/// representative and the word `i_1, ..., i_r` with `h = s_{i_1}...s_{i_r} h_dom`.
pub fn dominant_coweight(alg: &SimpleAlgebra, h: &[Q]) -> (Vec<Q>, Vec<usize>) {
    let mut v = h.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..alg.rank()).find(|&i| alg.root_on_coweight(i, &v) < Q::zero()) {
        v = reflect_coweight(alg, i, &v);
        word.push(i);
    }
    (v, word)
}

/// Validates a projection matrix and builds the embedding. A trailing extra
/// row beyond the subalgebra rank is read as the `H_1` row; for corank one
/// without that row it is computed.
pub fn embedding_from_projection(
    alg: &SimpleAlgebra,
    sub: &SemisimpleAlgebra,
    matrix: Vec<Vec<i64>>,
) -> Result<Embedding> {
    let n = alg.rank();
    let r = sub.rank();
    for row in &matrix {
        if row.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: row.len(),
            });
        }
    }
    let mut rows = matrix;
    let h1 = match rows.len() {
        x if x == r => None,
        x if x == r + 1 => rows.pop(),
        x => {
            return Err(Error::InvalidEmbedding(format!(
                "{x} rows given for a subalgebra of rank {r}"
            )))
        }
    };
    let roots = rows
        .iter()
        .map(|c| coroot_to_root(alg, c))
        .collect::<Result<Vec<_>>>()?;
    let target = sub.cartan();
    for a in 0..r {
        for b in 0..r {
            let v: i64 = roots[a].iter().zip(&rows[b]).map(|(x, y)| x * y).sum();
            if v != target[a][b] {
                return Err(Error::InvalidEmbedding(format!(
                    "Cartan entry ({},{}) of {sub} is {} but the rows pair to {v}",
                    a + 1,
                    b + 1,
                    target[a][b]
                )));
            }
        }
    }
    if let Some(h) = &h1 {
        let hq: Vec<Q> = h.iter().map(|&x| q(x)).collect();
        if hq.iter().all(Zero::is_zero) || normalize_h1(&hq) != *h {
            return Err(Error::InvalidEmbedding(format!(
                "H_1 row {h:?} is not primitive with positive leading entry"
            )));
        }
        for (a, root) in roots.iter().enumerate() {
            let v: i64 = root.iter().zip(h).map(|(x, y)| x * y).sum();
            if v != 0 {
                return Err(Error::InvalidEmbedding(format!(
                    "H_1 row does not annihilate root {}",
                    a + 1
                )));
            }
        }
        if r + 1 != n {
            return Err(Error::InvalidEmbedding("H_1 row needs corank one".into()));
        }
    } else if r + 1 != n && r != n {
        return Err(Error::InvalidEmbedding(format!(
            "{r} rows do not give a subalgebra of rank {n} or {}",
            n - 1
        )));
    }
    let corank_one = h1.is_none() && r + 1 == n;
    let emb = Embedding {
        ambient: alg.clone(),
        sub: sub.clone(),
        coroot_rows: rows,
        h1_row: h1,
        nodes: None,
        roots,
    };
    if corank_one {
        emb.with_computed_h1()
    } else {
        Ok(emb)
    }
}

fn rank_two_preference(alg: &SimpleAlgebra) -> RankTwoPreference {
    if alg.series() == Series::C {
        RankTwoPreference::C
    } else {
        RankTwoPreference::B
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Deletes a prime-mark node from the extended diagram.
pub fn delete_node_semisimple(
    alg: &SimpleAlgebra,
    k: usize,
) -> Result<(SemisimpleAlgebra, Embedding)> {
    if alg.series() == Series::A {
        return Err(Error::UnsupportedAmbient(alg.name()));
    }
    alg.check_node(k)?;
    let mark = alg.mark(k);
    if !is_prime(mark) {
        return Err(Error::MarkNotPrime { node: k, mark });
    }
    let n = alg.rank();
    let retained: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    let comps = classify(&extended_cartan(alg), &retained, rank_two_preference(alg))?;
    let alpha0: Vec<i64> = alg.comarks()[1..].iter().map(|c| -c).collect();
    let mut rows = Vec::with_capacity(n);
    let mut nodes = Vec::with_capacity(n);
    for c in &comps {
        for &node in &c.nodes {
            rows.push(if node == 0 {
                alpha0.clone()
            } else {
                unit(n, node - 1)
            });
            nodes.push(node);
        }
    }
    let sub =
        SemisimpleAlgebra::from_types(&comps.iter().map(|c| c.algebra_type).collect::<Vec<_>>());
    let emb = embedding_from_projection(alg, &sub, rows)?.with_nodes(nodes)?;
    Ok((sub, emb))
}

/// Deletes a mark-1 node from the ordinary diagram.
pub fn delete_node_reductive(
    alg: &SimpleAlgebra,
    k: usize,
) -> Result<(SemisimpleAlgebra, Embedding)> {
    alg.check_node(k)?;
    if !(1..=alg.rank()).any(|i| alg.mark(i) == 1) {
        return Err(Error::NoMarkOneNode(alg.name()));
    }
    let mark = alg.mark(k);
    if mark != 1 {
        return Err(Error::MarkNotOne { node: k, mark });
    }
    let n = alg.rank();
    let retained: Vec<usize> = (1..=n).filter(|&i| i != k).collect();
    let comps = classify(&extended_cartan(alg), &retained, rank_two_preference(alg))?;
    let mut rows = Vec::with_capacity(n);
    let mut nodes = Vec::with_capacity(n);
    for c in &comps {
        for &node in &c.nodes {
            rows.push(unit(n, node - 1));
            nodes.push(node);
        }
    }
    let sub =
        SemisimpleAlgebra::from_types(&comps.iter().map(|c| c.algebra_type).collect::<Vec<_>>());
    let h1 = normalize_h1(&dual_fundamental_coweight(alg, k)?);
    rows.push(h1);
    let emb = embedding_from_projection(alg, &sub, rows)?.with_nodes(nodes)?;
    Ok((sub, emb))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CentralizerKind {
    Discrete,
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelativeForm {
    /// Residue form of the centralizer generator.
    Modular(CongruenceForm),
    /// The `H_1` row read as an integer linear form.
    Integral(Vec<i64>),
}

impl fmt::Display for RelativeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeForm::Modular(c) => write!(f, "{c}"),
            RelativeForm::Integral(v) => write!(f, "{}", crate::torus::linear_form_string(v)),
        }
    }
}

/// Center form of one simple factor of the subalgebra, pulled back to the
/// ambient weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorForm {
    pub factor: usize,
    pub factor_type: AlgebraType,
    /// Node of the factor whose fundamental coweight generates.
    pub node: usize,
    pub form: CongruenceForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerDescription {
    pub kind: CentralizerKind,
    pub node: usize,
    pub mark: i64,
    pub finite_part: FiniteAbelianGroup,
    pub has_u1: bool,
    pub relative_form: RelativeForm,
    pub quotient_by_center: Option<FiniteAbelianGroup>,
    pub u1_quotient: Option<FiniteAbelianGroup>,
    pub ambient_center: FiniteAbelianGroup,
    /// Center of the subgroup, computed from the factors alone.
    pub sub_center: FiniteAbelianGroup,
    pub sub_center_forms: Vec<FactorForm>,
    /// σ(ω̂_k) for discrete centralizers.
    pub sigma_coweight: Option<Vec<Q>>,
    /// `(1/m_k) σ(ω̂_k)`.
    pub generator: Option<Vec<Q>>,
    /// `Z(G) ∩ U_1` for continuous centralizers.
    pub center_in_u1: Option<FiniteAbelianGroup>,
}

impl CentralizerDescription {
    /// `Z_3`, `U_1`, `U_1 × Z_2`.
    pub fn structure(&self) -> String {
        match self.kind {
            CentralizerKind::Discrete => self.finite_part.to_string(),
            CentralizerKind::Continuous => {
                if self.finite_part.is_trivial() {
                    "U_1".to_string()
                } else {
                    format!("U_1 × {}", self.finite_part)
                }
            }
        }
    }
}

/// Fundamental coweight of sub factor node, in ambient α̂-coordinates.
fn sub_fundamental_coweight(emb: &Embedding, factor: usize, node: usize) -> Vec<Q> {
    let f = &emb.sub.factors[factor];
    let off = emb.sub.offsets()[factor];
    let n = emb.ambient.rank();
    let mut out = vec![Q::zero(); n];
    for b in 0..f.rank() {
        let coef = &f.inverse_cartan()[b][node - 1];
        for (o, &c) in out.iter_mut().zip(&emb.coroot_rows[off + b]) {
            *o += coef * q(c);
        }
    }
    out
}

/// Generator node(s) whose coweights generate the factor's center.
fn center_generator_nodes(t: AlgebraType) -> Vec<usize> {
    let n = t.rank;
    match t.series {
        Series::A | Series::C => vec![n],
        Series::B => vec![1],
        Series::D if n % 2 == 1 => vec![n],
        Series::D => vec![1, n],
        Series::E if n == 6 => vec![1],
        Series::E if n == 7 => vec![6],
        _ => vec![],
    }
}

/// Center of the subgroup: pulled-back centers of every simple factor.
pub fn subgroup_center(emb: &Embedding) -> FiniteAbelianGroup {
    let mut gens = Vec::new();
    for (fi, f) in emb.sub.factors.iter().enumerate() {
        for node in (1..=f.rank()).filter(|&j| f.mark(j) == 1) {
            gens.push(TorusElement::new(&sub_fundamental_coweight(emb, fi, node)));
        }
    }
    finite_abelian_structure(emb.ambient.rank(), &gens)
}

pub fn subalgebra_center_forms(emb: &Embedding) -> Vec<FactorForm> {
    let mut out = Vec::new();
    for (fi, f) in emb.sub.factors.iter().enumerate() {
        for node in center_generator_nodes(f.algebra_type()) {
            let t = TorusElement::new(&sub_fundamental_coweight(emb, fi, node));
            out.push(FactorForm {
                factor: fi + 1,
                factor_type: f.algebra_type(),
                node,
                form: eigenvalue_form(&t),
            });
        }
    }
    out
}

/// Extended-diagram node for each row: the stored labels, or the first
/// diagram isomorphism onto the retained nodes.
fn row_nodes(alg: &SimpleAlgebra, k: usize, emb: &Embedding) -> Result<Vec<usize>> {
    let ext = extended_cartan(alg);
    let retained: Vec<usize> = (0..=alg.rank()).filter(|&i| i != k).collect();
    let target = emb.sub.cartan();
    if let Some(nodes) = &emb.nodes {
        let mut sorted = nodes.clone();
        sorted.sort_unstable();
        let consistent = sorted == retained
            && (0..nodes.len())
                .all(|a| (0..nodes.len()).all(|b| ext[nodes[a]][nodes[b]] == target[a][b]));
        if !consistent {
            return Err(Error::InvalidEmbedding(format!(
                "node labels {nodes:?} do not match the diagram with node {k} deleted"
            )));
        }
        return Ok(nodes.clone());
    }
    find_isomorphism(&ext, &retained, &target).ok_or_else(|| {
        Error::InvalidEmbedding(format!(
            "{} is not the subalgebra obtained by deleting node {k}",
            emb.sub
        ))
    })
}

/// σ(ω̂_k), where σ sends each retained extended coroot to its row.
pub fn transported_fundamental_coweight(
    alg: &SimpleAlgebra,
    k: usize,
    emb: &Embedding,
) -> Result<Vec<Q>> {
    let nodes = row_nodes(alg, k, emb)?;
    let n = alg.rank();
    let comarks = alg.comarks();
    let mut image: Vec<Option<Vec<Q>>> = vec![None; n + 1];
    for (row, &node) in emb.coroot_rows.iter().zip(&nodes) {
        image[node] = Some(row.iter().map(|&x| q(x)).collect());
    }
    // Σ_{i=0}^{n} m^∨_i α̂_i = 0 fixes the image of the deleted coroot
    let mut sum = vec![Q::zero(); n];
    for (i, img) in image.iter().enumerate() {
        if let Some(v) = img {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += q(comarks[i]) * x;
            }
        }
    }
    image[k] = Some(sum.into_iter().map(|x| -x / q(comarks[k])).collect());
    let omega = dual_fundamental_coweight(alg, k)?;
    let mut out = vec![Q::zero(); n];
    for (i, c) in omega.iter().enumerate() {
        for (o, x) in out.iter_mut().zip(image[i + 1].as_ref().unwrap()) {
            *o += c * x;
        }
    }
    Ok(out)
}

pub fn discrete_centralizer(
    alg: &SimpleAlgebra,
    k: usize,
    emb: &Embedding,
) -> Result<CentralizerDescription> {
    alg.check_node(k)?;
    let mark = alg.mark(k);
    if alg.series() == Series::A {
        return Err(Error::UnsupportedAmbient(alg.name()));
    }
    if !is_prime(mark) {
        return Err(Error::MarkNotPrime { node: k, mark });
    }
    if emb.kind() != EmbeddingKind::Semisimple {
        return Err(Error::InvalidEmbedding(
            "expected a semisimple embedding".into(),
        ));
    }
    let n = alg.rank();
    let sigma = transported_fundamental_coweight(alg, k, emb)?;
    let x: Vec<Q> = sigma.iter().map(|c| c / q(mark)).collect();
    let center: Vec<TorusElement> = center_generators(alg).into_iter().map(|(_, t)| t).collect();
    let mut gens = center.clone();
    gens.push(TorusElement::new(&x));
    let finite_part = finite_abelian_structure(n, &gens);

    let lattice = linalg::identity(n);
    let mut lower = lattice.clone();
    lower.extend(center.iter().map(|t| t.coords().to_vec()));
    let mut upper = lower.clone();
    upper.push(x.clone());
    let (factors, qgens) = lattice_quotient(&upper, &lower, n)?;
    let quotient = FiniteAbelianGroup {
        invariant_factors: factors,
        generators: qgens.iter().map(|v| TorusElement::new(v)).collect(),
    };

    Ok(CentralizerDescription {
        kind: CentralizerKind::Discrete,
        node: k,
        mark,
        finite_part,
        has_u1: false,
        relative_form: RelativeForm::Modular(eigenvalue_form(&TorusElement::new(&x))),
        quotient_by_center: Some(quotient),
        u1_quotient: None,
        ambient_center: center_of(alg),
        sub_center: subgroup_center(emb),
        sub_center_forms: subalgebra_center_forms(emb),
        sigma_coweight: Some(sigma),
        generator: Some(x),
        center_in_u1: None,
    })
}

/// Whether `z` lies in `Q h + Z^n`, for primitive integral `h`.
fn in_line_plus_lattice(h: &[i64], z: &[Q]) -> bool {
    let col: Vec<Vec<num_bigint::BigInt>> = h.iter().map(|&x| vec![x.into()]).collect();
    let s = smith_normal_form(&col, 1);
    s.u.iter().skip(1).all(|row| {
        row.iter()
            .zip(z)
            .fold(Q::zero(), |acc, (a, b)| {
                acc + Q::from_integer(a.clone()) * b
            })
            .is_integer()
    })
}

pub fn continuous_centralizer(
    alg: &SimpleAlgebra,
    k: usize,
    emb: &Embedding,
) -> Result<CentralizerDescription> {
    alg.check_node(k)?;
    if !(1..=alg.rank()).any(|i| alg.mark(i) == 1) {
        return Err(Error::NoMarkOneNode(alg.name()));
    }
    let mark = alg.mark(k);
    if mark != 1 {
        return Err(Error::MarkNotOne { node: k, mark });
    }
    let h1 = emb
        .h1_row()
        .ok_or_else(|| Error::InvalidEmbedding("expected a reductive embedding".into()))?
        .to_vec();
    let n = alg.rank();
    let center = center_of(alg);
    let inside: Vec<TorusElement> = center
        .elements()
        .into_iter()
        .filter(|z| in_line_plus_lattice(&h1, z.coords()))
        .collect();
    let lattice = linalg::identity(n);
    let mut upper = lattice.clone();
    upper.extend(center.generators.iter().map(|t| t.coords().to_vec()));
    let mut lower = lattice.clone();
    lower.extend(inside.iter().map(|t| t.coords().to_vec()));
    let (factors, gens) = lattice_quotient(&upper, &lower, n)?;
    let quotient = FiniteAbelianGroup {
        invariant_factors: factors,
        generators: gens.iter().map(|v| TorusElement::new(v)).collect(),
    };
    Ok(CentralizerDescription {
        kind: CentralizerKind::Continuous,
        node: k,
        mark,
        finite_part: quotient.clone(),
        has_u1: true,
        relative_form: RelativeForm::Integral(h1),
        quotient_by_center: None,
        u1_quotient: Some(quotient),
        center_in_u1: Some(finite_abelian_structure(n, &inside)),
        ambient_center: center,
        sub_center: subgroup_center(emb),
        sub_center_forms: subalgebra_center_forms(emb),
        sigma_coweight: None,
        generator: None,
    })
}

/// Dispatches on the embedding kind.
pub fn centralizer(
    alg: &SimpleAlgebra,
    k: usize,
    emb: &Embedding,
) -> Result<CentralizerDescription> {
    match emb.kind() {
        EmbeddingKind::Semisimple => discrete_centralizer(alg, k, emb),
        EmbeddingKind::Reductive => continuous_centralizer(alg, k, emb),
    }
}

/// Deletion kind implied by a node's mark: prime marks give a semisimple
/// deletion, mark 1 a reductive one.
pub fn infer_kind(alg: &SimpleAlgebra, k: usize) -> Result<EmbeddingKind> {
    alg.check_node(k)?;
    let mark = alg.mark(k);
    if mark == 1 {
        Ok(EmbeddingKind::Reductive)
    } else if is_prime(mark) && alg.series() != Series::A {
        Ok(EmbeddingKind::Semisimple)
    } else {
        Err(Error::NoDeletion { node: k, mark })
    }
}

pub fn delete_node(
    alg: &SimpleAlgebra,
    k: usize,
    kind: EmbeddingKind,
) -> Result<(SemisimpleAlgebra, Embedding)> {
    match kind {
        EmbeddingKind::Semisimple => delete_node_semisimple(alg, k),
        EmbeddingKind::Reductive => delete_node_reductive(alg, k),
    }
}

/// Checks a printed `H_1` form against node `k`: the form must be
/// Weyl-conjugate to a positive multiple of `ω̂_k`, and transporting the
/// canonical embedding by that Weyl element must reproduce it.
pub fn h1_form_realizes(alg: &SimpleAlgebra, k: usize, h: &[i64]) -> Result<Option<Embedding>> {
    let hq: Vec<Q> = h.iter().map(|&x| q(x)).collect();
    let (dom, word) = dominant_coweight(alg, &hq);
    let omega = dual_fundamental_coweight(alg, k)?;
    let Some(ratio) = omega
        .iter()
        .zip(&dom)
        .find(|(o, _)| !o.is_zero())
        .map(|(o, d)| d / o)
    else {
        return Ok(None);
    };
    let proportional = ratio > Q::zero() && omega.iter().zip(&dom).all(|(o, d)| o * &ratio == *d);
    if !proportional {
        return Ok(None);
    }
    let (_, canonical) = delete_node_reductive(alg, k)?;
    let moved = canonical.transported(&word)?;
    let expect = normalize_h1(&hq);
    Ok((moved.h1_row() == Some(expect.as_slice())).then_some(moved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn alg(s: &str) -> SimpleAlgebra {
        SimpleAlgebra::parse(s).unwrap()
    }

    fn sub(s: &str) -> SemisimpleAlgebra {
        s.parse().unwrap()
    }

    #[test]
    fn f4_node_two() {
        let f4 = alg("F4");
        let (s, emb) = delete_node_semisimple(&f4, 2).unwrap();
        assert_eq!(s.to_string(), "A2+A2");
        assert_eq!(emb.coroot_rows()[0], vec![-2, -3, -2, -1]);
        let c = discrete_centralizer(&f4, 2, &emb).unwrap();
        assert_eq!(c.finite_part.invariant_factors, vec![3]);
    }

    #[test]
    fn f4_fixture_matrix() {
        let f4 = alg("F4");
        let rows = vec![
            vec![0, 0, 1, 1],
            vec![0, 2, 1, 0],
            vec![1, 2, 1, 1],
            vec![1, 1, 1, 0],
        ];
        let emb = embedding_from_projection(&f4, &sub("A2+A2"), rows).unwrap();
        let sigma = transported_fundamental_coweight(&f4, 2, &emb).unwrap();
        assert_eq!(sigma, vec![q(0), q(-2), q(-3), q(-2)]);
        let c = discrete_centralizer(&f4, 2, &emb).unwrap();
        assert_eq!(c.relative_form.to_string(), "m_2+m_4 mod 3");
        assert_eq!(c.sub_center_forms[0].form.to_string(), "m_2+m_4 mod 3");
    }

    #[test]
    fn b3_fixture_matrix() {
        let b3 = alg("B3");
        let rows = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 1, 1]];
        let emb = embedding_from_projection(&b3, &sub("A3"), rows).unwrap();
        let c = discrete_centralizer(&b3, 3, &emb).unwrap();
        assert_eq!(c.relative_form.to_string(), "2m_1+3m_3 mod 4");
        assert_eq!(c.finite_part.invariant_factors, vec![4]);
        assert_eq!(c.quotient_by_center.unwrap().invariant_factors, vec![2]);
    }

    #[test]
    fn mismatched_sub_rejected() {
        let a2 = alg("A2");
        let err = embedding_from_projection(&a2, &sub("A1+A1"), vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(err, Err(Error::InvalidEmbedding(_))));
    }

    #[test]
    fn reductive_examples() {
        let e6 = alg("E6");
        let rows = vec![
            vec![0, 1, 1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 1, 0],
            vec![1, 1, 0, 0, 0, 0],
        ];
        let emb = embedding_from_projection(&e6, &sub("D5"), rows).unwrap();
        assert_eq!(emb.h1_row().unwrap(), &[1, -1, 0, 1, -1, 0]);
        let c = continuous_centralizer(&e6, 1, &emb).unwrap();
        assert!(c.u1_quotient.as_ref().unwrap().is_trivial());
        assert_eq!(
            c.sub_center_forms[0].form.display_signed(),
            "m_1-m_2+m_4-m_5 mod 4"
        );

        let d4 = alg("D4");
        let rows = vec![vec![1, 1, 0, 0], vec![0, 0, 0, 1], vec![0, 1, 1, 0]];
        let emb = embedding_from_projection(&d4, &sub("A3"), rows).unwrap();
        assert_eq!(emb.h1_row().unwrap(), &[1, 0, 1, 0]);
        let c = continuous_centralizer(&d4, 1, &emb).unwrap();
        assert_eq!(c.structure(), "U_1 × Z_2");
        assert_eq!(
            c.sub_center_forms[0].form.to_string(),
            "m_1+3m_3+2m_4 mod 4"
        );
    }

    #[test]
    fn deletion_errors() {
        assert!(matches!(
            delete_node_semisimple(&alg("A3"), 2),
            Err(Error::UnsupportedAmbient(_))
        ));
        assert!(matches!(
            delete_node_semisimple(&alg("F4"), 3),
            Err(Error::MarkNotPrime { node: 3, mark: 4 })
        ));
        assert!(matches!(
            delete_node_reductive(&alg("E8"), 1),
            Err(Error::NoMarkOneNode(_))
        ));
        assert!(matches!(
            delete_node_reductive(&alg("B3"), 2),
            Err(Error::MarkNotOne { node: 2, mark: 2 })
        ));
    }

    #[test]
    fn a_series_gcd_rule() {
        for n in 1..=6usize {
            let a = alg(&format!("A{n}"));
            for j in 1..=n {
                let (_, emb) = delete_node_reductive(&a, j).unwrap();
                let c = continuous_centralizer(&a, j, &emb).unwrap();
                let d = num_integer::gcd(j as u64, n as u64 + 1);
                assert_eq!(c.u1_quotient.unwrap().order(), d, "A{n} node {j}");
            }
        }
    }

    #[test]
    fn table4_form_transport() {
        let e6 = alg("E6");
        assert!(h1_form_realizes(&e6, 1, &[1, -1, 0, 1, -1, 0])
            .unwrap()
            .is_some());
        assert!(h1_form_realizes(&e6, 1, &[1, 0, 0, 0, 0, 0])
            .unwrap()
            .is_none());
    }
}
