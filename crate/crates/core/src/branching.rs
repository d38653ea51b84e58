//! Branching rules through an embedding, with relative congruence labels.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::SimpleAlgebra;
use crate::linalg::{q, Q};
use crate::subalgebra::{
    centralizer, delete_node, infer_kind, Embedding, EmbeddingKind, RelativeForm, SemisimpleAlgebra,
};
use crate::torus::{evaluate_form, CongruenceForm};
use crate::weyl_weights::{
    dominant_character, weight_system_with_capacity, weyl_dimension_u64, Weight, WeightSystem,
    DEFAULT_MAX_WEIGHTS,
};

/// How ambient weights are labelled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelRule {
    Modular(CongruenceForm),
    Integral(Vec<i64>),
}

impl LabelRule {
    pub fn label(&self, w: &Weight) -> i64 {
        match self {
            LabelRule::Modular(f) => evaluate_form(f, w),
            LabelRule::Integral(h) => h.iter().zip(w.coords()).map(|(a, b)| a * b).sum(),
        }
    }

    pub fn modulus(&self) -> Option<i64> {
        match self {
            LabelRule::Modular(f) => Some(f.modulus),
            LabelRule::Integral(_) => None,
        }
    }
}

impl From<RelativeForm> for LabelRule {
    fn from(r: RelativeForm) -> Self {
        match r {
            RelativeForm::Modular(f) => LabelRule::Modular(f),
            RelativeForm::Integral(h) => LabelRule::Integral(h),
        }
    }
}

/// One row of a projection table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectedWeight {
    pub weight: Weight,
    pub multiplicity: u64,
    pub label: i64,
    pub image: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSummand {
    pub sub_highest: Weight,
    pub label: i64,
    pub multiplicity: u64,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingResult {
    pub ambient_highest: Weight,
    pub ambient_dimension: u64,
    pub sub: SemisimpleAlgebra,
    pub summands: Vec<LabeledSummand>,
    pub label_modulus: Option<i64>,
    pub projection: Vec<ProjectedWeight>,
}

impl BranchingResult {
    /// Summands as `(sub weight, label, multiplicity)` sorted, for
    /// order-independent comparison.
    pub fn summand_set(&self) -> Vec<(Vec<i64>, i64, u64)> {
        let mut v: Vec<_> = self
            .summands
            .iter()
            .map(|s| (s.sub_highest.coords().to_vec(), s.label, s.multiplicity))
            .collect();
        v.sort();
        v
    }

    pub fn format_summand(&self, s: &LabeledSummand) -> String {
        let body = format!("{}[{}]", self.sub.format_weight(&s.sub_highest), s.label);
        if s.multiplicity > 1 {
            format!("{}×{body}", s.multiplicity)
        } else {
            body
        }
    }
}

impl fmt::Display for BranchingResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| self.format_summand(s))
            .collect();
        write!(f, "{} ⊃ {}", self.ambient_highest, parts.join("+"))
    }
}

/// Maps every weight of the system to its image and label.
pub fn project_system(
    emb: &Embedding,
    rule: &LabelRule,
    ws: &WeightSystem,
) -> Result<Vec<ProjectedWeight>> {
    ws.entries()
        .iter()
        .map(|(w, m)| {
            let (image, _) = emb.project_weight(w)?;
            Ok(ProjectedWeight {
                weight: w.clone(),
                multiplicity: *m,
                label: rule.label(w),
                image,
            })
        })
        .collect()
}

/// Per-factor data for the subalgebra: height coefficients and cached
/// dominant characters.
struct SubData<'a> {
    sub: &'a SemisimpleAlgebra,
    heights: Vec<Q>,
    cache: HashMap<Vec<i64>, Vec<(Vec<i64>, u64)>>,
}

impl<'a> SubData<'a> {
    fn new(sub: &'a SemisimpleAlgebra) -> Self {
        let heights = sub
            .factors()
            .iter()
            .flat_map(SimpleAlgebra::height_coefficients)
            .collect();
        SubData {
            sub,
            heights,
            cache: HashMap::new(),
        }
    }

    fn height(&self, w: &[i64]) -> Q {
        w.iter()
            .zip(&self.heights)
            .fold(Q::zero(), |acc, (&x, h)| acc + q(x) * h)
    }

    /// Dominant character of the product irrep: products of factor characters.
    fn dominant_character(&mut self, highest: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
        if let Some(c) = self.cache.get(highest) {
            return Ok(c.clone());
        }
        let mut acc: Vec<(Vec<i64>, u64)> = vec![(vec![], 1)];
        for (f, part) in self.sub.factors().iter().zip(self.sub.split(highest)) {
            let chi = dominant_character(f, &part)?;
            let mut next = Vec::with_capacity(acc.len() * chi.len());
            for (w, m) in &acc {
                for (x, k) in &chi {
                    let mut v = w.clone();
                    v.extend_from_slice(x.coords());
                    next.push((v, m * k));
                }
            }
            acc = next;
        }
        self.cache.insert(highest.to_vec(), acc.clone());
        Ok(acc)
    }

    fn dimension(&self, highest: &[i64]) -> Result<u64> {
        self.sub
            .factors()
            .iter()
            .zip(self.sub.split(highest))
            .try_fold(1u64, |acc, (f, w)| Ok(acc * weyl_dimension_u64(f, &w)?))
    }

    /// Full weight multiset of the product irrep.
    fn full_system(&self, highest: &[i64], cap: usize) -> Result<Vec<(Vec<i64>, u64)>> {
        let mut acc: Vec<(Vec<i64>, u64)> = vec![(vec![], 1)];
        for (f, part) in self.sub.factors().iter().zip(self.sub.split(highest)) {
            let ws = weight_system_with_capacity(f, &part, cap)?;
            let mut next = Vec::with_capacity(acc.len() * ws.distinct_weights());
            for (w, m) in &acc {
                for (x, k) in ws.entries() {
                    let mut v = w.clone();
                    v.extend_from_slice(x.coords());
                    next.push((v, m * k));
                }
            }
            acc = next;
        }
        Ok(acc)
    }
}

/// Splits the labelled multiset into subalgebra irreps, one label class at a
/// time, and checks the result against the input.
pub fn decompose(
    emb: &Embedding,
    label_modulus: Option<i64>,
    ambient_highest: &Weight,
    projected: Vec<ProjectedWeight>,
) -> Result<BranchingResult> {
    decompose_with_capacity(
        emb,
        label_modulus,
        ambient_highest,
        projected,
        DEFAULT_MAX_WEIGHTS,
    )
}

fn decompose_with_capacity(
    emb: &Embedding,
    label_modulus: Option<i64>,
    ambient_highest: &Weight,
    projected: Vec<ProjectedWeight>,
    cap: usize,
) -> Result<BranchingResult> {
    let sub = emb.sub();
    let mut data = SubData::new(sub);
    let mut classes: BTreeMap<i64, HashMap<Vec<i64>, i64>> = BTreeMap::new();
    for p in &projected {
        *classes
            .entry(p.label)
            .or_default()
            .entry(p.image.coords().to_vec())
            .or_default() += p.multiplicity as i64;
    }

    let mut summands = Vec::new();
    for (&label, multiset) in &classes {
        let mut dominant: HashMap<Vec<i64>, i64> = multiset
            .iter()
            .filter(|(w, _)| w.iter().all(|&x| x >= 0))
            .map(|(w, &m)| (w.clone(), m))
            .collect();
        loop {
            let top = dominant
                .iter()
                .filter(|(_, &m)| m != 0)
                .map(|(w, _)| w)
                .max_by(|a, b| data.height(a).cmp(&data.height(b)).then_with(|| a.cmp(b)))
                .cloned();
            let Some(top) = top else { break };
            let mult = dominant[&top];
            if mult < 0 {
                return Err(Error::Consistency(format!(
                    "negative multiplicity {mult} at {} in label class [{label}]",
                    Weight::new(top)
                )));
            }
            for (w, k) in data.dominant_character(&top)? {
                let entry = dominant.entry(w.clone()).or_insert(0);
                *entry -= mult * k as i64;
                if *entry < 0 {
                    return Err(Error::Consistency(format!(
                        "negative multiplicity at {} in label class [{label}]",
                        Weight::new(w)
                    )));
                }
            }
            summands.push(LabeledSummand {
                dimension: data.dimension(&top)?,
                sub_highest: Weight::new(top),
                label,
                multiplicity: mult as u64,
            });
        }
    }

    // every projected weight must be accounted for exactly
    for (&label, multiset) in &classes {
        let mut rebuilt: HashMap<Vec<i64>, i64> = HashMap::new();
        for s in summands.iter().filter(|s| s.label == label) {
            for (w, k) in data.full_system(s.sub_highest.coords(), cap)? {
                *rebuilt.entry(w).or_default() += s.multiplicity as i64 * k as i64;
            }
        }
        let expected: HashMap<Vec<i64>, i64> = multiset
            .iter()
            .filter(|(_, &m)| m != 0)
            .map(|(w, &m)| (w.clone(), m))
            .collect();
        if rebuilt != expected {
            return Err(Error::Consistency(format!(
                "label class [{label}] does not reassemble from its summands"
            )));
        }
    }

    let ambient_dimension: u64 = projected.iter().map(|p| p.multiplicity).sum();
    let total: u64 = summands.iter().map(|s| s.multiplicity * s.dimension).sum();
    if total != ambient_dimension {
        return Err(Error::Consistency(format!(
            "summand dimensions add to {total}, expected {ambient_dimension}"
        )));
    }

    let mut class_dim: HashMap<i64, u64> = HashMap::new();
    for s in &summands {
        *class_dim.entry(s.label).or_default() += s.multiplicity * s.dimension;
    }
    summands.sort_by(|a, b| {
        class_dim[&b.label]
            .cmp(&class_dim[&a.label])
            .then(a.label.cmp(&b.label))
            .then_with(|| b.sub_highest.cmp(&a.sub_highest))
    });

    Ok(BranchingResult {
        ambient_highest: ambient_highest.clone(),
        ambient_dimension,
        sub: sub.clone(),
        summands,
        label_modulus,
        projection: projected,
    })
}

/// Either a node to delete (kind inferred from its mark, or forced) or an
/// explicit embedding obtained by deleting `node`.
#[derive(Debug, Clone)]
pub enum BranchTarget {
    Node {
        node: usize,
        kind: Option<EmbeddingKind>,
    },
    Embedding {
        node: usize,
        embedding: Box<Embedding>,
    },
}

/// Resolves a target to an embedding plus its labelling rule.
pub fn resolve_target(
    alg: &SimpleAlgebra,
    target: &BranchTarget,
) -> Result<(Embedding, LabelRule, usize)> {
    let (node, emb) = match target {
        BranchTarget::Node { node, kind } => {
            let kind = match kind {
                Some(k) => *k,
                None => infer_kind(alg, *node)?,
            };
            (*node, delete_node(alg, *node, kind)?.1)
        }
        BranchTarget::Embedding { node, embedding } => (*node, (**embedding).clone()),
    };
    let rule = centralizer(alg, node, &emb)?.relative_form.into();
    Ok((emb, rule, node))
}

pub fn branch(
    alg: &SimpleAlgebra,
    target: &BranchTarget,
    highest: &Weight,
) -> Result<BranchingResult> {
    branch_with_capacity(alg, target, highest, DEFAULT_MAX_WEIGHTS)
}

pub fn branch_with_capacity(
    alg: &SimpleAlgebra,
    target: &BranchTarget,
    highest: &Weight,
    max_weights: usize,
) -> Result<BranchingResult> {
    let (emb, rule, _) = resolve_target(alg, target)?;
    let ws = weight_system_with_capacity(alg, highest, max_weights)?;
    let projected = project_system(&emb, &rule, &ws)?;
    let result = decompose_with_capacity(&emb, rule.modulus(), highest, projected, max_weights)?;
    let expected = weyl_dimension_u64(alg, highest)?;
    if result.ambient_dimension != expected {
        return Err(Error::Consistency(format!(
            "weight system has dimension {}, Weyl formula gives {expected}",
            result.ambient_dimension
        )));
    }
    Ok(result)
}
