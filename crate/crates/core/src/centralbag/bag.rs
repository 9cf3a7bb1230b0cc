use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::centralbag::separation::{is_shield, primordial_indices, relation, Separation};
use crate::centralbag::sequence::SeparationSequence;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::weights::{q_serde, WeightFunction, Q};

/// Why a separation is, or is not, in the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AuditReason {
    Kept,
    /// Center meets the `A` side of an earlier generator member.
    CenterHit { by: usize, vertex: Vertex },
    /// A generator member of the same class has a smaller `B ∪ C`.
    Shield { by: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub index: usize,
    pub class: usize,
    pub reason: AuditReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub class: Vec<usize>,
    /// Members whose center lies in the previous bag.
    pub eligible: Vec<usize>,
    pub kept: Vec<usize>,
    /// Bag after this stage.
    pub bag: VertexSet,
    /// Weight of `A` sides pinned to anchors that fell outside the bag.
    #[serde(with = "q_serde")]
    pub stranded: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralBagResult {
    pub bag: VertexSet,
    /// Indexed by vertex of `g`; zero outside the bag.
    pub weights: WeightFunction,
    /// Kept members per class.
    pub generator: Vec<Vec<usize>>,
    pub stages: Vec<Stage>,
    pub audit: Vec<AuditEntry>,
}

impl CentralBagResult {
    pub fn generator_members(&self) -> impl Iterator<Item = usize> + '_ {
        self.generator.iter().flatten().copied()
    }

    /// `G[β]` with local ids and the bag weights on it.
    pub fn bag_graph(&self, g: &Graph) -> (Graph, Vec<Vertex>, WeightFunction) {
        let (h, map) = g.induced(&self.bag);
        let w = self.weights.restrict(&self.bag);
        (h, map, w)
    }
}

fn check_partition(len: usize, partition: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; len];
    for &i in partition.iter().flatten() {
        if i >= len || seen[i] {
            return invalid(format!("partition repeats or overruns index {i}"));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return invalid("partition misses a separation");
    }
    Ok(())
}

/// Stage-by-stage central bag: per class keep the members whose center
/// lies in the current bag, reduce them to a primordial subsequence,
/// intersect their `B ∪ C` sides and move the weight of each new `A` side
/// onto its anchor.
pub fn central_bag(
    g: &Graph,
    w: &WeightFunction,
    seq: &SeparationSequence,
    partition: &[Vec<usize>],
) -> Result<CentralBagResult> {
    w.require_fits(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let seps = &seq.separations;
    check_partition(seps.len(), partition)?;
    let anchors = seq.anchors()?;

    let mut bag = g.vertices();
    let mut weights: Vec<Q> = w.values().to_vec();
    let mut generator: Vec<Vec<usize>> = Vec::new();
    let mut stages = Vec::new();
    let mut audit = Vec::new();

    for (ci, class) in partition.iter().enumerate() {
        let mut eligible = Vec::new();
        for &i in class {
            if seps[i].center_or_cut().is_subset(&bag) {
                eligible.push(i);
                continue;
            }
            let hit = generator.iter().flatten().find_map(|&j| {
                seps[i].center_or_cut().intersection(&seps[j].a).first().map(|v| (j, v))
            });
            let (by, vertex) = hit.ok_or_else(|| Error::Invalid(format!("separation {i} left the bag unexplained")))?;
            audit.push(AuditEntry { index: i, class: ci, reason: AuditReason::CenterHit { by, vertex } });
        }
        let kept = primordial_indices(seps, &eligible);
        for &i in &eligible {
            if kept.contains(&i) {
                audit.push(AuditEntry { index: i, class: ci, reason: AuditReason::Kept });
            } else {
                let by = *kept.iter().find(|&&j| is_shield(&seps[j], &seps[i])).expect("a minimal member lies below");
                audit.push(AuditEntry { index: i, class: ci, reason: AuditReason::Shield { by } });
            }
        }

        let next = kept.iter().fold(bag.clone(), |acc, &j| acc.intersection(&seps[j].bc()));
        let mut next_w: Vec<Q> = (0..g.n())
            .map(|v| if next.contains(v) { weights[v].clone() } else { Q::zero() })
            .collect();
        let mut covered = VertexSet::new();
        let mut stranded = Q::zero();
        for &j in &kept {
            let side = seps[j].a.intersection(&bag).difference(&covered);
            let star = side.iter().fold(Q::zero(), |acc, v| acc + &weights[v]);
            covered = covered.union(&side);
            if next.contains(anchors[j]) {
                next_w[anchors[j]] += star;
            } else {
                stranded += star;
            }
        }
        bag = next;
        weights = next_w;
        generator.push(kept.clone());
        stages.push(Stage { class: class.clone(), eligible, kept, bag: bag.clone(), stranded });
    }
    audit.sort_by_key(|e| e.index);
    Ok(CentralBagResult { bag, weights: WeightFunction::new(weights)?, generator, stages, audit })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BagInvariants {
    /// `C(S) ⊆ β` for every generator member.
    pub cutsets_inside: bool,
    pub connected: bool,
    /// Bag weights sum to exactly 1 and vanish outside the bag.
    pub normal: bool,
    /// `β` recomputed as the intersection of the generator's `B ∪ C`.
    pub recomputed: bool,
    pub audit_valid: bool,
}

impl BagInvariants {
    pub fn all_hold(&self) -> bool {
        self.cutsets_inside && self.connected && self.normal && self.recomputed && self.audit_valid
    }
}

/// All generator members pairwise `A`-loosely non-crossing, which is what
/// the cutset, connectivity and normality guarantees need.
pub fn generator_a_loosely_laminar(seps: &[Separation], result: &CentralBagResult) -> bool {
    let members: Vec<usize> = result.generator_members().collect();
    members
        .iter()
        .all(|&i| members.iter().all(|&j| relation(&seps[i], &seps[j]).a_loosely_non_crossing))
}

/// Re-derive each audit claim from the separations themselves.
pub fn validate_audit(seps: &[Separation], result: &CentralBagResult) -> bool {
    let members: Vec<usize> = result.generator_members().collect();
    if result.audit.len() != seps.len() || result.audit.iter().enumerate().any(|(i, e)| e.index != i) {
        return false;
    }
    result.audit.iter().all(|e| {
        let s = &seps[e.index];
        match &e.reason {
            AuditReason::Kept => members.contains(&e.index),
            AuditReason::Shield { by } => members.contains(by) && is_shield(&seps[*by], s),
            AuditReason::CenterHit { by, vertex } => {
                members.contains(by) && s.center_or_cut().contains(*vertex) && seps[*by].a.contains(*vertex)
            }
        }
    })
}

pub fn bag_invariants(g: &Graph, seq: &SeparationSequence, result: &CentralBagResult) -> BagInvariants {
    let seps = &seq.separations;
    let members: Vec<usize> = result.generator_members().collect();
    let recomputed = members.iter().fold(g.vertices(), |acc, &j| acc.intersection(&seps[j].bc())) == result.bag;
    let outside_zero = (0..g.n()).all(|v| result.bag.contains(v) || result.weights.get(v).is_zero());
    BagInvariants {
        cutsets_inside: members.iter().all(|&j| seps[j].c.is_subset(&result.bag)),
        connected: g.is_connected_set(&result.bag),
        normal: outside_zero && result.weights.is_normal(),
        recomputed,
        audit_valid: validate_audit(seps, result),
    }
}
