//! Decomposition of a fuzzy long circular interval graph: complete the
//! fuzzy blocks, remove the blocks on the first interval, take a clique
//! tree of the rest and add the removed blocks back to every bag.

use serde::{Deserialize, Serialize};

use crate::circular::{thickening, FuzzyLciSpec, ThickeningSpec};
use crate::decompose::chordal::chordal_td;
use crate::decompose::td::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{clique_number, Graph, VertexSet};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LciReport {
    pub n: usize,
    pub delta: usize,
    pub width: usize,
    /// Clique number of the completed graph `G*`.
    pub omega_star: usize,
    /// The removed set `C_1`.
    pub c1: VertexSet,
    /// `width <= 2·ω(G*) − 1`.
    pub within_omega_bound: bool,
    /// `width <= 4Δ + 3`.
    pub within_degree_bound: bool,
}

/// Returns the decomposition of the fuzzy graph `G` and size facts.
pub fn fuzzy_lci_td(spec: &FuzzyLciSpec, limits: &Limits) -> Result<(TreeDecomposition, LciReport)> {
    spec.model.validate()?;
    let g = spec.graph()?;
    let tspec = spec.thickening_spec()?;
    let completed = ThickeningSpec { fuzz: Vec::new(), ..tspec.clone() };
    let g_star = thickening(&completed)?;
    let mut c1 = VertexSet::new();
    for p in spec.model.members(0).iter() {
        c1 = c1.union(&tspec.block(p));
    }
    let rest = g_star.vertices().difference(&c1);
    let (sub, map) = g_star.induced(&rest);
    let inner = match chordal_td(&sub) {
        Ok(td) => td,
        Err(Error::NotChordal { cycle }) => {
            let cycle: Vec<usize> = cycle.into_iter().map(|v| map[v]).collect();
            return Err(Error::Invalid(format!(
                "completed graph minus C_1 is not chordal; chordless cycle {cycle:?}; spec {}",
                serde_json::to_string(spec).unwrap_or_default()
            )));
        }
        Err(e) => return Err(e),
    };
    let mut td = inner.relabel(&map);
    if td.bags.is_empty() {
        td.bags.push(VertexSet::new());
    }
    for b in &mut td.bags {
        *b = b.union(&c1);
    }
    let width = td.width();
    let omega_star = clique_number(&g_star, limits)?;
    let delta = g.max_degree();
    let report = LciReport {
        n: g.n(),
        delta,
        width,
        omega_star,
        c1,
        within_omega_bound: width + 1 <= 2 * omega_star,
        within_degree_bound: width <= 4 * delta + 3,
    };
    Ok((td, report))
}

/// Plain (unfuzzed) completion of `g`'s blocks, exposed for tests.
pub fn completed_graph(spec: &FuzzyLciSpec) -> Result<Graph> {
    let tspec = spec.thickening_spec()?;
    thickening(&ThickeningSpec { fuzz: Vec::new(), ..tspec })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::{CircularIntervalModel, FuzzPair};
    use crate::decompose::td::validate_td;

    fn c5_model() -> CircularIntervalModel {
        CircularIntervalModel::regular(5, &[(0, 2), (1, 2), (2, 2), (3, 2), (4, 2)]).unwrap()
    }

    #[test]
    fn c5_and_thickened_c5() {
        let lim = Limits::default();
        let spec = FuzzyLciSpec { model: c5_model(), fuzz: Vec::new(), sizes: vec![1; 5] };
        let (td, rep) = fuzzy_lci_td(&spec, &lim).unwrap();
        let g = spec.graph().unwrap();
        assert_eq!(g, Graph::cycle(5));
        let w = validate_td(&g, &td).unwrap();
        assert!(w >= 2 && w <= 11);
        assert!(rep.within_degree_bound && rep.within_omega_bound);

        let pairs = spec.model.fuzzable_pairs();
        let (u, v) = pairs[0];
        let thick = FuzzyLciSpec {
            model: c5_model(),
            fuzz: vec![FuzzPair { u, v, pattern: vec![(0, 0)] }],
            sizes: vec![2; 5],
        };
        let (td, rep) = fuzzy_lci_td(&thick, &lim).unwrap();
        let g = thick.graph().unwrap();
        let w = validate_td(&g, &td).unwrap();
        assert!(w <= 4 * g.max_degree() + 3);
        assert!(rep.within_omega_bound);
        assert!(completed_graph(&thick).unwrap().m() > g.m());
    }

    #[test]
    fn single_interval_path() {
        let model = CircularIntervalModel::regular(4, &[(0, 4)]).unwrap();
        let spec = FuzzyLciSpec { model, fuzz: Vec::new(), sizes: vec![1; 4] };
        let (td, _) = fuzzy_lci_td(&spec, &Limits::default()).unwrap();
        let g = spec.graph().unwrap();
        assert_eq!(validate_td(&g, &td), Ok(3));
    }
}
