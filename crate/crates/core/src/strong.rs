//! Dominated vertices, strong collapses and cores.
//!
//! A vertex `u` is dominated by `v != u` when every facet containing `u` also
//! contains `v`. Deleting a dominated vertex (with every simplex containing
//! it) is an elementary strong collapse. Iterating until no vertex is
//! dominated yields the core, which is unique up to isomorphism.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{bit, bits, maximal_masks, union_mask, ComplexError, Mask, SimplicialComplex, Vertex};

/// One elementary strong collapse: `removed` is dominated by `dominator`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CollapseStep {
    pub removed: Vertex,
    pub dominator: Vertex,
}

/// A replayable certificate for a strong collapse `start ↘↘ end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequence {
    #[serde(rename = "start_facets")]
    pub start: SimplicialComplex,
    pub steps: Vec<CollapseStep>,
    #[serde(rename = "end_facets")]
    pub end: SimplicialComplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollapseCheckError {
    #[error("step {step}: vertex {vertex} is not present")]
    MissingVertex { step: usize, vertex: String },
    #[error("step {step}: {removed} is not dominated by {dominator}")]
    NotDominated { step: usize, removed: String, dominator: String },
    #[error("step {step}: removal would empty the complex")]
    LastVertex { step: usize },
    #[error("replay does not end at the recorded complex")]
    WrongEnd,
}

/// Vertices that dominate vertex `u` of a facet list, as a mask.
pub(crate) fn dominators_mask(facets: &[Mask], u: usize) -> Mask {
    let mut inter: Mask = !0;
    let mut any = false;
    for &f in facets {
        if f & bit(u) != 0 {
            inter &= f;
            any = true;
        }
    }
    if any {
        inter & !bit(u)
    } else {
        0
    }
}

pub(crate) fn delete_mask_vertex(facets: &[Mask], u: usize) -> Vec<Mask> {
    maximal_masks(facets.iter().map(|&f| f & !bit(u)).collect())
}

/// First dominated vertex in index order, with its smallest dominator.
fn first_dominated(facets: &[Mask]) -> Option<(usize, usize)> {
    let vs = union_mask(facets);
    if vs.count_ones() < 2 {
        return None;
    }
    bits(vs).find_map(|u| {
        let d = dominators_mask(facets, u);
        (d != 0).then(|| (u, d.trailing_zeros() as usize))
    })
}

/// Core of a facet list, deleting the smallest dominated vertex each time.
pub(crate) fn core_masks(mut facets: Vec<Mask>) -> (Vec<Mask>, Vec<(usize, usize)>) {
    let mut steps = Vec::new();
    while let Some((u, v)) = first_dominated(&facets) {
        facets = delete_mask_vertex(&facets, u);
        steps.push((u, v));
    }
    (facets, steps)
}

/// True when the facet list strongly collapses to a single vertex.
pub(crate) fn is_sc_masks(facets: &[Mask]) -> bool {
    if facets.is_empty() {
        return false;
    }
    let (core, _) = core_masks(facets.to_vec());
    union_mask(&core).count_ones() == 1
}

fn sequence_from_steps(k: &SimplicialComplex, steps: &[(usize, usize)], end: Vec<Mask>) -> CollapseSequence {
    CollapseSequence {
        start: k.clone(),
        steps: steps
            .iter()
            .map(|&(u, v)| CollapseStep { removed: k.vertex(u).clone(), dominator: k.vertex(v).clone() })
            .collect(),
        end: k.sub_from_masks(end).expect("collapse never empties a complex"),
    }
}

/// All `v != u` such that every facet containing `u` contains `v`.
pub fn dominators_of(k: &SimplicialComplex, u: &Vertex) -> Result<Vec<Vertex>, ComplexError> {
    let i = k.require(u)?;
    Ok(bits(dominators_mask(k.masks(), i)).map(|j| k.vertex(j).clone()).collect())
}

/// Repeatedly deletes the lexicographically smallest dominated vertex.
pub fn core(k: &SimplicialComplex) -> CollapseSequence {
    let (end, steps) = core_masks(k.masks().to_vec());
    sequence_from_steps(k, &steps, end)
}

/// Like [`core`], but each step deletes the dominated vertex that comes
/// first in `priority`. Vertices missing from `priority` come last, in label
/// order.
pub fn core_by_priority(k: &SimplicialComplex, priority: &[Vertex]) -> CollapseSequence {
    let n = k.vertex_count();
    let mut rank: Vec<usize> = (0..n).map(|i| n + i).collect();
    for (r, v) in priority.iter().enumerate() {
        if let Some(i) = k.index_of(v) {
            rank[i] = rank[i].min(r);
        }
    }
    let mut facets = k.masks().to_vec();
    let mut steps = Vec::new();
    loop {
        if union_mask(&facets).count_ones() < 2 {
            break;
        }
        let pick = bits(union_mask(&facets))
            .filter_map(|u| {
                let d = dominators_mask(&facets, u);
                (d != 0).then(|| (u, d.trailing_zeros() as usize))
            })
            .min_by_key(|&(u, _)| rank[u]);
        let Some((u, v)) = pick else { break };
        facets = delete_mask_vertex(&facets, u);
        steps.push((u, v));
    }
    sequence_from_steps(k, &steps, facets)
}

/// True iff the core is a single vertex.
pub fn is_strongly_collapsible(k: &SimplicialComplex) -> bool {
    is_sc_masks(k.masks())
}

/// A collapse to a single vertex, when one exists.
pub fn strong_collapse_witness(k: &SimplicialComplex) -> Option<CollapseSequence> {
    let c = core(k);
    (c.end.vertex_count() == 1).then_some(c)
}

impl CollapseSequence {
    /// Replays every step, checking domination at each intermediate complex.
    pub fn verify(&self) -> Result<(), CollapseCheckError> {
        let mut current = self.start.clone();
        for (step, s) in self.steps.iter().enumerate() {
            let missing = |v: &Vertex| CollapseCheckError::MissingVertex { step, vertex: v.to_string() };
            let u = current.index_of(&s.removed).ok_or_else(|| missing(&s.removed))?;
            let v = current.index_of(&s.dominator).ok_or_else(|| missing(&s.dominator))?;
            if dominators_mask(current.masks(), u) & bit(v) == 0 {
                return Err(CollapseCheckError::NotDominated {
                    step,
                    removed: s.removed.to_string(),
                    dominator: s.dominator.to_string(),
                });
            }
            current = current
                .delete_vertex(&s.removed)
                .map_err(|_| CollapseCheckError::LastVertex { step })?;
        }
        if current == self.end {
            Ok(())
        } else {
            Err(CollapseCheckError::WrongEnd)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }
}

/// Searches for a sequence of elementary strong collapses from `m` ending
/// exactly at `k`. Only vertices outside `k` are ever deleted; failed
/// intermediate vertex sets are memoized.
pub fn find_collapse_to(m: &SimplicialComplex, k: &SimplicialComplex) -> Option<CollapseSequence> {
    let mut keep: Mask = 0;
    for v in k.vertices() {
        keep |= bit(m.index_of(v)?);
    }
    // Deleting a vertex set always leaves the full subcomplex on the rest.
    let induced = m.sub_from_masks(m.masks().iter().map(|&f| f & keep).collect()).ok()?;
    if &induced != k {
        return None;
    }
    let mut dead: HashSet<Mask> = HashSet::new();
    let mut steps = Vec::new();

    fn search(
        facets: &[Mask],
        keep: Mask,
        dead: &mut HashSet<Mask>,
        steps: &mut Vec<(usize, usize)>,
    ) -> bool {
        let vs = union_mask(facets);
        let removable = vs & !keep;
        if removable == 0 {
            return true;
        }
        if dead.contains(&vs) {
            return false;
        }
        for u in bits(removable) {
            let d = dominators_mask(facets, u);
            if d == 0 {
                continue;
            }
            steps.push((u, d.trailing_zeros() as usize));
            if search(&delete_mask_vertex(facets, u), keep, dead, steps) {
                return true;
            }
            steps.pop();
        }
        dead.insert(vs);
        false
    }

    search(m.masks(), keep, &mut dead, &mut steps).then(|| sequence_from_steps(m, &steps, induced.masks_in(m)))
}

impl SimplicialComplex {
    /// Facet masks of `self` expressed over `ambient`'s indices.
    fn masks_in(&self, ambient: &SimplicialComplex) -> Vec<Mask> {
        ambient.masks_of_subcomplex(self).expect("subcomplex of the ambient complex")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(s: &str) -> Vertex {
        Vertex::new(s).unwrap()
    }

    #[test]
    fn dominators_in_small_complexes() {
        let t = fixtures::simplex(&["a", "b", "c"]);
        assert_eq!(dominators_of(&t, &v("a")).unwrap(), vec![v("b"), v("c")]);
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        assert!(dominators_of(&c3, &v("a")).unwrap().is_empty());
        assert!(dominators_of(&c3, &v("q")).is_err());
    }

    #[test]
    fn cores_of_small_complexes() {
        let t = fixtures::simplex(&["a", "b", "c"]);
        let c = core(&t);
        assert_eq!(c.end.vertex_count(), 1);
        assert!(c.is_valid());
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        let c = core(&c3);
        assert!(c.steps.is_empty());
        assert_eq!(c.end, c3);
        assert!(is_strongly_collapsible(&t));
        assert!(!is_strongly_collapsible(&fixtures::boundary_of_simplex(&["a", "b", "c", "d"])));
        let p = fixtures::simplex(&["a"]);
        assert!(is_strongly_collapsible(&p));
        assert!(core(&p).steps.is_empty());
    }

    #[test]
    fn bad_certificates_are_rejected() {
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        let bogus = CollapseSequence {
            start: c3.clone(),
            steps: vec![CollapseStep { removed: v("a"), dominator: v("b") }],
            end: c3.delete_vertex(&v("a")).unwrap(),
        };
        assert!(matches!(bogus.verify(), Err(CollapseCheckError::NotDominated { step: 0, .. })));
        let t = fixtures::simplex(&["a", "b", "c"]);
        let mut wrong_end = core(&t);
        wrong_end.end = t.clone();
        assert_eq!(wrong_end.verify(), Err(CollapseCheckError::WrongEnd));
    }

    #[test]
    fn targeted_collapses() {
        let t = fixtures::simplex(&["a", "b", "c"]);
        let edge = fixtures::simplex(&["b", "c"]);
        let seq = find_collapse_to(&t, &edge).unwrap();
        assert_eq!(seq.steps.len(), 1);
        assert!(seq.is_valid());
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        assert!(find_collapse_to(&c3, &fixtures::simplex(&["a"])).is_none());
        // `edge` is not a full subcomplex of the cycle.
        assert!(find_collapse_to(&c3, &fixtures::simplex(&["a", "b"])).is_none());
    }

    #[test]
    fn priority_changes_order_not_result() {
        let k = SimplicialComplex::from_facets([
            vec!["a", "b", "c"],
            vec!["c", "d"],
            vec!["d", "e"],
            vec!["e", "c"],
        ])
        .unwrap();
        let first = core(&k);
        let second = core_by_priority(&k, &[v("b"), v("a")]);
        assert_ne!(first.steps, second.steps);
        assert!(first.end.is_isomorphic_to(&second.end));
        assert!(second.is_valid());
    }
}
