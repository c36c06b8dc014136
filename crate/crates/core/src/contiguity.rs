//! Simplicial maps, contiguity and contiguity classes.
//!
//! Two maps `f, g: K -> L` are contiguous when `f(σ) ∪ g(σ)` is a simplex of
//! `L` for every simplex `σ` of `K`. Checking facets of `K` suffices since
//! the unions over faces are subsets of the unions over facets. A contiguity
//! class is the equivalence closure of this relation; it is explored here by
//! breadth-first search over the finite set of simplicial maps `K -> L`,
//! moving one vertex image at a time.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{all_simplex_masks, bit, bits, ComplexError, Mask, Simplex, SimplicialComplex, Vertex};
use crate::strong::{core, CollapseSequence};

/// Default bound on the number of maps a class search may visit.
pub const DEFAULT_STATE_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContiguityError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("vertex {0} has no image")]
    IncompleteAssignment(String),
    #[error("image of {0} is not a simplex of the target")]
    NotSimplicial(String),
    #[error("maps do not share source and target")]
    MismatchedComplexes,
    #[error("not a subcomplex of the ambient complex")]
    NotSubcomplex,
}

/// A vertex map between complexes sending simplices to simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    assignment: Vec<usize>,
}

/// A vertex assignment table, the serialized form of a map.
pub type AssignmentTable = BTreeMap<Vertex, Vertex>;

impl SimplicialMap {
    pub fn new(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        table: &AssignmentTable,
    ) -> Result<Self, ContiguityError> {
        let assignment = source
            .vertices()
            .iter()
            .map(|v| {
                let w = table.get(v).ok_or_else(|| ContiguityError::IncompleteAssignment(v.to_string()))?;
                Ok(target.require(w)?)
            })
            .collect::<Result<Vec<_>, ContiguityError>>()?;
        Self::from_indices(source, target, assignment)
    }

    fn from_indices(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        assignment: Vec<usize>,
    ) -> Result<Self, ContiguityError> {
        for &f in source.masks() {
            let img = bits(f).fold(0, |a, i| a | bit(assignment[i]));
            if !target.has_mask(img) {
                return Err(ContiguityError::NotSimplicial(source.simplex_of(f).to_string()));
            }
        }
        Ok(SimplicialMap { source: source.clone(), target: target.clone(), assignment })
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        SimplicialMap { source: k.clone(), target: k.clone(), assignment: (0..k.vertex_count()).collect() }
    }

    pub fn constant(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        v: &Vertex,
    ) -> Result<Self, ContiguityError> {
        let i = target.require(v)?;
        Ok(SimplicialMap { source: source.clone(), target: target.clone(), assignment: vec![i; source.vertex_count()] })
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(sub: &SimplicialComplex, ambient: &SimplicialComplex) -> Result<Self, ContiguityError> {
        if !sub.is_subcomplex_of(ambient) {
            return Err(ContiguityError::NotSubcomplex);
        }
        let assignment = sub.vertices().iter().map(|v| ambient.index_of(v).expect("subcomplex vertex")).collect();
        Ok(SimplicialMap { source: sub.clone(), target: ambient.clone(), assignment })
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn image(&self, v: &Vertex) -> Option<&Vertex> {
        self.source.index_of(v).map(|i| self.target.vertex(self.assignment[i]))
    }

    pub fn table(&self) -> AssignmentTable {
        self.source
            .vertices()
            .iter()
            .zip(&self.assignment)
            .map(|(v, &w)| (v.clone(), self.target.vertex(w).clone()))
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &SimplicialMap) -> Result<SimplicialMap, ContiguityError> {
        if self.target != after.source {
            return Err(ContiguityError::MismatchedComplexes);
        }
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: after.target.clone(),
            assignment: self.assignment.iter().map(|&i| after.assignment[i]).collect(),
        })
    }

    /// Image of a simplex of the source.
    pub fn image_of_simplex(&self, s: &Simplex) -> Option<Simplex> {
        let m = self.source.mask_of(s)?;
        Some(self.target.simplex_of(bits(m).fold(0, |a, i| a | bit(self.assignment[i]))))
    }
}

/// True iff `f(σ) ∪ g(σ)` is a simplex of the target for every facet `σ`.
pub fn are_contiguous(f: &SimplicialMap, g: &SimplicialMap) -> Result<bool, ContiguityError> {
    if f.source != g.source || f.target != g.target {
        return Err(ContiguityError::MismatchedComplexes);
    }
    Ok(f.source.masks().iter().all(|&s| {
        let u = bits(s).fold(0, |a, i| a | bit(f.assignment[i]) | bit(g.assignment[i]));
        f.target.has_mask(u)
    }))
}

/// A chain of pairwise contiguous maps, as assignment tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContiguityChain {
    pub maps: Vec<AssignmentTable>,
}

impl ContiguityChain {
    /// Number of contiguity steps.
    pub fn len(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rebuilds every map and checks consecutive contiguity.
    pub fn verify(&self, source: &SimplicialComplex, target: &SimplicialComplex) -> bool {
        let Ok(maps) = self
            .maps
            .iter()
            .map(|t| SimplicialMap::new(source, target, t))
            .collect::<Result<Vec<_>, _>>()
        else {
            return false;
        };
        !maps.is_empty() && maps.windows(2).all(|w| are_contiguous(&w[0], &w[1]) == Ok(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSearch {
    /// Reachable; the chain starts at the first map and ends at the goal.
    Same(ContiguityChain),
    /// The whole class was explored without reaching the goal.
    Different { explored: usize },
    /// The state cap was hit first.
    Unknown { explored: usize },
}

/// The space of simplicial maps `source -> target` with the contiguity graph.
struct MapSpace<'a> {
    source: &'a SimplicialComplex,
    target: &'a SimplicialComplex,
    facets: Vec<Vec<usize>>,
    facets_of: Vec<Vec<usize>>,
    simplices: HashSet<Mask>,
}

type State = Box<[u8]>;

impl<'a> MapSpace<'a> {
    fn new(source: &'a SimplicialComplex, target: &'a SimplicialComplex) -> Self {
        let facets: Vec<Vec<usize>> = source.masks().iter().map(|&f| bits(f).collect()).collect();
        let mut facets_of = vec![Vec::new(); source.vertex_count()];
        for (i, f) in facets.iter().enumerate() {
            for &v in f {
                facets_of[v].push(i);
            }
        }
        MapSpace { source, target, facets, facets_of, simplices: all_simplex_masks(target.masks()) }
    }

    fn image(&self, f: &[u8], facet: usize) -> Mask {
        self.facets[facet].iter().fold(0, |a, &i| a | bit(f[i] as usize))
    }

    fn contiguous(&self, f: &[u8], g: &[u8]) -> bool {
        (0..self.facets.len()).all(|s| self.simplices.contains(&(self.image(f, s) | self.image(g, s))))
    }

    fn constant_neighbor(&self, f: &[u8]) -> Option<u8> {
        (0..self.target.vertex_count()).find_map(|v| {
            let ok = (0..self.facets.len()).all(|s| self.simplices.contains(&(self.image(f, s) | bit(v))));
            ok.then_some(v as u8)
        })
    }

    /// Calls `visit` on every map that differs from `f` at exactly one vertex
    /// and is contiguous to it, in lexicographic order of (vertex, image).
    ///
    /// These moves generate the contiguity class: if `f` and `g` are
    /// contiguous, switching the vertices from `f` to `g` one at a time gives
    /// maps whose simplex images lie in `f(σ) ∪ g(σ)`, each contiguous to
    /// the next.
    fn for_each_move(&self, f: &[u8], visit: &mut dyn FnMut(&[u8]) -> bool) {
        let base: Vec<Mask> = (0..self.facets.len()).map(|s| self.image(f, s)).collect();
        let mut g = f.to_vec();
        for i in 0..f.len() {
            for w in 0..self.target.vertex_count() {
                if w == f[i] as usize {
                    continue;
                }
                let ok = self.facets_of[i].iter().all(|&s| {
                    let moved = self.facets[s].iter().fold(0, |a, &j| a | bit(if j == i { w } else { f[j] as usize }));
                    self.simplices.contains(&(base[s] | moved))
                });
                if ok {
                    g[i] = w as u8;
                    let go_on = visit(&g);
                    g[i] = f[i];
                    if !go_on {
                        return;
                    }
                }
            }
        }
    }

    /// Breadth-first search from `start`. `goal` inspects each dequeued map
    /// and may return the final map of a witness chain.
    fn search(&self, start: State, goal: &dyn Fn(&[u8]) -> Option<State>, cap: usize) -> ClassSearch {
        let mut states: Vec<State> = vec![start.clone()];
        let mut parent: Vec<usize> = vec![usize::MAX];
        let mut index: HashMap<State, usize> = HashMap::new();
        let mut queue = VecDeque::from([0usize]);
        index.insert(start, 0);
        while let Some(cur) = queue.pop_front() {
            if let Some(last) = goal(&states[cur]) {
                let mut chain = Vec::new();
                let mut at = cur;
                while at != usize::MAX {
                    chain.push(states[at].clone());
                    at = parent[at];
                }
                chain.reverse();
                if chain.last() != Some(&last) {
                    chain.push(last);
                }
                return ClassSearch::Same(self.to_chain(&chain));
            }
            let mut capped = false;
            let current = states[cur].clone();
            self.for_each_move(&current, &mut |g| {
                if index.contains_key(g) {
                    return true;
                }
                if states.len() >= cap {
                    capped = true;
                    return false;
                }
                let g: State = g.into();
                index.insert(g.clone(), states.len());
                states.push(g);
                parent.push(cur);
                queue.push_back(states.len() - 1);
                true
            });
            if capped {
                return ClassSearch::Unknown { explored: states.len() };
            }
        }
        ClassSearch::Different { explored: states.len() }
    }

    fn to_chain(&self, states: &[State]) -> ContiguityChain {
        ContiguityChain {
            maps: states
                .iter()
                .map(|s| {
                    self.source
                        .vertices()
                        .iter()
                        .zip(s.iter())
                        .map(|(v, &w)| (v.clone(), self.target.vertex(w as usize).clone()))
                        .collect()
                })
                .collect(),
        }
    }
}

fn state_of(f: &SimplicialMap) -> State {
    f.assignment.iter().map(|&i| i as u8).collect()
}

/// Decides whether `g` lies in the contiguity class of `f`.
pub fn same_contiguity_class(
    f: &SimplicialMap,
    g: &SimplicialMap,
    state_cap: usize,
) -> Result<ClassSearch, ContiguityError> {
    if f.source != g.source || f.target != g.target {
        return Err(ContiguityError::MismatchedComplexes);
    }
    let space = MapSpace::new(&f.source, &f.target);
    let goal_state = state_of(g);
    let goal = |h: &[u8]| (h == &*goal_state || space.contiguous(h, &goal_state)).then(|| goal_state.clone());
    Ok(space.search(state_of(f), &goal, state_cap))
}

/// Decides whether the class of `f` contains some constant map.
pub fn reaches_constant(f: &SimplicialMap, state_cap: usize) -> ClassSearch {
    let space = MapSpace::new(&f.source, &f.target);
    let n = f.source.vertex_count();
    let goal = |h: &[u8]| {
        if h.windows(2).all(|w| w[0] == w[1]) {
            return Some(h.into());
        }
        space.constant_neighbor(h).map(|v| vec![v; n].into_boxed_slice())
    };
    space.search(state_of(f), &goal, state_cap)
}

/// Evidence that a subcomplex is categorical: it strongly collapses to its
/// core, whose inclusion is joined to a constant map by a contiguity chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoricalWitness {
    pub collapse: CollapseSequence,
    pub chain: ContiguityChain,
    pub vertex: Vertex,
}

impl CategoricalWitness {
    pub fn verify(&self, piece: &SimplicialComplex, ambient: &SimplicialComplex) -> bool {
        let core = &self.collapse.end;
        let Ok(inclusion) = SimplicialMap::inclusion(core, ambient) else {
            return false;
        };
        let Ok(constant) = SimplicialMap::constant(core, ambient, &self.vertex) else {
            return false;
        };
        self.collapse.start == *piece
            && self.collapse.is_valid()
            && self.chain.maps.first() == Some(&inclusion.table())
            && self.chain.maps.last() == Some(&constant.table())
            && self.chain.verify(core, ambient)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoricalOutcome {
    Categorical(CategoricalWitness),
    NotCategorical { explored: usize },
    Unknown { explored: usize },
}

/// Decides whether the inclusion of `u` into `k` is in the contiguity class
/// of a constant map. The search runs on the core of `u`: the collapse
/// retraction composes within contiguity classes, so the answer is the same.
pub fn is_categorical(
    u: &SimplicialComplex,
    k: &SimplicialComplex,
    state_cap: usize,
) -> Result<CategoricalOutcome, ContiguityError> {
    if !u.is_subcomplex_of(k) {
        return Err(ContiguityError::NotSubcomplex);
    }
    let collapse = core(u);
    let inclusion = SimplicialMap::inclusion(&collapse.end, k)?;
    Ok(match reaches_constant(&inclusion, state_cap) {
        ClassSearch::Same(chain) => {
            let last = chain.maps.last().expect("non-empty chain");
            let vertex = last.values().next().expect("non-empty source").clone();
            CategoricalOutcome::Categorical(CategoricalWitness { collapse, chain, vertex })
        }
        ClassSearch::Different { explored } => CategoricalOutcome::NotCategorical { explored },
        ClassSearch::Unknown { explored } => CategoricalOutcome::Unknown { explored },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(s: &str) -> Vertex {
        Vertex::new(s).unwrap()
    }

    #[test]
    fn inclusion_of_boundary_is_contiguous_to_constant() {
        let t = fixtures::simplex(&["a", "b", "c"]);
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        let inc = SimplicialMap::inclusion(&c3, &t).unwrap();
        let ca = SimplicialMap::constant(&c3, &t, &v("a")).unwrap();
        assert!(are_contiguous(&inc, &ca).unwrap());
        assert!(are_contiguous(&inc, &inc).unwrap());
        match same_contiguity_class(&inc, &ca, 1000).unwrap() {
            ClassSearch::Same(chain) => {
                assert_eq!(chain.len(), 1);
                assert!(chain.verify(&c3, &t));
            }
            other => panic!("{other:?}"),
        }
        match same_contiguity_class(&inc, &inc, 1000).unwrap() {
            ClassSearch::Same(chain) => assert_eq!(chain.len(), 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constants_on_disjoint_components() {
        let two = SimplicialComplex::from_facets([["a", "b"], ["c", "d"]]).unwrap();
        let ca = SimplicialMap::constant(&two, &two, &v("a")).unwrap();
        let cc = SimplicialMap::constant(&two, &two, &v("c")).unwrap();
        assert!(!are_contiguous(&ca, &cc).unwrap());
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        let ca = SimplicialMap::constant(&c3, &c3, &v("a")).unwrap();
        let cb = SimplicialMap::constant(&c3, &c3, &v("b")).unwrap();
        assert!(are_contiguous(&ca, &cb).unwrap());
    }

    #[test]
    fn identity_of_cycle_is_rigid() {
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        let id = SimplicialMap::identity(&c3);
        let ca = SimplicialMap::constant(&c3, &c3, &v("a")).unwrap();
        assert!(matches!(same_contiguity_class(&id, &ca, 1000).unwrap(), ClassSearch::Different { .. }));
        assert!(matches!(reaches_constant(&id, 1000), ClassSearch::Different { .. }));
    }

    #[test]
    fn non_simplicial_maps_are_rejected() {
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        let two = SimplicialComplex::from_facets([["x", "y"], ["z", "w"]]).unwrap();
        let table: AssignmentTable = [("a", "x"), ("b", "z"), ("c", "x")]
            .into_iter()
            .map(|(p, q)| (v(p), v(q)))
            .collect();
        assert!(matches!(SimplicialMap::new(&c3, &two, &table), Err(ContiguityError::NotSimplicial(_))));
        let partial: AssignmentTable = [(v("a"), v("x"))].into_iter().collect();
        assert!(matches!(
            SimplicialMap::new(&c3, &two, &partial),
            Err(ContiguityError::IncompleteAssignment(_))
        ));
    }

    #[test]
    fn categorical_subcomplexes() {
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        assert!(matches!(is_categorical(&c3, &c3, 1000).unwrap(), CategoricalOutcome::NotCategorical { .. }));
        let t = fixtures::simplex(&["a", "b", "c"]);
        match is_categorical(&c3, &t, 1000).unwrap() {
            CategoricalOutcome::Categorical(w) => assert!(w.verify(&c3, &t)),
            other => panic!("{other:?}"),
        }
        let oct = fixtures::octahedron();
        let star = oct.generated_subcomplex(&oct.star_facets(&v("n")).unwrap()).unwrap();
        match is_categorical(&star, &oct, 1000).unwrap() {
            CategoricalOutcome::Categorical(w) => {
                assert!(w.verify(&star, &oct));
                assert!(w.chain.is_empty());
            }
            other => panic!("{other:?}"),
        }
        let stray = fixtures::simplex(&["a", "q"]);
        assert_eq!(is_categorical(&stray, &t, 10), Err(ContiguityError::NotSubcomplex));
    }

    #[test]
    fn tiny_cap_reports_unknown() {
        let tailed = SimplicialComplex::from_facets([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"], ["d", "e"]])
            .unwrap();
        let id = SimplicialMap::identity(&tailed);
        assert!(matches!(reaches_constant(&id, 1), ClassSearch::Unknown { .. }));
        assert!(matches!(reaches_constant(&id, 1000), ClassSearch::Different { .. }));
    }
}
