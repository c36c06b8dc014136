//! Constraint search for labelled pinched-sphere triangulations.
//!
//! A [`ConstraintSet`] fixes the vertex labels, the f-vector, required and
//! forbidden triangles, required edges, and optionally a pseudo-surface
//! condition: every edge in two triangles, every link a single cycle except
//! at one pinch vertex whose link is several disjoint cycles, and splitting
//! the pinch vertex gives a connected surface of a given Euler
//! characteristic. [`search_k`] enumerates solutions by closing open edges
//! one at a time; [`audit`] re-checks a candidate with independent code.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::complex::{bit, bits, seq_cmp, ComplexError, FVector, Mask, Simplex, SimplicialComplex, Vertex};
use crate::homology::h1_rank_mod2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("inconsistent constraints: {0}")]
    Inconsistent(String),
    #[error("cannot unfold {vertex}: {reason}")]
    Unfold { vertex: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceConstraint {
    pub pinch_vertex: Vertex,
    /// Number of disjoint cycles in the link of the pinch vertex.
    pub pinch_cycles: usize,
    pub unfolded_euler_characteristic: i64,
}

/// Which triangles the search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidatePool {
    All,
    /// For labels `(k,l)`: no two vertices other than `(0,0)` whose columns
    /// `k` differ by two or more share a triangle.
    ColumnBand,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSet {
    pub vertex_labels: Vec<Vertex>,
    pub f_vector_target: FVector,
    pub required_triangles: Vec<Simplex>,
    pub forbidden_triangles: Vec<Simplex>,
    pub required_edges: Vec<Simplex>,
    pub surface: Option<SurfaceConstraint>,
    pub h1_rank: Option<usize>,
    pub pool: CandidatePool,
}

fn label(k: i32, l: i32) -> String {
    format!("({k},{l})")
}

fn parse_column(v: &Vertex) -> Option<i32> {
    let s = v.as_str().strip_prefix('(')?.strip_suffix(')')?;
    let (k, l) = s.split_once(',')?;
    l.parse::<i32>().ok()?;
    k.parse().ok()
}

fn simplices(list: &[&[(i32, i32)]]) -> Vec<Simplex> {
    list.iter()
        .map(|s| Simplex::new(s.iter().map(|&(k, l)| label(k, l))).expect("valid labels"))
        .collect()
}

impl ConstraintSet {
    /// The 15-vertex pinched sphere with two handles studied in this crate.
    pub fn two_handle_pinched_sphere() -> Self {
        let vertex_labels = (-2..=2)
            .flat_map(|k| (0..=2).map(move |l| Vertex::new(label(k, l)).expect("valid label")))
            .collect();
        let required_edges = simplices(&[
            &[(0, 0), (2, 0)],
            &[(2, 0), (1, 0)],
            &[(1, 0), (0, 0)],
            &[(0, 0), (1, 2)],
            &[(1, 1), (1, 2)],
            &[(1, 1), (0, 0)],
            &[(0, 2), (0, 0)],
            &[(0, 0), (0, 1)],
            &[(0, 1), (0, 2)],
            &[(0, 0), (-2, 1)],
            &[(-1, 0), (-2, 0)],
            &[(-1, 0), (-1, 1)],
            &[(-1, 1), (-1, 2)],
            &[(-1, 2), (-1, 0)],
        ]);
        let required_triangles = simplices(&[
            &[(0, 0), (2, 0), (2, 1)],
            &[(0, 0), (2, 1), (2, 2)],
            &[(0, 0), (2, 2), (2, 0)],
            &[(0, 0), (-2, 0), (-2, 1)],
            &[(0, 0), (-2, 1), (-2, 2)],
            &[(0, 0), (-2, 2), (-2, 0)],
        ]);
        let forbidden_triangles = simplices(&[
            &[(0, 0), (2, 0), (1, 0)],
            &[(0, 0), (1, 1), (1, 2)],
            &[(0, 0), (0, 1), (0, 2)],
            &[(-1, 0), (-1, 1), (-1, 2)],
        ]);
        let mut edges = required_edges;
        for t in &required_triangles {
            for e in faces(t) {
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        ConstraintSet {
            vertex_labels,
            f_vector_target: FVector(vec![15, 45, 30]),
            required_triangles,
            forbidden_triangles,
            required_edges: edges,
            surface: Some(SurfaceConstraint {
                pinch_vertex: Vertex::new("(0,0)").expect("valid label"),
                pinch_cycles: 3,
                unfolded_euler_characteristic: 2,
            }),
            h1_rank: Some(2),
            pool: CandidatePool::All,
        }
    }

    pub fn with_pool(mut self, pool: CandidatePool) -> Self {
        self.pool = pool;
        self
    }

    /// Checks the internal consistency of the constraints.
    pub fn validate(&self) -> Result<(), ReconstructError> {
        let labels: BTreeSet<&Vertex> = self.vertex_labels.iter().collect();
        if labels.len() != self.vertex_labels.len() || labels.is_empty() {
            return Err(ReconstructError::Inconsistent("labels must be distinct and non-empty".into()));
        }
        if labels.len() > crate::complex::MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(labels.len()).into());
        }
        let known = |s: &Simplex| s.vertices().iter().all(|v| labels.contains(v));
        for (what, list, dim) in [
            ("required triangle", &self.required_triangles, 2),
            ("forbidden triangle", &self.forbidden_triangles, 2),
            ("required edge", &self.required_edges, 1),
        ] {
            if let Some(s) = list.iter().find(|s| s.dimension() != dim || !known(s)) {
                return Err(ReconstructError::Inconsistent(format!("{what} {s} is malformed")));
            }
        }
        if let Some(t) = self.required_triangles.iter().find(|t| self.forbidden_triangles.contains(t)) {
            return Err(ReconstructError::Inconsistent(format!("{t} is both required and forbidden")));
        }
        if self.f_vector_target.0.len() != 3 || self.f_vector_target.0[0] != labels.len() {
            return Err(ReconstructError::Inconsistent(
                "the f-vector must be (labels, edges, triangles) of a pure 2-complex".into(),
            ));
        }
        if let Some(s) = &self.surface {
            if !labels.contains(&s.pinch_vertex) {
                return Err(ReconstructError::Inconsistent(format!("unknown pinch vertex {}", s.pinch_vertex.as_str())));
            }
        }
        if self.pool == CandidatePool::ColumnBand && self.vertex_labels.iter().any(|v| parse_column(v).is_none()) {
            return Err(ReconstructError::Inconsistent("the column pool needs labels of the form (k,l)".into()));
        }
        Ok(())
    }
}

fn faces(s: &Simplex) -> Vec<Simplex> {
    let vs = s.vertices();
    (0..vs.len())
        .map(|skip| {
            Simplex::new(vs.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v.as_str()))
                .expect("proper face")
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// The whole space was searched.
    Exhausted,
    /// `solution_limit` solutions were found.
    LimitReached,
    /// The node budget ran out first; the result is indeterminate.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub solutions: Vec<SimplicialComplex>,
    pub status: SearchStatus,
    pub nodes: u64,
    /// SHA-256 over the node count, status and solutions.
    pub digest: String,
}

impl SearchOutcome {
    pub fn is_indeterminate(&self) -> bool {
        self.status == SearchStatus::BudgetExhausted
    }
}

struct Search<'a> {
    c: &'a ConstraintSet,
    labels: Vec<Vertex>,
    n: usize,
    target: usize,
    allowed: HashSet<Mask>,
    excluded: HashSet<Mask>,
    chosen: Vec<Mask>,
    chosen_set: HashSet<Mask>,
    usage: Vec<u8>,
    distinct_edges: usize,
    links: Vec<Vec<Mask>>,
    required_edges: Vec<Mask>,
    pinch: Option<(usize, usize)>,
    nodes: u64,
    budget: u64,
    limit: usize,
    found: BTreeSet<Vec<Mask>>,
    solutions: Vec<SimplicialComplex>,
    stopped: Option<SearchStatus>,
}

#[derive(PartialEq)]
enum Link {
    Ok,
    Closed,
    Dead,
}

impl Search<'_> {
    fn pair(&self, a: usize, b: usize) -> usize {
        a * self.n + b
    }

    fn use_edges(&mut self, t: Mask, delta: i8) {
        let vs: Vec<usize> = bits(t).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                let (a, b) = (vs[i], vs[j]);
                let (ab, ba) = (self.pair(a, b), self.pair(b, a));
                let before = self.usage[ab];
                self.usage[ab] = (before as i8 + delta) as u8;
                self.usage[ba] = self.usage[ab];
                if before == 0 && delta > 0 {
                    self.distinct_edges += 1;
                } else if self.usage[ab] == 0 {
                    self.distinct_edges -= 1;
                }
            }
        }
    }

    fn push(&mut self, t: Mask) {
        self.use_edges(t, 1);
        for v in bits(t) {
            self.links[v].push(t & !bit(v));
        }
        self.chosen.push(t);
        self.chosen_set.insert(t);
    }

    fn pop(&mut self) {
        let t = self.chosen.pop().expect("non-empty");
        self.chosen_set.remove(&t);
        for v in bits(t) {
            self.links[v].pop();
        }
        self.use_edges(t, -1);
    }

    /// Shape of the partial link of `v`: closed cycles versus open paths.
    fn link_state(&self, v: usize) -> Link {
        let edges = &self.links[v];
        if edges.is_empty() {
            return Link::Ok;
        }
        let mut comp: Vec<Mask> = Vec::new();
        for &e in edges {
            let touching: Vec<usize> = (0..comp.len()).filter(|&i| comp[i] & e != 0).collect();
            let mut merged = e;
            for &i in touching.iter().rev() {
                merged |= comp.swap_remove(i);
            }
            comp.push(merged);
        }
        let closed = comp
            .iter()
            .filter(|&&m| bits(m).all(|u| self.usage[self.pair(v, u)] == 2))
            .count();
        let allowed_cycles = match self.pinch {
            Some((p, c)) if p == v => c,
            _ => 1,
        };
        if closed > allowed_cycles || (closed == allowed_cycles && comp.len() > closed) {
            return Link::Dead;
        }
        if closed == allowed_cycles {
            Link::Closed
        } else {
            Link::Ok
        }
    }

    fn consistent_after(&self, t: Mask) -> bool {
        bits(t).all(|v| match self.link_state(v) {
            Link::Dead => false,
            Link::Ok => true,
            Link::Closed => self
                .required_edges
                .iter()
                .filter(|&&e| e & bit(v) != 0)
                .all(|&e| {
                    let mut it = bits(e);
                    let (a, b) = (it.next().unwrap(), it.next().unwrap());
                    self.usage[self.pair(a, b)] > 0
                }),
        })
    }

    fn try_place(&mut self, t: Mask) -> bool {
        let ok = bits(t).all(|a| bits(t).all(|b| a == b || self.usage[self.pair(a, b)] < 2));
        if !ok {
            return false;
        }
        self.push(t);
        if self.distinct_edges > self.c.f_vector_target.0[1] || !self.consistent_after(t) {
            self.pop();
            return false;
        }
        true
    }

    fn candidates_for(&self, a: usize, b: usize) -> Vec<Mask> {
        (0..self.n)
            .filter(|&w| w != a && w != b)
            .map(|w| bit(a) | bit(b) | bit(w))
            .filter(|t| self.allowed.contains(t) && !self.chosen_set.contains(t) && !self.excluded.contains(t))
            .filter(|&t| {
                let w = (t & !bit(a) & !bit(b)).trailing_zeros() as usize;
                self.usage[self.pair(a, w)] < 2 && self.usage[self.pair(b, w)] < 2
            })
            .collect()
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.stopped = Some(SearchStatus::BudgetExhausted);
            return false;
        }
        true
    }

    fn record(&mut self) {
        let mut key = self.chosen.clone();
        key.sort_by(|a, b| seq_cmp(*a, *b));
        if self.found.contains(&key) {
            return;
        }
        let k = SimplicialComplex::from_masks(&self.labels, key.clone()).expect("non-empty");
        if audit(&k, self.c).passed() {
            self.found.insert(key);
            self.solutions.push(k);
            if self.solutions.len() >= self.limit {
                self.stopped = Some(SearchStatus::LimitReached);
            }
        }
    }

    fn surface_dfs(&mut self) {
        if self.stopped.is_some() {
            return;
        }
        let mut open = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.usage[self.pair(a, b)] == 1 {
                    open.push((a, b));
                }
            }
        }
        let placed = self.chosen.len();
        if open.is_empty() {
            if placed == self.target {
                self.record();
            }
            return;
        }
        if placed >= self.target || open.len() > 3 * (self.target - placed) {
            return;
        }
        let mut best: Option<Vec<Mask>> = None;
        for &(a, b) in &open {
            let c = self.candidates_for(a, b);
            if best.as_ref().is_none_or(|x| c.len() < x.len()) {
                let empty = c.is_empty();
                best = Some(c);
                if empty {
                    return;
                }
            }
        }
        for t in best.expect("open edges exist") {
            if !self.tick() {
                return;
            }
            if self.try_place(t) {
                self.surface_dfs();
                self.pop();
            }
            if self.stopped.is_some() {
                return;
            }
        }
    }

    fn subset_dfs(&mut self, pool: &[Mask], from: usize) {
        if self.stopped.is_some() {
            return;
        }
        if self.chosen.len() == self.target {
            self.record();
            return;
        }
        for i in from..pool.len() {
            if pool.len() - i < self.target - self.chosen.len() {
                return;
            }
            if !self.tick() {
                return;
            }
            self.push(pool[i]);
            if self.distinct_edges <= self.c.f_vector_target.0[1] {
                self.subset_dfs(pool, i + 1);
            }
            self.pop();
            if self.stopped.is_some() {
                return;
            }
        }
    }
}

/// Enumerates up to `solution_limit` complexes satisfying `constraints`, in a
/// deterministic order. Each returned complex passes [`audit`].
pub fn search_k(
    constraints: &ConstraintSet,
    solution_limit: usize,
    node_budget: u64,
) -> Result<SearchOutcome, ReconstructError> {
    constraints.validate()?;
    let mut labels = constraints.vertex_labels.clone();
    labels.sort();
    let n = labels.len();
    let index = |v: &Vertex| labels.binary_search(v).expect("validated label");
    let mask = |s: &Simplex| s.vertices().iter().fold(0, |m, v| m | bit(index(v)));
    let forbidden: HashSet<Mask> = constraints.forbidden_triangles.iter().map(mask).collect();
    let columns: Vec<Option<i32>> = labels.iter().map(parse_column).collect();
    let centre = labels.iter().position(|v| v.as_str() == "(0,0)");
    let mut allowed = HashSet::new();
    let mut pool = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t = bit(a) | bit(b) | bit(c);
                let band_ok = constraints.pool == CandidatePool::All
                    || [(a, b), (a, c), (b, c)].iter().all(|&(x, y)| {
                        Some(x) == centre
                            || Some(y) == centre
                            || (columns[x].unwrap() - columns[y].unwrap()).abs() <= 1
                    });
                if band_ok && !forbidden.contains(&t) {
                    allowed.insert(t);
                    pool.push(t);
                }
            }
        }
    }
    pool.sort_by(|a, b| seq_cmp(*a, *b));
    let required: Vec<Mask> = constraints.required_triangles.iter().map(mask).collect();
    let mut search = Search {
        c: constraints,
        labels: labels.clone(),
        n,
        target: constraints.f_vector_target.0[2],
        allowed,
        excluded: HashSet::new(),
        chosen: Vec::new(),
        chosen_set: HashSet::new(),
        usage: vec![0; n * n],
        distinct_edges: 0,
        links: vec![Vec::new(); n],
        required_edges: constraints.required_edges.iter().map(mask).collect(),
        pinch: constraints.surface.as_ref().map(|s| (index(&s.pinch_vertex), s.pinch_cycles)),
        nodes: 0,
        budget: node_budget,
        limit: solution_limit.max(1),
        found: BTreeSet::new(),
        solutions: Vec::new(),
        stopped: None,
    };
    if constraints.surface.is_some() {
        let mut seeded = true;
        for &t in &required {
            if !search.try_place(t) {
                seeded = false;
                break;
            }
        }
        if seeded && required.is_empty() {
            let roots: Vec<Mask> = pool.iter().copied().filter(|&t| t & 1 == 1).collect();
            for t in roots {
                if !search.tick() {
                    break;
                }
                if search.try_place(t) {
                    search.surface_dfs();
                    search.pop();
                }
                if search.stopped.is_some() {
                    break;
                }
                search.excluded.insert(t);
            }
        } else if seeded {
            search.surface_dfs();
        }
    } else {
        let rest: Vec<Mask> = pool.iter().copied().filter(|t| !required.contains(t)).collect();
        for &t in &required {
            search.push(t);
        }
        if required.len() <= search.target {
            search.subset_dfs(&rest, 0);
        }
    }
    let status = search.stopped.unwrap_or(SearchStatus::Exhausted);
    let mut hasher = Sha256::new();
    hasher.update(format!("{}:{:?}\n", search.nodes, status));
    for s in &search.solutions {
        hasher.update(s.to_facet_text());
        hasher.update(b"--\n");
    }
    let digest = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
    Ok(SearchOutcome { solutions: search.solutions, status, nodes: search.nodes, digest })
}

/// Splits `v` into one copy per connected component of its link, each copy
/// taking the star of its component. Copies are labelled `v#1`, `v#2`, ...
/// in order of the smallest facet of each component.
pub fn unfold_pinch(k: &SimplicialComplex, v: &Vertex) -> Result<SimplicialComplex, ReconstructError> {
    let err = |reason: &str| ReconstructError::Unfold { vertex: v.as_str().to_string(), reason: reason.into() };
    let link = k.link(v)?.ok_or_else(|| err("isolated vertex"))?;
    let cycles = components(&link);
    if cycles.len() < 2 {
        return Err(err("link is connected"));
    }
    let mut facets: Vec<Vec<String>> = Vec::new();
    for f in k.facets() {
        let labels: Vec<String> = f.vertices().iter().map(|x| x.as_str().to_string()).collect();
        if !f.contains(v) {
            facets.push(labels);
            continue;
        }
        let other = f.vertices().iter().find(|x| *x != v).ok_or_else(|| err("vertex is a facet"))?;
        let c = cycles.iter().position(|cyc| cyc.contains(other)).expect("link vertex lies on a cycle");
        let copy = format!("{}#{}", v.as_str(), c + 1);
        facets.push(labels.into_iter().map(|x| if x == v.as_str() { copy.clone() } else { x }).collect());
    }
    Ok(SimplicialComplex::from_facets(facets)?)
}

/// Vertex sets of the connected components, ordered by their smallest facet.
fn components(k: &SimplicialComplex) -> Vec<BTreeSet<Vertex>> {
    let facets = k.facets();
    let mut comps: Vec<BTreeSet<Vertex>> = Vec::new();
    for e in &facets {
        let vs: BTreeSet<Vertex> = e.vertices().iter().cloned().collect();
        let (touch, rest): (Vec<_>, Vec<_>) = comps.into_iter().partition(|c| !c.is_disjoint(&vs));
        let mut merged = vs;
        for c in touch {
            merged.extend(c);
        }
        comps = rest;
        comps.push(merged);
    }
    comps.sort_by(|a, b| {
        let first = |c: &BTreeSet<Vertex>| facets.iter().find(|e| e.vertices().iter().all(|x| c.contains(x))).cloned();
        first(a).cmp(&first(b))
    });
    comps
}

/// Vertex sets of the components of a 1-complex, if each is a cycle.
fn cycle_components(link: &SimplicialComplex) -> Option<Vec<BTreeSet<Vertex>>> {
    if link.dimension() != 1 || !link.is_pure() {
        return None;
    }
    let edges = link.facets();
    let degree_two = link
        .vertices()
        .iter()
        .all(|x| edges.iter().filter(|e| e.contains(x)).count() == 2);
    degree_two.then(|| components(link))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Re-verifies every constraint on `k` through the public complex API.
pub fn audit(k: &SimplicialComplex, c: &ConstraintSet) -> AuditReport {
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(AuditCheck { name: name.into(), passed, detail })
    };
    let mut want: Vec<Vertex> = c.vertex_labels.clone();
    want.sort();
    check("labels", k.vertices() == want.as_slice(), format!("{} vertices", k.vertex_count()));
    let fv = k.f_vector();
    check(
        "f_vector",
        fv == c.f_vector_target && k.is_pure(),
        format!("{fv}, pure: {}", k.is_pure()),
    );
    let facets = k.facets();
    let missing: Vec<String> =
        c.required_triangles.iter().filter(|t| !facets.contains(t)).map(|t| t.to_string()).collect();
    check("required_triangles", missing.is_empty(), format!("missing: {missing:?}"));
    let present: Vec<String> =
        c.forbidden_triangles.iter().filter(|t| k.contains_simplex(t)).map(|t| t.to_string()).collect();
    check("forbidden_triangles", present.is_empty(), format!("present: {present:?}"));
    let missing: Vec<String> =
        c.required_edges.iter().filter(|e| !k.contains_simplex(e)).map(|e| e.to_string()).collect();
    check("required_edges", missing.is_empty(), format!("missing: {missing:?}"));
    if let Some(s) = &c.surface {
        let edges = k.simplices_of_dimension(1);
        let bad_edges = edges
            .iter()
            .filter(|e| facets.iter().filter(|f| e.vertices().iter().all(|v| f.contains(v))).count() != 2)
            .count();
        check("edges_in_two_triangles", bad_edges == 0, format!("{bad_edges} edges violate"));
        let mut bad_links = Vec::new();
        for v in k.vertices() {
            let want = if *v == s.pinch_vertex { s.pinch_cycles } else { 1 };
            let cycles = k.link(v).ok().flatten().as_ref().and_then(cycle_components).map(|c| c.len());
            if cycles != Some(want) {
                bad_links.push(format!("{}: {cycles:?}", v.as_str()));
            }
        }
        check("links", bad_links.is_empty(), format!("bad links: {bad_links:?}"));
        match unfold_pinch(k, &s.pinch_vertex) {
            Ok(u) => {
                let chi = u.f_vector().euler_characteristic();
                check(
                    "unfolded_surface",
                    chi == s.unfolded_euler_characteristic && u.is_connected(),
                    format!("{} vertices, euler characteristic {chi}, connected: {}", u.vertex_count(), u.is_connected()),
                );
            }
            Err(e) => check("unfolded_surface", false, e.to_string()),
        }
    }
    if let Some(r) = c.h1_rank {
        let h = h1_rank_mod2(k);
        check("h1_rank", h == r, format!("rank {h}"));
    }
    AuditReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn small(labels: &[&str], f: [usize; 3]) -> ConstraintSet {
        ConstraintSet {
            vertex_labels: labels.iter().map(|l| Vertex::new(*l).unwrap()).collect(),
            f_vector_target: FVector(f.to_vec()),
            required_triangles: vec![],
            forbidden_triangles: vec![],
            required_edges: vec![],
            surface: None,
            h1_rank: None,
            pool: CandidatePool::All,
        }
    }

    #[test]
    fn triangle_is_the_only_small_solution() {
        let out = search_k(&small(&["a", "b", "c"], [3, 3, 1]), 10, 1000).unwrap();
        assert_eq!(out.status, SearchStatus::Exhausted);
        assert_eq!(out.solutions, vec![fixtures::simplex(&["a", "b", "c"])]);
    }

    #[test]
    fn inconsistent_constraints() {
        let mut c = small(&["a", "b", "c"], [3, 3, 1]);
        let t = Simplex::new(["a", "b", "c"]).unwrap();
        c.required_triangles.push(t.clone());
        c.forbidden_triangles.push(t);
        assert!(matches!(search_k(&c, 1, 10), Err(ReconstructError::Inconsistent(_))));
    }

    #[test]
    fn tetrahedron_boundary_as_surface() {
        let mut c = small(&["a", "b", "c", "d"], [4, 6, 4]);
        c.surface = Some(SurfaceConstraint {
            pinch_vertex: Vertex::new("a").unwrap(),
            pinch_cycles: 1,
            unfolded_euler_characteristic: 2,
        });
        // A single-cycle link cannot be unfolded, so the audit rejects it.
        let out = search_k(&c, 5, 1000).unwrap();
        assert!(out.solutions.is_empty());
        assert_eq!(out.status, SearchStatus::Exhausted);
    }

    #[test]
    fn unfolding() {
        let glued = SimplicialComplex::from_facets([["p", "a", "b"], ["p", "c", "d"]]).unwrap();
        let apart = unfold_pinch(&glued, &Vertex::new("p").unwrap()).unwrap();
        let expected = SimplicialComplex::from_facets([["p#1", "a", "b"], ["p#2", "c", "d"]]).unwrap();
        assert_eq!(apart, expected);
        let bow = SimplicialComplex::from_facets([
            ["p", "a", "b"],
            ["p", "b", "c"],
            ["p", "c", "a"],
            ["p", "x", "y"],
            ["p", "y", "z"],
            ["p", "z", "x"],
        ])
        .unwrap();
        let u = unfold_pinch(&bow, &Vertex::new("p").unwrap()).unwrap();
        assert_eq!(u.vertex_count(), 8);
        assert!(!u.is_connected());
        let s = fixtures::boundary_of_simplex(&["a", "b", "c", "d"]);
        assert!(unfold_pinch(&s, &Vertex::new("a").unwrap()).is_err());
    }

    #[test]
    fn builtin_constraints_are_consistent() {
        let c = ConstraintSet::two_handle_pinched_sphere();
        c.validate().unwrap();
        assert_eq!(c.vertex_labels.len(), 15);
        assert_eq!(c.required_edges.len(), 24);
        c.clone().with_pool(CandidatePool::ColumnBand).validate().unwrap();
    }
}
