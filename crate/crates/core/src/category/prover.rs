//! Exact decision of whether a pure complex of dimension at most two is the
//! union of two strongly collapsible subcomplexes.
//!
//! Any strongly collapsible cover piece `P` containing a facet set `T` can be
//! replaced by `gen(T)` plus a forest of extra edges joining its components,
//! because edges that close a cycle kill contractibility and pendant trees
//! collapse away. So it suffices to label every facet `A`, `B` or both and
//! decide, for each side, whether `gen(T)` extends by such a forest to a
//! strongly collapsible complex.
//!
//! The labelling is searched depth first. A partial labelling is pruned when
//! the graph spanned by one side has a Z/2 cycle that no triangle still
//! available to that side can fill, since the finished piece must have
//! vanishing first homology. The first facet only takes the labels `A` and
//! both, which loses nothing by swapping the sides.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{verify_cover, CategoryError, CoverCertificate, CoverMode, CoverVerdict};
use crate::complex::{bit, bits, maximal_masks, seq_cmp, union_mask, Mask, Simplex, SimplicialComplex};
use crate::homology::EdgeIndex;
use crate::strong::{core_masks, is_sc_masks};

pub const DEFAULT_FOREST_CAP: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct ProverOptions {
    /// Connecting forests tried per facet set before giving up.
    pub forest_cap: u64,
    /// Labelling depth at which the search is split into parallel tasks.
    pub split_depth: usize,
    /// Worker threads; `0` uses the global pool.
    pub threads: usize,
}

impl Default for ProverOptions {
    fn default() -> Self {
        ProverOptions { forest_cap: DEFAULT_FOREST_CAP, split_depth: 6, threads: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProverStats {
    pub nodes: u64,
    pub pruned_a: u64,
    pub pruned_b: u64,
    pub leaves: u64,
    pub forests_tried: u64,
}

impl ProverStats {
    fn absorb(&mut self, o: &ProverStats) {
        self.nodes += o.nodes;
        self.pruned_a += o.pruned_a;
        self.pruned_b += o.pruned_b;
        self.leaves += o.leaves;
        self.forests_tried += o.forests_tried;
    }
}

/// A complete labelling that survived pruning, and why it still fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafRefutation {
    pub side_a: Vec<Simplex>,
    pub side_b: Vec<Simplex>,
    pub failed_side: Side,
    pub reason: String,
}

/// Record of an exhausted search. The digest is a SHA-256 over the canonical
/// JSON of every other field, so a rerun can be compared byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImpossibilityCertificate {
    pub complex: SimplicialComplex,
    pub facet_order: Vec<Simplex>,
    pub split_depth: usize,
    pub prefixes: usize,
    pub stats: ProverStats,
    pub refutations: Vec<LeafRefutation>,
    pub digest: String,
}

impl ImpossibilityCertificate {
    pub fn compute_digest(&self) -> String {
        let body = serde_json::json!({
            "complex": self.complex,
            "facet_order": self.facet_order,
            "split_depth": self.split_depth,
            "prefixes": self.prefixes,
            "stats": self.stats,
            "refutations": self.refutations,
        });
        let hash = Sha256::digest(body.to_string().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn digest_matches(&self) -> bool {
        self.digest == self.compute_digest()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoCoverDecision {
    Cover(CoverCertificate),
    Impossible(ImpossibilityCertificate),
}

const A: u8 = 1;
const B: u8 = 2;
const AB: u8 = 3;

struct Problem {
    facets: Vec<Mask>,
    facet_edges: Vec<u128>,
    triangle: u128,
    edges: Vec<Mask>,
    /// Edge indices usable in connecting forests: edges that are not facets.
    forest_edges: u128,
    all: u128,
    forest_cap: u64,
}

/// Rank of a set of rows over GF(2), on a stack buffer.
struct Rank {
    pivots: [u128; 128],
    rank: usize,
}

impl Rank {
    fn new() -> Self {
        Rank { pivots: [0; 128], rank: 0 }
    }

    fn insert(&mut self, mut r: u128) {
        while r != 0 {
            let p = r.trailing_zeros() as usize;
            if self.pivots[p] == 0 {
                self.pivots[p] = r;
                self.rank += 1;
                return;
            }
            r ^= self.pivots[p];
        }
    }
}

fn find(parent: &mut [u8; 128], mut x: usize) -> usize {
    while parent[x] as usize != x {
        let p = parent[x] as usize;
        parent[x] = parent[p];
        x = p;
    }
    x
}

fn components(vertices: Mask, edge_set: u128, edges: &[Mask]) -> usize {
    let mut parent = [0u8; 128];
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i as u8;
    }
    let mut count = vertices.count_ones() as usize;
    for e in bits(edge_set) {
        let a = edges[e].trailing_zeros() as usize;
        let b = 127 - edges[e].leading_zeros() as usize;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb as u8;
            count -= 1;
        }
    }
    count
}

#[derive(Clone, Copy, Default)]
struct State {
    ta: u128,
    tb: u128,
    only_a: u128,
    only_b: u128,
    ea: u128,
    eb: u128,
    va: Mask,
    vb: Mask,
}

impl Problem {
    fn assign(&self, s: &State, i: usize, label: u8) -> State {
        let mut n = *s;
        if label & A != 0 {
            n.ta |= bit(i);
            n.ea |= self.facet_edges[i];
            n.va |= self.facets[i];
        }
        if label & B != 0 {
            n.tb |= bit(i);
            n.eb |= self.facet_edges[i];
            n.vb |= self.facets[i];
        }
        match label {
            A => n.only_a |= bit(i),
            B => n.only_b |= bit(i),
            _ => {}
        }
        n
    }

    /// Every cycle of the side's graph lies in the span of the boundaries of
    /// triangles still available to it that are supported on its edges.
    fn side_ok(&self, edge_set: u128, vertices: Mask, available: u128) -> bool {
        let z = (edge_set.count_ones() as usize + components(vertices, edge_set, &self.edges))
            - vertices.count_ones() as usize;
        if z == 0 {
            return true;
        }
        let mut full = Rank::new();
        let mut outside = Rank::new();
        for t in bits(available & self.triangle) {
            full.insert(self.facet_edges[t]);
            outside.insert(self.facet_edges[t] & !edge_set);
        }
        full.rank - outside.rank == z
    }

    fn failing_side(&self, s: &State) -> Option<Side> {
        if !self.side_ok(s.ea, s.va, self.all & !s.only_b) {
            Some(Side::A)
        } else if !self.side_ok(s.eb, s.vb, self.all & !s.only_a) {
            Some(Side::B)
        } else {
            None
        }
    }

    fn state_of(&self, labels: &[u8]) -> State {
        labels.iter().enumerate().fold(State::default(), |s, (i, &l)| self.assign(&s, i, l))
    }
}

enum Extension {
    Piece(Vec<Mask>),
    Fails(String),
}

/// Decides whether `gen(T)` plus some connecting forest is strongly collapsible.
struct Extender<'a> {
    p: &'a Problem,
    memo: HashMap<u128, std::sync::Arc<Extension>>,
    forests_tried: u64,
}

impl<'a> Extender<'a> {
    fn extend(&mut self, t: u128) -> Result<std::sync::Arc<Extension>, CategoryError> {
        if let Some(e) = self.memo.get(&t) {
            return Ok(e.clone());
        }
        let e = std::sync::Arc::new(self.compute(t)?);
        self.memo.insert(t, e.clone());
        Ok(e)
    }

    fn compute(&mut self, t: u128) -> Result<Extension, CategoryError> {
        let p = self.p;
        if t == 0 {
            let v = p.facets.iter().fold(0, |a, f| a | f).trailing_zeros() as usize;
            return Ok(Extension::Piece(vec![bit(v)]));
        }
        let gen: Vec<Mask> = bits(t).map(|i| p.facets[i]).collect();
        let gen_edges = bits(t).fold(0u128, |a, i| a | p.facet_edges[i]);
        let vertices = union_mask(&gen);
        // Component of each vertex of gen(T); outside vertices get their own node.
        let mut parent = [0u8; 128];
        for (i, x) in parent.iter_mut().enumerate() {
            *x = i as u8;
        }
        for &f in &gen {
            let a = f.trailing_zeros() as usize;
            for v in bits(f) {
                let (ra, rv) = (find(&mut parent, a), find(&mut parent, v));
                if ra != rv {
                    parent[rv] = ra as u8;
                }
            }
        }
        let mut node_of = [usize::MAX; 128];
        let mut roots: Vec<usize> = Vec::new();
        for v in bits(vertices) {
            let r = find(&mut parent, v);
            let id = match roots.iter().position(|&x| x == r) {
                Some(id) => id,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
            node_of[v] = id;
        }
        let terminals = roots.len();
        let sorted = maximal_masks(gen.clone());
        if terminals == 1 {
            if is_sc_masks(&sorted) {
                return Ok(Extension::Piece(sorted));
            }
            let (core, _) = core_masks(sorted);
            return Ok(Extension::Fails(format!(
                "connected, core has {} vertices",
                union_mask(&core).count_ones()
            )));
        }
        let all_vertices = p.facets.iter().fold(0, |a, f| a | f);
        let mut next = terminals;
        for v in bits(all_vertices & !vertices) {
            node_of[v] = next;
            next += 1;
        }
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); next];
        for e in bits(p.forest_edges & !gen_edges) {
            let a = node_of[p.edges[e].trailing_zeros() as usize];
            let b = node_of[127 - p.edges[e].leading_zeros() as usize];
            if a != b {
                adjacency[a].push((b, e));
                adjacency[b].push((a, e));
            }
        }
        let mut search = ForestSearch {
            adjacency: &adjacency,
            edges: &p.edges,
            gen: &sorted,
            tried: 0,
            cap: p.forest_cap,
        };
        let remaining = ((1u128 << terminals) - 1) & !1;
        let found = search.steiner(1, 0, remaining)?;
        self.forests_tried += search.tried;
        Ok(match found {
            Some(piece) => Extension::Piece(piece),
            None => Extension::Fails(format!(
                "{terminals} components, {} connecting forests, none strongly collapsible",
                search.tried
            )),
        })
    }
}

/// Enumerates minimal trees joining all terminal nodes (nodes `0..t`), each
/// exactly once: the lowest unjoined terminal is attached to the current tree
/// by a simple path whose interior avoids the tree.
struct ForestSearch<'a> {
    adjacency: &'a [Vec<(usize, usize)>],
    edges: &'a [Mask],
    gen: &'a [Mask],
    tried: u64,
    cap: u64,
}

impl ForestSearch<'_> {
    fn steiner(&mut self, tree: u128, chosen: u128, remaining: u128) -> Result<Option<Vec<Mask>>, CategoryError> {
        if remaining == 0 {
            self.tried += 1;
            if self.tried > self.cap {
                return Err(CategoryError::ResourceCap(format!(
                    "more than {} connecting forests for one facet set",
                    self.cap
                )));
            }
            let mut masks = self.gen.to_vec();
            masks.extend(bits(chosen).map(|e| self.edges[e]));
            let masks = maximal_masks(masks);
            return Ok(is_sc_masks(&masks).then_some(masks));
        }
        let t = remaining.trailing_zeros() as usize;
        self.path(t, tree, bit(t), 0, remaining)
    }

    fn path(
        &mut self,
        at: usize,
        tree: u128,
        visited: u128,
        path_edges: u128,
        remaining: u128,
    ) -> Result<Option<Vec<Mask>>, CategoryError> {
        for &(y, e) in &self.adjacency[at] {
            if tree & bit(y) != 0 {
                let found = self.steiner(tree | visited, path_edges | bit(e), remaining & !visited)?;
                if found.is_some() {
                    return Ok(found);
                }
            } else if visited & bit(y) == 0 {
                let found = self.path(y, tree, visited | bit(y), path_edges | bit(e), remaining)?;
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }
}

/// Facets reordered so each next facet shares the most codimension-one faces
/// with those already placed; ties go to higher degree, then lexicographic.
fn facet_order(facets: &[Mask]) -> Vec<Mask> {
    let n = facets.len();
    let adjacent = |a: Mask, b: Mask| {
        let shared = (a & b).count_ones();
        shared >= 1 && shared + 1 >= a.count_ones().max(b.count_ones())
    };
    let degree: Vec<usize> =
        (0..n).map(|i| (0..n).filter(|&j| j != i && adjacent(facets[i], facets[j])).count()).collect();
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let mut score = vec![0usize; n];
    let mut used = vec![false; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&i| !used[i])
            .max_by(|&a, &b| {
                score[a]
                    .cmp(&score[b])
                    .then(degree[a].cmp(&degree[b]))
                    .then(seq_cmp(facets[b], facets[a]))
            })
            .expect("facet left");
        used[next] = true;
        placed.push(next);
        for j in 0..n {
            if !used[j] && adjacent(facets[next], facets[j]) {
                score[j] += 1;
            }
        }
    }
    placed.into_iter().map(|i| facets[i]).collect()
}

enum Flow {
    Continue,
    Found(u128, u128),
    Abort,
}

struct Walker<'a> {
    p: &'a Problem,
    stats: ProverStats,
    refutations: Vec<(u128, u128, Side, String)>,
    extender: Extender<'a>,
    index: usize,
    found_min: &'a AtomicUsize,
}

fn labels_for(depth: usize) -> &'static [u8] {
    if depth == 0 {
        &[A, AB]
    } else {
        &[A, B, AB]
    }
}

/// Depth-first enumeration of pruned labellings up to `stop`.
fn collect_prefixes(p: &Problem, stop: usize, stats: &mut ProverStats) -> Vec<Vec<u8>> {
    fn rec(p: &Problem, stop: usize, labels: &mut Vec<u8>, s: State, stats: &mut ProverStats, out: &mut Vec<Vec<u8>>) {
        let d = labels.len();
        if d == stop {
            out.push(labels.clone());
            return;
        }
        for &l in labels_for(d) {
            stats.nodes += 1;
            let n = p.assign(&s, d, l);
            match p.failing_side(&n) {
                Some(Side::A) => stats.pruned_a += 1,
                Some(Side::B) => stats.pruned_b += 1,
                None => {
                    labels.push(l);
                    rec(p, stop, labels, n, stats, out);
                    labels.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(p, stop, &mut Vec::new(), State::default(), stats, &mut out);
    out
}

impl Walker<'_> {
    fn walk(&mut self, d: usize, s: State) -> Result<Flow, CategoryError> {
        if self.found_min.load(Ordering::Relaxed) < self.index {
            return Ok(Flow::Abort);
        }
        if d == self.p.facets.len() {
            return self.leaf(s);
        }
        for &l in labels_for(d) {
            self.stats.nodes += 1;
            let n = self.p.assign(&s, d, l);
            match self.p.failing_side(&n) {
                Some(Side::A) => self.stats.pruned_a += 1,
                Some(Side::B) => self.stats.pruned_b += 1,
                None => match self.walk(d + 1, n)? {
                    Flow::Continue => {}
                    other => return Ok(other),
                },
            }
        }
        Ok(Flow::Continue)
    }

    fn leaf(&mut self, s: State) -> Result<Flow, CategoryError> {
        self.stats.leaves += 1;
        let a = self.extender.extend(s.ta)?;
        let (side, ext) = match &*a {
            Extension::Fails(r) => (Side::A, Some(r.clone())),
            Extension::Piece(_) => match &*self.extender.extend(s.tb)? {
                Extension::Fails(r) => (Side::B, Some(r.clone())),
                Extension::Piece(_) => (Side::B, None),
            },
        };
        match ext {
            Some(reason) => {
                self.refutations.push((s.ta, s.tb, side, reason));
                Ok(Flow::Continue)
            }
            None => {
                self.found_min.fetch_min(self.index, Ordering::Relaxed);
                Ok(Flow::Found(s.ta, s.tb))
            }
        }
    }
}

struct TaskResult {
    stats: ProverStats,
    refutations: Vec<(u128, u128, Side, String)>,
    found: Option<(Vec<Mask>, Vec<Mask>)>,
}

fn run_task(p: &Problem, index: usize, prefix: &[u8], found_min: &AtomicUsize) -> Result<TaskResult, CategoryError> {
    let mut w = Walker {
        p,
        stats: ProverStats::default(),
        refutations: Vec::new(),
        extender: Extender { p, memo: HashMap::new(), forests_tried: 0 },
        index,
        found_min,
    };
    let flow = w.walk(prefix.len(), p.state_of(prefix))?;
    let found = match flow {
        Flow::Found(ta, tb) => {
            let piece = |t: u128, w: &mut Walker| -> Result<Vec<Mask>, CategoryError> {
                match &*w.extender.extend(t)? {
                    Extension::Piece(m) => Ok(m.clone()),
                    Extension::Fails(_) => unreachable!("leaf accepted both sides"),
                }
            };
            Some((piece(ta, &mut w)?, piece(tb, &mut w)?))
        }
        _ => None,
    };
    w.stats.forests_tried = w.extender.forests_tried;
    Ok(TaskResult { stats: w.stats, refutations: w.refutations, found })
}

/// Decides whether `k` is covered by two strongly collapsible subcomplexes.
pub fn two_cover_prover(k: &SimplicialComplex, options: &ProverOptions) -> Result<TwoCoverDecision, CategoryError> {
    if !k.is_pure() || k.dimension() > 2 {
        return Err(CategoryError::Precondition(
            "the two-cover prover needs a pure complex of dimension at most 2".into(),
        ));
    }
    if k.facet_count() > 128 {
        return Err(CategoryError::Precondition("more than 128 facets".into()));
    }
    let index = EdgeIndex::new(k);
    if index.edges.len() > 128 {
        return Err(CategoryError::Precondition("more than 128 edges".into()));
    }
    let facets = facet_order(k.masks());
    let facet_edges: Vec<u128> = facets
        .iter()
        .map(|&f| match f.count_ones() {
            3 => index.boundary_of_triangle(f).fold(0, |a, e| a | bit(e)),
            2 => bit(index.lookup[&f]),
            _ => 0,
        })
        .collect();
    let triangle = (0..facets.len()).filter(|&i| facets[i].count_ones() == 3).fold(0, |a, i| a | bit(i));
    let forest_edges =
        (0..index.edges.len()).filter(|e| !facets.contains(&index.edges[*e])).fold(0, |a, e| a | bit(e));
    let n = facets.len();
    let problem = Problem {
        facets,
        facet_edges,
        triangle,
        edges: index.edges.clone(),
        forest_edges,
        all: if n == 128 { !0 } else { (1u128 << n) - 1 },
        forest_cap: options.forest_cap,
    };
    let split = options.split_depth.clamp(1, n);
    let mut stats = ProverStats::default();
    let prefixes = collect_prefixes(&problem, split, &mut stats);
    let found_min = AtomicUsize::new(usize::MAX);
    let run = || -> Vec<Result<TaskResult, CategoryError>> {
        prefixes.par_iter().enumerate().map(|(i, pre)| run_task(&problem, i, pre, &found_min)).collect()
    };
    let results = if options.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| CategoryError::Precondition(e.to_string()))?
            .install(run)
    } else {
        run()
    };
    let simplices = |t: u128| -> Vec<Simplex> {
        let mut v: Vec<Mask> = bits(t).map(|i| problem.facets[i]).collect();
        v.sort_by(|a, b| seq_cmp(*a, *b));
        v.into_iter().map(|m| k.simplex_of(m)).collect()
    };
    let mut refutations = Vec::new();
    for r in results {
        let r = r?;
        if let Some((a, b)) = r.found {
            let pieces = vec![k.sub_from_masks(a)?, k.sub_from_masks(b)?];
            return match verify_cover(k, &pieces, CoverMode::StronglyCollapsible, 0)? {
                CoverVerdict::Valid(c) => Ok(TwoCoverDecision::Cover(c)),
                other => unreachable!("prover produced an invalid cover: {other:?}"),
            };
        }
        stats.absorb(&r.stats);
        refutations.extend(r.refutations.into_iter().map(|(ta, tb, side, reason)| LeafRefutation {
            side_a: simplices(ta),
            side_b: simplices(tb),
            failed_side: side,
            reason,
        }));
    }
    let mut cert = ImpossibilityCertificate {
        complex: k.clone(),
        facet_order: problem.facets.iter().map(|&m| k.simplex_of(m)).collect(),
        split_depth: split,
        prefixes: prefixes.len(),
        stats,
        refutations,
        digest: String::new(),
    };
    cert.digest = cert.compute_digest();
    Ok(TwoCoverDecision::Impossible(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn decide(k: &SimplicialComplex) -> TwoCoverDecision {
        two_cover_prover(k, &ProverOptions::default()).unwrap()
    }

    #[test]
    fn circles_and_spheres() {
        for k in [
            fixtures::cycle(&["a", "b", "c"]),
            fixtures::boundary_of_simplex(&["a", "b", "c", "d"]),
            fixtures::octahedron(),
            fixtures::simplex(&["a", "b", "c"]),
        ] {
            match decide(&k) {
                TwoCoverDecision::Cover(c) => assert!(c.verify()),
                TwoCoverDecision::Impossible(_) => panic!("{k:?} has a two-cover"),
            }
        }
    }

    #[test]
    fn two_circles_need_three() {
        match decide(&fixtures::two_cycles()) {
            TwoCoverDecision::Impossible(c) => {
                assert!(c.digest_matches());
                assert_eq!(c.digest.len(), 64);
                let again = match decide(&fixtures::two_cycles()) {
                    TwoCoverDecision::Impossible(c) => c,
                    _ => unreachable!(),
                };
                assert_eq!(again, c);
            }
            TwoCoverDecision::Cover(c) => panic!("unexpected cover {:?}", c.cover.pieces),
        }
    }

    #[test]
    fn overlap_needed() {
        // A disconnected piece joined through an edge outside its facets.
        let k = SimplicialComplex::from_facets([
            vec!["a", "b", "c"],
            vec!["c", "d", "e"],
            vec!["a", "e", "x"],
        ])
        .unwrap();
        assert!(matches!(decide(&k), TwoCoverDecision::Cover(_)));
    }

    #[test]
    fn rejects_impure() {
        let k = SimplicialComplex::from_facets([vec!["a", "b", "c"], vec!["c", "d"]]).unwrap();
        assert!(matches!(two_cover_prover(&k, &ProverOptions::default()), Err(CategoryError::Precondition(_))));
        let k = fixtures::simplex(&["a", "b", "c", "d"]);
        assert!(two_cover_prover(&k, &ProverOptions::default()).is_err());
    }

    #[test]
    fn forest_order_is_connected() {
        let o = fixtures::octahedron();
        let order = facet_order(o.masks());
        for w in 1..order.len() {
            assert!(order[..w].iter().any(|&f| (f & order[w]).count_ones() == 2));
        }
    }
}
