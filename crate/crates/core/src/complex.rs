//! Finite abstract simplicial complexes.
//!
//! A complex is stored by its facets. Vertices carry opaque string labels and
//! are indexed by their position in byte-lexicographic label order, so a
//! simplex is a bit mask over at most [`MAX_VERTICES`] vertices. All values
//! are immutable; every operation returns a new complex.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a single complex may have.
pub const MAX_VERTICES: usize = 128;

pub(crate) type Mask = u128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("empty complex")]
    EmptyComplex,
    #[error("empty simplex")]
    EmptySimplex,
    #[error("degenerate simplex: label {0} repeated")]
    DegenerateSimplex(String),
    #[error("invalid vertex label {0:?}")]
    InvalidLabel(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("not a simplex of the ambient complex: {0}")]
    NotASimplex(String),
    #[error("empty generating set")]
    EmptyGeneratingSet,
    #[error("cannot delete {0}: it is the last vertex")]
    LastVertex(String),
    #[error("complex has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A vertex label. Comparison is exact byte equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(String);

impl Vertex {
    /// Labels are non-empty, contain no whitespace, and do not start with `#`.
    pub fn new(label: impl Into<String>) -> Result<Self, ComplexError> {
        let label = label.into();
        if label.is_empty() || label.starts_with('#') || label.chars().any(char::is_whitespace) {
            return Err(ComplexError::InvalidLabel(label));
        }
        Ok(Vertex(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Vertex {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A non-empty simplex, stored as a sorted duplicate-free list of labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new<I, S>(labels: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut vertices = labels
            .into_iter()
            .map(|s| Vertex::new(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DegenerateSimplex(w[0].0.clone()));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.binary_search(v).is_ok()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl TryFrom<Vec<String>> for Simplex {
    type Error = ComplexError;
    fn try_from(labels: Vec<String>) -> Result<Self, Self::Error> {
        Simplex::new(labels)
    }
}

impl From<Simplex> for Vec<String> {
    fn from(s: Simplex) -> Self {
        s.0.into_iter().map(|v| v.0).collect()
    }
}

/// Simplex counts by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A finite abstract simplicial complex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    facets: Vec<Mask>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.facets().iter().map(|s| s.to_string())).finish()
    }
}

pub(crate) fn bit(i: usize) -> Mask {
    1u128 << i
}

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Lexicographic order of the ascending index sequences of two masks.
pub(crate) fn seq_cmp(a: Mask, b: Mask) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let p = diff.trailing_zeros();
    if a & bit(p as usize) != 0 {
        if b >> p == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a >> p == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Keeps the containment-maximal masks, sorted canonically.
pub(crate) fn maximal_masks(mut masks: Vec<Mask>) -> Vec<Mask> {
    masks.retain(|&m| m != 0);
    masks.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(seq_cmp(*a, *b)));
    masks.dedup();
    let mut kept: Vec<Mask> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| m & !k == 0) {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| seq_cmp(*a, *b));
    kept
}

/// Every non-empty subset of a mask.
pub(crate) fn nonempty_subsets(m: Mask) -> impl Iterator<Item = Mask> {
    let mut sub = m;
    let mut done = m == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        if sub == 0 {
            return None;
        }
        sub = (sub - 1) & m;
        if sub == 0 {
            done = true;
        }
        Some(out)
    })
}

pub(crate) fn all_simplex_masks(facets: &[Mask]) -> HashSet<Mask> {
    let mut out = HashSet::new();
    for &f in facets {
        if out.contains(&f) {
            continue;
        }
        for s in nonempty_subsets(f) {
            out.insert(s);
        }
    }
    out
}

pub(crate) fn union_mask(facets: &[Mask]) -> Mask {
    facets.iter().fold(0, |acc, f| acc | f)
}

impl SimplicialComplex {
    /// Builds the downward closure of a list of vertex sets. Sets contained in
    /// other sets are absorbed.
    pub fn from_facets<I, F, S>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let simplices = facets
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_simplices(&simplices)
    }

    pub fn from_simplices(simplices: &[Simplex]) -> Result<Self, ComplexError> {
        if simplices.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let mut labels: Vec<Vertex> = simplices.iter().flat_map(|s| s.0.iter().cloned()).collect();
        labels.sort();
        labels.dedup();
        if labels.len() > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(labels.len()));
        }
        let masks = simplices
            .iter()
            .map(|s| {
                s.0.iter()
                    .map(|v| bit(labels.binary_search(v).expect("label collected above")))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        Ok(SimplicialComplex { vertices: labels, facets: maximal_masks(masks) })
    }

    /// Builds a complex from masks over `labels`, dropping unused labels.
    pub(crate) fn from_masks(labels: &[Vertex], masks: Vec<Mask>) -> Result<Self, ComplexError> {
        let facets = maximal_masks(masks);
        if facets.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let used = union_mask(&facets);
        let kept: Vec<usize> = bits(used).collect();
        let mut remap = vec![usize::MAX; labels.len()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let facets = facets
            .into_iter()
            .map(|f| bits(f).map(|i| bit(remap[i])).fold(0, |a, b| a | b))
            .collect::<Vec<_>>();
        Ok(SimplicialComplex {
            vertices: kept.iter().map(|&i| labels[i].clone()).collect(),
            facets: maximal_masks(facets),
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> Vec<Simplex> {
        self.facets.iter().map(|&m| self.simplex_of(m)).collect()
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(1) - 1
    }

    /// True when every facet has the same dimension.
    pub fn is_pure(&self) -> bool {
        let d = self.facets[0].count_ones();
        self.facets.iter().all(|f| f.count_ones() == d)
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0usize; self.dimension() + 1];
        for s in all_simplex_masks(&self.facets) {
            counts[s.count_ones() as usize - 1] += 1;
        }
        FVector(counts)
    }

    /// All simplices, sorted by dimension and then lexicographically.
    pub fn simplices(&self) -> Vec<Simplex> {
        let mut all: Vec<Mask> = all_simplex_masks(&self.facets).into_iter().collect();
        all.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then(seq_cmp(*a, *b)));
        all.into_iter().map(|m| self.simplex_of(m)).collect()
    }

    pub fn simplices_of_dimension(&self, d: usize) -> Vec<Simplex> {
        self.simplex_masks_of_dimension(d).into_iter().map(|m| self.simplex_of(m)).collect()
    }

    pub fn contains_vertex(&self, v: &Vertex) -> bool {
        self.index_of(v).is_some()
    }

    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.mask_of(s).is_some_and(|m| self.has_mask(m))
    }

    pub fn is_connected(&self) -> bool {
        let mut reached = self.facets[0];
        loop {
            let next = self.facets.iter().filter(|&&f| f & reached != 0).fold(reached, |a, f| a | f);
            if next == reached {
                break;
            }
            reached = next;
        }
        reached == union_mask(&self.facets)
    }

    /// Simplices `s` with `v` not in `s` and `s + v` in the complex. `None` when
    /// the link is empty, which happens exactly for an isolated vertex.
    pub fn link(&self, v: &Vertex) -> Result<Option<SimplicialComplex>, ComplexError> {
        let i = self.require(v)?;
        let masks: Vec<Mask> =
            self.facets.iter().filter(|&&f| f & bit(i) != 0).map(|&f| f & !bit(i)).collect();
        if masks.iter().all(|&m| m == 0) {
            return Ok(None);
        }
        Self::from_masks(&self.vertices, masks).map(Some)
    }

    /// Facets containing `v`.
    pub fn star_facets(&self, v: &Vertex) -> Result<Vec<Simplex>, ComplexError> {
        let i = self.require(v)?;
        Ok(self.facets.iter().filter(|&&f| f & bit(i) != 0).map(|&f| self.simplex_of(f)).collect())
    }

    /// Downward closure of `generators`, which must be simplices of `self`.
    pub fn generated_subcomplex(&self, generators: &[Simplex]) -> Result<SimplicialComplex, ComplexError> {
        if generators.is_empty() {
            return Err(ComplexError::EmptyGeneratingSet);
        }
        let masks = generators
            .iter()
            .map(|s| match self.mask_of(s) {
                Some(m) if self.has_mask(m) => Ok(m),
                _ => Err(ComplexError::NotASimplex(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_masks(&self.vertices, masks)
    }

    /// All simplices not containing `v`.
    pub fn delete_vertex(&self, v: &Vertex) -> Result<SimplicialComplex, ComplexError> {
        let i = self.require(v)?;
        if self.vertices.len() == 1 {
            return Err(ComplexError::LastVertex(v.to_string()));
        }
        Self::from_masks(&self.vertices, self.facets.iter().map(|&f| f & !bit(i)).collect())
    }

    /// Full subcomplex on the given vertices.
    pub fn induced_subcomplex(&self, keep: &[Vertex]) -> Result<SimplicialComplex, ComplexError> {
        let mut m: Mask = 0;
        for v in keep {
            m |= bit(self.require(v)?);
        }
        Self::from_masks(&self.vertices, self.facets.iter().map(|&f| f & m).collect())
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets().iter().all(|s| other.contains_simplex(s))
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut all = self.facets();
        all.extend(other.facets());
        Self::from_simplices(&all).expect("union of non-empty complexes")
    }

    /// Applies a label bijection. Labels missing from `map` are kept.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<SimplicialComplex, ComplexError> {
        let facets: Vec<Vec<String>> = self
            .facets()
            .into_iter()
            .map(|s| s.0.iter().map(|v| map.get(v).unwrap_or(v).0.clone()).collect())
            .collect();
        Self::from_facets(facets)
    }

    /// Searches for a vertex bijection inducing a bijection of facets.
    pub fn isomorphism(&self, other: &SimplicialComplex) -> Option<BTreeMap<Vertex, Vertex>> {
        find_isomorphism(self, other).map(|perm| {
            perm.iter()
                .enumerate()
                .map(|(i, &j)| (self.vertices[i].clone(), other.vertices[j].clone()))
                .collect()
        })
    }

    pub fn is_isomorphic_to(&self, other: &SimplicialComplex) -> bool {
        find_isomorphism(self, other).is_some()
    }

    /// Canonical facet-list text: one facet per line, labels separated by
    /// single spaces, facets in lexicographic order.
    pub fn to_facet_text(&self) -> String {
        let mut out = String::new();
        for f in &self.facets {
            let labels: Vec<&str> = bits(*f).map(|i| self.vertices[i].as_str()).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_facet_text(text: &str) -> Result<SimplicialComplex, ComplexError> {
        let mut simplices = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| ComplexError::Parse { line: n + 1, message };
            let tokens: Vec<&str> = line.split(' ').collect();
            if tokens.iter().any(|t| t.is_empty()) {
                return Err(parse_err("labels must be separated by single spaces".into()));
            }
            let s = Simplex::new(tokens).map_err(|e| parse_err(e.to_string()))?;
            simplices.push(s);
        }
        Self::from_simplices(&simplices)
    }

    // ---- mask level access for the search modules ----

    pub(crate) fn masks(&self) -> &[Mask] {
        &self.facets
    }

    pub(crate) fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub(crate) fn require(&self, v: &Vertex) -> Result<usize, ComplexError> {
        self.index_of(v).ok_or_else(|| ComplexError::UnknownVertex(v.to_string()))
    }

    /// Mask of a simplex whose labels all belong to this complex.
    pub(crate) fn mask_of(&self, s: &Simplex) -> Option<Mask> {
        s.0.iter().try_fold(0, |acc, v| self.index_of(v).map(|i| acc | bit(i)))
    }

    pub(crate) fn has_mask(&self, m: Mask) -> bool {
        m != 0 && self.facets.iter().any(|&f| m & !f == 0)
    }

    pub(crate) fn simplex_of(&self, m: Mask) -> Simplex {
        Simplex(bits(m).map(|i| self.vertices[i].clone()).collect())
    }

    pub(crate) fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub(crate) fn simplex_masks_of_dimension(&self, d: usize) -> Vec<Mask> {
        let mut out: Vec<Mask> = all_simplex_masks(&self.facets)
            .into_iter()
            .filter(|m| m.count_ones() as usize == d + 1)
            .collect();
        out.sort_by(|a, b| seq_cmp(*a, *b));
        out
    }

    /// Re-expresses the facets of `sub` as masks over this complex's indices.
    pub(crate) fn masks_of_subcomplex(&self, sub: &SimplicialComplex) -> Result<Vec<Mask>, ComplexError> {
        sub.facets()
            .iter()
            .map(|s| match self.mask_of(s) {
                Some(m) if self.has_mask(m) => Ok(m),
                _ => Err(ComplexError::NotASimplex(s.to_string())),
            })
            .collect()
    }

    /// Subcomplex given by masks over this complex's indices.
    pub(crate) fn sub_from_masks(&self, masks: Vec<Mask>) -> Result<SimplicialComplex, ComplexError> {
        Self::from_masks(&self.vertices, masks)
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.facets().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let facets = Vec::<Simplex>::deserialize(deserializer)?;
        SimplicialComplex::from_simplices(&facets).map_err(serde::de::Error::custom)
    }
}

fn vertex_invariant(facets: &[Mask], v: usize) -> Vec<u32> {
    let mut sizes: Vec<u32> = facets.iter().filter(|&&f| f & bit(v) != 0).map(|f| f.count_ones()).collect();
    sizes.sort_unstable();
    let nbrs = facets.iter().filter(|&&f| f & bit(v) != 0).fold(0, |a, f| a | f) & !bit(v);
    sizes.push(u32::MAX);
    sizes.push(nbrs.count_ones());
    sizes
}

/// Backtracking isomorphism search with vertex invariant pruning.
fn find_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Vec<usize>> {
    let n = a.vertices.len();
    if n != b.vertices.len() || a.facets.len() != b.facets.len() || a.f_vector() != b.f_vector() {
        return None;
    }
    let inv_a: Vec<Vec<u32>> = (0..n).map(|v| vertex_invariant(&a.facets, v)).collect();
    let inv_b: Vec<Vec<u32>> = (0..n).map(|v| vertex_invariant(&b.facets, v)).collect();
    let mut ia = inv_a.clone();
    let mut ib = inv_b.clone();
    ia.sort();
    ib.sort();
    if ia != ib {
        return None;
    }
    let b_facets: HashSet<Mask> = b.facets.iter().copied().collect();
    // Assign vertices in order of decreasing facet involvement.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| inv_a[y].len().cmp(&inv_a[x].len()).then(x.cmp(&y)));
    let position: Vec<usize> = {
        let mut p = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            p[v] = k;
        }
        p
    };
    // Facets of `a` become checkable once their last vertex (in `order`) is assigned.
    let mut checks: Vec<Vec<Mask>> = vec![Vec::new(); n];
    for &f in &a.facets {
        let last = bits(f).map(|v| position[v]).max().expect("non-empty facet");
        checks[last].push(f);
    }
    let mut image = vec![usize::MAX; n];
    let mut used: Mask = 0;

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        k: usize,
        order: &[usize],
        checks: &[Vec<Mask>],
        inv_a: &[Vec<u32>],
        inv_b: &[Vec<u32>],
        b_facets: &HashSet<Mask>,
        image: &mut Vec<usize>,
        used: &mut Mask,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..inv_b.len() {
            if *used & bit(w) != 0 || inv_a[v] != inv_b[w] {
                continue;
            }
            image[v] = w;
            *used |= bit(w);
            let ok = checks[k].iter().all(|&f| {
                let img = bits(f).fold(0, |acc, u| acc | bit(image[u]));
                b_facets.contains(&img)
            });
            if ok && recurse(k + 1, order, checks, inv_a, inv_b, b_facets, image, used) {
                return true;
            }
            *used &= !bit(w);
            image[v] = usize::MAX;
        }
        false
    }

    recurse(0, &order, &checks, &inv_a, &inv_b, &b_facets, &mut image, &mut used).then_some(image)
}
