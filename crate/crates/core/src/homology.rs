//! First homology with Z/2 coefficients.
//!
//! Used as an obstruction: a strongly collapsible complex is contractible, so
//! its first homology vanishes. Simplices are indexed in lexicographic order
//! so bases and generators are deterministic.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{bit, bits, seq_cmp, Mask, Simplex, SimplicialComplex};
use crate::gf2::{BitRow, BitVec, Gf2Basis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("{0} is not an edge of the complex")]
    NotAnEdge(String),
    #[error("{0} is not a triangle of the complex")]
    NotATriangle(String),
    #[error("the edge set is not a cycle")]
    NotACycle,
}

/// Mod 2 boundary matrix from dimension `d` to `d - 1`.
#[derive(Debug, Clone)]
pub struct BoundaryMatrix {
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    columns: Vec<BitVec>,
}

impl BoundaryMatrix {
    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    pub fn rank(&self) -> usize {
        let mut basis = Gf2Basis::new(self.rows.len());
        for c in &self.columns {
            basis.insert(c.clone());
        }
        basis.rank()
    }

    /// Whether `lower ∘ self` vanishes, with `lower` the boundary one
    /// dimension down.
    pub fn composes_to_zero(&self, lower: &BoundaryMatrix) -> bool {
        assert_eq!(lower.cols, self.rows);
        self.columns.iter().all(|c| {
            let mut acc = BitVec::zeros(lower.rows.len());
            for r in c.ones() {
                acc.xor_assign(&lower.columns[r]);
            }
            acc.is_zero()
        })
    }
}

/// Boundary matrix `∂_d` of `k` (for `d >= 1`).
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> BoundaryMatrix {
    assert!(d >= 1);
    let rows = k.simplex_masks_of_dimension(d - 1);
    let cols = k.simplex_masks_of_dimension(d);
    let row_index: HashMap<Mask, usize> = rows.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let columns = cols
        .iter()
        .map(|&c| {
            let mut v = BitVec::zeros(rows.len());
            for i in bits(c) {
                v.set(row_index[&(c & !bit(i))]);
            }
            v
        })
        .collect();
    BoundaryMatrix {
        rows: rows.iter().map(|&m| k.simplex_of(m)).collect(),
        cols: cols.iter().map(|&m| k.simplex_of(m)).collect(),
        columns,
    }
}

/// Edges of a mask complex, lexicographically ordered, with a lookup table.
pub(crate) struct EdgeIndex {
    pub edges: Vec<Mask>,
    pub lookup: HashMap<Mask, usize>,
}

impl EdgeIndex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let edges = k.simplex_masks_of_dimension(1);
        let lookup = edges.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        EdgeIndex { edges, lookup }
    }

    pub fn boundary_of_triangle(&self, t: Mask) -> impl Iterator<Item = usize> + '_ {
        bits(t).map(move |i| self.lookup[&(t & !bit(i))])
    }
}

fn triangle_masks(k: &SimplicialComplex) -> Vec<Mask> {
    let mut t = k.simplex_masks_of_dimension(2);
    t.sort_by(|a, b| seq_cmp(*a, *b));
    t
}

fn component_count(vertices: Mask, edges: &[Mask]) -> usize {
    let mut parent: HashMap<usize, usize> = bits(vertices).map(|v| (v, v)).collect();
    fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    let mut count = parent.len();
    for &e in edges {
        let mut it = bits(e);
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
            count -= 1;
        }
    }
    count
}

fn boundary_basis(k: &SimplicialComplex, index: &EdgeIndex) -> Gf2Basis<BitVec> {
    let mut basis = Gf2Basis::new(index.edges.len());
    for t in triangle_masks(k) {
        let mut v = BitVec::zeros(index.edges.len());
        for e in index.boundary_of_triangle(t) {
            v.set(e);
        }
        basis.insert(v);
    }
    basis
}

/// `dim ker ∂₁ − rank ∂₂` over Z/2.
pub fn h1_rank_mod2(k: &SimplicialComplex) -> usize {
    let index = EdgeIndex::new(k);
    let vertices = (0..k.vertex_count()).fold(0, |a, i| a | bit(i));
    let cycles = index.edges.len() + component_count(vertices, &index.edges) - k.vertex_count();
    cycles - boundary_basis(k, &index).rank()
}

/// Cycles whose classes form a basis of `H₁(k; Z/2)`.
pub fn h1_generators_mod2(k: &SimplicialComplex) -> Vec<Vec<Simplex>> {
    let index = EdgeIndex::new(k);
    let n = k.vertex_count();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (ei, &e) in index.edges.iter().enumerate() {
        let mut it = bits(e);
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        adjacency[a].push((b, ei));
        adjacency[b].push((a, ei));
    }
    // Breadth-first spanning forest rooted at the smallest vertex of each component.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; index.edges.len()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, ei) in &adjacency[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((x, ei));
                    tree[ei] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut basis = boundary_basis(k, &index);
    let mut generators = Vec::new();
    for (ei, &e) in index.edges.iter().enumerate() {
        if tree[ei] {
            continue;
        }
        let mut z = BitVec::zeros(index.edges.len());
        z.set(ei);
        let mut it = bits(e);
        let (mut a, mut b) = (it.next().unwrap(), it.next().unwrap());
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let (p, pe) = parent[a].expect("non-root vertex");
            z.flip(pe);
            a = p;
        }
        if basis.insert(z.clone()) {
            generators.push(z.ones().map(|i| k.simplex_of(index.edges[i])).collect());
        }
    }
    generators
}

/// Whether the 1-cycle `z` is a sum of boundaries of triangles in `pool`.
pub fn cycle_is_killable(z: &[Simplex], pool: &[Simplex], k: &SimplicialComplex) -> Result<bool, HomologyError> {
    let index = EdgeIndex::new(k);
    let mut zv = BitVec::zeros(index.edges.len());
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for e in z {
        let i = k
            .mask_of(e)
            .and_then(|m| index.lookup.get(&m).copied())
            .ok_or_else(|| HomologyError::NotAnEdge(e.to_string()))?;
        zv.flip(i);
        for v in bits(index.edges[i]) {
            *degree.entry(v).or_default() += 1;
        }
    }
    if degree.values().any(|d| d % 2 == 1) {
        return Err(HomologyError::NotACycle);
    }
    let mut basis = Gf2Basis::new(index.edges.len());
    for t in pool {
        let m = k
            .mask_of(t)
            .filter(|&m| m.count_ones() == 3 && k.has_mask(m))
            .ok_or_else(|| HomologyError::NotATriangle(t.to_string()))?;
        let mut v = BitVec::zeros(index.edges.len());
        for e in index.boundary_of_triangle(m) {
            v.set(e);
        }
        basis.insert(v);
    }
    Ok(basis.contains(&zv))
}
