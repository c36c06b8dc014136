#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scat_core::contiguity::{AssignmentTable, SimplicialMap};
use scat_core::{Simplex, SimplicialComplex};

const LABELS: [&str; 8] = ["0", "1", "2", "3", "4", "5", "6", "7"];

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every pure 2-complex with at most `max_facets` triangles on at most six
/// vertices, one per isomorphism class. Classes are found by minimising the
/// triangle bitmask over all 720 vertex permutations.
pub fn pure_two_complexes(max_facets: usize) -> Vec<SimplicialComplex> {
    let mut triangles = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                triangles.push([a, b, c]);
            }
        }
    }
    let index = |mut t: [usize; 3]| {
        t.sort();
        triangles.iter().position(|x| *x == t).unwrap()
    };
    let images: Vec<Vec<usize>> = permutations(6)
        .iter()
        .map(|p| triangles.iter().map(|t| index([p[t[0]], p[t[1]], p[t[2]]])).collect())
        .collect();
    let canonical = |set: u32| {
        images
            .iter()
            .map(|img| (0..20).filter(|i| set >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << img[i]))
            .min()
            .unwrap()
    };
    // Grow canonical representatives one triangle at a time.
    let mut seen: HashSet<u32> = HashSet::new();
    let mut layer: Vec<u32> = vec![0];
    let mut out = Vec::new();
    for _ in 0..max_facets {
        let mut next = Vec::new();
        for &set in &layer {
            for t in 0..20 {
                if set >> t & 1 == 0 {
                    let c = canonical(set | 1 << t);
                    if seen.insert(c) {
                        next.push(c);
                    }
                }
            }
        }
        next.sort();
        for &set in &next {
            let facets = (0..20)
                .filter(|i| set >> i & 1 == 1)
                .map(|i| triangles[i].iter().map(|&v| LABELS[v]).collect::<Vec<_>>());
            out.push(SimplicialComplex::from_facets(facets).unwrap());
        }
        layer = next;
    }
    out
}

/// A random complex on up to `max_vertices` vertices with up to `max_facets`
/// facets of dimension at most `max_dim`.
pub fn random_complex(rng: &mut ChaCha8Rng, max_vertices: usize, max_facets: usize, max_dim: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let count = rng.gen_range(1..=max_facets);
    let facets = (0..count).map(|_| {
        let size = rng.gen_range(1..=(max_dim + 1).min(n));
        let mut vs: Vec<usize> = (0..n).collect();
        for i in 0..size {
            let j = rng.gen_range(i..n);
            vs.swap(i, j);
        }
        vs[..size].iter().map(|&v| LABELS[v]).collect::<Vec<_>>()
    });
    SimplicialComplex::from_facets(facets).unwrap()
}

pub fn random_corpus(seed: u64, count: usize, max_vertices: usize, max_facets: usize, max_dim: usize) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_complex(&mut rng, max_vertices, max_facets, max_dim)).collect()
}

/// A random simplicial map `source -> target`. Images are drawn uniformly and
/// then merged along facets whose image is not a simplex; a constant map is
/// the fallback if merging does not settle.
pub fn random_map(rng: &mut ChaCha8Rng, source: &SimplicialComplex, target: &SimplicialComplex) -> SimplicialMap {
    let ws = target.vertices();
    let mut table: AssignmentTable =
        source.vertices().iter().map(|v| (v.clone(), ws[rng.gen_range(0..ws.len())].clone())).collect();
    for _ in 0..1000 {
        let bad = source.facets().into_iter().find(|f| {
            let img: std::collections::BTreeSet<&str> = f.vertices().iter().map(|v| table[v].as_str()).collect();
            let img = Simplex::new(img).unwrap();
            !target.contains_simplex(&img)
        });
        let Some(f) = bad else {
            return SimplicialMap::new(source, target, &table).unwrap();
        };
        let vs = f.vertices();
        let i = rng.gen_range(0..vs.len());
        let j = (0..vs.len()).find(|&j| table[&vs[j]] != table[&vs[i]]).unwrap();
        let w = table[&vs[i]].clone();
        table.insert(vs[j].clone(), w);
    }
    SimplicialMap::constant(source, target, &ws[0]).unwrap()
}
