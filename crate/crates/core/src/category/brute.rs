//! Exhaustive two-cover check for complexes with at most seven facets.
//!
//! Every pair of facet sets whose union is all facets is tried. A facet set
//! `T` is accepted if `gen(T)` plus some set of extra edges that closes no
//! cycle through its components is strongly collapsible, tested on a freshly
//! built [`SimplicialComplex`].

use std::collections::HashMap;

use super::{verify_cover, CategoryError, CoverCertificate, CoverMode, CoverVerdict};
use crate::complex::{Simplex, SimplicialComplex};
use crate::strong::is_strongly_collapsible;

pub const MAX_BRUTE_FORCE_FACETS: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceResult {
    Cover(CoverCertificate),
    Impossible,
}

struct Union {
    parent: HashMap<String, String>,
}

impl Union {
    fn find(&mut self, x: &str) -> String {
        let p = self.parent.get(x).cloned().unwrap_or_else(|| x.to_string());
        if p == x {
            return p;
        }
        let r = self.find(&p);
        self.parent.insert(x.to_string(), r.clone());
        r
    }

    fn join(&mut self, a: &str, b: &str) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent.insert(ra, rb);
        true
    }
}

fn piece_for(k: &SimplicialComplex, facets: &[Simplex], chosen: &[Simplex]) -> Option<SimplicialComplex> {
    if chosen.is_empty() {
        return SimplicialComplex::from_simplices(&[Simplex::new([k.vertices()[0].as_str()]).ok()?]).ok();
    }
    let gen = k.generated_subcomplex(chosen).ok()?;
    let candidates: Vec<Simplex> = k
        .simplices_of_dimension(1)
        .into_iter()
        .filter(|e| !gen.contains_simplex(e) && !facets.contains(e))
        .collect();
    let mut found = None;
    extend(&gen, chosen, &candidates, 0, &mut Vec::new(), &mut found);
    found
}

fn extend(
    gen: &SimplicialComplex,
    chosen: &[Simplex],
    candidates: &[Simplex],
    i: usize,
    extra: &mut Vec<Simplex>,
    found: &mut Option<SimplicialComplex>,
) {
    if found.is_some() {
        return;
    }
    if i == candidates.len() {
        let mut all = chosen.to_vec();
        all.extend(extra.iter().cloned());
        let piece = SimplicialComplex::from_simplices(&all).expect("faces of the ambient complex");
        if is_strongly_collapsible(&piece) {
            *found = Some(piece);
        }
        return;
    }
    extend(gen, chosen, candidates, i + 1, extra, found);
    extra.push(candidates[i].clone());
    let mut u = Union { parent: HashMap::new() };
    let mut acyclic = true;
    for f in gen.facets() {
        let vs = f.vertices();
        for v in &vs[1..] {
            u.join(vs[0].as_str(), v.as_str());
        }
    }
    for e in extra.iter() {
        let vs = e.vertices();
        acyclic &= u.join(vs[0].as_str(), vs[1].as_str());
    }
    if acyclic {
        extend(gen, chosen, candidates, i + 1, extra, found);
    }
    extra.pop();
}

/// Decides two-coverability by enumeration.
pub fn brute_force_two_cover(k: &SimplicialComplex) -> Result<BruteForceResult, CategoryError> {
    if !k.is_pure() || k.dimension() > 2 {
        return Err(CategoryError::Precondition("needs a pure complex of dimension at most 2".into()));
    }
    let facets = k.facets();
    let n = facets.len();
    if n > MAX_BRUTE_FORCE_FACETS {
        return Err(CategoryError::Precondition(format!(
            "brute force handles at most {MAX_BRUTE_FORCE_FACETS} facets"
        )));
    }
    let subset = |s: usize| -> Vec<Simplex> { (0..n).filter(|i| s >> i & 1 == 1).map(|i| facets[i].clone()).collect() };
    let mut memo: HashMap<usize, Option<SimplicialComplex>> = HashMap::new();
    let full = (1usize << n) - 1;
    for a in 0..=full {
        for b in 0..=full {
            if a | b != full {
                continue;
            }
            let pa = memo.entry(a).or_insert_with(|| piece_for(k, &facets, &subset(a))).clone();
            let Some(pa) = pa else { continue };
            let pb = memo.entry(b).or_insert_with(|| piece_for(k, &facets, &subset(b))).clone();
            let Some(pb) = pb else { continue };
            return match verify_cover(k, &[pa, pb], CoverMode::StronglyCollapsible, 0)? {
                CoverVerdict::Valid(c) => Ok(BruteForceResult::Cover(c)),
                other => unreachable!("enumerated cover failed verification: {other:?}"),
            };
        }
    }
    Ok(BruteForceResult::Impossible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn small_cases() {
        assert!(matches!(
            brute_force_two_cover(&fixtures::cycle(&["a", "b", "c"])).unwrap(),
            BruteForceResult::Cover(_)
        ));
        assert_eq!(brute_force_two_cover(&fixtures::two_cycles()).unwrap(), BruteForceResult::Impossible);
        assert!(brute_force_two_cover(&fixtures::octahedron()).is_err());
    }
}
