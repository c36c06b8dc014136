//! Randomized greedy search for small covers.
//!
//! Pieces are grown facet by facet over the facet adjacency graph, keeping a
//! facet only if the grown piece stays strongly collapsible. The first
//! attempts seed the first piece with a closed vertex star, which is a cone
//! and hence strongly collapsible, both as is and grown. In categorical
//! mode the last piece is whatever remains uncovered and is tested for
//! categoricity. Every returned cover has passed [`verify_cover`]; `None`
//! means the attempt budget ran out and says nothing about existence.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{verify_cover, CategoryError, CoverCertificate, CoverMode, CoverVerdict};
use crate::complex::{bit, union_mask, Mask, SimplicialComplex};
use crate::contiguity::DEFAULT_STATE_CAP;
use crate::strong::is_sc_masks;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Randomized attempts made after the vertex-star attempts.
    pub attempts: usize,
    pub seed: u64,
    /// State cap for each categorical test of a leftover piece.
    pub state_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { attempts: 2000, seed: 0, state_cap: DEFAULT_STATE_CAP }
    }
}

/// Grows `piece` greedily. Candidates touching the piece are tried with
/// uncovered facets first, then by overlap, ties broken by `keys`.
fn grow(piece: &mut Vec<usize>, facets: &[Mask], covered: &[bool], keys: &[u64]) {
    loop {
        let vs = union_mask(&piece.iter().map(|&i| facets[i]).collect::<Vec<_>>());
        let mut candidates: Vec<usize> =
            (0..facets.len()).filter(|i| !piece.contains(i) && facets[*i] & vs != 0).collect();
        candidates.sort_by_key(|&i| (covered[i], std::cmp::Reverse((facets[i] & vs).count_ones()), keys[i]));
        let mut grown = false;
        for c in candidates {
            let mut trial: Vec<Mask> = piece.iter().map(|&i| facets[i]).collect();
            trial.push(facets[c]);
            if is_sc_masks(&crate::complex::maximal_masks(trial)) {
                piece.push(c);
                grown = true;
                break;
            }
        }
        if !grown {
            return;
        }
    }
}

/// Looks for a verified cover of `k` by `pieces` subcomplexes of the given mode.
pub fn search_cover(
    k: &SimplicialComplex,
    pieces: usize,
    mode: CoverMode,
    options: &SearchOptions,
) -> Result<Option<CoverCertificate>, CategoryError> {
    if pieces == 0 {
        return Err(CategoryError::Precondition("at least one piece is required".into()));
    }
    let facets = k.masks().to_vec();
    let n = facets.len();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut tried_leftovers = std::collections::HashSet::new();
    // Vertices by decreasing star size.
    let mut centres: Vec<usize> = (0..k.vertex_count()).collect();
    centres.sort_by_key(|&v| std::cmp::Reverse(facets.iter().filter(|&&f| f & bit(v) != 0).count()));
    let star_attempts = 2 * centres.len();
    for attempt in 0..options.attempts + star_attempts {
        let keys: Vec<u64> = if attempt <= star_attempts {
            (0..n as u64).collect()
        } else {
            (0..n).map(|_| rng.gen()).collect()
        };
        let mut seeds: Vec<usize> = (0..n).collect();
        if attempt > star_attempts {
            seeds.shuffle(&mut rng);
        }
        let mut covered = vec![false; n];
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        let greedy_pieces = match mode {
            CoverMode::StronglyCollapsible => pieces,
            CoverMode::Categorical => pieces - 1,
        };
        for p in 0..greedy_pieces {
            let Some(&seed) = seeds.iter().find(|&&i| !covered[i]) else { break };
            let mut piece = vec![seed];
            if p == 0 && attempt < star_attempts {
                let v = centres[attempt / 2];
                piece = (0..n).filter(|&i| facets[i] & bit(v) != 0).collect();
                if attempt % 2 == 0 {
                    for &i in &piece {
                        covered[i] = true;
                    }
                    chosen.push(piece);
                    continue;
                }
            }
            grow(&mut piece, &facets, &covered, &keys);
            for &i in &piece {
                covered[i] = true;
            }
            chosen.push(piece);
        }
        let leftover: Vec<usize> = (0..n).filter(|&i| !covered[i]).collect();
        let mut candidate: Vec<Vec<usize>> = chosen;
        if !leftover.is_empty() {
            if mode == CoverMode::StronglyCollapsible || !tried_leftovers.insert(leftover.clone()) {
                continue;
            }
            candidate.push(leftover);
        }
        let complexes = candidate
            .iter()
            .map(|p| k.sub_from_masks(p.iter().map(|&i| facets[i]).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        if let CoverVerdict::Valid(cert) = verify_cover(k, &complexes, mode, options.state_cap)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cycle_needs_two_pieces() {
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        let opts = SearchOptions { attempts: 20, ..Default::default() };
        assert!(search_cover(&c3, 1, CoverMode::StronglyCollapsible, &opts).unwrap().is_none());
        let cert = search_cover(&c3, 2, CoverMode::StronglyCollapsible, &opts).unwrap().unwrap();
        assert!(cert.verify());
        assert_eq!(cert.cover.pieces.len(), 2);
        assert!(cert.cover.pieces.iter().all(|p| p.facet_count() <= 2));
    }

    #[test]
    fn sphere_and_octahedron() {
        let opts = SearchOptions { attempts: 50, ..Default::default() };
        let s = fixtures::boundary_of_simplex(&["a", "b", "c", "d"]);
        assert!(search_cover(&s, 2, CoverMode::StronglyCollapsible, &opts).unwrap().unwrap().verify());
        let o = fixtures::octahedron();
        assert!(search_cover(&o, 2, CoverMode::StronglyCollapsible, &opts).unwrap().unwrap().verify());
        let c = search_cover(&o, 2, CoverMode::Categorical, &opts).unwrap().unwrap();
        assert!(c.verify());
    }

    #[test]
    fn zero_pieces_rejected() {
        let t = fixtures::simplex(&["a", "b"]);
        assert!(search_cover(&t, 0, CoverMode::Categorical, &SearchOptions::default()).is_err());
    }
}
