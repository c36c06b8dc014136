//! Covers by categorical and strongly collapsible subcomplexes.
//!
//! `scat K` is the least `k` such that `K` is covered by `k + 1` categorical
//! subcomplexes, `gscat K` the same with strongly collapsible ones. Upper
//! bounds come from verified covers ([`verify_cover`], [`search_cover`]);
//! the lower bound `gscat K >= 2` comes from the exact two-cover decision in
//! [`prover`], cross-checked on small inputs by [`brute`].

pub mod brute;
pub mod prover;
pub mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::contiguity::{is_categorical, CategoricalOutcome, CategoricalWitness, ContiguityError};
use crate::strong::{is_strongly_collapsible, strong_collapse_witness, CollapseSequence};

pub use brute::{brute_force_two_cover, BruteForceResult};
pub use prover::{two_cover_prover, ImpossibilityCertificate, ProverOptions, TwoCoverDecision};
pub use search::{search_cover, SearchOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Contiguity(#[from] ContiguityError),
    #[error("piece {0} is not a subcomplex of the ambient complex")]
    NotSubcomplex(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    Categorical,
    StronglyCollapsible,
}

/// Subcomplexes whose union is the ambient complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub ambient: SimplicialComplex,
    pub pieces: Vec<SimplicialComplex>,
    pub mode: CoverMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieceWitness {
    Collapse { collapse: CollapseSequence },
    Categorical { witness: CategoricalWitness },
}

/// A cover together with one replayable witness per piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub cover: Cover,
    pub witnesses: Vec<PieceWitness>,
}

impl CoverCertificate {
    /// Re-checks the union and replays every witness.
    pub fn verify(&self) -> bool {
        let cover = &self.cover;
        if cover.pieces.len() != self.witnesses.len() || !covers_ambient(&cover.ambient, &cover.pieces) {
            return false;
        }
        cover.pieces.iter().zip(&self.witnesses).all(|(piece, w)| match (cover.mode, w) {
            (_, PieceWitness::Collapse { collapse }) => {
                collapse.start == *piece && collapse.end.vertex_count() == 1 && collapse.is_valid()
            }
            (CoverMode::Categorical, PieceWitness::Categorical { witness }) => {
                witness.verify(piece, &cover.ambient)
            }
            (CoverMode::StronglyCollapsible, PieceWitness::Categorical { .. }) => false,
        })
    }

    /// Number of pieces minus one: the category bound this cover certifies.
    pub fn bound(&self) -> usize {
        self.cover.pieces.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverVerdict {
    Valid(CoverCertificate),
    Invalid(String),
    /// A categorical test hit its state cap.
    Indeterminate(String),
}

fn covers_ambient(k: &SimplicialComplex, pieces: &[SimplicialComplex]) -> bool {
    pieces.iter().all(|p| p.is_subcomplex_of(k))
        && k.facets().iter().all(|f| pieces.iter().any(|p| p.contains_simplex(f)))
}

/// Checks that `pieces` cover `k` and that each piece passes the test for
/// `mode`, assembling per-piece witnesses.
pub fn verify_cover(
    k: &SimplicialComplex,
    pieces: &[SimplicialComplex],
    mode: CoverMode,
    state_cap: usize,
) -> Result<CoverVerdict, CategoryError> {
    if let Some(i) = pieces.iter().position(|p| !p.is_subcomplex_of(k)) {
        return Err(CategoryError::NotSubcomplex(i));
    }
    if pieces.is_empty() {
        return Ok(CoverVerdict::Invalid("no pieces".into()));
    }
    if let Some(f) = k.facets().into_iter().find(|f| !pieces.iter().any(|p| p.contains_simplex(f))) {
        return Ok(CoverVerdict::Invalid(format!("facet {f} is not covered")));
    }
    let mut witnesses = Vec::with_capacity(pieces.len());
    for (i, piece) in pieces.iter().enumerate() {
        if let Some(collapse) = strong_collapse_witness(piece) {
            witnesses.push(PieceWitness::Collapse { collapse });
            continue;
        }
        match mode {
            CoverMode::StronglyCollapsible => {
                return Ok(CoverVerdict::Invalid(format!("piece {i} is not strongly collapsible")));
            }
            CoverMode::Categorical => match is_categorical(piece, k, state_cap)? {
                CategoricalOutcome::Categorical(witness) => witnesses.push(PieceWitness::Categorical { witness }),
                CategoricalOutcome::NotCategorical { explored } => {
                    return Ok(CoverVerdict::Invalid(format!(
                        "piece {i} is not categorical ({explored} maps explored)"
                    )));
                }
                CategoricalOutcome::Unknown { explored } => {
                    return Ok(CoverVerdict::Indeterminate(format!(
                        "piece {i}: state cap reached after {explored} maps"
                    )));
                }
            },
        }
    }
    Ok(CoverVerdict::Valid(CoverCertificate {
        cover: Cover { ambient: k.clone(), pieces: pieces.to_vec(), mode },
        witnesses,
    }))
}

/// `scat K = 0` exactly when `K` is strongly collapsible.
pub fn scat_is_zero(k: &SimplicialComplex) -> bool {
    is_strongly_collapsible(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;
    use crate::contiguity::DEFAULT_STATE_CAP;
    use crate::fixtures;

    #[test]
    fn single_simplex_cover() {
        let t = fixtures::simplex(&["a", "b", "c"]);
        match verify_cover(&t, std::slice::from_ref(&t), CoverMode::StronglyCollapsible, 10).unwrap() {
            CoverVerdict::Valid(c) => {
                assert!(c.verify());
                assert_eq!(c.bound(), 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sphere_halves() {
        let s = fixtures::boundary_of_simplex(&["a", "b", "c", "d"]);
        let tri = |x: [&str; 3]| Simplex::new(x).unwrap();
        let top = s.generated_subcomplex(&[tri(["a", "b", "c"]), tri(["a", "b", "d"])]).unwrap();
        let bottom = s.generated_subcomplex(&[tri(["a", "c", "d"]), tri(["b", "c", "d"])]).unwrap();
        let verdict = verify_cover(&s, &[top.clone(), bottom], CoverMode::StronglyCollapsible, 10).unwrap();
        assert!(matches!(verdict, CoverVerdict::Valid(ref c) if c.verify()));
        let verdict = verify_cover(&s, &[top], CoverMode::StronglyCollapsible, 10).unwrap();
        assert!(matches!(verdict, CoverVerdict::Invalid(_)));
    }

    #[test]
    fn categorical_but_not_geometric() {
        // The boundary circle of a triangle is categorical in the filled triangle.
        let t = fixtures::simplex(&["a", "b", "c"]);
        let c3 = fixtures::cycle(&["a", "b", "c"]);
        let v = verify_cover(&t, &[t.clone(), c3.clone()], CoverMode::Categorical, DEFAULT_STATE_CAP).unwrap();
        assert!(matches!(v, CoverVerdict::Valid(ref c) if c.verify()));
        let v = verify_cover(&t, &[t.clone(), c3], CoverMode::StronglyCollapsible, DEFAULT_STATE_CAP).unwrap();
        assert!(matches!(v, CoverVerdict::Invalid(_)));
        let stray = fixtures::simplex(&["a", "z"]);
        assert_eq!(
            verify_cover(&t, &[stray], CoverMode::Categorical, 10),
            Err(CategoryError::NotSubcomplex(0))
        );
    }

    #[test]
    fn scat_zero() {
        assert!(scat_is_zero(&fixtures::simplex(&["a", "b", "c"])));
        assert!(!scat_is_zero(&fixtures::cycle(&["a", "b", "c"])));
    }
}
