use scat_core::reconstruct::{audit, search_k, CandidatePool, ConstraintSet, SearchStatus, SurfaceConstraint};
use scat_core::{fixtures, FVector, Simplex, SimplicialComplex, Vertex};

fn tri(s: &str) -> Simplex {
    Simplex::new(s.chars().map(|c| c.to_string())).unwrap()
}

const BAND: [&str; 6] = ["abd", "bde", "bce", "cef", "acf", "adf"];

/// An 8-vertex sphere, two triangle caps joined by an antiprism band, with
/// both cone points identified to `p`.
fn pinched_sphere() -> SimplicialComplex {
    let caps = ["pab", "pbc", "pac", "pde", "pef", "pdf"];
    SimplicialComplex::from_simplices(&BAND.iter().chain(&caps).map(|t| tri(t)).collect::<Vec<_>>()).unwrap()
}

fn pinched_constraints() -> ConstraintSet {
    ConstraintSet {
        vertex_labels: ["p", "a", "b", "c", "d", "e", "f"].iter().map(|v| Vertex::new(*v).unwrap()).collect(),
        f_vector_target: FVector(vec![7, 18, 12]),
        required_triangles: BAND.iter().map(|t| tri(t)).collect(),
        forbidden_triangles: vec![],
        required_edges: ["ab", "bc", "ac", "de", "ef", "df", "ad", "bd", "be", "ce", "cf", "af"].iter().map(|e| tri(e)).collect(),
        surface: Some(SurfaceConstraint {
            pinch_vertex: Vertex::new("p").unwrap(),
            pinch_cycles: 2,
            unfolded_euler_characteristic: 2,
        }),
        h1_rank: Some(1),
        pool: CandidatePool::All,
    }
}

#[test]
fn pinched_sphere_is_the_unique_solution() {
    let c = pinched_constraints();
    let out = search_k(&c, 10, 1_000_000).unwrap();
    assert_eq!(out.status, SearchStatus::Exhausted);
    assert_eq!(out.solutions.len(), 1);
    assert_eq!(out.solutions[0], pinched_sphere());
    assert!(audit(&out.solutions[0], &c).passed());
}

#[test]
fn search_is_deterministic_and_budgeted() {
    let c = pinched_constraints();
    let a = search_k(&c, 10, 1_000_000).unwrap();
    let b = search_k(&c, 10, 1_000_000).unwrap();
    assert_eq!(a, b);
    let starved = search_k(&c, 10, 3).unwrap();
    assert!(starved.is_indeterminate());
    assert!(starved.solutions.is_empty());
}

#[test]
fn audit_rejects_a_wrong_complex() {
    let c = pinched_constraints();
    let wrong: SimplicialComplex = fixtures::boundary_of_simplex(&["p", "a", "b", "c"]);
    let report = audit(&wrong, &c);
    assert!(!report.passed());
    assert!(report.checks.iter().any(|x| x.name == "f_vector" && !x.passed));
}
