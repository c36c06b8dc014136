//! Small named complexes used by tests, examples and the CLI.

use crate::complex::SimplicialComplex;

/// The full simplex on `labels`.
pub fn simplex(labels: &[&str]) -> SimplicialComplex {
    SimplicialComplex::from_facets([labels.to_vec()]).expect("valid labels")
}

/// The cycle `labels[0] - labels[1] - ... - labels[0]` (at least 3 labels).
pub fn cycle(labels: &[&str]) -> SimplicialComplex {
    assert!(labels.len() >= 3);
    let edges = (0..labels.len()).map(|i| vec![labels[i], labels[(i + 1) % labels.len()]]);
    SimplicialComplex::from_facets(edges).expect("valid labels")
}

/// All proper faces of the simplex on `labels`.
pub fn boundary_of_simplex(labels: &[&str]) -> SimplicialComplex {
    assert!(labels.len() >= 2);
    let facets = (0..labels.len()).map(|skip| {
        labels.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, l)| *l).collect::<Vec<_>>()
    });
    SimplicialComplex::from_facets(facets).expect("valid labels")
}

/// The octahedral 2-sphere on poles `n`, `s` and equator `1 2 3 4`.
pub fn octahedron() -> SimplicialComplex {
    let eq = ["1", "2", "3", "4"];
    let mut facets = Vec::new();
    for i in 0..4 {
        for pole in ["n", "s"] {
            facets.push(vec![pole, eq[i], eq[(i + 1) % 4]]);
        }
    }
    SimplicialComplex::from_facets(facets).expect("valid labels")
}

/// Two disjoint 3-cycles.
pub fn two_cycles() -> SimplicialComplex {
    SimplicialComplex::from_facets([
        ["a", "b"],
        ["b", "c"],
        ["c", "a"],
        ["x", "y"],
        ["y", "z"],
        ["z", "x"],
    ])
    .expect("valid labels")
}
