//! End-to-end check that a complex `K` has `scat K = 1 < gscat K = 2`, and
//! that `M = K + a`, which strongly collapses to `K` in one step, has
//! `gscat M = 1`.
//!
//! [`verify_paper`] runs eight claim checks and assembles a [`PaperReport`]
//! together with a [`Bundle`] of certificates that re-verify on their own.
//! [`find_paper_complex`] enumerates reconstructed candidates and returns the
//! first one whose report passes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{
    search_cover, two_cover_prover, verify_cover, CategoryError, CoverMode, CoverVerdict, ProverOptions,
    SearchOptions, TwoCoverDecision,
};
use crate::certificate::{Bundle, CertificateFile, CertificateKind};
use crate::complex::{ComplexError, Simplex, SimplicialComplex, Vertex};
use crate::contiguity::DEFAULT_STATE_CAP;
use crate::homology::h1_rank_mod2;
use crate::reconstruct::{search_k, CandidatePool, ConstraintSet, ReconstructError, SearchStatus};
use crate::strong::{core, find_collapse_to, is_strongly_collapsible};

pub const APEX: &str = "a";
pub const CENTRE: &str = "(0,0)";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error("missing prerequisite: {0}")]
    Prerequisite(String),
}

fn s(labels: &[&str]) -> Simplex {
    Simplex::new(labels.iter().copied()).expect("valid labels")
}

const RIGHT: [&str; 3] = ["(2,0)", "(2,1)", "(2,2)"];
const LEFT: [&str; 3] = ["(-2,0)", "(-2,1)", "(-2,2)"];

fn pairs(col: &[&'static str; 3]) -> [[&'static str; 2]; 3] {
    [[col[0], col[1]], [col[1], col[2]], [col[2], col[0]]]
}

/// `K` with a new vertex `a` coning off the three triangles
/// `{(0,0),(2,i),(2,j)}` to tetrahedra.
pub fn build_m(k: &SimplicialComplex) -> Result<SimplicialComplex, PipelineError> {
    if k.contains_vertex(&Vertex::new(APEX)?) {
        return Err(PipelineError::Prerequisite(format!("K already has a vertex {APEX}")));
    }
    for [x, y] in pairs(&RIGHT).iter().chain(&pairs(&LEFT)) {
        let t = s(&[CENTRE, x, y]);
        if !k.facets().contains(&t) {
            return Err(PipelineError::Prerequisite(format!("triangle {t}")));
        }
    }
    let mut facets = k.facets();
    for [x, y] in pairs(&RIGHT) {
        facets.push(s(&[APEX, CENTRE, x, y]));
        facets.push(s(&[APEX, x, y]));
        facets.push(s(&[APEX, CENTRE, x]));
    }
    Ok(SimplicialComplex::from_simplices(&facets)?)
}

/// The two-piece strongly collapsible cover of `M`: `A` is the three
/// tetrahedra with the cone `{(0,0),(-2,i),(-2,j)}`, `B` is everything else
/// together with the triangles `{a,(2,i),(2,j)}`.
pub fn build_two_piece_cover(m: &SimplicialComplex) -> Result<(SimplicialComplex, SimplicialComplex), PipelineError> {
    let mut a_gen: Vec<Simplex> = pairs(&RIGHT).iter().map(|[x, y]| s(&[APEX, CENTRE, x, y])).collect();
    a_gen.extend(pairs(&LEFT).iter().map(|[x, y]| s(&[CENTRE, x, y])));
    let a = m.generated_subcomplex(&a_gen)?;
    let mut b_gen: Vec<Simplex> = m.facets().into_iter().filter(|f| !a_gen.contains(f)).collect();
    b_gen.extend(pairs(&RIGHT).iter().map(|[x, y]| s(&[APEX, x, y])));
    let b = m.generated_subcomplex(&b_gen)?;
    Ok((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub id: String,
    pub claim: String,
    pub status: Status,
    pub detail: String,
    pub certificates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryValues {
    pub scat_k: Option<usize>,
    pub gscat_k: Option<usize>,
    pub gscat_m: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperReport {
    pub complex_k: SimplicialComplex,
    pub checks: Vec<ClaimCheck>,
    pub values: CategoryValues,
    pub overall: Status,
}

impl PaperReport {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {:?} {}: {}\n", c.id, c.status, c.claim, c.detail));
        }
        out.push_str(&format!(
            "scat K = {}, gscat K = {}, gscat M = {}\noverall: {:?}\n",
            show(self.values.scat_k),
            show(self.values.gscat_k),
            show(self.values.gscat_m),
            self.overall
        ));
        out
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub state_cap: usize,
    pub search: SearchOptions,
    pub prover: ProverOptions,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            state_cap: DEFAULT_STATE_CAP,
            search: SearchOptions::default(),
            prover: ProverOptions::default(),
        }
    }
}

/// A report and the files it references, keyed by relative path.
#[derive(Debug, Clone)]
pub struct PaperRun {
    pub report: PaperReport,
    pub bundle: Bundle,
}

struct Checks {
    list: Vec<ClaimCheck>,
}

impl Checks {
    fn add(&mut self, id: &str, claim: &str, status: Status, detail: String, certificates: Vec<String>) -> Status {
        self.list.push(ClaimCheck { id: id.into(), claim: claim.into(), status, detail, certificates });
        status
    }
}

fn show(v: Option<usize>) -> String {
    v.map_or("?".to_string(), |x| x.to_string())
}

fn pass_if(b: bool) -> Status {
    if b {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Runs the eight claim checks on `k`.
pub fn verify_paper(k: &SimplicialComplex, options: &PipelineOptions) -> Result<PaperRun, PipelineError> {
    let mut bundle = Bundle::default();
    let mut checks = Checks { list: Vec::new() };
    bundle.add_complex("K.cplx", k);

    let core_k = core(k);
    bundle.add_certificate("certificates/p1-core-K.json", &CertificateFile::new(CertificateKind::Collapse, &core_k));
    let p1 = checks.add(
        "P1",
        "K is not strongly collapsible",
        pass_if(core_k.end.vertex_count() > 1),
        format!("core of K has {} vertices", core_k.end.vertex_count()),
        vec!["certificates/p1-core-K.json".into()],
    );

    let h1 = h1_rank_mod2(k);
    checks.add("P2", "H1(K; Z/2) has rank 2", pass_if(h1 == 2), format!("rank {h1}"), vec![]);

    let search = SearchOptions { state_cap: options.state_cap, ..options.search.clone() };
    let p3 = match search_cover(k, 2, CoverMode::Categorical, &search)? {
        Some(cert) => {
            bundle.add_cover("certificates/p3-categorical-cover.json", "K.cplx", "pieces/p3", &cert);
            checks.add(
                "P3",
                "K has a categorical cover with two pieces",
                pass_if(cert.verify()),
                "verified categorical 2-cover".into(),
                vec!["certificates/p3-categorical-cover.json".into()],
            )
        }
        None => checks.add(
            "P3",
            "K has a categorical cover with two pieces",
            Status::Indeterminate,
            format!("no cover found in {} attempts", search.attempts),
            vec![],
        ),
    };

    let p4 = match two_cover_prover(k, &options.prover) {
        Ok(TwoCoverDecision::Impossible(cert)) => {
            let detail = format!(
                "search exhausted: {} nodes, {} leaves, digest {}",
                cert.stats.nodes, cert.stats.leaves, cert.digest
            );
            bundle.add_certificate(
                "certificates/p4-impossibility.json",
                &CertificateFile::new(CertificateKind::Impossibility, &cert),
            );
            checks.add(
                "P4",
                "K is not covered by two strongly collapsible subcomplexes",
                pass_if(cert.digest_matches()),
                detail,
                vec!["certificates/p4-impossibility.json".into()],
            )
        }
        Ok(TwoCoverDecision::Cover(cert)) => {
            bundle.add_cover("certificates/p4-two-cover.json", "K.cplx", "pieces/p4", &cert);
            checks.add(
                "P4",
                "K is not covered by two strongly collapsible subcomplexes",
                Status::Fail,
                "found a strongly collapsible 2-cover".into(),
                vec!["certificates/p4-two-cover.json".into()],
            )
        }
        Err(CategoryError::ResourceCap(m)) => checks.add(
            "P4",
            "K is not covered by two strongly collapsible subcomplexes",
            Status::Indeterminate,
            m,
            vec![],
        ),
        Err(e) => checks.add(
            "P4",
            "K is not covered by two strongly collapsible subcomplexes",
            Status::Fail,
            e.to_string(),
            vec![],
        ),
    };

    let p5 = match search_cover(k, 3, CoverMode::StronglyCollapsible, &search)? {
        Some(cert) => {
            bundle.add_cover("certificates/p5-geometric-cover.json", "K.cplx", "pieces/p5", &cert);
            checks.add(
                "P5",
                "K has a strongly collapsible cover with three pieces",
                pass_if(cert.verify()),
                "verified strongly collapsible 3-cover".into(),
                vec!["certificates/p5-geometric-cover.json".into()],
            )
        }
        None => checks.add(
            "P5",
            "K has a strongly collapsible cover with three pieces",
            Status::Indeterminate,
            format!("no cover found in {} attempts", search.attempts),
            vec![],
        ),
    };

    let (p6, p7) = match build_m(k) {
        Ok(m) => {
            bundle.add_complex("M.cplx", &m);
            let p6 = match find_collapse_to(&m, k) {
                Some(seq) => {
                    bundle.add_certificate(
                        "certificates/p6-collapse-M-to-K.json",
                        &CertificateFile::new(CertificateKind::Collapse, &seq),
                    );
                    let one_step = seq.steps.len() == 1 && seq.is_valid() && seq.end == *k;
                    checks.add(
                        "P6",
                        "M strongly collapses to K in one step",
                        pass_if(one_step),
                        format!("{} step(s)", seq.steps.len()),
                        vec!["certificates/p6-collapse-M-to-K.json".into()],
                    )
                }
                None => checks.add(
                    "P6",
                    "M strongly collapses to K in one step",
                    Status::Fail,
                    "no strong collapse from M to K".into(),
                    vec![],
                ),
            };
            let (a, b) = build_two_piece_cover(&m)?;
            let core_m = core(&m);
            bundle.add_certificate("certificates/p7-core-M.json", &CertificateFile::new(CertificateKind::Collapse, &core_m));
            let p7 = match verify_cover(&m, &[a, b], CoverMode::StronglyCollapsible, options.state_cap)? {
                CoverVerdict::Valid(cert) => {
                    bundle.add_cover("certificates/p7-cover-M.json", "M.cplx", "pieces/p7", &cert);
                    let not_sc = !is_strongly_collapsible(&m);
                    checks.add(
                        "P7",
                        "gscat M = 1",
                        pass_if(cert.verify() && not_sc),
                        format!("two-piece cover verified, core of M has {} vertices", core_m.end.vertex_count()),
                        vec!["certificates/p7-cover-M.json".into(), "certificates/p7-core-M.json".into()],
                    )
                }
                CoverVerdict::Invalid(why) | CoverVerdict::Indeterminate(why) => checks.add(
                    "P7",
                    "gscat M = 1",
                    Status::Fail,
                    why,
                    vec!["certificates/p7-core-M.json".into()],
                ),
            };
            (p6, p7)
        }
        Err(e) => {
            let p6 = checks.add("P6", "M strongly collapses to K in one step", Status::Fail, e.to_string(), vec![]);
            let p7 = checks.add("P7", "gscat M = 1", Status::Fail, e.to_string(), vec![]);
            (p6, p7)
        }
    };

    let scat_k = (p1 == Status::Pass && p3 == Status::Pass).then_some(1);
    let gscat_k = (p1 == Status::Pass && p4 == Status::Pass && p5 == Status::Pass).then_some(2);
    let gscat_m = (p7 == Status::Pass).then_some(1);
    let p8 = match (gscat_m, gscat_k) {
        (Some(m), Some(k)) => pass_if(m < k),
        _ if [p4, p5, p7].contains(&Status::Fail) => Status::Fail,
        _ => Status::Indeterminate,
    };
    checks.add(
        "P8",
        "gscat M < gscat K although M and K have the same strong homotopy type",
        if p6 == Status::Pass { p8 } else { Status::Fail },
        format!("gscat M = {}, gscat K = {}", show(gscat_m), show(gscat_k)),
        vec![],
    );

    let statuses: Vec<Status> = checks.list.iter().map(|c| c.status).collect();
    let overall = if statuses.contains(&Status::Fail) {
        Status::Fail
    } else if statuses.contains(&Status::Indeterminate) {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    let report = PaperReport {
        complex_k: k.clone(),
        checks: checks.list,
        values: CategoryValues { scat_k, gscat_k, gscat_m },
        overall,
    };
    bundle.add_certificate("certificates/paper-report.json", &CertificateFile::new(CertificateKind::PaperReport, &report));
    Ok(PaperRun { report, bundle })
}

#[derive(Debug, Clone)]
pub struct FindOptions {
    /// Solutions tried per candidate pool.
    pub solution_limit: usize,
    pub node_budget: u64,
    pub pipeline: PipelineOptions,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions { solution_limit: 50, node_budget: 200_000_000, pipeline: PipelineOptions::default() }
    }
}

#[derive(Debug, Clone)]
pub enum FindOutcome {
    Found { run: PaperRun, candidates_tried: usize, pool: CandidatePool },
    /// Every enumerated candidate failed; `exhausted` tells whether the
    /// last pool was searched completely.
    NotFound { candidates_tried: usize, exhausted: bool },
}

/// Enumerates reconstructions, the column pool first and then all triangles,
/// and returns the first whose report passes.
pub fn find_paper_complex(options: &FindOptions) -> Result<FindOutcome, PipelineError> {
    let mut tried = 0;
    let mut exhausted = false;
    for pool in [CandidatePool::ColumnBand, CandidatePool::All] {
        let constraints = ConstraintSet::two_handle_pinched_sphere().with_pool(pool);
        let out = search_k(&constraints, options.solution_limit, options.node_budget)?;
        for k in &out.solutions {
            tried += 1;
            let run = verify_paper(k, &options.pipeline)?;
            if run.report.passed() {
                return Ok(FindOutcome::Found { run, candidates_tried: tried, pool });
            }
        }
        exhausted = out.status == SearchStatus::Exhausted;
    }
    Ok(FindOutcome::NotFound { candidates_tried: tried, exhausted })
}
