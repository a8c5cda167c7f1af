//! The theorem suite: exhaustive verification of the S-filter results over
//! a lattice catalog, and a counterexample hunter that re-runs a check with
//! one named hypothesis unenforced.
//!
//! Instance iteration is lexicographic in (lattice id, S bit pattern,
//! filter bit patterns), so first-witness results are stable across
//! machines. Checkers whose statements demonstrably require distributivity
//! declare a distributive-only scope; dropping the `distributive`
//! hypothesis re-runs them on the whole catalog.

mod ctx;
mod local;
mod transport;

use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::doc::LatticeDoc;
use crate::generate::CatalogEntry;
use crate::lattice::Lattice;
use crate::subset::Subset;

pub(crate) use ctx::LatticeCtx;

/// Identifiers of the verified statements.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum TheoremId {
    Prop1Disjoint,
    Prop1Residual,
    RemarkPrime,
    Thm2Pairs,
    ThmSmall,
    ThmGhasem,
    Thm3Avoidance,
    PropIntersection,
    ThmKhamen,
    ThmMinprime,
    ThmMaximalPrime,
    PropComplete,
    ThmCompleteDecomp,
    ThmHomo1,
    ThmHomo2,
    CorQuotient,
    ThmCar,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::Prop1Disjoint,
        TheoremId::Prop1Residual,
        TheoremId::RemarkPrime,
        TheoremId::Thm2Pairs,
        TheoremId::ThmSmall,
        TheoremId::ThmGhasem,
        TheoremId::Thm3Avoidance,
        TheoremId::PropIntersection,
        TheoremId::ThmKhamen,
        TheoremId::ThmMinprime,
        TheoremId::ThmMaximalPrime,
        TheoremId::PropComplete,
        TheoremId::ThmCompleteDecomp,
        TheoremId::ThmHomo1,
        TheoremId::ThmHomo2,
        TheoremId::CorQuotient,
        TheoremId::ThmCar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Prop1Disjoint => "prop1-disjoint",
            TheoremId::Prop1Residual => "prop1-residual",
            TheoremId::RemarkPrime => "remark-prime",
            TheoremId::Thm2Pairs => "thm2-pairs",
            TheoremId::ThmSmall => "thm-small",
            TheoremId::ThmGhasem => "thm-ghasem",
            TheoremId::Thm3Avoidance => "thm3-avoidance",
            TheoremId::PropIntersection => "prop-intersection",
            TheoremId::ThmKhamen => "thm-khamen",
            TheoremId::ThmMinprime => "thm-minprime",
            TheoremId::ThmMaximalPrime => "thm-maximal-prime",
            TheoremId::PropComplete => "prop-complete",
            TheoremId::ThmCompleteDecomp => "thm-complete-decomp",
            TheoremId::ThmHomo1 => "thm-homo-1",
            TheoremId::ThmHomo2 => "thm-homo-2",
            TheoremId::CorQuotient => "cor-quotient",
            TheoremId::ThmCar => "thm-car",
        }
    }

    pub fn parse(text: &str) -> Option<TheoremId> {
        TheoremId::ALL.iter().copied().find(|t| t.as_str() == text)
    }

    /// Checkers whose statements fail on non-distributive lattices run on
    /// the distributive sub-catalog; the diamond witnesses are reachable
    /// through `hunt` by dropping `distributive`.
    pub fn distributive_only(self) -> bool {
        matches!(
            self,
            TheoremId::Prop1Residual
                | TheoremId::Thm2Pairs
                | TheoremId::ThmSmall
                | TheoremId::ThmKhamen
                | TheoremId::ThmMaximalPrime
                | TheoremId::ThmCompleteDecomp
                | TheoremId::CorQuotient
        )
    }

    /// Hypotheses the hunter may drop, by name.
    pub fn droppable_hypotheses(self) -> &'static [&'static str] {
        match self {
            TheoremId::Prop1Disjoint => &[],
            TheoremId::Prop1Residual => &["distributive", "disjoint"],
            TheoremId::RemarkPrime => &["prime"],
            TheoremId::Thm2Pairs => &["distributive"],
            TheoremId::ThmSmall => &["distributive", "disjoint"],
            TheoremId::ThmGhasem => &["proper"],
            TheoremId::Thm3Avoidance => &["irredundant"],
            TheoremId::PropIntersection => &["s-filters"],
            TheoremId::ThmKhamen => &["distributive", "disjoint"],
            TheoremId::ThmMinprime => &["s-filter"],
            TheoremId::ThmMaximalPrime => &["distributive"],
            TheoremId::PropComplete => &["nonzero-s"],
            TheoremId::ThmCompleteDecomp => &["distributive"],
            TheoremId::ThmHomo1 => &["top-preserving"],
            TheoremId::ThmHomo2 => &["complemented", "onto", "kernel-contained"],
            TheoremId::CorQuotient => &["distributive", "complemented", "modulus-contained"],
            TheoremId::ThmCar => &["proper"],
        }
    }

    /// Exponential quantifications get a per-theorem lattice size cap.
    pub fn size_cap(self) -> Option<usize> {
        match self {
            TheoremId::ThmCompleteDecomp => Some(12),
            TheoremId::CorQuotient => Some(16),
            TheoremId::ThmCar => Some(4),
            _ => None,
        }
    }

    fn is_lattice_local(self) -> bool {
        !matches!(
            self,
            TheoremId::ThmHomo1 | TheoremId::ThmHomo2 | TheoremId::ThmCar
        )
    }
}

/// A replayable violation: the full lattice document plus the instance.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub lattice_id: String,
    pub lattice: LatticeDoc,
    pub s: Vec<String>,
    pub filters: Vec<Vec<String>>,
    pub detail: String,
}

/// Aggregated result of one theorem over the catalog. `wall_time` and
/// `notes` feed the human-readable output only; the serialized record is
/// byte-stable across runs.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub instances: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    pub distributive_only: bool,
    #[serde(skip)]
    pub wall_time: Duration,
    #[serde(skip)]
    pub notes: Vec<String>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("catalog is empty")]
    EmptyCatalog,
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("`{hypothesis}` is not a droppable hypothesis of {theorem} (droppable: {available})")]
    UnknownHypothesis {
        theorem: String,
        hypothesis: String,
        available: String,
    },
}

/// Mutable state of one sweep: counters, witnesses, and the drop/hunt
/// configuration.
pub(crate) struct Sweep<'a> {
    pub dropped: Option<&'a str>,
    pub hunt: bool,
    pub instances: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    /// thm3 bookkeeping: hypothesis-satisfied counts by family size.
    pub avoidance_n1: u64,
    pub avoidance_n2: u64,
    /// homo-1 bookkeeping: instances where the image of S misses the
    /// codomain bottom, so it is not literally vee-closed there.
    pub image_not_vee_closed: u64,
}

impl<'a> Sweep<'a> {
    pub fn new(dropped: Option<&'a str>, hunt: bool) -> Sweep<'a> {
        Sweep {
            dropped,
            hunt,
            instances: 0,
            violations: 0,
            witnesses: Vec::new(),
            avoidance_n1: 0,
            avoidance_n2: 0,
            image_not_vee_closed: 0,
        }
    }

    /// Is the named hypothesis enforced in this run?
    pub fn enforced(&self, hypothesis: &str) -> bool {
        self.dropped != Some(hypothesis)
    }

    pub fn record(&mut self, witness: Witness) {
        self.violations += 1;
        self.witnesses.push(witness);
    }

    /// Hunting stops at the first witness.
    pub fn done(&self) -> bool {
        self.hunt && self.violations > 0
    }
}

pub(crate) fn witness(
    lat: &Lattice,
    id: &str,
    s: Subset,
    filters: &[Subset],
    detail: String,
) -> Witness {
    Witness {
        lattice_id: id.to_string(),
        lattice: LatticeDoc::from_lattice(lat),
        s: crate::doc::sorted_labels(lat, s),
        filters: filters
            .iter()
            .map(|f| crate::doc::sorted_labels(lat, *f))
            .collect(),
        detail,
    }
}

fn run_one<'a>(
    theorem: TheoremId,
    catalog: &'a [CatalogEntry],
    ctxs: &mut CtxCache<'a>,
    size_limit: Option<usize>,
    dropped: Option<&str>,
    hunt: bool,
) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut sweep = Sweep::new(dropped, hunt);
    let cap = match (theorem.size_cap(), size_limit) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) => Some(a),
        (None, b) => b,
    };

    if theorem.is_lattice_local() {
        for (i, entry) in catalog.iter().enumerate() {
            if let Some(cap) = cap {
                if entry.lattice.len() > cap {
                    continue;
                }
            }
            let ctx = ctxs.get(catalog, i);
            // Scope on the re-derived distributivity, not the cached flag.
            if theorem.distributive_only()
                && sweep.enforced("distributive")
                && !ctx.distributive
            {
                continue;
            }
            local::run(theorem, ctx, &mut sweep);
            if sweep.done() {
                break;
            }
        }
    } else {
        transport::run(theorem, catalog, cap, &mut sweep);
    }

    let mut notes = Vec::new();
    if theorem == TheoremId::Thm3Avoidance {
        notes.push(format!(
            "single-member covers: {} instances, implication held non-vacuously",
            sweep.avoidance_n1
        ));
        if sweep.avoidance_n2 == 0 {
            notes.push(
                "families of two or more: no hypothesis-satisfying instance exists \
                 (an irredundant cover of a filter by several filters is impossible, \
                 since the filter's minimum lands in one cover member)"
                    .to_string(),
            );
        } else {
            notes.push(format!(
                "families of two or more: {} hypothesis-satisfying instances",
                sweep.avoidance_n2
            ));
        }
    }
    if theorem == TheoremId::ThmHomo1 && sweep.image_not_vee_closed > 0 {
        notes.push(format!(
            "on {} instances the image of S misses the codomain bottom and is not \
             literally vee-closed there; the condition is checked against the raw image set",
            sweep.image_not_vee_closed
        ));
    }

    let distributive_only = theorem.distributive_only() && sweep.enforced("distributive");
    VerificationReport {
        theorem: theorem.as_str().to_string(),
        instances: sweep.instances,
        violations: sweep.violations,
        witnesses: sweep.witnesses,
        distributive_only,
        wall_time: start.elapsed(),
        notes,
    }
}

/// Lazily built per-lattice contexts, shared across the selected theorems.
struct CtxCache<'a> {
    slots: Vec<Option<LatticeCtx<'a>>>,
}

impl<'a> CtxCache<'a> {
    fn new(n: usize) -> CtxCache<'a> {
        CtxCache {
            slots: (0..n).map(|_| None).collect(),
        }
    }

    fn get(&mut self, catalog: &'a [CatalogEntry], i: usize) -> &LatticeCtx<'a> {
        if self.slots[i].is_none() {
            self.slots[i] = Some(LatticeCtx::build(&catalog[i]));
        }
        self.slots[i].as_ref().unwrap()
    }
}

/// Run the selected theorems (all, when `theorem_filter` is empty) over the
/// catalog and aggregate one report per theorem, in registry order.
pub fn run_theorem_suite(
    catalog: &[CatalogEntry],
    theorem_filter: Option<&[TheoremId]>,
    size_limit: Option<usize>,
) -> Result<Vec<VerificationReport>, VerifyError> {
    if catalog.is_empty() {
        return Err(VerifyError::EmptyCatalog);
    }
    let selected: Vec<TheoremId> = match theorem_filter {
        Some(list) if !list.is_empty() => TheoremId::ALL
            .iter()
            .copied()
            .filter(|t| list.contains(t))
            .collect(),
        _ => TheoremId::ALL.to_vec(),
    };
    let mut ctxs = CtxCache::new(catalog.len());
    Ok(selected
        .into_iter()
        .map(|t| {
            let mut report = run_one(t, catalog, &mut ctxs, size_limit, None, false);
            if report.distributive_only {
                // Report the behavior outside the declared scope instead of
                // guessing: a bounded hunt over the whole catalog.
                let off_scope =
                    run_one(t, catalog, &mut ctxs, size_limit, Some("distributive"), true);
                report.notes.push(match off_scope.witnesses.first() {
                    Some(w) => format!(
                        "fails without distributivity: first witness on {} \
                         (S = {{{}}}); reproduce with `hunt --theorem {} --drop distributive`",
                        w.lattice_id,
                        w.s.join(","),
                        t.as_str()
                    ),
                    None => "no non-distributive counterexample in this catalog; \
                             the scope is precautionary"
                        .to_string(),
                });
            }
            report
        })
        .collect())
}

/// Re-run one theorem with a hypothesis unenforced and return the first
/// witness in canonical order, or none. With no hypothesis dropped this is
/// exactly the theorem check.
pub fn hunt_counterexample(
    catalog: &[CatalogEntry],
    theorem: TheoremId,
    dropped: Option<&str>,
) -> Result<Option<Witness>, VerifyError> {
    if catalog.is_empty() {
        return Err(VerifyError::EmptyCatalog);
    }
    if let Some(hyp) = dropped {
        if !theorem.droppable_hypotheses().contains(&hyp) {
            return Err(VerifyError::UnknownHypothesis {
                theorem: theorem.as_str().to_string(),
                hypothesis: hyp.to_string(),
                available: theorem.droppable_hypotheses().join(", "),
            });
        }
    }
    let mut ctxs = CtxCache::new(catalog.len());
    let report = run_one(theorem, catalog, &mut ctxs, None, dropped, true);
    Ok(report.witnesses.into_iter().next())
}

/// Serialize reports as JSON lines with a trailing summary object. The
/// output is byte-identical for identical catalog and configuration.
pub fn reports_to_jsonl(reports: &[VerificationReport], catalog_size: usize, seed: u64) -> String {
    let mut out = String::new();
    let mut total_instances = 0u64;
    let mut total_violations = 0u64;
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("report serialization cannot fail"));
        out.push('\n');
        total_instances += r.instances;
        total_violations += r.violations;
    }
    let summary = serde_json::json!({
        "summary": {
            "theorems": reports.len(),
            "instances": total_instances,
            "violations": total_violations,
            "catalog_size": catalog_size,
            "seed": seed,
        }
    });
    out.push_str(&summary.to_string());
    out.push('\n');
    out
}
