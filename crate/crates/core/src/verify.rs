//! Checkable suites: oracle equivalence, finite sibling uniqueness, the
//! lemma biconditionals, quasi-order laws and the classifier corpus.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cardinal::Cardinal;
use crate::classify::{classify_countable, classify_general, Rule, SibResult};
use crate::corpus::{self, Shape};
use crate::dsc::{isomorphic, normalize, DscDescription, Family, Term};
use crate::embed::{dsc_embeds, embeds, equimorphic, Embedding};
use crate::finite_oracle::{all_posets, brute_embeds_with_cap, check_mutual_embed_implies_iso, OracleError};
use crate::ordertype::{chain_sib, OrderType, Sib, SibCount};

const KEEP_FAILURES: usize = 20;

pub const SUITES: [&str; 5] =
    ["oracle-equivalence", "sibling-uniqueness", "lemma-biconditionals", "quasi-order-laws", "classifier-corpus"];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}` (known: {known})", known = SUITES.join(", "))]
    UnknownSuite(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    /// The first few failures, rendered.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), checked: 0, failed: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEEP_FAILURES {
                self.failures.push(describe());
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    /// Total size bound for the exhaustive finite sweeps.
    pub cap: usize,
    /// Generated descriptions per randomized suite.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params { cap: crate::finite_oracle::SWEEP_CAP, samples: 250, seed: 2024 }
    }
}

pub fn run_suite(name: &str, params: &Params) -> Result<Vec<SuiteReport>, VerifyError> {
    Ok(match name {
        "oracle-equivalence" => vec![oracle_equivalence(params.cap)?],
        "sibling-uniqueness" => vec![sibling_uniqueness(params.cap)?],
        "lemma-biconditionals" => lemma_biconditionals(params.samples, params.seed),
        "quasi-order-laws" => vec![quasi_order_laws(params.samples, params.seed)],
        "classifier-corpus" => classifier_corpus(params.samples, params.seed),
        other => return Err(VerifyError::UnknownSuite(other.into())),
    })
}

/// `dsc_embeds` against the brute-force oracle on every ordered pair of
/// finite descriptions of total size at most `cap`. Positive verdicts must
/// carry a valid assignment.
pub fn oracle_equivalence(cap: usize) -> Result<SuiteReport, VerifyError> {
    let mut report = SuiteReport::new("oracle-equivalence");
    let posets = all_posets(cap);
    let descs: Vec<DscDescription> = posets.iter().map(|p| p.to_description()).collect();
    let limit = cap.max(crate::finite_oracle::DEFAULT_CAP);
    for (p, pd) in posets.iter().zip(&descs) {
        for (q, qd) in posets.iter().zip(&descs) {
            let oracle = brute_embeds_with_cap(p, q, limit)?.is_some();
            let engine = dsc_embeds(pd, qd);
            let ok = match &engine {
                Ok(Embedding::Embeds(a)) => oracle && a.validate(pd, qd).is_ok(),
                Ok(Embedding::Blocked(_)) => !oracle,
                Err(_) => false,
            };
            report.record(ok, || format!("{pd} into {qd}: oracle {oracle}, engine {engine:?}"));
        }
    }
    Ok(report)
}

/// Mutual embeddability forces isomorphism on finite descriptions, checked
/// both with the brute-force oracle and with the engine.
pub fn sibling_uniqueness(cap: usize) -> Result<SuiteReport, VerifyError> {
    let mut report = SuiteReport::new("sibling-uniqueness");
    let oracle = check_mutual_embed_implies_iso(cap)?;
    report.checked += oracle.pairs;
    for (p, q) in oracle.counterexamples {
        report.record(false, || format!("oracle: {:?} and {:?} are siblings", p.chains(), q.chains()));
    }
    let descs: Vec<DscDescription> = all_posets(cap).iter().map(|p| p.to_description()).collect();
    for a in &descs {
        for b in &descs {
            let ok = match equimorphic(a, b) {
                Ok(eq) => !eq || isomorphic(a, b),
                Err(_) => false,
            };
            report.record(ok, || format!("engine: {a} and {b} are siblings"));
        }
    }
    Ok(report)
}

fn without_trivial(d: &DscDescription) -> Vec<Term> {
    d.terms().into_iter().filter(|t| !matches!(t, Term::Class(ty, _) if ty.is_trivial())).collect()
}

fn with_trivial(d: &DscDescription, mult: Option<Cardinal>) -> DscDescription {
    let mut terms = without_trivial(d);
    if let Some(m) = mult {
        terms.push(Term::fin(1, m));
    }
    normalize(terms).expect("positive multiplicities")
}

fn finite_mult(rng: &mut impl Rng) -> Option<Cardinal> {
    match rng.gen_range(0..4u64) {
        0 => None,
        n => Some(Cardinal::Finite(n)),
    }
}

fn any_mult(rng: &mut impl Rng) -> Cardinal {
    match rng.gen_range(0..6) {
        0 | 1 => Cardinal::Finite(rng.gen_range(1..=3)),
        2 | 3 => Cardinal::ALEPH0,
        n => Cardinal::Aleph(n - 3),
    }
}

fn has_increasing(d: &DscDescription) -> bool {
    d.increasing_analysis().has_increasing
}

/// Descriptions whose non-trivial part has no increasing sequence: finite
/// multiplicities, no families.
fn without_increasing(rng: &mut impl Rng, decls: &crate::ordertype::Declarations) -> DscDescription {
    let mut terms: Vec<Term> = (0..rng.gen_range(0..=4))
        .map(|_| {
            let ty = corpus::order_type(rng, &Shape::GENERAL, decls);
            Term::Class(ty, Cardinal::Finite(rng.gen_range(1..=3)))
        })
        .filter(|t| !matches!(t, Term::Class(ty, _) if ty.is_trivial()))
        .collect();
    terms.push(Term::fin(1, any_mult(rng)));
    normalize(terms).expect("positive multiplicities")
}

/// One report per lemma, each over `samples` generated descriptions.
pub fn lemma_biconditionals(samples: usize, seed: u64) -> Vec<SuiteReport> {
    let decls = corpus::corpus_declarations();
    let mut rng = corpus::rng(seed);

    let mut finite_trivial = SuiteReport::new("Infsibfinitetrivial");
    let c1 = DscDescription::empty().with_class(OrderType::Fin(1), Cardinal::ONE).expect("nonzero");
    for _ in 0..samples {
        let base = corpus::description(&mut rng, &Shape::GENERAL, &decls);
        let d = with_trivial(&base, finite_mult(&mut rng));
        let verdict = embeds(&d.plus(&c1), &d);
        let ok = matches!(verdict, Ok(v) if v == has_increasing(&d));
        finite_trivial.record(ok, || format!("{d}: D + C^1 into D gave {verdict:?}"));
    }

    let mut capacity = SuiteReport::new("Pairwisedisincreasing");
    for _ in 0..samples {
        let base = corpus::description(&mut rng, &Shape::GENERAL, &decls);
        let d = with_trivial(&base, Some(any_mult(&mut rng)));
        let n = d.nontrivial();
        let expected = n.disjoint_increasing_capacity() >= d.trivial_count();
        let verdict = embeds(&d, &n);
        let ok = matches!(verdict, Ok(v) if v == expected);
        capacity.record(ok, || format!("{d}: D into N gave {verdict:?}, capacity test {expected}"));
    }

    let mut no_increasing = SuiteReport::new("Noembeddingtrivial");
    for _ in 0..samples {
        let d = without_increasing(&mut rng, &decls);
        let verdict = embeds(&d, &d.nontrivial());
        let ok = !has_increasing(&d.nontrivial()) && matches!(verdict, Ok(false));
        no_increasing.record(ok, || format!("{d}: D into N gave {verdict:?}"));
    }

    let mut unbounded = SuiteReport::new("Increasingunbounded");
    let did = DscDescription::empty().with_family(Family::IDENTITY);
    for _ in 0..samples {
        let d = corpus::description(&mut rng, &Shape::COUNTABLE, &decls);
        let verdict = equimorphic(&d.plus(&did), &d);
        let ok = matches!(verdict, Ok(v) if v == d.increasing_analysis().has_increasing_unbounded);
        unbounded.record(ok, || format!("{d}: D + Did ≈ D gave {verdict:?}"));
    }

    vec![finite_trivial, capacity, no_increasing, unbounded]
}

/// A description related to `d`: a sum with a fresh one, its non-trivial
/// part, a tail `at_least`, or an unrelated one.
fn neighbour(rng: &mut impl Rng, d: &DscDescription, decls: &crate::ordertype::Declarations) -> DscDescription {
    let fresh = corpus::description(rng, &Shape::GENERAL, decls);
    match rng.gen_range(0..4) {
        0 => d.plus(&fresh),
        1 => d.nontrivial(),
        2 => d.at_least(rng.gen_range(1..=4)),
        _ => fresh,
    }
}

/// Reflexivity and transitivity of embedding, symmetry of equimorphy, and
/// validity of every returned assignment.
pub fn quasi_order_laws(samples: usize, seed: u64) -> SuiteReport {
    let decls = corpus::corpus_declarations();
    let mut rng = corpus::rng(seed);
    let mut report = SuiteReport::new("quasi-order-laws");
    for _ in 0..samples {
        let a = corpus::description(&mut rng, &Shape::GENERAL, &decls);
        let b = neighbour(&mut rng, &a, &decls);
        let c = neighbour(&mut rng, &b, &decls);
        for d in [&a, &b, &c] {
            report.record(matches!(embeds(d, d), Ok(true)), || format!("{d} does not embed in itself"));
        }
        let (ab, bc, ac) = (dsc_embeds(&a, &b), dsc_embeds(&b, &c), dsc_embeds(&a, &c));
        for (s, t, e) in [(&a, &b, &ab), (&b, &c, &bc), (&a, &c, &ac)] {
            let ok = match e {
                Ok(Embedding::Embeds(asg)) => asg.validate(s, t).is_ok(),
                Ok(Embedding::Blocked(_)) => true,
                Err(_) => false,
            };
            report.record(ok, || format!("{s} into {t}: {e:?}"));
        }
        let holds = |e: &Result<Embedding, _>| matches!(e, Ok(x) if x.holds());
        if holds(&ab) && holds(&bc) {
            report.record(holds(&ac), || format!("transitivity fails for {a}, {b}, {c}"));
        }
        report.record(equimorphic(&a, &b).ok() == equimorphic(&b, &a).ok(), || {
            format!("equimorphy of {a} and {b} is not symmetric")
        });
    }
    report
}

/// The general-classifier view of a countable result.
pub fn coarsen(count: SibCount) -> SibCount {
    match count {
        SibCount::Exact(Sib::One) => SibCount::ONE,
        _ => SibCount::Exact(Sib::Infinite),
    }
}

/// Whether a countable result and a general result for the same description
/// agree.
pub fn consistent(countable: SibCount, general: SibCount) -> bool {
    let coarse = coarsen(countable);
    coarse == general || (general.is_range() && coarse.within(general))
}

pub fn countable_shape_ok(count: SibCount) -> bool {
    matches!(
        count,
        SibCount::Exact(Sib::One | Sib::Aleph0 | Sib::Continuum) | SibCount::Range(Sib::Aleph0, Sib::Continuum)
    )
}

pub fn general_shape_ok(count: SibCount) -> bool {
    matches!(count, SibCount::Exact(Sib::One | Sib::Infinite) | SibCount::Range(Sib::One, Sib::Infinite))
}

fn max_component_sib(d: &DscDescription) -> Sib {
    d.classes().iter().map(|c| chain_sib(&c.ty)).max().unwrap_or(Sib::One)
}

fn replays(result: &SibResult, d: &DscDescription) -> bool {
    result.certificate.rule == Rule::BoundsOnly || result.replay(d).is_ok()
}

pub const PER_INPUT_LIMIT: Duration = Duration::from_secs(1);

/// Totality and timing, certificate replay, agreement between the two
/// classifiers, and the shape of the headline theorems, over `n` corpus
/// descriptions.
pub fn classifier_corpus(n: usize, seed: u64) -> Vec<SuiteReport> {
    let mut totality = SuiteReport::new("classifier-totality");
    let mut replay = SuiteReport::new("certificate-replay");
    let mut agreement = SuiteReport::new("classifier-agreement");
    let mut headline = SuiteReport::new("headline-theorems");
    for d in corpus::corpus(seed, n) {
        let start = Instant::now();
        let run = catch_unwind(AssertUnwindSafe(|| (classify_general(&d), classify_countable(&d))));
        let elapsed = start.elapsed();
        let Ok((general, countable)) = run else {
            totality.record(false, || format!("{d}: classifier panicked"));
            continue;
        };
        totality.record(elapsed < PER_INPUT_LIMIT, || format!("{d}: took {elapsed:?}"));
        replay.record(replays(&general, &d), || format!("{d}: general certificate {:?}", general.certificate));
        let floor = max_component_sib(&d);
        headline.record(general_shape_ok(general.count) && general.count.bounds().1 >= floor, || {
            format!("{d}: general result {}", general.count)
        });
        match countable {
            Ok(c) => {
                replay.record(replays(&c, &d), || format!("{d}: countable certificate {:?}", c.certificate));
                agreement.record(consistent(c.count, general.count), || {
                    format!("{d}: countable {} vs general {}", c.count, general.count)
                });
                headline.record(countable_shape_ok(c.count) && c.count.bounds().1 >= floor, || {
                    format!("{d}: countable result {}", c.count)
                });
            }
            Err(_) => agreement.record(!d.is_countable(), || format!("{d}: countable input rejected")),
        }
    }
    vec![totality, replay, agreement, headline]
}
