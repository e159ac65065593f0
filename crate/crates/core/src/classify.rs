//! Sibling-number classification with certificates.
//!
//! Two decision trees, each first-match: one for countable descriptions
//! (answers in `{1, ℵ_0, 2^ℵ_0}` or a proven range) and one for descriptions
//! of any cardinality (answers in `{1, ∞}`). Every answer carries the rule
//! that justifies it and the data making the rule's hypotheses true;
//! [`SibResult::replay`] re-checks that data by routes independent of the
//! tree itself, mostly through the embedding engine.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cardinal::Cardinal;
use crate::dsc::{normalize, DscDescription, IncreasingSource, Profile, Term};
use crate::embed::{self, EmbedError};
use crate::ordertype::{chain_sib, OrderType, Sib, SibCount};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not countable: {0}")]
    NotCountable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    FinitenontrivialD,
    Infinitesiblingcomponent,
    Increasingsequence,
    Countabletrivial,
    Finitealeph0,
    Countablebounded,
    Strictlyinc,
    Sibincreasingunbounded,
    Pairwisedisincreasing,
    Generalpairwisedisincreasing1,
    Generalpairwisedisincreasing2,
    Infsibfinitetrivial,
    Noincreasing,
    Generalnoincreasing,
    BoundsOnly,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::FinitenontrivialD,
        Rule::Infinitesiblingcomponent,
        Rule::Increasingsequence,
        Rule::Countabletrivial,
        Rule::Finitealeph0,
        Rule::Countablebounded,
        Rule::Strictlyinc,
        Rule::Sibincreasingunbounded,
        Rule::Pairwisedisincreasing,
        Rule::Generalpairwisedisincreasing1,
        Rule::Generalpairwisedisincreasing2,
        Rule::Infsibfinitetrivial,
        Rule::Noincreasing,
        Rule::Generalnoincreasing,
        Rule::BoundsOnly,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::FinitenontrivialD => "FinitenontrivialD",
            Rule::Infinitesiblingcomponent => "Infinitesiblingcomponent",
            Rule::Increasingsequence => "Increasingsequence",
            Rule::Countabletrivial => "Countabletrivial",
            Rule::Finitealeph0 => "Finitealeph0",
            Rule::Countablebounded => "Countablebounded",
            Rule::Strictlyinc => "Strictlyinc",
            Rule::Sibincreasingunbounded => "Sibincreasingunbounded",
            Rule::Pairwisedisincreasing => "Pairwisedisincreasing",
            Rule::Generalpairwisedisincreasing1 => "Generalpairwisedisincreasing-1",
            Rule::Generalpairwisedisincreasing2 => "Generalpairwisedisincreasing-2",
            Rule::Infsibfinitetrivial => "Infsibfinitetrivial",
            Rule::Noincreasing => "Noincreasing",
            Rule::Generalnoincreasing => "Generalnoincreasing",
            Rule::BoundsOnly => "BoundsOnly",
        }
    }

    /// The hypothesis and conclusion of the rule, as a formula.
    pub fn statement(self) -> &'static str {
        match self {
            Rule::FinitenontrivialD => "finitely many non-trivial components, each with Sib(C) = 1 => Sib(D) = 1",
            Rule::Infinitesiblingcomponent => "Sib(D) >= Sib(C) for every component C",
            Rule::Increasingsequence => "lambda_1 <= aleph0 and an increasing sequence of non-trivial components => Sib(D) = inf",
            Rule::Countabletrivial => "infinitely many countable non-trivial components and lambda_1 <= aleph0 => Sib(D) = inf",
            Rule::Finitealeph0 => {
                "D countable, finitely many non-trivial components, some with Sib(C) = aleph0, the rest Sib(C) = 1 => Sib(D) = aleph0"
            }
            Rule::Countablebounded => "D countable and bounded with infinitely many non-trivial components => Sib(D) = aleph0",
            Rule::Strictlyinc => "D countable with a strictly increasing sequence of components => Sib(D) = 2^aleph0",
            Rule::Sibincreasingunbounded => "D countable, D + Did ≈ D => Sib(D) = 2^aleph0",
            Rule::Pairwisedisincreasing => "lambda_1 > 0 and D ↪ N (lambda_1 disjoint increasing sequences in N) => Sib(D) = inf",
            Rule::Generalpairwisedisincreasing1 => "i < j, lambda_i <= lambda_j, lambda_j infinite => Sib(D) = inf",
            Rule::Generalpairwisedisincreasing2 => {
                "lambda_1 > ... > lambda_m >= aleph0, lambda_n finite for n > m, Q = components of size > m has an increasing sequence => Sib(D) = inf"
            }
            Rule::Infsibfinitetrivial => "lambda_1 finite and D + C^1 ↪ D => Sib(D) = inf",
            Rule::Noincreasing => "no increasing sequence of non-trivial components, every Sib(C) = 1 => Sib(D) = 1",
            Rule::Generalnoincreasing => {
                "lambda_1 > ... > lambda_m >= aleph0, lambda_n finite for n > m, Q = components of size > m has no increasing sequence, every Sib(C) = 1 => Sib(D) = 1"
            }
            Rule::BoundsOnly => "no exact rule applies; only the proven bounds are reported",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Component { component: OrderType, sib: Sib },
    NontrivialCount { nontrivial: Cardinal, max_sib: Sib },
    Bound { bound: u64, repeated_size: u64 },
    Sequence { source: IncreasingSource },
    LambdaPair { i: u64, j: u64, lambda_i: Cardinal, lambda_j: Cardinal },
    Capacity { capacity: Cardinal, trivial: Cardinal },
    FiniteTrivial { trivial: Cardinal, source: IncreasingSource },
    Cascade { m: u64, lambdas: Vec<Cardinal>, increasing: Option<IncreasingSource> },
    Bounds { lower: Sib, upper: Sib, lower_by: &'static str, upper_by: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rule: Rule,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SibResult {
    pub count: SibCount,
    pub certificate: Certificate,
}

fn exact(sib: Sib, rule: Rule, witness: Witness) -> SibResult {
    SibResult { count: SibCount::Exact(sib), certificate: Certificate { rule, witness, annotation: None } }
}

fn max_sib(d: &DscDescription) -> Sib {
    d.classes().iter().map(|c| chain_sib(&c.ty)).max().unwrap_or(Sib::One)
}

fn first_component_with(d: &DscDescription, pred: impl Fn(Sib) -> bool) -> Option<(OrderType, Sib)> {
    d.classes().iter().map(|c| (c.ty.clone(), chain_sib(&c.ty))).find(|(_, s)| pred(*s))
}

/// The first pair `i < j` (by `j`, then `i`) with `λ_i ≤ λ_j` and `λ_j` infinite.
pub fn lambda_pair(profile: &Profile) -> Option<(u64, u64)> {
    let m = profile.max_infinite_size()?;
    (2..=m)
        .filter(|&j| profile.lambda(j).is_infinite())
        .find_map(|j| (1..j).find(|&i| profile.lambda(i) <= profile.lambda(j)).map(|i| (i, j)))
}

/// `(m, [λ_1, …, λ_m])` when `λ_1 > … > λ_m ≥ ℵ_0` and `λ_n` is finite for
/// every `n > m ≥ 1`.
pub fn strict_cascade(profile: &Profile) -> Option<(u64, Vec<Cardinal>)> {
    let m = profile.max_infinite_size()?;
    let lambdas: Vec<Cardinal> = (1..=m).map(|n| profile.lambda(n)).collect();
    let strict = lambdas.windows(2).all(|w| w[0] > w[1]) && lambdas.last().is_some_and(|l| l.is_infinite());
    strict.then_some((m, lambdas))
}

fn check_countable(d: &DscDescription) -> Result<(), ClassifyError> {
    for c in d.classes() {
        if !c.mult.is_countable() {
            return Err(ClassifyError::NotCountable(format!("{} has multiplicity {}", c.ty, c.mult)));
        }
        if !c.ty.size().is_countable() {
            return Err(ClassifyError::NotCountable(format!("{} has size {}", c.ty, c.ty.size())));
        }
    }
    Ok(())
}

/// Sibling number of a countable description.
pub fn classify_countable(d: &DscDescription) -> Result<SibResult, ClassifyError> {
    check_countable(d)?;
    if let Some((component, sib)) = first_component_with(d, |s| s >= Sib::Continuum) {
        return Ok(exact(Sib::Continuum, Rule::Infinitesiblingcomponent, Witness::Component { component, sib }));
    }
    let nontrivial = d.nontrivial_count();
    if nontrivial.is_finite() {
        let top = max_sib(d);
        let witness = Witness::NontrivialCount { nontrivial, max_sib: top };
        return Ok(if top == Sib::One {
            exact(Sib::One, Rule::FinitenontrivialD, witness)
        } else {
            exact(Sib::Aleph0, Rule::Finitealeph0, witness)
        });
    }
    let profile = d.lambda_profile();
    if !profile.size_unbounded {
        let bound = profile.explicit_sizes().map(|(n, _)| n).max().unwrap_or(0) + 1;
        let repeated_size = profile.max_infinite_size().unwrap_or(0);
        return Ok(exact(Sib::Aleph0, Rule::Countablebounded, Witness::Bound { bound, repeated_size }));
    }
    let analysis = d.increasing_analysis();
    if analysis.has_strictly_increasing {
        let source = d.increasing_source().expect("a family exists");
        return Ok(exact(Sib::Continuum, Rule::Strictlyinc, Witness::Sequence { source }));
    }
    if analysis.has_increasing_unbounded {
        let source = d.unbounded_increasing_source().expect("unbounded source exists");
        return Ok(exact(Sib::Continuum, Rule::Sibincreasingunbounded, Witness::Sequence { source }));
    }
    let annotation = general_aleph0_pattern(d).then(|| {
        "conjectured exact value aleph0 (bounded part plus finitely many components with Sib = aleph0)".to_string()
    });
    Ok(SibResult {
        count: SibCount::range(Sib::Aleph0, Sib::Continuum).expect("ordered"),
        certificate: Certificate {
            rule: Rule::BoundsOnly,
            witness: Witness::Bounds {
                lower: Sib::Aleph0,
                upper: Sib::Continuum,
                lower_by: "Countabletrivial",
                upper_by: "ThomasseP",
            },
            annotation,
        },
    })
}

/// Bounded finite part, finitely many infinite components, at least one of
/// them with `Sib = ℵ_0` and the others with `Sib = 1`.
fn general_aleph0_pattern(d: &DscDescription) -> bool {
    let infinite: Vec<_> = d.classes().iter().filter(|c| !c.ty.is_finite()).collect();
    d.families().is_empty()
        && infinite.iter().all(|c| c.mult.is_finite() && chain_sib(&c.ty) <= Sib::Aleph0)
        && infinite.iter().any(|c| chain_sib(&c.ty) == Sib::Aleph0)
}

/// Sibling number of a description of any cardinality.
pub fn classify_general(d: &DscDescription) -> SibResult {
    if let Some((component, sib)) = first_component_with(d, |s| s != Sib::One) {
        return exact(Sib::Infinite, Rule::Infinitesiblingcomponent, Witness::Component { component, sib });
    }
    let nontrivial = d.nontrivial_count();
    if nontrivial.is_finite() {
        return exact(Sib::One, Rule::FinitenontrivialD, Witness::NontrivialCount { nontrivial, max_sib: Sib::One });
    }
    let profile = d.lambda_profile();
    if let Some((i, j)) = lambda_pair(&profile) {
        let witness = Witness::LambdaPair { i, j, lambda_i: profile.lambda(i), lambda_j: profile.lambda(j) };
        return exact(Sib::Infinite, Rule::Generalpairwisedisincreasing1, witness);
    }
    let trivial = profile.trivial_count();
    let capacity = d.nontrivial().disjoint_increasing_capacity();
    if !trivial.is_zero() && capacity >= trivial {
        return exact(Sib::Infinite, Rule::Pairwisedisincreasing, Witness::Capacity { capacity, trivial });
    }
    if trivial.is_finite() {
        if let Some(source) = d.increasing_source() {
            return exact(Sib::Infinite, Rule::Infsibfinitetrivial, Witness::FiniteTrivial { trivial, source });
        }
    }
    if let Some((m, lambdas)) = strict_cascade(&profile) {
        let q = d.at_least(m + 1);
        let increasing = q.increasing_source();
        let rule = if increasing.is_some() { Rule::Generalpairwisedisincreasing2 } else { Rule::Generalnoincreasing };
        let sib = if increasing.is_some() { Sib::Infinite } else { Sib::One };
        return exact(sib, rule, Witness::Cascade { m, lambdas, increasing });
    }
    if trivial.is_zero() && d.increasing_source().is_none() {
        return exact(Sib::One, Rule::Noincreasing, Witness::Capacity { capacity, trivial });
    }
    SibResult {
        count: SibCount::range(Sib::One, Sib::Infinite).expect("ordered"),
        certificate: Certificate {
            rule: Rule::BoundsOnly,
            witness: Witness::Bounds {
                lower: Sib::One,
                upper: Sib::Infinite,
                lower_by: "definition",
                upper_by: "definition",
            },
            annotation: None,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("certificate for {rule} does not re-validate: {reason}")]
    Invalid { rule: Rule, reason: String },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

fn c1() -> DscDescription {
    normalize([Term::fin(1, Cardinal::ONE)]).expect("valid")
}

fn did() -> DscDescription {
    normalize([Term::Family { step: 1, start: 1 }]).expect("valid")
}

/// Non-trivial component count, summed directly over the summands.
fn count_nontrivial(d: &DscDescription) -> Cardinal {
    let fam = if d.families().is_empty() { Cardinal::ZERO } else { Cardinal::ALEPH0 };
    d.classes().iter().filter(|c| c.ty != OrderType::Fin(1)).map(|c| c.mult).sum::<Cardinal>() + fam
}

/// Whether the non-trivial part `N` of `q` has an increasing sequence, decided
/// as `N ⊕ C^1 ↪ N` through the embedding engine.
fn increasing_by_embedding(q: &DscDescription) -> Result<bool, EmbedError> {
    let n = q.nontrivial();
    embed::embeds(&n.plus(&c1()), &n)
}

impl SibResult {
    /// Re-validate the certificate against `d` by independent routes.
    pub fn replay(&self, d: &DscDescription) -> Result<(), ReplayError> {
        let rule = self.certificate.rule;
        let fail = |reason: String| Err(ReplayError::Invalid { rule, reason });
        let check = |ok: bool, reason: &str| if ok { Ok(()) } else { fail(reason.to_string()) };
        let profile = d.lambda_profile();
        match (&self.certificate.witness, rule) {
            (Witness::Component { component, sib }, Rule::Infinitesiblingcomponent) => {
                check(d.classes().iter().any(|c| &c.ty == component), "component is absent")?;
                check(chain_sib(component) == *sib && *sib != Sib::One, "component has a single sibling")?;
                check(self.count.exact().is_some_and(|c| c >= *sib), "count below component")
            }
            (Witness::NontrivialCount { nontrivial, max_sib: top }, Rule::FinitenontrivialD | Rule::Finitealeph0) => {
                let n = count_nontrivial(d);
                check(n == *nontrivial && n.is_finite(), "non-trivial count differs")?;
                check(max_sib(d) == *top, "maximal component sibling number differs")?;
                let want = if rule == Rule::FinitenontrivialD { Sib::One } else { Sib::Aleph0 };
                check(*top == want, "sibling numbers do not match the rule")
            }
            (Witness::Bound { bound, repeated_size }, Rule::Countablebounded) => {
                check(d.families().is_empty(), "a family is unbounded")?;
                check(
                    d.classes().iter().all(|c| c.ty.finite_size().is_some_and(|n| n < *bound)),
                    "a component reaches the bound",
                )?;
                check(count_nontrivial(d).is_infinite(), "finitely many non-trivial components")?;
                check(
                    *repeated_size >= 2 && d.mult_of(&OrderType::Fin(*repeated_size)).is_infinite(),
                    "no repeated non-trivial size",
                )
            }
            (Witness::Sequence { source }, Rule::Strictlyinc) => match source {
                IncreasingSource::Family(f) => {
                    check(d.families().contains(f), "family is absent")?;
                    check(f.member(1) > f.member(0) && f.member(0) >= 1, "family is not strictly increasing")
                }
                IncreasingSource::Class(_) => fail("a constant sequence is not strictly increasing".into()),
            },
            (Witness::Sequence { .. }, Rule::Sibincreasingunbounded) => {
                check(embed::equimorphic(&d.plus(&did()), d)?, "D + Did is not equimorphic to D")
            }
            (Witness::Capacity { capacity, trivial }, Rule::Pairwisedisincreasing) => {
                check(profile.trivial_count() == *trivial && !trivial.is_zero(), "trivial count differs")?;
                check(capacity >= trivial, "capacity below trivial count")?;
                check(embed::embeds(d, &d.nontrivial())?, "D does not embed in its non-trivial part")
            }
            (Witness::LambdaPair { i, j, lambda_i, lambda_j }, Rule::Generalpairwisedisincreasing1) => {
                check(i < j && *i >= 1, "indices out of order")?;
                check(profile.lambda(*i) == *lambda_i && profile.lambda(*j) == *lambda_j, "lambda values differ")?;
                check(lambda_i <= lambda_j && lambda_j.is_infinite(), "lambda condition fails")
            }
            (
                Witness::Cascade { m, lambdas, increasing },
                Rule::Generalpairwisedisincreasing2 | Rule::Generalnoincreasing,
            ) => {
                check(*m >= 1 && lambdas.len() as u64 == *m, "cascade length differs")?;
                for (k, l) in lambdas.iter().enumerate() {
                    check(profile.lambda(k as u64 + 1) == *l, "lambda values differ")?;
                }
                check(lambdas.windows(2).all(|w| w[0] > w[1]), "cascade is not strictly decreasing")?;
                check(lambdas[lambdas.len() - 1].is_infinite(), "lambda_m is finite")?;
                check(profile.max_infinite_size() == Some(*m), "an infinite lambda lies beyond m")?;
                let q = d.at_least(m + 1);
                let has = increasing_by_embedding(&q)?;
                check(has == increasing.is_some(), "increasing sequence in Q disagrees")?;
                check(has == (rule == Rule::Generalpairwisedisincreasing2), "rule does not match Q")?;
                check(rule == Rule::Generalpairwisedisincreasing2 || max_sib(d) == Sib::One, "a component has siblings")
            }
            (Witness::FiniteTrivial { trivial, .. }, Rule::Infsibfinitetrivial) => {
                check(profile.trivial_count() == *trivial && trivial.is_finite(), "trivial count differs")?;
                check(embed::embeds(&d.plus(&c1()), d)?, "D + C^1 does not embed in D")
            }
            (Witness::Capacity { trivial, .. }, Rule::Noincreasing) => {
                check(trivial.is_zero() && profile.trivial_count().is_zero(), "trivial components present")?;
                check(!increasing_by_embedding(d)?, "an increasing sequence exists")?;
                check(max_sib(d) == Sib::One, "a component has siblings")
            }
            (Witness::Bounds { lower, upper, .. }, Rule::BoundsOnly) => {
                check(self.count == SibCount::Range(*lower, *upper), "range differs from witness")
            }
            _ => fail("witness kind does not match rule".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordertype::{Declaration, Declarations};
    use crate::syntax::parse_dsc;

    fn p(s: &str) -> DscDescription {
        s.parse().unwrap()
    }

    fn countable(s: &str) -> SibResult {
        let d = p(s);
        let r = classify_countable(&d).unwrap();
        r.replay(&d).unwrap();
        r
    }

    fn general(d: &DscDescription) -> SibResult {
        let r = classify_general(d);
        r.replay(d).unwrap();
        r
    }

    #[test]
    fn countable_examples() {
        let r = countable("aleph0*w");
        assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Continuum), Rule::Sibincreasingunbounded));
        let r = countable("Did");
        assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Continuum), Rule::Strictlyinc));
        let r = countable("aleph0*C^2 + C^7");
        assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Aleph0), Rule::Countablebounded));
        assert_eq!(r.certificate.witness, Witness::Bound { bound: 8, repeated_size: 2 });
        let r = countable("w + aleph0*C^2");
        assert_eq!(r.count, SibCount::range(Sib::Aleph0, Sib::Continuum).unwrap());
        assert_eq!(r.certificate.rule, Rule::BoundsOnly);
        assert_eq!(r.certificate.annotation, None);
        let r = countable("eta + C^2");
        assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Continuum), Rule::Infinitesiblingcomponent));
        let r = countable("3*C^1 + w + C^5");
        assert_eq!((r.count, r.certificate.rule), (SibCount::ONE, Rule::FinitenontrivialD));
    }

    #[test]
    fn countable_rejects_uncountable() {
        assert!(matches!(classify_countable(&p("aleph1*C^1")), Err(ClassifyError::NotCountable(_))));
    }

    #[test]
    fn declared_aleph0_components() {
        let decls = Declarations::new(vec![Declaration {
            name: "S".into(),
            size: Cardinal::ALEPH0,
            sib: Sib::Aleph0,
            embeds_into: vec![],
            embeds_from: vec![],
        }])
        .unwrap();
        let d = parse_dsc("X(S) + 4*C^3", &decls).unwrap();
        let r = classify_countable(&d).unwrap();
        r.replay(&d).unwrap();
        assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Aleph0), Rule::Finitealeph0));
        let d = parse_dsc("X(S) + aleph0*C^3", &decls).unwrap();
        let r = classify_countable(&d).unwrap();
        assert_eq!(r.certificate.rule, Rule::BoundsOnly);
        assert!(r.certificate.annotation.is_some());
    }

    #[test]
    fn general_examples() {
        let r = general(&p("aleph1*C^1 + aleph0*C^3"));
        assert_eq!(
            (r.count, r.certificate.rule),
            (SibCount::Exact(Sib::Infinite), Rule::Generalpairwisedisincreasing1)
        );
        assert!(matches!(r.certificate.witness, Witness::LambdaPair { i: 2, j: 3, .. }));

        let r = general(&p("aleph3*C^1 + aleph2*C^2 + aleph1*C^3 + aleph1*w"));
        assert_eq!(
            (r.count, r.certificate.rule),
            (SibCount::Exact(Sib::Infinite), Rule::Generalpairwisedisincreasing2)
        );

        let d = p("aleph1*w + aleph0*(w+1) + A^aleph1");
        let r = general(&d);
        assert_eq!(r.certificate.rule, Rule::Pairwisedisincreasing);
        assert_eq!(
            r.certificate.witness,
            Witness::Capacity { capacity: Cardinal::Aleph(1), trivial: Cardinal::Aleph(1) }
        );
    }

    #[test]
    fn rigid_declared_chains_give_one() {
        let decl = |name: &str| Declaration {
            name: name.into(),
            size: Cardinal::ALEPH0,
            sib: Sib::One,
            embeds_into: vec![],
            embeds_from: vec![],
        };
        let decls = Declarations::new(vec![decl("r1"), decl("r2")]).unwrap();
        let d = parse_dsc("aleph1*C^1 + aleph0*C^2 + X(r1) + X(r2)", &decls).unwrap();
        let r = general(&d);
        assert_eq!((r.count, r.certificate.rule), (SibCount::ONE, Rule::Generalnoincreasing));
    }

    #[test]
    fn finitely_many_trivial_with_increasing() {
        let r = general(&p("2*C^1 + aleph0*w"));
        assert_eq!(r.certificate.rule, Rule::Pairwisedisincreasing);
        let r = general(&p("2*C^1 + aleph0*C^2"));
        assert_eq!(r.certificate.rule, Rule::Generalpairwisedisincreasing1);
        let r = general(&p("aleph0*w + C^3"));
        assert_eq!(r.certificate.rule, Rule::Infsibfinitetrivial);
        let r = general(&p("aleph1*C^1 + aleph1*C^2 + Did"));
        assert_eq!(r.certificate.rule, Rule::Generalpairwisedisincreasing1);
    }

    #[test]
    fn purely_finite_descriptions_have_one_sibling() {
        for s in ["C^1", "3*C^2 + C^5", "A^4 + C^7"] {
            assert_eq!(general(&p(s)).count, SibCount::ONE);
        }
    }

    #[test]
    fn tampered_certificates_fail_replay() {
        let d = p("aleph1*C^1 + aleph0*C^3");
        let mut r = classify_general(&d);
        r.certificate.witness =
            Witness::LambdaPair { i: 1, j: 3, lambda_i: Cardinal::Aleph(1), lambda_j: Cardinal::ALEPH0 };
        assert!(r.replay(&d).is_err());
        let d = p("aleph0*C^2");
        let mut r = classify_countable(&d).unwrap();
        r.certificate.rule = Rule::Strictlyinc;
        assert!(r.replay(&d).is_err());
    }
}
