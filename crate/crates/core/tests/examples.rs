//! Worked examples for every public operation, with brute-force or
//! recount oracles where the expected value is derived rather than quoted.

use std::cmp::Ordering;

use dsc_core::cardinal::{self, Cardinal, CardinalError, Repetition};
use dsc_core::classify::{classify_countable, classify_general, Rule, Witness};
use dsc_core::corpus::corpus_declarations;
use dsc_core::dsc::{AlephLadder, DscDescription, DscError, Family};
use dsc_core::embed::{dsc_embeds, embeds, equimorphic, Embedding};
use dsc_core::finite_oracle::{brute_embeds, brute_embeds_with_cap, brute_iso, FinitePoset};
use dsc_core::ordertype::{chain_embeds, chain_sib, sibling_variants, OrderType, Ordinal, Sib, SibCount};
use dsc_core::syntax::{parse_dsc, SyntaxError};

fn p(s: &str) -> DscDescription {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn poset(chains: &[usize]) -> FinitePoset {
    FinitePoset::new(chains.to_vec()).unwrap()
}

#[test]
fn cardinal_examples() {
    use Cardinal::*;
    assert_eq!(cardinal::cmp(Finite(3), Finite(5)), Ordering::Less);
    assert_eq!(cardinal::cmp(Aleph(1), Aleph(0)), Ordering::Greater);
    assert_eq!(cardinal::cmp(AlephOmega, Aleph(3)), Ordering::Greater);
    assert_eq!(Cardinal::sum(&[Finite(2), Finite(3)]), Ok(Finite(5)));
    assert_eq!(Cardinal::sum(&[]), Err(CardinalError::EmptyAggregate));
    assert_eq!(Cardinal::sum_with(&[Aleph(1), Aleph(2)], Repetition::UnboundedAlephs), Ok(AlephOmega));
    // absorption, and consistent with the product: ℵ1 ≤ ℵ1 + ℵ0 ≤ ℵ1·ℵ0
    let s = Cardinal::sum(&[Aleph(1), Aleph(0)]).unwrap();
    assert_eq!(s, Aleph(1));
    assert!(Aleph(1) <= s && s <= Aleph(1) * Aleph(0));
    assert_eq!(Aleph(1) * Aleph(0), Aleph(1));
    assert_eq!(Finite(2) * Finite(3), Finite(6));
    assert_eq!(Aleph(0) * Finite(0), Finite(0));
}

#[test]
fn order_type_examples() {
    let w = OrderType::omega();
    let w1 = OrderType::Ord(Ordinal::omega().plus_finite(1));
    assert_eq!(OrderType::Fin(4).size(), Cardinal::Finite(4));
    assert_eq!(w.size(), Cardinal::ALEPH0);
    assert_eq!(OrderType::eta().size(), Cardinal::ALEPH0);
    assert!(chain_embeds(&OrderType::Fin(3), &w));
    assert!(!chain_embeds(&w1, &w));
    assert!(chain_embeds(&w, &OrderType::eta()));
    assert_eq!(chain_sib(&OrderType::Fin(5)), Sib::One);
    assert_eq!(chain_sib(&OrderType::eta()), Sib::Continuum);
    let big = OrderType::Ord(Ordinal::new(vec![(2, 1), (1, 2)], 0).unwrap());
    assert_eq!(chain_sib(&big), Sib::One);
    assert_eq!(
        sibling_variants(&OrderType::eta(), 3).unwrap(),
        vec![OrderType::EtaTail(0), OrderType::EtaTail(1), OrderType::EtaTail(2)]
    );
    assert!(sibling_variants(&OrderType::Fin(2), 1).is_err());
    assert_eq!(sibling_variants(&OrderType::EtaTail(1), 1).unwrap(), vec![OrderType::EtaTail(0)]);
}

#[test]
fn description_examples() {
    assert_eq!(p("C^2 + C^2"), p("2*C^2"));
    assert_eq!(p("aleph0*C^1 + 3*C^1"), p("aleph0*C^1"));
    let dd = p("Did + Did");
    assert!(dd.classes().is_empty());
    assert_eq!(dd.families(), &[Family::IDENTITY, Family::IDENTITY]);

    let prof = p("aleph3*C^1 + aleph2*C^2 + aleph1*C^3 + aleph1*w").lambda_profile();
    assert_eq!(
        (prof.lambda(1), prof.lambda(2), prof.lambda(3)),
        (Cardinal::Aleph(3), Cardinal::Aleph(2), Cardinal::Aleph(1))
    );
    assert_eq!(prof.infinite_classes, vec![(OrderType::omega(), Cardinal::Aleph(1))]);
    let did = p("Did").lambda_profile();
    assert!((1..50).all(|n| did.lambda(n) == Cardinal::ONE));
    let five = p("5*C^1").lambda_profile();
    assert_eq!(five.lambda(1), Cardinal::Finite(5));
    assert!((2..20).all(|n| five.lambda(n) == Cardinal::ZERO));

    let all = |s: &str| {
        let a = p(s).increasing_analysis();
        (a.has_increasing, a.has_strictly_increasing, a.has_increasing_unbounded)
    };
    assert_eq!(all("aleph0*w"), (true, false, true));
    assert_eq!(all("aleph0*C^2"), (true, false, false));
    assert_eq!(all("Did"), (true, true, true));

    assert_eq!(p("aleph1*w + aleph0*(w+1)").disjoint_increasing_capacity(), Cardinal::Aleph(1));
    assert_eq!(p("3*C^2 + C^5").disjoint_increasing_capacity(), Cardinal::ZERO);
    let ladder = AlephLadder { prefix: p("aleph2*C^2 + aleph3*C^3 + aleph4*C^4") };
    assert_eq!(ladder.disjoint_increasing_capacity(), Cardinal::AlephOmega);
}

#[test]
fn sum_of_omega_has_no_strict_sequence() {
    // ⊕_ω ω has a constant increasing sequence but no strictly increasing one
    let a = p("aleph0*w").increasing_analysis();
    assert!(a.has_increasing && !a.has_strictly_increasing);
}

#[test]
fn embedding_examples() {
    let src = p("C^2 + C^2");
    let dst = p("w + C^2");
    let Embedding::Embeds(asg) = dsc_embeds(&src, &dst).unwrap() else { panic!("expected an embedding") };
    assert!(asg.validate(&src, &dst).is_ok());
    let mut lines = asg.render(&src, &dst);
    lines.sort();
    assert_eq!(lines, vec!["C^2 -> C^2 x1", "C^2 -> w x1"]);
    // oracle: the explicit poset into the truncation of ω to C^9
    let truncated = FinitePoset::truncate(&dst, 9, 16).unwrap();
    assert_eq!(truncated.chains().iter().copied().max(), Some(9));
    assert!(brute_embeds_with_cap(&poset(&[2, 2]), &truncated, 16).unwrap().is_some());

    assert!(!embeds(&p("2*C^2"), &p("C^5")).unwrap());
    assert!(embeds(&p("aleph1*w + aleph0*(w+1) + aleph1*C^1"), &p("aleph1*w + aleph0*(w+1)")).unwrap());
}

#[test]
fn equimorphy_examples() {
    assert!(equimorphic(&p("aleph0*w + Did"), &p("aleph0*w")).unwrap());
    assert!(!equimorphic(&p("3*C^1"), &p("4*C^1")).unwrap());
    assert!(equimorphic(&p("Did"), &p("Did + C^3")).unwrap());
    // oracle: a truncation of Did + C^3 fits in a longer truncation of Did,
    // and each truncation of Did sits in the same-length one of Did + C^3
    for k in 3..=5 {
        let with = FinitePoset::truncate(&p("Did + C^3"), k, 32).unwrap();
        let longer = FinitePoset::truncate(&p("Did"), k + 1, 32).unwrap();
        let same = FinitePoset::truncate(&p("Did"), k, 32).unwrap();
        assert!(brute_embeds_with_cap(&with, &longer, 32).unwrap().is_some(), "k = {k}");
        assert!(brute_embeds_with_cap(&same, &with, 32).unwrap().is_some(), "k = {k}");
        assert!(brute_embeds_with_cap(&with, &same, 32).unwrap().is_none(), "k = {k}");
    }
}

#[test]
fn countable_classification_examples() {
    let c = |s: &str| classify_countable(&p(s)).unwrap();
    let r = c("aleph0*w");
    assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Continuum), Rule::Sibincreasingunbounded));
    let r = c("Did");
    assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Continuum), Rule::Strictlyinc));

    let d = p("aleph0*C^2 + C^7");
    let r = c("aleph0*C^2 + C^7");
    assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Aleph0), Rule::Countablebounded));
    assert_eq!(r.certificate.witness, Witness::Bound { bound: 8, repeated_size: 2 });
    // recount: every component is below the bound, infinitely many are non-trivial
    let prof = d.lambda_profile();
    assert!(!prof.size_unbounded && (8..40).all(|n| prof.lambda(n).is_zero()));
    assert!(d.nontrivial_count().is_infinite());

    let d = p("w + aleph0*C^2");
    let r = c("w + aleph0*C^2");
    assert_eq!(
        (r.count, r.certificate.rule),
        (SibCount::range(Sib::Aleph0, Sib::Continuum).unwrap(), Rule::BoundsOnly)
    );
    assert!(!d.is_bounded() && !d.increasing_analysis().has_increasing_unbounded);

    let r = c("eta + C^2");
    assert_eq!((r.count, r.certificate.rule), (SibCount::Exact(Sib::Continuum), Rule::Infinitesiblingcomponent));
}

#[test]
fn general_classification_examples() {
    let inf = SibCount::Exact(Sib::Infinite);
    let r = classify_general(&p("aleph1*C^1 + aleph0*C^3"));
    assert_eq!((r.count, r.certificate.rule), (inf, Rule::Generalpairwisedisincreasing1));
    assert!(matches!(r.certificate.witness, Witness::LambdaPair { i: 2, j: 3, .. }));

    let r = classify_general(&p("aleph3*C^1 + aleph2*C^2 + aleph1*C^3 + aleph1*w"));
    assert_eq!((r.count, r.certificate.rule), (inf, Rule::Generalpairwisedisincreasing2));

    let decls = corpus_declarations();
    let d = parse_dsc("aleph1*C^1 + aleph0*C^2 + X(r1) + X(r2)", &decls).unwrap();
    let r = classify_general(&d);
    assert_eq!((r.count, r.certificate.rule), (SibCount::ONE, Rule::Generalnoincreasing));
    // recount: strict cascade of length 2, nothing of size above 2 repeats
    let q = d.at_least(3);
    assert!(!q.increasing_analysis().has_increasing && q.families().is_empty());
    r.replay(&d).unwrap();

    let d = p("aleph1*w + aleph0*(w+1) + aleph1*C^1");
    let r = classify_general(&d);
    assert_eq!((r.count, r.certificate.rule), (inf, Rule::Pairwisedisincreasing));
    assert_eq!(r.certificate.witness, Witness::Capacity { capacity: Cardinal::Aleph(1), trivial: Cardinal::Aleph(1) });
}

#[test]
fn finite_oracle_examples() {
    assert!(brute_embeds(&poset(&[2, 2]), &poset(&[3, 2])).unwrap().is_some());
    assert!(brute_embeds(&poset(&[3]), &poset(&[2, 2])).unwrap().is_none());
    assert!(brute_embeds(&poset(&[1, 1, 1]), &poset(&[1, 2])).unwrap().is_none());
    assert!(brute_iso(&poset(&[2, 3]), &poset(&[3, 2])).unwrap());
    assert!(!brute_iso(&poset(&[2, 2]), &poset(&[4])).unwrap());
    assert!(brute_iso(&poset(&[1, 2, 2]), &poset(&[1, 2, 2])).unwrap());
}

#[test]
fn parse_examples() {
    let d = p("aleph1*w + aleph0*(w+1) + A^aleph1");
    let w1 = OrderType::Ord(Ordinal::omega().plus_finite(1));
    assert_eq!(d.mult_of(&OrderType::omega()), Cardinal::Aleph(1));
    assert_eq!(d.mult_of(&w1), Cardinal::ALEPH0);
    assert_eq!(d.mult_of(&OrderType::Fin(1)), Cardinal::Aleph(1));
    assert_eq!(d.classes().len(), 3);
    assert_eq!(p("Did").families(), &[Family { step: 1, start: 1 }]);
    assert!(matches!("0*C^2".parse::<DscDescription>(), Err(SyntaxError::Dsc(DscError::ZeroMultiplicity(_)))));
}
