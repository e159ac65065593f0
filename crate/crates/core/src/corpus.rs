//! Seeded random descriptions for property suites and the classifier corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cardinal::Cardinal;
use crate::dsc::{normalize, DscDescription, Term};
use crate::ordertype::{Declaration, Declarations, OrderType, Ordinal, Sib};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    /// Multiplicities and sizes stay at most `ℵ_0`.
    pub countable: bool,
    pub max_classes: usize,
    pub max_families: usize,
    pub max_finite_size: u64,
    pub declared: bool,
}

impl Shape {
    pub const GENERAL: Shape =
        Shape { countable: false, max_classes: 5, max_families: 1, max_finite_size: 5, declared: true };
    pub const COUNTABLE: Shape = Shape { countable: true, ..Shape::GENERAL };
}

/// Declared chains used by generated descriptions: two rigid countable
/// chains, one with `ℵ_0` siblings, and an uncountable pair `a ↪ b`.
pub fn corpus_declarations() -> Declarations {
    let decl = |name: &str, size: Cardinal, sib: Sib, into: &[&str]| Declaration {
        name: name.into(),
        size,
        sib,
        embeds_into: into.iter().map(|s| s.to_string()).collect(),
        embeds_from: vec![],
    };
    Declarations::new(vec![
        decl("r1", Cardinal::ALEPH0, Sib::One, &[]),
        decl("r2", Cardinal::ALEPH0, Sib::One, &[]),
        decl("s", Cardinal::ALEPH0, Sib::Aleph0, &[]),
        decl("a", Cardinal::Aleph(1), Sib::One, &["b"]),
        decl("b", Cardinal::Aleph(1), Sib::One, &[]),
    ])
    .expect("consistent declarations")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ordinal(rng: &mut impl Rng) -> Ordinal {
    let mut exps: Vec<u32> = (1..=3).filter(|_| rng.gen_bool(0.5)).collect();
    if exps.is_empty() {
        exps.push(1);
    }
    exps.reverse();
    let terms = exps.into_iter().map(|e| (e, rng.gen_range(1..=2))).collect();
    Ordinal::new(terms, rng.gen_range(0..=2)).expect("normal form")
}

pub fn order_type(rng: &mut impl Rng, shape: &Shape, decls: &Declarations) -> OrderType {
    match rng.gen_range(0..10) {
        0..=4 => OrderType::Fin(rng.gen_range(1..=shape.max_finite_size)),
        5 | 6 => OrderType::Ord(ordinal(rng)),
        7 => OrderType::Rev(ordinal(rng)),
        8 => OrderType::EtaTail(rng.gen_range(0..=2)),
        _ if shape.declared => {
            let names: Vec<&str> = decls.names().collect();
            let ty = decls.get(names.choose(rng).expect("non-empty")).expect("declared");
            if shape.countable && !ty.size().is_countable() {
                OrderType::omega()
            } else {
                ty
            }
        }
        _ => OrderType::omega(),
    }
}

pub fn multiplicity(rng: &mut impl Rng, countable: bool) -> Cardinal {
    match rng.gen_range(0..10) {
        0..=4 => Cardinal::Finite(rng.gen_range(1..=3)),
        5..=7 => Cardinal::ALEPH0,
        8 if !countable => Cardinal::Aleph(1),
        9 if !countable => Cardinal::Aleph(rng.gen_range(1..=3)),
        _ => Cardinal::ALEPH0,
    }
}

pub fn description(rng: &mut impl Rng, shape: &Shape, decls: &Declarations) -> DscDescription {
    let classes = rng.gen_range(0..=shape.max_classes);
    let mut terms: Vec<Term> =
        (0..classes).map(|_| Term::Class(order_type(rng, shape, decls), multiplicity(rng, shape.countable))).collect();
    for _ in 0..rng.gen_range(0..=shape.max_families) {
        if rng.gen_bool(0.4) {
            terms.push(Term::Family { step: rng.gen_range(1..=3), start: rng.gen_range(1..=4) });
        }
    }
    normalize(terms).expect("positive multiplicities")
}

/// `n` descriptions from `seed`, alternating countable and general shapes.
pub fn corpus(seed: u64, n: usize) -> Vec<DscDescription> {
    let decls = corpus_declarations();
    let mut r = rng(seed);
    (0..n)
        .map(|i| {
            let shape = if i % 2 == 0 { Shape::COUNTABLE } else { Shape::GENERAL };
            description(&mut r, &shape, &decls)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(corpus(7, 40), corpus(7, 40));
        assert_ne!(corpus(7, 40), corpus(8, 40));
    }

    #[test]
    fn countable_shape_stays_countable() {
        let decls = corpus_declarations();
        let mut r = rng(1);
        for _ in 0..300 {
            assert!(description(&mut r, &Shape::COUNTABLE, &decls).is_countable());
        }
    }

    #[test]
    fn corpus_covers_the_variants() {
        let c = corpus(3, 300);
        assert!(c.iter().any(|d| !d.families().is_empty()));
        assert!(c.iter().any(|d| d.mentions_declared()));
        assert!(c.iter().any(|d| !d.is_countable()));
        assert!(c.iter().any(|d| d.is_purely_finite()));
        assert!(c.iter().any(|d| d.classes().iter().any(|k| matches!(k.ty, OrderType::Rev(_)))));
    }
}
