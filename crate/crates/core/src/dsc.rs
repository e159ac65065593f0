//! Finitely presented direct sums of chains.
//!
//! A description is a finite list of component classes (an order type with a
//! cardinal multiplicity) together with affine families `⊕_{n<ω} C^{a·n+b}`.
//! Descriptions are kept normalized: classes are merged by type, sorted in the
//! canonical order of [`OrderType`], and families with `a = 0` are turned into
//! classes of multiplicity `ℵ_0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cardinal::{Cardinal, Repetition};
use crate::ordertype::OrderType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DscError {
    #[error("multiplicity must be at least 1 (got 0 for {0})")]
    ZeroMultiplicity(String),
    #[error("family sizes a·n+b need b ≥ 1")]
    EmptyFamilyMember,
}

/// The family `⊕_{n<ω} C^{step·n + start}`, `step ≥ 1`, `start ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    pub step: u64,
    pub start: u64,
}

impl Family {
    /// `D_id`: one chain of every finite size.
    pub const IDENTITY: Family = Family { step: 1, start: 1 };

    /// Size of the `n`-th member (`n` counted from 0).
    pub fn member(&self, n: u64) -> u64 {
        self.step * n + self.start
    }

    pub fn contains_size(&self, size: u64) -> bool {
        size >= self.start && (size - self.start).is_multiple_of(self.step)
    }

    /// The members of size at least `min`, as a family.
    pub fn from_size(&self, min: u64) -> Family {
        if min <= self.start {
            return *self;
        }
        let skip = (min - self.start).div_ceil(self.step);
        Family { step: self.step, start: self.member(skip) }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Family::IDENTITY {
            f.write_str("Did")
        } else {
            write!(f, "Fam({},{})", self.step, self.start)
        }
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ComponentClass {
    #[serde(rename = "type")]
    pub ty: OrderType,
    pub mult: Cardinal,
}

/// An unnormalized summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Class(OrderType, Cardinal),
    Family { step: u64, start: u64 },
}

impl Term {
    pub fn class(ty: OrderType, mult: Cardinal) -> Term {
        Term::Class(ty, mult)
    }

    pub fn fin(n: u64, mult: Cardinal) -> Term {
        Term::Class(OrderType::Fin(n), mult)
    }
}

/// A normalized direct sum of chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DscDescription {
    classes: Vec<ComponentClass>,
    families: Vec<Family>,
}

/// Merge terms into canonical form.
pub fn normalize(terms: impl IntoIterator<Item = Term>) -> Result<DscDescription, DscError> {
    let mut merged: BTreeMap<OrderType, Cardinal> = BTreeMap::new();
    let mut families = Vec::new();
    for term in terms {
        let (ty, mult) = match term {
            Term::Family { start: 0, .. } => return Err(DscError::EmptyFamilyMember),
            Term::Family { step: 0, start } => (OrderType::Fin(start), Cardinal::ALEPH0),
            Term::Family { step, start } => {
                families.push(Family { step, start });
                continue;
            }
            Term::Class(ty, mult) => (ty, mult),
        };
        if mult.is_zero() {
            return Err(DscError::ZeroMultiplicity(ty.to_string()));
        }
        if ty == OrderType::Fin(0) {
            return Err(DscError::EmptyFamilyMember);
        }
        let slot = merged.entry(ty).or_insert(Cardinal::ZERO);
        *slot = *slot + mult;
    }
    families.sort();
    let classes = merged.into_iter().map(|(ty, mult)| ComponentClass { ty, mult }).collect();
    Ok(DscDescription { classes, families })
}

/// Per-size component counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    explicit: BTreeMap<u64, Cardinal>,
    families: Vec<Family>,
    pub infinite_classes: Vec<(OrderType, Cardinal)>,
    pub size_unbounded: bool,
}

impl Profile {
    /// `λ_n`: the number of components that are chains of size exactly `n`.
    pub fn lambda(&self, n: u64) -> Cardinal {
        let explicit = self.explicit.get(&n).copied().unwrap_or(Cardinal::ZERO);
        let from_families = self.families.iter().filter(|f| f.contains_size(n)).count() as u64;
        explicit + Cardinal::Finite(from_families)
    }

    pub fn trivial_count(&self) -> Cardinal {
        self.lambda(1)
    }

    /// The largest `n` with `λ_n` infinite. Families only contribute finite
    /// counts at each size, so only explicit classes matter.
    pub fn max_infinite_size(&self) -> Option<u64> {
        self.explicit.iter().rev().find(|(_, c)| c.is_infinite()).map(|(&n, _)| n)
    }

    /// Beyond this size `λ` is periodic with period [`Profile::period`].
    pub fn horizon(&self) -> u64 {
        let explicit = self.explicit.keys().next_back().copied().unwrap_or(0);
        let family = self.families.iter().map(|f| f.start).max().unwrap_or(0);
        explicit.max(family)
    }

    pub fn period(&self) -> u64 {
        self.families.iter().fold(1, |acc, f| lcm(acc, f.step))
    }

    /// Sizes with a non-zero explicit (class) contribution.
    pub fn explicit_sizes(&self) -> impl Iterator<Item = (u64, Cardinal)> + '_ {
        self.explicit.iter().map(|(&n, &c)| (n, c))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Which kinds of increasing sequences of non-trivial components exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IncreasingAnalysis {
    pub has_increasing: bool,
    pub has_strictly_increasing: bool,
    pub has_increasing_unbounded: bool,
}

/// Where an increasing sequence of non-trivial components comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum IncreasingSource {
    /// A constant sequence inside a class of infinite multiplicity.
    Class(OrderType),
    /// The members of a family, in order.
    Family(Family),
}

impl fmt::Display for IncreasingSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncreasingSource::Class(t) => write!(f, "constant sequence of {t}"),
            IncreasingSource::Family(fam) => write!(f, "members of {fam}"),
        }
    }
}

impl DscDescription {
    pub fn empty() -> Self {
        DscDescription::default()
    }

    pub fn classes(&self) -> &[ComponentClass] {
        &self.classes
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.families.is_empty()
    }

    pub fn mult_of(&self, ty: &OrderType) -> Cardinal {
        self.classes.iter().find(|c| &c.ty == ty).map_or(Cardinal::ZERO, |c| c.mult)
    }

    /// The summands this description was normalized from (up to merging).
    pub fn terms(&self) -> Vec<Term> {
        self.classes
            .iter()
            .map(|c| Term::Class(c.ty.clone(), c.mult))
            .chain(self.families.iter().map(|f| Term::Family { step: f.step, start: f.start }))
            .collect()
    }

    /// Direct sum.
    pub fn plus(&self, other: &DscDescription) -> DscDescription {
        normalize(self.terms().into_iter().chain(other.terms())).expect("summands are valid")
    }

    pub fn with_class(&self, ty: OrderType, mult: Cardinal) -> Result<DscDescription, DscError> {
        normalize(self.terms().into_iter().chain([Term::Class(ty, mult)]))
    }

    pub fn with_family(&self, family: Family) -> DscDescription {
        let extra = Term::Family { step: family.step, start: family.start };
        normalize(self.terms().into_iter().chain([extra])).expect("valid family")
    }

    /// The components of size at least `min`; infinite components are kept.
    pub fn at_least(&self, min: u64) -> DscDescription {
        let classes = self.classes.iter().filter(|c| c.ty.finite_size().is_none_or(|n| n >= min)).cloned().collect();
        let mut families: Vec<Family> = self.families.iter().map(|f| f.from_size(min)).collect();
        families.sort();
        DscDescription { classes, families }
    }

    /// The direct sum of the non-trivial components.
    pub fn nontrivial(&self) -> DscDescription {
        self.at_least(2)
    }

    /// Number of singleton components (`λ_1`).
    pub fn trivial_count(&self) -> Cardinal {
        self.lambda_profile().trivial_count()
    }

    /// Total number of components.
    pub fn component_count(&self) -> Cardinal {
        let families = if self.families.is_empty() { Cardinal::ZERO } else { Cardinal::ALEPH0 };
        self.classes.iter().map(|c| c.mult).sum::<Cardinal>() + families
    }

    /// Number of non-trivial components.
    pub fn nontrivial_count(&self) -> Cardinal {
        self.nontrivial().component_count()
    }

    /// Countably many components, each countable.
    pub fn is_countable(&self) -> bool {
        self.classes.iter().all(|c| c.mult.is_countable() && c.ty.size().is_countable())
    }

    /// Finitely many components, each finite.
    pub fn is_purely_finite(&self) -> bool {
        self.families.is_empty() && self.classes.iter().all(|c| c.ty.is_finite() && c.mult.is_finite())
    }

    pub fn mentions_declared(&self) -> bool {
        self.classes.iter().any(|c| c.ty.mentions_declared())
    }

    /// Every component has size below some finite bound.
    pub fn is_bounded(&self) -> bool {
        !self.lambda_profile().size_unbounded
    }

    pub fn lambda_profile(&self) -> Profile {
        let mut explicit = BTreeMap::new();
        let mut infinite_classes = Vec::new();
        for c in &self.classes {
            match c.ty.finite_size() {
                Some(n) => {
                    explicit.insert(n, c.mult);
                }
                None => infinite_classes.push((c.ty.clone(), c.mult)),
            }
        }
        let size_unbounded = !self.families.is_empty() || !infinite_classes.is_empty();
        Profile { explicit, families: self.families.clone(), infinite_classes, size_unbounded }
    }

    pub fn increasing_analysis(&self) -> IncreasingAnalysis {
        let has_family = !self.families.is_empty();
        let repeated_nontrivial = self.classes.iter().any(|c| !c.ty.is_trivial() && c.mult.is_infinite());
        let repeated_infinite = self.classes.iter().any(|c| !c.ty.is_finite() && c.mult.is_infinite());
        IncreasingAnalysis {
            has_increasing: has_family || repeated_nontrivial,
            has_strictly_increasing: has_family,
            has_increasing_unbounded: has_family || repeated_infinite,
        }
    }

    /// Some increasing sequence of non-trivial components, if one exists.
    /// Families are preferred since their sequence is also strictly increasing.
    pub fn increasing_source(&self) -> Option<IncreasingSource> {
        if let Some(f) = self.families.first() {
            return Some(IncreasingSource::Family(*f));
        }
        self.classes
            .iter()
            .find(|c| !c.ty.is_trivial() && c.mult.is_infinite())
            .map(|c| IncreasingSource::Class(c.ty.clone()))
    }

    /// An increasing and unbounded sequence of non-trivial components.
    pub fn unbounded_increasing_source(&self) -> Option<IncreasingSource> {
        if let Some(f) = self.families.first() {
            return Some(IncreasingSource::Family(*f));
        }
        self.classes
            .iter()
            .find(|c| !c.ty.is_finite() && c.mult.is_infinite())
            .map(|c| IncreasingSource::Class(c.ty.clone()))
    }

    /// The largest `λ` such that `λ` pairwise disjoint increasing sequences of
    /// non-trivial components exist.
    ///
    /// Every such sequence uses infinitely many components, so it meets a
    /// class of infinite multiplicity or a family. A class of multiplicity
    /// `μ ≥ ℵ_0` splits into `μ·ℵ_0 = μ` constant sequences; a family splits
    /// into `ℵ_0` disjoint subsequences.
    pub fn disjoint_increasing_capacity(&self) -> Cardinal {
        let classes = self.classes.iter().filter(|c| !c.ty.is_trivial() && c.mult.is_infinite()).map(|c| c.mult);
        let families = self.families.iter().map(|_| Cardinal::ALEPH0);
        classes.chain(families).sum()
    }
}

/// A description whose listed classes are the finite truncation of an
/// ω-indexed schema with multiplicities climbing through every `ℵ_n`, such as
/// `⊕_{n<ω} ℵ_n · C^n`. Only the disjoint-sequence capacity is defined on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlephLadder {
    pub prefix: DscDescription,
}

impl AlephLadder {
    pub fn disjoint_increasing_capacity(&self) -> Cardinal {
        let mut mults: Vec<Cardinal> = self
            .prefix
            .classes()
            .iter()
            .filter(|c| !c.ty.is_trivial() && c.mult.is_infinite())
            .map(|c| c.mult)
            .collect();
        if mults.is_empty() {
            mults.push(Cardinal::ALEPH0);
        }
        Cardinal::sum_with(&mults, Repetition::UnboundedAlephs).expect("non-empty")
    }
}

/// The least size at which the `λ` profiles of two descriptions differ.
pub fn first_lambda_difference(a: &DscDescription, b: &DscDescription) -> Option<u64> {
    let (pa, pb) = (a.lambda_profile(), b.lambda_profile());
    let bound = pa.horizon().max(pb.horizon()) + lcm(pa.period(), pb.period());
    (1..=bound).find(|&n| pa.lambda(n) != pb.lambda(n))
}

/// Isomorphism of direct sums of chains: the same number of components of
/// each isomorphism type. Catalog types are isomorphic iff their normal forms
/// agree; a declared chain is isomorphic only to itself.
pub fn isomorphic(a: &DscDescription, b: &DscDescription) -> bool {
    let infinite = |d: &DscDescription| d.classes.iter().filter(|c| !c.ty.is_finite()).cloned().collect::<Vec<_>>();
    infinite(a) == infinite(b) && first_lambda_difference(a, b).is_none()
}
