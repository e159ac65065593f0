//! The catalog of chain order types.
//!
//! Every chain that appears as a component is one of: a finite chain `C^n`,
//! an infinite ordinal below `ω^ω` in Cantor normal form, the reverse of such
//! an ordinal, `η + n` (the rationals followed by an `n`-element chain), or a
//! user-declared opaque chain whose relations to other declared chains are
//! listed explicitly.
//!
//! Sibling numbers of catalog chains: finite chains and ordinals have a single
//! sibling. If `α ↪ β` and `β ↪ α` for well-orders, then `α ≤ β ≤ α` as
//! ordinals, hence `α = β`; a chain equimorphic to an ordinal embeds in it and
//! is therefore itself a well-order of the same type. The same argument applies
//! to reversed ordinals. `η + n` has continuum many siblings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cardinal::Cardinal;

/// An infinite ordinal `ω^{e1}·c1 + … + ω^{ek}·ck + tail` with `e1 > … > ek ≥ 1`.
///
/// The derived order (terms lexicographically, then tail) coincides with the
/// ordinal order on Cantor normal forms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    terms: Vec<(u32, u64)>,
    tail: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderTypeError {
    #[error("ordinal is not in Cantor normal form: {0}")]
    NotNormal(String),
    #[error("finite chains have at least one element")]
    EmptyChain,
    #[error("`{0}` has a single sibling")]
    SingleSibling(String),
    #[error("sibling variants of declared chain `{0}` are not known")]
    Unsupported(String),
    #[error("at least one variant must be requested")]
    NoVariants,
}

impl Ordinal {
    pub fn new(terms: Vec<(u32, u64)>, tail: u64) -> Result<Self, OrderTypeError> {
        if terms.is_empty() {
            return Err(OrderTypeError::NotNormal("at least one ω-term is required".into()));
        }
        if terms.iter().any(|&(e, c)| e == 0 || c == 0) {
            return Err(OrderTypeError::NotNormal("exponents and coefficients must be ≥ 1".into()));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(OrderTypeError::NotNormal("exponents must strictly decrease".into()));
        }
        Ok(Ordinal { terms, tail })
    }

    /// `ω^exp · coef`.
    pub fn monomial(exp: u32, coef: u64) -> Self {
        Ordinal::new(vec![(exp, coef)], 0).expect("monomial with positive exponent and coefficient")
    }

    pub fn omega() -> Self {
        Ordinal::monomial(1, 1)
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn tail(&self) -> u64 {
        self.tail
    }

    /// `self + n`.
    pub fn plus_finite(&self, n: u64) -> Self {
        Ordinal { terms: self.terms.clone(), tail: self.tail + n }
    }

    /// Ordinal addition `self + other`: the finite tail and every term of
    /// `self` below the leading exponent of `other` are absorbed.
    pub fn plus(&self, other: &Ordinal) -> Self {
        let lead = other.terms[0].0;
        let mut terms: Vec<(u32, u64)> = self.terms.iter().copied().filter(|&(e, _)| e >= lead).collect();
        let mut rest = other.terms.iter().copied();
        match terms.last_mut() {
            Some(last) if last.0 == lead => {
                let (_, c) = rest.next().expect("non-empty");
                last.1 += c;
            }
            _ => {}
        }
        terms.extend(rest);
        Ordinal { terms, tail: other.tail }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            f.write_str("w")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            if c != 1 {
                write!(f, "*{c}")?;
            }
        }
        if self.tail > 0 {
            write!(f, "+{}", self.tail)?;
        }
        Ok(())
    }
}

/// Sibling-number atoms, ordered `One < Aleph0 < Continuum < Infinite`.
///
/// `Infinite` is an infinite count whose exact cardinality is not determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sib {
    One,
    Aleph0,
    Continuum,
    Infinite,
}

impl Sib {
    pub fn is_infinite(self) -> bool {
        self != Sib::One
    }
}

impl fmt::Display for Sib {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sib::One => "1",
            Sib::Aleph0 => "aleph0",
            Sib::Continuum => "2^aleph0",
            Sib::Infinite => "inf",
        })
    }
}

impl FromStr for Sib {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" | "One" | "one" => Ok(Sib::One),
            "aleph0" | "Aleph0" => Ok(Sib::Aleph0),
            "2^aleph0" | "Continuum" | "continuum" => Ok(Sib::Continuum),
            "inf" | "Infinite" | "infinite" => Ok(Sib::Infinite),
            other => Err(format!("unknown sibling count `{other}`")),
        }
    }
}

impl Serialize for Sib {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A sibling number: exact, or known only to lie in a closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SibCount {
    Exact(Sib),
    Range(Sib, Sib),
}

impl SibCount {
    pub const ONE: SibCount = SibCount::Exact(Sib::One);

    /// `None` unless `lo < hi`.
    pub fn range(lo: Sib, hi: Sib) -> Option<SibCount> {
        (lo < hi).then_some(SibCount::Range(lo, hi))
    }

    pub fn exact(self) -> Option<Sib> {
        match self {
            SibCount::Exact(s) => Some(s),
            SibCount::Range(..) => None,
        }
    }

    pub fn bounds(self) -> (Sib, Sib) {
        match self {
            SibCount::Exact(s) => (s, s),
            SibCount::Range(lo, hi) => (lo, hi),
        }
    }

    pub fn is_range(self) -> bool {
        matches!(self, SibCount::Range(..))
    }

    /// Whether every value admitted by `self` is admitted by `other`.
    pub fn within(self, other: SibCount) -> bool {
        let (lo, hi) = self.bounds();
        let (olo, ohi) = other.bounds();
        olo <= lo && hi <= ohi
    }
}

impl fmt::Display for SibCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SibCount::Exact(s) => write!(f, "{s}"),
            SibCount::Range(lo, hi) => write!(f, "[{lo}, {hi}]"),
        }
    }
}

impl Serialize for SibCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An opaque chain known only through its declared size, sibling number and
/// embeddability relations to other declared chains.
#[derive(Debug, Clone)]
pub struct DeclaredChain {
    pub name: String,
    pub size: Cardinal,
    pub sib: Sib,
    pub embeds_into: BTreeSet<String>,
    pub embeds_from: BTreeSet<String>,
}

// Declared chains are identified by name; a `Declarations` registry keeps
// names unique.
impl PartialEq for DeclaredChain {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for DeclaredChain {}

impl PartialOrd for DeclaredChain {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DeclaredChain {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.name.cmp(&other.name)
    }
}

impl std::hash::Hash for DeclaredChain {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.name.hash(state)
    }
}

/// Raw declaration of an opaque chain, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    pub size: Cardinal,
    pub sib: Sib,
    pub embeds_into: Vec<String>,
    pub embeds_from: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeclError {
    #[error("declared chain `{0}` is defined twice")]
    Duplicate(String),
    #[error("`{0}` is not a valid chain name")]
    BadName(String),
    #[error("declared chain `{0}` must be infinite (use C^n for finite chains)")]
    FiniteSize(String),
    #[error("declared chain `{name}` refers to undeclared chain `{other}`")]
    UnknownReference { name: String, other: String },
    #[error("countable chain `{0}` cannot have an unspecified infinite sibling number")]
    CountableInfinite(String),
    #[error("`{small}` cannot embed into the smaller chain `{large}`")]
    SizeMismatch { small: String, large: String },
    #[error("equimorphic chains `{0}` and `{1}` declare different sibling numbers")]
    SibMismatch(String, String),
}

/// Validated set of declared chains, closed under the embeddability relation:
/// `a.embeds_into ∋ b` iff `b.embeds_from ∋ a`, and the relation is transitive.
#[derive(Debug, Clone, Default)]
pub struct Declarations {
    chains: BTreeMap<String, Arc<DeclaredChain>>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl Declarations {
    pub fn empty() -> Self {
        Declarations::default()
    }

    pub fn new(decls: Vec<Declaration>) -> Result<Self, DeclError> {
        let mut index = BTreeMap::new();
        for (i, d) in decls.iter().enumerate() {
            if !is_identifier(&d.name) {
                return Err(DeclError::BadName(d.name.clone()));
            }
            if index.insert(d.name.clone(), i).is_some() {
                return Err(DeclError::Duplicate(d.name.clone()));
            }
            if d.size.is_finite() {
                return Err(DeclError::FiniteSize(d.name.clone()));
            }
            if d.size.is_countable() && d.sib == Sib::Infinite {
                return Err(DeclError::CountableInfinite(d.name.clone()));
            }
        }
        let n = decls.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, d) in decls.iter().enumerate() {
            reach[i][i] = true;
            for other in &d.embeds_into {
                let j = *index
                    .get(other)
                    .ok_or_else(|| DeclError::UnknownReference { name: d.name.clone(), other: other.clone() })?;
                reach[i][j] = true;
            }
            for other in &d.embeds_from {
                let j = *index
                    .get(other)
                    .ok_or_else(|| DeclError::UnknownReference { name: d.name.clone(), other: other.clone() })?;
                reach[j][i] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let row = reach[k].clone();
                    for (cell, via) in reach[i].iter_mut().zip(row) {
                        *cell |= via;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || !reach[i][j] {
                    continue;
                }
                if decls[i].size > decls[j].size {
                    return Err(DeclError::SizeMismatch { small: decls[i].name.clone(), large: decls[j].name.clone() });
                }
                if reach[j][i] && decls[i].sib != decls[j].sib {
                    return Err(DeclError::SibMismatch(decls[i].name.clone(), decls[j].name.clone()));
                }
            }
        }
        let chains = decls
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let into = (0..n).filter(|&j| j != i && reach[i][j]).map(|j| decls[j].name.clone());
                let from = (0..n).filter(|&j| j != i && reach[j][i]).map(|j| decls[j].name.clone());
                let chain = DeclaredChain {
                    name: d.name.clone(),
                    size: d.size,
                    sib: d.sib,
                    embeds_into: into.collect(),
                    embeds_from: from.collect(),
                };
                (d.name.clone(), Arc::new(chain))
            })
            .collect();
        Ok(Declarations { chains })
    }

    pub fn get(&self, name: &str) -> Option<OrderType> {
        self.chains.get(name).map(|c| OrderType::Declared(Arc::clone(c)))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.chains.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}

/// A chain order type from the catalog.
///
/// The derived total order (by variant, then by contents) is the canonical
/// order used when normalizing descriptions; it is not embeddability.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderType {
    Fin(u64),
    Ord(Ordinal),
    Rev(Ordinal),
    EtaTail(u64),
    Declared(Arc<DeclaredChain>),
}

impl OrderType {
    pub fn fin(n: u64) -> Result<Self, OrderTypeError> {
        if n == 0 {
            return Err(OrderTypeError::EmptyChain);
        }
        Ok(OrderType::Fin(n))
    }

    pub fn omega() -> Self {
        OrderType::Ord(Ordinal::omega())
    }

    pub fn eta() -> Self {
        OrderType::EtaTail(0)
    }

    pub fn size(&self) -> Cardinal {
        match self {
            OrderType::Fin(n) => Cardinal::Finite(*n),
            OrderType::Ord(_) | OrderType::Rev(_) | OrderType::EtaTail(_) => Cardinal::ALEPH0,
            OrderType::Declared(d) => d.size,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, OrderType::Fin(_))
    }

    /// A single element.
    pub fn is_trivial(&self) -> bool {
        matches!(self, OrderType::Fin(1))
    }

    pub fn finite_size(&self) -> Option<u64> {
        match self {
            OrderType::Fin(n) => Some(*n),
            _ => None,
        }
    }

    pub fn mentions_declared(&self) -> bool {
        matches!(self, OrderType::Declared(_))
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderType::Fin(n) => write!(f, "C^{n}"),
            OrderType::Ord(o) => write!(f, "{o}"),
            OrderType::Rev(o) => write!(f, "rev({o})"),
            OrderType::EtaTail(0) => f.write_str("eta"),
            OrderType::EtaTail(n) => write!(f, "eta+{n}"),
            OrderType::Declared(d) => write!(f, "X({})", d.name),
        }
    }
}

impl Serialize for OrderType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Whether a chain of type `s` order-embeds into a chain of type `t`.
pub fn chain_embeds(s: &OrderType, t: &OrderType) -> bool {
    use OrderType::*;
    match (s, t) {
        // any n elements of a chain form C^n
        (Fin(n), t) => t.size() >= Cardinal::Finite(*n),
        (Declared(d), Declared(e)) => d.name == e.name || d.embeds_into.contains(&e.name),
        // declared relations only ever name other declared chains
        (Declared(_), _) | (_, Declared(_)) => false,
        (_, Fin(_)) => false,
        (Ord(a), Ord(b)) => a <= b,
        (Rev(a), Rev(b)) => a <= b,
        // an infinite ordinal contains ω, a reversed ordinal contains no copy of ω
        (Ord(_), Rev(_)) | (Rev(_), Ord(_)) => false,
        // every countable chain embeds in η; η is not scattered
        (_, EtaTail(_)) => true,
        (EtaTail(_), _) => false,
    }
}

/// Mutual embeddability of two chain types.
pub fn chain_equimorphic(s: &OrderType, t: &OrderType) -> bool {
    chain_embeds(s, t) && chain_embeds(t, s)
}

pub fn chain_sib(t: &OrderType) -> Sib {
    match t {
        OrderType::Fin(_) | OrderType::Ord(_) | OrderType::Rev(_) => Sib::One,
        OrderType::EtaTail(_) => Sib::Continuum,
        OrderType::Declared(d) => d.sib,
    }
}

/// `k` pairwise non-isomorphic chains, each equimorphic to `t`.
pub fn sibling_variants(t: &OrderType, k: usize) -> Result<Vec<OrderType>, OrderTypeError> {
    if k == 0 {
        return Err(OrderTypeError::NoVariants);
    }
    match t {
        // the number of elements with finitely many elements above them is
        // an isomorphism invariant of η + m
        OrderType::EtaTail(_) => Ok((0..k as u64).map(OrderType::EtaTail).collect()),
        OrderType::Declared(d) if d.sib != Sib::One => Err(OrderTypeError::Unsupported(d.name.clone())),
        _ => Err(OrderTypeError::SingleSibling(t.to_string())),
    }
}
