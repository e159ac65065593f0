//! Explicit families of pairwise non-isomorphic siblings.
//!
//! Each generator checks its own output: every member is tested equimorphic
//! to the input with the embedding engine, and members are pairwise
//! non-isomorphic by [`isomorphic`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cardinal::Cardinal;
use crate::dsc::{isomorphic, normalize, DscDescription, Term};
use crate::embed::{self, EmbedError};
use crate::finite_oracle::{self, FinitePoset, SWEEP_CAP};
use crate::ordertype::{chain_equimorphic, sibling_variants, OrderType, OrderTypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("{0} does not embed in its non-trivial part with a spare singleton")]
    ConditionFails(String),
    #[error("description is not bounded")]
    NotBounded,
    #[error("not countable: {0}")]
    NotCountable(String),
    #[error("J must be infinite")]
    FiniteJ,
    #[error("description has no strictly increasing family")]
    NoStrictFamily,
    #[error("no component equimorphic to {0}")]
    AbsentTarget(String),
    #[error("expected {expected} entries, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("invalid index set: {0}")]
    BadIndexSet(String),
    #[error("at least one sibling must be requested")]
    NoSiblings,
    #[error("generated family failed verification: {0}")]
    Unverified(String),
    #[error(transparent)]
    OrderType(#[from] OrderTypeError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Verify that every member is equimorphic to `input` and that members are
/// pairwise non-isomorphic.
pub fn check_family(input: &DscDescription, members: &[DscDescription]) -> Result<(), WitnessError> {
    for m in members {
        if !embed::equimorphic(m, input)? {
            return Err(WitnessError::Unverified(format!("{m} is not equimorphic to {input}")));
        }
    }
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if isomorphic(a, b) {
                return Err(WitnessError::Unverified(format!("{a} and {b} are isomorphic")));
            }
            let small = |d: &DscDescription| FinitePoset::from_description(d, SWEEP_CAP).ok();
            if let (Some(p), Some(q)) = (small(a), small(b)) {
                if finite_oracle::brute_iso(&p, &q).unwrap_or(true) {
                    return Err(WitnessError::Unverified(format!("{a} and {b} are isomorphic as finite posets")));
                }
            }
        }
    }
    Ok(())
}

fn require_countable(d: &DscDescription) -> Result<(), WitnessError> {
    if d.is_countable() {
        Ok(())
    } else {
        Err(WitnessError::NotCountable(d.to_string()))
    }
}

/// `N ⊕ A^m` for `m = 1..=k`, `N` the non-trivial part of `d`.
pub fn padding_family(d: &DscDescription, k: usize) -> Result<Vec<DscDescription>, WitnessError> {
    if k == 0 {
        return Err(WitnessError::NoSiblings);
    }
    let n = d.nontrivial();
    let spare = d.with_class(OrderType::Fin(1), Cardinal::ONE).expect("positive multiplicity");
    if !embed::embeds(&spare, &n)? {
        return Err(WitnessError::ConditionFails(d.to_string()));
    }
    let members: Vec<DscDescription> = (1..=k as u64)
        .map(|m| n.with_class(OrderType::Fin(1), Cardinal::Finite(m)).expect("positive multiplicity"))
        .collect();
    check_family(d, &members)?;
    Ok(members)
}

/// `⊕_{t_1} C^1 ⊕ … ⊕ ⊕_{t_{n-1}} C^{n-1} ⊕ ⊕_ω C^n ⊕ F`, where `n` is the
/// largest size repeated infinitely often and `F` the components above `n`.
pub fn bounded_family(d: &DscDescription, t: &[Cardinal]) -> Result<DscDescription, WitnessError> {
    require_countable(d)?;
    if !d.is_bounded() {
        return Err(WitnessError::NotBounded);
    }
    if d.nontrivial_count().is_finite() {
        return Err(WitnessError::ConditionFails(d.to_string()));
    }
    let n = d.lambda_profile().max_infinite_size().expect("infinitely many bounded components");
    if t.len() as u64 != n - 1 {
        return Err(WitnessError::BadLength { expected: n as usize - 1, got: t.len() });
    }
    if let Some(bad) = t.iter().find(|c| !c.is_countable()) {
        return Err(WitnessError::NotCountable(bad.to_string()));
    }
    let lower = t.iter().zip(1u64..).filter(|(c, _)| !c.is_zero()).map(|(&c, size)| Term::fin(size, c));
    let upper = d
        .classes()
        .iter()
        .filter(|c| c.ty.finite_size().is_some_and(|s| s > n))
        .map(|c| Term::Class(c.ty.clone(), c.mult));
    let out = normalize(lower.chain([Term::fin(n, Cardinal::ALEPH0)]).chain(upper)).expect("valid terms");
    check_family(d, std::slice::from_ref(&out))?;
    Ok(out)
}

/// An eventually periodic set of positive integers: `head` together with
/// every `start + r + period·k` for `r` in `residues` and `k ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    head: BTreeSet<u64>,
    start: u64,
    period: u64,
    residues: BTreeSet<u64>,
}

impl IndexSet {
    pub fn new(head: BTreeSet<u64>, start: u64, period: u64, residues: BTreeSet<u64>) -> Result<Self, WitnessError> {
        if head.contains(&0) || start == 0 {
            return Err(WitnessError::BadIndexSet("positions start at 1".into()));
        }
        if residues.iter().any(|&r| r >= period.max(1)) {
            return Err(WitnessError::BadIndexSet("residues must lie below the period".into()));
        }
        Ok(IndexSet { head, start, period, residues })
    }

    pub fn all() -> Self {
        IndexSet::new(BTreeSet::new(), 1, 1, BTreeSet::from([0])).expect("valid")
    }

    /// `{start, start + step, …}`.
    pub fn progression(start: u64, step: u64) -> Self {
        IndexSet::new(BTreeSet::new(), start, step, BTreeSet::from([0])).expect("valid")
    }

    pub fn finite(head: BTreeSet<u64>) -> Result<Self, WitnessError> {
        IndexSet::new(head, 1, 0, BTreeSet::new())
    }

    pub fn is_infinite(&self) -> bool {
        self.period > 0 && !self.residues.is_empty()
    }

    fn periodic_contains(&self, n: u64) -> bool {
        self.is_infinite() && n >= self.start && self.residues.contains(&((n - self.start) % self.period))
    }

    pub fn contains(&self, n: u64) -> bool {
        self.head.contains(&n) || self.periodic_contains(n)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        if !self.head.is_empty() {
            write!(f, "{}|", join(&self.head))?;
        }
        write!(f, "{}:{}{{{}}}", self.start, self.period, join(&self.residues))
    }
}

impl FromStr for IndexSet {
    type Err = WitnessError;

    /// `all`, `evens`, `odds`, or `[h,h,…|]start:period{r,r,…}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WitnessError::BadIndexSet(s.to_string());
        let nums = |t: &str| -> Result<BTreeSet<u64>, WitnessError> {
            t.split(',').map(str::trim).filter(|x| !x.is_empty()).map(|x| x.parse().map_err(|_| bad())).collect()
        };
        match s.trim() {
            "all" => return Ok(IndexSet::all()),
            "evens" => return Ok(IndexSet::progression(2, 2)),
            "odds" => return Ok(IndexSet::progression(1, 2)),
            _ => {}
        }
        let (head, rest) = match s.split_once('|') {
            Some((h, r)) => (nums(h)?, r),
            None => (BTreeSet::new(), s),
        };
        let (start, rest) = rest.split_once(':').ok_or_else(bad)?;
        let (period, rest) = rest.split_once('{').ok_or_else(bad)?;
        let residues = nums(rest.strip_suffix('}').ok_or_else(bad)?)?;
        let start = start.trim().parse().map_err(|_| bad())?;
        let period = period.trim().parse().map_err(|_| bad())?;
        IndexSet::new(head, start, period, residues)
    }
}

/// `⊕_{n∈J} C_n ⊕ H`: `(C_n)` the members of the first family of `d`,
/// numbered from 1, and `H` the components that are not finite.
pub fn qj_family(d: &DscDescription, j: &IndexSet) -> Result<DscDescription, WitnessError> {
    require_countable(d)?;
    let family = *d.families().first().ok_or(WitnessError::NoStrictFamily)?;
    if !j.is_infinite() {
        return Err(WitnessError::FiniteJ);
    }
    let member = |pos: u64| family.member(pos - 1);
    let head =
        j.head.iter().filter(|&&pos| !j.periodic_contains(pos)).map(|&pos| Term::fin(member(pos), Cardinal::ONE));
    let periodic =
        j.residues.iter().map(|&r| Term::Family { step: family.step * j.period, start: member(j.start + r) });
    let h = d.classes().iter().filter(|c| !c.ty.is_finite()).map(|c| Term::Class(c.ty.clone(), c.mult));
    let out = normalize(head.chain(periodic).chain(h)).expect("valid terms");
    check_family(d, std::slice::from_ref(&out))?;
    Ok(out)
}

/// Replace every component equimorphic to `target` by the `i`-th sibling
/// variant of `target`, for `i < k`.
pub fn component_swap_family(
    d: &DscDescription,
    target: &OrderType,
    k: usize,
) -> Result<Vec<DscDescription>, WitnessError> {
    if !d.classes().iter().any(|c| chain_equimorphic(&c.ty, target)) {
        return Err(WitnessError::AbsentTarget(target.to_string()));
    }
    let variants = sibling_variants(target, k)?;
    let members: Vec<DscDescription> = variants
        .into_iter()
        .map(|v| {
            let terms = d.terms().into_iter().map(|t| match t {
                Term::Class(ty, mult) if chain_equimorphic(&ty, target) => Term::Class(v.clone(), mult),
                other => other,
            });
            normalize(terms).expect("valid terms")
        })
        .collect();
    check_family(d, &members)?;
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DscDescription {
        s.parse().unwrap()
    }

    #[test]
    fn padding_examples() {
        let fam = padding_family(&p("aleph0*w"), 3).unwrap();
        assert_eq!(fam, vec![p("aleph0*w + C^1"), p("aleph0*w + 2*C^1"), p("aleph0*w + 3*C^1")]);
        assert!(matches!(padding_family(&p("2*C^3"), 1), Err(WitnessError::ConditionFails(_))));
        let fam = padding_family(&p("aleph1*w + aleph0*(w+1) + A^aleph1"), 2).unwrap();
        assert_eq!(fam, vec![p("aleph1*w + aleph0*(w+1) + C^1"), p("aleph1*w + aleph0*(w+1) + 2*C^1")]);
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(bounded_family(&p("aleph0*C^2"), &[Cardinal::Finite(3)]).unwrap(), p("3*C^1 + aleph0*C^2"));
        assert_eq!(bounded_family(&p("aleph0*C^2 + C^7"), &[Cardinal::ZERO]).unwrap(), p("aleph0*C^2 + C^7"));
        assert_eq!(bounded_family(&p("aleph0*w"), &[]), Err(WitnessError::NotBounded));
        assert_eq!(
            bounded_family(&p("aleph0*C^3"), &[Cardinal::ONE]),
            Err(WitnessError::BadLength { expected: 2, got: 1 })
        );
        assert!(matches!(bounded_family(&p("aleph0*C^2"), &[Cardinal::Aleph(1)]), Err(WitnessError::NotCountable(_))));
        assert!(matches!(bounded_family(&p("aleph1*C^2"), &[Cardinal::ONE]), Err(WitnessError::NotCountable(_))));
        assert!(matches!(bounded_family(&p("3*C^2"), &[Cardinal::ONE]), Err(WitnessError::ConditionFails(_))));
    }

    #[test]
    fn bounded_family_members_differ_below_n() {
        let d = p("aleph0*C^3 + A^2 + C^5");
        let a = bounded_family(&d, &[Cardinal::ONE, Cardinal::ZERO]).unwrap();
        let b = bounded_family(&d, &[Cardinal::ONE, Cardinal::ALEPH0]).unwrap();
        check_family(&d, &[a, b]).unwrap();
    }

    #[test]
    fn qj_examples() {
        let evens = qj_family(&p("Did"), &"evens".parse().unwrap()).unwrap();
        assert_eq!(evens, p("Fam(2,2)"));
        let odds = qj_family(&p("Did"), &"odds".parse().unwrap()).unwrap();
        assert_eq!(odds, p("Fam(2,1)"));
        assert!(!isomorphic(&evens, &odds));
        assert_eq!(crate::dsc::first_lambda_difference(&evens, &odds), Some(1));
        assert_ne!(evens.lambda_profile().lambda(2), odds.lambda_profile().lambda(2));
        assert_eq!(qj_family(&p("aleph0*C^2"), &IndexSet::all()), Err(WitnessError::NoStrictFamily));
        let finite = IndexSet::finite(BTreeSet::from([1, 2])).unwrap();
        assert_eq!(qj_family(&p("Did"), &finite), Err(WitnessError::FiniteJ));
    }

    #[test]
    fn qj_keeps_infinite_components_and_head() {
        let d = p("Fam(3,2) + w + aleph0*C^4");
        let j: IndexSet = "1,3|4:2{0,1}".parse().unwrap();
        let out = qj_family(&d, &j).unwrap();
        // positions 1, 3, 4, 5, … of 2, 5, 8, …
        assert_eq!(out, p("C^2 + C^8 + Fam(6,11) + Fam(6,14) + w"));
    }

    #[test]
    fn index_set_syntax() {
        let j: IndexSet = "1,4|6:3{0,2}".parse().unwrap();
        assert_eq!(j.to_string(), "1,4|6:3{0,2}");
        assert!(j.contains(4) && j.contains(6) && j.contains(8) && !j.contains(7) && !j.contains(2));
        assert!("0|1:1{0}".parse::<IndexSet>().is_err());
        assert!("1:2{2}".parse::<IndexSet>().is_err());
        assert!("nonsense".parse::<IndexSet>().is_err());
    }

    #[test]
    fn swap_examples() {
        let eta = OrderType::eta();
        assert_eq!(component_swap_family(&p("eta + C^2"), &eta, 2).unwrap(), vec![p("eta + C^2"), p("eta+1 + C^2")]);
        assert_eq!(component_swap_family(&p("C^2"), &eta, 1), Err(WitnessError::AbsentTarget("eta".into())));
        assert_eq!(
            component_swap_family(&p("2*eta"), &eta, 3).unwrap(),
            vec![p("2*eta"), p("2*(eta+1)"), p("2*(eta+2)")]
        );
        assert!(matches!(
            component_swap_family(&p("w"), &OrderType::omega(), 2),
            Err(WitnessError::OrderType(OrderTypeError::SingleSibling(_)))
        ));
    }
}
