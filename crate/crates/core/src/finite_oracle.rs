//! Brute-force ground truth on explicit finite disjoint unions of chains.
//!
//! Elements are materialized as `(chain, position)` pairs and embeddings are
//! searched element by element. Nothing here consults the block-level
//! embedding engine.

use thiserror::Error;

use crate::cardinal::Cardinal;
use crate::dsc::{normalize, DscDescription, Term};

pub const DEFAULT_CAP: usize = 12;
pub const SWEEP_CAP: usize = 7;
pub const DEFAULT_WITNESS_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("poset of size {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("chains have at least one element")]
    EmptyChain,
    #[error("description is not finite: {0}")]
    NotFinite(String),
    #[error("no embedding exists")]
    NotEmbeddable,
}

pub type Element = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    chains: Vec<usize>,
}

impl FinitePoset {
    pub fn new(chains: Vec<usize>) -> Result<Self, OracleError> {
        FinitePoset::with_cap(chains, DEFAULT_CAP)
    }

    pub fn with_cap(chains: Vec<usize>, cap: usize) -> Result<Self, OracleError> {
        if chains.contains(&0) {
            return Err(OracleError::EmptyChain);
        }
        let p = FinitePoset { chains };
        p.within(cap)?;
        Ok(p)
    }

    fn within(&self, cap: usize) -> Result<(), OracleError> {
        let size = self.size();
        if size > cap {
            return Err(OracleError::CapExceeded { size, cap });
        }
        Ok(())
    }

    pub fn chains(&self) -> &[usize] {
        &self.chains
    }

    pub fn size(&self) -> usize {
        self.chains.iter().sum()
    }

    pub fn elements(&self) -> Vec<Element> {
        self.chains.iter().enumerate().flat_map(|(c, &len)| (0..len).map(move |i| (c, i))).collect()
    }

    /// The order: comparable iff in the same chain, then by position.
    pub fn leq(a: Element, b: Element) -> bool {
        a.0 == b.0 && a.1 <= b.1
    }

    pub fn from_description(d: &DscDescription, cap: usize) -> Result<Self, OracleError> {
        if !d.families().is_empty() {
            return Err(OracleError::NotFinite(d.to_string()));
        }
        let mut chains = Vec::new();
        for c in d.classes() {
            let (Some(n), Some(k)) = (c.ty.finite_size(), c.mult.finite()) else {
                return Err(OracleError::NotFinite(d.to_string()));
            };
            let size = (n as usize).saturating_mul(k as usize);
            if size > cap {
                return Err(OracleError::CapExceeded { size, cap });
            }
            chains.extend(std::iter::repeat_n(n as usize, k as usize));
        }
        FinitePoset::with_cap(chains, cap)
    }

    /// Replace each infinite component by `C^k` and each family by its
    /// members of size at most `k`.
    pub fn truncate(d: &DscDescription, k: usize, cap: usize) -> Result<Self, OracleError> {
        let mut chains = Vec::new();
        for c in d.classes() {
            let n = c.ty.finite_size().map_or(k, |n| n as usize);
            let Some(mult) = c.mult.finite() else {
                return Err(OracleError::NotFinite(d.to_string()));
            };
            if mult as usize > cap {
                return Err(OracleError::CapExceeded { size: mult as usize, cap });
            }
            chains.extend(std::iter::repeat_n(n, mult as usize));
        }
        for f in d.families() {
            chains.extend((0..).map(|i| f.member(i) as usize).take_while(|&s| s <= k));
        }
        FinitePoset::with_cap(chains, cap)
    }

    pub fn to_description(&self) -> DscDescription {
        normalize(self.chains.iter().map(|&n| Term::fin(n as u64, Cardinal::ONE))).expect("positive sizes")
    }
}

struct Search<'a> {
    src: Vec<Element>,
    dst: Vec<Element>,
    used: Vec<bool>,
    image: Vec<usize>,
    visit: &'a mut dyn FnMut(&[Element], &[usize]) -> bool,
}

impl Search<'_> {
    /// Returns `false` once the visitor asks to stop.
    fn extend(&mut self, k: usize) -> bool {
        if k == self.src.len() {
            return (self.visit)(&self.src, &self.image);
        }
        let x = self.src[k];
        for y in 0..self.dst.len() {
            if self.used[y] {
                continue;
            }
            let consistent = (0..k).all(|i| {
                let (xi, yi) = (self.src[i], self.dst[self.image[i]]);
                FinitePoset::leq(xi, x) == FinitePoset::leq(yi, self.dst[y])
                    && FinitePoset::leq(x, xi) == FinitePoset::leq(self.dst[y], yi)
            });
            if !consistent {
                continue;
            }
            self.used[y] = true;
            self.image.push(y);
            let go_on = self.extend(k + 1);
            self.image.pop();
            self.used[y] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn search(p: &FinitePoset, q: &FinitePoset, visit: &mut dyn FnMut(&[Element], &[usize]) -> bool) {
    let dst = q.elements();
    let mut s = Search { src: p.elements(), used: vec![false; dst.len()], dst, image: Vec::new(), visit };
    s.extend(0);
}

/// An embedding of `p` into `q` as an element map, if one exists.
pub fn brute_embeds(p: &FinitePoset, q: &FinitePoset) -> Result<Option<Vec<(Element, Element)>>, OracleError> {
    brute_embeds_with_cap(p, q, DEFAULT_CAP)
}

pub fn brute_embeds_with_cap(
    p: &FinitePoset,
    q: &FinitePoset,
    cap: usize,
) -> Result<Option<Vec<(Element, Element)>>, OracleError> {
    p.within(cap)?;
    q.within(cap)?;
    let dst = q.elements();
    let mut found = None;
    search(p, q, &mut |src, image| {
        found = Some(src.iter().zip(image).map(|(&x, &y)| (x, dst[y])).collect());
        false
    });
    Ok(found)
}

/// Isomorphism: equal multisets of chain sizes.
pub fn brute_iso(p: &FinitePoset, q: &FinitePoset) -> Result<bool, OracleError> {
    p.within(DEFAULT_CAP)?;
    q.within(DEFAULT_CAP)?;
    let (mut a, mut b) = (p.chains.clone(), q.chains.clone());
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b)
}

/// Isomorphism by searching for an order-preserving bijection.
pub fn brute_iso_search(p: &FinitePoset, q: &FinitePoset) -> Result<bool, OracleError> {
    if p.size() != q.size() {
        p.within(DEFAULT_CAP)?;
        q.within(DEFAULT_CAP)?;
        return Ok(false);
    }
    // an injective map between equal finite sets is onto
    Ok(brute_embeds(p, q)?.is_some())
}

/// Every embedding found (up to `budget`) maps each source chain into a
/// single target chain, and distinct source chains into distinct ones.
pub fn induced_injection_check(p: &FinitePoset, q: &FinitePoset, budget: usize) -> Result<bool, OracleError> {
    induced_injection_check_with_cap(p, q, budget, DEFAULT_CAP)
}

pub fn induced_injection_check_with_cap(
    p: &FinitePoset,
    q: &FinitePoset,
    budget: usize,
    cap: usize,
) -> Result<bool, OracleError> {
    p.within(cap)?;
    q.within(cap)?;
    let dst = q.elements();
    let mut seen = 0usize;
    let mut ok = true;
    search(p, q, &mut |src, image| {
        seen += 1;
        let mut hat: Vec<Option<usize>> = vec![None; p.chains.len()];
        for (x, &y) in src.iter().zip(image) {
            let target = dst[y].0;
            match hat[x.0] {
                None => hat[x.0] = Some(target),
                Some(t) if t != target => ok = false,
                Some(_) => {}
            }
        }
        let mut targets: Vec<usize> = hat.iter().flatten().copied().collect();
        targets.sort_unstable();
        let before = targets.len();
        targets.dedup();
        ok &= before == targets.len();
        ok && seen < budget
    });
    if seen == 0 {
        return Err(OracleError::NotEmbeddable);
    }
    Ok(ok)
}

/// Sorted-descending sizes of `p` matched index by index against `q`.
pub fn greedy_multiset_embeds(p: &FinitePoset, q: &FinitePoset) -> bool {
    let (mut a, mut b) = (p.chains.clone(), q.chains.clone());
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    a.len() <= b.len() && a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// Every non-empty multiset of chain sizes with total at most `cap`.
pub fn all_posets(cap: usize) -> Vec<FinitePoset> {
    fn go(remaining: usize, largest: usize, acc: &mut Vec<usize>, out: &mut Vec<FinitePoset>) {
        if !acc.is_empty() {
            out.push(FinitePoset { chains: acc.clone() });
        }
        for n in (1..=largest.min(remaining)).rev() {
            acc.push(n);
            go(remaining - n, n, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(cap, cap, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutualEmbedReport {
    pub pairs: usize,
    pub mutual: usize,
    pub counterexamples: Vec<(FinitePoset, FinitePoset)>,
}

/// Over all pairs with total size at most `cap`: mutual embeddability implies
/// isomorphism.
pub fn check_mutual_embed_implies_iso(cap: usize) -> Result<MutualEmbedReport, OracleError> {
    let posets = all_posets(cap);
    let limit = cap.max(DEFAULT_CAP);
    let mut report = MutualEmbedReport { pairs: 0, mutual: 0, counterexamples: Vec::new() };
    for p in &posets {
        for q in &posets {
            report.pairs += 1;
            let there = brute_embeds_with_cap(p, q, limit)?.is_some();
            if there && brute_embeds_with_cap(q, p, limit)?.is_some() {
                report.mutual += 1;
                if !brute_iso(p, q)? {
                    report.counterexamples.push((p.clone(), q.clone()));
                }
            }
        }
    }
    Ok(report)
}
