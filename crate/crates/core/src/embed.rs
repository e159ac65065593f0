//! Embeddability and equimorphy of direct sums of chains.
//!
//! An embedding of `⊕ C_i` into `⊕ C'_j` sends each (connected) component into
//! a single target component, and two components never share a target since
//! they would need two incomparable elements inside a chain. So `D ↪ D'` iff
//! there is an injection `f̂` of components with `C_i ↪ C'_{f̂(i)}`.
//!
//! On finitely presented descriptions this is a transversal problem between
//! blocks with cardinal multiplicities. A source family behaves as `ℵ_0`
//! finite chains of unbounded size; a target family behaves as a block of
//! capacity `ℵ_0` that accepts every finite chain (any countable set of finite
//! chains can be placed greedily into distinct, larger members).
//!
//! The verdict is computed twice:
//!
//! * **Hall scan.** For every set `S` of source blocks, the demand of `S` must
//!   not exceed the total capacity of targets compatible with some member of
//!   `S`. Finite sources have nested neighbourhoods (ordered by size), so it is
//!   enough to combine each subset of infinite-type classes with the finite
//!   sources above each size threshold `1` or `m + 1`, `m` a target size.
//! * **Construction.** A source block of multiplicity `μ` is sent whole to a
//!   compatible target of infinite capacity `ν ≥ μ`; finitely many blocks each
//!   of size `≤ ν` still fit into `ν`. What remains has finite multiplicity and
//!   only finite-capacity neighbours, and is solved as a finite max-flow.
//!
//! If Hall's condition holds, every infinite source finds a large enough
//! target in its own neighbourhood and the residual finite problem satisfies
//! the finite Hall condition, so the two routes agree.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cardinal::Cardinal;
use crate::dsc::DscDescription;
use crate::ordertype::chain_embeds;

pub const DEFAULT_SCAN_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("{count} source classes exceed the subset-scan limit of {limit}")]
    TooManyClasses { count: usize, limit: usize },
    #[error("Hall scan and assignment construction disagree: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockRef {
    Class(usize),
    Family(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub source: BlockRef,
    pub target: BlockRef,
    pub amount: Cardinal,
}

/// Component-level witness of an embedding.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    pub transfers: Vec<Transfer>,
}

/// A set of source blocks whose demand exceeds what its neighbours can hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallViolation {
    pub sources: Vec<String>,
    pub demand: Cardinal,
    pub supply: Cardinal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    Embeds(Assignment),
    Blocked(HallViolation),
}

impl Embedding {
    pub fn holds(&self) -> bool {
        matches!(self, Embedding::Embeds(_))
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            Embedding::Embeds(a) => Some(a),
            Embedding::Blocked(_) => None,
        }
    }
}

fn block_label(d: &DscDescription, b: BlockRef) -> String {
    match b {
        BlockRef::Class(i) => d.classes()[i].ty.to_string(),
        BlockRef::Family(i) => d.families()[i].to_string(),
    }
}

fn capacity(d: &DscDescription, b: BlockRef) -> Cardinal {
    match b {
        BlockRef::Class(i) => d.classes()[i].mult,
        BlockRef::Family(_) => Cardinal::ALEPH0,
    }
}

/// Whether every component of source block `s` embeds in every component of
/// target block `t`.
fn compatible(src: &DscDescription, s: BlockRef, dst: &DscDescription, t: BlockRef) -> bool {
    match (s, t) {
        (BlockRef::Class(i), BlockRef::Class(j)) => chain_embeds(&src.classes()[i].ty, &dst.classes()[j].ty),
        (BlockRef::Class(i), BlockRef::Family(_)) => src.classes()[i].ty.is_finite(),
        // all members, of unbounded size, into one component each
        (BlockRef::Family(_), BlockRef::Class(j)) => !dst.classes()[j].ty.is_finite(),
        (BlockRef::Family(_), BlockRef::Family(_)) => true,
    }
}

fn source_blocks(d: &DscDescription) -> impl Iterator<Item = BlockRef> {
    (0..d.classes().len()).map(BlockRef::Class).chain((0..d.families().len()).map(BlockRef::Family))
}

impl Assignment {
    /// Check the transfer invariants against the two descriptions.
    pub fn validate(&self, src: &DscDescription, dst: &DscDescription) -> Result<(), String> {
        let mut out: Vec<(BlockRef, Cardinal)> = source_blocks(src).map(|b| (b, Cardinal::ZERO)).collect();
        let mut inc: Vec<(BlockRef, Cardinal)> = source_blocks(dst).map(|b| (b, Cardinal::ZERO)).collect();
        for t in &self.transfers {
            if t.amount.is_zero() {
                return Err("zero transfer".into());
            }
            let s = out.iter_mut().find(|(b, _)| *b == t.source).ok_or("unknown source block")?;
            s.1 = s.1 + t.amount;
            let d = inc.iter_mut().find(|(b, _)| *b == t.target).ok_or("unknown target block")?;
            d.1 = d.1 + t.amount;
            if !compatible(src, t.source, dst, t.target) {
                return Err(format!("{} does not embed in {}", block_label(src, t.source), block_label(dst, t.target)));
            }
        }
        for (b, total) in out {
            if total != capacity(src, b) {
                return Err(format!("{} sends {total}, expected {}", block_label(src, b), capacity(src, b)));
            }
        }
        for (b, total) in inc {
            if total > capacity(dst, b) {
                return Err(format!("{} receives {total}, capacity {}", block_label(dst, b), capacity(dst, b)));
            }
        }
        Ok(())
    }

    pub fn render(&self, src: &DscDescription, dst: &DscDescription) -> Vec<String> {
        self.transfers
            .iter()
            .map(|t| format!("{} -> {} x{}", block_label(src, t.source), block_label(dst, t.target), t.amount))
            .collect()
    }
}

/// Hall condition over source blocks; `Err` carries a violating set.
pub fn hall_scan(src: &DscDescription, dst: &DscDescription) -> Result<(), HallViolation> {
    let infinite: Vec<usize> = (0..src.classes().len()).filter(|&i| !src.classes()[i].ty.is_finite()).collect();
    let finite: Vec<(usize, u64)> =
        src.classes().iter().enumerate().filter_map(|(i, c)| c.ty.finite_size().map(|n| (i, n))).collect();
    let mut thresholds: Vec<Option<u64>> = vec![None, Some(1)];
    thresholds.extend(dst.classes().iter().filter_map(|c| c.ty.finite_size()).map(|m| Some(m + 1)));
    thresholds.sort();
    thresholds.dedup();

    let targets: Vec<BlockRef> = source_blocks(dst).collect();
    for mask in 0u64..(1u64 << infinite.len()) {
        let chosen: Vec<usize> = (0..infinite.len()).filter(|b| mask >> b & 1 == 1).map(|b| infinite[b]).collect();
        for &threshold in &thresholds {
            let mut members: Vec<BlockRef> = chosen.iter().map(|&i| BlockRef::Class(i)).collect();
            if let Some(s) = threshold {
                let before = members.len();
                members.extend(finite.iter().filter(|&&(_, n)| n >= s).map(|&(i, _)| BlockRef::Class(i)));
                members.extend((0..src.families().len()).map(BlockRef::Family));
                if members.len() == before {
                    continue;
                }
            }
            if members.is_empty() {
                continue;
            }
            let demand: Cardinal = members.iter().map(|&b| capacity(src, b)).sum();
            let neighbour = |t: BlockRef| -> bool {
                chosen.iter().any(|&i| compatible(src, BlockRef::Class(i), dst, t))
                    || threshold.is_some_and(|s| match t {
                        BlockRef::Family(_) => true,
                        BlockRef::Class(j) => dst.classes()[j].ty.finite_size().is_none_or(|m| m >= s),
                    })
            };
            let supply: Cardinal = targets.iter().filter(|&&t| neighbour(t)).map(|&t| capacity(dst, t)).sum();
            if demand > supply {
                return Err(HallViolation {
                    sources: members.iter().map(|&b| block_label(src, b)).collect(),
                    demand,
                    supply,
                });
            }
        }
    }
    Ok(())
}

/// Build an assignment directly, or `None` if there is none.
pub fn construct_assignment(src: &DscDescription, dst: &DscDescription) -> Option<Assignment> {
    let targets: Vec<BlockRef> = source_blocks(dst).collect();
    let mut transfers = Vec::new();
    let mut residual: Vec<usize> = Vec::new();

    for (i, class) in src.classes().iter().enumerate() {
        let s = BlockRef::Class(i);
        let fits = |t: &&BlockRef| {
            let cap = capacity(dst, **t);
            cap.is_infinite() && cap >= class.mult && compatible(src, s, dst, **t)
        };
        // prefer the identical class, then the canonical order
        let same =
            targets.iter().filter(fits).find(|t| matches!(t, BlockRef::Class(j) if dst.classes()[*j].ty == class.ty));
        match same.or_else(|| targets.iter().find(fits)) {
            Some(&t) => transfers.push(Transfer { source: s, target: t, amount: class.mult }),
            None if class.mult.is_infinite() => return None,
            None => residual.push(i),
        }
    }

    for (k, fam) in src.families().iter().enumerate() {
        let s = BlockRef::Family(k);
        let universal = |t: &&BlockRef| capacity(dst, **t).is_infinite() && compatible(src, s, dst, **t);
        let same =
            targets.iter().filter(universal).find(|t| matches!(t, BlockRef::Family(g) if dst.families()[*g] == *fam));
        let t = same.or_else(|| targets.iter().find(universal))?;
        transfers.push(Transfer { source: s, target: *t, amount: Cardinal::ALEPH0 });
    }

    if !residual.is_empty() {
        let finite_targets: Vec<usize> =
            (0..dst.classes().len()).filter(|&j| dst.classes()[j].mult.is_finite()).collect();
        let demand: Vec<u64> = residual.iter().map(|&i| src.classes()[i].mult.finite().expect("finite")).collect();
        let supply: Vec<u64> =
            finite_targets.iter().map(|&j| dst.classes()[j].mult.finite().expect("finite")).collect();
        let edges: Vec<Vec<bool>> = residual
            .iter()
            .map(|&i| {
                finite_targets.iter().map(|&j| chain_embeds(&src.classes()[i].ty, &dst.classes()[j].ty)).collect()
            })
            .collect();
        let flow = max_flow(&demand, &supply, &edges)?;
        for (a, &i) in residual.iter().enumerate() {
            for (b, &j) in finite_targets.iter().enumerate() {
                if flow[a][b] > 0 {
                    transfers.push(Transfer {
                        source: BlockRef::Class(i),
                        target: BlockRef::Class(j),
                        amount: Cardinal::Finite(flow[a][b]),
                    });
                }
            }
        }
    }
    Some(Assignment { transfers })
}

/// Edmonds–Karp on the block graph; `None` unless every demand is routed.
fn max_flow(demand: &[u64], supply: &[u64], edges: &[Vec<bool>]) -> Option<Vec<Vec<u64>>> {
    let (ns, nt) = (demand.len(), supply.len());
    let n = ns + nt + 2;
    let (source, sink) = (n - 2, n - 1);
    let unbounded: u64 = demand.iter().copied().fold(0u64, u64::saturating_add).saturating_add(1);
    let mut cap = vec![vec![0u64; n]; n];
    for (i, &d) in demand.iter().enumerate() {
        cap[source][i] = d;
        for j in 0..nt {
            if edges[i][j] {
                cap[i][ns + j] = unbounded;
            }
        }
    }
    for (j, &s) in supply.iter().enumerate() {
        cap[ns + j][sink] = s;
    }
    let original = cap.clone();
    let mut total: u64 = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            break;
        }
        let mut bottleneck = u64::MAX;
        let mut v = sink;
        while v != source {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u][v]);
            v = u;
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
        total += bottleneck;
    }
    if total != demand.iter().sum::<u64>() {
        return None;
    }
    let flows = (0..ns)
        .map(|i| (0..nt).map(|j| original[i][ns + j].saturating_sub(cap[i][ns + j]).min(demand[i])).collect())
        .collect();
    Some(flows)
}

/// Decide `src ↪ dst`, with an assignment or a violated Hall set as witness.
pub fn dsc_embeds(src: &DscDescription, dst: &DscDescription) -> Result<Embedding, EmbedError> {
    dsc_embeds_with_limit(src, dst, DEFAULT_SCAN_LIMIT)
}

pub fn dsc_embeds_with_limit(
    src: &DscDescription,
    dst: &DscDescription,
    limit: usize,
) -> Result<Embedding, EmbedError> {
    let count = src.classes().len() + src.families().len();
    if count > limit {
        return Err(EmbedError::TooManyClasses { count, limit });
    }
    match (hall_scan(src, dst), construct_assignment(src, dst)) {
        (Ok(()), Some(a)) => Ok(Embedding::Embeds(a)),
        (Err(v), None) => Ok(Embedding::Blocked(v)),
        (Ok(()), None) => Err(EmbedError::Internal(format!("Hall holds but no assignment for {src} into {dst}"))),
        (Err(v), Some(_)) => {
            Err(EmbedError::Internal(format!("assignment found despite violated set {:?}", v.sources)))
        }
    }
}

pub fn embeds(src: &DscDescription, dst: &DscDescription) -> Result<bool, EmbedError> {
    dsc_embeds(src, dst).map(|e| e.holds())
}

/// Mutual embeddability.
pub fn equimorphic(a: &DscDescription, b: &DscDescription) -> Result<bool, EmbedError> {
    Ok(embeds(a, b)? && embeds(b, a)?)
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} x{}", self.source, self.target, self.amount)
    }
}
