//! Chain embeddability against independent oracles.

use dsc_core::finite_oracle::{brute_embeds, FinitePoset};
use dsc_core::ordertype::{chain_embeds, chain_equimorphic, OrderType, Ordinal};

/// Coefficients of `ω^3, ω^2, ω, 1`.
type Cnf = [u64; 4];

fn all_cnf() -> Vec<Cnf> {
    let mut out = Vec::new();
    for c3 in 0..=2 {
        for c2 in 0..=2 {
            for c1 in 0..=2 {
                for tail in 0..=3 {
                    if c3 + c2 + c1 > 0 {
                        out.push([c3, c2, c1, tail]);
                    }
                }
            }
        }
    }
    out
}

fn to_ordinal(c: &Cnf) -> Ordinal {
    let terms = [(3, c[0]), (2, c[1]), (1, c[2])].into_iter().filter(|&(_, k)| k > 0).collect();
    Ordinal::new(terms, c[3]).unwrap()
}

/// Ordinal addition on coefficient vectors: the left summand's terms below
/// the right summand's leading exponent are absorbed.
fn cnf_plus(a: &Cnf, b: &Cnf) -> Cnf {
    let lead = b.iter().position(|&k| k > 0).unwrap_or(4);
    let mut out = [0; 4];
    for i in 0..4 {
        out[i] = match i.cmp(&lead) {
            std::cmp::Ordering::Less => a[i],
            std::cmp::Ordering::Equal => a[i] + b[i],
            std::cmp::Ordering::Greater => b[i],
        };
    }
    out
}

#[test]
fn ordinals_embed_by_lexicographic_order() {
    let all = all_cnf();
    for a in &all {
        for b in &all {
            let (x, y) = (to_ordinal(a), to_ordinal(b));
            let expected = a <= b;
            assert_eq!(chain_embeds(&OrderType::Ord(x.clone()), &OrderType::Ord(y.clone())), expected, "{x} vs {y}");
            assert_eq!(chain_embeds(&OrderType::Rev(x.clone()), &OrderType::Rev(y.clone())), expected);
            assert!(!chain_embeds(&OrderType::Ord(x.clone()), &OrderType::Rev(y.clone())));
            if chain_equimorphic(&OrderType::Ord(x.clone()), &OrderType::Ord(y.clone())) {
                assert_eq!(a, b, "antisymmetry fails for {x} and {y}");
            }
        }
    }
}

#[test]
fn ordinal_addition_matches_coefficients() {
    let all = all_cnf();
    for a in &all {
        for b in &all {
            let sum = to_ordinal(a).plus(&to_ordinal(b));
            assert_eq!(sum, to_ordinal(&cnf_plus(a, b)));
        }
        for n in 0..4 {
            let mut e = *a;
            e[3] += n;
            assert_eq!(to_ordinal(a).plus_finite(n), to_ordinal(&e));
        }
    }
}

#[test]
fn finite_chains_against_brute_force() {
    for m in 1..=7 {
        assert!(chain_embeds(&OrderType::Fin(m as u64), &OrderType::omega()));
        assert!(!chain_embeds(&OrderType::omega(), &OrderType::Fin(m as u64)));
        for n in 1..=7 {
            let p = FinitePoset::new(vec![m]).unwrap();
            let q = FinitePoset::new(vec![n]).unwrap();
            let brute = brute_embeds(&p, &q).unwrap().is_some();
            assert_eq!(chain_embeds(&OrderType::Fin(m as u64), &OrderType::Fin(n as u64)), brute);
        }
    }
}

/// `C^1..C^64` placed in the dyadic grid `j / 2^66` of `(0, 1)` by repeated
/// midpoints towards 1.
#[test]
fn omega_truncations_fit_a_dense_grid() {
    const BITS: u32 = 66;
    let one: u128 = 1 << BITS;
    let mut points = vec![one / 2];
    while points.len() < 64 {
        let last = *points.last().unwrap();
        let mid = (last + one) / 2;
        assert_eq!((last + one) % 2, 0, "midpoint leaves the grid");
        points.push(mid);
    }
    assert!(points.windows(2).all(|w| w[0] < w[1]) && points.last() < Some(&one));
    // a further midpoint fits between any two placed points
    assert!(points.windows(2).all(|w| w[1] - w[0] >= 2));
    for n in 1..=64 {
        assert!(chain_embeds(&OrderType::Fin(n), &OrderType::eta()));
    }
    assert!(chain_embeds(&OrderType::omega(), &OrderType::eta()));
    assert!(chain_embeds(&OrderType::Rev(Ordinal::omega()), &OrderType::EtaTail(2)));
    assert!(!chain_embeds(&OrderType::eta(), &OrderType::omega()));
    for n in 0..3 {
        for m in 0..3 {
            assert!(chain_equimorphic(&OrderType::EtaTail(n), &OrderType::EtaTail(m)));
        }
    }
}
