//! Brute-force oracles shared by the integration tests. None of them call
//! the library routine they are used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use taftcleft::ring::{parse_ring_spec, Elem, FiniteRing};
use taftcleft::taft::{TaftAlgebra, TaftParams};

pub fn ring(spec: &str) -> Arc<FiniteRing> {
    Arc::new(parse_ring_spec(spec).unwrap())
}

pub fn taft(spec: &str, n: usize, q: &str) -> Arc<TaftAlgebra> {
    let r = ring(spec);
    let q = r.parse_elem(q).unwrap();
    Arc::new(TaftAlgebra::new(TaftParams::new(r, n, q).unwrap()))
}

/// x^e by repeated multiplication.
pub fn power(r: &FiniteRing, x: Elem, e: u64) -> Elem {
    (0..e).fold(r.one(), |acc, _| r.mul(acc, x))
}

/// Units found by searching for an inverse.
pub fn units(r: &FiniteRing) -> Vec<Elem> {
    r.elements()
        .filter(|&x| r.elements().any(|y| r.mul(x, y) == r.one()))
        .collect()
}

/// Smallest e >= 1 with u^e = 1 for every unit u.
pub fn alpha(r: &FiniteRing) -> u64 {
    let us = units(r);
    let mut pows = us.clone();
    let mut e = 1;
    loop {
        if pows.iter().all(|&p| p == r.one()) {
            return e;
        }
        for (p, &u) in pows.iter_mut().zip(&us) {
            *p = r.mul(*p, u);
        }
        e += 1;
    }
}

/// Smallest b >= 1 with x^b = 0 for every nilpotent x.
pub fn beta(r: &FiniteRing) -> u64 {
    let n = r.size() as u64;
    let nil: Vec<Elem> = r
        .elements()
        .filter(|&x| power(r, x, n) == r.zero())
        .collect();
    (1..=n)
        .find(|&b| nil.iter().all(|&x| power(r, x, b) == r.zero()))
        .unwrap()
}

/// Nonzero idempotents e such that every idempotent below e (f = fe) is 0 or e.
pub fn primitive_idempotents(r: &FiniteRing) -> Vec<Elem> {
    let idem: Vec<Elem> = r.elements().filter(|&e| r.mul(e, e) == e).collect();
    idem.iter()
        .copied()
        .filter(|&e| e != r.zero())
        .filter(|&e| {
            idem.iter()
                .all(|&f| r.mul(f, e) != f || f == r.zero() || f == e)
        })
        .collect()
}

/// Integer coefficients of Phi_n, low degree first, from the product of
/// (x - exp(2 pi i k / n)) over k coprime to n in floating point.
pub fn cyclotomic_float(n: usize) -> Vec<i64> {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut coeffs: Vec<(f64, f64)> = vec![(1.0, 0.0)];
    for k in (1..=n).filter(|&k| gcd(k, n) == 1) {
        let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let root = (angle.cos(), angle.sin());
        let mut next = vec![(0.0, 0.0); coeffs.len() + 1];
        for (i, &(re, im)) in coeffs.iter().enumerate() {
            next[i + 1].0 += re;
            next[i + 1].1 += im;
            next[i].0 -= re * root.0 - im * root.1;
            next[i].1 -= re * root.1 + im * root.0;
        }
        coeffs = next;
    }
    coeffs.iter().map(|&(re, _)| re.round() as i64).collect()
}

pub fn eval_int_poly(r: &FiniteRing, coeffs: &[i64], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(r.zero(), |acc, &c| r.add(r.mul(acc, x), r.from_int(c)))
}

/// Number of cosets of the N-th powers in the unit group, times |R|.
pub fn class_count(r: &FiniteRing, n: usize) -> usize {
    let us = units(r);
    let cosets: BTreeSet<BTreeSet<Elem>> = us
        .iter()
        .map(|&u| {
            us.iter()
                .map(|&s| r.mul(power(r, s, n as u64), u))
                .collect()
        })
        .collect();
    cosets.len() * r.size()
}

/// Gaussian binomial as a sum over i-subsets of {0..n} of q^(inversions).
pub fn gaussian_binomial(r: &FiniteRing, q: Elem, n: usize, i: usize) -> Elem {
    let mut total = r.zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != i {
            continue;
        }
        // inversions: pairs (chosen position a, unchosen position b) with a < b
        let mut inv = 0u64;
        for a in 0..n {
            if mask & (1 << a) == 0 {
                continue;
            }
            for b in a + 1..n {
                if mask & (1 << b) == 0 {
                    inv += 1;
                }
            }
        }
        total = r.add(total, power(r, q, inv));
    }
    total
}
