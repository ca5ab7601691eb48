use serde::Serialize;

use super::{cyclotomic_roots, gcd, lcm, Elem, FiniteRing};
use crate::error::{Error, Result};

/// Exponent of the unit group, nilpotency index, primitive idempotents and
/// characteristic of a finite commutative ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingStructure {
    pub alpha: u64,
    pub beta: u64,
    pub idempotents: Vec<Elem>,
    pub characteristic: u64,
}

pub fn ring_structure(ring: &FiniteRing) -> RingStructure {
    let alpha = unit_exponent(ring);
    let beta = nilpotency_index(ring);
    RingStructure {
        alpha,
        beta,
        idempotents: primitive_idempotents(ring),
        characteristic: ring.characteristic(),
    }
}

/// Smallest b >= 1 with x^b = 0 for every nilpotent x.
fn nilpotency_index(ring: &FiniteRing) -> u64 {
    let mut beta = 1;
    for x in ring.elements() {
        let mut p = x;
        for b in 1..=ring.size() as u64 {
            if p == ring.zero() {
                beta = beta.max(b);
                break;
            }
            p = ring.mul(p, x);
        }
    }
    beta
}

fn primitive_idempotents(ring: &FiniteRing) -> Vec<Elem> {
    let idem: Vec<Elem> = ring
        .elements()
        .filter(|&e| e != ring.zero() && ring.mul(e, e) == e)
        .collect();
    idem.iter()
        .copied()
        .filter(|&e| {
            // primitive: not a sum of two orthogonal nonzero idempotents
            !idem.iter().any(|&f| {
                let h = ring.sub(e, f);
                h != ring.zero() && ring.mul(h, h) == h && ring.mul(f, h) == ring.zero()
            })
        })
        .collect()
}

/// Smallest m >= 1 with q^m = 1.
pub fn multiplicative_order(ring: &FiniteRing, q: Elem) -> Result<u64> {
    if !ring.is_unit(q) {
        return Err(Error::NotUnit(ring.format(q)));
    }
    let mut p = q;
    let mut m = 1;
    while p != ring.one() {
        p = ring.mul(p, q);
        m += 1;
    }
    Ok(m)
}

/// Some t with t^n = c, by exhaustive search over the units.
pub fn has_nth_root(ring: &FiniteRing, c: Elem, n: usize) -> Result<Option<Elem>> {
    if !ring.is_unit(c) {
        return Err(Error::NotUnit(ring.format(c)));
    }
    Ok(ring
        .units()
        .into_iter()
        .find(|&t| ring.pow(t, n as u64) == c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub n: usize,
    pub n_is_unit: bool,
    pub gcd_n_char: u64,
    pub order_of_q: u64,
    pub one_minus_q_is_unit: bool,
    pub alpha: u64,
    /// All three conclusions hold (only meaningful when `n_is_unit`).
    pub ok: bool,
}

impl HypothesisReport {
    pub fn k(&self) -> u64 {
        self.alpha / self.n as u64
    }
}

/// Reports whether N is a unit and, if so, checks gcd(N, char R) = 1,
/// o(q) = N and that 1 - q is a unit.
pub fn check_hypotheses(ring: &FiniteRing, n: usize, q: Elem) -> Result<HypothesisReport> {
    if n < 2 {
        return Err(Error::BadOrder { n, min: 2 });
    }
    if !cyclotomic_roots(ring, n).contains(&q) {
        return Err(Error::NotCyclotomicRoot(ring.format(q)));
    }
    let alpha = unit_exponent(ring);
    let n_is_unit = ring.is_unit(ring.from_int(n as i64));
    let gcd_n_char = gcd(n as u64, ring.characteristic());
    let order_of_q = multiplicative_order(ring, q)?;
    let one_minus_q_is_unit = ring.is_unit(ring.sub(ring.one(), q));
    let ok = n_is_unit
        && gcd_n_char == 1
        && order_of_q == n as u64
        && alpha.is_multiple_of(n as u64)
        && one_minus_q_is_unit;
    Ok(HypothesisReport {
        n,
        n_is_unit,
        gcd_n_char,
        order_of_q,
        one_minus_q_is_unit,
        alpha,
        ok,
    })
}

/// Unit-group exponent of each local block R e, keyed by its primitive
/// idempotent e.
pub fn block_exponents(ring: &FiniteRing, idempotents: &[Elem]) -> Vec<(Elem, u64)> {
    let units = ring.units();
    idempotents
        .iter()
        .map(|&e| {
            let exponent = units
                .iter()
                .map(|&u| {
                    let x = ring.mul(u, e);
                    let (mut p, mut m) = (x, 1);
                    while p != e {
                        p = ring.mul(p, x);
                        m += 1;
                    }
                    m
                })
                .fold(1, lcm);
            (e, exponent)
        })
        .collect()
}

/// Whether the unit c is an N-th power, for N a unit of R.
///
/// A local block has unit group k^x times a p-group with p = char k, and p
/// does not divide N, so c is an N-th power iff (c e)^(alpha_e / g) = e on
/// every block, where g = gcd(alpha_e, N). The single test c^(alpha/N) = 1
/// is only equivalent when all blocks share the same exponent.
pub fn is_nth_power_by_blocks(
    ring: &FiniteRing,
    blocks: &[(Elem, u64)],
    c: Elem,
    n: usize,
) -> bool {
    blocks.iter().all(|&(e, exponent)| {
        let g = gcd(exponent, n as u64);
        ring.mul(ring.pow(c, exponent / g), e) == e
    })
}

fn unit_exponent(ring: &FiniteRing) -> u64 {
    ring.units()
        .into_iter()
        .map(|u| multiplicative_order(ring, u).expect("unit"))
        .fold(1, lcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring_spec;

    #[test]
    fn structure_examples() {
        let z5 = parse_ring_spec("Z/5").unwrap();
        let s = ring_structure(&z5);
        assert_eq!((s.alpha, s.beta), (4, 1));
        assert_eq!(s.idempotents, vec![z5.one()]);

        let z6 = parse_ring_spec("Z/6").unwrap();
        let s = ring_structure(&z6);
        assert_eq!(s.idempotents, vec![z6.from_int(3), z6.from_int(4)]);

        let z4 = parse_ring_spec("Z/4").unwrap();
        let s = ring_structure(&z4);
        assert_eq!((s.alpha, s.beta), (2, 2));

        let f = parse_ring_spec("F_5[t]/(t^2)").unwrap();
        let s = ring_structure(&f);
        assert_eq!((s.alpha, s.beta), (20, 2));
        let nilpotents = f.elements().filter(|&x| f.mul(x, x) == f.zero()).count();
        assert_eq!(nilpotents, 5);
    }

    #[test]
    fn orders_and_roots() {
        let z5 = parse_ring_spec("Z/5").unwrap();
        let z7 = parse_ring_spec("Z/7").unwrap();
        assert_eq!(multiplicative_order(&z5, z5.from_int(4)).unwrap(), 2);
        assert_eq!(multiplicative_order(&z7, z7.from_int(2)).unwrap(), 3);
        assert_eq!(multiplicative_order(&z7, z7.from_int(3)).unwrap(), 6);
        assert!(multiplicative_order(&z7, z7.zero()).is_err());

        let w = has_nth_root(&z5, z5.from_int(4), 2).unwrap().unwrap();
        assert_eq!(z5.pow(w, 2), z5.from_int(4));
        assert_eq!(has_nth_root(&z5, z5.from_int(2), 2).unwrap(), None);
        assert_eq!(has_nth_root(&z7, z7.one(), 3).unwrap(), Some(z7.one()));
        assert!(has_nth_root(&z5, z5.zero(), 2).is_err());
    }

    #[test]
    fn nth_powers_by_blocks() {
        let z15 = parse_ring_spec("Z/15").unwrap();
        let s = ring_structure(&z15);
        let blocks = block_exponents(&z15, &s.idempotents);
        assert_eq!(blocks, vec![(z15.from_int(6), 4), (z15.from_int(10), 2)]);
        let c = z15.from_int(11);
        // c^(alpha/N) = 1 without c being a square
        assert_eq!(z15.pow(c, s.alpha / 2), z15.one());
        assert_eq!(has_nth_root(&z15, c, 2).unwrap(), None);
        assert!(!is_nth_power_by_blocks(&z15, &blocks, c, 2));
        for u in z15.units() {
            let root = has_nth_root(&z15, u, 2).unwrap().is_some();
            assert_eq!(is_nth_power_by_blocks(&z15, &blocks, u, 2), root);
        }
    }

    #[test]
    fn hypotheses() {
        let z5 = parse_ring_spec("Z/5").unwrap();
        let h = check_hypotheses(&z5, 2, z5.from_int(4)).unwrap();
        assert!(h.ok && h.n_is_unit);
        assert_eq!((h.gcd_n_char, h.order_of_q), (1, 2));

        let z7 = parse_ring_spec("Z/7").unwrap();
        let h = check_hypotheses(&z7, 3, z7.from_int(2)).unwrap();
        assert!(h.ok);
        assert_eq!(h.k(), 2);

        let gf4 = parse_ring_spec("GF(2^2)").unwrap();
        let w = gf4.parse_elem("[0,1]").unwrap();
        let h = check_hypotheses(&gf4, 3, w).unwrap();
        assert!(h.ok);
        assert_eq!(h.order_of_q, 3);
        // 1 - w = 1 + w = w^2
        assert_eq!(gf4.sub(gf4.one(), w), gf4.mul(w, w));

        let z6 = parse_ring_spec("Z/6").unwrap();
        let h = check_hypotheses(&z6, 2, z6.from_int(5)).unwrap();
        assert!(!h.n_is_unit && !h.ok);

        assert!(matches!(
            check_hypotheses(&z5, 2, z5.from_int(2)),
            Err(Error::NotCyclotomicRoot(_))
        ));
    }
}
