//! Finite commutative unital rings given by structure constants over a
//! coordinate basis.
//!
//! An element is stored as its index in the mixed-radix enumeration of the
//! coordinate vectors, so equality is coordinate-wise and every element can
//! be enumerated. Rings up to [`TABLE_LIMIT`] elements get full addition and
//! multiplication tables; larger rings fall back to structure-constant
//! arithmetic.

mod cyclotomic;
mod parse;
mod structure;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_roots, IntPoly};
pub use parse::{parse_ring_spec, parse_ring_spec_with_budget, DEFAULT_ELEMENT_BUDGET};
pub use structure::{
    block_exponents, check_hypotheses, has_nth_root, is_nth_power_by_blocks, multiplicative_order,
    ring_structure, HypothesisReport, RingStructure,
};

use std::fmt;
use std::sync::OnceLock;

use serde_json::Value;

use crate::error::{Error, Result};

/// Rings with at most this many elements carry dense operation tables.
pub const TABLE_LIMIT: usize = 1024;

/// An element of a [`FiniteRing`], identified by its enumeration index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub struct FiniteRing {
    name: String,
    moduli: Vec<u64>,
    strides: Vec<u64>,
    /// `consts[i][j]` is the coordinate vector of `e_i * e_j`.
    consts: Vec<Vec<Vec<u64>>>,
    one: Elem,
    size: usize,
    characteristic: u64,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    inverses: OnceLock<Vec<Option<Elem>>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("moduli", &self.moduli)
            .field("size", &self.size)
            .finish()
    }
}

impl FiniteRing {
    /// Builds a ring from additive moduli, structure constants and the
    /// coordinates of the identity. The caller guarantees the ring axioms.
    pub(crate) fn from_parts(
        name: String,
        moduli: Vec<u64>,
        consts: Vec<Vec<Vec<u64>>>,
        one: Vec<u64>,
        budget: u64,
    ) -> Result<Self> {
        let mut size: u64 = 1;
        for &m in &moduli {
            size = size.saturating_mul(m);
        }
        if size > budget {
            return Err(Error::RingTooLarge { size, budget });
        }
        let mut strides = Vec::with_capacity(moduli.len());
        let mut acc = 1u64;
        for &m in &moduli {
            strides.push(acc);
            acc *= m;
        }
        let mut ring = FiniteRing {
            name,
            moduli,
            strides,
            consts,
            one: Elem(0),
            size: size as usize,
            characteristic: 0,
            add_table: None,
            mul_table: None,
            inverses: OnceLock::new(),
        };
        ring.one = ring.from_coords(&one);
        ring.characteristic = ring.additive_order(ring.one);
        if ring.size <= TABLE_LIMIT {
            let n = ring.size;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for a in 0..n {
                for b in a..n {
                    let s = ring.add_slow(Elem(a as u32), Elem(b as u32)).0;
                    let p = ring.mul_slow(Elem(a as u32), Elem(b as u32)).0;
                    add[a * n + b] = s;
                    add[b * n + a] = s;
                    mul[a * n + b] = p;
                    mul[b * n + a] = p;
                }
            }
            ring.add_table = Some(add);
            ring.mul_table = Some(mul);
        }
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size as u32).map(Elem)
    }

    pub fn coords(&self, e: Elem) -> Vec<u64> {
        let mut idx = e.0 as u64;
        self.moduli
            .iter()
            .map(|&m| {
                let c = idx % m;
                idx /= m;
                c
            })
            .collect()
    }

    /// Coordinate `j` of `e`, without decoding the others.
    pub fn coord(&self, e: Elem, j: usize) -> u64 {
        (e.0 as u64 / self.strides[j]) % self.moduli[j]
    }

    pub fn from_coords(&self, coords: &[u64]) -> Elem {
        debug_assert_eq!(coords.len(), self.moduli.len());
        let idx: u64 = coords
            .iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&c, &m), &s)| (c % m) * s)
            .sum();
        Elem(idx as u32)
    }

    /// The element with a single nonzero coordinate `j` equal to one.
    pub fn basis_element(&self, j: usize) -> Elem {
        Elem(self.strides[j] as u32)
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.moduli)
            .map(|((&p, &q), &m)| (p + q) % m)
            .collect();
        self.from_coords(&s)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.coords(a), self.coords(b));
        let d = self.dim();
        let mut out = vec![0u64; d];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let s = self.consts[i][j][k];
                    if s != 0 {
                        *o = (*o + c % self.moduli[k] * s) % self.moduli[k];
                    }
                }
            }
        }
        self.from_coords(&out)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_table {
            Some(t) => Elem(t[a.index() * self.size + b.index()]),
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul_table {
            Some(t) => Elem(t[a.index() * self.size + b.index()]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let c: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        self.from_coords(&c)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of the integer `n` under the unique ring map Z -> R.
    pub fn from_int(&self, n: i64) -> Elem {
        let c: Vec<u64> = self
            .coords(self.one)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| {
                let r = n.rem_euclid(m as i64) as u64;
                (x * r) % m
            })
            .collect();
        self.from_coords(&c)
    }

    /// Scales by an integer, i.e. repeated addition.
    pub fn scale(&self, a: Elem, n: i64) -> Elem {
        let c: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (x * n.rem_euclid(m as i64) as u64) % m)
            .collect();
        self.from_coords(&c)
    }

    fn additive_order(&self, a: Elem) -> u64 {
        let mut ord = 1u64;
        for (x, &m) in self.coords(a).iter().zip(&self.moduli) {
            let o = m / gcd(*x, m);
            ord = lcm(ord, o);
        }
        ord
    }

    fn inverse_table(&self) -> &[Option<Elem>] {
        self.inverses.get_or_init(|| {
            let mut inv = vec![None; self.size];
            for a in self.elements() {
                if inv[a.index()].is_some() {
                    continue;
                }
                // Walk the powers of `a`; it is a unit iff they return to 1.
                let mut p = a;
                let mut prev = self.one;
                for _ in 0..self.size {
                    if p == self.one {
                        inv[a.index()] = Some(prev);
                        inv[prev.index()] = Some(a);
                        break;
                    }
                    prev = p;
                    p = self.mul(p, a);
                }
            }
            inv
        })
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse_table()[a.index()]
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn try_inverse(&self, a: Elem) -> Result<Elem> {
        self.inverse(a)
            .ok_or_else(|| Error::NotUnit(self.format(a)))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Human-readable element: an integer for one-coordinate rings,
    /// otherwise the coordinate vector.
    pub fn format(&self, a: Elem) -> String {
        let c = self.coords(a);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    pub fn to_json(&self, a: Elem) -> Value {
        let c = self.coords(a);
        if c.len() == 1 {
            Value::from(c[0])
        } else {
            Value::from(c)
        }
    }

    /// Parses an integer (mapped through Z -> R) or a coordinate vector
    /// such as `[0,1]`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::MalformedElement(s.to_string());
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coords: Vec<u64> = inner
                .split(',')
                .map(|p| p.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .zip(&self.moduli)
                .map(|(x, &m)| x.rem_euclid(m as i64) as u64)
                .collect();
            if coords.len() != self.dim() || inner.split(',').count() != self.dim() {
                return Err(bad());
            }
            return Ok(self.from_coords(&coords));
        }
        let n: i64 = s.parse().map_err(|_| bad())?;
        Ok(self.from_int(n))
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_arithmetic() {
        let r = parse_ring_spec("Z/6").unwrap();
        assert_eq!(r.size(), 6);
        let three = r.from_int(3);
        let four = r.from_int(4);
        assert_eq!(r.mul(three, four), r.zero());
        assert_eq!(r.add(three, four), r.one());
        assert_eq!(r.neg(r.one()), r.from_int(5));
        assert!(r.is_unit(r.from_int(5)));
        assert!(!r.is_unit(three));
        assert_eq!(r.inverse(r.from_int(5)), Some(r.from_int(5)));
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let r = parse_ring_spec("Z/3 x F_3[t]/(t^2+1)").unwrap();
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(r.mul(a, b), r.mul_slow(a, b));
                assert_eq!(r.add(a, b), r.add_slow(a, b));
            }
        }
    }

    #[test]
    fn parse_elements() {
        let r = parse_ring_spec("GF(2^2)").unwrap();
        let w = r.parse_elem("[0,1]").unwrap();
        assert_eq!(r.format(w), "[0,1]");
        assert!(r.parse_elem("[0,1,1]").is_err());
        assert!(r.parse_elem("x").is_err());
        let z = parse_ring_spec("Z/5").unwrap();
        assert_eq!(z.parse_elem("-1").unwrap(), z.from_int(4));
    }
}
