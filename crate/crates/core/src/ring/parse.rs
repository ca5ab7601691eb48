//! Ring spec grammar:
//!
//! ```text
//! ring := atom ("x" atom)*
//! atom := base ("[t]/(" monic-poly ")")*
//! base := "Z/" n | "GF(" p "^" k ")" | "GF(" q ")" | "F_" q
//! ```

use super::FiniteRing;
use crate::error::{Error, Result};

/// Default cap on the number of elements of a parsed ring.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 10_000;

#[derive(Clone, Debug)]
struct Builder {
    moduli: Vec<u64>,
    consts: Vec<Vec<Vec<u64>>>,
    one: Vec<u64>,
}

impl Builder {
    fn size(&self) -> u64 {
        self.moduli.iter().fold(1u64, |a, &m| a.saturating_mul(m))
    }

    fn cyclic(n: u64) -> Self {
        Builder {
            moduli: vec![n],
            consts: vec![vec![vec![1]]],
            one: vec![1],
        }
    }

    fn product(self, other: Builder) -> Self {
        let (da, db) = (self.moduli.len(), other.moduli.len());
        let d = da + db;
        let mut consts = vec![vec![vec![0u64; d]; d]; d];
        for i in 0..da {
            for j in 0..da {
                consts[i][j][..da].copy_from_slice(&self.consts[i][j]);
            }
        }
        for i in 0..db {
            for j in 0..db {
                consts[da + i][da + j][da..].copy_from_slice(&other.consts[i][j]);
            }
        }
        let mut moduli = self.moduli;
        moduli.extend(other.moduli);
        let mut one = self.one;
        one.extend(other.one);
        Builder {
            moduli,
            consts,
            one,
        }
    }

    /// `self[t]/(f)` for a monic integer polynomial `f` (low degree first).
    fn quotient(self, f: &[i64]) -> Self {
        let n = f.len() - 1;
        let d0 = self.moduli.len();
        // every modulus divides the additive exponent, so reducing by it is exact
        let exponent = self.moduli.iter().fold(1u64, |a, &m| super::lcm(a, m)) as i64;
        // reductions[s] = t^s mod f, for s < 2n - 1
        let mut reductions: Vec<Vec<i64>> = Vec::with_capacity(2 * n);
        for s in 0..(2 * n).max(1) {
            let mut v = vec![0i64; n];
            if s < n {
                v[s] = 1;
            } else {
                let prev = &reductions[s - 1];
                // t * prev, then replace t^n by -(f_0 + ... + f_{n-1} t^{n-1})
                let top = prev[n - 1];
                for r in (1..n).rev() {
                    v[r] = prev[r - 1];
                }
                v[0] = 0;
                for r in 0..n {
                    v[r] -= top * f[r];
                }
                for x in v.iter_mut() {
                    *x = x.rem_euclid(exponent);
                }
            }
            reductions.push(v);
        }
        let d = n * d0;
        let moduli: Vec<u64> = (0..d).map(|k| self.moduli[k % d0]).collect();
        let mut consts = vec![vec![vec![0u64; d]; d]; d];
        for p1 in 0..n {
            for j1 in 0..d0 {
                for p2 in 0..n {
                    for j2 in 0..d0 {
                        let out = &mut consts[p1 * d0 + j1][p2 * d0 + j2];
                        let red = &reductions[p1 + p2];
                        for (r, &c) in red.iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            for k in 0..d0 {
                                let m = self.moduli[k] as i64;
                                let s = self.consts[j1][j2][k] as i64;
                                let idx = r * d0 + k;
                                let v = (out[idx] as i64 + (s * c.rem_euclid(m)) % m) % m;
                                out[idx] = v as u64;
                            }
                        }
                    }
                }
            }
        }
        let mut one = vec![0u64; d];
        one[..d0].copy_from_slice(&self.one);
        Builder {
            moduli,
            consts,
            one,
        }
    }
}

/// Parses a ring spec with the default element budget.
pub fn parse_ring_spec(spec: &str) -> Result<FiniteRing> {
    parse_ring_spec_with_budget(spec, DEFAULT_ELEMENT_BUDGET)
}

pub fn parse_ring_spec_with_budget(spec: &str, budget: u64) -> Result<FiniteRing> {
    let malformed = |reason: &str| Error::MalformedSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(malformed("empty spec"));
    }
    let mut builder: Option<Builder> = None;
    for atom in split_top_level(&compact).ok_or_else(|| malformed("unbalanced brackets"))? {
        let b = parse_atom(atom, spec)?;
        if b.size() > budget {
            return Err(Error::RingTooLarge {
                size: b.size(),
                budget,
            });
        }
        builder = Some(match builder {
            None => b,
            Some(acc) => acc.product(b),
        });
        if builder.as_ref().unwrap().size() > budget {
            return Err(Error::RingTooLarge {
                size: builder.as_ref().unwrap().size(),
                budget,
            });
        }
    }
    let b = builder.ok_or_else(|| malformed("no factors"))?;
    FiniteRing::from_parts(spec.trim().to_string(), b.moduli, b.consts, b.one, budget)
}

fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            'x' | 'X' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

fn parse_atom(atom: &str, spec: &str) -> Result<Builder> {
    let malformed = |reason: String| Error::MalformedSpec {
        spec: spec.to_string(),
        reason,
    };
    let (base, mut rest) = match atom.find("[t]/(") {
        Some(i) => (&atom[..i], &atom[i..]),
        None => (atom, ""),
    };
    let mut b = parse_base(base, spec)?;
    while !rest.is_empty() {
        let tail = rest
            .strip_prefix("[t]/(")
            .ok_or_else(|| malformed(format!("unexpected `{rest}`")))?;
        let close = matching_paren(tail).ok_or_else(|| malformed("unclosed `(`".into()))?;
        let poly = &tail[..close];
        let coeffs =
            parse_int_poly(poly).ok_or_else(|| malformed(format!("bad polynomial `{poly}`")))?;
        if coeffs.len() < 2 {
            return Err(malformed(format!(
                "quotient polynomial `{poly}` has degree < 1"
            )));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(Error::NonMonic(poly.to_string()));
        }
        b = b.quotient(&coeffs);
        rest = &tail[close + 1..];
    }
    Ok(b)
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' if depth == 0 => return Some(i),
            ')' => depth -= 1,
            _ => {}
        }
    }
    None
}

fn parse_base(base: &str, spec: &str) -> Result<Builder> {
    let malformed = |reason: String| Error::MalformedSpec {
        spec: spec.to_string(),
        reason,
    };
    if let Some(n) = base.strip_prefix("Z/") {
        let n: u64 = n
            .parse()
            .map_err(|_| malformed(format!("bad modulus `{n}`")))?;
        if n < 2 {
            return Err(malformed("modulus must be at least 2".into()));
        }
        return Ok(Builder::cyclic(n));
    }
    let order = if let Some(inner) = base.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        inner
    } else if let Some(q) = base.strip_prefix("F_") {
        q
    } else {
        return Err(malformed(format!("unknown ring `{base}`")));
    };
    let (p, k) = match order.split_once('^') {
        Some((p, k)) => (
            p.parse::<u64>()
                .map_err(|_| malformed(format!("bad prime `{p}`")))?,
            k.parse::<u32>()
                .map_err(|_| malformed(format!("bad exponent `{k}`")))?,
        ),
        None => {
            let q: u64 = order
                .parse()
                .map_err(|_| malformed(format!("bad field order `{order}`")))?;
            prime_power(q).ok_or(Error::NotPrime { p: q, k: 1 })?
        }
    };
    if k == 0 {
        return Err(malformed("field degree must be positive".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime { p, k });
    }
    if k == 1 {
        return Ok(Builder::cyclic(p));
    }
    let f = first_irreducible(p, k as usize);
    let f: Vec<i64> = f.iter().map(|&c| c as i64).collect();
    Ok(Builder::cyclic(p).quotient(&f))
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Integer polynomial in `t`, e.g. `t^2-3t+1`; coefficients low degree first.
fn parse_int_poly(s: &str) -> Option<Vec<i64>> {
    if s.is_empty() {
        return None;
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i != 0 {
            return None;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let num: Option<i64> = if i > start {
            Some(bytes[start..i].iter().collect::<String>().parse().ok()?)
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == '*' {
            i += 1;
        }
        let mut degree = 0usize;
        if i < bytes.len() && bytes[i] == 't' {
            i += 1;
            degree = 1;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return None;
                }
                degree = bytes[ds..i].iter().collect::<String>().parse().ok()?;
            }
        } else if num.is_none() {
            return None;
        }
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += sign * num.unwrap_or(1);
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Some(coeffs)
}

fn poly_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // b is monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// The first monic irreducible polynomial of degree `k` over F_p, in the
/// order of its lower coefficients read as a base-p number.
fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    let monic = |code: u64, deg: usize| -> Vec<u64> {
        let mut c = Vec::with_capacity(deg + 1);
        let mut x = code;
        for _ in 0..deg {
            c.push(x % p);
            x /= p;
        }
        c.push(1);
        c
    };
    let count = |deg: usize| p.pow(deg as u32);
    for code in 0..count(k) {
        let f = monic(code, k);
        let reducible = (1..=k / 2).any(|deg| {
            (0..count(deg)).any(|dc| {
                let g = monic(dc, deg);
                poly_rem_mod_p(&f, &g, p).iter().all(|&c| c == 0)
            })
        });
        if !reducible {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_parsing() {
        assert_eq!(parse_int_poly("t^2"), Some(vec![0, 0, 1]));
        assert_eq!(parse_int_poly("t^2-3t+1"), Some(vec![1, -3, 1]));
        assert_eq!(parse_int_poly("2*t^3+t"), Some(vec![0, 1, 0, 2]));
        assert_eq!(parse_int_poly("t^"), None);
        assert_eq!(parse_int_poly("3x"), None);
    }

    #[test]
    fn irreducibles() {
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(first_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn sizes_and_characteristic() {
        for (spec, size, ch) in [
            ("Z/5", 5, 5),
            ("Z/2 x Z/3", 6, 6),
            ("F_5[t]/(t^2)", 25, 5),
            ("GF(2^2)", 4, 2),
            ("GF(4)", 4, 2),
            ("GF(8)", 8, 2),
            ("Z/4[t]/(t^2+t+1)", 16, 4),
            ("Z/5 x Z/5", 25, 5),
        ] {
            let r = parse_ring_spec(spec).unwrap();
            assert_eq!(r.size(), size, "{spec}");
            assert_eq!(r.characteristic(), ch, "{spec}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_ring_spec("Z/"),
            Err(Error::MalformedSpec { .. })
        ));
        assert!(matches!(
            parse_ring_spec("Q"),
            Err(Error::MalformedSpec { .. })
        ));
        assert!(matches!(
            parse_ring_spec("Z/5 x"),
            Err(Error::MalformedSpec { .. })
        ));
        assert!(matches!(
            parse_ring_spec("GF(6)"),
            Err(Error::NotPrime { .. })
        ));
        assert!(matches!(
            parse_ring_spec("GF(4^2)"),
            Err(Error::NotPrime { .. })
        ));
        assert!(matches!(
            parse_ring_spec("Z/5[t]/(2t^2+1)"),
            Err(Error::NonMonic(_))
        ));
        assert!(matches!(
            parse_ring_spec_with_budget("Z/7 x Z/7", 40),
            Err(Error::RingTooLarge {
                size: 49,
                budget: 40
            })
        ));
    }

    #[test]
    fn gf4_is_a_field() {
        let r = parse_ring_spec("GF(2^2)").unwrap();
        assert_eq!(r.units().len(), 3);
    }
}
