use super::{Elem, FiniteRing};

/// Integer polynomial, lowest degree first.
pub type IntPoly = Vec<i64>;

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

fn mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn div_exact(a: &[i64], b: &[i64]) -> IntPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    assert!(r.iter().all(|&c| c == 0), "cyclotomic division is exact");
    q
}

/// The N-th cyclotomic polynomial, obtained by dividing x^N - 1 by the
/// product of the cyclotomic polynomials of the proper divisors of N.
pub fn cyclotomic_polynomial(n: usize) -> IntPoly {
    assert!(n >= 1);
    let mut xn1 = vec![0i64; n + 1];
    xn1[0] = -1;
    xn1[n] = 1;
    let denom = divisors(n)
        .filter(|&d| d < n)
        .fold(vec![1i64], |acc, d| mul(&acc, &cyclotomic_polynomial(d)));
    div_exact(&xn1, &denom)
}

/// Every q in R with Phi_N(q) = 0, by exhaustive evaluation.
pub fn cyclotomic_roots(ring: &FiniteRing, n: usize) -> Vec<Elem> {
    let phi: Vec<Elem> = cyclotomic_polynomial(n)
        .iter()
        .map(|&c| ring.from_int(c))
        .collect();
    ring.elements()
        .filter(|&q| {
            let v = phi
                .iter()
                .rev()
                .fold(ring.zero(), |acc, &c| ring.add(ring.mul(acc, q), c));
            v == ring.zero()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring_spec;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn product_over_divisors_is_xn_minus_one() {
        for n in 1..=30 {
            let prod = divisors(n).fold(vec![1i64], |acc, d| mul(&acc, &cyclotomic_polynomial(d)));
            let mut expect = vec![0i64; n + 1];
            expect[0] = -1;
            expect[n] = 1;
            assert_eq!(prod, expect, "n={n}");
        }
    }

    #[test]
    fn roots() {
        let z5 = parse_ring_spec("Z/5").unwrap();
        assert_eq!(cyclotomic_roots(&z5, 2), vec![z5.from_int(4)]);
        assert!(cyclotomic_roots(&z5, 3).is_empty());
        let z7 = parse_ring_spec("Z/7").unwrap();
        assert_eq!(
            cyclotomic_roots(&z7, 3),
            vec![z7.from_int(2), z7.from_int(4)]
        );
        for q in cyclotomic_roots(&z7, 3) {
            assert_eq!(z7.pow(q, 3), z7.one());
        }
    }
}
