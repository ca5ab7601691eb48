//! The Taft Hopf algebra H_N^q: generated by a grouplike g and a
//! skew-primitive x with g^N = 1, x^N = 0 and xg = q gx.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::Value;

use crate::algebra::{sparse, tensor_mul, tensor_one, Algebra, Element, StructureTable, Tensor};
use crate::error::{Error, Result};
use crate::ring::{cyclotomic_roots, Elem, FiniteRing};

/// An element of H_N^q over the basis g^m x^n.
pub type TaftElement = Element;
/// An element of H (x) H over the basis (g^a x^b) (x) (g^c x^d).
pub type TaftTensor = Tensor;

#[derive(Clone, Debug)]
pub struct TaftParams {
    ring: Arc<FiniteRing>,
    n: usize,
    q: Elem,
}

impl TaftParams {
    pub fn new(ring: Arc<FiniteRing>, n: usize, q: Elem) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadOrder { n, min: 2 });
        }
        if !cyclotomic_roots(&ring, n).contains(&q) {
            return Err(Error::NotCyclotomicRoot(ring.format(q)));
        }
        Ok(TaftParams { ring, n, q })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> Elem {
        self.q
    }

    pub fn q_pow(&self, e: usize) -> Elem {
        self.ring.pow(self.q, e as u64)
    }
}

/// Gaussian binomial via the q-Pascal recurrence
/// C(n,i) = C(n-1,i-1) + q^i C(n-1,i), which needs no division.
pub fn q_binomial(ring: &FiniteRing, n: i64, i: i64, q: Elem) -> Result<Elem> {
    if i < 0 || i > n {
        return Err(Error::BinomialRange { n, i });
    }
    let (n, i) = (n as usize, i as usize);
    let mut row = vec![ring.one()];
    for k in 1..=n {
        let mut next = vec![ring.one(); k + 1];
        for j in 1..k {
            next[j] = ring.add(row[j - 1], ring.mul(ring.pow(q, j as u64), row[j]));
        }
        row = next;
    }
    Ok(row[i])
}

/// Coefficients over normal monomials w^j z^i in R<z,w>/(zw - q wz).
pub type SkewPoly = BTreeMap<(usize, usize), Elem>;

fn skew_mul(ring: &FiniteRing, q: Elem, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
    let mut out = SkewPoly::new();
    for (&(wa, za), &ca) in a {
        for (&(wb, zb), &cb) in b {
            // z^za w^wb = q^(za*wb) w^wb z^za
            let c = ring.mul(ring.mul(ca, cb), ring.pow(q, (za * wb) as u64));
            let e = out.entry((wa + wb, za + zb)).or_insert(ring.zero());
            *e = ring.add(*e, c);
        }
    }
    out.retain(|_, c| *c != ring.zero());
    out
}

/// (z + w)^n expanded over normal monomials w^j z^i.
pub fn skew_power(ring: &FiniteRing, q: Elem, n: usize) -> SkewPoly {
    let mut base = SkewPoly::new();
    base.insert((0, 1), ring.one());
    base.insert((1, 0), ring.one());
    let mut acc = SkewPoly::new();
    acc.insert((0, 0), ring.one());
    for _ in 0..n {
        acc = skew_mul(ring, q, &acc, &base);
    }
    acc
}

/// Checks (z+w)^n = sum_i C(n,i)_q w^(n-i) z^i in the skew model, and for
/// n = N also (z+w)^N = z^N + w^N.
pub fn skew_binomial_check(params: &TaftParams, n: usize) -> bool {
    let ring = &params.ring;
    let lhs = skew_power(ring, params.q, n);
    let mut expected = SkewPoly::new();
    for i in 0..=n {
        let c = q_binomial(ring, n as i64, i as i64, params.q).expect("in range");
        if c != ring.zero() {
            expected.insert((n - i, i), c);
        }
    }
    if lhs != expected {
        return false;
    }
    if n == params.n {
        let mut collapse = SkewPoly::new();
        collapse.insert((n, 0), ring.one());
        collapse.insert((0, n), ring.one());
        return lhs == collapse;
    }
    true
}

pub struct TaftAlgebra {
    params: TaftParams,
    table: StructureTable,
    delta: Vec<TaftTensor>,
    antipode: Vec<TaftElement>,
}

impl Algebra for TaftAlgebra {
    fn ring(&self) -> &Arc<FiniteRing> {
        &self.params.ring
    }
    fn order(&self) -> usize {
        self.params.n
    }
    fn table(&self) -> &StructureTable {
        &self.table
    }
}

impl TaftAlgebra {
    pub fn new(params: TaftParams) -> Self {
        let n = params.n;
        let ring = params.ring.clone();
        // (g^a x^b)(g^c x^d) = q^(bc) g^(a+c) x^(b+d)
        let table = StructureTable::from_fn(&ring, n, |i, j| {
            let (a, b) = (i / n, i % n);
            let (c, d) = (j / n, j % n);
            if b + d >= n {
                Element::zero(&ring, n)
            } else {
                Element::monomial(&ring, n, (a + c) % n, b + d, params.q_pow(b * c))
            }
        });
        let mut alg = TaftAlgebra {
            params,
            table,
            delta: Vec::new(),
            antipode: Vec::new(),
        };
        alg.delta = alg.compute_delta();
        alg.antipode = alg.compute_antipode();
        alg
    }

    pub fn params(&self) -> &TaftParams {
        &self.params
    }

    pub fn q(&self) -> Elem {
        self.params.q
    }

    pub fn g(&self) -> TaftElement {
        self.basis(1 % self.order(), 0)
    }

    pub fn x(&self) -> TaftElement {
        self.basis(0, 1)
    }

    fn compute_delta(&self) -> Vec<TaftTensor> {
        let ring = self.ring().clone();
        let n = self.order();
        let g = self.g();
        let dg = Tensor::pure(&ring, &g, &g);
        let dx = Tensor::pure(&ring, &self.one(), &self.x())
            .add(&ring, &Tensor::pure(&ring, &self.x(), &g));
        let mut out = Vec::with_capacity(n * n);
        for m in 0..n {
            for k in 0..n {
                let mut t = tensor_one(&ring, self.dim(), self.dim());
                for _ in 0..m {
                    t = tensor_mul(self, self, &t, &dg);
                }
                for _ in 0..k {
                    t = tensor_mul(self, self, &t, &dx);
                }
                out.push(t);
            }
        }
        out
    }

    fn compute_antipode(&self) -> Vec<TaftElement> {
        let ring = self.ring().clone();
        let n = self.order();
        let q_inv = ring.inverse(self.q()).expect("q^N = 1");
        let sg = self.basis(n - 1, 0);
        let sx = self.mul(&sg, &self.x()).scale(&ring, ring.neg(q_inv));
        let mut out = Vec::with_capacity(n * n);
        for m in 0..n {
            for k in 0..n {
                // S is an antihomomorphism: S(g^m x^k) = S(x)^k S(g)^m
                out.push(self.mul(&self.pow(&sx, k as u64), &self.pow(&sg, m as u64)));
            }
        }
        out
    }

    pub fn taft_mul(&self, a: &TaftElement, b: &TaftElement) -> Result<TaftElement> {
        self.checked_mul(a, b)
    }

    /// The coproduct of the basis element with index `i`.
    pub fn delta_basis(&self, i: usize) -> &TaftTensor {
        &self.delta[i]
    }

    pub fn delta(&self, a: &TaftElement) -> TaftTensor {
        let ring = self.ring();
        let mut out = Tensor::zero(ring, self.dim(), self.dim());
        for (i, c) in sparse(ring, a) {
            out = out.add(ring, &self.delta[i].scale(ring, c));
        }
        out
    }

    pub fn counit(&self, a: &TaftElement) -> Elem {
        let ring = self.ring();
        ring.sum((0..self.order()).map(|m| a.coeff(m, 0)))
    }

    pub fn counit_basis(&self, i: usize) -> Elem {
        if i.is_multiple_of(self.order()) {
            self.ring().one()
        } else {
            self.ring().zero()
        }
    }

    pub fn antipode(&self, a: &TaftElement) -> TaftElement {
        let ring = self.ring();
        let mut out = self.zero();
        for (i, c) in sparse(ring, a) {
            out = out.add(ring, &self.antipode[i].scale(ring, c));
        }
        out
    }

    pub fn render(&self, a: &TaftElement) -> String {
        a.render(self.ring(), "g", "x")
    }

    pub fn to_json(&self, a: &TaftElement) -> Value {
        a.to_json(self.ring())
    }
}

/// Outcome of checking the Hopf algebra axioms on every basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HopfAxioms {
    pub coassociative: bool,
    pub counital: bool,
    pub bialgebra: bool,
    pub antipode: bool,
}

impl HopfAxioms {
    pub fn all(&self) -> bool {
        self.coassociative && self.counital && self.bialgebra && self.antipode
    }
}

pub fn check_hopf_axioms(h: &TaftAlgebra) -> HopfAxioms {
    let ring = h.ring().clone();
    let dim = h.dim();
    let mut coassociative = true;
    let mut counital = true;
    let mut bialgebra = true;
    let mut antipode = true;
    for i in 0..dim {
        let d = h.delta_basis(i);
        // (Delta (x) id) Delta and (id (x) Delta) Delta, as dense dim^3 arrays
        let mut left = vec![ring.zero(); dim * dim * dim];
        let mut right = vec![ring.zero(); dim * dim * dim];
        for (a, b, c) in d.terms(&ring) {
            for (a1, a2, c1) in h.delta_basis(a).terms(&ring) {
                let idx = (a1 * dim + a2) * dim + b;
                left[idx] = ring.add(left[idx], ring.mul(c, c1));
            }
            for (b1, b2, c2) in h.delta_basis(b).terms(&ring) {
                let idx = (a * dim + b1) * dim + b2;
                right[idx] = ring.add(right[idx], ring.mul(c, c2));
            }
        }
        coassociative &= left == right;

        let mut eps_left = h.zero();
        let mut eps_right = h.zero();
        let mut s_left = h.zero();
        let mut s_right = h.zero();
        for (a, b, c) in d.terms(&ring) {
            let ea = ring.mul(c, h.counit_basis(a));
            eps_left = eps_left.add(
                &ring,
                &h.basis(b / h.order(), b % h.order()).scale(&ring, ea),
            );
            let eb = ring.mul(c, h.counit_basis(b));
            eps_right = eps_right.add(
                &ring,
                &h.basis(a / h.order(), a % h.order()).scale(&ring, eb),
            );
            let ba = h.basis(a / h.order(), a % h.order());
            let bb = h.basis(b / h.order(), b % h.order());
            s_left = s_left.add(&ring, &h.mul(&h.antipode(&ba), &bb).scale(&ring, c));
            s_right = s_right.add(&ring, &h.mul(&ba, &h.antipode(&bb)).scale(&ring, c));
        }
        let bi = h.basis(i / h.order(), i % h.order());
        counital &= eps_left == bi && eps_right == bi;
        let unit_eps = h.scalar(h.counit_basis(i));
        antipode &= s_left == unit_eps && s_right == unit_eps;

        for j in 0..dim {
            let bj = h.basis(j / h.order(), j % h.order());
            let prod = h.mul(&bi, &bj);
            let lhs = h.delta(&prod);
            let rhs = tensor_mul(h, h, h.delta_basis(i), h.delta_basis(j));
            bialgebra &= lhs == rhs;
            bialgebra &= h.counit(&prod) == ring.mul(h.counit_basis(i), h.counit_basis(j));
        }
    }
    HopfAxioms {
        coassociative,
        counital,
        bialgebra,
        antipode,
    }
}
