//! Free R-algebras of rank N^2 with basis indexed by pairs (m, n), and
//! their tensor products. Both the Taft algebra and the cleft extensions
//! are instances.

use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

/// Coefficients over the basis (m, n) stored at index m * N + n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    n: usize,
    coeffs: Vec<Elem>,
}

impl Element {
    pub fn zero(ring: &FiniteRing, n: usize) -> Self {
        Element {
            n,
            coeffs: vec![ring.zero(); n * n],
        }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<Elem>) -> Self {
        assert_eq!(coeffs.len(), n * n);
        Element { n, coeffs }
    }

    pub fn basis(ring: &FiniteRing, n: usize, m: usize, k: usize) -> Self {
        Self::monomial(ring, n, m, k, ring.one())
    }

    pub fn monomial(ring: &FiniteRing, n: usize, m: usize, k: usize, c: Elem) -> Self {
        let mut e = Self::zero(ring, n);
        e.coeffs[m * n + k] = c;
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize, k: usize) -> Elem {
        self.coeffs[m * self.n + k]
    }

    pub fn is_zero(&self, ring: &FiniteRing) -> bool {
        self.coeffs.iter().all(|&c| c == ring.zero())
    }

    pub fn add(&self, ring: &FiniteRing, other: &Element) -> Element {
        Element {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &FiniteRing, other: &Element) -> Element {
        Element {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &FiniteRing, c: Elem) -> Element {
        Element {
            n: self.n,
            coeffs: self.coeffs.iter().map(|&a| ring.mul(c, a)).collect(),
        }
    }

    /// Dense N x N array of coefficients.
    pub fn to_json(&self, ring: &FiniteRing) -> Value {
        Value::Array(
            self.coeffs
                .chunks(self.n)
                .map(|row| Value::Array(row.iter().map(|&c| ring.to_json(c)).collect()))
                .collect(),
        )
    }

    /// `c * a^m b^n` terms in lexicographic (m, n) order, zero terms omitted.
    pub fn render(&self, ring: &FiniteRing, a: &str, b: &str) -> String {
        let mut terms = Vec::new();
        for m in 0..self.n {
            for k in 0..self.n {
                let c = self.coeff(m, k);
                if c != ring.zero() {
                    terms.push(format!("{} * {a}^{m} {b}^{k}", ring.format(c)));
                }
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Products of basis elements: `products[i * N^2 + j]` lists the nonzero
/// coordinates of `basis_i * basis_j`.
#[derive(Clone, Debug)]
pub struct StructureTable {
    products: Vec<Vec<(usize, Elem)>>,
}

impl StructureTable {
    pub fn from_fn<F>(ring: &FiniteRing, n: usize, mut product: F) -> Self
    where
        F: FnMut(usize, usize) -> Element,
    {
        let dim = n * n;
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let e = product(i, j);
                products.push(
                    e.coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != ring.zero())
                        .map(|(k, &c)| (k, c))
                        .collect(),
                );
            }
        }
        StructureTable { products }
    }
}

/// A free algebra of rank N^2 over a finite ring with a fixed basis.
pub trait Algebra {
    fn ring(&self) -> &Arc<FiniteRing>;
    fn order(&self) -> usize;
    fn table(&self) -> &StructureTable;

    fn dim(&self) -> usize {
        self.order() * self.order()
    }

    fn basis_product(&self, i: usize, j: usize) -> &[(usize, Elem)] {
        &self.table().products[i * self.dim() + j]
    }

    fn zero(&self) -> Element {
        Element::zero(self.ring(), self.order())
    }

    fn one(&self) -> Element {
        Element::basis(self.ring(), self.order(), 0, 0)
    }

    fn basis(&self, m: usize, k: usize) -> Element {
        Element::basis(self.ring(), self.order(), m, k)
    }

    fn scalar(&self, c: Elem) -> Element {
        Element::monomial(self.ring(), self.order(), 0, 0, c)
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        let ring = self.ring();
        let mut out = vec![ring.zero(); self.dim()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == ring.zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == ring.zero() {
                    continue;
                }
                let xy = ring.mul(x, y);
                for &(k, c) in self.basis_product(i, j) {
                    out[k] = ring.add(out[k], ring.mul(xy, c));
                }
            }
        }
        Element::from_coeffs(self.order(), out)
    }

    fn checked_mul(&self, a: &Element, b: &Element) -> Result<Element> {
        if a.n != self.order() || b.n != self.order() {
            return Err(Error::ParameterMismatch);
        }
        Ok(self.mul(a, b))
    }

    fn pow(&self, a: &Element, e: u64) -> Element {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// An element of A (x) H in the basis (basis_i of A) (x) (basis_j of H),
/// stored at index i * dim(H) + j.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor {
    left_dim: usize,
    right_dim: usize,
    coeffs: Vec<Elem>,
}

impl Tensor {
    pub fn zero(ring: &FiniteRing, left_dim: usize, right_dim: usize) -> Self {
        Tensor {
            left_dim,
            right_dim,
            coeffs: vec![ring.zero(); left_dim * right_dim],
        }
    }

    pub fn pure(ring: &FiniteRing, a: &Element, h: &Element) -> Self {
        let mut t = Self::zero(ring, a.coeffs.len(), h.coeffs.len());
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == ring.zero() {
                continue;
            }
            for (j, &y) in h.coeffs.iter().enumerate() {
                t.coeffs[i * t.right_dim + j] = ring.mul(x, y);
            }
        }
        t
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.coeffs[i * self.right_dim + j]
    }

    pub fn add_at(&mut self, ring: &FiniteRing, i: usize, j: usize, c: Elem) {
        let idx = i * self.right_dim + j;
        self.coeffs[idx] = ring.add(self.coeffs[idx], c);
    }

    pub fn add(&self, ring: &FiniteRing, other: &Tensor) -> Tensor {
        Tensor {
            left_dim: self.left_dim,
            right_dim: self.right_dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &FiniteRing, other: &Tensor) -> Tensor {
        Tensor {
            left_dim: self.left_dim,
            right_dim: self.right_dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &FiniteRing, c: Elem) -> Tensor {
        Tensor {
            left_dim: self.left_dim,
            right_dim: self.right_dim,
            coeffs: self.coeffs.iter().map(|&a| ring.mul(c, a)).collect(),
        }
    }

    pub fn is_zero(&self, ring: &FiniteRing) -> bool {
        self.coeffs.iter().all(|&c| c == ring.zero())
    }

    /// Nonzero entries as ((left index, right index), coefficient).
    pub fn terms<'a>(
        &'a self,
        ring: &'a FiniteRing,
    ) -> impl Iterator<Item = (usize, usize, Elem)> + 'a {
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c != ring.zero())
            .map(move |(idx, &c)| (idx / self.right_dim, idx % self.right_dim, c))
    }

    /// Applies linear maps to the two factors: (f (x) g)(t).
    pub fn map<F, G>(
        &self,
        ring: &FiniteRing,
        left_dim: usize,
        right_dim: usize,
        f: F,
        g: G,
    ) -> Tensor
    where
        F: Fn(usize) -> Vec<(usize, Elem)>,
        G: Fn(usize) -> Vec<(usize, Elem)>,
    {
        let mut out = Tensor::zero(ring, left_dim, right_dim);
        for (i, j, c) in self.terms(ring) {
            let fi = f(i);
            let gj = g(j);
            for &(a, x) in &fi {
                let cx = ring.mul(c, x);
                for &(b, y) in &gj {
                    out.add_at(ring, a, b, ring.mul(cx, y));
                }
            }
        }
        out
    }
}

/// Multiplication in A (x) H: (a (x) h)(a' (x) h') = aa' (x) hh'.
pub fn tensor_mul<A: Algebra + ?Sized, H: Algebra + ?Sized>(
    left: &A,
    right: &H,
    x: &Tensor,
    y: &Tensor,
) -> Tensor {
    let ring = left.ring();
    let (ld, rd) = (left.dim(), right.dim());
    let mut out = Tensor::zero(ring, ld, rd);
    let xt: Vec<_> = x.terms(ring).collect();
    let yt: Vec<_> = y.terms(ring).collect();
    for &(i1, j1, c1) in &xt {
        for &(i2, j2, c2) in &yt {
            let c = ring.mul(c1, c2);
            for &(a, ca) in left.basis_product(i1, i2) {
                let cca = ring.mul(c, ca);
                for &(b, cb) in right.basis_product(j1, j2) {
                    out.add_at(ring, a, b, ring.mul(cca, cb));
                }
            }
        }
    }
    out
}

/// The unit 1 (x) 1 of A (x) H.
pub fn tensor_one(ring: &FiniteRing, left_dim: usize, right_dim: usize) -> Tensor {
    let mut t = Tensor::zero(ring, left_dim, right_dim);
    t.coeffs[0] = ring.one();
    t
}

/// Sparse nonzero coordinates of an element.
pub fn sparse(ring: &FiniteRing, e: &Element) -> Vec<(usize, Elem)> {
    e.coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != ring.zero())
        .map(|(k, &c)| (k, c))
        .collect()
}
