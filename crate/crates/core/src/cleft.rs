//! Cleft extensions B_d of R for the Taft algebra: generated by v_g and v_x
//! subject to v_g^N = u, v_x^N = a and v_x v_g = q v_g v_x + b v_g^2.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{tensor_mul, tensor_one, Algebra, Element, StructureTable, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{self, Submodule};
use crate::ring::{Elem, FiniteRing};
use crate::taft::{TaftAlgebra, TaftElement};

pub type CleftElement = Element;
/// An element of B (x) H over the basis (v_g^m v_x^n) (x) (g^a x^b).
pub type CleftTensor = Tensor;

/// The triple (u, a, b) with u a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CleftData {
    pub u: Elem,
    pub a: Elem,
    pub b: Elem,
}

impl CleftData {
    pub fn new(u: Elem, a: Elem, b: Elem) -> Self {
        CleftData { u, a, b }
    }

    pub fn to_json(&self, ring: &FiniteRing) -> Value {
        json!({"u": ring.to_json(self.u), "a": ring.to_json(self.a), "b": ring.to_json(self.b)})
    }

    pub fn format(&self, ring: &FiniteRing) -> String {
        format!(
            "({}, {}, {})",
            ring.format(self.u),
            ring.format(self.a),
            ring.format(self.b)
        )
    }
}

/// Every cleft datum with b = 0, ordered by (u, a).
pub fn all_data_b0(ring: &FiniteRing) -> Vec<CleftData> {
    let mut out = Vec::new();
    for u in ring.units() {
        for a in ring.elements() {
            out.push(CleftData::new(u, a, ring.zero()));
        }
    }
    out
}

/// Every cleft datum, ordered by (u, a, b).
pub fn all_data(ring: &FiniteRing) -> Vec<CleftData> {
    let mut out = Vec::new();
    for u in ring.units() {
        for a in ring.elements() {
            for b in ring.elements() {
                out.push(CleftData::new(u, a, b));
            }
        }
    }
    out
}

const VG: u8 = 0;
const VX: u8 = 1;

/// Normal forms of words in v_g, v_x by rewriting v_x v_g -> q v_g v_x + b v_g^2
/// at the leftmost occurrence, then reducing v_g^N -> u and v_x^N -> a.
struct Rewriter<'a> {
    ring: &'a FiniteRing,
    n: usize,
    q: Elem,
    data: CleftData,
    memo: HashMap<Vec<u8>, Vec<Elem>>,
}

impl Rewriter<'_> {
    fn normal_form(&mut self, word: &[u8]) -> Vec<Elem> {
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let ring = self.ring;
        let n = self.n;
        let result = match word.windows(2).position(|w| w == [VX, VG]) {
            Some(p) => {
                let mut swapped = word.to_vec();
                swapped[p] = VG;
                swapped[p + 1] = VX;
                let mut out: Vec<Elem> = self
                    .normal_form(&swapped)
                    .into_iter()
                    .map(|c| ring.mul(self.q, c))
                    .collect();
                if self.data.b != ring.zero() {
                    let mut doubled = word.to_vec();
                    doubled[p] = VG;
                    doubled[p + 1] = VG;
                    let extra = self.normal_form(&doubled);
                    for (o, e) in out.iter_mut().zip(extra) {
                        *o = ring.add(*o, ring.mul(self.data.b, e));
                    }
                }
                out
            }
            None => {
                let m = word.iter().filter(|&&l| l == VG).count();
                let k = word.len() - m;
                let c = ring.mul(
                    ring.pow(self.data.u, (m / n) as u64),
                    ring.pow(self.data.a, (k / n) as u64),
                );
                let mut out = vec![ring.zero(); n * n];
                out[(m % n) * n + k % n] = c;
                out
            }
        };
        self.memo.insert(word.to_vec(), result.clone());
        result
    }
}

pub struct CleftAlgebra {
    taft: Arc<TaftAlgebra>,
    data: CleftData,
    table: StructureTable,
    rho: Vec<CleftTensor>,
}

impl Algebra for CleftAlgebra {
    fn ring(&self) -> &Arc<FiniteRing> {
        self.taft.ring()
    }
    fn order(&self) -> usize {
        self.taft.order()
    }
    fn table(&self) -> &StructureTable {
        &self.table
    }
}

impl CleftAlgebra {
    pub fn new(taft: Arc<TaftAlgebra>, data: CleftData) -> Result<Self> {
        let ring = taft.ring().clone();
        if !ring.is_unit(data.u) {
            return Err(Error::NotUnit(ring.format(data.u)));
        }
        let n = taft.order();
        let mut rw = Rewriter {
            ring: &ring,
            n,
            q: taft.q(),
            data,
            memo: HashMap::new(),
        };
        let table = StructureTable::from_fn(&ring, n, |i, j| {
            let (m1, k1, m2, k2) = (i / n, i % n, j / n, j % n);
            let mut word = vec![VG; m1];
            word.extend(std::iter::repeat_n(VX, k1));
            word.extend(std::iter::repeat_n(VG, m2));
            word.extend(std::iter::repeat_n(VX, k2));
            Element::from_coeffs(n, rw.normal_form(&word))
        });
        let mut alg = CleftAlgebra {
            taft,
            data,
            table,
            rho: Vec::new(),
        };
        alg.rho = alg.compute_coaction();
        Ok(alg)
    }

    pub fn taft(&self) -> &Arc<TaftAlgebra> {
        &self.taft
    }

    pub fn data(&self) -> CleftData {
        self.data
    }

    pub fn v_g(&self) -> CleftElement {
        self.basis(1 % self.order(), 0)
    }

    pub fn v_x(&self) -> CleftElement {
        self.basis(0, 1)
    }

    pub fn cleft_mul(&self, a: &CleftElement, b: &CleftElement) -> Result<CleftElement> {
        self.checked_mul(a, b)
    }

    fn compute_coaction(&self) -> Vec<CleftTensor> {
        let ring = self.ring().clone();
        let h = &*self.taft;
        let n = self.order();
        let rho_g = Tensor::pure(&ring, &self.v_g(), &h.g());
        let rho_x = Tensor::pure(&ring, &self.one(), &h.x())
            .add(&ring, &Tensor::pure(&ring, &self.v_x(), &h.g()));
        let mut out = Vec::with_capacity(n * n);
        for m in 0..n {
            for k in 0..n {
                let mut t = tensor_one(&ring, self.dim(), h.dim());
                for _ in 0..m {
                    t = tensor_mul(self, h, &t, &rho_g);
                }
                for _ in 0..k {
                    t = tensor_mul(self, h, &t, &rho_x);
                }
                out.push(t);
            }
        }
        out
    }

    pub fn coaction_basis(&self, i: usize) -> &CleftTensor {
        &self.rho[i]
    }

    pub fn coaction(&self, e: &CleftElement) -> CleftTensor {
        let ring = self.ring();
        let mut out = Tensor::zero(ring, self.dim(), self.taft.dim());
        for (i, &c) in e.coeffs().iter().enumerate() {
            if c != ring.zero() {
                out = out.add(ring, &self.rho[i].scale(ring, c));
            }
        }
        out
    }

    /// The section g^m x^n -> v_g^m v_x^n.
    pub fn section(&self, h: &TaftElement) -> CleftElement {
        Element::from_coeffs(self.order(), h.coeffs().to_vec())
    }

    /// The convolution inverse of the section, as its values on the basis
    /// of H, obtained by solving the linear system sum phi(h1) psi(h2) = eps(h).
    pub fn convolution_inverse(&self) -> Result<Vec<CleftElement>> {
        let ring = self.ring().clone();
        let dim = self.dim();
        let h = &*self.taft;
        // unknown index: b * dim + k  (coordinate k of psi(h_b))
        let mut rows = vec![vec![ring.zero(); dim * dim]; dim * dim];
        let mut rhs = vec![ring.zero(); dim * dim];
        for i in 0..dim {
            for (a, b, c) in h.delta_basis(i).terms(&ring) {
                for k in 0..dim {
                    for &(l, p) in self.basis_product(a, k) {
                        let e = &mut rows[i * dim + l][b * dim + k];
                        *e = ring.add(*e, ring.mul(c, p));
                    }
                }
            }
            rhs[i * dim] = h.counit_basis(i);
        }
        let (sol, _) = linalg::solve_affine(&ring, &rows, &rhs, dim * dim).ok_or_else(|| {
            Error::Internal(format!(
                "no convolution inverse for {}",
                self.data.format(&ring)
            ))
        })?;
        let psi: Vec<CleftElement> = sol
            .chunks(dim)
            .map(|c| Element::from_coeffs(self.order(), c.to_vec()))
            .collect();
        // the right-hand convolution must also give eps
        for i in 0..dim {
            let mut acc = self.zero();
            for (a, b, c) in h.delta_basis(i).terms(&ring) {
                let phi_b = self.basis(b / self.order(), b % self.order());
                acc = acc.add(&ring, &self.mul(&psi[a], &phi_b).scale(&ring, c));
            }
            if acc != self.scalar(h.counit_basis(i)) {
                return Err(Error::Internal("convolution inverse is one-sided".into()));
            }
        }
        Ok(psi)
    }

    /// The coinvariant submodule {e : rho(e) = e (x) 1}.
    pub fn coinvariants(&self) -> Submodule {
        let ring = self.ring().clone();
        let dim = self.dim();
        let hdim = self.taft.dim();
        let mut rows = vec![vec![ring.zero(); dim]; dim * hdim];
        for k in 0..dim {
            let diff = self.rho[k].sub(
                &ring,
                &Tensor::pure(
                    &ring,
                    &self.basis(k / self.order(), k % self.order()),
                    &self.taft.one(),
                ),
            );
            for (i, j, c) in diff.terms(&ring) {
                rows[i * hdim + j][k] = c;
            }
        }
        linalg::kernel(&ring, &rows, dim)
    }

    /// The submodule R*1 of B, for comparison with the coinvariants.
    pub fn scalars(&self) -> Submodule {
        let ring = self.ring();
        let dim = self.dim();
        let rows: Vec<Vec<Elem>> = (1..dim)
            .map(|k| {
                let mut r = vec![ring.zero(); dim];
                r[k] = ring.one();
                r
            })
            .collect();
        linalg::kernel(ring, &rows, dim)
    }

    /// Bijectivity of a (x) b -> (a (x) 1) rho(b) from B (x) B to B (x) H.
    pub fn galois_check(&self) -> bool {
        let ring = self.ring().clone();
        let dim = self.dim();
        let hdim = self.taft.dim();
        let mut cols = vec![vec![ring.zero(); dim * dim]; dim * hdim];
        for i in 0..dim {
            for j in 0..dim {
                for (k, l, c) in self.rho[j].terms(&ring) {
                    for &(p, cp) in self.basis_product(i, k) {
                        let e = &mut cols[p * hdim + l][i * dim + j];
                        *e = ring.add(*e, ring.mul(c, cp));
                    }
                }
            }
        }
        linalg::is_invertible(&ring, &cols)
    }

    pub fn render(&self, e: &CleftElement) -> String {
        e.render(self.ring(), "v_g", "v_x")
    }
}
