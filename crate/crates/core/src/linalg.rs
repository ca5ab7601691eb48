//! Exact linear algebra over residue rings Z/c, and R-linear maps between
//! free modules over a finite ring R.
//!
//! Submodules of (Z/c)^n are kept in Howell form, which is unique, so two
//! submodules are equal iff their forms are equal. An R-linear map R^n -> R^m
//! is handled as the group homomorphism it induces on coordinates: with c the
//! characteristic of R, every coordinate modulus divides c, and the map is
//! lifted to (Z/c)^{nd} -> (Z/c)^{md}. The lifted kernel contains the
//! coordinate relations, and it determines the R-kernel uniquely.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ring::{gcd, Elem, FiniteRing};

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// A unit u of Z/c with u*a = gcd(a, c).
fn unit_normalizer(a: u64, c: u64) -> u64 {
    if a == 0 {
        return 1;
    }
    let g = gcd(a, c);
    let (a1, c1) = (a / g, c / g);
    let u0 = if c1 == 1 {
        0
    } else {
        let (_, x, _) = ext_gcd(a1 as i128, c1 as i128);
        x.rem_euclid(c1 as i128) as u64
    };
    let mut u = u0;
    while gcd(u, c) != 1 {
        u += c1;
    }
    u % c
}

/// Incremental Howell-form builder over Z/c.
#[derive(Clone, Debug)]
pub struct Echelon {
    modulus: u64,
    ncols: usize,
    pivots: Vec<Option<Vec<u64>>>,
}

impl Echelon {
    pub fn new(modulus: u64, ncols: usize) -> Self {
        Echelon {
            modulus,
            ncols,
            pivots: vec![None; ncols],
        }
    }

    fn scaled(&self, row: &[u64], s: u64) -> Vec<u64> {
        let c = self.modulus;
        row.iter().map(|&x| x * s % c).collect()
    }

    pub fn insert(&mut self, row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.ncols);
        let c = self.modulus;
        let mut stack = vec![row];
        while let Some(mut r) = stack.pop() {
            let mut j = 0;
            loop {
                while j < self.ncols && r[j] == 0 {
                    j += 1;
                }
                if j == self.ncols {
                    break;
                }
                match &self.pivots[j] {
                    None => {
                        let u = unit_normalizer(r[j], c);
                        let r = self.scaled(&r, u);
                        let ann = self.scaled(&r, c / r[j]);
                        if ann.iter().any(|&x| x != 0) {
                            stack.push(ann);
                        }
                        self.pivots[j] = Some(r);
                        break;
                    }
                    Some(p) => {
                        let (a, b) = (p[j], r[j]);
                        if b % a == 0 {
                            let f = c - (b / a) % c;
                            for (x, &y) in r.iter_mut().zip(p.iter()).skip(j) {
                                *x = (*x + f * y) % c;
                            }
                        } else {
                            let (g, s, t) = ext_gcd(a as i128, b as i128);
                            let (s, t) = (
                                s.rem_euclid(c as i128) as u64,
                                t.rem_euclid(c as i128) as u64,
                            );
                            let g = g as u64;
                            let (pa, pb) = ((b / g) % c, c - (a / g) % c);
                            let mut new = vec![0u64; self.ncols];
                            let mut rest = vec![0u64; self.ncols];
                            for k in j..self.ncols {
                                new[k] = (s * p[k] + t * r[k]) % c;
                                rest[k] = (pa * p[k] + pb * r[k]) % c;
                            }
                            let ann = self.scaled(&new, c / g);
                            if ann.iter().any(|&x| x != 0) {
                                stack.push(ann);
                            }
                            self.pivots[j] = Some(new);
                            r = rest;
                        }
                    }
                }
            }
        }
    }

    /// Reduces entries above each pivot and returns the Howell form.
    pub fn finish(self) -> HowellForm {
        let c = self.modulus;
        let mut rows: Vec<(usize, Vec<u64>)> = self
            .pivots
            .into_iter()
            .enumerate()
            .filter_map(|(j, p)| p.map(|p| (j, p)))
            .collect();
        for idx in 0..rows.len() {
            let (j, ref pivot) = rows[idx];
            let pivot = pivot.clone();
            let pv = pivot[j];
            for row in rows[..idx].iter_mut() {
                let x = row.1[j];
                if x >= pv {
                    let f = c - (x / pv) % c;
                    for (y, &z) in row.1.iter_mut().zip(pivot.iter()).skip(j) {
                        *y = (*y + f * z) % c;
                    }
                }
            }
        }
        HowellForm {
            modulus: c,
            ncols: self.ncols,
            rows: rows.into_iter().map(|(_, r)| r).collect(),
        }
    }
}

/// Canonical generating set of a submodule of (Z/c)^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HowellForm {
    modulus: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
}

impl HowellForm {
    pub fn from_rows<I: IntoIterator<Item = Vec<u64>>>(
        modulus: u64,
        ncols: usize,
        rows: I,
    ) -> Self {
        let mut e = Echelon::new(modulus, ncols);
        for r in rows {
            e.insert(r);
        }
        e.finish()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn pivot(row: &[u64]) -> usize {
        row.iter().position(|&x| x != 0).expect("nonzero row")
    }

    /// Membership by reduction against the pivots.
    pub fn contains(&self, v: &[u64]) -> bool {
        let c = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|&x| x % c).collect();
        let mut next_row = 0;
        for j in 0..self.ncols {
            while next_row < self.rows.len() && Self::pivot(&self.rows[next_row]) < j {
                next_row += 1;
            }
            if v[j] == 0 {
                continue;
            }
            match self.rows.get(next_row) {
                Some(row) if Self::pivot(row) == j => {
                    if !v[j].is_multiple_of(row[j]) {
                        return false;
                    }
                    let f = c - (v[j] / row[j]) % c;
                    for (x, &y) in v.iter_mut().zip(row.iter()).skip(j) {
                        *x = (*x + f * y) % c;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Number of elements of the submodule.
    pub fn cardinality(&self) -> u128 {
        self.rows
            .iter()
            .map(|r| (self.modulus / r[Self::pivot(r)]) as u128)
            .product()
    }

    /// Every element, each written once as a combination of the rows with
    /// coefficients below the pivot's additive order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let c = self.modulus;
        let mut out = vec![vec![0u64; self.ncols]];
        for r in &self.rows {
            let order = c / r[Self::pivot(r)];
            let mut next = Vec::with_capacity(out.len() * order as usize);
            for base in &out {
                for k in 0..order {
                    next.push(base.iter().zip(r).map(|(&x, &y)| (x + k * y) % c).collect());
                }
            }
            out = next;
        }
        out
    }
}

/// Kernel of the matrix `a` (rows x ncols) acting on column vectors.
pub fn kernel_zn(modulus: u64, a: &[Vec<u64>], ncols: usize) -> HowellForm {
    let m = a.len();
    let mut e = Echelon::new(modulus, m + ncols);
    for i in 0..ncols {
        let mut row = vec![0u64; m + ncols];
        for (r, arow) in a.iter().enumerate() {
            row[r] = arow[i] % modulus;
        }
        row[m + i] = 1;
        e.insert(row);
    }
    let full = e.finish();
    let rows = full
        .rows
        .into_iter()
        .filter(|r| r[..m].iter().all(|&x| x == 0))
        .map(|r| r[m..].to_vec())
        .collect();
    HowellForm {
        modulus,
        ncols,
        rows,
    }
}

/// A submodule of R^n, stored through its lifted coordinate group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    n: usize,
    form: HowellForm,
}

/// Raw coordinates of a vector over R: n*d integers.
pub fn lift(ring: &FiniteRing, v: &[Elem]) -> Vec<u64> {
    v.iter().flat_map(|&x| ring.coords(x)).collect()
}

fn project(ring: &FiniteRing, raw: &[u64]) -> Vec<Elem> {
    raw.chunks(ring.dim())
        .map(|c| ring.from_coords(c))
        .collect()
}

/// The lifted matrix of an R-linear map given by its matrix over R.
fn lifted_matrix(ring: &FiniteRing, a: &[Vec<Elem>], ncols: usize) -> Vec<Vec<u64>> {
    let d = ring.dim();
    let c = ring.characteristic();
    let scale: Vec<u64> = ring.moduli().iter().map(|&m| c / m).collect();
    let mut out = vec![vec![0u64; ncols * d]; a.len() * d];
    for (r, row) in a.iter().enumerate() {
        for (i, &x) in row.iter().enumerate() {
            if x == ring.zero() {
                continue;
            }
            for k in 0..d {
                let img = ring.coords(ring.mul(x, ring.basis_element(k)));
                for (kk, &y) in img.iter().enumerate() {
                    out[r * d + kk][i * d + k] = y * scale[kk] % c;
                }
            }
        }
    }
    out
}

impl Submodule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &HowellForm {
        &self.form
    }

    pub fn contains(&self, ring: &FiniteRing, v: &[Elem]) -> bool {
        self.form.contains(&lift(ring, v))
    }

    /// True iff the submodule is {0}.
    pub fn is_zero(&self, ring: &FiniteRing) -> bool {
        let d = ring.dim();
        self.form.rows().iter().all(|row| {
            row.iter()
                .enumerate()
                .all(|(idx, &x)| x % ring.moduli()[idx % d] == 0)
        })
    }

    /// All elements; fails when more than `cap` lifted vectors would be
    /// enumerated.
    pub fn elements(&self, ring: &FiniteRing, cap: u128) -> Result<Vec<Vec<Elem>>> {
        let card = self.form.cardinality();
        if card > cap {
            return Err(Error::BudgetExceeded {
                size: card.min(u64::MAX as u128) as u64,
                budget: cap.min(u64::MAX as u128) as u64,
            });
        }
        let set: BTreeSet<Vec<Elem>> = self
            .form
            .elements()
            .iter()
            .map(|raw| project(ring, raw))
            .collect();
        Ok(set.into_iter().collect())
    }
}

/// Kernel of the R-linear map R^ncols -> R^rows with matrix `a`.
pub fn kernel(ring: &FiniteRing, a: &[Vec<Elem>], ncols: usize) -> Submodule {
    let lifted = lifted_matrix(ring, a, ncols);
    Submodule {
        n: ncols,
        form: kernel_zn(ring.characteristic(), &lifted, ncols * ring.dim()),
    }
}

/// Solutions of `a v = b`: a particular solution and the kernel, or `None`
/// when the system is inconsistent.
pub fn solve_affine(
    ring: &FiniteRing,
    a: &[Vec<Elem>],
    b: &[Elem],
    ncols: usize,
) -> Option<(Vec<Elem>, Submodule)> {
    let d = ring.dim();
    let c = ring.characteristic();
    let scale: Vec<u64> = ring.moduli().iter().map(|&m| c / m).collect();
    let lifted = lifted_matrix(ring, a, ncols);
    // unknowns: s (one Z/c scalar) followed by the lifted v; equation A v - s b = 0
    let extended: Vec<Vec<u64>> = lifted
        .into_iter()
        .enumerate()
        .map(|(row_idx, row)| {
            let bcoord = ring.coords(b[row_idx / d])[row_idx % d] * scale[row_idx % d] % c;
            let mut r = Vec::with_capacity(row.len() + 1);
            r.push((c - bcoord) % c);
            r.extend(row);
            r
        })
        .collect();
    let k = kernel_zn(c, &extended, ncols * d + 1);
    let mut particular = None;
    let mut rest = Vec::new();
    for row in k.rows() {
        if row[0] != 0 {
            if row[0] == 1 {
                particular = Some(project(ring, &row[1..]));
            }
        } else {
            rest.push(row[1..].to_vec());
        }
    }
    let particular = particular?;
    let form = HowellForm {
        modulus: c,
        ncols: ncols * d,
        rows: rest,
    };
    Some((particular, Submodule { n: ncols, form }))
}

/// Canonical generators of the additive group spanned by vectors in R^n.
pub fn additive_span(ring: &FiniteRing, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let d = ring.dim();
    let c = ring.characteristic();
    let scale: Vec<u64> = ring.moduli().iter().map(|&m| c / m).collect();
    let embedded = rows.iter().map(|r| {
        r.iter()
            .flat_map(|&x| {
                ring.coords(x)
                    .into_iter()
                    .zip(&scale)
                    .map(|(y, &s)| y * s % c)
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<u64>>()
    });
    let form = HowellForm::from_rows(c, ncols * d, embedded);
    form.rows
        .iter()
        .map(|row| {
            row.chunks(d)
                .map(|ch| {
                    let coords: Vec<u64> = ch.iter().zip(&scale).map(|(&y, &s)| y / s).collect();
                    ring.from_coords(&coords)
                })
                .collect()
        })
        .collect()
}

/// True iff the square matrix `a` defines a bijection R^n -> R^n.
pub fn is_invertible(ring: &FiniteRing, a: &[Vec<Elem>]) -> bool {
    // R^n is finite, so injective implies bijective
    a.iter().all(|r| r.len() == a.len()) && kernel(ring, a, a.len()).is_zero(ring)
}
