//! Isomorphisms of cleft extensions. A comodule algebra map B_d' -> B_d is
//! determined by (s, t) with v_g' -> s v_g and v_x' -> v_x + t v_g, and it
//! exists iff
//!
//! ```text
//! u' = s^N u
//! a' = a + t (t + [1] b)(t + [2] b) ... (t + [N-1] b) u
//! b' = (b + t - q t) s^-1
//! ```
//!
//! where [j] = 1 + q + ... + q^(j-1). The middle equation is the expansion
//! (v_x + t v_g)^N = v_x^N + ((t + c)^N - c^N) v_g^N with c = b / (1 - q).

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{Algebra, Tensor};
use crate::cleft::{all_data_b0, CleftAlgebra, CleftData, CleftElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{block_exponents, is_nth_power_by_blocks, ring_structure, Elem, FiniteRing};
use crate::taft::TaftAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IsoWitness {
    pub s: Elem,
    pub t: Elem,
}

impl IsoWitness {
    pub fn identity(ring: &FiniteRing) -> Self {
        IsoWitness {
            s: ring.one(),
            t: ring.zero(),
        }
    }

    pub fn to_json(&self, ring: &FiniteRing) -> Value {
        json!({"s": ring.to_json(self.s), "t": ring.to_json(self.t)})
    }
}

/// t (t + [1] b)(t + [2] b) ... (t + [N-1] b).
pub fn a_shift(h: &TaftAlgebra, b: Elem, t: Elem) -> Elem {
    let ring = h.ring();
    let mut prod = t;
    let mut qint = ring.zero();
    for j in 1..h.order() {
        qint = ring.add(qint, h.params().q_pow(j - 1));
        prod = ring.mul(prod, ring.add(t, ring.mul(qint, b)));
    }
    prod
}

/// Which of the three compatibility equations hold for F: B_target <- B_source,
/// where `d` is the target datum and `d2` the source.
pub fn compatibility(h: &TaftAlgebra, d: &CleftData, d2: &CleftData, w: &IsoWitness) -> [bool; 3] {
    let ring = h.ring();
    let n = h.order();
    let q = h.q();
    let u_ok = d2.u == ring.mul(ring.pow(w.s, n as u64), d.u);
    let a_ok = d2.a == ring.add(d.a, ring.mul(a_shift(h, d.b, w.t), d.u));
    let b_ok = match ring.inverse(w.s) {
        Some(s_inv) => {
            let lhs = ring.sub(ring.add(d.b, w.t), ring.mul(q, w.t));
            d2.b == ring.mul(lhs, s_inv)
        }
        None => false,
    };
    [u_ok, a_ok, b_ok]
}

/// Images of the basis v_g'^m v_x'^n of the source under
/// v_g' -> s v_g, v_x' -> v_x + t v_g.
pub fn iso_images(target: &CleftAlgebra, w: &IsoWitness) -> Vec<CleftElement> {
    let ring = target.ring();
    let n = target.order();
    let fg = target.v_g().scale(ring, w.s);
    let fx = target.v_x().add(ring, &target.v_g().scale(ring, w.t));
    let mut out = Vec::with_capacity(n * n);
    for m in 0..n {
        let gm = target.pow(&fg, m as u64);
        for k in 0..n {
            out.push(target.mul(&gm, &target.pow(&fx, k as u64)));
        }
    }
    out
}

/// True iff the linear map with the given basis images is a bijective
/// comodule algebra map source -> target.
pub fn verify_map(source: &CleftAlgebra, target: &CleftAlgebra, images: &[CleftElement]) -> bool {
    let ring = target.ring();
    let dim = source.dim();
    if images[0] != target.one() {
        return false;
    }
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = target.zero();
            for &(k, c) in source.basis_product(i, j) {
                lhs = lhs.add(ring, &images[k].scale(ring, c));
            }
            if lhs != target.mul(&images[i], &images[j]) {
                return false;
            }
        }
    }
    let hdim = target.taft().dim();
    for k in 0..dim {
        let mut pushed = Tensor::zero(ring, dim, hdim);
        for (i, j, c) in source.coaction_basis(k).terms(ring) {
            for (l, &x) in images[i].coeffs().iter().enumerate() {
                if x != ring.zero() {
                    pushed.add_at(ring, l, j, ring.mul(c, x));
                }
            }
        }
        if target.coaction(&images[k]) != pushed {
            return false;
        }
    }
    let mut matrix = vec![vec![ring.zero(); dim]; dim];
    for (k, img) in images.iter().enumerate() {
        for (l, &x) in img.coeffs().iter().enumerate() {
            matrix[l][k] = x;
        }
    }
    linalg::is_invertible(ring, &matrix)
}

/// Whether (s, t) defines an isomorphism source -> target, decided by
/// building the map and checking it directly.
pub fn extends_to_isomorphism(
    source: &CleftAlgebra,
    target: &CleftAlgebra,
    w: &IsoWitness,
) -> bool {
    target.ring().is_unit(w.s) && verify_map(source, target, &iso_images(target, w))
}

/// Checks the compatibility equations for F: B_d2 -> B_d and verifies the
/// resulting map.
pub fn build_iso(
    h: &Arc<TaftAlgebra>,
    d: &CleftData,
    d2: &CleftData,
    s: Elem,
    t: Elem,
) -> Result<IsoWitness> {
    let ring = h.ring();
    if !ring.is_unit(s) {
        return Err(Error::InvalidWitness(format!(
            "s = {} is not a unit",
            ring.format(s)
        )));
    }
    let w = IsoWitness { s, t };
    let [u_ok, a_ok, b_ok] = compatibility(h, d, d2, &w);
    for (ok, name) in [
        (u_ok, "u' = s^N u"),
        (a_ok, "a' equation"),
        (b_ok, "b' equation"),
    ] {
        if !ok {
            return Err(Error::InvalidWitness(format!("{name} fails")));
        }
    }
    let source = CleftAlgebra::new(h.clone(), *d2)?;
    let target = CleftAlgebra::new(h.clone(), *d)?;
    if !extends_to_isomorphism(&source, &target, &w) {
        return Err(Error::Internal(format!(
            "compatible witness fails verification for {} -> {}",
            d2.format(ring),
            d.format(ring)
        )));
    }
    Ok(w)
}

/// The datum with b = 0 isomorphic to d, and the witness B_normal -> B_d
/// with s = 1, t = -b / (1 - q).
pub fn normalize_b(h: &TaftAlgebra, d: &CleftData) -> Result<(CleftData, IsoWitness)> {
    let ring = h.ring();
    let one_minus_q = ring.sub(ring.one(), h.q());
    let inv = ring
        .inverse(one_minus_q)
        .ok_or_else(|| Error::NotUnit(ring.format(one_minus_q)))?;
    let t = ring.neg(ring.mul(d.b, inv));
    let a = ring.add(d.a, ring.mul(a_shift(h, d.b, t), d.u));
    Ok((
        CleftData::new(d.u, a, ring.zero()),
        IsoWitness { s: ring.one(), t },
    ))
}

/// Per-ring data shared by the deciders.
pub struct IsoContext {
    taft: Arc<TaftAlgebra>,
    alpha: u64,
    blocks: Vec<(Elem, u64)>,
}

impl IsoContext {
    pub fn new(taft: Arc<TaftAlgebra>) -> Self {
        let structure = ring_structure(taft.ring());
        let blocks = block_exponents(taft.ring(), &structure.idempotents);
        IsoContext {
            taft,
            alpha: structure.alpha,
            blocks,
        }
    }

    pub fn taft(&self) -> &Arc<TaftAlgebra> {
        &self.taft
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.taft.ring()
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    /// Primitive idempotents with the unit exponent of their block.
    pub fn blocks(&self) -> &[(Elem, u64)] {
        &self.blocks
    }
}

/// Finds an N-th root of a unit.
pub trait RootFinder: Send + Sync {
    fn name(&self) -> &'static str;
    fn nth_root(&self, ctx: &IsoContext, c: Elem) -> Result<Option<Elem>>;
}

/// Tries every unit.
pub struct BruteForceRoots;

impl RootFinder for BruteForceRoots {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn nth_root(&self, ctx: &IsoContext, c: Elem) -> Result<Option<Elem>> {
        crate::ring::has_nth_root(ctx.ring(), c, ctx.taft.order())
    }
}

/// Decides N-th powers block by block and only searches for a root when one
/// exists. The global test c^k = 1 with k = alpha / N is necessary but not
/// sufficient: over Z/15 with N = 2, c = 11 has c^2 = 1 and no square root.
pub struct CriterionRoots;

impl RootFinder for CriterionRoots {
    fn name(&self) -> &'static str {
        "criterion"
    }

    fn nth_root(&self, ctx: &IsoContext, c: Elem) -> Result<Option<Elem>> {
        let ring = ctx.ring();
        let n = ctx.taft.order();
        if !ring.is_unit(c) {
            return Err(Error::NotUnit(ring.format(c)));
        }
        if !is_nth_power_by_blocks(ring, &ctx.blocks, c, n) {
            return Ok(None);
        }
        crate::ring::has_nth_root(ring, c, n)
    }
}

/// Decides whether B_d2 and B_d are isomorphic, returning a witness
/// F: B_d2 -> B_d when they are.
pub trait IsoDecider: Send + Sync {
    fn name(&self) -> &'static str;
    fn decide(&self, ctx: &IsoContext, d: &CleftData, d2: &CleftData)
        -> Result<Option<IsoWitness>>;
}

/// Reduce both data to b = 0, then compare a and look for s with u' = s^N u.
pub struct CriterionDecider {
    roots: Box<dyn RootFinder>,
}

impl CriterionDecider {
    pub fn new(roots: Box<dyn RootFinder>) -> Self {
        CriterionDecider { roots }
    }
}

impl IsoDecider for CriterionDecider {
    fn name(&self) -> &'static str {
        match self.roots.name() {
            "criterion" => "criterion",
            _ => "criterion-brute",
        }
    }

    fn decide(
        &self,
        ctx: &IsoContext,
        d: &CleftData,
        d2: &CleftData,
    ) -> Result<Option<IsoWitness>> {
        let h = &ctx.taft;
        let ring = ctx.ring();
        let (n1, _) = normalize_b(h, d)?;
        let (n2, _) = normalize_b(h, d2)?;
        if n1.a != n2.a {
            return Ok(None);
        }
        let c = ring.mul(n2.u, ring.try_inverse(n1.u)?);
        let Some(s) = self.roots.nth_root(ctx, c)? else {
            return Ok(None);
        };
        // b' = (b + (1 - q) t) / s
        let inv = ring.try_inverse(ring.sub(ring.one(), h.q()))?;
        let t = ring.mul(ring.sub(ring.mul(d2.b, s), d.b), inv);
        let w = IsoWitness { s, t };
        if compatibility(h, d, d2, &w) != [true; 3] {
            return Err(Error::Internal(format!(
                "criterion witness fails the equations for {} -> {}",
                d2.format(ring),
                d.format(ring)
            )));
        }
        Ok(Some(w))
    }
}

/// Search every (s, t) in R^x x R against the three equations.
pub struct ExhaustiveDecider;

impl IsoDecider for ExhaustiveDecider {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn decide(
        &self,
        ctx: &IsoContext,
        d: &CleftData,
        d2: &CleftData,
    ) -> Result<Option<IsoWitness>> {
        let ring = ctx.ring();
        for s in ring.units() {
            for t in ring.elements() {
                let w = IsoWitness { s, t };
                if compatibility(&ctx.taft, d, d2, &w) == [true; 3] {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }
}

/// Names accepted by [`iso_decider`].
pub const ISO_METHODS: &[&str] = &["criterion", "criterion-brute", "exhaustive"];

pub fn iso_decider(name: &str) -> Result<Box<dyn IsoDecider>> {
    match name {
        "criterion" => Ok(Box::new(CriterionDecider::new(Box::new(CriterionRoots)))),
        "criterion-brute" => Ok(Box::new(CriterionDecider::new(Box::new(BruteForceRoots)))),
        "exhaustive" => Ok(Box::new(ExhaustiveDecider)),
        other => Err(Error::UnknownStrategy(other.to_string())),
    }
}

pub fn are_isomorphic(
    ctx: &IsoContext,
    d: &CleftData,
    d2: &CleftData,
) -> Result<Option<IsoWitness>> {
    CriterionDecider::new(Box::new(CriterionRoots)).decide(ctx, d, d2)
}

/// Partition of the data with b = 0 into isomorphism classes, each class
/// and the list of classes in order of first member.
pub fn iso_classes(ctx: &IsoContext, decider: &dyn IsoDecider) -> Result<Vec<Vec<CleftData>>> {
    let mut classes: Vec<Vec<CleftData>> = Vec::new();
    'data: for d in all_data_b0(ctx.ring()) {
        for class in classes.iter_mut() {
            if decider.decide(ctx, &class[0], &d)?.is_some() {
                class.push(d);
                continue 'data;
            }
        }
        classes.push(vec![d]);
    }
    Ok(classes)
}
