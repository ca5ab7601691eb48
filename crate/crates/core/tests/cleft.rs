mod common;

use std::sync::Arc;

use proptest::prelude::*;
use taftcleft::algebra::{tensor_mul, Algebra, Element, Tensor};
use taftcleft::cleft::{all_data, CleftAlgebra, CleftData};
use taftcleft::ring::{Elem, FiniteRing};
use taftcleft::taft::TaftAlgebra;

use common::*;

const ALGEBRAS: &[(&str, usize, &str)] = &[
    ("Z/5", 2, "4"),
    ("Z/7", 3, "2"),
    ("GF(4)", 3, "[0,1]"),
    ("F_5[t]/(t^2)", 2, "4"),
];

fn algebras() -> Vec<Arc<TaftAlgebra>> {
    ALGEBRAS.iter().map(|&(s, n, q)| taft(s, n, q)).collect()
}

fn pick(r: &FiniteRing, i: usize) -> Elem {
    r.elements().nth(i % r.size()).unwrap()
}

fn datum(r: &FiniteRing, u: usize, a: usize, b: usize) -> CleftData {
    let units = r.units();
    CleftData::new(units[u % units.len()], pick(r, a), pick(r, b))
}

fn element(b: &CleftAlgebra, picks: &[usize]) -> Element {
    let r = b.ring();
    Element::from_coeffs(b.order(), picks.iter().map(|&p| pick(r, p)).collect())
}

/// (rho (x) id) rho and (id (x) Delta) rho on basis element i, as dense arrays.
fn coassociativity_sides(b: &CleftAlgebra, i: usize) -> (Vec<Elem>, Vec<Elem>) {
    let r = b.ring();
    let h = b.taft();
    let (bd, hd) = (b.dim(), h.dim());
    let mut left = vec![r.zero(); bd * hd * hd];
    let mut right = left.clone();
    let at = |x: usize, y: usize, z: usize| (x * hd + y) * hd + z;
    for (k, j, c) in b.coaction_basis(i).terms(r) {
        for (k1, j1, c1) in b.coaction_basis(k).terms(r) {
            let e = &mut left[at(k1, j1, j)];
            *e = r.add(*e, r.mul(c, c1));
        }
        for (j1, j2, c2) in h.delta_basis(j).terms(r) {
            let e = &mut right[at(k, j1, j2)];
            *e = r.add(*e, r.mul(c, c2));
        }
    }
    (left, right)
}

#[test]
fn coaction_is_coassociative_and_counital() {
    for h in algebras() {
        let r = h.ring().clone();
        for d in all_data(&r).into_iter().step_by(7) {
            let b = CleftAlgebra::new(h.clone(), d).unwrap();
            for i in 0..b.dim() {
                let (l, rt) = coassociativity_sides(&b, i);
                assert_eq!(l, rt);
                // (id (x) eps) rho = id
                let mut back = vec![r.zero(); b.dim()];
                for (k, j, c) in b.coaction_basis(i).terms(&r) {
                    back[k] = r.add(back[k], r.mul(c, h.counit_basis(j)));
                }
                let mut want = vec![r.zero(); b.dim()];
                want[i] = r.one();
                assert_eq!(back, want);
            }
        }
    }
}

/// With b = 0 the basis multiplies by the closed form
/// (v_g^m1 v_x^n1)(v_g^m2 v_x^n2) = q^(n1 m2) u^[m1+m2 >= N] a^[n1+n2 >= N] v_g^(..) v_x^(..).
#[test]
fn b_zero_closed_form() {
    for h in algebras() {
        let r = h.ring().clone();
        let n = h.order();
        let q = h.q();
        for d in all_data(&r)
            .into_iter()
            .filter(|d| d.b == r.zero())
            .step_by(3)
        {
            let b = CleftAlgebra::new(h.clone(), d).unwrap();
            for (m1, n1, m2, n2) in (0..n).flat_map(|a| {
                (0..n)
                    .flat_map(move |c| (0..n).flat_map(move |e| (0..n).map(move |f| (a, c, e, f))))
            }) {
                let got = b.mul(&b.basis(m1, n1), &b.basis(m2, n2));
                let mut c = power(&r, q, (n1 * m2) as u64);
                if m1 + m2 >= n {
                    c = r.mul(c, d.u);
                }
                if n1 + n2 >= n {
                    c = r.mul(c, d.a);
                }
                let want = Element::monomial(&r, n, (m1 + m2) % n, (n1 + n2) % n, c);
                assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn convolution_inverse_by_definition() {
    for h in algebras() {
        let r = h.ring().clone();
        for d in all_data(&r).into_iter().step_by(11) {
            let b = CleftAlgebra::new(h.clone(), d).unwrap();
            let inv = b.convolution_inverse().unwrap();
            for i in 0..h.dim() {
                let mut left = b.zero();
                let mut right = b.zero();
                for (i1, i2, c) in h.delta_basis(i).terms(&r) {
                    let gamma = |k: usize| b.basis(k / h.order(), k % h.order());
                    left = left.add(&r, &b.mul(&gamma(i1), &inv[i2]).scale(&r, c));
                    right = right.add(&r, &b.mul(&inv[i1], &gamma(i2)).scale(&r, c));
                }
                let want = b.scalar(h.counit_basis(i));
                assert_eq!(left, want);
                assert_eq!(right, want);
            }
        }
    }
}

#[test]
fn coinvariants_are_scalars() {
    for h in algebras() {
        let r = h.ring().clone();
        for d in all_data(&r).into_iter().step_by(5) {
            let b = CleftAlgebra::new(h.clone(), d).unwrap();
            assert_eq!(
                b.coinvariants().form(),
                b.scalars().form(),
                "{}",
                d.format(&r)
            );
            assert!(b.galois_check());
        }
    }
}

#[test]
fn non_unit_u_is_rejected() {
    let h = taft("F_5[t]/(t^2)", 2, "4");
    let r = h.ring().clone();
    let t = r.parse_elem("[0,1]").unwrap();
    assert!(CleftAlgebra::new(h.clone(), CleftData::new(t, r.zero(), r.zero())).is_err());
}

fn strategy() -> impl Strategy<
    Value = (
        usize,
        (usize, usize, usize),
        Vec<usize>,
        Vec<usize>,
        Vec<usize>,
    ),
> {
    (0..ALGEBRAS.len()).prop_flat_map(|k| {
        let dim = ALGEBRAS[k].1 * ALGEBRAS[k].1;
        let v = proptest::collection::vec(0usize..1000, dim);
        (
            Just(k),
            (0usize..100, 0usize..100, 0usize..100),
            v.clone(),
            v.clone(),
            v,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative((k, (u, a, bb), x, y, z) in strategy()) {
        let h = &algebras()[k];
        let b = CleftAlgebra::new(h.clone(), datum(h.ring(), u, a, bb)).unwrap();
        let (x, y, z) = (element(&b, &x), element(&b, &y), element(&b, &z));
        prop_assert_eq!(b.mul(&b.mul(&x, &y), &z), b.mul(&x, &b.mul(&y, &z)));
    }

    #[test]
    fn coaction_is_an_algebra_map((k, (u, a, bb), x, y, _z) in strategy()) {
        let h = &algebras()[k];
        let b = CleftAlgebra::new(h.clone(), datum(h.ring(), u, a, bb)).unwrap();
        let (x, y) = (element(&b, &x), element(&b, &y));
        let lhs: Tensor = b.coaction(&b.mul(&x, &y));
        let rhs = tensor_mul(&b, h.as_ref(), &b.coaction(&x), &b.coaction(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn defining_relations_hold((k, (u, a, bb), _x, _y, _z) in strategy()) {
        let h = &algebras()[k];
        let r = h.ring();
        let d = datum(r, u, a, bb);
        let b = CleftAlgebra::new(h.clone(), d).unwrap();
        let n = h.order() as u64;
        let (g, x) = (b.v_g(), b.v_x());
        prop_assert_eq!(b.pow(&g, n), b.scalar(d.u));
        prop_assert_eq!(b.pow(&x, n), b.scalar(d.a));
        let rhs = b.mul(&g, &x).scale(r, h.q()).add(r, &b.mul(&g, &g).scale(r, d.b));
        prop_assert_eq!(b.mul(&x, &g), rhs);
    }
}
