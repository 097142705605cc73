use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::laurent::LaurentPoly;
use crate::rootsys::{GenSet, WeylElement};
use crate::Error;

fn ctx(t: &str, n: u32, eps: Option<&str>) -> AlgebraContext {
    AlgebraContext::from_settings(t, n, eps, None).unwrap()
}

fn q() -> LaurentPoly {
    LaurentPoly::v_minus_v_inv()
}

#[test]
fn quadratic_relation_in_a1() {
    let c = ctx("A1", 2, None);
    let s = c.group().simple(0);
    let triv = c.chars().trivial();
    let half = c.chars().parse("(1/2)").unwrap();
    let ts = c.basis(s, triv);
    let sq = c.mul(&ts, &ts).unwrap();
    assert_eq!(sq, &c.idempotent(triv) + &c.basis(s, triv).scale(&q()));
    let th = c.basis(s, half);
    assert_eq!(c.mul(&th, &th).unwrap(), c.idempotent(half));
    assert!(c.mul(&ts, &th).unwrap().is_zero());
}

#[test]
fn length_additive_products() {
    let c = ctx("A2", 3, None);
    let g = c.group();
    for l in c.chars().all() {
        for w in g.elements() {
            for x in g.elements() {
                if g.length(g.mul(w, x)) != g.length(w) + g.length(x) {
                    continue;
                }
                let lhs = c.mul(&c.basis(w, c.chars().act(x, l)), &c.basis(x, l)).unwrap();
                assert_eq!(lhs, c.basis(g.mul(w, x), l));
            }
        }
    }
}

#[test]
fn unit_and_idempotents() {
    let c = ctx("B2", 2, None);
    let one = c.unit();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let h = c.random_element(&mut rng, 4, false);
        assert_eq!(c.mul(&one, &h).unwrap(), h);
        assert_eq!(c.mul(&h, &one).unwrap(), h);
    }
    for a in c.chars().all() {
        for b in c.chars().all() {
            let p = c.mul(&c.idempotent(a), &c.idempotent(b)).unwrap();
            assert_eq!(p, if a == b { c.idempotent(a) } else { c.zero() });
        }
    }
}

#[test]
fn t_w_commutes_past_idempotents() {
    let c = ctx("A2", 3, None);
    for w in c.group().elements() {
        for l in c.chars().all() {
            let lhs = c.mul(&c.t(w), &c.idempotent(l)).unwrap();
            let rhs = c.mul(&c.idempotent(c.chars().act(w, l)), &c.t(w)).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, c.basis(w, l));
        }
    }
}

#[test]
fn associativity_random() {
    for (t, n, eps) in [("A2", 2, None), ("B2", 2, None), ("A2", 3, Some("flip"))] {
        let c = ctx(t, n, eps);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let a = c.random_element(&mut rng, 3, true);
            let b = c.random_element(&mut rng, 3, true);
            let d = c.random_element(&mut rng, 3, true);
            let left = c.mul(&c.mul(&a, &b).unwrap(), &d).unwrap();
            let right = c.mul(&a, &c.mul(&b, &d).unwrap()).unwrap();
            assert_eq!(left, right, "{t} n={n}");
        }
    }
}

#[test]
fn inverses() {
    let c = ctx("A1", 1, None);
    let s = c.group().simple(0);
    let l0 = c.chars().trivial();
    let inv = c.invert_basis(s);
    assert_eq!(inv, &c.basis(s, l0) - &c.idempotent(l0).scale(&q()));
    assert_eq!(c.mul(&c.t(s), &inv).unwrap(), c.idempotent(l0));
    assert_eq!(c.invert_basis(WeylElement::IDENTITY), c.unit());

    for n in [1, 2] {
        let c = ctx("A2", n, None);
        for w in c.group().elements() {
            let inv = c.invert_basis(w);
            assert_eq!(c.mul(&inv, &c.t(w)).unwrap(), c.unit());
            assert_eq!(c.mul(&c.t(w), &inv).unwrap(), c.unit());
        }
    }
}

#[test]
fn theta_is_an_automorphism_of_order_d() {
    let c = ctx("A2", 3, Some("flip"));
    assert_eq!(c.d(), 2);
    let (s1, s2) = (c.group().simple(0), c.group().simple(1));
    let l = c.chars().parse("(1/3,0)").unwrap();
    let dl = c.chars().parse("(0,1/3)").unwrap();
    assert_eq!(c.theta_twist(&c.basis(s1, l)), c.basis(s2, dl));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..25 {
        let a = c.random_element(&mut rng, 3, true);
        let b = c.random_element(&mut rng, 3, true);
        let ab = c.mul(&a, &b).unwrap();
        assert_eq!(c.theta_twist(&ab), c.mul(&c.theta_twist(&a), &c.theta_twist(&b)).unwrap());
        assert_eq!(c.theta_twist_pow(&a, 2), a);
    }
    let split = ctx("A2", 3, None);
    assert_eq!(split.d(), 1);
    let h = split.random_element(&mut rng, 4, false);
    assert_eq!(split.theta_twist(&h), h);
}

#[test]
fn conjugation_by_twist_is_theta() {
    for (t, eps, n) in [("A2", "flip", 1), ("A2", "flip", 2), ("A1xA1", "swap", 2)] {
        let c = ctx(t, n, Some(eps));
        let td = c.twist_generator();
        let td_inv = c.twist_power(-1);
        assert_eq!(c.mul(&td, &td_inv).unwrap(), c.unit());
        for k in c.basis_keys() {
            let x = c.monomial(k, LaurentPoly::one());
            let conj = c.mul_all(&[&td, &x, &td_inv]).unwrap();
            assert_eq!(conj, c.theta_twist(&x), "{t}");
        }
    }
}

#[test]
fn restriction_to_parabolic() {
    let c = ctx("A2", 1, None);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = c.random_element(&mut rng, 5, false);
    assert_eq!(c.restrict_hj(&h, GenSet::full(2)), h);
    let s = c.group().simple(0);
    assert!(c.restrict_hj(&c.basis(s, c.chars().trivial()), GenSet::empty()).is_zero());
    let j = GenSet::from_nodes([0]);
    let wj = c.group().parabolic(j);
    for &a in &wj {
        for &b in &wj {
            let p = c.mul(&c.t(a), &c.t(b)).unwrap();
            assert_eq!(c.restrict_hj(&p, j), p);
        }
    }
}

#[test]
fn render_parse_roundtrip() {
    let c = ctx("A2", 3, Some("flip"));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let h = c.random_element(&mut rng, 4, true);
        assert_eq!(c.parse(&c.render(&h)).unwrap(), h);
        assert_eq!(c.from_records(&c.to_records(&h)).unwrap(), h);
    }
    let w = c.group().mul(c.group().simple(0), c.group().simple(1));
    let l = c.chars().parse("(1/3,0)").unwrap();
    let h = c.basis(w, l).scale(&q());
    assert_eq!(c.render(&h), "T[s1 s2] 1[(1/3,0)] * (v - v^-1)");
    assert_eq!(c.render(&c.zero()), "0");
    assert!(c.parse("T[s1 s1] 1[(0,0)]").is_err());
    assert!(c.parse("T[s1] 1[(1/2,0)]").is_err());
}

#[test]
fn context_mismatch() {
    let a = ctx("A1", 1, None);
    let b = ctx("A1", 1, None);
    let err = a.mul(&a.unit(), &b.unit()).unwrap_err();
    assert_eq!(err, Error::ContextMismatch);
}

#[test]
fn zero_scalar_gives_zero() {
    let c = ctx("A1", 1, None);
    assert!(c.basis(c.group().simple(0), c.chars().trivial()).scale(&LaurentPoly::zero()).is_zero());
}
