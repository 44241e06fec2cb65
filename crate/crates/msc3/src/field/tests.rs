use super::{Arc, FieldCtx, Ordering, Scalar};
use rand::Rng;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fp(p: u64) -> Arc<FieldCtx> {
    FieldCtx::prime(p).unwrap()
}

#[test]
fn rational_addition() {
    let q = FieldCtx::rational();
    let x = q.frac(1, 5).unwrap() + q.frac(2, 5).unwrap();
    assert_eq!(x.encode(), "3/5");
}

#[test]
fn prime_field_product() {
    let f = fp(7);
    assert_eq!((f.int(3) * f.int(5)).encode(), "1");
}

#[test]
fn generator_squares_to_radicand() {
    let f = FieldCtx::finite_tower(7, 1).unwrap();
    let (b, c) = f.defining_quadratic(1);
    assert!(b.is_zero());
    assert_eq!((-c).encode(), "3");
    let t = Scalar::decode(&f, "[0,1]").unwrap();
    assert_eq!((&t * &t).encode(), "3");
}

#[test]
fn sqrt_examples() {
    let q = FieldCtx::rational();
    assert_eq!(q.int(4).sqrt().encode(), "2");
    let f = fp(7);
    assert_eq!(f.int(2).sqrt().encode(), "3");
    let r = f.int(3).sqrt();
    assert_eq!(r.level(), 1);
    assert_eq!(r.encode(), "[0,1]");
    assert_eq!((&r * &r).encode(), "3");
}

#[test]
fn rational_sqrt_extracts_squarefree_part() {
    let q = FieldCtx::rational();
    let r = q.frac(8, 3).unwrap().sqrt();
    assert_eq!(r.ctx().depth(), 1);
    let (_, c) = r.ctx().defining_quadratic(1);
    assert_eq!(c.encode(), "-6");
    assert_eq!((&r * &r).encode(), "8/3");
    // a second root of the same radicand class reuses the level
    let s = r.ctx().frac(3, 2).unwrap().sqrt();
    assert_eq!(s.ctx().depth(), 1);
    assert_eq!((&s * &s).encode(), "3/2");
}

#[test]
fn quadratic_examples() {
    let q = FieldCtx::rational();
    assert_eq!(Scalar::solve_quadratic(&q.int(-5), &q.int(6)).encode(), "2");
    let f2 = fp(2);
    let w = Scalar::solve_quadratic(&f2.one(), &f2.one());
    assert_eq!(w.level(), 1);
    assert_eq!(&(&w * &w), &(&w + &f2.one()));
    let f4 = FieldCtx::finite_tower(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let a = f4.random(3, &mut rng);
        let r = Scalar::solve_quadratic(&f4.zero(), &(&a * &a));
        assert_eq!(r, a);
    }
}

#[test]
fn canonical_order_examples() {
    let f = fp(7);
    assert_eq!(f.int(2).canonical_cmp(&f.int(3)), Ordering::Less);
    assert_eq!(f.int(3).canonical_cmp(&f.int(4)), Ordering::Less);
    let t = f.int(3).sqrt();
    assert_eq!(t.canonical_cmp(&f.int(5)), Ordering::Greater);
}

#[test]
fn char2_tower_shape() {
    let f = FieldCtx::finite_tower(2, 2).unwrap();
    let (_, tower) = f.encode();
    assert_eq!(tower[0], ("1".into(), "1".into()));
    assert_eq!(tower[1], ("[1,0]".into(), "[0,1]".into()));
}

#[test]
fn deep_levels_adjoin_roots_missing_below() {
    for p in [2, 3, 7] {
        let f = FieldCtx::finite_tower(p, 5).unwrap();
        for n in 1..=5 {
            let (b, c) = f.defining_quadratic(n);
            let below = FieldCtx::finite_tower(p, n - 1).unwrap();
            let b = Scalar::decode(&below, &b.encode()).unwrap();
            let c = Scalar::decode(&below, &c.encode()).unwrap();
            assert_eq!(Scalar::solve_quadratic(&b, &c).level(), n, "p = {p}, level {n}");
        }
    }
}

#[test]
fn tower_is_canonical_and_shared() {
    let a = FieldCtx::finite_tower(3, 3).unwrap();
    let b = FieldCtx::finite_tower(3, 2).unwrap();
    assert!(b.is_prefix_of(&a));
    assert!(Arc::ptr_eq(&b, &FieldCtx::finite_tower(3, 2).unwrap()));
}

#[test]
fn encoding_round_trip() {
    for (p, depth) in [(0, 0), (2, 3), (3, 3), (7, 2)] {
        let ctx = if p == 0 {
            let q = FieldCtx::rational();
            FieldCtx::rational_tower(&[q.int(2), q.int(3)]).unwrap()
        } else {
            FieldCtx::finite_tower(p, depth).unwrap()
        };
        let (ch, tw) = ctx.encode();
        let back = FieldCtx::decode(ch, &tw).unwrap();
        assert_eq!(*back, *ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..200 {
            let lv = rng.gen_range(0..=ctx.depth());
            let x = ctx.random(lv, &mut rng);
            let s = x.encode();
            assert_eq!(Scalar::decode(&ctx, &s).unwrap(), x, "{s}");
        }
    }
}

#[test]
fn decode_rejects_garbage() {
    let f = fp(5);
    for s in ["5", "-1", "[1,2]", "x", "[1,[2,3]]", ""] {
        assert!(Scalar::decode(&f, s).is_err(), "{s}");
    }
    assert!(FieldCtx::decode(3, &[("0".into(), "2".into())]).is_err());
    assert!(FieldCtx::decode(3, &[("0".into(), "1".into())]).is_ok());
}

fn axioms(ctx: &Arc<FieldCtx>, level: usize, seed: u64, n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let x = ctx.random(level, &mut rng);
        let y = ctx.random(level, &mut rng);
        let z = ctx.random(level, &mut rng);
        assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        assert_eq!(&x * &y, &y * &x);
        assert!((&x - &x.clone()).is_zero());
        if !x.is_zero() {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}

#[test]
fn field_axioms_on_towers() {
    for p in [2, 3, 7] {
        let ctx = FieldCtx::finite_tower(p, 3).unwrap();
        for lv in 0..=3 {
            axioms(&ctx, lv, p * 10 + lv as u64, 300);
        }
    }
    let q = FieldCtx::rational();
    let ctx = FieldCtx::rational_tower(&[q.int(2), q.int(-3)]).unwrap();
    for lv in 0..=2 {
        axioms(&ctx, lv, 99 + lv as u64, 200);
    }
}

#[test]
fn roots_resubstitute() {
    for p in [2u64, 3, 5, 7] {
        let ctx = FieldCtx::finite_tower(p, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..300 {
            let lv = rng.gen_range(0..=2);
            let b = ctx.random(lv, &mut rng);
            let c = ctx.random(lv, &mut rng);
            let r = Scalar::solve_quadratic(&b, &c);
            assert!((&(&(&r * &r) + &(&b * &r)) + &c).is_zero());
            if p != 2 {
                let s = c.sqrt();
                assert_eq!(&s * &s, c);
            }
        }
    }
}

proptest! {
    #[test]
    fn rational_sqrt_of_squares(n in -50i64..50, d in 1i64..20) {
        let q = FieldCtx::rational();
        let x = q.frac(n, d).unwrap();
        let r = (&x * &x).sqrt();
        prop_assert!(r == x || r == -x.clone());
        prop_assert_eq!(r.ctx().depth(), 0);
    }

    #[test]
    fn canonical_order_is_total(a in 0u64..49, b in 0u64..49, c in 0u64..49) {
        let f = FieldCtx::finite_tower(7, 1).unwrap();
        let enc = |i: u64| Scalar::decode(&f, &format!("[{},{}]", i % 7, i / 7)).unwrap();
        let (x, y, z) = (enc(a), enc(b), enc(c));
        prop_assert_eq!(x.canonical_cmp(&y), y.canonical_cmp(&x).reverse());
        if x.canonical_cmp(&y) != Ordering::Greater && y.canonical_cmp(&z) != Ordering::Greater {
            prop_assert!(x.canonical_cmp(&z) != Ordering::Greater);
        }
        prop_assert_eq!(x.canonical_cmp(&y) == Ordering::Equal, x == y);
    }
}
