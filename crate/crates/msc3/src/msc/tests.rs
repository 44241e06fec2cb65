use super::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctxs() -> Vec<Arc<FieldCtx>> {
    vec![
        FieldCtx::rational(),
        FieldCtx::finite_tower(2, 2).unwrap(),
        FieldCtx::finite_tower(3, 1).unwrap(),
        FieldCtx::finite_tower(7, 1).unwrap(),
    ]
}

fn ints(ctx: &Arc<FieldCtx>, rows: usize, cols: usize, v: &[i64]) -> Matrix<Scalar> {
    Matrix::new(rows, cols, v.iter().map(|&x| ctx.int(x)).collect()).unwrap()
}

#[test]
fn kron_examples() {
    let q = FieldCtx::rational();
    let i2 = ints(&q, 2, 2, &[1, 0, 0, 1]);
    assert_eq!(i2.kron(&i2), ints(&q, 4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]));
    let m = ints(&q, 2, 2, &[1, 2, 3, 4]);
    let n = ints(&q, 2, 2, &[0, 1, 1, 0]);
    let expect = ints(&q, 4, 4, &[0, 1, 0, 2, 1, 0, 2, 0, 0, 3, 0, 4, 3, 0, 4, 0]);
    assert_eq!(m.kron(&n), expect);
    let e = |k: usize| -> [Scalar; 3] { std::array::from_fn(|i| q.int((i == k) as i64)) };
    let v = kron_vec(&e(0), &e(1));
    let hot: Vec<usize> = (0..9).filter(|&k| v[k].is_one()).collect();
    assert_eq!(hot, vec![1]);
}

#[test]
fn multiply_single_entry() {
    let q = FieldCtx::rational();
    let mut a = Msc::zero(&q);
    let e = |k: usize| -> [Scalar; 3] { std::array::from_fn(|i| q.int((i == k) as i64)) };
    assert!(a.multiply(&e(1), &e(2)).iter().all(|x| x.is_zero()));
    a.set(alpha(6), q.one()); // e2 e3 = e1
    let out = a.multiply(&e(1), &e(2));
    assert!(out[0].is_one() && out[1].is_zero() && out[2].is_zero());
}

#[test]
fn permutation_relabels() {
    let q = FieldCtx::rational();
    let mut a = Msc::zero(&q);
    a.set(alpha(6), q.one());
    let z = q.zero();
    let o = q.one();
    let g = BasisChange::new(Mat3 {
        m: [[z.clone(), o.clone(), z.clone()], [o.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), o]],
    })
    .unwrap();
    let b = a.act(&g);
    let mut expect = Msc::zero(&q);
    expect.set(beta(3), q.one()); // e1 e3 = e2
    assert_eq!(b, expect);
}

#[test]
fn identity_acts_trivially() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ctx in ctxs() {
        let a = Msc::random(&ctx, 0, &mut rng);
        assert_eq!(a.act(&BasisChange::identity(&ctx)), a);
        let p = StabilizerParams { a: ctx.zero(), b: ctx.zero(), c: ctx.one() };
        assert_eq!(a.act_stabilizer(&p).unwrap(), a);
    }
}

#[test]
fn action_law_and_trace_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for ctx in ctxs() {
        let lv = ctx.depth();
        for _ in 0..40 {
            let a = Msc::random(&ctx, lv, &mut rng);
            let g = BasisChange::random(&ctx, lv, &mut rng);
            let h = BasisChange::random(&ctx, lv, &mut rng);
            assert_eq!(a.act(&g.compose(&h)), a.act(&h).act(&g));
            let t = a.traces();
            let t2 = a.act(&g).traces();
            let gi = g.inverse_matrix();
            let row_times = |v: &[Scalar; 3]| -> [Scalar; 3] {
                std::array::from_fn(|j| &(&(&v[0] * &gi.m[0][j]) + &(&v[1] * &gi.m[1][j])) + &(&v[2] * &gi.m[2][j]))
            };
            assert_eq!(t2.tr1, row_times(&t.tr1));
            assert_eq!(t2.tr2, row_times(&t.tr2));
            let u: [Scalar; 3] = std::array::from_fn(|_| ctx.random(lv, &mut rng));
            let v: [Scalar; 3] = std::array::from_fn(|_| ctx.random(lv, &mut rng));
            let lhs = a.act(&g).multiply(&g.matrix().mul_vec(&u), &g.matrix().mul_vec(&v));
            let rhs = g.matrix().mul_vec(&a.multiply(&u, &v));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn stabilizer_formula_matches_generic_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for ctx in ctxs() {
        let lv = ctx.depth();
        for _ in 0..100 {
            let a = Msc::random(&ctx, lv, &mut rng);
            let p = StabilizerParams::random(&ctx, lv, &mut rng);
            let g = BasisChange::from_stabilizer(&p).unwrap();
            assert_eq!(a.act_stabilizer(&p).unwrap(), a.act(&g));
        }
    }
}

#[test]
fn third_block_last_column() {
    // column 3 of A'_3 is (c^2 a9, c^2 b9, c(-a a9 - b b9 - a7 - b8)) on normalized input
    let ctx = FieldCtx::rational();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut a = Msc::random(&ctx, 0, &mut rng);
    // force Tr_2 third component: a7 + b8 + g9 = 0
    let g9 = -(a.get(alpha(7)) + a.get(beta(8)));
    a.set(gamma(9), g9);
    let p = StabilizerParams::random(&ctx, 0, &mut rng);
    let b = a.act_stabilizer(&p).unwrap();
    let c2 = &p.c * &p.c;
    assert_eq!(*b.get(alpha(9)), &c2 * a.get(alpha(9)));
    assert_eq!(*b.get(beta(9)), &c2 * a.get(beta(9)));
    let expect = &p.c
        * &(-(&(&p.a * a.get(alpha(9))) + &(&p.b * a.get(beta(9)))) - a.get(alpha(7)) - a.get(beta(8)));
    assert_eq!(*b.get(gamma(9)), expect);
}

#[test]
fn diagonal_sign_flip() {
    let q = FieldCtx::rational();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = Msc::random(&q, 0, &mut rng);
    let z = q.zero();
    let g = BasisChange::new(Mat3 {
        m: [[q.one(), z.clone(), z.clone()], [z.clone(), q.one(), z.clone()], [z.clone(), z, q.int(-1)]],
    })
    .unwrap();
    let b = a.act(&g);
    for c in Coord::all() {
        // entry of e_k in e_i e_j picks up (-1)^(#3 among i, j, k)
        let i = c.col / 3;
        let j = c.col % 3;
        let n = [i == 2, j == 2, c.row == 2].iter().filter(|&&x| x).count();
        let expect = if n % 2 == 1 { -a.get(c) } else { a.get(c).clone() };
        assert_eq!(*b.get(c), expect, "{c}");
    }
}

#[test]
fn coord_names() {
    assert_eq!(alpha(7).name(), "a7");
    assert_eq!(gamma(3).greek(), "γ₃");
    assert_eq!(Coord::parse("b8"), Some(beta(8)));
    assert_eq!(Coord::parse("β8"), Some(beta(8)));
    assert_eq!(Coord::parse("a0"), None);
}

#[test]
fn traces_example() {
    let q = FieldCtx::rational();
    let mut a = Msc::zero(&q);
    for i in 1..=9u8 {
        a.set(alpha(i), q.int(i as i64));
    }
    let t = a.traces();
    let s = |v: &[Scalar; 3]| v.iter().map(|x| x.encode()).collect::<Vec<_>>().join(",");
    assert_eq!(s(&t.tr1), "1,2,3");
    assert_eq!(s(&t.tr2), "1,4,7");
}
