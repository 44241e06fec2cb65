//! Arithmetic on raw tower values and the recursive root-finding algorithms.
//!
//! Odd characteristic and `Q` levels are always `x^2 - d`; characteristic-2
//! levels are Artin-Schreier extensions `x^2 + x + delta`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{inv_mod, pow_mod, signum_rank, tower_cache, Ext, FieldCtx, Level, Val};

pub(crate) fn lvl(v: &Val) -> usize {
    match v {
        Val::X(e) => e.level,
        _ => 0,
    }
}

pub(crate) fn is_zero(v: &Val) -> bool {
    match v {
        Val::Q(q) => q.is_zero(),
        Val::P(x) => *x == 0,
        Val::X(_) => false,
    }
}

/// `lo + hi * t_level`, demoted when `hi` vanishes.
pub(crate) fn mk(_ctx: &FieldCtx, level: usize, lo: Val, hi: Val) -> Val {
    if is_zero(&hi) {
        lo
    } else {
        debug_assert!(level >= 1 && lvl(&lo) < level && lvl(&hi) < level);
        Val::X(Arc::new(Ext { level, lo, hi }))
    }
}

/// `v` written as `(lo, hi)` over level `level - 1`; requires `lvl(v) <= level`.
pub(crate) fn parts(ctx: &FieldCtx, v: &Val, level: usize) -> (Val, Val) {
    match v {
        Val::X(e) if e.level == level => (e.lo.clone(), e.hi.clone()),
        _ => (v.clone(), ctx.zero_val()),
    }
}

fn base_p(ctx: &FieldCtx) -> u64 {
    ctx.characteristic
}

/// Sum or product of two rationals with `i128` parts, or `None` on overflow;
/// big-integer gcds dominate tower arithmetic over `Q` otherwise.
fn small_op(a: &BigRational, b: &BigRational, mul: bool) -> Option<BigRational> {
    let parts = |q: &BigRational| Some((q.numer().to_i128()?, q.denom().to_i128()?));
    let ((an, ad), (bn, bd)) = (parts(a)?, parts(b)?);
    let d = ad.checked_mul(bd)?;
    let n = if mul { an.checked_mul(bn)? } else { an.checked_mul(bd)?.checked_add(bn.checked_mul(ad)?)? };
    let g = n.gcd(&d);
    Some(BigRational::new_raw(BigInt::from(n / g), BigInt::from(d / g)))
}

pub(crate) fn vadd(ctx: &FieldCtx, x: &Val, y: &Val) -> Val {
    match (x, y) {
        (Val::P(a), Val::P(b)) => Val::P((a + b) % base_p(ctx)),
        (Val::Q(a), Val::Q(b)) => Val::Q(small_op(a, b, false).unwrap_or_else(|| a + b)),
        _ => {
            let n = lvl(x).max(lvl(y));
            let (xl, xh) = parts(ctx, x, n);
            let (yl, yh) = parts(ctx, y, n);
            mk(ctx, n, vadd(ctx, &xl, &yl), vadd(ctx, &xh, &yh))
        }
    }
}

pub(crate) fn vneg(ctx: &FieldCtx, x: &Val) -> Val {
    match x {
        Val::P(a) => Val::P((base_p(ctx) - a) % base_p(ctx)),
        Val::Q(a) => Val::Q(-a),
        Val::X(e) => mk(ctx, e.level, vneg(ctx, &e.lo), vneg(ctx, &e.hi)),
    }
}

pub(crate) fn vsub(ctx: &FieldCtx, x: &Val, y: &Val) -> Val {
    match (x, y) {
        (Val::P(a), Val::P(b)) => {
            let p = base_p(ctx);
            Val::P((a + p - b) % p)
        }
        (Val::Q(a), Val::Q(b)) => Val::Q(small_op(a, &-b, false).unwrap_or_else(|| a - b)),
        _ => vadd(ctx, x, &vneg(ctx, y)),
    }
}

pub(crate) fn vmul(ctx: &FieldCtx, x: &Val, y: &Val) -> Val {
    match (x, y) {
        (Val::P(a), Val::P(b)) => Val::P(a * b % base_p(ctx)),
        (Val::Q(a), Val::Q(b)) => Val::Q(small_op(a, b, true).unwrap_or_else(|| a * b)),
        _ => {
            let (lx, ly) = (lvl(x), lvl(y));
            if lx < ly {
                let (yl, yh) = parts(ctx, y, ly);
                return mk(ctx, ly, vmul(ctx, x, &yl), vmul(ctx, x, &yh));
            }
            if ly < lx {
                let (xl, xh) = parts(ctx, x, lx);
                return mk(ctx, lx, vmul(ctx, &xl, y), vmul(ctx, &xh, y));
            }
            let n = lx;
            let Level { b, c } = &ctx.levels[n - 1];
            let (xl, xh) = parts(ctx, x, n);
            let (yl, yh) = parts(ctx, y, n);
            let ll = vmul(ctx, &xl, &yl);
            let hh = vmul(ctx, &xh, &yh);
            // three products: xl yh + xh yl = (xl + xh)(yl + yh) - ll - hh
            let sum = vmul(ctx, &vadd(ctx, &xl, &xh), &vadd(ctx, &yl, &yh));
            let cross = vsub(ctx, &vsub(ctx, &sum, &ll), &hh);
            // t^2 = -b t - c
            let lo = vsub(ctx, &ll, &vmul(ctx, &hh, c));
            let hi = if is_zero(b) { cross } else { vsub(ctx, &cross, &vmul(ctx, &hh, b)) };
            mk(ctx, n, lo, hi)
        }
    }
}

pub(crate) fn vinv(ctx: &FieldCtx, x: &Val) -> Option<Val> {
    match x {
        Val::P(0) => None,
        Val::P(a) => Some(Val::P(inv_mod(*a, base_p(ctx)))),
        Val::Q(q) if q.is_zero() => None,
        Val::Q(q) => Some(Val::Q(q.recip())),
        Val::X(e) => {
            let n = e.level;
            let Level { b, c } = &ctx.levels[n - 1];
            let (l, h) = (&e.lo, &e.hi);
            // conjugate of t is -b - t; norm = l^2 - l h b + h^2 c
            let conj_lo = vsub(ctx, l, &vmul(ctx, h, b));
            let norm = vadd(ctx, &vmul(ctx, l, &conj_lo), &vmul(ctx, &vmul(ctx, h, h), c));
            let ni = vinv(ctx, &norm)?;
            Some(mk(ctx, n, vmul(ctx, &conj_lo, &ni), vneg(ctx, &vmul(ctx, h, &ni))))
        }
    }
}

pub(crate) fn vcmp(x: &Val, y: &Val) -> Ordering {
    lvl(x).cmp(&lvl(y)).then_with(|| match (x, y) {
        (Val::Q(a), Val::Q(b)) => signum_rank(a)
            .cmp(&signum_rank(b))
            .then_with(|| a.numer().cmp(b.numer()))
            .then_with(|| a.denom().cmp(b.denom())),
        (Val::P(a), Val::P(b)) => a.cmp(b),
        (Val::X(a), Val::X(b)) => vcmp(&a.lo, &b.lo).then_with(|| vcmp(&a.hi, &b.hi)),
        _ => unreachable!("values of one level share a representation"),
    })
}

/// The canonical tower over `F_p` of the given depth (memoized).
pub(crate) fn canonical(p: u64, depth: usize) -> Arc<FieldCtx> {
    let mut cache = tower_cache().lock().unwrap_or_else(|e| e.into_inner());
    let chain = cache
        .entry(p)
        .or_insert_with(|| vec![Arc::new(FieldCtx { characteristic: p, levels: Vec::new() })]);
    while chain.len() <= depth {
        let top = chain.last().unwrap().clone();
        let level = next_level(&top);
        chain.push(top.appended(level));
    }
    chain[depth].clone()
}

/// Level `k + 1` over the top level `k` of `ctx`: adjoin the square root of the
/// first non-square (odd `p`) or a root of `x^2 + x + delta` with `delta` the
/// first element of absolute trace one (`p = 2`), in the enumeration order of
/// [`nth_element`].
fn next_level(ctx: &FieldCtx) -> Level {
    let k = ctx.depth();
    let p = ctx.characteristic;
    // below index q every element lies in level k - 1, where all elements are
    // squares of level k and have trace zero, so the scan can start at q
    let mut i: u128 = if k == 0 { 1 } else { (p as u128).pow(1 << (k - 1)) };
    loop {
        let Some(v) = nth_element(ctx, k, i) else {
            unreachable!("every finite field has a non-square and a trace-one element")
        };
        if p == 2 {
            if trace2(ctx, k, &v) {
                return Level { b: Val::P(1), c: v };
            }
        } else if !is_square_finite(ctx, k, &v) {
            return Level { b: Val::P(0), c: vneg(ctx, &v) };
        }
        i += 1;
    }
}

/// Elements of level `k` indexed by base-`q` digits, with the high half as the
/// more significant digit. Returns `None` past the end of the field.
fn nth_element(ctx: &FieldCtx, k: usize, i: u128) -> Option<Val> {
    let p = ctx.characteristic as u128;
    if k == 0 {
        return (i < p).then_some(Val::P(i as u64));
    }
    let q = p.checked_pow(1 << (k - 1)).unwrap_or(u128::MAX);
    let lo = nth_element(ctx, k - 1, i % q)?;
    let hi = nth_element(ctx, k - 1, i / q)?;
    Some(mk(ctx, k, lo, hi))
}

/// Quadratic residuosity in the level-`k` field of an odd-characteristic tower,
/// through the norm map down to the prime field.
pub(crate) fn is_square_finite(ctx: &FieldCtx, k: usize, v: &Val) -> bool {
    if k == 0 {
        return match v {
            Val::P(0) => true,
            Val::P(a) => {
                let p = ctx.characteristic;
                pow_mod(*a, (p - 1) / 2, p) == 1
            }
            _ => unreachable!(),
        };
    }
    let (l, h) = parts(ctx, v, k);
    let c = &ctx.levels[k - 1].c;
    let norm = vadd(ctx, &vmul(ctx, &l, &l), &vmul(ctx, &vmul(ctx, &h, &h), c));
    is_square_finite(ctx, k - 1, &norm)
}

/// Absolute trace to `F_2` of a level-`k` element: the trace of `lo + hi t`
/// down one level is `hi`, since the two roots of `x^2 + x + delta` sum to one.
pub(crate) fn trace2(ctx: &FieldCtx, k: usize, v: &Val) -> bool {
    if k == 0 {
        return matches!(v, Val::P(1));
    }
    let (_, h) = parts(ctx, v, k);
    trace2(ctx, k - 1, &h)
}

/// A square root of `v` inside the level-`k` field (odd characteristic or `Q`),
/// if one exists there.
pub(crate) fn sqrt_in(ctx: &FieldCtx, k: usize, v: &Val) -> Option<Val> {
    if k == 0 {
        return match v {
            Val::P(a) => {
                let p = ctx.characteristic;
                (0..p).find(|r| r * r % p == *a).map(Val::P)
            }
            Val::Q(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                (&n * &n == *q.numer() && &d * &d == *q.denom())
                    .then(|| Val::Q(BigRational::new(n, d)))
            }
            Val::X(_) => unreachable!(),
        };
    }
    // level k is x^2 - d
    let d = vneg(ctx, &ctx.levels[k - 1].c);
    let (l, h) = parts(ctx, v, k);
    if is_zero(&h) {
        if let Some(r) = sqrt_in(ctx, k - 1, &l) {
            return Some(r);
        }
        let q = vmul(ctx, &l, &vinv(ctx, &d)?);
        return sqrt_in(ctx, k - 1, &q).map(|s| mk(ctx, k, ctx.zero_val(), s));
    }
    let norm = vsub(ctx, &vmul(ctx, &l, &l), &vmul(ctx, &vmul(ctx, &h, &h), &d));
    let n = sqrt_in(ctx, k - 1, &norm)?;
    let half = vinv(ctx, &ctx.int_val(2))?;
    for s in [n.clone(), vneg(ctx, &n)] {
        let u2 = vmul(ctx, &vadd(ctx, &l, &s), &half);
        if let Some(u) = sqrt_in(ctx, k - 1, &u2) {
            if let Some(ui) = vinv(ctx, &u) {
                let w = vmul(ctx, &vmul(ctx, &h, &half), &ui);
                return Some(mk(ctx, k, u, w));
            }
        }
    }
    None
}

/// Square root of a non-square of the top level, living one level up.
pub(crate) fn sqrt_by_extension(ctx: &Arc<FieldCtx>, v: &Val) -> (Arc<FieldCtx>, Val) {
    if ctx.characteristic != 0 {
        let ext = ctx.extended(None);
        let k = ext.depth();
        // non-squares form one coset, so v / d is a square one level down
        let d = vneg(&ext, &ext.levels[k - 1].c);
        let q = vmul(&ext, v, &vinv(&ext, &d).expect("nonzero radicand"));
        let s = sqrt_in(&ext, k - 1, &q).expect("quotient of non-squares is a square");
        return (ext.clone(), mk(&ext, k, ext.zero_val(), s));
    }
    match v {
        Val::Q(q) => {
            // q = (f / den)^2 * s with s squarefree
            let m = q.numer() * q.denom();
            let (s, f) = squarefree_split(&m);
            let radicand = Val::Q(BigRational::from_integer(s));
            let ext = ctx.extended(Some(&radicand));
            let coeff = Val::Q(BigRational::new(f, q.denom().clone()));
            let k = ext.depth();
            (ext.clone(), mk(&ext, k, ext.zero_val(), coeff))
        }
        _ => {
            let ext = ctx.extended(Some(v));
            let k = ext.depth();
            (ext.clone(), mk(&ext, k, ext.zero_val(), Val::Q(BigRational::one())))
        }
    }
}

/// Writes `m = s * f^2` with `s` squarefree (sign kept in `s`).
fn squarefree_split(m: &BigInt) -> (BigInt, BigInt) {
    let mut rest = m.abs();
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            s *= &d;
        }
        f *= d.pow(e / 2);
        d += 1;
    }
    s *= rest;
    if m.is_negative() {
        s = -s;
    }
    (s, f)
}

/// Inverse Frobenius in a characteristic-2 tower: with `t^2 = t + delta`,
/// `(u + w t)^2 = u^2 + w^2 delta + w^2 t`.
pub(crate) fn frob_sqrt(ctx: &FieldCtx, k: usize, v: &Val) -> Val {
    if k == 0 {
        return v.clone();
    }
    let (l, h) = parts(ctx, v, k);
    let delta = &ctx.levels[k - 1].c;
    let w = frob_sqrt(ctx, k - 1, &h);
    let u = frob_sqrt(ctx, k - 1, &vadd(ctx, &l, &vmul(ctx, &h, delta)));
    mk(ctx, k, u, w)
}

/// A root of `y^2 + y = e` in the level-`k` field of a characteristic-2 tower.
/// With `y = u + v t` the equation splits into `v^2 + v = hi` and
/// `u^2 + u = lo + v^2 delta`; exactly one of the two choices of `v` makes the
/// second solvable.
pub(crate) fn as_in(ctx: &FieldCtx, k: usize, e: &Val) -> Option<Val> {
    if k == 0 {
        return is_zero(e).then_some(Val::P(0));
    }
    let (l, h) = parts(ctx, e, k);
    let delta = &ctx.levels[k - 1].c;
    let v0 = as_in(ctx, k - 1, &h)?;
    for v in [v0.clone(), vadd(ctx, &v0, &Val::P(1))] {
        let rhs = vadd(ctx, &l, &vmul(ctx, &vmul(ctx, &v, &v), delta));
        if let Some(u) = as_in(ctx, k - 1, &rhs) {
            return Some(mk(ctx, k, u, v));
        }
    }
    None
}
