//! Exact scalars: the rationals and quadratic towers over prime fields.
//!
//! Every [`Scalar`] carries a shared [`FieldCtx`] describing the tower it lives
//! in. Towers only ever grow by appending a level, so a context is a prefix of
//! every context derived from it. Over a prime field the tower is canonical: the
//! level added on top of level `k` depends on `p` and `k` alone, which makes
//! results computed in unrelated runs structurally comparable.

mod poly;
mod tower;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub use poly::Poly;

/// Largest prime accepted as a characteristic. Square roots at the bottom level
/// are found by exhaustive search, which is only sensible for small primes.
pub const MAX_PRIME: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("malformed scalar encoding: {0}")]
    Parse(String),
}

/// Minimal ring interface shared by [`Scalar`] and [`Poly`], so matrix code can be
/// evaluated both on field elements and on polynomials in a group parameter.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn int_like(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        let mut base = one;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            k >>= 1;
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }
}

/// Raw value of a tower element. Level `n >= 1` values are `lo + hi * t_n` with
/// `hi != 0`; anything with a zero top coefficient is stored one level down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Val {
    Q(BigRational),
    P(u64),
    X(Arc<Ext>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Ext {
    level: usize,
    lo: Val,
    hi: Val,
}

/// Defining polynomial `x^2 + b x + c` of one tower level over the level below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Level {
    b: Val,
    c: Val,
}

/// A field: `Q` or `F_p`, plus a finite list of quadratic extensions.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldCtx {
    characteristic: u64,
    levels: Vec<Level>,
}

impl FieldCtx {
    /// The rationals with no extensions.
    pub fn rational() -> Arc<FieldCtx> {
        Arc::new(FieldCtx { characteristic: 0, levels: Vec::new() })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<FieldCtx>, FieldError> {
        Self::finite_tower(p, 0)
    }

    /// The canonical tower over `F_p` with `depth` quadratic levels.
    pub fn finite_tower(p: u64, depth: usize) -> Result<Arc<FieldCtx>, FieldError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(FieldError::UnsupportedField(format!(
                "characteristic {p} is not a prime below {MAX_PRIME}"
            )));
        }
        Ok(tower::canonical(p, depth))
    }

    /// `Q` extended by the successive square roots of `radicands`; each radicand
    /// must be a non-square over the field built so far.
    pub fn rational_tower(radicands: &[Scalar]) -> Result<Arc<FieldCtx>, FieldError> {
        let mut ctx = FieldCtx::rational();
        for r in radicands {
            if r.characteristic() != 0 || r.level() > ctx.depth() {
                return Err(FieldError::UnsupportedField("radicand outside the tower".into()));
            }
            if tower::sqrt_in(&ctx, ctx.depth(), &r.v).is_some() {
                return Err(FieldError::UnsupportedField(format!(
                    "radicand {} is already a square",
                    r.encode()
                )));
            }
            ctx = ctx.appended(Level { b: ctx.zero_val(), c: tower::vneg(&ctx, &r.v) });
        }
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Number of quadratic levels above the prime field.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// `(b, c)` of the defining polynomial `x^2 + b x + c` of level `n` (1-based).
    pub fn defining_quadratic(self: &Arc<Self>, n: usize) -> (Scalar, Scalar) {
        let lv = &self.levels[n - 1];
        (
            Scalar { ctx: self.clone(), v: lv.b.clone() },
            Scalar { ctx: self.clone(), v: lv.c.clone() },
        )
    }

    /// True if `self` is a prefix of `other` (same characteristic, same lower levels).
    pub fn is_prefix_of(&self, other: &FieldCtx) -> bool {
        self.characteristic == other.characteristic
            && self.levels.len() <= other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a == b)
    }

    pub fn zero(self: &Arc<Self>) -> Scalar {
        Scalar { ctx: self.clone(), v: self.zero_val() }
    }

    pub fn one(self: &Arc<Self>) -> Scalar {
        self.int(1)
    }

    pub fn int(self: &Arc<Self>, n: i64) -> Scalar {
        Scalar { ctx: self.clone(), v: self.int_val(n) }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes in it.
    pub fn frac(self: &Arc<Self>, num: i64, den: i64) -> Result<Scalar, FieldError> {
        self.from_big_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big_rational(self: &Arc<Self>, q: &BigRational) -> Result<Scalar, FieldError> {
        let v = match self.characteristic {
            0 => Val::Q(q.clone()),
            p => {
                let pb = BigInt::from(p);
                let n = q.numer().mod_floor(&pb).to_u64().unwrap();
                let d = q.denom().mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                Val::P(n * inv_mod(d, p) % p)
            }
        };
        Ok(Scalar { ctx: self.clone(), v })
    }

    /// Uniformly random element of level `level` (finite fields) or a small
    /// random rational combination (characteristic 0).
    pub fn random<R: Rng + ?Sized>(self: &Arc<Self>, level: usize, rng: &mut R) -> Scalar {
        assert!(level <= self.depth(), "level {level} above tower depth {}", self.depth());
        Scalar { ctx: self.clone(), v: self.random_val(level, rng) }
    }

    fn random_val<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Val {
        if level == 0 {
            return match self.characteristic {
                0 => {
                    let n: i64 = rng.gen_range(-9..=9);
                    let d: i64 = if rng.gen_bool(0.3) { rng.gen_range(1..=4) } else { 1 };
                    Val::Q(BigRational::new(n.into(), d.into()))
                }
                p => Val::P(rng.gen_range(0..p)),
            };
        }
        let lo = self.random_val(level - 1, rng);
        let hi = self.random_val(level - 1, rng);
        tower::mk(self, level, lo, hi)
    }

    fn appended(&self, level: Level) -> Arc<FieldCtx> {
        let mut levels = self.levels.clone();
        levels.push(level);
        Arc::new(FieldCtx { characteristic: self.characteristic, levels })
    }

    /// Context with one more level on top: canonical for prime fields, the given
    /// radicand for `Q`.
    fn extended(self: &Arc<Self>, radicand: Option<&Val>) -> Arc<FieldCtx> {
        match self.characteristic {
            0 => {
                let r = radicand.expect("rational towers extend by an explicit radicand");
                self.appended(Level { b: self.zero_val(), c: tower::vneg(self, r) })
            }
            p => tower::canonical(p, self.depth() + 1),
        }
    }

    pub(crate) fn zero_val(&self) -> Val {
        match self.characteristic {
            0 => Val::Q(BigRational::zero()),
            _ => Val::P(0),
        }
    }

    pub(crate) fn int_val(&self, n: i64) -> Val {
        match self.characteristic {
            0 => Val::Q(BigRational::from_integer(n.into())),
            p => Val::P(n.rem_euclid(p as i64) as u64),
        }
    }

    pub fn encode(&self) -> (u64, Vec<(String, String)>) {
        let tower = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, lv)| (encode_at(self, &lv.b, i), encode_at(self, &lv.c, i)))
            .collect();
        (self.characteristic, tower)
    }

    /// Rebuilds a context from its encoding. Prime-field towers must agree with
    /// the canonical tower; rational towers must be of the form `x^2 - r`.
    pub fn decode(characteristic: u64, tower: &[(String, String)]) -> Result<Arc<FieldCtx>, FieldError> {
        if characteristic != 0 {
            let ctx = FieldCtx::finite_tower(characteristic, tower.len())?;
            for (i, (b, c)) in tower.iter().enumerate() {
                let lv = &ctx.levels[i];
                if encode_at(&ctx, &lv.b, i) != *b || encode_at(&ctx, &lv.c, i) != *c {
                    return Err(FieldError::UnsupportedField(format!(
                        "level {} differs from the canonical tower over F_{characteristic}",
                        i + 1
                    )));
                }
            }
            return Ok(ctx);
        }
        let mut ctx = FieldCtx::rational();
        for (b, c) in tower {
            let bv = decode_val(&ctx, b)?;
            let cv = decode_val(&ctx, c)?;
            if !tower::is_zero(&bv) {
                return Err(FieldError::UnsupportedField("rational levels must have b = 0".into()));
            }
            let r = Scalar { ctx: ctx.clone(), v: tower::vneg(&ctx, &cv) };
            ctx = FieldCtx::rational_tower_step(&ctx, &r)?;
        }
        Ok(ctx)
    }

    fn rational_tower_step(ctx: &Arc<FieldCtx>, r: &Scalar) -> Result<Arc<FieldCtx>, FieldError> {
        if tower::sqrt_in(ctx, ctx.depth(), &r.v).is_some() {
            return Err(FieldError::UnsupportedField(format!("radicand {} is a square", r.encode())));
        }
        Ok(ctx.extended(Some(&r.v)))
    }
}

/// An exact element of a [`FieldCtx`].
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<FieldCtx>,
    v: Val,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.ctx.characteristic == other.ctx.characteristic
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.v.hash(state)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

fn join<'a>(x: &'a Arc<FieldCtx>, y: &'a Arc<FieldCtx>) -> &'a Arc<FieldCtx> {
    if Arc::ptr_eq(x, y) {
        return x;
    }
    assert_eq!(x.characteristic, y.characteristic, "mixing scalars of different characteristic");
    if x.depth() >= y.depth() {
        x
    } else {
        y
    }
}

impl Scalar {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn characteristic(&self) -> u64 {
        self.ctx.characteristic
    }

    /// Minimal tower level containing this element.
    pub fn level(&self) -> usize {
        tower::lvl(&self.v)
    }

    pub fn is_zero(&self) -> bool {
        tower::is_zero(&self.v)
    }

    pub fn is_one(&self) -> bool {
        self.v == self.ctx.int_val(1)
    }

    /// Same value viewed in a (larger) compatible context.
    pub fn with_ctx(&self, ctx: &Arc<FieldCtx>) -> Scalar {
        debug_assert!(self.ctx.is_prefix_of(ctx));
        Scalar { ctx: ctx.clone(), v: self.v.clone() }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        tower::vinv(&self.ctx, &self.v)
            .map(|v| Scalar { ctx: self.ctx.clone(), v })
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.ctx.one().with_ctx(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square root, extending the tower by one level when `self` is not a square
    /// in its current context. Of the two roots the smaller under
    /// [`Scalar::canonical_cmp`] is returned. In characteristic 2 this is the
    /// inverse Frobenius map.
    pub fn sqrt(&self) -> Scalar {
        if self.is_zero() {
            return self.clone();
        }
        if self.characteristic() == 2 {
            let v = tower::frob_sqrt(&self.ctx, self.level(), &self.v);
            return Scalar { ctx: self.ctx.clone(), v };
        }
        let (ctx, r) = match tower::sqrt_in(&self.ctx, self.ctx.depth(), &self.v) {
            Some(r) => (self.ctx.clone(), r),
            None => tower::sqrt_by_extension(&self.ctx, &self.v),
        };
        let r = Scalar { ctx, v: r };
        let m = -r.clone();
        min_canonical(r, m)
    }

    /// A root of `x^2 + b x + c`, extending the tower by at most one level.
    /// Returns the smaller root under [`Scalar::canonical_cmp`].
    pub fn solve_quadratic(b: &Scalar, c: &Scalar) -> Scalar {
        let ctx = join(&b.ctx, &c.ctx).clone();
        let b = b.with_ctx(&ctx);
        let c = c.with_ctx(&ctx);
        if ctx.characteristic != 2 {
            let disc = &(&b * &b) - &(&ctx.int(4) * &c);
            let s = disc.sqrt();
            let half = ctx.int(2).inv().expect("odd characteristic");
            let r1 = &(&s - &b) * &half;
            let r2 = &(&(-s) - &b) * &half;
            return min_canonical(r1, r2);
        }
        if b.is_zero() {
            return c.sqrt();
        }
        let e = c.checked_div(&(&b * &b)).expect("b != 0");
        let (ctx, y) = match tower::as_in(&ctx, ctx.depth(), &e.v) {
            Some(y) => (ctx, y),
            None => {
                let ext = ctx.extended(None);
                let y = tower::as_in(&ext, ext.depth(), &e.v)
                    .expect("Artin-Schreier equations split one level up");
                (ext, y)
            }
        };
        let y = Scalar { ctx, v: y };
        let r1 = &b * &y;
        let r2 = &r1 + &b;
        min_canonical(r1, r2)
    }

    /// The total order used for every deterministic choice: lower level first,
    /// then the representation compared lexicographically.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        tower::vcmp(&self.v, &other.v)
    }

    /// Text encoding: `n` or `n/d` over `Q`, a residue over `F_p`, and `[LO,HI]`
    /// for higher levels with both halves written at the level below.
    pub fn encode(&self) -> String {
        encode_at(&self.ctx, &self.v, self.level())
    }

    pub fn decode(ctx: &Arc<FieldCtx>, s: &str) -> Result<Scalar, FieldError> {
        Ok(Scalar { ctx: ctx.clone(), v: decode_val(ctx, s)? })
    }

    /// The residue in `0..p`, if this is a level-0 element of `F_p`.
    pub fn residue(&self) -> Option<u64> {
        match &self.v {
            Val::P(x) => Some(*x),
            _ => None,
        }
    }

    /// The rational value, if this is a level-0 element of `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.v {
            Val::Q(q) => Some(q.clone()),
            _ => None,
        }
    }
}

fn min_canonical(a: Scalar, b: Scalar) -> Scalar {
    if b.canonical_cmp(&a) == Ordering::Less {
        b
    } else {
        a
    }
}

fn encode_at(ctx: &FieldCtx, v: &Val, level: usize) -> String {
    if level == 0 {
        return match v {
            Val::Q(q) if q.denom().is_one() => q.numer().to_string(),
            Val::Q(q) => format!("{}/{}", q.numer(), q.denom()),
            Val::P(x) => x.to_string(),
            Val::X(_) => unreachable!("extension value encoded at level 0"),
        };
    }
    let (lo, hi) = tower::parts(ctx, v, level);
    format!("[{},{}]", encode_at(ctx, &lo, level - 1), encode_at(ctx, &hi, level - 1))
}

fn decode_val(ctx: &FieldCtx, s: &str) -> Result<Val, FieldError> {
    let (v, level) = decode_inner(ctx, s.trim())?;
    if level > ctx.depth() {
        return Err(FieldError::Parse(format!("{s}: level {level} exceeds tower depth {}", ctx.depth())));
    }
    Ok(v)
}

fn decode_inner(ctx: &FieldCtx, s: &str) -> Result<(Val, usize), FieldError> {
    let bad = || FieldError::Parse(s.to_string());
    if let Some(body) = s.strip_prefix('[') {
        let body = body.strip_suffix(']').ok_or_else(bad)?;
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in body.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                ',' if depth == 0 => {
                    if split.is_some() {
                        return Err(bad());
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(bad)?;
        let (lo, ll) = decode_inner(ctx, body[..i].trim())?;
        let (hi, hl) = decode_inner(ctx, body[i + 1..].trim())?;
        if ll != hl {
            return Err(bad());
        }
        let level = ll + 1;
        if level > ctx.depth() {
            return Err(FieldError::Parse(format!("{s}: level {level} exceeds tower depth {}", ctx.depth())));
        }
        if tower::lvl(&lo) > ll || tower::lvl(&hi) > ll {
            return Err(bad());
        }
        return Ok((tower::mk(ctx, level, lo, hi), level));
    }
    match ctx.characteristic {
        0 => {
            let q = if let Some((n, d)) = s.split_once('/') {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            } else {
                BigRational::from_integer(s.parse().map_err(|_| bad())?)
            };
            Ok((Val::Q(q), 0))
        }
        p => {
            let x: u64 = s.parse().map_err(|_| bad())?;
            if x >= p {
                return Err(FieldError::Parse(format!("{s}: residue not reduced mod {p}")));
            }
            Ok((Val::P(x), 0))
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x, p - 2, p)
}

pub(crate) fn pow_mod(mut x: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    x %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * x % p;
        }
        x = x * x % p;
        e >>= 1;
    }
    acc
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn int_like(&self, n: i64) -> Self {
        self.ctx.int(n)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $f:path) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let ctx = join(&self.ctx, &rhs.ctx);
                Scalar { v: $f(ctx, &self.v, &rhs.v), ctx: ctx.clone() }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, tower::vadd);
scalar_binop!(Sub, sub, tower::vsub);
scalar_binop!(Mul, mul, tower::vmul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on a zero divisor; use [`Scalar::checked_div`] when that can happen.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { ctx: self.ctx.clone(), v: tower::vneg(&self.ctx, &self.v) }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Memo of canonical prime-field towers, indexed by characteristic then depth.
fn tower_cache() -> &'static Mutex<HashMap<u64, Vec<Arc<FieldCtx>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Arc<FieldCtx>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Sign key of the rational order: zero, then positive, then negative values.
pub(crate) fn signum_rank(q: &BigRational) -> u8 {
    if q.is_negative() {
        2
    } else if q.is_zero() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests;
