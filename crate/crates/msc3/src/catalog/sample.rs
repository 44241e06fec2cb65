//! Random admissible parameters for catalog families.
//!
//! Plain families draw their parameters (biased towards 0 and ±1 so that the
//! degenerate branches are hit) and retry until the side conditions hold.
//! Kill conditions are repaired by moving along their line to a root; the
//! rank families prescribe the rank rows first and solve for the entries.

use std::sync::Arc;

use rand::Rng;

use super::guard::{along, Guard};
use super::rank::{position, TARGETS};
use super::{Family, Params};
use crate::field::{FieldCtx, Poly, Scalar};
use crate::linalg;
use crate::msc::{alpha, beta, Msc, StabilizerParams};
use crate::normalize::complete;

/// 0 with probability 1/4, ±1 with probability 1/4, otherwise uniform at `level`.
pub fn biased<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, level: usize, rng: &mut R) -> Scalar {
    match rng.gen_range(0..8) {
        0 | 1 => ctx.zero(),
        2 => ctx.one(),
        3 => ctx.int(-1),
        _ => ctx.random(level, rng),
    }
}

fn nonzero<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, level: usize, rng: &mut R) -> Scalar {
    loop {
        let x = biased(ctx, level, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// An instance of `family` over `ctx` with entries at tower level `level` or
/// below, or `None` if `attempts` draws all failed (the family may be empty
/// over this field).
pub fn sample_instance<R: Rng + ?Sized>(
    family: &Family,
    ctx: &Arc<FieldCtx>,
    level: usize,
    rng: &mut R,
    attempts: usize,
) -> Option<Msc<Scalar>> {
    let support = family.guards.iter().find_map(|g| match g {
        Guard::Support(s) => Some(s.clone()),
        _ => None,
    });
    (0..attempts).find_map(|_| match &support {
        Some(set) => support_draw(family, set, ctx, level, rng),
        None => plain_draw(family, ctx, level, rng),
    })
}

pub fn sample_params<R: Rng + ?Sized>(
    family: &Family,
    ctx: &Arc<FieldCtx>,
    level: usize,
    rng: &mut R,
    attempts: usize,
) -> Option<Params> {
    sample_instance(family, ctx, level, rng, attempts).map(|m| family.read_params(&m))
}

fn plain_draw<R: Rng + ?Sized>(family: &Family, ctx: &Arc<FieldCtx>, level: usize, rng: &mut R) -> Option<Msc<Scalar>> {
    let params = Params(family.params.iter().map(|c| (*c, biased(ctx, level, rng))).collect());
    let mut m = family.instantiate_in(ctx, &params).ok()?;
    for g in &family.guards {
        if let Guard::KillChain { dir, targets } = g {
            m = repair(&m, dir, targets, ctx)?;
        }
    }
    finish(family, m)
}

/// Moves along the kill line until the first moving target vanishes, using
/// only roots in `ctx`.
fn repair(m: &Msc<Scalar>, dir: &(super::Expr, super::Expr), targets: &[super::Expr], ctx: &Arc<FieldCtx>) -> Option<Msc<Scalar>> {
    let like = ctx.zero();
    let mut m = m.clone();
    for _ in 0..4 {
        let x = dir.0.eval(&like, &|c| m.get(c).clone())?;
        let y = dir.1.eval(&like, &|c| m.get(c).clone())?;
        let line = along(&m, &x, &y);
        let Some(p) = targets
            .iter()
            .filter_map(|t| t.eval(&Poly::constant(&like), &|c| line.get(c).clone()))
            .find(|p| !p.is_constant())
        else {
            return Some(m);
        };
        if p.coeff(0).is_zero() {
            return Some(m);
        }
        let t = match p.degree() {
            Some(1) => -&(&p.coeff(0) / &p.coeff(1)),
            Some(2) => {
                let u = p.coeff(2);
                let r = Scalar::solve_quadratic(&(&p.coeff(1) / &u), &(&p.coeff(0) / &u));
                if r.ctx().depth() > ctx.depth() {
                    return None;
                }
                r
            }
            _ => return None,
        };
        let one = ctx.one();
        m = m.act_stabilizer_ring(&(&x * &t), &(&y * &t), &one, &one);
    }
    None
}

fn finish(family: &Family, mut m: Msc<Scalar>) -> Option<Msc<Scalar>> {
    for g in &family.guards {
        if let Some(p) = g.better_representative(family, &m) {
            m = m.act_stabilizer(&p).ok()?;
        }
    }
    family.contains(&m).then_some(m)
}

/// Rank families: choose the rank rows with a span small enough for the
/// support to be minimal, solve for the first two rows, then set the gammas.
fn support_draw<R: Rng + ?Sized>(
    family: &Family,
    set: &[u8],
    ctx: &Arc<FieldCtx>,
    level: usize,
    rng: &mut R,
) -> Option<Msc<Scalar>> {
    let max_dim = match set.len() {
        4 => 0,
        3 => 1,
        _ => 2,
    };
    let rows = random_rows(ctx, level, max_dim, rng);
    let entries = solve_rows(&rows, ctx, level, rng)?;
    let mut m = Msc::zero(ctx);
    for (c, v) in [alpha(1), alpha(2), alpha(4), alpha(5), beta(1), beta(2), beta(4), beta(5)].iter().zip(entries) {
        m.set(*c, v);
    }
    let lead = set.first().copied();
    for &g in set {
        let v = if Some(g) == lead { ctx.one() } else { nonzero(ctx, level, rng) };
        m.set(TARGETS[position(g)], v);
    }
    complete(&mut m);
    family.contains(&m).then_some(m)
}

/// A random instance of the degenerate stratum handled by the rank families
/// (first two rows supported on columns 1, 2, 4, 5), with rank rows of a
/// random rank so that every support family has a fair chance. `None` when
/// the prescribed rows are not attainable over `ctx`.
pub fn degenerate_instance<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, level: usize, rng: &mut R) -> Option<Msc<Scalar>> {
    let rows = random_rows(ctx, level, 2, rng);
    let entries = solve_rows(&rows, ctx, level, rng)?;
    let mut m = Msc::zero(ctx);
    for (c, v) in [alpha(1), alpha(2), alpha(4), alpha(5), beta(1), beta(2), beta(4), beta(5)].iter().zip(entries) {
        m.set(*c, v);
    }
    for c in TARGETS {
        m.set(c, biased(ctx, level, rng));
    }
    complete(&mut m);
    Some(m)
}

/// Rank rows spanning a space of random dimension at most `max_dim`.
fn random_rows<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, level: usize, max_dim: usize, rng: &mut R) -> [[Scalar; 2]; 4] {
    // in characteristic 2 rows 2 and 3 always differ by (1, 1), so the rows
    // never vanish and a rank-one choice needs equal coefficients
    let char2 = ctx.characteristic() == 2;
    let dim = rng.gen_range(char2 as usize..=max_dim.max(char2 as usize));
    let z = ctx.zero();
    let mut rows = [[z.clone(), z.clone()], [z.clone(), z.clone()], [z.clone(), z.clone()], [z.clone(), z.clone()]];
    match dim {
        0 => {}
        1 => {
            let mut u: Vec<Scalar> = (0..4).map(|_| biased(ctx, level, rng)).collect();
            let (l, k) = if char2 {
                let l = nonzero(ctx, level, rng);
                u[2] = &u[1] + &l.inv().expect("nonzero");
                (l.clone(), l)
            } else {
                (biased(ctx, level, rng), biased(ctx, level, rng))
            };
            for i in 0..4 {
                rows[i] = [&u[i] * &l, &u[i] * &k];
            }
        }
        _ => {
            for r in rows.iter_mut() {
                *r = [biased(ctx, level, rng), biased(ctx, level, rng)];
            }
            if char2 {
                let one = ctx.one();
                rows[2] = [&rows[1][0] + &one, &rows[1][1] + &one];
            }
        }
    }
    rows
}

/// The rank rows are affine in `(a1, a2, a4, a5, b1, b2, b4, b5)`; solves for
/// entries producing `rows`, with a random kernel component when the map is singular.
fn solve_rows<R: Rng + ?Sized>(
    rows: &[[Scalar; 2]; 4],
    ctx: &Arc<FieldCtx>,
    level: usize,
    rng: &mut R,
) -> Option<Vec<Scalar>> {
    let k = |n: i64| ctx.int(n);
    // unknown order a1, a2, a4, a5, b1, b2, b4, b5; row i column j of the rank
    // rows as (linear coefficients, constant)
    let layout: [([i64; 8], i64); 8] = [
        ([3, 0, 0, 0, 0, 1, 1, 0], -1),
        ([0, 0, 0, 0, 1, 0, 0, 0], 0),
        ([0, 2, 0, 0, 0, 0, 0, 1], 0),
        ([1, 0, 0, 0, 0, 2, 0, 0], 0),
        ([0, 0, 2, 0, 0, 0, 0, 1], -1),
        ([1, 0, 0, 0, 0, 0, 2, 0], -1),
        ([0, 0, 0, 1, 0, 0, 0, 0], 0),
        ([0, 1, 1, 0, 0, 0, 0, 3], -1),
    ];
    let mat: Vec<Vec<Scalar>> = layout.iter().map(|(c, _)| c.iter().map(|&x| k(x)).collect()).collect();
    let rhs: Vec<Scalar> =
        layout.iter().enumerate().map(|(i, (_, c0))| &rows[i / 2][i % 2] - &k(*c0)).collect();
    let mut x = linalg::solve(&mat, &rhs)?;
    for v in linalg::kernel(&mat) {
        let s = biased(ctx, level, rng);
        for (xi, vi) in x.iter_mut().zip(&v) {
            *xi = &*xi + &(&s * vi);
        }
    }
    Some(x)
}

/// A random stabilizer element with `c != 0`, biased like [`biased`].
pub fn stabilizer<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, level: usize, rng: &mut R) -> StabilizerParams {
    StabilizerParams { a: biased(ctx, level, rng), b: biased(ctx, level, rng), c: nonzero(ctx, level, rng) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::rank::rank_rows;
    use crate::catalog::{families, Parity};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solved_rows_match() {
        for p in [0u64, 3, 2] {
            let ctx = if p == 0 { FieldCtx::rational() } else { FieldCtx::prime(p).unwrap() };
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            let mut hits = 0;
            for _ in 0..50 {
                let rows: [[Scalar; 2]; 4] = std::array::from_fn(|_| [ctx.random(0, &mut rng), ctx.random(0, &mut rng)]);
                let Some(x) = solve_rows(&rows, &ctx, 0, &mut rng) else { continue };
                hits += 1;
                let mut m = Msc::zero(&ctx);
                for (c, v) in [alpha(1), alpha(2), alpha(4), alpha(5), beta(1), beta(2), beta(4), beta(5)].iter().zip(x) {
                    m.set(*c, v);
                }
                complete(&mut m);
                assert_eq!(rank_rows(&m), rows);
            }
            assert!(hits > 0);
        }
    }

    #[test]
    fn odd_families_sample_over_q() {
        let q = FieldCtx::rational();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for f in families(Parity::Odd) {
            assert!(sample_instance(f, &q, 0, &mut rng, 500).is_some(), "{}", f.id);
        }
    }
}
