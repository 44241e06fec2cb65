//! The linear system governing the last two cases.
//!
//! When rows 1-2 of the third block and `a3, a6, b3, b6` all vanish, the
//! stabilizer moves only the gamma entries `v = (g1, g2, g4, g5)`, by
//! `v -> (v - a R1 - b R2) / c` where `(R1[i], R2[i])` is rank row `i`.
//! Which entries can be cleared at once is a question of ranks; the normal form
//! keeps the first support set `S` (in [`SUPPORT_ORDER`]) with
//! `v in span(R1, R2) + span(e_S)`.

use crate::field::Scalar;
use crate::linalg;
use crate::msc::{alpha, beta, gamma, Coord, Msc};

/// Candidate supports, listed by gamma index, in the order they are tried.
pub const SUPPORT_ORDER: [&[u8]; 16] = [
    &[],
    &[1],
    &[2],
    &[4],
    &[5],
    &[1, 2],
    &[1, 4],
    &[2, 4],
    &[1, 5],
    &[2, 5],
    &[4, 5],
    &[2, 4, 5],
    &[1, 4, 5],
    &[1, 2, 5],
    &[1, 2, 4],
    &[1, 2, 4, 5],
];

/// The gamma entries moved by the system.
pub const TARGETS: [Coord; 4] = [Coord::new(2, 0), Coord::new(2, 1), Coord::new(2, 3), Coord::new(2, 4)];

pub(crate) fn position(index: u8) -> usize {
    match index {
        1 => 0,
        2 => 1,
        4 => 2,
        5 => 3,
        _ => panic!("not a rank target: {index}"),
    }
}

pub(crate) fn support_name(set: &[u8]) -> String {
    let names: Vec<String> = set.iter().map(|&i| gamma(i).greek()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Rows 1-4 as `(coefficient of a, coefficient of b)`:
/// `(3a1 + b2 + b4 - 1, b1)`, `(2a2 + b5, a1 + 2b2)`,
/// `(2a4 + b5 - 1, a1 + 2b4 - 1)`, `(a5, a2 + a4 + 3b5 - 1)`.
/// Row 2 picks up `g8 = -a2 - b5` through `a` and `g3 = -a1 - b2` through `b`.
pub fn rank_rows(m: &Msc<Scalar>) -> [[Scalar; 2]; 4] {
    let v = |c: Coord| m.get(c).clone();
    let k = |n: i64| m.ctx().int(n);
    let (a1, a2, a4, a5) = (v(alpha(1)), v(alpha(2)), v(alpha(4)), v(alpha(5)));
    let (b1, b2, b4, b5) = (v(beta(1)), v(beta(2)), v(beta(4)), v(beta(5)));
    [
        [&(&(&(&k(3) * &a1) + &b2) + &b4) - &k(1), b1],
        [&(&k(2) * &a2) + &b5, &a1 + &(&k(2) * &b2)],
        [&(&(&k(2) * &a4) + &b5) - &k(1), &(&a1 + &(&k(2) * &b4)) - &k(1)],
        [a5, &(&(&a2 + &a4) + &(&k(3) * &b5)) - &k(1)],
    ]
}

fn gammas(m: &Msc<Scalar>) -> [Scalar; 4] {
    TARGETS.map(|c| m.get(c).clone())
}

/// Columns `R1, R2, e_s (s in set)` as a 4-row matrix.
fn system(rows: &[[Scalar; 2]; 4], set: &[u8]) -> Vec<Vec<Scalar>> {
    let ctx = rows[0][0].ctx().clone();
    (0..4)
        .map(|i| {
            let mut r = vec![rows[i][0].clone(), rows[i][1].clone()];
            r.extend(set.iter().map(|&s| if position(s) == i { ctx.one() } else { ctx.zero() }));
            r
        })
        .collect()
}

/// Solution `(a, b, x_S)` of `v = a R1 + b R2 + sum x_s e_s`, if one exists.
pub fn solve_support(m: &Msc<Scalar>, set: &[u8]) -> Option<Vec<Scalar>> {
    let rows = rank_rows(m);
    linalg::solve(&system(&rows, set), &gammas(m))
}

/// The first support in [`SUPPORT_ORDER`] that the gamma entries reduce to.
pub fn minimal_support(m: &Msc<Scalar>) -> Option<Vec<u8>> {
    let rows = rank_rows(m);
    let v = gammas(m);
    SUPPORT_ORDER.iter().find_map(|set| {
        let sys = system(&rows, set);
        let with_v: Vec<Vec<Scalar>> = sys.iter().zip(&v).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
        (linalg::rank(&sys) == linalg::rank(&with_v)).then(|| set.to_vec())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::msc::StabilizerParams;
    use crate::normalize::complete;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn degenerate(ctx: &std::sync::Arc<FieldCtx>, rng: &mut ChaCha8Rng) -> Msc<Scalar> {
        let mut m = Msc::random(ctx, 0, rng);
        for c in ["a3", "a6", "a7", "a8", "a9", "b3", "b7", "b8", "b9"] {
            m.set(Coord::parse(c).unwrap(), ctx.zero());
        }
        complete(&mut m);
        m
    }

    #[test]
    fn rows_describe_the_action() {
        for p in [0u64, 2, 3, 7] {
            let ctx = if p == 0 { FieldCtx::rational() } else { FieldCtx::prime(p).unwrap() };
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..20 {
                let m = degenerate(&ctx, &mut rng);
                let s = StabilizerParams::random(&ctx, 0, &mut rng);
                let out = m.act_stabilizer(&s).unwrap();
                let rows = rank_rows(&m);
                let cinv = s.c.inv().unwrap();
                for (i, c) in TARGETS.iter().enumerate() {
                    let want = &(&(m.get(*c) - &(&s.a * &rows[i][0])) - &(&s.b * &rows[i][1])) * &cinv;
                    assert_eq!(out.get(*c), &want);
                }
                assert_eq!(rank_rows(&out), rows);
            }
        }
    }

    #[test]
    fn zero_system_is_first_branch() {
        let q = FieldCtx::rational();
        let mut m = Msc::zero(&q);
        complete(&mut m);
        // rows depend on alpha/beta only; pick the unique point with all rows zero
        for (c, v) in [("a1", (1, 4)), ("a2", (-1, 8)), ("a4", (3, 8)), ("b2", (-1, 8)), ("b4", (3, 8)), ("b5", (1, 4))] {
            m.set(Coord::parse(c).unwrap(), q.frac(v.0, v.1).unwrap());
        }
        complete(&mut m);
        assert!(rank_rows(&m).iter().flatten().all(|x| x.is_zero()));
        assert_eq!(minimal_support(&m), Some(vec![]));
        for g in TARGETS {
            m.set(g, q.one());
        }
        assert_eq!(minimal_support(&m), Some(vec![1, 2, 4, 5]));
    }
}
