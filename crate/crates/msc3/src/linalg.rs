//! Dense Gaussian elimination over [`Scalar`].

use crate::field::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..ncols {
                let d = &f * &rows[r][j];
                rows[i][j] = &rows[i][j] - &d;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Some solution of `M x = rhs`, free variables set to zero; `None` if inconsistent.
pub fn solve(m: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Scalar>> =
        m.iter().zip(rhs).map(|(row, b)| row.iter().cloned().chain([b.clone()]).collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let zero = rhs.first().map(|x| x.ctx().zero())?;
    let mut x = vec![zero; n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}

/// A basis of the null space of `m`.
pub fn kernel(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = m.first().map_or(0, |r| r.len());
    let Some(ctx) = m.first().and_then(|r| r.first()).map(|x| x.ctx().clone()) else {
        return Vec::new();
    };
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![ctx.zero(); n];
            v[free] = ctx.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&a[i][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn rank_solve_kernel() {
        let q = FieldCtx::rational();
        let r = |v: &[i64]| v.iter().map(|&x| q.int(x)).collect::<Vec<_>>();
        let m = vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        let x = solve(&m, &r(&[1, 2, 1])).unwrap();
        for (row, b) in m.iter().zip(r(&[1, 2, 1])) {
            let s = row.iter().zip(&x).fold(q.zero(), |acc, (a, b)| &acc + &(a * b));
            assert_eq!(s, b);
        }
        assert!(solve(&m, &r(&[1, 3, 1])).is_none());
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        for row in &m {
            assert!(row.iter().zip(&k[0]).fold(q.zero(), |acc, (a, b)| &acc + &(a * b)).is_zero());
        }
    }
}
