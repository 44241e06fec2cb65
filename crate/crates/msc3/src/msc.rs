//! The 3x9 matrix of structure constants and the basis-change action on it.
//!
//! Row `k` holds the coefficients of `e_k` in the products `e_i e_j`, with the
//! column for `(i, j)` at index `3 (i - 1) + (j - 1)`. The rows are called
//! alpha, beta, gamma and their entries alpha_1 .. alpha_9 and so on.

use std::fmt;
use std::sync::Arc;

use crate::field::{FieldCtx, Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MscError {
    #[error("basis change is singular")]
    SingularMatrix,
    #[error("stabilizer parameter c must be nonzero")]
    ZeroC,
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// One of the 27 structure constants, `row` in 0..3 and `col` in 0..9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub row: u8,
    pub col: u8,
}

const ROW_ASCII: [char; 3] = ['a', 'b', 'g'];
const ROW_GREEK: [char; 3] = ['α', 'β', 'γ'];
const SUBSCRIPT: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

impl Coord {
    pub const fn new(row: u8, col: u8) -> Coord {
        Coord { row, col }
    }

    /// Index in the row-major flattening of the 27 entries.
    pub fn index(self) -> usize {
        9 * self.row as usize + self.col as usize
    }

    pub fn from_index(i: usize) -> Coord {
        Coord::new((i / 9) as u8, (i % 9) as u8)
    }

    /// ASCII name such as `a7`, `b3`, `g5`.
    pub fn name(self) -> String {
        format!("{}{}", ROW_ASCII[self.row as usize], self.col + 1)
    }

    /// Display name such as `α₇`.
    pub fn greek(self) -> String {
        format!("{}{}", ROW_GREEK[self.row as usize], SUBSCRIPT[self.col as usize + 1])
    }

    pub fn parse(s: &str) -> Option<Coord> {
        let mut chars = s.chars();
        let row = match chars.next()? {
            'a' | 'α' => 0,
            'b' | 'β' => 1,
            'g' | 'γ' => 2,
            _ => return None,
        };
        let rest: String = chars.collect();
        let col: u8 = rest.parse().ok()?;
        (1..=9).contains(&col).then(|| Coord::new(row, col - 1))
    }

    pub fn all() -> impl Iterator<Item = Coord> {
        (0..27).map(Coord::from_index)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Shorthand constructors for coordinates, 1-based as in the usual notation.
pub fn alpha(i: u8) -> Coord {
    Coord::new(0, i - 1)
}
pub fn beta(i: u8) -> Coord {
    Coord::new(1, i - 1)
}
pub fn gamma(i: u8) -> Coord {
    Coord::new(2, i - 1)
}

/// A dense 3x3 matrix.
#[derive(Clone, PartialEq)]
pub struct Mat3<R> {
    pub m: [[R; 3]; 3],
}

impl<R: Ring> Mat3<R> {
    pub fn from_fn(f: impl Fn(usize, usize) -> R) -> Self {
        Mat3 { m: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn identity(like: &R) -> Self {
        Mat3::from_fn(|i, j| if i == j { like.one_like() } else { like.zero_like() })
    }

    pub fn mul(&self, rhs: &Mat3<R>) -> Mat3<R> {
        Mat3::from_fn(|i, j| {
            let mut acc = self.m[i][0].clone() * rhs.m[0][j].clone();
            for k in 1..3 {
                acc = acc + self.m[i][k].clone() * rhs.m[k][j].clone();
            }
            acc
        })
    }

    pub fn det(&self) -> R {
        let m = &self.m;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m[r1][c1].clone() * m[r2][c2].clone() - m[r1][c2].clone() * m[r2][c1].clone()
        };
        m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2)
            + m[0][2].clone() * minor(1, 2, 0, 1)
    }

    /// Adjugate (transposed cofactor matrix), so `M adj(M) = det(M) I`.
    pub fn adjugate(&self) -> Mat3<R> {
        let m = &self.m;
        Mat3::from_fn(|i, j| {
            // cofactor of entry (j, i)
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let d = m[rows[0]][cols[0]].clone() * m[rows[1]][cols[1]].clone()
                - m[rows[0]][cols[1]].clone() * m[rows[1]][cols[0]].clone();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }

    pub fn mul_vec(&self, v: &[R; 3]) -> [R; 3] {
        std::array::from_fn(|i| {
            self.m[i][0].clone() * v[0].clone()
                + self.m[i][1].clone() * v[1].clone()
                + self.m[i][2].clone() * v[2].clone()
        })
    }
}

impl Mat3<Scalar> {
    pub fn inverse(&self) -> Result<Mat3<Scalar>, MscError> {
        let d = self.det().inv().map_err(|_| MscError::SingularMatrix)?;
        let adj = self.adjugate();
        Ok(Mat3::from_fn(|i, j| &adj.m[i][j] * &d))
    }

    pub fn ctx(&self) -> Arc<FieldCtx> {
        self.m.iter().flatten().fold(self.m[0][0].ctx().clone(), |acc, x| {
            if x.ctx().depth() > acc.depth() {
                x.ctx().clone()
            } else {
                acc
            }
        })
    }
}

impl<R: fmt::Debug> fmt::Debug for Mat3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.m.iter()).finish()
    }
}

/// A general dense matrix, used for the Kronecker product.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self, MscError> {
        if data.len() != rows * cols {
            return Err(MscError::Shape(format!("{} entries for {rows}x{cols}", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn at(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    /// Block matrix `(m_ij N)`.
    pub fn kron(&self, n: &Matrix<R>) -> Matrix<R> {
        let rows = self.rows * n.rows;
        let cols = self.cols * n.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let a = self.at(i / n.rows, j / n.cols);
                let b = n.at(i % n.rows, j % n.cols);
                data.push(a.clone() * b.clone());
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn mul(&self, rhs: &Matrix<R>) -> Result<Matrix<R>, MscError> {
        if self.cols != rhs.rows {
            return Err(MscError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.at(i, 0).clone() * rhs.at(0, j).clone();
                for k in 1..self.cols {
                    acc = acc + self.at(i, k).clone() * rhs.at(k, j).clone();
                }
                data.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: rhs.cols, data })
    }
}

impl<R: Ring> From<&Mat3<R>> for Matrix<R> {
    fn from(m: &Mat3<R>) -> Self {
        Matrix { rows: 3, cols: 3, data: m.m.iter().flatten().cloned().collect() }
    }
}

/// `u (x) v` as a length-9 vector in the column order of an [`Msc`].
pub fn kron_vec<R: Ring>(u: &[R; 3], v: &[R; 3]) -> [R; 9] {
    std::array::from_fn(|k| u[k / 3].clone() * v[k % 3].clone())
}

/// Matrix of structure constants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Msc<R> {
    pub e: [[R; 9]; 3],
}

impl<R: Ring> Msc<R> {
    pub fn from_fn(f: impl Fn(Coord) -> R) -> Self {
        Msc { e: std::array::from_fn(|r| std::array::from_fn(|c| f(Coord::new(r as u8, c as u8)))) }
    }

    pub fn get(&self, c: Coord) -> &R {
        &self.e[c.row as usize][c.col as usize]
    }

    pub fn set(&mut self, c: Coord, v: R) {
        self.e[c.row as usize][c.col as usize] = v;
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Msc<S> {
        Msc::from_fn(|c| f(self.get(c)))
    }

    /// Block `k` (0-based): the 3x3 matrix of columns `3k .. 3k + 3`.
    pub fn block(&self, k: usize) -> Mat3<R> {
        Mat3::from_fn(|i, j| self.e[i][3 * k + j].clone())
    }

    fn from_blocks(b: [Mat3<R>; 3]) -> Self {
        Msc::from_fn(|c| b[c.col as usize / 3].m[c.row as usize][c.col as usize % 3].clone())
    }

    /// The algebra product `A (u (x) v)`.
    pub fn multiply(&self, u: &[R; 3], v: &[R; 3]) -> [R; 3] {
        let w = kron_vec(u, v);
        std::array::from_fn(|k| {
            let mut acc = self.e[k][0].clone() * w[0].clone();
            for (j, wj) in w.iter().enumerate().skip(1) {
                acc = acc + self.e[k][j].clone() * wj.clone();
            }
            acc
        })
    }

    /// `Tr_1 = (a1 + b4 + g7, a2 + b5 + g8, a3 + b6 + g9)` and
    /// `Tr_2 = (a1 + b2 + g3, a4 + b5 + g6, a7 + b8 + g9)`.
    pub fn traces(&self) -> TraceVectors<R> {
        let e = &self.e;
        let tr1 = std::array::from_fn(|i| {
            e[0][i].clone() + e[1][3 + i].clone() + e[2][6 + i].clone()
        });
        let tr2 = std::array::from_fn(|j| {
            e[0][3 * j].clone() + e[1][3 * j + 1].clone() + e[2][3 * j + 2].clone()
        });
        TraceVectors { tr1, tr2 }
    }

    /// `g A (g^-1 (x) g^-1)` given both `g` and its inverse.
    pub fn act_with_inverse(&self, g: &Mat3<R>, ginv: &Mat3<R>) -> Msc<R> {
        let zero = self.e[0][0].zero_like();
        // B = A (ginv (x) ginv), column (i,j) = sum_{m,n} A[(m,n)] ginv[m][i] ginv[n][j]
        let mut b: [[R; 9]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        for (m, n) in (0..3).flat_map(|m| (0..3).map(move |n| (m, n))) {
            let src = 3 * m + n;
            if (0..3).all(|r| self.e[r][src].is_zero()) {
                continue;
            }
            for i in 0..3 {
                if ginv.m[m][i].is_zero() {
                    continue;
                }
                for j in 0..3 {
                    let w = ginv.m[m][i].clone() * ginv.m[n][j].clone();
                    if w.is_zero() {
                        continue;
                    }
                    for r in 0..3 {
                        b[r][3 * i + j] = b[r][3 * i + j].clone() + self.e[r][src].clone() * w.clone();
                    }
                }
            }
        }
        Msc::from_fn(|c| {
            let col = c.col as usize;
            let k = c.row as usize;
            g.m[k][0].clone() * b[0][col].clone()
                + g.m[k][1].clone() * b[1][col].clone()
                + g.m[k][2].clone() * b[2][col].clone()
        })
    }

    /// The action of the stabilizer element with
    /// `g^-1 = [[1,0,0],[0,1,0],[a,b,c]]`, through the closed column formulas:
    /// with `X_1 = A_1 + a A_3`, `X_2 = A_2 + b A_3`, `X_3 = c A_3`, block `k` of the
    /// result is `g X_k g^-1`, whose columns are
    /// `(x1 + a x3, y1 + a y3, (z1 + a z3 - a (x1 + a x3) - b (y1 + a y3)) / c)`,
    /// `(x2 + b x3, y2 + b y3, (z2 + b z3 - a (x2 + b x3) - b (y2 + b y3)) / c)`,
    /// `(c x3, c y3, z3 - a x3 - b y3)`.
    /// `cinv` must be the inverse of `c`; it is passed separately so the formula
    /// can be evaluated over polynomial rings.
    pub fn act_stabilizer_ring(&self, a: &R, b: &R, c: &R, cinv: &R) -> Msc<R> {
        let blocks = [self.block(0), self.block(1), self.block(2)];
        let scaled = |m: &Mat3<R>, s: &R| Mat3::from_fn(|i, j| m.m[i][j].clone() * s.clone());
        let add = |x: &Mat3<R>, y: &Mat3<R>| Mat3::from_fn(|i, j| x.m[i][j].clone() + y.m[i][j].clone());
        let xs = [
            add(&blocks[0], &scaled(&blocks[2], a)),
            add(&blocks[1], &scaled(&blocks[2], b)),
            scaled(&blocks[2], c),
        ];
        let conj = |x: &Mat3<R>| -> Mat3<R> {
            let col = |j: usize, s: Option<&R>| -> [R; 3] {
                // column j of X g^-1 for j < 2 is X_j + s X_3, for j = 2 it is c X_3
                match s {
                    Some(s) => std::array::from_fn(|i| x.m[i][j].clone() + s.clone() * x.m[i][2].clone()),
                    None => std::array::from_fn(|i| c.clone() * x.m[i][2].clone()),
                }
            };
            let cols = [col(0, Some(a)), col(1, Some(b)), col(2, None)];
            let mut out = Mat3::from_fn(|_, _| a.zero_like());
            for (j, v) in cols.iter().enumerate() {
                out.m[0][j] = v[0].clone();
                out.m[1][j] = v[1].clone();
                let third = v[2].clone() - a.clone() * v[0].clone() - b.clone() * v[1].clone();
                out.m[2][j] = third * cinv.clone();
            }
            out
        };
        Msc::from_blocks([conj(&xs[0]), conj(&xs[1]), conj(&xs[2])])
    }
}

impl Msc<Scalar> {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Msc::from_fn(|_| ctx.zero())
    }

    /// The largest context among the entries.
    pub fn ctx(&self) -> Arc<FieldCtx> {
        self.e.iter().flatten().fold(self.e[0][0].ctx().clone(), |acc, x| {
            if x.ctx().depth() > acc.depth() {
                x.ctx().clone()
            } else {
                acc
            }
        })
    }

    /// `g A (g^-1 (x) g^-1)`.
    pub fn act(&self, g: &BasisChange) -> Msc<Scalar> {
        self.act_with_inverse(&g.g, &g.inv)
    }

    pub fn act_stabilizer(&self, p: &StabilizerParams) -> Result<Msc<Scalar>, MscError> {
        let cinv = p.c.inv().map_err(|_| MscError::ZeroC)?;
        Ok(self.act_stabilizer_ring(&p.a, &p.b, &p.c, &cinv))
    }

    /// Entries drawn independently by [`FieldCtx::random`].
    pub fn random<G: rand::Rng + ?Sized>(ctx: &Arc<FieldCtx>, level: usize, rng: &mut G) -> Self {
        let mut a = Msc::zero(ctx);
        for c in Coord::all() {
            a.set(c, ctx.random(level, rng));
        }
        a
    }

    pub fn flat(&self) -> impl Iterator<Item = &Scalar> {
        self.e.iter().flatten()
    }
}

impl<R: fmt::Debug> fmt::Debug for Msc<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.e.iter().enumerate() {
            writeln!(f, "{}: {:?}", ROW_ASCII[r], row)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceVectors<R> {
    pub tr1: [R; 3],
    pub tr2: [R; 3],
}

impl TraceVectors<Scalar> {
    pub fn is_normalized(&self) -> bool {
        let unit = |v: &[Scalar; 3], k: usize| {
            v.iter().enumerate().all(|(i, x)| if i == k { x.is_one() } else { x.is_zero() })
        };
        unit(&self.tr1, 0) && unit(&self.tr2, 1)
    }
}

/// An invertible change of basis together with its inverse.
#[derive(Clone, PartialEq)]
pub struct BasisChange {
    g: Mat3<Scalar>,
    inv: Mat3<Scalar>,
}

impl BasisChange {
    pub fn new(g: Mat3<Scalar>) -> Result<Self, MscError> {
        let inv = g.inverse()?;
        Ok(BasisChange { g, inv })
    }

    pub fn identity(ctx: &Arc<FieldCtx>) -> Self {
        let id = Mat3::identity(&ctx.zero());
        BasisChange { g: id.clone(), inv: id }
    }

    /// The stabilizer element with `g^-1 = [[1,0,0],[0,1,0],[a,b,c]]`.
    pub fn from_stabilizer(p: &StabilizerParams) -> Result<Self, MscError> {
        let ctx = p.a.ctx().clone();
        let (zero, one) = (ctx.zero(), ctx.one());
        let ci = p.c.inv().map_err(|_| MscError::ZeroC)?;
        let inv = Mat3 {
            m: [
                [one.clone(), zero.clone(), zero.clone()],
                [zero.clone(), one.clone(), zero.clone()],
                [p.a.clone(), p.b.clone(), p.c.clone()],
            ],
        };
        let g = Mat3 {
            m: [
                [one.clone(), zero.clone(), zero.clone()],
                [zero.clone(), one, zero],
                [-&(&p.a * &ci), -&(&p.b * &ci), ci],
            ],
        };
        Ok(BasisChange { g, inv })
    }

    pub fn matrix(&self) -> &Mat3<Scalar> {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &Mat3<Scalar> {
        &self.inv
    }

    /// `self` after `first`: acting by the result equals acting by `first`, then `self`.
    pub fn compose(&self, first: &BasisChange) -> BasisChange {
        BasisChange { g: self.g.mul(&first.g), inv: first.inv.mul(&self.inv) }
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange { g: self.inv.clone(), inv: self.g.clone() }
    }
}

impl fmt::Debug for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.g.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl StabilizerParams {
    /// Random parameters with `c != 0`.
    pub fn random<G: rand::Rng + ?Sized>(ctx: &Arc<FieldCtx>, level: usize, rng: &mut G) -> Self {
        let c = loop {
            let c = ctx.random(level, rng);
            if !c.is_zero() {
                break c;
            }
        };
        StabilizerParams { a: ctx.random(level, rng), b: ctx.random(level, rng), c }
    }
}

impl BasisChange {
    /// Random invertible matrix.
    pub fn random<G: rand::Rng + ?Sized>(ctx: &Arc<FieldCtx>, level: usize, rng: &mut G) -> Self {
        loop {
            let mut m: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| ctx.zero()));
            m.iter_mut().flatten().for_each(|x| *x = ctx.random(level, rng));
            let g = Mat3 { m };
            if let Ok(b) = BasisChange::new(g) {
                return b;
            }
        }
    }
}

#[cfg(test)]
mod tests;
