//! Reduction to the stratum `Tr_1 = (1,0,0)`, `Tr_2 = (0,1,0)`.
//!
//! On that stratum six entries are determined by the other 21 and the basis
//! changes preserving it are exactly the stabilizer elements
//! `g^-1 = [[1,0,0],[0,1,0],[a,b,c]]`.

use crate::field::Scalar;
use crate::msc::{alpha, beta, gamma, BasisChange, Coord, Mat3, Msc, MscError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("trace vectors are linearly dependent")]
    TraceDependent,
}

#[derive(Debug, Clone)]
pub struct NormalizedMsc {
    pub msc: Msc<Scalar>,
    /// `act(g0, original) = msc`.
    pub g0: BasisChange,
}

/// The six entries fixed by the trace conditions, in the order they are solved.
pub const DEPENDENT: [Coord; 6] = [
    Coord::new(2, 6), // g7 = 1 - a1 - b4
    Coord::new(2, 7), // g8 = -a2 - b5
    Coord::new(2, 8), // g9 = -a7 - b8
    Coord::new(1, 5), // b6 = a7 + b8 - a3
    Coord::new(2, 2), // g3 = -a1 - b2
    Coord::new(2, 5), // g6 = 1 - a4 - b5
];

pub fn is_dependent(c: Coord) -> bool {
    DEPENDENT.contains(&c)
}

/// The 21 coordinates that are free on the normalized stratum, in row-major order.
pub fn free_coords() -> impl Iterator<Item = Coord> {
    Coord::all().filter(|c| !is_dependent(*c))
}

/// Overwrites the six dependent entries so that the traces are normalized.
pub fn complete<R: crate::field::Ring>(m: &mut Msc<R>) {
    let g = |m: &Msc<R>, c: Coord| m.get(c).clone();
    let one = m.get(alpha(1)).one_like();
    let v = one.clone() - g(m, alpha(1)) - g(m, beta(4));
    m.set(gamma(7), v);
    let v = -g(m, alpha(2)) - g(m, beta(5));
    m.set(gamma(8), v);
    let v = -g(m, alpha(7)) - g(m, beta(8));
    m.set(gamma(9), v);
    let v = g(m, alpha(7)) + g(m, beta(8)) - g(m, alpha(3));
    m.set(beta(6), v);
    let v = -g(m, alpha(1)) - g(m, beta(2));
    m.set(gamma(3), v);
    let v = one - g(m, alpha(4)) - g(m, beta(5));
    m.set(gamma(6), v);
}

/// True iff the 2x3 matrix with rows `Tr_1`, `Tr_2` has rank 2.
pub fn trace_independent(a: &Msc<Scalar>) -> bool {
    let t = a.traces();
    (0..3).any(|i| {
        let j = (i + 1) % 3;
        !(&(&t.tr1[i] * &t.tr2[j]) - &(&t.tr1[j] * &t.tr2[i])).is_zero()
    })
}

/// Acts by `g` with rows `Tr_1, Tr_2, e_j`; afterwards `Tr_i g^-1 = e_i`, i.e.
/// the traces are normalized. The completing row is the first of `e_3, e_2, e_1`
/// making `g` invertible, so an already normalized input gets `g = I`.
pub fn normalize_traces(a: &Msc<Scalar>) -> Result<NormalizedMsc, NormalizeError> {
    if !trace_independent(a) {
        return Err(NormalizeError::TraceDependent);
    }
    let ctx = a.ctx();
    let t = a.traces();
    for j in (0..3).rev() {
        let e: [Scalar; 3] = std::array::from_fn(|i| ctx.int((i == j) as i64));
        let g = Mat3 { m: [t.tr1.clone(), t.tr2.clone(), e] };
        match BasisChange::new(g) {
            Ok(g0) => {
                let msc = a.act(&g0);
                debug_assert!(msc.traces().is_normalized());
                return Ok(NormalizedMsc { msc, g0 });
            }
            Err(MscError::SingularMatrix) => continue,
            Err(e) => unreachable!("{e}"),
        }
    }
    unreachable!("independent rows always extend to a basis")
}
