//! The classifier for characteristic other than 2.
//!
//! After trace normalization only the stabilizer `g^-1 = [[1,0,0],[0,1,0],[a,b,c]]`
//! remains. The cases are decided by the first nonzero of `a9, b9, a6, b6, a3,
//! b3`, then `a7, a8, b7, b8`; within a case `c` is spent on scaling that entry
//! to 1, and `a`, `b` on clearing entries in a fixed order.

use crate::catalog::{FamilyId, Parity};
use crate::engine::{in_rank_shape, ClassificationResult, ClassifyError, Work};
use crate::normalize::NormalizedMsc;

pub use crate::catalog::involution_reduce;
pub use crate::engine::rank_dispatch;

fn leaf(w: Work, index: u16) -> Result<ClassificationResult, ClassifyError> {
    w.leaf(FamilyId::odd(index))
}

fn unreachable_leaf(what: &str) -> ClassifyError {
    ClassifyError::InternalContradiction(format!("no entry left to clear ({what})"))
}

pub fn classify_odd(n: &NormalizedMsc) -> Result<ClassificationResult, ClassifyError> {
    let p = n.msc.ctx().characteristic();
    if p == 2 {
        return Err(ClassifyError::UnsupportedCharacteristic(p));
    }
    let mut w = Work::new(n);
    let (za, zb) = (w.ctx().one(), w.ctx().zero());
    let da = (za.clone(), zb.clone());
    let db = (zb, za);
    if !w.is_zero("a9") || !w.is_zero("b9") {
        let (s, x, y, index) = if !w.is_zero("a9") { ("a9", "a7", "a8", 1) } else { ("b9", "b7", "b8", 2) };
        w.scale_to_one(s)?;
        w.kill(&da, x)?;
        w.kill(&db, y)?;
        return leaf(w, index);
    }
    if !w.is_zero("a6") {
        return case3(w);
    }
    if !w.is_zero("b6") {
        w.scale_to_one("b6")?;
        w.kill(&da, "b4")?;
        let dir = w.dir_b(-w.val("b7"));
        if let Some(i) = w.first_kill(&dir, &["b5", "a5", "a4", "b2"])? {
            return leaf(w, 17 + i as u16);
        }
        // b2 is stuck exactly when b3 + b7 = 0; a2 is kept when b7 != 0
        let (target, index) = if w.is_zero("b7") { ("g8", 22) } else { ("a2", 21) };
        if !w.kill(&dir, target)? {
            return Err(unreachable_leaf("case b6"));
        }
        return leaf(w, index);
    }
    if !w.is_zero("a3") {
        w.scale_to_one("a3")?;
        w.kill(&da, "g3")?;
        let half = w.ctx().int(2).inv().expect("odd characteristic");
        let dir = w.dir_b(-&(&w.val("b3") * &half));
        let i = w.first_kill(&dir, &["a5", "a4", "b5"])?.ok_or_else(|| unreachable_leaf("case a3"))?;
        return leaf(w, 23 + i as u16);
    }
    if !w.is_zero("b3") {
        w.scale_to_one("b3")?;
        w.kill(&db, "g3")?;
        if let Some(i) = w.first_kill(&da, &["a2", "a1"])? {
            return leaf(w, 26 + i as u16);
        }
        w.kill(&db, "b2")?;
        w.first_kill(&da, &["b1", "g1", "g2", "g4", "g5"])?;
        return leaf(w, 28);
    }
    if w.first_nonzero(&["a7", "a8", "b7", "b8"]).is_some() {
        return w.case7(Parity::Odd, 29);
    }
    debug_assert!(in_rank_shape(&w.m));
    w.rank_case(Parity::Odd, 32)
}

/// `a6 != 0`: families 3 to 16.
fn case3(mut w: Work) -> Result<ClassificationResult, ClassifyError> {
    w.scale_to_one("a6")?;
    let da = w.dir_a();
    w.kill(&da, "a4")?;
    let dir = w.dir_b(-w.val("a7"));
    if let Some(i) = w.first_kill(&dir, &["a5", "b5", "b4", "a1"])? {
        return leaf(w, 3 + i as u16);
    }
    if !w.is_zero("a3 - 2*b8") {
        if w.kill(&dir, "b1")? {
            return leaf(w, 7);
        }
        w.first_kill(&dir, &["g1", "g2", "g4", "g5"])?;
        let index = if w.val("a3").is_one() { 16 } else { 8 };
        return leaf(w, index);
    }
    match w.first_kill(&dir, &["g3", "g2", "g1", "g8", "g5", "g4"])? {
        Some(i) => leaf(w, 9 + i as u16),
        None => leaf(w, 15),
    }
}
