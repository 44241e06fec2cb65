//! The classifier for characteristic 2.
//!
//! Same case structure as the odd classifier. Halving is not available, so
//! several entries that are cleared by `a` in odd characteristic survive, and
//! the gamma row is reduced along lines on which it moves quadratically; those
//! kills need square roots and Artin-Schreier roots from the tower.

use crate::catalog::{FamilyId, Parity};
use crate::engine::{in_rank_shape, ClassificationResult, ClassifyError, Work};
use crate::normalize::NormalizedMsc;

fn leaf(w: Work, index: u16) -> Result<ClassificationResult, ClassifyError> {
    w.leaf(FamilyId::char2(index))
}

fn stuck(what: &str) -> ClassifyError {
    ClassifyError::InternalContradiction(format!("no entry left to clear ({what})"))
}

pub fn classify_char2(n: &NormalizedMsc) -> Result<ClassificationResult, ClassifyError> {
    let p = n.msc.ctx().characteristic();
    if p != 2 {
        return Err(ClassifyError::UnsupportedCharacteristic(p));
    }
    let mut w = Work::new(n);
    let da = w.dir_a();
    let db = w.dir_b(w.ctx().zero());
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
        return case4(w);
    }
    if !w.is_zero("a3") {
        w.scale_to_one("a3")?;
        w.kill(&db, "g6")?;
        if w.kill(&da, "a1")? {
            return leaf(w, 36);
        }
        if !w.is_zero("b3") {
            w.first_kill(&da, &["b1", "a2", "g1"])?;
            return leaf(w, 37);
        }
        if w.kill(&da, "b1")? {
            return leaf(w, 38);
        }
        if !w.is_zero("a8 + 1") {
            w.first_kill(&da, &["a2", "g1"])?;
            return leaf(w, 39);
        }
        if !w.kill(&da, "g8")? {
            return Err(stuck("case a3"));
        }
        return leaf(w, 40);
    }
    if !w.is_zero("b3") {
        w.scale_to_one("b3")?;
        w.kill(&db, "g3")?;
        if let Some(i) = w.first_kill(&da, &["a2", "a1"])? {
            return leaf(w, 41 + i as u16);
        }
        w.kill(&db, "b2")?;
        w.first_kill(&da, &["b1", "g1", "g2", "g4"])?;
        return leaf(w, 43);
    }
    if w.first_nonzero(&["a7", "a8", "b7", "b8"]).is_some() {
        return w.case7(Parity::Char2, 44);
    }
    debug_assert!(in_rank_shape(&w.m));
    w.rank_case(Parity::Char2, 47)
}

/// `a6 != 0`: families 3 to 22.
fn case3(mut w: Work) -> Result<ClassificationResult, ClassifyError> {
    w.scale_to_one("a6")?;
    let da = w.dir_a();
    w.kill(&da, "a4")?;
    let dir = w.dir_b(w.val("a7"));
    if let Some(i) = w.first_kill(&dir, &["a5", "b5", "b4", "b1"])? {
        return leaf(w, 3 + i as u16);
    }
    if w.is_zero("a3") {
        // the line is (0, t, 1)
        if w.kill(&dir, "g3")? {
            return leaf(w, 8);
        }
        if !w.is_zero("a1*b2") && w.kill(&dir, "g2")? {
            return leaf(w, 9);
        }
        if w.kill(&dir, "g1")? {
            return leaf(w, 10);
        }
        if !w.is_zero("a1 + 1") && w.kill(&dir, "g4")? {
            return leaf(w, 11);
        }
        if w.kill(&dir, "g5")? {
            return leaf(w, 12);
        }
        w.kill(&dir, "g2")?;
        return leaf(w, 13);
    }
    if !w.val("a3").is_one() {
        w.first_kill(&dir, &["g1 + a3*g2", "g1 + a3*g4"])?;
        return leaf(w, 7);
    }
    // a3 = 1: along (t, t, 1) only g1, g2, g4, g5 move, each by
    // (1 + b8) t^2 + k t with k2 = k4
    if w.val("b8").is_one() {
        if w.kill(&dir, "g1")? {
            return leaf(w, 14);
        }
        if w.moves(&dir, "g2") {
            let (target, index) = if w.is_zero("1 + b4 + b5") { ("g4", 16) } else { ("g2", 15) };
            w.kill(&dir, target)?;
            return leaf(w, index);
        }
        if w.kill(&dir, "g5")? {
            return leaf(w, 17);
        }
        return leaf(w, 18);
    }
    let (pair, index) = if w.is_zero("b4 + b5 + 1") { ("g1 + g4", 20) } else { ("g1 + g2", 19) };
    if w.kill(&dir, pair)? {
        return leaf(w, index);
    }
    if w.kill(&dir, "g1 + g5")? {
        return leaf(w, 21);
    }
    w.kill(&dir, "g1")?;
    leaf(w, 22)
}

/// `a6 = 0, b6 != 0`: families 23 to 35.
fn case4(mut w: Work) -> Result<ClassificationResult, ClassifyError> {
    w.scale_to_one("b6")?;
    let da = w.dir_a();
    w.kill(&da, "b4")?;
    let dir = w.dir_b(w.val("b7"));
    if let Some(i) = w.first_kill(&dir, &["b5", "a5", "a4"])? {
        return leaf(w, 23 + i as u16);
    }
    let (b3, b7) = (w.val("b3"), w.val("b7"));
    if b3.is_one() && !b7.is_zero() && !b7.is_one() {
        if !w.kill(&dir, "b1")? {
            return Err(stuck("b1 in case b6"));
        }
        return leaf(w, 31);
    }
    if w.kill(&dir, "b2")? {
        return leaf(w, 26);
    }
    if b3.is_zero() {
        if w.kill(&dir, "g1")? {
            return leaf(w, 27);
        }
        if !w.is_zero("a1*b2") && w.kill(&dir, "g2")? {
            return leaf(w, 28);
        }
        if !w.is_zero("a1 + 1") && w.kill(&dir, "g4")? {
            return leaf(w, 29);
        }
        w.kill(&dir, "g5")?;
        return leaf(w, 30);
    }
    if w.kill(&dir, "g1 + b3*g2")? {
        return leaf(w, 32);
    }
    if !b3.is_one() {
        if !w.kill(&dir, "g1 + b3*g4")? {
            return Err(stuck("g1 + b3 g4 in case b6"));
        }
        return leaf(w, 33);
    }
    if w.kill(&dir, "g1 + g5")? {
        return leaf(w, 34);
    }
    w.kill(&dir, "g1")?;
    leaf(w, 35)
}
