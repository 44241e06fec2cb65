//! Shared machinery of the two classifiers: a normalized instance together
//! with the basis change applied so far, and the elementary moves (scaling an
//! entry to 1, clearing an entry along a line of stabilizer elements).

use std::sync::Arc;

use crate::catalog::expr::Expr;
use crate::catalog::guard::along;
use crate::catalog::rank::{minimal_support, position, solve_support};
use crate::catalog::{FamilyId, Params, Parity};
use crate::field::{FieldCtx, Poly, Scalar};
use crate::msc::{BasisChange, Coord, Msc, StabilizerParams};
use crate::normalize::{normalize_traces, NormalizeError, NormalizedMsc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("trace vectors are linearly dependent")]
    TraceDependent,
    #[error("characteristic {0} is not handled by this classifier")]
    UnsupportedCharacteristic(u64),
    /// A step that must succeed on every valid input did not; this is a bug.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

impl From<NormalizeError> for ClassifyError {
    fn from(e: NormalizeError) -> Self {
        match e {
            NormalizeError::TraceDependent => ClassifyError::TraceDependent,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub family: FamilyId,
    pub params: Params,
    /// `act(witness, input) = canonical_msc(family, params)`.
    pub witness: BasisChange,
    /// The side conditions of the family, all verified on the result.
    pub guards: Vec<String>,
}

impl ClassificationResult {
    /// Same family and parameters.
    pub fn same_class(&self, other: &ClassificationResult) -> bool {
        self.family == other.family && self.params == other.params
    }
}

/// Classifies an arbitrary instance: normalizes the traces, then runs the
/// classifier for its characteristic.
pub fn classify(a: &Msc<Scalar>) -> Result<ClassificationResult, ClassifyError> {
    let n = normalize_traces(a)?;
    match Parity::of(a.ctx().characteristic()) {
        Parity::Odd => crate::classify_odd::classify_odd(&n),
        Parity::Char2 => crate::classify_char2::classify_char2(&n),
    }
}

fn contradiction(what: impl Into<String>) -> ClassifyError {
    ClassifyError::InternalContradiction(what.into())
}

/// The instance being reduced and the basis change accumulated so far.
pub(crate) struct Work {
    pub m: Msc<Scalar>,
    pub w: BasisChange,
}

impl Work {
    pub fn new(n: &NormalizedMsc) -> Work {
        Work { m: n.msc.clone(), w: n.g0.clone() }
    }

    pub fn ctx(&self) -> Arc<FieldCtx> {
        self.m.ctx()
    }

    /// Value of an expression in the current entries, e.g. `"a3 - 2*b8"`.
    pub fn val(&self, e: &str) -> Scalar {
        let e = Expr::parse(e).expect("engine expressions are well formed");
        e.eval(&self.ctx().zero(), &|c| self.m.get(c).clone()).expect("no division in engine expressions")
    }

    pub fn is_zero(&self, e: &str) -> bool {
        self.val(e).is_zero()
    }

    pub fn apply(&mut self, p: &StabilizerParams) -> Result<(), ClassifyError> {
        let g = BasisChange::from_stabilizer(p).map_err(|e| contradiction(e.to_string()))?;
        self.m = self.m.act_stabilizer(p).map_err(|e| contradiction(e.to_string()))?;
        self.w = g.compose(&self.w);
        Ok(())
    }

    pub fn shift(&mut self, a: Scalar, b: Scalar) -> Result<(), ClassifyError> {
        let c = self.ctx().one();
        self.apply(&StabilizerParams { a, b, c })
    }

    /// Scales `c` by `(0, 0, c)` so that the entry becomes 1. The entry must be
    /// nonzero and have weight 1 or 2 under the scaling.
    pub fn scale_to_one(&mut self, entry: &str) -> Result<(), ClassifyError> {
        let coord = Coord::parse(entry).expect("coordinate name");
        let x = self.m.get(coord).clone();
        let inv = x.inv().map_err(|_| contradiction(format!("{entry} is zero when scaling")))?;
        let c = match weight(coord) {
            1 => inv,
            2 => inv.sqrt(),
            w => return Err(contradiction(format!("{entry} has weight {w}"))),
        };
        let z = self.ctx().zero();
        self.apply(&StabilizerParams { a: z.clone(), b: z, c })?;
        if !self.m.get(coord).is_one() {
            return Err(contradiction(format!("{entry} did not scale to 1")));
        }
        Ok(())
    }

    fn along(&self, dir: &(Scalar, Scalar), target: &str) -> Poly {
        let line = along(&self.m, &dir.0, &dir.1);
        let e = Expr::parse(target).expect("engine expressions are well formed");
        e.eval(&Poly::constant(&self.ctx().zero()), &|c| line.get(c).clone())
            .expect("no division in engine expressions")
    }

    /// Whether `target` changes along `(a, b, c) = (x t, y t, 1)`.
    pub fn moves(&self, dir: &(Scalar, Scalar), target: &str) -> bool {
        !self.along(dir, target).is_constant()
    }

    /// Moves along `(x t, y t, 1)` to a zero of `target`; `false` when it does not move.
    /// Quadratic targets take the smaller root; the representative among the
    /// two roots is settled by the family's tie-break at the leaf.
    pub fn kill(&mut self, dir: &(Scalar, Scalar), target: &str) -> Result<bool, ClassifyError> {
        let p = self.along(dir, target);
        let t = match p.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => -&(&p.coeff(0) / &p.coeff(1)),
            Some(2) => {
                let u = p.coeff(2);
                Scalar::solve_quadratic(&(&p.coeff(1) / &u), &(&p.coeff(0) / &u))
            }
            Some(d) => return Err(contradiction(format!("{target} has degree {d} along the line"))),
        };
        self.shift(&dir.0 * &t, &dir.1 * &t)?;
        if !self.val(target).is_zero() {
            return Err(contradiction(format!("{target} did not vanish")));
        }
        Ok(true)
    }

    /// Kills the first target that moves and returns its index.
    pub fn first_kill(&mut self, dir: &(Scalar, Scalar), targets: &[&str]) -> Result<Option<usize>, ClassifyError> {
        for (i, t) in targets.iter().enumerate() {
            if self.kill(dir, t)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Direction `(x, 1)`.
    pub fn dir_b(&self, x: Scalar) -> (Scalar, Scalar) {
        (x, self.ctx().one())
    }

    pub fn dir_a(&self) -> (Scalar, Scalar) {
        (self.ctx().one(), self.ctx().zero())
    }

    /// Picks the preferred representative and checks that the result is an
    /// instance of the family.
    pub fn leaf(mut self, id: FamilyId) -> Result<ClassificationResult, ClassifyError> {
        let family = id.family();
        for g in &family.guards {
            if let Some(p) = g.better_representative(family, &self.m) {
                self.apply(&p)?;
            }
        }
        if !family.contains(&self.m) {
            let why = match family.violated_guard(&self.m) {
                Some(g) => format!("{id}: side condition fails: {}", g.describe()),
                None => format!("{id}: reduced instance is not of this shape:\n{:?}", self.m),
            };
            return Err(contradiction(why));
        }
        Ok(ClassificationResult {
            family: id,
            params: family.read_params(&self.m),
            witness: self.w,
            guards: family.guard_texts(),
        })
    }

    /// First nonzero among the given entries.
    pub fn first_nonzero<'a>(&self, entries: &[&'a str]) -> Option<&'a str> {
        entries.iter().copied().find(|e| !self.is_zero(e))
    }

    /// Case 7: only `a7, a8, b7, b8` survive in the degree-3 columns.
    pub fn case7(mut self, parity: Parity, first: u16) -> Result<ClassificationResult, ClassifyError> {
        let steps: [(&str, &str, &str); 3] = [("a8", "a2", "a5"), ("a7", "a1", "a4"), ("b7", "b1", "b4")];
        for (i, (s, x, y)) in steps.iter().enumerate() {
            if self.is_zero(s) {
                continue;
            }
            self.scale_to_one(s)?;
            let da = self.dir_a();
            let db = (self.ctx().zero(), self.ctx().one());
            if !self.kill(&da, x)? || !self.kill(&db, y)? {
                return Err(contradiction(format!("{x} or {y} does not move")));
            }
            return self.leaf(FamilyId::new(parity, first + i as u16).expect("in range"));
        }
        Err(contradiction("no pivot in the degree-3 columns"))
    }

    /// Cases 8 and 9: the gamma entries `(g1, g2, g4, g5)` move by
    /// `(v - a R1 - b R2) / c`; reduce to the first reachable support.
    pub fn rank_case(mut self, parity: Parity, first: u16) -> Result<ClassificationResult, ClassifyError> {
        let set = minimal_support(&self.m).ok_or_else(|| contradiction("no support set is reachable"))?;
        let sol = solve_support(&self.m, &set).ok_or_else(|| contradiction("support system inconsistent"))?;
        self.shift(sol[0].clone(), sol[1].clone())?;
        if let Some(&lead) = set.first() {
            let c = self.m.get(crate::catalog::rank::TARGETS[position(lead)]).clone();
            let z = self.ctx().zero();
            self.apply(&StabilizerParams { a: z.clone(), b: z, c })?;
        }
        let index = crate::catalog::rank::SUPPORT_ORDER.iter().position(|s| *s == set.as_slice()).expect("listed");
        self.leaf(FamilyId::new(parity, first + index as u16).expect("in range"))
    }
}

/// Exponent `e` with `entry -> c^e entry` under `(0, 0, c)`: the row index
/// counts `-1` for the third row, each column factor `+1` for the third basis vector.
pub fn weight(c: Coord) -> i32 {
    let (i, j) = (c.col / 3, c.col % 3);
    (i == 2) as i32 + (j == 2) as i32 - (c.row == 2) as i32
}

/// Cases 8 and 9 apply when the first two rows are supported on columns
/// 1, 2, 4, 5 (these entries are then invariant).
pub fn in_rank_shape(m: &Msc<Scalar>) -> bool {
    ["a3", "a6", "a7", "a8", "a9", "b3", "b6", "b7", "b8", "b9"]
        .iter()
        .all(|e| m.get(Coord::parse(e).expect("coordinate")).is_zero())
}

/// The support set selected for an instance of the rank shape, or `None`
/// outside it.
pub fn rank_dispatch(m: &Msc<Scalar>) -> Option<Vec<u8>> {
    if !in_rank_shape(m) {
        return None;
    }
    minimal_support(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msc::{alpha, beta, gamma};

    #[test]
    fn weights() {
        assert_eq!(weight(alpha(9)), 2);
        assert_eq!(weight(beta(9)), 2);
        for c in [alpha(3), alpha(6), alpha(7), alpha(8), beta(3), beta(6), beta(7), beta(8)] {
            assert_eq!(weight(c), 1, "{c}");
        }
        assert_eq!(weight(gamma(1)), -1);
        assert_eq!(weight(gamma(9)), 1);
        assert_eq!(weight(alpha(1)), 0);
    }

    #[test]
    fn scaling_matches_weights() {
        let q = FieldCtx::rational();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let m = Msc::random(&q, 0, &mut rng);
        let c = q.int(3);
        let out = m.act_stabilizer(&StabilizerParams { a: q.zero(), b: q.zero(), c: c.clone() }).unwrap();
        for k in Coord::all() {
            let e = weight(k);
            let f = if e >= 0 { c.pow(e as u64) } else { c.pow((-e) as u64).inv().unwrap() };
            assert_eq!(out.get(k), &(m.get(k) * &f), "{k}");
        }
    }
}
