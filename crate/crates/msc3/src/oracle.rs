//! Ground truth for the classifiers: exhaustive isomorphism search over small
//! prime fields, and a sampling census of the family histogram.
//!
//! The search works on residues with `g A = B (g (x) g)`, which avoids
//! inverting candidates, and confirms a hit with the exact action before
//! reporting it. Candidates are visited in a fixed order and the first match
//! is returned.
//!
//! Census draws use `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha 0.3); each
//! sample consumes 27 draws in row-major entry order, so the output is
//! reproducible from the seed.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::sample::degenerate_instance;
use crate::catalog::FamilyId;
use crate::field::{FieldCtx, FieldError, Scalar};
use crate::msc::{BasisChange, Coord, Mat3, Msc, StabilizerParams};
use crate::{classify, ClassifyError};

/// Largest characteristic searched over all of GL(3).
pub const FULL_GL3_MAX_P: u64 = 7;
/// Largest characteristic searched over the stabilizer.
pub const STABILIZER_MAX_P: u64 = 13;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("characteristic {p} is too large for {mode} search (limit {limit})")]
    FieldTooLarge { p: u64, mode: Mode, limit: u64 },
    #[error("brute force needs level-0 entries over a prime field")]
    NotPrimeField,
    #[error("inputs are over different fields")]
    FieldMismatch,
    #[error("stabilizer search needs trace-normalized inputs")]
    NotNormalized,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Stabilizer,
    FullGl3,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Stabilizer => "stabilizer",
            Mode::FullGl3 => "full GL(3)",
        })
    }
}

/// The set of candidates that was searched, with its field size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    Stabilizer(u64),
    FullGl3(u64),
}

impl SearchSpace {
    pub fn new(mode: Mode, q: u64) -> SearchSpace {
        match mode {
            Mode::Stabilizer => SearchSpace::Stabilizer(q),
            Mode::FullGl3 => SearchSpace::FullGl3(q),
        }
    }

    /// Number of candidates: `q^2 (q - 1)` or `|GL(3, q)|`.
    pub fn size(&self) -> u64 {
        match *self {
            SearchSpace::Stabilizer(q) => q * q * (q - 1),
            SearchSpace::FullGl3(q) => {
                let q3 = q * q * q;
                (q3 - 1) * (q3 - q) * (q3 - q * q)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct IsoWitness {
    /// `act(g, A) = B`.
    pub g: BasisChange,
    pub search_space: SearchSpace,
}

type Table = [[u64; 9]; 3];

fn residues(m: &Msc<Scalar>) -> Option<Table> {
    let mut t = [[0u64; 9]; 3];
    for c in Coord::all() {
        t[c.row as usize][c.col as usize] = m.get(c).residue()?;
    }
    Some(t)
}

/// Whether `g A = B (g (x) g)` mod `p`, checked entry by entry.
fn matches(g: &[[u64; 3]; 3], a: &Table, b: &Table, p: u64) -> bool {
    for col in 0..9 {
        let (i, j) = (col / 3, col % 3);
        for k in 0..3 {
            let lhs = (0..3).map(|r| g[k][r] * a[r][col]).sum::<u64>() % p;
            let mut rhs = 0;
            for r in 0..3 {
                let gri = g[r][i];
                if gri == 0 {
                    continue;
                }
                for s in 0..3 {
                    rhs += b[k][3 * r + s] * (gri * g[s][j] % p);
                }
                rhs %= p;
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn det(g: &[[u64; 3]; 3], p: u64) -> u64 {
    let t = |a: u64, b: u64, c: u64| a * (b % p) % p * (c % p) % p;
    let plus = t(g[0][0], g[1][1], g[2][2]) + t(g[0][1], g[1][2], g[2][0]) + t(g[0][2], g[1][0], g[2][1]);
    let minus = t(g[0][2], g[1][1], g[2][0]) + t(g[0][0], g[1][2], g[2][1]) + t(g[0][1], g[1][0], g[2][2]);
    (plus + 3 * p - minus) % p
}

fn inv_mod(x: u64, p: u64) -> u64 {
    (1..p).find(|y| x * y % p == 1).expect("unit")
}

fn to_change(ctx: &Arc<FieldCtx>, g: &[[u64; 3]; 3]) -> BasisChange {
    let m = Mat3 { m: g.map(|row| row.map(|x| ctx.int(x as i64))) };
    BasisChange::new(m).expect("candidates are invertible")
}

/// Searches for `g` with `act(g, A) = B`. Stabilizer mode visits `(a, b, c)`
/// with `a`, then `b`, then `c` increasing (`c` from 1); full mode visits the
/// invertible matrices by their entries read row-major as base-`p` digits.
pub fn brute_force_iso(a: &Msc<Scalar>, b: &Msc<Scalar>, mode: Mode) -> Result<Option<IsoWitness>, OracleError> {
    let ctx = a.ctx();
    let p = ctx.characteristic();
    if *ctx != *b.ctx() {
        return Err(OracleError::FieldMismatch);
    }
    if p == 0 {
        return Err(OracleError::NotPrimeField);
    }
    let limit = match mode {
        Mode::Stabilizer => STABILIZER_MAX_P,
        Mode::FullGl3 => FULL_GL3_MAX_P,
    };
    if p > limit {
        return Err(OracleError::FieldTooLarge { p, mode, limit });
    }
    let (ta, tb) = match (residues(a), residues(b)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(OracleError::NotPrimeField),
    };
    let space = SearchSpace::new(mode, p);
    let confirm = |g: &[[u64; 3]; 3]| {
        let w = to_change(&ctx, g);
        (a.act(&w) == *b).then_some(IsoWitness { g: w, search_space: space })
    };
    match mode {
        Mode::Stabilizer => {
            if !a.traces().is_normalized() || !b.traces().is_normalized() {
                return Err(OracleError::NotNormalized);
            }
            for x in 0..p {
                for y in 0..p {
                    for c in 1..p {
                        // g is the inverse of [[1,0,0],[0,1,0],[x,y,c]]
                        let ci = inv_mod(c, p);
                        let g = [[1, 0, 0], [0, 1, 0], [(p - x) * ci % p, (p - y) * ci % p, ci]];
                        if matches(&g, &ta, &tb, p) {
                            if let Some(w) = confirm(&g) {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
        }
        Mode::FullGl3 => {
            for n in 0..p.pow(9) {
                let mut g = [[0u64; 3]; 3];
                let mut r = n;
                for k in (0..9).rev() {
                    g[k / 3][k % 3] = r % p;
                    r /= p;
                }
                if det(&g, p) != 0 && matches(&g, &ta, &tb, p) {
                    if let Some(w) = confirm(&g) {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The stabilizer element `(a, b, c)` as residues, for building planted pairs.
pub fn stabilizer_at(ctx: &Arc<FieldCtx>, a: i64, b: i64, c: i64) -> StabilizerParams {
    StabilizerParams { a: ctx.int(a), b: ctx.int(b), c: ctx.int(c) }
}

/// Family counts of a census.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub samples: u64,
    pub histogram: BTreeMap<FamilyId, u64>,
    /// Draws with linearly dependent trace vectors.
    pub rejected: u64,
    /// Draws the classifier failed on; nonzero only if the classifier has a bug.
    pub failures: u64,
}

impl Census {
    pub fn accepted(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn count(&self, id: FamilyId) -> u64 {
        self.histogram.get(&id).copied().unwrap_or(0)
    }

    /// Fraction of accepted samples in family `id`.
    pub fn fraction(&self, id: FamilyId) -> f64 {
        match self.accepted() {
            0 => 0.0,
            n => self.count(id) as f64 / n as f64,
        }
    }

    fn record(&mut self, a: &Msc<Scalar>) {
        self.samples += 1;
        match classify(a) {
            Ok(r) => *self.histogram.entry(r.family).or_default() += 1,
            Err(ClassifyError::TraceDependent) => self.rejected += 1,
            Err(_) => self.failures += 1,
        }
    }
}

fn census_ctx(p: u64) -> Result<Arc<FieldCtx>, OracleError> {
    Ok(if p == 0 { FieldCtx::rational() } else { FieldCtx::prime(p)? })
}

/// Classifies `samples` uniform draws over `F_p` (entries in `-3..=3` when
/// `p = 0`), classifying over the quadratic-closure tower.
pub fn census(p: u64, samples: u64, seed: u64) -> Result<Census, OracleError> {
    let ctx = census_ctx(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Census::default();
    for _ in 0..samples {
        let a = if p == 0 {
            let mut m = Msc::zero(&ctx);
            for c in Coord::all() {
                m.set(c, ctx.int(rng.gen_range(-3..=3)));
            }
            m
        } else {
            Msc::random(&ctx, 0, &mut rng)
        };
        out.record(&a);
    }
    Ok(out)
}

/// Census of the degenerate stratum only: the first two rows are supported
/// on columns 1, 2, 4, 5 and the rank of the gamma system is drawn first, so
/// that the small rank families are hit at a useful rate.
pub fn directed_census(p: u64, samples: u64, seed: u64) -> Result<Census, OracleError> {
    let ctx = census_ctx(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Census::default();
    while out.samples < samples {
        if let Some(a) = degenerate_instance(&ctx, 0, &mut rng) {
            out.record(&a);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{canonical_msc, Params, Parity};
    use crate::msc::alpha;
    use crate::normalize::normalize_traces;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::prime(3).unwrap()
    }

    fn normalized(seed: u64) -> Msc<Scalar> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            if let Ok(n) = normalize_traces(&Msc::random(&f3(), 0, &mut rng)) {
                return n.msc;
            }
        }
    }

    #[test]
    fn space_sizes() {
        assert_eq!(SearchSpace::Stabilizer(3).size(), 18);
        assert_eq!(SearchSpace::FullGl3(3).size(), 11232);
        assert_eq!(SearchSpace::FullGl3(2).size(), 168);
    }

    #[test]
    fn planted_stabilizer_pair() {
        let a = normalized(1);
        let b = a.act_stabilizer(&stabilizer_at(&f3(), 1, 1, 2)).unwrap();
        let w = brute_force_iso(&a, &b, Mode::Stabilizer).unwrap().expect("planted");
        assert_eq!(a.act(&w.g), b);
        assert_eq!(w.search_space, SearchSpace::Stabilizer(3));
    }

    #[test]
    fn full_search_finds_planted_gl3() {
        let a = normalized(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = BasisChange::random(&f3(), 0, &mut rng);
        let b = a.act(&g);
        let w = brute_force_iso(&a, &b, Mode::FullGl3).unwrap().expect("planted");
        assert_eq!(a.act(&w.g), b);
    }

    #[test]
    fn a32_alpha1_instances_differ() {
        let id = FamilyId::new(Parity::Odd, 32).unwrap();
        let f = id.family();
        let at = |x: i64| {
            let params = Params(f.params.iter().map(|c| (*c, if *c == alpha(1) { f3().int(x) } else { f3().zero() })).collect());
            canonical_msc(id, &params).unwrap()
        };
        let (a, b) = (at(0), at(1));
        assert!(brute_force_iso(&a, &b, Mode::Stabilizer).unwrap().is_none());
        assert!(brute_force_iso(&a, &b, Mode::FullGl3).unwrap().is_none());
    }

    #[test]
    fn limits() {
        let f11 = FieldCtx::prime(11).unwrap();
        let z = Msc::zero(&f11);
        assert!(matches!(
            brute_force_iso(&z, &z, Mode::FullGl3),
            Err(OracleError::FieldTooLarge { p: 11, .. })
        ));
        let q = Msc::zero(&FieldCtx::rational());
        assert_eq!(brute_force_iso(&q, &q, Mode::Stabilizer).unwrap_err(), OracleError::NotPrimeField);
    }

    #[test]
    fn empty_census() {
        let c = census(3, 0, 1).unwrap();
        assert!(c.histogram.is_empty());
        assert_eq!((c.samples, c.rejected), (0, 0));
    }

    #[test]
    fn census_is_reproducible() {
        assert_eq!(census(3, 200, 11).unwrap(), census(3, 200, 11).unwrap());
        assert_eq!(census(0, 50, 11).unwrap().failures, 0);
    }
}
