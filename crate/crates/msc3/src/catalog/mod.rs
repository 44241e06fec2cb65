//! The catalog of canonical families: 47 for odd characteristic, 62 for
//! characteristic 2.
//!
//! Each family is a list of fixed entries (expressions evaluated in order over
//! the remaining free coordinates), the residual parameters, and the side
//! conditions that make the form unique. The six trace-dependent entries are
//! always filled in last.

mod char2;
pub mod expr;
pub mod guard;
mod odd;
pub mod rank;
pub mod sample;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::field::{FieldCtx, Scalar};
use crate::msc::{Coord, Msc, StabilizerParams};
use crate::normalize::{complete, free_coords, is_dependent};
pub use expr::Expr;
pub use guard::Guard;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Char2,
}

impl Parity {
    pub fn of(characteristic: u64) -> Parity {
        if characteristic == 2 {
            Parity::Char2
        } else {
            Parity::Odd
        }
    }

    pub fn count(self) -> u16 {
        match self {
            Parity::Odd => 47,
            Parity::Char2 => 62,
        }
    }

    fn admits(self, characteristic: u64) -> bool {
        Parity::of(characteristic) == self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub parity: Parity,
    pub index: u16,
}

impl FamilyId {
    pub fn new(parity: Parity, index: u16) -> Result<FamilyId, CatalogError> {
        if index == 0 || index > parity.count() {
            return Err(CatalogError::UnknownFamily(format!("{parity:?} {index}")));
        }
        Ok(FamilyId { parity, index })
    }

    pub fn odd(index: u16) -> FamilyId {
        FamilyId::new(Parity::Odd, index).expect("index in range")
    }

    pub fn char2(index: u16) -> FamilyId {
        FamilyId::new(Parity::Char2, index).expect("index in range")
    }

    pub fn family(self) -> &'static Family {
        &families(self.parity)[self.index as usize - 1]
    }
}

/// `A_n` or `A_n,2`.
impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            Parity::Odd => write!(f, "A_{}", self.index),
            Parity::Char2 => write!(f, "A_{},2", self.index),
        }
    }
}

impl FromStr for FamilyId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<FamilyId, CatalogError> {
        let bad = || CatalogError::UnknownFamily(s.to_string());
        let body = s.trim().strip_prefix("A_").ok_or_else(bad)?;
        let (num, parity) = match body.strip_suffix(",2") {
            Some(n) => (n, Parity::Char2),
            None => (body, Parity::Odd),
        };
        let index = num.parse().map_err(|_| bad())?;
        FamilyId::new(parity, index).map_err(|_| bad())
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("{family}: missing parameter {param}")]
    MissingParam { family: FamilyId, param: String },
    #[error("{family}: {param} is not a parameter of this family")]
    UnknownParam { family: FamilyId, param: String },
    #[error("{family}: side condition violated: {guard}")]
    GuardViolated { family: FamilyId, guard: String },
    #[error("{family} is not defined in characteristic {characteristic}")]
    UnsupportedCharacteristic { family: FamilyId, characteristic: u64 },
    #[error("malformed catalog entry for {family}: {why}")]
    Table { family: FamilyId, why: String },
}

/// Residual parameters of a family, in the family's parameter order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params(pub Vec<(Coord, Scalar)>);

impl Params {
    pub fn get(&self, c: Coord) -> Option<&Scalar> {
        self.0.iter().find(|(k, _)| *k == c).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Coord, Scalar)> {
        self.0.iter()
    }

    /// Lexicographic in parameter order, entries compared canonically.
    pub fn canonical_cmp(&self, other: &Params) -> Ordering {
        for ((_, x), (_, y)) in self.0.iter().zip(&other.0) {
            match x.canonical_cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    /// The deepest context among the values.
    pub fn ctx(&self) -> Option<Arc<FieldCtx>> {
        self.0.iter().map(|(_, v)| v.ctx()).max_by_key(|c| c.depth()).cloned()
    }
}

#[derive(Debug)]
pub struct Family {
    pub id: FamilyId,
    /// Assignments applied in order; later ones may use earlier ones.
    pub fixed: Vec<(Coord, Expr)>,
    /// Free coordinates not fixed, in row-major order.
    pub params: Vec<Coord>,
    pub guards: Vec<Guard>,
    /// How the normal form is reached, for the catalog listing.
    pub note: &'static str,
}

impl Family {
    fn from_table(id: FamilyId, fixed: &str, guards: &str, note: &'static str) -> Result<Family, CatalogError> {
        let bad = |why: String| CatalogError::Table { family: id, why };
        let mut assigned: Vec<(Coord, Expr)> = Vec::new();
        for part in fixed.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) = part.split_once('=').ok_or_else(|| bad(format!("expected c=expr in {part:?}")))?;
            let c = Coord::parse(lhs.trim()).ok_or_else(|| bad(format!("bad coordinate {lhs:?}")))?;
            if is_dependent(c) || assigned.iter().any(|(k, _)| *k == c) {
                return Err(bad(format!("{c} cannot be fixed here")));
            }
            let e = Expr::parse(rhs).map_err(|e| bad(e.to_string()))?;
            assigned.push((c, e));
        }
        let params: Vec<Coord> = free_coords().filter(|c| assigned.iter().all(|(k, _)| k != c)).collect();
        for (i, (c, e)) in assigned.iter().enumerate() {
            for v in e.vars() {
                let known = params.contains(&v) || assigned[..i].iter().any(|(k, _)| *k == v);
                if !known {
                    return Err(bad(format!("{c} uses {v} before it is known")));
                }
            }
        }
        let guards = guards
            .split(';')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(Guard::parse)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(e.to_string()))?;
        Ok(Family { id, fixed: assigned, params, guards, note })
    }

    pub fn name(&self) -> String {
        self.id.to_string()
    }

    /// The parameter values of a completed instance.
    pub fn read_params(&self, m: &Msc<Scalar>) -> Params {
        Params(self.params.iter().map(|c| (*c, m.get(*c).clone())).collect())
    }

    /// The instance with the given parameters; side conditions are not checked.
    pub fn instantiate(&self, params: &Params) -> Result<Msc<Scalar>, CatalogError> {
        let ctx = params.ctx().ok_or_else(|| self.missing(self.params.first()))?;
        self.instantiate_in(&ctx, params)
    }

    pub fn instantiate_in(&self, ctx: &Arc<FieldCtx>, params: &Params) -> Result<Msc<Scalar>, CatalogError> {
        if !self.id.parity.admits(ctx.characteristic()) {
            return Err(CatalogError::UnsupportedCharacteristic {
                family: self.id,
                characteristic: ctx.characteristic(),
            });
        }
        if let Some((c, _)) = params.iter().find(|(c, _)| !self.params.contains(c)) {
            return Err(CatalogError::UnknownParam { family: self.id, param: c.greek() });
        }
        let mut m = Msc::zero(ctx);
        for c in &self.params {
            let v = params.get(*c).ok_or_else(|| self.missing(Some(c)))?;
            m.set(*c, v.with_ctx(ctx));
        }
        let like = ctx.zero();
        for (c, e) in &self.fixed {
            let v = e.eval(&like, &|k| m.get(k).clone()).ok_or_else(|| CatalogError::GuardViolated {
                family: self.id,
                guard: format!("{} = {} is undefined", c.greek(), e.greek()),
            })?;
            m.set(*c, v);
        }
        complete(&mut m);
        Ok(m)
    }

    fn missing(&self, c: Option<&Coord>) -> CatalogError {
        CatalogError::MissingParam { family: self.id, param: c.map_or_else(|| "?".into(), |c| c.greek()) }
    }

    /// The first side condition failing on `m`, if any.
    pub fn violated_guard(&self, m: &Msc<Scalar>) -> Option<&Guard> {
        self.guards.iter().find(|g| !g.holds(self, m))
    }

    /// Whether `m` is exactly an instance of this family satisfying every side condition.
    pub fn contains(&self, m: &Msc<Scalar>) -> bool {
        self.id.parity.admits(m.ctx().characteristic())
            && self.instantiate_in(&m.ctx(), &self.read_params(m)).is_ok_and(|x| x == *m)
            && self.violated_guard(m).is_none()
    }

    /// Guard texts with Greek names.
    pub fn guard_texts(&self) -> Vec<String> {
        self.guards.iter().map(Guard::describe).collect()
    }

    /// Fixed entries with Greek names, e.g. `α₈ = −1`.
    pub fn fixed_texts(&self) -> Vec<String> {
        self.fixed.iter().map(|(c, e)| format!("{} = {}", c.greek(), e.greek())).collect()
    }
}

/// Table rows for the families classified by the rank system: the entries
/// moved by no stabilizer element are zero, gamma entries outside the support
/// vanish and the first one in it is 1. `pins` are extra fixed entries.
pub(crate) fn support_row(set: &[u8], pins: &str) -> (String, String) {
    let mut fixed = String::from("a3=0;a6=0;a7=0;a8=0;a9=0;b3=0;b7=0;b8=0;b9=0");
    let pins: Vec<&str> = pins.split(';').filter(|p| !p.is_empty()).collect();
    let mut first = true;
    let mut pin_coords = Vec::new();
    for p in &pins {
        pin_coords.push(p.split_once('=').expect("pin is c=expr").0);
    }
    for g in [1u8, 2, 4, 5] {
        let name = format!("g{g}");
        let value = if !set.contains(&g) {
            Some(0)
        } else {
            std::mem::replace(&mut first, false).then_some(1)
        };
        if let (Some(v), false) = (value, pin_coords.contains(&name.as_str())) {
            fixed += &format!(";{name}={v}");
        }
    }
    for p in pins {
        fixed += ";";
        fixed += p;
    }
    let s: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    (fixed, format!("support{{{}}}", s.join(",")))
}

/// `(fixed assignments, guards, note)` as written in the tables.
type TableRow = (String, String, &'static str);

pub fn families(parity: Parity) -> &'static [Family] {
    static ODD: OnceLock<Vec<Family>> = OnceLock::new();
    static CHAR2: OnceLock<Vec<Family>> = OnceLock::new();
    let (cell, table): (_, fn() -> Vec<TableRow>) = match parity {
        Parity::Odd => (&ODD, odd::table),
        Parity::Char2 => (&CHAR2, char2::table),
    };
    cell.get_or_init(|| {
        let rows = table();
        assert_eq!(rows.len(), parity.count() as usize);
        rows.into_iter()
            .enumerate()
            .map(|(i, (fixed, guards, note))| {
                let id = FamilyId::new(parity, i as u16 + 1).expect("in range");
                Family::from_table(id, &fixed, &guards, note).unwrap_or_else(|e| panic!("{e}"))
            })
            .collect()
    })
}

/// The canonical instance of `family` with these parameters, after checking
/// the side conditions.
/// Families whose form or side condition was recomputed from the action,
/// with a one-line reason each.
pub fn reconstruction_notes(parity: Parity) -> &'static [(u16, &'static str)] {
    match parity {
        Parity::Odd => odd::RECONSTRUCTED,
        Parity::Char2 => char2::RECONSTRUCTED,
    }
}

pub fn canonical_msc(family: FamilyId, params: &Params) -> Result<Msc<Scalar>, CatalogError> {
    let f = family.family();
    let m = f.instantiate(params)?;
    if let Some(g) = f.violated_guard(&m) {
        return Err(CatalogError::GuardViolated { family, guard: g.describe() });
    }
    Ok(m)
}

/// The image of an instance under `diag(1, 1, -1)`.
pub fn flip(m: &Msc<Scalar>) -> Msc<Scalar> {
    let ctx = m.ctx();
    let minus = StabilizerParams { a: ctx.zero(), b: ctx.zero(), c: ctx.int(-1) };
    m.act_stabilizer(&minus).expect("c = -1 is invertible")
}

/// For odd families 1 and 2, the smaller of the parameter tuple and its image
/// under `diag(1, 1, -1)`; all other families are returned unchanged.
pub fn involution_reduce(family: FamilyId, params: &Params) -> Result<Params, CatalogError> {
    if family.parity != Parity::Odd || family.index > 2 {
        return Ok(params.clone());
    }
    let f = family.family();
    let m = f.instantiate(params)?;
    let other = f.read_params(&flip(&m));
    Ok(if other.canonical_cmp(params) == Ordering::Less { other } else { params.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msc::{alpha, beta, gamma};

    fn zeros(f: &Family, ctx: &Arc<FieldCtx>) -> Params {
        Params(f.params.iter().map(|c| (*c, ctx.zero())).collect())
    }

    fn row(m: &Msc<Scalar>, r: u8) -> Vec<String> {
        (0..9).map(|c| m.get(Coord::new(r, c)).encode()).collect()
    }

    #[test]
    fn tables_parse() {
        assert_eq!(families(Parity::Odd).len(), 47);
        assert_eq!(families(Parity::Char2).len(), 62);
    }

    #[test]
    fn names_round_trip() {
        for p in [Parity::Odd, Parity::Char2] {
            for f in families(p) {
                assert_eq!(f.name().parse::<FamilyId>().unwrap(), f.id);
            }
        }
        assert_eq!(FamilyId::odd(47).to_string(), "A_47");
        assert_eq!(FamilyId::char2(47).to_string(), "A_47,2");
        assert!("A_48".parse::<FamilyId>().is_err());
        assert!("A_63,2".parse::<FamilyId>().is_err());
    }

    #[test]
    fn instances_have_normalized_traces() {
        for (p, ctx) in [(Parity::Odd, FieldCtx::rational()), (Parity::Char2, FieldCtx::prime(2).unwrap())] {
            for f in families(p) {
                let ones = Params(f.params.iter().map(|c| (*c, ctx.one())).collect());
                for ps in [zeros(f, &ctx), ones] {
                    if let Ok(m) = f.instantiate(&ps) {
                        assert!(m.traces().is_normalized(), "{}", f.id);
                    }
                }
            }
        }
    }

    #[test]
    fn a32_all_zero() {
        let q = FieldCtx::rational();
        for id in [FamilyId::odd(32), FamilyId::char2(47)] {
            let ctx = if id.parity == Parity::Odd { q.clone() } else { FieldCtx::prime(2).unwrap() };
            let m = canonical_msc(id, &zeros(id.family(), &ctx)).unwrap();
            assert_eq!(row(&m, 2), ["0", "0", "0", "0", "0", "1", "1", "0", "0"]);
            assert!(row(&m, 0).iter().chain(&row(&m, 1)).all(|x| x == "0"));
        }
    }

    #[test]
    fn a16_all_zero() {
        let q = FieldCtx::rational();
        let m = canonical_msc(FamilyId::odd(16), &zeros(FamilyId::odd(16).family(), &q)).unwrap();
        assert_eq!(row(&m, 0), ["0", "0", "1", "0", "0", "1", "-1", "-1", "0"]);
        assert_eq!(row(&m, 1), ["0", "0", "-1", "0", "0", "-1", "1", "1", "0"]);
    }

    #[test]
    fn a47_fractions() {
        let q = FieldCtx::rational();
        let f = FamilyId::odd(47).family();
        assert_eq!(f.params, vec![gamma(2), gamma(4), gamma(5)]);
        let ps = Params(f.params.iter().map(|c| (*c, q.one())).collect());
        let m = canonical_msc(f.id, &ps).unwrap();
        let want = [
            (alpha(1), (1, 4)),
            (alpha(2), (-1, 8)),
            (alpha(4), (3, 8)),
            (beta(2), (-1, 8)),
            (beta(4), (3, 8)),
            (beta(5), (1, 4)),
        ];
        for (c, (n, d)) in want {
            assert_eq!(m.get(c), &q.frac(n, d).unwrap(), "{c}");
        }
        // the pinned point exists in characteristic 5 as well
        let f5 = FieldCtx::prime(5).unwrap();
        let ps5 = Params(f.params.iter().map(|c| (*c, f5.one())).collect());
        assert!(canonical_msc(f.id, &ps5).is_ok());
    }

    #[test]
    fn char2_dependent_entries() {
        let f2 = FieldCtx::prime(2).unwrap();
        let f = FamilyId::char2(13).family();
        let ps = Params(f.params.iter().map(|c| (*c, f2.one())).collect());
        let m = f.instantiate(&ps).unwrap();
        // gamma7 = 1 + a1 + b4 in characteristic 2
        assert_eq!(m.get(gamma(7)), &(&(&f2.one() + m.get(alpha(1))) + m.get(beta(4))));
        assert_eq!(m.get(beta(5)), &(&f2.one() + m.get(alpha(2))));
    }

    #[test]
    fn errors() {
        let q = FieldCtx::rational();
        let f = FamilyId::odd(3).family();
        let mut ps = zeros(f, &q);
        // A_3 needs a8 != -1
        let i = f.params.iter().position(|c| *c == alpha(8)).unwrap();
        ps.0[i].1 = q.int(-1);
        assert!(matches!(canonical_msc(f.id, &ps), Err(CatalogError::GuardViolated { .. })));
        ps.0.pop();
        assert!(matches!(canonical_msc(f.id, &ps), Err(CatalogError::MissingParam { .. })));
        let mut ps = zeros(f, &q);
        ps.0.push((alpha(6), q.zero()));
        assert!(matches!(canonical_msc(f.id, &ps), Err(CatalogError::UnknownParam { .. })));
        let f2 = FieldCtx::prime(2).unwrap();
        assert!(matches!(
            canonical_msc(f.id, &zeros(f, &f2)),
            Err(CatalogError::UnsupportedCharacteristic { .. })
        ));
    }

    #[test]
    fn a1_involution() {
        let q = FieldCtx::rational();
        let f = FamilyId::odd(1).family();
        let mut ps = zeros(f, &q);
        assert_eq!(involution_reduce(f.id, &ps).unwrap(), ps);
        let i = f.params.iter().position(|c| *c == alpha(3)).unwrap();
        ps.0[i].1 = q.int(2);
        let m = f.instantiate(&ps).unwrap();
        let flipped = f.read_params(&flip(&m));
        assert_eq!(flipped.get(alpha(3)), Some(&q.int(-2)));
        assert_eq!(f.instantiate(&flipped).unwrap(), flip(&m));
        let a = involution_reduce(f.id, &ps).unwrap();
        let b = involution_reduce(f.id, &flipped).unwrap();
        assert_eq!(a, b);
        // positive before negative in the canonical order
        assert_eq!(a.get(alpha(3)), Some(&q.int(2)));
    }
}
