//! Side conditions attached to catalog families.

use std::cmp::Ordering;
use std::fmt;

use super::expr::{Expr, ParseError};
use super::rank::{minimal_support, support_name};
use super::Family;
use crate::field::{Poly, Ring, Scalar};
use crate::msc::{Msc, StabilizerParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Guard {
    NonZero(Expr),
    Zero(Expr),
    Any(Vec<Guard>),
    /// Along the stabilizer line `(a, b, c) = (x t, y t, 1)`, where `(x, y)` is
    /// `dir` evaluated on the instance, the first target that is not constant in
    /// `t` must vanish. If that target is `u t^2 + k t` with `u, k != 0` it has a
    /// second zero at `t = -k/u`; the instance must then carry the smaller
    /// parameter tuple of the two.
    KillChain { dir: (Expr, Expr), targets: Vec<Expr> },
    /// The gamma entries `(g1, g2, g4, g5)` reduce to exactly this support,
    /// listed as positions `1, 2, 4, 5`, and no earlier one in the rank order.
    Support(Vec<u8>),
    /// The parameter tuple is not larger than its image under `c = -1`.
    AltMin,
}

impl Guard {
    /// Syntax: `E != 0`, `E = 0`, alternatives joined by `|`,
    /// `kill(X, Y): T1, T2`, `support{1,2}`, `flip`.
    pub fn parse(s: &str) -> Result<Guard, ParseError> {
        let s = s.trim();
        let bad = |why: &str| ParseError { text: s.into(), why: why.into() };
        if s.contains('|') {
            return Ok(Guard::Any(s.split('|').map(Guard::parse).collect::<Result<_, _>>()?));
        }
        if s == "flip" {
            return Ok(Guard::AltMin);
        }
        if let Some(rest) = s.strip_prefix("support{") {
            let body = rest.strip_suffix('}').ok_or_else(|| bad("missing }"))?;
            let set = body
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<u8>().map_err(|_| bad("bad support index")))
                .collect::<Result<Vec<_>, _>>()?;
            if set.iter().any(|i| ![1, 2, 4, 5].contains(i)) {
                return Err(bad("support indices are 1, 2, 4, 5"));
            }
            return Ok(Guard::Support(set));
        }
        if let Some(rest) = s.strip_prefix("kill(") {
            let (dir, targets) = rest.split_once("):").ok_or_else(|| bad("expected kill(X, Y): ..."))?;
            let (x, y) = dir.split_once(',').ok_or_else(|| bad("direction needs two entries"))?;
            let targets = targets.split(',').map(Expr::parse).collect::<Result<Vec<_>, _>>()?;
            return Ok(Guard::KillChain { dir: (Expr::parse(x)?, Expr::parse(y)?), targets });
        }
        if let Some(e) = s.strip_suffix("!= 0") {
            return Ok(Guard::NonZero(Expr::parse(e)?));
        }
        if let Some(e) = s.strip_suffix("= 0") {
            return Ok(Guard::Zero(Expr::parse(e)?));
        }
        Err(bad("unrecognized guard"))
    }

    /// Checks the condition on a completed instance of `family`.
    pub fn holds(&self, family: &Family, m: &Msc<Scalar>) -> bool {
        let ctx = m.ctx();
        let like = ctx.zero();
        let val = |e: &Expr| e.eval(&like, &|c| m.get(c).clone());
        match self {
            Guard::NonZero(e) => val(e).is_some_and(|v| !v.is_zero()),
            Guard::Zero(e) => val(e).is_some_and(|v| v.is_zero()),
            Guard::Any(gs) => gs.iter().any(|g| g.holds(family, m)),
            Guard::KillChain { dir, targets } => {
                let (Some(x), Some(y)) = (val(&dir.0), val(&dir.1)) else {
                    return false;
                };
                let line = along(m, &x, &y);
                for t in targets {
                    let Some(p) = t.eval(&Poly::constant(&like), &|c| line.get(c).clone()) else {
                        return false;
                    };
                    if p.is_constant() {
                        continue;
                    }
                    if !p.coeff(0).is_zero() {
                        return false;
                    }
                    return match second_root(&p) {
                        None => true,
                        Some(r) => {
                            let alt = shifted(m, &(&x * &r), &(&y * &r));
                            family.read_params(m).canonical_cmp(&family.read_params(&alt)) != Ordering::Greater
                        }
                    };
                }
                true
            }
            Guard::Support(set) => minimal_support(m).is_some_and(|s| s == *set),
            Guard::AltMin => {
                let minus = StabilizerParams { a: ctx.zero(), b: ctx.zero(), c: ctx.int(-1) };
                let alt = m.act_stabilizer(&minus).expect("c = -1 is invertible");
                family.read_params(m).canonical_cmp(&family.read_params(&alt)) != Ordering::Greater
            }
        }
    }

    /// For the guards that choose between equivalent instances (the second root
    /// of a quadratic kill, the `c = -1` image), the stabilizer element taking `m`
    /// to the preferred instance when `m` is not already it.
    pub fn better_representative(&self, family: &Family, m: &Msc<Scalar>) -> Option<StabilizerParams> {
        let ctx = m.ctx();
        let like = ctx.zero();
        let val = |e: &Expr| e.eval(&like, &|c| m.get(c).clone());
        let smaller = |alt: &Msc<Scalar>| family.read_params(alt).canonical_cmp(&family.read_params(m)) == Ordering::Less;
        match self {
            Guard::KillChain { dir, targets } => {
                let (x, y) = (val(&dir.0)?, val(&dir.1)?);
                let line = along(m, &x, &y);
                let p = targets
                    .iter()
                    .filter_map(|t| t.eval(&Poly::constant(&like), &|c| line.get(c).clone()))
                    .find(|p| !p.is_constant())?;
                let r = second_root(&p)?;
                let (a, b) = (&x * &r, &y * &r);
                smaller(&shifted(m, &a, &b)).then(|| StabilizerParams { a, b, c: ctx.one() })
            }
            Guard::AltMin => {
                let minus = StabilizerParams { a: ctx.zero(), b: ctx.zero(), c: ctx.int(-1) };
                let alt = m.act_stabilizer(&minus).expect("c = -1 is invertible");
                smaller(&alt).then_some(minus)
            }
            _ => None,
        }
    }

    /// Human-readable rendering with Greek names.
    pub fn describe(&self) -> String {
        match self {
            Guard::NonZero(e) => format!("{} ≠ 0", e.greek()),
            Guard::Zero(e) => format!("{} = 0", e.greek()),
            Guard::Any(gs) => gs.iter().map(Guard::describe).collect::<Vec<_>>().join(" or "),
            Guard::KillChain { dir, targets } => format!(
                "along (a, b) = ({}·t, {}·t) the first moving of {} is 0 (smaller root)",
                dir.0.greek(),
                dir.1.greek(),
                targets.iter().map(Expr::greek).collect::<Vec<_>>().join(", ")
            ),
            Guard::Support(set) => format!("γ-support {} is the first solvable one", support_name(set)),
            Guard::AltMin => "parameters not larger than their image under c = −1".into(),
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::NonZero(e) => write!(f, "{e} != 0"),
            Guard::Zero(e) => write!(f, "{e} = 0"),
            Guard::Any(gs) => {
                let parts: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
                f.write_str(&parts.join(" | "))
            }
            Guard::KillChain { dir, targets } => {
                let ts: Vec<String> = targets.iter().map(|t| t.to_string()).collect();
                write!(f, "kill({}, {}): {}", dir.0, dir.1, ts.join(", "))
            }
            Guard::Support(set) => {
                let s: Vec<String> = set.iter().map(|i| i.to_string()).collect();
                write!(f, "support{{{}}}", s.join(","))
            }
            Guard::AltMin => f.write_str("flip"),
        }
    }
}

/// The instance transported along `(a, b, c) = (x t, y t, 1)` as polynomials in `t`.
pub fn along(m: &Msc<Scalar>, x: &Scalar, y: &Scalar) -> Msc<Poly> {
    let ctx = m.ctx();
    let t = Poly::var(&ctx);
    let p = m.map(Poly::constant);
    let one = t.one_like();
    p.act_stabilizer_ring(&(t.clone() * Poly::constant(x)), &(t * Poly::constant(y)), &one, &one)
}

/// `m` acted on by the stabilizer element `(a, b, 1)`.
pub fn shifted(m: &Msc<Scalar>, a: &Scalar, b: &Scalar) -> Msc<Scalar> {
    let one = m.ctx().one();
    m.act_stabilizer_ring(a, b, &one, &one)
}

/// For `p = u t^2 + k t` (zero constant term) with `u, k != 0`, the nonzero root.
pub(crate) fn second_root(p: &Poly) -> Option<Scalar> {
    if p.degree() != Some(2) || !p.coeff(0).is_zero() || p.coeff(1).is_zero() {
        return None;
    }
    Some(-&(&p.coeff(1) / &p.coeff(2)))
}
