//! Text formats: an instance together with its field, and a classification
//! report that carries everything needed to recheck the result.
//!
//! Both are JSON with scalars as strings in the field encoding. The writer
//! is fixed (one matrix row per line, keys in a fixed order) so that a
//! document in canonical encoding re-serializes byte for byte.

use std::sync::Arc;

use rand::Rng;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::catalog::sample::sample_instance;
use crate::catalog::{canonical_msc, CatalogError, Family, FamilyId, Params, Parity};
use crate::field::{FieldCtx, FieldError, Scalar};
use crate::msc::{BasisChange, Coord, Mat3, Msc, MscError};
use crate::{classify, ClassificationResult};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("wrong shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Msc(#[from] MscError),
    #[error("report does not check out: {0}")]
    Invalid(String),
}

fn json_err(e: serde_json::Error) -> IoError {
    IoError::Json(e.to_string())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldDescriptor {
    characteristic: u64,
    tower: Vec<(String, String)>,
}

impl FieldDescriptor {
    fn of(ctx: &FieldCtx) -> FieldDescriptor {
        let (characteristic, tower) = ctx.encode();
        FieldDescriptor { characteristic, tower }
    }

    fn ctx(&self) -> Result<Arc<FieldCtx>, IoError> {
        Ok(FieldCtx::decode(self.characteristic, &self.tower)?)
    }

    fn write(&self) -> String {
        let tower: Vec<[&str; 2]> = self.tower.iter().map(|(b, c)| [b.as_str(), c.as_str()]).collect();
        format!(
            "{{\"characteristic\": {}, \"tower\": {}}}",
            self.characteristic,
            serde_json::to_string(&tower).expect("strings serialize")
        )
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Rows of scalars, one per line at the given indent.
fn write_rows(rows: &[Vec<String>], indent: &str) -> String {
    let lines: Vec<String> =
        rows.iter().map(|r| format!("{indent}  [{}]", r.iter().map(|s| quote(s)).collect::<Vec<_>>().join(", "))).collect();
    format!("[\n{}\n{indent}]", lines.join(",\n"))
}

fn msc_rows(m: &Msc<Scalar>) -> Vec<Vec<String>> {
    (0..3).map(|r| (0..9).map(|c| m.get(Coord::new(r, c)).encode()).collect()).collect()
}

fn read_msc(ctx: &Arc<FieldCtx>, rows: &[Vec<String>]) -> Result<Msc<Scalar>, IoError> {
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 9) {
        return Err(IoError::Shape("entries must be 3 rows of 9 scalars".into()));
    }
    let mut m = Msc::zero(ctx);
    for c in Coord::all() {
        m.set(c, Scalar::decode(ctx, &rows[c.row as usize][c.col as usize])?);
    }
    Ok(m)
}

fn read_matrix(ctx: &Arc<FieldCtx>, rows: &[Vec<String>]) -> Result<Mat3<Scalar>, IoError> {
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(IoError::Shape("a basis change is 3 rows of 3 scalars".into()));
    }
    let mut m: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| ctx.zero()));
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m[i][j] = Scalar::decode(ctx, s)?;
        }
    }
    Ok(Mat3 { m })
}

/// An instance of the structure constants with its field.
#[derive(Debug, Clone, PartialEq)]
pub struct MscDocument {
    pub msc: Msc<Scalar>,
    pub label: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    field: FieldDescriptor,
    entries: Vec<Vec<String>>,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
}

impl MscDocument {
    pub fn new(msc: Msc<Scalar>) -> MscDocument {
        MscDocument { msc, label: None, seed: None }
    }

    pub fn parse(text: &str) -> Result<MscDocument, IoError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(json_err)?;
        let ctx = raw.field.ctx()?;
        Ok(MscDocument { msc: read_msc(&ctx, &raw.entries)?, label: raw.label, seed: raw.seed })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{{\n  \"field\": {},\n  \"entries\": {}",
            FieldDescriptor::of(&self.msc.ctx()).write(),
            write_rows(&msc_rows(&self.msc), "  ")
        );
        if let Some(l) = &self.label {
            out += &format!(",\n  \"label\": {}", quote(l));
        }
        if let Some(s) = self.seed {
            out += &format!(",\n  \"seed\": {s}");
        }
        out + "\n}\n"
    }
}

/// A classification with the input, the witness and the canonical form, over
/// the field reached after any tower growth.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub family: FamilyId,
    pub params: Params,
    pub guards: Vec<String>,
    pub witness: BasisChange,
    pub input: Msc<Scalar>,
    pub canonical: Msc<Scalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReport {
    family: FamilyId,
    field: FieldDescriptor,
    params: Map<String, Value>,
    guards: Vec<String>,
    witness: Vec<Vec<String>>,
    input: Vec<Vec<String>>,
    canonical: Vec<Vec<String>>,
}

impl ClassificationReport {
    pub fn new(input: &Msc<Scalar>, r: &ClassificationResult) -> Result<ClassificationReport, IoError> {
        Ok(ClassificationReport {
            family: r.family,
            params: r.params.clone(),
            guards: r.guards.clone(),
            witness: r.witness.clone(),
            input: input.clone(),
            canonical: canonical_msc(r.family, &r.params)?,
        })
    }

    /// The deepest field among the parts.
    pub fn ctx(&self) -> Arc<FieldCtx> {
        [self.input.ctx(), self.canonical.ctx(), self.witness.matrix().ctx()]
            .into_iter()
            .max_by_key(|c| c.depth())
            .expect("nonempty")
    }

    /// Rechecks the canonical form against the catalog and the witness against
    /// the input.
    pub fn verify(&self) -> Result<(), IoError> {
        let expected = canonical_msc(self.family, &self.params)?;
        if expected != self.canonical {
            return Err(IoError::Invalid("canonical form differs from the catalog template".into()));
        }
        if self.input.act(&self.witness) != self.canonical {
            return Err(IoError::Invalid("the witness does not map the input to the canonical form".into()));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<ClassificationReport, IoError> {
        let raw: RawReport = serde_json::from_str(text).map_err(json_err)?;
        let ctx = raw.field.ctx()?;
        let family = raw.family.family();
        let mut params = Vec::new();
        for (name, v) in &raw.params {
            let c = Coord::parse(name).ok_or_else(|| IoError::Shape(format!("unknown coordinate {name}")))?;
            let s = v.as_str().ok_or_else(|| IoError::Shape(format!("parameter {name} is not a string")))?;
            params.push((c, Scalar::decode(&ctx, s)?));
        }
        params.sort_by_key(|(c, _)| family.params.iter().position(|p| p == c).unwrap_or(usize::MAX));
        Ok(ClassificationReport {
            family: raw.family,
            params: Params(params),
            guards: raw.guards,
            witness: BasisChange::new(read_matrix(&ctx, &raw.witness)?)?,
            input: read_msc(&ctx, &raw.input)?,
            canonical: read_msc(&ctx, &raw.canonical)?,
        })
    }

    pub fn to_text(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(c, v)| format!("{}: {}", quote(&c.name()), quote(&v.encode()))).collect();
        let guards: Vec<String> = self.guards.iter().map(|g| quote(g)).collect();
        let w = self.witness.matrix();
        let witness: Vec<Vec<String>> = w.m.iter().map(|r| r.iter().map(|x| x.encode()).collect()).collect();
        format!(
            "{{\n  \"family\": {},\n  \"field\": {},\n  \"params\": {{{}}},\n  \"guards\": [{}],\n  \"witness\": {},\n  \"input\": {},\n  \"canonical\": {}\n}}\n",
            quote(&self.family.to_string()),
            FieldDescriptor::of(&self.ctx()).write(),
            params.join(", "),
            guards.join(", "),
            write_rows(&witness, "  "),
            write_rows(&msc_rows(&self.input), "  "),
            write_rows(&msc_rows(&self.canonical), "  "),
        )
    }
}

/// Outcome of the self-check of one family.
#[derive(Debug, Clone, Default)]
pub struct FamilyCheck {
    /// Draws for which an admissible instance was found.
    pub sampled: usize,
    pub passed: usize,
    /// One line per failed draw.
    pub failures: Vec<String>,
}

impl FamilyCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The fields the self-check draws from: the tower over `F_3` and `Q(sqrt 2)`
/// in odd characteristic, the tower over `F_2` in characteristic 2, each with
/// the tower level of the entries.
pub fn check_fields(parity: Parity) -> Vec<(Arc<FieldCtx>, usize)> {
    match parity {
        Parity::Odd => {
            let f3 = FieldCtx::finite_tower(3, 2).expect("canonical tower");
            let q = FieldCtx::rational_tower(&[FieldCtx::rational().int(2)]).expect("2 is not a square");
            vec![(f3.clone(), 0), (q.clone(), 0), (f3.clone(), 1), (q, 1), (f3, 2)]
        }
        Parity::Char2 => {
            let f2 = FieldCtx::finite_tower(2, 3).expect("canonical tower");
            vec![(f2.clone(), 1), (f2.clone(), 2), (f2, 3)]
        }
    }
}

/// Classifies `trials` random admissible instances of `family` and checks
/// that each comes back as itself (same parameters) with a witness mapping it
/// to its canonical form. Draws cycle through [`check_fields`].
pub fn self_check<R: Rng + ?Sized>(family: &Family, trials: usize, rng: &mut R) -> FamilyCheck {
    let fields = check_fields(family.id.parity);
    let mut out = FamilyCheck::default();
    for t in 0..trials {
        let (ctx, level) = &fields[t % fields.len()];
        let Some(m) = sample_instance(family, ctx, *level, rng, 500) else { continue };
        out.sampled += 1;
        let params = family.read_params(&m);
        let fail = match classify(&m) {
            Err(e) => Some(e.to_string()),
            Ok(r) if r.family != family.id => Some(format!("classified as {}", r.family)),
            Ok(r) if r.params != params => Some("parameters changed".to_string()),
            Ok(r) => match canonical_msc(r.family, &r.params) {
                Ok(c) if c == m && m.act(&r.witness) == c => None,
                Ok(_) => Some("witness does not reach the canonical form".to_string()),
                Err(e) => Some(e.to_string()),
            },
        };
        match fail {
            None => out.passed += 1,
            Some(why) => out.failures.push(format!("{}: {why}", MscDocument::new(m).to_text().replace('\n', " "))),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn document_round_trip() {
        let ctx = FieldCtx::finite_tower(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let doc = MscDocument { msc: Msc::random(&ctx, 1, &mut rng), label: Some("x".into()), seed: Some(4) };
        let text = doc.to_text();
        let back = MscDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn rejects_bad_shapes() {
        let bad = "{\"field\": {\"characteristic\": 3, \"tower\": []}, \"entries\": [[\"0\"]]}";
        assert!(matches!(MscDocument::parse(bad), Err(IoError::Shape(_))));
        assert!(matches!(MscDocument::parse("{"), Err(IoError::Json(_))));
        let bad_scalar = "{\"field\": {\"characteristic\": 3, \"tower\": []}, \"entries\": [[\"x\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\"]]}";
        assert!(matches!(MscDocument::parse(bad_scalar), Err(IoError::Field(_))));
    }

    #[test]
    fn report_round_trip_and_verify() {
        let q = FieldCtx::rational();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = Msc::random(&q, 0, &mut rng);
        let r = classify(&a).unwrap();
        let rep = ClassificationReport::new(&a, &r).unwrap();
        rep.verify().unwrap();
        let text = rep.to_text();
        let back = ClassificationReport::parse(&text).unwrap();
        back.verify().unwrap();
        assert_eq!(back.to_text(), text);
    }
}
