//! Writes the golden corpus: one instance per family (odd families over Q,
//! characteristic-2 families over F_4), plus the zero matrix.
//!
//! `cargo run -p msc3 --example golden -- <dir>`

use std::fs;
use std::path::PathBuf;

use msc3::catalog::sample::sample_instance;
use msc3::catalog::{canonical_msc, families, FamilyId, Params, Parity};
use msc3::cli_io::MscDocument;
use msc3::field::FieldCtx;
use msc3::msc::Msc;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).expect("output directory"));
    fs::create_dir_all(&dir).unwrap();
    let q = FieldCtx::rational();
    let f4 = FieldCtx::finite_tower(2, 1).unwrap();
    for (parity, ctx, level) in [(Parity::Odd, &q, 0), (Parity::Char2, &f4, 1)] {
        for f in families(parity) {
            let seed = 1000 * (parity == Parity::Char2) as u64 + f.id.index as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = if f.id == FamilyId::odd(47) {
                let one = Params(f.params.iter().map(|c| (*c, q.one())).collect());
                Some(canonical_msc(f.id, &one).unwrap())
            } else {
                sample_instance(f, ctx, level, &mut rng, 2000)
            };
            let Some(m) = m else {
                eprintln!("{}: no instance", f.id);
                continue;
            };
            let doc = MscDocument { msc: m, label: Some(f.id.to_string()), seed: Some(seed) };
            fs::write(dir.join(format!("{}.json", f.id.to_string().replace(',', "_"))), doc.to_text()).unwrap();
        }
    }
    let zero = MscDocument { msc: Msc::zero(&FieldCtx::prime(3).unwrap()), label: Some("zero".into()), seed: None };
    fs::write(dir.join("zero.json"), zero.to_text()).unwrap();
}
