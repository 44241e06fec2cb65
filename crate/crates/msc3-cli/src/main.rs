//! `msc3`: classify 3-dimensional algebras from the command line.
//!
//! Exit status: 2 for malformed input, 3 when the trace vectors are linearly
//! dependent (outside the classification), 1 when a self-check fails, 0 otherwise.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use msc3::catalog::{families, reconstruction_notes, FamilyId, Parity};
use msc3::cli_io::{self_check, ClassificationReport, MscDocument};
use msc3::field::{FieldCtx, Scalar};
use msc3::msc::{BasisChange, Mat3, Msc};
use msc3::normalize::normalize_traces;
use msc3::oracle::{brute_force_iso, census, directed_census, Census, Mode};
use msc3::{classify, ClassifyError};

#[derive(Parser)]
#[command(name = "msc3", version, about = "Canonical forms of 3-dimensional algebras with independent trace vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum IsoMode {
    /// Compare canonical forms.
    Canonical,
    /// Exhaustive search over a small prime field.
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Char2,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an instance and print (or write) the report.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two instances are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "canonical")]
        mode: IsoMode,
        /// With `--mode brute`, search all of GL(3) instead of the stabilizer
        /// of the normalized traces.
        #[arg(long)]
        full: bool,
    },
    /// Histogram of families over random instances.
    Census {
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample only the degenerate stratum of the rank families.
        #[arg(long)]
        directed: bool,
    },
    /// Print the two trace vectors.
    Traces {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Apply a basis change, given as rows separated by `;` and entries by spaces.
    Act {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        g: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Idempotence and witness checks over random admissible instances.
    Selftest {
        /// `all`, or family names such as `A_3 A_47,2` (space or `;` separated).
        #[arg(long, default_value = "all", num_args = 1..)]
        families: Vec<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the family catalog.
    Catalog {
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
    },
}

enum Failure {
    Malformed(String),
    TraceDependent,
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Malformed(_) => 2,
            Failure::TraceDependent => 3,
            Failure::Check(_) => 1,
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Failure {
        match e {
            ClassifyError::TraceDependent => Failure::TraceDependent,
            ClassifyError::UnsupportedCharacteristic(_) => Failure::Malformed(e.to_string()),
            ClassifyError::InternalContradiction(_) => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_doc(path: &Path) -> Result<MscDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    MscDocument::parse(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Malformed(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_matrix(g: &BasisChange) {
    for row in &g.matrix().m {
        println!("  {}", row.iter().map(Scalar::encode).collect::<Vec<_>>().join(" "));
    }
}

fn cmd_classify(input: &Path, out: Option<&Path>) -> Outcome {
    let doc = read_doc(input)?;
    let r = classify(&doc.msc)?;
    let report = ClassificationReport::new(&doc.msc, &r).map_err(|e| Failure::Check(e.to_string()))?;
    report.verify().map_err(|e| Failure::Check(e.to_string()))?;
    emit(&report.to_text(), out)
}

fn cmd_iso(a: &Path, b: &Path, mode: IsoMode, full: bool) -> Outcome {
    let (a, b) = (read_doc(a)?.msc, read_doc(b)?.msc);
    if a.ctx() != b.ctx() {
        return Err(Failure::Malformed("the two instances are over different fields".into()));
    }
    let witness = match mode {
        IsoMode::Canonical => {
            let (ra, rb) = (classify(&a)?, classify(&b)?);
            println!("{} / {}", ra.family, rb.family);
            ra.same_class(&rb).then(|| rb.witness.inverse().compose(&ra.witness))
        }
        IsoMode::Brute if full => {
            brute_force_iso(&a, &b, Mode::FullGl3).map_err(|e| Failure::Malformed(e.to_string()))?.map(|w| w.g)
        }
        IsoMode::Brute => {
            let na = normalize_traces(&a).map_err(ClassifyError::from)?;
            let nb = normalize_traces(&b).map_err(ClassifyError::from)?;
            brute_force_iso(&na.msc, &nb.msc, Mode::Stabilizer)
                .map_err(|e| Failure::Malformed(e.to_string()))?
                .map(|w| nb.g0.inverse().compose(&w.g.compose(&na.g0)))
        }
    };
    match witness {
        Some(g) => {
            if a.act(&g) != b {
                return Err(Failure::Check("witness does not map the first instance to the second".into()));
            }
            println!("isomorphic");
            print_matrix(&g);
        }
        None => println!("not isomorphic"),
    }
    Ok(())
}

fn census_json(c: &Census, p: u64, seed: u64, directed: bool) -> serde_json::Value {
    let hist: serde_json::Map<String, serde_json::Value> =
        c.histogram.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect();
    serde_json::json!({
        "characteristic": p,
        "seed": seed,
        "directed": directed,
        "samples": c.samples,
        "rejected": c.rejected,
        "failures": c.failures,
        "histogram": hist,
    })
}

fn cmd_census(p: u64, samples: u64, seed: u64, directed: bool) -> Outcome {
    let run = if directed { directed_census } else { census };
    let c = run(p, samples, seed).map_err(|e| Failure::Malformed(e.to_string()))?;
    println!("{:<8} {:>8} {:>9}", "family", "count", "fraction");
    for (id, n) in &c.histogram {
        println!("{:<8} {:>8} {:>9.4}", id.to_string(), n, c.fraction(*id));
    }
    println!("rejected {} of {} draws (dependent traces)", c.rejected, c.samples);
    println!("{}", census_json(&c, p, seed, directed));
    if c.failures > 0 {
        return Err(Failure::Check(format!("{} draws failed to classify", c.failures)));
    }
    Ok(())
}

fn cmd_traces(input: &Path) -> Outcome {
    let t = read_doc(input)?.msc.traces();
    let fmt = |v: &[Scalar; 3]| v.iter().map(Scalar::encode).collect::<Vec<_>>().join(",");
    println!("({}),({})", fmt(&t.tr1), fmt(&t.tr2));
    Ok(())
}

fn parse_matrix(ctx: &std::sync::Arc<FieldCtx>, s: &str) -> Result<BasisChange, Failure> {
    let rows: Vec<Vec<&str>> = s.split(';').map(|r| r.split_whitespace().collect()).collect();
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(Failure::Malformed("--g needs three rows of three entries".into()));
    }
    let mut m: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| ctx.zero()));
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[i][j] = Scalar::decode(ctx, x).map_err(|e| Failure::Malformed(e.to_string()))?;
        }
    }
    BasisChange::new(Mat3 { m }).map_err(|e| Failure::Malformed(e.to_string()))
}

fn cmd_act(input: &Path, g: &str, out: Option<&Path>) -> Outcome {
    let doc = read_doc(input)?;
    let g = parse_matrix(&doc.msc.ctx(), g)?;
    let moved: Msc<Scalar> = doc.msc.act(&g);
    emit(&MscDocument::new(moved).to_text(), out)
}

fn selected(names: &[String]) -> Result<Vec<FamilyId>, Failure> {
    let words: Vec<&str> = names.iter().flat_map(|n| n.split(|c: char| c == ';' || c.is_whitespace())).filter(|w| !w.is_empty()).collect();
    if words == ["all"] {
        return Ok([Parity::Odd, Parity::Char2].iter().flat_map(|p| families(*p).iter().map(|f| f.id)).collect());
    }
    words.iter().map(|w| w.parse().map_err(|_| Failure::Malformed(format!("unknown family {w}")))).collect()
}

fn cmd_selftest(names: &[String], trials: usize, seed: u64) -> Outcome {
    let ids = selected(names)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut failed, mut skipped) = (0, 0);
    for id in &ids {
        let check = self_check(id.family(), trials, &mut rng);
        if check.sampled == 0 {
            skipped += 1;
            println!("{id:<8} SKIP no admissible instance found");
            continue;
        }
        let status = if check.ok() { "ok" } else { "FAIL" };
        println!("{id:<8} {status:<4} {}/{} passed", check.passed, check.sampled);
        for f in &check.failures {
            println!("    {f}");
        }
        failed += !check.ok() as usize;
    }
    println!("{} families: {} failed, {} skipped", ids.len(), failed, skipped);
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} families failed")));
    }
    Ok(())
}

fn cmd_catalog(parity: Option<ParityArg>) -> Outcome {
    let parities = match parity {
        Some(ParityArg::Odd) => vec![Parity::Odd],
        Some(ParityArg::Char2) => vec![Parity::Char2],
        None => vec![Parity::Odd, Parity::Char2],
    };
    for p in parities {
        let notes = reconstruction_notes(p);
        for f in families(p) {
            println!("{}", f.id);
            println!("  fixed:  {}", f.fixed_texts().join("; "));
            let params: Vec<String> = f.params.iter().map(|c| c.greek()).collect();
            println!("  params: {}", params.join(", "));
            if !f.guards.is_empty() {
                println!("  where:  {}", f.guard_texts().join("; "));
            }
            println!("  how:    {}", f.note);
            for (_, n) in notes.iter().filter(|(i, _)| *i == f.id.index) {
                println!("  note:   {n}");
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify { input, out } => cmd_classify(&input, out.as_deref()),
        Command::Iso { a, b, mode, full } => cmd_iso(&a, &b, mode, full),
        Command::Census { characteristic, samples, seed, directed } => cmd_census(characteristic, samples, seed, directed),
        Command::Traces { input } => cmd_traces(&input),
        Command::Act { input, g, out } => cmd_act(&input, &g, out.as_deref()),
        Command::Selftest { families, trials, seed } => cmd_selftest(&families, trials, seed),
        Command::Catalog { parity } => cmd_catalog(parity),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Malformed(m) => eprintln!("error: {m}"),
                Failure::TraceDependent => eprintln!("error: trace vectors are linearly dependent; the algebra is outside the classification"),
                Failure::Check(m) => eprintln!("check failed: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
