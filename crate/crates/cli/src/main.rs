use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lefrank::cohomology::{
    hard_lefschetz, lef_fil_equiv_report, omega_on_h1, weak_lefschetz, CohomologyRing, SymplecticData,
};
use lefrank::constructions::{blowup_bmodule, catalog, catalog_names, chevalley_eilenberg, CatalogEntry, CatalogItem};
use lefrank::error::{ConstructionError, FiltrationError, SpectralError};
use lefrank::filtration::{saturation_level, try_extend_to_g, verified_filtration};
use lefrank::io::{self, Document};
use lefrank::spectral::{certify_csplitting, FibrationSpec};

mod report;

use report::{LefschetzView, Report};

#[derive(Parser)]
#[command(name = "lefrank", version, about = "Canonical filtrations, Lefschetz deciders and degeneration certificates")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a b-module, g-module, ring or Lie algebra file.
    Validate { file: PathBuf },
    /// Canonical filtration of a b-module, or of a ring with a degree-2 class.
    Filtration {
        file: PathBuf,
        #[arg(long)]
        class: Option<String>,
    },
    /// Hard and weak Lefschetz verdicts for a ring and a degree-2 class.
    Lefschetz {
        file: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// Cohomology ring of the nilmanifold of a Lie algebra, as a ring file.
    Ce { file: PathBuf },
    /// Blowup b-module of CP^N along a symplectic submanifold.
    Blowup {
        file: PathBuf,
        #[arg(long)]
        class: String,
        /// N, the complex dimension of the ambient projective space.
        #[arg(long)]
        ambient: usize,
        /// k, half the real codimension of the submanifold.
        #[arg(long)]
        codim: usize,
    },
    /// Degeneration certificate for a fibration with the given fiber ring.
    Certify {
        file: PathBuf,
        #[arg(long)]
        class: String,
        /// Betti numbers of the base, e.g. 1,0,1; end with ",..." if truncated.
        #[arg(long)]
        base_betti: String,
    },
    /// sl(2) decomposition of a g-module (or of a b-module that extends to one).
    Decompose { file: PathBuf },
    /// Built-in and user catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Get { name: String },
}

/// Why a command did not produce a positive report.
enum Failure {
    /// Malformed or invalid input: exit 2.
    Input(String),
    /// An internal cross-check failed: exit 3.
    Internal(String),
}

type Outcome = Result<(Report, bool), Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn filtration_failure(e: FiltrationError) -> Failure {
    match e {
        FiltrationError::Module(m) => input(m),
        other => Failure::Internal(other.to_string()),
    }
}

fn spectral_failure(e: SpectralError) -> Failure {
    match e {
        SpectralError::Filtration(f) => filtration_failure(f),
        SpectralError::TensorLaw { .. } => Failure::Internal(e.to_string()),
        other => input(other),
    }
}

fn read_document(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    io::parse_document(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_ring(path: &Path) -> Result<CohomologyRing, Failure> {
    match read_document(path)? {
        Document::Ring(r) => {
            r.validate().map_err(|e| input(format!("{}: {e}", path.display())))?;
            Ok(r)
        }
        other => Err(input(format!("{}: expected a ring, found a {}", path.display(), other.kind()))),
    }
}

fn symplectic(ring: CohomologyRing, class: &str) -> Result<SymplecticData, Failure> {
    SymplecticData::from_named_class(ring, class).map_err(input)
}

fn parse_base_betti(s: &str) -> Result<(Vec<usize>, bool), Failure> {
    let mut parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let truncated = parts.last() == Some(&"...");
    if truncated {
        parts.pop();
    }
    let betti = parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| input(format!("--base-betti: {p:?} is not a number"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((betti, truncated))
}

fn user_catalog() -> Result<Vec<CatalogEntry>, Failure> {
    match std::env::var_os("LEFRANK_CATALOG_DIR") {
        Some(dir) if !dir.is_empty() => io::load_user_catalog(Path::new(&dir)).map_err(input),
        _ => Ok(Vec::new()),
    }
}

fn lookup(name: &str) -> Result<CatalogEntry, Failure> {
    if let Some(e) = user_catalog()?.into_iter().find(|e| e.name == name) {
        return Ok(e);
    }
    catalog(name).map_err(|e| match e {
        ConstructionError::UnknownCatalogEntry { name, available } => {
            let mut all = vec![available];
            all.extend(user_catalog().unwrap_or_default().into_iter().map(|e| e.name));
            input(format!("unknown catalog entry {name:?}; available: {}", all.join(", ")))
        }
        other => input(other),
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { file } => {
            let doc = read_document(file)?;
            let at = |e: &dyn std::fmt::Display| input(format!("{}: {e}", file.display()));
            let lie_ring = match &doc {
                Document::Ring(r) => {
                    r.validate().map_err(|e| at(&e))?;
                    None
                }
                Document::Lie(a) => Some(chevalley_eilenberg(a).map_err(|e| at(&e))?),
                _ => None,
            };
            Ok((Report::validate(&doc, lie_ring.as_ref()), true))
        }
        Command::Filtration { file, class } => {
            let v = match read_document(file)? {
                Document::BModule(v) => v,
                Document::GModule(g) => g.into_base(),
                Document::Ring(r) => {
                    r.validate().map_err(|e| input(format!("{}: {e}", file.display())))?;
                    let name = class.as_deref().unwrap_or("omega");
                    let alpha = r.degree_two_class(name).map_err(input)?;
                    lefrank::cohomology::lefschetz_bmodule(&r, &alpha)
                }
                Document::Lie(_) => return Err(input("filtration needs a b-module or a ring; run `ce` first")),
            };
            let (filt, table) = verified_filtration(&v).map_err(filtration_failure)?;
            Ok((Report::filtration(&filt, &table), true))
        }
        Command::Lefschetz { file, class } => {
            let s = symplectic(read_ring(file)?, class)?;
            let sat = saturation_level(&s.bmodule()).map_err(filtration_failure)?;
            let hard = hard_lefschetz(&s);
            let weak = weak_lefschetz(&s);
            let b1 = s.ring().betti_at(1);
            let h1 = (b1 > 0).then(|| (omega_on_h1(&s).0, b1));
            let reports: Vec<_> = (-1..=s.ring().dim() as i64 + 1)
                .map(|m| lef_fil_equiv_report(s.ring(), s.omega(), m))
                .collect();
            if reports.iter().any(|r| !r.consistent()) {
                return Err(Failure::Internal("Lefschetz maps and filtration levels disagree".into()));
            }
            let report = Report::lefschetz(LefschetzView {
                n: s.half_dim(),
                hard,
                weak,
                sat,
                h1,
                levels: &reports,
            });
            Ok((report, hard))
        }
        Command::Ce { file } => match read_document(file)? {
            Document::Lie(a) => {
                let ring = chevalley_eilenberg(&a).map_err(input)?;
                Ok((Report::document(io::ring_to_json(&ring)), true))
            }
            other => Err(input(format!("ce needs a Lie algebra, found a {}", other.kind()))),
        },
        Command::Blowup {
            file,
            class,
            ambient,
            codim,
        } => {
            let s = symplectic(read_ring(file)?, class)?;
            let x = blowup_bmodule(&s, *ambient, *codim).map_err(input)?;
            let sx = saturation_level(&x).map_err(filtration_failure)?;
            let sm = saturation_level(&s.bmodule()).map_err(filtration_failure)?;
            Ok((Report::blowup(&x, *ambient, *codim, sx, s.half_dim(), sm), true))
        }
        Command::Certify { file, class, base_betti } => {
            let s = symplectic(read_ring(file)?, class)?;
            let (betti, truncated) = parse_base_betti(base_betti)?;
            let spec = FibrationSpec::new(s, betti).map_err(spectral_failure)?.truncated(truncated);
            let cert = certify_csplitting(&spec).map_err(spectral_failure)?;
            if let Some(total) = &cert.total_betti {
                let expected = lefrank::spectral::betti_convolution(&spec.fiber.ring().betti(), &spec.base_betti);
                if *total != expected {
                    return Err(Failure::Internal("certified Betti numbers differ from the convolution".into()));
                }
            }
            let ok = cert.certified;
            Ok((Report::certificate(&cert), ok))
        }
        Command::Decompose { file } => {
            let g = match read_document(file)? {
                Document::GModule(g) => g,
                Document::BModule(v) => match try_extend_to_g(&v) {
                    Some(g) => g,
                    None => return Ok((Report::no_extension(&v), false)),
                },
                other => return Err(input(format!("decompose needs a module, found a {}", other.kind()))),
            };
            let mults = g.decompose().map_err(|e| Failure::Internal(e.to_string()))?;
            Ok((Report::decomposition(&mults), true))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let mut rows: Vec<(String, String, String)> = catalog_names()
                    .into_iter()
                    .map(|n| {
                        let probe = n.replace("<k>", "2").replace("<N>", "1");
                        let e = catalog(&probe).expect("listed names resolve");
                        let description = if probe == n { e.description } else { family_description(&n) };
                        (n, description, e.provenance)
                    })
                    .collect();
                rows.extend(user_catalog()?.into_iter().map(|e| (e.name, e.description, e.provenance)));
                Ok((Report::catalog_list(&rows), true))
            }
            CatalogAction::Get { name } => {
                let e = lookup(name)?;
                let mut doc = match &e.item {
                    CatalogItem::Lie(a) => io::lie_to_json(a),
                    CatalogItem::Ring(r) => io::ring_to_json(r),
                };
                doc["provenance"] = serde_json::json!(e.provenance);
                Ok((Report::document(doc), true))
            }
        },
    }
}

fn family_description(pattern: &str) -> String {
    match pattern {
        "abelian<k>" => "abelian Lie algebra of dimension k".into(),
        "cp<N>" => "cohomology of complex projective space of complex dimension N".into(),
        other => other.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli)));
    match outcome {
        Ok(Ok((report, positive))) => {
            print!("{}", if cli.json { report.json() } else { report.text() });
            if positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => {
            eprintln!("internal error: unexpected panic");
            ExitCode::from(3)
        }
    }
}
