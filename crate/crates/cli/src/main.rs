use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use posets::arrangement::{
    bounded_regions, complement_betti, intersection_lattice, is_central, real_regions,
};
use posets::io::{
    export_hasse, parse_arrangement, parse_ideal, parse_poset, PosetDocument, RenderFormat,
};
use posets::monomial::{hibi_ideal, lcm_lattice, parse_monomial};
use posets::order::{
    cover_statistics, distributive_lattice, hibi_betti, is_lattice, moebius_table,
};
use posets::{Error, Poset};
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "posets",
    version,
    about = "Finite posets, lcm-lattices, Hibi ideals and hyperplane arrangements"
)]
struct Cli {
    /// Emit a JSON document instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Queries on a poset file
    Poset {
        #[arg(value_enum)]
        action: PosetAction,
        file: PathBuf,
    },
    /// lcm-lattice of a monomial ideal and its Betti numbers
    Lcm {
        #[arg(value_enum)]
        action: LcmAction,
        /// Multidegree, written as a monomial such as a^2*b*c
        #[arg(long)]
        multidegree: Option<String>,
        /// Homological index i of β_i
        #[arg(long)]
        index: Option<usize>,
        file: PathBuf,
    },
    /// Hibi ideal of a poset
    Hibi {
        #[arg(value_enum)]
        action: HibiAction,
        file: PathBuf,
    },
    /// Hyperplane arrangement invariants
    Arr {
        #[arg(value_enum)]
        action: ArrAction,
        file: PathBuf,
    },
    /// Hasse diagram of a poset as DOT or TikZ
    Export {
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetAction {
    Info,
    Covers,
    Moebius,
    Dilworth,
    Distributive,
}

#[derive(Clone, Copy, ValueEnum)]
enum LcmAction {
    Lattice,
    Betti,
}

#[derive(Clone, Copy, ValueEnum)]
enum HibiAction {
    Gens,
    Betti,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArrAction {
    Lattice,
    Central,
    Regions,
    Bounded,
    Betti,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Tikz,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Text for humans, JSON for `--json`.
struct Report {
    text: String,
    data: Value,
}

impl Report {
    fn new(text: impl Into<String>, data: Value) -> Self {
        Report {
            text: text.into(),
            data,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: posets::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        Failure::Internal(m) => Failure::Internal(m),
    })
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    with_path(path, parse_poset(&read(path)?))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn lines(mut out: Vec<String>) -> String {
    out.retain(|l| !l.is_empty());
    out.join("\n")
}

fn labels(xs: &[posets::Label]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn poset_command(action: PosetAction, path: &Path) -> Result<Report, Failure> {
    let p = load_poset(path)?;
    Ok(match action {
        PosetAction::Info => {
            let sizes: Vec<usize> = p.rank_partition().iter().map(Vec::len).collect();
            let height = p.height().ok();
            let minimal = labels(&p.minimal_elements());
            let maximal = labels(&p.maximal_elements());
            let lattice = is_lattice(&p);
            let text = lines(vec![
                format!("elements: {}", p.len()),
                format!("covers: {}", p.cover_indices().len()),
                height.map_or(String::new(), |h| format!("height: {h}")),
                format!("rank sizes: {}", join(&sizes)),
                format!("minimal: {}", minimal.join(" ")),
                format!("maximal: {}", maximal.join(" ")),
                format!("lattice: {lattice}"),
                format!("dilworth: {}", p.dilworth_number()),
            ]);
            Report::new(
                text,
                json!({
                    "elements": p.len(),
                    "covers": p.cover_indices().len(),
                    "height": height,
                    "rank_sizes": sizes,
                    "minimal": minimal,
                    "maximal": maximal,
                    "lattice": lattice,
                    "dilworth": p.dilworth_number(),
                }),
            )
        }
        PosetAction::Covers => {
            let covers: Vec<[String; 2]> = p
                .covering_relations()
                .into_iter()
                .map(|c| [c.lower.to_string(), c.upper.to_string()])
                .collect();
            let text = lines(covers.iter().map(|[a, b]| format!("{a} < {b}")).collect());
            Report::new(text, json!({ "covers": covers }))
        }
        PosetAction::Moebius => {
            let table = with_path(path, moebius_table(&p))?;
            let entries: Vec<(String, String, i64)> = table
                .entries()
                .map(|(a, b, v)| (a.to_string(), b.to_string(), v))
                .collect();
            let text = lines(
                entries
                    .iter()
                    .map(|(a, b, v)| format!("{a} {b} {v}"))
                    .collect(),
            );
            let data: Vec<Value> = entries
                .iter()
                .map(|(a, b, v)| json!({ "lower": a, "upper": b, "mu": v }))
                .collect();
            Report::new(text, json!({ "moebius": data }))
        }
        PosetAction::Dilworth => {
            let w = p.dilworth_number();
            Report::new(w.to_string(), json!({ "dilworth": w }))
        }
        PosetAction::Distributive => {
            let l = with_path(path, distributive_lattice(&p))?;
            let tally = with_path(path, cover_statistics(&l))?;
            let text = lines(vec![
                format!("elements: {}", l.len()),
                format!("covers: {}", l.cover_indices().len()),
                format!(
                    "cover tally: {}",
                    join(
                        &tally
                            .counts
                            .iter()
                            .map(|(k, c)| format!("{k}:{c}"))
                            .collect::<Vec<_>>()
                    )
                ),
            ]);
            Report::new(
                text,
                json!({
                    "lattice": PosetDocument::from_poset(&l),
                    "cover_tally": tally.counts,
                }),
            )
        }
    })
}

fn lcm_command(
    action: LcmAction,
    multidegree: Option<&str>,
    index: Option<usize>,
    path: &Path,
) -> Result<Report, Failure> {
    let ideal = with_path(path, parse_ideal(&read(path)?))?;
    let l = with_path(path, lcm_lattice(&ideal))?;
    let vars = l.variables().to_vec();
    Ok(match action {
        LcmAction::Lattice => {
            let rows: Vec<Vec<String>> = l
                .poset()
                .rank_partition()
                .iter()
                .map(|b| labels(b))
                .collect();
            let covers = l.poset().cover_indices().len();
            let top = l.top().display(&vars).to_string();
            let mut text = vec![
                format!("elements: {}", l.len()),
                format!("covers: {covers}"),
                format!("top: {top}"),
            ];
            text.extend(
                rows.iter()
                    .enumerate()
                    .map(|(k, r)| format!("rank {k}: {}", r.join(" "))),
            );
            Report::new(
                lines(text),
                json!({
                    "elements": l.len(),
                    "covers": covers,
                    "top": top,
                    "ranks": rows,
                    "lattice": PosetDocument::from_poset(l.poset()),
                }),
            )
        }
        LcmAction::Betti => match (multidegree, index) {
            (Some(m), _) => {
                let b = with_path(path, parse_monomial(&vars, m))?;
                let shown = b.display(&vars).to_string();
                // homology[k] = dim H̃_{k-1}, which is β_{k+1, b}
                let homology = with_path(path, l.interval_homology(&b))?;
                let betti: Vec<u64> = (1..=homology.len().max(1))
                    .map(|i| homology.get(i - 1).copied().unwrap_or(0) as u64)
                    .collect();
                match index {
                    Some(i) => {
                        let v = with_path(path, l.multigraded_betti(&b, i))?;
                        Report::new(
                            v.to_string(),
                            json!({ "multidegree": shown, "index": i, "betti": v }),
                        )
                    }
                    None => Report::new(
                        lines(
                            betti
                                .iter()
                                .enumerate()
                                .map(|(k, v)| format!("beta_{}: {v}", k + 1))
                                .collect(),
                        ),
                        json!({ "multidegree": shown, "betti": betti }),
                    ),
                }
            }
            (None, index) => {
                let mut totals = vec![1u64];
                totals.extend(with_path(path, l.total_betti_numbers())?);
                match index {
                    Some(i) => {
                        let v = totals.get(i).copied().unwrap_or(0);
                        Report::new(v.to_string(), json!({ "index": i, "betti": v }))
                    }
                    None => Report::new(join(&totals), json!({ "betti": totals })),
                }
            }
        },
    })
}

fn hibi_command(action: HibiAction, path: &Path) -> Result<Report, Failure> {
    let p = load_poset(path)?;
    let h = with_path(path, hibi_ideal(&p))?;
    Ok(match action {
        HibiAction::Gens => {
            let gens = h.generator_labels();
            let degrees: Vec<u64> = h
                .generators()
                .iter()
                .map(|g| g.degree())
                .collect::<posets::Result<_>>()
                .map_err(Failure::from)?;
            Report::new(
                lines(gens.clone()),
                json!({
                    "variables": h.variables(),
                    "generators": gens,
                    "degrees": degrees,
                }),
            )
        }
        HibiAction::Betti => {
            let dilworth = p.dilworth_number();
            if p.is_empty() {
                // the unit ideal: R/H_P is the zero module
                return Ok(Report::new(
                    "0",
                    json!({ "betti": [], "cover_tally": {}, "pdim": null, "dilworth": dilworth }),
                ));
            }
            let tally = with_path(
                path,
                cover_statistics(&with_path(path, distributive_lattice(&p))?),
            )?;
            let mut betti = vec![1u64];
            betti.extend(with_path(path, hibi_betti(&tally))?);
            while betti.last() == Some(&0) {
                betti.pop();
            }
            // pdim of the ideal is pdim of R/H_P minus one
            let pdim = betti.len() as i64 - 2;
            Report::new(
                join(&betti),
                json!({
                    "betti": betti,
                    "cover_tally": tally.counts,
                    "pdim": pdim,
                    "dilworth": dilworth,
                    "pdim_equals_dilworth": pdim == dilworth as i64,
                }),
            )
        }
    })
}

fn arr_command(action: ArrAction, path: &Path) -> Result<Report, Failure> {
    let a = with_path(path, parse_arrangement(&read(path)?))?;
    Ok(match action {
        ArrAction::Lattice => {
            let l = with_path(path, intersection_lattice(&a))?;
            let p = l.poset();
            let blocks = p.rank_partition();
            let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
            let rows: Vec<Vec<String>> = blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|label| {
                            let i = p
                                .index_of(label.as_str())
                                .expect("block labels belong to the lattice");
                            let f = l.flat(i);
                            if f.codim() == 0 {
                                f.equations()
                            } else {
                                format!("{{{}}}", f.equations())
                            }
                        })
                        .collect()
                })
                .collect();
            let covers = p.cover_indices().len();
            let mut text = vec![
                format!("elements: {}", p.len()),
                format!("covers: {covers}"),
                format!("rank sizes: {}", join(&sizes)),
            ];
            text.extend(
                rows.iter()
                    .enumerate()
                    .map(|(k, r)| format!("rank {k}: {}", r.join(" "))),
            );
            Report::new(
                lines(text),
                json!({
                    "elements": p.len(),
                    "covers": covers,
                    "rank_sizes": sizes,
                    "ranks": rows,
                    "lattice": PosetDocument::from_poset(p),
                }),
            )
        }
        ArrAction::Central => {
            let c = is_central(&a);
            Report::new(c.to_string(), json!({ "central": c }))
        }
        ArrAction::Regions => {
            let r = with_path(path, real_regions(&a))?;
            Report::new(r.to_string(), json!({ "regions": r }))
        }
        ArrAction::Bounded => {
            let b = with_path(path, bounded_regions(&a))?;
            Report::new(b.to_string(), json!({ "bounded_regions": b }))
        }
        ArrAction::Betti => {
            let b = with_path(path, complement_betti(&a))?;
            Report::new(join(&b), json!({ "betti": b }))
        }
    })
}

fn export_command(format: Format, path: &Path) -> Result<Report, Failure> {
    let p = load_poset(path)?;
    let (format, name) = match format {
        Format::Dot => (RenderFormat::Dot, "dot"),
        Format::Tikz => (RenderFormat::Tikz, "tikz"),
    };
    let out = export_hasse(&p, format);
    let text = out.trim_end().to_string();
    Ok(Report::new(text, json!({ "format": name, "output": out })))
}

fn run(cli: &Cli) -> Result<(&'static str, Report), Failure> {
    Ok(match &cli.command {
        Command::Poset { action, file } => ("poset", poset_command(*action, file)?),
        Command::Lcm {
            action,
            multidegree,
            index,
            file,
        } => (
            "lcm",
            lcm_command(*action, multidegree.as_deref(), *index, file)?,
        ),
        Command::Hibi { action, file } => ("hibi", hibi_command(*action, file)?),
        Command::Arr { action, file } => ("arr", arr_command(*action, file)?),
        Command::Export { format, file } => ("export", export_command(*format, file)?),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok((command, report)) => {
            if cli.json {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "result": report.data,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("JSON values serialize")
                );
            } else if !report.text.is_empty() {
                println!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(2)
        }
    }
}
