use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use permpat::antichains::{self, Family};
use permpat::classes::{self, ClosureKind, PermClass, BASIS_SEARCH_LIMIT, ENUMERATE_LIMIT};
use permpat::grids::{self, GridKind, Matrix, GEOM_MEMBER_LIMIT, GRID_ENUM_LIMIT, GRID_MEMBER_LIMIT};
use permpat::invgraph::{inversion_graph, labeled_inversion_graph};
use permpat::labels::{labeled_contains, FinitePoset, LabeledPermutation, LabeledPermutationSpec, PosetSpec};
use permpat::suite::{run_suite, SuiteConfig};
use permpat::{reduce, Error, Permutation, SubstitutionTree, Symmetry};

#[derive(Parser)]
#[command(name = "permpat", version, about = "Permutation patterns, inversion graphs and grid classes")]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Raise (or lower) the size guard of the command.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Grid matrix: a JSON file, `X`, or inline rows top first such as `-1 1 / 1 -1`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Class JSON file (`{"basis": [[3,2,1]], "name": ...}`).
    #[arg(long, global = true)]
    class: Option<PathBuf>,
    /// Label poset JSON file (`{"elements": [...], "leq": [[a, b], ...]}`).
    #[arg(long, global = true)]
    poset: Option<PathBuf>,
    /// Also write DOT output to this file.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Does TEXT contain PATTERN? Prints a witness on success.
    Contains { pattern: Permutation, text: Permutation },
    /// Order-isomorphic permutation of a sequence of distinct integers.
    Reduce {
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        values: Vec<String>,
    },
    /// Apply inverse, rc, rc-inverse, reverse or complement.
    Symmetry { perm: Permutation, which: String },
    /// Substitution decomposition tree.
    Decompose { perm: Permutation },
    /// Proper intervals as 1-based position ranges.
    Intervals { perm: Permutation },
    /// Is the permutation simple?
    Simple { perm: Permutation },
    /// Inflate a skeleton by one block per entry.
    Inflate {
        skeleton: Permutation,
        #[arg(required = true)]
        blocks: Vec<Permutation>,
    },
    /// Inversion graph as DOT (adjacency with --json).
    Invgraph {
        perm: Permutation,
        /// Comma-separated label names, one per entry.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Class membership.
    Member {
        perm: Permutation,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Members of length N in lexicographic order.
    Enumerate {
        n: usize,
        #[arg(long)]
        basis: Option<String>,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Minimal permutations rejected by a named oracle.
    Basis {
        oracle: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Basis of the one-point extension class.
    PlusOneBasis {
        #[arg(long)]
        basis: Option<String>,
        /// Search only this far when the exact bound exceeds the guard.
        #[arg(long)]
        evidence_cap: Option<usize>,
    },
    /// Membership in the sum, skew, substitution or separable closure.
    ClosureMember {
        perm: Permutation,
        kind: ClosureKind,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Monotone grid class membership.
    GridMember { perm: Permutation },
    /// Geometric grid class membership.
    GeomMember { perm: Permutation },
    /// Grid class members of length N.
    GridEnum {
        n: usize,
        #[arg(long, default_value = "monotone")]
        kind: GridKind,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Cell graph of the matrix as DOT (adjacency with --json).
    Cellgraph,
    /// Members of an antichain family.
    Antichain {
        family: Family,
        k: usize,
        /// Check members 1..=K pairwise instead of printing member K.
        #[arg(long)]
        verify: bool,
    },
    /// Labeled containment; labeled permutations are written `3142:o,*,o,o`.
    LabeledContains { small: String, big: String },
    /// Run the property battery.
    #[command(alias = "suite")]
    PaperSuite {
        /// Restrict to these check ids or module names.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct CsvArgs {
    /// Print `length,count` as CSV.
    #[arg(long)]
    csv: bool,
    /// With --csv, append the members after a blank line.
    #[arg(long, requires = "csv")]
    members: bool,
}

impl CsvArgs {
    fn render(&self, n: usize, ps: &[Permutation]) -> String {
        if !self.csv {
            return lines(ps);
        }
        let mut out = format!("length,count\n{n},{}", ps.len());
        if self.members {
            out.push_str("\n\n");
            out.push_str(&lines(ps));
        }
        out
    }
}

/// Result of a command: a verdict for boolean verbs, text, and the JSON form.
struct Outcome {
    verdict: Option<bool>,
    text: String,
    json: Value,
}

impl Outcome {
    fn info(text: String, json: Value) -> Self {
        Outcome { verdict: None, text, json }
    }

    fn verdict(v: bool, text: String, json: Value) -> Self {
        Outcome { verdict: Some(v), text, json }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else if !out.text.is_empty() {
                println!("{}", out.text.trim_end());
            }
            match out.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::SizeGuard { .. }) => {
                    eprintln!("hint: pass --max-n to raise the guard");
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn limit(cli: &Cli, default: usize) -> usize {
    match cli.max_n {
        Some(n) => {
            if n > default {
                eprintln!("warning: size guard raised from {default} to {n}; this may be slow");
            }
            n
        }
        None => default,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn class_arg(cli: &Cli, basis: &Option<String>) -> anyhow::Result<PermClass> {
    match (basis, &cli.class) {
        (Some(b), _) => Ok(b.parse()?),
        (None, Some(path)) => read_json(path),
        (None, None) => bail!("a class is required: pass --basis or --class"),
    }
}

fn matrix_arg(cli: &Cli) -> anyhow::Result<Matrix> {
    let spec = cli.matrix.as_deref().ok_or_else(|| anyhow!("--matrix is required"))?;
    if Path::new(spec).is_file() {
        return read_json(Path::new(spec));
    }
    if spec == "X" {
        return Ok(Matrix::x());
    }
    let rows = spec
        .split('/')
        .map(|r| {
            r.split_whitespace()
                .map(|t| t.parse::<i8>().with_context(|| format!("matrix entry {t:?}")))
                .collect::<anyhow::Result<Vec<i8>>>()
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Matrix::from_rows_top_first(&rows)?)
}

fn poset_arg(cli: &Cli) -> anyhow::Result<FinitePoset> {
    match &cli.poset {
        Some(path) => Ok(FinitePoset::from_spec(&read_json::<PosetSpec>(path)?)?),
        None => Ok(FinitePoset::two_antichain()),
    }
}

fn parse_labels(s: &str, poset: &FinitePoset) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .map(|name| {
            poset
                .index_of(name)
                .ok_or_else(|| anyhow!("{name:?} is not a label of the poset"))
        })
        .collect()
}

fn parse_labeled(s: &str, poset: &FinitePoset) -> anyhow::Result<LabeledPermutation> {
    if s.trim_start().starts_with('{') {
        let spec: LabeledPermutationSpec = serde_json::from_str(s).context("labeled permutation JSON")?;
        return Ok(LabeledPermutation::from_spec(&spec, poset)?);
    }
    let (p, l) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("expected PERM:LABEL,LABEL,... in {s:?}"))?;
    let perm: Permutation = p.parse()?;
    let labels = if perm.is_empty() { Vec::new() } else { parse_labels(l, poset)? };
    Ok(LabeledPermutation::new(perm, labels)?)
}

fn write_dot(cli: &Cli, dot: &str) -> anyhow::Result<()> {
    if let Some(path) = &cli.dot {
        fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn perm_json(p: &Permutation) -> Value {
    json!(p.values())
}

fn list_json(ps: &[Permutation]) -> Value {
    Value::Array(ps.iter().map(perm_json).collect())
}

fn lines(ps: &[Permutation]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n")
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    Ok(match &cli.command {
        Command::Contains { pattern, text } => {
            let w = text.find_occurrence(pattern);
            let msg = match &w {
                Some(w) => format!("contains at positions {}", join(w)),
                None => format!("{text} avoids {pattern}"),
            };
            Outcome::verdict(w.is_some(), msg, json!({"contains": w.is_some(), "witness": w}))
        }
        Command::Reduce { values } => {
            let seq = values
                .iter()
                .flat_map(|v| v.split(','))
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<i64>().with_context(|| format!("not an integer: {t:?}")))
                .collect::<anyhow::Result<Vec<i64>>>()?;
            let p = reduce(&seq)?;
            Outcome::info(p.to_string(), json!({"reduced": perm_json(&p)}))
        }
        Command::Symmetry { perm, which } => {
            let image = match which.as_str() {
                "reverse" => perm.reverse(),
                "complement" => perm.complement(),
                other => perm.apply(other.parse::<Symmetry>()?),
            };
            Outcome::info(image.to_string(), json!({"image": perm_json(&image)}))
        }
        Command::Decompose { perm } => {
            let t = SubstitutionTree::decompose(perm)?;
            Outcome::info(t.to_string(), json!({"tree": t.to_string(), "leaves": t.leaf_count()}))
        }
        Command::Intervals { perm } => {
            let iv = perm.intervals();
            let text = iv.iter().map(|(a, b)| format!("{a}..{b}")).collect::<Vec<_>>().join("\n");
            Outcome::info(text, json!({"intervals": iv}))
        }
        Command::Simple { perm } => {
            let s = perm.is_simple();
            Outcome::verdict(s, (if s { "simple" } else { "not simple" }).to_string(), json!({"simple": s}))
        }
        Command::Inflate { skeleton, blocks } => {
            let p = skeleton.inflate(blocks)?;
            Outcome::info(p.to_string(), json!({"inflation": perm_json(&p)}))
        }
        Command::Invgraph { perm, labels } => {
            let (graph, poset) = match labels {
                Some(l) => {
                    let poset = poset_arg(cli)?;
                    let lp = LabeledPermutation::new(perm.clone(), parse_labels(l, &poset)?)?;
                    (labeled_inversion_graph(&lp), Some(poset))
                }
                None => (inversion_graph(perm), None),
            };
            let dot = graph.to_dot("G", poset.as_ref());
            write_dot(cli, &dot)?;
            let adj = serde_json::to_value(graph.to_adjacency(poset.as_ref()))?;
            let class = serde_json::to_value(graph.classify())?;
            Outcome::info(dot, json!({"graph": adj, "classification": class}))
        }
        Command::Member { perm, basis } => {
            let c = class_arg(cli, basis)?;
            let m = c.member(perm);
            let msg = format!("{perm} {} {c}", if m { "is in" } else { "is not in" });
            Outcome::verdict(m, msg, json!({"member": m, "class": c.to_string()}))
        }
        Command::Enumerate { n, basis, csv } => {
            let c = class_arg(cli, basis)?;
            let ps = c.enumerate(*n, limit(cli, ENUMERATE_LIMIT))?;
            Outcome::info(csv.render(*n, &ps), json!({"class": c.to_string(), "n": n, "count": ps.len(), "members": list_json(&ps)}))
        }
        Command::Basis { oracle, nmax } => {
            let f = classes::named_oracle(oracle)?;
            let b = classes::minimal_nonmembers(f, *nmax, limit(cli, BASIS_SEARCH_LIMIT))?;
            Outcome::info(lines(&b), json!({"oracle": oracle, "searched_to": nmax, "basis": list_json(&b)}))
        }
        Command::PlusOneBasis { basis, evidence_cap } => {
            let c = class_arg(cli, basis)?;
            let r = classes::plus_one_basis(&c, *evidence_cap, limit(cli, BASIS_SEARCH_LIMIT))?;
            let mut text = lines(r.basis.basis());
            if !r.exact {
                text.push_str(&format!("\n(partial: searched to {} of bound {})", r.searched_to, r.bound));
            }
            Outcome::info(
                text,
                json!({
                    "basis": list_json(r.basis.basis()),
                    "searched_to": r.searched_to,
                    "bound": r.bound,
                    "exact": r.exact,
                }),
            )
        }
        Command::ClosureMember { perm, kind, basis } => {
            let c = class_arg(cli, basis)?;
            let m = classes::closure_member(perm, &c, *kind);
            Outcome::verdict(m, format!("{m}"), json!({"member": m, "kind": kind, "class": c.to_string()}))
        }
        Command::GridMember { perm } => {
            let m = matrix_arg(cli)?;
            let g = grids::grid_member(perm, &m, limit(cli, GRID_MEMBER_LIMIT))?;
            let text = match &g {
                Some(g) => format!("gridding {}", cells(&g.cells)),
                None => format!("{perm} is not in Grid({m})"),
            };
            Outcome::verdict(g.is_some(), text, json!({"member": g.is_some(), "gridding": g}))
        }
        Command::GeomMember { perm } => {
            let m = matrix_arg(cli)?;
            let w = grids::geom_member(perm, &m, limit(cli, GEOM_MEMBER_LIMIT))?;
            let (text, js) = match &w {
                Some(w) => (
                    format!("gridding {}\nparameters {}", cells(&w.gridded.cells), w.param_strings().join(" ")),
                    json!({"member": true, "gridding": w.gridded, "parameters": w.param_strings()}),
                ),
                None => (format!("{perm} is not in Geom({m})"), json!({"member": false})),
            };
            Outcome::verdict(w.is_some(), text, js)
        }
        Command::GridEnum { n, kind, csv } => {
            let m = matrix_arg(cli)?;
            let ps = grids::enumerate_grid(&m, *n, *kind, limit(cli, GRID_ENUM_LIMIT))?;
            Outcome::info(csv.render(*n, &ps), json!({"matrix": m, "n": n, "count": ps.len(), "members": list_json(&ps)}))
        }
        Command::Cellgraph => {
            let m = matrix_arg(cli)?;
            let (g, cs) = grids::cell_graph(&m);
            let dot = g.to_dot("cells", None);
            write_dot(cli, &dot)?;
            let forest = g.is_forest();
            Outcome::info(
                format!("{dot}// forest: {forest}"),
                json!({"cells": cs, "graph": serde_json::to_value(g.to_adjacency(None))?, "forest": forest}),
            )
        }
        Command::Antichain { family, k, verify } => antichain(cli, *family, *k, *verify)?,
        Command::LabeledContains { small, big } => {
            let poset = poset_arg(cli)?;
            let (a, b) = (parse_labeled(small, &poset)?, parse_labeled(big, &poset)?);
            let w = labeled_contains(&a, &b, &poset)?;
            let msg = match &w {
                Some(w) => format!("contains at positions {}", join(w)),
                None => "no labeled occurrence".to_string(),
            };
            Outcome::verdict(w.is_some(), msg, json!({"contains": w.is_some(), "witness": w}))
        }
        Command::PaperSuite { only, samples } => {
            let cfg = SuiteConfig { seed: cli.seed, samples: *samples };
            let reports = run_suite(&cfg, only);
            if reports.is_empty() {
                bail!("no check matches {only:?}");
            }
            let all = reports.iter().all(|r| r.passed);
            let text = reports
                .iter()
                .map(|r| {
                    format!(
                        "{} {:<14} {:>7}ms  {}: {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.id,
                        r.millis,
                        r.description,
                        r.detail
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let failed = reports.iter().filter(|r| !r.passed).count();
            let text = format!("{text}\n{} checks, {failed} failed", reports.len());
            Outcome::verdict(all, text, json!({"seed": cli.seed, "passed": all, "checks": reports}))
        }
    })
}

fn antichain(cli: &Cli, family: Family, k: usize, verify: bool) -> anyhow::Result<Outcome> {
    let labeled = family == Family::LabeledPath;
    let two = FinitePoset::two_antichain();
    if verify {
        let pair = if labeled {
            let ms = (1..=k).map(antichains::labeled_antichain_member).collect::<permpat::Result<Vec<_>>>()?;
            antichains::verify_antichain(&ms, |a, b| {
                labeled_contains(a, b, &two).map(|w| w.is_some()).unwrap_or(false)
            })
        } else {
            let ms = (1..=k).map(|i| antichains::antichain_member(family, i)).collect::<permpat::Result<Vec<_>>>()?;
            antichains::verify_antichain(&ms, |a, b| b.contains(a))
        };
        let text = match pair {
            None => format!("{family} members 1..={k} are pairwise incomparable"),
            Some((i, j)) => format!("{family} members {i} and {j} are comparable"),
        };
        return Ok(Outcome::verdict(pair.is_none(), text, json!({"family": family, "k": k, "antichain": pair.is_none(), "comparable": pair})));
    }
    let (text, graph, js) = if labeled {
        let m = antichains::labeled_antichain_member(k)?;
        let g = labeled_inversion_graph(&m);
        let labels: Vec<&str> = m.labels.iter().map(|&l| two.name(l)).collect();
        let text = m.display(&two).to_string();
        (text, g, json!({"perm": perm_json(&m.perm), "labels": labels}))
    } else {
        let m = antichains::antichain_member(family, k)?;
        let anchors = antichains::anchor_positions(family, k)?;
        (m.to_string(), inversion_graph(&m), json!({"perm": perm_json(&m), "anchors": anchors}))
    };
    write_dot(cli, &graph.to_dot("G", labeled.then_some(&two)))?;
    let mut js = js;
    js["family"] = json!(family);
    js["k"] = json!(k);
    Ok(Outcome::info(text, js))
}

fn join(w: &[usize]) -> String {
    w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn cells(cs: &[(usize, usize)]) -> String {
    cs.iter().map(|(k, l)| format!("({k},{l})")).collect::<Vec<_>>().join(" ")
}
