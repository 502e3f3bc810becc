// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bcolor_core::exact::count_budgeted_covers;
use bcolor_core::generators::{
    gen_3partition_cocluster, gen_biclique_bipartite_ecp, gen_clique_vc, gen_coloring_to_ecp,
    gen_domset_split, gen_random, Neighborhood,
};
use bcolor_core::recognize::minimum_deletion_set;
use bcolor_core::{ecp_to_bcp, verify_bcp, BcpInstance, ClassTag, DeletionKind, Graph, SolveResult};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dispatch::{solve, Algorithm, DEFAULT_PARAM_BUDGET};
use crate::error::CliError;
use crate::format::{describe, emit_instance, emit_solution, parse_instance, parse_solution};

#[derive(Debug, Parser)]
#[command(name = "bcolor", version, about = "Budgeted graph coloring solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide an instance and print a solution.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        /// Largest deletion set the parameterized solvers may use.
        #[arg(long, default_value_t = DEFAULT_PARAM_BUDGET)]
        param_budget: usize,
    },
    /// Check a solution against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Write a generated instance.
    Generate(Box<GenerateArgs>),
    /// Print the number of ordered budgeted covers.
    Count { instance: PathBuf },
    /// Time solvers on every instance file in a directory.
    Bench {
        corpus: PathBuf,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        #[arg(long, default_value_t = DEFAULT_PARAM_BUDGET)]
        param_budget: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "3partition")]
    ThreePartition,
    DomsetSplit,
    Biclique,
    CliqueVc,
    ColoringEcp,
    Random,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: Family,
    /// Source graph vertex count (side size for biclique).
    #[arg(long)]
    pub n: Option<usize>,
    /// Source graph edges, 1-indexed, as `1-2,2-3`.
    #[arg(long, default_value = "")]
    pub edges: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Integers for 3partition, as `1,1,1`.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub w: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    /// Vertex cover for clique-vc, 1-indexed; a minimum one by default.
    #[arg(long)]
    pub cover: Option<String>,
    #[arg(long, default_value = "literal")]
    pub neighborhood: String,
    #[arg(long)]
    pub class: Option<String>,
    /// Budget range for random instances, as `LO-HI`.
    #[arg(long, default_value = "1-3")]
    pub budgets: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load_instance(path: &Path) -> Result<BcpInstance, CliError> {
    parse_instance(&read(path)?)
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this family")))
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--{flag}: `{s}` is not a non-negative integer")))
        })
        .collect()
}

fn one_indexed(values: Vec<usize>, n: usize, flag: &str) -> Result<Vec<usize>, CliError> {
    values
        .into_iter()
        .map(|v| {
            if v == 0 || v > n {
                Err(CliError::Usage(format!("--{flag}: vertex {v} out of range 1..={n}")))
            } else {
                Ok(v - 1)
            }
        })
        .collect()
}

/// `1-2,2-3` on `n` vertices.
pub fn parse_edges(text: &str, n: usize) -> Result<Graph, CliError> {
    let mut edges = Vec::new();
    for item in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (u, v) = item
            .trim()
            .split_once('-')
            .ok_or_else(|| CliError::Usage(format!("--edges: `{item}` is not of the form u-v")))?;
        let ends = one_indexed(parse_list(&format!("{u},{v}"), "edges")?, n, "edges")?;
        edges.push((ends[0], ends[1]));
    }
    Ok(Graph::new(n, edges)?)
}

fn budget_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("--budgets: `{text}` is not of the form LO-HI"));
    let (lo, hi) = text.split_once('-').ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

pub fn generate(args: &GenerateArgs) -> Result<BcpInstance, CliError> {
    let source = || -> Result<Graph, CliError> { parse_edges(&args.edges, need(args.n, "n")?) };
    let inst = match args.family {
        Family::ThreePartition => {
            let x = parse_list(&need(args.x.clone(), "x")?, "x")?;
            gen_3partition_cocluster(&x, need(args.w, "w")?)?
        }
        Family::DomsetSplit => {
            let mode = Neighborhood::from_name(&args.neighborhood).ok_or_else(|| {
                CliError::Usage("--neighborhood must be `literal` or `closed`".into())
            })?;
            gen_domset_split(&source()?, need(args.k, "k")?, mode)?
        }
        Family::Biclique => {
            let n = need(args.n, "n")?;
            let g = parse_edges(&args.edges, 2 * n)?;
            gen_biclique_bipartite_ecp(&g, need(args.k, "k")?)?.bcp
        }
        Family::CliqueVc => {
            let g = source()?;
            let cover = match &args.cover {
                Some(text) => one_indexed(parse_list(text, "cover")?, g.n(), "cover")?,
                None => minimum_deletion_set(&g, DeletionKind::VertexCover, g.n())
                    .expect("the whole vertex set is a cover")
                    .vertices,
            };
            gen_clique_vc(&g, &cover, need(args.l, "l")?)?.0
        }
        Family::ColoringEcp => {
            let (g, c) = gen_coloring_to_ecp(&source()?, need(args.c, "c")?)?;
            ecp_to_bcp(&g, c)?
        }
        Family::Random => {
            let name = need(args.class.clone(), "class")?;
            let class = ClassTag::from_name(&name)
                .ok_or_else(|| CliError::Usage(format!("--class: unknown class `{name}`")))?;
            gen_random(
                class,
                need(args.n, "n")?,
                need(args.c, "c")?,
                budget_range(&args.budgets)?,
                args.seed,
            )?
        }
    };
    Ok(inst)
}

/// Exit code 0 on YES, 1 on NO.
pub fn cmd_solve(path: &Path, algo: Algorithm, param_budget: usize) -> Result<u8, CliError> {
    let inst = load_instance(path)?;
    let outcome = solve(&inst, algo, param_budget)?;
    eprintln!("algorithm: {}", outcome.algorithm);
    if let SolveResult::Yes(col) = &outcome.result {
        if let Err(v) = verify_bcp(&inst, col) {
            panic!("solver {} produced an invalid coloring: {}", outcome.algorithm, describe(&v));
        }
    }
    print!("{}", emit_solution(&outcome.result));
    Ok(if outcome.result.is_yes() { 0 } else { 1 })
}

pub fn cmd_verify(instance: &Path, solution: &Path) -> Result<u8, CliError> {
    let inst = load_instance(instance)?;
    let sol = parse_solution(&read(solution)?, inst.n(), inst.colors())?;
    match sol {
        SolveResult::No => {
            println!("NO answer accepted without a certificate");
            Ok(0)
        }
        SolveResult::Yes(col) => match verify_bcp(&inst, &col) {
            Ok(()) => {
                println!("valid coloring");
                Ok(0)
            }
            Err(v) => {
                println!("invalid: {}", describe(&v));
                Ok(1)
            }
        },
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<u8, CliError> {
    let text = emit_instance(&generate(args)?);
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e))?,
        None => print!("{text}"),
    }
    Ok(0)
}

pub fn cmd_count(path: &Path) -> Result<u8, CliError> {
    let inst = load_instance(path)?;
    println!("{}", count_budgeted_covers(&inst)?);
    Ok(0)
}

/// One timing row of a benchmark run.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub c: usize,
    pub algorithm: String,
    pub answer: String,
    pub repeat: usize,
    pub seconds: f64,
    /// Best time of this instance over the best time of the previous one
    /// (instances ordered by vertex count).
    pub growth: Option<f64>,
}

pub fn bench(corpus: &Path, repeat: usize, algo: Algorithm, param_budget: usize) -> Result<Vec<BenchRow>, CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus)
        .map_err(|e| CliError::io(corpus, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let mut loaded = Vec::new();
    for path in files {
        match load_instance(&path) {
            Ok(inst) => loaded.push((path, inst)),
            Err(e) => eprintln!("warning: skipping {}: {e}", path.display()),
        }
    }
    loaded.sort_by_key(|(p, inst)| (inst.n(), p.clone()));

    let mut rows = Vec::new();
    let mut previous_best: Option<f64> = None;
    for (path, inst) in &loaded {
        let name = path.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        let mut timed = Vec::new();
        for r in 0..repeat {
            let start = Instant::now();
            let (algorithm, answer) = match solve(inst, algo, param_budget) {
                Ok(o) => (o.algorithm.to_string(), if o.result.is_yes() { "YES" } else { "NO" }),
                Err(CliError::Undecidable(_)) => (algo.name().to_string(), "UNDECIDED"),
                Err(e) => return Err(e),
            };
            timed.push((r + 1, algorithm, answer, start.elapsed().as_secs_f64()));
        }
        let best = timed.iter().map(|t| t.3).fold(f64::INFINITY, f64::min);
        let growth = previous_best.filter(|&p| p > 0.0).map(|p| best / p);
        if !timed.is_empty() {
            previous_best = Some(best);
        }
        for (r, algorithm, answer, seconds) in timed {
            rows.push(BenchRow {
                instance: name.clone(),
                n: inst.n(),
                c: inst.colors(),
                algorithm,
                answer: answer.to_string(),
                repeat: r,
                seconds,
                growth,
            });
        }
    }
    Ok(rows)
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("instance,n,c,algorithm,answer,repeat,wall_s,growth\n");
    for r in rows {
        let growth = r.growth.map_or_else(String::new, |g| format!("{g:.3}"));
        writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{}",
            r.instance, r.n, r.c, r.algorithm, r.answer, r.repeat, r.seconds, growth
        )
        .unwrap();
    }
    out
}

pub fn bench_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:<28} {:>4} {:>3} {:<14} {:<9} {:>3} {:>12} {:>8}\n",
        "instance", "n", "c", "algorithm", "answer", "rep", "wall (s)", "growth"
    );
    for r in rows {
        let growth = r.growth.map_or_else(|| "-".to_string(), |g| format!("{g:.2}"));
        writeln!(
            out,
            "{:<28} {:>4} {:>3} {:<14} {:<9} {:>3} {:>12.6} {:>8}",
            r.instance, r.n, r.c, r.algorithm, r.answer, r.repeat, r.seconds, growth
        )
        .unwrap();
    }
    out
}

pub fn cmd_bench(corpus: &Path, repeat: usize, algo: Algorithm, param_budget: usize) -> Result<u8, CliError> {
    let rows = bench(corpus, repeat, algo, param_budget)?;
    print!("{}", bench_csv(&rows));
    eprint!("{}", bench_table(&rows));
    Ok(0)
}

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Solve {
            instance,
            algorithm,
            param_budget,
        } => cmd_solve(instance, *algorithm, *param_budget),
        Command::Verify { instance, solution } => cmd_verify(instance, solution),
        Command::Generate(args) => cmd_generate(args),
        Command::Count { instance } => cmd_count(instance),
        Command::Bench {
            corpus,
            repeat,
            algorithm,
            param_budget,
        } => cmd_bench(corpus, *repeat, *algorithm, *param_budget),
    }
}
