use std::fmt::Write as _;
use std::fs;
use std::io::IsTerminal as _;
use std::path::{Path, PathBuf};

use bipartify::experiment::{records_to_csv, run_sweep_with_progress, summarize, summary_to_json};
use bipartify::generators::{ModelParams, ModelSpec, WS_K};
use bipartify::graph::to_f64;
use bipartify::{
    edge_scores, max_cut_exact, rng_from_seed, run_method, sample_instance, EdgeIndex, Graph, Method, Model, Side,
};
use serde_json::json;

use crate::args::{AnalyzeArgs, ExperimentArgs, Format, GenerateArgs, OracleArgs, ScoreArgs};
use crate::config::{parse_config, parse_list, resolve};
use crate::error::{CliError, Result};
use crate::svg::{render_svg, PlotKind};

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Graph::parse_edge_list(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `--out` when given, stdout otherwise.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

pub fn analyze(a: AnalyzeArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    let methods = parse_list::<Method>(&a.methods, &Method::ALL)?;
    let seed = resolve_seed(a.seed.seed);
    let results = methods
        .iter()
        .map(|&m| run_method(&g, m, a.restarts, bipartify::experiment::method_seed(seed, m)))
        .collect::<bipartify::Result<Vec<_>>>()?;
    let total = g.edge_count();
    let text = match a.format {
        Format::Text | Format::Svg => {
            let mut s = format!("n={} m={} seed={seed}\n", g.n(), total);
            let _ = writeln!(s, "{:<16} {:>8} {:>10} {:>9}", "method", "r_b", "r_b_float", "retained");
            for r in &results {
                let _ = writeln!(
                    s,
                    "{:<16} {:>8} {:>10.6} {:>9}",
                    r.method.name(),
                    r.r_b.to_string(),
                    r.r_b_f64(),
                    r.retained_edges
                );
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("method,r_b_num,r_b_den,r_b,retained,total,x_part\n");
            for r in &results {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.method.name(),
                    r.r_b.numer(),
                    r.r_b.denom(),
                    r.r_b_f64(),
                    r.retained_edges,
                    total,
                    join(&r.partition.part(Side::X), " ")
                );
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = results
                .iter()
                .map(|r| {
                    json!({
                        "method": r.method.name(),
                        "r_b": r.r_b.to_string(),
                        "r_b_float": r.r_b_f64(),
                        "retained": r.retained_edges,
                        "x": r.partition.part(Side::X),
                        "y": r.partition.part(Side::Y),
                        "removed": r.removed,
                    })
                })
                .collect();
            pretty(&json!({ "n": g.n(), "m": total, "seed": seed, "methods": rows }))
        }
    };
    emit(a.out.as_deref(), &text)
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain json value");
    s.push('\n');
    s
}

pub fn generate(a: GenerateArgs) -> Result<()> {
    let model: Model = a.model.parse()?;
    let seed = resolve_seed(a.seed.seed);
    let mut rng = rng_from_seed(seed);
    let explicit = match model {
        Model::ErdosRenyi => a.p.map(|p| ModelParams::Er { p }),
        Model::WattsStrogatz => a.psi.map(|psi| ModelParams::Ws {
            k: a.k.unwrap_or(WS_K),
            psi,
        }),
        Model::RandomGeometric => a.r.map(|r| ModelParams::Rg { r, norm: 2 }),
        Model::BarabasiAlbert => a.m.map(|m| ModelParams::Ba { m }),
    };
    let (g, spec) = match explicit {
        Some(params) => {
            let spec = ModelSpec { n: a.n, params };
            (spec.generate(&mut rng)?, spec)
        }
        None => sample_instance(model, a.n, &mut rng)?,
    };
    let comments = vec![format!("model={model} n={} {} seed={seed}", spec.n, spec.params)];
    emit(a.out.as_deref(), &g.to_edge_list(&comments))
}

pub fn experiment(a: ExperimentArgs) -> Result<()> {
    let file = match &a.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|source| CliError::Read {
                path: p.clone(),
                source,
            })?;
            Some(parse_config(&text)?)
        }
        None => None,
    };
    let mut r = resolve(a, file)?;
    if !r.seed_given {
        r.sweep.master_seed = resolve_seed(None);
    }
    let interactive = std::io::stderr().is_terminal();
    let progress = move |done: usize, total: usize| {
        if interactive && (done % 10 == 0 || done == total) {
            eprint!("\r{done}/{total} instances");
            if done == total {
                eprintln!();
            }
        }
    };
    let cfg = r.sweep.clone();
    let records = with_threads(r.threads, || run_sweep_with_progress(&cfg, &progress))??;
    fs::create_dir_all(&r.out).map_err(|source| CliError::Write {
        path: r.out.clone(),
        source,
    })?;
    let summary = summarize(&r.sweep, &records, r.bins)?;
    let mut written: Vec<PathBuf> = Vec::new();
    if r.outputs.csv {
        let p = r.out.join("records.csv");
        write_file(&p, &records_to_csv(&records))?;
        written.push(p);
    }
    if r.outputs.json {
        let p = r.out.join("summary.json");
        write_file(&p, &summary_to_json(&summary))?;
        written.push(p);
    }
    if r.outputs.svg {
        for m in &summary.models {
            for kind in PlotKind::ALL {
                let p = r.out.join(format!("{}_{}.svg", m.model, kind.name()));
                write_file(&p, &render_svg(&summary, &m.model, kind)?)?;
                written.push(p);
            }
        }
    }
    println!("{} records, seed {}", records.len(), r.sweep.master_seed);
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

pub fn oracle(a: OracleArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    let res = with_threads(a.threads, || max_cut_exact(&g))??;
    let (x, y) = (res.witness.part(Side::X), res.witness.part(Side::Y));
    let text = match a.format {
        Format::Json => pretty(&json!({
            "max_cut": res.max_cut,
            "edges": g.edge_count(),
            "r_b_opt": res.r_b_opt.to_string(),
            "r_b_opt_float": to_f64(res.r_b_opt),
            "x": x,
            "y": y,
        })),
        Format::Csv => format!(
            "max_cut,edges,r_b_opt,x,y\n{},{},{},{},{}\n",
            res.max_cut,
            g.edge_count(),
            res.r_b_opt,
            join(&x, " "),
            join(&y, " ")
        ),
        Format::Text | Format::Svg => format!(
            "max_cut={} r_b_opt={}\nX={{{}}} Y={{{}}}\n",
            res.max_cut,
            res.r_b_opt,
            join(&x, ","),
            join(&y, ",")
        ),
    };
    print!("{text}");
    Ok(())
}

pub fn score_edges(a: ScoreArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    let index: EdgeIndex = a.index.parse()?;
    let scores = edge_scores(&g, index)?;
    let text = match a.format {
        Format::Json => pretty(&json!(scores
            .iter()
            .map(|s| json!({ "u": s.edge.0, "v": s.edge.1, "score": s.value }))
            .collect::<Vec<_>>())),
        _ => {
            let mut s = format!("u,v,{index}\n");
            for e in &scores {
                let _ = writeln!(s, "{},{},{}", e.edge.0, e.edge.1, e.value);
            }
            s
        }
    };
    print!("{text}");
    Ok(())
}
