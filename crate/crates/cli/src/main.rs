mod cache;
mod failure;
mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use mipkit::algebra::{
    iso_search, GroupAlgebra, IsoSearchOutcome, ISO_SEARCH_MAX_GENS, ISO_SEARCH_MAX_ORDER,
};
use mipkit::canonical::{compare_fingerprints, Comparison};
use mipkit::catalog::builtin_catalog;
use mipkit::decomposition::{ab_nab_split, lemma41_checks};
use rayon::prelude::*;
use serde_json::{json, Value};

use cache::Cache;
use failure::Failure;
use input::{resolve, Input};

/// Largest catalog depth accepted; depth 4 has too many joins to enumerate.
const MAX_DEPTH: usize = 3;

#[derive(Parser)]
#[command(
    name = "mipkit",
    version,
    about = "Modular group algebra invariants of small p-groups"
)]
struct Cli {
    /// Add wall-clock timings to the report
    #[arg(long, global = true)]
    timing: bool,
    /// Neither read nor write the fingerprint cache
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fingerprint one or more groups
    Analyze {
        /// catalog name, @file.pcp or @file.mul
        #[arg(required = true)]
        groups: Vec<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        tmax: Option<u32>,
    },
    /// First fingerprint entry telling two groups apart
    Compare {
        left: String,
        right: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        tmax: Option<u32>,
    },
    /// Split off the maximal abelian direct factor
    Decompose {
        group: String,
        /// Include the per-step peeling log
        #[arg(long)]
        peel_trace: bool,
    },
    /// Search for an augmentation-preserving isomorphism of group algebras
    IsoSearch { source: String, target: String },
    /// List the built-in groups
    Catalog {
        /// Write each presentation to DIR/<name>.pcp
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
    /// Check every catalog entry against its expected facts
    Selftest,
}

fn check_depth(depth: usize) -> Result<(), Failure> {
    if depth == 0 {
        return Err(Failure::parse("--depth must be at least 1"));
    }
    if depth > MAX_DEPTH {
        return Err(Failure::cap(format!(
            "--depth {depth} exceeds the cap {MAX_DEPTH}"
        )));
    }
    Ok(())
}

fn resolve_all(args: &[String]) -> Result<Vec<Input>, Failure> {
    args.par_iter()
        .map(|a| resolve(a))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn analyze(
    cache: &Cache,
    groups: &[String],
    depth: usize,
    tmax: Option<u32>,
) -> Result<(Vec<Input>, Value), Failure> {
    check_depth(depth)?;
    let inputs = resolve_all(groups)?;
    let fps = inputs
        .par_iter()
        .map(|i| cache.fingerprint(&i.bytes, &i.group, depth, tmax))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let fps: Vec<Value> = fps.iter().map(to_value).collect();
    Ok((inputs, json!({ "fingerprints": fps })))
}

fn compare(
    cache: &Cache,
    left: &str,
    right: &str,
    depth: usize,
    tmax: Option<u32>,
) -> Result<(Vec<Input>, Value), Failure> {
    check_depth(depth)?;
    let inputs = resolve_all(&[left.to_string(), right.to_string()])?;
    let (g, h) = (&inputs[0], &inputs[1]);
    if g.group.p() != h.group.p() {
        return Err(Failure::parse(format!(
            "cannot compare groups over different primes {} and {}",
            g.group.p(),
            h.group.p()
        )));
    }
    let (fg, fh) = rayon::join(
        || cache.fingerprint(&g.bytes, &g.group, depth, tmax),
        || cache.fingerprint(&h.bytes, &h.group, depth, tmax),
    );
    let verdict = compare_fingerprints(&fg?, &fh?);
    let radical_dims = [
        GroupAlgebra::new(&g.group).radical_powers().dims(),
        GroupAlgebra::new(&h.group).radical_powers().dims(),
    ];
    let result = to_value(&Comparison {
        radical_dims,
        verdict,
    });
    Ok((inputs, result))
}

fn decompose(group: &str, peel_trace: bool) -> Result<(Vec<Input>, Value), Failure> {
    let input = resolve(group)?;
    let g = &input.group;
    let dec = ab_nab_split(g)?;
    let checks = lemma41_checks(g, &dec)?;
    if !dec.certificate.holds() || !checks.iter().all(|c| c.all()) {
        return Err(Failure::internal(format!(
            "{group}: the decomposition does not verify"
        )));
    }
    let mut result = to_value(&dec);
    if !peel_trace {
        result.as_object_mut().expect("object").remove("peel_trace");
    }
    result["component_checks"] = to_value(&checks);
    Ok((vec![input], result))
}

fn iso(source: &str, target: &str) -> Result<(Vec<Input>, Value), Failure> {
    let inputs = resolve_all(&[source.to_string(), target.to_string()])?;
    let (g, h) = (&inputs[0], &inputs[1]);
    if g.group.p() != h.group.p() {
        return Err(Failure::parse(
            "the groups are defined over different primes",
        ));
    }
    for i in [g, h] {
        if i.group.order() > ISO_SEARCH_MAX_ORDER {
            return Err(Failure::cap(format!(
                "{}: order {} exceeds the search cap {ISO_SEARCH_MAX_ORDER}",
                i.arg,
                i.group.order()
            )));
        }
    }
    let Some(pc) = &g.presentation else {
        return Err(Failure::cap(format!(
            "{}: the source needs a power-commutator presentation",
            g.arg
        )));
    };
    if pc.num_gens() > ISO_SEARCH_MAX_GENS {
        return Err(Failure::cap(format!(
            "{}: {} presentation generators exceed the search cap {ISO_SEARCH_MAX_GENS}",
            g.arg,
            pc.num_gens()
        )));
    }
    let outcome = iso_search(&g.group, &h.group)?;
    let mut result = to_value(&outcome);
    if let IsoSearchOutcome::Found { iso, .. } = &outcome {
        if !iso.verify(&GroupAlgebra::new(&g.group), &GroupAlgebra::new(&h.group)) {
            return Err(Failure::internal("the isomorphism found does not verify"));
        }
        result["matrix"] = to_value(&iso.matrix().rows_vec());
    }
    Ok((inputs, result))
}

fn catalog(export: Option<&PathBuf>) -> Result<(Vec<Input>, Value), Failure> {
    if let Some(dir) = export {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::parse(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut entries = Vec::new();
    for e in builtin_catalog() {
        let text = e.presentation.to_text();
        if let Some(dir) = export {
            let path = dir.join(format!("{}.pcp", e.name));
            fs::write(&path, &text)
                .map_err(|err| Failure::parse(format!("cannot write {}: {err}", path.display())))?;
        }
        entries.push(json!({
            "expected": e.expected,
            "name": e.name,
            "order": e.presentation.group_order(),
            "p": e.presentation.p(),
            "presentation": text,
        }));
    }
    Ok((Vec::new(), json!({ "entries": entries })))
}

fn selftest() -> Result<(Vec<Input>, Value), Failure> {
    let entries: Vec<Value> = builtin_catalog()
        .par_iter()
        .map(|e| match e.check() {
            Ok(failed) => json!({ "failed": failed, "name": e.name }),
            Err(err) => json!({ "failed": [err.to_string()], "name": e.name }),
        })
        .collect();
    let mut passed = entries
        .iter()
        .all(|e| e["failed"].as_array().is_some_and(Vec::is_empty));

    let mut examples = Vec::new();
    let mut example = |what: &str, ok: bool| {
        passed &= ok;
        examples.push(json!({ "check": what, "ok": ok }));
    };
    let d8 = resolve("D8")?.group;
    example("D8 has center of order 2", d8.center().order() == 2);
    let h = resolve("Heis27")?.group;
    example(
        "Heis27 has |G'| = |Z| = 3 and exponent 3",
        h.derived_subgroup().order() == 3 && h.center().order() == 3 && h.exponent() == 3,
    );
    let v = resolve("C4xC2")?.group;
    example(
        "C4xC2 has abelian type [4, 2]",
        v.abelian_type().is_ok_and(|t| t.orders() == [4, 2]),
    );

    let result = json!({ "entries": entries, "examples": examples, "passed": passed });
    if !passed {
        return Err(Failure::internal(format!("selftest failed: {result}")));
    }
    Ok((Vec::new(), result))
}

fn emit(v: &Value) {
    let mut out = std::io::stdout().lock();
    let text = serde_json::to_string_pretty(v).expect("reports serialize");
    // a closed pipe is not worth a panic
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            emit(&Failure::parse(e.render().to_string().trim_end()).to_json());
            return ExitCode::from(2);
        }
    };
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::from_env()
    };
    let start = Instant::now();
    let (name, outcome) = match &cli.command {
        Command::Analyze {
            groups,
            depth,
            tmax,
        } => ("analyze", analyze(&cache, groups, *depth, *tmax)),
        Command::Compare {
            left,
            right,
            depth,
            tmax,
        } => ("compare", compare(&cache, left, right, *depth, *tmax)),
        Command::Decompose { group, peel_trace } => ("decompose", decompose(group, *peel_trace)),
        Command::IsoSearch { source, target } => ("iso-search", iso(source, target)),
        Command::Catalog { export } => ("catalog", catalog(export.as_ref())),
        Command::Selftest => ("selftest", selftest()),
    };
    match outcome {
        Ok((inputs, result)) => {
            let mut report = json!({
                "args": &argv[1..],
                "command": name,
                "inputs": inputs.iter().map(Input::info).collect::<Vec<_>>(),
                "result": result,
                "version": mipkit::VERSION,
            });
            if cli.timing {
                report["timing"] = json!({ "total_ms": start.elapsed().as_secs_f64() * 1e3 });
            }
            emit(&report);
            ExitCode::SUCCESS
        }
        Err(f) => {
            emit(&f.to_json());
            ExitCode::from(f.exit_code())
        }
    }
}
