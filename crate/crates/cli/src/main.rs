use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use permcount_core::arith::format_rational;
use permcount_core::families::{Family, FamilyVector};
use permcount_core::matrix::{build_matrix, export_triplets, BuildMethod, SymSparseMatrix};
use permcount_core::spectral::{check_eigenvector, family_basis, full_spectrum_report, ReportOptions, SpectrumReport};
use permcount_core::vector::export_vector;

#[derive(Parser, Debug)]
#[command(name = "permcount", version, about = "Build and verify the permutation-count matrix B")]
struct Cli {
    /// Directory for written files.
    #[arg(long, global = true, env = "PERMCOUNT_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build B and write it as a triplet file.
    Build(BuildArgs),
    /// Generate and verify eigenvector bases.
    Eigvecs(EigvecsArgs),
    /// Run the full exact spectrum verification.
    Report(ReportArgs),
    /// Write the matrix, every family basis and the report for one n.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Method {
    ClosedForm,
    BruteForce,
    Both,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "closed_form")]
    method: Method,
    /// Output file (default `<out-dir>/matrix_n<N>.txt`).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EigvecsArgs {
    #[arg(long)]
    n: usize,
    /// Families to generate, e.g. `--family 1,3`.
    #[arg(long, value_delimiter = ',', default_values_t = [1u8, 2, 3, 4])]
    family: Vec<u8>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// A single size or an inclusive range such as `4..5`.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Run kernel eliminations above the default size budget.
    #[arg(long)]
    force: bool,
    /// Include per-stage wall-clock times.
    #[arg(long)]
    timing: bool,
    /// Also write the report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    force: bool,
}

fn parse_range(text: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let bad = |e: std::num::ParseIntError| format!("{text}: {e}");
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (a.parse().map_err(bad)?, b.parse().map_err(bad)?)
        }
        None => {
            let v = text.parse().map_err(bad)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {text}"));
    }
    Ok(lo..=hi)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_build(args: &BuildArgs, out_dir: &Path) -> Result<bool> {
    let n = args.n;
    let (matrix, ok) = match args.method {
        Method::ClosedForm => (build_matrix(n, BuildMethod::ClosedForm)?, true),
        Method::BruteForce => (build_matrix(n, BuildMethod::BruteForce)?, true),
        Method::Both => {
            let brute = build_matrix(n, BuildMethod::BruteForce)?;
            let closed = build_matrix(n, BuildMethod::ClosedForm)?;
            let same = brute == closed;
            println!("n={n} equivalence {}", status(same));
            (closed, same)
        }
    };
    let path = args
        .output
        .clone()
        .unwrap_or_else(|| out_dir.join(format!("matrix_n{n}.txt")));
    write_file(&path, &export_triplets(&matrix))?;
    println!("n={n} dim={} nnz={} -> {}", matrix.dim(), matrix.nnz(), path.display());
    Ok(ok)
}

fn vector_file(out_dir: &Path, n: usize, fv: &FamilyVector, k: usize) -> PathBuf {
    out_dir.join(format!("eigvec_n{n}_f{}_{k:03}.txt", fv.family.number()))
}

/// Writes one family's basis, verifying each vector; returns whether all passed.
fn emit_family(b: &SymSparseMatrix, family: Family, out_dir: &Path) -> Result<bool> {
    let n = b.n();
    let lambda = family.eigenvalue(n);
    let (basis, _, fallback) = family_basis(b, family)?;
    if let Some(reason) = fallback {
        eprintln!("warning: family 3 recipe rejected ({reason}); using the exact kernel basis");
    }
    let mut all = basis.len() == family.multiplicity(n);
    for (k, fv) in basis.iter().enumerate() {
        let ok = check_eigenvector(b, &fv.vector, &lambda)?;
        all &= ok;
        let path = vector_file(out_dir, n, fv, k);
        write_file(&path, &export_vector(&fv.header(n), &fv.vector))?;
        println!(
            "family={} {} lambda={} {} -> {}",
            family.number(),
            if fv.params.is_empty() { "-" } else { &fv.params },
            format_rational(&lambda),
            if ok { "verified" } else { "FAILED" },
            path.display()
        );
    }
    println!(
        "family={} vectors={} expected={} {}",
        family.number(),
        basis.len(),
        family.multiplicity(n),
        status(all)
    );
    Ok(all)
}

fn cmd_eigvecs(args: &EigvecsArgs, out_dir: &Path) -> Result<bool> {
    let mut families = Vec::new();
    for &k in &args.family {
        let Some(f) = Family::from_number(k) else {
            bail!("unknown family {k}; expected 1, 2, 3 or 4");
        };
        if !families.contains(&f) {
            families.push(f);
        }
    }
    families.sort();
    let b = build_matrix(args.n, BuildMethod::ClosedForm)?;
    let mut ok = true;
    for f in families {
        ok &= emit_family(&b, f, out_dir)?;
    }
    Ok(ok)
}

fn render_text(r: &SpectrumReport) -> String {
    let opt = |v: Option<usize>| v.map_or_else(|| "skipped".to_string(), |x| x.to_string());
    let mut s = format!("n={} dim={} supported={}\n", r.n, r.dim, r.supported);
    for e in &r.eigenvalues {
        s += &format!(
            "  family {} lambda={} claimed={} kernel={} vectors={} rank={} verified={}",
            e.family,
            e.lambda,
            e.claimed_multiplicity,
            opt(e.kernel_multiplicity),
            e.family_vectors,
            e.family_rank,
            status(e.family_verified)
        );
        if let Some(path) = e.family3_path {
            s += &format!(" path={path:?}").to_lowercase();
        }
        s.push('\n');
    }
    s += &format!("  rank={} nullity={}\n", opt(r.rank), opt(r.nullity));
    s += &format!("  trace {} = {} {}\n", r.trace.computed, r.trace.claimed, status(r.trace.pass));
    s += &format!(
        "  frobenius {} = {} {}\n",
        r.frobenius.computed,
        r.frobenius.claimed,
        status(r.frobenius.pass)
    );
    s += &format!("  orthogonal {}\n", status(r.orthogonal));
    if let Some(m) = r.multiplicities_match {
        s += &format!("  multiplicities {}\n", status(m));
    }
    if let Some(a) = r.rank_accounted {
        s += &format!("  rank accounted {}\n", status(a));
    }
    s += &format!("  psd={}{}\n", r.psd, if r.partial { " (partial)" } else { "" });
    for note in &r.notes {
        s += &format!("  note: {note}\n");
    }
    if let Some(t) = &r.timing {
        for st in t {
            s += &format!("  time {}: {:.3}s\n", st.stage, st.seconds);
        }
    }
    s += &format!("  overall {}\n", status(r.passed));
    s
}

fn cmd_report(args: &ReportArgs) -> Result<bool> {
    let options = ReportOptions {
        force: args.force,
        timing: args.timing,
    };
    let reports = args
        .n
        .clone()
        .map(|n| full_spectrum_report(n, &options))
        .collect::<permcount_core::Result<Vec<_>>>()?;
    let text = if args.json {
        serde_json::to_string_pretty(&reports)? + "\n"
    } else {
        reports.iter().map(render_text).collect()
    };
    print!("{text}");
    if let Some(path) = &args.output {
        write_file(path, &text)?;
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn cmd_export(args: &ExportArgs, out_dir: &Path) -> Result<bool> {
    let n = args.n;
    let dir = out_dir.join(format!("n{n}"));
    let b = build_matrix(n, BuildMethod::ClosedForm)?;
    write_file(&dir.join("matrix.txt"), &export_triplets(&b))?;
    let mut ok = true;
    for f in Family::ALL {
        ok &= emit_family(&b, f, &dir)?;
    }
    let report = full_spectrum_report(
        n,
        &ReportOptions {
            force: args.force,
            timing: false,
        },
    )?;
    write_file(&dir.join("report.json"), &(serde_json::to_string_pretty(&report)? + "\n"))?;
    println!("report {} -> {}", status(report.passed), dir.join("report.json").display());
    Ok(ok && report.passed)
}

fn run(cli: &Cli) -> Result<bool> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Build(a) => cmd_build(a, &cli.out_dir),
        Command::Eigvecs(a) => cmd_eigvecs(a, &cli.out_dir),
        Command::Report(a) => cmd_report(a),
        Command::Export(a) => cmd_export(a, &cli.out_dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4"), Ok(4..=4));
        assert_eq!(parse_range("4..6"), Ok(4..=6));
        assert_eq!(parse_range("4..=6"), Ok(4..=6));
        assert!(parse_range("6..4").is_err());
        assert!(parse_range("x..4").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
