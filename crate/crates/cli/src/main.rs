use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mulambda::cache::{load_or_enumerate, LatticeCache};
use mulambda::families::{self, FamilyKind};
use mulambda::{
    check_property, moebius_table, parse_spec, Error, DEFAULT_ELEMENT_CAP, DEFAULT_SUBGROUP_CAP,
};

mod render;

use render::{ClassJson, FamilyJson, GroupJson, SuiteRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "mulambda",
    version,
    about = "Subgroup-lattice and class-poset Möbius functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,

    /// Directory for cached lattices; caching is off when unset.
    #[arg(long, env = "MULAMBDA_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP, value_parser = positive, global = true)]
    element_cap: usize,

    #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP, value_parser = positive, global = true)]
    subgroup_cap: usize,

    /// Only report classes inside MaxInt(G).
    #[arg(long, global = true)]
    maxint_only: bool,

    /// Worker threads (default: available parallelism).
    #[arg(long, value_parser = positive, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice summary with μ and λ for every class.
    Analyze { spec: String },
    /// Check μ(H) = [N_G′(H) : G′∩H]·λ(H) at every class.
    Verify { spec: String },
    /// Closed-form rows for L2(q), Sz(q) or R(q).
    Family {
        #[arg(value_parser = ["l2", "sz", "ree"])]
        family: String,
        #[arg(long)]
        q: u64,
        /// Compare the rows with the brute-force lattice.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run `verify` over a corpus file of `spec [EXPECT pass|fail]` lines.
    Suite { file: PathBuf },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

struct Context {
    format: Format,
    cache: Option<LatticeCache>,
    element_cap: usize,
    subgroup_cap: usize,
    maxint_only: bool,
}

impl Context {
    fn group_report(&self, spec_text: &str) -> Result<GroupJson, Error> {
        let spec = parse_spec(spec_text)?;
        let l = load_or_enumerate(
            &spec,
            self.element_cap,
            self.subgroup_cap,
            self.cache.as_ref(),
        )?;
        let table = moebius_table(&l)?;
        let report = check_property(&l, &table, self.maxint_only)?;
        let mut classes: Vec<ClassJson> = report.classes.iter().map(ClassJson::from).collect();
        classes.sort_by_key(|c| (c.rep_order, c.class_size, c.class));
        Ok(GroupJson {
            spec: spec.to_string(),
            order: report.order,
            solvable: report.solvable,
            derived_order: report.derived_order,
            frattini_order: report.frattini_order,
            subgroup_count: report.subgroup_count,
            class_count: l.class_count(),
            classes,
            verdict: if report.verdict { "pass" } else { "fail" }.into(),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Context {
        format: cli.format,
        cache: cli.cache_dir.map(LatticeCache::new),
        element_cap: cli.element_cap,
        subgroup_cap: cli.subgroup_cap,
        maxint_only: cli.maxint_only,
    };
    let result = match &cli.command {
        Command::Analyze { spec } => analyze(&ctx, spec),
        Command::Verify { spec } => verify(&ctx, spec),
        Command::Family {
            family,
            q,
            cross_check,
        } => family_cmd(&ctx, family, *q, *cross_check),
        Command::Suite { file } => suite(&ctx, file),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn analyze(ctx: &Context, spec: &str) -> Result<u8, Error> {
    let report = ctx.group_report(spec)?;
    print!("{}", render::group(&report, ctx.format, false));
    Ok(0)
}

fn verify(ctx: &Context, spec: &str) -> Result<u8, Error> {
    let report = ctx.group_report(spec)?;
    print!("{}", render::group(&report, ctx.format, true));
    Ok(if report.verdict == "pass" { 0 } else { 1 })
}

fn family_cmd(ctx: &Context, family: &str, q: u64, cross_check: bool) -> Result<u8, Error> {
    let kind: FamilyKind = family.parse()?;
    let rows = families::rows(kind, q)?;
    let self_check = families::first_inconsistent_row(&rows).cloned();
    let cross = if cross_check {
        let spec_text = families::buildable_spec(kind, q).ok_or_else(|| {
            Error::ParameterOutOfRange(format!("no buildable group for {family} at q = {q}"))
        })?;
        let spec = parse_spec(&spec_text)?;
        let l = load_or_enumerate(&spec, ctx.element_cap, ctx.subgroup_cap, ctx.cache.as_ref())?;
        let table = moebius_table(&l)?;
        Some(families::cross_check_family(&l, &table, &rows))
    } else {
        None
    };
    let out = FamilyJson {
        family: family.to_string(),
        q,
        rows,
        self_check: self_check.is_none(),
        inconsistent_row: self_check,
        cross_check: cross,
    };
    print!("{}", render::family(&out, ctx.format));
    let ok = out.self_check && out.cross_check.as_ref().is_none_or(|c| c.matched);
    Ok(if ok { 0 } else { 1 })
}

/// Splits a corpus line into its spec and optional expectation.
fn parse_corpus_line(line: &str) -> Result<(String, Option<bool>), String> {
    let line = line.split('#').next().unwrap_or("").trim();
    match line.rfind("EXPECT") {
        None => Ok((line.to_string(), None)),
        Some(at) => {
            let spec = line[..at].trim().to_string();
            match line[at + "EXPECT".len()..].trim() {
                "pass" => Ok((spec, Some(true))),
                "fail" => Ok((spec, Some(false))),
                other => Err(format!("bad expectation `{other}`")),
            }
        }
    }
}

fn suite(ctx: &Context, file: &PathBuf) -> Result<u8, Error> {
    let text = std::fs::read_to_string(file)?;
    let mut rows = Vec::new();
    for line in text.lines() {
        let (spec, expect) = match parse_corpus_line(line) {
            Ok((spec, _)) if spec.is_empty() => continue,
            Ok(parsed) => parsed,
            Err(msg) => {
                rows.push(SuiteRow::error(line.trim(), msg));
                continue;
            }
        };
        rows.push(match ctx.group_report(&spec) {
            Ok(report) => SuiteRow::finished(&spec, &report, expect),
            Err(e) => SuiteRow::error(&spec, e.to_string()),
        });
    }
    print!("{}", render::suite(&rows, ctx.format));
    Ok(if rows.iter().any(|r| r.error.is_some()) {
        2
    } else if rows.iter().all(|r| r.met) {
        0
    } else {
        1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_lines() {
        assert_eq!(
            parse_corpus_line("u3:3 EXPECT fail").unwrap(),
            ("u3:3".into(), Some(false))
        );
        assert_eq!(
            parse_corpus_line("  sym:3  ").unwrap(),
            ("sym:3".into(), None)
        );
        assert_eq!(parse_corpus_line("# comment").unwrap(), ("".into(), None));
        assert_eq!(
            parse_corpus_line("perm:[(0 1 2);(1 2)(3 4 5 6)] EXPECT pass # C3:C4").unwrap(),
            ("perm:[(0 1 2);(1 2)(3 4 5 6)]".into(), Some(true))
        );
        assert!(parse_corpus_line("sym:3 EXPECT maybe").is_err());
    }

    #[test]
    fn cli_parses() {
        let cli = Cli::try_parse_from([
            "mulambda",
            "family",
            "l2",
            "--q",
            "8",
            "--cross-check",
            "--format",
            "json",
        ])
        .unwrap();
        assert_eq!(cli.format, Format::Json);
        assert!(
            Cli::try_parse_from(["mulambda", "verify", "sym:3", "--element-cap", "0"]).is_err()
        );
        assert!(Cli::try_parse_from(["mulambda", "family", "psu", "--q", "8"]).is_err());
    }
}
