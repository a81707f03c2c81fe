use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gmfineq::error::{Error, Result};
use gmfineq::gmf::{gmf, gmf_naive, gmf_tensor_oracle, GmfSpec};
use gmfineq::inequality::{ConvexFn, Levels, SlackReport};
use gmfineq::linalg::{hermitian_eig, Field, RandomInstanceConfig};
use gmfineq::matrix::Matrix;
use gmfineq::permchar::{GroupCharacter, GroupCharacterJson};
use gmfineq::search::{self, InequalityId, RGrid, SearchConfig, SearchResult, SuiteParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gmfineq",
    version,
    about = "Generalized matrix functions and numerical checks of their PSD inequalities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an inequality on seeded random instances, writing one JSON
    /// report per line.
    Verify(RunArgs),
    /// Like `verify`, but write a single JSON object with the worst case
    /// and all violations.
    Search(RunArgs),
    /// Re-run a named example and check its claim.
    Reproduce {
        /// eg2_2, eg2_3, finite_diff or majorization_gap.
        example: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a generalized matrix function on a matrix JSON file.
    Gmf {
        /// det, per, cyclic:K, transposition, custom:FILE or product:...
        #[arg(long)]
        spec: String,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
        /// Print {"value", "imag_residue"} instead of the bare value.
        #[arg(long)]
        json: bool,
    },
    /// Eigenvalues of a Hermitian matrix JSON file.
    Eig {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Auto,
    Naive,
    Tensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Inequality id, e.g. theorem2_1, theorem3_3, lemma3_2.
    #[arg(long)]
    suite: String,
    /// det, per, cyclic:K, transposition, custom:FILE or
    /// product:det1,per2 (blocks det<N>, per<N>, cyclic<N>:<K>).
    #[arg(long, default_value = "det")]
    spec: String,
    /// Matrix size; defaults to the spec's degree, or 2 for det/per.
    #[arg(long)]
    n: Option<usize>,
    /// Number of matrices; defaults to the suite's arity.
    #[arg(long)]
    m: Option<usize>,
    /// Exponent(s) to evaluate; may be repeated.
    #[arg(long, num_args = 1..)]
    r: Vec<f64>,
    /// Exponent range MIN:MAX:STEP, in place of --r.
    #[arg(long, conflicts_with = "r")]
    r_range: Option<String>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Required: all randomness derives from it.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit an aggregate object (counts, worst slack) on stdout.
    #[arg(long)]
    summary: bool,
    /// Function name for Φ-variants: x, exp or x^R.
    #[arg(long)]
    phi: Option<String>,
    /// Levels K,L,P for theorem3_5 and theorem4_2.
    #[arg(long)]
    levels: Option<String>,
    /// 0-based partition for partition_schur, blocks separated by '|',
    /// e.g. "0|1,2".
    #[arg(long)]
    partition: Option<String>,
    /// Kronecker power for the tensor suites.
    #[arg(long)]
    tensor_power: Option<usize>,
    #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
    field: FieldArg,
    /// Entry scale of the random factors B in B*B.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Directory for replayable {"matrices": [...]} files of violating trials.
    #[arg(long)]
    replay_dir: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_block(token: &str) -> Result<GmfSpec> {
    let (kind, rest) = token.split_at(
        token
            .find(|c: char| c.is_ascii_digit())
            .unwrap_or(token.len()),
    );
    let (n_str, k_str) = match rest.split_once(':') {
        Some((n, k)) => (n, Some(k)),
        None => (rest, None),
    };
    let n: usize = n_str
        .parse()
        .map_err(|_| usage(format!("product block {token:?} needs a size, e.g. det2")))?;
    if n == 0 {
        return Err(usage("product block sizes must be >= 1"));
    }
    match (kind, k_str) {
        ("det", None) => Ok(GmfSpec::Det(n)),
        ("per", None) => Ok(GmfSpec::Per(n)),
        ("cyclic", Some(k)) => {
            let k = k
                .parse()
                .map_err(|_| usage(format!("bad character index in {token:?}")))?;
            GmfSpec::cyclic(n, k)
        }
        _ => Err(usage(format!("unknown product block {token:?}"))),
    }
}

/// Parses a spec string; `n` supplies the degree where the spec has none.
pub fn parse_spec(s: &str, n: Option<usize>) -> Result<GmfSpec> {
    let need_n = || n.ok_or_else(|| usage(format!("spec {s:?} needs --n")));
    let spec = match s {
        "det" => GmfSpec::Det(need_n()?),
        "per" => GmfSpec::Per(need_n()?),
        "transposition" => GmfSpec::transposition_sign(need_n()?)?,
        _ => {
            if let Some(k) = s.strip_prefix("cyclic:") {
                let k = k
                    .parse()
                    .map_err(|_| usage(format!("bad character index in {s:?}")))?;
                GmfSpec::cyclic(need_n()?, k)?
            } else if let Some(path) = s.strip_prefix("custom:") {
                let text = fs::read_to_string(path)?;
                let json: GroupCharacterJson = serde_json::from_str(&text)?;
                let label = Path::new(path)
                    .file_stem()
                    .map(|x| x.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "file".into());
                GmfSpec::custom(label, GroupCharacter::from_json(json)?)
            } else if let Some(blocks) = s.strip_prefix("product:") {
                GmfSpec::product(blocks.split(',').map(parse_block).collect::<Result<_>>()?)?
            } else {
                return Err(usage(format!("unknown spec {s:?}")));
            }
        }
    };
    if let Some(n) = n {
        if spec.degree() != n {
            return Err(Error::DimensionMismatch {
                expected: spec.degree(),
                got: n,
            });
        }
    }
    if spec.degree() == 0 {
        return Err(usage("matrix size must be >= 1"));
    }
    Ok(spec)
}

fn parse_levels(s: &str) -> Result<Levels> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| usage(format!("bad levels {s:?}")))
        })
        .collect::<Result<_>>()?;
    match parts[..] {
        [k, l, p] => Ok(Levels::new(k, l, p)),
        _ => Err(usage(format!("levels must be K,L,P, got {s:?}"))),
    }
}

fn parse_partition(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split('|')
        .map(|block| {
            block
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| usage(format!("bad partition {s:?}")))
                })
                .collect()
        })
        .collect()
}

fn parse_range(s: &str) -> Result<RGrid> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|x| x.parse().map_err(|_| usage(format!("bad r range {s:?}"))))
        .collect::<Result<_>>()?;
    match parts[..] {
        [min, max, step] => Ok(RGrid::Range { min, max, step }),
        _ => Err(usage(format!("r range must be MIN:MAX:STEP, got {s:?}"))),
    }
}

fn build_config(args: &RunArgs) -> Result<SearchConfig> {
    let inequality: InequalityId = args.suite.parse()?;
    let seed = args
        .seed
        .ok_or_else(|| usage("--seed is required for reproducible runs"))?;
    if args.n == Some(0) {
        return Err(usage("--n must be >= 1"));
    }
    let default_n = match args.spec.as_str() {
        "det" | "per" | "transposition" => Some(2),
        s if s.starts_with("cyclic:") => Some(2),
        _ => None,
    };
    let spec = parse_spec(&args.spec, args.n.or(default_n))?;
    let n = if inequality.is_tensor() {
        args.n.unwrap_or(2)
    } else {
        spec.degree()
    };
    let m = args.m.unwrap_or_else(|| inequality.arity().default_m());
    let r_grid = match (&args.r_range, args.r.is_empty()) {
        (Some(range), _) => Some(parse_range(range)?),
        (None, false) => Some(RGrid::List(args.r.clone())),
        (None, true) => None,
    };
    let suite = SuiteParams {
        levels: args.levels.as_deref().map(parse_levels).transpose()?,
        phi: args
            .phi
            .as_deref()
            .map(str::parse::<ConvexFn>)
            .transpose()?,
        partition: args.partition.as_deref().map(parse_partition).transpose()?,
        tensor_power: args.tensor_power,
    };
    let config = SearchConfig {
        inequality,
        spec,
        instance: RandomInstanceConfig {
            n,
            m,
            seed,
            scale: args.scale,
            field: match args.field {
                FieldArg::Real => Field::Real,
                FieldArg::Complex => Field::Complex,
            },
        },
        r_grid,
        trials: args.trials,
        suite,
    };
    config.validate()?;
    Ok(config)
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn jsonl(reports: &[SlackReport]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.push(b'\n');
    }
    Ok(out)
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => {
            io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn write_replays(config: &SearchConfig, result: &SearchResult, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut trials: Vec<u64> = result
        .violations
        .iter()
        .filter_map(|r| r.params.trial)
        .collect();
    trials.dedup();
    for t in trials {
        let inst = config.trial_instance(t);
        let bytes = serde_json::to_vec_pretty(&inst.to_json())?;
        write_atomic(&dir.join(format!("trial-{t}.json")), &bytes)?;
    }
    Ok(())
}

fn run(args: &RunArgs, as_search: bool) -> Result<i32> {
    let config = build_config(args)?;
    let result = search::random_search(&config)?;
    let body = if as_search {
        let mut v = serde_json::to_vec_pretty(&result)?;
        v.push(b'\n');
        v
    } else {
        jsonl(&result.reports)?
    };
    if args.out.is_some() || !args.summary {
        emit(args.out.as_deref(), &body)?;
    }
    if args.summary {
        let mut s = serde_json::to_vec(&result.summary())?;
        s.push(b'\n');
        io::stdout().write_all(&s)?;
    }
    if let Some(dir) = &args.replay_dir {
        write_replays(&config, &result, dir)?;
    }
    Ok(if result.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify(args) => run(&args, false),
        Command::Search(args) => run(&args, true),
        Command::Reproduce { example, out } => match search::reproduce(&example) {
            Ok(result) => {
                emit(out.as_deref(), &jsonl(&result.reports)?)?;
                Ok(EXIT_OK)
            }
            Err(e @ Error::ReproductionFailed { .. }) => {
                eprintln!("error: {e}");
                Ok(EXIT_VIOLATION)
            }
            Err(e) => Err(e),
        },
        Command::Gmf {
            spec,
            matrix,
            engine,
            json,
        } => {
            let a = read_matrix(&matrix)?;
            let spec = parse_spec(&spec, Some(a.n()))?;
            let v = match engine {
                Engine::Auto => gmf(&spec, &a)?,
                Engine::Naive => gmf_naive(&spec, &a)?,
                Engine::Tensor => gmf_tensor_oracle(&spec, &a)?,
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({"value": v.value, "imag_residue": v.imag_residue})
                );
            } else {
                println!("{}", v.value);
            }
            Ok(EXIT_OK)
        }
        Command::Eig { matrix } => {
            let d = hermitian_eig(&read_matrix(&matrix)?)?;
            println!(
                "{}",
                serde_json::json!({"eigenvalues": d.eigenvalues, "min": d.min_eigenvalue()})
            );
            Ok(EXIT_OK)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}
