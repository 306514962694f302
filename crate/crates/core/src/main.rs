use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use mixvol::mixed::Method;
use mixvol::problem::{self, Command, Options, PrismRoute, Problem};
use mixvol::invariants::ResEgMode;
use mixvol::resultant::SupportConvention;
use mixvol::{MixvolError, Result};

/// Exact mixed volumes of polyhedron pairs and singularity invariants.
///
/// Every command reads a JSON payload from FILE (or standard input when FILE
/// is `-` or missing) and prints `{"value": ...}` or `{"error": ...}`.
/// Exit status: 0 on success, 2 when a hypothesis fails, 3 on malformed input.
#[derive(Parser, Debug)]
#[command(name = "mixvol", version)]
struct Cli {
    /// Print the term-by-term decomposition of the value.
    #[arg(long, global = true)]
    explain: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Input {
    /// Payload file.
    file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Lattice-normalized volume of a polytope: {"polyhedron"}.
    Volume(Input),
    /// Classical mixed volume of n polytopes: {"polyhedra"}.
    MixedVolume(Input),
    /// Volume of a pair, vol(A minus B) - vol(B minus A): {"pair"}.
    PairVolume(Input),
    /// Mixed volume of n pairs: {"pairs"}.
    PairMixedVolume {
        #[command(flatten)]
        input: Input,
        /// face-formula, polarization or truncation.
        #[arg(long, default_value = "face-formula")]
        method: String,
    },
    /// Stable mixed volume of (support, section) pairs: {"pairs", "gamma0"?}.
    Stable {
        #[command(flatten)]
        input: Input,
        /// Covector defining the truncation, as a JSON list.
        #[arg(long)]
        gamma0: Option<String>,
    },
    /// Lattice points of a polytope or of a pair: {"polyhedron"} or {"pair"}.
    LatticeCount(Input),
    /// Mixed volume of column prisms over a grid of pairs or polytopes: {"grid"}.
    PrismMv {
        #[command(flatten)]
        input: Input,
        /// lattice or direct.
        #[arg(long, default_value = "lattice")]
        via: String,
    },
    /// Degree-n part of a rational function of pairs: {"function", "bindings", "dim"?}.
    EvalPairFn {
        #[command(flatten)]
        input: Input,
        /// Function JSON {"vars", "numerator", "denominator"?}, inline or a path.
        #[arg(long)]
        expr: Option<String>,
    },
    /// Milnor number of a generic complete intersection: {"equations"}.
    Milnor(Input),
    /// Index of a generic 1-form on a complete intersection: {"equations", "coefficients"}.
    GzIndex {
        #[command(flatten)]
        input: Input,
        /// verbatim or alternate.
        #[arg(long, default_value = "verbatim")]
        mode: String,
    },
    /// Multiplicity of a generic I x k determinantal singularity: {"rows", "columns"}.
    DetMult(Input),
    /// Multiplicity of a generic collection of matrices: {"matrices"}.
    CollectionMult(Input),
    /// Resultantal multiplicity: {"N", "sigmas", "components"}.
    ResultantalMult(Input),
    /// Euler characteristic of the Milnor fiber of a function on a determinantal singularity.
    EulerChar(Input),
    /// Radial index of a 1-form on a determinantal singularity.
    RadialIndex(Input),
    /// Euler characteristic over compatible faces: {"supports", "sections"}.
    ChiFaces(Input),
    /// Support function of the resultant polytope: {"N", "sigmas", "gamma"}.
    ResultantSupport {
        #[command(flatten)]
        input: Input,
        /// Configuration JSON {"N", "sigmas"}, inline or a path.
        #[arg(long)]
        sigmas: Option<String>,
        /// Weights, one list per configuration, inline or a path.
        #[arg(long)]
        gamma: Option<String>,
        /// Report the maximum instead of the minimum.
        #[arg(long)]
        max_convention: bool,
    },
    /// Smallest essential subcollection, counted from one: {"N", "sigmas"}.
    Essential {
        #[command(flatten)]
        input: Input,
        /// Configuration JSON, inline or a path.
        #[arg(long)]
        sigmas: Option<String>,
    },
    /// Codimension of a collection of configurations: {"N", "sigmas"}.
    Codim {
        #[command(flatten)]
        input: Input,
        /// Configuration JSON, inline or a path.
        #[arg(long)]
        sigmas: Option<String>,
    },
    /// Runs a problem file {"command", "payload", "options"?}.
    Run(Input),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return emit(Err(MixvolError::Schema(e.kind().to_string())));
        }
    };
    emit(execute(cli))
}

fn emit(outcome: Result<problem::Report>) -> ExitCode {
    match outcome {
        Ok(report) => {
            println!("{}", report.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", problem::error_json(&e));
            ExitCode::from(problem::exit_code(&e) as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<problem::Report> {
    let mut options = Options { explain: cli.explain, ..Options::default() };
    let (command, input, mut overrides): (Command, Input, Vec<(&str, Value)>) = match cli.command {
        Sub::Run(input) => {
            let mut p = Problem::from_json(&read_payload(&input)?)?;
            p.options.explain |= cli.explain;
            return p.run();
        }
        Sub::Volume(i) => (Command::Volume, i, vec![]),
        Sub::MixedVolume(i) => (Command::MixedVolume, i, vec![]),
        Sub::PairVolume(i) => (Command::PairVolume, i, vec![]),
        Sub::PairMixedVolume { input, method } => {
            options.method = method.parse::<Method>()?;
            (Command::PairMixedVolume, input, vec![])
        }
        Sub::Stable { input, gamma0 } => {
            if let Some(g) = gamma0 {
                options.gamma0 = Some(serde_json::from_value(json_arg(&g)?).map_err(|e| MixvolError::Schema(format!("`gamma0`: {e}")))?);
            }
            (Command::Stable, input, vec![])
        }
        Sub::LatticeCount(i) => (Command::LatticeCount, i, vec![]),
        Sub::PrismMv { input, via } => {
            options.via = via.parse::<PrismRoute>()?;
            (Command::PrismMv, input, vec![])
        }
        Sub::EvalPairFn { input, expr } => {
            let extra = expr.map(|e| json_arg(&e).map(|v| ("function", v))).transpose()?;
            (Command::EvalPairFn, input, extra.into_iter().collect())
        }
        Sub::Milnor(i) => (Command::Milnor, i, vec![]),
        Sub::GzIndex { input, mode } => {
            options.mode = mode.parse::<ResEgMode>()?;
            (Command::GzIndex, input, vec![])
        }
        Sub::DetMult(i) => (Command::DetMult, i, vec![]),
        Sub::CollectionMult(i) => (Command::CollectionMult, i, vec![]),
        Sub::ResultantalMult(i) => (Command::ResultantalMult, i, vec![]),
        Sub::EulerChar(i) => (Command::EulerChar, i, vec![]),
        Sub::RadialIndex(i) => (Command::RadialIndex, i, vec![]),
        Sub::ChiFaces(i) => (Command::ChiFaces, i, vec![]),
        Sub::ResultantSupport { input, sigmas, gamma, max_convention } => {
            if max_convention {
                options.convention = SupportConvention::Max;
            }
            let mut extra = configuration_arg(sigmas)?;
            if let Some(g) = gamma {
                extra.push(("gamma", json_arg(&g)?));
            }
            (Command::ResultantSupport, input, extra)
        }
        Sub::Essential { input, sigmas } => (Command::Essential, input, configuration_arg(sigmas)?),
        Sub::Codim { input, sigmas } => (Command::Codim, input, configuration_arg(sigmas)?),
    };
    // flags alone may carry the whole payload
    let mut payload = if input.file.is_none() && !overrides.is_empty() { Value::Object(Default::default()) } else { read_payload(&input)? };
    let obj = payload.as_object_mut().ok_or_else(|| MixvolError::Schema("payload must be a JSON object".into()))?;
    for (key, value) in overrides.drain(..) {
        obj.insert(key.to_string(), value);
    }
    problem::run(command, &payload, &options)
}

/// `{"N", "sigmas"}` given on the command line, split into payload fields.
fn configuration_arg(sigmas: Option<String>) -> Result<Vec<(&'static str, Value)>> {
    let Some(s) = sigmas else {
        return Ok(vec![]);
    };
    match json_arg(&s)? {
        Value::Object(mut m) => {
            let n = m.remove("N").ok_or_else(|| MixvolError::Schema("missing field `N` in configurations".into()))?;
            let sigmas = m.remove("sigmas").ok_or_else(|| MixvolError::Schema("missing field `sigmas` in configurations".into()))?;
            Ok(vec![("N", n), ("sigmas", sigmas)])
        }
        _ => Err(MixvolError::Schema("configurations must be a JSON object".into())),
    }
}

/// Inline JSON, or the contents of the named file.
fn json_arg(s: &str) -> Result<Value> {
    match serde_json::from_str(s) {
        Ok(v) => Ok(v),
        Err(_) => parse(&std::fs::read_to_string(s).map_err(|e| MixvolError::Schema(format!("cannot read `{s}`: {e}")))?),
    }
}

fn read_payload(input: &Input) -> Result<Value> {
    let text = match input.file.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| MixvolError::Schema(format!("cannot read standard input: {e}")))?;
            buf
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| MixvolError::Schema(format!("cannot read `{path}`: {e}")))?,
    };
    parse(&text)
}

fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| MixvolError::Schema(format!("invalid JSON: {e}")))
}
