//! `stiefel`: presentations, products, operations, bases, series and maps on
//! the motivic cohomology of Stiefel varieties.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 math-context error,
//! 4 property failure.

mod expr;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stiefel_core::checks::{run_all, run_suite, SUITES};
use stiefel_core::json::element_from_json;
use stiefel_core::{
    apply_operation, comparison_map, immersion_pullback, projection_pullback, symmetry_pullback, AlgebraError,
    Bidegree, CoeffRing, Element, FieldProfile, MotivicBase, OperationSpec, Presentation, RingMap, StiefelPresentation,
    Symmetry,
};

use crate::expr::parse_element;
use crate::output::{AnyClass, Format};

const SEED_VAR: &str = "STIEFEL_SEED";

#[derive(Debug, Parser)]
#[command(name = "stiefel", version, about = "Motivic cohomology of Stiefel varieties")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Matrix size n of W(n,m).
    #[arg(short = 'n', global = true)]
    n: Option<u32>,
    /// Number of columns m of W(n,m); defaults to n.
    #[arg(short = 'm', global = true)]
    m: Option<u32>,
    /// Coefficient ring, "Z" or "Z/<m>" [default: Z/2, or Z/p for odd-prime operations].
    #[arg(long, global = true)]
    coeff: Option<String>,
    /// Whether -1 is a square in the ground field.
    #[arg(long = "minus-one", value_enum, default_value_t = MinusOne::Nonsquare, global = true)]
    minus_one: MinusOne,
    /// Characteristic of the ground field, if known.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized suites; STIEFEL_SEED overrides it.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MinusOne {
    Square,
    Nonsquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapKind {
    Proj,
    Imm,
    Perm,
    Neg,
    Cmp,
}

#[derive(Debug, Args)]
struct MapArgs {
    #[arg(value_enum)]
    kind: MapKind,
    /// For proj: the larger column count of the target W(n, TO).
    #[arg(long)]
    to: Option<u32>,
    /// For perm: a 1-based permutation of the columns, e.g. 2,1,3.
    #[arg(long, value_delimiter = ',')]
    perm: Vec<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generators, bidegrees and relations of H(W(n,m)).
    Present,
    /// Product of two or more elements.
    Mul {
        #[arg(required = true, num_args = 2..)]
        factors: Vec<String>,
    },
    /// Steenrod square Sq^i (total superscript).
    Sq {
        #[arg(short = 'i')]
        index: u32,
        element: String,
    },
    /// Reduced power P^i at an odd prime.
    Power {
        #[arg(short = 'i')]
        index: u32,
        #[arg(short = 'p')]
        prime: u64,
        element: String,
    },
    /// Bockstein at an odd prime.
    Bockstein {
        #[arg(short = 'p')]
        prime: u64,
        element: String,
    },
    /// Basis of one graded piece.
    Basis {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Bigraded Poincaré polynomial.
    Series,
    /// Apply an induced map.
    Map {
        #[command(flatten)]
        map: MapArgs,
        element: String,
    },
    /// Kernel of an induced map in one bidegree.
    Kernel {
        #[command(flatten)]
        map: MapArgs,
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Run property suites.
    Check {
        /// A suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Algebra(AlgebraError),
    PropertyFailure(String),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Algebra(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Algebra(e) => match e {
                AlgebraError::Parse(_)
                | AlgebraError::InvalidPresentation(_)
                | AlgebraError::InvalidGenerator(..)
                | AlgebraError::InvalidMonomial(_)
                | AlgebraError::InvalidPermutation(_)
                | AlgebraError::InvalidOperation(_)
                | AlgebraError::NotPrime(_) => 2,
                _ => 3,
            },
            CliError::PropertyFailure(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) | CliError::PropertyFailure(s) => f.write_str(s),
            CliError::Algebra(AlgebraError::InvalidPresentation(s)) => f.write_str(s),
            CliError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl Global {
    fn profile(&self) -> FieldProfile {
        FieldProfile::new(self.minus_one == MinusOne::Square, self.characteristic)
    }

    fn coeff_or(&self, default: CoeffRing) -> Result<CoeffRing, CliError> {
        match &self.coeff {
            Some(s) => Ok(s.parse()?),
            None => Ok(default),
        }
    }

    fn base(&self, default: CoeffRing) -> Result<MotivicBase, CliError> {
        Ok(MotivicBase::new(self.coeff_or(default)?, self.profile()))
    }

    fn require_n(&self) -> Result<u32, CliError> {
        self.n.ok_or_else(|| CliError::Usage("the ring size -n is required".into()))
    }

    /// The ring named by -n/-m, or by the first JSON argument when -n is absent.
    fn presentation(&self, default: CoeffRing, args: &[&str]) -> Result<StiefelPresentation, CliError> {
        if let Some(n) = self.n {
            let base = self.base(default)?;
            return Ok(StiefelPresentation::new(n, self.m.unwrap_or(n), base.coeff, base.profile)?);
        }
        let json = args.iter().find(|a| a.trim_start().starts_with('{') && a.contains('"'));
        let Some(json) = json else {
            return Err(CliError::Usage("the ring size -n is required unless an element is given as JSON".into()));
        };
        let pres = element_from_json(json)?.presentation();
        Ok(StiefelPresentation::new(
            pres.n(),
            pres.m(),
            pres.coeff(),
            FieldProfile::new(pres.profile().minus_one_is_square, self.characteristic),
        )?)
    }

    fn seed(&self) -> Result<u64, CliError> {
        match std::env::var(SEED_VAR) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
            Err(_) => Ok(self.seed),
        }
    }
}

const Z2: CoeffRing = CoeffRing::IntegersMod(2);

fn odd_prime_coeff(p: u64) -> Result<CoeffRing, CliError> {
    Ok(CoeffRing::integers_mod(p)?)
}

enum AnyMap {
    Stiefel(RingMap<StiefelPresentation>),
    Comparison(RingMap<stiefel_core::PGmPresentation>),
}

impl AnyMap {
    fn source(&self) -> StiefelPresentation {
        match self {
            AnyMap::Stiefel(f) => f.source(),
            AnyMap::Comparison(f) => f.source(),
        }
    }
}

fn build_map(g: &Global, args: &MapArgs) -> Result<AnyMap, CliError> {
    let n = g.require_n()?;
    let m = g.m.unwrap_or(n);
    let base = g.base(Z2)?;
    if args.to.is_some() && args.kind != MapKind::Proj {
        return Err(CliError::Usage("--to only applies to proj".into()));
    }
    if !args.perm.is_empty() && args.kind != MapKind::Perm {
        return Err(CliError::Usage("--perm only applies to perm".into()));
    }
    Ok(match args.kind {
        MapKind::Proj => {
            let to = args.to.ok_or_else(|| CliError::Usage("proj needs --to <M_BIG>".into()))?;
            AnyMap::Stiefel(projection_pullback(n, m, to, base)?)
        }
        MapKind::Imm => AnyMap::Stiefel(immersion_pullback(n, m, base)?),
        MapKind::Perm => {
            if args.perm.contains(&0) {
                return Err(CliError::Usage("--perm is 1-based".into()));
            }
            let perm = args.perm.iter().map(|v| v - 1).collect();
            AnyMap::Stiefel(symmetry_pullback(n, m, Symmetry::Permutation(perm), base)?)
        }
        MapKind::Neg => AnyMap::Stiefel(symmetry_pullback(n, m, Symmetry::NegateFirstColumn, base)?),
        MapKind::Cmp => {
            if m != n {
                return Err(CliError::Algebra(AlgebraError::ContextMismatch(format!(
                    "the comparison map starts at GL({n}), not W({n},{m})"
                ))));
            }
            AnyMap::Comparison(comparison_map(n, base)?)
        }
    })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let g = &cli.global;
    let format = g.format;
    match &cli.command {
        Command::Present => {
            let n = g.require_n()?;
            let base = g.base(Z2)?;
            let pres = StiefelPresentation::new(n, g.m.unwrap_or(n), base.coeff, base.profile)?;
            Ok(output::presentation(&pres, format)?)
        }
        Command::Mul { factors } => {
            let args: Vec<&str> = factors.iter().map(String::as_str).collect();
            let pres = g.presentation(Z2, &args)?;
            let mut product = Element::one(pres);
            for f in &args {
                product = product.mul(&parse_element(f, &pres)?)?;
            }
            Ok(output::class(&AnyClass::Stiefel(product), format))
        }
        Command::Sq { index, element } => {
            let pres = g.presentation(Z2, &[element])?;
            let x = parse_element(element, &pres)?;
            Ok(output::class(&AnyClass::Stiefel(apply_operation(&OperationSpec::sq(*index), &x)?), format))
        }
        Command::Power { index, prime, element } => {
            let op = OperationSpec::power(*index, *prime)?;
            let pres = g.presentation(odd_prime_coeff(*prime)?, &[element])?;
            let x = parse_element(element, &pres)?;
            Ok(output::class(&AnyClass::Stiefel(apply_operation(&op, &x)?), format))
        }
        Command::Bockstein { prime, element } => {
            let op = OperationSpec::bockstein(*prime)?;
            let pres = g.presentation(odd_prime_coeff(*prime)?, &[element])?;
            let x = parse_element(element, &pres)?;
            Ok(output::class(&AnyClass::Stiefel(apply_operation(&op, &x)?), format))
        }
        Command::Basis { p, q } => {
            let pres = g.presentation(Z2, &[])?;
            let bd = Bidegree::new(*p, *q);
            Ok(output::basis(&pres, bd, &pres.basis_in_bidegree(bd), format)?)
        }
        Command::Series => {
            let pres = g.presentation(Z2, &[])?;
            Ok(output::series(&pres, &pres.poincare_polynomial(), format))
        }
        Command::Map { map, element } => {
            let f = build_map(g, map)?;
            let x = parse_element(element, &f.source())?;
            let image = match &f {
                AnyMap::Stiefel(f) => AnyClass::Stiefel(f.apply(&x)?),
                AnyMap::Comparison(f) => AnyClass::Target(f.apply(&x)?),
            };
            Ok(output::class(&image, format))
        }
        Command::Kernel { map, p, q } => {
            let bd = Bidegree::new(*p, *q);
            let kernel = match build_map(g, map)? {
                AnyMap::Stiefel(f) => f.kernel_basis(bd)?,
                AnyMap::Comparison(f) => f.kernel_basis(bd)?,
            };
            Ok(output::kernel(bd, &kernel, format))
        }
        Command::Check { suite } => {
            let seed = g.seed()?;
            let reports = if suite == "all" {
                run_all(seed)
            } else {
                vec![run_suite(suite, seed).ok_or_else(|| {
                    CliError::Usage(format!("unknown suite {suite:?}; known suites: all, {}", SUITES.join(", ")))
                })?]
            };
            let rendered = output::reports(seed, &reports, format);
            if reports.iter().all(|r| r.passed()) {
                Ok(rendered)
            } else {
                Err(CliError::PropertyFailure(rendered))
            }
        }
    }
}

fn emit(s: &str) {
    if s.ends_with('\n') {
        print!("{s}");
    } else {
        println!("{s}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(CliError::PropertyFailure(report)) => {
            emit(&report);
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
