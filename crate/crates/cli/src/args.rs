use clap::{Args, Parser, Subcommand, ValueEnum};

use subatomica_core::SearchBudget;

#[derive(Debug, Parser)]
#[command(name = "subatomica", version, about = "Exact atoms, factorizations and subatomic witnesses in monoids and semidomains")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Global {
    /// Print the result as JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for `check`.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub jobs: u64,
    /// Largest denominator of monoid atoms tried.
    #[arg(long, global = true, default_value_t = 100)]
    pub denominator_bound: u64,
    /// Largest number of factors in a split or descent.
    #[arg(long, global = true, default_value_t = 8)]
    pub depth: usize,
    /// Largest degree of a candidate multiplier.
    #[arg(long, global = true, default_value_t = 8)]
    pub degree_bound: usize,
    /// Bit precision cap for real enclosures.
    #[arg(long, global = true, env = "SUBATOMICA_PRECISION", default_value_t = 256)]
    pub precision: u32,
}

impl Global {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            atom_denominator_bound: self.denominator_bound,
            factor_depth_bound: self.depth,
            multiplier_degree_bound: self.degree_bound,
            precision_cap: self.precision,
            ..SearchBudget::default()
        }
    }
}

#[derive(Debug, Args, Clone)]
pub struct Target {
    /// Structure expression, e.g. `poly{base=N0}`.
    #[arg(long, alias = "monoid")]
    pub structure: String,
    /// Element expression; may instead be embedded in the structure as `f=...`.
    #[arg(long, allow_hyphen_values = true)]
    pub elem: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct MaaTarget {
    #[arg(long, alias = "monoid", default_value = "MAA")]
    pub structure: String,
    #[arg(long)]
    pub elem: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WitnessKind {
    Furstenberg,
    AlmostAtomic,
    QuasiAtomic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Suite {
    Paper,
    Examples,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Membership test.
    Contains(Target),
    /// Whether `--divisor` divides `--elem`, with the cofactor.
    Divides {
        #[command(flatten)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Atoms of a monoid with denominator at most `--bound`.
    Atoms {
        #[arg(long, alias = "monoid")]
        structure: String,
        #[arg(long, default_value_t = 30)]
        bound: u64,
    },
    /// Whether an element is an atom, with a certificate or a split.
    IsAtom(Target),
    /// Factorizations into atoms.
    Factorize {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 16)]
        max: usize,
    },
    /// Greatest common divisors of a finite set in a monoid.
    Gcd {
        #[arg(long, alias = "monoid")]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        elems: String,
    },
    /// Maximal common divisors of a finite set in a monoid.
    Mcd {
        #[arg(long, alias = "monoid")]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        elems: String,
    },
    /// Canonical decompositions in the almost atomic example monoid.
    CanonDecomp(MaaTarget),
    /// Greatest divisor lying in the dyadic submonoid.
    GreatestDyadic(MaaTarget),
    /// Image in the difference ring.
    Embed(Target),
    /// The φ invariant of an element of the lex cone algebra.
    Phi {
        #[arg(long, default_value = "lexalg")]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Whether an element of the mixed ring factors into atoms.
    OrdStatus {
        #[arg(long, default_value = "mixed{d=2}")]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Search for a subatomic witness.
    Witness {
        kind: WitnessKind,
        #[command(flatten)]
        target: Target,
    },
    /// Unique factorization cross-check on a finite sample.
    UfmCheck {
        #[arg(long, alias = "monoid")]
        structure: String,
        /// Integer values `LO..HI`, inclusive.
        #[arg(long, conflicts_with = "grid", allow_hyphen_values = true)]
        range: Option<String>,
        /// Polynomials with degree and coefficients bounded by `DEG,COEFF`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Brute-force factorization enumeration.
    Oracle {
        #[command(flatten)]
        target: Target,
        #[arg(long = "max-factors", default_value_t = 6)]
        max_factors: usize,
    },
    /// Replay the worked-example regression suite.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::Paper)]
        suite: Suite,
        /// Also write a TAP report to this path.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
    },
}
