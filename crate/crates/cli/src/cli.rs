use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::args::{self, FamilyArgs, GlobalOpts, NRange, PolySource};
use crate::{commands, verify};

#[derive(Debug, Parser)]
#[command(name = "charvar", version, about = "Character-variety polynomials of twist knots and J(3,2n)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

/// `--n`, accepting `a..b` ranges with negative ends.
#[derive(Debug, Clone, clap::Args)]
pub struct RangeArg {
    /// Index or inclusive range, e.g. `-2`, `-10..10`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: NRange,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Riley polynomial R_n(m, q).
    Riley {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArg,
        /// Specialize the meridian eigenvalue, `m=1` or `m=-1`.
        #[arg(long)]
        at: Option<String>,
    },
    /// Character-variety factor r_n(x, z).
    Char {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArg,
    },
    /// Diagonal r_n(x, x).
    Diagonal {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArg,
    },
    /// Reducible slice r_n(2, 2 - q).
    Slice {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArg,
    },
    /// Root (2n - 1)/n of the twist diagonal and whether it is integral.
    Trace {
        #[command(flatten)]
        range: RangeArg,
    },
    /// Entry identities of w^n at m = 1 for J(3, 2n).
    Identities {
        #[command(flatten)]
        range: RangeArg,
    },
    /// Alexander polynomial of J(3, 2n), n < 0.
    Alexander {
        #[command(flatten)]
        range: RangeArg,
    },
    /// Complex roots with backward errors.
    Roots {
        #[command(flatten)]
        source: PolySource,
    },
    /// Irreducibility over Z with a replayable transcript.
    Irreducible {
        #[command(flatten)]
        source: PolySource,
    },
    /// Complete factorization over Z.
    Factor {
        #[command(flatten)]
        source: PolySource,
    },
    /// Factorization modulo a prime.
    FactorModP {
        #[command(flatten)]
        source: PolySource,
        #[arg(long)]
        p: u64,
    },
    /// Rational roots.
    RationalRoots {
        #[command(flatten)]
        source: PolySource,
    },
    /// Commensurability criterion, one row per n.
    Check {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArg,
    },
    /// Run an invariant suite over a range.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        #[command(flatten)]
        range: RangeArg,
        /// Restrict suites that take a family.
        #[arg(long, value_enum)]
        family: Option<args::FamilyName>,
    },
    /// Evaluate a word in the meridian images.
    Word {
        word: String,
        /// Raise the word to this power by the trace recursion.
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        power: i64,
        /// Use the parabolic images (m = 1), entries in Z[q].
        #[arg(long)]
        parabolic: bool,
    },
    /// Value of the continued fraction [a1, ..., ak] = 1/(a1 - 1/(a2 - ...)).
    #[command(allow_negative_numbers = true)]
    Cf {
        #[arg(required = true, num_args = 1..)]
        entries: Vec<i64>,
    },
    /// Whether two 2-bridge fractions p/q give the same knot.
    #[command(allow_negative_numbers = true)]
    Equiv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Both fraction forms of J(3, 2n) and their cross-checks.
    J3Fraction {
        #[command(flatten)]
        range: RangeArg,
    },
    /// Trace-field degree and genericity.
    Genericity {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArg,
    },
    /// Longitude holonomy at every slice root.
    Holonomy {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArg,
    },
    /// Cusp relation for J(3, 2n) at every slice root, n < 0.
    Cusp {
        #[command(flatten)]
        range: RangeArg,
    },
}

/// Parses the process arguments, runs, and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.global.threads;
    match charvar::par::with_threads(threads, || commands::run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("charvar: {}", e.message());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_ranges_parse() {
        let cli = Cli::try_parse_from(["charvar", "check", "--family", "twist", "--n", "-10..10"]).unwrap();
        match cli.command {
            Command::Check { range, .. } => assert_eq!(range.n, NRange { lo: -10, hi: 10 }),
            _ => panic!(),
        }
        let cli = Cli::try_parse_from(["charvar", "cf", "1", "-2", "-4"]).unwrap();
        assert!(matches!(cli.command, Command::Cf { ref entries } if entries == &[1, -2, -4]));
    }
}
