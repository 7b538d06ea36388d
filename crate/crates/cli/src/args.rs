use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use clap::{Args, ValueEnum};

use charvar::families::{Family, FamilySpec};
use charvar::factorint::IrreducibilityOptions;
use charvar::matword::GroupWord;
use charvar::numeric::{NumericOptions, Tolerances, DEFAULT_HOLONOMY_TOL, DEFAULT_IDENTITY_TOL, DEFAULT_ROOT_TOL};
use charvar::par::Exec;
use charvar::ring::UniPoly;

use crate::error::CliError;

/// Inclusive index range `a..b`, or a single index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub lo: i64,
    pub hi: i64,
}

impl NRange {
    pub fn values(&self) -> Vec<i64> {
        (self.lo..=self.hi).collect()
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(NRange { lo, hi })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Twist,
    J3,
}

/// `--family` or a custom `--word`.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum, conflicts_with = "word")]
    pub family: Option<FamilyName>,
    /// Custom family from a word in a, b (capitals are inverses).
    #[arg(long)]
    pub word: Option<String>,
}

pub enum FamilyRef {
    Static(&'static Family),
    Owned(Box<Family>),
}

impl Deref for FamilyRef {
    type Target = Family;
    fn deref(&self) -> &Family {
        match self {
            FamilyRef::Static(f) => f,
            FamilyRef::Owned(f) => f,
        }
    }
}

pub fn named(name: FamilyName) -> &'static Family {
    match name {
        FamilyName::Twist => Family::twist(),
        FamilyName::J3 => Family::j3(),
    }
}

impl FamilyArgs {
    pub fn resolve(&self) -> Result<FamilyRef, CliError> {
        match (&self.family, &self.word) {
            (Some(f), _) => Ok(FamilyRef::Static(named(*f))),
            (None, Some(w)) => {
                let word = GroupWord::parse(w).map_err(|e| CliError::Usage(format!("--word: {e}")))?;
                let spec = FamilySpec::from_word(w, word).map_err(|e| CliError::Usage(format!("--word: {e}")))?;
                Ok(FamilyRef::Owned(Box::new(Family::new(spec))))
            }
            (None, None) => Err(CliError::Usage("one of --family or --word is required".into())),
        }
    }
}

/// A polynomial given directly or as a family slice.
#[derive(Debug, Clone, Args)]
pub struct PolySource {
    /// Univariate polynomial, e.g. `q^2 + q + 1`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["family", "word", "n"])]
    pub poly: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Index of the reducible slice `r_n(2, 2 - q)`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
}

impl PolySource {
    pub fn resolve(&self) -> Result<UniPoly, CliError> {
        if let Some(p) = &self.poly {
            return UniPoly::parse(p).map_err(|e| CliError::Usage(format!("--poly: {e}")));
        }
        let n = self
            .n
            .ok_or_else(|| CliError::Usage("give --poly, or a family with --n".into()))?;
        Ok((*self.family.resolve()?.reducible_slice(n)).clone())
    }
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for range commands.
    #[arg(long, env = "CHARVAR_THREADS", global = true)]
    pub threads: Option<usize>,
    /// Run range commands on one thread, in order.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Primes used by the irreducibility test.
    #[arg(long, default_value_t = 8, global = true)]
    pub primes: usize,
    /// Subset budget of factor recombination.
    #[arg(long, default_value_t = 1 << 20, global = true)]
    pub max_subsets: u64,
    #[arg(long, default_value_t = DEFAULT_ROOT_TOL, global = true)]
    pub root_tol: f64,
    #[arg(long, default_value_t = DEFAULT_IDENTITY_TOL, global = true)]
    pub identity_tol: f64,
    #[arg(long, default_value_t = DEFAULT_HOLONOMY_TOL, global = true)]
    pub holonomy_tol: f64,
    /// Aberth iteration budget.
    #[arg(long, default_value_t = 500, global = true)]
    pub max_iterations: usize,
}

impl GlobalOpts {
    pub fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    pub fn irreducibility(&self) -> IrreducibilityOptions {
        IrreducibilityOptions {
            prime_count: self.primes,
            max_subsets: self.max_subsets,
            exec: self.exec(),
            ..IrreducibilityOptions::default()
        }
    }

    pub fn numeric(&self) -> NumericOptions {
        NumericOptions {
            tolerances: Tolerances {
                root: self.root_tol,
                identity: self.identity_tol,
                holonomy: self.holonomy_tol,
            },
            max_iterations: self.max_iterations,
            exec: self.exec(),
        }
    }
}
