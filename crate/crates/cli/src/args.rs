use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "weilcoh", version, about = "Exact cohomology of the Fock-model cochain complex of so(n,1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filtration-graded direct cohomology with buffer certification.
    Cohom(Options),
    /// E₁ page of the polynomial-degree spectral sequence.
    E1(Options),
    /// All pages, E_∞ and the comparison with direct cohomology.
    Pages(Options),
    /// Koszul cohomology, quotient dimensions and regularity of a model sequence.
    Koszul(Options),
    /// Complete-intersection Hilbert series of a model.
    Hilbert(Options),
    /// Named verification suites.
    Verify(Options),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cohom(_) => "cohom",
            Command::E1(_) => "e1",
            Command::Pages(_) => "pages",
            Command::Koszul(_) => "koszul",
            Command::Hilbert(_) => "hilbert",
            Command::Verify(_) => "verify",
        }
    }

    pub fn options(&self) -> &Options {
        match self {
            Command::Cohom(o) | Command::E1(o) | Command::Pages(o) | Command::Koszul(o) | Command::Hilbert(o) | Command::Verify(o) => o,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    Plus,
    Minus,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// (q_1..q_n) in P_k.
    A,
    /// (ŵ_1..ŵ_k) in S_k.
    Cplus,
    /// (ĉ_1..ĉ_k) in S_k.
    Cminus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Signs,
    Closedness,
    Invariance,
    Bases,
    Koszul,
    Spectral,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// A single degree or an inclusive range `a..b`.
    #[arg(long)]
    pub ell: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 2)]
    pub buffer: u32,
    #[arg(long, value_enum, default_value_t = PartArg::Full)]
    pub part: PartArg,
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// Overrides WEILCOH_MAX_ENTRIES.
    #[arg(long)]
    pub max_entries: Option<usize>,
}

/// Parses `a` or `a..b` (inclusive).
pub fn parse_ell(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("invalid --ell {s:?}: expected an integer or a range a..b");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let a: usize = s.trim().parse().map_err(|_| bad())?;
            Ok((a, a))
        }
    }
}
