use weilcoh::fock::Part;
use weilcoh::poly::RingSpec;

use crate::args::{ModelArg, Options, PartArg, SuiteArg};
use crate::error::CliError;

pub const MAX_DEGREE_CAP: u32 = 40;
pub const MAX_ENTRIES_ENV: &str = "WEILCOH_MAX_ENTRIES";

/// Validated parameters shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: RingSpec,
    pub ell: Option<(usize, usize)>,
    pub max_degree: u32,
    pub buffer: u32,
    pub part: Part,
    pub model: Option<ModelArg>,
    pub seed: u64,
    pub suite: SuiteArg,
    pub cap: usize,
}

impl RunConfig {
    pub fn from_options(o: &Options, env_cap: Option<&str>) -> Result<Self, CliError> {
        if !(1..=8).contains(&o.n) || !(1..=8).contains(&o.k) {
            return Err(CliError::Usage(format!("n and k must lie in 1..=8 (got n={}, k={})", o.n, o.k)));
        }
        if o.buffer < 2 || !o.buffer.is_multiple_of(2) {
            return Err(CliError::Usage(format!("--buffer must be even and at least 2 (got {})", o.buffer)));
        }
        if o.max_degree > MAX_DEGREE_CAP {
            return Err(CliError::Usage(format!("--max-degree is capped at {MAX_DEGREE_CAP}")));
        }
        let ell = o.ell.as_deref().map(crate::args::parse_ell).transpose().map_err(CliError::Usage)?;
        let cap = match (o.max_entries, env_cap) {
            (Some(c), _) => c,
            (None, Some(v)) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{MAX_ENTRIES_ENV}={v:?} is not an integer")))?,
            (None, None) => weilcoh::linalg::DEFAULT_MAX_ENTRIES,
        };
        let part = match o.part {
            PartArg::Plus => Part::Plus,
            PartArg::Minus => Part::Minus,
            PartArg::Full => Part::Full,
        };
        Ok(RunConfig {
            spec: RingSpec::new(o.n, o.k)?,
            ell,
            max_degree: o.max_degree,
            buffer: o.buffer,
            part,
            model: o.model,
            seed: o.seed,
            suite: o.suite,
            cap,
        })
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    /// The requested cochain degrees, defaulting to 0..=top.
    pub fn ells(&self, top: usize) -> Vec<usize> {
        match self.ell {
            Some((a, b)) => (a..=b).collect(),
            None => (0..=top).collect(),
        }
    }
}

pub fn part_name(p: Part) -> &'static str {
    match p {
        Part::Plus => "plus",
        Part::Minus => "minus",
        Part::Full => "full",
    }
}
