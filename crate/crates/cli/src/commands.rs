use weilcoh::fock::{build_complex, direct_cohomology_dims, InvariantSpace, Part};
use weilcoh::koszul::{ci_hilbert, ideal_quotient_dims, koszul_cohomology_dims, regular_sequence_check, KoszulSpec};
use weilcoh::poly::{q_gen, Ring, RingSpec};
use weilcoh::spectral::{einf_and_converge, PageData, SpectralSequence, Verdict as CellVerdict};
use weilcoh::Rational;

use crate::args::ModelArg;
use crate::context::{part_name, RunConfig};
use crate::error::CliError;
use crate::report::{Cell, Table, Verdict};

pub type Output = (Vec<Table>, Vec<Verdict>);

pub fn cohom(cfg: &RunConfig) -> Result<Output, CliError> {
    let ells = cfg.ells(cfg.n());
    let cells = direct_cohomology_dims(cfg.spec, cfg.part, &ells, cfg.max_degree, cfg.buffer, cfg.cap)?;
    let stable = cells.iter().filter(|c| c.stabilized()).count();
    let table = Table {
        name: format!("H/{}", part_name(cfg.part)),
        cells: cells.iter().map(|c| Cell::new(c.ell, c.degree, c.dim(), c.stabilized())).collect(),
    };
    let verdict = Verdict::new(
        "stabilization",
        stable == cells.len(),
        format!(
            "{stable} of {} cells agree at buffers {}, {}, {}",
            cells.len(),
            cfg.buffer,
            cfg.buffer + 2,
            cfg.buffer + 4
        ),
    );
    Ok((vec![table], vec![verdict]))
}

fn page_table(name: String, page: &PageData, ells: &[usize], r: Option<u32>) -> (Table, usize) {
    let mut undecided = 0;
    let cells = page
        .cells
        .iter()
        .filter(|c| ells.contains(&c.ell))
        .filter_map(|c| match c.dim {
            Some(dim) => Some(Cell {
                p: Some(c.bigrading.p),
                q: Some(c.bigrading.q),
                r,
                ..Cell::new(c.ell, c.degree, dim, true)
            }),
            None => {
                undecided += 1;
                None
            }
        })
        .collect();
    (Table { name, cells }, undecided)
}

/// dim (P_k/(q))^{SO(n)} in degrees 0..=window.
pub fn quotient_invariant_dims(s: RingSpec, window: u32, cap: usize) -> Result<Vec<usize>, CliError> {
    let q = (1..=s.n).map(|a| q_gen::<Rational>(s, a)).collect::<weilcoh::Result<Vec<_>>>()?;
    let space = InvariantSpace::new(s, cap);
    Ok((0..=window).map(|d| space.quotient_invariant_dim(&q, d)).collect::<weilcoh::Result<Vec<_>>>()?)
}

pub fn e1(cfg: &RunConfig) -> Result<Output, CliError> {
    let cx = build_complex(cfg.spec, cfg.part, cfg.max_degree + 2, cfg.cap)?;
    let ss = SpectralSequence::from_complex(cfg.spec, cfg.part, cfg.max_degree, cx);
    let page = ss.e1()?;
    let ells = cfg.ells(cfg.n());
    let (table, _) = page_table("E1".into(), &page, &ells, Some(1));
    let mut verdicts = Vec::new();
    let n = cfg.n();
    if cfg.k() >= n && cfg.part == Part::Full {
        let want = quotient_invariant_dims(cfg.spec, cfg.max_degree, cfg.cap)?;
        let top: Vec<usize> = (0..=cfg.max_degree).map(|d| page.get(n, d).and_then(|c| c.dim).unwrap_or(0)).collect();
        verdicts.push(Verdict::new(
            "E1 top row equals invariants of P_k/(q)",
            top == want,
            format!("E1 {top:?}, quotient invariants {want:?}"),
        ));
        let below = page.cells.iter().filter(|c| c.ell < n).all(|c| c.dim == Some(0));
        verdicts.push(Verdict::new("E1 vanishes below the top degree", below, ""));
    }
    Ok((vec![table], verdicts))
}

pub fn pages(cfg: &RunConfig) -> Result<Output, CliError> {
    let rep = einf_and_converge(cfg.spec, cfg.part, cfg.max_degree, cfg.buffer, cfg.cap)?;
    let ells = cfg.ells(cfg.n());
    let mut tables = Vec::new();
    let mut undecided = 0;
    for page in &rep.pages {
        let (t, u) = page_table(format!("E{}", page.r), page, &ells, Some(page.r));
        undecided += u;
        tables.push(t);
    }
    let (t, u) = page_table("Einf".into(), &rep.e_infinity, &ells, None);
    undecided += u;
    tables.push(t);
    tables.push(Table {
        name: "grH".into(),
        cells: rep
            .direct
            .iter()
            .filter(|c| ells.contains(&c.ell))
            .map(|c| Cell::new(c.ell, c.degree, c.dim(), c.stabilized()))
            .collect(),
    });
    let count = |v: CellVerdict| rep.comparisons.iter().filter(|c| c.verdict == v).count();
    let mut verdicts = vec![
        Verdict::new(
            "E_inf equals gr H",
            rep.converged(),
            format!(
                "{} agree, {} mismatch, {} inconclusive",
                count(CellVerdict::Agree),
                count(CellVerdict::Mismatch),
                count(CellVerdict::Inconclusive)
            ),
        ),
        Verdict::new("pages are monotone", rep.monotone(), ""),
        Verdict::new("every page cell decided", undecided == 0, format!("{undecided} undecided cells")),
    ];
    if cfg.k() < cfg.n() {
        verdicts.push(Verdict::new("E_inf equals E1", rep.degenerates_at_e1(), ""));
    }
    Ok((tables, verdicts))
}

pub fn model_spec(cfg: &RunConfig) -> Result<KoszulSpec, CliError> {
    let model = cfg.model.ok_or_else(|| CliError::Usage("--model is required (a, cplus or cminus)".into()))?;
    Ok(match model {
        ModelArg::A => KoszulSpec::model_a(cfg.spec)?,
        ModelArg::Cplus => KoszulSpec::k_plus(cfg.k())?,
        ModelArg::Cminus => KoszulSpec::k_minus(cfg.k())?,
    })
}

/// (variable degrees, sequence degrees) of a model.
pub fn model_degrees(cfg: &RunConfig) -> Result<(Vec<u32>, Vec<u32>), CliError> {
    let model = cfg.model.ok_or_else(|| CliError::Usage("--model is required (a, cplus or cminus)".into()))?;
    let (n, k) = (cfg.n(), cfg.k());
    let sk = Ring::Invariant { k }.var_degrees();
    Ok(match model {
        ModelArg::A => (vec![1; (n + 1) * k], vec![2; n]),
        ModelArg::Cplus => (sk, vec![1; k]),
        ModelArg::Cminus => (sk, vec![3; k]),
    })
}

pub fn koszul(cfg: &RunConfig) -> Result<Output, CliError> {
    let ks = model_spec(cfg)?;
    let m = ks.sequence().len();
    let d = cfg.max_degree;
    let mut cells = Vec::new();
    let mut acyclic = true;
    for ell in 0..=m {
        let dims = koszul_cohomology_dims(&ks, ell, d, cfg.cap)?;
        if ell < m && dims.iter().any(|&x| x > 0) {
            acyclic = false;
        }
        if cfg.ells(m).contains(&ell) {
            cells.extend(dims.iter().enumerate().map(|(deg, &x)| Cell::new(ell, deg as u32, x, true)));
        }
    }
    let quotient = ideal_quotient_dims(&ks, d, cfg.cap)?;
    let reg = regular_sequence_check(&ks, d, cfg.cap)?;
    let (vars, seq) = model_degrees(cfg)?;
    let ci = ci_hilbert(&vars, &seq, d);
    let ci_detail = match &ci {
        Ok(c) => format!("quotient {quotient:?}, series {c:?}"),
        Err(e) => e.to_string(),
    };
    let ci_ok = matches!(&ci, Ok(c) if c.iter().map(|&x| x as usize).eq(quotient.iter().copied()));
    let reg_detail = match reg.first_failure() {
        None => format!("injective through degree {d}"),
        Some((t, deg)) => format!("element {t} has a kernel at degree {deg}"),
    };
    let tables = vec![
        Table { name: "koszul".into(), cells },
        Table {
            name: "quotient".into(),
            cells: quotient.iter().enumerate().map(|(deg, &x)| Cell::new(m, deg as u32, x, true)).collect(),
        },
    ];
    let verdicts = vec![
        Verdict::new("regular sequence", reg.regular(), reg_detail),
        Verdict::new("acyclic below the top degree", acyclic, ""),
        Verdict::new("quotient matches complete-intersection series", ci_ok, ci_detail),
    ];
    Ok((tables, verdicts))
}

pub fn hilbert(cfg: &RunConfig) -> Result<Output, CliError> {
    let (vars, seq) = model_degrees(cfg)?;
    let series = ci_hilbert(&vars, &seq, cfg.max_degree)?;
    let table = Table {
        name: "hilbert".into(),
        cells: series
            .iter()
            .enumerate()
            .map(|(deg, &x)| Cell::new(seq.len(), deg as u32, x as usize, true))
            .collect(),
    };
    Ok((vec![table], vec![]))
}
