use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weilcoh::exterior::ExtIndex;
use weilcoh::fock::{
    big_phi, family_rank, outer_product, phi1, phik, pm_basis_vectors, random_cochain, random_invariant_cochain, star_phi,
    Cochain, DiffMode, InvariantSpace, Involution, Part,
};
use weilcoh::koszul::{
    c_hat, ci_hilbert, det_plus, ideal_quotient_dims, quotient_class_independence, regular_sequence_check, w_monomials,
    KoszulSpec,
};
use weilcoh::poly::{laplacian, minor, q_gen, r_gen, rhat, what, Monomial, Polynomial, Ring, RingSpec};
use weilcoh::spectral::einf_and_converge;
use weilcoh::{rat, Rational};

use crate::args::SuiteArg;
use crate::context::RunConfig;
use crate::error::CliError;
use crate::report::Verdict;

type Co = Cochain<Rational>;
type Poly = Polynomial<Rational>;

pub const SAMPLES: usize = 50;

pub fn run(cfg: &RunConfig) -> Result<Vec<Verdict>, CliError> {
    let mut out = Vec::new();
    let all = cfg.suite == SuiteArg::All;
    if all || cfg.suite == SuiteArg::Signs {
        out.extend(signs(cfg)?);
    }
    if all || cfg.suite == SuiteArg::Closedness {
        out.extend(closedness(cfg)?);
    }
    if all || cfg.suite == SuiteArg::Invariance {
        out.extend(invariance(cfg)?);
    }
    if cfg.suite == SuiteArg::Bases || (all && cfg.k() < cfg.n()) {
        out.extend(bases(cfg)?);
    }
    if all || cfg.suite == SuiteArg::Koszul {
        out.extend(koszul(cfg)?);
    }
    if all || cfg.suite == SuiteArg::Spectral {
        out.extend(spectral(cfg)?);
    }
    Ok(out)
}

/// Tallies a repeated check into one verdict that names the first failing case.
struct Tally {
    name: String,
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            checked: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(case());
        }
    }

    fn verdict(self) -> Verdict {
        match self.failure {
            None => Verdict::new(self.name, true, format!("{} cases", self.checked)),
            Some(f) => Verdict::new(self.name, false, format!("fails at {f}")),
        }
    }
}

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        rat(1, 1)
    } else {
        rat(-1, 1)
    }
}

/// Levels that carry nonzero invariant cochains built from Φ_J and *Φ_J.
fn invariant_levels(s: RingSpec) -> Vec<usize> {
    (0..=s.n).filter(|&l| l <= s.k.min(s.n) || s.n - l <= s.k).collect()
}

fn generators_kill(c: &Co) -> Result<bool, CliError> {
    let n = c.spec().n;
    for a in 1..=n {
        for b in a + 1..=n {
            if !c.son_act(a, b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn signs(cfg: &RunConfig) -> Result<Vec<Verdict>, CliError> {
    let s = cfg.spec;
    let n = s.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let levels = invariant_levels(s);

    let mut inv_sq = Tally::new("d² = 0 on invariant cochains");
    let mut inv_pieces = Tally::new("d₂² = d₋₂² = d₂d₋₂ + d₋₂d₂ = 0 on invariant cochains");
    let mut amb_pieces = Tally::new("d₂² = d₋₂² = 0 on arbitrary cochains");
    let mut involutions = Tally::new("ι and ι′ commute with d");
    let mut rotations = Tally::new("so(n) commutes with d");
    let mut product = Tally::new("product rule");
    let mut double_star = Tally::new("** = (−1)^{ℓ(n−ℓ)}");
    for t in 0..SAMPLES {
        let ell = levels[rng.gen_range(0..levels.len())];
        let c: Co = random_invariant_cochain(&mut rng, s, ell, 3);
        let d = c.diff(DiffMode::Full);
        inv_sq.check(d.diff(DiffMode::Full).is_zero(), || format!("sample {t}, ℓ={ell}"));
        let (up, down) = (c.diff(DiffMode::D2), c.diff(DiffMode::Dm2));
        let mixed = up.diff(DiffMode::Dm2).add(&down.diff(DiffMode::D2));
        let ok = up.diff(DiffMode::D2).is_zero() && down.diff(DiffMode::Dm2).is_zero() && mixed.is_zero() && up.add(&down) == d;
        inv_pieces.check(ok, || format!("sample {t}, ℓ={ell}"));

        let ell = rng.gen_range(0..=n);
        let a: Co = random_cochain(&mut rng, s, ell, 3, 3);
        let ok = a.diff(DiffMode::D2).diff(DiffMode::D2).is_zero() && a.diff(DiffMode::Dm2).diff(DiffMode::Dm2).is_zero();
        amb_pieces.check(ok, || format!("sample {t}, ℓ={ell}"));
        let da = a.diff(DiffMode::Full);
        let ok = [Involution::Iota, Involution::IotaPrime]
            .iter()
            .all(|&w| a.involution(w).diff(DiffMode::Full) == da.involution(w));
        involutions.check(ok, || format!("sample {t}, ℓ={ell}"));
        let mut ok = true;
        for x in 1..=n {
            for y in x + 1..=n {
                ok &= a.son_act(x, y)?.diff(DiffMode::Full) == da.son_act(x, y)?;
            }
        }
        rotations.check(ok, || format!("sample {t}, ℓ={ell}"));
        double_star.check(a.star().star() == a.scale(&sign(ell * (n - ell))), || format!("sample {t}, ℓ={ell}"));

        let la = rng.gen_range(0..=n);
        let lb = rng.gen_range(0..=n - la);
        let a: Co = random_cochain(&mut rng, s, la, 2, 2);
        let b: Co = random_cochain(&mut rng, RingSpec::new(n, 1)?, lb, 2, 2);
        let lhs = outer_product(&a, &b)?.diff(DiffMode::Full);
        let rhs = outer_product(&a.diff(DiffMode::Full), &b)?
            .add(&outer_product(&a, &b.diff(DiffMode::Full))?.scale(&sign(la)));
        product.check(lhs == rhs, || format!("sample {t}, ℓ_a={la}, ℓ_b={lb}"));
    }

    // d′(*Φ_J) = (−1)^{|J|−1} Σ_{j∈J} (−1)^{J(j)} Σ_i w_i r_ij *Φ_{J−j}.
    let mut star_law = Tally::new("d′ on *Φ_J");
    for l in 1..=s.k.min(n) {
        for j in ExtIndex::all_of_len(s.k, l) {
            let lhs = star_phi::<Rational>(s, &j)?.diff(DiffMode::Graded);
            let mut rhs = Co::zero(s, n - l + 1);
            for jj in j.indices() {
                let mut coeff = Poly::zero(&Ring::Fock(s));
                for i in 1..=s.k {
                    coeff = &coeff + &r_gen::<Rational>(s, i, jj)?.mul_var(s.w(i));
                }
                let term = star_phi::<Rational>(s, &j.without(jj))?.mul_poly(&coeff);
                rhs = rhs.add(&term.scale(&sign(j.count_below(jj) + l - 1)));
            }
            star_law.check(lhs == rhs, || format!("J={j}"));
        }
    }

    let mut koszul_d = Tally::new("d′ on 0-cochains is multiplication by (q_α)");
    for t in 0..SAMPLES.min(10) {
        let c: Co = random_cochain(&mut rng, s, 0, 3, 3);
        let f = c.part(&ExtIndex::empty(n));
        let mut expect = Co::zero(s, 1);
        for alpha in 1..=n {
            expect.add_part(ExtIndex::single(n, alpha), &f * &q_gen(s, alpha)?);
        }
        koszul_d.check(c.diff(DiffMode::Graded) == expect, || format!("sample {t}"));
    }

    Ok([
        inv_sq,
        inv_pieces,
        amb_pieces,
        involutions,
        rotations,
        product,
        double_star,
        star_law,
        koszul_d,
    ]
    .into_iter()
    .map(Tally::verdict)
    .collect())
}

pub fn closedness(cfg: &RunConfig) -> Result<Vec<Verdict>, CliError> {
    let s = cfg.spec;
    let mut harmonic = Tally::new("minors are harmonic");
    for size in 1..=s.n.min(s.k) {
        for rows in ExtIndex::all_of_len(s.n, size) {
            for cols in ExtIndex::all_of_len(s.k, size) {
                let f: Poly = minor(s, &rows.indices(), &cols.indices())?;
                for i in 1..=s.k {
                    for j in i..=s.k {
                        harmonic.check(laplacian(&f, i, j)?.is_zero(), || format!("rows {rows}, cols {cols}, Δ_{i}{j}"));
                    }
                }
            }
        }
    }
    let mut closed = Tally::new("φ₁ and φ_k are closed");
    // φ₁ is closed in P_1; with more columns the w_j z(·,1) terms for j ≠ 1 survive.
    let s1 = RingSpec::new(s.n, 1)?;
    closed.check(phi1::<Rational>(s1, 1)?.diff(DiffMode::Full).is_zero(), || "φ₁".into());
    if s.k <= s.n {
        closed.check(phik::<Rational>(s)?.diff(DiffMode::Full).is_zero(), || "φ_k".into());
    }
    Ok(vec![harmonic.verdict(), closed.verdict()])
}

fn from_terms(s: RingSpec, ell: usize, v: &[((ExtIndex, Monomial), Rational)]) -> Co {
    let mut c = Co::zero(s, ell);
    for ((i, m), x) in v {
        c.add_term(*i, m.clone(), x.clone());
    }
    c
}

pub fn invariance(cfg: &RunConfig) -> Result<Vec<Verdict>, CliError> {
    let s = cfg.spec;
    let n = s.n;
    let mut named = Tally::new("φ₁, Φ_J, *Φ_J and vol are invariant");
    for slot in 1..=s.k {
        named.check(generators_kill(&phi1(s, slot)?)?, || format!("φ₁ slot {slot}"));
    }
    for l in 0..=s.k.min(n) {
        for j in ExtIndex::all_of_len(s.k, l) {
            named.check(generators_kill(&big_phi(s, &j)?)?, || format!("Φ_{j}"));
            named.check(generators_kill(&star_phi(s, &j)?)?, || format!("*Φ_{j}"));
        }
    }

    let space = InvariantSpace::new(s, cfg.cap);
    let mut kernel = Tally::new("computed invariant bases are invariant");
    for ell in 0..=n {
        for d in 0..=cfg.max_degree.min(4) {
            for v in space.invariant_basis(ell, d, Part::Full)? {
                kernel.check(generators_kill(&from_terms(s, ell, &v))?, || format!("ℓ={ell}, degree {d}"));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let levels = invariant_levels(s);
    let mut random = Tally::new("random invariant cochains are invariant");
    for t in 0..SAMPLES {
        let ell = levels[rng.gen_range(0..levels.len())];
        let c: Co = random_invariant_cochain(&mut rng, s, ell, 3);
        random.check(generators_kill(&c)?, || format!("sample {t}, ℓ={ell}"));
    }

    // Small cases with known answers: constants, w_i, vol, and for n ≥ 3 the k copies of φ₁.
    let mut examples = Tally::new("invariant dimensions in low degree");
    let dim = |ell, d| space.invariant_dim(ell, d, Part::Full);
    examples.check(dim(0, 0)? == 1, || "ℓ=0, degree 0".into());
    examples.check(dim(n, 0)? == 1, || "ℓ=n, degree 0".into());
    if n >= 2 {
        examples.check(dim(0, 1)? == s.k, || "ℓ=0, degree 1".into());
    }
    if n >= 3 {
        examples.check(dim(1, 1)? == s.k, || "ℓ=1, degree 1".into());
    }
    Ok(vec![named.verdict(), kernel.verdict(), random.verdict(), examples.verdict()])
}

pub fn bases(cfg: &RunConfig) -> Result<Vec<Verdict>, CliError> {
    let s = cfg.spec;
    if s.k >= s.n {
        return Err(CliError::Usage(format!(
            "the bases suite needs k < n (got n={}, k={})",
            s.n, s.k
        )));
    }
    let space = InvariantSpace::new(s, cfg.cap);
    let mut independent = Tally::new("the ± families are linearly independent");
    let mut spanning = Tally::new("the ± families span the invariants");
    for part in [Part::Plus, Part::Minus] {
        for ell in 0..=s.n {
            for d in 0..=cfg.max_degree {
                let fam = pm_basis_vectors(part, ell, d, s)?;
                let rank = family_rank(&fam, cfg.cap)?;
                let want = space.invariant_dim(ell, d, part)?;
                let label = if part == Part::Plus { "+" } else { "−" };
                independent.check(rank == fam.len(), || format!("{label} ℓ={ell} degree {d}: {} vectors, rank {rank}", fam.len()));
                spanning.check(rank == want, || format!("{label} ℓ={ell} degree {d}: rank {rank}, invariants {want}"));
            }
        }
    }
    Ok(vec![independent.verdict(), spanning.verdict()])
}

fn regular_with_series(ks: &KoszulSpec, window: u32, cap: usize) -> Result<(bool, String), CliError> {
    let reg = regular_sequence_check(ks, window, cap)?;
    let quotient = ideal_quotient_dims(ks, window, cap)?;
    let series = ci_hilbert(&ks.ring().var_degrees(), ks.degrees(), window)?;
    let matches = series.iter().map(|&x| x as usize).eq(quotient.iter().copied());
    let detail = match reg.first_failure() {
        Some((t, d)) => format!("element {t} has a kernel at degree {d}"),
        None if !matches => format!("quotient {quotient:?} vs series {series:?}"),
        None => String::new(),
    };
    Ok((reg.regular() && matches, detail))
}

fn both_orders(ring: &Ring, first: &[Poly], second: &[Poly], window: u32, cap: usize) -> Result<bool, CliError> {
    for seq in [[first, second].concat(), [second, first].concat()] {
        let ks = KoszulSpec::new(ring.clone(), seq)?;
        if !regular_sequence_check(&ks, window, cap)?.regular() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn koszul(cfg: &RunConfig) -> Result<Vec<Verdict>, CliError> {
    let s = cfg.spec;
    let (k, d) = (s.k, cfg.max_degree);
    let mut out = Vec::new();
    for (name, ks) in [("(ŵ) is regular in S_k", KoszulSpec::k_plus(k)?), ("(ĉ) is regular in S_k", KoszulSpec::k_minus(k)?)] {
        let (ok, detail) = regular_with_series(&ks, d, cfg.cap)?;
        out.push(Verdict::new(name, ok, detail));
    }

    let sk = Ring::invariant(k)?;
    let mut off: Vec<Poly> = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            off.push(Poly::var(&sk, rhat(k, i, j)));
        }
    }
    let c: Vec<Poly> = (1..=k).map(|j| c_hat(k, j)).collect();
    out.push(Verdict::new(
        "(r̂_ij, i<j) and (ĉ) are regular in either order",
        both_orders(&sk, &off, &c, d, cfg.cap)?,
        "",
    ));

    let km = KoszulSpec::k_minus(k)?;
    let mut classes = Tally::new("ŵ-monomials are independent in S_k/(ĉ)");
    for deg in 0..=d.min(5) {
        let nv = sk.nvars();
        let ws: Vec<usize> = (1..=k).map(|i| what(k, i)).collect();
        let ms = weilcoh::poly::monomials_in_vars(nv, &ws, &vec![1; nv], deg);
        let polys: Vec<Poly> = ms.into_iter().map(|m| Poly::monomial(&sk, m, rat(1, 1))).collect();
        let rep = quotient_class_independence(&km, &polys, deg, cfg.cap)?;
        classes.check(rep.independent(), || format!("degree {deg}"));
    }
    out.push(classes.verdict());

    if k >= s.n {
        let (ok, detail) = regular_with_series(&KoszulSpec::model_a(s)?, d, cfg.cap)?;
        out.push(Verdict::new("(q) is regular in P_k", ok, detail));

        let ring = Ring::Fock(s);
        let mut z = Vec::new();
        for alpha in 1..=s.n {
            for i in 1..=k {
                if alpha != i {
                    z.push(Poly::var(&ring, s.z(alpha, i)));
                }
            }
        }
        let q: Vec<Poly> = (1..=s.n).map(|a| q_gen(s, a)).collect::<weilcoh::Result<_>>()?;
        out.push(Verdict::new(
            "off-diagonal z and (q) are regular in either order",
            both_orders(&ring, &z, &q, d.min(4), cfg.cap)?,
            "",
        ));
    }
    if k > s.n {
        out.push(det_injection(s, d.min(3), cfg.cap)?);
    }
    Ok(out)
}

/// f ↦ det₊·f is injective from polynomials in w_{n+1..k} of degree ≤ `max` into P_k/(q).
pub fn det_injection(s: RingSpec, max: u32, cap: usize) -> Result<Verdict, CliError> {
    let a = KoszulSpec::model_a(s)?;
    let det = det_plus(s)?;
    let mut t = Tally::new("det₊ times w-monomials is injective into P_k/(q)");
    for deg in 0..=max {
        let classes: Vec<Poly> = w_monomials(s, s.n + 1, deg)
            .iter()
            .map(|m| det.mul_monomial(m, &rat(1, 1)))
            .collect();
        let rep = quotient_class_independence(&a, &classes, deg + s.n as u32, cap)?;
        t.check(rep.independent(), || format!("deg f = {deg}"));
    }
    Ok(t.verdict())
}

pub fn spectral(cfg: &RunConfig) -> Result<Vec<Verdict>, CliError> {
    let s = cfg.spec;
    let rep = einf_and_converge(s, cfg.part, cfg.max_degree, cfg.buffer, cfg.cap)?;
    let mut out = vec![
        Verdict::new("E_inf equals gr H", rep.converged(), format!("{} mismatches", rep.mismatches())),
        Verdict::new("pages are monotone", rep.monotone(), ""),
    ];
    if s.k < s.n {
        out.push(Verdict::new("E_inf equals E1", rep.degenerates_at_e1(), ""));
    }
    let e1 = &rep.pages[0];
    let row = |ell: usize| -> Option<usize> {
        let cells: Vec<_> = e1.cells.iter().filter(|c| c.ell == ell).collect();
        cells.iter().map(|c| c.dim).sum::<Option<usize>>()
    };
    let mut vanishing = Tally::new("E1 vanishing forces H vanishing");
    let mut isolated = Tally::new("H equals E1 between vanishing rows");
    for ell in 0..=s.n {
        let direct: Vec<_> = rep.direct.iter().filter(|c| c.ell == ell && c.stabilized()).collect();
        if row(ell) == Some(0) {
            vanishing.check(direct.iter().all(|c| c.dim() == 0), || format!("ℓ={ell}"));
        }
        let below = ell == 0 || row(ell - 1) == Some(0);
        let above = ell == s.n || row(ell + 1) == Some(0);
        if below && above {
            for c in &direct {
                if let Some(e) = e1.get(ell, c.degree).and_then(|x| x.dim) {
                    isolated.check(e == c.dim(), || format!("ℓ={ell}, degree {}", c.degree));
                }
            }
        }
    }
    out.push(vanishing.verdict());
    out.push(isolated.verdict());
    Ok(out)
}
