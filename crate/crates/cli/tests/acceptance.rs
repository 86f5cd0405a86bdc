//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use weilcoh::koszul::{ideal_quotient_dims, quotient_class_independence, KoszulSpec};
use weilcoh::linalg::DEFAULT_MAX_ENTRIES as CAP;
use weilcoh::poly::{what, Monomial, Polynomial, Ring, RingSpec};
use weilcoh::{rat, Rational};
use weilcoh_cli::commands::quotient_invariant_dims;
use weilcoh_cli::report::ReportDocument;
use weilcoh_cli::{run_with_env, suites};

type Check = Result<String, String>;

fn run(args: &str) -> (i32, ReportDocument) {
    let out = run_with_env(std::iter::once("weilcoh").chain(args.split_whitespace()), None);
    let doc = out.document.unwrap_or_else(|| panic!("`{args}` did not parse: {}", out.stderr));
    (out.code, doc)
}

/// Runs a command and requires exit code 0.
fn passing(args: &str) -> Result<ReportDocument, String> {
    let (code, doc) = run(args);
    if code != 0 {
        let failed: Vec<String> = doc.verdicts.iter().filter(|v| !v.pass).map(|v| format!("{}: {}", v.name, v.detail)).collect();
        return Err(format!("`{args}` exited {code}: {}", failed.join("; ")));
    }
    Ok(doc)
}

fn table(doc: &ReportDocument, name: &str) -> Result<Vec<(usize, u32, usize, bool)>, String> {
    doc.table(name)
        .map(|t| t.cells.iter().map(|c| (c.ell, c.degree, c.dim, c.stabilized)).collect())
        .ok_or_else(|| format!("missing table {name}"))
}

fn binom(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let mut runs = 0;
    for n in 1..=4 {
        for k in 1..=3 {
            passing(&format!("verify --suite signs --n {n} --k {k} --seed {}", 10 * n + k))?;
            runs += 1;
        }
    }
    Ok(format!("sign identities hold on {runs} (n,k) pairs, {} samples each", suites::SAMPLES))
}

fn criterion_2() -> Check {
    let mut runs = 0;
    for n in 1..=5 {
        for k in 1..=4.max(n) {
            if n <= 4 || k <= n {
                passing(&format!("verify --suite closedness --n {n} --k {k}"))?;
                runs += 1;
            }
        }
    }
    Ok(format!("minors harmonic and φ₁, φ_k closed on {runs} (n,k) pairs"))
}

fn criterion_3() -> Check {
    for (n, k) in [(3, 1), (3, 2), (4, 2), (4, 3)] {
        passing(&format!("verify --suite bases --n {n} --k {k} --max-degree 6"))?;
    }
    Ok("± families independent and spanning through degree 6".into())
}

fn criterion_4() -> Check {
    for k in 1..=3 {
        for model in ["cplus", "cminus"] {
            passing(&format!("koszul --model {model} --k {k} --max-degree 6"))?;
        }
    }
    for (n, k) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        passing(&format!("koszul --model a --n {n} --k {k} --max-degree 6"))?;
    }
    let s1 = passing("koszul --model cminus --k 1 --max-degree 6")?;
    let dims: Vec<usize> = table(&s1, "quotient")?.iter().map(|c| c.2).collect();
    ensure(dims == [1, 1, 2, 1, 2, 1, 2], || format!("S_1/(c_1) has dims {dims:?}"))?;
    let zw = passing("koszul --model a --n 1 --k 1 --max-degree 6")?;
    let dims: Vec<usize> = table(&zw, "quotient")?.iter().map(|c| c.2).collect();
    ensure(dims == [1, 2, 2, 2, 2, 2, 2], || format!("Q[z,w]/(zw) has dims {dims:?}"))?;
    Ok("all sequences regular with complete-intersection quotients through degree 6".into())
}

fn criterion_5() -> Check {
    let mut cells = 0;
    for (n, k) in [(3, 1), (3, 2), (4, 2)] {
        let plus = passing(&format!("cohom --n {n} --k {k} --part plus --max-degree 6 --buffer 2"))?;
        for (ell, d, dim, stable) in table(&plus, "H/plus")? {
            let d = d as usize;
            let want = if ell == k && d >= k && (d - k).is_multiple_of(2) {
                let t = (d - k) / 2;
                binom(t + k * (k + 1) / 2 - 1, t)
            } else {
                0
            };
            ensure(stable && dim == want, || format!("({n},{k}) plus H^{ell} degree {d}: {dim}, expected {want}"))?;
            cells += 1;
        }
        let quotient = ideal_quotient_dims(&KoszulSpec::k_minus(k).map_err(|e| e.to_string())?, 6, CAP).map_err(|e| e.to_string())?;
        let minus = passing(&format!("cohom --n {n} --k {k} --part minus --max-degree 6 --buffer 2"))?;
        for (ell, d, dim, stable) in table(&minus, "H/minus")? {
            let want = if ell == n { quotient[d as usize] } else { 0 };
            ensure(stable && dim == want, || format!("({n},{k}) minus H^{ell} degree {d}: {dim}, expected {want}"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} certified cells match the closed forms"))
}

fn criterion_6() -> Check {
    let mut report = Vec::new();
    for (n, k) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let s = RingSpec::new(n, k).map_err(|e| e.to_string())?;
        let doc = passing(&format!("cohom --n {n} --k {k} --part full --max-degree 4 --buffer 2"))?;
        let want = quotient_invariant_dims(s, 4, CAP).map_err(|e| e.to_string())?;
        let mut top = Vec::new();
        for (ell, d, dim, stable) in table(&doc, "H/full")? {
            ensure(stable, || format!("({n},{k}) H^{ell} degree {d} not stabilized"))?;
            if ell < n {
                ensure(dim == 0, || format!("({n},{k}) H^{ell} degree {d} = {dim}"))?;
            } else {
                top.push(dim);
            }
        }
        ensure(top == want, || format!("({n},{k}) H^n = {top:?}, invariants of P/(q) = {want:?}"))?;
        let a = KoszulSpec::model_a(s).map_err(|e| e.to_string())?;
        let one = Polynomial::one(&Ring::Fock(s));
        let rep = quotient_class_independence(&a, &[one], 0, CAP).map_err(|e| e.to_string())?;
        ensure(rep.independent() && top[0] >= 1, || format!("({n},{k}) the class of 1 vanishes"))?;
        report.push(format!("({n},{k}) H^n = {top:?}"));
    }
    Ok(report.join(", "))
}

fn criterion_7() -> Check {
    for (n, k) in [(3, 1), (2, 2)] {
        let doc = passing(&format!("pages --n {n} --k {k} --max-degree 4 --buffer 2"))?;
        let einf = table(&doc, "Einf")?;
        let grh = table(&doc, "grH")?;
        for (e, h) in einf.iter().zip(&grh) {
            ensure((e.0, e.1) == (h.0, h.1), || "E_inf and gr H cells out of step".into())?;
            ensure(!h.3 || e.2 == h.2, || format!("({n},{k}) ℓ={} degree {}: E_inf {} vs gr H {}", e.0, e.1, e.2, h.2))?;
        }
        if k < n {
            let e1 = table(&doc, "E1")?;
            ensure(e1 == einf, || format!("({n},{k}) E_inf differs from E1"))?;
        }
    }
    Ok("E_inf agrees with gr H on every stabilized cell".into())
}

fn criterion_8() -> Check {
    for k in 1..=2 {
        let km = KoszulSpec::k_minus(k).map_err(|e| e.to_string())?;
        let ring = Ring::Invariant { k };
        let nv = ring.nvars();
        let ws: Vec<usize> = (1..=k).map(|i| what(k, i)).collect();
        for d in 0..=5 {
            let classes: Vec<Polynomial<Rational>> = weilcoh::poly::monomials_in_vars(nv, &ws, &vec![1; nv], d)
                .into_iter()
                .map(|m: Monomial| Polynomial::monomial(&ring, m, rat(1, 1)))
                .collect();
            let rep = quotient_class_independence(&km, &classes, d, CAP).map_err(|e| e.to_string())?;
            ensure(rep.independent(), || format!("k={k}: ŵ-monomials of degree {d} are dependent mod (ĉ)"))?;
        }
    }
    let v = suites::det_injection(RingSpec::new(1, 2).unwrap(), 3, CAP).map_err(|e| e.to_string())?;
    ensure(v.pass, || format!("det₊ classes: {}", v.detail))?;
    Ok("ŵ-monomials independent mod (ĉ) through degree 5, det₊ injective through deg f = 3".into())
}

fn criterion_9() -> Check {
    let commands = [
        "cohom --n 3 --k 2 --part minus --max-degree 6",
        "e1 --n 2 --k 2 --max-degree 4",
        "pages --n 3 --k 1 --max-degree 4",
        "koszul --model a --n 2 --k 2 --max-degree 5",
        "hilbert --model cminus --k 2 --max-degree 8",
        "verify --suite signs --n 3 --k 2 --seed 11",
    ];
    for args in commands {
        let (ca, a) = run(args);
        let (cb, b) = run(args);
        ensure(ca == cb && a.canonical_json() == b.canonical_json(), || format!("`{args}` is not reproducible"))?;
    }
    let bin = env!("CARGO_BIN_EXE_weilcoh");
    let args = ["cohom", "--n", "3", "--k", "1", "--max-degree", "6", "--format", "csv"];
    let a = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
    let b = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
    ensure(a.status.success() && a.stdout == b.stdout, || "binary output differs between runs".into())?;
    Ok(format!("{} commands byte-identical across reruns", commands.len() + 1))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Check; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = c();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("criterion {}: PASS ({secs:.1}s) {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL ({secs:.1}s) {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
