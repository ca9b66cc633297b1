use std::fs;
use std::path::{Path, PathBuf};

use ginv_core::batch;
use ginv_core::block::{corner_factorizations, corner_of, BlockContext, Corner};
use ginv_core::generator::{condition_holds, gen_instance, ConditionTag, GenSpec};
use ginv_core::geninv::{self, group_inverse};
use ginv_core::io::{Block, InstanceFile};
use ginv_core::oracle::verify_drazin_axioms;
use ginv_core::selftest::{self, Config, FLOAT_TOL};
use ginv_core::theorems::{md_cor_43a, md_theorem_42, Case, TheoremId, VerificationReport};
use ginv_core::{worked_example, Error, Matrix, Rational, Result, Scalar, ScalarMode};
use serde_json::json;

use crate::exit_code;

pub const DEFAULT_SEED: u64 = 20240601;

fn load(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    InstanceFile::parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn select(file: &InstanceFile, mode: Option<ScalarMode>, block: Option<Block>) -> Result<(ScalarMode, Matrix<Rational>)> {
    let m = file.reference_matrix(block.unwrap_or_else(|| file.default_block()))?;
    Ok((mode.unwrap_or(file.scalar), m))
}

fn drazin_report<T: Scalar>(a: &Matrix<T>) -> Result<u8> {
    let d = geninv::drazin(a)?;
    let check = verify_drazin_axioms(a, &d.inverse)?;
    println!("index: {}", d.index);
    println!("drazin inverse:\n{}", d.inverse);
    println!("axioms: {}", if check.holds { "hold" } else { "FAIL" });
    if T::MODE == ScalarMode::Float {
        println!("max residual: {:e}", check.residuals.iter().copied().fold(0.0, f64::max));
    }
    if check.holds {
        Ok(0)
    } else {
        Err(Error::VerificationFailure("Drazin equations do not hold".into()))
    }
}

pub fn drazin(path: &Path, mode: Option<ScalarMode>, block: Option<Block>) -> Result<u8> {
    let (mode, m) = select(&load(path)?, mode, block)?;
    match mode {
        ScalarMode::Rational => drazin_report(&m),
        ScalarMode::Float => drazin_report(&m.cast::<f64>()),
    }
}

fn group_report<T: Scalar>(a: &Matrix<T>) -> Result<u8> {
    match group_inverse(a) {
        Ok(g) => {
            println!("group inverse:\n{g}");
            if T::MODE == ScalarMode::Float {
                println!("max residual: {:e}", (&(&(a * &g) * a) - a).frobenius_norm());
            }
            Ok(0)
        }
        Err(Error::GroupInverseDoesNotExist) => {
            println!("group inverse does not exist (index {})", geninv::index(a)?);
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

pub fn group(path: &Path, mode: Option<ScalarMode>, block: Option<Block>) -> Result<u8> {
    let (mode, m) = select(&load(path)?, mode, block)?;
    match mode {
        ScalarMode::Rational => group_report(&m),
        ScalarMode::Float => group_report(&m.cast::<f64>()),
    }
}

pub fn index(path: &Path, mode: Option<ScalarMode>, block: Option<Block>) -> Result<u8> {
    let (mode, m) = select(&load(path)?, mode, block)?;
    let k = match mode {
        ScalarMode::Rational => geninv::index(&m)?,
        ScalarMode::Float => geninv::index(&m.cast::<f64>())?,
    };
    println!("{k}");
    Ok(0)
}

fn schur_report<T: Scalar>(ctx: &BlockContext<T>) {
    let s = &ctx.schur;
    for (name, m) in [
        ("S = A - C D^d B", &s.s_complement),
        ("Z = D - B A^d C", &s.z_complement),
        ("s = A^e S A^e", &s.s),
        ("z = D^e Z D^e", &s.z),
        ("s1 = A^pi S A^pi", &s.s1),
        ("z1 = D^pi Z D^pi", &s.z1),
    ] {
        println!("{name}:\n{m}");
    }
}

pub fn schur(path: &Path, mode: Option<ScalarMode>) -> Result<u8> {
    let file = load(path)?;
    let inst = file.reference_blocks()?;
    match mode.unwrap_or(file.scalar) {
        ScalarMode::Rational => schur_report(&BlockContext::new(&inst)?),
        ScalarMode::Float => schur_report(&BlockContext::new(&inst.cast::<f64>())?),
    }
    Ok(0)
}

fn peirce_report<T: Scalar>(ctx: &BlockContext<T>, corner: Corner) -> u8 {
    let dec = corner_of(ctx, corner);
    println!("projector {corner:?}:\n{}", dec.projector);
    println!("M_{corner:?} = {corner:?} M {corner:?}:\n{}", dec.compressed);
    if corner == Corner::E {
        let ok = corner_factorizations(ctx).iter().all(|f| f.product().approx_eq(&dec.compressed));
        println!("block factorizations reproduce M_E: {ok}");
        if !ok {
            return 3;
        }
    }
    0
}

pub fn peirce(path: &Path, mode: Option<ScalarMode>, corner: Corner) -> Result<u8> {
    let file = load(path)?;
    let inst = file.reference_blocks()?;
    Ok(match mode.unwrap_or(file.scalar) {
        ScalarMode::Rational => peirce_report(&BlockContext::new(&inst)?, corner),
        ScalarMode::Float => peirce_report(&BlockContext::new(&inst.cast::<f64>())?, corner),
    })
}

fn summary(report: &VerificationReport) -> String {
    let mut line = format!(
        "{}: {}",
        report.theorem_id,
        if report.matched { "match" } else { "MISMATCH" }
    );
    let failed = report.failed_hypotheses();
    if !failed.is_empty() {
        line.push_str(&format!("; hypothesis failed: {}", failed.join(", ")));
    }
    if report.mode == ScalarMode::Float {
        line.push_str(&format!("; max residual {:e}", report.max_residual()));
    }
    line
}

fn verify_file(id: TheoremId, path: &Path, strict: bool, mode: Option<ScalarMode>) -> Result<VerificationReport> {
    let file = load(path)?;
    file.case(mode.unwrap_or(file.scalar))?.verify(id, strict)
}

pub fn verify(theorem: &str, path: &Path, strict: bool, mode: Option<ScalarMode>, out: Option<&Path>) -> Result<u8> {
    let id: TheoremId = theorem.parse()?;
    let report = verify_file(id, path, strict, mode)?;
    write_out(out, &report.to_json_string())?;
    eprintln!("{}", summary(&report));
    Ok(if report.matched { 0 } else { 1 })
}

pub fn verify_batch(
    theorem: &str,
    dir: &Path,
    strict: bool,
    mode: Option<ScalarMode>,
    out: Option<&Path>,
) -> Result<u8> {
    let id: TheoremId = theorem.parse()?;
    let entries = fs::read_dir(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let results = batch::map(&files, |path| verify_file(id, path, strict, mode));

    let mut code = 0;
    let mut first_error = None;
    let mut records = Vec::with_capacity(files.len());
    for (path, result) in files.iter().zip(results) {
        let name = path.display().to_string();
        match result {
            Ok(report) => {
                eprintln!("{name}: {}", summary(&report));
                if !report.matched {
                    code = 1;
                }
                records.push(json!({ "file": name, "report": report.to_json() }));
            }
            Err(e) => {
                eprintln!("{name}: error: {e}");
                first_error.get_or_insert(exit_code(&e));
                records.push(json!({ "file": name, "error": e.to_string(), "exit_code": exit_code(&e) }));
            }
        }
    }
    let text = serde_json::to_string_pretty(&records).expect("batch records serialize");
    write_out(out, &text)?;
    Ok(first_error.unwrap_or(code))
}

#[allow(clippy::too_many_arguments)]
pub fn generate(
    condition: ConditionTag,
    n: usize,
    m: usize,
    index_a: usize,
    index_d: usize,
    seed: u64,
    entry_bound: u32,
    out: Option<&Path>,
) -> Result<u8> {
    let mut spec = GenSpec::new(condition, n, m, index_a, index_d, seed);
    spec.entry_bound = entry_bound;
    let inst = gen_instance(&spec)?;
    let holds = condition_holds(condition, &inst)?;
    let mut file = InstanceFile::from_blocks(&inst, ScalarMode::Rational);
    file.origin = Some(json!({
        "condition": condition.as_str(),
        "n": n,
        "m": m,
        "index_a": index_a,
        "index_d": index_d,
        "seed": seed,
        "entry_bound": entry_bound,
    }));
    write_out(out, &file.to_json_string())?;
    let line = format!(
        "condition {condition}: {}; ind(A) = {}, ind(D) = {}",
        if holds { "holds" } else { "FAILS" },
        geninv::index(&inst.a)?,
        geninv::index(&inst.d)?
    );
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    if holds {
        Ok(0)
    } else {
        Err(Error::Defect(format!("generated instance violates {condition}")))
    }
}

pub fn paper_example(perturb: bool, mode: ScalarMode) -> Result<u8> {
    let passed = match mode {
        ScalarMode::Rational => {
            let routes = selftest::worked_example_check(perturb)?;
            for (name, m, ok) in &routes {
                println!("{name}: {}\n{m}", if *ok { "PASS" } else { "FAIL" });
            }
            routes.iter().all(|r| r.2)
        }
        ScalarMode::Float => {
            let mut expected = worked_example::expected_drazin().cast::<f64>();
            if perturb {
                expected[(0, 0)] += 1.0;
            }
            let case = Case::<f64>::from_reference(&worked_example::instance())?;
            let oracle = case.oracle.drazin_of(ginv_core::theorems::Target::M)?.cast::<f64>();
            let routes = [
                ("cor-4-3a", md_cor_43a(&case.ctx)?),
                ("thm-4-2", md_theorem_42(&case.ctx)?),
                ("oracle", oracle),
            ];
            let mut all = true;
            for (name, m) in &routes {
                let r = m.relative_residual(&expected);
                let ok = r <= FLOAT_TOL;
                all &= ok;
                println!("{name}: {} (residual {r:e})\n{m}", if ok { "PASS" } else { "FAIL" });
            }
            all
        }
    };
    println!("{}", if passed { "PASS" } else { "FAIL" });
    Ok(if passed { 0 } else { 1 })
}

pub fn selftest(seed: u64, quick: bool) -> Result<u8> {
    let cfg = if quick { Config::quick(seed) } else { Config::full(seed) };
    println!("seed {seed}");
    let outcomes = selftest::run_all(&cfg);
    for o in &outcomes {
        println!("{o}");
    }
    Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { 1 })
}
