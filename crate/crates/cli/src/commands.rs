use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde_json::{json, Value};
use taureg_core::ar::{ar_formula_sides, hierarchy_report, reduce_and_compare, tau, tau_minus, e_invariant_self, self_extension, ReductionMode};
use taureg_core::fixtures::Fixture;
use taureg_core::modfile::{module_to_json, parse_module};
use taureg_core::present::{additivity_scan, min_presentation};
use taureg_core::quiver::{parse_ideal, DEFAULT_MAX_LEN};
use taureg_core::rep::{combine, ext1_dim, hom_basis, hom_dim, injective, proj_dim, projective};
use taureg_core::{build_algebra, parse_quiver_file, Algebra, Error, ProjDecomp, Quiver, Representation, Scalar, SeedStream};

use crate::{out, Cli, Command, Opts};

/// Sampling range for random Hom coefficients.
const HOM_SAMPLE_RANGE: u64 = 1000;

/// A loaded algebra together with its quiver (needed to parse ideals).
pub struct Loaded<F> {
    pub quiver: Quiver,
    pub alg: Algebra<F>,
    pub label: String,
}

/// Reads a `.qa` file, or falls back to an embedded fixture name such as `ALG-A`.
pub fn load_algebra<F: Scalar>(path: &Path) -> Result<Loaded<F>> {
    let label = path.display().to_string();
    let source = if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {label}"))?
    } else if let Some(fx) = Fixture::from_name(&label) {
        fx.source().to_string()
    } else {
        return Err(anyhow!("{label}: no such file or fixture"));
    };
    let (quiver, relations) = parse_quiver_file(&source).with_context(|| label.clone())?;
    let alg = build_algebra(&quiver, &relations, DEFAULT_MAX_LEN).with_context(|| label.clone())?;
    Ok(Loaded { quiver, alg, label })
}

pub fn load_module<F: Scalar>(alg: &Algebra<F>, path: &Path) -> Result<Representation<F>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (m, _) = parse_module(alg, &text).with_context(|| path.display().to_string())?;
    Ok(m)
}

pub fn dims_str(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn emit(opts: &Opts, value: &Value, human: impl FnOnce() -> String) {
    if opts.json {
        out(&serde_json::to_string_pretty(value).expect("json"));
    } else {
        out(&human());
    }
}

pub fn run<F: Scalar>(cli: &Cli) -> Result<u8> {
    let o = &cli.opts;
    match &cli.command {
        Command::Info { algebra } => info::<F>(o, algebra),
        Command::Check { algebra, module } => check::<F>(o, algebra, module),
        Command::Scan { algebra, p1, p0 } => scan::<F>(o, algebra, p1, p0),
        Command::Reduce { algebra, module, ideal } => reduce::<F>(o, algebra, module, ideal.as_deref()),
        Command::Hom { algebra, m, n } => hom::<F>(o, algebra, m, n),
        Command::Tau { algebra, module, minus } => tau_cmd::<F>(algebra, module, *minus),
        Command::Ext1 { algebra, m, n } => ext1::<F>(o, algebra, m, n),
        Command::PaperExamples => unreachable!("dispatched before field selection"),
    }
}

fn info<F: Scalar>(o: &Opts, path: &Path) -> Result<u8> {
    let Loaded { alg, label, .. } = load_algebra::<F>(path)?;
    let n = alg.num_vertices();
    let ps: Vec<Vec<usize>> = (0..n).map(|i| projective(&alg, i).dims().to_vec()).collect();
    let is: Vec<Vec<usize>> = (0..n).map(|i| injective(&alg, i).dims().to_vec()).collect();
    let rad = alg.radical_basis().len();
    let value = json!({
        "algebra": label,
        "field": F::field_tag(),
        "dim": alg.dim(),
        "vertices": alg.vertex_labels(),
        "arrows": alg.arrows().iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
        "projectives": ps,
        "injectives": is,
        "radical_dim": rad,
    });
    emit(o, &value, || {
        let p: Vec<String> = ps.iter().map(|d| dims_str(d)).collect();
        let i: Vec<String> = is.iter().map(|d| dims_str(d)).collect();
        format!("dim A = {}; P: {}\nI: {}\ndim rad A = {rad}", alg.dim(), p.join(" "), i.join(" "))
    });
    Ok(0)
}

fn check<F: Scalar>(o: &Opts, algebra: &Path, module: &Path) -> Result<u8> {
    let Loaded { alg, .. } = load_algebra::<F>(algebra)?;
    let m = load_module(&alg, module)?;
    let h = hierarchy_report(&alg, &m, o.trials, o.seed)?;
    let pd = proj_dim(&alg, &m, o.cap);
    let c = min_presentation(&alg, &m);
    let (e, big_e) = (self_extension(&alg, &m), e_invariant_self(&alg, &m));
    let value = json!({
        "dims": m.dims(),
        "field": F::field_tag(),
        "trials": o.trials,
        "seed": o.seed,
        "presentation": { "p1": c.p1.to_string(), "p0": c.p0.to_string(), "rank": c.rank() },
        "proj_dim": pd,
        "e": e,
        "big_e": big_e,
        "hierarchy": h,
    });
    emit(o, &value, || {
        let v = &h.tau_regular;
        let mut s = format!(
            "M = {}; presentation {} -> {} of rank {}\n",
            dims_str(m.dims()),
            c.p1,
            c.p0,
            c.rank()
        );
        s += &format!("pd = {pd}; e(M) = {e}; E(M) = {big_e}\n");
        s += &format!(
            "projective: {}; pd <= 1: {}; rigid: {}; tau-rigid: {}; partial tilting: {}\n",
            yn(h.projective),
            yn(h.pd_at_most_one),
            yn(h.rigid),
            yn(h.tau_rigid),
            yn(h.partial_tilting)
        );
        s += &format!(
            "tau-regular: {} (presentation rank {}, r(P1,P0) = {})",
            v.outcome, v.presentation_rank, v.generic_rank
        );
        if let Some(note) = &v.note {
            s += &format!("\nnote: {note}");
        }
        s
    });
    Ok(0)
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn decomp<F: Scalar>(alg: &Algebra<F>, mult: &[usize], what: &str) -> Result<ProjDecomp> {
    if mult.len() != alg.num_vertices() {
        return Err(Error::Shape(format!(
            "--{what} needs {} multiplicities, got {}",
            alg.num_vertices(),
            mult.len()
        ))
        .into());
    }
    Ok(ProjDecomp::new(mult.to_vec()))
}

fn scan<F: Scalar>(o: &Opts, algebra: &Path, p1: &[usize], p0: &[usize]) -> Result<u8> {
    let Loaded { alg, .. } = load_algebra::<F>(algebra)?;
    let (p1, p0) = (decomp(&alg, p1, "p1")?, decomp(&alg, p0, "p0")?);
    let report = additivity_scan(&alg, &p1, &p0, o.tmax, o.trials, o.seed);
    let mut value = serde_json::to_value(&report)?;
    value["p1"] = json!(p1.to_string());
    value["p0"] = json!(p0.to_string());
    emit(o, &value, || {
        let mut s = format!("r(P1^t, P0^t) for P1 = {p1}, P0 = {p0}\n");
        for (t, (r, c)) in report.r.iter().zip(&report.certified).enumerate() {
            let flag = if report.violations.contains(&(t + 1)) { "  VIOLATION" } else { "" };
            s += &format!("t = {}: r = {r}{}{flag}\n", t + 1, if *c { "" } else { " (uncertified)" });
        }
        s += &format!("violations: {:?}", report.violations);
        s
    });
    Ok(if report.violations.is_empty() { 0 } else { 10 })
}

fn reduce<F: Scalar>(o: &Opts, algebra: &Path, module: &Path, ideal: Option<&Path>) -> Result<u8> {
    let Loaded { quiver, alg, .. } = load_algebra::<F>(algebra)?;
    let m = load_module(&alg, module)?;
    let mode = match ideal {
        None => ReductionMode::Annihilator,
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            ReductionMode::Ideal(parse_ideal(&quiver, &alg, &text).with_context(|| p.display().to_string())?)
        }
    };
    let r = reduce_and_compare(&alg, &m, &mode, o.trials, o.seed, o.cap)?;
    let value = json!({
        "mode": if ideal.is_some() { "ideal" } else { "annihilator" },
        "field": F::field_tag(),
        "trials": o.trials,
        "seed": o.seed,
        "report": r,
    });
    emit(o, &value, || {
        format!(
            "dim I = {}; B = A/I has dim {}, vertices {:?}, arrows {:?}; M faithful over B: {}\n\
             pd_A = {}; pd_B = {}\n\
             e_A = {}; e_B = {}; E_A = {}; E_B = {}; inequalities hold: {}\n\
             tau_A-rigid: {}; tau_B-rigid: {}\n\
             tau_A-regular: {}; tau_B-regular: {}",
            r.ideal_dim,
            r.quotient_dim,
            r.quotient_vertices,
            r.quotient_arrows,
            yn(r.faithful_over_quotient),
            r.pd_a,
            r.pd_b,
            r.e_a,
            r.e_b,
            r.big_e_a,
            r.big_e_b,
            yn(r.inequalities_hold),
            yn(r.tau_rigid_a),
            yn(r.tau_rigid_b),
            r.tau_regular_a.outcome,
            r.tau_regular_b.outcome
        )
    });
    Ok(0)
}

fn hom<F: Scalar>(o: &Opts, algebra: &Path, m: &Path, n: &Path) -> Result<u8> {
    let Loaded { alg, .. } = load_algebra::<F>(algebra)?;
    let (m, n) = (load_module(&alg, m)?, load_module(&alg, n)?);
    let basis = hom_basis(&alg, &m, &n);
    let stream = SeedStream::new(o.seed);
    let mut best = 0;
    if !basis.is_empty() {
        for i in 0..o.trials {
            let mut rng = stream.split(i as u64).rng();
            let coeffs: Vec<F> = basis.iter().map(|_| F::sample(&mut rng, HOM_SAMPLE_RANGE)).collect();
            best = best.max(combine(&basis, &coeffs, &m, &n).rank());
        }
    }
    let value = json!({
        "hom_dim": hom_dim(&alg, &m, &n),
        "max_sampled_rank": best,
        "field": F::field_tag(),
        "trials": o.trials,
        "seed": o.seed,
    });
    emit(o, &value, || format!("dim Hom(M, N) = {}; largest sampled rank = {best}", basis.len()));
    Ok(0)
}

fn tau_cmd<F: Scalar>(algebra: &Path, module: &Path, minus: bool) -> Result<u8> {
    let Loaded { alg, label, .. } = load_algebra::<F>(algebra)?;
    let m = load_module(&alg, module)?;
    let t = if minus { tau_minus(&alg, &m) } else { tau(&alg, &m) };
    out(&module_to_json(&alg, &t, Some(&label)));
    Ok(0)
}

fn ext1<F: Scalar>(o: &Opts, algebra: &Path, m: &Path, n: &Path) -> Result<u8> {
    let Loaded { alg, .. } = load_algebra::<F>(algebra)?;
    let (m, n) = (load_module(&alg, m)?, load_module(&alg, n)?);
    let e = ext1_dim(&alg, &m, &n);
    let (l, r) = ar_formula_sides(&alg, &m, &n);
    let value = json!({
        "ext1_dim": e,
        "stable_hom_dim": r,
        "ar_formula_holds": l == r,
        "field": F::field_tag(),
    });
    emit(o, &value, || format!("dim Ext^1(M, N) = {e}; dim Hom-bar(N, tau M) = {r}"));
    Ok(0)
}
