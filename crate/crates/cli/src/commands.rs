//! One function per subcommand. Each returns the JSON payload together
//! with a short human-readable rendering.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use bilat_core::braid::{enumerate_orbit, OrbitBudget, OrbitStatus};
use bilat_core::cyclotomic::{spectrum_from_monodromy, Spectrum};
use bilat_core::hor::{chain_report, hor_case, ChainTypeSpec};
use bilat_core::moments::{bernoulli_moments, moments, BernoulliMomentVector, MomentVector};
use bilat_core::rational::{serde_rational, Rational};
use bilat_core::report::{analyze, ClassificationReport, Verdict};
use bilat_core::verify::verify_all;
use bilat_core::{Result, TriangularSeed};

pub struct Outcome {
    pub payload: Value,
    pub text: String,
    /// A reproduction check failed.
    pub mismatch: bool,
}

impl Outcome {
    fn new<T: Serialize>(payload: &T, text: String) -> Self {
        Outcome { payload: serde_json::to_value(payload).expect("reports serialize"), text, mismatch: false }
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Distinguished { label } => format!("distinguished ({label})"),
        Verdict::D4Tubular => "orbit of Coxeter elements of D4^(1,1)".into(),
        Verdict::NotDistinguished { reason } => format!("not distinguished: {reason}"),
        Verdict::OutOfScope { reason } => format!("not classified: {reason}"),
    }
}

fn analyze_text(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "rank        {}", r.rank);
    let _ = writeln!(s, "form        {:?}", r.definiteness);
    let _ = writeln!(s, "trace       {}", r.trace);
    let _ = writeln!(s, "char poly   {}", r.monodromy_char_poly);
    if let Some(f) = &r.factorization {
        let _ = writeln!(s, "factors     {f}");
    }
    if let (Some(sp), Some(v), Some(b), Some(rel)) = (&r.spectrum, &r.variance, &r.variance_bound, &r.variance_relation) {
        let _ = writeln!(s, "spectrum    {sp}");
        let _ = writeln!(s, "variance    {} {} {}", v, rel.symbol(), b);
    }
    if let Some(t) = &r.ade_type {
        let _ = writeln!(s, "type        {t}");
    }
    if let Some(c) = &r.carter_class {
        let _ = writeln!(s, "class       {c}");
    }
    if let Some(row) = &r.table_row {
        let _ = writeln!(s, "table row   {row}");
    }
    let _ = writeln!(s, "verdict     {}", verdict_text(&r.verdict));
    for n in &r.notes {
        let _ = writeln!(s, "note        {n}");
    }
    s
}

pub fn analyze_cmd(seed: &TriangularSeed) -> Result<Outcome> {
    let r = analyze(seed)?;
    Ok(Outcome::new(&r, analyze_text(&r)))
}

pub fn orbit_cmd(seed: &TriangularSeed, budget: OrbitBudget) -> Result<Outcome> {
    let r = enumerate_orbit(seed, budget);
    let status = match r.status {
        OrbitStatus::Exhausted => "exhausted",
        OrbitStatus::BudgetExceeded => "budget exceeded",
    };
    let text = format!(
        "orbit size  {}\nstatus      {status}\nexpanded    {}\nmax entry   {}\n",
        r.size, r.states_expanded, r.max_entry_seen
    );
    Ok(Outcome::new(&r, text))
}

#[derive(Serialize)]
struct SpectrumPayload {
    spectrum: Spectrum,
    #[serde(with = "serde_rational")]
    variance: Rational,
    #[serde(with = "serde_rational")]
    variance_bound: Rational,
    relation: bilat_core::cyclotomic::VarianceRelation,
}

pub fn spectrum_cmd(seed: &TriangularSeed) -> Result<Outcome> {
    let sp = spectrum_from_monodromy(seed)?;
    let p = SpectrumPayload {
        variance: sp.variance(),
        variance_bound: sp.variance_bound(),
        relation: sp.variance_relation(),
        spectrum: sp,
    };
    let text = format!(
        "spectrum    {}\nvariance    {} {} {}\n",
        p.spectrum,
        p.variance,
        p.relation.symbol(),
        p.variance_bound
    );
    Ok(Outcome::new(&p, text))
}

#[derive(Serialize)]
struct MomentsPayload {
    spectrum: Spectrum,
    moments: MomentVector,
    bernoulli: BernoulliMomentVector,
    /// `(-1)^k Γ_2k ≥ 0` for all computed `k`.
    alternating_nonnegative: bool,
}

/// `ν` defaults to `α_n - α_1`.
pub fn moments_cmd(seed: &TriangularSeed, nu: Option<Rational>, k: usize) -> Result<Outcome> {
    let sp = spectrum_from_monodromy(seed)?;
    let nu = nu.unwrap_or_else(|| sp.span());
    let bm = bernoulli_moments(&sp, &nu, k);
    let mut text = format!("spectrum    {sp}\nnu          {nu}\n");
    for (i, g) in bm.gamma.iter().enumerate() {
        let _ = writeln!(text, "Gamma_{:<5}{}", 2 * i, g);
    }
    let p = MomentsPayload {
        moments: moments(&sp, k),
        alternating_nonnegative: bm.alternating_nonnegative(),
        bernoulli: bm,
        spectrum: sp,
    };
    Ok(Outcome::new(&p, text))
}

pub fn chain_cmd(exponents: &str) -> Result<Outcome> {
    let spec: ChainTypeSpec = exponents.parse()?;
    let r = chain_report(&spec)?;
    let text = format!(
        "exponents   {:?}\nb           {}\nn           {}\npolynomial  {}\nfactors     {}\nspectrum    {}\nnu          {}\nGamma_2     {}\nGamma_4     {} (closed form {}, bound {})\nconsistent  {}\n",
        r.exponents,
        r.b,
        r.milnor_number,
        r.polynomial,
        r.factorization,
        r.spectrum,
        r.nu,
        r.gamma2,
        r.gamma4,
        r.gamma4_closed_form,
        r.gamma4_upper_bound,
        r.consistent()
    );
    Ok(Outcome::new(&r, text))
}

pub fn hor_cmd(indices: &[u64], b: u8) -> Result<Outcome> {
    let c = hor_case(indices, b)?;
    let unordered: Vec<String> = c.unordered_spectrum.iter().map(ToString::to_string).collect();
    let text = format!(
        "n           {}\nb           {}\nidentity    {}\ntrace       {}\nmonodromy   {}\nunordered   ({})\nspectrum    {}\nvariance    {} {} {}\nGamma_2     {}\nGamma_4     {} (n·nu/240 = {})\n",
        c.n,
        c.b,
        c.power_identity,
        c.trace,
        c.monodromy_factorization,
        unordered.join(", "),
        c.spectrum,
        c.variance,
        c.variance_relation.symbol(),
        c.spectrum.variance_bound(),
        c.gamma2,
        c.gamma4,
        c.gamma4_upper_bound
    );
    Ok(Outcome::new(&c, text))
}

pub fn verify_cmd() -> Result<Outcome> {
    let r = verify_all()?;
    let mut text = String::new();
    for s in &r.sections {
        let passed = s.checks.iter().filter(|c| c.passed).count();
        let mark = if s.passed() { "ok  " } else { "FAIL" };
        let _ = writeln!(text, "{mark} {} ({passed}/{})", s.name, s.checks.len());
        for f in s.failures() {
            let _ = writeln!(text, "     {}: {}", f.name, f.detail);
        }
    }
    let mut out = Outcome::new(&r, text);
    out.mismatch = !r.passed();
    Ok(out)
}
