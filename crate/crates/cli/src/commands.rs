use std::fmt::{self, Write as _};
use std::path::Path;

use modular_lorenz::bounds::{
    coro2_bounds, coro_nub_upper, d_sigma, pib2_lower, thm1_lower, thm_seq_upper, thm_ub_bounds,
    tps_bounds, tps_constants, BoundParams, BoundReport, BoundsError, InputValue,
};
use modular_lorenz::coding::{
    cf_of_code, cf_to_cutting, parse_word, CodingError, CyclicWord, GeneratorScale,
};
use modular_lorenz::families::{
    check_claim_eta, check_claim_tps, check_claim_ub, family_table, gen_eta, gen_fig8,
    gen_staircase, gen_tps, gen_ub, ClaimReport, FamilyError, FamilyId,
};
use modular_lorenz::lorenz::{
    render_braid, ring_partition, williams_braid, BraidError, BraidRecord, RingPartition,
    StrandRange,
};
use serde::Serialize;

use crate::number::{opt, sig};
use crate::{BoundsArgs, FamilyArgs};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Domain(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<CodingError> for CliError {
    fn from(e: CodingError) -> Self {
        if e.is_parse_error() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn scale_of(v: u64) -> Result<GeneratorScale, CliError> {
    GeneratorScale::from_value(v).ok_or_else(|| domain(format!("scale must be 1 or 2, got {v}")))
}

#[derive(Serialize)]
struct CodeReport {
    input: String,
    word: String,
    code: Vec<u64>,
    period: usize,
    letters: u64,
    scale: u64,
    matrix: [[String; 2]; 2],
    trace: String,
    length: f64,
    fixed_point: String,
    fixed_point_value: f64,
    cf: String,
    fixed_point_cf: String,
    cutting: String,
}

pub fn code(
    input: &str,
    scale: u64,
    runs: usize,
    json: bool,
    digits: usize,
) -> Result<String, CliError> {
    let w = parse_word(input)?;
    let scale = scale_of(scale)?;
    let m = w.to_matrix(scale);
    let surd = m.fixed_point()?;
    let code = w.code();
    let cf = cf_of_code(&code);
    let report = CodeReport {
        input: input.to_string(),
        word: w.to_string(),
        code: code.digits(),
        period: w.period(),
        letters: w.letter_count(),
        scale: scale.value(),
        matrix: [
            [m.a.to_string(), m.b.to_string()],
            [m.c.to_string(), m.d.to_string()],
        ],
        trace: m.trace().to_string(),
        length: m.geodesic_length()?,
        fixed_point: surd.to_string(),
        fixed_point_value: surd.to_f64(),
        fixed_point_cf: surd.to_cf(100_000)?.to_string(),
        cf: cf.to_string(),
        cutting: cf_to_cutting(&cf, runs).to_string(),
    };
    if json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "word            {}", report.word);
    let _ = writeln!(out, "code            {code}");
    let _ = writeln!(out, "period          {}", report.period);
    let _ = writeln!(out, "letters         {}", report.letters);
    let _ = writeln!(out, "matrix          {m}");
    let _ = writeln!(out, "trace           {}", report.trace);
    let _ = writeln!(out, "length          {}", sig(report.length, digits));
    let _ = writeln!(
        out,
        "fixed point     {} = {}",
        report.fixed_point,
        sig(report.fixed_point_value, digits)
    );
    let _ = writeln!(out, "fixed point cf  {}", report.fixed_point_cf);
    let _ = writeln!(out, "cf              {}", report.cf);
    let _ = writeln!(out, "cutting         {}", report.cutting);
    Ok(out)
}

#[derive(Serialize)]
struct RingsReport {
    x: Vec<[u64; 2]>,
    y: Vec<[u64; 2]>,
    total: usize,
    bound: usize,
}

impl RingsReport {
    fn new(r: &RingPartition) -> Self {
        let ranges = |v: &[StrandRange]| v.iter().map(|s| [s.lo, s.hi]).collect();
        RingsReport {
            x: ranges(&r.x_rings),
            y: ranges(&r.y_rings),
            total: r.total_rings(),
            bound: 2 * r.trip + 2,
        }
    }
}

#[derive(Serialize)]
struct BraidReport {
    #[serde(flatten)]
    record: BraidRecord,
    grouped: String,
    rings: RingsReport,
}

fn primitive_word(text: &str) -> Result<CyclicWord, CliError> {
    let w = parse_word(text)?;
    if !w.is_primitive() {
        return Err(BraidError::NonPrimitiveWord(w.to_string()).into());
    }
    Ok(w)
}

pub fn braid(word: &str, json: bool, _digits: usize) -> Result<String, CliError> {
    let w = primitive_word(word)?;
    let (_, b) = williams_braid(&w)?;
    let record = BraidRecord::new(&w)?;
    let rings = RingsReport::new(&ring_partition(&w)?);
    let report = BraidReport {
        grouped: b.grouped_string(),
        record,
        rings,
    };
    if json {
        return Ok(to_json(&report));
    }
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let ranges = |v: &[[u64; 2]]| {
        v.iter()
            .map(|[lo, hi]| {
                if lo > hi {
                    "[]".to_string()
                } else {
                    format!("[{lo},{hi}]")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let r = &report.record;
    let mu: Vec<u64> = r.mu.iter().map(|&v| v as u64).collect();
    let mut out = String::new();
    let _ = writeln!(out, "word      {}", r.word);
    let _ = writeln!(out, "period    {}", r.period);
    let _ = writeln!(out, "d         ({})", list(&r.d));
    let _ = writeln!(out, "grouped   {}", report.grouped);
    let _ = writeln!(out, "p         {}", r.p);
    let _ = writeln!(out, "strands   {}", r.strands);
    let _ = writeln!(out, "trip      {}", r.trip);
    let _ = writeln!(out, "order     ({})", list(&mu));
    let _ = writeln!(out, "rings x   {}", ranges(&report.rings.x));
    let _ = writeln!(out, "rings y   {}", ranges(&report.rings.y));
    let _ = writeln!(
        out,
        "rings     {} (at most {})",
        report.rings.total, report.rings.bound
    );
    Ok(out)
}

fn need<T: Copy>(v: Option<T>, flag: &str, formula: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Parse(format!("{formula} needs --{flag}")))
}

fn ell_of(a: &BoundsArgs) -> Result<f64, CliError> {
    if let Some(ell) = a.ell {
        if !(ell.is_finite() && ell > 0.0) {
            return Err(domain(format!("--ell must be positive, got {ell}")));
        }
        return Ok(ell);
    }
    let word = a
        .word
        .as_deref()
        .ok_or_else(|| domain(format!("{} needs --ell or --word", a.formula)))?;
    let w = parse_word(word)?;
    Ok(w.to_matrix(scale_of(a.scale)?).geodesic_length()?)
}

fn params_of(a: &BoundsArgs, need_dsigma: bool) -> Result<BoundParams, CliError> {
    let c = need(a.c, "C", &a.formula)?;
    let delta = a.delta.unwrap_or(0.0);
    let ds = match (a.dsigma, a.genus, a.punctures) {
        (Some(d), _, _) => d,
        (None, Some(g), Some(k)) => d_sigma(g, k)?,
        (None, None, None) if !need_dsigma => 1,
        _ => {
            return Err(domain(format!(
                "{} needs --dsigma or --genus with --punctures",
                a.formula
            )))
        }
    };
    Ok(BoundParams::new(c, delta, ds)?)
}

fn with_ell(mut r: BoundReport, a: &BoundsArgs) -> BoundReport {
    if a.ell.is_none() && a.word.is_some() {
        r.inputs.insert("scale".into(), a.scale.into());
    }
    r
}

pub fn bounds(a: &BoundsArgs, digits: usize) -> Result<String, CliError> {
    let f = a.formula.as_str();
    let report = match f {
        "thm-seq" => {
            let n = need(a.n, "n", f)?;
            let upper = thm_seq_upper(n)?;
            BoundReport::new(f, [("n".to_string(), n.into())].into(), None, Some(upper))
        }
        "thm-ub" => thm_ub_bounds(need(a.n, "n", f)?)?,
        "coro-nub" => {
            let ell = ell_of(a)?;
            let p = params_of(a, true)?;
            let upper = coro_nub_upper(ell, &p)?;
            with_ell(BoundReport::new(f, param_inputs(ell, &p), None, Some(upper)), a)
        }
        "coro-2" => {
            let ell = ell_of(a)?;
            with_ell(coro2_bounds(ell, &params_of(a, true)?)?, a)
        }
        "pib2" => {
            let ell = ell_of(a)?;
            let p = params_of(a, false)?;
            let lower = pib2_lower(ell, &p)?;
            with_ell(BoundReport::new(f, param_inputs(ell, &p), Some(lower), None), a)
        }
        "thm1" => {
            let word = a.word.as_deref().ok_or_else(|| domain("thm1 needs --word"))?;
            let w = parse_word(word)?;
            let inputs = [("period".to_string(), InputValue::Int(w.period() as i64))].into();
            BoundReport::new(f, inputs, Some(thm1_lower(&w)), None)
        }
        "tps" => {
            let ell = ell_of(a)?;
            let p = match (a.m, a.c) {
                (Some(m), _) => tps_constants(m, a.r.unwrap_or(0))?,
                (None, Some(_)) => params_of(a, false)?,
                (None, None) => return Err(domain("tps needs --m [--r] or --C [--delta]")),
            };
            let mut r = with_ell(tps_bounds(ell, &p)?, a);
            if let Some(m) = a.m {
                r.inputs.insert("m".into(), m.into());
                r.inputs.insert("r".into(), a.r.unwrap_or(0).into());
            }
            r
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown formula '{other}'; expected thm-seq, thm-ub, coro-nub, coro-2, pib2, thm1 or tps"
            )))
        }
    };
    if a.json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "formula   {}", report.formula_name);
    for (k, v) in &report.inputs {
        let shown = match v {
            InputValue::Int(i) => i.to_string(),
            InputValue::Real(x) => sig(*x, digits),
        };
        let _ = writeln!(out, "  {k:<8}{shown}");
    }
    let _ = writeln!(out, "lower     {}", opt(report.lower, digits));
    let _ = writeln!(out, "upper     {}", opt(report.upper, digits));
    let _ = writeln!(out, "valid     {}", report.valid);
    if let Some(reason) = &report.reason {
        let _ = writeln!(out, "reason    {reason}");
    }
    Ok(out)
}

fn param_inputs(ell: f64, p: &BoundParams) -> std::collections::BTreeMap<String, InputValue> {
    [
        ("ell".to_string(), ell.into()),
        ("C".to_string(), p.c_rho.into()),
        ("delta".to_string(), p.delta_rho.into()),
        ("d_sigma".to_string(), p.d_sigma.into()),
    ]
    .into()
}

#[derive(Serialize)]
struct FamilyReport {
    family: FamilyId,
    word: String,
    period: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<ClaimReport>,
}

fn single_m(a: &FamilyArgs) -> Result<u64, CliError> {
    match a.m.as_slice() {
        [m] => Ok(*m),
        [] => Err(domain(format!("{} needs --m", a.id))),
        _ => Err(domain("--m takes one value for this family")),
    }
}

pub fn family(a: &FamilyArgs, digits: usize) -> Result<String, CliError> {
    let id: FamilyId =
        a.id.parse()
            .map_err(|e: FamilyError| CliError::Parse(e.to_string()))?;
    if a.table {
        let n_max = need(a.n, "n", &a.id)?;
        let (m, r) = if id == FamilyId::Tps {
            (single_m(a)?, a.r.unwrap_or(0))
        } else {
            (0, 0)
        };
        let rows = family_table(id, n_max, m, r)?;
        if a.json {
            return Ok(to_json(&rows));
        }
        let mut out = String::from("n\tword\tperiod\tlength\tlower\tupper\n");
        for row in rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                row.n,
                row.word,
                row.period,
                sig(row.length, digits),
                opt(row.lower, digits),
                opt(row.upper, digits)
            );
        }
        return Ok(out);
    }
    let (word, check) = match id {
        FamilyId::Staircase => {
            if a.check {
                return Err(domain(
                    "no trace-recurrence check for staircase; use eta, ub or tps",
                ));
            }
            (gen_staircase(&a.k)?, None)
        }
        FamilyId::Fig8 => {
            if a.check {
                return Err(domain(
                    "no trace-recurrence check for fig8; use eta, ub or tps",
                ));
            }
            (gen_fig8(&a.k, &a.m)?, None)
        }
        FamilyId::Eta => {
            let n = need(a.n, "n", &a.id)?;
            (
                gen_eta(n)?,
                a.check.then(|| check_claim_eta(n)).transpose()?,
            )
        }
        FamilyId::Ub => {
            let n = need(a.n, "n", &a.id)?;
            (gen_ub(n)?, a.check.then(|| check_claim_ub(n)).transpose()?)
        }
        FamilyId::Tps => {
            let n = need(a.n, "n", &a.id)?;
            let (m, r) = (single_m(a)?, a.r.unwrap_or(0));
            (
                gen_tps(n, m, r)?,
                a.check.then(|| check_claim_tps(n, m, r)).transpose()?,
            )
        }
    };
    let report = FamilyReport {
        family: id,
        word: word.to_string(),
        period: word.period(),
        check,
    };
    if a.json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "family    {}", report.family);
    let _ = writeln!(out, "word      {}", report.word);
    let _ = writeln!(out, "period    {}", report.period);
    if let Some(rep) = &report.check {
        let _ = writeln!(out, "trace     {}", rep.witness.trace_n);
        for v in &rep.verdicts {
            let tag = if v.counted { "" } else { "  (comparison only)" };
            let _ = writeln!(
                out,
                "{:<5}  {}  margin log10 {}{tag}",
                v.holds,
                v.statement,
                sig(v.log10_margin, digits.min(6))
            );
        }
        for note in &rep.notes {
            let _ = writeln!(out, "note      {note}");
        }
        let _ = writeln!(out, "all hold  {}", rep.all_hold());
    }
    Ok(out)
}

pub fn render(word: &str, out: Option<&Path>) -> Result<String, CliError> {
    let w = primitive_word(word)?;
    let (perm, braid) = williams_braid(&w)?;
    let svg = render_braid(&braid, &perm);
    match out {
        Some(path) => {
            std::fs::write(path, svg.as_bytes())
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(svg),
    }
}
