use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use tgrs::classify::{classify, ClassificationReport, ClassifyOptions, SelfDualReport, Verdict};
use tgrs::construct::{construct_self_dual, search_mds, EtaDomain, RecipeJson, SearchOptions, SearchResult};
use tgrs::field::{Field, FieldCtx, Gf};
use tgrs::oracle::{minors_mds_check, EnumOptions};
use tgrs::tgrs::{Regime, SpecJson, TgrsSpec};

use crate::error::CliError;
use crate::{Cli, Command, Format, Preset, Result, SearchArgs, SpecArgs};

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<()> {
    match &cli.command {
        Command::Classify { spec, self_dual, no_oracle } => cmd_classify(cli, out, spec, *self_dual, *no_oracle),
        Command::Search(args) => cmd_search(cli, out, args),
        Command::Construct { q, ell, a, eta, modulus } => {
            cmd_construct(cli, out, q, *ell, *a, eta, modulus.as_deref())
        }
        Command::Encode { spec, message } => cmd_encode(cli, out, spec, message),
        Command::Table { preset, list } => {
            let (field, alpha, k) = match preset {
                Preset::Q11L2 => ("11", "1,2,3,5,6,8,9,10", "3..7"),
                Preset::Q13L3 => ("13", "0,1,2,3,4,5,6,9,10,12", "5..9"),
            };
            let ell = match preset {
                Preset::Q11L2 => 2,
                Preset::Q13L3 => 3,
            };
            let args = SearchArgs {
                field: field.into(),
                alpha: alpha.into(),
                k: k.into(),
                ell,
                domain: None,
                list: *list,
                no_fast: false,
            };
            cmd_search(cli, out, &args)
        }
    }
}

/// Comma separated integers, optionally wrapped in brackets.
pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Input(format!("not a nonnegative integer: {t:?}")))
        })
        .collect()
}

/// `"5"`, `"5..9"` (inclusive) or `"3,5,7"`.
pub fn parse_k_range(s: &str) -> Result<Vec<usize>> {
    let bad = || CliError::Input(format!("bad k range {s:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    Ok(parse_list(s)?.into_iter().map(|k| k as usize).collect())
}

fn read_source(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn load_spec(args: &SpecArgs) -> Result<TgrsSpec> {
    if let Some(path) = &args.spec {
        let json: SpecJson = serde_json::from_str(&read_source(path)?)?;
        return Ok(json.to_spec()?);
    }
    let missing = |what: &str| CliError::Input(format!("--{what} is required without --spec"));
    let field = FieldCtx::parse(args.field.as_deref().ok_or_else(|| missing("field"))?)?;
    let k = args.k.ok_or_else(|| missing("k"))?;
    let alpha = parse_list(args.alpha.as_deref().ok_or_else(|| missing("alpha"))?)?;
    let eta = parse_list(args.eta.as_deref().ok_or_else(|| missing("eta"))?)?;
    let v = args.v.as_deref().map(parse_list).transpose()?;
    let regime = if args.extended { Regime::Extended } else { Regime::Standard };
    Ok(TgrsSpec::from_ints(&field, k, &alpha, v.as_deref(), &eta, regime)?)
}

fn elements(field: &Field, xs: &[u64]) -> Result<Vec<Gf>> {
    Ok(xs.iter().map(|&x| field.elem(x)).collect::<std::result::Result<_, _>>()?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn params(n: usize, k: usize, d: usize) -> String {
    format!("[{n},{k},{d}]")
}

fn verdict_text<T>(v: &Verdict<T>, show: impl Fn(&T) -> String) -> String {
    match v {
        Verdict::Value { value } => show(value),
        Verdict::OutOfScope { reason } => format!("out of scope ({reason})"),
        Verdict::Skipped { reason } => format!("skipped ({reason})"),
    }
}

fn cmd_classify(cli: &Cli, out: &mut impl Write, args: &SpecArgs, self_dual: bool, no_oracle: bool) -> Result<()> {
    let spec = load_spec(args)?;
    let opts = ClassifyOptions {
        oracle: (!no_oracle).then_some(EnumOptions {
            budget: cli.enum_budget,
            workers: cli.workers,
        }),
        self_dual,
    };
    let report = classify(&spec, opts);
    match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => write_classify_csv(out, &report)?,
        Format::Table => write_classify_table(out, &spec, &report)?,
    }
    if let Some(Verdict::OutOfScope { reason }) = &report.self_dual {
        return Err(CliError::OutOfScope(reason.clone()));
    }
    Ok(())
}

/// One CSV row per classified spec.
#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRow {
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub grs: bool,
    pub mds: bool,
    pub d: Option<usize>,
    pub amds: Option<bool>,
    pub defect_is_l: bool,
    pub l_mds: Option<bool>,
    pub defect: Option<usize>,
    pub dual_defect: Option<usize>,
    pub self_dual: Option<bool>,
}

impl ClassifyRow {
    pub fn from_report(r: &ClassificationReport) -> Self {
        ClassifyRow {
            field: r.spec.field.clone(),
            n: r.spec.n,
            k: r.spec.k,
            ell: r.spec.ell,
            grs: r.is_grs,
            mds: r.is_mds,
            d: r.distance,
            amds: r.is_amds.value().copied(),
            defect_is_l: r.defect_is_l,
            l_mds: r.is_l_mds.value().copied(),
            defect: r.defect,
            dual_defect: r.dual_defect,
            self_dual: r.self_dual.as_ref().and_then(|v| v.value()).map(|s| s.holds),
        }
    }
}

fn write_classify_csv(out: &mut impl Write, report: &ClassificationReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.serialize(ClassifyRow::from_report(report))?;
    w.flush()?;
    Ok(())
}

fn write_classify_table(out: &mut impl Write, spec: &TgrsSpec, r: &ClassificationReport) -> Result<()> {
    let (n, k, ell) = (spec.n(), spec.k(), spec.ell());
    writeln!(out, "code: n = {n}, k = {k}, ell = {ell} over GF({})", spec.field().spec_string())?;
    let eta: Vec<String> = r.spec.eta.iter().map(u64::to_string).collect();
    writeln!(out, "eta: ({})", eta.join(","))?;
    let mds = if r.is_mds && r.is_grs {
        format!("yes (GRS), {}", params(n, k, n - k + 1))
    } else if r.is_mds {
        format!("yes, {}", params(n, k, n - k + 1))
    } else {
        format!("no, singular columns {}", set(r.witness_subset.as_deref().unwrap_or(&[])))
    };
    writeln!(out, "MDS: {mds}")?;
    writeln!(out, "AMDS: {}", verdict_text(&r.is_amds, |b| yes_no(*b).to_string()))?;
    let defect = match &r.defect_l_witness {
        Some(w) => format!("yes, columns {} carry a codeword of weight {}", set(w), n - k + 1 - ell),
        None => "no".into(),
    };
    writeln!(out, "defect ell: {defect}")?;
    writeln!(out, "ell-MDS: {}", verdict_text(&r.is_l_mds, |b| yes_no(*b).to_string()))?;
    if let Some(d) = r.distance {
        writeln!(out, "parameters: {}", params(n, k, d))?;
    }
    match (r.defect, r.dual_defect, &r.oracle_note) {
        (Some(s), Some(sd), _) => writeln!(out, "brute force: S(C) = {s}, S(dual) = {sd}")?,
        (Some(s), None, note) => writeln!(
            out,
            "brute force: S(C) = {s}{}",
            note.as_ref().map(|m| format!(", dual skipped ({m})")).unwrap_or_default()
        )?,
        (None, _, Some(note)) => writeln!(out, "brute force: skipped ({note})")?,
        _ => {}
    }
    if let Some(sd) = &r.self_dual {
        writeln!(out, "self-dual: {}", verdict_text(sd, self_dual_text))?;
    }
    Ok(())
}

fn self_dual_text(r: &SelfDualReport) -> String {
    let scope = match r.scope {
        tgrs::classify::Scope::Full => "",
        tgrs::classify::Scope::SufficientOnly => " (sufficient conditions)",
    };
    match &r.first_failure {
        None => format!("yes{scope}"),
        Some(f) => format!("no, {f:?}"),
    }
}

/// One CSV row of a search table.
#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub k: usize,
    pub count: u64,
    pub n: usize,
    pub dim: usize,
    pub d: usize,
}

impl From<&SearchResult> for SearchRow {
    fn from(r: &SearchResult) -> Self {
        SearchRow {
            k: r.k,
            count: r.count,
            n: r.n,
            dim: r.k,
            d: r.distance(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SearchError {
    pub k: usize,
    pub error: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub rows: Vec<SearchResult>,
    pub errors: Vec<SearchError>,
}

fn cmd_search(cli: &Cli, out: &mut impl Write, args: &SearchArgs) -> Result<()> {
    let field = FieldCtx::parse(&args.field)?;
    let alpha = elements(&field, &parse_list(&args.alpha)?)?;
    let ks = parse_k_range(&args.k)?;
    let domain = match &args.domain {
        None => EtaDomain::All,
        Some(path) => EtaDomain::Explicit(serde_json::from_str(&read_source(path)?)?),
    };
    let opts = SearchOptions {
        workers: cli.workers,
        list: args.list,
        fast: !args.no_fast,
        budget: cli.search_budget,
    };
    let empty = matches!(&domain, EtaDomain::Explicit(list) if list.is_empty());
    let mut report = SearchReport {
        rows: Vec::new(),
        errors: Vec::new(),
    };
    let mut worst: Option<CliError> = None;
    for &k in &ks {
        match search_mds(&field, &alpha, k, args.ell, &domain, opts) {
            Ok(r) if empty => drop(r),
            Ok(r) => report.rows.push(r),
            Err(e) => {
                let e = CliError::from(e);
                eprintln!("k = {k}: {e}");
                report.errors.push(SearchError { k, error: e.to_string() });
                if worst.as_ref().is_none_or(|w| e.exit_code() > w.exit_code()) {
                    worst = Some(e);
                }
            }
        }
    }
    match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut *out);
            w.write_record(["k", "count", "n", "dim", "d"])?;
            for r in &report.rows {
                w.serialize(SearchRow::from(r))?;
            }
            w.flush()?;
        }
        Format::Table => {
            writeln!(out, "{:>3}  {:>7}  parameters", "k", "count")?;
            for r in &report.rows {
                writeln!(out, "{:>3}  {:>7}  {}", r.k, r.count, params(r.n, r.k, r.distance()))?;
                for t in r.mds_tuples.iter().flatten() {
                    let t: Vec<String> = t.iter().map(u64::to_string).collect();
                    writeln!(out, "     ({})", t.join(","))?;
                }
            }
        }
    }
    match worst {
        Some(e @ CliError::Budget(_)) => Err(e),
        Some(e) if report.rows.is_empty() && !empty => Err(e),
        _ => Ok(()),
    }
}

/// Output of `construct`: the recipe and what was checked about it.
#[derive(Debug, Serialize, Deserialize)]
pub struct ConstructReport {
    pub recipe: RecipeJson,
    pub self_dual: bool,
    /// Every k x k minor nonzero; absent when there are too many minors.
    pub mds: Option<bool>,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k.min(n - k)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn cmd_construct(
    cli: &Cli,
    out: &mut impl Write,
    q: &str,
    ell: usize,
    a: u64,
    eta: &str,
    modulus: Option<&str>,
) -> Result<()> {
    let base = FieldCtx::parse(q)?;
    let a = base.elem(a)?;
    let free = elements(&base, &parse_list(eta)?)?;
    let modulus = modulus.map(parse_list).transpose()?;
    let recipe = construct_self_dual(&base, ell, &a, &free, modulus.as_deref())?;
    let spec = &recipe.spec;
    let g = spec.generator_matrix();
    let self_dual = g.mul(&g.transpose()).map_err(|e| CliError::Input(e.to_string()))?.is_zero();
    let mds = (binomial(spec.n(), spec.k()) <= cli.enum_budget as u128).then(|| minors_mds_check(&g));
    let report = ConstructReport {
        recipe: recipe.to_json(),
        self_dual,
        mds,
    };
    match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["field", "n", "k", "ell", "a", "s", "self_dual", "mds"])?;
            let r = &report.recipe;
            w.write_record([
                r.spec.field.clone(),
                r.spec.n.to_string(),
                r.spec.k.to_string(),
                r.ell.to_string(),
                r.a.to_string(),
                r.s.to_string(),
                report.self_dual.to_string(),
                report.mds.map(|b| b.to_string()).unwrap_or_default(),
            ])?;
            w.flush()?;
        }
        Format::Table => {
            let r = &report.recipe;
            let (n, k) = (r.spec.n, r.spec.k);
            writeln!(out, "base field: GF({}), split field: GF({}) (s = {})", r.base_field, r.split_field, r.s)?;
            writeln!(out, "code field: GF({})", r.spec.field)?;
            writeln!(out, "m (ascending): {:?}", r.m)?;
            writeln!(out, "alpha: {:?}", r.spec.alpha)?;
            writeln!(out, "v: {:?}", r.spec.v)?;
            writeln!(out, "eta: {:?}", r.spec.eta)?;
            writeln!(out, "self-dual: {}", yes_no(report.self_dual))?;
            match report.mds {
                Some(true) => writeln!(out, "MDS: yes, {}", params(n, k, n - k + 1))?,
                Some(false) => writeln!(out, "MDS: no, d >= {}", r.distance_bound)?,
                None => writeln!(out, "MDS: not checked (too many minors), d >= {}", r.distance_bound)?,
            }
        }
    }
    Ok(())
}

/// Output of `encode`.
#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodeReport {
    pub spec: SpecJson,
    pub message: Vec<u64>,
    pub codeword: Vec<u64>,
}

fn cmd_encode(cli: &Cli, out: &mut impl Write, args: &SpecArgs, message: &str) -> Result<()> {
    let spec = load_spec(args)?;
    let msg = parse_list(message)?;
    let word = spec.encode(&elements(spec.field(), &msg)?)?;
    let report = EncodeReport {
        spec: spec.to_json(),
        message: msg,
        codeword: word.to_ints(),
    };
    match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut *out);
            w.write_record(report.codeword.iter().map(u64::to_string))?;
            w.flush()?;
        }
        Format::Table => {
            let c: Vec<String> = report.codeword.iter().map(u64::to_string).collect();
            writeln!(out, "codeword: ({})", c.join(","))?;
            writeln!(out, "weight: {}", word.weight())?;
        }
    }
    Ok(())
}
