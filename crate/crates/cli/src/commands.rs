//! Subcommand implementations. Each returns a report plus, for commands
//! that verify something, a description of the first failed check.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use normform::bounds::{bound_report, class_number_lower_bound, degree_bound, r_hat, QuadExact};
use normform::census::verify_cdt;
use normform::polyring::render_element;
use normform::quadfield::{classify, hasse_weil_interval, ideal_class_number, QuadExtension};
use normform::search::{irreducibles_of_degree, smallest_irreducible, SearchResult};
use normform::zeta::class_number_report;
use normform::{Config, Error, FieldSpec, Polynomial};

use crate::parse::parse_poly;
use crate::report::{Record, Report};

pub struct Outcome {
    pub report: Report,
    pub failure: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Outcome {
        Outcome {
            report,
            failure: None,
        }
    }
}

pub fn field(p: u64, m: usize) -> Result<Arc<FieldSpec>> {
    Ok(Arc::new(FieldSpec::new(p, m)?))
}

pub fn extension(field: &Arc<FieldSpec>, text: &str) -> Result<QuadExtension> {
    let d = parse_poly(text, field).with_context(|| format!("cannot parse d = {text:?}"))?;
    Ok(classify(&d)?)
}

fn require_geometric(ext: &QuadExtension) -> Result<()> {
    if !ext.is_geometric() {
        return Err(
            Error::NotGeometric(format!("the infinite place is inert for d = {}", ext.d)).into(),
        );
    }
    Ok(())
}

fn header(ext: &QuadExtension) -> Record {
    Record::new("extension")
        .with("q", ext.q())
        .text("d", &ext.d)
        .with("deg_d", ext.deg_d)
        .with("infinite_place", ext.infinite_place.name())
        .with("genus_k", ext.genus_k)
}

/// `h_{B_K}`, the exact `r` of the degree bound.
fn exact_r(ext: &QuadExtension, config: &Config) -> Result<(u64, u64)> {
    let h_k = class_number_report(ext, config)?.h_k;
    Ok((h_k, ideal_class_number(ext, h_k, config)?))
}

pub fn bound(ext: &QuadExtension, exact: bool, config: &Config) -> Result<Outcome> {
    require_geometric(ext)?;
    let q = ext.q();
    let mut report = Report::default();
    report.push(header(ext));
    let rep = bound_report(q, ext.deg_d, r_hat(q, ext.deg_d));
    let mut rec = Record::new("bound")
        .text("r_hat", &rep.r_used)
        .text("m_value", &rep.m_value)
        .with("bound_n", rep.bound_n);
    if exact {
        let (h_k, h_bk) = exact_r(ext, config)?;
        let exact = bound_report(q, ext.deg_d, QuadExact::integer(h_bk));
        rec = rec
            .with("h_k", h_k)
            .with("r_exact", h_bk)
            .text("m_exact", &exact.m_value)
            .with("bound_n_exact", exact.bound_n);
    }
    report.push(rec);
    Ok(report.into())
}

pub fn corollary(q: u64, deg_d: u32) -> Result<Outcome> {
    let (value, integer) = class_number_lower_bound(q, deg_d)?;
    let mut report = Report::default();
    report.push(
        Record::new("corollary")
            .with("q", q)
            .with("deg_d", deg_d)
            .text("value", value)
            .text("integer_bound", integer),
    );
    Ok(report.into())
}

fn hit_record(kind: &'static str, r: &SearchResult) -> Record {
    let field = r.p.field();
    Record::new(kind)
        .with("degree", r.degree)
        .text("p", &r.p)
        .text("x", &r.x)
        .text("y", &r.y)
        .text("monic", &r.monic)
        .with("unit", render_element(field, r.unit))
}

pub fn search(
    ext: &QuadExtension,
    cap: Option<usize>,
    all_at: Option<usize>,
    config: &Config,
) -> Result<Outcome> {
    require_geometric(ext)?;
    let cap = cap
        .unwrap_or_else(|| degree_bound(ext.q(), ext.deg_d, &r_hat(ext.q(), ext.deg_d)) as usize);
    let out = smallest_irreducible(ext, cap, config)?;
    let mut report = Report::default();
    report.push(header(ext));
    report.push(
        hit_record("smallest", &out.smallest)
            .with("cap", cap)
            .with("exhaustive", !out.upper_bound_only),
    );
    match &out.smallest_coprime {
        Some(c) => report.push(hit_record("smallest_coprime", c)),
        None => report.push(Record::new("smallest_coprime").with("found", false)),
    }
    if let Some(n) = all_at {
        for h in irreducibles_of_degree(ext, n, config)? {
            report.push(hit_record("hit", &h));
        }
    }
    Ok(report.into())
}

pub fn classnum(ext: &QuadExtension, config: &Config) -> Result<Outcome> {
    let rep = class_number_report(ext, config)?;
    let h_bk = ideal_class_number(ext, rep.h_k, config)?;
    let mut report = Report::default();
    report.push(header(ext));
    report.push(
        Record::new("class_number")
            .with("h_k", rep.h_k)
            .with("h_bk", h_bk)
            .text("l_polynomial", &rep.l_poly)
            .with("point_counts", rep.counts.counts.clone())
            .text("predicted_last_count", &rep.predicted_next)
            .with("self_check", "pass"),
    );
    Ok(report.into())
}

pub fn census(ext: &QuadExtension, n_max: u32, config: &Config) -> Result<Outcome> {
    let rows = verify_cdt(ext, n_max, config)?;
    let mut report = Report::default();
    report.push(header(ext).with("r", rows.first().map_or(0, |r| r.r)));
    let mut failure = None;
    for row in &rows {
        if failure.is_none() && !(row.holds && row.lower_bound_holds) {
            failure = Some(format!("census row n = {} fails", row.n));
        }
        report.push(
            Record::new("census")
                .with("n", row.n)
                .with("gamma", row.gamma_n)
                .with("eps", row.eps_n)
                .with("pi", row.pi_n)
                .with("split", row.split_n)
                .with("pi_c", row.pi_c_n)
                .text("predicted", &row.predicted)
                .text("rhs", &row.rhs)
                .with("holds", row.holds)
                .text("pi_lower", &row.pi_lower_bound)
                .with("lower_ok", row.lower_bound_holds)
                .with("genus_clamped", row.genus_clamped),
        );
    }
    Ok(Outcome { report, failure })
}

pub fn hasse_weil(
    q: u64,
    genus: u32,
    ext: Option<&QuadExtension>,
    config: &Config,
) -> Result<Outcome> {
    let (lo, hi) = hasse_weil_interval(q, genus);
    let mut report = Report::default();
    let mut rec = Record::new("hasse_weil")
        .with("q", q)
        .with("genus", genus)
        .text("lower", &lo)
        .text("upper", &hi)
        .text("lower_ceil", lo.ceil())
        .text("upper_floor", hi.floor());
    let mut failure = None;
    if let Some(ext) = ext {
        let h_k = class_number_report(ext, config)?.h_k;
        let h = QuadExact::integer(h_k);
        let inside = lo <= h && h <= hi;
        if !inside {
            failure = Some(format!("h_K = {h_k} lies outside the interval"));
        }
        rec = rec.with("h_k", h_k).with("inside", inside);
    }
    report.push(rec);
    Ok(Outcome { report, failure })
}

const EXAMPLE_D: &str = "T^19+3*T^8+2";
const EXAMPLE_P: &str = "4*T^19+2*T^8+T^2+4*T+2";

pub fn verify_paper_example(config: &Config) -> Result<Outcome> {
    let f5 = field(5, 1)?;
    let ext = extension(&f5, EXAMPLE_D)?;
    let q = ext.q();
    let bound_n = degree_bound(q, ext.deg_d, &r_hat(q, ext.deg_d));
    let (_, corollary) = class_number_lower_bound(q, ext.deg_d)?;
    let found = smallest_irreducible(&ext, bound_n as usize, config)?.smallest;
    let class = class_number_report(&ext, config)?;
    let witness = format!("({}, {})", found.x, found.y);
    let expected_p: Polynomial = parse_poly(EXAMPLE_P, &f5)?;

    let checks: Vec<(&str, String, String)> = vec![
        ("bound_n", "60".into(), bound_n.to_string()),
        ("corollary_bound", "70".into(), corollary.to_string()),
        ("search_degree", "19".into(), found.degree.to_string()),
        ("search_value", expected_p.to_string(), found.p.to_string()),
        ("search_witness", "(T+2, 1)".into(), witness),
        ("class_number", "1348408".into(), class.h_k.to_string()),
        (
            "class_number_self_check",
            class.counts.counts[class.counts.counts.len() - 1].to_string(),
            class.predicted_next.to_string(),
        ),
    ];
    let mut report = Report::default();
    report.push(header(&ext));
    let mut failure = None;
    for (name, expected, actual) in checks {
        let pass = expected == actual;
        if !pass && failure.is_none() {
            failure = Some(format!("{name}: expected {expected}, got {actual}"));
        }
        report.push(
            Record::new("check")
                .with("check", name)
                .with("expected", expected)
                .with("actual", actual)
                .with("status", if pass { "PASS" } else { "FAIL" }),
        );
    }
    Ok(Outcome { report, failure })
}

pub fn deg_from(field: &Arc<FieldSpec>, d: Option<&str>, deg: Option<u32>) -> Result<u32> {
    match (d, deg) {
        (Some(text), _) => Ok(extension(field, text)?.deg_d),
        (None, Some(n)) => Ok(n),
        (None, None) => bail!("pass --d or --deg"),
    }
}
