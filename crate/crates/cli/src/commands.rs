use std::fmt::Write as _;

use num_rational::BigRational;
use qsobolev::asc::AscFamily;
use qsobolev::export::{convergent_table, ApproxPolyDocument, ContextRecord, PolyDocument};
use qsobolev::jfrac::{JFraction, JFractionOptions};
use qsobolev::ladder::Ladder;
use qsobolev::qcore::z_numeric;
use qsobolev::report::SuiteReport;
use qsobolev::sobolev::SobolevFamily;
use qsobolev::suite::{self, SuiteOptions};
use qsobolev::{Backend, Error, Field, Poly, QContext, Real, Result, ZRat};
use serde::Serialize;

use crate::args::{check_n_max, Family, Format, JfracArgs, PlotArgs, PolyArgs, TableArgs, TableKind, VerifyArgs};

/// What a command produced: text for the sink and the process exit code.
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, code: 0 }
    }
}

const DIGITS: usize = 30;

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Error::Parse(e.to_string()))
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn require_exact(ctx: &QContext, what: &str) -> Result<()> {
    if ctx.backend != Backend::Exact {
        return Err(Error::InvalidContext(format!("{what} runs on the exact backend only")));
    }
    Ok(())
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Asc => "asc",
        Family::Sobolev => "sobolev",
    }
}

fn exact_poly(ctx: &QContext, family: Family, n: usize) -> Result<Poly<ZRat>> {
    match family {
        Family::Asc => Ok(AscFamily::<ZRat>::new(ctx)?.poly(n)),
        Family::Sobolev => SobolevFamily::<ZRat>::new(ctx)?.sobolev_poly(n),
    }
}

fn approx_poly(ctx: &QContext, family: Family, n: usize) -> Result<Poly<Real>> {
    match family {
        Family::Asc => Ok(AscFamily::<Real>::new(ctx)?.poly(n)),
        Family::Sobolev => SobolevFamily::<Real>::new(ctx)?.sobolev_poly(n),
    }
}

pub fn poly(args: &PolyArgs) -> Result<Outcome> {
    let ctx = args.common.context()?;
    check_n_max(args.n)?;
    let name = family_name(args.family);
    let body = match ctx.backend {
        Backend::Exact => {
            let p = exact_poly(&ctx, args.family, args.n)?;
            match args.common.format {
                Format::Json => json(&PolyDocument::new(&ctx, name, args.n, &p))?,
                Format::Csv => csv_rows(
                    &["k", "coefficient"],
                    p.coeffs().iter().enumerate().map(|(k, c)| vec![k.to_string(), c.to_string()]),
                )?,
                Format::Text => {
                    let mut s = format!("# {name} n={} ({})\n", args.n, ctx.label());
                    for (k, c) in p.coeffs().iter().enumerate() {
                        writeln!(s, "x^{k}: {c}").unwrap();
                    }
                    s
                }
            }
        }
        Backend::Approx => {
            let p = approx_poly(&ctx, args.family, args.n)?;
            let z = z_numeric(&ctx, ctx.approx_tolerance)?;
            match args.common.format {
                Format::Json => json(&ApproxPolyDocument::new(&ctx, name, args.n, &z, &p, DIGITS))?,
                Format::Csv => csv_rows(
                    &["k", "coefficient"],
                    p.coeffs().iter().enumerate().map(|(k, c)| vec![k.to_string(), c.to_decimal_string(DIGITS)]),
                )?,
                Format::Text => {
                    let mut s = format!("# {name} n={} ({}, Z={})\n", args.n, ctx.label(), z.to_decimal_string(DIGITS));
                    for (k, c) in p.coeffs().iter().enumerate() {
                        writeln!(s, "x^{k}: {}", c.to_decimal_string(DIGITS)).unwrap();
                    }
                    s
                }
            }
        }
    };
    Ok(Outcome::ok(body))
}

pub fn render_report(rep: &SuiteReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json(rep),
        Format::Csv => csv_rows(
            &["identity", "n", "ell", "j", "status", "classical", "note", "witness"],
            rep.records.iter().map(|r| {
                vec![
                    r.identity.clone(),
                    r.n.to_string(),
                    r.ell.map(|l| l.to_string()).unwrap_or_default(),
                    r.j.to_string(),
                    r.status.to_string(),
                    r.classical.to_string(),
                    r.note.clone().unwrap_or_default(),
                    r.witness.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = format!("# {}\n", rep.params);
            for r in &rep.records {
                writeln!(s, "{r}").unwrap();
            }
            use qsobolev::report::Status;
            writeln!(
                s,
                "# {} pass, {} fail, {} info",
                rep.count(Status::Pass),
                rep.count(Status::Fail),
                rep.count(Status::Info)
            )
            .unwrap();
            Ok(s)
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let ctx = args.common.context()?;
    require_exact(&ctx, "verify")?;
    check_n_max(args.n_max)?;
    let mut opts = SuiteOptions::new(args.n_max);
    opts.ells = args.ell.ells();
    opts.fault = args.inject_fault;
    let rep = suite::run(&ctx, &opts)?;
    let code = if rep.all_pass() { 0 } else { 1 };
    Ok(Outcome { body: render_report(&rep, args.common.format)?, code })
}

#[derive(Serialize)]
struct Sample {
    x: f64,
    n: usize,
    value: f64,
}

#[derive(Serialize)]
struct PlotDocument {
    context: ContextRecord,
    samples: Vec<Sample>,
}

/// `points` equally spaced exact abscissae from `a` to `1`.
pub fn grid(a: &BigRational, points: usize) -> Vec<BigRational> {
    let step = (<BigRational as Field>::one() - a) / BigRational::from_integer((points as i64 - 1).into());
    (0..points).map(|i| a + &step * BigRational::from_integer((i as i64).into())).collect()
}

pub fn plot_data(args: &PlotArgs) -> Result<Outcome> {
    let ctx = args.common.context()?;
    if args.grid_points < 2 {
        return Err(Error::InvalidContext("plot-data needs at least 2 grid points".into()));
    }
    let ns: Vec<usize> = if args.n_list.is_empty() { (0..=args.n_max).collect() } else { args.n_list.clone() };
    check_n_max(ns.iter().copied().max().unwrap_or(0))?;
    let xs = grid(&ctx.a, args.grid_points);
    let mut samples = Vec::new();
    match ctx.backend {
        Backend::Exact => {
            let fam = SobolevFamily::<ZRat>::new(&ctx)?;
            let z = z_numeric(&ctx, ctx.approx_tolerance)?;
            for &n in &ns {
                let p = fam.sobolev_poly(n)?;
                for x in &xs {
                    let v = p.eval(&ZRat::from_rational(x)).eval_z(&z)?;
                    samples.push(Sample { x: Real::from_rational(x).to_f64(), n, value: v.to_f64() });
                }
            }
        }
        Backend::Approx => {
            let fam = SobolevFamily::<Real>::new(&ctx)?;
            for &n in &ns {
                let p = fam.sobolev_poly(n)?;
                for x in &xs {
                    let xr = Real::from_rational(x);
                    samples.push(Sample { x: xr.to_f64(), n, value: p.eval(&xr).to_f64() });
                }
            }
        }
    }
    let body = match args.common.format {
        Format::Json => json(&PlotDocument { context: ContextRecord::from_ctx(&ctx), samples })?,
        Format::Csv | Format::Text => csv_rows(
            &["x", "n", "value"],
            samples.iter().map(|s| vec![s.x.to_string(), s.n.to_string(), s.value.to_string()]),
        )?,
    };
    Ok(Outcome::ok(body))
}

pub fn jfrac(args: &JfracArgs) -> Result<Outcome> {
    let ctx = args.common.context()?;
    require_exact(&ctx, "jfrac")?;
    check_n_max(args.n_max)?;
    let lad = Ladder::<ZRat>::from_ctx(&ctx, None)?;
    let mut rows = Vec::new();
    for ell in args.ell.ells() {
        let jf = JFraction::build(&lad, ell, args.n_max, &JFractionOptions::default())?;
        rows.extend(convergent_table(&jf)?);
    }
    let code = if rows.iter().all(|r| r.equal) { 0 } else { 1 };
    let body = match args.common.format {
        Format::Json => json(&rows)?,
        Format::Csv => csv_rows(
            &["n", "ell", "form", "numerator", "denominator", "cf_value", "equal"],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.ell.to_string(),
                    r.form.clone(),
                    r.numerator.clone(),
                    r.denominator.clone(),
                    r.cf_value.clone(),
                    r.equal.to_string(),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = format!("# {}\n", ctx.label());
            for r in &rows {
                writeln!(s, "n={} ell={:+} {:<5} equal={}", r.n, r.ell, r.form, r.equal).unwrap();
                writeln!(s, "  numerator:   {}", r.numerator).unwrap();
                writeln!(s, "  denominator: {}", r.denominator).unwrap();
            }
            s
        }
    };
    Ok(Outcome { body, code })
}

pub fn table(args: &TableArgs) -> Result<Outcome> {
    let ctx = args.common.context()?;
    require_exact(&ctx, "table")?;
    check_n_max(args.n_max)?;
    let lad = Ladder::<ZRat>::from_ctx(&ctx, None)?;
    let fam = lad.family();
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match args.kind {
        TableKind::Norms => {
            let rows = (0..=args.n_max)
                .map(|n| Ok(vec![n.to_string(), fam.asc().norm(n).to_string(), fam.sobolev_norm(n)?.to_string()]))
                .collect::<Result<_>>()?;
            (vec!["n", "classical_norm", "sobolev_norm"], rows)
        }
        TableKind::Connection => {
            let rows = (1..=args.n_max)
                .map(|n| {
                    let c = fam.connection_coeffs(n)?;
                    Ok(vec![
                        n.to_string(),
                        c.c1.to_string(),
                        c.d1.to_string(),
                        c.c2.to_string(),
                        c.d2.to_string(),
                        c.det.to_string(),
                    ])
                })
                .collect::<Result<_>>()?;
            (vec!["n", "c1", "d1", "c2", "d2", "det"], rows)
        }
        TableKind::Recurrence => {
            let mut rows = Vec::new();
            for ell in args.ell.ells() {
                for n in 1..=args.n_max {
                    let t = lad.ttrr_coeffs(n, ell)?;
                    rows.push(vec![
                        n.to_string(),
                        ell.sign().to_string(),
                        t.alpha.to_string(),
                        t.beta.to_string(),
                        t.gamma.to_string(),
                    ]);
                }
            }
            (vec!["n", "ell", "alpha", "beta", "gamma"], rows)
        }
    };
    let body = match args.common.format {
        Format::Csv => csv_rows(&header, rows)?,
        Format::Json => {
            let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| header.iter().zip(r).map(|(h, v)| (h.to_string(), serde_json::Value::from(v.clone()))).collect())
                .collect();
            json(&objs)?
        }
        Format::Text => {
            let mut s = format!("# {} ({})\n", header.join(" | "), ctx.label());
            for r in rows {
                writeln!(s, "{}", r.join(" | ")).unwrap();
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}
