//! The verification driver: every residual check over a range of degrees,
//! collected into one sorted report.

use rayon::prelude::*;

use crate::closed_forms;
use crate::error::{Error, Result};
use crate::fault::Fault;
use crate::jfrac::{JFraction, JFractionOptions};
use crate::ladder::{LadderKind, Ladder};
use crate::qcore::QContext;
use crate::qpoly::{Ell, Poly};
use crate::report::{IdentityReport, Residual, Status, SuiteReport};
use crate::scalar::{rat, Field, ZRat};

/// Sample abscissae for pointwise checks, tried in order.
pub const SAMPLE_POINTS: [(i64, i64); 5] = [(1, 3), (2, 3), (3, 5), (-1, 3), (-2, 5)];
/// Used when a primary point is not admissible.
pub const FALLBACK_POINTS: [(i64, i64); 5] = [(3, 7), (-3, 7), (5, 7), (4, 9), (-5, 9)];

/// Families of checks that can be switched on independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Classical,
    Kernels,
    Sobolev,
    Hypergeometric,
    Ladder,
    Holonomic,
    JFraction,
    Printed,
}

impl Group {
    pub const ALL: [Group; 8] = [
        Group::Classical,
        Group::Kernels,
        Group::Sobolev,
        Group::Hypergeometric,
        Group::Ladder,
        Group::Holonomic,
        Group::JFraction,
        Group::Printed,
    ];
}

/// Highest degree checked per group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ranges {
    pub classical: usize,
    pub kernels: usize,
    pub sobolev: usize,
    pub hypergeometric: usize,
    pub ladder: usize,
    pub holonomic: usize,
    pub jfraction: usize,
}

impl Ranges {
    pub fn uniform(n: usize) -> Self {
        Ranges { classical: n, kernels: n, sobolev: n, hypergeometric: n, ladder: n, holonomic: n, jfraction: n }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub ranges: Ranges,
    pub groups: Vec<Group>,
    pub ells: Vec<Ell>,
    pub fault: Option<Fault>,
}

impl SuiteOptions {
    pub fn new(n_max: usize) -> Self {
        SuiteOptions { ranges: Ranges::uniform(n_max), groups: Group::ALL.to_vec(), ells: Ell::BOTH.to_vec(), fault: None }
    }

    pub fn with_groups(mut self, groups: &[Group]) -> Self {
        self.groups = groups.to_vec();
        self
    }

    fn has(&self, g: Group) -> bool {
        self.groups.contains(&g)
    }
}

/// Shared state of one run.
struct Run<'a> {
    lad: &'a Ladder<ZRat>,
    ctx: &'a QContext,
    params: String,
}

type Task<'a> = Box<dyn Fn(&Run<'a>) -> Vec<IdentityReport> + Send + Sync + 'a>;

impl Run<'_> {
    fn rec(&self, name: &str, n: usize, ell: Option<Ell>, status: Status) -> IdentityReport {
        IdentityReport::new(name, n, ell, self.ctx.j, &self.params, status)
    }

    /// Pass iff every residual vanishes; the first nonzero one is the witness.
    fn check<R: Residual>(&self, name: &str, n: usize, ell: Option<Ell>, res: Result<Vec<R>>) -> IdentityReport {
        match res {
            Ok(rs) => match rs.iter().position(|r| !r.vanishes()) {
                None => self.rec(name, n, ell, Status::Pass),
                Some(i) => {
                    let r = self.rec(name, n, ell, Status::Fail).with_witness(rs[i].witness());
                    if rs.len() > 1 {
                        r.with_note(format!("part {} of {}", i + 1, rs.len()))
                    } else {
                        r
                    }
                }
            },
            Err(e) => self.rec(name, n, ell, Status::Fail).with_witness(format!("error: {e}")),
        }
    }
}

fn same<T: PartialEq>(a: T, b: T) -> bool {
    a == b
}

/// Runs the selected checks and returns the sorted report.
pub fn run(ctx: &QContext, opts: &SuiteOptions) -> Result<SuiteReport> {
    let lad = Ladder::<ZRat>::from_ctx(ctx, opts.fault)?;
    run_with(&lad, opts)
}

/// As [`run`], reusing an existing ladder and its caches.
pub fn run_with(lad: &Ladder<ZRat>, opts: &SuiteOptions) -> Result<SuiteReport> {
    let ctx = lad.family().ctx();
    let params = ctx.label();
    let run = Run { lad, ctx, params: params.clone() };
    let tasks = tasks(opts);
    let records: Vec<IdentityReport> = tasks.par_iter().flat_map_iter(|t| t(&run)).collect();
    Ok(SuiteReport::new(params, records))
}

fn tasks<'a>(opts: &'a SuiteOptions) -> Vec<Task<'a>> {
    let mut out: Vec<Task<'a>> = Vec::new();
    let r = opts.ranges;
    if opts.has(Group::Classical) {
        for n in 0..=r.classical {
            out.push(Box::new(move |run| classical_checks(run, n)));
        }
    }
    if opts.has(Group::Kernels) {
        for n in 0..=r.kernels {
            out.push(Box::new(move |run| kernel_checks(run, n)));
        }
    }
    if opts.has(Group::Sobolev) {
        for n in 0..=r.sobolev {
            out.push(Box::new(move |run| sobolev_checks(run, n)));
        }
    }
    if opts.has(Group::Hypergeometric) {
        for n in 1..=r.hypergeometric {
            out.push(Box::new(move |run| vec![hypergeometric_check(run, n)]));
        }
    }
    for &ell in &opts.ells {
        if opts.has(Group::Ladder) {
            for n in 1..=r.ladder {
                out.push(Box::new(move |run| ladder_checks(run, n, ell)));
            }
        }
        if opts.has(Group::Holonomic) {
            for n in 1..=r.holonomic {
                out.push(Box::new(move |run| holonomic_checks(run, n, ell)));
            }
        }
        if opts.has(Group::JFraction) && r.jfraction >= 1 {
            out.push(Box::new(move |run| jfraction_checks(run, r.jfraction, ell)));
        }
    }
    if opts.has(Group::Printed) {
        out.push(Box::new(printed_checks));
    }
    out
}

fn classical_checks(run: &Run<'_>, n: usize) -> Vec<IdentityReport> {
    let asc = run.lad.family().asc();
    let mut out = vec![
        run.check("asc-recurrence-vs-sum", n, None, Ok(vec![asc.poly(n).sub(&asc.poly_hypergeometric(n))])),
        run.check("asc-structure-relation", n, None, Ok(vec![asc.structure_residual(n)])),
        run.check("asc-second-order-equation", n, None, Ok(vec![asc.second_order_residual(n)])),
    ];
    let shifts: Result<Vec<Poly<ZRat>>> = (1..=n)
        .map(|k| Ok(asc.ops().deriv_iter(&asc.poly(n), Ell::Plus, k).sub(&asc.forward_shift(n, k)?)))
        .collect();
    out.push(run.check("asc-forward-shift", n, None, shifts));
    out
}

fn kernel_checks(run: &Run<'_>, n: usize) -> Vec<IdentityReport> {
    let asc = run.lad.family().asc();
    let cd = asc.cd_kernel(n);
    let mut out = vec![run.check(
        "cd-kernel-sum-vs-quotient",
        n,
        None,
        asc.cd_kernel_quotient(n).map(|k| vec![cd.sub(&k), cd.sub(&cd.swap())]),
    )];
    if n >= 1 {
        let j = run.ctx.j;
        let one = ZRat::one();
        let res: Result<Vec<_>> = [asc.a().clone(), one]
            .iter()
            .map(|y0| {
                let lhs = asc.kernel_ab_combination(n, y0)?;
                Ok(lhs.sub(&asc.kernel_eval_y(n as i64 - 1, j, y0).into()))
            })
            .collect();
        out.push(run.check("kernel-closed-form", n, None, res));
    }
    out
}

fn sobolev_checks(run: &Run<'_>, n: usize) -> Vec<IdentityReport> {
    let fam = run.lad.family();
    let asc = fam.asc();
    let mut out = Vec::new();
    let p = match fam.sobolev_poly(n) {
        Ok(p) => p,
        Err(e) => {
            return vec![run.rec("sobolev-construction", n, None, Status::Fail).with_witness(format!("error: {e}"))]
        }
    };
    let shape_ok = p.is_monic() && p.degree() == Some(n);
    out.push(run.check("sobolev-monic-degree", n, None, Ok(vec![shape_ok])));
    out.push(run.check(
        "sobolev-gram-schmidt-route",
        n,
        None,
        fam.sobolev_poly_gs(n).map(|g| vec![p.sub(&g)]),
    ));
    let orth: Result<Vec<ZRat>> = (0..n).map(|m| Ok(fam.inner_product(&fam.sobolev_poly(m)?, &p))).collect();
    out.push(match orth {
        Ok(v) => match v.iter().position(|c| !c.is_zero()) {
            None => run.rec("sobolev-orthogonality", n, None, Status::Pass),
            Some(m) => run
                .rec("sobolev-orthogonality", n, None, Status::Fail)
                .with_witness(format!("<U_{m}, U_{n}> = {}", v[m])),
        },
        Err(e) => run.rec("sobolev-orthogonality", n, None, Status::Fail).with_witness(format!("error: {e}")),
    });
    out.push(run.check(
        "sobolev-fourier-coefficients",
        n,
        None,
        fam.fourier_coeffs(n).map(|c| vec![same(c, fam.expand_in_asc(&p))]),
    ));
    if n <= run.ctx.j {
        let r = run.check("sobolev-low-degree-coincidence", n, None, Ok(vec![p.sub(&asc.poly(n))]));
        out.push(r.with_note(format!("n <= j = {}", run.ctx.j)));
    }
    if run.ctx.is_classical() {
        out.push(run.check("sobolev-massless-coincidence", n, None, Ok(vec![p.sub(&asc.poly(n))])).classical());
    }
    if n >= 1 {
        out.push(run.check("connection-forward", n, None, fam.connection_residuals(n).map(|(a, b)| vec![a, b])));
        let inv = fam.inverse_connection(n).map(|(u, u1)| vec![u.sub(&asc.poly(n)), u1.sub(&asc.poly(n - 1))]);
        out.push(run.check("connection-inverse", n, None, inv));
    }
    out
}

fn hypergeometric_check(run: &Run<'_>, n: usize) -> IdentityReport {
    const NAME: &str = "hypergeometric-representation";
    let fam = run.lad.family();
    let p = match fam.sobolev_poly(n) {
        Ok(p) => p,
        Err(e) => return run.rec(NAME, n, None, Status::Fail).with_witness(format!("error: {e}")),
    };
    let mut used = Vec::new();
    let mut skipped = 0;
    for (a, b) in SAMPLE_POINTS.into_iter().chain(FALLBACK_POINTS) {
        if used.len() == SAMPLE_POINTS.len() {
            break;
        }
        let x0 = ZRat::from_rational(&rat(a, b));
        match fam.hypergeom_eval(n, &x0) {
            Ok(v) => {
                if v != p.eval(&x0) {
                    return run
                        .rec(NAME, n, None, Status::Fail)
                        .with_witness(format!("x = {a}/{b}: series {v} vs polynomial {}", p.eval(&x0)));
                }
                used.push(format!("{a}/{b}"));
            }
            Err(Error::UndefinedAuxiliary(_) | Error::ZeroDenominator(_)) => skipped += 1,
            Err(e) => return run.rec(NAME, n, None, Status::Fail).with_witness(format!("error: {e}")),
        }
    }
    if used.is_empty() {
        return run
            .rec(NAME, n, None, Status::Info)
            .with_note("representation undefined at every sample point");
    }
    let status = if used.len() == SAMPLE_POINTS.len() { Status::Pass } else { Status::Info };
    run.rec(NAME, n, None, status)
        .with_note(format!("points {}; {skipped} skipped", used.join(", ")))
}

fn ladder_checks(run: &Run<'_>, n: usize, ell: Ell) -> Vec<IdentityReport> {
    let lad = run.lad;
    let e = Some(ell);
    let mut out = vec![
        run.check("derivative-expansion", n, e, lad.expansion_residuals(n, ell).map(|(a, b)| vec![a, b])),
        run.check("structure-relation", n, e, lad.structure_residuals(n, ell).map(|(a, b)| vec![a, b])),
        run.check("ladder-annihilation", n, e, lad.ladder_apply(n, ell, LadderKind::Annihilate).map(|r| vec![r])),
        run.check("ladder-creation", n, e, lad.ladder_apply(n, ell, LadderKind::Create).map(|r| vec![r])),
        run.check("three-term-recurrence", n, e, lad.ttrr_residual(n, ell).map(|r| vec![r])),
    ];
    if run.ctx.is_classical() {
        let asc = lad.family().asc();
        let ratios = lad.ttrr_ratios(n, ell).map(|(b, g)| {
            let lin = Poly::new(vec![asc.beta(n).neg(), ZRat::one()]);
            vec![b.sub(&lin.into()), g.add(&crate::qpoly::RatFun::constant(asc.gamma(n)))]
        });
        out.push(run.check("recurrence-massless-ratios", n, e, ratios).classical());
    }
    out
}

fn holonomic_checks(run: &Run<'_>, n: usize, ell: Ell) -> Vec<IdentityReport> {
    let lad = run.lad;
    let e = Some(ell);
    let mut out = vec![
        run.check("holonomic-first", n, e, lad.holonomic1_residual(n, ell).map(|r| vec![r])),
        run.check("holonomic-second", n, e, lad.holonomic2_residual(n, ell).map(|r| vec![r])),
    ];
    if run.ctx.is_classical() && ell == Ell::Minus {
        let r = run.check("holonomic-massless-multiple", n, e, lad.holonomic_classical_multiple(n).map(|b| vec![b]));
        out.push(r.classical());
    }
    out
}

fn jfraction_checks(run: &Run<'_>, n_max: usize, ell: Ell) -> Vec<IdentityReport> {
    let e = Some(ell);
    let jf = match JFraction::build(run.lad, ell, n_max, &JFractionOptions::default()) {
        Ok(jf) => jf,
        Err(err) => return vec![run.rec("jfrac-build", 0, e, Status::Fail).with_witness(format!("error: {err}"))],
    };
    let mut out = Vec::new();
    for n in 0..=n_max {
        if n >= 1 {
            out.push(run.check("jfrac-denominator-recurrence", n, e, jf.denominator_residual(n).map(|r| vec![r])));
            out.push(run.check("jfrac-determinant", n, e, jf.determinant_residual(n).map(|r| vec![r])));
        }
        out.push(run.check("jfrac-convergent-hat", n, e, jf.convergent_hat(n).and_then(|c| c.agrees()).map(|b| vec![b])));
        out.push(run.check(
            "jfrac-convergent-tilde",
            n,
            e,
            jf.convergent_tilde(n).and_then(|c| c.agrees()).map(|b| vec![b]),
        ));
        if n < n_max {
            out.push(run.check("jfrac-omega-recursion", n, e, jf.omega_residual(n).map(|r| vec![r])));
        }
        if n >= 1 {
            out.push(match jf.ratio_sum_probe(n) {
                Ok((lhs, rhs)) if lhs == rhs => run.rec("jfrac-ratio-sum", n, e, Status::Info).with_note("claimed sum holds"),
                Ok((lhs, rhs)) => run
                    .rec("jfrac-ratio-sum", n, e, Status::Info)
                    .with_note("claimed sum refuted")
                    .with_witness(format!("ratio {lhs}  vs  sum {rhs}")),
                Err(err) => run.rec("jfrac-ratio-sum", n, e, Status::Info).with_note(format!("not computed: {err}")),
            });
        }
    }
    out
}

/// Published low-degree forms, compared for information only.
fn printed_checks(run: &Run<'_>) -> Vec<IdentityReport> {
    let fam = run.lad.family();
    let Ok(p3) = fam.sobolev_poly(3) else { return Vec::new() };
    let mut out = Vec::new();
    if run.ctx.j == 2 {
        for c in closed_forms::cubic_j2(run.ctx, &p3) {
            let r = run.rec("printed-cubic-j2", 3, None, Status::Info);
            out.push(if c.agrees() {
                r.with_note(format!("{}: agrees", c.label))
            } else {
                r.with_note(format!("{}: differs", c.label))
                    .with_witness(format!("printed {} vs computed {}", c.printed, c.computed))
            });
        }
    }
    if run.ctx.j >= 3 || run.ctx.is_classical() {
        let (literal, amended) = closed_forms::cubic_mass_free(run.ctx);
        for (label, poly) in [("literal", literal), ("amended", amended)] {
            let r = run.rec("printed-cubic-mass-free", 3, None, Status::Info);
            out.push(if poly == p3 {
                r.with_note(format!("{label}: agrees"))
            } else {
                r.with_note(format!("{label}: differs")).with_witness(poly.sub(&p3).to_string())
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let ctx = QContext::parse("1/2", "-1", "1", "1", 2).unwrap();
        let rep = run(&ctx, &SuiteOptions::new(3)).unwrap();
        let fails: Vec<_> = rep.failures().map(|r| r.to_string()).collect();
        assert!(fails.is_empty(), "{fails:#?}");
        assert!(rep.count(Status::Pass) > 50);
        assert!(rep.records.iter().any(|r| r.identity == "jfrac-ratio-sum"));
    }

    #[test]
    fn classical_flags() {
        let ctx = QContext::parse("1/2", "-1", "0", "0", 2).unwrap();
        let rep = run(&ctx, &SuiteOptions::new(3)).unwrap();
        assert!(rep.all_pass());
        assert!(rep.records.iter().any(|r| r.classical && r.status == Status::Pass));
    }

    #[test]
    fn fault_is_caught() {
        let ctx = QContext::parse("1/2", "-1", "1", "1", 2).unwrap();
        let mut opts = SuiteOptions::new(3).with_groups(&[Group::Ladder]);
        opts.fault = Some(Fault::F4);
        let rep = run(&ctx, &opts).unwrap();
        let f = rep.failures().next().expect("fault must surface");
        assert!(f.witness.is_some());
    }
}
