use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use hyplab_core::amen::{classify, derivation_probe, reiter_curve, reiter_lp, Certificate, Classification};
use hyplab_core::hypercore::TableExport;
use hyplab_core::joins::{join, join_dual_enumerate, transfer_check, verify_join_axioms, JoinTable};
use hyplab_core::multivar::{decay_probe_pairs, decay_report, disc_character};
use hyplab_core::numeric::fmt_num;
use hyplab_core::polyfam::{orthogonality_check, verify_hypergroup};
use hyplab_core::{
    Character, FiniteHypergroup, Hypergroup, PolyCharacter, PolyTable, RecursionFamily, Thresholds, Verdict,
};

use crate::config::{family_spec, parse_grid, parse_list, parse_params, Format, RunConfig, Tolerances};
use crate::error::CliError;
use crate::{Command, GlobalArgs};

/// Resolved settings shared by all commands.
struct Ctx {
    file: RunConfig,
    family: Option<String>,
    params: std::collections::BTreeMap<String, f64>,
    n: Option<usize>,
    format: Format,
    out: Option<PathBuf>,
    tol: Tolerances,
    th: Thresholds,
}

impl Ctx {
    fn new(g: &GlobalArgs) -> Result<Ctx, CliError> {
        let file = match &g.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let params = match &g.params {
            Some(s) => parse_params(s)?,
            None => file.params.clone().unwrap_or_default(),
        };
        let tol = g.tolerances().or(file.tol.clone());
        let th = tol.thresholds()?;
        let n = g.n.or(file.n);
        if n == Some(0) {
            return Err(CliError::config("N must be at least 1"));
        }
        Ok(Ctx {
            family: g.family.clone().or_else(|| file.family.clone()),
            params,
            n,
            format: g.format.or(file.format).unwrap_or(Format::Json),
            out: g.out.clone().or_else(|| file.out.clone()),
            tol,
            th,
            file,
        })
    }

    fn n_or(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }

    fn family(&self) -> Result<Arc<RecursionFamily>, CliError> {
        let spec = family_spec(self.family.clone(), self.params.clone())?;
        Ok(Arc::new(spec.build()?))
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(CliError::io),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes()).map_err(CliError::io)
            }
        }
    }

    fn emit_json(&self, v: &Value) -> Result<(), CliError> {
        let mut s = serde_json::to_string_pretty(v)?;
        s.push('\n');
        self.emit(&s)
    }
}

/// A named point (`s0`, `s1`, `x0`, `xstar`) or a number.
fn resolve_point(f: &RecursionFamily, s: &str) -> Result<(String, f64), CliError> {
    let s = s.trim();
    if let Some(v) = f.named_point(s) {
        return Ok((s.to_string(), v));
    }
    let v: f64 = s
        .parse()
        .map_err(|_| CliError::config(format!("'{s}' is neither a number nor a named point of {}", f.name())))?;
    Ok((s.to_string(), v))
}

fn read_spec(s: &str) -> Result<FiniteHypergroup, CliError> {
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        std::fs::read_to_string(s).map_err(|e| CliError::config(format!("cannot read {s}: {e}")))?
    };
    Ok(FiniteHypergroup::from_json(&text)?)
}

pub fn run(g: &GlobalArgs, cmd: &Command) -> Result<(), CliError> {
    let ctx = Ctx::new(g)?;
    match cmd {
        Command::FamilyInfo => family_info(&ctx),
        Command::Verify => verify(&ctx),
        Command::Classify { grid, points } => classify_cmd(&ctx, grid.as_deref(), points.as_deref()),
        Command::Reiter {
            x,
            c_radius,
            support,
            m,
            curve,
            curve_out,
        } => {
            let radii = match curve {
                Some(s) => Some(parse_list::<usize>(s, "support size")?),
                None => ctx.file.curve.clone(),
            };
            reiter_cmd(
                &ctx,
                x.clone().or_else(|| ctx.file.x.clone()),
                c_radius.or(ctx.file.c_radius).unwrap_or(4),
                support.or(ctx.file.support),
                m.or(ctx.file.m).unwrap_or(10.0),
                radii,
                curve_out.as_ref(),
            )
        }
        Command::Join {
            h,
            j,
            depth,
            dual,
            transfer,
        } => join_cmd(
            &ctx,
            h.clone().or_else(|| ctx.file.h.clone()),
            j.clone().or_else(|| ctx.file.j.clone()),
            depth.or(ctx.file.depth).unwrap_or(4),
            *dual,
            transfer.as_deref(),
        ),
        Command::ScanDecay { x, y, direction } => {
            scan_decay(&ctx, x.clone().or_else(|| ctx.file.x.clone()), *y, direction.as_deref())
        }
        Command::Orthocheck { nodes } => orthocheck(&ctx, nodes.unwrap_or(64)),
        Command::ExportTable => export_table(&ctx),
        Command::Derivation { x, pairs, seed } => derivation(
            &ctx,
            x.clone().or_else(|| ctx.file.x.clone()),
            pairs.unwrap_or(50),
            seed.unwrap_or(7),
        ),
    }
}

fn family_info(ctx: &Ctx) -> Result<(), CliError> {
    let f = ctx.family()?;
    let n = ctx.n_or(10);
    match ctx.format {
        Format::Csv => ctx.emit(&f.coefficient_csv(n)),
        Format::Json => {
            let mut rows = vec![json!({"n": 0, "a": f.a0(), "b": f.b0(), "c": 0.0, "h": 1.0})];
            for (k, (a, b, c)) in f.coeffs(n).into_iter().enumerate().skip(1) {
                rows.push(json!({"n": k, "a": a, "b": b, "c": c, "h": f.log_haar_product(k).exp()}));
            }
            ctx.emit_json(&json!({"family": f.name(), "x_star": f.x_star(), "rows": rows}))
        }
    }
}

fn verify(ctx: &Ctx) -> Result<(), CliError> {
    let f = ctx.family()?;
    let r = verify_hypergroup(&f, ctx.n_or(32));
    match ctx.format {
        Format::Json => ctx.emit_json(&serde_json::to_value(&r)?)?,
        Format::Csv => ctx.emit(&format!(
            "family,n,passed,min_coefficient,max_row_sum_deviation,max_coefficient_sum_deviation\n{},{},{},{},{},{}\n",
            r.family,
            r.n,
            r.passed,
            fmt_num(r.min_coefficient),
            fmt_num(r.max_row_sum_deviation),
            fmt_num(r.max_coefficient_sum_deviation)
        ))?,
    }
    if r.passed {
        Ok(())
    } else {
        Err(CliError::structure(format!(
            "{} is not a hypergroup up to N={}: min coefficient {:e} at {:?}",
            r.family, r.n, r.min_coefficient, r.min_witness
        )))
    }
}

fn classify_cmd(ctx: &Ctx, grid: Option<&str>, points: Option<&str>) -> Result<(), CliError> {
    let f = ctx.family()?;
    let labels: Vec<String> = if let Some(p) = points {
        parse_list(p, "point")?
    } else if let Some(gr) = grid {
        parse_grid(gr)?.iter().map(|x| x.to_string()).collect()
    } else if let Some(p) = &ctx.file.points {
        p.clone()
    } else if let Some(gr) = &ctx.file.grid {
        parse_grid(gr)?.iter().map(|x| x.to_string()).collect()
    } else {
        return Err(CliError::config("classify needs --grid or --points"));
    };
    let xs = labels
        .iter()
        .map(|s| resolve_point(&f, s))
        .collect::<Result<Vec<_>, _>>()?;
    let n = ctx.n_or(256);
    let table = PolyTable::new(f.clone());
    let verdicts: Vec<Result<Verdict, hyplab_core::Error>> = xs
        .par_iter()
        .map(|(_, x)| classify(&table, &PolyCharacter::new(f.clone(), *x), n, &ctx.th))
        .collect();
    let mut text = String::new();
    if ctx.format == Format::Csv {
        text.push_str("point,x,verdict,point_mass,c0_slope,tail_max,certificate\n");
    }
    for ((label, x), v) in xs.iter().zip(verdicts) {
        let v = v?;
        match ctx.format {
            Format::Json => {
                let c = Classification {
                    x: json!(x),
                    verdict: v,
                    thresholds: ctx.th.clone(),
                };
                let mut obj = serde_json::to_value(&c)?;
                obj["point"] = json!(label);
                let _ = writeln!(text, "{}", serde_json::to_string(&obj)?);
            }
            Format::Csv => {
                let (pm, slope, tail, cert) = match &v {
                    Verdict::Amenable { certificate } => {
                        let kind = match certificate {
                            Certificate::TrivialCharacter { .. } => "trivial_character",
                            Certificate::ParityTwist { .. } => "parity_twist",
                            Certificate::L2Mean { .. } => "l2_mean",
                            Certificate::Reiter { .. } => "reiter",
                        };
                        let pm = match certificate {
                            Certificate::L2Mean { point_mass, .. } => fmt_num(*point_mass),
                            _ => String::new(),
                        };
                        (pm, String::new(), String::new(), kind.to_string())
                    }
                    Verdict::NotAmenable { witness } => (
                        fmt_num(witness.point_mass),
                        fmt_num(witness.c0_slope),
                        fmt_num(witness.tail_max),
                        String::new(),
                    ),
                    Verdict::Inconclusive { report } => (
                        fmt_num(report.point_mass.value),
                        fmt_num(report.c0.slope),
                        fmt_num(report.c0.tail_max),
                        String::new(),
                    ),
                };
                let _ = writeln!(text, "{label},{},{},{pm},{slope},{tail},{cert}", fmt_num(*x), v.tag());
            }
        }
    }
    ctx.emit(&text)
}

fn reiter_cmd(
    ctx: &Ctx,
    x: Option<String>,
    c_radius: usize,
    support: Option<usize>,
    m: f64,
    curve: Option<Vec<usize>>,
    curve_out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let f = ctx.family()?;
    let (label, xv) = resolve_point(&f, x.as_deref().unwrap_or("xstar"))?;
    let s = support.unwrap_or_else(|| ctx.n_or(32));
    let table = PolyTable::new(f.clone());
    let alpha = PolyCharacter::new(f.clone(), xv);
    let compact: Vec<usize> = (0..=c_radius).collect();
    let supp: Vec<usize> = (0..=s).collect();
    let cert = reiter_lp(&table, &alpha, &compact, &supp, m)?;
    let curve = match curve {
        Some(radii) => reiter_curve(&table, &alpha, &compact, &radii, m)?,
        None => vec![(s, cert.epsilon, cert.residuals.passed)],
    };
    let mut csv = String::from("support,epsilon,residuals_passed\n");
    for (r, e, p) in &curve {
        let _ = writeln!(csv, "{r},{},{p}", fmt_num(*e));
    }
    if let Some(path) = curve_out {
        std::fs::write(path, &csv).map_err(CliError::io)?;
    }
    match ctx.format {
        Format::Csv => ctx.emit(&csv),
        Format::Json => {
            let pts: Vec<Value> = curve
                .iter()
                .map(|(r, e, p)| json!({"support": r, "epsilon": e, "residuals_passed": p}))
                .collect();
            ctx.emit_json(&json!({
                "family": f.name(),
                "point": label,
                "x": xv,
                "certificate": cert,
                "curve": pts,
            }))
        }
    }
}

fn join_report<J: Hypergroup>(
    ctx: &Ctx,
    k: &JoinTable<J>,
    depth: usize,
    dual: bool,
) -> Result<(Value, bool), CliError> {
    let tol = ctx.tol.join.unwrap_or(1e-10);
    let report = verify_join_axioms(k, depth, tol)?;
    let passed = report.passed;
    let mut out = json!({"axioms": report, "max_deviation": report.max_deviation()});
    if dual {
        let chars = join_dual_enumerate(k, tol)?;
        let list: Vec<Value> = chars
            .iter()
            .map(|c| {
                let mut vals: Vec<(String, f64, f64)> = c.entries().map(|(x, v)| (k.label(x), v.re, v.im)).collect();
                vals.sort_by(|a, b| a.0.cmp(&b.0));
                json!({"name": c.describe(), "values": vals})
            })
            .collect();
        out["dual"] = json!(list);
    }
    Ok((out, passed))
}

fn join_cmd(
    ctx: &Ctx,
    h: Option<String>,
    j: Option<String>,
    depth: usize,
    dual: bool,
    transfer: Option<&str>,
) -> Result<(), CliError> {
    let hg = match h {
        Some(s) => read_spec(&s)?,
        None => FiniteHypergroup::cyclic(2, "h")?,
    };
    let (mut out, passed) = match j {
        Some(s) => {
            if transfer.is_some() {
                return Err(CliError::config("--transfer needs a polynomial J (--family), not --j"));
            }
            let k = join(hg, read_spec(&s)?, depth)?;
            join_report(ctx, &k, depth, dual)?
        }
        None => {
            if dual {
                return Err(CliError::config("--dual needs a finite J (--j)"));
            }
            let f = ctx.family()?;
            let k = join(hg, PolyTable::new(f.clone()), depth)?;
            let (mut out, passed) = join_report(ctx, &k, depth, false)?;
            if let Some(t) = transfer {
                let labels: Vec<String> = parse_list(t, "point")?;
                let n = ctx.n_or(128);
                let mut rows = Vec::new();
                for l in labels {
                    let (label, x) = resolve_point(&f, &l)?;
                    let r = transfer_check(&k, PolyCharacter::new(f.clone(), x), n, &ctx.th)?;
                    rows.push(json!({
                        "point": label,
                        "x": x,
                        "verdict_j": r.verdict_j.tag(),
                        "verdict_k": r.verdict_k.tag(),
                        "agree": r.agree,
                    }));
                }
                out["transfer"] = json!(rows);
            }
            out["j"] = json!(f.name());
            (out, passed)
        }
    };
    out["passed"] = json!(passed);
    match ctx.format {
        Format::Json => ctx.emit_json(&out)?,
        Format::Csv => {
            let a = &out["axioms"];
            let mut s = String::from("check,deviation\n");
            for key in [
                "commutativity",
                "associativity",
                "involution",
                "probability",
                "identity",
                "haar_invariance",
            ] {
                let _ = writeln!(s, "{key},{}", a[key]);
            }
            ctx.emit(&s)?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::structure("join axioms fail within tolerance"))
    }
}

fn scan_decay(ctx: &Ctx, x: Option<String>, y: Option<f64>, direction: Option<&str>) -> Result<(), CliError> {
    let n = ctx.n_or(256);
    let report = if ctx.family.as_deref() == Some("disc") {
        let alpha = *ctx.params.get("alpha").unwrap_or(&1.0);
        if !(alpha > -1.0) {
            return Err(CliError::config(format!("disc needs alpha > -1, got {alpha}")));
        }
        let re: f64 = match x {
            Some(s) => s.parse().map_err(|_| CliError::config(format!("bad x '{s}'")))?,
            None => 0.0,
        };
        let z = Complex64::new(re, y.unwrap_or(0.0));
        if z.norm() > 1.0 {
            return Err(CliError::config(format!(
                "|z| = {} is outside the closed disc",
                z.norm()
            )));
        }
        let d: Vec<usize> = parse_list(direction.unwrap_or("1,1"), "direction")?;
        if d.len() != 2 {
            return Err(CliError::config("direction is m,n"));
        }
        decay_probe_pairs(|(p, q)| disc_character(alpha, p, q, z).norm(), (d[0], d[1]), n)?
    } else {
        let f = ctx.family()?;
        let (_, xv) = resolve_point(&f, x.as_deref().unwrap_or("xstar"))?;
        let c = PolyCharacter::new(f, xv);
        decay_report((0..=n).map(|k| c.value_re(k).abs()).collect())?
    };
    match ctx.format {
        Format::Csv => ctx.emit(&report.to_csv()),
        Format::Json => ctx.emit_json(&serde_json::to_value(&report)?),
    }
}

fn orthocheck(ctx: &Ctx, nodes: usize) -> Result<(), CliError> {
    let f = ctx.family()?;
    let r = orthogonality_check(&f, ctx.n_or(10), nodes)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&serde_json::to_value(&r)?),
        Format::Csv => ctx.emit(&format!(
            "family,n,deviation,nodes,closed_form_density\n{},{},{},{},{}\n",
            r.family,
            r.n,
            fmt_num(r.deviation),
            r.nodes,
            r.closed_form_density
        )),
    }
}

fn export_table(ctx: &Ctx) -> Result<(), CliError> {
    let f = ctx.family()?;
    let table = PolyTable::new(f);
    let e = TableExport::from_table(&table, ctx.n_or(8))?;
    match ctx.format {
        Format::Json => {
            let mut s = e.to_json()?;
            s.push('\n');
            ctx.emit(&s)
        }
        Format::Csv => {
            let mut s = String::from("n,m,t,weight\n");
            for en in &e.entries {
                for (t, w) in &en.measure {
                    let _ = writeln!(s, "{},{},{t},{}", en.n, en.m, fmt_num(*w));
                }
            }
            ctx.emit(&s)
        }
    }
}

fn derivation(ctx: &Ctx, x: Option<String>, pairs: usize, seed: u64) -> Result<(), CliError> {
    let f = ctx.family()?;
    let (_, xv) = resolve_point(&f, x.as_deref().unwrap_or("xstar"))?;
    let r = derivation_probe(f, xv, ctx.n_or(64), pairs, seed)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&serde_json::to_value(&r)?),
        Format::Csv => ctx.emit(&format!(
            "x0,n,sup_derivative,growth_slope,appears_bounded,max_residual,pairs\n{},{},{},{},{},{},{}\n",
            fmt_num(r.x0),
            r.n,
            fmt_num(r.sup_derivative),
            fmt_num(r.growth_slope),
            r.appears_bounded,
            fmt_num(r.max_residual),
            r.pairs
        )),
    }
}
