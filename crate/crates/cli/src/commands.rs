//! One function per command. Each returns the JSON report and whether the
//! checks it carries held; input problems come back as `Err`.

use scrollar_core::arith::{parse_poly, Field, Scalar};
use scrollar_core::bundle::{
    inflate, predicted_inflation, BundleLattice, InflationDatum, SplittingType,
};
use scrollar_core::cover::{
    build_tower, kummer_branch_degree, kummer_cover, kummer_type, BinaryCubic, CoverAlgebra,
    PlaneModel,
};
use scrollar_core::invariants::{
    filtration_degrees, hurwitz_dimension, maroni_expected, miranda_construct,
    miranda_degenerate_diagnostic, miranda_realizable, witness_type, HurwitzParams, InvariantError,
};
use scrollar_core::rnc::{lingen_line_rank, lingen_rank, rnc_parametrize, RncData};
use scrollar_core::rng::trial_rng;
use scrollar_core::suites::{run_suite, RunConfig};
use serde_json::{json, Value};

use crate::model::{parse_model, Model};

pub struct Ctx {
    pub field: Field,
    pub seed: u64,
}

pub struct Report {
    pub value: Value,
    pub passed: bool,
    /// Preferred text rendering, when the generic one would be unwieldy.
    pub text: Option<String>,
}

impl Report {
    fn new(value: Value, passed: bool) -> Self {
        Report {
            value,
            passed,
            text: None,
        }
    }
}

/// An input that cannot be acted on: bad syntax, or data outside the
/// domain of the command.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, InputError>;

pub fn scalar(text: &str, field: Field) -> Result<Scalar> {
    let p = parse_poly(text.trim())?;
    if !p.is_constant() {
        return Err(InputError(format!("`{text}` is not a constant")));
    }
    Ok(field.try_reduce(&p.coeff(0))?)
}

fn scalar_list(text: &str, field: Field) -> Result<Vec<Scalar>> {
    text.split(',').map(|s| scalar(s, field)).collect()
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn type_json(t: &SplittingType) -> Value {
    json!({
        "type": t.parts(),
        "degree": t.degree(),
        "h0": t.h0(),
        "h1": t.h1(),
    })
}

fn cover_summary(a: &CoverAlgebra) -> Result<Value> {
    let t = a.tschirnhausen()?.bundle;
    let (branch, genus) = a.branch_and_genus()?;
    Ok(json!({
        "d": a.degree(),
        "char": a.field().characteristic(),
        "provenance": a.provenance().to_string(),
        "type": t.parts(),
        "degree": t.degree(),
        "h0": t.h0(),
        "h1": t.h1(),
        "branch_degree": branch,
        "genus": genus,
    }))
}

fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

/// Rational points of the fiber of a plane model over `x0`, as values of
/// the basis `1, y, ..., y^{d-1}`.
fn fiber_points(m: &PlaneModel, x0: &Scalar, a: &CoverAlgebra, field: Field) -> Result<Value> {
    let fy = m.f().eval_x(x0);
    let roots = fy
        .roots_in_field(field)
        .ok_or_else(|| InputError("fiber polynomial is too large to search for roots".into()))?;
    let d = m.degree();
    let sheets: Vec<Vec<String>> = roots
        .iter()
        .map(|y| (0..d).map(|k| y.pow(k as u32).to_string()).collect())
        .collect();
    Ok(json!({
        "x": x0.to_string(),
        "etale": a.is_etale_at(x0),
        "sheets": sheets,
    }))
}

pub fn model(path: &std::path::Path, fiber_at: Option<&str>, ctx: &Ctx) -> Result<Report> {
    let text = read_file(path)?;
    let m = parse_model(&text, ctx.field)?;
    if fiber_at.is_some() && !matches!(m, Model::Plane(_)) {
        return Err(InputError("--fiber-at needs a plane model".into()));
    }
    let value = match m {
        Model::Plane(m) => {
            let m = m.try_in_field(ctx.field)?;
            let cert = m.certify()?;
            let a = m.to_cover(ctx.field)?;
            let mut v = cover_summary(&a)?;
            v["model"] = json!("plane");
            v["f"] = json!(m.f().to_text());
            v["weights_at_infinity"] = json!(cert.weights);
            v["discriminant_branch_degree"] = json!(cert.branch_degree());
            if let Some(x) = fiber_at {
                let x0 = scalar(x, ctx.field)?;
                v["fiber"] = fiber_points(&m, &x0, &a, ctx.field)?;
            }
            v
        }
        Model::Cover(a) => {
            let mut v = cover_summary(&a)?;
            v["model"] = json!("cover");
            v
        }
        Model::Bundle(b) => {
            let mut v = type_json(&b.splitting_type());
            v["model"] = json!("bundle");
            v["rank"] = json!(b.rank());
            v
        }
    };
    Ok(Report::new(value, true))
}

pub fn pinch(degrees: &[usize], ctx: &Ctx) -> Result<Report> {
    let mut rng = trial_rng("cli-pinch", ctx.seed, 0);
    let tower = build_tower(degrees, ctx.field, &mut rng)?;
    let t = tower.algebra.tschirnhausen()?.bundle;
    let mut want: Vec<i64> = degrees.iter().map(|&l| l as i64).collect();
    want.sort_unstable();
    let passed = t.parts() == want.as_slice();
    let nodes: Vec<Value> = tower
        .nodes
        .iter()
        .map(|n| json!({"y": n.y.to_string(), "on": n.on, "new": n.new}))
        .collect();
    let value = json!({
        "degrees": degrees,
        "expected": want,
        "type": t.parts(),
        "nodes": nodes,
        "cover": tower.algebra.to_json(),
    });
    Ok(Report::new(value, passed))
}

pub fn kummer(d: usize, p: &str, ctx: &Ctx) -> Result<Report> {
    let p = parse_poly(p)?.try_in_field(ctx.field)?;
    let a = kummer_cover(d, &p, ctx.field)?;
    let e = p.degree().unwrap_or(0);
    let expected = kummer_type(d, e)[1..].to_vec();
    let expected_branch = kummer_branch_degree(d, e);
    let mut v = cover_summary(&a)?;
    let passed = v["type"] == json!(expected) && v["branch_degree"] == json!(expected_branch);
    v["p"] = json!(p.to_string());
    v["expected_type"] = json!(expected);
    v["riemann_hurwitz_branch_degree"] = json!(expected_branch);
    Ok(Report::new(v, passed))
}

pub fn inflate_cmd(
    bundle: &std::path::Path,
    point: &str,
    vectors: &str,
    ctx: &Ctx,
) -> Result<Report> {
    let b: BundleLattice = match parse_model(&read_file(bundle)?, ctx.field)? {
        Model::Bundle(b) => b,
        _ => return Err(InputError("--bundle needs bundle JSON".into())),
    };
    let y0 = scalar(point, ctx.field)?;
    let vecs = vectors
        .split(';')
        .map(|row| scalar_list(row, ctx.field))
        .collect::<Result<Vec<_>>>()?;
    let datum = InflationDatum::new(y0.clone(), vecs);
    let before = b.splitting_type();
    let after_lattice = inflate(&b, &datum)?;
    let after = after_lattice.splitting_type();
    let pred = predicted_inflation(&b, &datum)?;
    let passed = pred.h0 == after.h0() && pred.h1 == after.h1();
    let value = json!({
        "point": y0.to_string(),
        "m": datum.len(),
        "before": type_json(&before),
        "after": type_json(&after),
        "predicted": {"h0": pred.h0, "h1": pred.h1, "rank_qv": pred.rank_qv},
        "bundle": after_lattice.to_json(),
    });
    Ok(Report::new(value, passed))
}

pub fn lingen(d: usize, trials: usize, ctx: &Ctx) -> Result<Report> {
    let r = lingen_rank(d, trials, ctx.seed, ctx.field)?;
    Ok(Report::new(
        json!({"d": r.d, "rank": r.rank, "full": r.full}),
        true,
    ))
}

pub fn rnc(a: &str, b: Option<&str>, ctx: &Ctx) -> Result<Report> {
    let a = scalar_list(a, ctx.field)?;
    let b = match b {
        Some(b) => scalar_list(b, ctx.field)?,
        None => vec![ctx.field.one(); a.len()],
    };
    let data = RncData::new(a, b)?;
    let r = rnc_parametrize(&data);
    let mut value = json!({
        "a": strings(data.a()),
        "b": strings(data.b()),
        "components": strings(&r.components),
        "g": r.g.to_string(),
        "coordinate_points_hit": r.coordinate_points_hit,
        "g_squarefree": r.g_squarefree,
        "infinity_multiplicity": r.infinity_multiplicity,
        "transverse": r.transverse,
    });
    if data.d() >= 3 {
        value["pairing_line_rank"] = json!(lingen_line_rank(&data)?);
    }
    Ok(Report::new(value, r.coordinate_points_hit))
}

pub fn miranda(a1: i64, a2: i64, construct: bool, attempts: usize, ctx: &Ctx) -> Result<Report> {
    let realizable = miranda_realizable(a1, a2)?;
    let mut value = json!({
        "a1": a1,
        "a2": a2,
        "realizable": realizable,
        "coefficient_degrees": BinaryCubic::degree_bounds(a1, a2),
    });
    if !construct {
        return Ok(Report::new(value, true));
    }
    ctx.field.check_degree(3)?;
    if !realizable {
        let (failures, stats) =
            miranda_degenerate_diagnostic(a1, a2, attempts, ctx.seed, ctx.field);
        value["diagnostic"] = json!({"trials": attempts, "not_smooth": failures, "stats": stats});
        return Ok(Report::new(value, failures == attempts));
    }
    match miranda_construct(a1, a2, attempts, ctx.seed, ctx.field) {
        Ok(w) => {
            let t = witness_type(&w, ctx.field)?;
            let c = &w.cubic;
            value["witness"] = json!({
                "p": c.p.to_string(),
                "q": c.q.to_string(),
                "r": c.r.to_string(),
                "s": c.s.to_string(),
                "discriminant": w.discriminant.to_string(),
                "infinity_order": w.infinity_order,
                "attempt": w.attempt,
                "stats": w.stats,
            });
            value["type"] = json!(t.parts());
            Ok(Report::new(value, t.parts() == [a1, a2]))
        }
        Err(InvariantError::Exhausted { attempts, stats }) => {
            value["witness"] = Value::Null;
            value["search"] = json!({"attempts": attempts, "stats": stats});
            Ok(Report::new(value, false))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn dims(d: i64, g: i64, gy: i64) -> Result<Report> {
    let p = HurwitzParams::new(d, g, gy)?;
    let dim = hurwitz_dimension(&p)?;
    let value = json!({
        "d": d,
        "g": g,
        "gy": gy,
        "b": p.b(),
        "hurwitz_dim": dim,
        "riemann_hurwitz": (2 * g - 2) - d * (2 * gy - 2),
    });
    Ok(Report::new(value, true))
}

pub fn maroni(parts: &[i64], d: i64, g: i64, gy: i64) -> Result<Report> {
    let t = SplittingType::new(parts.to_vec());
    let p = HurwitzParams::new(d, g, gy)?;
    let c = maroni_expected(&t, &p)?;
    let value = json!({
        "type": t.parts(),
        "d": d,
        "g": g,
        "gy": gy,
        "b": c.b,
        "hurwitz_dim": c.hurwitz_dim,
        "hilb_dim": c.hilb_dim,
        "affine_group_dim": c.affine_group_dim,
        "end_h1": t.end_h1(),
        "maroni_dim": c.maroni_dim,
        "codim": c.codim,
    });
    Ok(Report::new(value, true))
}

pub fn filtration(rank: usize, degree: i64, gap: i64) -> Result<Report> {
    let degs = filtration_degrees(rank, degree, gap)?;
    let gaps: Vec<i64> = degs.windows(2).map(|w| w[1] - w[0]).collect();
    let passed = degs.iter().sum::<i64>() == degree && gaps.iter().all(|&g| g >= gap);
    let value = json!({
        "rank": rank,
        "degree": degree,
        "gap": gap,
        "degrees": degs,
        "gaps": gaps,
    });
    Ok(Report::new(value, passed))
}

pub fn verify(suite: &str, trials: Option<usize>, ctx: &Ctx) -> Result<Report> {
    let cfg = RunConfig {
        trials,
        ..RunConfig::new(ctx.field, ctx.seed)
    };
    let r = run_suite(suite, cfg)?;
    Ok(Report {
        value: serde_json::to_value(&r)?,
        passed: r.passed,
        text: Some(r.summary()),
    })
}
