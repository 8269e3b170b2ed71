//! Command pipelines with exact JSON and plain-text reports.

pub mod diagram;
mod io;

pub use io::{format_coords, parse_coords, parse_hint_entries, parse_hints, read_file, write_file, FunctionFile, HintEntry, PieceEntry, PolytopeFile};

use crate::ehrhart::{ehrhart_data, EhrhartData, FoReport};
use crate::error::{Error, Result};
use crate::lattice::{classify_reflexivity, LatticePolytope, Reflexivity};
use crate::rational::{fmt_rat, show_rat, Rat};
use crate::stability::{chow_functional, evaluate_criteria, lambda_certificate, CriteriaInput, CriteriaReport, FamilyParams, PlFunction, StabilityCertificate};
use crate::triangulation::{BoundaryMode, ConeHint, Origin, Piece, TypeFCone};
use crate::weights::{apex_region, classify, cone_triangulations, weights_via_q, ClassificationReport, ConeWeight};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

/// Classification counts are skipped above this dimension.
pub const MAX_CLASSIFY_DIM: usize = 4;

#[derive(Clone, Debug)]
pub struct Options {
    pub k_max: i64,
    pub lambda: Option<Rat>,
    pub hints: Vec<ConeHint>,
    pub seed: u64,
    pub function: Option<FunctionFile>,
}

impl Default for Options {
    fn default() -> Self {
        Options { k_max: 4, lambda: None, hints: vec![], seed: 0, function: None }
    }
}

impl Options {
    pub fn validate(&self) -> Result<()> {
        if self.k_max < 1 {
            return Err(Error::InvalidArgument(format!("k-max must be at least 1, got {}", self.k_max)));
        }
        Ok(())
    }

    fn family(&self) -> FamilyParams {
        FamilyParams { seed: self.seed, ..FamilyParams::default() }
    }
}

/// A command result: JSON fragment, human text and exit code.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit: i32,
}

impl Report {
    pub fn json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n"
    }
}

fn r(x: &Rat) -> Value {
    Value::String(fmt_rat(x))
}

fn rs(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(r).collect())
}

fn join(xs: &[Rat]) -> String {
    xs.iter().map(show_rat).collect::<Vec<_>>().join(", ")
}

fn input_json(p: &LatticePolytope, opts: &Options) -> Value {
    let mut v = json!({
        "name": p.name,
        "dim": p.dim,
        "vertices": p.vertices,
        "kMax": opts.k_max,
        "seed": opts.seed,
        "hints": opts.hints.iter().map(|h| h.vertex_index).collect::<Vec<_>>(),
    });
    if let Some(l) = &opts.lambda {
        v["lambda"] = r(l);
    }
    v
}

fn ehrhart_json(d: &EhrhartData, fo: &FoReport) -> Value {
    let desc: Vec<Rat> = d.ehrhart.coeffs.iter().rev().cloned().collect();
    let sum: Vec<Value> = d.sum.coeffs.iter().rev().map(|c| rs(c)).collect();
    let samples: Vec<Value> = fo.samples.iter().map(|s| json!({"k": s.k, "coordinate": s.coordinate, "value": r(&s.value)})).collect();
    json!({
        "ehrhart": rs(&desc),
        "sumPolynomial": sum,
        "volume": r(&d.volume),
        "boundaryVolume": r(&d.sigma),
        "foVanishes": fo.vanishes,
        "foSamples": samples,
        "foVectors": fo.vectors.iter().map(|v| rs(v)).collect::<Vec<_>>(),
    })
}

pub fn cmd_ehrhart(p: &LatticePolytope) -> Result<Report> {
    let d = ehrhart_data(p)?;
    let fo = d.fo_report();
    let desc: Vec<Rat> = d.ehrhart.coeffs.iter().rev().cloned().collect();
    let mut text = join(&desc) + "\n";
    text += &format!("futaki-ono: {}\n", if fo.vanishes { "vanishes" } else { "does not vanish" });
    if let Some(s) = fo.samples.iter().find(|s| !s.value.is_zero()) {
        text += &format!("witness: x_{} at k={}: {}\n", s.coordinate + 1, s.k, show_rat(&s.value));
    }
    Ok(Report { json: ehrhart_json(&d, &fo), text, exit: 0 })
}

fn piece_json(pc: &Piece) -> Value {
    match pc {
        Piece::Kuhn { u } => json!({"kind": "kuhn", "generators": u}),
        Piece::Layered { a, b, offset } => json!({"kind": "layered", "a": a, "b": b, "offset": offset}),
    }
}

fn cones_json(cones: &[TypeFCone]) -> Value {
    let list: Vec<Value> = cones
        .iter()
        .map(|t| {
            let simplices: Vec<Vec<Vec<i64>>> = t.apex_region().into_iter().map(|s| s.vertices).collect();
            json!({
                "vertexIndex": t.cone.vertex,
                "p": t.cone.apex,
                "generators": t.cone.generators,
                "origin": if t.origin == Origin::Hint { "hint" } else { "default" },
                "pieces": t.pieces.iter().map(piece_json).collect::<Vec<_>>(),
                "apexRegion": simplices,
            })
        })
        .collect();
    json!({ "cones": list })
}

/// Picture of the apex regions: ("svg" | "obj", contents), for n = 2, 3.
pub fn diagram(p: &LatticePolytope, cones: &[TypeFCone]) -> Option<(&'static str, String)> {
    match p.dim {
        2 => Some(("svg", diagram::svg(p, cones))),
        3 => Some(("obj", diagram::obj(p, cones))),
        _ => None,
    }
}

pub fn cmd_triangulate(p: &LatticePolytope, opts: &Options) -> Result<(Report, Vec<TypeFCone>)> {
    opts.validate()?;
    let cones = cone_triangulations(p, &opts.hints)?;
    let mut text = String::new();
    for t in &cones {
        let origin = if t.origin == Origin::Hint { "hint" } else { "default" };
        text += &format!("vertex {}: {} simplices in the apex region ({origin})\n", format_coords(&t.cone.apex), t.pieces.len());
    }
    Ok((Report { json: cones_json(&cones), text, exit: 0 }, cones))
}

fn weights_json(c: &ClassificationReport) -> Value {
    let vs: Vec<Value> = c
        .per_vertex
        .iter()
        .map(|v| {
            json!({
                "p": v.p, "alpha": v.alpha, "beta": v.beta, "gamma": v.gamma,
                "small": v.small, "medium": v.medium, "typeF": v.type_f_verified, "failures": v.failures,
            })
        })
        .collect();
    json!({ "vertices": vs, "class": c.class.label(), "gamma": c.gamma, "kMax": c.k_max })
}

fn weights_text(c: &ClassificationReport) -> String {
    let mut text = String::new();
    for v in &c.per_vertex {
        text += &format!(
            "vertex {}: alpha {} beta {} gamma {}{}{}\n",
            format_coords(&v.p),
            v.alpha,
            v.beta,
            v.gamma,
            if v.small { ", small" } else { "" },
            if v.medium { ", medium" } else { "" }
        );
        for f in &v.failures {
            text += &format!("  {f}\n");
        }
    }
    text += &format!("class: {} (alpha {}, beta {}, gamma {})\n", c.class.label(), c.alpha, c.beta, c.gamma);
    text
}

fn classification(p: &LatticePolytope, opts: &Options) -> Result<ClassificationReport> {
    if p.dim > MAX_CLASSIFY_DIM {
        return Err(Error::DimensionTooLarge(p.dim, MAX_CLASSIFY_DIM));
    }
    let cones = cone_triangulations(p, &opts.hints)?;
    Ok(classify(p, &cones, opts.k_max, BoundaryMode::Literal))
}

pub fn cmd_weights(p: &LatticePolytope, opts: &Options) -> Result<Report> {
    opts.validate()?;
    let c = classification(p, opts)?;
    Ok(Report { json: weights_json(&c), text: weights_text(&c), exit: 0 })
}

fn reflexivity_json(x: &Reflexivity) -> Value {
    json!({
        "weaklyReflexive": x.weakly_reflexive,
        "c": x.c,
        "reflexive": x.reflexive,
        "symmetric": x.symmetric,
        "center": x.center.as_deref().map(rs),
        "fixedPoint": x.fixed_point.as_deref().map(rs),
    })
}

fn certificate_json(c: &StabilityCertificate) -> Value {
    json!({
        "value": r(&c.lambda),
        "basis": c.basis.label(),
        "certifying": c.certifying(),
        "affineBalanced": c.affine_balanced,
    })
}

fn certificate(p: &LatticePolytope, opts: &Options) -> Result<StabilityCertificate> {
    lambda_certificate(p, opts.lambda.clone(), &opts.family(), false)
}

pub fn cmd_lambda(p: &LatticePolytope, opts: &Options) -> Result<Report> {
    opts.validate()?;
    let refl = classify_reflexivity(p);
    let c = certificate(p, opts)?;
    let text = format!("lambda {} ({}{})\n", show_rat(&c.lambda), c.basis.label(), if c.certifying() { "" } else { ", not certifying" });
    Ok(Report { json: json!({"reflexivity": reflexivity_json(&refl), "lambda": certificate_json(&c)}), text, exit: 0 })
}

pub fn cmd_chow_test(p: &LatticePolytope, opts: &Options) -> Result<Report> {
    let file = opts.function.as_ref().ok_or_else(|| Error::MissingInput("test function (--function)".into()))?;
    let f: PlFunction = file.resolve(p)?;
    let c = chow_functional(p, &f, file.dilation())?;
    let (sign, verdict, exit) = if c.value.is_negative() {
        ("<", "destabilizing", 1)
    } else if c.value.is_zero() {
        ("=", "neutral", 0)
    } else {
        (">", "nonnegative", 0)
    };
    let text = format!("{} - {} {sign} 0: {verdict}\n", show_rat(&c.lattice_average), show_rat(&c.integral_average));
    let json = json!({
        "k": c.k,
        "pieces": f.pieces.len(),
        "latticeAverage": r(&c.lattice_average),
        "integralAverage": r(&c.integral_average),
        "value": r(&c.value),
        "destabilizing": c.value.is_negative(),
    });
    Ok(Report { json, text, exit })
}

fn criteria_json(c: &CriteriaReport) -> Value {
    let list: Vec<Value> = c
        .criteria
        .iter()
        .map(|x| {
            let margins: Vec<Value> = x.margins.iter().map(|(k, v)| json!({"name": k, "value": r(v)})).collect();
            json!({
                "name": x.name, "applicable": x.applicable, "inequalitiesHold": x.inequalities_hold,
                "passed": x.passed, "margins": margins, "notes": x.notes,
            })
        })
        .collect();
    Value::Array(list)
}

/// Apex-region weights for every vertex, when all of them are integral.
fn q_weights(p: &LatticePolytope) -> Option<Vec<ConeWeight>> {
    p.vertex_cones().iter().map(|c| apex_region(c).and_then(|a| weights_via_q(&a)).ok()).collect()
}

/// Ehrhart and FO data, reflexivity, classification, λ and the criteria.
pub fn cmd_analyze(p: &LatticePolytope, opts: &Options) -> Result<Report> {
    opts.validate()?;
    let d = ehrhart_data(p)?;
    let fo = d.fo_report();
    let refl = classify_reflexivity(p);
    let cert = certificate(p, opts)?;
    let desc: Vec<Rat> = d.ehrhart.coeffs.iter().rev().cloned().collect();
    let mut text = format!("polytope {} (dim {}, {} vertices, {} lattice points)\n", p.name, p.dim, p.vertices.len(), show_rat(&d.ehrhart.eval(1)));
    text += &format!("ehrhart: {}\n", join(&desc));
    text += &format!("futaki-ono: {}\n", if fo.vanishes { "vanishes" } else { "does not vanish" });
    text += &format!(
        "reflexivity: {}{}\n",
        match refl.c {
            Some(c) if refl.weakly_reflexive => format!("weakly reflexive, c = {c}"),
            _ => "not weakly reflexive".into(),
        },
        if refl.symmetric { ", symmetric" } else { "" }
    );
    text += &format!("lambda: {} ({})\n", show_rat(&cert.lambda), cert.basis.label());

    let mut json = json!({
        "input": input_json(p, opts),
        "ehrhart": ehrhart_json(&d, &fo),
        "reflexivity": reflexivity_json(&refl),
        "lambda": certificate_json(&cert),
    });
    let (criteria, certified) = match classification(p, opts) {
        Ok(cls) => {
            text += &weights_text(&cls);
            json["weights"] = weights_json(&cls);
            let qw = q_weights(p);
            let inp = CriteriaInput { dim: p.dim, fo_vanishes: fo.vanishes, certificate: Some(&cert), classification: Some(&cls), q_weights: qw.as_deref() };
            let rep = evaluate_criteria(&inp)?;
            for c in &rep.criteria {
                text += &format!("criterion {}: {}\n", c.name, if c.passed { "passed" } else { "failed" });
                for (k, v) in &c.margins {
                    text += &format!("  {k}: {}\n", show_rat(v));
                }
                for n in &c.notes {
                    text += &format!("  {n}\n");
                }
            }
            (criteria_json(&rep), rep.certified)
        }
        Err(e @ Error::DimensionTooLarge(..)) => {
            text += &format!("weights: skipped ({e})\n");
            json["weights"] = json!({"skipped": e.to_string()});
            (json!([]), false)
        }
        Err(e) => return Err(e),
    };
    json["criteria"] = criteria;
    json["certified"] = json!(certified);
    text += &format!("verdict: {}\n", if certified { "certified asymptotically Chow polystable" } else { "not certified" });
    Ok(Report { json, text, exit: if certified { 0 } else { 1 } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_named;

    #[test]
    fn triangle_ehrhart_text() {
        let p = build_named("simplex2", &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let rep = cmd_ehrhart(&p).unwrap();
        assert_eq!(rep.text.lines().next(), Some("1/2, 3/2, 1"));
        assert_eq!(rep.json["ehrhart"], json!(["1/2", "3/2", "1/1"]));
    }

    #[test]
    fn analyze_is_deterministic() {
        let p = build_named("square", &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let a = cmd_analyze(&p, &Options::default()).unwrap();
        let b = cmd_analyze(&p, &Options::default()).unwrap();
        assert_eq!(a.json_string(), b.json_string());
        assert!(a.json["weights"]["class"].is_string());
    }

    #[test]
    fn chow_needs_a_function() {
        let p = build_named("square", &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert!(matches!(cmd_chow_test(&p, &Options::default()), Err(Error::MissingInput(_))));
        assert!(cmd_weights(&p, &Options { k_max: 0, ..Options::default() }).is_err());
    }
}
