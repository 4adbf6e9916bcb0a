use std::fs;
use std::path::Path;

use pedal_core::conics::classify_conic;
use pedal_core::reuleaux::{
    check_elementary_properties, check_inverted_configuration, classify_by_position, endpoint_conic,
    locate_parabola_pedals, position_function, sweep_study, verify_focus_theorem, PARABOLA_TOL,
};
use pedal_core::{conic_features, HexagonConfig, Point, VerificationReport};
use serde_json::{json, Value};

use crate::output::{sweep_csv, to_json};
use crate::scene::{check_n, check_positive, check_t, Scene, DEFAULT_T, DEFAULT_TOLERANCE};
use crate::svg::{parse_layers, render};
use crate::{Cli, CliError, Command, PonceletArgs, RenderArgs, SceneArgs, SweepArgs, VerifyArgs};

/// Smallest focus deviation, relative to the scale, an asymmetric sweep must
/// show somewhere.
pub const ASYMMETRIC_FOCUS_DEVIATION_MIN: f64 = 1e-4;

/// What a command produced: the main document and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub document: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn document(
    command: &str,
    scene: Option<&Scene>,
    parameters: Value,
    checks: &VerificationReport,
    extra: Value,
) -> String {
    let mut doc = json!({
        "artifact": {
            "name": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "schema": 1,
        },
        "command": command,
        "scene": scene.map(|s| value(&s.spec)).unwrap_or(Value::Null),
        "parameters": parameters,
        "checks": value(checks),
        "failures": checks.failures(),
        "pass": checks.pass,
    });
    if let (Value::Object(doc), Value::Object(extra)) = (&mut doc, extra) {
        doc.extend(extra);
    }
    to_json(&doc)
}

struct Resolved {
    scene: Scene,
    t: f64,
    k: f64,
    tol: f64,
}

fn resolve(args: &SceneArgs) -> Result<Resolved, CliError> {
    let scene = Scene::load(&args.scene)?;
    let t = check_t(args.t.unwrap_or_else(|| scene.t()))?;
    let k = check_positive("k", args.k.unwrap_or_else(|| scene.inversion_k()))?;
    let tol = check_positive("tol", args.tol.unwrap_or_else(|| scene.tolerance()))?;
    Ok(Resolved { scene, t, k, tol })
}

fn parameters(r: &Resolved) -> Value {
    json!({ "t": r.t, "k": r.k, "tolerance": r.tol })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let res = resolve(&args.scene)?;
    let tri = &res.scene.triangle;
    let m = tri.pedal_point_at(res.t)?;
    let mut rep = VerificationReport::new(tri.scale(), res.tol);
    if tri.is_symmetric() {
        rep.absorb("focus_theorem", &verify_focus_theorem(tri, m, res.tol)?);
        rep.absorb("inverted", &check_inverted_configuration(tri, m, res.k, res.tol)?);
    } else {
        let q = endpoint_conic(tri, m)?;
        let dev = conic_features(&q)?.nearest_focus(m).distance(m);
        if args.expect_focus_at_m {
            rep.length("focus_at_pedal", dev);
        } else {
            rep.value("focus_deviation", dev / tri.scale());
        }
    }
    rep.absorb("elementary", &check_elementary_properties(tri, m, res.tol)?);
    let doc = document(
        "verify",
        Some(&res.scene),
        parameters(&res),
        &rep,
        json!({ "symmetric": tri.is_symmetric() }),
    );
    Ok(Outcome {
        pass: rep.pass,
        document: doc,
    })
}

/// The JSON report and the CSV text of a sweep.
pub fn sweep(args: &SweepArgs) -> Result<(Outcome, String), CliError> {
    let res = resolve(&args.scene)?;
    let tri = &res.scene.triangle;
    let n = check_n(args.n.unwrap_or_else(|| res.scene.sweep_n()))?;
    let study = sweep_study(tri, n, res.k)?;
    let s = &study.summary;
    let mut rep = VerificationReport::new(tri.scale(), res.tol);
    rep.raw("failed_samples", s.failed_samples as f64)
        .length("max_collinearity", s.max_collinearity)
        .length("max_tangency", s.max_tangency)
        .length("max_perpendicularity", s.max_perpendicularity);
    if tri.is_symmetric() {
        rep.length("max_focus_deviation", s.max_focus_deviation)
            .raw("max_polar_tangency", s.max_polar_tangency.unwrap_or(f64::NAN) / res.k);
    } else {
        rep.length("fafb_spread", s.fafb_spread()).lower_bound(
            "max_focus_deviation",
            s.max_focus_deviation / tri.scale(),
            ASYMMETRIC_FOCUS_DEVIATION_MIN,
        );
    }
    let mut params = parameters(&res);
    params["n"] = json!(n);
    let doc = document(
        "sweep",
        Some(&res.scene),
        params,
        &rep,
        json!({ "sweep": value(&study) }),
    );
    Ok((
        Outcome {
            pass: rep.pass,
            document: doc,
        },
        sweep_csv(&study),
    ))
}

pub fn classify(args: &SceneArgs) -> Result<Outcome, CliError> {
    let res = resolve(args)?;
    let tri = &res.scene.triangle;
    if !tri.is_symmetric() {
        return Err(CliError::Usage("classification needs a symmetric scene".into()));
    }
    let m = tri.pedal_point_at(res.t)?;
    let by_position = classify_by_position(tri, m, res.k)?;
    let q = endpoint_conic(tri, m)?;
    let by_discriminant = classify_conic(&q, PARABOLA_TOL);
    let (t1, t2) = locate_parabola_pedals(tri, res.k)?;
    let mut rep = VerificationReport::new(tri.scale(), res.tol);
    rep.value("position", position_function(tri, m, res.k)?)
        .value("discriminant", q.discriminant())
        .value("relative_discriminant", q.relative_discriminant())
        .value("parabola_t1", t1)
        .value("parabola_t2", t2)
        .point("pedal", m);
    let agree = by_position == by_discriminant;
    let doc = document(
        "classify",
        Some(&res.scene),
        parameters(&res),
        &rep,
        json!({
            "class": { "position": by_position, "discriminant": by_discriminant },
            "agree": agree,
            "pass": agree && rep.pass,
        }),
    );
    Ok(Outcome {
        pass: agree && rep.pass,
        document: doc,
    })
}

pub fn render_svg(args: &RenderArgs) -> Result<Outcome, CliError> {
    let layers = parse_layers(&args.layers)?;
    let res = resolve(&args.scene)?;
    Ok(Outcome {
        pass: true,
        document: render(&res.scene.triangle, res.t, res.k, &layers)?,
    })
}

pub fn poncelet(args: &PonceletArgs) -> Result<Outcome, CliError> {
    let t = check_t(args.t.unwrap_or(DEFAULT_T))?;
    let tol = check_positive("tol", args.tol.unwrap_or(DEFAULT_TOLERANCE))?;
    let hex = HexagonConfig::regular(Point::ORIGIN, args.radius, args.phase.to_radians())?;
    let p0 = hex.arc_point(t);
    let rep = pedal_core::poncelet::verify_hexagon_lemmas(&hex, p0, tol)?;
    let chain = pedal_core::poncelet::tangent_chain(&hex, p0)?;
    let doc = document(
        "poncelet",
        None,
        json!({ "radius": args.radius, "phase_deg": args.phase, "t": t, "tolerance": tol }),
        &rep,
        json!({ "chain": chain.points }),
    );
    Ok(Outcome {
        pass: rep.pass,
        document: doc,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Run one command, writing its outputs.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (outcome, out) = match &cli.command {
        Command::Verify(a) => (verify(a)?, a.scene.out.as_deref()),
        Command::Sweep(a) => {
            let (outcome, csv) = sweep(a)?;
            if let Some(path) = &a.csv {
                fs::write(path, csv)?;
            }
            (outcome, a.scene.out.as_deref())
        }
        Command::Classify(a) => (classify(a)?, a.out.as_deref()),
        Command::Render(a) => (render_svg(a)?, a.scene.out.as_deref()),
        Command::Poncelet(a) => (poncelet(a)?, a.out.as_deref()),
    };
    emit(out, &outcome.document)?;
    Ok(outcome)
}
