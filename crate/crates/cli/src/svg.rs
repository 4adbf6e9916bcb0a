//! SVG 1.1 figures. Each panel is fitted into a fixed square, curves are
//! sampled polylines and every coordinate is rounded to 1e-6.

use std::fmt::Write;
use std::str::FromStr;

use pedal_core::conics::{conic_features, conic_from_five_points, sample_conic};
use pedal_core::geom::wrap_angle;
use pedal_core::pedal_dual::npc_contact_point;
use pedal_core::poncelet::{lemma_circles, tangent_chain};
use pedal_core::reuleaux::{inverted_configuration, npc_endpoints};
use pedal_core::{Circle, CircleOrLine, HexagonConfig, Line, Point, ReuleauxTriangle};

use crate::CliError;

/// Samples per sampled curve.
pub const CURVE_SAMPLES: usize = 512;

const PANEL: f64 = 480.0;
const MARGIN: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    Reuleaux,
    Npc,
    EndpointConic,
    Inverted,
    Hexagon,
}

impl Layer {
    pub const ALL: [Layer; 5] = [
        Layer::Reuleaux,
        Layer::Npc,
        Layer::EndpointConic,
        Layer::Inverted,
        Layer::Hexagon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Layer::Reuleaux => "reuleaux",
            Layer::Npc => "npc",
            Layer::EndpointConic => "endpoint-conic",
            Layer::Inverted => "inverted",
            Layer::Hexagon => "hexagon",
        }
    }
}

impl FromStr for Layer {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Layer::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown layer `{s}`")))
    }
}

/// Comma-separated layer names; order and repeats are ignored.
pub fn parse_layers(s: &str) -> Result<Vec<Layer>, CliError> {
    let mut layers = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(Layer::from_str)
        .collect::<Result<Vec<_>, _>>()?;
    layers.sort();
    layers.dedup();
    Ok(layers)
}

enum Shape {
    Polyline(Vec<Point>),
    Circle(Circle),
    Line(Line),
    Dot(Point),
}

struct Item {
    id: String,
    class: &'static str,
    shape: Shape,
    /// Whether the item contributes to the panel's bounding box.
    bounds: bool,
}

struct Group {
    id: String,
    items: Vec<Item>,
}

impl Group {
    fn new(id: &str) -> Self {
        Self {
            id: id.to_owned(),
            items: Vec::new(),
        }
    }

    fn push(&mut self, id: impl Into<String>, class: &'static str, shape: Shape, bounds: bool) {
        self.items.push(Item {
            id: id.into(),
            class,
            shape,
            bounds,
        });
    }

    fn dot(&mut self, id: impl Into<String>, p: Point) {
        self.push(id, "point", Shape::Dot(p), true);
    }
}

struct Panel {
    id: &'static str,
    groups: Vec<Group>,
}

#[derive(Clone, Copy)]
struct Bbox {
    min: Point,
    max: Point,
}

impl Bbox {
    fn empty() -> Self {
        Self {
            min: Point::new(f64::INFINITY, f64::INFINITY),
            max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: Point) {
        if p.is_finite() {
            self.min = Point::new(self.min.x.min(p.x), self.min.y.min(p.y));
            self.max = Point::new(self.max.x.max(p.x), self.max.y.max(p.y));
        }
    }

    fn is_empty(&self) -> bool {
        !(self.min.x <= self.max.x)
    }

    fn grown(self, frac: f64) -> Self {
        let d = (self.max - self.min) * frac;
        let pad = Point::new(d.x.max(d.y), d.x.max(d.y));
        Self {
            min: self.min - pad,
            max: self.max + pad,
        }
    }
}

fn panel_bbox(panel: &Panel) -> Bbox {
    let mut b = Bbox::empty();
    for item in panel.groups.iter().flat_map(|g| &g.items).filter(|i| i.bounds) {
        match &item.shape {
            Shape::Polyline(pts) => pts.iter().for_each(|p| b.add(*p)),
            Shape::Circle(c) => {
                b.add(c.center - Point::new(c.radius, c.radius));
                b.add(c.center + Point::new(c.radius, c.radius));
            }
            Shape::Dot(p) => b.add(*p),
            Shape::Line(_) => {}
        }
    }
    if b.is_empty() {
        b.add(Point::new(-1.0, -1.0));
        b.add(Point::new(1.0, 1.0));
    }
    b.grown(0.05)
}

/// Fixed-point coordinate, rounded to 1e-6, without a negative zero.
fn num(v: f64) -> String {
    let s = format!("{:.6}", v);
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".to_owned()
    } else {
        s
    }
}

struct Frame {
    origin: Point,
    scale: f64,
    bbox: Bbox,
}

impl Frame {
    fn new(bbox: Bbox, offset_x: f64) -> Self {
        let inner = PANEL - 2.0 * MARGIN;
        let size = bbox.max - bbox.min;
        let scale = inner / size.x.max(size.y).max(f64::MIN_POSITIVE);
        let origin = Point::new(
            offset_x + MARGIN + 0.5 * (inner - size.x * scale),
            MARGIN + 0.5 * (inner - size.y * scale),
        );
        Self { origin, scale, bbox }
    }

    fn map(&self, p: Point) -> Point {
        Point::new(
            self.origin.x + (p.x - self.bbox.min.x) * self.scale,
            self.origin.y + (self.bbox.max.y - p.y) * self.scale,
        )
    }
}

fn write_item(out: &mut String, f: &Frame, item: &Item) {
    let (id, class) = (&item.id, item.class);
    match &item.shape {
        Shape::Polyline(pts) => {
            let coords: Vec<String> = pts
                .iter()
                .filter(|p| p.is_finite())
                .map(|p| {
                    let q = f.map(*p);
                    format!("{},{}", num(q.x), num(q.y))
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline id="{id}" class="{class}" points="{}"/>"#,
                coords.join(" ")
            );
        }
        Shape::Circle(c) => {
            let q = f.map(c.center);
            let _ = writeln!(
                out,
                r#"<circle id="{id}" class="{class}" cx="{}" cy="{}" r="{}"/>"#,
                num(q.x),
                num(q.y),
                num(c.radius * f.scale)
            );
        }
        Shape::Line(l) => {
            let b = f.bbox;
            let centre = b.min.midpoint(b.max);
            let reach = b.min.distance(b.max);
            let foot = l.foot(centre);
            let (p, q) = (f.map(foot - l.direction() * reach), f.map(foot + l.direction() * reach));
            let _ = writeln!(
                out,
                r#"<line id="{id}" class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(p.x),
                num(p.y),
                num(q.x),
                num(q.y)
            );
        }
        Shape::Dot(p) => {
            let q = f.map(*p);
            let _ = writeln!(
                out,
                r#"<circle id="{id}" class="{class}" cx="{}" cy="{}" r="3.000000"/>"#,
                num(q.x),
                num(q.y)
            );
        }
    }
}

const STYLE: &str = "polyline, line, circle { fill: none; stroke-width: 1.5; }
.arc { stroke: #222222; }
.npc { stroke: #1f77b4; stroke-width: 2.5; }
.conic { stroke: #d62728; stroke-dasharray: 6 4; }
.image { stroke: #222222; }
.polar { stroke: #2ca02c; stroke-width: 1; }
.excircle { stroke: #d62728; }
.aux { stroke: #9467bd; stroke-dasharray: 4 3; }
.hexagon { stroke: #222222; }
.chain { stroke: #1f77b4; }
.point { fill: #000000; stroke: none; }";

fn document(panels: &[Panel]) -> String {
    let width = PANEL * panels.len() as f64;
    let height = if panels.is_empty() { 0.0 } else { PANEL };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
    if !panels.is_empty() {
        let _ = writeln!(out, "<style type=\"text/css\">\n{STYLE}\n</style>");
    }
    for (i, panel) in panels.iter().enumerate() {
        let offset = PANEL * i as f64;
        let frame = Frame::new(panel_bbox(panel), offset);
        let _ = writeln!(out, r#"<clipPath id="clip-{}">"#, panel.id);
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="0.000000" width="{}" height="{}"/>"#,
            num(offset),
            num(PANEL),
            num(PANEL)
        );
        out.push_str("</clipPath>\n");
        let _ = writeln!(out, r#"<g id="panel-{id}" clip-path="url(#clip-{id})">"#, id = panel.id);
        for g in &panel.groups {
            let _ = writeln!(out, r#"<g id="layer-{}">"#, g.id);
            for item in &g.items {
                write_item(&mut out, &frame, item);
            }
            out.push_str("</g>\n");
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// `samples` points along the short arc of `c` from `a` to `b`.
fn arc_points(c: &Circle, a: Point, b: Point, samples: usize) -> Vec<Point> {
    let start = c.angle_of(a);
    let sweep = wrap_angle(c.angle_of(b) - start);
    (0..samples)
        .map(|i| c.point_at(start + sweep * i as f64 / (samples - 1) as f64))
        .collect()
}

const ARC_ENDS: [(usize, usize); 3] = [(1, 2), (2, 0), (0, 1)];

fn reuleaux_layer(r: &ReuleauxTriangle) -> Group {
    let mut g = Group::new("reuleaux");
    let v = r.vertices();
    for (i, c) in r.arc_circles().iter().enumerate() {
        let (a, b) = ARC_ENDS[i];
        g.push(
            format!("arc-{}", i + 1),
            "arc",
            Shape::Polyline(arc_points(c, v[a], v[b], CURVE_SAMPLES)),
            true,
        );
    }
    for (i, p) in v.iter().enumerate() {
        g.dot(format!("v{}", i + 1), *p);
    }
    g
}

fn npc_layer(r: &ReuleauxTriangle, m: Point) -> Result<Group, CliError> {
    let e = npc_endpoints(r, m)?;
    let v = r.vertices();
    let c = r.arc_circles();
    let mut g = Group::new("npc");
    for (i, name) in [(0, "npc-a"), (1, "npc-b")] {
        let (a, b) = ARC_ENDS[i];
        let pts = arc_points(&c[i], v[a], v[b], CURVE_SAMPLES)
            .into_iter()
            .filter_map(|p| npc_contact_point(&c[i], p, m).ok())
            .collect();
        g.push(name, "npc", Shape::Polyline(pts), true);
    }
    for (name, p) in [
        ("m", m),
        ("p0", e.p0),
        ("a1", e.a1),
        ("a2", e.a2),
        ("b1", e.b1),
        ("b2", e.b2),
        ("f-a", e.f_a),
        ("f-b", e.f_b),
    ] {
        g.dot(name, p);
    }
    Ok(g)
}

fn endpoint_conic_layer(r: &ReuleauxTriangle, m: Point) -> Result<Group, CliError> {
    let e = npc_endpoints(r, m)?;
    let q = conic_from_five_points(&e.five())?;
    let feat = conic_features(&q)?;
    let mut g = Group::new("endpoint-conic");
    for (i, branch) in sample_conic(&q, CURVE_SAMPLES - 1, 2.0 * r.scale())?
        .into_iter()
        .enumerate()
    {
        g.push(format!("conic-{}", i + 1), "conic", Shape::Polyline(branch), false);
    }
    for (i, f) in feat.foci.iter().enumerate() {
        g.dot(format!("focus-{}", i + 1), *f);
    }
    Ok(g)
}

fn inverted_layer(r: &ReuleauxTriangle, m: Point, k: f64) -> Result<Group, CliError> {
    let cfg = inverted_configuration(r, m, k)?;
    let mut g = Group::new("inverted");
    for (i, img) in cfg.images.iter().enumerate() {
        let shape = match img {
            CircleOrLine::Circle(c) => Shape::Circle(*c),
            CircleOrLine::Line(l) => Shape::Line(*l),
        };
        g.push(format!("image-{}", i + 1), "image", shape, false);
    }
    for (name, l) in ["a1", "a2", "b1", "b2", "p0"].iter().zip(cfg.polars.iter()) {
        g.push(format!("polar-{name}"), "polar", Shape::Line(*l), false);
    }
    g.push("excircle", "excircle", Shape::Circle(cfg.excircle_c), true);
    g.push("circle-cc", "aux", Shape::Circle(cfg.circle_cc), true);
    g.push("c0", "aux", Shape::Circle(cfg.c0), false);
    g.push("cc0", "aux", Shape::Circle(cfg.cc0), false);
    for (name, p) in [
        ("m", m),
        ("v1p", cfg.v1p),
        ("v2p", cfg.v2p),
        ("v3p", cfg.v3p),
        ("o-prime", cfg.o_prime),
    ] {
        g.dot(format!("inv-{name}"), p);
    }
    Ok(g)
}

fn hexagon_layer(hex: &HexagonConfig, t: f64) -> Result<Group, CliError> {
    let p0 = hex.arc_point(t);
    let chain = tangent_chain(hex, p0)?;
    let (c0, cc0) = lemma_circles(hex, p0)?;
    let mut g = Group::new("hexagon");
    let mut outline = hex.vertices().to_vec();
    outline.push(hex.vertex(0));
    g.push("hexagon", "hexagon", Shape::Polyline(outline), true);
    g.push("incircle", "hexagon", Shape::Circle(hex.incircle()), true);
    g.push("circumcircle", "hexagon", Shape::Circle(hex.circumcircle()), true);
    g.push("chain", "chain", Shape::Polyline(chain.points.clone()), true);
    g.push("hex-c0", "aux", Shape::Circle(c0), false);
    g.push("hex-cc0", "aux", Shape::Circle(cc0), false);
    for (i, p) in chain.points.iter().take(6).enumerate() {
        g.dot(format!("chain-p{i}"), *p);
    }
    Ok(g)
}

/// Render `layers` for the pedal point at `t`. The first three layers share
/// a panel; the inverted figure and the hexagon get one each.
pub fn render(r: &ReuleauxTriangle, t: f64, k: f64, layers: &[Layer]) -> Result<String, CliError> {
    let m = r.pedal_point_at(t)?;
    let mut main = Panel {
        id: "figure",
        groups: Vec::new(),
    };
    let mut panels = Vec::new();
    for layer in layers {
        match layer {
            Layer::Reuleaux => main.groups.push(reuleaux_layer(r)),
            Layer::Npc => main.groups.push(npc_layer(r, m)?),
            Layer::EndpointConic => main.groups.push(endpoint_conic_layer(r, m)?),
            Layer::Inverted => panels.push(Panel {
                id: "inverted",
                groups: vec![inverted_layer(r, m, k)?],
            }),
            Layer::Hexagon => {
                let hex = HexagonConfig::regular(r.circumcenter(), r.scale(), 0.0)?;
                panels.push(Panel {
                    id: "hexagon",
                    groups: vec![hexagon_layer(&hex, t)?],
                });
            }
        }
    }
    if !main.groups.is_empty() {
        panels.insert(0, main);
    }
    Ok(document(&panels))
}
