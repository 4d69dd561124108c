//! Venn diagrams of syndrome tables.
//!
//! Each generator `H_i` is a set; an error sits in set `i` iff it
//! anticommutes with `H_i` (its syndrome has `S_i = -1`). Regions are keyed
//! by a bit mask with bit `i-1` set for set `i`, so the exterior is mask 0.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::codes::{CodeId, StabilizerCode};
use crate::decoder::{Syndrome, SyndromeTable};
use crate::error::{Error, Result};

/// Most sets a layout can hold; beyond this only [`region_listing`] applies.
pub const MAX_SETS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub cx: f64,
    pub cy: f64,
    pub rx: f64,
    pub ry: f64,
    /// Clockwise rotation in degrees (SVG convention, y pointing down).
    pub rotation: f64,
}

impl Ellipse {
    const fn new(cx: f64, cy: f64, rx: f64, ry: f64, rotation: f64) -> Self {
        Ellipse {
            cx,
            cy,
            rx,
            ry,
            rotation,
        }
    }

    /// Point in the ellipse's own axes.
    fn local(&self, x: f64, y: f64) -> (f64, f64) {
        let (s, c) = self.rotation.to_radians().sin_cos();
        let (dx, dy) = (x - self.cx, y - self.cy);
        (dx * c + dy * s, -dx * s + dy * c)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (u, v) = self.local(x, y);
        (u / self.rx).powi(2) + (v / self.ry).powi(2) < 1.0
    }

    /// First-order estimate of the distance to the boundary.
    fn clearance(&self, x: f64, y: f64) -> f64 {
        let (u, v) = self.local(x, y);
        let f = (u / self.rx).powi(2) + (v / self.ry).powi(2) - 1.0;
        let g = 2.0 * ((u / self.rx.powi(2)).powi(2) + (v / self.ry.powi(2)).powi(2)).sqrt();
        if g < 1e-12 {
            self.ry
        } else {
            f.abs() / g
        }
    }

    /// Far end of the major axis on the upper side, pushed out by `margin`.
    fn upper_tip(&self, margin: f64) -> (f64, f64) {
        let (s, c) = self.rotation.to_radians().sin_cos();
        let r = self.rx + margin;
        let (a, b) = (
            (self.cx + r * c, self.cy + r * s),
            (self.cx - r * c, self.cy - r * s),
        );
        if a.1 <= b.1 {
            a
        } else {
            b
        }
    }
}

const TWO_SET: [Ellipse; 2] = [
    Ellipse::new(180.0, 190.0, 120.0, 120.0, 0.0),
    Ellipse::new(300.0, 190.0, 120.0, 120.0, 0.0),
];

/// Two mirrored pairs of long ellipses; every one of the 16 regions is nonempty.
const FOUR_SET: [Ellipse; 4] = [
    Ellipse::new(172.0, 218.0, 200.0, 110.0, 45.0),
    Ellipse::new(226.0, 180.0, 200.0, 110.0, 45.0),
    Ellipse::new(254.0, 180.0, 200.0, 110.0, -45.0),
    Ellipse::new(308.0, 218.0, 200.0, 110.0, -45.0),
];

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 420.0;
const GRID_STEP: f64 = 2.0;

const SET_COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone, PartialEq)]
pub struct VennGeometry {
    pub width: f64,
    pub height: f64,
    pub ellipses: Vec<Ellipse>,
    /// Label anchor for each region mask.
    pub anchors: BTreeMap<u32, (f64, f64)>,
}

impl VennGeometry {
    /// Fixed geometry for 2 or 4 sets, `None` otherwise.
    pub fn for_sets(set_count: usize) -> Option<Self> {
        let ellipses = match set_count {
            2 => TWO_SET.to_vec(),
            4 => FOUR_SET.to_vec(),
            _ => return None,
        };
        let anchors = label_anchors(&ellipses);
        Some(VennGeometry {
            width: WIDTH,
            height: HEIGHT,
            ellipses,
            anchors,
        })
    }

    pub fn region_at(&self, x: f64, y: f64) -> u32 {
        self.ellipses
            .iter()
            .enumerate()
            .filter(|(_, e)| e.contains(x, y))
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

/// For each region, the grid point farthest from every set boundary (and,
/// for the exterior, from the canvas edge). Scan order is row-major so the
/// result is deterministic.
fn label_anchors(ellipses: &[Ellipse]) -> BTreeMap<u32, (f64, f64)> {
    let mut best: BTreeMap<u32, (f64, (f64, f64))> = BTreeMap::new();
    let rows = (HEIGHT / GRID_STEP) as usize;
    let cols = (WIDTH / GRID_STEP) as usize;
    for r in 1..rows {
        for c in 1..cols {
            let (x, y) = (c as f64 * GRID_STEP, r as f64 * GRID_STEP);
            let mut mask = 0;
            let mut clearance = f64::INFINITY;
            for (i, e) in ellipses.iter().enumerate() {
                if e.contains(x, y) {
                    mask |= 1 << i;
                }
                clearance = clearance.min(e.clearance(x, y));
            }
            if mask == 0 {
                let edge = x.min(y).min(WIDTH - x).min(HEIGHT - y);
                clearance = clearance.min(edge);
            }
            let entry = best.entry(mask).or_insert((f64::NEG_INFINITY, (x, y)));
            if clearance > entry.0 {
                *entry = (clearance, (x, y));
            }
        }
    }
    best.into_iter().map(|(m, (_, p))| (m, p)).collect()
}

/// Labels for one region.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VennRegion {
    /// Representative first, then other sound members.
    pub labels: Vec<String>,
    /// Errors with this syndrome that the representative does not correct.
    pub aliases: Vec<String>,
}

impl VennRegion {
    pub fn is_labeled(&self) -> bool {
        !self.labels.is_empty()
    }

    fn text(&self) -> String {
        self.labels.join(", ")
    }

    fn alias_text(&self) -> Option<String> {
        (!self.aliases.is_empty()).then(|| format!("({})", self.aliases.join(", ")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VennLayout {
    pub code: CodeId,
    pub set_count: usize,
    /// Every one of the `2^set_count` masks is present.
    pub regions: BTreeMap<u32, VennRegion>,
    /// `None` when no drawing exists for this many sets.
    pub geometry: Option<VennGeometry>,
}

impl VennLayout {
    pub fn region(&self, sets: &[usize]) -> Option<&VennRegion> {
        let mask = sets.iter().fold(0u32, |m, &s| m | 1 << (s - 1));
        self.regions.get(&mask)
    }

    /// Interior regions that carry at least one label.
    pub fn labeled_interior(&self) -> usize {
        self.regions
            .iter()
            .filter(|(&m, r)| m != 0 && r.is_labeled())
            .count()
    }
}

/// Places every class of `table` in the region given by its syndrome.
pub fn layout(code: &StabilizerCode, table: &SyndromeTable) -> Result<VennLayout> {
    let set_count = code.stabilizers().len();
    if set_count > MAX_SETS {
        return Err(Error::TooManySets(set_count));
    }
    if table.stabilizer_count() != set_count {
        return Err(Error::LengthMismatch {
            left: table.stabilizer_count(),
            right: set_count,
        });
    }
    let mut regions: BTreeMap<u32, VennRegion> = (0..1u32 << set_count)
        .map(|m| (m, VennRegion::default()))
        .collect();
    for class in table.classes() {
        let region = regions
            .get_mut(&class.syndrome.mask())
            .expect("all masks present");
        region.labels = class.sound_labels();
        region.aliases = class.unsound_labels();
    }
    Ok(VennLayout {
        code: code.id(),
        set_count,
        regions,
        geometry: VennGeometry::for_sets(set_count),
    })
}

fn sets_of(mask: u32) -> Vec<usize> {
    (1..=32).filter(|i| mask >> (i - 1) & 1 == 1).collect()
}

fn format_sets(mask: u32) -> String {
    let parts: Vec<String> = sets_of(mask).iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// One line per syndrome class of any table, `sets {1,3}: Z1`. Works for
/// any number of generators.
pub fn region_listing(table: &SyndromeTable) -> String {
    let mut classes: Vec<_> = table.classes().collect();
    classes.sort_by_key(|c| {
        let sets = c.syndrome.flipped();
        (sets.len(), sets)
    });
    let mut out = String::new();
    for class in classes {
        let region = VennRegion {
            labels: class.sound_labels(),
            aliases: class.unsound_labels(),
        };
        push_listing_line(&mut out, class.syndrome.mask(), &region);
    }
    out
}

fn push_listing_line(out: &mut String, mask: u32, region: &VennRegion) {
    let text = if region.is_labeled() {
        region.text()
    } else {
        "-".into()
    };
    let _ = write!(out, "sets {}: {}", format_sets(mask), text);
    if let Some(a) = region.alias_text() {
        let _ = write!(out, " {a}");
    }
    out.push('\n');
}

/// Plain-text rendering: a two-box diagram for two sets, otherwise one line
/// per region.
pub fn render_ascii(l: &VennLayout) -> String {
    if l.set_count != 2 {
        let mut masks: Vec<u32> = l.regions.keys().copied().collect();
        masks.sort_by_key(|&m| (m.count_ones(), sets_of(m)));
        let mut out = String::new();
        for m in masks {
            push_listing_line(&mut out, m, &l.regions[&m]);
        }
        return out;
    }

    const ROWS: usize = 10;
    const COLS: usize = 61;
    let mut grid = vec![vec![' '; COLS]; ROWS];
    draw_box(&mut grid, 0, 0, 6, 40);
    draw_box(&mut grid, 2, 20, 8, 60);
    put(&mut grid, 0, 3, " S1 = -1 ");
    put(&mut grid, 8, 43, " S2 = -1 ");

    let place = |grid: &mut Vec<Vec<char>>, mask: u32, row: usize, center: usize| {
        let region = &l.regions[&mask];
        if region.is_labeled() {
            put_centered(grid, row, center, &region.text());
        }
        if let Some(a) = region.alias_text() {
            put_centered(grid, row + 1, center, &a);
        }
    };
    place(&mut grid, 0b01, 3, 10);
    place(&mut grid, 0b11, 4, 30);
    place(&mut grid, 0b10, 5, 50);

    let mut out: String = grid
        .iter()
        .map(|r| {
            let line: String = r.iter().collect();
            format!("{}\n", line.trim_end())
        })
        .collect();
    let outside = &l.regions[&0];
    let _ = write!(
        out,
        "outside: {}",
        if outside.is_labeled() {
            outside.text()
        } else {
            "-".into()
        }
    );
    if let Some(a) = outside.alias_text() {
        let _ = write!(out, " {a}");
    }
    out.push('\n');
    out
}

fn draw_box(grid: &mut [Vec<char>], top: usize, left: usize, bottom: usize, right: usize) {
    for r in [top, bottom] {
        for (c, cell) in grid[r].iter_mut().enumerate().take(right + 1).skip(left) {
            *cell = if *cell == '|' || c == left || c == right {
                '+'
            } else {
                '-'
            };
        }
    }
    for row in grid.iter_mut().take(bottom).skip(top + 1) {
        for c in [left, right] {
            row[c] = if row[c] == '-' { '+' } else { '|' };
        }
    }
}

fn put(grid: &mut [Vec<char>], row: usize, col: usize, text: &str) {
    for (i, ch) in text.chars().enumerate() {
        if let Some(cell) = grid[row].get_mut(col + i) {
            *cell = ch;
        }
    }
}

fn put_centered(grid: &mut [Vec<char>], row: usize, center: usize, text: &str) {
    let len = text.chars().count();
    put(grid, row, center.saturating_sub(len / 2), text);
}

fn num(v: f64) -> String {
    let r = (v * 10.0).round() / 10.0;
    if r.fract() == 0.0 {
        format!("{}", r as i64)
    } else {
        format!("{r:.1}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Standalone SVG 1.1 document. With `highlight`, the region of that
/// syndrome is shaded and its label set in bold.
pub fn render_svg(l: &VennLayout, highlight: Option<&Syndrome>) -> Result<String> {
    let geo = match &l.geometry {
        Some(g) if l.set_count == 2 || l.set_count == 4 => g,
        _ => return Err(Error::TooManySets(l.set_count)),
    };
    let highlight_mask = match highlight {
        Some(s) if s.len() != l.set_count => {
            return Err(Error::LengthMismatch {
                left: s.len(),
                right: l.set_count,
            })
        }
        Some(s) => Some(s.mask()),
        None => None,
    };
    let (w, h) = (num(geo.width), num(geo.height));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, "<title>{} syndrome Venn diagram</title>", l.code);
    svg.push_str("<defs>\n");
    for (i, e) in geo.ellipses.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<ellipse id="set{}" cx="{}" cy="{}" rx="{}" ry="{}" transform="rotate({} {} {})"/>"#,
            i + 1,
            num(e.cx),
            num(e.cy),
            num(e.rx),
            num(e.ry),
            num(e.rotation),
            num(e.cx),
            num(e.cy)
        );
    }
    if let Some(mask) = highlight_mask {
        for i in sets_of(mask) {
            let _ = writeln!(
                svg,
                r##"<clipPath id="inside{i}"><use xlink:href="#set{i}"/></clipPath>"##
            );
        }
        let _ = writeln!(svg, r#"<mask id="outside-rest">"#);
        let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        for i in 1..=l.set_count {
            if mask >> (i - 1) & 1 == 0 {
                let _ = writeln!(svg, r##"<use xlink:href="#set{i}" fill="black"/>"##);
            }
        }
        svg.push_str("</mask>\n");
    }
    svg.push_str("</defs>\n");
    let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);

    if let Some(mask) = highlight_mask {
        let inside = sets_of(mask);
        for i in &inside {
            let _ = write!(svg, r#"<g clip-path="url(#inside{i})">"#);
        }
        let _ = write!(
            svg,
            r##"<rect class="highlight" width="{w}" height="{h}" fill="#ffd54f" mask="url(#outside-rest)"/>"##
        );
        for _ in &inside {
            svg.push_str("</g>");
        }
        svg.push('\n');
    }

    svg.push_str("<g class=\"sets\" stroke-width=\"2\">\n");
    for i in 0..l.set_count {
        let color = SET_COLORS[i % SET_COLORS.len()];
        let _ = writeln!(
            svg,
            r##"<use xlink:href="#set{}" fill="{color}" fill-opacity="0.08" stroke="{color}"/>"##,
            i + 1
        );
    }
    svg.push_str("</g>\n");

    svg.push_str("<g class=\"set-names\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">\n");
    for (i, e) in geo.ellipses.iter().enumerate() {
        let (x, y) = if l.set_count == 2 {
            (e.cx, e.cy - e.ry - 12.0)
        } else {
            e.upper_tip(10.0)
        };
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" fill="{}">S{}</text>"#,
            num(x),
            num(y),
            SET_COLORS[i % SET_COLORS.len()],
            i + 1
        );
    }
    svg.push_str("</g>\n");

    svg.push_str("<g class=\"regions\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">\n");
    for (&mask, region) in &l.regions {
        if !region.is_labeled() && region.aliases.is_empty() {
            continue;
        }
        let (x, y) = geo.anchors[&mask];
        let kind = if mask == 0 { "exterior" } else { "interior" };
        let emphasis = if highlight_mask == Some(mask) {
            r##" font-weight="bold" fill="#b71c1c""##
        } else {
            ""
        };
        let sets: Vec<String> = sets_of(mask).iter().map(|s| s.to_string()).collect();
        let _ = write!(
            svg,
            r#"<text class="region-label {kind}" data-sets="{}" x="{}" y="{}"{emphasis}>"#,
            sets.join(","),
            num(x),
            num(y + 5.0)
        );
        svg.push_str(&escape(&region.text()));
        if let Some(a) = region.alias_text() {
            let _ = write!(
                svg,
                r##"<tspan x="{}" dy="14" font-size="10" fill="#777777">{}</tspan>"##,
                num(x),
                escape(&a)
            );
        }
        svg.push_str("</text>\n");
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
