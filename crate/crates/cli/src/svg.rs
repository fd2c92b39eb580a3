//! Crease patterns as SVG. Squares are drawn in the text layout of the
//! shape: `x` to the right, `y` downwards.

use std::fmt::Write;

use polyfold::polycube::{Diagonal, FoldAngle};
use polyfold::{Cell, Edge, Folding, Step};

/// Drawing units per square.
pub const SCALE: i32 = 40;
/// Blank border around the shape, in squares.
pub const MARGIN: i32 = 1;

const MOUNTAIN: &str = "stroke=\"#d62728\" stroke-width=\"2\"";
const VALLEY: &str = "stroke=\"#1f5fd6\" stroke-width=\"2\" stroke-dasharray=\"6 4\"";
const FLAT: &str = "stroke=\"#c8c8c8\" stroke-width=\"1\"";
const CUT: &str = "stroke=\"#000000\" stroke-width=\"4\"";
const OUTLINE: &str = "stroke=\"#000000\" stroke-width=\"1.5\"";

fn style(a: FoldAngle) -> &'static str {
    if a.is_mountain() {
        MOUNTAIN
    } else if a.is_valley() {
        VALLEY
    } else {
        FLAT
    }
}

/// The grid segment between two adjacent cells, in square units.
fn shared_side(e: &Edge) -> ((i32, i32), (i32, i32)) {
    let (a, b) = (e.a, e.b);
    if a.y == b.y {
        let x = a.x.max(b.x);
        ((x, a.y), (x, a.y + 1))
    } else {
        let y = a.y.max(b.y);
        ((a.x, y), (a.x + 1, y))
    }
}

/// Counts of drawn creases, for inspection and tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CreaseCounts {
    pub mountain: usize,
    pub valley: usize,
    pub diagonal: usize,
    pub cut: usize,
}

pub fn crease_counts(f: &Folding) -> CreaseCounts {
    let mut c = CreaseCounts { cut: f.sheet.cuts().len(), diagonal: f.splits.len(), ..CreaseCounts::default() };
    let all = f.angles.iter().map(|(_, a)| *a).chain(f.splits.iter().map(|s| s.angle));
    for a in all {
        if a.is_mountain() {
            c.mountain += 1;
        } else if a.is_valley() {
            c.valley += 1;
        }
    }
    c
}

/// Renders the crease pattern of a folding.
pub fn render(f: &Folding) -> String {
    let cells = f.sheet.cells();
    let min_x = cells.iter().map(|c| c.x).min().unwrap_or(0);
    let min_y = cells.iter().map(|c| c.y).min().unwrap_or(0);
    let w = cells.iter().map(|c| c.x).max().unwrap_or(0) - min_x + 1;
    let h = cells.iter().map(|c| c.y).max().unwrap_or(0) - min_y + 1;
    let px = |x: i32| (x - min_x + MARGIN) * SCALE;
    let py = |y: i32| (y - min_y + MARGIN) * SCALE;
    let (width, height) = ((w + 2 * MARGIN) * SCALE, (h + 2 * MARGIN) * SCALE);
    let mut s = String::new();
    let _ =
        writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">");
    let _ = writeln!(s, "<g fill=\"#f6f1e4\" stroke=\"none\">");
    for c in cells {
        let _ = writeln!(s, "<rect x=\"{}\" y=\"{}\" width=\"{SCALE}\" height=\"{SCALE}\"/>", px(c.x), py(c.y));
    }
    let _ = writeln!(s, "</g>");
    let line = |s: &mut String, (a, b): ((i32, i32), (i32, i32)), attrs: &str, class: &str| {
        let _ =
            writeln!(s, "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {attrs}/>", px(a.0), py(a.1), px(b.0), py(b.1));
    };
    for (e, a) in &f.angles {
        let class = if a.is_mountain() {
            "mountain"
        } else if a.is_valley() {
            "valley"
        } else {
            "flat"
        };
        line(&mut s, shared_side(e), style(*a), class);
    }
    for sp in &f.splits {
        let Cell { x, y } = sp.cell;
        let seg = match sp.diagonal {
            Diagonal::NeSw => ((x, y), (x + 1, y + 1)),
            Diagonal::NwSe => ((x, y + 1), (x + 1, y)),
        };
        let class = if sp.angle.is_mountain() { "mountain diagonal" } else { "valley diagonal" };
        line(&mut s, seg, style(sp.angle), class);
    }
    for e in f.sheet.cuts() {
        line(&mut s, shared_side(&e), CUT, "cut");
    }
    for c in cells {
        for st in Step::ALL {
            if f.sheet.shape().contains(c.step(st)) {
                continue;
            }
            let Cell { x, y } = *c;
            let seg = match st {
                Step::East => ((x + 1, y), (x + 1, y + 1)),
                Step::West => ((x, y), (x, y + 1)),
                Step::North => ((x, y + 1), (x + 1, y + 1)),
                Step::South => ((x, y), (x + 1, y)),
            };
            line(&mut s, seg, OUTLINE, "outline");
        }
    }
    s.push_str("</svg>\n");
    s
}
