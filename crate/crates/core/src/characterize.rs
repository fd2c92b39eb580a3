//! Closed-form characterizations of foldable shapes and the fixture suites
//! behind the hierarchy of fold models.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::lattice::{Cell, DualTree, Edge, Polyomino, Sheet};

mod suites;
pub use suites::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StripError {
    #[error("shape is not a tree shape")]
    NotATree,
    #[error("shape does not fit in a strip of height {0}")]
    NotWithinStrip(i32),
}

/// Cells and joins of a tree shape laid out along the `x` axis, rows `0..h`.
#[derive(Clone, Debug)]
struct Strip {
    cells: BTreeSet<Cell>,
    joins: BTreeSet<Edge>,
    height: i32,
}

impl Strip {
    fn of(t: &DualTree, max_height: i32) -> Result<Strip, StripError> {
        if !t.shape().is_tree_shape() {
            return Err(StripError::NotATree);
        }
        let (w, h) = (t.shape().width(), t.shape().height());
        let swap = h > max_height;
        if swap && w > max_height {
            return Err(StripError::NotWithinStrip(max_height));
        }
        let m = |c: Cell| if swap { Cell::new(c.y, c.x) } else { c };
        Ok(Strip {
            cells: t.cells().iter().map(|c| m(*c)).collect(),
            joins: t.edges().iter().map(|e| Edge::new(m(e.a), m(e.b))).collect(),
            height: if swap { w } else { h },
        })
    }

    fn joined(&self, a: Cell, b: Cell) -> bool {
        self.joins.contains(&Edge::new(a, b))
    }

    /// Cells reachable from `start` without crossing the join to `from`.
    fn branch(&self, from: Cell, start: Cell) -> Vec<Cell> {
        let mut seen = BTreeSet::from([from, start]);
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(c) = stack.pop() {
            out.push(c);
            for s in crate::lattice::Step::ALL {
                let d = c.step(s);
                if self.cells.contains(&d) && self.joined(c, d) && seen.insert(d) {
                    stack.push(d);
                }
            }
        }
        out
    }

    /// Horizontal reach of the branch leaving `c` sideways by `dx`, once
    /// everything in it is folded into the row of `c`.
    fn arm(&self, c: Cell, dx: i32) -> i32 {
        let n = Cell::new(c.x + dx, c.y);
        if !self.cells.contains(&n) || !self.joined(c, n) {
            return 0;
        }
        self.branch(c, n).iter().map(|d| (d.x - c.x) * dx).max().unwrap_or(0)
    }

    fn vertical_joins(&self) -> Vec<(Cell, Cell)> {
        self.joins.iter().filter(|e| e.a.x == e.b.x).map(|e| if e.a.y < e.b.y { (e.a, e.b) } else { (e.b, e.a) }).collect()
    }
}

/// Arm lengths around one vertical join: `alpha`, `delta` leave the upper
/// square to the left and right, `gamma`, `beta` the lower one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arms {
    pub alpha: i32,
    pub beta: i32,
    pub gamma: i32,
    pub delta: i32,
}

impl Arms {
    pub fn folds(&self) -> bool {
        let Arms { alpha: a, beta: b, gamma: g, delta: d } = *self;
        ((a >= 2 || d >= 3) && (b >= 2 || g >= 3))
            || ((a >= 3 || d >= 2) && (b >= 3 || g >= 2))
            || ((a >= 2 && g >= 3) || (a >= 3 && g >= 2))
            || ((b >= 2 && d >= 3) || (b >= 3 && d >= 2))
            || (a >= 1 && g >= 1 && b >= 2 && d >= 2)
            || (a >= 2 && g >= 2 && b >= 1 && d >= 1)
    }
}

fn arms_at(s: &Strip, lower: Cell, upper: Cell) -> Arms {
    Arms { alpha: s.arm(upper, -1), delta: s.arm(upper, 1), gamma: s.arm(lower, -1), beta: s.arm(lower, 1) }
}

/// Arm lengths at every vertical join of a tree shape in a `2 × n` strip.
pub fn strip2_arms(t: &DualTree) -> Result<Vec<Arms>, StripError> {
    let s = Strip::of(t, 2)?;
    Ok(s.vertical_joins().into_iter().map(|(lo, hi)| arms_at(&s, lo, hi)).collect())
}

/// Whether a tree shape inside a `2 × n` strip folds onto the unit cube.
pub fn strip2_foldable(t: &DualTree) -> Result<bool, StripError> {
    Ok(strip2_arms(t)?.iter().any(Arms::folds))
}

/// Whether a tree shape inside a `3 × n` strip folds onto the unit cube.
pub fn strip3_foldable(t: &DualTree) -> Result<bool, StripError> {
    let s = Strip::of(t, 3)?;
    if s.height <= 2 {
        return strip2_foldable(t);
    }
    Ok(!in_height_two_family(&s))
}

/// A row strip along an outer row with one attachment, reaching across the
/// other two rows and staying within one column of its join; or a seven
/// square path around the rim of a `3 × 3` box.
fn in_height_two_family(s: &Strip) -> bool {
    let mut views = vec![s.cells.clone()];
    let w = s.cells.iter().map(|c| c.x).max().unwrap_or(0) - s.cells.iter().map(|c| c.x).min().unwrap_or(0) + 1;
    if w == 3 {
        let x0 = s.cells.iter().map(|c| c.x).min().unwrap_or(0);
        let y0 = s.cells.iter().map(|c| c.y).min().unwrap_or(0);
        if s.cells.len() == 7 && !s.cells.contains(&Cell::new(x0 + 1, y0 + 1)) {
            return true;
        }
        views.push(s.cells.iter().map(|c| Cell::new(c.y, c.x)).collect());
    }
    views.iter().any(|v| [0, 2].into_iter().any(|r| single_attachment(v, r)))
}

fn single_attachment(cells: &BTreeSet<Cell>, row: i32) -> bool {
    let y0 = cells.iter().map(|c| c.y).min().unwrap_or(0);
    let (row, mid, far) = (y0 + row, y0 + 1, y0 + 2 - row);
    let mut joins = cells.iter().filter(|c| c.y == row && cells.contains(&Cell::new(c.x, mid)));
    let (Some(j), None) = (joins.next(), joins.next()) else {
        return false;
    };
    let rest = cells.iter().filter(|c| c.y != row);
    rest.clone().all(|c| (c.x - j.x).abs() <= 1) && rest.into_iter().any(|c| c.y == far)
}

/// Every free tree shape whose cells fit in an `h × w` box, in canonical
/// order. The box has at most 63 cells.
pub fn tree_shapes_within(h: i32, w: i32) -> Vec<DualTree> {
    let cells: Vec<Cell> = (0..h).flat_map(|y| (0..w).map(move |x| Cell::new(x, y))).collect();
    assert!(cells.len() < 64, "box of {} cells is too large", cells.len());
    let mut seen = BTreeSet::new();
    for mask in 1u64..(1 << cells.len()) {
        let sub = (0..cells.len()).filter(|i| mask >> i & 1 == 1).map(|i| cells[i]);
        if let Ok(p) = Polyomino::new(sub) {
            if p.is_tree_shape() {
                seen.insert(p);
            }
        }
    }
    seen.into_iter().filter_map(|p| DualTree::of_tree_shape(p).ok()).collect()
}

/// A tree shape from cells, joining every adjacent pair.
pub fn tree_shape(cells: impl IntoIterator<Item = Cell>) -> Option<DualTree> {
    let p = Polyomino::new(cells).ok()?;
    DualTree::from_sheet(Sheet::solid(p)).ok()
}

fn collect_family(shapes: impl IntoIterator<Item = Vec<Cell>>) -> Vec<DualTree> {
    let set: BTreeSet<Polyomino> = shapes.into_iter().filter_map(|c| Polyomino::new(c).ok()).filter(Polyomino::is_tree_shape).collect();
    set.into_iter().filter_map(|p| DualTree::of_tree_shape(p).ok()).collect()
}

/// Strips of length `1..=max_len` with height-1 tabs on one side; a tab at
/// either end of the strip may carry an outward neighbour.
pub fn fig9_family(max_len: i32) -> Vec<DualTree> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for tabs in 0u32..(1 << len) {
            if tabs & (tabs >> 1) != 0 {
                continue;
            }
            for ends in 0..4u32 {
                let mut cells: Vec<Cell> = (0..len).map(|x| Cell::new(x, 0)).collect();
                cells.extend((0..len).filter(|x| tabs >> x & 1 == 1).map(|x| Cell::new(x, 1)));
                if ends & 1 == 1 {
                    if tabs & 1 == 0 {
                        continue;
                    }
                    cells.push(Cell::new(-1, 1));
                }
                if ends & 2 == 2 {
                    if tabs >> (len - 1) & 1 == 0 {
                        continue;
                    }
                    cells.push(Cell::new(len, 1));
                }
                out.push(cells);
            }
        }
    }
    collect_family(out)
}

/// Strips of length `1..=max_len` along an outer row with one attachment
/// two rows deep, optionally widened by one column on either side.
pub fn fig10_family(max_len: i32) -> Vec<DualTree> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for x in 0..len {
            let optional = [Cell::new(x - 1, 1), Cell::new(x + 1, 1), Cell::new(x - 1, 2), Cell::new(x + 1, 2)];
            for pick in 0u32..16 {
                let mut cells: Vec<Cell> = (0..len).map(|i| Cell::new(i, 0)).collect();
                cells.extend([Cell::new(x, 1), Cell::new(x, 2)]);
                cells.extend((0..4).filter(|i| pick >> i & 1 == 1).map(|i| optional[i]));
                out.push(cells);
            }
        }
    }
    collect_family(out)
}
