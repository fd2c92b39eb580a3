//! Growth enumeration of free polyominoes and classification of their dual
//! trees by the weakest fold model that folds them onto the unit cube.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::foldcore::FoldModel;
use crate::lattice::{canonical_transform, Cell, DualTree, Polyomino, Step};
use crate::polycube::Polycube;
use crate::search::{min_fold_count, solve, FoldKind, SearchError, SearchOptions};

/// Largest size [`enumerate_free`] accepts.
pub const MAX_N: usize = 14;
/// Largest size classified without an explicit long-run request.
pub const DESK_N: usize = 11;

/// All free polyominoes of size `n` in canonical order. Panics above [`MAX_N`].
pub fn enumerate_free(n: usize) -> Vec<Polyomino> {
    assert!((1..=MAX_N).contains(&n), "size {n} outside 1..={MAX_N}");
    let mut level: Vec<Vec<Cell>> = alloc::vec![alloc::vec![Cell::new(0, 0)]];
    for _ in 1..n {
        let mut next: HashSet<Vec<Cell>> = HashSet::new();
        for cells in &level {
            let set: BTreeSet<Cell> = cells.iter().copied().collect();
            let mut tried: BTreeSet<Cell> = BTreeSet::new();
            for c in cells {
                for s in Step::ALL {
                    let d = c.step(s);
                    if set.contains(&d) || !tried.insert(d) {
                        continue;
                    }
                    let mut grown = cells.clone();
                    grown.push(d);
                    next.insert(canonical_transform(&grown).0);
                }
            }
        }
        level = next.into_iter().collect();
    }
    level.sort_unstable();
    level.into_iter().map(Polyomino::from_canonical).collect()
}

/// The weakest step of the three-step classification that folds a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Fold90,
    Add180,
    AddDiagonal,
    NotFoldable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Fold90 => "fold90",
            Verdict::Add180 => "add180",
            Verdict::AddDiagonal => "add_diag",
            Verdict::NotFoldable => "not_foldable",
        }
    }

    pub fn is_foldable(self) -> bool {
        self != Verdict::NotFoldable
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The three models tried in order.
pub const STEPS: [(Verdict, FoldModel); 3] =
    [(Verdict::Fold90, FoldModel::GRID90), (Verdict::Add180, FoldModel::GRID180), (Verdict::AddDiagonal, FoldModel::DIAGONAL)];

pub fn classify_tree(t: &DualTree, opts: SearchOptions<'_>) -> Result<Verdict, SearchError> {
    let q = Polycube::unit_cube();
    for (v, m) in STEPS {
        if solve(t, &q, &m, opts)?.is_some() {
            return Ok(v);
        }
    }
    Ok(Verdict::NotFoldable)
}

/// One line of the cube-folding table. Fold columns are absent below size 6,
/// where nothing can cover the cube.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub free: u64,
    pub dual_trees: u64,
    pub fold90: Option<u64>,
    pub add180: Option<u64>,
    pub add_diag: Option<u64>,
    pub not_foldable: Option<u64>,
    /// Trees whose search hit the budget; counted in no fold column.
    pub unresolved: u64,
}

impl TableRow {
    pub fn empty(n: usize) -> TableRow {
        let z = if n >= 6 { Some(0) } else { None };
        TableRow { n, fold90: z, add180: z, add_diag: z, not_foldable: z, ..TableRow::default() }
    }

    pub fn record(&mut self, v: Verdict) {
        let slot = match v {
            Verdict::Fold90 => &mut self.fold90,
            Verdict::Add180 => &mut self.add180,
            Verdict::AddDiagonal => &mut self.add_diag,
            Verdict::NotFoldable => &mut self.not_foldable,
        };
        *slot = Some(slot.unwrap_or(0) + 1);
    }

    /// Adds another partial row of the same size.
    pub fn merge(&mut self, o: &TableRow) {
        debug_assert_eq!(self.n, o.n);
        let add = |a: Option<u64>, b: Option<u64>| match (a, b) {
            (None, None) => None,
            (x, y) => Some(x.unwrap_or(0) + y.unwrap_or(0)),
        };
        self.free += o.free;
        self.dual_trees += o.dual_trees;
        self.fold90 = add(self.fold90, o.fold90);
        self.add180 = add(self.add180, o.add180);
        self.add_diag = add(self.add_diag, o.add_diag);
        self.not_foldable = add(self.not_foldable, o.not_foldable);
        self.unresolved += o.unresolved;
    }

    pub fn is_partial(&self) -> bool {
        self.unresolved > 0
    }

    /// The fold columns add up to the tree count.
    pub fn partition_holds(&self) -> bool {
        match (self.fold90, self.add180, self.add_diag, self.not_foldable) {
            (Some(a), Some(b), Some(c), Some(d)) => a + b + c + d + self.unresolved == self.dual_trees,
            (None, None, None, None) => true,
            _ => false,
        }
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64, u64, u64) {
        (
            self.free,
            self.dual_trees,
            self.fold90.unwrap_or(0),
            self.add180.unwrap_or(0),
            self.add_diag.unwrap_or(0),
            self.not_foldable.unwrap_or(0),
        )
    }
}

/// Classification of every dual tree of one polyomino.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub shape: Polyomino,
    pub trees: Vec<(DualTree, Result<Verdict, SearchError>)>,
}

impl ShapeReport {
    pub fn run(shape: Polyomino, opts: SearchOptions<'_>) -> ShapeReport {
        let classify = shape.len() >= 6;
        let trees = shape
            .canonical_dual_trees()
            .into_iter()
            .map(|t| {
                let v = if classify { classify_tree(&t, opts) } else { Ok(Verdict::NotFoldable) };
                (t, v)
            })
            .collect();
        ShapeReport { shape, trees }
    }

    pub fn row(&self) -> TableRow {
        let n = self.shape.len();
        let mut row = TableRow::empty(n);
        row.free = 1;
        row.dual_trees = self.trees.len() as u64;
        if n >= 6 {
            for (_, v) in &self.trees {
                match v {
                    Ok(v) => row.record(*v),
                    Err(_) => row.unresolved += 1,
                }
            }
        }
        row
    }

    pub fn unfoldable(&self) -> usize {
        self.trees.iter().filter(|(_, v)| *v == Ok(Verdict::NotFoldable)).count()
    }

    pub fn any_foldable(&self) -> bool {
        self.trees.iter().any(|(_, v)| matches!(v, Ok(v) if v.is_foldable()))
    }
}

/// Single-threaded classification of all dual trees of size `n`.
pub fn classify_cube(n: usize, opts: SearchOptions<'_>) -> TableRow {
    let mut row = TableRow::empty(n);
    for p in enumerate_free(n) {
        row.merge(&ShapeReport::run(p, opts).row());
    }
    row
}

/// Shapes with unfoldable dual trees.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NonFoldable {
    pub shapes: Vec<(Polyomino, usize)>,
    pub trees: usize,
}

/// For size 6 a shape is listed when none of its trees folds; from size 7
/// on, when at least one tree does not fold.
pub fn nonfoldable_filter(reports: &[ShapeReport]) -> NonFoldable {
    let mut out = NonFoldable::default();
    for r in reports {
        let n = r.shape.len();
        let listed = if n <= 6 { !r.any_foldable() } else { r.unfoldable() > 0 };
        if listed {
            out.shapes.push((r.shape.clone(), r.unfoldable()));
            out.trees += r.unfoldable();
        }
    }
    out
}

pub fn nonfoldable_report(n: usize, opts: SearchOptions<'_>) -> NonFoldable {
    let reports: Vec<ShapeReport> = enumerate_free(n).into_iter().map(|p| ShapeReport::run(p, opts)).collect();
    nonfoldable_filter(&reports)
}

/// Least fold-back and diagonal counts for the trees that first fold with
/// those features, as histograms plus the trees needing two or more.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoldCounts {
    pub fold_backs: BTreeMap<usize, u64>,
    pub diagonals: BTreeMap<usize, u64>,
    pub heavy_fold_backs: Vec<DualTree>,
    pub heavy_diagonals: Vec<DualTree>,
}

impl FoldCounts {
    /// Records one tree given its verdict.
    pub fn record(&mut self, t: &DualTree, v: Verdict, opts: SearchOptions<'_>) -> Result<(), SearchError> {
        let (kind, model) = match v {
            Verdict::Add180 => (FoldKind::FoldBack, FoldModel::GRID180),
            Verdict::AddDiagonal => (FoldKind::Diagonal, FoldModel::DIAGONAL),
            _ => return Ok(()),
        };
        let k = min_fold_count(t.sheet(), &Polycube::unit_cube(), &model, kind, opts)?.expect("verdict says the tree folds");
        let (hist, heavy) = match kind {
            FoldKind::FoldBack => (&mut self.fold_backs, &mut self.heavy_fold_backs),
            FoldKind::Diagonal => (&mut self.diagonals, &mut self.heavy_diagonals),
        };
        *hist.entry(k).or_default() += 1;
        if k >= 2 {
            heavy.push(t.clone());
        }
        Ok(())
    }

    pub fn merge(&mut self, o: &FoldCounts) {
        for (k, c) in &o.fold_backs {
            *self.fold_backs.entry(*k).or_default() += c;
        }
        for (k, c) in &o.diagonals {
            *self.diagonals.entry(*k).or_default() += c;
        }
        self.heavy_fold_backs.extend(o.heavy_fold_backs.iter().cloned());
        self.heavy_diagonals.extend(o.heavy_diagonals.iter().cloned());
    }

    pub fn max_fold_backs(&self) -> usize {
        self.fold_backs.keys().last().copied().unwrap_or(0)
    }

    pub fn max_diagonals(&self) -> usize {
        self.diagonals.keys().last().copied().unwrap_or(0)
    }
}

/// Fold counts over the classified trees of one shape.
pub fn shape_fold_counts(r: &ShapeReport, opts: SearchOptions<'_>) -> Result<FoldCounts, SearchError> {
    let mut out = FoldCounts::default();
    for (t, v) in &r.trees {
        out.record(t, v.clone()?, opts)?;
    }
    Ok(out)
}
