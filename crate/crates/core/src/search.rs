//! Exhaustive backtracking search for foldings of a sheet onto a polycube.
//!
//! Squares are placed in breadth-first order from the first cell; each
//! joined edge tries the angles `0, +90, -90, 180` and, when diagonal folds
//! are allowed, each square may additionally be split along a diagonal.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, Ordering};

use hashbrown::HashMap;
use thiserror::Error;

use crate::foldcore::{FoldModel, Folding, Split};
use crate::lattice::{DualTree, Edge, Polyomino, Sheet, Step};
use crate::polycube::{corner_in_space, propagate, reflect_diagonal, Diagonal, FoldAngle, Polycube, Pose, Vec3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("model {0} cannot be executed")]
    UnsupportedModel(FoldModel),
    #[error("diagonal folds are only searched on the unit cube")]
    DiagonalNeedsUnitCube,
    #[error("node budget of {0} exhausted")]
    ResourceLimitExceeded(u64),
    #[error("search cancelled")]
    Cancelled,
}

/// Limits and switches for one search.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions<'a> {
    /// Maximum number of square placements tried.
    pub node_budget: Option<u64>,
    pub cancel: Option<&'a AtomicBool>,
    /// Disables the area bound; only useful for cross-checking it.
    pub no_pruning: bool,
    pub max_fold_backs: Option<usize>,
    pub max_splits: Option<usize>,
}

/// What kind of fold [`min_fold_count`] minimises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldKind {
    FoldBack,
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Boundary(usize),
    Interior,
}

fn corner_index(c: (i32, i32)) -> usize {
    match c {
        (1, 1) => 0,
        (1, -1) => 1,
        (-1, 1) => 2,
        _ => 3,
    }
}

struct Search<'a> {
    model: FoldModel,
    target: &'a Polycube,
    sheet: &'a Sheet,
    slots: HashMap<Vec3, Slot>,
    faces: usize,
    order: Vec<usize>,
    parent: Vec<(usize, Step)>,
    /// Joins closing cycles, checked when the later endpoint is placed:
    /// `(earlier cell, step from the later cell)`.
    extras: Vec<Vec<(usize, Step)>>,
    angles: Vec<FoldAngle>,
    opts: SearchOptions<'a>,
    nodes: u64,
    // state, indexed by cell
    pose: Vec<Pose>,
    entry: Vec<Step>,
    split: Vec<Option<Diagonal>>,
    edge_angle: Vec<FoldAngle>,
    extra_angle: Vec<Vec<FoldAngle>>,
    whole: Vec<u16>,
    halves: Vec<[u16; 4]>,
    covered: usize,
    fold_backs: usize,
    splits: usize,
}

impl<'a> Search<'a> {
    fn new(sheet: &'a Sheet, target: &'a Polycube, model: FoldModel, opts: SearchOptions<'a>) -> Search<'a> {
        let surface = target.surface();
        let mut slots = HashMap::new();
        for (i, f) in surface.iter().enumerate() {
            slots.insert(f.center(), Slot::Boundary(i));
        }
        if model.interior {
            for f in target.interior_faces() {
                slots.insert(f.center(), Slot::Interior);
            }
        }
        let n = sheet.len();
        let nb = sheet.neighbours();
        let mut order = vec![0usize];
        let mut parent = vec![(usize::MAX, Step::South); n];
        let mut pos = vec![usize::MAX; n];
        pos[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let i = order[head];
            head += 1;
            for &(s, j) in &nb[i] {
                if pos[j] == usize::MAX {
                    pos[j] = order.len();
                    order.push(j);
                    parent[j] = (i, s);
                }
            }
        }
        let mut extras = vec![Vec::new(); n];
        for (i, list) in nb.iter().enumerate() {
            for &(s, j) in list {
                let tree_edge = parent[i].0 == j || parent[j].0 == i;
                if !tree_edge && pos[j] < pos[i] {
                    extras[i].push((j, s));
                }
            }
        }
        let mut angles = vec![FoldAngle::Flat];
        if model.plus90 {
            angles.push(FoldAngle::Mountain90);
        }
        if model.minus90 {
            angles.push(FoldAngle::Valley90);
        }
        if let Some(b) = model.fold_back() {
            angles.push(b);
        }
        let faces = surface.len();
        let extra_angle = extras.iter().map(|v| vec![FoldAngle::Flat; v.len()]).collect();
        Search {
            model,
            target,
            sheet,
            slots,
            faces,
            order,
            parent,
            extras,
            angles,
            opts,
            nodes: 0,
            pose: vec![Pose { center: [0; 3], u: crate::polycube::Dir::PX, v: crate::polycube::Dir::PY }; n],
            entry: vec![Step::South; n],
            split: vec![None; n],
            edge_angle: vec![FoldAngle::Flat; n],
            extra_angle,
            whole: vec![0; faces],
            halves: vec![[0; 4]; faces],
            covered: 0,
            fold_backs: 0,
            splits: 0,
        }
    }

    fn face_covered(&self, f: usize) -> bool {
        let h = &self.halves[f];
        self.whole[f] > 0 || (h[0] > 0 && h[3] > 0) || (h[1] > 0 && h[2] > 0)
    }

    fn frame(&self, i: usize, s: Step) -> Pose {
        match self.split[i] {
            Some(d) if d.triangle_of(s) != d.triangle_of(self.entry[i]) => reflect_diagonal(self.pose[i], d),
            _ => self.pose[i],
        }
    }

    fn tick(&mut self) -> Result<(), SearchError> {
        self.nodes += 1;
        if let Some(b) = self.opts.node_budget {
            if self.nodes > b {
                return Err(SearchError::ResourceLimitExceeded(b));
            }
        }
        if self.nodes & 1023 == 0 {
            if let Some(c) = self.opts.cancel {
                if c.load(Ordering::Relaxed) {
                    return Err(SearchError::Cancelled);
                }
            }
        }
        Ok(())
    }

    /// Adds (`sign = true`) or removes a square's coverage.
    fn cover(&mut self, i: usize, slot: Slot, add: bool) {
        let Slot::Boundary(f) = slot else { return };
        let before = self.face_covered(f);
        match self.split[i] {
            None => {
                if add {
                    self.whole[f] += 1
                } else {
                    self.whole[f] -= 1
                }
            }
            Some(d) => {
                let c = corner_index(corner_in_space(&self.pose[i], d.triangle_of(self.entry[i])));
                if add {
                    self.halves[f][c] += 1
                } else {
                    self.halves[f][c] -= 1
                }
            }
        }
        let after = self.face_covered(f);
        match (before, after) {
            (false, true) => self.covered += 1,
            (true, false) => self.covered -= 1,
            _ => {}
        }
    }

    fn split_choices(&self) -> &'static [Option<Diagonal>] {
        const NONE: [Option<Diagonal>; 1] = [None];
        const ALL: [Option<Diagonal>; 3] = [None, Some(Diagonal::NeSw), Some(Diagonal::NwSe)];
        let room = self.opts.max_splits.is_none_or(|m| self.splits < m);
        if self.model.diagonal && room {
            &ALL
        } else {
            &NONE
        }
    }

    fn extras_consistent(&mut self, i: usize) -> bool {
        for k in 0..self.extras[i].len() {
            let (j, s) = self.extras[i][k];
            let dep = self.frame(i, s);
            let want = self.frame(j, s.opposite());
            let hit = self.angles.iter().copied().find(|a| propagate(dep, dep.dir_of(s), *a) == want);
            match hit {
                Some(a) => self.extra_angle[i][k] = a,
                None => return false,
            }
        }
        true
    }

    /// Places square `order[k]` at `pose`, tries every split, and recurses.
    fn place(&mut self, k: usize, pose: Pose, entry: Step) -> Result<bool, SearchError> {
        let i = self.order[k];
        let slot = match self.slots.get(&pose.center) {
            Some(s) => *s,
            None => return Ok(false),
        };
        self.pose[i] = pose;
        self.entry[i] = entry;
        for &choice in self.split_choices() {
            self.tick()?;
            if choice.is_some() && slot == Slot::Interior {
                continue;
            }
            self.split[i] = choice;
            if choice.is_some() {
                self.splits += 1;
            }
            self.cover(i, slot, true);
            let remaining = self.order.len() - k - 1;
            let bound_ok = self.opts.no_pruning || remaining >= self.faces - self.covered;
            let found = bound_ok && self.extras_consistent(i) && self.descend(k + 1)?;
            if found {
                return Ok(true);
            }
            self.cover(i, slot, false);
            if choice.is_some() {
                self.splits -= 1;
            }
            self.split[i] = None;
        }
        Ok(false)
    }

    fn descend(&mut self, k: usize) -> Result<bool, SearchError> {
        if k == self.order.len() {
            return Ok(self.covered == self.faces);
        }
        let i = self.order[k];
        let (p, s) = self.parent[i];
        let dep = self.frame(p, s);
        let d = dep.dir_of(s);
        for ai in 0..self.angles.len() {
            let a = self.angles[ai];
            if a.is_fold_back() {
                if self.opts.max_fold_backs.is_some_and(|m| self.fold_backs >= m) {
                    continue;
                }
                self.fold_backs += 1;
            }
            self.edge_angle[i] = a;
            let r = self.place(k, propagate(dep, d, a), s.opposite());
            if a.is_fold_back() {
                self.fold_backs -= 1;
            }
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn root_poses(&self) -> Vec<Pose> {
        let mut faces = self.target.surface();
        if self.model.interior {
            faces.extend(self.target.interior_faces());
        }
        let syms = self.target.symmetries();
        let mut out = Vec::new();
        for f in faces {
            for p in Pose::frames(f) {
                if syms.iter().all(|s| p <= Polycube::map_pose(s, &p)) {
                    out.push(p);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn run(&mut self) -> Result<Option<Folding>, SearchError> {
        for root in self.root_poses() {
            if self.place(0, root, Step::South)? {
                return Ok(Some(self.folding(root)));
            }
        }
        Ok(None)
    }

    fn folding(&self, root: Pose) -> Folding {
        let cells = self.sheet.cells();
        let mut angles: Vec<(Edge, FoldAngle)> = Vec::with_capacity(self.sheet.joins().len());
        for &i in &self.order[1..] {
            angles.push((Edge::new(cells[i], cells[self.parent[i].0]), self.edge_angle[i]));
        }
        for (i, list) in self.extras.iter().enumerate() {
            for (k, &(j, _)) in list.iter().enumerate() {
                angles.push((Edge::new(cells[i], cells[j]), self.extra_angle[i][k]));
            }
        }
        angles.sort_unstable();
        let fold_back = self.model.fold_back().unwrap_or(FoldAngle::Mountain180);
        let mut splits: Vec<Split> =
            (0..cells.len()).filter_map(|i| self.split[i].map(|d| Split { cell: cells[i], diagonal: d, angle: fold_back })).collect();
        splits.sort_unstable();
        Folding { sheet: self.sheet.clone(), target: self.target.clone(), root_cell: cells[0], root_pose: root, angles, splits }
    }
}

/// Statistics from a finished search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

fn check_model(q: &Polycube, m: &FoldModel) -> Result<(), SearchError> {
    if !m.is_executable() {
        return Err(SearchError::UnsupportedModel(*m));
    }
    if m.diagonal && !q.is_unit_cube() {
        return Err(SearchError::DiagonalNeedsUnitCube);
    }
    Ok(())
}

/// Searches for a folding of any sheet (a tree or a polyomino with some
/// cuts); every join must be consistent.
pub fn solve_sheet_with_stats(
    sheet: &Sheet,
    q: &Polycube,
    m: &FoldModel,
    opts: SearchOptions<'_>,
) -> (Result<Option<Folding>, SearchError>, SearchStats) {
    if let Err(e) = check_model(q, m) {
        return (Err(e), SearchStats::default());
    }
    let mut s = Search::new(sheet, q, *m, opts);
    let r = s.run();
    (r, SearchStats { nodes: s.nodes })
}

pub fn solve_sheet(sheet: &Sheet, q: &Polycube, m: &FoldModel, opts: SearchOptions<'_>) -> Result<Option<Folding>, SearchError> {
    solve_sheet_with_stats(sheet, q, m, opts).0
}

pub fn solve(t: &DualTree, q: &Polycube, m: &FoldModel, opts: SearchOptions<'_>) -> Result<Option<Folding>, SearchError> {
    solve_sheet(t.sheet(), q, m, opts)
}

/// The least number of fold-backs or diagonal folds over all foldings, or
/// `None` when the sheet does not fold at all.
pub fn min_fold_count(
    sheet: &Sheet,
    q: &Polycube,
    m: &FoldModel,
    kind: FoldKind,
    opts: SearchOptions<'_>,
) -> Result<Option<usize>, SearchError> {
    if solve_sheet(sheet, q, m, opts)?.is_none() {
        return Ok(None);
    }
    for k in 0..=sheet.len() {
        let mut o = opts;
        match kind {
            FoldKind::FoldBack => o.max_fold_backs = Some(k),
            FoldKind::Diagonal => o.max_splits = Some(k),
        }
        if solve_sheet(sheet, q, m, o)?.is_some() {
            return Ok(Some(k));
        }
    }
    unreachable!("an unrestricted folding exists")
}

/// True when some canonical dual tree of `p` folds.
pub fn foldable_polyomino(p: &Polyomino, q: &Polycube, m: &FoldModel, opts: SearchOptions<'_>) -> Result<bool, SearchError> {
    for t in p.canonical_dual_trees() {
        if solve(&t, q, m, opts)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldcore::verify;

    fn tree(s: &str) -> DualTree {
        DualTree::parse_tree_shape(s).unwrap()
    }

    #[test]
    fn net_folds_with_mountains_only() {
        let t = tree(".#.\n###\n.#.\n.#.");
        let f = solve(&t, &Polycube::unit_cube(), &FoldModel::hierarchy(1).unwrap(), SearchOptions::default()).unwrap().unwrap();
        assert!(verify(&f, &FoldModel::hierarchy(1).unwrap()).is_ok());
    }

    #[test]
    fn strip_of_six_does_not_fold() {
        let t = tree("######");
        let q = Polycube::unit_cube();
        assert!(solve(&t, &q, &FoldModel::GRID180, SearchOptions::default()).unwrap().is_none());
    }

    #[test]
    fn strip_of_seven_needs_two_diagonals() {
        let t = tree("#######");
        let q = Polycube::unit_cube();
        assert!(solve(&t, &q, &FoldModel::GRID180, SearchOptions::default()).unwrap().is_none());
        let f = solve(&t, &q, &FoldModel::DIAGONAL, SearchOptions::default()).unwrap().unwrap();
        assert!(verify(&f, &FoldModel::DIAGONAL).is_ok());
        let k = min_fold_count(t.sheet(), &q, &FoldModel::DIAGONAL, FoldKind::Diagonal, SearchOptions::default()).unwrap();
        assert_eq!(k, Some(2));
    }

    #[test]
    fn budget_is_reported() {
        let t = tree("######");
        let opts = SearchOptions { node_budget: Some(3), ..SearchOptions::default() };
        let r = solve(&t, &Polycube::unit_cube(), &FoldModel::GRID90, opts);
        assert_eq!(r, Err(SearchError::ResourceLimitExceeded(3)));
    }

    #[test]
    fn unit_cube_roots_split_into_two_orbits() {
        let q = Polycube::unit_cube();
        let t = tree("#");
        let s = Search::new(t.sheet(), &q, FoldModel::GRID90, SearchOptions::default());
        assert_eq!(s.root_poses().len(), 2);
    }
}
