//! Fold models, the folding solution object, and its execution into a
//! coverage map of the target surface.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::lattice::{Cell, Edge, Sheet, Step};
use crate::polycube::{corner_in_space, propagate, reflect_diagonal, Diagonal, FaceKind, FoldAngle, GridFace, Polycube, Pose};

/// The set of fold features a folding may use. A flat (unfolded) edge is
/// always allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FoldModel {
    pub plus90: bool,
    pub minus90: bool,
    pub plus180: bool,
    pub minus180: bool,
    pub interior: bool,
    pub diagonal: bool,
    /// Arbitrary grid angles; recorded for documentation, never executed.
    pub any_degree: bool,
    /// Folds bisecting a square parallel to its edges; never executed.
    pub half_grid: bool,
}

impl FoldModel {
    pub const fn new(plus90: bool, minus90: bool, plus180: bool, minus180: bool, interior: bool) -> FoldModel {
        FoldModel { plus90, minus90, plus180, minus180, interior, diagonal: false, any_degree: false, half_grid: false }
    }

    /// `{±90; grid}`
    pub const GRID90: FoldModel = FoldModel::new(true, true, false, false, false);
    /// `{±90, ±180; grid}`
    pub const GRID180: FoldModel = FoldModel::new(true, true, true, true, false);
    /// `{±90, ±180; grid; diagonal}`
    pub const DIAGONAL: FoldModel = FoldModel { diagonal: true, ..FoldModel::GRID180 };

    /// The hierarchy models `F1` to `F9`. An unsigned 180 allows both signs.
    pub fn hierarchy(k: u8) -> Option<FoldModel> {
        let m = match k {
            1 => FoldModel::new(true, false, false, false, false),
            2 => FoldModel::new(true, true, false, false, false),
            3 => FoldModel::new(true, false, false, false, true),
            4 => FoldModel::new(true, false, true, true, false),
            5 => FoldModel::new(true, true, false, false, true),
            6 => FoldModel::new(true, true, true, true, false),
            7 => FoldModel::new(true, false, true, true, true),
            8 => FoldModel::new(true, true, true, true, true),
            9 => FoldModel { any_degree: true, interior: true, ..FoldModel::default() },
            _ => return None,
        };
        Some(m)
    }

    pub fn allows(&self, a: FoldAngle) -> bool {
        match a {
            FoldAngle::Flat => true,
            FoldAngle::Mountain90 => self.plus90,
            FoldAngle::Valley90 => self.minus90,
            FoldAngle::Mountain180 => self.plus180,
            FoldAngle::Valley180 => self.minus180,
        }
    }

    pub fn allows_fold_back(&self) -> bool {
        self.plus180 || self.minus180
    }

    /// The sign used when a search emits a fold-back.
    pub fn fold_back(&self) -> Option<FoldAngle> {
        if self.plus180 {
            Some(FoldAngle::Mountain180)
        } else if self.minus180 {
            Some(FoldAngle::Valley180)
        } else {
            None
        }
    }

    pub fn is_executable(&self) -> bool {
        !self.any_degree && !self.half_grid
    }

    /// Componentwise inclusion.
    pub fn is_subset_of(&self, o: &FoldModel) -> bool {
        let a = self.flags();
        let b = o.flags();
        a.iter().zip(b.iter()).all(|(x, y)| !*x || *y)
    }

    fn flags(&self) -> [bool; 8] {
        [self.plus90, self.minus90, self.plus180, self.minus180, self.interior, self.diagonal, self.any_degree, self.half_grid]
    }

    /// Parses `F1`..`F9` or a comma list such as `+90,-90,180,interior,diagonal`.
    pub fn parse(s: &str) -> Result<FoldModel, ModelParseError> {
        let t = s.trim();
        if let Some(k) = t.strip_prefix('F').or_else(|| t.strip_prefix('f')) {
            return k.parse::<u8>().ok().and_then(FoldModel::hierarchy).ok_or_else(|| ModelParseError(String::from(t)));
        }
        let mut m = FoldModel::default();
        for tok in t.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match tok {
                "+90" | "90" => m.plus90 = true,
                "-90" => m.minus90 = true,
                "±90" | "+-90" => {
                    m.plus90 = true;
                    m.minus90 = true;
                }
                "+180" => m.plus180 = true,
                "-180" => m.minus180 = true,
                "180" | "±180" | "+-180" => {
                    m.plus180 = true;
                    m.minus180 = true;
                }
                "interior" => m.interior = true,
                "diagonal" => m.diagonal = true,
                "any" => m.any_degree = true,
                "half-grid" => m.half_grid = true,
                "grid" => {}
                _ => return Err(ModelParseError(String::from(tok))),
            }
        }
        Ok(m)
    }
}

impl fmt::Display for FoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<&str> = Vec::new();
        if self.plus90 {
            parts.push("+90");
        }
        if self.minus90 {
            parts.push("-90");
        }
        if self.plus180 {
            parts.push("+180");
        }
        if self.minus180 {
            parts.push("-180");
        }
        if self.any_degree {
            parts.push("any");
        }
        parts.push("grid");
        if self.interior {
            parts.push("interior");
        }
        if self.diagonal {
            parts.push("diagonal");
        }
        if self.half_grid {
            parts.push("half-grid");
        }
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown fold model token `{0}`")]
pub struct ModelParseError(pub String);

/// A diagonal fold inside one square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    pub cell: Cell,
    pub diagonal: Diagonal,
    pub angle: FoldAngle,
}

/// A complete description of a folding: where the root square goes and the
/// angle on every joined edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Folding {
    pub sheet: Sheet,
    pub target: Polycube,
    pub root_cell: Cell,
    pub root_pose: Pose,
    /// One entry per join, sorted by edge.
    pub angles: Vec<(Edge, FoldAngle)>,
    /// Sorted by cell.
    pub splits: Vec<Split>,
}

impl Folding {
    pub fn angle(&self, e: &Edge) -> Option<FoldAngle> {
        self.angles.binary_search_by(|(x, _)| x.cmp(e)).ok().map(|i| self.angles[i].1)
    }

    pub fn split(&self, c: Cell) -> Option<&Split> {
        self.splits.iter().find(|s| s.cell == c)
    }

    pub fn count_where(&self, f: impl Fn(FoldAngle) -> bool) -> usize {
        self.angles.iter().filter(|(_, a)| f(*a)).count()
    }

    pub fn fold_backs(&self) -> usize {
        self.count_where(FoldAngle::is_fold_back)
    }
}

/// Where one square ended up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    pub cell: Cell,
    pub pose: Pose,
    pub kind: FaceKind,
    /// For a split square: the diagonal and the face corner (plane-axis
    /// signs) of the half it covers twice.
    pub half: Option<(Diagonal, (i32, i32))>,
}

/// Layer counts on the boundary of the target.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverageMap {
    pub whole: BTreeMap<GridFace, u32>,
    /// Keyed by face and the corner, in plane-axis signs, of the half.
    pub halves: BTreeMap<(GridFace, (i32, i32)), u32>,
    pub interior: u32,
}

impl CoverageMap {
    pub fn whole_layers(&self, f: &GridFace) -> u32 {
        self.whole.get(f).copied().unwrap_or(0)
    }

    pub fn half_layers(&self, f: &GridFace, corner: (i32, i32)) -> u32 {
        self.halves.get(&(*f, corner)).copied().unwrap_or(0)
    }

    pub fn face_covered(&self, f: &GridFace) -> bool {
        if self.whole_layers(f) > 0 {
            return true;
        }
        [(1, 1), (1, -1)].into_iter().any(|(a, b)| self.half_layers(f, (a, b)) > 0 && self.half_layers(f, (-a, -b)) > 0)
    }

    pub fn uncovered(&self, q: &Polycube) -> Vec<GridFace> {
        q.surface().into_iter().filter(|f| !self.face_covered(f)).collect()
    }
}

/// True when every boundary face of `q` is covered by a whole square or by
/// both halves of one diagonal.
pub fn covered(c: &CoverageMap, q: &Polycube) -> bool {
    q.surface().iter().all(|f| c.face_covered(f))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error("model {0} is not executable")]
    UnsupportedModel(FoldModel),
    #[error("angle {angle} on edge {edge:?} is not in the model")]
    AngleNotInModel { edge: Edge, angle: FoldAngle },
    #[error("join {0:?} has no angle")]
    MissingAngle(Edge),
    #[error("angle given for {0:?}, which is not a join")]
    UnknownEdge(Edge),
    #[error("diagonal fold at {0} but the model has none")]
    DiagonalNotAllowed(Cell),
    #[error("diagonal folds are only executed on the unit cube")]
    DiagonalNeedsUnitCube,
    #[error("diagonal fold at {0} must be a 180 fold allowed by the model")]
    BadSplitAngle(Cell),
    #[error("square {0} lands off the target")]
    PlacementOffSurface(Cell),
    #[error("square {0} lands on an interior face")]
    InteriorNotAllowed(Cell),
    #[error("join {0:?} closes a cycle inconsistently")]
    InconsistentJoin(Edge),
    #[error("root {0} is not a square of the sheet")]
    RootNotInSheet(Cell),
    #[error("root pose is not on a face of the target")]
    BadRootPose,
    #[error("face {0} is not covered")]
    NotCovered(GridFace),
}

/// Outcome of executing a folding.
#[derive(Clone, Debug)]
pub struct Execution {
    pub placements: Vec<Placement>,
    pub coverage: CoverageMap,
}

fn angle_ok(m: &FoldModel, e: Edge, a: FoldAngle) -> Result<(), FoldError> {
    if m.allows(a) {
        Ok(())
    } else {
        Err(FoldError::AngleNotInModel { edge: e, angle: a })
    }
}

/// Places every square by walking the joins from the root.
pub fn execute(f: &Folding, m: &FoldModel) -> Result<Execution, FoldError> {
    if !m.is_executable() {
        return Err(FoldError::UnsupportedModel(*m));
    }
    let sheet = &f.sheet;
    for (e, a) in &f.angles {
        if !sheet.is_joined(e) {
            return Err(FoldError::UnknownEdge(*e));
        }
        angle_ok(m, *e, *a)?;
    }
    for e in sheet.joins() {
        if f.angle(e).is_none() {
            return Err(FoldError::MissingAngle(*e));
        }
    }
    for s in &f.splits {
        if !m.diagonal {
            return Err(FoldError::DiagonalNotAllowed(s.cell));
        }
        if !f.target.is_unit_cube() {
            return Err(FoldError::DiagonalNeedsUnitCube);
        }
        if !s.angle.is_fold_back() || !m.allows(s.angle) {
            return Err(FoldError::BadSplitAngle(s.cell));
        }
    }
    let root = sheet.shape().index_of(f.root_cell).ok_or(FoldError::RootNotInSheet(f.root_cell))?;
    if f.target.classify(&f.root_pose.face()).is_none() {
        return Err(FoldError::BadRootPose);
    }

    let cells = sheet.cells();
    let nb = sheet.neighbours();
    // Base pose and entry step of every placed square.
    let mut placed: Vec<Option<(Pose, Step)>> = vec![None; cells.len()];
    let split_of = |i: usize| f.split(cells[i]);
    let frame = |placed: &[Option<(Pose, Step)>], i: usize, s: Step| -> Pose {
        let (base, entry) = placed[i].expect("placed");
        match split_of(i) {
            Some(sp) if sp.diagonal.triangle_of(s) != sp.diagonal.triangle_of(entry) => reflect_diagonal(base, sp.diagonal),
            _ => base,
        }
    };

    placed[root] = Some((f.root_pose, Step::South));
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(i) = queue.pop_front() {
        for &(s, j) in &nb[i] {
            let e = Edge::new(cells[i], cells[j]);
            let a = f.angle(&e).expect("checked above");
            let dep = frame(&placed, i, s);
            let arr = propagate(dep, dep.dir_of(s), a);
            match placed[j] {
                None => {
                    placed[j] = Some((arr, s.opposite()));
                    order.push(j);
                    queue.push_back(j);
                }
                Some(_) => {
                    if frame(&placed, j, s.opposite()) != arr {
                        return Err(FoldError::InconsistentJoin(e));
                    }
                }
            }
        }
    }

    let mut coverage = CoverageMap::default();
    let mut placements = Vec::with_capacity(cells.len());
    for &i in &order {
        let (pose, entry) = placed[i].expect("connected sheet");
        let face = pose.face();
        let kind = match f.target.classify(&face) {
            None => return Err(FoldError::PlacementOffSurface(cells[i])),
            Some(FaceKind::Interior) if !m.interior => return Err(FoldError::InteriorNotAllowed(cells[i])),
            Some(k) => k,
        };
        let half = split_of(i).map(|sp| {
            let corner = corner_in_space(&pose, sp.diagonal.triangle_of(entry));
            (sp.diagonal, corner)
        });
        match (kind, half) {
            (FaceKind::Interior, _) => coverage.interior += 1,
            (FaceKind::Boundary, None) => *coverage.whole.entry(face).or_default() += 1,
            (FaceKind::Boundary, Some((_, corner))) => *coverage.halves.entry((face, corner)).or_default() += 2,
        }
        placements.push(Placement { cell: cells[i], pose, kind, half });
    }
    Ok(Execution { placements, coverage })
}

/// Executes `f` and checks coverage. Shares nothing with the search state.
pub fn verify(f: &Folding, m: &FoldModel) -> Result<CoverageMap, FoldError> {
    let ex = execute(f, m)?;
    if let Some(face) = ex.coverage.uncovered(&f.target).into_iter().next() {
        return Err(FoldError::NotCovered(face));
    }
    Ok(ex.coverage)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{DualTree, Polyomino};
    use crate::polycube::{Axis, Dir};

    fn top() -> Pose {
        Pose::new(GridFace { anchor: [0, 0, 1], axis: Axis::Z }, Dir::PX, Dir::PY).unwrap()
    }

    fn all_angles(t: &DualTree, a: FoldAngle) -> Vec<(Edge, FoldAngle)> {
        t.edges().iter().map(|e| (*e, a)).collect()
    }

    fn folding(t: &DualTree, angles: Vec<(Edge, FoldAngle)>) -> Folding {
        Folding {
            sheet: t.sheet().clone(),
            target: Polycube::unit_cube(),
            root_cell: t.cells()[0],
            root_pose: top(),
            angles,
            splits: Vec::new(),
        }
    }

    #[test]
    fn cross_net_covers_every_face_once() {
        let t = DualTree::parse_tree_shape(".#.\n###\n.#.\n.#.").unwrap();
        let f = folding(&t, all_angles(&t, FoldAngle::Mountain90));
        let c = verify(&f, &FoldModel::hierarchy(1).unwrap()).unwrap();
        assert_eq!(c.whole.len(), 6);
        assert!(c.whole.values().all(|&k| k == 1));
    }

    #[test]
    fn domino_fold_back_stacks() {
        let t = DualTree::parse_tree_shape("##").unwrap();
        let f = folding(&t, all_angles(&t, FoldAngle::Mountain180));
        let ex = execute(&f, &FoldModel::GRID180).unwrap();
        assert_eq!(ex.coverage.whole.len(), 1);
        assert_eq!(ex.coverage.whole.values().next(), Some(&2));
        assert!(!covered(&ex.coverage, &f.target));
    }

    #[test]
    fn minus90_rejected_by_f1() {
        let t = DualTree::parse_tree_shape("##").unwrap();
        let f = folding(&t, all_angles(&t, FoldAngle::Valley90));
        assert!(matches!(execute(&f, &FoldModel::hierarchy(1).unwrap()), Err(FoldError::AngleNotInModel { .. })));
    }

    #[test]
    fn flat_edge_on_unit_cube_leaves_the_surface() {
        let t = DualTree::parse_tree_shape("##").unwrap();
        let f = folding(&t, all_angles(&t, FoldAngle::Flat));
        assert!(matches!(execute(&f, &FoldModel::GRID90), Err(FoldError::PlacementOffSurface(_))));
    }

    #[test]
    fn halves_of_one_diagonal_complete_a_face() {
        let face = GridFace { anchor: [0, 0, 0], axis: Axis::Z };
        let mut c = CoverageMap::default();
        c.halves.insert((face, (1, 1)), 2);
        assert!(!c.face_covered(&face));
        c.halves.insert((face, (1, -1)), 2);
        assert!(!c.face_covered(&face));
        c.halves.insert((face, (-1, -1)), 2);
        assert!(c.face_covered(&face));
    }

    #[test]
    fn model_parsing() {
        assert_eq!(FoldModel::parse("+90,-90,+180,-180").unwrap(), FoldModel::GRID180);
        assert_eq!(FoldModel::parse("F2").unwrap(), FoldModel::GRID90);
        assert!(FoldModel::parse("+45").is_err());
        assert!(!FoldModel::hierarchy(9).unwrap().is_executable());
        assert!(FoldModel::GRID90.is_subset_of(&FoldModel::DIAGONAL));
        assert!(!FoldModel::DIAGONAL.is_subset_of(&FoldModel::GRID180));
    }

    #[test]
    fn splits_need_the_diagonal_flag() {
        let t = DualTree::of_tree_shape(Polyomino::parse("##").unwrap()).unwrap();
        let mut f = folding(&t, all_angles(&t, FoldAngle::Mountain90));
        f.splits.push(Split { cell: t.cells()[0], diagonal: Diagonal::NeSw, angle: FoldAngle::Mountain180 });
        assert!(matches!(execute(&f, &FoldModel::GRID180), Err(FoldError::DiagonalNotAllowed(_))));
        assert!(execute(&f, &FoldModel::DIAGONAL).is_ok());
    }
}
