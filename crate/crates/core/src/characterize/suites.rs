use alloc::string::String;
use alloc::vec::Vec;

use crate::foldcore::{verify, FoldModel, Folding};
use crate::lattice::{Cell, DualTree, Edge, LatticeError, Polyomino, Sheet};
use crate::polycube::{Polycube, Vec3};
use crate::search::{min_fold_count, solve_sheet, FoldKind, SearchError, SearchOptions};

pub const P1_TEXT: &str = include_str!("../../../../fixtures/v1/p1.txt");
pub const P2_TEXT: &str = include_str!("../../../../fixtures/v1/p2.txt");
pub const P3_TEXT: &str = include_str!("../../../../fixtures/v1/p3.txt");
pub const P4_TEXT: &str = include_str!("../../../../fixtures/v1/p4.txt");
pub const MV_TEXT: &str = include_str!("../../../../fixtures/v1/mv.txt");
pub const RING9_TEXT: &str = include_str!("../../../../fixtures/v1/ring9.txt");
pub const PUZZLE_TEXTS: [&str; 3] = [
    include_str!("../../../../fixtures/v1/puzzle_a.txt"),
    include_str!("../../../../fixtures/v1/puzzle_b.txt"),
    include_str!("../../../../fixtures/v1/puzzle_c.txt"),
];

/// Square counts of `P1..P4` and face counts of `Q1..Q4`.
pub const FIXTURE_SIZES: [(usize, usize); 4] = [(9, 6), (11, 10), (46, 46), (24, 22)];

/// `3 × 3 × 2` box with the middle cube of one `3 × 3` layer removed.
pub fn holed_box() -> Polycube {
    let mut cubes: Vec<Vec3> = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..2 {
                if (x, y, z) != (1, 1, 1) {
                    cubes.push([x, y, z]);
                }
            }
        }
    }
    Polycube::new(cubes).expect("connected")
}

/// Five cubes in a plus.
pub fn cross5() -> Polycube {
    Polycube::new([[1, 0, 0], [0, 1, 0], [1, 1, 0], [2, 1, 0], [1, 2, 0]]).expect("connected")
}

/// Shapes and targets of the hierarchy examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyFixtures {
    pub shapes: [Sheet; 4],
    pub targets: [Polycube; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("fixture {0}: {1}")]
    Shape(usize, LatticeError),
    #[error("fixture {index} has {got:?} squares and faces, expected {want:?}")]
    Size { index: usize, got: (usize, usize), want: (usize, usize) },
}

impl HierarchyFixtures {
    pub fn builtin() -> HierarchyFixtures {
        HierarchyFixtures::from_texts([P1_TEXT, P2_TEXT, P3_TEXT, P4_TEXT], HierarchyFixtures::builtin_targets())
            .expect("built-in fixtures are valid")
    }

    pub fn builtin_targets() -> [Polycube; 4] {
        [Polycube::unit_cube(), Polycube::cuboid(2, 1, 1), holed_box(), cross5()]
    }

    /// Parses shapes in the `#`/`.` text format and checks every size.
    pub fn from_texts(texts: [&str; 4], targets: [Polycube; 4]) -> Result<HierarchyFixtures, FixtureError> {
        let mut shapes = Vec::with_capacity(4);
        for (i, t) in texts.iter().enumerate() {
            let p = Polyomino::parse(t).map_err(|e| FixtureError::Shape(i + 1, e))?;
            shapes.push(Sheet::solid(p));
        }
        let shapes: [Sheet; 4] = shapes.try_into().expect("four shapes");
        for i in 0..4 {
            let got = (shapes[i].len(), targets[i].surface().len());
            if got != FIXTURE_SIZES[i] {
                return Err(FixtureError::Size { index: i + 1, got, want: FIXTURE_SIZES[i] });
            }
        }
        Ok(HierarchyFixtures { shapes, targets })
    }
}

/// One strictness relation: the example folds in `stronger` and in none
/// of the `weaker` models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub number: u8,
    /// Index into the fixtures, `1..=3`.
    pub example: usize,
    pub stronger: u8,
    pub weaker: &'static [u8],
}

const fn rel(number: u8, example: usize, stronger: u8, weaker: &'static [u8]) -> Relation {
    Relation { number, example, stronger, weaker }
}

/// The machine-checkable relations of the model hierarchy.
pub const RELATIONS: [Relation; 24] = [
    rel(1, 3, 2, &[1]),
    rel(2, 1, 4, &[1]),
    rel(3, 2, 3, &[1]),
    rel(4, 1, 4, &[2]),
    rel(5, 3, 2, &[4]),
    rel(6, 2, 3, &[4]),
    rel(7, 1, 4, &[3]),
    rel(8, 3, 2, &[3]),
    rel(9, 2, 3, &[2]),
    rel(10, 2, 5, &[2]),
    rel(11, 3, 5, &[3]),
    rel(12, 1, 7, &[3]),
    rel(13, 2, 7, &[4]),
    rel(14, 3, 6, &[4]),
    rel(15, 1, 6, &[2, 1]),
    rel(16, 2, 7, &[6]),
    rel(17, 3, 6, &[7]),
    rel(18, 3, 5, &[7]),
    rel(19, 1, 7, &[5]),
    rel(20, 1, 6, &[5]),
    rel(21, 2, 5, &[6]),
    rel(22, 2, 8, &[6]),
    rel(23, 1, 8, &[5]),
    rel(24, 3, 8, &[7]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub relation: Relation,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyReport {
    /// `matrix[i][k - 1]`: example `i + 1` folds under `Fk`.
    pub matrix: [[bool; 8]; 3],
    /// Witnesses found for the foldable cells, in matrix order.
    pub witnesses: Vec<Folding>,
    pub p4_folds_in_f8: bool,
    pub relations: Vec<RelationOutcome>,
    pub relation25: &'static str,
}

impl HierarchyReport {
    pub fn all_passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed) && !self.p4_folds_in_f8
    }

    /// One line per relation.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .relations
            .iter()
            .map(|o| {
                let r = o.relation;
                alloc::format!(
                    "relation {:>2}: P{} folds in F{}, not in {}: {}",
                    r.number,
                    r.example,
                    r.stronger,
                    r.weaker.iter().map(|k| alloc::format!("F{k}")).collect::<Vec<_>>().join(", "),
                    if o.passed { "pass" } else { "FAIL" }
                )
            })
            .collect();
        out.push(alloc::format!(
            "relation 25: P4 does not fold in F8: {}; {}",
            if self.p4_folds_in_f8 { "FAIL" } else { "pass" },
            self.relation25
        ));
        out
    }
}

/// Solves every example under every hierarchy model and checks the
/// relations against the outcomes.
pub fn hierarchy_suite(fx: &HierarchyFixtures, opts: SearchOptions<'_>) -> Result<HierarchyReport, SearchError> {
    let mut matrix = [[false; 8]; 3];
    let mut witnesses = Vec::new();
    for (i, row) in matrix.iter_mut().enumerate() {
        for k in 1..=8u8 {
            let m = FoldModel::hierarchy(k).expect("F1..F8");
            if let Some(f) = solve_sheet(&fx.shapes[i], &fx.targets[i], &m, opts)? {
                row[k as usize - 1] = verify(&f, &m).is_ok();
                witnesses.push(f);
            }
        }
    }
    let f8 = FoldModel::hierarchy(8).expect("F8");
    let p4_folds_in_f8 = solve_sheet(&fx.shapes[3], &fx.targets[3], &f8, opts)?.is_some();
    let relations = RELATIONS
        .iter()
        .map(|r| {
            let row = &matrix[r.example - 1];
            let passed = row[r.stronger as usize - 1] && r.weaker.iter().all(|&k| !row[k as usize - 1]);
            RelationOutcome { relation: *r, passed }
        })
        .collect();
    Ok(HierarchyReport { matrix, witnesses, p4_folds_in_f8, relations, relation25: "F9 not executable" })
}

/// `{+90, +180; grid}`: one sign only.
pub const SINGLE_SIGN: FoldModel = FoldModel::new(true, false, true, false, false);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MountainValley {
    pub single_sign: Option<Folding>,
    pub mixed: Option<Folding>,
    pub min_fold_backs: Option<usize>,
}

/// A tree shape that needs folds of both signs.
pub fn mountain_valley_witness(opts: SearchOptions<'_>) -> Result<MountainValley, SearchError> {
    mountain_valley_of(&Sheet::solid(Polyomino::parse(MV_TEXT).expect("fixture")), opts)
}

/// Folds `sheet` onto the unit cube with one fold sign and with both.
pub fn mountain_valley_of(sheet: &Sheet, opts: SearchOptions<'_>) -> Result<MountainValley, SearchError> {
    let q = Polycube::unit_cube();
    Ok(MountainValley {
        single_sign: solve_sheet(sheet, &q, &SINGLE_SIGN, opts)?,
        mixed: solve_sheet(sheet, &q, &FoldModel::GRID180, opts)?,
        min_fold_backs: min_fold_count(sheet, &q, &FoldModel::GRID180, FoldKind::FoldBack, opts)?,
    })
}

impl MountainValley {
    pub fn passed(&self) -> bool {
        self.single_sign.is_none() && self.mixed.is_some()
    }
}

/// Column of four with one square on each side, at every pair of heights.
pub fn target_1_4_1() -> Vec<DualTree> {
    let mut v = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let mut c: Vec<Cell> = (0..4).map(|y| Cell::new(1, y)).collect();
            c.extend([Cell::new(0, a), Cell::new(2, b)]);
            v.push(c);
        }
    }
    dedup_trees(v)
}

/// Three vertical pairs in a staircase.
pub fn target_2_2_2() -> Vec<DualTree> {
    dedup_trees([[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3)].map(|(x, y)| Cell::new(x, y)).to_vec()])
}

/// A pair overlapping a triple by one row, plus one square beside the
/// triple at any height.
pub fn target_2_3_1() -> Vec<DualTree> {
    let base = [(0, 0), (0, 1), (1, 1), (1, 2), (1, 3)].map(|(x, y)| Cell::new(x, y));
    dedup_trees((1..4).map(|y| {
        let mut c = base.to_vec();
        c.push(Cell::new(2, y));
        c
    }))
}

fn dedup_trees(shapes: impl IntoIterator<Item = Vec<Cell>>) -> Vec<DualTree> {
    let mut ps: Vec<Polyomino> = shapes.into_iter().map(|c| Polyomino::new(c).expect("connected")).collect();
    ps.sort_unstable();
    ps.dedup();
    ps.into_iter().map(|p| DualTree::of_tree_shape(p).expect("tree shape")).collect()
}

/// The pinwheel cutting of the `3 × 3` square: four bent arms around the
/// centre.
pub fn pinwheel9() -> DualTree {
    let sq = Polyomino::parse("###\n###\n###").expect("square");
    let cuts = [((0, 0), (0, 1)), ((1, 0), (2, 0)), ((2, 1), (2, 2)), ((0, 2), (1, 2))]
        .map(|(a, b)| Edge::new(Cell::new(a.0, a.1), Cell::new(b.0, b.1)));
    let joins: Vec<Edge> = sq.adjacencies().into_iter().filter(|e| !cuts.contains(e)).collect();
    DualTree::new(sq.cells().iter().copied(), joins).expect("spanning tree")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetVerdict {
    pub name: &'static str,
    pub tree: DualTree,
    pub foldable: bool,
    pub min_diagonal: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W45Report {
    pub targets: Vec<TargetVerdict>,
    pub pinwheel_folds: bool,
}

impl W45Report {
    pub fn passed(&self) -> bool {
        self.targets.iter().all(|t| t.foldable && t.min_diagonal == Some(0)) && !self.pinwheel_folds
    }
}

/// Grid-fold targets must fold without diagonals; the pinwheel must not
/// fold under any executable model.
pub fn w45_fixture_suite(opts: SearchOptions<'_>) -> Result<W45Report, SearchError> {
    let q = Polycube::unit_cube();
    let mut targets = Vec::new();
    let groups: [(&'static str, Vec<DualTree>); 3] = [("1+4+1", target_1_4_1()), ("2-2-2", target_2_2_2()), ("2-3+1", target_2_3_1())];
    for (name, trees) in groups {
        for tree in trees {
            let foldable = solve_sheet(tree.sheet(), &q, &FoldModel::GRID90, opts)?.is_some();
            let min_diagonal = min_fold_count(tree.sheet(), &q, &FoldModel::DIAGONAL, FoldKind::Diagonal, opts)?;
            targets.push(TargetVerdict { name, tree, foldable, min_diagonal });
        }
    }
    let pinwheel_folds = solve_sheet(pinwheel9().sheet(), &q, &FoldModel::DIAGONAL, opts)?.is_some();
    Ok(W45Report { targets, pinwheel_folds })
}

/// The three holed puzzle shapes and the nine-square ring, each folded
/// without cuts.
pub fn puzzle_fixtures() -> Vec<(&'static str, Sheet)> {
    let mut v: Vec<(&'static str, Sheet)> = ["puzzle_a", "puzzle_b", "puzzle_c"]
        .into_iter()
        .zip(PUZZLE_TEXTS)
        .map(|(n, t)| (n, Sheet::solid(Polyomino::parse(t).expect("fixture"))))
        .collect();
    v.push(("ring9", Sheet::solid(Polyomino::parse(RING9_TEXT).expect("fixture"))));
    v
}
