//! Polycubes, their boundary and interior grid faces, and the rolling map
//! that carries a placed square across one of its edges.
//!
//! Positions of squares are kept in doubled coordinates: a unit square has a
//! centre with two odd coordinates and one even one (the normal axis).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub type Vec3 = [i32; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

/// A signed axis unit vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dir {
    pub axis: Axis,
    pub positive: bool,
}

impl Dir {
    pub const PX: Dir = Dir { axis: Axis::X, positive: true };
    pub const NX: Dir = Dir { axis: Axis::X, positive: false };
    pub const PY: Dir = Dir { axis: Axis::Y, positive: true };
    pub const NY: Dir = Dir { axis: Axis::Y, positive: false };
    pub const PZ: Dir = Dir { axis: Axis::Z, positive: true };
    pub const NZ: Dir = Dir { axis: Axis::Z, positive: false };
    pub const ALL: [Dir; 6] = [Dir::PX, Dir::NX, Dir::PY, Dir::NY, Dir::PZ, Dir::NZ];

    pub fn vec(self) -> Vec3 {
        let mut v = [0; 3];
        v[self.axis.index()] = if self.positive { 1 } else { -1 };
        v
    }

    pub fn from_vec(v: Vec3) -> Option<Dir> {
        let nz: Vec<usize> = (0..3).filter(|&i| v[i] != 0).collect();
        match nz.as_slice() {
            [i] if v[*i].abs() == 1 => Some(Dir { axis: Axis::from_index(*i), positive: v[*i] > 0 }),
            _ => None,
        }
    }

    pub fn flip(self) -> Dir {
        Dir { axis: self.axis, positive: !self.positive }
    }

    pub fn cross(self, other: Dir) -> Option<Dir> {
        Dir::from_vec(cross(self.vec(), other.vec()))
    }

    pub fn index(self) -> usize {
        self.axis.index() * 2 + usize::from(!self.positive)
    }

    pub fn name(self) -> &'static str {
        match (self.axis, self.positive) {
            (Axis::X, true) => "+x",
            (Axis::X, false) => "-x",
            (Axis::Y, true) => "+y",
            (Axis::Y, false) => "-y",
            (Axis::Z, true) => "+z",
            (Axis::Z, false) => "-z",
        }
    }

    pub fn parse(s: &str) -> Option<Dir> {
        Dir::ALL.into_iter().find(|d| d.name() == s)
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Signed fold angle on a crease; positive is mountain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoldAngle {
    Flat,
    Mountain90,
    Valley90,
    Mountain180,
    Valley180,
}

impl FoldAngle {
    /// Search order.
    pub const ALL: [FoldAngle; 5] =
        [FoldAngle::Flat, FoldAngle::Mountain90, FoldAngle::Valley90, FoldAngle::Mountain180, FoldAngle::Valley180];

    pub fn degrees(self) -> i32 {
        match self {
            FoldAngle::Flat => 0,
            FoldAngle::Mountain90 => 90,
            FoldAngle::Valley90 => -90,
            FoldAngle::Mountain180 => 180,
            FoldAngle::Valley180 => -180,
        }
    }

    pub fn from_degrees(d: i32) -> Option<FoldAngle> {
        FoldAngle::ALL.into_iter().find(|a| a.degrees() == d)
    }

    pub fn is_fold_back(self) -> bool {
        matches!(self, FoldAngle::Mountain180 | FoldAngle::Valley180)
    }

    pub fn is_mountain(self) -> bool {
        self.degrees() > 0
    }

    pub fn is_valley(self) -> bool {
        self.degrees() < 0
    }
}

impl fmt::Display for FoldAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.degrees())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceKind {
    Boundary,
    Interior,
}

/// A unit grid square in space: minimal corner plus normal axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridFace {
    pub anchor: Vec3,
    pub axis: Axis,
}

impl GridFace {
    pub fn from_center(c: Vec3) -> GridFace {
        let axis = (0..3).find(|&i| c[i].rem_euclid(2) == 0).map(Axis::from_index).expect("face centre");
        let mut anchor = [0; 3];
        for i in 0..3 {
            anchor[i] = if i == axis.index() { c[i] / 2 } else { (c[i] - 1).div_euclid(2) };
        }
        GridFace { anchor, axis }
    }

    pub fn center(&self) -> Vec3 {
        core::array::from_fn(|i| if i == self.axis.index() { 2 * self.anchor[i] } else { 2 * self.anchor[i] + 1 })
    }

    /// The two in-plane axes in increasing order.
    pub fn plane_axes(&self) -> (Axis, Axis) {
        match self.axis {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }
}

impl fmt::Display for GridFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.anchor;
        write!(f, "[{}, {}, {}]/{:?}", a[0], a[1], a[2], self.axis)
    }
}

/// A placed square: its grid face and the images of the sheet's `+x`
/// (`u`) and `+y` (`v`) directions. `u × v` is the side of the sheet
/// facing up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pose {
    pub center: Vec3,
    pub u: Dir,
    pub v: Dir,
}

impl Pose {
    pub fn new(face: GridFace, u: Dir, v: Dir) -> Option<Pose> {
        let ok = u.axis != face.axis && v.axis != face.axis && u.axis != v.axis;
        ok.then(|| Pose { center: face.center(), u, v })
    }

    pub fn face(&self) -> GridFace {
        GridFace::from_center(self.center)
    }

    pub fn normal(&self) -> Dir {
        self.u.cross(self.v).expect("perpendicular frame")
    }

    /// Space direction of a sheet step.
    pub fn dir_of(&self, s: crate::lattice::Step) -> Dir {
        use crate::lattice::Step;
        match s {
            Step::East => self.u,
            Step::North => self.v,
            Step::West => self.u.flip(),
            Step::South => self.v.flip(),
        }
    }

    /// The eight frames of a face (four rotations on each side).
    pub fn frames(face: GridFace) -> [Pose; 8] {
        let (a, b) = face.plane_axes();
        let da = Dir { axis: a, positive: true };
        let db = Dir { axis: b, positive: true };
        let us = [da, db, da.flip(), db.flip()];
        let mut out = [Pose { center: face.center(), u: da, v: db }; 8];
        for (i, u) in us.into_iter().enumerate() {
            let w = us[(i + 1) % 4];
            out[2 * i] = Pose { center: face.center(), u, v: w };
            out[2 * i + 1] = Pose { center: face.center(), u, v: w.flip() };
        }
        out
    }
}

/// Carries a placed square across its edge in direction `exit` (one of
/// `±u`, `±v`) and folds the far square by `angle` about that edge.
///
/// A mountain fold turns the continuation away from the sheet's up side.
pub fn propagate(p: Pose, exit: Dir, angle: FoldAngle) -> Pose {
    let n = p.normal();
    debug_assert!(exit.axis != n.axis);
    let (d2, n2) = match angle {
        FoldAngle::Flat => (exit, n),
        FoldAngle::Mountain90 => (n.flip(), exit),
        FoldAngle::Valley90 => (n, exit.flip()),
        FoldAngle::Mountain180 | FoldAngle::Valley180 => (exit.flip(), n.flip()),
    };
    let rot = |w: Dir| -> Dir {
        if w == exit {
            d2
        } else if w == exit.flip() {
            d2.flip()
        } else if w == n {
            n2
        } else if w == n.flip() {
            n2.flip()
        } else {
            w
        }
    };
    let center = add(add(p.center, exit.vec()), d2.vec());
    Pose { center, u: rot(p.u), v: rot(p.v) }
}

/// Reflection of a pose across one of its diagonals: the frame seen from
/// the half of a square folded over onto the other half.
pub fn reflect_diagonal(p: Pose, diag: Diagonal) -> Pose {
    match diag {
        Diagonal::NeSw => Pose { center: p.center, u: p.v, v: p.u },
        Diagonal::NwSe => Pose { center: p.center, u: p.v.flip(), v: p.u.flip() },
    }
}

/// A diagonal of a square, named in sheet coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diagonal {
    NeSw,
    NwSe,
}

impl Diagonal {
    pub const ALL: [Diagonal; 2] = [Diagonal::NeSw, Diagonal::NwSe];

    pub fn name(self) -> &'static str {
        match self {
            Diagonal::NeSw => "ne-sw",
            Diagonal::NwSe => "nw-se",
        }
    }

    pub fn parse(s: &str) -> Option<Diagonal> {
        Diagonal::ALL.into_iter().find(|d| d.name() == s)
    }

    /// The triangle holding the edge in direction `s`, given as its corner
    /// off the diagonal in sheet units `(±1, ±1)`.
    pub fn triangle_of(self, s: crate::lattice::Step) -> (i32, i32) {
        use crate::lattice::Step;
        match (self, s) {
            (Diagonal::NeSw, Step::South | Step::East) => (1, -1),
            (Diagonal::NeSw, Step::North | Step::West) => (-1, 1),
            (Diagonal::NwSe, Step::North | Step::East) => (1, 1),
            (Diagonal::NwSe, Step::South | Step::West) => (-1, -1),
        }
    }
}

/// Corner `(a, b)` of a face in the sign pattern of its two plane axes.
pub fn corner_in_space(p: &Pose, corner: (i32, i32)) -> (i32, i32) {
    let mut w = [0; 3];
    let su = if corner.0 > 0 { p.u } else { p.u.flip() };
    let sv = if corner.1 > 0 { p.v } else { p.v.flip() };
    w = add(w, su.vec());
    w = add(w, sv.vec());
    let (a, b) = p.face().plane_axes();
    (w[a.index()], w[b.index()])
}

/// A proper rotation of the cubic lattice, as a signed axis permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rotation {
    perm: [u8; 3],
    sign: [i8; 3],
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation { perm: [0, 1, 2], sign: [1, 1, 1] };

    pub fn all() -> Vec<Rotation> {
        const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(24);
        for perm in PERMS {
            let parity = if matches!(perm, [0, 1, 2] | [1, 2, 0] | [2, 0, 1]) { 1 } else { -1 };
            for s in 0..8 {
                let sign = [if s & 1 != 0 { -1 } else { 1 }, if s & 2 != 0 { -1 } else { 1 }, if s & 4 != 0 { -1 } else { 1 }];
                if parity * (sign[0] * sign[1] * sign[2]) as i32 == 1 {
                    out.push(Rotation { perm, sign });
                }
            }
        }
        out
    }

    /// Output coordinate `i` is `sign[i] * input[perm[i]]`.
    pub fn apply(&self, v: Vec3) -> Vec3 {
        let mut o = [0; 3];
        for i in 0..3 {
            o[i] = self.sign[i] as i32 * v[self.perm[i] as usize];
        }
        o
    }

    pub fn apply_dir(&self, d: Dir) -> Dir {
        Dir::from_vec(self.apply(d.vec())).expect("rotation maps units to units")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolycubeError {
    #[error("polycube has no cubes")]
    Empty,
    #[error("duplicate cube {0:?}")]
    Duplicate(Vec3),
    #[error("polycube is not face-connected: {0:?} and {1:?}")]
    Disconnected(Vec3, Vec3),
}

/// A face-connected set of unit cubes, addressed by minimal corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polycube {
    cubes: Vec<Vec3>,
}

const NEIGHBOURS: [Vec3; 6] = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];

impl Polycube {
    pub fn new(cubes: impl IntoIterator<Item = Vec3>) -> Result<Polycube, PolycubeError> {
        let mut cubes: Vec<Vec3> = cubes.into_iter().collect();
        if cubes.is_empty() {
            return Err(PolycubeError::Empty);
        }
        cubes.sort_unstable();
        if let Some(w) = cubes.windows(2).find(|w| w[0] == w[1]) {
            return Err(PolycubeError::Duplicate(w[0]));
        }
        let set: BTreeSet<Vec3> = cubes.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![cubes[0]];
        seen.insert(cubes[0]);
        while let Some(c) = stack.pop() {
            for d in NEIGHBOURS {
                let n = add(c, d);
                if set.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        if let Some(c) = cubes.iter().find(|c| !seen.contains(*c)) {
            return Err(PolycubeError::Disconnected(cubes[0], *c));
        }
        Ok(Polycube { cubes })
    }

    pub fn unit_cube() -> Polycube {
        Polycube { cubes: alloc::vec![[0, 0, 0]] }
    }

    /// An axis-aligned box of `a × b × c` cubes.
    pub fn cuboid(a: i32, b: i32, c: i32) -> Polycube {
        let mut v = Vec::new();
        for x in 0..a {
            for y in 0..b {
                for z in 0..c {
                    v.push([x, y, z]);
                }
            }
        }
        Polycube::new(v).expect("non-empty box")
    }

    pub fn cubes(&self) -> &[Vec3] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, c: Vec3) -> bool {
        self.cubes.binary_search(&c).is_ok()
    }

    pub fn is_unit_cube(&self) -> bool {
        self.cubes.len() == 1
    }

    /// Cubes on either side of a grid face.
    fn sides(face: &GridFace) -> (Vec3, Vec3) {
        let mut below = face.anchor;
        below[face.axis.index()] -= 1;
        (below, face.anchor)
    }

    pub fn classify(&self, face: &GridFace) -> Option<FaceKind> {
        let (a, b) = Polycube::sides(face);
        match (self.contains(a), self.contains(b)) {
            (true, true) => Some(FaceKind::Interior),
            (true, false) | (false, true) => Some(FaceKind::Boundary),
            (false, false) => None,
        }
    }

    /// Boundary faces, sorted.
    pub fn surface(&self) -> Vec<GridFace> {
        let mut out = Vec::new();
        for c in &self.cubes {
            for axis in Axis::ALL {
                for hi in [false, true] {
                    let mut anchor = *c;
                    let mut other = *c;
                    if hi {
                        anchor[axis.index()] += 1;
                        other[axis.index()] += 1;
                    } else {
                        other[axis.index()] -= 1;
                    }
                    if !self.contains(other) {
                        out.push(GridFace { anchor, axis });
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Grid faces with cubes of `self` on both sides, sorted.
    pub fn interior_faces(&self) -> Vec<GridFace> {
        let mut out = Vec::new();
        for c in &self.cubes {
            for axis in Axis::ALL {
                let mut other = *c;
                other[axis.index()] += 1;
                if self.contains(other) {
                    out.push(GridFace { anchor: other, axis });
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True when some unit grid edge touches four or more boundary faces.
    pub fn has_four_square_edge(&self) -> bool {
        self.edge_incidence().values().any(|&k| k >= 4)
    }

    /// Number of boundary faces on each unit edge, keyed by the edge midpoint
    /// in doubled coordinates.
    pub fn edge_incidence(&self) -> BTreeMap<Vec3, usize> {
        let mut count: BTreeMap<Vec3, usize> = BTreeMap::new();
        for f in self.surface() {
            let c = f.center();
            let (a, b) = f.plane_axes();
            for ax in [a, b] {
                for s in [-1, 1] {
                    let mut m = c;
                    m[ax.index()] += s;
                    *count.entry(m).or_default() += 1;
                }
            }
        }
        count
    }

    fn doubled_centres(&self) -> Vec<Vec3> {
        self.cubes.iter().map(|c| [2 * c[0] + 1, 2 * c[1] + 1, 2 * c[2] + 1]).collect()
    }

    /// Rotations of space that map the cube set onto itself up to
    /// translation, paired with the doubled-coordinate translation.
    pub fn symmetries(&self) -> Vec<(Rotation, Vec3)> {
        let base = self.doubled_centres();
        let min_of = |v: &[Vec3]| -> Vec3 {
            let mut m = [i32::MAX; 3];
            for p in v {
                for i in 0..3 {
                    m[i] = m[i].min(p[i]);
                }
            }
            m
        };
        let bmin = min_of(&base);
        let mut sorted_base = base.clone();
        sorted_base.sort_unstable();
        let mut out = Vec::new();
        for r in Rotation::all() {
            let img: Vec<Vec3> = base.iter().map(|p| r.apply(*p)).collect();
            let imin = min_of(&img);
            let t = [bmin[0] - imin[0], bmin[1] - imin[1], bmin[2] - imin[2]];
            let mut moved: Vec<Vec3> = img.iter().map(|p| add(*p, t)).collect();
            moved.sort_unstable();
            if moved == sorted_base {
                out.push((r, t));
            }
        }
        out
    }

    pub fn rotation_group(&self) -> Vec<Rotation> {
        self.symmetries().into_iter().map(|(r, _)| r).collect()
    }

    /// Image of a pose under a symmetry from [`Polycube::symmetries`].
    pub fn map_pose(sym: &(Rotation, Vec3), p: &Pose) -> Pose {
        let (r, t) = sym;
        Pose { center: add(r.apply(p.center), *t), u: r.apply_dir(p.u), v: r.apply_dir(p.v) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Step;

    fn top_pose() -> Pose {
        Pose::new(GridFace { anchor: [0, 0, 1], axis: Axis::Z }, Dir::PX, Dir::PY).unwrap()
    }

    #[test]
    fn surface_counts() {
        assert_eq!(Polycube::unit_cube().surface().len(), 6);
        assert_eq!(Polycube::cuboid(2, 1, 1).surface().len(), 10);
        let cross = Polycube::new([[1, 1, 0], [0, 1, 0], [2, 1, 0], [1, 0, 0], [1, 2, 0]]).unwrap();
        assert_eq!(cross.surface().len(), 22);
    }

    #[test]
    fn interior_counts() {
        assert!(Polycube::unit_cube().interior_faces().is_empty());
        assert_eq!(Polycube::cuboid(2, 1, 1).interior_faces().len(), 1);
    }

    #[test]
    fn mountain_fold_wraps_the_cube() {
        let p = propagate(top_pose(), Dir::PX, FoldAngle::Mountain90);
        assert_eq!(p.face(), GridFace { anchor: [1, 0, 0], axis: Axis::X });
        assert_eq!(p.normal(), Dir::PX);
        assert_eq!(Polycube::unit_cube().classify(&p.face()), Some(FaceKind::Boundary));
        let v = propagate(top_pose(), Dir::PX, FoldAngle::Valley90);
        assert_eq!(Polycube::unit_cube().classify(&v.face()), None);
    }

    #[test]
    fn fold_back_stacks_on_the_same_face() {
        for a in [FoldAngle::Mountain180, FoldAngle::Valley180] {
            let p = propagate(top_pose(), Dir::PY, a);
            assert_eq!(p.face(), top_pose().face());
            assert_eq!(p.v, Dir::NY);
            assert_eq!(p.normal(), Dir::NZ);
        }
    }

    #[test]
    fn flat_continuation_on_a_long_face() {
        let q = Polycube::cuboid(2, 1, 1);
        let p = Pose::new(GridFace { anchor: [0, 0, 1], axis: Axis::Z }, Dir::PX, Dir::PY).unwrap();
        let n = propagate(p, Dir::PX, FoldAngle::Flat);
        assert_eq!(n.face(), GridFace { anchor: [1, 0, 1], axis: Axis::Z });
        assert_eq!(q.classify(&n.face()), Some(FaceKind::Boundary));
    }

    #[test]
    fn propagate_returns_across_the_same_edge() {
        let cube_faces = Polycube::cuboid(2, 2, 2).surface();
        for f in cube_faces {
            for p in Pose::frames(f) {
                for s in Step::ALL {
                    for a in FoldAngle::ALL {
                        let d = p.dir_of(s);
                        let q = propagate(p, d, a);
                        let back = propagate(q, q.dir_of(s.opposite()), a);
                        assert_eq!(back, p, "{p:?} {s:?} {a:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn flat_loop_around_a_vertex() {
        let mut p = top_pose();
        for s in [Step::East, Step::North, Step::West, Step::South] {
            p = propagate(p, p.dir_of(s), FoldAngle::Flat);
        }
        assert_eq!(p, top_pose());
    }

    #[test]
    fn four_square_edges() {
        assert!(!Polycube::unit_cube().has_four_square_edge());
        assert!(Polycube::new([[0, 0, 0], [1, 1, 0], [1, 0, 0]]).is_ok());
        let diag = Polycube { cubes: alloc::vec![[0, 0, 0], [1, 1, 0]] };
        assert!(diag.has_four_square_edge());
        assert!(Polycube::new([[0, 0, 0], [1, 1, 0]]).is_err());
    }

    #[test]
    fn rotation_groups() {
        assert_eq!(Rotation::all().len(), 24);
        assert_eq!(Polycube::unit_cube().rotation_group().len(), 24);
        assert_eq!(Polycube::cuboid(2, 1, 1).rotation_group().len(), 8);
    }
}
