//! JSON and text file formats: polycubes, dual trees, sheets and solutions.

use std::fs;
use std::path::Path;

use polyfold::foldcore::FoldModel;
use polyfold::polycube::{Diagonal, Dir, FoldAngle, GridFace, Polycube, Pose};
use polyfold::{Cell, DualTree, Edge, Folding, Polyomino, Sheet, Split};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type Xy = [i32; 2];
pub type Seg = [Xy; 2];

fn xy(c: Cell) -> Xy {
    [c.x, c.y]
}

fn cell(p: Xy) -> Cell {
    Cell::new(p[0], p[1])
}

fn seg(e: &Edge) -> Seg {
    [xy(e.a), xy(e.b)]
}

fn edge(s: Seg) -> Edge {
    Edge::new(cell(s[0]), cell(s[1]))
}

/// `{"cubes": [[x, y, z], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolycubeFile {
    pub cubes: Vec<[i32; 3]>,
}

impl PolycubeFile {
    pub fn of(q: &Polycube) -> PolycubeFile {
        PolycubeFile { cubes: q.cubes().to_vec() }
    }

    pub fn build(&self) -> Result<Polycube, polyfold::PolycubeError> {
        Polycube::new(self.cubes.iter().copied())
    }
}

/// `{"cells": [[x, y], ...], "tree_edges": [[[x, y], [x, y]], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFile {
    pub cells: Vec<Xy>,
    pub tree_edges: Vec<Seg>,
}

impl TreeFile {
    pub fn of(t: &DualTree) -> TreeFile {
        TreeFile { cells: t.cells().iter().map(|c| xy(*c)).collect(), tree_edges: t.edges().iter().map(seg).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameRecord {
    /// Face centre in doubled coordinates.
    pub center: [i32; 3],
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleRecord {
    pub edge: Seg,
    pub angle: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub cell: Xy,
    pub diagonal: String,
    pub angle: i32,
}

/// A folding with everything needed to replay it. Field order is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub model: String,
    pub target: PolycubeFile,
    pub cells: Vec<Xy>,
    pub joins: Vec<Seg>,
    pub root_cell: Xy,
    pub root_frame: FrameRecord,
    pub angles: Vec<AngleRecord>,
    pub splits: Vec<SplitRecord>,
}

impl SolutionFile {
    pub fn of(f: &Folding, m: &FoldModel) -> SolutionFile {
        SolutionFile {
            model: m.to_string(),
            target: PolycubeFile::of(&f.target),
            cells: f.sheet.cells().iter().map(|c| xy(*c)).collect(),
            joins: f.sheet.joins().iter().map(seg).collect(),
            root_cell: xy(f.root_cell),
            root_frame: FrameRecord {
                center: f.root_pose.center,
                u: f.root_pose.u.name().to_string(),
                v: f.root_pose.v.name().to_string(),
            },
            angles: f.angles.iter().map(|(e, a)| AngleRecord { edge: seg(e), angle: a.degrees() }).collect(),
            splits: f
                .splits
                .iter()
                .map(|s| SplitRecord { cell: xy(s.cell), diagonal: s.diagonal.name().to_string(), angle: s.angle.degrees() })
                .collect(),
        }
    }

    pub fn model(&self) -> Result<FoldModel, CliError> {
        Ok(FoldModel::parse(&self.model)?)
    }

    /// Rebuilds the folding. Cells must already be in canonical placement,
    /// which is how every written solution stores them.
    pub fn folding(&self) -> Result<Folding, CliError> {
        let bad = |what: String| CliError::Solution(what);
        let sheet = Sheet::new(self.cells.iter().map(|p| cell(*p)), self.joins.iter().map(|s| edge(*s)))?;
        let mut given: Vec<Cell> = self.cells.iter().map(|p| cell(*p)).collect();
        given.sort_unstable();
        if given != sheet.cells() {
            return Err(bad("cells are not in canonical placement".into()));
        }
        let target = self.target.build()?;
        let dir = |s: &str| Dir::parse(s).ok_or_else(|| bad(format!("unknown direction `{s}`")));
        let angle = |d: i32| FoldAngle::from_degrees(d).ok_or_else(|| bad(format!("unsupported angle {d}")));
        let root_pose = Pose::new(GridFace::from_center(self.root_frame.center), dir(&self.root_frame.u)?, dir(&self.root_frame.v)?)
            .ok_or_else(|| bad("root frame does not lie in its face".into()))?;
        let mut angles = Vec::with_capacity(self.angles.len());
        for r in &self.angles {
            angles.push((edge(r.edge), angle(r.angle)?));
        }
        angles.sort_unstable();
        let mut splits = Vec::with_capacity(self.splits.len());
        for s in &self.splits {
            let diagonal = Diagonal::parse(&s.diagonal).ok_or_else(|| bad(format!("unknown diagonal `{}`", s.diagonal)))?;
            splits.push(Split { cell: cell(s.cell), diagonal, angle: angle(s.angle)? });
        }
        splits.sort_unstable();
        Ok(Folding { sheet, target, root_cell: cell(self.root_cell), root_pose, angles, splits })
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    }
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

/// A sheet from a file: a JSON dual tree, or a `#`/`.` grid with every
/// adjacency joined.
pub fn load_sheet(path: &Path) -> Result<Sheet, CliError> {
    let text = read(path)?;
    let at = |e| CliError::Shape { path: path.to_path_buf(), source: e };
    if text.trim_start().starts_with('{') {
        let f: TreeFile = serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })?;
        let t = DualTree::new(f.cells.iter().map(|p| cell(*p)), f.tree_edges.iter().map(|s| edge(*s))).map_err(at)?;
        return Ok(t.into_sheet());
    }
    Ok(Sheet::solid(Polyomino::parse(&text).map_err(at)?))
}

/// `cube`, `AxBxC` for a box, or a polycube JSON file.
pub fn load_target(name: &str) -> Result<Polycube, CliError> {
    if name == "cube" {
        return Ok(Polycube::unit_cube());
    }
    let dims: Vec<Option<i32>> = name.split('x').map(|d| d.parse().ok()).collect();
    if dims.len() == 3 && dims.iter().all(|d| matches!(d, Some(k) if *k > 0)) {
        let d: Vec<i32> = dims.into_iter().flatten().collect();
        return Ok(Polycube::cuboid(d[0], d[1], d[2]));
    }
    let f: PolycubeFile = read_json(Path::new(name))?;
    Ok(f.build()?)
}

/// Row-major `#`/`.` encoding on one line, rows joined by `/`.
pub fn shape_code(p: &Polyomino) -> String {
    p.render().trim_end().replace('\n', "/")
}

/// The cut edges of a sheet as `x,y-x,y` separated by `;`, or `-`.
pub fn cut_code(s: &Sheet) -> String {
    let cuts = s.cuts();
    if cuts.is_empty() {
        return "-".into();
    }
    cuts.iter().map(|e| format!("{},{}-{},{}", e.a.x, e.a.y, e.b.x, e.b.y)).collect::<Vec<_>>().join(";")
}
