//! Square-lattice shapes: cells, polyominoes in canonical form, joined
//! sheets (a polyomino together with the adjacencies that are not cut) and
//! dual trees.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A unit square of the lattice, addressed by its minimal corner.
///
/// Cells order row-major: by `y`, then by `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub y: i32,
    pub x: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { y, x }
    }

    pub fn step(self, s: Step) -> Cell {
        let (dx, dy) = s.delta();
        Cell::new(self.x + dx, self.y + dy)
    }

    /// The step leading from `self` to an edge-adjacent `other`.
    pub fn step_to(self, other: Cell) -> Option<Step> {
        Step::ALL.into_iter().find(|s| self.step(*s) == other)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A unit move in the plane of the sheet. `North` is `+y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    East,
    North,
    West,
    South,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::East, Step::North, Step::West, Step::South];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Step::East => (1, 0),
            Step::North => (0, 1),
            Step::West => (-1, 0),
            Step::South => (0, -1),
        }
    }

    pub fn opposite(self) -> Step {
        match self {
            Step::East => Step::West,
            Step::North => Step::South,
            Step::West => Step::East,
            Step::South => Step::North,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// One of the eight symmetries of the square lattice (dihedral group D4),
/// stored as a signed coordinate permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    swap: bool,
    flip_x: bool,
    flip_y: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { swap: false, flip_x: false, flip_y: false };

    pub fn all() -> [Symmetry; 8] {
        let mut out = [Symmetry::IDENTITY; 8];
        for (i, s) in out.iter_mut().enumerate() {
            *s = Symmetry { swap: i & 4 != 0, flip_x: i & 2 != 0, flip_y: i & 1 != 0 };
        }
        out
    }

    pub fn apply(self, c: Cell) -> Cell {
        let (mut x, mut y) = if self.swap { (c.y, c.x) } else { (c.x, c.y) };
        if self.flip_x {
            x = -x;
        }
        if self.flip_y {
            y = -y;
        }
        Cell::new(x, y)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("shape has no cells")]
    Empty,
    #[error("shape is disconnected: {0} and {1} lie in different components")]
    Disconnected(Cell, Cell),
    #[error("duplicate cell {0}")]
    DuplicateCell(Cell),
    #[error("unexpected character {ch:?} at line {line}, column {column}")]
    BadCharacter { ch: char, line: usize, column: usize },
    #[error("edge {0}-{1} does not join two adjacent cells of the shape")]
    BadEdge(Cell, Cell),
    #[error("edges do not form a spanning tree: {0}")]
    NotATree(String),
}

/// An unordered pair of edge-adjacent cells, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: Cell,
    pub b: Cell,
}

impl Edge {
    pub fn new(p: Cell, q: Cell) -> Edge {
        if p <= q {
            Edge { a: p, b: q }
        } else {
            Edge { a: q, b: p }
        }
    }

    pub fn is_unit(&self) -> bool {
        (self.a.x - self.b.x).abs() + (self.a.y - self.b.y).abs() == 1
    }

    pub fn other(&self, c: Cell) -> Cell {
        if c == self.a {
            self.b
        } else {
            self.a
        }
    }

    fn map(self, f: impl Fn(Cell) -> Cell) -> Edge {
        Edge::new(f(self.a), f(self.b))
    }
}

/// Image of `cells` under `sym`, translated to touch both axes and sorted.
fn image(cells: &[Cell], sym: Symmetry) -> (Vec<Cell>, (i32, i32)) {
    let mut out: Vec<Cell> = cells.iter().map(|c| sym.apply(*c)).collect();
    let min_x = out.iter().map(|c| c.x).min().unwrap_or(0);
    let min_y = out.iter().map(|c| c.y).min().unwrap_or(0);
    for c in out.iter_mut() {
        c.x -= min_x;
        c.y -= min_y;
    }
    out.sort_unstable();
    (out, (-min_x, -min_y))
}

/// A placement map `cell -> sym(cell) + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement2 {
    pub sym: Symmetry,
    pub offset: (i32, i32),
}

impl Placement2 {
    pub fn apply(&self, c: Cell) -> Cell {
        let m = self.sym.apply(c);
        Cell::new(m.x + self.offset.0, m.y + self.offset.1)
    }
}

/// The transform taking `cells` to its canonical representative, and that representative.
pub fn canonical_transform(cells: &[Cell]) -> (Vec<Cell>, Placement2) {
    let mut best: Option<(Vec<Cell>, Placement2)> = None;
    for sym in Symmetry::all() {
        let (img, offset) = image(cells, sym);
        if best.as_ref().is_none_or(|(b, _)| img < *b) {
            best = Some((img, Placement2 { sym, offset }));
        }
    }
    best.expect("eight symmetries")
}

fn check_connected(cells: &[Cell]) -> Result<(), LatticeError> {
    let set: BTreeSet<Cell> = cells.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut stack = vec![cells[0]];
    seen.insert(cells[0]);
    while let Some(c) = stack.pop() {
        for s in Step::ALL {
            let n = c.step(s);
            if set.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    match cells.iter().find(|c| !seen.contains(c)) {
        Some(c) => Err(LatticeError::Disconnected(cells[0], *c)),
        None => Ok(()),
    }
}

/// A free polyomino, always held in canonical form: the row-major least of
/// its eight symmetry images after translation to the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyomino {
    cells: Vec<Cell>,
}

impl Polyomino {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Polyomino, LatticeError> {
        let cells = validated(cells)?;
        let (canon, _) = canonical_transform(&cells);
        Ok(Polyomino { cells: canon })
    }

    /// Builds from cells already known to be valid and canonical.
    pub(crate) fn from_canonical(cells: Vec<Cell>) -> Polyomino {
        debug_assert!(canonical_transform(&cells).0 == cells);
        Polyomino { cells }
    }

    pub fn parse(text: &str) -> Result<Polyomino, LatticeError> {
        Polyomino::new(parse_cells(text)?)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn index_of(&self, c: Cell) -> Option<usize> {
        self.cells.binary_search(&c).ok()
    }

    pub fn canonical_form(&self) -> Polyomino {
        self.clone()
    }

    pub fn width(&self) -> i32 {
        self.cells.iter().map(|c| c.x).max().unwrap_or(-1) + 1
    }

    pub fn height(&self) -> i32 {
        self.cells.iter().map(|c| c.y).max().unwrap_or(-1) + 1
    }

    /// All edge-adjacent cell pairs, sorted.
    pub fn adjacencies(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for c in &self.cells {
            for s in [Step::East, Step::North] {
                let n = c.step(s);
                if self.contains(n) {
                    out.push(Edge::new(*c, n));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True when the adjacency graph itself is a tree.
    pub fn is_tree_shape(&self) -> bool {
        self.adjacencies().len() + 1 == self.len()
    }

    /// Symmetries mapping the cell set onto itself.
    pub fn stabilizer(&self) -> Vec<Placement2> {
        Symmetry::all()
            .into_iter()
            .filter_map(|sym| {
                let (img, offset) = image(&self.cells, sym);
                (img == self.cells).then_some(Placement2 { sym, offset })
            })
            .collect()
    }

    /// Every spanning tree of the adjacency graph, ordered by edge list.
    pub fn spanning_trees(&self) -> Vec<DualTree> {
        let adj = self.adjacencies();
        let n = self.len();
        let idx = |c: Cell| self.index_of(c).expect("cell of shape");
        let pairs: Vec<(usize, usize)> = adj.iter().map(|e| (idx(e.a), idx(e.b))).collect();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut chosen = Vec::with_capacity(n.saturating_sub(1));
        let mut parent: Vec<usize> = (0..n).collect();
        spanning_rec(&pairs, 0, n, &mut parent, &mut chosen, &mut found);
        found.sort_unstable();
        found
            .into_iter()
            .map(|sel| {
                let edges = sel.iter().map(|&i| adj[i]).collect();
                DualTree(Sheet { shape: self.clone(), joins: edges })
            })
            .collect()
    }

    /// Spanning trees up to the symmetries that fix this polyomino.
    pub fn canonical_dual_trees(&self) -> Vec<DualTree> {
        if self.is_tree_shape() {
            return vec![DualTree(Sheet::solid(self.clone()))];
        }
        let stab = self.stabilizer();
        self.spanning_trees()
            .into_iter()
            .filter(|t| {
                stab.iter().all(|p| {
                    let mut img: Vec<Edge> = t.joins().iter().map(|e| e.map(|c| p.apply(c))).collect();
                    img.sort_unstable();
                    img.as_slice() >= t.joins()
                })
            })
            .collect()
    }

    pub fn render(&self) -> String {
        render_cells(&self.cells)
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn spanning_rec(
    pairs: &[(usize, usize)],
    next: usize,
    n: usize,
    parent: &mut Vec<usize>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() + 1 == n {
        out.push(chosen.clone());
        return;
    }
    if next == pairs.len() || pairs.len() - next < n - 1 - chosen.len() {
        return;
    }
    let (a, b) = pairs[next];
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        let saved = parent.clone();
        parent[ra] = rb;
        chosen.push(next);
        spanning_rec(pairs, next + 1, n, parent, chosen, out);
        chosen.pop();
        *parent = saved;
    }
    spanning_rec(pairs, next + 1, n, parent, chosen, out);
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn validated(cells: impl IntoIterator<Item = Cell>) -> Result<Vec<Cell>, LatticeError> {
    let mut v: Vec<Cell> = cells.into_iter().collect();
    if v.is_empty() {
        return Err(LatticeError::Empty);
    }
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(LatticeError::DuplicateCell(w[0]));
    }
    check_connected(&v)?;
    Ok(v)
}

/// Parses a `#`/`.` grid. Text row `r` becomes `y = r`, column `c` becomes `x = c`.
pub fn parse_cells(text: &str) -> Result<Vec<Cell>, LatticeError> {
    let mut cells = Vec::new();
    for (r, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '#' => cells.push(Cell::new(c as i32, r as i32)),
                '.' | ' ' => {}
                other => return Err(LatticeError::BadCharacter { ch: other, line: r + 1, column: c + 1 }),
            }
        }
    }
    if cells.is_empty() {
        return Err(LatticeError::Empty);
    }
    Ok(cells)
}

pub fn render_cells(cells: &[Cell]) -> String {
    let min_x = cells.iter().map(|c| c.x).min().unwrap_or(0);
    let min_y = cells.iter().map(|c| c.y).min().unwrap_or(0);
    let max_x = cells.iter().map(|c| c.x).max().unwrap_or(-1);
    let max_y = cells.iter().map(|c| c.y).max().unwrap_or(-1);
    let set: BTreeSet<Cell> = cells.iter().copied().collect();
    let mut s = String::new();
    for y in min_y..=max_y {
        for x in min_x..=max_x {
            s.push(if set.contains(&Cell::new(x, y)) { '#' } else { '.' });
        }
        s.push('\n');
    }
    s
}

/// A polyomino together with the adjacent pairs that stay joined; every
/// other adjacency is a cut. The joins must connect all cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sheet {
    shape: Polyomino,
    joins: Vec<Edge>,
}

impl Sheet {
    /// Builds a sheet from raw coordinates, moving everything to the
    /// canonical placement of the cell set.
    pub fn new(cells: impl IntoIterator<Item = Cell>, joins: impl IntoIterator<Item = Edge>) -> Result<Sheet, LatticeError> {
        let cells = validated(cells)?;
        let set: BTreeSet<Cell> = cells.iter().copied().collect();
        let mut raw: Vec<Edge> = Vec::new();
        for e in joins {
            if !e.is_unit() || !set.contains(&e.a) || !set.contains(&e.b) {
                return Err(LatticeError::BadEdge(e.a, e.b));
            }
            raw.push(e);
        }
        let (canon, place) = canonical_transform(&cells);
        let shape = Polyomino::from_canonical(canon);
        let mut joins: Vec<Edge> = raw.into_iter().map(|e| e.map(|c| place.apply(c))).collect();
        joins.sort_unstable();
        joins.dedup();
        let sheet = Sheet { shape, joins };
        if let Some((a, b)) = sheet.disconnected_pair() {
            return Err(LatticeError::Disconnected(a, b));
        }
        Ok(sheet)
    }

    /// Every adjacency joined: a polyomino without cuts.
    pub fn solid(shape: Polyomino) -> Sheet {
        let joins = shape.adjacencies();
        Sheet { shape, joins }
    }

    pub fn shape(&self) -> &Polyomino {
        &self.shape
    }

    pub fn cells(&self) -> &[Cell] {
        self.shape.cells()
    }

    pub fn joins(&self) -> &[Edge] {
        &self.joins
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shape.is_empty()
    }

    pub fn is_tree(&self) -> bool {
        self.joins.len() + 1 == self.len()
    }

    pub fn is_joined(&self, e: &Edge) -> bool {
        self.joins.binary_search(e).is_ok()
    }

    /// Adjacencies that are cut.
    pub fn cuts(&self) -> Vec<Edge> {
        self.shape.adjacencies().into_iter().filter(|e| !self.is_joined(e)).collect()
    }

    /// Neighbour lists by cell index, each entry `(step, neighbour index)` in step order.
    pub fn neighbours(&self) -> Vec<Vec<(Step, usize)>> {
        let mut out = vec![Vec::new(); self.len()];
        for e in &self.joins {
            let ia = self.shape.index_of(e.a).expect("join endpoint");
            let ib = self.shape.index_of(e.b).expect("join endpoint");
            let s = e.a.step_to(e.b).expect("unit edge");
            out[ia].push((s, ib));
            out[ib].push((s.opposite(), ia));
        }
        for v in out.iter_mut() {
            v.sort_unstable();
        }
        out
    }

    fn disconnected_pair(&self) -> Option<(Cell, Cell)> {
        let nb = self.neighbours();
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(_, j) in &nb[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().position(|s| !s).map(|j| (self.cells()[0], self.cells()[j]))
    }

    /// Applies `f` to the cells and joins and re-canonicalises.
    pub fn transformed(&self, f: impl Fn(Cell) -> Cell) -> Sheet {
        Sheet::new(self.cells().iter().map(|c| f(*c)), self.joins.iter().map(|e| e.map(&f))).expect("rigid motion preserves validity")
    }

    /// Cells grouped by `y` (for drawing and debugging).
    pub fn rows(&self) -> BTreeMap<i32, Vec<i32>> {
        let mut m: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
        for c in self.cells() {
            m.entry(c.y).or_default().push(c.x);
        }
        m
    }
}

/// A sheet whose joins form a spanning tree: a cut structure of a polyomino.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualTree(Sheet);

impl DualTree {
    pub fn new(cells: impl IntoIterator<Item = Cell>, edges: impl IntoIterator<Item = Edge>) -> Result<DualTree, LatticeError> {
        let sheet = Sheet::new(cells, edges)?;
        DualTree::from_sheet(sheet)
    }

    pub fn from_sheet(sheet: Sheet) -> Result<DualTree, LatticeError> {
        if !sheet.is_tree() {
            return Err(LatticeError::NotATree(alloc::format!("{} edges for {} cells", sheet.joins.len(), sheet.len())));
        }
        Ok(DualTree(sheet))
    }

    /// The only dual tree of a tree-shaped polyomino.
    pub fn of_tree_shape(p: Polyomino) -> Result<DualTree, LatticeError> {
        DualTree::from_sheet(Sheet::solid(p))
    }

    pub fn parse_tree_shape(text: &str) -> Result<DualTree, LatticeError> {
        DualTree::of_tree_shape(Polyomino::parse(text)?)
    }

    pub fn sheet(&self) -> &Sheet {
        &self.0
    }

    pub fn into_sheet(self) -> Sheet {
        self.0
    }

    pub fn edges(&self) -> &[Edge] {
        self.0.joins()
    }
}

impl core::ops::Deref for DualTree {
    type Target = Sheet;
    fn deref(&self) -> &Sheet {
        &self.0
    }
}

impl From<DualTree> for Sheet {
    fn from(t: DualTree) -> Sheet {
        t.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Polyomino {
        Polyomino::parse(text).unwrap()
    }

    #[test]
    fn parse_square_and_strip() {
        assert_eq!(p("##\n##").len(), 4);
        let strip = p("#\n#\n#\n#\n#\n#\n#");
        assert_eq!(strip.len(), 7);
        assert_eq!(strip, p("#######"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Polyomino::parse("...\n..."), Err(LatticeError::Empty));
        assert!(matches!(Polyomino::parse("#.#"), Err(LatticeError::Disconnected(..))));
        assert!(matches!(Polyomino::parse("#x"), Err(LatticeError::BadCharacter { ch: 'x', line: 1, column: 2 })));
    }

    #[test]
    fn canonical_under_rotation_and_reflection() {
        assert_eq!(p(".#.\n###"), p("#.\n##\n#."));
        assert_eq!(p("#.\n##"), p(".#\n##"));
        let dom = Polyomino::new([Cell::new(5, 5), Cell::new(5, 6)]).unwrap();
        assert_eq!(dom.cells(), &[Cell::new(0, 0), Cell::new(1, 0)]);
        let pent = p("##\n##\n#.");
        let cells: Vec<Cell> = pent.cells().to_vec();
        for sym in Symmetry::all() {
            let img = Polyomino::new(cells.iter().map(|c| sym.apply(*c))).unwrap();
            assert_eq!(img, pent);
        }
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(p("##\n##").spanning_trees().len(), 4);
        assert_eq!(p("#####").spanning_trees().len(), 1);
        assert_eq!(p("###\n###\n###").spanning_trees().len(), 192);
        assert_eq!(p("##").canonical_dual_trees().len(), 1);
    }

    #[test]
    fn sheet_rejects_disconnected_joins() {
        let cells = [Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0)];
        let r = Sheet::new(cells, [Edge::new(cells[0], cells[1])]);
        assert!(matches!(r, Err(LatticeError::Disconnected(..))));
        let r = DualTree::new(cells, [Edge::new(cells[0], cells[2])]);
        assert!(matches!(r, Err(LatticeError::BadEdge(..))));
    }

    #[test]
    fn dual_tree_is_moved_with_its_shape() {
        let cells = [Cell::new(3, 3), Cell::new(3, 4), Cell::new(4, 4), Cell::new(4, 3)];
        let t =
            DualTree::new(cells, [Edge::new(cells[0], cells[1]), Edge::new(cells[1], cells[2]), Edge::new(cells[2], cells[3])]).unwrap();
        assert_eq!(t.cells()[0], Cell::new(0, 0));
        assert_eq!(t.edges().len(), 3);
        assert_eq!(t.cuts().len(), 1);
    }
}
