//! Polyiamonds on the triangular lattice and folding tree-polyiamonds onto
//! a regular tetrahedron.
//!
//! Triangle `(j, r)` sits in row `r` (rows grow downwards) at column `j` and
//! points up when `j + r` is even. Lattice vertices are `(X, L)` pairs with
//! `X + L` even; an up triangle has apex `(j, r)` and base `(j ± 1, r + 1)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tri {
    pub r: i32,
    pub j: i32,
}

type Vertex = (i32, i32);

impl Tri {
    pub fn new(j: i32, r: i32) -> Tri {
        Tri { r, j }
    }

    pub fn is_up(self) -> bool {
        (self.j + self.r).rem_euclid(2) == 0
    }

    pub fn neighbours(self) -> [Tri; 3] {
        let v = if self.is_up() { self.r + 1 } else { self.r - 1 };
        [Tri::new(self.j - 1, self.r), Tri::new(self.j + 1, self.r), Tri::new(self.j, v)]
    }

    pub fn vertices(self) -> [Vertex; 3] {
        let (j, r) = (self.j, self.r);
        if self.is_up() {
            [(j, r), (j - 1, r + 1), (j + 1, r + 1)]
        } else {
            [(j, r + 1), (j - 1, r), (j + 1, r)]
        }
    }

    fn from_vertices(vs: [Vertex; 3]) -> Tri {
        let lo = vs.iter().map(|v| v.1).min().expect("three");
        let at_lo = vs.iter().filter(|v| v.1 == lo).count();
        if at_lo == 1 {
            let apex = vs.iter().find(|v| v.1 == lo).expect("apex");
            Tri::new(apex.0, lo)
        } else {
            let apex = vs.iter().find(|v| v.1 != lo).expect("apex");
            Tri::new(apex.0, apex.1 - 1)
        }
    }

    fn shares_edge(self, o: Tri) -> bool {
        self.neighbours().contains(&o)
    }
}

/// One of the 12 lattice symmetries: a reflection followed by `rot`
/// sixth-turns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Sym {
    reflect: bool,
    rot: u8,
}

impl Sym {
    fn all() -> impl Iterator<Item = Sym> {
        (0..12).map(|i| Sym { reflect: i >= 6, rot: (i % 6) as u8 })
    }

    fn vertex(self, (x, l): Vertex) -> Vertex {
        let (mut a, mut b) = ((x - l) / 2, l);
        if self.reflect {
            (a, b) = (a + b, -b);
        }
        for _ in 0..self.rot {
            (a, b) = (-b, a + b);
        }
        (2 * a + b, b)
    }

    fn tri(self, t: Tri) -> Tri {
        Tri::from_vertices(t.vertices().map(|v| self.vertex(v)))
    }
}

/// Parity-preserving shift that puts the shape at the origin.
fn normalizer(tris: &[Tri]) -> impl Fn(Tri) -> Tri {
    let dr = -tris.iter().map(|t| t.r).min().unwrap_or(0);
    let mut dj = -tris.iter().map(|t| t.j).min().unwrap_or(0);
    if (dj + dr).rem_euclid(2) == 1 {
        dj += 1;
    }
    move |t: Tri| Tri::new(t.j + dj, t.r + dr)
}

type Structure = (Vec<Tri>, Vec<(Tri, Tri)>);

fn pair(a: Tri, b: Tri) -> (Tri, Tri) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn canonical(tris: &[Tri], edges: &[(Tri, Tri)]) -> Structure {
    let mut best: Option<Structure> = None;
    for s in Sym::all() {
        let moved: Vec<Tri> = tris.iter().map(|t| s.tri(*t)).collect();
        let norm = normalizer(&moved);
        let f = |t: Tri| norm(s.tri(t));
        let mut ts: Vec<Tri> = tris.iter().map(|t| f(*t)).collect();
        ts.sort_unstable();
        let mut es: Vec<(Tri, Tri)> = edges.iter().map(|(a, b)| pair(f(*a), f(*b))).collect();
        es.sort_unstable();
        let cand = (ts, es);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("twelve symmetries")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IamondError {
    #[error("polyiamond has no triangles")]
    Empty,
    #[error("triangles are not edge-connected")]
    Disconnected,
    #[error("unexpected character {ch:?} at line {line}, column {column}")]
    BadCharacter { ch: char, line: usize, column: usize },
    #[error("triangle at line {line}, column {column} points the wrong way for its row")]
    WrongOrientation { line: usize, column: usize },
    #[error("joined triangles do not share an edge")]
    BadEdge,
    #[error("joins do not form a spanning tree")]
    NotATree,
}

fn connected(tris: &[Tri], adjacent: impl Fn(Tri, Tri) -> bool) -> bool {
    let Some(&first) = tris.first() else { return false };
    let mut seen = BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some(t) = stack.pop() {
        for &o in tris {
            if !seen.contains(&o) && adjacent(t, o) {
                seen.insert(o);
                stack.push(o);
            }
        }
    }
    seen.len() == tris.len()
}

/// An edge-connected set of lattice triangles, stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyiamond {
    tris: Vec<Tri>,
}

impl Polyiamond {
    pub fn new(tris: impl IntoIterator<Item = Tri>) -> Result<Polyiamond, IamondError> {
        let set: BTreeSet<Tri> = tris.into_iter().collect();
        let tris: Vec<Tri> = set.into_iter().collect();
        if tris.is_empty() {
            return Err(IamondError::Empty);
        }
        if !connected(&tris, Tri::shares_edge) {
            return Err(IamondError::Disconnected);
        }
        Ok(Polyiamond { tris: canonical(&tris, &[]).0 })
    }

    /// Rows of `u`/`d`/`.`; the first triangle fixes which slots point up.
    pub fn parse(text: &str) -> Result<Polyiamond, IamondError> {
        let mut tris = Vec::new();
        let mut flip: Option<i32> = None;
        for (r, line) in text.lines().enumerate() {
            for (j, ch) in line.trim_end_matches('\r').chars().enumerate() {
                let up = match ch {
                    'u' => true,
                    'd' => false,
                    '.' | ' ' => continue,
                    _ => return Err(IamondError::BadCharacter { ch, line: r + 1, column: j + 1 }),
                };
                let (j, r) = (j as i32, r as i32);
                let parity_up = (j + r).rem_euclid(2) == 0;
                let f = *flip.get_or_insert(i32::from(parity_up != up));
                let t = Tri::new(j + f, r);
                if t.is_up() != up {
                    return Err(IamondError::WrongOrientation { line: r as usize + 1, column: j as usize + 1 });
                }
                tris.push(t);
            }
        }
        Polyiamond::new(tris)
    }

    pub fn tris(&self) -> &[Tri] {
        &self.tris
    }

    pub fn len(&self) -> usize {
        self.tris.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tris.is_empty()
    }

    pub fn adjacencies(&self) -> Vec<(Tri, Tri)> {
        let set: BTreeSet<Tri> = self.tris.iter().copied().collect();
        let mut out: Vec<(Tri, Tri)> = Vec::new();
        for t in &self.tris {
            for n in t.neighbours() {
                if *t < n && set.contains(&n) {
                    out.push((*t, n));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All spanning trees of the adjacency graph, one per symmetry class.
    pub fn canonical_trees(&self) -> Vec<IamondTree> {
        let adj = self.adjacencies();
        let need = self.len() - 1;
        let mut found: BTreeSet<Structure> = BTreeSet::new();
        let mut pick: Vec<(Tri, Tri)> = Vec::with_capacity(need);
        choose(&adj, 0, need, &mut pick, &mut |es| {
            if connected(&self.tris, |a, b| es.contains(&pair(a, b))) {
                found.insert(canonical(&self.tris, es));
            }
        });
        found.into_iter().map(|(tris, edges)| IamondTree { tris, edges }).collect()
    }

    pub fn render(&self) -> String {
        render(&self.tris)
    }
}

fn choose(items: &[(Tri, Tri)], from: usize, k: usize, pick: &mut Vec<(Tri, Tri)>, f: &mut impl FnMut(&[(Tri, Tri)])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < k - pick.len() {
            break;
        }
        pick.push(items[i]);
        choose(items, i + 1, k, pick, f);
        pick.pop();
    }
}

fn render(tris: &[Tri]) -> String {
    let set: BTreeSet<Tri> = tris.iter().copied().collect();
    let (r0, r1) = (tris.iter().map(|t| t.r).min().unwrap_or(0), tris.iter().map(|t| t.r).max().unwrap_or(-1));
    let (j0, j1) = (tris.iter().map(|t| t.j).min().unwrap_or(0), tris.iter().map(|t| t.j).max().unwrap_or(-1));
    let mut s = String::new();
    for r in r0..=r1 {
        for j in j0..=j1 {
            let t = Tri::new(j, r);
            s.push(match (set.contains(&t), t.is_up()) {
                (false, _) => '.',
                (true, true) => 'u',
                (true, false) => 'd',
            });
        }
        s.push('\n');
    }
    s
}

/// True when the adjacency graph of `p` has no cycle.
pub fn iamond_tree(p: &Polyiamond) -> bool {
    p.adjacencies().len() + 1 == p.len()
}

/// A polyiamond with a spanning tree of joined edges; other adjacencies
/// are cut.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IamondTree {
    tris: Vec<Tri>,
    edges: Vec<(Tri, Tri)>,
}

impl IamondTree {
    pub fn new(tris: impl IntoIterator<Item = Tri>, edges: impl IntoIterator<Item = (Tri, Tri)>) -> Result<IamondTree, IamondError> {
        let tris: Vec<Tri> = tris.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if tris.is_empty() {
            return Err(IamondError::Empty);
        }
        let set: BTreeSet<Tri> = tris.iter().copied().collect();
        let mut es: Vec<(Tri, Tri)> = Vec::new();
        for (a, b) in edges {
            if !a.shares_edge(b) || !set.contains(&a) || !set.contains(&b) {
                return Err(IamondError::BadEdge);
            }
            es.push(pair(a, b));
        }
        es.sort_unstable();
        es.dedup();
        if es.len() + 1 != tris.len() || !connected(&tris, |a, b| es.contains(&pair(a, b))) {
            return Err(IamondError::NotATree);
        }
        let (tris, edges) = canonical(&tris, &es);
        Ok(IamondTree { tris, edges })
    }

    /// The tree of a tree-polyiamond.
    pub fn of_tree(p: &Polyiamond) -> Result<IamondTree, IamondError> {
        if !iamond_tree(p) {
            return Err(IamondError::NotATree);
        }
        Ok(IamondTree { tris: p.tris.clone(), edges: p.adjacencies() })
    }

    pub fn tris(&self) -> &[Tri] {
        &self.tris
    }

    pub fn edges(&self) -> &[(Tri, Tri)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.tris.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tris.is_empty()
    }

    fn neighbours(&self) -> BTreeMap<Tri, Vec<Tri>> {
        let mut m: BTreeMap<Tri, Vec<Tri>> = self.tris.iter().map(|t| (*t, Vec::new())).collect();
        for (a, b) in &self.edges {
            m.get_mut(a).expect("member").push(*b);
            m.get_mut(b).expect("member").push(*a);
        }
        m
    }

    pub fn render(&self) -> String {
        render(&self.tris)
    }
}

/// Free polyiamonds of size `n`, grown one triangle at a time.
pub fn enumerate_polyiamonds(n: usize) -> Vec<Polyiamond> {
    assert!(n >= 1, "size must be positive");
    let mut level: Vec<Vec<Tri>> = vec![vec![Tri::new(0, 0)]];
    for _ in 1..n {
        let mut next: HashSet<Vec<Tri>> = HashSet::new();
        for tris in &level {
            let set: BTreeSet<Tri> = tris.iter().copied().collect();
            for t in tris {
                for nb in t.neighbours() {
                    if !set.contains(&nb) {
                        let mut g = tris.clone();
                        g.push(nb);
                        next.insert(canonical(&g, &[]).0);
                    }
                }
            }
        }
        level = next.into_iter().collect();
    }
    level.sort_unstable();
    level.into_iter().map(|tris| Polyiamond { tris }).collect()
}

/// Every cut structure of every polyiamond with at most `max_n` triangles.
pub fn tree_corpus(max_n: usize) -> Vec<IamondTree> {
    (1..=max_n).flat_map(|n| enumerate_polyiamonds(n).into_iter().flat_map(|p| p.canonical_trees())).collect()
}

/// The six triangles around the vertex `(0, 0)`, in cyclic order.
const FAN: [(i32, i32); 6] = [(0, 0), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0)];

/// `k` consecutive triangles around one vertex, joined in a path.
pub fn fan(k: usize) -> IamondTree {
    assert!((1..=6).contains(&k), "a fan has one to six triangles");
    let tris: Vec<Tri> = FAN[..k].iter().map(|&(j, r)| Tri::new(j, r)).collect();
    let edges: Vec<(Tri, Tri)> = tris.windows(2).map(|w| (w[0], w[1])).collect();
    IamondTree::new(tris, edges).expect("path")
}

/// The trees that do not fold: fans of one to six triangles.
pub fn exceptions() -> Vec<IamondTree> {
    (1..=6).map(fan).collect()
}

pub fn is_exception(t: &IamondTree) -> bool {
    t.len() <= 6 && *t == fan(t.len())
}

/// True when the tree contains a tetrahedron net: a triangle joined to
/// three others, or a path of four without a vertex common to all.
pub fn folds_to_tetrahedron(t: &IamondTree) -> bool {
    let nb = t.neighbours();
    if nb.values().any(|v| v.len() >= 3) {
        return true;
    }
    for &(b, c) in &t.edges {
        for &a in nb[&b].iter().filter(|&&a| a != c) {
            for &d in nb[&c].iter().filter(|&&d| d != b) {
                let common = a.vertices().into_iter().filter(|v| [b, c, d].iter().all(|x| x.vertices().contains(v))).count();
                if common == 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// The tetrahedron on vertices `0..4`; face `f` is the one opposite vertex
/// `f`, and every face borders the other three.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TetraSurface;

/// Where a lattice triangle lies: the tetrahedron vertex each of its
/// corners (in [`Tri::vertices`] order) maps to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TetraPlacement {
    pub corners: [u8; 3],
}

impl TetraPlacement {
    pub fn face(&self) -> u8 {
        6 - self.corners.iter().sum::<u8>()
    }
}

impl TetraSurface {
    pub const FACES: [u8; 4] = [0, 1, 2, 3];

    pub fn adjacent(&self, f: u8, g: u8) -> bool {
        f != g && f < 4 && g < 4
    }

    /// Placement of `to`, joined to `from` along their shared edge: rolled
    /// onto the next face, or folded back onto the same one.
    pub fn step(&self, from: Tri, at: TetraPlacement, to: Tri, fold_back: bool) -> TetraPlacement {
        let fv = from.vertices();
        let image = |v: Vertex| fv.iter().position(|w| *w == v).map(|i| at.corners[i]);
        let opposite = fv.iter().position(|v| !to.vertices().contains(v)).expect("shared edge");
        let third = if fold_back { at.corners[opposite] } else { at.face() };
        TetraPlacement { corners: to.vertices().map(|v| image(v).unwrap_or(third)) }
    }
}

/// One triangle of a folding trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TetraStep {
    pub tri: Tri,
    pub face: u8,
    /// Folded back onto its parent's face instead of rolling over.
    pub fold_back: bool,
}

/// Tries every roll/fold-back choice per joined edge; returns the first
/// assignment that covers all four faces.
pub fn brute_fold_tetra(t: &IamondTree) -> Option<Vec<TetraStep>> {
    let nb = t.neighbours();
    let root = t.tris[0];
    let mut order = vec![(root, root)];
    let mut seen = BTreeSet::from([root]);
    let mut i = 0;
    while i < order.len() {
        let cur = order[i].0;
        for &n in &nb[&cur] {
            if seen.insert(n) {
                order.push((n, cur));
            }
        }
        i += 1;
    }
    let surface = TetraSurface;
    let mut placed: BTreeMap<Tri, TetraPlacement> = BTreeMap::new();
    placed.insert(root, TetraPlacement { corners: [0, 1, 2] });
    let mut trace = vec![TetraStep { tri: root, face: 3, fold_back: false }];
    fn go(
        k: usize,
        order: &[(Tri, Tri)],
        surface: &TetraSurface,
        placed: &mut BTreeMap<Tri, TetraPlacement>,
        trace: &mut Vec<TetraStep>,
        mask: u8,
    ) -> bool {
        if k == order.len() {
            return mask == 0b1111;
        }
        let (tri, parent) = order[k];
        for fold_back in [false, true] {
            let p = surface.step(parent, placed[&parent], tri, fold_back);
            placed.insert(tri, p);
            trace.push(TetraStep { tri, face: p.face(), fold_back });
            if go(k + 1, order, surface, placed, trace, mask | 1 << p.face()) {
                return true;
            }
            trace.pop();
        }
        false
    }
    go(1, &order, &surface, &mut placed, &mut trace, 1 << 3).then_some(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_counts() {
        let got: Vec<usize> = (1..=8).map(|n| enumerate_polyiamonds(n).len()).collect();
        assert_eq!(got, [1, 1, 1, 3, 4, 12, 24, 66]);
    }

    #[test]
    fn parse_and_render() {
        let p = Polyiamond::parse("udu\nd..").unwrap();
        assert_eq!(p.len(), 4);
        assert!(iamond_tree(&p));
        assert_eq!(Polyiamond::parse(&p.render()).unwrap(), p);
        assert_eq!(Polyiamond::parse("u.u"), Err(IamondError::Disconnected));
        assert!(matches!(Polyiamond::parse("ud\nud"), Err(IamondError::WrongOrientation { .. })));
        assert_eq!(Polyiamond::parse("dud").unwrap().len(), 3);
    }

    #[test]
    fn hexagon_is_a_cycle() {
        let hex = Polyiamond::parse("udu\ndud").unwrap();
        assert!(!iamond_tree(&hex));
        assert_eq!(hex.canonical_trees().len(), 1);
        assert_eq!(hex.canonical_trees()[0], fan(6));
    }

    #[test]
    fn small_shapes_are_trees() {
        for n in 1..=5 {
            assert!(enumerate_polyiamonds(n).iter().all(iamond_tree));
        }
    }

    #[test]
    fn nets_fold() {
        let star = IamondTree::of_tree(&Polyiamond::parse(".u.\nudu").unwrap()).unwrap();
        assert!(folds_to_tetrahedron(&star));
        let path = IamondTree::of_tree(&Polyiamond::parse("udud").unwrap()).unwrap();
        assert!(folds_to_tetrahedron(&path));
        assert!(brute_fold_tetra(&path).is_some());
        assert!(!folds_to_tetrahedron(&fan(4)));
        assert!(brute_fold_tetra(&fan(4)).is_none());
    }

    #[test]
    fn placements_stay_on_faces() {
        let s = TetraSurface;
        let a = Tri::new(0, 0);
        let p = TetraPlacement { corners: [0, 1, 2] };
        for b in a.neighbours() {
            let rolled = s.step(a, p, b, false);
            let back = s.step(a, p, b, true);
            assert!(s.adjacent(p.face(), rolled.face()));
            assert_eq!(back.face(), p.face());
        }
    }
}
