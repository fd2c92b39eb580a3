//! Linear-time dynamic program deciding whether a tree shape folds onto a
//! small polycube with flat and `±90` folds, without interior faces.
//!
//! For every square and every placement of that square on the surface, the
//! program keeps the maximal sets of faces its subtree can cover.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::foldcore::{FoldModel, Folding};
use crate::lattice::{DualTree, Edge, Step};
use crate::polycube::{propagate, FoldAngle, Polycube, Pose};

pub const DEFAULT_MAX_CUBES: usize = 8;

const ANGLES: [FoldAngle; 3] = [FoldAngle::Flat, FoldAngle::Mountain90, FoldAngle::Valley90];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("four or more surface squares meet at an edge of the target")]
    FourSquaresAtEdge,
    #[error("target has {0} cubes, above the cap of {1}")]
    TargetTooLarge(usize, usize),
}

/// The model the program decides: `{±90; grid}` with flat edges.
pub const DP_MODEL: FoldModel = FoldModel::GRID90;

/// Placement tables for one target.
#[derive(Clone, Debug)]
pub struct DpTarget {
    target: Polycube,
    poses: Vec<Pose>,
    face_of: Vec<usize>,
    /// `step[p][s][a]`: pose reached from `p` across step `s` with angle `a`.
    step: Vec<[[Option<u32>; 3]; 4]>,
    full: u64,
}

impl DpTarget {
    pub fn new(q: &Polycube, max_cubes: usize) -> Result<DpTarget, DpError> {
        if q.len() > max_cubes {
            return Err(DpError::TargetTooLarge(q.len(), max_cubes));
        }
        if q.has_four_square_edge() {
            return Err(DpError::FourSquaresAtEdge);
        }
        let surface = q.surface();
        assert!(surface.len() <= 64, "cube cap keeps the surface within 64 faces");
        let mut placed: Vec<(Pose, usize)> = Vec::with_capacity(surface.len() * 8);
        for (i, f) in surface.iter().enumerate() {
            placed.extend(Pose::frames(*f).into_iter().map(|p| (p, i)));
        }
        placed.sort_unstable();
        let poses: Vec<Pose> = placed.iter().map(|x| x.0).collect();
        let face_of: Vec<usize> = placed.iter().map(|x| x.1).collect();
        let mut step = vec![[[None; 3]; 4]; poses.len()];
        for (pi, p) in poses.iter().enumerate() {
            for s in Step::ALL {
                for (ai, a) in ANGLES.into_iter().enumerate() {
                    let r = propagate(*p, p.dir_of(s), a);
                    step[pi][s.index()][ai] = poses.binary_search(&r).ok().map(|x| x as u32);
                }
            }
        }
        let full = if surface.len() == 64 { u64::MAX } else { (1u64 << surface.len()) - 1 };
        Ok(DpTarget { target: q.clone(), poses, face_of, step, full })
    }

    pub fn pose_count(&self) -> usize {
        self.poses.len()
    }
}

/// Keeps only the inclusion-maximal sets.
fn maximal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|m| core::cmp::Reverse(m.count_ones()));
    sets.dedup();
    let mut out: Vec<u64> = Vec::with_capacity(sets.len());
    for m in sets {
        if !out.iter().any(|&o| o & m == m) {
            out.push(m);
        }
    }
    out
}

fn join(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut v = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            v.push(x | y);
        }
    }
    maximal(v)
}

/// Outcome of the program.
#[derive(Clone, Debug)]
pub struct DpOutcome {
    pub foldable: bool,
    /// Number of (square, placement, child) combine steps performed.
    pub visits: u64,
    pub witness: Option<Folding>,
}

struct Tables {
    order: Vec<usize>,
    parent: Vec<(usize, Step)>,
    children: Vec<Vec<(Step, usize)>>,
    sets: Vec<Vec<Vec<u64>>>,
}

fn child_options(tg: &DpTarget, sets: &[Vec<Vec<u64>>], p: usize, s: Step, c: usize) -> Vec<(usize, u64)> {
    let mut v = Vec::new();
    for ai in 0..ANGLES.len() {
        if let Some(cp) = tg.step[p][s.index()][ai] {
            for &m in &sets[c][cp as usize] {
                v.push((ai, m));
            }
        }
    }
    v
}

fn run_tables(t: &DualTree, tg: &DpTarget, visits: &mut u64) -> Tables {
    let n = t.len();
    let nb = t.neighbours();
    let mut order = vec![0usize];
    let mut parent = vec![(usize::MAX, Step::South); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut children = vec![Vec::new(); n];
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for &(s, j) in &nb[i] {
            if !seen[j] {
                seen[j] = true;
                parent[j] = (i, s);
                children[i].push((s, j));
                order.push(j);
            }
        }
    }
    let np = tg.poses.len();
    let mut sets: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut here = Vec::with_capacity(np);
        for p in 0..np {
            let mut cur = vec![1u64 << tg.face_of[p]];
            for &(s, c) in &children[v] {
                *visits += 1;
                if cur.is_empty() {
                    break;
                }
                let opts: Vec<u64> = child_options(tg, &sets, p, s, c).into_iter().map(|(_, m)| m).collect();
                cur = join(&cur, &maximal(opts));
            }
            here.push(cur);
        }
        sets[v] = here;
    }
    Tables { order, parent, children, sets }
}

/// Decides foldability and, when foldable, reconstructs a witness.
pub fn dp_foldable(t: &DualTree, q: &Polycube) -> Result<DpOutcome, DpError> {
    dp_foldable_with(t, &DpTarget::new(q, DEFAULT_MAX_CUBES)?, true)
}

pub fn dp_foldable_with(t: &DualTree, tg: &DpTarget, want_witness: bool) -> Result<DpOutcome, DpError> {
    let mut visits = 0;
    let tables = run_tables(t, tg, &mut visits);
    let root = (0..tg.poses.len()).find(|&p| tables.sets[0][p].contains(&tg.full));
    let witness = match root {
        Some(p) if want_witness => Some(reconstruct(t, tg, &tables, p)),
        _ => None,
    };
    Ok(DpOutcome { foldable: root.is_some(), visits, witness })
}

fn reconstruct(t: &DualTree, tg: &DpTarget, tb: &Tables, root_pose: usize) -> Folding {
    let cells = t.cells();
    let n = cells.len();
    let mut pose = vec![usize::MAX; n];
    let mut need = vec![0u64; n];
    let mut angle = vec![FoldAngle::Flat; n];
    pose[0] = root_pose;
    need[0] = tg.full;
    for &v in &tb.order {
        let p = pose[v];
        let kids = &tb.children[v];
        // prefix tables for this square at its chosen placement
        let mut prefix: Vec<Vec<u64>> = vec![vec![1u64 << tg.face_of[p]]];
        let mut options: Vec<Vec<(usize, u64)>> = Vec::with_capacity(kids.len());
        for &(s, c) in kids {
            let o = child_options(tg, &tb.sets, p, s, c);
            let ms: Vec<u64> = o.iter().map(|x| x.1).collect();
            let next = join(prefix.last().expect("prefix"), &maximal(ms));
            prefix.push(next);
            options.push(o);
        }
        let mut m = need[v];
        for k in (0..kids.len()).rev() {
            let (s, c) = kids[k];
            let (a, cm) = prefix[k]
                .iter()
                .find_map(|&a| options[k].iter().find(|(_, b)| (a | *b) & m == m).map(|&(ai, b)| (a, (ai, b))))
                .expect("stored set is reachable");
            let (ai, b) = cm;
            let cp = tg.step[p][s.index()][ai].expect("option has a pose") as usize;
            pose[c] = cp;
            need[c] = b;
            angle[c] = ANGLES[ai];
            m = a;
        }
    }
    let mut angles: Vec<(Edge, FoldAngle)> =
        tb.order[1..].iter().map(|&i| (Edge::new(cells[i], cells[tb.parent[i].0]), angle[i])).collect();
    angles.sort_unstable();
    Folding {
        sheet: t.sheet().clone(),
        target: tg.target.clone(),
        root_cell: cells[0],
        root_pose: tg.poses[root_pose],
        angles,
        splits: Vec::new(),
    }
}
