use std::collections::BTreeSet;

use polyfold::enumerate::enumerate_free;
use polyfold::foldcore::{execute, verify};
use polyfold::lattice::{Cell, DualTree, Edge, Polyomino, Symmetry};
use polyfold::polycube::{propagate, FoldAngle, Polycube, Pose, Rotation};
use polyfold::search::{solve, SearchOptions};
use polyfold::{FoldModel, Step};
use proptest::prelude::*;

/// Grows a connected cell set from a list of (anchor, direction) picks.
fn grow(picks: &[(usize, usize)]) -> Vec<Cell> {
    let mut cells = vec![Cell::new(0, 0)];
    for &(a, d) in picks {
        let c = cells[a % cells.len()].step(Step::ALL[d % 4]);
        if !cells.contains(&c) {
            cells.push(c);
        }
    }
    cells
}

fn shape(max: usize) -> impl Strategy<Value = Polyomino> {
    prop::collection::vec((any::<usize>(), 0usize..4), 0..max).prop_map(|p| Polyomino::new(grow(&p)).unwrap())
}

fn tree_of(max: usize) -> impl Strategy<Value = DualTree> {
    (shape(max), any::<usize>()).prop_map(|(p, k)| {
        let trees = p.spanning_trees();
        trees[k % trees.len()].clone()
    })
}

/// Spanning-tree count by the matrix-tree theorem, with fraction-free
/// elimination on a reduced Laplacian.
fn matrix_tree_count(p: &Polyomino) -> i128 {
    let n = p.len();
    if n == 1 {
        return 1;
    }
    let mut m = vec![vec![0i128; n]; n];
    for e in p.adjacencies() {
        let (i, j) = (p.index_of(e.a).unwrap(), p.index_of(e.b).unwrap());
        m[i][i] += 1;
        m[j][j] += 1;
        m[i][j] -= 1;
        m[j][i] -= 1;
    }
    let k = n - 1;
    let mut a: Vec<Vec<i128>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for c in 0..k {
        if a[c][c] == 0 {
            let Some(r) = (c + 1..k).find(|&r| a[r][c] != 0) else { return 0 };
            a.swap(c, r);
            sign = -sign;
        }
        for r in c + 1..k {
            for j in c + 1..k {
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
            }
        }
        prev = a[c][c];
    }
    sign * a[k - 1][k - 1]
}

fn edge_set(t: &DualTree, f: impl Fn(Cell) -> Cell) -> BTreeSet<Edge> {
    t.edges().iter().map(|e| Edge::new(f(e.a), f(e.b))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_motion(p in shape(10), s in 0usize..8, dx in -5i32..5, dy in -5i32..5) {
        let sym = Symmetry::all()[s];
        let moved = Polyomino::new(p.cells().iter().map(|c| {
            let m = sym.apply(*c);
            Cell::new(m.x + dx, m.y + dy)
        })).unwrap();
        prop_assert_eq!(&moved, &p);
        prop_assert_eq!(Polyomino::new(p.cells().iter().copied()).unwrap(), p);
    }

    #[test]
    fn spanning_trees_match_matrix_tree_count(p in shape(11)) {
        prop_assert_eq!(p.spanning_trees().len() as i128, matrix_tree_count(&p));
    }

    #[test]
    fn stabilizer_orbits_partition_the_trees(p in shape(9)) {
        let reps: Vec<BTreeSet<Edge>> = p.canonical_dual_trees().iter().map(|t| edge_set(t, |c| c)).collect();
        let stab = p.stabilizer();
        for t in p.spanning_trees() {
            let orbit: BTreeSet<BTreeSet<Edge>> = stab.iter().map(|g| edge_set(&t, |c| g.apply(c))).collect();
            prop_assert_eq!(reps.iter().filter(|r| orbit.contains(*r)).count(), 1);
        }
        for r in &reps {
            for g in &stab {
                let img = r.iter().map(|e| Edge::new(g.apply(e.a), g.apply(e.b))).collect::<BTreeSet<_>>();
                prop_assert!(p.spanning_trees().iter().any(|t| edge_set(t, |c| c) == img));
            }
        }
    }

    #[test]
    fn propagate_stays_on_a_frame(steps in prop::collection::vec((0usize..4, 0usize..5), 1..20)) {
        let q = Polycube::unit_cube();
        let mut p = Pose::frames(q.surface()[0])[0];
        for (s, a) in steps {
            let step = Step::ALL[s];
            let next = propagate(p, p.dir_of(step), FoldAngle::ALL[a]);
            prop_assert!(next.u.axis != next.v.axis);
            prop_assert_eq!(propagate(next, next.dir_of(step.opposite()), FoldAngle::ALL[a]), p);
            p = next;
        }
    }

    #[test]
    fn solutions_verify_and_conserve_area(t in tree_of(9)) {
        let q = Polycube::unit_cube();
        if let Some(f) = solve(&t, &q, &FoldModel::DIAGONAL, SearchOptions::default()).unwrap() {
            prop_assert!(verify(&f, &FoldModel::DIAGONAL).is_ok());
            let ex = execute(&f, &FoldModel::DIAGONAL).unwrap();
            let c = &ex.coverage;
            let area = 2 * c.whole.values().sum::<u32>() + c.halves.values().sum::<u32>() + 2 * c.interior;
            prop_assert_eq!(area as usize, 2 * t.len());
            let wider = FoldModel { interior: true, ..FoldModel::DIAGONAL };
            prop_assert!(verify(&f, &wider).is_ok());
        }
    }

    #[test]
    fn foldability_ignores_plane_symmetry(t in tree_of(8), s in 0usize..8) {
        let q = Polycube::unit_cube();
        let sym = Symmetry::all()[s];
        let moved = DualTree::from_sheet(t.transformed(|c| sym.apply(c))).unwrap();
        let a = solve(&t, &q, &FoldModel::GRID180, SearchOptions::default()).unwrap().is_some();
        let b = solve(&moved, &q, &FoldModel::GRID180, SearchOptions::default()).unwrap().is_some();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn foldability_ignores_target_rotation(t in tree_of(10), r in 0usize..24) {
        let q = Polycube::cuboid(2, 1, 1);
        let rot = &Rotation::all()[r];
        let turned = Polycube::new(q.cubes().iter().map(|c| rot.apply(*c))).unwrap();
        let a = solve(&t, &q, &FoldModel::GRID90, SearchOptions::default()).unwrap().is_some();
        let b = solve(&t, &turned, &FoldModel::GRID90, SearchOptions::default()).unwrap().is_some();
        prop_assert_eq!(a, b);
    }
}

fn corpus(max_n: usize) -> Vec<DualTree> {
    (1..=max_n).flat_map(|n| enumerate_free(n).into_iter().flat_map(|p| p.canonical_dual_trees())).collect()
}

#[test]
fn pruning_never_changes_the_answer() {
    let q = Polycube::unit_cube();
    let loose = SearchOptions { no_pruning: true, ..SearchOptions::default() };
    for m in [FoldModel::GRID90, FoldModel::GRID180] {
        for t in corpus(7) {
            let a = solve(&t, &q, &m, SearchOptions::default()).unwrap().is_some();
            let b = solve(&t, &q, &m, loose).unwrap().is_some();
            assert_eq!(a, b, "{}", t.shape());
        }
    }
}

#[test]
fn larger_models_fold_at_least_as_much() {
    let q = Polycube::unit_cube();
    let models: Vec<FoldModel> = (1..=8).map(|k| FoldModel::hierarchy(k).unwrap()).collect();
    for t in corpus(8) {
        let ok: Vec<bool> = models.iter().map(|m| solve(&t, &q, m, SearchOptions::default()).unwrap().is_some()).collect();
        for (i, a) in models.iter().enumerate() {
            for (j, b) in models.iter().enumerate() {
                if a.is_subset_of(b) && ok[i] {
                    assert!(ok[j], "{} folds in {a} but not {b}", t.shape());
                }
            }
        }
    }
}
