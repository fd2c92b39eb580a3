use polyfold::enumerate::{enumerate_free, shape_fold_counts, FoldCounts, ShapeReport, Verdict};
use polyfold::lattice::{DualTree, Polyomino};
use polyfold::search::{min_fold_count, FoldKind, SearchOptions};
use polyfold::{FoldModel, Polycube};

fn counts(n: usize) -> FoldCounts {
    let mut out = FoldCounts::default();
    for p in enumerate_free(n) {
        let r = ShapeReport::run(p, SearchOptions::default());
        out.merge(&shape_fold_counts(&r, SearchOptions::default()).unwrap());
    }
    out
}

#[test]
fn square_of_nine_splits_six_twelve_ten() {
    let q = Polycube::unit_cube();
    let square = Polyomino::parse("###\n###\n###").unwrap();
    let mut by_count = [0; 3];
    let mut unfoldable = 0;
    for t in square.canonical_dual_trees() {
        match min_fold_count(t.sheet(), &q, &FoldModel::GRID180, FoldKind::FoldBack, SearchOptions::default()).unwrap() {
            Some(k) => by_count[k] += 1,
            None => unfoldable += 1,
        }
    }
    assert_eq!(by_count, [0, 12, 6]);
    assert_eq!(unfoldable, 10);
}

#[test]
fn at_most_two_fold_backs_and_only_the_strip_needs_two_diagonals() {
    let strip = DualTree::parse_tree_shape("#######").unwrap();
    let mut heavy_diagonals = Vec::new();
    for n in 6..=9 {
        let c = counts(n);
        assert!(c.max_fold_backs() <= 2, "size {n}: {:?}", c.fold_backs);
        assert!(c.max_diagonals() <= 2, "size {n}: {:?}", c.diagonals);
        heavy_diagonals.extend(c.heavy_diagonals);
    }
    assert_eq!(heavy_diagonals, vec![strip]);
}

#[test]
fn strip_of_seven_is_an_add_diagonal_tree() {
    let strip = DualTree::parse_tree_shape("#######").unwrap();
    let v = polyfold::enumerate::classify_tree(&strip, SearchOptions::default()).unwrap();
    assert_eq!(v, Verdict::AddDiagonal);
}
