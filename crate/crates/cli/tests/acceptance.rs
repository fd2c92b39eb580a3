//! One pass/fail line per acceptance criterion. Set `POLYFOLD_LONG_RUN=1`
//! to add size 10 to the table and census checks.

use std::path::Path;
use std::process::Command;

use polyfold::characterize::{
    fig10_family, fig9_family, hierarchy_suite, mountain_valley_witness, puzzle_fixtures, strip2_foldable, strip3_foldable,
    tree_shapes_within, w45_fixture_suite, HierarchyFixtures,
};
use polyfold::enumerate::{enumerate_free, shape_fold_counts, FoldCounts, ShapeReport};
use polyfold::foldcore::verify;
use polyfold::iamond::{brute_fold_tetra, folds_to_tetrahedron, tree_corpus};
use polyfold::lattice::{Cell, DualTree, Edge};
use polyfold::search::{min_fold_count, solve, solve_sheet, FoldKind, SearchOptions};
use polyfold::treedp::{dp_foldable_with, DpTarget, DEFAULT_MAX_CUBES, DP_MODEL};
use polyfold::{FoldModel, Polycube, Polyomino};
use polyfold_cli::formats::{to_json, SolutionFile};
use polyfold_cli::table::{classify_size, csv_text};

type Outcome = Result<String, String>;

/// Published rows: n, free, dual trees, +-90, +-180, diagonal, not foldable.
const ROWS: [(usize, u64, u64, u64, u64, u64, u64); 9] = [
    (2, 1, 1, 0, 0, 0, 0),
    (3, 2, 2, 0, 0, 0, 0),
    (4, 5, 5, 0, 0, 0, 0),
    (5, 12, 15, 0, 0, 0, 0),
    (6, 35, 54, 11, 0, 0, 43),
    (7, 108, 212, 90, 24, 39, 59),
    (8, 369, 908, 571, 175, 126, 36),
    (9, 1285, 4011, 3071, 697, 233, 10),
    (10, 4655, 18260, 15645, 2230, 385, 0),
];

const CENSUS: [(usize, usize, usize); 5] = [(6, 24, 43), (7, 12, 59), (8, 3, 36), (9, 1, 10), (10, 0, 0)];

fn long_run() -> bool {
    std::env::var_os("POLYFOLD_LONG_RUN").is_some_and(|v| !v.is_empty() && v != "0")
}

fn opts() -> SearchOptions<'static> {
    SearchOptions::default()
}

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

/// Table rows and the census, both from one classification per size.
fn table_and_census(max_n: usize) -> (Outcome, Outcome) {
    let results: Vec<_> = (2..=max_n).map(|n| classify_size(n, opts())).collect();
    let table = (|| {
        let csv = csv_text(&results.iter().map(|r| r.row).collect::<Vec<_>>());
        for (res, want) in results.iter().zip(ROWS) {
            let r = &res.row;
            let got = (
                r.n,
                r.free,
                r.dual_trees,
                r.fold90.unwrap_or(0),
                r.add180.unwrap_or(0),
                r.add_diag.unwrap_or(0),
                r.not_foldable.unwrap_or(0),
            );
            check(!r.is_partial() && r.partition_holds(), format!("n={}: row incomplete", r.n))?;
            check(got == want, format!("n={}: got {got:?}, expected {want:?}", r.n))?;
        }
        Ok(format!("n=2..{max_n} exact, {} CSV lines", csv.lines().count()))
    })();
    let census = (|| {
        let mut seen = Vec::new();
        for res in results.iter().filter(|r| r.row.n >= 6) {
            let nf = res.nonfoldable();
            let want = CENSUS.iter().find(|c| c.0 == res.row.n).expect("listed size");
            check((nf.shapes.len(), nf.trees) == (want.1, want.2), format!("n={}: {} / {}", res.row.n, nf.shapes.len(), nf.trees))?;
            seen.push(format!("n={} {}/{}", res.row.n, want.1, want.2));
        }
        Ok(seen.join(", "))
    })();
    (table, census)
}

fn square_of_nine() -> Outcome {
    let q = Polycube::unit_cube();
    let square = Polyomino::parse("###\n###\n###").unwrap();
    let mut by_count = [0usize; 3];
    let mut unfoldable = 0;
    for t in square.canonical_dual_trees() {
        match min_fold_count(t.sheet(), &q, &FoldModel::GRID180, FoldKind::FoldBack, opts()).map_err(|e| e.to_string())? {
            Some(k) if k < 3 => by_count[k] += 1,
            Some(k) => return Err(format!("a tree needs {k} fold-backs")),
            None => unfoldable += 1,
        }
    }
    let folding: usize = by_count.iter().sum();
    check(folding == 18, format!("{folding} trees fold"))?;
    check(by_count[2] > 0, "no tree needs two fold-backs")?;
    Ok(format!("18 of {} trees fold; least fold-backs 0/1/2: {by_count:?}", folding + unfoldable))
}

fn fold_counts() -> Outcome {
    let strip = DualTree::parse_tree_shape("#######").unwrap();
    let mut all = FoldCounts::default();
    for n in 6..=9 {
        for p in enumerate_free(n) {
            let r = ShapeReport::run(p, opts());
            all.merge(&shape_fold_counts(&r, opts()).map_err(|e| e.to_string())?);
        }
    }
    check(all.max_fold_backs() <= 2, format!("{} fold-backs needed", all.max_fold_backs()))?;
    check(all.heavy_diagonals == vec![strip.clone()], format!("{} trees need two diagonals", all.heavy_diagonals.len()))?;
    let strip_min = min_fold_count(strip.sheet(), &Polycube::unit_cube(), &FoldModel::DIAGONAL, FoldKind::Diagonal, opts())
        .map_err(|e| e.to_string())?;
    check(strip_min == Some(2), format!("1x7 strip needs {strip_min:?} diagonals"))?;
    Ok(format!("max fold-backs {}, only the 1x7 strip needs 2 diagonals", all.max_fold_backs()))
}

fn hierarchy() -> Outcome {
    let report = hierarchy_suite(&HierarchyFixtures::builtin(), opts()).map_err(|e| e.to_string())?;
    let failed: Vec<u8> = report.relations.iter().filter(|r| !r.passed).map(|r| r.relation.number).collect();
    check(report.relations.len() == 24 && failed.is_empty(), format!("relations failing: {failed:?}"))?;
    check(!report.p4_folds_in_f8, "P4 folds in F8")?;
    let mv = mountain_valley_witness(opts()).map_err(|e| e.to_string())?;
    check(mv.passed(), "both-sign witness")?;
    let w45 = w45_fixture_suite(opts()).map_err(|e| e.to_string())?;
    check(w45.passed(), "grid targets or pinwheel")?;
    Ok(format!("24/24 relations; relation 25: {}", report.relation25))
}

fn caterpillar(n: usize) -> DualTree {
    let spine = n.div_ceil(2) as i32;
    let mut cells: Vec<Cell> = (0..spine).map(|x| Cell::new(x, 0)).collect();
    let mut edges: Vec<Edge> = (1..spine).map(|x| Edge::new(Cell::new(x - 1, 0), Cell::new(x, 0))).collect();
    let mut x = 0;
    while cells.len() < n {
        let y = if x % 2 == 0 { 1 } else { -1 };
        cells.push(Cell::new(x, y));
        edges.push(Edge::new(Cell::new(x, 0), Cell::new(x, y)));
        x += 1;
    }
    DualTree::new(cells, edges).unwrap()
}

fn dp_equivalence() -> Outcome {
    let corpus: Vec<DualTree> = (1..=8).flat_map(|n| enumerate_free(n).into_iter().flat_map(|p| p.canonical_dual_trees())).collect();
    for q in [Polycube::unit_cube(), Polycube::cuboid(2, 1, 1)] {
        let tg = DpTarget::new(&q, DEFAULT_MAX_CUBES).map_err(|e| e.to_string())?;
        for t in &corpus {
            let dp = dp_foldable_with(t, &tg, true).map_err(|e| e.to_string())?;
            let bt = solve(t, &q, &DP_MODEL, opts()).map_err(|e| e.to_string())?;
            check(dp.foldable == bt.is_some(), format!("disagree on {}", t.shape()))?;
            if let Some(w) = dp.witness {
                check(verify(&w, &DP_MODEL).is_ok(), "witness rejected")?;
            }
        }
    }
    let tg = DpTarget::new(&Polycube::unit_cube(), DEFAULT_MAX_CUBES).unwrap();
    let mut visits = Vec::new();
    for n in [625usize, 1250, 2500, 5000, 10_000] {
        let out = dp_foldable_with(&caterpillar(n), &tg, false).map_err(|e| e.to_string())?;
        visits.push(out.visits);
    }
    for w in visits.windows(2) {
        check(w[1] <= 2 * w[0] + 2 * tg.pose_count() as u64, format!("visits {visits:?} grow faster than linear"))?;
    }
    Ok(format!("{} trees x 2 targets agree; caterpillar visits {visits:?}", corpus.len()))
}

fn strips() -> Outcome {
    let folds =
        |t: &DualTree| solve(t, &Polycube::unit_cube(), &FoldModel::GRID180, opts()).map(|f| f.is_some()).map_err(|e| e.to_string());
    let two = tree_shapes_within(2, 8);
    for t in &two {
        check(strip2_foldable(t).map_err(|e| e.to_string())? == folds(t)?, format!("2-row mismatch {}", t.shape()))?;
    }
    let three = tree_shapes_within(3, 6);
    for t in &three {
        check(strip3_foldable(t).map_err(|e| e.to_string())? == folds(t)?, format!("3-row mismatch {}", t.shape()))?;
    }
    let (f9, f10) = (fig9_family(12), fig10_family(12));
    for t in &f9 {
        check(!strip2_foldable(t).map_err(|e| e.to_string())?, format!("two-row family accepted {}", t.shape()))?;
    }
    for t in &f10 {
        check(!strip3_foldable(t).map_err(|e| e.to_string())?, format!("three-row family accepted {}", t.shape()))?;
    }
    Ok(format!("{} + {} shapes match search; families of {} and {} members rejected", two.len(), three.len(), f9.len(), f10.len()))
}

fn polyiamonds() -> Outcome {
    let corpus = tree_corpus(8);
    let failing = corpus.iter().filter(|t| !folds_to_tetrahedron(t)).count();
    for t in &corpus {
        check(folds_to_tetrahedron(t) == brute_fold_tetra(t).is_some(), format!("predicate differs on {}", t.render()))?;
    }
    check(failing == 6, format!("{failing} do not fold"))?;
    Ok(format!("{} tree-polyiamonds, 6 do not fold, predicate matches brute force", corpus.len()))
}

fn puzzles() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let q = Polycube::unit_cube();
    let mut names = Vec::new();
    for (name, sheet) in puzzle_fixtures() {
        let f = solve_sheet(&sheet, &q, &FoldModel::GRID180, opts()).map_err(|e| e.to_string())?.ok_or(format!("{name} does not fold"))?;
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, to_json(&SolutionFile::of(&f, &FoldModel::GRID180))).map_err(|e| e.to_string())?;
        check(reverified(&path), format!("{name}: emitted solution rejected"))?;
        names.push(name);
    }
    Ok(format!("{} fold and re-verify from file", names.join(", ")))
}

fn reverified(path: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_polyfold")).args(["check", "--verify-only"]).arg(path).status().is_ok_and(|s| s.success())
}

fn report(k: usize, name: &str, outcome: &Outcome) -> bool {
    match outcome {
        Ok(detail) => println!("criterion {k} ({name}): PASS: {detail}"),
        Err(why) => println!("criterion {k} ({name}): FAIL: {why}"),
    }
    outcome.is_ok()
}

#[test]
fn acceptance() {
    let max_n = if long_run() { 10 } else { 9 };
    let (table, census) = table_and_census(max_n);
    let results = [
        ("table", table),
        ("census", census),
        ("3x3 square", square_of_nine()),
        ("fold counts", fold_counts()),
        ("hierarchy", hierarchy()),
        ("dp equivalence", dp_equivalence()),
        ("strips", strips()),
        ("polyiamonds", polyiamonds()),
        ("puzzles", puzzles()),
    ];
    let mut all = true;
    for (k, (name, outcome)) in results.iter().enumerate() {
        all &= report(k + 1, name, outcome);
    }
    assert!(all, "some criteria failed");
}

#[test]
#[ignore = "size 10 takes a few extra seconds; run with --ignored"]
fn acceptance_size_ten() {
    let (table, census) = table_and_census(10);
    let ok = report(1, "table through 10", &table) & report(2, "census through 10", &census);
    assert!(ok);
}
