use std::path::Path;

use polyfold::characterize::HierarchyFixtures;
use polyfold::foldcore::verify;
use polyfold::search::{solve, solve_sheet, SearchOptions};
use polyfold::{DualTree, FoldModel, Polycube, Polyomino, Sheet};
use polyfold_cli::commands::load_fixtures;
use polyfold_cli::config::ConfigFile;
use polyfold_cli::formats::{load_sheet, load_target, read_json, to_json, PolycubeFile, SolutionFile, TreeFile};
use polyfold_cli::svg::{crease_counts, render, MARGIN, SCALE};

fn fixtures() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/v1"))
}

fn tree(text: &str) -> DualTree {
    DualTree::parse_tree_shape(text).unwrap()
}

#[test]
fn target_files_match_the_built_in_targets() {
    let built = HierarchyFixtures::builtin_targets();
    for (i, q) in built.iter().enumerate() {
        let f: PolycubeFile = read_json(&fixtures().join(format!("q{}.json", i + 1))).unwrap();
        assert_eq!(&f.build().unwrap(), q, "q{}", i + 1);
    }
}

#[test]
fn fixture_directory_matches_the_built_in_copies() {
    let dir = load_fixtures(Some(fixtures())).unwrap();
    let builtin = load_fixtures(None).unwrap();
    assert_eq!(dir.hierarchy, builtin.hierarchy);
    assert_eq!(dir.mountain_valley, builtin.mountain_valley);
    assert_eq!(dir.puzzles, builtin.puzzles);
}

#[test]
fn solution_round_trip_is_exact() {
    let t = tree("#######");
    let f = solve(&t, &Polycube::unit_cube(), &FoldModel::DIAGONAL, SearchOptions::default()).unwrap().unwrap();
    let file = SolutionFile::of(&f, &FoldModel::DIAGONAL);
    let text = to_json(&file);
    let back: SolutionFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back, file);
    assert_eq!(back.folding().unwrap(), f);
    assert_eq!(back.model().unwrap(), FoldModel::DIAGONAL);
    assert_eq!(to_json(&back), text);
    let keys: Vec<&str> =
        ["\"model\"", "\"target\"", "\"cells\"", "\"joins\"", "\"root_cell\"", "\"root_frame\"", "\"angles\"", "\"splits\""]
            .into_iter()
            .collect();
    let at: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "field order {at:?}");
}

#[test]
fn tampered_solutions_are_rejected() {
    let t = tree(".#.\n###\n.#.\n.#.");
    let f = solve(&t, &Polycube::unit_cube(), &FoldModel::GRID90, SearchOptions::default()).unwrap().unwrap();
    let mut file = SolutionFile::of(&f, &FoldModel::GRID90);
    let k = file.angles.iter().position(|a| a.angle != 0).unwrap();
    file.angles[k].angle = 0;
    assert!(verify(&file.folding().unwrap(), &FoldModel::GRID90).is_err());
    file.angles[k].angle = 45;
    assert!(file.folding().is_err());
    let mut moved = SolutionFile::of(&f, &FoldModel::GRID90);
    moved.cells.iter_mut().for_each(|c| c[0] += 3);
    assert!(moved.folding().is_err());
}

#[test]
fn tree_files_load_with_their_cuts() {
    let dir = tempfile::tempdir().unwrap();
    let sq = Polyomino::parse("##\n##").unwrap();
    let t = sq.spanning_trees().remove(0);
    let p = dir.path().join("t.json");
    std::fs::write(&p, to_json(&TreeFile::of(&t))).unwrap();
    let s = load_sheet(&p).unwrap();
    assert_eq!(s, *t.sheet());
    assert_eq!(s.cuts().len(), 1);
    let text = dir.path().join("s.txt");
    std::fs::write(&text, "##\n##\n").unwrap();
    assert_eq!(load_sheet(&text).unwrap(), Sheet::solid(sq));
    std::fs::write(&text, "#x\n").unwrap();
    let err = load_sheet(&text).unwrap_err().to_string();
    assert!(err.contains("line 1, column 2"), "{err}");
}

#[test]
fn targets_by_name_size_and_file() {
    assert_eq!(load_target("cube").unwrap(), Polycube::unit_cube());
    assert_eq!(load_target("2x1x1").unwrap(), Polycube::cuboid(2, 1, 1));
    let q3 = fixtures().join("q3.json");
    assert_eq!(load_target(q3.to_str().unwrap()).unwrap().surface().len(), 46);
    assert!(load_target("0x1x1").is_err());
}

#[test]
fn mountain_only_net_draws_five_red_creases() {
    let t = tree(".#.\n###\n.#.\n.#.");
    let plus = FoldModel::parse("+90").unwrap();
    let f = solve(&t, &Polycube::unit_cube(), &plus, SearchOptions::default()).unwrap().unwrap();
    let svg = render(&f);
    assert_eq!(svg.matches("class=\"mountain\"").count(), 5);
    assert_eq!(svg.matches("class=\"valley\"").count(), 0);
    assert_eq!(svg.matches("#d62728").count(), 5);
    let c = crease_counts(&f);
    assert_eq!((c.mountain, c.valley, c.diagonal, c.cut), (5, 0, 0, 0));
    let (a, b) = ((3 + 2 * MARGIN) * SCALE, (4 + 2 * MARGIN) * SCALE);
    let head = |w, h| format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\"");
    assert!(svg.starts_with(&head(a, b)) || svg.starts_with(&head(b, a)), "{}", svg.lines().next().unwrap());
    assert_eq!(svg.matches("<rect ").count(), 6);
}

#[test]
fn diagonal_strip_draws_two_corner_to_corner_creases() {
    let f = solve(&tree("#######"), &Polycube::unit_cube(), &FoldModel::DIAGONAL, SearchOptions::default()).unwrap().unwrap();
    let svg = render(&f);
    assert_eq!(svg.matches("<rect ").count(), 7);
    let diagonals: Vec<&str> = svg.lines().filter(|l| l.contains("diagonal")).collect();
    assert_eq!(diagonals.len(), 2);
    for l in diagonals {
        let num = |k: &str| -> i32 {
            let at = l.find(&format!("{k}=\"")).unwrap() + k.len() + 2;
            l[at..].split('"').next().unwrap().parse().unwrap()
        };
        assert_eq!((num("x2") - num("x1")).abs(), SCALE);
        assert_eq!((num("y2") - num("y1")).abs(), SCALE);
    }
    assert_eq!(render(&f), svg);
}

#[test]
fn negative_fold_backs_are_blue_and_cuts_are_bold() {
    let m = FoldModel::parse("+90,-180").unwrap();
    let sheet = Sheet::solid(Polyomino::parse(polyfold::characterize::RING9_TEXT).unwrap());
    let q = Polycube::unit_cube();
    let f = solve_sheet(&sheet, &q, &FoldModel::GRID180, SearchOptions::default()).unwrap().unwrap();
    let svg = render(&f);
    assert_eq!(svg.matches("class=\"cut\"").count(), f.sheet.cuts().len());
    if let Some(g) = solve_sheet(&sheet, &q, &m, SearchOptions::default()).unwrap() {
        assert!(render(&g).contains("class=\"valley\""));
    }
}

#[test]
fn config_keys_are_parsed_and_unknown_keys_refused() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("polyfold.toml");
    std::fs::write(&p, "model = \"F6\"\njobs = 2\nnodes = 1000\ntime-limit = 5\nfixtures = \"fx\"\n").unwrap();
    let c = ConfigFile::load(&p).unwrap();
    assert_eq!(c.model.as_deref(), Some("F6"));
    assert_eq!((c.jobs, c.nodes, c.time_limit), (Some(2), Some(1000), Some(5)));
    std::fs::write(&p, "colour = \"red\"\n").unwrap();
    assert!(ConfigFile::load(&p).is_err());
}
