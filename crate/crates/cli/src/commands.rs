//! One function per verb. Each returns the process exit code: 0 for a
//! positive answer, 1 for a proven negative one, 2 when a budget ran out.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Duration;

use polyfold::characterize::{
    fig10_family, fig9_family, hierarchy_suite, mountain_valley_of, puzzle_fixtures, strip2_foldable, strip3_foldable, tree_shapes_within,
    w45_fixture_suite, HierarchyFixtures, MV_TEXT,
};
use polyfold::enumerate::{enumerate_free, DESK_N, MAX_N};
use polyfold::foldcore::verify;
use polyfold::iamond::{brute_fold_tetra, exceptions, folds_to_tetrahedron, tree_corpus, IamondTree, Polyiamond};
use polyfold::search::{min_fold_count, solve, solve_sheet_with_stats, FoldKind, SearchError, SearchOptions};
use polyfold::treedp::{dp_foldable_with, DpTarget, DEFAULT_MAX_CUBES, DP_MODEL};
use polyfold::{DualTree, FoldModel, Folding, Polycube, Polyomino, Sheet};

use crate::args::{Cli, MinKind, Shared, Verb};
use crate::config::{fixtures_dir, ConfigFile};
use crate::error::CliError;
use crate::formats::{load_sheet, load_target, read, read_json, to_json, write, PolycubeFile, SolutionFile};
use crate::svg;
use crate::table::{census_line, classify_size, csv_text, enum_csv, verdict_log};

/// Flags merged with the config file.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub model: Option<FoldModel>,
    pub jobs: usize,
    pub nodes: Option<u64>,
    pub time_limit: Option<u64>,
    pub out: Option<PathBuf>,
    pub fixtures: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(shared: &Shared) -> Result<Settings, CliError> {
        let cfg = match &shared.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let model = match shared.model.as_ref().or(cfg.model.as_ref()) {
            Some(s) => Some(FoldModel::parse(s)?),
            None => None,
        };
        Ok(Settings {
            model,
            jobs: shared.jobs.or(cfg.jobs).unwrap_or(0),
            nodes: shared.nodes.or(cfg.nodes),
            time_limit: shared.time_limit.or(cfg.time_limit),
            out: shared.out.clone(),
            fixtures: fixtures_dir(&cfg),
        })
    }

    fn model_or(&self, default: FoldModel) -> FoldModel {
        self.model.unwrap_or(default)
    }

    /// Rejects `--model` for verbs whose models are fixed.
    fn fixed_model(&self, verb: &str) -> Result<(), CliError> {
        match self.model {
            Some(m) => Err(CliError::Usage(format!("{verb} uses fixed fold models; --model {m} is not accepted"))),
            None => Ok(()),
        }
    }

    fn options(&self) -> SearchOptions<'static> {
        let cancel = self.time_limit.map(|secs| {
            let flag: &'static AtomicBool = Box::leak(Box::new(AtomicBool::new(false)));
            std::thread::spawn(move || {
                std::thread::sleep(Duration::from_secs(secs));
                flag.store(true, Ordering::Relaxed);
            });
            flag
        });
        SearchOptions { node_budget: self.nodes, cancel, ..SearchOptions::default() }
    }

    /// Writes to `--out`, or prints.
    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(p) => write(p, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    let s = Settings::resolve(&cli.shared)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(s.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", s.jobs)))?;
    pool.install(|| match cli.verb {
        Verb::Check { input, target, any_tree, verify_only, minimize } => {
            if verify_only {
                check_solution(&s, &input)
            } else {
                check(&s, &input, &target, any_tree, minimize)
            }
        }
        Verb::Table { max_n, long_run, log, solutions, census } => {
            table(&s, max_n, long_run, log.as_deref(), solutions.as_deref(), census.as_deref())
        }
        Verb::Render { solution } => render(&s, &solution),
        Verb::Enum { max_n } => enumerate(&s, max_n),
        Verb::Strips { shape, height, max_width, cross_check, families } => {
            strips(&s, shape.as_deref(), height, max_width, cross_check, families)
        }
        Verb::Iamond { shape, max_n } => iamond(&s, shape.as_deref(), max_n),
        Verb::Hierarchy => hierarchy(&s),
        Verb::Dp { shape, target } => dp(&s, &shape, &target),
    })
}

fn write_solution(s: &Settings, f: &Folding, m: &FoldModel) -> Result<Option<PathBuf>, CliError> {
    verify(f, m)?;
    match &s.out {
        Some(p) => {
            write(p, &to_json(&SolutionFile::of(f, m)))?;
            Ok(Some(p.clone()))
        }
        None => Ok(None),
    }
}

fn check(s: &Settings, input: &Path, target: &str, any_tree: bool, minimize: Option<MinKind>) -> Result<u8, CliError> {
    let sheet = load_sheet(input)?;
    let q = load_target(target)?;
    let m = s.model_or(FoldModel::GRID180);
    let opts = s.options();
    let candidates: Vec<Sheet> = if any_tree {
        if !sheet.cuts().is_empty() {
            return Err(CliError::Usage("--any-tree needs a polyomino without cuts".into()));
        }
        sheet.shape().canonical_dual_trees().into_iter().map(DualTree::into_sheet).collect()
    } else {
        vec![sheet]
    };
    let mut nodes = 0;
    for c in &candidates {
        let (r, stats) = solve_sheet_with_stats(c, &q, &m, opts);
        nodes += stats.nodes;
        let Some(f) = r? else { continue };
        let mut report = format!(
            "foldable: yes\nmodel: {m}\nsquares: {}\nnodes: {nodes}\nfold-backs: {}\ndiagonals: {}\n",
            c.len(),
            f.fold_backs(),
            f.splits.len()
        );
        if let Some(kind) = minimize {
            let k = match kind {
                MinKind::FoldBacks => FoldKind::FoldBack,
                MinKind::Diagonals => FoldKind::Diagonal,
            };
            let least = min_fold_count(c, &q, &m, k, opts)?.expect("a folding exists");
            let _ = writeln!(report, "least {}: {least}", if k == FoldKind::FoldBack { "fold-backs" } else { "diagonals" });
        }
        if let Some(p) = write_solution(s, &f, &m)? {
            let _ = writeln!(report, "solution: {}", p.display());
        }
        print!("{report}");
        return Ok(0);
    }
    println!("foldable: no\nmodel: {m}\nnodes: {nodes}");
    Ok(1)
}

fn check_solution(s: &Settings, path: &Path) -> Result<u8, CliError> {
    let file: SolutionFile = read_json(path)?;
    let m = match s.model {
        Some(m) => m,
        None => file.model()?,
    };
    let f = file.folding()?;
    match verify(&f, &m) {
        Ok(_) => {
            println!("verified: {} squares onto {} faces under {m}", f.sheet.len(), f.target.surface().len());
            Ok(0)
        }
        Err(e) => {
            println!("rejected: {e}");
            Ok(1)
        }
    }
}

fn table(
    s: &Settings,
    max_n: usize,
    long_run: bool,
    log: Option<&Path>,
    solutions: Option<&Path>,
    census: Option<&Path>,
) -> Result<u8, CliError> {
    s.fixed_model("table")?;
    let cap = if long_run { MAX_N } else { DESK_N };
    if !(2..=cap).contains(&max_n) {
        let hint = if long_run { "" } else { " without --long-run" };
        return Err(CliError::Usage(format!("--max-n must lie in 2..={cap}{hint}")));
    }
    let opts = s.options();
    let results: Vec<_> = (2..=max_n).map(|n| classify_size(n, opts)).collect();
    let rows: Vec<_> = results.iter().map(|r| r.row).collect();
    s.emit(&csv_text(&rows))?;
    if let Some(p) = log {
        write(p, &verdict_log(&results, solutions, opts)?)?;
    }
    if let Some(p) = census {
        let text: String = results.iter().filter(|r| r.row.n >= 6).map(|r| census_line(r.row.n, &r.nonfoldable()) + "\n").collect();
        write(p, &text)?;
    }
    let partial = rows.iter().filter(|r| r.is_partial()).count();
    if partial > 0 {
        eprintln!("{partial} rows are partial: some searches ran out of budget");
        return Ok(2);
    }
    Ok(0)
}

fn render(s: &Settings, path: &Path) -> Result<u8, CliError> {
    let file: SolutionFile = read_json(path)?;
    let m = file.model()?;
    let f = file.folding()?;
    verify(&f, &m)?;
    s.emit(&svg::render(&f))?;
    Ok(0)
}

fn enumerate(s: &Settings, max_n: usize) -> Result<u8, CliError> {
    use rayon::prelude::*;
    s.fixed_model("enum")?;
    if !(1..=MAX_N).contains(&max_n) {
        return Err(CliError::Usage(format!("--max-n must lie in 1..={MAX_N}")));
    }
    let rows: Vec<(usize, u64, u64)> = (1..=max_n)
        .map(|n| {
            let shapes = enumerate_free(n);
            let trees: u64 = shapes.par_iter().map(|p| p.canonical_dual_trees().len() as u64).sum();
            (n, shapes.len() as u64, trees)
        })
        .collect();
    s.emit(&enum_csv(&rows))?;
    Ok(0)
}

fn strip_verdict(t: &DualTree) -> Result<bool, polyfold::characterize::StripError> {
    if t.shape().width().min(t.shape().height()) <= 2 {
        strip2_foldable(t)
    } else {
        strip3_foldable(t)
    }
}

fn strips(
    s: &Settings,
    shape: Option<&Path>,
    height: i32,
    max_width: i32,
    cross_check: bool,
    families: Option<i32>,
) -> Result<u8, CliError> {
    s.fixed_model("strips")?;
    let opts = s.options();
    let q = Polycube::unit_cube();
    let oracle = |t: &DualTree| -> Result<bool, SearchError> { Ok(solve(t, &q, &FoldModel::GRID180, opts)?.is_some()) };
    let mut out = String::new();
    let mut failed = false;
    let corpus: Vec<DualTree> = match shape {
        Some(p) => vec![DualTree::from_sheet(load_sheet(p)?).map_err(|e| CliError::Shape { path: p.to_path_buf(), source: e })?],
        None => {
            if !(1..=3).contains(&height) || max_width < 1 || height * max_width > 24 {
                return Err(CliError::Usage("box must have height 1..=3 and at most 24 cells".into()));
            }
            tree_shapes_within(height, max_width)
        }
    };
    let mut folds = 0;
    let mut disagree = 0;
    for t in &corpus {
        let v = strip_verdict(t).map_err(|e| CliError::Usage(format!("{}: {e}", t.shape().render().trim_end())))?;
        folds += usize::from(v);
        if cross_check && oracle(t)? != v {
            disagree += 1;
            let _ = writeln!(out, "mismatch: {}", t.shape().render().trim_end().replace('\n', "/"));
        }
        if shape.is_some() {
            let _ = writeln!(out, "foldable: {}", if v { "yes" } else { "no" });
        }
    }
    if shape.is_none() {
        let _ = writeln!(out, "tree shapes within {height}x{max_width}: {}, foldable: {folds}", corpus.len());
    }
    if cross_check {
        let _ = writeln!(out, "disagreements with search: {disagree}");
        failed |= disagree > 0;
    }
    if let Some(len) = families {
        let f9 = fig9_family(len);
        let f10 = fig10_family(len);
        let bad9 = f9.iter().filter(|t| strip2_foldable(t).unwrap_or(true)).count();
        let bad10 = f10.iter().filter(|t| strip3_foldable(t).unwrap_or(true)).count();
        let _ = writeln!(out, "two-row family up to {len}: {} members, {bad9} accepted", f9.len());
        let _ = writeln!(out, "three-row family up to {len}: {} members, {bad10} accepted", f10.len());
        failed |= bad9 + bad10 > 0;
    }
    s.emit(&out)?;
    Ok(if failed || (shape.is_some() && folds == 0) { 1 } else { 0 })
}

fn iamond(s: &Settings, shape: Option<&Path>, max_n: usize) -> Result<u8, CliError> {
    s.fixed_model("iamond")?;
    let mut out = String::new();
    if let Some(p) = shape {
        let bad = |e: polyfold::iamond::IamondError| CliError::Iamond { path: p.to_path_buf(), message: e.to_string() };
        let poly = Polyiamond::parse(&read(p)?).map_err(bad)?;
        let trees: Vec<IamondTree> = match IamondTree::of_tree(&poly) {
            Ok(t) => vec![t],
            Err(_) => poly.canonical_trees(),
        };
        let mut any = false;
        for t in &trees {
            let rule = folds_to_tetrahedron(t);
            let brute = brute_fold_tetra(t).is_some();
            any |= rule;
            let _ = writeln!(out, "{}: rule {}, search {}", t.render().trim_end().replace('\n', "/"), rule, brute);
            if rule != brute {
                s.emit(&out)?;
                return Ok(1);
            }
        }
        s.emit(&out)?;
        return Ok(if any { 0 } else { 1 });
    }
    if !(1..=10).contains(&max_n) {
        return Err(CliError::Usage("--max-n must lie in 1..=10".into()));
    }
    let corpus = tree_corpus(max_n);
    let failing: Vec<&IamondTree> = corpus.iter().filter(|t| brute_fold_tetra(t).is_none()).collect();
    let agree = corpus.iter().all(|t| folds_to_tetrahedron(t) == brute_fold_tetra(t).is_some());
    let expected = exceptions();
    let same = failing.len() == expected.iter().filter(|e| e.len() <= max_n).count() && failing.iter().all(|t| expected.contains(t));
    let _ = writeln!(out, "tree-polyiamonds up to {max_n}: {}", corpus.len());
    let _ = writeln!(out, "not folding: {}", failing.len());
    for t in &failing {
        let _ = writeln!(out, "  {}", t.render().trim_end().replace('\n', "/"));
    }
    let _ = writeln!(out, "rule agrees with search: {agree}");
    let _ = writeln!(out, "failures are the listed exceptions: {same}");
    s.emit(&out)?;
    Ok(if agree && same { 0 } else { 1 })
}

/// Fixture texts and targets, from a directory or built in.
pub struct FixtureSet {
    pub hierarchy: HierarchyFixtures,
    pub mountain_valley: Sheet,
    pub puzzles: Vec<(String, Sheet)>,
}

pub fn load_fixtures(dir: Option<&Path>) -> Result<FixtureSet, CliError> {
    let Some(dir) = dir else {
        return Ok(FixtureSet {
            hierarchy: HierarchyFixtures::builtin(),
            mountain_valley: Sheet::solid(Polyomino::parse(MV_TEXT)?),
            puzzles: puzzle_fixtures().into_iter().map(|(n, s)| (n.to_string(), s)).collect(),
        });
    };
    let text = |name: &str| read(&dir.join(name));
    let solid = |name: &str| -> Result<Sheet, CliError> {
        let t = text(name)?;
        Ok(Sheet::solid(Polyomino::parse(&t).map_err(|e| CliError::Shape { path: dir.join(name), source: e })?))
    };
    let shapes = [text("p1.txt")?, text("p2.txt")?, text("p3.txt")?, text("p4.txt")?];
    let mut targets = Vec::new();
    for i in 1..=4 {
        let f: PolycubeFile = read_json(&dir.join(format!("q{i}.json")))?;
        targets.push(f.build()?);
    }
    let targets: [Polycube; 4] = targets.try_into().expect("four targets");
    let hierarchy = HierarchyFixtures::from_texts(shapes.each_ref().map(String::as_str), targets)
        .map_err(|e| CliError::Fixture(format!("{}: {e}", dir.display())))?;
    let mut puzzles = Vec::new();
    for name in ["puzzle_a", "puzzle_b", "puzzle_c", "ring9"] {
        puzzles.push((name.to_string(), solid(&format!("{name}.txt"))?));
    }
    Ok(FixtureSet { hierarchy, mountain_valley: solid("mv.txt")?, puzzles })
}

fn hierarchy(s: &Settings) -> Result<u8, CliError> {
    s.fixed_model("hierarchy")?;
    let opts = s.options();
    let fx = load_fixtures(s.fixtures.as_deref())?;
    let mut lines = Vec::new();
    let report = hierarchy_suite(&fx.hierarchy, opts)?;
    lines.extend(report.lines());
    let mut ok = report.all_passed();

    let mv = mountain_valley_of(&fx.mountain_valley, opts)?;
    ok &= mv.passed();
    lines.push(format!(
        "both fold signs: no folding with one sign: {}; folds with both: {}; least fold-backs: {}",
        mv.single_sign.is_none(),
        mv.mixed.is_some(),
        mv.min_fold_backs.map_or("-".into(), |k| k.to_string())
    ));

    let w45 = w45_fixture_suite(opts)?;
    ok &= w45.passed();
    for t in &w45.targets {
        lines.push(format!(
            "grid target {} {}: folds {}; least diagonals {}",
            t.name,
            t.tree.shape().render().trim_end().replace('\n', "/"),
            t.foldable,
            t.min_diagonal.map_or("-".into(), |k| k.to_string())
        ));
    }
    lines.push(format!("pinwheel cutting folds: {}", w45.pinwheel_folds));

    let q = Polycube::unit_cube();
    for (name, sheet) in &fx.puzzles {
        let f = polyfold::search::solve_sheet(sheet, &q, &FoldModel::GRID180, opts)?;
        let verified = f.as_ref().is_some_and(|f| verify(f, &FoldModel::GRID180).is_ok());
        ok &= verified;
        lines.push(format!("puzzle {name}: folds and verifies: {verified}"));
    }
    lines.push(format!("overall: {}", if ok { "pass" } else { "FAIL" }));
    let mut text = lines.join("\n");
    text.push('\n');
    s.emit(&text)?;
    Ok(if ok { 0 } else { 1 })
}

fn dp(s: &Settings, shape: &Path, target: &str) -> Result<u8, CliError> {
    if let Some(m) = s.model.filter(|m| *m != DP_MODEL) {
        return Err(CliError::Usage(format!("the dynamic program decides {DP_MODEL} only, not {m}")));
    }
    let t = DualTree::from_sheet(load_sheet(shape)?).map_err(|e| CliError::Shape { path: shape.to_path_buf(), source: e })?;
    if !t.shape().is_tree_shape() {
        return Err(CliError::Usage("the dynamic program needs a tree shape".into()));
    }
    let q = load_target(target)?;
    let tg = DpTarget::new(&q, DEFAULT_MAX_CUBES).map_err(|e| CliError::Usage(e.to_string()))?;
    let out = dp_foldable_with(&t, &tg, true).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut report = format!("foldable: {}\nmodel: {DP_MODEL}\nvisits: {}\n", if out.foldable { "yes" } else { "no" }, out.visits);
    if let Some(f) = &out.witness {
        if let Some(p) = write_solution(s, f, &DP_MODEL)? {
            let _ = writeln!(report, "solution: {}", p.display());
        }
    }
    print!("{report}");
    Ok(if out.foldable { 0 } else { 1 })
}
