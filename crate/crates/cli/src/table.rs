//! Parallel classification of all dual trees by size, written as CSV plus a
//! per-tree verdict log.

use std::path::Path;

use polyfold::enumerate::{enumerate_free, nonfoldable_filter, NonFoldable, ShapeReport, TableRow, STEPS};
use polyfold::foldcore::verify;
use polyfold::search::{solve, SearchOptions};
use polyfold::Polycube;
use rayon::prelude::*;

use crate::error::CliError;
use crate::formats::{cut_code, shape_code, to_json, write, SolutionFile};

pub const HEADER: [&str; 7] = ["n", "free", "dual_trees", "fold90", "add180", "add_diag", "not_foldable"];

/// Everything computed for one size.
pub struct SizeResult {
    pub row: TableRow,
    pub reports: Vec<ShapeReport>,
}

impl SizeResult {
    pub fn nonfoldable(&self) -> NonFoldable {
        nonfoldable_filter(&self.reports)
    }
}

/// Classifies every dual tree of size `n`. Shapes are processed in
/// parallel on the current pool; the result does not depend on its size.
pub fn classify_size(n: usize, opts: SearchOptions<'_>) -> SizeResult {
    let shapes = enumerate_free(n);
    let reports: Vec<ShapeReport> = shapes.into_par_iter().map(|p| ShapeReport::run(p, opts)).collect();
    let mut row = TableRow::empty(n);
    for r in &reports {
        row.merge(&r.row());
    }
    SizeResult { row, reports }
}

fn cell(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// CSV text for the rows. A partial row reads `?` in the `not_foldable`
/// column, since unresolved trees may belong to any column.
pub fn csv_text(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in rows {
        let not = if r.is_partial() { "?".to_string() } else { cell(r.not_foldable) };
        w.write_record([
            r.n.to_string(),
            r.free.to_string(),
            r.dual_trees.to_string(),
            cell(r.fold90),
            cell(r.add180),
            cell(r.add_diag),
            not,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
}

/// Counts-only CSV: size, free polyominoes, dual trees.
pub fn enum_csv(rows: &[(usize, u64, u64)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "free", "dual_trees"]).expect("in-memory write");
    for (n, f, t) in rows {
        w.write_record([n.to_string(), f.to_string(), t.to_string()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
}

/// One tab-separated line per dual tree: size, shape, cuts, verdict and
/// the witness path (or `-`). Trees under six squares are `too_small`.
pub fn verdict_log(results: &[SizeResult], solutions: Option<&Path>, opts: SearchOptions<'_>) -> Result<String, CliError> {
    let mut out = String::new();
    for res in results {
        for (si, r) in res.reports.iter().enumerate() {
            for (ti, (t, v)) in r.trees.iter().enumerate() {
                let verdict = match v {
                    _ if res.row.n < 6 => "too_small".to_string(),
                    Ok(v) => v.name().to_string(),
                    Err(e) => format!("unresolved ({e})"),
                };
                let path = match (solutions, v) {
                    (Some(dir), Ok(v)) if v.is_foldable() => {
                        let m = STEPS.iter().find(|(s, _)| s == v).map(|(_, m)| *m).expect("foldable step");
                        let f = solve(t, &Polycube::unit_cube(), &m, opts)?.expect("verdict was foldable");
                        verify(&f, &m)?;
                        let p = dir.join(format!("n{}_s{si:05}_t{ti:03}.json", res.row.n));
                        write(&p, &to_json(&SolutionFile::of(&f, &m)))?;
                        p.display().to_string()
                    }
                    _ => "-".to_string(),
                };
                out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", res.row.n, shape_code(&r.shape), cut_code(t), verdict, path));
            }
        }
    }
    Ok(out)
}

/// Summary of the shapes with unfoldable trees, as reported per size.
pub fn census_line(n: usize, nf: &NonFoldable) -> String {
    format!("n={n}: {} polyominoes / {} dual trees not foldable", nf.shapes.len(), nf.trees)
}
