use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "polyfold", version, about = "Fold polyominoes onto the surfaces of polycubes")]
pub struct Cli {
    #[command(flatten)]
    pub shared: Shared,
    #[command(subcommand)]
    pub verb: Verb,
}

/// Flags every verb accepts.
#[derive(Debug, Clone, Default, Args)]
pub struct Shared {
    /// Fold model: `F1`..`F8` or a list such as `+90,-90,+180,-180,diagonal`.
    #[arg(long, global = true)]
    pub model: Option<String>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Square placements allowed per search before giving up.
    #[arg(long, global = true)]
    pub nodes: Option<u64>,
    /// Wall-clock limit for the whole command, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub time_limit: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with defaults for the flags above and `fixtures`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MinKind {
    FoldBacks,
    Diagonals,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Decide whether a shape folds onto a target, or re-verify a solution.
    Check {
        /// Shape text, dual-tree JSON, or with `--verify-only` a solution file.
        input: PathBuf,
        /// `cube`, `AxBxC`, or a polycube JSON file.
        #[arg(long, default_value = "cube")]
        target: String,
        /// Try every dual tree of the polyomino instead of the solid sheet.
        #[arg(long)]
        any_tree: bool,
        /// Replay and verify a solution file without searching.
        #[arg(long)]
        verify_only: bool,
        /// Also report the least number of folds of this kind.
        #[arg(long, value_enum)]
        minimize: Option<MinKind>,
    },
    /// Classify every dual tree of every size up to `--max-n` as CSV.
    Table {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// Allow sizes above the desk-scale cap.
        #[arg(long)]
        long_run: bool,
        /// Per-tree verdict log.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Directory for witness solutions named in the log.
        #[arg(long, requires = "log")]
        solutions: Option<PathBuf>,
        /// File for the per-size list of shapes with unfoldable trees.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Draw the crease pattern of a solution as SVG.
    Render { solution: PathBuf },
    /// Count free polyominoes and their dual trees.
    Enum {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Evaluate the strip predicates on a shape or on every tree shape in a box.
    Strips {
        shape: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        height: i32,
        #[arg(long, default_value_t = 8)]
        max_width: i32,
        /// Compare every answer with exhaustive search.
        #[arg(long)]
        cross_check: bool,
        /// Also test the two unfoldable families up to this length.
        #[arg(long)]
        families: Option<i32>,
    },
    /// Tetrahedron folding of tree-polyiamonds.
    Iamond {
        /// Polyiamond text (`u`/`d`/`.`); the whole corpus when absent.
        shape: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Run the fold-model hierarchy suite and the other fixture checks.
    Hierarchy,
    /// Decide a tree shape with the linear-time dynamic program.
    Dp {
        shape: PathBuf,
        #[arg(long, default_value = "cube")]
        target: String,
    },
}
