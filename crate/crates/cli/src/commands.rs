//! Subcommand handlers. Each builds a serialisable report and renders it
//! in the requested format.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;

use fuzzy_models::bam::{bam_indirect, bam_run, BamModel, Side};
use fuzzy_models::cetd::{cetd_pipeline, RawDataTable, SdMode};
use fuzzy_models::fam::{fam_backward, fam_forward, fam_rank, FamModel};
use fuzzy_models::fcm::{fcm_assemble_blocks, fcm_combine, fcm_hidden_pattern, Fcm, PatternKind};
use fuzzy_models::fre::{
    fre_fit_max_product, fre_max_solution, fre_partition_peaks, fre_verify, Composition,
    PartitionScheme,
};
use fuzzy_models::frm::{
    average_matrix, frm_combine, frm_combined_fuzzy, frm_fuzzify, frm_hidden_pattern,
    frm_membership_grades, Frm, PairKind, Space,
};
use fuzzy_models::matrix::{Axis, Matrix};
use fuzzy_models::relations::{alpha_cut, relation_properties_with, relation_summary};
use fuzzy_models::state::StateVector;

use crate::csvio::{matrix_to_csv, read_matrix, read_vector};
use crate::error::{CliError, CliResult};
use crate::report::{emit, join_sig6, series_row, sig6, Format, MatrixDoc, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SdModeArg {
    Sample,
    Absdev,
}

impl From<SdModeArg> for SdMode {
    fn from(a: SdModeArg) -> SdMode {
        match a {
            SdModeArg::Sample => SdMode::SampleNMinus1,
            SdModeArg::Absdev => SdMode::AbsDeviation,
        }
    }
}

fn parse_f64_list(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::usage(format!("not a number: {s:?}")))
        })
        .collect()
}

fn parse_usize_list(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::usage(format!("not an index: {s:?}")))
        })
        .collect()
}

fn state_doc(s: &StateVector) -> Vec<u8> {
    s.bits().to_vec()
}

fn bits_line(bits: &[u8]) -> String {
    bits.iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

// ------------------------------------------------------------- cetd ----

#[derive(Args, Debug)]
pub struct CetdArgs {
    /// Raw counts CSV; without --intervals its first column holds the
    /// per-group interval lengths
    #[arg(long)]
    pub raw: PathBuf,
    /// Comma-separated interval lengths, one per group
    #[arg(long)]
    pub intervals: Option<String>,
    /// Comma-separated band widths
    #[arg(long)]
    pub alphas: String,
    #[arg(long, value_enum, default_value = "sample")]
    pub sd_mode: SdModeArg,
}

#[derive(Serialize)]
struct RtdDoc {
    alpha: f64,
    matrix: MatrixDoc,
    row_sums: Vec<f64>,
}

#[derive(Serialize)]
struct CetdReportDoc {
    groups: Vec<String>,
    interval_lengths: Vec<f64>,
    alphas: Vec<f64>,
    atd: MatrixDoc,
    means: Vec<f64>,
    sds: Vec<f64>,
    rtds: Vec<RtdDoc>,
    cetd: MatrixDoc,
    cetd_row_sums: Vec<f64>,
}

impl Report for CetdReportDoc {
    fn command(&self) -> &'static str {
        "cetd"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("groups: {}\n", self.groups.join(" ")));
        out.push_str(&format!(
            "interval lengths: {}\n",
            join_sig6(&self.interval_lengths)
        ));
        out.push_str(&format!("column means: {}\n", join_sig6(&self.means)));
        out.push_str(&format!("column sds: {}\n", join_sig6(&self.sds)));
        for rtd in &self.rtds {
            out.push_str(&format!(
                "rtd alpha={}: row sums {}\n",
                sig6(rtd.alpha),
                join_sig6(&rtd.row_sums)
            ));
        }
        out.push_str("cetd matrix:\n");
        for row in &self.cetd.data {
            out.push_str("  ");
            out.push_str(&join_sig6(row));
            out.push('\n');
        }
        out.push_str(&format!(
            "cetd row sums: {}\n",
            join_sig6(&self.cetd_row_sums)
        ));
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for rtd in &self.rtds {
            let name = format!("rtd_alpha_{}", sig6(rtd.alpha));
            for (g, v) in self.groups.iter().zip(&rtd.row_sums) {
                series_row(&mut out, &name, g, *v);
            }
        }
        for (g, v) in self.groups.iter().zip(&self.cetd_row_sums) {
            series_row(&mut out, "cetd", g, *v);
        }
        out
    }
}

pub fn run_cetd(args: &CetdArgs, format: Format, no_header: bool) -> CliResult<String> {
    let table = read_matrix(&args.raw)?;
    let alphas = parse_f64_list(&args.alphas)?;
    let (counts, lengths) = match &args.intervals {
        Some(list) => (table.clone(), parse_f64_list(list)?),
        None => {
            if table.cols() < 2 {
                return Err(CliError::usage(
                    "raw table needs an interval-length column plus data columns".to_string(),
                ));
            }
            let lengths: Vec<f64> = (0..table.rows()).map(|i| table.get(i, 0)).collect();
            let mut data = Vec::new();
            for i in 0..table.rows() {
                data.extend_from_slice(&table.row(i)[1..]);
            }
            (
                Matrix::from_vec(table.rows(), table.cols() - 1, data).map_err(CliError::model)?,
                lengths,
            )
        }
    };
    let raw = match (table.row_labels(), counts.col_labels()) {
        (Some(groups), _) => RawDataTable::new(
            groups.to_vec(),
            lengths,
            counts
                .col_labels()
                .map(|l| l.to_vec())
                .unwrap_or_else(|| (1..=counts.cols()).map(|j| format!("S{j}")).collect()),
            counts.clone(),
        ),
        _ => RawDataTable::from_counts(counts.clone(), lengths),
    }
    .map_err(CliError::model)?;
    let report = cetd_pipeline(&raw, &alphas, args.sd_mode.into()).map_err(CliError::model)?;
    let doc = CetdReportDoc {
        groups: raw.group_labels.clone(),
        interval_lengths: raw.interval_lengths.clone(),
        alphas: report.rtds.iter().map(|r| r.alpha).collect(),
        atd: (&report.atd).into(),
        means: report.stats.means.clone(),
        sds: report.stats.sds.clone(),
        rtds: report
            .rtds
            .iter()
            .map(|r| RtdDoc {
                alpha: r.alpha,
                matrix: (&r.matrix).into(),
                row_sums: r.row_sums.clone(),
            })
            .collect(),
        cetd: (&report.cetd).into(),
        cetd_row_sums: report.cetd_row_sums.clone(),
    };
    emit(&doc, format, no_header)
}

// -------------------------------------------------------------- fcm ----

#[derive(Subcommand, Debug)]
pub enum FcmCommand {
    /// Iterate a map from an initial on-set to its hidden pattern
    Run(FcmRunArgs),
    /// Sum expert maps over a shared node ordering
    Combine(FcmCombineArgs),
    /// Assemble block connection matrices into one map
    Blocks(FcmBlocksArgs),
}

#[derive(Args, Debug)]
pub struct FcmRunArgs {
    /// Adjacency matrix CSV (square, zero diagonal)
    #[arg(long)]
    pub matrix: PathBuf,
    /// 1-based node positions switched on (and clamped) initially
    #[arg(long)]
    pub on: String,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: usize,
}

#[derive(Serialize)]
struct FcmRunDoc {
    nodes: usize,
    theta: f64,
    on: Vec<usize>,
    kind: String,
    steps: usize,
    trace: Vec<Vec<u8>>,
    terminal_states: Vec<Vec<u8>>,
}

impl Report for FcmRunDoc {
    fn command(&self) -> &'static str {
        "fcm run"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("nodes: {}\n", self.nodes));
        out.push_str(&format!("theta: {}\n", sig6(self.theta)));
        out.push_str("trace:\n");
        for s in &self.trace {
            out.push_str(&format!("  {}\n", bits_line(s)));
        }
        match self.kind.as_str() {
            "fixed_point" => out.push_str(&format!(
                "hidden pattern: fixed point {}\n",
                bits_line(&self.terminal_states[0])
            )),
            _ => {
                out.push_str(&format!(
                    "hidden pattern: limit cycle of period {}\n",
                    self.terminal_states.len()
                ));
                for s in &self.terminal_states {
                    out.push_str(&format!("  {}\n", bits_line(s)));
                }
            }
        }
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for (step, s) in self.trace.iter().enumerate() {
            let on = s.iter().filter(|&&b| b == 1).count();
            series_row(&mut out, "on_count", &step.to_string(), on as f64);
        }
        out
    }
}

fn pattern_kind_name(kind: PatternKind) -> String {
    match kind {
        PatternKind::FixedPoint => "fixed_point".to_string(),
        PatternKind::LimitCycle => "limit_cycle".to_string(),
    }
}

pub fn run_fcm(cmd: &FcmCommand, format: Format, no_header: bool) -> CliResult<String> {
    match cmd {
        FcmCommand::Run(args) => {
            let adjacency = read_matrix(&args.matrix)?;
            let map = Fcm::new(adjacency)
                .map_err(CliError::model)?
                .with_theta(args.theta);
            let on = parse_usize_list(&args.on)?;
            let initial =
                StateVector::from_on_positions(map.node_count(), &on).map_err(CliError::model)?;
            let hp = fcm_hidden_pattern(&map, &initial, args.max_steps).map_err(CliError::model)?;
            let doc = FcmRunDoc {
                nodes: map.node_count(),
                theta: args.theta,
                on,
                kind: pattern_kind_name(hp.kind),
                steps: hp.steps,
                trace: hp.trace.iter().map(state_doc).collect(),
                terminal_states: hp.terminal_states.iter().map(state_doc).collect(),
            };
            emit(&doc, format, no_header)
        }
        FcmCommand::Combine(args) => {
            let maps: Vec<Fcm> = args
                .matrix
                .iter()
                .map(|p| read_matrix(p).and_then(|m| Fcm::new(m).map_err(CliError::model)))
                .collect::<CliResult<_>>()?;
            let combined = fcm_combine(&maps).map_err(CliError::model)?;
            let doc = MatrixReportDoc::new("fcm combine", combined.adjacency());
            emit(&doc, format, no_header)
        }
        FcmCommand::Blocks(args) => {
            let mut blocks = Vec::new();
            for spec in &args.block {
                let (indices, path) = spec.split_once('=').ok_or_else(|| {
                    CliError::usage(format!("block {spec:?} must look like 1,6,7,12=matrix.csv"))
                })?;
                let positions = parse_usize_list(indices)?;
                if positions.contains(&0) {
                    return Err(CliError::usage("block positions are 1-based".to_string()));
                }
                let zero_based: Vec<usize> = positions.iter().map(|&p| p - 1).collect();
                blocks.push((zero_based, read_matrix(std::path::Path::new(path))?));
            }
            let map = fcm_assemble_blocks(args.n, &blocks).map_err(CliError::model)?;
            let doc = MatrixReportDoc::new("fcm blocks", map.adjacency());
            emit(&doc, format, no_header)
        }
    }
}

#[derive(Args, Debug)]
pub struct FcmCombineArgs {
    /// Adjacency matrix CSV; repeat once per expert
    #[arg(long, required = true)]
    pub matrix: Vec<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FcmBlocksArgs {
    /// Total node count of the assembled map
    #[arg(long)]
    pub n: usize,
    /// Block as 1-based positions and a matrix file: 1,6,7,12=block.csv
    #[arg(long, required = true)]
    pub block: Vec<String>,
}

/// Report that is just a matrix (combined maps, cuts, fits).
#[derive(Serialize)]
struct MatrixReportDoc {
    #[serde(skip)]
    name: &'static str,
    matrix: MatrixDoc,
    row_sums: Vec<f64>,
}

impl MatrixReportDoc {
    fn new(name: &'static str, m: &Matrix) -> Self {
        MatrixReportDoc {
            name,
            matrix: m.into(),
            row_sums: m.margins(Axis::Row),
        }
    }
}

impl Report for MatrixReportDoc {
    fn command(&self) -> &'static str {
        self.name
    }

    fn text_body(&self) -> String {
        let m = Matrix::from_rows(&self.matrix.data)
            .and_then(|m| {
                m.with_labels(
                    self.matrix.row_labels.clone(),
                    self.matrix.col_labels.clone(),
                )
            })
            .expect("doc holds a valid matrix");
        matrix_to_csv(&m)
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.row_sums.iter().enumerate() {
            series_row(&mut out, "row_sum", &(i + 1).to_string(), *v);
        }
        out
    }
}

// -------------------------------------------------------------- frm ----

#[derive(Subcommand, Debug)]
pub enum FrmCommand {
    /// Bidirectional run from a vector in either node space
    Run(FrmRunArgs),
    /// Sum relational matrices over shared node orderings
    Combine(FrmCombineArgs),
    /// Alpha-graded fuzzification of an average matrix
    Fuzzify(FrmFuzzifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Domain,
    Range,
}

#[derive(Args, Debug)]
pub struct FrmRunArgs {
    /// Relational matrix CSV (domain rows x range columns)
    #[arg(long)]
    pub matrix: PathBuf,
    /// 1-based positions switched on in the starting space
    #[arg(long)]
    pub on: String,
    #[arg(long, value_enum, default_value = "domain")]
    pub space: SpaceArg,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: usize,
}

#[derive(Serialize)]
struct FrmRunDoc {
    domain_len: usize,
    range_len: usize,
    start_space: String,
    kind: String,
    steps: usize,
    pairs: Vec<(Vec<u8>, Vec<u8>)>,
    terminal_pairs: Vec<(Vec<u8>, Vec<u8>)>,
}

impl Report for FrmRunDoc {
    fn command(&self) -> &'static str {
        "frm run"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "spaces: domain {} / range {}\n",
            self.domain_len, self.range_len
        ));
        out.push_str("pairs (domain | range):\n");
        for (d, r) in &self.pairs {
            out.push_str(&format!("  {} | {}\n", bits_line(d), bits_line(r)));
        }
        match self.kind.as_str() {
            "fixed_pair" => {
                let (d, r) = self.terminal_pairs.last().expect("fixed pair present");
                out.push_str(&format!(
                    "hidden pattern: fixed pair {} | {}\n",
                    bits_line(d),
                    bits_line(r)
                ));
            }
            _ => {
                out.push_str(&format!(
                    "hidden pattern: limit cycle of period {}\n",
                    self.terminal_pairs.len()
                ));
                for (d, r) in &self.terminal_pairs {
                    out.push_str(&format!("  {} | {}\n", bits_line(d), bits_line(r)));
                }
            }
        }
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for (step, (d, r)) in self.pairs.iter().enumerate() {
            let on = d.iter().chain(r).filter(|&&b| b == 1).count();
            series_row(&mut out, "on_count", &(step + 1).to_string(), on as f64);
        }
        out
    }
}

#[derive(Args, Debug)]
pub struct FrmCombineArgs {
    #[arg(long, required = true)]
    pub matrix: Vec<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FrmFuzzifyArgs {
    /// Matrix CSV of averaged observations (rows x attributes)
    #[arg(long)]
    pub matrix: PathBuf,
    /// Divide every entry by this before fuzzifying
    #[arg(long, default_value_t = 1.0)]
    pub divisor: f64,
    /// Comma-separated alpha grid
    #[arg(long)]
    pub alphas: String,
    #[arg(long, value_enum, default_value = "absdev")]
    pub sd_mode: SdModeArg,
}

#[derive(Serialize)]
struct FuzzifyStageDoc {
    alpha: f64,
    matrix: MatrixDoc,
    row_sums: Vec<f64>,
    grades: Vec<f64>,
}

#[derive(Serialize)]
struct FrmFuzzifyDoc {
    means: Vec<f64>,
    sds: Vec<f64>,
    stages: Vec<FuzzifyStageDoc>,
    combined: MatrixDoc,
    combined_row_sums: Vec<f64>,
    combined_grades: Vec<f64>,
}

impl Report for FrmFuzzifyDoc {
    fn command(&self) -> &'static str {
        "frm fuzzify"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("column means: {}\n", join_sig6(&self.means)));
        out.push_str(&format!("column sds: {}\n", join_sig6(&self.sds)));
        for stage in &self.stages {
            out.push_str(&format!(
                "alpha={}: row sums {} grades {}\n",
                sig6(stage.alpha),
                join_sig6(&stage.row_sums),
                join_sig6(&stage.grades)
            ));
        }
        out.push_str(&format!(
            "combined row sums: {}\n",
            join_sig6(&self.combined_row_sums)
        ));
        out.push_str(&format!(
            "combined grades: {}\n",
            join_sig6(&self.combined_grades)
        ));
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for stage in &self.stages {
            let name = format!("row_sum_alpha_{}", sig6(stage.alpha));
            for (i, v) in stage.row_sums.iter().enumerate() {
                series_row(&mut out, &name, &format!("R{}", i + 1), *v);
            }
        }
        for (i, v) in self.combined_row_sums.iter().enumerate() {
            series_row(&mut out, "combined_row_sum", &format!("R{}", i + 1), *v);
        }
        for (i, v) in self.combined_grades.iter().enumerate() {
            series_row(&mut out, "combined_grade", &format!("R{}", i + 1), *v);
        }
        out
    }
}

pub fn run_frm(cmd: &FrmCommand, format: Format, no_header: bool) -> CliResult<String> {
    match cmd {
        FrmCommand::Run(args) => {
            let relation = read_matrix(&args.matrix)?;
            let map = Frm::new(relation)
                .map_err(CliError::model)?
                .with_theta(args.theta);
            let space = match args.space {
                SpaceArg::Domain => Space::Domain,
                SpaceArg::Range => Space::Range,
            };
            let len = match space {
                Space::Domain => map.domain_len(),
                Space::Range => map.range_len(),
            };
            let on = parse_usize_list(&args.on)?;
            let initial = StateVector::from_on_positions(len, &on).map_err(CliError::model)?;
            let hp = frm_hidden_pattern(&map, &initial, space, args.max_steps)
                .map_err(CliError::model)?;
            let doc = FrmRunDoc {
                domain_len: map.domain_len(),
                range_len: map.range_len(),
                start_space: match space {
                    Space::Domain => "domain".to_string(),
                    Space::Range => "range".to_string(),
                },
                kind: match hp.kind {
                    PairKind::FixedPair => "fixed_pair".to_string(),
                    PairKind::LimitCycle => "limit_cycle".to_string(),
                },
                steps: hp.steps,
                pairs: hp
                    .pairs
                    .iter()
                    .map(|(d, r)| (state_doc(d), state_doc(r)))
                    .collect(),
                terminal_pairs: hp
                    .terminal_pairs
                    .iter()
                    .map(|(d, r)| (state_doc(d), state_doc(r)))
                    .collect(),
            };
            emit(&doc, format, no_header)
        }
        FrmCommand::Combine(args) => {
            let maps: Vec<Frm> = args
                .matrix
                .iter()
                .map(|p| read_matrix(p).and_then(|m| Frm::new(m).map_err(CliError::model)))
                .collect::<CliResult<_>>()?;
            let combined = frm_combine(&maps).map_err(CliError::model)?;
            let doc = MatrixReportDoc::new("frm combine", combined.relation());
            emit(&doc, format, no_header)
        }
        FrmCommand::Fuzzify(args) => {
            let matrix = read_matrix(&args.matrix)?;
            let avg = average_matrix(&matrix, args.divisor).map_err(CliError::model)?;
            let alphas = parse_f64_list(&args.alphas)?;
            if alphas.is_empty() {
                return Err(CliError::usage("no alpha values given".to_string()));
            }
            let stats = fuzzy_models::cetd::column_stats(&avg, args.sd_mode.into())
                .map_err(CliError::model)?;
            let mut stages = Vec::new();
            for &alpha in &alphas {
                let b = frm_fuzzify(&avg, &stats, alpha).map_err(CliError::model)?;
                let row_sums = b.margins(Axis::Row);
                let grades = frm_membership_grades(&row_sums).map_err(CliError::model)?;
                stages.push(FuzzifyStageDoc {
                    alpha,
                    matrix: (&b).into(),
                    row_sums,
                    grades,
                });
            }
            let combined = frm_combined_fuzzy(&avg, &stats, &alphas).map_err(CliError::model)?;
            let doc = FrmFuzzifyDoc {
                means: stats.means.clone(),
                sds: stats.sds.clone(),
                stages,
                combined: (&combined.matrix).into(),
                combined_row_sums: combined.row_sums.clone(),
                combined_grades: combined.grades.clone(),
            };
            emit(&doc, format, no_header)
        }
    }
}

// -------------------------------------------------------------- bam ----

#[derive(Subcommand, Debug)]
pub enum BamCommand {
    /// Synchronous run to the bidirectional fixed pair
    Run(BamRunArgs),
    /// Indirect coupling of two memories through a shared field
    Indirect(BamIndirectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    X,
    Y,
}

#[derive(Args, Debug)]
pub struct BamRunArgs {
    /// Synaptic matrix CSV (x rows by y columns)
    #[arg(long)]
    pub matrix: PathBuf,
    /// Comma-separated raw activation for the starting side
    #[arg(long, allow_hyphen_values = true)]
    pub initial: String,
    #[arg(long, value_enum, default_value = "x")]
    pub side: SideArg,
    /// Expert scale bound c; entries must satisfy |m| <= c
    #[arg(long, default_value_t = 5.0)]
    pub scale: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: usize,
}

#[derive(Serialize)]
struct BamStepDoc {
    side: String,
    activation: Vec<f64>,
    x_signal: Vec<u8>,
    y_signal: Vec<u8>,
}

#[derive(Serialize)]
struct BamRunDoc {
    x_len: usize,
    y_len: usize,
    settle_step: usize,
    steps: Vec<BamStepDoc>,
    fixed_x: Vec<u8>,
    fixed_y: Vec<u8>,
}

impl Report for BamRunDoc {
    fn command(&self) -> &'static str {
        "bam run"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("fields: x {} / y {}\n", self.x_len, self.y_len));
        out.push_str("steps:\n");
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "  {} -> {}: activation {}\n",
                i + 1,
                s.side,
                join_sig6(&s.activation)
            ));
        }
        out.push_str(&format!(
            "fixed pair: ({}) | ({})\n",
            bits_line(&self.fixed_x),
            bits_line(&self.fixed_y)
        ));
        out.push_str(&format!("settled at step: {}\n", self.settle_step));
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let on = s
                .x_signal
                .iter()
                .chain(&s.y_signal)
                .filter(|&&b| b == 1)
                .count();
            series_row(&mut out, "on_count", &(i + 1).to_string(), on as f64);
        }
        out
    }
}

#[derive(Args, Debug)]
pub struct BamIndirectArgs {
    /// Synaptic matrix of the first memory
    #[arg(long)]
    pub left: PathBuf,
    /// Synaptic matrix of the second memory
    #[arg(long)]
    pub right: PathBuf,
    #[arg(long, default_value_t = 5.0)]
    pub scale_left: f64,
    #[arg(long, default_value_t = 5.0)]
    pub scale_right: f64,
}

#[derive(Serialize)]
struct BamIndirectDoc {
    matrix: MatrixDoc,
    bound: f64,
}

impl Report for BamIndirectDoc {
    fn command(&self) -> &'static str {
        "bam indirect"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scale bound: {}\n", sig6(self.bound)));
        out.push_str("indirect matrix:\n");
        for row in &self.matrix.data {
            out.push_str("  ");
            out.push_str(&join_sig6(row));
            out.push('\n');
        }
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.matrix.data.iter().enumerate() {
            series_row(&mut out, "row_sum", &(i + 1).to_string(), row.iter().sum());
        }
        out
    }
}

pub fn run_bam(cmd: &BamCommand, format: Format, no_header: bool) -> CliResult<String> {
    match cmd {
        BamCommand::Run(args) => {
            let synaptic = read_matrix(&args.matrix)?;
            let model = BamModel::new(synaptic, args.scale).map_err(CliError::model)?;
            let initial = parse_f64_list(&args.initial)?;
            let side = match args.side {
                SideArg::X => Side::X,
                SideArg::Y => Side::Y,
            };
            let trace = bam_run(&model, &initial, side, args.max_steps).map_err(CliError::model)?;
            let doc = BamRunDoc {
                x_len: model.x_len(),
                y_len: model.y_len(),
                settle_step: trace.settle_step,
                steps: trace
                    .steps
                    .iter()
                    .map(|s| BamStepDoc {
                        side: match s.side {
                            Side::X => "x".to_string(),
                            Side::Y => "y".to_string(),
                        },
                        activation: s.activation.clone(),
                        x_signal: state_doc(&s.signals.0),
                        y_signal: state_doc(&s.signals.1),
                    })
                    .collect(),
                fixed_x: state_doc(&trace.fixed_pair.0),
                fixed_y: state_doc(&trace.fixed_pair.1),
            };
            emit(&doc, format, no_header)
        }
        BamCommand::Indirect(args) => {
            let left = BamModel::new(read_matrix(&args.left)?, args.scale_left)
                .map_err(CliError::model)?;
            let right = BamModel::new(read_matrix(&args.right)?, args.scale_right)
                .map_err(CliError::model)?;
            let ind = bam_indirect(&left, &right).map_err(CliError::model)?;
            let doc = BamIndirectDoc {
                matrix: (&ind.matrix).into(),
                bound: ind.bound,
            };
            emit(&doc, format, no_header)
        }
    }
}

// -------------------------------------------------------------- fam ----

#[derive(Subcommand, Debug)]
pub enum FamCommand {
    /// Max-min recall through a fuzzy rule matrix
    Recall(FamRecallArgs),
}

#[derive(Args, Debug)]
pub struct FamRecallArgs {
    /// Fuzzy rule matrix CSV (rows: outputs, columns: causes)
    #[arg(long)]
    pub matrix: PathBuf,
    /// Column-side fit vector: recalls the row side (backward)
    #[arg(long, conflicts_with = "a")]
    pub b: Option<String>,
    /// Row-side fit vector: recalls the column side (forward)
    #[arg(long)]
    pub a: Option<String>,
}

#[derive(Serialize)]
struct FamRecallDoc {
    direction: String,
    fit: Vec<f64>,
    recalled: Vec<f64>,
    ranked: Vec<(String, f64)>,
}

impl Report for FamRecallDoc {
    fn command(&self) -> &'static str {
        "fam recall"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("direction: {}\n", self.direction));
        out.push_str(&format!("fit: {}\n", join_sig6(&self.fit)));
        out.push_str(&format!("recalled: {}\n", join_sig6(&self.recalled)));
        out.push_str("ranked:\n");
        for (label, value) in &self.ranked {
            out.push_str(&format!("  {label}: {}\n", sig6(*value)));
        }
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for (label, value) in &self.ranked {
            series_row(&mut out, "recall", label, *value);
        }
        out
    }
}

pub fn run_fam(cmd: &FamCommand, format: Format, no_header: bool) -> CliResult<String> {
    let FamCommand::Recall(args) = cmd;
    let matrix = read_matrix(&args.matrix)?;
    let row_labels: Vec<String> = matrix
        .row_labels()
        .map(|l| l.to_vec())
        .unwrap_or_else(|| (1..=matrix.rows()).map(|i| format!("W{i}")).collect());
    let col_labels: Vec<String> = matrix
        .col_labels()
        .map(|l| l.to_vec())
        .unwrap_or_else(|| (1..=matrix.cols()).map(|j| format!("R{j}")).collect());
    let model = FamModel::new(matrix).map_err(CliError::model)?;
    let (direction, fit, recalled, labels) = match (&args.b, &args.a) {
        (Some(b), None) => {
            let fit = parse_f64_list(b)?;
            let recalled = fam_backward(&model, &fit).map_err(CliError::model)?;
            ("backward".to_string(), fit, recalled, row_labels)
        }
        (None, Some(a)) => {
            let fit = parse_f64_list(a)?;
            let recalled = fam_forward(&model, &fit).map_err(CliError::model)?;
            ("forward".to_string(), fit, recalled, col_labels)
        }
        _ => {
            return Err(CliError::usage(
                "give exactly one of --b (backward) or --a (forward)".to_string(),
            ))
        }
    };
    let ranked = fam_rank(&recalled, &labels).map_err(CliError::model)?;
    let doc = FamRecallDoc {
        direction,
        fit,
        recalled,
        ranked,
    };
    emit(&doc, format, no_header)
}

// -------------------------------------------------------------- fre ----

#[derive(Subcommand, Debug)]
pub enum FreCommand {
    /// Maximal solution of p o Q = r under max-min
    Solve(FreSolveArgs),
    /// Residual of compose(P, Q) against R
    Verify(FreVerifyArgs),
    /// Closed-form max-product fit of P for P o q = r
    Fit(FreFitArgs),
    /// Partitioned fits with one preferred index per partition
    Peaks(FrePeaksArgs),
}

#[derive(Args, Debug)]
pub struct FreSolveArgs {
    /// Relation matrix Q (m x s)
    #[arg(long)]
    pub q: PathBuf,
    /// Target vector r (length s), as a one-row or one-column CSV
    #[arg(long)]
    pub r: PathBuf,
}

#[derive(Serialize)]
struct FreSolveDoc {
    necessary_check: bool,
    p_hat: Vec<f64>,
    solvable: bool,
    residual: f64,
}

impl Report for FreSolveDoc {
    fn command(&self) -> &'static str {
        "fre solve"
    }

    fn text_body(&self) -> String {
        format!(
            "necessary check: {}\np_hat: {}\nsolvable: {}\nresidual: {}\n",
            self.necessary_check,
            join_sig6(&self.p_hat),
            self.solvable,
            sig6(self.residual)
        )
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for (j, v) in self.p_hat.iter().enumerate() {
            series_row(&mut out, "p_hat", &(j + 1).to_string(), *v);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompositionArg {
    #[value(name = "max-min")]
    MaxMin,
    #[value(name = "max-product")]
    MaxProduct,
}

#[derive(Args, Debug)]
pub struct FreVerifyArgs {
    #[arg(long)]
    pub p: PathBuf,
    #[arg(long)]
    pub q: PathBuf,
    #[arg(long)]
    pub r: PathBuf,
    #[arg(long, value_enum, default_value = "max-min")]
    pub composition: CompositionArg,
}

#[derive(Serialize)]
struct FreVerifyDoc {
    composition: String,
    residual: f64,
    composed: MatrixDoc,
}

impl Report for FreVerifyDoc {
    fn command(&self) -> &'static str {
        "fre verify"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("composition: {}\n", self.composition));
        out.push_str("composed:\n");
        for row in &self.composed.data {
            out.push_str("  ");
            out.push_str(&join_sig6(row));
            out.push('\n');
        }
        out.push_str(&format!("residual: {}\n", sig6(self.residual)));
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        series_row(&mut out, "residual", "max", self.residual);
        out
    }
}

#[derive(Args, Debug)]
pub struct FreFitArgs {
    /// Positive input vector q, as a one-row or one-column CSV
    #[arg(long)]
    pub q: PathBuf,
    /// Target vector r
    #[arg(long)]
    pub r: PathBuf,
}

#[derive(Args, Debug)]
pub struct FrePeaksArgs {
    #[arg(long)]
    pub q: PathBuf,
    #[arg(long)]
    pub r: PathBuf,
    /// Consecutive chunk size; must divide the (selected) length evenly
    #[arg(long)]
    pub chunks: usize,
    /// Skip this many leading elements before chunking
    #[arg(long, default_value_t = 0)]
    pub skip: usize,
    /// Use only this many elements after the skip
    #[arg(long)]
    pub take: Option<usize>,
}

#[derive(Serialize)]
struct PeakDoc {
    indices: Vec<usize>,
    peak_index: usize,
    peak_value: f64,
    fit_residual: f64,
}

#[derive(Serialize)]
struct FrePeaksDoc {
    chunk_size: usize,
    peaks: Vec<PeakDoc>,
}

impl Report for FrePeaksDoc {
    fn command(&self) -> &'static str {
        "fre peaks"
    }

    fn text_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("chunk size: {}\n", self.chunk_size));
        for (i, p) in self.peaks.iter().enumerate() {
            out.push_str(&format!(
                "partition {}: elements {}..{} peak at element {} value {}\n",
                i + 1,
                p.indices.first().unwrap() + 1,
                p.indices.last().unwrap() + 1,
                p.peak_index + 1,
                sig6(p.peak_value)
            ));
        }
        out
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for p in &self.peaks {
            series_row(
                &mut out,
                "peak",
                &(p.peak_index + 1).to_string(),
                p.peak_value,
            );
        }
        out
    }
}

pub fn run_fre(cmd: &FreCommand, format: Format, no_header: bool) -> CliResult<String> {
    match cmd {
        FreCommand::Solve(args) => {
            let q = read_matrix(&args.q)?;
            let r = read_vector(&args.r)?;
            let necessary =
                fuzzy_models::fre::fre_necessary_check(&q, &r).map_err(CliError::model)?;
            let sol = fre_max_solution(&q, &r).map_err(CliError::model)?;
            let doc = FreSolveDoc {
                necessary_check: necessary,
                p_hat: sol.p_hat,
                solvable: sol.solvable,
                residual: sol.residual,
            };
            emit(&doc, format, no_header)
        }
        FreCommand::Verify(args) => {
            let p = read_matrix(&args.p)?;
            let q = read_matrix(&args.q)?;
            let r = read_matrix(&args.r)?;
            let composition = match args.composition {
                CompositionArg::MaxMin => Composition::MaxMin,
                CompositionArg::MaxProduct => Composition::MaxProduct,
            };
            let residual = fre_verify(&p, &q, &r, composition).map_err(CliError::model)?;
            let composed = match composition {
                Composition::MaxMin => p.compose_max_min(&q),
                Composition::MaxProduct => p.compose_max_product(&q),
            }
            .map_err(CliError::model)?;
            let doc = FreVerifyDoc {
                composition: match composition {
                    Composition::MaxMin => "max-min".to_string(),
                    Composition::MaxProduct => "max-product".to_string(),
                },
                residual,
                composed: (&composed).into(),
            };
            emit(&doc, format, no_header)
        }
        FreCommand::Fit(args) => {
            let q = read_vector(&args.q)?;
            let r = read_vector(&args.r)?;
            let fitted = fre_fit_max_product(&q, &r).map_err(CliError::model)?;
            let doc = MatrixReportDoc::new("fre fit", &fitted);
            emit(&doc, format, no_header)
        }
        FreCommand::Peaks(args) => {
            let q_full = read_vector(&args.q)?;
            let r_full = read_vector(&args.r)?;
            if q_full.len() != r_full.len() {
                return Err(CliError::usage(format!(
                    "q has {} elements but r has {}",
                    q_full.len(),
                    r_full.len()
                )));
            }
            let end = match args.take {
                Some(take) => (args.skip + take).min(q_full.len()),
                None => q_full.len(),
            };
            if args.skip >= end {
                return Err(CliError::usage("skip/take select no elements".to_string()));
            }
            let q = &q_full[args.skip..end];
            let r = &r_full[args.skip..end];
            let peaks = fre_partition_peaks(q, r, &PartitionScheme::EqualChunks(args.chunks))
                .map_err(CliError::model)?;
            let docs = peaks
                .iter()
                .map(|p| {
                    let q_part: Vec<f64> = p.indices.iter().map(|&i| q[i]).collect();
                    let r_part: Vec<f64> = p.indices.iter().map(|&i| r[i]).collect();
                    let residual = fre_verify(
                        &p.fitted,
                        &Matrix::column_vector(&q_part).expect("partition is non-empty"),
                        &Matrix::column_vector(&r_part).expect("partition is non-empty"),
                        Composition::MaxProduct,
                    )
                    .map_err(CliError::model)?;
                    Ok(PeakDoc {
                        indices: p.indices.iter().map(|i| i + args.skip).collect(),
                        peak_index: p.peak_index + args.skip,
                        peak_value: p.peak_value,
                        fit_residual: residual,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let doc = FrePeaksDoc {
                chunk_size: args.chunks,
                peaks: docs,
            };
            emit(&doc, format, no_header)
        }
    }
}

// -------------------------------------------------------------- rel ----

#[derive(Subcommand, Debug)]
pub enum RelCommand {
    /// Domain/range projections and height of a fuzzy relation
    Summary(RelMatrixArgs),
    /// Crisp alpha-cut of a fuzzy relation
    Cut(RelCutArgs),
    /// Structural predicates of a square fuzzy relation
    Props(RelPropsArgs),
}

#[derive(Args, Debug)]
pub struct RelMatrixArgs {
    #[arg(long)]
    pub matrix: PathBuf,
}

#[derive(Args, Debug)]
pub struct RelCutArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub alpha: f64,
}

#[derive(Args, Debug)]
pub struct RelPropsArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// Reflexivity threshold; 1 means strict reflexivity
    #[arg(long, default_value_t = 1.0)]
    pub reflexive_eps: f64,
}

#[derive(Serialize)]
struct RelSummaryDoc {
    dom: Vec<f64>,
    ran: Vec<f64>,
    height: f64,
}

impl Report for RelSummaryDoc {
    fn command(&self) -> &'static str {
        "rel summary"
    }

    fn text_body(&self) -> String {
        format!(
            "dom: {}\nran: {}\nheight: {}\n",
            join_sig6(&self.dom),
            join_sig6(&self.ran),
            sig6(self.height)
        )
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.dom.iter().enumerate() {
            series_row(&mut out, "dom", &format!("x{}", i + 1), *v);
        }
        for (j, v) in self.ran.iter().enumerate() {
            series_row(&mut out, "ran", &format!("y{}", j + 1), *v);
        }
        series_row(&mut out, "height", "max", self.height);
        out
    }
}

#[derive(Serialize)]
struct RelPropsDoc {
    reflexive: bool,
    anti_reflexive: bool,
    symmetric: bool,
    max_min_transitive: bool,
    compatibility: bool,
    similarity: bool,
}

impl Report for RelPropsDoc {
    fn command(&self) -> &'static str {
        "rel props"
    }

    fn text_body(&self) -> String {
        format!(
            "reflexive: {}\nanti-reflexive: {}\nsymmetric: {}\nmax-min transitive: {}\ncompatibility: {}\nsimilarity: {}\n",
            self.reflexive,
            self.anti_reflexive,
            self.symmetric,
            self.max_min_transitive,
            self.compatibility,
            self.similarity
        )
    }

    fn series_body(&self) -> String {
        let mut out = String::new();
        let flags = [
            ("reflexive", self.reflexive),
            ("anti_reflexive", self.anti_reflexive),
            ("symmetric", self.symmetric),
            ("max_min_transitive", self.max_min_transitive),
            ("compatibility", self.compatibility),
            ("similarity", self.similarity),
        ];
        for (name, value) in flags {
            series_row(&mut out, "flag", name, if value { 1.0 } else { 0.0 });
        }
        out
    }
}

pub fn run_rel(cmd: &RelCommand, format: Format, no_header: bool) -> CliResult<String> {
    match cmd {
        RelCommand::Summary(args) => {
            let m = read_matrix(&args.matrix)?;
            let s = relation_summary(&m).map_err(CliError::model)?;
            let doc = RelSummaryDoc {
                dom: s.dom,
                ran: s.ran,
                height: s.height,
            };
            emit(&doc, format, no_header)
        }
        RelCommand::Cut(args) => {
            let m = read_matrix(&args.matrix)?;
            let cut = alpha_cut(&m, args.alpha).map_err(CliError::model)?;
            let doc = MatrixReportDoc::new("rel cut", &cut);
            emit(&doc, format, no_header)
        }
        RelCommand::Props(args) => {
            let m = read_matrix(&args.matrix)?;
            let p = relation_properties_with(&m, args.reflexive_eps).map_err(CliError::model)?;
            let doc = RelPropsDoc {
                reflexive: p.reflexive,
                anti_reflexive: p.anti_reflexive,
                symmetric: p.symmetric,
                max_min_transitive: p.max_min_transitive,
                compatibility: p.compatibility,
                similarity: p.similarity,
            };
            emit(&doc, format, no_header)
        }
    }
}
