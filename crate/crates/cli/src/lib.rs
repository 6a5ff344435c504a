//! Argument parsing and dispatch for the `dieudonne` binary.
//!
//! [`run`] takes the argument list and two sinks and returns the process exit
//! code, so the whole front end can be driven from tests without spawning.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation failure, 3 infeasible
//! request.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use dieudonne::constructions::{self, ProfileQuery};
use dieudonne::curves::{self, PoleDivisor};
use dieudonne::eo;
use dieudonne::json::{module_from_json, module_to_json};
use dieudonne::kraft::{self, census_invariants, decompose, full_invariants};
use dieudonne::{CyclicWord, DieudonneModule, EoType, InvariantBundle, PrimeField, WordCensus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dieudonne", version, about = "Mod-p Dieudonne modules, EO types and superspecial rank")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ekedahl-Oort types
    #[command(subcommand)]
    Eo(EoCmd),
    /// Inspect a module given as JSON
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Construct modules
    #[command(subcommand)]
    Build(BuildCmd),
    /// Curve applications
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Tables over all types of a genus
    #[command(subcommand)]
    Table(TableCmd),
}

#[derive(Subcommand, Debug)]
enum EoCmd {
    /// All 2^g types of genus g with f, a, s and the word census
    List {
        #[arg(long)]
        g: usize,
        /// Comma-separated constraints such as f=0,a=2
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Standard module of a type
    Module {
        #[arg(long, value_delimiter = ',', required = true)]
        nu: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
}

#[derive(Subcommand, Debug)]
enum ModuleCmd {
    /// p-rank, a-number, s and u
    Invariants(InFile),
    /// Word census
    Decompose(InFile),
    /// BT1 and polarization axioms
    Check(InFile),
    /// Attach a polarization found by search
    Polarize(InFile),
}

#[derive(Args, Debug)]
struct InFile {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    /// Module of a cyclic word
    Word {
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// E/E(F^r + V^s)
    Jrs {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// A polarized module with prescribed (g, f, a, s)
    Profile {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// A p-rank 0 module of genus g with superspecial rank s
    Ss {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    /// y^2 + y = h(x) in characteristic 2, from the pole orders of h
    Hyp2 {
        #[arg(long)]
        poles: String,
        /// Also decompose the model module and compare
        #[arg(long)]
        oracle: bool,
    },
    /// The Hermitian curve over F_{p^n}
    Hermitian {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
enum TableCmd {
    /// Feasible (f, a, s) for genus g
    Feasibility {
        #[arg(long)]
        g: usize,
    },
    /// CSV of every type for g = 1..=g-max
    Atlas {
        #[arg(long = "g-max")]
        g_max: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
pub enum CliError {
    Core(dieudonne::Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(dieudonne::Error::Infeasible(_)) => EXIT_INFEASIBLE,
            CliError::Core(_) | CliError::Io(_) => EXIT_INVALID,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(e) => write!(f, "{e}"),
        }
    }
}

impl From<dieudonne::Error> for CliError {
    fn from(e: dieudonne::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// One line of the EO atlas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub g: usize,
    pub nu: EoType,
    pub f: usize,
    pub a: usize,
    pub s: usize,
    pub words: WordCensus,
}

impl AtlasRow {
    pub fn compute(t: &EoType) -> dieudonne::Result<AtlasRow> {
        let m = eo::canonical_module(t, PrimeField::gf2())?;
        let words = decompose(&m)?;
        let inv = census_invariants(&words)?;
        Ok(AtlasRow {
            g: t.g(),
            nu: t.clone(),
            f: inv.f,
            a: inv.a,
            s: inv.s.unwrap_or(0),
            words,
        })
    }

    pub fn csv_record(&self) -> [String; 6] {
        let nu: Vec<String> = self.nu.nu().iter().map(|x| x.to_string()).collect();
        [
            self.g.to_string(),
            nu.join(";"),
            self.f.to_string(),
            self.a.to_string(),
            self.s.to_string(),
            self.words.to_compact_string(),
        ]
    }
}

pub const ATLAS_HEADER: [&str; 6] = ["g", "nu", "f", "a", "s", "words"];

/// Rows for every type of genus `1..=g_max`, ordered by genus and then `ν`.
pub fn atlas_rows(g_max: usize, jobs: Option<usize>) -> CliResult<Vec<AtlasRow>> {
    let types: Vec<EoType> = (1..=g_max).flat_map(eo::enumerate).collect();
    rows_for(&types, jobs)
}

fn rows_for(types: &[EoType], jobs: Option<usize>) -> CliResult<Vec<AtlasRow>> {
    let work = || -> dieudonne::Result<Vec<AtlasRow>> { types.par_iter().map(AtlasRow::compute).collect() };
    let rows = match jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Io(e.to_string()))?
            .install(work),
        None => work(),
    };
    Ok(rows?)
}

pub fn write_atlas_csv<W: Write>(rows: &[AtlasRow], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(ATLAS_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(r.csv_record()).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

#[derive(Default, Debug, Clone, Copy, PartialEq, Eq)]
struct Filter {
    f: Option<usize>,
    a: Option<usize>,
    s: Option<usize>,
}

impl Filter {
    fn parse(text: &str) -> CliResult<Filter> {
        let mut out = Filter::default();
        for part in text.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("filter term {part:?} is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("filter value {value:?} is not a number")))?;
            let slot = match key.trim() {
                "f" => &mut out.f,
                "a" => &mut out.a,
                "s" => &mut out.s,
                other => return Err(CliError::Usage(format!("unknown filter key {other:?}"))),
            };
            *slot = Some(value);
        }
        Ok(out)
    }

    fn accepts(&self, row: &AtlasRow) -> bool {
        self.f.is_none_or(|f| f == row.f) && self.a.is_none_or(|a| a == row.a) && self.s.is_none_or(|s| s == row.s)
    }
}

fn field(p: u32) -> CliResult<PrimeField> {
    Ok(PrimeField::new(p)?)
}

fn read_module(path: &Path) -> CliResult<DieudonneModule> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(module_from_json(&text)?)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string(value).map_err(|e| CliError::Io(e.to_string()))?;
    emit_line(out, &text)
}

fn emit_line(out: &mut dyn Write, line: &str) -> CliResult<()> {
    writeln!(out, "{line}").map_err(|e| CliError::Io(e.to_string()))
}

#[derive(Serialize)]
struct CheckReport {
    bt1: bool,
    form: &'static str,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct OracleReport {
    #[serde(flatten)]
    report: curves::HyperellipticReport,
    oracle: InvariantBundle,
    oracle_words: WordCensus,
    agrees: bool,
}

#[derive(Serialize)]
struct AtlasSummary {
    rows: usize,
    path: String,
}

#[derive(Serialize)]
struct Profile {
    f: usize,
    a: usize,
    s: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Eo(EoCmd::List { g, filter, format, jobs }) => {
            if g == 0 {
                return Err(CliError::Usage("--g must be positive".into()));
            }
            let filter = filter.as_deref().map(Filter::parse).transpose()?.unwrap_or_default();
            let types: Vec<EoType> = eo::enumerate(g).collect();
            let rows: Vec<AtlasRow> = rows_for(&types, jobs)?.into_iter().filter(|r| filter.accepts(r)).collect();
            match format {
                Format::Json => emit(out, &rows)?,
                Format::Csv => write_atlas_csv(&rows, out)?,
            }
        }
        Command::Eo(EoCmd::Module { nu, p }) => {
            let t = EoType::new(nu)?;
            emit_line(out, &module_to_json(&eo::canonical_module(&t, field(p)?)?))?;
        }
        Command::Module(ModuleCmd::Invariants(file)) => {
            let m = read_module(&file.input)?;
            emit(out, &full_invariants(&m)?)?;
        }
        Command::Module(ModuleCmd::Decompose(file)) => {
            let m = read_module(&file.input)?;
            if !m.is_bt1() {
                return Err(dieudonne::Error::NotBt1(m.validate_bt1()).into());
            }
            emit(out, &decompose(&m)?)?;
        }
        Command::Module(ModuleCmd::Check(file)) => {
            let m = read_module(&file.input)?;
            let violations = m.validate_bt1();
            let bt1 = violations.iter().all(|v| m.form_violations().contains(v));
            let form = match (m.form(), m.form_violations().is_empty()) {
                (None, _) => "absent",
                (Some(_), true) => "valid",
                (Some(_), false) => "invalid",
            };
            let ok = violations.is_empty();
            emit(
                out,
                &CheckReport {
                    bt1,
                    form,
                    violations: violations.iter().map(|v| v.to_string()).collect(),
                },
            )?;
            if !ok {
                return Ok(EXIT_INVALID);
            }
        }
        Command::Module(ModuleCmd::Polarize(file)) => {
            let m = read_module(&file.input)?;
            if !m.validate_bt1().iter().all(|v| m.form_violations().contains(v)) {
                return Err(dieudonne::Error::NotBt1(m.validate_bt1()).into());
            }
            emit_line(out, &module_to_json(&m.without_form().polarized()?))?;
        }
        Command::Build(BuildCmd::Word { w, p }) => {
            let word: CyclicWord = w.parse()?;
            emit_line(out, &module_to_json(&kraft::word_module(&word, field(p)?)))?;
        }
        Command::Build(BuildCmd::Jrs { r, s, p }) => {
            emit_line(out, &module_to_json(&constructions::j_rs(r, s, field(p)?)?))?;
        }
        Command::Build(BuildCmd::Profile { g, f, a, s, p }) => {
            let m = constructions::realize(ProfileQuery::new(g, f, a, s), field(p)?)?;
            emit_line(out, &module_to_json(&m))?;
        }
        Command::Build(BuildCmd::Ss { g, s, p }) => {
            let m = constructions::supersingular_profile(g, s, field(p)?)?;
            emit_line(out, &module_to_json(&m))?;
        }
        Command::Curve(CurveCmd::Hyp2 { poles, oracle }) => {
            let d: PoleDivisor = poles.parse()?;
            let report = curves::hyp2_analyze(&d)?;
            if oracle {
                let m = curves::hyp2_module_oracle(&d)?;
                let inv = full_invariants(&m)?;
                let agrees = inv.s == Some(report.s) && inv.f == report.f && inv.g as u64 == report.g;
                let oracle_words = decompose(&m)?;
                emit(
                    out,
                    &OracleReport {
                        report,
                        oracle: inv,
                        oracle_words,
                        agrees,
                    },
                )?;
                if !agrees {
                    return Ok(EXIT_INVALID);
                }
            } else {
                emit(out, &report)?;
            }
        }
        Command::Curve(CurveCmd::Hermitian { p, n }) => {
            emit(out, &curves::hermitian_analyze(p, n)?)?;
        }
        Command::Table(TableCmd::Feasibility { g }) => {
            let mut rows = Vec::new();
            for f in 0..=g {
                for a in 0..=g {
                    for s in 0..=g {
                        if constructions::feasible(ProfileQuery::new(g, f, a, s)) {
                            rows.push(Profile { f, a, s });
                        }
                    }
                }
            }
            emit(out, &rows)?;
        }
        Command::Table(TableCmd::Atlas { g_max, out: path, jobs }) => {
            if g_max == 0 {
                return Err(CliError::Usage("--g-max must be positive".into()));
            }
            let rows = atlas_rows(g_max, jobs)?;
            let file = std::fs::File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            write_atlas_csv(&rows, std::io::BufWriter::new(file))?;
            emit(
                out,
                &AtlasSummary {
                    rows: rows.len(),
                    path: path.display().to_string(),
                },
            )?;
        }
    }
    Ok(EXIT_OK)
}
