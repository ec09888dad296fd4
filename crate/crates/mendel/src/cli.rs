//! Argument parsing and the four subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mendel_core::algebra::{AbelianGroup, AlgebraError};
use mendel_core::constructions::{
    affine_mendelsohn, anti_double, anti_double_oriented, char2_mendelsohn, field_mendelsohn,
    netto_sts, projective_sts, spectrum_construct, spectrum_offender, steiner_affine,
    ConstructionError,
};
use mendel_core::designs::{
    doubled, find_mitre, is_proper, mts_to_quasigroup, quasigroup_to_mts, quasigroup_to_sts,
    sts_to_quasigroup, OrderCheck,
};
use mendel_core::enumeration::{
    count_affine, count_non_affine, representative_tables, EnumerationConfig, EnumerationError,
    Solver, DEFAULT_PRIME_POWER_BOUND, DEFAULT_SOLUTION_CAP,
};
use mendel_core::moufang::is_commutative_moufang;
use mendel_core::quasigroup::{
    belousov_distributive, check_commutative, check_idempotent, check_left_distributive,
    check_medial, check_right_distributive, check_semisymmetric, is_antidistributive,
    AntiDistributiveMode, AntiDistributivity, DistributiveLaw, Law,
};
use mendel_core::{Budget, CayleyTable, GroupAutomorphism, DEFAULT_SEARCH_BUDGET};
use thiserror::Error;

use crate::format::{parse, parse_oriented_sts, Document, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CONSTRUCTION: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Constructions, verification and enumeration of Mendelsohn and Steiner
/// triple systems.
///
/// Exit codes: 0 success, 1 invalid parameters or unreadable input,
/// 2 construction error, 3 a requested property fails, 4 search budget
/// exceeded.
#[derive(Debug, Parser)]
#[command(name = "mendel", version)]
pub struct Cli {
    /// Worker threads for the parallel scans (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Check both distributive laws on every triple when testing
    /// anti-distributivity.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Node budget for backtracking searches.
    #[arg(
        long,
        global = true,
        env = "MENDEL_SEARCH_BUDGET",
        default_value_t = DEFAULT_SEARCH_BUDGET,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub budget: u64,
    /// Accept triple-system files whose order admits no such system.
    #[arg(long, global = true)]
    pub allow_bad_order: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a quasigroup or triple system and write its canonical file.
    Construct(ConstructArgs),
    /// Check properties of a QG, MTS, STS or LOOP file.
    Verify(VerifyArgs),
    /// Count affine distributive Mendelsohn quasigroups of order v.
    Enumerate(EnumerateArgs),
    /// Decide whether a distributive MTS(v) exists.
    Spectrum {
        #[arg(long)]
        v: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Aff(G, k) from --group and --matrix.
    Affine,
    /// Multiplication by a sixth root of unity in GF(p^d).
    Field,
    /// Multiplication by a cube root of unity in GF(4^d).
    Char2,
    /// The Steiner quasigroup on Z_3^d.
    Steiner,
    /// A distributive MTS(v) built from prime-power factors.
    Spectrum,
    /// The Netto STS on GF(p^d).
    Netto,
    /// The projective STS PG(n-1, 2).
    Projective,
    /// The anti-distributive doubling of an STS read from --input.
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    /// Block file (MTS or STS).
    #[default]
    Blocks,
    /// Cayley table (QG).
    Table,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub v: Option<u64>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Cyclic factor orders, e.g. `3x3` or `7`.
    #[arg(long)]
    pub group: Option<String>,
    /// Matrix rows separated by `;`, entries by `,`, e.g. `2,1;0,2`.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// STS file for `double`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// STS file for `double` whose blocks, as written, give the cyclic
    /// orientation of each block. Replaces --input.
    #[arg(long, conflicts_with = "input")]
    pub orientation: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Write here instead of stdout; the summary then goes to stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Idempotent,
    Commutative,
    Semisymmetric,
    TotallySymmetric,
    Medial,
    LeftDistributive,
    RightDistributive,
    Distributive,
    /// Every 3-generated subquasigroup is medial.
    Belousov,
    Mendelsohn,
    Steiner,
    Antidistributive,
    Proper,
    AntiMitre,
    /// The table is a commutative Moufang loop (LOOP files only).
    Moufang,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Properties to check; comma-separated or repeated. Without any, a
    /// default set is reported and the exit code is 0.
    #[arg(long = "property", short = 'p', value_enum, value_delimiter = ',')]
    pub properties: Vec<Property>,
    /// Write the canonical form of the input here.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SolverArg {
    #[default]
    Structured,
    Brute,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub v: u64,
    #[arg(long, value_enum, default_value_t)]
    pub solver: SolverArg,
    /// Largest prime-power part of v to enumerate.
    #[arg(long, default_value_t = DEFAULT_PRIME_POWER_BOUND)]
    pub prime_power_bound: u64,
    /// Largest number of solutions listed for one group.
    #[arg(long, default_value_t = DEFAULT_SOLUTION_CAP)]
    pub solution_cap: usize,
    /// LOOP files of order v; their non-affine quasigroups are counted as b(v).
    #[arg(long, num_args = 1..)]
    pub loops: Vec<PathBuf>,
    /// Write the table of each class representative into this directory.
    #[arg(long)]
    pub emit_representatives: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Construction(#[from] ConstructionError),
    #[error("{0}")]
    Enumeration(#[from] EnumerationError),
    #[error("search budget exceeded before a decision was reached")]
    Budget,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Format { .. } => EXIT_INVALID,
            CliError::Construction(ConstructionError::InvalidParameter(_)) => EXIT_INVALID,
            CliError::Construction(_) => EXIT_CONSTRUCTION,
            CliError::Enumeration(EnumerationError::SearchBudgetExceeded) | CliError::Budget => {
                EXIT_BUDGET
            }
            CliError::Enumeration(EnumerationError::BoundExceeded { .. }) => EXIT_INVALID,
            CliError::Enumeration(_) => EXIT_CONSTRUCTION,
        }
    }
}

/// Parses `args`, runs the command and returns the exit code. Reports go to
/// `out`, diagnostics to `err`.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // Fails only if the pool already exists, which leaves it usable.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global();
    }
    match run(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Construct(a) => construct(cli, a, out, err),
        Command::Verify(a) => verify(cli, a, out),
        Command::Enumerate(a) => enumerate(cli, a, out),
        Command::Spectrum { v } => {
            match spectrum_offender(*v) {
                None => emit(out, &format!("v={v} member"))?,
                Some((p, e)) => emit(out, &format!("v={v} non-member offender={p}^{e}"))?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn order_check(cli: &Cli) -> OrderCheck {
    if cli.allow_bad_order {
        OrderCheck::Override
    } else {
        OrderCheck::Enforce
    }
}

fn mode(cli: &Cli) -> AntiDistributiveMode {
    if cli.strict {
        AntiDistributiveMode::Strict
    } else {
        AntiDistributiveMode::RightThenTransfer
    }
}

fn read_document(path: &Path, check: OrderCheck) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, check).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn require<T: Copy>(v: Option<T>, flag: &str, kind: Kind) -> Result<T, CliError> {
    v.ok_or_else(|| {
        let name = kind.to_possible_value().expect("no skipped variants");
        CliError::Usage(format!("construct {} requires {flag}", name.get_name()))
    })
}

fn parse_group(spec: &str) -> Result<AbelianGroup, CliError> {
    let factors = spec
        .split(['x', 'X'])
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad group {spec:?}; expected e.g. 3x3")))?;
    AbelianGroup::new(&factors).map_err(|e| CliError::Usage(format!("bad group {spec:?}: {e}")))
}

fn parse_matrix(g: &AbelianGroup, spec: &str) -> Result<GroupAutomorphism, CliError> {
    let rows = spec
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad matrix {spec:?}; expected e.g. 2,1;0,2")))?;
    GroupAutomorphism::new(g, &rows).map_err(|e: AlgebraError| {
        CliError::Usage(format!("matrix {spec:?} is not an automorphism: {e}"))
    })
}

/// What a construction produced, before formatting.
enum Built {
    Mendelsohn(CayleyTable),
    Steiner(CayleyTable),
    Sts(mendel_core::UnorderedTripleSystem),
    Doubled(mendel_core::OrientedTripleSystem),
}

fn build(cli: &Cli, a: &ConstructArgs) -> Result<Built, CliError> {
    let k = a.kind;
    Ok(match k {
        Kind::Affine => {
            let g = parse_group(
                a.group
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("construct affine requires --group".into()))?,
            )?;
            let m = a
                .matrix
                .as_deref()
                .ok_or_else(|| CliError::Usage("construct affine requires --matrix".into()))?;
            Built::Mendelsohn(affine_mendelsohn(&parse_matrix(&g, m)?)?)
        }
        Kind::Field => {
            Built::Mendelsohn(field_mendelsohn(require(a.p, "--p", k)?, a.d.unwrap_or(1))?)
        }
        Kind::Char2 => Built::Mendelsohn(char2_mendelsohn(require(a.d, "--d", k)?)?),
        Kind::Steiner => Built::Steiner(steiner_affine(require(a.d, "--d", k)?)?),
        Kind::Spectrum => Built::Mendelsohn(spectrum_construct(require(a.v, "--v", k)?)?),
        Kind::Netto => Built::Sts(netto_sts(require(a.p, "--p", k)?, a.d.unwrap_or(1))?),
        Kind::Projective => Built::Sts(projective_sts(require(a.n, "--n", k)?)?),
        Kind::Double => {
            if let Some(path) = &a.orientation {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                let (u, blocks) = parse_oriented_sts(&text).map_err(|source| CliError::Format {
                    path: path.clone(),
                    source,
                })?;
                return Ok(Built::Doubled(anti_double_oriented(u, &blocks)?));
            }
            let path = a.input.as_deref().ok_or_else(|| {
                CliError::Usage("construct double requires --input or --orientation".into())
            })?;
            match read_document(path, order_check(cli))? {
                Document::Sts(s) => Built::Doubled(anti_double(&s)?),
                other => {
                    return Err(CliError::Usage(format!(
                        "{}: expected an STS file, found {}",
                        path.display(),
                        other.kind()
                    )))
                }
            }
        }
    })
}

fn construct(
    cli: &Cli,
    a: &ConstructArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let built = build(cli, a)?;
    let table_form = a.format == OutputFormat::Table;
    let (doc, summary) = match built {
        Built::Mendelsohn(q) => {
            let s = quasigroup_to_mts(&q).map_err(ConstructionError::Design)?;
            let summary = format!(
                "MTS {} proper={} medial={} distributive={}",
                q.order(),
                is_proper(&s),
                check_medial(&q).holds(),
                check_right_distributive(&q).holds() && check_left_distributive(&q).holds(),
            );
            (
                if table_form {
                    Document::Table(q)
                } else {
                    Document::Mts(s)
                },
                summary,
            )
        }
        Built::Steiner(q) => {
            let s = quasigroup_to_sts(&q).map_err(ConstructionError::Design)?;
            let summary = format!(
                "STS {} medial={} anti-mitre={}",
                q.order(),
                check_medial(&q).holds(),
                find_mitre(&s).is_none()
            );
            (
                if table_form {
                    Document::Table(q)
                } else {
                    Document::Sts(s)
                },
                summary,
            )
        }
        Built::Sts(s) => {
            let summary = format!("STS {} anti-mitre={}", s.order(), find_mitre(&s).is_none());
            (
                if table_form {
                    Document::Table(sts_to_quasigroup(&s))
                } else {
                    Document::Sts(s)
                },
                summary,
            )
        }
        Built::Doubled(s) => {
            let q = mts_to_quasigroup(&s);
            let anti = is_antidistributive(&q, mode(cli))
                .map_err(ConstructionError::Table)?
                .is_anti();
            let summary = format!(
                "MTS {} proper={} antidistributive={anti}",
                s.order(),
                is_proper(&s)
            );
            (
                if table_form {
                    Document::Table(q)
                } else {
                    Document::Mts(s)
                },
                summary,
            )
        }
    };
    let text = doc.to_text();
    match &a.output {
        Some(path) => {
            write_file(path, &text)?;
            emit(out, &summary)?;
        }
        None => {
            out.write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
            let _ = writeln!(err, "{summary}");
        }
    }
    Ok(EXIT_OK)
}

fn property_name(p: Property) -> String {
    p.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn law_line<const N: usize>(law: Law<[usize; N]>) -> (bool, String) {
    match law {
        Law::Holds => (true, String::new()),
        Law::Violated(w) => (false, format!(" witness={}", join(&w))),
    }
}

/// The quasigroup a document stands for.
fn quasigroup_of(doc: &Document) -> CayleyTable {
    match doc {
        Document::Table(q) => q.clone(),
        Document::Mts(s) => mts_to_quasigroup(s),
        Document::Sts(s) => sts_to_quasigroup(s),
        Document::Loop(l) => l.table().clone(),
    }
}

/// `(holds, detail)` for one property.
fn check(cli: &Cli, doc: &Document, q: &CayleyTable, p: Property) -> (bool, String) {
    match p {
        Property::Idempotent => match check_idempotent(q) {
            Law::Holds => (true, String::new()),
            Law::Violated(x) => (false, format!(" witness={x}")),
        },
        Property::Commutative => law_line(check_commutative(q)),
        Property::Semisymmetric => law_line(check_semisymmetric(q)),
        Property::TotallySymmetric => {
            let c = check_commutative(q);
            if c.holds() {
                law_line(check_semisymmetric(q))
            } else {
                law_line(c)
            }
        }
        Property::Medial => law_line(check_medial(q)),
        Property::LeftDistributive => law_line(check_left_distributive(q)),
        Property::RightDistributive => law_line(check_right_distributive(q)),
        Property::Distributive => {
            let l = check_left_distributive(q);
            if l.holds() {
                law_line(check_right_distributive(q))
            } else {
                (false, format!("{} law=left", law_line(l).1))
            }
        }
        Property::Belousov => law_line(belousov_distributive(q)),
        Property::Mendelsohn | Property::Steiner => {
            let i = check_idempotent(q);
            if let Law::Violated(x) = i {
                return (false, format!(" witness={x} law=idempotent"));
            }
            let s = check_semisymmetric(q);
            if !s.holds() || p == Property::Mendelsohn {
                return law_line(s);
            }
            law_line(check_commutative(q))
        }
        Property::Antidistributive => match is_antidistributive(q, mode(cli)) {
            Err(_) => (false, " reason=not-mendelsohn".into()),
            Ok(AntiDistributivity::Anti) => (true, String::new()),
            Ok(AntiDistributivity::Witness { triple, law }) => {
                let law = match law {
                    DistributiveLaw::Left => "left",
                    DistributiveLaw::Right => "right",
                };
                (false, format!(" witness={} law={law}", join(&triple)))
            }
        },
        Property::Proper => {
            let s = match doc {
                Document::Mts(s) => Ok(s.clone()),
                Document::Sts(s) => Ok(doubled(s)),
                _ => quasigroup_to_mts(q),
            };
            match s {
                Ok(s) => (is_proper(&s), String::new()),
                Err(_) => (false, " reason=not-mendelsohn".into()),
            }
        }
        Property::AntiMitre => {
            let s = match doc {
                Document::Sts(s) => Ok(s.clone()),
                _ => quasigroup_to_sts(q),
            };
            match s {
                Err(_) => (false, " reason=not-steiner".into()),
                Ok(s) => match find_mitre(&s) {
                    None => (true, String::new()),
                    Some(m) => {
                        let blocks: Vec<String> = m.blocks.iter().map(|b| join(b)).collect();
                        (false, format!(" witness={}", blocks.join(";")))
                    }
                },
            }
        }
        Property::Moufang => match doc {
            Document::Loop(l) => (is_commutative_moufang(l), String::new()),
            _ => (false, " reason=not-a-loop".into()),
        },
    }
}

fn default_properties(doc: &Document) -> Vec<Property> {
    use Property::*;
    let mut ps = vec![Idempotent, Commutative, Semisymmetric, Medial, Distributive];
    match doc {
        Document::Mts(_) => ps.push(Proper),
        Document::Sts(_) => ps.push(AntiMitre),
        Document::Loop(_) => ps.push(Moufang),
        Document::Table(_) => {}
    }
    ps
}

fn verify(cli: &Cli, a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = read_document(&a.path, order_check(cli))?;
    if let Some(path) = &a.export {
        write_file(path, &doc.to_text())?;
    }
    let q = quasigroup_of(&doc);
    let requested = !a.properties.is_empty();
    let props = if requested {
        a.properties.clone()
    } else {
        default_properties(&doc)
    };
    emit(out, &format!("{} {}", doc.kind(), q.order()))?;
    let mut all = true;
    for p in props {
        let (holds, detail) = check(cli, &doc, &q, p);
        all &= holds;
        emit(out, &format!("{}={holds}{detail}", property_name(p)))?;
    }
    Ok(if all || !requested {
        EXIT_OK
    } else {
        EXIT_PROPERTY
    })
}

fn enumerate(cli: &Cli, a: &EnumerateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = EnumerationConfig {
        solver: match a.solver {
            SolverArg::Structured => Solver::Structured,
            SolverArg::Brute => Solver::Brute,
        },
        prime_power_bound: a.prime_power_bound,
        solution_cap: a.solution_cap,
        budget: cli.budget,
    };
    let mut report = count_affine(a.v, &config)?;
    if !a.loops.is_empty() {
        let mut loops = Vec::new();
        for path in &a.loops {
            match read_document(path, OrderCheck::Enforce)? {
                Document::Loop(l) => loops.push(l),
                other => {
                    return Err(CliError::Usage(format!(
                        "{}: expected a LOOP file, found {}",
                        path.display(),
                        other.kind()
                    )))
                }
            }
        }
        let v = usize::try_from(a.v)
            .map_err(|_| CliError::Usage(format!("v = {} is too large", a.v)))?;
        let b = count_non_affine(&loops, v, &Budget::new(cli.budget))?;
        report = report.with_non_affine(b);
    }
    if let Some(dir) = &a.emit_representatives {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
        for (label, table) in representative_tables(&report)? {
            write_file(
                &dir.join(format!("{label}.qg")),
                &crate::format::write_table(&table),
            )?;
        }
    }
    write!(out, "{report}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })?;
    Ok(EXIT_OK)
}
