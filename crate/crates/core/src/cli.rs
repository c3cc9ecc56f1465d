//! Batch command-line front end.
//!
//! Exit codes: 0 success, 1 identity failure, 2 usage or schema error, 3 unparsable
//! cell, 4 domain error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use crate::identities::run_suite;
use crate::kinematics::{forward_kinematics, RegularizationConfig, SingularityStrategy};
use crate::legacy::{
    clarke_from_legacy, legacy_from_clarke, legacy_from_lengths, lengths_to_displacements,
    LegacyPair, LegacyScheme,
};
use crate::table::{pose_columns, read_table, write_table, Columns, Table, TableError};
use crate::{joint_space, ClarkeCoords, ClarkeTransform, Displacements, RobotGeometry, Tolerances};

/// Environment variable overriding the identity tolerance of `check`.
pub const TOLERANCE_ENV: &str = "CLARKE_KIN_TOL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Table(#[from] TableError),

    #[error("{0}")]
    Domain(String),

    #[error("{0}")]
    IdentityFailure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::IdentityFailure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Table(TableError::Parse { .. }) => 3,
            CliError::Table(_) => 2,
            CliError::Domain(_) => 4,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(err: crate::Error) -> Self {
        match err {
            crate::Error::StraightConfiguration { .. } => CliError::Domain(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

/// Geometry file: `{"n": 4, "d": 0.01, "l": 0.1}`. Joint angles are always symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub n: usize,
    pub d: f64,
    pub l: f64,
}

impl GeometryFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("invalid geometry file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read geometry {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn geometry(&self) -> Result<RobotGeometry, CliError> {
        Ok(RobotGeometry::symmetric(self.n, self.d, self.l)?)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "clarke-kin",
    version,
    about = "Clarke-coordinate tools for displacement-actuated continuum robots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertFrom {
    Clarke,
    Legacy,
    Lengths,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Displacements <-> Clarke coordinates.
    Transform {
        #[arg(long)]
        geometry: PathBuf,
        /// Input CSV, `-` for stdin.
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Output CSV, `-` for stdout.
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Clarke coordinates, legacy parameterizations and absolute lengths.
    Convert {
        #[arg(long)]
        geometry: PathBuf,
        /// dian3, dellasantina4, allen3 or allen4 (case-insensitive).
        #[arg(long)]
        scheme: String,
        #[arg(long, value_enum)]
        from: ConvertFrom,
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Constant-curvature tip poses from Clarke coordinates.
    Fk {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value = "analytic-branch")]
        strategy: String,
        /// Straight-configuration threshold in meters; defaults to 1e-9 * d.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Uniform joint-space samples with bending angle at most phi-max.
    Sample {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long)]
        phi_max: f64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Verifies every algebraic identity for n = 3..=n-max.
    Check {
        /// Supplies d and l; defaults to d = 0.01, l = 0.1.
        #[arg(long)]
        geometry: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn open_input(path: &Path) -> Result<Box<dyn Read>, CliError> {
    if path == Path::new("-") {
        Ok(Box::new(io::stdin().lock()))
    } else {
        let file = File::open(path)
            .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

fn write_output(path: &Path, table: &Table, stdout: &mut dyn Write) -> Result<(), CliError> {
    if path == Path::new("-") {
        write_table(stdout, table)?;
    } else {
        let file = File::create(path)
            .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
        write_table(BufWriter::new(file), table)?;
    }
    Ok(())
}

fn load_transform(path: &Path) -> Result<ClarkeTransform, CliError> {
    Ok(ClarkeTransform::new(GeometryFile::load(path)?.geometry()?))
}

fn identity_tolerance() -> Result<Tolerances, CliError> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(text) => {
            let tol = crate::table::parse_value(&text)
                .filter(|t| *t > 0.0)
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "{TOLERANCE_ENV} must be a positive number, got `{text}`"
                    ))
                })?;
            Ok(Tolerances {
                matrix_abs: tol,
                vector_rel: tol,
            })
        }
        Err(_) => Ok(Tolerances::default()),
    }
}

fn transform_cmd(
    transform: &ClarkeTransform,
    input: Table,
    direction: Direction,
) -> Result<Table, CliError> {
    let n = transform.geometry().n();
    match direction {
        Direction::Forward => {
            input.expect_columns(&Columns::Displacements(n).names())?;
            let mut out = Table::new(Columns::Clarke.names());
            for row in &input.rows {
                let c = transform.forward(&Displacements::from(row.as_slice()))?;
                out.rows.push(vec![c.re, c.im]);
            }
            Ok(out)
        }
        Direction::Inverse => {
            input.expect_columns(&Columns::Clarke.names())?;
            let mut out = Table::new(Columns::Displacements(n).names());
            for row in &input.rows {
                out.rows.push(
                    transform
                        .inverse(ClarkeCoords::new(row[0], row[1]))
                        .as_slice()
                        .to_vec(),
                );
            }
            Ok(out)
        }
    }
}

fn convert_cmd(
    transform: &ClarkeTransform,
    scheme: LegacyScheme,
    from: ConvertFrom,
    input: Table,
) -> Result<Table, CliError> {
    let geometry = transform.geometry();
    let legacy_names: Vec<String> = scheme
        .parameter_names()
        .iter()
        .map(|s| s.to_string())
        .collect();
    match from {
        ConvertFrom::Clarke => {
            input.expect_columns(&Columns::Clarke.names())?;
            let mut out = Table::new(legacy_names);
            for row in &input.rows {
                let (p1, p2) =
                    legacy_from_clarke(scheme, geometry, ClarkeCoords::new(row[0], row[1]))?
                        .components();
                out.rows.push(vec![p1, p2]);
            }
            Ok(out)
        }
        ConvertFrom::Legacy => {
            input.expect_columns(&legacy_names)?;
            let mut out = Table::new(Columns::Clarke.names());
            for row in &input.rows {
                let c = clarke_from_legacy(geometry, LegacyPair::new(scheme, row[0], row[1]))?;
                out.rows.push(vec![c.re, c.im]);
            }
            Ok(out)
        }
        ConvertFrom::Lengths => {
            input.expect_columns(&Columns::Lengths(geometry.n()).names())?;
            let mut header = Columns::Clarke.names();
            header.extend(legacy_names);
            let mut out = Table::new(header);
            for row in &input.rows {
                let lengths = row.clone().into();
                let c = transform.forward(&lengths_to_displacements(geometry, &lengths)?)?;
                let (p1, p2) = legacy_from_lengths(scheme, geometry, &lengths)?.components();
                out.rows.push(vec![c.re, c.im, p1, p2]);
            }
            Ok(out)
        }
    }
}

fn fk_cmd(
    transform: &ClarkeTransform,
    strategy: SingularityStrategy,
    config: &RegularizationConfig,
    input: Table,
) -> Result<Table, CliError> {
    input.expect_columns(&Columns::Clarke.names())?;
    let mut out = Table::new(pose_columns());
    for (index, row) in input.rows.iter().enumerate() {
        let pose = forward_kinematics(
            transform,
            ClarkeCoords::new(row[0], row[1]),
            strategy,
            config,
        )
        .map_err(|e| match CliError::from(e) {
            CliError::Domain(msg) => CliError::Domain(format!("row {}: {msg}", index + 1)),
            other => other,
        })?;
        out.rows.push(pose.to_row().to_vec());
    }
    Ok(out)
}

/// Executes one parsed command, writing tables and reports to `stdout`.
pub fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Transform {
            geometry,
            input,
            direction,
            output,
        } => {
            let transform = load_transform(&geometry)?;
            let table = read_table(open_input(&input)?)?;
            write_output(
                &output,
                &transform_cmd(&transform, table, direction)?,
                stdout,
            )
        }
        Command::Convert {
            geometry,
            scheme,
            from,
            input,
            output,
        } => {
            let transform = load_transform(&geometry)?;
            let scheme: LegacyScheme = scheme.parse()?;
            scheme.check(transform.geometry())?;
            let table = read_table(open_input(&input)?)?;
            write_output(
                &output,
                &convert_cmd(&transform, scheme, from, table)?,
                stdout,
            )
        }
        Command::Fk {
            geometry,
            input,
            strategy,
            epsilon,
            output,
        } => {
            let transform = load_transform(&geometry)?;
            let strategy: SingularityStrategy = strategy.parse()?;
            let config = match epsilon {
                Some(eps) => RegularizationConfig::with_epsilon(transform.geometry(), eps)?,
                None => RegularizationConfig::for_geometry(transform.geometry()),
            };
            let table = read_table(open_input(&input)?)?;
            write_output(
                &output,
                &fk_cmd(&transform, strategy, &config, table)?,
                stdout,
            )
        }
        Command::Sample {
            geometry,
            phi_max,
            count,
            seed,
            output,
        } => {
            let transform = load_transform(&geometry)?;
            let samples = joint_space::sample(&transform, phi_max, count, seed)?;
            let mut table = Table::new(Columns::Displacements(transform.geometry().n()).names());
            table.rows = samples.iter().map(|rho| rho.as_slice().to_vec()).collect();
            write_output(&output, &table, stdout)
        }
        Command::Check {
            geometry,
            n_max,
            seed,
        } => {
            if n_max < 3 {
                return Err(CliError::Usage(format!(
                    "--n-max must be at least 3, got {n_max}"
                )));
            }
            let (d, l) = match geometry {
                Some(path) => {
                    let g = GeometryFile::load(&path)?.geometry()?;
                    (g.d(), g.l())
                }
                None => (0.01, 0.1),
            };
            let tol = identity_tolerance()?;
            let results = run_suite(n_max, d, l, &tol, seed)?;
            let io_err = |e: io::Error| CliError::Usage(e.to_string());
            for result in &results {
                writeln!(stdout, "{result}").map_err(io_err)?;
            }
            let failures: Vec<String> = results
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.to_string())
                .collect();
            writeln!(
                stdout,
                "{} identities checked, {} failed",
                results.len(),
                failures.len()
            )
            .map_err(io_err)?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::IdentityFailure(failures.join("\n")))
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transform(n: usize) -> ClarkeTransform {
        ClarkeTransform::new(RobotGeometry::symmetric(n, 0.01, 0.1).unwrap())
    }

    fn table(text: &str) -> Table {
        read_table(text.as_bytes()).unwrap()
    }

    #[test]
    fn geometry_file_rejects_unknown_keys() {
        let g = GeometryFile::parse(r#"{"n": 4, "d": 0.01, "l": 0.1}"#).unwrap();
        assert_eq!(
            g,
            GeometryFile {
                n: 4,
                d: 0.01,
                l: 0.1
            }
        );
        let err = GeometryFile::parse(r#"{"n": 3, "d": 0.01, "l": 0.1, "psi": [0, 2.1, 4.2]}"#)
            .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = GeometryFile::parse(r#"{"n": 2, "d": 0.01, "l": 0.1}"#)
            .unwrap()
            .geometry()
            .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(GeometryFile::parse(r#"{"n": 3, "d": 1e-2, "l": 1E-1}"#).is_ok());
    }

    #[test]
    fn forward_rows() {
        let out = transform_cmd(
            &transform(4),
            table("rho_1,rho_2,rho_3,rho_4\n1,0,-1,0\n"),
            Direction::Forward,
        )
        .unwrap();
        assert_eq!(out.rows, vec![vec![1.0, 0.0]]);
        let out = transform_cmd(
            &transform(3),
            table("rho_1,rho_2,rho_3\n1,1,1\n"),
            Direction::Forward,
        )
        .unwrap();
        assert!(out.rows[0].iter().all(|v| v.abs() < 1e-15));
        let err = transform_cmd(
            &transform(3),
            table("rho_re,rho_im\n1,1\n"),
            Direction::Forward,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn convert_rows() {
        let t3 = transform(3);
        let out = convert_cmd(
            &t3,
            LegacyScheme::Dian3,
            ConvertFrom::Clarke,
            table("rho_re,rho_im\n0.01,-0.02\n"),
        )
        .unwrap();
        assert_eq!(out.header, vec!["delta_x", "delta_y"]);
        assert_eq!(out.rows, vec![vec![0.01, -0.02]]);
        let t4 = transform(4);
        let out = convert_cmd(
            &t4,
            LegacyScheme::Allen4,
            ConvertFrom::Clarke,
            table("rho_re,rho_im\n0.005,0\n"),
        )
        .unwrap();
        assert_eq!(out.header, vec!["u", "v"]);
        assert!(out.rows[0][0].abs() < 1e-15 && (out.rows[0][1] - 1.0).abs() < 1e-15);
        let out = convert_cmd(
            &t4,
            LegacyScheme::Allen4,
            ConvertFrom::Legacy,
            table("u,v\n0,1\n"),
        )
        .unwrap();
        assert!((out.rows[0][0] - 0.005).abs() < 1e-18 && out.rows[0][1] == 0.0);
        let out = convert_cmd(
            &t4,
            LegacyScheme::DellaSantina4,
            ConvertFrom::Lengths,
            table("l_1,l_2,l_3,l_4\n0.1,0.1,0.1,0.1\n"),
        )
        .unwrap();
        assert_eq!(out.rows, vec![vec![0.0, 0.0, 0.0, 0.0]]);
    }

    #[test]
    fn fk_rows_and_domain_error() {
        let t = transform(4);
        let config = RegularizationConfig::for_geometry(t.geometry());
        let out = fk_cmd(
            &t,
            SingularityStrategy::AnalyticBranch,
            &config,
            table("rho_re,rho_im\n0,0\n"),
        )
        .unwrap();
        assert_eq!(
            out.rows[0],
            vec![0.0, 0.0, 0.1, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]
        );
        let err = fk_cmd(
            &t,
            SingularityStrategy::AvoidStraight,
            &config,
            table("rho_re,rho_im\n0.01,0\n0,0\n"),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert!(err.to_string().contains("row 2"), "{err}");
    }

    #[test]
    fn usage_errors() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(
            run(["clarke-kin", "check", "--n-max", "2"], &mut out, &mut err),
            2
        );
        assert_eq!(run(["clarke-kin", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(run(["clarke-kin", "--help"], &mut out, &mut err), 0);
    }
}
