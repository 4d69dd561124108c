//! Command implementations behind the `stabq` binary.
//!
//! [`run`] parses arguments, executes one subcommand and returns the text
//! destined for stdout and stderr plus the process exit code, so the whole
//! front end can be exercised without spawning a process.
//!
//! Exit codes: 0 success, 1 usage error, 2 uncorrectable syndrome or a
//! table mismatch in `verify`, 3 rendering not supported for the code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use stabq::montecarlo::{round_sig9, simulate, SimulationConfig};
use stabq::statevec::{format_complex, format_real};
use stabq::{
    layout, quantum_hamming_bound, qubit_fidelity, render_ascii, render_svg, syndrome,
    verify_against_printed, CodeId, Complex64, Decoder, PauliString, StabilizerCode, Syndrome,
    SyndromeTable,
};
use thiserror::Error;

/// Norm deviations above this are rejected outright.
pub const NORM_REJECT: f64 = 1e-6;
/// Norm deviations above this are renormalized with a warning.
pub const NORM_WARN: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DECODE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] stabq::Error),
    #[error("{0}")]
    Unsupported(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(stabq::Error::UncorrectableSyndrome(_)) => EXIT_DECODE,
            CliError::Core(stabq::Error::TooManySets(_)) | CliError::Unsupported(_) => {
                EXIT_UNSUPPORTED
            }
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Ascii,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "stabq",
    version,
    about = "Small stabilizer codes: encode, decode, verify, draw, simulate"
)]
pub struct Cli {
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write data to FILE instead of stdout.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, value_parser = parse_code)]
    pub code: CodeId,
    /// Amplitude of |0>, e.g. 0.6, 0.5-0.5i, 1i
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha0: Complex64,
    /// Amplitude of |1>
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha1: Complex64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the encoded state of a logical qubit.
    Encode(InputArgs),
    /// Encode, apply an error, measure, correct and retrieve.
    Pipeline {
        #[command(flatten)]
        input: InputArgs,
        /// Error as a Pauli string, dense (IZIII) or indexed (Z3).
        #[arg(long, allow_hyphen_values = true)]
        error: String,
    },
    /// Print the syndrome table derived from commutation.
    Table {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
    },
    /// Compare derived tables with the published ones.
    Verify,
    /// Quantum Hamming bound sum_j C(n,j) 3^j 2^k <= 2^n.
    Bound { n: u32, k: u32, t: u32 },
    /// Draw the syndrome Venn diagram (two or four generators only).
    Venn {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
        /// Syndrome whose region is shaded in SVG output, e.g. "1,-1,-1,1".
        #[arg(long, allow_hyphen_values = true)]
        highlight: Option<String>,
    },
    /// Monte-Carlo trials through a depolarizing channel.
    Simulate {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
        /// Per-qubit error probability.
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.6")]
        alpha0: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.8i")]
        alpha1: Complex64,
        /// Write one JSON object per trial to FILE.
        #[arg(long, value_name = "FILE")]
        log: Option<PathBuf>,
    },
}

/// Everything a command produced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn parse_code(s: &str) -> Result<CodeId, String> {
    s.parse()
        .map_err(|_| format!("unknown code {s:?} (expected five, rep3 or shor9)"))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`. A bare `i` stands for `1i`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number {text:?}");
    let real = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => real(t),
    };
    let value = match s.strip_suffix('i') {
        None => Complex64::new(real(&s)?, 0.0),
        Some(body) => {
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
            match split {
                Some(j) => Complex64::new(real(&body[..j])?, imag(&body[j..])?),
                None => Complex64::new(0.0, imag(body)?),
            }
        }
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Parses `args` (program name first) and runs the command. With
/// `--output`, data goes to the file and stdout stays empty.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stderr: text,
                    code: EXIT_USAGE,
                    ..Output::default()
                }
            } else {
                Output {
                    stdout: text,
                    ..Output::default()
                }
            };
        }
    };
    let mut out = Output::default();
    match execute(&cli, &mut out) {
        Ok(data) => {
            if let Some(path) = &cli.output {
                if let Err(source) = std::fs::write(path, &data) {
                    let e = CliError::Io {
                        path: path.clone(),
                        source,
                    };
                    let _ = writeln!(out.stderr, "error: {e}");
                    out.code = e.exit_code();
                }
            } else {
                out.stdout = data;
            }
        }
        Err(e) => {
            let _ = writeln!(out.stderr, "error: {e}");
            out.code = e.exit_code();
        }
    }
    out
}

/// Runs the parsed command. Returns the data text; diagnostics and any
/// nonzero exit code that accompanies data are recorded in `out`.
pub fn execute(cli: &Cli, out: &mut Output) -> Result<String, CliError> {
    let fmt = |allowed: &[Format], default: Format| -> Result<Format, CliError> {
        let f = cli.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(format!(
                "--format {} is not available for this command",
                f.to_possible_value()
                    .expect("no skipped variants")
                    .get_name()
            )))
        }
    };
    match &cli.command {
        Command::Encode(input) => {
            let f = fmt(&[Format::Text, Format::Json], Format::Text)?;
            cmd_encode(input, f, out)
        }
        Command::Pipeline { input, error } => {
            let f = fmt(&[Format::Text, Format::Json], Format::Json)?;
            cmd_pipeline(input, error, f, out)
        }
        Command::Table { code } => {
            let f = fmt(&[Format::Text, Format::Json], Format::Text)?;
            cmd_table(*code, f)
        }
        Command::Verify => {
            let f = fmt(&[Format::Text, Format::Json], Format::Text)?;
            cmd_verify(f, out)
        }
        Command::Bound { n, k, t } => {
            let f = fmt(&[Format::Text, Format::Json], Format::Text)?;
            cmd_bound(*n, *k, *t, f)
        }
        Command::Venn { code, highlight } => {
            let f = fmt(&[Format::Text, Format::Ascii, Format::Svg], Format::Ascii)?;
            cmd_venn(*code, highlight.as_deref(), f)
        }
        Command::Simulate {
            code,
            p,
            trials,
            seed,
            alpha0,
            alpha1,
            log,
        } => {
            let f = fmt(&[Format::Text, Format::Json], Format::Json)?;
            let cfg = SimulationConfig {
                code: *code,
                p: *p,
                trials: *trials,
                seed: *seed,
                alpha0: *alpha0,
                alpha1: *alpha1,
            };
            cmd_simulate(&cfg, log.as_deref(), f, out)
        }
    }
}

/// Finite value rounded to 9 significant digits, with tiny values and
/// negative zero folded to 0.
fn clean(v: f64) -> f64 {
    if v.abs() < 1e-12 {
        0.0
    } else {
        round_sig9(v)
    }
}

fn ser_clean<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(clean(*v))
}

#[derive(Debug, Clone, Copy, Serialize)]
struct JsonComplex {
    #[serde(serialize_with = "ser_clean")]
    re: f64,
    #[serde(serialize_with = "ser_clean")]
    im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(c: Complex64) -> Self {
        JsonComplex { re: c.re, im: c.im }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Checks the input norm; renormalizes with a warning when it is off by
/// more than [`NORM_WARN`] but no more than [`NORM_REJECT`].
fn normalized_input(
    a0: Complex64,
    a1: Complex64,
    out: &mut Output,
) -> Result<(Complex64, Complex64), CliError> {
    let norm_sqr = a0.norm_sqr() + a1.norm_sqr();
    let deviation = (norm_sqr - 1.0).abs();
    if deviation > NORM_REJECT {
        return Err(CliError::Usage(format!(
            "|alpha0|^2 + |alpha1|^2 = {} is not 1",
            format_real(norm_sqr)
        )));
    }
    if deviation > NORM_WARN {
        let _ = writeln!(
            out.stderr,
            "warning: input norm^2 {} renormalized to 1",
            format_real(norm_sqr)
        );
        let scale = norm_sqr.sqrt();
        return Ok((a0 / scale, a1 / scale));
    }
    Ok((a0, a1))
}

#[derive(Serialize)]
struct EncodeJson {
    code: CodeId,
    alpha0: JsonComplex,
    alpha1: JsonComplex,
    amplitudes: Vec<AmplitudeJson>,
}

#[derive(Serialize)]
struct AmplitudeJson {
    basis: String,
    #[serde(serialize_with = "ser_clean")]
    re: f64,
    #[serde(serialize_with = "ser_clean")]
    im: f64,
}

fn cmd_encode(input: &InputArgs, f: Format, out: &mut Output) -> Result<String, CliError> {
    let (a0, a1) = normalized_input(input.alpha0, input.alpha1, out)?;
    let code = input.code.build();
    let state = code.encode(a0, a1)?;
    if f == Format::Text {
        return Ok(state.to_string());
    }
    let n = state.num_qubits();
    let amplitudes = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() >= stabq::statevec::DUMP_CUTOFF)
        .map(|(i, a)| AmplitudeJson {
            basis: format!("{i:0n$b}"),
            re: a.re,
            im: a.im,
        })
        .collect();
    Ok(to_json(&EncodeJson {
        code: input.code,
        alpha0: a0.into(),
        alpha1: a1.into(),
        amplitudes,
    }))
}

#[derive(Serialize)]
struct PipelineJson {
    code: CodeId,
    input: [JsonComplex; 2],
    error: String,
    syndrome: Syndrome,
    status: &'static str,
    applied: Option<String>,
    recovered: Option<[JsonComplex; 2]>,
    #[serde(serialize_with = "ser_clean_opt")]
    fidelity: Option<f64>,
}

fn ser_clean_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_f64(clean(*v)),
        None => s.serialize_none(),
    }
}

/// Removes the global phase of `b` relative to `a` so that the recovered
/// amplitudes can be read against the input directly.
fn align_phase(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> (Complex64, Complex64) {
    let overlap = a.0.conj() * b.0 + a.1.conj() * b.1;
    if overlap.norm() < 1e-12 {
        return b;
    }
    let phase = overlap.conj() / overlap.norm();
    (b.0 * phase, b.1 * phase)
}

fn cmd_pipeline(
    input: &InputArgs,
    error: &str,
    f: Format,
    out: &mut Output,
) -> Result<String, CliError> {
    let (a0, a1) = normalized_input(input.alpha0, input.alpha1, out)?;
    let decoder = Decoder::for_code(input.code)?;
    let n = decoder.code().n();
    let e = PauliString::parse(error, n)?;
    let received = decoder.code().encode(a0, a1)?.apply_pauli(&e)?;
    let measured = syndrome(decoder.code(), &received)?;
    let mut recovered = None;
    let mut report = PipelineJson {
        code: input.code,
        input: [a0.into(), a1.into()],
        error: e.label(),
        syndrome: measured.clone(),
        status: "uncorrectable",
        applied: None,
        recovered: None,
        fidelity: None,
    };
    match decoder.decode(&received) {
        Ok(outcome) => {
            let r = align_phase((a0, a1), (outcome.alpha0, outcome.alpha1));
            let fidelity = qubit_fidelity((a0, a1), r);
            recovered = Some(r);
            report.status = if fidelity >= 1.0 - stabq::decoder::FIDELITY_TOLERANCE {
                "recovered"
            } else {
                "logical-error"
            };
            report.applied = Some(outcome.applied.label());
            report.recovered = Some([r.0.into(), r.1.into()]);
            report.fidelity = Some(fidelity);
        }
        Err(stabq::Error::UncorrectableSyndrome(s)) => {
            let _ = writeln!(out.stderr, "error: syndrome {s} has no correction");
            out.code = EXIT_DECODE;
        }
        Err(e) => return Err(e.into()),
    }
    if f == Format::Json {
        return Ok(to_json(&report));
    }
    let mut text = String::new();
    let _ = writeln!(text, "code: {}", report.code);
    let _ = writeln!(text, "error: {}", report.error);
    let _ = writeln!(text, "syndrome: {}", report.syndrome);
    let _ = writeln!(text, "status: {}", report.status);
    if let (Some(applied), Some((r0, r1)), Some(fidelity)) =
        (&report.applied, recovered, report.fidelity)
    {
        let _ = writeln!(text, "applied: {applied}");
        let _ = writeln!(
            text,
            "recovered: {}, {}",
            format_complex(r0),
            format_complex(r1)
        );
        let _ = writeln!(text, "fidelity: {}", format_real(clean(fidelity)));
    }
    Ok(text)
}

fn signs_text(s: &Syndrome) -> String {
    s.signs()
        .iter()
        .map(|v| format!("{v:>2}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_table(id: CodeId, f: Format) -> Result<String, CliError> {
    let code = id.build();
    let table = SyndromeTable::build(&code)?;
    if f == Format::Json {
        return Ok(to_json(&table));
    }
    let rows: Vec<[String; 4]> = table
        .classes()
        .map(|c| {
            [
                signs_text(&c.syndrome),
                c.representative.label(),
                c.sound_labels().join(", "),
                c.unsound_labels().join(", "),
            ]
        })
        .collect();
    let header = [
        "syndrome".to_string(),
        "correction".to_string(),
        "corrects".to_string(),
        "uncorrected".to_string(),
    ];
    let mut widths = header.clone().map(|h| h.chars().count());
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut text = String::new();
    for r in std::iter::once(&header).chain(&rows) {
        let mut line = String::new();
        for (i, cell) in r.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<w$}", w = widths[i]);
        }
        text.push_str(line.trim_end());
        text.push('\n');
    }
    Ok(text)
}

fn cmd_verify(f: Format, out: &mut Output) -> Result<String, CliError> {
    let mut reports = Vec::new();
    for id in CodeId::ALL {
        reports.push(verify_against_printed(&id.build())?);
    }
    if !reports.iter().all(|r| r.only_known_errata()) {
        out.code = EXIT_DECODE;
    }
    if f == Format::Json {
        return Ok(to_json(&reports));
    }
    let parts: Vec<String> = reports
        .iter()
        .map(|r| {
            let known: Vec<&str> = r
                .discrepancies
                .iter()
                .filter(|d| d.known_erratum)
                .map(|d| d.error.as_str())
                .collect();
            let unknown: Vec<&str> = r
                .discrepancies
                .iter()
                .filter(|d| !d.known_erratum)
                .map(|d| d.error.as_str())
                .collect();
            let mut s = format!("{}: ", r.code);
            match (known.len(), unknown.len()) {
                (0, 0) => s.push_str("OK"),
                (k, 0) => {
                    let noun = if k == 1 { "erratum" } else { "errata" };
                    let _ = write!(s, "{k} known {noun} ({})", known.join(", "));
                }
                (_, u) => {
                    let noun = if u == 1 { "mismatch" } else { "mismatches" };
                    let _ = write!(s, "{u} {noun} ({})", unknown.join(", "));
                }
            }
            s
        })
        .collect();
    Ok(format!("{}\n", parts.join("; ")))
}

fn cmd_bound(n: u32, k: u32, t: u32, f: Format) -> Result<String, CliError> {
    let bound = quantum_hamming_bound(n, k, t)?;
    if f == Format::Json {
        return Ok(to_json(&bound));
    }
    Ok(format!("{bound}\n"))
}

fn cmd_venn(id: CodeId, highlight: Option<&str>, f: Format) -> Result<String, CliError> {
    let code: StabilizerCode = id.build();
    let table = SyndromeTable::build(&code)?;
    let l = match layout(&code, &table) {
        Ok(l) => l,
        Err(stabq::Error::TooManySets(k)) => {
            return Err(CliError::Unsupported(format!(
                "{k} stabilizers: region listing only (use table)"
            )));
        }
        Err(e) => return Err(e.into()),
    };
    let highlight: Option<Syndrome> = highlight.map(str::parse).transpose()?;
    if f == Format::Svg {
        return Ok(render_svg(&l, highlight.as_ref())?);
    }
    if highlight.is_some() {
        return Err(CliError::Usage("--highlight needs --format svg".into()));
    }
    Ok(render_ascii(&l))
}

fn cmd_simulate(
    cfg: &SimulationConfig,
    log: Option<&std::path::Path>,
    f: Format,
    out: &mut Output,
) -> Result<String, CliError> {
    let (a0, a1) = normalized_input(cfg.alpha0, cfg.alpha1, out)?;
    let cfg = SimulationConfig {
        alpha0: a0,
        alpha1: a1,
        ..*cfg
    };
    let (summary, records) = simulate(&cfg)?;
    if let Some(path) = log {
        let mut lines = String::new();
        for r in &records {
            lines.push_str(&serde_json::to_string(r).expect("plain data serializes"));
            lines.push('\n');
        }
        std::fs::write(path, lines).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    if f == Format::Json {
        return Ok(to_json(&summary));
    }
    let mut text = String::new();
    let _ = writeln!(text, "code: {}", summary.code);
    let _ = writeln!(text, "p: {}", format_real(summary.p));
    let _ = writeln!(text, "trials: {}", summary.trials);
    let _ = writeln!(text, "seed: {}", summary.seed);
    let _ = writeln!(text, "successes: {}", summary.successes);
    let _ = writeln!(text, "success rate: {}", format_real(summary.success_rate));
    let _ = writeln!(
        text,
        "trials with at most one error: {}",
        summary.trials_with_at_most_one_error
    );
    let conditional = summary
        .conditional_success_rate
        .map_or_else(|| "n/a".to_string(), format_real);
    let _ = writeln!(text, "conditional success rate: {conditional}");
    let _ = writeln!(text, "uncorrectable: {}", summary.uncorrectable);
    let _ = writeln!(
        text,
        "mean fidelity: {}",
        format_real(summary.mean_fidelity)
    );
    Ok(text)
}
