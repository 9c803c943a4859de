//! `sce`: chunked crypto-compression and its analysis harness on the
//! command line.
//!
//! Key material is only ever read from a file named by `--key` or the
//! `SCE_KEY_FILE` environment variable, never from arguments. Encrypt and
//! decrypt write through a temporary sibling file and rename on success,
//! so interrupted runs never leave a truncated output behind. Every error
//! class maps to its own exit code (see [`exit_code`]).

use clap::{Args, Parser, Subcommand, ValueEnum};
use sce_core::analysis::{self, nist};
use sce_core::chaos::{self, CharacterizationMap, MapId};
use sce_core::codec::{self, CodecId};
use sce_core::corpus;
use sce_core::keys;
use sce_core::pipeline::{self, PipelineError, PipelineMode};
use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const KEY_ENV_VAR: &str = "SCE_KEY_FILE";

// Exit codes per error class; success is 0, clap usage errors are 2.
const EXIT_IO: u8 = 3;
const EXIT_KEY: u8 = 4;
const EXIT_FORMAT: u8 = 5;
const EXIT_DECODE: u8 = 6;
const EXIT_INTEGRITY: u8 = 7;
const EXIT_INSUFFICIENT: u8 = 8;
const EXIT_CODEC_UNAVAILABLE: u8 = 9;
const EXIT_NUMERIC: u8 = 10;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "sce",
    about = "Simultaneous compression and encryption with chaotic keystreams",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key file from OS entropy.
    Keygen(KeygenArgs),
    /// Encrypt a file or stream into a container.
    Encrypt(CryptArgs),
    /// Decrypt a container back to the original bytes.
    Decrypt(DecryptArgs),
    /// Characterize a chaotic map: bifurcation, Lyapunov exponent, or
    /// keystream benchmark. Emits CSV.
    Characterize(CharacterizeArgs),
    /// Security analysis: correlation, similarity, sensitivity, the
    /// XOR-linearity check, randomness tests, and bitstream export.
    Analyze(AnalyzeArgs),
    /// Measure compression ratio and throughput across orderings and
    /// codecs. Emits CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct KeygenArgs {
    /// Destination key file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodecChoice {
    Store,
    Baseline,
    External,
}

impl From<CodecChoice> for CodecId {
    fn from(c: CodecChoice) -> CodecId {
        match c {
            CodecChoice::Store => CodecId::Store,
            CodecChoice::Baseline => CodecId::Baseline,
            CodecChoice::External => CodecId::External,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeChoice {
    Sce,
    Cte,
    Etc,
}

impl From<ModeChoice> for PipelineMode {
    fn from(m: ModeChoice) -> PipelineMode {
        match m {
            ModeChoice::Sce => PipelineMode::Sce,
            ModeChoice::Cte => PipelineMode::Cte,
            ModeChoice::Etc => PipelineMode::Etc,
        }
    }
}

#[derive(Args)]
struct CryptArgs {
    /// Input path, or `-` for standard input.
    #[arg(long = "in", value_name = "PATH")]
    input: String,
    /// Output path, or `-` for standard output.
    #[arg(long = "out", value_name = "PATH")]
    output: String,
    /// Key file path; falls back to $SCE_KEY_FILE.
    #[arg(long)]
    key: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "baseline")]
    codec: CodecChoice,
    #[arg(long, value_enum, default_value = "sce")]
    mode: ModeChoice,
    /// Chunk size in bytes, 4 KiB to 64 MiB.
    #[arg(long, default_value_t = pipeline::DEFAULT_CHUNK_SIZE)]
    chunk_size: usize,
}

#[derive(Args)]
struct DecryptArgs {
    /// Input container path, or `-` for standard input.
    #[arg(long = "in", value_name = "PATH")]
    input: String,
    /// Output path, or `-` for standard output.
    #[arg(long = "out", value_name = "PATH")]
    output: String,
    /// Key file path; falls back to $SCE_KEY_FILE.
    #[arg(long)]
    key: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapChoice {
    Logistic,
    Tent,
    Henon,
    Lorenz,
    Chirikov,
}

impl From<MapChoice> for MapId {
    fn from(m: MapChoice) -> MapId {
        match m {
            MapChoice::Logistic => MapId::Logistic,
            MapChoice::Tent => MapId::Tent,
            MapChoice::Henon => MapId::Henon,
            MapChoice::Lorenz => MapId::Lorenz,
            MapChoice::Chirikov => MapId::Chirikov,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Instrument {
    Bifurcation,
    Lyapunov,
    Bench,
}

#[derive(Args)]
struct CharacterizeArgs {
    #[arg(long, value_enum)]
    map: MapChoice,
    #[arg(long, value_enum)]
    instrument: Instrument,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Bifurcation sweep bounds and resolution.
    #[arg(long, default_value_t = 2.5)]
    param_lo: f64,
    #[arg(long, default_value_t = 4.0)]
    param_hi: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value_t = 64)]
    samples: usize,
    /// Lyapunov iteration count.
    #[arg(long, default_value_t = 400_000)]
    iterations: usize,
    /// Benchmark corpus size (synthetic, seeded).
    #[arg(long, default_value_t = 1 << 20)]
    bytes: usize,
    /// Seed for synthetic corpora.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Control-parameter overrides (reference values when omitted).
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalysisKind {
    /// Pearson correlation between plaintext and ciphertext body.
    Cc,
    /// Cosine similarity between plaintext and ciphertext body.
    Csi,
    /// Key sensitivity over random 1-bit key flips.
    Keysens,
    /// Plaintext sensitivity over random early 1-bit flips.
    Ptsens,
    /// XOR-linearity property check (equality count over trials).
    Chen,
    /// Randomness test battery over samples of a byte stream.
    Nist,
    /// Export a byte stream as ASCII bits for the external suite.
    ExportBits,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, value_enum)]
    kind: AnalysisKind,
    /// Input data file (plaintext for cc/csi/keysens/ptsens, byte stream
    /// for nist/export-bits).
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Key file path; falls back to $SCE_KEY_FILE.
    #[arg(long)]
    key: Option<PathBuf>,
    /// CSV or bitstream destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Plaintext length for the property check.
    #[arg(long, default_value_t = 1024)]
    len: usize,
    /// Run the deliberately weakened control cipher instead (the property
    /// must hold on it; a sanity check of the harness).
    #[arg(long)]
    control: bool,
    #[arg(long, default_value_t = 1)]
    samples: usize,
    /// Sample length in bits.
    #[arg(long, default_value_t = 1_000_000)]
    length: usize,
    #[arg(long, default_value_t = nist::DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    Pipeline,
    Codec,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "pipeline")]
    kind: BenchKind,
    /// Corpus file; a seeded synthetic corpus when omitted.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Synthetic corpus size when no file is given.
    #[arg(long, default_value_t = 1 << 20)]
    bytes: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Key file path; falls back to $SCE_KEY_FILE (pipeline benchmarks).
    #[arg(long)]
    key: Option<PathBuf>,
    #[arg(long, default_value_t = pipeline::DEFAULT_CHUNK_SIZE)]
    chunk_size: usize,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// CLI failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_IO, format!("i/o error: {e}"))
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        Failure::new(exit_code(&e), e.to_string())
    }
}

impl From<keys::KeyError> for Failure {
    fn from(e: keys::KeyError) -> Self {
        Failure::new(EXIT_KEY, e.to_string())
    }
}

impl From<chaos::ChaosError> for Failure {
    fn from(e: chaos::ChaosError) -> Self {
        Failure::new(EXIT_NUMERIC, e.to_string())
    }
}

impl From<analysis::AnalysisError> for Failure {
    fn from(e: analysis::AnalysisError) -> Self {
        let code = match &e {
            analysis::AnalysisError::Nist(nist::NistError::InsufficientData { .. }) => {
                EXIT_INSUFFICIENT
            }
            analysis::AnalysisError::Pipeline(p) => exit_code(p),
            analysis::AnalysisError::Io(_) => EXIT_IO,
            analysis::AnalysisError::InvalidParam(_) => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        Failure::new(code, e.to_string())
    }
}

fn exit_code(e: &PipelineError) -> u8 {
    match e {
        PipelineError::EmptyInput => EXIT_INSUFFICIENT,
        PipelineError::BadChunkSize(_) => EXIT_USAGE,
        PipelineError::Format(_) => EXIT_FORMAT,
        PipelineError::Decode { .. } => EXIT_DECODE,
        PipelineError::IntegrityMismatch(_) => EXIT_INTEGRITY,
        PipelineError::CodecUnavailable => EXIT_CODEC_UNAVAILABLE,
        PipelineError::Key(_) => EXIT_KEY,
        PipelineError::Chaos(_) => EXIT_NUMERIC,
        PipelineError::Io(_) => EXIT_IO,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Keygen(args) => cmd_keygen(args),
        Command::Encrypt(args) => cmd_encrypt(args),
        Command::Decrypt(args) => cmd_decrypt(args),
        Command::Characterize(args) => cmd_characterize(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

// ---------------------------------------------------------------------------
// Key handling and I/O plumbing
// ---------------------------------------------------------------------------

fn key_path(explicit: Option<PathBuf>) -> Result<PathBuf, Failure> {
    if let Some(p) = explicit {
        return Ok(p);
    }
    std::env::var_os(KEY_ENV_VAR)
        .map(PathBuf::from)
        .ok_or_else(|| {
            Failure::new(
                EXIT_USAGE,
                format!("no key: pass --key or set ${KEY_ENV_VAR} to a key file path"),
            )
        })
}

fn load_key(explicit: Option<PathBuf>) -> Result<keys::ChaosKey, Failure> {
    let path = key_path(explicit)?;
    let bytes = fs::read(&path)
        .map_err(|e| Failure::new(EXIT_IO, format!("reading key file {}: {e}", path.display())))?;
    Ok(keys::parse_key(&bytes)?)
}

enum Input {
    Stdin,
    File(PathBuf),
}

impl Input {
    fn parse(s: &str) -> Input {
        if s == "-" {
            Input::Stdin
        } else {
            Input::File(PathBuf::from(s))
        }
    }

    fn open(&self) -> Result<Box<dyn Read>, Failure> {
        Ok(match self {
            Input::Stdin => Box::new(std::io::stdin().lock()),
            Input::File(p) => {
                Box::new(BufReader::new(fs::File::open(p).map_err(|e| {
                    Failure::new(EXIT_IO, format!("opening {}: {e}", p.display()))
                })?))
            }
        })
    }

    fn read_all(&self) -> Result<Vec<u8>, Failure> {
        let mut buf = Vec::new();
        self.open()?.read_to_end(&mut buf)?;
        Ok(buf)
    }
}

/// Run `work` against the output target. File outputs go through a
/// temporary sibling and are renamed only after `work` succeeds, so a
/// failed run leaves nothing behind.
fn with_atomic_output(
    target: &str,
    work: impl FnOnce(&mut dyn Write) -> Result<(), Failure>,
) -> Result<(), Failure> {
    if target == "-" {
        let stdout = std::io::stdout();
        let mut writer = BufWriter::new(stdout.lock());
        work(&mut writer)?;
        writer.flush()?;
        return Ok(());
    }
    let path = Path::new(target);
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let temp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| Failure::new(EXIT_IO, format!("creating temporary file: {e}")))?;
    {
        let mut writer = BufWriter::new(temp.as_file());
        work(&mut writer)?;
        writer.flush()?;
    }
    temp.persist(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("renaming into place: {}", e.error)))?;
    Ok(())
}

fn write_text_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => with_atomic_output(&path.display().to_string(), |w| {
            w.write_all(text.as_bytes())?;
            Ok(())
        }),
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_keygen(args: KeygenArgs) -> Result<(), Failure> {
    let key = keys::keygen(&mut rand::rng())?;
    let bytes = keys::serialize_key(&key);
    with_atomic_output(&args.out.display().to_string(), |w| {
        w.write_all(&bytes)?;
        Ok(())
    })?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        fs::set_permissions(&args.out, fs::Permissions::from_mode(0o600))?;
    }
    eprintln!("wrote key file {}", args.out.display());
    Ok(())
}

fn cmd_encrypt(args: CryptArgs) -> Result<(), Failure> {
    let key = load_key(args.key)?;
    let input = Input::parse(&args.input);
    with_atomic_output(&args.output, |writer| {
        let mut reader = input.open()?;
        let summary = pipeline::encrypt_stream(
            &mut reader,
            writer,
            &key,
            args.codec.into(),
            args.mode.into(),
            args.chunk_size,
        )?;
        eprintln!(
            "encrypted {} bytes into {} body bytes over {} chunk(s)",
            summary.original_len, summary.body_len, summary.chunk_count
        );
        Ok(())
    })
}

fn cmd_decrypt(args: DecryptArgs) -> Result<(), Failure> {
    let key = load_key(args.key)?;
    let input = Input::parse(&args.input);
    with_atomic_output(&args.output, |writer| {
        let mut reader = input.open()?;
        let summary = pipeline::decrypt_stream(&mut reader, writer, &key)?;
        eprintln!("decrypted {} bytes", summary.original_len);
        Ok(())
    })
}

fn characterization_map(args: &CharacterizeArgs) -> CharacterizationMap {
    let base = CharacterizationMap::reference(args.map.into());
    match base {
        CharacterizationMap::Logistic { mu } => CharacterizationMap::Logistic {
            mu: args.mu.unwrap_or(mu),
        },
        CharacterizationMap::Tent { mu } => CharacterizationMap::Tent {
            mu: args.mu.unwrap_or(mu),
        },
        CharacterizationMap::Henon { a, b } => CharacterizationMap::Henon {
            a: args.a.unwrap_or(a),
            b: args.b.unwrap_or(b),
        },
        CharacterizationMap::Lorenz { sigma, rho, beta } => CharacterizationMap::Lorenz {
            sigma: args.sigma.unwrap_or(sigma),
            rho: args.rho.unwrap_or(rho),
            beta: args.beta.unwrap_or(beta),
        },
        CharacterizationMap::Chirikov { k } => CharacterizationMap::Chirikov {
            k: args.k.unwrap_or(k),
        },
    }
}

fn cmd_characterize(args: CharacterizeArgs) -> Result<(), Failure> {
    let map = characterization_map(&args);
    let name = map.map_id().name();
    let csv = match args.instrument {
        Instrument::Bifurcation => {
            let rows = chaos::bifurcation_scan(
                &map,
                args.param_lo,
                args.param_hi,
                args.steps,
                args.samples,
            )?;
            let mut csv = String::from("param,value\n");
            for (param, values) in rows {
                for v in values {
                    csv.push_str(&format!("{param},{v}\n"));
                }
            }
            csv
        }
        Instrument::Lyapunov => {
            let le = chaos::lyapunov_exponent(&map, args.iterations)?;
            eprintln!(
                "{name}: lyapunov exponent {le:.4} over {} iterations",
                args.iterations
            );
            format!("map,metric,value\n{name},lyapunov_exponent,{le}\n")
        }
        Instrument::Bench => {
            let corpus = corpus::zipf_bytes(args.bytes, args.seed);
            let row = chaos::map_benchmark(&map, &corpus)?;
            format!(
                "map,metric,value\n{name},bytes_per_sec,{:.0}\n{name},abs_corr,{:.6}\n",
                row.bytes_per_sec, row.abs_corr
            )
        }
    };
    write_text_output(args.out.as_deref(), &csv)
}

fn require_input(input: &Option<PathBuf>) -> Result<Vec<u8>, Failure> {
    let path = input
        .as_ref()
        .ok_or_else(|| Failure::new(EXIT_USAGE, "this analysis needs --in"))?;
    Ok(Input::File(path.clone()).read_all()?)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    match args.kind {
        AnalysisKind::Cc => {
            let key = load_key(args.key)?;
            let data = require_input(&args.input)?;
            let cc = analysis::plain_cipher_correlation(&data, &key)?;
            println!("plain-cipher pearson cc = {cc:.6}");
            write_text_output(
                args.out.as_deref(),
                &format!("metric,value\nplain_cipher_cc,{cc}\n"),
            )
        }
        AnalysisKind::Csi => {
            let key = load_key(args.key)?;
            let data = require_input(&args.input)?;
            let container = pipeline::encrypt(
                &data,
                &key,
                CodecId::Baseline,
                PipelineMode::Sce,
                pipeline::DEFAULT_CHUNK_SIZE,
            )?;
            let (_, body) = pipeline::split_container(&container)?;
            let common = data.len().min(body.len());
            let csi = analysis::cosine_similarity(&data[..common], &body[..common])?;
            println!("plain-cipher cosine similarity = {csi:.6}");
            write_text_output(
                args.out.as_deref(),
                &format!("metric,value\nplain_cipher_csi,{csi}\n"),
            )
        }
        AnalysisKind::Keysens | AnalysisKind::Ptsens => {
            let key = load_key(args.key)?;
            let data = require_input(&args.input)?;
            let mut rng = corpus::SplitMix64::new(args.seed);
            let mut csv = String::from("trial,bit,cc,csi,len_a,len_b,equivalent_skipped\n");
            let mut sum_abs_cc = 0.0f64;
            for trial in 0..args.trials {
                let outcome = match args.kind {
                    AnalysisKind::Keysens => {
                        let bit = (rng.next_u64() % keys::KEY_SECRET_BITS as u64) as usize;
                        analysis::key_sensitivity(&data, &key, bit)?
                    }
                    _ => {
                        // Early-position flips: the chain only diffuses
                        // forward, so these measure the whole stream.
                        let span = (data.len() * 8).min(512) as u64;
                        let bit = (rng.next_u64() % span) as usize;
                        analysis::plaintext_sensitivity(&data, &key, bit)?
                    }
                };
                sum_abs_cc += outcome.cc.abs();
                csv.push_str(&format!(
                    "{trial},{},{},{},{},{},{}\n",
                    outcome.flipped_bit,
                    outcome.cc,
                    outcome.csi,
                    outcome.len_a,
                    outcome.len_b,
                    outcome.equivalent_skipped
                ));
            }
            println!(
                "mean |cc| over {} trials = {:.6}",
                args.trials,
                sum_abs_cc / args.trials.max(1) as f64
            );
            write_text_output(args.out.as_deref(), &csv)
        }
        AnalysisKind::Chen => {
            let key = load_key(args.key)?;
            let equalities = if args.control {
                analysis::chen_property_check_weak_control(&key, args.trials, args.len, args.seed)?
            } else {
                analysis::chen_property_check(&key, args.trials, args.len, args.seed)?
            };
            println!(
                "{equalities} violations in {} trials{}",
                args.trials,
                if args.control {
                    " (weakened control cipher)"
                } else {
                    ""
                }
            );
            Ok(())
        }
        AnalysisKind::Nist => {
            let data = require_input(&args.input)?;
            let report = nist::campaign(&data, args.samples, args.length, args.alpha)
                .map_err(analysis::AnalysisError::from)?;
            let mut csv = String::from("test,sample,statistic,p_value\n");
            for row in &report.rows {
                let min_p = row
                    .p_values
                    .iter()
                    .flatten()
                    .copied()
                    .fold(f64::INFINITY, f64::min);
                println!(
                    "{:<4} {:<20} p = {min_p:.6}  pass rate {:.3}",
                    row.test.short_id(),
                    row.test.name(),
                    row.pass_rate
                );
                for (sample, ps) in row.p_values.iter().enumerate() {
                    for (statistic, p) in ps.iter().enumerate() {
                        csv.push_str(&format!("{},{sample},{statistic},{p}\n", row.test.name()));
                    }
                }
            }
            write_text_output(args.out.as_deref(), &csv)
        }
        AnalysisKind::ExportBits => {
            let data = require_input(&args.input)?;
            let target = args
                .out
                .as_ref()
                .ok_or_else(|| Failure::new(EXIT_USAGE, "export-bits needs --out"))?;
            with_atomic_output(&target.display().to_string(), |w| {
                nist::export_bitstream(&data, w)?;
                Ok(())
            })?;
            eprintln!("exported {} bits", data.len() * 8);
            Ok(())
        }
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let corpus_bytes = match &args.corpus {
        Some(path) => Input::File(path.clone()).read_all()?,
        None => corpus::zipf_bytes(args.bytes, args.seed),
    };
    let csv = match args.kind {
        BenchKind::Pipeline => {
            let key = load_key(args.key)?;
            let rows = pipeline::pipeline_benchmark(
                &corpus_bytes,
                &key,
                &PipelineMode::ALL,
                &[CodecId::Store, CodecId::Baseline],
                args.chunk_size,
            )?;
            let mut csv = String::from("mode,codec,ratio,encrypt_secs,decrypt_secs\n");
            for r in rows {
                csv.push_str(&format!(
                    "{},{},{:.6},{:.6},{:.6}\n",
                    r.mode, r.codec, r.ratio, r.encrypt_secs, r.decrypt_secs
                ));
            }
            csv
        }
        BenchKind::Codec => {
            let rows =
                codec::compression_benchmark(&corpus_bytes, &[CodecId::Store, CodecId::Baseline])
                    .map_err(|e| Failure::from(PipelineError::from(e)))?;
            let mut csv = String::from("codec,ratio,compress_secs,decompress_secs\n");
            for r in rows {
                csv.push_str(&format!(
                    "{},{:.6},{:.6},{:.6}\n",
                    r.codec, r.ratio, r.compress_secs, r.decompress_secs
                ));
            }
            csv
        }
    };
    write_text_output(args.out.as_deref(), &csv)
}
