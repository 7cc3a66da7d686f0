//! `amt`: command-line frontend for the analysis kernel.
//!
//! Verbs parse the kernel's text formats, run one analysis each, and print
//! line-oriented `key=value` reports. Exit codes: 0 on success, 1 on an
//! analysis error (a well-formed input outside an operation's domain), 2 on
//! a parse or usage error. All output is deterministic for a given input
//! and seed; `AMT_SEED` supplies the default sampling seed.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use amt_core::chords::{classify_triad, is_standard, Chord};
use amt_core::harmony::{derive_epsilon, HarmonicGrid};
use amt_core::measure::{parse_rat, Rat};
use amt_core::melody::{infer_scales, transpose, Melody};
use amt_core::model::{check_axiom, ModelId};
use amt_core::notes::GridPitch;
use amt_core::rhythm::{classify, sig_tempo, signature, Rhythm};
use amt_core::scales::{
    disjoint_tetrachord_pairs, is_maximally_even_scale, make_scale, scale_catalog,
    semitone_step, sensible, tetrachords, Scale,
};
use amt_core::Error;

#[derive(Parser)]
#[command(
    name = "amt",
    about = "Exact-arithmetic music analysis: scales, melodies, chords, rhythm, and axiom checking",
    version
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Analyze a scale given as "<TONIC>: s1 s2 ... sn" (steps in semitones).
    ScaleAnalyze {
        /// Force the harmonic grid instead of auto-selecting it from the steps.
        #[arg(long, value_parser = parse_grid_arg)]
        grid: Option<HarmonicGrid>,
        /// Scale text, e.g. "C: 2 2 1 2 2 2 1".
        scale: String,
    },
    /// List the built-in scale catalog.
    ScaleList,
    /// Transpose a melody by a harmonic interval given in semitones.
    MelodyTranspose {
        /// Transposition amount in semitones (integer or fraction, e.g. 7 or 3/2).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
        by: Rat,
        /// Force the harmonic grid instead of auto-selecting it.
        #[arg(long, value_parser = parse_grid_arg)]
        grid: Option<HarmonicGrid>,
        /// Melody text: whitespace-separated pitches, e.g. "C4 D4 E4".
        melody: String,
    },
    /// List every catalog scale (any tonic) the melody is based on.
    MelodyInfer {
        /// Melody text: whitespace-separated pitches.
        melody: String,
    },
    /// Report size, grid, standardness, and triad quality of a chord.
    ChordClassify {
        /// Chord text: pitches joined by '+', e.g. "C4+E4+G4".
        chord: String,
    },
    /// Report regularity, beat count, tempo, and class of a rhythm.
    RhythmClassify {
        /// Rhythm text, e.g. "span=1; 0:C4 1/3:D4 2/3:E4".
        rhythm: String,
    },
    /// Check the sound axioms in a model, printing one report line each.
    AxiomsCheck {
        /// Model to check: cartesian, affine, or circle.
        #[arg(long, default_value = "cartesian", value_parser = parse_model_arg)]
        model: ModelId,
        /// Check a single axiom instead of sweeping 1..=20.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=20))]
        axiom: Option<u8>,
        /// Samples per universally quantified claim.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Sampling seed; defaults to AMT_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Derive the smallest harmonic step from its defining constraints.
    EpsilonDerive,
}

fn parse_grid_arg(s: &str) -> Result<HarmonicGrid, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "western" => Ok(HarmonicGrid::Western),
        "modal" => Ok(HarmonicGrid::Modal),
        other => Err(format!("expected 'western' or 'modal', got '{other}'")),
    }
}

fn parse_model_arg(s: &str) -> Result<ModelId, String> {
    ModelId::from_str(s).map_err(|e| e.to_string())
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// CLI-level failure: parse errors carry a position, analysis errors are
/// forwarded verbatim from the kernel.
enum CliError {
    Parse { line: usize, column: usize, message: String },
    Usage(String),
    Analysis(Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Analysis(_) => 1,
        }
    }

    fn report(&self) -> String {
        match self {
            CliError::Parse { line, column, message } => {
                format!("parse error at line {line}, column {column}: {message}")
            }
            CliError::Usage(message) => format!("error: {message}"),
            CliError::Analysis(e) => format!("error: {e}"),
        }
    }
}

/// Whitespace-separated tokens with their 1-based (line, column) positions.
fn tokens_with_positions(input: &str) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 0;
    let mut current = String::new();
    let mut start = (1, 1);
    for ch in input.chars() {
        if ch == '\n' {
            if !current.is_empty() {
                out.push((start.0, start.1, std::mem::take(&mut current)));
            }
            line += 1;
            column = 0;
            continue;
        }
        column += 1;
        if ch.is_whitespace() {
            if !current.is_empty() {
                out.push((start.0, start.1, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = (line, column);
            }
            current.push(ch);
        }
    }
    if !current.is_empty() {
        out.push((start.0, start.1, current));
    }
    out
}

/// Map a kernel error from parsing `input` to a CLI error, locating the
/// first token `accept` rejects for the position report.
fn locate(input: &str, err: Error, accept: impl Fn(&str) -> bool) -> CliError {
    match err {
        Error::Parse(message) => {
            let (line, column) = tokens_with_positions(input)
                .iter()
                .find(|(_, _, tok)| !accept(tok))
                .map(|(l, c, _)| (*l, *c))
                .unwrap_or((1, 1));
            CliError::Parse { line, column, message }
        }
        other => CliError::Analysis(other),
    }
}

fn parse_melody_text(text: &str) -> Result<Melody, CliError> {
    text.parse::<Melody>()
        .map_err(|e| locate(text, e, |tok| tok.parse::<GridPitch>().is_ok()))
}

fn parse_scale_text(text: &str) -> Result<Scale, CliError> {
    text.parse::<Scale>().map_err(|e| match text.split_once(':') {
        None => locate(text, e, |_| false),
        Some((tonic_part, steps_part)) => {
            if tonic_part.trim().parse::<amt_core::notes::Note>().is_err() {
                return locate(text, e, |tok| !tok.starts_with(tonic_part.trim()));
            }
            // Positions inside the step list: offset past "<tonic>:".
            let offset = tonic_part.chars().count() + 1;
            match e {
                Error::Parse(message) => {
                    let (line, column) = tokens_with_positions(steps_part)
                        .iter()
                        .find(|(_, _, tok)| parse_rat(tok).is_err())
                        .map(|(l, c, _)| (*l, if *l == 1 { c + offset } else { *c }))
                        .unwrap_or((1, 1));
                    CliError::Parse { line, column, message }
                }
                other => CliError::Analysis(other),
            }
        }
    })
}

/// `+`-separated pieces of a chord with start columns, a bare `q` or
/// fraction piece glued onto its predecessor (microtonal suffixes).
fn chord_tokens_with_columns(text: &str) -> Vec<(usize, String)> {
    let mut pieces: Vec<(usize, String)> = Vec::new();
    let mut column = 0;
    let mut start = 1;
    let mut current = String::new();
    for ch in text.chars() {
        column += 1;
        if ch == '+' {
            pieces.push((start, std::mem::take(&mut current)));
            start = column + 1;
        } else {
            current.push(ch);
        }
    }
    pieces.push((start, current));
    let is_suffix = |p: &str| {
        p == "q" || (!p.is_empty() && p.chars().all(|c| c.is_ascii_digit() || c == '/'))
    };
    let mut glued: Vec<(usize, String)> = Vec::new();
    for (col, piece) in pieces {
        if let Some(last) = glued.last_mut() {
            if is_suffix(&piece) {
                last.1.push('+');
                last.1.push_str(&piece);
                continue;
            }
        }
        glued.push((col, piece));
    }
    glued
}

fn parse_chord_text(text: &str) -> Result<Chord, CliError> {
    text.parse::<Chord>().map_err(|e| match e {
        Error::Parse(message) => {
            let column = chord_tokens_with_columns(text)
                .iter()
                .find(|(_, tok)| tok.trim().parse::<GridPitch>().is_err())
                .map(|(c, _)| *c)
                .unwrap_or(1);
            CliError::Parse { line: 1, column, message }
        }
        other => CliError::Analysis(other),
    })
}

fn rhythm_event_token_ok(tok: &str) -> bool {
    let Some((onset, payload)) = tok.split_once(':') else {
        return false;
    };
    let onset_ok = match onset.strip_prefix("irr(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.parse::<f64>().is_ok(),
        None => parse_rat(onset).is_ok(),
    };
    onset_ok && (payload == "rest" || payload.parse::<GridPitch>().is_ok())
}

fn parse_rhythm_text(text: &str) -> Result<Rhythm, CliError> {
    text.parse::<Rhythm>().map_err(|e| match e {
        Error::Parse(message) => {
            let position = match text.split_once(';') {
                None => Some((1, 1)),
                Some((head, tail)) => {
                    let head_trimmed = head.trim_start();
                    let head_col = head.chars().count() - head_trimmed.chars().count() + 1;
                    match head_trimmed.strip_prefix("span=") {
                        None => Some((1, head_col)),
                        Some(span) if parse_rat(span).is_err() => Some((1, head_col + 5)),
                        Some(_) => {
                            let offset = head.chars().count() + 1;
                            tokens_with_positions(tail)
                                .iter()
                                .find(|(_, _, tok)| !rhythm_event_token_ok(tok))
                                .map(|(l, c, _)| (*l, if *l == 1 { c + offset } else { *c }))
                        }
                    }
                }
            };
            let (line, column) = position.unwrap_or((1, 1));
            CliError::Parse { line, column, message }
        }
        other => CliError::Analysis(other),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn semitone_list(steps: &[amt_core::Measure]) -> String {
    steps
        .iter()
        .map(|m| {
            m.semitone_exponent()
                .expect("scale steps are harmonic powers of two")
                .to_string()
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_scale_analyze(text: &str, grid: Option<HarmonicGrid>) -> Result<String, CliError> {
    let parsed = parse_scale_text(text)?;
    let scale = match grid {
        Some(g) if g != parsed.grid() => make_scale(
            parsed.tonic().clone(),
            parsed.ascent().to_vec(),
            Some(parsed.descent().to_vec()),
            g,
        )
        .map_err(CliError::Analysis)?,
        _ => parsed,
    };
    let mut out = String::new();
    let _ = writeln!(out, "tonic={}", scale.tonic());
    let _ = writeln!(out, "grid={}", scale.grid());
    let _ = writeln!(out, "steps={}", semitone_list(scale.ascent()));
    let _ = writeln!(out, "compatible={}", yes_no(scale.is_compatible()));
    let evenness = match is_maximally_even_scale(&scale) {
        Ok(b) => yes_no(b).to_string(),
        Err(Error::NotOnGrid) => "n/a".to_string(),
        Err(e) => return Err(CliError::Analysis(e)),
    };
    let _ = writeln!(out, "maximally-even={evenness}");
    let (ascendent, descendent) = sensible(&scale);
    let _ = writeln!(out, "sensible-ascendent={}", yes_no(ascendent));
    let _ = writeln!(out, "sensible-descendent={}", yes_no(descendent));
    let tets = tetrachords(&scale);
    let _ = writeln!(out, "tetrachords={}", tets.len());
    let _ = writeln!(
        out,
        "disjoint-pairs={}",
        disjoint_tetrachord_pairs(&tets, scale.tonic())
    );
    let components = scale
        .module()
        .components
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(out, "components={components}");
    Ok(out)
}

fn run_scale_list() -> String {
    let mut out = String::new();
    for entry in scale_catalog() {
        let steps = entry
            .ascent_semitones
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let _ = write!(out, "name={} grid={} steps={}", entry.name, entry.grid, steps);
        if let Some(descent) = &entry.descent_semitones {
            let down = descent
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let _ = write!(out, " descent={down}");
        }
        out.push('\n');
    }
    out
}

fn run_melody_transpose(
    text: &str,
    by: &Rat,
    grid: Option<HarmonicGrid>,
) -> Result<String, CliError> {
    let melody = parse_melody_text(text)?;
    let grid = grid.unwrap_or_else(|| {
        let fractional = !by.is_integer()
            || melody.terms().iter().any(|p| !p.index().is_integer());
        if fractional {
            HarmonicGrid::Modal
        } else {
            HarmonicGrid::Western
        }
    });
    let step = semitone_step(by.clone());
    let transposed = transpose(&melody, &step, grid).map_err(CliError::Analysis)?;
    Ok(format!("{transposed}\n"))
}

fn run_melody_infer(text: &str) -> Result<String, CliError> {
    let melody = parse_melody_text(text)?;
    let scales = infer_scales(&melody, &scale_catalog()).map_err(CliError::Analysis)?;
    let mut out = String::new();
    for s in scales {
        let _ = writeln!(out, "grid={} scale={s}", s.grid());
    }
    Ok(out)
}

fn run_chord_classify(text: &str) -> Result<String, CliError> {
    let chord = parse_chord_text(text)?;
    let quality = match classify_triad(&chord) {
        Ok(q) => q.to_string(),
        Err(Error::NotATriadShape) => "n/a".to_string(),
        Err(e) => return Err(CliError::Analysis(e)),
    };
    let mut out = String::new();
    let _ = writeln!(out, "size={}", chord.len());
    let _ = writeln!(out, "grid={}", chord.grid());
    let _ = writeln!(out, "standard={}", yes_no(is_standard(&chord, chord.grid())));
    let _ = writeln!(out, "quality={quality}");
    Ok(out)
}

fn run_rhythm_classify(text: &str) -> Result<String, CliError> {
    let rhythm = parse_rhythm_text(text)?;
    let class = classify(&rhythm).map_err(CliError::Analysis)?;
    let sig = signature(&rhythm).map_err(CliError::Analysis)?;
    let mut out = String::new();
    let _ = writeln!(out, "regular=yes");
    let _ = writeln!(out, "beats={}", sig.beat_count);
    let _ = writeln!(out, "tempo={}", sig_tempo(&sig));
    let _ = writeln!(out, "class={class}");
    Ok(out)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("AMT_SEED") {
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            CliError::Usage(format!("AMT_SEED must be an unsigned integer, got '{raw}'"))
        }),
        Err(_) => Ok(0),
    }
}

fn run_axioms_check(
    model: ModelId,
    axiom: Option<u8>,
    samples: u64,
    seed: Option<u64>,
) -> Result<String, CliError> {
    let seed = resolve_seed(seed)?;
    let mut out = String::new();
    match axiom {
        Some(id) => {
            let report = check_axiom(model, id, samples, seed).map_err(CliError::Analysis)?;
            let _ = writeln!(out, "{report}");
        }
        None => {
            for id in 1..=20 {
                match check_axiom(model, id, samples, seed) {
                    Ok(report) => {
                        let _ = writeln!(out, "{report}");
                    }
                    Err(Error::UnsupportedAxiom(reason)) => {
                        let _ = writeln!(out, "AXIOM {id} {model} SKIP {reason}");
                    }
                    Err(e) => return Err(CliError::Analysis(e)),
                }
            }
        }
    }
    Ok(out)
}

fn run_epsilon_derive() -> String {
    let (epsilon, whole_tone, _) = derive_epsilon();
    format!("epsilon={epsilon}\nwhole-tone={whole_tone}\n")
}

fn dispatch(verb: Verb) -> Result<String, CliError> {
    match verb {
        Verb::ScaleAnalyze { grid, scale } => run_scale_analyze(&scale, grid),
        Verb::ScaleList => Ok(run_scale_list()),
        Verb::MelodyTranspose { by, grid, melody } => {
            run_melody_transpose(&melody, &by, grid)
        }
        Verb::MelodyInfer { melody } => run_melody_infer(&melody),
        Verb::ChordClassify { chord } => run_chord_classify(&chord),
        Verb::RhythmClassify { rhythm } => run_rhythm_classify(&rhythm),
        Verb::AxiomsCheck { model, axiom, samples, seed } => {
            run_axioms_check(model, axiom, samples, seed)
        }
        Verb::EpsilonDerive => Ok(run_epsilon_derive()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.verb) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.report());
            ExitCode::from(e.exit_code())
        }
    }
}
