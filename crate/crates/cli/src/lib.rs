//! The `cyclemill` command line.
//!
//! Exit codes: 0 success or target met, 1 valid run with the target missed
//! (or a violator found), 2 usage or input error, 3 oracle cap or internal
//! infeasibility.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use cyclemill::classic;
use cyclemill::gen::{self, PlantedKind};
use cyclemill::oracle::{self, SearchMode, SearchSpec};
use cyclemill::packer::{self, Budget, PackReport};
use cyclemill::{Error, Tournament};

mod checks;

pub use checks::{claim_check, ClaimId, ClaimReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SHORT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cyclemill", version, about = "Disjoint equal-length cycles in tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Random,
    Rotational,
    MinDegree,
    CycleFree,
    Claim2,
    Claim4,
    Claim5,
    TailCaseA,
    TailCaseB,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pack k disjoint q-cycles.
    Pack {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
        /// TRN file, or `-` for standard input.
        #[arg(long)]
        input: String,
        /// Improvement attempts (default n²).
        #[arg(long)]
        budget: Option<usize>,
        /// Never fall back to the exact oracle.
        #[arg(long)]
        no_oracle: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a packing document against a tournament.
    Verify {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        packing: String,
        #[arg(long)]
        input: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact maximum number of disjoint q-cycles.
    Oracle {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        input: String,
        /// Exit 1 when fewer than k cycles exist.
        #[arg(long)]
        k: Option<usize>,
        /// Give up beyond this many q-cycles.
        #[arg(long, default_value_t = oracle::DEFAULT_CYCLE_CAP)]
        cap: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generate a tournament in TRN format.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: Option<usize>,
        /// Minimum out-degree for `min-degree`.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        /// Comma-separated residues for `rotational`.
        #[arg(long, value_delimiter = ',')]
        symbols: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// For planted kinds: also write the planted family here.
        #[arg(long)]
        packing_out: Option<String>,
    },
    /// Search for tournaments above a degree floor without k disjoint q-cycles.
    Search {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        degree_floor: Option<usize>,
        #[arg(long, default_value_t = 64)]
        shards: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_CYCLE_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the property suite for one structural claim.
    ClaimCheck {
        #[arg(long)]
        claim: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Cycle length for `claim1`.
        #[arg(long, default_value_t = 9)]
        q: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a Hamiltonian cycle of a strong tournament.
    Hamcycle {
        #[arg(long)]
        input: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// A failed run: exit code plus message for the error stream.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_INTERNAL,
            Error::Infeasible(ref m) if m.contains("budget") => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64, Failure> {
    seed.ok_or_else(|| usage(format!("{what} is randomized: --seed is required")))
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: String,
}

impl Io<'_> {
    fn read_source(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("reading standard input: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| usage(format!("reading {path}: {e}")))
        }
    }

    fn tournament(&mut self, path: &str) -> Result<Tournament, Failure> {
        let text = self.read_source(path)?;
        Tournament::from_trn(&text).map_err(|e| usage(format!("{path}: {e}")))
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }
}

fn structured_pack(r: &PackReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("status={}\n", r.status.as_str()));
    s.push_str(&format!("q={}\nk={}\nsize={}\n", r.q, r.k, r.packing.len()));
    s.push_str(&format!("fallback_used={}\n", r.fallback_used));
    s.push_str(&format!("counterexample={}\n", r.counterexample));
    for c in &r.packing.cycles {
        s.push_str(&format!("cycle={c}\n"));
    }
    for m in &r.moves {
        s.push_str(&format!("move={} before={} after={}", m.name, m.before, m.after));
        if let Some(d) = &m.detail {
            s.push(' ');
            s.push_str(d);
        }
        s.push('\n');
    }
    for d in &r.diagnostics {
        s.push_str(&format!("diagnostic={d}\n"));
    }
    s
}

fn execute(cmd: Command, io: &mut Io) -> Result<i32, Failure> {
    match cmd {
        Command::Pack { q, k, input, budget, no_oracle, seed: _, format } => {
            let t = io.tournament(&input)?;
            let b = Budget {
                max_moves: budget,
                use_oracle: !no_oracle,
                ..Budget::default()
            };
            let r = packer::pack(&t, q, k, &b)?;
            io.out.push_str(&match format {
                Format::Text => r.to_document(),
                Format::Structured => structured_pack(&r),
            });
            Ok(if r.target_met() { EXIT_OK } else { EXIT_SHORT })
        }
        Command::Verify { q, k, packing, input, seed: _, format } => {
            let t = io.tournament(&input)?;
            let doc = io.read_source(&packing)?;
            let p = packer::parse_packing_document(&doc, q)?;
            let result = packer::verify_packing(&t, &p, q, k);
            match (format, &result) {
                (Format::Text, Ok(())) => io.line(format!("valid: {} disjoint {q}-cycles", p.len())),
                (Format::Text, Err(v)) => io.line(format!("invalid: {v}")),
                (Format::Structured, Ok(())) => io.line(format!("valid=true\nsize={}", p.len())),
                (Format::Structured, Err(v)) => io.line(format!("valid=false\nsize={}\nviolation={v}", p.len())),
            }
            Ok(if result.is_ok() { EXIT_OK } else { EXIT_SHORT })
        }
        Command::Oracle { q, input, k, cap, seed: _, format } => {
            let t = io.tournament(&input)?;
            let m = oracle::max_disjoint_q_cycles_capped(&t, q, None, cap)?;
            match format {
                Format::Text => {
                    io.line(format!("max={}", m.count));
                    for c in &m.witness.cycles {
                        io.line(c.to_string());
                    }
                }
                Format::Structured => {
                    io.line(format!("max={}", m.count));
                    for c in &m.witness.cycles {
                        io.line(format!("cycle={c}"));
                    }
                }
            }
            Ok(match k {
                Some(k) if m.count < k => EXIT_SHORT,
                _ => EXIT_OK,
            })
        }
        Command::Gen { kind, n, d, q, symbols, seed, packing_out } => {
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| usage(format!("gen --kind {kind:?} needs --{name}")));
            let t = match kind {
                GenKind::Random => gen::random_tournament(need(n, "n")?, require_seed(seed, "gen random")?)?,
                GenKind::Rotational => gen::rotational_tournament(need(n, "n")?, &symbols)?,
                GenKind::MinDegree => {
                    gen::min_degree_tournament(need(n, "n")?, need(d, "d")?, require_seed(seed, "gen min-degree")?)?
                }
                GenKind::CycleFree => {
                    gen::q_cycle_free_tournament(need(n, "n")?, need(q, "q")?, require_seed(seed, "gen cycle-free")?)?
                }
                planted => {
                    let pk = match planted {
                        GenKind::Claim2 => PlantedKind::Claim2,
                        GenKind::Claim4 => PlantedKind::Claim4,
                        GenKind::Claim5 => PlantedKind::Claim5,
                        GenKind::TailCaseA => PlantedKind::TailCaseA,
                        _ => PlantedKind::TailCaseB,
                    };
                    let inst = gen::planted_move_instance(pk, need(q, "q")?, require_seed(seed, "gen planted")?)?;
                    if let Some(path) = packing_out {
                        let mut doc = format!("planted={pk}\nq={}\n", inst.packing.q);
                        for c in &inst.packing.cycles {
                            doc.push_str(&format!("{c}\n"));
                        }
                        fs::write(&path, doc).map_err(|e| usage(format!("writing {path}: {e}")))?;
                    }
                    inst.tournament
                }
            };
            io.out.push_str(&t.to_trn());
            Ok(EXIT_OK)
        }
        Command::Search {
            q,
            k,
            n_min,
            n_max,
            mode,
            samples,
            seed,
            degree_floor,
            shards,
            cap,
            format,
        } => {
            let mode = match mode {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Sampled => SearchMode::Sampled,
            };
            let mut spec = SearchSpec::new(q, k, n_min, n_max.unwrap_or(n_min), mode);
            spec.seed = match mode {
                SearchMode::Sampled => require_seed(seed, "search --mode sampled")?,
                SearchMode::Exhaustive => seed.unwrap_or(0),
            };
            spec.sample_count = samples;
            spec.degree_floor = degree_floor;
            spec.shards = shards;
            spec.cycle_cap = cap;
            let r = oracle::counterexample_search(&spec)?;
            match format {
                Format::Text => io.out.push_str(&r.to_text()),
                Format::Structured => {
                    for t in &r.violators {
                        io.line(format!("violator={}", t.to_trn_inline()));
                    }
                    for t in &r.undetermined {
                        io.line(format!("undetermined={}", t.to_trn_inline()));
                    }
                    io.line(format!(
                        "examined={} violators={} seed={}",
                        r.examined,
                        r.violators.len(),
                        r.seed
                    ));
                }
            }
            Ok(if !r.violators.is_empty() {
                EXIT_SHORT
            } else if !r.undetermined.is_empty() {
                EXIT_INTERNAL
            } else {
                EXIT_OK
            })
        }
        Command::ClaimCheck { claim, trials, seed, q, format } => {
            let id: ClaimId = claim.parse().map_err(|_| usage(format!("unknown claim id {claim:?}")))?;
            let seed = require_seed(seed, "claim-check")?;
            let r = claim_check(id, trials, seed, q)?;
            io.out.push_str(&match format {
                Format::Text => r.to_text(),
                Format::Structured => r.to_structured(),
            });
            Ok(if r.violations == 0 { EXIT_OK } else { EXIT_SHORT })
        }
        Command::Hamcycle { input, seed: _ } => {
            let t = io.tournament(&input)?;
            match classic::hamiltonian_cycle(&t) {
                Ok(c) => {
                    io.line(c.to_string());
                    Ok(EXIT_OK)
                }
                Err(e @ Error::NotStrong { .. }) => {
                    io.line(format!("no Hamiltonian cycle: {e}"));
                    Ok(EXIT_SHORT)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut io = Io {
        stdin,
        out: String::new(),
    };
    match execute(cli.command, &mut io) {
        Ok(code) => {
            if stdout.write_all(io.out.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
            code
        }
        Err(Failure(code, msg)) => {
            let _ = stdout.write_all(io.out.as_bytes());
            let _ = writeln!(stderr, "cyclemill: {msg}");
            code
        }
    }
}
