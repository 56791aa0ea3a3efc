use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use splicekit::closure::{build_closure, Side};
use splicekit::decider::{
    decide_splicing, theorem_bounds, BoundsProfile, CanonicalOptions, Certificate, Decision, Verdict,
};
use splicekit::regular::{parse_regex, Alphabet, Dfa, Nfa};
use splicekit::respect::{brute_respect_witness, RespectContext};
use splicekit::splicing::{bounded_closure, Rule, SplicingSystem, Variant};
use splicekit::syntactic::SyntacticMonoid;

const EXIT_NO: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_LIMIT: u8 = 69;
const EXIT_CANT_CREATE: u8 = 73;

#[derive(Parser)]
#[command(name = "splicekit", version, about = "Splicing systems and regular languages")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Syntactic monoid of a language, as JSON.
    Monoid {
        #[command(flatten)]
        lang: LangArgs,
        /// Accepted for symmetry; output is always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Whether a rule respects a language.
    Respect {
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, allow_hyphen_values = true)]
        rule: String,
        /// On "false", search for a concrete splice leaving the language.
        #[arg(long)]
        witness: bool,
        /// Longest word considered by the witness search.
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// All results of splicing two words with one rule.
    Splice {
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, allow_hyphen_values = true)]
        rule: String,
        #[arg(long, default_value = "")]
        w1: String,
        #[arg(long, default_value = "")]
        w2: String,
        /// Also print the splicing position of classic results.
        #[arg(long)]
        positions: bool,
    },
    /// Saturated closure automaton of a system.
    Closure {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_name = "OUT")]
        emit_closure: Option<PathBuf>,
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
        /// Print the edges added in each saturation round.
        #[arg(long)]
        trace: bool,
    },
    /// Brute-force generated words up to a length.
    Oracle {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        report_len: usize,
        /// Longest intermediate word kept (default: a heuristic margin).
        #[arg(long)]
        cap_len: Option<usize>,
    },
    /// Pumping factorization and pump normalization.
    Pump {
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long)]
        word: String,
        /// Word to normalize (default: the factorized word).
        #[arg(long)]
        z: Option<String>,
        /// Pump count; must be even and exceed |z| + |word| (default: least such).
        #[arg(long)]
        j: Option<usize>,
    },
    /// Decide whether a language is a splicing language.
    Decide {
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Keep only extension-minimal rules.
        #[arg(long)]
        prune: bool,
        #[arg(long, value_name = "OUT")]
        emit_system: Option<PathBuf>,
        #[arg(long, value_name = "OUT")]
        emit_closure: Option<PathBuf>,
        /// Print run statistics as JSON.
        #[arg(long)]
        stats: bool,
        /// Print the whole decision as JSON instead of a summary.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct LangArgs {
    /// A regular expression, or @path to an automaton JSON file.
    #[arg(long)]
    lang: String,
    /// Symbols of the alphabet, in order (required for a regex).
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Args)]
struct BoundsArgs {
    /// `theorem` for the complete bounds of |M_L|.
    #[arg(long, conflicts_with_all = ["axiom_lt", "inner_lt", "outer_lt"])]
    bounds: Option<String>,
    #[arg(long, requires_all = ["inner_lt", "outer_lt"])]
    axiom_lt: Option<usize>,
    #[arg(long, requires_all = ["axiom_lt", "outer_lt"])]
    inner_lt: Option<usize>,
    #[arg(long, requires_all = ["axiom_lt", "inner_lt"])]
    outer_lt: Option<usize>,
}

enum Failure {
    Usage(String),
    Core(splicekit::Error),
    Read(PathBuf, std::io::Error),
    Write(PathBuf, std::io::Error),
}

impl From<splicekit::Error> for Failure {
    fn from(e: splicekit::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn report(&self) -> (u8, String) {
        match self {
            Failure::Usage(m) => (EXIT_USAGE, m.clone()),
            Failure::Core(e @ splicekit::Error::CandidateLimit { .. }) => (
                EXIT_LIMIT,
                format!("{e}; raise SPLICEKIT_CANDIDATE_LIMIT or use smaller custom bounds"),
            ),
            Failure::Core(e) => (EXIT_DATA, e.to_string()),
            Failure::Read(p, e) => (EXIT_NO_INPUT, format!("{}: {e}", p.display())),
            Failure::Write(p, e) => (EXIT_CANT_CREATE, format!("{}: {e}", p.display())),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("splicekit: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (code, msg) = f.report();
            eprintln!("splicekit: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Monoid { lang, json: _ } => {
            let dfa = load_lang(&lang)?;
            println!("{}", SyntacticMonoid::from_dfa(&dfa).to_json());
            Ok(0)
        }
        Command::Respect { lang, variant, rule, witness, bound } => {
            let dfa = load_lang(&lang)?;
            let rule = parse_rule(&rule, variant, dfa.alphabet())?;
            let holds = RespectContext::from_dfa(&dfa).respects(&rule);
            println!("{holds}");
            if !holds && witness {
                match brute_respect_witness(&dfa, &rule, bound) {
                    Some(w) => println!(
                        "witness: w1={} w2={} z={}",
                        show(&w.w1),
                        show(&w.w2),
                        show(&w.z)
                    ),
                    None => println!("no counterexample with words of length <= {bound}"),
                }
            }
            Ok(if holds { 0 } else { EXIT_NO })
        }
        Command::Splice { variant, rule, w1, w2, positions } => {
            let rule = Rule::parse(&rule, variant)?;
            let mut results: Vec<(String, Option<usize>)> = match &rule {
                Rule::Classic(c) => c.splice(&w1, &w2).into_iter().map(|(z, p)| (z, Some(p))).collect(),
                Rule::Pixton(p) => p.splice(&w1, &w2).into_iter().map(|z| (z, None)).collect(),
            };
            results.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)));
            for (z, pos) in results {
                match pos {
                    Some(p) if positions => println!("{} {p}", show_raw(&z)),
                    _ => println!("{}", show_raw(&z)),
                }
            }
            Ok(0)
        }
        Command::Closure { system, emit_closure, dot, trace } => {
            let sys = load_system(&system)?;
            let closure = build_closure(&sys)?;
            let minimal = closure.language();
            println!(
                "states {}, rule paths {}, added edges {}, rounds {}, minimal dfa states {}",
                closure.state_count(),
                closure.rule_paths().len(),
                closure.added_epsilon().len(),
                closure.rounds(),
                minimal.state_count()
            );
            if let Some(w) = minimal.least_word() {
                println!("least word: {}", show(&w));
            } else {
                println!("language is empty");
            }
            if trace {
                for (i, round) in closure.trace().iter().enumerate() {
                    for e in round {
                        let side = match e.provenance.side {
                            Side::IntoEntry => "into-entry",
                            Side::OutOfExit => "out-of-exit",
                        };
                        println!(
                            "round {} rule {} ({}) {} -> {} {side}",
                            i + 1,
                            e.provenance.rule,
                            sys.rules()[e.provenance.rule],
                            e.from,
                            e.to
                        );
                    }
                }
            }
            if let Some(out) = emit_closure {
                write_file(&out, &closure.to_nfa().to_json())?;
            }
            if let Some(out) = dot {
                write_file(&out, &closure.to_dot())?;
            }
            Ok(0)
        }
        Command::Oracle { system, report_len, cap_len } => {
            let sys = load_system(&system)?;
            let cap = match cap_len {
                Some(c) => c,
                None => sys.default_cap_len(report_len)?,
            };
            let mut words: Vec<String> = bounded_closure(&sys, report_len, cap)?.into_iter().collect();
            words.sort_by(|u, v| sys.alphabet().cmp_length_lex(u, v));
            for w in words {
                println!("{}", show_raw(&w));
            }
            Ok(0)
        }
        Command::Pump { lang, word, z, j } => {
            let dfa = load_lang(&lang)?;
            let monoid = SyntacticMonoid::from_dfa(&dfa);
            let f = monoid.pumping_factorization(&word)?;
            println!("alpha={} beta={} gamma={}", show_raw(&f.alpha), show_raw(&f.beta), show_raw(&f.gamma));
            let z = z.unwrap_or_else(|| word.clone());
            let j = j.unwrap_or_else(|| {
                let least = z.len() + word.len() + 1;
                least + least % 2
            });
            let n = monoid.pump_normalize(&z, &f, j)?;
            println!("j={j} steps={}", n.steps);
            println!("{}", show_raw(&n.word));
            Ok(0)
        }
        Command::Decide { lang, variant, bounds, prune, emit_system, emit_closure, stats, json } => {
            let started = Instant::now();
            let dfa = load_lang(&lang)?;
            let profile = match (&bounds.bounds, bounds.axiom_lt, bounds.inner_lt, bounds.outer_lt) {
                (_, Some(a), Some(i), Some(o)) => BoundsProfile::custom(variant, a, i, o)?,
                (Some(b), ..) if b != "theorem" => {
                    return Err(Failure::Usage(format!("unknown bounds profile {b:?}; expected \"theorem\"")))
                }
                _ => theorem_bounds(SyntacticMonoid::from_dfa(&dfa).size(), variant),
            };
            let options = CanonicalOptions { prune, ..CanonicalOptions::default() };
            let decision = decide_splicing(&dfa, &profile, options)?;
            let elapsed = started.elapsed();
            if json {
                println!("{}", decision_json(&decision, elapsed.as_secs_f64()));
            } else {
                print!("{}", summary(&decision));
                if stats {
                    println!("{}", stats_json(&decision, elapsed.as_secs_f64()));
                }
            }
            if let Some(out) = emit_system {
                write_file(&out, &decision.system.to_json())?;
            }
            if let Some(out) = emit_closure {
                write_file(&out, &decision.closure.to_nfa().to_json())?;
            }
            Ok(match decision.verdict {
                Verdict::Yes => 0,
                Verdict::No => EXIT_NO,
                Verdict::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
    }
}

fn parse_variant(text: &str) -> Result<Variant, String> {
    Variant::parse(text).map_err(|e| e.to_string())
}

fn load_lang(args: &LangArgs) -> Result<Dfa, Failure> {
    let given = args.alphabet.as_deref().map(Alphabet::new).transpose()?;
    if let Some(path) = args.lang.strip_prefix('@') {
        let nfa = Nfa::from_json(&read_file(Path::new(path))?)?;
        if let Some(sigma) = given {
            if sigma != *nfa.alphabet() {
                return Err(splicekit::Error::AlphabetMismatch {
                    left: sigma.to_string(),
                    right: nfa.alphabet().to_string(),
                }
                .into());
            }
        }
        return Ok(nfa.to_min_dfa());
    }
    let sigma = given.ok_or_else(|| Failure::Usage("--alphabet is required with a regex --lang".into()))?;
    Ok(parse_regex(&args.lang, &sigma)?.to_min_dfa())
}

fn load_system(path: &Path) -> Result<SplicingSystem, Failure> {
    Ok(SplicingSystem::from_json(&read_file(path)?)?)
}

fn parse_rule(text: &str, variant: Variant, sigma: &Alphabet) -> Result<Rule, Failure> {
    let rule = Rule::parse(text, variant)?;
    for part in rule.components() {
        sigma.check_word(part)?;
    }
    Ok(rule)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Read(path.to_path_buf(), e))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    fs::write(path, body).map_err(|e| Failure::Write(path.to_path_buf(), e))
}

/// Words as typed, with the empty word shown as "".
fn show_raw(w: &str) -> String {
    if w.is_empty() {
        "\"\"".to_string()
    } else {
        w.to_string()
    }
}

/// Run-length form for long words: aaaab -> a^4b.
fn show(w: &str) -> String {
    if w.is_empty() {
        return show_raw(w);
    }
    let mut out = String::new();
    let chars: Vec<char> = w.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let run = chars[i..].iter().take_while(|&&c| c == chars[i]).count();
        if run > 2 {
            let _ = write!(out, "{}^{run}", chars[i]);
        } else {
            out.extend(std::iter::repeat(chars[i]).take(run));
        }
        i += run;
    }
    out
}

fn summary(d: &Decision) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", d.verdict.name());
    match &d.certificate {
        Certificate::System(sys) => {
            let _ = writeln!(
                out,
                "certificate: {} system with {} rules generates the language",
                sys.variant(),
                sys.rules().len()
            );
        }
        Certificate::Witness(w) => {
            let _ = writeln!(out, "witness: {} (length {}) is not generated", show(w), w.len());
        }
        Certificate::Reason(r) => {
            let _ = writeln!(out, "reason: {r}");
        }
    }
    out
}

fn stats_value(d: &Decision, seconds: f64) -> serde_json::Value {
    json!({
        "monoid_size": d.stats.monoid_size,
        "candidate_rules": u64::try_from(d.stats.candidate_rules).unwrap_or(u64::MAX),
        "respecting_rules": d.stats.respecting_rules,
        "system_rules": d.stats.system_rules,
        "closure_states": d.stats.closure_states,
        "rounds": d.stats.rounds,
        "wall_time_s": seconds,
    })
}

fn stats_json(d: &Decision, seconds: f64) -> String {
    stats_value(d, seconds).to_string()
}

fn decision_json(d: &Decision, seconds: f64) -> String {
    let mut v = json!({
        "verdict": d.verdict.name(),
        "bounds": d.bounds,
        "stats": stats_value(d, seconds),
    });
    match &d.certificate {
        Certificate::System(_) => {
            v["system"] = serde_json::from_str(&d.system.to_json()).expect("system JSON is valid");
        }
        Certificate::Witness(w) => v["witness"] = json!(w),
        Certificate::Reason(r) => v["reason"] = json!(r),
    }
    v.to_string()
}
