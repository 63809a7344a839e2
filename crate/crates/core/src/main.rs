use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use intermul::corpus;
use intermul::dsl::{self, Overrides};
use intermul::error::EngineError;
use intermul::field::FieldSpec;
use intermul::groebner;
use intermul::multiplicity;
use intermul::ring::MonomialOrder;
use intermul::suite;

/// Exact intersection-multiplicity engine over graded polynomial rings and
/// their quotients.
#[derive(Parser)]
#[command(name = "intermul", version, about)]
struct Cli {
    /// Input program (.sm) to run
    file: Option<PathBuf>,

    /// Emit newline-delimited JSON records (the default)
    #[arg(long)]
    json: bool,

    /// Emit aligned text instead of JSON
    #[arg(long, conflicts_with = "json")]
    text: bool,

    /// Override every ring's coefficient field: qq or fp:P
    #[arg(long)]
    field: Option<String>,

    /// Override every ring's monomial order: grevlex or lex
    #[arg(long)]
    order: Option<String>,

    /// Cap on polynomial reduction steps before aborting
    #[arg(long)]
    max_steps: Option<u64>,

    /// Default resolution length for commands that omit one
    #[arg(long)]
    max_len: Option<usize>,

    /// Run the bundled corpus from this directory instead of a file
    #[arg(long)]
    corpus: Option<PathBuf>,

    /// Glob over corpus entry ids, e.g. 'vanishing/*'
    #[arg(long)]
    filter: Option<String>,

    /// Seed for the randomized suites
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Run N seeded random vanishing pairs and check chi = 0 on each
    #[arg(long, value_name = "N")]
    random_vanishing: Option<usize>,
}

fn parse_overrides(cli: &Cli) -> Result<Overrides, String> {
    let field = match cli.field.as_deref() {
        None => None,
        Some("qq") => Some(FieldSpec::QQ),
        Some(s) => {
            let p = s
                .strip_prefix("fp:")
                .and_then(|p| p.parse::<u32>().ok())
                .ok_or_else(|| format!("--field must be qq or fp:P, got '{s}'"))?;
            Some(FieldSpec::prime_field(p).map_err(|e| e.to_string())?)
        }
    };
    let order = match cli.order.as_deref() {
        None => None,
        Some("grevlex") => Some(MonomialOrder::Grevlex),
        Some("lex") => Some(MonomialOrder::Lex),
        Some(s) => return Err(format!("--order must be grevlex or lex, got '{s}'")),
    };
    Ok(Overrides { field, order })
}

fn emit(records: &[serde_json::Value], text: bool) {
    if text {
        print!("{}", dsl::render_text(records));
    } else {
        for r in records {
            println!("{r}");
        }
    }
}

fn run_file(path: &PathBuf, overrides: &Overrides, text: bool) -> u8 {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return 2;
        }
    };
    let session = match dsl::parse_program(&src, overrides) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let out = dsl::run_session(&session);
    emit(&out.records, text);
    out.exit as u8
}

fn run_corpus(dir: &PathBuf, filter: Option<&str>, overrides: &Overrides, text: bool) -> u8 {
    let entries = match corpus::load_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let pattern = match filter {
        Some(f) => match glob::Pattern::new(f) {
            Ok(p) => Some(p),
            Err(e) => {
                eprintln!("error: bad --filter glob: {e}");
                return 2;
            }
        },
        None => None,
    };
    let mut records = Vec::new();
    let mut all_pass = true;
    let mut hit_limit = false;
    for entry in &entries {
        if let Some(p) = &pattern {
            if !p.matches(&entry.id) {
                continue;
            }
        }
        let out = corpus::run_entry(entry, overrides);
        all_pass &= out.pass;
        hit_limit |= out
            .records
            .iter()
            .any(|r| r["error"].as_str().is_some_and(|e| e.contains("resource limit")));
        records.push(json!({
            "entry": out.id,
            "cite": out.cite,
            "pass": out.pass,
            "mismatches": out.mismatches,
        }));
    }
    if text {
        for r in &records {
            println!(
                "{:<28} {:<5} {}",
                r["entry"].as_str().unwrap_or("?"),
                if r["pass"] == json!(true) { "pass" } else { "FAIL" },
                r["cite"].as_str().unwrap_or("")
            );
        }
    } else {
        emit(&records, false);
    }
    if hit_limit {
        3
    } else if all_pass {
        0
    } else {
        1
    }
}

fn run_random_vanishing(seed: u64, count: usize, text: bool) -> u8 {
    let pairs = match suite::random_vanishing_pairs(seed, count) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return if matches!(e, EngineError::ResourceLimitExceeded(_)) { 3 } else { 1 };
        }
    };
    let mut records = Vec::new();
    let mut all_pass = true;
    let mut hit_limit = false;
    for (i, (m, n)) in pairs.iter().enumerate() {
        match multiplicity::chi(m, n) {
            Ok(chi) => {
                let pass = chi == 0;
                all_pass &= pass;
                records.push(json!({"pair": i, "chi": chi, "pass": pass}));
            }
            Err(e) => {
                all_pass = false;
                hit_limit |= matches!(e, EngineError::ResourceLimitExceeded(_));
                records.push(json!({"pair": i, "error": e.to_string(), "pass": false}));
            }
        }
    }
    emit(&records, text);
    if hit_limit {
        3
    } else if all_pass {
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = match parse_overrides(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.max_steps {
        groebner::set_max_steps(n);
    }
    dsl::set_default_max_len(cli.max_len);

    let code = if let Some(dir) = &cli.corpus {
        run_corpus(dir, cli.filter.as_deref(), &overrides, cli.text)
    } else if let Some(count) = cli.random_vanishing {
        run_random_vanishing(cli.seed, count, cli.text)
    } else if let Some(file) = &cli.file {
        run_file(file, &overrides, cli.text)
    } else {
        eprintln!("error: provide an input file, --corpus DIR, or --random-vanishing N");
        2
    };
    ExitCode::from(code)
}
