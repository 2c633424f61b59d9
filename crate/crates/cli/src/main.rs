use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pluribasket::canonical::sequence;
use pluribasket::enumerate::{
    enumerate_candidates, verify_p12, verify_p24, CandidateRecord, Constraints, SearchReport,
};
use pluribasket::formal::ladder::{rr_invert, Tail};
use pluribasket::{farey_level, wps_volume, Basket, ChiVector, Error, FormalBasket, WeightedHypersurface};

/// Exact basket arithmetic, Riemann–Roch and the small-plurigenus search.
#[derive(Parser)]
#[command(name = "pluribasket", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Volume and plurigenera of a formal basket.
    Eval {
        #[arg(long)]
        basket: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        chi2: i64,
        #[arg(long, default_value_t = 24)]
        upto: u32,
    },
    /// Canonical sequence with the level counts.
    Canon {
        #[arg(long)]
        basket: PathBuf,
        #[arg(long, default_value_t = 12)]
        upto: u32,
    },
    /// Slopes of one Farey level, descending.
    Farey {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        rmax: u32,
    },
    /// Closed-form inversion of a plurigenus vector.
    Invert {
        /// JSON `{"chi": .., "values": [chi_2, …, chi_13, …]}`.
        #[arg(long)]
        chi_vector: PathBuf,
        /// JSON object `{"5": n, "6": n, …}`; empty when omitted.
        #[arg(long)]
        tail: Option<PathBuf>,
    },
    /// Run the search and write the full report.
    Enumerate {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Replay one of the two plurigenus statements.
    Verify {
        #[arg(value_enum)]
        statement: Statement,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Plurigenera and volume of a weighted hypersurface.
    Wps {
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 24)]
        upto: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Statement {
    P12,
    P24,
}

#[derive(Args)]
struct SearchArgs {
    /// JSON constraints; flags below override its fields.
    #[arg(long)]
    constraints: Option<PathBuf>,
    #[arg(long)]
    chi_min: Option<i64>,
    #[arg(long)]
    chi_max: Option<i64>,
    #[arg(long)]
    pm_cap: Option<i64>,
    #[arg(long)]
    no_gcd_lemma: bool,
    #[arg(long)]
    no_semigroup: bool,
    /// Drop the vanishing of the level-6 count (ablation).
    #[arg(long)]
    no_eps6: bool,
    #[arg(long)]
    trace: bool,
}

enum Failure {
    Counterexample(String),
    Input(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Counterexample(report) => Failure::Counterexample(report.to_json()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Run = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// JSON `{"pairs": [[b, r, mult], …]}` or the text form `{2x(1,2), (2,5)}`.
fn read_basket(path: &Path) -> Result<Basket, Failure> {
    let text = read(path)?;
    let trimmed = text.trim();
    let parsed = if trimmed.contains("\"pairs\"") {
        serde_json::from_str(trimmed).map_err(|e| e.to_string())
    } else {
        trimmed.parse::<Basket>().map_err(|e| e.to_string())
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn eval(path: &Path, chi: i64, chi2: i64, upto: u32, format: Format) -> Run {
    let fb = FormalBasket::new(read_basket(path)?, chi, chi2);
    let cv = fb.chi_seq(upto.max(2))?;
    let values: Vec<i64> = (2..=upto.max(2)).map(|m| cv.at(m)).collect();
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                basket: String,
                sigma: i64,
                sigma_prime: String,
                k3: String,
                /// `χ₂ … χ_upto`.
                chi: Vec<i64>,
            }
            json(&Out {
                basket: fb.basket.to_string(),
                sigma: fb.sigma(),
                sigma_prime: fb.sigma_prime().to_string(),
                k3: fb.k3().to_string(),
                chi: values,
            })
        }
        Format::Csv => csv_rows(
            &["m", "chi_m"],
            values.iter().zip(2..).map(|(v, m)| vec![m.to_string(), v.to_string()]),
        ),
    })
}

fn canon(path: &Path, upto: u32, format: Format) -> Run {
    let seq = sequence(&read_basket(path)?, upto)?;
    Ok(match format {
        Format::Json => {
            let mut out = String::new();
            for s in &seq.steps {
                #[derive(Serialize)]
                struct Line<'a> {
                    level: u32,
                    basket: &'a Basket,
                    text: String,
                    epsilon: u64,
                }
                let line = Line { level: s.level, basket: &s.basket, text: s.basket.to_string(), epsilon: s.epsilon };
                out.push_str(&serde_json::to_string(&line).expect("serializable"));
                out.push('\n');
            }
            out
        }
        Format::Csv => csv_rows(
            &["level", "epsilon", "basket"],
            seq.steps.iter().map(|s| vec![s.level.to_string(), s.epsilon.to_string(), s.basket.to_string()]),
        ),
    })
}

fn farey(level: u32, rmax: u32, format: Format) -> Run {
    if rmax < 2 {
        return Err(Failure::Input("rmax must be at least 2".into()));
    }
    let l = farey_level(level, rmax);
    let fractions: Vec<String> = l.fractions.iter().map(|f| f.to_string()).collect();
    Ok(match format {
        Format::Json => json(&fractions),
        Format::Csv => csv_rows(
            &["numerator", "denominator"],
            l.fractions.iter().map(|f| vec![f.num.to_string(), f.den.to_string()]),
        ),
    })
}

fn invert(cv_path: &Path, tail_path: Option<&Path>, format: Format) -> Run {
    let cv: ChiVector = read_json(cv_path)?;
    let tail: Tail = match tail_path {
        Some(p) => read_json(p)?,
        None => Tail::new(),
    };
    let ladder = rr_invert(&cv, &tail)?;
    Ok(match format {
        Format::Json => json(&ladder),
        Format::Csv => {
            let mut rows = vec![
                vec!["tau".to_string(), ladder.tau.to_string()],
                vec!["sigma".to_string(), ladder.sigma.to_string()],
            ];
            rows.extend((3..=12).map(|m| vec![format!("delta{m}"), ladder.delta(m).to_string()]));
            rows.extend(ladder.n0.iter().map(|(r, k)| vec![format!("n0_{r}"), k.to_string()]));
            for (k, v) in [
                ("sigma5", ladder.sigma5),
                ("eps", ladder.eps),
                ("eps5", ladder.eps5),
                ("eps6", ladder.eps6),
                ("eps7", ladder.eps7),
                ("eps8", ladder.eps8),
                ("r_term", ladder.r_term),
            ] {
                rows.push(vec![k.to_string(), v.to_string()]);
            }
            csv_rows(&["quantity", "value"], rows)
        }
    })
}

fn constraints(a: &SearchArgs) -> Result<Constraints, Failure> {
    let mut c: Constraints = match &a.constraints {
        Some(p) => read_json(p)?,
        None => Constraints::default(),
    };
    if let Some(v) = a.chi_min {
        c.chi_min = v;
    }
    if let Some(v) = a.chi_max {
        c.chi_max = v;
    }
    if let Some(v) = a.pm_cap {
        c.pm_cap = v;
    }
    c.apply_gcd_lemma &= !a.no_gcd_lemma;
    c.apply_semigroup &= !a.no_semigroup;
    c.enforce_eps6 &= !a.no_eps6;
    c.record_trace |= a.trace;
    if c.chi_min < 2 {
        return Err(Failure::Input(format!("chi_min = {} is below 2", c.chi_min)));
    }
    Ok(c)
}

fn candidate_row(r: &CandidateRecord) -> Vec<String> {
    let p: Vec<String> = r.p.iter().map(|v| v.to_string()).collect();
    vec![
        r.chi.to_string(),
        p.join(" "),
        r.b12.to_string(),
        r.k3_b12.to_string(),
        r.p10_b12.to_string(),
        r.p24_b12.to_string(),
        r.descendants.count.to_string(),
        r.descendants.min_p10.to_string(),
        r.descendants.min_p24.to_string(),
        r.descendants.min_k3.to_string(),
    ]
}

fn render_report(r: &SearchReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = r.to_json();
            s.push('\n');
            s
        }
        Format::Csv => csv_rows(
            &["chi", "p2_p13", "b12", "k3", "p10", "p24", "descendants", "min_p10", "min_p24", "min_k3"],
            r.candidates.iter().map(candidate_row),
        ),
    }
}

fn search(a: &SearchArgs, statement: Option<Statement>, format: Format) -> Run {
    let c = constraints(a)?;
    let start = Instant::now();
    let result = match statement {
        None => Ok(enumerate_candidates(&c)),
        Some(Statement::P12) => verify_p12(&c),
        Some(Statement::P24) => verify_p24(&c),
    };
    eprintln!("search finished in {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(r) => Ok(render_report(&r, format)),
        Err(Error::Counterexample(r)) => Err(Failure::Counterexample(render_report(&r, format))),
        Err(e) => Err(e.into()),
    }
}

fn wps(weights: &[u32], degree: u32, upto: u32, format: Format) -> Run {
    let h = WeightedHypersurface::new(weights, degree)?;
    let p = h.plurigenera(upto)?;
    let volume = wps_volume(&h)?;
    Ok(match format {
        Format::Json => {
            let mut out = BTreeMap::new();
            out.insert("weights", serde_json::json!(h.weights));
            out.insert("degree", serde_json::json!(h.degree));
            out.insert("plurigenera", serde_json::json!(p));
            out.insert("volume", serde_json::json!(volume.to_string()));
            json(&out)
        }
        Format::Csv => csv_rows(
            &["m", "p_m"],
            p.iter().zip(1..).map(|(v, m)| vec![m.to_string(), v.to_string()]),
        ),
    })
}

fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.output.format;
    let result = match &cli.command {
        Command::Eval { basket, chi, chi2, upto } => eval(basket, *chi, *chi2, *upto, f),
        Command::Canon { basket, upto } => canon(basket, *upto, f),
        Command::Farey { level, rmax } => farey(*level, *rmax, f),
        Command::Invert { chi_vector, tail } => invert(chi_vector, tail.as_deref(), f),
        Command::Enumerate { search: a } => search(a, None, f),
        Command::Verify { statement, search: a } => search(a, Some(*statement), f),
        Command::Wps { weights, degree, upto } => wps(weights, *degree, *upto, f),
    };
    let out = cli.output.out.as_deref();
    match result {
        Ok(text) => match emit(&text, out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
        },
        Err(Failure::Counterexample(text)) => {
            let _ = emit(&text, out);
            eprintln!("counterexample found");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
