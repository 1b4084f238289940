use std::fs;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use posetform::campaign::{self, Campaign, CampaignOptions, CampaignResult, CampaignRow, Verdict};
use posetform::classify::{self, classify, Classification};
use posetform::cones::{c_cone, c_tilde, dynkin_vector, hat_cones, stationary_cone, ConeWitness, DEFAULT_DYNKIN_BOX};
use posetform::poset::text::{parse_any, to_poset_file};
use posetform::quadform::QuadraticForm;
use posetform::rational;
use posetform::report::{analyze, AnalysisReport, ReportOptions};
use posetform::simplex_min::{minimize_on_simplex, SimplexMinimum, DEFAULT_SIMPLEX_CAP};
use posetform::{Error, Poset, EXIT_ALARM, EXIT_COUNTEREXAMPLE, EXIT_OK};

/// Quadratic forms of finite posets: antimonotonicity, stationary vectors,
/// simplex minima and representation type.
#[derive(Parser, Debug)]
#[command(name = "posetform", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Print machine-readable JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Largest poset size for campaigns.
    #[arg(long = "n", global = true)]
    n_max: Option<usize>,
    /// Coefficient box for the Dynkin vector search.
    #[arg(long = "box", global = true, default_value_t = DEFAULT_DYNKIN_BOX)]
    box_bound: i64,
    /// Largest form size for exhaustive simplex minimization.
    #[arg(long, global = true, default_value_t = DEFAULT_SIMPLEX_CAP)]
    cap: usize,
    /// Skip posets already recorded in the campaign output.
    #[arg(long, global = true)]
    resume: bool,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include stage timings in analysis reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report on a poset file, DSL expression, or `-` for stdin.
    Analyze { input: String },
    /// Write the poset file of a DSL expression.
    Gen { expr: String },
    /// Write the two critical lists as poset files.
    Lists,
    /// Run a verification campaign over all posets up to `--n` elements.
    Verify { campaign: String },
    /// Search C(S) for every connected poset whose Hasse graph is a tree but not a path.
    Hypothesis,
    /// Exact minimum of the form over the standard simplex.
    Min { input: String },
    /// Cone witnesses and Dynkin vectors.
    Cone { input: String },
    /// Shape, representation type, utmost and faithfulness flags.
    Classify { input: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let code = e.downcast_ref::<Error>().map_or(EXIT_ALARM, Error::exit_code);
            eprintln!("error: {e:#}");
            ExitCode::from(code as u8)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { input } => {
            let p = load(input)?;
            let opts = ReportOptions { box_bound: g.box_bound, simplex_cap: g.cap, timings: g.timings };
            let report = analyze(&p, &opts)?;
            if !report.verify() {
                anyhow::bail!(Error::Classify(classify::ClassifyError::ConsistencyAlarm(
                    "a witness in the report failed to re-verify".into()
                )));
            }
            if g.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", summarize(&report));
            }
            Ok(EXIT_OK)
        }
        Command::Gen { expr } => {
            let p = load(expr)?;
            let text = to_poset_file(&p, Some(expr));
            match &g.out {
                Some(dir) => {
                    let path = dir.join(format!("{}.poset", file_stem(expr)));
                    write_file(&path, &text)?;
                    println!("{}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }
        Command::Lists => {
            let (one, two) = classify::critical_lists();
            let entries = one.iter().map(|c| ("I", c)).chain(two.iter().map(|c| ("II", c)));
            for (list, c) in entries {
                let comment = format!("list {list}: {}", c.name);
                let text = to_poset_file(&c.poset, Some(&comment));
                match &g.out {
                    Some(dir) => {
                        let path = dir.join(format!("list{}_{}.poset", list.to_lowercase(), file_stem(c.name)));
                        write_file(&path, &text)?;
                        println!("{}", path.display());
                    }
                    None => println!("{text}"),
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { campaign } => {
            let c: Campaign = campaign.parse().map_err(Error::from)?;
            run_campaign(c, g)
        }
        Command::Hypothesis => run_campaign(Campaign::Hypothesis, g),
        Command::Min { input } => {
            let p = load(input)?;
            let m = minimize_on_simplex(&QuadraticForm::of_poset(&p), g.cap).map_err(Error::from)?;
            if g.json {
                println!("{}", serde_json::to_string_pretty(&m)?);
            } else {
                print!("{}", summarize_min(&m));
            }
            Ok(EXIT_OK)
        }
        Command::Cone { input } => {
            let p = load(input)?;
            let f = QuadraticForm::of_poset(&p);
            let report = serde_json::json!({
                "c": c_cone(&f),
                "c_tilde": c_tilde(&f),
                "relaxed": hat_cones(&f),
                "stationary": stationary_cone(&f),
                "dynkin_box": g.box_bound,
                "dynkin": (0..p.len()).filter_map(|m| dynkin_vector(&f, m, g.box_bound)).collect::<Vec<_>>(),
            });
            if g.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                let mut out = String::new();
                line(&mut out, "C(f)", &witness_text(&c_cone(&f)));
                line(&mut out, "C~(f)", &witness_text(&c_tilde(&f)));
                line(&mut out, "relaxed", &witness_text(&hat_cones(&f)));
                line(&mut out, "St(f)", &witness_text(&stationary_cone(&f)));
                for m in 0..p.len() {
                    if let Some(d) = dynkin_vector(&f, m, g.box_bound) {
                        line(&mut out, &format!("dynkin {}", m + 1), &rational::fmt_vec(&d.vector));
                    }
                }
                print!("{out}");
            }
            Ok(EXIT_OK)
        }
        Command::Classify { input } => {
            let p = load(input)?;
            let c = classify(&p, g.cap).map_err(Error::from)?;
            if g.json {
                println!("{}", serde_json::to_string_pretty(&c)?);
            } else {
                print!("{}", summarize_classification(&c));
            }
            Ok(EXIT_OK)
        }
    }
}

/// A path to an existing file, `-` for stdin, or inline text.
fn load(input: &str) -> anyhow::Result<Poset> {
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if Path::new(input).is_file() {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    } else {
        input.to_string()
    };
    Ok(parse_any(&text).map_err(Error::from)?)
}

fn file_stem(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        match ch {
            c if c.is_ascii_alphanumeric() => out.push(c.to_ascii_lowercase()),
            '+' => out.push_str("_plus_"),
            '/' => out.push('-'),
            _ if !out.ends_with('_') && !out.is_empty() => out.push('_'),
            _ => {}
        }
    }
    let trimmed = out.trim_matches('_').replace("__", "_");
    if trimmed.is_empty() {
        "poset".into()
    } else {
        trimmed
    }
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run_campaign(c: Campaign, g: &Global) -> anyhow::Result<i32> {
    let n_max = g.n_max.unwrap_or_else(|| c.default_n_max());
    let jsonl = g.out.as_ref().map(|dir| dir.join(format!("{c}.jsonl")));
    let mut previous: Vec<CampaignRow> = Vec::new();
    if g.resume {
        if let Some(path) = jsonl.as_ref().filter(|p| p.is_file()) {
            let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
            previous = campaign::read_jsonl(BufReader::new(file)).map_err(Error::from)?;
        }
    }
    let opts = CampaignOptions {
        box_bound: g.box_bound,
        simplex_cap: g.cap,
        skip: campaign::resume_index(&previous, c),
        ..Default::default()
    };
    let result = campaign::run_campaign(c, n_max, &opts).map_err(Error::from)?;
    if let Some(path) = &jsonl {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let file = fs::OpenOptions::new()
            .create(true)
            .write(true)
            .append(g.resume)
            .truncate(!g.resume)
            .open(path)
            .with_context(|| format!("opening {}", path.display()))?;
        campaign::write_jsonl(&result.rows, io::BufWriter::new(file)).map_err(Error::from)?;
    }
    let earlier_failures = previous.iter().filter(|r| r.campaign == c && r.verdict == Verdict::Counterexample).count();
    if g.json {
        println!("{}", serde_json::to_string_pretty(&result)?);
    } else {
        print!("{}", summarize_campaign(&result, earlier_failures));
    }
    io::stdout().flush()?;
    Ok(if result.is_clean() && earlier_failures == 0 { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn line(out: &mut String, label: &str, value: &str) {
    out.push_str(&format!("{label:<14}{value}\n"));
}

fn witness_text(w: &Option<ConeWitness>) -> String {
    match w {
        Some(w) => {
            format!("{} ({:?}, gradient {})", rational::fmt_vec(&w.vector), w.cone, rational::fmt_vec(&w.gradient))
        }
        None => "empty".into(),
    }
}

fn summarize_min(m: &SimplexMinimum) -> String {
    let mut out = String::new();
    line(&mut out, "minimum", &format!("{} ({:.6})", rational::to_string(&m.value), m.value_approx));
    line(&mut out, "minimizer", &rational::fmt_vec(&m.minimizer));
    line(&mut out, "interior", &m.interior.to_string());
    line(&mut out, "P(S)", &format!("{} ({:.6})", rational::to_string(&m.p_value), m.p_value_approx));
    out
}

fn summarize_classification(c: &Classification) -> String {
    let mut out = String::new();
    line(&mut out, "shape", &c.shape.to_string());
    line(&mut out, "P(S)", &format!("{} ({:.6})", rational::to_string(&c.p_value), c.p_value_approx));
    line(&mut out, "type", &c.rep_type.to_string());
    if let Some(name) = c.in_list_i.as_ref().or(c.in_list_ii.as_ref()) {
        line(&mut out, "critical", name);
    }
    line(&mut out, "antimonotone", &c.antimonotonous.to_string());
    line(&mut out, "P-faithful", &c.p_faithful.to_string());
    line(&mut out, "utmost", &c.utmost.to_string());
    out
}

fn summarize(r: &AnalysisReport) -> String {
    let mut out = String::new();
    line(
        &mut out,
        "poset",
        &format!("{} elements, {} relations, key {}", r.poset.n, r.poset.relation_count, r.poset.canonical_key),
    );
    if let Some(g) = &r.gamma {
        line(&mut out, "gamma", g);
    }
    line(
        &mut out,
        "form",
        &format!(
            "det A = {}, det 2A = {}, {:?}",
            rational::to_string(&r.form.det),
            rational::to_string(&r.form.det_doubled),
            r.form.definiteness.kind
        ),
    );
    line(&mut out, "C(f)", &witness_text(&r.cones.c));
    line(&mut out, "St(f)", &witness_text(&r.cones.stationary));
    out.push_str(&summarize_min(&r.simplex));
    out.push_str(&summarize_classification(&r.classification));
    if let Some(t) = &r.timings {
        for (stage, ms) in t {
            line(&mut out, &format!("time {stage}"), &format!("{ms:.3} ms"));
        }
    }
    out
}

fn summarize_campaign(r: &CampaignResult, earlier_failures: usize) -> String {
    let mut out = String::new();
    line(&mut out, "campaign", &format!("{} (n <= {})", r.campaign, r.n_max));
    line(&mut out, "statement", &r.statement);
    line(&mut out, "census", &format!("{:?} (connected {:?})", r.census, r.connected_census));
    line(
        &mut out,
        "rows",
        &format!("{} checked, {} passed, {} skipped, {} resumed", r.checked, r.passed, r.skipped, r.resumed),
    );
    line(&mut out, "failures", &(r.counterexamples.len() + earlier_failures).to_string());
    for row in &r.counterexamples {
        let arrows: Vec<String> = row.arrows.iter().map(|(a, b)| format!("{}<{}", a + 1, b + 1)).collect();
        line(&mut out, "  poset", &format!("n={} [{}]: {}", row.n, arrows.join(" "), row.note));
    }
    out
}
