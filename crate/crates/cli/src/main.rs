//! Command-line front end: Alexander invariants, the embedding screen,
//! reference presentations, and the cover obstruction, all with a `--json`
//! switch for machine-readable output.
//!
//! Exit codes: 0 on success, 1 when an assertion the command was asked to
//! check fails, 2 on malformed input or usage errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use serde_json::json;

use knotcover::alexander::WindingFamily;
use knotcover::diagram::{parse_dt_entries, BraidWord, PlanarDiagram};
use knotcover::fox;
use knotcover::group::{AbelianizationMap, GroupPresentation, Word};
use knotcover::matrix::IntMatrix;
use knotcover::poly::LaurentPoly;
use knotcover::screen::{scan_table, screen_expression, screen_genus1, IEVerdict, KnotReport};
use knotcover::table::{self, KnotExpression, KnotRecord};
use knotcover::obstruction::{check_obstruction, growth_bounds, ObstructionInput};

#[derive(Parser)]
#[command(name = "knotcover", version, about = "exact invariants for knots and their cyclic covers")]
struct Cli {
    /// emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Alexander polynomial from any one supported input form
    Alexander(AlexanderArgs),
    /// screen one knot or a connected sum, e.g. "9_46" or "3_1 # 4_1"
    Screen {
        /// knot name or "#"-joined sum of table names
        expr: String,
    },
    /// screen every genus-one non-fibred knot in the table
    ScanTable {
        /// fail (exit 1) unless 9_46 is the unique survivor
        #[arg(long, alias = "assert-paper")]
        assert_unique: bool,
    },
    /// print one of the reference HNN presentations
    Present(PresentArgs),
    /// run every 9_46 certificate step and check the routes agree
    #[command(name = "verify-946")]
    Verify946,
    /// apply the cover non-embedding criterion to a position description
    Obstruction {
        /// JSON object, or a path to a file holding one
        input: String,
    },
    /// first-homology growth bound at one level of the cover tower
    Growth {
        /// JSON object, or a path to a file holding one
        input: String,
        /// tower level, at least 1
        #[arg(long)]
        m: i64,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true)))]
struct AlexanderArgs {
    /// planar diagram code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
    #[arg(long, group = "input")]
    pd: Option<String>,
    /// Dowker-Thistlethwaite code, e.g. "4 6 2"
    #[arg(long, group = "input")]
    dt: Option<String>,
    /// braid word "strands; letters", e.g. "2; 1 1 1"
    #[arg(long, group = "input")]
    braid: Option<String>,
    /// path to a presentation in the "gens: .. ; rels: .." text form
    #[arg(long, group = "input")]
    presentation: Option<PathBuf>,
    /// Seifert matrix, row-major integers, e.g. "[-1, 1, 0, -1]"
    #[arg(long, group = "input")]
    seifert: Option<String>,
}

#[derive(Args)]
struct PresentArgs {
    /// which reference presentation to print
    which: Which,
    /// word substituted for b' in the family presentation
    #[arg(long, default_value = "a b a^-1")]
    b_prime: String,
    /// word substituted for c in the family presentation
    #[arg(long, default_value = "a b a b^-1")]
    c: String,
    /// kill the stable letter and report the quotient's first homology
    #[arg(long)]
    fill: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// surgered-double cover group on a, b with stable letter t
    Cover,
    /// the matching knot-exterior group on c, d with stable letter s
    Exterior,
    /// the substitutable two-generator family on a, b, t
    Family,
}

#[derive(Debug)]
enum Failure {
    /// exit 1: a checked claim does not hold
    Assertion(String),
    /// exit 2: the input could not be used
    Input(String),
}

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

/// restores the default SIGPIPE disposition so `knotcover ... | head`
/// terminates quietly instead of panicking on the closed pipe
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(msg)) => {
            eprintln!("assertion failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.cmd {
        Cmd::Alexander(args) => cmd_alexander(args, cli.json),
        Cmd::Screen { expr } => cmd_screen(expr, cli.json),
        Cmd::ScanTable { assert_unique } => cmd_scan_table(*assert_unique, cli.json),
        Cmd::Present(args) => cmd_present(args, cli.json),
        Cmd::Verify946 => cmd_verify_946(cli.json),
        Cmd::Obstruction { input } => cmd_obstruction(input, cli.json),
        Cmd::Growth { input, m } => cmd_growth(input, *m, cli.json),
    }
}

/// Loads the knot table, honouring a `KNOT_TABLE_PATH` override.
fn load_records() -> Result<Vec<KnotRecord>, Failure> {
    match std::env::var_os("KNOT_TABLE_PATH") {
        Some(path) => table::load_table(&path).map_err(input),
        None => Ok(table::bundled_table()),
    }
}

/// Order of the presented module's torsion: the gcd of maximal minors,
/// normalized so the lowest exponent is zero and the leading coefficient
/// positive.
fn delta_of_presentation(p: &GroupPresentation) -> Result<LaurentPoly, Failure> {
    let ab = AbelianizationMap::infinite_cyclic(p).map_err(input)?;
    let m = fox::module_matrix(p, &ab).map_err(input)?;
    Ok(m.minor_gcd(m.cols()))
}

fn delta_of_diagram(d: &PlanarDiagram) -> Result<LaurentPoly, Failure> {
    delta_of_presentation(&GroupPresentation::wirtinger(d))
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report shapes serialize"));
}

fn cmd_alexander(args: &AlexanderArgs, json: bool) -> Result<(), Failure> {
    let delta = if let Some(pd) = &args.pd {
        delta_of_diagram(&PlanarDiagram::from_pd(pd).map_err(input)?)?
    } else if let Some(dt) = &args.dt {
        let entries = parse_dt_entries(dt).map_err(input)?;
        delta_of_diagram(&PlanarDiagram::from_dt(&entries).map_err(input)?)?
    } else if let Some(braid) = &args.braid {
        let (strands, letters) = parse_braid(braid)?;
        let word = BraidWord::new(strands, letters).map_err(input)?;
        delta_of_diagram(&word.closure().map_err(input)?)?
    } else if let Some(path) = &args.presentation {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        delta_of_presentation(&text.parse().map_err(input)?)?
    } else if let Some(entries) = &args.seifert {
        seifert_from_text(entries)?.alexander_presentation().delta()
    } else {
        unreachable!("clap enforces one input");
    };
    let determinant = if delta.is_zero() {
        BigInt::from(0)
    } else {
        delta.eval(&BigInt::from(-1)).abs()
    };
    if json {
        emit_json(&json!({
            "delta": delta.to_string(),
            "determinant": determinant.to_string(),
            "span": delta.degree().unwrap_or(0),
        }));
    } else {
        println!("{delta}");
    }
    Ok(())
}

/// "strands; letters", e.g. "3; 1 -2 1 -2".
fn parse_braid(text: &str) -> Result<(usize, Vec<i64>), Failure> {
    let (head, tail) = text
        .split_once(';')
        .ok_or_else(|| Failure::Input(format!("braid {text:?}: expected \"strands; letters\"")))?;
    let strands = head
        .trim()
        .parse::<usize>()
        .map_err(|_| Failure::Input(format!("braid strand count {:?} is not a number", head.trim())))?;
    let letters = tail
        .split_whitespace()
        .map(|w| {
            w.parse::<i64>()
                .map_err(|_| Failure::Input(format!("braid letter {w:?} is not an integer")))
        })
        .collect::<Result<Vec<i64>, Failure>>()?;
    Ok((strands, letters))
}

/// Row-major integers, square count, brackets and commas optional.
fn seifert_from_text(text: &str) -> Result<knotcover::alexander::SeifertMatrix, Failure> {
    let entries = text
        .replace(['[', ']', ','], " ")
        .split_whitespace()
        .map(|w| {
            w.parse::<i64>()
                .map_err(|_| Failure::Input(format!("seifert entry {w:?} is not an integer")))
        })
        .collect::<Result<Vec<i64>, Failure>>()?;
    let n = (entries.len() as f64).sqrt() as usize;
    if n * n != entries.len() || n == 0 {
        return Err(Failure::Input(format!(
            "seifert matrix needs a positive square number of entries, got {}",
            entries.len()
        )));
    }
    let values: Vec<BigInt> = entries.iter().map(|&v| BigInt::from(v)).collect();
    knotcover::alexander::SeifertMatrix::new(IntMatrix::new(n, n, values)).map_err(input)
}

fn cmd_screen(expr: &str, json: bool) -> Result<(), Failure> {
    let expression: KnotExpression = expr.parse().map_err(input)?;
    let records = load_records()?;
    let verdict = verdict_for(&expression, &records)?;
    let name = expression.to_string();
    if json {
        emit_json(&KnotReport::from_verdict(&name, &verdict));
    } else {
        println!("{name}: {}", verdict.status);
        for r in &verdict.reasons {
            println!("  {}: {} [{}]", r.rule, r.detail, r.anchor);
        }
    }
    Ok(())
}

/// A lone genus-one non-fibred knot gets the full genus-one screen so the
/// verdict can be CANDIDATE; everything else goes through the sum rules.
fn verdict_for(e: &KnotExpression, records: &[KnotRecord]) -> Result<IEVerdict, Failure> {
    if let [name] = e.summands() {
        let record = table::find(records, name)
            .ok_or_else(|| Failure::Input(format!("unknown knot {name}")))?;
        if record.genus() == 1 && !record.fibred() {
            return screen_genus1(record).map_err(input);
        }
    }
    screen_expression(e, records).map_err(input)
}

fn cmd_scan_table(assert_unique: bool, json: bool) -> Result<(), Failure> {
    let records = load_records()?;
    let report = scan_table(&records);
    if json {
        emit_json(&report);
    } else {
        print!("{}", report.text_summary());
    }
    if assert_unique && report.unique_survivor() != Some("9_46") {
        return Err(Failure::Assertion(format!(
            "expected 9_46 as the unique survivor, got [{}]",
            report.survivors.join(", ")
        )));
    }
    Ok(())
}

fn word(text: &str) -> Result<Word, Failure> {
    text.parse().map_err(input)
}

/// The fixed cover group: free base on a, b, stable letter t conjugating
/// a to abab^-1 and bab a^-1 to b.
fn cover_presentation() -> GroupPresentation {
    family_presentation("a b a^-1", "a b a b^-1").expect("fixed words parse")
}

/// Same group on letters c, d with stable letter s.
fn exterior_presentation() -> GroupPresentation {
    let base = GroupPresentation::free(&["c", "d"]);
    let pairs = vec![
        (word("c").unwrap(), word("c d c d^-1").unwrap()),
        (word("d c d c^-1").unwrap(), word("d").unwrap()),
    ];
    GroupPresentation::hnn_extension(&base, &pairs, "s").expect("fixed construction is valid")
}

/// The substitutable family: t a t^-1 = C and t (b B') t^-1 = b over the
/// free group on a, b.
fn family_presentation(b_prime: &str, c: &str) -> Result<GroupPresentation, Failure> {
    let base = GroupPresentation::free(&["a", "b"]);
    let b_prime = word(b_prime)?;
    let c = word(c)?;
    let pairs = vec![
        (word("a")?, c),
        (word("b")?.concat(&b_prime), word("b")?),
    ];
    GroupPresentation::hnn_extension(&base, &pairs, "t").map_err(input)
}

fn h1_text(rank: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in torsion {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }
}

fn cmd_present(args: &PresentArgs, json: bool) -> Result<(), Failure> {
    let (p, stable) = match args.which {
        Which::Cover => (cover_presentation(), "t"),
        Which::Exterior => (exterior_presentation(), "s"),
        Which::Family => (family_presentation(&args.b_prime, &args.c)?, "t"),
    };
    let filled = args.fill.then(|| {
        let q = p.kill_generator(stable);
        let (rank, torsion) = q.h1();
        (q, rank, torsion)
    });
    if json {
        let mut value = json!({
            "generators": p.generators(),
            "relators": p.relators().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        });
        if let Some((q, rank, torsion)) = &filled {
            value["filled"] = json!({
                "generators": q.generators(),
                "relators": q.relators().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "h1_rank": rank,
                "h1_torsion": torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            });
        }
        emit_json(&value);
    } else {
        println!("{p}");
        if let Some((q, rank, torsion)) = &filled {
            println!("filled: {q}");
            println!("h1: {}", h1_text(*rank, torsion));
        }
    }
    Ok(())
}

/// Every 9_46 certificate step: the two presentations match up to
/// renaming, three independent routes give the same polynomial, and the
/// first elementary ideal misses 1.
fn cmd_verify_946(json: bool) -> Result<(), Failure> {
    let cover = cover_presentation();
    let exterior = exterior_presentation();
    let dict: BTreeMap<String, String> = [("a", "c"), ("b", "d"), ("t", "s")]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let renamed = cover
        .identical_up_to_renaming(&exterior, &dict)
        .map_err(input)?;

    let delta_cover = delta_of_presentation(&cover)?;
    let records = load_records()?;
    let record = table::find(&records, "9_46")
        .ok_or_else(|| Failure::Input("table has no 9_46 row".into()))?;
    let entries = record
        .dt_code()
        .ok_or_else(|| Failure::Input("9_46 row has no dt code".into()))?;
    let diagram = PlanarDiagram::from_dt(entries).map_err(input)?;
    let delta_diagram = delta_of_diagram(&diagram)?;
    let delta_family = WindingFamily::new(2, -1, -1).family_matrix().delta();

    let ab = AbelianizationMap::infinite_cyclic(&exterior).map_err(input)?;
    let module = fox::module_matrix(&exterior, &ab).map_err(input)?;
    let e1 = knotcover::alexander::AlexanderPresentation::new(module).elementary_ideal(1);

    let agree = delta_cover.eq_up_to_unit(&delta_diagram)
        && delta_cover.eq_up_to_unit(&delta_family);
    let e1_misses_one = !e1.contains_one();

    if json {
        emit_json(&json!({
            "cover": cover.to_string(),
            "exterior": exterior.to_string(),
            "renaming": {"a": "c", "b": "d", "t": "s"},
            "renaming_matches": renamed,
            "delta_cover": delta_cover.to_string(),
            "delta_diagram": delta_diagram.to_string(),
            "delta_family_w2": delta_family.to_string(),
            "routes_agree": agree,
            "e1_basis": e1.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "e1_contains_one": !e1_misses_one,
        }));
    } else {
        println!("cover:    {cover}");
        println!("exterior: {exterior}");
        println!("renaming a->c b->d t->s: {}", if renamed { "match" } else { "MISMATCH" });
        println!("delta, stable-letter route: {delta_cover}");
        println!("delta, diagram route:       {delta_diagram}");
        println!("delta, winding family w=2:  {delta_family}");
        println!("elementary ideal e1: {e1}");
        println!("e1 contains 1: {}", !e1_misses_one);
    }
    if !renamed {
        return Err(Failure::Assertion("presentations differ under the renaming".into()));
    }
    if !agree {
        return Err(Failure::Assertion("polynomial routes disagree".into()));
    }
    if !e1_misses_one {
        return Err(Failure::Assertion("elementary ideal e1 contains 1".into()));
    }
    Ok(())
}

/// Accepts the JSON text itself or a path to a file containing it.
fn json_or_path(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        Ok(trimmed.to_string())
    } else {
        fs::read_to_string(trimmed).map_err(|e| Failure::Input(format!("{trimmed}: {e}")))
    }
}

fn parse_obstruction_input(arg: &str) -> Result<ObstructionInput, Failure> {
    let text = json_or_path(arg)?;
    serde_json::from_str(&text).map_err(input)
}

fn cmd_obstruction(arg: &str, json: bool) -> Result<(), Failure> {
    let inp = parse_obstruction_input(arg)?;
    let verdict = check_obstruction(&inp).map_err(input)?;
    if json {
        emit_json(&json!({ "verdict": verdict }));
    } else {
        println!("{verdict}");
    }
    Ok(())
}

fn cmd_growth(arg: &str, m: i64, json: bool) -> Result<(), Failure> {
    if m < 1 {
        return Err(Failure::Input(format!("tower level m must be at least 1, got {m}")));
    }
    let inp = parse_obstruction_input(arg)?;
    let bound = growth_bounds(&inp, m);
    if json {
        emit_json(&bound);
    } else {
        println!("m: {}", bound.m);
        println!("lower bound beta1(P_m): {}", bound.lower_beta1_pm);
        println!("boundary beta1(P_m): {}", bound.beta1_boundary_pm);
        println!("boundary chi(P_m): {}", bound.chi_boundary_pm);
        println!("constant C: {}", bound.constant_c);
        println!("final lower bound beta1(Y): {}", bound.final_lower_bound_beta1_y);
        println!("slope: {}", bound.slope(&inp));
    }
    Ok(())
}
