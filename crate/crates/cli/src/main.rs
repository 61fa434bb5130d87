//! `bracelab`: construct, inspect and check finite left braces.
//!
//! Exit codes: 0 success, 1 the checked property is false (or an internal
//! consistency check tripped), 2 invalid input, 3 a size cap was hit.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use bracelab_core::algebra::BilinearForm;
use bracelab_core::document::{analyze, parse_inline_form, BraceDocument, FormDocument};
use bracelab_core::enumeration::{enumerate_braces, AbelianGroupSpec, EnumerationCaps};
use bracelab_core::extraspecial::{brace_from_form, classify_strong, family, recognize_extraspecial, Family, FamilySpec};
use bracelab_core::series::is_dedekind;
use bracelab_core::substructures::{
    all_subbraces, multiplicative_group_is_abelian, subset_star, SUBBRACE_CAP,
};
use bracelab_core::verify::{verify, VerifyOptions, THEOREMS};
use bracelab_core::ybe::{associated_solution, check_solution};
use bracelab_core::{Error, FiniteBrace, SubsetMask, DEFAULT_MAX_ORDER};

/// `println!` that stops quietly when stdout is closed, e.g. under `head`.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(name = "bracelab", version, about = "Finite left braces: construction, analysis and theorem checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a brace and write it as a JSON document.
    Construct(ConstructArgs),
    /// Check that a document holds a valid brace.
    Validate { file: PathBuf },
    /// Full report: socle, centre, series, Dedekind test, extraspecial data, YBE.
    Analyze {
        file: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List every subbrace with its ideal status.
    Subbraces { file: PathBuf },
    /// All braces on an abelian group.
    Enumerate {
        /// Invariant factors, e.g. "2,2" or "C4xC2".
        #[arg(long)]
        additive: String,
        #[arg(long)]
        up_to_iso: bool,
        /// Print the braces as a JSON array of documents.
        #[arg(long)]
        json: bool,
    },
    /// Identify a strong extraspecial brace with a family member.
    Classify { file: PathBuf },
    /// Check the associated Yang-Baxter solution.
    Ybe { file: PathBuf },
    /// Run one of the theorem checks.
    Verify {
        #[arg(long)]
        theorem: String,
        /// Largest enumerated order in the corpus.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["family", "abelian", "from_form", "product"])))]
struct ConstructArgs {
    /// E0, E1 or E2; needs --m and --p.
    #[arg(long, requires_all = ["m", "p"])]
    family: Option<Family>,
    #[arg(long, requires = "family")]
    m: Option<u32>,
    #[arg(long, requires = "family")]
    p: Option<u32>,
    /// Abelian brace on the given cyclic factors, e.g. "2,4".
    #[arg(long)]
    abelian: Option<String>,
    /// A form file, or inline as `diag(a,b)@Fp` or `[[a,b],[c,d]]@Fp`.
    #[arg(long)]
    from_form: Option<String>,
    /// Direct product of two documents.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    product: Option<Vec<PathBuf>>,
    /// Write here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Cap(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::Engine(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn max_order() -> Result<usize, Failure> {
    match std::env::var("BRACELAB_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("BRACELAB_MAX_ORDER={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn caps() -> Result<EnumerationCaps, Failure> {
    let mut caps = EnumerationCaps::default();
    if std::env::var_os("BRACELAB_MAX_ORDER").is_some() {
        caps.max_order = max_order()?;
    }
    Ok(caps)
}

fn check_order(n: usize) -> Result<(), Failure> {
    let cap = max_order()?;
    if n > cap {
        return Err(Error::CapExceeded {
            what: "brace order",
            limit: cap,
            actual: n,
        }
        .into());
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FiniteBrace, Failure> {
    let doc = BraceDocument::from_json(&read(path)?)?;
    check_order(doc.order)?;
    Ok(doc.to_brace()?)
}

fn load_form(arg: &str) -> Result<BilinearForm, Failure> {
    if arg.contains('@') && !Path::new(arg).exists() {
        return Ok(parse_inline_form(arg)?);
    }
    let doc: FormDocument = serde_json::from_str(&read(Path::new(arg))?)
        .map_err(|e| Failure::Input(format!("form file {arg}: {e}")))?;
    Ok(doc.to_form()?)
}

fn labels(b: &FiniteBrace, s: &SubsetMask) -> String {
    let parts: Vec<String> = s.iter().map(|x| b.format_element(x)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn construct(args: ConstructArgs) -> Outcome {
    let brace = if let Some(f) = args.family {
        let spec = FamilySpec::new(f, args.m.unwrap_or(0), args.p.unwrap_or(0))?;
        check_order(spec.order())?;
        family(&spec)
    } else if let Some(a) = &args.abelian {
        let g: AbelianGroupSpec = a.parse()?;
        check_order(g.order())?;
        g.trivial_brace()
    } else if let Some(f) = &args.from_form {
        let phi = load_form(f)?;
        let n = (phi.modulus() as usize).checked_pow(phi.dim() as u32 + 1);
        check_order(n.unwrap_or(usize::MAX))?;
        brace_from_form(&phi)?
    } else if let Some(files) = &args.product {
        let (a, b) = (load(&files[0])?, load(&files[1])?);
        a.direct_product(&b, max_order()?)?
    } else {
        return Err(Failure::Input("nothing to construct".into()));
    };
    let text = BraceDocument::from_brace(&brace, BTreeMap::new()).to_json() + "\n";
    match &args.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => out_raw!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn validate(file: &Path) -> Outcome {
    let doc = BraceDocument::from_json(&read(file)?)?;
    check_order(doc.order)?;
    match doc.to_brace() {
        Ok(b) => {
            out!("valid brace of order {}, additive group {:?}", b.order(), b.additive_shape());
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::Invalid(e)) => {
            out!("invalid: {e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn subbraces(file: &Path) -> Outcome {
    let b = load(file)?;
    let cap = match std::env::var_os("BRACELAB_MAX_ORDER") {
        Some(_) => max_order()?,
        None => SUBBRACE_CAP,
    };
    let subs = all_subbraces(&b, cap)?;
    let ideals = subs.iter().filter(|s| s.ideal).count();
    out!("{} subbraces, {} ideals", subs.len(), ideals);
    for s in &subs {
        let kind = if s.ideal {
            "ideal"
        } else if s.lambda_invariant {
            "left ideal"
        } else {
            "subbrace"
        };
        out!("  order {:>4}  {:<10}  {}", s.order(), kind, labels(&b, &s.mask));
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate(additive: &str, up_to_iso: bool, json: bool) -> Outcome {
    let g: AbelianGroupSpec = additive.parse()?;
    let braces = enumerate_braces(&g, up_to_iso, &caps()?)?;
    if json {
        let docs: Vec<BraceDocument> = braces
            .iter()
            .map(|b| BraceDocument::from_brace(b, BTreeMap::new()))
            .collect();
        out!("{}", serde_json::to_string_pretty(&docs).expect("documents serialise"));
        return Ok(ExitCode::SUCCESS);
    }
    out!(
        "{} braces on {g}{}",
        braces.len(),
        if up_to_iso { " up to isomorphism" } else { "" }
    );
    for (i, b) in braces.iter().enumerate() {
        let full = SubsetMask::full(b.order());
        out!(
            "  #{i}: |A*A| = {}, multiplicative group {}, dedekind {}",
            subset_star(b, &full, &full).len(),
            if multiplicative_group_is_abelian(b) { "abelian" } else { "non-abelian" },
            is_dedekind(b, DEFAULT_MAX_ORDER)?.dedekind
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn classify(file: &Path) -> Outcome {
    let b = load(file)?;
    let Some(cert) = recognize_extraspecial(&b)? else {
        out!("not extraspecial");
        return Ok(ExitCode::from(1));
    };
    if !cert.strong {
        out!("extraspecial but not strong (c = {})", b.format_element(cert.c));
        return Ok(ExitCode::from(1));
    }
    let c = classify_strong(&b)?;
    let target = family(&c.spec);
    out!("{}", c.spec);
    for x in 0..b.order() {
        out!("  {} -> {}", b.format_element(x), target.format_element(c.witness.apply(x)));
    }
    Ok(ExitCode::SUCCESS)
}

fn ybe(file: &Path) -> Outcome {
    let b = load(file)?;
    let rep = check_solution(&associated_solution(&b)?);
    let show = |ok: bool, w: String| if ok { "true".to_string() } else { format!("false (witness {w})") };
    out!("braid: {}", show(rep.braid(), format!("{:?}", rep.braid_witness)));
    out!("involutive: {}", show(rep.involutive(), format!("{:?}", rep.involutive_witness)));
    out!("nondegenerate: {}", show(rep.nondegenerate(), format!("{:?}", rep.degeneracy_witness)));
    Ok(if rep.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify_cmd(theorem: &str, max_order: Option<usize>, json: bool) -> Outcome {
    if !THEOREMS.contains(&theorem) {
        return Err(Failure::Input(format!(
            "unknown theorem {theorem:?}; expected one of {}",
            THEOREMS.join(", ")
        )));
    }
    let opts = VerifyOptions {
        max_order,
        caps: caps()?,
        ..VerifyOptions::default()
    };
    let rep = verify(theorem, &opts)?;
    if json {
        out!("{}", serde_json::to_string_pretty(&rep).expect("reports serialise"));
    } else {
        out!("{rep}");
    }
    Ok(if rep.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct(args) => construct(args),
        Command::Validate { file } => validate(&file),
        Command::Analyze { file, json } => {
            let b = load(&file)?;
            let r = analyze(&b, max_order()?)?;
            if json {
                out!("{}", r.to_json());
            } else {
                out_raw!("{}", r.render_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Subbraces { file } => subbraces(&file),
        Command::Enumerate { additive, up_to_iso, json } => enumerate(&additive, up_to_iso, json),
        Command::Classify { file } => classify(&file),
        Command::Ybe { file } => ybe(&file),
        Command::Verify { theorem, max_order, json } => verify_cmd(&theorem, max_order, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e}");
            ExitCode::from(1)
        }
    }
}
