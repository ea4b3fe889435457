use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dgb_core::completion::{
    interreduce, minimalize, sigma_gbasis, verify_sigma_gbasis, CompletionOptions, Mode, Status,
};
use dgb_core::io::{parse_permutation, parse_poly, parse_problem, parse_problem_in, parse_var, ConfigEcho, RunReport};
use dgb_core::quotient::{expand_classical_basis, groebner_gamma_basis, symmetric_setup, QuotientPresentation};
use dgb_core::reduction::{Certificate, Reducers, ShiftPolicy};
use dgb_core::{Error, Poly, Ring};

#[derive(Parser)]
#[command(name = "dgb", version, about = "Groebner sigma-bases of partial difference ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete the ideal block of a problem file.
    Compute(ComputeArgs),
    /// Check whether the ideal block is a Groebner sigma-basis.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a polynomial modulo the shifts of the ideal block.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Gamma-basis of an ideal stable under a cyclic permutation.
    Symmetric {
        /// Disjoint cycles with 1-based points, e.g. "(1 2 3 4)".
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        gens: PathBuf,
        /// Also print the expanded classical basis.
        #[arg(long)]
        classical: bool,
        /// Minimalize and interreduce the gamma-basis.
        #[arg(long)]
        minimal: bool,
        #[arg(long, env = "DGB_PAIR_BUDGET", default_value_t = 100_000)]
        pair_budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a variable modulo monic linear relations, by
    /// reduction and by companion matrices.
    NormalForm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        var: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, conflicts_with = "adaptive", allow_negative_numbers = true)]
    truncate: Option<i64>,
    #[arg(long)]
    adaptive: bool,
    #[arg(long)]
    no_chain: bool,
    #[arg(long)]
    minimal: bool,
    #[arg(long)]
    interreduce: bool,
    #[arg(long, env = "DGB_PAIR_BUDGET", default_value_t = 100_000)]
    pair_budget: u64,
    #[arg(long, default_value_t = 64)]
    order_cap: u64,
    #[arg(long)]
    stats: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Dgb(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Dgb(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Dgb(e) => e.fmt(f),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn with_path(path: &Path, e: Error) -> CliError {
    match e {
        Error::Parse { .. } => CliError::Io(path.to_path_buf(), std::io::Error::other(e.to_string())),
        e => CliError::Dgb(e),
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn fmt_all(ring: &Ring, polys: &[Poly]) -> Vec<String> {
    polys.iter().map(|g| ring.fmt_poly(g)).collect()
}

fn compute(a: ComputeArgs) -> Result<u8, CliError> {
    let p = parse_problem(&read(&a.input)?).map_err(|e| with_path(&a.input, e))?;
    let mode = match (a.truncate, a.adaptive) {
        (Some(d), _) => Mode::Truncated(d),
        (None, true) => Mode::Adaptive,
        (None, false) => Mode::Plain,
    };
    let opts = CompletionOptions {
        mode,
        chain_criterion: !a.no_chain,
        max_pairs: a.pair_budget,
        max_order: a.order_cap,
    };
    let start = Instant::now();
    let basis = sigma_gbasis(&p.ring, &p.ideal, &opts)?;
    let mut elements = basis.elements.clone();
    if a.interreduce {
        elements = interreduce(&p.ring, &elements);
    } else if a.minimal {
        elements = minimalize(&p.ring, &elements);
    }
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let report = RunReport::new(&basis, &elements, ms, ConfigEcho::new(&p.ring, &opts, a.minimal, a.interreduce));
    if a.json {
        print_json(&report);
    } else {
        print!("{}", report.render(a.stats));
    }
    Ok(if basis.status == Status::BudgetExhausted { 2 } else { 0 })
}

fn verify(input: &Path, as_json: bool) -> Result<u8, CliError> {
    let p = parse_problem(&read(input)?).map_err(|e| with_path(input, e))?;
    let rep = verify_sigma_gbasis(&p.ring, &p.ideal)?;
    let failures: Vec<_> = rep
        .failures
        .iter()
        .map(|f| {
            json!({
                "left": f.pair.left,
                "right": f.pair.right,
                "left_shift": f.pair.left_shift.to_string(),
                "right_shift": f.pair.right_shift.to_string(),
                "lcm": p.ring.fmt_monomial(&f.pair.lcm),
                "remainder": p.ring.fmt_poly(&f.remainder),
            })
        })
        .collect();
    if as_json {
        print_json(&json!({
            "is_basis": rep.is_basis,
            "pairs_checked": rep.pairs_checked,
            "max_order": rep.max_order,
            "failures": failures,
        }));
    } else {
        println!("basis: {}", rep.is_basis);
        println!("pairs checked: {}", rep.pairs_checked);
        for f in &rep.failures {
            println!(
                "failing pair: {}*g{} , {}*g{} at {}; remainder {}",
                f.pair.left_shift,
                f.pair.left + 1,
                f.pair.right_shift,
                f.pair.right + 1,
                p.ring.fmt_monomial(&f.pair.lcm),
                p.ring.fmt_poly(&f.remainder)
            );
        }
    }
    Ok(if rep.is_basis { 0 } else { 2 })
}

fn reduce(input: &Path, poly: &str, certificate: bool, as_json: bool) -> Result<u8, CliError> {
    let p = parse_problem(&read(input)?).map_err(|e| with_path(input, e))?;
    let f = parse_poly(&p.ring, poly)?;
    let basis: Vec<Poly> = p.ideal.iter().filter(|g| !g.is_zero()).cloned().collect();
    let reducers = Reducers::new(&p.ring, basis.iter().cloned());
    let mut cert = Certificate::default();
    let h = reducers.reduce_full(&p.ring, &f, ShiftPolicy::Unbounded, Some(&mut cert));
    let sig = p.ring.signature();
    let steps: Vec<_> = cert
        .steps
        .iter()
        .map(|s| {
            json!({
                "element": s.basis_index + 1,
                "shift": s.shift.to_string(),
                "cofactor": dgb_core::io::print_term(&s.coeff, &s.cofactor, sig),
            })
        })
        .collect();
    if as_json {
        let mut v = json!({ "remainder": p.ring.fmt_poly(&h) });
        if certificate {
            v["certificate"] = json!(steps);
        }
        print_json(&v);
    } else {
        println!("{}", p.ring.fmt_poly(&h));
        if certificate {
            for s in &cert.steps {
                println!(
                    "  - ({}) * {}*g{}",
                    dgb_core::io::print_term(&s.coeff, &s.cofactor, sig),
                    s.shift,
                    s.basis_index + 1
                );
            }
        }
    }
    Ok(0)
}

fn symmetric(
    perm: Option<&str>,
    gens: &Path,
    classical: bool,
    minimal: bool,
    pair_budget: u64,
    as_json: bool,
) -> Result<u8, CliError> {
    let text = read(gens)?;
    let (action, ring, generators) = match perm {
        Some(perm) => {
            let action = parse_permutation(perm)?;
            let ring = action.ring(&[])?;
            let file = parse_problem_in(&text, &ring).map_err(|e| with_path(gens, e))?;
            let generators = match file.symmetric {
                Some(s) => s.generators,
                None => file.ideal,
            };
            (action, ring, generators)
        }
        None => {
            let file = parse_problem(&text).map_err(|e| with_path(gens, e))?;
            let s = file
                .symmetric
                .ok_or_else(|| Error::InvalidPermutation("no --perm and no symmetric block".into()))?;
            (s.action, file.ring, s.generators)
        }
    };
    let ideal = symmetric_setup(&action, &ring, &generators)?;
    let opts = CompletionOptions {
        max_pairs: pair_budget,
        ..Default::default()
    };
    let basis = if minimal {
        groebner_gamma_basis(&ideal, &opts)?
    } else {
        let mut b = sigma_gbasis(&ring, &ideal.sigma_generators(), &opts)?;
        b.elements.retain(|g| !ideal.relations.contains(&g.monic().expect("nonzero")));
        b
    };
    let expanded = if classical {
        Some(expand_classical_basis(&ideal, &interreduce(&ring, &basis.elements))?)
    } else {
        None
    };
    if as_json {
        let mut v = json!({
            "status": basis.status,
            "cycles": action.cycles(),
            "basis": fmt_all(&ring, &basis.elements),
            "stats": basis.stats,
        });
        if let Some(c) = &expanded {
            v["classical"] = json!(fmt_all(&ring, c));
        }
        print_json(&v);
    } else {
        println!("status: {}", basis.status);
        println!("elements: {}", basis.elements.len());
        for g in &basis.elements {
            println!("{}", ring.fmt_poly(g));
        }
        if let Some(c) = &expanded {
            println!("classical elements: {}", c.len());
            for g in c {
                println!("{}", ring.fmt_poly(g));
            }
        }
    }
    Ok(if basis.status == Status::BudgetExhausted { 2 } else { 0 })
}

fn normal_form(input: &Path, var: &str, as_json: bool) -> Result<u8, CliError> {
    let p = parse_problem(&read(input)?).map_err(|e| with_path(input, e))?;
    let v = parse_var(&p.ring, var)?;
    let q = QuotientPresentation::from_polys(p.ring.clone(), &p.ideal)?;
    let by_reduction = q.normal_form_variable(&v)?;
    let by_matrix = q.normal_form_kronecker(&v)?;
    let agree = by_reduction == by_matrix;
    let nf = q.coordinates_to_poly(&by_reduction);
    let params = p.ring.signature().parameters();
    let coords = |c: &[dgb_core::FieldElement]| c.iter().map(|x| x.fmt_with(params)).collect::<Vec<_>>();
    if as_json {
        print_json(&json!({
            "normal_form": p.ring.fmt_poly(&nf),
            "basis": q.normal_variables().into_iter().map(|w| p.ring.fmt_monomial(&dgb_core::Monomial::var(w))).collect::<Vec<_>>(),
            "reduction": coords(&by_reduction),
            "companion": coords(&by_matrix),
            "agree": agree,
        }));
    } else {
        println!("{}", p.ring.fmt_poly(&nf));
        println!("reduction: [{}]", coords(&by_reduction).join(", "));
        println!("companion: [{}]", coords(&by_matrix).join(", "));
        println!("agree: {agree}");
    }
    Ok(if agree { 0 } else { 2 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify { input, json } => verify(&input, json),
        Command::Reduce {
            input,
            poly,
            certificate,
            json,
        } => reduce(&input, &poly, certificate, json),
        Command::Symmetric {
            perm,
            gens,
            classical,
            minimal,
            pair_budget,
            json,
        } => symmetric(perm.as_deref(), &gens, classical, minimal, pair_budget, json),
        Command::NormalForm { input, var, json } => normal_form(&input, &var, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dgb: {e}");
            ExitCode::from(1)
        }
    }
}
