//! Command-line front end.
//!
//! Subcommands: `jordan`, `centralizer`, `report`, `contain`, `identity`.
//! Matrix files are UTF-8 JSON (see the report module). Reports go to
//! stdout, diagnostics to stderr. Exit codes: 0 success, 1 property
//! violation under --check, 2 analysis precondition failure (not
//! nilpotent, non-split spectrum, unsupported domain), 3 shape error,
//! 4 parse error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::centralizer::{
    brute_commutant, containment_test, dimension_formula, spans_equal, split_structured_basis,
    structured_basis, Containment,
};
use crate::error::Error;
use crate::identities::{
    check_product_identity, check_standard_identity, check_standard_identity_of_degree,
    standard_nonidentity_witness, IdentityReport,
};
use crate::jordan::{jordan_base, nilpotency_index};
use crate::matrix::Matrix;
use crate::report::{
    field_tag, parse_matrix_file, render_matrix, render_poly, render_scalar, require_square,
    to_json_string, CentralizerReport, ContainReport, DimensionCheck, FullReport, InputError,
    JordanReport, NilpotentStructure, SplitBlockReport, SplitStructBlock, SplitStructure,
};
use crate::scalar::Domain;
use crate::structure::{pi_degree, trace_form_radical_oracle, StructureReport};

#[derive(Parser)]
#[command(
    name = "cenalg",
    version,
    about = "Exact matrix centralizers: Jordan types, commutants, structure and identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Jordan type and change of base of a nilpotent matrix
    Jordan {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Centralizer dimension; with --check, cross-validate all three routes
    Centralizer {
        file: PathBuf,
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Full structure report: radical, semisimple blocks, PI data
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Decide whether the centralizer of A is contained in that of B
    Contain {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a standard identity on random centralizer elements
    Identity {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        let code = match e {
            InputError::Parse(_) => 4,
            InputError::Shape(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: 2, message: e.to_string() }
    }
}

type CmdResult = Result<(String, i32), Failure>;

fn load_square(path: &PathBuf) -> Result<Matrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 4,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let m = parse_matrix_file(&text)?;
    require_square(&m)?;
    Ok(m)
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((out, code)) => {
            println!("{out}");
            code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::Jordan { file, format } => cmd_jordan(&file, format),
        Command::Centralizer { file, check, format } => cmd_centralizer(&file, check, format),
        Command::Report { file, format, seed, trials } => cmd_report(&file, format, seed, trials),
        Command::Contain { file_a, file_b, format } => cmd_contain(&file_a, &file_b, format),
        Command::Identity { file, degree, trials, seed, format } => {
            cmd_identity(&file, degree, trials, seed, format)
        }
    }
}

fn cmd_jordan(file: &PathBuf, format: Format) -> CmdResult {
    let a = load_square(file)?;
    let basis = jordan_base(&a)?;
    let jt = basis.jtype();
    let report = JordanReport {
        sizes: jt.sizes().to_vec(),
        n: jt.index(),
        m: jt.block_count(),
        change_of_base: render_matrix(basis.change_of_base()),
    };
    let out = match format {
        Format::Json => to_json_string(&report),
        Format::Text => format!(
            "jordan type: {:?}\nnilpotency index n = {}\nblocks m = {}\nchange of base:\n{}",
            report.sizes,
            report.n,
            report.m,
            basis.change_of_base()
        ),
    };
    Ok((out, 0))
}

fn nilpotent_dimension_check(a: &Matrix) -> Result<(Vec<usize>, DimensionCheck), Error> {
    let cb = structured_basis(a)?;
    let brute = brute_commutant(a);
    let formula = dimension_formula(cb.jtype(), a.domain());
    let spans = spans_equal(&brute, cb.realized());
    let check = DimensionCheck {
        brute: brute.len() as u64,
        structured: cb.len() as u64,
        formula,
        spans_equal: spans,
        agree: brute.len() as u64 == formula && cb.len() as u64 == formula && spans,
    };
    Ok((cb.jtype().sizes().to_vec(), check))
}

fn cmd_centralizer(file: &PathBuf, check: bool, format: Format) -> CmdResult {
    let a = load_square(file)?;
    let report = if nilpotency_index(&a).is_some() {
        let (sizes, dims) = nilpotent_dimension_check(&a)?;
        CentralizerReport {
            nilpotent: true,
            sizes: Some(sizes),
            dimension: dims.brute,
            check: check.then_some(dims),
            blocks: None,
        }
    } else {
        // split-spectrum reduction; fails with NotNilpotent over the quaternions
        if !a.domain().is_field() {
            return Err(Error::NotNilpotent.into());
        }
        let (split, embedded) = split_structured_basis(&a)?;
        let blocks: Vec<SplitBlockReport> = split
            .blocks
            .iter()
            .map(|b| SplitBlockReport {
                eigenvalue: render_scalar(&b.eigenvalue),
                sizes: b.jtype.sizes().to_vec(),
                dimension: b.dimension,
            })
            .collect();
        let dims = if check {
            let brute = brute_commutant(&a);
            let spans = spans_equal(&brute, &embedded);
            Some(DimensionCheck {
                brute: brute.len() as u64,
                structured: embedded.len() as u64,
                formula: split.total_dimension,
                spans_equal: spans,
                agree: brute.len() as u64 == split.total_dimension && spans,
            })
        } else {
            None
        };
        CentralizerReport {
            nilpotent: false,
            sizes: None,
            dimension: split.total_dimension,
            check: dims,
            blocks: Some(blocks),
        }
    };
    let code = match &report.check {
        Some(c) if !c.agree => 1,
        _ => 0,
    };
    let out = match format {
        Format::Json => to_json_string(&report),
        Format::Text => {
            let mut s = String::new();
            if report.nilpotent {
                s.push_str(&format!("jordan type: {:?}\n", report.sizes.as_ref().unwrap()));
            } else {
                s.push_str("split spectrum:\n");
                for b in report.blocks.as_ref().unwrap() {
                    s.push_str(&format!(
                        "  eigenvalue {}: type {:?}, dimension {}\n",
                        b.eigenvalue, b.sizes, b.dimension
                    ));
                }
            }
            s.push_str(&format!("centralizer dimension: {}", report.dimension));
            if let Some(c) = &report.check {
                s.push_str(&format!(
                    "\ncheck: brute {} / structured {} / formula {} / spans equal {} -> {}",
                    c.brute,
                    c.structured,
                    c.formula,
                    c.spans_equal,
                    if c.agree { "agree" } else { "DISAGREE" }
                ));
            }
            s
        }
    };
    Ok((out, code))
}

fn identity_section(
    a: &Matrix,
    trials: u64,
    seed: u64,
) -> (Vec<IdentityReport>, Option<String>, Option<u64>) {
    let mut checks = Vec::new();
    let mut skipped = None;
    match check_standard_identity(a, trials, seed) {
        Ok(r) => checks.push(r),
        Err(e) => skipped = Some(e.to_string()),
    }
    if skipped.is_none() {
        match check_product_identity(a, trials, seed) {
            Ok(r) => checks.push(r),
            Err(e) => skipped = Some(e.to_string()),
        }
    }
    let witness_degree = standard_nonidentity_witness(a).ok().flatten().map(|w| w.degree as u64);
    (checks, skipped, witness_degree)
}

fn cmd_report(file: &PathBuf, format: Format, seed: u64, trials: u64) -> CmdResult {
    let a = load_square(file)?;
    let domain = a.domain();
    if !domain.is_field() {
        return Err(Error::UnsupportedDomain { op: "report", domain }.into());
    }
    let (tag, p) = field_tag(domain);
    let report = if nilpotency_index(&a).is_some() {
        let (sizes, dims) = nilpotent_dimension_check(&a)?;
        let jt = crate::jordan::JordanType::new(sizes.clone());
        let structure = StructureReport::compute(&jt);
        let (oracle, agrees) = if domain == Domain::Rationals {
            let cb = structured_basis(&a)?;
            let dim = trace_form_radical_oracle(cb.realized())? as u64;
            (Some(dim), Some(dim == structure.radical_dim))
        } else {
            (None, None)
        };
        let (identity_checks, skipped, witness_degree) = identity_section(&a, trials, seed);
        FullReport {
            field: tag,
            p,
            nilpotent: true,
            nilpotent_structure: Some(NilpotentStructure {
                sizes,
                dimension: dims,
                structure,
                radical_oracle_dim: oracle,
                oracle_agrees: agrees,
                identity_checks,
                identity_checks_skipped: skipped,
                nonidentity_witness_degree: witness_degree,
            }),
            split: None,
        }
    } else {
        let (split, _) = split_structured_basis(&a)?;
        let blocks: Vec<SplitStructBlock> = split
            .blocks
            .iter()
            .map(|b| SplitStructBlock {
                eigenvalue: render_scalar(&b.eigenvalue),
                sizes: b.jtype.sizes().to_vec(),
                dimension: b.dimension,
                structure: StructureReport::compute(&b.jtype),
            })
            .collect();
        let pi = split.blocks.iter().map(|b| pi_degree(&b.jtype) as u64).max().unwrap_or(0);
        FullReport {
            field: tag,
            p,
            nilpotent: false,
            nilpotent_structure: None,
            split: Some(SplitStructure {
                blocks,
                total_dimension: split.total_dimension,
                pi_degree: pi,
            }),
        }
    };
    let out = match format {
        Format::Json => to_json_string(&report),
        Format::Text => render_report_text(&report),
    };
    Ok((out, 0))
}

fn render_report_text(report: &FullReport) -> String {
    let mut s = String::new();
    match &report.p {
        Some(p) => s.push_str(&format!("field: {} (p = {p})\n", report.field)),
        None => s.push_str(&format!("field: {}\n", report.field)),
    }
    if let Some(n) = &report.nilpotent_structure {
        s.push_str(&format!("jordan type: {:?}\n", n.sizes));
        s.push_str(&format!(
            "dimension: brute {} / structured {} / formula {} ({})\n",
            n.dimension.brute,
            n.dimension.structured,
            n.dimension.formula,
            if n.dimension.agree { "agree" } else { "DISAGREE" }
        ));
        s.push_str(&format!(
            "radical dimension: {} (nilpotency index {} <= bound {})\n",
            n.structure.radical_dim,
            n.structure.radical_nilpotency_index,
            n.structure.nilpotency_bound
        ));
        if let Some(o) = n.radical_oracle_dim {
            s.push_str(&format!(
                "trace-form radical oracle: {o} ({})\n",
                if n.oracle_agrees == Some(true) { "agrees" } else { "DISAGREES" }
            ));
        }
        s.push_str(&format!(
            "semisimple blocks: {:?} (pi degree {})\n",
            n.structure.multiplicities, n.structure.pi_degree
        ));
        for c in &n.identity_checks {
            s.push_str(&format!(
                "identity {}: {} over {} trials\n",
                c.identity,
                if c.passed() { "holds" } else { "FAILS" },
                c.trials
            ));
        }
        if let Some(why) = &n.identity_checks_skipped {
            s.push_str(&format!("identity checks skipped: {why}\n"));
        }
        if let Some(deg) = n.nonidentity_witness_degree {
            s.push_str(&format!("nonvanishing witness found for S_{deg}\n"));
        }
    }
    if let Some(split) = &report.split {
        s.push_str("split spectrum:\n");
        for b in &split.blocks {
            s.push_str(&format!(
                "  eigenvalue {}: type {:?}, dimension {}, radical {}\n",
                b.eigenvalue, b.sizes, b.dimension, b.structure.radical_dim
            ));
        }
        s.push_str(&format!("total dimension: {}\n", split.total_dimension));
        s.push_str(&format!("pi degree: {}", split.pi_degree));
    }
    s.trim_end().to_string()
}

fn cmd_contain(file_a: &PathBuf, file_b: &PathBuf, format: Format) -> CmdResult {
    let a = load_square(file_a)?;
    let b = load_square(file_b)?;
    if a.domain() != b.domain() {
        return Err(InputError::Parse(format!(
            "domain mismatch: {} vs {}",
            a.domain(),
            b.domain()
        ))
        .into());
    }
    if a.rows() != b.rows() {
        return Err(InputError::Shape(format!(
            "size mismatch: {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        ))
        .into());
    }
    let result = containment_test(&a, &b)?;
    let report = match &result {
        Containment::Contained { witness_poly } => ContainReport {
            contained: true,
            polynomial: witness_poly.as_ref().map(render_poly),
            witness: None,
        },
        Containment::NotContained { witness } => ContainReport {
            contained: false,
            polynomial: None,
            witness: Some(render_matrix(witness)),
        },
    };
    let out = match format {
        Format::Json => to_json_string(&report),
        Format::Text => match &result {
            Containment::Contained { witness_poly: Some(h) } => {
                format!("contained: Cen(A) is a subset of Cen(B)\nh(z) = {h} with h(A) = B")
            }
            Containment::Contained { witness_poly: None } => {
                "contained: Cen(A) is a subset of Cen(B)".to_string()
            }
            Containment::NotContained { witness } => {
                format!("not contained; witness commuting with A but not with B:\n{witness}")
            }
        },
    };
    Ok((out, 0))
}

fn cmd_identity(
    file: &PathBuf,
    degree: Option<usize>,
    trials: u64,
    seed: u64,
    format: Format,
) -> CmdResult {
    let a = load_square(file)?;
    let report = match degree {
        Some(k) => check_standard_identity_of_degree(&a, k, trials, seed)?,
        None => check_standard_identity(&a, trials, seed)?,
    };
    let out = match format {
        Format::Json => to_json_string(&report),
        Format::Text => format!(
            "identity {} (degree {}): {} over {} trials{}",
            report.identity,
            report.degree,
            if report.passed() { "holds" } else { "FAILS" },
            report.trials,
            if report.failures.is_empty() {
                String::new()
            } else {
                format!(
                    "\nfailing trials: {:?}",
                    report.failures.iter().map(|f| f.trial).collect::<Vec<_>>()
                )
            }
        ),
    };
    Ok((out, 0))
}
