//! Command-line front end: load manifold models, dump quantum multiplication
//! tables, compute Seidel elements of circle actions, and run the product
//! verifiers.
//!
//! Exit status: 0 on success or a verified identity, 1 when a verification
//! finds an inequality or a table has violations, 2 on input errors.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use output::{DiffJson, ElementJson, Output, TableEntryJson};
use qh_core::descriptor::{load_manifold_str, ActionDescriptor, ManifoldDescriptor};
use qh_core::qring::{parse_element, qmul, try_inverse, unit_order, QuantumElement};
use qh_core::seidel::{seidel_circle, verify_thm1, verify_thm2, CircleActionData};
use qh_core::{catalog, product_manifold, Error, Model, ProductModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "qh",
    about = "Quantum homology rings over the Novikov ring: tables, units, Seidel elements, product verifiers",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Parser)]
enum Command {
    /// Print the full quantum multiplication table of a model.
    Table {
        #[arg(long)]
        manifold: Option<String>,
        /// Load the model from a descriptor file instead of the catalog.
        #[arg(long)]
        manifold_file: Option<PathBuf>,
    },
    /// Multiply two elements given in text form.
    Qmul {
        #[arg(long)]
        manifold: Option<String>,
        #[arg(long)]
        manifold_file: Option<PathBuf>,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Invert a homogeneous unit.
    Inverse {
        #[arg(long)]
        manifold: Option<String>,
        #[arg(long)]
        manifold_file: Option<PathBuf>,
        #[arg(long)]
        element: String,
    },
    /// Order of a unit under quantum multiplication, up to a bound.
    Order {
        #[arg(long)]
        manifold: Option<String>,
        #[arg(long)]
        manifold_file: Option<PathBuf>,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 64)]
        bound: u32,
    },
    /// Export the product of two models as a descriptor document.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Apply one of the product embeddings to an element.
    Kappa {
        #[arg(long)]
        manifold: Option<String>,
        #[arg(long)]
        manifold_file: Option<PathBuf>,
        /// Second factor; defaults to the manifold itself.
        #[arg(long = "with")]
        with: Option<String>,
        #[arg(long)]
        element: String,
        /// Which embedding: kappa (x ⊗ \[N\]), kappa0 (\[M\] ⊗ x) or
        /// kappa-prime (x ⊗ x).
        #[arg(long, default_value = "kappa")]
        map: String,
    },
    /// Seidel element of a circle action descriptor.
    Seidel {
        /// Path to an action descriptor, or a built-in action name.
        #[arg(long)]
        action: String,
    },
    /// Verify S(psi x id_N) = kappa(S(psi)) for an aspherical N.
    #[command(name = "verify-thm1")]
    VerifyThm1 {
        #[arg(long)]
        action: String,
        #[arg(long = "with")]
        with: String,
    },
    /// Verify kappa'(S) = kappa(S) * kappa0(S) over M x M.
    #[command(name = "verify-thm2")]
    VerifyThm2 {
        #[arg(long)]
        action: String,
    },
    /// Check a model descriptor: invariants and Gromov-Witten table.
    Validate {
        #[arg(long)]
        manifold: Option<String>,
        #[arg(long)]
        manifold_file: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Resolves a model: built-in catalog first, then `$QH_CATALOG_DIR/<name>.json`.
fn resolve_model(name: &str) -> Result<Model, Error> {
    if let Some(model) = catalog::builtin(name) {
        return Ok(model);
    }
    if let Ok(dir) = std::env::var("QH_CATALOG_DIR") {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if path.exists() {
            let json = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return load_manifold_str(&json);
        }
    }
    Err(Error::Parse(format!(
        "unknown manifold `{name}`; built-ins are {}",
        catalog::builtin_names().join(", ")
    )))
}

fn load_model(manifold: &Option<String>, file: &Option<PathBuf>) -> Result<Model, Error> {
    match (manifold, file) {
        (_, Some(path)) => {
            let json = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            load_manifold_str(&json)
        }
        (Some(name), None) => resolve_model(name),
        (None, None) => Err(Error::Parse(
            "pass --manifold <name> or --manifold-file <path>".into(),
        )),
    }
}

/// Resolves an action: a readable file path wins, then built-in names.
fn load_action(spec: &str) -> Result<CircleActionData, Error> {
    let path = PathBuf::from(spec);
    let desc = if path.exists() {
        let json = std::fs::read_to_string(&path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        ActionDescriptor::from_json(&json)?
    } else if let Some(json) = catalog::builtin_action_descriptor(spec) {
        ActionDescriptor::from_json(json)?
    } else {
        return Err(Error::Parse(format!(
            "`{spec}` is neither a readable file nor a built-in action ({})",
            catalog::builtin_action_names().join(", ")
        )));
    };
    let model = resolve_model(&desc.manifold)?;
    desc.to_action(model)
}

fn emit(format: Format, text: String, json: Output) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", json.to_json()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let format = cli.format;
    match cli.command {
        Command::Table {
            manifold,
            manifold_file,
        } => {
            let model = load_model(&manifold, &manifold_file)?;
            let mut entries = Vec::new();
            let mut lines = Vec::new();
            for i in 0..model.basis().len() {
                for j in 0..model.basis().len() {
                    let product = qmul(
                        &QuantumElement::generator(model.clone(), i),
                        &QuantumElement::generator(model.clone(), j),
                    )?;
                    lines.push(format!(
                        "{} * {} = {}",
                        model.basis()[i].name,
                        model.basis()[j].name,
                        product
                    ));
                    entries.push(TableEntryJson {
                        left: model.basis()[i].name.clone(),
                        right: model.basis()[j].name.clone(),
                        product: ElementJson::from_element(&product)?,
                    });
                }
            }
            emit(
                format,
                lines.join("\n"),
                Output::Table {
                    status: "ok",
                    manifold: model.name().to_string(),
                    entries,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Qmul {
            manifold,
            manifold_file,
            lhs,
            rhs,
        } => {
            let model = load_model(&manifold, &manifold_file)?;
            let x = parse_element(&model, &lhs)?;
            let y = parse_element(&model, &rhs)?;
            let product = qmul(&x, &y)?;
            emit(
                format,
                product.to_string(),
                Output::Qmul {
                    status: "ok",
                    manifold: model.name().to_string(),
                    product: ElementJson::from_element(&product)?,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Inverse {
            manifold,
            manifold_file,
            element,
        } => {
            let model = load_model(&manifold, &manifold_file)?;
            let x = parse_element(&model, &element)?;
            let inverse = try_inverse(&x)?;
            emit(
                format,
                inverse.to_string(),
                Output::Inverse {
                    status: "ok",
                    manifold: model.name().to_string(),
                    inverse: ElementJson::from_element(&inverse)?,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Order {
            manifold,
            manifold_file,
            element,
            bound,
        } => {
            let model = load_model(&manifold, &manifold_file)?;
            let x = parse_element(&model, &element)?;
            let order = unit_order(&x, bound)?;
            emit(
                format,
                order.to_string(),
                Output::Order {
                    status: "ok",
                    manifold: model.name().to_string(),
                    order: order.into(),
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Product { left, right } => {
            let product = product_manifold(&resolve_model(&left)?, &resolve_model(&right)?)?;
            let descriptor = ManifoldDescriptor::from_model(product.model())?;
            emit(
                format,
                descriptor.to_json(),
                Output::Product {
                    status: "ok",
                    descriptor,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Kappa {
            manifold,
            manifold_file,
            with,
            element,
            map,
        } => {
            let model = load_model(&manifold, &manifold_file)?;
            let other = match &with {
                Some(name) => resolve_model(name)?,
                None => model.clone(),
            };
            let x = parse_element(&model, &element)?;
            let product: ProductModel = product_manifold(&model, &other)?;
            let image = match map.as_str() {
                "kappa" => product.kappa(&x)?,
                "kappa0" => product.kappa_zero(&x)?,
                "kappa-prime" => product.kappa_prime(&x)?,
                other => {
                    return Err(Error::Parse(format!(
                        "unknown map `{other}`; use kappa, kappa0 or kappa-prime"
                    )))
                }
            };
            emit(
                format,
                image.to_string(),
                Output::Kappa {
                    status: "ok",
                    map,
                    product_manifold: product.model().name().to_string(),
                    image: ElementJson::from_element(&image)?,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Seidel { action } => {
            let action = load_action(&action)?;
            let s = seidel_circle(&action)?;
            let text = format!(
                "S = {}\ninverse = {}\nnontrivial: {}",
                s.element(),
                s.inverse(),
                s.is_nontrivial()
            );
            emit(
                format,
                text,
                Output::Seidel {
                    status: "ok",
                    manifold: action.model().name().to_string(),
                    element: ElementJson::from_element(s.element())?,
                    inverse: ElementJson::from_element(s.inverse())?,
                    nontrivial: s.is_nontrivial(),
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyThm1 { action, with } => {
            let action = load_action(&action)?;
            let other = resolve_model(&with)?;
            let report = verify_thm1(&action, &other)?;
            let status = if report.equal { "verified" } else { "failed" };
            let mut text = format!("{status}\nlhs = {}\nrhs = {}", report.lhs, report.rhs);
            for diff in &report.diffs {
                text.push_str(&format!("\ndiff {diff}"));
            }
            let diffs = report
                .diffs
                .iter()
                .map(DiffJson::from_diff)
                .collect::<Result<Vec<_>, _>>()?;
            emit(
                format,
                text,
                Output::VerifyThm1 {
                    status,
                    manifold: action.model().name().to_string(),
                    with: other.name().to_string(),
                    lhs: ElementJson::from_element(&report.lhs)?,
                    rhs: ElementJson::from_element(&report.rhs)?,
                    diffs,
                },
            );
            Ok(if report.equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::VerifyThm2 { action } => {
            let action = load_action(&action)?;
            let report = verify_thm2(&action)?;
            let status = if report.passed() {
                "verified"
            } else {
                "failed"
            };
            let mut text = format!(
                "{status}\nkappa' side = {}\nkappa * kappa0 side = {}\nleading term matches: {}",
                report.kappa_prime_side, report.product_side, report.leading_term_matches
            );
            for diff in &report.diffs {
                text.push_str(&format!("\ndiff {diff}"));
            }
            let diffs = report
                .diffs
                .iter()
                .map(DiffJson::from_diff)
                .collect::<Result<Vec<_>, _>>()?;
            emit(
                format,
                text,
                Output::VerifyThm2 {
                    status,
                    manifold: action.model().name().to_string(),
                    kappa_prime: ElementJson::from_element(&report.kappa_prime_side)?,
                    product: ElementJson::from_element(&report.product_side)?,
                    leading_term_matches: report.leading_term_matches,
                    predicted_leading: ElementJson::from_element(&report.predicted_leading)?,
                    diffs,
                },
            );
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Validate {
            manifold,
            manifold_file,
        } => {
            // Check the raw descriptor so that violating tables produce a
            // report instead of a load error.
            let descriptor = match (&manifold, &manifold_file) {
                (_, Some(path)) => {
                    let json = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    ManifoldDescriptor::from_json(&json)?
                }
                (Some(name), None) => {
                    let model = resolve_model(name)?;
                    ManifoldDescriptor::from_model(&model)?
                }
                (None, None) => {
                    return Err(Error::Parse(
                        "pass --manifold <name> or --manifold-file <path>".into(),
                    ))
                }
            };
            let findings = descriptor.check_table()?;
            let status = if findings.is_empty() {
                "clean"
            } else {
                "violations"
            };
            let text = if findings.is_empty() {
                format!("{}: clean", descriptor.name)
            } else {
                findings.join("\n")
            };
            let clean = findings.is_empty();
            emit(
                format,
                text,
                Output::Validate {
                    status,
                    manifold: descriptor.name.clone(),
                    findings,
                },
            );
            Ok(if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
