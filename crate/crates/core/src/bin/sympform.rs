//! Command-line interface: exact verification of symplectic operator
//! identities, cohomology dimension tables, boundary-condition checks,
//! built-in harmonic-field table verification, and pairing matrices.
//!
//! Every command prints a JSON report {command, checks, tables?} to stdout.
//! Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage or
//! input parse error.

use clap::{Parser, Subcommand};
use serde_json::json;
use std::process::ExitCode;
use sympform::bc::BcKind;
use sympform::fixtures::{
    self, load_builtin, pairing_matrix, pairing_rank, space_basis, verify_fixture, FIXTURE_NAMES,
};
use sympform::identities::run_identities;
use sympform::manifold::ManifoldDescriptor;
use sympform::parser::parse_form;
use sympform::report::{Check, RunReport};

#[derive(Parser)]
#[command(name = "sympform", version, about = "Exact symplectic form calculus")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the operator identity suite on seeded random forms.
    Identities {
        /// Half-dimension of the model frame (1..=3).
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of random forms.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute all cohomology dimension tables for a manifold descriptor.
    Cohomology {
        /// Path to a descriptor JSON file.
        #[arg(long)]
        manifold: String,
    },
    /// Check a form expression against a boundary condition.
    CheckForm {
        #[arg(long)]
        manifold: String,
        /// Form expression, e.g. "dx1^dy1 - 1/2*(dx2^dy2 + dx3^dy3)".
        #[arg(long)]
        form: String,
        /// Boundary condition name (D, N, JD, JN, Dplus, Dminus, Nplus,
        /// Nminus, DplusMinus, NplusMinus, DplusPlus, NminusMinus).
        #[arg(long)]
        bc: String,
        /// Harmonic-field space tag (derham, plus, minus, plusplus,
        /// minusminus): additionally verify primitivity and the field
        /// equations.
        #[arg(long)]
        space: Option<String>,
    },
    /// Verify the built-in harmonic-field tables.
    VerifyTables {
        /// Fixture name (ixt5, b3t3_omega, b3t3_omega_tilde) or "all".
        #[arg(long, default_value = "all")]
        fixture: String,
    },
    /// Compute pairing matrices between absolute plus-spaces and relative
    /// minus-spaces of a fixture and check nondegeneracy.
    Pairing {
        #[arg(long, default_value = "ixt5")]
        fixture: String,
        /// Restrict to one degree (default: all degrees with bases on both
        /// sides).
        #[arg(long)]
        degree: Option<usize>,
    },
}

fn emit(report: &RunReport) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(report).unwrap());
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn load_manifold(path: &str) -> Result<ManifoldDescriptor, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))?;
    ManifoldDescriptor::from_json(&text).map_err(|e| e.to_string())
}

fn cmd_identities(n: usize, cases: usize, seed: u64) -> ExitCode {
    if !(1..=3).contains(&n) {
        return usage_error("--n must be 1, 2, or 3");
    }
    let mut report = RunReport::new("identities");
    report.checks = run_identities(n, cases, seed);
    report.tables = Some(json!({"n": n, "cases": cases, "seed": seed}));
    emit(&report)
}

fn cmd_cohomology(path: &str) -> ExitCode {
    let m = match load_manifold(path) {
        Ok(m) => m,
        Err(e) => return usage_error(&e),
    };
    let mut report = RunReport::new("cohomology");
    let plus_abs = m.ph_plus_abs();
    let minus_abs = m.ph_minus_abs();
    let plus_rel = m.ph_plus_rel_duality();
    let minus_rel = m.ph_minus_rel_duality();
    let index_abs = m.primitive_complex_index(&plus_abs, &minus_abs);
    let index_rel = m.primitive_complex_index(&plus_rel, &minus_rel);
    report.tables = Some(json!({
        "betti_abs": m.betti_abs(),
        "betti_rel": m.betti_rel(),
        "ph_plus_abs": plus_abs,
        "ph_minus_abs": minus_abs,
        "ph_plus_rel": plus_rel,
        "ph_minus_rel": minus_rel,
        "index_abs": index_abs,
        "index_rel": index_rel,
    }));
    report.checks.push(if m.ph_plus_rel_swap() == plus_rel && m.ph_minus_rel_swap() == minus_rel {
        Check::pass("relative dimensions agree between duality and Lefschetz routes".into())
    } else {
        Check::fail(
            "relative dimensions agree between duality and Lefschetz routes".into(),
            format!("swap route: {:?} / {:?}", m.ph_plus_rel_swap(), m.ph_minus_rel_swap()),
        )
    });
    for (name, idx) in [("absolute", index_abs), ("relative", index_rel)] {
        report.checks.push(if idx == 0 {
            Check::pass(format!("{} primitive complex index is zero", name))
        } else {
            Check::fail(
                format!("{} primitive complex index is zero", name),
                format!("index = {}", idx),
            )
        });
    }
    emit(&report)
}

fn cmd_check_form(path: &str, form: &str, bc: &str, space: Option<&str>) -> ExitCode {
    let m = match load_manifold(path) {
        Ok(m) => m,
        Err(e) => return usage_error(&e),
    };
    let f = match parse_form(&m, form) {
        Ok(f) => f,
        Err(e) => return usage_error(&format!("form: {}", e)),
    };
    let kind = match BcKind::parse(bc) {
        Some(k) => k,
        None => return usage_error(&format!("unknown boundary condition '{}'", bc)),
    };
    let mut report = RunReport::new("check-form");
    for comp in &m.boundary {
        let ok = m.check_bc_component(kind, &f, comp);
        let name = format!("{} on boundary component {}", kind.name(), comp.name);
        report.checks.push(if ok {
            Check::pass(name)
        } else {
            Check::fail(name, format!("'{}' violates {}", form, kind.name()))
        });
    }
    if let Some(tag) = space {
        if tag != "derham" {
            let name = format!("primitive ({})", tag);
            report.checks.push(if m.frame.is_primitive(&f) {
                Check::pass(name)
            } else {
                Check::fail(name, "nonzero omega-trace".into())
            });
        }
        match fixtures::field_equations(&m, tag, &f) {
            Ok(eqs) => {
                for (opname, g) in eqs {
                    let name = format!("field equation {} = 0", opname);
                    report.checks.push(if g.is_zero() {
                        Check::pass(name)
                    } else {
                        Check::fail(name, "nonzero result".into())
                    });
                }
            }
            Err(e) => return usage_error(&e),
        }
    }
    emit(&report)
}

fn cmd_verify_tables(fixture: &str) -> ExitCode {
    let names: Vec<&str> = if fixture == "all" {
        FIXTURE_NAMES.to_vec()
    } else if FIXTURE_NAMES.contains(&fixture) {
        vec![fixture]
    } else {
        return usage_error(&format!("unknown fixture '{}'", fixture));
    };
    let mut report = RunReport::new("verify-tables");
    for name in names {
        let fix = match load_builtin(name) {
            Ok(f) => f,
            Err(e) => return usage_error(&e),
        };
        match verify_fixture(&fix) {
            Ok(mut checks) => report.checks.append(&mut checks),
            Err(e) => return usage_error(&e),
        }
    }
    emit(&report)
}

fn cmd_pairing(fixture: &str, degree: Option<usize>) -> ExitCode {
    let fix = match load_builtin(fixture) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    let m = match ManifoldDescriptor::from_descriptor(&fix.descriptor) {
        Ok(m) => m,
        Err(e) => return usage_error(&e.to_string()),
    };
    let n = m.frame.n();
    let degrees: Vec<usize> = match degree {
        Some(k) if k <= n => vec![k],
        Some(_) => return usage_error("--degree exceeds n"),
        None => (0..=n)
            .filter(|&k| {
                fix.spaces.iter().any(|s| s.space == "plus_abs" && s.degree == k)
                    && fix.spaces.iter().any(|s| s.space == "minus_rel" && s.degree == k)
            })
            .collect(),
    };
    let mut report = RunReport::new("pairing");
    let mut tables = serde_json::Map::new();
    for k in degrees {
        let left = match space_basis(&fix, &m, "plus_abs", k) {
            Ok(b) => b,
            Err(e) => return usage_error(&e),
        };
        let right = match space_basis(&fix, &m, "minus_rel", k) {
            Ok(b) => b,
            Err(e) => return usage_error(&e),
        };
        let mat = match pairing_matrix(&m, &left, &right, k) {
            Ok(mat) => mat,
            Err(e) => return usage_error(&e),
        };
        let rank = pairing_rank(&mat);
        let printed: Vec<Vec<String>> = mat
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect();
        tables.insert(format!("degree_{}", k), json!(printed));
        let name = format!(
            "degree {} pairing is nondegenerate ({}x{})",
            k,
            left.len(),
            right.len()
        );
        report.checks.push(if rank == left.len() && rank == right.len() {
            Check::pass(name)
        } else {
            Check::fail(name, format!("rank {}", rank))
        });
    }
    report.tables = Some(serde_json::Value::Object(tables));
    emit(&report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Identities { n, cases, seed } => cmd_identities(n, cases, seed),
        Cmd::Cohomology { manifold } => cmd_cohomology(&manifold),
        Cmd::CheckForm { manifold, form, bc, space } => {
            cmd_check_form(&manifold, &form, &bc, space.as_deref())
        }
        Cmd::VerifyTables { fixture } => cmd_verify_tables(&fixture),
        Cmd::Pairing { fixture, degree } => cmd_pairing(&fixture, degree),
    }
}
