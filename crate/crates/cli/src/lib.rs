//! Command-line front end: parse structure files, dispatch the checks,
//! and emit machine-readable reports with meaningful exit codes.
//!
//! Exit codes: `0` all checks pass, `1` a property or axiom fails (the
//! report carries a witness), `2` input or usage error, `3` an
//! undetermined maximality verdict is present and nothing failed.
//!
//! The `machine` format is stable JSON with sorted keys and no volatile
//! fields, so reports for seeded commands are byte-identical across
//! runs; the `human` format adds wall-clock timing.

use clap::{Parser, Subcommand, ValueEnum};
use omnilie::calgebra::{build_omni_instance, check_axioms, validate_instance, CAlgebraInstance};
use omnilie::courant::{axioms_sample_check, dirac_check, linearize_roundtrip, BracketVariant};
use omnilie::dstruct::{classify, search_d_structures, Classification, Maximality, SearchStrategy};
use omnilie::io::{
    DiracCandidateJson, InstanceJson, OmniElementJson, OmniSubspaceJson, StructureConstantsJson,
};
use omnilie::linalg::vec_unit;
use omnilie::omni::{cartan_form, jacobiator, OmniElement, OmniSubspace};
use omnilie::sampling::{random_omni_element, seeded_rng};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "omnilie",
    version,
    about = "Exact verifier for omni-Lie algebra identities, D-structures, \
             C-algebra axioms, and Courant-bracket geometry"
)]
pub struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
pub enum Command {
    /// Verify the bracket anomaly identity on seeded random triples
    #[command(name = "omni-identity")]
    OmniIdentity {
        /// Dimension n of the underlying space
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a structure-constant file: skewness, the Jacobi identity,
    /// and the D-structure classification of the adjoint graph
    #[command(name = "lie-check")]
    LieCheck { input: PathBuf },
    /// Classify a subspace of gl(n) x Q^n: isotropy, maximality, closure
    #[command(name = "dstruct-classify")]
    DstructClassify { input: PathBuf },
    /// Enumerate D-structures (best effort, deterministic per seed)
    #[command(name = "dstruct-search")]
    DstructSearch {
        #[arg(long)]
        n: usize,
        /// One of: exhaustive, graph, greedy, all
        #[arg(long, default_value = "all")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Validate a C-algebra instance file and check axioms 0-5
    #[command(
        name = "calg-check",
        group = clap::ArgGroup::new("source").required(true).args(["input", "omni"])
    )]
    CalgCheck {
        input: Option<PathBuf>,
        /// Check the built-in omni-Lie instance of the given dimension
        #[arg(long)]
        omni: Option<usize>,
    },
    /// Check a Dirac-structure candidate (bivector, 2-form, or foliation)
    #[command(name = "courant-dirac")]
    CourantDirac { input: PathBuf },
    /// Sample the Courant-bracket axioms on random polynomial sections
    #[command(name = "courant-axioms")]
    CourantAxioms {
        /// Number of variables
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long = "degree-bound", default_value_t = 2)]
        degree_bound: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that linearization intertwines the Courant and omni
    /// brackets and pairings on all basis pairs
    Linearize {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

/// Verdict status, mapped one-to-one onto exit codes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undetermined => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undetermined => "undetermined",
        }
    }
}

/// Execute a parsed invocation: print the report to stdout and return
/// the exit code. Input errors go to stderr with exit code 2.
pub fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    let (command_name, outcome) = match dispatch(&cli.command) {
        Ok(pair) => pair,
        Err(message) => {
            eprintln!("error: {message}");
            return 2;
        }
    };
    let (body, status) = outcome;
    let report = json!({
        "command": command_name,
        "report": body,
        "status": status.label(),
    });
    let text = match cli.format {
        Format::Machine => {
            let mut t = serde_json::to_string_pretty(&report).expect("report serializes");
            t.push('\n');
            t
        }
        Format::Human => {
            let mut t = emit_human(&report);
            t.push_str(&format!("timing_ms: {}\n", start.elapsed().as_millis()));
            t
        }
    };
    // a closed pipe on the consumer side is not an error worth dying over
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
    let _ = std::io::stdout().flush();
    status.exit_code()
}

fn dispatch(command: &Command) -> Result<(&'static str, (Value, Status)), String> {
    Ok(match command {
        Command::OmniIdentity { n, trials, seed } => {
            ("omni-identity", omni_identity(*n, *trials, *seed)?)
        }
        Command::LieCheck { input } => ("lie-check", lie_check(input)?),
        Command::DstructClassify { input } => ("dstruct-classify", dstruct_classify(input)?),
        Command::DstructSearch { n, strategy, seed, budget } => {
            ("dstruct-search", dstruct_search(*n, strategy, *seed, *budget)?)
        }
        Command::CalgCheck { input, omni } => ("calg-check", calg_check(input.as_deref(), *omni)?),
        Command::CourantDirac { input } => ("courant-dirac", courant_dirac(input)?),
        Command::CourantAxioms { n, degree_bound, trials, seed } => {
            ("courant-axioms", courant_axioms(*n, *degree_bound, *trials, *seed)?)
        }
        Command::Linearize { n } => ("linearize", linearize_cmd(*n)?),
    })
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn element_json(e: &OmniElement) -> Value {
    serde_json::to_value(OmniElementJson::from_element(e)).expect("element serializes")
}

fn subspace_json(f: &OmniSubspace) -> Value {
    serde_json::to_value(OmniSubspaceJson::from_subspace(f)).expect("subspace serializes")
}

fn omni_identity(n: usize, trials: usize, seed: u64) -> Result<(Value, Status), String> {
    if n == 0 {
        return Err("n must be positive".to_string());
    }
    let mut rng = seeded_rng(seed);
    let mut witness = None;
    let mut matched = 0usize;
    for trial in 0..trials {
        let e1 = random_omni_element(&mut rng, n);
        let e2 = random_omni_element(&mut rng, n);
        let e3 = random_omni_element(&mut rng, n);
        let jac = jacobiator(&e1, &e2, &e3);
        if jac.matrix().is_zero() && jac.vector() == cartan_form(&e1, &e2, &e3) {
            matched += 1;
        } else if witness.is_none() {
            witness = Some(json!({
                "trial": trial,
                "e1": element_json(&e1),
                "e2": element_json(&e2),
                "e3": element_json(&e3),
                "jacobiator": element_json(&jac),
            }));
        }
    }
    let holds = matched == trials;
    let body = json!({
        "options": { "n": n, "trials": trials, "seed": seed },
        "identity_holds": holds,
        "matched": matched,
        "witness": witness,
    });
    Ok((body, if holds { Status::Pass } else { Status::Fail }))
}

fn classification_json(cls: &Classification, dim: usize) -> Value {
    let maximal = match &cls.maximality {
        None => Value::Null,
        Some(Maximality::Maximal) => json!("yes"),
        Some(Maximality::NotMaximal { .. }) => json!("no"),
        Some(Maximality::Undetermined { .. }) => json!("undetermined"),
    };
    let mut witnesses = serde_json::Map::new();
    if let Some(Maximality::NotMaximal { witness }) = &cls.maximality {
        witnesses.insert("isotropic_extension".to_string(), element_json(witness));
    }
    if let Some(Maximality::Undetermined { reason }) = &cls.maximality {
        witnesses.insert("undetermined_reason".to_string(), json!(reason));
    }
    if let Some(fail) = &cls.closure_failure {
        witnesses.insert(
            "closure_failure".to_string(),
            json!({
                "left": element_json(&fail.left),
                "right": element_json(&fail.right),
                "escape": element_json(&fail.escape),
            }),
        );
    }
    json!({
        "dim": dim,
        "isotropic": cls.isotropic,
        "maximal": maximal,
        "closed": cls.closed(),
        "d_structure": cls.is_d_structure,
        "restricted_jacobi": cls.restricted_jacobi.as_ref().map(|rj| json!({
            "holds": rj.holds,
            "triples_checked": rj.triples_checked,
        })),
        "witnesses": witnesses,
    })
}

fn classification_status(cls: &Classification) -> Status {
    if cls.is_d_structure {
        Status::Pass
    } else if cls.isotropic
        && cls.closed()
        && matches!(cls.maximality, Some(Maximality::Undetermined { .. }))
    {
        Status::Undetermined
    } else {
        Status::Fail
    }
}

fn lie_check(input: &Path) -> Result<(Value, Status), String> {
    let text = read_file(input)?;
    let parsed: StructureConstantsJson =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    let op = parsed.to_op().map_err(|e| format!("{}: {e}", input.display()))?;

    let skew_violation = op.skew_violation();
    if let Some((i, j, k)) = skew_violation {
        let body = json!({
            "options": { "input": input.display().to_string() },
            "n": op.n(),
            "is_skew": false,
            "skew_violation": { "i": i + 1, "j": j + 1, "k": k + 1 },
        });
        return Ok((body, Status::Fail));
    }

    let jacobi_witness = op.jacobi_witness();
    let is_lie = jacobi_witness.is_none();
    let graph = omnilie::liealg::graph_subspace(&op);
    let cls = classify(&graph);
    let body = json!({
        "options": { "input": input.display().to_string() },
        "n": op.n(),
        "is_skew": true,
        "is_lie": is_lie,
        "jacobi_witness": jacobi_witness.map(|(i, j, k, defect)| json!({
            "i": i + 1, "j": j + 1, "k": k + 1,
            "defect": omnilie::io::vec_strings(&defect),
        })),
        "graph": classification_json(&cls, graph.dim()),
    });
    let status = if is_lie { classification_status(&cls) } else { Status::Fail };
    Ok((body, status))
}

fn dstruct_classify(input: &Path) -> Result<(Value, Status), String> {
    let text = read_file(input)?;
    let parsed: OmniSubspaceJson =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    let f = parsed.to_subspace().map_err(|e| format!("{}: {e}", input.display()))?;
    let cls = classify(&f);
    let body = json!({
        "options": { "input": input.display().to_string() },
        "n": f.n(),
        "classification": classification_json(&cls, f.dim()),
    });
    let status = classification_status(&cls);
    Ok((body, status))
}

fn dstruct_search(n: usize, strategy: &str, seed: u64, budget: usize) -> Result<(Value, Status), String> {
    if n == 0 {
        return Err("n must be positive".to_string());
    }
    let strategy = SearchStrategy::parse(strategy)
        .ok_or_else(|| format!("unknown strategy {strategy:?} (expected exhaustive, graph, greedy, or all)"))?;
    if matches!(strategy, SearchStrategy::Exhaustive | SearchStrategy::All) && n > 4 {
        return Err("exhaustive search supports n <= 4".to_string());
    }
    let outcome = search_d_structures(n, strategy, seed, budget);
    let body = json!({
        "options": {
            "n": n,
            "strategy": strategy.name(),
            "seed": seed,
            "budget": budget,
        },
        "found": outcome.found.iter().map(subspace_json).collect::<Vec<_>>(),
        "found_count": outcome.found.len(),
        "undetermined": outcome.undetermined.iter().map(subspace_json).collect::<Vec<_>>(),
        "partial": outcome.partial,
    });
    let status = if outcome.undetermined.is_empty() { Status::Pass } else { Status::Undetermined };
    Ok((body, status))
}

fn axiom_report_json(report: &omnilie::calgebra::AxiomReport) -> Value {
    Value::Array(
        report
            .results
            .iter()
            .map(|r| {
                json!({
                    "axiom": r.axiom,
                    "pass": r.pass(),
                    "checked": r.checked,
                    "failure_count": r.failure_count,
                    "failures": r.failures.iter().map(|f| json!({
                        "check": f.check,
                        "witness": f.witness,
                        "residual": f.residual,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn calg_check(input: Option<&Path>, omni: Option<usize>) -> Result<(Value, Status), String> {
    let (source, instance): (String, CAlgebraInstance) = match (input, omni) {
        (Some(path), None) => {
            let text = read_file(path)?;
            let parsed: InstanceJson =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let inst = parsed.to_instance().map_err(|e| format!("{}: {e}", path.display()))?;
            (path.display().to_string(), inst)
        }
        (None, Some(n)) => {
            if n == 0 {
                return Err("--omni requires a positive dimension".to_string());
            }
            (format!("builtin omni instance n={n}"), build_omni_instance(n))
        }
        _ => unreachable!("clap enforces exactly one source"),
    };

    let validation = validate_instance(&instance);
    if !validation.ok() {
        let body = json!({
            "options": { "input": source },
            "dimA": instance.dim_a,
            "dimE": instance.dim_e,
            "valid": false,
            "validation_failures": validation.failures.iter().map(|f| json!({
                "check": f.check,
                "witness": f.witness,
                "residual": f.residual,
            })).collect::<Vec<_>>(),
        });
        return Ok((body, Status::Fail));
    }

    let axioms = check_axioms(&instance);
    let body = json!({
        "options": { "input": source },
        "dimA": instance.dim_a,
        "dimE": instance.dim_e,
        "valid": true,
        "axioms": axiom_report_json(&axioms),
        "all_axioms_pass": axioms.all_pass(),
    });
    let status = if axioms.all_pass() { Status::Pass } else { Status::Fail };
    Ok((body, status))
}

fn courant_dirac(input: &Path) -> Result<(Value, Status), String> {
    let text = read_file(input)?;
    let parsed: DiracCandidateJson =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    let candidate = parsed.to_candidate().map_err(|e| format!("{}: {e}", input.display()))?;
    let report = dirac_check(&candidate);
    let failures =
        |v: &[(usize, usize, String)]| -> Vec<Value> {
            v.iter().map(|(i, j, r)| json!({ "i": i, "j": j, "residual": r })).collect()
        };
    let body = json!({
        "options": { "input": input.display().to_string() },
        "kind": report.kind,
        "nvars": report.nvars,
        "generators": report.generator_count,
        "isotropy_failures": failures(&report.isotropy_failures),
        "closure_failures": failures(&report.closure_failures),
        "two_form_closed": report.two_form_closed,
        "passes": report.passes,
        "note": "isotropy plus generator closure decides the whole section space: \
                 the inner-product correction of the Leibniz rule vanishes on \
                 isotropic pairs, so closure is stable under function multiples",
    });
    Ok((body, if report.passes { Status::Pass } else { Status::Fail }))
}

fn courant_axioms(n: usize, degree_bound: u32, trials: usize, seed: u64) -> Result<(Value, Status), String> {
    if n == 0 {
        return Err("n must be positive".to_string());
    }
    let report = axioms_sample_check(n, degree_bound, trials, seed, BracketVariant::Full);
    let body = json!({
        "options": { "n": n, "degree_bound": degree_bound, "trials": trials, "seed": seed },
        "completed_trials": report.completed_trials,
        "all_pass": report.all_pass(),
        "failure": report.failure.as_ref().map(|f| json!({
            "axiom": f.axiom,
            "trial": f.trial,
            "detail": f.detail,
        })),
    });
    let status = if report.all_pass() { Status::Pass } else { Status::Fail };
    Ok((body, status))
}

fn linearize_cmd(n: usize) -> Result<(Value, Status), String> {
    if n == 0 {
        return Err("n must be positive".to_string());
    }
    let d = n * n + n;
    let basis: Vec<OmniElement> =
        (0..d).map(|t| OmniElement::from_flat(n, &vec_unit(d, t))).collect();
    let mut bracket_ok = true;
    let mut pairing_ok = true;
    let mut pairs = 0usize;
    for e1 in &basis {
        for e2 in &basis {
            let rep = linearize_roundtrip(e1, e2);
            bracket_ok &= rep.bracket_match;
            pairing_ok &= rep.pairing_match;
            pairs += 1;
        }
    }
    let body = json!({
        "options": { "n": n },
        "basis_pairs": pairs,
        "bracket_intertwined": bracket_ok,
        "pairing_intertwined": pairing_ok,
    });
    let ok = bracket_ok && pairing_ok;
    Ok((body, if ok { Status::Pass } else { Status::Fail }))
}

/// Flat `key.path: value` lines in sorted key order.
fn emit_human(v: &Value) -> String {
    fn walk(out: &mut String, prefix: &str, v: &Value) {
        use std::fmt::Write;
        match v {
            Value::Object(map) => {
                if map.is_empty() {
                    let _ = writeln!(out, "{prefix}: {{}}");
                }
                for (k, val) in map {
                    let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(out, &path, val);
                }
            }
            Value::Array(items) => {
                if items.is_empty() {
                    let _ = writeln!(out, "{prefix}: []");
                }
                for (idx, val) in items.iter().enumerate() {
                    walk(out, &format!("{prefix}[{idx}]"), val);
                }
            }
            scalar => {
                let _ = writeln!(out, "{prefix}: {scalar}");
            }
        }
    }
    let mut out = String::new();
    walk(&mut out, "", v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_fixed() {
        assert_eq!(Status::Pass.exit_code(), 0);
        assert_eq!(Status::Fail.exit_code(), 1);
        assert_eq!(Status::Undetermined.exit_code(), 3);
    }

    #[test]
    fn undetermined_maximality_maps_to_exit_3() {
        let cls = Classification {
            isotropic: true,
            maximality: Some(Maximality::Undetermined { reason: "sampled out".to_string() }),
            closure_failure: None,
            is_d_structure: false,
            restricted_jacobi: None,
        };
        assert_eq!(classification_status(&cls), Status::Undetermined);
        let rendered = classification_json(&cls, 3);
        assert_eq!(rendered["maximal"], "undetermined");
        assert_eq!(rendered["witnesses"]["undetermined_reason"], "sampled out");
    }
}
