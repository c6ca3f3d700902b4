//! `seqlab`: exact computation in the weighted sequence space, its
//! isometric siblings, and the shift operators living on them.

mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use output::{mode_label, print_csv, print_json, OutputFormat, Render};
use seqlab_core::norms::NormOptions;
use seqlab_core::scalar::{parse_rat, to_decimal_string};
use seqlab_core::schema::{any_from_str, any_to_json, seq_to_json, AnySeq};
use seqlab_core::*;
use suites::SuiteName;

#[derive(Parser)]
#[command(
    name = "seqlab",
    about = "Exact sequence-space computations: norms, isometries, weighted backward shifts, conjugated operators, orbits, and spectral witnesses",
    version
)]
struct Cli {
    /// Decimal places for optional display fields (exact values are always emitted)
    #[arg(long, global = true)]
    decimals: Option<usize>,

    /// Output format where tabular output exists (json or csv)
    #[arg(long, global = true, default_value = "json")]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Norm of a sequence in one of the three spaces
    Norm {
        /// Space: X, bv0, or l1
        #[arg(long)]
        space: String,
        /// Path to a sequence JSON file
        #[arg(long)]
        seq: PathBuf,
        /// Truncation index for bracketed lazy norms
        #[arg(long, default_value_t = 256)]
        trunc: u64,
    },
    /// Membership verdict for a lazy family
    Member {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        space: String,
    },
    /// Smallest index at which a non-member exponential's norm series
    /// exceeds a threshold
    Diverge {
        /// lambda as "p/q" or "re,im" (also accepts "i", "-i")
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        threshold: String,
    },
    /// Apply one of the isomorphisms J1, J2, J or their inverses
    Iso {
        /// J1 | J2 | J | J1inv | J2inv | Jinv
        #[arg(long)]
        map: String,
        #[arg(long)]
        seq: PathBuf,
        /// Check the isometry identity instead of printing the image
        #[arg(long = "verify-isometry")]
        verify_isometry: bool,
    },
    /// Apply a weighted backward shift power (or its right inverse)
    Shift {
        /// bounded | unbounded
        #[arg(long, default_value = "bounded")]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seq: Option<PathBuf>,
        /// Apply the right inverse B_w^n instead of A_w^n
        #[arg(long = "right-inverse")]
        right_inverse: bool,
        /// Check ||x^(n)|| = 1 and ||A_w^n x^(n)|| = |w|^n (n+1) instead
        #[arg(long = "witness-norm")]
        witness_norm: bool,
    },
    /// Apply a conjugated operator in closed form
    Conjugate {
        /// x-bounded | x-unbounded | l1-bounded | l1-unbounded
        #[arg(long)]
        which: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seq: PathBuf,
        /// Also check the closed form against the composition through J
        #[arg(long)]
        verify: bool,
    },
    /// Build an orbit vector steering toward the target sequences
    Orbit {
        /// Target sequence files, visited in order
        #[arg(long, num_args = 1.., required = true)]
        targets: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
        #[arg(long, default_value = "bounded")]
        kind: String,
    },
    /// Build a truncated periodic point with a certified residual
    Periodic {
        #[arg(long)]
        base: PathBuf,
        #[arg(long = "N")]
        period: u64,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        blocks: u64,
        #[arg(long, default_value = "bounded")]
        kind: String,
    },
    /// Rigidity obstruction: partial sums ruling out a non-constant
    /// periodic point at unit weights
    Obstruct {
        #[arg(long, allow_hyphen_values = true)]
        xj: String,
        #[arg(long, allow_hyphen_values = true)]
        xj1: String,
        #[arg(long)]
        j: u64,
        #[arg(long = "N")]
        period: u64,
        #[arg(long, allow_hyphen_values = true)]
        threshold: String,
    },
    /// Eigenvalue classification and eigenvector witness
    Eig {
        /// bounded | unbounded
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Verify the defining recurrence exactly up to this index
        #[arg(long, default_value_t = 200)]
        check: u64,
    },
    /// Certified brackets for (n+1)^(1/n) along a doubling ladder
    Radius {
        #[arg(long = "n-max")]
        n_max: u64,
        /// Bracket width exponent: enclosures are 2^-width-bits wide
        #[arg(long = "width-bits", default_value_t = 16)]
        width_bits: u32,
        /// Alias for --output on this subcommand
        #[arg(long)]
        emit: Option<OutputFormat>,
    },
    /// Run an identity suite and exit nonzero on any failure
    Suite {
        /// isometry | norms | conjugacy | dynamics | spectral | all
        #[arg(long)]
        name: SuiteName,
        /// RNG seed (the SEQLAB_SEED environment variable overrides this)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let render = Render {
        decimals: cli.decimals,
    };
    match run(cli.command, render, cli.output) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_seq(path: &PathBuf) -> Result<AnySeq> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(any_from_str(&text)?)
}

fn load_finite(path: &PathBuf) -> Result<FiniteSeq> {
    match load_seq(path)? {
        AnySeq::Finite(x) => Ok(x),
        AnySeq::Lazy(l) => bail!(
            "{} holds the lazy family {}; this command needs a finite sequence",
            path.display(),
            l.describe()
        ),
    }
}

fn parse_scalar(s: &str) -> Result<Scalar> {
    s.parse::<Scalar>()
        .map_err(|e| anyhow!("bad scalar {s:?}: {e}"))
}

fn run(command: Command, render: Render, output: OutputFormat) -> Result<ExitCode> {
    match command {
        Command::Norm { space, seq, trunc } => {
            let space = Space::parse(&space)?;
            let opts = NormOptions {
                truncation: trunc,
                ..NormOptions::default()
            };
            let (desc, norm) = match load_seq(&seq)? {
                AnySeq::Finite(x) => ("finite".to_string(), norms::norm_finite(&x, space)),
                AnySeq::Lazy(l) => (l.describe(), norms::norm_lazy(&l, space, &opts)?),
            };
            print_json(&json!({
                "command": "norm",
                "sequence": desc,
                "space": space.to_string(),
                "norm": render.bounds(&norm.value),
                "truncation": if norm.value.is_exact() { Value::Null } else { json!(trunc) },
            }));
        }
        Command::Member { seq, space } => {
            let space = Space::parse(&space)?;
            let family = match load_seq(&seq)? {
                AnySeq::Lazy(l) => l,
                AnySeq::Finite(_) => bail!("finite sequences lie in every space here"),
            };
            let verdict = membership(&family, space);
            print_json(&json!({
                "command": "member",
                "sequence": family.describe(),
                "space": space.to_string(),
                "verdict": match verdict.verdict {
                    Verdict::Member => "member",
                    Verdict::NotMember => "not-member",
                    Verdict::Undecided => "undecided",
                },
                "witness": verdict.witness,
            }));
        }
        Command::Diverge { lambda, threshold } => {
            let lambda = parse_scalar(&lambda)?;
            let threshold = parse_rat(&threshold)?;
            let witness =
                norms::divergence_witness(&LazySeq::exponential(lambda.clone()), &threshold)?;
            print_json(&json!({
                "command": "diverge",
                "lambda": lambda.to_string(),
                "threshold": threshold.to_string(),
                "index": witness.index,
                "partial_sum": render.bounds(&witness.partial_sum),
            }));
        }
        Command::Iso {
            map,
            seq,
            verify_isometry: verify,
        } => {
            let map = IsoMap::parse(&map)?;
            let x = load_finite(&seq)?;
            if verify {
                let cert = verify_isometry(map, &x);
                let passed = cert.passed;
                print_json(&json!({
                    "command": "iso",
                    "map": map.to_string(),
                    "certificate": render.certificate(&cert),
                }));
                if !passed {
                    return Ok(ExitCode::FAILURE);
                }
            } else {
                print_json(&json!({
                    "command": "iso",
                    "map": map.to_string(),
                    "result": seq_to_json(&apply_iso(map, &x)),
                }));
            }
        }
        Command::Shift {
            kind,
            w,
            n,
            seq,
            right_inverse,
            witness_norm,
        } => {
            let kind = ShiftKind::parse(&kind)?;
            let w = parse_scalar(&w)?;
            if witness_norm {
                let cert = norm_identity_witness(&w, n, &[]);
                let passed = cert.passed;
                print_json(&json!({
                    "command": "shift",
                    "certificate": render.certificate(&cert),
                }));
                return Ok(if passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                });
            }
            let path = seq.ok_or_else(|| anyhow!("--seq is required unless --witness-norm"))?;
            let x = load_finite(&path)?;
            let result = if right_inverse {
                apply_right_inverse(kind, &w, n, &x)?
            } else {
                ShiftOp::new(kind, w.clone(), n)?.apply(&x)?
            };
            print_json(&json!({
                "command": "shift",
                "kind": format!("{kind:?}").to_lowercase(),
                "w": w.to_string(),
                "n": n,
                "operator": if right_inverse { "right-inverse" } else { "shift" },
                "result": seq_to_json(&result),
            }));
        }
        Command::Conjugate {
            which,
            w,
            n,
            seq,
            verify,
        } => {
            let which = ConjugateWhich::parse(&which)?;
            let w = parse_scalar(&w)?;
            let z = load_finite(&seq)?;
            let op = ConjugateOp::new(which, w, n)?;
            let result = apply_conjugate(&op, &z)?;
            let mut body = json!({
                "command": "conjugate",
                "which": which.name(),
                "w": op.w.to_string(),
                "n": n,
                "result": seq_to_json(&result),
            });
            if verify {
                let cert = verify_conjugacy(&op, &z)?;
                let passed = cert.passed;
                body["certificate"] = render.certificate(&cert);
                print_json(&body);
                if !passed {
                    return Ok(ExitCode::FAILURE);
                }
            } else {
                print_json(&body);
            }
        }
        Command::Orbit {
            targets,
            w,
            epsilon,
            kind,
        } => {
            let kind = ShiftKind::parse(&kind)?;
            let w = parse_scalar(&w)?;
            let epsilon = parse_rat(&epsilon)?;
            let targets = targets
                .iter()
                .map(load_finite)
                .collect::<Result<Vec<_>>>()?;
            let plan = plan_gaps(&targets, kind, &w, &epsilon)?;
            let orbit = build_orbit_vector(&plan, kind, &w)?;
            print_json(&json!({
                "command": "orbit",
                "epsilon": epsilon.to_string(),
                "gaps": plan.gaps,
                "per_target_error_bounds": orbit
                    .bounds
                    .iter()
                    .map(|b| Value::String(b.to_string()))
                    .collect::<Vec<_>>(),
                "vector": seq_to_json(&orbit.vector),
            }));
        }
        Command::Periodic {
            base,
            period,
            w,
            blocks,
            kind,
        } => {
            let kind = ShiftKind::parse(&kind)?;
            let w = parse_scalar(&w)?;
            let base = load_finite(&base)?;
            let point = build_periodic_point(&base, period, &w, kind, blocks)?;
            print_json(&json!({
                "command": "periodic",
                "period": period,
                "blocks": blocks,
                "residual": render.bounds(&point.residual),
                "tail_norm_bound": point.tail_norm_bound.to_string(),
                "value": seq_to_json(&point.value),
            }));
        }
        Command::Obstruct {
            xj,
            xj1,
            j,
            period,
            threshold,
        } => {
            let threshold = parse_rat(&threshold)?;
            let x =
                FiniteSeq::from_pairs([(j, parse_scalar(&xj)?), (j + 1, parse_scalar(&xj1)?)]);
            let witness = periodicity_obstruction(&x, j, period, &threshold)?;
            print_json(&json!({
                "command": "obstruct",
                "j": j,
                "period": period,
                "threshold": threshold.to_string(),
                "index": witness.index,
                "partial_sum": render.bounds(&witness.partial_sum),
            }));
        }
        Command::Eig {
            kind,
            lambda,
            w,
            check,
        } => {
            let kind = ShiftKind::parse(&kind)?;
            let lambda = parse_scalar(&lambda)?;
            let w = parse_scalar(&w)?;
            let witness = match kind {
                ShiftKind::Bounded => eigvec_bounded(&lambda, &w),
                ShiftKind::Unbounded => eigvec_unbounded(&lambda, &w)?,
            };
            let verdict = match witness.verdict {
                SpectralVerdictKind::Eigenvalue => "eigenvalue",
                SpectralVerdictKind::NotEigenvalue => "not-eigenvalue",
                SpectralVerdictKind::BoundaryExcluded => "boundary-excluded",
            };
            let mut body = json!({
                "command": "eig",
                "operator": witness.operator,
                "lambda": lambda.to_string(),
                "verdict": verdict,
            });
            match &witness.evidence {
                SpectralEvidence::Eigenvector(v) => {
                    body["eigenvector"] = match v {
                        EigvecSeq::Finite(x) => seq_to_json(x),
                        EigvecSeq::Lazy(l) => any_to_json(&AnySeq::Lazy(l.clone()))?,
                    };
                    let cert = check_eigen_recurrence(kind, &lambda, &w, v, check);
                    let passed = cert.passed;
                    body["recurrence"] = render.certificate(&cert);
                    print_json(&body);
                    if !passed {
                        return Ok(ExitCode::FAILURE);
                    }
                }
                SpectralEvidence::Divergence(d) => {
                    body["divergence_index"] = json!(d.index);
                    body["partial_sum"] = render.bounds(&d.partial_sum);
                    body["threshold"] = Value::String(d.threshold.to_string());
                    print_json(&body);
                }
                SpectralEvidence::Note(note) => {
                    body["note"] = Value::String(note.clone());
                    print_json(&body);
                }
            }
        }
        Command::Radius {
            n_max,
            width_bits,
            emit,
        } => {
            let rows = spectral_radius_probe(n_max, width_bits);
            let fmt = emit.unwrap_or(output);
            match fmt {
                OutputFormat::Json => {
                    print_json(&json!({
                        "command": "radius",
                        "identity": "(n+1)^(1/n)",
                        "width_bits": width_bits,
                        "rows": rows
                            .iter()
                            .map(|(n, b)| json!({ "n": n, "bracket": render.bounds(b) }))
                            .collect::<Vec<_>>(),
                    }));
                }
                OutputFormat::Csv => {
                    let decimals = render.decimals.unwrap_or(12);
                    let table: Vec<Vec<String>> = rows
                        .iter()
                        .map(|(n, b)| {
                            vec![
                                "(n+1)^(1/n)".to_string(),
                                n.to_string(),
                                b.lo().to_string(),
                                b.hi().to_string(),
                                to_decimal_string(b.lo(), decimals),
                                to_decimal_string(b.hi(), decimals),
                            ]
                        })
                        .collect();
                    print_csv(
                        &[
                            "identity",
                            "n",
                            "lower",
                            "upper",
                            "lower_decimal",
                            "upper_decimal",
                        ],
                        &table,
                    );
                }
            }
        }
        Command::Suite { name, seed, trials } => {
            let seed = match std::env::var("SEQLAB_SEED") {
                Ok(v) => v
                    .parse::<u64>()
                    .map_err(|_| anyhow!("SEQLAB_SEED must be an unsigned integer"))?,
                Err(_) => seed,
            };
            let report = suites::run_suite(name, seed, trials);
            let failed = report.failed();
            match output {
                OutputFormat::Json => {
                    print_json(&json!({
                        "command": "suite",
                        "suite": report.suite,
                        "seed": report.seed,
                        "trials": report.trials,
                        "identities": report
                            .rows
                            .iter()
                            .map(|r| {
                                json!({
                                    "identity": r.identity,
                                    "mode": mode_label(r.mode),
                                    "checks": r.trials,
                                    "passed": r.passed,
                                    "max_residual": render.bounds(&r.max_residual),
                                })
                            })
                            .collect::<Vec<_>>(),
                        "passed": report.rows.len() - failed,
                        "failed": failed,
                    }));
                }
                OutputFormat::Csv => {
                    let table: Vec<Vec<String>> = report
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.identity.clone(),
                                mode_label(r.mode),
                                r.trials.to_string(),
                                r.passed.to_string(),
                                r.max_residual.to_string(),
                            ]
                        })
                        .collect();
                    print_csv(
                        &["identity", "mode", "checks", "passed", "max_residual"],
                        &table,
                    );
                }
            }
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
