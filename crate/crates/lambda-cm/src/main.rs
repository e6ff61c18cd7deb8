//! Command-line interface: JSON in, JSON out.
//!
//! Exit codes: 0 on success, 1 when a verification-style subcommand finds a
//! failure, 2 on usage errors (including malformed JSON).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use lambda_cm::bijection::{gamma_from_multicomplex, phi, psi, verify_bijection_theorem};
use lambda_cm::complex::{build_lambda, Facet};
use lambda_cm::ground::{Instance, Monomial};
use lambda_cm::homology::is_cm_facet_list;
use lambda_cm::lsop::{check_lsop_resampling, GenericMatrixSpec};
use lambda_cm::multicomplex::{
    compress, is_0_compressed, is_multicomplex, MonomialPoset, Multicomplex,
};
use lambda_cm::shelling::{h_from_shelling, lex_shelling, verify_shelling};
use lambda_cm::verify::{verify_instance, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "lambda-cm",
    version,
    about = "Block-capacity complexes, shellings, multicomplex compression, and exact CM checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the facets of Lambda for an instance.
    Lambda {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Print the f-vector of Lambda.
    Fvector {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Print the h-vector of Lambda.
    Hvector {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Print the revlex shelling: ordered facets, restrictions, h-vector.
    Shelling {
        #[arg(long)]
        instance: PathBuf,
        /// Also check the order against the shelling definition.
        #[arg(long)]
        verify: bool,
    },
    /// (0)-compress a monomial set; with --check, test compression instead.
    Compress {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        monomials: PathBuf,
        #[arg(long)]
        check: bool,
    },
    /// Map a facet (inline JSON, e.g. '[[1,1],[1,4],[2,2],[3,2]]') to its monomial.
    Phi {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        facet: String,
    },
    /// Map a monomial (inline JSON, e.g. '{"exp":[[1],[0,1],[0],[1,0]]}') to its facet.
    Psi {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        monomial: String,
    },
    /// Print the facet preimage of a (0)-compressed monomial set.
    Gamma {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        monomials: PathBuf,
    },
    /// Cohen-Macaulay oracle on a facet set.
    CheckCm {
        #[arg(long)]
        facets: PathBuf,
    },
    /// Facet-minor l.s.o.p. check across seeds.
    CheckLsop {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        /// Numerator/denominator range for sampled entries (accepts 1e6).
        #[arg(long, default_value = "1e6")]
        range: String,
    },
    /// Exhaustive divisor-replacement check on every facet.
    VerifyBijection {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
    /// End-to-end equivalence report for one instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 60)]
        exhaustive_limit: usize,
        #[arg(long, default_value_t = 14)]
        extensional_limit: usize,
    },
}

#[derive(Serialize, Deserialize)]
struct FacetsFile {
    facets: Vec<Facet>,
}

#[derive(Serialize, Deserialize)]
struct MonomialsFile {
    monomials: Vec<Monomial>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON in {}: {e}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance, String> {
    read_json(path)
}

fn load_monomial_set(path: &Path, instance: &Instance) -> Result<Multicomplex, String> {
    let file: MonomialsFile = read_json(path)?;
    let shape = instance.var_shape();
    for m in &file.monomials {
        if m.shape() != shape {
            return Err(format!(
                "monomial {m} has shape {:?}, expected {:?}",
                m.shape(),
                shape
            ));
        }
    }
    Ok(Multicomplex::new(file.monomials))
}

fn seed_from_env() -> u64 {
    std::env::var("SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn parse_range(text: &str) -> Result<u64, String> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v.max(1));
    }
    let v: f64 = text.parse().map_err(|_| format!("invalid range: {text}"))?;
    if !v.is_finite() || !(1.0..=1e18).contains(&v) {
        return Err(format!("range out of bounds: {text}"));
    }
    Ok(v as u64)
}

fn emit<T: Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn run(command: Command) -> Result<i32, String> {
    match command {
        Command::Lambda { instance } => {
            let inst = load_instance(&instance)?;
            let lambda = build_lambda(&inst);
            emit(&json!({ "facets": lambda.facets().collect::<Vec<_>>() }))?;
            Ok(0)
        }
        Command::Fvector { instance } => {
            let inst = load_instance(&instance)?;
            emit(&build_lambda(&inst).f_vector())?;
            Ok(0)
        }
        Command::Hvector { instance } => {
            let inst = load_instance(&instance)?;
            emit(&build_lambda(&inst).h_vector())?;
            Ok(0)
        }
        Command::Shelling { instance, verify } => {
            let inst = load_instance(&instance)?;
            let lambda = build_lambda(&inst);
            let record = lex_shelling(&lambda);
            let h = h_from_shelling(&record, inst.d());
            let verified = if verify {
                match verify_shelling(&record) {
                    Ok(()) => Some(true),
                    Err(violation) => {
                        emit(&json!({ "verified": false, "violation": violation.to_string() }))?;
                        return Ok(1);
                    }
                }
            } else {
                None
            };
            emit(&json!({
                "facets": record.order(),
                "restrictions": record.restrictions(),
                "h": h,
                "verified": verified,
            }))?;
            Ok(0)
        }
        Command::Compress {
            instance,
            monomials,
            check,
        } => {
            let inst = load_instance(&instance)?;
            let poset = MonomialPoset::new(&inst);
            let m = load_monomial_set(&monomials, &inst)?;
            if let Some(outside) = m.monomials().find(|mono| !poset.contains(mono)) {
                return Err(format!("monomial {outside} lies outside S"));
            }
            if !is_multicomplex(m.as_set()) {
                return Err("input set is not closed under divisibility".into());
            }
            if check {
                let ok = is_0_compressed(&poset, &m);
                emit(&json!({ "is_0_compressed": ok }))?;
                return Ok(if ok { 0 } else { 1 });
            }
            let compressed = compress(&poset, &m).map_err(|e| e.to_string())?;
            emit(&MonomialsFile {
                monomials: compressed.monomials().cloned().collect(),
            })?;
            Ok(0)
        }
        Command::Phi { instance, facet } => {
            let inst = load_instance(&instance)?;
            let facet: Facet =
                serde_json::from_str(&facet).map_err(|e| format!("malformed facet: {e}"))?;
            let mu = phi(&inst, &facet).map_err(|e| e.to_string())?;
            emit(&mu)?;
            Ok(0)
        }
        Command::Psi { instance, monomial } => {
            let inst = load_instance(&instance)?;
            let mu: Monomial =
                serde_json::from_str(&monomial).map_err(|e| format!("malformed monomial: {e}"))?;
            let facet = psi(&inst, &mu).map_err(|e| e.to_string())?;
            emit(&facet)?;
            Ok(0)
        }
        Command::Gamma {
            instance,
            monomials,
        } => {
            let inst = load_instance(&instance)?;
            let m = load_monomial_set(&monomials, &inst)?;
            let gamma = gamma_from_multicomplex(&inst, &m).map_err(|e| e.to_string())?;
            emit(&json!({ "facets": gamma.facets().collect::<Vec<_>>() }))?;
            Ok(0)
        }
        Command::CheckCm { facets } => {
            let file: FacetsFile = read_json(&facets)?;
            match is_cm_facet_list(&file.facets) {
                Ok(()) => {
                    emit(&json!({ "cm": true }))?;
                    Ok(0)
                }
                Err(failure) => {
                    emit(&json!({ "cm": false, "witness": failure }))?;
                    Ok(1)
                }
            }
        }
        Command::CheckLsop {
            instance,
            seeds,
            range,
        } => {
            let inst = load_instance(&instance)?;
            let range = parse_range(&range)?;
            let base = seed_from_env();
            let lambda = build_lambda(&inst);
            let mut results = Vec::new();
            let mut all_passed = true;
            for offset in 0..seeds {
                let spec = GenericMatrixSpec::new(inst.clone(), base + offset).with_range(range);
                let report = check_lsop_resampling(&lambda, &spec, 3).map_err(|e| e.to_string())?;
                all_passed &= report.passed();
                results.push(json!({
                    "seed": base + offset,
                    "passed": report.passed(),
                    "facets_checked": report.facets_checked,
                    "failures": report.failures,
                }));
            }
            emit(&json!({
                "instance": inst,
                "range": range,
                "results": results,
                "passed": all_passed,
            }))?;
            Ok(if all_passed { 0 } else { 1 })
        }
        Command::VerifyBijection { instance, budget } => {
            let inst = load_instance(&instance)?;
            let lambda = build_lambda(&inst);
            let report = verify_bijection_theorem(&lambda, budget).map_err(|e| e.to_string())?;
            let passed = report.passed();
            emit(&report)?;
            Ok(if passed { 0 } else { 1 })
        }
        Command::Verify {
            instance,
            samples,
            exhaustive_limit,
            extensional_limit,
        } => {
            let inst = load_instance(&instance)?;
            let cfg = VerifyConfig {
                seed: seed_from_env(),
                samples,
                exhaustive_limit,
                extensional_facet_limit: extensional_limit,
                ..VerifyConfig::default()
            };
            let report = verify_instance(&inst, &cfg);
            let passed = report.passed();
            emit(&report)?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}
