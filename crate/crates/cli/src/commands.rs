use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::Args;
use fibtqc::anyon::FusionCategory;
use fibtqc::benchmark::{
    decay_csv, error_budget, qpt, unitarity, average_gate_fidelity, GateSet, SequenceSettings, Target,
};
use fibtqc::braid_space::{named_matrices, BraidSpace, Space};
use fibtqc::compiler::{distance_up_to_phase, evaluate, hadamard_word, search_word, SearchBudget, DELTA_H};
use fibtqc::linalg::{c, cis, from_rows, matrix_to_csv, CMatrix, MatrixJson, ONE, ZERO};
use fibtqc::noise::NoiseModel;
use fibtqc::robustness::{extract_m, extract_m_noisy, verify_global_phase, Crossings, NoisyScenario};
use serde::{Deserialize, Serialize};

use crate::{verify as suite, Failure, Format, Protocol, SpaceArg, DEFAULT_SEED};

const DEFAULT_M_GRID: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];
const DEFAULT_K: usize = 30;
const EXACT_TOL: f64 = 1e-10;
const NOISY_TOL: f64 = 0.1;

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn verify(list: bool, fusion_data: Option<PathBuf>, tolerance: Option<f64>, format: Format) -> Result<(), Failure> {
    if list {
        for (name, _, _) in suite::CHECKS {
            println!("{name}");
        }
        return Ok(());
    }
    let cat = match fusion_data {
        Some(path) => FusionCategory::from_json(&read(&path)?).with_context(|| format!("parsing {}", path.display()))?,
        None => FusionCategory::fibonacci(),
    };
    let outcomes = suite::run(&cat, tolerance);
    match format {
        Format::Json => print!("{}", to_json(&outcomes)?),
        Format::Csv => {
            println!("check,residual,tolerance,passed");
            for o in &outcomes {
                println!("{},{:e},{:e},{}", o.name, o.residual, o.tolerance, o.passed);
            }
        }
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(failed.join(", ")))
    }
}

fn named_gate(name: &str) -> anyhow::Result<CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(match name.to_ascii_lowercase().as_str() {
        "identity" | "id" | "i" => from_rows(&[&[ONE, ZERO], &[ZERO, ONE]]),
        "hadamard" | "h" => from_rows(&[&[c(s, 0.0), c(s, 0.0)], &[c(s, 0.0), c(-s, 0.0)]]),
        "x" => from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        "y" => from_rows(&[&[ZERO, c(0.0, -1.0)], &[c(0.0, 1.0), ZERO]]),
        "z" => from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
        "s" => from_rows(&[&[ONE, ZERO], &[ZERO, c(0.0, 1.0)]]),
        "t" => from_rows(&[&[ONE, ZERO], &[ZERO, cis(std::f64::consts::FRAC_PI_4)]]),
        other => bail!("unknown gate `{other}`; expected identity, hadamard, x, y, z, s or t"),
    })
}

#[derive(Serialize)]
struct CompileReport {
    word: String,
    letters: usize,
    crossings: u32,
    distance: f64,
    exhausted: bool,
    searched_letters: usize,
    evaluations: u64,
}

#[derive(Serialize)]
struct HadamardReport {
    word: String,
    letters: usize,
    crossings: u32,
    canonical: String,
    canonical_letters: usize,
    delta_h: f64,
    regression_constant: f64,
}

pub fn compile(hadamard: bool, gate: Option<String>, matrix: Option<PathBuf>, max_letters: usize, budget: u64) -> Result<(), Failure> {
    let braids = BraidSpace::fibonacci();
    if hadamard {
        let word = hadamard_word();
        let delta_h = distance_up_to_phase(&evaluate(&word, Space::Logical, &braids), &fibtqc::reference::hadamard())?;
        let canonical = word.canonicalize();
        print!(
            "{}",
            to_json(&HadamardReport {
                word: word.to_string(),
                letters: word.len(),
                crossings: word.crossings(),
                canonical: canonical.to_string(),
                canonical_letters: canonical.len(),
                delta_h,
                regression_constant: DELTA_H,
            })?
        );
        return Ok(());
    }
    let target = match (gate, matrix) {
        (Some(name), None) => named_gate(&name)?,
        (None, Some(path)) => {
            let json: MatrixJson = serde_json::from_str(&read(&path)?).with_context(|| format!("parsing {}", path.display()))?;
            CMatrix::try_from(&json)?
        }
        _ => return Err(anyhow::anyhow!("give one of --hadamard, --gate or --matrix").into()),
    };
    let result = search_word(&target, max_letters, SearchBudget { max_evaluations: budget }, &braids)
        .context("target rejected")?;
    print!(
        "{}",
        to_json(&CompileReport {
            word: result.word.to_string(),
            letters: result.word.len(),
            crossings: result.word.crossings(),
            distance: result.distance,
            exhausted: result.exhausted,
            searched_letters: result.searched_letters,
            evaluations: result.evaluations,
        })?
    );
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetArg {
    /// The 15-step Hadamard braid word.
    HadamardWord,
    None,
}

#[derive(Args, Debug)]
pub struct BenchmarkArgs {
    #[arg(value_enum)]
    protocol: Protocol,
    #[arg(long, value_enum)]
    space: Option<SpaceArg>,
    /// Noise model JSON.
    #[arg(long)]
    noise: Option<PathBuf>,
    /// Comma-separated sequence lengths.
    #[arg(long, value_delimiter = ',')]
    m_grid: Option<Vec<usize>>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    target: Option<TargetArg>,
    /// JSON config with any of `space`, `m_grid`, `k`, `seed`, `target`,
    /// `noise`; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "fibtqc-out")]
    out: PathBuf,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BenchmarkConfig {
    space: Option<SpaceArg>,
    m_grid: Option<Vec<usize>>,
    k: Option<usize>,
    seed: Option<u64>,
    target: Option<TargetArg>,
    noise: Option<NoiseModel>,
}

struct Resolved {
    space: Space,
    settings: SequenceSettings,
    target: TargetArg,
    noise: NoiseModel,
}

fn resolve(args: &BenchmarkArgs) -> anyhow::Result<Resolved> {
    let config: BenchmarkConfig = match &args.config {
        Some(path) => serde_json::from_str(&read(path)?).with_context(|| format!("parsing config {}", path.display()))?,
        None => BenchmarkConfig::default(),
    };
    let noise = match &args.noise {
        Some(path) => NoiseModel::from_json(&read(path)?).with_context(|| format!("parsing noise model {}", path.display()))?,
        None => config.noise.unwrap_or_default(),
    };
    noise.validate()?;
    let space = match args.space.or(config.space).unwrap_or(SpaceArg::Ls) {
        SpaceArg::Ls => Space::Logical,
        SpaceArg::Ps => Space::Physical,
    };
    let settings = SequenceSettings {
        m_values: args.m_grid.clone().or(config.m_grid).unwrap_or_else(|| DEFAULT_M_GRID.to_vec()),
        k: args.k.or(config.k).unwrap_or(DEFAULT_K),
        seed: args.seed.or(config.seed).unwrap_or(DEFAULT_SEED),
    };
    settings.validate()?;
    Ok(Resolved { space, settings, target: args.target.or(config.target).unwrap_or(TargetArg::HadamardWord), noise })
}

#[derive(Serialize)]
struct QptReport {
    space: Space,
    target: String,
    average_gate_fidelity: f64,
    unitarity: f64,
    ptm: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct RbReport<'a> {
    space: Space,
    settings: &'a SequenceSettings,
    reference_fidelity: f64,
    clifford_fidelity_oracle: f64,
    interleaved_fidelity: Option<f64>,
    target_fidelity_oracle: Option<f64>,
    rate_exceeds_reference: Option<bool>,
}

pub fn benchmark(args: BenchmarkArgs) -> Result<(), Failure> {
    let run = resolve(&args)?;
    let braids = BraidSpace::fibonacci();
    let iso = braids.encoding().iso().clone();
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let file = |name: &str| args.out.join(name);
    let target = match run.target {
        TargetArg::HadamardWord => Some(Target::braid_word(&hadamard_word(), &run.noise, &braids, run.space)?),
        TargetArg::None => None,
    };

    match args.protocol {
        Protocol::Qpt => {
            let target = target.context("qpt needs a target gate")?;
            let full = qpt(target.channel())?;
            let ptm = match run.space {
                Space::Logical => full.project(&iso)?,
                _ => full,
            };
            let fidelity = target.true_fidelity(run.space, &iso)?;
            let report = QptReport {
                space: run.space,
                target: hadamard_word().to_string(),
                average_gate_fidelity: fidelity,
                unitarity: unitarity(&ptm),
                ptm: ptm.rows(),
            };
            emit(Some(&file("ptm.csv")), &ptm.to_csv())?;
            emit(Some(&file("qpt.json")), &to_json(&report)?)?;
            println!("qpt: average gate fidelity {fidelity:.6}, unitarity {:.6}", report.unitarity);
            if run.space == Space::Logical {
                // cross-check the projected map against the direct fidelity
                let direct = average_gate_fidelity(&ptm, target.ideal())?;
                if (direct - fidelity).abs() > 1e-10 {
                    return Err(Failure::Check(format!("projected fidelity {direct} disagrees with {fidelity}")));
                }
            }
        }
        Protocol::Rb | Protocol::Pb => {
            let mut set = GateSet::new(run.space, &run.noise, braids.encoding())?;
            if let Some(t) = &target {
                set = set.with_target(t)?;
            }
            let rb_ref = set.rb_reference(&run.settings)?;
            let rb_int = target.as_ref().map(|_| set.rb_interleaved(&run.settings, &rb_ref)).transpose()?;
            let oracle = target.as_ref().map(|t| t.true_fidelity(run.space, &iso)).transpose()?;
            if args.protocol == Protocol::Rb {
                emit(Some(&file("rb_reference.csv")), &decay_csv(&rb_ref.fit.points))?;
                emit(Some(&file("rb_reference.json")), &to_json(&rb_ref.fit)?)?;
                if let Some(int) = &rb_int {
                    emit(Some(&file("rb_interleaved.csv")), &decay_csv(&int.fit.points))?;
                    emit(Some(&file("rb_interleaved.json")), &to_json(&int.fit)?)?;
                }
                let report = RbReport {
                    space: run.space,
                    settings: &run.settings,
                    reference_fidelity: rb_ref.fidelity,
                    clifford_fidelity_oracle: set.clifford_fidelity()?,
                    interleaved_fidelity: rb_int.as_ref().map(|r| r.fidelity),
                    target_fidelity_oracle: oracle,
                    rate_exceeds_reference: rb_int.as_ref().map(|r| r.rate_exceeds_reference),
                };
                emit(Some(&file("rb_report.json")), &to_json(&report)?)?;
                println!("rb: reference rate {:.6}, F_ref {:.6}", rb_ref.fit.rate, rb_ref.fidelity);
                if let (Some(int), Some(truth)) = (&rb_int, oracle) {
                    println!("rb: interleaved F_RB {:.6}, channel oracle {truth:.6}", int.fidelity);
                }
            } else {
                let pb_ref = set.pb_run(&run.settings, false)?;
                emit(Some(&file("pb_reference.csv")), &decay_csv(&pb_ref.fit.points))?;
                emit(Some(&file("pb_reference.json")), &to_json(&pb_ref.fit)?)?;
                println!("pb: reference unitarity {:.6}", pb_ref.fit.rate);
                if let Some(rb_int) = &rb_int {
                    let pb_int = set.pb_run(&run.settings, true)?;
                    emit(Some(&file("pb_interleaved.csv")), &decay_csv(&pb_int.fit.points))?;
                    emit(Some(&file("pb_interleaved.json")), &to_json(&pb_int.fit)?)?;
                    let budget = error_budget(run.space, rb_int, &pb_ref, &pb_int);
                    emit(Some(&file("error_budget.json")), &to_json(&budget)?)?;
                    println!(
                        "pb: infidelity {:.6} = incoherent {:.6} + coherent {:.6}",
                        budget.total_infidelity, budget.incoherent, budget.coherent
                    );
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RobustnessReport {
    exact: fibtqc::robustness::ScenarioResult,
    phase_sweep: fibtqc::robustness::PhaseSweep,
    noisy: Option<fibtqc::robustness::NoisyResult>,
}

pub fn robustness(
    q: u32,
    noisy: bool,
    noise: Option<PathBuf>,
    samples: usize,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let q = Crossings::try_from(q)?;
    let cat = FusionCategory::fibonacci();
    let exact = extract_m(&cat, q)?;
    let phase_sweep = verify_global_phase(&cat, q, samples, seed)?;
    let noisy = if noisy {
        let scenario = match noise {
            Some(path) => NoisyScenario::from_noise(&NoiseModel::from_json(&read(&path)?)?)?,
            None => NoisyScenario::default(),
        };
        Some(extract_m_noisy(&cat, q, &scenario)?)
    } else {
        None
    };
    let text = match format {
        Format::Json => to_json(&RobustnessReport { exact: exact.clone(), phase_sweep: phase_sweep.clone(), noisy: noisy.clone() })?,
        Format::Csv => noisy.as_ref().map_or(&exact, |n| &n.result).to_csv(),
    };
    emit(out.as_deref(), &text)?;

    if exact.deviation >= EXACT_TOL || !phase_sweep.passes(1e-9) {
        return Err(Failure::Check(format!("M_{} is not proportional to the identity", q.count())));
    }
    if let Some(n) = &noisy {
        if n.result.deviation >= NOISY_TOL {
            return Err(Failure::Check(format!("noisy deviation {:.3e} exceeds {NOISY_TOL}", n.result.deviation)));
        }
    }
    Ok(())
}

pub fn dump_matrices(format: Format, out: Option<PathBuf>) -> Result<(), Failure> {
    let matrices = named_matrices();
    match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = matrices
                .iter()
                .map(|(name, m)| Ok((name.to_string(), serde_json::to_value(MatrixJson::from(m))?)))
                .collect::<anyhow::Result<_>>()?;
            emit(out.as_deref(), &to_json(&map)?)?;
        }
        Format::Csv => match out {
            Some(dir) => {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, m) in &matrices {
                    emit(Some(&dir.join(format!("{name}.csv"))), &matrix_to_csv(m))?;
                }
            }
            None => {
                for (name, m) in &matrices {
                    println!("# {name}");
                    print!("{}", matrix_to_csv(m));
                }
            }
        },
    }
    Ok(())
}
