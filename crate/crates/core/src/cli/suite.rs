use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::quadform::{random_nondegenerate, verify_gauss_sum_theorem, FiniteAbelianGroup};

use super::commands::Outcome;
use super::corpus::corpus;
use super::report::Check;
use super::{dispatch, CliError, JobDescriptor, JobOptions};

/// Number of seeded random forms in the suite's Gauss-sum battery.
pub const BATTERY_FORMS: usize = 24;

const BATTERY_GROUPS: &[&[u64]] = &[&[2], &[4], &[2, 2], &[3], &[9], &[3, 3], &[5], &[2, 4], &[2, 2, 2], &[8], &[6], &[2, 3, 3]];

pub(crate) fn suite(o: &JobOptions) -> Outcome {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for f in corpus() {
        let job = JobDescriptor {
            command: f.command,
            input: Some(f.input.to_string()),
            toml: false,
            options: JobOptions { ext: f.ext, seed: o.seed, cap_override: o.cap_override },
        };
        match dispatch(&job) {
            Ok(rep) => {
                let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                checks.push(Check::with_witness(format!("fixture {}", f.name), rep.passed(), Some(failed.join("; "))));
                rows.push(json!({"name": f.name, "command": f.command.as_str(), "pass": rep.passed(), "checks": rep.checks.len(), "result": rep.result}));
            }
            Err(e) => {
                checks.push(Check::with_witness(format!("fixture {}", f.name), false, Some(e.to_string())));
                rows.push(json!({"name": f.name, "command": f.command.as_str(), "pass": false, "error": e.to_string()}));
            }
        }
    }
    let (ok, witness) = battery(o.seed)?;
    checks.push(Check::with_witness("seeded Gauss-sum battery", ok, witness));
    Ok((json!({"fixtures": rows, "battery": {"forms": BATTERY_FORMS, "seed": o.seed}}), checks))
}

fn battery(seed: u64) -> Result<(bool, Option<String>), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..BATTERY_FORMS {
        let factors = BATTERY_GROUPS[rng.gen_range(0..BATTERY_GROUPS.len())];
        let g = FiniteAbelianGroup::new(factors).map_err(|e| CliError::classify(e.to_string()))?;
        let s: u64 = rng.gen();
        let q = random_nondegenerate(&g, s).map_err(|e| CliError::classify(e.to_string()))?;
        if let Err(e) = verify_gauss_sum_theorem(&q) {
            return Ok((false, Some(format!("group {factors:?}, seed {s}: {e}"))));
        }
    }
    Ok((true, None))
}
