//! Verification suites and their parallel orchestration.

use std::thread;

use clap::ValueEnum;
use glsv_core::branchpoint::{lambert_branch_check, SPipeline};
use glsv_core::lagrange::{divisibility_check, no_even_negative_from_formula, route_agreement, theorem_exp_equivalence};
use glsv_core::oracle::{closed_form_geom_check, geom_even_power_check, ordered_check, phylo_check};
use glsv_core::solver::{consistency_check, parity_check, power_sum_check, verify_factorization, LambdaSpec};
use glsv_core::{Result, Verdict};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Parity,
    Consistency,
    Lagrange,
    Firstproof,
    Factorization,
    Powersum,
    Oracle,
    All,
}

impl Suite {
    /// Every concrete suite, in emission order.
    pub const EACH: [Suite; 7] = [
        Suite::Parity,
        Suite::Consistency,
        Suite::Lagrange,
        Suite::Firstproof,
        Suite::Factorization,
        Suite::Powersum,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Parity => "parity",
            Suite::Consistency => "consistency",
            Suite::Lagrange => "lagrange",
            Suite::Firstproof => "firstproof",
            Suite::Factorization => "factorization",
            Suite::Powersum => "powersum",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub lambda: LambdaSpec,
    pub order: usize,
    pub l_max: usize,
    pub r_max: usize,
}

fn run_fallible(suite: Suite, o: &SuiteOptions) -> Result<Vec<Verdict>> {
    let n = o.order;
    let phi = o.lambda.phi(n);
    Ok(match suite {
        Suite::Parity => vec![parity_check(&o.lambda, o.l_max, n)],
        Suite::Consistency => consistency_check(&o.lambda, o.l_max, n)?,
        Suite::Lagrange => {
            let mut out = theorem_exp_equivalence(&phi, o.r_max as u64, n);
            out.extend((1..=o.r_max as u64).map(|r| no_even_negative_from_formula(r, &phi, n)));
            out.push(divisibility_check(n.max(2) as u64));
            out
        }
        Suite::Firstproof => {
            let mut out = SPipeline::build(n)?.verdicts(n)?;
            out.push(lambert_branch_check(n));
            out.push(route_agreement(o.l_max.clamp(1, 8))?);
            out
        }
        Suite::Factorization => vec![verify_factorization(&phi, n.min(6), 2 * n).verdict],
        Suite::Powersum => power_sum_check(&phi, o.r_max, n),
        Suite::Oracle => vec![
            ordered_check(n.min(8))?,
            phylo_check(n.min(9), n.min(7))?,
            closed_form_geom_check(n)?,
            geom_even_power_check(n.min(8), n),
        ],
        Suite::All => unreachable!("expanded before running"),
    })
}

/// Runs one suite; an internal error becomes a failed verdict.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Vec<Verdict> {
    run_fallible(suite, opts).unwrap_or_else(|e| {
        let mut v = Verdict::new(format!("{}_error", suite.name()), json!({ "order": opts.order }));
        v.fail(json!({ "error": e.to_string() }));
        vec![v]
    })
}

/// Runs the suites concurrently; results come back in the order given.
pub fn run_suites(suites: &[Suite], opts: &SuiteOptions) -> Vec<(Suite, Vec<Verdict>)> {
    thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|&s| (s, scope.spawn(move || run_suite(s, opts)))).collect();
        handles
            .into_iter()
            .map(|(s, h)| (s, h.join().expect("suite thread panicked")))
            .collect()
    })
}
