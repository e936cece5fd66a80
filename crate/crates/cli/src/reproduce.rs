//! Named reproductions with their expected values.

use anyhow::{bail, Result};
use gs_core::analysis::{approximation_ratio, ba_negative_bound, lemma_key_exhaustive};
use gs_core::certify::{
    all_combinations, gs_gap_certifier, replay, s1_set1, s1_set2, tree_search, Branching, SearchProblem,
};
use gs_core::classes::{is_gs, is_monotone, is_submodular, is_sws, local_approx_ratio};
use gs_core::constructions::{
    approx2_gs, ba, budget_additive, coverage_approx_ba, coverage_ratio_bound, example_not_submodular, xos_grid,
    xos_grid_submod_approx,
};
use gs_core::rational::{int, rat};
use gs_core::transforms::{average, max_symmetrize};
use gs_core::{Rational, Subset};
use serde::Serialize;

use crate::commands::report;
use crate::{Cli, Verdict};

/// Claim identifiers with one-line descriptions.
pub const CLAIMS: &[(&str, &str)] = &[
    (
        "remark-notsubmodular",
        "max-symmetrizing a monotone submodular non-GS table breaks submodularity",
    ),
    (
        "claim-infeasible-set1",
        "first known six-combination set is infeasible within 729 LPs",
    ),
    (
        "claim-infeasible-set2",
        "second known six-combination set is infeasible within 729 LPs",
    ),
    ("claim-infeasible-full", "the 40-combination tree is infeasible"),
    ("approx2", "BA(k,1) has GS ratio exactly 2k/(k+1) (--k, default 2)"),
    (
        "ba-bound",
        "closed-form lower bound on the GS ratio of BA(k,d) (--k, --d)",
    ),
    (
        "xos-grid",
        "no GS function approximates the 4-item XOS grid within 199/100",
    ),
    ("local-approx", "the BA(1,1,2; 2) fixture has local ratio exactly 3/4"),
    (
        "coverage-ba",
        "a coverage function sandwiches BA(1,1,1,2; 2) within 791/500 (--seed)",
    ),
    (
        "sws-average",
        "the average of two SWS budget-additive functions is not SWS",
    ),
];

#[derive(Serialize)]
struct Outcome {
    claim: String,
    pass: bool,
    expected: String,
    observed: String,
}

pub fn run(cli: &Cli, claim: &str, k: Option<usize>, d: Option<usize>, seed: u64) -> Result<Verdict> {
    if claim == "list" {
        let list: Vec<_> = CLAIMS
            .iter()
            .map(|(id, what)| serde_json::json!({"claim": id, "description": what}))
            .collect();
        report(cli, &list, || {
            CLAIMS
                .iter()
                .map(|(id, what)| format!("{id:<24}{what}"))
                .collect::<Vec<_>>()
                .join("\n")
        })?;
        return Ok(Verdict::Ok);
    }
    let (expected, observed, pass) = match claim {
        "remark-notsubmodular" => {
            let g = example_not_submodular();
            let h = max_symmetrize(&g, 0, 1)?;
            let at_a = h.item_marginal(2, Subset::singleton(0));
            let at_da = h.item_marginal(2, Subset::from_items(&[0, 3]));
            let ok = is_monotone(&g) && is_submodular(&g) && !is_gs(&g) && !is_submodular(&h);
            (
                "h(c|a) = 0, h(c|da) = 1, h not submodular".to_string(),
                format!(
                    "h(c|a) = {at_a}, h(c|da) = {at_da}, h submodular: {}",
                    is_submodular(&h)
                ),
                ok && at_a == int(0) && at_da == int(1),
            )
        }
        "claim-infeasible-set1" | "claim-infeasible-set2" => {
            let set = if claim.ends_with('1') { s1_set1() } else { s1_set2() };
            let cert = tree_search(&SearchProblem::s1(set, false)?)?;
            let valid = replay(&cert)?.valid;
            let verdict = if cert.is_infeasible() { "infeasible" } else { "feasible" };
            (
                "infeasible with at most 729 LPs".to_string(),
                format!("{verdict} with {} LPs, replay valid: {valid}", cert.stats.lps_solved),
                cert.is_infeasible() && cert.stats.lps_solved <= 729 && valid,
            )
        }
        "claim-infeasible-full" => {
            let p = SearchProblem::s1(all_combinations(5), false)?.with_branching(Branching::Strong);
            let cert = tree_search(&p)?;
            let valid = replay(&cert)?.valid;
            (
                "infeasible".to_string(),
                format!(
                    "{} with {} LPs, replay valid: {valid}",
                    if cert.is_infeasible() { "infeasible" } else { "feasible" },
                    cert.stats.lps_solved
                ),
                cert.is_infeasible() && valid,
            )
        }
        "approx2" => {
            let k = k.unwrap_or(2);
            if !(2..=4).contains(&k) {
                bail!("approx2 supports --k 2, 3 or 4");
            }
            let f = ba(k, 1)?;
            let rho = rat(2 * k as i64, k as i64 + 1);
            let upper = approximation_ratio(&approx2_gs(k)?, &f)?.ratio;
            let below = gs_gap_certifier(&f, &(rho.clone() - rat(1, 100)), false)?;
            let at = gs_gap_certifier(&f, &rho, false)?;
            (
                format!("approximator ratio {rho}; none below; feasible at {rho}"),
                format!(
                    "approximator ratio {}; below infeasible: {}; at ratio feasible: {}",
                    upper.as_ref().map_or("unbounded".into(), Rational::to_string),
                    below.is_infeasible(),
                    !at.is_infeasible()
                ),
                upper == Some(rho) && below.is_infeasible() && !at.is_infeasible(),
            )
        }
        "ba-bound" => {
            let (k, d) = (k.unwrap_or(2), d.unwrap_or(1));
            let b = ba_negative_bound(k as u32, d as u32)?;
            let known = match (k, d) {
                (2, 1) => Some(rat(4, 3)),
                (3, 1) => Some(rat(3, 2)),
                (3, 2) => Some(rat(27, 16)),
                (k, 1) => Some(rat(2 * k as i64, k as i64 + 1)),
                _ => None,
            };
            let simplified = k < 3 || b.reciprocal < b.simplified_reciprocal;
            (
                known
                    .as_ref()
                    .map_or("simplified bound holds".into(), |x| format!("bound {x}")),
                format!("bound {}; simplified bound holds: {simplified}", b.bound),
                known.is_none_or(|x| x == b.bound) && simplified,
            )
        }
        "xos-grid" => {
            let f = xos_grid(2)?;
            let cert = gs_gap_certifier(&f, &(int(2) - rat(1, 100)), false)?;
            let sub = approximation_ratio(&xos_grid_submod_approx(2)?, &f)?.ratio;
            (
                "no GS within 199/100; submodular approximator at 3/2".to_string(),
                format!(
                    "GS within 199/100 infeasible: {}; submodular ratio {}",
                    cert.is_infeasible(),
                    sub.as_ref().map_or("unbounded".into(), Rational::to_string)
                ),
                cert.is_infeasible() && sub == Some(rat(3, 2)),
            )
        }
        "local-approx" => {
            let r = local_approx_ratio(&budget_additive(&[int(1), int(1), int(2)], &int(2)))?;
            ("3/4".to_string(), r.to_string(), r == rat(3, 4))
        }
        "coverage-ba" => {
            let f = budget_additive(&[int(1), int(1), int(1), int(2)], &int(2));
            let rho = coverage_ratio_bound();
            let c = coverage_approx_ba(&f, 200, seed, &rho)?;
            let ok = f
                .subsets()
                .all(|s| f.value(s) <= c.g.value(s) && *c.g.value(s) <= &rho * f.value(s));
            (
                "f <= g <= (791/500) f".to_string(),
                format!("sandwich holds: {ok} after {} sample(s)", c.attempts),
                ok,
            )
        }
        "sws-average" => {
            let f1 = budget_additive(&[int(2), int(2), int(0)], &int(2));
            let f2 = budget_additive(&[int(2), int(0), int(2)], &int(2));
            let avg = average(&f1, &f2)?;
            (
                "inputs SWS, average not SWS".to_string(),
                format!(
                    "inputs SWS: {}; average SWS: {}; group property violated: {}",
                    is_sws(&f1) && is_sws(&f2),
                    is_sws(&avg),
                    lemma_key_exhaustive(&avg).is_some()
                ),
                is_sws(&f1) && is_sws(&f2) && !is_sws(&avg),
            )
        }
        other => bail!("unknown claim {other:?}; run `gstool reproduce list`"),
    };
    let out = Outcome {
        claim: claim.to_string(),
        pass,
        expected,
        observed,
    };
    report(cli, &out, || {
        format!(
            "{}: {}\nexpected: {}\nobserved: {}",
            out.claim,
            if out.pass { "PASS" } else { "FAIL" },
            out.expected,
            out.observed
        )
    })?;
    Ok(if pass { Verdict::Ok } else { Verdict::Violation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_are_unique_and_not_list() {
        let mut ids: Vec<&str> = CLAIMS.iter().map(|(id, _)| *id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CLAIMS.len());
        assert!(!ids.contains(&"list"));
    }
}
