//! Subcommand handlers. Each returns the verdict or an error (exit code 2).

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use gs_core::analysis::{approximation_ratio, approximation_ratio_from_above};
use gs_core::certify::{
    all_combinations, find_sufficient_sets, gs_gap_certifier, replay, s1_set1, s1_set2, tree_search, Branching,
    Certificate, SearchProblem, SearchResult,
};
use gs_core::classes::{demand_bruteforce, demand_greedy, ClassReport, PriceVector};
use gs_core::constructions::{
    additive, approx2_gs, ba, ba_log_approx, ba_loglog_approx, budget_additive, coverage_approx_ba,
    example_not_submodular, threshold_gs, unit_demand, wmrf, xos_grid, xos_grid_submod_approx, Matroid,
};
use gs_core::rational::parse_rational;
use gs_core::transforms::{
    convolve, induce_all, max_symmetrize, partial_symmetrize, symmetrize_to_fixpoint, InductionNetwork,
};
use gs_core::{Rational, SetFunction};
use serde::Serialize;
use serde_json::json;

use crate::{CertifyKind, Class, Cli, Combos, Command, ConstructKind, SymmetrizeArgs, Verdict};

pub fn run(cli: &Cli) -> Result<Verdict> {
    match &cli.command {
        Command::Check { file, require } => check(cli, file, *require),
        Command::Symmetrize(args) => symmetrize(args),
        Command::Convolve { left, right, out } => {
            let f = convolve(&load(left)?, &load(right)?)?;
            emit_valuation(&f, out.as_deref())
        }
        Command::Gap { g, f, from_above } => gap(cli, g, f, *from_above),
        Command::Construct { kind, out } => emit_valuation(&construct(kind)?, out.as_deref()),
        Command::Certify { kind } => certify(cli, kind),
        Command::Demand { file, prices } => demand(cli, file, prices),
        Command::Reproduce { claim, k, d, seed } => crate::reproduce::run(cli, claim, *k, *d, *seed),
    }
}

pub fn load(path: &Path) -> Result<SetFunction> {
    SetFunction::load(path).with_context(|| format!("reading valuation {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {what} {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} {}", path.display()))
}

pub fn rational(text: &str) -> Result<Rational> {
    parse_rational(text.trim()).map_err(|e| anyhow!("{e}"))
}

pub fn rationals(list: &str) -> Result<Vec<Rational>> {
    list.split(',').map(rational).collect()
}

/// Pretty JSON when `--json` is set, otherwise `text`.
pub fn report<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        println!("{}", text());
    }
    Ok(())
}

fn emit_valuation(f: &SetFunction, out: Option<&Path>) -> Result<Verdict> {
    match out {
        Some(p) => f.save(p).with_context(|| format!("writing {}", p.display()))?,
        None => println!("{}", f.to_json()),
    }
    Ok(Verdict::Ok)
}

fn check(cli: &Cli, file: &Path, require: Option<Class>) -> Result<Verdict> {
    let f = load(file)?;
    let r = ClassReport::check(&f)?;
    let flags = [
        ("monotone", r.monotone),
        ("additive", r.additive),
        ("budget_additive", r.budget_additive),
        ("submodular", r.submodular),
        ("gs", r.gs),
        ("sws", r.sws),
        ("xos", r.xos),
        ("subadditive", r.subadditive),
    ];
    report(cli, &r, || {
        let mut lines: Vec<String> = flags.iter().map(|(n, v)| format!("{n:<16}{v}")).collect();
        if let Some(s) = &r.mrf_scaled {
            lines.push(format!("{:<16}{s}", "mrf_scale"));
        }
        for (name, w) in &r.witnesses {
            lines.push(format!("witness {name}: {w:?}"));
        }
        lines.join("\n")
    })?;
    let holds = match require {
        None => true,
        Some(Class::Monotone) => r.monotone,
        Some(Class::Additive) => r.additive,
        Some(Class::BudgetAdditive) => r.budget_additive,
        Some(Class::Submodular) => r.submodular,
        Some(Class::Gs) => r.gs,
        Some(Class::Sws) => r.sws,
        Some(Class::Xos) => r.xos,
        Some(Class::Subadditive) => r.subadditive,
    };
    Ok(if holds { Verdict::Ok } else { Verdict::Violation })
}

fn item(f: &SetFunction, name: &str) -> Result<usize> {
    f.item_index(name).ok_or_else(|| anyhow!("unknown item {name:?}"))
}

fn symmetrize(args: &SymmetrizeArgs) -> Result<Verdict> {
    let g = load(&args.file)?;
    let chosen = [args.pair.is_some(), args.partial.is_some(), args.target.is_some()];
    if chosen.iter().filter(|&&c| c).count() != 1 {
        bail!("give exactly one of --pair, --partial or --target");
    }
    let out = if let Some(p) = &args.pair {
        max_symmetrize(&g, item(&g, &p[0])?, item(&g, &p[1])?)?
    } else if let Some(p) = &args.partial {
        partial_symmetrize(&g, item(&g, &p[0])?, item(&g, &p[1])?)?
    } else {
        let target = load(args.target.as_ref().expect("checked above"))?;
        symmetrize_to_fixpoint(&g, &target)?
    };
    emit_valuation(&out, args.out.as_deref())
}

fn gap(cli: &Cli, g: &Path, f: &Path, from_above: bool) -> Result<Verdict> {
    let (g, f) = (load(g)?, load(f)?);
    let r = if from_above {
        approximation_ratio_from_above(&g, &f)?
    } else {
        approximation_ratio(&g, &f)?
    };
    report(cli, &r, || {
        let ratio = r.ratio.as_ref().map_or("unbounded".to_string(), |x| x.to_string());
        let side = if from_above { "f <= g" } else { "g <= f" };
        format!("ratio {ratio}\n{side} everywhere: {}", r.lower_ok)
    })?;
    Ok(if r.lower_ok { Verdict::Ok } else { Verdict::Violation })
}

fn construct(kind: &ConstructKind) -> Result<SetFunction> {
    Ok(match kind {
        ConstructKind::Ba { k, d } => ba(*k, *d)?,
        ConstructKind::Approx2 { k } => approx2_gs(*k)?,
        ConstructKind::BudgetAdditive { values, budget } => budget_additive(&rationals(values)?, &rational(budget)?),
        ConstructKind::Additive { values } => additive(&rationals(values)?),
        ConstructKind::UnitDemand { values } => unit_demand(&rationals(values)?),
        ConstructKind::Threshold { values, thresholds } => threshold_gs(&rationals(values)?, &rationals(thresholds)?)?,
        ConstructKind::XosGrid { q } => xos_grid(*q)?,
        ConstructKind::XosGridSubmod { q } => xos_grid_submod_approx(*q)?,
        ConstructKind::ExampleNotSubmodular => example_not_submodular(),
        ConstructKind::BaLoglog { f } => ba_loglog_approx(&load(f)?)?,
        ConstructKind::BaLog { f } => ba_log_approx(&load(f)?)?,
        ConstructKind::CoverageBa { f, n, seed, rho } => coverage_approx_ba(&load(f)?, *n, *seed, &rational(rho)?)?.g,
        ConstructKind::Wmrf { matroid, weights } => {
            let m: Matroid = read_json(matroid, "matroid")?;
            wmrf(&m, &rationals(weights)?)?
        }
        ConstructKind::Induce { network } => {
            let net: InductionNetwork = read_json(network, "network")?;
            induce_all(&net)?
        }
    })
}

fn save_cert(cert: &Certificate, out: Option<&PathBuf>) -> Result<()> {
    if let Some(p) = out {
        std::fs::write(p, serde_json::to_string_pretty(cert)?).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn summarize(cert: &Certificate) -> String {
    let s = &cert.stats;
    let head = match &cert.result {
        SearchResult::Infeasible { pruned } => format!("Infeasible: {} pruned nodes", pruned.len()),
        SearchResult::Feasible { path, .. } => format!(
            "Feasible leaf: {}",
            path.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ),
    };
    format!(
        "{head}\nLPs solved {}, nodes visited {}, max depth {}",
        s.lps_solved, s.nodes_visited, s.max_depth
    )
}

fn certify(cli: &Cli, kind: &CertifyKind) -> Result<Verdict> {
    match kind {
        CertifyKind::S1 {
            combos,
            with_mono_submod,
            out,
        } => {
            let (order, branching) = match combos {
                Combos::Full => (all_combinations(5), Branching::Strong),
                Combos::Set1 => (s1_set1(), Branching::Static),
                Combos::Set2 => (s1_set2(), Branching::Static),
            };
            let p = SearchProblem::s1(order, *with_mono_submod)?.with_branching(branching);
            let cert = tree_search(&p)?;
            save_cert(&cert, out.as_ref())?;
            report(cli, &cert, || summarize(&cert))?;
            Ok(Verdict::Ok)
        }
        CertifyKind::Gap { f, rho, sym, out } => {
            let f = load(f)?;
            let cert = gs_gap_certifier(&f, &rational(rho)?, *sym)?;
            save_cert(&cert, out.as_ref())?;
            report(cli, &cert, || summarize(&cert))?;
            Ok(Verdict::Ok)
        }
        CertifyKind::Sufficient { size, budget } => {
            let r = find_sufficient_sets(*size, *budget)?;
            report(cli, &r, || {
                let mut lines = vec![format!(
                    "{} infeasible sets among {} checked ({} LPs){}",
                    r.sets.len(),
                    r.subsets_checked,
                    r.lps_solved,
                    if r.complete { "" } else { ", budget exhausted" }
                )];
                lines.extend(
                    r.sets
                        .iter()
                        .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")),
                );
                lines.join("\n")
            })?;
            Ok(Verdict::Ok)
        }
        CertifyKind::Replay { cert } => {
            let c: Certificate = read_json(cert, "certificate")?;
            let r = replay(&c)?;
            report(cli, &r, || match &r.failure {
                None => format!("valid ({} LPs re-solved)", r.lps_solved),
                Some(why) => format!("invalid: {why}"),
            })?;
            Ok(if r.valid { Verdict::Ok } else { Verdict::Violation })
        }
    }
}

fn demand(cli: &Cli, file: &Path, prices: &str) -> Result<Verdict> {
    let f = load(file)?;
    let p = PriceVector::new(rationals(prices)?)?;
    let brute = demand_bruteforce(&f, &p)?;
    let (set, greedy) = demand_greedy(&f, &p)?;
    let optimal = greedy == brute.best_utility;
    let value = json!({
        "bruteforce": brute,
        "greedy": { "set": set, "utility": greedy.to_string() },
        "greedy_optimal": optimal,
    });
    report(cli, &value, || {
        let show = |s: gs_core::Subset| {
            format!(
                "{{{}}}",
                s.items().map(|i| f.item_label(i)).collect::<Vec<_>>().join(",")
            )
        };
        format!(
            "best utility {} at {}\ngreedy utility {} at {}\ngreedy optimal: {optimal}",
            brute.best_utility,
            brute.demanded.iter().map(|&s| show(s)).collect::<Vec<_>>().join(" "),
            greedy,
            show(set)
        )
    })?;
    Ok(if optimal { Verdict::Ok } else { Verdict::Violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gs_core::rational::{int, rat};

    #[test]
    fn rational_lists() {
        assert_eq!(rationals("1, 1/2,0").unwrap(), vec![int(1), rat(1, 2), int(0)]);
        assert!(rationals("1,x").is_err());
        assert!(rational("").is_err());
    }

    #[test]
    fn constructions_by_name() {
        let f = construct(&ConstructKind::BudgetAdditive {
            values: "1,1,2".into(),
            budget: "2".into(),
        })
        .unwrap();
        assert_eq!(f, budget_additive(&[int(1), int(1), int(2)], &int(2)));
        assert!(construct(&ConstructKind::XosGrid { q: 1 }).is_err());
    }
}
