//! End-to-end acceptance checks. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use mcg_core::claims::{run_claims, Bounds, ClaimReport, RunContext, Selection, Status};

struct Runner {
    reports: BTreeMap<String, ClaimReport>,
}

impl Runner {
    fn new() -> Runner {
        let sel = Selection {
            genus: 3..=9,
            k: 2..=16,
            p: 1..=3,
            q: 0..=2,
        };
        let ctx = RunContext::new();
        let reports = run_claims("*", &sel, 0, &Bounds::default(), &ctx).expect("claim run");
        Runner {
            reports: reports.into_iter().map(|r| (r.id.clone(), r)).collect(),
        }
    }

    /// Every id must exist, pass, and (when given) report the expected observation.
    fn check(&self, expected: &[(String, Option<String>)]) -> Result<usize, String> {
        for (id, observed) in expected {
            let r = self.reports.get(id).ok_or_else(|| format!("missing claim {id}"))?;
            if r.status != Status::Pass {
                return Err(format!("{id}: {} (observed {}, {})", r.status, r.observed, r.witness));
            }
            if let Some(o) = observed {
                if &r.observed != o {
                    return Err(format!("{id}: observed {} but expected {o}", r.observed));
                }
            }
        }
        Ok(expected.len())
    }
}

fn with(id: impl Into<String>, observed: impl ToString) -> (String, Option<String>) {
    (id.into(), Some(observed.to_string()))
}

fn just(id: impl Into<String>) -> (String, Option<String>) {
    (id.into(), None)
}

fn criterion_orders(r: &Runner) -> Result<usize, String> {
    let mut ids = Vec::new();
    for g in 5..=8usize {
        let odd = g % 2 == 1;
        ids.push(with(format!("thm1.order.r.g{g}"), g));
        ids.push(with(format!("thm1.order.r-prime.g{g}"), g - 1));
        ids.push(with(format!("thm1.order.s.g{g}"), if odd { 2 * g } else { g }));
        ids.push(with(format!("thm1.order.s-prime.g{g}"), if odd { 2 * (g - 1) } else { g - 1 }));
    }
    ids.push(with("thm1.order.st-beta.g5", 6));
    ids.push(with("thm1.order.t1t2.g3", 6));
    ids.push(with("thm1.order.t1sq-t2.g3", 4));
    ids.push(with("thm1.order.u2.g3", 2));
    r.check(&ids)
}

fn criterion_identities(r: &Runner) -> Result<usize, String> {
    let mut ids: Vec<_> = (4..=8).map(|g| with(format!("thm1.identity.sprime-power.g{g}"), "equal")).collect();
    ids.extend((5..=8).map(|g| with(format!("thm1.identity.t1.g{g}"), "equal")));
    ids.push(with("thm1.identity.t4-beta.g5", "equal"));
    r.check(&ids)
}

fn criterion_curves(r: &Runner) -> Result<usize, String> {
    let mut ids = Vec::new();
    for g in 5..=8usize {
        for i in 1..g - 1 {
            ids.push(with(format!("thm1.curve.s-shift.a{i}.g{g}"), format!("alpha{}", i + 1)));
            ids.push(with(format!("thm1.curve.r-shift.a{i}.g{g}"), format!("alpha{}", i + 1)));
        }
    }
    ids.push(with("thm1.curve.eps.g5", "epsilon"));
    ids.push(with("thm1.curve.x-a4.g6", "beta"));
    ids.push(with("thm1.curve.x-a2.g6", "alpha3"));
    ids.push(with("thm1.curve.x-a3.g6", "epsilon"));
    ids.push(with("thm1.curve.xrx-a3.g6", "epsilon"));
    ids.push(with("thm1.curve.xr2x-a3.g6", "beta"));
    for g in [7usize, 8] {
        ids.push(with(format!("thm1.curve.x-alast.g{g}"), "epsilon"));
        ids.push(with(format!("thm1.curve.xr{}x-a3.g{g}", g - 3), "epsilon"));
        ids.push(with(format!("thm1.curve.xr2x-a3.g{g}"), "beta"));
    }
    r.check(&ids)
}

fn criterion_determinants(r: &Runner) -> Result<usize, String> {
    let mut ids = Vec::new();
    for g in 3..=9usize {
        for i in 1..g {
            ids.push(with(format!("det.twist.a{i}.g{g}"), 1));
            ids.push(with(format!("det.u{i}.g{g}"), -1));
        }
        if g >= 4 {
            ids.push(with(format!("det.twist.b.g{g}"), 1));
        }
        ids.push(with(format!("det.twist.e.g{g}"), 1));
        ids.push(with(format!("det.y.g{g}"), -1));
        if g % 2 == 0 {
            ids.push(with(format!("thm1.det.r.g{g}"), -1));
        } else {
            ids.push(with(format!("thm1.det.r-prime.g{g}"), -1));
        }
    }
    r.check(&ids)
}

fn criterion_eg_grid(r: &Runner) -> Result<usize, String> {
    let mut ids = Vec::new();
    for k in 2..=13usize {
        for p in 1..=3usize {
            for q in 0..=2usize {
                for side in ["even", "odd"] {
                    let tag = format!("k{k}.p{p}.q{q}.{side}");
                    let det = if k % 2 == 0 && p % 2 == 1 { -1 } else { 1 };
                    ids.push(with(format!("lemma-embed.det.{tag}"), det));
                    ids.push(with(format!("lemma-embed.order.{tag}"), "M^k = I"));
                }
            }
        }
    }
    r.check(&ids)
}

fn criterion_decompositions(r: &Runner) -> Result<usize, String> {
    let mut ids = Vec::new();
    for k in [12u64, 14, 16] {
        let lo = 2 * (k - 1) * (k - 2) + k;
        ids.extend((lo..=lo + 200).map(|g| just(format!("cor4.decomp.g{g}.k{k}"))));
    }
    let n = r.check(&ids)?;
    // Reconstruct independently from the reported p, q.
    for (id, _) in &ids {
        let rep = &r.reports[id];
        let g: u64 = id.split(".g").nth(1).unwrap().split('.').next().unwrap().parse().unwrap();
        let k: u64 = id.rsplit(".k").next().unwrap().parse().unwrap();
        let field = |name: &str| -> String {
            rep.observed
                .split(", ")
                .find_map(|kv| kv.strip_prefix(&format!("{name} = ")))
                .unwrap()
                .to_string()
        };
        let (p, q): (u64, u64) = (field("p").parse().unwrap(), field("q").parse().unwrap());
        let plus: u64 = u64::from(field("plus_one") == "true");
        if p % 2 == 0 || p * k + 2 * q * (k - 1) + plus != g {
            return Err(format!("{id}: p = {p}, q = {q} does not rebuild {g}"));
        }
    }
    Ok(n)
}

fn criterion_lantern(r: &Runner) -> Result<usize, String> {
    let mut ids = vec![with("lemma1.proof", "proof verifies")];
    for rule in mcg_core::lantern::RuleSet::canonical().rules() {
        ids.push(just(format!("lemma1.ablation.{}", rule.label)));
    }
    let n = r.check(&ids)?;
    for (id, _) in &ids[1..] {
        let observed = &r.reports[id].observed;
        if observed != "proof fails" && observed != "budget exhausted" {
            return Err(format!("{id}: ablated rule set still {observed}"));
        }
    }
    Ok(n)
}

fn criterion_kernel() -> Result<usize, String> {
    common::reduction_suite(10_000, 81)?;
    common::triviality_suite(10_000, 82)?;
    let audit = common::conjugacy_audit(3, 8, 10, 83);
    if !audit.agrees() {
        return Err(format!("genus-3 conjugacy audit: {audit:?}"));
    }
    common::functoriality_suite(1_000, 84)?;
    Ok(10_000 + 10_000 + audit.words + 1_000)
}

fn main() {
    let start = Instant::now();
    let runner = Runner::new();
    let setup = start.elapsed();
    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Result<usize, String> + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("order table", Box::new(|| criterion_orders(&runner))),
        ("mapping class identities", Box::new(|| criterion_identities(&runner))),
        ("curve orbit claims", Box::new(|| criterion_curves(&runner))),
        ("determinant criterion", Box::new(|| criterion_determinants(&runner))),
        ("E_g rotation grid", Box::new(|| criterion_eg_grid(&runner))),
        ("genus decompositions", Box::new(|| criterion_decompositions(&runner))),
        ("lantern derivation and ablations", Box::new(|| criterion_lantern(&runner))),
        ("kernel property suites", Box::new(criterion_kernel)),
    ];
    println!("claim inventory evaluated in {:.2}s", setup.as_secs_f64());
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(n) => println!("criterion {}: PASS  {name} ({n} checks, {:.2}s)", i + 1, t.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
