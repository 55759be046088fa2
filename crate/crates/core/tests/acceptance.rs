//! Acceptance gate: one PASS/FAIL line per criterion, each with a pinned
//! wall-clock limit. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use snarkforge::constructions::{build_h, build_y, GadgetWiring};
use snarkforge::verify::{
    verify_composition, verify_connectivity, verify_gadget_lemmas, verify_h, verify_h_flow_resistance, verify_negative_controls,
    verify_properties, verify_sizes, verify_witness_flows, verify_y, Budget, ClaimRecord, Samples, Status,
    VerificationReport,
};

const TEN_MIN: u64 = 600;

struct Gate {
    failed: usize,
}

impl Gate {
    fn check(&mut self, id: u32, title: &str, limit: Duration, f: impl FnOnce() -> Result<(), String>) {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let res = match res {
            Ok(()) if took > limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            other => other,
        };
        match res {
            Ok(()) => println!("criterion {id}: PASS  {title} ({took:.2?}, limit {limit:?})"),
            Err(why) => {
                self.failed += 1;
                println!("criterion {id}: FAIL  {title} ({took:.2?}, limit {limit:?}): {why}");
            }
        }
    }
}

fn claims<'a>(r: &'a VerificationReport, name: &'a str) -> Vec<&'a ClaimRecord> {
    r.find(name).collect()
}

fn all_verified(r: &VerificationReport) -> Result<(), String> {
    match r.claims.iter().find(|c| c.status != Status::Verified) {
        None if !r.claims.is_empty() => Ok(()),
        None => Err("no claims produced".into()),
        Some(c) => Err(format!("{} {:?}: {:?}, {}", c.claim, c.params, c.status, c.detail)),
    }
}

fn verified(c: &ClaimRecord) -> Result<(), String> {
    if c.status == Status::Verified {
        Ok(())
    } else {
        Err(format!("{} {:?}: {:?}, {}", c.claim, c.params, c.status, c.detail))
    }
}

fn within(c: &ClaimRecord, secs: u64) -> Result<(), String> {
    if c.wall_ms <= secs * 1000 {
        Ok(())
    } else {
        Err(format!("{} {:?} took {} ms, limit {secs} s", c.claim, c.params, c.wall_ms))
    }
}

fn main() -> ExitCode {
    let w = GadgetWiring::frozen();
    let budget = Budget::new(TEN_MIN);
    let mut gate = Gate { failed: 0 };

    gate.check(1, "orders of H_n and Y_i for n, i <= 10", Duration::from_secs(1), || {
        all_verified(&verify_sizes(&w, 10))?;
        for n in 1..=10 {
            let h = build_h(n, &w).map_err(|e| e.to_string())?.graph;
            let ok = h.order() == 40 * n + 2 && h.is_cubic() && h.is_simple() && h.is_graph() && h.is_connected();
            if !ok {
                return Err(format!("H_{n} has order {} or is not simple connected cubic", h.order()));
            }
            let y = build_y(n, &w).map_err(|e| e.to_string())?.graph;
            if y.order() != 40 * n + 1 || y.semi_edge_count() != 5 {
                return Err(format!("Y_{n}: {} vertices, {} stubs", y.order(), y.semi_edge_count()));
            }
        }
        Ok(())
    });

    gate.check(2, "gadget colorings of M, N and Z by exhaustion", Duration::from_secs(60), || {
        all_verified(&verify_gadget_lemmas(&w, budget))
    });

    let mut h12: Vec<VerificationReport> = Vec::new();

    gate.check(3, "r(H_1) = r(H_2) = 2 exactly", Duration::from_secs(TEN_MIN), || {
        h12 = (1..=2).map(|n| verify_h(n, &w, budget)).collect();
        for (r, calls) in h12.iter().zip([63, 123]) {
            for c in claims(r, "H.snark").into_iter().chain(claims(r, "H.resistance")) {
                verified(c)?;
            }
            let res = claims(r, "H.resistance")[0];
            if !res.detail.contains(&format!("all {calls} single deletions uncolorable")) {
                return Err(format!("sweep detail: {}", res.detail));
            }
        }
        let total: u64 = h12
            .iter()
            .flat_map(|r| claims(r, "H.snark").into_iter().chain(claims(r, "H.resistance")))
            .map(|c| c.wall_ms)
            .sum();
        if total > TEN_MIN * 1000 {
            return Err(format!("{total} ms"));
        }
        Ok(())
    });

    gate.check(4, "r_f(H_1) = 1, r_f(H_2) = 2, witness flows n <= 6", Duration::from_secs(3 * TEN_MIN), || {
        for r in &h12 {
            let c = claims(r, "H.flow-resistance")[0];
            verified(c)?;
            within(c, TEN_MIN)?;
        }
        let flows = verify_witness_flows(&w, 6);
        all_verified(&flows)?;
        if flows.claims.len() != 6 {
            return Err("expected six witness flows".into());
        }
        for n in [7, 8] {
            let r = verify_h_flow_resistance(n, &w, Budget::new(60));
            let c = claims(&r, "H.flow-resistance")[0];
            if c.status != Status::Witnessed {
                return Err(format!("H_{n} flow resistance should be reported as witnessed, got {:?}", c.status));
            }
        }
        Ok(())
    });

    gate.check(5, "r(Y_i) = 1 and r_f(Y_i) = i for i = 1, 2", Duration::from_secs(2 * TEN_MIN), || {
        for i in 1..=2 {
            let r = verify_y(i, &w, budget);
            all_verified(&r)?;
            for c in &r.claims {
                within(c, TEN_MIN)?;
            }
        }
        Ok(())
    });

    gate.check(6, "cyclic connectivity exactly 5 for Petersen, H_1, H_2, J", Duration::from_secs(15 * 60), || {
        let r = verify_connectivity(&w, Budget::new(15 * 60));
        all_verified(&r)?;
        let exact = claims(&r, "cyclic5.exact");
        if exact.len() != 4 {
            return Err(format!("{} graphs checked", exact.len()));
        }
        for r in &h12 {
            verified(claims(r, "H.cyclic5")[0])?;
        }
        Ok(())
    });

    gate.check(7, "H_{n+1} in H_n * J with its hypotheses, n <= 4", Duration::from_secs(5 * 60), || {
        for n in 1..=4 {
            let r = verify_composition(n, &w, Budget::new(5 * 60));
            all_verified(&r)?;
        }
        Ok(())
    });

    gate.check(8, "parity, cut sums, leaf counts, Kempe switches", Duration::from_secs(TEN_MIN), || {
        let s = Samples::default();
        if (s.parity, s.cut_sum, s.kempe, s.max_tree_order) != (10_000, 10_000, 1_000, 12) {
            return Err("sample counts below the required sizes".into());
        }
        all_verified(&verify_properties(&w, 0x5eed, s, budget))
    });

    gate.check(9, "negative controls are rejected", Duration::from_secs(TEN_MIN), || {
        let r = verify_negative_controls(&w, budget);
        all_verified(&r)?;
        if claims(&r, "control.not-cyclic5").len() != 2 || claims(&r, "control.rewired-J").len() != 1 {
            return Err("missing control".into());
        }
        Ok(())
    });

    if gate.failed == 0 {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 9 criteria fail", gate.failed);
        ExitCode::FAILURE
    }
}
