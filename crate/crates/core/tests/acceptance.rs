//! Acceptance criteria, one PASS/FAIL line each.
//!
//! C8 is a known failure: over the algebraic closure the outer tensor `Z(1) ⊠ Z(1)` of the two
//! type-Q baby Vermas at `p = 3` splits into two simples of dimension 18, so 36 does not divide
//! every simple dimension. The target succeeds when every criterion has its recorded status,
//! which for C8 means the counterexample reproduces exactly.

use std::process::ExitCode;
use std::time::Duration;

use superw_core::suite::acceptance;

/// Runtime limit per criterion.
const LIMITS_S: [u64; acceptance::COUNT] = [5, 30, 60, 60, 600, 60, 30, 120, 60, 120];

const KNOWN_FAILURE: &str = "C8";
const COUNTEREXAMPLE: &str = "absolute constituent dimensions [18, 36]";

fn main() -> ExitCode {
    let mut ok = true;
    for (k, limit) in (1..=acceptance::COUNT).zip(LIMITS_S) {
        let c = acceptance::criterion(k, 0).expect("criterion exists");
        let in_time = Duration::from_millis(c.runtime_ms) < Duration::from_secs(limit);
        let pass = c.pass && in_time;
        println!(
            "{} {} {} ({} ms, limit {limit} s)",
            if pass { "PASS" } else { "FAIL" },
            c.claim_id,
            c.reference,
            c.runtime_ms
        );
        if !pass {
            println!("    expected {}", c.expected);
            println!("    computed {}", c.computed);
        }
        let as_recorded = if c.claim_id == KNOWN_FAILURE {
            !c.pass && c.computed.starts_with(COUNTEREXAMPLE) && in_time
        } else {
            pass
        };
        if !as_recorded {
            println!("    unexpected status for {}", c.claim_id);
            ok = false;
        }
    }
    if ok {
        println!("acceptance: all criteria have their recorded status ({KNOWN_FAILURE} fails by counterexample)");
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
