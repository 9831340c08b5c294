//! Every geometric inequality on the standard corpus of planar domains,
//! one line per verdict. Exits with status 1 if any verdict fails.

use btl::bounds::{evaluate, standard_corpus, BoundsOptions, VerdictStatus};

fn main() -> btl::Result<()> {
    let opts = BoundsOptions {
        level: 3,
        segments: None,
    };
    let mut failures = 0;
    for delta in [0.5, 1.0, 2.0] {
        for (label, spec) in standard_corpus() {
            let report = evaluate(&spec, delta, &opts)?;
            for v in &report.verdicts {
                let status = match v.status {
                    VerdictStatus::Pass => "pass",
                    VerdictStatus::Fail => "FAIL",
                    VerdictStatus::Inconclusive => "inconclusive",
                };
                println!(
                    "{label:<18} delta={delta:<4} {:<26} {:>14.8e} {:>2} {:<14.8e} slack {:>+10.3e}  {status}",
                    v.name,
                    v.lhs,
                    v.relation.symbol(),
                    v.rhs,
                    v.slack
                );
            }
            failures += report.failures();
        }
    }
    println!("\n{failures} failed verdicts");
    if failures > 0 {
        std::process::exit(1);
    }
    Ok(())
}
