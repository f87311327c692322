//! Runs the twelve acceptance criteria and prints one PASS/FAIL line each.

use hereditary::suite::{run, CRITERIA};
use hereditary::Limits;

fn main() {
    let limits = Limits::default();
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for &(id, _) in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.0)) {
        let o = run(id, &limits);
        println!("{}", o.line());
        if !o.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
