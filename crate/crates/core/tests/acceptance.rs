//! Runs every acceptance criterion and prints one line each.

#[macro_use]
mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::Check;

fn all(checks: Vec<Check>) -> Check {
    checks.into_iter().collect()
}

/// Drives the binary over a small corpus and fails on exit code 4.
fn cli_corpus() -> Check {
    let runs: [&[&str]; 9] = [
        &["solve", "--graph6", "Cr", "--cap", "5"],
        &["bound", "--theorem", "3.4", "--s", "1", "--log2"],
        &["bound", "--theorem", "4.2", "--s", "2"],
        &["bound", "--appendix", "20", "--theorem", "3.1"],
        &["extremal", "ex", "--r", "2", "--n", "3", "--l", "2"],
        &["verify", "strategy", "--graph6", "Bw", "--k", "3", "--seed", "1"],
        &["adversary", "lemma22", "--graph6", "Bg", "--k", "4", "--seed", "7", "--a", "0,2", "--b", "1"],
        &["generate", "layered", "--seed", "9", "--levels", "7,5,4,3"],
        &["decompose", "genus-peel", "--graph6", "Dhc"],
    ];
    for args in runs {
        let out = Command::new(env!("CARGO_BIN_EXE_hatguess")).args(args).output().map_err(|e| e.to_string())?;
        ensure!(out.status.code() != Some(4), "{args:?} exited with 4");
    }
    Ok(())
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("exact small values", Box::new(|| common::game::small_values(Duration::from_secs(60)))),
        ("headline bounds by exact arithmetic", Box::new(common::bounds::headline)),
        (
            "composition adversaries",
            Box::new(|| {
                all(vec![
                    common::composition::tree_adversary(1, 50, 100),
                    common::composition::split_adversary(2, 50, 100),
                ])
            }),
        ),
        (
            "decomposition postconditions",
            Box::new(|| {
                all(vec![
                    common::decomposition::petunia_partitions(3, 200),
                    common::decomposition::outerplanar_splits(4, 200),
                    common::decomposition::layered_colorings(5, 100, 2..=4),
                ])
            }),
        ),
        (
            "extremal values and density",
            Box::new(|| {
                all(vec![
                    common::extremal::one_partite(10),
                    common::extremal::small_bipartite(),
                    common::extremal::density(6, 10_000),
                ])
            }),
        ),
        (
            "topology",
            Box::new(|| {
                all(vec![
                    common::topology::planar_cycles_separate(7, 20),
                    common::topology::grid_meridians(),
                    common::topology::peel_bound(0..40),
                    common::topology::three_paths(8),
                ])
            }),
        ),
        ("cross-module identities", Box::new(|| common::bounds::cross_identities(5))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check();
        report(i + 1, name, &result, t.elapsed());
        failed += result.is_err() as usize;
    }
    let t = Instant::now();
    let last = cli_corpus().and_then(|()| {
        let total = start.elapsed();
        ensure!(total < Duration::from_secs(15 * 60), "suite took {total:?}");
        ensure!(!common::claim_violation_seen(), "a claim violation was reported");
        Ok(())
    });
    report(8, "end-to-end budget, no claim violations", &last, t.elapsed());
    failed += last.is_err() as usize;
    println!("acceptance: {} of 8 criteria pass in {:.1}s", 8 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn report(n: usize, name: &str, result: &Check, took: Duration) {
    match result {
        Ok(()) => println!("criterion {n} PASS {name} ({:.1}s)", took.as_secs_f64()),
        Err(e) => println!("criterion {n} FAIL {name} ({:.1}s): {e}", took.as_secs_f64()),
    }
}
