//! Search for NCT circuits of the S-box and its inverse.
//!
//! Run with `cargo run --release --example synthesize_sbox`.

use slimq::cipher::SBoxTable;
use slimq::circuit::{depth, emit_gatelist, DepthModel, GateCounts};
use slimq::synth::{synthesize, SearchBudget, SynthOutcome};

fn main() {
    let table = SBoxTable::slim();
    for (name, target, counts) in [
        ("S", table.forward, GateCounts::new(2, 5, 4)),
        ("S^-1", table.inverse, GateCounts::new(4, 2, 4)),
    ] {
        println!("{name} = {} with exactly {counts:?}", target.to_hex());
        match synthesize(&target, &SearchBudget::exact(counts)).unwrap() {
            SynthOutcome::Found { synthesis, stats } => {
                println!(
                    "  found in {} ms, depth {}",
                    stats.elapsed_ms,
                    depth(&synthesis.circuit, &DepthModel::default())
                );
                for line in emit_gatelist(&synthesis.circuit).lines() {
                    println!("  {line}");
                }
            }
            SynthOutcome::BudgetNotMet { best, stats } => {
                println!("  no such circuit ({} ms)", stats.elapsed_ms);
                if let Some(b) = best {
                    println!(
                        "  cheapest within the bounds: {:?}, cost {}",
                        b.counts, b.cost
                    );
                }
            }
            SynthOutcome::NotFound { .. } => println!("  nothing within the bounds"),
        }
    }

    let out = synthesize(&table.forward, &SearchBudget::default()).unwrap();
    if let Some(s) = out.found() {
        println!(
            "S, minimum cost within 11 gates: {:?}, cost {}",
            s.counts, s.cost
        );
    }
}
