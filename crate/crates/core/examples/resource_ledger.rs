//! Resource tables for each mode and the comparison with the published
//! figures.

use slimq::builder::{BuilderMode, SboxCircuits};
use slimq::report::{paper_checks, Components, ReportDocument};

fn main() {
    let sboxes = SboxCircuits::bundled();
    for mode in BuilderMode::ALL {
        let doc = ReportDocument::new(&sboxes, mode, Components::Built).unwrap();
        println!("{}", doc.to_text().unwrap());
    }
    for source in [Components::Built, Components::Published] {
        println!("published figures from {source:?} components:");
        for c in paper_checks(&sboxes, source) {
            println!("  {:<24} {}", c.item, if c.ok { "ok" } else { "differs" });
        }
    }
}
