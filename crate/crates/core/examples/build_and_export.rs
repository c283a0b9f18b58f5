//! Build every circuit mode and export gate-list, OpenQASM and layout files.

use slimq::builder::{BuilderMode, SboxCircuits, SlimBuilder};
use slimq::circuit::{counts, emit_gatelist, emit_openqasm2};

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("slimq-export");
    std::fs::create_dir_all(&dir)?;
    let sboxes = SboxCircuits::bundled();
    let builder = SlimBuilder::new(&sboxes);
    for mode in BuilderMode::ALL {
        let sc = builder.build_cipher(mode).unwrap();
        let base = dir.join(mode.name());
        std::fs::write(base.with_extension("gates"), emit_gatelist(&sc.circuit))?;
        std::fs::write(base.with_extension("qasm"), emit_openqasm2(&sc.circuit))?;
        std::fs::write(base.with_extension("layout.json"), sc.sidecar().to_json())?;
        println!(
            "{:<10} {:>3} qubits {:>6} gates {:?}",
            mode.name(),
            sc.wires(),
            sc.circuit.len(),
            counts(&sc.circuit)
        );
        println!("           U_32 on {:?}", sc.output.u_wires);
        println!("           D_32 on {:?}", sc.output.d_wires);
    }

    // relabelings turned into SWAP gates
    let m = builder
        .build_cipher(BuilderMode::Functional)
        .unwrap()
        .materialized();
    println!("materialized functional circuit: {:?}", counts(&m.circuit));
    println!("files in {}", dir.display());
    Ok(())
}
