//! The 80-wire key-schedule step next to its classical counterpart.

use slimq::builder::{SboxCircuits, SlimBuilder};
use slimq::cipher::{
    derive_mirrored_subkeys, derive_subkeys, schedule_advance, KeyState80, MasterKey80,
};
use slimq::circuit::counts;
use slimq::sim::BasisState;

fn main() {
    let sboxes = SboxCircuits::bundled();
    let step = SlimBuilder::new(&sboxes).build_schedule_advance();
    println!("one advance: {:?}", counts(&step.circuit));

    let key = MasterKey80::from_hex("fedcba9876543210fedc").unwrap();
    let mut state = KeyState80::from_key(key);
    let mut wires = BasisState::zeros(80);
    wires.write(&step.lsb_in, u128::from(state.lsb_half));
    wires.write(&step.msb_in, u128::from(state.msb_half));
    slimq::sim::apply_gates(step.circuit.gates(), &mut wires);
    let subkey;
    (state, subkey) = schedule_advance(state);
    println!(
        "circuit subkey {:04x}, classical {:04x}",
        wires.read(step.subkey_wires()),
        subkey.0
    );
    assert_eq!(wires.read(&step.msb_out) as u64, state.msb_half);

    let hex = |s: &[slimq::cipher::Word16]| {
        s.iter()
            .map(|k| format!("{:04x}", k.0))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("functional keys {}", hex(derive_subkeys(key).subkeys()));
    println!(
        "mirrored keys   {}",
        hex(derive_mirrored_subkeys(key).subkeys())
    );
}
