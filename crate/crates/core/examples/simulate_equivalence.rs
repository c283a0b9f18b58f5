//! Simulate full circuits against the classical cipher, then run them
//! backwards.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slimq::builder::{decrypt_circuit, BuilderMode, SboxCircuits, SlimBuilder};
use slimq::cipher::{Block32, MasterKey80};
use slimq::sim::{check_equivalence, run};

fn main() {
    let sboxes = SboxCircuits::bundled();
    let builder = SlimBuilder::new(&sboxes);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for mode in BuilderMode::ALL {
        let sc = builder.build_cipher(mode).unwrap();
        let mismatches = (0..500)
            .filter(|_| {
                let pt = Block32::random(&mut rng);
                let key = MasterKey80::random(&mut rng);
                sc.simulate(pt, key) != mode.reference_encrypt(pt, key)
            })
            .count();
        println!("{:<10} 500 cases, {mismatches} mismatches", mode.name());

        let back = decrypt_circuit(&sc);
        let round_trip = check_equivalence(
            &sc.circuit.compose(&back.circuit).unwrap(),
            |s| s.clone(),
            100,
            1,
        );
        println!("           circuit then its reverse on 100 random states: {round_trip:?}");
    }

    let sc = builder.build_cipher(BuilderMode::Functional).unwrap();
    let back = decrypt_circuit(&sc);
    let pt = Block32::from_hex("01234567").unwrap();
    let key = MasterKey80::from_hex("00000000000000000000").unwrap();
    let ct = sc.simulate(pt, key);
    let state = back.encode(ct, BuilderMode::Functional.final_key_state(key));
    let restored = back.decode(&run(&back.circuit, &state).unwrap());
    println!("{pt} -> {ct} -> {restored}");
    assert_eq!(restored, pt);
}
