//! The classical cipher: one block, the round keys, and a KAT file.

use slimq::cipher::{
    decrypt, derive_subkeys, encrypt, kat_generate, verify_kat, Block32, MasterKey80,
};

fn main() {
    let key = MasterKey80::from_hex("0123456789abcdef0123").unwrap();
    let pt = Block32::from_hex("deadbeef").unwrap();
    let ct = encrypt(pt, key);
    println!("key {key}\npt  {pt}\nct  {ct}");
    assert_eq!(decrypt(ct, key), pt);

    let keys: Vec<String> = derive_subkeys(key)
        .subkeys()
        .iter()
        .map(|k| format!("{:04x}", k.0))
        .collect();
    println!("round keys {}", keys.join(" "));

    let kat = kat_generate(4, 7).unwrap();
    print!("{kat}");
    assert!(verify_kat(&kat).unwrap().is_empty());

    // flip one ciphertext digit and replay
    let mut lines: Vec<String> = kat.lines().map(str::to_string).collect();
    let last = lines.last_mut().unwrap();
    let flipped = if last.ends_with('0') { '1' } else { '0' };
    last.pop();
    last.push(flipped);
    for f in verify_kat(&lines.join("\n")).unwrap() {
        println!(
            "line {} fails: expected {} computed {}",
            f.line, f.record.ct, f.computed
        );
    }
}
