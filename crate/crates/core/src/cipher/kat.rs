//! Known-answer-test files: `<key-hex20> <pt-hex8> <ct-hex8>` per line.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{decrypt, encrypt, Block32, HexError, MasterKey80};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KatError {
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KatRecord {
    pub key: MasterKey80,
    pub pt: Block32,
    pub ct: Block32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatFailure {
    pub line: usize,
    pub record: KatRecord,
    pub computed: Block32,
}

/// Deterministic KAT text from a ChaCha8 stream seeded with `seed`.
pub fn kat_generate(count: usize, seed: u64) -> Result<String, KatError> {
    if count == 0 {
        return Err(KatError::ZeroCount);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    out.push_str("# SLIM known-answer tests: key pt ct (hex, most significant digit first)\n");
    let _ = writeln!(out, "# generator chacha8 seed {seed} count {count}");
    for _ in 0..count {
        let key = MasterKey80::random(&mut rng);
        let pt = Block32::random(&mut rng);
        let ct = encrypt(pt, key);
        let _ = writeln!(out, "{key} {pt} {ct}");
    }
    Ok(out)
}

/// Parses records; each entry carries its 1-based line number.
pub fn parse_kat(text: &str) -> Result<Vec<(usize, KatRecord)>, KatError> {
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(KatError::Parse {
                line,
                reason: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        let err = |e: HexError| KatError::Parse {
            line,
            reason: e.to_string(),
        };
        records.push((
            line,
            KatRecord {
                key: MasterKey80::from_hex(fields[0]).map_err(err)?,
                pt: Block32::from_hex(fields[1]).map_err(err)?,
                ct: Block32::from_hex(fields[2]).map_err(err)?,
            },
        ));
    }
    Ok(records)
}

/// Replays every record; returns the failing ones.
pub fn verify_kat(text: &str) -> Result<Vec<KatFailure>, KatError> {
    let records = parse_kat(text)?;
    Ok(records
        .into_iter()
        .filter_map(|(line, record)| {
            let computed = encrypt(record.pt, record.key);
            let ok = computed == record.ct && decrypt(record.ct, record.key) == record.pt;
            (!ok).then_some(KatFailure {
                line,
                record,
                computed,
            })
        })
        .collect())
}
