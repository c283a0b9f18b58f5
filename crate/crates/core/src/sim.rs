//! Classical simulation of NCT+SWAP circuits on computational basis states.
//!
//! Every gate maps basis states to basis states, so a state is just a bit
//! vector and a gate costs a couple of word operations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, Gate};

/// Widest circuit `permutation_of` will enumerate.
pub const MAX_EXHAUSTIVE_WIRES: usize = 20;

/// Name of the sampling generator, echoed in reports.
pub const SAMPLER: &str = "ChaCha8Rng::seed_from_u64";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("state has {state} bits but the circuit has {circuit} wires")]
    LengthMismatch { state: usize, circuit: usize },
    #[error("{0} wires is above the exhaustive enumeration bound of {MAX_EXHAUSTIVE_WIRES}")]
    TooWide(usize),
}

/// Bit `i` is the value on wire `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    words: Vec<u64>,
    len: usize,
}

impl BasisState {
    pub fn zeros(len: usize) -> Self {
        BasisState {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut s = BasisState::zeros(len);
        for i in 0..len.min(64) {
            s.set(i, (value >> i) & 1 == 1);
        }
        s
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut s = BasisState::zeros(len);
        for w in s.words.iter_mut() {
            *w = rng.gen();
        }
        s.clear_tail();
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Gathers the listed wires into an integer, first wire least significant.
    pub fn read(&self, wires: &[usize]) -> u128 {
        wires
            .iter()
            .enumerate()
            .fold(0u128, |acc, (k, &w)| acc | (u128::from(self.get(w)) << k))
    }

    pub fn write(&mut self, wires: &[usize], value: u128) {
        for (k, &w) in wires.iter().enumerate() {
            self.set(w, (value >> k) & 1 == 1);
        }
    }
}

impl std::fmt::Debug for BasisState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BasisState({})", self)
    }
}

impl std::fmt::Display for BasisState {
    /// Hex, most significant word first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:", self.len)?;
        for w in self.words.iter().rev() {
            write!(f, "{w:016x}")?;
        }
        Ok(())
    }
}

#[inline]
pub fn apply_gate(g: &Gate, s: &mut BasisState) {
    match *g {
        Gate::X { target } => s.flip(target),
        Gate::Cx { control, target } => {
            if s.get(control) {
                s.flip(target)
            }
        }
        Gate::Ccx {
            controls: [a, b],
            target,
        } => {
            if s.get(a) && s.get(b) {
                s.flip(target)
            }
        }
        Gate::Swap { a, b } => {
            let (va, vb) = (s.get(a), s.get(b));
            s.set(a, vb);
            s.set(b, va);
        }
    }
}

/// Applies a slice of gates in order; the caller guarantees the widths agree.
pub fn apply_gates(gates: &[Gate], s: &mut BasisState) {
    for g in gates {
        apply_gate(g, s);
    }
}

pub fn run(c: &Circuit, s: &BasisState) -> Result<BasisState, SimError> {
    let mut out = s.clone();
    run_in_place(c, &mut out)?;
    Ok(out)
}

pub fn run_in_place(c: &Circuit, s: &mut BasisState) -> Result<(), SimError> {
    if s.len() != c.wires() {
        return Err(SimError::LengthMismatch {
            state: s.len(),
            circuit: c.wires(),
        });
    }
    apply_gates(c.gates(), s);
    Ok(())
}

#[inline]
fn apply_gate_u32(g: &Gate, x: u32) -> u32 {
    match *g {
        Gate::X { target } => x ^ (1 << target),
        Gate::Cx { control, target } => x ^ (((x >> control) & 1) << target),
        Gate::Ccx {
            controls: [a, b],
            target,
        } => x ^ (((x >> a) & (x >> b) & 1) << target),
        Gate::Swap { a, b } => {
            let d = ((x >> a) ^ (x >> b)) & 1;
            x ^ (d << a) ^ (d << b)
        }
    }
}

/// Output for every input basis state, indexed by the input as an integer.
pub fn permutation_of(c: &Circuit) -> Result<Vec<u32>, SimError> {
    if c.wires() > MAX_EXHAUSTIVE_WIRES {
        return Err(SimError::TooWide(c.wires()));
    }
    Ok((0..1u32 << c.wires())
        .map(|x| c.gates().iter().fold(x, |v, g| apply_gate_u32(g, v)))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Equivalent {
        samples: usize,
    },
    Mismatch {
        sample: usize,
        input: String,
        expected: String,
        got: String,
    },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }
}

/// Compares `c` against `oracle` on uniformly random basis states.
pub fn check_equivalence<F>(c: &Circuit, oracle: F, samples: usize, seed: u64) -> Verdict
where
    F: Fn(&BasisState) -> BasisState + Sync,
{
    let wires = c.wires();
    check_equivalence_from(
        c,
        |rng| BasisState::random(wires, rng),
        oracle,
        samples,
        seed,
    )
}

/// Like [`check_equivalence`] with a caller-chosen input sampler. Inputs are
/// drawn sequentially from one generator; the reported mismatch is the one
/// with the smallest sample index, independent of thread scheduling.
pub fn check_equivalence_from<G, F>(
    c: &Circuit,
    mut sample: G,
    oracle: F,
    samples: usize,
    seed: u64,
) -> Verdict
where
    G: FnMut(&mut ChaCha8Rng) -> BasisState,
    F: Fn(&BasisState) -> BasisState + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<BasisState> = (0..samples).map(|_| sample(&mut rng)).collect();
    let first = inputs
        .par_iter()
        .enumerate()
        .filter_map(|(i, input)| {
            let expected = oracle(input);
            let got = match run(c, input) {
                Ok(s) => s,
                Err(_) => BasisState::zeros(0),
            };
            (got != expected).then_some((i, expected, got))
        })
        .min_by_key(|(i, _, _)| *i);
    match first {
        None => Verdict::Equivalent { samples },
        Some((i, expected, got)) => Verdict::Mismatch {
            sample: i,
            input: inputs[i].to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
        },
    }
}
