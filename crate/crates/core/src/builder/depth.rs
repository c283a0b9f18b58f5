//! Per-round and whole-circuit depth, measured and in closed form.

use serde::{Deserialize, Serialize};

use crate::cipher::{DIRECT_ROUNDS, ROUNDS};
use crate::circuit::{depth, Circuit, DepthModel};

use super::{BuildError, BuilderMode, SboxCircuits, SlimBuilder, SlimCircuit};

/// Published (S, S^-1, K) component depths.
pub const PUBLISHED_DEPTHS: ComponentDepths = ComponentDepths {
    sbox: 33,
    sbox_inv: 32,
    schedule: 35,
};

/// Published (first five rounds, remaining rounds, all rounds) depth totals.
pub const PUBLISHED_DEPTH_TOTALS: (u64, u64, u64) = (340, 3726, 4066);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDepths {
    pub sbox: u64,
    pub sbox_inv: u64,
    pub schedule: u64,
}

impl ComponentDepths {
    pub fn measured(sboxes: &SboxCircuits, model: &DepthModel) -> Self {
        ComponentDepths {
            sbox: depth(sboxes.forward(), model),
            sbox_inv: depth(sboxes.inverse(), model),
            schedule: depth(
                &SlimBuilder::new(sboxes).build_schedule_advance().circuit,
                model,
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub early_round: u64,
    pub late_round: u64,
    pub early_total: u64,
    pub late_total: u64,
    pub total: u64,
}

/// Rounds laid end to end. No-ancilla rounds cost
/// `d(S) + d(S^-1) + 3`, plus `d(K)` once per late round (functional) or
/// twice (mirrored). Ancilla rounds cost `d(S) + 3`, plus `d(K)` late.
pub fn closed_form(mode: BuilderMode, d: &ComponentDepths) -> ClosedForm {
    let (early_round, k_layers) = match mode {
        BuilderMode::Functional => (d.sbox + d.sbox_inv + 3, 1),
        BuilderMode::Mirrored => (d.sbox + d.sbox_inv + 3, 2),
        BuilderMode::Ancilla => (d.sbox + 3, 1),
    };
    let late_round = early_round + k_layers * d.schedule;
    let early_total = DIRECT_ROUNDS as u64 * early_round;
    let late_total = (ROUNDS - DIRECT_ROUNDS) as u64 * late_round;
    ClosedForm {
        early_round,
        late_round,
        early_total,
        late_total,
        total: early_total + late_total,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSummary {
    pub mode: BuilderMode,
    pub components: ComponentDepths,
    pub closed_form: ClosedForm,
    pub published_closed_form: ClosedForm,
    /// Depth of each round's gates scheduled on their own.
    pub per_round: Vec<u64>,
    /// ASAP depth of the whole circuit; rounds may overlap.
    pub measured_total: u64,
}

impl DepthSummary {
    pub fn per_round_sum(&self) -> u64 {
        self.per_round.iter().sum()
    }
}

pub fn round_depths(sc: &SlimCircuit, model: &DepthModel) -> Vec<u64> {
    sc.rounds
        .iter()
        .map(|r| {
            let part = Circuit::from_gates(
                sc.wires(),
                sc.circuit.gates()[r.gates.clone()].iter().copied(),
            )
            .expect("sub-range of a valid circuit");
            depth(&part, model)
        })
        .collect()
}

pub fn depth_summary(
    sboxes: &SboxCircuits,
    mode: BuilderMode,
    model: &DepthModel,
) -> Result<DepthSummary, BuildError> {
    let sc = SlimBuilder::new(sboxes).build_cipher(mode)?;
    let components = ComponentDepths::measured(sboxes, model);
    Ok(DepthSummary {
        mode,
        components,
        closed_form: closed_form(mode, &components),
        published_closed_form: closed_form(mode, &PUBLISHED_DEPTHS),
        per_round: round_depths(&sc, model),
        measured_total: depth(&sc.circuit, model),
    })
}
