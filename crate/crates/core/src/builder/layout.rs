//! Wire assignment for the 112-wire cipher register and its JSON sidecar.

use serde::{Deserialize, Serialize};

use crate::cipher::{Block32, KeyState80, MasterKey80, Word16};
use crate::circuit::Wire;
use crate::sim::BasisState;

use super::BuilderMode;

pub const DATA_WIRES: usize = 32;
pub const KEY_WIRES: usize = 80;
pub const BASE_WIRES: usize = DATA_WIRES + KEY_WIRES;

pub const LAYOUT_FORMAT: &str = "slimq-layout/1";

/// Which physical wire carries each logical bit. Index `i` of every array
/// is logical bit `i` (LSB first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitLayout {
    pub d_wires: Vec<Wire>,
    pub u_wires: Vec<Wire>,
    pub key_lsb_wires: Vec<Wire>,
    pub key_msb_wires: Vec<Wire>,
}

impl CircuitLayout {
    /// Plaintext on wires 0..31 (D = bits 0..15, U = bits 16..31), key bit
    /// `j` on wire `32 + j`.
    pub fn initial() -> Self {
        CircuitLayout {
            d_wires: (0..16).collect(),
            u_wires: (16..32).collect(),
            key_lsb_wires: (32..72).collect(),
            key_msb_wires: (72..112).collect(),
        }
    }

    pub fn all_wires(&self) -> impl Iterator<Item = Wire> + '_ {
        self.d_wires
            .iter()
            .chain(&self.u_wires)
            .chain(&self.key_lsb_wires)
            .chain(&self.key_msb_wires)
            .copied()
    }

    pub fn is_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.all_wires().all(|w| seen.insert(w))
    }

    pub fn write_block(&self, state: &mut BasisState, block: Block32) {
        state.write(&self.d_wires, u128::from(block.down.0));
        state.write(&self.u_wires, u128::from(block.up.0));
    }

    pub fn write_key_state(&self, state: &mut BasisState, key: KeyState80) {
        state.write(&self.key_lsb_wires, u128::from(key.lsb_half));
        state.write(&self.key_msb_wires, u128::from(key.msb_half));
    }

    pub fn read_block(&self, state: &BasisState) -> Block32 {
        Block32::new(
            Word16(state.read(&self.u_wires) as u16),
            Word16(state.read(&self.d_wires) as u16),
        )
    }

    pub fn read_key_state(&self, state: &BasisState) -> KeyState80 {
        KeyState80::new(
            state.read(&self.key_msb_wires) as u64,
            state.read(&self.key_lsb_wires) as u64,
        )
    }

    /// A basis state with `block` and `key` loaded and every other wire zero.
    pub fn encode(&self, wires: usize, block: Block32, key: KeyState80) -> BasisState {
        let mut s = BasisState::zeros(wires);
        self.write_block(&mut s, block);
        self.write_key_state(&mut s, key);
        s
    }

    pub fn encode_key(&self, wires: usize, block: Block32, key: MasterKey80) -> BasisState {
        self.encode(wires, block, KeyState80::from_key(key))
    }
}

/// JSON sidecar written next to exported circuit files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutSidecar {
    pub format: String,
    pub mode: BuilderMode,
    pub qubits: usize,
    pub input: CircuitLayout,
    pub output: CircuitLayout,
    pub ancilla_wires: Vec<Wire>,
    /// Role of every wire at circuit input, indexed by wire.
    pub roles: Vec<String>,
}

impl LayoutSidecar {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serialises") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub(crate) fn roles(wires: usize, layout: &CircuitLayout, ancillas: &[Wire]) -> Vec<String> {
    let mut roles = vec![String::new(); wires];
    let groups: [(&str, &[Wire]); 4] = [
        ("d", &layout.d_wires),
        ("u", &layout.u_wires),
        ("key_lsb", &layout.key_lsb_wires),
        ("key_msb", &layout.key_msb_wires),
    ];
    for (name, group) in groups {
        for (i, &w) in group.iter().enumerate() {
            roles[w] = format!("{name}[{i}]");
        }
    }
    for (i, &w) in ancillas.iter().enumerate() {
        roles[w] = format!("ancilla[{i}]");
    }
    roles
}
