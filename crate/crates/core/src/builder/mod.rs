//! Full SLIM circuits on 112 wires (plus ancillas in `ancilla` mode).
//!
//! Each round runs, on wire groups tracked by a logical-to-physical map:
//!
//! ```text
//! [schedule advance, rounds > 5]
//! KSP:    16 CX key -> D, four S-boxes on D, P (relabel), 16 CX D -> U
//! KSP^-1: P^-1 (relabel), four inverse S-boxes on D, 16 CX key -> D
//! [inverse schedule advance, mirrored mode, rounds > 5]
//! swap the U and D roles (relabel)
//! ```
//!
//! `ancilla` mode copies D onto 16 fresh wires instead of running KSP^-1.
//! Bit permutations and rotations never emit gates.

mod depth;
mod layout;
mod ledger;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cipher::{
    derive_mirrored_subkeys, derive_subkeys, encrypt_with, schedule_advance, Block32, KeyState80,
    MasterKey80, SubkeySchedule, DIRECT_ROUNDS, PBOX, PBOX_INV, ROUNDS, SBOX, SBOX_INV,
};
use crate::circuit::{invert_map, Circuit, CircuitError, Gate, Wire};
use crate::perm::Perm16;
use crate::sim::BasisState;
use crate::synth::{verify, SynthVerdict};

pub use depth::{
    closed_form, depth_summary, ClosedForm, ComponentDepths, DepthSummary, PUBLISHED_DEPTHS,
    PUBLISHED_DEPTH_TOTALS,
};
pub use layout::{CircuitLayout, LayoutSidecar, BASE_WIRES, DATA_WIRES, KEY_WIRES, LAYOUT_FORMAT};
pub use ledger::{
    compare_published, ledger, AncillaAccounting, ComponentCounts, Layer, Ledger, LedgerRow,
    PublishedRow, RowCheck, PUBLISHED_ANCILLA, PUBLISHED_ANCILLA_COPIES, PUBLISHED_TABLE,
};

const BUNDLED_SBOX: &str = include_str!("../../data/sbox.gates");
const BUNDLED_SBOX_INV: &str = include_str!("../../data/sbox_inv.gates");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("{name} circuit: {source}")]
    SboxFile {
        name: &'static str,
        source: CircuitError,
    },
    #[error("{name} circuit does not realise its table: {verdict:?}")]
    SboxMismatch {
        name: &'static str,
        verdict: SynthVerdict,
    },
    #[error("{name} circuit must have 4 wires, found {wires}")]
    SboxWidth { name: &'static str, wires: usize },
    #[error("round {0} is outside 1..=32")]
    InvalidRound(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuilderMode {
    /// One schedule advance per round; cipher semantics preserved.
    Functional,
    /// Advance in KSP and its inverse in KSP^-1 for rounds > 5.
    Mirrored,
    /// Fresh ancillas hold the copy of D; no KSP^-1.
    Ancilla,
}

impl BuilderMode {
    pub const ALL: [BuilderMode; 3] = [
        BuilderMode::Functional,
        BuilderMode::Mirrored,
        BuilderMode::Ancilla,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuilderMode::Functional => "functional",
            BuilderMode::Mirrored => "mirrored",
            BuilderMode::Ancilla => "ancilla",
        }
    }

    /// Round keys the data path of this mode consumes.
    pub fn reference_schedule(self, key: MasterKey80) -> SubkeySchedule {
        match self {
            BuilderMode::Mirrored => derive_mirrored_subkeys(key),
            _ => derive_subkeys(key),
        }
    }

    /// Classical model of the circuit's data output.
    pub fn reference_encrypt(self, pt: Block32, key: MasterKey80) -> Block32 {
        encrypt_with(pt, &self.reference_schedule(key))
    }

    /// Key-register contents once the whole circuit has run.
    pub fn final_key_state(self, key: MasterKey80) -> KeyState80 {
        let start = KeyState80::from_key(key);
        match self {
            BuilderMode::Mirrored => start,
            _ => (DIRECT_ROUNDS..ROUNDS).fold(start, |s, _| schedule_advance(s).0),
        }
    }
}

impl fmt::Display for BuilderMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuilderMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "functional" => Ok(BuilderMode::Functional),
            "mirrored" => Ok(BuilderMode::Mirrored),
            "ancilla" => Ok(BuilderMode::Ancilla),
            other => Err(format!(
                "unknown mode {other:?} (functional, mirrored, ancilla)"
            )),
        }
    }
}

/// 4-wire S-box and inverse S-box circuits, checked against their tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SboxCircuits {
    forward: Circuit,
    inverse: Circuit,
    forward_sha256: String,
    inverse_sha256: String,
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn check_sbox(name: &'static str, c: &Circuit, table: [u8; 16]) -> Result<(), BuildError> {
    if c.wires() != 4 {
        return Err(BuildError::SboxWidth {
            name,
            wires: c.wires(),
        });
    }
    let target = Perm16::new(table).expect("cipher tables are bijections");
    match verify(c, &target).expect("width checked") {
        SynthVerdict::Verified => Ok(()),
        verdict => Err(BuildError::SboxMismatch { name, verdict }),
    }
}

impl SboxCircuits {
    /// The circuits shipped in `data/`.
    pub fn bundled() -> Self {
        SboxCircuits::from_gatelists(BUNDLED_SBOX, BUNDLED_SBOX_INV)
            .expect("bundled S-box circuits are valid")
    }

    pub fn from_gatelists(forward: &str, inverse: &str) -> Result<Self, BuildError> {
        let parse = |name, text| {
            crate::circuit::parse_gatelist(text)
                .map_err(|source| BuildError::SboxFile { name, source })
        };
        let f = parse("S-box", forward)?;
        let i = parse("inverse S-box", inverse)?;
        let mut out = SboxCircuits::from_circuits(f, i)?;
        out.forward_sha256 = sha256_hex(forward);
        out.inverse_sha256 = sha256_hex(inverse);
        Ok(out)
    }

    pub fn from_circuits(forward: Circuit, inverse: Circuit) -> Result<Self, BuildError> {
        check_sbox("S-box", &forward, SBOX)?;
        check_sbox("inverse S-box", &inverse, SBOX_INV)?;
        let forward_sha256 = sha256_hex(&crate::circuit::emit_gatelist(&forward));
        let inverse_sha256 = sha256_hex(&crate::circuit::emit_gatelist(&inverse));
        Ok(SboxCircuits {
            forward,
            inverse,
            forward_sha256,
            inverse_sha256,
        })
    }

    pub fn forward(&self) -> &Circuit {
        &self.forward
    }

    pub fn inverse(&self) -> &Circuit {
        &self.inverse
    }

    /// SHA-256 of the source text of (forward, inverse).
    pub fn provenance(&self) -> (&str, &str) {
        (&self.forward_sha256, &self.inverse_sha256)
    }
}

/// Gate-index spans and wire maps of one round, for instrumented runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrace {
    pub round: usize,
    pub gates: Range<usize>,
    /// Up to and including the 16 CX into U.
    pub ksp_end: usize,
    /// After the key un-add (ancilla mode: same as `ksp_end`).
    pub restore_end: usize,
    pub d_before: Vec<Wire>,
    pub d_restored: Vec<Wire>,
    pub u_before: Vec<Wire>,
}

/// A built cipher circuit and where its inputs and outputs live.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlimCircuit {
    pub circuit: Circuit,
    pub mode: BuilderMode,
    pub layout: CircuitLayout,
    pub output: CircuitLayout,
    pub ancilla_wires: Vec<Wire>,
    pub rounds: Vec<RoundTrace>,
}

impl SlimCircuit {
    pub fn wires(&self) -> usize {
        self.circuit.wires()
    }

    pub fn encode(&self, block: Block32, key: KeyState80) -> BasisState {
        self.layout.encode(self.wires(), block, key)
    }

    pub fn decode(&self, state: &BasisState) -> Block32 {
        self.output.read_block(state)
    }

    /// Runs the circuit on `(pt, key)` with zeroed ancillas.
    pub fn simulate(&self, pt: Block32, key: MasterKey80) -> Block32 {
        let mut s = self.encode(pt, KeyState80::from_key(key));
        crate::sim::apply_gates(self.circuit.gates(), &mut s);
        self.decode(&s)
    }

    pub fn sidecar(&self) -> LayoutSidecar {
        LayoutSidecar {
            format: LAYOUT_FORMAT.to_string(),
            mode: self.mode,
            qubits: self.wires(),
            input: self.layout.clone(),
            output: self.output.clone(),
            ancilla_wires: self.ancilla_wires.clone(),
            roles: layout::roles(self.wires(), &self.layout, &self.ancilla_wires),
        }
    }

    /// A copy whose output roles sit on the input wires, with the
    /// accumulated relabeling appended as SWAP gates.
    pub fn materialized(&self) -> SlimCircuit {
        let n = self.wires();
        // dest[w] = wire the value currently on w has to end up on
        let mut dest: Vec<Wire> = (0..n).collect();
        let pairs = self.output.all_wires().zip(self.layout.all_wires());
        for (from, to) in pairs {
            dest[from] = to;
        }
        let mut circuit = self.circuit.clone();
        for g in swap_network(&dest) {
            circuit.push(g).expect("swap operands are in range");
        }
        SlimCircuit {
            circuit,
            output: self.layout.clone(),
            rounds: Vec::new(),
            ..self.clone()
        }
    }
}

/// SWAPs moving the value on wire `w` to wire `dest[w]`. `dest` must be a
/// bijection.
pub fn swap_network(dest: &[Wire]) -> Vec<Gate> {
    let n = dest.len();
    let source_of = invert_map(dest);
    // holder[w] = original wire whose value is on w now; at[v] = where v is
    let mut holder: Vec<Wire> = (0..n).collect();
    let mut at: Vec<Wire> = (0..n).collect();
    let mut gates = Vec::new();
    for target in 0..n {
        let v = source_of[target];
        let here = at[v];
        if here != target {
            gates.push(Gate::swap(here.min(target), here.max(target)));
            let displaced = holder[target];
            holder.swap(here, target);
            at[v] = target;
            at[displaced] = here;
        }
    }
    gates
}

/// Inverse of [`SlimCircuit`] gate by gate: consumes a ciphertext and the
/// final key-register state, returns the plaintext and the master key.
pub fn decrypt_circuit(sc: &SlimCircuit) -> SlimCircuit {
    SlimCircuit {
        circuit: sc.circuit.inverse(),
        mode: sc.mode,
        layout: sc.output.clone(),
        output: sc.layout.clone(),
        ancilla_wires: sc.ancilla_wires.clone(),
        rounds: Vec::new(),
    }
}

/// Logical-to-physical maps of the live registers.
#[derive(Debug, Clone)]
struct Registers {
    d: [Wire; 16],
    u: [Wire; 16],
    lsb: [Wire; 40],
    msb: [Wire; 40],
}

impl Registers {
    fn initial() -> Self {
        let l = CircuitLayout::initial();
        Registers {
            d: l.d_wires.try_into().expect("16 wires"),
            u: l.u_wires.try_into().expect("16 wires"),
            lsb: l.key_lsb_wires.try_into().expect("40 wires"),
            msb: l.key_msb_wires.try_into().expect("40 wires"),
        }
    }

    fn layout(&self) -> CircuitLayout {
        CircuitLayout {
            d_wires: self.d.to_vec(),
            u_wires: self.u.to_vec(),
            key_lsb_wires: self.lsb.to_vec(),
            key_msb_wires: self.msb.to_vec(),
        }
    }

    /// Wire of master-key bit `j` (valid while the schedule is untouched).
    fn key_bit(&self, j: usize) -> Wire {
        if j < 40 {
            self.lsb[j]
        } else {
            self.msb[j - 40]
        }
    }
}

/// Relabels so that logical bit `i` moves to logical position `map[i]`.
pub fn permute_map<const N: usize>(wires: &[Wire; N], map: &[u8; 16]) -> [Wire; N] {
    let mut out = *wires;
    for i in 0..N {
        out[map[i] as usize] = wires[i];
    }
    out
}

fn rotate_left<const N: usize>(wires: &[Wire; N], by: usize) -> [Wire; N] {
    let mut out = *wires;
    for i in 0..N {
        out[(i + by) % N] = wires[i];
    }
    out
}

/// Standalone key-schedule step on 80 wires: LSB half on 0..39, MSB half on
/// 40..79.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleCircuit {
    pub circuit: Circuit,
    pub lsb_in: Vec<Wire>,
    pub msb_in: Vec<Wire>,
    pub lsb_out: Vec<Wire>,
    pub msb_out: Vec<Wire>,
}

impl ScheduleCircuit {
    /// Wires holding the round key after the step.
    pub fn subkey_wires(&self) -> &[Wire] {
        &self.msb_out[..16]
    }
}

pub struct SlimBuilder<'a> {
    sboxes: &'a SboxCircuits,
}

impl<'a> SlimBuilder<'a> {
    pub fn new(sboxes: &'a SboxCircuits) -> Self {
        SlimBuilder { sboxes }
    }

    fn emit_sbox_layer(
        &self,
        c: &mut Circuit,
        wires: &[Wire],
        inverse: bool,
    ) -> Result<(), BuildError> {
        let sbox = if inverse {
            &self.sboxes.inverse
        } else {
            &self.sboxes.forward
        };
        for nibble in wires.chunks(4) {
            sbox.embed(nibble, c)?;
        }
        Ok(())
    }

    /// Four S-boxes (or inverse S-boxes) on a 16-wire register, lowest nibble first.
    pub fn build_sbox_layer(&self, inverse: bool) -> Circuit {
        let mut c = Circuit::new(16);
        let wires: Vec<Wire> = (0..16).collect();
        self.emit_sbox_layer(&mut c, &wires, inverse)
            .expect("16-wire layer");
        c
    }

    /// The P-box as explicit SWAPs on 16 wires.
    pub fn build_pbox_swaps(&self, inverse: bool) -> Circuit {
        let map = if inverse { PBOX_INV } else { PBOX };
        let dest: Vec<Wire> = map.iter().map(|&m| m as Wire).collect();
        Circuit::from_gates(16, swap_network(&dest)).expect("swap network fits")
    }

    fn emit_schedule_advance(
        &self,
        c: &mut Circuit,
        regs: &mut Registers,
    ) -> Result<(), BuildError> {
        regs.lsb = rotate_left(&regs.lsb, 2);
        for i in 0..40 {
            c.push(Gate::cx(regs.msb[i], regs.lsb[i]))?;
        }
        self.emit_sbox_layer(c, &regs.lsb, false)?;
        regs.msb = rotate_left(&regs.msb, 3);
        for i in 0..40 {
            c.push(Gate::cx(regs.lsb[i], regs.msb[i]))?;
        }
        Ok(())
    }

    pub fn build_schedule_advance(&self) -> ScheduleCircuit {
        let mut c = Circuit::new(80);
        let lsb: [Wire; 40] = std::array::from_fn(|i| i);
        let msb: [Wire; 40] = std::array::from_fn(|i| 40 + i);
        let mut regs = Registers {
            d: [0; 16],
            u: [0; 16],
            lsb,
            msb,
        };
        self.emit_schedule_advance(&mut c, &mut regs)
            .expect("80-wire schedule");
        ScheduleCircuit {
            circuit: c,
            lsb_in: lsb.to_vec(),
            msb_in: msb.to_vec(),
            lsb_out: regs.lsb.to_vec(),
            msb_out: regs.msb.to_vec(),
        }
    }

    fn emit_round(
        &self,
        c: &mut Circuit,
        regs: &mut Registers,
        round: usize,
        mode: BuilderMode,
        ancillas: &mut Vec<Wire>,
    ) -> Result<RoundTrace, BuildError> {
        if !(1..=ROUNDS).contains(&round) {
            return Err(BuildError::InvalidRound(round));
        }
        let start = c.len();
        let d_before = regs.d.to_vec();
        let u_before = regs.u.to_vec();
        let saved_key = (regs.lsb, regs.msb);
        let schedule_start = c.len();
        let subkey: [Wire; 16] = if round <= DIRECT_ROUNDS {
            std::array::from_fn(|k| regs.key_bit(16 * (round - 1) + k))
        } else {
            self.emit_schedule_advance(c, regs)?;
            std::array::from_fn(|k| regs.msb[k])
        };
        let schedule_end = c.len();

        let copy = if mode == BuilderMode::Ancilla {
            let fresh: Vec<Wire> = c.add_wires(16).collect();
            for (&d, &a) in regs.d.iter().zip(&fresh) {
                c.push(Gate::cx(d, a))?;
            }
            ancillas.extend(&fresh);
            Some(fresh)
        } else {
            None
        };

        for (&k, &d) in subkey.iter().zip(&regs.d) {
            c.push(Gate::cx(k, d))?;
        }
        self.emit_sbox_layer(c, &regs.d, false)?;
        regs.d = permute_map(&regs.d, &PBOX);
        for k in 0..16 {
            c.push(Gate::cx(regs.d[k], regs.u[k]))?;
        }
        let ksp_end = c.len();

        if let Some(fresh) = copy {
            let new_u: [Wire; 16] = fresh.try_into().expect("16 ancillas");
            regs.d = regs.u;
            regs.u = new_u;
            return Ok(RoundTrace {
                round,
                gates: start..c.len(),
                ksp_end,
                restore_end: ksp_end,
                d_before: d_before.clone(),
                d_restored: d_before,
                u_before,
            });
        }

        regs.d = permute_map(&regs.d, &PBOX_INV);
        self.emit_sbox_layer(c, &regs.d, true)?;
        for (&k, &d) in subkey.iter().zip(&regs.d) {
            c.push(Gate::cx(k, d))?;
        }
        let restore_end = c.len();
        let d_restored = regs.d.to_vec();

        if mode == BuilderMode::Mirrored && round > DIRECT_ROUNDS {
            let undo: Vec<Gate> = c.gates()[schedule_start..schedule_end]
                .iter()
                .rev()
                .copied()
                .collect();
            for g in undo {
                c.push(g)?;
            }
            (regs.lsb, regs.msb) = saved_key;
        }

        std::mem::swap(&mut regs.d, &mut regs.u);
        Ok(RoundTrace {
            round,
            gates: start..c.len(),
            ksp_end,
            restore_end,
            d_before,
            d_restored,
            u_before,
        })
    }

    /// A single round on a fresh 112-wire register. For rounds > 5 the key
    /// register is treated as the splitter state.
    pub fn build_round(&self, round: usize, mode: BuilderMode) -> Result<SlimCircuit, BuildError> {
        let mut c = Circuit::new(BASE_WIRES);
        let mut regs = Registers::initial();
        let mut ancillas = Vec::new();
        let trace = self.emit_round(&mut c, &mut regs, round, mode, &mut ancillas)?;
        Ok(SlimCircuit {
            circuit: c,
            mode,
            layout: CircuitLayout::initial(),
            output: regs.layout(),
            ancilla_wires: ancillas,
            rounds: vec![trace],
        })
    }

    pub fn build_cipher(&self, mode: BuilderMode) -> Result<SlimCircuit, BuildError> {
        let mut c = Circuit::new(BASE_WIRES);
        let mut regs = Registers::initial();
        let mut ancillas = Vec::new();
        let mut rounds = Vec::with_capacity(ROUNDS);
        for round in 1..=ROUNDS {
            rounds.push(self.emit_round(&mut c, &mut regs, round, mode, &mut ancillas)?);
        }
        let layout = CircuitLayout::initial();
        for (w, role) in layout::roles(c.wires(), &layout, &ancillas)
            .into_iter()
            .enumerate()
        {
            c.set_label(w, role);
        }
        Ok(SlimCircuit {
            circuit: c,
            mode,
            layout,
            output: regs.layout(),
            ancilla_wires: ancillas,
            rounds,
        })
    }
}

#[cfg(test)]
mod tests;
