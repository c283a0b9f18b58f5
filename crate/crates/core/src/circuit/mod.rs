//! Reversible circuits over NOT, CNOT, Toffoli and SWAP.

mod analysis;
mod gatelist;
#[cfg(test)]
mod properties;
mod qasm;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use analysis::{
    cost, counts, counts_of, depth, report, wire_load, CostModel, DepthModel, GateCounts,
    GateWeights, ResourceReport,
};
pub use gatelist::{emit_gatelist, parse_gatelist};
pub use qasm::emit_openqasm2;

pub type Wire = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate {gate}: wire {wire} out of range for a {wires}-wire circuit")]
    WireOutOfRange {
        gate: Gate,
        wire: Wire,
        wires: usize,
    },
    #[error("gate {0}: operands must be distinct")]
    DuplicateOperand(Gate),
    #[error("wire count mismatch: {left} vs {right}")]
    WireCountMismatch { left: usize, right: usize },
    #[error("relabeling is not a bijection on {wires} wires")]
    NotBijective { wires: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    Cx,
    Ccx,
    Swap,
}

impl GateKind {
    pub const ALL: [GateKind; 4] = [GateKind::X, GateKind::Cx, GateKind::Ccx, GateKind::Swap];

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Cx => "CX",
            GateKind::Ccx => "CCX",
            GateKind::Swap => "SWAP",
        }
    }
}

/// One gate. The derived ordering is X < CX < CCX < SWAP, then by operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    X { target: Wire },
    Cx { control: Wire, target: Wire },
    Ccx { controls: [Wire; 2], target: Wire },
    Swap { a: Wire, b: Wire },
}

impl Gate {
    pub fn x(target: Wire) -> Gate {
        Gate::X { target }
    }

    pub fn cx(control: Wire, target: Wire) -> Gate {
        Gate::Cx { control, target }
    }

    pub fn ccx(c1: Wire, c2: Wire, target: Wire) -> Gate {
        Gate::Ccx {
            controls: [c1, c2],
            target,
        }
    }

    pub fn swap(a: Wire, b: Wire) -> Gate {
        Gate::Swap { a, b }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X { .. } => GateKind::X,
            Gate::Cx { .. } => GateKind::Cx,
            Gate::Ccx { .. } => GateKind::Ccx,
            Gate::Swap { .. } => GateKind::Swap,
        }
    }

    /// Operands in textual order (controls first, target last).
    pub fn operands(&self) -> impl Iterator<Item = Wire> {
        let (buf, n): ([Wire; 3], usize) = match *self {
            Gate::X { target } => ([target, 0, 0], 1),
            Gate::Cx { control, target } => ([control, target, 0], 2),
            Gate::Ccx {
                controls: [a, b],
                target,
            } => ([a, b, target], 3),
            Gate::Swap { a, b } => ([a, b, 0], 2),
        };
        buf.into_iter().take(n)
    }

    pub fn map_wires(&self, f: impl Fn(Wire) -> Wire) -> Gate {
        match *self {
            Gate::X { target } => Gate::X { target: f(target) },
            Gate::Cx { control, target } => Gate::Cx {
                control: f(control),
                target: f(target),
            },
            Gate::Ccx {
                controls: [a, b],
                target,
            } => Gate::Ccx {
                controls: [f(a), f(b)],
                target: f(target),
            },
            Gate::Swap { a, b } => Gate::Swap { a: f(a), b: f(b) },
        }
    }

    pub fn validate(&self, wires: usize) -> Result<(), CircuitError> {
        let ops: Vec<Wire> = self.operands().collect();
        for (i, &w) in ops.iter().enumerate() {
            if w >= wires {
                return Err(CircuitError::WireOutOfRange {
                    gate: *self,
                    wire: w,
                    wires,
                });
            }
            if ops[..i].contains(&w) {
                return Err(CircuitError::DuplicateOperand(*self));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().mnemonic())?;
        for w in self.operands() {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

/// An ordered gate list over a fixed number of wires.
///
/// Gates are validated on insertion, so every stored gate refers to
/// in-range, pairwise-distinct wires.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    wires: usize,
    gates: Vec<Gate>,
    labels: BTreeMap<Wire, String>,
}

impl Circuit {
    pub fn new(wires: usize) -> Self {
        Circuit {
            wires,
            gates: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn from_gates(
        wires: usize,
        gates: impl IntoIterator<Item = Gate>,
    ) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(wires);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn labels(&self) -> &BTreeMap<Wire, String> {
        &self.labels
    }

    pub fn set_label(&mut self, wire: Wire, name: impl Into<String>) {
        self.labels.insert(wire, name.into());
    }

    /// Grows the wire count; existing gates stay valid.
    pub fn add_wires(&mut self, extra: usize) -> std::ops::Range<Wire> {
        let start = self.wires;
        self.wires += extra;
        start..self.wires
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.validate(self.wires)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend_from(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        if other.wires > self.wires {
            return Err(CircuitError::WireCountMismatch {
                left: self.wires,
                right: other.wires,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Copy of `self` with `gate` appended.
    pub fn append(&self, gate: Gate) -> Result<Circuit, CircuitError> {
        let mut c = self.clone();
        c.push(gate)?;
        Ok(c)
    }

    /// `self` first, then `next`.
    pub fn compose(&self, next: &Circuit) -> Result<Circuit, CircuitError> {
        if self.wires != next.wires {
            return Err(CircuitError::WireCountMismatch {
                left: self.wires,
                right: next.wires,
            });
        }
        let mut c = self.clone();
        c.gates.extend_from_slice(&next.gates);
        for (w, name) in &next.labels {
            c.labels.entry(*w).or_insert_with(|| name.clone());
        }
        Ok(c)
    }

    /// Every gate is an involution, so reversing the list inverts the circuit.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            wires: self.wires,
            gates: self.gates.iter().rev().copied().collect(),
            labels: self.labels.clone(),
        }
    }

    /// Replaces each operand `w` by `perm[w]`.
    pub fn relabel(&self, perm: &[Wire]) -> Result<Circuit, CircuitError> {
        if perm.len() != self.wires || !is_bijection(perm) {
            return Err(CircuitError::NotBijective { wires: self.wires });
        }
        Ok(Circuit {
            wires: self.wires,
            gates: self
                .gates
                .iter()
                .map(|g| g.map_wires(|w| perm[w]))
                .collect(),
            labels: self
                .labels
                .iter()
                .map(|(w, n)| (perm[*w], n.clone()))
                .collect(),
        })
    }

    /// Embeds this circuit into a wider one, mapping local wire `i` to `targets[i]`.
    pub fn embed(&self, targets: &[Wire], into: &mut Circuit) -> Result<(), CircuitError> {
        if targets.len() != self.wires {
            return Err(CircuitError::WireCountMismatch {
                left: self.wires,
                right: targets.len(),
            });
        }
        for g in &self.gates {
            into.push(g.map_wires(|w| targets[w]))?;
        }
        Ok(())
    }
}

pub fn is_bijection(perm: &[Wire]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter()
        .all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
}

/// Inverse of a wire permutation given as an image table.
pub fn invert_map(perm: &[Wire]) -> Vec<Wire> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}
