//! Gate counts, weighted cost and ASAP depth.

use serde::{Deserialize, Serialize};

use super::{Circuit, Gate, GateKind};

/// A non-negative weight per gate kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateWeights {
    pub x: u64,
    pub cx: u64,
    pub ccx: u64,
    pub swap: u64,
}

impl GateWeights {
    pub fn weight(&self, kind: GateKind) -> u64 {
        match kind {
            GateKind::X => self.x,
            GateKind::Cx => self.cx,
            GateKind::Ccx => self.ccx,
            GateKind::Swap => self.swap,
        }
    }
}

/// Quantum cost per gate: NOT 1, CNOT 1, Toffoli 5, SWAP free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel(pub GateWeights);

impl Default for CostModel {
    fn default() -> Self {
        CostModel(GateWeights {
            x: 1,
            cx: 1,
            ccx: 5,
            swap: 0,
        })
    }
}

/// Layers per gate. A Toffoli counts as its seven-layer decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthModel(pub GateWeights);

impl Default for DepthModel {
    fn default() -> Self {
        DepthModel(GateWeights {
            x: 1,
            cx: 1,
            ccx: 7,
            swap: 0,
        })
    }
}

impl DepthModel {
    /// Every Toffoli as one layer (T-depth view).
    pub fn unit() -> Self {
        DepthModel(GateWeights {
            x: 1,
            cx: 1,
            ccx: 1,
            swap: 0,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateCounts {
    pub x: u64,
    pub cx: u64,
    pub ccx: u64,
    pub swap: u64,
}

impl GateCounts {
    pub const fn new(x: u64, cx: u64, ccx: u64) -> Self {
        GateCounts {
            x,
            cx,
            ccx,
            swap: 0,
        }
    }

    pub fn bump(&mut self, kind: GateKind) {
        match kind {
            GateKind::X => self.x += 1,
            GateKind::Cx => self.cx += 1,
            GateKind::Ccx => self.ccx += 1,
            GateKind::Swap => self.swap += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.x + self.cx + self.ccx + self.swap
    }

    pub fn cost(&self, model: &CostModel) -> u64 {
        let w = &model.0;
        self.x * w.x + self.cx * w.cx + self.ccx * w.ccx + self.swap * w.swap
    }

    pub fn scaled(&self, k: u64) -> GateCounts {
        GateCounts {
            x: self.x * k,
            cx: self.cx * k,
            ccx: self.ccx * k,
            swap: self.swap * k,
        }
    }
}

impl std::ops::Add for GateCounts {
    type Output = GateCounts;
    fn add(self, o: GateCounts) -> GateCounts {
        GateCounts {
            x: self.x + o.x,
            cx: self.cx + o.cx,
            ccx: self.ccx + o.ccx,
            swap: self.swap + o.swap,
        }
    }
}

impl std::ops::AddAssign for GateCounts {
    fn add_assign(&mut self, o: GateCounts) {
        *self = *self + o;
    }
}

impl std::iter::Sum for GateCounts {
    fn sum<I: Iterator<Item = GateCounts>>(iter: I) -> GateCounts {
        iter.fold(GateCounts::default(), |a, b| a + b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub counts: GateCounts,
    pub total: u64,
    pub cost: u64,
    pub depth: u64,
    pub qubits: usize,
}

pub fn counts_of(gates: &[Gate]) -> GateCounts {
    let mut c = GateCounts::default();
    for g in gates {
        c.bump(g.kind());
    }
    c
}

pub fn counts(c: &Circuit) -> GateCounts {
    counts_of(c.gates())
}

pub fn cost(c: &Circuit, model: &CostModel) -> u64 {
    c.gates().iter().map(|g| model.0.weight(g.kind())).sum()
}

/// ASAP layering: a gate starts once all of its wires are free and holds
/// them for its weight. Zero-weight gates still synchronise their wires.
pub fn depth(c: &Circuit, model: &DepthModel) -> u64 {
    let mut finish = vec![0u64; c.wires()];
    let mut max = 0;
    for g in c.gates() {
        let start = g.operands().map(|w| finish[w]).max().unwrap_or(0);
        let end = start + model.0.weight(g.kind());
        for w in g.operands() {
            finish[w] = end;
        }
        max = max.max(end);
    }
    max
}

/// Total weight carried by each wire; the maximum is a lower bound on depth.
pub fn wire_load(c: &Circuit, model: &DepthModel) -> Vec<u64> {
    let mut load = vec![0u64; c.wires()];
    for g in c.gates() {
        for w in g.operands() {
            load[w] += model.0.weight(g.kind());
        }
    }
    load
}

pub fn report(c: &Circuit, cost_model: &CostModel, depth_model: &DepthModel) -> ResourceReport {
    let counts = counts(c);
    ResourceReport {
        counts,
        total: counts.total(),
        cost: cost(c, cost_model),
        depth: depth(c, depth_model),
        qubits: c.wires(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_counts(x: usize, cx: usize, ccx: usize) -> Circuit {
        let mut c = Circuit::new(4);
        for _ in 0..x {
            c.push(Gate::x(0)).unwrap();
        }
        for _ in 0..cx {
            c.push(Gate::cx(0, 1)).unwrap();
        }
        for _ in 0..ccx {
            c.push(Gate::ccx(0, 1, 2)).unwrap();
        }
        c
    }

    #[test]
    fn table_costs() {
        let m = CostModel::default();
        assert_eq!(cost(&with_counts(2, 5, 4), &m), 27);
        assert_eq!(cost(&with_counts(4, 2, 4), &m), 26);
        assert_eq!(cost(&Circuit::new(4), &m), 0);
    }

    #[test]
    fn depth_examples() {
        let m = DepthModel::default();
        let t = Circuit::from_gates(3, [Gate::ccx(0, 1, 2)]).unwrap();
        assert_eq!(depth(&t, &m), 7);
        let par = Circuit::from_gates(4, [Gate::cx(0, 1), Gate::cx(2, 3)]).unwrap();
        assert_eq!(depth(&par, &m), 1);
        let ser = Circuit::from_gates(4, [Gate::cx(0, 1), Gate::cx(1, 2)]).unwrap();
        assert_eq!(depth(&ser, &m), 2);
    }

    #[test]
    fn zero_weight_swap_orders_wires() {
        let m = DepthModel::default();
        // X on 0 (ends at 1), swap 0/1 (sync at 1), X on 1 starts at 1
        let c = Circuit::from_gates(2, [Gate::x(0), Gate::swap(0, 1), Gate::x(1)]).unwrap();
        assert_eq!(depth(&c, &m), 2);
        let d = Circuit::from_gates(2, [Gate::swap(0, 1)]).unwrap();
        assert_eq!(depth(&d, &m), 0);
    }

    #[test]
    fn empty_report() {
        let r = report(
            &Circuit::new(112),
            &CostModel::default(),
            &DepthModel::default(),
        );
        assert_eq!(r.qubits, 112);
        assert_eq!((r.total, r.cost, r.depth), (0, 0, 0));
    }
}
