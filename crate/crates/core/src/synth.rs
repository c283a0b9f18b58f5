//! Cost-bounded bidirectional search for in-place NCT circuits realising a
//! 4-bit bijection.
//!
//! A permutation is held as four 16-bit bit planes packed into a `u64`:
//! bit `x` of plane `k` is bit `k` of the image of `x`. Post-composing a gate
//! is then one or two word operations.
//!
//! For a `g`-gate circuit `g_1 .. g_g` the search enumerates prefixes of
//! length `ceil(g/2)` from the identity and suffixes of length `floor(g/2)`
//! backwards from the target. Because every gate is an involution, undoing
//! the suffix from the target is just applying `g_g, g_(g-1), ..` to it, and
//! a match happens when a prefix reaches the same table. Suffixes live in a
//! hash store; prefixes probe it.
//!
//! Both halves skip immediately repeated gates and require commuting
//! adjacent gates to appear in alphabet order, which keeps at least one
//! representative of every irredundant circuit.
//!
//! Among solutions the result is the minimum under (cost, gate count,
//! gate-index sequence); the alphabet is sorted X < CX < CCX, then by
//! operands.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, CostModel, Gate, GateCounts, GateKind};
use crate::perm::Perm16;
use crate::sim::permutation_of;

const WIDTH: usize = 4;
const PLANE: u64 = 0xFFFF;
const IDENTITY_PLANES: u64 = 0xAAAA | 0xCCCC << 16 | 0xF0F0 << 32 | 0xFF00 << 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("unsupported width {0} (1..=5 wires)")]
    UnsupportedWidth(usize),
    #[error("circuit has {0} wires, expected 4")]
    NotFourWires(usize),
    #[error("budget allows at most 12 gates, got {0}")]
    TooManyGates(usize),
}

/// All distinct NCT gates on `wires` lines, sorted.
pub fn gate_alphabet(wires: usize) -> Result<Vec<Gate>, SynthError> {
    if !(1..=5).contains(&wires) {
        return Err(SynthError::UnsupportedWidth(wires));
    }
    let mut gates = Vec::new();
    for t in 0..wires {
        gates.push(Gate::x(t));
        for c in (0..wires).filter(|&c| c != t) {
            gates.push(Gate::cx(c, t));
        }
        for a in 0..wires {
            for b in (a + 1)..wires {
                if a != t && b != t {
                    gates.push(Gate::ccx(a, b, t));
                }
            }
        }
    }
    gates.sort();
    Ok(gates)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_cost: u64,
    pub max_gates: usize,
    /// Exact (X, CX, CCX) counts the circuit must have.
    pub multiset: Option<GateCounts>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn new(max_cost: u64, max_gates: usize) -> Self {
        SearchBudget {
            max_cost,
            max_gates,
            multiset: None,
            time_limit: None,
        }
    }

    /// Budget pinned to exact counts; cost and length follow from them.
    pub fn exact(counts: GateCounts) -> Self {
        SearchBudget {
            max_cost: counts.cost(&CostModel::default()),
            max_gates: (counts.x + counts.cx + counts.ccx) as usize,
            multiset: Some(counts),
            time_limit: None,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(27, 11)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub stored_suffixes: u64,
    pub probed_prefixes: u64,
    pub matches: u64,
    pub lengths_searched: usize,
    pub elapsed_ms: u64,
    pub timed_out: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesis {
    pub circuit: Circuit,
    pub counts: GateCounts,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthOutcome {
    Found {
        synthesis: Synthesis,
        stats: SearchStats,
    },
    /// The exact multiset was not reached; `best` is the cheapest circuit
    /// within the cost and length bounds, when one exists.
    BudgetNotMet {
        best: Option<Synthesis>,
        stats: SearchStats,
    },
    NotFound {
        stats: SearchStats,
    },
}

impl SynthOutcome {
    pub fn found(&self) -> Option<&Synthesis> {
        match self {
            SynthOutcome::Found { synthesis, .. } => Some(synthesis),
            _ => None,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            SynthOutcome::Found { stats, .. }
            | SynthOutcome::BudgetNotMet { stats, .. }
            | SynthOutcome::NotFound { stats } => stats,
        }
    }
}

pub fn perm_to_planes(p: &Perm16) -> u64 {
    let mut planes = 0u64;
    for (x, &y) in p.images().iter().enumerate() {
        for k in 0..WIDTH {
            if (y >> k) & 1 == 1 {
                planes |= 1 << (16 * k + x);
            }
        }
    }
    planes
}

pub fn planes_to_perm(planes: u64) -> Option<Perm16> {
    let mut images = [0u8; 16];
    for (x, slot) in images.iter_mut().enumerate() {
        for k in 0..WIDTH {
            *slot |= (((planes >> (16 * k + x)) & 1) as u8) << k;
        }
    }
    Perm16::new(images).ok()
}

#[derive(Debug, Clone, Copy)]
struct Op {
    kind: GateKind,
    c1: u32,
    c2: u32,
    t: u32,
    cost: u64,
}

impl Op {
    #[inline(always)]
    fn apply(&self, s: u64) -> u64 {
        let flip = match self.kind {
            GateKind::X => PLANE,
            GateKind::Cx => (s >> (16 * self.c1)) & PLANE,
            _ => (s >> (16 * self.c1)) & (s >> (16 * self.c2)) & PLANE,
        };
        s ^ (flip << (16 * self.t))
    }
}

/// Gate alphabet compiled for the packed representation.
struct Alphabet {
    gates: Vec<Gate>,
    ops: Vec<Op>,
    commute: Vec<Vec<bool>>,
    min_cost: u64,
}

impl Alphabet {
    fn new(model: &CostModel) -> Self {
        let gates = gate_alphabet(WIDTH).expect("width 4 is supported");
        let ops: Vec<Op> = gates
            .iter()
            .map(|g| match *g {
                Gate::X { target } => Op {
                    kind: GateKind::X,
                    c1: 0,
                    c2: 0,
                    t: target as u32,
                    cost: model.0.x,
                },
                Gate::Cx { control, target } => Op {
                    kind: GateKind::Cx,
                    c1: control as u32,
                    c2: 0,
                    t: target as u32,
                    cost: model.0.cx,
                },
                Gate::Ccx {
                    controls: [a, b],
                    target,
                } => Op {
                    kind: GateKind::Ccx,
                    c1: a as u32,
                    c2: b as u32,
                    t: target as u32,
                    cost: model.0.ccx,
                },
                Gate::Swap { .. } => unreachable!("alphabet has no SWAP"),
            })
            .collect();
        let controls = |o: &Op| -> Vec<u32> {
            match o.kind {
                GateKind::X => vec![],
                GateKind::Cx => vec![o.c1],
                _ => vec![o.c1, o.c2],
            }
        };
        let commute = ops
            .iter()
            .map(|a| {
                ops.iter()
                    .map(|b| !controls(b).contains(&a.t) && !controls(a).contains(&b.t))
                    .collect()
            })
            .collect();
        let min_cost = ops.iter().map(|o| o.cost).min().unwrap_or(0);
        Alphabet {
            gates,
            ops,
            commute,
            min_cost,
        }
    }

    /// May `next` follow `prev` in a forward-ordered circuit?
    #[inline]
    fn forward_ok(&self, prev: Option<u8>, next: u8) -> bool {
        match prev {
            None => true,
            Some(p) => p != next && !(self.commute[p as usize][next as usize] && next < p),
        }
    }

    /// Suffix enumeration visits gates last-to-first.
    #[inline]
    fn backward_ok(&self, later: Option<u8>, next: u8) -> bool {
        match later {
            None => true,
            Some(l) => l != next && !(self.commute[l as usize][next as usize] && next > l),
        }
    }

    fn kind_index(&self, i: u8) -> usize {
        match self.ops[i as usize].kind {
            GateKind::X => 0,
            GateKind::Cx => 1,
            _ => 2,
        }
    }
}

type Tally = [u8; 3];

fn tally_tag(t: &Tally) -> u32 {
    u32::from(t[0]) | u32::from(t[1]) << 8 | u32::from(t[2]) << 16
}

/// Search-wide constraints for one gate length.
struct Pass<'a> {
    alpha: &'a Alphabet,
    cost_cap: u64,
    target_tally: Option<Tally>,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
}

impl Pass<'_> {
    fn tally_fits(&self, t: &Tally) -> bool {
        match &self.target_tally {
            Some(m) => t[0] <= m[0] && t[1] <= m[1] && t[2] <= m[2],
            None => true,
        }
    }

    fn out_of_time(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.stop.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }
}

/// Stored suffix: its cost and gate indices in circuit order.
#[derive(Clone)]
struct Suffix {
    cost: u64,
    gates: Vec<u8>,
}

type Store = HashMap<(u64, u32), Suffix>;

#[allow(clippy::too_many_arguments)]
fn fill_store(
    pass: &Pass,
    state: u64,
    remaining: usize,
    cost: u64,
    tally: &mut Tally,
    rev: &mut Vec<u8>,
    store: &mut Store,
    count: &mut u64,
) {
    if remaining == 0 {
        *count += 1;
        let tag = if pass.target_tally.is_some() {
            tally_tag(tally)
        } else {
            0
        };
        let gates: Vec<u8> = rev.iter().rev().copied().collect();
        let entry = store.entry((state, tag)).or_insert_with(|| Suffix {
            cost: u64::MAX,
            gates: Vec::new(),
        });
        if (cost, &gates) < (entry.cost, &entry.gates) {
            *entry = Suffix { cost, gates };
        }
        return;
    }
    if (*count).is_multiple_of(4096) && pass.out_of_time() {
        return;
    }
    let alpha = pass.alpha;
    let later = rev.last().copied();
    for i in 0..alpha.ops.len() as u8 {
        if !alpha.backward_ok(later, i) {
            continue;
        }
        let op = alpha.ops[i as usize];
        let c = cost + op.cost;
        if c + (remaining as u64 - 1) * alpha.min_cost > pass.cost_cap {
            continue;
        }
        let k = alpha.kind_index(i);
        tally[k] += 1;
        if pass.tally_fits(tally) {
            rev.push(i);
            fill_store(
                pass,
                op.apply(state),
                remaining - 1,
                c,
                tally,
                rev,
                store,
                count,
            );
            rev.pop();
        }
        tally[k] -= 1;
    }
}

struct Probe<'a> {
    pass: &'a Pass<'a>,
    store: &'a Store,
    suffix_min_cost: u64,
    probes: u64,
    matches: u64,
    best: Option<(u64, Vec<u8>)>,
}

impl Probe<'_> {
    fn walk(
        &mut self,
        state: u64,
        remaining: usize,
        cost: u64,
        tally: &mut Tally,
        seq: &mut Vec<u8>,
    ) {
        let pass = self.pass;
        if remaining == 0 {
            self.probes += 1;
            let tag = match &pass.target_tally {
                Some(m) => tally_tag(&[m[0] - tally[0], m[1] - tally[1], m[2] - tally[2]]),
                None => 0,
            };
            if let Some(suffix) = self.store.get(&(state, tag)) {
                let total = cost + suffix.cost;
                if total <= pass.cost_cap {
                    self.matches += 1;
                    let mut full = seq.clone();
                    full.extend_from_slice(&suffix.gates);
                    let better = match &self.best {
                        None => true,
                        Some((bc, bs)) => (total, &full) < (*bc, bs),
                    };
                    if better {
                        self.best = Some((total, full));
                    }
                }
            }
            return;
        }
        if self.probes.is_multiple_of(4096) && pass.out_of_time() {
            return;
        }
        let alpha = pass.alpha;
        let prev = seq.last().copied();
        for i in 0..alpha.ops.len() as u8 {
            if !alpha.forward_ok(prev, i) {
                continue;
            }
            let op = alpha.ops[i as usize];
            let c = cost + op.cost;
            if c + (remaining as u64 - 1) * alpha.min_cost + self.suffix_min_cost > pass.cost_cap {
                continue;
            }
            let k = alpha.kind_index(i);
            tally[k] += 1;
            if pass.tally_fits(tally) {
                seq.push(i);
                self.walk(op.apply(state), remaining - 1, c, tally, seq);
                seq.pop();
            }
            tally[k] -= 1;
        }
    }
}

struct LengthResult {
    best: Option<(u64, Vec<u8>)>,
    stored: u64,
    probes: u64,
    matches: u64,
}

fn search_length(pass: &Pass, target: u64, gates: usize) -> LengthResult {
    let forward_len = gates.div_ceil(2);
    let backward_len = gates / 2;
    let mut store = Store::new();
    let mut stored = 0;
    fill_store(
        pass,
        target,
        backward_len,
        0,
        &mut [0; 3],
        &mut Vec::new(),
        &mut store,
        &mut stored,
    );
    let suffix_min_cost = backward_len as u64 * pass.alpha.min_cost;

    // Fan out over the first two prefix gates.
    let n = pass.alpha.ops.len() as u8;
    let seeds: Vec<Vec<u8>> = if forward_len >= 2 {
        (0..n)
            .flat_map(|a| (0..n).map(move |b| vec![a, b]))
            .filter(|s| pass.alpha.forward_ok(Some(s[0]), s[1]))
            .collect()
    } else if forward_len == 1 {
        (0..n).map(|a| vec![a]).collect()
    } else {
        vec![vec![]]
    };
    let results: Vec<Probe> = seeds
        .par_iter()
        .map(|seed| {
            let mut probe = Probe {
                pass,
                store: &store,
                suffix_min_cost,
                probes: 0,
                matches: 0,
                best: None,
            };
            let mut state = IDENTITY_PLANES;
            let mut cost = 0;
            let mut tally = [0u8; 3];
            for &i in seed {
                state = pass.alpha.ops[i as usize].apply(state);
                cost += pass.alpha.ops[i as usize].cost;
                tally[pass.alpha.kind_index(i)] += 1;
            }
            if pass.tally_fits(&tally)
                && cost + (forward_len - seed.len()) as u64 * pass.alpha.min_cost + suffix_min_cost
                    <= pass.cost_cap
            {
                let mut seq = seed.clone();
                probe.walk(state, forward_len - seed.len(), cost, &mut tally, &mut seq);
            }
            probe
        })
        .collect();
    let mut out = LengthResult {
        best: None,
        stored,
        probes: 0,
        matches: 0,
    };
    for r in results {
        out.probes += r.probes;
        out.matches += r.matches;
        if let Some(b) = r.best {
            if out.best.as_ref().is_none_or(|cur| b < *cur) {
                out.best = Some(b);
            }
        }
    }
    out
}

fn to_synthesis(alpha: &Alphabet, seq: &[u8], model: &CostModel) -> Synthesis {
    let circuit = Circuit::from_gates(WIDTH, seq.iter().map(|&i| alpha.gates[i as usize]))
        .expect("alphabet gates are valid on 4 wires");
    let counts = crate::circuit::counts(&circuit);
    Synthesis {
        cost: counts.cost(model),
        counts,
        circuit,
    }
}

/// Minimum (cost, gates, sequence) circuit within the bounds.
fn search(
    target: &Perm16,
    max_cost: u64,
    max_gates: usize,
    multiset: Option<GateCounts>,
    deadline: Option<Instant>,
    stats: &mut SearchStats,
) -> Option<Synthesis> {
    let model = CostModel::default();
    let alpha = Alphabet::new(&model);
    let target_planes = perm_to_planes(target);
    let stop = AtomicBool::new(false);
    let target_tally = multiset.map(|m| [m.x as u8, m.cx as u8, m.ccx as u8]);
    let lengths: Vec<usize> = match multiset {
        Some(m) => vec![(m.x + m.cx + m.ccx) as usize],
        None => (0..=max_gates).collect(),
    };
    let mut best: Option<(u64, usize, Vec<u8>)> = None;
    let probes = AtomicU64::new(0);
    for g in lengths {
        if g > max_gates {
            break;
        }
        let cap = match &best {
            Some((c, _, _)) => c.saturating_sub(1).min(max_cost),
            None => max_cost,
        };
        if g as u64 * alpha.min_cost > cap {
            break;
        }
        let pass = Pass {
            alpha: &alpha,
            cost_cap: cap,
            target_tally,
            deadline,
            stop: &stop,
        };
        let r = search_length(&pass, target_planes, g);
        stats.lengths_searched += 1;
        stats.stored_suffixes += r.stored;
        probes.fetch_add(r.probes, Ordering::Relaxed);
        stats.matches += r.matches;
        if let Some((c, seq)) = r.best {
            best = Some((c, g, seq));
        }
        if stop.load(Ordering::Relaxed) {
            stats.timed_out = true;
            break;
        }
    }
    stats.probed_prefixes += probes.load(Ordering::Relaxed);
    best.map(|(_, _, seq)| to_synthesis(&alpha, &seq, &model))
}

/// Synthesises an ancilla-free 4-wire circuit whose permutation is `target`.
pub fn synthesize(target: &Perm16, budget: &SearchBudget) -> Result<SynthOutcome, SynthError> {
    if budget.max_gates > 12 {
        return Err(SynthError::TooManyGates(budget.max_gates));
    }
    let started = Instant::now();
    let deadline = budget.time_limit.map(|d| started + d);
    let mut stats = SearchStats::default();
    let found = search(
        target,
        budget.max_cost,
        budget.max_gates,
        budget.multiset,
        deadline,
        &mut stats,
    );
    let outcome = match (found, budget.multiset) {
        (Some(s), _) if s.cost <= budget.max_cost => SynthOutcome::Found {
            synthesis: s,
            stats,
        },
        (_, Some(_)) => {
            let best = search(
                target,
                budget.max_cost,
                budget.max_gates,
                None,
                deadline,
                &mut stats,
            );
            SynthOutcome::BudgetNotMet { best, stats }
        }
        _ => SynthOutcome::NotFound { stats },
    };
    let elapsed = started.elapsed().as_millis() as u64;
    Ok(match outcome {
        SynthOutcome::Found {
            synthesis,
            mut stats,
        } => {
            stats.elapsed_ms = elapsed;
            SynthOutcome::Found { synthesis, stats }
        }
        SynthOutcome::BudgetNotMet { best, mut stats } => {
            stats.elapsed_ms = elapsed;
            SynthOutcome::BudgetNotMet { best, stats }
        }
        SynthOutcome::NotFound { mut stats } => {
            stats.elapsed_ms = elapsed;
            SynthOutcome::NotFound { stats }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SynthVerdict {
    Verified,
    Mismatch { input: u8, expected: u8, got: u8 },
}

/// Exhaustive 16-input comparison.
pub fn verify(c: &Circuit, target: &Perm16) -> Result<SynthVerdict, SynthError> {
    if c.wires() != WIDTH {
        return Err(SynthError::NotFourWires(c.wires()));
    }
    let table = permutation_of(c).expect("4 wires is within the enumeration bound");
    for x in 0..16u8 {
        let got = table[x as usize] as u8;
        let expected = target.apply(x);
        if got != expected {
            return Ok(SynthVerdict::Mismatch {
                input: x,
                expected,
                got,
            });
        }
    }
    Ok(SynthVerdict::Verified)
}
