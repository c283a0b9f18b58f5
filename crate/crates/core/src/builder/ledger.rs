//! Symbolic per-layer resource table: component counts times round
//! multiplicities.

use serde::{Deserialize, Serialize};

use crate::cipher::{DIRECT_ROUNDS, ROUNDS};
use crate::circuit::{counts, CostModel, GateCounts};

use super::{BuilderMode, SboxCircuits, SlimBuilder};

const EARLY: u64 = DIRECT_ROUNDS as u64;
const LATE: u64 = (ROUNDS - DIRECT_ROUNDS) as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Sbox,
    SboxInv,
    KeyScheduleLate,
    KspEarly,
    KspInvEarly,
    KspLate,
    KspInvLate,
    AncillaCopy,
    Slim,
}

impl Layer {
    pub fn label(self) -> &'static str {
        match self {
            Layer::Sbox => "S",
            Layer::SboxInv => "S^-1",
            Layer::KeyScheduleLate => "K_{i>5}",
            Layer::KspEarly => "KSP_{i<=5}",
            Layer::KspInvEarly => "KSP^-1_{i<=5}",
            Layer::KspLate => "KSP_{i>5}",
            Layer::KspInvLate => "KSP^-1_{i>5}",
            Layer::AncillaCopy => "COPY",
            Layer::Slim => "SLIM",
        }
    }
}

/// One published row: the NOT/CNOT/CCNOT columns as printed (per unit,
/// except SLIM which carries sums), then TOTAL and COST over all rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub layer: Layer,
    pub columns: GateCounts,
    pub total: u64,
    pub cost: u64,
}

const fn row(layer: Layer, x: u64, cx: u64, ccx: u64, total: u64, cost: u64) -> PublishedRow {
    PublishedRow {
        layer,
        columns: GateCounts::new(x, cx, ccx),
        total,
        cost,
    }
}

/// The published resource table for the no-ancilla construction.
pub const PUBLISHED_TABLE: [PublishedRow; 8] = [
    row(Layer::Sbox, 2, 5, 4, 11, 27),
    row(Layer::SboxInv, 4, 2, 4, 10, 26),
    row(Layer::KeyScheduleLate, 20, 130, 40, 5130, 9450),
    row(Layer::KspEarly, 8, 52, 16, 380, 700),
    row(Layer::KspInvEarly, 16, 24, 16, 280, 600),
    row(Layer::KspLate, 28, 182, 56, 7182, 13230),
    row(Layer::KspInvLate, 36, 154, 56, 6642, 12690),
    row(Layer::Slim, 1848, 9452, 3184, 14484, 27220),
];

/// Published ancilla variant: KSP cost over all rounds, copy CNOT cost, sum.
pub const PUBLISHED_ANCILLA: (u64, u64, u64) = (13930, 496, 14426);
pub const PUBLISHED_ANCILLA_COPIES: u64 = 31;

fn published(layer: Layer) -> &'static PublishedRow {
    PUBLISHED_TABLE
        .iter()
        .find(|r| r.layer == layer)
        .expect("layer in table")
}

/// Per-instance counts of the three building blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCounts {
    pub sbox: GateCounts,
    pub sbox_inv: GateCounts,
    pub schedule: GateCounts,
}

impl ComponentCounts {
    /// The component rows of the published table.
    pub fn published() -> Self {
        ComponentCounts {
            sbox: published(Layer::Sbox).columns,
            sbox_inv: published(Layer::SboxInv).columns,
            schedule: published(Layer::KeyScheduleLate).columns,
        }
    }

    /// Counts of the circuits this crate actually builds.
    pub fn measured(sboxes: &SboxCircuits) -> Self {
        let b = SlimBuilder::new(sboxes);
        ComponentCounts {
            sbox: counts(sboxes.forward()),
            sbox_inv: counts(sboxes.inverse()),
            schedule: counts(&b.build_schedule_advance().circuit),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub layer: Layer,
    pub per_unit: GateCounts,
    pub multiplicity: u64,
    pub counts: GateCounts,
    pub total: u64,
    pub cost: u64,
}

impl LedgerRow {
    fn new(layer: Layer, per_unit: GateCounts, multiplicity: u64, model: &CostModel) -> Self {
        let counts = per_unit.scaled(multiplicity);
        LedgerRow {
            layer,
            per_unit,
            multiplicity,
            counts,
            total: counts.total(),
            cost: counts.cost(model),
        }
    }

    /// The NOT/CNOT/CCNOT columns in the published convention.
    pub fn columns(&self) -> GateCounts {
        if self.layer == Layer::Slim {
            self.counts
        } else {
            self.per_unit
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub mode: BuilderMode,
    pub components: ComponentCounts,
    pub rows: Vec<LedgerRow>,
}

impl Ledger {
    pub fn row(&self, layer: Layer) -> Option<&LedgerRow> {
        self.rows.iter().find(|r| r.layer == layer)
    }

    pub fn slim(&self) -> &LedgerRow {
        self.row(Layer::Slim).expect("every ledger has a SLIM row")
    }

    /// Rows whose sum is the SLIM row.
    pub fn summands(&self) -> impl Iterator<Item = &LedgerRow> {
        self.rows.iter().filter(|r| {
            matches!(
                r.layer,
                Layer::KspEarly
                    | Layer::KspInvEarly
                    | Layer::KspLate
                    | Layer::KspInvLate
                    | Layer::AncillaCopy
            )
        })
    }

    /// True when the SLIM row equals the column sums of its summands.
    pub fn is_consistent(&self) -> bool {
        let sum: GateCounts = self.summands().map(|r| r.counts).sum();
        let slim = self.slim();
        sum == slim.counts
            && slim.total == sum.total()
            && slim.cost == self.summands().map(|r| r.cost).sum::<u64>()
    }
}

/// Builds the table for `mode`. In `ancilla` mode the KSP^-1 rows are
/// replaced by one copy row of `copies` x 16 CX.
pub fn ledger(components: &ComponentCounts, mode: BuilderMode, copies: u64) -> Ledger {
    let m = CostModel::default();
    let c = components;
    let ksp_early = c.sbox.scaled(4) + GateCounts::new(0, 32, 0);
    let ksp_inv_early = c.sbox_inv.scaled(4) + GateCounts::new(0, 16, 0);
    let ksp_late = ksp_early + c.schedule;
    let ksp_inv_late = match mode {
        BuilderMode::Mirrored => ksp_inv_early + c.schedule,
        _ => ksp_inv_early,
    };
    let mut rows = vec![
        LedgerRow::new(Layer::Sbox, c.sbox, 1, &m),
        LedgerRow::new(Layer::SboxInv, c.sbox_inv, 1, &m),
        LedgerRow::new(Layer::KeyScheduleLate, c.schedule, LATE, &m),
        LedgerRow::new(Layer::KspEarly, ksp_early, EARLY, &m),
    ];
    if mode == BuilderMode::Ancilla {
        rows.push(LedgerRow::new(Layer::KspLate, ksp_late, LATE, &m));
        rows.push(LedgerRow::new(
            Layer::AncillaCopy,
            GateCounts::new(0, 16, 0),
            copies,
            &m,
        ));
    } else {
        rows.push(LedgerRow::new(Layer::KspInvEarly, ksp_inv_early, EARLY, &m));
        rows.push(LedgerRow::new(Layer::KspLate, ksp_late, LATE, &m));
        rows.push(LedgerRow::new(Layer::KspInvLate, ksp_inv_late, LATE, &m));
    }
    let mut ledger = Ledger {
        mode,
        components: *c,
        rows,
    };
    let slim: GateCounts = ledger.summands().map(|r| r.counts).sum();
    ledger.rows.push(LedgerRow::new(Layer::Slim, slim, 1, &m));
    ledger
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub layer: Layer,
    pub expected_columns: GateCounts,
    pub expected_total: u64,
    pub expected_cost: u64,
    pub columns: GateCounts,
    pub total: u64,
    pub cost: u64,
}

impl RowCheck {
    pub fn ok(&self) -> bool {
        self.expected_columns == self.columns
            && self.expected_total == self.total
            && self.expected_cost == self.cost
    }
}

/// Row-by-row comparison of a ledger against the published table.
pub fn compare_published(ledger: &Ledger) -> Vec<RowCheck> {
    PUBLISHED_TABLE
        .iter()
        .map(|p| {
            let got = ledger.row(p.layer);
            RowCheck {
                layer: p.layer,
                expected_columns: p.columns,
                expected_total: p.total,
                expected_cost: p.cost,
                columns: got.map(|r| r.columns()).unwrap_or_default(),
                total: got.map_or(0, |r| r.total),
                cost: got.map_or(0, |r| r.cost),
            }
        })
        .collect()
}

/// Ancilla-variant cost: stated arithmetic next to the built copy count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AncillaAccounting {
    pub ksp_cost: u64,
    pub stated_copies: u64,
    pub stated_copy_cost: u64,
    pub stated_total: u64,
    pub built_copies: u64,
    pub built_copy_cost: u64,
    pub built_total: u64,
}

impl AncillaAccounting {
    pub fn new(components: &ComponentCounts, built_copies: u64) -> Self {
        let l = ledger(components, BuilderMode::Ancilla, built_copies);
        let ksp_cost = [Layer::KspEarly, Layer::KspLate]
            .iter()
            .map(|&k| l.row(k).expect("ancilla ledger row").cost)
            .sum();
        let copy = l.row(Layer::AncillaCopy).expect("copy row").cost;
        let stated_copy_cost = PUBLISHED_ANCILLA_COPIES * 16;
        AncillaAccounting {
            ksp_cost,
            stated_copies: PUBLISHED_ANCILLA_COPIES,
            stated_copy_cost,
            stated_total: ksp_cost + stated_copy_cost,
            built_copies,
            built_copy_cost: copy,
            built_total: ksp_cost + copy,
        }
    }

    pub fn copies_differ(&self) -> bool {
        self.stated_copies != self.built_copies
    }

    /// Does the stated arithmetic match the published figures?
    pub fn matches_published(&self) -> bool {
        (self.ksp_cost, self.stated_copy_cost, self.stated_total) == PUBLISHED_ANCILLA
    }
}
