//! Resource report documents: the ledger, the measured circuit and the
//! depth summary, rendered as text, CSV or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builder::{
    compare_published, depth_summary, ledger, AncillaAccounting, BuildError, BuilderMode,
    ComponentCounts, DepthSummary, Ledger, LedgerRow, RowCheck, SboxCircuits, SlimBuilder,
    PUBLISHED_DEPTHS, PUBLISHED_DEPTH_TOTALS,
};
use crate::circuit::{report, CostModel, DepthModel, GateCounts, ResourceReport};
use crate::sim::SAMPLER;

pub const REPORT_SCHEMA: &str = "slimq-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Components {
    /// Per-component counts of the circuits actually built.
    #[default]
    Built,
    /// The component rows of the published table.
    Published,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub sbox_sha256: String,
    pub sbox_inv_sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub counts: GateCounts,
    pub total: u64,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub version: String,
    pub mode: BuilderMode,
    pub components_source: Components,
    pub components: ComponentCounts,
    pub rows: Vec<LedgerRow>,
    pub totals: Totals,
    pub measured: ResourceReport,
    pub depth: DepthSummary,
    pub qubits: usize,
    pub provenance: Provenance,
    pub sampler: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ancilla: Option<AncillaAccounting>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("totals do not equal the sum of the ledger rows")]
    InconsistentTotals,
}

impl ReportDocument {
    pub fn new(
        sboxes: &SboxCircuits,
        mode: BuilderMode,
        source: Components,
    ) -> Result<Self, ReportError> {
        let sc = SlimBuilder::new(sboxes).build_cipher(mode)?;
        let components = match source {
            Components::Built => ComponentCounts::measured(sboxes),
            Components::Published => ComponentCounts::published(),
        };
        let copies = sc.ancilla_wires.len() as u64 / 16;
        let l = ledger(&components, mode, copies);
        let slim = *l.slim();
        let (f, i) = sboxes.provenance();
        let doc = ReportDocument {
            schema: REPORT_SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            mode,
            components_source: source,
            components,
            rows: l.rows.clone(),
            totals: Totals {
                counts: slim.counts,
                total: slim.total,
                cost: slim.cost,
            },
            measured: report(&sc.circuit, &CostModel::default(), &DepthModel::default()),
            depth: depth_summary(sboxes, mode, &DepthModel::default())?,
            qubits: sc.wires(),
            provenance: Provenance {
                sbox_sha256: f.to_string(),
                sbox_inv_sha256: i.to_string(),
            },
            sampler: SAMPLER.to_string(),
            ancilla: (mode == BuilderMode::Ancilla)
                .then(|| AncillaAccounting::new(&components, copies)),
        };
        doc.validate()?;
        Ok(doc)
    }

    fn ledger(&self) -> Ledger {
        Ledger {
            mode: self.mode,
            components: self.components,
            rows: self.rows.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), ReportError> {
        let l = self.ledger();
        let slim = l.slim();
        let ok = l.is_consistent()
            && slim.counts == self.totals.counts
            && slim.total == self.totals.total
            && slim.cost == self.totals.cost;
        if ok {
            Ok(())
        } else {
            Err(ReportError::InconsistentTotals)
        }
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        self.validate()?;
        Ok(serde_json::to_string_pretty(self).expect("report serialises") + "\n")
    }

    pub fn to_csv(&self) -> Result<String, ReportError> {
        self.validate()?;
        let mut out = String::from("layer,multiplicity,not,cnot,ccnot,total,cost\n");
        for r in &self.rows {
            let c = r.columns();
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.layer.label(),
                r.multiplicity,
                c.x,
                c.cx,
                c.ccx,
                r.total,
                r.cost
            )
            .unwrap();
        }
        Ok(out)
    }

    pub fn to_text(&self) -> Result<String, ReportError> {
        self.validate()?;
        let mut o = String::new();
        writeln!(
            o,
            "slimq {} resource report ({})",
            self.version, self.schema
        )
        .unwrap();
        writeln!(o, "mode            {}", self.mode).unwrap();
        writeln!(o, "components      {:?}", self.components_source).unwrap();
        writeln!(o, "qubits          {}", self.qubits).unwrap();
        writeln!(o, "sbox sha256     {}", self.provenance.sbox_sha256).unwrap();
        writeln!(o, "sbox^-1 sha256  {}", self.provenance.sbox_inv_sha256).unwrap();
        writeln!(o, "sampler         {}", self.sampler).unwrap();
        writeln!(o).unwrap();
        writeln!(
            o,
            "{:<15} {:>6} {:>6} {:>6} {:>4} {:>7} {:>7}",
            "LAYER", "NOT", "CNOT", "CCNOT", "x", "TOTAL", "COST"
        )
        .unwrap();
        for r in &self.rows {
            let c = r.columns();
            writeln!(
                o,
                "{:<15} {:>6} {:>6} {:>6} {:>4} {:>7} {:>7}",
                r.layer.label(),
                c.x,
                c.cx,
                c.ccx,
                r.multiplicity,
                r.total,
                r.cost
            )
            .unwrap();
        }
        let m = &self.measured;
        writeln!(o).unwrap();
        writeln!(
            o,
            "built circuit   NOT {} CNOT {} CCNOT {} SWAP {} | total {} | cost {} | depth {}",
            m.counts.x, m.counts.cx, m.counts.ccx, m.counts.swap, m.total, m.cost, m.depth
        )
        .unwrap();
        let d = &self.depth;
        writeln!(
            o,
            "depths          d(S) {} d(S^-1) {} d(K) {}",
            d.components.sbox, d.components.sbox_inv, d.components.schedule
        )
        .unwrap();
        let cf = &d.closed_form;
        writeln!(
            o,
            "closed form     round {}/{} | rounds 1-5 {} | rounds 6-32 {} | total {}",
            cf.early_round, cf.late_round, cf.early_total, cf.late_total, cf.total
        )
        .unwrap();
        let p = &d.published_closed_form;
        writeln!(
            o,
            "  at ({}, {}, {}) round {}/{} | rounds 1-5 {} | rounds 6-32 {} | total {}",
            PUBLISHED_DEPTHS.sbox,
            PUBLISHED_DEPTHS.sbox_inv,
            PUBLISHED_DEPTHS.schedule,
            p.early_round,
            p.late_round,
            p.early_total,
            p.late_total,
            p.total
        )
        .unwrap();
        writeln!(
            o,
            "ASAP depth      {} (rounds scheduled separately: {})",
            d.measured_total,
            d.per_round_sum()
        )
        .unwrap();
        if let Some(a) = &self.ancilla {
            writeln!(o).unwrap();
            writeln!(
                o,
                "ancilla, stated {} + {} x 16 = {} + {} = {}",
                a.ksp_cost, a.stated_copies, a.ksp_cost, a.stated_copy_cost, a.stated_total
            )
            .unwrap();
            writeln!(
                o,
                "ancilla, built  {} + {} x 16 = {} + {} = {}",
                a.ksp_cost, a.built_copies, a.ksp_cost, a.built_copy_cost, a.built_total
            )
            .unwrap();
            if a.copies_differ() {
                writeln!(
                    o,
                    "DISCREPANCY     {} copies stated, {} built (the last round's D must be copied too)",
                    a.stated_copies, a.built_copies
                )
                .unwrap();
            }
        }
        Ok(o)
    }
}

/// One comparison of a recomputed quantity with its published value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperCheck {
    pub item: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

fn check(
    item: impl Into<String>,
    expected: impl std::fmt::Debug,
    got: impl std::fmt::Debug,
    ok: bool,
) -> PaperCheck {
    PaperCheck {
        item: item.into(),
        expected: format!("{expected:?}"),
        got: format!("{got:?}"),
        ok,
    }
}

fn row_check(c: &RowCheck) -> PaperCheck {
    let e = (
        c.expected_columns.x,
        c.expected_columns.cx,
        c.expected_columns.ccx,
        c.expected_total,
        c.expected_cost,
    );
    let g = (c.columns.x, c.columns.cx, c.columns.ccx, c.total, c.cost);
    check(format!("table row {}", c.layer.label()), e, g, c.ok())
}

/// Every published figure recomputed from `components`: the mirrored
/// ledger, the ancilla arithmetic and the depth closed form at the
/// published component depths.
pub fn paper_checks(sboxes: &SboxCircuits, source: Components) -> Vec<PaperCheck> {
    let components = match source {
        Components::Built => ComponentCounts::measured(sboxes),
        Components::Published => ComponentCounts::published(),
    };
    let mut out: Vec<PaperCheck> =
        compare_published(&ledger(&components, BuilderMode::Mirrored, 0))
            .iter()
            .map(row_check)
            .collect();
    let a = AncillaAccounting::new(&components, 0);
    out.push(check(
        "ancilla arithmetic",
        crate::builder::PUBLISHED_ANCILLA,
        (a.ksp_cost, a.stated_copy_cost, a.stated_total),
        a.matches_published(),
    ));
    let cf = crate::builder::closed_form(BuilderMode::Mirrored, &PUBLISHED_DEPTHS);
    let got = (cf.early_total, cf.late_total, cf.total);
    out.push(check(
        "depth closed form",
        PUBLISHED_DEPTH_TOTALS,
        got,
        got == PUBLISHED_DEPTH_TOTALS,
    ));
    out
}
