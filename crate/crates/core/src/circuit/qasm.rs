//! OpenQASM 2.0 export on a single register `q`. Wire labels become
//! `// q[i] name` comments.

use std::fmt::Write as _;

use super::{Circuit, Gate};

pub fn emit_openqasm2(c: &Circuit) -> String {
    let mut out = String::with_capacity(20 * c.len() + 64);
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    for (w, name) in c.labels() {
        let _ = writeln!(out, "// q[{w}] {name}");
    }
    let _ = writeln!(out, "qreg q[{}];", c.wires());
    for g in c.gates() {
        let _ = match *g {
            Gate::X { target } => writeln!(out, "x q[{target}];"),
            Gate::Cx { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            Gate::Ccx {
                controls: [a, b],
                target,
            } => {
                writeln!(out, "ccx q[{a}],q[{b}],q[{target}];")
            }
            Gate::Swap { a, b } => writeln!(out, "swap q[{a}],q[{b}];"),
        };
    }
    out
}
