//! Plain-text gate lists.
//!
//! ```text
//! qubits 4
//! # comment
//! X 0
//! CX 0 1
//! CCX 0 1 2
//! SWAP 2 3
//! ```
//!
//! Wire labels travel as `#@label <wire> <name>` lines so that a labelled
//! circuit survives a round trip.

use std::fmt::Write as _;

use super::{Circuit, CircuitError, Gate};

const LABEL_TAG: &str = "#@label";

pub fn emit_gatelist(c: &Circuit) -> String {
    let mut out = String::with_capacity(12 * c.len() + 16);
    let _ = writeln!(out, "qubits {}", c.wires());
    for (w, name) in c.labels() {
        let _ = writeln!(out, "{LABEL_TAG} {w} {name}");
    }
    for g in c.gates() {
        let _ = writeln!(out, "{g}");
    }
    out
}

fn parse_err(line: usize, reason: impl Into<String>) -> CircuitError {
    CircuitError::Parse {
        line,
        reason: reason.into(),
    }
}

pub fn parse_gatelist(text: &str) -> Result<Circuit, CircuitError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix(LABEL_TAG) {
            let c = circuit
                .as_mut()
                .ok_or_else(|| parse_err(line, "label before `qubits` header"))?;
            let mut parts = rest.trim().splitn(2, char::is_whitespace);
            let wire = parse_wire(parts.next().unwrap_or(""), line)?;
            let name = parts.next().map(str::trim).unwrap_or("");
            if wire >= c.wires() || name.is_empty() {
                return Err(parse_err(line, "malformed label"));
            }
            c.set_label(wire, name);
            continue;
        }
        let body = trimmed.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split_whitespace();
        let head = fields.next().unwrap_or_default();
        let args: Vec<&str> = fields.collect();
        let Some(c) = circuit.as_mut() else {
            if head != "qubits" || args.len() != 1 {
                return Err(parse_err(line, "expected `qubits N` header"));
            }
            let n = args[0]
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("bad qubit count {:?}", args[0])))?;
            circuit = Some(Circuit::new(n));
            continue;
        };
        let wires = args
            .iter()
            .map(|a| parse_wire(a, line))
            .collect::<Result<Vec<_>, _>>()?;
        let expect = |n: usize| {
            if wires.len() == n {
                Ok(())
            } else {
                Err(parse_err(
                    line,
                    format!("{head} takes {n} operands, found {}", wires.len()),
                ))
            }
        };
        let gate = match head {
            "X" => expect(1).map(|_| Gate::x(wires[0]))?,
            "CX" => expect(2).map(|_| Gate::cx(wires[0], wires[1]))?,
            "CCX" => expect(3).map(|_| Gate::ccx(wires[0], wires[1], wires[2]))?,
            "SWAP" => expect(2).map(|_| Gate::swap(wires[0], wires[1]))?,
            "qubits" => return Err(parse_err(line, "duplicate `qubits` header")),
            other => return Err(parse_err(line, format!("unknown gate {other:?}"))),
        };
        c.push(gate).map_err(|e| parse_err(line, e.to_string()))?;
    }
    circuit.ok_or_else(|| parse_err(1, "missing `qubits N` header"))
}

fn parse_wire(text: &str, line: usize) -> Result<usize, CircuitError> {
    text.parse::<usize>()
        .map_err(|_| parse_err(line, format!("bad wire index {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_shape() {
        let c = Circuit::from_gates(2, [Gate::x(0), Gate::cx(0, 1)]).unwrap();
        let text = emit_gatelist(&c);
        assert_eq!(text, "qubits 2\nX 0\nCX 0 1\n");
        assert_eq!(parse_gatelist(&text).unwrap(), c);
    }

    #[test]
    fn labels_and_comments() {
        let mut c = Circuit::from_gates(3, [Gate::ccx(0, 1, 2), Gate::swap(0, 2)]).unwrap();
        c.set_label(0, "d[0]");
        c.set_label(2, "key lsb 7");
        let text = emit_gatelist(&c);
        assert_eq!(parse_gatelist(&text).unwrap(), c);
        let commented = "# header comment\nqubits 3\n\nCCX 0 1 2 # trailing\nSWAP 0 2\n";
        let parsed = parse_gatelist(commented).unwrap();
        assert_eq!(parsed.gates(), c.gates());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_gatelist("qubits 4\nX 0\nCX 0 4\n").unwrap_err();
        assert!(matches!(err, CircuitError::Parse { line: 3, .. }), "{err}");
        let err = parse_gatelist("qubits 4\nCCX 0 1\n").unwrap_err();
        assert!(matches!(err, CircuitError::Parse { line: 2, .. }));
        let err = parse_gatelist("X 0\n").unwrap_err();
        assert!(matches!(err, CircuitError::Parse { line: 1, .. }));
        let err = parse_gatelist("qubits 2\nH 0\n").unwrap_err();
        assert!(err.to_string().contains("unknown gate"));
        assert!(parse_gatelist("").is_err());
    }
}
