//! Gate-list circuits and their line-oriented text form.
//!
//! Rotation conventions: `RX(q, t) = exp(-i t X_q)`, `RZ(q, t) = exp(-i t Z_q)`
//! and `PPHASE(S, t) = exp(-i t Z_S)`. Wires are one-based.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum Gate {
    Cnot {
        control: usize,
        target: usize,
    },
    Rx {
        qubit: usize,
        theta: f64,
    },
    Rz {
        qubit: usize,
        theta: f64,
    },
    H {
        qubit: usize,
    },
    /// `exp(-i theta Z_S)` on the listed wires (ascending, nonempty).
    #[serde(rename = "pphase")]
    ParityPhase {
        qubits: Vec<usize>,
        theta: f64,
    },
}

impl Gate {
    pub fn wires(&self) -> Vec<usize> {
        match self {
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Rx { qubit, .. } | Gate::Rz { qubit, .. } | Gate::H { qubit } => vec![*qubit],
            Gate::ParityPhase { qubits, .. } => qubits.clone(),
        }
    }

    /// Acts on two or more wires.
    pub fn is_entangling(&self) -> bool {
        match self {
            Gate::Cnot { .. } => true,
            Gate::ParityPhase { qubits, .. } => qubits.len() >= 2,
            _ => false,
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Rx { qubit, theta } => Gate::Rx {
                qubit: *qubit,
                theta: -theta,
            },
            Gate::Rz { qubit, theta } => Gate::Rz {
                qubit: *qubit,
                theta: -theta,
            },
            Gate::ParityPhase { qubits, theta } => Gate::ParityPhase {
                qubits: qubits.clone(),
                theta: -theta,
            },
            g => g.clone(),
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        if let Gate::Cnot { control, target } = self {
            if control == target {
                return invalid(format!("CNOT control and target are both {control}"));
            }
        }
        if let Gate::ParityPhase { qubits, .. } = self {
            if qubits.is_empty() {
                return invalid("PPHASE needs at least one wire");
            }
            if qubits.windows(2).any(|w| w[0] >= w[1]) {
                return invalid("PPHASE wires must be strictly ascending");
            }
        }
        if let Some(&w) = self.wires().iter().find(|&&w| w == 0 || w > num_qubits) {
            return invalid(format!("wire {w} outside 1..={num_qubits}"));
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Rx { qubit, theta } => write!(f, "RX {qubit} {theta:?}"),
            Gate::Rz { qubit, theta } => write!(f, "RZ {qubit} {theta:?}"),
            Gate::H { qubit } => write!(f, "H {qubit}"),
            Gate::ParityPhase { qubits, theta } => {
                let wires: Vec<String> = qubits.iter().map(|q| q.to_string()).collect();
                write!(f, "PPHASE {} {theta:?}", wires.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(num_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
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

    pub fn entangling_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_entangling()).count()
    }

    /// Reversed gate order with negated angles.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Appends all gates of `other`, which must not use more wires.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        for g in other.gates() {
            self.push(g.clone())?;
        }
        Ok(())
    }

    /// Text form with a `# qubits:` header, so that idle trailing wires
    /// survive a round trip.
    pub fn to_text(&self) -> String {
        let mut s = format!("# qubits: {}\n", self.num_qubits);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses an angle in radians: a decimal number, or `pi`, `-pi/4`,
/// `3pi/4`, `3*pi/2`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        if v.is_finite() {
            return Ok(v);
        }
    }
    let bad = || Error::InvalidInput(format!("cannot parse angle {s:?}"));
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(bad)?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let coeff = if coeff.is_empty() {
        1.0
    } else {
        coeff.parse::<f64>().map_err(|_| bad())?
    };
    let den = match den {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None => 1.0,
    };
    if den == 0.0 || !coeff.is_finite() {
        return Err(bad());
    }
    Ok(sign * coeff * std::f64::consts::PI / den)
}

fn parse_wire(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("line {line}: bad wire {s:?}")))
}

impl FromStr for Circuit {
    type Err = Error;

    /// Without a `# qubits: N` header the wire count is the largest wire
    /// used.
    fn from_str(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut gates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let (code, comment) = match raw.split_once('#') {
                Some((c, m)) => (c, Some(m)),
                None => (raw, None),
            };
            if let Some(m) = comment {
                if let Some(v) = m.trim().strip_prefix("qubits:") {
                    declared = Some(v.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidInput(format!("line {line_no}: bad qubit count"))
                    })?);
                }
            }
            let parts: Vec<&str> = code.split_whitespace().collect();
            if parts.is_empty() {
                continue;
            }
            let arity = |k: usize| {
                if parts.len() == k + 1 {
                    Ok(())
                } else {
                    invalid(format!("line {line_no}: {} takes {k} arguments", parts[0]))
                }
            };
            let gate = match parts[0].to_ascii_uppercase().as_str() {
                "CNOT" | "CX" => {
                    arity(2)?;
                    Gate::Cnot {
                        control: parse_wire(parts[1], line_no)?,
                        target: parse_wire(parts[2], line_no)?,
                    }
                }
                "RX" => {
                    arity(2)?;
                    Gate::Rx {
                        qubit: parse_wire(parts[1], line_no)?,
                        theta: parse_angle(parts[2])?,
                    }
                }
                "RZ" => {
                    arity(2)?;
                    Gate::Rz {
                        qubit: parse_wire(parts[1], line_no)?,
                        theta: parse_angle(parts[2])?,
                    }
                }
                "H" => {
                    arity(1)?;
                    Gate::H {
                        qubit: parse_wire(parts[1], line_no)?,
                    }
                }
                "PPHASE" => {
                    arity(2)?;
                    let mut qubits = parts[1]
                        .split(',')
                        .map(|w| parse_wire(w.trim(), line_no))
                        .collect::<Result<Vec<_>>>()?;
                    qubits.sort_unstable();
                    Gate::ParityPhase {
                        qubits,
                        theta: parse_angle(parts[2])?,
                    }
                }
                other => return invalid(format!("line {line_no}: unknown gate {other:?}")),
            };
            gates.push(gate);
        }
        let used = gates.iter().flat_map(|g| g.wires()).max().unwrap_or(0);
        let num_qubits = declared.unwrap_or(used);
        if num_qubits == 0 {
            return invalid("circuit has no wires");
        }
        Circuit::from_gates(num_qubits, gates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn text_roundtrip() {
        let c = Circuit::from_gates(
            4,
            vec![
                Gate::Cnot {
                    control: 1,
                    target: 3,
                },
                Gate::Rx {
                    qubit: 2,
                    theta: PI / 4.0,
                },
                Gate::Rz {
                    qubit: 1,
                    theta: -0.7,
                },
                Gate::H { qubit: 2 },
                Gate::ParityPhase {
                    qubits: vec![1, 2, 4],
                    theta: 0.1 + 0.2,
                },
            ],
        )
        .unwrap();
        let text = c.to_text();
        assert!(text.contains("PPHASE 1,2,4 0.30000000000000004"));
        let back: Circuit = text.parse().unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn comments_and_angle_literals() {
        let c: Circuit = "# demo\nRX 1 pi/4  # conj\nRZ 2 -pi/4\nRX 1 3pi/2\n\nH 2\n"
            .parse()
            .unwrap();
        assert_eq!(c.num_qubits(), 2);
        assert_eq!(
            c.gates()[0],
            Gate::Rx {
                qubit: 1,
                theta: PI / 4.0
            }
        );
        assert_eq!(
            c.gates()[1],
            Gate::Rz {
                qubit: 2,
                theta: -PI / 4.0
            }
        );
        assert_eq!(
            c.gates()[2],
            Gate::Rx {
                qubit: 1,
                theta: 1.5 * PI
            }
        );
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert!(parse_angle("tau").is_err());
        assert!(parse_angle("pi/0").is_err());
    }

    #[test]
    fn rejects_bad_gates() {
        assert!("CNOT 1 1".parse::<Circuit>().is_err());
        assert!("RZ 0 0.1".parse::<Circuit>().is_err());
        assert!("FOO 1".parse::<Circuit>().is_err());
        assert!("RZ 1".parse::<Circuit>().is_err());
        assert!("# qubits: 2\nCNOT 1 3".parse::<Circuit>().is_err());
        assert!("PPHASE 1,1 0.2".parse::<Circuit>().is_err());
        assert!("".parse::<Circuit>().is_err());
    }

    #[test]
    fn header_keeps_idle_wires() {
        let c: Circuit = "# qubits: 5\nH 1\n".parse().unwrap();
        assert_eq!(c.num_qubits(), 5);
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let c = Circuit::from_gates(
            2,
            vec![
                Gate::Rz {
                    qubit: 1,
                    theta: 0.5,
                },
                Gate::Cnot {
                    control: 1,
                    target: 2,
                },
                Gate::ParityPhase {
                    qubits: vec![1, 2],
                    theta: 0.25,
                },
            ],
        )
        .unwrap();
        let inv = c.inverse();
        assert_eq!(
            inv.gates(),
            &[
                Gate::ParityPhase {
                    qubits: vec![1, 2],
                    theta: -0.25
                },
                Gate::Cnot {
                    control: 1,
                    target: 2
                },
                Gate::Rz {
                    qubit: 1,
                    theta: -0.5
                },
            ]
        );
        assert_eq!(c.entangling_count(), 2);
    }
}
