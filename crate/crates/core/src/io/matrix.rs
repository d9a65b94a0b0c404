use std::fmt::Write as _;

use super::{parse_token, tokens, ParseError};
use crate::exact::max_feasible_flow;
use crate::instance::{FlowArc, FlowInstance};
use crate::scalar::{Cost, Scalar};

/// Square matrix with capacities above the diagonal and unit costs below.
///
/// Entry `(i, j)` with `i < j` is the capacity of arc `i -> j`; entry `(j, i)`
/// is its unit cost, `inf` when the arc is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixForm<T> {
    pub n: usize,
    /// Row-major, `n * n` entries.
    pub entries: Vec<Cost<T>>,
    pub supply: Option<T>,
}

impl<T: Scalar> MatrixForm<T> {
    pub fn get(&self, row: usize, col: usize) -> Cost<T> {
        self.entries[(row - 1) * self.n + (col - 1)]
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut toks = tokens(text).peekable();
        let (line, tok) = toks.next().ok_or(ParseError::UnexpectedEof {
            expected: "matrix order",
        })?;
        let n: usize = parse_token(line, tok, "matrix order")?;
        let expected = n * n;
        let mut entries = Vec::with_capacity(expected);
        let mut supply = None;
        while let Some((line, tok)) = toks.next() {
            if tok == "s" {
                let (line, tok) = toks.next().ok_or(ParseError::UnexpectedEof {
                    expected: "supply value",
                })?;
                let s: T = parse_token(line, tok, "supply value")?;
                if s < T::zero() {
                    return Err(ParseError::Malformed {
                        line,
                        message: "supply must be nonnegative".to_string(),
                    });
                }
                supply = Some(s);
                if let Some((line, tok)) = toks.next() {
                    return Err(ParseError::TrailingToken {
                        line,
                        token: tok.to_string(),
                    });
                }
                break;
            }
            let idx = entries.len();
            if idx == expected {
                return Err(ParseError::DimensionMismatch {
                    n,
                    expected,
                    found: expected + 1 + toks.by_ref().take_while(|(_, t)| *t != "s").count(),
                });
            }
            let (row, col) = (idx / n + 1, idx % n + 1);
            let entry = if tok == "inf" {
                if row <= col {
                    return Err(ParseError::MisplacedInf { line, row, col });
                }
                Cost::NoArc
            } else {
                let v: T = parse_token(line, tok, "integer or `inf`")?;
                if v < T::zero() {
                    return Err(ParseError::NegativeEntry { line, row, col });
                }
                if row == col && !v.is_zero() {
                    return Err(ParseError::NonzeroDiagonal { line, row });
                }
                Cost::Finite(v)
            };
            entries.push(entry);
        }
        if entries.len() != expected {
            return Err(ParseError::DimensionMismatch {
                n,
                expected,
                found: entries.len(),
            });
        }
        Ok(MatrixForm { n, entries, supply })
    }

    /// Builds the instance; a missing supply defaults to the maximum flow.
    pub fn to_instance(&self) -> Result<FlowInstance<T>, ParseError> {
        let n = self.n;
        let mut arcs = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let Cost::Finite(cap) = self.get(i, j) else {
                    unreachable!("capacities are always finite");
                };
                if cap.is_zero() {
                    continue;
                }
                match self.get(j, i) {
                    Cost::Finite(cost) => arcs.push(FlowArc::new(i, j, cap, cost)),
                    Cost::NoArc => return Err(ParseError::MissingCost { tail: i, head: j }),
                }
            }
        }
        let inst = FlowInstance::new(n, arcs, self.supply.unwrap_or_else(T::zero))?;
        match self.supply {
            Some(_) => Ok(inst),
            None => {
                let s = max_feasible_flow(&inst);
                Ok(inst.with_supply(s)?)
            }
        }
    }

    pub fn from_instance(instance: &FlowInstance<T>) -> Self {
        let n = instance.node_count();
        let mut entries = vec![Cost::NoArc; n * n];
        for i in 0..n {
            for j in i..n {
                entries[i * n + j] = Cost::zero();
            }
        }
        for arc in instance.arcs() {
            let (t, h) = (arc.tail - 1, arc.head - 1);
            entries[t * n + h] = Cost::Finite(arc.capacity);
            entries[h * n + t] = Cost::Finite(arc.cost);
        }
        MatrixForm {
            n,
            entries,
            supply: Some(instance.supply()),
        }
    }

    /// Canonical text: order, one row per line, single spaces, `s` line last.
    pub fn write(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.n).unwrap();
        for row in self.entries.chunks(self.n) {
            let mut first = true;
            for e in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{e}").unwrap();
            }
            out.push('\n');
        }
        if let Some(s) = self.supply {
            writeln!(out, "s {s}").unwrap();
        }
        out
    }
}

pub fn parse_matrix<T: Scalar>(text: &str) -> Result<FlowInstance<T>, ParseError> {
    MatrixForm::parse(text)?.to_instance()
}

pub fn write_matrix<T: Scalar>(instance: &FlowInstance<T>) -> String {
    MatrixForm::from_instance(instance).write()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn inline_two_node() {
        let inst: FlowInstance<i64> = parse_matrix("2  0 5  1 0  s 5").unwrap();
        assert_eq!(inst.node_count(), 2);
        assert_eq!(inst.arcs(), &[FlowArc::new(1, 2, 5, 1)]);
        assert_eq!(inst.supply(), 5);
    }

    #[test]
    fn example1_text() {
        let text = write_matrix(&fixtures::example1());
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "5");
        assert_eq!(lines[1], "0 7 0 5 0");
        let col1: Vec<_> = lines[2..6]
            .iter()
            .map(|l| l.split(' ').next().unwrap())
            .collect();
        assert_eq!(col1, vec!["3", "inf", "6", "inf"]);
        assert_eq!(lines[6], "s 12");
    }

    #[test]
    fn empty_network() {
        let inst = FlowInstance::<i64>::new(2, [], 0).unwrap();
        let text = write_matrix(&inst);
        assert_eq!(text, "2\n0 0\ninf 0\ns 0\n");
        assert_eq!(
            text.split_whitespace().collect::<Vec<_>>().join(" "),
            "2 0 0 inf 0 s 0"
        );
        assert_eq!(parse_matrix::<i64>(&text).unwrap(), inst);
    }

    #[test]
    fn example4_matrix_arcs() {
        let inst = &fixtures::builtin_fixtures()[3].instance;
        assert_eq!(inst.node_count(), 5);
        let a = inst.arc(1, 2).unwrap();
        assert_eq!((a.capacity, a.cost), (3, 5));
        let a = inst.arc(4, 5).unwrap();
        assert_eq!((a.capacity, a.cost), (15, 5));
        assert_eq!(inst.arcs().len(), 10);
    }

    #[test]
    fn default_supply_is_max_flow() {
        let inst: FlowInstance<i64> = parse_matrix("3\n0 4 1\n2 0 3\n9 1 0\n").unwrap();
        assert_eq!(inst.supply(), 4);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_matrix::<i64>("3 0 1 2 0 0 1"),
            Err(ParseError::DimensionMismatch {
                expected: 9,
                found: 6,
                ..
            })
        ));
        assert!(matches!(
            parse_matrix::<i64>("2 0 1 1 0 7"),
            Err(ParseError::DimensionMismatch {
                expected: 4,
                found: 5,
                ..
            })
        ));
        assert!(matches!(
            parse_matrix::<i64>("2 0 -1 1 0"),
            Err(ParseError::NegativeEntry { row: 1, col: 2, .. })
        ));
        assert!(matches!(
            parse_matrix::<i64>("2 1 1 1 0"),
            Err(ParseError::NonzeroDiagonal { row: 1, .. })
        ));
        assert!(matches!(
            parse_matrix::<i64>("2 0 3 inf 0"),
            Err(ParseError::MissingCost { tail: 1, head: 2 })
        ));
        assert!(matches!(
            parse_matrix::<i64>("2 0 inf 1 0"),
            Err(ParseError::MisplacedInf { row: 1, col: 2, .. })
        ));
        assert!(matches!(
            parse_matrix::<i64>("2 0 1\n1 x"),
            Err(ParseError::InvalidToken { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix::<i64>("2 0 1 1 0 s 3 4"),
            Err(ParseError::TrailingToken { .. })
        ));
        assert!(matches!(
            parse_matrix::<i64>(""),
            Err(ParseError::UnexpectedEof { .. })
        ));
    }

    #[test]
    fn zero_capacity_with_finite_cost_is_no_arc() {
        let inst: FlowInstance<i64> = parse_matrix("2 0 0 4 0 s 0").unwrap();
        assert!(inst.arcs().is_empty());
    }
}
