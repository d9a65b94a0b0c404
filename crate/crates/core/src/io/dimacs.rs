use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use super::{parse_token, ParseError};
use crate::instance::{FlowArc, FlowInstance};
use crate::scalar::Scalar;

struct RawArc<T> {
    line: usize,
    src: usize,
    dst: usize,
    cap: T,
    cost: T,
}

/// Reads a DIMACS `min` file with one source and one sink.
///
/// Nodes are relabelled by a topological order that prefers the source first,
/// the sink last, and otherwise the smallest original id, so an already
/// index-ordered file keeps its labels.
pub fn parse_dimacs<T: Scalar>(text: &str) -> Result<FlowInstance<T>, ParseError> {
    let mut problem: Option<(usize, usize)> = None;
    let mut flux: Vec<Option<T>> = Vec::new();
    let mut raw = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(&kind) = fields.first() else {
            continue;
        };
        let malformed = |message: &str| ParseError::Malformed {
            line: lineno,
            message: message.to_string(),
        };
        match kind {
            "c" => {}
            "p" => {
                if problem.is_some() {
                    return Err(malformed("duplicate problem line"));
                }
                if fields.len() != 4 || fields[1] != "min" {
                    return Err(malformed("expected `p min <nodes> <arcs>`"));
                }
                let nodes: usize = parse_token(lineno, fields[2], "node count")?;
                let arcs: usize = parse_token(lineno, fields[3], "arc count")?;
                problem = Some((nodes, arcs));
                flux = vec![None; nodes + 1];
            }
            "n" => {
                let (nodes, _) = problem.ok_or(ParseError::MissingProblemLine)?;
                if fields.len() != 3 {
                    return Err(malformed("expected `n <id> <flux>`"));
                }
                let id: usize = parse_token(lineno, fields[1], "node id")?;
                let f: T = parse_token(lineno, fields[2], "flux")?;
                if id == 0 || id > nodes {
                    return Err(ParseError::NodeOutOfRange {
                        line: lineno,
                        node: id,
                        n: nodes,
                    });
                }
                if flux[id].replace(f).is_some() {
                    return Err(malformed("duplicate node line"));
                }
            }
            "a" => {
                let (nodes, _) = problem.ok_or(ParseError::MissingProblemLine)?;
                if fields.len() != 6 {
                    return Err(malformed("expected `a <src> <dst> <low> <cap> <cost>`"));
                }
                let src: usize = parse_token(lineno, fields[1], "arc tail")?;
                let dst: usize = parse_token(lineno, fields[2], "arc head")?;
                let low: T = parse_token(lineno, fields[3], "lower bound")?;
                let cap: T = parse_token(lineno, fields[4], "capacity")?;
                let cost: T = parse_token(lineno, fields[5], "cost")?;
                for node in [src, dst] {
                    if node == 0 || node > nodes {
                        return Err(ParseError::NodeOutOfRange {
                            line: lineno,
                            node,
                            n: nodes,
                        });
                    }
                }
                if !low.is_zero() {
                    return Err(ParseError::NonzeroLowerBound { line: lineno });
                }
                raw.push(RawArc {
                    line: lineno,
                    src,
                    dst,
                    cap,
                    cost,
                });
            }
            other => {
                return Err(ParseError::UnknownLine {
                    line: lineno,
                    token: other.to_string(),
                })
            }
        }
    }

    let (n, declared) = problem.ok_or(ParseError::MissingProblemLine)?;
    if declared != raw.len() {
        return Err(ParseError::ArcCountMismatch {
            declared,
            found: raw.len(),
        });
    }
    if n < 2 {
        return Err(crate::InstanceError::TooFewNodes(n).into());
    }

    let sources: Vec<(usize, T)> = (1..=n)
        .filter_map(|v| flux[v].filter(|f| *f > T::zero()).map(|f| (v, f)))
        .collect();
    let sinks: Vec<(usize, T)> = (1..=n)
        .filter_map(|v| flux[v].filter(|f| *f < T::zero()).map(|f| (v, f)))
        .collect();
    let (source, sink, supply) = match (sources.as_slice(), sinks.as_slice()) {
        ([], []) => (1, n, T::zero()),
        ([(s, sup)], [(t, dem)]) => {
            if *sup != -*dem {
                return Err(ParseError::UnbalancedFlux {
                    supply: sup.to_string(),
                    demand: dem.to_string(),
                });
            }
            (*s, *t, *sup)
        }
        _ => {
            return Err(ParseError::EndpointCount {
                sources: sources.len(),
                sinks: sinks.len(),
            })
        }
    };

    let label = topological_labels(n, source, sink, &raw)?;
    let arcs = raw.iter().map(|a| {
        let (tail, head) = (label[a.src], label[a.dst]);
        debug_assert!(tail < head, "line {}", a.line);
        FlowArc::new(tail, head, a.cap, a.cost)
    });
    Ok(FlowInstance::new(n, arcs, supply)?)
}

/// Maps original ids to 1-based positions in a deterministic topological order.
fn topological_labels<T>(
    n: usize,
    source: usize,
    sink: usize,
    arcs: &[RawArc<T>],
) -> Result<Vec<usize>, ParseError> {
    let mut out_adj = vec![Vec::new(); n + 1];
    let mut indeg = vec![0usize; n + 1];
    for a in arcs {
        if a.src == a.dst {
            return Err(ParseError::Cycle { node: a.src });
        }
        out_adj[a.src].push(a.dst);
        indeg[a.dst] += 1;
    }
    let class = |v: usize| {
        if v == source {
            0u8
        } else if v == sink {
            2
        } else {
            1
        }
    };
    let mut heap: BinaryHeap<Reverse<(u8, usize)>> = (1..=n)
        .filter(|&v| indeg[v] == 0)
        .map(|v| Reverse((class(v), v)))
        .collect();
    let mut label = vec![0usize; n + 1];
    let mut next = 1;
    while let Some(Reverse((_, v))) = heap.pop() {
        label[v] = next;
        next += 1;
        for &w in &out_adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse((class(w), w)));
            }
        }
    }
    if let Some(v) = (1..=n).find(|&v| label[v] == 0) {
        return Err(ParseError::Cycle { node: v });
    }
    if label[source] != 1 {
        return Err(ParseError::EndpointOrder {
            node: source,
            position: "first",
        });
    }
    if label[sink] != n {
        return Err(ParseError::EndpointOrder {
            node: sink,
            position: "last",
        });
    }
    Ok(label)
}

/// Writes the instance as DIMACS; lower bounds are always zero.
pub fn write_dimacs<T: Scalar>(instance: &FlowInstance<T>) -> String {
    let mut out = String::new();
    let n = instance.node_count();
    writeln!(out, "p min {} {}", n, instance.arcs().len()).unwrap();
    let s = instance.supply();
    if !s.is_zero() {
        writeln!(out, "n 1 {s}").unwrap();
        writeln!(out, "n {n} {}", -s).unwrap();
    }
    for a in instance.arcs() {
        writeln!(out, "a {} {} 0 {} {}", a.tail, a.head, a.capacity, a.cost).unwrap();
    }
    out
}
