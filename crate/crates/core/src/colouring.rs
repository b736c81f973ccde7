//! Red/blue colourings of complete graphs and their file formats.
//!
//! Text format: a header line `N <order>` followed by one `r <u> <v>` line per
//! red edge; every pair not listed is blue. Blank lines and `#` comments are
//! ignored. JSON format: `{"n": N, "red": [[u, v], ...]}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitSet;
use crate::graph::{gnp, DenseGraph, SmallGraph, MAX_SMALL_ORDER};

/// Largest colouring order accepted.
pub const MAX_COLOURING_ORDER: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        })
    }
}

impl FromStr for Colour {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "red" | "r" => Ok(Colour::Red),
            "blue" | "b" => Ok(Colour::Blue),
            _ => Err(format!("unknown colour {s:?} (expected red or blue)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("colouring order {0} exceeds the limit of {MAX_COLOURING_ORDER}")]
    TooLarge(usize),
    #[error("line {line}: expected header `N <order>`")]
    Header { line: usize },
    #[error("line {line}: expected `r <u> <v>`, found {found:?}")]
    Syntax { line: usize, found: String },
    #[error("line {line}: vertex {vertex} out of range for order {order}")]
    OutOfRange { line: usize, vertex: usize, order: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("invalid colouring JSON: {0}")]
    Json(String),
}

/// A 2-colouring of the edges of `K_N`. Only red adjacency is authoritative;
/// blue rows are kept alongside as the complement so both colour classes can
/// be searched without rebuilding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoColouring {
    red: DenseGraph,
    blue: DenseGraph,
}

impl fmt::Debug for TwoColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoColouring(N={}, red={:?})", self.order(), self.red.edges().collect::<Vec<_>>())
    }
}

impl TwoColouring {
    /// Every edge blue.
    pub fn all_blue(order: usize) -> Self {
        assert!(order <= MAX_COLOURING_ORDER, "colouring order {order} too large");
        TwoColouring { red: DenseGraph::new(order), blue: DenseGraph::complete(order) }
    }

    pub fn all_red(order: usize) -> Self {
        TwoColouring::all_blue(order).swapped()
    }

    /// Each edge red independently with probability `p`.
    pub fn random<R: Rng + ?Sized>(order: usize, p: f64, rng: &mut R) -> Self {
        TwoColouring::from_red_graph(gnp(order, p, rng)).expect("order within range")
    }

    pub fn from_red_graph(red: DenseGraph) -> Result<Self, ColouringError> {
        if red.order() > MAX_COLOURING_ORDER {
            return Err(ColouringError::TooLarge(red.order()));
        }
        let blue = red.complement();
        Ok(TwoColouring { red, blue })
    }

    pub fn from_red_small(red: &SmallGraph) -> Self {
        TwoColouring::from_red_graph(red.to_dense()).expect("small graphs are within range")
    }

    pub fn from_red_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, ColouringError> {
        if order > MAX_COLOURING_ORDER {
            return Err(ColouringError::TooLarge(order));
        }
        let mut c = TwoColouring::all_blue(order);
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= order {
                    return Err(ColouringError::OutOfRange { line: i + 1, vertex: w, order });
                }
            }
            if u == v {
                return Err(ColouringError::SelfLoop { line: i + 1, vertex: u });
            }
            c.set(u, v, Colour::Red);
        }
        Ok(c)
    }

    pub fn order(&self) -> usize {
        self.red.order()
    }

    pub fn colour(&self, u: usize, v: usize) -> Colour {
        debug_assert!(u != v);
        if self.red.has_edge(u, v) {
            Colour::Red
        } else {
            Colour::Blue
        }
    }

    pub fn is_red(&self, u: usize, v: usize) -> bool {
        self.red.has_edge(u, v)
    }

    pub fn set(&mut self, u: usize, v: usize, colour: Colour) {
        assert!(u != v, "no colour on a loop at {u}");
        let (on, off) = match colour {
            Colour::Red => (&mut self.red, &mut self.blue),
            Colour::Blue => (&mut self.blue, &mut self.red),
        };
        on.add_edge(u, v);
        off.remove_edge(u, v);
    }

    /// Graph of the edges of one colour.
    pub fn graph(&self, colour: Colour) -> &DenseGraph {
        match colour {
            Colour::Red => &self.red,
            Colour::Blue => &self.blue,
        }
    }

    pub fn red(&self) -> &DenseGraph {
        &self.red
    }

    pub fn blue(&self) -> &DenseGraph {
        &self.blue
    }

    /// Neighbourhood of `v` in one colour.
    pub fn neighbours(&self, v: usize, colour: Colour) -> &BitSet {
        self.graph(colour).row(v)
    }

    /// Same colouring with red and blue exchanged.
    pub fn swapped(&self) -> TwoColouring {
        TwoColouring { red: self.blue.clone(), blue: self.red.clone() }
    }

    /// Colour class as a [`SmallGraph`] when `N <= 64`.
    pub fn small_view(&self, colour: Colour) -> Option<SmallGraph> {
        (self.order() <= MAX_SMALL_ORDER).then(|| self.graph(colour).to_small().expect("order checked"))
    }

    pub fn colour_class(&self, colour: Colour) -> ColourClass {
        match self.small_view(colour) {
            Some(g) => ColourClass::Small(g),
            None => ColourClass::Wide(self.graph(colour).clone()),
        }
    }

    /// Colouring induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> TwoColouring {
        let mut c = TwoColouring::all_blue(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.is_red(u, v) {
                    c.set(i, j, Colour::Red);
                }
            }
        }
        c
    }

    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        self.red.edges().collect()
    }

    pub fn write_text(&self) -> String {
        let mut out = format!("N {}\n", self.order());
        for (u, v) in self.red.edges() {
            out.push_str(&format!("r {u} {v}\n"));
        }
        out
    }

    pub fn read_text(text: &str) -> Result<Self, ColouringError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(ColouringError::Header { line: 1 })?;
        let order = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["N", n] => n.parse::<usize>().map_err(|_| ColouringError::Header { line: hline })?,
            _ => return Err(ColouringError::Header { line: hline }),
        };
        if order > MAX_COLOURING_ORDER {
            return Err(ColouringError::TooLarge(order));
        }
        let mut c = TwoColouring::all_blue(order);
        for (line, l) in lines {
            let syntax = || ColouringError::Syntax { line, found: l.to_string() };
            let (u, v) = match l.split_whitespace().collect::<Vec<_>>()[..] {
                ["r", u, v] => (u.parse::<usize>().map_err(|_| syntax())?, v.parse::<usize>().map_err(|_| syntax())?),
                _ => return Err(syntax()),
            };
            for w in [u, v] {
                if w >= order {
                    return Err(ColouringError::OutOfRange { line, vertex: w, order });
                }
            }
            if u == v {
                return Err(ColouringError::SelfLoop { line, vertex: u });
            }
            if c.is_red(u, v) {
                return Err(ColouringError::Duplicate { line, u: u.min(v), v: u.max(v) });
            }
            c.set(u, v, Colour::Red);
        }
        Ok(c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ColouringJson {
            n: self.order(),
            red: self.red_edges().iter().map(|&(u, v)| [u, v]).collect(),
        })
        .expect("plain data serialises")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, ColouringError> {
        let raw: ColouringJson =
            serde_json::from_value(value.clone()).map_err(|e| ColouringError::Json(e.to_string()))?;
        let mut seen = std::collections::HashSet::new();
        for (i, &[u, v]) in raw.red.iter().enumerate() {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ColouringError::Duplicate { line: i + 1, u: u.min(v), v: u.max(v) });
            }
        }
        let edges: Vec<(usize, usize)> = raw.red.iter().map(|&[u, v]| (u, v)).collect();
        TwoColouring::from_red_edges(raw.n, &edges)
    }

    /// Parse either format; JSON is recognised by a leading `{`.
    pub fn read_any(text: &str) -> Result<Self, ColouringError> {
        if text.trim_start().starts_with('{') {
            let value: serde_json::Value =
                serde_json::from_str(text).map_err(|e| ColouringError::Json(e.to_string()))?;
            TwoColouring::from_json(&value)
        } else {
            TwoColouring::read_text(text)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColouringJson {
    n: usize,
    red: Vec<[usize; 2]>,
}

/// One colour class, narrow when it fits in a word per row.
#[derive(Debug, Clone)]
pub enum ColourClass {
    Small(SmallGraph),
    Wide(DenseGraph),
}

impl ColourClass {
    pub fn order(&self) -> usize {
        match self {
            ColourClass::Small(g) => g.order(),
            ColourClass::Wide(g) => g.order(),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match self {
            ColourClass::Small(g) => g.has_edge(u, v),
            ColourClass::Wide(g) => g.has_edge(u, v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {vertex} appears in both {first} and {second}")]
    Overlap { vertex: usize, first: String, second: String },
    #[error("vertex {vertex} is not covered by any block")]
    Uncovered { vertex: usize },
    #[error("vertex {vertex} in block {block} is out of range for order {order}")]
    OutOfRange { vertex: usize, block: String, order: usize },
    #[error("missing block {0}")]
    MissingBlock(String),
}

/// Named disjoint blocks covering `0..N`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionSpec {
    blocks: BTreeMap<String, Vec<usize>>,
}

impl PartitionSpec {
    pub fn new() -> Self {
        PartitionSpec::default()
    }

    pub fn with_block(mut self, name: &str, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut vs: Vec<usize> = vertices.into_iter().collect();
        vs.sort_unstable();
        self.blocks.insert(name.to_string(), vs);
        self
    }

    pub fn block(&self, name: &str) -> Option<&[usize]> {
        self.blocks.get(name).map(Vec::as_slice)
    }

    /// Block contents, treating an absent block as empty.
    pub fn block_or_empty(&self, name: &str) -> &[usize] {
        self.block(name).unwrap_or(&[])
    }

    pub fn blocks(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.blocks
    }

    pub fn validate(&self, order: usize) -> Result<(), PartitionError> {
        let mut owner: Vec<Option<&str>> = vec![None; order];
        for (name, vs) in &self.blocks {
            for &v in vs {
                if v >= order {
                    return Err(PartitionError::OutOfRange { vertex: v, block: name.clone(), order });
                }
                if let Some(first) = owner[v] {
                    return Err(PartitionError::Overlap { vertex: v, first: first.to_string(), second: name.clone() });
                }
                owner[v] = Some(name);
            }
        }
        match owner.iter().position(Option::is_none) {
            Some(vertex) => Err(PartitionError::Uncovered { vertex }),
            None => Ok(()),
        }
    }

    pub fn require(&self, names: &[&str]) -> Result<(), PartitionError> {
        for name in names {
            if !self.blocks.contains_key(*name) {
                return Err(PartitionError::MissingBlock(name.to_string()));
            }
        }
        Ok(())
    }
}
