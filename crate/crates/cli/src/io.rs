//! Text formats: PACE `.gr`, DIMACS `.col`, PACE `.td` and order files.
//! Files use 1-based vertex ids; everything in memory is 0-based.

use std::fmt::Write as _;

use pidwidth_core::graph::GraphError;
use pidwidth_core::order::OrderError;
use pidwidth_core::{Graph, PartialOrder, TreeDecomposition, VertexSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("order has a cycle: {}", fmt_cycle(.0))]
    Cycle(Vec<usize>),
    #[error("decomposition edges do not form a tree on the bags")]
    NotATree,
}

fn fmt_cycle(cycle: &[usize]) -> String {
    let mut s = String::new();
    for v in cycle.iter().chain(cycle.first()) {
        if !s.is_empty() {
            s.push_str(" < ");
        }
        let _ = write!(s, "{}", v + 1);
    }
    s
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Gr,
    Col,
}

/// A parsed graph file before a bitset width has been picked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub format: GraphFormat,
    pub n: usize,
    pub declared_m: usize,
    /// Distinct edges, 0-based, `u < v`, in file order.
    pub edges: Vec<(usize, usize)>,
    /// First comment line, if any.
    pub name: Option<String>,
    pub warnings: Vec<String>,
}

impl GraphFile {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut file = GraphFile {
            format: GraphFormat::Gr,
            n,
            declared_m: 0,
            edges: Vec::new(),
            name: None,
            warnings: Vec::new(),
        };
        let mut seen = std::collections::HashSet::new();
        for (u, v) in edges {
            let e = (u.min(v), u.max(v));
            if seen.insert(e) {
                file.edges.push(e);
            }
        }
        file.declared_m = file.edges.len();
        file
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn to_graph<const W: usize>(&self) -> Result<Graph<W>, GraphError> {
        Graph::from_edges(self.n, self.edges.iter().copied())
    }
}

fn parse_num(token: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{token}`")))
}

fn parse_edge_file(text: &str, format: GraphFormat) -> Result<GraphFile, ParseError> {
    let (kind, edge_prefix) = match format {
        GraphFormat::Gr => ("tw", None),
        GraphFormat::Col => ("edge", Some("e")),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut name = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut warnings = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        match first {
            "c" => {
                if name.is_none() {
                    let rest = raw.trim_start()[1..].trim();
                    if !rest.is_empty() {
                        name = Some(rest.to_string());
                    }
                }
                continue;
            }
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "second header line"));
                }
                let token = tokens.next().unwrap_or("");
                if token != kind {
                    return Err(syntax(line, format!("unknown header token `{token}`, expected `{kind}`")));
                }
                let n = parse_num(tokens.next(), line, "vertex count")?;
                let m = parse_num(tokens.next(), line, "edge count")?;
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line, format!("unexpected token `{extra}` in header")));
                }
                header = Some((n, m));
                continue;
            }
            _ => {}
        }
        let Some((n, _)) = header else {
            return Err(ParseError::MissingHeader);
        };
        let u_token = match edge_prefix {
            Some(prefix) if first == prefix => tokens.next(),
            Some(_) => return Err(syntax(line, format!("unknown line type `{first}`"))),
            None => Some(first),
        };
        let u = parse_num(u_token, line, "vertex")?;
        let v = parse_num(tokens.next(), line, "vertex")?;
        if let Some(extra) = tokens.next() {
            return Err(syntax(line, format!("unexpected token `{extra}`")));
        }
        for vertex in [u, v] {
            if vertex == 0 || vertex > n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        let e = (u.min(v) - 1, u.max(v) - 1);
        if seen.insert(e) {
            edges.push(e);
        } else {
            warnings.push(format!("line {line}: duplicate edge {u} {v} ignored"));
        }
    }
    let (n, declared_m) = header.ok_or(ParseError::MissingHeader)?;
    if declared_m != edges.len() {
        warnings.push(format!(
            "header declares {declared_m} edges but {} distinct edges were read",
            edges.len()
        ));
    }
    Ok(GraphFile {
        format,
        n,
        declared_m,
        edges,
        name,
        warnings,
    })
}

/// PACE graph format: `p tw <n> <m>` then `<u> <v>` per edge.
pub fn parse_gr(text: &str) -> Result<GraphFile, ParseError> {
    parse_edge_file(text, GraphFormat::Gr)
}

/// DIMACS format: `p edge <n> <m>` then `e <u> <v>` per edge.
pub fn parse_col(text: &str) -> Result<GraphFile, ParseError> {
    parse_edge_file(text, GraphFormat::Col)
}

/// Picks the format from the header line.
pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    for raw in text.lines() {
        let mut tokens = raw.split_whitespace();
        if tokens.next() == Some("p") {
            return match tokens.next() {
                Some("edge") => parse_col(text),
                _ => parse_gr(text),
            };
        }
    }
    Err(ParseError::MissingHeader)
}

pub fn write_gr(file: &GraphFile) -> String {
    let mut out = String::new();
    if let Some(name) = &file.name {
        let _ = writeln!(out, "c {name}");
    }
    let _ = writeln!(out, "p tw {} {}", file.n, file.m());
    for &(u, v) in &file.edges {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn write_col(file: &GraphFile) -> String {
    let mut out = String::new();
    if let Some(name) = &file.name {
        let _ = writeln!(out, "c {name}");
    }
    let _ = writeln!(out, "p edge {} {}", file.n, file.m());
    for &(u, v) in &file.edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// PACE `.td`: `s td <bags> <width+1> <n>`, one `b` line per bag, then the
/// tree edges.
pub fn write_td<const W: usize>(td: &TreeDecomposition<W>, n: usize) -> String {
    let mut out = String::new();
    let max_bag = td.bags().iter().map(VertexSet::len).max().unwrap_or(0);
    let _ = writeln!(out, "s td {} {} {}", td.len(), max_bag, n);
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag.iter() {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for (p, c) in td.edges() {
        let _ = writeln!(out, "{} {}", p + 1, c + 1);
    }
    out
}

/// A parsed `.td` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdFile {
    pub declared_bags: usize,
    /// The header's `width + 1` field.
    pub declared_max_bag: usize,
    pub declared_n: usize,
    /// 0-based vertices per bag, indexed by 0-based bag id.
    pub bags: Vec<Vec<usize>>,
    /// 0-based bag pairs.
    pub edges: Vec<(usize, usize)>,
}

impl TdFile {
    /// Claimed width from the header.
    pub fn claimed_width(&self) -> usize {
        self.declared_max_bag.saturating_sub(1)
    }

    /// Roots the tree at the first bag. Bags keep their ids when the file
    /// already lists parents before children; otherwise they are renumbered
    /// breadth-first.
    pub fn to_decomposition<const W: usize>(&self, n: usize) -> Result<TreeDecomposition<W>, ParseError> {
        let count = self.bags.len();
        if count == 0 {
            return Ok(TreeDecomposition::from_parts(Vec::new(), Vec::new()));
        }
        if self.edges.len() + 1 != count {
            return Err(ParseError::NotATree);
        }
        let mut adjacent = vec![Vec::new(); count];
        for &(a, b) in &self.edges {
            adjacent[a].push(b);
            adjacent[b].push(a);
        }
        let mut parent = vec![None; count];
        let mut seen = vec![false; count];
        let mut order = vec![0];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &adjacent[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    order.push(y);
                }
            }
        }
        if order.len() != count {
            return Err(ParseError::NotATree);
        }
        let preordered = parent.iter().enumerate().all(|(c, p)| p.map_or(c == 0, |p| p < c));
        let position: Vec<usize> = if preordered {
            (0..count).collect()
        } else {
            let mut pos = vec![0; count];
            for (i, &x) in order.iter().enumerate() {
                pos[x] = i;
            }
            pos
        };
        let mut parents = vec![None; count];
        let mut bags = vec![VertexSet::<W>::empty(); count];
        for x in 0..count {
            parents[position[x]] = parent[x].map(|p| position[p]);
            for &v in &self.bags[x] {
                if v >= VertexSet::<W>::CAPACITY || v >= n.max(self.declared_n) {
                    return Err(ParseError::VertexOutOfRange {
                        line: 0,
                        vertex: v + 1,
                        n,
                    });
                }
                bags[position[x]].insert(v);
            }
        }
        Ok(TreeDecomposition::from_parts(parents, bags))
    }
}

pub fn parse_td(text: &str) -> Result<TdFile, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        match first {
            "c" => continue,
            "s" => {
                if header.is_some() {
                    return Err(syntax(line, "second header line"));
                }
                let token = tokens.next().unwrap_or("");
                if token != "td" {
                    return Err(syntax(line, format!("unknown header token `{token}`, expected `td`")));
                }
                let b = parse_num(tokens.next(), line, "bag count")?;
                let w = parse_num(tokens.next(), line, "bag size")?;
                let n = parse_num(tokens.next(), line, "vertex count")?;
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line, format!("unexpected token `{extra}` in header")));
                }
                header = Some((b, w, n));
                bags = vec![None; b];
            }
            "b" => {
                let (b, _, n) = header.ok_or(ParseError::MissingHeader)?;
                let id = parse_num(tokens.next(), line, "bag id")?;
                if id == 0 || id > b {
                    return Err(syntax(line, format!("bag id {id} out of range 1..={b}")));
                }
                if bags[id - 1].is_some() {
                    return Err(syntax(line, format!("bag {id} listed twice")));
                }
                let mut bag = Vec::new();
                for token in tokens {
                    let v = parse_num(Some(token), line, "vertex")?;
                    if v == 0 || v > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
                    }
                    bag.push(v - 1);
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                let (b, _, _) = header.ok_or(ParseError::MissingHeader)?;
                let a = parse_num(Some(first), line, "bag id")?;
                let c = parse_num(tokens.next(), line, "bag id")?;
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line, format!("unexpected token `{extra}`")));
                }
                for id in [a, c] {
                    if id == 0 || id > b {
                        return Err(syntax(line, format!("bag id {id} out of range 1..={b}")));
                    }
                }
                edges.push((a - 1, c - 1));
            }
        }
    }
    let (declared_bags, declared_max_bag, declared_n) = header.ok_or(ParseError::MissingHeader)?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| syntax(0, format!("bag {} is never listed", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TdFile {
        declared_bags,
        declared_max_bag,
        declared_n,
        bags,
        edges,
    })
}

/// Order file: one `<u> < <v>` per line, `c` comments and blank lines
/// allowed. The result is transitively closed.
pub fn parse_order<const W: usize>(text: &str, n: usize) -> Result<PartialOrder<W>, ParseError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["c", ..] => {}
            [u, "<", v] => {
                let u = parse_num(Some(u), line, "vertex")?;
                let v = parse_num(Some(v), line, "vertex")?;
                for vertex in [u, v] {
                    if vertex == 0 || vertex > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex, n });
                    }
                }
                pairs.push((u - 1, v - 1));
            }
            _ => return Err(syntax(line, "expected `<u> < <v>`")),
        }
    }
    PartialOrder::from_pairs(n, pairs).map_err(|e| match e {
        OrderError::Cycle(c) => ParseError::Cycle(c),
        OrderError::VertexOutOfRange { vertex, n } => ParseError::VertexOutOfRange { line: 0, vertex: vertex + 1, n },
    })
}
