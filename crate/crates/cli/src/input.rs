//! Argument parsing helpers: graphs, targets, colourings, vertex lists.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use copyramsey::solver::Target;
use copyramsey::{DenseGraph, GraphFamily, SmallGraph, TwoColouring};

/// A graph given inline as graph6 or as a file holding graph6 or an edge
/// list (`<order>` on the first line, then `u v` per line).
pub fn dense_graph(arg: &str) -> Result<DenseGraph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_graph_text(&text).with_context(|| format!("parsing {arg}"));
    }
    DenseGraph::from_graph6(arg.trim()).with_context(|| format!("{arg:?} is neither a file nor graph6"))
}

pub fn small_graph(arg: &str) -> Result<SmallGraph> {
    dense_graph(arg)?.to_small().with_context(|| format!("pattern {arg} is too large"))
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty())
}

fn parse_graph_text(text: &str) -> Result<DenseGraph> {
    let mut lines = content_lines(text);
    let first = lines.next().context("empty graph file")?;
    if let Ok(order) = first.parse::<usize>() {
        let mut edges = Vec::new();
        for l in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let [u, v] = parts[..] else { bail!("edge line {l:?} should be `u v`") };
            edges.push((
                u.parse().with_context(|| format!("in {l:?}"))?,
                v.parse().with_context(|| format!("in {l:?}"))?,
            ));
        }
        return Ok(DenseGraph::from_edges(order, &edges)?);
    }
    Ok(DenseGraph::from_graph6(first)?)
}

/// Graph6 lines of a family file, or a single inline graph6 string.
fn family(source: &str) -> Result<GraphFamily> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        let members = content_lines(&text)
            .map(|l| SmallGraph::from_graph6(l).with_context(|| format!("family member {l:?}")))
            .collect::<Result<Vec<_>>>()?;
        if members.is_empty() {
            bail!("family file {source} has no graphs");
        }
        return Ok(GraphFamily::new(members));
    }
    Ok(GraphFamily::singleton(
        SmallGraph::from_graph6(source).with_context(|| format!("{source:?} is neither a file nor graph6"))?,
    ))
}

/// `<n>x<graph6|family-file>`, or just the pattern for one copy.
pub fn target(arg: &str) -> Result<Target> {
    let (copies, source) = match arg.split_once('x') {
        Some((n, rest)) if !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) => {
            (n.parse::<usize>().with_context(|| format!("copy count in {arg:?}"))?, rest)
        }
        _ => (1, arg),
    };
    Ok(Target::new(family(source)?, copies)?)
}

pub fn colouring(path: &str) -> Result<TwoColouring> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    TwoColouring::read_any(&text).with_context(|| format!("parsing colouring {path}"))
}

/// Comma-separated vertex list; empty string is the empty list.
pub fn vertex_list(arg: &str) -> Result<Vec<usize>> {
    arg.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("vertex {s:?} in {arg:?}")))
        .collect()
}

/// `a..b`, inclusive at both ends.
pub fn n_range(arg: &str) -> Result<(usize, usize)> {
    let (a, b) = arg.split_once("..").with_context(|| format!("range {arg:?} should look like 3..8"))?;
    let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
    if a == 0 || a > b {
        bail!("range {arg:?} must satisfy 1 <= a <= b");
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        let t = target("2xBw").unwrap();
        assert_eq!((t.copies(), t.family().len()), (2, 1));
        assert_eq!(target("Bw").unwrap().copies(), 1);
        assert!(target("0xBw").is_err());
        assert!(target("2x").is_err());
    }

    #[test]
    fn ranges_and_lists() {
        assert_eq!(n_range("3..8").unwrap(), (3, 8));
        assert!(n_range("8..3").is_err());
        assert_eq!(vertex_list("0, 2,5").unwrap(), vec![0, 2, 5]);
        assert!(vertex_list("").unwrap().is_empty());
    }

    #[test]
    fn edge_list_text() {
        let g = parse_graph_text("# triangle\n3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(parse_graph_text("Bw").unwrap().edge_count(), 3);
    }
}
