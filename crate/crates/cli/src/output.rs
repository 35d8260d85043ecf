//! Graph and vertex-table writers. Output depends only on the graph and the
//! canonical strings, so it is byte-identical across runs.

use std::io::{self, Write};

use treescape::{AdjacencyGraph, MoveKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Dot,
}

/// `# treescape <mode> m=<m>` then one `u<TAB>v` line per edge, sorted.
pub fn write_tsv(out: &mut impl Write, kind: MoveKind, graph: &AdjacencyGraph) -> io::Result<()> {
    writeln!(
        out,
        "# treescape {} m={}",
        kind.as_str(),
        graph.vertex_count()
    )?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u}\t{v}")?;
    }
    Ok(())
}

pub fn write_dot(out: &mut impl Write, graph: &AdjacencyGraph, labels: &[&str]) -> io::Result<()> {
    writeln!(out, "graph G {{")?;
    for (k, label) in labels.iter().enumerate() {
        writeln!(out, "  v{k} [label=\"{label}\"];")?;
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  v{u} -- v{v};")?;
    }
    writeln!(out, "}}")
}

pub fn write_graph(
    out: &mut impl Write,
    format: Format,
    kind: MoveKind,
    graph: &AdjacencyGraph,
    labels: &[&str],
) -> io::Result<()> {
    match format {
        Format::Tsv => write_tsv(out, kind, graph),
        Format::Dot => write_dot(out, graph, labels),
    }
}

/// One row per vertex: id, line of its first input tree, canonical string.
/// Vertices carried over from a snapshot have `-` as their line.
pub fn write_vertex_table(
    out: &mut impl Write,
    lines: &[Option<usize>],
    labels: &[&str],
) -> io::Result<()> {
    writeln!(out, "# vertex\tline\tsdlnewick")?;
    for (k, (line, label)) in lines.iter().zip(labels).enumerate() {
        match line {
            Some(line) => writeln!(out, "{k}\t{line}\t{label}")?,
            None => writeln!(out, "{k}\t-\t{label}")?,
        }
    }
    Ok(())
}
