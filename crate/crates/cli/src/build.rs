use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use treescape::{
    construct_graph, decode_tree, AfContainer, GraphBuild, MoveKind, Strictness, Tree,
};

use crate::container_mode;
use crate::error::{CliError, Result};
use crate::input::{read_trees, ReadOptions};
use crate::output::{write_graph, write_vertex_table, Format};

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub input: PathBuf,
    pub kind: MoveKind,
    pub read: ReadOptions,
    pub format: Format,
    /// Graph destination; stdout when absent.
    pub out: Option<PathBuf>,
    /// Vertex table destination; defaults to `<out stem>.vertices.tsv`.
    pub vertices: Option<PathBuf>,
    /// Container snapshot to extend. Trees already in it come first.
    pub append: Option<PathBuf>,
}

#[derive(Debug, Default)]
pub struct BuildSummary {
    pub inputs: usize,
    pub vertices: usize,
    pub edges: usize,
    pub warnings: Vec<String>,
    pub vertex_table: Option<PathBuf>,
}

/// Sidecar path for a graph written to `out`.
pub fn vertex_table_path(out: &Path) -> PathBuf {
    out.with_extension("vertices.tsv")
}

fn load_snapshot(path: &Path, kind: MoveKind, read: &ReadOptions) -> Result<Vec<Tree>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = File::open(path).map_err(CliError::io(path))?;
    let container =
        AfContainer::read_snapshot(BufReader::new(file)).map_err(|source| CliError::Snapshot {
            path: path.to_owned(),
            source,
        })?;
    let want = container_mode(kind, read.rootedness);
    if container.mode() != want {
        return Err(CliError::Mode(format!(
            "snapshot {} holds a {} container, this build needs {}",
            path.display(),
            container.mode(),
            want
        )));
    }
    container
        .tree_strings()
        .map(|s| {
            decode_tree(s.as_bytes(), Strictness::Strict).map_err(|e| CliError::Snapshot {
                path: path.to_owned(),
                source: e.into(),
            })
        })
        .collect()
}

/// Read, build and write. The graph goes to `opts.out` or to `stdout`.
pub fn run_build(opts: &BuildOptions, stdout: &mut impl Write) -> Result<BuildSummary> {
    let input = read_trees(&opts.input, &opts.read)?;
    let mut summary = BuildSummary {
        inputs: input.len(),
        ..Default::default()
    };
    let mut trees = match &opts.append {
        Some(path) => load_snapshot(path, opts.kind, &opts.read)?,
        None => Vec::new(),
    };
    let carried = trees.len();
    if let (Some(old), Some(new), Some(path)) = (trees.first(), input.trees.first(), &opts.append) {
        if old.taxa() != new.taxa() {
            return Err(CliError::SnapshotLabels {
                path: path.clone(),
                line: input.lines[0],
            });
        }
    }
    let mut lines: Vec<Option<usize>> = vec![None; carried];
    lines.extend(input.lines.iter().map(|&l| Some(l)));
    trees.extend(input.trees);
    if trees.is_empty() {
        summary
            .warnings
            .push(format!("{}: no trees", opts.input.display()));
    }

    let GraphBuild {
        graph,
        labeling,
        container,
    } = construct_graph(&trees, opts.kind)?;
    for (k, v) in labeling.duplicates() {
        let first = match lines[labeling.first_input[v]] {
            Some(line) => format!("line {line}"),
            None => "a snapshot tree".to_string(),
        };
        match lines[k] {
            Some(line) => summary
                .warnings
                .push(format!("line {line} repeats {first} (vertex {v})")),
            // Snapshot trees are distinct among themselves.
            None => unreachable!("snapshot holds a repeated tree"),
        }
    }
    let labels: Vec<&str> = container.tree_strings().collect();
    let vertex_lines: Vec<Option<usize>> = labeling.first_input.iter().map(|&i| lines[i]).collect();

    match &opts.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(CliError::io(path))?);
            write_graph(&mut w, opts.format, opts.kind, &graph, &labels)
                .and_then(|_| w.flush())
                .map_err(CliError::io(path))?;
        }
        None => write_graph(stdout, opts.format, opts.kind, &graph, &labels)
            .map_err(CliError::io("<stdout>"))?,
    }
    let table = opts
        .vertices
        .clone()
        .or_else(|| opts.out.as_deref().map(vertex_table_path));
    if let Some(path) = &table {
        let mut w = BufWriter::new(File::create(path).map_err(CliError::io(path))?);
        write_vertex_table(&mut w, &vertex_lines, &labels)
            .and_then(|_| w.flush())
            .map_err(CliError::io(path))?;
    }
    if let Some(path) = &opts.append {
        let tmp = path.with_extension("tmp");
        let mut w = BufWriter::new(File::create(&tmp).map_err(CliError::io(&tmp))?);
        container
            .write_snapshot(&mut w)
            .and_then(|_| w.flush())
            .map_err(CliError::io(&tmp))?;
        drop(w);
        std::fs::rename(&tmp, path).map_err(CliError::io(path))?;
    }

    summary.vertices = graph.vertex_count();
    summary.edges = graph.edge_count();
    summary.vertex_table = table;
    Ok(summary)
}
