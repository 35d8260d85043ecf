//! Reading newline-delimited Newick files.

use std::path::Path;

use treescape::{parse_newick, ParseError, Rootedness, Strictness, Tree};

use crate::error::{CliError, Result};
use crate::taxa::TaxonMap;

/// How to read an input file.
#[derive(Clone, Debug)]
pub struct ReadOptions {
    pub rootedness: Rootedness,
    pub strictness: Strictness,
    pub taxa: Option<TaxonMap>,
}

impl ReadOptions {
    pub fn new(rootedness: Rootedness) -> Self {
        ReadOptions {
            rootedness,
            strictness: Strictness::Strict,
            taxa: None,
        }
    }
}

/// Trees read from a file, with their 1-based line numbers.
#[derive(Clone, Debug, Default)]
pub struct InputTrees {
    pub trees: Vec<Tree>,
    pub lines: Vec<usize>,
}

impl InputTrees {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}

pub fn read_trees(path: &Path, opts: &ReadOptions) -> Result<InputTrees> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    parse_trees(&text, opts).map_err(|e| match e {
        LineError::Parse {
            line,
            column,
            source,
        } => CliError::Parse {
            path: path.to_owned(),
            line,
            column,
            source,
        },
        LineError::Taxa { line, message } => CliError::Taxa {
            path: path.to_owned(),
            line,
            message,
        },
        LineError::LabelSet { line, first_line } => CliError::LabelSet { line, first_line },
    })
}

/// A failure tied to a line of the input.
#[derive(Debug)]
pub enum LineError {
    Parse {
        line: usize,
        column: usize,
        source: ParseError,
    },
    Taxa {
        line: usize,
        message: String,
    },
    LabelSet {
        line: usize,
        first_line: usize,
    },
}

/// Parse one tree per non-blank line, skipping `#` comments, and check
/// that every tree has the label set of the first.
pub fn parse_trees(text: &str, opts: &ReadOptions) -> std::result::Result<InputTrees, LineError> {
    let mut out = InputTrees::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let indent = raw.len() - raw.trim_start().len();
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tree = match &opts.taxa {
            None => parse_newick(body.as_bytes(), opts.rootedness, opts.strictness).map_err(
                |source| LineError::Parse {
                    line,
                    column: indent + source.position + 1,
                    source,
                },
            )?,
            Some(map) => {
                let t = map
                    .translate(body)
                    .map_err(|(at, message)| LineError::Taxa {
                        line,
                        message: format!("column {}: {message}", indent + at + 1),
                    })?;
                parse_newick(t.text.as_bytes(), opts.rootedness, opts.strictness).map_err(
                    |source| {
                        let at = t.origin.get(source.position).copied().unwrap_or(body.len());
                        LineError::Parse {
                            line,
                            column: indent + at + 1,
                            source,
                        }
                    },
                )?
            }
        };
        if let Some(first) = out.trees.first() {
            if tree.taxa() != first.taxa() {
                return Err(LineError::LabelSet {
                    line,
                    first_line: out.lines[0],
                });
            }
        }
        out.trees.push(tree);
        out.lines.push(line);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use treescape::ParseErrorKind;

    use super::*;

    #[test]
    fn comments_and_blank_lines() {
        let text = "# three trees\n((1,2),3);\n\n  (1,(2,3));\n# end\n";
        let got = parse_trees(text, &ReadOptions::new(Rootedness::Rooted)).unwrap();
        assert_eq!(got.lines, vec![2, 4]);
    }

    #[test]
    fn parse_errors_carry_line_and_column() {
        let text = "((1,2),3);\n  ((1,2),x);\n";
        let Err(LineError::Parse {
            line,
            column,
            source,
        }) = parse_trees(text, &ReadOptions::new(Rootedness::Rooted))
        else {
            panic!("expected a parse error")
        };
        assert_eq!((line, column), (2, 10));
        assert!(matches!(source.kind, ParseErrorKind::InvalidLabel(_)));
        let arity = parse_trees("(1,2,(3,4));", &ReadOptions::new(Rootedness::Rooted));
        assert!(matches!(arity, Err(LineError::Parse { line: 1, .. })));
    }

    #[test]
    fn label_sets_must_agree() {
        let text = "(1,2,3);\n(1,2,(3,4));\n";
        let got = parse_trees(text, &ReadOptions::new(Rootedness::Unrooted));
        assert!(matches!(
            got,
            Err(LineError::LabelSet {
                line: 2,
                first_line: 1
            })
        ));
    }

    #[test]
    fn named_taxa() {
        let mut opts = ReadOptions::new(Rootedness::Unrooted);
        opts.taxa = Some(TaxonMap::parse("a\t1\nb\t2\nc\t3\nd\t4\n").unwrap());
        let got = parse_trees("(a,b,(c,d));\n(a,c,(b,z));\n", &opts);
        assert!(matches!(got, Err(LineError::Taxa { line: 2, .. })));
        opts.strictness = Strictness::Lenient;
        let got = parse_trees("(a:1,b:2,(c,d)x:3);\n", &opts).unwrap();
        assert_eq!(
            treescape::sdlnewick_tree(&got.trees[0]).as_str(),
            "(1,2,(3,4));"
        );
    }
}
