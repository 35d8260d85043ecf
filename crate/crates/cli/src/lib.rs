//! Library side of the `treescape` command: input reading, graph export,
//! oracle verification and timing.

pub mod bench;
pub mod build;
pub mod error;
pub mod input;
pub mod output;
pub mod taxa;
pub mod verify;

pub use bench::{run_bench, BenchOptions, BenchReport};
pub use build::{run_build, BuildOptions, BuildSummary};
pub use error::{exit, CliError, Result};
pub use input::{read_trees, InputTrees, ReadOptions};
pub use output::Format;
pub use verify::{run_verify, verify_trees, VerifyOptions, VerifyReport};

use treescape::{ContainerMode, MoveKind, Rootedness};

/// Rootedness for `kind`, defaulting to unrooted for TBR and rooted
/// otherwise. TBR is defined on unrooted trees only.
pub fn resolve_rootedness(kind: MoveKind, requested: Option<Rootedness>) -> Result<Rootedness> {
    match (kind, requested) {
        (MoveKind::Tbr, Some(Rootedness::Rooted)) => {
            Err(CliError::Mode("tbr needs unrooted trees".into()))
        }
        (MoveKind::Tbr, _) => Ok(Rootedness::Unrooted),
        (_, Some(r)) => Ok(r),
        (_, None) => Ok(Rootedness::Rooted),
    }
}

/// Container mode backing a graph build.
pub fn container_mode(kind: MoveKind, rootedness: Rootedness) -> ContainerMode {
    match kind {
        MoveKind::Spr | MoveKind::Nni => ContainerMode::spr(rootedness),
        MoveKind::Tbr => ContainerMode::Tbr,
    }
}
