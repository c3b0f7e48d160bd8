use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use prom_core::GridShape;

#[derive(Debug, Parser)]
#[command(name = "prom", version, about = "Learn k-space undersampling masks under a sampling budget")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineKind {
    Equispaced,
    Gaussian,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a jittered phantom family and write its k-space (plus a
    /// `<out>.target` file holding the images).
    PhantomGen {
        /// shepp-logan, concentric or striped
        #[arg(long)]
        family: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        count: u32,
        /// Grid size as HxW, e.g. 64x64
        #[arg(long, value_parser = parse_size)]
        size: GridShape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Learn a mask from a k-space file; also writes `<out-mask>.prob`.
    Optimize {
        #[arg(long)]
        data: PathBuf,
        /// key = value run configuration; defaults apply when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out_mask: PathBuf,
        /// Per-iteration trace of the first run
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Write an equispaced-lines or variable-density Gaussian mask.
    Baseline {
        #[arg(long, value_enum)]
        kind: BaselineKind,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_parser = parse_size)]
        size: GridShape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = prom_core::mask::DEFAULT_CENTER_FRACTION)]
        center_frac: f64,
        #[arg(long, default_value_t = prom_core::mask::DEFAULT_SIGMA_FRACTION)]
        sigma_frac: f64,
    },
    /// Zero-fill reconstruct every slice under a mask and report metrics.
    Evaluate {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        mask: PathBuf,
        /// Comma-separated subset of psnr, ssim, nmse
        #[arg(long, default_value = "psnr,ssim,nmse")]
        metrics: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export a mask, or with --recon a zero-filled reconstruction, as PGM.
    Export {
        #[arg(long)]
        mask: PathBuf,
        /// k-space file to reconstruct under the mask
        #[arg(long)]
        recon: Option<PathBuf>,
        #[arg(long, default_value_t = 0, requires = "recon")]
        slice: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

pub fn parse_size(s: &str) -> Result<GridShape, String> {
    let (h, w) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected HxW, got {s:?}"))?;
    let h = h.trim().parse().map_err(|_| format!("bad height in {s:?}"))?;
    let w = w.trim().parse().map_err(|_| format!("bad width in {s:?}"))?;
    GridShape::new(h, w).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_size("64x32").unwrap(), GridShape::new(64, 32).unwrap());
        assert!(parse_size("64").is_err());
        assert!(parse_size("0x4").is_err());
        assert!(parse_size("ax4").is_err());
    }

    #[test]
    fn definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
