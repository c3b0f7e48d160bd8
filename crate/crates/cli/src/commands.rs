use std::ffi::OsString;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use prom_core::kspace::{magnitude, zero_fill_reconstruct};
use prom_core::mask::{equispaced_mask, gaussian_mask};
use prom_core::metrics::{Metric, MetricReport};
use prom_core::optim::{run_prom, TrainingPair};
use prom_core::phantom::{sample_family, PhantomFamily};
use prom_core::{ComplexGrid, GridShape, ProMConfig, TrainTrace};

use crate::args::BaselineKind;
use crate::config::load_config;
use crate::error::CliError;
use crate::formats::{write_pgm, Grayscale, KSpaceFile, MaskFile};
use crate::report::{write_metrics, write_trace};

/// `<path><suffix>`, keeping the original extension.
pub fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s: OsString = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn phantom_gen(family: &str, count: usize, shape: GridShape, seed: u64, out: &Path) -> Result<(), CliError> {
    let family = PhantomFamily::by_name(family, seed).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown family {family:?}; expected one of {}",
            PhantomFamily::NAMES.join(", ")
        ))
    })?;
    let pairs = sample_family(&family, count, shape);
    let kspace: Vec<ComplexGrid> = pairs.iter().map(|p| p.kspace().clone()).collect();
    let targets: Vec<ComplexGrid> = pairs.iter().map(|p| ComplexGrid::from_real(p.target())).collect();
    KSpaceFile::from_slices(&kspace)?.save(out)?;
    KSpaceFile::from_slices(&targets)?.save(&with_suffix(out, ".target"))?;
    Ok(())
}

fn load_pairs(data: &Path) -> Result<(GridShape, Vec<TrainingPair>), CliError> {
    let file = KSpaceFile::load(data)?;
    let pairs = file.slices().into_iter().map(TrainingPair::from_kspace).collect();
    Ok((file.shape(), pairs))
}

fn save_trace(path: Option<&Path>, trace: &TrainTrace) -> Result<(), CliError> {
    if let Some(path) = path {
        write_trace(create(path)?, trace)?;
    }
    Ok(())
}

pub fn optimize(data: &Path, config: Option<&Path>, out_mask: &Path, trace: Option<&Path>) -> Result<(), CliError> {
    let config = match config {
        Some(path) => load_config(path)?,
        None => ProMConfig::default(),
    };
    let (_, pairs) = load_pairs(data)?;
    let outcome = match run_prom(&pairs, &config) {
        Ok(outcome) => outcome,
        Err(failure) => {
            save_trace(trace, &failure.trace)?;
            return Err(failure.into());
        }
    };
    MaskFile::from_binary(&outcome.mask).save(out_mask)?;
    MaskFile::from_distribution(&outcome.distribution).save(&with_suffix(out_mask, ".prob"))?;
    save_trace(trace, &outcome.traces[0])?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn baseline(
    kind: BaselineKind,
    alpha: f64,
    shape: GridShape,
    seed: u64,
    out: &Path,
    center_frac: f64,
    sigma_frac: f64,
) -> Result<(), CliError> {
    let mask = match kind {
        BaselineKind::Equispaced => equispaced_mask(shape, alpha, center_frac, seed),
        BaselineKind::Gaussian => gaussian_mask(shape, alpha, sigma_frac, seed),
    }?;
    MaskFile::from_binary(&mask).save(out)?;
    Ok(())
}

fn parse_metrics(list: &str) -> Result<Vec<Metric>, CliError> {
    let metrics = list
        .split(',')
        .map(|s| match s.parse::<Metric>() {
            Ok(m @ (Metric::Psnr | Metric::Ssim | Metric::Nmse)) => Ok(m),
            Ok(m) => Err(CliError::Usage(format!("{m} needs segmentation maps and cannot be evaluated here"))),
            Err(_) => Err(CliError::Usage(format!("unknown metric {s:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(metrics)
}

fn binary_grid(mask: &MaskFile, path: &Path, shape: GridShape) -> Result<Vec<f64>, CliError> {
    if mask.to_binary().is_none() {
        return Err(CliError::Data(format!("{}: expected a binary mask", path.display())));
    }
    if mask.shape() != shape {
        return Err(CliError::Data(format!(
            "mask is {} but data is {}",
            mask.shape(),
            shape
        )));
    }
    Ok(mask.grid_values())
}

pub fn evaluate(data: &Path, mask_path: &Path, metrics: &str, out: &Path) -> Result<(), CliError> {
    let metrics = parse_metrics(metrics)?;
    let file = KSpaceFile::load(data)?;
    let mask_file = MaskFile::load(mask_path)?;
    let mask = binary_grid(&mask_file, mask_path, file.shape())?;
    let mask_id = mask_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();

    let mut report = MetricReport::new(metrics, mask_id);
    let ones = mask.iter().filter(|&&v| v == 1.0).count();
    report.alpha = (ones > 0).then(|| mask.len() as f64 / ones as f64);
    for kspace in file.slices() {
        let target = magnitude(&prom_core::kspace::inverse_transform(&kspace));
        let recon = zero_fill_reconstruct(&kspace, &mask)?;
        report.push_reconstruction(&recon, &target)?;
    }
    write_metrics(create(out)?, &report)?;
    Ok(())
}

pub fn export(mask_path: &Path, recon: Option<&Path>, slice: usize, out: &Path) -> Result<(), CliError> {
    let mask = MaskFile::load(mask_path)?;
    match recon {
        None => write_pgm(out, &mask.grid_values(), mask.shape(), Grayscale::Unit)?,
        Some(data) => {
            let file = KSpaceFile::load(data)?;
            let grid = binary_grid(&mask, mask_path, file.shape())?;
            let kspace = file.slice(slice).ok_or_else(|| {
                CliError::Usage(format!("slice {slice} out of range ({} slices)", file.count()))
            })?;
            let image = zero_fill_reconstruct(&kspace, &grid)?;
            write_pgm(out, image.data(), image.shape(), Grayscale::MinMax)?;
        }
    }
    Ok(())
}
