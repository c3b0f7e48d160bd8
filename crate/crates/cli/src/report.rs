//! CSV output with a fixed column order.

use std::io::Write;

use prom_core::metrics::MetricReport;
use prom_core::TrainTrace;

pub const TRACE_COLUMNS: [&str; 5] = ["iteration", "loss", "sum_theta", "S", "tau"];

pub fn write_trace<W: Write>(out: W, trace: &TrainTrace) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_COLUMNS)?;
    for r in &trace.records {
        w.write_record([
            r.iteration.to_string(),
            r.loss.to_string(),
            r.sum_theta.to_string(),
            r.budget.to_string(),
            r.tau.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One row per slice, then a `mean` row. Columns: `slice`, `mask_id`,
/// `alpha`, then the metrics in report order.
pub fn write_metrics<W: Write>(out: W, report: &MetricReport) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["slice".to_string(), "mask_id".to_string(), "alpha".to_string()];
    header.extend(report.metrics.iter().map(|m| m.name().to_string()));
    w.write_record(&header)?;
    let alpha = report.alpha.map(|a| a.to_string()).unwrap_or_default();
    let mean = report.mean();
    let rows = report.rows.iter().enumerate().map(|(i, r)| (i.to_string(), r));
    for (label, values) in rows.chain(std::iter::once(("mean".to_string(), &mean))) {
        let mut record = vec![label, report.mask_id.clone(), alpha.clone()];
        record.extend(values.iter().map(|v| v.to_string()));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}
