use crate::error::CliError;
use crate::sweep::ConvergenceRecord;

/// Least-squares slope of `ln(err_l2)` against `ln(K)` over records that share
/// one `t`. A first-order method gives a slope near -1.
pub fn fit_convergence_rate(records: &[ConvergenceRecord]) -> Result<f64, CliError> {
    if records.len() < 3 {
        return Err(CliError::Degenerate(format!(
            "need at least 3 points, got {}",
            records.len()
        )));
    }
    let t = records[0].t;
    if records.iter().any(|r| r.t != t) {
        return Err(CliError::Degenerate("records mix several t values".into()));
    }
    if let Some(r) = records
        .iter()
        .find(|r| r.err_l2.is_nan() || r.err_l2 <= 0.0)
    {
        return Err(CliError::Degenerate(format!(
            "err_l2 = {} at K={} has no logarithm",
            r.err_l2, r.max_symbol
        )));
    }
    let mut ks: Vec<u32> = records.iter().map(|r| r.max_symbol).collect();
    ks.sort_unstable();
    ks.dedup();
    if ks.len() != records.len() {
        return Err(CliError::Degenerate("K values are not distinct".into()));
    }

    let n = records.len() as f64;
    let xs: Vec<f64> = records
        .iter()
        .map(|r| f64::from(r.max_symbol).ln())
        .collect();
    let ys: Vec<f64> = records.iter().map(|r| r.err_l2.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
