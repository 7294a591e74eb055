use crate::zeros::{find_mode_zeros_with, mode0_zero_structure};
use crate::{argument_principle_count, EigenRecord, Rect, Result, SpectrumConfig, SpectrumError, SpectrumSlice};
use charfn::CuspBundle;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Smallest `K ≥ 1` with `2π(K − α)a > r_max + 2`; `K_{iν}(x)` has no zeros
/// for `ν` well below `x`, so modes beyond `K` have none up to `r_max`.
pub fn heuristic_cutoff(bundle: &CuspBundle, r_max: f64) -> i64 {
    let k = ((r_max + 2.0) / (2.0 * PI * bundle.a) + bundle.alpha).floor() as i64 + 1;
    k.max(1)
}

/// All eigenvalues `λ ≤ lambda_max`, bisected to `tol` in `r`.
pub fn enumerate_eigenvalues(bundle: &CuspBundle, lambda_max: f64, tol: f64) -> Result<SpectrumSlice> {
    enumerate_eigenvalues_with(bundle, lambda_max, tol, &SpectrumConfig::default())
}

pub fn enumerate_eigenvalues_with(
    bundle: &CuspBundle,
    lambda_max: f64,
    tol: f64,
    cfg: &SpectrumConfig,
) -> Result<SpectrumSlice> {
    if !(lambda_max >= 0.0) || !lambda_max.is_finite() {
        return Err(SpectrumError::Parameter(format!("lambda_max = {lambda_max}")));
    }
    let mut warnings = Vec::new();
    if !bundle.localization_guaranteed() {
        warnings.push(format!(
            "a = {} does not exceed 1/(4π(1−α)) = {}: zeros off the real axis are not excluded",
            bundle.a,
            1.0 / (4.0 * PI * (1.0 - bundle.alpha))
        ));
    }
    let r_max = if lambda_max > 0.25 { (lambda_max - 0.25).sqrt() } else { 0.0 };
    let mut records = Vec::new();
    let kernel_present = bundle.alpha != 0.0;
    if kernel_present {
        let (kernel, zeros) = mode0_zero_structure(bundle, r_max, tol)?;
        if !kernel {
            return Err(SpectrumError::Parameter("f₀(i/2) does not vanish".into()));
        }
        records.push(EigenRecord { k: 0, j: 0, r: 0.0, lambda: 0.0, residual: 0.0 });
        push_mode(&mut records, 0, &zeros);
    }
    let mut k_cut = heuristic_cutoff(bundle, r_max).max(cfg.k_cutoff_floor);
    let mut done = 0i64;
    if r_max > 0.0 {
        loop {
            let modes: Vec<i64> = (done + 1..=k_cut).collect();
            let found: Vec<Result<Vec<(f64, f64)>>> =
                modes.par_iter().map(|&k| find_mode_zeros_with(k, r_max, bundle, tol, cfg)).collect();
            for (k, z) in modes.iter().zip(found) {
                let z = z?;
                // f_{−k} = f_k bit for bit, so the negative mode is a copy
                push_mode(&mut records, *k, &z);
                push_mode(&mut records, -*k, &z);
            }
            done = k_cut;
            let probe = k_cut + 1;
            let count = argument_principle_count(probe, Rect::strip(r_max), bundle)?;
            if count == 0 {
                break;
            }
            if k_cut >= cfg.k_hard_limit {
                return Err(SpectrumError::Cutoff(k_cut));
            }
            k_cut = (k_cut + 1).min(cfg.k_hard_limit);
        }
    }
    records.retain(|r| r.lambda <= lambda_max);
    records.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.k.cmp(&b.k)).then(a.j.cmp(&b.j)));
    Ok(SpectrumSlice { bundle: *bundle, lambda_max, records, kernel_present, k_cutoff_used: done, warnings })
}

fn push_mode(records: &mut Vec<EigenRecord>, k: i64, zeros: &[(f64, f64)]) {
    for (i, &(r, residual)) in zeros.iter().enumerate() {
        records.push(EigenRecord { k, j: i as u32 + 1, r, lambda: 0.25 + r * r, residual });
    }
}

/// `N(λ) = #{eigenvalues ≤ λ}`, counted with multiplicity over modes.
pub fn counting_function(slice: &SpectrumSlice, lambda: f64) -> Result<usize> {
    if lambda > slice.lambda_max {
        return Err(SpectrumError::Range { lambda, lambda_max: slice.lambda_max });
    }
    Ok(slice.records.partition_point(|r| r.lambda <= lambda))
}

/// `N(λ)/λ`.
pub fn weyl_ratio(slice: &SpectrumSlice, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(SpectrumError::Parameter(format!("weyl ratio needs λ > 0, got {lambda}")));
    }
    Ok(counting_function(slice, lambda)? as f64 / lambda)
}

/// `sup N(λ)/λ` over `[lo, hi]`. `N` jumps only at eigenvalues, so the
/// supremum is attained at `lo` or at one of them.
pub fn weyl_constant(slice: &SpectrumSlice, lo: f64, hi: f64) -> Result<f64> {
    let mut best = weyl_ratio(slice, lo)?;
    if hi > slice.lambda_max {
        return Err(SpectrumError::Range { lambda: hi, lambda_max: slice.lambda_max });
    }
    for r in slice.records.iter().filter(|r| r.lambda > lo && r.lambda <= hi) {
        best = best.max(weyl_ratio(slice, r.lambda)?);
    }
    Ok(best)
}
