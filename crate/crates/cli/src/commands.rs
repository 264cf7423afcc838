//! Subcommand implementations. Each writes its result to the given sink.

use std::io::Write;
use std::path::Path;

use bathent::eigen::hermitian_eigenvalues;
use bathent::fluorescence::{analyze_fluorescence, collective_kossakowski};
use bathent::transposed::{d_tilde, d_tilde_dissipative};
use bathent::{
    negativity, ppt_min_eigenvalue, search_entangling_frame, structural_exemption, witness_derivative_general,
    InitialStateFrame, KossakowskiMatrix, LindbladGenerator, ProbeVector, SlopeVerdict,
};

use crate::config::{parse_block, parse_config};
use crate::error::CliError;
use crate::inputs::{parse_state, parse_times};
use crate::scan::scan;
use crate::svg::render_svg;
use crate::table::{evolve_header, write_numeric_csv, write_scan_csv};

#[derive(Debug, Clone, Copy)]
pub struct GlobalOptions {
    pub tol: f64,
    pub allow_non_cp: bool,
}

impl Default for GlobalOptions {
    fn default() -> Self {
        Self {
            tol: bathent::TOL_PSD,
            allow_non_cp: false,
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn io_out(e: std::io::Error) -> CliError {
    CliError::io("output", e)
}

fn load_generator(path: &Path, opts: &GlobalOptions) -> Result<LindbladGenerator, CliError> {
    let src = read_file(path)?;
    let cfg = parse_config(&src).map_err(|e| CliError::parse(path.display().to_string(), e))?;
    let d = cfg.kossakowski(opts.allow_non_cp, opts.tol)?;
    Ok(LindbladGenerator::new(cfg.hamiltonian, d)?)
}

/// Rows of `t, ρ(t) entries, trace, purity, ppt_min_eigenvalue, negativity`.
pub fn evolve_rows(gen: &LindbladGenerator, rho0: &bathent::DensityMatrix, times: &[f64]) -> Result<Vec<Vec<f64>>, CliError> {
    let superop = gen.superoperator();
    let mut rows = Vec::with_capacity(times.len());
    for &t in times {
        let rho = bathent::Propagator::new(&superop, t)?.apply(rho0.matrix()).hermitian_part();
        let mut row = vec![t];
        for x in rho.as_slice() {
            row.push(x.re);
            row.push(x.im);
        }
        row.push(rho.trace().re);
        row.push(rho.matmul(&rho).trace().re);
        row.push(ppt_min_eigenvalue(&rho)?);
        row.push(negativity(&rho)?);
        rows.push(row);
    }
    Ok(rows)
}

pub fn cmd_evolve(config: &Path, rho0: &str, times: &str, opts: &GlobalOptions, out: &mut dyn Write) -> Result<(), CliError> {
    let gen = load_generator(config, opts)?;
    let rho0 = parse_state(rho0, opts.tol).map_err(|e| CliError::parse("--rho0", e))?;
    let times = parse_times(times).map_err(|e| CliError::parse("--times", e))?;
    let rows = evolve_rows(&gen, &rho0, &times)?;
    write_numeric_csv(&evolve_header(), &rows, out).map_err(io_out)
}

fn fmt_value(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|&x| fmt_value(x)).collect::<Vec<_>>().join(", ")
}

fn fmt_angles(a: &[f64; 3]) -> String {
    format!("(φ, θ, χ) = ({})", fmt_list(a))
}

/// Human-readable creation analysis for one generator.
pub fn check_report(gen: &LindbladGenerator, budget: usize, tol: f64) -> Result<String, CliError> {
    let d = gen.kossakowski();
    let h12 = &gen.hamiltonian_spec().h12;
    let mut out = String::new();
    let min_d = d.min_eigenvalue();
    out += &format!(
        "CP: {} (min eigenvalue of D = {})\n",
        if min_d >= -tol { "valid" } else { "VIOLATED" },
        fmt_value(min_d)
    );
    let report = structural_exemption(d);
    out += &format!("D̃ spectrum: [{}]\n", fmt_list(&report.d_tilde_spectrum));
    out += &format!(
        "exemptions: B = 0: {}; Re B = 0: {}; Im B = 0 with Aᵀ = A or Cᵀ = C: {}; Aᵀ = A and Cᵀ = C: {}\n",
        report.b_zero, report.re_b_zero, report.im_b_zero_and_one_block_symmetric, report.both_blocks_symmetric
    );
    let full_spectrum = hermitian_eigenvalues(&d_tilde(d, h12))?;
    if !gen.hamiltonian_spec().h12_is_zero() {
        out += &format!("D̃ spectrum with two-body Hamiltonian: [{}]\n", fmt_list(&full_spectrum));
    }
    let psd = full_spectrum[0] >= -tol;

    let canonical = witness_derivative_general(&d_tilde_dissipative(d), &InitialStateFrame::identity(), &ProbeVector::canonical())?;
    let verdict = if psd {
        "D̃ PSD; no creation possible".to_string()
    } else {
        match SlopeVerdict::classify(canonical) {
            SlopeVerdict::Creates => format!("creation at canonical frame; ∂_tE(0) = {}", fmt_value(canonical)),
            SlopeVerdict::IndeterminateFirstOrder => {
                format!("indeterminate at first order at canonical frame; ∂_tE(0) = {}", fmt_value(canonical))
            }
            SlopeVerdict::NoCreation => {
                format!("no creation at canonical frame; ∂_tE(0) = {}", fmt_value(canonical))
            }
        }
    };
    out += &verdict;
    out.push('\n');

    if !psd {
        let outcome = search_entangling_frame(d, budget)?;
        match &outcome.found {
            None if outcome.d_tilde_psd => {
                out += "frame search: skipped; D̃ without the two-body Hamiltonian is PSD, so creation can only come from H12\n";
            }
            Some(found) => {
                out += &format!(
                    "frame search: creation found after {} evaluations; min ∂_tE(0) = {}\n  u angles {}\n  v angles {}\n",
                    outcome.evaluations,
                    fmt_value(found.min_derivative),
                    fmt_angles(&found.angles_u),
                    fmt_angles(&found.angles_v)
                );
                if !gen.hamiltonian_spec().h12_is_zero() {
                    out += "  note: frame search ignores the two-body Hamiltonian\n";
                }
            }
            None if SlopeVerdict::classify(outcome.best_value) == SlopeVerdict::IndeterminateFirstOrder => {
                out += &format!(
                    "frame search: best ∂_tE(0) = {} after {} evaluations; indeterminate at first order\n",
                    fmt_value(outcome.best_value),
                    outcome.evaluations
                );
            }
            None => {
                out += &format!(
                    "frame search: no creating frame within {} evaluations (best ∂_tE(0) = {}); inconclusive\n",
                    outcome.evaluations,
                    fmt_value(outcome.best_value)
                );
            }
        }
    }
    Ok(out)
}

pub fn cmd_check(config: &Path, budget: usize, opts: &GlobalOptions, out: &mut dyn Write) -> Result<(), CliError> {
    if budget == 0 {
        return Err(CliError::Invalid("budget must be at least 1".into()));
    }
    let gen = load_generator(config, opts)?;
    let report = check_report(&gen, budget, opts.tol)?;
    out.write_all(report.as_bytes()).map_err(io_out)
}

pub fn cmd_scan(
    resolution: usize,
    budget: usize,
    svg: Option<&Path>,
    opts: &GlobalOptions,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let records = scan(resolution, budget, opts.tol)?;
    write_scan_csv(&records, out).map_err(io_out)?;
    if let Some(path) = svg {
        std::fs::write(path, render_svg(&records, resolution, 800))
            .map_err(|e| CliError::io(path.display().to_string(), e))?;
    }
    Ok(())
}

/// Collective-bath report for `A = B = C`.
pub fn fluorescence_report(d: &KossakowskiMatrix, budget: usize, tol: f64) -> Result<String, CliError> {
    let report = analyze_fluorescence(d, budget, tol)?;
    let mut out = format!("D̃ min eigenvalue: {}\n", fmt_value(report.d_tilde_min_eigenvalue));
    if report.d_tilde_psd {
        let why = if report.real_block { "Im(A) = 0: " } else { "" };
        out += &format!("{why}no creation; ρ̃ evolves completely positively\n");
    } else if let Some(found) = &report.search.found {
        out += &format!(
            "creation frame found with |a₁⟩ = |b₁⟩: angles {}; min ∂_tE(0) = {}; |⟨u|Im(A)|u⟩|² = {}\n",
            fmt_angles(&found.angles_u),
            fmt_value(found.min_derivative),
            fmt_value(report.indicator.unwrap_or(0.0))
        );
    } else {
        out += &format!(
            "no creating frame with |a₁⟩ = |b₁⟩ within {} evaluations (best ∂_tE(0) = {})\n",
            report.search.evaluations,
            fmt_value(report.search.best_value)
        );
    }
    Ok(out)
}

pub fn cmd_fluorescence(block: &Path, budget: usize, opts: &GlobalOptions, out: &mut dyn Write) -> Result<(), CliError> {
    if budget == 0 {
        return Err(CliError::Invalid("budget must be at least 1".into()));
    }
    let src = read_file(block)?;
    let a = parse_block(&src).map_err(|e| CliError::parse(block.display().to_string(), e))?;
    if !a.is_hermitian(opts.tol) {
        return Err(CliError::Invalid(format!("A is not Hermitian (defect {:e})", a.hermitian_defect())));
    }
    let d = match collective_kossakowski(&a, opts.tol) {
        Ok(d) => d,
        Err(bathent::Error::NotPositive { min_eigenvalue }) if !opts.allow_non_cp => {
            return Err(CliError::NotCompletelyPositive(min_eigenvalue))
        }
        Err(bathent::Error::NotPositive { .. }) => KossakowskiMatrix::unchecked(a.clone(), a.clone(), a)?,
        Err(e) => return Err(CliError::Invalid(e.to_string())),
    };
    let report = fluorescence_report(&d, budget, opts.tol)?;
    out.write_all(report.as_bytes()).map_err(io_out)
}
