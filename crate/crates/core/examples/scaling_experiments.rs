//! The three scaling experiments with their log-log fits.

use snowflake_core::harness::experiments::{
    csv_points, distortion_csv, experiment_central, experiment_cl, experiment_distortion, cl_csv,
};
use snowflake_core::harness::fit::{fit_loglog, FitPoint, Window};
use snowflake_core::GroupParams;

fn main() -> snowflake_core::Result<()> {
    let g = GroupParams::bpq(2, 1)?;
    let ns: Vec<u64> = (7..=20).map(|k| 1u64 << k).collect();
    let rows = experiment_distortion(&g, &ns, None)?;
    let fit = fit_loglog(&csv_points(&distortion_csv(&rows), "N", "len")?, Window::All)?;
    println!("|w_N| ~ N^{:.4} (expected {:.4})", fit.slope, 1.0 / g.alpha());

    let central = experiment_central(&g, &(1..=100).collect::<Vec<_>>())?;
    let pts: Vec<FitPoint> = central
        .iter()
        .map(|r| FitPoint { n: r.n as f64, x: r.len as f64, y: r.z_exp.to_f64() })
        .collect();
    let fit = fit_loglog(&pts, Window::default())?;
    println!("z-exponent of W_n ~ |W_n|^{:.4} (asymptotically {:.4})", fit.slope, g.alpha() + 1.0);

    let rows = experiment_cl(&g, &(2..=32).collect::<Vec<_>>())?;
    let fit = fit_loglog(&csv_points(&cl_csv(&rows), "input_len", "conj_len")?, Window::default())?;
    println!(
        "CL: conjugator ~ input^{:.4} over n = {}..{}, R² {:.4}",
        fit.slope, fit.window.0, fit.window.1, fit.r_squared
    );
    Ok(())
}
