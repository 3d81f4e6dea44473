//! Least-squares fits on log-log data and static SVG plots.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// One data point: scale parameter `n` and the fitted pair `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitPoint {
    pub n: f64,
    pub x: f64,
    pub y: f64,
}

impl FitPoint {
    /// A point whose fitted abscissa is its scale parameter.
    pub fn new(x: f64, y: f64) -> Self {
        FitPoint { n: x, x, y }
    }
}

/// Which rows enter a fit, selected on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Window {
    /// Drops the lowest octave: keeps `n ≥ 2 · min n`.
    #[default]
    DropLowestOctave,
    All,
    /// Inclusive bounds.
    Range(f64, f64),
}

impl std::str::FromStr for Window {
    type Err = String;

    /// `default`, `all`, or `lo:hi`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "default" => Ok(Window::DropLowestOctave),
            "all" => Ok(Window::All),
            _ => {
                let (lo, hi) = s
                    .split_once(':')
                    .ok_or_else(|| format!("window must be default, all, or lo:hi, got {s:?}"))?;
                let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
                Ok(Window::Range(parse(lo)?, parse(hi)?))
            }
        }
    }
}

impl Window {
    fn select(&self, points: &[FitPoint]) -> Vec<FitPoint> {
        let min_n = points.iter().map(|p| p.n).fold(f64::INFINITY, f64::min);
        points
            .iter()
            .copied()
            .filter(|p| match *self {
                Window::DropLowestOctave => p.n >= 2.0 * min_n,
                Window::All => true,
                Window::Range(lo, hi) => p.n >= lo && p.n <= hi,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Smallest and largest `n` used.
    pub window: (f64, f64),
    pub points: usize,
}

/// Fits `log y = slope · log x + intercept` over the window.
pub fn fit_loglog(points: &[FitPoint], window: Window) -> Result<FitReport> {
    let used = window.select(points);
    if used.len() < 3 {
        return Err(Error::InsufficientData(used.len()));
    }
    if let Some(bad) = used.iter().flat_map(|p| [p.x, p.y]).find(|v| v.is_nan() || *v <= 0.0) {
        return Err(Error::NonPositive(bad));
    }
    let logs: Vec<(f64, f64)> = used.iter().map(|p| (p.x.ln(), p.y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|l| l.0).sum::<f64>() / k;
    let my = logs.iter().map(|l| l.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|l| (l.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|l| (l.0 - mx) * (l.1 - my)).sum();
    let syy: f64 = logs.iter().map(|l| (l.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    let ns = used.iter().map(|p| p.n);
    Ok(FitReport {
        slope,
        intercept,
        r_squared,
        window: (ns.clone().fold(f64::INFINITY, f64::min), ns.fold(f64::NEG_INFINITY, f64::max)),
        points: used.len(),
    })
}

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

/// Log-log scatter of all positive points, the fitted line, and an optional
/// reference slope through the fit's centroid. Output depends only on input.
pub fn render_svg(points: &[FitPoint], fit: &FitReport, reference_slope: Option<f64>, title: &str) -> String {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.x > 0.0 && p.y > 0.0)
        .map(|p| (p.x.log10(), p.y.log10()))
        .collect();
    let span = |v: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 0.5, lo + 0.5)
        }
    };
    let (x0, x1) = span(&mut logs.iter().map(|l| l.0));
    let (y0, y1) = span(&mut logs.iter().map(|l| l.1));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let ln10 = std::f64::consts::LN_10;
    // The fit lives in natural logs; in base 10 the slope is unchanged.
    let fit_y = |x: f64| fit.slope * x + fit.intercept / ln10;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let line = |s: &mut String, f: &dyn Fn(f64) -> f64, style: &str| {
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#,
            sx(x0),
            sy(f(x0)),
            sx(x1),
            sy(f(x1))
        );
    };
    if let Some(r) = reference_slope {
        let cx = (x0 + x1) / 2.0;
        let cy = fit_y(cx);
        line(&mut s, &|x| cy + r * (x - cx), r#"stroke="gray" stroke-dasharray="6 4""#);
    }
    line(&mut s, &fit_y, r#"stroke="crimson" stroke-width="1.5""#);
    for (x, y) in &logs {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="steelblue"/>"#, sx(*x), sy(*y));
    }
    let mut legend = format!("slope {:.4}, R² {:.4}", fit.slope, fit.r_squared);
    if let Some(r) = reference_slope {
        let _ = write!(legend, ", reference {r:.4}");
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 14.0,
        escape(&legend)
    );
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares() -> Vec<FitPoint> {
        [2.0, 4.0, 8.0, 16.0].iter().map(|&x| FitPoint::new(x, x * x)).collect()
    }

    #[test]
    fn exact_power_law() {
        let f = fit_loglog(&squares(), Window::All).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        let f = fit_loglog(&squares(), Window::default()).unwrap();
        assert_eq!(f.window, (4.0, 16.0));
        assert!((f.slope - 2.0).abs() < 1e-9);
    }

    #[test]
    fn too_few_points() {
        let pts = &squares()[..2];
        assert_eq!(fit_loglog(pts, Window::All), Err(Error::InsufficientData(2)));
        let pts = vec![FitPoint::new(1.0, 0.0), FitPoint::new(2.0, 1.0), FitPoint::new(3.0, 1.0)];
        assert_eq!(fit_loglog(&pts, Window::All), Err(Error::NonPositive(0.0)));
    }

    #[test]
    fn window_parsing() {
        assert_eq!("all".parse::<Window>().unwrap(), Window::All);
        assert_eq!("4:32".parse::<Window>().unwrap(), Window::Range(4.0, 32.0));
        assert!("4-32".parse::<Window>().is_err());
    }

    #[test]
    fn svg_is_deterministic() {
        let pts = squares();
        let f = fit_loglog(&pts, Window::All).unwrap();
        let a = render_svg(&pts, &f, Some(2.0), "y = x^2");
        assert_eq!(a, render_svg(&pts, &f, Some(2.0), "y = x^2"));
        assert_eq!(a.matches("<circle").count(), 4);
    }
}
