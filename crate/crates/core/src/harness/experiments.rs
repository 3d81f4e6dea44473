//! Scaling experiments. Every value is an exact integer from the engine;
//! rows come back ordered by `n` whatever order they were computed in.

use std::fmt::Write as _;

use ibig::IBig;
use rayon::prelude::*;

use crate::engine::{z_exponent, CanonicalElement, GroupKind, GroupParams, TPoint};
use crate::error::{Error, Result};
use crate::oracle::Ball;
use crate::snowflake::{commutator_word, length_law_bound, short_z_word, snowflake_word_cached, SnowflakeCache};
use crate::words::{Generator, Word};
use crate::zeta::cl_tilde;

use super::fit::FitPoint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistortionRow {
    pub n: u64,
    pub len: usize,
    /// `(2p + 3)(2^d − 1)`.
    pub bound: u64,
    /// `d(1, a^N)` when it is within the ball's reach.
    pub bfs_len: Option<u32>,
}

/// Snowflake lengths against the length-law bound, with BFS distances for
/// the rows a ball can certify (`d ≤ cap`, computed up to twice its radius).
pub fn experiment_distortion(
    params: &GroupParams,
    ns: &[u64],
    ball: Option<(&Ball, u32)>,
) -> Result<Vec<DistortionRow>> {
    let cache = SnowflakeCache::default();
    let mut rows: Vec<DistortionRow> = ns
        .par_iter()
        .map(|&n| -> Result<DistortionRow> {
            let s = snowflake_word_cached(&cache, params, &IBig::from(n));
            let bfs_len = match ball {
                Some((b, cap)) => {
                    let g = CanonicalElement::vertex(*b.params(), TPoint::new(n, 0));
                    b.geodesic_length(&g)?.filter(|&d| d <= cap)
                }
                None => None,
            };
            Ok(DistortionRow {
                n,
                len: s.length,
                bound: length_law_bound(params, s.depth),
                bfs_len,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

pub fn distortion_csv(rows: &[DistortionRow]) -> String {
    let mut s = String::from("N,len,bound,bfs_len\n");
    for r in rows {
        let bfs = r.bfs_len.map(|d| d.to_string()).unwrap_or_default();
        let _ = writeln!(s, "{},{},{},{}", r.n, r.len, r.bound, bfs);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClRow {
    pub n: u64,
    pub input_len: usize,
    pub conj_len: usize,
    pub ok: bool,
}

/// `cl_tilde(b, b · short_z_word(n⌊n^α⌋))` for each `n`.
pub fn experiment_cl(params: &GroupParams, ns: &[u64]) -> Result<Vec<ClRow>> {
    let tilde = params.with_kind(GroupKind::TildeBpqPlus);
    let mut rows: Vec<ClRow> = ns
        .par_iter()
        .map(|&n| -> Result<ClRow> {
            let m = crate::snowflake::floor_pow_alpha(&tilde, n) * IBig::from(n);
            let zw = short_z_word(&tilde, &m);
            let u = Word::power_of(Generator::B, 1);
            let v = u.concat(&zw);
            let cert = cl_tilde(&tilde, &u, &v)?;
            let conj_len = cert.conjugator.as_ref().map_or(0, Word::len);
            Ok(ClRow {
                n,
                input_len: u.len() + v.len(),
                conj_len,
                ok: cert.is_conjugate(),
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

pub fn cl_csv(rows: &[ClRow]) -> String {
    let mut s = String::from("n,input_len,conj_len,ok\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.n, r.input_len, r.conj_len, r.ok);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralRow {
    pub n: u64,
    pub len: usize,
    pub z_exp: IBig,
}

/// Lengths and exact z-exponents of the commutator words `W_n`.
pub fn experiment_central(params: &GroupParams, ns: &[u64]) -> Result<Vec<CentralRow>> {
    let tilde = params.with_kind(GroupKind::TildeBpqPlus);
    let mut rows: Vec<CentralRow> = ns
        .par_iter()
        .map(|&n| -> Result<CentralRow> {
            let (w, _) = commutator_word(&tilde, n);
            Ok(CentralRow {
                n,
                len: w.len(),
                z_exp: z_exponent(&tilde, &w)?,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

/// Parses a CSV with a header row into fit points for two named columns,
/// using the first column as the scale parameter. Rows with an empty field
/// in either column are skipped.
pub fn csv_points(text: &str, x_col: &str, y_col: &str) -> Result<Vec<FitPoint>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Invalid("empty CSV".into()))?
        .split(',')
        .map(str::trim)
        .collect();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| *h == name)
            .ok_or_else(|| Error::Invalid(format!("no column {name:?}; have {}", header.join(","))))
    };
    let (xi, yi) = (col(x_col)?, col(y_col)?);
    let mut out = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let get = |i: usize| -> Result<Option<f64>> {
            match fields.get(i).copied() {
                None | Some("") => Ok(None),
                Some(f) => f
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|e| Error::Invalid(format!("field {f:?}: {e}"))),
            }
        };
        if let (Some(n), Some(x), Some(y)) = (get(0)?, get(xi)?, get(yi)?) {
            out.push(FitPoint { n, x, y });
        }
    }
    Ok(out)
}
