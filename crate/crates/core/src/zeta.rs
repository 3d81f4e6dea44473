//! ζ-maps on centralizers in `B_pq+`, bounded Bezout coefficients, and the
//! conjugator pipeline for the central extension `B̃_pq+`.

use ibig::ops::{Abs, DivRem, RemEuclid};
use ibig::IBig;

use crate::conjugacy::{class_representative, preferred_rep_element, Preferred, PreferredRep, Verdict};
use crate::engine::{canonicalize, z_exponent, GroupKind, GroupParams, TPoint};
use crate::error::{Error, Result};
use crate::snowflake::{short_element_word, short_t_word};
use crate::words::{max_root, Generator, RootDecomposition, Word};

/// `ζ_γ(x)`: the exponent `m` with `x⁻¹ γ̃ x = γ̃ z^m` in `B̃_pq+`.
///
/// `params` fixes `(p, q)`; z letters in `γ` and `x` are ignored for the
/// centralizer check and cancel in the commutator.
pub fn zeta_value(params: &GroupParams, gamma: &Word, x: &Word) -> Result<IBig> {
    let plus = params.with_kind(GroupKind::BpqPlus);
    let (g, xx) = (gamma.delete(Generator::Z), x.delete(Generator::Z));
    let ge = canonicalize(&plus, &g)?;
    let xe = canonicalize(&plus, &xx)?;
    if ge.conjugate_by(&xe)? != ge {
        return Err(Error::NotInCentralizer);
    }
    let commutator = Word::product([&xx.inverse(), &g, &xx, &g.inverse()]);
    z_exponent(&params.with_kind(GroupKind::TildeBpqPlus), &commutator)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaCase {
    Identity,
    PureBPower,
    BLOmega,
    MissesCb,
}

impl ZetaCase {
    pub fn tag(self) -> &'static str {
        match self {
            ZetaCase::Identity => "identity",
            ZetaCase::PureBPower => "pure_b_power",
            ZetaCase::BLOmega => "b_l_omega",
            ZetaCase::MissesCb => "misses_Cb",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaData {
    pub gamma: Option<PreferredRep>,
    pub case: ZetaCase,
    /// Centralizer generators with their ζ-values.
    pub generators: Vec<(Word, IBig)>,
    /// gcd of the ζ-values; 0 for the zero map.
    pub ideal_gcd: IBig,
    pub omega_root: Option<RootDecomposition>,
    /// θ-exponent sum of `ω`.
    pub j: i64,
    /// θ-exponent sum of the maximal root `ω_0`.
    pub j0: i64,
}

impl ZetaData {
    pub fn is_zero_map(&self) -> bool {
        self.ideal_gcd == IBig::from(0u8)
    }

    fn zero_map(gamma: Option<PreferredRep>, case: ZetaCase) -> Self {
        ZetaData {
            gamma,
            case,
            generators: Vec::new(),
            ideal_gcd: IBig::from(0u8),
            omega_root: None,
            j: 0,
            j0: 0,
        }
    }
}

fn gcd_of(values: impl IntoIterator<Item = IBig>) -> IBig {
    values
        .into_iter()
        .fold(IBig::from(0u8), |g, v| if g == IBig::from(0u8) { v.abs() } else { g.gcd(&v) })
}

/// Centralizer generators of a preferred representative and their ζ-values.
pub fn centralizer_data(pref: &Preferred) -> Result<ZetaData> {
    let rep = match pref {
        Preferred::MissesCentralizer => return Ok(ZetaData::zero_map(None, ZetaCase::MissesCb)),
        Preferred::Rep(r) => r,
    };
    let params = rep.params;
    let zero = IBig::from(0u8);
    let gamma = rep.word();
    if rep.omega.is_empty() {
        if rep.l == zero {
            return Ok(ZetaData::zero_map(Some(rep.clone()), ZetaCase::Identity));
        }
        let generators: Vec<(Word, IBig)> = [Generator::B, Generator::A, Generator::Theta]
            .into_iter()
            .map(|g| {
                let x = Word::power_of(g, 1);
                zeta_value(&params, &gamma, &x).map(|z| (x, z))
            })
            .collect::<Result<_>>()?;
        return Ok(ZetaData {
            gamma: Some(rep.clone()),
            case: ZetaCase::PureBPower,
            ideal_gcd: gcd_of(generators.iter().map(|(_, z)| z.clone())),
            generators,
            omega_root: None,
            j: 0,
            j0: 0,
        });
    }
    let root = max_root(&rep.omega)?;
    let b = Word::power_of(Generator::B, 1);
    let zb = zeta_value(&params, &gamma, &b)?;
    let zw = zeta_value(&params, &gamma, &root.root)?;
    Ok(ZetaData {
        gamma: Some(rep.clone()),
        case: ZetaCase::BLOmega,
        ideal_gcd: gcd_of([zb.clone(), zw.clone()]),
        j: rep.omega.exponent_sum(Generator::Theta),
        j0: root.root.exponent_sum(Generator::Theta),
        generators: vec![(b, zb), (root.root.clone(), zw)],
        omega_root: Some(root),
    })
}

/// Coefficients `(λ, μ_1, …, μ_r)` with `λ m_0 + Σ μ_i m_i = N`,
/// `|μ_i| < |m_0|` and `|λ| < |N/m_0| + Σ|m_i|` (non-strict when
/// `Σ|m_i| = 0`, where `λ = N/m_0` is forced). `None` when `gcd(m) ∤ N`.
pub fn bezout_bounded(m: &[IBig], n: &IBig) -> Result<Option<(IBig, Vec<IBig>)>> {
    let zero = IBig::from(0u8);
    let Some(m0) = m.first().filter(|m0| **m0 != zero) else {
        return Err(Error::ZeroLeadingCoefficient);
    };
    // a · m = g, extended one coefficient at a time.
    let mut coeffs = vec![IBig::from(1u8)];
    let mut g = m0.clone();
    for mi in &m[1..] {
        let (g2, x, y) = g.extended_gcd(mi);
        for c in coeffs.iter_mut() {
            *c *= &x;
        }
        coeffs.push(y);
        g = g2;
    }
    if g < zero {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -&*c;
        }
    }
    let (scale, rem) = n.clone().div_rem(&g);
    if rem != zero {
        return Ok(None);
    }
    let abs_m0 = m0.abs();
    let mut lambda = &coeffs[0] * &scale;
    let mut mus = Vec::with_capacity(m.len() - 1);
    for (ai, mi) in coeffs[1..].iter().zip(&m[1..]) {
        let ai = ai * &scale;
        let mu = (&ai).rem_euclid(&abs_m0);
        let eta = (&ai - &mu) / m0;
        lambda += eta * mi;
        mus.push(mu);
    }
    let lhs = &lambda * m0 + mus.iter().zip(&m[1..]).fold(IBig::from(0u8), |acc, (mu, mi)| acc + mu * mi);
    if lhs != *n {
        return Err(Error::CertificateFailed("bezout equation"));
    }
    if !bezout_bounds_hold(m, n, &lambda, &mus) {
        return Err(Error::CertificateFailed("bezout bounds"));
    }
    Ok(Some((lambda, mus)))
}

/// The two bounds of the bounded Bezout lemma, checked in exact arithmetic:
/// `|μ_i| < |m_0|` and `|λ|·|m_0| < |N| + |m_0|·Σ|m_i|`.
pub fn bezout_bounds_hold(m: &[IBig], n: &IBig, lambda: &IBig, mus: &[IBig]) -> bool {
    let abs_m0 = (&m[0]).abs();
    let sum = m[1..].iter().fold(IBig::from(0u8), |acc, x| acc + x.abs());
    let mus_ok = mus.iter().all(|mu| mu.abs() < abs_m0);
    let lhs = lambda.abs() * &abs_m0;
    let rhs = n.abs() + &abs_m0 * &sum;
    let lambda_ok = if sum == IBig::from(0u8) { lhs <= rhs } else { lhs < rhs };
    mus_ok && lambda_ok
}

/// `g` with `g⁻¹ γ̃ g = γ̃ z^N` in `B̃_pq+`, or `None` when `N ∉ im ζ_γ`.
pub fn central_offset_conjugator(zd: &ZetaData, n: &IBig) -> Result<Option<Word>> {
    let zero = IBig::from(0u8);
    let Some(rep) = zd.gamma.as_ref() else {
        return Ok((*n == zero).then(Word::empty));
    };
    let params = rep.params;
    let g = match zd.case {
        _ if zd.is_zero_map() => {
            return Ok((*n == zero).then(Word::empty));
        }
        ZetaCase::PureBPower => {
            let (k, r) = n.clone().div_rem(&rep.l);
            if r != zero {
                return Ok(None);
            }
            Word::power_of(Generator::Theta, i64::try_from(&k).expect("θ power fits i64"))
        }
        ZetaCase::BLOmega => {
            let (_, zb) = &zd.generators[0];
            let (omega0, zw) = &zd.generators[1];
            let b_first = *zb != zero;
            let m = if b_first {
                [zb.clone(), zw.clone()]
            } else {
                [zw.clone(), zb.clone()]
            };
            let Some((lambda, mus)) = bezout_bounded(&m, n)? else {
                return Ok(None);
            };
            let pow = |w: &Word, k: &IBig| w.pow(i64::try_from(k).expect("power fits i64"));
            if b_first {
                short_t_word(&params, &TPoint::new(0, lambda)).concat(&pow(omega0, &mus[0]))
            } else {
                pow(omega0, &lambda).concat(&short_t_word(&params, &TPoint::new(0, mus[0].clone())))
            }
        }
        ZetaCase::Identity | ZetaCase::MissesCb => unreachable!("zero map handled above"),
    };
    if zeta_value(&params, &rep.word(), &g)? != *n {
        return Err(Error::CertificateFailed("central offset conjugator"));
    }
    Ok(Some(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildeReason {
    /// The images in `B_pq+` are not conjugate.
    NotConjugateInBpqPlus,
    /// The central offset is outside the image of ζ.
    OffsetNotInImage,
}

impl TildeReason {
    pub fn tag(self) -> &'static str {
        match self {
            TildeReason::NotConjugateInBpqPlus => "not_conjugate_in_bpq+",
            TildeReason::OffsetNotInImage => "offset_not_in_zeta_image",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakdown {
    pub x_u: Word,
    pub g: Word,
    pub x_v_inv: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeCert {
    pub verdict: Verdict,
    /// `X` with `X⁻¹ u X = v` in `B̃_pq+`, present iff conjugate.
    pub conjugator: Option<Word>,
    pub breakdown: Option<Breakdown>,
    pub n_u: IBig,
    pub n_v: IBig,
    pub n: IBig,
    pub case: Option<ZetaCase>,
    pub reason: Option<TildeReason>,
}

impl TildeCert {
    pub fn is_conjugate(&self) -> bool {
        self.verdict == Verdict::Conjugate
    }
}

/// Decides conjugacy in `B̃_pq+` and builds a verified conjugator
/// `x_u · g · x_v⁻¹`.
pub fn cl_tilde(params: &GroupParams, u: &Word, v: &Word) -> Result<TildeCert> {
    let tilde = params.with_kind(GroupKind::TildeBpqPlus);
    let plus = params.with_kind(GroupKind::BpqPlus);
    let e_u = IBig::from(u.exponent_sum(Generator::Z));
    let e_v = IBig::from(v.exponent_sum(Generator::Z));
    let (ub, vb) = (u.delete(Generator::Z), v.delete(Generator::Z));
    let cu = canonicalize(&plus, &ub)?;
    let cv = canonicalize(&plus, &vb)?;
    let zero = IBig::from(0u8);
    let mut cert = TildeCert {
        verdict: Verdict::NotConjugate,
        conjugator: None,
        breakdown: None,
        n_u: zero.clone(),
        n_v: zero.clone(),
        n: zero.clone(),
        case: None,
        reason: Some(TildeReason::NotConjugateInBpqPlus),
    };
    let (rep_u, cls_u) = class_representative(&cu)?;
    let (rep_v, cls_v) = class_representative(&cv)?;
    if rep_u != rep_v {
        return Ok(cert);
    }
    let pu = preferred_rep_element(&cu)?;
    let pv = preferred_rep_element(&cv)?;
    let (u0, x_u, x_v) = match (&pu, &pv) {
        (Preferred::Rep(a), Preferred::Rep(b)) => (a.word(), a.conjugator.clone(), b.conjugator.clone()),
        _ => (short_element_word(&rep_u), cls_u, cls_v),
    };
    let offset = |x: &Word, w: &Word, e: &IBig| -> Result<IBig> {
        let lhs = Word::product([&x.inverse(), w, x, &u0.inverse()]);
        Ok(z_exponent(&tilde, &lhs)? + e)
    };
    cert.n_u = offset(&x_u, &ub, &e_u)?;
    cert.n_v = offset(&x_v, &vb, &e_v)?;
    cert.n = &cert.n_v - &cert.n_u;
    let zd = centralizer_data(&pu)?;
    cert.case = Some(zd.case);
    let Some(g) = central_offset_conjugator(&zd, &cert.n)? else {
        cert.reason = Some(TildeReason::OffsetNotInImage);
        return Ok(cert);
    };
    let x = Word::product([&x_u, &g, &x_v.inverse()]).free_reduce();
    let xe = canonicalize(&tilde, &x)?;
    if canonicalize(&tilde, u)?.conjugate_by(&xe)? != canonicalize(&tilde, v)? {
        return Err(Error::CertificateFailed("tilde conjugator"));
    }
    cert.verdict = Verdict::Conjugate;
    cert.reason = None;
    cert.conjugator = Some(x);
    cert.breakdown = Some(Breakdown {
        x_u,
        g,
        x_v_inv: x_v.inverse(),
    });
    Ok(cert)
}
