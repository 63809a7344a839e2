//! Intersection multiplicities and the theorem checks built on them: chi, the
//! Euler form xi, higher Euler characteristics, Hilbert-Samuel multiplicities,
//! Koszul Euler characteristics, Hochster theta, and reduction to the diagonal.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{EngineError, Result};
use crate::groebner;
use crate::homology::{self, Completeness, TorProfile};
use crate::module::{
    eval_poly, lagrange_fit, poly_leading_as_integer_times_factorial, FPModule, FreeModule,
    ModuleMap,
};
use crate::resolution::{free_resolution, koszul_complex, projective_dimension, ProjectiveDimension};
use crate::ring::{Monomial, Polynomial, QuotientRing, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "A")]
    pub a: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntersectionCase {
    Proper,
    Deficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: VerdictStatus,
}

impl Verdict {
    fn of(name: &str, pass: bool) -> Verdict {
        Verdict {
            name: name.into(),
            status: if pass { VerdictStatus::Pass } else { VerdictStatus::Fail },
        }
    }

    fn na(name: &str) -> Verdict {
        Verdict { name: name.into(), status: VerdictStatus::NotApplicable }
    }
}

/// Everything a Serre-pair check produces: dimensions, the Tor profile, chi,
/// xi, the higher Euler characteristics, and named theorem verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub dims: Dims,
    pub tor_lengths: Vec<u64>,
    pub chi: i64,
    pub xi: i64,
    pub chi_higher: Vec<i64>,
    pub case: IntersectionCase,
    pub verdicts: Vec<Verdict>,
}

impl MultiplicityReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != VerdictStatus::Fail)
    }
}

fn alternating_sum(lengths: &[u64]) -> i64 {
    lengths
        .iter()
        .enumerate()
        .map(|(i, &l)| if i % 2 == 0 { l as i64 } else { -(l as i64) })
        .sum()
}

fn tor_bound(ring: &Arc<QuotientRing>) -> usize {
    ring.base.nvars() + 1
}

fn complete_tor(m: &FPModule, n: &FPModule) -> Result<TorProfile> {
    let p = homology::tor(m, n, tor_bound(m.ring()))?;
    if p.completeness != Completeness::Complete {
        return Err(EngineError::Inconclusive(
            "Tor profile did not terminate; chi is undefined".into(),
        ));
    }
    Ok(p)
}

fn complete_ext(m: &FPModule, n: &FPModule) -> Result<TorProfile> {
    let p = homology::ext(m, n, tor_bound(m.ring()))?;
    if p.completeness != Completeness::Complete {
        return Err(EngineError::Inconclusive(
            "Ext profile did not terminate; xi is undefined".into(),
        ));
    }
    Ok(p)
}

/// chi(M, N): the alternating sum of Tor lengths.
pub fn chi(m: &FPModule, n: &FPModule) -> Result<i64> {
    Ok(alternating_sum(&complete_tor(m, n)?.lengths))
}

/// xi(M, N): the alternating sum of Ext lengths.
pub fn xi(m: &FPModule, n: &FPModule) -> Result<i64> {
    Ok(alternating_sum(&complete_ext(m, n)?.lengths))
}

/// chi_i(M, N) = sum_{j >= i} (-1)^(j-i) l(Tor_j).
pub fn chi_higher(m: &FPModule, n: &FPModule, i: usize) -> Result<i64> {
    let p = complete_tor(m, n)?;
    Ok(chi_higher_from(&p.lengths, i))
}

fn chi_higher_from(lengths: &[u64], i: usize) -> i64 {
    if i >= lengths.len() {
        return 0;
    }
    alternating_sum(&lengths[i..])
}

/// The Hilbert-Samuel polynomial of M along a and the multiplicity e_k.
#[derive(Debug, Clone)]
pub struct SamuelData {
    pub ideal_gens: Vec<Polynomial>,
    /// coefficients c_0 + c_1 n + ... of n -> l(M / a^n M) for n >> 0
    pub polynomial: Vec<BigRational>,
    pub e: i64,
    pub k: usize,
}

/// l(M / a^n M) read off by stabilization-then-interpolation; e_k is k! times
/// the coefficient of n^k, and 0 when the polynomial has degree below k.
pub fn hilbert_samuel(m: &FPModule, ideal_gens: &[Polynomial], k: usize) -> Result<SamuelData> {
    let ring = m.ring();
    let base = &ring.base;
    let mut gens = Vec::new();
    for g in ideal_gens {
        let g = ring.reduce(g)?;
        if g.is_zero() {
            continue;
        }
        if !g.is_homogeneous() {
            return Err(EngineError::Config(
                "Hilbert-Samuel multiplicity needs homogeneous ideal generators".into(),
            ));
        }
        gens.push(g);
    }
    if gens.is_empty() {
        return Err(EngineError::NotPrimary);
    }

    let colength = |power_gens: &[Polynomial]| -> Result<u64> {
        let q = FPModule::cyclic(ring, power_gens.to_vec())?;
        m.tensor(&q)?.length().map_err(|e| match e {
            EngineError::InfiniteLength => EngineError::NotPrimary,
            other => other,
        })
    };

    // a^n by iterated products, interreduced each step
    let mut power = gens.clone();
    let mut values: Vec<(i64, u64)> = vec![(0, 0), (1, colength(&power)?)];
    let nv = base.nvars();
    let head = nv + 2; // degree of P is at most nv
    let span = head + 4;
    let max_start = 30i64;
    let mut start = 1i64;
    loop {
        while (values.len() as i64) < start + span as i64 {
            let mut next = Vec::new();
            for p in &power {
                for g in &gens {
                    next.push(p.mul(g)?);
                }
            }
            power = groebner::ideal_groebner(base, next)?;
            values.push((values.len() as i64, colength(&power)?));
        }
        let window = &values[start as usize..start as usize + span];
        let poly = lagrange_fit(&window[..head]);
        if window
            .iter()
            .all(|&(x, v)| eval_poly(&poly, x) == BigRational::from(BigInt::from(v)))
        {
            let deg = poly.iter().rposition(|c| !num_traits::Zero::is_zero(c)).unwrap_or(0);
            if deg > k {
                return Err(EngineError::Config(format!(
                    "Hilbert-Samuel polynomial has degree {deg}, above the requested k = {k}"
                )));
            }
            let e = poly_leading_as_integer_times_factorial(&poly, k)
                .and_then(|b| b.to_i64())
                .ok_or_else(|| {
                    EngineError::Config("Hilbert-Samuel leading coefficient is not integral".into())
                })?;
            return Ok(SamuelData { ideal_gens: gens, polynomial: poly, e, k });
        }
        start += 1;
        if start > max_start {
            return Err(EngineError::ResourceLimitExceeded(
                "Hilbert-Samuel function failed to stabilize".into(),
            ));
        }
    }
}

/// chi(K(seq) (x) M): the alternating sum of Koszul homology lengths.
pub fn koszul_euler(seq: &[Polynomial], m: &FPModule) -> Result<i64> {
    let ring = m.ring();
    let q = FPModule::cyclic(ring, seq.to_vec())?;
    m.tensor(&q)?.length().map_err(|e| match e {
        EngineError::InfiniteLength => EngineError::NotPrimary,
        other => other,
    })?;
    let k = koszul_complex(seq, ring)?;
    let c = homology::tensor_with_module(&k, m)?;
    let mut acc = 0i64;
    for i in 0..c.objects.len() {
        let l = homology::homology_at(&c, i)?.length()? as i64;
        acc += if i % 2 == 0 { l } else { -l };
    }
    Ok(acc)
}

/// Hochster theta over a hypersurface: l(Tor_{2i}) - l(Tor_{2i+1}) at the
/// first certified-periodic even/odd pair; 0 for finite projective dimension.
pub fn theta(m: &FPModule, n: &FPModule) -> Result<i64> {
    let ring = m.ring();
    if !ring.is_hypersurface() {
        return Err(EngineError::UnsupportedRing);
    }
    if m.ring() != n.ring() {
        return Err(EngineError::RingMismatch);
    }
    let t = m.tensor(n)?;
    if t.krull_dim()? > 0 {
        return Err(EngineError::SerreConditionViolated);
    }
    let res = free_resolution(m, ring.base.nvars() + 9)?;
    if res.complete {
        return Ok(0);
    }
    let cert = res.certificate.clone().ok_or_else(|| {
        EngineError::Inconclusive("no periodicity certificate for the resolution tail".into())
    })?;
    let start = cert.onset + cert.onset % 2;
    let tc = homology::tensor_with_module(&res.complex, n)?;
    let reliable = tc.len().saturating_sub(1);
    if start + 3 > reliable {
        return Err(EngineError::Inconclusive(
            "certified tail too short to read a stable even/odd pair".into(),
        ));
    }
    let mut l = Vec::with_capacity(4);
    for i in start..=start + 3 {
        l.push(homology::homology_at(&tc, i)?.length()?);
    }
    if l[0] != l[2] || l[1] != l[3] {
        return Err(EngineError::Inconclusive(
            "Tor lengths not yet stationary on the certified tail".into(),
        ));
    }
    Ok(l[0] as i64 - l[1] as i64)
}

/// Depth via the Auslander-Buchsbaum formula over the polynomial ring; CM
/// means depth equals dimension. None when the question does not apply.
pub fn is_cohen_macaulay(m: &FPModule) -> Result<Option<bool>> {
    let ring = m.ring();
    if !ring.is_polynomial_ring() || m.is_zero_module()? {
        return Ok(None);
    }
    let pd = match projective_dimension(m)? {
        ProjectiveDimension::Finite(p) => p as i64,
        ProjectiveDimension::Infinite => return Ok(Some(false)),
    };
    let depth = ring.base.nvars() as i64 - pd;
    Ok(Some(depth == m.krull_dim()?))
}

/// Full Serre-pair check: dimensions, case classification, chi and xi with
/// the sign identity, higher Euler characteristics, and the vanishing /
/// positivity / Cohen-Macaulay verdicts where they apply.
pub fn verify_serre_pair(m: &FPModule, n: &FPModule) -> Result<MultiplicityReport> {
    if m.ring() != n.ring() {
        return Err(EngineError::RingMismatch);
    }
    let ring = m.ring();
    let t = m.tensor(n)?;
    if t.krull_dim()? > 0 {
        return Err(EngineError::SerreConditionViolated);
    }
    let dm = m.krull_dim()?;
    let dn = n.krull_dim()?;
    let da = FPModule::ring_module(ring).krull_dim()?;
    let dims = Dims { m: dm, n: dn, a: da };
    let case = if dm + dn == da { IntersectionCase::Proper } else { IntersectionCase::Deficient };

    let tor_profile = complete_tor(m, n)?;
    let chi = alternating_sum(&tor_profile.lengths);
    let xi = alternating_sum(&complete_ext(m, n)?.lengths);
    let chi_higher: Vec<i64> =
        (0..tor_profile.lengths.len()).map(|i| chi_higher_from(&tor_profile.lengths, i)).collect();

    let mut verdicts = Vec::new();
    verdicts.push(Verdict::of("dimension_inequality", dm + dn <= da));
    let sign = if dn.rem_euclid(2) == 0 { 1 } else { -1 };
    verdicts.push(Verdict::of("euler_form_identity", chi == sign * xi));

    if ring.is_polynomial_ring() {
        verdicts.push(match case {
            IntersectionCase::Deficient => Verdict::of("vanishing", chi == 0),
            IntersectionCase::Proper => Verdict::na("vanishing"),
        });
        verdicts.push(match case {
            IntersectionCase::Proper => Verdict::of("positivity", chi > 0),
            IntersectionCase::Deficient => Verdict::na("positivity"),
        });
        let nonneg = chi_higher.iter().all(|&c| c >= 0);
        // strictness applies from i = 1 on; chi_0 = chi vanishes on deficient
        // pairs even when Tor_0 does not
        let strict = tor_profile
            .lengths
            .iter()
            .enumerate()
            .skip(1)
            .all(|(i, &l)| l == 0 || chi_higher_from(&tor_profile.lengths, i) > 0);
        verdicts.push(Verdict::of("higher_euler_nonnegative", nonneg));
        verdicts.push(Verdict::of("higher_euler_positive_when_tor_nonzero", strict));
        let cm_pair = match (is_cohen_macaulay(m)?, is_cohen_macaulay(n)?) {
            (Some(a), Some(b)) => Some(a && b),
            _ => None,
        };
        verdicts.push(match (case, cm_pair) {
            (IntersectionCase::Proper, Some(true)) => {
                let higher_vanish = tor_profile.lengths[1..].iter().all(|&l| l == 0);
                let tensor_len = t.length()? as i64;
                Verdict::of("cohen_macaulay", higher_vanish && chi == tensor_len && chi > 0)
            }
            _ => Verdict::na("cohen_macaulay"),
        });
    } else {
        for name in [
            "vanishing",
            "positivity",
            "higher_euler_nonnegative",
            "higher_euler_positive_when_tor_nonzero",
            "cohen_macaulay",
        ] {
            verdicts.push(Verdict::na(name));
        }
    }

    Ok(MultiplicityReport {
        dims,
        tor_lengths: tor_profile.lengths,
        chi,
        xi,
        chi_higher,
        case,
        verdicts,
    })
}

/// Outcome of reduction to the diagonal: the A-side and B = A (x) A-side Tor
/// profiles and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalCheck {
    pub matches: bool,
    pub tor_a: Vec<u64>,
    pub tor_b: Vec<u64>,
}

fn embed_polynomial(f: &Polynomial, big: &Arc<RingSpec>, offset: usize) -> Result<Polynomial> {
    let small_n = f.ring.nvars();
    let terms = f
        .terms
        .iter()
        .map(|(m, c)| {
            let mut exps = vec![0u32; big.nvars()];
            exps[offset..offset + small_n].copy_from_slice(&m.exps);
            (Monomial::new(exps, &big.weights), c.clone())
        })
        .collect();
    Polynomial::from_terms(big, terms)
}

fn embed_module(m: &FPModule, big: &Arc<QuotientRing>, offset: usize) -> Result<FPModule> {
    let target = FreeModule::new(big, m.gen_shifts().to_vec());
    let matrix = m
        .presentation
        .matrix
        .iter()
        .map(|row| row.iter().map(|f| embed_polynomial(f, &big.base, offset)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let source = FreeModule::new(big, m.presentation.source.shifts.clone());
    Ok(FPModule::cokernel_of(ModuleMap::new(source, target, matrix)?))
}

/// Compares l(Tor_i^B(M (x)_k N, B/diagonal)) with l(Tor_i^A(M, N)) for all i
/// up to the variable count, over B = k[x_1..x_n, y_1..y_n].
pub fn diagonal_reduction_check(m: &FPModule, n: &FPModule) -> Result<DiagonalCheck> {
    let ring = m.ring();
    if !ring.is_polynomial_ring() {
        return Err(EngineError::UnsupportedRing);
    }
    if m.ring() != n.ring() {
        return Err(EngineError::RingMismatch);
    }
    let base = &ring.base;
    let nv = base.nvars();
    let upto = nv;
    let side_a = homology::tor(m, n, upto)?;

    let mut vars = base.vars.clone();
    vars.extend(base.vars.iter().map(|v| format!("{v}_r")));
    let mut weights = base.weights.clone();
    weights.extend(base.weights.iter().copied());
    let big_base = RingSpec::weighted(base.field, vars, base.order, weights)?;
    let big = QuotientRing::polynomial(&big_base);

    let mb = embed_module(m, &big, 0)?;
    let nb = embed_module(n, &big, nv)?;
    let external = mb.tensor(&nb)?;
    let diag: Vec<Polynomial> = (0..nv)
        .map(|i| {
            Polynomial::variable(&big_base, i).sub(&Polynomial::variable(&big_base, nv + i))
        })
        .collect::<Result<Vec<_>>>()?;
    // B/diagonal is resolved by its Koszul complex, so the B-side Tor profile
    // is the homology of K(diag) (x) (M (x)_k N)
    let k = koszul_complex(&diag, &big)?;
    let c = homology::tensor_with_module(&k, &external)?;
    let mut tor_b = Vec::with_capacity(upto + 1);
    for i in 0..=upto.min(c.len()) {
        tor_b.push(homology::homology_at(&c, i)?.length()?);
    }
    while tor_b.len() <= upto {
        tor_b.push(0);
    }
    Ok(DiagonalCheck { matches: side_a.lengths == tor_b, tor_a: side_a.lengths, tor_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::{parse_polynomial, MonomialOrder};

    fn poly_ring(vars: &[&str]) -> Arc<QuotientRing> {
        let r = RingSpec::new(
            FieldSpec::QQ,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        QuotientRing::polynomial(&r)
    }

    fn quot(vars: &[&str], rels: &[&str]) -> Arc<QuotientRing> {
        let r = RingSpec::new(
            FieldSpec::QQ,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let rels = rels.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        QuotientRing::new(&r, rels).unwrap()
    }

    fn cyc(q: &Arc<QuotientRing>, gens: &[&str]) -> FPModule {
        let ps = gens.iter().map(|s| parse_polynomial(&q.base, s).unwrap()).collect();
        FPModule::cyclic(q, ps).unwrap()
    }

    fn polys(q: &Arc<QuotientRing>, ss: &[&str]) -> Vec<Polynomial> {
        ss.iter().map(|s| parse_polynomial(&q.base, s).unwrap()).collect()
    }

    #[test]
    fn chi_of_transverse_planes_is_one() {
        let q = poly_ring(&["x", "y", "z", "w"]);
        let m = cyc(&q, &["x", "y"]);
        let n = cyc(&q, &["z", "w"]);
        assert_eq!(chi(&m, &n).unwrap(), 1);
        assert_eq!(xi(&m, &n).unwrap(), 1);
    }

    #[test]
    fn chi_of_two_planes_meeting_the_diagonal_is_two() {
        let q = poly_ring(&["x", "y", "z", "w"]);
        let m = cyc(&q, &["x*z", "x*w", "y*z", "y*w"]);
        let n = cyc(&q, &["x - z", "y - w"]);
        assert_eq!(chi(&m, &n).unwrap(), 2);
        // dim N = 2, so xi carries the same sign
        assert_eq!(xi(&m, &n).unwrap(), 2);
        assert_eq!(chi_higher(&m, &n, 0).unwrap(), 2);
        assert_eq!(chi_higher(&m, &n, 1).unwrap(), 1);
        assert_eq!(chi_higher(&m, &n, 2).unwrap(), 0);
    }

    #[test]
    fn chi_vanishes_for_deficient_pairs() {
        let q = poly_ring(&["x", "y", "z", "w"]);
        let m = cyc(&q, &["x", "y"]);
        let n = cyc(&q, &["y", "z", "w"]);
        assert_eq!(chi(&m, &n).unwrap(), 0);
    }

    #[test]
    fn chi_is_additive_on_a_short_exact_sequence() {
        // 0 -> S/(x) -> S/(x^2) -> S/(x) -> 0 against N = S/(y)
        let q = poly_ring(&["x", "y"]);
        let n = cyc(&q, &["y"]);
        let single = chi(&cyc(&q, &["x"]), &n).unwrap();
        let double = chi(&cyc(&q, &["x^2"]), &n).unwrap();
        assert_eq!(double, 2 * single);
    }

    #[test]
    fn hilbert_samuel_of_the_maximal_ideal_is_one() {
        let q = poly_ring(&["x", "y"]);
        let s = FPModule::ring_module(&q);
        let d = hilbert_samuel(&s, &polys(&q, &["x", "y"]), 2).unwrap();
        assert_eq!(d.e, 1);
    }

    #[test]
    fn hilbert_samuel_of_a_hypersurface_is_its_degree() {
        let q = poly_ring(&["x", "y"]);
        let m = cyc(&q, &["x^3 + y^3"]);
        let d = hilbert_samuel(&m, &polys(&q, &["x", "y"]), 1).unwrap();
        assert_eq!(d.e, 3);
    }

    #[test]
    fn hilbert_samuel_counts_colength_of_the_parameter_ideal() {
        let q = poly_ring(&["x", "y"]);
        let s = FPModule::ring_module(&q);
        assert_eq!(hilbert_samuel(&s, &polys(&q, &["x^2", "y"]), 2).unwrap().e, 2);
        assert_eq!(hilbert_samuel(&s, &polys(&q, &["x^2", "y^3"]), 2).unwrap().e, 6);
    }

    #[test]
    fn hilbert_samuel_rejects_non_primary_ideals() {
        let q = poly_ring(&["x", "y"]);
        let s = FPModule::ring_module(&q);
        assert!(matches!(
            hilbert_samuel(&s, &polys(&q, &["x"]), 1),
            Err(EngineError::NotPrimary)
        ));
    }

    #[test]
    fn koszul_euler_matches_hilbert_samuel() {
        let q = poly_ring(&["x", "y"]);
        let s = FPModule::ring_module(&q);
        for gens in [["x", "y"], ["x^2", "y"], ["x^2", "y^3"]] {
            let seq = polys(&q, &gens);
            let e = hilbert_samuel(&s, &seq, 2).unwrap().e;
            assert_eq!(koszul_euler(&seq, &s).unwrap(), e, "sequence {gens:?}");
        }
    }

    #[test]
    fn koszul_euler_of_a_repeated_element_cancels() {
        let q = poly_ring(&["x"]);
        let s = FPModule::ring_module(&q);
        let seq = polys(&q, &["x", "x"]);
        assert_eq!(koszul_euler(&seq, &s).unwrap(), 0);
    }

    #[test]
    fn theta_of_the_node_branches_is_one() {
        let a = quot(&["x", "y"], &["x*y"]);
        let m = cyc(&a, &["x"]);
        let n = cyc(&a, &["y"]);
        assert_eq!(theta(&m, &n).unwrap(), 1);
    }

    #[test]
    fn theta_vanishes_for_finite_projective_dimension() {
        let a = quot(&["x", "y"], &["x*y"]);
        let m = cyc(&a, &["x + y"]);
        let n = cyc(&a, &["x"]);
        assert_eq!(theta(&m, &n).unwrap(), 0);
    }

    #[test]
    fn theta_requires_a_hypersurface() {
        let q = quot(&["x", "y", "z"], &["x*y", "x*z"]);
        let m = cyc(&q, &["x"]);
        let n = cyc(&q, &["y", "z"]);
        assert!(matches!(theta(&m, &n), Err(EngineError::UnsupportedRing)));
    }

    fn verdict(r: &MultiplicityReport, name: &str) -> VerdictStatus {
        r.verdicts.iter().find(|v| v.name == name).unwrap().status
    }

    #[test]
    fn verify_deficient_pair_reports_vanishing() {
        let q = poly_ring(&["x", "y", "z", "w"]);
        let m = cyc(&q, &["x", "y"]);
        let n = cyc(&q, &["y", "z", "w"]);
        let r = verify_serre_pair(&m, &n).unwrap();
        assert_eq!(r.case, IntersectionCase::Deficient);
        assert_eq!(r.chi, 0);
        assert_eq!(verdict(&r, "vanishing"), VerdictStatus::Pass);
        assert_eq!(verdict(&r, "positivity"), VerdictStatus::NotApplicable);
        assert_eq!(verdict(&r, "dimension_inequality"), VerdictStatus::Pass);
        assert!(r.all_pass());
    }

    #[test]
    fn verify_proper_cm_pair_hits_the_fast_path() {
        let q = poly_ring(&["x", "y", "z", "w"]);
        let m = cyc(&q, &["x", "y"]);
        let n = cyc(&q, &["z", "w"]);
        let r = verify_serre_pair(&m, &n).unwrap();
        assert_eq!(r.case, IntersectionCase::Proper);
        assert_eq!(r.chi, 1);
        assert_eq!(verdict(&r, "cohen_macaulay"), VerdictStatus::Pass);
        assert_eq!(verdict(&r, "positivity"), VerdictStatus::Pass);
        assert!(r.all_pass());
    }

    #[test]
    fn verify_two_planes_pair_is_proper_but_not_cm() {
        let q = poly_ring(&["x", "y", "z", "w"]);
        let m = cyc(&q, &["x*z", "x*w", "y*z", "y*w"]);
        let n = cyc(&q, &["x - z", "y - w"]);
        let r = verify_serre_pair(&m, &n).unwrap();
        assert_eq!(r.case, IntersectionCase::Proper);
        assert_eq!(r.chi, 2);
        assert_eq!(r.tor_lengths[..2], [3, 1]);
        assert_eq!(verdict(&r, "positivity"), VerdictStatus::Pass);
        assert_eq!(verdict(&r, "cohen_macaulay"), VerdictStatus::NotApplicable);
        assert_eq!(verdict(&r, "euler_form_identity"), VerdictStatus::Pass);
        assert!(r.all_pass());
    }

    #[test]
    fn report_serializes_with_the_stable_field_names() {
        let q = poly_ring(&["x", "y"]);
        let m = cyc(&q, &["x"]);
        let n = cyc(&q, &["y"]);
        let r = verify_serre_pair(&m, &n).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["dims"]["M"], 1);
        assert_eq!(j["dims"]["A"], 2);
        assert_eq!(j["case"], "proper");
        assert!(j["verdicts"][0]["status"] == "pass");
    }

    #[test]
    fn diagonal_reduction_on_a_line_pair() {
        let q = poly_ring(&["x", "y"]);
        let m = cyc(&q, &["x"]);
        let n = cyc(&q, &["y"]);
        let d = diagonal_reduction_check(&m, &n).unwrap();
        assert!(d.matches);
        assert_eq!(d.tor_a, vec![1, 0, 0]);
        assert_eq!(d.tor_b, vec![1, 0, 0]);
    }

    #[test]
    fn diagonal_reduction_for_the_residue_field_in_one_variable() {
        let q = poly_ring(&["x"]);
        let m = cyc(&q, &["x"]);
        let d = diagonal_reduction_check(&m, &m).unwrap();
        assert!(d.matches);
        assert_eq!(d.tor_a, vec![1, 1]);
    }

    #[test]
    fn diagonal_reduction_rejects_quotient_rings() {
        let a = quot(&["x", "y"], &["x*y"]);
        let m = cyc(&a, &["x"]);
        assert!(matches!(
            diagonal_reduction_check(&m, &m),
            Err(EngineError::UnsupportedRing)
        ));
    }
}
