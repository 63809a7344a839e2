//! Homology of complexes of finitely presented modules, Tor via resolution of
//! the first argument, and Ext via the dualized complex.

use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::groebner::{self, ModuleVector};
use crate::module::{FPModule, FreeModule, ModuleMap};
use crate::resolution::{free_resolution, FreeComplex};
use crate::ring::{Polynomial, QuotientRing};

/// A complex of finitely presented modules M_0 <- M_1 <- ..., with maps given
/// by matrices on generators; maps[i] = d_{i+1}: M_{i+1} -> M_i.
#[derive(Debug, Clone)]
pub struct FPComplex {
    pub objects: Vec<FPModule>,
    pub maps: Vec<ModuleMap>,
}

impl FPComplex {
    /// Validates that each map respects relations and that consecutive
    /// compositions vanish modulo the target's relations.
    pub fn new(objects: Vec<FPModule>, maps: Vec<ModuleMap>) -> Result<FPComplex> {
        if maps.len() + 1 != objects.len() {
            return Err(EngineError::Config(
                "complex needs one more object than maps".into(),
            ));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.source.shifts != objects[i + 1].gen_shifts()
                || m.target.shifts != objects[i].gen_shifts()
            {
                return Err(EngineError::Config(format!(
                    "map {} does not match adjacent objects",
                    i + 1
                )));
            }
            let tgt_gb = objects[i].relations_gb()?;
            for col in objects[i + 1].presentation.columns() {
                let image = m.apply(&col)?;
                if !groebner::is_member(&image, tgt_gb)? {
                    return Err(EngineError::Config(format!(
                        "map {} does not descend to the presented modules",
                        i + 1
                    )));
                }
            }
            if i + 1 < maps.len() {
                let comp = m.compose(&maps[i + 1])?;
                for col in comp.columns() {
                    if !groebner::is_member(&col, tgt_gb)? {
                        return Err(EngineError::Config(format!(
                            "d{} o d{} is nonzero in the complex",
                            i + 1,
                            i + 2
                        )));
                    }
                }
            }
        }
        Ok(FPComplex { objects, maps })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.objects[0].ring()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

/// F_* (x) N for a free complex F_*: objects F_i (x) N, maps d (x) id.
pub fn tensor_with_module(c: &FreeComplex, n: &FPModule) -> Result<FPComplex> {
    if c.ring() != n.ring() {
        return Err(EngineError::RingMismatch);
    }
    let ring = c.ring();
    let gn = n.gens_rank();
    let objects: Vec<FPModule> = c
        .modules
        .iter()
        .map(|f| tensor_free(f, n))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(c.maps.len());
    for (i, d) in c.maps.iter().enumerate() {
        let rows = d.target.rank() * gn;
        let cols = d.source.rank() * gn;
        let mut matrix = vec![vec![Polynomial::zero(&ring.base); cols]; rows];
        for (m, row) in d.matrix.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                for k in 0..gn {
                    matrix[m * gn + k][j * gn + k] = entry.clone();
                }
            }
        }
        let src = FreeModule::new(ring, objects[i + 1].gen_shifts().to_vec());
        let tgt = FreeModule::new(ring, objects[i].gen_shifts().to_vec());
        maps.push(ModuleMap::new(src, tgt, matrix)?);
    }
    FPComplex::new(objects, maps)
}

/// F (x) N for a free module F: generator (j, k) has degree shift_F[j] +
/// shift_N[k]; relations are copies of N's presentation per F generator.
fn tensor_free(f: &FreeModule, n: &FPModule) -> Result<FPModule> {
    let ring = &f.ring;
    let gn = n.gens_rank();
    let mut shifts = Vec::with_capacity(f.rank() * gn);
    for &a in &f.shifts {
        for &b in n.gen_shifts() {
            shifts.push(a + b);
        }
    }
    let target = FreeModule::new(ring, shifts);
    let mut cols = Vec::new();
    for c in n.presentation.columns() {
        for j in 0..f.rank() {
            let mut v = target.zero_vector();
            for k in 0..gn {
                v.components[j * gn + k] = c.components[k].clone();
            }
            if !v.is_zero() {
                cols.push(v);
            }
        }
    }
    if cols.is_empty() {
        return Ok(FPModule::cokernel_of(ModuleMap::zero_from(target)));
    }
    Ok(FPModule::cokernel_of(ModuleMap::from_columns(&target, &cols)?))
}

/// H_i of a complex of presented modules, as a presented module: kernel
/// generators are syzygies of the outgoing map stacked with the target's
/// relations; relations are syzygies of those generators stacked with the
/// incoming image and the ambient relations.
pub fn homology_at(c: &FPComplex, i: usize) -> Result<FPModule> {
    if i >= c.objects.len() {
        return Err(EngineError::Config(format!("no object at index {i}")));
    }
    let ring = c.ring();
    let obj = &c.objects[i];
    let gi = obj.gens_rank();

    // kernel generators of the outgoing map, in generator coordinates of M_i
    let kernel: Vec<ModuleVector> = if i == 0 {
        let mut id = Vec::with_capacity(gi);
        for j in 0..gi {
            let mut v = ModuleVector::zero(&ring.base, gi);
            v.components[j] = Polynomial::one(&ring.base);
            id.push(v);
        }
        id
    } else {
        let d = &c.maps[i - 1];
        let below = &c.objects[i - 1];
        let mut stacked = d.columns();
        let ncols = stacked.len();
        stacked.extend(below.presentation.columns());
        let syz = groebner::syzygies(below.gens_rank(), &stacked, ring)?;
        let mut out = Vec::new();
        for s in syz {
            let v = ModuleVector { components: s.components[..ncols].to_vec() };
            if !v.is_zero() {
                out.push(v);
            }
        }
        out
    };

    // reduce against the ambient relations of M_i; drop generators that die
    let rel_gb = obj.relations_gb()?;
    let mut gens: Vec<ModuleVector> = Vec::new();
    for k in kernel {
        let r = groebner::normal_form(&k, rel_gb)?;
        if !r.is_zero() {
            gens.push(r);
        }
    }
    if gens.is_empty() {
        return Ok(FPModule::free(ring, Vec::new()));
    }

    let mut gen_shifts = Vec::with_capacity(gens.len());
    for g in &gens {
        match g.homogeneous_degree(obj.gen_shifts()) {
            Some(s) => gen_shifts.push(s),
            None => {
                return Err(EngineError::Config(
                    "inhomogeneous kernel generator in homology".into(),
                ))
            }
        }
    }

    // quotient by the incoming image and the ambient relations
    let mut stacked = gens.clone();
    let ngens = stacked.len();
    if i < c.maps.len() {
        stacked.extend(c.maps[i].columns());
    }
    stacked.extend(obj.presentation.columns());
    let syz = groebner::syzygies(gi, &stacked, ring)?;
    let target = FreeModule::new(ring, gen_shifts);
    let mut rel_cols = Vec::new();
    for s in syz {
        let v = ModuleVector { components: s.components[..ngens].to_vec() };
        if !v.is_zero() {
            rel_cols.push(v);
        }
    }
    if rel_cols.is_empty() {
        return Ok(FPModule::cokernel_of(ModuleMap::zero_from(target)));
    }
    Ok(FPModule::cokernel_of(ModuleMap::from_columns(&target, &rel_cols)?))
}

/// How far a Tor or Ext profile can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// the resolution terminated; entries beyond it are genuinely zero
    Complete,
    /// truncated, but the tail repeats with a periodicity certificate
    TruncatedWithCertificate,
    /// truncated with no structure detected beyond the computed range
    Truncated,
}

/// Lengths of Tor_i (or Ext^i) for i = 0..=upto, all finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorProfile {
    pub lengths: Vec<u64>,
    pub completeness: Completeness,
}

fn profile_completeness(complete: bool, certified: bool) -> Completeness {
    if complete {
        Completeness::Complete
    } else if certified {
        Completeness::TruncatedWithCertificate
    } else {
        Completeness::Truncated
    }
}

/// l(Tor_i^A(M, N)) for i = 0..=upto. Requires M (x) N to have finite length,
/// so every Tor has finite length as well. Resolves the first argument.
pub fn tor(m: &FPModule, n: &FPModule, upto: usize) -> Result<TorProfile> {
    if m.ring() != n.ring() {
        return Err(EngineError::RingMismatch);
    }
    let t = m.tensor(n)?;
    if t.krull_dim()? > 0 {
        return Err(EngineError::SerreConditionViolated);
    }
    // one extra step so homology at index `upto` sees its incoming map
    let res = free_resolution(m, upto + 1)?;
    let tc = tensor_with_module(&res.complex, n)?;
    let reliable = if res.complete { tc.objects.len() - 1 } else { tc.len().saturating_sub(1) };
    let mut lengths = Vec::with_capacity(upto + 1);
    for i in 0..=upto.min(reliable) {
        lengths.push(homology_at(&tc, i)?.length()?);
    }
    if res.complete {
        while lengths.len() <= upto {
            lengths.push(0);
        }
    }
    if lengths.len() <= upto {
        return Err(EngineError::Inconclusive(format!(
            "resolution too short for Tor up to {upto}"
        )));
    }
    Ok(TorProfile {
        lengths,
        completeness: profile_completeness(res.complete, res.certificate.is_some()),
    })
}

/// l(Ext^i_A(M, N)) for i = 0..=upto, via Hom(F_*, N) for a resolution F_* of
/// M. Errors with InfiniteLength when some Ext is not finite-length.
pub fn ext(m: &FPModule, n: &FPModule, upto: usize) -> Result<TorProfile> {
    if m.ring() != n.ring() {
        return Err(EngineError::RingMismatch);
    }
    let ring = m.ring();
    let res = free_resolution(m, upto + 1)?;
    let f = &res.complex;
    let l = f.maps.len();
    let gn = n.gens_rank();

    // hom objects in homological order 0..=l, then reversed into a chain complex
    let hom_objects: Vec<FPModule> = f
        .modules
        .iter()
        .map(|fm| {
            let dual = FreeModule::new(ring, fm.shifts.iter().map(|s| -s).collect());
            tensor_free(&dual, n)
        })
        .collect::<Result<Vec<_>>>()?;

    // delta_j: Hom(F_{j-1}, N) -> Hom(F_j, N), blockwise transpose of d_j
    let mut deltas = Vec::with_capacity(l);
    for j in 1..=l {
        let d = f.map(j);
        let rows = d.source.rank() * gn;
        let cols = d.target.rank() * gn;
        let mut matrix = vec![vec![Polynomial::zero(&ring.base); cols]; rows];
        for (jg, row) in d.matrix.iter().enumerate() {
            for (mg, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                for k in 0..gn {
                    matrix[mg * gn + k][jg * gn + k] = entry.clone();
                }
            }
        }
        let src = FreeModule::new(ring, hom_objects[j - 1].gen_shifts().to_vec());
        let tgt = FreeModule::new(ring, hom_objects[j].gen_shifts().to_vec());
        deltas.push(ModuleMap::new(src, tgt, matrix)?);
    }

    let rev_objects: Vec<FPModule> = hom_objects.into_iter().rev().collect();
    let rev_maps: Vec<ModuleMap> = deltas.into_iter().rev().collect();
    let rev = FPComplex::new(rev_objects, rev_maps)?;

    // Ext^i is the homology of the reversed complex at index l - i; the top
    // reversed index (i = l) is reliable only for complete resolutions
    let reliable = if res.complete { l } else { l.saturating_sub(1) };
    let mut lengths = Vec::with_capacity(upto + 1);
    for i in 0..=upto.min(reliable) {
        lengths.push(homology_at(&rev, l - i)?.length()?);
    }
    if res.complete {
        while lengths.len() <= upto {
            lengths.push(0);
        }
    }
    if lengths.len() <= upto {
        return Err(EngineError::Inconclusive(format!(
            "resolution too short for Ext up to {upto}"
        )));
    }
    Ok(TorProfile {
        lengths,
        completeness: profile_completeness(res.complete, res.certificate.is_some()),
    })
}
