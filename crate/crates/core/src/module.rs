//! Finitely presented graded modules over a quotient ring: presentations,
//! Hilbert functions, length, Krull dimension, tensor products, kernels and
//! cokernels.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{EngineError, Result};
use crate::groebner::{self, ModuleVector};
use crate::ring::{Monomial, Polynomial, QuotientRing};

/// A graded free module A(-s_1) + ... + A(-s_r); shifts[i] is the degree of
/// the i-th generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub ring: Arc<QuotientRing>,
    pub shifts: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: &Arc<QuotientRing>, shifts: Vec<i64>) -> FreeModule {
        FreeModule { ring: ring.clone(), shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn zero_vector(&self) -> ModuleVector {
        ModuleVector::zero(&self.ring.base, self.rank())
    }
}

/// A graded degree-0 map between free modules, stored row-major on the target
/// (matrix[i][j] sends source generator j into target component i). Entries
/// are kept reduced modulo the ring relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub matrix: Vec<Vec<Polynomial>>,
}

impl ModuleMap {
    pub fn new(
        source: FreeModule,
        target: FreeModule,
        matrix: Vec<Vec<Polynomial>>,
    ) -> Result<ModuleMap> {
        if source.ring != target.ring {
            return Err(EngineError::RingMismatch);
        }
        if matrix.len() != target.rank() || matrix.iter().any(|row| row.len() != source.rank()) {
            return Err(EngineError::Config("presentation matrix shape mismatch".into()));
        }
        let ring = &source.ring;
        let mut reduced = Vec::with_capacity(matrix.len());
        for (i, row) in matrix.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, f) in row.into_iter().enumerate() {
                let f = ring.reduce(&f)?;
                if !f.is_zero() {
                    let want = source.shifts[j] - target.shifts[i];
                    match f.homogeneous_degree() {
                        Some(d) if d as i64 == want => {}
                        _ => {
                            return Err(EngineError::Config(format!(
                                "entry ({i},{j}) is not homogeneous of degree {want}"
                            )))
                        }
                    }
                }
                out.push(f);
            }
            reduced.push(out);
        }
        Ok(ModuleMap { source, target, matrix: reduced })
    }

    /// Map with zero source: presents a free module.
    pub fn zero_from(target: FreeModule) -> ModuleMap {
        let ring = target.ring.clone();
        let rows = vec![Vec::new(); target.rank()];
        ModuleMap { source: FreeModule::new(&ring, Vec::new()), target, matrix: rows }
    }

    /// Build a map from target + columns, inferring source shifts from
    /// homogeneity of each column.
    pub fn from_columns(target: &FreeModule, columns: &[ModuleVector]) -> Result<ModuleMap> {
        let mut shifts = Vec::with_capacity(columns.len());
        for col in columns {
            if col.is_zero() {
                return Err(EngineError::Config("zero column has no inferable degree".into()));
            }
            match col.homogeneous_degree(&target.shifts) {
                Some(d) => shifts.push(d),
                None => {
                    return Err(EngineError::Config(
                        "column is not homogeneous; cannot infer shift".into(),
                    ))
                }
            }
        }
        let source = FreeModule::new(&target.ring, shifts);
        let matrix = (0..target.rank())
            .map(|i| columns.iter().map(|c| c.components[i].clone()).collect())
            .collect();
        ModuleMap::new(source, target.clone(), matrix)
    }

    pub fn column(&self, j: usize) -> ModuleVector {
        ModuleVector {
            components: self.matrix.iter().map(|row| row[j].clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<ModuleVector> {
        (0..self.source.rank()).map(|j| self.column(j)).collect()
    }

    pub fn apply(&self, v: &ModuleVector) -> Result<ModuleVector> {
        let ring = &self.target.ring;
        let mut out = self.target.zero_vector();
        for (j, f) in v.components.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            out = out.add(&self.column(j).mul_poly(f)?)?;
        }
        let comps = out.components.iter().map(|p| ring.reduce(p)).collect::<Result<Vec<_>>>()?;
        Ok(ModuleVector { components: comps })
    }

    /// Composition self . other (other first), reduced mod relations.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let ring = &self.target.ring;
        let mut matrix = Vec::with_capacity(self.target.rank());
        for i in 0..self.target.rank() {
            let mut row = Vec::with_capacity(other.source.rank());
            for j in 0..other.source.rank() {
                let mut acc = Polynomial::zero(&ring.base);
                for k in 0..self.source.rank() {
                    acc = acc.add(&self.matrix[i][k].mul(&other.matrix[k][j])?)?;
                }
                row.push(ring.reduce(&acc)?);
            }
            matrix.push(row);
        }
        ModuleMap::new(other.source.clone(), self.target.clone(), matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|row| row.iter().all(|f| f.is_zero()))
    }
}

/// A finitely presented graded module, given as the cokernel of its
/// presentation map.
#[derive(Debug)]
pub struct FPModule {
    pub presentation: ModuleMap,
    gb: OnceLock<Vec<ModuleVector>>,
}

impl Clone for FPModule {
    fn clone(&self) -> FPModule {
        FPModule { presentation: self.presentation.clone(), gb: self.gb.clone() }
    }
}

impl FPModule {
    pub fn cokernel_of(presentation: ModuleMap) -> FPModule {
        FPModule { presentation, gb: OnceLock::new() }
    }

    /// The free module A(-s_1) + ... + A(-s_r) as an FP module.
    pub fn free(ring: &Arc<QuotientRing>, shifts: Vec<i64>) -> FPModule {
        FPModule::cokernel_of(ModuleMap::zero_from(FreeModule::new(ring, shifts)))
    }

    /// The ring itself.
    pub fn ring_module(ring: &Arc<QuotientRing>) -> FPModule {
        FPModule::free(ring, vec![0])
    }

    /// Cyclic module A/I for homogeneous ideal generators.
    pub fn cyclic(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<FPModule> {
        let target = FreeModule::new(ring, vec![0]);
        let mut cols = Vec::new();
        for g in gens {
            let g = ring.reduce(&g)?;
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(EngineError::Config("cyclic module needs homogeneous generators".into()));
            }
            cols.push(ModuleVector::from_ideal_element(g));
        }
        if cols.is_empty() {
            return Ok(FPModule::ring_module(ring));
        }
        Ok(FPModule::cokernel_of(ModuleMap::from_columns(&target, &cols)?))
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.presentation.target.ring
    }

    pub fn gen_shifts(&self) -> &[i64] {
        &self.presentation.target.shifts
    }

    pub fn gens_rank(&self) -> usize {
        self.presentation.target.rank()
    }

    /// GB of the relation submodule (presentation columns plus ring relations
    /// per component); computed once on first use.
    pub fn relations_gb(&self) -> Result<&[ModuleVector]> {
        if self.gb.get().is_none() {
            let gb = groebner::submodule_groebner(
                self.gens_rank(),
                &self.presentation.columns(),
                self.ring(),
            )?;
            let _ = self.gb.set(gb);
        }
        Ok(self.gb.get().unwrap())
    }

    pub fn is_zero_module(&self) -> Result<bool> {
        let gb = self.relations_gb()?;
        let ring = self.ring();
        for i in 0..self.gens_rank() {
            let mut e = ModuleVector::zero(&ring.base, self.gens_rank());
            e.components[i] = Polynomial::one(&ring.base);
            if !groebner::is_member(&e, gb)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimension over the field of the degree-d graded piece: the number of
    /// standard monomial-times-generator pairs of degree d.
    pub fn hilbert_function(&self, d: i64) -> Result<u64> {
        let gb = self.relations_gb()?;
        let ring = self.ring();
        let leads = lead_terms(gb);
        let mut count = 0u64;
        for (i, &s) in self.gen_shifts().iter().enumerate() {
            let target = d - s;
            if target < 0 {
                continue;
            }
            for m in monomials_of_degree(&ring.base.weights, target as u32) {
                let standard = !leads
                    .iter()
                    .any(|(c, lm)| *c == i && lm.divides(&m));
                if standard {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Hilbert function values plus the interpolated Hilbert polynomial.
    pub fn hilbert_data(&self) -> Result<HilbertData> {
        if self.ring().base.weights.iter().any(|&w| w != 1) {
            return Err(EngineError::Config(
                "Hilbert polynomial interpolation requires unit weights".into(),
            ));
        }
        let n = self.ring().base.nvars();
        let dmin = self.gen_shifts().iter().copied().min().unwrap_or(0);
        let mut values: BTreeMap<i64, u64> = BTreeMap::new();
        let value = |this: &FPModule, values: &mut BTreeMap<i64, u64>, d: i64| -> Result<u64> {
            if let Some(&v) = values.get(&d) {
                return Ok(v);
            }
            let v = this.hilbert_function(d)?;
            values.insert(d, v);
            Ok(v)
        };
        let span = n + 4; // n+2 consistent values plus 2 verification points
        let max_start = dmin + 200;
        let mut start = dmin;
        loop {
            if start > max_start {
                return Err(EngineError::ResourceLimitExceeded(
                    "Hilbert function failed to stabilize".into(),
                ));
            }
            let pts: Vec<(i64, u64)> = (0..span)
                .map(|k| {
                    let d = start + k as i64;
                    value(self, &mut values, d).map(|v| (d, v))
                })
                .collect::<Result<Vec<_>>>()?;
            // fit through the first n points (degree <= n-1), verify the rest
            let head = &pts[..n.min(pts.len())];
            let poly = lagrange_fit(head);
            if pts.iter().all(|&(d, v)| eval_poly(&poly, d) == BigRational::from(BigInt::from(v))) {
                return Ok(HilbertData {
                    values,
                    polynomial: poly,
                    stabilization: start,
                });
            }
            start += 1;
        }
    }

    /// Degree of the Hilbert polynomial + 1; 0 for nonzero finite-length
    /// modules; -1 for the zero module.
    pub fn krull_dim(&self) -> Result<i64> {
        let data = self.hilbert_data()?;
        match data.poly_degree() {
            Some(d) => Ok(d as i64 + 1),
            None => {
                // zero Hilbert polynomial: finite length; the zero module has
                // no nonzero value anywhere
                if data.values.values().all(|&v| v == 0) {
                    Ok(-1)
                } else {
                    Ok(0)
                }
            }
        }
    }

    /// Total k-dimension, finite only when the Hilbert function eventually
    /// vanishes; detected combinatorially on the lead-term module.
    pub fn length(&self) -> Result<u64> {
        let gb = self.relations_gb()?;
        let ring = self.ring();
        let nvars = ring.base.nvars();
        let leads = lead_terms(gb);
        // finiteness: every generator needs a pure power of every variable
        // among the lead terms of its component
        let mut bound: i64 = self.gen_shifts().iter().copied().min().unwrap_or(0);
        for (i, &s) in self.gen_shifts().iter().enumerate() {
            let mut comp_bound: i64 = s;
            for j in 0..nvars {
                let pure = leads
                    .iter()
                    .filter(|(c, m)| {
                        *c == i
                            && m.exps
                                .iter()
                                .enumerate()
                                .all(|(k, &e)| k == j || e == 0)
                    })
                    .map(|(_, m)| m.exps[j])
                    .min();
                match pure {
                    Some(a) => {
                        comp_bound += ((a.saturating_sub(1)) * ring.base.weights[j]) as i64
                    }
                    None => return Err(EngineError::InfiniteLength),
                }
            }
            bound = bound.max(comp_bound);
        }
        let dmin = self.gen_shifts().iter().copied().min().unwrap_or(0);
        let mut total = 0u64;
        for d in dmin..=bound {
            total += self.hilbert_function(d)?;
        }
        Ok(total)
    }

    /// M (+) N as a presented module.
    pub fn direct_sum(&self, other: &FPModule) -> Result<FPModule> {
        if self.ring() != other.ring() {
            return Err(EngineError::RingMismatch);
        }
        let ring = self.ring();
        let mut shifts = self.gen_shifts().to_vec();
        shifts.extend_from_slice(other.gen_shifts());
        let target = FreeModule::new(ring, shifts);
        let g1 = self.gens_rank();
        let mut cols = Vec::new();
        for c in self.presentation.columns() {
            let mut v = target.zero_vector();
            v.components[..g1].clone_from_slice(&c.components);
            cols.push(v);
        }
        for c in other.presentation.columns() {
            let mut v = target.zero_vector();
            v.components[g1..].clone_from_slice(&c.components);
            cols.push(v);
        }
        if cols.is_empty() {
            return Ok(FPModule::cokernel_of(ModuleMap::zero_from(target)));
        }
        Ok(FPModule::cokernel_of(ModuleMap::from_columns(&target, &cols)?))
    }

    /// M (x)_A N: generators are pairwise generator products; relations come
    /// from each side tensored with the other side's generators.
    pub fn tensor(&self, other: &FPModule) -> Result<FPModule> {
        if self.ring() != other.ring() {
            return Err(EngineError::RingMismatch);
        }
        let ring = self.ring();
        let g1 = self.gens_rank();
        let g2 = other.gens_rank();
        let mut shifts = Vec::with_capacity(g1 * g2);
        for &a in self.gen_shifts() {
            for &b in other.gen_shifts() {
                shifts.push(a + b);
            }
        }
        let target = FreeModule::new(ring, shifts);
        let idx = |i: usize, j: usize| i * g2 + j;
        let mut cols = Vec::new();
        for c in self.presentation.columns() {
            for j in 0..g2 {
                let mut v = target.zero_vector();
                for i in 0..g1 {
                    v.components[idx(i, j)] = c.components[i].clone();
                }
                if !v.is_zero() {
                    cols.push(v);
                }
            }
        }
        for c in other.presentation.columns() {
            for i in 0..g1 {
                let mut v = target.zero_vector();
                for j in 0..g2 {
                    v.components[idx(i, j)] = c.components[j].clone();
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
}

/// Kernel of a degree-0 map of free modules over A, presented by its own
/// syzygies.
pub fn kernel(f: &ModuleMap) -> Result<FPModule> {
    let ring = &f.target.ring;
    let cols = f.columns();
    let ker_gens = groebner::syzygies(f.target.rank(), &cols, ring)?;
    if ker_gens.is_empty() {
        return Ok(FPModule::free(ring, Vec::new()));
    }
    let gen_target = FreeModule::new(
        ring,
        ker_gens
            .iter()
            .map(|v| {
                v.homogeneous_degree(&f.source.shifts)
                    .ok_or_else(|| EngineError::Config("inhomogeneous kernel generator".into()))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    let rels = groebner::syzygies(f.source.rank(), &ker_gens, ring)?;
    if rels.is_empty() {
        return Ok(FPModule::cokernel_of(ModuleMap::zero_from(gen_target)));
    }
    Ok(FPModule::cokernel_of(ModuleMap::from_columns(&gen_target, &rels)?))
}

/// Cokernel of a degree-0 map of free modules.
pub fn cokernel(f: &ModuleMap) -> Result<FPModule> {
    if f.is_zero() {
        return Ok(FPModule::cokernel_of(ModuleMap::zero_from(f.target.clone())));
    }
    Ok(FPModule::cokernel_of(f.clone()))
}

fn lead_terms(gb: &[ModuleVector]) -> Vec<(usize, Monomial)> {
    // module lead terms under TOP; within a component the poly lead is the
    // component lead, and the module lead dominates it, so collecting each
    // vector's module lead is what divisibility tests need
    let mut out = Vec::new();
    for v in gb {
        let mut best: Option<(usize, &Monomial)> = None;
        for (i, p) in v.components.iter().enumerate() {
            if let Some((m, _)) = p.leading_term() {
                best = match best {
                    None => Some((i, m)),
                    Some((bc, bm)) => {
                        match crate::ring::compare(m, bm, p.ring.order).unwrap() {
                            std::cmp::Ordering::Greater => Some((i, m)),
                            std::cmp::Ordering::Equal if i < bc => Some((i, m)),
                            _ => Some((bc, bm)),
                        }
                    }
                };
            }
        }
        if let Some((c, m)) = best {
            out.push((c, m.clone()));
        }
    }
    out
}

/// All exponent vectors with weighted degree exactly d.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; weights.len()];
    fn rec(weights: &[u32], pos: usize, rem: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == weights.len() - 1 {
            if rem % weights[pos] == 0 {
                exps[pos] = rem / weights[pos];
                out.push(Monomial::new(exps.clone(), weights));
                exps[pos] = 0;
            }
            return;
        }
        let mut e = 0;
        while e * weights[pos] <= rem {
            exps[pos] = e;
            rec(weights, pos + 1, rem - e * weights[pos], exps, out);
            e += 1;
        }
        exps[pos] = 0;
    }
    rec(weights, 0, d, &mut exps, &mut out);
    out
}

/// Hilbert function values, the interpolated Hilbert polynomial, and the
/// degree from which they agree.
#[derive(Debug, Clone)]
pub struct HilbertData {
    pub values: BTreeMap<i64, u64>,
    /// coefficients c_0 + c_1 n + ... of the Hilbert polynomial
    pub polynomial: Vec<BigRational>,
    pub stabilization: i64,
}

impl HilbertData {
    pub fn poly_degree(&self) -> Option<usize> {
        self.polynomial.iter().rposition(|c| !c.is_zero())
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.poly_degree().map(|d| &self.polynomial[d])
    }
}

/// Interpolating polynomial through the given points (Lagrange, exact).
pub fn lagrange_fit(points: &[(i64, u64)]) -> Vec<BigRational> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n.max(1)];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            // multiply basis by (x - xj)
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from(BigInt::from(xj));
            }
            basis = next;
            denom *= BigRational::from(BigInt::from(xi - xj));
        }
        let scale = BigRational::from(BigInt::from(yi)) / denom;
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()) == Some(true) {
        coeffs.pop();
    }
    coeffs
}

pub fn eval_poly(coeffs: &[BigRational], x: i64) -> BigRational {
    let xq = BigRational::from(BigInt::from(x));
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &xq + c;
    }
    acc
}

/// k! times the coefficient of n^k, when that is an integer.
pub fn poly_leading_as_integer_times_factorial(
    coeffs: &[BigRational],
    k: usize,
) -> Option<BigInt> {
    if coeffs.len() <= k {
        return Some(BigInt::zero());
    }
    let mut fact = BigInt::one();
    for i in 1..=k {
        fact *= BigInt::from(i);
    }
    let v = &coeffs[k] * BigRational::from(fact);
    v.is_integer().then(|| v.to_integer())
}
