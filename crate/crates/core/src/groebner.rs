//! Buchberger engine for ideals and submodules of free modules, normal forms,
//! and syzygy computation via block elimination orders.

use std::cell::Cell;
use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::field::FieldElement;
use crate::ring::{compare, Monomial, Polynomial, QuotientRing, RingSpec};

thread_local! {
    /// Per-thread reduction-step cap; exceeding it is an error, never a
    /// silent truncation.
    static MAX_STEPS: Cell<u64> = const { Cell::new(1_000_000) };
}

pub fn set_max_steps(n: u64) {
    MAX_STEPS.with(|c| c.set(n));
}

struct StepCounter {
    used: u64,
    cap: u64,
}

impl StepCounter {
    fn new() -> StepCounter {
        StepCounter { used: 0, cap: MAX_STEPS.with(|c| c.get()) }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            Err(EngineError::ResourceLimitExceeded(format!(
                "reduction step cap {} exhausted",
                self.cap
            )))
        } else {
            Ok(())
        }
    }
}

/// An element of a free module: one polynomial per free generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    pub components: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn zero(ring: &Arc<RingSpec>, rank: usize) -> ModuleVector {
        ModuleVector { components: vec![Polynomial::zero(ring); rank] }
    }

    pub fn from_ideal_element(f: Polynomial) -> ModuleVector {
        ModuleVector { components: vec![f] }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleVector { components })
    }

    pub fn sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleVector { components })
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Result<ModuleVector> {
        let components = self
            .components
            .iter()
            .map(|p| p.mul_term(m, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleVector { components })
    }

    pub fn scale(&self, c: &FieldElement) -> Result<ModuleVector> {
        let components =
            self.components.iter().map(|p| p.scale(c)).collect::<Result<Vec<_>>>()?;
        Ok(ModuleVector { components })
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Result<ModuleVector> {
        let components =
            self.components.iter().map(|p| p.mul(f)).collect::<Result<Vec<_>>>()?;
        Ok(ModuleVector { components })
    }

    /// Degree of a homogeneous vector under component shifts, when constant.
    pub fn homogeneous_degree(&self, shifts: &[i64]) -> Option<i64> {
        let mut deg: Option<i64> = None;
        for (i, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()? as i64 + shifts[i];
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                _ => return None,
            }
        }
        deg
    }
}

/// Computation context for a free module S^rank; components with index < split
/// form the dominant elimination block.
struct Ctx {
    ring: Arc<RingSpec>,
    rank: usize,
    split: usize,
}

impl Ctx {
    fn plain(ring: &Arc<RingSpec>, rank: usize) -> Ctx {
        Ctx { ring: ring.clone(), rank, split: rank }
    }

    /// Term-over-position within blocks, dominant block first, lower component wins ties.
    fn term_cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        let block = |c: usize| usize::from(c >= self.split);
        match block(b.0).cmp(&block(a.0)) {
            Ordering::Equal => match compare(a.1, b.1, self.ring.order).unwrap() {
                Ordering::Equal => b.0.cmp(&a.0),
                d => d,
            },
            d => d,
        }
    }

    /// The module-leading term of v: (component, monomial, coefficient).
    fn lead<'a>(&self, v: &'a ModuleVector) -> Option<(usize, &'a Monomial, &'a FieldElement)> {
        let mut best: Option<(usize, &Monomial, &FieldElement)> = None;
        for (i, p) in v.components.iter().enumerate() {
            if let Some((m, c)) = p.leading_term() {
                best = match best {
                    None => Some((i, m, c)),
                    Some(b) => {
                        if self.term_cmp((i, m), (b.0, b.1)) == Ordering::Greater {
                            Some((i, m, c))
                        } else {
                            Some(b)
                        }
                    }
                };
            }
        }
        best
    }
}

/// Full normal form: no term of the result is divisible by any leading term of
/// the basis (componentwise divisibility).
fn normal_form_in(
    v: &ModuleVector,
    basis: &[ModuleVector],
    ctx: &Ctx,
    counter: &mut StepCounter,
) -> Result<ModuleVector> {
    let leads: Vec<(usize, Monomial, FieldElement)> = basis
        .iter()
        .filter_map(|g| ctx.lead(g).map(|(c, m, a)| (c, m.clone(), a.clone())))
        .collect();
    let mut work = v.clone();
    let mut done = ModuleVector::zero(&ctx.ring, ctx.rank);
    while let Some((c, m, a)) = ctx.lead(&work).map(|(c, m, a)| (c, m.clone(), a.clone())) {
        let mut reduced = false;
        for (gi, (gc, gm, ga)) in leads.iter().enumerate() {
            if *gc == c && gm.divides(&m) {
                counter.tick()?;
                let q = gm.quotient(&m);
                let coef = a.div(ga)?;
                work = work.sub(&basis[gi].mul_term(&q, &coef)?)?;
                reduced = true;
                break;
            }
        }
        if !reduced {
            // move the irreducible lead term over to the finished part
            let t = Polynomial {
                ring: ctx.ring.clone(),
                terms: vec![(m.clone(), a.clone())],
            };
            done.components[c] = done.components[c].add(&t)?;
            work.components[c] = work.components[c].sub(&t)?;
        }
    }
    Ok(done)
}

fn s_vector(
    f: &ModuleVector,
    g: &ModuleVector,
    ctx: &Ctx,
) -> Result<Option<ModuleVector>> {
    let (fc, fm, fa) = match ctx.lead(f) {
        Some(l) => l,
        None => return Ok(None),
    };
    let (gc, gm, ga) = match ctx.lead(g) {
        Some(l) => l,
        None => return Ok(None),
    };
    if fc != gc {
        return Ok(None);
    }
    let l = fm.lcm(gm, &ctx.ring.weights);
    let s = f
        .mul_term(&fm.quotient(&l), &fa.inv()?)?
        .sub(&g.mul_term(&gm.quotient(&l), &ga.inv()?)?)?;
    Ok(Some(s))
}

/// Buchberger with normal (degree) selection strategy and FIFO tie-break.
fn buchberger_raw(gens: Vec<ModuleVector>, ctx: &Ctx) -> Result<Vec<ModuleVector>> {
    let mut counter = StepCounter::new();
    let mut basis: Vec<ModuleVector> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g);
        }
    }
    // pair queue: (lcm degree, i, j)
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    let push_pairs = |basis: &[ModuleVector], j: usize, pairs: &mut Vec<(u32, usize, usize)>| {
        let (jc, jm, _) = ctx.lead(&basis[j]).unwrap();
        for i in 0..j {
            let (ic, im, _) = ctx.lead(&basis[i]).unwrap();
            if ic != jc {
                continue;
            }
            // coprime-lead criterion is only valid in the ideal (rank 1) case
            if ctx.rank == 1 {
                let coprime = im.exps.iter().zip(&jm.exps).all(|(a, b)| *a == 0 || *b == 0);
                if coprime {
                    continue;
                }
            }
            pairs.push((im.lcm(jm, &ctx.ring.weights).degree, i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, j, &mut pairs);
    }
    while !pairs.is_empty() {
        let k = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(d, i, j))| (d, i, j))
            .map(|(k, _)| k)
            .unwrap();
        let (_, i, j) = pairs.swap_remove(k);
        let s = match s_vector(&basis[i], &basis[j], ctx)? {
            Some(s) => s,
            None => continue,
        };
        let r = normal_form_in(&s, &basis, ctx, &mut counter)?;
        if !r.is_zero() {
            basis.push(r);
            push_pairs(&basis, basis.len() - 1, &mut pairs);
        }
    }
    interreduce(basis, ctx, &mut counter)
}

/// Minimal + tail-reduced + monic + canonically sorted: the reduced GB.
fn interreduce(
    mut basis: Vec<ModuleVector>,
    ctx: &Ctx,
    counter: &mut StepCounter,
) -> Result<Vec<ModuleVector>> {
    // drop elements whose lead is divisible by another element's lead
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ic, im, _) = ctx.lead(&basis[i]).unwrap();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (jc, jm, _) = ctx.lead(&basis[j]).unwrap();
            if ic == jc && jm.divides(im) && !(im == jm && j > i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<ModuleVector> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<ModuleVector> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = normal_form_in(&minimal[i], &others, ctx, counter)?;
        if r.is_zero() {
            continue;
        }
        let (_, _, c) = ctx.lead(&r).unwrap();
        out.push(r.scale(&c.clone().inv()?)?);
    }
    // canonical order: descending leads
    out.sort_by(|a, b| {
        let la = ctx.lead(a).unwrap();
        let lb = ctx.lead(b).unwrap();
        ctx.term_cmp((lb.0, lb.1), (la.0, la.1))
    });
    Ok(out)
}

/// Reduced GB of an ideal in the base polynomial ring.
pub fn ideal_groebner(base: &Arc<RingSpec>, gens: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let ctx = Ctx::plain(base, 1);
    let vecs = gens.into_iter().map(ModuleVector::from_ideal_element).collect();
    let gb = buchberger_raw(vecs, &ctx)?;
    Ok(gb.into_iter().map(|v| v.components.into_iter().next().unwrap()).collect())
}

/// Normal form of a polynomial modulo a set already forming a GB.
pub fn poly_normal_form(f: &Polynomial, gb: &[Polynomial]) -> Result<Polynomial> {
    if gb.is_empty() {
        return Ok(f.clone());
    }
    let ctx = Ctx::plain(&f.ring, 1);
    let basis: Vec<ModuleVector> =
        gb.iter().map(|g| ModuleVector::from_ideal_element(g.clone())).collect();
    let mut counter = StepCounter::new();
    let v = ModuleVector::from_ideal_element(f.clone());
    let r = normal_form_in(&v, &basis, &ctx, &mut counter)?;
    Ok(r.components.into_iter().next().unwrap())
}

fn relation_vectors(ring: &QuotientRing, rank: usize) -> Vec<ModuleVector> {
    let mut out = Vec::new();
    for rel in &ring.relations {
        for j in 0..rank {
            let mut v = ModuleVector::zero(&ring.base, rank);
            v.components[j] = rel.clone();
            out.push(v);
        }
    }
    out
}

/// Reduced GB of the submodule of A^rank generated by `vectors`, where
/// A = base/relations; computed by lifting to the base ring with the relation
/// generators adjoined per component. The returned basis lives in the base
/// ring and is what normal forms over A reduce against.
pub fn submodule_groebner(
    rank: usize,
    vectors: &[ModuleVector],
    ring: &Arc<QuotientRing>,
) -> Result<Vec<ModuleVector>> {
    let ctx = Ctx::plain(&ring.base, rank);
    let mut gens: Vec<ModuleVector> = vectors.to_vec();
    gens.extend(relation_vectors(ring, rank));
    buchberger_raw(gens, &ctx)
}

/// Normal form of v against a submodule GB (as produced by `submodule_groebner`).
pub fn normal_form(v: &ModuleVector, gb: &[ModuleVector]) -> Result<ModuleVector> {
    if v.is_zero() || gb.is_empty() {
        return Ok(v.clone());
    }
    let ctx = Ctx::plain(&v.components[0].ring, v.rank());
    let mut counter = StepCounter::new();
    normal_form_in(v, gb, &ctx, &mut counter)
}

/// Generators of the kernel of A^r -> A^rank, e_i -> vectors[i], over
/// A = base/relations. Computed by a block elimination order on the graph
/// submodule of S^(rank+r): elements with vanishing ambient block project to
/// syzygies; relation multiples are adjoined without syzygy coordinates so the
/// projection is already over A.
pub fn syzygies(
    rank: usize,
    vectors: &[ModuleVector],
    ring: &Arc<QuotientRing>,
) -> Result<Vec<ModuleVector>> {
    let r = vectors.len();
    let base = &ring.base;
    let total = rank + r;
    let ctx = Ctx { ring: base.clone(), rank: total, split: rank };
    let mut gens: Vec<ModuleVector> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut w = ModuleVector::zero(base, total);
        w.components[..rank].clone_from_slice(&v.components);
        w.components[rank + i] = Polynomial::one(base);
        gens.push(w);
    }
    for rel in relation_vectors(ring, rank) {
        let mut w = ModuleVector::zero(base, total);
        w.components[..rank].clone_from_slice(&rel.components);
        gens.push(w);
    }
    let gb = buchberger_raw(gens, &ctx)?;
    let mut out = Vec::new();
    for g in gb {
        if g.components[..rank].iter().all(|p| p.is_zero()) {
            let comps = g.components[rank..]
                .iter()
                .map(|p| ring.reduce(p))
                .collect::<Result<Vec<_>>>()?;
            let s = ModuleVector { components: comps };
            if !s.is_zero() {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// v lies in the submodule iff its normal form vanishes.
pub fn is_member(v: &ModuleVector, gb: &[ModuleVector]) -> Result<bool> {
    Ok(normal_form(v, gb)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::{parse_polynomial, MonomialOrder};

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<RingSpec> {
        RingSpec::new(FieldSpec::QQ, vars.iter().map(|s| s.to_string()).collect(), order).unwrap()
    }

    fn p(r: &Arc<RingSpec>, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let gb = ideal_groebner(&r, vec![p(&r, "x"), p(&r, "y")]).unwrap();
        assert_eq!(gb, vec![p(&r, "x"), p(&r, "y")]);
    }

    #[test]
    fn twisted_cubic_elimination() {
        // lex(x>y>z) basis of (x^2 - y, x^3 - z) contains y^3 - z^2
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let gb = ideal_groebner(&r, vec![p(&r, "x^2 - y"), p(&r, "x^3 - z")]).unwrap();
        let target = p(&r, "y^3 - z^2");
        assert!(gb.contains(&target), "basis was {gb:?}");
    }

    #[test]
    fn principal_ideal_is_a_basis() {
        let r = ring(&["x", "y", "z", "u", "v", "w"], MonomialOrder::Grevlex);
        let f = p(&r, "u*x + v*y + w*z");
        let gb = ideal_groebner(&r, vec![f.clone()]).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0], f);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let gbx = ideal_groebner(&r, vec![p(&r, "x")]).unwrap();
        assert!(poly_normal_form(&p(&r, "x^2"), &gbx).unwrap().is_zero());

        let gb = ideal_groebner(&r, vec![p(&r, "x^2 - y")]).unwrap();
        assert_eq!(poly_normal_form(&p(&r, "x^2 + y"), &gb).unwrap(), p(&r, "2*y"));

        let f = p(&r, "x^3 + y");
        assert_eq!(poly_normal_form(&f, &[]).unwrap(), f);
    }

    #[test]
    fn quotient_ring_reduction() {
        let r = ring(&["x", "y", "z", "u", "v", "w"], MonomialOrder::Grevlex);
        let q = QuotientRing::new(&r, vec![p(&r, "u*x + v*y + w*z")]).unwrap();
        assert!(q.reduce(&p(&r, "u*x + v*y + w*z")).unwrap().is_zero());
        assert_eq!(q.reduce(&p(&r, "x")).unwrap(), p(&r, "x"));
        // one division step by the relation: grevlex lead of the relation is u*x
        assert_eq!(
            q.reduce(&p(&r, "u*x^2")).unwrap(),
            p(&r, "-v*x*y - w*x*z")
        );
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let q = QuotientRing::polynomial(&r);
        let vecs = vec![
            ModuleVector::from_ideal_element(p(&r, "x")),
            ModuleVector::from_ideal_element(p(&r, "y")),
        ];
        let syz = syzygies(1, &vecs, &q).unwrap();
        assert_eq!(syz.len(), 1);
        // the syzygy is (y, -x) up to sign
        let s = &syz[0];
        let val = s.components[0]
            .mul(&p(&r, "x"))
            .unwrap()
            .add(&s.components[1].mul(&p(&r, "y")).unwrap())
            .unwrap();
        assert!(val.is_zero());
        assert!(
            s.components == vec![p(&r, "y"), p(&r, "-x")]
                || s.components == vec![p(&r, "-y"), p(&r, "x")]
        );
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let q = QuotientRing::polynomial(&r);
        let vecs = vec![ModuleVector::from_ideal_element(p(&r, "x^2 + y^2"))];
        assert!(syzygies(1, &vecs, &q).unwrap().is_empty());
    }

    #[test]
    fn hypersurface_syzygies_of_uvw() {
        // over A = k[x..w]/(ux+vy+wz), syzygies of (u, v, w) need 4 generators:
        // 3 Koszul ones plus (x, y, z) from the relation
        let r = ring(&["x", "y", "z", "u", "v", "w"], MonomialOrder::Grevlex);
        let q = QuotientRing::new(&r, vec![p(&r, "u*x + v*y + w*z")]).unwrap();
        let vecs = vec![
            ModuleVector::from_ideal_element(p(&r, "u")),
            ModuleVector::from_ideal_element(p(&r, "v")),
            ModuleVector::from_ideal_element(p(&r, "w")),
        ];
        let syz = syzygies(1, &vecs, &q).unwrap();
        // every syzygy annihilates (u, v, w) in A
        for s in &syz {
            let val = s.components[0]
                .mul(&p(&r, "u"))
                .unwrap()
                .add(&s.components[1].mul(&p(&r, "v")).unwrap())
                .unwrap()
                .add(&s.components[2].mul(&p(&r, "w")).unwrap())
                .unwrap();
            assert!(q.reduce(&val).unwrap().is_zero());
        }
        // (x, y, z) is among them (up to sign/reduction), and the span needs 4 gens
        let xyz = ModuleVector { components: vec![p(&r, "x"), p(&r, "y"), p(&r, "z")] };
        let gb = submodule_groebner(3, &syz, &q).unwrap();
        assert!(is_member(&xyz, &gb).unwrap());
        assert!(syz.len() >= 4, "got {} syzygies", syz.len());
    }

    #[test]
    fn spair_reduction_to_zero_on_computed_bases() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let gb = ideal_groebner(
            &r,
            vec![p(&r, "x^2 - y*z"), p(&r, "x*y - z^2"), p(&r, "y^2 - x*z")],
        )
        .unwrap();
        let ctx = Ctx::plain(&r, 1);
        let basis: Vec<ModuleVector> =
            gb.iter().map(|g| ModuleVector::from_ideal_element(g.clone())).collect();
        let mut counter = StepCounter::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if let Some(s) = s_vector(&basis[i], &basis[j], &ctx).unwrap() {
                    let nf = normal_form_in(&s, &basis, &ctx, &mut counter).unwrap();
                    assert!(nf.is_zero());
                }
            }
        }
    }

    #[test]
    fn double_syzygy_soundness() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let q = QuotientRing::polynomial(&r);
        let vecs: Vec<ModuleVector> = ["x", "y", "z"]
            .iter()
            .map(|s| ModuleVector::from_ideal_element(p(&r, s)))
            .collect();
        let syz1 = syzygies(1, &vecs, &q).unwrap();
        let syz2 = syzygies(syz1.len(), &syz1, &q).unwrap();
        // composing the two syzygy matrices gives zero
        for s2 in &syz2 {
            let mut acc = ModuleVector::zero(&r, 1);
            for (j, s1) in syz1.iter().enumerate() {
                acc = acc.add(&s1.mul_poly(&s2.components[j]).unwrap()).unwrap();
            }
            assert!(acc.is_zero());
        }
        assert!(!syz2.is_empty());
    }

    #[test]
    fn step_cap_is_enforced() {
        set_max_steps(1);
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let res = ideal_groebner(&r, vec![p(&r, "x^3 - y"), p(&r, "x*y^2 - x - 1")]);
        set_max_steps(1_000_000);
        assert!(matches!(res, Err(EngineError::ResourceLimitExceeded(_))));
    }
}
