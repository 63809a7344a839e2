//! Multivariate polynomials with exponent-vector monomials, monomial orders,
//! weighted gradings, and quotient-ring arithmetic modulo a fixed Groebner basis.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, refined by the ring weights.
    Grevlex,
    Lex,
}

/// The ambient polynomial ring: field, named variables, order, weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub weights: Vec<u32>,
}

impl RingSpec {
    pub fn new(field: FieldSpec, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<RingSpec>> {
        let weights = vec![1; vars.len()];
        RingSpec::weighted(field, vars, order, weights)
    }

    pub fn weighted(
        field: FieldSpec,
        vars: Vec<String>,
        order: MonomialOrder,
        weights: Vec<u32>,
    ) -> Result<Arc<RingSpec>> {
        if vars.is_empty() {
            return Err(EngineError::Config("a ring needs at least one variable".into()));
        }
        if weights.len() != vars.len() || weights.iter().any(|&w| w == 0) {
            return Err(EngineError::Config("weights must be positive, one per variable".into()));
        }
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(EngineError::Config("variable names must be unique".into()));
        }
        Ok(Arc::new(RingSpec { field, vars, order, weights }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The monomial x_i.
    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut exps = vec![0u32; self.nvars()];
        exps[i] = 1;
        Monomial::new(exps, &self.weights)
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.degree
    }
}

/// An exponent vector with its cached weighted total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>, weights: &[u32]) -> Monomial {
        let degree = exps.iter().zip(weights).map(|(e, w)| e * w).sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self; caller guarantees divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Vec<u32> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::new(exps, weights)
    }
}

/// Total order on monomials of the same arity.
pub fn compare(u: &Monomial, v: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if u.exps.len() != v.exps.len() {
        return Err(EngineError::ArityMismatch);
    }
    Ok(match order {
        MonomialOrder::Grevlex => match u.degree.cmp(&v.degree) {
            Ordering::Equal => {
                // last nonzero entry of u - v negative => u larger
                for i in (0..u.exps.len()).rev() {
                    match u.exps[i].cmp(&v.exps[i]) {
                        Ordering::Less => return Ok(Ordering::Greater),
                        Ordering::Greater => return Ok(Ordering::Less),
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }
            d => d,
        },
        MonomialOrder::Lex => {
            for i in 0..u.exps.len() {
                match u.exps[i].cmp(&v.exps[i]) {
                    Ordering::Equal => {}
                    d => return Ok(d),
                }
            }
            Ordering::Equal
        }
    })
}

/// Canonical-form polynomial: terms strictly descending in the ring order,
/// no zero coefficients; the zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub ring: Arc<RingSpec>,
    pub terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<RingSpec>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<RingSpec>, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn variable(ring: &Arc<RingSpec>, i: usize) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: vec![(ring.var_monomial(i), ring.field.one())] }
    }

    /// Build canonical form from arbitrary (monomial, coeff) pairs.
    pub fn from_terms(
        ring: &Arc<RingSpec>,
        mut raw: Vec<(Monomial, FieldElement)>,
    ) -> Result<Polynomial> {
        for (m, _) in &raw {
            if m.exps.len() != ring.nvars() {
                return Err(EngineError::ArityMismatch);
            }
        }
        raw.sort_by(|a, b| compare(&b.0, &a.0, ring.order).unwrap());
        let mut terms: Vec<(Monomial, FieldElement)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            if let Some(last) = terms.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c)?;
                    continue;
                }
            }
            terms.push((m, c));
        }
        terms.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, FieldElement)> {
        self.terms.first()
    }

    /// Nonzero constants are the units of a graded ring.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(EngineError::RingMismatch);
        }
        let mut raw = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        Polynomial::from_terms(&self.ring, raw)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(EngineError::RingMismatch);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                raw.push((m.mul(n), c.mul(d)?));
            }
        }
        Polynomial::from_terms(&self.ring, raw)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, d)| Ok((m.clone(), d.mul(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul_term(&self, mono: &Monomial, c: &FieldElement) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, d)| Ok((m.mul(mono), d.mul(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Some(d) when every term has weighted degree d; zero counts as homogeneous
    /// of every degree and reports None.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree;
        self.terms.iter().all(|(m, _)| m.degree == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree).max()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = if neg { c.neg() } else { c.clone() };
            let mut wrote = false;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                wrote = true;
            }
            for (j, e) in m.exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.vars[j])?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

/// A quotient of the base polynomial ring by the ideal with the stored reduced
/// Groebner basis; empty relations mean the polynomial ring itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRing {
    pub base: Arc<RingSpec>,
    pub relations: Vec<Polynomial>,
    pub homogeneous: bool,
}

impl QuotientRing {
    /// The polynomial ring, seen as a quotient by the zero ideal.
    pub fn polynomial(base: &Arc<RingSpec>) -> Arc<QuotientRing> {
        Arc::new(QuotientRing { base: base.clone(), relations: Vec::new(), homogeneous: true })
    }

    /// Quotient by the ideal generated by `gens`; computes the reduced GB.
    pub fn new(base: &Arc<RingSpec>, gens: Vec<Polynomial>) -> Result<Arc<QuotientRing>> {
        let relations = crate::groebner::ideal_groebner(base, gens)?;
        let homogeneous = relations.iter().all(|f| f.is_homogeneous());
        Ok(Arc::new(QuotientRing { base: base.clone(), relations, homogeneous }))
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    /// Hypersurface quotients are where periodic resolutions live.
    pub fn is_hypersurface(&self) -> bool {
        self.relations.len() == 1
    }

    /// Unique normal form of f modulo the defining relations.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        crate::groebner::poly_normal_form(f, &self.relations)
    }
}

/// Parse the canonical polynomial syntax, e.g. `3*x^2*y - 1/2*z`.
pub fn parse_polynomial(ring: &Arc<RingSpec>, text: &str) -> Result<Polynomial> {
    let mut p = PolyParser { ring: ring.clone(), chars: text.chars().collect(), pos: 0 };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

struct PolyParser {
    ring: Arc<RingSpec>,
    chars: Vec<char>,
    pos: usize,
}

impl PolyParser {
    fn err(&self, msg: &str) -> EngineError {
        EngineError::Parse { line: 1, col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut neg = false;
        if let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                neg = c == '-';
            }
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let t = self.term()?;
                acc = if c == '+' { acc.add(&t)? } else { acc.sub(&t)? };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            if c == '*' {
                self.pos += 1;
                acc = acc.mul(&self.factor()?)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.integer()? as u32;
            return base.pow(n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    let c = self.ring.field.canonicalize(num, den)?;
                    Ok(Polynomial::constant(&self.ring, c))
                } else {
                    Ok(Polynomial::constant(&self.ring, self.ring.field.from_integer(num)))
                }
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::variable(&self.ring, i)),
                    None => Err(self.err(&format!("unknown variable '{name}'"))),
                }
            }
            _ => Err(self.err("expected a polynomial atom")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring(vars: &[&str], order: MonomialOrder) -> Arc<RingSpec> {
        RingSpec::new(FieldSpec::QQ, vars.iter().map(|s| s.to_string()).collect(), order).unwrap()
    }

    #[test]
    fn grevlex_example() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
        // x^2*y vs x*y*z: equal degree, compare reversed exponents
        let u = Monomial::new(vec![2, 1, 0], &r.weights);
        let v = Monomial::new(vec![1, 1, 1], &r.weights);
        assert_eq!(compare(&u, &v, MonomialOrder::Grevlex).unwrap(), Ordering::Greater);
        assert_eq!(compare(&u, &u, MonomialOrder::Grevlex).unwrap(), Ordering::Equal);
    }

    #[test]
    fn lex_ignores_degree() {
        let r = qring(&["x", "y"], MonomialOrder::Lex);
        let x = Monomial::new(vec![1, 0], &r.weights);
        let y9 = Monomial::new(vec![0, 9], &r.weights);
        assert_eq!(compare(&x, &y9, MonomialOrder::Lex).unwrap(), Ordering::Greater);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let u = Monomial { exps: vec![1], degree: 1 };
        let v = Monomial { exps: vec![1, 0], degree: 1 };
        assert_eq!(compare(&u, &v, MonomialOrder::Grevlex), Err(EngineError::ArityMismatch));
    }

    #[test]
    fn add_and_mul_examples() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let xp = parse_polynomial(&r, "x + y").unwrap();
        let xm = parse_polynomial(&r, "x - y").unwrap();
        assert_eq!(xp.add(&xm).unwrap(), parse_polynomial(&r, "2*x").unwrap());
        assert_eq!(xp.mul(&xm).unwrap(), parse_polynomial(&r, "x^2 - y^2").unwrap());
    }

    #[test]
    fn char_two_squares_are_linear() {
        // (x+y)^2 = x^2 + y^2 over F_2: expansion oracle, cross terms vanish
        let f2 = FieldSpec::prime_field(2).unwrap();
        let r = RingSpec::new(f2, vec!["x".into(), "y".into()], MonomialOrder::Grevlex).unwrap();
        let f = parse_polynomial(&r, "x + y").unwrap();
        assert_eq!(f.pow(2).unwrap(), parse_polynomial(&r, "x^2 + y^2").unwrap());
    }

    #[test]
    fn display_round_trips() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let f = parse_polynomial(&r, "3*x^2*y - 1/2*z").unwrap();
        let g = parse_polynomial(&r, &f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn homogeneity_is_preserved_by_arithmetic() {
        let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let f = parse_polynomial(&r, "x^2 + y*z").unwrap();
        let g = parse_polynomial(&r, "x*y + z^2").unwrap();
        assert!(f.mul(&g).unwrap().is_homogeneous());
        assert!(f.add(&g).unwrap().is_homogeneous());
    }

    #[test]
    fn weighted_degrees() {
        let r = RingSpec::weighted(
            FieldSpec::QQ,
            vec!["x".into(), "y".into()],
            MonomialOrder::Grevlex,
            vec![1, 2],
        )
        .unwrap();
        let f = parse_polynomial(&r, "x^2 + y").unwrap();
        assert!(f.is_homogeneous());
        assert_eq!(f.homogeneous_degree(), Some(2));
    }
}
