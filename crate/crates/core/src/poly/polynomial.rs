use std::cmp::Ordering;

use super::field::PrimeField;
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// A polynomial as a list of `(monomial, coefficient)` pairs, sorted
/// descending under the order of the ring that built it. No zero
/// coefficients and no repeated monomials are ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: u8,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars: nvars as u8,
            terms: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    /// Zero counts as homogeneous (of every degree).
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_coefficient(&self) -> u32 {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map_or(0, |(_, c)| *c)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|(t, _)| t == m).map_or(0, |(_, c)| *c)
    }

    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, u32)>) -> Self {
        Polynomial {
            nvars: nvars as u8,
            terms,
        }
    }
}

/// A polynomial ring F_p[x_1..x_n] with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::VariableLimit {
                got: vars.len(),
                max: MAX_VARS,
            });
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        self.monomial(Monomial::ONE, self.field.from_i64(c))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars());
        self.monomial(Monomial::var(i), 1)
    }

    pub fn monomial(&self, m: Monomial, c: u32) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            self.zero()
        } else {
            Polynomial::from_sorted(self.nvars(), vec![(m, c)])
        }
    }

    /// Builds a canonical polynomial from arbitrary terms (sorting, merging,
    /// dropping zeros).
    pub fn from_terms<I: IntoIterator<Item = (Monomial, u32)>>(&self, terms: I) -> Polynomial {
        let mut t: Vec<(Monomial, u32)> = terms.into_iter().collect();
        t.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            let c = c % self.field.characteristic();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial::from_sorted(self.nvars(), out)
    }

    fn check(&self, a: &Polynomial) -> Result<()> {
        if a.nvars() != self.nvars() {
            return Err(Error::VariableCount(a.nvars(), self.nvars()));
        }
        Ok(())
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.axpy(self.field.neg(1), &Monomial::ONE, b, a))
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn neg(&self, a: &Polynomial) -> Polynomial {
        self.scale(a, self.field.neg(1))
    }

    pub fn scale(&self, a: &Polynomial, c: u32) -> Polynomial {
        if c == 0 {
            return self.zero();
        }
        Polynomial::from_sorted(
            a.nvars(),
            a.terms.iter().map(|(m, x)| (*m, self.field.mul(*x, c))).collect(),
        )
    }

    pub fn mul_term(&self, a: &Polynomial, m: &Monomial, c: u32) -> Polynomial {
        if c == 0 {
            return self.zero();
        }
        Polynomial::from_sorted(
            a.nvars(),
            a.terms
                .iter()
                .map(|(t, x)| (t.mul(m), self.field.mul(*x, c)))
                .collect(),
        )
    }

    pub fn pow(&self, a: &Polynomial, e: u32) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul_unchecked(&acc, a);
        }
        acc
    }

    pub(crate) fn add_unchecked(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.axpy(1, &Monomial::ONE, b, a)
    }

    /// `y + c * m * x`, merged in one pass.
    pub(crate) fn axpy(&self, c: u32, m: &Monomial, x: &Polynomial, y: &Polynomial) -> Polynomial {
        if c == 0 || x.is_zero() {
            return y.clone();
        }
        let f = self.field;
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.terms.len() || j < y.terms.len() {
            let xi = x.terms.get(i).map(|(t, v)| (t.mul(m), f.mul(*v, c)));
            match (xi, y.terms.get(j)) {
                (Some((xm, xc)), Some((ym, yc))) => match self.order.cmp(&xm, ym) {
                    Ordering::Greater => {
                        out.push((xm, xc));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((*ym, *yc));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = f.add(xc, *yc);
                        if s != 0 {
                            out.push((xm, s));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(t), None) => {
                    out.push(t);
                    i += 1;
                }
                (None, Some(t)) => {
                    out.push(*t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial::from_sorted(y.nvars(), out)
    }

    pub(crate) fn mul_unchecked(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero(a.nvars());
        }
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut acc = Polynomial::zero(a.nvars());
        for (m, c) in &small.terms {
            acc = self.axpy(*c, m, big, &acc);
        }
        acc
    }

    /// Remainder of `a` on division by the single polynomial `f`. Since
    /// `{f}` is a Gröbner basis of `(f)`, this is the canonical
    /// representative of `a` in the quotient ring.
    pub fn reduce_mod(&self, a: &Polynomial, f: &Polynomial) -> Polynomial {
        let Some(&(lf, cf)) = f.leading_term() else {
            return a.clone();
        };
        let inv = self.field.inv(cf);
        let mut rem: Vec<(Monomial, u32)> = Vec::new();
        let mut cur = a.clone();
        while let Some(&(m, c)) = cur.terms.first() {
            if let Some(q) = m.checked_div(&lf) {
                let k = self.field.neg(self.field.mul(c, inv));
                cur = self.axpy(k, &q, f, &cur);
            } else {
                rem.push((m, c));
                cur.terms.remove(0);
            }
        }
        Polynomial::from_sorted(a.nvars(), rem)
    }

    /// Evaluation of each variable at a constant; used in tests and
    /// for the constant part of a matrix.
    pub fn evaluate(&self, a: &Polynomial, point: &[u32]) -> u32 {
        let f = self.field;
        a.terms.iter().fold(0, |acc, (m, c)| {
            let mut v = *c;
            for (i, &x) in point.iter().enumerate() {
                v = f.mul(v, f.pow(x, m.exponent(i) as u64));
            }
            f.add(acc, v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> PolyRing {
        PolyRing::new(p, vars, MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let r = ring(101, &["x", "y", "z"]);
        let x = r.var(0);
        assert!(r.add(&x, &r.neg(&x)).unwrap().is_zero());
    }

    #[test]
    fn coefficient_arithmetic_mod_five() {
        let r = ring(5, &["x", "y", "z"]);
        let a = r.parse("x*y + z^2").unwrap();
        let b = r.parse("z^2").unwrap();
        assert_eq!(r.add(&a, &b).unwrap(), r.parse("x*y + 2*z^2").unwrap());
    }

    #[test]
    fn identity_and_degree() {
        let r = ring(101, &["x", "y"]);
        let f = r.parse("3*x^2 + x*y").unwrap();
        assert_eq!(r.mul(&r.one(), &f).unwrap(), f);
        let xy = r.mul(&r.var(0), &r.var(1)).unwrap();
        assert_eq!(xy.homogeneous_degree(), Some(2));
    }

    #[test]
    fn freshmans_dream_in_characteristic_three() {
        // (x+y)^3 = x^3 + y^3 over F_3, checked against full binomial expansion
        let r = ring(3, &["x", "y"]);
        let s = r.add(&r.var(0), &r.var(1)).unwrap();
        let cube = r.pow(&s, 3);
        assert_eq!(cube, r.parse("x^3 + y^3").unwrap());
        // and the square over F_3 keeps its cross term 2xy
        let sq = r.pow(&s, 2);
        assert_eq!(sq, r.parse("x^2 + 2*x*y + y^2").unwrap());
    }

    #[test]
    fn mismatched_variable_counts() {
        let r2 = ring(101, &["x", "y"]);
        let r3 = ring(101, &["x", "y", "z"]);
        let a = r2.var(0);
        let b = r3.var(0);
        assert_eq!(r3.add(&a, &b), Err(Error::VariableCount(2, 3)));
        assert!(r3.mul(&b, &a).is_err());
    }

    #[test]
    fn reduction_modulo_hypersurface() {
        let r = ring(101, &["x", "y"]);
        let f = r.parse("x*y").unwrap();
        let a = r.parse("x^2*y + x^3 + y").unwrap();
        assert_eq!(r.reduce_mod(&a, &f), r.parse("x^3 + y").unwrap());
    }

    #[test]
    fn homogeneity() {
        let r = ring(101, &["x", "y"]);
        assert!(r.parse("x^2 + x*y").unwrap().is_homogeneous());
        assert!(!r.parse("x + 1").unwrap().is_homogeneous());
        assert!(r.zero().is_homogeneous());
        assert_eq!(r.zero().homogeneous_degree(), None);
    }
}
