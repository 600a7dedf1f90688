//! Multivariate polynomials over exact rational coefficients.
//!
//! These are the coefficient ring for differential forms. All arithmetic is
//! exact; identities at this layer are tested with equality, not tolerance.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent vector, one entry per ambient variable.
pub type Exponents = Vec<u16>;

/// A polynomial in `vars` variables with `BigRational` coefficients.
///
/// Zero-coefficient terms are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn from_int(vars: usize, c: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The coordinate variable `x_i`, 1-based.
    pub fn variable(vars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= vars, "variable index out of range");
        let mut exps = vec![0u16; vars];
        exps[i - 1] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(exps, BigRational::one());
        p
    }

    pub fn monomial(vars: usize, exps: Exponents, c: BigRational) -> Self {
        assert_eq!(exps.len(), vars);
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        let mut out = Self::zero(self.vars);
        for (e, coef) in &self.terms {
            out.terms.insert(e.clone(), coef * c);
        }
        out
    }

    /// Partial derivative with respect to `x_i`, 1-based.
    pub fn partial(&self, i: usize) -> Polynomial {
        assert!(i >= 1 && i <= self.vars);
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            let k = e[i - 1];
            if k == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i - 1] = k - 1;
            out.add_term(exps, c * BigRational::from_integer(BigInt::from(k)));
        }
        out
    }

    /// Substitute `x_i := subs[i-1]` and expand. All `subs` must share `vars`.
    pub fn compose(&self, subs: &[Polynomial]) -> Polynomial {
        assert_eq!(subs.len(), self.vars);
        let vars = subs.first().map(|p| p.vars).unwrap_or(self.vars);
        let mut out = Polynomial::zero(vars);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&subs[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut v = rational_to_f64(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    v *= point[i];
                }
            }
            acc += v;
        }
        acc
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    let num = c.numer().to_f64().unwrap_or_else(|| {
        if c.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    });
    let den = c.denom().to_f64().unwrap_or(f64::INFINITY);
    num / den
}

/// Exact rational from a finite `f64` (every finite double is rational).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, "*x{}^{}", i + 1, k)?;
                }
            }
        }
        Ok(())
    }
}
