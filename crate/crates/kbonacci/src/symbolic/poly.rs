//! Sparse polynomials in the three formal variables i, j, k.
//!
//! Coefficients are exact big integers. Canonical form stores no zero
//! coefficients, so structural equality is polynomial equality. The engine
//! implements only what the verification needs: ring arithmetic,
//! substitution of one variable by another polynomial, and evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{Deserializer, Error as DeError};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Formal variable of a coefficient polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    I,
    J,
    K,
}

/// Exponents of (i, j, k) in one monomial.
pub type Exponents = (u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term((0, 0, 0), c.into());
        p
    }

    pub fn var(v: Var) -> Self {
        let exps = match v {
            Var::I => (1, 0, 0),
            Var::J => (0, 1, 0),
            Var::K => (0, 0, 1),
        };
        let mut p = Self::zero();
        p.add_term(exps, BigInt::one());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut p = Self::zero();
        for (exps, c) in terms {
            p.add_term(exps, c.into());
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted for display: total degree descending, then exponent
    /// triple descending, so i^2 comes before ik and constants come last.
    pub fn ordered_terms(&self) -> Vec<(Exponents, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by(|a, b| {
            let deg = |e: Exponents| e.0 + e.1 + e.2;
            deg(b.0).cmp(&deg(a.0)).then(b.0.cmp(&a.0))
        });
        v
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace `var` by `replacement` everywhere; a ring homomorphism.
    pub fn substitute(&self, var: Var, replacement: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(ei, ej, ek), c) in &self.terms {
            let (e_var, base) = match var {
                Var::I => (ei, (0, ej, ek)),
                Var::J => (ej, (ei, 0, ek)),
                Var::K => (ek, (ei, ej, 0)),
            };
            let mut term = Poly::zero();
            term.add_term(base, c.clone());
            out = &out + &(&term * &replacement.pow(e_var));
        }
        out
    }

    pub fn evaluate(&self, i: i64, j: i64, k: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(ei, ej, ek), c) in &self.terms {
            acc += c * BigInt::from(i).pow(ei) * BigInt::from(j).pow(ej) * BigInt::from(k).pow(ek);
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&exps, c) in &rhs.terms {
            out.add_term(exps, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&exps, c) in &rhs.terms {
            out.add_term(exps, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(ai, aj, ak), ac) in &self.terms {
            for (&(bi, bj, bk), bc) in &rhs.terms {
                out.add_term((ai + bi, aj + bj, ak + bk), ac * bc);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = Poly::zero();
        for (&exps, c) in &self.terms {
            out.add_term(exps, -c.clone());
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<i64> for Poly {
            type Output = Poly;
            fn $method(self, rhs: i64) -> Poly {
                (&self).$method(&Poly::constant(rhs))
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, ((ei, ej, ek), c)) in self.ordered_terms().into_iter().enumerate() {
            let negative = c < &BigInt::zero();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            let mut vars = String::new();
            for (name, e) in [("i", ei), ("j", ej), ("k", ek)] {
                match e {
                    0 => {}
                    1 => vars.push_str(name),
                    _ => vars.push_str(&format!("{name}^{e}")),
                }
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag}{vars}")?;
            }
        }
        Ok(())
    }
}

/// One monomial in the JSON wire form; the coefficient travels as a decimal
/// string like every other big integer in the crate's schemas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDto {
    pub ei: u32,
    pub ej: u32,
    pub ek: u32,
    #[serde(with = "crate::serde_util::bigint_decimal")]
    pub c: BigInt,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let ordered = self.ordered_terms();
        let mut seq = ser.serialize_seq(Some(ordered.len()))?;
        for ((ei, ej, ek), c) in ordered {
            seq.serialize_element(&MonomialDto {
                ei,
                ej,
                ek,
                c: c.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let monomials = Vec::<MonomialDto>::deserialize(de)?;
        let mut p = Poly::zero();
        for m in monomials {
            if p.terms.contains_key(&(m.ei, m.ej, m.ek)) {
                return Err(D::Error::custom(format!(
                    "duplicate monomial ({}, {}, {})",
                    m.ei, m.ej, m.ek
                )));
            }
            p.add_term((m.ei, m.ej, m.ek), m.c);
        }
        Ok(p)
    }
}
