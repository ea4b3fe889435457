//! Sparse multivariate polynomials over `Q` in the declared parameters.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so the derived
//! `Vec` ordering on keys coincides with lexicographic order where parameter 0
//! is the most significant. The largest key is the leading term.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Exps, BigRational>,
}

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exps_add(a: &[u32], b: &[u32]) -> Exps {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(out)
}

fn exps_sub(a: &[u32], b: &[u32]) -> Option<Exps> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = Vec::with_capacity(a.len());
    for i in 0..a.len() {
        let bi = b.get(i).copied().unwrap_or(0);
        out.push(a[i].checked_sub(bi)?);
    }
    Some(trim(out))
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The parameter with the given index.
    pub fn param(index: usize) -> Self {
        let mut e = vec![0; index + 1];
        e[index] = 1;
        let mut p = Self::zero();
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    /// The constant term (zero when absent).
    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Number of parameters actually occurring (max index + 1).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    fn leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.last_key_value()
    }

    fn add_term(&mut self, e: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    fn mul_term(&self, e: &[u32], c: &BigRational) -> Self {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(f, a)| (exps_add(f, e), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &other.terms {
            for (f, a) in &self.terms {
                out.add_term(exps_add(f, e), a * c);
            }
        }
        out
    }

    /// Exact quotient `self / divisor`. Panics if the division leaves a
    /// remainder; callers only divide by known factors.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (eb, cb) = divisor.leading().expect("division by zero parameter polynomial");
        let (eb, cb) = (eb.clone(), cb.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((er, cr)) = rem.leading() {
            let e = exps_sub(er, &eb).expect("inexact parameter polynomial division");
            let c = cr / &cb;
            rem = rem.sub(&divisor.mul_term(&e, &c));
            quot.add_term(e, c);
        }
        quot
    }

    /// Divide by the leading rational coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let k = self.nvars().max(other.nvars());
        if k == 0 {
            return Self::one();
        }
        let v = k - 1;
        let a = to_univariate(self, v);
        let b = to_univariate(other, v);
        let ca = content(&a);
        let cb = content(&b);
        let c = ca.gcd(&cb);
        let mut a: Vec<ParamPoly> = a.iter().map(|x| x.div_exact(&ca)).collect();
        let mut b: Vec<ParamPoly> = b.iter().map(|x| x.div_exact(&cb)).collect();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = primitive(r);
        }
        let g = from_univariate(&primitive(a), v);
        g.mul(&c).monic()
    }

    /// Render with the given parameter names, e.g. `2*H^2-1/3`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mut factors = Vec::new();
            if !abs.is_one() || e.is_empty() {
                factors.push(rational_string(&abs));
            }
            for (j, &a) in e.iter().enumerate() {
                let name = names.get(j).map(String::as_str).unwrap_or("?");
                match a {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{a}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

pub fn rational_string(c: &BigRational) -> String {
    if c.denom() == &BigInt::one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn to_univariate(p: &ParamPoly, v: usize) -> Vec<ParamPoly> {
    let mut out: Vec<ParamPoly> = Vec::new();
    for (e, c) in &p.terms {
        let power = e.get(v).copied().unwrap_or(0) as usize;
        if out.len() <= power {
            out.resize(power + 1, ParamPoly::zero());
        }
        let mut rest = e.clone();
        rest.truncate(v);
        out[power].add_term(trim(rest), c.clone());
    }
    out
}

fn from_univariate(cs: &[ParamPoly], v: usize) -> ParamPoly {
    let mut out = ParamPoly::zero();
    for (power, coeff) in cs.iter().enumerate() {
        for (e, c) in &coeff.terms {
            let mut full = e.clone();
            full.resize(v + 1, 0);
            full[v] = power as u32;
            out.add_term(trim(full), c.clone());
        }
    }
    out
}

fn content(cs: &[ParamPoly]) -> ParamPoly {
    cs.iter().fold(ParamPoly::zero(), |acc, c| acc.gcd(c))
}

fn strip(cs: &mut Vec<ParamPoly>) {
    while cs.last().is_some_and(ParamPoly::is_zero) {
        cs.pop();
    }
}

fn pseudo_remainder(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let lb = b.last().expect("nonzero divisor");
    let db = b.len() - 1;
    let mut r = a.to_vec();
    strip(&mut r);
    while r.len() > db {
        let lr = r.last().cloned().expect("nonempty");
        let shift = r.len() - 1 - db;
        let mut next: Vec<ParamPoly> = r.iter().map(|x| x.mul(lb)).collect();
        for (i, bi) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bi.mul(&lr));
        }
        strip(&mut next);
        r = next;
    }
    r
}

/// Content-free and with a leading rational coefficient of one.
fn primitive(mut cs: Vec<ParamPoly>) -> Vec<ParamPoly> {
    strip(&mut cs);
    if cs.is_empty() {
        return cs;
    }
    let c = content(&cs);
    let mut cs: Vec<ParamPoly> = cs.iter().map(|x| x.div_exact(&c)).collect();
    let lead = cs
        .last()
        .and_then(ParamPoly::leading_coefficient)
        .cloned()
        .expect("nonzero");
    if !lead.is_one() {
        let inv = lead.recip();
        cs = cs.iter().map(|x| x.scale(&inv)).collect();
    }
    cs
}
