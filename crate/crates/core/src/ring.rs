//! The polynomial algebra `K[X(Σ)]`: shifted variables, monomials with their
//! order function, and sparse polynomials kept in descending term order.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use smallvec::SmallVec;

use crate::coeff::FieldElement;
use crate::error::{Error, Result};
use crate::ordering::OrderingSpec;
use crate::shift::Shift;

/// Names of the shift rank, the symbols `X` and the constant parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSignature {
    shift_rank: usize,
    symbols: Vec<String>,
    parameters: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSignature {
    pub fn new(
        shift_rank: usize,
        symbols: impl IntoIterator<Item = impl Into<String>>,
        parameters: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let parameters: Vec<String> = parameters.into_iter().map(Into::into).collect();
        if shift_rank == 0 {
            return Err(Error::InvalidSignature("shift rank must be at least 1".into()));
        }
        if symbols.is_empty() {
            return Err(Error::InvalidSignature("at least one symbol is required".into()));
        }
        let mut seen = HashSet::new();
        for name in symbols.iter().chain(&parameters) {
            if !is_identifier(name) {
                return Err(Error::InvalidSignature(format!("`{name}` is not an identifier")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSignature(format!("`{name}` is declared twice")));
            }
        }
        Ok(RingSignature {
            shift_rank,
            symbols,
            parameters,
        })
    }

    pub fn shift_rank(&self) -> usize {
        self.shift_rank
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn parameter_index(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|s| s == name)
    }
}

/// A shifted variable `x_i(σ)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub shift: Shift,
    pub symbol: u32,
}

impl Var {
    pub fn new(symbol: usize, shift: Shift) -> Self {
        Var {
            shift,
            symbol: symbol as u32,
        }
    }

    pub fn shifted(&self, s: &Shift) -> Var {
        Var {
            shift: shift_checked(&self.shift, s),
            symbol: self.symbol,
        }
    }
}

fn shift_checked(a: &Shift, b: &Shift) -> Shift {
    a.mul(b).expect("shift exponent overflow or rank mismatch")
}

/// Value of the order function: `-∞` for the monomial 1, otherwise the
/// largest shift degree among the factors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OrdValue {
    NegInf,
    Fin(u64),
}

impl OrdValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            OrdValue::NegInf => None,
            OrdValue::Fin(d) => Some(d),
        }
    }

    /// `deg(σ) + self`, with `-∞` absorbing.
    pub fn plus(self, d: u64) -> OrdValue {
        match self {
            OrdValue::NegInf => OrdValue::NegInf,
            OrdValue::Fin(e) => OrdValue::Fin(e + d),
        }
    }
}

impl fmt::Display for OrdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdValue::NegInf => f.write_str("-inf"),
            OrdValue::Fin(d) => write!(f, "{d}"),
        }
    }
}

/// A monomial stored as `(variable, exponent)` factors in ascending
/// structural order of the variables. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut f = SmallVec::new();
        f.push((v, e));
        Monomial(f)
    }

    /// Collect arbitrary factors, merging repeated variables and dropping
    /// zero exponents.
    pub fn from_factors(factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut fs: SmallVec<[(Var, u32); 4]> = factors.into_iter().filter(|f| f.1 > 0).collect();
        fs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(fs.len());
        for (v, e) in fs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|f| u64::from(f.1)).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|f| f.0.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn ord(&self) -> OrdValue {
        self.0
            .iter()
            .map(|f| OrdValue::Fin(f.0.shift.deg()))
            .max()
            .unwrap_or(OrdValue::NegInf)
    }

    fn merge(&self, other: &Self, both: impl Fn(u32, u32) -> u32, keep_single: bool) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    if keep_single {
                        out.push(a[i].clone());
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    if keep_single {
                        out.push(b[j].clone());
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let e = both(a[i].1, b[j].1);
                    if e > 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        if keep_single {
            out.extend(a[i..].iter().cloned());
            out.extend(b[j..].iter().cloned());
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        self.merge(other, |x, y| x.checked_add(y).expect("monomial exponent overflow"), true)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, u32::max, true)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.merge(other, u32::min, false)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let b = &other.0;
        let mut j = 0;
        for (v, e) in &self.0 {
            while j < b.len() && b[j].0 < *v {
                j += 1;
            }
            if j == b.len() || b[j].0 != *v || b[j].1 < *e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / divisor`, or `None` when the division is not exact.
    pub fn div(&self, divisor: &Self) -> Option<Self> {
        if !divisor.divides(self) {
            return None;
        }
        Some(self.merge_sub(divisor))
    }

    fn merge_sub(&self, divisor: &Self) -> Self {
        let mut out = SmallVec::with_capacity(self.0.len());
        let b = &divisor.0;
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < b.len() && b[j].0 == *v {
                if *e > b[j].1 {
                    out.push((v.clone(), e - b[j].1));
                }
                j += 1;
            } else {
                out.push((v.clone(), *e));
            }
        }
        Monomial(out)
    }

    /// The action `σ·m`: every factor `x_i(τ)^e` becomes `x_i(στ)^e`.
    pub fn shifted(&self, s: &Shift) -> Self {
        if s.is_identity() {
            return self.clone();
        }
        // a uniform shift preserves the structural order of the variables
        Monomial(self.0.iter().map(|(v, e)| (v.shifted(s), *e)).collect())
    }

    pub fn shift_rank(&self) -> Option<usize> {
        self.0.first().map(|f| f.0.shift.rank())
    }

    /// Render as `u(1,0,0)^2*v(0,0,0)` using the signature's names.
    pub fn fmt_with(&self, sig: &RingSignature) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::with_capacity(self.0.len());
        // print the most significant shift first, as a reader expects
        for (v, e) in self.0.iter().rev() {
            let name = &sig.symbols[v.symbol as usize];
            if *e == 1 {
                parts.push(format!("{name}{}", v.shift));
            } else {
                parts.push(format!("{name}{}^{e}", v.shift));
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{}{}", v.symbol, v.shift)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coeff: FieldElement,
    pub mono: Monomial,
}

/// A polynomial whose terms are strictly descending under the ordering of
/// the ring that built it. Term order is only meaningful together with that
/// ring, so every order-dependent operation goes through [`Ring`].
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, Monomial::one())
    }

    pub fn monomial(c: FieldElement, m: Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: vec![Term { coeff: c, mono: m }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Wrap terms that are already strictly descending.
    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        Poly { terms }
    }

    /// Remove and return the leading term.
    pub fn take_lt(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn lt(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn lc(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_none_or(FieldElement::is_one)
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// `c·m·self`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, c: &FieldElement, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    /// `σ·self`; term order is preserved because the ordering is a
    /// Σ-ordering.
    pub fn shifted(&self, s: &Shift) -> Self {
        if s.is_identity() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mono: t.mono.shifted(s),
                })
                .collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lc = self.lc().ok_or(Error::ZeroPolynomial)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lc.inv()?))
    }

    pub fn ord(&self) -> OrdValue {
        self.terms
            .iter()
            .map(|t| t.mono.ord())
            .max()
            .unwrap_or(OrdValue::NegInf)
    }

    pub fn is_ord_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|t| t.mono.ord());
        match it.next() {
            None => true,
            Some(first) => it.all(|o| o == first),
        }
    }

    /// Whether every coefficient is a plain rational.
    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.as_rational().is_some())
    }
}

/// A signature together with the monomial Σ-ordering that fixes term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    sig: RingSignature,
    order: OrderingSpec,
}

impl Ring {
    pub fn new(sig: RingSignature, order: OrderingSpec) -> Result<Self> {
        order.check_against(&sig)?;
        Ok(Ring { sig, order })
    }

    pub fn signature(&self) -> &RingSignature {
        &self.sig
    }

    pub fn ordering(&self) -> &OrderingSpec {
        &self.order
    }

    pub fn shift_rank(&self) -> usize {
        self.sig.shift_rank
    }

    pub fn cmp(&self, m: &Monomial, n: &Monomial) -> Ordering {
        self.order.compare_monomials(m, n)
    }

    pub fn var(&self, symbol: usize, shift: &[u32]) -> Var {
        assert_eq!(shift.len(), self.sig.shift_rank, "shift rank");
        Var::new(symbol, Shift::new(shift.iter().copied()))
    }

    /// Check that every variable of `f` fits the signature.
    pub fn check_poly(&self, f: &Poly) -> Result<()> {
        for t in &f.terms {
            for (v, _) in t.mono.factors() {
                if v.shift.rank() != self.sig.shift_rank {
                    return Err(Error::RankMismatch {
                        expected: self.sig.shift_rank,
                        found: v.shift.rank(),
                    });
                }
                if v.symbol as usize >= self.sig.symbols.len() {
                    return Err(Error::InvalidSignature(format!("unknown symbol index {}", v.symbol)));
                }
            }
        }
        Ok(())
    }

    /// Build a polynomial from arbitrary terms: sort, merge, drop zeros.
    pub fn poly(&self, terms: impl IntoIterator<Item = (FieldElement, Monomial)>) -> Poly {
        let mut ts: Vec<Term> = terms
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(coeff, mono)| Term { coeff, mono })
            .collect();
        ts.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(ts.len());
        for t in ts {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = &last.coeff + &t.coeff;
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        Poly { terms: out }
    }

    /// `f + c·g`, merged in one pass.
    pub fn add_scaled(&self, f: &Poly, c: &FieldElement, g: &Poly) -> Poly {
        if c.is_zero() || g.is_zero() {
            return f.clone();
        }
        let (a, b) = (&f.terms, &g.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: &b[j].coeff * c,
                        mono: b[j].mono.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].coeff + &(&b[j].coeff * c);
                    if !s.is_zero() {
                        out.push(Term {
                            coeff: s,
                            mono: a[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            coeff: &t.coeff * c,
            mono: t.mono.clone(),
        }));
        Poly { terms: out }
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, &FieldElement::one(), g)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, &-FieldElement::one(), g)
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        small.terms.iter().fold(Poly::zero(), |acc, t| {
            self.add(&acc, &large.mul_term(&t.coeff, &t.mono))
        })
    }

    pub fn pow(&self, f: &Poly, e: u32) -> Poly {
        (0..e).fold(Poly::constant(FieldElement::one()), |acc, _| self.mul(&acc, f))
    }

    /// `(l/lt f)·f − (l/lt g)·g` with `l = lcm(lm f, lm g)`.
    pub fn spoly(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let (tf, tg) = (
            f.lt().ok_or(Error::ZeroPolynomial)?,
            g.lt().ok_or(Error::ZeroPolynomial)?,
        );
        let l = tf.mono.lcm(&tg.mono);
        let qf = l.div(&tf.mono).expect("lcm is a multiple");
        let qg = l.div(&tg.mono).expect("lcm is a multiple");
        let a = f.mul_term(&tf.coeff.inv()?, &qf);
        let b = g.mul_term(&tg.coeff.inv()?, &qg);
        Ok(self.sub(&a, &b))
    }

    pub fn fmt_poly(&self, f: &Poly) -> String {
        crate::io::print_poly(&self.sig, f)
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        m.fmt_with(&self.sig)
    }
}
