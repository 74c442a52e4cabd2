//! Exact rational arithmetic and sparse polynomials in the variables `x, y, u, v`.
//!
//! [`MPoly`] is a canonical sparse map from exponent vectors to nonzero
//! rational coefficients. Terms are kept in a graded order (total degree
//! first, ties broken by the exponent of `v`, then `u`, then `y`, then `x`),
//! so iteration and rendering are deterministic and two polynomials are
//! equal exactly when their term maps are.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `n` or `n/d`.
pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial is not univariate in {0}")]
    NonUnivariateInput(Var),
    #[error("polynomial involves variables outside {{{0}}}")]
    NonConformingInput(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::U, Var::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::U => 'u',
            Var::V => 'v',
        }
    }

    pub fn from_name(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            'y' => Some(Var::Y),
            'u' => Some(Var::U),
            'v' => Some(Var::V),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exponent vector `(e_x, e_y, e_u, e_v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut exps = [0; 4];
        exps[v.index()] = e;
        Monomial(exps)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.0;
        for (e, o) in exps.iter_mut().zip(other.0) {
            *e += o;
        }
        Monomial(exps)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0; 4];
        for (e, (a, b)) in exps.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *e = a.checked_sub(*b)?;
        }
        Some(Monomial(exps))
    }

    fn with_exp(&self, v: Var, e: u32) -> Monomial {
        let mut exps = self.0;
        exps[v.index()] = e;
        Monomial(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0[3].cmp(&other.0[3]))
            .then_with(|| self.0[2].cmp(&other.0[2]))
            .then_with(|| self.0[1].cmp(&other.0[1]))
            .then_with(|| self.0[0].cmp(&other.0[0]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order of vanishing at the origin; `Infinite` for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Sparse polynomial over the rationals in `x, y, u, v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MPoly {
        MPoly::term(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(rat(n))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn x() -> MPoly {
        MPoly::var(Var::X)
    }

    pub fn y() -> MPoly {
        MPoly::var(Var::Y)
    }

    pub fn u() -> MPoly {
        MPoly::var(Var::U)
    }

    pub fn v() -> MPoly {
        MPoly::var(Var::V)
    }

    pub fn term(m: Monomial, c: Rational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// Builds `Σ coeffs[k] · var^k`.
    pub fn from_coefficients(var: Var, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out += &(c * &MPoly::term(Monomial::var(var, k as u32), Rational::one()));
        }
        out
    }

    /// Univariate polynomial from rationals in ascending powers of `var`.
    pub fn univariate(var: Var, coeffs: &[Rational]) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out.add_term(Monomial::var(var, k as u32), c.clone());
        }
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
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

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Highest exponent of `var`, `None` for the zero polynomial.
    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn involves(&self, var: Var) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// True if every variable the polynomial involves is in `allowed`.
    pub fn only_involves(&self, allowed: &[Var]) -> bool {
        Var::ALL
            .iter()
            .filter(|v| !allowed.contains(v))
            .all(|v| !self.involves(*v))
    }

    pub fn derivative(&self, var: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), c * rat(e as i64));
            }
        }
        out
    }

    pub fn nth_derivative(&self, var: Var, n: u32) -> MPoly {
        (0..n).fold(self.clone(), |p, _| p.derivative(var))
    }

    /// Antiderivative in `var` with zero integration constant.
    pub fn antiderivative(&self, var: Var) -> Result<MPoly, AlgebraError> {
        if !self.only_involves(&[var]) {
            return Err(AlgebraError::NonUnivariateInput(var));
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            out.add_term(m.with_exp(var, e + 1), c / rat(e as i64 + 1));
        }
        Ok(out)
    }

    /// Image of `self` under the ring homomorphism `var ↦ q`.
    pub fn substitute(&self, var: Var, q: &MPoly) -> MPoly {
        let coeffs = self.coefficients_in(var);
        // Horner in `q`.
        let mut out = MPoly::zero();
        for c in coeffs.iter().rev() {
            out = &(&out * q) + c;
        }
        out
    }

    /// Coefficients `c_0..c_d` with `self = Σ c_k · var^k`; `[0]` for zero.
    pub fn coefficients_in(&self, var: Var) -> Vec<MPoly> {
        let Some(d) = self.degree_in(var) else {
            return vec![MPoly::zero()];
        };
        let mut out = vec![MPoly::zero(); d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var);
            out[e as usize].add_term(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Minimal total degree in `vars` over nonzero terms.
    pub fn order_at_origin(&self, vars: &[Var]) -> Result<Order, AlgebraError> {
        if !self.only_involves(vars) {
            let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
            return Err(AlgebraError::NonConformingInput(names.join(",")));
        }
        Ok(self
            .terms
            .keys()
            .map(|m| vars.iter().map(|v| m.exp(*v)).sum::<u32>())
            .min()
            .map_or(Order::Infinite, Order::Finite))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((lm, lc)) = rem.leading() {
            let shift = lm.div(&dm)?;
            let factor = lc / &dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&shift), -(c * &factor));
            }
            quot.add_term(shift, factor);
        }
        Some(quot)
    }

    /// Substitutes rational values for some variables.
    pub fn evaluate(&self, assignments: &[(Var, Rational)]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = *m;
            for (v, val) in assignments {
                let e = m.exp(*v);
                if e > 0 {
                    coeff *= num_traits::pow(val.clone(), e as usize);
                    mono = mono.with_exp(*v, 0);
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Dense ascending coefficients of a polynomial univariate in `var`.
    fn dense(&self, var: Var) -> Result<Vec<Rational>, AlgebraError> {
        if !self.only_involves(&[var]) {
            return Err(AlgebraError::NonUnivariateInput(var));
        }
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            out[m.exp(var) as usize] = c.clone();
        }
        Ok(out)
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn dense_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() / lb;
        for (i, c) in b.iter().enumerate() {
            let t = c * &factor;
            r[shift + i] -= t;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Monic gcd of two polynomials univariate in `var`.
///
/// Returns `0` when both are zero and `1` when they are coprime.
pub fn gcd_univariate(p: &MPoly, q: &MPoly, var: Var) -> Result<MPoly, AlgebraError> {
    let mut a = p.dense(var)?;
    let mut b = q.dense(var)?;
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = dense_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return Ok(MPoly::zero());
    }
    let lead = a.last().unwrap().clone();
    let monic: Vec<Rational> = a.iter().map(|c| c / &lead).collect();
    Ok(MPoly::univariate(var, &monic))
}

/// Monic gcd of a whole list of univariate polynomials.
pub fn gcd_all(polys: &[MPoly], var: Var) -> Result<MPoly, AlgebraError> {
    polys
        .iter()
        .try_fold(MPoly::zero(), |acc, p| gcd_univariate(&acc, p, var))
}

/// Rational roots of a univariate polynomial, ascending and without
/// multiplicity. Gives up (returns `None`) when the integer coefficients are
/// too large to enumerate divisors.
pub fn rational_roots(p: &MPoly, var: Var) -> Result<Option<Vec<Rational>>, AlgebraError> {
    let mut dense = p.dense(var)?;
    trim(&mut dense);
    if dense.len() <= 1 {
        return Ok(Some(Vec::new()));
    }
    let mut roots = Vec::new();
    // Strip the root at zero.
    let low = dense.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rational::zero());
        dense.drain(..low);
    }
    if dense.len() > 1 {
        let lcm = dense.iter().fold(BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        let ints: Vec<BigInt> = dense
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let limit = BigInt::from(1_000_000_000_000i64);
        let (c0, cn) = (ints[0].abs(), ints.last().unwrap().abs());
        if c0 > limit || cn > limit {
            return Ok(None);
        }
        let (c0, cn): (u64, u64) = (c0.try_into().unwrap(), cn.try_into().unwrap());
        for num in divisors(c0) {
            for den in divisors(cn) {
                for sign in [1i64, -1] {
                    let cand = Rational::new(BigInt::from(num) * sign, BigInt::from(den));
                    if !roots.contains(&cand) && eval_dense(&dense, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(Some(roots))
}

fn eval_dense(p: &[Rational], at: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Display for MPoly {
    /// Canonical text form, highest term first, e.g. `y^2 + 2*x*y - 1/3*x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if *m == Monomial::ONE || !mag.is_one() {
                factors.push(render_rational(&mag));
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self += &rhs;
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self -= &rhs;
        self
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl From<Rational> for MPoly {
    fn from(c: Rational) -> MPoly {
        MPoly::constant(c)
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> MPoly {
        MPoly::int(n)
    }
}
