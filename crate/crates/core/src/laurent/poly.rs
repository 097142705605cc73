use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Raised by [`LaurentPoly::exact_div`] when the quotient is not a Laurent
/// polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial is not divisible")]
pub struct NotDivisible;

/// A Laurent polynomial in `v` with arbitrary-precision integer coefficients,
/// i.e. an element of `Z[v, v^-1]`.
///
/// Terms are kept sorted by exponent and zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn v_inv() -> Self {
        Self::monomial(1, -1)
    }

    /// `v - v^-1`, the coefficient in the quadratic relation.
    pub fn v_minus_v_inv() -> Self {
        Self::from_terms([(1, 1), (-1, -1)])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut terms: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// True when every coefficient is non-negative (membership in `N[v, v^-1]`).
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// True for the units `±v^k` of `Z[v, v^-1]`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.magnitude().is_one()
    }

    /// The substitution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect();
        Self { terms }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect();
        Self { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, x)| (*e, x * c)).collect();
        Self { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `(-v)^k` for any integer `k`.
    pub fn neg_v_pow(k: i32) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, k)
    }

    /// Returns `s` with `s * q == self`.
    ///
    /// Panics if `q` is zero.
    pub fn exact_div(&self, q: &Self) -> Result<Self, NotDivisible> {
        assert!(!q.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if q.terms.len() == 1 {
            let (qe, qc) = &q.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let (quo, rem) = c.div_rem(qc);
                if !rem.is_zero() {
                    return Err(NotDivisible);
                }
                terms.push((e - qe, quo));
            }
            return Ok(Self { terms });
        }

        // Both sides shifted into Z[v] with nonzero constant term; the quotient
        // is then an honest polynomial.
        let p_lo = self.terms[0].0;
        let q_lo = q.terms[0].0;
        let mut rem = self.dense_from(p_lo);
        let den = q.dense_from(q_lo);
        let dq = den.len() - 1;
        if rem.len() < den.len() {
            return Err(NotDivisible);
        }
        let lead = &den[dq];
        let mut quot = vec![BigInt::zero(); rem.len() - dq];
        for top in (dq..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let (c, r) = rem[top].div_rem(lead);
            if !r.is_zero() {
                return Err(NotDivisible);
            }
            let base = top - dq;
            for (i, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    rem[base + i] -= &c * d;
                }
            }
            quot[base] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(NotDivisible);
        }
        Ok(Self::from_dense(p_lo - q_lo, quot))
    }

    fn dense_from(&self, lo: i32) -> Vec<BigInt> {
        let hi = self.terms.last().map(|t| t.0).unwrap_or(lo);
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            out[(e - lo) as usize] = c.clone();
        }
        out
    }

    fn from_dense(lo: i32, dense: Vec<BigInt>) -> Self {
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i32, c))
            .collect();
        Self { terms }
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (e, c) = &other.terms[j];
                    out.push((*e, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (e, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate { a - b } else { a + b };
                    if !c.is_zero() {
                        out.push((*e, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return Self { terms: other.terms.iter().map(|(f, d)| (e + f, c * d)).collect() };
        }
        if other.terms.len() == 1 {
            return other.mul_ref(self);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                acc[(e + f - lo) as usize] += c * d;
            }
        }
        Self::from_dense(lo, acc)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary total order, only used to make containers deterministic.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let f: fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_signed(b, false));
forward_binop!(Sub, sub, |a, b| a.add_signed(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_signed(rhs, false);
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_signed(rhs, true);
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

/// Canonical rendering with decreasing exponents, e.g. `v^2 - 2 + v^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.magnitude();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match e {
                1 => f.write_str("v")?,
                _ => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse Laurent polynomial {input:?}: {reason}")]
pub struct ParsePolyError {
    pub input: String,
    pub reason: &'static str,
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    /// Accepts the canonical rendering plus a few relaxations: any term order,
    /// `*` between coefficient and `v`, and arbitrary whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParsePolyError { input: s.to_string(), reason };
        let raw: Vec<char> = s.trim().chars().collect();
        let glued = |c: char| c.is_ascii_alphanumeric() || c == '^';
        for (i, w) in raw.windows(3).enumerate() {
            if w[1].is_whitespace() {
                let next = raw[i + 1..].iter().find(|c| !c.is_whitespace());
                if glued(w[0]) && next.is_some_and(|&c| glued(c)) {
                    return Err(err("missing operator between terms"));
                }
            }
        }
        let chars: Vec<char> = raw.into_iter().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty input"));
        }
        let mut pos = 0;
        let mut terms: Vec<(i32, BigInt)> = Vec::new();
        let read_int = |pos: &mut usize| -> Option<String> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| chars[start..*pos].iter().collect())
        };
        while pos < chars.len() {
            let mut negative = false;
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    negative = true;
                    pos += 1
                }
                _ if !terms.is_empty() => return Err(err("expected '+' or '-' between terms")),
                _ => {}
            }
            let coeff = read_int(&mut pos);
            if coeff.is_some() && pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            }
            let mut exp = 0i32;
            let has_v = pos < chars.len() && chars[pos] == 'v';
            if has_v {
                pos += 1;
                exp = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let neg_exp = pos < chars.len() && chars[pos] == '-';
                    if neg_exp {
                        pos += 1;
                    }
                    let digits = read_int(&mut pos).ok_or_else(|| err("missing exponent"))?;
                    exp = digits.parse().map_err(|_| err("exponent out of range"))?;
                    if neg_exp {
                        exp = -exp;
                    }
                }
            } else if coeff.is_none() {
                return Err(err("expected a coefficient or 'v'"));
            }
            let mut c: BigInt = match coeff {
                Some(digits) => digits.parse().map_err(|_| err("bad coefficient"))?,
                None => BigInt::one(),
            };
            if negative {
                c = -c;
            }
            terms.push((exp, c));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((LaurentPoly::v() + LaurentPoly::monomial(-1, 1)).is_zero());
        assert_eq!(p("v + v^-1") + p("v^-1"), p("v + 2v^-1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("v - v^-1") * p("v + v^-1"), p("v^2 - v^-2"));
        assert_eq!(p("v^2 - 1").pow(2), p("v^4 - 2v^2 + 1"));
        assert_eq!(p("3v^2 - v^-1") * LaurentPoly::one(), p("3v^2 - v^-1"));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::v().bar(), LaurentPoly::v_inv());
        assert_eq!(p("v + v^-1").bar(), p("v + v^-1"));
        assert_eq!(p("3v^2 - v^-1").bar(), p("3v^-2 - v"));
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(p("v^2 - 1").pow(2).exact_div(&p("v^2 - 1")), Ok(p("v^2 - 1")));
        assert_eq!(p("v^3").exact_div(&p("v")), Ok(p("v^2")));
        assert_eq!(p("v + 1").exact_div(&p("v - 1")), Err(NotDivisible));
        assert_eq!(p("2v").exact_div(&p("4")), Err(NotDivisible));
        assert_eq!(p("v^-3 + v^-1").exact_div(&p("v^2 + 1")), Ok(p("v^-3")));
    }

    #[test]
    fn render_is_canonical() {
        assert_eq!(p("v^2 - 2 + v^-2").to_string(), "v^2 - 2 + v^-2");
        assert_eq!(p("-v^-1 + 3v").to_string(), "3v - v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("2*v^-3").to_string(), "2v^-3");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
        assert!("2 3".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn no_overflow_in_large_powers() {
        let big = p("2v + 3").pow(80);
        assert!(big.coeff(0).bits() > 64);
        assert_eq!(big.exact_div(&p("2v + 3").pow(79)), Ok(p("2v + 3")));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..5, -6i64..7), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + LaurentPoly::zero(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_an_involutive_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), a.bar() * b.bar());
            prop_assert_eq!((&a + &b).bar(), a.bar() + b.bar());
        }

        #[test]
        fn exact_div_inverts_mul(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b), Ok(a));
        }

        #[test]
        fn render_parse_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn no_zero_coefficients_stored(a in arb_poly(), b in arb_poly()) {
            for q in [&a * &b, &a - &b, &a + &b] {
                prop_assert!(q.terms().all(|(_, c)| !c.is_zero()));
            }
        }
    }
}
