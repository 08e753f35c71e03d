//! Exact arithmetic in the rational function field ℚ(s), where `s = q^(1/2)`.
//!
//! Every value is stored in a canonical form
//!
//! ```text
//! s^shift · N(s) / D(s)
//! ```
//!
//! with `N, D ∈ ℤ[s]`, `N(0) ≠ 0`, `D(0) ≠ 0`, `gcd(N, D) = 1` over ℚ[s], the
//! joint content of `N` and `D` equal to one and a positive leading coefficient
//! on `D`. Structural equality is therefore value equality. Laurent
//! polynomials (`D = 1`) never touch the gcd routine, which keeps the common
//! case cheap.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ScalarError;

/// Dense integer polynomial, lowest coefficient first, no trailing zeros.
type Poly = Vec<BigInt>;

mod poly {
    use super::Poly;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};

    pub fn trim(p: &mut Poly) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    pub fn constant(c: BigInt) -> Poly {
        if c.is_zero() {
            Vec::new()
        } else {
            vec![c]
        }
    }

    pub fn is_one(p: &Poly) -> bool {
        p.len() == 1 && p[0].is_one()
    }

    /// Number of vanishing low-order coefficients.
    pub fn valuation(p: &Poly) -> usize {
        p.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_up(p: &Poly, k: usize) -> Poly {
        if p.is_empty() || k == 0 {
            return p.clone();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(p.iter().cloned());
        out
    }

    pub fn add(a: &Poly, b: &Poly) -> Poly {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, c) in out.iter_mut().zip(short) {
            *o += c;
        }
        trim(&mut out);
        out
    }

    pub fn neg(a: &Poly) -> Poly {
        a.iter().map(|c| -c).collect()
    }

    pub fn mul(a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if is_one(a) {
            return b.clone();
        }
        if is_one(b) {
            return a.clone();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn content(a: &Poly) -> BigInt {
        a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_int(a: &Poly, c: &BigInt) -> Poly {
        a.iter().map(|x| x / c).collect()
    }

    pub fn primitive(a: &Poly) -> Poly {
        let c = content(a);
        if c.is_zero() || c.is_one() {
            a.clone()
        } else {
            div_int(a, &c)
        }
    }

    /// Pseudo-remainder of `a` by `b` (`b` nonzero).
    pub fn prem(a: &Poly, b: &Poly) -> Poly {
        let mut r = a.clone();
        let db = b.len() - 1;
        let lb = &b[db];
        while !r.is_empty() && r.len() > db {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            // r <- lb * r - lr * s^(dr-db) * b
            for c in r.iter_mut() {
                *c *= lb;
            }
            let off = dr - db;
            for (j, bj) in b.iter().enumerate() {
                r[off + j] -= &lr * bj;
            }
            trim(&mut r);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = primitive(a);
        let mut y = primitive(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = prem(&x, &y);
            x = y;
            y = primitive(&r);
        }
        if x.last().is_some_and(|c| c.is_negative()) {
            x = neg(&x);
        }
        x
    }

    /// Exact division; the caller guarantees `b | a` in ℤ[s].
    pub fn div_exact(a: &Poly, b: &Poly) -> Poly {
        if is_one(b) {
            return a.clone();
        }
        let mut r = a.clone();
        let db = b.len() - 1;
        let lb = &b[db];
        let mut q = vec![BigInt::zero(); a.len().saturating_sub(db)];
        while !r.is_empty() && r.len() > db {
            let dr = r.len() - 1;
            let (coef, rem) = r[dr].div_rem(lb);
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            let off = dr - db;
            for (j, bj) in b.iter().enumerate() {
                r[off + j] -= &coef * bj;
            }
            q[off] = coef;
            trim(&mut r);
        }
        debug_assert!(r.is_empty(), "inexact polynomial division");
        trim(&mut q);
        q
    }

    pub fn reverse(a: &Poly) -> Poly {
        let mut out: Poly = a.iter().rev().cloned().collect();
        trim(&mut out);
        out
    }
}

/// An exact element of ℚ(s), `s = q^(1/2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl ScalarQ {
    fn from_parts(mut shift: i64, mut num: Poly, mut den: Poly) -> Self {
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "ScalarQ with zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let vn = poly::valuation(&num);
        if vn > 0 {
            num.drain(..vn);
            shift += vn as i64;
        }
        let vd = poly::valuation(&den);
        if vd > 0 {
            den.drain(..vd);
            shift -= vd as i64;
        }
        if den.len() > 1 && num.len() > 1 {
            let g = poly::gcd(&num, &den);
            if g.len() > 1 {
                num = poly::div_exact(&num, &g);
                den = poly::div_exact(&den, &g);
            }
        }
        let c = poly::content(&num).gcd(&poly::content(&den));
        if !c.is_one() {
            num = poly::div_int(&num, &c);
            den = poly::div_int(&den, &c);
        }
        if den.last().is_some_and(|c| c.is_negative()) {
            num = poly::neg(&num);
            den = poly::neg(&den);
        }
        ScalarQ { shift, num, den }
    }

    /// Laurent monomial `c · s^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        ScalarQ { shift: k, num: vec![c], den: vec![BigInt::one()] }
    }

    /// Laurent polynomial from `(exponent of s, integer coefficient)` pairs.
    pub fn laurent(terms: &[(i64, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(k, c)| acc + Self::monomial(c, k))
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(0, poly::constant(r.numer().clone()), poly::constant(r.denom().clone()))
    }

    /// `s = q^(1/2)`.
    pub fn s() -> Self {
        Self::monomial(1, 1)
    }

    /// `s^k = q^(k/2)`.
    pub fn s_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// `q = s²`.
    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, 2 * k)
    }

    /// `ω = q^(1/2) − q^(-1/2)`.
    pub fn omega() -> Self {
        Self::laurent(&[(1, 1), (-1, -1)])
    }

    /// `q − q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        Self::laurent(&[(2, 1), (-2, -1)])
    }

    /// The last-column L-matrix coefficient `c = q^(-1/2)(q − q^{-1})`.
    pub fn c_coeff() -> Self {
        Self::s_pow(-1) * Self::q_minus_qinv()
    }

    /// Quantum bracket `[n] = (s^n − s^{-n}) / (s − s^{-1})`.
    pub fn qint(n: i64) -> Self {
        if n < 0 {
            return -Self::qint(-n);
        }
        let terms: Vec<(i64, i64)> = (0..n).map(|k| (n - 1 - 2 * k, 1)).collect();
        Self::laurent(&terms)
    }

    /// Symmetric q-number in `q`: `[n]_q = (q^n − q^{-n}) / (q − q^{-1})`.
    pub fn qnum(n: i64) -> Self {
        if n < 0 {
            return -Self::qnum(-n);
        }
        let terms: Vec<(i64, i64)> = (0..n).map(|k| (2 * (n - 1 - 2 * k), 1)).collect();
        Self::laurent(&terms)
    }

    pub fn is_laurent(&self) -> bool {
        poly::is_one(&self.den)
    }

    /// Numerator as a polynomial in `s` (after clearing negative powers).
    pub fn numerator(&self) -> Vec<BigInt> {
        if self.shift >= 0 {
            poly::shift_up(&self.num, self.shift as usize)
        } else {
            self.num.clone()
        }
    }

    /// Denominator as a polynomial in `s` (after clearing negative powers).
    pub fn denominator(&self) -> Vec<BigInt> {
        if self.shift < 0 {
            poly::shift_up(&self.den, (-self.shift) as usize)
        } else {
            self.den.clone()
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.last().is_some_and(|c| c.is_negative()) {
            num = poly::neg(&num);
            den = poly::neg(&den);
        }
        Ok(ScalarQ { shift: -self.shift, num, den })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// The bar involution `s ↦ s^{-1}` (equivalently `q ↦ q^{-1}`).
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = (self.num.len() - 1) as i64;
        let dd = (self.den.len() - 1) as i64;
        let mut num = poly::reverse(&self.num);
        let mut den = poly::reverse(&self.den);
        if den.last().is_some_and(|c| c.is_negative()) {
            num = poly::neg(&num);
            den = poly::neg(&den);
        }
        ScalarQ { shift: -self.shift - dn + dd, num, den }
    }

    /// Exact substitution `s = s0`.
    pub fn eval_at(&self, s0: &BigRational) -> Result<BigRational, ScalarError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let horner = |p: &Poly| {
            p.iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * s0 + BigRational::from_integer(c.clone()))
        };
        let d = horner(&self.den);
        if d.is_zero() {
            return Err(ScalarError::Pole(s0.to_string()));
        }
        let n = horner(&self.num);
        let pow = if self.shift >= 0 {
            num_traits::pow(s0.clone(), self.shift as usize)
        } else {
            if s0.is_zero() {
                return Err(ScalarError::Pole(s0.to_string()));
            }
            num_traits::pow(s0.recip(), (-self.shift) as usize)
        };
        Ok(n / d * pow)
    }

    /// Value at `s = 1` (classical limit), if regular there.
    pub fn at_one(&self) -> Result<BigRational, ScalarError> {
        self.eval_at(&BigRational::one())
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.shift.min(other.shift);
        let a = poly::shift_up(&self.num, (self.shift - e) as usize);
        let b = poly::shift_up(&other.num, (other.shift - e) as usize);
        if self.den == other.den {
            let num = poly::add(&a, &b);
            if self.is_laurent() {
                let mut out = ScalarQ { shift: e, num, den: self.den.clone() };
                out.strip_low();
                return out;
            }
            return Self::from_parts(e, num, self.den.clone());
        }
        let num = poly::add(&poly::mul(&a, &other.den), &poly::mul(&b, &self.den));
        Self::from_parts(e, num, poly::mul(&self.den, &other.den))
    }

    fn strip_low(&mut self) {
        if self.num.is_empty() {
            *self = Self::zero();
            return;
        }
        let v = poly::valuation(&self.num);
        if v > 0 {
            self.num.drain(..v);
            self.shift += v as i64;
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if self.is_laurent() && other.is_laurent() {
            return ScalarQ {
                shift,
                num: poly::mul(&self.num, &other.num),
                den: vec![BigInt::one()],
            };
        }
        Self::from_parts(shift, poly::mul(&self.num, &other.num), poly::mul(&self.den, &other.den))
    }

    fn neg_ref(&self) -> Self {
        ScalarQ { shift: self.shift, num: poly::neg(&self.num), den: self.den.clone() }
    }
}

impl Zero for ScalarQ {
    fn zero() -> Self {
        ScalarQ { shift: 0, num: Vec::new(), den: vec![BigInt::one()] }
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for ScalarQ {
    fn one() -> Self {
        Self::monomial(1, 0)
    }
}

impl Default for ScalarQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ScalarQ {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&ScalarQ> for &ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: &ScalarQ) -> ScalarQ {
                self.$imp(rhs)
            }
        }
        impl $tr<ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: &ScalarQ) -> ScalarQ {
                (&self).$imp(rhs)
            }
        }
        impl $tr<ScalarQ> for &ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                self.$imp(&rhs)
            }
        }
    };
}

impl ScalarQ {
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        self.neg_ref()
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        self.neg_ref()
    }
}

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, rhs: &ScalarQ) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign for ScalarQ {
    fn add_assign(&mut self, rhs: ScalarQ) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&ScalarQ> for ScalarQ {
    fn sub_assign(&mut self, rhs: &ScalarQ) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&ScalarQ> for ScalarQ {
    fn mul_assign(&mut self, rhs: &ScalarQ) {
        *self = self.mul_ref(rhs);
    }
}

/// Writes `c·s^shift·p(s)` as a Laurent expression in `q`, highest power first.
fn write_laurent(f: &mut fmt::Formatter<'_>, shift: i64, p: &Poly) -> fmt::Result {
    let mut first = true;
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = shift + k as i64;
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let power = match e {
            0 => None,
            2 => Some("q".to_string()),
            e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
            e => Some(format!("q^({}/2)", e)),
        };
        match power {
            None => write!(f, "{mag}")?,
            Some(pw) if mag.is_one() => write!(f, "{pw}")?,
            Some(pw) => write!(f, "{mag}*{pw}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            return write_laurent(f, self.shift, &self.num);
        }
        write!(f, "(")?;
        write_laurent(f, self.shift.max(0), &self.num)?;
        write!(f, ")/(")?;
        write_laurent(f, (-self.shift).max(0), &self.den)?;
        write!(f, ")")
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarQ({self})")
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent oracle: dense polynomial long division over ℚ, used to
    /// check quotients computed through the canonical-form machinery.
    fn divide_over_q(num: &[(i64, i64)], den: &[(i64, i64)]) -> Vec<(i64, BigRational)> {
        let lo = num.iter().chain(den).map(|t| t.0).min().unwrap().min(0);
        let dense = |t: &[(i64, i64)]| {
            let hi = t.iter().map(|x| x.0 - lo).max().unwrap() as usize;
            let mut v = vec![BigRational::zero(); hi + 1];
            for &(e, c) in t {
                v[(e - lo) as usize] += rat(c, 1);
            }
            v
        };
        let mut r = dense(num);
        let d = dense(den);
        let dv = d.iter().position(|c| !c.is_zero()).unwrap();
        let d = &d[dv..];
        let mut qt = Vec::new();
        while r.iter().any(|c| !c.is_zero()) {
            let top = r.iter().rposition(|c| !c.is_zero()).unwrap();
            assert!(top + 1 >= d.len(), "not divisible");
            let coef = &r[top] / d.last().unwrap();
            let off = top + 1 - d.len();
            for (j, dj) in d.iter().enumerate() {
                r[off + j] -= &coef * dj;
            }
            qt.push((off as i64 - dv as i64, coef));
        }
        qt
    }

    fn from_terms(t: &[(i64, BigRational)]) -> ScalarQ {
        t.iter().fold(ScalarQ::zero(), |acc, (e, c)| acc + ScalarQ::from_rational(c) * ScalarQ::s_pow(*e))
    }

    #[test]
    fn difference_of_squares() {
        let w = ScalarQ::omega();
        let s2 = ScalarQ::laurent(&[(2, 1), (-2, -1)]);
        let got = w.inv().unwrap() * s2;
        assert_eq!(got, ScalarQ::laurent(&[(1, 1), (-1, 1)]));
    }

    #[test]
    fn additive_inverse() {
        let x = ScalarQ::qint(3).checked_div(&ScalarQ::omega()).unwrap();
        assert!((x.clone() + (-x)).is_zero());
    }

    #[test]
    fn c_times_c_bar() {
        let c = ScalarQ::c_coeff();
        let got = &c * &c.bar();
        let oracle = -(ScalarQ::q_minus_qinv() * ScalarQ::q_minus_qinv());
        assert_eq!(got, oracle);
        // expanded by hand: -(q^2 - 2 + q^-2)
        assert_eq!(got, ScalarQ::laurent(&[(4, -1), (0, 2), (-4, -1)]));
    }

    #[test]
    fn qint_values() {
        assert!(ScalarQ::qint(0).is_zero());
        assert_eq!(ScalarQ::qint(1), ScalarQ::one());
        let oracle = from_terms(&divide_over_q(&[(2, 1), (-2, -1)], &[(1, 1), (-1, -1)]));
        assert_eq!(ScalarQ::qint(2), oracle);
        for n in 1..8 {
            assert_eq!(ScalarQ::qint(-n), -ScalarQ::qint(n));
            let oracle = from_terms(&divide_over_q(&[(n, 1), (-n, -1)], &[(1, 1), (-1, -1)]));
            assert_eq!(ScalarQ::qint(n), oracle);
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(ScalarQ::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn bar_examples() {
        for n in -4..6 {
            assert_eq!(ScalarQ::qint(n).bar(), ScalarQ::qint(n));
        }
        assert_eq!(ScalarQ::omega().bar(), -ScalarQ::omega());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ScalarQ::qint(3).at_one().unwrap(), rat(3, 1));
        assert!(ScalarQ::omega().at_one().unwrap().is_zero());
        assert_eq!(ScalarQ::qint(2).eval_at(&rat(2, 1)).unwrap(), rat(5, 2));
        let pole = ScalarQ::omega().inv().unwrap();
        assert!(matches!(pole.at_one(), Err(ScalarError::Pole(_))));
    }

    #[test]
    fn bracket_normalizations_agree() {
        assert_eq!(ScalarQ::qint(2) * ScalarQ::omega(), ScalarQ::q_minus_qinv());
    }

    #[test]
    fn rendering() {
        assert_eq!(ScalarQ::laurent(&[(2, 1), (0, 1), (-2, 1)]).to_string(), "q + 1 + q^-1");
        assert_eq!(ScalarQ::omega().to_string(), "q^(1/2) - q^(-1/2)");
        assert_eq!(ScalarQ::from_int(-3).to_string(), "-3");
    }

    fn arb_laurent() -> impl Strategy<Value = ScalarQ> {
        prop::collection::vec((-4i64..5, -3i64..4), 0..4).prop_map(|t| ScalarQ::laurent(&t))
    }

    fn arb_scalar() -> impl Strategy<Value = ScalarQ> {
        (arb_laurent(), arb_laurent()).prop_map(|(a, b)| {
            if b.is_zero() {
                a
            } else {
                a.checked_div(&b).unwrap()
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), ScalarQ::one());
            }
        }

        #[test]
        fn normalization_is_canonical(a in arb_laurent(), b in arb_laurent(), k in arb_laurent()) {
            prop_assume!(!b.is_zero() && !k.is_zero());
            let direct = a.checked_div(&b).unwrap();
            let scaled = (&a * &k).checked_div(&(&b * &k)).unwrap();
            prop_assert_eq!(direct, scaled);
        }

        #[test]
        fn bar_is_involutive_homomorphism(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), a.bar() * b.bar());
            prop_assert_eq!((&a + &b).bar(), a.bar() + b.bar());
        }

        #[test]
        fn classical_limit_is_homomorphism(a in arb_laurent(), b in arb_laurent()) {
            let one = BigRational::one();
            prop_assert_eq!((&a * &b).eval_at(&one).unwrap(), a.at_one().unwrap() * b.at_one().unwrap());
            prop_assert_eq!((&a + &b).eval_at(&one).unwrap(), a.at_one().unwrap() + b.at_one().unwrap());
        }

        #[test]
        fn rendering_round_trips(a in arb_scalar()) {
            let text = a.to_string();
            prop_assert_eq!(parse::parse(&text), Some(a));
        }
    }
}
