//! Bivariate Laurent polynomials in `(q, t)` with half-integer exponents, and
//! unreduced rational functions built on top of them.
//!
//! Exponents are stored in half-units: the stored integer is twice the
//! mathematical exponent, so `t^{1/2}` has stored exponent `1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coefficient type. All arithmetic is checked and panics on overflow.
pub type Coeff = i128;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("substitution produced a non half-integral exponent at term q^({q}/2) t^({t}/2)")]
    FractionalExponent { q: i64, t: i64 },
    #[error("division by zero")]
    DivisionByZero,
}

fn add_c(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("coefficient overflow in addition")
}

fn mul_c(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("coefficient overflow in multiplication")
}

/// Exact bivariate Laurent polynomial. Keys are `(q_half, t_half)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), Coeff>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial_half(c, 0, 0)
    }

    /// `c * q^{qh/2} * t^{th/2}`.
    pub fn monomial_half(c: Coeff, qh: i64, th: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((qh, th), c);
        }
        Self { terms }
    }

    /// `c * q^a * t^b` with whole exponents.
    pub fn monomial(c: Coeff, a: i64, b: i64) -> Self {
        Self::monomial_half(c, 2 * a, 2 * b)
    }

    /// `q^a`.
    pub fn q(a: i64) -> Self {
        Self::monomial(1, a, 0)
    }

    /// `t^b`.
    pub fn t(b: i64) -> Self {
        Self::monomial(1, 0, b)
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Coeff)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in it {
            p.add_term(a, b, c);
        }
        p
    }

    fn add_term(&mut self, a: i64, b: i64, c: Coeff) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert(0);
        *e = add_c(*e, c);
        if *e == 0 {
            self.terms.remove(&(a, b));
        }
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

    /// Terms in ascending lexicographic order of `(q_half, t_half)`.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), Coeff)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn coeff_half(&self, qh: i64, th: i64) -> Coeff {
        self.terms.get(&(qh, th)).copied().unwrap_or(0)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<((i64, i64), Coeff)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, *v))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Coeff> {
        if self.is_zero() {
            Some(0)
        } else if self.is_constant() {
            Some(self.coeff_half(0, 0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, mul_c(*v, c))).collect(),
        }
    }

    /// Multiply by `q^{qh/2} t^{th/2}`.
    pub fn shift_half(&self, qh: i64, th: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &v)| ((a + qh, b + th), v))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divide every coefficient by `d`, which must divide all of them.
    pub fn div_coeffs(&self, d: Coeff) -> Option<Self> {
        if d == 0 {
            return None;
        }
        let mut out = BTreeMap::new();
        for (&k, &v) in &self.terms {
            if v % d != 0 {
                return None;
            }
            out.insert(k, v / d);
        }
        Some(Self { terms: out })
    }

    pub fn content(&self) -> Coeff {
        self.terms.values().fold(0, |g, &v| g.gcd(&v))
    }

    /// Minimal q and t exponents (half-units).
    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let qmin = self.terms.keys().map(|k| k.0).min()?;
        let tmin = self.terms.keys().map(|k| k.1).min()?;
        Some((qmin, tmin))
    }

    pub fn max_exponents(&self) -> Option<(i64, i64)> {
        let qmax = self.terms.keys().map(|k| k.0).max()?;
        let tmax = self.terms.keys().map(|k| k.1).max()?;
        Some((qmax, tmax))
    }

    /// Exact quotient `self / d` if it exists in the Laurent ring over Z.
    pub fn div_exact(&self, d: &LaurentPoly2) -> Option<LaurentPoly2> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (pq0, pt0) = self.min_exponents().unwrap();
        let (pq1, pt1) = self.max_exponents().unwrap();
        let (dq0, dt0) = d.min_exponents().unwrap();
        let (dq1, dt1) = d.max_exponents().unwrap();
        // Exponent box that any quotient term must lie in.
        let (qlo, qhi) = (pq0 - dq0, pq1 - dq1);
        let (tlo, thi) = (pt0 - dt0, pt1 - dt1);
        if qlo > qhi || tlo > thi {
            return None;
        }
        let ((lq, lt), lc) = d.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(((rq, rt), rc)) = rem.leading_term() {
            let (mq, mt) = (rq - lq, rt - lt);
            if mq < qlo || mq > qhi || mt < tlo || mt > thi || rc % lc != 0 {
                return None;
            }
            let c = rc / lc;
            quo.add_term(mq, mt, c);
            for (&(a, b), &v) in &d.terms {
                rem.add_term(a + mq, b + mt, -mul_c(v, c));
            }
        }
        Some(quo)
    }

    /// Homomorphic substitution of signed monomials for `q` and `t`.
    pub fn substitute(&self, q_img: SignedMono, t_img: SignedMono) -> Result<Self, LaurentError> {
        let mut out = Self::zero();
        for (&(a, b), &c) in &self.terms {
            // q^{a/2} -> s^{a/2} q^{a*qq/4} t^{a*qt/4}, same for t.
            let nq = a * q_img.q_half + b * t_img.q_half;
            let nt = a * q_img.t_half + b * t_img.t_half;
            if nq % 2 != 0 || nt % 2 != 0 {
                return Err(LaurentError::FractionalExponent { q: a, t: b });
            }
            let mut sign: Coeff = 1;
            for (e, img) in [(a, q_img), (b, t_img)] {
                if img.sign < 0 {
                    if e % 2 != 0 {
                        return Err(LaurentError::FractionalExponent { q: a, t: b });
                    }
                    if (e / 2) % 2 != 0 {
                        sign = -sign;
                    }
                }
            }
            out.add_term(nq / 2, nt / 2, mul_c(sign, c));
        }
        Ok(out)
    }

    /// `(q, t) -> (q^{-1}, t^{-1})`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), &v)| ((-a, -b), v)).collect(),
        }
    }

    /// `(q, t) -> (-q, q^2)`.
    pub fn specialize(&self) -> Result<Self, LaurentError> {
        self.substitute(SignedMono::new(-1, 2, 0), SignedMono::new(1, 4, 0))
    }

    /// Sum of all coefficients.
    pub fn coeff_sum(&self) -> Coeff {
        self.terms.values().fold(0, |s, &v| add_c(s, v))
    }
}

/// `sign * q^{q_half/2} * t^{t_half/2}`, an image for [`LaurentPoly2::substitute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedMono {
    pub sign: i8,
    pub q_half: i64,
    pub t_half: i64,
}

impl SignedMono {
    pub fn new(sign: i8, q_half: i64, t_half: i64) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        Self { sign, q_half, t_half }
    }

    pub fn q() -> Self {
        Self::new(1, 2, 0)
    }

    pub fn t() -> Self {
        Self::new(1, 0, 2)
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, var: char, h: i64) -> fmt::Result {
    match h {
        0 => Ok(()),
        2 => write!(f, "{var}"),
        _ if h % 2 == 0 => write!(f, "{var}^{}", h / 2),
        _ => write!(f, "{var}^({}/2)", h),
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, b), &c)) in self.terms.iter().enumerate() {
            let mono = a != 0 || b != 0;
            if i > 0 {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let ac = c.abs();
            if ac != 1 || !mono {
                write!(f, "{ac}")?;
                if mono {
                    write!(f, "*")?;
                }
            }
            fmt_exp(f, 'q', a)?;
            if a != 0 && b != 0 {
                write!(f, "*")?;
            }
            fmt_exp(f, 't', b)?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, i64, Coeff)> = self.terms.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(i64, i64, Coeff)> = Vec::deserialize(d)?;
        Ok(Self::from_terms(v.into_iter().map(|(a, b, c)| ((a, b), c))))
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (&(a, b), &c) in &self.terms {
            for (&(x, y), &d) in &rhs.terms {
                out.add_term(a + x, b + y, mul_c(c, d));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        self.scale(-1)
    }
}

impl AddAssign<&LaurentPoly2> for LaurentPoly2 {
    fn add_assign(&mut self, rhs: &LaurentPoly2) {
        for (&(a, b), &c) in &rhs.terms {
            self.add_term(a, b, c);
        }
    }
}

impl SubAssign<&LaurentPoly2> for LaurentPoly2 {
    fn sub_assign(&mut self, rhs: &LaurentPoly2) {
        for (&(a, b), &c) in &rhs.terms {
            self.add_term(a, b, -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add, LaurentPoly2);
forward_owned!(Sub, sub, LaurentPoly2);
forward_owned!(Mul, mul, LaurentPoly2);

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        self.scale(-1)
    }
}

impl AddAssign for LaurentPoly2 {
    fn add_assign(&mut self, rhs: LaurentPoly2) {
        *self += &rhs;
    }
}

impl SubAssign for LaurentPoly2 {
    fn sub_assign(&mut self, rhs: LaurentPoly2) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for LaurentPoly2 {
    fn sum<I: Iterator<Item = LaurentPoly2>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

impl From<Coeff> for LaurentPoly2 {
    fn from(c: Coeff) -> Self {
        Self::constant(c)
    }
}

pub fn lp_add(a: &LaurentPoly2, b: &LaurentPoly2) -> LaurentPoly2 {
    a + b
}

pub fn lp_mul(a: &LaurentPoly2, b: &LaurentPoly2) -> LaurentPoly2 {
    a * b
}

pub fn lp_substitute(
    p: &LaurentPoly2,
    q_image: SignedMono,
    t_image: SignedMono,
) -> Result<LaurentPoly2, LaurentError> {
    p.substitute(q_image, t_image)
}

/// Unreduced fraction of Laurent polynomials.
///
/// Normal form: joint integer content 1, denominator shifted so its minimal
/// q and t exponents are 0, positive lex-leading coefficient in the
/// denominator. No polynomial gcd is taken.
#[derive(Clone, Serialize, Deserialize)]
pub struct RationalFn {
    num: LaurentPoly2,
    den: LaurentPoly2,
}

impl RationalFn {
    pub fn new(num: LaurentPoly2, den: LaurentPoly2) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly2, den: LaurentPoly2) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: LaurentPoly2::one(),
            };
        }
        let g = num.content().gcd(&den.content());
        let ((_, _), lc) = den.leading_term().unwrap();
        let g = if lc < 0 { -g } else { g };
        let (dq, dt) = den.min_exponents().unwrap();
        let num = num.div_coeffs(g).unwrap().shift_half(-dq, -dt);
        let den = den.div_coeffs(g).unwrap().shift_half(-dq, -dt);
        Self { num, den }
    }

    pub fn from_poly(p: LaurentPoly2) -> Self {
        Self::normalized(p, LaurentPoly2::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly2::one())
    }

    pub fn num(&self) -> &LaurentPoly2 {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact polynomial value, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<LaurentPoly2> {
        self.num.div_exact(&self.den)
    }

    /// Replace by the exact polynomial quotient when one exists.
    pub fn simplify(self) -> Self {
        match self.to_poly() {
            Some(p) => Self::from_poly(p),
            None => self,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(&self.num + &o.num, self.den.clone());
        }
        if let Some(f) = o.den.div_exact(&self.den) {
            return Self::normalized(&(&self.num * &f) + &o.num, o.den.clone());
        }
        if let Some(f) = self.den.div_exact(&o.den) {
            return Self::normalized(&self.num + &(&o.num * &f), self.den.clone());
        }
        Self::normalized(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn mul_poly(&self, p: &LaurentPoly2) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, LaurentError> {
        if o.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn substitute(&self, q_img: SignedMono, t_img: SignedMono) -> Result<Self, LaurentError> {
        Self::new(
            self.num.substitute(q_img, t_img)?,
            self.den.substitute(q_img, t_img)?,
        )
    }

    pub fn specialize(&self) -> Result<Self, LaurentError> {
        self.substitute(SignedMono::new(-1, 2, 0), SignedMono::new(1, 4, 0))
    }

    pub fn bar(&self) -> Self {
        Self::normalized(self.num.bar(), self.den.bar())
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, o: &Self) -> bool {
        frac_eq(self, o)
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly2::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<LaurentPoly2> for RationalFn {
    fn from(p: LaurentPoly2) -> Self {
        Self::from_poly(p)
    }
}

/// Equality by cross-multiplication.
pub fn frac_eq(x: &RationalFn, y: &RationalFn) -> bool {
    &x.num * &y.den == &y.num * &x.den
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FracOp {
    Add,
    Mul,
    Div,
}

pub fn frac_arith(op: FracOp, x: &RationalFn, y: &RationalFn) -> Result<RationalFn, LaurentError> {
    match op {
        FracOp::Add => Ok(x.add(y)),
        FracOp::Mul => Ok(x.mul(y)),
        FracOp::Div => x.div(y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly2 {
        LaurentPoly2::q(1)
    }
    fn t() -> LaurentPoly2 {
        LaurentPoly2::t(1)
    }
    fn one() -> LaurentPoly2 {
        LaurentPoly2::one()
    }

    #[test]
    fn add_cancels_and_identity() {
        assert_eq!(&(&q() + &t()) + &(-&t()), q());
        assert_eq!(&LaurentPoly2::zero() + &q(), q());
        let p = &one() + &q();
        assert_eq!(&p + &p, &LaurentPoly2::constant(2) + &q().scale(2));
    }

    #[test]
    fn mul_basics() {
        assert_eq!((&one() - &t()) * (&one() + &t()), &one() - &t().pow(2));
        assert_eq!(LaurentPoly2::q(-1) * q(), one());
        let p = &one() + &LaurentPoly2::monomial_half(1, 2, 1);
        let expect = LaurentPoly2::from_terms([((0, 0), 1), ((2, 1), 2), ((4, 2), 1)]);
        assert_eq!(p.pow(2), expect);
    }

    #[test]
    fn substitution_examples() {
        let half = LaurentPoly2::monomial_half(1, 0, 1);
        let r = half.substitute(SignedMono::q(), SignedMono::new(1, 4, 0)).unwrap();
        assert_eq!(r, q());
        // f_1 for r=1 is -(1+q); the bar map gives -(1+q^{-1}).
        let f1 = -(&one() + &q());
        assert_eq!(f1.bar(), -(&one() + &LaurentPoly2::q(-1)));
        assert_eq!((&q() + &t()).specialize().unwrap(), &LaurentPoly2::q(2) - &q());
    }

    #[test]
    fn fractional_exponent_is_reported() {
        let half = LaurentPoly2::monomial_half(1, 0, 1);
        let err = half.substitute(SignedMono::q(), SignedMono::new(1, 1, 0));
        assert!(matches!(err, Err(LaurentError::FractionalExponent { .. })));
        let qh = LaurentPoly2::monomial_half(1, 1, 0);
        assert!(qh.specialize().is_err());
    }

    #[test]
    fn frac_eq_examples() {
        let a = RationalFn::new(&one() - &t().pow(2), &one() - &t()).unwrap();
        assert!(frac_eq(&a, &RationalFn::from_poly(&one() + &t())));
        let b = RationalFn::new(q(), t()).unwrap();
        let c = RationalFn::new(q().pow(2), &q() * &t()).unwrap();
        assert!(frac_eq(&b, &c));
        assert!(!frac_eq(
            &RationalFn::from_poly(&one() + &q()),
            &RationalFn::from_poly(&one() + &t())
        ));
    }

    #[test]
    fn frac_arith_examples() {
        let den = &one() - &t();
        let x = RationalFn::new(one(), den.clone()).unwrap();
        let y = RationalFn::new(-t(), den).unwrap();
        assert_eq!(frac_arith(FracOp::Add, &x, &y).unwrap(), RationalFn::one());
        let a = RationalFn::new(q(), t()).unwrap();
        let b = RationalFn::new(t(), q()).unwrap();
        assert_eq!(frac_arith(FracOp::Mul, &a, &b).unwrap(), RationalFn::one());
        let d = frac_arith(
            FracOp::Div,
            &RationalFn::one(),
            &RationalFn::from_poly(&one() - &q()),
        )
        .unwrap();
        assert_eq!(d, RationalFn::new(one(), &one() - &q()).unwrap());
        assert!(matches!(
            frac_arith(FracOp::Div, &RationalFn::one(), &RationalFn::zero()),
            Err(LaurentError::DivisionByZero)
        ));
    }

    #[test]
    fn normal_form_is_canonical() {
        let a = RationalFn::new(q().scale(-4), (&t() - &one()).scale(-2).shift_half(2, 2)).unwrap();
        assert_eq!(a.den(), &(&t() - &one()));
        assert_eq!(a.num(), &LaurentPoly2::monomial(2, 0, -1));
    }

    #[test]
    fn exact_division() {
        let a = &one() + &q();
        let b = &t().scale(3) - &LaurentPoly2::monomial_half(1, -3, 5);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
        assert_eq!((&p + &one()).div_exact(&b), None);
        assert_eq!(q().div_exact(&(&one() - &q())), None);
    }

    #[test]
    fn serde_round_trip() {
        let p = LaurentPoly2::from_terms([((-1, 3), -7), ((4, 0), 2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[-1,3,-7],[4,0,2]]");
        let back: LaurentPoly2 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
