//! Closed formulas for the graded multiplicities `P_W` and for the
//! specialised coefficients `C_μ` in types B and C.
//!
//! A [`BivariatePoly`] reuses the `(q, t)` slots of [`LaurentPoly2`] for
//! `(x, y)`: `x` is the harmonic degree and `y` the exterior degree.

use crate::laurent::{LaurentPoly2, RationalFn, SignedMono};
use crate::qcomb::{q_binomial, Bipartition, Partition};
use crate::rootsys::{c_odd_weight, Family, Weight};

pub type BivariatePoly = LaurentPoly2;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("product for {0} is not a polynomial")]
    NotAPolynomial(String),
    #[error("{what} out of range (k={k}, n={n})")]
    OutOfRange { what: &'static str, k: i64, n: i64 },
    #[error("{0} is not a small weight")]
    NotSmall(Weight),
}

fn out_of_range(what: &'static str, k: i64, n: i64) -> ClosedFormError {
    ClosedFormError::OutOfRange { what, k, n }
}

fn x(a: i64) -> LaurentPoly2 {
    LaurentPoly2::q(a)
}

fn y() -> LaurentPoly2 {
    LaurentPoly2::t(1)
}

fn one() -> LaurentPoly2 {
    LaurentPoly2::one()
}

/// `q^a` in the univariate specialised world.
fn q(a: i64) -> LaurentPoly2 {
    LaurentPoly2::q(a)
}

/// `q^a - 1`.
fn qm1(a: i64) -> LaurentPoly2 {
    &q(a) - &one()
}

/// `1 + q^a`.
fn qp1(a: i64) -> LaurentPoly2 {
    &one() + &q(a)
}

/// Evaluate a bivariate polynomial at `(x, y) = (q^2, q)`.
pub fn eval_q2_q(p: &BivariatePoly) -> LaurentPoly2 {
    p.substitute(SignedMono::new(1, 4, 0), SignedMono::new(1, 2, 0))
        .expect("integral substitution")
}

fn weyl_factor(n: u32) -> LaurentPoly2 {
    (1..=n as i64).fold(one(), |acc, i| &acc * &(&one() - &x(2 * i)))
}

fn hook_denominator(bp: &Bipartition) -> LaurentPoly2 {
    let mut den = one();
    for p in [&bp.alpha, &bp.beta] {
        for h in p.hooks() {
            den = &den * &(&one() - &x(2 * h as i64));
        }
    }
    den
}

/// `P_W(π_{α,β}; x, y)` from the rearranged hook formula.
pub fn pw_bipartition(bp: &Bipartition, n: u32) -> Result<BivariatePoly, ClosedFormError> {
    if bp.size() != n {
        return Err(out_of_range("bipartition size", bp.size() as i64, n as i64));
    }
    let mut num = weyl_factor(n);
    for (i, j) in bp.alpha.boxes() {
        let (i, j) = (i as i64, j as i64);
        num = &num * &(&x(2 * (i - 1)) + &(&y() * &x(2 * j - 1)));
    }
    for (i, j) in bp.beta.boxes() {
        let (i, j) = (i as i64, j as i64);
        num = &num * &(&x(2 * i - 1) + &(&y() * &x(2 * (j - 1))));
    }
    num.div_exact(&hook_denominator(bp))
        .ok_or_else(|| ClosedFormError::NotAPolynomial(bp.to_string()))
}

/// The same polynomial in its original content form, with the monomial
/// prefactor `x^{2n(α)+2n(β)+|β|}`.
pub fn pw_bipartition_content_form(bp: &Bipartition, n: u32) -> Result<BivariatePoly, ClosedFormError> {
    if bp.size() != n {
        return Err(out_of_range("bipartition size", bp.size() as i64, n as i64));
    }
    let lead = 2 * bp.alpha.n_stat() + 2 * bp.beta.n_stat() + bp.beta.size();
    let mut num = &weyl_factor(n) * &x(lead as i64);
    for c in bp.alpha.contents() {
        num = &num * &(&one() + &(&y() * &x(2 * c + 1)));
    }
    for c in bp.beta.contents() {
        num = &num * &(&one() + &(&y() * &x(2 * c - 1)));
    }
    num.div_exact(&hook_denominator(bp))
        .ok_or_else(|| ClosedFormError::NotAPolynomial(bp.to_string()))
}

/// `∏_{j=1}^{a} (1 + q^{4j-1})`; the trivial-isotypic series when `a = n`.
pub fn trivial_series(a: i64) -> LaurentPoly2 {
    (1..=a).fold(one(), |acc, j| &acc * &qp1(4 * j - 1))
}

fn qbin4(n: i64, k: i64) -> LaurentPoly2 {
    q_binomial(n, k, &q(4)).expect("q-binomial in range")
}

/// Zero-weight-space bipartitions of a small representation.
pub fn zero_weight_bipartitions(family: Family, n: usize, lambda: &Weight) -> Result<Vec<Bipartition>, ClosedFormError> {
    let nn = n as u32;
    match family {
        Family::B => {
            let m = (1..=n)
                .find(|&m| *lambda == Weight::fundamental(n, m))
                .ok_or_else(|| ClosedFormError::NotSmall(lambda.clone()))? as u32;
            let k = m / 2;
            Ok(vec![if m % 2 == 0 {
                Bipartition::new(&[nn - k], &[k])
            } else {
                Bipartition::new(&[k], &[nn - k])
            }])
        }
        Family::C => {
            for k in 1..=n / 2 {
                if *lambda == Weight::fundamental(n, 2 * k) {
                    let k = k as u32;
                    return Ok(vec![Bipartition::new(&[nn - k, k], &[])]);
                }
            }
            for k in 0..=(n - 1) / 2 {
                if *lambda == c_odd_weight(n, k) {
                    let k = k as u32;
                    if k == 0 {
                        return Ok(vec![Bipartition::new(&[nn - 1], &[1])]);
                    }
                    return Ok(vec![
                        Bipartition::new(&[nn - k - 1, k], &[1]),
                        Bipartition::new(&[nn - k - 1, k, 1], &[]),
                    ]);
                }
            }
            Err(ClosedFormError::NotSmall(lambda.clone()))
        }
    }
}

/// `P_W(V_λ^0; q^2, q)` summed over the zero-weight constituents.
pub fn pw_small_specialized(family: Family, n: usize, lambda: &Weight) -> Result<LaurentPoly2, ClosedFormError> {
    let mut total = LaurentPoly2::zero();
    for bp in zero_weight_bipartitions(family, n, lambda)? {
        total += eval_q2_q(&pw_bipartition(&bp, n as u32)?);
    }
    Ok(total)
}

/// Printed specialised `P_W` for `V_{ε_m}` in type B (`m < n`); for `m = n`
/// the bipartition formula of the tabulated pair is used.
pub fn pw_b_specialized(m: i64, n: i64) -> Result<LaurentPoly2, ClosedFormError> {
    if m < 1 || m > n {
        return Err(out_of_range("m", m, n));
    }
    if m == n {
        return pw_small_specialized(Family::B, n as usize, &Weight::fundamental(n as usize, m as usize));
    }
    Ok(b_product(m, n))
}

fn b_product(m: i64, n: i64) -> LaurentPoly2 {
    let k = m / 2;
    if m % 2 == 0 {
        &(&(&q(2 * k - 1) * &qp1(1)) * &qbin4(n, k)) * &(&trivial_series(n - k) * &trivial_series(k - 1))
    } else {
        &(&(&q(2 * (n - k) - 1) * &qp1(1)) * &qbin4(n, k)) * &(&trivial_series(k) * &trivial_series(n - k - 1))
    }
}

/// Specialised `C_{ε_m}` in type B; `m = 0` is the fixed normalisation.
pub fn cb_closed(m: i64, n: i64) -> Result<LaurentPoly2, ClosedFormError> {
    if m < 0 || m > n {
        return Err(out_of_range("m", m, n));
    }
    if m == 0 {
        return Ok(trivial_series(n));
    }
    Ok(b_product(m, n))
}

fn ratio(num: LaurentPoly2, den: LaurentPoly2) -> RationalFn {
    RationalFn::new(num, den).expect("nonzero denominator").simplify()
}

/// `𝐂_{k,n}` for `k >= 1`.
pub fn cc_closed(k: i64, n: i64) -> Result<RationalFn, ClosedFormError> {
    if k < 1 || 2 * k > n {
        return Err(out_of_range("cc_closed", k, n));
    }
    let num = &(&(&(&q(4 * k - 1) * &qp1(1)) * &qbin4(n, k)) * &qm1(4 * (n - 2 * k + 1)))
        * &(&trivial_series(n - k) * &trivial_series(k - 1));
    Ok(ratio(num, qm1(4 * (n - k + 1))))
}

/// `𝐂_{k,n}` with the `k = 0` member replaced by the trivial series.
pub fn c_even_specialized(k: i64, n: i64) -> Result<RationalFn, ClosedFormError> {
    if k == 0 && n >= 0 {
        return Ok(RationalFn::from_poly(trivial_series(n)));
    }
    cc_closed(k, n)
}

pub fn p_kn(k: i64, n: i64) -> BivariatePoly {
    let a = &(&(&x(1) + &y()) * &(&x(2 * (n - k + 1)) - &one())) * &(&x(2 * (k + 1)) - &one());
    let b = &(&(&x(4) + &(&y() * &x(1))) * &(&x(2 * (n - k)) - &one())) * &(&x(2 * k) - &one());
    &a + &b
}

/// `T_k^n`, the printed ratio `𝐂_{k+1,n} / 𝐂_{k,n}`.
pub fn t_ratio(k: i64, n: i64) -> Result<RationalFn, ClosedFormError> {
    if k < 1 || 2 * k + 2 > n {
        return Err(out_of_range("t_ratio", k, n));
    }
    let num = &(&(&q(4) * &qm1(4 * (n - k + 1))) * &qm1(4 * (n - 2 * k - 1))) * &qp1(4 * k - 1);
    let den = &(&qm1(4 * (k + 1)) * &qm1(4 * (n - 2 * k + 1))) * &qp1(4 * (n - k) - 1);
    Ok(RationalFn::new(num, den).expect("nonzero denominator"))
}

/// Which expression is used for `𝐂_{2|k,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cc2Route {
    /// Second displayed line, anchored on `𝐂_{k,n}`.
    Primary,
    /// First displayed line, anchored on `𝐂_{k+1,n}`; needs `2k+2 <= n`.
    FirstLine,
    /// Hook-product form over the two-row diagram `(n-k, k+1)`.
    HookProduct,
}

/// `𝐂_{2|k,n}` by the primary route.
pub fn cc2_closed(k: i64, n: i64) -> Result<RationalFn, ClosedFormError> {
    cc2_closed_via(Cc2Route::Primary, k, n)
}

pub fn cc2_closed_via(route: Cc2Route, k: i64, n: i64) -> Result<RationalFn, ClosedFormError> {
    if k < 0 || 2 * k + 1 > n {
        return Err(out_of_range("cc2_closed", k, n));
    }
    let pk = eval_q2_q(&p_kn(k, n));
    match route {
        Cc2Route::Primary => {
            let base = c_even_specialized(k, n)?;
            let num = &pk * &qm1(4 * (n - 2 * k));
            let den = &(&(&qp1(4 * (n - k) - 1) * &qm1(4)) * &qm1(4 * (n - 2 * k + 1))) * &qm1(4 * (k + 1));
            Ok(base.mul(&ratio(num, den)).simplify())
        }
        Cc2Route::FirstLine => {
            if 2 * k + 2 > n {
                return Err(out_of_range("cc2 first line", k, n));
            }
            let base = cc_closed(k + 1, n)?;
            let num = &pk * &qm1(4 * (n - 2 * k));
            let den = &(&(&(&q(4) * &qp1(4 * k - 1)) * &qm1(4)) * &qm1(4 * (n - 2 * k - 1))) * &qm1(4 * (n - k + 1));
            Ok(base.mul(&ratio(num, den)).simplify())
        }
        Cc2Route::HookProduct => {
            let mut num = trivial_series(n - k - 1);
            for i in 1..=k {
                num = &num * &(&q(4) + &q(4 * i - 1));
            }
            for i in 1..=n {
                num = &num * &(&one() - &q(4 * i));
            }
            num = &num * &pk;
            let diagram = Partition::from_slice(&[(n - k) as u32, (k + 1) as u32]);
            let mut den = &one() - &q(4);
            for h in diagram.hooks() {
                den = &den * &(&one() - &q(4 * h as i64));
            }
            Ok(ratio(num, den))
        }
    }
}
