//! Reduced Stembridge recurrences: the minuscule rows in type B, the
//! quasi-minuscule rows in type C, their triangular solution, and every
//! coefficient formula the reduction arguments use.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::closedforms::{self, ClosedFormError};
use crate::laurent::{Coeff, LaurentError, LaurentPoly2, RationalFn};
use crate::qcomb::binom;
use crate::rootsys::{
    build_root_system, build_root_system_any_rank, c_odd_weight, dominance_leq, orbit_with_reps, pair_orbit_qm,
    reduce, small_weights, stabilizer_orbit, Family, RootError, RootSystem, SignedPermutation, Weight,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum StembridgeError {
    #[error("the minuscule recurrence needs type B, got {0}")]
    NotMinusculePath(Family),
    #[error("the quasi-minuscule recurrence needs type C, got {0}")]
    NotQuasiMinusculePath(Family),
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("power must be (λ, θ^∨) = {expected}, got {got}")]
    PowerMismatch { expected: i64, got: i64 },
    #[error("row for {lambda} has key {mu} not below it")]
    NotTriangular { lambda: Weight, mu: Weight },
    #[error("leading coefficient of the row for {0} vanishes")]
    SingularLeadingCoefficient(Weight),
    #[error("C_{0} is needed before it has been solved")]
    MissingDependency(Weight),
    #[error("{identity} fails at {key}: {lhs} != {rhs}")]
    IdentityFailure {
        identity: String,
        key: String,
        lhs: String,
        rhs: String,
    },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

type Result<T> = std::result::Result<T, StembridgeError>;

fn out_of_range(what: &'static str, detail: String) -> StembridgeError {
    StembridgeError::OutOfRange { what, detail }
}

fn failure(identity: &str, key: impl fmt::Display, lhs: impl fmt::Display, rhs: impl fmt::Display) -> StembridgeError {
    StembridgeError::IdentityFailure {
        identity: identity.to_string(),
        key: key.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn expect_eq(identity: &str, key: impl fmt::Display, lhs: &LaurentPoly2, rhs: &LaurentPoly2) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(failure(identity, key, lhs, rhs))
    }
}

fn expect_frac_eq(identity: &str, key: impl fmt::Display, lhs: &RationalFn, rhs: &RationalFn) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(failure(identity, key, lhs, rhs))
    }
}

/// `(-1)^e` for any integer `e`.
fn sgn(e: i64) -> Coeff {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn zero() -> LaurentPoly2 {
    LaurentPoly2::zero()
}

fn one() -> LaurentPoly2 {
    LaurentPoly2::one()
}

fn q(a: i64) -> LaurentPoly2 {
    LaurentPoly2::q(a)
}

fn t(b: i64) -> LaurentPoly2 {
    LaurentPoly2::t(b)
}

fn qt(a: i64, b: i64) -> LaurentPoly2 {
    LaurentPoly2::monomial(1, a, b)
}

/// Serialise weight-keyed maps as lists of pairs, since JSON object keys
/// must be strings.
mod weight_map {
    use super::*;

    pub fn serialize<S: Serializer, V: Serialize>(m: &BTreeMap<Weight, V>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>, V: Deserialize<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<Weight, V>, D::Error> {
        let v: Vec<(Weight, V)> = Vec::deserialize(d)?;
        Ok(v.into_iter().collect())
    }
}

/// One reduced recurrence `Σ_{μ ≤ λ} Γ_μ C_μ = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceRow {
    pub lambda: Weight,
    #[serde(with = "weight_map")]
    pub coeffs: BTreeMap<Weight, LaurentPoly2>,
}

impl RecurrenceRow {
    fn collect(lambda: &Weight, acc: BTreeMap<Weight, LaurentPoly2>, rs: &RootSystem) -> Result<Self> {
        let coeffs: BTreeMap<Weight, LaurentPoly2> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for mu in coeffs.keys() {
            if !dominance_leq(mu, lambda, rs)? {
                return Err(StembridgeError::NotTriangular {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                });
            }
        }
        if !coeffs.contains_key(lambda) {
            return Err(StembridgeError::SingularLeadingCoefficient(lambda.clone()));
        }
        Ok(Self {
            lambda: lambda.clone(),
            coeffs,
        })
    }

    pub fn leading(&self) -> LaurentPoly2 {
        self.get(&self.lambda)
    }

    pub fn get(&self, mu: &Weight) -> LaurentPoly2 {
        self.coeffs.get(mu).cloned().unwrap_or_default()
    }

    /// `(q, t) -> (-q, q^2)` applied coefficientwise.
    pub fn specialize(&self) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (mu, c) in &self.coeffs {
            let s = c.specialize()?;
            if !s.is_zero() {
                coeffs.insert(mu.clone(), s);
            }
        }
        Ok(Self {
            lambda: self.lambda.clone(),
            coeffs,
        })
    }

    /// Divide every coefficient by an integer that must divide it exactly.
    pub fn div_exact_by(&self, d: Coeff) -> Option<Self> {
        let mut coeffs = BTreeMap::new();
        for (mu, c) in &self.coeffs {
            coeffs.insert(mu.clone(), c.div_coeffs(d)?);
        }
        Some(Self {
            lambda: self.lambda.clone(),
            coeffs,
        })
    }

    /// `Σ Γ_μ C_μ` for the given values.
    pub fn evaluate(&self, values: &BTreeMap<Weight, RationalFn>) -> Result<RationalFn> {
        let mut s = RationalFn::zero();
        for (mu, g) in &self.coeffs {
            let c = values.get(mu).ok_or_else(|| StembridgeError::MissingDependency(mu.clone()))?;
            s = s.add(&c.mul_poly(g));
        }
        Ok(s)
    }
}

/// Solved family `C_μ`, with `C_0` fixed to `base`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CTable {
    pub base: RationalFn,
    #[serde(with = "weight_map")]
    pub entries: BTreeMap<Weight, RationalFn>,
}

impl CTable {
    pub fn get(&self, mu: &Weight) -> Option<&RationalFn> {
        self.entries.get(mu)
    }
}

/// The coefficients `f_0 … f_{r+1}` of `(1-tz)(1-qtz) Σ_{j<r} (t^2 z)^j`,
/// divided by `t^r`.
pub fn f_row(r: i64) -> Result<Vec<LaurentPoly2>> {
    if r < 1 {
        return Err(out_of_range("f_row", format!("r={r}")));
    }
    Ok((0..=r + 1).map(|i| f_value(i, r)).collect())
}

fn f_value(i: i64, r: i64) -> LaurentPoly2 {
    let mut f = zero();
    if i <= r - 1 {
        f += t(2 * i - r);
    }
    if 1 <= i && i <= r {
        f -= &(&one() + &q(1)) * &t(2 * i - 1 - r);
    }
    if 2 <= i && i <= r + 1 {
        f += qt(1, 2 * i - 2 - r);
    }
    f
}

/// `F_i = f_i(q,t) - q^p f_i(q^{-1},t^{-1})`, zero outside `0 <= i <= r+1`.
pub fn fij(i: i64, r: i64, power: i64) -> LaurentPoly2 {
    if r < 1 || i < 0 || i > r + 1 {
        return zero();
    }
    let f = f_value(i, r);
    &f - &(&q(power) * &f.bar())
}

/// `F_i^{j,n}` for the weight `ω_{2k}` (power 1).
pub fn f1(i: i64, j: i64, n: i64) -> LaurentPoly2 {
    fij(i, n - j + 1, 1)
}

/// `F_i^{j,n}` for the weight `ω_1 + ω_{2k+1}` (power 2).
pub fn f2(i: i64, j: i64, n: i64) -> LaurentPoly2 {
    fij(i, n - j + 1, 2)
}

/// `Ψ_i^{j,n} = F_i^{j,n} - F_{B(i,j)}^{j,n}` with `B(i,j) = n-i-j+3`.
pub fn psi_ij(i: i64, j: i64, n: i64) -> LaurentPoly2 {
    &f2(i, j, n) - &f2(n - i - j + 3, j, n)
}

pub fn minuscule_row(lambda: &Weight, rs: &RootSystem) -> Result<RecurrenceRow> {
    let reps = orbit_with_reps(lambda, rs);
    minuscule_row_with_reps(lambda, rs, &reps)
}

/// Same as [`minuscule_row`] with caller-chosen coset representatives.
pub fn minuscule_row_with_reps(
    lambda: &Weight,
    rs: &RootSystem,
    reps: &BTreeMap<Weight, SignedPermutation>,
) -> Result<RecurrenceRow> {
    if rs.family != Family::B {
        return Err(StembridgeError::NotMinusculePath(rs.family));
    }
    let n = rs.rank;
    let psis = stabilizer_orbit(lambda, &Weight::unit(n, 1), rs);
    // (λ, e_1) in half-units
    let p_half = lambda.coords[0];
    let mut acc: BTreeMap<Weight, LaurentPoly2> = BTreeMap::new();
    for (mu, w) in reps {
        let red = reduce(mu, rs);
        let Some(dom) = red.dominant else { continue };
        let mut c = zero();
        for psi in &psis {
            // (ρ, wψ) in half-units
            let x = rs.rho.dot_half(&w.apply(psi)) / 2;
            c += LaurentPoly2::monomial_half(1, 0, -x);
            c -= LaurentPoly2::monomial_half(1, p_half, x);
        }
        *acc.entry(dom).or_default() += c.scale(red.sign as Coeff);
    }
    RecurrenceRow::collect(lambda, acc, rs)
}

pub fn qm_row(lambda: &Weight, rs: &RootSystem, power: i64) -> Result<RecurrenceRow> {
    if rs.family != Family::C {
        return Err(StembridgeError::NotQuasiMinusculePath(rs.family));
    }
    let expected = lambda.dot_half(&rs.theta_check) / 4;
    if power != expected || !(1..=2).contains(&power) {
        return Err(StembridgeError::PowerMismatch { expected, got: power });
    }
    let n = rs.rank;
    let mut acc: BTreeMap<Weight, LaurentPoly2> = BTreeMap::new();
    for (mu, beta) in pair_orbit_qm(lambda, rs) {
        let j = beta.coords.iter().position(|&c| c != 0).expect("nonzero root");
        let r = (n - j) as i64;
        for i in 0..=r + 1 {
            let mut nu = mu.clone();
            nu.coords[j] -= 4 * i;
            let red = reduce(&nu, rs);
            let Some(dom) = red.dominant else { continue };
            *acc.entry(dom).or_default() += fij(i, r, power).scale(red.sign as Coeff);
        }
    }
    RecurrenceRow::collect(lambda, acc, rs)
}

/// The row of a small weight, by whichever recurrence its family uses.
pub fn small_row(lambda: &Weight, rs: &RootSystem) -> Result<RecurrenceRow> {
    match rs.family {
        Family::B => minuscule_row(lambda, rs),
        Family::C => qm_row(lambda, rs, lambda.dot_half(&rs.theta_check) / 4),
    }
}

/// Unspecialised rows for every small weight, in solving order.
pub fn chain_rows(family: Family, n: usize) -> Result<Vec<RecurrenceRow>> {
    let rs = build_root_system(family, n)?;
    small_weights(&rs).iter().map(|lam| small_row(lam, &rs)).collect()
}

pub fn solve_chain(n: usize, rows: &[RecurrenceRow], base: RationalFn) -> Result<CTable> {
    let mut entries = BTreeMap::new();
    entries.insert(Weight::zero(n), base.clone());
    for row in rows {
        let lead = row.leading();
        if lead.is_zero() {
            return Err(StembridgeError::SingularLeadingCoefficient(row.lambda.clone()));
        }
        let mut s = RationalFn::zero();
        for (mu, g) in &row.coeffs {
            if *mu == row.lambda {
                continue;
            }
            let c = entries.get(mu).ok_or_else(|| StembridgeError::MissingDependency(mu.clone()))?;
            s = s.add(&c.mul_poly(g));
        }
        let value = s.neg().div(&RationalFn::from_poly(lead))?.simplify();
        entries.insert(row.lambda.clone(), value);
        let check = row.evaluate(&entries)?;
        if !check.is_zero() {
            return Err(failure("solved row", &row.lambda, check, 0));
        }
    }
    Ok(CTable { base, entries })
}

/// Specialised chain with `C_0 = ∏(1+q^{4j-1})`.
pub fn specialized_table(family: Family, n: usize) -> Result<CTable> {
    let rows = chain_rows(family, n)?
        .iter()
        .map(|r| r.specialize())
        .collect::<Result<Vec<_>>>()?;
    let base = RationalFn::from_poly(closedforms::trivial_series(n as i64));
    solve_chain(n, &rows, base)
}

/// Index `m` of `ε_m = e_1 + ⋯ + e_m` (or of `ω_{2m}`-style keys by size).
fn half_size(w: &Weight) -> i64 {
    w.coords.iter().sum::<i64>() / 2
}

/// Keys of type-C rows: `ω_{2h}` or `ω_1 + ω_{2h+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CKey {
    Even(i64),
    Odd(i64),
}

impl fmt::Display for CKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CKey::Even(h) => write!(f, "C_{h}"),
            CKey::Odd(h) => write!(f, "C_2|{h}"),
        }
    }
}

pub fn c_key(w: &Weight) -> CKey {
    let s = half_size(w);
    if w.coords.first() == Some(&4) {
        CKey::Odd(s / 2 - 1)
    } else {
        CKey::Even(s / 2)
    }
}

pub fn c_weight(n: usize, key: CKey) -> Weight {
    match key {
        CKey::Even(h) => Weight::fundamental(n, 2 * h as usize),
        CKey::Odd(h) => c_odd_weight(n, h as usize),
    }
}

fn c_keyed(row: &RecurrenceRow) -> BTreeMap<CKey, LaurentPoly2> {
    row.coeffs.iter().map(|(w, c)| (c_key(w), c.clone())).collect()
}

fn b_keyed(row: &RecurrenceRow) -> BTreeMap<i64, LaurentPoly2> {
    row.coeffs.iter().map(|(w, c)| (half_size(w), c.clone())).collect()
}

// ---------------------------------------------------------------------
// Type B coefficients, specialised (univariate in q)

/// `Σ_{i<m} q^{2i}`.
fn geometric2(m: i64) -> LaurentPoly2 {
    (0..m).map(|i| q(2 * i)).sum()
}

fn c_m(m: i64, n: i64) -> LaurentPoly2 {
    &(&geometric2(m) * &q(1 - 2 * n)) * &(&one() + &q(4 * n - 2 * m + 1))
}

fn b_m(m: i64) -> LaurentPoly2 {
    &(&(&q(1) + &one()) * &q(2 - 2 * m)) * &geometric2(2 * m - 1)
}

fn psi6(n: i64) -> LaurentPoly2 {
    &(&q(1) + &one()) * &(&q(2 * n - 2) + &q(2 - 2 * n))
}

/// Subsets `j_1 < ⋯ < j_r` of `{lo..=hi}` with gaps of at least 2.
fn nonadjacent_subsets(lo: i64, hi: i64, r: i64) -> Vec<Vec<i64>> {
    fn rec(start: i64, hi: i64, r: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if r == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..=hi {
            cur.push(j);
            rec(j + 2, hi, r - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 0 {
        rec(lo, hi, r, &mut Vec::new(), &mut out);
    }
    out
}

fn gamma_hkr(h: i64, k: i64, r: i64) -> LaurentPoly2 {
    let mut s = zero();
    for js in nonadjacent_subsets(h + 1, k, r) {
        for j in js {
            s += &q(2 * (j - 1)) + &q(-2 * (j - 1));
        }
    }
    &(&q(1) + &one()) * &s
}

fn gamma_i_unsigned(i: i64, k: i64, n: i64) -> LaurentPoly2 {
    let d = k - i;
    let s = d / 2;
    if d % 2 == 0 {
        &c_m(i, n).scale(binom(n - i - s, s) as Coeff) + &gamma_hkr(1, n - i, s)
    } else {
        &(&c_m(i, n) + &b_m(1)).scale(binom(n - i - s - 1, s) as Coeff) + &gamma_hkr(2, n - i, s)
    }
}

fn gamma0_b(k: i64, n: i64) -> LaurentPoly2 {
    let s = k / 2;
    if k % 2 == 0 {
        gamma_hkr(1, n, s).scale(sgn(s))
    } else {
        (&b_m(1).scale(binom(n - s - 1, s) as Coeff) + &gamma_hkr(2, n, s)).scale(sgn(s + 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BSelector {
    /// `c_m`, the leading coefficient of the row for `ε_m`.
    C { m: i64, n: i64 },
    /// `b_m`.
    B { m: i64 },
    /// `Γ(h, k; r)`.
    GammaHkr { h: i64, k: i64, r: i64 },
    /// Coefficient of `C_0` in the row for `ε_k`.
    Gamma0 { k: i64, n: i64 },
    /// Unsigned coefficient of `C_i` in the row for `ε_k`.
    GammaI { i: i64, k: i64, n: i64 },
    /// `(q+1)(q^{2n-2} + q^{2-2n})`.
    Psi6 { n: i64 },
}

pub fn b_coefficients(sel: BSelector) -> Result<LaurentPoly2> {
    let bad = |what| Err(out_of_range(what, format!("{sel:?}")));
    match sel {
        BSelector::C { m, n } if 0 <= m && m <= n => Ok(c_m(m, n)),
        BSelector::B { m } if m >= 1 => Ok(b_m(m)),
        BSelector::GammaHkr { h, k, r } if h >= 0 && r >= 0 => Ok(gamma_hkr(h, k, r)),
        BSelector::Gamma0 { k, n } if 1 <= k && k <= n => Ok(gamma0_b(k, n)),
        BSelector::GammaI { i, k, n } if 0 <= i && i <= k && k <= n => Ok(gamma_i_unsigned(i, k, n)),
        BSelector::Psi6 { n } if n >= 1 => Ok(psi6(n)),
        _ => bad("b_coefficients"),
    }
}

/// The rewritten specialised row for `ε_m`, as printed, keyed by index.
pub fn rewritten_b_row(m: i64, n: i64) -> BTreeMap<i64, LaurentPoly2> {
    let mut e: BTreeMap<i64, LaurentPoly2> = BTreeMap::new();
    e.insert(m, c_m(m, n));
    if m >= 1 {
        for i in 0..=(m - 1) / 2 {
            let v = &(&c_m(m - 2 * i - 1, n) + &b_m(1)).scale(binom(n - m + i, i) as Coeff)
                + &gamma_hkr(2, n - m + 2 * i + 1, i);
            *e.entry(m - 2 * i - 1).or_default() -= v.scale(sgn(i));
        }
    }
    for i in 1..=m / 2 {
        let v = &c_m(m - 2 * i, n).scale(binom(n - m + i, i) as Coeff) + &gamma_hkr(1, n - m + 2 * i, i);
        *e.entry(m - 2 * i).or_default() -= v.scale(sgn(i - 1));
    }
    e.retain(|_, v| !v.is_zero());
    e
}

/// The short recursion `c_m C_m = Σ b_i C_{m-2i+1} + Σ b_{n-m+i+1} C_{m-2i}`,
/// written as a row.
pub fn b_recurrence_row(m: i64, n: i64) -> BTreeMap<i64, LaurentPoly2> {
    let mut e: BTreeMap<i64, LaurentPoly2> = BTreeMap::new();
    e.insert(m, c_m(m, n));
    for i in 1..=(m + 1) / 2 {
        *e.entry(m - 2 * i + 1).or_default() -= b_m(i);
    }
    for i in 1..=m / 2 {
        *e.entry(m - 2 * i).or_default() -= b_m(n - m + i + 1);
    }
    e
}

/// Specialised minuscule row for `ε_m`, keyed by index.
pub fn collected_b_row(m: i64, n: i64) -> Result<BTreeMap<i64, LaurentPoly2>> {
    let rs = build_root_system(Family::B, n as usize)?;
    let row = minuscule_row(&Weight::fundamental(n as usize, m as usize), &rs)?.specialize()?;
    Ok(b_keyed(&row))
}

/// Reduce `collected − b_recurrence_row(m)` by integer multiples of lower recurrence rows.
/// Returns the multipliers for `j = m-1, …, 1`.
pub fn b_recurrence_elimination(collected: &BTreeMap<i64, LaurentPoly2>, m: i64, n: i64) -> Result<Vec<Coeff>> {
    let mut d: BTreeMap<i64, LaurentPoly2> = collected.clone();
    for (h, v) in b_recurrence_row(m, n) {
        *d.entry(h).or_default() -= v;
    }
    let mut mults = Vec::new();
    for j in (1..m).rev() {
        let dj = d.get(&j).cloned().unwrap_or_default();
        let f = dj
            .div_exact(&c_m(j, n))
            .and_then(|f| f.as_constant().or(f.is_zero().then_some(0)))
            .ok_or_else(|| failure("recurrence elimination", format!("C_{j}"), &dj, "integer multiple of c_j"))?;
        for (h, v) in b_recurrence_row(j, n) {
            *d.entry(h).or_default() -= v.scale(f);
        }
        mults.push(f);
    }
    for (h, v) in &d {
        if !v.is_zero() {
            return Err(failure("recurrence elimination", format!("C_{h}"), v, 0));
        }
    }
    Ok(mults)
}

/// `γ^p(n, m, h)` for `m - h = 2s`.
pub fn gamma_p(n: i64, m: i64, h: i64) -> LaurentPoly2 {
    let s = (m - h) / 2;
    let mut v = gamma_hkr(1, n - h, s).scale(sgn(s - 1));
    for i in 0..s {
        v += b_m(s - i).scale(sgn(i) * binom(n - m + i, i) as Coeff);
    }
    for i in 1..s {
        v += b_m(n - h - s + i + 1).scale(sgn(i - 1) * binom(n - m + i, i) as Coeff);
    }
    v
}

/// `γ^d(n, m, h)` for `m - h = 2s + 1`.
pub fn gamma_d(n: i64, m: i64, h: i64) -> LaurentPoly2 {
    let s = (m - h - 1) / 2;
    let mut v = (&b_m(1).scale(binom(n - m + s, s) as Coeff) + &gamma_hkr(2, n - h, s)).scale(sgn(s));
    for i in 0..s {
        v += b_m(n - h - s + i + 1).scale(sgn(i) * binom(n - m + i, i) as Coeff);
    }
    for i in 1..=s {
        v += b_m(s - i + 1).scale(sgn(i - 1) * binom(n - m + i, i) as Coeff);
    }
    v
}

// ---------------------------------------------------------------------
// Type C coefficients, unspecialised

fn t_minus_1() -> LaurentPoly2 {
    &t(1) - &one()
}

/// `num / (t^shift (t-1))`, which must be exact.
fn over_t1(num: LaurentPoly2, shift: i64) -> LaurentPoly2 {
    num.div_exact(&t_minus_1())
        .expect("exact division by t-1")
        .shift_half(0, -2 * shift)
}

pub fn lambda_kk(k: i64, n: i64) -> LaurentPoly2 {
    let num = &(&t(2 * k - 1) - &qt(1, 2 * n)) * &(&t(2 * k) - &one());
    over_t1(num, n + 2 * k - 1)
}

pub fn lambda0_1n(n: i64) -> LaurentPoly2 {
    let num = &(&t(1) - &q(1)) * &(&t(2 * n - 2) - &one());
    -over_t1(num, n - 1)
}

pub fn gamma0_c(k: i64, n: i64) -> LaurentPoly2 {
    let num = &(&(&t(2) + &q(1)) * &(&t(1) - &q(1))) * &(&t(2 * (n - 2 * k)) - &one());
    over_t1(num, n - 2 * k + 1)
}

pub fn gammak_c(k: i64, n: i64) -> LaurentPoly2 {
    let a = (&(&t(1) - &q(1)) * &(&one() + &qt(1, 2 * (n - 2 * k) - 1))).shift_half(0, -2 * (n - 2 * k));
    let b = over_t1(&(&one() - &qt(2, 2 * n - 2 * k - 1)) * &(&t(2 * k) - &one()), n - 1);
    -&(&a + &b)
}

pub fn gammak1_c(k: i64, n: i64) -> LaurentPoly2 {
    -over_t1(&(&one() - &qt(2, 2 * (n - k - 1))) * &(&t(2 * k + 1) - &one()), n - 1)
}

pub fn d_kn(k: i64, n: i64) -> LaurentPoly2 {
    over_t1(&(&qt(2, 2 * (k - 1)) - &one()) * &(&t(2 * n - 2 * k + 1) - &one()), n - 1)
}

pub fn psi_nk(n: i64, k: i64) -> LaurentPoly2 {
    let mut s = f2(0, k + 2, n);
    for i in 1..=k + 1 {
        s += psi_ij(i, k - i + 2, n);
    }
    s
}

pub fn psi_nk_closed(n: i64, k: i64) -> LaurentPoly2 {
    let num = &(&(&t(2) + &q(1)) * &(&t(1) - &q(1))) * &(&t(2 * (n - 2 * k) - 1) + &one());
    num.shift_half(0, -2 * (n - 2 * k + 1))
}

/// `Λ^{2|k,n}_{2|h}`.
pub fn lambda2_2h(h: i64, k: i64, n: i64) -> LaurentPoly2 {
    if k < 0 || 2 * k + 1 > n || h < 0 || h > k {
        return zero();
    }
    f2(0, 1, n).scale(sgn(k - h) * binom(n - k - h - 1, k - h) as Coeff)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CSelector {
    /// `Λ_k^{k,n}`, closed form.
    LambdaKK { k: i64, n: i64 },
    /// `Λ_h^{k,n}` by recursion.
    LambdaH { h: i64, k: i64, n: i64 },
    /// `Λ_0^{k,n}` by recursion.
    Lambda0 { k: i64, n: i64 },
    /// `Λ_0^{1,n}`, closed form.
    Lambda01n { n: i64 },
    /// `Λ^{2|k,n}_{2|h}`.
    Lambda2Of2h { h: i64, k: i64, n: i64 },
    /// `Λ^{2|k,n}_h` by recursion.
    Lambda2H { h: i64, k: i64, n: i64 },
    /// `Λ^{2|k,n}_0` by recursion.
    Lambda2Zero { k: i64, n: i64 },
    Gamma0C { k: i64, n: i64 },
    GammaKC { k: i64, n: i64 },
    GammaK1C { k: i64, n: i64 },
    DKn { k: i64, n: i64 },
    /// `Ψ(n,k)` summed from the `Ψ_i^{j,n}`.
    PsiNK { n: i64, k: i64 },
    /// `Ψ(n,k)` from its closed form.
    PsiNKClosed { n: i64, k: i64 },
}

/// Memoised evaluator for the recursive type-C selectors.
#[derive(Default)]
pub struct CCoefficients {
    lam: HashMap<(i64, i64, i64), LaurentPoly2>,
    lam2: HashMap<(i64, i64, i64), LaurentPoly2>,
    base_rows: HashMap<i64, BTreeMap<CKey, LaurentPoly2>>,
}

impl CCoefficients {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, sel: CSelector) -> Result<LaurentPoly2> {
        use CSelector::*;
        let bad = || Err(out_of_range("c_coefficients", format!("{sel:?}")));
        let even = |k: i64, n: i64| k >= 1 && 2 * k <= n;
        let odd = |k: i64, n: i64| k >= 0 && 2 * k < n;
        match sel {
            LambdaKK { k, n } if even(k, n) => Ok(lambda_kk(k, n)),
            LambdaH { h, k, n } if even(k, n) && 0 <= h && h <= k => Ok(self.lam(h, k, n)),
            Lambda0 { k, n } if even(k, n) => Ok(self.lam(0, k, n)),
            Lambda01n { n } if n >= 1 => Ok(lambda0_1n(n)),
            Lambda2Of2h { h, k, n } if odd(k, n) && 0 <= h && h <= k => Ok(lambda2_2h(h, k, n)),
            Lambda2H { h, k, n } if odd(k, n) && 0 <= h && h <= k + 1 => self.lam2(h, k, n),
            Lambda2Zero { k, n } if odd(k, n) => self.lam2(0, k, n),
            Gamma0C { k, n } if odd(k, n) => Ok(gamma0_c(k, n)),
            GammaKC { k, n } if odd(k, n) => Ok(gammak_c(k, n)),
            GammaK1C { k, n } if k >= 0 && 2 * k + 2 <= n => Ok(gammak1_c(k, n)),
            DKn { k, n } if odd(k, n) => Ok(d_kn(k, n)),
            PsiNK { n, k } if k >= 1 && 2 * k < n => Ok(psi_nk(n, k)),
            PsiNKClosed { n, k } if k >= 1 && 2 * k < n => Ok(psi_nk_closed(n, k)),
            _ => bad(),
        }
    }

    fn lam(&mut self, h: i64, k: i64, n: i64) -> LaurentPoly2 {
        if k <= 0 || n < 2 * k || h > k || h < 0 {
            return zero();
        }
        if let Some(v) = self.lam.get(&(h, k, n)) {
            return v.clone();
        }
        let v = if h == k {
            (1..=2 * k).map(|i| f1(0, i, n)).sum()
        } else if h > 0 {
            &self.lam(0, k - h, n - 2 * h) + &self.lam(h, h, n).scale(sgn(k - h) * binom(n - h - k, k - h) as Coeff)
        } else {
            let mut v = &self.lam(0, k, n - 1) - &self.lam(0, k - 1, n - 2);
            v += f1(0, 2, n).scale(sgn(k) * binom(n - k - 1, k - 1) as Coeff);
            for i in 1..=k {
                v += f1(i, 1, n).scale(sgn(k - i + 1) * binom(n - i - k, k - i) as Coeff);
            }
            v
        };
        self.lam.insert((h, k, n), v.clone());
        v
    }

    fn base_row(&mut self, n: i64) -> Result<&BTreeMap<CKey, LaurentPoly2>> {
        if !self.base_rows.contains_key(&n) {
            let rs = build_root_system_any_rank(Family::C, n as usize);
            let row = qm_row(&c_odd_weight(n as usize, 0), &rs, 2)?;
            self.base_rows.insert(n, c_keyed(&row));
        }
        Ok(&self.base_rows[&n])
    }

    fn lam2(&mut self, h: i64, k: i64, n: i64) -> Result<LaurentPoly2> {
        if k < 0 || 2 * k + 1 > n || h < 0 || h > k + 1 {
            return Ok(zero());
        }
        if k == 0 {
            return Ok(self.base_row(n)?.get(&CKey::Even(h)).cloned().unwrap_or_default());
        }
        if let Some(v) = self.lam2.get(&(h, k, n)) {
            return Ok(v.clone());
        }
        let v = if h > 1 {
            &(&self.lam2(h - 1, k - 1, n - 2)? - &lambda2_2h(h - 1, k, n - 1))
                + &f2(0, 3, n).scale(sgn(k - h) * binom(n - k - h - 1, k - h + 1) as Coeff)
        } else if h == 1 {
            &(&self.lam2(0, k - 1, n - 2)? - &lambda2_2h(0, k, n - 1))
                + &f2(0, 3, n).scale(sgn(k) * binom(n - k - 2, k - 1) as Coeff)
        } else {
            let mut v = &self.lam2(0, k, n - 1)? - &self.lam2(0, k - 1, n - 2)?;
            v += f2(0, 3, n).scale(sgn(k - 1) * binom(n - k - 2, k - 1) as Coeff);
            for i in 1..=k + 1 {
                v += psi_ij(i, 1, n).scale(sgn(k - i + 1) * binom(n - k - i, k - i + 1) as Coeff);
            }
            v
        };
        self.lam2.insert((h, k, n), v.clone());
        Ok(v)
    }
}

pub fn c_coefficients(sel: CSelector) -> Result<LaurentPoly2> {
    CCoefficients::new().get(sel)
}

// ---------------------------------------------------------------------
// Reduction multipliers

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MultiplierKind {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMultipliers {
    pub kind: MultiplierKind,
    pub k: i64,
    pub n: i64,
    /// Indexed `i = 0..=k`.
    pub values: Vec<i64>,
}

/// `A_h^{k,n}`.
pub fn mult_a(h: i64, k: i64, n: i64) -> i64 {
    if h > k || h <= 0 {
        return 0;
    }
    if h == k {
        return 1;
    }
    if h > 1 {
        return mult_a(h - 1, k - 1, n - 2);
    }
    (2..=k)
        .map(|i| sgn(i) as i64 * binom(n - i - 1, i - 1) * mult_a(i - 1, k - 1, n - 2))
        .sum()
}

/// `B_h^{k,n}`, with the sign of the `h = 0` case fixed so that the
/// alternating identities hold.
pub fn mult_b(h: i64, k: i64, n: i64) -> i64 {
    if h > k || h < 0 {
        return 0;
    }
    if h == k {
        return 1;
    }
    if h > 0 {
        return mult_b(h - 1, k - 1, n - 2);
    }
    -(1..=k)
        .map(|i| sgn(i) as i64 * binom(n - i - 1, i) * mult_b(i, k, n))
        .sum::<i64>()
}

pub fn reduction_multipliers(kind: MultiplierKind, k: i64, n: i64) -> Result<ReductionMultipliers> {
    let ok = match kind {
        MultiplierKind::A => k >= 0 && n >= 2 * k,
        MultiplierKind::B => k >= 0 && n >= 2 * k + 1,
    };
    if !ok {
        return Err(out_of_range("reduction_multipliers", format!("{kind:?} k={k} n={n}")));
    }
    let f = match kind {
        MultiplierKind::A => mult_a,
        MultiplierKind::B => mult_b,
    };
    Ok(ReductionMultipliers {
        kind,
        k,
        n,
        values: (0..=k).map(|i| f(i, k, n)).collect(),
    })
}

/// `Σ mult_i · row_i`, labelled by the last row's weight. Panics on no rows.
pub fn combine_rows(rows: &[RecurrenceRow], mult: &[i64]) -> RecurrenceRow {
    let mut coeffs: BTreeMap<Weight, LaurentPoly2> = BTreeMap::new();
    for (row, &m) in rows.iter().zip(mult) {
        for (mu, c) in &row.coeffs {
            *coeffs.entry(mu.clone()).or_default() += c.scale(m as Coeff);
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    RecurrenceRow {
        lambda: rows.last().expect("at least one row").lambda.clone(),
        coeffs,
    }
}

/// Rows for `ω_2, …, ω_{2k}`, halved to match the `Λ` normalisation.
pub fn even_rows(k: i64, n: i64) -> Result<Vec<RecurrenceRow>> {
    let rs = build_root_system(Family::C, n as usize)?;
    (1..=k)
        .map(|i| {
            let row = qm_row(&Weight::fundamental(n as usize, 2 * i as usize), &rs, 1)?;
            row.div_exact_by(2)
                .ok_or_else(|| failure("even row halving", &row.lambda, "odd coefficients", "even"))
        })
        .collect()
}

/// Rows for `2ω_1, ω_1+ω_3, …, ω_1+ω_{2k+1}`.
pub fn odd_rows(k: i64, n: i64) -> Result<Vec<RecurrenceRow>> {
    let rs = build_root_system(Family::C, n as usize)?;
    (0..=k)
        .map(|i| qm_row(&c_odd_weight(n as usize, i as usize), &rs, 2))
        .collect()
}

/// Record of which reduction identities were checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub family: Family,
    pub k: i64,
    pub n: i64,
    pub checked: Vec<String>,
}

fn compare_maps<K: Ord + Copy + fmt::Display>(
    identity: &str,
    lhs: &BTreeMap<K, LaurentPoly2>,
    rhs: &BTreeMap<K, LaurentPoly2>,
) -> Result<()> {
    let keys: std::collections::BTreeSet<K> = lhs.keys().chain(rhs.keys()).copied().collect();
    for key in keys {
        let a = lhs.get(&key).cloned().unwrap_or_default();
        let b = rhs.get(&key).cloned().unwrap_or_default();
        expect_eq(identity, key, &a, &b)?;
    }
    Ok(())
}

/// Check the reduction identities of one weight. For type B, `k` is the
/// index `m` of `ε_m`; for type C it is the `k` of `ω_{2k}` and of
/// `ω_1 + ω_{2k+1}` (the even check is skipped when `2k > n`).
pub fn reduced_identities(family: Family, k: i64, n: i64) -> Result<IdentityReport> {
    let mut checked = Vec::new();
    match family {
        Family::B => {
            if k < 1 || k > n || n < 2 {
                return Err(out_of_range("reduced_identities", format!("B m={k} n={n}")));
            }
            let collected = collected_b_row(k, n)?;
            expect_eq("leading coefficient c_m", k, &collected.get(&k).cloned().unwrap_or_default(), &c_m(k, n))?;
            compare_maps("rewritten minuscule row", &collected, &rewritten_b_row(k, n))?;
            checked.push("rewritten row".to_string());
            for i in 0..k {
                let d = k - i;
                let s = sgn((d + 1) / 2);
                let v = gamma_i_unsigned(i, k, n).scale(s);
                expect_eq("Gamma_i", i, &collected.get(&i).cloned().unwrap_or_default(), &v)?;
            }
            expect_eq("Gamma_0", 0, &collected.get(&0).cloned().unwrap_or_default(), &gamma0_b(k, n))?;
            checked.push("Gamma_i".to_string());
            b_recurrence_elimination(&collected, k, n)?;
            checked.push("b recurrence".to_string());
        }
        Family::C => {
            if k < 0 || 2 * k + 1 > n {
                return Err(out_of_range("reduced_identities", format!("C k={k} n={n}")));
            }
            if k >= 1 {
                let rows = even_rows(k, n)?;
                let mult = reduction_multipliers(MultiplierKind::A, k, n)?;
                let combined = c_keyed(&combine_rows(&rows, &mult.values[1..]));
                let mut expect = BTreeMap::new();
                expect.insert(CKey::Even(k), lambda_kk(k, n));
                for h in 0..k {
                    expect.insert(CKey::Even(h), lambda0_1n(n - 2 * k + 2));
                }
                compare_maps("A-combination of even rows", &combined, &expect)?;
                checked.push("even reduction".to_string());
            }
            let rows = odd_rows(k, n)?;
            let mult = reduction_multipliers(MultiplierKind::B, k, n)?;
            let combined = c_keyed(&combine_rows(&rows, &mult.values));
            let mut expect = BTreeMap::new();
            expect.insert(CKey::Odd(k), f2(0, 1, n));
            for h in 0..k {
                expect.insert(CKey::Even(h), gamma0_c(k, n));
            }
            expect.insert(CKey::Even(k), gammak_c(k, n));
            if 2 * k + 2 <= n {
                expect.insert(CKey::Even(k + 1), gammak1_c(k, n));
            }
            compare_maps("B-combination of odd rows", &combined, &expect)?;
            expect_eq("D = Gamma_k - Gamma_0", k, &d_kn(k, n), &(&gammak_c(k, n) - &gamma0_c(k, n)))?;
            checked.push("odd reduction".to_string());
        }
    }
    Ok(IdentityReport { family, k, n, checked })
}

/// Compare every recursively defined `Λ` value in rank `n` with the
/// coefficient collected from the rows. Returns the number of values compared.
pub fn recursive_coefficients_match_rows(n: i64) -> Result<usize> {
    let rs = build_root_system(Family::C, n as usize)?;
    let mut cc = CCoefficients::new();
    let mut count = 0;
    for k in 1..=n / 2 {
        let row = qm_row(&Weight::fundamental(n as usize, 2 * k as usize), &rs, 1)?;
        let row = c_keyed(&row.div_exact_by(2).expect("even coefficients"));
        expect_eq("Lambda_k^{k,n} closed form", k, &row[&CKey::Even(k)], &lambda_kk(k, n))?;
        if k == 1 {
            expect_eq("Lambda_0^{1,n} closed form", n, &row[&CKey::Even(0)], &lambda0_1n(n))?;
        }
        for h in 0..=k {
            let v = cc.get(CSelector::LambdaH { h, k, n })?;
            expect_eq("Lambda_h^{k,n} recursion", CKey::Even(h), &row.get(&CKey::Even(h)).cloned().unwrap_or_default(), &v)?;
            count += 1;
        }
    }
    for k in 0..=(n - 1) / 2 {
        let row = c_keyed(&qm_row(&c_odd_weight(n as usize, k as usize), &rs, 2)?);
        for h in 0..=k {
            let v = lambda2_2h(h, k, n);
            expect_eq("Lambda^{2|k,n}_{2|h}", CKey::Odd(h), &row.get(&CKey::Odd(h)).cloned().unwrap_or_default(), &v)?;
            count += 1;
        }
        for h in 0..=k + 1 {
            let v = cc.get(CSelector::Lambda2H { h, k, n })?;
            expect_eq("Lambda^{2|k,n}_h recursion", CKey::Even(h), &row.get(&CKey::Even(h)).cloned().unwrap_or_default(), &v)?;
            count += 1;
        }
    }
    Ok(count)
}

/// Count, by sign, the orbit elements of `λ` whose reduction is `C_0`.
pub fn zero_reductions(lambda: &Weight, rs: &RootSystem) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for mu in orbit_with_reps(lambda, rs).keys() {
        let red = reduce(mu, rs);
        if red.dominant.as_ref().is_some_and(|d| d.is_zero()) {
            *out.entry(red.sign).or_default() += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------
// The ratio formula and the final univariate identity

/// Unspecialised `C_{k+1,n} / C_{k,n}` on the even chain.
pub fn c_next_ratio(k: i64, n: i64) -> Result<RationalFn> {
    if k < 0 || 2 * k + 2 > n {
        return Err(out_of_range("c_next_ratio", format!("k={k} n={n}")));
    }
    let tm1 = |e: i64| &t(e) - &one();
    let num = &(&(&tm1(2 * (n - 2 * k - 1)) * &tm1(2 * (n - k + 1))) * &(&one() - &qt(1, 2 * k - 1))) * &t(2);
    let den = &(&tm1(2 * (n - 2 * k + 1)) * &tm1(2 * (k + 1))) * &(&one() - &qt(1, 2 * (n - k) - 1));
    Ok(RationalFn::new(num, den)?)
}

/// Which index the `Λ_0^{1,·}` term of the final display carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FinalReading {
    NMinus2k,
    NMinus2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinalIdentityOutcome {
    pub k: i64,
    pub n: i64,
    pub holds_n_minus_2k: bool,
    pub holds_n_minus_2: bool,
}

impl FinalIdentityOutcome {
    pub fn validating_reading(&self) -> Option<FinalReading> {
        if self.holds_n_minus_2k {
            Some(FinalReading::NMinus2k)
        } else if self.holds_n_minus_2 {
            Some(FinalReading::NMinus2)
        } else {
            None
        }
    }
}

fn specialized(p: &LaurentPoly2) -> Result<RationalFn> {
    Ok(RationalFn::from_poly(p.specialize()?))
}

/// The specialised expression for `𝐂_{2|k,n}` under one reading.
pub fn final_expression(k: i64, n: i64, reading: FinalReading) -> Result<RationalFn> {
    if k < 0 || 2 * k + 1 > n {
        return Err(out_of_range("final_identity", format!("k={k} n={n}")));
    }
    let lead = specialized(&f2(0, 1, n))?;
    let ck = closedforms::c_even_specialized(k, n)?;
    let bracket = if n == 2 * k + 1 {
        let ratio = specialized(&gamma0_c(k, n))?.mul(&specialized(&lambda_kk(k, n))?).div(&specialized(&lambda0_1n(3))?)?;
        let b = specialized(&gammak_c(k, n))?.sub(&ratio);
        ck.mul(&b)
    } else {
        let ck1 = closedforms::cc_closed(k + 1, n)?;
        let idx = match reading {
            FinalReading::NMinus2k => n - 2 * k,
            FinalReading::NMinus2 => n - 2,
        };
        let tk = ck1.div(&ck)?;
        let ratio = specialized(&gamma0_c(k, n))?.mul(&specialized(&lambda_kk(k + 1, n))?).div(&specialized(&lambda0_1n(idx))?)?;
        let b = specialized(&gammak1_c(k, n))?.sub(&ratio).add(&specialized(&d_kn(k, n))?.div(&tk)?);
        ck1.mul(&b)
    };
    Ok(bracket.neg().div(&lead)?)
}

pub fn final_identity_readings(k: i64, n: i64) -> Result<FinalIdentityOutcome> {
    let target = closedforms::cc2_closed(k, n)?;
    let holds = |reading| match final_expression(k, n, reading) {
        Ok(v) => Ok(v == target),
        // the n-2 reading divides by Λ_0^{1,1} = 0 when n = 3
        Err(StembridgeError::Laurent(LaurentError::DivisionByZero)) => Ok(false),
        Err(e) => Err(e),
    };
    let a = holds(FinalReading::NMinus2k)?;
    let b = holds(FinalReading::NMinus2)?;
    Ok(FinalIdentityOutcome {
        k,
        n,
        holds_n_minus_2k: a,
        holds_n_minus_2: b,
    })
}

pub fn final_identity(k: i64, n: i64) -> Result<bool> {
    Ok(final_identity_readings(k, n)?.holds_n_minus_2k)
}

/// Check `C_{k+1}/C_k` on the unspecialised even chain (with `C_0 = 1`)
/// against [`c_next_ratio`], and its specialisation against the printed
/// `T_k^n` where that is defined.
pub fn check_ratio_formula(n: i64) -> Result<usize> {
    let rs = build_root_system(Family::C, n as usize)?;
    let rows: Vec<RecurrenceRow> = (1..=n / 2)
        .map(|k| qm_row(&Weight::fundamental(n as usize, 2 * k as usize), &rs, 1))
        .collect::<Result<_>>()?;
    let table = solve_chain(n as usize, &rows, RationalFn::one())?;
    let mut count = 0;
    for k in 0..=(n - 2) / 2 {
        let a = &table.entries[&Weight::fundamental(n as usize, 2 * k as usize)];
        let b = &table.entries[&Weight::fundamental(n as usize, 2 * k as usize + 2)];
        let r = c_next_ratio(k, n)?;
        expect_frac_eq("even chain ratio", format!("k={k}"), &b.div(a)?, &r)?;
        if k >= 1 {
            expect_frac_eq("ratio specialisation", format!("k={k}"), &r.specialize()?, &closedforms::t_ratio(k, n)?)?;
        }
        count += 1;
    }
    Ok(count)
}

// ---------------------------------------------------------------------
// Identity suites. Each returns the number of instances checked.

/// `Γ(2,n;k)` and `Γ(1,n;k)` recursions through `Ψ`, for `4 ≤ n ≤ n_max`.
pub fn check_gamma_recursions(n_max: i64) -> Result<usize> {
    let mut count = 0;
    for n in 4..=n_max {
        for k in 1..n {
            for (h, shift) in [(2, 2), (1, 1)] {
                let lhs = gamma_hkr(h, n, k);
                let rhs = &(&psi6(n).scale(binom(n - k - shift, k - 1) as Coeff) + &gamma_hkr(h, n - 2, k - 1))
                    + &gamma_hkr(h, n - 1, k);
                expect_eq("Gamma(h,n;k) recursion", format!("h={h} n={n} k={k}"), &lhs, &rhs)?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `γ^p` and `γ^d` are unchanged by `(n, m, h) -> (n+1, m+1, h+1)`.
pub fn check_gamma_translation(n_max: i64) -> Result<usize> {
    let mut count = 0;
    for n in 2..=n_max {
        for m in 1..=n {
            for h in 0..m {
                let (a, b) = if (m - h) % 2 == 0 {
                    (gamma_p(n, m, h), gamma_p(n + 1, m + 1, h + 1))
                } else {
                    (gamma_d(n, m, h), gamma_d(n + 1, m + 1, h + 1))
                };
                expect_eq("gamma translation", format!("n={n} m={m} h={h}"), &a, &b)?;
                count += 1;
            }
        }
    }
    Ok(count)
}

fn expect_int(identity: &str, key: String, lhs: i64, rhs: i64) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(failure(identity, key, lhs, rhs))
    }
}

/// Pascal rules and alternating sums of the `A` and `B` multipliers.
pub fn check_multiplier_identities(n_max: i64) -> Result<usize> {
    let mut count = 0;
    for n in 2..=n_max {
        for k in 1..=n / 2 {
            expect_int("A_k^{k,n}", format!("k={k} n={n}"), mult_a(k, k, n), 1)?;
            if 2 * k <= n - 1 {
                for h in 0..=k {
                    let rhs = mult_a(h, k, n - 1) + mult_a(h, k - 1, n - 1);
                    expect_int("A Pascal rule", format!("h={h} k={k} n={n}"), mult_a(h, k, n), rhs)?;
                    count += 1;
                }
            }
        }
        for k in 0..=(n - 1) / 2 {
            expect_int("B_k^{k,n}", format!("k={k} n={n}"), mult_b(k, k, n), 1)?;
            let alt = |h: i64, d: i64| -> i64 {
                (h..=k)
                    .map(|i| sgn(i - h) as i64 * binom(n - i - h - d, i - h) * mult_b(i, k, n))
                    .sum()
            };
            for h in 0..k {
                expect_int("B alternating sum", format!("h={h} k={k} n={n}"), alt(h, 1), 0)?;
                count += 1;
            }
            for h in 0..k - 1 {
                expect_int("B shifted alternating sum", format!("h={h} k={k} n={n}"), alt(h, 2), 0)?;
                count += 1;
            }
            if k >= 1 && n >= 3 && 2 * k + 1 <= n - 1 {
                for h in 0..=k {
                    let rhs = mult_b(h, k, n - 1) + mult_b(h, k - 1, n - 1);
                    expect_int("B Pascal rule", format!("h={h} k={k} n={n}"), mult_b(h, k, n), rhs)?;
                    count += 1;
                }
            }
        }
        if n % 2 == 0 {
            let k = n / 2;
            for j in 0..k {
                expect_int("B_j^{k,2k}", format!("j={j} k={k}"), mult_b(j, k, n), 0)?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `F_i^j = -F_{A(i,j)}^j` for power 1 as polynomials, and the pairing
/// `i <-> B(i,j)` for power 2 at the level of reduced weights.
pub fn check_f_symmetries(n_max: i64) -> Result<usize> {
    let mut count = 0;
    for n in 2..=n_max {
        for j in 1..=n {
            for i in 0..=n - j + 2 {
                let a = n - i - j + 2;
                expect_eq("F_i^j = -F_A(i,j)^j", format!("i={i} j={j} n={n}"), &f1(i, j, n), &-f1(a, j, n))?;
                count += 1;
            }
        }
        let rs = build_root_system(Family::C, n as usize)?;
        for k in 0..=(n - 1) / 2 {
            let lam = c_odd_weight(n as usize, k as usize);
            for (mu, beta) in pair_orbit_qm(&lam, &rs) {
                let j = beta.coords.iter().position(|&x| x != 0).expect("nonzero root");
                let r = n - j as i64;
                for i in 0..=r + 1 {
                    let bi = n - i - (j as i64 + 1) + 3;
                    if bi <= i || bi > r + 1 {
                        continue;
                    }
                    let red = |i: i64| {
                        let mut nu = mu.clone();
                        nu.coords[j] -= 4 * i;
                        reduce(&nu, &rs)
                    };
                    let (x, y) = (red(i), red(bi));
                    let paired = x.dominant == y.dominant && (x.dominant.is_none() || x.sign == -y.sign);
                    if !paired {
                        return Err(failure("B(i,j) pairing", format!("mu={mu} i={i} j={}", j + 1), i, bi));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// The four statements on `Γ_0^{k,n}` and `Ψ(n,k)`, with `Γ_0` and `Γ_1`
/// also read off the combined odd rows.
pub fn check_gamma0_lemmas(n_max: i64) -> Result<usize> {
    let mut count = 0;
    for n in 3..=n_max {
        for k in 1..=(n - 1) / 2 {
            let key = format!("k={k} n={n}");
            let sum: LaurentPoly2 = (2 * k + 1..=n).map(|j| psi_nk(j, k)).sum();
            expect_eq("Gamma_0 as a sum of Psi", &key, &gamma0_c(k, n), &sum)?;
            expect_eq("Psi closed form", &key, &psi_nk(n, k), &psi_nk_closed(n, k))?;
            expect_eq("Gamma_0 shift", &key, &gamma0_c(k, n), &gamma0_c(k - 1, n - 2))?;
            let mult = reduction_multipliers(MultiplierKind::B, k, n)?;
            let combined = c_keyed(&combine_rows(&odd_rows(k, n)?, &mult.values));
            for h in [0, 1].into_iter().filter(|&h| h < k || h == 0) {
                let got = combined.get(&CKey::Even(h)).cloned().unwrap_or_default();
                expect_eq("Gamma_h from rows", format!("h={h} {key}"), &got, &gamma0_c(k, n))?;
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Number and sign of orbit elements reducing to the zero weight, for
/// `ε_k` in type B and `ω_{2k}` in type C, against the closed counts.
pub fn check_zero_counts(n_max: i64) -> Result<usize> {
    let mut count = 0;
    let expect_map = |count: i64, sign: Coeff| -> BTreeMap<i64, usize> {
        if count == 0 {
            BTreeMap::new()
        } else {
            [(sign as i64, count as usize)].into()
        }
    };
    for n in 2..=n_max {
        let nu = n as usize;
        let rs = build_root_system(Family::B, nu)?;
        for k in 1..=n {
            let z = zero_reductions(&Weight::fundamental(nu, k as usize), &rs);
            let expect = if k % 2 == 0 {
                expect_map(binom(n - k / 2, k / 2), sgn(k / 2))
            } else {
                let s = (k - 1) / 2;
                expect_map(binom(n - s - 1, s), sgn(s + 1))
            };
            if z != expect {
                return Err(failure("zero reductions (B)", format!("k={k} n={n}"), format!("{z:?}"), format!("{expect:?}")));
            }
            count += 1;
        }
        let rs = build_root_system(Family::C, nu)?;
        for k in 1..=n / 2 {
            let z = zero_reductions(&Weight::fundamental(nu, 2 * k as usize), &rs);
            let expect = expect_map(binom(n - k, k), sgn(k));
            if z != expect {
                return Err(failure("zero reductions (C)", format!("k={k} n={n}"), format!("{z:?}"), format!("{expect:?}")));
            }
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize) -> RootSystem {
        build_root_system(Family::B, n).unwrap()
    }

    fn c(n: usize) -> RootSystem {
        build_root_system(Family::C, n).unwrap()
    }

    #[test]
    fn f_row_examples() {
        let f = f_row(1).unwrap();
        assert_eq!(f[0], t(-1));
        assert_eq!(f[1], -&(&one() + &q(1)));
        assert_eq!(f[2], qt(1, 1));
        assert_eq!(f_row(2).unwrap()[0], t(-2));
        assert!(f_row(0).is_err());
    }

    #[test]
    fn f_row_generating_identity() {
        // Σ t^r f_i z^i = (1 - tz)(1 - qtz) Σ_{j<r} (t^2 z)^j, compared
        // coefficientwise in z.
        for r in 1..=8 {
            let f = f_row(r).unwrap();
            let mut rhs = vec![zero(); (r + 2) as usize];
            for j in 0..r {
                let base = t(2 * j);
                rhs[j as usize] += base.clone();
                rhs[j as usize + 1] -= &base * &(&t(1) + &qt(1, 1));
                rhs[j as usize + 2] += &base * &qt(1, 2);
            }
            for i in 0..=(r + 1) as usize {
                assert_eq!(&f[i] * &t(r), rhs[i], "r={r} i={i}");
            }
        }
    }

    #[test]
    fn minuscule_row_b2_eps1() {
        let rs = b(2);
        let row = minuscule_row(&Weight::fundamental(2, 1), &rs).unwrap();
        let keys: Vec<i64> = row.coeffs.keys().map(half_size).collect();
        assert_eq!(keys, vec![0, 1]);
        let lead = row.leading().specialize().unwrap();
        assert_eq!(lead, &q(-3) + &q(4));
    }

    #[test]
    fn minuscule_row_b2_eps2_reduces_to_recurrence() {
        // equal once the ε_1 row is subtracted
        let row = collected_b_row(2, 2).unwrap();
        assert_ne!(row, b_recurrence_row(2, 2));
        assert_eq!(b_recurrence_elimination(&row, 2, 2).unwrap(), vec![-1]);
    }

    #[test]
    fn minuscule_keys_are_eps() {
        for n in 2..=6 {
            let rs = b(n);
            for m in 1..=n {
                let lam = Weight::fundamental(n, m);
                for mu in minuscule_row(&lam, &rs).unwrap().coeffs.keys() {
                    assert_eq!(*mu, Weight::fundamental(n, half_size(mu) as usize));
                }
            }
        }
    }

    #[test]
    fn minuscule_representative_independence() {
        for n in 2..=4 {
            let rs = b(n);
            for m in 1..=n {
                let lam = Weight::fundamental(n, m);
                let reps = orbit_with_reps(&lam, &rs);
                let stab: Vec<SignedPermutation> = (0..n)
                    .map(|i| SignedPermutation::simple(n, i))
                    .filter(|s| s.apply(&lam) == lam)
                    .collect();
                let other: BTreeMap<Weight, SignedPermutation> = reps
                    .iter()
                    .enumerate()
                    .map(|(idx, (mu, w))| {
                        let w2 = if stab.is_empty() { w.clone() } else { w.compose(&stab[idx % stab.len()]) };
                        (mu.clone(), w2)
                    })
                    .collect();
                assert_eq!(
                    minuscule_row(&lam, &rs).unwrap(),
                    minuscule_row_with_reps(&lam, &rs, &other).unwrap()
                );
            }
        }
    }

    #[test]
    fn qm_row_c2_omega2() {
        let rs = c(2);
        let row = qm_row(&Weight::fundamental(2, 2), &rs, 1).unwrap().div_exact_by(2).unwrap();
        // (t - q t^4)(t^2 - 1) / (t^3 (t - 1))
        let expect = over_t1(&(&t(1) - &qt(1, 4)) * &(&t(2) - &one()), 3);
        assert_eq!(row.leading(), expect);
        assert_eq!(expect, lambda_kk(1, 2));
    }

    #[test]
    fn wrong_family_errors() {
        assert!(matches!(
            minuscule_row(&Weight::fundamental(2, 1), &c(2)),
            Err(StembridgeError::NotMinusculePath(_))
        ));
        assert!(matches!(
            qm_row(&Weight::fundamental(2, 2), &b(2), 1),
            Err(StembridgeError::NotQuasiMinusculePath(_))
        ));
        assert!(matches!(
            qm_row(&Weight::fundamental(2, 2), &c(2), 2),
            Err(StembridgeError::PowerMismatch { .. })
        ));
    }

    #[test]
    fn triangular_rows() {
        for n in 2..=5 {
            for fam in [Family::B, Family::C] {
                let rs = build_root_system(fam, n).unwrap();
                for row in chain_rows(fam, n).unwrap() {
                    for mu in row.coeffs.keys() {
                        assert!(dominance_leq(mu, &row.lambda, &rs).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn solve_empty_chain() {
        let table = solve_chain(3, &[], RationalFn::one()).unwrap();
        assert_eq!(table.entries.len(), 1);
        assert_eq!(table.entries[&Weight::zero(3)], RationalFn::one());
    }

    #[test]
    fn b2_chain_matches_closed_forms() {
        let table = specialized_table(Family::B, 2).unwrap();
        for m in 1..=2 {
            assert_eq!(
                table.entries[&Weight::fundamental(2, m)],
                RationalFn::from_poly(closedforms::cb_closed(m as i64, 2).unwrap())
            );
        }
    }

    #[test]
    fn c3_chain_matches_closed_forms() {
        let table = specialized_table(Family::C, 3).unwrap();
        assert_eq!(table.entries[&Weight::fundamental(3, 2)], closedforms::cc_closed(1, 3).unwrap());
        for k in 0..=1 {
            assert_eq!(table.entries[&c_odd_weight(3, k)], closedforms::cc2_closed(k as i64, 3).unwrap());
        }
    }

    #[test]
    fn missing_dependency() {
        let rs = c(3);
        let row = qm_row(&c_odd_weight(3, 1), &rs, 2).unwrap();
        assert!(matches!(
            solve_chain(3, &[row], RationalFn::one()),
            Err(StembridgeError::MissingDependency(_))
        ));
    }

    #[test]
    fn b_coefficient_examples() {
        assert_eq!(b_coefficients(BSelector::B { m: 1 }).unwrap(), &q(1) + &one());
        assert_eq!(b_coefficients(BSelector::C { m: 1, n: 2 }).unwrap(), &q(-3) + &q(4));
        assert_eq!(b_coefficients(BSelector::GammaHkr { h: 1, k: 5, r: 0 }).unwrap(), zero());
        assert!(b_coefficients(BSelector::B { m: 0 }).is_err());
    }

    #[test]
    fn nonadjacent_subset_counts() {
        // the number of non-adjacent r-subsets of an m-set is binom(m-r+1, r)
        for m in 0..=9 {
            for r in 0..=5 {
                assert_eq!(nonadjacent_subsets(1, m, r).len() as i64, binom(m - r + 1, r), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn b_reduced_identities() {
        for n in 2..=6 {
            for m in 1..=n {
                reduced_identities(Family::B, m, n).unwrap();
            }
        }
    }

    #[test]
    fn recurrence_multipliers_n6_m6() {
        let collected = collected_b_row(6, 6).unwrap();
        assert_eq!(b_recurrence_elimination(&collected, 6, 6).unwrap(), vec![-1, -1, 1, 1, -1]);
    }

    #[test]
    fn c_reduced_identities() {
        for n in 3..=7 {
            for k in 0..=(n - 1) / 2 {
                reduced_identities(Family::C, k, n).unwrap();
            }
        }
    }

    #[test]
    fn c_coefficient_examples() {
        let v = c_coefficients(CSelector::Lambda01n { n: 2 }).unwrap();
        let expect = -over_t1(&(&t(1) - &q(1)) * &(&t(2) - &one()), 1);
        assert_eq!(v, expect);
        for n in 3..=8 {
            for k in 1..=(n - 1) / 2 {
                assert_eq!(psi_nk(n, k), psi_nk_closed(n, k), "n={n} k={k}");
                assert_eq!(gamma0_c(k, n), gamma0_c(k - 1, n - 2));
                let sum: LaurentPoly2 = (2 * k + 1..=n).map(|j| psi_nk(j, k)).sum();
                assert_eq!(gamma0_c(k, n), sum, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn recursions_match_rows() {
        for n in 2..=6 {
            assert!(recursive_coefficients_match_rows(n).unwrap() > 0);
        }
    }

    #[test]
    fn multiplier_examples() {
        for n in 2..=12 {
            for k in 0..=n / 2 {
                assert_eq!(mult_a(k.max(1), k.max(1), n), 1);
                assert_eq!(mult_b(k, k, n), 1);
            }
        }
        let a = reduction_multipliers(MultiplierKind::A, 2, 5).unwrap();
        assert_eq!(a.values[0], 0);
        assert_eq!(a.values[2], 1);
        assert!(reduction_multipliers(MultiplierKind::B, 2, 4).is_err());
    }

    #[test]
    fn ratio_formula() {
        for n in 2..=6 {
            check_ratio_formula(n).unwrap();
        }
    }

    #[test]
    fn final_identity_small() {
        assert!(final_identity(0, 3).unwrap());
        let o = final_identity_readings(1, 5).unwrap();
        assert_eq!(o.validating_reading(), Some(FinalReading::NMinus2k));
    }

    #[test]
    fn row_serde_round_trip() {
        let row = qm_row(&Weight::fundamental(2, 2), &c(2), 1).unwrap();
        let s = serde_json::to_string(&row).unwrap();
        let back: RecurrenceRow = serde_json::from_str(&s).unwrap();
        assert_eq!(row, back);
    }

    #[test]
    fn identity_suites() {
        assert!(check_gamma_recursions(10).unwrap() > 0);
        assert!(check_gamma_translation(8).unwrap() > 0);
        assert!(check_multiplier_identities(12).unwrap() > 0);
        assert!(check_f_symmetries(5).unwrap() > 0);
        assert!(check_gamma0_lemmas(7).unwrap() > 0);
        assert!(check_zero_counts(5).unwrap() > 0);
    }
}
