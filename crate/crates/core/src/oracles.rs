//! Brute-force oracles for both sides of the graded multiplicity identity:
//! the decomposition of the exterior algebra of 𝔤, and the Molien series of
//! a hyperoctahedral character.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::closedforms::{self, eval_q2_q, zero_weight_bipartitions, BivariatePoly};
use crate::laurent::{Coeff, LaurentPoly2};
use crate::qcomb::{Bipartition, Partition};
use crate::rootsys::{Family, RootSystem, SignedPermutation, Weight};

/// Default cap on the rank for brute-force enumeration.
pub const DEFAULT_MAX_RANK: usize = 4;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum OracleError {
    #[error("{what} at rank {rank} exceeds the limit {limit}")]
    ResourceLimit { what: &'static str, rank: usize, limit: usize },
    #[error("{what}: {value} is not divisible by {divisor}")]
    NonIntegerMultiplicity { what: &'static str, value: i128, divisor: i128 },
    #[error("truncation degree {d} is below n^2 = {min}")]
    TruncationTooLow { d: usize, min: usize },
    #[error("bipartition {bp} does not have size {n}")]
    SizeMismatch { bp: Bipartition, n: usize },
    #[error("mismatch for {lambda}: {lhs} != {rhs}")]
    Mismatch { lambda: Weight, lhs: String, rhs: String },
    #[error(transparent)]
    ClosedForm(#[from] closedforms::ClosedFormError),
}

type Result<T> = std::result::Result<T, OracleError>;

fn guard(what: &'static str, rank: usize, limit: usize) -> Result<()> {
    if rank > limit {
        return Err(OracleError::ResourceLimit { what, rank, limit });
    }
    Ok(())
}

/// Univariate polynomial, coefficient of `u^d` at index `d`.
pub type UPoly = Vec<i64>;

fn upoly_add_shifted(acc: &mut UPoly, p: &[i64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

fn upoly_trim(mut p: UPoly) -> UPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// `Σ c_d u^d` at `u = q`, as a Laurent polynomial in `q`.
pub fn upoly_at_q(p: &[i64]) -> LaurentPoly2 {
    p.iter()
        .enumerate()
        .map(|(d, &c)| LaurentPoly2::monomial(c as Coeff, d as i64, 0))
        .sum()
}

/// Formal character of ⋀𝔤 with the exterior degree kept in `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    pub terms: BTreeMap<Weight, UPoly>,
}

impl GradedCharacter {
    pub fn get(&self, mu: &Weight) -> &[i64] {
        self.terms.get(mu).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `Σ_μ terms[μ](1)`, which is `2^{dim 𝔤}`.
    pub fn total_dimension(&self) -> i64 {
        self.terms.values().flatten().sum()
    }
}

pub fn lambda_g_character(rs: &RootSystem) -> Result<GradedCharacter> {
    lambda_g_character_limited(rs, DEFAULT_MAX_RANK)
}

pub fn lambda_g_character_limited(rs: &RootSystem, max_rank: usize) -> Result<GradedCharacter> {
    guard("lambda_g_character", rs.rank, max_rank)?;
    let mut terms: BTreeMap<Weight, UPoly> = BTreeMap::new();
    terms.insert(Weight::zero(rs.rank), vec![1]);
    for alpha in rs.roots() {
        let mut next = terms.clone();
        for (mu, p) in &terms {
            upoly_add_shifted(next.entry(mu.add(&alpha)).or_default(), p, 1);
        }
        terms = next;
    }
    // Cartan part: (1+u)^n on every weight
    for _ in 0..rs.rank {
        for p in terms.values_mut() {
            let mut q = p.clone();
            upoly_add_shifted(&mut q, p, 1);
            *p = q;
        }
    }
    Ok(GradedCharacter { terms })
}

/// Multiplicity of `V_λ` in each exterior power, by the alternating sum
/// over the Weyl group.
pub fn multiplicity_series(gc: &GradedCharacter, lambda: &Weight, rs: &RootSystem) -> UPoly {
    let shifted = lambda.add(&rs.rho);
    let mut acc = UPoly::new();
    for w in SignedPermutation::all(rs.rank) {
        let key = w.apply(&shifted).sub(&rs.rho);
        let p = gc.get(&key);
        if p.is_empty() {
            continue;
        }
        let s = w.sign();
        let signed: Vec<i64> = p.iter().map(|c| s * c).collect();
        upoly_add_shifted(&mut acc, &signed, 0);
    }
    upoly_trim(acc)
}

/// `χ^λ(μ)` for the symmetric group, by Murnaghan–Nakayama on beta-sets.
pub fn sym_character(lambda: &Partition, mu: &[u32]) -> i64 {
    let l = lambda.len();
    let beta: Vec<i64> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (l - 1 - i) as i64)
        .collect();
    mn_beta(&beta, mu)
}

fn mn_beta(beta: &[i64], mu: &[u32]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let r = r as i64;
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        let nb = b - r;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let height = beta.iter().filter(|&&x| nb < x && x < b).count();
        let mut next = beta.to_vec();
        next[idx] = nb;
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(&next, rest);
    }
    total
}

/// Cycle type of an ordinary permutation given as an image vector.
fn cycle_type(perm: &[usize]) -> Vec<u32> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let (mut j, mut len) = (i, 0);
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Conjugacy class label: sorted signed cycle type.
pub fn class_key(w: &SignedPermutation) -> Vec<(usize, i64)> {
    let mut c = w.signed_cycles();
    c.sort_unstable_by(|a, b| b.cmp(a));
    c
}

/// A class function on the hyperoctahedral group, one value per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunctionB {
    pub n: usize,
    pub values: HashMap<SignedPermutation, i64>,
}

impl ClassFunctionB {
    pub fn value(&self, w: &SignedPermutation) -> i64 {
        self.values[w]
    }

    pub fn degree(&self) -> i64 {
        self.value(&SignedPermutation::identity(self.n))
    }

    /// `⟨χ, ψ⟩`, which must be an integer.
    pub fn inner(&self, o: &ClassFunctionB) -> Result<i64> {
        let s: i64 = self.values.iter().map(|(w, v)| v * o.values[&w.inverse()]).sum();
        let order = self.values.len() as i64;
        if s % order != 0 {
            return Err(OracleError::NonIntegerMultiplicity {
                what: "inner product",
                value: s as i128,
                divisor: order as i128,
            });
        }
        Ok(s / order)
    }
}

/// Character of `π'_α ⊠ π''_β` on `B_k × B_h`, for `x` in that subgroup.
fn subgroup_character(x: &SignedPermutation, alpha: &Partition, beta: &Partition) -> i64 {
    let k = alpha.size() as usize;
    let p1: Vec<usize> = x.perm[..k].to_vec();
    let p2: Vec<usize> = x.perm[k..].iter().map(|&j| j - k).collect();
    let flips2 = x.flips[k..].iter().filter(|&&f| f).count();
    let sign = if flips2 % 2 == 0 { 1 } else { -1 };
    let a = if k == 0 { 1 } else { sym_character(alpha, &cycle_type(&p1)) };
    let b = if p2.is_empty() { 1 } else { sym_character(beta, &cycle_type(&p2)) };
    sign * a * b
}

pub fn bn_character(bp: &Bipartition, n: usize) -> Result<ClassFunctionB> {
    bn_character_limited(bp, n, DEFAULT_MAX_RANK)
}

pub fn bn_character_limited(bp: &Bipartition, n: usize, max_rank: usize) -> Result<ClassFunctionB> {
    guard("bn_character", n, max_rank)?;
    if bp.size() as usize != n {
        return Err(OracleError::SizeMismatch { bp: bp.clone(), n });
    }
    let k = bp.alpha.size() as usize;
    let group = SignedPermutation::all(n);
    let h_order: i64 = group
        .iter()
        .filter(|x| x.perm[..k].iter().all(|&j| j < k))
        .count() as i64;
    let mut by_class: HashMap<Vec<(usize, i64)>, i64> = HashMap::new();
    let mut values = HashMap::new();
    for g in &group {
        let key = class_key(g);
        let v = match by_class.get(&key) {
            Some(&v) => v,
            None => {
                let mut s = 0;
                for x in &group {
                    let c = x.inverse().compose(g).compose(x);
                    if c.perm[..k].iter().all(|&j| j < k) {
                        s += subgroup_character(&c, &bp.alpha, &bp.beta);
                    }
                }
                if s % h_order != 0 {
                    return Err(OracleError::NonIntegerMultiplicity {
                        what: "induced character",
                        value: s as i128,
                        divisor: h_order as i128,
                    });
                }
                by_class.insert(key, s / h_order);
                s / h_order
            }
        };
        values.insert(g.clone(), v);
    }
    Ok(ClassFunctionB { n, values })
}

/// Power series in `x` truncated at degree `d`, with polynomial
/// coefficients in `y`: `coeffs[i][j]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries2 {
    pub d: usize,
    pub coeffs: Vec<Vec<i128>>,
}

impl TruncatedSeries2 {
    fn zero(d: usize, ydeg: usize) -> Self {
        Self {
            d,
            coeffs: vec![vec![0; ydeg + 1]; d + 1],
        }
    }

    /// The series as a bivariate polynomial (`x` in the `q` slot, `y` in the `t` slot).
    pub fn to_bivariate(&self) -> BivariatePoly {
        let mut p = LaurentPoly2::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    p += LaurentPoly2::monomial(c, i as i64, j as i64);
                }
            }
        }
        p
    }
}

/// `Σ_j ε^j x^{cj}` truncated at degree `d`.
fn geometric_x(c: usize, eps: i64, d: usize) -> Vec<i128> {
    let mut v = vec![0; d + 1];
    let mut s = 1;
    let mut e = 0;
    while e <= d {
        v[e] = s;
        s *= eps as i128;
        e += c;
    }
    v
}

fn mul_x(a: &[i128], b: &[i128], d: usize) -> Vec<i128> {
    let mut out = vec![0; d + 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j > d {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// `∏ (1 - x^{2i})` times the averaged Molien sum of `χ`, truncated at `d`.
pub fn molien_pw(chi: &ClassFunctionB, n: usize, d: usize) -> Result<TruncatedSeries2> {
    if d < n * n {
        return Err(OracleError::TruncationTooLow { d, min: n * n });
    }
    // group elements by class; χ and the summand only depend on the class
    let mut classes: BTreeMap<Vec<(usize, i64)>, (i64, i64)> = BTreeMap::new();
    for (w, &v) in &chi.values {
        let e = classes.entry(class_key(w)).or_insert((0, v));
        e.0 += 1;
    }
    let mut total = TruncatedSeries2::zero(d, n);
    for (cycles, (count, value)) in &classes {
        let weight = (*count as i128) * (*value as i128);
        if weight == 0 {
            continue;
        }
        // det(1 + yM) = ∏ (1 - ε(-y)^c)
        let mut ypoly: Vec<i128> = vec![1];
        let mut xser: Vec<i128> = geometric_x(1, 0, d);
        for &(c, eps) in cycles {
            let coeff = -(eps as i128) * if c % 2 == 0 { 1 } else { -1 };
            let mut next = vec![0; ypoly.len() + c];
            for (j, &a) in ypoly.iter().enumerate() {
                next[j] += a;
                next[j + c] += coeff * a;
            }
            ypoly = next;
            xser = mul_x(&xser, &geometric_x(c, eps, d), d);
        }
        for (j, &yc) in ypoly.iter().enumerate() {
            if yc == 0 {
                continue;
            }
            for (i, &xc) in xser.iter().enumerate() {
                total.coeffs[i][j] += weight * yc * xc;
            }
        }
    }
    let mut weyl: Vec<i128> = geometric_x(1, 0, d);
    for i in 1..=n {
        let mut f = vec![0; d + 1];
        f[0] = 1;
        if 2 * i <= d {
            f[2 * i] = -1;
        }
        weyl = mul_x(&weyl, &f, d);
    }
    let order = chi.values.len() as i128;
    let mut out = TruncatedSeries2::zero(d, n);
    for j in 0..=n {
        let col: Vec<i128> = total.coeffs.iter().map(|r| r[j]).collect();
        let prod = mul_x(&col, &weyl, d);
        for (i, &v) in prod.iter().enumerate() {
            if v % order != 0 {
                return Err(OracleError::NonIntegerMultiplicity {
                    what: "Molien coefficient",
                    value: v,
                    divisor: order,
                });
            }
            out.coeffs[i][j] = v / order;
        }
    }
    Ok(out)
}

/// Both sides of the graded multiplicity identity for one small weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReederReport {
    pub family: Family,
    pub rank: usize,
    pub lambda: Weight,
    /// Multiplicity series of `V_λ` in ⋀𝔤 at `u = q`.
    pub multiplicity: LaurentPoly2,
    /// Hook formula for the zero-weight constituents at `(q^2, q)`.
    pub pw_closed: LaurentPoly2,
    /// Molien series of the same constituents at `(q^2, q)`.
    pub pw_molien: LaurentPoly2,
}

pub fn reeder_check(lambda: &Weight, rs: &RootSystem) -> Result<ReederReport> {
    let gc = lambda_g_character(rs)?;
    reeder_check_with(&gc, lambda, rs)
}

/// [`reeder_check`] with a precomputed character of ⋀𝔤.
pub fn reeder_check_with(gc: &GradedCharacter, lambda: &Weight, rs: &RootSystem) -> Result<ReederReport> {
    reeder_check_limited(gc, lambda, rs, DEFAULT_MAX_RANK)
}

/// Compute both sides without comparing them.
pub fn reeder_sides(gc: &GradedCharacter, lambda: &Weight, rs: &RootSystem, max_rank: usize) -> Result<ReederReport> {
    let n = rs.rank;
    guard("reeder_check", n, max_rank)?;
    let multiplicity = upoly_at_q(&multiplicity_series(gc, lambda, rs));
    let pw_closed = closedforms::pw_small_specialized(rs.family, n, lambda)?;
    let mut pw_molien = LaurentPoly2::zero();
    for bp in zero_weight_bipartitions(rs.family, n, lambda)? {
        let chi = bn_character_limited(&bp, n, max_rank)?;
        pw_molien += eval_q2_q(&molien_pw(&chi, n, n * n)?.to_bivariate());
    }
    Ok(ReederReport {
        family: rs.family,
        rank: n,
        lambda: lambda.clone(),
        multiplicity,
        pw_closed,
        pw_molien,
    })
}

pub fn reeder_check_limited(
    gc: &GradedCharacter,
    lambda: &Weight,
    rs: &RootSystem,
    max_rank: usize,
) -> Result<ReederReport> {
    let report = reeder_sides(gc, lambda, rs, max_rank)?;
    for rhs in [&report.pw_closed, &report.pw_molien] {
        if *rhs != report.multiplicity {
            return Err(OracleError::Mismatch {
                lambda: lambda.clone(),
                lhs: report.multiplicity.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(report)
}
