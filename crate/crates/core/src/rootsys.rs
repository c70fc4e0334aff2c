//! Root systems of types B and C, their Weyl group realised as signed
//! permutations, and the dot-action reduction of weights.
//!
//! All weight coordinates are stored in half-units.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("rank {0} is not supported (need n >= 2)")]
    UnsupportedRank(usize),
    #[error("weights {lambda} and {mu} do not differ by an element of the root lattice")]
    IncomparableLattice { lambda: Weight, mu: Weight },
    #[error("weight {0} is not integral")]
    NotIntegral(Weight),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            _ => Err(format!("unknown family {s:?} (expected B or C)")),
        }
    }
}

/// Coordinates in the `e_i` basis, in half-units.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn from_half(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn from_whole(coords: &[i64]) -> Self {
        Self {
            coords: coords.iter().map(|c| 2 * c).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: vec![0; n] }
    }

    /// `e_j` for 1-based `j`.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut w = Self::zero(n);
        w.coords[j - 1] = 2;
        w
    }

    /// `ω_i = e_1 + ... + e_i` (the type-B spin weight is not needed here).
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        for c in w.coords.iter_mut().take(i) {
            *c = 2;
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c % 2 == 0)
    }

    /// Whole-unit coordinates, if integral.
    pub fn whole(&self) -> Option<Vec<i64>> {
        self.is_integral()
            .then(|| self.coords.iter().map(|c| c / 2).collect())
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Inner product in quarter-units: `(x, y) = dot_half(x, y) / 4`.
    pub fn dot_half(&self, o: &Weight) -> i64 {
        self.coords.iter().zip(&o.coords).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1]) && self.coords.last().map_or(true, |&c| c >= 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{c}/2")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct WeightRepr {
    coords: Vec<i64>,
    half: bool,
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.whole() {
            Some(c) => WeightRepr { coords: c, half: false },
            None => WeightRepr {
                coords: self.coords.clone(),
                half: true,
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = WeightRepr::deserialize(d)?;
        Ok(if r.half {
            Weight::from_half(r.coords)
        } else {
            Weight::from_whole(&r.coords)
        })
    }
}

/// Signed permutation: `e_i -> ±e_{perm[i]}`, the sign being negative when
/// `flips[perm[i]]` is set (permute first, then negate).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub flips: Vec<bool>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            flips: vec![false; n],
        }
    }

    /// Simple reflection `s_i`, 0-based: `i < n-1` swaps `i, i+1`; `i = n-1`
    /// negates the last coordinate.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        if i + 1 < n {
            w.perm.swap(i, i + 1);
        } else {
            w.flips[n - 1] = true;
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        let n = self.rank();
        let mut out = vec![0; n];
        for i in 0..n {
            let j = self.perm[i];
            out[j] = if self.flips[j] { -v.coords[i] } else { v.coords[i] };
        }
        Weight::from_half(out)
    }

    pub fn sign(&self) -> i64 {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut parity = 0;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            parity += len - 1;
        }
        parity += self.flips.iter().filter(|&&f| f).count();
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut flips = vec![false; n];
        for i in 0..n {
            let mid = other.perm[i];
            let end = self.perm[mid];
            perm[i] = end;
            flips[end] = other.flips[mid] ^ self.flips[end];
        }
        SignedPermutation { perm, flips }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut flips = vec![false; n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            flips[i] = self.flips[j];
        }
        SignedPermutation { perm, flips }
    }

    /// Signed cycles: `(length, product of signs)` for each cycle.
    pub fn signed_cycles(&self) -> Vec<(usize, i64)> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            let mut eps = 1;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                if self.flips[j] {
                    eps = -eps;
                }
                len += 1;
            }
            out.push((len, eps));
        }
        out
    }

    /// Every element of the hyperoctahedral group of rank `n`.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for k in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        let mut out = Vec::with_capacity(perms.len() << n);
        for p in perms {
            for mask in 0..(1u32 << n) {
                let flips = (0..n).map(|i| mask >> i & 1 == 1).collect();
                out.push(SignedPermutation {
                    perm: p.clone(),
                    flips,
                });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    pub rho: Weight,
    pub exponents: Vec<u32>,
    pub degrees: Vec<u32>,
    pub theta: Weight,
    pub theta_check: Weight,
}

pub fn build_root_system(family: Family, n: usize) -> Result<RootSystem, RootError> {
    if n < 2 {
        return Err(RootError::UnsupportedRank(n));
    }
    Ok(build_root_system_any_rank(family, n))
}

/// Like [`build_root_system`] but also accepts rank 1. Only used by small
/// sanity checks.
pub fn build_root_system_any_rank(family: Family, n: usize) -> RootSystem {
    let mut positive_roots = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            positive_roots.push(Weight::unit(n, i).sub(&Weight::unit(n, j)));
            positive_roots.push(Weight::unit(n, i).add(&Weight::unit(n, j)));
        }
    }
    let short_or_long = |j| match family {
        Family::B => Weight::unit(n, j),
        Family::C => Weight::unit(n, j).scale(2),
    };
    for j in 1..=n {
        positive_roots.push(short_or_long(j));
    }
    let mut simple_roots: Vec<Weight> = (1..n)
        .map(|i| Weight::unit(n, i).sub(&Weight::unit(n, i + 1)))
        .collect();
    simple_roots.push(short_or_long(n));
    let rho = Weight::from_half(
        (1..=n as i64)
            .map(|j| match family {
                Family::B => 2 * n as i64 - 2 * j + 1,
                Family::C => 2 * (n as i64 - j + 1),
            })
            .collect(),
    );
    let (theta, theta_check) = match family {
        Family::B if n >= 2 => (
            Weight::unit(n, 1).add(&Weight::unit(n, 2)),
            Weight::unit(n, 1).add(&Weight::unit(n, 2)),
        ),
        Family::B => (Weight::unit(n, 1), Weight::unit(n, 1).scale(2)),
        Family::C => (Weight::unit(n, 1).scale(2), Weight::unit(n, 1)),
    };
    RootSystem {
        family,
        rank: n,
        positive_roots,
        simple_roots,
        rho,
        exponents: (1..=n as u32).map(|i| 2 * i - 1).collect(),
        degrees: (1..=n as u32).map(|i| 2 * i).collect(),
        theta,
        theta_check,
    }
}

impl RootSystem {
    pub fn weyl_order(&self) -> u64 {
        (1..=self.rank as u64).product::<u64>() << self.rank
    }

    /// All roots, positive then negative.
    pub fn roots(&self) -> Vec<Weight> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| r.scale(-1)));
        out
    }

    pub fn is_positive_root(&self, w: &Weight) -> bool {
        self.positive_roots.contains(w)
    }

    fn check_rank(&self, w: &Weight) -> Result<(), RootError> {
        if w.rank() != self.rank {
            return Err(RootError::RankMismatch {
                expected: self.rank,
                got: w.rank(),
            });
        }
        Ok(())
    }
}

/// Outcome of rewriting `C_μ` in reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedForm {
    pub sign: i64,
    pub dominant: Option<Weight>,
}

/// Dot-action reduction: `μ+ρ` is sorted into the dominant chamber.
pub fn reduce(mu: &Weight, rs: &RootSystem) -> ReducedForm {
    let n = rs.rank;
    let v = mu.add(&rs.rho);
    let abs: Vec<i64> = v.coords.iter().map(|c| c.abs()).collect();
    let distinct: BTreeSet<i64> = abs.iter().copied().collect();
    if abs.contains(&0) || distinct.len() < n {
        return ReducedForm {
            sign: 0,
            dominant: None,
        };
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| abs[b].cmp(&abs[a]));
    let inversions = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| idx[i] > idx[j])
        .count();
    let negatives = v.coords.iter().filter(|&&c| c < 0).count();
    let sign = if (inversions + negatives) % 2 == 0 { 1 } else { -1 };
    let sorted = Weight::from_half(idx.iter().map(|&i| abs[i]).collect());
    ReducedForm {
        sign,
        dominant: Some(sorted.sub(&rs.rho)),
    }
}

/// Orbit of `lambda` with one representative per element, by breadth-first
/// closure under simple reflections.
pub fn orbit_with_reps(lambda: &Weight, rs: &RootSystem) -> BTreeMap<Weight, SignedPermutation> {
    let n = rs.rank;
    let gens: Vec<SignedPermutation> = (0..n).map(|i| SignedPermutation::simple(n, i)).collect();
    let mut reps = BTreeMap::new();
    let mut queue = VecDeque::new();
    reps.insert(lambda.clone(), SignedPermutation::identity(n));
    queue.push_back(lambda.clone());
    while let Some(mu) = queue.pop_front() {
        let w = reps[&mu].clone();
        for s in &gens {
            let nu = s.apply(&mu);
            if !reps.contains_key(&nu) {
                reps.insert(nu.clone(), s.compose(&w));
                queue.push_back(nu);
            }
        }
    }
    reps
}

pub fn weyl_orbit(lambda: &Weight, rs: &RootSystem) -> BTreeSet<Weight> {
    orbit_with_reps(lambda, rs).into_keys().collect()
}

/// Orbit of `v` under the stabiliser of the dominant weight `lambda`, which
/// is generated by the simple reflections fixing `lambda`.
pub fn stabilizer_orbit(lambda: &Weight, v: &Weight, rs: &RootSystem) -> BTreeSet<Weight> {
    let n = rs.rank;
    let gens: Vec<SignedPermutation> = (0..n)
        .map(|i| SignedPermutation::simple(n, i))
        .filter(|s| s.apply(lambda) == *lambda)
        .collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v.clone());
    queue.push_back(v.clone());
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = s.apply(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Pairs `(wλ, wθ)` with `wθ` a positive root.
pub fn pair_orbit_qm(lambda: &Weight, rs: &RootSystem) -> BTreeSet<(Weight, Weight)> {
    let n = rs.rank;
    let gens: Vec<SignedPermutation> = (0..n).map(|i| SignedPermutation::simple(n, i)).collect();
    let start = (lambda.clone(), rs.theta.clone());
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((a, b)) = queue.pop_front() {
        for s in &gens {
            let p = (s.apply(&a), s.apply(&b));
            if seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    seen.into_iter().filter(|(_, b)| rs.is_positive_root(b)).collect()
}

/// `mu <= lambda` in dominance order, by partial sums.
pub fn dominance_leq(mu: &Weight, lambda: &Weight, rs: &RootSystem) -> Result<bool, RootError> {
    rs.check_rank(mu)?;
    rs.check_rank(lambda)?;
    let diff = lambda.sub(mu);
    let d = diff.whole().ok_or_else(|| RootError::IncomparableLattice {
        lambda: lambda.clone(),
        mu: mu.clone(),
    })?;
    let total: i64 = d.iter().sum();
    if rs.family == Family::C && total % 2 != 0 {
        return Err(RootError::IncomparableLattice {
            lambda: lambda.clone(),
            mu: mu.clone(),
        });
    }
    let mut s = 0;
    for x in &d {
        s += x;
        if s < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn in_root_lattice(w: &Weight, rs: &RootSystem) -> bool {
    match w.whole() {
        None => false,
        Some(c) => rs.family == Family::B || c.iter().sum::<i64>() % 2 == 0,
    }
}

pub fn is_small(lambda: &Weight, rs: &RootSystem) -> bool {
    if !in_root_lattice(lambda, rs) {
        return false;
    }
    // 2α is a weight of V_λ iff its dominant conjugate lies below λ
    rs.positive_roots
        .iter()
        .filter(|a| a.is_dominant())
        .all(|a| !matches!(dominance_leq(&a.scale(2), lambda, rs), Ok(true)))
}

/// The small dominant weights, ordered as the recurrence chains use them.
pub fn small_weights(rs: &RootSystem) -> Vec<Weight> {
    let n = rs.rank;
    match rs.family {
        Family::B => (1..=n).map(|m| Weight::fundamental(n, m)).collect(),
        Family::C => {
            let mut out: Vec<Weight> = (1..=n / 2).map(|k| Weight::fundamental(n, 2 * k)).collect();
            for k in 0..=(n - 1) / 2 {
                out.push(c_odd_weight(n, k));
            }
            out
        }
    }
}

/// `ω_1 + ω_{2k+1}` in rank `n` (for `k = 0` this is `2ω_1`).
pub fn c_odd_weight(n: usize, k: usize) -> Weight {
    Weight::fundamental(n, 1).add(&Weight::fundamental(n, 2 * k + 1))
}

/// All dominant integral weights with coordinates bounded by `max` (whole units).
pub fn dominant_weights_bounded(n: usize, max: i64) -> Vec<Weight> {
    fn rec(n: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if cur.len() == n {
            out.push(Weight::from_whole(cur));
            return;
        }
        for c in (0..=cap).rev() {
            cur.push(c);
            rec(n, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight::from_whole(c)
    }

    #[test]
    fn root_system_examples() {
        let b2 = build_root_system(Family::B, 2).unwrap();
        let expect: BTreeSet<Weight> = [w(&[1, -1]), w(&[1, 1]), w(&[1, 0]), w(&[0, 1])].into();
        assert_eq!(b2.positive_roots.iter().cloned().collect::<BTreeSet<_>>(), expect);
        let c3 = build_root_system(Family::C, 3).unwrap();
        assert_eq!(c3.positive_roots.len(), 9);
        assert_eq!(c3.rho, w(&[3, 2, 1]));
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert_eq!(b3.rho, Weight::from_half(vec![5, 3, 1]));
        assert_eq!(c3.theta, w(&[2, 0, 0]));
        assert_eq!(c3.theta_check, w(&[1, 0, 0]));
        assert!(matches!(
            build_root_system(Family::B, 1),
            Err(RootError::UnsupportedRank(1))
        ));
    }

    #[test]
    fn reduce_examples() {
        let c2 = build_root_system(Family::C, 2).unwrap();
        assert_eq!(
            reduce(&w(&[-1, 1]), &c2),
            ReducedForm {
                sign: -1,
                dominant: Some(w(&[0, 0]))
            }
        );
        assert_eq!(reduce(&w(&[-2, 0]), &c2).sign, 0);
        let b2 = build_root_system(Family::B, 2).unwrap();
        assert_eq!(
            reduce(&w(&[0, -1]), &b2),
            ReducedForm {
                sign: -1,
                dominant: Some(w(&[0, 0]))
            }
        );
    }

    #[test]
    fn apply_and_sign() {
        let swap = SignedPermutation::simple(2, 0);
        assert_eq!(swap.apply(&w(&[1, 0])), w(&[0, 1]));
        let flip1 = SignedPermutation {
            perm: vec![0, 1],
            flips: vec![true, false],
        };
        assert_eq!(flip1.apply(&w(&[1, 0])), w(&[-1, 0]));
        assert_eq!(flip1.sign(), -1);
        let both = SignedPermutation {
            perm: vec![0, 1],
            flips: vec![true, true],
        };
        assert_eq!(swap.compose(&both).sign(), -1);
    }

    #[test]
    fn compose_matches_sequential_application() {
        let all = SignedPermutation::all(3);
        let v = w(&[3, -1, 2]);
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(5) {
                assert_eq!(a.compose(b).apply(&v), a.apply(&b.apply(&v)));
                assert_eq!(a.compose(b).sign(), a.sign() * b.sign());
            }
        }
        for a in &all {
            assert_eq!(a.inverse().apply(&a.apply(&v)), v);
            assert_eq!(a.compose(&a.inverse()), SignedPermutation::identity(3));
        }
    }

    #[test]
    fn orbit_sizes() {
        let b2 = build_root_system(Family::B, 2).unwrap();
        let o = weyl_orbit(&w(&[1, 0]), &b2);
        assert_eq!(o, [w(&[1, 0]), w(&[-1, 0]), w(&[0, 1]), w(&[0, -1])].into());
        let c3 = build_root_system(Family::C, 3).unwrap();
        assert_eq!(weyl_orbit(&w(&[1, 1, 0]), &c3).len(), 12);
        for lam in dominant_weights_bounded(3, 2) {
            let orbit = weyl_orbit(&lam, &c3).len() as u64;
            let stab = SignedPermutation::all(3)
                .iter()
                .filter(|g| g.apply(&lam) == lam)
                .count() as u64;
            assert_eq!(orbit * stab, c3.weyl_order());
        }
    }

    #[test]
    fn orbit_representatives_map_lambda() {
        let c3 = build_root_system(Family::C, 3).unwrap();
        let lam = w(&[2, 1, 1]);
        for (mu, rep) in orbit_with_reps(&lam, &c3) {
            assert_eq!(rep.apply(&lam), mu);
        }
    }

    #[test]
    fn stabilizer_orbit_examples() {
        let b4 = build_root_system(Family::B, 4).unwrap();
        for i in 1..4 {
            let o = stabilizer_orbit(&Weight::fundamental(4, i), &Weight::unit(4, 1), &b4);
            let expect: BTreeSet<Weight> = (1..=i).map(|j| Weight::unit(4, j)).collect();
            assert_eq!(o, expect);
        }
        let zero = stabilizer_orbit(&Weight::zero(4), &Weight::unit(4, 1), &b4);
        assert_eq!(zero.len(), 8);
        let b3 = build_root_system(Family::B, 3).unwrap();
        let o = stabilizer_orbit(&w(&[1, 1, 1]), &Weight::unit(3, 1), &b3);
        assert_eq!(o.len(), 3);
    }

    #[test]
    fn pair_orbit_examples() {
        let c2 = build_root_system(Family::C, 2).unwrap();
        let pairs = pair_orbit_qm(&w(&[1, 1]), &c2);
        // Brute force over the whole group.
        let brute: BTreeSet<(Weight, Weight)> = SignedPermutation::all(2)
            .iter()
            .map(|g| (g.apply(&w(&[1, 1])), g.apply(&c2.theta)))
            .filter(|(_, b)| c2.is_positive_root(b))
            .collect();
        assert_eq!(pairs, brute);
        assert_eq!(pairs.len(), 4);
        let c4 = build_root_system(Family::C, 4).unwrap();
        let zero = pair_orbit_qm(&Weight::zero(4), &c4);
        assert_eq!(zero.len(), 4);
        assert!(zero.iter().all(|(a, b)| a.is_zero() && b.coords.iter().sum::<i64>() == 4));
    }

    #[test]
    fn dominance_examples() {
        let c5 = build_root_system(Family::C, 5).unwrap();
        let om = |i| Weight::fundamental(5, i);
        assert!(dominance_leq(&om(2), &om(4), &c5).unwrap());
        assert!(!dominance_leq(&om(4), &om(2), &c5).unwrap());
        assert!(dominance_leq(&om(4), &om(4), &c5).unwrap());
        assert!(matches!(
            dominance_leq(&om(1), &om(2), &c5),
            Err(RootError::IncomparableLattice { .. })
        ));
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert!(dominance_leq(&Weight::zero(3), &Weight::fundamental(3, 1), &b3).unwrap());
    }

    /// Exhaustive check of the partial-sum criterion against an explicit
    /// search over nonnegative combinations of simple roots.
    #[test]
    fn dominance_matches_brute_force() {
        for fam in [Family::B, Family::C] {
            for n in 2..=3 {
                let rs = build_root_system(fam, n).unwrap();
                let weights = dominant_weights_bounded(n, 2);
                // All nonnegative combinations with coefficients up to 12.
                let mut reachable = BTreeSet::new();
                let mut combos = vec![Weight::zero(n)];
                for a in &rs.simple_roots {
                    combos = combos
                        .iter()
                        .flat_map(|x| (0..=12).map(move |c| x.add(&a.scale(c))))
                        .collect();
                }
                reachable.extend(combos);
                for lam in &weights {
                    for mu in &weights {
                        if let Ok(r) = dominance_leq(mu, lam, &rs) {
                            assert_eq!(r, reachable.contains(&lam.sub(mu)), "{fam}{n} {mu} {lam}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn small_weight_lists() {
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert_eq!(small_weights(&b3), vec![w(&[1, 0, 0]), w(&[1, 1, 0]), w(&[1, 1, 1])]);
        let c3 = build_root_system(Family::C, 3).unwrap();
        let s: BTreeSet<Weight> = small_weights(&c3).into_iter().collect();
        assert_eq!(s, [w(&[2, 0, 0]), w(&[1, 1, 0]), w(&[2, 1, 1])].into());
        assert!(!is_small(&c3.theta.scale(2), &c3));
    }

    /// Every listed small weight passes `is_small`; every other nonzero
    /// dominant root-lattice weight with coordinates up to 3 fails it.
    #[test]
    fn small_weights_are_exactly_the_small_ones() {
        for fam in [Family::B, Family::C] {
            for n in 2..=4 {
                let rs = build_root_system(fam, n).unwrap();
                let listed: BTreeSet<Weight> = small_weights(&rs).into_iter().collect();
                for lam in dominant_weights_bounded(n, 3) {
                    if lam.is_zero() || !in_root_lattice(&lam, &rs) {
                        continue;
                    }
                    assert_eq!(is_small(&lam, &rs), listed.contains(&lam), "{fam}{n} {lam}");
                }
            }
        }
    }
}
