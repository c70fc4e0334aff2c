//! Partitions, bipartitions, hooks and Gaussian binomials.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPoly2;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum QcombError {
    #[error("q-binomial ({n} choose {m}) is out of range")]
    OutOfRange { n: i64, m: i64 },
    #[error("parts {0:?} are not weakly decreasing positive integers")]
    InvalidPartition(Vec<u32>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, QcombError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(QcombError::InvalidPartition(parts));
        }
        Ok(Self { parts })
    }

    /// Drops zero parts; panics on non-decreasing input.
    pub fn from_slice(parts: &[u32]) -> Self {
        Self::new(parts.iter().copied().filter(|&p| p > 0).collect()).expect("invalid partition")
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..w)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count() as u32)
                .collect(),
        }
    }

    /// Boxes `(i, j)`, 1-based, row by row.
    pub fn boxes(&self) -> Vec<(u32, u32)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i as u32 + 1, j)))
            .collect()
    }

    pub fn hook(&self, i: u32, j: u32) -> u32 {
        let t = self.transpose();
        self.parts[i as usize - 1] - j + t.parts[j as usize - 1] - i + 1
    }

    pub fn hooks(&self) -> Vec<u32> {
        let t = self.transpose();
        self.boxes()
            .into_iter()
            .map(|(i, j)| self.parts[i as usize - 1] - j + t.parts[j as usize - 1] - i + 1)
            .collect()
    }

    pub fn contents(&self) -> Vec<i64> {
        self.boxes()
            .into_iter()
            .map(|(i, j)| j as i64 - i as i64)
            .collect()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> u32 {
        self.parts.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(rem: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(cap)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Bipartition {
    pub alpha: Partition,
    pub beta: Partition,
}

impl Bipartition {
    pub fn new(alpha: &[u32], beta: &[u32]) -> Self {
        Self {
            alpha: Partition::from_slice(alpha),
            beta: Partition::from_slice(beta),
        }
    }

    pub fn size(&self) -> u32 {
        self.alpha.size() + self.beta.size()
    }

    pub fn all(n: u32) -> Vec<Bipartition> {
        let mut out = Vec::new();
        for k in (0..=n).rev() {
            for a in Partition::all(k) {
                for b in Partition::all(n - k) {
                    out.push(Bipartition {
                        alpha: a.clone(),
                        beta: b,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// Gaussian binomial `[n, m]_x` with `x` an arbitrary Laurent polynomial
/// (in practice a monomial such as `q^4`), built by the Pascal recurrence
/// `[n, m] = [n-1, m-1] + x^m [n-1, m]`.
pub fn q_binomial(n: i64, m: i64, x: &LaurentPoly2) -> Result<LaurentPoly2, QcombError> {
    if n < 0 || m < 0 || m > n {
        return Err(QcombError::OutOfRange { n, m });
    }
    let (n, m) = (n as usize, m as usize);
    let powers: Vec<LaurentPoly2> = (0..=m).map(|i| x.pow(i as u32)).collect();
    // row[j] = [r, j] for the current r
    let mut row = vec![LaurentPoly2::one()];
    for r in 1..=n {
        let mut next = Vec::with_capacity(r + 1);
        for j in 0..=r.min(m) {
            let left = if j >= 1 { row[j - 1].clone() } else { LaurentPoly2::zero() };
            let right = if j < row.len() && j <= r - 1 {
                &powers[j] * &row[j]
            } else {
                LaurentPoly2::zero()
            };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(row[m].clone())
}

/// Ordinary binomial coefficient, zero outside `0 <= m <= n`.
pub fn binom(n: i64, m: i64) -> i64 {
    if n < 0 || m < 0 || m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut r: i64 = 1;
    for i in 0..m {
        r = r * (n - i) / (i + 1);
    }
    r
}
