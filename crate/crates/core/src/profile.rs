//! Vertex weight profiles and exact-ish scalar arithmetic on them.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Sparse positive vertex weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    n: usize,
    support: Vec<(usize, f64)>,
    dense: Vec<f64>,
}

impl Profile {
    /// `entries` may come in any order; zero weights are dropped, duplicates and
    /// negative or non-finite weights are rejected.
    pub fn new(n: usize, entries: &[(usize, f64)]) -> Result<Profile> {
        let mut dense = vec![0.0; n];
        let mut support = Vec::with_capacity(entries.len());
        let mut seen = vec![false; n];
        for &(v, w) in entries {
            if v >= n {
                return Err(Error::invalid(format!("profile vertex {v} out of range")));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::invalid(format!("bad weight {w} at vertex {v}")));
            }
            if seen[v] {
                return Err(Error::invalid(format!("vertex {v} listed twice")));
            }
            seen[v] = true;
            if w > 0.0 {
                dense[v] = w;
                support.push((v, w));
            }
        }
        if support.is_empty() {
            return Err(Error::invalid("profile has empty support"));
        }
        support.sort_by_key(|e| e.0);
        Ok(Profile { n, support, dense })
    }

    /// Weight 1 on every listed vertex.
    pub fn zero_one(n: usize, vertices: &[usize]) -> Result<Profile> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let entries: Vec<_> = vs.into_iter().map(|v| (v, 1.0)).collect();
        Profile::new(n, &entries)
    }

    pub fn unit(n: usize) -> Profile {
        let all: Vec<usize> = (0..n).collect();
        Profile::zero_one(n, &all).expect("n > 0")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, v: usize) -> f64 {
        self.dense[v]
    }

    /// `(vertex, weight)` pairs sorted by vertex.
    pub fn support(&self) -> &[(usize, f64)] {
        &self.support
    }

    pub fn support_vertices(&self) -> Vec<usize> {
        self.support.iter().map(|e| e.0).collect()
    }

    pub fn is_01(&self) -> bool {
        self.support.iter().all(|e| e.1 == 1.0)
    }

    pub fn is_integral(&self) -> bool {
        self.support.iter().all(|e| e.1.fract() == 0.0 && e.1 < (1u64 << 52) as f64)
    }

    pub fn max_weight(&self) -> f64 {
        self.support.iter().map(|e| e.1).fold(0.0, f64::max)
    }

    /// Parses lines `v w`; `#` comments and blank lines are skipped.
    pub fn parse(n: usize, text: &str) -> Result<Profile> {
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: idx + 1, msg };
            let mut parts = line.split_whitespace();
            let (v, w) = match (parts.next(), parts.next(), parts.next()) {
                (Some(v), Some(w), None) => (v, w),
                _ => return Err(bad("expected `vertex weight`".into())),
            };
            let v: usize = v.parse().map_err(|e| bad(format!("{v:?}: {e}")))?;
            let w: f64 = w.parse().map_err(|e| bad(format!("{w:?}: {e}")))?;
            entries.push((v, w));
        }
        Profile::new(n, &entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &(v, w) in &self.support {
            let _ = writeln!(s, "{v} {w}");
        }
        s
    }
}

/// Scalar weights that can be scaled by a hop distance and compared exactly.
pub trait Weight: Copy + PartialOrd + std::fmt::Debug {
    fn zero() -> Self;
    fn times(self, d: u32) -> Self;
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn times(self, d: u32) -> Self {
        self * d as f64
    }
}

/// Nonnegative fraction compared by cross-multiplication.
#[derive(Clone, Copy, Debug)]
pub struct Frac {
    pub num: u128,
    pub den: u128,
}

impl Frac {
    pub fn new(num: u128, den: u128) -> Frac {
        assert!(den > 0, "zero denominator");
        Frac { num, den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.num * other.den == other.num * self.den
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self.num * other.den).cmp(&(other.num * self.den)))
    }
}

impl Weight for Frac {
    fn zero() -> Self {
        Frac { num: 0, den: 1 }
    }
    #[inline]
    fn times(self, d: u32) -> Self {
        Frac { num: self.num * d as u128, den: self.den }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_flags() {
        let p = Profile::parse(5, "# weights\n0 1\n4 1\n2 0\n").unwrap();
        assert_eq!(p.support_vertices(), vec![0, 4]);
        assert!(p.is_01());
        let q = Profile::parse(5, "1 2.5\n").unwrap();
        assert!(!q.is_01() && !q.is_integral());
        assert!(Profile::parse(3, "0 -1\n").is_err());
        assert!(Profile::parse(3, "0 0\n").is_err());
        assert!(Profile::parse(3, "7 1\n").is_err());
        assert_eq!(Profile::parse(5, &p.to_text()).unwrap(), p);
    }

    #[test]
    fn fractions() {
        assert!(Frac::new(1, 3) < Frac::new(1, 2));
        assert!(Frac::new(2, 4) == Frac::new(1, 2));
        assert!(Frac::new(1, 49).times(49) == Frac::new(1, 1));
    }
}
