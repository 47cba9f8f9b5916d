//! Splitting types `O(a_1) + ... + O(a_r)` and their cohomology.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Sorted non-decreasing parts of a split bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingType {
    parts: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut parts: Vec<i64>) -> Self {
        parts.sort_unstable();
        SplittingType { parts }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn h0(&self) -> i64 {
        self.parts.iter().map(|a| (a + 1).max(0)).sum()
    }

    pub fn h1(&self) -> i64 {
        self.parts.iter().map(|a| (-a - 1).max(0)).sum()
    }

    /// `(h0, h1)`.
    pub fn cohomology(&self) -> (i64, i64) {
        (self.h0(), self.h1())
    }

    pub fn dual(&self) -> SplittingType {
        SplittingType::new(self.parts.iter().map(|a| -a).collect())
    }

    pub fn twist(&self, n: i64) -> SplittingType {
        SplittingType::new(self.parts.iter().map(|a| a + n).collect())
    }

    /// `h^1(End E) = sum over pairs of max(a_i - a_j - 1, 0)`.
    pub fn end_h1(&self) -> i64 {
        let mut total = 0;
        for a in &self.parts {
            for b in &self.parts {
                total += (a - b - 1).max(0);
            }
        }
        total
    }

    /// Parts differ by at most one.
    pub fn is_balanced(&self) -> bool {
        match (self.parts.first(), self.parts.last()) {
            (Some(lo), Some(hi)) => hi - lo <= 1,
            _ => true,
        }
    }

    pub fn report(&self) -> SplittingReport {
        SplittingReport {
            parts: self.parts.clone(),
            degree: self.degree(),
            h0: self.h0(),
            h1: self.h1(),
        }
    }
}

/// `(h0, h1)` of a splitting type.
pub fn cohomology(t: &SplittingType) -> (i64, i64) {
    t.cohomology()
}

pub fn end_h1(t: &SplittingType) -> i64 {
    t.end_h1()
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Serialized form of a splitting type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    #[serde(rename = "type")]
    pub parts: Vec<i64>,
    pub degree: i64,
    pub h0: i64,
    pub h1: i64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_bundle_cohomology() {
        assert_eq!(SplittingType::new(vec![-3, 0, 2]).cohomology(), (4, 2));
        assert_eq!(SplittingType::new(vec![-1, -1]).cohomology(), (0, 0));
        assert_eq!(SplittingType::new(vec![0]).cohomology(), (1, 0));
    }

    #[test]
    fn endomorphism_h1() {
        assert_eq!(SplittingType::new(vec![0, 0, 0]).end_h1(), 0);
        assert_eq!(SplittingType::new(vec![0, 2]).end_h1(), 1);
        assert_eq!(SplittingType::new(vec![-1, 3]).end_h1(), 3);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&SplittingType::new(vec![2, -1]).report()).unwrap();
        assert_eq!(s, r#"{"type":[-1,2],"degree":1,"h0":3,"h1":0}"#);
    }
}
