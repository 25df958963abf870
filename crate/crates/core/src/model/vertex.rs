use std::fmt;
use std::str::FromStr;

use super::ModelError;

/// A point of `{0,1}^n`. Coordinate 1 is stored (and printed) first.
///
/// The derived ordering is lexicographic on the bitstring with `0 < 1`, which is
/// the tie-break order used by every oracle.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitVertex(Vec<bool>);

impl BitVertex {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVertex(bits)
    }

    pub fn zeros(n: usize) -> Self {
        BitVertex(vec![false; n])
    }

    /// The vertex whose last `ones` coordinates are 1 and the rest 0.
    pub fn suffix_ones(n: usize, ones: usize) -> Self {
        assert!(ones <= n);
        BitVertex((0..n).map(|k| k >= n - ones).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, coord: usize) -> bool {
        self.0[coord]
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Hamming distance, which is the l1 distance between 0/1 points.
    pub fn l1_dist(&self, other: &BitVertex) -> usize {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    /// True if every coordinate set in `self` is also set in `other`.
    pub fn support_subset_of(&self, other: &BitVertex) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| !a || b)
    }
}

impl fmt::Display for BitVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVertex({self})")
    }
}

impl FromStr for BitVertex {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ModelError::BadBit { text: s.to_string(), ch: other }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitVertex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffix_and_display() {
        assert_eq!(BitVertex::suffix_ones(3, 0).to_string(), "000");
        assert_eq!(BitVertex::suffix_ones(3, 2).to_string(), "011");
        assert_eq!(BitVertex::suffix_ones(3, 3).to_string(), "111");
    }

    #[test]
    fn lexicographic_order_matches_strings() {
        let mut vs: Vec<BitVertex> = ["110", "001", "100", "011"].iter().map(|s| s.parse().unwrap()).collect();
        vs.sort();
        let printed: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        assert_eq!(printed, ["001", "011", "100", "110"]);
    }

    #[test]
    fn distance() {
        let a: BitVertex = "0110".parse().unwrap();
        let b: BitVertex = "1100".parse().unwrap();
        assert_eq!(a.l1_dist(&b), 2);
        assert_eq!(a.l1_dist(&a), 0);
        assert!("0x1".parse::<BitVertex>().is_err());
    }
}
