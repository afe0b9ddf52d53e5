use crate::error::{Error, Result};

/// A finite integration domain `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(Error::InvalidInterval { a, b })
        }
    }

    /// The unit interval `[0, 1]` on which the Peano kernels live.
    pub fn unit() -> Self {
        Interval { a: 0.0, b: 1.0 }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// `a + (b - a)/2`; the same expression the grid uses for its first
    /// interior node, so panel and one-pair composite rules agree bitwise.
    #[inline]
    pub fn midpoint(&self) -> f64 {
        self.a + 0.5 * (self.b - self.a)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// Uniform partition of an interval into `2 n` subintervals of width `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    interval: Interval,
    n_pairs: usize,
}

impl UniformGrid {
    pub fn new(interval: Interval, n_pairs: usize) -> Result<Self> {
        if n_pairs == 0 {
            return Err(Error::InvalidGrid { n_pairs });
        }
        Ok(UniformGrid { interval, n_pairs })
    }

    #[inline]
    pub fn interval(&self) -> Interval {
        self.interval
    }

    #[inline]
    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    /// Number of subintervals, always even.
    #[inline]
    pub fn subintervals(&self) -> usize {
        2 * self.n_pairs
    }

    #[inline]
    pub fn h(&self) -> f64 {
        self.interval.length() / self.subintervals() as f64
    }

    /// Node `x_j = a + j h`, with the last node pinned to `b`.
    pub fn node(&self, j: usize) -> f64 {
        let last = self.subintervals();
        debug_assert!(j <= last);
        if j == last {
            self.interval.b
        } else {
            self.interval.a + j as f64 * self.h()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.subintervals()).map(move |j| self.node(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_intervals() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn grid_nodes_hit_both_ends() {
        let g = UniformGrid::new(Interval::new(0.1, 0.7).unwrap(), 7).unwrap();
        assert_eq!(g.subintervals(), 14);
        assert_eq!(g.node(0), 0.1);
        assert_eq!(g.node(14), 0.7);
        assert_eq!(g.nodes().count(), 15);
        let xs: alloc::vec::Vec<f64> = g.nodes().collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_pairs_rejected() {
        assert_eq!(
            UniformGrid::new(Interval::unit(), 0),
            Err(Error::InvalidGrid { n_pairs: 0 })
        );
    }

    #[test]
    fn midpoint_matches_first_grid_node() {
        let iv = Interval::new(-0.3, 1.9).unwrap();
        let g = UniformGrid::new(iv, 1).unwrap();
        assert_eq!(iv.midpoint(), g.node(1));
    }
}
