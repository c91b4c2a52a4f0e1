use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{format_q, parse_q, q, Q};
use crate::quiver::Quiver;

/// Nonnegative integer vector indexed by the canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// Dimension vector of the simple at `vertex`.
    pub fn unit(n: usize, vertex: usize) -> Self {
        let mut v = vec![0; n];
        v[vertex] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// Entrywise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(DimVector)
    }

    pub fn scale(&self, k: usize) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn gcd(&self) -> usize {
        self.0.iter().fold(0usize, |g, &x| g.gcd(&x))
    }

    /// Nonzero with entries of gcd 1.
    pub fn is_indivisible(&self) -> bool {
        self.gcd() == 1
    }

    /// Every `e` with `0 <= e <= self`, in lexicographic order.
    pub fn subvectors(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }

    pub fn to_map(&self, quiver: &Quiver) -> BTreeMap<String, usize> {
        quiver.vertices().iter().cloned().zip(self.0.iter().copied()).collect()
    }

    pub fn from_map(quiver: &Quiver, map: &BTreeMap<String, usize>) -> Result<Self> {
        for k in map.keys() {
            quiver.vertex_index(k)?;
        }
        quiver
            .vertices()
            .iter()
            .map(|v| map.get(v).copied().ok_or_else(|| Error::Parse(format!("no dimension for vertex {v:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }

    /// Parses a comma-separated list in canonical vertex order.
    pub fn parse_list(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension entry {t:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Rational weight `θ` on the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![Q::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `θ(e) = Σ θ(i) e(i)`.
    pub fn eval(&self, e: &DimVector) -> Q {
        assert_eq!(self.0.len(), e.0.len(), "weight/dimension vector length mismatch");
        self.0
            .iter()
            .zip(&e.0)
            .filter(|(_, &x)| x != 0)
            .fold(Q::zero(), |acc, (t, &x)| acc + t * q(x as i64))
    }

    /// Integer entries, if all entries are integral.
    pub fn as_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| if x.is_integer() { num_traits::ToPrimitive::to_i64(&x.to_integer()) } else { None })
            .collect()
    }

    /// Parses `"1,-1"` or `"1/2,-1/2"` in canonical vertex order.
    pub fn parse_list(s: &str) -> Result<Self> {
        s.split(',').map(parse_q).collect::<Result<Vec<_>>>().map(Weight)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_q).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}
