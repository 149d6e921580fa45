//! Nilpotent orbits of so(N) given by column sizes, and their dimensions.

use crate::error::{Error, Result};
use crate::spinclass::pairs::{unitarity_test, StringPairs, Unitarity};
use crate::weyl::Family;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitColumns {
    /// Column lengths of the Young diagram, descending, zeros dropped.
    pub cols: Vec<u32>,
    /// N of so(N).
    pub ambient: u32,
}

impl OrbitColumns {
    pub fn new(mut cols: Vec<u32>, ambient: u32) -> Result<Self> {
        cols.retain(|c| *c > 0);
        cols.sort_by(|a, b| b.cmp(a));
        let total: u32 = cols.iter().sum();
        if total != ambient {
            return Err(Error::Malformed(format!(
                "columns sum to {total}, expected {ambient}"
            )));
        }
        Ok(OrbitColumns { cols, ambient })
    }

    /// Row lengths, i.e. the Jordan block sizes.
    pub fn rows(&self) -> Vec<u32> {
        transpose(&self.cols)
    }

    /// Even Jordan blocks occur with even multiplicity.
    pub fn is_orthogonal(&self) -> bool {
        let rows = self.rows();
        let mut i = 0;
        while i < rows.len() {
            let j = rows[i..].iter().take_while(|r| **r == rows[i]).count();
            if rows[i].is_multiple_of(2) && j % 2 == 1 {
                return false;
            }
            i += j;
        }
        true
    }
}

pub fn transpose(parts: &[u32]) -> Vec<u32> {
    let mut sorted: Vec<u32> = parts.iter().copied().filter(|p| *p > 0).collect();
    sorted.sort_by(|a, b| b.cmp(a));
    let top = sorted.first().copied().unwrap_or(0);
    (1..=top)
        .map(|i| sorted.iter().filter(|p| **p >= i).count() as u32)
        .collect()
}

fn is_strict(p: &StringPairs) -> bool {
    unitarity_test(p) == Unitarity::Satisfied { strict: true }
}

/// D: ∪(2x_i, 2x_i−1, 2y_i+1, 2y_i) in so(4n). B: ∪(2y_i+1, 2y_i, 2x_i, 2x_i−1)
/// with (0, 0) for an x_i = 0 column, in so(4n+1); a column of length 1
/// makes up the size when no such column exists.
pub fn attach_orbit(p: &StringPairs) -> Result<OrbitColumns> {
    if !is_strict(p) {
        return Err(Error::NotStrictCore);
    }
    let n = p.n() as u32;
    let mut cols = Vec::new();
    for (x, y) in p.columns() {
        cols.push(2 * y + 1);
        cols.push(2 * y);
        if x > 0 {
            cols.push(2 * x);
            cols.push(2 * x - 1);
        }
    }
    let ambient = match p.family() {
        Family::D => 4 * n,
        Family::B => {
            let total: u32 = cols.iter().sum();
            if total == 4 * n {
                cols.push(1);
            }
            4 * n + 1
        }
    };
    OrbitColumns::new(cols, ambient)
}

/// N(N−1)/2 − ½(Σ c_j² − #{odd rows}).
pub fn orbit_dim(o: &OrbitColumns) -> i64 {
    let n = o.ambient as i64;
    let sq: i64 = o.cols.iter().map(|c| (*c as i64) * (*c as i64)).sum();
    let odd = o.rows().iter().filter(|r| *r % 2 == 1).count() as i64;
    n * (n - 1) / 2 - (sq - odd) / 2
}

pub fn nilcone_dim(n: u32) -> i64 {
    let n = n as i64;
    n * (n - 1) / 2 - n / 2
}

/// The special orbit ∪(2x_i, 2y_i) of so(2n).
pub fn special_orbit(p: &StringPairs) -> Result<OrbitColumns> {
    let cols = p.columns().flat_map(|(x, y)| [2 * x, 2 * y]).collect();
    OrbitColumns::new(cols, 2 * p.n() as u32)
}

/// codim of the attached orbit in the nilcone of so(4n) equals twice the
/// codim of the special orbit in the nilcone of so(2n).
pub fn codim_identity_holds(p: &StringPairs) -> Result<bool> {
    if p.family() != Family::D {
        return Err(Error::Unsupported("codimension identity is stated for type D".into()));
    }
    let big = attach_orbit(p)?;
    let small = special_orbit(p)?;
    let lhs = nilcone_dim(big.ambient) - orbit_dim(&big);
    let rhs = 2 * (nilcone_dim(small.ambient) - orbit_dim(&small));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(cols: &[(u32, u32)]) -> StringPairs {
        StringPairs::from_columns(Family::D, cols).unwrap()
    }

    #[test]
    fn attach_examples() {
        for n in 1..=4u32 {
            let o = attach_orbit(&d(&[(n, 0)])).unwrap();
            assert_eq!(o.cols, vec![2 * n, 2 * n - 1, 1]);
        }
        let o = attach_orbit(&d(&[(2, 1)])).unwrap();
        assert_eq!(o, OrbitColumns::new(vec![4, 3, 3, 2], 12).unwrap());
        let b = StringPairs::from_columns(Family::B, &[(1, 1)]).unwrap();
        let o = attach_orbit(&b).unwrap();
        assert_eq!(o.cols, vec![3, 2, 2, 1, 1]);
        assert_eq!(o.ambient, 9);
        assert!(o.is_orthogonal());
        let b = StringPairs::from_columns(Family::B, &[(0, 1)]).unwrap();
        assert_eq!(attach_orbit(&b).unwrap().cols, vec![3, 2]);
        assert_eq!(attach_orbit(&d(&[(1, 1)])), Err(Error::NotStrictCore));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose(&[6, 5, 1]), vec![3, 2, 2, 2, 2, 1]);
        assert_eq!(transpose(&[1]), vec![1]);
        assert_eq!(transpose(&[]), Vec::<u32>::new());
    }

    #[test]
    fn dims() {
        assert_eq!(orbit_dim(&OrbitColumns::new(vec![6, 5, 1], 12).unwrap()), 36);
        assert_eq!(orbit_dim(&OrbitColumns::new(vec![4, 3, 3, 2], 12).unwrap()), 48);
        assert_eq!(orbit_dim(&OrbitColumns::new(vec![4, 2], 6).unwrap()), 6);
        assert_eq!(nilcone_dim(6), 12);
        assert_eq!(nilcone_dim(12), 60);
        assert_eq!(nilcone_dim(2), 0);
    }

    #[test]
    fn codim_examples() {
        assert!(codim_identity_holds(&d(&[(2, 1)])).unwrap());
        assert!(codim_identity_holds(&d(&[(4, 0)])).unwrap());
        assert!(codim_identity_holds(&d(&[(3, 2), (2, 0)])).unwrap());
    }
}
