//! Small dense integer matrices acting on coordinate vectors.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// `k·I`
    pub fn scalar(n: usize, k: i64) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = k;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn max_norm(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        (0..self.rows)
            .map(|r| {
                v.iter().enumerate().try_fold(0i64, |acc, (c, x)| {
                    self.get(r, c)
                        .checked_mul(*x)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// The integer inverse, when the matrix is square and unimodular.
    pub fn inverse(&self) -> Option<IntMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|r| {
                (0..2 * n)
                    .map(|c| {
                        if c < n {
                            Ratio::from_integer(self.get(r, c))
                        } else {
                            Ratio::from_integer((c - n == r) as i64)
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != Ratio::from_integer(0))?;
            a.swap(col, pivot);
            let p = a[col][col];
            for v in a[col].iter_mut() {
                *v /= p;
            }
            for r in 0..n {
                if r != col {
                    let f = a[r][col];
                    if f != Ratio::from_integer(0) {
                        let row = a[col].clone();
                        for (v, w) in a[r].iter_mut().zip(row) {
                            *v -= f * w;
                        }
                    }
                }
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for row in &a {
            for v in &row[n..] {
                if !v.is_integer() {
                    return None;
                }
                data.push(v.to_integer());
            }
        }
        Some(IntMatrix { rows: n, cols: n, data })
    }

    /// Every `rows × cols` matrix with entries in `[-k, k]`, by max-norm and
    /// then lexicographically on the row-major entries.
    pub fn enumerate(rows: usize, cols: usize, k: i64) -> impl Iterator<Item = IntMatrix> {
        let n = rows * cols;
        (0..=k.max(0)).flat_map(move |m| {
            let lo = -m;
            let mut current = vec![lo; n];
            let mut done = false;
            std::iter::from_fn(move || loop {
                if done {
                    return None;
                }
                let item = current.clone();
                let mut i = n;
                loop {
                    if i == 0 {
                        done = true;
                        break;
                    }
                    i -= 1;
                    if current[i] < m {
                        current[i] += 1;
                        break;
                    }
                    current[i] = lo;
                }
                if item.iter().map(|v| v.abs()).max().unwrap_or(0) == m {
                    return Some(IntMatrix {
                        rows,
                        cols,
                        data: item,
                    });
                }
            })
        })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

/// Rows separated by `;`, entries by `,`.
impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut data = Vec::new();
        let mut width = None;
        let mut rows = 0;
        let mut offset = 0;
        for row in s.split(';') {
            let mut count = 0;
            let mut at = offset;
            for entry in row.split(',') {
                let trimmed = entry.trim();
                let v: i64 = trimmed
                    .parse()
                    .map_err(|_| ParseError::new(at, &["integer"], format!("`{trimmed}`")))?;
                data.push(v);
                count += 1;
                at += entry.len() + 1;
            }
            if *width.get_or_insert(count) != count {
                return Err(ParseError::new(offset, &["rows of equal length"], row.trim()).into());
            }
            rows += 1;
            offset += row.len() + 1;
        }
        IntMatrix::new(rows, width.unwrap_or(0), data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_and_inverse() {
        let m: IntMatrix = "1,0;1,1".parse().unwrap();
        assert_eq!(m.apply(&[1, 5]).unwrap(), vec![1, 6]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.to_string(), "1,0;-1,1");
        assert_eq!(IntMatrix::scalar(1, 2).inverse(), None);
        assert_eq!("0,0;0,0".parse::<IntMatrix>().unwrap().inverse(), None);
        assert!("1,2;3".parse::<IntMatrix>().is_err());
        assert!(IntMatrix::identity(2).apply(&[1]).is_err());
    }

    #[test]
    fn enumeration_order() {
        let all: Vec<String> = IntMatrix::enumerate(1, 1, 2).map(|m| m.to_string()).collect();
        assert_eq!(all, ["0", "-1", "1", "-2", "2"]);
        assert_eq!(IntMatrix::enumerate(2, 2, 1).count(), 81);
        assert_eq!(IntMatrix::enumerate(1, 0, 3).count(), 1);
    }
}
