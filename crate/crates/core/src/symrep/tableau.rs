use std::fmt;

use serde::{Deserialize, Serialize};

use super::Partition;

/// Standard Young tableau: `1..=n` placed in a partition shape, rows and
/// columns strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauError {
    #[error("rows {0:?} do not form a standard Young tableau")]
    NotStandard(Vec<Vec<usize>>),
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        let mut ok = rows.iter().all(|r| !r.is_empty()) && rows.windows(2).all(|w| w[0].len() >= w[1].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > n || seen[v] {
                    ok = false;
                    continue;
                }
                seen[v] = true;
                if c > 0 && row[c - 1] >= v {
                    ok = false;
                }
                if r > 0 && rows[r - 1].get(c).is_none_or(|&above| above >= v) {
                    ok = false;
                }
            }
        }
        if !ok {
            return Err(TableauError::NotStandard(rows));
        }
        Ok(StandardTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("tableau rows are a partition")
    }

    /// `(row, column)` of entry `k`, 0-based.
    pub fn position(&self, k: usize) -> (usize, usize) {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&v| v == k) {
                return (r, c);
            }
        }
        panic!("entry {k} not in tableau");
    }

    /// Row index (1-based) of each entry `1..=n`.
    pub fn yamanouchi_word(&self) -> Vec<usize> {
        (1..=self.size()).map(|k| self.position(k).0 + 1).collect()
    }

    /// Restriction to the entries `1..=k` (the tableau `y_k`).
    pub fn restricted(&self, k: usize) -> StandardTableau {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().copied().filter(|&v| v <= k).collect::<Vec<_>>())
            .filter(|r| !r.is_empty())
            .collect();
        StandardTableau { rows }
    }

    fn push(&self, row: usize, k: usize) -> StandardTableau {
        let mut rows = self.rows.clone();
        if row == rows.len() {
            rows.push(vec![k]);
        } else {
            rows[row].push(k);
        }
        StandardTableau { rows }
    }
}

impl fmt::Display for StandardTableau {
    /// Rows separated by `/`, e.g. `12/34`; entries above 9 are comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.size() > 9;
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                cells.join(if wide { "," } else { "" })
            })
            .collect();
        f.write_str(&rows.join("/"))
    }
}

/// Standard tableaux of `shape` in last-letter order.
///
/// Tableaux are ordered by the row of `n`, then of `n − 1`, and so on, with the
/// lower row first. For `{3,1}` this gives `123/4, 124/3, 134/2`.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let n = shape.size();
    if n == 0 {
        return vec![StandardTableau { rows: Vec::new() }];
    }
    let mut out = Vec::new();
    for row in shape.removable_rows() {
        for t in standard_tableaux(&shape.with_box_removed(row)) {
            out.push(t.push(row, n));
        }
    }
    out
}

/// Jucys-Murphy eigenvalues `m_j = c_j − r_j`, one per entry `j = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContentVector(pub Vec<i64>);

impl ContentVector {
    /// `m_j` for 1-based `j`.
    pub fn get(&self, j: usize) -> i64 {
        self.0[j - 1]
    }
}

pub fn content_vector(y: &StandardTableau) -> ContentVector {
    ContentVector(
        (1..=y.size())
            .map(|k| {
                let (r, c) = y.position(k);
                c as i64 - r as i64
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn counts_for_small_shapes() {
        assert_eq!(standard_tableaux(&Partition::two_row(4, 2)).len(), 2);
        assert_eq!(standard_tableaux(&Partition::two_row(8, 3)).len(), 28);
        assert_eq!(standard_tableaux(&Partition::two_row(6, 0)).len(), 1);
    }

    #[test]
    fn last_letter_order() {
        let got: Vec<String> = standard_tableaux(&Partition::two_row(4, 1)).iter().map(|y| y.to_string()).collect();
        assert_eq!(got, ["123/4", "124/3", "134/2"]);
        let got: Vec<String> = standard_tableaux(&Partition::two_row(4, 2)).iter().map(|y| y.to_string()).collect();
        assert_eq!(got, ["12/34", "13/24"]);
    }

    #[test]
    fn contents() {
        assert_eq!(content_vector(&t(&[&[1, 2], &[3, 4]])).0, vec![0, 1, -1, 0]);
        assert_eq!(content_vector(&t(&[&[1, 3], &[2, 4]])).0, vec![0, -1, 1, 0]);
        assert_eq!(content_vector(&t(&[&[1, 2, 3, 4]])).0, vec![0, 1, 2, 3]);
    }

    #[test]
    fn validation() {
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::new(vec![vec![2, 1]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![3, 4, 5]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2, 3]]).is_err());
    }

    #[test]
    fn restriction_and_yamanouchi() {
        let y = t(&[&[1, 3, 4], &[2]]);
        assert_eq!(y.restricted(2).rows(), &[vec![1], vec![2]]);
        assert_eq!(y.yamanouchi_word(), vec![1, 2, 1, 1]);
    }
}
