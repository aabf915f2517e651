//! The integral chain complex of the graph and its exact Betti numbers.
//!
//! The CW structure has the vertices as 0-cells, the edges as 1-cells,
//! and one 2-cell per *closed* face (E-point); open faces and angles
//! bound no cell.  With every edge oriented from its lower to its
//! higher endpoint:
//!
//! * `d1` has one row per edge: +1 at the head, −1 at the tail;
//! * `d2` has one row per closed face: traversing the cyclic edge
//!   list, an edge enters with +1 when it is traversed tail-to-head
//!   and −1 otherwise.
//!
//! Ranks are computed by fraction-free integer elimination (Bareiss),
//! so the Betti numbers over ℚ are exact:
//!
//! ```text
//! b0 = v − rank d1,   b1 = e − rank d1 − rank d2,   b2 = f − rank d2.
//! ```

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{face_walk, PointKind, PointShapeError, ZappaticGraph};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let x = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, x);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Rank over ℚ by fraction-free (Bareiss) elimination.  Every
    /// intermediate entry is a minor of the input, held in an i128;
    /// the divisions below are exact.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let at = |m: &Vec<i128>, r: usize, c: usize| m[r * cols + c];
        let mut rank = 0;
        let mut prev: i128 = 1;
        let mut row = 0;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let Some(p) = (row..rows).find(|&r| at(&m, r, col) != 0) else {
                continue;
            };
            if p != row {
                for c in 0..cols {
                    m.swap(row * cols + c, p * cols + c);
                }
            }
            let pivot = at(&m, row, col);
            for r in row + 1..rows {
                let head = at(&m, r, col);
                for c in col + 1..cols {
                    let val = pivot
                        .checked_mul(at(&m, r, c))
                        .and_then(|x| head.checked_mul(at(&m, row, c)).map(|y| x - y))
                        .expect("entries exceed the exact arithmetic range");
                    m[r * cols + c] = val / prev;
                }
                m[r * cols + col] = 0;
            }
            prev = pivot;
            row += 1;
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Boundary matrices of the graph's CW structure.  `face_points[i]`
/// is the index of the E-point behind row `i` of `d2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    /// e × v; row per edge: +1 at the higher endpoint, −1 at the lower.
    pub d1: IntMatrix,
    /// f × e; row per closed face.
    pub d2: IntMatrix,
    pub face_points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyError {
    pub point: usize,
    pub error: PointShapeError,
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "closed face (point {}) is malformed: {}", self.point, self.error)
    }
}

pub fn chain_complex(g: &ZappaticGraph) -> Result<ChainComplex, HomologyError> {
    let v = g.vertices.len();
    let e = g.edges.len();
    let mut d1 = IntMatrix::zero(e, v);
    for (i, edge) in g.edges.iter().enumerate() {
        d1.set(i, edge.v, 1);
        d1.set(i, edge.u, -1);
    }
    let face_points: Vec<usize> = (0..g.points.len())
        .filter(|&i| g.points[i].kind == PointKind::E)
        .collect();
    let mut d2 = IntMatrix::zero(face_points.len(), e);
    for (row, &pi) in face_points.iter().enumerate() {
        let p = &g.points[pi];
        let walk = face_walk(g, p).map_err(|error| HomologyError { point: pi, error })?;
        let n = p.edges.len();
        for (i, &edge) in p.edges.iter().enumerate() {
            let from = walk[i];
            let to = walk[(i + 1) % n];
            // +1 iff traversed from the lower to the higher endpoint
            d2.set(row, edge, if from < to { 1 } else { -1 });
        }
    }
    Ok(ChainComplex { d1, d2, face_points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub b0: u64,
    pub b1: u64,
    pub b2: u64,
}

impl BettiVector {
    pub fn euler(&self) -> i64 {
        self.b0 as i64 - self.b1 as i64 + self.b2 as i64
    }
}

/// Betti numbers over ℚ of the graph's CW structure.
pub fn betti(g: &ZappaticGraph) -> Result<BettiVector, HomologyError> {
    let complex = chain_complex(g)?;
    Ok(betti_of_complex(&complex))
}

pub fn betti_of_complex(complex: &ChainComplex) -> BettiVector {
    let r1 = complex.d1.rank() as u64;
    let r2 = complex.d2.rank() as u64;
    let v = complex.d1.cols as u64;
    let e = complex.d1.rows as u64;
    let f = complex.d2.rows as u64;
    BettiVector { b0: v - r1, b1: e - r1 - r2, b2: f - r2 }
}
