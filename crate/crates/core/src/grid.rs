//! Rectangular row-major grids.
//!
//! Process lattices, templates, type signatures and morphism structures all
//! share this container. Any grid with zero area is stored as the single
//! canonical `0×0` grid.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid<T> {
    rows: usize,
    cols: usize,
    cells: Vec<T>,
}

impl<T> Grid<T> {
    /// Builds a grid from row-major cells. Fails when `cells.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, cells: Vec<T>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(cells.len()) {
            return Err(Error::Shape {
                rows,
                cols,
                cells: cells.len(),
            });
        }
        if cells.is_empty() {
            return Ok(Self::empty());
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn empty() -> Self {
        Self {
            rows: 0,
            cols: 0,
            cells: Vec::new(),
        }
    }

    /// A `1×n` grid.
    pub fn row(cells: Vec<T>) -> Self {
        let n = cells.len();
        Self::new(1, n, cells).expect("row shape is always consistent")
    }

    /// An `n×1` grid.
    pub fn column(cells: Vec<T>) -> Self {
        let n = cells.len();
        Self::new(n, 1, cells).expect("column shape is always consistent")
    }

    /// Builds a grid from nested rows, rejecting ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut cells = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    found: row.len(),
                    expected: n,
                });
            }
            cells.extend(row);
        }
        Self::new(m, n, cells)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// Zero-based cell access.
    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        if i < self.rows && j < self.cols {
            self.cells.get(i * self.cols + j)
        } else {
            None
        }
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<T> {
        self.cells
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        // chunks(0) panics, and the empty grid has no rows anyway
        self.cells.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Grid<U> {
        Grid {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells.iter().map(f).collect(),
        }
    }

    /// Transpose, mapping each cell on the way.
    pub fn transpose_map<U>(&self, mut f: impl FnMut(&T) -> U) -> Grid<U> {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                cells.push(f(&self.cells[i * self.cols + j]));
            }
        }
        Grid {
            rows: self.cols,
            cols: self.rows,
            cells,
        }
    }

    /// The `h×w` block whose top-left corner is at `(top, left)`.
    pub fn block(&self, top: usize, left: usize, h: usize, w: usize) -> Option<Grid<T>>
    where
        T: Clone,
    {
        if top + h > self.rows || left + w > self.cols {
            return None;
        }
        let mut cells = Vec::with_capacity(h * w);
        for i in top..top + h {
            let start = i * self.cols + left;
            cells.extend_from_slice(&self.cells[start..start + w]);
        }
        Grid::new(h, w, cells).ok()
    }

    /// Whether `pattern` occurs as a contiguous block at some offset.
    /// The empty pattern occurs everywhere.
    pub fn contains_block(&self, pattern: &Grid<T>) -> bool
    where
        T: PartialEq,
    {
        let (h, w) = pattern.dims();
        if h > self.rows || w > self.cols {
            return false;
        }
        (0..=self.rows - h).any(|top| {
            (0..=self.cols - w).any(|left| {
                (0..h).all(|i| {
                    (0..w).all(|j| {
                        self.cells[(top + i) * self.cols + left + j] == pattern.cells[i * w + j]
                    })
                })
            })
        })
    }
}

impl<T> Default for Grid<T> {
    fn default() -> Self {
        Self::empty()
    }
}
