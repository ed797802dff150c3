use serde::{Deserialize, Serialize};

use super::{BaseFunction, EnvironmentState};
use crate::exec::{map_indexed, Execution};
use crate::{Error, Result};

/// Cells within this distance of a grid extremum count as attaining it.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Rectangular region of the function's input space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain2D {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Domain2D {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let d = Self { x_min, x_max, y_min, y_max };
        d.validate()?;
        Ok(d)
    }

    pub fn square(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, lo, hi)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::InvalidGrid(format!("degenerate domain {self:?}")));
        }
        Ok(())
    }
}

/// A lattice cell. Row 0 is the northern edge, column 0 the western edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(col: usize, row: usize) -> Self {
        Self { col, row }
    }
}

/// Toroidal lattice laid over a [`Domain2D`].
///
/// Cell `(col, row)` samples the function at its south-west lattice node:
/// `x = x_min + col * dx` and `y = y_min + (height - 1 - row) * dy`, with
/// `dx = (x_max - x_min) / width`. The nodes tile the torus without repeating
/// the wrapped edge, and the domain origin lands on a node whenever it is a
/// multiple of the spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub width: usize,
    pub height: usize,
    pub domain: Domain2D,
}

impl GridSpec {
    pub fn new(width: usize, height: usize, domain: Domain2D) -> Result<Self> {
        let spec = Self { width, height, domain };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width < 3 || self.height < 3 {
            return Err(Error::InvalidGrid(format!(
                "grid must be at least 3x3, got {}x{}",
                self.width, self.height
            )));
        }
        self.domain.validate()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, cell: Cell) -> usize {
        cell.row * self.width + cell.col
    }

    #[inline]
    pub fn cell(&self, index: usize) -> Cell {
        Cell::new(index % self.width, index / self.width)
    }

    pub fn dx(&self) -> f64 {
        (self.domain.x_max - self.domain.x_min) / self.width as f64
    }

    pub fn dy(&self) -> f64 {
        (self.domain.y_max - self.domain.y_min) / self.height as f64
    }

    /// Function-space coordinate sampled by `cell`.
    pub fn coord(&self, cell: Cell) -> (f64, f64) {
        let x = self.domain.x_min + cell.col as f64 * self.dx();
        let y = self.domain.y_min + (self.height - 1 - cell.row) as f64 * self.dy();
        (x, y)
    }

    /// Cell whose node is nearest to `(x, y)`, wrapped onto the torus.
    pub fn cell_at(&self, x: f64, y: f64) -> Cell {
        let col = ((x - self.domain.x_min) / self.dx()).round() as i64;
        let up = ((y - self.domain.y_min) / self.dy()).round() as i64;
        let row = self.height as i64 - 1 - up;
        self.wrap(col, row)
    }

    /// Wraps signed lattice coordinates onto the torus.
    #[inline]
    pub fn wrap(&self, col: i64, row: i64) -> Cell {
        Cell::new(
            col.rem_euclid(self.width as i64) as usize,
            row.rem_euclid(self.height as i64) as usize,
        )
    }

    /// Moves `cell` by `(dcol, drow)` with toroidal wrap.
    #[inline]
    pub fn offset(&self, cell: Cell, dcol: i64, drow: i64) -> Cell {
        self.wrap(cell.col as i64 + dcol, cell.row as i64 + drow)
    }
}

/// Cached altitudes for one environment state.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeGrid {
    spec: GridSpec,
    values: Vec<f64>,
    z_min: f64,
    z_max: f64,
    argmin: Vec<usize>,
    argmax: Vec<usize>,
}

impl LandscapeGrid {
    /// Builds a grid from row-major values.
    pub fn from_values(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        spec.validate()?;
        if values.len() != spec.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} values, got {}",
                spec.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite altitude at cell {i}")));
        }
        let z_min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let z_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let argmin = (0..values.len())
            .filter(|&i| values[i] - z_min <= TIE_TOLERANCE)
            .collect();
        let argmax = (0..values.len())
            .filter(|&i| z_max - values[i] <= TIE_TOLERANCE)
            .collect();
        Ok(Self { spec, values, z_min, z_max, argmin, argmax })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn value(&self, cell: Cell) -> f64 {
        self.values[self.spec.index(cell)]
    }

    #[inline]
    pub fn value_at(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn z_min(&self) -> f64 {
        self.z_min
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    /// Row-major indices attaining the minimum, ascending.
    pub fn argmin(&self) -> &[usize] {
        &self.argmin
    }

    /// Row-major indices attaining the maximum, ascending.
    pub fn argmax(&self) -> &[usize] {
        &self.argmax
    }

    /// Writes the grid as CSV, one row of cells per line, north first.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        for row in self.values.chunks(self.spec.width) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// Evaluates `base` at every cell under the current environment offset.
pub fn rebuild_grid(
    spec: &GridSpec,
    base: &BaseFunction,
    env: &EnvironmentState,
    exec: Execution,
) -> Result<LandscapeGrid> {
    spec.validate()?;
    let offset = env.offset;
    let values = map_indexed(exec, spec.len(), |i| {
        let (x, y) = spec.coord(spec.cell(i));
        base.eval(x, y, offset)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    LandscapeGrid::from_values(*spec, values)
}
