//! 8-bit grayscale rasters written as binary PGM.

use std::path::Path;

use crate::error::{CliError, Result};

/// Row-major 8-bit image; row 0 is the northern edge of the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl Raster {
    /// Binary PGM (P5) with maxval 255.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn from_pgm(bytes: &[u8]) -> Option<Self> {
        let mut fields = Vec::new();
        let mut pos = 0;
        while fields.len() < 4 {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return None;
            }
            fields.push(std::str::from_utf8(&bytes[start..pos]).ok()?);
        }
        if fields[0] != "P5" || fields[3] != "255" {
            return None;
        }
        let width: usize = fields[1].parse().ok()?;
        let height: usize = fields[2].parse().ok()?;
        let pixels = bytes.get(pos + 1..)?.to_vec();
        (pixels.len() == width * height).then_some(Self { width, height, pixels })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_pgm()).map_err(|e| CliError::io(path, e))
    }
}

/// Linear map from `[0, max]` to `[255, 0]`: no pheromone is white, the
/// field maximum is black. An empty field renders all white.
pub fn render_pheromone(values: &[f64], width: usize, height: usize) -> Raster {
    let max = values.iter().copied().fold(0.0, f64::max);
    let pixels = values
        .iter()
        .map(|&v| {
            if max > 0.0 {
                (255.0 * (1.0 - v.max(0.0) / max)).round().clamp(0.0, 255.0) as u8
            } else {
                255
            }
        })
        .collect();
    Raster { width, height, pixels }
}

/// Occupied cells black, free cells white.
pub fn render_agents(occupancy: &[bool], width: usize, height: usize) -> Raster {
    let pixels = occupancy.iter().map(|&o| if o { 0 } else { 255 }).collect();
    Raster { width, height, pixels }
}
