use super::{Sense, SwarmParams};

/// Pheromone concentration per cell, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneField {
    values: Vec<f64>,
}

impl PheromoneField {
    pub fn zeros(len: usize) -> Self {
        Self { values: vec![0.0; len] }
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| *v >= 0.0));
        Self { values }
    }

    #[inline]
    pub fn get(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    #[inline]
    pub fn add(&mut self, index: usize, amount: f64) {
        self.values[index] += amount;
    }
}

/// Scales every cell by `1 - k`.
pub fn evaporate(field: &mut PheromoneField, k: f64) {
    let keep = 1.0 - k;
    for v in &mut field.values {
        *v *= keep;
    }
}

/// Best and worst altitudes the colony has stood on since the last reset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltitudeNormalizer {
    z_min: f64,
    z_max: f64,
}

impl Default for AltitudeNormalizer {
    fn default() -> Self {
        Self { z_min: f64::INFINITY, z_max: f64::NEG_INFINITY }
    }
}

impl AltitudeNormalizer {
    pub fn observe(&mut self, z: f64) {
        self.z_min = self.z_min.min(z);
        self.z_max = self.z_max.max(z);
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    pub fn is_empty(&self) -> bool {
        self.z_min > self.z_max
    }

    /// `(z_min, z_max)` once anything was observed.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        (!self.is_empty()).then_some((self.z_min, self.z_max))
    }

    /// `|z_max - z_min|`, zero when empty.
    pub fn span(&self) -> f64 {
        self.bounds().map_or(0.0, |(lo, hi)| (hi - lo).abs())
    }

    /// `|z - z_max|` when minimizing, `|z - z_min|` when maximizing; zero
    /// when nothing was observed yet.
    pub fn distance(&self, z: f64, sense: Sense) -> f64 {
        match (self.bounds(), sense) {
            (None, _) => 0.0,
            (Some((_, hi)), Sense::Minimize) => (z - hi).abs(),
            (Some((lo, _)), Sense::Maximize) => (z - lo).abs(),
        }
    }

    /// [`distance`](Self::distance) as a fraction of the span, zero for a
    /// degenerate span.
    pub fn ratio(&self, z: f64, sense: Sense) -> f64 {
        let span = self.span();
        if span <= 0.0 {
            return 0.0;
        }
        (self.distance(z, sense) / span).clamp(0.0, 1.0)
    }
}

/// Pheromone laid by an ant standing at altitude `z`:
/// `eta + p * ratio(z)`.
pub fn deposit_amount(z: f64, normalizer: &AltitudeNormalizer, params: &SwarmParams) -> f64 {
    params.eta + params.deposit_gain * normalizer.ratio(z, params.sense)
}
