use serde::{Deserialize, Serialize};

/// Which diagonal block a value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    Block1,
    Block2,
}

impl Block {
    pub fn other(self) -> Self {
        match self {
            Block::Block1 => Block::Block2,
            Block::Block2 => Block::Block1,
        }
    }
}

/// Real values sorted in descending order, optionally tagged with the block
/// each value came from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Vec<Block>>,
}

impl Spectrum {
    /// Sorts `values` descending. The sort is stable, so equal values keep
    /// their input order.
    ///
    /// # Panics
    /// If any value is NaN.
    pub fn from_unsorted(values: Vec<f64>) -> Self {
        let order = descending_order(&values);
        Self {
            values: order.iter().map(|&k| values[k]).collect(),
            provenance: None,
        }
    }

    /// Wraps values that are already descending. Returns `None` otherwise.
    pub fn from_descending(values: Vec<f64>) -> Option<Self> {
        values.windows(2).all(|w| w[0] >= w[1]).then_some(Self {
            values,
            provenance: None,
        })
    }

    pub(crate) fn tagged(values: Vec<f64>, provenance: Vec<Block>) -> Self {
        debug_assert_eq!(values.len(), provenance.len());
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        Self {
            values,
            provenance: Some(provenance),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> Option<&[Block]> {
        self.provenance.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn smallest(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Indices that sort `values` descending, stable on ties.
pub(crate) fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .partial_cmp(&values[a])
            .expect("spectrum values must not be NaN")
    });
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_descending_and_keeps_tie_order() {
        let s = Spectrum::from_unsorted(vec![1.0, 3.0, 2.0]);
        assert_eq!(s.values(), &[3.0, 2.0, 1.0]);
        assert_eq!(descending_order(&[2.0, 5.0, 2.0, 2.0]), vec![1, 0, 2, 3]);
    }

    #[test]
    fn from_descending_rejects_ascending() {
        assert!(Spectrum::from_descending(vec![1.0, 2.0]).is_none());
        assert!(Spectrum::from_descending(vec![2.0, 2.0, -1.0]).is_some());
    }
}
