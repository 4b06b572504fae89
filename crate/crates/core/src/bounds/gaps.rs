use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Block, Spectrum};

/// Gaps between the merged spectrum of `H1 (+) H2` and the opposite block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapProfile {
    /// Merged spectrum of both blocks, descending, tagged by block.
    pub merged: Spectrum,
    /// Block each merged value was taken from. Differs from the provenance
    /// tag only for values shared by both blocks, which are tagged `Block1`.
    pub origin: Vec<Block>,
    /// `eta_i`: distance from the i-th merged value to the other block's
    /// spectrum.
    pub eta_i: Vec<f64>,
    /// `min_i eta_i`.
    pub eta: f64,
}

impl GapProfile {
    pub fn provenance(&self) -> &[Block] {
        self.merged.provenance().expect("merged spectra are tagged")
    }

    /// Position in the merged spectrum of the `k`-th value of `block`.
    pub fn position_of(&self, block: Block, k: usize) -> Option<usize> {
        self.origin
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == block)
            .nth(k)
            .map(|(i, _)| i)
    }
}

/// `min |mu1 - mu2|` over both spectra, found by walking the two descending
/// sequences together.
pub fn spectral_gap(s1: &Spectrum, s2: &Spectrum) -> Result<f64> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let (a, b) = (s1.values(), s2.values());
    let (mut i, mut j) = (0, 0);
    let mut best = f64::INFINITY;
    while i < a.len() && j < b.len() {
        best = best.min((a[i] - b[j]).abs());
        if a[i] >= b[j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    Ok(best)
}

/// Stable descending merge of two spectra: on ties, values of `s1` come
/// first. Each value is tagged with the block it came from, except that a
/// value present in both spectra is tagged `Block1`.
pub fn merge_spectra(s1: &Spectrum, s2: &Spectrum) -> Spectrum {
    merge_with_origin(s1, s2).0
}

fn merge_with_origin(s1: &Spectrum, s2: &Spectrum) -> (Spectrum, Vec<Block>) {
    let (a, b) = (s1.values(), s2.values());
    let mut values = Vec::with_capacity(a.len() + b.len());
    let mut tags = Vec::with_capacity(a.len() + b.len());
    let mut origin = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] >= b[j]) {
            values.push(a[i]);
            tags.push(Block::Block1);
            origin.push(Block::Block1);
            i += 1;
        } else {
            values.push(b[j]);
            tags.push(if contains(a, b[j]) {
                Block::Block1
            } else {
                Block::Block2
            });
            origin.push(Block::Block2);
            j += 1;
        }
    }
    (Spectrum::tagged(values, tags), origin)
}

/// Merges `s1` and `s2` and computes `eta_i` for every merged index.
///
/// ```
/// use specbound::bounds::per_index_gaps;
/// use specbound::linalg::Spectrum;
///
/// let g = per_index_gaps(
///     &Spectrum::from_unsorted(vec![4.0, 0.0]),
///     &Spectrum::from_unsorted(vec![1.0]),
/// );
/// assert_eq!(g.merged.values(), &[4.0, 1.0, 0.0]);
/// assert_eq!(g.eta_i, vec![3.0, 1.0, 1.0]);
/// assert_eq!(g.eta, 1.0);
/// ```
pub fn per_index_gaps(s1: &Spectrum, s2: &Spectrum) -> GapProfile {
    let (merged, origin) = merge_with_origin(s1, s2);
    let eta_i: Vec<f64> = merged
        .values()
        .iter()
        .zip(&origin)
        .map(|(&v, tag)| {
            let other = match tag {
                Block::Block1 => s2.values(),
                Block::Block2 => s1.values(),
            };
            distance_to_sorted(v, other)
        })
        .collect();
    let eta = eta_i.iter().copied().fold(f64::INFINITY, f64::min);
    GapProfile {
        merged,
        origin,
        eta_i,
        eta,
    }
}

fn contains(descending: &[f64], v: f64) -> bool {
    distance_to_sorted(v, descending) == 0.0
}

/// Distance from `v` to the nearest entry of a descending slice; infinite
/// for an empty slice.
pub(crate) fn distance_to_sorted(v: f64, descending: &[f64]) -> f64 {
    // first index whose value is < v
    let k = descending.partition_point(|&x| x >= v);
    let mut best = f64::INFINITY;
    if k > 0 {
        best = best.min(descending[k - 1] - v);
    }
    if k < descending.len() {
        best = best.min(v - descending[k]);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Block::{Block1, Block2};

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::from_unsorted(v.to_vec())
    }

    #[test]
    fn spectral_gap_examples() {
        assert_eq!(
            spectral_gap(&spec(&[5.0, 1.0]), &spec(&[3.0])).unwrap(),
            2.0
        );
        assert_eq!(spectral_gap(&spec(&[1.0]), &spec(&[1.0])).unwrap(), 0.0);
        assert!(matches!(
            spectral_gap(&spec(&[]), &spec(&[1.0])),
            Err(Error::EmptySpectrum)
        ));
    }

    #[test]
    fn per_index_examples() {
        let g = per_index_gaps(&spec(&[5.0, 1.0]), &spec(&[3.0]));
        assert_eq!(g.merged.values(), &[5.0, 3.0, 1.0]);
        assert_eq!(g.provenance(), &[Block1, Block2, Block1]);
        assert_eq!(g.eta_i, vec![2.0, 2.0, 2.0]);
        assert_eq!(g.eta, 2.0);

        let shared = per_index_gaps(&spec(&[1.0]), &spec(&[1.0]));
        assert_eq!(shared.eta_i, vec![0.0, 0.0]);
        assert_eq!(shared.eta, 0.0);
        assert_eq!(shared.provenance(), &[Block1, Block1]);
        assert_eq!(shared.origin, vec![Block1, Block2]);
    }

    #[test]
    fn ties_put_block1_first() {
        let g = per_index_gaps(&spec(&[2.0, 0.0]), &spec(&[2.0, 1.0]));
        assert_eq!(g.merged.values(), &[2.0, 2.0, 1.0, 0.0]);
        assert_eq!(g.position_of(Block1, 1), Some(3));
        assert_eq!(g.eta_i, vec![0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn distance_to_sorted_edges() {
        assert_eq!(distance_to_sorted(5.0, &[3.0, 1.0]), 2.0);
        assert_eq!(distance_to_sorted(-1.0, &[3.0, 1.0]), 2.0);
        assert_eq!(distance_to_sorted(2.5, &[3.0, 1.0]), 0.5);
        assert_eq!(distance_to_sorted(2.5, &[]), f64::INFINITY);
    }
}
