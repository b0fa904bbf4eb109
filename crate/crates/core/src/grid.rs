//! 3x3 grid abstraction: bin features by centroid, average per cell, rank.

use serde::Serialize;

use crate::geometry::{cell_index_of_point, GeoFeature, GeoRect};

pub const CELL_COUNT: usize = 9;

/// Rank of each cell (1 = highest mean), `None` for empty cells.
pub type CellRanks = [Option<u8>; CELL_COUNT];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct GridCell {
    pub count: usize,
    pub mean: Option<f64>,
    pub rank: Option<u8>,
}

/// Per-cell statistics over an analysis rectangle. Cells are row-major from
/// the north-west corner.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    rect: GeoRect,
    cells: [GridCell; CELL_COUNT],
}

impl GridSummary {
    pub fn rect(&self) -> GeoRect {
        self.rect
    }

    pub fn cells(&self) -> &[GridCell; CELL_COUNT] {
        &self.cells
    }

    pub fn non_empty_count(&self) -> usize {
        self.cells.iter().filter(|c| c.count > 0).count()
    }

    pub fn ranks(&self) -> CellRanks {
        self.cells.map(|c| c.rank)
    }

    /// Number of features that landed in some cell.
    pub fn total_count(&self) -> usize {
        self.cells.iter().map(|c| c.count).sum()
    }
}

/// Ranks the given cell means, best first. Equal means go to the lower index.
pub fn rank_means(means: &[Option<f64>; CELL_COUNT]) -> CellRanks {
    let mut order: Vec<(usize, f64)> = means
        .iter()
        .enumerate()
        .filter_map(|(i, m)| m.map(|m| (i, m)))
        .collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut ranks = [None; CELL_COUNT];
    for (pos, (idx, _)) in order.into_iter().enumerate() {
        ranks[idx] = Some(pos as u8 + 1);
    }
    ranks
}

pub fn summarize_grid<'a, I>(features: I, rect: GeoRect) -> GridSummary
where
    I: IntoIterator<Item = &'a GeoFeature>,
{
    let mut sums = [0.0f64; CELL_COUNT];
    let mut counts = [0usize; CELL_COUNT];
    for f in features {
        if let Some(i) = cell_index_of_point(f.centroid(), rect) {
            sums[i] += f.value();
            counts[i] += 1;
        }
    }
    let mut means = [None; CELL_COUNT];
    for i in 0..CELL_COUNT {
        if counts[i] > 0 {
            means[i] = Some(sums[i] / counts[i] as f64);
        }
    }
    let ranks = rank_means(&means);
    let mut cells = [GridCell::default(); CELL_COUNT];
    for i in 0..CELL_COUNT {
        cells[i] = GridCell {
            count: counts[i],
            mean: means[i],
            rank: ranks[i],
        };
    }
    GridSummary { rect, cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(col: usize, row: usize, value: f64) -> GeoFeature {
        // Unit square for cell (row, col) of the rect (0,0)-(3,3).
        let w = col as f64;
        let s = 2.0 - row as f64;
        GeoFeature::rect(
            format!("{row}-{col}"),
            format!("cell {row},{col}"),
            GeoRect::new(w, s, w + 1.0, s + 1.0).unwrap(),
            value,
        )
        .unwrap()
    }

    fn board() -> GeoRect {
        GeoRect::new(0.0, 0.0, 3.0, 3.0).unwrap()
    }

    #[test]
    fn one_feature_per_cell_descending() {
        let feats: Vec<_> = (0..9)
            .map(|i| square(i % 3, i / 3, 90.0 - 10.0 * i as f64))
            .collect();
        let g = summarize_grid(&feats, board());
        for (i, cell) in g.cells().iter().enumerate() {
            assert_eq!(cell.count, 1);
            assert_eq!(cell.mean, Some(90.0 - 10.0 * i as f64));
            assert_eq!(cell.rank, Some(i as u8 + 1));
        }
        assert_eq!(g.non_empty_count(), 9);
    }

    #[test]
    fn equal_means_tie_break_by_index() {
        let feats = vec![square(0, 0, 10.0), square(0, 0, 20.0), square(2, 2, 15.0)];
        let g = summarize_grid(&feats, board());
        assert_eq!(g.cells()[0].mean, Some(15.0));
        assert_eq!(g.cells()[8].mean, Some(15.0));
        assert_eq!(g.non_empty_count(), 2);
        assert_eq!(g.cells()[0].rank, Some(1));
        assert_eq!(g.cells()[8].rank, Some(2));
        assert_eq!(g.cells()[4], GridCell::default());
    }

    #[test]
    fn empty_input() {
        let g = summarize_grid(&[], board());
        assert_eq!(g.non_empty_count(), 0);
        assert!(g
            .cells()
            .iter()
            .all(|c| c.count == 0 && c.rank.is_none() && c.mean.is_none()));
    }

    #[test]
    fn outside_centroids_are_ignored() {
        let far =
            GeoFeature::rect("x", "X", GeoRect::new(10.0, 10.0, 11.0, 11.0).unwrap(), 1.0).unwrap();
        let g = summarize_grid([&far, &square(1, 1, 5.0)], board());
        assert_eq!(g.total_count(), 1);
        assert_eq!(g.cells()[4].rank, Some(1));
    }
}
