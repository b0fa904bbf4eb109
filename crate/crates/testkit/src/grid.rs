//! Per-cell scan over explicit cell rectangles.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCell {
    pub count: usize,
    pub mean: Option<f64>,
    pub rank: Option<u8>,
}

/// Does `(lon, lat)` belong to cell `(row, col)` of `rect = [w, s, e, n]`?
/// Cells own their west and north edges; the rectangle's east and south
/// edges belong to the last column and row.
fn in_cell(lon: f64, lat: f64, rect: [f64; 4], row: usize, col: usize) -> bool {
    let [w, s, e, n] = rect;
    if lon < w || lon > e || lat < s || lat > n {
        return false;
    }
    let cw = (e - w) / 3.0;
    let ch = (n - s) / 3.0;
    let x0 = w + col as f64 * cw;
    let x1 = w + (col + 1) as f64 * cw;
    let y_top = n - row as f64 * ch;
    let y_bot = n - (row + 1) as f64 * ch;
    let x_ok = lon >= x0 && (lon < x1 || col == 2);
    let y_ok = lat <= y_top && (lat > y_bot || row == 2);
    x_ok && y_ok
}

/// For each of the nine cells, scans every `(lon, lat, value)` point.
/// Rank = 1 + number of cells with a larger mean, or an equal mean and a
/// lower index.
pub fn naive_grid(points: &[(f64, f64, f64)], rect: [f64; 4]) -> [OracleCell; 9] {
    let mut cells = [OracleCell {
        count: 0,
        mean: None,
        rank: None,
    }; 9];
    for (i, cell) in cells.iter_mut().enumerate() {
        let (row, col) = (i / 3, i % 3);
        let members: Vec<f64> = points
            .iter()
            .filter(|(x, y, _)| in_cell(*x, *y, rect, row, col))
            .map(|p| p.2)
            .collect();
        cell.count = members.len();
        if !members.is_empty() {
            cell.mean = Some(members.iter().sum::<f64>() / members.len() as f64);
        }
    }
    let means: Vec<Option<f64>> = cells.iter().map(|c| c.mean).collect();
    for i in 0..9 {
        let Some(mi) = means[i] else { continue };
        let better = (0..9)
            .filter(|&j| match means[j] {
                Some(mj) => mj > mi || (mj == mi && j < i),
                None => false,
            })
            .count();
        cells[i].rank = Some(better as u8 + 1);
    }
    cells
}
