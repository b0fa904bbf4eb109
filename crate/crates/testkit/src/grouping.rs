//! Brute-force group detection.
//!
//! Candidate shapes are generated from cell coordinates rather than listed,
//! windows are built as explicit rank sets, and every qualifying candidate is
//! collected before the priority rules pick one.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleGroup {
    pub size: usize,
    pub cells: Vec<usize>,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    High,
    Low,
}

const NAMES: [&str; 9] = [
    "top-left",
    "top-center",
    "top-right",
    "middle-left",
    "center",
    "middle-right",
    "bottom-left",
    "bottom-center",
    "bottom-right",
];

fn idx(row: usize, col: usize) -> usize {
    row * 3 + col
}

/// All candidate shapes of a size, in enumeration order, with labels.
pub fn shapes(size: usize) -> Vec<(Vec<usize>, String)> {
    let mut out = Vec::new();
    match size {
        4 => {
            for top in 0..2 {
                for left in 0..2 {
                    let cells = vec![
                        idx(top, left),
                        idx(top, left + 1),
                        idx(top + 1, left),
                        idx(top + 1, left + 1),
                    ];
                    let v = if top == 0 { "top" } else { "bottom" };
                    let h = if left == 0 { "left" } else { "right" };
                    out.push((cells, format!("{v}-{h} corner")));
                }
            }
        }
        3 => {
            let rows = ["top", "middle band", "bottom"];
            for (r, name) in rows.iter().enumerate() {
                out.push(((0..3).map(|c| idx(r, c)).collect(), name.to_string()));
            }
            let cols = ["left side", "middle column", "right side"];
            for (c, name) in cols.iter().enumerate() {
                out.push(((0..3).map(|r| idx(r, c)).collect(), name.to_string()));
            }
        }
        2 => {
            for (a, name_a) in NAMES.iter().enumerate() {
                for (b, name_b) in NAMES.iter().enumerate().skip(a + 1) {
                    let (ra, ca, rb, cb) = (a / 3, a % 3, b / 3, b % 3);
                    let manhattan = ra.abs_diff(rb) + ca.abs_diff(cb);
                    if manhattan == 1 {
                        out.push((vec![a, b], format!("{name_a} and {name_b} area")));
                    }
                }
            }
        }
        _ => panic!("no shapes of size {size}"),
    }
    out
}

/// The admissible rank sets for one polarity and size.
fn window(polarity: Polarity, size: usize, k: usize, symmetric: bool) -> BTreeSet<usize> {
    let bottom_four: BTreeSet<usize> = (1..=k).rev().take(4).collect();
    match polarity {
        Polarity::High => (1..=4).collect(),
        Polarity::Low if size == 4 || symmetric => bottom_four,
        Polarity::Low => (5..=8).collect(),
    }
}

fn best_for(ranks: &[Option<u8>; 9], polarity: Polarity, symmetric: bool) -> Option<OracleGroup> {
    let k = ranks.iter().filter(|r| r.is_some()).count();
    let extreme = if polarity == Polarity::High { 1 } else { k };
    for size in [4, 3, 2] {
        let win = window(polarity, size, k, symmetric);
        let qualifying: Vec<(usize, Vec<usize>, String)> = shapes(size)
            .into_iter()
            .enumerate()
            .filter_map(|(order, (cells, label))| {
                let got: Option<BTreeSet<usize>> = cells
                    .iter()
                    .map(|&c| ranks[c].map(|r| r as usize))
                    .collect();
                let got = got?;
                let ok = if size == 4 {
                    got == win && win.len() == 4
                } else {
                    got.is_subset(&win)
                };
                ok.then_some((order, cells, label))
            })
            .collect();
        if qualifying.is_empty() {
            continue;
        }
        let holds_extreme =
            |cells: &Vec<usize>| cells.iter().any(|&c| ranks[c] == Some(extreme as u8));
        let chosen = qualifying
            .iter()
            .min_by_key(|(order, cells, _)| (!holds_extreme(cells), *order))
            .unwrap();
        return Some(OracleGroup {
            size,
            cells: chosen.1.clone(),
            label: chosen.2.clone(),
        });
    }
    None
}

/// `(high, low)` groups for a rank layout.
pub fn brute_force_groups(
    ranks: &[Option<u8>; 9],
    symmetric: bool,
) -> (Option<OracleGroup>, Option<OracleGroup>) {
    (
        best_for(ranks, Polarity::High, symmetric),
        best_for(ranks, Polarity::Low, symmetric),
    )
}

/// Random rank layout with `k` ranked cells placed uniformly.
pub fn random_ranks<R: rand::Rng>(rng: &mut R, k: usize) -> [Option<u8>; 9] {
    use rand::seq::SliceRandom;
    let mut cells: Vec<usize> = (0..9).collect();
    cells.shuffle(rng);
    let mut ranks = [None; 9];
    for (rank, &cell) in cells.iter().take(k).enumerate() {
        ranks[cell] = Some(rank as u8 + 1);
    }
    ranks
}
