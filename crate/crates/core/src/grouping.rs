//! Detection of high and low groups of adjacent, sequentially ranked cells.
//!
//! Candidate shapes are a closed set: the four 2x2 blocks, the three rows and
//! three columns, and the twelve rook-adjacent pairs. Each shape carries a
//! fixed location label.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::grid::{CellRanks, GridSummary, CELL_COUNT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupingError {
    #[error("group size must be 2, 3 or 4, got {0}")]
    InvalidSize(usize),
    #[error("cells {0:?} are not a candidate group of size {1}")]
    NotACandidate(Vec<usize>, usize),
    #[error("unknown low-window mode '{0}' (expected literal or symmetric)")]
    UnknownMode(String),
}

/// Compass names of the nine cells, row-major.
pub const CELL_NAMES: [&str; CELL_COUNT] = [
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

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSize {
    Two = 2,
    Three = 3,
    Four = 4,
}

impl GroupSize {
    /// Largest first, the order groups are searched in.
    pub const DESCENDING: [GroupSize; 3] = [GroupSize::Four, GroupSize::Three, GroupSize::Two];

    pub fn get(self) -> usize {
        self as usize
    }
}

impl TryFrom<usize> for GroupSize {
    type Error = GroupingError;

    fn try_from(n: usize) -> Result<Self, Self::Error> {
        match n {
            2 => Ok(GroupSize::Two),
            3 => Ok(GroupSize::Three),
            4 => Ok(GroupSize::Four),
            other => Err(GroupingError::InvalidSize(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocationIndicator {
    TopLeftCorner,
    TopRightCorner,
    BottomLeftCorner,
    BottomRightCorner,
    Top,
    MiddleBand,
    Bottom,
    LeftSide,
    MiddleColumn,
    RightSide,
    /// Two rook-adjacent cells, lower index first.
    Pair(u8, u8),
}

impl fmt::Display for LocationIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            LocationIndicator::TopLeftCorner => "top-left corner",
            LocationIndicator::TopRightCorner => "top-right corner",
            LocationIndicator::BottomLeftCorner => "bottom-left corner",
            LocationIndicator::BottomRightCorner => "bottom-right corner",
            LocationIndicator::Top => "top",
            LocationIndicator::MiddleBand => "middle band",
            LocationIndicator::Bottom => "bottom",
            LocationIndicator::LeftSide => "left side",
            LocationIndicator::MiddleColumn => "middle column",
            LocationIndicator::RightSide => "right side",
            LocationIndicator::Pair(a, b) => {
                return write!(
                    f,
                    "{} and {} area",
                    CELL_NAMES[*a as usize], CELL_NAMES[*b as usize]
                )
            }
        };
        f.write_str(label)
    }
}

impl Serialize for LocationIndicator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One candidate shape and its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub cells: &'static [usize],
    pub indicator: LocationIndicator,
}

const BLOCKS: [Candidate; 4] = [
    Candidate {
        cells: &[0, 1, 3, 4],
        indicator: LocationIndicator::TopLeftCorner,
    },
    Candidate {
        cells: &[1, 2, 4, 5],
        indicator: LocationIndicator::TopRightCorner,
    },
    Candidate {
        cells: &[3, 4, 6, 7],
        indicator: LocationIndicator::BottomLeftCorner,
    },
    Candidate {
        cells: &[4, 5, 7, 8],
        indicator: LocationIndicator::BottomRightCorner,
    },
];

const LINES: [Candidate; 6] = [
    Candidate {
        cells: &[0, 1, 2],
        indicator: LocationIndicator::Top,
    },
    Candidate {
        cells: &[3, 4, 5],
        indicator: LocationIndicator::MiddleBand,
    },
    Candidate {
        cells: &[6, 7, 8],
        indicator: LocationIndicator::Bottom,
    },
    Candidate {
        cells: &[0, 3, 6],
        indicator: LocationIndicator::LeftSide,
    },
    Candidate {
        cells: &[1, 4, 7],
        indicator: LocationIndicator::MiddleColumn,
    },
    Candidate {
        cells: &[2, 5, 8],
        indicator: LocationIndicator::RightSide,
    },
];

macro_rules! pair {
    ($a:literal, $b:literal) => {
        Candidate {
            cells: &[$a, $b],
            indicator: LocationIndicator::Pair($a, $b),
        }
    };
}

const PAIRS: [Candidate; 12] = [
    pair!(0, 1),
    pair!(0, 3),
    pair!(1, 2),
    pair!(1, 4),
    pair!(2, 5),
    pair!(3, 4),
    pair!(3, 6),
    pair!(4, 5),
    pair!(4, 7),
    pair!(5, 8),
    pair!(6, 7),
    pair!(7, 8),
];

pub fn candidate_sets(size: GroupSize) -> &'static [Candidate] {
    match size {
        GroupSize::Four => &BLOCKS,
        GroupSize::Three => &LINES,
        GroupSize::Two => &PAIRS,
    }
}

/// Label of a candidate cell set. Cell order in `cells` does not matter.
pub fn indicator_of(cells: &[usize], size: GroupSize) -> Result<LocationIndicator, GroupingError> {
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    candidate_sets(size)
        .iter()
        .find(|c| c.cells == sorted.as_slice())
        .map(|c| c.indicator)
        .ok_or(GroupingError::NotACandidate(cells.to_vec(), size.get()))
}

/// Which ranks a low group of three or two cells may draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LowWindowMode {
    /// Ranks 5 through 8, as written for the smaller groups.
    #[default]
    Literal,
    /// The bottom four ranks `k-3..=k`, mirroring the high window.
    Symmetric,
}

impl FromStr for LowWindowMode {
    type Err = GroupingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(LowWindowMode::Literal),
            "symmetric" => Ok(LowWindowMode::Symmetric),
            other => Err(GroupingError::UnknownMode(other.to_string())),
        }
    }
}

impl fmt::Display for LowWindowMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowWindowMode::Literal => "literal",
            LowWindowMode::Symmetric => "symmetric",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    High,
    Low,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpatialGroup {
    pub polarity: Polarity,
    pub size: usize,
    pub cells: Vec<usize>,
    pub indicator: LocationIndicator,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct PatternResult {
    pub high: Option<SpatialGroup>,
    pub low: Option<SpatialGroup>,
}

/// Inclusive rank window for one polarity and group size.
fn window(polarity: Polarity, size: GroupSize, k: usize, mode: LowWindowMode) -> (usize, usize) {
    match (polarity, size, mode) {
        (Polarity::High, _, _) => (1, 4),
        (Polarity::Low, GroupSize::Four, _) | (Polarity::Low, _, LowWindowMode::Symmetric) => {
            (k.saturating_sub(3).max(1), k)
        }
        (Polarity::Low, _, LowWindowMode::Literal) => (5, 8),
    }
}

fn qualifies(
    ranks: &[usize],
    polarity: Polarity,
    size: GroupSize,
    k: usize,
    mode: LowWindowMode,
) -> bool {
    let (lo, hi) = window(polarity, size, k, mode);
    if size == GroupSize::Four {
        // Four distinct ranks inside a four-wide window must fill it exactly.
        return hi + 1 - lo == 4 && ranks.iter().all(|&r| (lo..=hi).contains(&r));
    }
    ranks.iter().all(|&r| (lo..=hi).contains(&r))
}

fn detect_polarity(
    ranks: &CellRanks,
    polarity: Polarity,
    mode: LowWindowMode,
) -> Option<SpatialGroup> {
    let k = ranks.iter().flatten().count();
    let extreme = match polarity {
        Polarity::High => 1,
        Polarity::Low => k,
    };
    for size in GroupSize::DESCENDING {
        let mut best: Option<&Candidate> = None;
        for cand in candidate_sets(size) {
            let Some(cell_ranks) = cand
                .cells
                .iter()
                .map(|&i| ranks[i].map(usize::from))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            if !qualifies(&cell_ranks, polarity, size, k, mode) {
                continue;
            }
            if cell_ranks.contains(&extreme) {
                best = Some(cand);
                break;
            }
            best.get_or_insert(cand);
        }
        if let Some(cand) = best {
            return Some(SpatialGroup {
                polarity,
                size: size.get(),
                cells: cand.cells.to_vec(),
                indicator: cand.indicator,
            });
        }
    }
    None
}

/// Finds the high and low groups of a rank layout independently.
pub fn detect_groups_in_ranks(ranks: &CellRanks, mode: LowWindowMode) -> PatternResult {
    PatternResult {
        high: detect_polarity(ranks, Polarity::High, mode),
        low: detect_polarity(ranks, Polarity::Low, mode),
    }
}

pub fn detect_groups(grid: &GridSummary, mode: LowWindowMode) -> PatternResult {
    detect_groups_in_ranks(&grid.ranks(), mode)
}
