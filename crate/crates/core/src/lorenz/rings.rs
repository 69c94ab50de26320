use serde::{Deserialize, Serialize};

use super::braid::{williams_braid, y_vector, LorenzBraid};
use super::BraidError;
use crate::coding::CyclicWord;

/// Inclusive range of overcrossing strand indices `lo..=hi` enclosed by one
/// vertical ring. Empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrandRange {
    pub lo: u64,
    pub hi: u64,
}

impl StrandRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }
}

/// Vertical rings around the two bands of the split template.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPartition {
    pub x_rings: Vec<StrandRange>,
    pub y_rings: Vec<StrandRange>,
    /// Last group (1-based) containing a strand that stays in its band.
    pub m_x: Option<usize>,
    pub m_y: Option<usize>,
    pub trip: usize,
}

impl RingPartition {
    pub fn total_rings(&self) -> usize {
        self.x_rings.len() + self.y_rings.len()
    }
}

/// Rings for one band. A ring encloses the strands of one parallel group for
/// groups before `m`; group `m` is cut after `⌊s_m / r_m⌋·r_m` strands when
/// `s_m > r_m`; one last ring takes the remaining strands up to `p`.
fn band_rings(braid: &LorenzBraid) -> (Option<usize>, Vec<StrandRange>) {
    let p = braid.p() as u64;
    let d = braid.d();
    let groups = braid.groups();
    let mut bounds = Vec::with_capacity(groups.len() + 1);
    bounds.push(0u64);
    for &(_, s) in groups {
        bounds.push(bounds[bounds.len() - 1] + s);
    }
    let stays = |i: u64| i + d[(i - 1) as usize] <= p;
    let m = (1..=groups.len())
        .rev()
        .find(|&j| (bounds[j - 1] + 1..=bounds[j]).any(stays));
    let Some(m) = m else {
        return (None, vec![StrandRange { lo: 1, hi: p }]);
    };
    let mut rings: Vec<StrandRange> = (1..m)
        .map(|j| StrandRange {
            lo: bounds[j - 1] + 1,
            hi: bounds[j],
        })
        .collect();
    let (r, s) = groups[m - 1];
    let cut = if s <= r {
        bounds[m]
    } else {
        bounds[m - 1] + (s / r) * r
    };
    rings.push(StrandRange {
        lo: bounds[m - 1] + 1,
        hi: cut,
    });
    rings.push(StrandRange { lo: cut + 1, hi: p });
    (Some(m), rings)
}

/// Ring partition of both bands, checked against the `2t + 2` bound.
pub fn ring_partition(w: &CyclicWord) -> Result<RingPartition, BraidError> {
    let (_, x_braid) = williams_braid(w)?;
    let y_braid = y_vector(w)?;
    let (m_x, x_rings) = band_rings(&x_braid);
    let (m_y, y_rings) = band_rings(&y_braid);
    let partition = RingPartition {
        x_rings,
        y_rings,
        m_x,
        m_y,
        trip: x_braid.trip_number(),
    };
    let rings = partition.total_rings();
    if rings > 2 * partition.trip + 2 {
        return Err(BraidError::RingBoundViolated {
            rings,
            trip: partition.trip,
        });
    }
    Ok(partition)
}

/// `(n − 1, 5n + 2)`: self-intersections of the projected curve and the
/// intersection budget entering the `8 v₃ (5n + 2)` volume bound.
pub fn intersection_budget(n: u64) -> (u64, u64) {
    assert!(n >= 1, "period must be positive");
    (n - 1, 5 * n + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::parse_word;

    fn r(lo: u64, hi: u64) -> StrandRange {
        StrandRange { lo, hi }
    }

    #[test]
    fn xy_has_one_ring_per_band() {
        let part = ring_partition(&parse_word("XY").unwrap()).unwrap();
        assert_eq!(part.m_x, None);
        assert_eq!(part.x_rings, vec![r(1, 1)]);
        assert_eq!(part.y_rings.len(), 1);
        assert_eq!(part.total_rings(), 2);
        assert!(part.total_rings() <= 2 * part.trip + 2);
    }

    #[test]
    fn running_example_rings() {
        // d = (1,1,2,4,5): strands 1,2,3 end inside the X band; group 2 = {3}.
        let part = ring_partition(&parse_word("X^4Y^3XY^2").unwrap()).unwrap();
        assert_eq!(part.m_x, Some(2));
        assert_eq!(part.x_rings, vec![r(1, 2), r(3, 3), r(4, 5)]);
        assert!(part.total_rings() <= 6);
    }

    #[test]
    fn split_group_with_empty_tail() {
        // X^2Y: d = (1,1), one group with s = 2 > r = 1 that ends at p.
        let part = ring_partition(&parse_word("X^2Y").unwrap()).unwrap();
        assert_eq!(part.m_x, Some(1));
        assert_eq!(part.x_rings, vec![r(1, 2), r(3, 2)]);
        assert!(part.x_rings[1].is_empty());
        assert_eq!(part.x_rings[1].len(), 0);
    }

    #[test]
    fn figure_family_ring_count() {
        let w = parse_word("X^11YX^10YX^8YX^5YXY").unwrap();
        let part = ring_partition(&w).unwrap();
        assert_eq!(part.trip, 5);
        assert!(part.total_rings() <= 12);
    }

    #[test]
    fn budgets() {
        assert_eq!(intersection_budget(1), (0, 7));
        assert_eq!(intersection_budget(5), (4, 27));
        assert_eq!(intersection_budget(10), (9, 52));
    }
}
