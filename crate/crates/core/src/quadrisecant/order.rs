//! Cyclic-order classes of trisecants and quadrisecants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::oriented_gap;

/// Dihedral order class of a quadrisecant `abcd` along the knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrderType {
    /// knot order `abcd`
    Simple,
    /// knot order `abdc`
    Flipped,
    /// knot order `acbd`
    Alternating,
}

impl OrderType {
    pub const ALL: [OrderType; 3] = [OrderType::Simple, OrderType::Flipped, OrderType::Alternating];

    /// Lexicographically least representative of the class.
    pub fn pattern(&self) -> &'static str {
        match self {
            OrderType::Simple => "abcd",
            OrderType::Flipped => "abdc",
            OrderType::Alternating => "acbd",
        }
    }
}

impl std::fmt::Display for OrderType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            OrderType::Simple => "simple",
            OrderType::Flipped => "flipped",
            OrderType::Alternating => "alternating",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrisecantClass {
    Direct,
    Reversed,
}

fn check_distinct(coords: &[f64], total_length: f64) -> Result<()> {
    if !(total_length > 0.0) {
        return Err(Error::Domain {
            function: "classify",
            value: total_length,
            domain: "total_length > 0",
        });
    }
    for (i, a) in coords.iter().enumerate() {
        for b in &coords[i + 1..] {
            let gap = oriented_gap(*a, *b, total_length);
            if gap.min(total_length - gap) <= 1e-12 * total_length {
                return Err(Error::CoincidentCoordinates);
            }
        }
    }
    Ok(())
}

/// Classifies a quadrisecant from the arclength coordinates of its points,
/// given in order along the line.
pub fn classify_order(s_a: f64, s_b: f64, s_c: f64, s_d: f64, total_length: f64) -> Result<OrderType> {
    let coords = [s_a, s_b, s_c, s_d];
    check_distinct(&coords, total_length)?;
    let mut cyclic = [0usize, 1, 2, 3];
    cyclic.sort_by(|&i, &j| coords[i].rem_euclid(total_length).total_cmp(&coords[j].rem_euclid(total_length)));
    // In a dihedral 4-cycle each label has exactly one non-neighbour; which
    // label sits opposite `a` determines the class.
    let pos_a = cyclic.iter().position(|&x| x == 0).expect("a present");
    Ok(match cyclic[(pos_a + 2) % 4] {
        2 => OrderType::Simple,
        3 => OrderType::Flipped,
        _ => OrderType::Alternating,
    })
}

/// `Direct` iff `b` lies on the oriented arc from `a` to `c`.
pub fn classify_trisecant(s_a: f64, s_b: f64, s_c: f64, total_length: f64) -> Result<TrisecantClass> {
    check_distinct(&[s_a, s_b, s_c], total_length)?;
    if oriented_gap(s_a, s_b, total_length) < oriented_gap(s_a, s_c, total_length) {
        Ok(TrisecantClass::Direct)
    } else {
        Ok(TrisecantClass::Reversed)
    }
}
