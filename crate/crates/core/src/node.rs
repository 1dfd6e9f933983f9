//! The eleven supported fabrication nodes.

use core::fmt;

use crate::error::{Error, Result};

/// A fabrication node, 130 nm through 7 nm.
///
/// Variant order runs from the oldest (largest) node to the newest, so the
/// derived `Ord` sorts by generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TechNode {
    N130,
    N90,
    N65,
    N45,
    N40,
    N32,
    N28,
    N22,
    N14,
    N10,
    N7,
}

impl TechNode {
    /// All supported nodes, oldest first.
    pub const ALL: [TechNode; 11] = [
        TechNode::N130,
        TechNode::N90,
        TechNode::N65,
        TechNode::N45,
        TechNode::N40,
        TechNode::N32,
        TechNode::N28,
        TechNode::N22,
        TechNode::N14,
        TechNode::N10,
        TechNode::N7,
    ];

    /// The trend baseline. Every relative trend stores 1.0 here.
    pub const BASELINE: TechNode = TechNode::N130;

    /// Feature size in nanometres.
    pub fn feature_nm(self) -> f64 {
        match self {
            TechNode::N130 => 130.0,
            TechNode::N90 => 90.0,
            TechNode::N65 => 65.0,
            TechNode::N45 => 45.0,
            TechNode::N40 => 40.0,
            TechNode::N32 => 32.0,
            TechNode::N28 => 28.0,
            TechNode::N22 => 22.0,
            TechNode::N14 => 14.0,
            TechNode::N10 => 10.0,
            TechNode::N7 => 7.0,
        }
    }

    /// Generation index used as the fit abscissa.
    ///
    /// Full generations count up in integers from 130 nm; the half nodes
    /// 40 nm and 28 nm sit midway between their neighbours.
    pub fn gen_index(self) -> f64 {
        match self {
            TechNode::N130 => 0.0,
            TechNode::N90 => 1.0,
            TechNode::N65 => 2.0,
            TechNode::N45 => 3.0,
            TechNode::N40 => 3.5,
            TechNode::N32 => 4.0,
            TechNode::N28 => 4.5,
            TechNode::N22 => 5.0,
            TechNode::N14 => 6.0,
            TechNode::N10 => 7.0,
            TechNode::N7 => 8.0,
        }
    }

    /// Whether this is one of the half nodes (40 nm, 28 nm).
    pub fn is_half_node(self) -> bool {
        matches!(self, TechNode::N40 | TechNode::N28)
    }

    /// Looks up the node with exactly this feature size.
    pub fn from_nm(nm: f64) -> Result<TechNode> {
        TechNode::ALL
            .iter()
            .copied()
            .find(|n| n.feature_nm() == nm)
            .ok_or(Error::UnsupportedNode { nm })
    }
}

impl fmt::Display for TechNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nm", self.feature_nm())
    }
}
