//! Static descriptors for the exceptional simple Lie algebras.

use super::Family;

/// One row of the component-group table for a fixed involution.
#[derive(Debug, Clone, Copy)]
pub struct StaticTable1Row {
    pub rho: &'static str,
    pub pi0_int: &'static str,
    pub pi0_aut: &'static str,
    pub reps: &'static [(&'static str, u32)],
}

/// Classification data for an exceptional algebra.
#[derive(Debug, Clone, Copy)]
pub struct ExceptionalData {
    pub family: Family,
    pub dim: usize,
    pub rank: usize,
    /// Order of `Aut g / Int g`.
    pub out_order: u32,
    /// Standard involutions with their outer flag.
    pub involutions: &'static [(&'static str, bool)],
    pub table1: &'static [StaticTable1Row],
    /// Out-class representatives (label, order in Out).
    pub out_classes: &'static [(&'static str, u32)],
}

const E6_REPS: &[(&str, u32)] = &[("id", 1), ("rho1", 2)];
const ID_ONLY: &[(&str, u32)] = &[("id", 1)];

pub const E6: ExceptionalData = ExceptionalData {
    family: Family::E6,
    dim: 78,
    rank: 6,
    out_order: 2,
    involutions: &[("rho1", true), ("rho2", false), ("rho3", false), ("rho4", true)],
    table1: &[
        StaticTable1Row { rho: "rho1", pi0_int: "1", pi0_aut: "Z2", reps: E6_REPS },
        StaticTable1Row { rho: "rho2", pi0_int: "1", pi0_aut: "Z2", reps: E6_REPS },
        StaticTable1Row { rho: "rho3", pi0_int: "1", pi0_aut: "Z2", reps: E6_REPS },
        StaticTable1Row { rho: "rho4", pi0_int: "1", pi0_aut: "Z2", reps: E6_REPS },
    ],
    out_classes: &[("id", 1), ("rho1", 2)],
};

pub const E7: ExceptionalData = ExceptionalData {
    family: Family::E7,
    dim: 133,
    rank: 7,
    out_order: 1,
    involutions: &[("rho1", false), ("rho2", false), ("rho3", false)],
    table1: &[
        StaticTable1Row { rho: "rho1", pi0_int: "Z2", pi0_aut: "Z2", reps: &[("id", 1), ("sigma1", 1)] },
        StaticTable1Row { rho: "rho2", pi0_int: "1", pi0_aut: "1", reps: ID_ONLY },
        StaticTable1Row { rho: "rho3", pi0_int: "Z2", pi0_aut: "Z2", reps: &[("id", 1), ("sigma3", 1)] },
    ],
    out_classes: &[("id", 1)],
};

pub const E8: ExceptionalData = ExceptionalData {
    family: Family::E8,
    dim: 248,
    rank: 8,
    out_order: 1,
    involutions: &[("rho1", false), ("rho2", false)],
    table1: &[
        StaticTable1Row { rho: "rho1", pi0_int: "1", pi0_aut: "1", reps: ID_ONLY },
        StaticTable1Row { rho: "rho2", pi0_int: "1", pi0_aut: "1", reps: ID_ONLY },
    ],
    out_classes: &[("id", 1)],
};

pub const F4: ExceptionalData = ExceptionalData {
    family: Family::F4,
    dim: 52,
    rank: 4,
    out_order: 1,
    involutions: &[("rho1", false), ("rho2", false)],
    table1: &[
        StaticTable1Row { rho: "rho1", pi0_int: "1", pi0_aut: "1", reps: ID_ONLY },
        StaticTable1Row { rho: "rho2", pi0_int: "1", pi0_aut: "1", reps: ID_ONLY },
    ],
    out_classes: &[("id", 1)],
};

pub const G2: ExceptionalData = ExceptionalData {
    family: Family::G2,
    dim: 14,
    rank: 2,
    out_order: 1,
    involutions: &[("rho1", false)],
    table1: &[StaticTable1Row { rho: "rho1", pi0_int: "1", pi0_aut: "1", reps: ID_ONLY }],
    out_classes: &[("id", 1)],
};

pub fn data(family: Family) -> Option<&'static ExceptionalData> {
    match family {
        Family::E6 => Some(&E6),
        Family::E7 => Some(&E7),
        Family::E8 => Some(&E8),
        Family::F4 => Some(&F4),
        Family::G2 => Some(&G2),
        _ => None,
    }
}

impl ExceptionalData {
    pub fn is_outer(&self, label: &str) -> Option<bool> {
        if label == "id" {
            return Some(false);
        }
        self.involutions.iter().find(|(l, _)| *l == label).map(|(_, o)| *o)
    }
}
