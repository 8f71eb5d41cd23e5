//! Built-in groups, each given by permutation generators and its order.

use fusionlab_core::hfree::qd_group;
use fusionlab_core::iso::is_isomorphic;
use fusionlab_core::{FiniteGroup, Limits};

use crate::parse::{parse_group_str, ParsedGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub degree: usize,
    pub generators: &'static [&'static str],
    pub order: usize,
    pub note: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "C2",
        degree: 2,
        generators: &["(1 2)"],
        order: 2,
        note: "cyclic",
    },
    CatalogEntry {
        name: "C3",
        degree: 3,
        generators: &["(1 2 3)"],
        order: 3,
        note: "cyclic",
    },
    CatalogEntry {
        name: "C4",
        degree: 4,
        generators: &["(1 2 3 4)"],
        order: 4,
        note: "cyclic",
    },
    CatalogEntry {
        name: "V4",
        degree: 4,
        generators: &["(1 2)(3 4)", "(1 3)(2 4)"],
        order: 4,
        note: "Klein four group",
    },
    CatalogEntry {
        name: "S3",
        degree: 3,
        generators: &["(1 2)", "(1 2 3)"],
        order: 6,
        note: "symmetric group on 3 letters",
    },
    CatalogEntry {
        name: "D8",
        degree: 4,
        generators: &["(1 2)", "(1 3 2 4)"],
        order: 8,
        note: "dihedral of order 8",
    },
    CatalogEntry {
        name: "Q8",
        degree: 8,
        generators: &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"],
        order: 8,
        note: "quaternion, regular",
    },
    CatalogEntry {
        name: "C3xC3",
        degree: 6,
        generators: &["(1 2 3)", "(4 5 6)"],
        order: 9,
        note: "elementary abelian",
    },
    CatalogEntry {
        name: "A4",
        degree: 4,
        generators: &["(1 2 3)", "(1 2)(3 4)"],
        order: 12,
        note: "alternating group on 4 letters",
    },
    CatalogEntry {
        name: "S4",
        degree: 4,
        generators: &["(1 2)", "(1 2 3 4)"],
        order: 24,
        note: "symmetric group on 4 letters",
    },
    CatalogEntry {
        name: "SL(2,3)",
        degree: 8,
        generators: &["(3 5 8)(4 6 7)", "(1 5 7)(2 6 8)"],
        order: 24,
        note: "on the nonzero vectors of F_3^2",
    },
    CatalogEntry {
        name: "GL(2,3)",
        degree: 8,
        generators: &["(3 5 8)(4 6 7)", "(1 5 7)(2 6 8)", "(1 2)(5 8)(6 7)"],
        order: 48,
        note: "on the nonzero vectors of F_3^2",
    },
    CatalogEntry {
        name: "3^(1+2)+",
        degree: 9,
        generators: &["(4 5 6)(7 9 8)", "(1 4 7)(2 5 8)(3 6 9)"],
        order: 27,
        note: "extraspecial of exponent 3",
    },
    CatalogEntry {
        name: "3^(1+2)-",
        degree: 9,
        generators: &["(1 2 3 4 5 6 7 8 9)", "(2 5 8)(3 9 6)"],
        order: 27,
        note: "extraspecial of exponent 9",
    },
    CatalogEntry {
        name: "C13:C3",
        degree: 13,
        generators: &[
            "(1 2 3 4 5 6 7 8 9 10 11 12 13)",
            "(2 4 10)(3 7 6)(5 13 11)(8 9 12)",
        ],
        order: 39,
        note: "Frobenius group of order 39",
    },
    CatalogEntry {
        name: "Qd(3)",
        degree: 9,
        generators: &["(4 5 6)(7 9 8)", "(2 5 8)(3 9 6)", "(1 2 3)(4 5 6)(7 8 9)"],
        order: 216,
        note: "affine SL(2,3) on F_3^2",
    },
    CatalogEntry {
        name: "(C3xC3):C2",
        degree: 6,
        generators: &["(1 2 3)", "(4 5 6)", "(2 3)(5 6)"],
        order: 18,
        note: "C3xC3 extended by inversion",
    },
];

impl CatalogEntry {
    pub fn file_text(&self) -> String {
        let mut out = format!("group {}\nperm {}\n", self.name, self.degree);
        for g in self.generators {
            out.push_str(g);
            out.push('\n');
        }
        out
    }

    pub fn parsed(&self, limits: Limits) -> ParsedGroup {
        parse_group_str(&self.file_text(), limits).expect("catalog entries parse")
    }

    pub fn build(&self) -> FiniteGroup {
        self.parsed(Limits::default()).group
    }
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// Checks every entry's order, and `Qd(2) ≅ S4`, `Qd(3)` against its
/// constructor.
pub fn validate() -> Result<(), String> {
    for e in CATALOG {
        let g = e.build();
        if g.order() != e.order {
            return Err(format!(
                "{} has order {}, expected {}",
                e.name,
                g.order(),
                e.order
            ));
        }
    }
    let s4 = lookup("S4").expect("S4 entry").build();
    let qd2 = qd_group(2).map_err(|e| e.to_string())?;
    if is_isomorphic(&qd2, &s4)
        .map_err(|e| e.to_string())?
        .is_none()
    {
        return Err("Qd(2) is not isomorphic to the S4 entry".into());
    }
    let qd3 = qd_group(3).map_err(|e| e.to_string())?;
    if qd3.table() != lookup("Qd(3)").expect("Qd(3) entry").build().table() {
        return Err("Qd(3) entry differs from the affine construction".into());
    }
    Ok(())
}
