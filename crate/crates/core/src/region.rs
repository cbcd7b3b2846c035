//! Parameter-space region maps: which dyadic cells carry which certificates.

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;

use crate::arith::{to_f64, Scalar};
use crate::certify::{region_area, Cell};
use crate::error::{Error, Result};
use crate::record::Record;

/// Certificate kinds a cell can carry, as bit flags.
pub mod status {
    pub const G: u8 = 1;
    pub const DIM: u8 = 2;
    pub const INTERIOR: u8 = 4;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionEntry {
    pub cell: Cell,
    /// OR of [`status`] flags; zero means undecided.
    pub flags: u8,
    pub witness: Vec<String>,
}

/// Pairwise interior-disjoint dyadic cells with their status.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionMap {
    pub entries: Vec<RegionEntry>,
}

fn parent(c: &Cell) -> Option<Cell> {
    (c.depth > 0).then(|| Cell {
        depth: c.depth - 1,
        i: c.i / 2,
        j: c.j / 2,
    })
}

/// The dyadic cell spanned by a record's rectangle, if it is one.
pub fn cell_of(r: &Record) -> Result<Cell> {
    let rect = r.rect()?;
    let w = rect.lambda().width();
    if w.is_zero() || w != rect.mu().width() || w.numer() != &num_bigint::BigInt::from(1u8) {
        return Err(Error::Invalid(format!("{} record is not a dyadic cell", r.kind())));
    }
    let den = w.denom().clone();
    let depth = den.bits() as u32 - 1;
    if num_bigint::BigInt::from(1u8) << depth != den {
        return Err(Error::Invalid(format!("{} record is not a dyadic cell", r.kind())));
    }
    let idx = |lo: &Scalar| -> Option<u64> {
        let v = lo / &w;
        v.is_integer().then(|| u64::try_from(v.to_integer()).ok()).flatten()
    };
    match (idx(rect.lambda().lo()), idx(rect.mu().lo())) {
        (Some(i), Some(j)) => Ok(Cell { depth, i, j }),
        _ => Err(Error::Invalid(format!("{} record is not on the dyadic grid", r.kind()))),
    }
}

impl RegionMap {
    pub fn new(entries: Vec<RegionEntry>) -> Self {
        Self { entries }.normalized()
    }

    /// Cells from certificate records; point records are skipped.
    pub fn from_records(records: &[Record]) -> Result<Self> {
        let mut entries = Vec::new();
        for r in records {
            let flags = match r {
                Record::G(_) => status::G,
                Record::DimRect(_) => status::DIM,
                Record::Interior(_) => status::INTERIOR,
                Record::Dim(_) => continue,
            };
            entries.push(RegionEntry {
                cell: cell_of(r)?,
                flags,
                witness: vec![r.witness()],
            });
        }
        Ok(Self::new(entries))
    }

    pub fn with_undecided(mut self, cells: &[Cell]) -> Self {
        self.entries.extend(cells.iter().map(|&cell| RegionEntry {
            cell,
            flags: 0,
            witness: Vec::new(),
        }));
        self.normalized()
    }

    /// Overlay of two maps on their common dyadic refinement; flags are OR-ed.
    pub fn merge(&self, other: &RegionMap) -> RegionMap {
        let mut all = self.entries.clone();
        all.extend(other.entries.iter().cloned());
        RegionMap { entries: all }.normalized()
    }

    /// Split every cell that has a finer cell inside it, then combine equal cells.
    fn normalized(self) -> RegionMap {
        let mut ancestors = HashSet::new();
        for e in &self.entries {
            let mut c = e.cell;
            while let Some(p) = parent(&c) {
                if !ancestors.insert(p) {
                    break;
                }
                c = p;
            }
        }
        let mut merged: BTreeMap<Cell, (u8, Vec<String>)> = BTreeMap::new();
        for e in self.entries {
            let mut stack = vec![e.cell];
            while let Some(c) = stack.pop() {
                if ancestors.contains(&c) {
                    stack.extend(c.children().into_iter().filter(|k| k.meets_region()));
                } else {
                    let slot = merged.entry(c).or_default();
                    slot.0 |= e.flags;
                    for w in &e.witness {
                        if !slot.1.contains(w) {
                            slot.1.push(w.clone());
                        }
                    }
                }
            }
        }
        RegionMap {
            entries: merged
                .into_iter()
                .map(|(cell, (flags, witness))| RegionEntry { cell, flags, witness })
                .collect(),
        }
    }

    pub fn finest_depth(&self) -> u32 {
        self.entries.iter().map(|e| e.cell.depth).max().unwrap_or(0)
    }

    /// Fraction of the parameter triangle covered by cells having all of `flags`.
    pub fn coverage(&self, flags: u8) -> f64 {
        let a = self
            .entries
            .iter()
            .filter(|e| e.flags & flags == flags && e.flags != 0)
            .fold(<Scalar as Zero>::zero(), |acc, e| acc + e.cell.area_in_region());
        to_f64(&(a / region_area()))
    }

    /// Cells overlap only along edges.
    pub fn is_disjoint(&self) -> bool {
        let set: HashSet<Cell> = self.entries.iter().map(|e| e.cell).collect();
        self.entries.iter().all(|e| {
            let mut c = e.cell;
            while let Some(p) = parent(&c) {
                if set.contains(&p) {
                    return false;
                }
                c = p;
            }
            true
        })
    }
}
