//! The shipped table of all groups of order at most 15, one per isomorphism
//! class, plus a hook for appending user-supplied tables in the same format.
//!
//! Format: a header line `# essalg-catalog 1`, further `#` lines are
//! comments, then one record per line: `label order t00 t01 ... t(n-1)(n-1)`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup};

const BUILTIN: &str = include_str!("../data/catalog.txt");
const HEADER: &str = "# essalg-catalog 1";

/// Largest order for which the shipped data is complete.
pub const BUILTIN_MAX_ORDER: usize = 15;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub group: FiniteGroup,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    complete_up_to: usize,
}

fn parse_records(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == HEADER => {}
        other => {
            return Err(Error::Parse(format!(
                "expected header {HEADER:?}, found {:?}",
                other.unwrap_or("")
            )))
        }
    }
    let mut out = Vec::new();
    for (no, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let label = fields.next().unwrap().to_string();
        let order: usize = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: missing order", no + 2)))?
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", no + 2)))?;
        let cells: Vec<usize> = fields
            .map(|f| f.parse().map_err(|e| Error::Parse(format!("line {}: {e}", no + 2))))
            .collect::<Result<_>>()?;
        if cells.len() != order * order {
            return Err(Error::Parse(format!(
                "line {}: {} has {} table entries, expected {}",
                no + 2,
                label,
                cells.len(),
                order * order
            )));
        }
        let rows: Vec<Vec<usize>> = cells.chunks(order.max(1)).map(<[usize]>::to_vec).collect();
        let group = FiniteGroup::from_table(&label, &rows)?;
        out.push(CatalogEntry { label, group });
    }
    Ok(out)
}

impl Catalog {
    /// Every shipped group.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog {
            entries: parse_records(BUILTIN).expect("shipped catalog parses"),
            complete_up_to: BUILTIN_MAX_ORDER,
        })
    }

    /// The shipped groups of order at most `max_order` (which must be ≤ 15).
    pub fn up_to(max_order: usize) -> Result<Catalog> {
        if max_order > BUILTIN_MAX_ORDER {
            return Err(Error::OrderBoundExceeded {
                order: max_order,
                bound: BUILTIN_MAX_ORDER,
            });
        }
        Ok(Catalog {
            entries: Catalog::builtin()
                .entries
                .iter()
                .filter(|e| e.group.order() <= max_order)
                .cloned()
                .collect(),
            complete_up_to: max_order,
        })
    }

    /// Appends records in catalog format. Tables isomorphic to an existing
    /// entry are rejected so the list stays a transversal.
    pub fn extend_from_text(&mut self, text: &str) -> Result<()> {
        for entry in parse_records(text)? {
            if self.get(&entry.label).is_some() {
                return Err(Error::Parse(format!("duplicate label {}", entry.label)));
            }
            for e in self.entries.iter().filter(|e| e.group.order() == entry.group.order()) {
                if e.group.are_isomorphic(&entry.group)? {
                    return Err(Error::Parse(format!(
                        "{} is isomorphic to catalog group {}",
                        entry.label, e.label
                    )));
                }
            }
            self.entries.push(entry);
        }
        self.entries.sort_by_key(|e| e.group.order());
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every isomorphism class of order ≤ this value is present.
    pub fn complete_up_to(&self) -> usize {
        self.complete_up_to
    }

    pub fn get(&self, label: &str) -> Option<&FiniteGroup> {
        self.entries.iter().find(|e| e.label == label).map(|e| &e.group)
    }

    /// Catalog label of an interned group, if it is a catalog table.
    pub fn label_of(&self, g: &FiniteGroup) -> Option<&str> {
        self.entries.iter().find(|e| &e.group == g).map(|e| e.label.as_str())
    }

    /// A display label: the catalog label when available.
    pub fn display(&self, g: &FiniteGroup) -> String {
        self.label_of(g).map(str::to_string).unwrap_or_else(|| g.label().to_string())
    }

    /// Entries of order strictly below `n`; fails if the catalog cannot
    /// guarantee a full transversal there.
    pub fn smaller_than(&self, n: usize) -> Result<Vec<&CatalogEntry>> {
        if n > self.complete_up_to + 1 {
            return Err(Error::CatalogInsufficient {
                covered: self.complete_up_to,
                needed: n,
            });
        }
        Ok(self.entries.iter().filter(|e| e.group.order() < n).collect())
    }

    /// Resolves a label, also accepting products of labels joined by `x`
    /// (`C2xS3`). Whole labels take precedence over splitting.
    pub fn resolve(&self, label: &str) -> Result<FiniteGroup> {
        if let Some(g) = self.get(label) {
            return Ok(g.clone());
        }
        for (i, _) in label.match_indices('x') {
            let (a, b) = (&label[..i], &label[i + 1..]);
            if let (Ok(ga), Ok(gb)) = (self.resolve(a), self.resolve(b)) {
                return Ok(direct_product(&ga, &gb).group);
            }
        }
        Err(Error::UnknownGroup(label.to_string()))
    }
}
