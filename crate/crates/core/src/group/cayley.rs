//! Finite groups given by a full multiplication table.

use super::GroupError;

/// Tables up to this order get the full associativity check.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
    generators: Vec<u32>,
}

impl CayleyTable {
    /// Validates the table and derives (or checks) the inverse table.
    ///
    /// `generators` lists the element indices bound to letters `a, b, ...`.
    pub fn new(
        rows: Vec<Vec<u32>>,
        inverse: Option<Vec<u32>>,
        generators: Vec<u32>,
    ) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v as usize >= order {
                    return Err(GroupError::InvalidTable(format!(
                        "entry {v} in row {i} is out of range"
                    )));
                }
            }
            mul.extend_from_slice(row);
        }
        let at = |x: usize, y: usize| mul[x * order + y] as usize;

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| GroupError::InvalidTable("no two-sided identity".into()))?;

        let mut inv = vec![0u32; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {x} has no inverse")))?;
            *slot = y as u32;
        }
        if let Some(given) = inverse {
            if given != inv {
                return Err(GroupError::InvalidTable(
                    "inverse table disagrees with the multiplication table".into(),
                ));
            }
        }

        if order <= ASSOCIATIVITY_CHECK_LIMIT {
            for x in 0..order {
                for y in 0..order {
                    let xy = at(x, y);
                    for z in 0..order {
                        if at(xy, z) != at(x, at(y, z)) {
                            return Err(GroupError::InvalidTable(format!(
                                "not associative at ({x}, {y}, {z})"
                            )));
                        }
                    }
                }
            }
        }

        for &g in &generators {
            if g as usize >= order {
                return Err(GroupError::InvalidTable(format!(
                    "generator {g} is not an element"
                )));
            }
        }

        Ok(CayleyTable {
            order,
            mul,
            inv,
            identity: identity as u32,
            generators,
        })
    }

    /// The cyclic group `Z/m` with `0` as identity and `1` as generator.
    pub fn cyclic(m: usize) -> Self {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| ((i + j) % m) as u32).collect())
            .collect();
        CayleyTable::new(rows, None, if m > 1 { vec![1] } else { vec![] })
            .expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn multiply(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.order + y as usize]
    }

    pub fn inverse(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }
}
