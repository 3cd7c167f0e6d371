use std::fmt;

use crate::error::Error;
use crate::perm::Permutation;

/// Full operation table of a binary operation on `0..n`.
///
/// `get(a, b)` is the product of `a` and `b` with `a` as the left operand.
/// Ordering is lexicographic on the row-major flattening (orders compared
/// first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<u8>,
}

/// Which kind of structure a table or database holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    CommutativeMonoid,
    AgMonoid,
}

/// A tuple of elements on which an identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness(pub Vec<usize>);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl CayleyTable {
    /// Builds a table from row-major cells.
    pub fn new(order: usize, cells: Vec<usize>) -> Result<Self, Error> {
        if order == 0 || order > u8::MAX as usize {
            return Err(Error::InvalidTable(format!("unsupported order {order}")));
        }
        if cells.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} cells, got {}",
                order * order,
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&c| c >= order) {
            return Err(Error::InvalidTable(format!(
                "entry {bad} out of range for order {order}"
            )));
        }
        Ok(Self {
            order,
            cells: cells.into_iter().map(|c| c as u8).collect(),
        })
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, Error> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for row in rows {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row of length {} in a table of order {order}",
                    row.len()
                )));
            }
            cells.extend_from_slice(row);
        }
        Self::new(order, cells)
    }

    pub(crate) fn from_raw(order: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        debug_assert!(cells.iter().all(|&c| (c as usize) < order));
        Self { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.order + b] as usize
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.cells
    }

    /// Row-major entries.
    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().map(|&c| c as usize)
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&c| c as usize)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).collect()).collect()
    }

    /// First triple `(a,b,c)` in lexicographic order with `(ab)c ≠ a(bc)`.
    pub fn associativity_violation(&self) -> Option<Witness> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return Some(Witness(vec![a, b, c]));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    pub fn commutativity_violation(&self) -> Option<Witness> {
        let n = self.order;
        for a in 0..n {
            for b in a + 1..n {
                if self.get(a, b) != self.get(b, a) {
                    return Some(Witness(vec![a, b]));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }

    /// All `e` with `e·x = x` for every `x`.
    pub fn left_identities(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&e| self.row(e).eq(0..self.order))
            .collect()
    }

    pub fn two_sided_identity(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    /// First triple `(x,y,z)` with `(xy)z ≠ (zy)x`.
    pub fn left_invertive_violation(&self) -> Option<Witness> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                for z in 0..n {
                    if self.get(xy, z) != self.get(self.get(z, y), x) {
                        return Some(Witness(vec![x, y, z]));
                    }
                }
            }
        }
        None
    }

    pub fn is_left_invertive(&self) -> bool {
        self.left_invertive_violation().is_none()
    }

    /// First quadruple `(a,b,c,d)` with `(ab)(cd) ≠ (ac)(bd)`.
    pub fn medial_violation(&self) -> Option<Witness> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = self.get(self.get(a, b), self.get(c, d));
                        let rhs = self.get(self.get(a, c), self.get(b, d));
                        if lhs != rhs {
                            return Some(Witness(vec![a, b, c, d]));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_medial(&self) -> bool {
        self.medial_violation().is_none()
    }

    /// First triple `(a,b,c)` with `a(bc) ≠ b(ac)`.
    pub fn paramedial_swap_violation(&self) -> Option<Witness> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.get(a, self.get(b, c)) != self.get(b, self.get(a, c)) {
                        return Some(Witness(vec![a, b, c]));
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_paramedial_swap(&self) -> bool {
        self.paramedial_swap_violation().is_none()
    }

    /// The table transported along `p`: the result `r` satisfies
    /// `r(p(a), p(b)) = p(self(a, b))`.
    pub fn apply_permutation(&self, p: &Permutation) -> Result<CayleyTable, Error> {
        if p.degree() != self.order {
            return Err(Error::SizeMismatch {
                left: self.order,
                right: p.degree(),
            });
        }
        let n = self.order;
        let img = p.raw();
        let mut cells = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[img[a] as usize * n + img[b] as usize] = img[self.get(a, b)];
            }
        }
        Ok(CayleyTable::from_raw(n, cells))
    }

    /// True when `p(self(a,b)) = other(p(a), p(b))` for all `a, b`.
    pub fn is_homomorphic_image(
        &self,
        other: &CayleyTable,
        p: &Permutation,
    ) -> Result<bool, Error> {
        if self.order != other.order {
            return Err(Error::SizeMismatch {
                left: self.order,
                right: other.order,
            });
        }
        if p.degree() != self.order {
            return Err(Error::SizeMismatch {
                left: self.order,
                right: p.degree(),
            });
        }
        let n = self.order;
        Ok((0..n)
            .all(|a| (0..n).all(|b| p.apply(self.get(a, b)) == other.get(p.apply(a), p.apply(b)))))
    }
}
