//! Lexicographically least relabelings under permutations fixing one element.
//!
//! The search assigns target labels in increasing order, choosing for each
//! label the source element that receives it. After every choice the
//! relabeled table is compared cell by cell (row-major) against the best
//! table found so far; a branch is dropped as soon as a determined cell is
//! larger. A cell whose product has not been labeled yet is bounded below by
//! the next label to be assigned, which often decides the comparison early.

use std::cmp::Ordering;

use crate::error::Error;
use crate::perm::Permutation;
use crate::table::CayleyTable;

const UNSET: u8 = u8::MAX;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Minimize,
    /// Stop as soon as any relabeling beats the reference table.
    Test,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

/// Reusable scratch space for canonical-form computations on tables of one
/// order. Enumeration workers keep one of these per thread.
#[derive(Clone, Debug)]
pub struct Canonizer {
    n: usize,
    fixed: usize,
    /// Labels in assignment order (every label except `fixed`).
    seq: Vec<u8>,
    /// `pre[label]` = source element carrying that label.
    pre: Vec<u8>,
    /// `label[element]` = label given to that source element.
    label: Vec<u8>,
    best: Vec<u8>,
    best_pre: Vec<u8>,
    improved: bool,
}

impl Canonizer {
    /// # Panics
    /// Panics if `fixed >= n`.
    pub fn new(n: usize, fixed: usize) -> Self {
        assert!(
            fixed < n,
            "fixed element {fixed} out of range for order {n}"
        );
        Self {
            n,
            fixed,
            seq: (0..n as u8).filter(|&l| l as usize != fixed).collect(),
            pre: vec![UNSET; n],
            label: vec![UNSET; n],
            best: vec![0; n * n],
            best_pre: vec![0; n],
            improved: false,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn reset(&mut self, cells: &[u8]) {
        debug_assert_eq!(cells.len(), self.n * self.n);
        self.pre.fill(UNSET);
        self.label.fill(UNSET);
        self.pre[self.fixed] = self.fixed as u8;
        self.label[self.fixed] = self.fixed as u8;
        self.best.copy_from_slice(cells);
        for (i, p) in self.best_pre.iter_mut().enumerate() {
            *p = i as u8;
        }
        self.improved = false;
    }

    /// Least relabeling of `t` together with the permutation producing it.
    pub fn canonical_form_with_perm(&mut self, t: &CayleyTable) -> (CayleyTable, Permutation) {
        assert_eq!(
            t.order(),
            self.n,
            "table order differs from canonizer order"
        );
        self.reset(t.raw());
        self.descend(t.raw(), 0, 0, Mode::Minimize);
        // best_pre maps label -> source element; the relabeling sends source -> label.
        let mut images = vec![0u8; self.n];
        for (l, &src) in self.best_pre.iter().enumerate() {
            images[src as usize] = l as u8;
        }
        (
            CayleyTable::from_raw(self.n, self.best.clone()),
            Permutation::from_images_unchecked(images),
        )
    }

    pub fn canonical_form(&mut self, t: &CayleyTable) -> CayleyTable {
        self.canonical_form_with_perm(t).0
    }

    /// True when no relabeling fixing the distinguished element is smaller.
    pub fn is_canonical(&mut self, t: &CayleyTable) -> bool {
        assert_eq!(
            t.order(),
            self.n,
            "table order differs from canonizer order"
        );
        self.is_canonical_raw(t.raw())
    }

    pub(crate) fn is_canonical_raw(&mut self, cells: &[u8]) -> bool {
        self.reset(cells);
        self.descend(cells, 0, 0, Mode::Test);
        !self.improved
    }

    /// Compares the relabeled table against `best` from position `start`.
    /// Returns the verdict and the first position not known to be equal.
    fn scan(&self, t: &[u8], start: usize, depth: usize) -> (Option<Ordering>, usize) {
        let n = self.n;
        let lower_bound = self.seq.get(depth).copied().unwrap_or(UNSET);
        for pos in start..n * n {
            let (i, j) = (pos / n, pos % n);
            let (pi, pj) = (self.pre[i], self.pre[j]);
            if pi == UNSET || pj == UNSET {
                return (None, pos);
            }
            let w = t[pi as usize * n + pj as usize];
            let v = self.label[w as usize];
            let r = self.best[pos];
            if v == UNSET {
                // every label still unassigned is at least `lower_bound`
                if r < lower_bound {
                    return (Some(Ordering::Greater), pos);
                }
                return (None, pos);
            }
            match v.cmp(&r) {
                Ordering::Equal => {}
                other => return (Some(other), pos),
            }
        }
        (Some(Ordering::Equal), n * n)
    }

    fn descend(&mut self, t: &[u8], depth: usize, start: usize, mode: Mode) -> Flow {
        let n = self.n;
        if depth == self.seq.len() {
            let (verdict, _) = self.scan(t, start, depth);
            if verdict == Some(Ordering::Less) {
                self.improved = true;
                if mode == Mode::Test {
                    return Flow::Stop;
                }
                for pos in 0..n * n {
                    let (i, j) = (pos / n, pos % n);
                    let w = t[self.pre[i] as usize * n + self.pre[j] as usize];
                    self.best[pos] = self.label[w as usize];
                }
                self.best_pre.copy_from_slice(&self.pre);
            }
            return Flow::Continue;
        }
        let lab = self.seq[depth];
        for e in 0..n {
            if self.label[e] != UNSET {
                continue;
            }
            self.label[e] = lab;
            self.pre[lab as usize] = e as u8;
            let (verdict, pos) = self.scan(t, start, depth + 1);
            let flow = match verdict {
                Some(Ordering::Greater) => Flow::Continue,
                Some(Ordering::Less) if mode == Mode::Test => {
                    self.improved = true;
                    Flow::Stop
                }
                _ => self.descend(t, depth + 1, pos, mode),
            };
            self.label[e] = UNSET;
            self.pre[lab as usize] = UNSET;
            if flow == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

/// Lexicographically least row-major relabeling of `t` over all permutations
/// fixing `fixed`.
///
/// # Panics
/// Panics if `fixed >= t.order()`.
pub fn canonical_form(t: &CayleyTable, fixed: usize) -> CayleyTable {
    Canonizer::new(t.order(), fixed).canonical_form(t)
}

pub fn is_canonical(t: &CayleyTable, fixed: usize) -> bool {
    Canonizer::new(t.order(), fixed).is_canonical(t)
}

/// True when some relabeling fixing `fixed` carries `t1` onto `t2`.
pub fn tables_isomorphic(t1: &CayleyTable, t2: &CayleyTable, fixed: usize) -> Result<bool, Error> {
    if t1.order() != t2.order() {
        return Err(Error::SizeMismatch {
            left: t1.order(),
            right: t2.order(),
        });
    }
    if fixed >= t1.order() {
        return Err(Error::InvalidTable(format!(
            "fixed element {fixed} out of range for order {}",
            t1.order()
        )));
    }
    let mut c = Canonizer::new(t1.order(), fixed);
    Ok(c.canonical_form(t1) == c.canonical_form(t2))
}

#[cfg(test)]
mod tests {
    use itertools::Itertools;

    use super::*;
    use crate::table::fixtures::*;

    /// Exhaustive oracle: minimum over every permutation fixing `fixed`.
    fn brute_canonical(t: &CayleyTable, fixed: usize) -> CayleyTable {
        let n = t.order();
        let others: Vec<usize> = (0..n).filter(|&x| x != fixed).collect();
        others
            .iter()
            .copied()
            .permutations(others.len())
            .map(|perm| {
                let mut images = vec![fixed; n];
                for (&src, &dst) in others.iter().zip(&perm) {
                    images[src] = dst;
                }
                t.apply_permutation(&Permutation::new(images).unwrap())
                    .unwrap()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn trivial_table() {
        assert_eq!(canonical_form(&trivial(), 0), trivial());
        assert!(is_canonical(&trivial(), 0));
    }

    #[test]
    fn matches_brute_force_on_examples() {
        for t in [example1(), example2(), cyclic3(), left_zero()] {
            let fast = canonical_form(&t, 0);
            assert_eq!(fast, brute_canonical(&t, 0));
            assert_eq!(canonical_form(&fast, 0), fast);
            assert!(is_canonical(&fast, 0));
        }
    }

    #[test]
    fn example1_canonical_form_is_frozen() {
        // computed by brute_canonical over the 120 permutations fixing 0
        let expected = CayleyTable::from_rows(&[
            [0, 1, 2, 3, 4, 5],
            [1, 1, 1, 1, 1, 1],
            [2, 1, 2, 1, 2, 2],
            [3, 1, 1, 3, 3, 3],
            [4, 1, 2, 3, 5, 0],
            [5, 1, 2, 3, 0, 4],
        ])
        .unwrap();
        assert_eq!(brute_canonical(&example1(), 0), expected);
        assert_eq!(canonical_form(&example1(), 0), expected);
    }

    #[test]
    fn reported_permutation_produces_the_form() {
        let t = example2();
        let (form, p) = Canonizer::new(6, 0).canonical_form_with_perm(&t);
        assert_eq!(t.apply_permutation(&p).unwrap(), form);
        assert!(p.fixes(0));
    }

    #[test]
    fn nonzero_fixed_point() {
        let t = example2();
        for fixed in 0..6 {
            assert_eq!(canonical_form(&t, fixed), brute_canonical(&t, fixed));
        }
    }

    #[test]
    fn isomorphism() {
        assert!(!tables_isomorphic(&example1(), &example2(), 0).unwrap());
        let c2 = CayleyTable::from_rows(&[[0, 1], [1, 0]]).unwrap();
        let semilattice = CayleyTable::from_rows(&[[0, 1], [1, 1]]).unwrap();
        assert!(!tables_isomorphic(&c2, &semilattice, 0).unwrap());
        assert!(tables_isomorphic(&c2, &trivial(), 0).is_err());
        let p = Permutation::new(vec![0, 3, 5, 1, 2, 4]).unwrap();
        let moved = example2().apply_permutation(&p).unwrap();
        assert!(tables_isomorphic(&example2(), &moved, 0).unwrap());
    }
}
