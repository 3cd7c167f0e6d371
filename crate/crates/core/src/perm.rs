use std::fmt;

use crate::error::Error;

/// A bijection on `0..n`, stored as its image sequence.
///
/// Composition follows the usual right-to-left convention:
/// `p.compose(&q)` maps `x` to `p(q(x))`. The derived ordering is the
/// lexicographic order of the image sequences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its images, rejecting anything that is not
    /// a bijection on `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!(
                "degree {n} is too large"
            )));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("image {i} repeated")));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// Crate-internal constructor for image sequences already known to be bijective.
    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u8).collect(),
        }
    }

    /// The transposition exchanging `a` and `b` (the identity when `a == b`).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, Error> {
        if a >= n || b >= n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a},{b}) out of range for degree {n}"
            )));
        }
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(a, b);
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    ///
    /// # Panics
    /// Panics if the degrees differ.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `self ∘ q ∘ self⁻¹`.
    pub fn conjugate(&self, q: &Permutation) -> Permutation {
        // (p q p^-1)(p(x)) = p(q(x))
        let mut images = vec![0u8; self.degree()];
        for x in 0..self.degree() {
            images[self.apply(x)] = self.images[q.apply(x)];
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i)
    }

    /// True when `self ∘ self` is the identity (the identity itself included).
    pub fn squares_to_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| self.images[v as usize] as usize == i)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

/// Cycle notation with comma separators, e.g. `(1,5)(2,4)`; the identity
/// renders as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn compose_is_right_to_left() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let q = Permutation::new(vec![0, 2, 1]).unwrap();
        // p(q(1)) = p(2) = 0
        assert_eq!(p.compose(&q).apply(1), 0);
        assert_eq!(q.compose(&p).apply(1), 1);
    }

    #[test]
    fn inverse_and_conjugate() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        let q = Permutation::transposition(4, 0, 1).unwrap();
        let c = p.conjugate(&q);
        assert_eq!(c, p.compose(&q).compose(&p.inverse()));
        assert!(c.squares_to_identity());
        assert!(!c.is_identity());
    }

    #[test]
    fn display_uses_cycle_notation() {
        let alpha = Permutation::new(vec![0, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(alpha.to_string(), "(1,5)(2,4)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "(0,2,1)");
    }
}
