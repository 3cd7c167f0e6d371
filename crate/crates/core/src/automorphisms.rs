//! Automorphism groups of tables with identity 0, their involutions, and
//! conjugacy classes of those involutions.

use crate::error::Error;
use crate::perm::Permutation;
use crate::table::CayleyTable;

const UNSET: u8 = u8::MAX;

/// Every automorphism of `base`, as an explicit sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    base: CayleyTable,
    members: Vec<Permutation>,
}

/// Conjugacy classes of the non-identity involutions of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionClasses {
    classes: Vec<Vec<Permutation>>,
}

impl InvolutionClasses {
    /// Classes ordered by representative; each class sorted.
    pub fn classes(&self) -> &[Vec<Permutation>] {
        &self.classes
    }

    /// Lexicographically least member of each class.
    pub fn representatives(&self) -> impl Iterator<Item = &Permutation> {
        self.classes.iter().map(|c| &c[0])
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Backtracking search for bijections `p` fixing 0 that satisfy
/// `p(s(a,b)) = d(p(a),p(b))`, plus an optional intertwining condition
/// `p(alpha_s(a)) = alpha_d(p(a))`. Shared by the automorphism search and
/// the twist-pair isomorphism test.
pub(crate) struct MorphismSearch<'a> {
    n: usize,
    src: &'a [u8],
    dst: &'a [u8],
    intertwine: Option<(&'a [u8], &'a [u8])>,
    img: Vec<u8>,
    used: Vec<bool>,
}

impl<'a> MorphismSearch<'a> {
    pub(crate) fn new(
        src: &'a CayleyTable,
        dst: &'a CayleyTable,
        intertwine: Option<(&'a Permutation, &'a Permutation)>,
    ) -> Self {
        let n = src.order();
        debug_assert_eq!(n, dst.order());
        let mut img = vec![UNSET; n];
        let mut used = vec![false; n];
        img[0] = 0;
        used[0] = true;
        Self {
            n,
            src: src.raw(),
            dst: dst.raw(),
            intertwine: intertwine.map(|(a, b)| (a.raw(), b.raw())),
            img,
            used,
        }
    }

    /// Checks every constraint that became fully evaluable once element `k`
    /// (and all smaller elements) received images.
    fn consistent(&self, k: usize) -> bool {
        let n = self.n;
        for a in 0..=k {
            for b in 0..=k {
                if a != k && b != k {
                    // pairs of older elements only need rechecking when their product is k
                    if self.src[a * n + b] as usize != k {
                        continue;
                    }
                }
                let c = self.src[a * n + b] as usize;
                let target = self.dst[self.img[a] as usize * n + self.img[b] as usize];
                if c <= k {
                    if self.img[c] != target {
                        return false;
                    }
                } else if self.used[target as usize] {
                    // c is still unassigned but its forced image is taken
                    return false;
                }
            }
        }
        if let Some((sa, da)) = self.intertwine {
            for a in 0..=k {
                let c = sa[a] as usize;
                if a != k && c != k {
                    continue;
                }
                let target = da[self.img[a] as usize];
                if c <= k {
                    if self.img[c] != target {
                        return false;
                    }
                } else if self.used[target as usize] {
                    return false;
                }
            }
        }
        true
    }

    /// Visits every solution in lexicographic order of image sequences.
    /// The visitor returns `false` to stop the search.
    pub(crate) fn run(&mut self, visit: &mut dyn FnMut(&[u8]) -> bool) {
        if self.n == 1 || self.consistent(0) {
            self.extend(1, visit);
        }
    }

    fn extend(&mut self, k: usize, visit: &mut dyn FnMut(&[u8]) -> bool) -> bool {
        if k == self.n {
            return visit(&self.img);
        }
        for v in 1..self.n {
            if self.used[v] {
                continue;
            }
            self.img[k] = v as u8;
            self.used[v] = true;
            let keep_going = !self.consistent(k) || self.extend(k + 1, visit);
            self.used[v] = false;
            self.img[k] = UNSET;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

impl AutomorphismGroup {
    pub fn base(&self) -> &CayleyTable {
        &self.base
    }

    /// Members sorted by image sequence; the identity comes first.
    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.binary_search(p).is_ok()
    }

    /// Non-identity members squaring to the identity, in lexicographic order.
    pub fn involutions(&self) -> Vec<Permutation> {
        self.members
            .iter()
            .filter(|p| !p.is_identity() && p.squares_to_identity())
            .cloned()
            .collect()
    }

    /// Orbits of the involutions under conjugation by the whole group.
    pub fn conjugacy_classes_of_involutions(&self) -> InvolutionClasses {
        let involutions = self.involutions();
        let mut assigned = vec![false; involutions.len()];
        let mut classes = Vec::new();
        for (i, q) in involutions.iter().enumerate() {
            if assigned[i] {
                continue;
            }
            let mut class: Vec<Permutation> = self.members.iter().map(|p| p.conjugate(q)).collect();
            class.sort();
            class.dedup();
            for c in &class {
                let idx = involutions
                    .binary_search(c)
                    .expect("conjugate of an involution is an involution in the group");
                assigned[idx] = true;
            }
            classes.push(class);
        }
        InvolutionClasses { classes }
    }

    /// True when `p ∘ a ∘ p⁻¹ = b` for some member `p`.
    pub fn are_conjugate(&self, a: &Permutation, b: &Permutation) -> Result<bool, Error> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::NotInGroup(x.to_string()));
            }
        }
        Ok(self.members.iter().any(|p| &p.conjugate(a) == b))
    }
}

/// All permutations fixing 0 that preserve the operation of `t`.
///
/// `t` must have 0 as its two-sided identity or as its unique left identity.
pub fn automorphism_group(t: &CayleyTable) -> Result<AutomorphismGroup, Error> {
    if t.left_identities() != [0] {
        return Err(Error::NoIdentityAtZero);
    }
    let mut members = Vec::new();
    MorphismSearch::new(t, t, None).run(&mut |img| {
        members.push(Permutation::from_images_unchecked(img.to_vec()));
        true
    });
    Ok(AutomorphismGroup {
        base: t.clone(),
        members,
    })
}

#[cfg(test)]
mod tests {
    use itertools::Itertools;

    use super::*;
    use crate::table::fixtures::*;

    /// Exhaustive oracle over all (n-1)! permutations fixing 0.
    fn brute_automorphisms(t: &CayleyTable) -> Vec<Permutation> {
        let n = t.order();
        let mut out: Vec<Permutation> = (1..n)
            .permutations(n - 1)
            .map(|rest| Permutation::new(std::iter::once(0).chain(rest).collect()).unwrap())
            .filter(|p| t.is_homomorphic_image(t, p).unwrap())
            .collect();
        out.sort();
        out
    }

    fn cycles(s: &str, n: usize) -> Permutation {
        crate::storage::parse_cycle_notation(s, n).unwrap()
    }

    #[test]
    fn example1_group() {
        let g = automorphism_group(&example1()).unwrap();
        assert_eq!(g.members(), brute_automorphisms(&example1()).as_slice());
        assert!(g.contains(&cycles("(1,5)(2,4)", 6)));
        assert!(g.members()[0].is_identity());
    }

    #[test]
    fn small_groups() {
        let g = automorphism_group(&trivial()).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.involutions().is_empty());
        assert!(g.conjugacy_classes_of_involutions().is_empty());

        let g = automorphism_group(&cyclic3()).unwrap();
        assert_eq!(g.members(), &[Permutation::identity(3), cycles("(1,2)", 3)]);
        assert_eq!(g.involutions(), vec![cycles("(1,2)", 3)]);
        let classes = g.conjugacy_classes_of_involutions();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes.representatives().next(), Some(&cycles("(1,2)", 3)));
    }

    #[test]
    fn rejects_tables_without_identity_at_zero() {
        assert!(automorphism_group(&left_zero()).is_err());
        let moved = example1()
            .apply_permutation(&Permutation::transposition(6, 0, 3).unwrap())
            .unwrap();
        assert!(automorphism_group(&moved).is_err());
    }

    #[test]
    fn ag_monoid_group_matches_brute_force() {
        let g = automorphism_group(&example2()).unwrap();
        assert_eq!(g.members(), brute_automorphisms(&example2()).as_slice());
    }

    #[test]
    fn example1_classes() {
        let g = automorphism_group(&example1()).unwrap();
        // brute-force conjugation closure over the explicit member list
        let invs = g.involutions();
        let mut classes: Vec<Vec<Permutation>> = Vec::new();
        for q in &invs {
            if classes.iter().any(|c| c.contains(q)) {
                continue;
            }
            let mut c: Vec<_> = g
                .members()
                .iter()
                .map(|p| p.compose(q).compose(&p.inverse()))
                .collect();
            c.sort();
            c.dedup();
            classes.push(c);
        }
        let found = g.conjugacy_classes_of_involutions();
        assert_eq!(found.classes(), classes.as_slice());
        assert!(found
            .classes()
            .iter()
            .any(|c| c.contains(&cycles("(1,5)(2,4)", 6))));
    }

    #[test]
    fn conjugacy_queries() {
        let g = automorphism_group(&cyclic3()).unwrap();
        let id = Permutation::identity(3);
        let t = cycles("(1,2)", 3);
        assert!(g.are_conjugate(&t, &t).unwrap());
        assert!(!g.are_conjugate(&id, &t).unwrap());
        assert!(g.are_conjugate(&cycles("(0,1)", 3), &t).is_err());
    }
}
