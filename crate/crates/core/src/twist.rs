//! The correspondence between AG-monoids and pairs (commutative monoid,
//! involutive automorphism): `a·b = α(a) + b`, and back via `α(x) = x·0`,
//! `x + y = α(x)·y`.

use crate::automorphisms::{automorphism_group, MorphismSearch};
use crate::error::{Error, PairViolation};
use crate::perm::Permutation;
use crate::table::CayleyTable;

/// A commutative monoid with identity 0 and an automorphism of order at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistPair {
    monoid: CayleyTable,
    alpha: Permutation,
}

impl TwistPair {
    pub fn new(monoid: CayleyTable, alpha: Permutation) -> Result<Self, Error> {
        if !monoid.is_commutative() {
            return Err(PairViolation::NotCommutative.into());
        }
        if !monoid.is_associative() {
            return Err(PairViolation::NotAssociative.into());
        }
        if monoid.two_sided_identity() != Some(0) {
            return Err(PairViolation::IdentityNotAtZero.into());
        }
        if alpha.degree() != monoid.order() {
            return Err(PairViolation::AlphaDegree.into());
        }
        if !monoid.is_homomorphic_image(&monoid, &alpha)? {
            return Err(PairViolation::NotAnAutomorphism.into());
        }
        if !alpha.squares_to_identity() {
            return Err(PairViolation::NotAnInvolution.into());
        }
        Ok(Self { monoid, alpha })
    }

    /// Skips validation; callers guarantee the pair invariants.
    pub(crate) fn new_unchecked(monoid: CayleyTable, alpha: Permutation) -> Self {
        Self { monoid, alpha }
    }

    pub fn monoid(&self) -> &CayleyTable {
        &self.monoid
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    pub fn into_parts(self) -> (CayleyTable, Permutation) {
        (self.monoid, self.alpha)
    }
}

/// The AG-monoid `a·b = α(a) + b`. Row `a` of the result is row `α(a)` of the monoid.
pub fn twist(pair: &TwistPair) -> CayleyTable {
    let n = pair.order();
    let src = pair.monoid.raw();
    let mut cells = Vec::with_capacity(n * n);
    for a in 0..n {
        let r = pair.alpha.apply(a);
        cells.extend_from_slice(&src[r * n..(r + 1) * n]);
    }
    CayleyTable::from_raw(n, cells)
}

/// Validating convenience wrapper around [`TwistPair::new`] and [`twist`].
pub fn twist_parts(monoid: &CayleyTable, alpha: &Permutation) -> Result<CayleyTable, Error> {
    Ok(twist(&TwistPair::new(monoid.clone(), alpha.clone())?))
}

/// True for left invertive tables with at least one left identity.
pub fn is_ag_monoid(t: &CayleyTable) -> bool {
    !t.left_identities().is_empty() && t.is_left_invertive()
}

/// Recovers the unique pair whose twist is `t`. The left identity must sit at 0.
pub fn untwist(t: &CayleyTable) -> Result<TwistPair, Error> {
    if t.left_identities() != [0] {
        return Err(Error::NotAgMonoid("left identity missing or not at 0"));
    }
    if !t.is_left_invertive() {
        return Err(Error::NotAgMonoid("left invertive law fails"));
    }
    let n = t.order();
    let alpha: Vec<u8> = (0..n).map(|x| t.get(x, 0) as u8).collect();
    let mut cells = Vec::with_capacity(n * n);
    for &ax in &alpha {
        cells.extend((0..n).map(|y| t.get(ax as usize, y) as u8));
    }
    // α is a bijection for every AG-monoid, but validate rather than trust
    let alpha = Permutation::new(alpha.into_iter().map(usize::from).collect())
        .map_err(|_| Error::NotAgMonoid("x·0 is not a bijection"))?;
    let monoid = CayleyTable::from_raw(n, cells);
    TwistPair::new(monoid, alpha)
}

/// Searches for `φ` fixing 0 with `φ(x + y) = φ(x) +' φ(y)` and `φα = α'φ`.
pub fn find_pair_isomorphism(p1: &TwistPair, p2: &TwistPair) -> Result<Option<Permutation>, Error> {
    if p1.order() != p2.order() {
        return Err(Error::SizeMismatch {
            left: p1.order(),
            right: p2.order(),
        });
    }
    let mut found = None;
    MorphismSearch::new(&p1.monoid, &p2.monoid, Some((&p1.alpha, &p2.alpha))).run(&mut |img| {
        found = Some(Permutation::from_images_unchecked(img.to_vec()));
        false
    });
    Ok(found)
}

/// Whether the twists of `p1` and `p2` are isomorphic, decided on the pairs.
pub fn ag_isomorphic_via_monoid(p1: &TwistPair, p2: &TwistPair) -> Result<bool, Error> {
    Ok(find_pair_isomorphism(p1, p2)?.is_some())
}

/// Number of AG-monoids arising from `m`, split into the single associative
/// one (α = 1) and the non-associative ones (one per conjugacy class of
/// non-identity involutions in Aut(m)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistCount {
    pub associative: usize,
    pub nonassociative: usize,
}

pub fn count_ag_monoids_from_monoid(m: &CayleyTable) -> Result<TwistCount, Error> {
    // full validation of the monoid through the α = 1 pair
    TwistPair::new(m.clone(), Permutation::identity(m.order()))?;
    let classes = automorphism_group(m)?.conjugacy_classes_of_involutions();
    Ok(TwistCount {
        associative: 1,
        nonassociative: classes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::storage::parse_cycle_notation;
    use crate::table::fixtures::*;

    fn alpha() -> Permutation {
        parse_cycle_notation("(1,5)(2,4)", 6).unwrap()
    }

    #[test]
    fn twist_of_example1_is_example2() {
        let pair = TwistPair::new(example1(), alpha()).unwrap();
        assert_eq!(twist(&pair), example2());
        let plain = TwistPair::new(example1(), Permutation::identity(6)).unwrap();
        assert_eq!(twist(&plain), example1());
    }

    #[test]
    fn twist_of_c3() {
        let swap = parse_cycle_notation("(1,2)", 3).unwrap();
        let t = twist_parts(&cyclic3(), &swap).unwrap();
        let expected = CayleyTable::from_rows(&[[0, 1, 2], [2, 0, 1], [1, 2, 0]]).unwrap();
        assert_eq!(t, expected);
        assert!(t.is_left_invertive());
        assert_eq!(t.left_identities(), vec![0]);
    }

    #[test]
    fn pair_validation_names_the_violation() {
        let check = |m: CayleyTable, a: Permutation, v: PairViolation| {
            assert!(matches!(TwistPair::new(m, a), Err(Error::InvalidPair(x)) if x == v));
        };
        check(
            example2(),
            Permutation::identity(6),
            PairViolation::NotCommutative,
        );
        check(
            example1(),
            Permutation::identity(5),
            PairViolation::AlphaDegree,
        );
        check(
            example1(),
            parse_cycle_notation("(1,2)", 6).unwrap(),
            PairViolation::NotAnAutomorphism,
        );
        // (1·1)·2 = 1 but 1·(1·2) = 2
        let nonassoc = CayleyTable::from_rows(&[[0, 1, 2], [1, 2, 2], [2, 2, 1]]).unwrap();
        check(
            nonassoc,
            Permutation::identity(3),
            PairViolation::NotAssociative,
        );
        let semilattice = CayleyTable::from_rows(&[[0, 0], [0, 1]]).unwrap();
        check(
            semilattice,
            Permutation::identity(2),
            PairViolation::IdentityNotAtZero,
        );
        // the 3-cycle on a group of order 4 (Klein) is an automorphism of order three
        let klein =
            CayleyTable::from_rows(&[[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
                .unwrap();
        check(
            klein,
            parse_cycle_notation("(1,2,3)", 4).unwrap(),
            PairViolation::NotAnInvolution,
        );
    }

    #[test]
    fn untwist_recovers_pairs() {
        let pair = untwist(&example2()).unwrap();
        assert_eq!(pair.monoid(), &example1());
        assert_eq!(pair.alpha(), &alpha());

        let pair = untwist(&example1()).unwrap();
        assert_eq!(pair.monoid(), &example1());
        assert!(pair.alpha().is_identity());

        assert!(untwist(&left_zero()).is_err());
        let moved = example2()
            .apply_permutation(&Permutation::transposition(6, 0, 2).unwrap())
            .unwrap();
        assert!(untwist(&moved).is_err());
    }

    #[test]
    fn ag_monoid_predicate() {
        assert!(is_ag_monoid(&example2()));
        assert!(is_ag_monoid(&example1()));
        assert!(!is_ag_monoid(&left_zero()));
    }

    #[test]
    fn pair_isomorphism() {
        let plain = TwistPair::new(example1(), Permutation::identity(6)).unwrap();
        let twisted = TwistPair::new(example1(), alpha()).unwrap();
        assert!(ag_isomorphic_via_monoid(&plain, &plain).unwrap());
        assert!(ag_isomorphic_via_monoid(&twisted, &twisted).unwrap());
        assert!(!ag_isomorphic_via_monoid(&plain, &twisted).unwrap());
        let c3 = TwistPair::new(cyclic3(), Permutation::identity(3)).unwrap();
        assert!(ag_isomorphic_via_monoid(&plain, &c3).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(
            count_ag_monoids_from_monoid(&trivial()).unwrap(),
            TwistCount {
                associative: 1,
                nonassociative: 0
            }
        );
        assert_eq!(
            count_ag_monoids_from_monoid(&cyclic3()).unwrap(),
            TwistCount {
                associative: 1,
                nonassociative: 1
            }
        );
        assert!(count_ag_monoids_from_monoid(&example2()).is_err());
    }
}
