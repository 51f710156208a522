use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::GroupError;

/// Presentation of `Z^r x Z/n1 x ... x Z/nk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDesc {
    pub free_rank: usize,
    pub torsion_moduli: Vec<BigInt>,
}

impl GroupDesc {
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion_moduli.len()
    }
}

/// Shared handle to a group descriptor. Elements keep one of these so
/// that mixing elements of different groups is detected.
#[derive(Clone)]
pub struct Group(Arc<GroupDesc>);

impl Group {
    pub fn new(free_rank: usize, torsion_moduli: Vec<BigInt>) -> Result<Self, GroupError> {
        if let Some(bad) = torsion_moduli.iter().find(|n| **n < BigInt::from(2)) {
            return Err(GroupError::BadModulus(bad.clone()));
        }
        Ok(Group(Arc::new(GroupDesc {
            free_rank,
            torsion_moduli,
        })))
    }

    /// `Z^r x Z/n1 x ...` from machine-word moduli.
    pub fn from_parts(free_rank: usize, moduli: &[u64]) -> Result<Self, GroupError> {
        Self::new(free_rank, moduli.iter().map(|&n| BigInt::from(n)).collect())
    }

    pub fn integers() -> Self {
        Self::from_parts(1, &[]).expect("valid")
    }

    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        Self::from_parts(0, &[n])
    }

    pub fn desc(&self) -> &GroupDesc {
        &self.0
    }

    pub fn free_rank(&self) -> usize {
        self.0.free_rank
    }

    pub fn torsion_moduli(&self) -> &[BigInt] {
        &self.0.torsion_moduli
    }

    /// Number of coordinates of an element.
    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn same_as(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// `None` when the group is infinite.
    pub fn cardinality(&self) -> Option<BigUint> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(
            self.torsion_moduli()
                .iter()
                .fold(BigUint::one(), |acc, n| acc * n.magnitude()),
        )
    }

    pub fn zero(&self) -> Elem {
        Elem {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.rank()],
        }
    }

    /// Builds an element, reducing torsion coordinates.
    pub fn elem<I, T>(&self, coords: I) -> Result<Elem, GroupError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coords: Vec<BigInt> = coords.into_iter().map(Into::into).collect();
        if coords.len() != self.rank() {
            return Err(GroupError::Arity {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        Ok(self.reduced(coords))
    }

    pub(crate) fn reduced(&self, mut coords: Vec<BigInt>) -> Elem {
        let r = self.free_rank();
        for (c, n) in coords[r..].iter_mut().zip(self.torsion_moduli()) {
            *c = c.mod_floor(n);
        }
        Elem {
            group: self.clone(),
            coords,
        }
    }

    /// Sum of an iterator of elements; zero when empty.
    pub fn sum<'a, I: IntoIterator<Item = &'a Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.zero(), |acc, e| &acc + e)
    }

    /// Unit vectors; they generate the group.
    pub fn basis(&self) -> Vec<Elem> {
        (0..self.rank())
            .map(|i| {
                let mut coords = vec![BigInt::zero(); self.rank()];
                coords[i] = BigInt::one();
                self.reduced(coords)
            })
            .collect()
    }

    /// Every element of a finite group, in lexicographic coordinate order.
    /// Refuses infinite groups and groups above `limit` elements.
    pub fn elements(&self, limit: usize) -> Result<Vec<Elem>, GroupError> {
        let size = self.cardinality().ok_or(GroupError::Infinite)?;
        if size > BigUint::from(limit) {
            return Err(GroupError::TooLarge(limit));
        }
        let moduli: Vec<u64> = self
            .torsion_moduli()
            .iter()
            .map(|n| n.to_u64().expect("bounded by limit"))
            .collect();
        let mut out = Vec::new();
        let mut current = vec![0u64; moduli.len()];
        loop {
            out.push(self.reduced(current.iter().map(|&c| BigInt::from(c)).collect()));
            let mut i = moduli.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                current[i] += 1;
                if current[i] < moduli[i] {
                    break;
                }
                current[i] = 0;
            }
        }
    }

    /// Count of elements `g` with `2g = 0`: each torsion factor of even
    /// modulus contributes two solutions, everything else only zero.
    pub fn involution_count(&self) -> BigUint {
        let two = BigInt::from(2);
        self.torsion_moduli()
            .iter()
            .filter(|n| n.is_multiple_of(&two))
            .fold(BigUint::one(), |acc, _| acc * 2u32)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank() {
            0 if self.torsion_moduli().is_empty() => parts.push("Z^0".to_string()),
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for n in self.torsion_moduli() {
            parts.push(format!("Z/{n}"));
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Order of a group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

/// Element of a finitely generated abelian group. Torsion coordinates are
/// kept reduced, so equality is coordinate equality.
#[derive(Clone)]
pub struct Elem {
    group: Group,
    coords: Vec<BigInt>,
}

impl Elem {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Elem) -> Result<(), GroupError> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(GroupError::DescriptorMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Elem) -> Result<Elem, GroupError> {
        self.check_same(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.group.reduced(coords))
    }

    pub fn checked_sub(&self, other: &Elem) -> Result<Elem, GroupError> {
        self.checked_add(&other.neg_elem())
    }

    pub fn neg_elem(&self) -> Elem {
        self.group.reduced(self.coords.iter().map(|c| -c).collect())
    }

    /// `k * self`.
    pub fn scale(&self, k: &BigInt) -> Elem {
        self.group.reduced(self.coords.iter().map(|c| c * k).collect())
    }

    pub fn scale_by(&self, k: i64) -> Elem {
        self.scale(&BigInt::from(k))
    }

    /// Smallest `p >= 1` with `p * self = 0`.
    pub fn order(&self) -> Order {
        let r = self.group.free_rank();
        if self.coords[..r].iter().any(|c| !c.is_zero()) {
            return Order::Infinite;
        }
        let order = self.coords[r..]
            .iter()
            .zip(self.group.torsion_moduli())
            .fold(BigInt::one(), |acc, (c, n)| acc.lcm(&(n / c.gcd(n))));
        Order::Finite(order.magnitude().clone())
    }
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.group.same_as(&other.group)
    }
}

impl Eq for Elem {}

impl Hash for Elem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates; only meaningful within one group.
impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coordinate tuple, e.g. `(3,1)`.
impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Panics when the operands live in different groups; use
/// [`Elem::checked_add`] for a fallible version.
impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, rhs: &'a Elem) -> Elem {
        self.checked_add(rhs).expect("group descriptor mismatch")
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, rhs: &'a Elem) -> Elem {
        self.checked_sub(rhs).expect("group descriptor mismatch")
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_elem()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_wraps_in_z2() {
        let g = Group::cyclic(2).unwrap();
        let one = g.elem([1]).unwrap();
        assert_eq!(&one + &one, g.zero());
    }

    #[test]
    fn add_componentwise() {
        let g = Group::from_parts(1, &[2]).unwrap();
        let a = g.elem([3, 1]).unwrap();
        let b = g.elem([2, 1]).unwrap();
        assert_eq!(&a + &b, g.elem([5, 0]).unwrap());
    }

    #[test]
    fn negation_is_modular() {
        let g = Group::from_parts(0, &[4, 2]).unwrap();
        let a = g.elem([1, 1]).unwrap();
        assert_eq!(-&a, g.elem([3, 1]).unwrap());
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = Group::cyclic(2).unwrap().elem([1]).unwrap();
        let b = Group::cyclic(3).unwrap().elem([1]).unwrap();
        assert!(matches!(
            a.checked_add(&b),
            Err(GroupError::DescriptorMismatch { .. })
        ));
    }

    #[test]
    fn structurally_equal_groups_interoperate() {
        let a = Group::cyclic(5).unwrap().elem([2]).unwrap();
        let b = Group::cyclic(5).unwrap().elem([3]).unwrap();
        assert!(a.checked_add(&b).unwrap().is_zero());
    }

    #[test]
    fn orders() {
        let z6 = Group::cyclic(6).unwrap();
        assert_eq!(z6.elem([2]).unwrap().order(), Order::Finite(3u32.into()));
        assert_eq!(Group::integers().elem([1]).unwrap().order(), Order::Infinite);
        let g = Group::from_parts(0, &[4, 6]).unwrap();
        assert_eq!(g.elem([2, 3]).unwrap().order(), Order::Finite(2u32.into()));
        assert_eq!(g.zero().order(), Order::Finite(1u32.into()));
    }

    #[test]
    fn arity_and_modulus_checks() {
        assert!(Group::from_parts(0, &[1]).is_err());
        assert!(Group::integers().elem([1, 2]).is_err());
    }

    #[test]
    fn enumerate_small_group() {
        let g = Group::from_parts(0, &[2, 3]).unwrap();
        let all = g.elements(100).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], g.elem([0, 1]).unwrap());
        assert!(Group::integers().elements(10).is_err());
    }

    #[test]
    fn involutions() {
        let g = Group::from_parts(1, &[4, 2, 3]).unwrap();
        assert_eq!(g.involution_count(), BigUint::from(4u32));
        assert_eq!(Group::integers().involution_count(), BigUint::one());
    }

    #[test]
    fn display() {
        assert_eq!(Group::from_parts(2, &[3]).unwrap().to_string(), "Z^2 x Z/3");
        assert_eq!(Group::integers().to_string(), "Z");
        assert_eq!(Group::from_parts(0, &[]).unwrap().to_string(), "Z^0");
        assert_eq!(Group::from_parts(1, &[2]).unwrap().elem([-3, 1]).unwrap().to_string(), "(-3,1)");
    }
}
