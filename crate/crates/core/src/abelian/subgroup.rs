use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{Elem, Group, Order};
use super::lattice::{smith_form, RowLattice};
use crate::error::GroupError;

/// Subgroup generated by a finite list of elements.
///
/// Membership is decided on the relation lattice spanned by the generators
/// together with the torsion relations `n_i e_{r+i}`, so infinite subgroups
/// are handled without enumeration.
#[derive(Clone)]
pub struct SubgroupDesc {
    group: Group,
    generators: Vec<Elem>,
    lattice: RowLattice,
}

impl SubgroupDesc {
    pub fn new(group: &Group, generators: Vec<Elem>) -> Result<Self, GroupError> {
        if let Some(bad) = generators.iter().find(|g| !g.group().same_as(group)) {
            return Err(GroupError::DescriptorMismatch {
                left: group.to_string(),
                right: bad.group().to_string(),
            });
        }
        let lattice = RowLattice::new(relation_rows(group, &generators), group.rank());
        Ok(SubgroupDesc {
            group: group.clone(),
            generators,
            lattice,
        })
    }

    pub fn trivial(group: &Group) -> Self {
        Self::new(group, Vec::new()).expect("no generators")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn contains(&self, a: &Elem) -> bool {
        a.group().same_as(&self.group) && self.lattice.contains(a.coords())
    }

    /// True when every generator has finite order.
    pub fn is_finite(&self) -> bool {
        self.generators
            .iter()
            .all(|g| matches!(g.order(), Order::Finite(_)))
    }

    /// True when the subgroup is the whole group.
    pub fn is_everything(&self) -> bool {
        self.group.basis().iter().all(|e| self.contains(e))
    }

    /// Breadth-first closure of the generators. Fails when more than
    /// `limit` elements are reached.
    pub fn enumerate(&self, limit: usize) -> Result<Vec<Elem>, GroupError> {
        closure(&self.group, &self.generators, limit)
    }

    /// Quotient of the ambient group by this subgroup.
    pub fn quotient(&self) -> Quotient {
        Quotient::new(self)
    }
}

impl fmt::Debug for SubgroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> in {}", self.group)
    }
}

fn relation_rows(group: &Group, generators: &[Elem]) -> Vec<Vec<BigInt>> {
    let r = group.free_rank();
    let mut rows: Vec<Vec<BigInt>> = generators.iter().map(|g| g.coords().to_vec()).collect();
    for (i, n) in group.torsion_moduli().iter().enumerate() {
        let mut row = vec![BigInt::zero(); group.rank()];
        row[r + i] = n.clone();
        rows.push(row);
    }
    rows
}

/// All elements reachable from zero by adding generators and their
/// negatives. This is the enumeration oracle for finite subgroups.
pub fn closure(group: &Group, generators: &[Elem], limit: usize) -> Result<Vec<Elem>, GroupError> {
    let mut steps: Vec<Elem> = generators.to_vec();
    steps.extend(generators.iter().map(|g| -g));
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(group.zero());
    queue.push_back(group.zero());
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = x.checked_add(s)?;
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(GroupError::TooLarge(limit));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Canonical presentation of `Γ/Λ` together with the projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    source: Group,
    target: Group,
    /// Columns of the Smith column transform that survive, free ones first.
    columns: Vec<usize>,
    transform: Vec<Vec<BigInt>>,
}

impl Quotient {
    fn new(sub: &SubgroupDesc) -> Self {
        let source = sub.group.clone();
        let n = source.rank();
        let rows = relation_rows(&source, &sub.generators);
        let snf = smith_form(&rows, n);
        let rank = snf.diagonal.len();
        let mut columns: Vec<usize> = (rank..n).collect();
        let mut moduli = Vec::new();
        for (i, d) in snf.diagonal.iter().enumerate() {
            if *d > BigInt::from(1) {
                columns.push(i);
                moduli.push(d.clone());
            }
        }
        let target = Group::new(n - rank, moduli).expect("invariant factors exceed one");
        Quotient {
            source,
            target,
            columns,
            transform: snf.column_transform,
        }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    /// Image of `a` in the quotient.
    pub fn project(&self, a: &Elem) -> Result<Elem, GroupError> {
        if !a.group().same_as(&self.source) {
            return Err(GroupError::DescriptorMismatch {
                left: self.source.to_string(),
                right: a.group().to_string(),
            });
        }
        let image = self
            .columns
            .iter()
            .map(|&j| {
                a.coords()
                    .iter()
                    .zip(&self.transform)
                    .map(|(x, row)| x * &row[j])
                    .sum::<BigInt>()
            })
            .collect::<Vec<_>>();
        self.target.elem(image)
    }
}
