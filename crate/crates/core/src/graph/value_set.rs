use std::fmt;

use crate::abelian::{Elem, Group, SubgroupDesc};
use crate::error::{GraphError, GroupError};

/// How a value set is described.
#[derive(Clone, Debug)]
pub enum SetForm {
    /// `A` is exactly these elements.
    Finite(Vec<Elem>),
    /// `A` is everything except these elements.
    Cofinite(Vec<Elem>),
    /// `A` is everything outside the subgroup.
    SubgroupComplement(SubgroupDesc),
}

/// A nonempty subset `A` of a group with decidable membership.
#[derive(Clone, Debug)]
pub struct ValueSet {
    group: Group,
    form: SetForm,
}

fn check_group(group: &Group, elems: &[Elem]) -> Result<(), GroupError> {
    match elems.iter().find(|e| !e.group().same_as(group)) {
        Some(bad) => Err(GroupError::DescriptorMismatch {
            left: group.to_string(),
            right: bad.group().to_string(),
        }),
        None => Ok(()),
    }
}

impl ValueSet {
    pub fn finite(group: &Group, mut elems: Vec<Elem>) -> Result<Self, GraphError> {
        check_group(group, &elems)?;
        elems.sort();
        elems.dedup();
        if elems.is_empty() {
            return Err(GraphError::EmptyValueSet);
        }
        Ok(ValueSet {
            group: group.clone(),
            form: SetForm::Finite(elems),
        })
    }

    pub fn cofinite(group: &Group, mut complement: Vec<Elem>) -> Result<Self, GraphError> {
        check_group(group, &complement)?;
        complement.sort();
        complement.dedup();
        if let Some(size) = group.cardinality() {
            if size <= complement.len().into() {
                return Err(GraphError::EmptyValueSet);
            }
        }
        Ok(ValueSet {
            group: group.clone(),
            form: SetForm::Cofinite(complement),
        })
    }

    pub fn co_subgroup(sub: SubgroupDesc) -> Result<Self, GraphError> {
        if sub.is_everything() {
            return Err(GraphError::EmptyValueSet);
        }
        Ok(ValueSet {
            group: sub.group().clone(),
            form: SetForm::SubgroupComplement(sub),
        })
    }

    /// `Γ \ {0}`.
    pub fn nonzero(group: &Group) -> Result<Self, GraphError> {
        Self::cofinite(group, vec![group.zero()])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn form(&self) -> &SetForm {
        &self.form
    }

    pub fn contains(&self, a: &Elem) -> bool {
        if !a.group().same_as(&self.group) {
            return false;
        }
        match &self.form {
            SetForm::Finite(elems) => elems.binary_search(a).is_ok(),
            SetForm::Cofinite(complement) => complement.binary_search(a).is_err(),
            SetForm::SubgroupComplement(sub) => !sub.contains(a),
        }
    }

    /// Size of the complement when it is given explicitly.
    pub fn omega(&self) -> Option<usize> {
        match &self.form {
            SetForm::Cofinite(complement) => Some(complement.len()),
            _ => None,
        }
    }

    /// The explicit complement of a cofinite set.
    pub fn complement(&self) -> Option<&[Elem]> {
        match &self.form {
            SetForm::Cofinite(complement) => Some(complement),
            _ => None,
        }
    }

    /// Decides whether the subgroup meets `A`.
    pub fn meets_subgroup(&self, sub: &SubgroupDesc) -> Result<bool, GroupError> {
        if !sub.group().same_as(&self.group) {
            return Err(GroupError::DescriptorMismatch {
                left: self.group.to_string(),
                right: sub.group().to_string(),
            });
        }
        Ok(match &self.form {
            SetForm::Finite(elems) => elems.iter().any(|a| sub.contains(a)),
            SetForm::Cofinite(complement) => {
                // The subgroup avoids A iff it sits inside the complement.
                if !sub.is_finite() {
                    return Ok(true);
                }
                match sub.enumerate(complement.len()) {
                    Ok(all) => all.iter().any(|x| complement.binary_search(x).is_err()),
                    Err(GroupError::TooLarge(_)) => true,
                    Err(e) => return Err(e),
                }
            }
            SetForm::SubgroupComplement(omega) => {
                !sub.generators().iter().all(|g| omega.contains(g))
            }
        })
    }

    /// Whether `⟨g⟩` meets `A`.
    pub fn meets_cyclic(&self, g: &Elem) -> Result<bool, GroupError> {
        self.meets_subgroup(&SubgroupDesc::new(&self.group, vec![g.clone()])?)
    }

    pub fn is_cofinite(&self) -> bool {
        matches!(self.form, SetForm::Cofinite(_))
    }

    /// Smallest `p` in `lo..=hi` with `p * g` in `A`.
    pub fn first_multiple_in(&self, g: &Elem, lo: u64, hi: u64) -> Option<u64> {
        (lo..=hi).find(|&p| self.contains(&g.scale_by(p as i64)))
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, elems: &[Elem]) -> fmt::Result {
    f.write_str("[")?;
    for (i, e) in elems.iter().enumerate() {
        if i > 0 {
            f.write_str(";")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str("]")
}

/// Value-set line body as used in graph files, e.g. `cofinite [(3)]`.
impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            SetForm::Finite(elems) => {
                f.write_str("finite ")?;
                write_list(f, elems)
            }
            SetForm::Cofinite(elems) => {
                f.write_str("cofinite ")?;
                write_list(f, elems)
            }
            SetForm::SubgroupComplement(sub) => {
                f.write_str("co-subgroup ")?;
                write_list(f, sub.generators())
            }
        }
    }
}
