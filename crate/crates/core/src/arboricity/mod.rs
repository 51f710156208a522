//! `(Γ, A)`-vertex-arboricity: the least number of parts in a vertex
//! partition where no part induces a cycle with value in `A`.

mod laws;
mod oracle;
mod solver;

pub use laws::{check_component_law, check_deletion_law, disjoint_a_cycles};
pub(crate) use laws::greedy_disjoint_a_cycles;
pub use oracle::{arb_oracle, ORACLE_LIMIT};
pub use solver::{arb_exact, arb_of_subset, ArbResult, Exhaustion};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{Elem, Group};
    use crate::graph::{verify_partition, LGraph, ValueSet};

    fn complete(group: &Group, n: usize, label: &Elem) -> LGraph {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, label.clone()));
        LGraph::new(group, n, edges).unwrap()
    }

    fn k4_z3() -> (LGraph, ValueSet) {
        let z3 = Group::cyclic(3).unwrap();
        let g = complete(&z3, 4, &z3.elem([1]).unwrap());
        (g, ValueSet::finite(&z3, vec![z3.zero()]).unwrap())
    }

    #[test]
    fn single_vertex() {
        let z = Group::integers();
        let g = LGraph::new(&z, 1, []).unwrap();
        let a = ValueSet::nonzero(&z).unwrap();
        let r = arb_exact(&g, &a, None).unwrap();
        assert_eq!(r.value, 1);
        assert!(r.exhaustion.is_none());
        assert_eq!(arb_oracle(&g, &a).unwrap(), 1);
    }

    #[test]
    fn k4_over_z3() {
        let (g, a) = k4_z3();
        let r = arb_exact(&g, &a, None).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.exhaustion.as_ref().unwrap().refuted_parts, 1);
        assert_eq!(verify_partition(&g, &a, &r.witness, Some(2)), Ok(2));
        assert_eq!(arb_oracle(&g, &a).unwrap(), 2);
    }

    #[test]
    fn k5_lower_bound_instance() {
        let z = Group::integers();
        let g = complete(&z, 5, &z.elem([1]).unwrap());
        let a = ValueSet::finite(&z, vec![z.elem([3]).unwrap()]).unwrap();
        assert_eq!(arb_exact(&g, &a, None).unwrap().value, 3);
        assert_eq!(arb_oracle(&g, &a).unwrap(), 3);
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let z = Group::integers();
        let g = complete(&z, 7, &z.elem([1]).unwrap());
        let a = ValueSet::finite(&z, vec![z.elem([3]).unwrap()]).unwrap();
        match arb_exact(&g, &a, Some(3)) {
            Err(crate::error::ArbError::Budget { lower, upper, .. }) => {
                assert!(lower >= 1 && lower <= upper);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn oracle_guard() {
        let z = Group::integers();
        let g = LGraph::new(&z, 13, []).unwrap();
        let a = ValueSet::nonzero(&z).unwrap();
        assert!(matches!(
            arb_oracle(&g, &a),
            Err(crate::error::ArbError::OracleGuard { .. })
        ));
    }

    #[test]
    fn laws_on_unions() {
        let (k4, a) = k4_z3();
        let z3 = k4.group().clone();
        let edge = LGraph::new(&z3, 2, [(0, 1, z3.elem([1]).unwrap())]).unwrap();
        let union = k4.disjoint_union(&edge).unwrap();
        assert_eq!(arb_exact(&union, &a, None).unwrap().value, 2);
        assert!(check_component_law(&union, &a, None).unwrap());
        let twice = k4.disjoint_union(&k4).unwrap();
        assert_eq!(arb_exact(&twice, &a, None).unwrap().value, 2);
        assert!(check_component_law(&twice, &a, None).unwrap());
        for v in 0..4 {
            assert!(check_deletion_law(&k4, &a, v, None).unwrap());
        }
    }

    #[test]
    fn disjoint_cycles() {
        let (k4, a) = k4_z3();
        let one = disjoint_a_cycles(&k4, &a, 1, None).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].value.is_zero());
        let twice = k4.disjoint_union(&k4).unwrap();
        assert!(matches!(
            disjoint_a_cycles(&twice, &a, 2, None),
            Err(crate::error::ArbError::Precondition(_))
        ));
    }
}
