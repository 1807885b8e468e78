//! Reidemeister-Schreier rewriting.

use std::collections::HashMap;

use crate::cosets::CosetTable;
use crate::error::{Error, Result};
use crate::presentation::GroupPresentation;
use crate::word::Word;

/// Name of the Schreier generator `rep(c) g rep(c.g)^-1`.
pub fn schreier_generator_name(coset: usize, gen: &str) -> String {
    format!("s{coset}_{gen}")
}

/// Presentation of the subgroup the table was built over: one generator per
/// Schreier generator not on the spanning tree, one relator per
/// (coset, relator) pair.
pub fn reidemeister_schreier(pres: &GroupPresentation, table: &CosetTable) -> Result<GroupPresentation> {
    table.verify(pres)?;
    let gens = pres.generators();
    let d = table.len();
    let mut on_tree = vec![false; d * gens.len()];
    for entry in table.spanning_tree().into_iter().enumerate() {
        if let (c, Some((parent, col))) = entry {
            // the forward edge a --g--> b carries the trivial generator s(a, g)
            let (from, g) = if col % 2 == 0 { (parent, col / 2) } else { (c, col / 2) };
            on_tree[from * gens.len() + g] = true;
        }
    }
    let mut names = Vec::new();
    let mut lookup: HashMap<(usize, usize), String> = HashMap::new();
    for c in 0..d {
        for (g, gname) in gens.iter().enumerate() {
            if !on_tree[c * gens.len() + g] {
                let name = schreier_generator_name(c, gname);
                lookup.insert((c, g), name.clone());
                names.push(name);
            }
        }
    }
    let mut relators = Vec::with_capacity(d * pres.relators().len());
    for r in pres.relators() {
        let cols = pres.compile(r)?;
        for c in 0..d {
            let mut w = Word::identity();
            let mut cur = c;
            for &col in &cols {
                let g = col / 2;
                if col % 2 == 0 {
                    if let Some(n) = lookup.get(&(cur, g)) {
                        w = w.concat(&Word::gen(n));
                    }
                    cur = table.act(cur, col);
                } else {
                    let prev = table.act(cur, col);
                    if let Some(n) = lookup.get(&(prev, g)) {
                        w = w.concat(&Word::power_of(n, -1));
                    }
                    cur = prev;
                }
            }
            if cur != c {
                return Err(Error::TableMismatch(format!("relator {r} does not close at coset {c}")));
            }
            if !w.is_identity() {
                relators.push(w);
            }
        }
    }
    GroupPresentation::new(&names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{abelianization, AbelianGroupInvariants};
    use crate::cosets::enumerate_cosets;

    #[test]
    fn subgroup_of_cyclic_group() {
        let p = GroupPresentation::parse_parts(&["a"], &["a^6"]).unwrap();
        let t = enumerate_cosets(&p, &[Word::power_of("a", 3)], 100).unwrap();
        assert_eq!(t.len(), 3);
        let sub = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(abelianization(&sub), AbelianGroupInvariants::from_factors(&[2], 0));
    }

    #[test]
    fn index_one_reproduces_the_group() {
        let p = GroupPresentation::parse_parts(&["a", "b"], &["a^2", "b^3", "a b a b"]).unwrap();
        let t = enumerate_cosets(&p, &[Word::gen("a"), Word::gen("b")], 100).unwrap();
        let sub = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(abelianization(&sub), abelianization(&p));
    }

    #[test]
    fn trivial_subgroup_of_finite_group_is_trivial() {
        let p = GroupPresentation::parse_parts(&["a", "b"], &["a^2", "b^3", "a b a b"]).unwrap();
        let t = enumerate_cosets(&p, &[], 100).unwrap();
        let sub = reidemeister_schreier(&p, &t).unwrap();
        // rank of the free group on Schreier generators: d(k - 1) + 1
        assert_eq!(sub.generators().len(), 6 + 1);
        assert!(abelianization(&sub).is_trivial());
    }

    #[test]
    fn commutator_subgroup_of_free_group_quotient() {
        // Z x Z acting on Z/2 x Z/2 cosets: index 4 subgroup <a^2, b^2> is Z^2
        let p = GroupPresentation::parse_parts(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
        let t = enumerate_cosets(&p, &[Word::power_of("a", 2), Word::power_of("b", 2)], 100).unwrap();
        assert_eq!(t.len(), 4);
        let sub = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(abelianization(&sub), AbelianGroupInvariants::from_factors(&[], 2));
    }

    #[test]
    fn mismatched_table() {
        let p = GroupPresentation::parse_parts(&["a"], &["a^6"]).unwrap();
        let q = GroupPresentation::parse_parts(&["a"], &["a^4"]).unwrap();
        let t = enumerate_cosets(&p, &[], 100).unwrap();
        assert!(matches!(reidemeister_schreier(&q, &t), Err(Error::TableMismatch(_))));
    }
}
