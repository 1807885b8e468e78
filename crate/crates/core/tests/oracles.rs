mod common;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use coverlink::clasp::{eval, realize};
use coverlink::pd::{round_unknot, trefoil};
use coverlink::qm::{g0_presentation, qm_link_p0, QM_LINK_P0_FRAMINGS};
use coverlink::{
    abelianization, augment_form, check_homomorphism, enumerate_cosets, eta_words, qm_presentation,
    qm_surgery_presentation, reidemeister_schreier, subgroup_generates, surgery_group, word_is_trivial,
    AbelianGroupInvariants, ClaspProgram, FiniteGroup, GroupPresentation, GroupRingElement, Instruction,
    IntegerSymmetricForm, QmInstance, SurgeryDescription, TwistedLinkingMatrix, Word,
};

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

#[test]
fn abelianization_by_hand() {
    // exponent matrix [[2, -4], [0, 0]] has Smith form diag(2, 0)
    let p = GroupPresentation::parse_parts(&["a", "b"], &["a^2 b^-4", "a b a^-1 b^-1"]).unwrap();
    assert_eq!(abelianization(&p), AbelianGroupInvariants::from_factors(&[2], 1));
    let free = GroupPresentation::parse_parts(&["a", "b"], &[]).unwrap();
    assert_eq!(abelianization(&free), AbelianGroupInvariants::from_factors(&[], 2));
}

#[test]
fn cyclic_and_qm_orders() {
    let c5 = GroupPresentation::parse_parts(&["a"], &["a^5"]).unwrap();
    assert_eq!(enumerate_cosets(&c5, &[], 1_000_000).unwrap().len(), 5);
    let g = qm_presentation(QmInstance::new(1));
    assert_eq!(enumerate_cosets(&g, &[], 1_000_000).unwrap().len(), 28);
    assert_eq!(enumerate_cosets(&g, &[w("y^2")], 1_000_000).unwrap().len(), 4);
    let small = qm_presentation(QmInstance::new(-1));
    assert_eq!(enumerate_cosets(&small, &[], 1_000_000).unwrap().len(), 4);
    let s = qm_surgery_presentation(QmInstance::new(1));
    assert_eq!(enumerate_cosets(&s, &[], 1_000_000).unwrap().len(), 28);
}

#[test]
fn y_moves_every_coset() {
    let g = qm_presentation(QmInstance::new(1));
    let t = enumerate_cosets(&g, &[], 1_000_000).unwrap();
    assert!(!word_is_trivial(&t, &w("y")).unwrap());
    let perm = t.permutation(&w("y")).unwrap();
    assert!(perm.iter().enumerate().all(|(c, &d)| c != d));
    assert!(word_is_trivial(&t, &Word::identity()).unwrap());
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut k = 1;
    let mut cur = perm.to_vec();
    while cur.iter().enumerate().any(|(i, &j)| i != j) {
        cur = cur.iter().map(|&j| perm[j]).collect();
        k += 1;
    }
    k
}

#[test]
fn eta_zero_has_order_seven() {
    let inst = QmInstance::new(1);
    let t = enumerate_cosets(&qm_presentation(inst), &[], 1_000_000).unwrap();
    let (eta0, eta1) = eta_words(inst);
    assert_eq!(permutation_order(&t.permutation(&eta0).unwrap()), 7);
    assert_eq!(permutation_order(&t.permutation(&w("y")).unwrap()), 14);
    assert!(word_is_trivial(&t, &eta1.inverse().concat(&eta0)).unwrap());
}

#[test]
fn kernel_of_the_extension() {
    let pres = qm_presentation(QmInstance::new(1));
    let t = enumerate_cosets(&pres, &[w("y^2")], 1_000_000).unwrap();
    let sub = reidemeister_schreier(&pres, &t).unwrap();
    assert_eq!(abelianization(&sub), AbelianGroupInvariants::from_factors(&[7], 0));
    assert!(!subgroup_generates(&t));
    let all = enumerate_cosets(&pres, &[w("y"), w("z")], 1_000_000).unwrap();
    assert!(subgroup_generates(&all));
}

#[test]
fn homomorphism_checks() {
    let z3 = GroupPresentation::parse_parts(&["t"], &["t^3"]).unwrap();
    let table = enumerate_cosets(&z3, &[], 100).unwrap();
    let src = GroupPresentation::parse_parts(&["a"], &["a^2"]).unwrap();
    let images = HashMap::from([("a".to_string(), w("t"))]);
    assert!(!check_homomorphism(&src, &table, &images).unwrap());
    let ident = HashMap::from([("t".to_string(), w("t"))]);
    assert!(check_homomorphism(&z3, &table, &ident).unwrap());
    assert!(check_homomorphism(&src, &table, &HashMap::new()).is_err());
}

#[test]
fn lens_spaces_and_zero_surgery() {
    let four = SurgeryDescription::new(round_unknot(), BTreeMap::from([(0, 4)])).unwrap();
    assert_eq!(abelianization(&surgery_group(&four).unwrap()), AbelianGroupInvariants::from_factors(&[4], 0));
    let zero = SurgeryDescription::new(round_unknot(), BTreeMap::from([(0, 0)])).unwrap();
    assert_eq!(abelianization(&surgery_group(&zero).unwrap()), AbelianGroupInvariants::from_factors(&[], 1));
    let kinked = SurgeryDescription::new(coverlink::pd::kinked_unknot(), BTreeMap::from([(0, 4)])).unwrap();
    let g = surgery_group(&kinked).unwrap();
    assert_eq!(enumerate_cosets(&g, &[], 1000).unwrap().len(), 4);
}

#[test]
fn trefoil_surgeries() {
    // +1 gives the Poincare sphere, -1 the Brieskorn sphere with infinite group
    let plus = SurgeryDescription::new(trefoil(), BTreeMap::from([(0, 1)])).unwrap();
    let g = surgery_group(&plus).unwrap();
    assert!(abelianization(&g).is_trivial());
    assert_eq!(enumerate_cosets(&g, &[], 100_000).unwrap().len(), 120);
    let five = SurgeryDescription::new(trefoil(), BTreeMap::from([(0, 5)])).unwrap();
    assert_eq!(abelianization(&surgery_group(&five).unwrap()), AbelianGroupInvariants::from_factors(&[5], 0));
}

/// The stored diagram, surgered with framings (-1, 0), must present the same
/// group as the surgery presentation at p = 0: some choice of arc generators for
/// x, y, z satisfies every relator and generates the order-12 group.
#[test]
fn link_fixture_matches_the_three_relators() {
    let pd = qm_link_p0();
    assert_eq!(pd.linking_number(0, 1), 2);
    let frames: BTreeMap<usize, i64> = QM_LINK_P0_FRAMINGS.iter().copied().enumerate().collect();
    let sd = SurgeryDescription::new(pd.clone(), frames).unwrap();
    let g = surgery_group(&sd).unwrap();
    assert_eq!(abelianization(&g), AbelianGroupInvariants::from_factors(&[4], 0));
    let table = enumerate_cosets(&g, &[], 100_000).unwrap();
    assert_eq!(table.len(), 12);

    let target = qm_surgery_presentation(QmInstance::new(0));
    let arcs: Vec<Word> =
        pd.arc_generators().iter().flat_map(|a| [Word::gen(a), Word::power_of(a, -1)]).collect();
    let mut found = 0;
    for x in &arcs {
        for y in &arcs {
            for z in &arcs {
                let images = HashMap::from([
                    ("x".to_string(), x.clone()),
                    ("y".to_string(), y.clone()),
                    ("z".to_string(), z.clone()),
                ]);
                if !check_homomorphism(&target, &table, &images).unwrap() {
                    continue;
                }
                let sub = enumerate_cosets(&g, &[x.clone(), y.clone(), z.clone()], 1000).unwrap();
                if subgroup_generates(&sub) {
                    found += 1;
                }
            }
        }
    }
    assert!(found > 0, "no arc assignment realizes the relators");

    // the link group itself maps onto the p = 0 group through those relators
    let gm = enumerate_cosets(&qm_presentation(QmInstance::new(0)), &[], 1000).unwrap();
    let elim = coverlink::qm::elimination_images();
    assert!(check_homomorphism(&g0_presentation(), &gm, &elim).unwrap());
}

#[test]
fn group_ring_examples() {
    let g = common::gm(1);
    let y2 = g.element(&w("y^2")).unwrap();
    let prod = GroupRingElement::monomial(&g, y2, 1).multiply(&GroupRingElement::monomial(&g, g.inverse(y2), 1));
    assert_eq!(prod.unwrap(), GroupRingElement::one(&g));
    assert_eq!(GroupRingElement::one(&g).regular_matrix(), coverlink::IntMatrix::identity(28));
}

#[test]
fn clasp_examples() {
    let g = common::gm(1);
    let t = eval(&ClaspProgram::new(vec![-1]), &g).unwrap();
    assert_eq!(t.upstairs_framing(0).unwrap(), -1);
    assert_eq!(t.entry(0, 0).non_identity_sum(), 0);

    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let mut prog = ClaspProgram::new(vec![1]);
    prog.push(Instruction::SelfClasp { i: 0, sign: 1, element: w("t") });
    let t = eval(&prog, &z2).unwrap();
    // framing 1 = identity coefficient 0 + one clasp at t
    assert_eq!(t.upstairs_framing(0).unwrap(), 0);
    assert_eq!(t.entry(0, 0).coefficient(1), 1);

    let lam = vec![vec![GroupRingElement::from_terms(&z2, [(0, -1), (1, 2)])]];
    let aug = augment_form(&lam).unwrap();
    assert_eq!(aug.matrix()[(0, 0)], 1);

    let e = GroupRingElement::one(&g);
    let zero = GroupRingElement::zero(&g);
    let block = vec![vec![zero.clone(), e.clone()], vec![e, zero]];
    assert_eq!(augment_form(&block).unwrap(), IntegerSymmetricForm::hyperbolic());
    let t = TwistedLinkingMatrix::new(block.clone(), vec![0, 0], None, &g).unwrap();
    let back = eval(&realize(&g, &block, &[0, 0], None).unwrap(), &g).unwrap();
    assert_eq!(back.lambda(), t.lambda());
    assert_eq!(back.mu().map(|m| m.iter().all(GroupRingElement::is_zero)), Some(true));
}

#[test]
fn naive_smith_oracle_on_known_matrices() {
    let m = coverlink::IntMatrix::from_rows(vec![vec![-1, 2], vec![2, -1]]);
    let (f, r) = common::naive_cokernel(&m);
    assert_eq!((f, r), (vec![3.into()], 0));
    let m = coverlink::IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let (f, r) = common::naive_cokernel(&m);
    assert_eq!((f, r), (vec![2.into(), 6.into(), 12.into()], 0));
}
