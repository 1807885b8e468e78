//! The circle bundles `Q_m` over the projective plane with `m = -4p - 3`:
//! their presentation chain, eta curves and the `p = 0` link diagram.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pd::PdCode;
use crate::presentation::GroupPresentation;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QmInstance {
    p: i64,
    m: i64,
}

impl QmInstance {
    pub fn new(p: i64) -> Self {
        QmInstance { p, m: -4 * p - 3 }
    }

    pub fn with_m(p: i64, m: i64) -> Result<Self> {
        if m != -4 * p - 3 {
            return Err(Error::InvalidInstance(format!("m = {m} but -4p - 3 = {}", -4 * p - 3)));
        }
        Ok(QmInstance { p, m })
    }

    pub fn from_m(m: i64) -> Result<Self> {
        if (-m - 3) % 4 != 0 {
            return Err(Error::InvalidInstance(format!("m = {m} is not of the form -4p - 3")));
        }
        Ok(QmInstance::new((-m - 3) / 4))
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// `4|m|`.
    pub fn group_order(&self) -> u64 {
        4 * self.m.unsigned_abs()
    }
}

fn w(s: &str) -> Word {
    Word::parse(s).expect("static word")
}

/// `<y, z | z^2 y^-(4p+3), z^-1 y z y>`.
pub fn qm_presentation(inst: QmInstance) -> GroupPresentation {
    let q = 4 * inst.p + 3;
    let rels = vec![
        Word::power_of("z", 2).concat(&Word::power_of("y", -q)),
        w("z^-1 y z y"),
    ];
    GroupPresentation::new(&["y", "z"], rels).expect("valid presentation")
}

/// `z_p = (x y)^p z`, the image of `z` under `p` twists.
pub fn twisted_z(p: i64) -> Word {
    w("x y").pow(p).concat(&Word::gen("z"))
}

/// Link-complement relators of the `(J, K)` diagram with `z` replaced by
/// `z_p`, followed by the two surgery relators `x y` and
/// `z y^(p+1) z y^-(3p+2)`.
pub fn qm_surgery_presentation(inst: QmInstance) -> GroupPresentation {
    let p = inst.p;
    let zp = twisted_z(p);
    let images = |g: &str| match g {
        "z" => Some(zp.clone()),
        other => Some(Word::gen(other)),
    };
    let mut rels: Vec<Word> = g0_relators()
        .iter()
        .map(|r| r.substitute(images).expect("total substitution"))
        .collect();
    rels.push(w("x y"));
    rels.push(s_minus_one_relator(p));
    GroupPresentation::new(&["x", "y", "z"], rels).expect("valid presentation")
}

/// The three Wirtinger relators of the `p = 0` link complement.
pub fn g0_relators() -> Vec<Word> {
    vec![w("y^-1 x y z y^-1 z^-1"), w("y z x^-1 z^-1"), w("y z^-1 y^-1 x^-1 z x")]
}

/// Fundamental group of the `p = 0` link complement, in the generators
/// `x, y, z`.
pub fn g0_presentation() -> GroupPresentation {
    GroupPresentation::new(&["x", "y", "z"], g0_relators()).expect("valid presentation")
}

/// The relator read from the `-1` framed surgery curve.
pub fn s_minus_one_relator(p: i64) -> Word {
    Word::gen("z")
        .concat(&Word::power_of("y", p + 1))
        .concat(&Word::gen("z"))
        .concat(&Word::power_of("y", -3 * p - 2))
}

/// The intermediate presentation after eliminating `x = y^-1`:
/// `<y, z | y^-2 (y z y^-1 z^-1), y z y z^-1, z y^(p+1) z y^-(3p+2)>`.
pub fn qm_intermediate_presentation(inst: QmInstance) -> GroupPresentation {
    let rels = vec![
        Word::power_of("y", -2).concat(&eta_words(inst).0),
        w("y z y z^-1"),
        s_minus_one_relator(inst.p),
    ];
    GroupPresentation::new(&["y", "z"], rels).expect("valid presentation")
}

/// `(eta0, eta1) = (y z y^-1 z^-1, y^2)`.
pub fn eta_words(_inst: QmInstance) -> (Word, Word) {
    (w("y z y^-1 z^-1"), w("y^2"))
}

/// Images eliminating `x`: `x -> y^-1, y -> y, z -> z`.
pub fn elimination_images() -> HashMap<String, Word> {
    HashMap::from([("x".into(), w("y^-1")), ("y".into(), w("y")), ("z".into(), w("z"))])
}

/// Images `y -> y, z -> z`.
pub fn inclusion_images() -> HashMap<String, Word> {
    HashMap::from([("y".into(), w("y")), ("z".into(), w("z"))])
}

/// Planar diagram of the `p = 0` link: `J` (component 0) is the closure of
/// the one-crossing two-strand braid, `K` (component 1) its braid axis,
/// linking `J` twice.
pub fn qm_link_p0() -> PdCode {
    PdCode::new(
        vec![[6, 7, 1, 10], [9, 2, 10, 1], [3, 8, 4, 7], [8, 5, 9, 4], [5, 3, 6, 2]],
        vec![vec![1, 2, 3, 4, 5, 6], vec![7, 8, 9, 10]],
    )
    .expect("valid fixture")
}

/// Framings of the `p = 0` surgery diagram: `-1` on `J`, `0` on `K`.
pub const QM_LINK_P0_FRAMINGS: [i64; 2] = [-1, 0];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_arithmetic() {
        let q = QmInstance::new(1);
        assert_eq!(q.m(), -7);
        assert_eq!(q.group_order(), 28);
        assert_eq!(QmInstance::new(-1).m(), 1);
        assert_eq!(QmInstance::from_m(-11).unwrap().p(), 2);
        assert!(QmInstance::from_m(-5).is_err());
        assert!(QmInstance::with_m(0, -3).is_ok());
        assert!(QmInstance::with_m(0, -7).is_err());
    }

    #[test]
    fn presentation_words() {
        let g = qm_presentation(QmInstance::new(1));
        assert_eq!(g.relators()[0].to_string(), "z^2 y^-7");
        assert_eq!(g.relators()[1].to_string(), "z^-1 y z y");
        let g = qm_presentation(QmInstance::new(-1));
        assert_eq!(g.relators()[0].to_string(), "z^2 y");
    }

    #[test]
    fn surgery_relators_at_p0() {
        let s = qm_surgery_presentation(QmInstance::new(0));
        let rels: Vec<String> = s.relators().iter().map(|r| r.to_string()).collect();
        assert_eq!(
            rels,
            ["y^-1 x y z y^-1 z^-1", "y z x^-1 z^-1", "y z^-1 y^-1 x^-1 z x", "x y", "z y z y^-2"]
        );
    }

    #[test]
    fn twist_substitution() {
        assert_eq!(twisted_z(2).to_string(), "x y x y z");
        assert_eq!(twisted_z(-1).to_string(), "y^-1 x^-1 z");
        let s = qm_surgery_presentation(QmInstance::new(1));
        assert_eq!(s.relators()[1].to_string(), "y x y z x^-1 z^-1 y^-1 x^-1");
        assert_eq!(s.relators()[4].to_string(), "z y^2 z y^-5");
    }
}
