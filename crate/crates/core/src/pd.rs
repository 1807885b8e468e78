//! Planar diagram codes, Wirtinger presentations, longitudes and integral
//! surgery.
//!
//! A crossing `X[a, b, c, d]` lists its four edge labels counterclockwise,
//! starting with the incoming under-edge `a`; the under-strand runs `a -> c`.
//! The crossing is positive (right-handed) when the over-strand runs
//! `d -> b`. Conjugation acts on the right, `u^v = v^-1 u v`. At a positive
//! crossing the outgoing under-arc is the incoming one conjugated by the
//! over-arc generator, `x_c = x_o^-1 x_a x_o`; at a negative crossing by its
//! inverse. Longitudes read the over-arc generator with the crossing sign as
//! exponent at each under-passage, then cancel the writhe with the meridian.
//! With these choices `+1` surgery on the right-handed trefoil gives the
//! binary icosahedral group.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::presentation::GroupPresentation;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    components: Vec<Vec<u32>>,
    // for each crossing, whether slot i is the head (end) of its edge
    heads: Vec<[bool; 4]>,
    arc_of: HashMap<u32, usize>,
    arc_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryDescription {
    pub pd: PdCode,
    pub framings: Vec<i64>,
}

impl SurgeryDescription {
    pub fn new(pd: PdCode, framings: BTreeMap<usize, i64>) -> Result<Self> {
        let n = pd.components.len();
        if framings.len() != n || framings.keys().any(|&k| k >= n) {
            return Err(Error::MalformedPd(format!("need exactly one framing for each of {n} components")));
        }
        Ok(SurgeryDescription { pd, framings: framings.into_values().collect() })
    }
}

impl PdCode {
    /// `components` lists each component's edge labels in the order they are
    /// traversed. A component with a single label that occurs in no crossing
    /// is a crossingless unknotted circle.
    pub fn new(crossings: Vec<[u32; 4]>, components: Vec<Vec<u32>>) -> Result<Self> {
        let mut slots: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (k, x) in crossings.iter().enumerate() {
            for (pos, &label) in x.iter().enumerate() {
                slots.entry(label).or_default().push((k, pos));
            }
        }
        if let Some((l, s)) = slots.iter().find(|(_, s)| s.len() != 2) {
            return Err(Error::MalformedPd(format!("edge {l} occurs {} times", s.len())));
        }
        let mut component_of: HashMap<u32, usize> = HashMap::new();
        for (ci, comp) in components.iter().enumerate() {
            if comp.is_empty() {
                return Err(Error::MalformedPd(format!("component {ci} is empty")));
            }
            for &l in comp {
                if component_of.insert(l, ci).is_some() {
                    return Err(Error::MalformedPd(format!("edge {l} listed twice in components")));
                }
                if !slots.contains_key(&l) && comp.len() != 1 {
                    return Err(Error::MalformedPd(format!("edge {l} occurs in no crossing")));
                }
            }
        }
        if let Some(l) = slots.keys().find(|l| !component_of.contains_key(l)) {
            return Err(Error::MalformedPd(format!("edge {l} belongs to no component")));
        }

        let next_in_component = |l: u32| -> u32 {
            let comp = &components[component_of[&l]];
            let i = comp.iter().position(|&x| x == l).expect("listed");
            comp[(i + 1) % comp.len()]
        };

        // orientation: propagate head/tail from the under-strands
        let mut head: Vec<[Option<bool>; 4]> = vec![[None; 4]; crossings.len()];
        let mut stack = Vec::new();
        for (k, h) in head.iter_mut().enumerate() {
            h[0] = Some(true);
            h[2] = Some(false);
            stack.push((k, 0));
            stack.push((k, 2));
        }
        let mut seeded = 0;
        loop {
            while let Some((k, pos)) = stack.pop() {
                let val = head[k][pos].expect("assigned");
                let label = crossings[k][pos];
                let mut implied = Vec::new();
                // the other end of the same edge
                for &(k2, p2) in &slots[&label] {
                    if (k2, p2) != (k, pos) {
                        implied.push((k2, p2, !val));
                    }
                }
                // the other over-slot at this crossing
                if pos % 2 == 1 {
                    implied.push((k, 4 - pos, !val));
                }
                for (k2, p2, v) in implied {
                    match head[k2][p2] {
                        None => {
                            head[k2][p2] = Some(v);
                            stack.push((k2, p2));
                        }
                        Some(old) if old != v => {
                            return Err(Error::MalformedPd(format!(
                                "inconsistent orientation at crossing {k2}"
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
            // components without under-passages: orient by listing order
            let Some(k) = (seeded..crossings.len()).find(|&k| head[k][1].is_none()) else { break };
            seeded = k;
            let [_, b, _, d] = crossings[k];
            let b_head = if next_in_component(b) == d {
                true
            } else if next_in_component(d) == b {
                false
            } else {
                return Err(Error::MalformedPd(format!("over-strand at crossing {k} is not consecutive")));
            };
            head[k][1] = Some(b_head);
            stack.push((k, 1));
        }
        let heads: Vec<[bool; 4]> = head.iter().map(|h| h.map(|v| v.expect("resolved"))).collect();

        // each strand must pass from an edge to its successor in the listing
        for (k, x) in crossings.iter().enumerate() {
            for (from, to) in [(0, 2), (1, 3), (3, 1)] {
                if heads[k][from] && next_in_component(x[from]) != x[to] {
                    return Err(Error::MalformedPd(format!(
                        "crossing {k}: edge {} is not followed by {} in its component",
                        x[from], x[to]
                    )));
                }
            }
        }

        // Wirtinger arcs: edges glued along over-strands
        let mut labels: Vec<u32> = component_of.keys().copied().collect();
        labels.sort_unstable();
        let pos_of: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for x in &crossings {
            let a = find(&mut parent, pos_of[&x[1]]);
            let b = find(&mut parent, pos_of[&x[3]]);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
        let mut arc_index: HashMap<usize, usize> = HashMap::new();
        let mut arc_names = Vec::new();
        let mut arc_of = HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let root = find(&mut parent, i);
            let idx = *arc_index.entry(root).or_insert_with(|| {
                arc_names.push(format!("x{}", labels[root]));
                arc_names.len() - 1
            });
            arc_of.insert(l, idx);
        }
        Ok(PdCode { crossings, components, heads, arc_of, arc_names })
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    /// +1 for right-handed crossings, -1 for left-handed.
    pub fn crossing_sign(&self, k: usize) -> i64 {
        if self.heads[k][3] {
            1
        } else {
            -1
        }
    }

    pub fn component_of_edge(&self, label: u32) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&label))
    }

    /// Generator name of the Wirtinger arc containing an edge.
    pub fn arc_generator(&self, label: u32) -> Option<&str> {
        self.arc_of.get(&label).map(|&i| self.arc_names[i].as_str())
    }

    pub fn arc_generators(&self) -> &[String] {
        &self.arc_names
    }

    /// Meridian of a component: the generator of the arc containing its
    /// lowest-numbered edge.
    pub fn meridian(&self, component: usize) -> Result<Word> {
        let comp = self
            .components
            .get(component)
            .ok_or_else(|| Error::MalformedPd(format!("no component {component}")))?;
        let start = *comp.iter().min().expect("nonempty");
        Ok(Word::gen(self.arc_generator(start).expect("edge has an arc")))
    }

    /// Sum of signs of crossings between two strands of the same component.
    pub fn self_writhe(&self, component: usize) -> i64 {
        (0..self.crossings.len())
            .filter(|&k| {
                let x = self.crossings[k];
                self.component_of_edge(x[0]) == Some(component) && self.component_of_edge(x[1]) == Some(component)
            })
            .map(|k| self.crossing_sign(k))
            .sum()
    }

    /// Half the signed count of crossings between two components.
    pub fn linking_number(&self, c1: usize, c2: usize) -> i64 {
        let total: i64 = (0..self.crossings.len())
            .filter(|&k| {
                let x = self.crossings[k];
                let (u, o) = (self.component_of_edge(x[0]), self.component_of_edge(x[1]));
                (u == Some(c1) && o == Some(c2)) || (u == Some(c2) && o == Some(c1))
            })
            .map(|k| self.crossing_sign(k))
            .sum();
        total / 2
    }

    /// Parse `comp: ...`, `X a b c d` and `frame: <component> <n>` lines. The
    /// framing lines are returned separately (empty if none were given).
    pub fn parse(text: &str) -> Result<(PdCode, BTreeMap<usize, i64>)> {
        let mut crossings = Vec::new();
        let mut comps = Vec::new();
        let mut frames = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("comp:") {
                let labels = rest
                    .split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| bad("bad edge label")))
                    .collect::<Result<Vec<_>>>()?;
                comps.push(labels);
            } else if let Some(rest) = line.strip_prefix("frame:") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(bad("expected `frame: <component> <integer>`"));
                }
                let c: usize = toks[0].parse().map_err(|_| bad("bad component index"))?;
                let n: i64 = toks[1].parse().map_err(|_| bad("bad framing"))?;
                if frames.insert(c, n).is_some() {
                    return Err(bad("repeated framing"));
                }
            } else if let Some(rest) = line.strip_prefix('X') {
                let labels = rest
                    .split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| bad("bad edge label")))
                    .collect::<Result<Vec<_>>>()?;
                let x: [u32; 4] = labels.try_into().map_err(|_| bad("crossing needs four labels"))?;
                crossings.push(x);
            } else {
                return Err(bad("expected `comp:`, `X` or `frame:`"));
            }
        }
        Ok((PdCode::new(crossings, comps)?, frames))
    }
}

impl SurgeryDescription {
    pub fn parse(text: &str) -> Result<SurgeryDescription> {
        let (pd, frames) = PdCode::parse(text)?;
        SurgeryDescription::new(pd, frames)
    }
}

/// One generator per arc, one conjugation relator per crossing.
pub fn wirtinger(pd: &PdCode) -> GroupPresentation {
    let mut relators = Vec::with_capacity(pd.crossings.len());
    for (k, x) in pd.crossings.iter().enumerate() {
        let arc = |l: u32| pd.arc_generator(l).expect("edge has an arc").to_string();
        let (i, o, j) = (arc(x[0]), arc(x[1]), arc(x[2]));
        let s = pd.crossing_sign(k);
        relators.push(Word::new([(o.clone(), -s), (i, 1), (o, s), (j, -1)]));
    }
    GroupPresentation::new(&pd.arc_names, relators).expect("arc names are valid and distinct")
}

/// The 0-framed longitude of `component`, starting on its meridian arc.
pub fn longitude_word(pd: &PdCode, component: usize) -> Result<Word> {
    let comp = pd
        .components
        .get(component)
        .ok_or_else(|| Error::MalformedPd(format!("no component {component}")))?;
    let start = *comp.iter().min().expect("nonempty");
    if pd.crossings.iter().all(|x| !x.contains(&start)) {
        return Ok(Word::identity());
    }
    let mut head_slot: HashMap<u32, (usize, usize)> = HashMap::new();
    for (k, x) in pd.crossings.iter().enumerate() {
        for pos in 0..4 {
            if pd.heads[k][pos] {
                head_slot.insert(x[pos], (k, pos));
            }
        }
    }
    let mut w = Word::identity();
    let mut cur = start;
    loop {
        let (k, pos) = head_slot[&cur];
        let x = pd.crossings[k];
        cur = match pos {
            0 => {
                let over = pd.arc_generator(x[1]).expect("edge has an arc");
                w = w.concat(&Word::power_of(over, pd.crossing_sign(k)));
                x[2]
            }
            1 => x[3],
            3 => x[1],
            _ => unreachable!("slot 2 is always a tail"),
        };
        if cur == start {
            break;
        }
    }
    let meridian = pd.meridian(component)?;
    Ok(w.concat(&meridian.pow(-pd.self_writhe(component))))
}

/// Wirtinger presentation plus `meridian^n * longitude` for each component
/// with framing `n`.
pub fn surgery_group(sd: &SurgeryDescription) -> Result<GroupPresentation> {
    let base = wirtinger(&sd.pd);
    let mut extra = Vec::new();
    for (c, &n) in sd.framings.iter().enumerate() {
        let mu = sd.pd.meridian(c)?;
        let lambda = longitude_word(&sd.pd, c)?;
        extra.push(mu.pow(n).concat(&lambda));
    }
    base.with_relators(extra)
}

/// Right-handed trefoil.
pub fn trefoil() -> PdCode {
    PdCode::new(vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![vec![1, 2, 3, 4, 5, 6]])
        .expect("valid fixture")
}

/// Positive Hopf link.
pub fn hopf_link() -> PdCode {
    PdCode::new(vec![[1, 3, 2, 4], [3, 1, 4, 2]], vec![vec![1, 2], vec![3, 4]]).expect("valid fixture")
}

/// Unknot drawn with a single negative kink.
pub fn kinked_unknot() -> PdCode {
    PdCode::new(vec![[1, 2, 2, 1]], vec![vec![1, 2]]).expect("valid fixture")
}

/// Crossingless unknot.
pub fn round_unknot() -> PdCode {
    PdCode::new(vec![], vec![vec![1]]).expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{abelianization, AbelianGroupInvariants};

    #[test]
    fn trefoil_is_right_handed() {
        let t = trefoil();
        assert!((0..3).all(|k| t.crossing_sign(k) == 1));
        assert_eq!(t.self_writhe(0), 3);
        assert_eq!(t.arc_generators().len(), 3);
        let w = wirtinger(&t);
        assert_eq!(w.relators().len(), 3);
        assert_eq!(abelianization(&w), AbelianGroupInvariants::from_factors(&[], 1));
    }

    #[test]
    fn kinked_and_round_unknots() {
        for k in [kinked_unknot(), round_unknot()] {
            assert_eq!(abelianization(&wirtinger(&k)), AbelianGroupInvariants::from_factors(&[], 1));
            assert!(longitude_word(&k, 0).unwrap().is_identity());
        }
        assert_eq!(kinked_unknot().crossing_sign(0), -1);
    }

    #[test]
    fn split_unlink_of_kinked_circles() {
        let pd = PdCode::new(vec![[1, 2, 2, 1], [3, 4, 4, 3]], vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(abelianization(&wirtinger(&pd)), AbelianGroupInvariants::from_factors(&[], 2));
        let l = longitude_word(&pd, 0).unwrap();
        assert_eq!(l.exponent_sum("x3"), 0);
        assert!(l.is_identity());
    }

    #[test]
    fn hopf_longitude_records_linking() {
        let h = hopf_link();
        assert_eq!(h.linking_number(0, 1), 1);
        let l = longitude_word(&h, 0).unwrap();
        assert_eq!(l.exponent_sum(h.arc_generator(3).unwrap()), 1);
        assert_eq!(l.exponent_sum(h.arc_generator(1).unwrap()), 0);
    }

    #[test]
    fn trefoil_longitude_has_zero_self_exponent() {
        let t = trefoil();
        let l = longitude_word(&t, 0).unwrap();
        let total: i64 = t.arc_generators().iter().map(|g| l.exponent_sum(g)).sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn malformed_codes() {
        assert!(PdCode::new(vec![[1, 2, 3, 4]], vec![vec![1, 2, 3, 4]]).is_err());
        assert!(PdCode::new(vec![[1, 2, 2, 1]], vec![vec![1]]).is_err());
        assert!(PdCode::new(vec![[1, 2, 2, 1]], vec![vec![1, 2], vec![1]]).is_err());
        // listing order disagrees with the crossings
        assert!(PdCode::new(vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![vec![1, 3, 2, 4, 5, 6]]).is_err());
    }

    #[test]
    fn parse_surgery_file() {
        let sd = SurgeryDescription::parse("comp: 1 2 3 4 5 6\nX 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\nframe: 0 1\n").unwrap();
        assert_eq!(sd.framings, vec![1]);
        assert_eq!(sd.pd, trefoil());
        assert!(SurgeryDescription::parse("comp: 1\n").is_err());
        assert!(SurgeryDescription::parse("comp: 1\nframe: 0 1\nframe: 0 2\n").is_err());
    }
}
