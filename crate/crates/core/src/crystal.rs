//! Crystal graphs `B_e(s)` and `B_inf(s)` via the signature rule on
//! addable/removable nodes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::json;

use crate::combinatorics::{node_cmp, sort_desc, Modulus, Multipartition, Node};
use crate::error::{Error, Result};
use crate::fock::FockSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Add,
    Remove,
}

/// The reduced signature word: leading addables then trailing removables,
/// both ascending under `<_s`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedWord {
    pub addable: Vec<Node>,
    pub removable: Vec<Node>,
}

/// Reads the color-`i` addable and removable nodes ascending under `<_s` and
/// cancels every removable immediately followed by an addable, repeatedly.
pub fn reduced_word(lambda: &Multipartition, space: &FockSpace, color: i64) -> ReducedWord {
    let mut word: Vec<(Node, Sign)> = space
        .addable(lambda, color)
        .into_iter()
        .map(|n| (n, Sign::Add))
        .chain(space.removable(lambda, color).into_iter().map(|n| (n, Sign::Remove)))
        .collect();
    word.sort_by(|a, b| node_cmp(&a.0, &b.0, &space.charge));

    let mut addable = Vec::new();
    let mut pending: Vec<Node> = Vec::new();
    for (node, sign) in word {
        match sign {
            Sign::Remove => pending.push(node),
            Sign::Add => {
                if pending.pop().is_none() {
                    addable.push(node);
                }
            }
        }
    }
    ReducedWord {
        addable,
        removable: pending,
    }
}

/// The good addable node of color `i`: the rightmost surviving addable.
pub fn good_node(lambda: &Multipartition, space: &FockSpace, color: i64) -> Option<Node> {
    reduced_word(lambda, space, color).addable.last().copied()
}

/// The good removable node of color `i`: the leftmost surviving removable.
pub fn good_removable_node(lambda: &Multipartition, space: &FockSpace, color: i64) -> Option<Node> {
    reduced_word(lambda, space, color).removable.first().copied()
}

pub fn epsilon(lambda: &Multipartition, space: &FockSpace, color: i64) -> usize {
    reduced_word(lambda, space, color).removable.len()
}

pub fn phi(lambda: &Multipartition, space: &FockSpace, color: i64) -> usize {
    reduced_word(lambda, space, color).addable.len()
}

/// Kashiwara `f~_i`.
pub fn f_tilde(lambda: &Multipartition, space: &FockSpace, color: i64) -> Option<Multipartition> {
    good_node(lambda, space, color).map(|n| lambda.with_node(&n).expect("addable"))
}

/// Kashiwara `e~_i`.
pub fn e_tilde(lambda: &Multipartition, space: &FockSpace, color: i64) -> Option<Multipartition> {
    good_removable_node(lambda, space, color).map(|n| lambda.without_node(&n).expect("removable"))
}

/// Colors that can label an edge out of a vertex of rank below `max_rank`.
pub fn color_alphabet(space: &FockSpace, max_rank: usize) -> Vec<i64> {
    match space.modulus {
        Modulus::Finite(e) => (0..i64::from(e)).collect(),
        Modulus::Infinite => {
            let s = space.charge.as_slice();
            let lo = s.iter().min().copied().unwrap_or(0) - max_rank as i64;
            let hi = s.iter().max().copied().unwrap_or(0) + max_rank as i64;
            (lo..=hi).collect()
        }
    }
}

/// The connected component of the vacuum, truncated at `max_rank`.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub space: FockSpace,
    pub max_rank: usize,
    /// Vertices of each rank, descending in the gamma-lex order.
    vertices: Vec<Vec<Multipartition>>,
    members: BTreeSet<Multipartition>,
    edges: BTreeMap<(Multipartition, i64), Multipartition>,
}

impl CrystalGraph {
    pub fn vertices(&self, rank: usize) -> &[Multipartition] {
        self.vertices.get(rank).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, lambda: &Multipartition) -> bool {
        self.members.contains(lambda)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn edge(&self, lambda: &Multipartition, color: i64) -> Option<&Multipartition> {
        self.edges.get(&(lambda.clone(), color))
    }

    /// All edges `(source, color, target)`, sources in deterministic order.
    pub fn edges(&self) -> Vec<(&Multipartition, i64, &Multipartition)> {
        let mut out = Vec::new();
        for layer in &self.vertices {
            for v in layer {
                for (&(_, c), t) in self.edges.range((v.clone(), i64::MIN)..=(v.clone(), i64::MAX)) {
                    out.push((v, c, t));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ranks: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(r, vs)| json!({ "rank": r, "vertices": vs }))
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges()
            .into_iter()
            .map(|(s, c, t)| json!({ "source": s, "color": c, "target": t }))
            .collect();
        json!({
            "e": self.space.modulus.to_string(),
            "charge": self.space.charge.as_slice(),
            "max_rank": self.max_rank,
            "ranks": ranks,
            "edges": edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "digraph crystal {{\n  // e = {}, charge = ({}), max rank {}",
            self.space.modulus, self.space.charge, self.max_rank
        );
        for layer in &self.vertices {
            for v in layer {
                let _ = writeln!(out, "  \"{v}\";");
            }
        }
        for (s, c, t) in self.edges() {
            let _ = writeln!(out, "  \"{s}\" -> \"{t}\" [label=\"{c}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of the vacuum under good-node additions.
pub fn generate_component(space: &FockSpace, max_rank: usize) -> CrystalGraph {
    let alphabet = color_alphabet(space, max_rank);
    let mut vertices = vec![vec![Multipartition::empty(space.level())]];
    let mut edges = BTreeMap::new();
    for rank in 0..max_rank {
        let mut next = BTreeSet::new();
        for v in &vertices[rank] {
            for &c in &alphabet {
                if let Some(w) = f_tilde(v, space, c) {
                    edges.insert((v.clone(), c), w.clone());
                    next.insert(w);
                }
            }
        }
        let mut layer: Vec<Multipartition> = next.into_iter().collect();
        sort_desc(&mut layer, &space.charge);
        vertices.push(layer);
    }
    let members = vertices.iter().flatten().cloned().collect();
    CrystalGraph {
        space: space.clone(),
        max_rank,
        vertices,
        members,
        edges,
    }
}

/// One step `(color, multiplicity)` of a peeling path.
pub type PeelStep = (i64, u32);

/// Maximal good-node peeling: at each vertex take the color whose good
/// removable node is greatest under `<_s`, remove `epsilon` good nodes of that
/// color, and recurse until the vacuum. Returns steps outermost first, so that
/// `lambda = f~_{i1}^{u1} ... f~_{it}^{ut} (vacuum)`.
pub fn peeling_sequence(lambda: &Multipartition, space: &FockSpace) -> Result<Vec<PeelStep>> {
    let mut steps = Vec::new();
    let mut cur = lambda.clone();
    while cur.rank() > 0 {
        let mut best: Option<(Node, i64)> = None;
        for node in cur.all_removable() {
            let color = space.node_color(&node);
            if good_removable_node(&cur, space, color) == Some(node)
                && best.is_none_or(|(b, _)| node_cmp(&node, &b, &space.charge).is_gt())
            {
                best = Some((node, color));
            }
        }
        let Some((_, color)) = best else {
            return Err(Error::NotInCrystal(lambda.to_string()));
        };
        let u = epsilon(&cur, space, color);
        for _ in 0..u {
            cur = e_tilde(&cur, space, color).expect("epsilon counts good removable nodes");
        }
        steps.push((color, u as u32));
    }
    Ok(steps)
}

/// Applies `f~` along a peeling sequence starting from the vacuum.
pub fn replay_peeling(steps: &[PeelStep], space: &FockSpace) -> Option<Multipartition> {
    let mut cur = Multipartition::empty(space.level());
    for &(color, u) in steps.iter().rev() {
        for _ in 0..u {
            cur = f_tilde(&cur, space, color)?;
        }
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn space(s: &str, e: Modulus) -> FockSpace {
        FockSpace::new(s.parse::<crate::combinatorics::Multicharge>().unwrap(), e)
    }

    #[test]
    fn good_node_examples() {
        let sp = space("0,0", Modulus::Finite(2));
        assert_eq!(good_node(&mp("-|-"), &sp, 0), Some(Node::new(1, 1, 2)));
        assert_eq!(good_node(&mp("-|-"), &sp, 1), None);
        let sp1 = space("0", Modulus::Finite(2));
        assert_eq!(good_node(&mp("1"), &sp1, 1), Some(Node::new(1, 2, 1)));
    }

    #[test]
    fn good_removable_and_epsilon() {
        let sp = space("0,0", Modulus::Finite(2));
        assert_eq!(good_removable_node(&mp("-|1"), &sp, 0), Some(Node::new(1, 1, 2)));
        assert_eq!(good_removable_node(&mp("-|-"), &sp, 0), None);
        assert_eq!(epsilon(&mp("-|-"), &sp, 0), 0);
        assert_eq!(epsilon(&mp("-|1"), &sp, 0), 1);
        assert_eq!(epsilon(&mp("1|1"), &sp, 0), 2);
        // word for (1|-) is R(1,1,1) A(1,1,2): they cancel
        assert_eq!(epsilon(&mp("1|-"), &sp, 0), 0);
        assert_eq!(good_node(&mp("1|-"), &sp, 0), None);
    }

    #[test]
    fn crystal_inverse_round_trip() {
        let sp = space("0,1", Modulus::Finite(3));
        let g = generate_component(&sp, 5);
        for rank in 0..5 {
            for v in g.vertices(rank) {
                for c in 0..3 {
                    if let Some(w) = f_tilde(v, &sp, c) {
                        assert_eq!(e_tilde(&w, &sp, c).as_ref(), Some(v));
                        assert_eq!(good_removable_node(&w, &sp, c), good_node(v, &sp, c));
                    }
                }
            }
        }
    }

    #[test]
    fn rank_three_components() {
        let g = generate_component(&space("0,0", Modulus::Finite(2)), 3);
        let got: Vec<String> = g.vertices(3).iter().map(|m| m.to_string()).collect();
        assert_eq!(got, ["-|3", "1|2", "-|2.1"]);
        let g = generate_component(&space("0,0", Modulus::Infinite), 3);
        let got: Vec<String> = g.vertices(3).iter().map(|m| m.to_string()).collect();
        assert_eq!(got, ["-|3", "1|2", "-|2.1", "1|1.1", "-|1.1.1"]);
        let g = generate_component(&space("0,0", Modulus::Finite(2)), 0);
        assert_eq!(g.vertices(0), &[mp("-|-")]);
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn peeling_examples() {
        let sp = space("0,0", Modulus::Finite(2));
        assert!(peeling_sequence(&mp("-|-"), &sp).unwrap().is_empty());
        let seq = peeling_sequence(&mp("-|3"), &sp).unwrap();
        assert_eq!(seq.iter().map(|s| s.1).sum::<u32>(), 3);
        assert_eq!(replay_peeling(&seq, &sp), Some(mp("-|3")));
        assert!(matches!(peeling_sequence(&mp("1|-"), &sp), Err(Error::NotInCrystal(_))));
    }

    #[test]
    fn exports() {
        let g = generate_component(&space("0,0", Modulus::Finite(2)), 1);
        let dot = g.to_dot();
        assert!(dot.contains("\"-|-\" -> \"-|1\" [label=\"0\"];"));
        let j = g.to_json();
        assert_eq!(j["ranks"][1]["vertices"][0], "-|1");
        assert_eq!(j["edges"].as_array().unwrap().len(), 1);
    }
}
