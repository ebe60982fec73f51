//! Multipartitions, nodes, residues and the dominance order on l-partitions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `e >= 2`, or `e = infinity` (the `sl_infinity` case where colors are contents).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulus {
    Finite(u32),
    Infinite,
}

impl Modulus {
    pub fn finite(e: u32) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidArgument(format!("e must be >= 2, got {e}")));
        }
        Ok(Modulus::Finite(e))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Modulus::Infinite)
    }

    /// The color of a node with the given content: its residue mod e, or the
    /// content itself when e is infinite.
    pub fn color(self, content: i64) -> i64 {
        match self {
            Modulus::Finite(e) => content.rem_euclid(i64::from(e)),
            Modulus::Infinite => content,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(e) => write!(f, "{e}"),
            Modulus::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Modulus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Modulus::Infinite),
            t => {
                let e: u32 = t.parse().map_err(|_| Error::Parse(format!("bad modulus {s:?}")))?;
                Modulus::finite(e)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multicharge(Vec<i64>);

impl Multicharge {
    pub fn new(s: Vec<i64>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidArgument("multicharge must have length >= 1".into()));
        }
        Ok(Multicharge(s))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Charge of component `c` (1-based).
    pub fn get(&self, c: usize) -> i64 {
        self.0[c - 1]
    }
}

impl fmt::Display for Multicharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Multicharge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad multicharge {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Multicharge::new(parts)
    }
}

/// A box `(row, col, comp)` of a Young diagram, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: u32,
    pub col: u32,
    pub comp: usize,
}

impl Node {
    pub fn new(row: u32, col: u32, comp: usize) -> Self {
        Node { row, col, comp }
    }

    pub fn content(&self, charge: &Multicharge) -> i64 {
        i64::from(self.col) - i64::from(self.row) + charge.get(self.comp)
    }

    pub fn color(&self, charge: &Multicharge, modulus: Modulus) -> i64 {
        modulus.color(self.content(charge))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

/// The order `<_s` on nodes: by content, then by component.
pub fn node_less(a: &Node, b: &Node, charge: &Multicharge) -> bool {
    node_cmp(a, b, charge) == Ordering::Less
}

/// Total order extending `<_s`; ties in (content, component) are broken by row,
/// which never happens for nodes of one diagram.
pub fn node_cmp(a: &Node, b: &Node, charge: &Multicharge) -> Ordering {
    a.content(charge)
        .cmp(&b.content(charge))
        .then(a.comp.cmp(&b.comp))
        .then(a.row.cmp(&b.row))
}

/// An l-tuple of partitions, each stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    components: Vec<Vec<u32>>,
}

impl Multipartition {
    pub fn new(components: Vec<Vec<u32>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("a multipartition needs level >= 1".into()));
        }
        let mut cleaned = Vec::with_capacity(components.len());
        for mut part in components {
            while part.last() == Some(&0) {
                part.pop();
            }
            if part.contains(&0) || part.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "{part:?} is not a partition (weakly decreasing positive parts)"
                )));
            }
            cleaned.push(part);
        }
        Ok(Multipartition { components: cleaned })
    }

    pub fn empty(level: usize) -> Self {
        Multipartition {
            components: vec![Vec::new(); level],
        }
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().flatten().map(|&p| p as usize).sum()
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    /// Component `c` (1-based).
    pub fn component(&self, c: usize) -> &[u32] {
        &self.components[c - 1]
    }

    /// Length of row `row` (1-based) of component `c`; zero past the last part.
    pub fn row_len(&self, c: usize, row: u32) -> u32 {
        self.components[c - 1].get(row as usize - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, node: &Node) -> bool {
        node.comp >= 1
            && node.comp <= self.level()
            && node.row >= 1
            && node.col >= 1
            && self.row_len(node.comp, node.row) >= node.col
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.components.iter().enumerate().flat_map(|(c, part)| {
            part.iter()
                .enumerate()
                .flat_map(move |(r, &len)| (1..=len).map(move |b| Node::new(r as u32 + 1, b, c + 1)))
        })
    }

    /// Every addable node, unsorted.
    pub fn all_addable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (c, part) in self.components.iter().enumerate() {
            for r in 0..=part.len() {
                let len = part.get(r).copied().unwrap_or(0);
                let above = if r == 0 { u32::MAX } else { part[r - 1] };
                if len < above {
                    out.push(Node::new(r as u32 + 1, len + 1, c + 1));
                }
            }
        }
        out
    }

    /// Every removable node, unsorted.
    pub fn all_removable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (c, part) in self.components.iter().enumerate() {
            for r in 0..part.len() {
                let below = part.get(r + 1).copied().unwrap_or(0);
                if part[r] > below {
                    out.push(Node::new(r as u32 + 1, part[r], c + 1));
                }
            }
        }
        out
    }

    pub fn is_addable(&self, node: &Node) -> bool {
        if node.comp == 0 || node.comp > self.level() || node.row == 0 {
            return false;
        }
        let len = self.row_len(node.comp, node.row);
        let above = if node.row == 1 {
            u32::MAX
        } else {
            self.row_len(node.comp, node.row - 1)
        };
        node.col == len + 1 && len < above
    }

    pub fn is_removable(&self, node: &Node) -> bool {
        if !self.contains(node) {
            return false;
        }
        node.col == self.row_len(node.comp, node.row) && self.row_len(node.comp, node.row + 1) < node.col
    }

    pub fn with_node(&self, node: &Node) -> Option<Multipartition> {
        if !self.is_addable(node) {
            return None;
        }
        let mut out = self.clone();
        let part = &mut out.components[node.comp - 1];
        if node.row as usize > part.len() {
            part.push(1);
        } else {
            part[node.row as usize - 1] += 1;
        }
        Some(out)
    }

    pub fn without_node(&self, node: &Node) -> Option<Multipartition> {
        if !self.is_removable(node) {
            return None;
        }
        let mut out = self.clone();
        let part = &mut out.components[node.comp - 1];
        part[node.row as usize - 1] -= 1;
        if part[node.row as usize - 1] == 0 {
            part.pop();
        }
        Some(out)
    }

    /// Multiset of node colors, as a sorted vector.
    pub fn color_content(&self, charge: &Multicharge, modulus: Modulus) -> Vec<i64> {
        let mut v: Vec<i64> = self.nodes().map(|n| n.color(charge, modulus)).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|part| {
                if part.is_empty() {
                    "-".to_string()
                } else {
                    part.iter().map(u32::to_string).collect::<Vec<_>>().join(".")
                }
            })
            .collect();
        write!(f, "{}", comps.join("|"))
    }
}

impl FromStr for Multipartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad multipartition {s:?}"));
        let comps = s
            .split('|')
            .map(|comp| {
                let comp = comp.trim();
                if comp == "-" {
                    return Ok(Vec::new());
                }
                comp.split('.')
                    .map(|p| match p.parse::<u32>() {
                        Ok(v) if v > 0 && p == v.to_string() => Ok(v),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Multipartition::new(comps).map_err(|_| bad())
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn filter_sorted(nodes: Vec<Node>, charge: &Multicharge, modulus: Modulus, color: i64) -> Vec<Node> {
    let mut out: Vec<Node> = nodes
        .into_iter()
        .filter(|n| n.color(charge, modulus) == color)
        .collect();
    out.sort_by(|a, b| node_cmp(a, b, charge));
    out
}

/// Addable nodes of the given color, ascending under `<_s`.
pub fn addable_nodes(lambda: &Multipartition, charge: &Multicharge, modulus: Modulus, color: i64) -> Vec<Node> {
    filter_sorted(lambda.all_addable(), charge, modulus, color)
}

/// Removable nodes of the given color, ascending under `<_s`.
pub fn removable_nodes(lambda: &Multipartition, charge: &Multicharge, modulus: Modulus, color: i64) -> Vec<Node> {
    filter_sorted(lambda.all_removable(), charge, modulus, color)
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All l-partitions of rank `n`, in a structural order (not the dominance
/// extension; see [`enumerate_multipartitions`]).
pub fn multipartitions_unsorted(level: usize, n: usize) -> Vec<Multipartition> {
    fn go(level: usize, rem: usize, acc: &mut Vec<Vec<u32>>, out: &mut Vec<Multipartition>) {
        if acc.len() + 1 == level {
            for p in partitions(rem) {
                acc.push(p);
                out.push(Multipartition {
                    components: acc.clone(),
                });
                acc.pop();
            }
            return;
        }
        for k in (0..=rem).rev() {
            for p in partitions(k) {
                acc.push(p);
                go(level, rem - k, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    if level >= 1 {
        go(level, n, &mut Vec::new(), &mut out);
    }
    out
}

/// All of `Pi_{l,n}` sorted descending in the gamma-lex linear extension of
/// the dominance order for `charge` (l is the level of the charge).
pub fn enumerate_multipartitions(charge: &Multicharge, n: usize) -> Vec<Multipartition> {
    let mut all = multipartitions_unsorted(charge.level(), n);
    sort_desc(&mut all, charge);
    all
}

/// Sorts same-rank multipartitions descending by their gamma sequences.
pub fn sort_desc(items: &mut [Multipartition], charge: &Multicharge) {
    items.sort_by_cached_key(|m| std::cmp::Reverse(gamma_sequence(m, charge, 0)));
}

/// Gamma-lex comparison of two same-rank multipartitions; a total order
/// extending dominance.
pub fn gamma_lex_cmp(a: &Multipartition, b: &Multipartition, charge: &Multicharge) -> Ordering {
    gamma_sequence(a, charge, 0).cmp(&gamma_sequence(b, charge, 0))
}

/// The sequence `lambda^(i)_j - j + s_i - alpha_i`, sorted descending, with
/// `alpha_i = (l+1-i)/(l+1)` and `j <= rank + max(s_i, 0) + pad`.
///
/// Entries are returned multiplied by `l + 1`, so they are exact integers.
pub fn gamma_sequence(lambda: &Multipartition, charge: &Multicharge, pad: usize) -> Vec<i64> {
    let l = lambda.level() as i64;
    let n = lambda.rank() as i64;
    let mut out = Vec::new();
    for i in 1..=lambda.level() {
        let s = charge.get(i);
        let alpha_scaled = l + 1 - i as i64;
        let rows = n + s.max(0) + pad as i64;
        for j in 1..=rows {
            let part = i64::from(lambda.row_len(i, j as u32));
            out.push((part - j + s) * (l + 1) - alpha_scaled);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl fmt::Display for Dominance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dominance::Greater => "Greater",
            Dominance::Less => "Less",
            Dominance::Equal => "Equal",
            Dominance::Incomparable => "Incomparable",
        };
        write!(f, "{s}")
    }
}

/// Partial-sum comparison of two equal-length sequences.
pub fn compare_partial_sums(u: &[i64], w: &[i64]) -> Dominance {
    debug_assert_eq!(u.len(), w.len());
    if u == w {
        return Dominance::Equal;
    }
    let (mut su, mut sw) = (0i64, 0i64);
    let (mut ge, mut le) = (true, true);
    for (a, b) in u.iter().zip(w) {
        su += a;
        sw += b;
        ge &= su >= sw;
        le &= su <= sw;
    }
    match (ge, le) {
        (true, false) => Dominance::Greater,
        (false, true) => Dominance::Less,
        // Equal partial sums everywhere would force u == w.
        _ => Dominance::Incomparable,
    }
}

/// The dominance order on l-partitions of equal rank. There is deliberately no
/// modulus argument: the order is the same for every e.
pub fn compare_dominance(a: &Multipartition, b: &Multipartition, charge: &Multicharge) -> Result<Dominance> {
    compare_dominance_padded(a, b, charge, 0)
}

pub fn compare_dominance_padded(
    a: &Multipartition,
    b: &Multipartition,
    charge: &Multicharge,
    pad: usize,
) -> Result<Dominance> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    for m in [a, b] {
        if m.level() != charge.level() {
            return Err(Error::LevelMismatch {
                expected: charge.level(),
                found: m.level(),
            });
        }
    }
    if a == b {
        return Ok(Dominance::Equal);
    }
    Ok(compare_partial_sums(
        &gamma_sequence(a, charge, pad),
        &gamma_sequence(b, charge, pad),
    ))
}
