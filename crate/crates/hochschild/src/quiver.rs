//! Quiver data model, text-format parsing, path enumeration and counting,
//! and structural classification.
//!
//! Declaration order of vertices and arrows is significant: it fixes the
//! ordering of paths, bases and matrices everywhere downstream.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Default cap on materialized paths per `(length, from, to)` request.
pub const DEFAULT_PATH_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph. Vertices and arrows are referred to by
/// their declaration index.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl Quiver {
    /// Build a quiver from vertex names and `(name, source, target)` arrow
    /// triples, validating uniqueness and endpoint declarations.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut builder = QuiverBuilder::default();
        for v in vertices {
            builder.add_vertex(v, 0)?;
        }
        for (name, src, tgt) in arrows {
            builder.add_arrow(name, &src, &tgt, 0)?;
        }
        builder.finish()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|n| n == name)
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Arrow indices with the given source, in declaration order.
    pub fn arrows_out(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    /// Arrow indices with the given target, in declaration order.
    pub fn arrows_in(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_arrows[v].is_empty()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_arrows[v].is_empty()
    }
}

#[derive(Default)]
struct QuiverBuilder {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    arrows: Vec<Arrow>,
    arrow_names: HashMap<String, usize>,
}

fn valid_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl QuiverBuilder {
    fn add_vertex(&mut self, name: String, line: usize) -> Result<()> {
        if !valid_identifier(&name) {
            return Err(Error::Parse {
                line,
                msg: format!("invalid vertex identifier `{name}`"),
            });
        }
        if self.vertex_index.contains_key(&name) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate vertex `{name}`"),
            });
        }
        self.vertex_index.insert(name.clone(), self.vertices.len());
        self.vertices.push(name);
        Ok(())
    }

    fn add_arrow(&mut self, name: String, src: &str, tgt: &str, line: usize) -> Result<()> {
        if !valid_identifier(&name) {
            return Err(Error::Parse {
                line,
                msg: format!("invalid arrow identifier `{name}`"),
            });
        }
        if self.arrow_names.contains_key(&name) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate arrow name `{name}`"),
            });
        }
        let source = *self.vertex_index.get(src).ok_or_else(|| Error::Parse {
            line,
            msg: format!("undeclared vertex `{src}`"),
        })?;
        let target = *self.vertex_index.get(tgt).ok_or_else(|| Error::Parse {
            line,
            msg: format!("undeclared vertex `{tgt}`"),
        })?;
        self.arrow_names.insert(name.clone(), self.arrows.len());
        self.arrows.push(Arrow {
            name,
            source,
            target,
        });
        Ok(())
    }

    fn finish(self) -> Result<Quiver> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidInput("quiver has no vertices".into()));
        }
        let mut out_arrows = vec![Vec::new(); self.vertices.len()];
        let mut in_arrows = vec![Vec::new(); self.vertices.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            out_arrows[a.source].push(i);
            in_arrows[a.target].push(i);
        }
        Ok(Quiver {
            vertices: self.vertices,
            arrows: self.arrows,
            out_arrows,
            in_arrows,
        })
    }
}

/// Parse the line-oriented quiver text format.
///
/// `#` starts a comment; directives are `vertex <id>` and
/// `arrow <name> <src> <tgt>`. Declaration order is significant.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut builder = QuiverBuilder::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        msg: "expected `vertex <id>`".into(),
                    });
                }
                builder.add_vertex(tokens[1].to_string(), line)?;
            }
            "arrow" => {
                if tokens.len() != 4 {
                    return Err(Error::Parse {
                        line,
                        msg: "expected `arrow <name> <src> <tgt>`".into(),
                    });
                }
                builder.add_arrow(tokens[1].to_string(), tokens[2], tokens[3], line)?;
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown directive `{other}`"),
                });
            }
        }
    }
    builder.finish()
}

/// A composable arrow sequence. A length-0 path carries exactly its base
/// vertex.
///
/// Ordering is lexicographic by arrow declaration indices, with the origin
/// vertex as tie-break (which only matters for trivial paths).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    origin: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            origin: v,
            arrows: Vec::new(),
        }
    }

    /// Build from an arrow index sequence, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::InvalidInput(
                "empty arrow sequence; use Path::trivial".into(),
            ));
        }
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(Error::InvalidInput(format!(
                    "arrows `{}` and `{}` do not compose",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        let origin = q.arrow(arrows[0]).source;
        Ok(Path { origin, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn terminus(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&a) => q.arrow(a).target,
            None => self.origin,
        }
    }

    pub fn is_cycle(&self, q: &Quiver) -> bool {
        !self.arrows.is_empty() && self.terminus(q) == self.origin
    }

    /// `self · a`, defined when `o(a) = t(self)`.
    pub fn append(&self, q: &Quiver, a: usize) -> Option<Path> {
        if q.arrow(a).source != self.terminus(q) {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Some(Path {
            origin: if self.arrows.is_empty() {
                q.arrow(a).source
            } else {
                self.origin
            },
            arrows,
        })
    }

    /// `a · self`, defined when `t(a) = o(self)`.
    pub fn prepend(&self, q: &Quiver, a: usize) -> Option<Path> {
        if q.arrow(a).target != self.origin {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + 1);
        arrows.push(a);
        arrows.extend_from_slice(&self.arrows);
        Some(Path {
            origin: q.arrow(a).source,
            arrows,
        })
    }

    /// `self · other`, defined when `t(self) = o(other)`.
    pub fn compose(&self, q: &Quiver, other: &Path) -> Option<Path> {
        if self.terminus(q) != other.origin {
            return None;
        }
        if self.arrows.is_empty() {
            return Some(other.clone());
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            origin: self.origin,
            arrows,
        })
    }

    /// Display label: concatenated arrow names, or `e_<vertex>` for a
    /// trivial path.
    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_name(self.origin))
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrow(a).name.as_str())
                .collect()
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .cmp(&other.arrows)
            .then(self.origin.cmp(&other.origin))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The rotate `p<a_1...a_k>` of an oriented cycle.
pub fn rotate(q: &Quiver, p: &Path, k: usize) -> Result<Path> {
    if !p.is_cycle(q) {
        return Err(Error::InvalidInput(format!(
            "rotate requires an oriented cycle, got `{}`",
            p.label(q)
        )));
    }
    if k >= p.len() {
        return Err(Error::InvalidInput(format!(
            "rotate offset {k} out of range for a cycle of length {}",
            p.len()
        )));
    }
    if k == 0 {
        return Ok(p.clone());
    }
    let mut arrows = p.arrows[k..].to_vec();
    arrows.extend_from_slice(&p.arrows[..k]);
    Path::from_arrows(q, arrows)
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// `(u,v)` entry counts paths `u -> v` of exactly the given length.
pub fn path_count_matrix(q: &Quiver, length: usize) -> Vec<Vec<BigUint>> {
    let n = q.vertex_count();
    let mut result = vec![vec![BigUint::zero(); n]; n];
    for (i, row) in result.iter_mut().enumerate() {
        row[i] = BigUint::one();
    }
    if length == 0 {
        return result;
    }
    let mut adj = vec![vec![BigUint::zero(); n]; n];
    for a in q.arrows() {
        adj[a.source][a.target] += BigUint::one();
    }
    for _ in 0..length {
        result = mat_mul(&result, &adj);
    }
    result
}

pub fn count_paths(q: &Quiver, length: usize, from: usize, to: usize) -> BigUint {
    path_count_matrix(q, length)[from][to].clone()
}

/// `|(i//j)|`: parallel pairs of a length-`i` and a length-`j` path.
pub fn count_parallel(q: &Quiver, i: usize, j: usize) -> BigUint {
    let mi = path_count_matrix(q, i);
    let mj = path_count_matrix(q, j);
    let mut total = BigUint::zero();
    for u in 0..q.vertex_count() {
        for v in 0..q.vertex_count() {
            total += &mi[u][v] * &mj[u][v];
        }
    }
    total
}

fn dfs_paths(q: &Quiver, current: &mut Vec<usize>, at: usize, remaining: usize, out: &mut Vec<Path>, origin: usize) {
    if remaining == 0 {
        out.push(if current.is_empty() {
            Path::trivial(origin)
        } else {
            Path {
                origin,
                arrows: current.clone(),
            }
        });
        return;
    }
    for &a in q.arrows_out(at) {
        current.push(a);
        dfs_paths(q, current, q.arrow(a).target, remaining - 1, out, origin);
        current.pop();
    }
}

/// All paths of exactly `length` from `from` to `to`, in lexicographic
/// order by arrow declaration indices. Refuses to materialize more than
/// `cap` paths.
pub fn enumerate_paths(
    q: &Quiver,
    length: usize,
    from: usize,
    to: usize,
    cap: usize,
) -> Result<Vec<Path>> {
    let count = count_paths(q, length, from, to);
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded(format!(
            "{count} paths of length {length} from `{}` to `{}` exceed cap {cap}",
            q.vertex_name(from),
            q.vertex_name(to)
        )));
    }
    let mut all = Vec::new();
    dfs_paths(q, &mut Vec::new(), from, length, &mut all, from);
    all.retain(|p| p.terminus(q) == to);
    Ok(all)
}

/// Structural facts about a quiver used for engine dispatch.
#[derive(Debug, Clone)]
pub struct QuiverClassification {
    pub weakly_connected: bool,
    pub has_oriented_cycle: bool,
    /// A minimum-length oriented cycle, ties broken by lexicographic arrow
    /// order. Present iff `has_oriented_cycle`.
    pub shortest_cycle: Option<Path>,
    pub is_basic_cycle: bool,
    /// `e = |Q_0| = |Q_1|` when the quiver is a basic cycle.
    pub basic_cycle_length: Option<usize>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

fn weakly_connected(q: &Quiver) -> bool {
    let n = q.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &a in q.arrows_out(v).iter().chain(q.arrows_in(v)) {
            for w in [q.arrow(a).source, q.arrow(a).target] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn has_cycle(q: &Quiver) -> bool {
    // 0 = white, 1 = on stack, 2 = done
    let mut color = vec![0u8; q.vertex_count()];
    fn visit(q: &Quiver, v: usize, color: &mut [u8]) -> bool {
        color[v] = 1;
        for &a in q.arrows_out(v) {
            let w = q.arrow(a).target;
            match color[w] {
                1 => return true,
                0 => {
                    if visit(q, w, color) {
                        return true;
                    }
                }
                _ => {}
            }
        }
        color[v] = 2;
        false
    }
    (0..q.vertex_count()).any(|v| color[v] == 0 && visit(q, v, &mut color))
}

fn shortest_cycle(q: &Quiver) -> Option<Path> {
    for len in 1..=q.vertex_count() {
        let counts = path_count_matrix(q, len);
        let exists = (0..q.vertex_count()).any(|v| !counts[v][v].is_zero());
        if !exists {
            continue;
        }
        let mut best: Option<Path> = None;
        for v in 0..q.vertex_count() {
            if counts[v][v].is_zero() {
                continue;
            }
            let cycles =
                enumerate_paths(q, len, v, v, DEFAULT_PATH_CAP).expect("shortest-cycle search");
            for c in cycles {
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        return best;
    }
    None
}

pub fn classify(q: &Quiver) -> QuiverClassification {
    let sources: Vec<usize> = (0..q.vertex_count()).filter(|&v| q.is_source(v)).collect();
    let sinks: Vec<usize> = (0..q.vertex_count()).filter(|&v| q.is_sink(v)).collect();
    let connected = weakly_connected(q);
    let cyclic = has_cycle(q);
    let shortest = if cyclic { shortest_cycle(q) } else { None };
    let basic = connected
        && cyclic
        && q.vertex_count() == q.arrow_count()
        && (0..q.vertex_count())
            .all(|v| q.arrows_out(v).len() == 1 && q.arrows_in(v).len() == 1);
    QuiverClassification {
        weakly_connected: connected,
        has_oriented_cycle: cyclic,
        shortest_cycle: shortest,
        is_basic_cycle: basic,
        basic_cycle_length: basic.then(|| q.vertex_count()),
        sources,
        sinks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn parse_a2() {
        let q = parse_quiver("vertex 1\nvertex 2\narrow a 1 2").unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrow_count(), 1);
        assert_eq!(q.arrow(0).name, "a");
    }

    #[test]
    fn parse_duplicate_arrow() {
        let err = parse_quiver("vertex 1\narrow x 1 1\narrow x 1 1").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("duplicate arrow"));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn parse_undeclared_vertex() {
        let err = parse_quiver("vertex 1\narrow a 1 2").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("undeclared vertex `2`"));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn parse_comments_and_blanks() {
        let q = parse_quiver("# header\nvertex 1 # the only vertex\n\narrow x 1 1\n").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arrow_count(), 1);
    }

    #[test]
    fn classify_a2() {
        let q = corpus::a2();
        let c = classify(&q);
        assert!(c.weakly_connected);
        assert!(!c.has_oriented_cycle);
        assert!(!c.is_basic_cycle);
        assert!(c.shortest_cycle.is_none());
        assert_eq!(c.sources, vec![0]);
        assert_eq!(c.sinks, vec![1]);
    }

    #[test]
    fn classify_c2() {
        let q = corpus::c2();
        let c = classify(&q);
        assert!(c.is_basic_cycle);
        assert_eq!(c.basic_cycle_length, Some(2));
        assert_eq!(c.shortest_cycle.unwrap().label(&q), "ab");
    }

    #[test]
    fn classify_th() {
        let q = corpus::th();
        let c = classify(&q);
        assert!(c.has_oriented_cycle);
        assert!(!c.is_basic_cycle);
        assert_eq!(c.shortest_cycle.unwrap().label(&q), "ab");
        assert!(c.sources.is_empty());
        assert!(c.sinks.is_empty());
    }

    #[test]
    fn enumerate_c2_length3() {
        let q = corpus::c2();
        let paths = enumerate_paths(&q, 3, 0, 1, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].label(&q), "aba");
    }

    #[test]
    fn enumerate_th_length2() {
        let q = corpus::th();
        let paths = enumerate_paths(&q, 2, 0, 0, DEFAULT_PATH_CAP).unwrap();
        let labels: Vec<String> = paths.iter().map(|p| p.label(&q)).collect();
        assert_eq!(labels, vec!["ab", "cb"]);
    }

    #[test]
    fn enumerate_a2_length2_empty() {
        let q = corpus::a2();
        for u in 0..2 {
            for v in 0..2 {
                assert!(enumerate_paths(&q, 2, u, v, DEFAULT_PATH_CAP)
                    .unwrap()
                    .is_empty());
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        let q = corpus::th();
        let err = enumerate_paths(&q, 2, 0, 0, 1).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn count_parallel_examples() {
        assert_eq!(count_parallel(&corpus::a2(), 1, 1), BigUint::from(1u32));
        assert_eq!(count_parallel(&corpus::th(), 1, 1), BigUint::from(5u32));
        assert_eq!(count_parallel(&corpus::c2(), 0, 2), BigUint::from(2u32));
    }

    #[test]
    fn rotate_examples() {
        let c2 = corpus::c2();
        let ab = Path::from_arrows(&c2, vec![0, 1]).unwrap();
        assert_eq!(rotate(&c2, &ab, 1).unwrap().label(&c2), "ba");
        assert_eq!(rotate(&c2, &ab, 0).unwrap(), ab);

        let l1 = corpus::l1();
        let xxx = Path::from_arrows(&l1, vec![0, 0, 0]).unwrap();
        assert_eq!(rotate(&l1, &xxx, 2).unwrap(), xxx);

        let a = Path::from_arrows(&c2, vec![0]).unwrap();
        assert!(rotate(&c2, &a, 0).is_err());
    }
}
