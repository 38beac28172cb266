//! Movement machinery on `(j//ni)`: +/- movements, +/- extremes,
//! movement-equivalence classes, and the j-extremes counts that drive the
//! odd-differential rank identities and the general dimension formulas.

use crate::complex::{build_basis, ParallelBasis};
use crate::quiver::{count_parallel, Path, Quiver};
use crate::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

fn starts_together(pair: &(Path, Path)) -> bool {
    match (pair.0.arrows().first(), pair.1.arrows().first()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

fn ends_together(pair: &(Path, Path)) -> bool {
    match (pair.0.arrows().last(), pair.1.arrows().last()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// The +movements and -movements of a parallel pair.
///
/// The plus list is empty exactly when the pair is a +extreme, and
/// symmetrically for minus.
pub fn movement_neighbors(
    q: &Quiver,
    pair: &(Path, Path),
) -> Result<(Vec<(Path, Path)>, Vec<(Path, Path)>)> {
    let (p, s) = pair;
    if p.origin() != s.origin()
        || p.terminus(q) != s.terminus(q)
        || p.is_empty()
        || s.is_empty()
    {
        return Err(Error::InvalidInput(
            "movements are defined on parallel pairs of nontrivial paths".into(),
        ));
    }
    let strip_first = |path: &Path| -> Path {
        if path.len() == 1 {
            Path::trivial(path.terminus(q))
        } else {
            Path::from_arrows(q, path.arrows()[1..].to_vec()).expect("suffix composes")
        }
    };
    let strip_last = |path: &Path| -> Path {
        if path.len() == 1 {
            Path::trivial(path.origin())
        } else {
            Path::from_arrows(q, path.arrows()[..path.len() - 1].to_vec())
                .expect("prefix composes")
        }
    };
    let mut plus = Vec::new();
    if starts_together(pair) && !q.is_sink(p.terminus(q)) {
        let (p_tail, s_tail) = (strip_first(p), strip_first(s));
        for &b in q.arrows_out(p.terminus(q)) {
            plus.push((
                p_tail.append(q, b).expect("b leaves t(p)"),
                s_tail.append(q, b).expect("b leaves t(q)"),
            ));
        }
    }
    let mut minus = Vec::new();
    if ends_together(pair) && !q.is_source(p.origin()) {
        let (p_head, s_head) = (strip_last(p), strip_last(s));
        for &b in q.arrows_in(p.origin()) {
            minus.push((
                p_head.prepend(q, b).expect("b enters o(p)"),
                s_head.prepend(q, b).expect("b enters o(q)"),
            ));
        }
    }
    Ok((plus, minus))
}

/// One movement-equivalence class of `(j//ni)`.
#[derive(Debug, Clone)]
pub struct MovementClass {
    pub members: Vec<(Path, Path)>,
    /// Contains a +extreme that does not end at a sink.
    pub has_failing_plus: bool,
    /// Contains a -extreme that does not start at a source.
    pub has_failing_minus: bool,
    /// No member is a +extreme or a -extreme at all; such a class is
    /// vacuously a j-extreme and flagged so the case stays visible.
    pub vacuously_extreme: bool,
}

impl MovementClass {
    pub fn is_j_extreme(&self) -> bool {
        !self.has_failing_plus && !self.has_failing_minus
    }
}

/// Movement-equivalence classes of `(j//ni)` for `1 <= j <= n-2`.
///
/// Edges are generated from +movements only; every -movement edge is the
/// reverse of some +movement edge.
pub fn movement_classes(
    q: &Quiver,
    n: usize,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<Vec<MovementClass>> {
    if !(1..=n.saturating_sub(2)).contains(&j) {
        return Err(Error::InvalidInput(format!(
            "movement classes are defined for 1 <= j <= n-2, got j={j}, n={n}"
        )));
    }
    let basis: ParallelBasis = build_basis(q, j, n * i, cap)?;
    let mut uf = UnionFind::new(basis.len());
    for (idx, pair) in basis.pairs.iter().enumerate() {
        let (plus, _) = movement_neighbors(q, pair)?;
        for neighbor in plus {
            let other = basis
                .index_of(&neighbor.0, &neighbor.1)
                .expect("movement stays inside the basis");
            uf.union(idx, other);
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut class_of = vec![usize::MAX; basis.len()];
    for idx in 0..basis.len() {
        let root = uf.find(idx);
        let pos = match roots.iter().position(|&r| r == root) {
            Some(p) => p,
            None => {
                roots.push(root);
                roots.len() - 1
            }
        };
        class_of[idx] = pos;
    }
    let mut classes: Vec<MovementClass> = roots
        .iter()
        .map(|_| MovementClass {
            members: Vec::new(),
            has_failing_plus: false,
            has_failing_minus: false,
            vacuously_extreme: true,
        })
        .collect();
    for (idx, pair) in basis.pairs.iter().enumerate() {
        let class = &mut classes[class_of[idx]];
        let plus_extreme = !starts_together(pair) || q.is_sink(pair.0.terminus(q));
        let minus_extreme = !ends_together(pair) || q.is_source(pair.0.origin());
        if plus_extreme || minus_extreme {
            class.vacuously_extreme = false;
        }
        if plus_extreme && !q.is_sink(pair.0.terminus(q)) {
            class.has_failing_plus = true;
        }
        if minus_extreme && !q.is_source(pair.0.origin()) {
            class.has_failing_minus = true;
        }
        class.members.push(pair.clone());
    }
    Ok(classes)
}

/// `j -> |{j-extremes}|` for `j = 0..n-1`, with the conventions
/// `{0-extremes} = {}` and `{(n-1)-extremes} = (n-1//ni)`.
pub fn count_extremes(q: &Quiver, n: usize, i: usize, cap: usize) -> Result<Vec<usize>> {
    assert!(i >= 1, "extreme counts feed the formulas for i >= 1");
    let mut counts = vec![0usize; n];
    for j in 1..=n.saturating_sub(2) {
        counts[j] = movement_classes(q, n, i, j, cap)?
            .iter()
            .filter(|c| c.is_j_extreme())
            .count();
    }
    counts[n - 1] = usize::try_from(&count_parallel(q, n - 1, n * i))
        .expect("basis size fits usize");
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::quiver::DEFAULT_PATH_CAP;

    const CAP: usize = DEFAULT_PATH_CAP;

    fn pair(q: &Quiver, p: &[usize], s: &[usize]) -> (Path, Path) {
        (
            Path::from_arrows(q, p.to_vec()).unwrap(),
            Path::from_arrows(q, s.to_vec()).unwrap(),
        )
    }

    #[test]
    fn plus_movement_th() {
        let q = corpus::th();
        // (a, aba): shared first arrow a, t = vertex 2 is not a sink.
        let (plus, _) = movement_neighbors(&q, &pair(&q, &[0], &[0, 1, 0])).unwrap();
        assert_eq!(plus.len(), 1);
        assert_eq!(plus[0].0.label(&q), "b");
        assert_eq!(plus[0].1.label(&q), "bab");
    }

    #[test]
    fn plus_extreme_th() {
        let q = corpus::th();
        // (c, aba): first arrows differ.
        let (plus, _) = movement_neighbors(&q, &pair(&q, &[2], &[0, 1, 0])).unwrap();
        assert!(plus.is_empty());
    }

    #[test]
    fn both_extreme_sc() {
        let q = corpus::sc();
        // (d, abc): distinct first and last arrows.
        let (plus, minus) = movement_neighbors(&q, &pair(&q, &[3], &[0, 1, 2])).unwrap();
        assert!(plus.is_empty());
        assert!(minus.is_empty());
    }

    #[test]
    fn count_extremes_sc_n3() {
        let counts = count_extremes(&corpus::sc(), 3, 1, CAP).unwrap();
        assert_eq!(counts, vec![0, 1, 0]);
    }

    #[test]
    fn count_extremes_th_n3() {
        // Arrows alternate between the two vertices, so (2//3) is empty.
        let counts = count_extremes(&corpus::th(), 3, 1, CAP).unwrap();
        assert_eq!(counts, vec![0, 0, 0]);
        // (2//6): 2 cycles of length 2 and 8 of length 6 at each vertex.
        let counts = count_extremes(&corpus::th(), 3, 2, CAP).unwrap();
        assert_eq!(counts[2], 32);
    }

    #[test]
    fn count_extremes_th_n2() {
        let counts = count_extremes(&corpus::th(), 2, 1, CAP).unwrap();
        assert_eq!(counts, vec![0, 0]);
    }

    #[test]
    fn movement_symmetry_on_corpus() {
        // (p',q') in plus(p,q) implies (p,q) in minus(p',q').
        for (_, q) in corpus::non_basic_connected() {
            for n in 2..=4usize {
                for i in 1..=2usize {
                    if n * i > 6 {
                        continue;
                    }
                    for j in 1..=n - 2 {
                        let basis = build_basis(&q, j, n * i, CAP).unwrap();
                        for pair in &basis.pairs {
                            let (plus, _) = movement_neighbors(&q, pair).unwrap();
                            for neighbor in plus {
                                let (_, minus) = movement_neighbors(&q, &neighbor).unwrap();
                                assert!(minus.contains(pair));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classes_partition_basis() {
        for (_, q) in corpus::non_basic_connected() {
            for n in [3usize, 4] {
                for j in 1..=n - 2 {
                    let basis = build_basis(&q, j, n, CAP).unwrap();
                    let classes = movement_classes(&q, n, 1, j, CAP).unwrap();
                    let total: usize = classes.iter().map(|c| c.members.len()).sum();
                    assert_eq!(total, basis.len());
                }
            }
        }
    }
}
