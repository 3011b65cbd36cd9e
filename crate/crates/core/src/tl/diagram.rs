//! Planar diagrams: non-crossing perfect matchings of `2n` boundary points.
//!
//! Points are indexed counterclockwise: bottom row left to right is
//! `0..n-1`, top row right to left is `n..2n-1` (so top position `j`, counted
//! left to right, is point `2n-1-j`). Non-crossing in this circular order is
//! exactly planarity of the rectangle picture.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TLDiagram {
    n: usize,
    /// `pairing[p]` = partner point of `p`; an involution without fixed
    /// points, non-crossing.
    pairing: Vec<u16>,
}

impl fmt::Debug for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TL{}[{}]", self.n, self.paren_word())
    }
}

impl TLDiagram {
    pub fn new(n: usize, pairing: Vec<u16>) -> Self {
        debug_assert_eq!(pairing.len(), 2 * n);
        let d = TLDiagram { n, pairing };
        debug_assert!(d.is_valid(), "crossing or non-involutive pairing");
        d
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn partner(&self, p: usize) -> usize {
        self.pairing[p] as usize
    }

    /// Circular index of top position `j` (left to right).
    pub fn top_point(n: usize, j: usize) -> usize {
        2 * n - 1 - j
    }

    /// Circular index of bottom position `i` (left to right).
    pub fn bottom_point(_n: usize, i: usize) -> usize {
        i
    }

    fn is_valid(&self) -> bool {
        let m = 2 * self.n;
        if self.pairing.len() != m {
            return false;
        }
        for p in 0..m {
            let q = self.pairing[p] as usize;
            if q >= m || q == p || self.pairing[q] as usize != p {
                return false;
            }
        }
        // non-crossing: matched pairs never interleave
        for p in 0..m {
            let q = self.pairing[p] as usize;
            if p < q {
                for r in p + 1..q {
                    let s = self.pairing[r] as usize;
                    if s < p || s > q {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Identity diagram: bottom `i` to top `i`.
    pub fn identity(n: usize) -> Self {
        let mut pairing = vec![0u16; 2 * n];
        for i in 0..n {
            let a = Self::bottom_point(n, i);
            let b = Self::top_point(n, i);
            pairing[a] = b as u16;
            pairing[b] = a as u16;
        }
        TLDiagram::new(n, pairing)
    }

    /// The cup-cap generator `e_i`, `1 <= i <= n-1`: a cup joining top
    /// positions `i-1, i` and a cap joining bottom positions `i-1, i`.
    pub fn e(n: usize, i: usize) -> Self {
        assert!((1..n).contains(&i));
        let mut pairing = vec![0u16; 2 * n];
        let join = |pairing: &mut Vec<u16>, a: usize, b: usize| {
            pairing[a] = b as u16;
            pairing[b] = a as u16;
        };
        for j in 0..n {
            if j != i - 1 && j != i {
                join(&mut pairing, Self::bottom_point(n, j), Self::top_point(n, j));
            }
        }
        join(&mut pairing, Self::bottom_point(n, i - 1), Self::bottom_point(n, i));
        join(&mut pairing, Self::top_point(n, i - 1), Self::top_point(n, i));
        TLDiagram::new(n, pairing)
    }

    /// Balanced-parenthesis word over the circular order; canonical and
    /// planar by construction.
    pub fn paren_word(&self) -> String {
        (0..2 * self.n)
            .map(|p| if (self.pairing[p] as usize) > p { '(' } else { ')' })
            .collect()
    }

    /// Embeds with one extra through-strand on the right.
    pub fn with_free_strand(&self) -> TLDiagram {
        let n = self.n;
        let m = n + 1;
        let remap = |p: usize| -> usize {
            if p < n {
                p // bottom points keep their index
            } else {
                p + 2 // old top 2n-1-j becomes 2m-1-j
            }
        };
        let mut pairing = vec![0u16; 2 * m];
        for p in 0..2 * n {
            let q = self.pairing[p] as usize;
            pairing[remap(p)] = remap(q) as u16;
        }
        // new strand: bottom position n to top position n
        pairing[n] = (n + 1) as u16;
        pairing[n + 1] = n as u16;
        TLDiagram::new(m, pairing)
    }

    /// Rotates the boundary one step counterclockwise.
    pub fn rotate(&self) -> TLDiagram {
        let m = 2 * self.n;
        let mut pairing = vec![0u16; m];
        for p in 0..m {
            let q = self.pairing[p] as usize;
            pairing[(p + 1) % m] = ((q + 1) % m) as u16;
        }
        TLDiagram::new(self.n, pairing)
    }

    /// Stacks `self` on top of `other` (gluing self's bottom to other's top)
    /// and returns the composite diagram plus the number of closed loops.
    pub fn stack(&self, other: &TLDiagram) -> (TLDiagram, usize) {
        assert_eq!(self.n, other.n, "mismatched strand counts");
        let n = self.n;
        // node ids: 0..2n = self's points, 2n..4n = other's points
        let a_off = 0usize;
        let b_off = 2 * n;
        // glue: self bottom i <-> other top i
        let glue_a = |i: usize| a_off + TLDiagram::bottom_point(n, i);
        let glue_b = |i: usize| b_off + TLDiagram::top_point(n, i);
        // result boundary: bottom = other's bottom, top = self's top
        let mut pairing = vec![u16::MAX; 2 * n];
        let mut visited = vec![false; 4 * n];
        let boundary_id = |node: usize| -> Option<usize> {
            if node >= b_off {
                let p = node - b_off;
                if p < n {
                    return Some(p); // other's bottom, stays bottom
                }
            } else {
                let p = node;
                if p >= n {
                    return Some(p); // self's top, stays top (same circular idx)
                }
            }
            None
        };
        let glue_partner = |node: usize| -> Option<usize> {
            if node < b_off {
                let p = node;
                if p < n {
                    return Some(glue_b(p)); // self bottom i -> other top i
                }
            } else {
                let p = node - b_off;
                if p >= n {
                    let j = 2 * n - 1 - p; // top position
                    return Some(glue_a(j));
                }
            }
            None
        };
        let strand_partner = |node: usize| -> usize {
            if node < b_off {
                self.pairing[node] as usize
            } else {
                b_off + other.pairing[node - b_off] as usize
            }
        };
        for start in 0..2 * n {
            // walk from each result-boundary point
            let start_node = if start < n { b_off + start } else { start };
            if visited[start_node] {
                continue;
            }
            let mut node = start_node;
            visited[node] = true;
            loop {
                node = strand_partner(node);
                visited[node] = true;
                if let Some(b) = boundary_id(node) {
                    pairing[start] = b as u16;
                    pairing[b] = start as u16;
                    break;
                }
                node = glue_partner(node).expect("interior node has a glue partner");
                visited[node] = true;
            }
        }
        // leftover unvisited nodes form closed loops; each loop visits the
        // glued interface an even number of times
        let mut loops = 0usize;
        for s in 0..4 * n {
            if visited[s] {
                continue;
            }
            loops += 1;
            let mut node = s;
            loop {
                visited[node] = true;
                node = strand_partner(node);
                visited[node] = true;
                match glue_partner(node) {
                    Some(g) => node = g,
                    None => unreachable!("loop strands stay interior"),
                }
                if node == s {
                    break;
                }
            }
        }
        (TLDiagram::new(n, pairing), loops)
    }

    /// Closes the diagram around the right: joins bottom `i` to top `i` for
    /// all `i` and returns the number of resulting loops.
    pub fn closure_loops(&self) -> usize {
        let n = self.n;
        let mut visited = vec![false; 2 * n];
        let mut loops = 0usize;
        for s in 0..2 * n {
            if visited[s] {
                continue;
            }
            loops += 1;
            let mut node = s;
            loop {
                visited[node] = true;
                node = self.pairing[node] as usize;
                visited[node] = true;
                // closure edge: bottom i <-> top i
                node = if node < n {
                    TLDiagram::top_point(n, node)
                } else {
                    2 * n - 1 - node
                };
                if node == s {
                    break;
                }
            }
        }
        loops
    }
}

/// All non-crossing perfect matchings on `2n` points, deterministically
/// ordered; there are Catalan(n) of them.
pub fn tl_basis(n: usize) -> Vec<TLDiagram> {
    let m = 2 * n;
    let mut out = Vec::new();
    let mut pairing = vec![u16::MAX; m];
    fn rec(pairing: &mut Vec<u16>, out: &mut Vec<TLDiagram>, n: usize) {
        let m = 2 * n;
        let first = match pairing.iter().position(|&x| x == u16::MAX) {
            None => {
                out.push(TLDiagram::new(n, pairing.clone()));
                return;
            }
            Some(p) => p,
        };
        // the first unmatched point pairs with an unmatched point at odd
        // distance; scanning stops at the first matched point, which no arc
        // may jump without crossing
        let mut q = first + 1;
        while q < m {
            if pairing[q] != u16::MAX {
                break;
            }
            if (q - first) % 2 == 1 {
                pairing[first] = q as u16;
                pairing[q] = first as u16;
                rec(pairing, out, n);
                pairing[first] = u16::MAX;
                pairing[q] = u16::MAX;
            }
            q += 1;
        }
    }
    if n == 0 {
        out.push(TLDiagram::new(0, vec![]));
        return out;
    }
    rec(&mut pairing, &mut out, n);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for n in 0..=10 {
            assert_eq!(tl_basis(n).len(), catalan[n], "n={}", n);
        }
    }

    #[test]
    fn identity_stacks_trivially() {
        for n in 1..=5 {
            let id = TLDiagram::identity(n);
            for d in tl_basis(n) {
                let (r, loops) = id.stack(&d);
                assert_eq!(r, d);
                assert_eq!(loops, 0);
                let (r, loops) = d.stack(&id);
                assert_eq!(r, d);
                assert_eq!(loops, 0);
            }
        }
    }

    #[test]
    fn cup_cap_squares_to_a_loop() {
        let e1 = TLDiagram::e(2, 1);
        let (r, loops) = e1.stack(&e1);
        assert_eq!(r, e1);
        assert_eq!(loops, 1);
    }

    #[test]
    fn e1_e2_e1_contracts() {
        let e1 = TLDiagram::e(3, 1);
        let e2 = TLDiagram::e(3, 2);
        let (m, l1) = e1.stack(&e2);
        let (r, l2) = m.stack(&e1);
        assert_eq!(r, e1);
        assert_eq!(l1 + l2, 0);
    }

    #[test]
    fn closure_loop_counts() {
        assert_eq!(TLDiagram::identity(1).closure_loops(), 1);
        assert_eq!(TLDiagram::identity(3).closure_loops(), 3);
        assert_eq!(TLDiagram::e(2, 1).closure_loops(), 1);
    }

    #[test]
    fn rotation_permutes_basis() {
        for n in 1..=6 {
            let basis = tl_basis(n);
            let rotated: std::collections::BTreeSet<_> =
                basis.iter().map(|d| d.rotate()).collect();
            assert_eq!(rotated.len(), basis.len());
            for d in &basis {
                assert!(rotated.contains(d));
            }
        }
    }

    #[test]
    fn free_strand_embedding() {
        // embedding e_1 of TL_2 into TL_3 gives the e_1 generator there
        assert_eq!(TLDiagram::e(2, 1).with_free_strand(), TLDiagram::e(3, 1));
        assert_eq!(TLDiagram::identity(4).with_free_strand(), TLDiagram::identity(5));
    }
}
