//! Strongly connected components, simple cycles and Karp's maximum mean cycle
//! on small dense digraphs given as successor lists.

use crate::error::{Error, Result};

/// Default cap on the number of simple cycles enumerated.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// Tarjan's algorithm. Components come out in reverse topological order
/// (sinks first); members of each component are sorted.
pub fn scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, next successor position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Whether a component carries a cycle (more than one vertex, or a self-loop).
pub fn is_cyclic_component(adj: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || adj[comp[0]].contains(&comp[0])
}

/// Every simple cycle exactly once, rotated to start at its smallest vertex,
/// in lexicographic order. Johnson's algorithm.
pub fn simple_cycles(adj: &[Vec<usize>], cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut cycles = Vec::new();

    for s in 0..n {
        // Restrict to the component of s in the subgraph induced by {s, .., n-1}.
        let sub: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                if v < s {
                    Vec::new()
                } else {
                    adj[v].iter().copied().filter(|&w| w >= s).collect()
                }
            })
            .collect();
        let comp = scc(&sub).into_iter().find(|c| c.contains(&s)).unwrap_or_default();
        if comp.is_empty() || !is_cyclic_component(&sub, &comp) {
            continue;
        }
        let mut in_comp = vec![false; n];
        for &v in &comp {
            in_comp[v] = true;
        }
        let local: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                if in_comp[v] {
                    sub[v].iter().copied().filter(|&w| in_comp[w]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();

        let mut search = Johnson {
            adj: &local,
            start: s,
            blocked: vec![false; n],
            b: vec![Vec::new(); n],
            path: Vec::new(),
            out: &mut cycles,
            cap,
        };
        search.circuit(s)?;
    }
    cycles.sort();
    Ok(cycles)
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    start: usize,
    blocked: Vec<bool>,
    b: Vec<Vec<usize>>,
    path: Vec<usize>,
    out: &'a mut Vec<Vec<usize>>,
    cap: usize,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        let mut work = vec![u];
        while let Some(v) = work.pop() {
            if !self.blocked[v] {
                continue;
            }
            self.blocked[v] = false;
            work.extend(std::mem::take(&mut self.b[v]));
        }
    }

    fn circuit(&mut self, v: usize) -> Result<bool> {
        let mut found = false;
        self.path.push(v);
        self.blocked[v] = true;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if w == self.start {
                if self.out.len() >= self.cap {
                    return Err(Error::CycleBudgetExceeded(self.cap));
                }
                self.out.push(self.path.clone());
                found = true;
            } else if !self.blocked[w] && self.circuit(w)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in self.adj[v].iter() {
                if !self.b[w].contains(&v) {
                    self.b[w].push(v);
                }
            }
        }
        self.path.pop();
        Ok(found)
    }
}

/// Karp's maximum mean cycle weight, where leaving vertex `v` costs
/// `weight[v]`. Returns `None` for an acyclic graph.
pub fn karp_max_mean(adj: &[Vec<usize>], weight: &[f64]) -> Option<f64> {
    let n = adj.len();
    if n == 0 {
        return None;
    }
    // Vertex n is a super source with zero-weight edges into every vertex.
    let total = n + 1;
    let neg = f64::NEG_INFINITY;
    let mut d = vec![vec![neg; total]; total + 1];
    d[0][n] = 0.0;
    for k in 1..=total {
        for v in 0..n {
            d[k][v] = d[k - 1][n];
        }
        for u in 0..n {
            let du = d[k - 1][u];
            if du == neg {
                continue;
            }
            for &v in &adj[u] {
                let cand = du + weight[u];
                if cand > d[k][v] {
                    d[k][v] = cand;
                }
            }
        }
        // No edges enter the super source after step 0.
        d[k][n] = neg;
    }
    let mut best: Option<f64> = None;
    for v in 0..n {
        let dn = d[total][v];
        if dn == neg {
            continue;
        }
        let worst = (0..total)
            .filter(|&k| d[k][v] != neg)
            .map(|k| (dn - d[k][v]) / (total - k) as f64)
            .fold(f64::INFINITY, f64::min);
        best = Some(best.map_or(worst, |b: f64| b.max(worst)));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_small_cases() {
        let id: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2]];
        let mut comps = scc(&id);
        comps.sort();
        assert_eq!(comps, vec![vec![0], vec![1], vec![2]]);

        let complete: Vec<Vec<usize>> = (0..4).map(|_| (0..4).collect()).collect();
        assert_eq!(scc(&complete), vec![vec![0, 1, 2, 3]]);

        // 0 -> 1 -> 2 -> 1: sink component {1,2} precedes {0}
        let chain = vec![vec![1], vec![2], vec![1]];
        assert_eq!(scc(&chain), vec![vec![1, 2], vec![0]]);
    }

    #[test]
    fn simple_cycles_small_cases() {
        assert_eq!(simple_cycles(&[vec![0]], 10).unwrap(), vec![vec![0]]);
        // 2-cycle {0,1} plus a chord-free 3-cycle {2,3,4}, joined by 1 -> 2.
        let adj = vec![vec![1], vec![0, 2], vec![3], vec![4], vec![2]];
        assert_eq!(simple_cycles(&adj, 10).unwrap(), vec![vec![0, 1], vec![2, 3, 4]]);
        // complete digraph on 3 vertices with loops: 3 loops, 3 two-cycles, 2 three-cycles
        let k3: Vec<Vec<usize>> = (0..3).map(|_| (0..3).collect()).collect();
        assert_eq!(simple_cycles(&k3, 100).unwrap().len(), 8);
        assert!(matches!(simple_cycles(&k3, 5), Err(Error::CycleBudgetExceeded(5))));
    }

    #[test]
    fn karp_matches_hand_values() {
        // 0 <-> 1 with weights 1 and 0, self loop at 2 with weight 0.25
        let adj = vec![vec![1], vec![0], vec![2]];
        let m = karp_max_mean(&adj, &[1.0, 0.0, 0.25]).unwrap();
        assert!((m - 0.5).abs() < 1e-12);
        assert_eq!(karp_max_mean(&[vec![1], vec![]], &[1.0, 1.0]), None);
    }
}
