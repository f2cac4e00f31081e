//! Finite-type recognition for connected Coxeter diagrams.
//!
//! A connected labelled diagram generates a finite group iff it is
//! isomorphic (as an edge-labelled graph) to one of the classical
//! templates. Recognition is by explicit isomorphism search against a
//! generated template list, after cheap structural filters.

use super::Label;

/// A connected induced diagram: sorted generator indices plus the edges
/// (label 3 or more) among them.
pub(super) struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize, Label)>,
}

/// Template on local vertices `0..n`: edges with finite labels.
struct Template {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
}

fn path(labels: &[u32]) -> Template {
    Template {
        n: labels.len() + 1,
        edges: labels
            .iter()
            .enumerate()
            .map(|(i, &m)| (i, i + 1, m))
            .collect(),
    }
}

/// Tree with a single branch vertex and three arms of the given lengths,
/// every edge labelled 3.
fn three_arm(arms: [usize; 3]) -> Template {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in &arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev.min(next), prev.max(next), 3));
            prev = next;
            next += 1;
        }
    }
    Template { n: next, edges }
}

/// All finite-type templates on exactly `n` vertices, `n >= 3`.
fn templates_of_size(n: usize) -> Vec<Template> {
    let mut out = Vec::new();
    // Unbranched families.
    out.push(path(&vec![3; n - 1]));
    {
        let mut labels = vec![3; n - 1];
        labels[0] = 4;
        out.push(path(&labels));
    }
    match n {
        3 => out.push(path(&[5, 3])),
        4 => {
            out.push(path(&[3, 4, 3]));
            out.push(path(&[5, 3, 3]));
        }
        _ => {}
    }
    // Branched families, all labels 3.
    if n >= 4 {
        out.push(three_arm([1, 1, n - 3]));
    }
    match n {
        6 => out.push(three_arm([1, 2, 2])),
        7 => out.push(three_arm([1, 2, 3])),
        8 => out.push(three_arm([1, 2, 4])),
        _ => {}
    }
    out
}

pub(super) fn component_is_finite_type(comp: &Component) -> bool {
    let n = comp.vertices.len();
    if n == 1 {
        return true;
    }
    let mut labels = Vec::with_capacity(comp.edges.len());
    for &(_, _, l) in &comp.edges {
        match l {
            Label::Finite(m) => labels.push(m),
            Label::Infinite => return false,
        }
    }
    // Connected with an extra edge means a cycle; no finite type has one.
    if comp.edges.len() != n - 1 {
        return false;
    }
    if n == 2 {
        return true;
    }

    // Local adjacency on 0..n.
    let local = |v: usize| comp.vertices.binary_search(&v).unwrap();
    let mut adj = vec![vec![0u32; n]; n];
    let mut deg = vec![0usize; n];
    for (k, &(a, b, _)) in comp.edges.iter().enumerate() {
        let (a, b) = (local(a), local(b));
        adj[a][b] = labels[k];
        adj[b][a] = labels[k];
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut deg_sorted = deg.clone();
    deg_sorted.sort_unstable();
    labels.sort_unstable();

    'templates: for t in templates_of_size(n) {
        debug_assert_eq!(t.n, n);
        let mut t_adj = vec![vec![0u32; n]; n];
        let mut t_deg = vec![0usize; n];
        let mut t_labels = Vec::with_capacity(t.edges.len());
        for &(a, b, m) in &t.edges {
            t_adj[a][b] = m;
            t_adj[b][a] = m;
            t_deg[a] += 1;
            t_deg[b] += 1;
            t_labels.push(m);
        }
        let mut t_deg_sorted = t_deg.clone();
        t_deg_sorted.sort_unstable();
        t_labels.sort_unstable();
        if t_deg_sorted != deg_sorted || t_labels != labels {
            continue 'templates;
        }
        if isomorphic(&adj, &deg, &t_adj, &t_deg) {
            return true;
        }
    }
    false
}

/// Labelled-graph isomorphism by backtracking; assigns component vertices
/// in decreasing-degree order so the branch vertex is placed first.
fn isomorphic(
    adj: &[Vec<u32>],
    deg: &[usize],
    t_adj: &[Vec<u32>],
    t_deg: &[usize],
) -> bool {
    let n = deg.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));

    fn extend(
        pos: usize,
        order: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        adj: &[Vec<u32>],
        deg: &[usize],
        t_adj: &[Vec<u32>],
        t_deg: &[usize],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for tv in 0..deg.len() {
            if used[tv] || t_deg[tv] != deg[v] {
                continue;
            }
            let consistent = order[..pos].iter().all(|&u| {
                let tu = map[u].unwrap();
                adj[v][u] == t_adj[tv][tu]
            });
            if consistent {
                map[v] = Some(tv);
                used[tv] = true;
                if extend(pos + 1, order, map, used, adj, deg, t_adj, t_deg) {
                    return true;
                }
                map[v] = None;
                used[tv] = false;
            }
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    extend(0, &order, &mut map, &mut used, adj, deg, t_adj, t_deg)
}
