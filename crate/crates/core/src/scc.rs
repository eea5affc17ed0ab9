/// Strongly connected components of a directed graph given as adjacency
/// lists. Returns a component id per vertex; ids are numbered in order of
/// each component's smallest vertex.
///
/// Iterative Tarjan, so deep graphs do not overflow the stack.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut raw_count = 0;
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, next edge to look at)
        let mut call = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let u = adj[v][top.1];
                top.1 += 1;
                if index[u] == UNSEEN {
                    index[u] = counter;
                    low[u] = counter;
                    counter += 1;
                    stack.push(u);
                    on_stack[u] = true;
                    call.push((u, 0));
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let u = stack.pop().expect("tarjan stack");
                        on_stack[u] = false;
                        comp[u] = raw_count;
                        if u == v {
                            break;
                        }
                    }
                    raw_count += 1;
                }
            }
        }
    }

    let mut renumber = vec![UNSEEN; raw_count];
    let mut next_id = 0;
    for c in comp.iter_mut() {
        if renumber[*c] == UNSEEN {
            renumber[*c] = next_id;
            next_id += 1;
        }
        *c = renumber[*c];
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reach(adj: &[Vec<usize>], from: usize) -> Vec<bool> {
        let mut seen = vec![false; adj.len()];
        let mut todo = vec![from];
        seen[from] = true;
        while let Some(v) = todo.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    todo.push(u);
                }
            }
        }
        seen
    }

    #[test]
    fn matches_mutual_reachability() {
        let graphs: Vec<Vec<Vec<usize>>> = vec![
            vec![vec![1], vec![2], vec![0], vec![2, 4], vec![3], vec![]],
            vec![vec![], vec![0], vec![1]],
            vec![vec![0]],
            vec![vec![1, 2], vec![2], vec![1, 3], vec![3]],
        ];
        for adj in graphs {
            let comp = strongly_connected_components(&adj);
            let r: Vec<Vec<bool>> = (0..adj.len()).map(|v| reach(&adj, v)).collect();
            for a in 0..adj.len() {
                for b in 0..adj.len() {
                    assert_eq!(comp[a] == comp[b], r[a][b] && r[b][a]);
                }
            }
            assert_eq!(comp[0], 0);
        }
    }
}
