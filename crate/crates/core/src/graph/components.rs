use std::collections::VecDeque;

use super::Graph;

/// Component index per vertex; `None` for vertices outside the restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub component_id: Vec<Option<u32>>,
    pub component_count: usize,
}

impl ComponentLabeling {
    pub fn same_component(&self, u: u32, v: u32) -> bool {
        match (self.component_id[u as usize], self.component_id[v as usize]) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

/// Connected components of `g`, or of the subgraph induced by `restrict_to`.
///
/// Components are numbered in order of their smallest vertex.
pub fn connected_components(g: &Graph, restrict_to: Option<&[u32]>) -> ComponentLabeling {
    let n = g.vertex_count();
    let mut inside = match restrict_to {
        None => vec![true; n],
        Some(subset) => {
            let mut mask = vec![false; n];
            for &v in subset {
                mask[v as usize] = true;
            }
            mask
        }
    };
    let mut component_id = vec![None; n];
    let mut count = 0u32;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if !inside[s] {
            continue;
        }
        inside[s] = false;
        component_id[s] = Some(count);
        queue.push_back(s as u32);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if inside[w as usize] {
                    inside[w as usize] = false;
                    component_id[w as usize] = Some(count);
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    ComponentLabeling {
        component_id,
        component_count: count as usize,
    }
}
