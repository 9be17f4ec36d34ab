use super::{Graph, PathIndex};
use crate::error::Result;

/// Single-source shortest-path tree. The root-to-`v` tree path is P(root, v).
#[derive(Debug, Clone)]
pub struct SpTree {
    root: usize,
    parent: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
    subtree_size: Vec<usize>,
    root_distance: Vec<f64>,
    // ancestors[k][v] is the 2^k-th ancestor of v (the root maps to itself)
    ancestors: Vec<Vec<u32>>,
}

impl SpTree {
    pub fn build(graph: &Graph, index: &PathIndex, root: usize) -> Result<SpTree> {
        graph.check_vertex(root)?;
        let row = index.row(root);
        let n = graph.n();
        let parent: Vec<Option<usize>> = (0..n).map(|v| row.pred(v)).collect();
        let parent_edge: Vec<Option<usize>> = (0..n).map(|v| row.pred_edge(v)).collect();
        let order: Vec<usize> = row.order().collect();
        Ok(SpTree::assemble(graph, root, parent, parent_edge, order))
    }

    /// `order` must list every vertex after its parent.
    fn assemble(
        graph: &Graph,
        root: usize,
        parent: Vec<Option<usize>>,
        parent_edge: Vec<Option<usize>>,
        order: Vec<usize>,
    ) -> SpTree {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        let mut root_distance = vec![0.0; n];
        for &v in &order {
            if let (Some(p), Some(e)) = (parent[v], parent_edge[v]) {
                children[p].push(v);
                depth[v] = depth[p] + 1;
                root_distance[v] = root_distance[p] + graph.attribute(e);
            }
        }
        let mut subtree_size = vec![1; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                subtree_size[p] += subtree_size[v];
            }
        }
        let levels = (usize::BITS - n.leading_zeros()).max(1) as usize;
        let mut ancestors = Vec::with_capacity(levels);
        ancestors.push(
            (0..n)
                .map(|v| parent[v].unwrap_or(v) as u32)
                .collect::<Vec<u32>>(),
        );
        for k in 1..levels {
            let prev = &ancestors[k - 1];
            let next = (0..n).map(|v| prev[prev[v] as usize]).collect();
            ancestors.push(next);
        }
        SpTree {
            root,
            parent,
            parent_edge,
            depth,
            children,
            order,
            subtree_size,
            root_distance,
            ancestors,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        self.parent_edge[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices ordered so that parents precede children.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Number of vertices in the subtree of `v`, itself included.
    pub fn subtree_size(&self, v: usize) -> usize {
        self.subtree_size[v]
    }

    /// Exact attribute sum along the tree path from the root.
    pub fn root_distance(&self, v: usize) -> f64 {
        self.root_distance[v]
    }

    /// Tree edges from `v` up to the root, nearest first.
    pub fn edges_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.depth[v]);
        while let Some(e) = self.parent_edge[v] {
            out.push(e);
            v = self.parent[v].expect("non-root vertex has a parent");
        }
        out
    }

    pub fn ancestor_at_depth(&self, mut v: usize, target: usize) -> usize {
        debug_assert!(target <= self.depth[v]);
        let mut up = self.depth[v] - target;
        let mut k = 0;
        while up > 0 {
            if up & 1 == 1 {
                v = self.ancestors[k][v] as usize;
            }
            up >>= 1;
            k += 1;
        }
        v
    }

    /// Deepest common ancestor of `u` and `v`.
    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (mut a, mut b) = if self.depth[u] >= self.depth[v] {
            (u, v)
        } else {
            (v, u)
        };
        a = self.ancestor_at_depth(a, self.depth[b]);
        if a == b {
            return a;
        }
        for k in (0..self.ancestors.len()).rev() {
            let (pa, pb) = (self.ancestors[k][a], self.ancestors[k][b]);
            if pa != pb {
                a = pa as usize;
                b = pb as usize;
            }
        }
        self.parent[a].expect("distinct vertices below the lca have parents")
    }
}
