use std::collections::VecDeque;

use super::{SpliceDiagram, VertexKind};

impl SpliceDiagram {
    /// A string that is equal for two diagrams exactly when they are
    /// isomorphic as decorated trees. Vertex names and leaf order are ignored.
    pub fn canonical_form(&self) -> String {
        self.centers()
            .into_iter()
            .map(|c| self.encode(c, None))
            .min()
            .unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &SpliceDiagram) -> bool {
        self.vertex_count() == other.vertex_count() && self.canonical_form() == other.canonical_form()
    }

    fn encode(&self, v: usize, parent: Option<usize>) -> String {
        let mut children: Vec<String> = self
            .neighbors(v)
            .filter(|&(n, _)| Some(n) != parent)
            .map(|(n, e)| format!("{}:{}{}", self.end_label(v, e), self.end_label(n, e), self.encode(n, Some(v))))
            .collect();
        children.sort();
        let tag = match self.kind(v) {
            VertexKind::Node => 'N',
            VertexKind::Leaf => 'L',
        };
        format!("{tag}({})", children.join(","))
    }

    fn end_label(&self, v: usize, e: usize) -> String {
        match self.kind(v) {
            VertexKind::Node => self.decoration(v, e).to_string(),
            VertexKind::Leaf => "-".into(),
        }
    }

    /// Vertices of minimal eccentricity (one or two of them).
    fn centers(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let ecc: Vec<usize> = (0..n).map(|v| self.eccentricity(v)).collect();
        let best = ecc.iter().copied().min().unwrap_or(0);
        (0..n).filter(|&v| ecc[v] == best).collect()
    }

    fn eccentricity(&self, v: usize) -> usize {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        let mut far = 0;
        while let Some(x) = queue.pop_front() {
            far = far.max(dist[x]);
            for (y, _) in self.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        far
    }
}
