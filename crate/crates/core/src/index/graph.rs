use crate::corpus::{Corpus, PaperIdx};

/// Directed citation graph over corpus papers, stored in both directions.
///
/// Adjacency lists are sorted by [`PaperIdx`], i.e. by `(date, id)`. Citations
/// to papers outside the corpus are not part of the graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CitationGraph {
    cites: Vec<Vec<PaperIdx>>,
    cited_by: Vec<Vec<PaperIdx>>,
    edge_count: usize,
}

impl CitationGraph {
    pub fn build(corpus: &Corpus) -> Self {
        let cites = corpus
            .papers()
            .iter()
            .map(|p| {
                p.out_citations
                    .iter()
                    .filter_map(|c| corpus.index_of(c))
                    .collect()
            })
            .collect();
        Self::from_adjacency(cites)
    }

    /// Builds from outgoing lists; self-edges and repeats are removed.
    pub fn from_adjacency(mut cites: Vec<Vec<PaperIdx>>) -> Self {
        let n = cites.len();
        let mut cited_by = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (from, list) in cites.iter_mut().enumerate() {
            let from = PaperIdx(from as u32);
            list.retain(|&to| to != from && to.get() < n);
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
            for &to in list.iter() {
                cited_by[to.get()].push(from);
            }
        }
        // pushed in increasing `from` order, so already sorted
        Self {
            cites,
            cited_by,
            edge_count,
        }
    }

    pub fn paper_count(&self) -> usize {
        self.cites.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn cites(&self, p: PaperIdx) -> &[PaperIdx] {
        &self.cites[p.get()]
    }

    pub fn cited_by(&self, p: PaperIdx) -> &[PaperIdx] {
        &self.cited_by[p.get()]
    }

    pub fn has_edge(&self, from: PaperIdx, to: PaperIdx) -> bool {
        self.cites[from.get()].binary_search(&to).is_ok()
    }

    /// True when `cited_by` is exactly the transpose of `cites`.
    pub fn is_consistent(&self) -> bool {
        let n = self.cites.len();
        if self.cited_by.len() != n {
            return false;
        }
        let mut rebuilt = vec![Vec::new(); n];
        let mut count = 0;
        for (from, list) in self.cites.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &to in list {
                if to.get() == from {
                    return false;
                }
                rebuilt[to.get()].push(PaperIdx(from as u32));
                count += 1;
            }
        }
        count == self.edge_count && rebuilt == self.cited_by
    }
}
