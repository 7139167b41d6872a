use super::{build_clique_tree, ChordalError, CliqueTree};
use crate::graph::{Graph, VertexSet};

/// A minimal separator together with a pair it separates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    pub set: VertexSet,
    pub witness: (usize, usize),
}

/// The family 𝒮(G), sorted by vertex list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparatorSet {
    pub members: Vec<Separator>,
}

impl SeparatorSet {
    pub fn contains(&self, s: &VertexSet) -> bool {
        self.members.iter().any(|m| m.set == *s)
    }

    pub fn sets(&self) -> Vec<VertexSet> {
        self.members.iter().map(|m| m.set.clone()).collect()
    }

    /// Inclusion-maximal members.
    pub fn maximal(&self) -> Vec<VertexSet> {
        let sets = self.sets();
        sets.iter().filter(|s| !sets.iter().any(|t| t != *s && s.is_subset(t))).cloned().collect()
    }

    pub fn is_maximal(&self, s: &VertexSet) -> bool {
        self.contains(s) && !self.members.iter().any(|m| m.set != *s && s.is_subset(&m.set))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Distinct labels of `tree`, each with the witness pair
/// `(min(Q \ S), min(Q' \ S))` taken from its first edge.
pub fn separators_of_tree(tree: &CliqueTree) -> SeparatorSet {
    let mut members: Vec<Separator> = Vec::new();
    for (e, &(i, j)) in tree.edges.iter().enumerate() {
        let set = tree.label(e);
        if members.iter().any(|m| m.set == set) {
            continue;
        }
        let u = tree.cliques[i].first_not_in(&set).expect("distinct maximal cliques");
        let v = tree.cliques[j].first_not_in(&set).expect("distinct maximal cliques");
        members.push(Separator { set, witness: (u.min(v), u.max(v)) });
    }
    members.sort_by(|a, b| a.set.cmp(&b.set));
    SeparatorSet { members }
}

/// 𝒮(G) for a chordal graph, read off a clique tree.
pub fn minimal_separators(g: &Graph) -> Result<SeparatorSet, ChordalError> {
    Ok(separators_of_tree(&build_clique_tree(g)?))
}

/// Number of components of `G \ S` containing a vertex complete to `S`, minus one.
///
/// This is how often `S` labels an edge of any clique tree of `G`.
pub fn separator_multiplicity(g: &Graph, s: &VertexSet) -> Result<usize, ChordalError> {
    let full = g
        .components_in(&g.vertex_set().difference(s))
        .iter()
        .filter(|c| c.iter().any(|v| g.is_complete_to(v, s)))
        .count();
    if full < 2 {
        return Err(ChordalError::NotASeparator(s.clone()));
    }
    Ok(full - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_graph() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
    }

    #[test]
    fn separators_of_h() {
        let g = h_graph();
        let seps = minimal_separators(&g).unwrap();
        assert_eq!(seps.sets(), vec![g.set_of(&[1]), g.set_of(&[3])]);
        assert_eq!(seps.members[0].witness, (0, 2));
    }

    #[test]
    fn clique_has_no_separator() {
        assert!(minimal_separators(&Graph::complete(5)).unwrap().is_empty());
    }

    #[test]
    fn lexbfs_example_separators() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2), (5, 1), (5, 2)]);
        let seps = minimal_separators(&g).unwrap();
        assert_eq!(seps.sets(), vec![g.set_of(&[1]), g.set_of(&[1, 2]), g.set_of(&[2])]);
        assert_eq!(seps.maximal(), vec![g.set_of(&[1, 2])]);
    }

    #[test]
    fn multiplicities() {
        let g = h_graph();
        assert_eq!(separator_multiplicity(&g, &g.set_of(&[1])), Ok(1));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(separator_multiplicity(&star, &star.set_of(&[0])), Ok(2));
        assert!(separator_multiplicity(&g, &g.set_of(&[0])).is_err());
    }
}
