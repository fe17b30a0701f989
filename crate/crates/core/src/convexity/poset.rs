use thiserror::Error;

use crate::worldset::WorldSet;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("relation is not antisymmetric: `{0}` and `{1}` are mutually below each other")]
    NotAntisymmetric(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation matrix has the wrong shape")]
    Shape,
}

/// A finite partial order. `up[i]` holds every `j` with `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    up: Vec<WorldSet>,
}

impl Poset {
    /// Validates an explicit relation matrix, `matrix[i][j]` meaning `i <= j`.
    pub fn from_matrix(elements: Vec<String>, matrix: &[Vec<bool>]) -> Result<Poset, PosetError> {
        let n = elements.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(PosetError::Shape);
        }
        for i in 0..n {
            if !matrix[i][i] {
                return Err(PosetError::NotReflexive(elements[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && matrix[i][j] && matrix[j][i] {
                    return Err(PosetError::NotAntisymmetric(elements[i].clone(), elements[j].clone()));
                }
                for k in 0..n {
                    if matrix[i][j] && matrix[j][k] && !matrix[i][k] {
                        return Err(PosetError::NotTransitive(
                            elements[i].clone(),
                            elements[j].clone(),
                            elements[k].clone(),
                        ));
                    }
                }
            }
        }
        let up = matrix
            .iter()
            .map(|row| WorldSet::from_indices(n, (0..n).filter(|&j| row[j])))
            .collect();
        Ok(Poset { elements, up })
    }

    /// The reflexive-transitive closure of the given `(lower, upper)` index pairs.
    pub fn from_covers(elements: Vec<String>, covers: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let n = elements.len();
        let mut matrix = vec![vec![false; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(PosetError::UnknownElement(format!("#{}", a.max(b))));
            }
            matrix[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if matrix[i][k] {
                    for j in 0..n {
                        if matrix[k][j] {
                            matrix[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::from_matrix(elements, &matrix)
    }

    /// Like [`Poset::from_covers`] with pairs given by element name.
    pub fn from_named_covers(elements: Vec<String>, covers: &[(&str, &str)]) -> Result<Poset, PosetError> {
        let index = |name: &str| {
            elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| PosetError::UnknownElement(name.to_string()))
        };
        let pairs = covers
            .iter()
            .map(|&(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        Poset::from_covers(elements, &pairs)
    }

    /// A linear order listing `elements` from bottom to top.
    pub fn chain(elements: Vec<String>) -> Poset {
        let n = elements.len();
        let up = (0..n).map(|i| WorldSet::from_indices(n, i..n)).collect();
        Poset { elements, up }
    }

    pub fn antichain(elements: Vec<String>) -> Poset {
        let n = elements.len();
        let up = (0..n).map(|i| WorldSet::singleton(n, i)).collect();
        Poset { elements, up }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &WorldSet {
        &self.up[a]
    }

    /// `{y | x <= y for some x in xs}`.
    pub fn up_closure(&self, xs: &WorldSet) -> WorldSet {
        let mut out = WorldSet::empty(self.len());
        for x in xs {
            out.union_with(&self.up[x]);
        }
        out
    }

    pub fn is_upset(&self, xs: &WorldSet) -> bool {
        self.up_closure(xs) == *xs
    }

    /// The `<=`-minimal members of `xs`.
    pub fn minimal(&self, xs: &WorldSet) -> WorldSet {
        WorldSet::from_indices(
            self.len(),
            xs.iter().filter(|&x| xs.iter().all(|y| y == x || !self.leq(y, x))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn covers_are_closed_transitively() {
        let p = Poset::from_covers(names(&["a", "b", "c"]), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert_eq!(p, Poset::chain(names(&["a", "b", "c"])));
    }

    #[test]
    fn cycles_are_rejected() {
        let err = Poset::from_covers(names(&["a", "b"]), &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, PosetError::NotAntisymmetric("a".into(), "b".into()));
    }

    #[test]
    fn matrix_laws_are_checked() {
        let m = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(matches!(
            Poset::from_matrix(names(&["a", "b", "c"]), &m),
            Err(PosetError::NotTransitive(..))
        ));
        let m = vec![vec![false]];
        assert!(matches!(Poset::from_matrix(names(&["a"]), &m), Err(PosetError::NotReflexive(_))));
    }

    #[test]
    fn minimal_elements() {
        let p = Poset::from_named_covers(names(&["a", "b", "c"]), &[("a", "b")]).unwrap();
        let all = WorldSet::full(3);
        assert_eq!(p.minimal(&all).to_vec(), vec![0, 2]);
        assert_eq!(p.up_closure(&WorldSet::singleton(3, 0)).to_vec(), vec![0, 1]);
    }
}
