use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use super::decomposition::decompose_all;
use super::Arrangement;
use crate::linalg::matrix::{nullspace, rank_of_vectors};
use crate::linalg::{RatMatrix, Rational};

/// A flat: the set of all hyperplanes containing a common intersection, as sorted indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    pub members: Vec<usize>,
    pub rank: usize,
}

impl Flat {
    pub fn empty() -> Self {
        Flat {
            members: Vec::new(),
            rank: 0,
        }
    }

    pub fn contains(&self, h: usize) -> bool {
        self.members.binary_search(&h).is_ok()
    }

    pub fn is_subset_of(&self, other: &Flat) -> bool {
        self.members.iter().all(|&h| other.contains(h))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Flats are ordered by rank, then lexicographically by members.
impl Ord for Flat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rank, &self.members).cmp(&(other.rank, &other.members))
    }
}

/// r(S) = codim Z(S): the rank of the coefficient matrix of S.
pub fn rank_of(a: &Arrangement, members: &[usize]) -> usize {
    rank_of_vectors(&a.forms(members), a.ambient_dim() + 1)
}

/// Basis of the cone V(S) = common zero set of the forms of S in C^{n+1}.
pub(crate) fn cone_basis(a: &Arrangement, members: &[usize]) -> Vec<Vec<Rational>> {
    let dim = a.ambient_dim() + 1;
    let m = RatMatrix::from_rows(&a.forms(members), dim).expect("forms have length n+1");
    nullspace(&m)
}

/// Smallest flat containing `members`. Panics if an index is out of range.
pub fn closure(a: &Arrangement, members: &[usize]) -> Flat {
    let basis = cone_basis(a, members);
    let rank = a.ambient_dim() + 1 - basis.len();
    let members = (0..a.len())
        .filter(|&i| {
            let h = a.hyperplane(i);
            basis.iter().all(|v| h.eval(v).is_zero())
        })
        .collect();
    Flat { members, rank }
}

/// All flats of an arrangement with their containment order and irreducible decompositions.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    flats: Vec<Flat>,
    index: HashMap<Vec<usize>, usize>,
    components: Vec<Vec<usize>>,
}

/// Breadth-first closure of unions, one rank at a time, starting from the singletons.
pub fn enumerate_lattice(a: &Arrangement) -> IntersectionLattice {
    let mut seen: BTreeSet<Flat> = BTreeSet::new();
    seen.insert(Flat::empty());
    let mut frontier = vec![Flat::empty()];
    while !frontier.is_empty() {
        let mut next: BTreeSet<Flat> = BTreeSet::new();
        for f in &frontier {
            for h in 0..a.len() {
                if f.contains(h) {
                    continue;
                }
                let mut members = f.members.clone();
                members.push(h);
                members.sort_unstable();
                let g = closure(a, &members);
                if !seen.contains(&g) {
                    next.insert(g);
                }
            }
        }
        seen.extend(next.iter().cloned());
        frontier = next.into_iter().collect();
    }
    IntersectionLattice::from_flats(seen.into_iter().collect())
}

impl IntersectionLattice {
    fn from_flats(flats: Vec<Flat>) -> Self {
        let index = flats.iter().enumerate().map(|(i, f)| (f.members.clone(), i)).collect();
        let components = decompose_all(&flats);
        IntersectionLattice {
            flats,
            index,
            components,
        }
    }

    /// All flats, sorted by rank then members.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, idx: usize) -> &Flat {
        &self.flats[idx]
    }

    pub fn index_of(&self, members: &[usize]) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn max_rank(&self) -> usize {
        self.flats.last().map_or(0, |f| f.rank)
    }

    pub fn of_rank(&self, rank: usize) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(move |f| f.rank == rank)
    }

    /// Flats grouped by rank, index = rank.
    pub fn by_rank(&self) -> Vec<Vec<&Flat>> {
        let mut out = vec![Vec::new(); self.max_rank() + 1];
        for f in &self.flats {
            out[f.rank].push(f);
        }
        out
    }

    /// The closure of the whole arrangement.
    pub fn top(&self) -> &Flat {
        self.flats.last().expect("lattice contains the empty flat")
    }

    /// Containment of flats given by index.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.flats[a].is_subset_of(&self.flats[b])
    }

    /// Indices of the irreducible components of the flat at `idx` (empty for the empty flat).
    pub fn components(&self, idx: usize) -> &[usize] {
        &self.components[idx]
    }

    pub fn is_irreducible(&self, idx: usize) -> bool {
        self.components[idx].len() == 1
    }

    pub fn irreducible_flats(&self) -> impl Iterator<Item = &Flat> {
        (0..self.flats.len())
            .filter(|&i| self.is_irreducible(i))
            .map(|i| &self.flats[i])
    }
}
