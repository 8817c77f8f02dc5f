use super::flats::{closure, enumerate_lattice, Flat};
use super::Arrangement;
use crate::error::{Error, Result};

/// Irreducible components for every flat of a lattice sorted by rank.
///
/// A nonempty flat is reducible exactly when the maximal irreducible flats strictly
/// below it partition it with additive ranks; those are then its components.
pub(crate) fn decompose_all(flats: &[Flat]) -> Vec<Vec<usize>> {
    let mut components: Vec<Vec<usize>> = Vec::with_capacity(flats.len());
    for (idx, f) in flats.iter().enumerate() {
        if f.is_empty() {
            components.push(Vec::new());
            continue;
        }
        let below: Vec<usize> = (0..idx)
            .filter(|&j| components[j].len() == 1 && flats[j].len() < f.len() && flats[j].is_subset_of(f))
            .collect();
        let maximal: Vec<usize> = below
            .iter()
            .copied()
            .filter(|&j| {
                !below
                    .iter()
                    .any(|&k| k != j && flats[k].len() > flats[j].len() && flats[j].is_subset_of(&flats[k]))
            })
            .collect();
        let total: usize = maximal.iter().map(|&j| flats[j].len()).sum();
        let rank_sum: usize = maximal.iter().map(|&j| flats[j].rank).sum();
        // Maximal members cover f disjointly iff their sizes add up and every member is hit.
        let covers = total == f.len() && f.members.iter().all(|h| maximal.iter().any(|&j| flats[j].contains(*h)));
        if maximal.len() >= 2 && covers && rank_sum == f.rank {
            components.push(maximal);
        } else {
            components.push(vec![idx]);
        }
    }
    components
}

pub(crate) fn check_flat(a: &Arrangement, f: &Flat) -> Result<()> {
    for &h in &f.members {
        a.check_index(h)?;
    }
    if f.is_empty() {
        return Err(Error::Flat("empty flat has no irreducible decomposition".into()));
    }
    let c = closure(a, &f.members);
    if c.members != f.members || c.rank != f.rank {
        return Err(Error::Flat(format!(
            "{:?} is not a flat (closure is {:?})",
            a.label_list(&f.members),
            a.label_list(&c.members)
        )));
    }
    Ok(())
}

/// The unique partition of a nonempty flat into irreducible flats with additive ranks.
pub fn irreducible_decomposition(a: &Arrangement, f: &Flat) -> Result<Vec<Flat>> {
    check_flat(a, f)?;
    let lattice = enumerate_lattice(a);
    let idx = lattice.index_of(&f.members).expect("a closed set is in the lattice");
    Ok(lattice
        .components(idx)
        .iter()
        .map(|&j| lattice.flat(j).clone())
        .collect())
}

pub fn is_irreducible(a: &Arrangement, f: &Flat) -> Result<bool> {
    Ok(irreducible_decomposition(a, f)?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn generic_rank_two_flat_splits() {
        let e1 = corpus::generic3().arrangement;
        let f = closure(&e1, &[0, 1]);
        let parts = irreducible_decomposition(&e1, &f).unwrap();
        assert_eq!(
            parts,
            vec![
                Flat {
                    members: vec![0],
                    rank: 1
                },
                Flat {
                    members: vec![1],
                    rank: 1
                }
            ]
        );
    }

    #[test]
    fn pencil_and_top_flats_are_irreducible() {
        let e2 = corpus::pencil3().arrangement;
        let top = closure(&e2, &[0, 1, 2]);
        assert_eq!(irreducible_decomposition(&e2, &top).unwrap(), vec![top]);
        let e3 = corpus::twin_triples().arrangement;
        let top = closure(&e3, &[0, 1, 2, 3, 4]);
        assert_eq!(top.rank, 3);
        assert_eq!(irreducible_decomposition(&e3, &top).unwrap(), vec![top]);
    }

    #[test]
    fn generic_top_flat_splits_into_three() {
        let e1 = corpus::generic3().arrangement;
        let top = closure(&e1, &[0, 1, 2]);
        assert_eq!(irreducible_decomposition(&e1, &top).unwrap().len(), 3);
    }

    #[test]
    fn rejects_empty_and_non_flats() {
        let e3 = corpus::twin_triples().arrangement;
        assert!(irreducible_decomposition(&e3, &Flat::empty()).is_err());
        let not_closed = Flat {
            members: vec![0, 1],
            rank: 2,
        };
        assert!(irreducible_decomposition(&e3, &not_closed).is_err());
    }
}
