use std::collections::BTreeMap;

use super::decomposition::check_flat;
use super::flats::{closure, cone_basis, Flat};
use super::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::linalg::matrix::{coordinates_in, rank_of_vectors};

/// The arrangement A_F in P(C^{n+1}/V(F)).
///
/// Forms of members of F vanish on V(F), so they are functionals on the quotient; they are
/// written in the basis of the row space formed by the first independent forms of F.
pub fn localization(a: &Arrangement, f: &Flat) -> Result<Arrangement> {
    check_flat(a, f)?;
    let dim = a.ambient_dim() + 1;
    let mut basis = Vec::new();
    for form in a.forms(&f.members) {
        let mut trial = basis.clone();
        trial.push(form.clone());
        if rank_of_vectors(&trial, dim) > basis.len() {
            basis.push(form);
        }
    }
    let hyperplanes = a
        .forms(&f.members)
        .into_iter()
        .map(|form| {
            let c = coordinates_in(&basis, &form).expect("form lies in the row space of F");
            Hyperplane::new(c)
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(basis.len() - 1, hyperplanes, Some(a.label_list(&f.members)))
}

/// The arrangement A^F in Z(F), with each restricted hyperplane tagged by its flat of A.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub arrangement: Arrangement,
    /// Hyperplanes of A (outside F) that restrict to each member.
    pub sources: Vec<Vec<usize>>,
    /// closure(F ∪ sources), the flat of A corresponding to each member.
    pub tags: Vec<Flat>,
}

pub fn restriction(a: &Arrangement, f: &Flat) -> Result<Restriction> {
    check_flat(a, f)?;
    let n = a.ambient_dim();
    if f.rank > n {
        return Err(Error::Flat(format!("rank {} exceeds {n}: Z(F) is empty", f.rank)));
    }
    let basis = cone_basis(a, &f.members);
    let mut groups: BTreeMap<Hyperplane, Vec<usize>> = BTreeMap::new();
    let mut order: Vec<Hyperplane> = Vec::new();
    for h in (0..a.len()).filter(|h| !f.contains(*h)) {
        let restricted: Vec<_> = basis.iter().map(|v| a.hyperplane(h).eval(v)).collect();
        let key = Hyperplane::new(restricted)?;
        let entry = groups.entry(key.clone()).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        entry.push(h);
    }
    let mut hyperplanes = Vec::new();
    let mut sources = Vec::new();
    let mut tags = Vec::new();
    let mut labels = Vec::new();
    for key in order {
        let src = groups.remove(&key).expect("grouped");
        let mut members = f.members.clone();
        members.extend(&src);
        members.sort_unstable();
        tags.push(closure(a, &members));
        labels.push(a.label_list(&src).join("+"));
        sources.push(src);
        hyperplanes.push(key);
    }
    let arrangement = Arrangement::new(n - f.rank, hyperplanes, Some(labels))?;
    Ok(Restriction {
        arrangement,
        sources,
        tags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::lattice::enumerate_lattice;

    #[test]
    fn localization_at_triple_point_gives_three_points() {
        let e3 = corpus::twin_triples().arrangement;
        let f1 = closure(&e3, &[0, 1]);
        let loc = localization(&e3, &f1).unwrap();
        assert_eq!(loc.ambient_dim(), 1);
        assert_eq!(loc.len(), 3);
        let e1 = corpus::generic3().arrangement;
        let loc = localization(&e1, &closure(&e1, &[0, 1])).unwrap();
        assert_eq!((loc.ambient_dim(), loc.len()), (1, 2));
        let e2 = corpus::pencil3().arrangement;
        let loc = localization(&e2, &closure(&e2, &[0, 1, 2])).unwrap();
        assert_eq!((loc.ambient_dim(), loc.len()), (1, 3));
    }

    #[test]
    fn restriction_to_the_shared_line() {
        let e3 = corpus::twin_triples().arrangement;
        let r = restriction(&e3, &closure(&e3, &[2])).unwrap();
        assert_eq!(r.arrangement.ambient_dim(), 1);
        assert_eq!(r.arrangement.len(), 2);
        let tags: Vec<Vec<usize>> = r.tags.iter().map(|t| t.members.clone()).collect();
        assert_eq!(tags, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(r.sources, vec![vec![0, 1], vec![3, 4]]);
    }

    #[test]
    fn restriction_of_generic_line() {
        let e1 = corpus::generic3().arrangement;
        let r = restriction(&e1, &closure(&e1, &[0])).unwrap();
        let tags: Vec<Vec<usize>> = r.tags.iter().map(|t| t.members.clone()).collect();
        assert_eq!(tags, vec![vec![0, 1], vec![0, 2]]);
        assert!(restriction(&e1, &closure(&e1, &[0, 1, 2])).is_err());
    }

    #[test]
    fn localization_lattice_matches_flats_below() {
        for inst in corpus::all() {
            let a = &inst.arrangement;
            let lattice = enumerate_lattice(a);
            for f in lattice.flats().iter().filter(|f| !f.is_empty()) {
                let loc = localization(a, f).unwrap();
                let sub = enumerate_lattice(&loc);
                let mut below: Vec<(usize, Vec<usize>)> = lattice
                    .flats()
                    .iter()
                    .filter(|g| g.is_subset_of(f))
                    .map(|g| {
                        let local: Vec<usize> = g.members.iter().map(|h| f.members.binary_search(h).unwrap()).collect();
                        (g.rank, local)
                    })
                    .collect();
                let mut got: Vec<(usize, Vec<usize>)> =
                    sub.flats().iter().map(|g| (g.rank, g.members.clone())).collect();
                below.sort();
                got.sort();
                assert_eq!(below, got, "{}: localization at {:?}", inst.name, f.members);
            }
        }
    }

    #[test]
    fn restriction_lattice_matches_flats_above() {
        for inst in corpus::all() {
            let a = &inst.arrangement;
            let lattice = enumerate_lattice(a);
            for f in lattice
                .flats()
                .iter()
                .filter(|f| !f.is_empty() && f.rank <= a.ambient_dim())
            {
                let r = restriction(a, f).unwrap();
                let sub = enumerate_lattice(&r.arrangement);
                let mut above: Vec<(usize, Vec<usize>)> = lattice
                    .flats()
                    .iter()
                    .filter(|g| f.is_subset_of(g))
                    .map(|g| (g.rank - f.rank, g.members.clone()))
                    .collect();
                let mut got: Vec<(usize, Vec<usize>)> = sub
                    .flats()
                    .iter()
                    .map(|g| {
                        let mut members = f.members.clone();
                        for &i in &g.members {
                            members.extend(&r.sources[i]);
                        }
                        members.sort_unstable();
                        (g.rank, members)
                    })
                    .collect();
                above.sort();
                got.sort();
                assert_eq!(above, got, "{}: restriction at {:?}", inst.name, f.members);
            }
        }
    }
}
