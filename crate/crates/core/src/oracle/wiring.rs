use std::collections::BTreeMap;

use num_traits::Zero;

use crate::constructions::AffineHyperplane;
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// A multiple crossing: the wires at positions `start..start + lines.len()` reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub x: Rational,
    pub start: usize,
    /// Lines through the vertex, top to bottom just before it.
    pub lines: Vec<usize>,
}

impl Vertex {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

/// Sweep record of a real affine line arrangement after the shear X = u1 + t u2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    pub shear: Rational,
    /// Line indices top to bottom left of every vertex.
    pub wires: Vec<usize>,
    pub vertices: Vec<Vertex>,
    /// Line indices top to bottom right of every vertex.
    pub final_order: Vec<usize>,
}

/// Slope and intercept of Y = s X + d for a u1 + b u2 + c = 0 after the shear, if not vertical.
fn sheared(h: &AffineHyperplane, t: &Rational) -> Option<(Rational, Rational)> {
    let (a, b) = (&h.coeffs[0], &h.coeffs[1]);
    let y = b - a * t;
    if y.is_zero() {
        return None;
    }
    Some((-a / &y, -&h.constant / &y))
}

/// Distinct intersection points, each with the lines through it, in (u1, u2) coordinates.
fn intersection_points(lines: &[AffineHyperplane]) -> BTreeMap<(Rational, Rational), Vec<usize>> {
    let mut points: BTreeMap<(Rational, Rational), Vec<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a1, b1, c1) = (&lines[i].coeffs[0], &lines[i].coeffs[1], &lines[i].constant);
            let (a2, b2, c2) = (&lines[j].coeffs[0], &lines[j].coeffs[1], &lines[j].constant);
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let p = ((b1 * c2 - b2 * c1) / &det, (a2 * c1 - a1 * c2) / &det);
            let entry = points.entry(p).or_default();
            for k in [i, j] {
                if !entry.contains(&k) {
                    entry.push(k);
                }
            }
        }
    }
    points
}

fn shear_is_valid(lines: &[AffineHyperplane], points: &[(Rational, Rational)], t: &Rational) -> bool {
    if lines.iter().any(|h| sheared(h, t).is_none()) {
        return false;
    }
    let mut xs: Vec<Rational> = points.iter().map(|(p1, p2)| p1 + t * p2).collect();
    xs.sort();
    xs.windows(2).all(|w| w[0] != w[1])
}

/// First admissible shear among 0, 1, -1, 2, -2, ...
fn choose_shear(lines: &[AffineHyperplane], points: &[(Rational, Rational)]) -> Rational {
    (0i64..)
        .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
        .map(|k| Rational::from_integer(k.into()))
        .find(|t| shear_is_valid(lines, points, t))
        .expect("only finitely many shears are bad")
}

pub fn wiring_diagram(lines: &[AffineHyperplane], shear: Option<Rational>) -> Result<WiringDiagram> {
    if let Some(h) = lines.iter().find(|h| h.coeffs.len() != 2) {
        return Err(Error::Oracle(format!(
            "expected affine lines in the plane, got dimension {}",
            h.coeffs.len()
        )));
    }
    let points = intersection_points(lines);
    let coords: Vec<(Rational, Rational)> = points.keys().cloned().collect();
    let t = match shear {
        Some(t) if shear_is_valid(lines, &coords, &t) => t,
        Some(_) => {
            return Err(Error::Oracle(
                "shear makes a line vertical or merges vertex abscissae".into(),
            ))
        }
        None => choose_shear(lines, &coords),
    };
    let sd: Vec<(Rational, Rational)> = lines.iter().map(|h| sheared(h, &t).expect("validated")).collect();
    let mut wires: Vec<usize> = (0..lines.len()).collect();
    wires.sort_by(|&i, &j| sd[i].0.cmp(&sd[j].0).then(sd[j].1.cmp(&sd[i].1)));
    let mut located: Vec<(Rational, Vec<usize>)> =
        points.into_iter().map(|((p1, p2), ls)| (p1 + &t * p2, ls)).collect();
    located.sort_by(|a, b| a.0.cmp(&b.0));
    let mut order = wires.clone();
    let mut vertices = Vec::with_capacity(located.len());
    for (x, ls) in located {
        let mut pos: Vec<usize> = ls
            .iter()
            .map(|l| order.iter().position(|w| w == l).expect("wire present"))
            .collect();
        pos.sort_unstable();
        let start = pos[0];
        if pos.iter().enumerate().any(|(k, &p)| p != start + k) {
            return Err(Error::Oracle("vertex wires are not consecutive".into()));
        }
        let k = pos.len();
        vertices.push(Vertex {
            x,
            start,
            lines: order[start..start + k].to_vec(),
        });
        order[start..start + k].reverse();
    }
    Ok(WiringDiagram {
        shear: t,
        wires,
        vertices,
        final_order: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::decone;
    use crate::corpus;

    fn diagram(inst: &corpus::Instance, inf: usize) -> WiringDiagram {
        wiring_diagram(&decone(&inst.arrangement, inf).unwrap().hyperplanes, None).unwrap()
    }

    #[test]
    fn corpus_diagrams() {
        let d = diagram(&corpus::generic3(), 2);
        assert_eq!((d.wires.len(), d.vertices.len()), (2, 1));
        assert_eq!(d.vertices[0].multiplicity(), 2);
        let d = diagram(&corpus::pencil3(), 2);
        assert_eq!((d.wires.len(), d.vertices.len()), (2, 0));
        let d = diagram(&corpus::twin_triples(), 2);
        assert_eq!(d.wires.len(), 4);
        assert_eq!(
            d.vertices.iter().map(Vertex::multiplicity).collect::<Vec<_>>(),
            vec![2; 4]
        );
    }

    #[test]
    fn crossings_match_pair_count() {
        for inst in corpus::all() {
            for inf in 0..inst.arrangement.len() {
                let aff = decone(&inst.arrangement, inf).unwrap();
                let d = wiring_diagram(&aff.hyperplanes, None).unwrap();
                let pairs: usize = d
                    .vertices
                    .iter()
                    .map(|v| v.multiplicity() * (v.multiplicity() - 1) / 2)
                    .sum();
                let mut crossing = 0;
                for i in 0..aff.hyperplanes.len() {
                    for j in i + 1..aff.hyperplanes.len() {
                        let (h1, h2) = (&aff.hyperplanes[i], &aff.hyperplanes[j]);
                        let det = &h1.coeffs[0] * &h2.coeffs[1] - &h2.coeffs[0] * &h1.coeffs[1];
                        crossing += usize::from(!det.is_zero());
                    }
                }
                assert_eq!(pairs, crossing);
                let mut order = d.wires.clone();
                for v in &d.vertices {
                    order[v.start..v.start + v.multiplicity()].reverse();
                }
                assert_eq!(order, d.final_order);
            }
        }
    }

    #[test]
    fn bad_shear_rejected() {
        let aff = decone(&corpus::generic3().arrangement, 2).unwrap();
        // u1 = 0 is vertical exactly when t = 0.
        let vertical = aff.hyperplanes.iter().find(|h| h.coeffs[1].is_zero()).unwrap();
        let t = &vertical.coeffs[1] / &vertical.coeffs[0];
        assert!(wiring_diagram(&aff.hyperplanes, Some(t)).is_err());
    }
}
