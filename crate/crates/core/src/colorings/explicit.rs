use super::ColoringError;
use crate::coloring::EdgeColoring;
use crate::constructions::{bose_coords, skolem_coords};
use crate::hole::{verify_hole, HoleCertificate};
use crate::system::{Construction, SteinerSystem, TripleSystem, TripleType};

/// Colors each triple with the first part it avoids.
///
/// Every color-`i` component then misses part `i`, so no component has more
/// than `n - a` vertices.
pub fn hole_coloring(
    system: &TripleSystem,
    hole: &HoleCertificate,
) -> Result<EdgeColoring, ColoringError> {
    if hole.k < 2 {
        return Err(ColoringError::InvalidHole(format!("{} parts", hole.k)));
    }
    match verify_hole(system, hole) {
        Ok(true) => {}
        Ok(false) => {
            return Err(ColoringError::InvalidHole(
                "a triple meets every part".into(),
            ))
        }
        Err(e) => return Err(ColoringError::InvalidHole(e.to_string())),
    }
    let owner = hole.part_of(system.n());
    let colors = system
        .triples()
        .iter()
        .map(|t| {
            let mut met = vec![false; hole.k];
            for v in t.vertices() {
                if let Some(p) = owner[v] {
                    met[p] = true;
                }
            }
            met.iter().position(|&m| !m).expect("verified hole")
        })
        .collect();
    Ok(EdgeColoring::new(system, hole.k, colors).expect("colors below k"))
}

/// Triples spread over three layers get the layer they miss; the vertical
/// triples `{(a,0), (a,1), (a,2)}` cycle through the colors by `a`.
fn layered_coloring(
    system: &SteinerSystem,
    construction: Construction,
    coords: impl Fn(usize) -> Option<(usize, usize)>,
) -> Result<EdgeColoring, ColoringError> {
    let name = construction.as_str();
    let labels = match system.labels() {
        Some(labels) if system.construction() == construction => labels,
        _ => return Err(ColoringError::MissingLabels(name)),
    };
    let mut colors = Vec::with_capacity(system.len());
    for (t, &label) in system.triples().iter().zip(labels) {
        let cells: Vec<(usize, usize)> = t.vertices().into_iter().filter_map(&coords).collect();
        let color = match label {
            TripleType::Type1 => cells[0].0 % 3,
            TripleType::Type2 | TripleType::Type3 => {
                let mut layers = [false; 3];
                for &(_, i) in &cells {
                    layers[i] = true;
                }
                layers
                    .iter()
                    .position(|&l| !l)
                    .ok_or(ColoringError::MissingLabels(name))?
            }
            TripleType::Untyped => return Err(ColoringError::MissingLabels(name)),
        };
        colors.push(color);
    }
    Ok(EdgeColoring::new(system, 3, colors).expect("three colors"))
}

/// Three-coloring of a Bose system; each color spans at most
/// `4k + 2 + ⌈(2k+1)/3⌉` vertices for `n = 6k + 3`.
pub fn bose_coloring(system: &SteinerSystem) -> Result<EdgeColoring, ColoringError> {
    layered_coloring(system, Construction::Bose, |v| Some(bose_coords(v)))
}

/// Three-coloring of a Skolem system; each color spans at most
/// `⌈k/3⌉ + 4k + 1` vertices for `n = 6k + 1`.
pub fn skolem_coloring(system: &SteinerSystem) -> Result<EdgeColoring, ColoringError> {
    layered_coloring(system, Construction::Skolem, skolem_coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{largest_mono_component, mono_components};
    use crate::constructions::{bose, fano, s9, skolem};
    use crate::search::{alpha_star, Certificate, SearchBudget};

    #[test]
    fn hole_coloring_on_s9() {
        let s = s9();
        let found = alpha_star(&s, 3, SearchBudget::default()).unwrap();
        let Certificate::Hole(hole) = found.certificate else {
            panic!("no hole certificate")
        };
        assert_eq!(hole.a, 2);
        let c = hole_coloring(&s, &hole).unwrap();
        assert!(largest_mono_component(&s, &c).size <= 7);
        let bad = HoleCertificate::from_parts(vec![vec![0], vec![1], vec![2]]);
        assert!(matches!(
            hole_coloring(&s, &bad),
            Err(ColoringError::InvalidHole(_))
        ));
    }

    #[test]
    fn hole_coloring_components_avoid_their_part() {
        let f = fano();
        // {0}, {1}, {2}: the line through 0 and 1 is {0, 1, 3}, so no line meets all three.
        let hole = HoleCertificate::from_parts(vec![vec![0], vec![1], vec![2]]);
        assert!(verify_hole(&f, &hole).unwrap());
        let c = hole_coloring(&f, &hole).unwrap();
        let set = mono_components(&f, &c);
        for (i, comps) in set.components.iter().enumerate() {
            for comp in comps {
                assert!(hole.parts[i].iter().all(|v| !comp.contains(v)));
            }
        }
        assert_eq!(largest_mono_component(&f, &c).size, 6);
    }

    #[test]
    fn layered_spans() {
        let c = bose_coloring(&bose(27).unwrap()).unwrap();
        let s = bose(27).unwrap();
        assert!(mono_components(&s, &c)
            .span_sizes()
            .iter()
            .all(|&x| x <= 21));
        let s = bose(9).unwrap();
        let c = bose_coloring(&s).unwrap();
        assert!(mono_components(&s, &c).span_sizes().iter().all(|&x| x <= 7));
        let s = skolem(19).unwrap();
        let c = skolem_coloring(&s).unwrap();
        assert!(mono_components(&s, &c)
            .span_sizes()
            .iter()
            .all(|&x| x <= 14));
        let s = skolem(7).unwrap();
        let c = skolem_coloring(&s).unwrap();
        assert!(mono_components(&s, &c).span_sizes().iter().all(|&x| x <= 6));
    }

    #[test]
    fn labels_required() {
        assert_eq!(
            bose_coloring(&fano()),
            Err(ColoringError::MissingLabels("bose"))
        );
        assert_eq!(
            skolem_coloring(&bose(9).unwrap()),
            Err(ColoringError::MissingLabels("skolem"))
        );
    }
}
