use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Point};
use crate::tolerance::{DROP_WEIGHT, MERGE_RADIUS, NEGATIVE_GUARD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    /// Atoms are unit directions.
    Sphere,
    /// Atoms are points of Euclidean space.
    Point,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub loc: Point,
    #[serde(rename = "w")]
    pub weight: f64,
}

/// Finite atomic measure with canonically ordered, merged atoms.
///
/// Weights may be signed while polarization is in progress; [`finalize`]
/// enforces the nonnegativity contract at API boundaries.
///
/// [`finalize`]: DiscreteMeasure::finalize
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    kind: MeasureKind,
    dim: usize,
    atoms: Vec<Atom>,
}

/// Result of an atomwise comparison.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AtomwiseDiff {
    pub max_location_error: f64,
    pub max_weight_error: f64,
    /// Largest weight of an atom without a partner.
    pub max_unmatched_weight: f64,
}

impl DiscreteMeasure {
    pub fn zero(kind: MeasureKind, dim: usize) -> Self {
        DiscreteMeasure {
            kind,
            dim,
            atoms: Vec::new(),
        }
    }

    /// Canonicalizes: merges atoms closer than the merge radius and sorts them.
    pub fn from_atoms(kind: MeasureKind, dim: usize, atoms: Vec<Atom>) -> Self {
        let mut atoms = atoms;
        atoms.sort_by(|a, b| linalg::lex_cmp(&a.loc, &b.loc));
        // the radius is relative beyond the unit ball, as in `diff`
        let radius = |x: &[f64]| MERGE_RADIUS * linalg::norm(x).max(1.0);
        let widest = atoms.iter().map(|a| radius(&a.loc)).fold(MERGE_RADIUS, f64::max);
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            // Sorted by first coordinate, so only a trailing window can be in range.
            let mut hit = None;
            for (k, m) in merged.iter().enumerate().rev() {
                if a.loc[0] - m.loc[0] > widest {
                    break;
                }
                if linalg::dist(&a.loc, &m.loc) <= radius(&a.loc).max(radius(&m.loc)) {
                    hit = Some(k);
                    break;
                }
            }
            match hit {
                Some(k) => merged[k].weight += a.weight,
                None => merged.push(a),
            }
        }
        merged.sort_by(|a, b| linalg::lex_cmp(&a.loc, &b.loc));
        DiscreteMeasure {
            kind,
            dim,
            atoms: merged,
        }
    }

    pub fn dirac(kind: MeasureKind, loc: Point, weight: f64) -> Self {
        let dim = loc.len();
        Self::from_atoms(kind, dim, vec![Atom { loc, weight }])
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.atoms.iter().map(|a| f(&a.loc) * a.weight).sum()
    }

    /// Mass of the atoms whose location satisfies `pred`.
    pub fn mass_where(&self, pred: impl Fn(&[f64]) -> bool) -> f64 {
        self.atoms.iter().filter(|a| pred(&a.loc)).map(|a| a.weight).sum()
    }

    pub fn scaled(&self, c: f64) -> Self {
        DiscreteMeasure {
            kind: self.kind,
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    loc: a.loc.clone(),
                    weight: a.weight * c,
                })
                .collect(),
        }
    }

    /// Signed linear combination `sum_i c_i mu_i`.
    pub fn linear_combination(kind: MeasureKind, dim: usize, terms: &[(f64, &DiscreteMeasure)]) -> Self {
        let atoms = terms
            .iter()
            .flat_map(|(c, m)| {
                m.atoms.iter().map(move |a| Atom {
                    loc: a.loc.clone(),
                    weight: a.weight * c,
                })
            })
            .collect();
        Self::from_atoms(kind, dim, atoms)
    }

    pub fn add(&self, other: &DiscreteMeasure) -> Self {
        Self::linear_combination(self.kind, self.dim, &[(1.0, self), (1.0, other)])
    }

    /// Drops negligible weights and rejects significantly negative ones.
    pub fn finalize(self) -> Result<Self> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for a in self.atoms {
            if a.weight < -NEGATIVE_GUARD {
                return Err(Error::NegativeWeight {
                    weight: a.weight,
                    location: a.loc,
                });
            }
            if a.weight >= DROP_WEIGHT {
                atoms.push(a);
            }
        }
        Ok(DiscreteMeasure {
            kind: self.kind,
            dim: self.dim,
            atoms,
        })
    }

    /// Restriction to atoms whose location satisfies `pred`.
    pub fn restrict(&self, pred: impl Fn(&[f64]) -> bool) -> Self {
        DiscreteMeasure {
            kind: self.kind,
            dim: self.dim,
            atoms: self.atoms.iter().filter(|a| pred(&a.loc)).cloned().collect(),
        }
    }

    /// Pushforward under `f`, recanonicalized.
    pub fn map(&self, kind: MeasureKind, dim: usize, f: impl Fn(&[f64]) -> Point) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                loc: f(&a.loc),
                weight: a.weight,
            })
            .collect();
        Self::from_atoms(kind, dim, atoms)
    }

    /// Atomwise comparison by nearest unused partner.
    ///
    /// Location errors are relative to `max(1, |x|)`: atoms far from the
    /// origin come from nearly parallel pieces and carry proportionally
    /// larger absolute rounding.
    pub fn diff(&self, other: &DiscreteMeasure) -> AtomwiseDiff {
        let mut d = AtomwiseDiff::default();
        let mut used = vec![false; other.atoms.len()];
        for a in &self.atoms {
            let best = other
                .atoms
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, b)| (k, linalg::dist(&a.loc, &b.loc) / linalg::norm(&a.loc).max(1.0)))
                .min_by(|x, y| x.1.total_cmp(&y.1));
            match best {
                Some((k, dl)) if dl <= 1e-6 => {
                    used[k] = true;
                    let b = &other.atoms[k];
                    d.max_location_error = d.max_location_error.max(dl);
                    let excess = ((a.weight - b.weight).abs() - DROP_WEIGHT).max(0.0);
                    let rel = excess / a.weight.abs().max(b.weight.abs()).max(DROP_WEIGHT);
                    d.max_weight_error = d.max_weight_error.max(rel);
                }
                _ => d.max_unmatched_weight = d.max_unmatched_weight.max(a.weight.abs()),
            }
        }
        for (k, b) in other.atoms.iter().enumerate() {
            if !used[k] {
                d.max_unmatched_weight = d.max_unmatched_weight.max(b.weight.abs());
            }
        }
        d
    }

    /// True if both measures have matching atoms: locations within `loc_tol`
    /// (relative beyond the unit ball),
    /// weights within `rel_tol` relative, unmatched atoms lighter than `rel_tol`
    /// times the larger total mass.
    pub fn agrees_with(&self, other: &DiscreteMeasure, loc_tol: f64, rel_tol: f64) -> bool {
        let d = self.diff(other);
        let scale = self.total_mass().abs().max(other.total_mass().abs()).max(1.0);
        d.max_location_error <= loc_tol && d.max_weight_error <= rel_tol && d.max_unmatched_weight <= rel_tol * scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(loc: &[f64], w: f64) -> Atom {
        Atom {
            loc: loc.to_vec(),
            weight: w,
        }
    }

    #[test]
    fn merges_and_sorts() {
        let m = DiscreteMeasure::from_atoms(
            MeasureKind::Point,
            2,
            vec![atom(&[1.0, 0.0], 1.0), atom(&[0.0, 0.0], 2.0), atom(&[1.0, 1e-12], 0.5)],
        );
        assert_eq!(m.atoms().len(), 2);
        assert_eq!(m.atoms()[0].loc, vec![0.0, 0.0]);
        assert!((m.atoms()[1].weight - 1.5).abs() < 1e-15);
        assert!((m.total_mass() - 3.5).abs() < 1e-15);
    }

    #[test]
    fn cancellation_and_finalize() {
        let a = DiscreteMeasure::dirac(MeasureKind::Point, vec![0.0], 1.0);
        let b = DiscreteMeasure::dirac(MeasureKind::Point, vec![0.0], 1.0 - 1e-13);
        let d = DiscreteMeasure::linear_combination(MeasureKind::Point, 1, &[(1.0, &a), (-1.0, &b)]);
        assert!(d.finalize().unwrap().is_empty());
        let neg = DiscreteMeasure::dirac(MeasureKind::Point, vec![0.0], -1e-6);
        assert!(matches!(neg.finalize(), Err(Error::NegativeWeight { .. })));
    }

    #[test]
    fn agreement_check() {
        let a = DiscreteMeasure::dirac(MeasureKind::Point, vec![0.0, 1.0], 2.0);
        let b = DiscreteMeasure::dirac(MeasureKind::Point, vec![0.0, 1.0 + 1e-11], 2.0 + 1e-9);
        assert!(a.agrees_with(&b, 1e-9, 1e-8));
        let c = DiscreteMeasure::dirac(MeasureKind::Point, vec![0.0, 1.1], 2.0);
        assert!(!a.agrees_with(&c, 1e-9, 1e-8));
    }
}
