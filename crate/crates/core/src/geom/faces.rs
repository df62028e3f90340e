use std::collections::BTreeSet;

use crate::geom::polytope::Polytope;
use crate::linalg::{self, Point};

/// A face of a polytope, identified by its vertex set.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    /// Sorted indices into [`Polytope::vertices`].
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Indices of the facets containing this face (empty for the polytope itself).
    pub facets: Vec<usize>,
}

/// All faces of a polytope, grouped by dimension; `levels[dim P]` holds the polytope itself.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    levels: Vec<Vec<Face>>,
}

fn affine_dim(p: &Polytope, ids: &[usize]) -> usize {
    let v = p.vertices();
    let diffs: Vec<Point> = ids[1..].iter().map(|&i| linalg::sub(&v[i], &v[ids[0]])).collect();
    linalg::rank(&diffs, p.ambient_dim())
}

impl FaceLattice {
    pub(crate) fn build(p: &Polytope) -> Self {
        let d = p.dim();
        let all: Vec<usize> = (0..p.vertices().len()).collect();
        let facet_sets: Vec<&Vec<usize>> = p.facets().iter().map(|f| &f.vertices).collect();
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); d + 1];
        sets[d].insert(all);
        if d >= 1 {
            for f in &facet_sets {
                sets[d - 1].insert((*f).clone());
            }
        }
        for k in (2..d).rev() {
            let upper: Vec<Vec<usize>> = sets[k].iter().cloned().collect();
            for g in &upper {
                for f in &facet_sets {
                    let inter: Vec<usize> = g.iter().filter(|i| f.contains(i)).copied().collect();
                    if inter.len() < k || inter.len() == g.len() {
                        continue;
                    }
                    if affine_dim(p, &inter) == k - 1 {
                        sets[k - 1].insert(inter);
                    }
                }
            }
        }
        if d >= 2 {
            sets[0] = (0..p.vertices().len()).map(|i| vec![i]).collect();
        }
        let levels = sets
            .into_iter()
            .enumerate()
            .map(|(k, s)| {
                s.into_iter()
                    .map(|vertices| {
                        let facets = if k == d {
                            Vec::new()
                        } else {
                            facet_sets
                                .iter()
                                .enumerate()
                                .filter(|(_, f)| vertices.iter().all(|v| f.contains(v)))
                                .map(|(i, _)| i)
                                .collect()
                        };
                        Face {
                            vertices,
                            dim: k,
                            facets,
                        }
                    })
                    .collect()
            })
            .collect();
        FaceLattice { levels }
    }

    /// Faces of dimension `k`.
    pub fn of_dim(&self, k: usize) -> &[Face] {
        self.levels.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Every face including the polytope itself, by increasing dimension.
    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.levels.iter().flatten()
    }

    /// Number of proper faces of each dimension `0..dim P`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.levels.len() - 1;
        self.levels[..d].iter().map(|l| l.len()).collect()
    }
}

/// Face lattice of `p`.
pub fn faces(p: &Polytope) -> &FaceLattice {
    p.faces()
}
