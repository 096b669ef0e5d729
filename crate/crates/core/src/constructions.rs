//! Explicit optimal orderings for star x star and path x star products.
//!
//! Vertices follow the usual naming: the path is `x_1..x_m` (stored as
//! `0..m-1`), a star has hub `x_0` / `y_0` (stored as `0`) and leaves
//! `1..=n`. Every table is checked for bijectivity after it is filled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;
use crate::product::{ProductGraph, ProductVertex};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    StarStar,
    PathStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

impl FamilyParams {
    pub fn new(family: Family, m: usize, n: usize) -> Result<Self> {
        let params = Self { family, m, n };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::StarStar if self.n < 3 || self.m < self.n => Err(Error::BadParams(format!(
                "star x star needs m >= n >= 3, got m={} n={}",
                self.m, self.n
            ))),
            Family::PathStar if self.m < 3 || self.n < 3 => Err(Error::BadParams(format!(
                "path x star needs m, n >= 3, got m={} n={}",
                self.m, self.n
            ))),
            _ => Ok(()),
        }
    }

    /// The two factor trees.
    pub fn trees(&self) -> Result<(Tree, Tree)> {
        self.validate()?;
        let first = match self.family {
            Family::StarStar => Tree::star(self.m)?,
            Family::PathStar => Tree::path(self.m)?,
        };
        Ok((first, Tree::star(self.n)?))
    }

    pub fn graph(&self) -> Result<ProductGraph> {
        let (t1, t2) = self.trees()?;
        ProductGraph::new(t1, t2)
    }
}

/// A product together with one of its vertex orderings.
#[derive(Debug, Clone)]
pub struct Construction {
    graph: ProductGraph,
    sequence: Vec<ProductVertex>,
}

impl Construction {
    fn from_positions(graph: ProductGraph, placed: Vec<(usize, ProductVertex)>) -> Result<Self> {
        let p = graph.order();
        let mut slots: Vec<Option<ProductVertex>> = vec![None; p];
        for (t, z) in placed {
            let slot = slots.get_mut(t).ok_or_else(|| {
                Error::Construction(format!("{z} placed at {t}, outside 0..{p}"))
            })?;
            if let Some(prev) = slot.replace(z) {
                return Err(Error::Construction(format!(
                    "{prev} and {z} both placed at {t}"
                )));
            }
        }
        let sequence = slots
            .into_iter()
            .enumerate()
            .map(|(t, z)| z.ok_or_else(|| Error::Construction(format!("position {t} left empty"))))
            .collect::<Result<Vec<_>>>()?;
        VertexOrdering::new(&graph, sequence.clone())
            .map_err(|e| Error::Construction(e.to_string()))?;
        Ok(Self { graph, sequence })
    }

    pub fn graph(&self) -> &ProductGraph {
        &self.graph
    }

    pub fn sequence(&self) -> &[ProductVertex] {
        &self.sequence
    }

    pub fn ordering(&self) -> VertexOrdering<'_> {
        VertexOrdering::new(&self.graph, self.sequence.clone())
            .expect("checked when the construction was built")
    }
}

pub fn construct(params: FamilyParams) -> Result<Construction> {
    match params.family {
        Family::StarStar => star_star_ordering(params.m, params.n),
        Family::PathStar => path_star_ordering(params.m, params.n),
    }
}

/// `(x_i, y_j)` goes to position `(i-j)(n+1)+j` when `i >= j` and to
/// `(m+2+i-j)(n+1)-i-1` otherwise.
pub fn star_star_ordering(m: usize, n: usize) -> Result<Construction> {
    let params = FamilyParams::new(Family::StarStar, m, n)?;
    let graph = params.graph()?;
    let (m, n) = (m as i64, n as i64);
    let mut placed = Vec::with_capacity(graph.order());
    for i in 0..=m {
        for j in 0..=n {
            let t = if i >= j {
                (i - j) * (n + 1) + j
            } else {
                (m + 2 + i - j) * (n + 1) - i - 1
            };
            placed.push((t as usize, ProductVertex::new(i as usize, j as usize)));
        }
    }
    Construction::from_positions(graph, placed)
}

pub fn path_star_ordering(m: usize, n: usize) -> Result<Construction> {
    let params = FamilyParams::new(Family::PathStar, m, n)?;
    let graph = params.graph()?;
    let positions = if m % 2 == 0 {
        path_star_even(m, n)
    } else if n == 3 {
        path_star_odd_three_leaves(m)
    } else {
        path_star_odd(m, n)
    };
    let placed = positions
        .into_iter()
        .map(|(t, i, j)| (t, ProductVertex::new(i - 1, j)))
        .collect();
    Construction::from_positions(graph, placed)
}

/// Triples `(t, i, j)` with `i` 1-indexed along the path.
type Positions = Vec<(usize, usize, usize)>;

fn path_star_odd(m: usize, n: usize) -> Positions {
    let mid = (m + 1) / 2;
    let q = n / 3;
    let mut out = Vec::with_capacity(m * (n + 1));
    // The three columns x_1, x_mid, x_m, by n mod 3.
    for i in [1, mid, m] {
        for j in 0..=n {
            let r = j % 3;
            let (first, centre, last) = (i == 1, i == mid, i == m);
            let t = match n % 3 {
                0 => {
                    if first && j == 0 {
                        3 * n + 2
                    } else if (first && j > 0 && r == 0) || (last && r == 2) {
                        n + j - 1
                    } else if (first && r == 1) || (centre && r == 2) {
                        2 * n + j + 1
                    } else if (first && r == 2) || (centre && r == 0) || (last && r == 1) {
                        j
                    } else if centre && r == 1 {
                        n + j + 2
                    } else if last && j == 0 {
                        3 * n + 1
                    } else {
                        // last && j > 0 && r == 0
                        2 * n + j - 2
                    }
                }
                1 => {
                    if first && j == 0 {
                        3 * n + 2
                    } else if (first && j > 0 && r == 0) || (centre && r == 1) || (last && r == 2) {
                        6 * q + j + 2
                    } else if (first && r == 1) || (centre && r == 2) || (last && j > 0 && r == 0) {
                        3 * q + j + 1
                    } else if (first && r == 2) || (centre && r == 0) || (last && r == 1) {
                        j
                    } else {
                        // last && j == 0
                        3 * n + 1
                    }
                }
                _ => {
                    if first && j == 0 {
                        3 * n + 2
                    } else if (first && j > 0 && r == 0) || (centre && r == 1) || (last && r == 2) {
                        3 * q + j + 2
                    } else if (first && r == 1) || (centre && r == 2) || (last && j > 0 && r == 0) {
                        6 * q + j + 4
                    } else if (first && r == 2) || (centre && r == 0) || (last && r == 1) {
                        j
                    } else {
                        3 * n + 1
                    }
                }
            };
            out.push((t, i, j));
        }
    }
    // The remaining columns.
    let blk = n + 1;
    for i in (2..m).filter(|&i| i != mid) {
        for j in 0..=n {
            let t = if i < mid {
                if j == 0 {
                    (2 * i + 1) * blk - 1
                } else if j % 2 == 0 {
                    3 * blk + 2 * (blk / 2) + 2 * (i - 2) * blk + j - 1
                } else {
                    3 * blk + 2 * (i - 2) * blk + j
                }
            } else if j == 0 {
                (2 * i - m) * blk
            } else if j % 2 == 0 {
                3 * blk + (2 * i - m - 3) * blk + j
            } else {
                3 * blk + 2 * (n / 2) + (2 * i - m - 3) * blk + j + 1
            };
            out.push((t, i, j));
        }
    }
    out
}

fn path_star_even(m: usize, n: usize) -> Positions {
    let mid = m / 2;
    let blk = n + 1;
    let mut out = Vec::with_capacity(m * blk);
    for i in 1..=m {
        for j in 0..=n {
            let t = if i <= mid {
                if j % 2 == 1 {
                    2 * (mid - i) * blk + 2 * (n / 2) + j + 1
                } else {
                    2 * (mid - i) * blk + j
                }
            } else if j % 2 == 1 {
                2 * (m - i) * blk + j
            } else if j != 0 {
                2 * (m - i) * blk + 2 * (blk / 2) + j - 1
            } else {
                2 * (m - i + 1) * blk - 1
            };
            out.push((t, i, j));
        }
    }
    out
}

/// Odd `m` with three leaves, where the subcase tables above do not reach
/// the closed form.
///
/// Take the cyclic sequence `C_t = (x_s, y_{t mod 4})` over `t` in `0..4m`,
/// with `s - 1 = (mid - 1) + mid * t mod m`. Since `2 mid = m + 1`, the path
/// coordinate moves by half the path each step and alternates sides of the
/// centre. Cutting `C` into blocks and reordering them gives the ordering.
fn path_star_odd_three_leaves(m: usize) -> Positions {
    let p = 4 * m;
    let mid = (m + 1) / 2;
    let cyclic = |t: usize| ((mid - 1 + mid * t) % m + 1, t % 4);
    let blocks: Vec<(usize, usize)> = if m == 3 {
        vec![(0, 4), (10, 11), (9, 10), (11, 12), (4, 9)]
    } else if m % 4 == 1 {
        vec![(0, m), (p - m + 1, p), (m, p - m + 1)]
    } else {
        vec![
            (0, m + 1),
            (3 * m + 4, p),
            (3 * m, 3 * m + 4),
            (2 * m - 1, 3 * m),
            (m + 1, 2 * m - 1),
        ]
    };
    blocks
        .into_iter()
        .flat_map(|(a, b)| a..b)
        .enumerate()
        .map(|(pos, t)| {
            let (i, j) = cyclic(t);
            (pos, i, j)
        })
        .collect()
}

/// The radio number of the family, `mn + 3(m+n) + 1` for star x star and
/// `(m^2(n+1) + 2m + n - 1)/2` or `(m^2(n+1) + 2(m-1))/2` for path x star
/// with odd or even `m`.
pub fn closed_form_rn(params: FamilyParams) -> Result<i64> {
    params.validate()?;
    let (m, n) = (params.m as i64, params.n as i64);
    Ok(match params.family {
        Family::StarStar => m * n + 3 * (m + n) + 1,
        Family::PathStar if m % 2 == 1 => (m * m * (n + 1) + 2 * m + n - 1) / 2,
        Family::PathStar => (m * m * (n + 1) + 2 * (m - 1)) / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{greedy_label, verify};

    fn span_of(c: &Construction) -> i64 {
        let lab = greedy_label(&c.ordering()).unwrap();
        assert!(verify(c.graph(), &lab).unwrap().is_empty());
        lab.span()
    }

    #[test]
    fn star_star_positions() {
        let c = star_star_ordering(6, 4).unwrap();
        let s = c.sequence();
        assert_eq!(s[0], ProductVertex::new(0, 0));
        assert_eq!(s[34], ProductVertex::new(0, 1));
        assert_eq!(s.len(), 35);
        let c4 = star_star_ordering(6, 4).unwrap();
        assert_eq!(c4.sequence()[2], ProductVertex::new(2, 2));
        assert_eq!(span_of(&star_star_ordering(3, 3).unwrap()), 28);
    }

    #[test]
    fn path_star_examples() {
        assert_eq!(span_of(&path_star_ordering(5, 3).unwrap()), 56);
        assert_eq!(span_of(&path_star_ordering(6, 5).unwrap()), 113);
        assert_eq!(span_of(&path_star_ordering(5, 4).unwrap()), 69);
    }

    #[test]
    fn closed_forms() {
        let f = |fam, m, n| closed_form_rn(FamilyParams { family: fam, m, n }).unwrap();
        assert_eq!(f(Family::StarStar, 3, 3), 28);
        assert_eq!(f(Family::PathStar, 3, 3), 22);
        assert_eq!(f(Family::PathStar, 4, 3), 35);
        assert_eq!(f(Family::PathStar, 5, 3), 56);
        assert_eq!(f(Family::PathStar, 6, 5), 113);
    }

    #[test]
    fn bad_params() {
        assert!(matches!(star_star_ordering(3, 4), Err(Error::BadParams(_))));
        assert!(matches!(star_star_ordering(2, 2), Err(Error::BadParams(_))));
        assert!(matches!(path_star_ordering(2, 3), Err(Error::BadParams(_))));
        assert!(matches!(path_star_ordering(3, 2), Err(Error::BadParams(_))));
        assert!(closed_form_rn(FamilyParams { family: Family::PathStar, m: 3, n: 1 }).is_err());
    }

    #[test]
    fn tables_are_bijective_across_range() {
        for m in 3..=15 {
            for n in 3..=15 {
                path_star_ordering(m, n).unwrap();
                if m >= n {
                    star_star_ordering(m, n).unwrap();
                }
            }
        }
    }
}
