//! Schubert-cell charts on products of Grassmannians.
//!
//! A cell at a vertex of dimension `d` is a pivot set `P` of size `e`. Points of
//! the cell are row-reduced `e x d` matrices `R` with `R[j][p_j] = 1`, zeros at the
//! other pivot columns and left of `p_j`, and a free parameter everywhere else.
//! The subspace is the row space of `R`; its columns in `d x e` form give a basis.

use num_traits::{One, Zero};

use super::poly::Poly;
use crate::dimvec::DimVector;
use crate::linalg::{QMatrix, Q};
use crate::rep::Representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    One,
    Var(usize),
}

/// Pivot pattern at every vertex plus the variable layout it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub pivots: Vec<Vec<usize>>,
    /// `rows[i][j][c]`: entry of `R_i` at row `j`, column `c`.
    pub rows: Vec<Vec<Vec<Entry>>>,
    /// Variables owned by each vertex, as a global index range.
    pub vars: Vec<std::ops::Range<usize>>,
    pub nvars: usize,
}

impl Cell {
    pub fn new(dims: &[usize], pivots: Vec<Vec<usize>>) -> Cell {
        let mut next = 0;
        let mut rows = Vec::with_capacity(dims.len());
        let mut vars = Vec::with_capacity(dims.len());
        for (i, ps) in pivots.iter().enumerate() {
            let start = next;
            let r: Vec<Vec<Entry>> = ps
                .iter()
                .map(|&p| {
                    (0..dims[i])
                        .map(|c| {
                            if c == p {
                                Entry::One
                            } else if c < p || ps.contains(&c) {
                                Entry::Zero
                            } else {
                                next += 1;
                                Entry::Var(next - 1)
                            }
                        })
                        .collect()
                })
                .collect();
            rows.push(r);
            vars.push(start..next);
        }
        Cell { pivots, rows, vars, nvars: next }
    }

    /// Basis of the subspace at vertex `i` (columns) for an assignment of all variables.
    pub fn basis_at(&self, i: usize, dim: usize, values: &[Q]) -> QMatrix {
        let e = self.pivots[i].len();
        let mut b = QMatrix::zeros(dim, e);
        for (j, row) in self.rows[i].iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                b[(c, j)] = match entry {
                    Entry::Zero => Q::zero(),
                    Entry::One => Q::one(),
                    Entry::Var(v) => values[*v].clone(),
                };
            }
        }
        b
    }

    fn entry_poly(&self, entry: Entry) -> Poly {
        match entry {
            Entry::Zero => Poly::zero(self.nvars),
            Entry::One => Poly::constant(self.nvars, Q::one()),
            Entry::Var(v) => Poly::var(self.nvars, v),
        }
    }

    /// Polynomial system `M(a) U(ta) ⊆ U(ha)` on this cell, zero polynomials dropped.
    pub fn invariance_equations(&self, m: &Representation) -> Vec<Poly> {
        let quiver = m.algebra().quiver();
        let mut eqs = Vec::new();
        for (a, arrow) in quiver.arrows().iter().enumerate() {
            let (t, h) = (arrow.tail, arrow.head);
            let mat = m.matrix(a);
            let hp = &self.pivots[h];
            for row in &self.rows[t] {
                // w = M(a) u for the basis vector u given by `row`.
                let w: Vec<Poly> = (0..mat.rows())
                    .map(|r| {
                        let mut acc = Poly::zero(self.nvars);
                        for (c, entry) in row.iter().enumerate() {
                            let coeff = &mat[(r, c)];
                            if coeff.is_zero() {
                                continue;
                            }
                            acc = acc.add(&self.entry_poly(*entry).scale(coeff));
                        }
                        acc
                    })
                    .collect();
                for c in (0..w.len()).filter(|c| !hp.contains(c)) {
                    let mut eq = w[c].clone();
                    for (k, &p) in hp.iter().enumerate() {
                        if let Entry::Var(_) = self.rows[h][k][c] {
                            eq = eq.sub(&w[p].mul(&self.entry_poly(self.rows[h][k][c])));
                        }
                    }
                    if !eq.is_zero() {
                        eqs.push(eq);
                    }
                }
            }
        }
        eqs
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All cells of `Π_i Gr(e_i, d_i)` in lexicographic order of pivot patterns;
/// the first one is the open cell.
pub fn cells(d: &DimVector, e: &DimVector) -> Vec<Cell> {
    let per_vertex: Vec<Vec<Vec<usize>>> = d.0.iter().zip(&e.0).map(|(&di, &ei)| combinations(di, ei)).collect();
    let mut patterns: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for choices in &per_vertex {
        patterns = patterns
            .into_iter()
            .flat_map(|p| {
                choices.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    patterns.into_iter().map(|p| Cell::new(&d.0, p)).collect()
}

pub fn cell_count(d: &DimVector, e: &DimVector) -> usize {
    d.0.iter().zip(&e.0).map(|(&di, &ei)| binomial(di, ei)).product()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
