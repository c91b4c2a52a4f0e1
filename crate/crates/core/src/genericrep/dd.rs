//! Exact double description for cones `{x : E x = 0, A x ≤ 0}`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::linalg::{primitive_integer, sign, Echelon, Q};

/// Generators of a polyhedral cone: extreme rays plus a lineality basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    /// Primitive integer vectors, sorted ascending, no duplicates.
    pub rays: Vec<Vec<Q>>,
    /// Reduced echelon basis, each row scaled to a primitive integer vector.
    pub lineality: Vec<Vec<Q>>,
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn primitive(v: &[Q]) -> Vec<Q> {
    primitive_integer(v).into_iter().map(Q::from_integer).collect()
}

fn combine(a: &Q, x: &[Q], b: &Q, y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

struct Ray {
    v: Vec<Q>,
    tight: BTreeSet<usize>,
}

pub fn double_description(n: usize, equalities: &[Vec<Q>], inequalities: &[Vec<Q>]) -> Generators {
    // Coordinates on the solution space of the equalities.
    let basis: Vec<Vec<Q>> = if equalities.is_empty() {
        (0..n).map(|i| (0..n).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::zero() }).collect()).collect()
    } else {
        Echelon::of_rows(n, equalities.to_vec()).nullspace()
    };
    let k = basis.len();
    let to_y = |a: &[Q]| -> Vec<Q> { basis.iter().map(|b| dot(a, b)).collect() };

    let mut lineality: Vec<Vec<Q>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::zero() }).collect()).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: BTreeSet<usize> = BTreeSet::new();

    for (ci, a) in inequalities.iter().enumerate() {
        let c = to_y(a);
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        processed.insert(ci);
        if let Some(li) = lineality.iter().position(|l| !dot(&c, l).is_zero()) {
            let l = lineality.remove(li);
            let cl = dot(&c, &l);
            for other in lineality.iter_mut() {
                let f = dot(&c, other) / &cl;
                if !f.is_zero() {
                    *other = combine(&Q::from_integer(1.into()), other, &-f, &l);
                }
            }
            for r in rays.iter_mut() {
                let f = dot(&c, &r.v) / &cl;
                if !f.is_zero() {
                    r.v = primitive(&combine(&Q::from_integer(1.into()), &r.v, &-f, &l));
                }
                r.tight.insert(ci);
            }
            let dir = if cl.is_negative() { l } else { l.iter().map(|x| -x).collect() };
            // Tight on every earlier constraint, since it came from the lineality space.
            let mut tight = processed.clone();
            tight.remove(&ci);
            rays.push(Ray { v: primitive(&dir), tight });
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|r| dot(&c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| sign(&vals[i]) > 0).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.insert(ci);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| sign(&vals[i]) < 0).collect();
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: BTreeSet<usize> = rays[p].tight.intersection(&rays[q].tight).copied().collect();
                let adjacent = !(0..rays.len()).any(|r| r != p && r != q && common.is_subset(&rays[r].tight));
                if !adjacent {
                    continue;
                }
                // vals[p] * v_q - vals[q] * v_p lies on the hyperplane and inside the cone.
                let v = primitive(&combine(&vals[p], &rays[q].v, &-vals[q].clone(), &rays[p].v));
                let mut tight = common;
                tight.insert(ci);
                fresh.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            match sign(&vals[i]) {
                1 => {}
                0 => {
                    r.tight.insert(ci);
                    kept.push(r);
                }
                _ => kept.push(r),
            }
        }
        kept.extend(fresh);
        rays = kept;
    }

    let lift = |y: &[Q]| -> Vec<Q> {
        let mut x = vec![Q::zero(); n];
        for (coef, b) in y.iter().zip(&basis) {
            if coef.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += coef * bi;
            }
        }
        x
    };
    let mut out: Vec<Vec<Q>> = rays.iter().map(|r| primitive(&lift(&r.v))).collect();
    out.sort();
    out.dedup();
    let lin: Vec<Vec<Q>> = lineality.iter().map(|l| lift(l)).collect();
    let lin = Echelon::of_rows(n, lin).rows.iter().map(|r| primitive(r)).collect();
    Generators { rays: out, lineality: lin }
}
