//! Small algebras used throughout the examples and tests.

use std::sync::Arc;

use crate::linalg::q;
use crate::quiver::{BoundQuiverAlgebra, Quiver, Relation};

fn quiver(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    Quiver::new(
        vertices.iter().copied(),
        arrows.iter().map(|(a, t, h)| (a.to_string(), t.to_string(), h.to_string())),
    )
    .expect("catalog quiver is well formed")
}

/// `m` parallel arrows `1 -> 2`, named `a`, `b`, `c`, ... for `m <= 26`.
pub fn generalized_kronecker(m: usize) -> Arc<BoundQuiverAlgebra> {
    let names: Vec<String> = (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (n.as_str(), "1", "2")).collect();
    Arc::new(BoundQuiverAlgebra::path_algebra(quiver(&["1", "2"], &arrows)))
}

/// Kronecker quiver `K2`: arrows `a`, `b` from `1` to `2`.
pub fn kronecker() -> Arc<BoundQuiverAlgebra> {
    generalized_kronecker(2)
}

/// Extended Dynkin `D4~` in subspace orientation: center `0`, arms `1..4`, arrows `ai: i -> 0`.
pub fn dtilde4_subspace() -> Arc<BoundQuiverAlgebra> {
    Arc::new(BoundQuiverAlgebra::path_algebra(quiver(
        &["0", "1", "2", "3", "4"],
        &[("a1", "1", "0"), ("a2", "2", "0"), ("a3", "3", "0"), ("a4", "4", "0")],
    )))
}

/// Extended Dynkin `A2~` with the acyclic orientation `1 -> 2 -> 3`, `1 -> 3`.
pub fn atilde2() -> Arc<BoundQuiverAlgebra> {
    Arc::new(BoundQuiverAlgebra::path_algebra(quiver(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")],
    )))
}

/// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`.
pub fn dynkin_a(n: usize) -> Arc<BoundQuiverAlgebra> {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrow_names: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    let arrows: Vec<(&str, &str, &str)> =
        (0..n - 1).map(|i| (arrow_names[i].as_str(), names[i].as_str(), names[i + 1].as_str())).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    Arc::new(BoundQuiverAlgebra::path_algebra(quiver(&vs, &arrows)))
}

/// Dynkin `D4` in subspace orientation: center `0`, arms `1..3`.
pub fn dynkin_d4() -> Arc<BoundQuiverAlgebra> {
    Arc::new(BoundQuiverAlgebra::path_algebra(quiver(
        &["0", "1", "2", "3"],
        &[("a1", "1", "0"), ("a2", "2", "0"), ("a3", "3", "0")],
    )))
}

/// Commutative square `1 -a-> 2 -b-> 4`, `1 -c-> 3 -d-> 4` with `ab = cd`; global dimension 2.
pub fn commutative_square() -> Arc<BoundQuiverAlgebra> {
    let qv = quiver(
        &["1", "2", "3", "4"],
        &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
    );
    let (a, b, c, d) = (
        qv.arrow_index("a").unwrap(),
        qv.arrow_index("b").unwrap(),
        qv.arrow_index("c").unwrap(),
        qv.arrow_index("d").unwrap(),
    );
    let rel = Relation::new(&qv, 0, vec![(q(1), vec![a, b]), (q(-1), vec![c, d])]).unwrap();
    Arc::new(BoundQuiverAlgebra::new(qv, vec![rel], Some(2)))
}

/// Canonical algebra of type `(2,2,2)`: source `0`, middle vertices `1..3`, sink `w`,
/// arrows `ai: 0 -> i`, `bi: i -> w`, one relation `b1 a1 + b2 a2 + b3 a3 = 0`.
/// Tame concealed of type `D4~`, global dimension 2.
pub fn canonical_222() -> Arc<BoundQuiverAlgebra> {
    let qv = quiver(
        &["0", "1", "2", "3", "w"],
        &[
            ("a1", "0", "1"),
            ("a2", "0", "2"),
            ("a3", "0", "3"),
            ("b1", "1", "w"),
            ("b2", "2", "w"),
            ("b3", "3", "w"),
        ],
    );
    let terms = (1..=3)
        .map(|i| {
            let a = qv.arrow_index(&format!("a{i}")).unwrap();
            let b = qv.arrow_index(&format!("b{i}")).unwrap();
            (q(1), vec![a, b])
        })
        .collect();
    let rel = Relation::new(&qv, 0, terms).unwrap();
    Arc::new(BoundQuiverAlgebra::new(qv, vec![rel], Some(2)))
}
