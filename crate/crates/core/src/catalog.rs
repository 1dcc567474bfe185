//! Standard generalized Cartan matrices, with nodes named `1..=n`.

use crate::cartan::GeneralizedCartanMatrix;

fn numbered(rows: Vec<Vec<i64>>) -> GeneralizedCartanMatrix {
    let nodes = (1..=rows.len()).map(|i| i.to_string()).collect();
    GeneralizedCartanMatrix::validate(nodes, &rows).expect("catalog matrices are valid")
}

/// Type `A_n`: a path of `n` simply laced nodes.
pub fn type_a(n: usize) -> GeneralizedCartanMatrix {
    numbered(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Looks up a matrix by name: `A<n>`, `B2`, `G2`, `A1xA1`, `affine-A1`, or
/// `inf-A3` (the path `1 -inf- 2 --- 3`).
pub fn named(name: &str) -> Option<GeneralizedCartanMatrix> {
    let m = match name {
        "B2" => numbered(vec![vec![2, -2], vec![-1, 2]]),
        "G2" => numbered(vec![vec![2, -1], vec![-3, 2]]),
        "A1xA1" => numbered(vec![vec![2, 0], vec![0, 2]]),
        "affine-A1" => numbered(vec![vec![2, -2], vec![-2, 2]]),
        "inf-A3" => numbered(vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]]),
        _ => {
            let n: usize = name.strip_prefix('A')?.parse().ok()?;
            if n == 0 || n > 20 {
                return None;
            }
            type_a(n)
        }
    };
    Some(m)
}
