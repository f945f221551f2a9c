//! Kernels of homomorphisms between finite direct sums of cyclic groups.
//!
//! A group `Z/o_1 + ... + Z/o_r` (order `0` meaning `Z`) is handled by
//! lifting to `Z^r`; a kernel is then the lattice
//! `{x : A x ≡ 0 mod o_target}` modulo the source relations, computed with
//! unimodular column operations and a Hermite normal form.

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // Returns (g, s, t) with s a + t b = g >= 0.
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Integer basis of `{x in Z^cols : M x = 0}` for an `rows x cols` matrix.
fn integer_nullspace(m: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = m.to_vec();
    // u[c] is column c of the unimodular transform, stored as a vector.
    let mut u: Vec<Vec<i128>> = (0..cols).map(|c| (0..cols).map(|r| (r == c) as i128).collect()).collect();
    let mut pivot = 0;
    for row in 0..m.len() {
        if pivot == cols {
            break;
        }
        for c in pivot + 1..cols {
            let (a, b) = (m[row][pivot], m[row][c]);
            if b == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(a, b);
            let (a_g, b_g) = (a / g, b / g);
            // [col_p, col_c] <- [s col_p + t col_c, -b/g col_p + a/g col_c]; determinant 1.
            for r in m.iter_mut() {
                let (x, y) = (r[pivot], r[c]);
                r[pivot] = s * x + t * y;
                r[c] = -b_g * x + a_g * y;
            }
            let (x, y) = (u[pivot].clone(), u[c].clone());
            for k in 0..cols {
                u[pivot][k] = s * x[k] + t * y[k];
                u[c][k] = -b_g * x[k] + a_g * y[k];
            }
        }
        if m[row][pivot] != 0 {
            pivot += 1;
        }
    }
    u.split_off(pivot)
}

/// Row Hermite normal form; zero rows dropped.
fn hermite(mut rows: Vec<Vec<i128>>, width: usize) -> Vec<Vec<i128>> {
    let mut top = 0;
    for col in 0..width {
        if top == rows.len() {
            break;
        }
        for r in top + 1..rows.len() {
            let (a, b) = (rows[top][col], rows[r][col]);
            if b == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(a, b);
            let (a_g, b_g) = (a / g, b / g);
            let (x, y) = (rows[top].clone(), rows[r].clone());
            for k in 0..width {
                rows[top][k] = s * x[k] + t * y[k];
                rows[r][k] = -b_g * x[k] + a_g * y[k];
            }
        }
        if rows[top][col] == 0 {
            continue;
        }
        if rows[top][col] < 0 {
            rows[top].iter_mut().for_each(|v| *v = -*v);
        }
        let pivot_row = rows[top].clone();
        for row in rows.iter_mut().take(top) {
            let q = row[col].div_euclid(pivot_row[col]);
            if q != 0 {
                for k in 0..width {
                    row[k] -= q * pivot_row[k];
                }
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows
}

/// Generators of the kernel of `A: ⊕ Z/src_orders → ⊕ Z/tgt_orders`.
///
/// `matrix[r][c]` is coordinate `r` of the image of the `c`-th source
/// generator. Returned vectors are reduced modulo the source orders and are
/// nonzero in the source group.
pub fn kernel_generators(src_orders: &[i64], tgt_orders: &[i64], matrix: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let a = src_orders.len();
    assert!(matrix.len() == tgt_orders.len() && matrix.iter().all(|row| row.len() == a));
    let rel_rows: Vec<usize> = (0..tgt_orders.len()).filter(|&r| tgt_orders[r] != 0).collect();
    let cols = a + rel_rows.len();
    let m: Vec<Vec<i128>> = matrix
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut out: Vec<i128> = row.iter().map(|&v| v as i128).collect();
            out.extend(rel_rows.iter().map(|&rr| if rr == r { tgt_orders[r] as i128 } else { 0 }));
            out
        })
        .collect();

    let mut lattice: Vec<Vec<i128>> = integer_nullspace(&m, cols)
        .into_iter()
        .map(|mut v| {
            v.truncate(a);
            v
        })
        .collect();
    for (j, &o) in src_orders.iter().enumerate() {
        if o != 0 {
            let mut v = vec![0i128; a];
            v[j] = o as i128;
            lattice.push(v);
        }
    }

    let mut out = Vec::new();
    for row in hermite(lattice, a) {
        let reduced: Vec<i64> = row
            .iter()
            .zip(src_orders)
            .map(|(&v, &o)| if o == 0 { v as i64 } else { v.rem_euclid(o as i128) as i64 })
            .collect();
        if reduced.iter().any(|&v| v != 0) && !out.contains(&reduced) {
            out.push(reduced);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_kernel_vector(src: &[i64], tgt: &[i64], a: &[Vec<i64>], v: &[i64]) -> bool {
        let _ = src;
        a.iter().zip(tgt).all(|(row, &o)| {
            let s: i64 = row.iter().zip(v).map(|(x, y)| x * y).sum();
            if o == 0 {
                s == 0
            } else {
                s.rem_euclid(o) == 0
            }
        })
    }

    #[test]
    fn free_to_free() {
        let a = vec![vec![1, 1]];
        let k = kernel_generators(&[0, 0], &[0], &a);
        assert_eq!(k, vec![vec![1, -1]]);
    }

    #[test]
    fn free_to_torsion() {
        let k = kernel_generators(&[0], &[2], &[vec![1]]);
        assert_eq!(k, vec![vec![2]]);
    }

    #[test]
    fn zero_map_returns_unit_vectors() {
        let k = kernel_generators(&[0, 2, 5], &[0], &[vec![0, 0, 0]]);
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn injective_map_has_no_kernel() {
        let k = kernel_generators(&[0, 2], &[0, 2], &[vec![1, 0], vec![0, 1]]);
        assert!(k.is_empty());
    }

    #[test]
    fn field_case() {
        // F_3^3 -> F_3, (x, y, z) -> x + y + z.
        let a = vec![vec![1, 1, 1]];
        let k = kernel_generators(&[3, 3, 3], &[3], &a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_kernel_vector(&[3, 3, 3], &[3], &a, v));
        }
    }

    #[test]
    fn empty_source() {
        assert!(kernel_generators(&[], &[0, 2], &[vec![], vec![]]).is_empty());
    }
}
