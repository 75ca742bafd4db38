//! Integer lattices given by generating rows.
//!
//! The canonical form is the row Hermite normal form: echelon shape, positive
//! pivots, and every entry above a pivot reduced into `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigInt>;

fn is_zero_row(r: &[BigInt]) -> bool {
    r.iter().all(Zero::is_zero)
}

fn sub_multiple(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Pivot column of an echelon row.
pub fn pivot(r: &[BigInt]) -> Option<usize> {
    r.iter().position(|x| !x.is_zero())
}

/// Row Hermite normal form of the lattice spanned by `rows`.
pub fn hnf(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m: Vec<Row> = rows
        .iter()
        .filter(|r| !is_zero_row(r))
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            r.clone()
        })
        .collect();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        loop {
            // Smallest nonzero entry in this column at or below `top`.
            let best = (top..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&i, &j| m[i][col].abs().cmp(&m[j][col].abs()));
            let Some(best) = best else { break };
            m.swap(top, best);
            let mut done = true;
            for i in top + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = m[i][col].div_floor(&m[top][col]);
                    let src = m[top].clone();
                    sub_multiple(&mut m[i], &src, &q);
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if top == m.len() || m[top][col].is_zero() {
            continue;
        }
        if m[top][col].is_negative() {
            for x in m[top].iter_mut() {
                *x = -x.clone();
            }
        }
        let src = m[top].clone();
        for row in m.iter_mut().take(top) {
            let q = row[col].div_floor(&src[col]);
            sub_multiple(row, &src, &q);
        }
        top += 1;
    }
    m.truncate(top);
    m.retain(|r| !is_zero_row(r));
    m
}

/// Reduce `v` against an HNF basis: pivot coordinates land in `[0, pivot)`.
pub fn reduce(h: &[Row], v: &[BigInt]) -> Row {
    let mut v = v.to_vec();
    for r in h {
        let p = pivot(r).expect("HNF rows are nonzero");
        let q = v[p].div_floor(&r[p]);
        sub_multiple(&mut v, r, &q);
    }
    v
}

pub fn contains(h: &[Row], v: &[BigInt]) -> bool {
    is_zero_row(&reduce(h, v))
}

pub fn sum(a: &[Row], b: &[Row], ncols: usize) -> Vec<Row> {
    let rows: Vec<Row> = a.iter().chain(b).cloned().collect();
    hnf(&rows, ncols)
}

/// Intersection of two lattices, in HNF.
pub fn intersect(a: &[Row], b: &[Row], ncols: usize) -> Vec<Row> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::with_capacity(a.len() + b.len());
    for r in a {
        let mut x = r.clone();
        x.extend(r.iter().cloned());
        rows.push(x);
    }
    for r in b {
        let mut x = r.clone();
        x.extend(std::iter::repeat_n(BigInt::zero(), ncols));
        rows.push(x);
    }
    let h = hnf(&rows, 2 * ncols);
    let tail: Vec<Row> = h
        .into_iter()
        .filter(|r| is_zero_row(&r[..ncols]))
        .map(|r| r[ncols..].to_vec())
        .collect();
    hnf(&tail, ncols)
}

/// Integer coefficients `x` with `sum_i x_i * gens[i] = v`, if any exist.
pub fn solve(gens: &[Row], v: &[BigInt], ncols: usize) -> Option<Vec<BigInt>> {
    let k = gens.len();
    let rows: Vec<Row> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut r = g.clone();
            r.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let h = hnf(&rows, ncols + k);
    let mut w: Row = v.to_vec();
    w.extend(std::iter::repeat_n(BigInt::zero(), k));
    for r in &h {
        let p = pivot(r).expect("nonzero row");
        if p >= ncols {
            break;
        }
        let (q, rem) = w[p].div_rem(&r[p]);
        if !rem.is_zero() {
            return None;
        }
        sub_multiple(&mut w, r, &q);
    }
    if !is_zero_row(&w[..ncols]) {
        return None;
    }
    Some(w[ncols..].iter().map(|x| -x).collect())
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Row]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Row> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = val / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Coordinates of a sublattice inside a lattice of the same rank, in HNF.
///
/// Returns `None` when some row of `sub` is not in `sup`.
pub fn relative_coordinates(sup: &[Row], sub: &[Row], ncols: usize) -> Option<Vec<Row>> {
    let mut coords = Vec::with_capacity(sub.len());
    for r in sub {
        coords.push(solve(sup, r, ncols)?);
    }
    Some(hnf(&coords, sup.len()))
}

/// All integer vectors `t` with `0 <= t_i < bounds_i`, lexicographic.
pub fn box_points(bounds: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for b in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            let mut t = BigInt::zero();
            while &t < b {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push(p);
                t += 1;
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Row> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_is_reduced_echelon() {
        let h = hnf(&rows(&[&[3, 0], &[0, 3], &[1, 1], &[-5, 1]]), 2);
        assert_eq!(h, rows(&[&[1, 1], &[0, 3]]));
    }

    #[test]
    fn hnf_of_dependent_rows_drops_rank() {
        let h = hnf(&rows(&[&[2, 4], &[3, 6]]), 2);
        assert_eq!(h, rows(&[&[1, 2]]));
    }

    #[test]
    fn intersection_of_coordinate_lattices() {
        let a = rows(&[&[2, 0], &[0, 1]]);
        let b = rows(&[&[3, 0], &[0, 2]]);
        assert_eq!(intersect(&a, &b, 2), rows(&[&[6, 0], &[0, 2]]));
    }

    #[test]
    fn solve_finds_combination() {
        let g = rows(&[&[2, 1], &[0, 3]]);
        let v = vec![BigInt::from(4), BigInt::from(5)];
        let x = solve(&g, &v, 2).unwrap();
        let back: Vec<BigInt> = (0..2).map(|c| &x[0] * &g[0][c] + &x[1] * &g[1][c]).collect();
        assert_eq!(back, v);
        assert!(solve(&g, &[BigInt::from(1), BigInt::from(0)], 2).is_none());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = rows(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) = -52 - 2 = -54
        assert_eq!(det(&m), BigInt::from(-54));
    }
}
