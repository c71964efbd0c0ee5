//! Exact integer linear algebra: Smith normal form and sparse ranks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use std::collections::{HashMap, HashSet};

use crate::cube::SparseMat;
use crate::ring::Coeff;

/// Smith normal form U·A·V = D with unimodular U, V.
pub struct Snf {
    pub factors: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

/// Dense Smith normal form with transforms. Suitable for small and medium
/// matrices; homology uses the sparse [`invariant_factors`] instead.
pub fn smith_normal_form(m: &SparseMat<BigInt>) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    for (r, c, v) in &m.entries {
        a[*r as usize][*c as usize] += v;
    }
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0usize;
    while t < rows && t < cols {
        // Find a minimal-magnitude nonzero pivot in the remaining block.
        let Some((pr, pc)) = pivot_position(&a, t) else {
            break;
        };
        a.swap(t, pr);
        u.swap(t, pr);
        swap_cols(&mut a, t, pc);
        swap_cols(&mut v, t, pc);
        loop {
            // Clear the pivot column with Euclidean row steps.
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][t], &a[t][t]);
                if !q.is_zero() {
                    row_sub(&mut a, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            // Same for the pivot row with column steps.
            for jcol in t + 1..cols {
                if a[t][jcol].is_zero() {
                    continue;
                }
                let q = div_round(&a[t][jcol], &a[t][t]);
                if !q.is_zero() {
                    col_sub(&mut a, jcol, t, &q);
                    col_sub(&mut v, jcol, t, &q);
                }
                if !a[t][jcol].is_zero() {
                    swap_cols(&mut a, t, jcol);
                    swap_cols(&mut v, t, jcol);
                    dirty = true;
                }
            }
            if !dirty && (t + 1..rows).all(|i| a[i][t].is_zero()) {
                break;
            }
        }
        // Divisibility: pivot must divide the rest of the block.
        if let Some(bad) = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()))
        {
            let one = BigInt::one();
            row_sub(&mut a, t, bad, &-&one);
            row_sub(&mut u, t, bad, &-&one);
            continue; // redo this pivot
        }
        if a[t][t].is_negative() {
            for x in &mut a[t] {
                *x = -&*x;
            }
            for x in &mut u[t] {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let factors = (0..t).map(|k| a[k][k].clone()).collect();
    Snf { factors, u, v }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn pivot_position(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            match &best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if x.abs() < a[*bi][*bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a {
        row.swap(i, j);
    }
}

fn row_sub(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let src_row = a[src].clone();
    for (x, s) in a[dst].iter_mut().zip(&src_row) {
        *x -= q * s;
    }
}

fn col_sub(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a {
        let s = row[src].clone();
        row[dst] -= q * &s;
    }
}

/// Round-to-nearest division, keeping remainders small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Invariant factors without transforms: sparse ±1-pivot elimination first,
/// dense Smith on whatever remains.
pub fn invariant_factors(m: &SparseMat<BigInt>) -> Vec<BigInt> {
    let mut rows: HashMap<u32, HashMap<u32, BigInt>> = HashMap::new();
    let mut col_rows: HashMap<u32, HashSet<u32>> = HashMap::new();
    for (r, c, v) in &m.entries {
        let e = rows.entry(*r).or_default().entry(*c).or_insert_with(BigInt::zero);
        *e += v;
        col_rows.entry(*c).or_default().insert(*r);
    }
    // Drop explicit zeros from accidental cancellation.
    for (r, row) in rows.iter_mut() {
        row.retain(|c, v| {
            if v.is_zero() {
                col_rows.get_mut(c).map(|s| s.remove(r));
                false
            } else {
                true
            }
        });
    }
    let mut ones = 0usize;
    // Lazy priority queue of rows by length; stale entries are skipped since
    // every row mutation pushes a fresh one. A cheap Markowitz proxy: pivot in
    // a shortest row, on the unit with the sparsest column.
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(usize, u32)>> =
        rows.iter().map(|(&r, row)| std::cmp::Reverse((row.len(), r))).collect();
    loop {
        let mut pick: Option<(u32, u32, BigInt)> = None;
        while let Some(std::cmp::Reverse((len, r))) = heap.pop() {
            let Some(row) = rows.get(&r) else { continue };
            if row.len() != len {
                continue;
            }
            // Unit-free rows only regain candidates through mutation, which
            // re-pushes them, so dropping this entry is safe.
            if let Some((&c, v)) = row
                .iter()
                .filter(|(_, v)| v.is_unit())
                .min_by_key(|(c, _)| col_rows.get(c).map_or(0, HashSet::len))
            {
                pick = Some((r, c, v.clone()));
                break;
            }
        }
        let Some((pr, pc, pv)) = pick else { break };
        ones += 1;
        let pivot_row = rows.remove(&pr).unwrap();
        for (&c, _) in &pivot_row {
            col_rows.get_mut(&c).map(|s| s.remove(&pr));
        }
        let affected: Vec<u32> = col_rows
            .get(&pc)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for r2 in affected {
            let Some(row2) = rows.get_mut(&r2) else { continue };
            let Some(factor) = row2.get(&pc).cloned() else { continue };
            // row2 -= (factor / pivot) * pivot_row; pivot is ±1.
            let scale = &factor * &pv; // factor / pv since pv in {1,-1}
            for (&c, v) in &pivot_row {
                let e = row2.entry(c).or_insert_with(BigInt::zero);
                *e -= &scale * v;
                if e.is_zero() {
                    row2.remove(&c);
                    col_rows.get_mut(&c).map(|s| s.remove(&r2));
                } else {
                    col_rows.entry(c).or_default().insert(r2);
                }
            }
            if row2.is_empty() {
                rows.remove(&r2);
            } else {
                heap.push(std::cmp::Reverse((row2.len(), r2)));
            }
        }
        col_rows.remove(&pc);
    }
    // Dense Smith for the leftovers.
    let mut factors: Vec<BigInt> = vec![BigInt::one(); ones];
    let leftovers: Vec<(u32, u32, BigInt)> = {
        let mut row_ids: Vec<u32> = rows.keys().copied().collect();
        row_ids.sort_unstable();
        let mut col_ids: Vec<u32> = rows
            .values()
            .flat_map(|row| row.keys().copied())
            .collect();
        col_ids.sort_unstable();
        col_ids.dedup();
        let rpos: HashMap<u32, u32> = row_ids.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
        let cpos: HashMap<u32, u32> = col_ids.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        rows.iter()
            .flat_map(|(r, row)| {
                row.iter().map(|(c, v)| (rpos[r], cpos[c], v.clone()))
            })
            .collect()
    };
    if !leftovers.is_empty() {
        let rmax = leftovers.iter().map(|e| e.0).max().unwrap() as usize + 1;
        let cmax = leftovers.iter().map(|e| e.1).max().unwrap() as usize + 1;
        let rest = smith_normal_form(&SparseMat {
            rows: rmax,
            cols: cmax,
            entries: leftovers,
        });
        factors.extend(rest.factors);
    }
    factors.retain(|f| !f.is_zero());
    factors.sort();
    factors
}

/// Rank by sparse Gaussian elimination over a field.
pub fn rank_over_field<R: Coeff>(m: &SparseMat<R>) -> usize {
    let mut rows: HashMap<u32, HashMap<u32, R>> = HashMap::new();
    let mut col_rows: HashMap<u32, HashSet<u32>> = HashMap::new();
    for (r, c, v) in &m.entries {
        let e = rows.entry(*r).or_default().entry(*c).or_insert_with(R::zero);
        *e = e.add(v);
    }
    rows.retain(|_, row| {
        row.retain(|_, v| !v.is_zero());
        !row.is_empty()
    });
    for (&r, row) in &rows {
        for (&c, _) in row {
            col_rows.entry(c).or_default().insert(r);
        }
    }
    // Lazy queue of rows by length (see invariant_factors); every nonzero is
    // a unit here, so the pivot is the entry with the sparsest column in a
    // shortest live row.
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(usize, u32)>> =
        rows.iter().map(|(&r, row)| std::cmp::Reverse((row.len(), r))).collect();
    let mut rank = 0usize;
    loop {
        let mut pick: Option<(u32, u32)> = None;
        while let Some(std::cmp::Reverse((len, r))) = heap.pop() {
            let Some(row) = rows.get(&r) else { continue };
            if row.len() != len {
                continue;
            }
            let (&c, _) = row
                .iter()
                .min_by_key(|(c, _)| col_rows.get(c).map_or(0, HashSet::len))
                .unwrap();
            pick = Some((r, c));
            break;
        }
        let Some((pr, pc)) = pick else { break };
        rank += 1;
        let pivot_row = rows.remove(&pr).unwrap();
        let pv_inv = pivot_row[&pc].inv().expect("field element invertible");
        for (&c, _) in &pivot_row {
            col_rows.get_mut(&c).map(|s| s.remove(&pr));
        }
        let affected: Vec<u32> = col_rows
            .get(&pc)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for r2 in affected {
            let Some(row2) = rows.get_mut(&r2) else { continue };
            let Some(factor) = row2.get(&pc).cloned() else { continue };
            let scale = factor.mul(&pv_inv);
            for (&c, v) in &pivot_row {
                let delta = scale.mul(v).neg();
                let e = row2.entry(c).or_insert_with(R::zero);
                *e = e.add(&delta);
                if e.is_zero() {
                    row2.remove(&c);
                    col_rows.get_mut(&c).map(|s| s.remove(&r2));
                } else {
                    col_rows.entry(c).or_default().insert(r2);
                }
            }
            if row2.is_empty() {
                rows.remove(&r2);
            } else {
                heap.push(std::cmp::Reverse((row2.len(), r2)));
            }
        }
        col_rows.remove(&pc);
    }
    rank
}

/// Rank over ℤ (= rank over ℚ) from the invariant factors.
pub fn rank_over_z(m: &SparseMat<BigInt>) -> usize {
    invariant_factors(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, data: &[(u32, u32, i64)]) -> SparseMat<BigInt> {
        SparseMat {
            rows,
            cols,
            entries: data
                .iter()
                .map(|&(r, c, v)| (r, c, BigInt::from(v)))
                .collect(),
        }
    }

    fn check_transforms(m: &SparseMat<BigInt>, s: &Snf) {
        // U A V = diag(factors).
        let mut a = vec![vec![BigInt::zero(); m.cols]; m.rows];
        for (r, c, v) in &m.entries {
            a[*r as usize][*c as usize] += v;
        }
        let prod = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < s.factors.len() {
                    s.factors[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*x, want, "at ({i},{j})");
            }
        }
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = a.len();
        let m = b[0].len();
        let k = b.len();
        let mut out = vec![vec![BigInt::zero(); m]; n];
        for i in 0..n {
            for l in 0..k {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..m {
                    let t = &a[i][l] * &b[l][j];
                    out[i][j] += t;
                }
            }
        }
        out
    }

    #[test]
    fn diagonal_pair() {
        let m = mat(2, 2, &[(0, 0, 2), (1, 1, 3)]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(6)]);
        check_transforms(&m, &s);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let m = mat(3, 2, &[]);
        assert!(smith_normal_form(&m).factors.is_empty());
        assert!(invariant_factors(&m).is_empty());
        assert_eq!(rank_over_z(&m), 0);
    }

    #[test]
    fn two_by_two() {
        let m = mat(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(2)]);
        check_transforms(&m, &s);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn divisibility_chain_and_rank() {
        let m = mat(
            3,
            3,
            &[(0, 0, 2), (0, 1, 4), (1, 0, 4), (1, 1, 8), (2, 2, 6)],
        );
        let s = smith_normal_form(&m);
        check_transforms(&m, &s);
        for w in s.factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "{:?}", s.factors);
        }
        assert_eq!(rank_over_z(&m), s.factors.len());
    }

    #[test]
    fn field_ranks_match() {
        use crate::ring::Fp;
        let m = mat(3, 4, &[(0, 0, 1), (0, 3, 5), (1, 1, 2), (2, 0, 7), (2, 3, 35)]);
        assert_eq!(rank_over_z(&m), 2);
        let m3: SparseMat<Fp> = SparseMat {
            rows: 3,
            cols: 4,
            entries: m
                .entries
                .iter()
                .map(|(r, c, v)| {
                    (*r, *c, Fp::new(i64::try_from(v.clone()).unwrap(), 3))
                })
                .collect(),
        };
        assert_eq!(rank_over_field(&m3), 2);
    }
}
