//! Dense linear algebra over a finite field.

use crate::gf::{Elem, Gf};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form in place; zero rows are dropped. Returns the
/// pivot columns.
pub fn rref(f: &Gf, m: &mut Matrix) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = f.inv(m[row][col]).unwrap();
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let c = other[col];
            for (x, &y) in other.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank(f: &Gf, m: &[Vec<Elem>]) -> usize {
    let mut c = m.to_vec();
    rref(f, &mut c).len()
}

/// Basis of `{v : m v = 0}` for a matrix with `ncols` columns, returned in
/// reduced echelon form.
pub fn nullspace(f: &Gf, m: &[Vec<Elem>], ncols: usize) -> Matrix {
    let mut r = m.to_vec();
    let pivots = rref(f, &mut r);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Elem::ZERO; ncols];
        v[free] = Elem::ONE;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r[row][free]);
        }
        basis.push(v);
    }
    rref(f, &mut basis);
    basis
}

/// Whether the row space of `small` lies in the row space of `big`.
pub fn row_space_contains(f: &Gf, big: &[Vec<Elem>], small: &[Vec<Elem>]) -> bool {
    let rb = rank(f, big);
    let mut joined = big.to_vec();
    joined.extend_from_slice(small);
    rank(f, &joined) == rb
}

pub fn row_space_eq(f: &Gf, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> bool {
    rank(f, a) == rank(f, b) && row_space_contains(f, a, b)
}

/// Some `x` with `a x = b`, if the system is consistent.
pub fn solve(f: &Gf, a: &[Vec<Elem>], b: &[Elem]) -> Option<Vec<Elem>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Elem::ZERO; ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols];
    }
    Some(x)
}

pub fn transpose(m: &[Vec<Elem>]) -> Matrix {
    let ncols = m.first().map_or(0, |r| r.len());
    (0..ncols).map(|c| m.iter().map(|r| r[c]).collect()).collect()
}

/// `v * m` for a row vector `v`.
pub fn vec_mat(f: &Gf, v: &[Elem], m: &[Vec<Elem>]) -> Vec<Elem> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = vec![Elem::ZERO; ncols];
    for (&c, row) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&c| Elem(c)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let f = Gf::new(5, 1).unwrap();
        let a = m(&[&[1, 2, 3], &[2, 4, 1], &[0, 1, 1]]);
        assert_eq!(rank(&f, &a), 2);
        let k = nullspace(&f, &a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot = f.sum(row.iter().zip(&k[0]).map(|(&x, &y)| f.mul(x, y)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solving_and_containment() {
        let f = Gf::new(7, 1).unwrap();
        let a = m(&[&[1, 1], &[1, 2]]);
        let x = solve(&f, &a, &[Elem(3), Elem(5)]).unwrap();
        assert_eq!(x, vec![Elem(1), Elem(2)]);
        let big = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let small = m(&[&[3, 4, 0]]);
        assert!(row_space_contains(&f, &big, &small));
        assert!(!row_space_contains(&f, &small, &big));
        assert!(row_space_eq(&f, &big, &m(&[&[1, 1, 0], &[1, 2, 0]])));
        assert!(solve(&f, &m(&[&[1, 1], &[2, 2]]), &[Elem(1), Elem(3)]).is_none());
    }
}
