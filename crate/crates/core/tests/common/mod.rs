//! Random generators and independent oracles shared by the integration and
//! acceptance targets. The oracles avoid the library's decision paths: they
//! use cofactor expansion, gcds of minors and dense linear solves over Q.

#![allow(dead_code)]

use lincontract::behavior::{KernelRep, SignalBlock, StateSpace};
use lincontract::contracts::Contract;
use lincontract::polyalg::{Poly, RatFunc, Rational};
use lincontract::polymatrix::{PolyMatrix, RatMatrix};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Small coefficient, occasionally a proper fraction.
pub fn rand_coeff(r: &mut TestRng) -> Rational {
    if r.gen_bool(0.15) {
        frac(r.gen_range(-3..=3), r.gen_range(2..=3))
    } else {
        q(r.gen_range(-3..=3))
    }
}

pub fn rand_poly(r: &mut TestRng, max_deg: usize) -> Poly {
    let deg = r.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| rand_coeff(r)).collect())
}

/// Entries are zero with probability `sparsity`.
pub fn rand_matrix(r: &mut TestRng, rows: usize, cols: usize, max_deg: usize, sparsity: f64) -> PolyMatrix {
    PolyMatrix::from_fn(rows, cols, |_, _| {
        if r.gen_bool(sparsity) {
            Poly::zero()
        } else {
            rand_poly(r, max_deg)
        }
    })
}

pub fn rand_full_row_rank(r: &mut TestRng, rows: usize, cols: usize, max_deg: usize) -> PolyMatrix {
    assert!(rows <= cols);
    loop {
        let m = rand_matrix(r, rows, cols, max_deg, 0.2);
        if m.rank_generic() == rows {
            return m;
        }
    }
}

pub fn rand_unimodular(r: &mut TestRng, n: usize, steps: usize) -> PolyMatrix {
    let mut m = PolyMatrix::identity(n);
    for _ in 0..steps {
        if n < 2 {
            break;
        }
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        let f = rand_poly(r, 1);
        let mut e = PolyMatrix::identity(n);
        e.set(i, j, f);
        m = &e * &m;
    }
    let c = loop {
        let c = rand_coeff(r);
        if !c.is_zero() {
            break c;
        }
    };
    m.scale(&Poly::constant(c))
}

pub fn kernel(name: &str, m: PolyMatrix) -> KernelRep {
    KernelRep::over(name, m)
}

// ---------------------------------------------------------------- determinants

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &PolyMatrix) -> Poly {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor = submatrix(m, &(1..n).collect::<Vec<_>>(), &(0..n).filter(|&c| c != j).collect::<Vec<_>>());
        let term = m.get(0, j) * &cofactor_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

pub fn submatrix(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> PolyMatrix {
    PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| m.get(rows[i], cols[j]).clone())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn gcd_all<'a>(ps: impl Iterator<Item = &'a Poly>) -> Option<Poly> {
    let mut g: Option<Poly> = None;
    for p in ps.filter(|p| !p.is_zero()) {
        g = Some(match g {
            None => p.monic(),
            Some(g) => Poly::gcd(&g, p).expect("nonzero operand"),
        });
    }
    g
}

/// Invariant factors from determinantal divisors: `d_k` is the monic gcd of
/// all k×k minors and the k-th factor is `d_k / d_{k-1}`.
pub fn invariant_factors_by_minors(m: &PolyMatrix) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut prev = Poly::one();
    for k in 1..=m.rows().min(m.cols()) {
        let mut minors = Vec::new();
        for rs in combinations(m.rows(), k) {
            for cs in combinations(m.cols(), k) {
                minors.push(cofactor_det(&submatrix(m, &rs, &cs)));
            }
        }
        match gcd_all(minors.iter()) {
            None => break,
            Some(d) => {
                out.push(d.exact_div(&prev).expect("determinantal divisors form a chain"));
                prev = d;
            }
        }
    }
    out
}

// ---------------------------------------------------------------- linear algebra over Q

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Rational::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..a[i].len() {
                    let v = &a[row][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

/// Some solution of `A x = b`, if any.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let pivots = rref(&mut aug, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}

/// Basis of `{x | A x = 0}`.
pub fn nullspace(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Decides `exists polynomial M: M R1 = R2` by matching coefficients, with
/// every entry of `M` of degree at most `bound`. Returns such an `M`.
pub fn inclusion_oracle(r1: &PolyMatrix, r2: &PolyMatrix, bound: usize) -> Option<PolyMatrix> {
    let (g, k) = (r1.rows(), r1.cols());
    let d1 = r1.max_degree().unwrap_or(0);
    let top = bound + d1;
    let unknowns = g * (bound + 1);
    let mut rows_out = Vec::new();
    for row in 0..r2.rows() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for j in 0..k {
            let target = r2.get(row, j);
            if target.degree().is_some_and(|d| d > top) {
                return None;
            }
            for d in 0..=top {
                let mut eq = vec![Rational::zero(); unknowns];
                for i in 0..g {
                    let entry = r1.get(i, j);
                    for e in 0..=bound.min(d) {
                        eq[i * (bound + 1) + e] = entry.coeff(d - e);
                    }
                }
                a.push(eq);
                b.push(target.coeff(d));
            }
        }
        let x = if g == 0 {
            if r2.row(row).iter().all(Poly::is_zero) {
                Vec::new()
            } else {
                return None;
            }
        } else {
            solve(&a, &b)?
        };
        rows_out.push(
            (0..g)
                .map(|i| Poly::from_coeffs(x[i * (bound + 1)..(i + 1) * (bound + 1)].to_vec()))
                .collect(),
        );
    }
    Some(PolyMatrix::from_rows(rows_out, g).expect("row lengths"))
}

pub fn oracle_bound(r1: &PolyMatrix, r2: &PolyMatrix) -> usize {
    r2.max_degree().unwrap_or(0) + r1.cols() * r1.max_degree().unwrap_or(0)
}

/// A pair `(R1, R2)` with `R1` of full row rank, biased so that both verdicts
/// occur often.
pub fn inclusion_pair(r: &mut TestRng) -> (PolyMatrix, PolyMatrix) {
    let k = r.gen_range(1..=3);
    let g = r.gen_range(0..=k);
    let r1 = rand_full_row_rank(r, g, k, 2);
    let rows2 = r.gen_range(1..=3);
    let r2 = match r.gen_range(0..4) {
        0 => &rand_matrix(r, rows2, g, 1, 0.3) * &r1,
        1 => rand_matrix(r, rows2, k, 3, 0.3),
        2 => {
            let mut m = &rand_matrix(r, rows2, g, 1, 0.3) * &r1;
            let (i, j) = (r.gen_range(0..rows2), r.gen_range(0..k));
            let e = m.get(i, j) + &Poly::one();
            m.set(i, j, e);
            m
        }
        _ => {
            // R1 = F X with F nonsingular, R2 = X
            let x = rand_full_row_rank(r, g, k, 1);
            let f = rand_full_row_rank(r, g, g, 1);
            return (&f * &x, x);
        }
    };
    (r1, r2)
}

// ---------------------------------------------------------------- state space

pub fn rand_statespace(r: &mut TestRng, n: usize, m: usize, p: usize) -> StateSpace {
    let c = |rows, cols, r: &mut TestRng| {
        PolyMatrix::from_fn(rows, cols, |_, _| {
            if r.gen_bool(0.3) {
                Poly::zero()
            } else {
                Poly::constant(rand_coeff(r))
            }
        })
    };
    let a = c(n, n, r);
    let b = c(n, m, r);
    let cc = c(p, n, r);
    let d = c(p, m, r);
    StateSpace::new(a, b, cc, d).expect("shapes")
}

/// `C adj(sI - A) B / det(sI - A) + D`, by cofactors.
pub fn transfer_oracle(ss: &StateSpace) -> RatMatrix {
    let n = ss.states();
    let si_a = &PolyMatrix::identity(n).scale(&Poly::s()) - ss.a();
    let det = cofactor_det(&si_a);
    let adj = PolyMatrix::from_fn(n, n, |i, j| {
        // adj[i][j] = (-1)^{i+j} det(minor with row j, col i removed)
        let rows: Vec<usize> = (0..n).filter(|&x| x != j).collect();
        let cols: Vec<usize> = (0..n).filter(|&x| x != i).collect();
        let c = cofactor_det(&submatrix(&si_a, &rows, &cols));
        if (i + j) % 2 == 0 {
            c
        } else {
            -c
        }
    });
    let num = &(ss.c() * &adj) * ss.b();
    RatMatrix::from_fn(ss.outputs(), ss.inputs(), |i, j| {
        let g = RatFunc::new(num.get(i, j).clone(), det.clone()).expect("monic det");
        &g + &RatFunc::new(ss.d().get(i, j).clone(), Poly::one()).unwrap()
    })
}

// ---------------------------------------------------------------- contracts

pub fn rand_kernel(r: &mut TestRng, name: &str, dim: usize, max_deg: usize) -> KernelRep {
    let rows = r.gen_range(0..=dim);
    KernelRep::new(rand_full_row_rank(r, rows, dim, max_deg), vec![SignalBlock::new(name, dim)]).unwrap()
}

/// A subbehavior: `k` with one more random law.
pub fn shrink(r: &mut TestRng, k: &KernelRep) -> KernelRep {
    let extra = rand_full_row_rank(r, 1, k.signal_dim(), 1);
    KernelRep::new(k.matrix().vstack(&extra).unwrap(), k.signals().to_vec()).unwrap()
}

/// A superbehavior: `L k` for a random nonsingular polynomial `L`.
pub fn enlarge(r: &mut TestRng, k: &KernelRep) -> KernelRep {
    let g = k.matrix().rows();
    if g == 0 {
        return k.clone();
    }
    let mut l = rand_unimodular(r, g, 2);
    let i = r.gen_range(0..g);
    let f = loop {
        let f = rand_poly(r, 1);
        if !f.is_zero() {
            break f;
        }
    };
    for j in 0..g {
        let e = l.get(i, j) * &f;
        l.set(i, j, e);
    }
    KernelRep::new(&l * k.matrix(), k.signals().to_vec()).unwrap()
}

pub fn rand_contract(r: &mut TestRng, m: usize, p: usize) -> Contract {
    Contract::new(&rand_kernel(r, "u", m, 2), &rand_kernel(r, "y", p, 2))
}

pub mod cases;
