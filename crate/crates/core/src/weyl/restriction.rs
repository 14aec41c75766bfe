use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IntMatrix, W0Report, WeylError, WeylGroup};
use crate::exact::{Matrix, Monomial, Polynomial, Rational, SpanBuilder};

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(x: i64) -> u64 {
    (x as i128).rem_euclid(P as i128) as u64
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], P - 2);
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let f = mul_mod(rows[r][col], inv);
            for c in col..ncols {
                let sub = mul_mod(f, rows[rank][c]);
                rows[r][c] = (rows[r][c] + P - sub) % P;
            }
        }
        rank += 1;
    }
    rank
}

/// Coefficients of `det(I − tA)` for an integer matrix, via Faddeev–LeVerrier.
fn reverse_charpoly(a: &IntMatrix) -> Vec<i64> {
    let n = a.n;
    // c[k] is the coefficient of t^k in det(tI − A)
    let mut c = vec![0i64; n + 1];
    c[n] = 1;
    let mut m = IntMatrix {
        n,
        data: vec![0; n * n],
    };
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            next.data[i * n + i] += c[n - k + 1];
        }
        m = next;
        let am = a.mul(&m);
        let tr: i64 = (0..n).map(|i| am.get(i, i)).sum();
        c[n - k] = -tr / k as i64;
    }
    c.reverse();
    c
}

/// `dim k[t]^W_d` for `d = 0..=dmax` from Molien's formula
/// `(1/|W|) Σ_w 1/det(I − tw)`.
pub fn molien_dims(w: &WeylGroup, dmax: u32) -> Vec<usize> {
    let mut classes: HashMap<Vec<i64>, i64> = HashMap::new();
    for g in &w.elements {
        *classes.entry(reverse_charpoly(g)).or_default() += 1;
    }
    let len = dmax as usize + 1;
    let mut total = vec![0i128; len];
    for (q, count) in classes {
        let mut s = vec![0i128; len];
        s[0] = 1;
        for k in 1..len {
            let mut acc = 0i128;
            for (j, &qj) in q.iter().enumerate().skip(1).take(k) {
                acc -= qj as i128 * s[k - j];
            }
            s[k] = acc;
        }
        for (t, x) in total.iter_mut().zip(&s) {
            *t += count as i128 * x;
        }
    }
    let order = w.order() as i128;
    total
        .into_iter()
        .map(|x| {
            debug_assert_eq!(x % order, 0);
            (x / order) as usize
        })
        .collect()
}

fn monomials(k: usize, d: u32) -> Vec<Monomial> {
    fn go(k: usize, d: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == k {
            cur.push(d as u16);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e as u16);
            go(k, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    go(k, d, &mut Vec::new(), &mut out);
    out
}

fn coefficient_vector(p: &Polynomial, basis: &[Monomial]) -> Vec<Rational> {
    basis.iter().map(|m| p.coefficient(m)).collect()
}

/// Reynolds operator `p ↦ (1/|G|) Σ_g p(g·c)` for a finite matrix group.
pub fn reynolds(group: &[Matrix], p: &Polynomial) -> Result<Polynomial, WeylError> {
    let k = p.nvars();
    let mut acc = Polynomial::zero(k);
    for g in group {
        let images: Vec<Polynomial> = (0..k).map(|i| Polynomial::linear(g.row(i))).collect();
        acc.add_scaled(&p.substitute(&images)?, &Rational::from_integer(1.into()))?;
    }
    Ok(acc.scale(&Rational::new(1.into(), (group.len() as i64).into())))
}

/// `dim k[t_0]^{W_0}_d` for `d = 0..=dmax` by averaging all monomials.
pub fn invariant_dims(group: &[Matrix], k: usize, dmax: u32) -> Result<Vec<usize>, WeylError> {
    (0..=dmax)
        .map(|d| {
            let basis = monomials(k, d);
            let mut span = SpanBuilder::new();
            for m in &basis {
                let r = reynolds(group, &Polynomial::monomial(m.clone(), Rational::from_integer(1.into())))?;
                span.insert(coefficient_vector(&r, &basis));
            }
            Ok(span.dim())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: u32,
    /// `dim k[t]^W_d`
    pub ambient_dim: usize,
    /// `dim res_0(k[t]^W)_d`
    pub image_dim: usize,
    /// `dim k[t_0]^{W_0}_d`
    pub invariant_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub dmax: u32,
    pub table: Vec<DegreeRow>,
    pub first_failure_degree: Option<u32>,
    /// Restriction is onto in every degree up to `dmax`.
    pub verdict_up_to_dmax: bool,
    /// `(|W|, |N_W(t_0)|, |Z_W(t_0)|, |W_0|)`
    pub group_orders: (usize, usize, usize, usize),
}

/// Spanning set of `k[t]^W_d` by power sums `x ↦ Σ_w ⟨λ, w x⟩^d`. Returns the
/// row vectors `λᵀw` for each chosen `λ`, certified to give a basis by a
/// nonsingular evaluation matrix modulo a prime.
fn certified_power_sums(
    w: &WeylGroup,
    d: u32,
    dim: usize,
    seed: u64,
) -> Result<Vec<Vec<Vec<i64>>>, WeylError> {
    let r = w.rank;
    for attempt in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(((d as u64) << 8) | attempt);
        let bound = 3 + attempt as i64;
        let draw = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            (0..r).map(|_| rng.random_range(-bound..=bound)).collect()
        };
        let lambdas: Vec<Vec<i64>> = (0..dim).map(|_| draw(&mut rng)).collect();
        let points: Vec<Vec<i64>> = (0..dim).map(|_| draw(&mut rng)).collect();
        // u[i][w] = λ_iᵀ w
        let u: Vec<Vec<Vec<i64>>> = lambdas
            .iter()
            .map(|lam| {
                w.elements
                    .iter()
                    .map(|g| (0..r).map(|j| (0..r).map(|i| lam[i] * g.get(i, j)).sum()).collect())
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<u64>> = u
            .iter()
            .map(|ui| {
                points
                    .iter()
                    .map(|x| {
                        ui.iter().fold(0u64, |acc, uw| {
                            let dot: i64 = uw.iter().zip(x).map(|(a, b)| a * b).sum();
                            (acc + pow_mod(reduce(dot), d as u64)) % P
                        })
                    })
                    .collect()
            })
            .collect();
        if rank_mod_p(rows) == dim {
            return Ok(u);
        }
    }
    Err(WeylError::Certificate { degree: d })
}

/// `res_0(k[t]^W)_d` versus `k[t_0]^{W_0}_d` for `1 ≤ d ≤ dmax`.
pub fn restriction_check(
    w: &WeylGroup,
    t0: &[Vec<i64>],
    w0: &W0Report,
    dmax: u32,
    seed: u64,
) -> Result<RestrictionReport, WeylError> {
    let k = t0.len();
    let r = w.rank;
    let ambient = molien_dims(w, dmax);
    let inv = invariant_dims(&w0.w0_matrices, k, dmax)?;
    let mut table = Vec::new();
    for d in 1..=dmax {
        let basis = monomials(k, d);
        let mut span = SpanBuilder::new();
        if ambient[d as usize] > 0 {
            for ui in certified_power_sums(w, d, ambient[d as usize], seed)? {
                // a_w = λᵀ w T_0, grouped since many coincide
                let mut counts: HashMap<Vec<i64>, i64> = HashMap::new();
                for uw in &ui {
                    let a: Vec<i64> = t0
                        .iter()
                        .map(|v| (0..r).map(|j| uw[j] * v[j]).sum())
                        .collect();
                    *counts.entry(a).or_default() += 1;
                }
                let mut p = Polynomial::zero(k);
                for (a, c) in counts {
                    let lin: Vec<Rational> = a.iter().map(|&x| Rational::from_integer(x.into())).collect();
                    p.add_scaled(&Polynomial::linear(&lin).pow(d), &Rational::from_integer(c.into()))?;
                }
                span.insert(coefficient_vector(&p, &basis));
            }
        }
        table.push(DegreeRow {
            degree: d,
            ambient_dim: ambient[d as usize],
            image_dim: span.dim(),
            invariant_dim: inv[d as usize],
        });
    }
    let first_failure_degree = table
        .iter()
        .find(|row| row.image_dim < row.invariant_dim)
        .map(|row| row.degree);
    Ok(RestrictionReport {
        dmax,
        table,
        first_failure_degree,
        verdict_up_to_dmax: first_failure_degree.is_none(),
        group_orders: (w.order(), w0.n_order, w0.z_order, w0.w0_order),
    })
}
