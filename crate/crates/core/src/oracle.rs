//! Brute-force ground truth for linear codes: minimum distance by
//! enumeration, MDS by minors, duals by nullspace.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{det_raw, Matrix};
use crate::tgrs::TgrsSpec;

/// Default cap on the number of projective messages enumerated.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration needs {needed} messages, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("generator matrix has no rows")]
    Empty,
}

pub type Result<T> = std::result::Result<T, OracleError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub budget: u64,
    pub workers: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_ENUM_BUDGET,
            workers: 1,
        }
    }
}

/// `(q^k - 1)/(q - 1)`, saturating.
pub fn projective_count(q: u64, k: usize) -> u64 {
    let mut total = 0u64;
    let mut pw = 1u64;
    for _ in 0..k {
        total = total.saturating_add(pw);
        pw = pw.saturating_mul(q);
    }
    total
}

/// Minimum Hamming weight over nonzero codewords of the row space of `g`,
/// enumerating one message per scalar class (first nonzero coordinate 1).
/// Rows are assumed linearly independent.
pub fn min_distance_bruteforce(g: &Matrix, opts: EnumOptions) -> Result<usize> {
    let (k, n) = (g.rows(), g.cols());
    if k == 0 {
        return Err(OracleError::Empty);
    }
    let f = g.field();
    let q = f.order();
    let needed = projective_count(q, k);
    if needed > opts.budget {
        return Err(OracleError::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }
    // multiples[i][c] = c * row_i
    let multiples: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| {
            (0..q)
                .map(|c| (0..n).map(|j| f.mul_raw(c, g.raw(i, j))).collect())
                .collect()
        })
        .collect();
    // one job per (leading row, value of the next coordinate)
    let mut jobs: Vec<(usize, Option<u64>)> = Vec::new();
    for lead in 0..k {
        if lead + 1 < k {
            jobs.extend((0..q).map(|c| (lead, Some(c))));
        } else {
            jobs.push((lead, None));
        }
    }
    let run = |job: &(usize, Option<u64>)| -> usize {
        let (lead, next) = *job;
        let mut start = multiples[lead][1].clone();
        let mut depth = lead + 1;
        if let Some(c) = next {
            for (s, &m) in start.iter_mut().zip(&multiples[depth][c as usize]) {
                *s = f.add_raw(*s, m);
            }
            depth += 1;
        }
        let mut best = n;
        descend(f, &multiples, depth, &start, &mut best);
        best
    };
    let workers = opts.workers.max(1).min(jobs.len());
    if workers <= 1 {
        return Ok(jobs.iter().map(run).min().unwrap_or(n));
    }
    let chunk = jobs.len().div_ceil(workers);
    let best = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&run).min().unwrap_or(n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .min()
            .unwrap_or(n)
    });
    Ok(best)
}

fn descend(
    f: &crate::field::FieldCtx,
    multiples: &[Vec<Vec<u64>>],
    depth: usize,
    acc: &[u64],
    best: &mut usize,
) {
    if depth == multiples.len() {
        let w = acc.iter().filter(|&&x| x != 0).count();
        if w < *best {
            *best = w;
        }
        return;
    }
    let mut next = acc.to_vec();
    for row in &multiples[depth] {
        for ((o, &a), &m) in next.iter_mut().zip(acc).zip(row) {
            *o = f.add_raw(a, m);
        }
        descend(f, multiples, depth + 1, &next, best);
    }
}

/// Whether every `k x k` minor of the `k x n` matrix is nonzero.
pub fn minors_mds_check(g: &Matrix) -> bool {
    first_singular_minor(g).is_none()
}

/// The lexicographically first column subset with a vanishing minor.
pub fn first_singular_minor(g: &Matrix) -> Option<Vec<usize>> {
    let (k, n) = (g.rows(), g.cols());
    if k > n {
        return Some((0..n).collect());
    }
    let f = g.field();
    let mut buf = vec![0u64; k * k];
    (0..n).combinations(k).find(|cols| {
        for r in 0..k {
            for (j, &c) in cols.iter().enumerate() {
                buf[r * k + j] = g.raw(r, c);
            }
        }
        det_raw(f, k, &mut buf) == 0
    })
}

/// Generator matrix of the dual code: a nullspace basis as rows.
pub fn dual_bruteforce(g: &Matrix) -> Matrix {
    g.nullspace_matrix()
}

/// Singleton defects of a code and of its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectPair {
    pub s_c: usize,
    pub s_dual: usize,
    pub d_c: usize,
    pub d_dual: usize,
}

impl DefectPair {
    /// Both defects equal to `m`.
    pub fn is_m_mds(&self, m: usize) -> bool {
        self.s_c == m && self.s_dual == m
    }
}

pub fn singleton_defects(spec: &TgrsSpec, opts: EnumOptions) -> Result<DefectPair> {
    let (n, k) = (spec.n(), spec.k());
    let g = spec.generator_matrix();
    let dual = dual_bruteforce(&g);
    let d_c = min_distance_bruteforce(&g, opts)?;
    let d_dual = min_distance_bruteforce(&dual, opts)?;
    Ok(DefectPair {
        s_c: n - k + 1 - d_c,
        s_dual: k + 1 - d_dual,
        d_c,
        d_dual,
    })
}

/// Just `S(C)`, skipping the dual.
pub fn singleton_defect(spec: &TgrsSpec, opts: EnumOptions) -> Result<usize> {
    let d = min_distance_bruteforce(&spec.generator_matrix(), opts)?;
    Ok(spec.n() - spec.k() + 1 - d)
}
