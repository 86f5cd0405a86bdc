//! Sparse multivariate polynomials over the Fock ring P_k, the abstract invariant ring S_k and
//! free weighted rings, with the distinguished generators and operators acting on them.

mod monomial;
mod polynomial;
mod ring;

pub use monomial::{monomials_in_vars, monomials_of_degree, Monomial, VarSet};
pub use polynomial::Polynomial;
pub use ring::{invariant_var, rhat, what, FockVar, FreeRing, InvariantVar, Ring, RingSpec};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn fock_of<C: Scalar>(p: &Polynomial<C>) -> Result<RingSpec> {
    p.ring()
        .spec()
        .ok_or_else(|| Error::InvalidArgument(format!("expected a Fock ring, got {}", p.ring())))
}

/// Δ_ij = Σ_α ∂²/∂z(α,i)∂z(α,j).
pub fn laplacian<C: Scalar>(p: &Polynomial<C>, i: usize, j: usize) -> Result<Polynomial<C>> {
    let s = fock_of(p)?;
    s.checked_w(i)?;
    s.checked_w(j)?;
    let mut out = Polynomial::zero(p.ring());
    for alpha in 1..=s.n {
        out = &out + &p.partial(s.z(alpha, i)).partial(s.z(alpha, j));
    }
    Ok(out)
}

/// r_ij = Σ_α z(α,i) z(α,j).
pub fn r_gen<C: Scalar>(s: RingSpec, i: usize, j: usize) -> Result<Polynomial<C>> {
    s.checked_w(i)?;
    s.checked_w(j)?;
    let ring = Ring::Fock(s);
    let mut out = Polynomial::zero(&ring);
    for alpha in 1..=s.n {
        let m = Monomial::var(s.nvars(), s.z(alpha, i)).mul_var(s.z(alpha, j));
        out.add_term(m, C::one());
    }
    Ok(out)
}

/// q_α = Σ_i z(α,i) w_i.
pub fn q_gen<C: Scalar>(s: RingSpec, alpha: usize) -> Result<Polynomial<C>> {
    s.checked_z(alpha, 1)?;
    let ring = Ring::Fock(s);
    let mut out = Polynomial::zero(&ring);
    for i in 1..=s.k {
        out.add_term(Monomial::var(s.nvars(), s.z(alpha, i)).mul_var(s.w(i)), C::one());
    }
    Ok(out)
}

/// c_j = Σ_i r_ij w_i.
pub fn c_gen<C: Scalar>(s: RingSpec, j: usize) -> Result<Polynomial<C>> {
    s.checked_w(j)?;
    let mut out = Polynomial::zero(&Ring::Fock(s));
    for i in 1..=s.k {
        out = &out + &r_gen::<C>(s, i, j)?.mul_var(s.w(i));
    }
    Ok(out)
}

fn check_tuple(t: &[usize], max: usize, what: &str) -> Result<()> {
    if t.windows(2).any(|w| w[0] >= w[1]) || t.iter().any(|&x| x == 0 || x > max) {
        return Err(Error::IndexOutOfRange(format!("{what} {t:?} is not strictly increasing in 1..={max}")));
    }
    Ok(())
}

/// Determinant of the submatrix of (z(α,i)) with rows `rows` and columns `cols`.
pub fn minor<C: Scalar>(s: RingSpec, rows: &[usize], cols: &[usize]) -> Result<Polynomial<C>> {
    check_tuple(rows, s.n, "row tuple")?;
    check_tuple(cols, s.k, "column tuple")?;
    if rows.len() != cols.len() {
        return Err(Error::InvalidArgument("minor needs |I| = |J|".into()));
    }
    let ring = Ring::Fock(s);
    let mut out = Polynomial::zero(&ring);
    for (perm, sign) in permutations(rows.len()) {
        let mut m = Monomial::one(s.nvars());
        for (t, &p) in perm.iter().enumerate() {
            m = m.mul_var(s.z(rows[p], cols[t]));
        }
        out.add_term(m, C::from_int(sign));
    }
    Ok(out)
}

/// All permutations of 0..len with their signs.
pub fn permutations(len: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..len).collect();
    heap(len, &mut cur, 1, &mut out);
    out
}

fn heap(k: usize, a: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) -> i64 {
    if k <= 1 {
        out.push((a.clone(), sign));
        return sign;
    }
    let mut sign = heap(k - 1, a, sign, out);
    for i in 0..k - 1 {
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
        sign = heap(k - 1, a, -sign, out);
    }
    sign
}

/// Evaluates an element of S_k in P_k: r̂(i,j) ↦ r_ij, ŵ(i) ↦ w_i.
pub fn sk_evaluate<C: Scalar>(p: &Polynomial<C>, s: RingSpec) -> Result<Polynomial<C>> {
    let Ring::Invariant { k } = p.ring() else {
        return Err(Error::InvalidArgument(format!("expected S_k, got {}", p.ring())));
    };
    if *k != s.k {
        return Err(Error::RingMismatch {
            left: p.ring().to_string(),
            right: Ring::Fock(s).to_string(),
        });
    }
    let target = Ring::Fock(s);
    let images = (0..p.ring().nvars())
        .map(|v| match invariant_var(*k, v) {
            InvariantVar::R { i, j } => r_gen(s, i, j),
            InvariantVar::W { i } => Ok(Polynomial::var(&target, s.w(i))),
        })
        .collect::<Result<Vec<_>>>()?;
    p.substitute(&target, &images)
}

/// X_ab · p = Σ_i ( z(b,i) ∂p/∂z(a,i) − z(a,i) ∂p/∂z(b,i) ).
pub fn son_act<C: Scalar>(a: usize, b: usize, p: &Polynomial<C>) -> Result<Polynomial<C>> {
    let s = fock_of(p)?;
    if !(1 <= a && a < b && b <= s.n) {
        return Err(Error::InvalidArgument(format!("so(n) generator needs 1 <= a < b <= n, got ({a},{b})")));
    }
    let mut out = Polynomial::zero(p.ring());
    for i in 1..=s.k {
        out = &out + &p.partial(s.z(a, i)).mul_var(s.z(b, i));
        out = &out - &p.partial(s.z(b, i)).mul_var(s.z(a, i));
    }
    Ok(out)
}
