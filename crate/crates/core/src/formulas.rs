//! Closed-form spanning-tree counts, ratios, effective resistances and
//! Kirchhoff indices for complete and nearly complete bipartite graphs.
//!
//! Every evaluator works in exact rationals with `0^0 = 1`. Negative
//! exponents are evaluated as rational powers; only a zero base raised to a
//! negative power is rejected.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::linalg::{int, Rational};

fn q(x: i64) -> Rational {
    int(x)
}

fn pow(base: Rational, exp: i64) -> Result<Rational> {
    if exp == 0 {
        return Ok(Rational::one());
    }
    if exp < 0 {
        if base.is_zero() {
            return domain("zero raised to a negative power");
        }
        return Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize));
    }
    Ok(num_traits::pow(base, exp as usize))
}

fn ipow(base: i64, exp: i64) -> Result<Rational> {
    pow(q(base), exp)
}

fn choose2(x: i64) -> Rational {
    Rational::new(BigInt::from(x * (x - 1)), BigInt::from(2))
}

/// `n^(n-2)`.
pub fn cayley(n: u64) -> Result<Rational> {
    if n == 0 {
        return domain("Cayley's formula needs n >= 1");
    }
    let n = n as i64;
    ipow(n, n - 2)
}

/// Trees of `K_n` containing a spanning forest with the given component
/// orders; vertices not covered by the listed components are singletons.
pub fn moon_forest(n: u64, component_orders: &[u64]) -> Result<Rational> {
    if n == 0 {
        return domain("forest formula needs n >= 1");
    }
    if component_orders.contains(&0) {
        return domain("component orders must be positive");
    }
    let covered: u64 = component_orders.iter().sum();
    if covered > n {
        return domain(format!("component orders sum to {covered} > n = {n}"));
    }
    let c = component_orders.len() as i64 + (n - covered) as i64;
    let product: Rational = component_orders.iter().map(|&o| q(o as i64)).product();
    Ok(ipow(n as i64, c - 2)? * product)
}

/// `m^(n-1) n^(m-1)`.
pub fn tau_kmn(m: u64, n: u64) -> Result<Rational> {
    if m == 0 || n == 0 {
        return domain("K_{m,n} needs m, n >= 1");
    }
    let (m, n) = (m as i64, n as i64);
    Ok(ipow(m, n - 1)? * ipow(n, m - 1)?)
}

/// `(m+n)^(k-1) (m+n-k) m^(n-k-1) n^(m-k-1)`: trees of `K_{m,n}` containing
/// a fixed `k`-matching.
pub fn tau_matching(m: u64, n: u64, k: u64) -> Result<Rational> {
    if m == 0 || n == 0 || k > m.min(n) {
        return domain(format!(
            "matching count needs 0 <= k <= min(m, n), got m={m} n={n} k={k}"
        ));
    }
    if k == 0 {
        return tau_kmn(m, n);
    }
    let (m, n, k) = (m as i64, n as i64, k as i64);
    Ok(ipow(m + n, k - 1)? * q(m + n - k) * ipow(m, n - k - 1)? * ipow(n, m - k - 1)?)
}

/// `tau_1 / tau_0 = (m+n-1)/(mn)`: the share of trees through one edge.
pub fn edge_share(m: u64, n: u64) -> Result<Rational> {
    if m == 0 || n == 0 {
        return domain("K_{m,n} needs m, n >= 1");
    }
    let (m, n) = (m as i64, n as i64);
    Ok(Rational::new((m + n - 1).into(), (m * n).into()))
}

/// `tau_{k+1} / tau_k = (m+n)(m+n-k-1) / (mn(m+n-k))`.
pub fn ratio_matching(m: u64, n: u64, k: u64) -> Result<Rational> {
    if k < 1 || k + 1 > m.min(n) {
        return domain(format!(
            "matching ratio needs 1 <= k <= min(m, n) - 1, got m={m} n={n} k={k}"
        ));
    }
    let (m, n, k) = (m as i64, n as i64, k as i64);
    Ok(Rational::new(
        ((m + n) * (m + n - k - 1)).into(),
        (m * n * (m + n - k)).into(),
    ))
}

fn check_tree_params(m: u64, n: u64, s: u64, t: u64) -> Result<()> {
    if m == 0 || n == 0 || s > m || t > n {
        return domain(format!(
            "tree sizes need s <= m, t <= n, got m={m} n={n} s={s} t={t}"
        ));
    }
    if (s == 0 && t >= 2) || (s >= 2 && t == 0) {
        return domain(format!("no tree has s={s} X-vertices and t={t} Y-vertices"));
    }
    Ok(())
}

/// `(sn + tm - st) m^(n-t-1) n^(m-s-1)`: trees of `K_{m,n}` containing a
/// fixed tree meeting `s` X-vertices and `t` Y-vertices.
pub fn tau_tree(m: u64, n: u64, s: u64, t: u64) -> Result<Rational> {
    check_tree_params(m, n, s, t)?;
    if s + t <= 1 {
        return tau_kmn(m, n);
    }
    let (m, n, s, t) = (m as i64, n as i64, s as i64, t as i64);
    Ok(q(s * n + t * m - s * t) * ipow(m, n - t - 1)? * ipow(n, m - s - 1)?)
}

/// `tau_{s,t+1} / tau_{s,t} = (sn + (m-s)(t+1)) / (m[sn + (m-s)t])`.
pub fn ratio_tree_t(m: u64, n: u64, s: u64, t: u64) -> Result<Rational> {
    if s < 1 || s > m || t < 1 || t + 1 > n {
        return domain(format!(
            "needs 1 <= s <= m, 1 <= t <= n - 1, got m={m} n={n} s={s} t={t}"
        ));
    }
    let (m, n, s, t) = (m as i64, n as i64, s as i64, t as i64);
    Ok(Rational::new(
        (s * n + (m - s) * (t + 1)).into(),
        (m * (s * n + (m - s) * t)).into(),
    ))
}

/// `tau_{s+1,t} / tau_{s,t} = (tm + (n-t)(s+1)) / (n[tm + (n-t)s])`.
pub fn ratio_tree_s(m: u64, n: u64, s: u64, t: u64) -> Result<Rational> {
    if s < 1 || s + 1 > m || t < 1 || t > n {
        return domain(format!(
            "needs 1 <= s <= m - 1, 1 <= t <= n, got m={m} n={n} s={s} t={t}"
        ));
    }
    let (m, n, s, t) = (m as i64, n as i64, s as i64, t as i64);
    Ok(Rational::new(
        (t * m + (n - t) * (s + 1)).into(),
        (n * (t * m + (n - t) * s)).into(),
    ))
}

/// `tau_{s,t} / tau(K_{m,n})` assembled from the single-edge share and the
/// two ratio families, without using any closed-form count.
pub fn tree_share_telescoped(m: u64, n: u64, s: u64, t: u64) -> Result<Rational> {
    if s < 1 || t < 1 || s > m || t > n {
        return domain(format!(
            "needs 1 <= s <= m, 1 <= t <= n, got m={m} n={n} s={s} t={t}"
        ));
    }
    let mut share = edge_share(m, n)?;
    for i in 1..s {
        share *= ratio_tree_s(m, n, i, 1)?;
    }
    for i in 1..t {
        share *= ratio_tree_t(m, n, s, i)?;
    }
    Ok(share)
}

/// `(mn-m-n+p) (mn-m-n)^(p-1) m^(n-p-1) n^(m-p-1)`: trees of `K_{m,n}`
/// minus a `p`-matching.
pub fn tau_gmnp(m: u64, n: u64, p: u64) -> Result<Rational> {
    if m == 0 || n == 0 || p > m.min(n) {
        return domain(format!(
            "G(m,n,p) needs m, n >= 1 and p <= min(m, n), got m={m} n={n} p={p}"
        ));
    }
    if p == 0 {
        return tau_kmn(m, n);
    }
    let (m, n, p) = (m as i64, n as i64, p as i64);
    let d = m * n - m - n;
    Ok(q(d + p) * ipow(d, p - 1)? * ipow(m, n - p - 1)? * ipow(n, m - p - 1)?)
}

fn check_gmnp_resistance_domain(m: u64, n: u64, p: u64) -> Result<()> {
    if m < 2 || n < 2 {
        return domain(format!(
            "resistance formulas need m, n >= 2, got m={m} n={n}"
        ));
    }
    if p < 1 || p > m.min(n) {
        return domain(format!(
            "resistance formulas need 1 <= p <= min(m, n), got p={p}"
        ));
    }
    if m * n <= m + n {
        return domain(format!(
            "resistance formulas need mn - m - n > 0, got m={m} n={n}"
        ));
    }
    Ok(())
}

/// Effective resistances of `G(m,n,p)` by vertex-pair class, `r1..r11`.
///
/// With `x_i`, `y_j` indexed from 1 and `[p]` the matched indices:
///
/// | class | pair |
/// |---|---|
/// | r1 / r2 | `x_i x_j` / `y_i y_j`, both in `[p]` |
/// | r3 / r4 | `x_i x_j` / `y_i y_j`, both outside `[p]` |
/// | r5 | `x_i y_i`, `i` in `[p]` (the deleted edges) |
/// | r6 | `x_i y_j`, `i != j` both in `[p]` |
/// | r7 / r10 | `x_i x_j` / `y_i y_j`, `i` in `[p]`, `j` outside |
/// | r8 | `x_i y_j`, `i` in `[p]`, `j` outside |
/// | r9 | `x_i y_j`, `i` outside, `j` in `[p]` |
/// | r11 | `x_i y_j`, both outside `[p]` |
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GmnpResistanceTable {
    entries: [Option<Rational>; 11],
}

impl GmnpResistanceTable {
    /// Entry `r_class`, `class` in `1..=11`; `None` when the class is empty.
    pub fn get(&self, class: usize) -> Option<&Rational> {
        self.entries
            .get(class.wrapping_sub(1))
            .and_then(|e| e.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Option<&Rational>)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| (i + 1, e.as_ref()))
    }

    /// The table of `G(n,m,p)`, obtained by exchanging the sides.
    pub fn swapped(&self) -> Self {
        let mut entries = self.entries.clone();
        for (a, b) in [(1, 2), (3, 4), (7, 10), (8, 9)] {
            entries.swap(a - 1, b - 1);
        }
        Self { entries }
    }
}

pub fn gmnp_resistances(m: u64, n: u64, p: u64) -> Result<GmnpResistanceTable> {
    check_gmnp_resistance_domain(m, n, p)?;
    let (mi, ni, pi) = (m as i64, n as i64, p as i64);
    let (m, n, p) = (q(mi), q(ni), q(pi));
    let d = q(mi * ni - mi - ni);
    let dp = &d + &p;
    let one = Rational::one;
    let two = q(2);

    let r1 = &two * (&m - one()) / &d;
    let r2 = &two * (&n - one()) / &d;
    let r3 = &two / &n;
    let r4 = &two / &m;
    let mn_over = &m * &n / (&d * &dp);
    let r5 = (&m + &n) / &d - &mn_over;
    let r6 = (&m + &n - &two) / &d - &mn_over;
    let side_pair = |b: &Rational| {
        // r7 with b = n; r10 with b = m
        (&two * b - one()) / (b * (b - one()))
            + (&p - one()) / (&p * (b - one()) * &d)
            + (b - &p) / (&p * b * (b - one()) * &dp)
    };
    let r7 = side_pair(&n);
    let r10 = side_pair(&m);
    let cross = |a: &Rational| {
        // r8 with a = m; r9 with a = n
        a.recip() + (&p - one()) * (a - one()) / (&p * &d) + (a - &p) * (a - one()) / (&p * a * &dp)
    };
    let r8 = cross(&m);
    let r9 = cross(&n);
    let r11 = m.recip() + n.recip() - &d / (&m * &n * &dp);

    let present = [
        pi >= 2,
        pi >= 2,
        mi - pi >= 2,
        ni - pi >= 2,
        pi >= 1,
        pi >= 2,
        mi > pi,
        ni > pi,
        mi > pi,
        ni > pi,
        mi > pi && ni > pi,
    ];
    let values = [r1, r2, r3, r4, r5, r6, r7, r8, r9, r10, r11];
    let mut entries: [Option<Rational>; 11] = Default::default();
    for (i, v) in values.into_iter().enumerate() {
        if present[i] {
            entries[i] = Some(v);
        }
    }
    Ok(GmnpResistanceTable { entries })
}

/// Class `1..=11` of the vertex pair `(u, v)` in the [`crate::graph::build_gmnp`]
/// layout (`x_i = i - 1`, `y_j = m + j - 1`); `None` for `u == v`.
pub fn gmnp_pair_class(m: usize, p: usize, u: usize, v: usize) -> Option<usize> {
    if u == v {
        return None;
    }
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let side = |w: usize| if w < m { (true, w) } else { (false, w - m) };
    let ((ux, ui), (vx, vi)) = (side(u), side(v));
    let (a, b) = (ui < p, vi < p);
    Some(match (ux, vx) {
        (true, true) => match (a, b) {
            (true, true) => 1,
            (false, false) => 3,
            _ => 7,
        },
        (false, false) => match (a, b) {
            (true, true) => 2,
            (false, false) => 4,
            _ => 10,
        },
        (true, false) => match (a, b) {
            (true, true) if ui == vi => 5,
            (true, true) => 6,
            (true, false) => 8,
            (false, true) => 9,
            (false, false) => 11,
        },
        (false, true) => unreachable!("u < v puts x before y"),
    })
}

/// Closed-form Kirchhoff index of `G(m,n,p)`.
pub fn kf_gmnp(m: u64, n: u64, p: u64) -> Result<Rational> {
    check_gmnp_resistance_domain(m, n, p)?;
    let (mi, ni, pi) = (m as i64, n as i64, p as i64);
    let (m, n, p) = (q(mi), q(ni), q(pi));
    let one = Rational::one;
    let d = q(mi * ni - mi - ni);
    let dp = &d + &p;
    let terms = [
        &m + &n - one(),
        (&p * &p * (&m + &n - q(2)) + q(2) * &p) / &d,
        (&m - &p) * (&m - one()) / &n,
        (&n - &p) * (&n - one()) / &m,
        -(&p * &m * &n / (&d * &dp)),
        &p * (&m - &p) / (&n - one()),
        (&m - &p) * (&p - one()) / ((&n - one()) * &d),
        (&m - &p) * (&n - &p) / (&n * (&n - one()) * &dp),
        &p * (&n - &p) / (&m - one()),
        (&n - &p) * (&p - one()) / ((&m - one()) * &d),
        (&m - &p) * (&n - &p) / (&m * (&m - one()) * &dp),
    ];
    Ok(terms.into_iter().sum())
}

/// Kirchhoff index of `G(m,n,p)` summed from the resistance table: Foster
/// gives `m+n-1` over the edges, and every non-adjacent pair class is
/// weighted by its size.
pub fn kf_gmnp_from_table(m: u64, n: u64, p: u64) -> Result<Rational> {
    let table = gmnp_resistances(m, n, p)?;
    let (mi, ni, pi) = (m as i64, n as i64, p as i64);
    let r = |c: usize| table.get(c).cloned().unwrap_or_else(Rational::zero);
    let mut kf = q(mi + ni - 1);
    kf += choose2(pi) * (r(1) + r(2));
    kf += choose2(mi - pi) * r(3);
    kf += choose2(ni - pi) * r(4);
    kf += q(pi) * r(5);
    kf += q(pi * (mi - pi)) * r(7);
    kf += q(pi * (ni - pi)) * r(10);
    Ok(kf)
}

/// Kirchhoff index of `K_{n,n}` minus a `p`-matching.
pub fn kf_shi_chen(n: u64, p: u64) -> Result<Rational> {
    if n < 3 {
        return domain(format!("needs n >= 3, got n={n}"));
    }
    if p < 1 || p > n {
        return domain(format!("needs 1 <= p <= n, got p={p}"));
    }
    let (n, p) = (n as i64, p as i64);
    if p == n {
        return Ok(Rational::new((5 * n - 6).into(), ((n - 1) * (n - 2)).into()) + q(4 * n + 1));
    }
    let a = 2 * n * n - 5 * n + 2 * p;
    let b = n * n - 2 * n + p;
    Ok(Rational::new((n * p * a).into(), ((n - 2) * b).into())
        + Rational::new(((n - p) * (a + 2)).into(), b.into())
        + q(2 * (n - 1)))
}
