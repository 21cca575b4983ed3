//! Dense univariate polynomials over Z, stored low degree first.
//!
//! The gcd is Brown's modular algorithm: images modulo word-sized primes are
//! combined by CRT and every candidate is confirmed by exact trial division,
//! so the result never depends on a probabilistic argument.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp;

pub(crate) fn trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Nonnegative gcd of the coefficients.
pub(crate) fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

pub(crate) fn div_scalar(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    if c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / c).collect()
}

/// `a / b` when `b` divides `a` exactly in Z[x], otherwise `None`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(!b.is_empty());
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    // cheap rejection on the constant terms
    if !b[0].is_zero() && !a[0].is_multiple_of(&b[0]) {
        return None;
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let top = &r[i + db];
        if top.is_zero() {
            continue;
        }
        let (qi, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[i + j] -= &qi * bj;
            }
        }
        q[i] = qi;
    }
    if r[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Returns `(g, a / g, b / g)` with `g` the gcd in Z[x], normalized to a
/// positive leading coefficient. Both inputs must be nonzero.
pub(crate) fn gcd_cofactors(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(!a.is_empty() && !b.is_empty());
    let ca = content(a);
    let cb = content(b);
    let c = ca.gcd(&cb);
    if a.len() == 1 || b.len() == 1 {
        return (vec![c.clone()], div_scalar(a, &c), div_scalar(b, &c));
    }
    let pa = div_scalar(a, &ca);
    let pb = div_scalar(b, &cb);
    let (g, qa, qb) = primitive_gcd(&pa, &pb);
    let fa = &ca / &c;
    let fb = &cb / &c;
    (scale(&g, &c), scale(&qa, &fa), scale(&qb, &fb))
}

fn support_stride(a: &[BigInt], b: &[BigInt]) -> usize {
    let mut g = 0usize;
    for (i, c) in a.iter().enumerate().chain(b.iter().enumerate()) {
        if !c.is_zero() {
            g = g.gcd(&i);
            if g == 1 {
                break;
            }
        }
    }
    g.max(1)
}

fn compress(a: &[BigInt], stride: usize) -> Vec<BigInt> {
    a.iter().step_by(stride).cloned().collect()
}

fn expand(a: &[BigInt], stride: usize) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); (a.len() - 1) * stride + 1];
    for (i, c) in a.iter().enumerate() {
        out[i * stride] = c.clone();
    }
    out
}

fn normalize_sign(mut g: Vec<BigInt>) -> Vec<BigInt> {
    if g.last().is_some_and(Signed::is_negative) {
        g = neg(&g);
    }
    g
}

fn symmetric_lift(residues: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half = modulus >> 1;
    residues
        .iter()
        .map(|r| if r > &half { r - modulus } else { r.clone() })
        .collect()
}

/// gcd of two primitive polynomials of positive degree.
fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let stride = support_stride(a, b);
    if stride > 1 {
        let (g, qa, qb) = primitive_gcd(&compress(a, stride), &compress(b, stride));
        return (expand(&g, stride), expand(&qa, stride), expand(&qb, stride));
    }
    if a == b {
        let g = normalize_sign(a.to_vec());
        let unit = vec![if g[g.len() - 1] == a[a.len() - 1] {
            BigInt::one()
        } else {
            -BigInt::one()
        }];
        return (g, unit.clone(), unit);
    }
    let lc_a = &a[a.len() - 1];
    let lc_b = &b[b.len() - 1];
    let gamma = lc_a.gcd(lc_b);

    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_lift: Option<Vec<BigInt>> = None;

    for p in modp::primes() {
        if modp::reduce(lc_a, p) == 0 || modp::reduce(lc_b, p) == 0 {
            continue;
        }
        let image = modp::gcd_monic(&modp::reduce_poly(a, p), &modp::reduce_poly(b, p), p);
        let deg = image.len() - 1;
        if deg == 0 {
            return (vec![BigInt::one()], a.to_vec(), b.to_vec());
        }
        if deg > best_deg {
            continue;
        }
        let g_p = modp::reduce(&gamma, p);
        let scaled: Vec<u64> = image.iter().map(|&c| modp::mul_mod(c, g_p, p)).collect();
        if deg < best_deg {
            best_deg = deg;
            acc = scaled.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            last_lift = None;
        } else {
            // CRT: x = acc + modulus * ((image - acc) * modulus^-1 mod p)
            let m_inv = modp::inv_mod(modp::reduce(&modulus, p), p);
            for (x, &r) in acc.iter_mut().zip(&scaled) {
                let cur = modp::reduce(x, p);
                let diff = if r >= cur { r - cur } else { r + p - cur };
                let t = modp::mul_mod(diff, m_inv, p);
                *x += &modulus * BigInt::from(t);
            }
            modulus *= BigInt::from(p);
        }
        let lift = symmetric_lift(&acc, &modulus);
        let stable = last_lift.as_ref() == Some(&lift);
        if stable {
            let cand = normalize_sign(div_scalar(&lift, &content(&lift)));
            if let (Some(qa), Some(qb)) = (div_exact(a, &cand), div_exact(b, &cand)) {
                return (cand, qa, qb);
            }
        }
        last_lift = Some(lift);
    }
    unreachable!("prime iterator is unbounded")
}
