//! Polynomial arithmetic over Z/p, used for modulus construction and
//! extension-field element operations.
//!
//! Polynomials are coefficient vectors, constant term first, with no
//! trailing zeros (the zero polynomial is the empty vector).  The prime p
//! is passed alongside each operation; coefficients are always reduced
//! modulo p.

pub(crate) type Zp = Vec<u64>;

pub(crate) fn trim(v: &mut Zp) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn deg(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

fn inv_mod_p(p: u64, a: u64) -> u64 {
    // Fermat: a^(p-2) mod p, p prime, a != 0.
    debug_assert!(a % p != 0);
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
pub(crate) fn add(p: u64, a: &[u64], b: &[u64]) -> Zp {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(p: u64, a: &[u64], b: &[u64]) -> Zp {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(p: u64, a: &[u64], b: &[u64]) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of a by b (b nonzero).
pub(crate) fn divrem(p: u64, a: &[u64], b: &[u64]) -> (Zp, Zp) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(p, b[db]);
    let mut rem: Zp = a.to_vec();
    trim(&mut rem);
    let mut quot: Zp = match deg(&rem) {
        Some(da) if da >= db => vec![0u64; da - db + 1],
        _ => return (Vec::new(), rem),
    };
    while deg(&rem).map_or(false, |d| d >= db) {
        let d = rem.len() - 1;
        let coef = rem[d] * lead_inv % p;
        let shift = d - db;
        quot[shift] = coef;
        for (j, &bc) in b.iter().enumerate() {
            rem[shift + j] = (rem[shift + j] + p - coef * bc % p) % p;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(p: u64, a: &[u64], m: &[u64]) -> Zp {
    divrem(p, a, m).1
}

/// Monic gcd.
pub(crate) fn gcd(p: u64, a: &[u64], b: &[u64]) -> Zp {
    let mut x: Zp = a.to_vec();
    let mut y: Zp = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(p, &x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        if lead != 1 {
            let inv = inv_mod_p(p, lead);
            for c in &mut x {
                *c = *c * inv % p;
            }
        }
    }
    x
}

/// base^exp mod m.
pub(crate) fn pow_mod(p: u64, base: &[u64], mut exp: u64, m: &[u64]) -> Zp {
    let mut acc: Zp = vec![1];
    let mut b = rem(p, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(p, &mul(p, &acc, &b), m);
        }
        b = rem(p, &mul(p, &b, &b), m);
        exp >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial of degree n >= 1
/// over Z/p: f is irreducible iff X^(p^n) == X mod f and, for every prime
/// divisor r of n, gcd(X^(p^(n/r)) - X mod f, f) is constant.  All
/// exponents p^k here are at most p^n < 2^31, so they fit in u64.
pub(crate) fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let n = match deg(f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    debug_assert_eq!(*f.last().unwrap(), 1, "irreducibility test expects a monic input");
    if n == 1 {
        return true;
    }
    let x: Zp = vec![0, 1];
    let q = p.pow(n as u32);
    if sub(p, &pow_mod(p, &x, q, f), &x) != Vec::<u64>::new() {
        return false;
    }
    let mut m = n;
    let mut divs = Vec::new();
    let mut d = 2usize;
    while d * d <= m {
        if m % d == 0 {
            divs.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        divs.push(m);
    }
    for r in divs {
        let e = p.pow((n / r) as u32);
        let g = gcd(p, &sub(p, &pow_mod(p, &x, e, f), &x), f);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The canonical modulus for GF(p^n): monic X^n + c, where the lower
/// coefficient tuple c = (c_0, ..., c_{n-1}) is scanned in order of the
/// integer c_0 + c_1*p + ... + c_{n-1}*p^(n-1), and the first irreducible
/// candidate wins.  For n = 1 this yields the trivial modulus X.
pub(crate) fn find_irreducible(p: u64, n: u32) -> Zp {
    let n = n as usize;
    let total = p.pow(n as u32);
    let mut k = 0u64;
    loop {
        debug_assert!(k < total, "no irreducible of degree {n} over Z/{p} found");
        let mut f = vec![0u64; n + 1];
        let mut rest = k;
        for c in f.iter_mut().take(n) {
            *c = rest % p;
            rest /= p;
        }
        f[n] = 1;
        if is_irreducible(p, &f) {
            return f;
        }
        k += 1;
    }
}
