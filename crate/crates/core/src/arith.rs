//! Small integer helpers: primality, integer square roots, factorization.

/// Deterministic primality by trial division; adequate for inputs below 2^31.
pub(crate) fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x % 2 == 0 {
        return x == 2;
    }
    let mut d = 3u64;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest s with s*s <= x.
pub(crate) fn isqrt(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut s = (x as f64).sqrt() as u64;
    // Float sqrt can land one off near perfect squares; correct exactly.
    while s.checked_mul(s).map_or(true, |ss| ss > x) {
        s -= 1;
    }
    while (s + 1).checked_mul(s + 1).map_or(false, |ss| ss <= x) {
        s += 1;
    }
    s
}

/// Greatest common divisor; gcd(0, 0) = 0.
pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization by trial division, smallest prime first.
pub(crate) fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            let mut e = 0u32;
            while x % d == 0 {
                x /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&x| is_prime(x)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(2_147_483_649)); // 3 * 715827883
    }

    #[test]
    fn isqrt_exact() {
        for x in 0..2000u64 {
            let s = isqrt(x);
            assert!(s * s <= x && (s + 1) * (s + 1) > x, "x = {x}");
        }
        assert_eq!(isqrt(u32::MAX as u64), 65535);
    }

    #[test]
    fn gcd_small_cases() {
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(35, 64), 1);
        for a in 1..60u64 {
            for b in 1..60u64 {
                let g = gcd(a, b);
                assert!(a % g == 0 && b % g == 0);
                assert_eq!(gcd(a / g, b / g), 1);
            }
        }
    }

    #[test]
    fn factorize_roundtrip() {
        for x in 2..400u64 {
            let f = factorize(x);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, x);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }
}
