//! Scalar arithmetic in ℤ/m for 64-bit moduli.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn submod(a: u64, b: u64, m: u64) -> u64 {
    let a = a % m;
    let b = b % m;
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub fn negmod(a: u64, m: u64) -> u64 {
    submod(0, a, m)
}

/// Reduce a signed integer into [0, m).
#[inline]
pub fn reduce_i128(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Extended gcd over ℤ: returns (g, s, t) with s·a + t·b = g = gcd(a, b) ≥ 0.
pub fn gcdex(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = gcdex(a as i128, m as i128);
    if g != 1 {
        None
    } else {
        Some(reduce_i128(s, m))
    }
}

/// A unit u of ℤ/m with u·a ≡ gcd(a, m) (mod m). Returns 1 for a = 0.
pub fn unit_normalizer(a: u64, m: u64) -> u64 {
    let a = a % m;
    if a == 0 {
        return 1;
    }
    let g = gcd(a, m);
    let mq = m / g;
    if mq == 1 {
        return 1;
    }
    let u0 = inv_mod((a / g) % mq, mq).expect("a/g is coprime to m/g");
    // lift u0 from ℤ/(m/g) to a unit of ℤ/m
    let mut u = u0;
    while gcd(u, m) != 1 {
        u += mq;
    }
    u % m
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as (p, e) pairs in increasing order of p.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
