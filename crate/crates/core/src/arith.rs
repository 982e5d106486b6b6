//! Small integer helpers shared by the generator and search code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// gcd of all entries together with `m`.
pub fn gcd_with(values: &[u64], m: u64) -> u64 {
    values.iter().fold(m, |g, &v| gcd(g, v))
}

/// Euler's totient by trial factorization.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut phi = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Units of Z/mZ in increasing order. For m = 1 the ring is trivial and the
/// single residue 0 acts as the unit.
pub fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&u| gcd(u, m) == 1).collect()
}

/// Fold a residue onto `[0, m/2]` using the conjugacy `c ~ m - c`.
#[inline]
pub fn fold(value: u64, m: u64) -> u64 {
    let c = value % m;
    c.min(m - c)
}
