/// Non-negative gcd with `gcd(0, n) = |n|`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
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
    a / gcd(a as i64, b as i64) as u64 * b
}

/// Returns `(g, s, t)` with `a·s + b·t = g = gcd(a, b)`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1, 0);
    let (mut old_t, mut t) = (0, 1);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_conventions() {
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(0, -5), 5);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(12, -18), 6);
        assert_eq!(lcm(4, 6), 12);
    }

    #[test]
    fn bezout() {
        for a in -12..12 {
            for b in -12..12 {
                let (g, s, t) = extended_gcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(a * s + b * t, g);
            }
        }
    }
}
