// Independent oracles: nothing here touches the sieve table.
#![allow(dead_code)]

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Prime factorization by trial division.
pub fn td_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn td_phi(n: u64) -> u64 {
    td_factor(n)
        .iter()
        .map(|&(p, a)| (p - 1) * p.pow(a - 1))
        .product()
}

pub fn td_lambda(n: u64) -> u64 {
    td_factor(n).iter().fold(1, |acc, &(p, a)| {
        let l = if p == 2 && a >= 3 {
            1 << (a - 2)
        } else {
            (p - 1) * p.pow(a - 1)
        };
        lcm(acc, l)
    })
}

pub fn valuation(q: u64, mut n: u64) -> u32 {
    let mut v = 0;
    while n % q == 0 {
        n /= q;
        v += 1;
    }
    v
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u64::from(u32::MAX) {
        return (a % m) * (b % m) % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// `#{1 <= a <= n : gcd(a, n) = 1}`.
pub fn brute_phi(n: u64) -> u64 {
    (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
}

/// Exponent of `(Z/nZ)^*`: the lcm of all element orders.
pub fn brute_lambda(n: u64) -> u64 {
    if n <= 2 {
        return 1;
    }
    if n <= 30 {
        // literal definition: smallest m with a^m = 1 for every unit a
        return (1..)
            .find(|&m| (1..n).filter(|&a| gcd(a, n) == 1).all(|a| pow_mod(a, m, n) == 1))
            .unwrap();
    }
    let mut l = 1;
    for a in 2..n {
        if gcd(a, n) != 1 || pow_mod(a, l, n) == 1 {
            continue;
        }
        let mut order = 1;
        let mut x = a % n;
        while x != 1 {
            x = mul_mod(x, a, n);
            order += 1;
        }
        l = lcm(l, order);
    }
    l
}

/// `π(x)` for every `x <= limit`, via the sieve of Eratosthenes.
pub fn eratosthenes(limit: usize) -> Vec<bool> {
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    if limit >= 1 {
        is_prime[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is_prime[i] {
            let mut j = i * i;
            while j <= limit {
                is_prime[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is_prime
}
