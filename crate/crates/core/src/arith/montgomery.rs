//! Montgomery multiplication for odd moduli below 2^63 and 2^127.

const LO64: u128 = u64::MAX as u128;

/// Full 128x128 -> 256 bit product as (hi, lo).
#[inline]
pub(crate) fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = (a >> 64, a & LO64);
    let (b1, b0) = (b >> 64, b & LO64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & LO64) + (p10 & LO64);
    let lo = (p00 & LO64) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Residues modulo an odd `n < 2^127`, kept in Montgomery form `x * 2^128 mod n`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Mont128 {
    n: u128,
    ninv: u128,
    r2: u128,
    one: u128,
}

impl Mont128 {
    pub fn new(n: u128) -> Self {
        assert!(n & 1 == 1 && n >> 127 == 0, "modulus must be odd and below 2^127");
        let mut x = n;
        for _ in 0..7 {
            x = x.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(x)));
        }
        let one = (u128::MAX % n + 1) % n;
        // r2 = one * 2^128 mod n, by doubling.
        let mut r2 = one;
        for _ in 0..128 {
            r2 <<= 1;
            if r2 >= n {
                r2 -= n;
            }
        }
        Mont128 {
            n,
            ninv: x.wrapping_neg(),
            r2,
            one,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.n
    }

    #[inline]
    pub fn one(&self) -> u128 {
        self.one
    }

    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.ninv);
        let (mh, ml) = mul_wide(m, self.n);
        let carry = lo.overflowing_add(ml).1 as u128;
        let t = hi + mh + carry;
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    pub fn to_mont(&self, x: u128) -> u128 {
        self.mul(x % self.n, self.r2)
    }

    #[cfg(test)]
    pub fn from_mont(&self, x: u128) -> u128 {
        self.redc(0, x)
    }

    pub fn pow(&self, base: u128, mut e: u128) -> u128 {
        let mut acc = self.one;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}

/// Residues modulo an odd `n < 2^63` in Montgomery form `x * 2^64 mod n`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Mont64 {
    n: u64,
    ninv: u64,
    r2: u64,
}

impl Mont64 {
    pub fn new(n: u64) -> Self {
        assert!(n & 1 == 1 && n >> 63 == 0, "modulus must be odd and below 2^63");
        let mut x = n;
        for _ in 0..6 {
            x = x.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(x)));
        }
        let r2 = ((1u128 << 64) % n as u128 * ((1u128 << 64) % n as u128) % n as u128) as u64;
        Mont64 {
            n,
            ninv: x.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let m = (t as u64).wrapping_mul(self.ninv);
        let u = ((t + m as u128 * self.n as u128) >> 64) as u64;
        if u >= self.n {
            u - self.n
        } else {
            u
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    pub fn to_mont(&self, x: u64) -> u64 {
        self.mul(x % self.n, self.r2)
    }

    pub fn from_mont(&self, x: u64) -> u64 {
        self.mul(x, 1)
    }

    pub fn pow(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = self.to_mont(1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}
