//! Truncated power series in `x`, `y`, `u` over GF(2) with `u^2 = xu`.
//!
//! A series is `P + u Q` with `P, Q` in `Z2[x, y]`. Each homogeneous piece of
//! `P` or `Q` is a bit vector over the monomials `x^(D-2j) y^j`, so
//! multiplying by `x^a y^b` is a shift by `b`.

use crate::f2core::BitVector;
use crate::grassmann::ambient_len;
use crate::wcalg::{WMonomial, WPoly};

/// Homogeneous pieces `0..len` of a polynomial in `x, y`.
type Graded = Vec<BitVector>;

fn graded_zero(len: usize) -> Graded {
    (0..len).map(|d| BitVector::zeros(ambient_len(d))).collect()
}

fn graded_mul(a: &Graded, b: &Graded, len: usize) -> Graded {
    let mut out = graded_zero(len);
    for (d1, pa) in a.iter().enumerate().take(len) {
        if pa.is_zero() {
            continue;
        }
        for (d2, pb) in b.iter().enumerate().take(len - d1) {
            if pb.is_zero() {
                continue;
            }
            for j in pa.ones() {
                out[d1 + d2].xor_shifted(pb, j);
            }
        }
    }
    out
}

fn graded_add(a: &mut Graded, b: &Graded) {
    for (pa, pb) in a.iter_mut().zip(b) {
        *pa ^= pb;
    }
}

/// `x * a`, truncated to `len` pieces.
fn graded_times_x(a: &Graded, len: usize) -> Graded {
    let mut out = graded_zero(len);
    for (d, p) in a.iter().enumerate() {
        if d + 1 < len {
            out[d + 1].xor_shifted(p, 0);
        }
    }
    out
}

/// Frobenius `a -> a^2`, truncated to `len` pieces.
fn graded_square(a: &Graded, len: usize) -> Graded {
    let mut out = graded_zero(len);
    for (d, p) in a.iter().enumerate() {
        if 2 * d >= len {
            break;
        }
        for j in p.ones() {
            out[2 * d].flip(2 * j);
        }
    }
    out
}

/// Series truncated above total degree `cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    cutoff: usize,
    /// Degrees `0..=cutoff`.
    free: Graded,
    /// `Q` in degrees `0..cutoff`; `u Q` has total degree one higher.
    ublk: Graded,
}

impl Series {
    pub fn zero(cutoff: usize) -> Self {
        Series {
            cutoff,
            free: graded_zero(cutoff + 1),
            ublk: graded_zero(cutoff),
        }
    }

    pub fn one(cutoff: usize) -> Self {
        Series::from_terms(cutoff, [WMonomial::new(0, false, 0)])
    }

    /// Sum of monomials; terms above the cutoff are dropped.
    pub fn from_terms(cutoff: usize, terms: impl IntoIterator<Item = WMonomial>) -> Self {
        let mut s = Series::zero(cutoff);
        for m in terms {
            s.add_monomial(m);
        }
        s
    }

    pub fn add_monomial(&mut self, m: WMonomial) {
        let d = m.degree();
        if d > self.cutoff {
            return;
        }
        let g = m.g_part();
        if m.u {
            self.ublk[d - 1].flip(g.ambient_index());
        } else {
            self.free[d].flip(g.ambient_index());
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.ublk).all(BitVector::is_zero)
    }

    /// Constant term.
    pub fn constant(&self) -> bool {
        self.free[0].get(0)
    }

    /// Homogeneous piece of total degree `d <= cutoff`.
    pub fn part(&self, d: usize) -> WPoly {
        assert!(d <= self.cutoff);
        let mut p = WPoly::zero(d);
        p.free = self.free[d].clone();
        if d > 0 {
            p.ublk = self.ublk[d - 1].clone();
        }
        p
    }

    pub fn add(&self, other: &Series) -> Series {
        assert_eq!(self.cutoff, other.cutoff);
        let mut out = self.clone();
        graded_add(&mut out.free, &other.free);
        graded_add(&mut out.ublk, &other.ublk);
        out
    }

    /// `(P1 + uQ1)(P2 + uQ2) = P1 P2 + u(P1 Q2 + Q1 P2 + x Q1 Q2)`.
    pub fn mul(&self, other: &Series) -> Series {
        assert_eq!(self.cutoff, other.cutoff);
        let k = self.cutoff;
        let free = graded_mul(&self.free, &other.free, k + 1);
        let mut ublk = graded_mul(&self.free, &other.ublk, k);
        graded_add(&mut ublk, &graded_mul(&self.ublk, &other.free, k));
        let qq = graded_mul(&self.ublk, &other.ublk, k);
        graded_add(&mut ublk, &graded_times_x(&qq, k));
        Series { cutoff: k, free, ublk }
    }

    /// `(P + uQ)^2 = P^2 + u x Q^2`.
    pub fn square(&self) -> Series {
        let k = self.cutoff;
        Series {
            cutoff: k,
            free: graded_square(&self.free, k + 1),
            ublk: graded_times_x(&graded_square(&self.ublk, k), k),
        }
    }

    pub fn pow(&self, mut e: u64) -> Series {
        let mut base = self.clone();
        let mut acc = Series::one(self.cutoff);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Inverse of a series with constant term one: for `f = 1 + h`,
    /// `f^(-1) = (1 + h)(1 + h^2)(1 + h^4)...` since `(1 + h) * that = 1 + h^(2^s)`.
    pub fn inverse(&self) -> Option<Series> {
        if !self.constant() {
            return None;
        }
        let one = Series::one(self.cutoff);
        let mut h = self.add(&one);
        let mut acc = one.clone();
        while !h.is_zero() {
            acc = acc.mul(&one.add(&h));
            h = h.square();
        }
        Some(acc)
    }

    /// `self^e` for any integer `e`; negative powers invert the positive power.
    pub fn powi(&self, e: i64) -> Option<Series> {
        let p = self.pow(e.unsigned_abs());
        if e < 0 {
            p.inverse()
        } else {
            Some(p)
        }
    }
}
