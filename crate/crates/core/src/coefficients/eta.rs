// Homogeneous arithmetic for the formal-eta ring.
//
// Degree 0 code a + 2b is a + b*u, degree 1 code c + 2e is eta*(c + e*u);
// both are pairs of bits over F_2[u]/(u^2).

fn bits(code: u64) -> (u64, u64) {
    (code & 1, (code >> 1) & 1)
}

fn pack(a: u64, b: u64) -> u64 {
    (a & 1) | ((b & 1) << 1)
}

pub(super) const SIZE: u64 = 4;
pub(super) const MAX_DEGREE: i32 = 1;

pub(super) fn add(a: u64, b: u64) -> u64 {
    a ^ b
}

pub(super) fn mul(x: u64, y: u64) -> u64 {
    let (a0, a1) = bits(x);
    let (b0, b1) = bits(y);
    pack(a0 & b0, (a0 & b1) ^ (a1 & b0))
}

pub(super) fn frobenius(x: u64) -> u64 {
    x & 1
}

pub(super) fn verschiebung(x: u64) -> u64 {
    let (a, b) = bits(x);
    pack(0, a ^ b)
}

/// `d` on degree 0: `a + bu -> b eta (1 + u)`, returned as a degree-1 code.
pub(super) fn differential0(x: u64) -> u64 {
    let (_, b) = bits(x);
    pack(b, b)
}

pub(super) fn coords(x: u64) -> [u64; 2] {
    let (a, b) = bits(x);
    [a, b]
}

pub(super) fn from_coords(a: u64, b: u64) -> u64 {
    pack(a, b)
}
