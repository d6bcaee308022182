//! Fixed permutation representations.
//!
//! `SZ8_*`: Sz(8) on the 65 points of its ovoid (an involution and an element
//! of order 4 whose product has order 13). `U33_*`: U3(3) on the 28 isotropic
//! points of its Hermitian unital (orders 2 and 6, product of order 7).

pub const SZ8_DEGREE: usize = 65;
pub const SZ8_ORDER: usize = 29_120;

pub const SZ8_A: [u32; 65] = [
    37, 8, 43, 24, 15, 7, 46, 5, 1, 56, 36, 57, 31, 27, 48, 4, 45, 63, 25, 23, 33, 26, 42, 19, 3,
    18, 21, 13, 60, 58, 32, 12, 30, 20, 41, 64, 10, 0, 61, 55, 40, 34, 22, 2, 51, 16, 6, 49, 14,
    47, 52, 44, 50, 62, 59, 39, 9, 11, 29, 54, 28, 38, 53, 17, 35,
];

pub const SZ8_B: [u32; 65] = [
    15, 46, 18, 56, 48, 49, 10, 22, 27, 54, 31, 23, 38, 20, 43, 33, 61, 17, 16, 6, 44, 29, 4, 62,
    14, 63, 24, 64, 52, 5, 34, 19, 45, 55, 39, 36, 58, 50, 1, 60, 59, 8, 35, 26, 57, 28, 12, 40, 7,
    21, 9, 11, 32, 47, 37, 0, 25, 13, 42, 53, 30, 2, 51, 3, 41,
];

pub const U33_DEGREE: usize = 28;
pub const U33_ORDER: usize = 6048;

pub const U33_A: [u32; 28] = [
    22, 17, 10, 15, 21, 19, 13, 7, 27, 9, 2, 16, 18, 6, 23, 3, 11, 1, 12, 5, 24, 4, 0, 14, 20, 25,
    26, 8,
];

pub const U33_B: [u32; 28] = [
    20, 8, 19, 6, 14, 11, 23, 16, 15, 0, 4, 9, 10, 1, 21, 25, 22, 2, 18, 7, 27, 24, 17, 3, 12, 26,
    13, 5,
];
