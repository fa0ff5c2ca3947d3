//! Scalar abstraction shared by the operator algebra and the dense oracle.
//!
//! Everything that carries coefficients is generic over a real [`Scalar`]
//! `T`; complex values are `Complex<T>`. The exact instantiation uses
//! `Ratio<i64>` (every coefficient that appears is dyadic), the float one
//! `f64`.

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{FromPrimitive, Num};

use crate::pauli::PhaseValue;

pub trait Scalar:
    Num + Neg<Output = Self> + FromPrimitive + Clone + Debug + PartialEq + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + FromPrimitive + Clone + Debug + PartialEq + Send + Sync + 'static
{
}

/// `i^k` as a complex scalar.
pub fn i_pow<T: Scalar>(k: u8) -> Complex<T> {
    match k & 3 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

pub fn from_int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("scalar type cannot represent a small integer")
}

/// `2^k` in `T`.
pub fn pow2<T: Scalar>(k: usize) -> T {
    let two = T::one() + T::one();
    (0..k).fold(T::one(), |acc, _| acc * two.clone())
}

impl PhaseValue {
    pub fn to_complex<T: Scalar>(self) -> Complex<T> {
        match self.phase_exp() {
            Some(k) => i_pow(k),
            None => Complex::new(T::zero(), T::zero()),
        }
    }
}
