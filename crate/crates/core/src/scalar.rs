//! Scalar abstraction shared by the operator and projector code.
//!
//! Everything that only needs ring/field arithmetic (sparse operators,
//! dense matrices, Jucys-Murphy projectors) is generic over [`Scalar`], so the
//! same code runs in exact rational arithmetic or in `f32`/`f64`/complex.
//! The eigensolver additionally needs [`Real`].

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, Num};

pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    /// `num / den` in this type.
    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    /// Squared modulus, converted (lossily for exact types) to `f64`.
    fn abs_sq(&self) -> f64;

    fn to_complex64(&self) -> Complex<f64>;
}

/// Real floating-point scalars accepted by the dense eigensolver.
pub trait Real: Scalar + Float + Copy {
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }
            fn from_frac(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }
            fn abs_sq(&self) -> f64 {
                (*self as f64) * (*self as f64)
            }
            fn to_complex64(&self) -> Complex<f64> {
                Complex::new(*self as f64, 0.0)
            }
        }

        impl Real for $t {
            fn from_f64(v: f64) -> Self {
                v as $t
            }
            fn to_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

// Integer rings: used for Jucys-Murphy matrices and other integer-valued
// operators. `from_frac` truncates, so only exact divisions are meaningful.
macro_rules! impl_int_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }
            fn abs_sq(&self) -> f64 {
                (*self as f64) * (*self as f64)
            }
            fn to_complex64(&self) -> Complex<f64> {
                Complex::new(*self as f64, 0.0)
            }
        }
    };
}

impl_int_scalar!(i64);
impl_int_scalar!(i128);

macro_rules! impl_ratio_scalar {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $t)
            }
            fn from_frac(num: i64, den: i64) -> Self {
                Ratio::new(num as $t, den as $t)
            }
            fn abs_sq(&self) -> f64 {
                let v = ratio_to_f64(self);
                v * v
            }
            fn to_complex64(&self) -> Complex<f64> {
                Complex::new(ratio_to_f64(self), 0.0)
            }
        }
    };
}

impl_ratio_scalar!(i64);
impl_ratio_scalar!(i128);

fn ratio_to_f64<T: Copy + Into<i128>>(r: &Ratio<T>) -> f64 {
    let n: i128 = (*r.numer()).into();
    let d: i128 = (*r.denom()).into();
    n as f64 / d as f64
}

impl<F: Real> Scalar for Complex<F> {
    fn from_int(v: i64) -> Self {
        Complex::new(F::from_int(v), F::zero())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn abs_sq(&self) -> f64 {
        self.norm_sqr().to_f64()
    }
    fn to_complex64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Converts an exact rational to the nearest `f64`.
pub fn exact_to_f64(r: &Ratio<i128>) -> f64 {
    ratio_to_f64(r)
}

/// Sign of a fermionic reordering or a basis phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_scalar<T: Scalar>(self) -> T {
        T::from_int(self.value())
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

/// Binomial coefficient in `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
