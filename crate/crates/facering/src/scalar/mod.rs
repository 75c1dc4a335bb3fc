//! Exact scalars: integers, residues, sparse polynomials, rational functions and
//! the point fields used for specialization.

pub mod coeff;
pub mod field;
pub mod gcd;
pub mod int;
pub mod parse;
pub mod jet;
pub mod poly;
pub mod ratfunc;

pub use coeff::{is_prime, Coeff, Zp};
pub use field::{Field, FromCoeff, Gf2_64, ModP, Rational};
pub use int::Int;
pub use jet::Jet;
pub use poly::{Mono, Poly, Var};
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};

/// Rational functions over the integers: the characteristic-0 function field.
pub type QFunc = RatFunc<Int>;
/// Rational functions over `F_p`.
pub type PFunc = RatFunc<Zp>;

/// Large prime used for modular specializations of characteristic-0 data.
pub const WORK_PRIME: u64 = (1 << 61) - 1;

/// Description of a rational function field `F(transcendentals)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub characteristic: u64,
    pub transcendentals: Vec<Var>,
    pub distinguished: Option<Var>,
}

impl FieldSpec {
    pub fn new(characteristic: u64, transcendentals: Vec<Var>, distinguished: Option<Var>) -> Result<FieldSpec> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::InvalidInput(format!("characteristic {characteristic} is not prime")));
        }
        if let Some(t) = distinguished {
            if !transcendentals.contains(&t) {
                return Err(Error::InvalidInput(format!("distinguished variable {t} is not a transcendental")));
            }
        }
        Ok(FieldSpec { characteristic, transcendentals, distinguished })
    }

    fn t(&self) -> Result<Var> {
        self.distinguished.ok_or(Error::NoDistinguishedVariable)
    }

    /// Degree in the distinguished variable; `None` is minus infinity.
    pub fn deg_t<C: Coeff>(&self, phi: &RatFunc<C>) -> Result<Option<i64>> {
        Ok(phi.degree_in(self.t()?))
    }

    /// Leading coefficient in the distinguished variable.
    pub fn leading_t<C: Coeff>(&self, phi: &RatFunc<C>) -> Result<RatFunc<C>> {
        Ok(phi.leading_in(self.t()?))
    }
}
