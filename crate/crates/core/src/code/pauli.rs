use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The `(x|z)` bit pair of a single-qubit Pauli.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }
}

/// A phase-free tensor product of single-qubit Paulis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        Self(ops)
    }

    pub fn identity(n: usize) -> Self {
        Self(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.0
    }

    /// Binary image `(x_1..x_n | z_1..z_n)`.
    pub fn phi(&self) -> BitVector {
        let n = self.0.len();
        let mut v = BitVector::zeros(2 * n);
        for (i, p) in self.0.iter().enumerate() {
            let (x, z) = p.bits();
            v.set(i, x);
            v.set(n + i, z);
        }
        v
    }

    pub fn phi_inv(e: &BitVector) -> Result<PauliString> {
        if e.len() % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "odd length {} is not an (x|z) vector",
                e.len()
            )));
        }
        let n = e.len() / 2;
        Ok(PauliString(
            (0..n).map(|i| Pauli::from_bits(e.get(i), e.get(n + i))).collect(),
        ))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| match ch {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidArgument(format!("not a Pauli letter: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            let ch = match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn phi(s: &str) -> String {
        let v = s.parse::<PauliString>().unwrap().phi();
        let n = v.len() / 2;
        format!("{}|{}", v.slice(0..n), v.slice(n..2 * n))
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi("Y"), "1|1");
        assert_eq!(phi("III"), "000|000");
        assert_eq!(phi("XZY"), "101|011");
    }

    #[test]
    fn phi_inv_examples() {
        for s in ["Y", "III", "XZY"] {
            let p: PauliString = s.parse().unwrap();
            assert_eq!(PauliString::phi_inv(&p.phi()).unwrap(), p);
        }
        assert!(PauliString::phi_inv(&BitVector::zeros(3)).is_err());
        assert!("XQ".parse::<PauliString>().is_err());
    }

    proptest! {
        #[test]
        fn phi_is_a_bijection(bits in proptest::collection::vec(any::<bool>(), 0..40usize)) {
            let mut bits = bits;
            if bits.len() % 2 == 1 {
                bits.pop();
            }
            let v = BitVector::from_bools(bits);
            let p = PauliString::phi_inv(&v).unwrap();
            prop_assert_eq!(p.phi(), v);
            prop_assert_eq!(PauliString::phi_inv(&p.phi()).unwrap(), p);
        }
    }
}
