use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::dense::{dim_to_qubits, unitary_deviation, CMatrix, ONE, ZERO};
use crate::error::{Error, Result};

/// Deviation from unitarity tolerated for explicit gate matrices.
pub const UNITARY_TOL: f64 = 1e-9;

/// Named gates plus arbitrary explicit unitaries.
///
/// `Sx` is the principal square root of X, so `Sx·Sx = X` and
/// `Sx·Z·Sx† = -Y`; `Ssx` is the principal fourth root with `Ssx·Ssx = Sx`.
/// Multi-qubit gates list controls first.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    Sx,
    Ssx,
    Cnot,
    Cz,
    Swap,
    Ccz,
    Toffoli,
    Unitary(Arc<CMatrix>),
}

impl GateKind {
    pub const NAMED: [GateKind; 14] = [
        GateKind::I,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::T,
        GateKind::Sx,
        GateKind::Ssx,
        GateKind::Cnot,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::Ccz,
        GateKind::Toffoli,
    ];

    pub fn arity(&self) -> usize {
        match self {
            GateKind::I
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::H
            | GateKind::S
            | GateKind::T
            | GateKind::Sx
            | GateKind::Ssx => 1,
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => 2,
            GateKind::Ccz | GateKind::Toffoli => 3,
            GateKind::Unitary(m) => m.nrows().trailing_zeros() as usize,
        }
    }

    /// Qubit positions that can be permuted without changing the gate.
    /// Returns the length of the leading symmetric group of positions.
    pub fn symmetric_prefix(&self) -> usize {
        match self {
            GateKind::Cz | GateKind::Swap | GateKind::Ccz => self.arity(),
            GateKind::Toffoli => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::T => "T",
            GateKind::Sx => "SX",
            GateKind::Ssx => "SSX",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::Ccz => "CCZ",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Unitary(_) => "U",
        }
    }

    pub fn is_named(&self) -> bool {
        !matches!(self, GateKind::Unitary(_))
    }

    /// Explicit unitary; checked for shape and unitarity.
    pub fn unitary(m: CMatrix) -> Result<GateKind> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        dim_to_qubits(m.nrows())?;
        let deviation = unitary_deviation(&m);
        if deviation > UNITARY_TOL {
            return Err(Error::NonUnitaryGate { deviation });
        }
        Ok(GateKind::Unitary(Arc::new(m)))
    }

    pub fn matrix(&self) -> CMatrix {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let diag = |entries: &[Complex64]| CMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(entries));
        match self {
            GateKind::I => CMatrix::identity(2, 2),
            GateKind::X => CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
            GateKind::Y => CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]),
            GateKind::Z => diag(&[ONE, -ONE]),
            GateKind::H => {
                let s = c(FRAC_1_SQRT_2, 0.0);
                CMatrix::from_row_slice(2, 2, &[s, s, s, -s])
            }
            GateKind::S => diag(&[ONE, c(0.0, 1.0)]),
            GateKind::T => diag(&[ONE, Complex64::from_polar(1.0, FRAC_PI_4)]),
            GateKind::Sx => x_power(0.5),
            GateKind::Ssx => x_power(0.25),
            GateKind::Cnot => permutation(&[0, 1, 3, 2]),
            GateKind::Cz => diag(&[ONE, ONE, ONE, -ONE]),
            GateKind::Swap => permutation(&[0, 2, 1, 3]),
            GateKind::Ccz => diag(&[ONE, ONE, ONE, ONE, ONE, ONE, ONE, -ONE]),
            GateKind::Toffoli => permutation(&[0, 1, 2, 3, 4, 5, 7, 6]),
            GateKind::Unitary(m) => (**m).clone(),
        }
    }

    /// Whether `U Z U†` stays diagonal for every single-qubit Z, i.e. the
    /// matrix has exactly one nonzero entry per column.
    pub fn is_monomial(&self) -> bool {
        let m = self.matrix();
        (0..m.ncols()).all(|c| m.column(c).iter().filter(|v| v.norm() > UNITARY_TOL).count() == 1)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.trim().to_ascii_uppercase().as_str() {
            "I" | "ID" => GateKind::I,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "T" => GateKind::T,
            "SX" | "SQRTX" => GateKind::Sx,
            "SSX" | "SQRTSQRTX" => GateKind::Ssx,
            "CNOT" | "CX" => GateKind::Cnot,
            "CZ" => GateKind::Cz,
            "SWAP" => GateKind::Swap,
            "CCZ" => GateKind::Ccz,
            "TOFFOLI" | "CCX" | "CCNOT" => GateKind::Toffoli,
            other => return Err(Error::Invalid(format!("unknown gate {other:?}"))),
        };
        Ok(kind)
    }
}

impl serde::Serialize for GateKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.is_named() {
            return Err(serde::ser::Error::custom("explicit unitaries are serialized as matrices, not names"));
        }
        s.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for GateKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

/// `X^t` on the principal branch: `P₊ + e^{iπt} P₋`.
fn x_power(t: f64) -> CMatrix {
    let w = Complex64::from_polar(1.0, std::f64::consts::PI * t);
    let half = Complex64::new(0.5, 0.0);
    let a = (ONE + w) * half;
    let b = (ONE - w) * half;
    CMatrix::from_row_slice(2, 2, &[a, b, b, a])
}

/// Permutation matrix sending basis state `j` to `image[j]`.
fn permutation(image: &[usize]) -> CMatrix {
    let mut m = CMatrix::zeros(image.len(), image.len());
    for (j, &i) in image.iter().enumerate() {
        m[(i, j)] = ONE;
    }
    m
}

/// A gate placed on an ordered list of physical qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    kind: GateKind,
    support: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, support: Vec<usize>) -> Result<Gate> {
        if support.len() != kind.arity() {
            return Err(Error::DimensionMismatch {
                expected: kind.arity(),
                found: support.len(),
            });
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("gate {} repeats qubit {}", kind.name(), w[0])));
        }
        Ok(Gate { kind, support })
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn matrix(&self) -> CMatrix {
        self.kind.matrix()
    }

    /// The adjoint gate. Self-inverse named gates stay named.
    pub fn inverse(&self) -> Gate {
        let kind = match &self.kind {
            GateKind::S | GateKind::T | GateKind::Sx | GateKind::Ssx | GateKind::Unitary(_) => {
                GateKind::Unitary(Arc::new(self.kind.matrix().adjoint()))
            }
            named => named.clone(),
        };
        Gate {
            kind,
            support: self.support.clone(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind.name(), self.support)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::max_abs_diff;

    #[test]
    fn named_gates_are_unitary() {
        for kind in GateKind::NAMED {
            let m = kind.matrix();
            assert_eq!(m.nrows(), 1 << kind.arity());
            assert!(unitary_deviation(&m) < 1e-12, "{kind}");
        }
    }

    #[test]
    fn root_x_conventions() {
        let sx = GateKind::Sx.matrix();
        assert!(max_abs_diff(&(&sx * &sx), &GateKind::X.matrix()) < 1e-15);
        let ssx = GateKind::Ssx.matrix();
        assert!(max_abs_diff(&(&ssx * &ssx), &sx) < 1e-15);
        let minus_y = -GateKind::Y.matrix();
        let conj = &sx * GateKind::Z.matrix() * sx.adjoint();
        assert!(max_abs_diff(&conj, &minus_y) < 1e-15);
    }

    #[test]
    fn parse_names() {
        assert_eq!("cnot".parse::<GateKind>().unwrap(), GateKind::Cnot);
        assert_eq!("CX".parse::<GateKind>().unwrap(), GateKind::Cnot);
        assert_eq!("SSX".parse::<GateKind>().unwrap(), GateKind::Ssx);
        assert!("FOO".parse::<GateKind>().is_err());
        for kind in GateKind::NAMED {
            assert_eq!(kind.name().parse::<GateKind>().unwrap(), kind);
        }
    }

    #[test]
    fn explicit_unitary_validation() {
        assert!(GateKind::unitary(GateKind::H.matrix()).is_ok());
        let bad = CMatrix::from_row_slice(2, 2, &[ONE, ONE, ZERO, ONE]);
        assert!(matches!(GateKind::unitary(bad), Err(Error::NonUnitaryGate { .. })));
        assert!(GateKind::unitary(CMatrix::identity(3, 3)).is_err());
        let kind = GateKind::unitary(GateKind::Cz.matrix()).unwrap();
        assert_eq!(kind.arity(), 2);
        assert!(Gate::new(kind, vec![0]).is_err());
    }

    #[test]
    fn gate_support_checks() {
        assert!(Gate::new(GateKind::Cnot, vec![1, 1]).is_err());
        assert!(Gate::new(GateKind::X, vec![0, 1]).is_err());
        let g = Gate::new(GateKind::Toffoli, vec![0, 1, 2]).unwrap();
        assert_eq!(g.to_string(), "TOFFOLI[0, 1, 2]");
    }

    #[test]
    fn inverse_gates() {
        for kind in GateKind::NAMED {
            let g = Gate::new(kind.clone(), (0..kind.arity()).collect()).unwrap();
            let prod = g.matrix() * g.inverse().matrix();
            assert!(max_abs_diff(&prod, &CMatrix::identity(prod.nrows(), prod.ncols())) < 1e-12);
        }
    }

    #[test]
    fn monomial_detection() {
        assert!(GateKind::Cnot.is_monomial());
        assert!(GateKind::T.is_monomial());
        assert!(!GateKind::H.is_monomial());
        assert!(!GateKind::Sx.is_monomial());
    }
}
