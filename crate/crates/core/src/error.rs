use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    DependentRows,
    RankMismatch { sub: usize, sup: usize },
    NotSublattice,
    /// The rational kernel of a face's normal pair is not of codimension two.
    FaceKernel { expected: usize, found: usize },
    ParallelFaceNormals,
    DirectionMismatch,
    DuplicateTorus(usize, usize),
    EmptyArrangement,
    NotInvariant { generator: usize, element: usize },
    NonIntegralMultiplicity { irrep: String },
    NegativeMultiplicity { irrep: String },
    NotEquivariant { generator: usize, p: usize, q: usize },
    NegativeBetti { degree: usize },
    UnknownClass(String),
    Group(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DependentRows => f.write_str("basis rows are linearly dependent"),
            Error::RankMismatch { sub, sup } => {
                write!(f, "lattice ranks differ ({sub} vs {sup})")
            }
            Error::NotSublattice => f.write_str("lattice is not contained in the super-lattice"),
            Error::FaceKernel { expected, found } => write!(
                f,
                "face normals have a rational kernel of dimension {found}, expected {expected}"
            ),
            Error::ParallelFaceNormals => f.write_str("face normals n and k are parallel or zero"),
            Error::DirectionMismatch => f.write_str("tori have different direction lattices"),
            Error::DuplicateTorus(a, b) => write!(f, "tori {a} and {b} coincide"),
            Error::EmptyArrangement => f.write_str("arrangement is empty"),
            Error::NotInvariant { generator, element } => write!(
                f,
                "generator {generator} does not map torus {element} into the arrangement"
            ),
            Error::NonIntegralMultiplicity { irrep } => {
                write!(f, "multiplicity of {irrep} is not an integer")
            }
            Error::NegativeMultiplicity { irrep } => {
                write!(f, "multiplicity of {irrep} is negative")
            }
            Error::NotEquivariant { generator, p, q } => write!(
                f,
                "d1 on E1[{p},{q}] does not commute with generator {generator}"
            ),
            Error::NegativeBetti { degree } => {
                write!(f, "inconsistent input: Betti number b{degree} would be negative")
            }
            Error::UnknownClass(s) => write!(f, "unknown conjugacy class {s}"),
            Error::Group(s) => write!(f, "group error: {s}"),
        }
    }
}
