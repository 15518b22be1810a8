use serde::Serialize;

use crate::arrangement::poly::{BiPoly, Poly};
use crate::arrangement::semilattice::SemiLattice;
use crate::exactq::Field;

/// Every invariant compared by the monotonicity checks, plus the
/// polynomials they are read off from.
///
/// `cij[i][j]` (for `j <= i`) is the unsigned coefficient of
/// `s^(d-i) t^(i-j)` in the Whitney polynomial, `doubly[i][j]` the doubly
/// indexed Whitney number of the first kind (indexed by codimensions).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantBundle {
    pub dim: usize,
    pub chi: Poly,
    pub whitney: BiPoly,
    pub cij: Vec<Vec<u64>>,
    #[serde(rename = "wPlus")]
    pub w_plus: Vec<u64>,
    #[serde(rename = "W")]
    pub whitney_second: Vec<u64>,
    pub faces: Vec<u64>,
    #[serde(rename = "r")]
    pub regions: u64,
    pub doubly: Vec<Vec<i64>>,
}

impl InvariantBundle {
    /// The bundle of an arrangement containing its ambient space.
    pub fn zero(d: usize) -> Self {
        Self {
            dim: d,
            chi: Poly::zero(),
            whitney: BiPoly::zero(d),
            cij: (0..=d).map(|i| vec![0; i + 1]).collect(),
            w_plus: vec![0; d + 1],
            whitney_second: vec![0; d + 1],
            faces: vec![0; d + 1],
            regions: 0,
            doubly: vec![vec![0; d + 1]; d + 1],
        }
    }

    pub fn from_lattice<F: Field>(lattice: &SemiLattice<F>) -> Self {
        let d = lattice.dim();
        if lattice.arrangement().has_ambient_member() {
            return Self::zero(d);
        }
        let mut whitney = BiPoly::zero(d);
        let mut doubly = vec![vec![0i64; d + 1]; d + 1];
        let mut whitney_second = vec![0u64; d + 1];
        for x in 0..lattice.len() {
            let dx = lattice.dim_of(x);
            whitney_second[d - dx] += 1;
            let mu = lattice.mobius_from(x);
            for y in lattice.up_set(x).ones() {
                let dy = lattice.dim_of(y);
                whitney.add_to(d - dx, dy, mu[y]);
                doubly[d - dx][d - dy] += mu[y];
            }
        }
        let cij: Vec<Vec<u64>> = (0..=d)
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        let signed = whitney.coeff(d - i, i - j) * if j % 2 == 0 { 1 } else { -1 };
                        u64::try_from(signed).expect("Whitney coefficients alternate in sign")
                    })
                    .collect()
            })
            .collect();
        let w_plus = cij[d].clone();
        let faces: Vec<u64> = cij.iter().map(|row| row.iter().sum()).collect();
        Self {
            dim: d,
            chi: whitney.at_s_zero(),
            whitney,
            regions: faces[d],
            cij,
            w_plus,
            whitney_second,
            faces,
            doubly,
        }
    }

    /// Names of the components where `self <= other` fails.
    pub fn violations_against(&self, other: &Self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, (a, b)) in self.cij.iter().zip(&other.cij).enumerate() {
            for (j, (x, y)) in a.iter().zip(b).enumerate() {
                if x > y {
                    out.push(format!("c[{i}][{j}]: {x} > {y}"));
                }
            }
        }
        let vectors = [
            ("wPlus", &self.w_plus, &other.w_plus),
            ("W", &self.whitney_second, &other.whitney_second),
            ("f", &self.faces, &other.faces),
        ];
        for (name, a, b) in vectors {
            for (k, (x, y)) in a.iter().zip(b.iter()).enumerate() {
                if x > y {
                    out.push(format!("{name}[{k}]: {x} > {y}"));
                }
            }
        }
        if self.regions > other.regions {
            out.push(format!("r: {} > {}", self.regions, other.regions));
        }
        out
    }
}
