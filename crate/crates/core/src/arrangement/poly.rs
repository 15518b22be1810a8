use std::fmt;

use serde::Serialize;

/// Univariate integer polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i128) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * t + c as i128)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    /// Canonical ascending-degree text, e.g. `2 - 3t + t^2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if mag != 1 || k == 0 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&var);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Bivariate integer polynomial; `grid[i][j]` is the coefficient of
/// `s^i t^j`, both degrees at most `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BiPoly {
    grid: Vec<Vec<i64>>,
}

impl BiPoly {
    pub fn zero(d: usize) -> Self {
        Self {
            grid: vec![vec![0; d + 1]; d + 1],
        }
    }

    pub fn degree_bound(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn coeff(&self, s_deg: usize, t_deg: usize) -> i64 {
        self.grid
            .get(s_deg)
            .and_then(|r| r.get(t_deg))
            .copied()
            .unwrap_or(0)
    }

    pub fn add_to(&mut self, s_deg: usize, t_deg: usize, v: i64) {
        self.grid[s_deg][t_deg] += v;
    }

    pub fn grid(&self) -> &[Vec<i64>] {
        &self.grid
    }

    /// `w(0, t)`.
    pub fn at_s_zero(&self) -> Poly {
        Poly::new(self.grid[0].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().flatten().all(|&c| c == 0)
    }

    /// Text like `5s^2 + 4st - 10s + t^2 - 4t + 5`, ordered by descending
    /// `s` degree then descending `t` degree.
    pub fn to_text(&self) -> String {
        let mut terms: Vec<(usize, usize, i64)> = Vec::new();
        for (i, row) in self.grid.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    terms.push((i, j, c));
                }
            }
        }
        if terms.is_empty() {
            return "0".into();
        }
        terms.sort_by_key(|&(i, j, _)| std::cmp::Reverse((i, j)));
        let mut out = String::new();
        for (i, j, c) in terms {
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let mono = format!("{}{}", power("s", i), power("t", j));
            if c.unsigned_abs() != 1 || mono.is_empty() {
                out.push_str(&c.unsigned_abs().to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.into(),
        _ => format!("{var}^{k}"),
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_text() {
        let chi = Poly::new(vec![2, -3, 1]);
        assert_eq!(chi.to_text(), "2 - 3t + t^2");
        assert_eq!(chi.eval(-1), 6);
        assert_eq!(chi.eval(5), 12);
        let sq = Poly::new(vec![-1, 1]).mul(&Poly::new(vec![-1, 1]));
        assert_eq!(sq, Poly::new(vec![1, -2, 1]));
        assert_eq!(Poly::new(vec![0, 0]).to_text(), "0");
        assert_eq!(Poly::new(vec![0, -1]).to_text(), "-t");
        assert_eq!(chi.add(&Poly::new(vec![-2, 3, -1])), Poly::zero());
    }

    #[test]
    fn bipoly_text() {
        let mut w = BiPoly::zero(2);
        w.add_to(2, 0, 5);
        w.add_to(1, 1, 4);
        w.add_to(1, 0, -10);
        w.add_to(0, 2, 1);
        w.add_to(0, 1, -4);
        w.add_to(0, 0, 5);
        assert_eq!(w.to_text(), "5s^2 + 4st - 10s + t^2 - 4t + 5");
        assert_eq!(w.at_s_zero(), Poly::new(vec![5, -4, 1]));
    }
}
