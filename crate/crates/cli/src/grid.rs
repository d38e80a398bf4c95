//! Grid syntax: `start:stop:step` ranges and comma lists, freely mixed
//! (`0:30:10,33`).

use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("empty grid")]
    Empty,
    #[error("bad number `{0}`")]
    Number(String),
    #[error("bad range `{0}`: expected start:stop:step with step > 0 and stop >= start")]
    Range(String),
    #[error("range `{0}` has more than 10^7 points")]
    TooLarge(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

fn num(s: &str) -> Result<f64, GridError> {
    let v: f64 = s.trim().parse().map_err(|_| GridError::Number(s.trim().to_string()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(GridError::Number(s.trim().to_string()))
    }
}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let pieces: Vec<&str> = part.split(':').collect();
            match pieces.as_slice() {
                [one] => out.push(num(one)?),
                [a, b, step] => {
                    let (a, b, step) = (num(a)?, num(b)?, num(step)?);
                    if !(step > 0.0) || b < a {
                        return Err(GridError::Range(part.to_string()));
                    }
                    // tolerate rounding in (b - a)/step
                    let n = ((b - a) / step + 1e-9).floor();
                    if n > 1e7 {
                        return Err(GridError::TooLarge(part.to_string()));
                    }
                    // a + i·step, not repeated addition, keeps values exact on decimal grids
                    out.extend((0..=n as usize).map(|i| a + i as f64 * step));
                }
                _ => return Err(GridError::Range(part.to_string())),
            }
        }
        if out.is_empty() {
            Err(GridError::Empty)
        } else {
            Ok(Grid(out))
        }
    }
}

/// Integer list in the same syntax; values must be whole and ≥ 1.
pub fn parse_counts(s: &str) -> Result<Vec<u32>, String> {
    let g: Grid = s.parse().map_err(|e: GridError| e.to_string())?;
    g.0.iter()
        .map(|&v| {
            if v >= 1.0 && v.fract() == 0.0 && v <= f64::from(u32::MAX) {
                Ok(v as u32)
            } else {
                Err(format!("`{v}` is not a positive whole number"))
            }
        })
        .collect()
}

/// Comma/range list of positive whole numbers, such as RIS sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct Counts(pub Vec<u32>);

impl FromStr for Counts {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_counts(s).map(Counts)
    }
}
