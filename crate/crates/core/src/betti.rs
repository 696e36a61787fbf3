//! Graded Betti tables determined by a κ-vector, and the Boij–Söderberg
//! inequalities they must satisfy.
//!
//! The auxiliary module has a two-row table with `b_{i,i} = d·C(e,i) − κ_{i−1}`
//! and `b_{i,i+1} = d·C(e,i) − κ_i` (with `κ_{−1} = κ_e = 0`). Subtracting the
//! pure diagram of the first position `m` where the bottom row is nonzero
//! yields, for `m ≤ i ≤ ⌊(e−1)/2⌋`,
//!
//! `κ_i ≤ d·C(e,i) − (d·C(e,m) − κ_m)·(i+1−m)·(m+1)!(e−m)! / ((i+1)!(e−i)!)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::koszul::{binomial, KappaVector};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BettiError {
    #[error("κ_{index} = {value} exceeds d·C(e,{index}) = {ceiling}")]
    InvalidKappa { index: usize, value: usize, ceiling: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub d: usize,
    pub e: usize,
    /// `b_{i,i}` for `i = 0..=e`.
    pub top: Vec<usize>,
    /// `b_{i,i+1}` for `i = 0..=e`.
    pub bottom: Vec<usize>,
    /// The least `i` with `κ_i < d·C(e,i)`.
    pub m: usize,
}

/// `κ_i` with the conventions `κ_{−1} = κ_e = 0`.
fn kappa_at(k: &KappaVector, i: isize) -> usize {
    if i < 0 || i as usize >= k.e {
        0
    } else {
        k.get(i as usize)
    }
}

pub fn betti_table(k: &KappaVector) -> Result<BettiTable, BettiError> {
    let (d, e) = (k.d, k.e);
    let mut top = Vec::with_capacity(e + 1);
    let mut bottom = Vec::with_capacity(e + 1);
    for i in 0..=e {
        let rank = d * binomial(e, i);
        let before = kappa_at(k, i as isize - 1);
        let here = kappa_at(k, i as isize);
        if before > rank {
            return Err(BettiError::InvalidKappa {
                index: i - 1,
                value: before,
                ceiling: rank,
            });
        }
        if here > rank {
            return Err(BettiError::InvalidKappa {
                index: i,
                value: here,
                ceiling: rank,
            });
        }
        top.push(rank - before);
        bottom.push(rank - here);
    }
    let m = bottom.iter().position(|&b| b > 0).expect("b_{e,e+1} = d > 0");
    Ok(BettiTable { d, e, top, bottom, m })
}

impl BettiTable {
    /// Recovers `κ_j = d·C(e,j) − b_{j,j+1}`.
    pub fn kappa(&self) -> KappaVector {
        let entries = (0..self.e)
            .map(|j| self.d * binomial(self.e, j) - self.bottom[j])
            .collect();
        KappaVector::new(self.d, self.e, entries)
    }

    /// `b_{i,i} = b_{e−i, e−i+1}` for all `i`.
    pub fn is_symmetric(&self) -> bool {
        (0..=self.e).all(|i| self.top[i] == self.bottom[self.e - i])
    }
}

impl fmt::Display for BettiTable {
    /// Two rows, with `-` for zero entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |x: usize| if x == 0 { "-".to_string() } else { x.to_string() };
        let width = self
            .top
            .iter()
            .chain(&self.bottom)
            .map(|&x| cell(x).len())
            .chain(std::iter::once((self.e).to_string().len()))
            .max()
            .unwrap_or(1);
        let header: Vec<String> = (0..=self.e).map(|i| format!("{i:>width$}")).collect();
        writeln!(f, "   {}", header.join(" "))?;
        let row = |v: &[usize]| {
            v.iter()
                .map(|&x| format!("{:>width$}", cell(x)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "0: {}", row(&self.top))?;
        write!(f, "1: {}", row(&self.bottom))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// An upper bound on `κ_index`, exact and floored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaBound {
    pub index: usize,
    pub exact: BigRational,
    pub floor: i64,
}

/// The Boij–Söderberg upper bounds on `κ_i` for `m ≤ i ≤ ⌊(e−1)/2⌋`, given
/// the first drop position `m` and the value `κ_m`.
pub fn boij_soderberg_bound(d: usize, e: usize, m: usize, kappa_m: usize) -> Vec<KappaBound> {
    assert!(e >= 1, "e must be positive");
    let last = (e - 1) / 2;
    let ceiling_m = d * binomial(e, m);
    assert!(kappa_m <= ceiling_m, "κ_m exceeds d·C(e,m)");
    let deficit = BigInt::from(ceiling_m - kappa_m);
    let scale = factorial(m + 1) * factorial(e - m);
    (m..=last)
        .map(|i| {
            let num = &deficit * BigInt::from(i + 1 - m) * &scale;
            let den = factorial(i + 1) * factorial(e - i);
            let exact = BigRational::from_integer(BigInt::from(d * binomial(e, i))) - BigRational::new(num, den);
            let floor = exact.floor().to_integer().to_i64().expect("bound fits in i64");
            KappaBound { index: i, exact, floor }
        })
        .collect()
}

/// Why a vector cannot be the κ-vector of a quadric space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotSymmetric {
        index: usize,
    },
    ExceedsCeiling {
        index: usize,
        value: usize,
        ceiling: usize,
    },
    BoijSoderberg {
        index: usize,
        m: usize,
        value: usize,
        bound: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSymmetric { index } => write!(f, "κ_{index} differs from its mirror entry"),
            Violation::ExceedsCeiling { index, value, ceiling } => {
                write!(f, "κ_{index} = {value} exceeds the ceiling {ceiling}")
            }
            Violation::BoijSoderberg { index, m, value, bound } => {
                write!(
                    f,
                    "κ_{index} = {value} exceeds the Boij–Söderberg bound {bound} (drop at m = {m})"
                )
            }
        }
    }
}

/// Checks symmetry, the ceilings `κ_j ≤ d·min(C(e,j), C(e,j+1))` and every
/// Boij–Söderberg inequality. Returns the first violation found.
pub fn check_kappa_admissible(k: &KappaVector) -> Result<(), Violation> {
    let (d, e) = (k.d, k.e);
    for j in 0..e {
        if k.get(j) != k.get(e - 1 - j) {
            return Err(Violation::NotSymmetric {
                index: j.max(e - 1 - j),
            });
        }
    }
    for j in 0..e {
        let ceiling = d * binomial(e, j).min(binomial(e, j + 1));
        if k.get(j) > ceiling {
            return Err(Violation::ExceedsCeiling {
                index: j,
                value: k.get(j),
                ceiling,
            });
        }
    }
    let table = betti_table(k).expect("ceilings already checked");
    if table.m <= (e - 1) / 2 {
        for b in boij_soderberg_bound(d, e, table.m, k.get(table.m)) {
            let value = k.get(b.index);
            if BigRational::from_integer(value.into()) > b.exact {
                return Err(Violation::BoijSoderberg {
                    index: b.index,
                    m: table.m,
                    value,
                    bound: b.floor,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kv(d: usize, entries: &[usize]) -> KappaVector {
        KappaVector::new(d, entries.len(), entries.to_vec())
    }

    #[test]
    fn generic_five_five_table() {
        let t = betti_table(&kv(5, &[5, 25, 50, 25, 5])).unwrap();
        assert_eq!(t.top, vec![5, 20, 25, 0, 0, 0]);
        assert_eq!(t.bottom, vec![0, 0, 0, 25, 20, 5]);
        assert_eq!(t.m, 3);
        assert!(t.is_symmetric());
        assert_eq!(t.kappa(), kv(5, &[5, 25, 50, 25, 5]));
    }

    #[test]
    fn drop_at_first_syzygy() {
        for k3 in [40, 42, 45] {
            let t = betti_table(&kv(5, &[5, 22, k3, 22, 5])).unwrap();
            assert_eq!(t.top, vec![5, 20, 28, 50 - k3, 3, 0]);
            assert_eq!(t.bottom, vec![0, 3, 50 - k3, 28, 20, 5]);
            assert_eq!(t.m, 1);
        }
    }

    #[test]
    fn single_form_table() {
        for r in 0..=4 {
            let t = betti_table(&kv(4, &[r])).unwrap();
            assert_eq!(t.top, vec![4, 4 - r]);
            assert_eq!(t.bottom, vec![4 - r, 4]);
        }
    }

    #[test]
    fn too_large_kappa_rejected() {
        assert_eq!(
            betti_table(&kv(2, &[3])),
            Err(BettiError::InvalidKappa {
                index: 0,
                value: 3,
                ceiling: 2
            })
        );
    }

    #[test]
    fn rendering_uses_dashes() {
        let t = betti_table(&kv(5, &[5, 25, 50, 25, 5])).unwrap();
        let text = t.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[1].split_whitespace().collect::<Vec<_>>(),
            ["0:", "5", "20", "25", "-", "-", "-"]
        );
        assert_eq!(
            lines[2].split_whitespace().collect::<Vec<_>>(),
            ["1:", "-", "-", "-", "25", "20", "5"]
        );
    }

    #[test]
    fn bound_forty_two() {
        let b = boij_soderberg_bound(5, 5, 1, 22);
        assert_eq!(b.len(), 2);
        assert_eq!((b[0].index, b[0].floor), (1, 22));
        assert_eq!((b[1].index, b[1].floor), (2, 42));
    }

    #[test]
    fn zero_deficit_gives_ceiling() {
        let b = boij_soderberg_bound(4, 3, 0, 4);
        assert_eq!(b.iter().map(|x| x.floor).collect::<Vec<_>>(), vec![4, 12]);
        let b = boij_soderberg_bound(5, 5, 1, 25);
        assert_eq!(b.iter().map(|x| x.floor).collect::<Vec<_>>(), vec![25, 50]);
    }

    #[test]
    fn admissibility() {
        assert_eq!(check_kappa_admissible(&kv(5, &[5, 25, 50, 25, 5])), Ok(()));
        assert_eq!(
            check_kappa_admissible(&kv(5, &[5, 22, 43, 22, 5])),
            Err(Violation::BoijSoderberg {
                index: 2,
                m: 1,
                value: 43,
                bound: 42
            })
        );
        assert!(matches!(
            check_kappa_admissible(&kv(3, &[2, 9, 2])),
            Err(Violation::BoijSoderberg {
                index: 1,
                m: 0,
                value: 9,
                bound: 6
            })
        ));
        assert_eq!(
            check_kappa_admissible(&kv(3, &[2, 8, 3])),
            Err(Violation::NotSymmetric { index: 2 })
        );
        assert!(matches!(
            check_kappa_admissible(&kv(3, &[3, 10, 3])),
            Err(Violation::ExceedsCeiling { index: 1, .. })
        ));
    }
}
