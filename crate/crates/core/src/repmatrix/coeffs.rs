//! Matrix-element coefficients `A^j_{2p}`, `B^j_{2p-1}`, `C_{2p-1}`,
//! `Ĉ_{2p-1}` and `D_{2p}` evaluated on a tableau.
//!
//! Every coefficient is a ratio of products of brackets whose arguments are
//! sums of l-coordinates. The arguments are assembled as exact half-integers
//! first, so a vanishing factor is detected exactly rather than through
//! rounding: a zero numerator factor makes the coefficient exactly 0, and a
//! zero denominator factor (which only an invalid tableau can produce after
//! that short-circuit) is an error.

use crate::error::{Error, Result};
use crate::patterns::{GtPattern, Half};
use crate::qnum::{qnumber, qnumber_plus, QParam};

const HALF: Half = Half::HALF;
const ONE: Half = Half::ONE;

fn bracket_ratio(num: &[Half], den: &[Half], q: QParam, plus: bool, what: &str) -> Result<f64> {
    let br = |a: Half| {
        if plus {
            qnumber_plus(a.to_f64(), q)
        } else {
            qnumber(a.to_f64(), q)
        }
    };
    if !plus {
        if num.contains(&Half::ZERO) {
            return Ok(0.0);
        }
        if den.contains(&Half::ZERO) {
            return Err(Error::ZeroDenominator(what.to_string()));
        }
    }
    let top: f64 = num.iter().map(|&a| br(a)).product();
    let bottom: f64 = den.iter().map(|&a| br(a)).product();
    Ok(top / bottom)
}

fn sqrt_ratio(num: &[Half], den: &[Half], q: QParam, what: &str) -> Result<f64> {
    let r = bracket_ratio(num, den, q, false, what)?;
    if r < 0.0 {
        return Err(Error::NegativeRadicand { what: what.to_string(), value: r });
    }
    Ok(r.sqrt())
}

fn check_range(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{what}: index out of range")))
    }
}

/// `A^j_{2p}(xi)`, the raising coefficient of `m_{j,2p}` in `T(I_{2p+1,2p})`.
pub fn coeff_a(pattern: &GtPattern, p: usize, j: usize, q: QParam) -> Result<f64> {
    check_range(p >= 1 && 2 * p < pattern.n() && (1..=p).contains(&j), "A^j_{2p}")?;
    let l = pattern.lcoords();
    let lj = l.l(2 * p, j);
    let mut num = Vec::new();
    for &li in l.row(2 * p + 1).iter().chain(l.row(2 * p - 1)) {
        num.push(li + lj);
        num.push(li - lj - ONE);
    }
    let mut den = Vec::new();
    for (i, &li) in l.row(2 * p).iter().enumerate() {
        if i + 1 != j {
            den.extend([li + lj, li - lj, li + lj + ONE, li - lj - ONE]);
        }
    }
    sqrt_ratio(&num, &den, q, "A^j_{2p}")
}

/// `B^j_{2p-1}(xi)`, the raising coefficient of `m_{j,2p-1}` in `T(I_{2p,2p-1})`.
pub fn coeff_b(pattern: &GtPattern, p: usize, j: usize, q: QParam) -> Result<f64> {
    check_range(p >= 2 && 2 * p <= pattern.n() && (1..p).contains(&j), "B^j_{2p-1}")?;
    let l = pattern.lcoords();
    let lj = l.l(2 * p - 1, j);
    let mut num = Vec::new();
    for &li in l.row(2 * p).iter().chain(l.row(2 * p - 2)) {
        num.push(li + lj);
        num.push(li - lj);
    }
    let mut den = Vec::new();
    for (i, &li) in l.row(2 * p - 1).iter().enumerate() {
        if i + 1 != j {
            den.extend([li + lj, li - lj, li + lj - ONE, li - lj - ONE]);
        }
    }
    sqrt_ratio(&num, &den, q, "B^j_{2p-1}")
}

fn c_args(pattern: &GtPattern, p: usize) -> (Vec<Half>, Vec<Half>) {
    let l = pattern.lcoords();
    let num: Vec<Half> = l.row(2 * p).iter().chain(l.row(2 * p - 2)).copied().collect();
    let den: Vec<Half> = l.row(2 * p - 1).iter().flat_map(|&x| [x, x - ONE]).collect();
    (num, den)
}

/// `C_{2p-1}(xi)`, the diagonal coefficient of classical-type `T(I_{2p,2p-1})`.
/// Exactly zero whenever `l_{p,2p} = 0`.
pub fn coeff_c(pattern: &GtPattern, p: usize, q: QParam) -> Result<f64> {
    check_range(p >= 1 && 2 * p <= pattern.n(), "C_{2p-1}")?;
    if pattern.lcoords().l(2 * p, p) == Half::ZERO {
        return Ok(0.0);
    }
    let (num, den) = c_args(pattern, p);
    bracket_ratio(&num, &den, q, false, "C_{2p-1}")
}

/// `Ĉ_{2p-1}(xi)`: `C_{2p-1}` with every bracket replaced by `[.]_+`.
pub fn coeff_chat(pattern: &GtPattern, p: usize, q: QParam) -> Result<f64> {
    check_range(p >= 1 && 2 * p <= pattern.n(), "Ĉ_{2p-1}")?;
    let (num, den) = c_args(pattern, p);
    bracket_ratio(&num, &den, q, true, "Ĉ_{2p-1}")
}

/// `D_{2p}(xi)`, the coefficient of the extra diagonal term of nonclassical
/// `T(I_{2p+1,2p})` on vectors with `m_{p,2p} = 1/2`.
pub fn coeff_d(pattern: &GtPattern, p: usize, q: QParam) -> Result<f64> {
    check_range(p >= 1 && 2 * p < pattern.n(), "D_{2p}")?;
    let l = pattern.lcoords();
    let num: Vec<Half> = l.row(2 * p + 1).iter().chain(l.row(2 * p - 1)).map(|&x| x - HALF).collect();
    let den: Vec<Half> = l.row(2 * p)[..p - 1].iter().flat_map(|&x| [x + HALF, x - HALF]).collect();
    bracket_ratio(&num, &den, q, false, "D_{2p}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{enumerate, Flavor, HighestWeight};

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    fn basis(n: usize, doubled: &[i32], flavor: Flavor) -> Vec<GtPattern> {
        enumerate(&HighestWeight::from_doubled(n, doubled, flavor).unwrap())
    }

    #[test]
    fn a_examples_so3() {
        let b = basis(3, &[2], Flavor::Classical);
        // m_{1,2} = 1 sits at the upper bound: [l_{1,3} - l_{1,2} - 1] = [0]
        assert_eq!(coeff_a(&b[2], 1, 1, q(2.0)).unwrap(), 0.0);
        // m_{1,2} = 0: sqrt([2][1])
        let expect = (2.5f64 * 1.0).sqrt();
        assert!((coeff_a(&b[1], 1, 1, q(2.0)).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn b_example_so5() {
        // xi = {(1,0) | (1,0) | (0) | (0)}: B^1_3 = sqrt([3]), [3] = 5.25 at q = 2.
        // Value 2.29128784747792000329... frozen from a 40-digit evaluation.
        let p = GtPattern::from_doubled(Flavor::Classical, &[vec![2, 0], vec![2, 0], vec![0], vec![0]]).unwrap();
        let v = coeff_b(&p, 2, 1, q(2.0)).unwrap();
        assert!((v - 2.291_287_847_477_92).abs() < 1e-14, "{v}");
        // upper bound reached: m_{1,3} = m_{1,4} = 1
        let top = GtPattern::from_doubled(Flavor::Classical, &[vec![2, 0], vec![2, 0], vec![2], vec![0]]).unwrap();
        assert_eq!(coeff_b(&top, 2, 1, q(2.0)).unwrap(), 0.0);
    }

    #[test]
    fn b_at_upper_bound_so4() {
        for p in basis(4, &[4, 2], Flavor::Classical) {
            if p.m(3, 1) == p.m(4, 1) {
                assert_eq!(coeff_b(&p, 2, 1, q(1.5)).unwrap(), 0.0, "{p}");
            }
        }
    }

    #[test]
    fn c_chat_d_examples() {
        let qq = q(2.0);
        for p in basis(3, &[4], Flavor::Classical) {
            let m = p.m(2, 1).to_f64();
            assert!((coeff_c(&p, 1, qq).unwrap() - qnumber(m, qq)).abs() < 1e-14);
        }
        let nb = basis(3, &[3], Flavor::Nonclassical);
        assert!((coeff_chat(&nb[0], 1, qq).unwrap() - qnumber_plus(0.5, qq)).abs() < 1e-15);
        // l_{1,3} = 3/2 + 1 = 5/2, so D_2 = [2]
        assert!((coeff_d(&nb[0], 1, qq).unwrap() - qnumber(2.0, qq)).abs() < 1e-15);
    }

    #[test]
    fn c_vanishes_on_zero_l() {
        // so_4 (1,0): m_{1,3} = 0 makes the literal formula 0/0.
        for p in basis(4, &[2, 0], Flavor::Classical) {
            assert_eq!(coeff_c(&p, 2, q(1.2)).unwrap(), 0.0);
        }
    }

    #[test]
    fn out_of_range_indices() {
        let b = basis(3, &[2], Flavor::Classical);
        assert!(coeff_a(&b[0], 2, 1, q(2.0)).is_err());
        assert!(coeff_a(&b[0], 1, 2, q(2.0)).is_err());
        assert!(coeff_b(&b[0], 1, 1, q(2.0)).is_err());
        assert!(coeff_c(&b[0], 2, q(2.0)).is_err());
        assert!(coeff_d(&b[0], 0, q(2.0)).is_err());
    }

    #[test]
    fn a_b_nonnegative_on_valid_patterns() {
        for qq in [q(1.2), q(2.0), q(0.7)] {
            for (n, w, f) in [
                (5, vec![4, 2], Flavor::Classical),
                (6, vec![3, 1, -1], Flavor::Classical),
                (5, vec![5, 3], Flavor::Nonclassical),
                (6, vec![5, 3, 1], Flavor::Nonclassical),
            ] {
                for p in basis(n, &w, f) {
                    for pp in 1..=(n - 1) / 2 {
                        for j in 1..=pp {
                            assert!(coeff_a(&p, pp, j, qq).unwrap() >= 0.0);
                        }
                    }
                    for pp in 2..=n / 2 {
                        for j in 1..pp {
                            assert!(coeff_b(&p, pp, j, qq).unwrap() >= 0.0);
                        }
                    }
                }
            }
        }
    }
}
