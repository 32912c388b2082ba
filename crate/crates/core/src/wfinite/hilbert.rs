use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{Field, Rational, Rationals};
use crate::dynkin::NilpotentFrame;
use crate::envelope::{induced_action, AdaptedAlgebra, EnvElement, Monomial, Pbw};
use crate::error::{Error, Result};
use crate::lie::SuperAlgebraData;
use crate::linalg::{self, Echelon};

/// Filtration dimensions of the twisted `m`-invariants of the Gelfand–Graev module over `Q`,
/// against the series of a free supercommutative algebra on the `g^e` generators (plus an
/// exterior generator of degree 1 when `r` is odd).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HilbertReport {
    pub cap: usize,
    /// `(Kazhdan degree, parity bit)` of each predicted generator.
    pub generators: Vec<(i32, u8)>,
    /// `dim F_k W`, `k = 0..=cap`.
    pub cumulative: Vec<u64>,
    /// `dim F_k W - dim F_{k-1} W`.
    pub graded: Vec<u64>,
    pub predicted: Vec<u64>,
    pub matches: bool,
    /// For odd `r`: whether the odd invariant of degree 1 squares to `½·middle_norm`.
    pub middle_square_is_scalar: Option<bool>,
}

/// `max_k(m_k) + 4`: sees every generator and its first products.
pub fn default_cap(frame: &NilpotentFrame<Rationals>) -> usize {
    let inv = frame.invariants;
    let top = frame.x_degrees[..inv.l]
        .iter()
        .chain(&frame.y_degrees[..inv.q])
        .copied()
        .max()
        .unwrap_or(0);
    (top + 4).max(1) as usize
}

/// Coefficients up to `t^cap` of `Π_even 1/(1-t^d) · Π_odd (1+t^d)`.
pub fn predicted_series(generators: &[(i32, u8)], cap: usize) -> Vec<u64> {
    let mut c = vec![0u64; cap + 1];
    c[0] = 1;
    for &(d, odd) in generators {
        let d = d as usize;
        if odd == 1 {
            for k in (d..=cap).rev() {
                c[k] += c[k - d];
            }
        } else {
            for k in d..=cap {
                c[k] += c[k - d];
            }
        }
    }
    c
}

/// `b · w` for a complement monomial `b` and an element `w` of `Q_χ`.
fn act_monomial(
    pbw: &Pbw<Rationals>,
    s_start: usize,
    chi_s: &[Rational],
    b: &Monomial,
    w: &EnvElement<Rationals>,
) -> EnvElement<Rationals> {
    let f = &Rationals;
    let mut cur = w.clone();
    for &i in b.word().iter().rev() {
        let mut next = EnvElement::zero();
        for (m, c) in &cur.terms {
            next.add_scaled(f, c, &induced_action(pbw, s_start, chi_s, i, m));
        }
        cur = next;
    }
    cur
}

pub fn graded_dimensions_q(
    alg: &SuperAlgebraData<Rationals>,
    frame: &NilpotentFrame<Rationals>,
    cap: usize,
) -> Result<HilbertReport> {
    if cap == 0 {
        return Err(Error::TruncationTooSmall { cap, needed: 1 });
    }
    let f = &Rationals;
    let a = AdaptedAlgebra::new(alg, frame)?;
    let inv = a.invariants;
    let n = a.dim();
    let pbw = Pbw::universal(a.alg.clone());
    let chi_s = a.m_values(&a.chi);
    let complement: Vec<usize> = (0..a.s_start).collect();
    let mut basis = pbw.monomials_up_to(&complement, &a.weights, cap as i32);
    basis.sort_by_key(|m| m.weighted_degree(&a.weights));

    // (x - χ(x)) b for every m-letter x, stacked into one column per basis monomial.
    let images: Vec<Vec<EnvElement<Rationals>>> = crate::par::map(&basis, |b| {
        (a.s_start..n)
            .map(|i| {
                let mut img = induced_action(&pbw, a.s_start, &chi_s, i, b);
                img.add_term(f, b.clone(), f.neg(&chi_s[i - a.s_start]));
                img
            })
            .collect()
    });
    let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
    for col in &images {
        for (k, img) in col.iter().enumerate() {
            for m in img.terms.keys() {
                let next = index.len();
                index.entry((k, m.clone())).or_insert(next);
            }
        }
    }
    let columns: Vec<Vec<Rational>> = images
        .iter()
        .map(|col| {
            let mut v = linalg::zeros(f, index.len());
            for (k, img) in col.iter().enumerate() {
                for (m, c) in &img.terms {
                    v[index[&(k, m.clone())]] = c.clone();
                }
            }
            v
        })
        .collect();

    let mut ech = Echelon::new(*f, index.len());
    let mut cumulative = Vec::with_capacity(cap + 1);
    let mut next = 0;
    for k in 0..=cap as i32 {
        while next < basis.len() && basis[next].weighted_degree(&a.weights) <= k {
            ech.insert(columns[next].clone());
            next += 1;
        }
        cumulative.push((next - ech.rank()) as u64);
    }
    let graded: Vec<u64> = (0..=cap)
        .map(|k| cumulative[k] - if k == 0 { 0 } else { cumulative[k - 1] })
        .collect();

    let mut generators: Vec<(i32, u8)> = frame.x_degrees[..inv.l]
        .iter()
        .map(|d| (d + 2, 0))
        .collect();
    generators.extend(frame.y_degrees[..inv.q].iter().map(|d| (d + 2, 1)));
    if inv.r % 2 == 1 {
        generators.push((1, 1));
    }
    let predicted = predicted_series(&generators, cap);

    let middle_square_is_scalar = match (a.middle, &a.middle_norm) {
        (Some(mid), Some(c)) => {
            // The odd invariants of degree <= 1 form a line; normalize the middle coefficient.
            let upto1 = basis
                .iter()
                .take_while(|m| m.weighted_degree(&a.weights) <= 1)
                .count();
            let mut kernel_rows = Echelon::new(*f, upto1);
            let mat = crate::linalg::Mat::from_cols(*f, index.len(), &columns[..upto1]);
            for v in mat.echelon().null_basis() {
                kernel_rows.insert(v);
            }
            let letter = Monomial::letter(n, mid);
            let pos = basis
                .iter()
                .position(|m| *m == letter)
                .ok_or_else(|| Error::ExtractionFailure("middle letter outside the cap".into()))?;
            let theta = kernel_rows
                .rref()
                .0
                .into_iter()
                .find(|v| !f.is_zero(&v[pos]))
                .ok_or_else(|| Error::ExtractionFailure("no odd invariant of degree 1".into()))?;
            let scale = f.inv(&theta[pos]).expect("nonzero");
            let mut elem = EnvElement::zero();
            for (m, x) in basis[..upto1].iter().zip(&theta) {
                if m.parity(&a.alg.space.parity).is_odd() {
                    elem.add_term(f, m.clone(), f.mul(x, &scale));
                }
            }
            let mut sq = EnvElement::zero();
            for (b, x) in &elem.terms {
                sq.add_scaled(f, x, &act_monomial(&pbw, a.s_start, &chi_s, b, &elem));
            }
            let expected = EnvElement::monomial(f, Monomial::one(n), f.mul(&f.half(), c));
            Some(sq == expected)
        }
        _ => None,
    };

    Ok(HilbertReport {
        cap,
        matches: graded == predicted,
        generators,
        cumulative,
        graded,
        predicted,
        middle_square_is_scalar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, nilpotent_frame};
    use crate::lie::build_q;

    fn report(kind: &str, jt: &str, cap: usize) -> HilbertReport {
        let g = build_q(&kind.parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &jt.parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        graded_dimensions_q(&g, &fr, cap).unwrap()
    }

    #[test]
    fn series_expansion() {
        // (1+t)(1+t^3)/(1-t^4), expanded by hand.
        assert_eq!(
            predicted_series(&[(4, 0), (3, 1), (1, 1)], 8),
            [1, 1, 0, 1, 2, 1, 0, 1, 2]
        );
        assert_eq!(predicted_series(&[(1, 0), (1, 0)], 3), [1, 2, 3, 4]);
    }

    #[test]
    fn osp12_regular() {
        let r = report("osp(1|2)", "jordan:1|2", 8);
        assert_eq!(r.graded, [1, 1, 0, 1, 2, 1, 0, 1, 2]);
        assert!(r.matches);
        assert_eq!(r.middle_square_is_scalar, Some(true));
    }

    #[test]
    fn sl2_regular() {
        let r = report("sl(2|0)", "jordan:2|", 8);
        assert_eq!(r.graded, [1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert!(r.matches);
        assert_eq!(r.middle_square_is_scalar, None);
    }

    #[test]
    fn zero_nilpotent_gives_the_symmetric_superalgebra() {
        // gl(1|1): two even and two odd generators, all of degree 2.
        let r = report("gl(1|1)", "jordan:1|1", 4);
        assert_eq!(r.predicted, [1, 0, 4, 0, 8]);
        assert!(r.matches);
    }
}
