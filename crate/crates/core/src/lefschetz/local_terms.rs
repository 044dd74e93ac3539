//! Local contributions of the holomorphic Lefschetz formula for an involution
//! whose differential is `-1` on the normal directions of every fixed component.

use serde::Serialize;

use crate::error::Result;
use crate::exalg::binomial;
use crate::lefschetz::graded::{ch_rank2_c1zero, ch_trivial_determinant, todd_surface, GradedClass};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sheaf {
    O,
    Omega1,
    Omega2,
}

impl Sheaf {
    pub const ALL: [Sheaf; 3] = [Sheaf::O, Sheaf::Omega1, Sheaf::Omega2];

    /// `p` in `Ω^p`.
    pub fn form_degree(self) -> usize {
        match self {
            Sheaf::O => 0,
            Sheaf::Omega1 => 1,
            Sheaf::Omega2 => 2,
        }
    }
}

/// Elementary symmetric polynomial `e_p` of `values`.
fn elementary_symmetric<F: Field>(values: &[F], p: usize) -> F {
    let mut e = vec![F::zero(); p + 1];
    e[0] = F::one();
    for v in values {
        for j in (1..=p).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    e[p].clone()
}

/// Contribution of an isolated fixed point with tangent eigenvalues
/// `eigenvalues`: `Tr(∧^p dι*) / det(1 - dι)`.
pub fn point_term_with<F: Field>(sheaf: Sheaf, eigenvalues: &[F]) -> F {
    let det = eigenvalues.iter().fold(F::one(), |acc, l| acc * (F::one() - l.clone()));
    elementary_symmetric(eigenvalues, sheaf.form_degree()) / det
}

/// Isolated point on a fourfold, `dι = -id` on `C^4`.
pub fn point_local_term<F: Field>(sheaf: Sheaf) -> F {
    let minus_one = vec![-F::one(); 4];
    let t = point_term_with(sheaf, &minus_one);
    debug_assert!({
        let p = sheaf.form_degree();
        let sign = if p.is_multiple_of(2) { 1 } else { -1 };
        t == F::from_ratio(sign * binomial(4, p) as i64, 16)
    });
    t
}

/// `Σ_k (-1)^k ch(∧^k N^*)` twisted by the eigenvalue `-1`:
/// `1 + ch(N^*) + ch(det N^*)`.
fn normal_denominator<F: Field>() -> Result<GradedClass<F>> {
    // c_2(N^*) = c_2(X)·[Y] - c_2(Y)
    let c2_normal = GradedClass::a_symbol() - GradedClass::c2_symbol();
    Ok(GradedClass::one() + ch_rank2_c1zero(&c2_normal)? + ch_trivial_determinant())
}

/// Integrand of a fixed surface with trivial canonical class, built in the
/// truncated ring.
pub fn surface_local_term<F: Field>(sheaf: Sheaf) -> Result<GradedClass<F>> {
    let todd = todd_surface::<F>();
    let denominator_inv = normal_denominator::<F>()?.invert_unit()?;
    let c2_normal = GradedClass::a_symbol() - GradedClass::c2_symbol();
    let ch_cotangent = ch_rank2_c1zero(&GradedClass::c2_symbol())?;
    let ch_conormal = ch_rank2_c1zero(&c2_normal)?;
    let character = match sheaf {
        Sheaf::O => GradedClass::one(),
        // Ω^+ = T^*Y, Ω^- = N^*
        Sheaf::Omega1 => ch_cotangent - ch_conormal,
        // (Ω^2)^+ = det T^*Y ⊕ det N^*, (Ω^2)^- = T^*Y ⊗ N^*
        Sheaf::Omega2 => ch_trivial_determinant() + ch_trivial_determinant() - ch_cotangent * ch_conormal,
    };
    Ok(todd * character * denominator_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};
    use num::rational::BigRational;

    #[test]
    fn point_terms() {
        assert_eq!(point_local_term::<BigRational>(Sheaf::O), rational(1, 16));
        assert_eq!(point_local_term::<BigRational>(Sheaf::Omega1), rational(-1, 4));
        assert_eq!(point_local_term::<BigRational>(Sheaf::Omega2), rational(3, 8));
    }

    #[test]
    fn surface_terms() {
        let o = surface_local_term::<BigRational>(Sheaf::O).unwrap();
        assert_eq!(o, GradedClass::new(rational(1, 4), rational(-1, 24), rational(1, 16)));
        let o1 = surface_local_term::<BigRational>(Sheaf::Omega1).unwrap();
        assert_eq!(o1, GradedClass::new(integer(0), rational(-1, 2), rational(1, 4)));
        let o2 = surface_local_term::<BigRational>(Sheaf::Omega2).unwrap();
        assert_eq!(o2, GradedClass::new(rational(-1, 2), rational(1, 12), rational(3, 8)));
    }

    #[test]
    fn denominator_matches_displayed_form() {
        // 4 + c2(Y) - c2(X)·[Y]
        let d = normal_denominator::<BigRational>().unwrap();
        assert_eq!(d, GradedClass::new(integer(4), integer(1), integer(-1)));
    }

    #[test]
    fn works_over_floats() {
        let o2 = surface_local_term::<f64>(Sheaf::Omega2).unwrap();
        assert!((o2.a - 0.375).abs() < 1e-15);
    }
}
