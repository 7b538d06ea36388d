use super::FamilyError;
use crate::ring::UniPoly;

/// Alexander polynomial of J(3, 2n) for `n < 0`, shifted to nonnegative
/// powers of `t`: coefficients `2, -3, 3, ..., -3, 2` of degree `-2n`.
pub fn alexander_j3(n: i64) -> Result<UniPoly, FamilyError> {
    if n >= 0 {
        return Err(FamilyError::OutsideClosedForm(n));
    }
    let d = (-2 * n) as usize;
    let coeffs: Vec<i64> = (0..=d)
        .map(|k| {
            let mag = if k == 0 || k == d { 2 } else { 3 };
            if k % 2 == 0 { mag } else { -mag }
        })
        .collect();
    Ok(UniPoly::from_i64('t', &coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(alexander_j3(-1).unwrap(), UniPoly::from_i64('t', &[2, -3, 2]));
        assert_eq!(alexander_j3(-2).unwrap(), UniPoly::from_i64('t', &[2, -3, 3, -3, 2]));
        assert!(!alexander_j3(-1).unwrap().is_monic().unwrap());
        assert_eq!(alexander_j3(0), Err(FamilyError::OutsideClosedForm(0)));
    }

    #[test]
    fn value_at_one_is_unit() {
        // the Alexander polynomial of a knot has |Delta(1)| = 1
        for n in -10..0 {
            let v = alexander_j3(n).unwrap().eval(&1.into());
            assert_eq!(v, 1.into());
        }
    }
}
