use std::fmt;

use super::{MatError, Scalar};

/// 2×2 matrix over a commutative [`Scalar`] domain.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat2<T> {
    pub e11: T,
    pub e12: T,
    pub e21: T,
    pub e22: T,
}

impl<T: Scalar> Mat2<T> {
    pub fn new(e11: T, e12: T, e21: T, e22: T) -> Self {
        Mat2 { e11, e12, e21, e22 }
    }

    /// Identity in the domain of `proto`.
    pub fn identity_like(proto: &T) -> Self {
        let (z, o) = (proto.zero_like(), proto.one_like());
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            self.e11.times(&o.e11).plus(&self.e12.times(&o.e21)),
            self.e11.times(&o.e12).plus(&self.e12.times(&o.e22)),
            self.e21.times(&o.e11).plus(&self.e22.times(&o.e21)),
            self.e21.times(&o.e12).plus(&self.e22.times(&o.e22)),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2::new(
            self.e11.plus(&o.e11),
            self.e12.plus(&o.e12),
            self.e21.plus(&o.e21),
            self.e22.plus(&o.e22),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat2::new(
            self.e11.minus(&o.e11),
            self.e12.minus(&o.e12),
            self.e21.minus(&o.e21),
            self.e22.minus(&o.e22),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Mat2::new(
            self.e11.times(k),
            self.e12.times(k),
            self.e21.times(k),
            self.e22.times(k),
        )
    }

    pub fn trace(&self) -> T {
        self.e11.plus(&self.e22)
    }

    pub fn det(&self) -> T {
        self.e11.times(&self.e22).minus(&self.e12.times(&self.e21))
    }

    pub fn adjugate(&self) -> Self {
        Mat2::new(
            self.e22.clone(),
            self.e12.negated(),
            self.e21.negated(),
            self.e11.clone(),
        )
    }

    pub fn has_unit_det(&self) -> bool {
        self.det().is_one_elem()
    }

    /// Inverse via the adjugate; only defined when `det = 1`.
    pub fn inverse(&self) -> Result<Self, MatError> {
        if self.has_unit_det() {
            Ok(self.adjugate())
        } else {
            Err(MatError::NonUnitDeterminant)
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 {
            e11: f(&self.e11),
            e12: f(&self.e12),
            e21: f(&self.e21),
            e22: f(&self.e22),
        }
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }
}

impl<T: fmt::Display> Mat2<T> {
    /// `[e11, e12, e21, e22]` in text form, the matrix JSON layout.
    pub fn to_strings(&self) -> [String; 4] {
        [
            self.e11.to_string(),
            self.e12.to_string(),
            self.e21.to_string(),
            self.e22.to_string(),
        ]
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e11, self.e12, self.e21, self.e22)
    }
}

/// `M^n` for any integer `n` from the Cayley–Hamilton relation
/// `M^(k+1) = T M^k - M^(k-1)`, `T = trace M`, seeded with `M^0 = I` and
/// `M^1 = M`, run forward for positive `n` and backward for negative `n`.
pub fn matrix_power_recursive<T: Scalar>(m: &Mat2<T>, n: i64) -> Result<Mat2<T>, MatError> {
    if !m.has_unit_det() {
        return Err(MatError::NonUnitDeterminant);
    }
    let id = Mat2::identity_like(&m.e11);
    if n == 0 {
        return Ok(id);
    }
    let t = m.trace();
    // (prev, cur) walk away from zero in the direction of n
    let (mut prev, mut cur) = if n > 0 { (id, m.clone()) } else { (m.clone(), id) };
    let steps = if n > 0 { n - 1 } else { -n };
    for _ in 0..steps {
        let next = cur.scale(&t).sub(&prev);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Powers `M^lo ..= M^hi` in one sweep of the recursion.
pub fn matrix_powers_range<T: Scalar>(m: &Mat2<T>, lo: i64, hi: i64) -> Result<Vec<(i64, Mat2<T>)>, MatError> {
    if !m.has_unit_det() {
        return Err(MatError::NonUnitDeterminant);
    }
    let t = m.trace();
    let id = Mat2::identity_like(&m.e11);
    let mut out = Vec::new();
    let mut up = vec![(0i64, id.clone()), (1, m.clone())];
    let mut k = 1;
    while k < hi {
        let next = up[up.len() - 1].1.scale(&t).sub(&up[up.len() - 2].1);
        k += 1;
        up.push((k, next));
    }
    let mut down = vec![(1i64, m.clone()), (0, id)];
    let mut k = 0;
    while k > lo {
        let next = down[down.len() - 1].1.scale(&t).sub(&down[down.len() - 2].1);
        k -= 1;
        down.push((k, next));
    }
    for (k, mat) in down.into_iter().rev().chain(up) {
        if k >= lo && k <= hi && out.last().is_none_or(|(j, _): &(i64, Mat2<T>)| *j < k) {
            out.push((k, mat));
        }
    }
    Ok(out)
}
