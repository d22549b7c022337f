use num_integer::Integer;
use num_traits::ToPrimitive;

use super::field::QuadraticField;
use crate::error::{Error, Result};

/// Largest |disc| the form count accepts.
pub const CLASS_NUMBER_DISC_LIMIT: u64 = 1_000_000_000;

/// Class number of the field, by counting reduced forms of its discriminant.
pub fn class_number(field: &QuadraticField) -> Result<u64> {
    let d = field
        .disc()
        .to_i64()
        .ok_or_else(|| Error::domain(format!("|disc| of {} exceeds the limit", field.disc())))?;
    class_number_of_discriminant(d)
}

/// Number of reduced primitive forms (a, b, c) with b^2 - 4ac = d < 0.
pub fn class_number_of_discriminant(d: i64) -> Result<u64> {
    if d >= 0 {
        return Err(Error::domain(format!("discriminant {d} is not negative")));
    }
    if d.rem_euclid(4) > 1 {
        return Err(Error::domain(format!("{d} is not a discriminant")));
    }
    if d.unsigned_abs() > CLASS_NUMBER_DISC_LIMIT {
        return Err(Error::Range {
            what: "class number".into(),
            needed: d.unsigned_abs(),
            limit: CLASS_NUMBER_DISC_LIMIT,
        });
    }
    let d = d as i128;
    let mut h = 0u64;
    // a <= sqrt(|d|/3) for reduced forms.
    let mut a: i128 = 1;
    while 3 * a * a <= -d {
        let mut b = -a + 1;
        while b <= a {
            if (b - d).rem_euclid(2) == 0 {
                let num = b * b - d;
                if num % (4 * a) == 0 {
                    let c = num / (4 * a);
                    let reduced = c >= a && !(b < 0 && a == c);
                    if reduced && a.gcd(&b).gcd(&c) == 1 {
                        h += 1;
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_discriminants() {
        assert_eq!(class_number_of_discriminant(-3).unwrap(), 1);
        assert_eq!(class_number_of_discriminant(-4).unwrap(), 1);
        assert_eq!(class_number_of_discriminant(-23).unwrap(), 3);
        assert_eq!(class_number_of_discriminant(-163).unwrap(), 1);
        assert_eq!(class_number_of_discriminant(-20).unwrap(), 2);
        assert!(class_number_of_discriminant(5).is_err());
    }
}
