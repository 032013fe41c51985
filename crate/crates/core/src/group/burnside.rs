use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::character::{character_table, CharacterTable};
use super::FiniteGroup;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

fn check_classes(group: &FiniteGroup, classes: [usize; 3]) -> Result<()> {
    let r = group.classes().len();
    match classes.iter().find(|&&c| c >= r) {
        Some(c) => Err(Error::NotAClass(format!("class index {c}, the group has {r} classes"))),
        None => Ok(()),
    }
}

/// The number of triples `(a, b, c)` in `Ca x Cb x Cc` with `abc = 1`,
/// from the character sum `|Ca||Cb||Cc|/|G| sum_chi chi(a)chi(b)chi(c)/chi(1)`.
pub fn burnside_triple_count(group: &Arc<FiniteGroup>, classes: [usize; 3]) -> Result<BigInt> {
    check_classes(group, classes)?;
    let table = character_table(group)?;
    Ok(burnside_from_table(group, &table, classes))
}

pub(crate) fn burnside_from_table(group: &FiniteGroup, table: &CharacterTable, classes: [usize; 3]) -> BigInt {
    let mut sum = Cyclotomic::zero();
    for (row, &degree) in table.values.iter().zip(&table.degrees) {
        let prod = &(&row[classes[0]] * &row[classes[1]]) * &row[classes[2]];
        sum += &prod.scale(&BigRational::new(1.into(), degree.into()));
    }
    let sizes: BigInt = classes.iter().map(|&c| BigInt::from(group.classes()[c].size())).product();
    let value = sum.scale(&BigRational::new(sizes, BigInt::from(group.order())));
    let value = value.to_rational().expect("the character sum is rational");
    assert!(value.is_integer(), "the character sum {value} is not an integer");
    value.to_integer()
}

/// The same count by enumerating `Ca x Cb`.
pub fn brute_force_triple_count(group: &FiniteGroup, classes: [usize; 3]) -> Result<u64> {
    check_classes(group, classes)?;
    let all = group.classes();
    let mut count = 0;
    for &a in &all[classes[0]].elements {
        for &b in &all[classes[1]].elements {
            let c = group.inverse(group.multiply(a, b));
            if group.class_of(c) == classes[2] {
                count += 1;
            }
        }
    }
    Ok(count)
}
