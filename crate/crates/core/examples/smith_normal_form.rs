// Smith normal form, integer kernels and integer solutions.

use fibred_groups::linalg::{integer_kernel, integer_solve, smith_normal_form, IntMatrix};
use num_bigint::BigInt;

fn main() {
    let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("A =\n{}", a.to_text());
    println!("invariant factors: {:?}", snf.invariant_factors.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    assert_eq!(&(&snf.u * &a) * &snf.v, snf.s);

    let k = integer_kernel(&IntMatrix::from_i64(&[&[1, 1, 1]]));
    println!("kernel of [1 1 1]: {:?}", k.basis());

    let b: Vec<BigInt> = [3, 0].iter().map(|&x| BigInt::from(x)).collect();
    let two = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
    println!("2x = (3,0) solvable over Z: {}", integer_solve(&two, &b).is_some());
}
