// Euler characteristic checks and the end condition.

use fibred_groups::fibration::{ends_condition, euler_check_compact, euler_check_open, EndDescriptor};

fn main() -> fibred_groups::Result<()> {
    for (e, g, r) in [(4, 2, 2), (8, 2, 2), (0, 2, 1)] {
        let v = euler_check_compact(e, g, r)?;
        println!("compact e={e} g={g} r={r}: matches {} forced {} solutions {:?}", v.matches, v.forced, v.solutions);
    }
    let v = euler_check_open(2, 2, 2)?;
    println!("open e=2 g=2 r=2: matches {} forced {}", v.matches, v.forced);

    let ends = [EndDescriptor::parse("a,aaa;simple=a")?, EndDescriptor::parse("ab,b")?];
    let v = ends_condition(2, &ends)?;
    for (end, verdict) in ends.iter().zip(&v.ends) {
        println!("end {end}: rank {} pass {}", verdict.rank, verdict.pass);
    }
    println!("all ends pass: {}", v.pass);
    Ok(())
}
