// Bad monodromy modules: construction, detection and the verdict.

use fibred_groups::linalg::IntMatrix;
use fibred_groups::monodromy::{
    build_bad_module, extract_bad_submodule, kahler_verdict, PiModule, PiSpec,
};

fn main() -> fibred_groups::Result<()> {
    let spec = PiSpec::surface(2)?;
    let (bad, _) = build_bad_module(spec);
    print!("{}", bad.to_text());

    // Hide the structure with a change of basis and find it again.
    let p = IntMatrix::from_i64(&[
        &[1, 1, 0, 0, 0],
        &[0, 1, 1, 0, 0],
        &[0, 0, 1, 1, 0],
        &[0, 0, 0, 1, 1],
        &[0, 0, 0, 0, 1],
    ]);
    let hidden = bad.conjugate(&p)?;
    let w = extract_bad_submodule(&hidden).expect("bad submodule");
    w.verify(&hidden).expect("valid witness");
    println!("u = {:?}", w.u.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let v = kahler_verdict(&hidden);
    println!("{}: obstructed {} (degenerate rank {})", v.reading, v.obstructed, v.degenerate_rank);

    let trivial = PiModule::trivial(PiSpec::free(2)?, 3);
    let v = kahler_verdict(&trivial);
    println!("trivial module: obstructed {}, split {}", v.obstructed, v.splitting.is_some());
    Ok(())
}
