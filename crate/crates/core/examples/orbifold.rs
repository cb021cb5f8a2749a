// Orbifold fundamental groups of bases with multiple fibres.

use fibred_groups::fibration::{
    kernel_finitely_generated, orbifold_abelianization, orbifold_presentation, OrbifoldSpec,
};

fn main() -> fibred_groups::Result<()> {
    for spec in [
        OrbifoldSpec::compact(1, vec![2, 2])?,
        OrbifoldSpec::compact(2, vec![3])?,
        OrbifoldSpec::compact(0, vec![2, 3, 5])?,
        OrbifoldSpec::open(2, vec![4])?,
    ] {
        let p = orbifold_presentation(&spec);
        let ab = orbifold_abelianization(&spec);
        println!(
            "{spec}: {} generators, {} relators, H_1 = {}, kernel f.g. {}",
            p.rank(),
            p.relators().len(),
            ab.invariants,
            kernel_finitely_generated(&spec)
        );
        for n in ab.notes {
            println!("  note: {n}");
        }
    }
    Ok(())
}
