// Disjoint kernel cycles in Cayley graphs of quotients of free groups.

use fibred_groups::linalg::IntMatrix;
use fibred_groups::ninf::{explore, ninf_witness, GroupOracle, DEFAULT_VERTEX_CAP};

fn main() -> fibred_groups::Result<()> {
    let z2 = GroupOracle::free_abelian_i64(&[&[1, 0], &[0, 1]])?;
    let frag = explore(&z2, 20, DEFAULT_VERTEX_CAP)?;
    println!("Z^2 ball of radius 20: {} vertices, H_1 rank {}", frag.vertex_count(), frag.first_betti());
    let w = ninf_witness(&z2, 20, 5, DEFAULT_VERTEX_CAP)?.expect("kernel is nontrivial");
    println!("cycle {} with {} disjoint translates", w.cycle, w.rank_bound);

    let heisenberg = GroupOracle::matrix(vec![
        IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        IntMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]),
    ])?;
    let w = ninf_witness(&heisenberg, 6, 4, DEFAULT_VERTEX_CAP)?.expect("kernel is nontrivial");
    println!("Heisenberg: cycle {} with {} disjoint translates", w.cycle, w.rank_bound);
    if let Some(d) = &w.diagnostic {
        println!("{d}");
    }
    Ok(())
}
