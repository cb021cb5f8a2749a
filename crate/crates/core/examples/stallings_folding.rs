// Stallings graphs: index, rank and membership for subgroups of free groups.

use fibred_groups::group::{standard_surjection, Word};
use fibred_groups::stallings::{fold, index_and_rank, is_surjective_to_free, membership};

fn main() -> fibred_groups::Result<()> {
    // Kernel of F_2 -> Z/3 sending a to 1 and b to 0.
    let gens: Vec<Word> = ["aaa", "b", "aBA", "aaBAA"]
        .iter()
        .map(|s| Word::parse(s))
        .collect::<Result<_, _>>()?;
    let g = fold(&gens, 2)?;
    let (index, rank) = index_and_rank(&g);
    println!("vertices {} edges {} index {index} rank {rank}", g.vertex_count(), g.edge_count());
    for w in ["abA", "ab", "aaabAAA"] {
        println!("{w} in H: {}", membership(&g, &Word::parse(w)?));
    }

    let p = standard_surjection(3, 2)?;
    println!("standard Pi_3 -> F_2 surjective: {}", is_surjective_to_free(&p)?);
    Ok(())
}
