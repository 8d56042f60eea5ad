// Double-coset criterion on trees with periodic degrees along an axis.
//
// ```bash
// cargo run -p nonhermitian --example tree_criterion
// ```

use nonhermitian::criteria::Verdict;
use nonhermitian::tree::{double_coset_measure, tree_criterion, TreeSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (spec, expected) in [
        ("degrees=3 k=1", Verdict::Certified),
        ("degrees=3,4 k=2", Verdict::Certified),
        ("degrees=6 k=1", Verdict::Certified),
        ("degrees=2 k=1", Verdict::Inconclusive),
    ] {
        let tree: TreeSpec = spec.parse()?;
        let v = tree_criterion(&tree);
        println!(
            "{tree}: μ(KgK) = {}, growth ≥ {}, μ(Kg²K) = {}, 2/3 bound {}{}",
            v.mu_kgk,
            v.growth_lower,
            double_coset_measure(&tree, 2)?,
            if v.two_thirds_holds { "holds" } else { "fails" },
            if v.two_thirds_equality { " (equality)" } else { "" }
        );
        println!("  {}", v.verdict.summary());
        if v.verdict.verdict != expected {
            return Err(format!("{tree}: unexpected verdict").into());
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
