// Growth of two generating sets of the modular group `(Z/2) * (Z/3)`.
//
// `{a, ab, b²a}` grows like the golden ratio, which beats `|S|/2 = 3/2`;
// `{a, b, b²}` grows like `√2`, which does not. Enumeration gives the
// empirical picture, the cone-type automaton the rigorous enclosure.
//
// ```bash
// cargo run --release -p nonhermitian --example modular_group_growth
// ```

use nonhermitian::criteria::{discrete_criterion, Verdict};
use nonhermitian::group::{GeneratingSet, GroupBackend};
use nonhermitian::growth::{enumerate_balls, exact_growth, growth_estimate, EnumerationOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let group = GroupBackend::free_product_cyclic(vec![2, 3]);
    for (gens, expected, verdict) in [
        ("a,ab,bba", (1.0 + 5f64.sqrt()) / 2.0, Verdict::Certified),
        ("a,b,bb", 2f64.sqrt(), Verdict::Inconclusive),
    ] {
        let set = GeneratingSet::parse(&group, gens)?;
        let table = enumerate_balls(&group, &set, EnumerationOptions::new(16))?;
        let estimate = growth_estimate(&table)?;
        println!("S = {{{gens}}}: spheres {:?}", &table.sphere_sizes()[..=10]);
        println!(
            "  ball root {:.4}, ratio estimate {:.4}, Fekete upper {:.4}",
            estimate.last_ball_root(),
            estimate.ratio_estimate.unwrap_or(f64::NAN),
            estimate.fekete_upper
        );
        let exact = exact_growth(&group, &set)?.ok_or("free products of cyclics have automata")?;
        println!("  {} via {}", exact.omega, exact.method);
        if !exact.omega.contains_f64(expected) {
            return Err(format!("enclosure misses {expected}").into());
        }
        let v = discrete_criterion(set.len(), &exact.omega, exact.provenance)?;
        println!("  {}", v.summary());
        if v.verdict != verdict {
            return Err("unexpected verdict".into());
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
