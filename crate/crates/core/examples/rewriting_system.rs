// Groups given by files: a confluent rewriting system for `Z²` and a
// Cayley table for `Z/6`. Both have subexponential growth, so no
// certificate is possible; the tools report polynomial ball counts and
// eventually empty spheres.
//
// ```bash
// cargo run -p nonhermitian --example rewriting_system
// ```

use nonhermitian::group::file::parse_group_file;
use nonhermitian::group::GeneratingSet;
use nonhermitian::growth::{check_submultiplicative, enumerate_balls, growth_estimate, EnumerationOptions};

const Z2: &str = "\
# Z² = <a, b | ab = ba>, shortlex normal forms a^i b^j
kind rws
generators 2
rule ba -> ab
rule b'a -> ab'
rule ba' -> a'b
rule b'a' -> a'b'
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let z2 = parse_group_file(Z2)?;
    let set = z2.standard_generators()?;
    let table = enumerate_balls(&z2, &set, EnumerationOptions::new(20))?;
    println!("{}: spheres {:?}", z2.label(), &table.sphere_sizes()[..=8]);
    for n in 1..=20 {
        if table.sphere_sizes()[n] != 4 * n as u64 {
            return Err(format!("|S_{n}| should be 4n").into());
        }
    }
    let est = growth_estimate(&table)?;
    println!("  Fekete upper bound at radius 20: {:.4}", est.fekete_upper);
    check_submultiplicative(&table)?;

    let cyclic: String = {
        let mut text = String::from("kind cayley\n");
        for i in 0..6 {
            let row: Vec<String> = (0..6).map(|j| ((i + j) % 6).to_string()).collect();
            text.push_str(&format!("row {}\n", row.join(" ")));
        }
        text.push_str("generators 1\n");
        text
    };
    let z6 = parse_group_file(&cyclic)?;
    let set = GeneratingSet::parse(&z6, "#1,#5")?;
    let table = enumerate_balls(&z6, &set, EnumerationOptions::new(5))?;
    println!("{}: balls {:?}", z6.label(), table.ball_sizes());
    if table.ball_sizes()[3] != 6 || table.sphere_sizes()[4] != 0 {
        return Err("Z/6 has diameter 3".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
