//! Builds each named pattern family and prints its size.

use mcrank::pattern::{generate, Pattern};

fn main() -> mcrank::Result<()> {
    let requests: [(&str, &[usize]); 8] = [
        ("tree-path", &[3, 4]),
        ("cycle", &[4]),
        ("triangular", &[5]),
        ("circulant", &[8, 6]),
        ("crown", &[4]),
        ("cube", &[]),
        ("sym-knk1", &[3]),
        ("sym-join-family", &[3]),
    ];
    for (family, params) in requests {
        let p = generate(family, params, None)?;
        let shape = match &p {
            Pattern::Bipartite(g) => format!("{} x {}", g.m(), g.n()),
            Pattern::Symmetric(g) => format!("symmetric {}", g.n()),
        };
        println!("{family:<16} {params:?}: {shape}, {} known entries", p.num_edges());
    }

    let tree = generate("tree-random", &[4, 5], Some(7))?;
    println!("random tree (seed 7):\n{}", tree.as_bipartite().unwrap().to_mask_string());
    Ok(())
}
