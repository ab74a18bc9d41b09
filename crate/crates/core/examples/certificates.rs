//! Partition certificates for circulants and the vertex deletion rule.

use mcrank::gcr::{
    build_circulant_certificate, clique_sum_combine, vertex_deletion_check, verify_partition_certificate,
    DeletionOutcome, GcrOptions,
};
use mcrank::pattern::{cube, tree_path, Vertex};

fn main() -> mcrank::Result<()> {
    for (n, k) in [(4, 2), (9, 3), (16, 8)] {
        let c = build_circulant_certificate(n, k)?;
        let check = verify_partition_certificate(&c.pattern(), c.r, &c.row_blocks, &c.col_blocks)?;
        println!("G({n},{}) rank {}: valid {}", c.l, c.r, check.valid);
    }
    if let Err(e) = build_circulant_certificate(6, 4) {
        println!("n = 6, k = 4: {e}");
    }

    let g = cube();
    let bad = verify_partition_certificate(&g, 2, &[vec![0, 1], vec![2, 3]], &[vec![0, 1], vec![2, 3]])?;
    println!("wrong cube partition: {} blocks with unknown entries", bad.violations.len());

    let path = tree_path(3, 3).unwrap();
    for (name, h, v) in [("cube", &g, Vertex::Row(0)), ("path", &path, Vertex::Col(2))] {
        match vertex_deletion_check(h, v, &GcrOptions::default())? {
            DeletionOutcome::Held { gcr } => println!("{name}: deleting {v:?} keeps gcr {gcr}"),
            other => println!("{name}: {other:?}"),
        }
    }
    println!("clique sum of ranks 2 and 3 along K(1,1): {:?}", clique_sum_combine(2, 3, 1, 1));
    Ok(())
}
