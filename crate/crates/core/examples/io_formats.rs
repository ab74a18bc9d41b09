//! Reading and writing patterns and partial matrices.

use mcrank::io::{parse_pattern, pattern_to_json, PartialData};
use mcrank::pattern::Pattern;

fn main() -> mcrank::Result<()> {
    let p = parse_pattern("**?\n?**\n*?*\n")?;
    let json = pattern_to_json(&p);
    println!("{json}");
    assert_eq!(parse_pattern(&json)?, p);
    if let Pattern::Bipartite(g) = &p {
        println!("{}", g.to_mask_string());
    }

    // strings hold reals, bare integers hold F_p elements
    let real = PartialData::parse(r#"{"kind":"bipartite","m":2,"n":2,"values":[[0,0,"1.5"],[1,1,"-2"]]}"#)?;
    let fp = PartialData::parse(r#"{"kind":"symmetric","n":2,"values":[[1,0,4],[1,1,9]],"prime":101}"#)?;
    for data in [real, fp] {
        println!("{}", data.to_json());
    }
    Ok(())
}
