//! Compares words under deg-lex, deg-inlex and the braid tower order.
//!
//! cargo run --example orders

use braid_gsb::{braid_scheme, OrderSpec, Ranking};

fn main() {
    let sc = braid_scheme(3);
    let a = sc.alphabet();
    let all = Ranking::all(a);
    let orders = [
        ("deglex", OrderSpec::DegLex(all.clone())),
        ("deginlex", OrderSpec::DegInLex(all)),
        ("tower", sc.order().clone()),
    ];
    let pairs = [
        ("g1^-1 s12^-1", "s12^-1 g1^-1"),
        ("g1^-1 s13", "s13 s23 s13^-1 g1^-1"),
        ("s12 s23", "s23 s12"),
    ];
    for (u, v) in pairs {
        let (wu, wv) = (a.parse_word(u).unwrap(), a.parse_word(v).unwrap());
        print!("{u}  ?  {v}:");
        for (name, o) in &orders {
            print!("  {name} {:?}", o.compare(&wu, &wv).unwrap());
        }
        println!();
    }
    let w = a.parse_word("g1^-1 s13 g2^-1 s12^-1 s23").unwrap();
    let weight = sc.order().decompose(&w).unwrap();
    println!("inverse weight of {} has k = {}", a.render_word(&w, " "), weight.k());
}
