use kostant::diagram::{LieType, MarkedDiagram, Node};
use kostant::weyl::CosetPoset;
use kostant::poset::{poincare_polynomial, is_palindromic};
use kostant::poly::IntPolynomial;
use std::collections::BTreeSet;
use std::sync::Arc;

fn main() {
    let d = MarkedDiagram::standard(LieType::F4, &[1], &[]).unwrap();
    let p = Arc::new(CosetPoset::generate(&d).unwrap());
    println!("size {}", p.size());
    let t0 = std::time::Instant::now();
    let eng = kostant::kl::KlvEngine::new(p.clone(), 50_000).unwrap();
    let mut pal_set = vec![];
    let mut kl_set = vec![];
    for w in 0..p.size() as u32 {
        if is_palindromic(&poincare_polynomial(&p, w)) { pal_set.push((w, p.length(w))); }
        let col: Vec<IntPolynomial> = (0..p.size() as u32).map(|x| eng.relative(x, w)).collect();
        if col.iter().all(IntPolynomial::is_zero_or_one) { kl_set.push((w, p.length(w))); }
    }
    println!("pal {:?}", pal_set);
    println!("kl  {:?}", kl_set);
    println!("elapsed {:?}", t0.elapsed());

    // singular block J = {4}
    let j: BTreeSet<Node> = [4].into();
    let members = p.singular_members(&j);
    println!("members {:?} lengths {:?}", members, members.iter().map(|&w| p.length(w)).collect::<Vec<_>>());
    // paper numbering: node k = members[k-1]
    for w in 0..6 {
        for x in 0..6 {
            let dims = eng.ext_dims(&j, members[x], members[w]).unwrap();
            if !dims.is_empty() {
                println!("Ext(N_{}, L_{}) = {:?}", x+1, w+1, dims);
            }
        }
    }
    // mu covers
    println!("mu matrix:");
    for w in 0..6 {
        for x in 0..6 {
            if x != w {
                let mu = eng.mu_singular(&j, members[x], members[w]).unwrap();
                if mu != 0 { println!("  mu({},{}) = {}", x+1, w+1, mu); }
            }
        }
    }
    println!("total elapsed {:?}", t0.elapsed());
}
