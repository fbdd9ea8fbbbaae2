//! Regenerates `data/catalog.txt` from explicit constructions.
//!
//! Run with `cargo run -p essalg-core --example gen_catalog > crates/core/data/catalog.txt`.

use essalg_core::group::{direct_product, FiniteGroup};

fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Elements `r^i s^j` with `s r s^-1 = r^-1`; order `2n`.
fn dihedral(n: usize) -> Vec<Vec<usize>> {
    let idx = |i: i64, j: usize| i.rem_euclid(n as i64) as usize + n * j;
    (0..2 * n)
        .map(|p| {
            let (i, j) = ((p % n) as i64, p / n);
            (0..2 * n)
                .map(|q| {
                    let (k, l) = ((q % n) as i64, q / n);
                    let sign = if j == 1 { -1 } else { 1 };
                    idx(i + sign * k, (j + l) % 2)
                })
                .collect()
        })
        .collect()
}

/// Elements `a^i x^j` with `a` of order `2n`, `x^2 = a^n`, `x a x^-1 = a^-1`.
fn dicyclic(n: usize) -> Vec<Vec<usize>> {
    let m = 2 * n;
    let idx = |i: i64, j: usize| i.rem_euclid(m as i64) as usize + m * j;
    (0..2 * m)
        .map(|p| {
            let (i, j) = ((p % m) as i64, p / m);
            (0..2 * m)
                .map(|q| {
                    let (k, l) = ((q % m) as i64, q / m);
                    let sign = if j == 1 { -1 } else { 1 };
                    let extra = if j == 1 && l == 1 { n as i64 } else { 0 };
                    idx(i + sign * k + extra, (j + l) % 2)
                })
                .collect()
        })
        .collect()
}

fn alternating4() -> Vec<Vec<usize>> {
    let mut perms: Vec<[usize; 4]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        let inversions = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        if inversions % 2 == 0 {
                            perms.push(p);
                        }
                    }
                }
            }
        }
    }
    let idx = |p: [usize; 4]| perms.iter().position(|q| *q == p).unwrap();
    perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| idx([a[b[0]], a[b[1]], a[b[2]], a[b[3]]]))
                .collect()
        })
        .collect()
}

fn product(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let g = FiniteGroup::from_table("a", a).unwrap();
    let h = FiniteGroup::from_table("b", b).unwrap();
    direct_product(&g, &h).group.table_rows()
}

fn main() {
    let c2 = cyclic(2);
    let c3 = cyclic(3);
    let entries: Vec<(&str, Vec<Vec<usize>>)> = vec![
        ("1", cyclic(1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("V4", product(&c2, &c2)),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", dihedral(3)),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C4xC2", product(&cyclic(4), &c2)),
        ("C2^3", product(&product(&c2, &c2), &c2)),
        ("D8", dihedral(4)),
        ("Q8", dicyclic(2)),
        ("C9", cyclic(9)),
        ("C3xC3", product(&c3, &c3)),
        ("C10", cyclic(10)),
        ("D10", dihedral(5)),
        ("C11", cyclic(11)),
        ("C12", cyclic(12)),
        ("C6xC2", product(&cyclic(6), &c2)),
        ("A4", alternating4()),
        ("D12", dihedral(6)),
        ("Dic3", dicyclic(3)),
        ("C13", cyclic(13)),
        ("C14", cyclic(14)),
        ("D14", dihedral(7)),
        ("C15", cyclic(15)),
    ];
    println!("# essalg-catalog 1");
    println!("# label order row-major multiplication table");
    for (label, rows) in entries {
        FiniteGroup::from_table(label, &rows).expect("construction yields a group");
        let cells: Vec<String> = rows.iter().flatten().map(|x| x.to_string()).collect();
        println!("{} {} {}", label, rows.len(), cells.join(" "));
    }
}
