//! Small finite-group utilities: multiplication tables used by the algebra,
//! groupoid, and Hopf constructions.

/// Multiplication table t[g][h] = g*h over indices 0..n.
pub type GroupTable = Vec<Vec<usize>>;

pub fn cyclic_table(n: usize) -> GroupTable {
    (0..n)
        .map(|g| (0..n).map(|h| (g + h) % n).collect())
        .collect()
}

/// The symmetric group S_n as permutations of 0..n-1 in lexicographic order.
/// Composition convention: (p*q)(x) = p(q(x)).
pub fn symmetric_table(n: usize) -> GroupTable {
    let perms = permutations(n);
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                    index(&composed)
                })
                .collect()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(&mut cur, n, &mut out);
    out.sort();
    out
}

fn heap_permute(arr: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(arr.clone());
        return;
    }
    for i in 0..k {
        heap_permute(arr, k - 1, out);
        if k % 2 == 0 {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

/// Identity element of a table, if the table is a group.
pub fn identity_of(table: &GroupTable) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
}

/// Inverse map, if total.
pub fn inverses_of(table: &GroupTable) -> Option<Vec<usize>> {
    let e = identity_of(table)?;
    let n = table.len();
    let mut inv = vec![usize::MAX; n];
    for g in 0..n {
        inv[g] = (0..n).find(|&h| table[g][h] == e && table[h][g] == e)?;
    }
    Some(inv)
}

/// Validates associativity, identity, inverses.
pub fn is_group(table: &GroupTable) -> bool {
    let n = table.len();
    if table.iter().any(|r| r.len() != n) {
        return false;
    }
    if table
        .iter()
        .any(|r| r.iter().any(|&v| v >= n))
    {
        return false;
    }
    if identity_of(table).is_none() || inverses_of(table).is_none() {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_groups() {
        assert!(is_group(&cyclic_table(1)));
        assert!(is_group(&cyclic_table(5)));
        let s3 = symmetric_table(3);
        assert_eq!(s3.len(), 6);
        assert!(is_group(&s3));
        // S_3 is nonabelian
        let mut abelian = true;
        for a in 0..6 {
            for b in 0..6 {
                if s3[a][b] != s3[b][a] {
                    abelian = false;
                }
            }
        }
        assert!(!abelian);
    }
}
