//! Polynomials over a small prime field F_l, used by the factorizer.

use rand::Rng;

pub(crate) type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn deg(f: &Poly) -> Option<usize> {
    f.len().checked_sub(1)
}

fn inv(a: u64, l: u64) -> u64 {
    pow(a, l - 2, l)
}

fn pow(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut r = 1 % l;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % l;
        }
        a = a * a % l;
        e >>= 1;
    }
    r
}

pub(crate) fn sub(f: &Poly, g: &Poly, l: u64) -> Poly {
    let n = f.len().max(g.len());
    trim(
        (0..n)
            .map(|i| {
                let a = f.get(i).copied().unwrap_or(0);
                let b = g.get(i).copied().unwrap_or(0);
                (a + l - b) % l
            })
            .collect(),
    )
}

pub(crate) fn add(f: &Poly, g: &Poly, l: u64) -> Poly {
    let n = f.len().max(g.len());
    trim(
        (0..n)
            .map(|i| (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % l)
            .collect(),
    )
}

pub(crate) fn mul(f: &Poly, g: &Poly, l: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % l;
        }
    }
    trim(out)
}

pub(crate) fn div_rem(f: &Poly, g: &Poly, l: u64) -> (Poly, Poly) {
    let dg = deg(g).expect("division by zero");
    let li = inv(g[dg], l);
    let mut r = f.clone();
    if r.len() <= dg {
        return (vec![], trim(r));
    }
    let mut q = vec![0u64; r.len() - dg];
    for k in (0..q.len()).rev() {
        let c = r[k + dg] * li % l;
        if c == 0 {
            continue;
        }
        for (i, &b) in g.iter().enumerate() {
            r[k + i] = (r[k + i] + l - c * b % l) % l;
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

pub(crate) fn monic(f: &Poly, l: u64) -> Poly {
    match f.last() {
        None => vec![],
        Some(&c) => {
            let ci = inv(c, l);
            f.iter().map(|&a| a * ci % l).collect()
        }
    }
}

pub(crate) fn gcd(f: &Poly, g: &Poly, l: u64) -> Poly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_empty() {
        let r = div_rem(&a, &b, l).1;
        a = b;
        b = r;
    }
    monic(&a, l)
}

/// Returns `(s, t)` with `s f + t g = 1` for coprime `f`, `g`.
pub(crate) fn ext_gcd(f: &Poly, g: &Poly, l: u64) -> (Poly, Poly) {
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], vec![]);
    let (mut t0, mut t1): (Poly, Poly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, l);
        let s2 = sub(&s0, &mul(&q, &s1, l), l);
        let t2 = sub(&t0, &mul(&q, &t1, l), l);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.len(), 1, "ext_gcd on non-coprime inputs");
    let ci = inv(r0[0], l);
    let scale = |p: &Poly| p.iter().map(|&a| a * ci % l).collect::<Poly>();
    (scale(&s0), scale(&t0))
}

fn mulmod(a: &Poly, b: &Poly, m: &Poly, l: u64) -> Poly {
    div_rem(&mul(a, b, l), m, l).1
}

fn powmod(base: &Poly, mut e: u128, m: &Poly, l: u64) -> Poly {
    let mut result: Poly = div_rem(&vec![1], m, l).1;
    let mut b = div_rem(base, m, l).1;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m, l);
        }
        b = mulmod(&b, &b, m, l);
        e >>= 1;
    }
    result
}

pub(crate) fn derivative(f: &Poly, l: u64) -> Poly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % l) * c % l)
            .collect(),
    )
}

pub(crate) fn is_squarefree(f: &Poly, l: u64) -> bool {
    deg(&gcd(f, &derivative(f, l), l)) == Some(0)
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(d, product of all irreducible factors of degree d)`.
pub(crate) fn distinct_degree(f: &Poly, l: u64) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while deg(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod(&h, l as u128, &rest, l);
        let g = gcd(&rest, &sub(&h, &x, l), l);
        if deg(&g).unwrap_or(0) > 0 {
            rest = div_rem(&rest, &g, l).0;
            h = div_rem(&h, &rest, l).1;
            out.push((d, g));
        }
    }
    if deg(&rest).unwrap_or(0) > 0 {
        out.push((deg(&rest).unwrap(), rest));
    }
    out
}

/// Splits a monic product of distinct degree-`d` irreducibles (odd `l`).
pub(crate) fn equal_degree<R: Rng>(f: &Poly, d: usize, l: u64, rng: &mut R) -> Vec<Poly> {
    let n = deg(f).unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let exp = ((l as u128).pow(d as u32) - 1) / 2;
    loop {
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..l)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub(&powmod(&a, exp, f, l), &vec![1], l);
        let g = gcd(f, &b, l);
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = div_rem(f, &g, l).0;
            let mut out = equal_degree(&g, d, l, rng);
            out.extend(equal_degree(&monic(&h, l), d, l, rng));
            return out;
        }
    }
}

/// Complete factorization of a monic squarefree polynomial over F_l, l odd.
pub(crate) fn factor<R: Rng>(f: &Poly, l: u64, rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f, l) {
        out.extend(equal_degree(&g, d, l, rng));
    }
    out
}
