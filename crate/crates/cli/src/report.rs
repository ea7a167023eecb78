use spfr::bits::{Space, SpaceUsage};
use spfr::io::Stored;
use spfr::perm::lg_factorial_ceil;
use spfr::{AnyPerm, PermBackend};

fn lg_fact(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).log2()).sum()
}

fn perm_details(p: &AnyPerm) -> String {
    match p {
        AnyPerm::Naive(_) => "naive".to_string(),
        AnyPerm::Shortcut(s) => format!("shortcut t={} s={}", s.index().t(), s.index().holder_count()),
        AnyPerm::Benes(b) => format!("benes t={} q={} r={}", b.t(), b.q(), b.r()),
    }
}

/// Describes the structure and returns its space with the information-theoretic bound.
pub fn describe(s: &Stored) -> (String, Space, u64, &'static str) {
    match s {
        Stored::Perm(p) => (format!("{} n={}", perm_details(p), p.len()), p.space(), lg_factorial_ceil(p.len()), "ceil(lg n!)"),
        Stored::Powers(p) => (
            format!("powers over {} n={} distinct cycle lengths={}", perm_details(p.psi()), p.len(), p.lengths().len()),
            p.space(),
            lg_factorial_ceil(p.len()),
            "ceil(lg n!)",
        ),
        Stored::Tree(t) => {
            let n = t.len();
            let cat = lg_fact(2 * n - 2) - lg_fact(n - 1) - lg_fact(n);
            (format!("tree nodes={} params={:?}", n, t.params()), t.space(), cat.ceil().max(0.0) as u64, "ceil(lg Catalan(n-1))")
        }
        Stored::Func(f) => {
            let n = f.len();
            (
                format!("function n={n} width={} over {}", f.width(), perm_details(f.pi())),
                f.space(),
                (n as f64 * (n as f64).log2()).ceil() as u64,
                "ceil(n lg n)",
            )
        }
        Stored::RangeLarge(f) => {
            let (n, m) = (f.domain(), f.range());
            (
                format!("function n={n} m={m} chunks={}", f.seq().chunks()),
                f.space(),
                (n as f64 * (m as f64).log2()).ceil() as u64,
                "ceil(n lg m)",
            )
        }
        Stored::RangeSmall(f) => {
            let (n, m) = (f.domain(), f.range());
            (
                format!("function n={n} m={m} terminal values={}", f.terminals().len()),
                f.space(),
                (n as f64 * (m as f64).log2()).ceil() as u64,
                "ceil(n lg m)",
            )
        }
    }
}

pub fn print(s: &Stored) {
    let (what, space, bound, label) = describe(s);
    println!("{} {what}", s.kind_name());
    println!("bound      {bound} bits  {label}");
    println!("payload    {} bits", space.payload);
    println!("index      {} bits", space.index);
    println!("total      {} bits", space.total());
    println!("redundancy {} bits", space.total() as i64 - bound as i64);
}
