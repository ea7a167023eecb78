use spfr::bp::random_tree_parens;
use spfr::func::{FuncOptions, FuncRep, RangeRepLarge, RangeRepSmall};
use spfr::io::{Container, Persist, Stored};
use spfr::perm::PowerRep;
use spfr::{AnyPerm, BackendKind, BpTree, Error, PermBackend, Permutation};

fn reload<T: Persist>(v: &T) -> T {
    let bytes = v.to_container().to_bytes();
    T::from_container(&Container::from_bytes(&bytes).unwrap()).unwrap()
}

const KINDS: [BackendKind; 3] = [BackendKind::Naive, BackendKind::Shortcut { t: 3 }, BackendKind::Benes { t: 5 }];

#[test]
fn permutations_round_trip() {
    let p = Permutation::random(300, 1);
    for kind in KINDS {
        let a = AnyPerm::build(&p, kind).unwrap();
        let b = reload(&a);
        assert_eq!(b.kind(), kind);
        for i in 0..300 {
            assert_eq!(b.forward(i), p.apply(i));
            assert_eq!(b.inverse(p.apply(i)), i);
        }
        let pw = PowerRep::build(&p, kind).unwrap();
        let pw2 = reload(&pw);
        for (i, k) in [(0, 5i64), (7, -11), (299, 1000)] {
            assert_eq!(pw.power(i, k), pw2.power(i, k));
        }
    }
}

#[test]
fn trees_and_functions_round_trip() {
    let t = BpTree::from_bits(random_tree_parens(500, 3)).unwrap();
    let t2 = reload(&t);
    assert_eq!(t2.bits(), t.bits());
    assert_eq!(t2.params(), t.params());

    let f: Vec<usize> = (0..19).map(|x| (x * x + 2 * x + 18) % 19).collect();
    let c = FuncRep::build(&f, &FuncOptions::default()).unwrap().to_container();
    let tags = c.tags();
    assert!(tags.contains(&"BPT1".to_string()) && tags.contains(&"FNC1".to_string()));
    let Stored::Func(r) = Stored::from_container(&c).unwrap() else { panic!("wrong kind") };
    for i in 0..19 {
        assert_eq!(r.power(i, 1).unwrap(), f[i]);
    }

    let big: Vec<usize> = (0..90).map(|i| (i * 7 + 3) % 30).collect();
    let large = RangeRepLarge::build(&big, 30, &FuncOptions::default()).unwrap();
    let large2 = reload(&large);
    let small_img: Vec<usize> = (0..30).map(|i| (i * 11 + 5) % 90).collect();
    let small = RangeRepSmall::build(&small_img, 90, &FuncOptions::default()).unwrap();
    let small2 = reload(&small);
    for k in 0..6 {
        for i in 0..90 {
            assert_eq!(large.power(i, k).unwrap(), large2.power(i, k).unwrap());
            let mut a = small.inverse_power(i, k + 1).unwrap();
            let mut b = small2.inverse_power(i, k + 1).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn damaged_containers_are_rejected() {
    let p = Permutation::random(50, 2);
    let bytes = AnyPerm::build(&p, BackendKind::Shortcut { t: 2 }).unwrap().to_container().to_bytes();
    assert!(matches!(Container::from_bytes(&bytes[..bytes.len() - 3]), Err(Error::Format(_))));
    let mut wrong = bytes.clone();
    wrong[0] = b'X';
    assert!(Container::from_bytes(&wrong).is_err());
    let mut c = Container::from_bytes(&bytes).unwrap();
    c.push(*b"FID1", vec![]);
    assert!(AnyPerm::from_container(&c).is_err());
}
