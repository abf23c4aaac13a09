use permcrypt::encoding::{pack_message, read_object, unpack_message};
use permcrypt::{
    crt_combine, deserialize_object, perm_dlog, scheme1, scheme2, serialize_object, word_from_bits, CellVector,
    Congruence, Error, Object, Permutation, RandomSource,
};
use proptest::prelude::*;

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn arb_perm_sized() -> impl Strategy<Value = Permutation> {
    (1usize..80).prop_flat_map(arb_perm)
}

/// Every permutation of `0..n` by Heap-free recursive enumeration.
fn all_perms(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn repeated_compose(p: &Permutation, e: usize) -> Permutation {
    let mut acc = Permutation::identity(p.degree()).unwrap();
    for _ in 0..e {
        acc = p.compose(&acc).unwrap();
    }
    acc
}

proptest! {
    #[test]
    fn group_axioms(p in arb_perm(64), q in arb_perm(64), r in arb_perm(64)) {
        let id = Permutation::identity(64).unwrap();
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(p.compose(&id).unwrap(), p.clone());
        prop_assert_eq!(id.compose(&p).unwrap(), p.clone());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.inverse().compose(&p).unwrap(), id);
        prop_assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn power_is_additive(p in arb_perm_sized(), a in any::<i64>(), b in any::<i64>()) {
        let sum = a as i128 + b as i128;
        prop_assert_eq!(p.pow(sum), p.pow(a).compose(&p.pow(b)).unwrap());
        prop_assert_eq!(p.pow(-(a as i128)), p.inverse().pow(a));
    }

    #[test]
    fn power_respects_order(p in arb_perm_sized()) {
        let order = p.order().unwrap();
        prop_assert!(p.pow(order).is_identity());
        prop_assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn decomposition_roundtrip(p in arb_perm_sized()) {
        let d = p.cycles();
        let total: usize = d.cycles().iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, p.degree());
        prop_assert!(d.cycles().windows(2).all(|w| w[0].points()[0] < w[1].points()[0]));
        prop_assert!(d.cycles().iter().all(|c| c.points()[0] == *c.points().iter().min().unwrap()));
        prop_assert_eq!(Permutation::from_cycles(p.degree(), d.cycles()).unwrap(), p);
    }

    #[test]
    fn conjugation_is_a_homomorphism(x in arb_perm(64), y1 in arb_perm(64), y2 in arb_perm(64)) {
        let lhs = x.conjugate(&y1.compose(&y2).unwrap()).unwrap();
        let rhs = x.conjugate(&y1).unwrap().compose(&x.conjugate(&y2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.conjugate(&y1).unwrap().cycle_type(), y1.cycle_type());
    }

    #[test]
    fn inverse_undoes_action(p in arb_perm(64), cells in proptest::collection::vec(any::<u32>(), 64)) {
        let v = CellVector::new(cells);
        let w = p.act_on(&v).unwrap();
        prop_assert_eq!(p.inverse().act_on(&w).unwrap(), v.clone());
        for i in 0..64 {
            prop_assert_eq!(w.cells()[p.apply(i)], v.cells()[i]);
        }
    }

    #[test]
    fn word_commutes_with_conjugation(
        x in arb_perm(64),
        a in arb_perm(64),
        b in arb_perm(64),
        bits in proptest::collection::vec(any::<bool>(), 256),
    ) {
        let t = word_from_bits(&bits, &a, &b).unwrap();
        let u = word_from_bits(&bits, &x.conjugate(&a).unwrap(), &x.conjugate(&b).unwrap()).unwrap();
        prop_assert_eq!(x.conjugate(&t).unwrap(), u);
    }

    #[test]
    fn word_matches_left_fold(a in arb_perm(9), b in arb_perm(9), bits in proptest::collection::vec(any::<bool>(), 1..40)) {
        let mut t = Permutation::identity(9).unwrap();
        for &bit in &bits {
            t = (if bit { &b } else { &a }).compose(&t).unwrap();
        }
        prop_assert_eq!(word_from_bits(&bits, &a, &b).unwrap(), t);
    }

    #[test]
    fn dlog_recovers_random_exponents(p in arb_perm(64), e in any::<u64>()) {
        let order = p.order().unwrap();
        let q = p.pow(e);
        let got = perm_dlog(&p, &q).unwrap();
        prop_assert_eq!(got.modulus(), order);
        prop_assert_eq!(got.residue(), e % order);
    }

    #[test]
    fn crt_result_satisfies_inputs(system in proptest::collection::vec((1u64..1000, any::<u64>()), 1..6)) {
        let system: Vec<_> = system.into_iter().map(|(m, r)| Congruence::new(r, m).unwrap()).collect();
        match crt_combine(&system) {
            Ok(sol) => {
                let lcm = system.iter().fold(1u64, |acc, c| {
                    let g = gcd(acc, c.modulus());
                    acc / g * c.modulus()
                });
                prop_assert_eq!(sol.modulus(), lcm);
                for c in &system {
                    prop_assert!(c.is_satisfied_by(sol.residue()));
                }
            }
            Err(Error::Inconsistent) => {
                // some pair must disagree modulo its gcd
                let clash = system.iter().enumerate().any(|(i, a)| system[i + 1..].iter().any(|b| {
                    let g = gcd(a.modulus(), b.modulus());
                    a.residue() % g != b.residue() % g
                }));
                prop_assert!(clash);
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn pack_roundtrip(bytes in proptest::collection::vec(any::<u8>(), 0..=256)) {
        let v = pack_message(&bytes, 64).unwrap();
        let mut padded = bytes.clone();
        padded.resize(256, 0);
        prop_assert_eq!(unpack_message(&v), padded);
    }

    #[test]
    fn object_roundtrip(seed in any::<u64>(), degree in 2usize..300) {
        let mut rng = RandomSource::seeded(seed);
        let profile: Vec<usize> = [2usize, 3, 5].into_iter().filter(|&l| l <= degree).take(if degree >= 10 { 3 } else { 1 }).collect();
        let (pk1, sk1) = scheme1::keygen(&mut rng, degree, &profile).unwrap();
        let order = pk1.message_order().unwrap();
        let ct1 = scheme1::encrypt(&pk1, seed % order, &mut rng).unwrap();
        let (pk2, sk2) = scheme2::keygen(&mut rng, degree).unwrap();
        let msg = CellVector::new((0..degree).map(|_| rng.next_u64() as u32).collect());
        let ct2 = scheme2::encrypt(&pk2, &msg, &mut rng).unwrap();
        let objects = [
            Object::Scheme1Public(pk1),
            Object::Scheme1Secret { degree, key: sk1 },
            Object::Scheme2Public(pk2),
            Object::Scheme2Secret(sk2),
            Object::Scheme1Ciphertext(ct1),
            Object::Scheme2Ciphertext(ct2),
        ];
        let mut stream = Vec::new();
        for obj in &objects {
            let bytes = serialize_object(obj).unwrap();
            prop_assert_eq!(bytes.len(), obj.kind().encoded_len(degree));
            prop_assert_eq!(&deserialize_object(&bytes).unwrap(), obj);
            stream.extend(bytes);
        }
        // concatenated records decode in sequence
        let mut rest = &stream[..];
        for obj in &objects {
            let (got, used) = read_object(rest).unwrap();
            prop_assert_eq!(&got, obj);
            rest = &rest[used..];
        }
        prop_assert!(rest.is_empty());
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn power_matches_repeated_composition_on_s5() {
    for p in all_perms(5) {
        for e in 0..=30 {
            assert_eq!(p.pow(e), repeated_compose(&p, e as usize), "p={p:?} e={e}");
        }
    }
}

#[test]
fn order_is_minimal_and_divides_group_order() {
    for p in all_perms(5) {
        let order = p.order().unwrap() as usize;
        assert_eq!(120 % order, 0);
        assert!(repeated_compose(&p, order).is_identity());
        assert!((1..order).all(|e| !repeated_compose(&p, e).is_identity()));
    }
    let mut rng = RandomSource::seeded(8);
    for _ in 0..100 {
        let p = Permutation::random(8, &mut rng).unwrap();
        assert_eq!(40_320 % p.order().unwrap(), 0);
    }
}

#[test]
fn dlog_exhaustive_on_s5() {
    for p in all_perms(5) {
        let order = p.order().unwrap();
        let powers: Vec<Permutation> = (0..order).map(|e| repeated_compose(&p, e as usize)).collect();
        for (e, q) in powers.iter().enumerate() {
            assert_eq!(perm_dlog(&p, q).unwrap(), Congruence::new(e as u64, order).unwrap());
        }
        // everything outside <p> is rejected
        for q in all_perms(5) {
            if !powers.contains(&q) {
                assert_eq!(perm_dlog(&p, &q), Err(Error::NotAPower));
            }
        }
    }
}

#[test]
fn crt_exhaustive_small_moduli() {
    for m1 in 1u64..=12 {
        for m2 in 1u64..=12 {
            let lcm = m1 / gcd(m1, m2) * m2;
            for r1 in 0..m1 {
                for r2 in 0..m2 {
                    let brute: Vec<u64> = (0..lcm).filter(|x| x % m1 == r1 && x % m2 == r2).collect();
                    let got = crt_combine(&[Congruence::new(r1, m1).unwrap(), Congruence::new(r2, m2).unwrap()]);
                    match brute.as_slice() {
                        [] => assert_eq!(got, Err(Error::Inconsistent)),
                        [x] => assert_eq!(got.unwrap(), Congruence::new(*x, lcm).unwrap()),
                        _ => panic!("solution not unique mod lcm"),
                    }
                }
            }
        }
    }
}

#[test]
fn random_inverse_and_roundtrips() {
    let mut rng = RandomSource::seeded(2024);
    for _ in 0..100 {
        let p = Permutation::random(64, &mut rng).unwrap();
        assert_eq!(p.inverse().inverse(), p);
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.cycles().to_permutation(), p);
        let id = Permutation::identity(64).unwrap();
        assert_eq!(id.compose(&p).unwrap(), p);
    }
}
