use std::path::Path;
use std::time::Instant;

use permcrypt::cryptanalysis::{self, LeakageReport};
use permcrypt::encoding::{pack_message, unpack_message, Kind, Object, HEADER_LEN};
use permcrypt::scheme1::DEFAULT_PROFILE;
use permcrypt::{scheme1, scheme2, word_from_bits, CellVector, RandomSource};

use crate::error::{CliError, CliResult};
use crate::files::{
    from_bit_blocks, read_bytes, read_envelope, read_object_file, to_bit_blocks, write_bytes, write_object_file,
    Envelope,
};

fn source(seed: Option<u64>) -> RandomSource {
    seed.map_or_else(RandomSource::system, RandomSource::seeded)
}

fn describe(path: &Path, kind: Kind, degree: usize) -> String {
    format!("{} ({} bytes)", path.display(), kind.encoded_len(degree))
}

pub fn keygen(
    scheme_one: bool,
    degree: usize,
    out: &Path,
    secret: &Path,
    seed: Option<u64>,
    profile: Option<&[usize]>,
    armor: bool,
) -> CliResult<()> {
    if degree == 0 || degree > u16::MAX as usize {
        return Err(CliError::Usage(format!("degree must be in 1..=65535, got {degree}")));
    }
    let mut rng = source(seed);
    let (public, private) = if scheme_one {
        let (pk, sk) = scheme1::keygen(&mut rng, degree, profile.unwrap_or(&DEFAULT_PROFILE))?;
        (Object::Scheme1Public(pk), Object::Scheme1Secret { degree, key: sk })
    } else {
        if profile.is_some() {
            return Err(CliError::Usage("--profile only applies to scheme 1".into()));
        }
        let (pk, sk) = scheme2::keygen(&mut rng, degree)?;
        (Object::Scheme2Public(pk), Object::Scheme2Secret(sk))
    };
    write_object_file(out, &public, armor)?;
    write_object_file(secret, &private, armor)?;
    println!("public key: {}", describe(out, public.kind(), degree));
    println!("secret key: {}", describe(secret, private.kind(), degree));
    Ok(())
}

fn scheme1_block_bits(pk: &scheme1::PublicKey) -> CliResult<u32> {
    match pk.block_bits()? {
        0 => Err(CliError::Crypto(
            "X is the identity: the message space holds a single value".into(),
        )),
        bits => Ok(bits),
    }
}

pub fn encrypt(public: &Path, input: &Path, out: &Path, seed: Option<u64>, armor: bool) -> CliResult<()> {
    let plaintext = read_bytes(input)?;
    let mut rng = source(seed);
    let records = match read_object_file(public)? {
        Object::Scheme1Public(pk) => {
            let width = scheme1_block_bits(&pk)?;
            to_bit_blocks(&plaintext, width)
                .into_iter()
                .map(|m| Ok(Object::Scheme1Ciphertext(scheme1::encrypt(&pk, m, &mut rng)?)))
                .collect::<CliResult<Vec<_>>>()?
        }
        Object::Scheme2Public(pk) => plaintext
            .chunks(4 * pk.degree())
            .map(|chunk| {
                let block = pack_message(chunk, pk.degree())?;
                Ok(Object::Scheme2Ciphertext(scheme2::encrypt(&pk, &block, &mut rng)?))
            })
            .collect::<CliResult<Vec<_>>>()?,
        other => {
            return Err(CliError::Input(format!(
                "{}: expected a public key, found {:?}",
                public.display(),
                other.kind()
            )))
        }
    };
    let envelope = Envelope {
        plaintext_len: plaintext.len() as u64,
        records,
    };
    write_bytes(out, &envelope.to_bytes()?, armor)?;
    println!(
        "encrypted {} bytes into {} records: {}",
        plaintext.len(),
        envelope.records.len(),
        out.display()
    );
    Ok(())
}

fn plaintext_len(envelope: &Envelope) -> CliResult<usize> {
    usize::try_from(envelope.plaintext_len)
        .map_err(|_| CliError::Input(format!("plaintext length {} is too large", envelope.plaintext_len)))
}

fn wrong_record(i: usize, want: Kind, got: &Object) -> CliError {
    CliError::Input(format!("record {i}: expected {want:?}, found {:?}", got.kind()))
}

fn scheme1_records(envelope: &Envelope) -> CliResult<Vec<&scheme1::Ciphertext>> {
    envelope
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| match r {
            Object::Scheme1Ciphertext(ct) => Ok(ct),
            other => Err(wrong_record(i, Kind::Scheme1Ciphertext, other)),
        })
        .collect()
}

fn scheme2_records(envelope: &Envelope) -> CliResult<Vec<&scheme2::Ciphertext>> {
    envelope
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| match r {
            Object::Scheme2Ciphertext(ct) => Ok(ct),
            other => Err(wrong_record(i, Kind::Scheme2Ciphertext, other)),
        })
        .collect()
}

/// Reassembles scheme 1 blocks, checking the record count against the length.
fn join_scheme1(blocks: &[u64], width: u32, len: usize) -> CliResult<Vec<u8>> {
    let expected = (len * 8).div_ceil(width as usize);
    if blocks.len() != expected {
        return Err(CliError::Input(format!(
            "{} records for a {len}-byte plaintext, expected {expected}",
            blocks.len()
        )));
    }
    from_bit_blocks(blocks, width, len)
        .ok_or_else(|| CliError::Crypto(format!("a decrypted block does not fit in {width} bits")))
}

fn join_scheme2(blocks: &[CellVector], degree: usize, len: usize) -> CliResult<Vec<u8>> {
    let expected = len.div_ceil(4 * degree);
    if blocks.len() != expected {
        return Err(CliError::Input(format!(
            "{} records for a {len}-byte plaintext, expected {expected}",
            blocks.len()
        )));
    }
    let mut out: Vec<u8> = blocks.iter().flat_map(unpack_message).collect();
    out.truncate(len);
    Ok(out)
}

pub fn decrypt(secret: &Path, public: &Path, input: &Path, out: &Path) -> CliResult<()> {
    let public_key = read_object_file(public)?;
    let secret_key = read_object_file(secret)?;
    let envelope = read_envelope(input)?;
    let len = plaintext_len(&envelope)?;
    let plaintext = match (&public_key, &secret_key) {
        (Object::Scheme1Public(pk), Object::Scheme1Secret { degree, key }) => {
            if *degree != pk.degree() || !pk.matches(key) {
                return Err(CliError::Crypto("secret key does not belong to this public key".into()));
            }
            let width = scheme1_block_bits(pk)?;
            let blocks = scheme1_records(&envelope)?
                .into_iter()
                .map(|ct| scheme1::decrypt(key, pk, ct).map_err(CliError::from))
                .collect::<CliResult<Vec<_>>>()?;
            join_scheme1(&blocks, width, len)?
        }
        (Object::Scheme2Public(pk), Object::Scheme2Secret(key)) => {
            if key.degree() != pk.degree() || !pk.matches(key) {
                return Err(CliError::Crypto("secret key does not belong to this public key".into()));
            }
            let blocks = scheme2_records(&envelope)?
                .into_iter()
                .map(|ct| scheme2::decrypt(key, ct).map_err(CliError::from))
                .collect::<CliResult<Vec<_>>>()?;
            join_scheme2(&blocks, pk.degree(), len)?
        }
        (p, s) => {
            return Err(CliError::Input(format!(
                "expected a matching public/secret key pair, found {:?} and {:?}",
                p.kind(),
                s.kind()
            )))
        }
    };
    write_bytes(out, &plaintext, false)?;
    println!("decrypted {} bytes: {}", plaintext.len(), out.display());
    Ok(())
}

fn print_recovered(bytes: &[u8]) {
    println!(
        "recovered plaintext ({} bytes, hex): {}",
        bytes.len(),
        hex::encode(bytes)
    );
    if let Ok(text) = std::str::from_utf8(bytes) {
        if text.chars().all(|c| !c.is_control() || c.is_whitespace()) {
            println!("recovered plaintext (utf-8): {text}");
        }
    }
}

pub fn attack_scheme1(public: &Path, input: &Path) -> CliResult<()> {
    let pk = match read_object_file(public)? {
        Object::Scheme1Public(pk) => pk,
        other => {
            return Err(CliError::Input(format!(
                "expected a scheme 1 public key, found {:?}",
                other.kind()
            )))
        }
    };
    let envelope = read_envelope(input)?;
    let len = plaintext_len(&envelope)?;
    let width = scheme1_block_bits(&pk)?;
    println!(
        "order(A) = {}: at most that many conjugations per block",
        pk.a().order()?
    );
    let start = Instant::now();
    let mut blocks = Vec::new();
    for (i, ct) in scheme1_records(&envelope)?.into_iter().enumerate() {
        let m = cryptanalysis::attack_scheme1_parallel(&pk, ct)?;
        println!("block {i}: m = {m}");
        blocks.push(m);
    }
    println!(
        "{} blocks recovered in {:.2?} without the secret key",
        blocks.len(),
        start.elapsed()
    );
    print_recovered(&join_scheme1(&blocks, width, len)?);
    Ok(())
}

pub fn attack_conjugacy(public: &Path, max_degree: usize, out: Option<&Path>) -> CliResult<()> {
    let pk = match read_object_file(public)? {
        Object::Scheme2Public(pk) => pk,
        other => {
            return Err(CliError::Input(format!(
                "expected a scheme 2 public key, found {:?}",
                other.kind()
            )))
        }
    };
    let n = pk.degree();
    if n > max_degree {
        return Err(CliError::Guard(format!("degree {n} exceeds --max-degree {max_degree}")));
    }
    let pairs = pk.conjugacy_pairs();
    let start = Instant::now();
    let x = cryptanalysis::brute_force_conjugator_parallel(&pairs, n)?;
    let candidates: u64 = (1..=n as u64).product();
    let verified = pairs.iter().all(|(y, z)| x.conjugate(y).is_ok_and(|c| &c == z));
    println!(
        "conjugator found among {candidates} candidates in {:.2?}; verified on {} pairs: {}",
        start.elapsed(),
        pairs.len(),
        verified
    );
    println!("conjugator cycle type: {:?}", x.cycle_type());
    if let Some(path) = out {
        write_object_file(path, &Object::Scheme2Secret(scheme2::SecretKey::new(x)), false)?;
        println!("working secret key written to {}", path.display());
    }
    Ok(())
}

fn print_report(i: usize, r: &LeakageReport) {
    let (common, count) = r.most_common().unwrap_or((0, 0));
    println!(
        "record {i}: degree {}, distinct {}, min {:#010x}, max {:#010x}, most common {:#010x} x{}, entropy {:.3} bits",
        r.degree,
        r.distinct(),
        r.min().unwrap_or(0),
        r.max().unwrap_or(0),
        common,
        count,
        r.entropy_bits()
    );
    let cells: Vec<String> = r.sorted_cells.iter().map(|c| format!("{c:08x}")).collect();
    println!("  sorted cells: {}", cells.join(" "));
}

pub fn attack_leakage(input: &Path) -> CliResult<()> {
    let envelope = read_envelope(input)?;
    let records = scheme2_records(&envelope)?;
    println!(
        "{} scheme 2 records for a {}-byte plaintext; each reveals its plaintext cell multiset",
        records.len(),
        envelope.plaintext_len
    );
    for (i, ct) in records.into_iter().enumerate() {
        print_report(i, &cryptanalysis::leakage_report(ct));
    }
    Ok(())
}

pub fn demo(seed: Option<u64>) -> CliResult<()> {
    let mut rng = source(seed);
    let n = permcrypt::DEFAULT_DEGREE;
    match seed {
        Some(s) => println!("seed {s:#018x}, degree {n}"),
        None => println!("system entropy, degree {n}"),
    }

    println!("\n== scheme 1: message as exponent ==");
    let (pk1, sk1) = scheme1::keygen(&mut rng, n, &DEFAULT_PROFILE)?;
    let order_x = pk1.message_order()?;
    println!("X cycle profile {:?}, order(X) = {order_x}", DEFAULT_PROFILE);
    println!("order(A) = {}", pk1.a().order()?);
    println!(
        "public key body {} bits, ciphertext body {} bits, {} message bits per block",
        Kind::Scheme1Public.body_len(n) * 8,
        Kind::Scheme1Ciphertext.body_len(n) * 8,
        pk1.block_bits()?
    );
    let m = rng.uniform_below(order_x)?;
    let ct1 = scheme1::encrypt(&pk1, m, &mut rng)?;
    println!("m = {m}");
    println!(
        "E cycle type equals X cycle type: {}",
        ct1.e().cycle_type() == pk1.x().cycle_type()
    );
    println!("decrypted with secret: {}", scheme1::decrypt(&sk1, &pk1, &ct1)?);
    let start = Instant::now();
    let broken = cryptanalysis::attack_scheme1(&pk1, &ct1)?;
    println!("recovered from public data only: {broken} ({:.2?})", start.elapsed());

    println!("\n== scheme 2: conjugated words acting on cells ==");
    let (pk2, sk2) = scheme2::keygen(&mut rng, n)?;
    let text = b"A transposition keeps every cell value; only their positions move.";
    let msg = pack_message(text, n)?;
    let pattern = rng.random_bits(scheme2::PATTERN_BITS);
    let ct2 = scheme2::encrypt_with_pattern(&pk2, &msg, &pattern)?;
    let u = word_from_bits(&pattern, pk2.c(), pk2.d())?;
    let key_bits = Kind::Scheme2Public.body_len(n) * 8;
    let block_bits = msg.len() * 32;
    let ct_bits = Kind::Scheme2Ciphertext.body_len(n) * 8;
    println!("public key body {key_bits} bits (4 x {n} points x 8 bits)");
    println!("plaintext block {n} x 32 = {block_bits} bits");
    println!(
        "ciphertext body {ct_bits} bits (T {} + cells {block_bits}), expansion {:.2}",
        ct_bits - block_bits,
        ct_bits as f64 / block_bits as f64
    );
    println!("X T X^-1 = U: {}", sk2.x().conjugate(ct2.t())? == u);
    let recovered = unpack_message(&scheme2::decrypt(&sk2, &ct2)?);
    println!("decrypted: {:?}", String::from_utf8_lossy(&recovered[..text.len()]));
    let report = cryptanalysis::leakage_report(&ct2);
    println!(
        "ciphertext multiset equals plaintext multiset: {} ({} distinct of {} cells)",
        report.matches_plaintext(&msg),
        report.distinct(),
        report.degree
    );

    println!("\n== scheme 2 at toy degree 6: exhaustive conjugacy search ==");
    let (toy_pk, _) = scheme2::keygen(&mut rng, 6)?;
    let start = Instant::now();
    let x = cryptanalysis::brute_force_conjugator(&toy_pk.conjugacy_pairs(), 6)?;
    let toy_msg = CellVector::new((0..6).map(|i| 0x1000 + i).collect());
    let toy_ct = scheme2::encrypt(&toy_pk, &toy_msg, &mut rng)?;
    let forged = scheme2::decrypt(&scheme2::SecretKey::new(x), &toy_ct)?;
    println!(
        "conjugator found in {:.2?}; decrypts a fresh ciphertext: {}",
        start.elapsed(),
        forged == toy_msg
    );
    println!(
        "\nscheme 2 public key file: {} bytes ({HEADER_LEN}-byte header)",
        Kind::Scheme2Public.encoded_len(n)
    );
    Ok(())
}
