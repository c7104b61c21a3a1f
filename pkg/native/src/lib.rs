//! C ABI over arkworks BLS12-381 for the Python `bls12-381` suite.
//!
//! Internal payloads are uncompressed affine encodings (G1: 96 bytes,
//! G2: 192 bytes) and uncompressed Fq12 (576 bytes). They are produced by
//! this library and re-read without validation; anything arriving from
//! outside goes through the `*_decompress` / `gt_check` entry points.
//! Scalars are 32-byte big-endian and reduced mod r.

use std::slice;

use ark_bls12_381::{Bls12_381, Fq12, Fr, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::hashing::curve_maps::wb::WBMap;
use ark_ec::hashing::map_to_curve_hasher::MapToCurveBasedHasher;
use ark_ec::hashing::HashToCurve;
use ark_ec::pairing::Pairing;
use ark_ec::{AffineRepr, CurveGroup};
use ark_ff::field_hashers::DefaultFieldHasher;
use ark_ff::{Field, One, PrimeField};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize, Compress, Validate};
use sha2::Sha256;

const G1_RAW: usize = 96;
const G2_RAW: usize = 192;
const GT_RAW: usize = 576;
const G1_PACKED: usize = 48;
const G2_PACKED: usize = 96;

const OK: i32 = 0;
const ERR_DECODE: i32 = 1;
const ERR_HASH: i32 = 2;

unsafe fn input<'a>(ptr: *const u8, len: usize) -> &'a [u8] {
    slice::from_raw_parts(ptr, len)
}

unsafe fn output<'a>(ptr: *mut u8, len: usize) -> &'a mut [u8] {
    slice::from_raw_parts_mut(ptr, len)
}

fn read<T: CanonicalDeserialize>(bytes: &[u8], compress: Compress, validate: Validate) -> Option<T> {
    T::deserialize_with_mode(bytes, compress, validate).ok()
}

fn write<T: CanonicalSerialize>(value: &T, compress: Compress, out: &mut [u8]) {
    let mut buf = Vec::with_capacity(out.len());
    value
        .serialize_with_mode(&mut buf, compress)
        .expect("serialization into a Vec cannot fail");
    out.copy_from_slice(&buf);
}

fn scalar(bytes: &[u8]) -> Fr {
    Fr::from_be_bytes_mod_order(bytes)
}

unsafe fn g1(ptr: *const u8) -> G1Affine {
    read(input(ptr, G1_RAW), Compress::No, Validate::No).expect("trusted G1 payload")
}

unsafe fn g2(ptr: *const u8) -> G2Affine {
    read(input(ptr, G2_RAW), Compress::No, Validate::No).expect("trusted G2 payload")
}

unsafe fn gt(ptr: *const u8) -> Fq12 {
    read(input(ptr, GT_RAW), Compress::No, Validate::No).expect("trusted GT payload")
}

unsafe fn put_g1(p: G1Affine, out: *mut u8) {
    write(&p, Compress::No, output(out, G1_RAW));
}

unsafe fn put_g2(p: G2Affine, out: *mut u8) {
    write(&p, Compress::No, output(out, G2_RAW));
}

unsafe fn put_gt(x: Fq12, out: *mut u8) {
    write(&x, Compress::No, output(out, GT_RAW));
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g1_generator(out: *mut u8) {
    put_g1(G1Affine::generator(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g2_generator(out: *mut u8) {
    put_g2(G2Affine::generator(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g1_identity(out: *mut u8) {
    put_g1(G1Affine::zero(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g2_identity(out: *mut u8) {
    put_g2(G2Affine::zero(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g1_add(a: *const u8, b: *const u8, out: *mut u8) {
    put_g1((g1(a) + g1(b)).into_affine(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g2_add(a: *const u8, b: *const u8, out: *mut u8) {
    put_g2((g2(a) + g2(b)).into_affine(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g1_neg(a: *const u8, out: *mut u8) {
    put_g1(-g1(a), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g2_neg(a: *const u8, out: *mut u8) {
    put_g2(-g2(a), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g1_mul(a: *const u8, k: *const u8, out: *mut u8) {
    let p: G1Projective = g1(a).mul_bigint(scalar(input(k, 32)).into_bigint());
    put_g1(p.into_affine(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g2_mul(a: *const u8, k: *const u8, out: *mut u8) {
    let p: G2Projective = g2(a).mul_bigint(scalar(input(k, 32)).into_bigint());
    put_g2(p.into_affine(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_gt_one(out: *mut u8) {
    put_gt(Fq12::one(), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_gt_mul(a: *const u8, b: *const u8, out: *mut u8) {
    put_gt(gt(a) * gt(b), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_gt_inv(a: *const u8, out: *mut u8) {
    put_gt(gt(a).inverse().expect("GT elements are nonzero"), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_gt_pow(a: *const u8, k: *const u8, out: *mut u8) {
    let e = scalar(input(k, 32)).into_bigint();
    put_gt(gt(a).pow(e), out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_pairing(a: *const u8, b: *const u8, out: *mut u8) {
    put_gt(Bls12_381::pairing(g1(a), g2(b)).0, out);
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g1_compress(a: *const u8, out: *mut u8) {
    write(&g1(a), Compress::Yes, output(out, G1_PACKED));
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g2_compress(a: *const u8, out: *mut u8) {
    write(&g2(a), Compress::Yes, output(out, G2_PACKED));
}

/// Checked decode: curve equation, subgroup membership and canonical form.
#[no_mangle]
pub unsafe extern "C" fn udvs_g1_decompress(data: *const u8, out: *mut u8) -> i32 {
    let bytes = input(data, G1_PACKED);
    match read::<G1Affine>(bytes, Compress::Yes, Validate::Yes) {
        Some(p) => {
            let mut again = [0u8; G1_PACKED];
            write(&p, Compress::Yes, &mut again);
            if again[..] != bytes[..] {
                return ERR_DECODE;
            }
            put_g1(p, out);
            OK
        }
        None => ERR_DECODE,
    }
}

#[no_mangle]
pub unsafe extern "C" fn udvs_g2_decompress(data: *const u8, out: *mut u8) -> i32 {
    let bytes = input(data, G2_PACKED);
    match read::<G2Affine>(bytes, Compress::Yes, Validate::Yes) {
        Some(p) => {
            let mut again = [0u8; G2_PACKED];
            write(&p, Compress::Yes, &mut again);
            if again[..] != bytes[..] {
                return ERR_DECODE;
            }
            put_g2(p, out);
            OK
        }
        None => ERR_DECODE,
    }
}

/// Checked GT decode: reduced coordinates and membership in the order-r subgroup.
#[no_mangle]
pub unsafe extern "C" fn udvs_gt_check(data: *const u8) -> i32 {
    let bytes = input(data, GT_RAW);
    let x: Fq12 = match read(bytes, Compress::No, Validate::Yes) {
        Some(x) => x,
        None => return ERR_DECODE,
    };
    let mut again = [0u8; GT_RAW];
    write(&x, Compress::No, &mut again);
    if again[..] != bytes[..] || x.pow(Fr::MODULUS) != Fq12::one() {
        return ERR_DECODE;
    }
    OK
}

/// Hash to G1 per the SSWU random-oracle suite over SHA-256.
#[no_mangle]
pub unsafe extern "C" fn udvs_hash_to_g1(
    msg: *const u8,
    msg_len: usize,
    dst: *const u8,
    dst_len: usize,
    out: *mut u8,
) -> i32 {
    let hasher = match MapToCurveBasedHasher::<
        G1Projective,
        DefaultFieldHasher<Sha256, 128>,
        WBMap<ark_bls12_381::g1::Config>,
    >::new(input(dst, dst_len))
    {
        Ok(h) => h,
        Err(_) => return ERR_HASH,
    };
    match hasher.hash(input(msg, msg_len)) {
        Ok(p) => {
            put_g1(p, out);
            OK
        }
        Err(_) => ERR_HASH,
    }
}

#[no_mangle]
pub extern "C" fn udvs_abi_version() -> u32 {
    1
}
