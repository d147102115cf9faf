#!/usr/bin/env python3
"""Independent reference for the group primitives and frozen test vectors.

Implements edwards25519 arithmetic from first principles (big integers,
RFC 8032 field/point math) without touching the C++ implementation, then
prints the vector set. With --check FILE it recomputes everything and
diffs against a previously frozen vector file, exiting nonzero on any
mismatch.
"""

import hashlib
import sys

P = 2**255 - 19
L = 2**252 + 27742317777372353535851937790883648493
D = (-121665 * pow(121666, P - 2, P)) % P
SQRT_M1 = pow(2, (P - 1) // 4, P)

HS_TAG = b"ringvote.hs.v1"
HP_TAG = b"ringvote.hp.v1"
CANDIDATE_TAG = b"ringvote.candidate.v1"

# extended homogeneous coordinates (X, Y, Z, T), x = X/Z, y = Y/Z, T = XY/Z
IDENT = (0, 1, 1, 0)


def point_add(p, q):
    x1, y1, z1, t1 = p
    x2, y2, z2, t2 = q
    a = (y1 - x1) * (y2 - x2) % P
    b = (y1 + x1) * (y2 + x2) % P
    c = 2 * t1 * t2 * D % P
    d = 2 * z1 * z2 % P
    e, f, g, h = b - a, d - c, d + c, b + a
    return (e * f % P, g * h % P, f * g % P, e * h % P)


def point_mul(s, p):
    q = IDENT
    while s > 0:
        if s & 1:
            q = point_add(q, p)
        p = point_add(p, p)
        s >>= 1
    return q


def point_eq(p, q):
    x1, y1, z1, _ = p
    x2, y2, z2, _ = q
    return (x1 * z2 - x2 * z1) % P == 0 and (y1 * z2 - y2 * z1) % P == 0


def recover_x(y, sign):
    if y >= P:
        return None
    x2 = (y * y - 1) * pow(D * y * y + 1, P - 2, P) % P
    x = pow(x2, (P + 3) // 8, P)
    if (x * x - x2) % P != 0:
        x = x * SQRT_M1 % P
    if (x * x - x2) % P != 0:
        return None
    if x == 0 and sign:
        return None
    if x & 1 != sign:
        x = P - x
    return x


def decompress(b):
    y = int.from_bytes(b, "little") & ((1 << 255) - 1)
    sign = b[31] >> 7
    x = recover_x(y, sign)
    if x is None:
        return None
    return (x, y, 1, x * y % P)


def compress(p):
    x, y, z, _ = p
    zinv = pow(z, P - 2, P)
    x, y = x * zinv % P, y * zinv % P
    return ((y | ((x & 1) << 255)).to_bytes(32, "little"))


G = decompress(bytes([0x58] + [0x66] * 31))


def hash_to_scalar(data: bytes) -> int:
    return int.from_bytes(hashlib.sha512(HS_TAG + data).digest(), "little") % L


def hash_to_point(data: bytes):
    ctr = 0
    while True:
        h = hashlib.sha512(HP_TAG + data + ctr.to_bytes(4, "little")).digest()
        cand = h[:32]
        ctr += 1
        y = int.from_bytes(cand, "little") & ((1 << 255) - 1)
        if y >= P:
            continue
        pt = decompress(cand)
        if pt is None:
            continue
        p8 = point_mul(8, pt)
        if point_eq(p8, IDENT):
            continue
        return p8


def encode_candidate(name: str):
    return hash_to_point(CANDIDATE_TAG + name.encode())


def scalar_hex(s: int) -> str:
    return s.to_bytes(32, "little").hex()


def vectors():
    out = []
    out.append(("hs_tag", HS_TAG.decode()))
    out.append(("hp_tag", HP_TAG.decode()))
    out.append(("candidate_tag", CANDIDATE_TAG.decode()))
    for label, data in [("empty", b""), ("abc", b"abc"),
                        ("msg", b"ringvote test vector")]:
        out.append((f"hs_{label}", scalar_hex(hash_to_scalar(data))))
    for label, data in [("empty", b""), ("abc", b"abc"),
                        ("msg", b"ringvote test vector")]:
        out.append((f"hp_{label}", compress(hash_to_point(data)).hex()))
    for name in ["alice", "bob", "carol"]:
        out.append((f"candidate_{name}", compress(encode_candidate(name)).hex()))

    # key image I = x * Hp(encode(x*G)) for a fixed secret
    x = hash_to_scalar(b"test secret")
    pub = point_mul(x, G)
    image = point_mul(x, hash_to_point(compress(pub)))
    out.append(("image_secret", scalar_hex(x)))
    out.append(("image_public", compress(pub).hex()))
    out.append(("image_value", compress(image).hex()))

    # stealth address SA = Hs(encode(r*A))*G + B for fixed r, a, candidate "alice"
    r = hash_to_scalar(b"stealth r")
    a = hash_to_scalar(b"escrow a")
    big_a = point_mul(a, G)
    shared = hash_to_scalar(compress(point_mul(r, big_a)))
    sa = point_add(point_mul(shared, G), encode_candidate("alice"))
    out.append(("stealth_r", scalar_hex(r)))
    out.append(("stealth_a", scalar_hex(a)))
    out.append(("stealth_nonce_point", compress(point_mul(r, G)).hex()))
    out.append(("stealth_sa", compress(sa).hex()))

    # product of three manager secrets mod L
    secrets = [hash_to_scalar(b"manager " + bytes([c])) for c in b"123"]
    prod = 1
    for s in secrets:
        prod = prod * s % L
    for i, s in enumerate(secrets, 1):
        out.append((f"escrow_secret_{i}", scalar_hex(s)))
    out.append(("escrow_product", scalar_hex(prod)))
    return out


def main():
    lines = [f"{k} = {v}" for k, v in vectors()]
    if len(sys.argv) == 3 and sys.argv[1] == "--check":
        with open(sys.argv[2]) as f:
            frozen = [ln.rstrip("\n") for ln in f if ln.strip() and not ln.startswith("#")]
        if frozen != lines:
            for a, b in zip(frozen, lines):
                if a != b:
                    print(f"mismatch:\n  frozen:   {a}\n  computed: {b}")
            if len(frozen) != len(lines):
                print(f"line count differs: frozen {len(frozen)}, computed {len(lines)}")
            return 1
        print(f"all {len(lines)} vectors match")
        return 0
    for ln in lines:
        print(ln)
    return 0


if __name__ == "__main__":
    sys.exit(main())
