"""Constructors for the permutation groups the toolkit works with.

Projective groups act on the projective line over GF(q) (q = p or p^2,
q <= 289), special linear groups on the nonzero vectors of GF(q)^2, and
the sporadic group of order 175560 loads from a checked-in data file
guarded by a hash pin plus a programmatic validation gate.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass
from importlib import resources
from typing import List, Optional, Tuple

import numpy as np

from .permcore import PermGroup, Permutation, _build_chain_from_arrays

_MAX_Q = 289

_J1_ORDER = 175560
_J1_DEGREE = 266
_J1_SHA256 = "98535ff251df6f548a805c7d7be15c300ab22e85e12acb8583affc306280431a"


def _factor(n: int) -> List[Tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _primes_up_to(bound: int) -> List[int]:
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).tolist()


class _Field:
    """GF(q) with elements encoded as integers a0 + a1*p (q = p or p^2)."""

    def __init__(self, q: int):
        if q < 2 or q > _MAX_Q:
            raise ValueError(f"field size {q} out of supported range")
        fac = _factor(q)
        if len(fac) != 1 or fac[0][1] > 2:
            raise ValueError(f"field size {q} is not p or p^2 with p prime")
        self.q = q
        self.p, self.k = fac[0]
        if self.k == 2:
            self.modulus = self._smallest_irreducible()
        else:
            self.modulus = None

    def _smallest_irreducible(self) -> Tuple[int, int]:
        # lexicographically least (b, c) with x^2 + b x + c irreducible;
        # degree 2, so irreducible iff rootless (works in characteristic 2 too)
        p = self.p
        for b in range(p):
            for c in range(p):
                if all((x * x + b * x + c) % p for x in range(p)):
                    return (b, c)
        raise RuntimeError("no irreducible quadratic found")

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        return (a + b) % p + (((a // p) + (b // p)) % p) * p

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (-a) % p
        return (-a) % p + ((-(a // p)) % p) * p

    def mul(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a * b) % p
        a0, a1 = a % p, a // p
        b0, b1 = b % p, b // p
        bm, cm = self.modulus
        # (a0 + a1 x)(b0 + b1 x) with x^2 = -bm x - cm
        hi = a1 * b1
        c0 = (a0 * b0 - hi * cm) % p
        c1 = (a0 * b1 + a1 * b0 - hi * bm) % p
        return c0 + c1 * p

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("field inverse of zero")
        # a^(q-2) by square and multiply
        result, base, e = self.one, a, self.q - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> List[int]:
        if self.k == 1:
            return list(range(self.p))
        return [a0 + a1 * self.p for a1 in range(self.p) for a0 in range(self.p)]

    def element_order(self, a: int) -> int:
        acc, n = a, 1
        while acc != self.one:
            acc = self.mul(acc, a)
            n += 1
        return n

    def primitive(self) -> int:
        for a in self.elements():
            if a and self.element_order(a) == self.q - 1:
                return a
        raise RuntimeError("no primitive element found")


def _with_meta(group: PermGroup, **meta) -> PermGroup:
    group.meta = meta
    return group


def _projective_permutation(field: _Field, fn) -> Permutation:
    """fn maps a finite field value to a value or None (= infinity); point q is infinity."""
    q = field.q
    images = np.empty(q + 1, dtype=np.int32)
    for z in range(q):
        w = fn(z)
        images[z] = q if w is None else w
    w = fn(None)
    images[q] = q if w is None else w
    return Permutation(images)


def psl2(q: int) -> PermGroup:
    """PSL(2, q) on the q + 1 points of the projective line; q odd, 5 <= q <= 289."""
    field = _Field(q)
    if q < 5 or q % 2 == 0:
        raise ValueError("psl2 supports odd q >= 5")
    t = field.primitive()
    t2 = field.mul(t, t)

    def translate(z):
        return None if z is None else field.add(z, field.one)

    def scale(z):
        return None if z is None else field.mul(t2, z)

    def invert(z):
        if z is None:
            return 0
        if z == 0:
            return None
        return field.neg(field.inv(z))

    group = PermGroup(
        [
            _projective_permutation(field, translate),
            _projective_permutation(field, scale),
            _projective_permutation(field, invert),
        ]
    )
    expected = q * (q * q - 1) // 2
    if group.order() != expected:
        raise RuntimeError(f"psl2({q}) order {group.order()} != {expected}")
    return _with_meta(
        group, label=f"PSL(2,{q})", field={"p": field.p, "k": field.k, "modulus_bc": field.modulus}
    )


def pgl2(q: int) -> PermGroup:
    """PGL(2, q) on the projective line; q an odd prime."""
    field = _Field(q)
    if field.k != 1 or q < 5:
        raise ValueError("pgl2 supports odd primes q >= 5")
    t = field.primitive()

    def translate(z):
        return None if z is None else field.add(z, field.one)

    def scale_t(z):
        return None if z is None else field.mul(t, z)

    def invert(z):
        if z is None:
            return 0
        if z == 0:
            return None
        return field.neg(field.inv(z))

    group = PermGroup(
        [
            _projective_permutation(field, translate),
            _projective_permutation(field, scale_t),
            _projective_permutation(field, invert),
        ]
    )
    expected = q * (q * q - 1)
    if group.order() != expected:
        raise RuntimeError(f"pgl2({q}) order {group.order()} != {expected}")
    return _with_meta(group, label=f"PGL(2,{q})", field={"p": field.p, "k": 1, "modulus_bc": None})


def sl2(q: int) -> PermGroup:
    """SL(2, q) on the q^2 - 1 nonzero vectors of GF(q)^2."""
    field = _Field(q)
    if q < 3:
        raise ValueError("sl2 supports q >= 3")
    vecs = [(a, b) for a in field.elements() for b in field.elements() if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def mat_perm(m) -> Permutation:
        (m00, m01), (m10, m11) = m
        images = np.empty(len(vecs), dtype=np.int32)
        for i, (x, y) in enumerate(vecs):
            nx = field.add(field.mul(m00, x), field.mul(m01, y))
            ny = field.add(field.mul(m10, x), field.mul(m11, y))
            images[i] = pos[(nx, ny)]
        return Permutation(images)

    one = field.one
    t = field.primitive()
    # transvections by 1 and by a primitive element span every transvection
    group = PermGroup(
        [
            mat_perm(((one, one), (0, one))),
            mat_perm(((one, t), (0, one))),
            mat_perm(((0, one), (field.neg(one), 0))),
        ]
    )
    expected = q * (q * q - 1)
    if group.order() != expected:
        raise RuntimeError(f"sl2({q}) order {group.order()} != {expected}")
    return _with_meta(
        group, label=f"SL(2,{q})", field={"p": field.p, "k": field.k, "modulus_bc": field.modulus}
    )


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    if n == 1:
        return _with_meta(PermGroup([], degree=1), label="Z1")
    return _with_meta(
        PermGroup([Permutation(np.roll(np.arange(n, dtype=np.int32), -1))]),
        label=f"Z{n}",
    )


def dihedral(order: int) -> PermGroup:
    """Dihedral group of the given (even, >= 6) order, on order/2 points."""
    if order % 2 or order < 6:
        raise ValueError("dihedral order must be even and at least 6")
    m = order // 2
    rot = np.roll(np.arange(m, dtype=np.int32), -1)
    ref = np.array([(-x) % m for x in range(m)], dtype=np.int32)
    group = PermGroup([Permutation(rot), Permutation(ref)])
    if group.order() != order:
        raise RuntimeError("dihedral construction failed")
    return _with_meta(group, label=f"D{order}")


def a5() -> PermGroup:
    group = PermGroup(
        [Permutation.from_cycles(5, [[0, 1, 2, 3, 4]]), Permutation.from_cycles(5, [[0, 1, 2]])]
    )
    return _with_meta(group, label="A5")


def d10() -> PermGroup:
    return _with_meta(dihedral(10), label="D10")


def direct_product(a: PermGroup, b: PermGroup) -> PermGroup:
    """A x B on the disjoint union of their domains."""
    da, db = a.degree, b.degree
    gens = []
    for g in a.generators:
        images = np.concatenate([g.images, np.arange(da, da + db, dtype=np.int32)])
        gens.append(Permutation(images))
    for g in b.generators:
        images = np.concatenate([np.arange(da, dtype=np.int32), g.images + da])
        gens.append(Permutation(images))
    group = PermGroup(gens, degree=da + db)
    if group.order() != a.order() * b.order():
        raise RuntimeError("direct product order mismatch")
    la = getattr(a, "meta", {}).get("label", "?")
    lb = getattr(b, "meta", {}).get("label", "?")
    return _with_meta(group, label=f"{la} x {lb}")


def direct_with_z2(group: PermGroup) -> PermGroup:
    """G x Z2 acting on two copies of the domain, the Z2 swapping them."""
    d = group.degree
    gens = []
    for g in group.generators:
        gens.append(Permutation(np.concatenate([g.images, g.images + d])))
    swap = np.concatenate([np.arange(d, 2 * d, dtype=np.int32), np.arange(d, dtype=np.int32)])
    gens.append(Permutation(swap))
    out = PermGroup(gens, degree=2 * d)
    if out.order() != 2 * group.order():
        raise RuntimeError("direct_with_z2 order mismatch")
    label = getattr(group, "meta", {}).get("label", "?")
    return _with_meta(out, label=f"{label} x Z2")


_j1_lock = threading.Lock()
_j1_cache: Optional[PermGroup] = None


def _normal_closure_is_whole(group: PermGroup, seed_elem: np.ndarray, target: int) -> bool:
    gens = [seed_elem]
    parent_invs = [np.argsort(g).astype(np.int32) for g in group.gen_arrays]
    while True:
        chain = _build_chain_from_arrays(gens, group.degree)
        if chain.order == target:
            return True
        fresh = []
        for k in gens:
            for g, g_inv in zip(group.gen_arrays, parent_invs):
                c = g[k[g_inv]]
                if not chain.contains(c):
                    fresh.append(c)
        if not fresh:
            return chain.order == target
        gens.extend(fresh)


def j1() -> PermGroup:
    """The sporadic simple group of order 175560 on 266 points.

    Loads two checked-in generators, verifies the file hash, the group
    order, transitivity, and that sampled normal closures are the whole
    group.  Any failure is a hard error; the result is memoized.
    """
    global _j1_cache
    with _j1_lock:
        if _j1_cache is not None:
            return _j1_cache
        raw = resources.files("orbitale").joinpath("data/j1_gens_266.txt").read_bytes()
        digest = hashlib.sha256(raw).hexdigest()
        if digest != _J1_SHA256:
            raise RuntimeError(
                "sporadic-group data file failed its integrity check; refusing to load"
            )
        rows = [line.split() for line in raw.decode().splitlines() if line.strip()]
        if len(rows) != 2 or any(len(r) != _J1_DEGREE for r in rows):
            raise RuntimeError("sporadic-group data file has the wrong shape")
        group = PermGroup([Permutation(np.array(r, dtype=np.int32)) for r in rows])
        if group.order() != _J1_ORDER:
            raise RuntimeError("sporadic-group data failed the order check")
        level0 = group.chain.levels[0]
        if len(level0.orbit) != _J1_DEGREE:
            raise RuntimeError("sporadic-group data is not transitive")
        rng = np.random.default_rng(2026)
        for _ in range(3):
            sample = group.random_element(rng)
            if np.array_equal(sample, np.arange(_J1_DEGREE, dtype=np.int32)):
                continue
            if not _normal_closure_is_whole(group, sample, _J1_ORDER):
                raise RuntimeError("sporadic-group data failed the simplicity spot check")
        _j1_cache = _with_meta(group, label="J1")
        return _j1_cache


@dataclass(frozen=True)
class SimpleGroupRecord:
    name: str
    order: int
    n_value: int
    from_family: bool
    p: Optional[int] = None


# fixed nonabelian-simple candidates with order 2^i * 3^j * 5 * n
_FIXED_SIMPLE_ORDERS = (
    ("M22", 2 ** 7 * 3 ** 2 * 5 * 7 * 11),
    ("M23", 2 ** 7 * 3 ** 2 * 5 * 7 * 11 * 23),
    ("M24", 2 ** 10 * 3 ** 3 * 5 * 7 * 11 * 23),
    ("J1", 2 ** 3 * 3 * 5 * 7 * 11 * 19),
    ("J2", 2 ** 7 * 3 ** 3 * 5 ** 2 * 7),
    ("Sz(32)", 2 ** 10 * 5 ** 2 * 31 * 41),
    ("PSU(3,4)", 2 ** 6 * 3 * 5 ** 2 * 13),
    ("PSp(4,4)", 2 ** 8 * 3 ** 2 * 5 ** 2 * 17),
    ("PSL(2,25)", 2 ** 3 * 3 * 5 ** 2 * 13),
    ("PSL(2,64)", 2 ** 6 * 3 ** 2 * 5 * 7 * 13),
    ("PSL(2,256)", 2 ** 8 * 3 * 5 * 17 * 257),
    ("PSL(5,2)", 2 ** 10 * 3 ** 2 * 5 * 7 * 31),
)


def _two_three_cofactor(order: int, n: int) -> Optional[Tuple[int, int]]:
    """(i, j) with order = 2^i * 3^j * 5 * n, i in [1,11], j in [0,2]; else None."""
    if order % (5 * n):
        return None
    rem = order // (5 * n)
    i = 0
    while rem % 2 == 0:
        rem //= 2
        i += 1
    j = 0
    while rem % 3 == 0:
        rem //= 3
        j += 1
    if rem == 1 and 1 <= i <= 11 and j <= 2:
        return (i, j)
    return None


def filter_simple_orders(n: int, psl2_prime_bound: int = 10 ** 4) -> List[SimpleGroupRecord]:
    """Simple groups of order 2^i * 3^j * 5 * n (i in [1,11], j in [0,2]).

    Checks the fixed sporadic/exceptional database plus the PSL(2, p)
    order formula for primes up to the bound.  n must be odd,
    square-free, with at least three prime factors.
    """
    if n % 2 == 0:
        raise ValueError("n must be odd")
    fac = _factor(n)
    if any(e > 1 for _, e in fac):
        raise ValueError("n must be square-free")
    if len(fac) < 3:
        raise ValueError("n must have at least three prime factors")

    out = []
    for name, order in _FIXED_SIMPLE_ORDERS:
        if _two_three_cofactor(order, n) is not None:
            out.append(SimpleGroupRecord(name, order, n, from_family=False))
    for p in _primes_up_to(psl2_prime_bound):
        if p < 29:
            continue
        order = p * (p * p - 1) // 2
        if _two_three_cofactor(order, n) is not None:
            out.append(SimpleGroupRecord(f"PSL(2,{p})", order, n, from_family=True, p=p))
    return sorted(out, key=lambda r: r.order)
