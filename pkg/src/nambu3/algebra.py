"""The ternary algebra on the paired mode basis L[r], M[r] (r an integer).

Three structure maps generate everything here: the commutative product
(L[r]L[s] = L[r+s], M[r]M[s] = M[r+s], cross products vanish), the degree
map delta (delta L[r] = r L[r], likewise on M), and the kind-swapping
involution omega (omega L[r] = M[-r] and back).

The ternary bracket comes in two deliberately independent routes:

* ``bracket`` applies the closed structure-constant table
  [L_r, L_s, M_t] = (s-r) L_{r+s-t} and [L_r, M_s, M_t] = (t-s) M_{s+t-r},
  extended totally antisymmetrically, with all-L and all-M triples zero.
* ``bracket_det`` expands the 3x3 determinant whose rows are the omega
  images, the arguments themselves, and the delta images, using only the
  commutative product.

The two must agree everywhere; keeping both gives a structural oracle for
the table.  ``check_fundamental`` sweeps the ternary Jacobi identity over a
finite index window.  Indices are Laurent-mode integers capped at +/-2^40;
index arithmetic that leaves the cap raises IndexOverflow.  The bracket
lowers no degree bound and shifts indices by at most the sum of its inputs,
so a window check exercises every structure constant whose indices fit:
coefficients are affine in each index and the identity is index-translation
covariant, which is why small windows are conclusive for the table.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Tuple

from .errors import IndexOverflow
from .linear import LinComb
from .reports import DefectEntry, DefectReport
from .scalar import Scalar

INDEX_LIMIT = 1 << 40

DEFAULT_FI_WINDOW = range(-2, 3)


class BasisKey(NamedTuple):
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}[{self.index}]"


def _check_index(r: int) -> int:
    if r > INDEX_LIMIT or r < -INDEX_LIMIT:
        raise IndexOverflow(f"basis index {r} outside +/-2^40")
    return r


def L(r: int) -> BasisKey:
    return BasisKey("L", _check_index(r))


def M(r: int) -> BasisKey:
    return BasisKey("M", _check_index(r))


class AlgElem(LinComb):
    """Finite Scalar-linear combination of basis keys."""

    @staticmethod
    def _check_key(key) -> None:
        if not (isinstance(key, BasisKey) and key.kind in ("L", "M")):
            raise TypeError(f"AlgElem keys must be L/M BasisKey, got {key!r}")


def basis_elem(key: BasisKey) -> AlgElem:
    return AlgElem.term(key)


# -- structure maps ----------------------------------------------------------


def assoc_mul(x: AlgElem, y: AlgElem) -> AlgElem:
    """Commutative product; modes add within a kind, cross terms vanish."""
    acc: dict = {}
    for kx, cx in x._terms.items():
        for ky, cy in y._terms.items():
            if kx.kind != ky.kind:
                continue
            key = BasisKey(kx.kind, _check_index(kx.index + ky.index))
            tot = acc.get(key, Scalar(0)) + cx * cy
            if tot.is_zero:
                acc.pop(key, None)
            else:
                acc[key] = tot
    return AlgElem(acc)


def delta(x: AlgElem) -> AlgElem:
    """Degree map: scales each basis term by its index."""
    return AlgElem([(k, c * k.index) for k, c in x._terms.items()])


def omega(x: AlgElem) -> AlgElem:
    """Kind-swapping involution, negating the index."""
    swap = {"L": "M", "M": "L"}
    return AlgElem([(BasisKey(swap[k.kind], -k.index), c)
                    for k, c in x._terms.items()])


# -- ternary bracket: structure-constant route -------------------------------


def bracket_keys(k1: BasisKey, k2: BasisKey, k3: BasisKey):
    """Bracket of three basis keys as (integer coefficient, key), or None.

    Sorts the arguments into canonical order while tracking permutation
    parity, so total antisymmetry is built in.
    """
    a, b, c = k1, k2, k3
    sign = 1
    if a > b:
        a, b, sign = b, a, -sign
    if b > c:
        b, c, sign = c, b, -sign
    if a > b:
        a, b, sign = b, a, -sign
    if a == b or b == c:
        return None
    pattern = a.kind + b.kind + c.kind
    if pattern == "LLM":
        coeff = b.index - a.index
        key = BasisKey("L", _check_index(a.index + b.index - c.index))
    elif pattern == "LMM":
        coeff = c.index - b.index
        key = BasisKey("M", _check_index(b.index + c.index - a.index))
    else:
        return None
    if not coeff:
        return None
    return sign * coeff, key


def trilinear(key_fn: Callable) -> Callable:
    """Extend a key-level ternary table to elements by trilinearity."""

    def apply(x: AlgElem, y: AlgElem, z: AlgElem) -> AlgElem:
        acc: dict = {}
        for kx, cx in x._terms.items():
            for ky, cy in y._terms.items():
                cxy = cx * cy
                for kz, cz in z._terms.items():
                    hit = key_fn(kx, ky, kz)
                    if hit is None:
                        continue
                    coeff, key = hit
                    tot = acc.get(key, Scalar(0)) + cxy * cz * coeff
                    if tot.is_zero:
                        acc.pop(key, None)
                    else:
                        acc[key] = tot
        return AlgElem(acc)

    return apply


bracket = trilinear(bracket_keys)


# -- ternary bracket: determinant route ---------------------------------------


def bracket_det(x: AlgElem, y: AlgElem, z: AlgElem) -> AlgElem:
    """Determinant with rows (omega row, identity row, delta row).

    Cofactor expansion along the omega row, multiplied out with assoc_mul.
    Kept free of any structure-constant knowledge so it can referee
    ``bracket``.
    """
    top = (omega(x), omega(y), omega(z))
    mid = (x, y, z)
    bot = (delta(x), delta(y), delta(z))

    def minor(j: int) -> AlgElem:
        a, b = [i for i in (0, 1, 2) if i != j]
        return assoc_mul(mid[a], bot[b]) - assoc_mul(mid[b], bot[a])

    det = AlgElem.zero()
    for j, parity in ((0, 1), (1, -1), (2, 1)):
        det = det + assoc_mul(top[j], minor(j)) * parity
    return det


# -- fundamental identity sweep ------------------------------------------------


def _window_keys(window: Iterable[int]) -> tuple:
    idx = sorted(set(window))
    return tuple([BasisKey("L", i) for i in idx] + [BasisKey("M", i) for i in idx])


def _fi_defect(kb: Callable, x1, x2, x3, x4, x5) -> Optional[dict]:
    acc: dict = {}

    def add(c: int, key: BasisKey) -> None:
        tot = acc.get(key, 0) + c
        if tot:
            acc[key] = tot
        else:
            acc.pop(key, None)

    inner = kb(x3, x4, x5)
    if inner is not None:
        hit = kb(x1, x2, inner[1])
        if hit is not None:
            add(inner[0] * hit[0], hit[1])
    first = kb(x1, x2, x3)
    if first is not None:
        hit = kb(first[1], x4, x5)
        if hit is not None:
            add(-first[0] * hit[0], hit[1])
    second = kb(x1, x2, x4)
    if second is not None:
        hit = kb(x3, second[1], x5)
        if hit is not None:
            add(-second[0] * hit[0], hit[1])
    third = kb(x1, x2, x5)
    if third is not None:
        hit = kb(x3, x4, third[1])
        if hit is not None:
            add(-third[0] * hit[0], hit[1])
    return acc or None


def _fi_scan(first_keys: tuple, keys: tuple, kb: Optional[Callable]) -> list:
    if kb is None:
        kb = bracket_keys
    entries = []
    for x1 in first_keys:
        for x2 in keys:
            for x3 in keys:
                for x4 in keys:
                    for x5 in keys:
                        defect = _fi_defect(kb, x1, x2, x3, x4, x5)
                        if defect is None:
                            continue
                        elem = AlgElem(list(defect.items()))
                        indices = (x1.kind, x1.index, x2.kind, x2.index,
                                   x3.kind, x3.index, x4.kind, x4.index,
                                   x5.kind, x5.index)
                        entries.append(DefectEntry(
                            axiom="fundamental-identity",
                            indices=indices,
                            defect=elem,
                            family="algebra"))
    return entries


def _resolve_parallelism(parallelism: int, grid: int) -> int:
    if parallelism == 1:
        return 1
    if parallelism == 0:
        if grid < 50000:
            return 1
        return min(os.cpu_count() or 1, 8)
    return parallelism


def check_fundamental(window: Iterable[int] = DEFAULT_FI_WINDOW,
                      key_bracket: Optional[Callable] = None,
                      parallelism: int = 1) -> DefectReport:
    """Sweep the ternary Jacobi identity over all key 5-tuples in the window.

    With the default table the grid may be fanned out across processes;
    a custom ``key_bracket`` (fault injection) always runs serially.
    Entries are sorted either way, so the report is deterministic.
    """
    keys = _window_keys(window)
    cases = len(keys) ** 5
    workers = _resolve_parallelism(parallelism, cases)
    if key_bracket is not None or workers <= 1:
        entries = _fi_scan(keys, keys, key_bracket)
    else:
        chunks = [keys[i::workers] for i in range(workers)]
        entries = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_fi_scan, chunk, keys, None)
                       for chunk in chunks if chunk]
            for fut in futures:
                entries.extend(fut.result())
    return DefectReport("fundamental-identity", cases, entries)
