"""Bitmask kernels over the full subset lattice of a small ground set.

Every kernel works on tables indexed by subset masks ``0 .. 2**n - 1`` and
has two implementations: a numba ``@njit`` version and a pure-numpy version.
The numba path is used when numba imports and ``ESTARLAB_JIT`` is not set to
``0``; ``benchmarks/bench_kernels.py`` times the two against each other.
"""

from __future__ import annotations

import os

import numpy as np

MASK_DTYPE = np.int64

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is optional
    njit = None

USE_JIT = njit is not None and os.environ.get("ESTARLAB_JIT", "1").strip().lower() not in ("0", "false", "no", "off")


def backend() -> str:
    return "numba" if USE_JIT else "numpy"


# ---------------------------------------------------------------------------
# pure numpy implementations


def _pointwise_np(n, nb):
    """inside[A] = {x : nb[x] <= A}; meet[A] = {x : nb[x] & A != 0}."""
    subsets = np.arange(1 << n, dtype=MASK_DTYPE)
    inside = np.zeros(1 << n, dtype=MASK_DTYPE)
    meet = np.zeros(1 << n, dtype=MASK_DTYPE)
    for x in range(n):
        bit = MASK_DTYPE(1 << x)
        inside |= np.where((nb[x] & ~subsets) == 0, bit, 0)
        meet |= np.where((nb[x] & subsets) != 0, bit, 0)
    return inside, meet


def _upward_closure_np(n, flags):
    out = np.array(flags, dtype=np.bool_, copy=True)
    for b in range(n):
        v = out.reshape(-1, 2, 1 << b)
        v[:, 1, :] |= v[:, 0, :]
    return out


def _subset_or_np(n, vals):
    out = np.array(vals, dtype=MASK_DTYPE, copy=True)
    for b in range(n):
        v = out.reshape(-1, 2, 1 << b)
        v[:, 1, :] |= v[:, 0, :]
    return out


def _superset_and_np(n, vals):
    out = np.array(vals, dtype=MASK_DTYPE, copy=True)
    for b in range(n):
        v = out.reshape(-1, 2, 1 << b)
        v[:, 0, :] &= v[:, 1, :]
    return out


def _minimal_elements_np(masks):
    m = np.unique(np.asarray(masks, dtype=MASK_DTYPE))
    if m.size <= 1:
        return m
    # below[i, j]: m[j] is a proper subset of m[i]
    below = ((m[None, :] & ~m[:, None]) == 0) & (m[None, :] != m[:, None])
    return m[~below.any(axis=1)]


def _meet_antichain_np(a, b):
    a = np.asarray(a, dtype=MASK_DTYPE)
    b = np.asarray(b, dtype=MASK_DTYPE)
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=MASK_DTYPE)
    return _minimal_elements_np((a[:, None] & b[None, :]).ravel())


def _coverage_np(n, flat, offsets):
    ok = np.zeros((n, 1 << n), dtype=np.bool_)
    for x in range(n):
        ok[x, flat[offsets[x]:offsets[x + 1]]] = True
        ok[x] = _upward_closure_np(n, ok[x])
    return ok


def _stable_family_np(n, ok):
    subsets = np.arange(1 << n, dtype=MASK_DTYPE)
    good = np.ones(1 << n, dtype=np.bool_)
    for x in range(n):
        good &= ((subsets >> x) & 1 == 0) | ok[x]
    return good


def _pointwise_closure_np(n, ok):
    full = (1 << n) - 1
    comp = full & ~np.arange(1 << n, dtype=MASK_DTYPE)
    out = np.zeros(1 << n, dtype=MASK_DTYPE)
    for x in range(n):
        out |= np.where(ok[x][comp], 0, MASK_DTYPE(1 << x))
    return out


def _image_table_np(n, fmap):
    out = np.zeros(1 << n, dtype=MASK_DTYPE)
    for b in range(n):
        v = out.reshape(-1, 2, 1 << b)
        v[:, 1, :] |= MASK_DTYPE(1 << int(fmap[b]))
    return out


def _preimage_table_np(m, fmap):
    subsets = np.arange(1 << m, dtype=MASK_DTYPE)
    out = np.zeros(1 << m, dtype=MASK_DTYPE)
    for x in range(len(fmap)):
        out |= ((subsets >> int(fmap[x])) & 1) << x
    return out


# ---------------------------------------------------------------------------
# numba implementations

if njit is not None:

    @njit(cache=True, nogil=True)
    def _pointwise_jit(n, nb):
        size = 1 << n
        inside = np.zeros(size, dtype=np.int64)
        meet = np.zeros(size, dtype=np.int64)
        for a in range(size):
            ins = 0
            met = 0
            for x in range(n):
                if nb[x] & ~a == 0:
                    ins |= 1 << x
                if nb[x] & a != 0:
                    met |= 1 << x
            inside[a] = ins
            meet[a] = met
        return inside, meet

    @njit(cache=True, nogil=True)
    def _upward_closure_jit(n, flags):
        out = flags.copy()
        size = 1 << n
        for b in range(n):
            bit = 1 << b
            for a in range(size):
                if a & bit and out[a ^ bit]:
                    out[a] = True
        return out

    @njit(cache=True, nogil=True)
    def _subset_or_jit(n, vals):
        out = vals.copy()
        size = 1 << n
        for b in range(n):
            bit = 1 << b
            for a in range(size):
                if a & bit:
                    out[a] |= out[a ^ bit]
        return out

    @njit(cache=True, nogil=True)
    def _superset_and_jit(n, vals):
        out = vals.copy()
        size = 1 << n
        for b in range(n):
            bit = 1 << b
            for a in range(size):
                if a & bit == 0:
                    out[a] &= out[a | bit]
        return out

    @njit(cache=True, nogil=True)
    def _minimal_elements_jit(masks):
        m = np.unique(masks)
        keep = np.ones(m.size, dtype=np.bool_)
        for i in range(m.size):
            for j in range(m.size):
                if i != j and m[j] & ~m[i] == 0:
                    keep[i] = False
                    break
        return m[keep]

    @njit(cache=True, nogil=True)
    def _meet_antichain_jit(a, b):
        buf = np.empty(a.size * b.size, dtype=np.int64)
        k = 0
        for i in range(a.size):
            for j in range(b.size):
                buf[k] = a[i] & b[j]
                k += 1
        return _minimal_elements_jit(buf)

    @njit(cache=True, nogil=True)
    def _coverage_jit(n, flat, offsets):
        size = 1 << n
        ok = np.zeros((n, size), dtype=np.bool_)
        for x in range(n):
            row = np.zeros(size, dtype=np.bool_)
            for k in range(offsets[x], offsets[x + 1]):
                row[flat[k]] = True
            ok[x, :] = _upward_closure_jit(n, row)
        return ok

    @njit(cache=True, nogil=True)
    def _stable_family_jit(n, ok):
        size = 1 << n
        good = np.ones(size, dtype=np.bool_)
        for a in range(size):
            for x in range(n):
                if (a >> x) & 1 and not ok[x, a]:
                    good[a] = False
                    break
        return good

    @njit(cache=True, nogil=True)
    def _pointwise_closure_jit(n, ok):
        size = 1 << n
        full = size - 1
        out = np.zeros(size, dtype=np.int64)
        for a in range(size):
            c = full & ~a
            r = 0
            for x in range(n):
                if not ok[x, c]:
                    r |= 1 << x
            out[a] = r
        return out

    @njit(cache=True, nogil=True)
    def _image_table_jit(n, fmap):
        size = 1 << n
        out = np.zeros(size, dtype=np.int64)
        for a in range(1, size):
            low = a & -a
            b = 0
            while (1 << b) != low:
                b += 1
            out[a] = out[a ^ low] | (1 << fmap[b])
        return out

    @njit(cache=True, nogil=True)
    def _preimage_table_jit(m, fmap):
        size = 1 << m
        out = np.zeros(size, dtype=np.int64)
        for bset in range(size):
            r = 0
            for x in range(fmap.size):
                if (bset >> fmap[x]) & 1:
                    r |= 1 << x
            out[bset] = r
        return out


# ---------------------------------------------------------------------------
# public dispatch


def _as_masks(a):
    return np.ascontiguousarray(a, dtype=MASK_DTYPE)


def pointwise_tables(n: int, nb) -> tuple[np.ndarray, np.ndarray]:
    """Tables of ``{x : nb[x] ⊆ A}`` and ``{x : nb[x] ∩ A ≠ ∅}`` for every A."""
    nb = _as_masks(nb)
    if USE_JIT:
        return _pointwise_jit(n, nb)
    return _pointwise_np(n, nb)


def upward_closure(n: int, flags) -> np.ndarray:
    flags = np.ascontiguousarray(flags, dtype=np.bool_)
    if USE_JIT:
        return _upward_closure_jit(n, flags)
    return _upward_closure_np(n, flags)


def subset_or(n: int, vals) -> np.ndarray:
    """out[A] = OR of vals[B] over all B ⊆ A."""
    vals = _as_masks(vals)
    if USE_JIT:
        return _subset_or_jit(n, vals)
    return _subset_or_np(n, vals)


def superset_and(n: int, vals) -> np.ndarray:
    """out[A] = AND of vals[B] over all B ⊇ A."""
    vals = _as_masks(vals)
    if USE_JIT:
        return _superset_and_jit(n, vals)
    return _superset_and_np(n, vals)


def minimal_elements(masks) -> np.ndarray:
    """Inclusion-minimal members, ascending."""
    masks = _as_masks(masks)
    if masks.size == 0:
        return masks
    if USE_JIT:
        return _minimal_elements_jit(masks)
    return _minimal_elements_np(masks)


def meet_antichain(a, b) -> np.ndarray:
    """Minimal members of ``{p & q : p in a, q in b}``, ascending."""
    a = _as_masks(a)
    b = _as_masks(b)
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=MASK_DTYPE)
    if USE_JIT:
        return _meet_antichain_jit(a, b)
    return _meet_antichain_np(a, b)


def coverage(n: int, antichains) -> np.ndarray:
    """ok[x, A] is True when some member of ``antichains[x]`` lies inside A."""
    sizes = [len(c) for c in antichains]
    offsets = np.zeros(n + 1, dtype=MASK_DTYPE)
    offsets[1:] = np.cumsum(sizes)
    flat = _as_masks(np.concatenate([np.asarray(c, dtype=MASK_DTYPE) for c in antichains]) if n else [])
    if USE_JIT:
        return _coverage_jit(n, flat, offsets)
    return _coverage_np(n, flat, offsets)


def stable_family(n: int, ok) -> np.ndarray:
    """Flags of the sets A with ok[x, A] for every x in A (∅ included)."""
    ok = np.ascontiguousarray(ok, dtype=np.bool_)
    if USE_JIT:
        return _stable_family_jit(n, ok)
    return _stable_family_np(n, ok)


def pointwise_closure(n: int, ok) -> np.ndarray:
    """cl[A] = {x : no member of x's antichain avoids A}."""
    ok = np.ascontiguousarray(ok, dtype=np.bool_)
    if USE_JIT:
        return _pointwise_closure_jit(n, ok)
    return _pointwise_closure_np(n, ok)


def image_table(n: int, fmap) -> np.ndarray:
    fmap = _as_masks(fmap)
    if USE_JIT:
        return _image_table_jit(n, fmap)
    return _image_table_np(n, fmap)


def preimage_table(m: int, fmap) -> np.ndarray:
    fmap = _as_masks(fmap)
    if USE_JIT:
        return _preimage_table_jit(m, fmap)
    return _preimage_table_np(m, fmap)


KERNELS = (
    "pointwise_tables",
    "upward_closure",
    "subset_or",
    "superset_and",
    "minimal_elements",
    "meet_antichain",
    "coverage",
    "stable_family",
    "pointwise_closure",
    "image_table",
    "preimage_table",
)


def implementations(name: str):
    """(numpy, numba-or-None) implementations of one kernel, for benchmarks and parity tests."""
    short = {"pointwise_tables": "pointwise"}.get(name, name)
    np_impl = globals()[f"_{short}_np"]
    jit_impl = globals().get(f"_{short}_jit") if njit is not None else None
    return np_impl, jit_impl
