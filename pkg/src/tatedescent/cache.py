"""On-disk cache of complete resolution windows.

File layout (little endian)::

    magic  b"TDRC"   version u16   payload length u64   sha256(payload) 32 bytes
    payload: lo i32, hi i32, per term the generator degrees, per differential
    and for the (co)augmentation the column bitsets.

Files are keyed by a content hash of algebra, module and window, written to a
temporary name and renamed into place, and revalidated (d∘d = 0, exactness)
on load.  Anything that fails to read or check is rebuilt silently.
"""

from __future__ import annotations

import hashlib
import io
import os
import struct
import tempfile
from typing import Optional

from .hopf import to_table
from .modules import AModule, ModuleMap, free_module
from .stable import (
    CompleteResolution, FreeTerm, _coeff_matrix, complete_resolution, module_fingerprint,
    register_resolution,
)

MAGIC = b"TDRC"
VERSION = 1
_HEADER = struct.Struct("<4sHQ32s")


def cache_key(m: AModule, window: tuple[int, int]) -> str:
    h = hashlib.sha256()
    h.update(repr(to_table(m.algebra)).encode())
    h.update(module_fingerprint(m).encode())
    h.update(repr(tuple(window)).encode())
    return h.hexdigest()


def _put_ints(buf: io.BytesIO, vals) -> None:
    vals = list(vals)
    buf.write(struct.pack("<I", len(vals)))
    for v in vals:
        raw = v.to_bytes((v.bit_length() + 7) // 8, "little")
        buf.write(struct.pack("<I", len(raw)))
        buf.write(raw)


def _get_ints(buf: io.BytesIO) -> list[int]:
    (n,) = struct.unpack("<I", buf.read(4))
    out = []
    for _ in range(n):
        (k,) = struct.unpack("<I", buf.read(4))
        raw = buf.read(k)
        if len(raw) != k:
            raise ValueError("truncated")
        out.append(int.from_bytes(raw, "little"))
    return out


def _put_degrees(buf, degs) -> None:
    buf.write(struct.pack("<I", len(degs)))
    buf.write(struct.pack(f"<{len(degs)}i", *degs))


def _get_degrees(buf) -> list[int]:
    (n,) = struct.unpack("<I", buf.read(4))
    return list(struct.unpack(f"<{n}i", buf.read(4 * n)))


def dumps(res: CompleteResolution) -> bytes:
    buf = io.BytesIO()
    buf.write(struct.pack("<ii", res.lo, res.hi))
    for s in range(res.lo, res.hi + 1):
        _put_degrees(buf, res.terms[s].gen_degrees)
    for s in range(res.lo + 1, res.hi + 1):
        _put_ints(buf, res.maps[s].cols)
    _put_ints(buf, res.augmentation.cols)
    _put_ints(buf, res.coaugmentation.cols)
    payload = buf.getvalue()
    head = _HEADER.pack(MAGIC, VERSION, len(payload), hashlib.sha256(payload).digest())
    return head + payload


def loads(data: bytes, m: AModule) -> Optional[CompleteResolution]:
    """Decode and revalidate; None when the blob is stale, corrupt or wrong."""
    if len(data) < _HEADER.size:
        return None
    magic, version, n, digest = _HEADER.unpack_from(data)
    payload = data[_HEADER.size:]
    if magic != MAGIC or version != VERSION or len(payload) != n:
        return None
    if hashlib.sha256(payload).digest() != digest:
        return None
    h = m.algebra
    try:
        buf = io.BytesIO(payload)
        lo, hi = struct.unpack("<ii", buf.read(8))
        terms = {}
        for s in range(lo, hi + 1):
            degs = _get_degrees(buf)
            terms[s] = FreeTerm(free_module(h, degs), degs)
        maps = {}
        for s in range(lo + 1, hi + 1):
            cols = _get_ints(buf)
            maps[s] = ModuleMap(terms[s].module, terms[s - 1].module, cols, 0)
        aug = ModuleMap(terms[0].module, m, _get_ints(buf), 0)
        coaug = ModuleMap(m, terms[-1].module, _get_ints(buf), 0)
        coeffs = {s: _coeff_matrix(maps[s], terms[s], terms[s - 1]) for s in maps}
        res = CompleteResolution(m, lo, hi, terms, coeffs, maps, aug, coaug)
    except (ValueError, struct.error, KeyError, IndexError):
        return None
    if len(aug.cols) != terms[0].module.dim or len(coaug.cols) != m.dim:
        return None
    if any(c >> m.dim for c in aug.cols) or any(c >> terms[-1].module.dim for c in coaug.cols):
        return None
    if aug.check() or coaug.check() or aug.rank() != m.dim or coaug.rank() != m.dim:
        return None
    if res.check():
        return None
    return res


class ResolutionCache:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def path(self, m: AModule, window: tuple[int, int]) -> str:
        return os.path.join(self.directory, cache_key(m, window) + ".tdrc")

    def load(self, m: AModule, window: tuple[int, int]) -> Optional[CompleteResolution]:
        try:
            with open(self.path(m, window), "rb") as fh:
                return loads(fh.read(), m)
        except OSError:
            return None

    def store(self, res: CompleteResolution, window: tuple[int, int]) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".part")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(dumps(res))
            os.replace(tmp, self.path(res.module, window))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def resolution(self, m: AModule, window: tuple[int, int]) -> CompleteResolution:
        """Cached window if valid, otherwise build, store and return it.

        Windows are widened to contain s = -1 and s = 0, where the splice lives.
        """
        window = (min(window[0], -1), max(window[1], 0))
        res = self.load(m, window)
        if res is None:
            self.misses += 1
            res = complete_resolution(m, window)
            self.store(res, window)
        else:
            self.hits += 1
        register_resolution(res)
        return res
