import os

from tatedescent.cache import MAGIC, ResolutionCache, cache_key, dumps, loads
from tatedescent.catalog import joker, module_N
from tatedescent.stable import complete_resolution


def test_roundtrip_and_revalidation(a1):
    res = complete_resolution(joker(), (-3, 3))
    back = loads(dumps(res), joker())
    assert back is not None
    assert back.ranks() == res.ranks()
    assert all(back.maps[s].cols == res.maps[s].cols for s in res.maps)


def test_header(a1):
    blob = dumps(complete_resolution(joker(), (-1, 1)))
    assert blob[:4] == MAGIC


def test_corruption_is_rejected(a1):
    blob = bytearray(dumps(complete_resolution(joker(), (-2, 2))))
    blob[-1] ^= 0x01
    assert loads(bytes(blob), joker()) is None
    assert loads(b"junk", joker()) is None


def test_checksum_valid_but_wrong_module_rejected(a1, e1):
    from tatedescent.modules import trivial_module

    blob = dumps(complete_resolution(joker(), (-2, 2)))
    assert loads(blob, trivial_module(a1)) is None


def test_key_depends_on_window_and_module(e1):
    assert cache_key(module_N(), (0, 2)) != cache_key(module_N(), (0, 3))
    assert cache_key(module_N(), (0, 2)) == cache_key(module_N(), (0, 2))


def test_miss_then_hit(tmp_path, a1):
    c = ResolutionCache(str(tmp_path))
    first = c.resolution(joker(), (-2, 2))
    assert c.misses == 1
    files = os.listdir(tmp_path)
    assert len(files) == 1 and files[0].endswith(".tdrc")
    c2 = ResolutionCache(str(tmp_path))
    second = c2.resolution(joker(), (-2, 2))
    assert c2.hits == 1 and second.ranks() == first.ranks()


def test_corrupt_file_rebuilds_silently(tmp_path, a1):
    c = ResolutionCache(str(tmp_path))
    c.resolution(joker(), (-1, 1))
    path = c.path(joker(), (-1, 1))
    with open(path, "r+b") as fh:
        fh.seek(50)
        fh.write(b"\xff\xff")
    c2 = ResolutionCache(str(tmp_path))
    res = c2.resolution(joker(), (-1, 1))
    assert c2.misses == 1 and res.check() == []
    assert loads(open(path, "rb").read(), joker()) is not None
