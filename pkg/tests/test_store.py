import pytest

from modlat import (
    MemoryStore,
    StoreError,
    canonical_form,
    cycle_index,
    decode_digraph6,
    is_isomorphic,
    site_action,
    store_get,
    store_open,
    store_write,
)
from modlat.store import cycle_index_from_str, cycle_index_to_str

from fixtures import boolean, figure_rack


class TestRoundTrip:
    def test_every_record_survives(self, disk_store, rack_forms_14):
        for k in disk_store.sizes():
            assert disk_store.count(k) == len(rack_forms_14[k])
            for i, expected in enumerate(rack_forms_14[k]):
                assert disk_store.record(k, i) == expected
                lat = store_get(disk_store, k, i)
                assert canonical_form(lat) == expected

    def test_seek_equals_stream(self, disk_store):
        for k in disk_store.sizes():
            streamed = list(disk_store.records(k))
            seeked = [disk_store.record(k, i) for i in range(disk_store.count(k))]
            assert streamed == seeked

    def test_unique_four_element_rack_is_the_square(self, disk_store):
        assert disk_store.count(4) == 1
        assert is_isomorphic(store_get(disk_store, 4, 0), boolean(2))

    def test_reopen(self, disk_store, rack_forms_14):
        reopened = store_open(disk_store.path, "rack")
        assert reopened.sizes() == disk_store.sizes()
        assert list(reopened.records(12)) == rack_forms_14[12]


class TestDeterminism:
    def test_independent_writes_byte_identical(self, rack_forms_14, tmp_path):
        from modlat import generate_family_up_to

        first = generate_family_up_to("modular-vi-rack", 10, use_cache=False)
        second = generate_family_up_to("modular-vi-rack", 10, use_cache=False)
        store_write(first, tmp_path / "a", family="rack")
        store_write(second, tmp_path / "b", family="rack")
        files_a = sorted(p.name for p in (tmp_path / "a").iterdir())
        files_b = sorted(p.name for p in (tmp_path / "b").iterdir())
        assert files_a == files_b
        for name in files_a:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


class TestErrors:
    def test_unknown_size_class(self, disk_store):
        with pytest.raises(StoreError, match="size class"):
            disk_store.record(33, 0)

    def test_record_index_out_of_range(self, disk_store):
        with pytest.raises(IndexError):
            disk_store.record(4, 5)

    def test_missing_directory(self, tmp_path):
        with pytest.raises(StoreError):
            store_open(tmp_path / "nope", "rack")

    def test_corrupt_index_detected(self, rack_forms_14, tmp_path):
        store_write({k: rack_forms_14[k] for k in range(1, 9)}, tmp_path, family="rack")
        idx = tmp_path / "rack-8.idx"
        raw = bytearray(idx.read_bytes())
        raw[8] ^= 0x01  # nudge the second offset
        idx.write_bytes(bytes(raw))
        corrupted = store_open(tmp_path, "rack")
        with pytest.raises(StoreError, match="offset"):
            corrupted.record(8, 0)


class TestMeta:
    def test_metadata_matches_recomputation(self, disk_store):
        for k in disk_store.sizes():
            for meta in disk_store.meta(k):
                lat = store_get(disk_store, k, meta.index)
                action = site_action(lat)
                assert meta.site_count == action.degree
                assert meta.cycle_index == cycle_index(action)

    def test_cycle_index_string_round_trip(self):
        for lat in (figure_rack(), boolean(3), boolean(2)):
            z = cycle_index(site_action(lat))
            assert cycle_index_from_str(cycle_index_to_str(z)) == z

    def test_memory_store_agrees_with_disk(self, disk_store, rack_forms_14):
        mem = MemoryStore({k: rack_forms_14[k] for k in range(1, 13)}, "rack")
        for k in range(1, 13):
            assert mem.count(k) == disk_store.count(k)
            assert mem.meta(k) == disk_store.meta(k)
