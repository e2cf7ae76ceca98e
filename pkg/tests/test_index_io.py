import random

import pytest

from cph import index_io
from cph.heap import build_cph_string, build_string_index
from cph.matching import query_string, query_trie
from cph.oracle import random_trie
from cph.trie import chain_trie, parse_trie
from cph.trie_heap import build_trie_index

from helpers import digits


def test_string_round_trip_is_byte_identical(tmp_path):
    cph = build_string_index(digits("26427584365741"))
    path = tmp_path / "s.idx"
    index_io.save(cph, path)
    again = index_io.load(path)
    assert index_io.dumps(again) == path.read_text()
    assert query_string(again, [1, 3, 2]) == [1, 4, 9]
    assert again.pre_in == cph.pre_in and again.mrp == cph.mrp


def test_document_layout():
    text = index_io.dumps(build_string_index([2, 6, 4, 2]))
    assert text.startswith('{"version":1,"kind":"string-cph","text":[2,6,4,2],"nodes":[\n')
    assert text.count("\n") == 5 + 2


def test_trie_round_trip_keeps_classes():
    t = parse_trie("r -\na r 3\nb a 4\nc b 3\nd c 5\ne a 5\nf e 2\ng f 4\n")
    heap = build_trie_index(t)
    data = index_io.dumps(heap)
    again = index_io.loads(data)
    assert index_io.dumps(again) == data
    assert again.trie.ext_ids == t.ext_ids
    assert again.fp.class_of == heap.fp.class_of
    assert query_trie(again, [5, 3, 4, 3]) == query_trie(heap, [5, 3, 4, 3])


def test_random_round_trips():
    rng = random.Random(3)
    for k in range(40):
        if k % 2:
            heap = build_trie_index(random_trie(rng, rng.randint(1, 50), rng.randint(1, 4)))
            query = query_trie
        else:
            heap = build_string_index([rng.randint(1, 4) for _ in range(rng.randint(1, 50))])
            query = query_string
        data = index_io.dumps(heap)
        again = index_io.loads(data)
        assert index_io.dumps(again) == data
        for _ in range(5):
            p = [rng.randint(1, 4) for _ in range(rng.randint(1, 6))]
            assert query(again, p) == query(heap, p)


def test_unfinished_heap_refused():
    with pytest.raises(ValueError):
        index_io.dumps(build_cph_string([1, 2]))
    with pytest.raises(TypeError):
        index_io.dumps(object.__new__(type("Other", (), {"has_mrp": True})))


@pytest.mark.parametrize("data, message", [
    ("not json", "not an index"),
    ('{"version":2,"kind":"string-cph"}', "version"),
    ('{"version":1,"kind":"suffix-tree"}', "unknown index kind"),
    ('{"version":1,"kind":"string-cph","text":[1],"nodes":[[0,-1,-1,0]]}', "node count"),
    ('{"version":1,"kind":"string-cph","text":[1],"nodes":[[1,0,0,0]]}', "root"),
    ('{"version":1,"kind":"string-cph","text":[1,1],"nodes":[[0,-1,-1,0],[2,5,0,1],[1,1,1,2]]}',
     "parent"),
    ('{"version":1,"kind":"string-cph","text":[1],"nodes":[[0,-1,-1,0],[1,0,0,9]]}', "mrp"),
])
def test_malformed_index(data, message):
    with pytest.raises(index_io.IndexFormatError, match=message):
        index_io.loads(data)


def test_chain_trie_index_loads():
    heap = build_trie_index(chain_trie([5, 3, 4, 3]))
    again = index_io.loads(index_io.dumps(heap))
    cph = build_string_index([5, 3, 4, 3])
    for i in range(1, 5):
        assert again.path_string(again.node_at_position(i)) == \
            cph.path_string(cph.node_at_position(i))
