import pytest

from sympaths import (
    FiniteMap,
    GenSpec,
    KernelPairsDoNotCommute,
    NotSurjectiveF,
    NotSurjectiveH,
    ParseError,
    SpecOutOfBounds,
    eq_partition,
    gen_instance,
    gen_intersection_element,
    gen_kernel_element,
    instance_from_json,
    instance_to_json,
    is_kernel_member,
    parse_word,
    relations_commute,
    validate_instance,
)


class TestValidate:
    def test_sq4_valid(self, sq4):
        assert sq4.A == ("a", "b", "c", "d")
        assert relations_commute(sq4.f, sq4.h)

    def test_nc3_rejected(self, nc3_maps):
        A, f, h = nc3_maps
        with pytest.raises(KernelPairsDoNotCommute):
            validate_instance(A, ("1", "2"), ("1", "2"), f, h)

    def test_f_not_surjective(self):
        A = ("a", "b")
        f = FiniteMap(A, ("1", "2"), {"a": "1", "b": "1"})
        h = FiniteMap(A, ("1",), {"a": "1", "b": "1"})
        with pytest.raises(NotSurjectiveF):
            validate_instance(A, ("1", "2"), ("1",), f, h)

    def test_h_not_surjective(self):
        A = ("a", "b")
        f = FiniteMap(A, ("1",), {"a": "1", "b": "1"})
        h = FiniteMap(A, ("1", "2"), {"a": "1", "b": "1"})
        with pytest.raises(NotSurjectiveH):
            validate_instance(A, ("1",), ("1", "2"), f, h)


class TestGenInstance:
    def test_point_base_gives_full_product(self):
        inst = gen_instance(GenSpec(seed=7, base_size=1, b_size=2, c_size=2, inflation=1))
        assert len(inst.A) == 4
        f_blocks = eq_partition(inst.f).blocks
        h_blocks = eq_partition(inst.h).blocks
        assert sorted(len(b) for b in f_blocks) == [2, 2]
        assert sorted(len(b) for b in h_blocks) == [2, 2]
        cells = {(inst.f[a], inst.h[a]) for a in inst.A}
        assert len(cells) == 4

    def test_same_seed_same_bytes(self):
        spec = GenSpec(seed=99, base_size=2, b_size=4, c_size=3, inflation=3)
        assert instance_to_json(gen_instance(spec)) == instance_to_json(gen_instance(spec))

    def test_outputs_always_validate(self):
        for seed in range(1000):
            spec = GenSpec(
                seed=seed,
                base_size=1 + seed % 3,
                b_size=3 + seed % 3,
                c_size=3 + seed % 2,
                inflation=1 + seed % 3,
            )
            inst = gen_instance(spec)
            # reconstruct through the document to re-run every check
            assert instance_from_json(instance_to_json(inst)) == inst

    def test_bounds(self):
        with pytest.raises(SpecOutOfBounds):
            GenSpec(seed=0, base_size=3, b_size=2, c_size=2)
        with pytest.raises(SpecOutOfBounds):
            GenSpec(seed=0, inflation=0)
        with pytest.raises(SpecOutOfBounds):
            GenSpec(seed=-1)


class TestGenElements:
    def test_single_square_word(self, sq4):
        inst = gen_instance(GenSpec(seed=3, base_size=1, b_size=2, c_size=2, inflation=1))
        word = gen_intersection_element(inst, GenSpec(seed=3, factors=1))
        assert is_kernel_member(word, inst.f) and is_kernel_member(word, inst.h)
        assert len(word) in (0, 4)  # a square word, possibly fully degenerate

    def test_kernel_membership_bulk(self):
        inst = gen_instance(GenSpec(seed=11, base_size=2, b_size=4, c_size=4, inflation=2))
        for seed in range(300):
            spec = GenSpec(seed=seed, factors=1 + seed % 4, conjugator_length=seed % 6)
            both = gen_intersection_element(inst, spec)
            assert is_kernel_member(both, inst.f) and is_kernel_member(both, inst.h)
            single = gen_kernel_element(inst, spec, "f")
            assert is_kernel_member(single, inst.f)

    def test_negative_fixture(self, sq4):
        word = parse_word("a b^-1", sq4.A)
        assert is_kernel_member(word, sq4.f)
        assert not is_kernel_member(word, sq4.h)

    def test_generated_negative_exists(self, sq4):
        # Eq(f) != Eq(h) on SQ4, so some generated f-element leaves the h-kernel
        found = False
        for seed in range(50):
            word = gen_kernel_element(sq4, GenSpec(seed=seed, factors=1), "f")
            if len(word) and not is_kernel_member(word, sq4.h):
                found = True
                break
        assert found

    def test_determinism(self, sq4):
        spec = GenSpec(seed=42, factors=3, conjugator_length=4)
        assert gen_intersection_element(sq4, spec) == gen_intersection_element(sq4, spec)


class TestDocument:
    def test_round_trip(self, sq4, sq4_path):
        with open(sq4_path, "r", encoding="utf-8") as handle:
            text = handle.read()
        assert instance_to_json(sq4) == text
        assert instance_from_json(text) == sq4

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            "[]",
            '{"A":["a"],"B":["1"],"C":["1"],"f":{"a":"1"}}',
            '{"A":["a","a"],"B":["1"],"C":["1"],"f":{"a":"1"},"h":{"a":"1"}}',
            '{"A":["a"],"B":["1"],"C":["1"],"f":{"b":"1"},"h":{"a":"1"}}',
            '{"A":["a"],"B":["1"],"C":["1"],"f":{"a":"2"},"h":{"a":"1"}}',
        ],
    )
    def test_malformed_documents(self, text):
        with pytest.raises(ParseError):
            instance_from_json(text)
