import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairrec.errors import EmptyPool, MissingState, UnknownCountry
from fairrec.ingest import CAREER_RANKS, ETHNICITIES, GENDERS, AuthorRecord
from fairrec.profiling import (
    RankSplit,
    WeightMode,
    build_author_profile,
    build_author_profiles,
    encode_career_stage,
    encode_ethnicity,
    encode_gender,
    encode_geolocation,
    encode_university_rank,
)

B, C = WeightMode.BOOLEAN, WeightMode.CONTINUOUS


@pytest.mark.parametrize("label,mode,expected", [
    ("female", B, 1), ("male", B, 0), ("female", C, 0.73), ("male", C, 0.27),
])
def test_gender(tables, label, mode, expected):
    assert encode_gender(label, mode, tables) == pytest.approx(expected, abs=1e-12)


def test_gender_continuous_is_complement_of_share(tables):
    female_share = 0.27
    assert encode_gender("female", C, tables) == pytest.approx(1 - female_share)
    assert encode_gender("male", C, tables) == pytest.approx(1 - (1 - female_share))


@pytest.mark.parametrize("category,mode,expected", [
    ("White", C, 0.2954), ("Hispanic", C, 0.9281), ("Black", C, 0.9295),
    ("Asian", C, 0.8237), ("Other", C, 0.7400),
    ("Asian", B, 1), ("White", B, 0), ("Other", B, 1),
])
def test_ethnicity(tables, category, mode, expected):
    assert encode_ethnicity(category, mode, tables) == expected


@pytest.mark.parametrize("title,mode,expected", [
    ("Distinguished Professor", C, 0.17), ("Graduate Student", C, 1.0),
    ("Associate Professor", B, 0), ("Professor", B, 0), ("Distinguished Professor", B, 0),
    ("Assistant Professor or Lecturer", B, 1), ("Post-Doctoral or Research Fellow", B, 1),
    ("Graduate Student", B, 1),
])
def test_career_stage(tables, title, mode, expected):
    assert encode_career_stage(title, mode, tables) == expected


class TestUniversityRank:
    def test_continuous(self):
        assert encode_university_rank(100, [1, 100, 400], C) == 0.25

    def test_continuous_worst_is_one(self):
        assert encode_university_rank(400, [1, 100, 400], C) == 1.0

    def test_boolean_above_median(self):
        # sorted {10, 200, 350}: the middle element 200 is the median
        assert encode_university_rank(350, [10, 200, 350], B) == 1

    def test_boolean_tie_with_median_is_not_protected(self):
        assert encode_university_rank(200, [10, 200, 350], B) == 0

    def test_mean_split(self):
        # mean of {10, 20, 300} is 110, median 20
        assert encode_university_rank(100, [10, 20, 300], B, RankSplit.MEDIAN) == 1
        assert encode_university_rank(100, [10, 20, 300], B, RankSplit.MEAN) == 0

    def test_empty_pool(self):
        with pytest.raises(EmptyPool):
            encode_university_rank(1, [], C)

    @given(st.lists(st.integers(1, 2000), min_size=1, max_size=40), st.data())
    def test_boolean_invariant_under_monotone_relabel(self, ranks, data):
        r = data.draw(st.sampled_from(ranks))
        # strictly increasing affine relabel preserves order (the median moves with it)
        a = data.draw(st.integers(1, 7))
        b = data.draw(st.integers(0, 1000))
        relabel = [a * x + b for x in ranks]
        assert encode_university_rank(r, ranks, B) == encode_university_rank(a * r + b, relabel, B)

    @given(st.lists(st.integers(1, 5000), min_size=1, max_size=40), st.data())
    def test_continuous_in_unit_interval(self, ranks, data):
        r = data.draw(st.sampled_from(ranks))
        assert 0 < encode_university_rank(r, ranks, C) <= 1


class TestGeolocation:
    def test_norway_continuous(self, tables):
        assert encode_geolocation("Norway", None, C, tables) == pytest.approx(1 - 0.957)

    def test_epscor_state(self, tables):
        assert encode_geolocation("United States", "Arkansas", B, tables) == 1

    def test_non_epscor_state(self, tables):
        assert encode_geolocation("USA", "California", B, tables) == 0

    def test_us_continuous_uses_national_hdi(self, tables):
        a = encode_geolocation("United States", "Arkansas", C, tables)
        b = encode_geolocation("United States", "California", C, tables)
        assert a == b == pytest.approx(1 - tables.hdi_by_country["United States"])

    def test_developed(self, tables):
        assert encode_geolocation("Germany", None, B, tables) == 0

    def test_developing(self, tables):
        assert encode_geolocation("India", None, B, tables) == 1
        assert encode_geolocation("Niger", None, C, tables) == pytest.approx(1 - 0.394)

    def test_unknown(self, tables):
        with pytest.raises(UnknownCountry):
            encode_geolocation("Atlantis", None, B, tables)
        with pytest.raises(UnknownCountry):
            encode_geolocation("Atlantis", None, C, tables)

    def test_missing_state(self, tables):
        with pytest.raises(MissingState):
            encode_geolocation("United States", None, B, tables)


def _record(**kw):
    base = dict(author_id="x", gender_label="male", ethnicity_category="White",
                position_title="Professor", university_name="U", university_rank=1,
                country="Germany", us_state=None, h_index=7)
    base.update(kw)
    return AuthorRecord(**base)


def test_profile_boolean_composition(tables):
    rec = _record(gender_label="female", position_title="Graduate Student",
                  university_rank=400, country="Norway")
    prof = build_author_profile(rec, [1, 100, 400], tables)
    assert tuple(prof.boolean) == (1, 0, 1, 1, 0)


def test_profile_continuous_composition(tables):
    rec = _record(position_title="Distinguished Professor", university_rank=1)
    prof = build_author_profile(rec, [1, 200, 400], tables)
    assert tuple(prof.continuous) == pytest.approx((0.27, 0.2954, 0.17, 0.0025, 0.053), abs=1e-12)
    assert prof.h_index == 7


def test_small_dataset_profiles(small_dataset, tables):
    profs = build_author_profiles(small_dataset, tables)
    assert {k: tuple(p.boolean) for k, p in profs.items()} == {
        "a1": (1, 0, 0, 0, 0),
        "a2": (0, 1, 1, 1, 1),
        "a3": (0, 0, 0, 0, 0),
        "a4": (1, 1, 1, 1, 1),
    }
    assert tuple(profs["a4"].continuous) == pytest.approx((0.73, 0.9281, 0.67, 1.0, 0.355))
    assert tuple(profs["a2"].continuous) == pytest.approx((0.27, 0.8237, 1.0, 0.75, 0.074))


records = st.builds(
    _record,
    gender_label=st.sampled_from(GENDERS),
    ethnicity_category=st.sampled_from(ETHNICITIES),
    position_title=st.sampled_from(CAREER_RANKS),
    university_rank=st.integers(1, 1000),
    country=st.sampled_from(["Germany", "India", "Norway", "China", "Brazil", "Japan"]),
)


@given(records, st.lists(st.integers(1, 1000), min_size=1, max_size=30))
def test_profile_ranges_and_membership(tables, prof_record, others):
    ranks = others + [prof_record.university_rank]
    prof = build_author_profile(prof_record, ranks, tables)
    assert all(x in (0.0, 1.0) for x in prof.boolean)
    assert all(0.0 <= x <= 1.0 for x in prof.continuous)
    assert prof.protected_membership == tuple(bool(x) for x in prof.boolean)
    # Boolean flags agree with the protected category of each feature.
    assert prof.boolean.gender == (prof_record.gender_label == "female")
    assert prof.boolean.ethnicity == (prof_record.ethnicity_category != "White")
    assert prof.boolean.career_stage == (prof_record.position_title in CAREER_RANKS[3:])
    assert prof.boolean.geolocation == (prof_record.country in tables.developing_countries)
    assert build_author_profile(prof_record, ranks, tables) == prof
