import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rustcast.data import (
    SurveyTable,
    WeatherTable,
    parse_survey_csv,
    parse_weather_csv,
    write_survey_csv,
    write_weather_csv,
)
from rustcast.errors import (
    BadHeader,
    BadLabel,
    DuplicateKey,
    MalformedRow,
    MissingFeature,
    NonFiniteValue,
)

NAMES = [f"f{i}" for i in range(1, 44)]
HEADER = ",".join(["region_id", "year", "month", *NAMES])


def _row(region="A", year=2020, month=1, n=43, value="1.5"):
    return ",".join([region, str(year), str(month), *([value] * n)])


def _write(tmp_path, *lines, name="weather.csv"):
    p = tmp_path / name
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return p


def test_single_valid_row(tmp_path):
    table = parse_weather_csv(_write(tmp_path, HEADER, _row()))
    assert len(table) == 1
    assert table.feature_names == NAMES
    np.testing.assert_array_equal(table.records[("A", 2020, 1)], np.full(43, 1.5))


def test_short_row_names_row_number(tmp_path):
    path = _write(tmp_path, HEADER, _row(), _row(month=2, n=42))
    with pytest.raises(MissingFeature, match="row 3"):
        parse_weather_csv(path)


def test_duplicate_weather_key(tmp_path):
    with pytest.raises(DuplicateKey):
        parse_weather_csv(_write(tmp_path, HEADER, _row(), _row()))


@pytest.mark.parametrize("value", ["nan", "inf", "-inf", "abc"])
def test_non_finite(tmp_path, value):
    with pytest.raises(NonFiniteValue):
        parse_weather_csv(_write(tmp_path, HEADER, _row(value=value)))


def test_bad_header(tmp_path):
    with pytest.raises(BadHeader):
        parse_weather_csv(_write(tmp_path, "region,year,month," + ",".join(NAMES), _row()))
    with pytest.raises(BadHeader):
        parse_weather_csv(_write(tmp_path, ",".join(["region_id", "year", "month", *NAMES[:42]])))
    with pytest.raises(BadHeader):
        parse_weather_csv(_write(tmp_path, ""))


def test_bad_month(tmp_path):
    with pytest.raises(MalformedRow):
        parse_weather_csv(_write(tmp_path, HEADER, _row(month=13)))


def test_survey_labels(tmp_path):
    p = _write(tmp_path, "region_id,year,month,rust_present", "A,2020,1,1", "A,2020,2,0",
               name="survey.csv")
    table = parse_survey_csv(p)
    assert table.records[("A", 2020, 1)] == 1
    assert table.records[("A", 2020, 2)] == 0


def test_survey_bad_label(tmp_path):
    p = _write(tmp_path, "region_id,year,month,rust_present", "A,2020,1,2", name="survey.csv")
    with pytest.raises(BadLabel):
        parse_survey_csv(p)


def test_survey_duplicate(tmp_path):
    p = _write(tmp_path, "region_id,year,month,rust_present", "A,2020,1,1", "A,2020,1,0",
               name="survey.csv")
    with pytest.raises(DuplicateKey):
        parse_survey_csv(p)


def test_survey_header_only_is_empty(tmp_path):
    p = _write(tmp_path, "region_id,year,month,rust_present", name="survey.csv")
    assert len(parse_survey_csv(p)) == 0


def test_table_add_validates():
    t = WeatherTable(NAMES)
    t.add(("A", 2020, 1), np.zeros(43))
    with pytest.raises(DuplicateKey):
        t.add(("A", 2020, 1), np.zeros(43))
    with pytest.raises(MissingFeature):
        t.add(("A", 2020, 2), np.zeros(42))
    s = SurveyTable()
    with pytest.raises(BadLabel):
        s.add(("A", 2020, 1), 3)


finite = st.floats(allow_nan=False, allow_infinity=False)
keys = st.tuples(st.sampled_from(["A", "B", "north-1"]), st.integers(1900, 2100), st.integers(1, 12))


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(keys, st.lists(finite, min_size=43, max_size=43), max_size=8),
       st.dictionaries(keys, st.integers(0, 1), max_size=8))
def test_round_trip(tmp_path_factory, weather_rows, survey_rows):
    d = tmp_path_factory.mktemp("rt")
    w = WeatherTable(NAMES, {k: np.array(v) for k, v in weather_rows.items()})
    s = SurveyTable(dict(survey_rows))
    write_weather_csv(w, d / "w.csv")
    write_survey_csv(s, d / "s.csv")
    w2 = parse_weather_csv(d / "w.csv")
    s2 = parse_survey_csv(d / "s.csv")
    assert w2.feature_names == NAMES
    assert w2.records.keys() == w.records.keys()
    for k in w.records:
        assert w2.records[k].tobytes() == w.records[k].tobytes()
    assert s2.records == s.records
    write_weather_csv(w2, d / "w2.csv")
    assert (d / "w2.csv").read_bytes() == (d / "w.csv").read_bytes()
