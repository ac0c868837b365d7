import numpy as np
import pytest
from hypothesis import given, strategies as st

from ardlkit import errors
from ardlkit.frame import (
    ModelSpec,
    TimeSeriesFrame,
    difference,
    lag_matrix,
    load_csv,
    natural_log,
)

CSV_OK = """Year,CO2,GDP
1990,1.5,100
1991,2.5,110
1992,3.5,121
"""


class TestLoadCsv:
    def test_happy_path(self):
        frame = load_csv(CSV_OK)
        assert frame.years == (1990, 1991, 1992)
        assert frame.names == ("CO2", "GDP")
        np.testing.assert_allclose(frame.column("CO2"), [1.5, 2.5, 3.5])
        np.testing.assert_allclose(frame.column("GDP"), [100, 110, 121])

    def test_blank_lines_skipped(self):
        frame = load_csv("Year,A\n\n1990,1\n\n1991,2\n")
        assert frame.n == 2

    def test_empty_document(self):
        with pytest.raises(errors.EmptyBody):
            load_csv("")

    def test_header_only(self):
        with pytest.raises(errors.EmptyBody):
            load_csv("Year,A\n")

    def test_bad_header(self):
        with pytest.raises(errors.NonNumericCell):
            load_csv("Period,A\n1990,1\n")

    def test_ragged_row(self):
        with pytest.raises(errors.RaggedRow):
            load_csv("Year,A,B\n1990,1,2\n1991,3\n")

    def test_non_numeric_cell(self):
        with pytest.raises(errors.NonNumericCell):
            load_csv("Year,A\n1990,x\n")

    def test_non_numeric_year(self):
        with pytest.raises(errors.NonNumericCell):
            load_csv("Year,A\nabc,1\n")

    def test_missing_value(self):
        with pytest.raises(errors.MissingValue):
            load_csv("Year,A,B\n1990,1,\n")

    def test_nan_value(self):
        with pytest.raises(errors.MissingValue):
            load_csv("Year,A\n1990,nan\n")

    def test_non_monotone_years(self):
        with pytest.raises(errors.NonMonotoneYears):
            load_csv("Year,A\n1991,1\n1990,2\n")

    def test_year_gap(self):
        with pytest.raises(errors.NonAnnualIndex):
            load_csv("Year,A\n1990,1\n1992,2\n")


class TestTimeSeriesFrame:
    def test_unknown_variable(self):
        frame = load_csv(CSV_OK)
        with pytest.raises(errors.UnknownVariable):
            frame.column("POP")

    def test_with_columns_returns_new_frame(self):
        frame = load_csv(CSV_OK)
        extra = frame.with_columns({"Z": np.zeros(3)})
        assert "Z" in extra.names
        assert "Z" not in frame.names

    def test_length_mismatch(self):
        with pytest.raises(errors.RaggedRow):
            TimeSeriesFrame((1990, 1991), {"A": np.zeros(3)})

    def test_nonfinite_column(self):
        with pytest.raises(errors.MissingValue):
            TimeSeriesFrame((1990, 1991), {"A": np.array([1.0, np.inf])})


class TestNaturalLog:
    def test_log_columns_prefixed(self):
        frame = load_csv(CSV_OK)
        out = natural_log(frame, ("GDP",))
        np.testing.assert_allclose(out.column("LGDP"), np.log(frame.column("GDP")))
        assert "GDP" in out.names

    def test_powers_of_e(self):
        e = np.e
        frame = load_csv(f"Year,CO2\n1990,1\n1991,{e!r}\n1992,{e * e!r}\n")
        out = natural_log(frame, ("CO2",))
        np.testing.assert_allclose(out.column("LCO2"), [0.0, 1.0, 2.0], atol=1e-12)

    def test_scalar_value(self):
        frame = load_csv("Year,CO2\n1990,5000\n")
        out = natural_log(frame, ("CO2",))
        # ln(5000) from an arbitrary-precision calculator
        assert out.column("LCO2")[0] == pytest.approx(8.517193191416238, abs=1e-12)

    def test_nonpositive_rejected(self):
        frame = load_csv("Year,A\n1990,1\n1991,0\n")
        with pytest.raises(errors.NonPositiveValue):
            natural_log(frame, ("A",))


class TestDifference:
    def test_first_difference(self):
        np.testing.assert_allclose(difference([1.0, 3.0, 6.0]), [2.0, 3.0])

    def test_second_difference(self):
        np.testing.assert_allclose(difference([1.0, 3.0, 6.0, 10.0], 2), [1.0, 1.0])

    def test_too_short(self):
        with pytest.raises(errors.SeriesTooShort):
            difference([1.0], 1)

    def test_bad_order(self):
        with pytest.raises(ValueError):
            difference([1.0, 2.0], 0)

    @given(
        st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=40),
        st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=40),
    )
    def test_linearity(self, a, b):
        n = min(len(a), len(b))
        a = np.asarray(a[:n])
        b = np.asarray(b[:n])
        np.testing.assert_allclose(
            difference(a + b), difference(a) + difference(b), atol=1e-6
        )


class TestLagMatrix:
    def test_hand_example(self):
        out = lag_matrix([1.0, 2.0, 3.0, 4.0], 2)
        np.testing.assert_allclose(out, [[2.0, 1.0], [3.0, 2.0]])

    def test_row_alignment(self):
        s = np.arange(10.0)
        out = lag_matrix(s, 3)
        # row for time t holds s[t-1], s[t-2], s[t-3]
        np.testing.assert_allclose(out[0], [2.0, 1.0, 0.0])
        np.testing.assert_allclose(out[-1], [8.0, 7.0, 6.0])

    def test_too_short(self):
        with pytest.raises(errors.SeriesTooShort):
            lag_matrix([1.0, 2.0], 2)

    def test_bad_lag(self):
        with pytest.raises(ValueError):
            lag_matrix([1.0, 2.0, 3.0], 0)


class TestModelSpec:
    def test_defaults(self):
        spec = ModelSpec("Y", ("X1", "X2"))
        assert spec.k == 2
        assert spec.max_p == 2 and spec.max_q == 2
        assert spec.deterministic == "constant"

    def test_no_regressors(self):
        with pytest.raises(ValueError):
            ModelSpec("Y", ())

    def test_dependent_among_regressors(self):
        with pytest.raises(ValueError):
            ModelSpec("Y", ("Y", "X"))

    def test_bad_deterministic(self):
        with pytest.raises(ValueError):
            ModelSpec("Y", ("X",), deterministic="quadratic")

    def test_bad_level(self):
        with pytest.raises(ValueError):
            ModelSpec("Y", ("X",), level=0.2)

    def test_bad_lag_limits(self):
        with pytest.raises(ValueError):
            ModelSpec("Y", ("X",), max_p=0)
        with pytest.raises(ValueError):
            ModelSpec("Y", ("X",), max_q=-1)

    def test_validate_against(self):
        frame = load_csv(CSV_OK)
        ModelSpec("CO2", ("GDP",)).validate_against(frame)
        with pytest.raises(errors.UnknownVariable):
            ModelSpec("CO2", ("POP",)).validate_against(frame)
