import numpy as np
import pytest

from ardlkit import errors
from ardlkit.cointreg import ccr, dols, fmols
from ardlkit.frame import ModelSpec
from ardlkit.regression import KernelSpec, ols
from ardlkit.synthetic import ecm_system, normals, random_walk

from conftest import make_frame


def orthogonalized_frame(T=60, seed=17, beta=(0.7, -0.4), const=2.0):
    """Construct data on which every correction term vanishes exactly.

    The noise is projected out of the span of every moment the three
    estimators touch (levels, padded lags and leads of the regressors,
    demeaned differences, padded intercepts), so with bandwidth 0 the
    semiparametric transforms are identities and all three estimators
    must reproduce the static OLS coefficients.
    """
    k = len(beta)
    xs = np.column_stack([random_walk(T, seed + 100 * (j + 1)) for j in range(k)])
    raw = normals(seed, T)

    span = [np.ones(T)]
    for j in range(k):
        x = xs[:, j]
        dx = np.diff(x)
        span.append(x)
        span.append(np.concatenate([[0.0], dx - dx.mean()]))
        span.append(np.concatenate([[0.0], x[:-1]]))
        span.append(np.concatenate([[0.0], x[1:]]))
    span.append(np.concatenate([[0.0], np.ones(T - 1)]))
    S = np.column_stack(span)
    proj = S @ np.linalg.lstsq(S, raw, rcond=None)[0]
    u = raw - proj

    y = const + xs @ np.asarray(beta) + u
    cols = {"Y": y}
    for j in range(k):
        cols[f"X{j + 1}"] = xs[:, j]
    return make_frame(cols), np.asarray(beta), const


def static_ols_theta(frame, spec):
    y = frame.column(spec.dependent)
    X = np.column_stack([frame.column(n) for n in spec.regressors] + [np.ones(frame.n)])
    return ols(y, X).coef


class TestCollapseToOls:
    def test_all_three_estimators(self):
        frame, beta, const = orthogonalized_frame()
        spec = ModelSpec("Y", ("X1", "X2"))
        theta = static_ols_theta(frame, spec)
        np.testing.assert_allclose(theta, [*beta, const], atol=1e-8)
        kernel = KernelSpec(bandwidth=0)
        for est in (
            fmols(frame, spec, kernel),
            dols(frame, spec, leads=0, lags=0),
            ccr(frame, spec, kernel),
        ):
            got = [est.coef[n][0] for n in ("X1", "X2", "const")]
            np.testing.assert_allclose(got, theta, atol=1e-10,
                                       err_msg=est.method)


@pytest.fixture(scope="module")
def big_frame():
    return make_frame(ecm_system(400, 31, beta=(2.0, -1.0), alpha=-0.3))


class TestConsistency:

    @pytest.mark.parametrize("method", ["fmols", "dols", "ccr"])
    def test_recovers_long_run_vector(self, big_frame, method):
        spec = ModelSpec("Y", ("X1", "X2"))
        est = {"fmols": fmols, "ccr": ccr}.get(method)
        result = est(big_frame, spec) if est else dols(big_frame, spec)
        assert result.coef["X1"][0] == pytest.approx(2.0, abs=0.15)
        assert result.coef["X2"][0] == pytest.approx(-1.0, abs=0.15)

    @pytest.mark.parametrize("method", ["fmols", "dols", "ccr"])
    def test_report_shape(self, big_frame, method):
        spec = ModelSpec("Y", ("X1", "X2"))
        est = {"fmols": fmols, "ccr": ccr}.get(method)
        result = est(big_frame, spec) if est else dols(big_frame, spec)
        assert result.method == method
        assert set(result.coef) == {"X1", "X2", "const"}
        for name, (c, s, t) in result.coef.items():
            assert s > 0
            assert t == pytest.approx(c / s)
            assert 0.0 <= result.pvalues[name] <= 1.0
        assert 0.0 <= result.r2 <= 1.0


class TestValidation:
    def test_fmols_too_short(self):
        frame = make_frame(ecm_system(15, 3, beta=(1.0,)))
        with pytest.raises(errors.TooFewObservations):
            fmols(frame, ModelSpec("Y", ("X1",)))

    def test_ccr_too_short(self):
        frame = make_frame(ecm_system(15, 3, beta=(1.0,)))
        with pytest.raises(errors.TooFewObservations):
            ccr(frame, ModelSpec("Y", ("X1",)))

    def test_dols_negative_leads(self, coint_frame):
        with pytest.raises(ValueError):
            dols(coint_frame, ModelSpec("Y", ("X1",)), leads=-1)

    def test_dols_too_short(self):
        frame = make_frame(ecm_system(12, 3, beta=(1.0,)))
        with pytest.raises(errors.SeriesTooShort):
            dols(frame, ModelSpec("Y", ("X1",)), leads=2, lags=2)

    def test_dols_width_report(self, coint_frame):
        result = dols(coint_frame, ModelSpec("Y", ("X1",)), leads=2, lags=1)
        assert result.bandwidth_or_leads == 3

    def test_fmols_reports_bandwidth(self, coint_frame):
        result = fmols(coint_frame, ModelSpec("Y", ("X1",)), KernelSpec(bandwidth=6))
        assert result.bandwidth_or_leads == 6
