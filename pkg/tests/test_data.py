import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disputekit.data import (
    Dataset,
    DyadYearRecord,
    apply_scaling,
    balanced_split,
    fit_scaling,
    parse_dataset,
    scaled_arrays,
    serialize_dataset,
)
from disputekit.errors import DataFormatError
from disputekit.schema import default_schema
from disputekit.synth import (
    SynthConfig,
    noise_config,
    separable_config,
    synth_generate,
)

SCHEMA = default_schema()

HEADER = "state_a,state_b,year,allies,contiguity,major_power,distance,capability,democracy,dependency,outcome"


def row(allies=1, contiguity=0, major_power=0, distance=2.5, capability=1.0,
        democracy=5, dependency=0.2, outcome=0, a="USA", b="CAN", year=1950):
    return f"{a},{b},{year},{allies},{contiguity},{major_power},{distance},{capability},{democracy},{dependency},{outcome}"


def make_record(values, outcome=0):
    return DyadYearRecord("AAA", "BBB", 1960, tuple(float(v) for v in values), outcome)


class TestParse:
    def test_header_plus_one_row(self):
        ds = parse_dataset(HEADER + "\n" + row(), SCHEMA)
        assert len(ds) == 1
        rec = ds.records[0]
        assert rec.state_a == "USA" and rec.year == 1950
        assert rec.values == (1.0, 0.0, 0.0, 2.5, 1.0, 5.0, 0.2)

    def test_out_of_domain_democracy(self):
        text = HEADER + "\n" + row(democracy=11)
        with pytest.raises(DataFormatError) as err:
            parse_dataset(text, SCHEMA)
        assert "democracy" in str(err.value).lower()
        assert "line 2" in str(err.value)

    def test_missing_column(self):
        text = HEADER.replace(",dependency", "") + "\n" + row()
        with pytest.raises(DataFormatError, match="dependency"):
            parse_dataset(text, SCHEMA)

    def test_malformed_row_reports_line(self):
        text = HEADER + "\n" + row() + "\n" + row(distance="not-a-number")
        with pytest.raises(DataFormatError, match="line 3"):
            parse_dataset(text, SCHEMA)

    def test_column_order_free(self):
        cols = HEADER.split(",")
        perm = list(reversed(cols))
        idx = {c: i for i, c in enumerate(cols)}
        vals = row().split(",")
        text = ",".join(perm) + "\n" + ",".join(vals[idx[c]] for c in perm)
        ds = parse_dataset(text, SCHEMA)
        assert ds.records[0].values == (1.0, 0.0, 0.0, 2.5, 1.0, 5.0, 0.2)

    def test_binary_must_be_exact(self):
        with pytest.raises(DataFormatError, match="allies"):
            parse_dataset(HEADER + "\n" + row(allies=0.5), SCHEMA)

    def test_population_scale_parse(self):
        # mirrors the cold-war population size: 27,737 rows
        rows = "\n".join(row(year=1946 + i % 47, outcome=int(i % 31 == 0)) for i in range(27737))
        ds = parse_dataset(HEADER + "\n" + rows, SCHEMA)
        assert len(ds) == 27737

    def test_roundtrip_identity(self):
        ds = synth_generate(noise_config(200), seed=11)
        text = serialize_dataset(ds)
        again = parse_dataset(text, SCHEMA)
        assert again.records == ds.records
        assert serialize_dataset(again) == text


class TestBalancedSplit:
    def test_population_counts(self):
        # 892 dispute + 26,845 non-dispute, 500 of each to train
        cfg = SynthConfig(count=27737, balance=892 / 27737)
        ds = synth_generate(cfg, seed=5)
        assert ds.class_counts() == (892, 26845)
        train, test = balanced_split(ds, 500, seed=1)
        assert train.class_counts() == (500, 500)
        assert test.class_counts() == (392, 26345)

    def test_partition_property(self):
        ds = synth_generate(noise_config(400), seed=2)
        train, test = balanced_split(ds, 150, seed=9)
        combined = sorted(train.records + test.records, key=lambda r: r.state_a)
        assert combined == sorted(ds.records, key=lambda r: r.state_a)
        assert len(set(train.records) & set(test.records)) == 0

    def test_same_seed_same_split(self):
        ds = synth_generate(noise_config(300), seed=4)
        a = balanced_split(ds, 100, seed=42)
        b = balanced_split(ds, 100, seed=42)
        assert a[0].records == b[0].records and a[1].records == b[1].records

    def test_empty_test_warns(self):
        ds = synth_generate(noise_config(200, balance=0.5), seed=8)
        with pytest.warns(UserWarning, match="empty"):
            train, test = balanced_split(ds, 100, seed=0)
        assert len(test) == 0 and train.class_counts() == (100, 100)

    def test_insufficient_class(self):
        ds = synth_generate(noise_config(100), seed=1)
        with pytest.raises(DataFormatError, match="requested 80, available 50"):
            balanced_split(ds, 80, seed=0)


class TestScaling:
    def test_degenerate_variable(self):
        recs = tuple(make_record([1, 0, 0, 0.4, 1.0, 3, 0.1]) for _ in range(5))
        params = fit_scaling(Dataset(SCHEMA, recs))
        i = SCHEMA.index("distance")
        assert params.low[i] == 0.4 and params.high[i] == pytest.approx(1.4)

    def test_minmax_identity(self):
        recs = (make_record([0, 0, 0, 1.0, 0.5, -10, 0.0]),
                make_record([1, 1, 1, 3.0, 2.5, 10, 1.0]))
        params = fit_scaling(Dataset(SCHEMA, recs))
        d = SCHEMA.index("democracy")
        assert params.scale_value(d, -10) == 0.0
        assert params.scale_value(d, 10) == 1.0
        a = SCHEMA.index("allies")
        assert (params.low[a], params.high[a]) == (0.0, 1.0)
        assert params.scale_value(a, 0.0) == 0.0 and params.scale_value(a, 1.0) == 1.0

    def test_clamping(self):
        recs = (make_record([0, 0, 0, 1.0, 0.5, -5, 0.0]),
                make_record([1, 1, 1, 3.0, 2.5, 5, 1.0]))
        params = fit_scaling(Dataset(SCHEMA, recs))
        hot = make_record([1, 0, 0, 4.5, 3.0, 9, 1.5])
        scaled = apply_scaling(params, hot)
        assert scaled.max() <= 1.0 and scaled.min() >= 0.0
        assert scaled[SCHEMA.index("distance")] == 1.0

    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    @settings(max_examples=50, deadline=None)
    def test_roundtrip(self, frac):
        recs = (make_record([0, 0, 0, 1.0, 0.5, -10, 0.0]),
                make_record([1, 1, 1, 3.0, 2.5, 10, 1.0]))
        params = fit_scaling(Dataset(SCHEMA, recs))
        for i in range(7):
            raw = params.low[i] + frac * (params.high[i] - params.low[i])
            assert math.isclose(
                params.unscale_value(i, params.scale_value(i, raw)), raw, abs_tol=1e-12
            )


class TestSynth:
    def test_deterministic(self):
        cfg = noise_config(1000)
        a = synth_generate(cfg, seed=77)
        b = synth_generate(cfg, seed=77)
        assert a.records == b.records

    def test_zero_coefficients_rate(self):
        # with no signal, outcome draws are Bernoulli(0.5); check the
        # pre-quota acceptance stream indirectly via a binomial bound on a
        # free-running (unbalanced-quota) sample
        cfg = SynthConfig(count=2000, balance=0.5)
        ds = synth_generate(cfg, seed=13)
        # quota generation forces exact balance; the real check is that no
        # class stalls: generation succeeded well inside the guard budget
        assert ds.class_counts() == (1000, 1000)

    def test_monotone_ground_truth(self):
        # P(dispute) never increases when any variable moves toward peace
        from disputekit.synth import dispute_logit

        cfg = separable_config()
        rng = np.random.default_rng(0)
        for _ in range(200):
            z = rng.uniform(size=7)
            base = dispute_logit(cfg, SCHEMA, z)
            i = rng.integers(0, 7)
            z2 = z.copy()
            z2[i] = min(1.0, z[i] + rng.uniform(0, 1 - z[i] + 1e-12))
            assert dispute_logit(cfg, SCHEMA, z2) <= base + 1e-12

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            SynthConfig(count=0)
        with pytest.raises(ValueError):
            SynthConfig(count=100, balance=1.5)


def test_scaled_arrays_shape():
    ds = synth_generate(noise_config(120), seed=3)
    params = fit_scaling(ds)
    X, y = scaled_arrays(params, ds)
    assert X.shape == (120, 7) and y.shape == (120,)
    assert X.min() >= 0.0 and X.max() <= 1.0
    assert set(np.unique(y)) <= {0.0, 1.0}
