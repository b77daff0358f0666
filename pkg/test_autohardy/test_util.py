import math

import numpy as np
import pytest

from autohardy.util import csv_util, log_space


class TestLogSpace:
    def test__maybe_exp_switches_at_threshold(self):
        assert log_space.maybe_exp(1.0, threshold=600.0) == pytest.approx(math.e)

        big = log_space.maybe_exp(800.0, threshold=600.0)
        assert isinstance(big, log_space.LogMagnitude)
        assert float(big) == math.inf
        assert log_space.as_log(big) == 800.0

    def test__multiplication_adds_logs(self):
        value = log_space.LogMagnitude(log=750.0) * log_space.LogMagnitude(log=-760.0, sign=-1)

        assert value.sign == -1
        assert float(value) == pytest.approx(-math.exp(-10.0))
        assert float(2.0 * log_space.LogMagnitude(log=0.0)) == pytest.approx(2.0)

        with pytest.raises(ValueError):
            log_space.LogMagnitude(log=0.0) * 0.0

    def test__log_sum_exp(self):
        assert log_space.log_sum_exp(np.array([1000.0, 1000.0])) == pytest.approx(1000.0 + math.log(2.0))
        assert log_space.log_sum_exp(np.array([-math.inf, 0.0])) == pytest.approx(0.0)
        assert log_space.log_sum_exp(np.array([-math.inf, -math.inf])) == -math.inf
        assert log_space.log_sum_exp(np.array([])) == -math.inf


class TestCsv:
    def test__format_value(self):
        assert csv_util.format_value(None) == ""
        assert csv_util.format_value(True) == "true"
        assert csv_util.format_value(12) == "12"
        assert csv_util.format_value(1.0 / 3.0) == "0.333333333"
        assert csv_util.format_value(1.0 / 3.0, digits=3) == "0.333"
        assert csv_util.format_value(float("nan")) == "nan"
        assert csv_util.format_value("forms") == "forms"
        assert csv_util.format_value(log_space.LogMagnitude(log=1000.0)) == "exp(1000)"
        assert csv_util.format_value(log_space.LogMagnitude(log=0.0)) == "1"

    def test__format_rows(self):
        text = csv_util.format_rows(header=("n", "W"), rows=[(0, 0.5), (1, None)])

        assert text == "n,W\n0,0.5\n1,\n"

    def test__write_text_to_file(self, tmp_path):
        path = tmp_path / "out.csv"
        csv_util.write_text("a,b\n", out=path)

        assert path.read_text() == "a,b\n"
