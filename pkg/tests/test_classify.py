from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wristlink.classify import (
    DEFAULT_OFF_BAND,
    DEFAULT_ON_BAND,
    Action,
    CalibrationError,
    CalibrationProfile,
    Debouncer,
    ProfileError,
    calibrate,
    classify_window,
    debounced_stream,
    load_profile,
    save_profile,
    window_mean,
)
from wristlink.sensor import (
    HORIZONTAL_Y_COUNTS,
    IDLE_COUNTS,
    VERTICAL_Z_COUNTS,
    AccelSample,
    GestureKind,
    Trace,
    generate_gesture,
)


def window_from(values, axis, other=200):
    axes = {"x": other, "y": other, "z": other}
    out = []
    for i, v in enumerate(values):
        axes[axis] = v
        out.append(AccelSample(t=i * 20, **axes))
    return out


ON_WINDOW = window_from(VERTICAL_Z_COUNTS, "z")
OFF_WINDOW = window_from(HORIZONTAL_Y_COUNTS, "y")
NOTHING_WINDOW = [
    AccelSample(t=i * 20, x=v, y=v, z=v) for i, v in enumerate(IDLE_COUNTS)
]


class TestWindowMean:
    def test_reference_on_window_mean(self):
        assert window_mean(ON_WINDOW, "z") == Fraction(4650, 17)

    def test_reference_off_window_mean(self):
        assert window_mean(OFF_WINDOW, "y") == Fraction(6398, 18)

    def test_reference_nothing_window_mean(self):
        assert window_mean(NOTHING_WINDOW, "z") == Fraction(3885, 19)

    def test_constant_window(self):
        win = window_from([42] * 5, "z")
        assert window_mean(win, "z") == 42

    def test_empty_window_rejected(self):
        with pytest.raises(ValueError):
            window_mean([], "z")

    def test_bad_axis_rejected(self):
        with pytest.raises(ValueError):
            window_mean(ON_WINDOW, "w")

    def test_mean_is_exact_not_rounded(self):
        win = window_from([1, 2], "y")
        assert window_mean(win, "y") == Fraction(3, 2)


class TestClassifyWindow:
    def test_reference_on_rows_classify_on(self):
        profile = CalibrationProfile(window_size=17)
        assert classify_window(ON_WINDOW, profile) is Action.ON

    def test_reference_off_rows_classify_off(self):
        profile = CalibrationProfile(window_size=18)
        assert classify_window(OFF_WINDOW, profile) is Action.OFF

    def test_reference_idle_rows_classify_do_nothing(self):
        profile = CalibrationProfile(window_size=19)
        assert classify_window(NOTHING_WINDOW, profile) is Action.DO_NOTHING

    def test_all_zero_window_does_nothing(self):
        profile = CalibrationProfile(window_size=4)
        win = [AccelSample(t=i, x=0, y=0, z=0) for i in range(4)]
        assert classify_window(win, profile) is Action.DO_NOTHING

    def test_inclusive_lower_bound_on_band(self):
        profile = CalibrationProfile(window_size=3)
        win = window_from([240, 240, 240], "z")
        assert classify_window(win, profile) is Action.ON

    def test_inclusive_upper_bound_on_band(self):
        profile = CalibrationProfile(window_size=3)
        win = window_from([286, 286, 286], "z")
        assert classify_window(win, profile) is Action.ON

    def test_just_outside_band_does_nothing(self):
        profile = CalibrationProfile(window_size=3)
        # mean 286 + 1/3 falls outside the inclusive band edge
        win = window_from([286, 286, 287], "z")
        assert classify_window(win, profile) is Action.DO_NOTHING

    def test_on_checked_before_off(self):
        # both bands satisfiable is impossible with disjoint bands on
        # different axes unless the window hits both; z wins by order
        profile = CalibrationProfile(window_size=2)
        win = [
            AccelSample(t=0, x=0, y=350, z=250),
            AccelSample(t=1, x=0, y=350, z=250),
        ]
        assert classify_window(win, profile) is Action.ON

    def test_wrong_window_length_rejected(self):
        profile = CalibrationProfile(window_size=5)
        with pytest.raises(ValueError):
            classify_window(ON_WINDOW, profile)

    def test_permutation_invariant(self):
        profile = CalibrationProfile(window_size=17)
        shuffled = list(ON_WINDOW)
        Random(3).shuffle(shuffled)
        assert classify_window(shuffled, profile) is Action.ON

    def test_uniform_shift_within_band_preserves_verdict(self):
        profile = CalibrationProfile(window_size=17)
        base_mean = window_mean(ON_WINDOW, "z")
        shift = int(286 - base_mean)  # keeps the mean at or below the band top
        shifted = [
            AccelSample(t=s.t, x=s.x, y=s.y, z=s.z + shift) for s in ON_WINDOW
        ]
        assert window_mean(shifted, "z") <= 286
        assert classify_window(shifted, profile) is Action.ON


def brute_force_verdict(values_xyz, on_band, off_band):
    """Independent route: integer cross-multiplied band comparisons."""
    n = len(values_xyz)
    z_total = sum(v[2] for v in values_xyz)
    if on_band[0] * n <= z_total <= on_band[1] * n:
        return Action.ON
    y_total = sum(v[1] for v in values_xyz)
    if off_band[0] * n <= y_total <= off_band[1] * n:
        return Action.OFF
    return Action.DO_NOTHING


def test_oracle_equivalence_randomized_100k():
    rng = Random(12345)
    cases = 100_000
    for _ in range(cases):
        n = rng.randint(1, 8)
        values = [
            (rng.randint(169, 384), rng.randint(169, 384), rng.randint(169, 384))
            for _ in range(n)
        ]
        window = [
            AccelSample(t=i, x=v[0], y=v[1], z=v[2]) for i, v in enumerate(values)
        ]
        profile = CalibrationProfile(window_size=n)
        assert classify_window(window, profile) is brute_force_verdict(
            values, DEFAULT_ON_BAND, DEFAULT_OFF_BAND
        )


class TestCalibrate:
    def on_trace(self):
        return Trace(tuple(ON_WINDOW), label=GestureKind.VERTICAL_UP_DOWN)

    def off_trace(self):
        return Trace(tuple(OFF_WINDOW), label=GestureKind.HORIZONTAL)

    def test_zero_margin_bands_match_reference_extremes(self):
        profile = calibrate([self.on_trace()], [self.off_trace()], 0, 0)
        assert profile.on_band == (261, 284)
        assert profile.off_band == (323, 381)

    def test_margins_widen_bands(self):
        profile = calibrate([self.on_trace()], [self.off_trace()], 5, 10)
        assert profile.on_band == (256, 294)
        assert profile.off_band == (318, 391)

    def test_overlapping_margins_rejected(self):
        # 284 + 40 = 324 reaches past the off band's low edge at 323
        with pytest.raises(CalibrationError, match="overlap"):
            calibrate([self.on_trace()], [self.off_trace()], 0, 40)

    def test_empty_input_rejected(self):
        with pytest.raises(CalibrationError):
            calibrate([], [self.off_trace()], 0, 0)
        with pytest.raises(CalibrationError):
            calibrate([self.on_trace()], [], 0, 0)

    def test_wrong_label_rejected(self):
        with pytest.raises(CalibrationError):
            calibrate([self.off_trace()], [self.off_trace()], 0, 0)

    def test_generated_traces_bands_contain_training_means(self):
        for seed in range(30):
            on = [generate_gesture(GestureKind.VERTICAL_UP_DOWN, 16, seed)]
            off = [generate_gesture(GestureKind.HORIZONTAL, 16, seed + 1000)]
            profile = calibrate(on, off, 0, 0)
            z_mean = window_mean(on[0].samples, "z")
            y_mean = window_mean(off[0].samples, "y")
            assert profile.on_band[0] <= z_mean <= profile.on_band[1]
            assert profile.off_band[0] <= y_mean <= profile.off_band[1]


class TestDebounce:
    def test_run_of_three_emits_once(self):
        assert debounced_stream([Action.ON] * 3, 2) == [Action.ON]

    def test_alternation_never_reaches_run_length(self):
        verdicts = [Action.ON, Action.OFF, Action.ON, Action.OFF]
        assert debounced_stream(verdicts, 2) == []

    def test_do_nothing_breaks_runs(self):
        verdicts = [Action.ON, Action.ON, Action.DO_NOTHING, Action.OFF, Action.OFF]
        assert debounced_stream(verdicts, 2) == [Action.ON, Action.OFF]

    def test_re_emission_after_opposite_action(self):
        verdicts = [Action.ON] * 2 + [Action.OFF] * 2 + [Action.ON] * 2
        assert debounced_stream(verdicts, 2) == [Action.ON, Action.OFF, Action.ON]

    def test_n_one_emits_on_first_sight(self):
        assert debounced_stream([Action.ON, Action.ON, Action.OFF], 1) == [
            Action.ON,
            Action.OFF,
        ]

    def test_invalid_n_rejected(self):
        with pytest.raises(ValueError):
            Debouncer(0)

    @settings(max_examples=300, deadline=None)
    @given(
        st.lists(st.sampled_from(list(Action)), max_size=60),
        st.integers(1, 5),
    )
    def test_never_repeats_and_never_emits_do_nothing(self, verdicts, n):
        out = debounced_stream(verdicts, n)
        assert Action.DO_NOTHING not in out
        for a, b in zip(out, out[1:]):
            assert a is not b


class TestProfile:
    def test_default_bands(self):
        p = CalibrationProfile()
        assert p.on_band == (240, 286)
        assert p.off_band == (323, 384)
        assert p.window_size == 16
        assert p.debounce_n == 2

    def test_overlapping_bands_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            CalibrationProfile(on_band=(240, 330), off_band=(323, 384))

    def test_inverted_band_rejected(self):
        with pytest.raises(ValueError):
            CalibrationProfile(on_band=(286, 240))

    def test_json_round_trip(self, tmp_path):
        p = CalibrationProfile(on_band=(250, 280), off_band=(330, 370), window_size=8, debounce_n=3)
        path = tmp_path / "profile.json"
        save_profile(p, path)
        assert load_profile(path) == p

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / "profile.json"
        path.write_text(
            '{"on_band": [240, 286], "off_band": [323, 384],'
            ' "window_size": 16, "debounce_n": 2, "extra": 1}'
        )
        with pytest.raises(ProfileError, match="extra"):
            load_profile(path)

    def test_missing_keys_rejected(self, tmp_path):
        path = tmp_path / "profile.json"
        path.write_text('{"on_band": [240, 286]}')
        with pytest.raises(ProfileError, match="missing"):
            load_profile(path)

    def test_non_integer_values_rejected(self, tmp_path):
        path = tmp_path / "profile.json"
        path.write_text(
            '{"on_band": [240.5, 286], "off_band": [323, 384],'
            ' "window_size": 16, "debounce_n": 2}'
        )
        with pytest.raises(ProfileError, match="integer"):
            load_profile(path)

    def test_boolean_values_rejected(self, tmp_path):
        path = tmp_path / "profile.json"
        path.write_text(
            '{"on_band": [240, 286], "off_band": [323, 384],'
            ' "window_size": true, "debounce_n": 2}'
        )
        with pytest.raises(ProfileError, match="integer"):
            load_profile(path)

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "profile.json"
        path.write_text("{nope")
        with pytest.raises(ProfileError):
            load_profile(path)
