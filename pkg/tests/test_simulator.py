import pytest

from prccsl import (
    ALPHABET,
    AVParams,
    FAULT_TARGETS,
    FaultSpec,
    FaultTargetError,
    simulate,
    simulate_faulty,
    trace_to_string,
)

N = 20000
PARAMS = AVParams(steps=N, seed=7)


@pytest.fixture(scope="module")
def trace():
    return simulate(PARAMS)


def pairs(trace, left, right):
    a, b = trace.dates(left), trace.dates(right)
    return list(zip(a, b))


def test_alphabet_is_fixed():
    assert len(ALPHABET) == 40
    assert ALPHABET[0] == "ms"
    assert len(set(ALPHABET)) == 40


def test_trace_shape(trace):
    assert trace.clocks == ALPHABET
    assert len(trace) == N
    assert trace.dates("ms") == list(range(N))


def test_runs_are_reproducible(trace):
    again = simulate(AVParams(steps=N, seed=7))
    assert trace_to_string(again) == trace_to_string(trace)
    other = simulate(AVParams(steps=N, seed=8))
    assert trace_to_string(other) != trace_to_string(trace)


def test_periodic_triggers_are_exact(trace):
    assert trace.dates("cmrTrig") == list(range(0, N, 50))
    assert trace.dates("signTrig") == list(range(0, N, 200))
    assert trace.dates("obsDetect") == list(range(0, N, 40))
    assert trace.dates("spUpdate") == list(range(0, N, 30))


def test_pipeline_stage_latencies(trace):
    for left, right, lo, hi in (
        ("cmrTrig", "cmrOut", 20, 30),
        ("imIn", "signOut", 100, 150),
        ("ctrlIn", "ctrlOut", 100, 150),
        ("vdIn", "vdOut", 50, 100),
    ):
        got = pairs(trace, left, right)
        assert got, (left, right)
        assert all(lo <= b - a <= hi for a, b in got), (left, right)


def test_coincident_pipeline_ports(trace):
    sign_out = trace.dates("signOut")
    assert trace.dates("imIn") == trace.dates("cmrOut")
    for clock in ("signIn", "signType", "ctrlIn"):
        assert trace.dates(clock) == sign_out
    assert trace.dates("vdIn") == trace.dates("ctrlOut")
    assert trace.dates("tqOut") == trace.dates("vdOut")
    assert trace.dates("spOut") == trace.dates("vdOut")


def test_pipeline_clocks_strictly_monotone(trace):
    for clock in ("cmrOut", "signOut", "ctrlOut", "vdOut", "speed", "reqBrake"):
        d = trace.dates(clock)
        assert all(x < y for x, y in zip(d, d[1:])), clock


def test_synchronization_windows(trace):
    sign_out = trace.dates("signOut")
    for port in ("speed", "direct", "gear", "torque"):
        for anchor, at in zip(sign_out, trace.dates(port)):
            assert 0 <= at - anchor <= 40, port
    ctrl_out = trace.dates("ctrlOut")
    for port in ("reqTorq", "reqDirec", "reqGear", "reqBrake"):
        for anchor, at in zip(ctrl_out, trace.dates(port)):
            assert 0 <= at - anchor <= 30, port


def test_detections_subset_of_recognitions(trace):
    sign_out = set(trace.dates("signOut"))
    detects = []
    for clock in ("DetectLeftSign", "DetectRightSign", "DetectStopSign"):
        d = trace.dates(clock)
        assert set(d) <= sign_out
        detects.append(d)
    left, right, stop = detects
    assert len(left) and len(right) and len(stop)
    # one recognition yields at most one detection
    assert not (set(left) & set(right)) and not (set(left) & set(stop))


def test_start_event_deadlines(trace):
    for detect, start in (
        ("DetectLeftSign", "startTurnLeft"),
        ("DetectRightSign", "startTurnRight"),
        ("DetectStopSign", "startBrake"),
    ):
        got = pairs(trace, detect, start)
        assert got
        assert all(100 <= s - d <= 400 for d, s in got), detect
    stops = pairs(trace, "startBrake", "Stop")
    assert all(400 <= s - b <= 2300 for b, s in stops)


def test_emergency_episodes(trace):
    obstc = trace.dates("obstc")
    assert obstc, "expected at least one obstacle in 20000 steps"
    assert trace.dates("emgcy") == obstc
    assert trace.dates("veBrake") == obstc
    runs = trace.dates("veRun")
    assert trace.dates("veAcc") == runs
    for entry, recovery in zip(obstc, runs):
        assert 501 <= recovery - entry <= 550
    # a new episode opens only after the previous one recovered
    for recovery, nxt in zip(runs, obstc[1:]):
        assert nxt > recovery
    assert set(trace.dates("tLeft")) <= set(runs)
    assert set(trace.dates("tRight")) <= set(runs)


def test_mode_exclusions(trace):
    turn_left = set(trace.dates("turnLeft"))
    right_on = set(trace.dates("rightOn"))
    assert not (turn_left & right_on)
    activity = turn_left | right_on
    for entry, recovery in zip(trace.dates("obstc"), trace.dates("veRun")):
        silenced = set(range(entry, min(recovery, N)))
        assert not (activity & silenced)
    # resumed turns tick their activity clock from the recovery step on
    for date in trace.dates("tLeft"):
        assert date in turn_left
    for date in trace.dates("tRight"):
        assert date in right_on


def test_turn_activity_has_phase_lengths(trace):
    # activity comes in contiguous runs, each at most a turn duration long
    dates = trace.dates("turnLeft")
    assert dates
    runs = []
    start = prev = dates[0]
    for d in dates[1:]:
        if d == prev + 1:
            prev = d
            continue
        runs.append((start, prev))
        start = prev = d
    runs.append((start, prev))
    assert all(end - begin < 2000 for begin, end in runs)


def test_params_validation():
    with pytest.raises(ValueError):
        AVParams(camera_period=0)
    with pytest.raises(ValueError):
        AVParams(exec_camera=(30, 20))
    with pytest.raises(ValueError):
        AVParams(obstacle_prob=1.5)
    with pytest.raises(ValueError):
        AVParams(steps=-1)
    with pytest.raises(ValueError):
        AVParams(w_cmr=29)
    with pytest.raises(ValueError):
        AVParams(sign_type_count=2)


def test_fault_validation():
    with pytest.raises(FaultTargetError):
        simulate_faulty(PARAMS, FaultSpec("nope", 0.5))
    with pytest.raises(FaultTargetError):
        simulate_faulty(PARAMS, FaultSpec("exec-R5", 1.5))
    assert "periodic-R1" in FAULT_TARGETS and "exec-R8" in FAULT_TARGETS
    assert len(FAULT_TARGETS) == 8


def test_fault_rate_zero_matches_clean(trace):
    z = simulate_faulty(PARAMS, FaultSpec("periodic-R1", 0.0))
    assert trace_to_string(z) == trace_to_string(trace)


def test_periodic_fault_displaces_triggers(trace):
    faulty = simulate_faulty(PARAMS, FaultSpec("periodic-R1", 0.5))
    grid = set(range(0, N, 50))
    off_grid = [d for d in faulty.dates("cmrTrig") if d not in grid]
    assert len(off_grid) > len(faulty.dates("cmrTrig")) // 4
    # other periodic triggers stay untouched
    assert faulty.dates("signTrig") == trace.dates("signTrig")


def test_exec_fault_stretches_one_stage(trace):
    faulty = simulate_faulty(PARAMS, FaultSpec("exec-R6", 1.0))
    gaps = [b - a for a, b in pairs(faulty, "cmrTrig", "cmrOut")]
    assert all(31 <= g <= 45 for g in gaps)
    # downstream stage latencies keep their own windows
    assert all(100 <= b - a <= 150 for a, b in pairs(faulty, "imIn", "signOut"))


def test_empty_and_tiny_traces():
    empty = simulate(AVParams(steps=0, seed=1))
    assert len(empty) == 0
    tiny = simulate(AVParams(steps=1, seed=1))
    assert tiny.dates("ms") == [0]
    assert tiny.dates("cmrTrig") == [0]
