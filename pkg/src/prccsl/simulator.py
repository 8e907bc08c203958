"""Seeded discrete-event simulator of the autonomous traffic-sign vehicle.

The vehicle is abstracted to event emission on a fixed clock alphabet.
Every 50 ms the camera captures a frame which flows through a pipeline:

    cmrTrig -> cmrOut/imIn -> signOut -> controller inputs ->
    ctrlOut/vdIn -> vdOut (tqOut, spOut)

Stage latencies are drawn uniformly inside their execution windows
(camera [20,30], sign recognition [100,150], controller [100,150],
vehicle dynamics [50,100]) and each emitted clock is clamped to stay
strictly monotone; the clamp never pushes a latency outside its window
because consecutive anchors are at least one step apart.

Recognized sign types drive start-of-action events within their
deadlines; obstacle detections open emergency episodes during which
mode transitions are disabled for the sporadic dwell, with the
run/accelerate/turn re-entry events emitted only after it.  Activity
clocks (turnLeft, rightOn) tick on every step of their phase while the
controller is in Normal mode.

All randomness comes from named substreams seeded as "<seed>/<name>",
so identical parameters give byte-identical traces and adding a new
stochastic source does not perturb the existing ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .clocks import Trace
from .errors import FaultTargetError

__all__ = [
    "ALPHABET",
    "AVParams",
    "FaultSpec",
    "ControllerState",
    "FAULT_TARGETS",
    "simulate",
    "simulate_faulty",
]

ALPHABET = (
    "ms",
    "cmrTrig",
    "cmrOut",
    "signTrig",
    "imIn",
    "signOut",
    "obsDetect",
    "spUpdate",
    "ctrlIn",
    "ctrlOut",
    "signIn",
    "speed",
    "signType",
    "direct",
    "gear",
    "torque",
    "reqTorq",
    "reqDirec",
    "reqGear",
    "reqBrake",
    "vdIn",
    "vdOut",
    "spOut",
    "tqOut",
    "obstc",
    "veRun",
    "veAcc",
    "veBrake",
    "tLeft",
    "tRight",
    "turnLeft",
    "rightOn",
    "emgcy",
    "startTurnLeft",
    "startTurnRight",
    "startBrake",
    "Stop",
    "DetectLeftSign",
    "DetectRightSign",
    "DetectStopSign",
)

# internal schedule constants (steps)
_INPUT_SYNC_WINDOW = 40  # controller input ports arrive within this window
_OUTPUT_SYNC_WINDOW = 30  # controller output ports leave within this window
_START_LATENCY = (100, 400)  # sign detection -> start-of-action command
_BRAKE_TO_STOP = (400, 2000)  # startBrake -> standstill
_TURN_DURATION = (800, 2000)  # length of a turn phase
_STOP_DURATION = (200, 500)  # standstill before re-accelerating
_RECOVERY_JITTER = 49  # dwell overshoot before mode re-entry

# fault families: periodic triggers get displaced by 1..jitter steps,
# execution latencies get stretched beyond their upper bound
_PERIODIC_FAULT_JITTER = {
    "periodic-R1": 20,
    "periodic-R2": 80,
    "periodic-R3": 15,
    "periodic-R4": 12,
}
_EXEC_FAULT_RANGES = {
    "exec-R5": (151, 190),
    "exec-R6": (31, 45),
    "exec-R7": (151, 190),
    "exec-R8": (101, 140),
}
FAULT_TARGETS = frozenset(_PERIODIC_FAULT_JITTER) | frozenset(_EXEC_FAULT_RANGES)

_STREAMS = (
    "camera-exec",
    "signrec-exec",
    "ctrl-exec",
    "vd-exec",
    "sign-type",
    "input-sync",
    "output-sync",
    "start-latency",
    "brake-to-stop",
    "obstacle",
    "recovery",
    "turn-duration",
    "stop-duration",
    "fault",
)


@dataclass(frozen=True)
class AVParams:
    """Timing and environment parameters of the vehicle model."""

    camera_period: int = 50
    signrec_period: int = 200
    obstacle_period: int = 40
    speed_period: int = 30
    exec_camera: tuple[int, int] = (20, 30)
    exec_signrec: tuple[int, int] = (100, 150)
    exec_controller: tuple[int, int] = (100, 150)
    exec_vehicledyn: tuple[int, int] = (50, 100)
    sporadic_dwell: int = 500
    w_cmr: int = 30
    w_sr: int = 150
    w_ctrl: int = 150
    w_vd: int = 100
    sign_type_count: int = 6
    obstacle_prob: float = 0.05
    speed_jitter: tuple[int, int] = (0, 2)
    seed: int = 42
    steps: int = 60000

    def __post_init__(self) -> None:
        for name in ("camera_period", "signrec_period", "obstacle_period", "speed_period"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for name in ("exec_camera", "exec_signrec", "exec_controller", "exec_vehicledyn", "speed_jitter"):
            lo, hi = getattr(self, name)
            if not 0 <= lo <= hi:
                raise ValueError(f"{name} must be a nonempty interval, got [{lo}, {hi}]")
        if not 0 <= self.obstacle_prob <= 1:
            raise ValueError("obstacle_prob must be in [0, 1]")
        if self.sporadic_dwell < 1:
            raise ValueError("sporadic_dwell must be positive")
        if self.sign_type_count < 3:
            raise ValueError("sign_type_count must be at least 3 (left, right, stop)")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        # worst-case symbols must equal the execution upper bounds
        pairs = (
            ("w_cmr", self.w_cmr, self.exec_camera),
            ("w_sr", self.w_sr, self.exec_signrec),
            ("w_ctrl", self.w_ctrl, self.exec_controller),
            ("w_vd", self.w_vd, self.exec_vehicledyn),
        )
        for name, value, interval in pairs:
            if value != interval[1]:
                raise ValueError(f"{name} must equal {interval[1]}, got {value}")


@dataclass(frozen=True)
class FaultSpec:
    """A requirement family to violate and the per-occurrence rate."""

    target: str
    rate: float


@dataclass
class ControllerState:
    """Mode and Normal-mode substate of the controller."""

    mode: str = "Normal"  # "Normal" | "Emergency"
    substate: str = "acc"  # "turnLeft" | "turnRight" | "Stop" | "dec" | "acc"
    emergency_entry_step: int | None = None


def simulate(params: AVParams) -> Trace:
    """Run the fault-free vehicle model for params.steps steps."""
    return _run(params, None)


def simulate_faulty(params: AVParams, fault: FaultSpec) -> Trace:
    """Run with one requirement family violated at the given rate."""
    if fault.target not in FAULT_TARGETS:
        raise FaultTargetError(
            f"unknown fault target {fault.target!r}; known: {', '.join(sorted(FAULT_TARGETS))}"
        )
    if not 0 <= fault.rate <= 1:
        raise FaultTargetError(f"fault rate must be in [0, 1], got {fault.rate}")
    return _run(params, fault)


def _run(params: AVParams, fault: FaultSpec | None) -> Trace:
    n = params.steps
    rng = {name: random.Random(f"{params.seed}/{name}") for name in _STREAMS}
    fault_rng = rng["fault"]

    def hit(family: str) -> bool:
        # draw from the fault stream only for the targeted family
        return (
            fault is not None
            and fault.target == family
            and fault_rng.random() < fault.rate
        )

    def periodic(period: int, family: str) -> list[int]:
        dates = []
        step = 0
        while step < n:
            date = step
            if hit(family):
                date += fault_rng.randint(1, _PERIODIC_FAULT_JITTER[family])
            dates.append(date)
            step += period
        return dates

    def draw(stream: str, interval: tuple[int, int], family: str) -> int:
        if hit(family):
            return rng[stream].randint(*_EXEC_FAULT_RANGES[family])
        return rng[stream].randint(*interval)

    dates: dict[str, list[int]] = {name: [] for name in ALPHABET}
    dates["ms"] = list(range(n))
    dates["signTrig"] = periodic(params.signrec_period, "periodic-R2")
    dates["obsDetect"] = periodic(params.obstacle_period, "periodic-R3")
    dates["spUpdate"] = periodic(params.speed_period, "periodic-R4")
    dates["cmrTrig"] = periodic(params.camera_period, "periodic-R1")

    # -- frame pipeline: one job per camera trigger ---------------------

    in_ports = ("speed", "direct", "gear", "torque")
    out_ports = ("reqTorq", "reqDirec", "reqGear", "reqBrake")
    prev: dict[str, int] = {}

    def emit(clock: str, at: int) -> int:
        """Append a tick, clamped to keep the clock strictly monotone."""
        at = max(prev.get(clock, -1) + 1, at)
        prev[clock] = at
        dates[clock].append(at)
        return at

    commands: list[tuple[int, int, str]] = []  # (step, priority, action)
    for trig in dates["cmrTrig"]:
        cmr_out = emit("cmrOut", trig + draw("camera-exec", params.exec_camera, "exec-R6"))
        im_in = emit("imIn", cmr_out)
        sign_out = emit(
            "signOut", im_in + draw("signrec-exec", params.exec_signrec, "exec-R5")
        )
        # recognition hand-off opens the controller input window: the
        # sign-type port arrives first, the state feedback ports follow
        emit("signIn", sign_out)
        emit("signType", sign_out)
        ctrl_in = emit("ctrlIn", sign_out)
        for port in in_ports:
            emit(port, sign_out + rng["input-sync"].randint(0, _INPUT_SYNC_WINDOW))
        ctrl_out = emit(
            "ctrlOut", ctrl_in + draw("ctrl-exec", params.exec_controller, "exec-R7")
        )
        for port in out_ports:
            emit(port, ctrl_out + rng["output-sync"].randint(0, _OUTPUT_SYNC_WINDOW))
        vd_in = emit("vdIn", ctrl_out)
        vd_out = emit(
            "vdOut", vd_in + draw("vd-exec", params.exec_vehicledyn, "exec-R8")
        )
        emit("spOut", vd_out)
        emit("tqOut", vd_out)

        sign = rng["sign-type"].randrange(params.sign_type_count)
        if sign == 0:
            emit("DetectLeftSign", sign_out)
            start = emit(
                "startTurnLeft", sign_out + rng["start-latency"].randint(*_START_LATENCY)
            )
            commands.append((start, 2, "turnLeft"))
        elif sign == 1:
            emit("DetectRightSign", sign_out)
            start = emit(
                "startTurnRight", sign_out + rng["start-latency"].randint(*_START_LATENCY)
            )
            commands.append((start, 2, "turnRight"))
        elif sign == 2:
            emit("DetectStopSign", sign_out)
            start = emit(
                "startBrake", sign_out + rng["start-latency"].randint(*_START_LATENCY)
            )
            commands.append((start, 2, "dec"))
            stop = emit("Stop", start + rng["brake-to-stop"].randint(*_BRAKE_TO_STOP))
            commands.append((stop, 3, "stopped"))
        # other sign types carry no maneuver

    # -- obstacle episodes ----------------------------------------------

    episodes: list[tuple[int, int]] = []  # (entry, recovery)
    rearm = -1  # obstacle detection re-armed strictly after this step
    for t in dates["obsDetect"]:
        if t <= rearm:
            continue
        if rng["obstacle"].random() < params.obstacle_prob:
            recovery = t + params.sporadic_dwell + 1 + rng["recovery"].randint(0, _RECOVERY_JITTER)
            episodes.append((t, recovery))
            rearm = recovery
    for entry, recovery in episodes:
        dates["obstc"].append(entry)
        dates["emgcy"].append(entry)
        dates["veBrake"].append(entry)
        dates["veRun"].append(recovery)
        dates["veAcc"].append(recovery)
        commands.append((entry, 0, "entry"))
        commands.append((recovery, 1, "recovery"))

    # -- controller phase sweep ------------------------------------------
    # Chronological replay of commands, stop events, and emergency
    # episodes; same-step order: entry, recovery, command, standstill.

    state = ControllerState()
    phase_end: int | None = None
    saved: tuple[str, int | None] = ("acc", None)
    seg_start = 0

    def close(end: int) -> None:
        if state.mode == "Normal" and end > seg_start:
            if state.substate == "turnLeft":
                dates["turnLeft"].extend(range(seg_start, min(end, n)))
            elif state.substate == "turnRight":
                dates["rightOn"].extend(range(seg_start, min(end, n)))

    for step, priority, action in sorted(commands):
        if state.mode == "Normal" and phase_end is not None and phase_end <= step:
            close(phase_end)
            state.substate, phase_end, seg_start = "acc", None, phase_end
        if action == "entry":
            close(step)
            saved = (state.substate, phase_end)
            state.mode, state.emergency_entry_step = "Emergency", step
            phase_end, seg_start = None, step
            continue
        if action == "recovery":
            state.mode, state.emergency_entry_step = "Normal", None
            substate, end = saved
            if substate in ("turnLeft", "turnRight") and (end is None or end > step):
                state.substate, phase_end = substate, end
                dates["tLeft" if substate == "turnLeft" else "tRight"].append(step)
            else:
                state.substate, phase_end = "acc", None
            seg_start = step
            continue
        if action == "stopped":
            duration = rng["stop-duration"].randint(*_STOP_DURATION)
            if state.mode == "Normal" and state.substate == "dec":
                close(step)
                state.substate, phase_end, seg_start = "Stop", step + duration, step
            continue
        # maneuver command
        duration = (
            rng["turn-duration"].randint(*_TURN_DURATION) if action != "dec" else None
        )
        if state.mode == "Emergency":
            continue  # transitions disabled during the dwell
        close(step)
        state.substate = action
        phase_end = None if duration is None else step + duration
        seg_start = step
    if state.mode == "Normal" and phase_end is not None and phase_end < n:
        close(phase_end)
        state.substate, seg_start = "acc", phase_end
    close(n)

    for clock in ("turnLeft", "rightOn"):
        dates[clock].sort()
    return Trace.from_dates(ALPHABET, n, dates)
