"""Scenario-driven command line front end.

Loads a JSON scenario, runs the requested pipeline (phase extraction,
holonomy cross-check, gate synthesis, parameter sweeps), and writes JSON
reports plus optional CSV curve samples. Reports are byte-deterministic:
floats are rounded to 12 significant digits and the payload carries no
timestamps.
"""

import argparse
import itertools
import json
import os
import sys

import numpy as np

from .bundle import holonomy, horizontal_lift, lift_from_propagator
from .errors import (
    CrossCheckError,
    DynamicalResidualError,
    NotCyclicError,
    ObsphaseError,
    ScenarioError,
)
from .gates import GateSpec, cnot_equivalence, two_loop_protocol, two_qubit_gate, u_phi_beta
from .hamiltonians import (
    make_constant_z,
    make_quadratic_warp,
    make_rotating,
    make_tabulated,
    make_two_loop,
)
from .linalg import sigma_x, sigma_y, sigma_z
from .obspace import OrthDecomposition, from_observable, random_gauge
from .phases import circular_distance, detect_cyclic, geometric_phases, wrap_angle
from .propagation import DEFAULT_STEPS, solve

TWO_PI = 2 * np.pi

_SYSTEMS = {
    "constant-field": {"required": ("mu_B", "phi"), "optional": ("T", "steps")},
    "rotating-field": {"required": ("w0", "w1", "w"), "optional": ("steps",)},
    "two-loop": {"required": ("w0", "w1", "w"), "optional": ("steps",)},
    "two-qubit-cnot": {
        "required": (),
        "optional": ("phi0", "beta0", "phi1", "beta1"),
    },
    "custom-tabulated": {"required": (), "optional": ("steps",)},
}
_CHECKS = ("reparameterization", "gauge-start", "reference-frame")
_OUTPUT_KINDS = ("report", "curve_csv", "bloch_csv")
_TOP_KEYS = ("schema", "name", "system", "params", "checks", "outputs", "schedule", "observable")


# ------------------------------------------------------------- serialization


def _round12(x):
    # fixed 12-significant-digit float so identical scenarios produce
    # byte-identical reports
    return float(f"{float(x):.12g}")


def _float_list(xs):
    return [_round12(x) for x in np.atleast_1d(xs)]


def _matrix_json(M):
    M = np.asarray(M, dtype=complex)
    return [[[_round12(z.real), _round12(z.imag)] for z in row] for row in M]


def _fmt(x):
    return f"{_round12(x):.12g}"


# ---------------------------------------------------------------- validation


def _want(cond, pointer, message):
    if not cond:
        raise ScenarioError(pointer, message)


def _is_real(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _parse_complex_matrix(obj, pointer):
    _want(isinstance(obj, list) and obj, pointer, "expected a non-empty matrix")
    d = len(obj)
    out = np.zeros((d, d), dtype=complex)
    for i, row in enumerate(obj):
        _want(
            isinstance(row, list) and len(row) == d,
            f"{pointer}/{i}",
            f"expected a row of {d} [re, im] pairs",
        )
        for j, entry in enumerate(row):
            _want(
                isinstance(entry, list)
                and len(entry) == 2
                and all(_is_real(v) for v in entry),
                f"{pointer}/{i}/{j}",
                "expected an [re, im] pair",
            )
            out[i, j] = complex(entry[0], entry[1])
    return out


def load_scenario(path):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise ScenarioError("", f"cannot read scenario file: {e}")
    except json.JSONDecodeError as e:
        raise ScenarioError("", f"not valid JSON: {e}")


def validate_scenario(raw):
    """Check a parsed scenario against the published schema and fill in
    defaults. Returns the normalized scenario dict; raises ScenarioError
    with a JSON-pointer path on the first violation."""
    _want(isinstance(raw, dict), "", "scenario must be a JSON object")
    for key in raw:
        _want(key in _TOP_KEYS, f"/{key}", "unknown key")
    _want(raw.get("schema") == 1, "/schema", "expected the integer 1")

    name = raw.get("name")
    _want(isinstance(name, str) and name, "/name", "expected a non-empty string")
    _want(
        all(c.isalnum() or c in "._-" for c in name),
        "/name",
        "may contain only letters, digits, '.', '_' and '-' (it names output files)",
    )

    system = raw.get("system")
    _want(
        system in _SYSTEMS,
        "/system",
        f"expected one of {', '.join(sorted(_SYSTEMS))}",
    )
    allowed = _SYSTEMS[system]

    params = raw.get("params", {})
    _want(isinstance(params, dict), "/params", "expected an object")
    for key, value in params.items():
        _want(
            key in allowed["required"] or key in allowed["optional"],
            f"/params/{key}",
            f"unknown parameter for system {system}",
        )
        _want(_is_real(value), f"/params/{key}", "expected a number")
    for key in allowed["required"]:
        _want(key in params, f"/params/{key}", f"required by system {system}")

    if "steps" in params:
        steps = params["steps"]
        _want(
            float(steps).is_integer() and steps >= 8,
            "/params/steps",
            "expected an integer >= 8",
        )
        params["steps"] = int(steps)
    if system == "constant-field":
        _want(params["mu_B"] != 0, "/params/mu_B", "field must be nonzero")
        _want(params.get("T", 1.0) > 0, "/params/T", "duration must be positive")
    if system in ("rotating-field", "two-loop"):
        _want(params["w"] != 0, "/params/w", "drive frequency must be nonzero")

    checks = raw.get("checks", [])
    _want(isinstance(checks, list), "/checks", "expected a list")
    for i, c in enumerate(checks):
        _want(c in _CHECKS, f"/checks/{i}", f"expected one of {', '.join(_CHECKS)}")
        if c == "reparameterization":
            # the quadratic warp moves jump times off every uniform grid
            _want(
                system != "two-loop",
                f"/checks/{i}",
                "reparameterization needs a jump-free schedule",
            )
    _want(
        len(set(checks)) == len(checks), "/checks", "duplicate entries"
    )
    if system == "two-qubit-cnot":
        _want(not checks, "/checks", "no evolution to check for system two-qubit-cnot")

    outputs = raw.get("outputs", ["report"])
    _want(isinstance(outputs, list) and outputs, "/outputs", "expected a non-empty list")
    for i, o in enumerate(outputs):
        _want(
            o in _OUTPUT_KINDS,
            f"/outputs/{i}",
            f"expected one of {', '.join(_OUTPUT_KINDS)}",
        )
        if system == "two-qubit-cnot":
            _want(o == "report", f"/outputs/{i}", "only report is available for system two-qubit-cnot")
    _want(len(set(outputs)) == len(outputs), "/outputs", "duplicate entries")

    sc = {
        "schema": 1,
        "name": name,
        "system": system,
        "params": params,
        "checks": list(checks),
        "outputs": list(outputs),
    }

    if system == "custom-tabulated":
        _want("schedule" in raw, "/schedule", "required by system custom-tabulated")
        _want("observable" in raw, "/observable", "required by system custom-tabulated")
        sched = raw["schedule"]
        _want(isinstance(sched, dict), "/schedule", "expected an object")
        for key in sched:
            _want(key in ("times", "matrices"), f"/schedule/{key}", "unknown key")
        times = sched.get("times")
        _want(
            isinstance(times, list) and len(times) >= 2 and all(_is_real(t) for t in times),
            "/schedule/times",
            "expected a list of at least two numbers",
        )
        _want(times[0] == 0, "/schedule/times/0", "tabulated schedules must start at t = 0")
        _want(
            all(b > a for a, b in zip(times, times[1:])),
            "/schedule/times",
            "times must be strictly increasing",
        )
        mats = sched.get("matrices")
        _want(
            isinstance(mats, list) and len(mats) == len(times),
            "/schedule/matrices",
            "expected one matrix per time sample",
        )
        parsed = []
        dim = None
        for i, m in enumerate(mats):
            H = _parse_complex_matrix(m, f"/schedule/matrices/{i}")
            dim = dim or H.shape[0]
            _want(H.shape[0] == dim, f"/schedule/matrices/{i}", "inconsistent dimension")
            _want(
                np.linalg.norm(H - H.conj().T) <= 1e-10,
                f"/schedule/matrices/{i}",
                "sample is not Hermitian",
            )
            parsed.append(H)
        X0 = _parse_complex_matrix(raw["observable"], "/observable")
        _want(X0.shape[0] == dim, "/observable", "dimension differs from the schedule")
        _want(
            np.linalg.norm(X0 - X0.conj().T) <= 1e-10,
            "/observable",
            "observable is not Hermitian",
        )
        try:
            from_observable(X0)
        except ObsphaseError as e:
            raise ScenarioError("/observable", str(e))
        sc["schedule"] = {"times": [float(t) for t in times], "matrices": mats}
        sc["observable"] = raw["observable"]
        sc["_times"] = np.asarray(times, dtype=float)
        sc["_samples"] = np.stack(parsed)
        sc["_X0"] = X0
        if "bloch_csv" in outputs:
            _want(dim == 2, "/outputs", "bloch_csv is only defined for dimension 2")
    else:
        _want("schedule" not in raw, "/schedule", f"not allowed for system {system}")
        _want("observable" not in raw, "/observable", f"not allowed for system {system}")

    return sc


def _scenario_echo(sc):
    return {k: v for k, v in sc.items() if not k.startswith("_")}


# ------------------------------------------------------------------ pipeline


def _tilt_observable(phi):
    return -(np.sin(phi) * sigma_x + np.cos(phi) * sigma_z)


def _rotating_tilt(w0, w1, w):
    r = np.hypot(w0, w1 + w)
    return 2 * np.arctan2(w0, w1 + w + r)


def _build_problem(sc, steps_override):
    """Schedule, duration, observable and step count for the evolving
    systems (everything except two-qubit-cnot)."""
    params = sc["params"]
    steps = steps_override or params.get("steps", DEFAULT_STEPS)
    system = sc["system"]
    if system == "constant-field":
        h = make_constant_z(params["mu_B"])
        T = params.get("T", TWO_PI / abs(params["mu_B"]))
        X0 = _tilt_observable(params["phi"])
    elif system == "rotating-field":
        h = make_rotating(params["w0"], params["w1"], params["w"])
        T = TWO_PI / params["w"]
        X0 = _tilt_observable(_rotating_tilt(params["w0"], params["w1"], params["w"]))
    elif system == "two-loop":
        T1 = TWO_PI / params["w"]
        h = make_two_loop(make_rotating(params["w0"], params["w1"], params["w"]), T1)
        T = 2 * T1
        steps += steps % 2  # reversal point must sit on the grid
        X0 = _tilt_observable(_rotating_tilt(params["w0"], params["w1"], params["w"]))
    elif system == "custom-tabulated":
        h = make_tabulated(sc["_times"], sc["_samples"])
        T = float(sc["_times"][-1])
        X0 = sc["_X0"]
    else:
        raise ScenarioError("/system", f"system {system} has no evolution pipeline")
    return h, T, X0, int(steps)


def _multiset_gap(a, b):
    """Smallest worst-case circular distance over pairings of the two
    phase multisets (levels may come back permuted)."""
    a, b = np.atleast_1d(a), np.atleast_1d(b)
    best = np.inf
    for perm in itertools.permutations(range(len(b))):
        best = min(best, float(np.max(circular_distance(a, b[list(perm)]))))
    return best


def _holonomy_betas(p, X0, reference=None, start=None):
    obs = from_observable(X0)
    hor = horizontal_lift(lift_from_propagator(p, obs, reference=reference, start=start))
    return holonomy(hor).betas


def _haar_frame(rng, d):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return OrthDecomposition(q * np.exp(-1j * np.angle(np.diag(r))))


def _invariance_residuals(sc, p, h, T, X0, steps, report):
    """Rerun the holonomy route under the enabled deformations and
    record how far the beta multiset moved."""
    out = {}
    obs = from_observable(X0)
    rng = np.random.default_rng(0)
    for check in sc["checks"]:
        if check == "reparameterization":
            p2 = solve(make_quadratic_warp(h, T), T, steps=steps)
            betas = _holonomy_betas(p2, X0)
        elif check == "gauge-start":
            g = random_gauge(rng, obs.dim)
            betas = _holonomy_betas(p, X0, start=g.in_frame(obs))
        else:  # reference-frame
            betas = _holonomy_betas(p, X0, reference=_haar_frame(rng, obs.dim))
        out[check.replace("-", "_")] = _round12(
            _multiset_gap(report.holonomy_beta, betas)
        )
    return out


def _base_report(sc):
    return {
        "schema": 1,
        "scenario": _scenario_echo(sc),
        "theta": [],
        "gamma": [],
        "beta": [],
        "beta_unreduced": [],
        "holonomy_beta": [],
        "residuals": {},
        "gates": {},
    }


def _curve_rows(p, X0):
    """Per grid point: time, Bloch coordinates of the lowest-level
    projector (dimension 2 only), and the running holonomy phases."""
    obs = from_observable(X0)
    hor = horizontal_lift(lift_from_propagator(p, obs))
    frames = hor.unitaries @ obs.vectors
    overlaps = np.einsum("in,kin->kn", frames[0].conj(), frames[1:])
    running = np.vstack(
        [np.zeros(obs.dim), wrap_angle(np.angle(overlaps))]
    )
    rows = []
    for k, t in enumerate(p.grid):
        row = [t]
        if obs.dim == 2:
            v = frames[k, :, 0]
            row += [
                (v.conj() @ S @ v).real for S in (sigma_x, sigma_y, sigma_z)
            ]
        row += list(running[k])
        rows.append(row)
    return rows


def _write_curve_csv(path, p, X0, bloch_only=False):
    rows = _curve_rows(p, X0)
    d = X0.shape[0]
    running = ", ".join(f"beta_running_{n + 1}" for n in range(d))
    if bloch_only:
        header = "t, n_x, n_y, n_z"
        rows = [r[:4] for r in rows]
    elif d == 2:
        header = f"t, n_x, n_y, n_z, {running}"
    else:
        header = f"t, {running}"
    with open(path, "w") as f:
        f.write(header + "\n")
        for r in rows:
            f.write(",".join(_fmt(v) for v in r) + "\n")


def run_scenario(sc, out_dir=".", steps=None, tol=None):
    """Execute a validated scenario and write its artifacts. Returns the
    list of paths written."""
    os.makedirs(out_dir, exist_ok=True)
    name = sc["name"]
    report = _base_report(sc)
    system = sc["system"]
    curve_args = None

    if system == "two-qubit-cnot":
        params = sc["params"]
        spec0 = GateSpec(params.get("phi0", np.pi / 2), params.get("beta0", 0.0))
        spec1 = GateSpec(params.get("phi1", np.pi / 2), params.get("beta1", np.pi / 2))
        U = two_qubit_gate(spec0, spec1)
        equivalent, alpha = cnot_equivalence(U)
        target = np.zeros((4, 4), dtype=complex)
        target[:2, :2] = np.eye(2)
        target[2:, 2:] = np.exp(1j * alpha) * np.array([[0, 1], [1, 0]])
        report["gates"]["cnot"] = _matrix_json(U)
        report["residuals"]["cnot_deviation"] = _round12(np.linalg.norm(U - target))
        report["cnot"] = {"equivalent": bool(equivalent), "target_phase": _round12(alpha)}
    elif system == "two-loop":
        params = sc["params"]
        n = steps or params.get("steps", DEFAULT_STEPS)
        gate, phase_report, fit = two_loop_protocol(
            params["w0"], params["w1"], params["w"], steps=n
        )
        fitted = u_phi_beta(fit)
        _fill_phase_fields(report, phase_report)
        report["gates"]["two-loop"] = _matrix_json(gate)
        report["gates"]["fitted"] = _matrix_json(fitted)
        report["gate_fit"] = {"phi": _round12(fit.phi), "beta": _round12(fit.beta)}
        report["residuals"]["dynamical_cancellation"] = _round12(
            np.max(np.abs(phase_report.gamma))
        )
        report["residuals"]["gate_reconstruction"] = _round12(
            np.linalg.norm(gate - fitted)
        )
        if any(o != "report" for o in sc["outputs"]) or sc["checks"]:
            h, T, X0, n = _build_problem(sc, steps)
            p = solve(h, T, steps=n)
            curve_args = (p, X0)
            report["residuals"].update(
                _invariance_residuals(sc, p, h, T, X0, n, phase_report)
            )
    else:
        h, T, X0, n = _build_problem(sc, steps)
        p = solve(h, T, steps=n)
        phase_report = geometric_phases(p, h, X0, tol=tol if tol else 1e-6)
        _fill_phase_fields(report, phase_report)
        report["residuals"].update(
            _invariance_residuals(sc, p, h, T, X0, n, phase_report)
        )
        curve_args = (p, X0)

    artifacts = []
    for kind in sc["outputs"]:
        if kind == "report":
            path = os.path.join(out_dir, f"{name}-report.json")
            with open(path, "w") as f:
                json.dump(report, f, indent=2, sort_keys=True)
                f.write("\n")
        elif kind == "curve_csv":
            path = os.path.join(out_dir, f"{name}-curve.csv")
            _write_curve_csv(path, *curve_args)
        else:
            path = os.path.join(out_dir, f"{name}-bloch.csv")
            _write_curve_csv(path, *curve_args, bloch_only=True)
        artifacts.append(path)
    return artifacts


def _fill_phase_fields(report, phase_report):
    report["theta"] = _float_list(phase_report.theta)
    report["gamma"] = _float_list(phase_report.gamma)
    report["beta"] = _float_list(phase_report.beta)
    report["beta_unreduced"] = _float_list(phase_report.beta_raw)
    report["holonomy_beta"] = _float_list(phase_report.holonomy_beta)
    report["residuals"]["cyclicity"] = _round12(phase_report.cyclicity_residual)
    report["residuals"]["cross_check"] = _round12(phase_report.cross_residual)


# --------------------------------------------------------------------- sweep


def _parse_range(spec):
    parts = spec.split(":")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
        if len(parts) != 3 or count < 0:
            raise ValueError
    except (ValueError, IndexError):
        raise ScenarioError("", f"range must look like lo:hi:n, got {spec!r}")
    return np.linspace(lo, hi, count)


def sweep_scenario(sc, param, values, out_dir=".", steps=None, tol=None):
    """Rerun the scenario once per parameter value and tabulate the
    geometric phases. Non-cyclic rows are marked, not fatal."""
    system = sc["system"]
    allowed = _SYSTEMS[system]
    _want(
        system != "two-qubit-cnot",
        "/system",
        "sweep needs an evolving system",
    )
    _want(
        param != "steps"
        and (param in allowed["required"] or param in allowed["optional"]),
        f"/params/{param}",
        f"not a sweepable parameter of system {system}",
    )

    _want(
        param not in ("mu_B", "w") or all(v != 0 for v in values),
        f"/params/{param}",
        "sweep range crosses zero frequency",
    )

    os.makedirs(out_dir, exist_ok=True)
    dim = 2 if system != "custom-tabulated" else sc["_X0"].shape[0]

    path = os.path.join(out_dir, f"{sc['name']}-sweep-{param}.csv")
    header = (
        f"{param}, "
        + ", ".join(f"beta_{n + 1}" for n in range(dim))
        + ", holonomy_residual, cyclicity_residual, status"
    )
    with open(path, "w") as f:
        f.write(header + "\n")
        for value in values:
            row_sc = dict(sc, params=dict(sc["params"], **{param: float(value)}))
            h, T, X0, n = _build_problem(row_sc, steps)
            p = solve(h, T, steps=n)
            cyc = detect_cyclic(p, X0, tol=tol if tol else 1e-6)
            if not cyc.is_cyclic:
                cells = [_fmt(value)] + ["nan"] * (dim + 1)
                cells += [_fmt(cyc.residual), "not-cyclic"]
            else:
                r = geometric_phases(p, h, X0, tol=tol if tol else 1e-6)
                cells = [_fmt(value)]
                cells += [_fmt(b) for b in r.beta]
                cells += [_fmt(r.cross_residual), _fmt(r.cyclicity_residual), "ok"]
            f.write(",".join(cells) + "\n")
    return [path]


# ----------------------------------------------------------------------- cli


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="obsphase",
        description="observable-geometric phases of cyclic Heisenberg evolutions",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", help="path to a scenario JSON file")
    common.add_argument("--steps", type=int, help="override the time grid resolution")
    common.add_argument("--out", default=".", help="output directory (default: .)")
    common.add_argument("--tol", type=float, help="cyclicity tolerance override")
    sub.add_parser("run", parents=[common], help="run one scenario")
    sw = sub.add_parser("sweep", parents=[common], help="sweep one parameter")
    sw.add_argument("--param", required=True, help="scenario parameter to sweep")
    sw.add_argument(
        "--range",
        required=True,
        dest="range_spec",
        metavar="LO:HI:N",
        help="N evenly spaced values from LO to HI inclusive",
    )
    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        sc = validate_scenario(load_scenario(args.scenario))
        if args.steps is not None and args.steps < 8:
            raise ScenarioError("/params/steps", "expected an integer >= 8")
        if args.command == "run":
            artifacts = run_scenario(
                sc, out_dir=args.out, steps=args.steps, tol=args.tol
            )
        else:
            values = _parse_range(args.range_spec)
            artifacts = sweep_scenario(
                sc, args.param, values, out_dir=args.out, steps=args.steps, tol=args.tol
            )
    except ScenarioError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (NotCyclicError, CrossCheckError, DynamicalResidualError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except ObsphaseError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    for path in artifacts:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
