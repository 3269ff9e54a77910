# satgate/backends.py

import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional, Tuple

import config
from hypercore.errors import BackendError, ParameterError
from satgate.cdcl import CdclSolver
from satgate.cnf import CnfInstance
from utils.logger import setup_logger

logger = setup_logger("satgate", "satgate.log")

BACKENDS = ("internal", "external", "pysat")


class SolverStatus(Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SolverVerdict:
    status: SolverStatus
    model: Optional[Tuple[int, ...]]
    backend: str
    wall_time: float
    detail: str = ""

    def true_vars(self) -> FrozenSet[int]:
        return frozenset(l for l in (self.model or ()) if l > 0)


def run_backend(instance: CnfInstance, backend: Optional[str] = None,
                sat_cmd: Optional[str] = None, timeout: Optional[float] = None) -> SolverVerdict:
    backend = backend or config.SAT_BACKEND
    timeout = config.SAT_TIMEOUT if timeout is None else timeout
    if backend not in BACKENDS:
        raise ParameterError(f"unknown SAT backend {backend!r}; choose one of {', '.join(BACKENDS)}")

    logger.info(f"{backend} backend: {instance.num_vars} vars, {len(instance.clauses)} clauses")
    started = time.perf_counter()
    if backend == "internal":
        status, model, detail = _run_internal(instance, timeout)
    elif backend == "external":
        status, model, detail = _run_external(instance, sat_cmd or config.SAT_CMD, timeout)
    else:
        status, model, detail = _run_pysat(instance)
    elapsed = time.perf_counter() - started

    logger.info(f"{backend} backend verdict {status.value} in {elapsed:.3f}s {detail}".rstrip())
    return SolverVerdict(status=status, model=model, backend=backend, wall_time=elapsed, detail=detail)


def _run_internal(instance, timeout):
    solver = CdclSolver(instance.num_vars, instance.clauses, time_budget=timeout)
    result = solver.solve()
    detail = f"({solver.conflicts} conflicts)"
    if result is None:
        return SolverStatus.UNKNOWN, None, detail
    if result:
        return SolverStatus.SAT, tuple(solver.model()), detail
    return SolverStatus.UNSAT, None, detail


def parse_solver_output(stdout: str, returncode: int):
    """Status and model from competition-format solver output."""
    status, model = None, []
    for line in stdout.splitlines():
        line = line.strip()
        if line.startswith("s "):
            word = line[2:].strip()
            if word == "SATISFIABLE":
                status = SolverStatus.SAT
            elif word == "UNSATISFIABLE":
                status = SolverStatus.UNSAT
            elif word in ("UNKNOWN", "INDETERMINATE"):
                status = SolverStatus.UNKNOWN
            else:
                raise BackendError(f"unrecognised status line {line!r}")
        elif line.startswith("v ") or line == "v":
            try:
                model.extend(int(tok) for tok in line[1:].split() if tok != "0")
            except ValueError:
                raise BackendError(f"malformed model line {line!r}")

    if status is None:
        if returncode not in (0, 10, 20):
            raise BackendError(f"solver exited with code {returncode} and no verdict")
        raise BackendError("solver printed no 's' status line")
    if status is SolverStatus.SAT and returncode not in (0, 10):
        raise BackendError(f"SATISFIABLE with exit code {returncode}")
    if status is SolverStatus.UNSAT and returncode not in (0, 20):
        raise BackendError(f"UNSATISFIABLE with exit code {returncode}")
    if status is SolverStatus.SAT and not model:
        raise BackendError("SATISFIABLE without a model")
    return status, (tuple(model) if status is SolverStatus.SAT else None)


def _run_external(instance, sat_cmd, timeout):
    if not sat_cmd:
        raise BackendError("no external solver configured; set KHG_SAT_CMD or pass --sat-cmd")
    argv = shlex.split(sat_cmd)
    fd, path = tempfile.mkstemp(prefix="khg_", suffix=".cnf")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(instance.to_dimacs())
        try:
            proc = subprocess.run(argv + [path], capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            logger.warning(f"external solver timed out after {timeout}s")
            return SolverStatus.UNKNOWN, None, f"(timeout {timeout}s)"
        except OSError as e:
            raise BackendError(f"cannot start external solver {argv[0]!r}: {e}")
    finally:
        os.remove(path)

    status, model = parse_solver_output(proc.stdout, proc.returncode)
    return status, model, f"(exit {proc.returncode})"


def _run_pysat(instance):
    try:
        from pysat.solvers import Cadical195
    except ImportError as e:
        raise BackendError(f"python-sat is not available: {e}")

    with Cadical195(bootstrap_with=[list(c) for c in instance.clauses]) as solver:
        sat = solver.solve()
        model = solver.get_model() if sat else None
    if not sat:
        return SolverStatus.UNSAT, None, ""
    # pysat omits variables that appear in no clause
    assigned = {abs(l): l for l in model or ()}
    full = tuple(assigned.get(v, -v) for v in range(1, instance.num_vars + 1))
    return SolverStatus.SAT, full, ""
