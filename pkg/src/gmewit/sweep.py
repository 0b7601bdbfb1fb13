"""Lambda sweeps over site arrangements, geometry slices, and the flat-file formats.

Arrangements are written the compact way: ``(1, 2, 3)`` or label ``"123"`` means
sites ``(x, x+1, x+2)`` counted 1-based from the anchor ``x = N/2 - 3``. Pairs give
concurrence records, triples give witness records.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import yaml

from gmewit.geometry import (
    DETECTION_THRESHOLD,
    ORIENTATIONS,
    InvariantCoords,
    coords_of,
    lobe_mask,
    minimize_witness,
    separable_mask,
)
from gmewit.measures import wootters_concurrence
from gmewit.qubit_algebra import validate_density
from gmewit.xxz import XxzParams, ground_state, reduced_density

log = logging.getLogger(__name__)

CRITICAL_LAMBDA = -1.0
MIN_APPROACH = 1e-3
WORKERS_ENV = "GMEWIT_WORKERS"
QUANTITIES = ("concurrence", "witness")
CSV_COLUMNS = (
    "lambda",
    "arrangement",
    "kind",
    "value",
    "witness_r0",
    "witness_orientation",
    "ground_energy",
    "gap_flag",
    "sites",
)


def default_lambda_grid() -> list[float]:
    """120 points on [-1.2, 1.2], log-densified as lambda -> -1 from above."""
    ferro = np.linspace(-1.2, -1.01, 20)
    approach = -1 + np.logspace(np.log10(MIN_APPROACH), np.log10(0.2), 50)
    rest = np.linspace(-0.8, 1.2, 51)[1:]
    return [float(x) for x in np.concatenate([ferro, approach, rest])]


def clamp_lambda(lam: float) -> float:
    if CRITICAL_LAMBDA <= lam < CRITICAL_LAMBDA + MIN_APPROACH:
        clamped = CRITICAL_LAMBDA + MIN_APPROACH
        log.warning("lambda=%r clamped to %r (degenerate multiplet at -1)", lam, clamped)
        return clamped
    return float(lam)


def arrangement_label(offsets: Sequence[int]) -> str:
    if all(d <= 9 for d in offsets):
        return "".join(str(d) for d in offsets)
    return "-".join(str(d) for d in offsets)


@dataclass(frozen=True)
class SweepConfig:
    N: int
    lambdas: tuple[float, ...]
    arrangements: tuple[tuple[int, ...], ...]
    quantities: tuple[str, ...] = QUANTITIES
    output: str = "sweep.csv"
    seed: int = 0
    n_up: int | None = None
    anchor: int | None = None

    def __post_init__(self):
        XxzParams(self.N, 0.0)
        if not self.lambdas:
            raise ValueError("lambda grid is empty")
        if any(lam == CRITICAL_LAMBDA for lam in self.lambdas):
            raise ValueError("lambda grid must exclude -1 exactly")
        bad = set(self.quantities) - set(QUANTITIES)
        if bad or not self.quantities:
            raise ValueError(f"quantities must be a non-empty subset of {QUANTITIES}, got {self.quantities}")
        if self.n_up is not None and not 0 <= self.n_up <= self.N:
            raise ValueError(f"n_up out of range: {self.n_up}")
        if self.anchor_site < 1:
            raise ValueError(f"anchor x={self.anchor_site} must be >= 1; set 'anchor' for short chains")
        for arr in self.arrangements:
            if len(arr) not in (2, 3):
                raise ValueError(f"arrangement {arr} must name 2 or 3 sites")
            if arr[0] < 1 or any(b <= a for a, b in zip(arr, arr[1:])):
                raise ValueError(f"arrangement {arr} must be strictly increasing offsets >= 1")
            if self.sites_of(arr)[-1] >= self.N:
                raise ValueError(f"arrangement {arr} does not fit in a chain of {self.N} sites")

    @property
    def anchor_site(self) -> int:
        """1-based site ``x`` that offset 1 refers to."""
        return self.N // 2 - 3 if self.anchor is None else self.anchor

    def sites_of(self, offsets: Sequence[int]) -> tuple[int, ...]:
        """0-based chain sites of an arrangement."""
        return tuple(self.anchor_site + d - 2 for d in offsets)


_CONFIG_KEYS = {f.name for f in fields(SweepConfig)}


def parse_arrangement(item) -> tuple[int, ...]:
    if isinstance(item, str):
        parts = item.split("-") if "-" in item else list(item)
        return tuple(int(p) for p in parts)
    return tuple(int(d) for d in item)


def load_config(path: str | os.PathLike) -> SweepConfig:
    """Read a YAML sweep config. Unknown keys are errors.

    ``lambdas`` is either a list of numbers or the string ``default``.
    """
    raw = yaml.safe_load(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError("config must be a mapping")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key in ("N", "lambdas", "arrangements"):
        if key not in raw:
            raise ValueError(f"missing config key {key!r}")
    lambdas = raw["lambdas"]
    if lambdas == "default":
        lambdas = default_lambda_grid()
    elif not isinstance(lambdas, list):
        raise ValueError("lambdas must be a list or 'default'")
    raw["lambdas"] = tuple(float(x) for x in lambdas)
    raw["arrangements"] = tuple(parse_arrangement(a) for a in raw["arrangements"])
    if "quantities" in raw:
        raw["quantities"] = tuple(raw["quantities"])
    return SweepConfig(**raw)


@dataclass(frozen=True)
class SweepRecord:
    lam: float
    arrangement: str
    kind: str
    value: float
    witness_r0: float | None
    witness_orientation: int | None
    ground_energy: float
    gap_flag: bool
    sites: str

    def row(self) -> list[str]:
        def fmt(x):
            return "" if x is None else repr(x)

        return [
            repr(self.lam),
            self.arrangement,
            self.kind,
            repr(self.value),
            fmt(self.witness_r0),
            fmt(self.witness_orientation),
            repr(self.ground_energy),
            str(int(self.gap_flag)),
            self.sites,
        ]

    @classmethod
    def from_row(cls, row: dict) -> "SweepRecord":
        return cls(
            lam=float(row["lambda"]),
            arrangement=row["arrangement"],
            kind=row["kind"],
            value=float(row["value"]),
            witness_r0=float(row["witness_r0"]) if row["witness_r0"] else None,
            witness_orientation=int(row["witness_orientation"]) if row["witness_orientation"] else None,
            ground_energy=float(row["ground_energy"]),
            gap_flag=bool(int(row["gap_flag"])),
            sites=row["sites"],
        )


def _records_at(config: SweepConfig, lam: float) -> list[SweepRecord]:
    state = ground_state(XxzParams(config.N, lam), config.n_up, seed=config.seed)
    out = []
    for offsets in config.arrangements:
        sites = config.sites_of(offsets)
        rho = reduced_density(state, sites)
        common = dict(
            lam=lam,
            arrangement=arrangement_label(offsets),
            ground_energy=state.energy,
            gap_flag=state.degenerate,
            sites="-".join(str(s + 1) for s in sites),
        )
        if len(sites) == 2 and "concurrence" in config.quantities:
            out.append(SweepRecord(kind="concurrence", value=wootters_concurrence(rho),
                                   witness_r0=None, witness_orientation=None, **common))
        if len(sites) == 3 and "witness" in config.quantities:
            value, arg = minimize_witness(coords_of(rho))
            out.append(SweepRecord(kind="witness", value=value, witness_r0=arg.r0_param,
                                   witness_orientation=arg.orientation, **common))
    return out


def _worker_count(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    return max(1, workers)


def run_sweep(config: SweepConfig, workers: int | None = None) -> list[SweepRecord]:
    """Solve once per lambda and evaluate every arrangement.

    Records come back sorted by (lambda, arrangement, kind) whatever the worker count.
    """
    lambdas = sorted({clamp_lambda(lam) for lam in config.lambdas})
    n = _worker_count(workers)
    if n == 1:
        chunks = [_records_at(config, lam) for lam in lambdas]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            chunks = list(pool.map(_records_at, [config] * len(lambdas), lambdas))
    records = [r for chunk in chunks for r in chunk]
    return sorted(records, key=lambda r: (r.lam, r.arrangement, r.kind))


def write_records(records: Iterable[SweepRecord], path: str | os.PathLike | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(r.row())
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_records(path: str | os.PathLike) -> list[SweepRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [SweepRecord.from_row(row) for row in reader]


SLICE_REGIONS = ("outside-cone", "separable", "lobe-1", "lobe-2", "lobe-3", "witness-negative", "indeterminate")


def _witness_min_on_slice(r0: float, r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
    # the r0-dependent part A r0 - B is shared by every cell of the slice
    base, _ = minimize_witness(InvariantCoords(1 - r0, r0, 0.0, 0.0))
    proj = np.max(
        [np.cos(o * 2 * np.pi / 3) * r1 + np.sin(o * 2 * np.pi / 3) * r2 for o in ORIENTATIONS], axis=0
    )
    return base - proj


def geometry_slice(r0: float, resolution: int) -> list[tuple[float, float, str]]:
    """Classify a ``resolution x resolution`` grid of real invariant states at fixed ``r0``.

    Rows are ``(r1, r2, region)``; the grid spans ``[-r0, r0]`` on both axes and
    ``r3 = 0``. Region precedence follows ``SLICE_REGIONS``.
    """
    if not 0 < r0 < 1:
        raise ValueError(f"r0 must lie in (0, 1), got {r0}")
    if not 2 <= resolution <= 2048:
        raise ValueError(f"resolution must lie in [2, 2048], got {resolution}")
    axis = np.linspace(-r0, r0, resolution)
    r1, r2 = (g.ravel() for g in np.meshgrid(axis, axis, indexing="xy"))
    rp = 1 - r0
    zero = np.zeros_like(r1)
    region = np.full(r1.shape, len(SLICE_REGIONS) - 1)
    undecided = np.ones(r1.shape, dtype=bool)

    def assign(mask, code):
        hit = undecided & mask
        region[hit] = code
        undecided[hit] = False

    assign(r1**2 + r2**2 > r0**2 + 1e-12, 0)
    assign(separable_mask(rp, r1, r2, zero), 1)
    for lobe in (1, 2, 3):
        assign(lobe_mask(rp, r0, r1, r2, zero, lobe), 1 + lobe)
    if r0 > 2 / 3:
        assign(_witness_min_on_slice(r0, r1, r2) < DETECTION_THRESHOLD, 5)
    return [(float(x), float(y), SLICE_REGIONS[c]) for x, y, c in zip(r1, r2, region)]


def write_slice(rows, path: str | os.PathLike | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("r1", "r2", "region"))
    for x, y, reg in rows:
        writer.writerow((repr(x), repr(y), reg))
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse rows of comma-separated complex entries written ``a+bi``.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([complex(tok.strip().replace(" ", "").replace("i", "j")) for tok in line.split(",")])
        except ValueError as exc:
            raise ValueError(f"malformed matrix entry in line {line!r}") from exc
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValueError(f"matrix must be square, got {len(rows)} rows of lengths {[len(r) for r in rows]}")
    return np.array(rows, dtype=complex)


def format_matrix(rho) -> str:
    def entry(z):
        return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}i"

    return "\n".join(",".join(entry(complex(z)) for z in row) for row in np.asarray(rho)) + "\n"


def load_matrix(path: str | os.PathLike, n_qubits: int = 3) -> np.ndarray:
    return validate_density(parse_matrix_text(Path(path).read_text()), n_qubits)
