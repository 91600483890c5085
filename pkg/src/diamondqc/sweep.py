"""Parameter sweeps, threshold finders and the validation harness.

Grid points are enumerated in lexicographic order over (t, h, j, j2, jm) with
the temperature axis slowest, matching the fixed output column order.  All
searches are deterministic; there is no randomness anywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .correlations import (
    concurrence_closed_form,
    concurrence_wootters,
    discord_parts,
    gmqd,
    gqd_1norm_bell,
    min_conditional_entropy_closed,
    theta_fast,
)
from .errors import GridTooLarge, NoBracket, NotBellDiagonal
from .model import (
    ChainParams,
    bell_diagonal_coeffs,
    bloch_decompose,
    bloch_reconstruct,
    boltzmann_elements,
    thermal_state_exact,
    validate_constructions,
)
from .oracles import (
    GridSpec,
    SearchBudget,
    gmqd_variational,
    gqd_1norm_variational,
)

PARAM_ORDER = ("t", "h", "j", "j2", "jm")
MEASURES = ("concurrence", "qd", "gmqd", "gqd1")
DEFAULT_GRID_CAP = 10_000_000
DEFAULT_TEMP_FLOOR = 1e-3


@dataclass(frozen=True)
class AxisRange:
    """Inclusive linear range; steps == 1 pins the axis at ``start``."""

    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.start > self.stop:
            raise ValueError(f"range start {self.start} exceeds stop {self.stop}")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.steps)

    @staticmethod
    def fixed(value: float) -> "AxisRange":
        return AxisRange(value, value, 1)


@dataclass(frozen=True)
class SweepSpec:
    """Axes for every chain parameter plus measure selection and the grid cap."""

    t: AxisRange
    h: AxisRange
    j: AxisRange
    j2: AxisRange
    jm: AxisRange
    measures: tuple[str, ...] = MEASURES
    grid_cap: int = DEFAULT_GRID_CAP

    def __post_init__(self):
        for m in self.measures:
            if m not in MEASURES:
                raise ValueError(f"unknown measure {m!r}, expected one of {MEASURES}")
        if self.total_points > self.grid_cap:
            raise GridTooLarge(
                f"grid has {self.total_points} points, cap is {self.grid_cap}"
            )

    @property
    def total_points(self) -> int:
        n = 1
        for name in PARAM_ORDER:
            n *= getattr(self, name).steps
        return n


def sweep_points(spec: SweepSpec, temp_floor: float = DEFAULT_TEMP_FLOOR):
    """Yield (ChainParams, floored) in lexicographic grid order.

    Non-positive temperatures are lifted to ``temp_floor`` (the stand-in for
    the T = 0 limit) and reported via the flooring flag.
    """
    axes = [getattr(spec, name).values() for name in PARAM_ORDER]
    for t in axes[0]:
        floored = t <= 0.0
        t_eff = temp_floor if floored else float(t)
        for h in axes[1]:
            for j in axes[2]:
                for j2 in axes[3]:
                    for jm in axes[4]:
                        yield (
                            ChainParams(j=float(j), j2=float(j2), jm=float(jm),
                                        h=float(h), t=t_eff),
                            floored,
                        )


@dataclass(frozen=True)
class SweepRow:
    """One output row: the evaluated parameters and the selected measures
    (None marks measures that are undefined or deselected at this point)."""

    params: ChainParams
    concurrence: float | None
    qd: float | None
    classical_corr: float | None
    mutual_info: float | None
    gmqd: float | None
    gqd1: float | None
    theta: float
    flags: tuple[str, ...]


def evaluate_row(params: ChainParams, measures=MEASURES, grid: GridSpec | None = None,
                 extra_flags: tuple[str, ...] = (), verbatim_v: bool = False) -> SweepRow:
    """Compute just the selected measures at one point (sweeps skip the
    discord search when qd is not requested)."""
    rho = thermal_state_exact(params)
    els = boltzmann_elements(params, verbatim_v=verbatim_v)
    flags = list(extra_flags)
    if verbatim_v:
        flags.append("verbatim_v")

    concurrence = concurrence_wootters(rho) if "concurrence" in measures else None
    gm = gmqd(rho) if "gmqd" in measures else None

    qd = cc = mi = None
    if "qd" in measures:
        parts = discord_parts(rho, grid)
        qd, cc, mi = parts.quantum_discord, parts.classical_correlation, parts.mutual_information

    gqd1 = None
    if "gqd1" in measures:
        try:
            gqd1 = gqd_1norm_bell(bell_diagonal_coeffs(rho))
        except NotBellDiagonal:
            flags.append("not_bell_diagonal")

    return SweepRow(params=params, concurrence=concurrence, qd=qd, classical_corr=cc,
                    mutual_info=mi, gmqd=gm, gqd1=gqd1, theta=theta_fast(els),
                    flags=tuple(flags))


def run_sweep(spec: SweepSpec, grid: GridSpec | None = None,
              temp_floor: float = DEFAULT_TEMP_FLOOR):
    """Yield SweepRow for every grid point, in deterministic grid order."""
    for params, floored in sweep_points(spec, temp_floor):
        extra = ("temp_floored",) if floored else ()
        yield evaluate_row(params, spec.measures, grid, extra)


@dataclass(frozen=True)
class ThresholdQuery:
    """Bisection query: where does ``measure`` cross the dead level along one
    scan parameter?"""

    scan: str
    lo: float
    hi: float
    measure: str
    eps_dead: float = 1e-9
    tol: float = 1e-4

    def __post_init__(self):
        if self.scan not in ("T", "H"):
            raise ValueError("scan parameter must be 'T' or 'H'")
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        if not self.lo < self.hi:
            raise ValueError("bracket must satisfy lo < hi")


@dataclass(frozen=True)
class ThresholdResult:
    found: bool
    location: float | None
    reason: str = ""


def _single_measure(params: ChainParams, measure: str, grid: GridSpec | None) -> float:
    rho = thermal_state_exact(params)
    if measure == "concurrence":
        return concurrence_wootters(rho)
    if measure == "qd":
        return discord_parts(rho, grid).quantum_discord
    if measure == "gmqd":
        return gmqd(rho)
    if measure == "gqd1":
        return gqd_1norm_bell(bell_diagonal_coeffs(rho))
    raise ValueError(measure)


def find_threshold(query: ThresholdQuery, fixed: ChainParams,
                   grid: GridSpec | None = None) -> ThresholdResult:
    """Bisect the boundary of the dead region {measure <= eps_dead}.

    ``fixed`` supplies every parameter except the scanned one (its value for
    the scanned parameter is ignored).  Returns NoThreshold when the measure
    stays alive across the whole bracket (e.g. quantum discord, which decays
    asymptotically instead of dying); raises NoBracket when it is dead at both
    ends so no boundary can be located.
    """
    key = "t" if query.scan == "T" else "h"

    def value(x: float) -> float:
        return _single_measure(fixed.replace(**{key: x}), query.measure, grid)

    alive_lo = value(query.lo) > query.eps_dead
    alive_hi = value(query.hi) > query.eps_dead
    if alive_lo and alive_hi:
        return ThresholdResult(found=False, location=None,
                               reason="measure exceeds eps_dead across the whole bracket")
    if not alive_lo and not alive_hi:
        raise NoBracket(
            f"{query.measure} is below eps_dead={query.eps_dead} at both bracket ends"
        )

    lo, hi = query.lo, query.hi
    while hi - lo > query.tol:
        mid = 0.5 * (lo + hi)
        if (value(mid) > query.eps_dead) == alive_lo:
            lo = mid
        else:
            hi = mid
    return ThresholdResult(found=True, location=0.5 * (lo + hi))


def validation_lattice(n: int = 200):
    """Deterministic low-discrepancy sample of the parameter box
    j, j2 in [-2, 2], jm in [0, 3], h in [-4, 4], t in [0.05, 5].

    A Weyl sequence (fractional parts of multiples of sqrt-primes) keeps the
    sample reproducible with no random state.
    """
    alphas = np.sqrt(np.array([2.0, 3.0, 5.0, 7.0, 11.0]))
    idx = np.arange(1, n + 1)[:, None]
    frac = np.mod(idx * alphas[None, :], 1.0)
    points = []
    for f in frac:
        points.append(
            ChainParams(
                j=-2.0 + 4.0 * f[0],
                j2=-2.0 + 4.0 * f[1],
                jm=3.0 * f[2],
                h=-4.0 + 8.0 * f[3],
                t=0.05 + 4.95 * f[4],
            )
        )
    return points


DEFAULT_VALIDATION_POINT = ChainParams(j=0.0, j2=1.0, jm=0.0, h=0.0, t=1.0)


@dataclass
class CheckResult:
    name: str
    max_dev: float
    tol: float
    passed: bool
    detail: str = ""


@dataclass
class ValidationSummary:
    checks: list = field(default_factory=list)
    deviations: list = field(default_factory=list)
    points_used: int = 0
    verbatim_v: bool = False

    def add(self, name: str, max_dev: float, tol: float, detail: str = ""):
        self.checks.append(CheckResult(name, max_dev, tol, max_dev <= tol, detail))

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    @property
    def exit_code(self) -> int:
        return 4 if self.failures else 0

    def render(self) -> str:
        lines = [f"validation over {self.points_used} grid points"
                 + (" (verbatim v selected)" if self.verbatim_v else "")]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.name}: max dev {c.max_dev:.3e} (tol {c.tol:.0e})"
                         + (f" {c.detail}" if c.detail else ""))
        lines.append("documented deviations:" if self.deviations else "documented deviations: none")
        for d in self.deviations:
            lines.append(f"  - {d}")
        lines.append("result: " + ("FAIL" if self.failures else "PASS"))
        return "\n".join(lines)


def run_validate(points: int = 200, grid_cap: int | None = None,
                 use_verbatim_v: bool = False,
                 oracle_points: int = 24, onenorm_points: int = 8,
                 grid: GridSpec | None = None) -> ValidationSummary:
    """Run the whole invariant grid: construction equivalence, symmetries,
    oracle equivalences, and the additivity identity.

    Known shortcomings of the closed forms (the verbatim v weight at j != 0,
    the shortcut theta overshooting the searched conditional-entropy minimum)
    are reported under "documented deviations" and do not fail validation.
    """
    lattice = [DEFAULT_VALIDATION_POINT] + validation_lattice(points)
    if grid_cap is not None:
        lattice = lattice[:grid_cap]
    summary = ValidationSummary(points_used=len(lattice), verbatim_v=use_verbatim_v)
    grid = grid or GridSpec()

    # construction equivalence, both v variants
    dev_corr = 0.0
    dev_verb_j0 = 0.0
    dev_verb = 0.0
    conc_dev = 0.0
    recon_dev = 0.0
    for p in lattice:
        chk = validate_constructions(p)
        dev_corr = max(dev_corr, chk.corrected.max_abs)
        if p.j == 0.0:
            dev_verb_j0 = max(dev_verb_j0, chk.verbatim.max_abs)
        else:
            dev_verb = max(dev_verb, chk.verbatim.max_abs)
        rho = thermal_state_exact(p)
        conc_dev = max(conc_dev, abs(concurrence_wootters(rho)
                                     - concurrence_closed_form(boltzmann_elements(p))))
        recon_dev = max(recon_dev, float(np.max(np.abs(
            bloch_reconstruct(bloch_decompose(rho)) - rho))))
    if use_verbatim_v:
        # the mismatch is the expected outcome when the verbatim weight is selected
        summary.deviations.append(
            f"verbatim v vs exact construction: max |dev| {max(dev_verb, dev_verb_j0):.3e} "
            "(expected; spurious exchange term in the mixed-Ising weight)")
    else:
        summary.add("closed-form (corrected v) vs exact construction", dev_corr, 1e-12)
    summary.add("verbatim v agrees at j = 0", dev_verb_j0, 1e-12)
    if dev_verb > 1e-8:
        summary.deviations.append(
            f"verbatim v vs exact construction at j != 0: max |dev| {dev_verb:.3e} "
            "(documented misprint diagnostic, not a failure)")
    summary.add("concurrence: spin-flip spectrum vs closed form", conc_dev, 1e-10)
    summary.add("Pauli reconstruction of the exact state", recon_dev, 1e-12)

    # field-free Bell structure, swap and j-sign symmetry
    bell_dev = 0.0
    swap_dev = 0.0
    jsign_dev = 0.0
    for p in lattice[: max(40, len(lattice) // 4)]:
        p0 = p.replace(h=0.0)
        coeffs = bell_diagonal_coeffs(thermal_state_exact(p0))
        bell_dev = max(bell_dev, abs(coeffs.c1 - coeffs.c2))
        rho = thermal_state_exact(p)
        swap = rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
        swap_dev = max(swap_dev, float(np.max(np.abs(swap - rho))))
        jsign_dev = max(jsign_dev, float(np.max(np.abs(
            thermal_state_exact(p0) - thermal_state_exact(p0.replace(j=-p0.j))))))
    summary.add("field-free Bell structure (c1 = c2)", bell_dev, 1e-12)
    summary.add("Heisenberg-spin swap symmetry", swap_dev, 1e-12)
    summary.add("j sign symmetry of the field-free state", jsign_dev, 1e-12)

    # oracle equivalences and identities on a subset
    subset = lattice[:oracle_points]
    gm_dev = 0.0
    add_dev = 0.0
    qd_min = math.inf
    fast_gap_min = math.inf
    fast_excesses = []
    for p in subset:
        rho = thermal_state_exact(p)
        gm_dev = max(gm_dev, abs(gmqd(rho) - gmqd_variational(rho, grid)))
        parts = discord_parts(rho, grid)
        add_dev = max(add_dev, abs(parts.mutual_information
                                   - parts.classical_correlation - parts.quantum_discord))
        qd_min = min(qd_min, parts.quantum_discord)
        fast = min_conditional_entropy_closed(boltzmann_elements(p))
        gap = fast - parts.min_conditional
        fast_gap_min = min(fast_gap_min, gap)
        if gap > 1e-6:
            fast_excesses.append((p, gap))
    summary.add("geometric discord: closed form vs variational", gm_dev, 1e-4)
    summary.add("additivity I = C + D", add_dev, 1e-9)
    summary.add("discord non-negativity", max(0.0, -qd_min), 1e-9)
    summary.add("shortcut conditional entropy >= searched minimum",
                max(0.0, -fast_gap_min), 1e-9)
    if fast_excesses:
        worst = max(g for _, g in fast_excesses)
        summary.deviations.append(
            f"shortcut theta overshoots the searched conditional-entropy minimum at "
            f"{len(fast_excesses)}/{len(subset)} points (max excess {worst:.3e}); "
            "the searched value is authoritative")

    # trace-norm closed form vs variational search on field-free states
    one_dev = 0.0
    for p in lattice[:onenorm_points]:
        p0 = p.replace(h=0.0)
        rho = thermal_state_exact(p0)
        med = gqd_1norm_bell(bell_diagonal_coeffs(rho))
        est = gqd_1norm_variational(rho, SearchBudget())
        one_dev = max(one_dev, abs(med - est.value))
    summary.add("trace-norm discord: Bell-diagonal median vs variational", one_dev, 1e-3)

    return summary
