"""Iterated refinement experiments driven by a flat key = value config."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from .bisect import MaubachSimplex, bisect_simplices
from .core import Mesh, MeshError
from .criteria import CylinderRegion, GravitationalPotential, select_by_curvature, select_by_hypersphere, select_random
from .driver import get_non_conformal_simplices, local_refine, renumber_mesh
from .io import read_mesh, write_mesh
from .marking import mark_mesh
from .meshgen import GridSpec, kuhn_mesh, random_simplex_mesh, regular_simplex_mesh, tagged_mesh
from .quality import CSV_HEADER, QualityReport, quality_stats
from .verify import is_reflected, non_conformal_boundary_faces

log = logging.getLogger(__name__)

CRITERIA = ("uniform", "hypersphere", "curvature", "random")
GENERATORS = ("kuhn", "regular", "random")


class VerificationError(Exception):
    """A conformity or reflectivity check failed during a campaign."""


def _floats(text: str) -> Tuple[float, ...]:
    return tuple(float(t) for t in text.replace(",", " ").split())


def _halfspace(text: str) -> Optional[Tuple[int, float]]:
    if not text or text.lower() == "none":
        return None
    axis, bound = text.split(":")
    return int(axis), float(bound)


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"not a boolean: {text!r}")


@dataclass
class CampaignConfig:
    generator: str = "kuhn"
    input: Optional[str] = None
    n: int = 2
    k: int = 1
    origin: float = 0.0
    extent: float = 1.0
    edge: float = 1.0
    seed: int = 0
    min_quality: float = 0.01
    tag: int = 0  # > 0 skips marking and starts from Maubach simplices with this tag

    criterion: str = "uniform"
    iterations: int = 1
    center: Tuple[float, ...] = ()
    radius: float = 0.25
    halfspace: Optional[Tuple[int, float]] = None
    fraction: float = 0.1
    criterion_seed: int = 0
    cylinder_center: Tuple[float, ...] = (0.5, 0.5, 0.5)
    cylinder_radius: float = 1.0
    t_bounds: Tuple[float, ...] = (-0.1, 1.1)

    csv: Optional[str] = None
    output: Optional[str] = None
    check: bool = False

    _parsers = {
        "n": int, "k": int, "seed": int, "tag": int, "iterations": int, "criterion_seed": int,
        "edge": float, "origin": float, "extent": float, "min_quality": float, "radius": float, "fraction": float, "cylinder_radius": float,
        "center": _floats, "cylinder_center": _floats, "t_bounds": _floats,
        "halfspace": _halfspace, "check": _bool,
    }

    def set(self, key: str, value: str) -> None:
        key = key.strip().replace("-", "_")
        names = {f.name for f in fields(self)}
        if key not in names:
            raise ValueError(f"unknown config key {key!r}")
        value = value.strip()
        parser = self._parsers.get(key)
        setattr(self, key, parser(value) if parser else (value or None))

    @classmethod
    def from_text(cls, text: str, overrides=()) -> "CampaignConfig":
        cfg = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line {lineno}: expected key = value")
            key, value = line.split("=", 1)
            cfg.set(key, value)
        for item in overrides:
            key, value = item.split("=", 1)
            cfg.set(key, value)
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path, overrides=()) -> "CampaignConfig":
        return cls.from_text(Path(path).read_text(encoding="utf-8"), overrides)

    def validate(self) -> None:
        if self.criterion not in CRITERIA:
            raise ValueError(f"criterion must be one of {CRITERIA}")
        if self.input is None and self.generator not in GENERATORS:
            raise ValueError(f"generator must be one of {GENERATORS}")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.criterion == "hypersphere" and self.center and len(self.center) != self.n and self.input is None:
            raise ValueError("center must have n coordinates")


@dataclass
class CampaignResult:
    mesh: Mesh
    reports: List[QualityReport] = field(default_factory=list)

    def csv(self) -> str:
        return "\n".join([CSV_HEADER] + [r.csv_row() for r in self.reports]) + "\n"


def initial_mesh(cfg: CampaignConfig) -> Mesh:
    if cfg.input:
        mesh = read_mesh(cfg.input)
    elif cfg.generator == "kuhn":
        mesh = kuhn_mesh(GridSpec(cfg.n, cfg.k, cfg.origin, cfg.extent))
    elif cfg.generator == "regular":
        mesh = regular_simplex_mesh(cfg.n, cfg.edge)
    else:
        mesh = random_simplex_mesh(cfg.n, cfg.seed, cfg.min_quality)
    if cfg.tag and not mesh.is_marked:
        mesh = tagged_mesh(mesh, cfg.tag)
    return mesh


def _selector(cfg: CampaignConfig, n: int):
    if cfg.criterion == "hypersphere":
        center = cfg.center or (0.5,) * n
        return lambda m: select_by_hypersphere(m, center, cfg.radius, cfg.halfspace)
    if cfg.criterion == "curvature":
        region = CylinderRegion(tuple(cfg.cylinder_center), cfg.cylinder_radius,
                                bounds=tuple(cfg.t_bounds))
        potential = GravitationalPotential()
        return lambda m: select_by_curvature(m, potential, cfg.fraction, region)
    if cfg.criterion == "random":
        rng = np.random.default_rng(cfg.criterion_seed)
        return lambda m: select_random(m, cfg.fraction, rng)
    return None


def _check(refined: Mesh, anchor: Mesh, iteration: int) -> None:
    bad = non_conformal_boundary_faces(refined, anchor)
    if bad:
        raise VerificationError(f"iteration {iteration}: {len(bad)} boundary faces do not "
                                f"descend from the previous mesh, e.g. {bad[0]}")
    maubach = [e for e in refined.elements if isinstance(e, MaubachSimplex)]
    uniform = len(maubach) == len(refined.elements) and len({e.level for e in maubach}) == 1
    if uniform and not is_reflected(refined):
        raise VerificationError(f"iteration {iteration}: uniform Maubach mesh is not reflected")


def run_campaign(cfg: CampaignConfig, mesh: Mesh = None, on_iteration=None) -> CampaignResult:
    """Refine ``iterations`` times with the configured criterion.

    Records a quality report before the first and after every iteration.
    With ``cfg.check`` each conformal intermediate mesh is verified against
    the last conformal one before it is renumbered.
    """
    mesh = initial_mesh(cfg) if mesh is None else mesh
    if not mesh.is_marked:
        mesh = mark_mesh(mesh)
    select = _selector(cfg, mesh.n)
    result = CampaignResult(mesh, [quality_stats(mesh, 0)])
    anchor = mesh
    for it in range(1, cfg.iterations + 1):
        if select is None:
            refined = bisect_simplices(mesh, range(len(mesh.elements)))
        else:
            handles = select(mesh)
            if any(len(v) > 1 for v in mesh.vertices):
                raise MeshError("local refinement needs a conformal mesh; finish the uniform "
                                "rounds until every element reaches the same stage")
            refined = local_refine(mesh, handles, renumber=False)
        conformal = select is not None or not get_non_conformal_simplices(refined)
        if conformal:
            if cfg.check:
                _check(refined, anchor, it)
            mesh = renumber_mesh(refined)
            anchor = mesh
        else:
            mesh = refined
        report = quality_stats(mesh, it)
        result.reports.append(report)
        log.info("iteration %d: %d elements, %d vertices, q in [%.4f, %.4f]",
                 it, report.elements, report.vertices, report.min_q, report.max_q)
        if on_iteration is not None:
            on_iteration(it, mesh)
    result.mesh = mesh
    if cfg.csv:
        Path(cfg.csv).write_text(result.csv(), encoding="utf-8")
    if cfg.output:
        write_mesh(mesh, cfg.output)
    return result
