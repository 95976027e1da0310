"""JSON input files: groups, fibre specs, scan specs and the bundled corpus.

Relative paths inside a file are resolved against that file's directory.
A reference that is not an existing path is looked up by name in the
bundled ``data/`` directory, so ``radicals`` finds ``data/scans/radicals.json``
when a scan spec is expected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import InputError
from .etale import EtaleAlgebraModel, FibreModel
from .perm import DEFAULT_CAP, FiniteAction, Permutation, PermutationGroup, SubgroupHandle, coset_action
from .polys import IntPolynomial
from .scan import DEFAULT_BOUND, DEFAULT_TOLERANCE, ScanSpec

DATA_DIR = Path(__file__).parent / "data"
_KIND_DIRS = {"group": "groups", "fibre": "fibres", "scan": "scans"}


def resolve(ref: str | Path, base: Path | None = None, kind: str | None = None) -> Path:
    path = Path(ref)
    candidates = [path] if path.is_absolute() else []
    if not path.is_absolute():
        if base is not None:
            candidates.append(base / path)
        candidates.append(path)
        if kind in _KIND_DIRS:
            sub = DATA_DIR / _KIND_DIRS[kind]
            candidates += [sub / path, sub / f"{path}.json"]
    for c in candidates:
        if c.is_file():
            return c
    raise InputError(f"cannot find {kind or 'input'} file {str(ref)!r}")


def read_json(path: Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


@dataclass
class GroupData:
    group: PermutationGroup
    name: str | None = None
    subgroups: dict[str, SubgroupHandle] = field(default_factory=dict)

    def subgroup(self, ref) -> SubgroupHandle:
        if isinstance(ref, str):
            if ref in self.subgroups:
                return self.subgroups[ref]
            if ref == "trivial":
                return self.group.trivial()
            if ref == "whole":
                return self.group.whole()
            raise InputError(f"unknown subgroup {ref!r}")
        if isinstance(ref, list):
            return self.group.subgroup(_perms(ref, self.group.degree))
        raise InputError(f"bad subgroup reference {ref!r}")


def _perms(items, degree: int) -> list[Permutation]:
    if not isinstance(items, list):
        raise InputError("expected a list of permutations")
    return [Permutation.parse(x, degree) for x in items]


def group_from_dict(obj: dict, cap: int = DEFAULT_CAP) -> GroupData:
    if not isinstance(obj, dict) or "degree" not in obj:
        raise InputError("group needs a 'degree' and 'generators'")
    degree = obj["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise InputError(f"bad degree {degree!r}")
    group = PermutationGroup(_perms(obj.get("generators", []), degree), degree=degree, cap=cap)
    data = GroupData(group, obj.get("name"))
    for name, gens in obj.get("subgroups", {}).items():
        data.subgroups[name] = group.subgroup(_perms(gens, degree))
    return data


def load_group(ref: str | Path | dict, base: Path | None = None, cap: int = DEFAULT_CAP) -> GroupData:
    if isinstance(ref, dict):
        return group_from_dict(ref, cap)
    return group_from_dict(read_json(resolve(ref, base, "group")), cap)


def _factor(spec: dict, data: GroupData) -> FiniteAction:
    kind = spec.get("action")
    if kind == "coset":
        return coset_action(data.group, data.subgroup(spec.get("subgroup")))
    if kind == "explicit":
        table = spec.get("table")
        points = spec.get("points")
        if not isinstance(table, list):
            raise InputError("explicit action needs a 'table' of generator images")
        if points is None:
            if not table or isinstance(table[0], str):
                raise InputError("explicit action with cycle notation needs 'points'")
            points = len(table[0])
        images = [Permutation.parse(x, points) for x in table]
        return FiniteAction.from_generator_images(data.group, images, points=points)
    raise InputError(f"unknown factor action {kind!r}")


def fibre_from_dict(obj: dict, base: Path | None = None) -> FibreModel:
    if not isinstance(obj, dict) or "group" not in obj:
        raise InputError("fibre spec needs 'group' and 'components'")
    data = load_group(obj["group"], base)
    components = {}
    for comp in obj.get("components", []):
        m = comp.get("multiplicity", 1)
        if m in components:
            raise InputError(f"duplicate multiplicity {m}")
        factors = [_factor(f, data) for f in comp.get("factors", [])]
        components[m] = EtaleAlgebraModel(data.group, tuple(factors))
    return FibreModel(data.group, components)


def load_fibre(ref: str | Path | dict, base: Path | None = None) -> FibreModel:
    if isinstance(ref, dict):
        return fibre_from_dict(ref, base)
    path = resolve(ref, base, "fibre")
    return fibre_from_dict(read_json(path), path.parent)


def scan_spec_from_dict(obj: dict, base: Path | None = None, *, r: int | None = None,
                        bound: int | None = None, tolerance: float | None = None,
                        model: str | Path | None = None) -> ScanSpec:
    if not isinstance(obj, dict) or "components" not in obj:
        raise InputError("scan spec needs 'components'")
    comps = []
    for comp in obj["components"]:
        polys = [IntPolynomial.parse(f) for f in comp.get("polynomials", [])]
        comps.append((comp.get("multiplicity", 1), tuple(polys)))
    fibre = None
    if model is not None:
        fibre = load_fibre(model)
    elif obj.get("model") is not None:
        fibre = load_fibre(obj["model"], base)
    return ScanSpec(
        components=tuple(comps),
        r=r if r is not None else obj.get("r", 1),
        bound=bound if bound is not None else obj.get("primes_up_to", DEFAULT_BOUND),
        model=fibre,
        tolerance=tolerance if tolerance is not None else obj.get("tolerance", DEFAULT_TOLERANCE),
    )


def load_scan_spec(ref: str | Path, **overrides) -> ScanSpec:
    path = resolve(ref, None, "scan")
    return scan_spec_from_dict(read_json(path), path.parent, **overrides)


def load_corpus(max_order: int | None = None) -> list[GroupData]:
    """The bundled corpus of small groups, optionally limited by order."""
    entries = read_json(DATA_DIR / "corpus.json")["groups"]
    return [group_from_dict(e) for e in entries
            if max_order is None or e["order"] <= max_order]
