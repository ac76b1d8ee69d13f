"""Instance files and the standard small instances used throughout the tests and demos.

HNN file:     {"group": <group>, "h1": [...], "h2": [...], "phi": [[a, b], ...]}
Amalgam file: {"g1": <group>, "g2": <group>, "h_in_g1": [...], "h_in_g2": [...], "h_iso": [[a, b], ...]}

A ``<group>`` is an inline group description or a path to a group file,
resolved relative to the instance file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .amalgam import AmalInstance
from .errors import FreewidthError, InstanceFormatError
from .groups import FiniteGroup, cyclic, direct_product, iso_check, load_group, subgroup_check, symmetric
from .hnn import HnnInstance


def _group(desc, root: Path | None) -> FiniteGroup:
    if isinstance(desc, str):
        path = Path(desc) if root is None else root / desc
        try:
            desc = json.loads(path.read_text())
        except OSError as exc:
            raise InstanceFormatError(f"cannot read group file {path}: {exc}") from None
    if not isinstance(desc, Mapping):
        raise InstanceFormatError("group must be an inline object or a file path")
    return load_group(desc)


def instance_from_dict(desc: Mapping, root: Path | None = None, name: str = ""):
    try:
        if "group" in desc:
            g = _group(desc["group"], root)
            h1 = subgroup_check(g, desc["h1"])
            h2 = subgroup_check(g, desc["h2"])
            phi = iso_check(desc["phi"], h1, h2)
            return HnnInstance(g, h1, h2, phi, name=desc.get("name", name))
        if "g1" in desc:
            g1 = _group(desc["g1"], root)
            g2 = _group(desc["g2"], root)
            h1 = subgroup_check(g1, desc["h_in_g1"])
            h2 = subgroup_check(g2, desc["h_in_g2"])
            iso = iso_check(desc["h_iso"], h1, h2)
            return AmalInstance(g1, g2, h1, h2, iso, name=desc.get("name", name))
    except FreewidthError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"malformed instance description: {exc!r}") from None
    raise InstanceFormatError("instance needs either a 'group' key (HNN) or 'g1'/'g2' keys (amalgam)")


def load_instance(path: str | Path):
    path = Path(path)
    try:
        desc = json.loads(path.read_text())
    except OSError as exc:
        raise InstanceFormatError(f"cannot read instance file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path} is not valid JSON: {exc}") from None
    return instance_from_dict(desc, root=path.parent, name=path.stem)


def instance_to_dict(inst) -> dict:
    if isinstance(inst, HnnInstance):
        return {
            "name": inst.name,
            "group": inst.base.to_json(),
            "h1": list(inst.h1.members),
            "h2": list(inst.h2.members),
            "phi": sorted([a, b] for a, b in inst.phi.mapping.items()),
        }
    return {
        "name": inst.name,
        "g1": inst.g1.to_json(),
        "g2": inst.g2.to_json(),
        "h_in_g1": list(inst.subgroups[1].members),
        "h_in_g2": list(inst.subgroups[2].members),
        "h_iso": sorted([a, b] for a, b in inst.iso.mapping.items()),
    }


# standard instances ---------------------------------------------------------

def klein_four() -> FiniteGroup:
    g = direct_product(cyclic(2), cyclic(2))
    g.name = "V4"
    return g


def z4_hnn() -> HnnInstance:
    """Base Z4, H1 = H2 = {0, 2}, phi the identity."""
    return instance_from_dict({"group": cyclic(4).to_json(), "h1": [0, 2], "h2": [0, 2],
                               "phi": [[0, 0], [2, 2]]}, name="z4hnn")


def s3_hnn() -> HnnInstance:
    """Base S3 with phi carrying <(1 2)> onto <(0 1)>: a non-abelian HNN extension."""
    return instance_from_dict({"group": symmetric(3).to_json(), "h1": [0, 1], "h2": [0, 2],
                               "phi": [[0, 0], [1, 2]]}, name="s3hnn")


def _amal(g1: FiniteGroup, g2: FiniteGroup, h1, h2, pairs, name: str) -> AmalInstance:
    return instance_from_dict({"g1": g1.to_json(), "g2": g2.to_json(), "h_in_g1": h1, "h_in_g2": h2,
                               "h_iso": pairs}, name=name)


def z5_z2() -> AmalInstance:
    return _amal(cyclic(5), cyclic(2), [0], [0], [[0, 0]], "z5z2")


def z2_z2() -> AmalInstance:
    """Infinite dihedral group as Z2 * Z2."""
    return _amal(cyclic(2), cyclic(2), [0], [0], [[0, 0]], "z2z2")


def s3_v4() -> AmalInstance:
    """S3 and Z2 x Z2 over Z2; H = <(1 2)> is not normal in S3."""
    return _amal(symmetric(3), klein_four(), [0, 1], [0, 1], [[0, 0], [1, 1]], "s3v4")


def z8_z4() -> AmalInstance:
    """Z8 and Z4 over Z2 (H = {0, 4} and {0, 2}); H is normal in both."""
    return _amal(cyclic(8), cyclic(4), [0, 4], [0, 2], [[0, 0], [4, 2]], "z8z4")


def z4_v4() -> AmalInstance:
    """Z4 and Z2 x Z2 over Z2: both indices equal 2."""
    return _amal(cyclic(4), klein_four(), [0, 2], [0, 1], [[0, 0], [2, 1]], "z4v4")


STANDARD = {
    "z4hnn": z4_hnn,
    "s3hnn": s3_hnn,
    "z5z2": z5_z2,
    "z2z2": z2_z2,
    "s3v4": s3_v4,
    "z8z4": z8_z4,
    "z4v4": z4_v4,
}
