# ZStab - Exact asymptotic stability of numerical sheaf classes
# Copyright (C) 2025 Oleg Tokmakov
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""JSON workspaces: rings, classes, charges, Γ-specs and lattices by identifier.

A workspace file is one JSON object with optional sections ``rings``,
``classes``, ``charges``, ``gammas`` and ``lattices``. Rings named ``P<n>``
need no definition; they resolve to the built-in projective spaces. Every
number is an integer or a rational string such as ``"-3/2"``.
"""

import json
import logging
import re
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from zstab.errors import InvalidRingError, NonEffectiveError, ParseError, PreconditionError
from zstab.models.charge import ChargeData
from zstab.models.cohring import GradedClass, GradedRing, SheafClass, validate_ring
from zstab.models.lattice import GammaSpec, SubobjectLattice
from zstab.models.stabvec import StabilityVector
from zstab.services.presets import (
    Fixture,
    hyperplane,
    projective_space_ring,
    projective_space_todd,
    vector_preset,
)
from zstab.utils.helpers import parse_gaussian, parse_rational

logger = logging.getLogger(__name__)

_PRESET_RING = re.compile(r"^P(\d+)$")

Rational = Union[int, float, str]
ClassData = Dict[str, List[Rational]]


# Pydantic schemas
class CupSchema(BaseModel):
    """``e_p,i ∪ e_q,j`` in the basis of degree ``p + q``."""

    model_config = ConfigDict(extra="forbid")

    p: int
    q: int
    i: int
    j: int
    result: List[Rational]


class RingSchema(BaseModel):
    """Explicit ring: basis names per degree, sparse cup entries, integration."""

    model_config = ConfigDict(extra="forbid")

    dim: int
    basis: List[List[str]]
    cup: List[CupSchema] = Field(default_factory=list)
    integrate: List[Rational]
    fill_unit: bool = True


class ClassSchema(BaseModel):
    """``components`` by degree; ``codim`` defaults to the least nonzero degree."""

    model_config = ConfigDict(extra="forbid")

    ring: str
    components: ClassData
    codim: Optional[int] = None


class ChargeSchema(BaseModel):
    """``omega`` defaults to ``H`` and ``twist`` to none on built-in rings.

    ``twist`` is ``"none"``, ``"todd"``, a list ``U_0..U_n`` or a total class
    to be split by degree. ``rho`` is a preset name or a list of entries
    ``[re, im]`` with ``ρ_0`` first.
    """

    model_config = ConfigDict(extra="forbid")

    ring: str
    omega: Optional[ClassData] = None
    twist: Union[str, List[ClassData], ClassData] = "none"
    rho: Union[str, List[Union[List[Rational], Rational]]]
    normalized: bool = True


class GammaBlockSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int
    j: int
    gamma: ClassData


class GammaSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ring: str
    omega: Optional[ClassData] = None
    block_degrees: List[int]
    blocks: List[GammaBlockSchema] = Field(default_factory=list)


class NodeSchema(BaseModel):
    """A lattice node: ``class`` names a class or holds components inline; none is zero."""

    model_config = ConfigDict(extra="forbid")

    id: str
    class_: Optional[Union[str, ClassData]] = Field(default=None, alias="class")
    codim: Optional[int] = None


class LatticeSchema(BaseModel):
    """``leq`` lists pairs ``[a, b]`` with ``a <= b``; join and meet rows are ``[a, b, c]``."""

    model_config = ConfigDict(extra="forbid")

    ring: str
    nodes: List[NodeSchema]
    leq: List[Tuple[str, str]] = Field(default_factory=list)
    top: str
    bottom: str
    join: List[Tuple[str, str, str]] = Field(default_factory=list)
    meet: List[Tuple[str, str, str]] = Field(default_factory=list)
    strict: bool = True


class WorkspaceFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rings: Dict[str, RingSchema] = Field(default_factory=dict)
    classes: Dict[str, ClassSchema] = Field(default_factory=dict)
    charges: Dict[str, ChargeSchema] = Field(default_factory=dict)
    gammas: Dict[str, GammaSchema] = Field(default_factory=dict)
    lattices: Dict[str, LatticeSchema] = Field(default_factory=dict)


def _locate(text: str, needle: str) -> Optional[int]:
    """1-based line of the first occurrence of ``needle``."""
    if not needle:
        return None
    index = text.find(needle)
    if index < 0:
        return None
    return text.count("\n", 0, index) + 1


class Workspace:
    """Identifier-keyed rings, classes, charges, Γ-specs and lattices."""

    def __init__(self, check_rings: bool = True):
        self.check_rings = check_rings
        self.rings: Dict[str, GradedRing] = {}
        self.classes: Dict[str, SheafClass] = {}
        self.charges: Dict[str, ChargeData] = {}
        self.gammas: Dict[str, GammaSpec] = {}
        self.lattices: Dict[str, SubobjectLattice] = {}
        self._text = ""

    # -- lookup ------------------------------------------------------------------

    def ring(self, ring_id: str) -> GradedRing:
        if ring_id in self.rings:
            return self.rings[ring_id]
        match = _PRESET_RING.match(ring_id)
        if match and int(match.group(1)) >= 1:
            ring = projective_space_ring(int(match.group(1)))
            self.rings[ring_id] = ring
            return ring
        raise PreconditionError(f"unknown ring {ring_id!r}")

    def _lookup(self, kind: str, table: Mapping, key: str):
        try:
            return table[key]
        except KeyError:
            known = ", ".join(sorted(table)) or "none"
            raise PreconditionError(f"unknown {kind} {key!r} (known: {known})") from None

    def sheaf(self, class_id: str) -> SheafClass:
        return self._lookup("class", self.classes, class_id)

    def charge(self, charge_id: str) -> ChargeData:
        return self._lookup("charge", self.charges, charge_id)

    def gamma(self, gamma_id: str) -> GammaSpec:
        return self._lookup("Γ-spec", self.gammas, gamma_id)

    def lattice(self, lattice_id: str) -> SubobjectLattice:
        return self._lookup("lattice", self.lattices, lattice_id)

    # -- loading -----------------------------------------------------------------

    def add_fixture(self, fixture: Fixture) -> None:
        """Register a compiled-in fixture under its own identifiers."""
        self._add("ring", self.rings, fixture.ring.name, fixture.ring)
        for key, sheaf in fixture.classes.items():
            self._add("class", self.classes, key, sheaf)
        for key, charge in fixture.charges.items():
            self._add("charge", self.charges, key, charge)
        for key, lattice in fixture.lattices.items():
            self._add("lattice", self.lattices, key, lattice)

    def load_file(self, path: Union[str, Path]) -> None:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
        self.load_text(text, source=str(path))

    def load_text(self, text: str, source: str = "<input>") -> None:
        self._text = text
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"{source}: {exc.msg}", line=exc.lineno, position=exc.colno
            ) from exc
        try:
            data = WorkspaceFile.model_validate(raw)
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(part) for part in first["loc"])
            keys = [part for part in first["loc"] if isinstance(part, str)]
            line = _locate(text, json.dumps(keys[-1])) if keys else None
            raise ParseError(f"{source}: {where}: {first['msg']}", line=line) from exc
        self._build(data)
        logger.info(
            "Loaded %s: %d rings, %d classes, %d charges, %d lattices",
            source,
            len(data.rings),
            len(data.classes),
            len(data.charges),
            len(data.lattices),
        )

    def _add(self, kind: str, table: Dict, key: str, value) -> None:
        if key in table and table[key] is not value:
            raise ParseError(
                f"duplicate {kind} identifier",
                token=key,
                line=_locate(self._text, json.dumps(key)),
            )
        table[key] = value

    def _rational(self, token):
        line = _locate(self._text, token if isinstance(token, str) else str(token))
        return parse_rational(token, line=line)

    def _class(self, ring: GradedRing, data: ClassData) -> GradedClass:
        components = {}
        for degree, values in data.items():
            try:
                key = int(degree)
            except ValueError:
                raise ParseError("class degrees must be integers", token=degree) from None
            components[key] = [self._rational(v) for v in values]
        return ring.make_class(components)

    def _omega(self, ring: GradedRing, data: Optional[ClassData], ring_id: str) -> GradedClass:
        if data is not None:
            return self._class(ring, data)
        if _PRESET_RING.match(ring_id):
            return hyperplane(ring)
        raise PreconditionError(f"charges on ring {ring_id!r} need an explicit omega")

    def _build(self, data: WorkspaceFile) -> None:
        for key, spec in data.rings.items():
            ring = GradedRing.build(
                spec.dim,
                [len(names) for names in spec.basis],
                [
                    (c.p, c.q, c.i, c.j, [self._rational(v) for v in c.result])
                    for c in spec.cup
                ],
                [self._rational(v) for v in spec.integrate],
                basis_names=spec.basis,
                name=key,
                fill_unit=spec.fill_unit,
            )
            if self.check_rings:
                violations = validate_ring(ring)
                if violations:
                    raise InvalidRingError(
                        f"ring {key!r} violates {violations[0].law}: {violations[0].detail}",
                        violations,
                    )
            self._add("ring", self.rings, key, ring)

        for key, spec in data.classes.items():
            chern = self._class(self.ring(spec.ring), spec.components)
            self._add("class", self.classes, key, _declared(chern, spec.codim, key))

        for key, spec in data.charges.items():
            self._add("charge", self.charges, key, self._charge(key, spec))

        for key, spec in data.gammas.items():
            ring = self.ring(spec.ring)
            blocks = {(b.k, b.j): self._class(ring, b.gamma) for b in spec.blocks}
            gamma = GammaSpec(
                ring, self._omega(ring, spec.omega, spec.ring), tuple(spec.block_degrees), blocks
            )
            self._add("Γ-spec", self.gammas, key, gamma)

        for key, spec in data.lattices.items():
            self._add("lattice", self.lattices, key, self._lattice(key, spec))

    def _rho(self, spec: ChargeSchema, n: int) -> StabilityVector:
        if isinstance(spec.rho, str):
            return vector_preset(spec.rho, n)
        entries = [parse_gaussian(entry, _locate(self._text, "rho")) for entry in spec.rho]
        return StabilityVector(tuple(entries), normalized=spec.normalized)

    def _charge(self, key: str, spec: ChargeSchema) -> ChargeData:
        ring = self.ring(spec.ring)
        omega = self._omega(ring, spec.omega, spec.ring)
        rho = self._rho(spec, ring.dim)
        twist = spec.twist
        if isinstance(twist, str):
            if twist == "none":
                return ChargeData.untwisted(ring, omega, rho, key)
            if twist == "todd":
                match = _PRESET_RING.match(spec.ring)
                if not match:
                    raise PreconditionError(
                        f"the todd twist is only built in for P<n>, not {spec.ring!r}"
                    )
                return ChargeData.with_total_twist(
                    ring, omega, projective_space_todd(int(match.group(1))), rho, key
                )
            raise ParseError("twist must be 'none', 'todd', a list or a class", token=twist)
        if isinstance(twist, list):
            return ChargeData(ring, omega, tuple(self._class(ring, u) for u in twist), rho, key)
        return ChargeData.with_total_twist(ring, omega, self._class(ring, twist), rho, key)

    def _lattice(self, key: str, spec: LatticeSchema) -> SubobjectLattice:
        ring = self.ring(spec.ring)
        classes: Dict[str, GradedClass] = {}
        for node in spec.nodes:
            if node.id in classes:
                raise ParseError(
                    f"duplicate node in lattice {key!r}",
                    token=node.id,
                    line=_locate(self._text, json.dumps(node.id)),
                )
            value = node.class_
            if value is None:
                chern = ring.zero()
            elif isinstance(value, str):
                sheaf = self.sheaf(value)
                if sheaf.ring is not ring:
                    raise PreconditionError(f"lattice {key!r} node {node.id!r} is on another ring")
                chern = sheaf.chern
            else:
                chern = self._class(ring, value)
            if node.codim is not None:
                _declared(chern, node.codim, node.id)
            classes[node.id] = chern
        return SubobjectLattice(
            classes,
            spec.leq,
            top=spec.top,
            bottom=spec.bottom,
            join=_table(spec.join),
            meet=_table(spec.meet),
            name=key,
            strict=spec.strict,
        )


def _declared(chern: GradedClass, codim: Optional[int], label: str) -> SheafClass:
    """Sheaf class with a declared codimension, which must match the vanishing pattern."""
    if codim is None:
        return SheafClass.from_chern(chern, label)
    sheaf = SheafClass(chern, codim, label)
    if chern.degree_is_zero(codim):
        raise NonEffectiveError(
            f"class {label!r} has ch_{codim} = 0 at its declared codimension {codim}"
        )
    return sheaf


def _table(rows: Sequence[Tuple[str, str, str]]) -> Optional[Dict[Tuple[str, str], str]]:
    if not rows:
        return None
    table = {}
    for a, b, c in rows:
        table[(a, b)] = c
        table[(b, a)] = c
    return table


def load_workspace(paths: Sequence[Union[str, Path]] = (), check_rings: bool = True) -> Workspace:
    """Load and merge workspace files in order."""
    workspace = Workspace(check_rings=check_rings)
    for path in paths:
        workspace.load_file(path)
    return workspace


# -- export -----------------------------------------------------------------------


def _class_data(chern: GradedClass) -> Dict[str, List[str]]:
    return {
        str(degree): [str(v) for v in vector]
        for degree, vector in enumerate(chern.components)
        if any(v != 0 for v in vector)
    }


def fixture_to_json(fixture: Fixture) -> dict:
    """Workspace JSON for a fixture on a built-in ``P<n>`` ring."""
    ring_id = fixture.ring.name
    if not _PRESET_RING.match(ring_id):
        raise PreconditionError(
            f"only fixtures on built-in rings can be exported, not {ring_id!r}"
        )
    charges = {
        key: {
            "ring": ring_id,
            "omega": _class_data(cd.omega),
            "twist": [_class_data(u) for u in cd.twist],
            "rho": [[str(v.re), str(v.im)] for v in cd.rho],
            "normalized": cd.rho.normalized,
        }
        for key, cd in fixture.charges.items()
    }
    classes = {
        key: {"ring": ring_id, "components": _class_data(sheaf.chern), "codim": sheaf.codim}
        for key, sheaf in fixture.classes.items()
    }
    lattices = {key: _lattice_data(ring_id, lattice) for key, lattice in fixture.lattices.items()}
    return {"classes": classes, "charges": charges, "lattices": lattices}


def _lattice_data(ring_id: str, lattice: SubobjectLattice) -> dict:
    nodes = []
    for node in lattice.ids:
        if node == lattice.bottom:
            nodes.append({"id": node})
            continue
        sheaf = lattice.sheaf(node)
        nodes.append({"id": node, "class": _class_data(sheaf.chern), "codim": sheaf.codim})
    return {
        "ring": ring_id,
        "nodes": nodes,
        "leq": [[a, b] for a in lattice.ids for b in lattice.upper_covers[a]],
        "top": lattice.top,
        "bottom": lattice.bottom,
        "strict": lattice.strict,
    }
