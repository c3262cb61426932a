"""Stable translation quivers with explicit finite windows.

Three concrete shapes are provided, all represented intensionally: the
infinite quivers never materialize, and every enumeration goes through
an explicit window radius.

* ``build_tube(n)``: the stable Auslander-Reiten quiver of k[t]/(t^n),
  vertices J_1..J_{n-1}, with the translate fixing every vertex.
* ``build_za_inf(radius)``: the ZA-infinity quiver, levels >= 1 with the
  rim at level 1, translate moving (level, pos) to (level, pos+1).
* ``build_dihedral_family(radius)``: two parity copies of a
  ZA-infinity-infinity component.  Vertices carry coordinates (i, j)
  with i = j (mod 2); ``gamma`` arrows lower the second coordinate by 2
  and ``gamma_prime`` arrows lower the first.  The syzygy-like shift
  adds (1, 1) and swaps parity components, so degree bookkeeping that
  crosses components stays representable.

Every quiver exposes ``tau``, ``tau_inv``, ``sigma`` (inverse shift on
vertices), ``sigma_pow``, ``mesh``, ``arrows_in``/``arrows_out`` and
``window(radius)``.  The Calabi-Yau degree is -1 for all three shapes:
``sigma(tau(v))`` is the Serre image of ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    InvalidVertexError,
    QuiverKindError,
    UnsupportedParameterError,
)

TUBE = "tube"
DIHEDRAL_EVEN = "dihedral-even"
DIHEDRAL_ODD = "dihedral-odd"
ZA_INF = "za-inf"


@dataclass(frozen=True, order=True)
class Vertex:
    """A quiver vertex: component id plus integer coordinates."""

    component: str
    coords: tuple[int, ...]

    def __post_init__(self):
        # Vertices end up as dict keys in every hot loop; caching the
        # hash beats the generated recompute-on-every-call version.
        object.__setattr__(self, "_hash", hash((self.component, self.coords)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if self.component == TUBE:
            return f"J{self.coords[0]}"
        return ",".join(str(c) for c in self.coords)


@dataclass(frozen=True, order=True)
class Arrow:
    source: Vertex
    target: Vertex
    label: str

    def __str__(self) -> str:
        return f"{self.source} -[{self.label}]-> {self.target}"


class Mesh(NamedTuple):
    """The configuration start -> middles -> end with start = tau(end)."""

    start: Vertex
    middles: tuple[Vertex, ...]
    end: Vertex


class TranslationQuiver:
    """Common behavior of the three stable translation quiver shapes."""

    kind: str
    cy_degree: int = -1

    # -- soul of the shape; subclasses implement these ------------------
    def validate(self, v: Vertex) -> Vertex:
        raise NotImplementedError

    def tau(self, v: Vertex) -> Vertex:
        raise NotImplementedError

    def tau_inv(self, v: Vertex) -> Vertex:
        raise NotImplementedError

    def sigma(self, v: Vertex) -> Vertex:
        raise NotImplementedError

    def sigma_pow(self, v: Vertex, r: int) -> Vertex:
        raise NotImplementedError

    def arrows_out(self, v: Vertex) -> tuple[Arrow, ...]:
        raise NotImplementedError

    def arrows_in(self, v: Vertex) -> tuple[Arrow, ...]:
        raise NotImplementedError

    def window(self, radius: int) -> list[Vertex]:
        """All vertices of the finite working window, sorted."""
        raise NotImplementedError

    def in_window(self, v: Vertex, radius: int) -> bool:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    # -- derived -------------------------------------------------------
    def serre(self, v: Vertex) -> Vertex:
        """Serre image sigma(tau(v)); the codomain of almost-vanishing classes."""
        return self.sigma(self.tau(v))

    def mesh(self, v: Vertex) -> Mesh:
        """The mesh ending at v.  Middles are the sources of arrows into v."""
        self.validate(v)
        middles = tuple(sorted(a.source for a in self.arrows_in(v)))
        return Mesh(self.tau(v), middles, v)

    def arrow_between(self, s: Vertex, t: Vertex) -> Arrow | None:
        for a in self.arrows_out(s):
            if a.target == t:
                return a
        return None

    def distance(self, u: Vertex, m: Vertex) -> int | None:
        """Length of the shortest directed path u -> m, or None if none exists.

        On the dihedral and ZA-infinity shapes all directed paths between
        a fixed pair share one length, so this is the forced grade there.
        """
        raise NotImplementedError

    @property
    def grade_forced(self) -> bool:
        """True when all paths between any fixed vertex pair share one length."""
        return True


class Tube(TranslationQuiver):
    """Stable AR quiver of k[t]/(t^n): vertices J_1..J_{n-1}, tau = id."""

    kind = "tube"

    def __init__(self, n: int):
        if n < 3:
            raise UnsupportedParameterError(
                f"tube requires n >= 3 (n={n} leaves no mesh with a middle term)"
            )
        self.n = n

    def vertex(self, i: int) -> Vertex:
        return self.validate(Vertex(TUBE, (i,)))

    def validate(self, v: Vertex) -> Vertex:
        if v.component != TUBE or len(v.coords) != 1:
            raise InvalidVertexError(f"not a tube vertex: {v}")
        i = v.coords[0]
        if not 1 <= i <= self.n - 1:
            raise InvalidVertexError(
                f"tube index out of range: {v} (valid: J1..J{self.n - 1})"
            )
        return v

    def tau(self, v: Vertex) -> Vertex:
        return self.validate(v)

    def tau_inv(self, v: Vertex) -> Vertex:
        return self.validate(v)

    def sigma(self, v: Vertex) -> Vertex:
        self.validate(v)
        return Vertex(TUBE, (self.n - v.coords[0],))

    def sigma_pow(self, v: Vertex, r: int) -> Vertex:
        self.validate(v)
        return v if r % 2 == 0 else self.sigma(v)

    def arrows_out(self, v: Vertex) -> tuple[Arrow, ...]:
        self.validate(v)
        i = v.coords[0]
        arrows = []
        if i - 1 >= 1:
            arrows.append(Arrow(v, Vertex(TUBE, (i - 1,)), "down"))
        if i + 1 <= self.n - 1:
            arrows.append(Arrow(v, Vertex(TUBE, (i + 1,)), "up"))
        return tuple(arrows)

    def arrows_in(self, v: Vertex) -> tuple[Arrow, ...]:
        self.validate(v)
        i = v.coords[0]
        arrows = []
        if i - 1 >= 1:
            arrows.append(Arrow(Vertex(TUBE, (i - 1,)), v, "up"))
        if i + 1 <= self.n - 1:
            arrows.append(Arrow(Vertex(TUBE, (i + 1,)), v, "down"))
        return tuple(arrows)

    def window(self, radius: int) -> list[Vertex]:
        # The tube is already finite; the radius is irrelevant.
        return [Vertex(TUBE, (i,)) for i in range(1, self.n)]

    def in_window(self, v: Vertex, radius: int) -> bool:
        self.validate(v)
        return True

    def distance(self, u: Vertex, m: Vertex) -> int | None:
        self.validate(u)
        self.validate(m)
        return abs(u.coords[0] - m.coords[0])

    @property
    def grade_forced(self) -> bool:
        # J_i -> J_{i+1} -> J_i and the identity path have different lengths.
        return False

    def describe(self) -> dict:
        return {"kind": "tube", "n": self.n}

    def __repr__(self) -> str:
        return f"Tube(n={self.n})"


class DihedralFamily(TranslationQuiver):
    """Two parity components of a ZA-infinity-infinity translation quiver.

    Vertex (i, j) requires i = j (mod 2); even coordinates form one
    component, odd the other.  tau adds (2, 2), sigma subtracts (1, 1)
    (landing in the opposite component), and every mesh has exactly two
    middle terms, so sigma_pow(v, -2) = tau(v).
    """

    kind = "dihedral"

    def __init__(self, window_radius: int):
        if window_radius < 1:
            raise UnsupportedParameterError("window_radius must be >= 1")
        self.window_radius = window_radius

    @staticmethod
    def _component(i: int, j: int) -> str:
        return DIHEDRAL_EVEN if i % 2 == 0 else DIHEDRAL_ODD

    def vertex(self, i: int, j: int) -> Vertex:
        if (i - j) % 2 != 0:
            raise InvalidVertexError(
                f"coordinate parity violation: ({i},{j}) needs i = j (mod 2)"
            )
        return Vertex(self._component(i, j), (i, j))

    def validate(self, v: Vertex) -> Vertex:
        if v.component not in (DIHEDRAL_EVEN, DIHEDRAL_ODD) or len(v.coords) != 2:
            raise InvalidVertexError(f"not a dihedral-family vertex: {v}")
        i, j = v.coords
        if (i - j) % 2 != 0:
            raise InvalidVertexError(f"coordinate parity violation: {v}")
        if self._component(i, j) != v.component:
            raise InvalidVertexError(f"component tag does not match parity: {v}")
        return v

    def _shift(self, v: Vertex, di: int, dj: int) -> Vertex:
        i, j = v.coords
        return self.vertex(i + di, j + dj)

    def tau(self, v: Vertex) -> Vertex:
        self.validate(v)
        return self._shift(v, 2, 2)

    def tau_inv(self, v: Vertex) -> Vertex:
        self.validate(v)
        return self._shift(v, -2, -2)

    def sigma(self, v: Vertex) -> Vertex:
        self.validate(v)
        return self._shift(v, -1, -1)

    def sigma_pow(self, v: Vertex, r: int) -> Vertex:
        self.validate(v)
        return self._shift(v, -r, -r)

    def tensor_translate(self, v: Vertex, offset: tuple[int, int]) -> Vertex:
        """Relabel v by coordinate addition (the tensor rule for labels)."""
        self.validate(v)
        s, t = offset
        if (s - t) % 2 != 0:
            raise InvalidVertexError(
                f"translation offset must preserve parity, got {offset}"
            )
        return self._shift(v, s, t)

    def arrows_out(self, v: Vertex) -> tuple[Arrow, ...]:
        self.validate(v)
        i, j = v.coords
        return (
            Arrow(v, self.vertex(i, j - 2), "gamma"),
            Arrow(v, self.vertex(i - 2, j), "gamma_prime"),
        )

    def arrows_in(self, v: Vertex) -> tuple[Arrow, ...]:
        self.validate(v)
        i, j = v.coords
        return (
            Arrow(self.vertex(i, j + 2), v, "gamma"),
            Arrow(self.vertex(i + 2, j), v, "gamma_prime"),
        )

    def window(self, radius: int) -> list[Vertex]:
        out = []
        bound = 2 * radius
        for i in range(-bound, bound + 1):
            for j in range(-bound, bound + 1):
                if (i - j) % 2 == 0:
                    out.append(self.vertex(i, j))
        out.sort()
        return out

    def in_window(self, v: Vertex, radius: int) -> bool:
        self.validate(v)
        i, j = v.coords
        return max(abs(i), abs(j)) <= 2 * radius

    def distance(self, u: Vertex, m: Vertex) -> int | None:
        self.validate(u)
        self.validate(m)
        if u.component != m.component:
            return None
        di = u.coords[0] - m.coords[0]
        dj = u.coords[1] - m.coords[1]
        if di < 0 or dj < 0 or di % 2 or dj % 2:
            return None
        return (di + dj) // 2

    def describe(self) -> dict:
        return {"kind": "dihedral", "window_radius": self.window_radius}

    def __repr__(self) -> str:
        return f"DihedralFamily(window_radius={self.window_radius})"


class ZAInf(TranslationQuiver):
    """ZA-infinity: vertices (level, pos) with level >= 1, rim at level 1.

    Arrows: ``down`` drops the level, ``up`` raises it while moving one
    step against the translation.  Rim meshes have a single middle term.
    The odd shift power is not representable inside this component, so
    ``sigma`` raises; ``sigma_pow`` accepts even exponents only, with
    sigma_pow(v, 2) = tau_inv(v).
    """

    kind = "za-inf"

    def __init__(self, window_radius: int):
        if window_radius < 1:
            raise UnsupportedParameterError("window_radius must be >= 1")
        self.window_radius = window_radius

    def vertex(self, level: int, pos: int) -> Vertex:
        return self.validate(Vertex(ZA_INF, (level, pos)))

    def validate(self, v: Vertex) -> Vertex:
        if v.component != ZA_INF or len(v.coords) != 2:
            raise InvalidVertexError(f"not a ZA-infinity vertex: {v}")
        if v.coords[0] < 1:
            raise InvalidVertexError(f"level must be >= 1: {v}")
        return v

    def tau(self, v: Vertex) -> Vertex:
        self.validate(v)
        level, pos = v.coords
        return Vertex(ZA_INF, (level, pos + 1))

    def tau_inv(self, v: Vertex) -> Vertex:
        self.validate(v)
        level, pos = v.coords
        return Vertex(ZA_INF, (level, pos - 1))

    def sigma(self, v: Vertex) -> Vertex:
        raise QuiverKindError(
            "the odd shift power leaves the modeled ZA-infinity component; "
            "only even powers are defined (sigma_pow with even exponent)"
        )

    def sigma_pow(self, v: Vertex, r: int) -> Vertex:
        self.validate(v)
        if r % 2 != 0:
            raise QuiverKindError(
                f"odd shift power {r} is not representable on the ZA-infinity component"
            )
        level, pos = v.coords
        return Vertex(ZA_INF, (level, pos - r // 2))

    def arrows_out(self, v: Vertex) -> tuple[Arrow, ...]:
        self.validate(v)
        level, pos = v.coords
        arrows = []
        if level >= 2:
            arrows.append(Arrow(v, Vertex(ZA_INF, (level - 1, pos)), "down"))
        arrows.append(Arrow(v, Vertex(ZA_INF, (level + 1, pos - 1)), "up"))
        return tuple(arrows)

    def arrows_in(self, v: Vertex) -> tuple[Arrow, ...]:
        self.validate(v)
        level, pos = v.coords
        arrows = [Arrow(Vertex(ZA_INF, (level + 1, pos)), v, "down")]
        if level >= 2:
            arrows.append(Arrow(Vertex(ZA_INF, (level - 1, pos + 1)), v, "up"))
        return tuple(arrows)

    def window(self, radius: int) -> list[Vertex]:
        out = []
        for level in range(1, radius + 2):
            for pos in range(-radius, radius + 1):
                out.append(Vertex(ZA_INF, (level, pos)))
        out.sort()
        return out

    def in_window(self, v: Vertex, radius: int) -> bool:
        self.validate(v)
        level, pos = v.coords
        return level <= radius + 1 and abs(pos) <= radius

    def distance(self, u: Vertex, m: Vertex) -> int | None:
        self.validate(u)
        self.validate(m)
        ups = u.coords[1] - m.coords[1]
        downs = u.coords[0] - m.coords[0] + ups
        if ups < 0 or downs < 0:
            return None
        return ups + downs

    def describe(self) -> dict:
        return {"kind": "za-inf", "window_radius": self.window_radius}

    def __repr__(self) -> str:
        return f"ZAInf(window_radius={self.window_radius})"


def build_tube(n: int) -> Tube:
    """Stable AR quiver of k[t]/(t^n); requires n >= 3."""
    return Tube(n)


def build_dihedral_family(window_radius: int) -> DihedralFamily:
    """Both parity components of the dihedral ZA-infinity-infinity family."""
    return DihedralFamily(window_radius)


def build_za_inf(window_radius: int) -> ZAInf:
    """ZA-infinity component with rim at level 1."""
    return ZAInf(window_radius)
