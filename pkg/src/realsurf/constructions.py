"""Construction certificates: replayable transcripts of the embedding
constructions, engines that emit them, and an independent verifier.

A ``Certificate`` is an ambient recipe (catalog name plus blow-up
count), an ordered list of steps, and the claimed invariants of the
final surface.  Steps build surfaces into a registry; ``Resolve`` and
``ConnectedSum`` consume earlier entries (by index, in creation order)
and append their result.  A well-formed transcript leaves exactly one
unconsumed surface, and replaying it through :mod:`realsurf.embedded`
must reproduce every claimed value.

The four engines:

* ``totally_real_oriented_in_k3(g)``: resolve a sphere in the section
  class s with g fiber tori into a genus-g surface in class s + g f;
  both signed counts vanish, so the surface can be made totally real.
* ``totally_real_nonorientable(chi, ambient_kind)``: chart embeddings
  with a fixed dispatch on chi mod 4, corrected by connected sums with
  a totally real sphere, an exceptional sphere, or a section until
  I = 0.  Plain K3 only covers chi = 0, 2 (mod 4); the odd classes
  need the blow-up or E(3).
* ``stein_disc_bundle(g, n)``: for n <= 2g - 2, the resolved section-
  plus-fibers surface in E(2g - n) has [S].[S] = n, I+ = 2 - m <= 0 and
  I- = 0, so its Stein neighborhood basis consists of copies of the
  disc bundle D(g, n).
* ``stein_disc_bundle_nonorientable(chi, n, strategy)``: for
  n + chi <= 0, either sum with m exceptional spheres over CP^2
  (each lowers the normal Euler number by 1) or with one section of
  E(m) (which lowers it by m), landing the chart surface on normal
  Euler number n with I = chi + n <= 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ambient import AmbientSurface, Check, by_name
from .embedded import (
    SurfaceClass,
    connected_sum,
    i_total,
    invariant_report,
    massey_set,
    resolve_union,
    stein_basis_possible,
    totally_real_possible,
)

__all__ = [
    "AmbientRecipe",
    "EmbedInChart",
    "UseNamedClass",
    "Resolve",
    "ConnectedSum",
    "DiscBundle",
    "Claims",
    "Certificate",
    "VerificationReport",
    "Infeasible",
    "NoRecipe",
    "MalformedCertificate",
    "totally_real_oriented_in_k3",
    "totally_real_nonorientable",
    "stein_disc_bundle",
    "stein_disc_bundle_nonorientable",
    "verify_certificate",
]


class Infeasible(Exception):
    """The requested object provably does not exist (expected negative)."""


class NoRecipe(Exception):
    """The catalog has no construction for these parameters (but other
    ambient choices may work)."""


class MalformedCertificate(ValueError):
    """The certificate cannot be replayed at all (as opposed to replaying
    to values that contradict its claims)."""


# --- step types ---------------------------------------------------------------


@dataclass(frozen=True)
class EmbedInChart:
    """Embed a surface in a small contractible chart.

    Nonorientable chart surfaces may take any normal Euler number in
    ``massey_set(chi)``; orientable ones are forced to zero.
    """

    chi: int
    normal_euler: int
    orientable: bool = False


@dataclass(frozen=True)
class UseNamedClass:
    """Take the catalog representative of a named class: a sphere
    (chi = 2) when the self-intersection is nonzero, a torus (chi = 0)
    when it vanishes.
    """

    name: str
    chi: int


@dataclass(frozen=True)
class Resolve:
    """Resolve all crossings of the union of earlier surfaces.

    ``crossings`` is the geometric count of transverse intersection
    points, and the union is asserted connected by whoever wrote the
    certificate; both are recorded here rather than inferred.
    """

    parts: tuple[int, ...]
    crossings: int


@dataclass(frozen=True)
class ConnectedSum:
    """Tube earlier surfaces together, left to right."""

    operands: tuple[int, ...]


Step = EmbedInChart | UseNamedClass | Resolve | ConnectedSum


@dataclass(frozen=True)
class AmbientRecipe:
    base: str
    blow_ups: int = 0

    def build(self) -> AmbientSurface:
        try:
            return by_name(self.base, self.blow_ups)
        except ValueError as exc:
            raise MalformedCertificate(str(exc)) from None


@dataclass(frozen=True)
class DiscBundle:
    """Claimed diffeomorphism type of the Stein neighborhood fibers:
    D(genus, euler_number) over an orientable base, or the twisted
    bundle over a nonorientable base of the given chi.
    """

    orientable: bool
    euler_number: int
    genus: int | None = None
    chi: int | None = None


@dataclass(frozen=True)
class Claims:
    orientable: bool
    euler_char: int
    normal_euler: int
    hclass: tuple[int, ...] | None
    i_total: int
    i_plus: int | None
    i_minus: int | None
    stein_basis_possible: bool | None = None
    totally_real_possible: bool | None = None
    disc_bundle: DiscBundle | None = None


@dataclass(frozen=True)
class Certificate:
    ambient: AmbientRecipe
    steps: tuple[Step, ...]
    claimed: Claims
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "ambient": {"base": self.ambient.base, "blow_ups": self.ambient.blow_ups},
            "steps": [_step_to_dict(s) for s in self.steps],
            "claimed": _claims_to_dict(self.claimed),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        try:
            ambient = AmbientRecipe(
                str(data["ambient"]["base"]), int(data["ambient"].get("blow_ups", 0))
            )
            steps = tuple(_step_from_dict(s) for s in data["steps"])
            claimed = _claims_from_dict(data["claimed"])
            notes = tuple(str(n) for n in data.get("notes", []))
        except (KeyError, TypeError) as exc:
            raise MalformedCertificate(f"certificate is missing fields: {exc}") from None
        return cls(ambient, steps, claimed, notes)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedCertificate(f"certificate is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise MalformedCertificate("certificate must be a JSON object")
        return cls.from_dict(data)


def _step_to_dict(step: Step) -> dict:
    if isinstance(step, EmbedInChart):
        return {
            "kind": "embed-in-chart",
            "chi": step.chi,
            "normal_euler": step.normal_euler,
            "orientable": step.orientable,
        }
    if isinstance(step, UseNamedClass):
        return {"kind": "use-named-class", "name": step.name, "chi": step.chi}
    if isinstance(step, Resolve):
        return {"kind": "resolve", "parts": list(step.parts), "crossings": step.crossings}
    if isinstance(step, ConnectedSum):
        return {"kind": "connected-sum", "operands": list(step.operands)}
    raise MalformedCertificate(f"unknown step type {type(step).__name__}")


def _step_from_dict(data: dict) -> Step:
    try:
        kind = data["kind"]
        if kind == "embed-in-chart":
            return EmbedInChart(
                int(data["chi"]), int(data["normal_euler"]), bool(data.get("orientable", False))
            )
        if kind == "use-named-class":
            return UseNamedClass(str(data["name"]), int(data["chi"]))
        if kind == "resolve":
            return Resolve(tuple(int(i) for i in data["parts"]), int(data["crossings"]))
        if kind == "connected-sum":
            return ConnectedSum(tuple(int(i) for i in data["operands"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificate(f"bad step record {data!r}: {exc}") from None
    raise MalformedCertificate(f"unknown step kind {kind!r}")


def _claims_to_dict(c: Claims) -> dict:
    disc = None
    if c.disc_bundle is not None:
        if c.disc_bundle.orientable:
            disc = {"kind": "D", "genus": c.disc_bundle.genus, "euler_number": c.disc_bundle.euler_number}
        else:
            disc = {"kind": "Dtilde", "chi": c.disc_bundle.chi, "euler_number": c.disc_bundle.euler_number}
    return {
        "orientable": c.orientable,
        "euler_char": c.euler_char,
        "normal_euler": c.normal_euler,
        "hclass": None if c.hclass is None else list(c.hclass),
        "i_total": c.i_total,
        "i_plus": c.i_plus,
        "i_minus": c.i_minus,
        "stein_basis_possible": c.stein_basis_possible,
        "totally_real_possible": c.totally_real_possible,
        "disc_bundle": disc,
    }


def _claims_from_dict(data: dict) -> Claims:
    disc = None
    raw = data.get("disc_bundle")
    if raw is not None:
        if raw.get("kind") == "D":
            disc = DiscBundle(True, int(raw["euler_number"]), genus=int(raw["genus"]))
        elif raw.get("kind") == "Dtilde":
            disc = DiscBundle(False, int(raw["euler_number"]), chi=int(raw["chi"]))
        else:
            raise MalformedCertificate(f"unknown disc bundle kind in {raw!r}")
    hclass = data.get("hclass")
    return Claims(
        orientable=bool(data["orientable"]),
        euler_char=int(data["euler_char"]),
        normal_euler=int(data["normal_euler"]),
        hclass=None if hclass is None else tuple(int(x) for x in hclass),
        i_total=int(data["i_total"]),
        i_plus=None if data.get("i_plus") is None else int(data["i_plus"]),
        i_minus=None if data.get("i_minus") is None else int(data["i_minus"]),
        stein_basis_possible=data.get("stein_basis_possible"),
        totally_real_possible=data.get("totally_real_possible"),
        disc_bundle=disc,
    )


# --- replay -------------------------------------------------------------------


def _take(registry: list, indices: tuple[int, ...], tag: str) -> list[SurfaceClass]:
    out = []
    for i in indices:
        if not 0 <= i < len(registry):
            raise MalformedCertificate(f"{tag}: operand index {i} out of range")
        if registry[i] is None:
            raise MalformedCertificate(f"{tag}: operand {i} was already consumed")
        out.append(registry[i])
        registry[i] = None
    return out


def _replay(ambient: AmbientSurface, steps: tuple[Step, ...]):
    """Fold the steps into a final surface; returns it with the step-level
    validity checks.  Structural nonsense raises MalformedCertificate.
    """
    registry: list[SurfaceClass | None] = []
    checks: list[Check] = []
    for idx, step in enumerate(steps):
        tag = f"step[{idx}]"
        try:
            if isinstance(step, EmbedInChart):
                if step.orientable:
                    checks.append(
                        Check(f"{tag}: orientable chart surface has zero normal euler number",
                              0, step.normal_euler)
                    )
                    surface = SurfaceClass(ambient, True, step.chi, None, step.normal_euler)
                else:
                    checks.append(
                        Check(f"{tag}: chart normal euler number is realizable",
                              True, step.normal_euler in massey_set(step.chi))
                    )
                    surface = SurfaceClass(ambient, False, step.chi, None, step.normal_euler)
                registry.append(surface)
            elif isinstance(step, UseNamedClass):
                if step.name not in ambient.named:
                    raise MalformedCertificate(
                        f"{tag}: {ambient.label} has no named class {step.name!r}"
                    )
                h = ambient.named[step.name]
                expected_chi = 2 if ambient.pair(h, h) != 0 else 0
                checks.append(
                    Check(f"{tag}: named class {step.name!r} has its catalog euler characteristic",
                          expected_chi, step.chi)
                )
                registry.append(SurfaceClass(ambient, True, step.chi, h, None))
            elif isinstance(step, Resolve):
                parts = _take(registry, step.parts, tag)
                registry.append(resolve_union(parts, step.crossings))
            elif isinstance(step, ConnectedSum):
                if len(step.operands) < 2:
                    raise MalformedCertificate(f"{tag}: connected sum needs two or more operands")
                operands = _take(registry, step.operands, tag)
                result = operands[0]
                for other in operands[1:]:
                    result = connected_sum(result, other)
                registry.append(result)
            else:
                raise MalformedCertificate(f"{tag}: unknown step type {type(step).__name__}")
        except ValueError as exc:
            if isinstance(exc, MalformedCertificate):
                raise
            raise MalformedCertificate(f"{tag}: {exc}") from None
    remaining = [s for s in registry if s is not None]
    if len(remaining) != 1:
        raise MalformedCertificate(
            f"steps must leave exactly one surface, {len(remaining)} remain"
        )
    return remaining[0], checks


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    checks: tuple[Check, ...]
    notes: tuple[str, ...] = ()

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.ok)


def verify_certificate(cert: Certificate) -> VerificationReport:
    """Rebuild the ambient, replay the steps, and compare every claim."""
    ambient = cert.ambient.build()
    final, checks = _replay(ambient, cert.steps)
    report = invariant_report(final)
    claimed = cert.claimed
    checks.append(Check("claimed orientability", claimed.orientable, final.orientable))
    checks.append(Check("claimed euler characteristic", claimed.euler_char, final.euler_char))
    checks.append(Check("claimed normal euler number", claimed.normal_euler, final.normal_euler))
    actual_h = None if final.hclass is None else final.hclass.coeffs
    checks.append(Check("claimed homology class", claimed.hclass, actual_h))
    checks.append(Check("claimed count I", claimed.i_total, report.i_total))
    checks.append(Check("claimed signed count I+", claimed.i_plus, report.i_plus))
    checks.append(Check("claimed signed count I-", claimed.i_minus, report.i_minus))
    if claimed.stein_basis_possible is not None:
        checks.append(
            Check("claimed Stein neighborhood basis possibility",
                  claimed.stein_basis_possible, stein_basis_possible(final))
        )
    if claimed.totally_real_possible is not None:
        checks.append(
            Check("claimed totally real possibility",
                  claimed.totally_real_possible, totally_real_possible(final))
        )
    bundle = claimed.disc_bundle
    if bundle is not None:
        checks.append(Check("disc bundle base orientability", bundle.orientable, final.orientable))
        if bundle.orientable:
            checks.append(
                Check("disc bundle base genus matches chi", 2 - 2 * bundle.genus, final.euler_char)
            )
        else:
            checks.append(Check("disc bundle base chi", bundle.chi, final.euler_char))
        checks.append(
            Check("disc bundle euler number is the normal euler number",
                  bundle.euler_number, final.normal_euler)
        )
    passed = all(c.ok for c in checks)
    return VerificationReport(passed, tuple(checks), cert.notes)


# --- engines ------------------------------------------------------------------


def _claims_for(final: SurfaceClass, **extra) -> Claims:
    report = invariant_report(final)
    return Claims(
        orientable=final.orientable,
        euler_char=final.euler_char,
        normal_euler=final.normal_euler,
        hclass=None if final.hclass is None else final.hclass.coeffs,
        i_total=report.i_total,
        i_plus=report.i_plus,
        i_minus=report.i_minus,
        stein_basis_possible=stein_basis_possible(final),
        totally_real_possible=totally_real_possible(final),
        **extra,
    )


def _finish(recipe: AmbientRecipe, steps: list[Step], notes: tuple[str, ...] = (), **extra) -> Certificate:
    final, _ = _replay(recipe.build(), tuple(steps))
    return Certificate(recipe, tuple(steps), _claims_for(final, **extra), notes)


def totally_real_oriented_in_k3(g: int) -> Certificate:
    """A totally real closed oriented genus-g surface in K3, as the
    resolution of a section-class sphere with g fiber tori.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    steps: list[Step] = [UseNamedClass("s", 2)]
    steps += [UseNamedClass("f", 0) for _ in range(g)]
    steps.append(Resolve(tuple(range(g + 1)), g))
    cert = _finish(AmbientRecipe("K3"), steps)
    assert cert.claimed.i_plus == 0 and cert.claimed.i_minus == 0
    return cert


# chart count I for each chi mod 4 residue, per ambient kind; None marks
# residues the plain K3 recipe cannot reach without a blow-up.
_NONOR_DISPATCH = {
    "k3": {0: (0, []), 2: (2, [("s", 2)]), 1: None, 3: None},
    "k3-blow-up": {0: (0, []), 2: (2, [("s", 2)]), 3: (1, [("e1", 2)]), 1: (3, [("e1", 2), ("s", 2)])},
    "e3": {0: (0, []), 2: (2, [("s1", 2)]), 3: (5, [("s1", 2), ("s", 2)]), 1: (3, [("s", 2)])},
}

_NONOR_RECIPES = {
    "k3": AmbientRecipe("K3"),
    "k3-blow-up": AmbientRecipe("K3", 1),
    "e3": AmbientRecipe("E(3)"),
}

_NONOR_ALIASES = {
    "k3": "k3",
    "k3blowup": "k3-blow-up",
    "k3-blow-up": "k3-blow-up",
    "k3_blow_up": "k3-blow-up",
    "e3": "e3",
    "e(3)": "e3",
}


def totally_real_nonorientable(chi: int, ambient_kind: str = "k3-blow-up") -> Certificate:
    """A totally real closed nonorientable surface of the given chi.

    The chart embedding takes the count value the case analysis fixes
    for chi mod 4, and connected sums with catalog spheres bring it to
    zero.  Plain K3 handles chi = 0, 2 (mod 4) only; the blow-up and
    E(3) handle every chi.
    """
    if chi > 1:
        raise ValueError(f"nonorientable surfaces have chi <= 1, got {chi}")
    kind = _NONOR_ALIASES.get(ambient_kind.strip().lower().replace(" ", ""))
    if kind is None:
        raise ValueError(
            f"unknown ambient kind {ambient_kind!r}; expected K3, K3-blow-up or E3"
        )
    entry = _NONOR_DISPATCH[kind][chi % 4]
    if entry is None:
        raise NoRecipe(
            f"chi = {chi} is {chi % 4} mod 4: the K3 chart values cannot reach count 0 "
            "without an exceptional sphere; use the K3-blow-up or E(3) recipe"
        )
    chart_count, summands = entry
    nu = chart_count - chi
    assert nu in massey_set(chi), "chart dispatch left the realizable range"
    steps: list[Step] = [EmbedInChart(chi, nu)]
    steps += [UseNamedClass(name, c) for name, c in summands]
    if summands:
        steps.append(ConnectedSum(tuple(range(len(summands) + 1))))
    cert = _finish(_NONOR_RECIPES[kind], steps)
    assert cert.claimed.i_total == 0
    return cert


_STEIN_NOTE = (
    "The resolved surface has I = chi + [S].[S] = 2 - m; the count vanishes "
    "only in its negative part (I- = 0), which with I+ = 2 - m <= 0 is what "
    "the Stein neighborhood criterion needs."
)


def stein_disc_bundle(g: int, n: int) -> Certificate:
    """The disc bundle D(g, n) as a Stein neighborhood fiber in E(2g - n).

    Infeasible for n > 2g - 2: such bundles carry no Stein structure.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if n > 2 * g - 2:
        raise Infeasible(
            f"D({g},{n}) has no Stein structure: the euler number must satisfy n <= 2g-2 "
            f"(= {2 * g - 2})"
        )
    m = 2 * g - n
    steps: list[Step] = [UseNamedClass("s", 2)]
    steps += [UseNamedClass("f", 0) for _ in range(g)]
    steps.append(Resolve(tuple(range(g + 1)), g))
    cert = _finish(
        AmbientRecipe(f"E({m})"),
        steps,
        notes=(_STEIN_NOTE,),
        disc_bundle=DiscBundle(True, n, genus=g),
    )
    assert cert.claimed.i_plus == 2 - m and cert.claimed.i_minus == 0
    assert cert.claimed.normal_euler == n
    return cert


def _minimal_shift(chi: int, n: int, lower: int) -> int:
    """Smallest m >= lower with n + m in massey_set(chi)."""
    values = massey_set(chi)
    residue = values[0] % 4
    m = lower + (residue - n - lower) % 4
    while n + m < values[0]:
        m += 4
    if n + m > values[-1]:
        raise AssertionError("no realizable chart normal euler number; feasibility bug")
    return m


def stein_disc_bundle_nonorientable(chi: int, n: int, strategy: str = "blow-up-cp2") -> Certificate:
    """The disc bundle over a nonorientable base (Euler characteristic chi,
    euler number n) as a Stein neighborhood fiber.  Infeasible for
    n + chi > 0.

    Strategies: ``blow-up-cp2`` sums the chart surface with m exceptional
    spheres in the m-fold blow-up of CP^2; ``section-of-em`` takes one
    connected sum with a section of E(m).  Both land on normal Euler
    number n with I = chi + n, and m is minimized.
    """
    if chi > 1:
        raise ValueError(f"nonorientable surfaces have chi <= 1, got {chi}")
    if n + chi > 0:
        raise Infeasible(
            f"the disc bundle over a chi = {chi} nonorientable base with euler number {n} "
            "has no Stein structure: n + chi must be <= 0"
        )
    key = strategy.strip().lower().replace("_", "-")
    if key in ("blow-up-cp2", "blowupcp2"):
        m = _minimal_shift(chi, n, lower=0)
        steps: list[Step] = [EmbedInChart(chi, n + m)]
        steps += [UseNamedClass(f"e{i}", 2) for i in range(1, m + 1)]
        if m:
            steps.append(ConnectedSum(tuple(range(m + 1))))
        recipe = AmbientRecipe("CP2", m)
    elif key in ("section-of-em", "sectionofem"):
        m = _minimal_shift(chi, n, lower=1)
        steps = [EmbedInChart(chi, n + m), UseNamedClass("s", 2), ConnectedSum((0, 1))]
        recipe = AmbientRecipe(f"E({m})")
    else:
        raise ValueError(
            f"unknown strategy {strategy!r}; expected blow-up-cp2 or section-of-em"
        )
    cert = _finish(recipe, steps, disc_bundle=DiscBundle(False, n, chi=chi))
    assert cert.claimed.normal_euler == n
    assert cert.claimed.i_total == chi + n
    return cert
