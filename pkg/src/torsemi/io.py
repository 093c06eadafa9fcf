"""Reading and writing the text and JSON file formats.

* monoid / cone files: a line ``n <rank>`` then one generator per line as
  space-separated nonnegative integers; ``#`` starts a comment;
* ideal files: a line ``monoid <path>`` (relative to the ideal file) then
  one polynomial per line in the ``2*x^(1,1) + 1*x^(2,0)`` syntax;
* semiring JSON ``{order, add, mul, unity?}``;
* presentation JSON ``{monoid: {rank, generators}, relations, size_cap}``;
* decomposition JSON ``{faces: [...], pieces: [...]}``.

Parse errors are :class:`ParseError` and name the file and line.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from .congruence import CongruencePresentation
from .monoid import AffineMonoid, CanonicalDecomposition
from .polynomial import NATURALS, Ideal, SparsePoly, parse_poly, poly_from_json
from .semiring import FiniteSemiring, SemiringAxiomError, validate


class ParseError(ValueError):
    def __init__(self, path: str | Path, line: int | None, message: str):
        self.path = str(path)
        self.line = line
        self.message = message
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")


def _lines(path: str | Path) -> list[tuple[int, str]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(path, None, f"cannot read file ({exc.strerror})") from None
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _int_vector(items: Sequence[Any]) -> tuple[int, ...]:
    # JSON vectors may hold integers or decimal strings
    return tuple(int(a) for a in items)


# ---------------------------------------------------------------------------
# monoids


def parse_monoid_text(text: str, path: str | Path = "<string>") -> AffineMonoid:
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((no, line))
    if not lines:
        raise ParseError(path, None, "empty monoid file")
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise ParseError(path, no, f"expected 'n <rank>', got {head!r}")
    rank = int(parts[1])
    gens = []
    for no, line in lines[1:]:
        try:
            g = tuple(int(a) for a in line.split())
        except ValueError:
            raise ParseError(path, no, f"generator entries must be integers: {line!r}") from None
        if len(g) != rank:
            raise ParseError(path, no, f"generator has {len(g)} entries, expected {rank}")
        if any(a < 0 for a in g):
            raise ParseError(path, no, "generator entries must be nonnegative")
        gens.append(g)
    return AffineMonoid.from_generators(gens, rank)


def read_monoid(path: str | Path) -> AffineMonoid:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(path, None, f"cannot read file ({exc.strerror})") from None
    return parse_monoid_text(text, path)


def monoid_text(m: AffineMonoid) -> str:
    return "".join([f"n {m.ambient}\n"] + [" ".join(map(str, g)) + "\n" for g in m.generators])


def write_monoid(m: AffineMonoid, path: str | Path) -> None:
    Path(path).write_text(monoid_text(m))


def monoid_json(m: AffineMonoid) -> dict:
    return {"rank": m.ambient, "generators": [list(g) for g in m.generators]}


def monoid_from_json(obj: dict) -> AffineMonoid:
    return AffineMonoid.from_generators([_int_vector(g) for g in obj["generators"]], int(obj["rank"]))


# ---------------------------------------------------------------------------
# ideals


def read_ideal(path: str | Path) -> Ideal:
    lines = _lines(path)
    if not lines:
        raise ParseError(path, None, "empty ideal file")
    no, head = lines[0]
    key, _, ref = head.partition(" ")
    if key != "monoid" or not ref.strip():
        raise ParseError(path, no, f"expected 'monoid <path>', got {head!r}")
    monoid = read_monoid(Path(path).parent / ref.strip())
    gens = []
    for no, line in lines[1:]:
        try:
            gens.append(parse_poly(line, monoid.ambient))
        except ValueError as exc:
            raise ParseError(path, no, str(exc)) from None
    try:
        return Ideal(monoid, tuple(gens))
    except ValueError as exc:
        raise ParseError(path, None, str(exc)) from None


def write_ideal(ideal: Ideal, path: str | Path, monoid_ref: str) -> None:
    """Write ``ideal`` with a header pointing at ``monoid_ref`` (the monoid file itself is not written)."""
    Path(path).write_text("".join([f"monoid {monoid_ref}\n"] + [g.to_text() + "\n" for g in ideal.generators]))


# ---------------------------------------------------------------------------
# semirings and presentations


def _load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(path, None, f"cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, exc.msg) from None


def semiring_json(s: FiniteSemiring) -> dict:
    out: dict[str, Any] = {"order": s.order, "add": [list(r) for r in s.add], "mul": [list(r) for r in s.mul]}
    if s.unity is not None:
        out["unity"] = s.unity
    return out


def semiring_from_json(obj: Any, path: str | Path = "<json>") -> FiniteSemiring:
    if not isinstance(obj, dict) or not {"order", "add", "mul"} <= obj.keys():
        raise ParseError(path, None, "semiring JSON needs order, add and mul")
    order = obj["order"]
    if any(len(obj[k]) != order or any(len(r) != order for r in obj[k]) for k in ("add", "mul")):
        raise ParseError(path, None, f"tables must be {order} x {order}")
    try:
        return validate(obj["add"], obj["mul"], obj.get("unity"), detect_unity="unity" not in obj)
    except SemiringAxiomError as exc:
        raise ParseError(path, None, str(exc)) from None


def read_semiring(path: str | Path) -> FiniteSemiring:
    return semiring_from_json(_load_json(path), path)


def _poly_in(obj: Any, rank: int) -> SparsePoly:
    if isinstance(obj, str):
        return parse_poly(obj, rank, NATURALS)
    return poly_from_json(obj, rank, NATURALS)


def presentation_json(p: CongruencePresentation) -> dict:
    return {
        "monoid": monoid_json(p.monoid),
        "relations": [[lhs.to_text(), rhs.to_text()] for lhs, rhs in p.relations],
        "size_cap": p.size_cap,
    }


def presentation_from_json(obj: Any, path: str | Path = "<json>") -> CongruencePresentation:
    try:
        monoid = monoid_from_json(obj["monoid"])
        rels = tuple((_poly_in(a, monoid.ambient), _poly_in(b, monoid.ambient)) for a, b in obj["relations"])
        return CongruencePresentation(monoid, rels, int(obj.get("size_cap", 64)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(path, None, f"bad presentation: {exc}") from None


def read_presentation(path: str | Path) -> CongruencePresentation:
    return presentation_from_json(_load_json(path), path)


# ---------------------------------------------------------------------------
# decompositions


def decomposition_json(d: CanonicalDecomposition, with_dtilde: bool = True) -> dict:
    faces = [
        {"id": f.id, "dim": f.dim, "support_basis": [list(b) for b in f.support.basis], "sample_point": list(f.sample_point)}
        for f in d.faces.faces
    ]
    pieces = []
    for p in d.pieces:
        entry: dict[str, Any] = {"id": p.id, "dim": p.dim, "support_basis": [list(b) for b in p.face.support.basis]}
        if with_dtilde:
            entry["dtilde_basis"] = [list(h) for h in p.dtilde_basis]
        pieces.append(entry)
    return {"kind": d.monoid.kind, "faces": faces, "pieces": pieces}


def write_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
