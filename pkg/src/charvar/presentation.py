"""Orbifold signatures and finite group presentations.

Words are tuples of signed 1-based generator indices: (1, -2) means
g1 * g2^{-1}.  Presentations carry the orientation character, torsion
markers, peripheral words and an optional cell structure; those four
pieces of metadata are what the cohomology layer keys its case analysis
on, so they are validated here rather than trusted downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "Word",
    "SignatureError",
    "PresentationError",
    "OrbifoldSignature",
    "CellStabilizer",
    "Cell",
    "GroupPresentation",
    "parse_signature",
    "presentation_of",
    "presentation_from_raw",
    "euler_characteristic",
    "underlying_euler",
    "inverse_word",
    "word_power",
    "orientation_cover_generators",
]

Word = tuple[int, ...]


class SignatureError(ValueError):
    pass


class PresentationError(ValueError):
    pass


def inverse_word(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def word_power(w: Word, k: int) -> Word:
    if k < 0:
        return word_power(inverse_word(w), -k)
    return w * k


@dataclass(frozen=True)
class OrbifoldSignature:
    """A compact 2-orbifold without corner reflectors.

    kind "orientable": genus handles, kind "nonorientable": genus counts
    crosscaps (>= 1), kind "mirrored": disc with fully mirrored boundary
    (a closed non-orientable orbifold); there genus and boundary_circles
    are forced to 0.
    """

    kind: str
    genus: int
    boundary_circles: int
    cone_orders: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("orientable", "nonorientable", "mirrored"):
            raise SignatureError(f"unknown kind {self.kind!r}")
        if self.kind == "nonorientable" and self.genus < 1:
            raise SignatureError("non-orientable signature needs at least one crosscap")
        if self.kind != "nonorientable" and self.genus < 0:
            raise SignatureError("genus must be non-negative")
        if self.boundary_circles < 0:
            raise SignatureError("boundary count must be non-negative")
        if self.kind == "mirrored" and (self.genus or self.boundary_circles):
            raise SignatureError("mirrored disc carries no handles or extra boundary")
        if any(n < 2 for n in self.cone_orders):
            raise SignatureError("cone orders must be >= 2")

    @property
    def orientable(self) -> bool:
        return self.kind == "orientable"

    @property
    def closed(self) -> bool:
        return self.boundary_circles == 0

    @property
    def cone_count(self) -> int:
        return len(self.cone_orders)

    def to_text(self) -> str:
        cones = ",".join(str(n) for n in self.cone_orders)
        if self.kind == "mirrored":
            return f"D({cones};mirror)"
        if self.kind == "orientable" and self.genus == 0 and self.boundary_circles == 0:
            return f"S2({cones})"
        if self.kind == "orientable":
            return f"O(g={self.genus};b={self.boundary_circles};cone=[{cones}])"
        return f"N(k={self.genus};b={self.boundary_circles};cone=[{cones}])"


_INT_LIST = re.compile(r"^\s*$|^\s*\d+\s*(,\s*\d+\s*)*$")


def _parse_orders(body: str, ctx: str) -> tuple[int, ...]:
    if not _INT_LIST.match(body):
        raise SignatureError(f"bad cone-order list {body!r} in {ctx}")
    return tuple(int(tok) for tok in body.split(",") if tok.strip())


def _parse_kv(body: str, ctx: str) -> dict:
    out = {"g": 0, "k": None, "b": 0, "cone": ()}
    for part in filter(None, (p.strip() for p in body.split(";"))):
        m = re.match(r"^(g|k|b)\s*=\s*(\d+)$", part)
        if m:
            out[m.group(1)] = int(m.group(2))
            continue
        m = re.match(r"^cone\s*=\s*\[(.*)\]$", part)
        if m:
            out["cone"] = _parse_orders(m.group(1), ctx)
            continue
        raise SignatureError(f"cannot parse {part!r} in {ctx}")
    return out


def parse_signature(text: str) -> OrbifoldSignature:
    """Grammar: S2(3,3,4) | O(g=2;b=1;cone=[3,3]) | N(k=1;b=0;cone=[2,5])
    | D(3,4;mirror) | D2(3,3) (disc with cone points, one boundary circle)."""
    s = text.strip()
    m = re.match(r"^S2\((.*)\)$", s)
    if m:
        return OrbifoldSignature("orientable", 0, 0, _parse_orders(m.group(1), s))
    m = re.match(r"^D2\((.*)\)$", s)
    if m:
        return OrbifoldSignature("orientable", 0, 1, _parse_orders(m.group(1), s))
    m = re.match(r"^D\((.*);\s*mirror\s*\)$", s)
    if m:
        return OrbifoldSignature("mirrored", 0, 0, _parse_orders(m.group(1), s))
    m = re.match(r"^O\((.*)\)$", s)
    if m:
        kv = _parse_kv(m.group(1), s)
        return OrbifoldSignature("orientable", kv["g"], kv["b"], kv["cone"])
    m = re.match(r"^N\((.*)\)$", s)
    if m:
        kv = _parse_kv(m.group(1), s)
        if kv["k"] is None:
            raise SignatureError(f"N(...) needs k=<crosscaps> in {s!r}")
        return OrbifoldSignature("nonorientable", kv["k"], kv["b"], kv["cone"])
    raise SignatureError(f"cannot parse signature {text!r}")


def euler_characteristic(sig: OrbifoldSignature) -> Fraction:
    chi = Fraction(underlying_euler(sig))
    for n in sig.cone_orders:
        chi -= Fraction(n - 1, n)
    return chi


def underlying_euler(sig: OrbifoldSignature) -> int:
    if sig.kind == "orientable":
        return 2 - 2 * sig.genus - sig.boundary_circles
    if sig.kind == "nonorientable":
        return 2 - sig.genus - sig.boundary_circles
    return 1  # disc


@dataclass(frozen=True)
class CellStabilizer:
    """Isotropy of (a lift of) a cell: trivial, cyclic of given order
    generated by `word`, reflection generated by `word`, or dihedral with
    the rotation and reflection words."""

    kind: str = "trivial"
    order: int = 1
    word: Word = ()
    reflection_word: Word = ()

    def __post_init__(self):
        if self.kind not in ("trivial", "cyclic", "reflection", "dihedral"):
            raise PresentationError(f"unknown stabilizer kind {self.kind!r}")
        if self.kind == "cyclic" and (self.order < 2 or not self.word):
            raise PresentationError("cyclic stabilizer needs order >= 2 and a word")
        if self.kind == "reflection" and not self.word:
            raise PresentationError("reflection stabilizer needs a word")
        if self.kind == "dihedral" and (not self.word or not self.reflection_word):
            raise PresentationError("dihedral stabilizer needs both words")

    @property
    def reverses_orientation(self) -> bool:
        return self.kind in ("reflection", "dihedral")


@dataclass(frozen=True)
class Cell:
    name: str
    dim: int
    stabilizer: CellStabilizer = CellStabilizer()


@dataclass(frozen=True)
class GroupPresentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]
    orientation_character: tuple[int, ...]
    torsion_orders: dict[int, int] = field(default_factory=dict)
    peripheral_words: tuple[Word, ...] = ()
    long_relator_index: int | None = None
    cells: tuple[Cell, ...] = ()
    declared_full_boundary: int | None = None
    signature: OrbifoldSignature | None = None

    def __post_init__(self):
        n = len(self.generator_names)
        if len(self.orientation_character) != n:
            raise PresentationError("orientation character must list one sign per generator")
        if any(e not in (1, -1) for e in self.orientation_character):
            raise PresentationError("orientation character values must be +1 or -1")
        for w in self.relators + self.peripheral_words:
            for x in w:
                if x == 0 or abs(x) > n:
                    raise PresentationError(f"letter {x} out of range in word {w}")
        for r in self.relators:
            if self.character_of(r) != 1:
                raise PresentationError(f"relator {r} is not orientation-preserving")
        for g, order in self.torsion_orders.items():
            if not (1 <= g <= n) or order < 2:
                raise PresentationError(f"bad torsion marker {g}:{order}")
        if self.long_relator_index is not None and not (
            0 <= self.long_relator_index < len(self.relators)
        ):
            raise PresentationError("long relator index out of range")

    @property
    def num_generators(self) -> int:
        return len(self.generator_names)

    @property
    def orientable(self) -> bool:
        return all(e == 1 for e in self.orientation_character)

    def character_of(self, w: Word) -> int:
        out = 1
        for x in w:
            out *= self.orientation_character[abs(x) - 1]
        return out

    @property
    def full_boundary_count(self) -> int:
        """Boundary components that are intervals with mirrored endpoints.

        Counted from the cell structure as (#0-cells with an
        orientation-reversing stabilizer) - (#1-cells with one); each such
        boundary component contributes exactly two mirrored endpoints but
        shares its mirror arcs, so the alternating count is exact."""
        if self.cells:
            v = sum(
                1 for c in self.cells if c.dim == 0 and c.stabilizer.reverses_orientation
            )
            e = sum(
                1 for c in self.cells if c.dim == 1 and c.stabilizer.reverses_orientation
            )
            return v - e
        if self.declared_full_boundary is not None:
            return self.declared_full_boundary
        return 0

    @property
    def closed(self) -> bool:
        return not self.peripheral_words and self.full_boundary_count == 0

    @property
    def long_relator(self) -> Word:
        if self.long_relator_index is None:
            raise PresentationError("presentation has no long relator")
        return self.relators[self.long_relator_index]

    def describe(self) -> str:
        gens = ", ".join(self.generator_names)
        rels = ", ".join(self.show_word(r) for r in self.relators)
        return f"<{gens} | {rels}>"

    def show_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for x in w:
            name = self.generator_names[abs(x) - 1]
            parts.append(name if x > 0 else name + "^-1")
        return "*".join(parts)


def _surface_cells(sig: OrbifoldSignature, cone_gen_offset: int) -> tuple[Cell, ...]:
    cells = [Cell("v0", 0)]
    for j, n in enumerate(sig.cone_orders):
        stab = CellStabilizer("cyclic", n, (cone_gen_offset + j + 1,))
        cells.append(Cell(f"v_cone{j + 1}", 0, stab))
    loops = 2 * sig.genus if sig.kind == "orientable" else sig.genus
    for i in range(loops):
        cells.append(Cell(f"e_loop{i + 1}", 1))
    for j in range(sig.cone_count):
        cells.append(Cell(f"e_cone{j + 1}", 1))
    for l in range(sig.boundary_circles):
        cells.append(Cell(f"v_bdry{l + 1}", 0))
        cells.append(Cell(f"e_bdry{l + 1}", 1))
        cells.append(Cell(f"e_to_bdry{l + 1}", 1))
    cells.append(Cell("face", 2))
    return tuple(cells)


def _mirrored_cells(sig: OrbifoldSignature, ref_index: int) -> tuple[Cell, ...]:
    ref = CellStabilizer("reflection", 2, (ref_index,))
    cells = [Cell("v0", 0), Cell("v_mirror", 0, ref), Cell("e_mirror", 1, ref)]
    for j, n in enumerate(sig.cone_orders):
        cells.append(Cell(f"v_cone{j + 1}", 0, CellStabilizer("cyclic", n, (j + 1,))))
        cells.append(Cell(f"e_cone{j + 1}", 1))
    cells.append(Cell("e_to_mirror", 1))
    cells.append(Cell("face", 2))
    return tuple(cells)


def presentation_of(sig: OrbifoldSignature) -> GroupPresentation:
    """Standard presentation for the orbifold fundamental group.

    Orientable: a_i, b_i, x_j, c_l with x_j^{n_j} and
    [a_1,b_1]...[a_g,b_g] x_1...x_c c_1...c_b.  Non-orientable surface:
    crosscap generators m_i with m_1^2...m_k^2 x_1...x_c c_1...c_b and
    character -1 on each m_i.  Mirrored disc: x_j, s with x_j^{n_j}, s^2
    and the requirement that x_1...x_c commute with s.
    """
    cones = sig.cone_orders
    c = len(cones)
    if sig.kind == "mirrored":
        names = tuple(f"x{j + 1}" for j in range(c)) + ("s",)
        s_idx = c + 1
        relators = [word_power((j + 1,), n) for j, n in enumerate(cones)]
        relators.append(word_power((s_idx,), 2))
        w = tuple(range(1, c + 1))
        commute = (s_idx,) + w + (-s_idx,) + inverse_word(w)
        relators.append(commute)
        torsion = {j + 1: n for j, n in enumerate(cones)}
        torsion[s_idx] = 2
        return GroupPresentation(
            generator_names=names,
            relators=tuple(relators),
            orientation_character=(1,) * c + (-1,),
            torsion_orders=torsion,
            long_relator_index=len(relators) - 1,
            cells=_mirrored_cells(sig, s_idx),
            signature=sig,
        )

    b = sig.boundary_circles
    if sig.kind == "orientable":
        g = sig.genus
        names = []
        for i in range(g):
            names += [f"a{i + 1}", f"b{i + 1}"]
        handle_count = 2 * g
        long_prefix: list[int] = []
        for i in range(g):
            ai, bi = 2 * i + 1, 2 * i + 2
            long_prefix += [ai, bi, -ai, -bi]
        char = [1] * handle_count
    else:
        k = sig.genus
        names = [f"m{i + 1}" for i in range(k)]
        handle_count = k
        long_prefix = []
        for i in range(k):
            long_prefix += [i + 1, i + 1]
        char = [-1] * handle_count

    cone_offset = handle_count
    names += [f"x{j + 1}" for j in range(c)]
    char += [1] * c
    bdry_offset = cone_offset + c
    names += [f"c{l + 1}" for l in range(b)]
    char += [1] * b

    relators = [word_power((cone_offset + j + 1,), n) for j, n in enumerate(cones)]
    long_word = tuple(long_prefix) + tuple(
        cone_offset + j + 1 for j in range(c)
    ) + tuple(bdry_offset + l + 1 for l in range(b))
    relators.append(long_word)
    torsion = {cone_offset + j + 1: n for j, n in enumerate(cones)}
    return GroupPresentation(
        generator_names=tuple(names),
        relators=tuple(relators),
        orientation_character=tuple(char),
        torsion_orders=torsion,
        peripheral_words=tuple((bdry_offset + l + 1,) for l in range(b)),
        long_relator_index=len(relators) - 1,
        cells=_surface_cells(sig, cone_offset),
        signature=sig,
    )


def presentation_from_raw(
    generator_names,
    relators,
    orientation_character=None,
    torsion_orders=None,
    peripheral_words=(),
    long_relator_index=None,
    cells=(),
    full_boundary_count=None,
) -> GroupPresentation:
    names = tuple(generator_names)
    if orientation_character is None:
        orientation_character = (1,) * len(names)
    return GroupPresentation(
        generator_names=names,
        relators=tuple(tuple(r) for r in relators),
        orientation_character=tuple(orientation_character),
        torsion_orders=dict(torsion_orders or {}),
        peripheral_words=tuple(tuple(w) for w in peripheral_words),
        long_relator_index=long_relator_index,
        cells=tuple(cells),
        declared_full_boundary=full_boundary_count,
    )


def orientation_cover_generators(pres: GroupPresentation) -> tuple[Word, ...]:
    """Schreier generator words for the index-2 kernel of the orientation
    character, with coset representatives {1, t} for t the first
    orientation-reversing generator.  Freely trivial generators are
    dropped; the remaining words generate the kernel."""
    if pres.orientable:
        raise PresentationError("presentation has no orientation cover: it is orientable")
    t = next(
        i + 1 for i, e in enumerate(pres.orientation_character) if e == -1
    )
    words = []
    for i, e in enumerate(pres.orientation_character):
        g = i + 1
        if e == 1:
            words.append((g,))
            words.append((t, g, -t))
        elif g == t:
            words.append((t, t))
        else:
            words.append((g, -t))
            words.append((t, g))
    return tuple(words)
