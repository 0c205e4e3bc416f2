"""Line-oriented spec files with [group], [space] and [task] sections, plus the
built-in example registry.

    [group]
    kind = symmetric          # symmetric | permutation | monomial
    degree = 3
    generators = (1 2); (2 3) # permutation/monomial kinds

    [space]
    kind = rack               # rack | diagonal | yd
    elements = (1 2); (2 3); (1 3)
    labels = x, y, z
    character = sign          # trivial | sign | one value per group generator

    [task]
    max_degree = 5

Scalars are rationals or roots of unity written ``zeta(m)^k`` (optionally
negated); permutations use cycle notation; monomial matrices are written
``perm + [d1, d2, ...]`` with the diagonal applied before the permutation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import lcm

from gmpy2 import mpq

from .braids import Perm
from .exactalg import ONE, as_phase, conductor, zeta
from .fingroup import DEFAULT_GROUP_CAP, FinGroup, MonomialMatrix, close_group
from .ydspace import YDError, YDSpace, diagonal_space, rack_space


class SpecError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None, source: str = "<spec>"):
        loc = f"{source}:{line}:{col}: " if line is not None else f"{source}: "
        super().__init__(loc + msg)
        self.line = line
        self.col = col


SECTIONS = {
    "group": {"kind", "degree", "generators"},
    "space": {"kind", "elements", "labels", "character", "q", "degrees", "action"},
    "task": {"max_degree", "n", "algebra", "seed", "quotient"},
}


@dataclass
class Entry:
    value: str
    line: int
    col: int


@dataclass
class ParsedSpec:
    group: FinGroup | None = None
    group_generators: list = field(default_factory=list)
    space: YDSpace | None = None
    task: dict = field(default_factory=dict)
    conductor: int = 1
    source: str = "<spec>"


# ---------------------------------------------------------------------------
# scalar and element syntax

_ZETA = re.compile(r"^\s*(-)?\s*zeta\(\s*(\d+)\s*\)\s*(?:\^\s*(-?\d+))?\s*$")
_RAT = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_scalar(text: str):
    m = _ZETA.match(text)
    if m:
        mm = int(m.group(2))
        if mm < 1:
            raise ValueError("zeta conductor must be positive")
        k = int(m.group(3)) if m.group(3) is not None else 1
        z = zeta(mm, k)
        return -z if m.group(1) else z
    m = _RAT.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError("zero denominator")
        return mpq(int(m.group(1)), den)
    raise ValueError(f"cannot parse scalar {text.strip()!r}")


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    text = text.strip()
    if text in ("", "()", "id", "1"):
        return Perm.identity(degree)
    pos = 0
    cycles = []
    for m in _CYCLE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"unexpected text {text[pos:m.start()]!r} in cycle notation")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        pts = [int(t) for t in body]
        if any(not 1 <= t <= degree for t in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({m.group(1)}) for degree {degree}")
        if pts:
            cycles.append(pts)
    if text[pos:].strip():
        raise ValueError(f"unexpected text {text[pos:]!r} in cycle notation")
    return Perm.from_cycles(degree, cycles)


def parse_monomial(text: str, degree: int) -> MonomialMatrix:
    """``(1 2) + [1, zeta(3), -1]``: e_j -> d_j e_{perm(j)}; bare cycles mean no diagonal."""
    if "+" in text:
        ptxt, dtxt = text.split("+", 1)
        dtxt = dtxt.strip()
        if not (dtxt.startswith("[") and dtxt.endswith("]")):
            raise ValueError("diagonal part must be a bracketed list")
        entries = [e for e in dtxt[1:-1].split(",")]
        if len(entries) != degree:
            raise ValueError(f"diagonal has {len(entries)} entries, expected {degree}")
        phases = []
        for e in entries:
            ph = as_phase(parse_scalar(e))
            if ph is None:
                raise ValueError(f"diagonal entry {e.strip()} is not a root of unity")
            phases.append(ph)
    else:
        ptxt, phases = text, None
    p = parse_cycles(ptxt, degree)
    return MonomialMatrix.make([t - 1 for t in p.images], phases)


def _split(value: str, sep: str) -> list:
    parts = [p.strip() for p in value.split(sep)]
    return [p for p in parts if p]


def _items(entry: "Entry", sep: str) -> list:
    """Split an entry into sub-entries that keep their own column."""
    out = []
    pos = 0
    for raw in entry.value.split(sep):
        lead = len(raw) - len(raw.lstrip())
        if raw.strip():
            out.append(Entry(raw.strip(), entry.line, entry.col + pos + lead))
        pos += len(raw) + len(sep)
    return out


# ---------------------------------------------------------------------------
# file structure


def read_sections(text: str, source: str = "<spec>") -> tuple:
    """Returns (sections, headers): key -> Entry per section, and the header position of each section."""
    sections: dict = {}
    headers: dict = {}
    current = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise SpecError("unterminated section header", ln, col, source)
            name = stripped[1:-1].strip()
            if name not in SECTIONS:
                raise SpecError(f"unknown section [{name}]", ln, col, source)
            if name in sections:
                raise SpecError(f"duplicate section [{name}]", ln, col, source)
            sections[name] = {}
            headers[name] = (ln, col)
            current = name
            continue
        if current is None:
            raise SpecError("key outside of any section", ln, col, source)
        if "=" not in line:
            raise SpecError("expected 'key = value'", ln, col, source)
        key, value = line.split("=", 1)
        key = key.strip()
        if key not in SECTIONS[current]:
            raise SpecError(f"unknown key {key!r} in [{current}]", ln, col, source)
        if key in sections[current]:
            raise SpecError(f"duplicate key {key!r}", ln, col, source)
        rest = line[line.index("=") + 1:]
        vcol = len(line) - len(rest.lstrip()) + 1
        sections[current][key] = Entry(value.strip(), ln, vcol)
    return sections, headers


def _require(sec: dict, key: str, name: str, source: str, where: tuple = (None, None)) -> Entry:
    if key not in sec:
        raise SpecError(f"[{name}] needs a {key!r} entry", *where, source)
    return sec[key]


def _wrap(entry: Entry, source: str, fn, *args):
    try:
        return fn(entry.value, *args)
    except SpecError:
        raise
    except (ValueError, YDError) as err:
        raise SpecError(str(err), entry.line, entry.col, source) from None


def _int(entry: Entry, source: str, lo: int = 1) -> int:
    try:
        v = int(entry.value)
    except ValueError:
        raise SpecError(f"expected an integer, got {entry.value!r}", entry.line, entry.col, source) from None
    if v < lo:
        raise SpecError(f"value must be >= {lo}", entry.line, entry.col, source)
    return v


def _build_group(sec: dict, source: str, cap: int, where: tuple):
    kind = _require(sec, "kind", "group", source, where)
    deg_entry = _require(sec, "degree", "group", source, where)
    deg = _int(deg_entry, source)
    if kind.value == "symmetric":
        if "generators" in sec:
            e = sec["generators"]
            raise SpecError("symmetric groups take no explicit generators", e.line, e.col, source)
        if deg == 1:
            gens = [MonomialMatrix.identity(1)]
        else:
            gens = [MonomialMatrix.from_perm(Perm.transposition(deg, i, i + 1)) for i in range(1, deg)]
        return close_group(gens, cap), gens, deg, "perm"
    if kind.value not in ("permutation", "monomial"):
        raise SpecError(f"unknown group kind {kind.value!r}", kind.line, kind.col, source)
    g_entry = _require(sec, "generators", "group", source, where)
    texts = _split(g_entry.value, ";")
    if not texts:
        raise SpecError("no generators given", g_entry.line, g_entry.col, source)
    if kind.value == "permutation":
        gens = [MonomialMatrix.from_perm(_wrap(e, source, parse_cycles, deg)) for e in _items(g_entry, ";")]
    else:
        gens = [_wrap(e, source, parse_monomial, deg) for e in _items(g_entry, ";")]
    return close_group(gens, cap), gens, deg, kind.value


def _lookup(group: FinGroup, elt: MonomialMatrix, entry: Entry, source: str) -> int:
    k = group.index.get(elt)
    if k is None:
        raise SpecError(f"element {elt} is not in the group", entry.line, entry.col, source)
    return k


def _character(group: FinGroup, entry: Entry | None, source: str):
    if entry is None or entry.value == "trivial":
        return None
    if entry.value == "sign":
        def sign(h):
            el = group.elements[h]
            if not el.is_permutation():
                raise SpecError("sign character needs a permutation group", entry.line, entry.col, source)
            return ONE if Perm(tuple(k + 1 for k in el.perm)).inversions() % 2 == 0 else -ONE
        return sign
    vals = [_wrap(e, source, parse_scalar) for e in _items(entry, ";")]
    if len(vals) != len(group.gen_indices):
        raise SpecError("character needs one value per group generator", entry.line, entry.col, source)
    table = [None] * group.order
    table[group.identity] = ONE
    for i in range(1, group.order):
        p, k = group.parents[i]
        table[i] = table[p] * vals[k]
    return lambda h: table[h]


def _space_roots(space: YDSpace) -> int:
    m = 1
    for mat in space.gen_action:
        for row in mat.rows:
            for x in row:
                if x:
                    m = lcm(m, conductor(x))
    return m


def build_spec(text: str, source: str = "<spec>", group_cap: int = DEFAULT_GROUP_CAP) -> ParsedSpec:
    secs, headers = read_sections(text, source)
    out = ParsedSpec(source=source)
    deg = None
    if "group" in secs:
        out.group, out.group_generators, deg, _ = _build_group(secs["group"], source, group_cap, headers["group"])
    if "space" in secs:
        sp = secs["space"]
        where = headers["space"]
        if not sp:
            raise SpecError("empty [space] section", *where, source)
        kind = _require(sp, "kind", "space", source, where)
        labels = None
        if "labels" in sp:
            labels = _split(sp["labels"].value, ",")
        blame = kind  # entry that a construction error is attributed to
        try:
            if kind.value == "diagonal":
                blame = _require(sp, "q", "space", source, where)
                rows = [[_wrap(e, source, parse_scalar) for e in _items(r, ",")] for r in _items(blame, ";")]
                out.space = diagonal_space(rows, labels)
            elif kind.value in ("rack", "yd"):
                if out.group is None:
                    raise SpecError(f"a {kind.value} space needs a [group] section", kind.line, kind.col, source)
                if kind.value == "rack":
                    blame = _require(sp, "elements", "space", source, where)
                    elems = [_lookup(out.group, _wrap(e, source, parse_monomial, deg), e, source)
                             for e in _items(blame, ";")]
                    chi = _character(out.group, sp.get("character"), source)
                    out.space = rack_space(out.group, elems, chi, labels)
                else:
                    dg = _require(sp, "degrees", "space", source, where)
                    degs = [_lookup(out.group, _wrap(e, source, parse_monomial, deg), e, source)
                            for e in _items(dg, ";")]
                    d = len(degs)
                    blame = _require(sp, "action", "space", source, where)
                    mats = [_wrap(e, source, parse_monomial, d).to_matrix() for e in _items(blame, ";")]
                    if labels is None:
                        labels = [f"v{i + 1}" for i in range(d)]
                    out.space = YDSpace(out.group, labels, degs, mats)
            else:
                raise SpecError(f"unknown space kind {kind.value!r}", kind.line, kind.col, source)
        except YDError as err:
            raise SpecError(str(err), blame.line, blame.col, source) from None
        if labels is not None and len(labels) != out.space.dim:
            e = sp["labels"]
            raise SpecError(f"{len(labels)} labels for a {out.space.dim}-dim space", e.line, e.col, source)
        out.conductor = _space_roots(out.space)
    if "task" in secs:
        for k, e in secs["task"].items():
            out.task[k] = _int(e, source) if k in ("max_degree", "n") else e.value
    return out


def parse_spec(path: str, group_cap: int = DEFAULT_GROUP_CAP) -> ParsedSpec:
    if path.startswith("builtin:"):
        return builtin(path[len("builtin:"):], group_cap)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise SpecError(f"cannot read spec file: {err.strerror}", None, None, path) from None
    return build_spec(text, path, group_cap)


# ---------------------------------------------------------------------------
# built-ins

_S3 = """
[group]
kind = symmetric
degree = 3
[space]
kind = rack
elements = (1 2); (2 3); (1 3)
labels = x, y, z
"""

BUILTIN_TEXT = {
    # transpositions of S_3 under plain conjugation
    "s3-rack": _S3,
    # the same rack with the sign cocycle (Fomin-Kirillov type)
    "s3-fk": _S3 + "character = sign\n",
    "symmetric-swap": "[space]\nkind = diagonal\nq = 1, 1; 1, 1\nlabels = a, b\n",
}


def builtin_names() -> list:
    return sorted(BUILTIN_TEXT) + [f"zeta{n}" for n in range(2, 7)]


def builtin(name: str, group_cap: int = DEFAULT_GROUP_CAP) -> ParsedSpec:
    m = re.fullmatch(r"zeta(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise SpecError(f"unknown builtin {name!r}", None, None, "builtin")
        text = f"[space]\nkind = diagonal\nq = zeta({n})^1\nlabels = x\n"
    elif name in BUILTIN_TEXT:
        text = BUILTIN_TEXT[name]
    else:
        raise SpecError(f"unknown builtin {name!r}; available: {', '.join(builtin_names())}", None, None,
                        "builtin")
    return build_spec(text, f"builtin:{name}", group_cap)


def builtin_space(name: str) -> YDSpace:
    return builtin(name).space
