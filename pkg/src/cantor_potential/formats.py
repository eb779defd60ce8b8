"""Reading and writing kernels, measures and word lists.

Kernel and measure files use JSON syntax with rationals written as strings
``"p/q"`` or ``"p"``. Word files hold one word per line; blank lines are
skipped and ``λ`` denotes the empty word.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .enumeration import EnumerationError, GoodEnumeration
from .kernel import Geometric, Kernel, KernelError, Polynomial, Shift, Table
from .measure import UNIFORM, MeasureError, Node, PointTail, TrieMeasure
from .rational import format_ext, parse_rational
from .words import EventuallyPeriodic, PrefixFreeSet, format_word, parse_word


class FormatError(ValueError):
    """Malformed input; the message names the file and the offending line or field."""


def _rational(value: Any, where: str):
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise FormatError(f"{where}: expected a rational string like \"3/2\", got {value!r}")
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def _int(value: Any, where: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise FormatError(f"{where}: expected an integer >= {minimum}, got {value!r}")
    return value


def _load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# -- kernels ----------------------------------------------------------------------------------


def kernel_from_dict(data: Any, where: str = "kernel") -> Kernel:
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected an object")
    kind = data.get("kind")
    try:
        if kind == "shift":
            if "base" not in data:
                raise FormatError(f"{where}.base: missing")
            base = kernel_from_dict(data["base"], f"{where}.base")
            return Shift(base, _int(data.get("offset"), f"{where}.offset"))
        alphabet = _int(data.get("alphabet", 2), f"{where}.alphabet", minimum=2)
        if kind == "geometric":
            return Geometric(_rational(data.get("ratio"), f"{where}.ratio"), alphabet)
        if kind == "polynomial":
            return Polynomial(_int(data.get("degree"), f"{where}.degree"), alphabet)
        if kind == "table":
            values = data.get("values")
            if not isinstance(values, list):
                raise FormatError(f"{where}.values: expected a list of rationals")
            return Table(
                tuple(_rational(v, f"{where}.values[{i}]") for i, v in enumerate(values)), alphabet
            )
    except KernelError as exc:
        raise FormatError(f"{where}: {exc}") from None
    raise FormatError(f"{where}.kind: unknown kernel kind {kind!r}")


def kernel_to_dict(kernel: Kernel) -> dict:
    if isinstance(kernel, Shift):
        return {"kind": "shift", "offset": kernel.offset, "base": kernel_to_dict(kernel.base)}
    if isinstance(kernel, Geometric):
        return {"kind": "geometric", "ratio": format_ext(kernel.ratio), "alphabet": kernel.alphabet}
    if isinstance(kernel, Polynomial):
        return {"kind": "polynomial", "degree": kernel.degree, "alphabet": kernel.alphabet}
    if isinstance(kernel, Table):
        return {
            "kind": "table",
            "values": [format_ext(v) for v in kernel.values],
            "alphabet": kernel.alphabet,
        }
    raise TypeError(f"no file form for {type(kernel).__name__}")


def load_kernel(path: str | Path) -> Kernel:
    return kernel_from_dict(_load_json(path), str(path))


# -- measures ---------------------------------------------------------------------------------


def _node_from_dict(data: Any, where: str, b: int) -> Node:
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected an object")
    if "mass" not in data:
        raise FormatError(f"{where}.mass: missing")
    mass = _rational(data["mass"], f"{where}.mass")
    children = data.get("children")
    if children is not None:
        if not isinstance(children, dict):
            raise FormatError(f"{where}.children: expected an object keyed by symbol")
        kids = {}
        for key, child in children.items():
            try:
                (sym,) = parse_word(key, b)
            except ValueError:
                raise FormatError(f"{where}.children: bad symbol key {key!r}") from None
            kids[sym] = _node_from_dict(child, f"{where}.children.{key}", b)
        return Node(mass, kids)
    tail = data.get("tail", "uniform")
    if tail == "uniform":
        return Node(mass, None, UNIFORM)
    if isinstance(tail, dict) and isinstance(tail.get("point"), dict):
        pt = tail["point"]
        try:
            head = parse_word(str(pt.get("head", "")), b) if pt.get("head", "") else ()
            period = parse_word(str(pt.get("period", "")), b) if pt.get("period") else ()
            x = EventuallyPeriodic(head, period)
        except ValueError as exc:
            raise FormatError(f"{where}.tail.point: {exc}") from None
        return Node(mass, None, PointTail(x))
    raise FormatError(f"{where}.tail: expected \"uniform\" or {{\"point\": {{...}}}}")


def measure_from_dict(data: Any, where: str = "measure") -> TrieMeasure:
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected an object")
    b = _int(data.get("alphabet", 2), f"{where}.alphabet", minimum=2)
    root = _node_from_dict(data, where, b)
    try:
        return TrieMeasure(root, b)
    except MeasureError as exc:
        raise FormatError(f"{where}: {exc}") from None


def _node_to_dict(node: Node) -> dict:
    out: dict = {"mass": format_ext(node.mass)}
    if node.children is not None:
        out["children"] = {
            format_word((s,)): _node_to_dict(c) for s, c in sorted(node.children.items())
        }
    elif node.tail is UNIFORM:
        out["tail"] = "uniform"
    else:
        x = node.tail.point
        out["tail"] = {
            "point": {"head": format_word(x.head, empty=""), "period": format_word(x.period, empty="")}
        }
    return out


def measure_to_dict(mu: TrieMeasure) -> dict:
    out = _node_to_dict(mu.root)
    if mu.alphabet != 2:
        out["alphabet"] = mu.alphabet
    return out


def dump_measure(mu: TrieMeasure) -> str:
    return json.dumps(measure_to_dict(mu), indent=2, ensure_ascii=False) + "\n"


def load_measure(path: str | Path) -> TrieMeasure:
    return measure_from_dict(_load_json(path), str(path))


def save_measure(mu: TrieMeasure, path: str | Path) -> None:
    Path(path).write_text(dump_measure(mu), encoding="utf-8")


# -- word lists -------------------------------------------------------------------------------


def read_words(path: str | Path, alphabet: int = 2) -> list[tuple[int, tuple]]:
    """``(line number, word)`` for every non-blank line."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    out = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            out.append((lineno, parse_word(line, alphabet)))
        except ValueError as exc:
            raise FormatError(f"{path}: line {lineno}: {exc}") from None
    return out


def load_set(path: str | Path, alphabet: int = 2) -> PrefixFreeSet:
    entries = read_words(path, alphabet)
    seen: dict = {}
    for lineno, w in entries:
        if w in seen:
            raise FormatError(f"{path}: line {lineno}: duplicate of line {seen[w]}")
        seen[w] = lineno
    try:
        return PrefixFreeSet(frozenset(seen), alphabet)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None


def load_enumeration(path: str | Path, alphabet: int = 2) -> GoodEnumeration:
    entries = read_words(path, alphabet)
    try:
        return GoodEnumeration(tuple(w for _, w in entries), alphabet)
    except EnumerationError as exc:
        lineno = entries[exc.stage - 1][0]
        raise FormatError(f"{path}: line {lineno}: {exc}") from None


def dump_words(words) -> str:
    return "".join(format_word(w) + "\n" for w in words)
