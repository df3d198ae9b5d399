"""Parsing and canonical printing of the batch file formats.

Weight systems:      parity = odd / delta = {0, a1, a2, a1+a2}
Algebra specs:       type/parity/delta|lengths/base_dim/dim[...]/quotient/...
Polynomials:         3/2*y1^2*t[a1+a3,2]*t[a2,1]
Morphisms:           one `coord <- polynomial` line per target coordinate
Atlases:             chart/transition blocks plus triple assertions

Printing always emits canonical term order, so textual equality of printed
values coincides with semantic equality, and parse(print(x)) == x.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSpec, Polynomial
from .atlas import Atlas
from .morphism import GradedMorphism
from .weights import (
    PARITY_NAMES,
    QuotientLabel,
    Weight,
    WeightSystem,
    parity_from_name,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)


# -- tokenizer ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<arrow><-)
  | (?P<rarrow>->)
  | (?P<op>[+\-*/^\[\],{}()=])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, line_offset: int = 1) -> list[Token]:
    tokens = []
    line = line_offset
    col = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tok_kind = chunk if kind == "op" else kind
            tokens.append(Token(tok_kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, got {tok.text!r}", tok.line, tok.col)
        return self.next()

    def at(self, kind: str) -> bool:
        return self.peek().kind == kind

    def error(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


# -- weights ------------------------------------------------------------------

def _parse_weight_token(cur: _Cursor, names: dict[str, int], n: int) -> Weight:
    """A sum of generator names, or the literal 0."""
    if cur.at("int"):
        tok = cur.next()
        if tok.text != "0":
            raise ParseError("only the weight 0 may be written as a number", tok.line, tok.col)
        return Weight.zero(n)
    exps = [0] * n
    while True:
        tok = cur.expect("ident")
        if tok.text not in names:
            raise ParseError(f"unknown generator {tok.text!r}", tok.line, tok.col)
        exps[names[tok.text]] += 1
        if cur.at("+"):
            cur.next()
            continue
        break
    return Weight(tuple(exps))


def _scan_generator_names(tokens: list[Token]) -> list[str]:
    seen: list[str] = []
    for tok in tokens:
        if tok.kind == "ident" and tok.text not in seen:
            seen.append(tok.text)
    return seen


def parse_weight_system(text: str) -> WeightSystem:
    """Weight-system file: parity and delta lines, optional generators line."""
    fields = _key_value_lines(_strip_comments(text))
    if "parity" not in fields:
        raise ParseError("missing 'parity' line")
    if "delta" not in fields:
        raise ParseError("missing 'delta' line")
    par = parity_from_name(fields["parity"][0].strip())
    gens = _generator_list(fields)
    members, _ = _parse_member_set(fields["delta"], gens)
    return WeightSystem(len(gens), par, frozenset(members))


def _generator_list(fields: dict) -> list[str]:
    if "generators" in fields:
        raw, line = fields["generators"]
        gens = [g.strip() for g in raw.split(",") if g.strip()]
        if not gens:
            raise ParseError("empty generators line", line)
        return gens
    raw, line = fields["delta"]
    gens = [
        name
        for name in _scan_generator_names(_tokenize(raw, line))
    ]
    if not gens:
        raise ParseError("cannot infer generators from the delta line", line)
    return gens


def _parse_member_set(field, gens: list[str]) -> tuple[list[Weight], int]:
    raw, line = field
    names = {g: i for i, g in enumerate(gens)}
    cur = _Cursor(_tokenize(raw, line))
    cur.expect("{")
    members = []
    if not cur.at("}"):
        while True:
            members.append(_parse_weight_token(cur, names, len(gens)))
            if cur.at(","):
                cur.next()
                continue
            break
    cur.expect("}")
    cur.expect("eof")
    return members, line


def print_weight_system(sys: WeightSystem, gen_names: tuple[str, ...] = ()) -> str:
    names = gen_names or tuple(f"a{i}" for i in range(1, sys.n + 1))
    body = ", ".join(_weight_text(w, names) for w in sys.sorted_members())
    return (
        f"parity = {PARITY_NAMES[sys.generator_parity]}\n"
        f"generators = {', '.join(names)}\n"
        f"delta = {{{body}}}\n"
    )


def _weight_text(w: Weight, names) -> str:
    if w.is_zero:
        return "0"
    return "+".join(names[i] for i, e in enumerate(w.exponents) if e)


# -- algebra specs ------------------------------------------------------------

def _key_value_lines(text: str) -> dict:
    """Map key -> (value text, line number); dim[..] keys collect into 'dim'."""
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key.startswith("dim[") and key.endswith("]"):
            fields.setdefault("dim", []).append((key[4:-1].strip(), value, lineno))
        elif key in fields:
            raise ParseError(f"duplicate key {key!r}", lineno)
        else:
            fields[key] = (value, lineno)
    return fields


def parse_spec(text: str) -> AlgebraSpec:
    fields = _key_value_lines(_strip_comments(text))
    for needed in ("type", "parity", "base_dim"):
        if needed not in fields:
            raise ParseError(f"missing {needed!r} line")
    kind, kind_line = fields["type"]
    par = parity_from_name(fields["parity"][0].strip())
    base_dim = _parse_int_field(fields["base_dim"])
    base_var = fields["base_var"][0].strip() if "base_var" in fields else ""
    fiber_var = fields["fiber_var"][0].strip() if "fiber_var" in fields else ""

    if kind == "delta":
        if "delta" not in fields:
            raise ParseError("missing 'delta' line", kind_line)
        gens = _generator_list(fields)
        members, _ = _parse_member_set(fields["delta"], gens)
        system = WeightSystem(len(gens), par, frozenset(members))
        names = {g: i for i, g in enumerate(gens)}
        dims = {}
        for wtext, dtext, lineno in fields.get("dim", []):
            cur = _Cursor(_tokenize(wtext, lineno))
            w = _parse_weight_token(cur, names, len(gens))
            cur.expect("eof")
            dims[w] = _parse_int_field((dtext, lineno))
        quotient = False
        if "quotient" in fields:
            quotient = _parse_bool_field(fields["quotient"])
        try:
            return AlgebraSpec.delta_type(
                system, base_dim, dims, quotient=quotient,
                base_var=base_var, fiber_var=fiber_var, gen_names=tuple(gens),
            )
        except ValueError as exc:
            raise ParseError(str(exc), kind_line) from None
    if kind == "graded":
        if "lengths" not in fields:
            raise ParseError("missing 'lengths' line", kind_line)
        lengths = _parse_int_set(fields["lengths"])
        dims = {}
        for ktext, dtext, lineno in fields.get("dim", []):
            try:
                k = int(ktext)
            except ValueError:
                raise ParseError(f"expected an integer length, got {ktext!r}", lineno) from None
            dims[k] = _parse_int_field((dtext, lineno))
        try:
            label = QuotientLabel(frozenset(lengths), par)
            return AlgebraSpec.l_type(label, base_dim, dims, base_var=base_var, fiber_var=fiber_var)
        except ValueError as exc:
            raise ParseError(str(exc), kind_line) from None
    raise ParseError(f"unknown algebra type {kind!r}", kind_line)


def _parse_int_field(field) -> int:
    raw, line = field
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"expected an integer, got {raw!r}", line) from None


def _parse_bool_field(field) -> bool:
    raw, line = field
    if raw in ("true", "false"):
        return raw == "true"
    raise ParseError(f"expected true or false, got {raw!r}", line)


def _parse_int_set(field) -> list[int]:
    raw, line = field
    cur = _Cursor(_tokenize(raw, line))
    cur.expect("{")
    out = []
    if not cur.at("}"):
        while True:
            out.append(int(cur.expect("int").text))
            if cur.at(","):
                cur.next()
                continue
            break
    cur.expect("}")
    cur.expect("eof")
    return out


def print_spec(spec: AlgebraSpec) -> str:
    lines = []
    if spec.is_delta:
        lines.append("type = delta")
        lines.append(f"parity = {PARITY_NAMES[spec.gen_parity]}")
        lines.append(f"generators = {', '.join(spec.gen_names)}")
        body = ", ".join(
            _weight_text(w, spec.gen_names) for w in spec.grading.sorted_members()
        )
        lines.append(f"delta = {{{body}}}")
        lines.append(f"base_dim = {spec.base_dim}")
        for w, d in spec.fiber_dims:
            lines.append(f"dim[{_weight_text(w, spec.gen_names)}] = {d}")
        lines.append(f"quotient = {'true' if spec.quotient else 'false'}")
    else:
        lines.append("type = graded")
        lines.append(f"parity = {PARITY_NAMES[spec.gen_parity]}")
        body = ", ".join(str(k) for k in spec.grading.sorted_lengths())
        lines.append(f"lengths = {{{body}}}")
        lines.append(f"base_dim = {spec.base_dim}")
        for w, d in spec.fiber_dims:
            lines.append(f"dim[{w.length}] = {d}")
    lines.append(f"base_var = {spec.base_var}")
    lines.append(f"fiber_var = {spec.fiber_var}")
    return "\n".join(lines) + "\n"


# -- polynomials --------------------------------------------------------------

def _parse_fiber_bracket(cur: _Cursor, spec: AlgebraSpec):
    cur.expect("[")
    if spec.is_delta:
        names = {g: i for i, g in enumerate(spec.gen_names)}
        w = _parse_weight_token(cur, names, spec.n)
    else:
        tok = cur.expect("int")
        w = Weight((int(tok.text),))
    cur.expect(",")
    idx_tok = cur.expect("int")
    cur.expect("]")
    return w, int(idx_tok.text)


def _parse_atom(cur: _Cursor, spec: AlgebraSpec) -> Polynomial:
    tok = cur.peek()
    if tok.kind == "int":
        cur.next()
        value = Fraction(int(tok.text))
        if cur.at("/"):
            cur.next()
            den = cur.expect("int")
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.line, den.col)
            value /= int(den.text)
        return Polynomial.scalar(spec, value)
    if tok.kind == "ident":
        cur.next()
        if cur.at("["):
            if tok.text != spec.fiber_var:
                raise ParseError(
                    f"unknown fiber variable family {tok.text!r} (expected {spec.fiber_var!r})",
                    tok.line, tok.col,
                )
            w, j = _parse_fiber_bracket(cur, spec)
            try:
                return Polynomial.fiber(spec, w, j)
            except ValueError as exc:
                raise ParseError(str(exc), tok.line, tok.col) from None
        name = tok.text
        if name.startswith(spec.base_var) and name[len(spec.base_var):].isdigit():
            i = int(name[len(spec.base_var):])
            try:
                return Polynomial.base(spec, i)
            except ValueError as exc:
                raise ParseError(str(exc), tok.line, tok.col) from None
        raise ParseError(f"unknown variable {name!r}", tok.line, tok.col)
    cur.error(f"expected a number or a variable, got {tok.text!r}")


def _parse_factor(cur: _Cursor, spec: AlgebraSpec) -> Polynomial:
    atom = _parse_atom(cur, spec)
    if cur.at("^"):
        cur.next()
        exp = cur.expect("int")
        return atom ** int(exp.text)
    return atom


def _parse_term(cur: _Cursor, spec: AlgebraSpec) -> Polynomial:
    out = _parse_factor(cur, spec)
    while cur.at("*"):
        cur.next()
        out = out * _parse_factor(cur, spec)
    return out


def _parse_poly_expr(cur: _Cursor, spec: AlgebraSpec) -> Polynomial:
    negate = False
    if cur.at("-"):
        cur.next()
        negate = True
    out = _parse_term(cur, spec)
    if negate:
        out = -out
    while cur.at("+") or cur.at("-"):
        op = cur.next()
        term = _parse_term(cur, spec)
        out = out + (-term if op.kind == "-" else term)
    return out


def parse_polynomial(text: str, spec: AlgebraSpec, line_offset: int = 1) -> Polynomial:
    cur = _Cursor(_tokenize(_strip_comments(text), line_offset))
    poly = _parse_poly_expr(cur, spec)
    cur.expect("eof")
    return poly


# -- morphisms ----------------------------------------------------------------

def _coordinate_table(spec: AlgebraSpec):
    """Printed name -> ('base', i) or ('fiber', (w, j)) for every coordinate."""
    table = {}
    for i in range(1, spec.base_dim + 1):
        table[spec.base_var_name(i)] = ("base", i)
    for w, j in spec.fiber_variables():
        table[spec.fiber_var_name(w, j)] = ("fiber", (w, j))
    return table


def parse_morphism(
    text: str, source: AlgebraSpec, target: AlgebraSpec
) -> GradedMorphism:
    """Assignment lines over the target coordinates; unlisted coordinates
    fall back to the name-matched source variable when one exists."""
    table = _coordinate_table(target)
    assigned: dict[str, Polynomial] = {}
    clean = _strip_comments(text)
    for lineno, raw in enumerate(clean.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "<-" not in line:
            raise ParseError("expected 'coordinate <- polynomial'", lineno)
        lhs, rhs = line.split("<-", 1)
        lhs = lhs.strip()
        if lhs not in table:
            raise ParseError(f"unknown target coordinate {lhs!r}", lineno)
        if lhs in assigned:
            raise ParseError(f"coordinate {lhs!r} assigned twice", lineno)
        assigned[lhs] = parse_polynomial(rhs, source, lineno)

    source_table = _coordinate_table(source)
    base_images = []
    for i in range(1, target.base_dim + 1):
        name = target.base_var_name(i)
        if name in assigned:
            base_images.append(assigned[name])
        elif name in source_table and source_table[name][0] == "base":
            base_images.append(Polynomial.base(source, source_table[name][1]))
        else:
            raise ParseError(f"no assignment for coordinate {name!r}")
    fiber_images = {}
    for w, j in target.fiber_variables():
        name = target.fiber_var_name(w, j)
        if name in assigned:
            fiber_images[(w, j)] = assigned[name]
        elif name in source_table and source_table[name][0] == "fiber":
            sw, sj = source_table[name][1]
            fiber_images[(w, j)] = Polynomial.fiber(source, sw, sj)
        else:
            raise ParseError(f"no assignment for coordinate {name!r}")
    try:
        return GradedMorphism(source, target, base_images, fiber_images)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def print_morphism(m: GradedMorphism) -> str:
    lines = []
    for i, img in enumerate(m.base_images):
        lines.append(f"{m.target.base_var_name(i + 1)} <- {img}")
    for w, j in m.target.fiber_variables():
        lines.append(f"{m.target.fiber_var_name(w, j)} <- {m.fiber_images[(w, j)]}")
    return "\n".join(lines) + "\n"


# -- atlases ------------------------------------------------------------------

_CHART_RE = re.compile(r"^chart\s+(\d+)\s*\{\s*$")
_TRANSITION_RE = re.compile(r"^transition\s+(\d+)\s*->\s*(\d+)\s*\{\s*$")
_TRIPLE_RE = re.compile(r"^triple\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_atlas(text: str) -> Atlas:
    clean = _strip_comments(text)
    lines = clean.splitlines()
    charts: dict[int, AlgebraSpec] = {}
    transition_blocks: list[tuple[int, int, str, int]] = []
    triples: list[tuple[int, int, int]] = []
    idx = 0
    while idx < len(lines):
        line = lines[idx].strip()
        if not line:
            idx += 1
            continue
        m = _CHART_RE.match(line)
        if m:
            block, idx = _collect_block(lines, idx + 1)
            cid = int(m.group(1))
            if cid in charts:
                raise ParseError(f"chart {cid} defined twice", idx)
            try:
                charts[cid] = parse_spec(block)
            except ParseError as exc:
                raise ParseError(f"in chart {cid}: {exc.message}", exc.line, exc.col) from None
            continue
        m = _TRANSITION_RE.match(line)
        if m:
            start = idx + 1
            block, idx = _collect_block(lines, start)
            transition_blocks.append((int(m.group(1)), int(m.group(2)), block, start))
            continue
        m = _TRIPLE_RE.match(line)
        if m:
            triples.append((int(m.group(1)), int(m.group(2)), int(m.group(3))))
            idx += 1
            continue
        raise ParseError(f"unexpected line {line!r}", idx + 1)

    if sorted(charts) != list(range(1, len(charts) + 1)):
        raise ParseError("chart ids must be 1..m with no gaps")
    chart_list = tuple(charts[i] for i in range(1, len(charts) + 1))
    transitions = {}
    for i, j, block, start in transition_blocks:
        if i not in charts or j not in charts:
            raise ParseError(f"transition {i} -> {j} references a missing chart", start)
        try:
            transitions[(i, j)] = parse_morphism(block, charts[i], charts[j])
        except ParseError as exc:
            raise ParseError(
                f"in transition {i} -> {j}: {exc.message}", exc.line, exc.col
            ) from None
    try:
        return Atlas(chart_list, transitions, tuple(triples))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _collect_block(lines: list[str], start: int) -> tuple[str, int]:
    body = []
    idx = start
    while idx < len(lines):
        if lines[idx].strip() == "}":
            return "\n".join(body), idx + 1
        body.append(lines[idx])
        idx += 1
    raise ParseError("unterminated block (missing '}')", start)


def print_atlas(a: Atlas) -> str:
    chunks = []
    for i in range(1, a.size + 1):
        body = "\n".join("  " + line for line in print_spec(a.chart(i)).splitlines())
        chunks.append(f"chart {i} {{\n{body}\n}}")
    for (i, j), m in a.sorted_transitions():
        body = "\n".join("  " + line for line in print_morphism(m).splitlines())
        chunks.append(f"transition {i} -> {j} {{\n{body}\n}}")
    for i, j, k in sorted(a.triples):
        chunks.append(f"triple ({i}, {j}, {k})")
    return "\n\n".join(chunks) + "\n"
