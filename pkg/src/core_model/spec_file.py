"""Textual gambler spec files.

Grammar, one directive per line, ``#`` starts a comment::

    alphabet L=<int> dollar=<yes|no>
    heads <h>
    states <name> <name> ...
    initial <name>
    capital <num/den>
    hedge <num/den>                                  (optional)
    name <text>                                      (optional)
    bet <state> <p_0> ... <p_{|Sigma|-1}>            (symbol order)
    trans <state> <pat_1> ... <pat_h> -> <state> <mask>
    meta <key> <value ...>

A pattern is an L-bit block, ``$`` or the wildcard ``*``; patterns list the
trailing heads first and the leading head last. The mask has one 0/1
character per trailing head (``-`` when h = 1). For each state the first
matching ``trans`` row, in file order, wins. Rationals are parsed exactly.
"""

from fractions import Fraction
from typing import Optional

from src.core_model.alphabet import AlphabetDescriptor
from src.core_model.bets import BetDistribution
from src.core_model.compile import compile_spec
from src.core_model.spec import GamblerSpec, TableMachine, TransitionRow, table_spec
from src.shared.errors import SpecFormatError
from src.shared.rationals import format_rational, parse_rational

_REQUIRED = ("alphabet", "heads", "states", "initial")


def _parse_alphabet(tokens: list[str], lineno: int) -> AlphabetDescriptor:
    options = dict(t.split("=", 1) for t in tokens if "=" in t)
    try:
        block_bits = int(options["L"])
        dollar = options.get("dollar", "no")
    except (KeyError, ValueError):
        raise SpecFormatError(f"line {lineno}: expected 'alphabet L=<int> dollar=<yes|no>'") from None
    if dollar not in ("yes", "no"):
        raise SpecFormatError(f"line {lineno}: dollar must be yes or no, got {dollar!r}")
    return AlphabetDescriptor(block_bits=block_bits, has_dollar=dollar == "yes")


def _parse_mask(token: str, trailing: int, lineno: int) -> tuple[bool, ...]:
    if trailing == 0:
        if token != "-":
            raise SpecFormatError(f"line {lineno}: a 1-head gambler takes mask '-', got {token!r}")
        return ()
    if len(token) != trailing or set(token) - {"0", "1"}:
        raise SpecFormatError(f"line {lineno}: mask {token!r} must have {trailing} characters of 0/1")
    return tuple(c == "1" for c in token)


def parse_spec_file(text: str) -> GamblerSpec:
    """Parse the textual grammar into a table-driven GamblerSpec."""
    header: dict[str, list[str]] = {}
    bet_lines: list[tuple[int, list[str]]] = []
    trans_lines: list[tuple[int, list[str]]] = []
    metadata: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *tokens = line.split()
        if keyword == "bet":
            bet_lines.append((lineno, tokens))
        elif keyword == "trans":
            trans_lines.append((lineno, tokens))
        elif keyword == "meta":
            if not tokens:
                raise SpecFormatError(f"line {lineno}: meta needs a key")
            metadata[tokens[0]] = " ".join(tokens[1:])
        elif keyword in ("alphabet", "heads", "states", "initial", "capital", "hedge", "name"):
            if keyword in header:
                raise SpecFormatError(f"line {lineno}: duplicate '{keyword}' directive")
            header[keyword] = [str(lineno), *tokens]
        else:
            raise SpecFormatError(f"line {lineno}: unknown directive {keyword!r}")

    missing = [k for k in _REQUIRED if k not in header]
    if missing:
        raise SpecFormatError(f"missing directives: {', '.join(missing)}")

    alphabet = _parse_alphabet(header["alphabet"][1:], int(header["alphabet"][0]))
    try:
        heads = int(header["heads"][1])
    except (IndexError, ValueError):
        raise SpecFormatError(f"line {header['heads'][0]}: heads must be an integer") from None
    states = tuple(header["states"][1:])
    if not states:
        raise SpecFormatError(f"line {header['states'][0]}: no states declared")
    initial = header["initial"][1] if len(header["initial"]) > 1 else ""
    capital = parse_rational(header["capital"][1]) if "capital" in header else Fraction(1)
    hedge: Optional[Fraction] = parse_rational(header["hedge"][1]) if "hedge" in header else None
    name = " ".join(header["name"][1:]) if "name" in header else "spec-file"

    bet_rows: dict[str, BetDistribution] = {}
    for lineno, tokens in bet_lines:
        state, *probabilities = tokens
        if state not in states:
            raise SpecFormatError(f"line {lineno}: bet row for undeclared state {state!r}")
        if len(probabilities) != alphabet.size:
            raise SpecFormatError(
                f"line {lineno}: bet row has {len(probabilities)} entries, alphabet has {alphabet.size}"
            )
        try:
            row = tuple(parse_rational(p) for p in probabilities)
        except ValueError as exc:
            raise SpecFormatError(f"line {lineno}: {exc}") from None
        bet_rows[state] = BetDistribution(row)

    rows: dict[str, list[TransitionRow]] = {s: [] for s in states}
    for lineno, tokens in trans_lines:
        if len(tokens) != heads + 4 or tokens[heads + 1] != "->":
            raise SpecFormatError(
                f"line {lineno}: expected 'trans <state> <{heads} patterns> -> <state> <mask>'"
            )
        state, patterns, target, mask = tokens[0], tokens[1 : heads + 1], tokens[heads + 2], tokens[heads + 3]
        if state not in states or target not in states:
            raise SpecFormatError(f"line {lineno}: transition mentions an undeclared state")
        try:
            pattern = tuple(None if p == "*" else alphabet.parse_symbol(p) for p in patterns)
        except ValueError as exc:
            raise SpecFormatError(f"line {lineno}: {exc}") from None
        rows[state].append(TransitionRow(pattern, target, _parse_mask(mask, heads - 1, lineno)))

    machine = TableMachine(
        states=states,
        rows={s: tuple(r) for s, r in rows.items()},
        bet_rows=bet_rows,
    )
    return table_spec(
        heads=heads,
        alphabet=alphabet,
        machine=machine,
        initial_state=initial,
        initial_capital=capital,
        hedge=hedge,
        name=name,
        metadata=metadata,
    )


def _format_mask(mask: tuple[bool, ...]) -> str:
    return "".join("1" if m else "0" for m in mask) or "-"


def format_spec_file(spec: GamblerSpec, *, state_cap: int = 200_000) -> str:
    """Write any spec, procedural or not, as an explicit table file.

    States are renamed ``q0, q1, ...`` in discovery order. A state whose
    transitions agree on every observation gets a single wildcard row.
    """
    compiled = compile_spec(spec, state_cap=state_cap)
    compiled.close()
    alphabet = spec.alphabet
    names = [f"q{i}" for i in range(len(compiled.tokens))]
    lines = [
        f"# {spec.name}",
        f"name {spec.name}",
        f"alphabet L={alphabet.block_bits} dollar={'yes' if alphabet.has_dollar else 'no'}",
        f"heads {spec.heads}",
        "states " + " ".join(names),
        f"initial {names[compiled.initial_id]}",
        f"capital {format_rational(spec.initial_capital)}",
    ]
    if spec.hedge is not None:
        lines.append(f"hedge {format_rational(spec.hedge)}")
    for key in sorted(spec.metadata):
        lines.append(f"meta {key} {spec.metadata[key]}")
    wildcard = " ".join(["*"] * spec.heads)
    for sid, name in enumerate(names):
        bet = compiled.bet_rows[sid]
        lines.append(f"bet {name} " + " ".join(format_rational(p) for p in bet))
        row = compiled.transitions[sid]
        entries = set(row)
        if len(entries) == 1:
            target, mask_id = row[0]  # type: ignore[misc]
            mask = tuple(i in compiled.masks[mask_id] for i in range(spec.heads - 1))
            lines.append(f"trans {name} {wildcard} -> {names[target]} {_format_mask(mask)}")
            continue
        for code, (target, mask_id) in enumerate(row):  # type: ignore[misc]
            observation = compiled.decode(code)
            pattern = " ".join(alphabet.format_symbol(s) for s in observation)
            mask = tuple(i in compiled.masks[mask_id] for i in range(spec.heads - 1))
            lines.append(f"trans {name} {pattern} -> {names[target]} {_format_mask(mask)}")
    return "\n".join(lines) + "\n"
