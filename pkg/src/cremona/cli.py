"""Batch front end: run analysis scripts and emit line-delimited reports.

A session script declares one ring, binds ideals and matrices, and runs
commands against the bindings::

    ring R = QQ[x0..x2];
    ideal I = x1*x2, x0*x2, x0*x1;
    inverse I;
    invfactor I;
    sympow I 2;
    symrees I lmax=3;

Supported commands: ``inverse I``, ``invfactor I``, ``sympow I <level>
[sat=<m|ideal-name|element>]``, ``symrees I [lmax=N] [sat=...]``,
``appendix M`` and ``template n r [seed=N]``.  Each command produces one
JSON record with keys ``command``, ``status``, ``values``, ``degrees``,
``verdicts``, ``field`` and ``elapsed_ms``; reports are deterministic
for a fixed script, seed and field, apart from ``elapsed_ms``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from importlib import resources

from .families import (DegenerateTemplate, appendix_construct,
                       sylvester_chain, template_ideal)
from .groebner import DeadlineExceeded, deadline
from .ideals import Ideal
from .maps import RationalMapSpec, invert
from .rings import Field, FormMatrix, ParseError, PolyRing, QQ
from .symbolic import SaturationTarget, SymbolicFiltration, symbolic_report

__all__ = ["ScriptError", "SessionScript", "parse_session", "run_script",
           "render_report", "main"]

_COMMANDS = ("inverse", "invfactor", "sympow", "symrees", "appendix",
             "template")


class ScriptError(Exception):
    """Script problem with a source position."""

    def __init__(self, message, line, col):
        super().__init__("line %d, column %d: %s" % (line, col, message))
        self.line = line
        self.col = col


_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>\d+)
  | (?P<dots>\.\.)
  | (?P<punct>[][()=,;^*+\-/])
""", re.VERBOSE)


class _Token:
    __slots__ = ("kind", "text", "line", "col", "start", "end")

    def __init__(self, kind, text, line, col, start, end):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col
        self.start = start
        self.end = end


def _tokenize(source):
    tokens = []
    pos = 0
    line = 1
    linestart = 0
    n = len(source)
    while pos < n:
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ScriptError("unexpected character %r" % source[pos],
                              line, pos - linestart + 1)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, text, line, pos - linestart + 1,
                                 pos, m.end()))
        nl = text.count("\n")
        if nl:
            line += nl
            linestart = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("end", "", line, n - linestart + 1, n, n))
    return tokens


class _Cursor:
    def __init__(self, source, tokens):
        self.source = source
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def expect(self, text, what=None):
        tok = self.next()
        if tok.text != text:
            raise ScriptError("expected %r%s, found %r"
                              % (text, " " + what if what else "",
                                 tok.text or "end of input"),
                              tok.line, tok.col)
        return tok

    def expect_kind(self, kind, what):
        tok = self.next()
        if tok.kind != kind:
            raise ScriptError("expected %s, found %r"
                              % (what, tok.text or "end of input"),
                              tok.line, tok.col)
        return tok


class Command:
    """One parsed command, with its source text and position."""

    __slots__ = ("op", "args", "text", "line", "col")

    def __init__(self, op, args, text, line, col):
        self.op = op
        self.args = args
        self.text = text
        self.line = line
        self.col = col


class SessionScript:
    """Parsed session: the ring, the bindings and the command list."""

    __slots__ = ("ring", "ring_name", "bindings", "commands")

    def __init__(self, ring, ring_name, bindings, commands):
        self.ring = ring
        self.ring_name = ring_name
        self.bindings = bindings
        self.commands = commands


def _expand_names(first, last, line, col):
    m1 = re.fullmatch(r"([A-Za-z_]+)(\d+)", first)
    m2 = re.fullmatch(r"([A-Za-z_]+)(\d+)", last)
    if not m1 or not m2 or m1.group(1) != m2.group(1):
        raise ScriptError("range endpoints %r..%r need a shared letter "
                          "prefix and numeric suffixes" % (first, last),
                          line, col)
    prefix = m1.group(1)
    lo, hi = int(m1.group(2)), int(m2.group(2))
    if hi < lo:
        raise ScriptError("empty variable range %r..%r" % (first, last),
                          line, col)
    return tuple("%s%d" % (prefix, k) for k in range(lo, hi + 1))


def _parse_ring(cur):
    cur.expect("ring")
    name = cur.expect_kind("name", "a ring name").text
    cur.expect("=")
    field_tok = cur.expect_kind("name", "QQ or Fp(p)")
    if field_tok.text == "QQ":
        field = QQ
    elif field_tok.text == "Fp":
        cur.expect("(")
        p = int(cur.expect_kind("number", "a prime").text)
        cur.expect(")")
        try:
            field = Field(p)
        except ValueError as e:
            raise ScriptError(str(e), field_tok.line, field_tok.col)
    else:
        raise ScriptError("unknown field %r (use QQ or Fp(p))"
                          % field_tok.text, field_tok.line, field_tok.col)
    cur.expect("[")
    first = cur.expect_kind("name", "a variable name")
    if cur.peek().text == "..":
        cur.next()
        last = cur.expect_kind("name", "a variable name")
        names = _expand_names(first.text, last.text, first.line, first.col)
    else:
        names = [first.text]
        while cur.peek().text == ",":
            cur.next()
            names.append(cur.expect_kind("name", "a variable name").text)
        names = tuple(names)
    cur.expect("]")
    cur.expect(";")
    return PolyRing(names, field), name


def _chunk_until(cur, stop_at_comma):
    """Collect source text until ';' (or a top-level ',' when asked)."""
    depth = 0
    start_tok = cur.peek()
    last_end = start_tok.start
    while True:
        tok = cur.peek()
        if tok.kind == "end":
            raise ScriptError("missing ';'", tok.line, tok.col)
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
        elif depth == 0 and (tok.text == ";"
                             or (stop_at_comma and tok.text == ",")):
            break
        cur.next()
        last_end = tok.end
    text = cur.source[start_tok.start:last_end]
    if not text.strip():
        tok = cur.peek()
        raise ScriptError("expected a polynomial, found %r" % tok.text,
                          tok.line, tok.col)
    return text, start_tok


def _parse_poly(ring, text, tok):
    try:
        return ring.parse(text)
    except ParseError as e:
        raise ScriptError("bad polynomial %r: %s" % (text.strip(), e),
                          tok.line, tok.col)


def _parse_poly_list(cur, ring):
    polys = []
    while True:
        text, tok = _chunk_until(cur, stop_at_comma=True)
        polys.append(_parse_poly(ring, text, tok))
        if cur.peek().text == ",":
            cur.next()
            continue
        cur.expect(";")
        return polys


def _lookup(bindings, name_tok, want, op):
    if name_tok.text not in bindings:
        raise ScriptError("unbound name %r" % name_tok.text,
                          name_tok.line, name_tok.col)
    kind, value = bindings[name_tok.text]
    if kind != want:
        raise ScriptError("%s needs %s binding, %r is %s"
                          % (op, "an ideal" if want == "ideal"
                             else "a matrix", name_tok.text,
                             "an ideal" if kind == "ideal" else "a matrix"),
                          name_tok.line, name_tok.col)
    return value


def _sat_chunk(cur):
    """Option value for sat=: raw text until ';' or the next key=."""
    depth = 0
    start_tok = cur.peek()
    last_end = start_tok.start
    while True:
        tok = cur.peek()
        if tok.kind == "end":
            raise ScriptError("missing ';'", tok.line, tok.col)
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
        elif depth == 0:
            if tok.text == ";":
                break
            if (tok.kind == "name"
                    and cur.tokens[cur.i + 1].text == "="):
                break
        cur.next()
        last_end = tok.end
    text = cur.source[start_tok.start:last_end].strip()
    if not text:
        raise ScriptError("sat= needs a value", start_tok.line,
                          start_tok.col)
    return text, start_tok


def _parse_options(cur, allowed):
    """key=value options before ';'.  Values: int, or raw text for sat."""
    opts = {}
    toks = {}
    while cur.peek().text != ";":
        key_tok = cur.expect_kind("name", "an option name")
        if key_tok.text not in allowed:
            raise ScriptError("unknown option %r (allowed: %s)"
                              % (key_tok.text, ", ".join(sorted(allowed))),
                              key_tok.line, key_tok.col)
        if key_tok.text in opts:
            raise ScriptError("duplicate option %r" % key_tok.text,
                              key_tok.line, key_tok.col)
        cur.expect("=")
        if key_tok.text == "sat":
            opts["sat"], toks["sat"] = _sat_chunk(cur)
        else:
            tok = cur.expect_kind("number", "an integer")
            opts[key_tok.text] = int(tok.text)
            toks[key_tok.text] = tok
    cur.expect(";")
    return opts, toks


def _validate_sat(text, tok, bindings, ring):
    if text == "m":
        return
    if text in bindings:
        if bindings[text][0] != "ideal":
            raise ScriptError("sat=%s names a matrix, not an ideal" % text,
                              tok.line, tok.col)
        return
    _parse_poly(ring, text, tok)


def parse_session(source):
    """Parse a session script; raise ScriptError with line/column on bad input."""
    cur = _Cursor(source, _tokenize(source))
    ring, ring_name = _parse_ring(cur)
    bindings = {}
    commands = []
    while True:
        tok = cur.peek()
        if tok.kind == "end":
            break
        if tok.kind != "name":
            raise ScriptError("expected a statement, found %r" % tok.text,
                              tok.line, tok.col)
        if tok.text == "ring":
            raise ScriptError("ring already declared", tok.line, tok.col)
        if tok.text == "ideal":
            cur.next()
            name = cur.expect_kind("name", "an ideal name").text
            cur.expect("=")
            polys = _parse_poly_list(cur, ring)
            bindings[name] = ("ideal", Ideal(ring, tuple(polys)))
            continue
        if tok.text == "matrix":
            cur.next()
            name = cur.expect_kind("name", "a matrix name").text
            cur.expect("[")
            nrows = int(cur.expect_kind("number", "a row count").text)
            cur.expect("]")
            cur.expect("[")
            ncols = int(cur.expect_kind("number", "a column count").text)
            cur.expect("]")
            eq = cur.expect("=")
            entries = _parse_poly_list(cur, ring)
            if len(entries) != nrows * ncols:
                raise ScriptError("matrix %s declared %dx%d but %d entries "
                                  "given" % (name, nrows, ncols,
                                             len(entries)),
                                  eq.line, eq.col)
            rows = [entries[r * ncols:(r + 1) * ncols]
                    for r in range(nrows)]
            bindings[name] = ("matrix", FormMatrix(ring, rows))
            continue
        if tok.text not in _COMMANDS:
            raise ScriptError("unknown statement %r" % tok.text,
                              tok.line, tok.col)

        op_tok = cur.next()
        op = op_tok.text
        args = {}
        if op in ("inverse", "invfactor", "appendix"):
            name_tok = cur.expect_kind("name", "a binding name")
            want = "matrix" if op == "appendix" else "ideal"
            _lookup(bindings, name_tok, want, op)
            args["name"] = name_tok.text
            semi = cur.expect(";")
        elif op == "sympow":
            name_tok = cur.expect_kind("name", "an ideal name")
            _lookup(bindings, name_tok, "ideal", op)
            args["name"] = name_tok.text
            args["level"] = int(cur.expect_kind("number", "a level").text)
            opts, toks = _parse_options(cur, {"sat"})
            if "sat" in opts:
                _validate_sat(opts["sat"], toks["sat"], bindings, ring)
                args["sat"] = opts["sat"]
            semi = cur.tokens[cur.i - 1]
        elif op == "symrees":
            name_tok = cur.expect_kind("name", "an ideal name")
            _lookup(bindings, name_tok, "ideal", op)
            args["name"] = name_tok.text
            opts, toks = _parse_options(cur, {"lmax", "sat"})
            if "lmax" in opts:
                args["lmax"] = opts["lmax"]
            if "sat" in opts:
                _validate_sat(opts["sat"], toks["sat"], bindings, ring)
                args["sat"] = opts["sat"]
            semi = cur.tokens[cur.i - 1]
        else:
            args["n"] = int(cur.expect_kind("number", "a size").text)
            args["r"] = int(cur.expect_kind("number", "a degree").text)
            opts, _ = _parse_options(cur, {"seed"})
            if "seed" in opts:
                args["seed"] = opts["seed"]
            semi = cur.tokens[cur.i - 1]
        text = re.sub(r"\s+", " ", cur.source[op_tok.start:semi.end]).strip()
        commands.append(Command(op, args, text, op_tok.line, op_tok.col))
    return SessionScript(ring, ring_name, bindings, commands)


def _range_text(names):
    m = re.fullmatch(r"([A-Za-z_]+)(\d+)", names[0])
    if m and len(names) > 1:
        prefix, lo = m.group(1), int(m.group(2))
        want = tuple("%s%d" % (prefix, lo + k) for k in range(len(names)))
        if tuple(names) == want:
            return "%s..%s" % (names[0], names[-1])
    return ", ".join(names)


def render_session(script):
    """Canonical source text; parsing it back restores the same ring,
    bindings, and command list."""
    field = script.ring.field
    ftxt = ("QQ" if field.characteristic == 0
            else "Fp(%d)" % field.characteristic)
    lines = ["ring %s = %s[%s];" % (script.ring_name, ftxt,
                                    _range_text(script.ring.names))]
    for name, (kind, value) in script.bindings.items():
        if kind == "ideal":
            lines.append("ideal %s = %s;"
                         % (name, ", ".join(str(g) for g in value.gens)))
        else:
            ents = ", ".join(str(value[i, j])
                             for i in range(value.nrows)
                             for j in range(value.ncols))
            lines.append("matrix %s[%d][%d] = %s;"
                         % (name, value.nrows, value.ncols, ents))
    for cmd in script.commands:
        lines.append(cmd.text)
    return "\n".join(lines) + "\n"


def _target_for(script, sat_text, cache):
    if sat_text is None or sat_text == "m":
        return None, "m"
    if sat_text in script.bindings:
        return (SaturationTarget.ideal(script.bindings[sat_text][1]),
                "ideal:" + sat_text)
    poly = script.ring.parse(sat_text)
    return SaturationTarget.element(poly), "elem:" + str(poly)


def _filtration(script, name, sat_text, cache):
    target, key = _target_for(script, sat_text, cache)
    full = ("filtration", name, key)
    if full not in cache:
        ideal = script.bindings[name][1]
        cache[full] = SymbolicFiltration(ideal, target)
    return cache[full]


def _inverse_of(script, name, cache):
    key = ("invert", name)
    if key not in cache:
        ideal = script.bindings[name][1]
        cache[key] = invert(RationalMapSpec.from_ideal(ideal))
    return cache[key]


def _exec_inverse(script, cmd, cache, limits):
    inv = _inverse_of(script, cmd.args["name"], cache)
    if inv is None:
        return [], [], {"birational": False}
    return ([str(g) for g in inv.inverse], [inv.degree],
            {"birational": True})


def _exec_invfactor(script, cmd, cache, limits):
    inv = _inverse_of(script, cmd.args["name"], cache)
    if inv is None:
        raise ValueError("map is not birational, no inversion factor")
    return ([str(inv.factor)], [inv.factor.homogeneous_degree()],
            {"birational": True, "inverse_degree": inv.degree})


def _exec_sympow(script, cmd, cache, limits):
    F = _filtration(script, cmd.args["name"], cmd.args.get("sat"), cache)
    ell = cmd.args["level"]
    fresh = F.fresh(ell)
    equals = F.power(ell).contains_ideal(F.level(ell))
    return ([str(g) for g in fresh],
            [g.homogeneous_degree() for g in fresh],
            {"equals_power": equals})


def _exec_symrees(script, cmd, cache, limits):
    lmax = cmd.args.get("lmax", limits["lmax"])
    F = _filtration(script, cmd.args["name"], cmd.args.get("sat"), cache)
    inv = _inverse_of(script, cmd.args["name"], cache)
    factor = inv.factor if inv is not None else None
    weight = inv.degree if inv is not None else None
    report = symbolic_report(script.bindings[cmd.args["name"]][1],
                             lmax=lmax, target=F.target, factor=factor,
                             weight=weight)
    verdicts = {
        "birational": inv is not None,
        "condition": {str(v.level): (v.verdict if v.witness is None
                                     else "%s:%s" % (v.verdict, v.witness))
                      for v in report.condition},
    }
    if inv is not None:
        verdicts["inverse_degree"] = inv.degree
        verdicts["expected_form"] = {
            str(ell): report.expected.levels[ell]
            for ell in sorted(report.expected.levels)}
        verdicts["factor_in_symbolic"] = report.factor_facts["in_symbolic"]
    degrees = {"fresh": {str(lv["level"]):
                         [g.homogeneous_degree() for g in lv["fresh"]]
                         for lv in report.levels}}
    values = [str(factor)] if factor is not None else []
    return values, degrees, verdicts


def _exec_appendix(script, cmd, cache, limits):
    mat = script.bindings[cmd.args["name"]][1]
    res = appendix_construct(mat)
    values = ([str(g) for g in res.inverse]
              if res.inverse is not None else [])
    degrees = ([res.verdicts["inverse_degree"]]
               if res.inverse is not None else [])
    return values, degrees, dict(res.verdicts)


def _exec_template(script, cmd, cache, limits):
    n, r = cmd.args["n"], cmd.args["r"]
    base_seed = cmd.args.get("seed", limits["seed"])
    rejected = []
    seed = base_seed
    for attempt in range(4):
        try:
            inst = template_ideal(n, r, seed=seed,
                                  field=script.ring.field)
            diag = inst.diagnostics()
            chain = sylvester_chain(inst) if n == 3 else None
            inverses = inst.inverses() if n == 3 else ()
            break
        except DegenerateTemplate as e:
            rejected.append({"seed": seed, "reason": str(e)})
            if attempt == 3:
                raise ValueError("no general-position instance in %d draws"
                                 % (attempt + 1))
            seed = seed + 1000003
    verdicts = {
        "seed": seed,
        "codimension": diag["codimension"],
        "multiplicity": int(diag["multiplicity"]),
        "expected_multiplicity": diag["expected_multiplicity"],
    }
    if "edeg" in diag:
        verdicts["edeg"] = diag["edeg"]
    if chain is not None:
        verdicts["chain_bidegrees"] = [list(b) for b in chain.bidegrees]
        verdicts["chain_matches_rees"] = chain.conjecture_equal
    if inverses:
        verdicts["inverse_count"] = len(inverses)
        verdicts["factor_degrees"] = [d.factor.homogeneous_degree()
                                      for d in inverses]
    if rejected:
        verdicts["rejected"] = rejected
    gens = inst.ideal.gens
    return ([str(g) for g in gens],
            [g.homogeneous_degree() for g in gens], verdicts)


_EXEC = {
    "inverse": _exec_inverse,
    "invfactor": _exec_invfactor,
    "sympow": _exec_sympow,
    "symrees": _exec_symrees,
    "appendix": _exec_appendix,
    "template": _exec_template,
}


def run_script(script, lmax=4, deadline_s=600, seed=0):
    """Run all commands; one record each, failures do not stop the run."""
    limits = {"lmax": lmax, "seed": seed}
    cache = {}
    records = []
    for cmd in script.commands:
        t0 = time.perf_counter()
        try:
            with deadline(deadline_s):
                values, degrees, verdicts = _EXEC[cmd.op](script, cmd,
                                                          cache, limits)
            status = "ok"
        except DeadlineExceeded:
            status, values, degrees, verdicts = "timeout", [], [], {}
        except Exception as e:
            status, values, degrees = "failed", [], []
            verdicts = {"error": "%s: %s" % (type(e).__name__, e)}
        elapsed = int((time.perf_counter() - t0) * 1000)
        records.append({
            "command": cmd.text,
            "status": status,
            "values": values,
            "degrees": degrees,
            "verdicts": verdicts,
            "field": script.ring.field.label,
            "elapsed_ms": elapsed,
        })
    return records


def render_report(records):
    """One compact JSON object per line."""
    return "".join(json.dumps(rec, separators=(",", ":")) + "\n"
                   for rec in records)


def _run_file(path, lmax, deadline_s, seed):
    with open(path, encoding="utf-8") as fh:
        source = fh.read()
    script = parse_session(source)
    return run_script(script, lmax=lmax, deadline_s=deadline_s, seed=seed)


def _strip_elapsed(records):
    return [{k: v for k, v in rec.items() if k != "elapsed_ms"}
            for rec in records]


def _cmd_run(args):
    try:
        records = _run_file(args.script, args.lmax, args.deadline, args.seed)
    except ScriptError as e:
        print("%s: %s" % (args.script, e), file=sys.stderr)
        return 2
    except OSError as e:
        print(str(e), file=sys.stderr)
        return 2
    text = render_report(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(rec["status"] == "ok" for rec in records) else 1


def corpus_dir():
    """Directory holding the bundled session scripts and expected reports."""
    return resources.files("cremona").joinpath("corpus")


def _cmd_fixtures(args, base=None):
    base = corpus_dir() if base is None else base
    sessions = sorted(p.name for p in base.iterdir()
                      if p.name.endswith(".session"))
    if not sessions:
        print("no bundled sessions found", file=sys.stderr)
        return 2
    bad = 0
    for name in sessions:
        stem = name[:-len(".session")]
        source = base.joinpath(name).read_text(encoding="utf-8")
        t0 = time.perf_counter()
        try:
            records = run_script(parse_session(source), lmax=args.lmax,
                                 deadline_s=args.deadline, seed=args.seed)
        except ScriptError as e:
            print("%s: parse error: %s" % (stem, e))
            bad += 1
            continue
        elapsed = time.perf_counter() - t0
        expected_path = base.joinpath(stem + ".expected.jsonl")
        try:
            expected_text = expected_path.read_text(encoding="utf-8")
        except FileNotFoundError:
            print("%s: no expected report stored" % stem)
            bad += 1
            continue
        expected = [json.loads(line)
                    for line in expected_text.splitlines() if line.strip()]
        got = _strip_elapsed(records)
        want = _strip_elapsed(expected)
        failures = [rec for rec in records if rec["status"] != "ok"]
        if got == want and not failures:
            print("%s: ok (%d records, %.1fs)" % (stem, len(records),
                                                  elapsed))
            continue
        bad += 1
        if failures:
            print("%s: %d record(s) not ok" % (stem, len(failures)))
        for k, (g, w) in enumerate(zip(got, want)):
            if g != w:
                print("%s: record %d differs" % (stem, k))
                print("  expected: %s" % json.dumps(w, separators=(",", ":")))
                print("  got:      %s" % json.dumps(g, separators=(",", ":")))
        if len(got) != len(want):
            print("%s: %d records, expected %d" % (stem, len(got),
                                                   len(want)))
    return 1 if bad else 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="cremona",
        description="Exact analysis of Cremona maps and symbolic powers.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    p_run = sub.add_parser("run", help="run a session script")
    p_run.add_argument("script")
    p_run.add_argument("--lmax", type=int, default=4)
    p_run.add_argument("--deadline", type=float, default=600.0)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--out")
    p_run.set_defaults(func=_cmd_run)
    p_fix = sub.add_parser("fixtures",
                           help="run the bundled corpus and diff reports")
    p_fix.add_argument("--lmax", type=int, default=4)
    p_fix.add_argument("--deadline", type=float, default=600.0)
    p_fix.add_argument("--seed", type=int, default=0)
    p_fix.set_defaults(func=_cmd_fixtures)
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
