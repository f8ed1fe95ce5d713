"""Expand the appendix expressions into term-list JSON files.

Usage: python3 tools/gen_appendix.py

Reads tools/appendix/*.txt (one expression per file, verbatim), writes
crates/core/data/appendix/<name>.json.
"""
import json
import pathlib

import sympy as sp

ROOT = pathlib.Path(__file__).resolve().parent
OUT = ROOT.parent / "crates" / "core" / "data" / "appendix"

# name -> (variables, {component: expression builder})
a, b, c, x, y, z, S, rt, pm, La, Lb, Lc, p, q, r = sp.symbols("a b c x y z S rt pm La Lb Lc p q r")
SYMS = {str(s): s for s in (a, b, c, x, y, z, S, rt, pm, La, Lb, Lc, p, q, r)}


def parse(text):
    text = text.replace("\n", "").replace("^", "**").replace("+/-", "+pm*")
    lhs = text.split("=")[0]
    return sp.sympify(lhs, locals=SYMS)


def split_point(expr_text):
    # "[u,v,w]" -> three expressions
    inner = expr_text.replace("\n", "").strip()
    assert inner[0] == "[" and inner[-1] == "]"
    inner = inner[1:-1]
    parts, depth, cur = [], 0, ""
    for ch in inner:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    return [parse(s) for s in parts]


def terms(expr, variables):
    poly = sp.Poly(sp.expand(expr), *variables)
    rows = []
    for monom, coeff in sorted(poly.terms(), key=lambda t: t[0], reverse=True):
        assert coeff.is_integer, coeff
        assert abs(int(coeff)) < 2**53
        rows.append([int(coeff), *monom])
    return rows


def numden(expr):
    n, d = sp.fraction(sp.together(expr))
    return sp.expand(n), sp.expand(d)


def build(name, source):
    if name == "a_ellipse":
        vs = [a, b, c, x, y, z]
        comps = {"equation": parse(source)}
    elif name == "major_vertices":
        vs = [a, b, c, S, rt, pm]
        u, v, w = split_point(source)
        un, ud = numden(u)
        comps = {"u_numerator": un, "u_denominator": ud, "v": v, "w": w}
    elif name == "x3prime_center":
        vs = [a, b, c]
        comps = {"f": parse(source)}
    elif name == "phyp_member":
        vs = [a, b, c, La, p, q, r, x, y, z]
        comps = {"equation": parse(source)}
    elif name == "pstar_conic":
        vs = [a, b, c, La, Lb, Lc, x, y, z]
        n, _ = numden(parse(source))
        comps = {"equation": n}
    elif name == "x5452_coordinate":
        vs = [a, b, c, La, Lb, Lc]
        n, d = numden(parse(source))
        comps = {"numerator": n, "denominator": d}
    else:
        raise SystemExit(f"unknown block {name}")
    return {
        "name": name,
        "source": source.replace("\n", ""),
        "variables": [str(v) for v in vs],
        "components": {k: terms(e, vs) for k, e in comps.items()},
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for src in sorted((ROOT / "appendix").glob("*.txt")):
        data = build(src.stem, src.read_text().strip())
        path = OUT / f"{src.stem}.json"
        with path.open("w") as f:
            json.dump(data, f, separators=(",", ":"))
            f.write("\n")
        counts = {k: len(v) for k, v in data["components"].items()}
        print(path.name, counts)


if __name__ == "__main__":
    main()
