"""Auxiliary curves and bounded-height rational point search.

Two shapes occur: ``r^2 = f(t)`` for a univariate ``f`` (elliptic and
genus-2 models) and plane curves ``F(p, q) = 0``.  Searches cover every
``t`` (or ``p``) of height at most ``H``.  Floating point and modular
arithmetic are used only to discard candidates cheaply; every reported
point is confirmed with exact integer arithmetic.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np

from .arith import as_rational, canonical_key, fmt, height, lcm_of_denominators, rational_sqrt, rationals_up_to
from .bipoly import BiPoly, resultant_p
from .solver import Pattern, UNIQUE, check_exponents, eliminate, is_valid_member, solve_coefficient
from .upoly import UPoly, rational_roots

SCHEMA = "quadfactor/1"


class CurvePoint(NamedTuple):
    """``(t, r)`` with ``r >= 0`` on a square curve, ``(p, q)`` on a plane curve."""

    x: Fraction
    y: Fraction

    def as_strings(self) -> list[str]:
        return [fmt(self.x), fmt(self.y)]


def point_key(pt) -> tuple:
    return canonical_key(pt[0]) + canonical_key(pt[1])


# -- the coprime grid ----------------------------------------------------------

@lru_cache(maxsize=4)
def _coprime_grid(bound: int) -> tuple[np.ndarray, np.ndarray]:
    """All ``(u, v)`` with ``|u| <= bound``, ``1 <= v <= bound``, ``gcd(u, v) = 1``.

    Ordered by denominator, then numerator.
    """
    us, vs = [], []
    u = np.arange(-bound, bound + 1, dtype=np.int64)
    for v in range(1, bound + 1):
        keep = u[np.gcd(u, v) == 1]
        us.append(keep)
        vs.append(np.full(keep.shape, v, dtype=np.int64))
    return np.concatenate(us), np.concatenate(vs)


def _partition(bound: int, pieces: int) -> list[tuple[int, int]]:
    """Split ``1..bound`` into contiguous denominator ranges with similar work."""
    u, v = _coprime_grid(bound)
    n = len(v)
    cuts = [0]
    for i in range(1, pieces):
        cuts.append(int(np.searchsorted(v, v[min(n - 1, i * n // pieces)], side="left")))
    cuts.append(n)
    cuts = sorted(set(cuts))
    return [(a, b) for a, b in zip(cuts, cuts[1:]) if b > a]


def _run_parallel(func, ranges, threads: int):
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(func, ranges))
    return [func(r) for r in ranges]


# -- square curves -------------------------------------------------------------

_MODULI = (64, 63, 65, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


@lru_cache(maxsize=None)
def _square_table(m: int) -> np.ndarray:
    table = np.zeros(m, dtype=bool)
    table[(np.arange(m, dtype=np.int64) ** 2) % m] = True
    return table


def search_square_curve(f: UPoly, bound: int, *, threads: int = 1, chunks: int = 8) -> list[CurvePoint]:
    """Every ``(t, r)`` with ``height(t) <= bound``, ``r >= 0`` and ``r^2 = f(t)``.

    With ``D`` clearing denominators of ``f`` and ``e`` its degree rounded
    up to even, ``t = u/v`` gives ``D^2 v^e f(u/v) = W(u, v)``, an integer
    that must be a perfect square.  Residues modulo small moduli discard
    most ``(u, v)``; survivors are settled with ``math.isqrt``.
    """
    if bound < 1:
        raise ValueError("height bound must be >= 1")
    if f.is_zero():
        return [CurvePoint(t, Fraction(0)) for t in sorted(rationals_up_to(bound), key=canonical_key)]
    D = lcm_of_denominators(f.coeffs)
    ints = [int(c * D) for c in f.coeffs]
    e = f.degree + (f.degree % 2)
    ints += [0] * (e + 1 - len(ints))
    coef_mod = {m: [(D * c) % m for c in ints] for m in _MODULI}
    grid_u, grid_v = _coprime_grid(bound)

    def work(rng):
        lo, hi = rng
        u, v = grid_u[lo:hi], grid_v[lo:hi]
        idx = np.arange(len(u))
        for m in _MODULI:
            if idx.size == 0:
                break
            um, vm = u[idx] % m, v[idx] % m
            vpow = [np.ones_like(vm)]
            for _ in range(e):
                vpow.append(vpow[-1] * vm % m)
            acc = np.zeros_like(um)
            for i in range(e, -1, -1):
                acc = (acc * um + coef_mod[m][i] * vpow[e - i]) % m
            idx = idx[_square_table(m)[acc]]
        found = []
        for i in idx.tolist():
            uu, vv = int(u[i]), int(v[i])
            W, vp = 0, 1
            for c in reversed(ints):
                W = W * uu + c * vp
                vp *= vv
            W *= D
            if W < 0:
                continue
            s = math.isqrt(W)
            if s * s == W:
                found.append(CurvePoint(Fraction(uu, vv), Fraction(s, D * vv ** (e // 2))))
        return found

    results = _run_parallel(work, _partition(bound, chunks), threads)
    points = [pt for chunk in results for pt in chunk]
    points.sort(key=lambda pt: canonical_key(pt.x))
    for pt in points:
        if pt.y * pt.y != f(pt.x):
            raise AssertionError(f"internal error: {pt} is not on the curve")
    return points


# -- plane curves --------------------------------------------------------------

def _int_terms(F: BiPoly) -> dict[tuple[int, int], int]:
    d = lcm_of_denominators(F.terms.values())
    return {k: int(v * d) for k, v in F.terms.items()}


def _vanishes(terms, dp, dq, u, v, h, k) -> bool:
    # exact homogenised test of F(u/v, h/k) = 0
    total = 0
    for (i, j), c in terms.items():
        total += c * u**i * v ** (dp - i) * h**j * k ** (dq - j)
    return total == 0


def _roots_up_to(g: UPoly, bound: int) -> tuple[list[Fraction], bool]:
    """Rational roots of ``g`` of height <= bound; all rationals if ``g = 0``."""
    if g.is_zero():
        return list(rationals_up_to(bound)), True
    roots, complete = rational_roots(g)
    return [r for r in roots if height(r) <= bound], complete


def _continued_fraction(y: np.ndarray, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Last convergent ``h/k`` of each ``y`` with ``k <= bound``."""
    h0, h1 = np.zeros_like(y), np.ones_like(y)
    k0, k1 = np.ones_like(y), np.zeros_like(y)
    x = y.copy()
    live = np.ones(y.shape, dtype=bool)
    best_h = np.floor(y)
    best_k = np.ones_like(y)
    for _ in range(64):
        if not live.any():
            break
        a = np.floor(x)
        h2 = a * h1 + h0
        k2 = a * k1 + k0
        ok = live & (k2 <= bound)
        best_h = np.where(ok, h2, best_h)
        best_k = np.where(ok, k2, best_k)
        live = ok
        frac = x - a
        live &= frac > 1e-15
        with np.errstate(divide="ignore", invalid="ignore"):
            x = np.where(live, 1.0 / np.where(live, frac, 1.0), 0.0)
        h0, h1, k0, k1 = h1, h2, k1, k2
    return best_h, best_k


def search_plane_curve(F: BiPoly, bound: int, *, threads: int = 1, chunks: int = 8) -> list[CurvePoint]:
    """Every ``(p, q)`` with both heights <= bound and ``F(p, q) = 0``.

    One variable is enumerated and the equation is solved in the other
    (the one of lower degree).  Values where the leading coefficient
    vanishes or the polynomial acquires a repeated root are treated with
    exact rational root finding.  Elsewhere the roots are simple: they are
    located with companion-matrix eigenvalues, polished by Newton steps,
    rounded to the nearest admissible fraction and confirmed exactly.
    """
    if bound < 1:
        raise ValueError("height bound must be >= 1")
    if F.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    swapped = F.deg_q > F.deg_p
    G = F.swap() if swapped else F
    dp, dq = G.deg_p, G.deg_q
    found: set[tuple[Fraction, Fraction]] = set()

    if dq <= 0:
        xs, _ = _roots_up_to(G.at_q(0), bound)
        found = {(x, y) for x in xs for y in rationals_up_to(bound)}
        return _finish_plane(found, swapped, F)

    cols = G.coeffs_in_q()                     # c_j(x), j = 0..dq
    scale = lcm_of_denominators([c for col in cols for c in col.coeffs])
    int_cols = [[int(c * scale) for c in col.coeffs] for col in cols]
    terms = _int_terms(G)

    special: set[Fraction] = set()
    guard = False
    lead_roots, ok = _roots_up_to(cols[dq], bound)
    special.update(lead_roots)
    guard |= not ok
    if dq >= 2:
        disc = resultant_p(G.swap(), G.swap().diff_p())
        if disc.is_zero():
            guard = True
        else:
            disc_roots, ok = _roots_up_to(disc, bound)
            special.update(disc_roots)
            guard |= not ok
    for x in special:
        ys, _ = _roots_up_to(G.at_p(x), bound)
        found.update((x, y) for y in ys)
    special_pairs = {(x.numerator, x.denominator) for x in special}

    grid_u, grid_v = _coprime_grid(bound)
    col_f = [np.array([float(c) for c in col], dtype=float) for col in int_cols]

    def horner(coeffs, xs):
        acc = np.zeros_like(xs)
        for c in coeffs[::-1]:
            acc = acc * xs + c
        return acc

    def work(rng):
        lo, hi = rng
        u, v = grid_u[lo:hi], grid_v[lo:hi]
        xs = u / v
        C = np.stack([horner(c, xs) for c in col_f], axis=1)  # (N, dq+1)
        lead = C[:, dq]
        live = lead != 0
        u, v, xs, C = u[live], v[live], xs[live], C[live]
        monic = C[:, :dq] / C[:, dq : dq + 1]
        if dq == 1:
            roots = -monic[:, :1].astype(complex)
        else:
            comp = np.zeros((len(xs), dq, dq))
            comp[:, np.arange(1, dq), np.arange(dq - 1)] = 1.0
            comp[:, :, dq - 1] = -monic
            roots = np.linalg.eigvals(comp)
        if guard:
            # repeated roots may be perturbed off the real axis: add roots of the derivative
            deriv = C[:, 1:] * np.arange(1, dq + 1)
            if dq >= 2:
                dmon = deriv[:, : dq - 1] / deriv[:, dq - 1 : dq]
                if dq == 2:
                    droots = -dmon[:, :1].astype(complex)
                else:
                    dcomp = np.zeros((len(xs), dq - 1, dq - 1))
                    dcomp[:, np.arange(1, dq - 1), np.arange(dq - 2)] = 1.0
                    dcomp[:, :, dq - 2] = -dmon
                    droots = np.linalg.eigvals(dcomp)
                roots = np.concatenate([roots, droots], axis=1)
        re, im = roots.real, roots.imag
        real = np.abs(im) <= 1e-6 * np.maximum(1.0, np.abs(re))
        real &= np.abs(re) <= bound + 0.5
        rows, which = np.nonzero(real)
        y = re[rows, which]
        Cr = C[rows]
        for _ in range(3):
            val = np.zeros_like(y)
            der = np.zeros_like(y)
            for j in range(dq, -1, -1):
                der = der * y + val
                val = val * y + Cr[:, j]
            step = np.where(der != 0, val / np.where(der != 0, der, 1.0), 0.0)
            y = np.where(np.abs(step) < 1e-3 * np.maximum(1.0, np.abs(y)), y - step, y)
        h, k = _continued_fraction(y, bound)
        close = np.abs(y - h / k) <= 1e-9 * np.maximum(1.0, np.abs(y))
        close &= np.abs(h) <= bound
        out = []
        uu, vv = u[rows][close], v[rows][close]
        for a, b, c, d in zip(uu.tolist(), vv.tolist(), h[close].tolist(), k[close].tolist()):
            c, d = int(c), int(d)
            if (a, b) in special_pairs:
                continue
            if _vanishes(terms, dp, dq, a, b, c, d):
                out.append((Fraction(a, b), Fraction(c, d)))
        return out

    for chunk in _run_parallel(work, _partition(bound, chunks), threads):
        found.update(chunk)
    return _finish_plane(found, swapped, F)


def _finish_plane(found, swapped, F) -> list[CurvePoint]:
    pts = [CurvePoint(y, x) if swapped else CurvePoint(x, y) for x, y in found]
    pts.sort(key=point_key)
    for pt in pts:
        if F.eval_at(pt.x, pt.y) != 0:
            raise AssertionError(f"internal error: {pt} is not on the curve")
    return pts


# -- the catalog -----------------------------------------------------------------

MAP_KINDS = ("p_from_q", "q_from_p", "q_from_t", "p2_from_q", "direct")


@dataclass(frozen=True)
class BackSubstitution:
    """Formula turning a curve point into candidate ``(p, q)``.

    With ``s = (N(t) +- c r) / D(t)``:

    * ``p_from_q``: ``t = q``, ``p = s``
    * ``q_from_p``: ``t = p``, ``q = s``
    * ``q_from_t``: ``q = s``, ``p = t q``
    * ``p2_from_q``: ``t = q``, ``p^2 = s``
    * ``direct``: the point already is ``(p, q)``
    """

    kind: str
    numerator: UPoly = UPoly()
    denominator: UPoly = UPoly([1])
    root_coefficient: Fraction = Fraction(1)

    def describe(self, var: str) -> str:
        if self.kind == "direct":
            return "(p, q) = point"
        target = {"p_from_q": "p", "q_from_p": "q", "q_from_t": "q", "p2_from_q": "p^2"}[self.kind]
        c = self.root_coefficient
        root = "r" if c == 1 else f"{fmt(c)} r"
        body = f"({self.numerator.to_string(var)} +- {root})"
        if self.denominator != UPoly([1]):
            body += f" / ({self.denominator.to_string(var)})"
        extra = f", p = {var} q" if self.kind == "q_from_t" else ""
        return f"{target} = {body}{extra}"


@dataclass(frozen=True)
class ExpectedPoint:
    printed: CurvePoint
    correction: Optional[CurvePoint] = None


@dataclass
class CurveSpec:
    id: str
    form: str                    # "square" or "plane"
    variable: str
    poly: object                 # UPoly (square) or BiPoly (plane)
    provenance: str
    status: str                  # complete-per-paper | conjectural | infinite
    expected: list = field(default_factory=list)
    map: Optional[BackSubstitution] = None
    printed_map: Optional[BackSubstitution] = None
    case: Optional[tuple] = None          # (Pattern, (n, m, k))
    equation: str = ""
    annotations: list = field(default_factory=list)
    verified_points: list = field(default_factory=list)
    point_issues: list = field(default_factory=list)

    def on_curve(self, pt) -> bool:
        x, y = as_rational(pt[0]), as_rational(pt[1])
        if self.form == "square":
            return y >= 0 and y * y == self.poly(x)
        return self.poly.eval_at(x, y) == 0

    def search(self, bound: int, *, threads: int = 1) -> list[CurvePoint]:
        if self.form == "square":
            return search_square_curve(self.poly, bound, threads=threads)
        return search_plane_curve(self.poly, bound, threads=threads)

    def validate(self) -> None:
        """Check expected points; record corrections for any that fail."""
        self.verified_points, self.point_issues = [], []
        for exp in self.expected:
            pt = exp.printed
            if self.on_curve(pt):
                self.verified_points.append(pt)
                continue
            fixed = None
            if self.form == "square":
                r = rational_sqrt(self.poly(pt.x))
                if r is not None:
                    fixed = CurvePoint(pt.x, r)
            if fixed is None and exp.correction is not None and self.on_curve(exp.correction):
                fixed = exp.correction
            self.point_issues.append({"printed": pt, "corrected": fixed})
            if fixed is not None:
                self.verified_points.append(fixed)
        self.verified_points.sort(key=point_key)

    def to_json(self) -> dict:
        out = {"id": self.id, "form": self.form, "variable": self.variable,
               "equation": self.equation, "provenance": self.provenance, "status": self.status}
        if self.form == "square":
            out["coefficients"] = [fmt(c) for c in self.poly.coeffs]
        else:
            out["terms"] = [[i, j, fmt(c)] for (i, j), c in self.poly.sorted_terms()]
        return out


def _parse_point(raw) -> CurvePoint:
    return CurvePoint(as_rational(raw[0]), as_rational(raw[1]))


def _parse_map(raw) -> Optional[BackSubstitution]:
    if raw is None:
        return None
    kind = raw["kind"]
    if kind not in MAP_KINDS:
        raise ValueError(f"unknown map kind {kind!r}")
    return BackSubstitution(
        kind,
        UPoly(as_rational(c) for c in raw.get("numerator", [])),
        UPoly(as_rational(c) for c in raw.get("denominator", ["1"])),
        as_rational(raw.get("root_coefficient", "1")),
    )


def curve_from_json(raw: dict) -> CurveSpec:
    form = raw["form"]
    if form == "square":
        poly = UPoly(as_rational(c) for c in raw["coefficients"])
    elif form == "plane":
        poly = BiPoly({(int(i), int(j)): as_rational(c) for i, j, c in raw["terms"]})
    else:
        raise ValueError(f"unknown curve form {form!r}")
    case = None
    if raw.get("case"):
        n, m, k = raw["case"]["exponents"]
        check_exponents(n, m, k)
        case = (Pattern.parse(raw["case"]["pattern"]), (n, m, k))
    expected = []
    for e in raw.get("expected_points", []):
        corr = _parse_point(e["correction"]) if e.get("correction") else None
        expected.append(ExpectedPoint(_parse_point(e["point"]), corr))
    spec = CurveSpec(
        id=raw["id"], form=form, variable=raw.get("variable", "t"), poly=poly,
        provenance=raw.get("provenance", ""), status=raw.get("status", "conjectural"),
        expected=expected, map=_parse_map(raw.get("map")), printed_map=_parse_map(raw.get("printed_map")),
        case=case, equation=raw.get("equation", ""), annotations=list(raw.get("annotations", [])),
    )
    spec.validate()
    return spec


def load_curve_file(path) -> dict[str, CurveSpec]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"{path}: expected schema {SCHEMA!r}")
    curves = [curve_from_json(raw) for raw in data["curves"]]
    return {c.id: c for c in curves}


@lru_cache(maxsize=1)
def _builtin() -> dict[str, CurveSpec]:
    ref = resources.files("quadfactor") / "data" / "curves.json"
    with resources.as_file(ref) as path:
        return load_curve_file(Path(path))


def load_catalog() -> dict[str, CurveSpec]:
    return dict(_builtin())


def get_curve(curve_id: str) -> CurveSpec:
    cat = _builtin()
    if curve_id not in cat:
        raise KeyError(f"unknown curve id {curve_id!r}")
    return cat[curve_id]


# -- back substitution ----------------------------------------------------------

def _candidates(curve: CurveSpec, bs: BackSubstitution, pt) -> set[tuple[Fraction, Fraction]]:
    t, r = as_rational(pt[0]), as_rational(pt[1])
    if bs.kind == "direct":
        return {(t, r)}
    pattern, (n, m, k) = curve.case
    out = set()
    den = bs.denominator(t)
    if den == 0:
        # the formula degenerates; solve the eliminant on this fibre instead
        E = eliminate(pattern, n, m, k)
        if bs.kind == "p_from_q":
            g = E.at_q(t)
            if not g.is_zero():
                out.update((p, t) for p in rational_roots(g).roots)
        elif bs.kind == "q_from_p":
            g = E.at_p(t)
            if not g.is_zero():
                out.update((t, q) for q in rational_roots(g).roots)
        return out
    for sign in (1, -1):
        s = (bs.numerator(t) + sign * bs.root_coefficient * r) / den
        if bs.kind == "p_from_q":
            out.add((s, t))
        elif bs.kind == "q_from_p":
            out.add((t, s))
        elif bs.kind == "q_from_t":
            out.add((t * s, s))
        elif bs.kind == "p2_from_q":
            root = rational_sqrt(s)
            if root is not None:
                out.update({(root, t), (-root, t)})
    return out


def points_to_solutions(curve, points, *, use_printed_map: bool = False) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Map curve points to verified ``(p, q, a)``, dropping ``q = 0`` and ``a = 0``."""
    if isinstance(curve, str):
        curve = get_curve(curve)
    bs = curve.printed_map if use_printed_map else curve.map
    if bs is None or curve.case is None:
        raise ValueError(f"curve {curve.id} has no stored back-substitution")
    pattern, (n, m, k) = curve.case
    sols = set()
    for pt in points:
        for p, q in _candidates(curve, bs, pt):
            if q == 0:
                continue
            status, a = solve_coefficient(pattern, n, m, k, p, q)
            if status == UNIQUE and a != 0 and is_valid_member(pattern, n, m, k, p, q, a):
                sols.add((p, q, a))
    return sorted(sols, key=lambda s: canonical_key(s[1]) + canonical_key(s[0]))


def map_residual(curve: CurveSpec, bs: Optional[BackSubstitution] = None) -> tuple[UPoly, UPoly]:
    """Substitute the map into the eliminant in ``Q[t][r] / (r^2 - f)``.

    Returns ``(U, V)`` with the result ``U + V r``; both vanish exactly
    when every curve point maps onto the eliminant curve.
    """
    bs = bs or curve.map
    if curve.form != "square" or bs is None or curve.case is None:
        raise ValueError("map check needs a square curve with a case and a map")
    pattern, (n, m, k) = curve.case
    E = eliminate(pattern, n, m, k)
    f = curve.poly
    X = UPoly.x()
    one = UPoly([1])

    def mul(a, b):
        return (a[0] * b[0] + a[1] * b[1] * f, a[0] * b[1] + a[1] * b[0])

    def power(a, e):
        out = (one, UPoly())
        for _ in range(e):
            out = mul(out, a)
        return out

    s = (bs.numerator, UPoly([bs.root_coefficient]))
    D = bs.denominator
    if bs.kind == "p_from_q":
        P, Dp, Q, Dq = s, D, (X, UPoly()), one
    elif bs.kind == "q_from_p":
        P, Dp, Q, Dq = (X, UPoly()), one, s, D
    elif bs.kind == "q_from_t":
        P, Dp, Q, Dq = (X * s[0], X * s[1]), D, s, D
    elif bs.kind == "p2_from_q":
        if any(i % 2 for i, _ in E.terms):
            raise ValueError("eliminant is not even in p")
        E = BiPoly({(i // 2, j): c for (i, j), c in E.terms.items()})
        P, Dp, Q, Dq = s, D, (X, UPoly()), one
    else:
        raise ValueError(f"no residual for map kind {bs.kind!r}")
    dp, dq = E.deg_p, E.deg_q
    U, V = UPoly(), UPoly()
    for (i, j), c in E.terms.items():
        term = mul(power(P, i), power(Q, j))
        w = Dp ** (dp - i) * Dq ** (dq - j) * c
        U, V = U + term[0] * w, V + term[1] * w
    return U, V
