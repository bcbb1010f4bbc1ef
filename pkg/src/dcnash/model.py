"""Game definition, validation, exact payoff evaluation, lattice enumeration.

A game is a set of players, each owning a contiguous slice of the joint
decision vector.  Objectives are quadratic-plus-weighted-absolute-value
forms over the *joint* vector; constraints are affine in each player's
*own* variables only.  Every own decision variable is nonnegative,
integer, and must admit a finite upper bound (declared, or derived from
the constraints), so feasible sets are finite integer lattices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (
    Diagnostic,
    DimensionMismatchError,
    GameNotValidatedError,
    GameValidationError,
    LatticeTooLargeError,
)
from .rationals import Mat, RationalLike, Vec, dot, is_psd_ldlt, mat, rat, rat_str, vec

DEFAULT_LATTICE_CAP = 10**6

# validation diagnostic codes
NON_CONVEX_OWN_BLOCK = "non_convex_own_block"
UNBOUNDED_LATTICE = "unbounded_lattice"
NEGATIVE_ABS_WEIGHT = "negative_abs_weight"
OWNERSHIP_OVERLAP = "ownership_overlap"
ASYMMETRIC_QUAD = "asymmetric_quad"
BAD_DIMENSION = "bad_dimension"
CONTINUOUS_DECISION_VAR = "continuous_decision_var"
BAD_PLAYER_IDS = "bad_player_ids"

_WARNING_CODES = frozenset({NON_CONVEX_OWN_BLOCK})


@dataclass(frozen=True)
class AbsTerm:
    """One term ``weight * |coeffs . x + offset|`` over the joint vector."""

    weight: Fraction
    coeffs: Vec
    offset: Fraction


@dataclass(frozen=True)
class ObjectiveSpec:
    """f(x) = x^T quad x + lin . x + const + sum of absolute-value terms."""

    quad: Mat
    lin: Vec
    const: Fraction
    abs_terms: Tuple[AbsTerm, ...] = ()


@dataclass(frozen=True)
class AffineConstraint:
    """``coeffs . x_own <= rhs`` (inequality) or ``coeffs . x_own == rhs``."""

    coeffs: Vec
    rhs: Fraction


@dataclass(frozen=True)
class PlayerSpec:
    id: int
    n_own: int
    owned: Tuple[int, ...]
    objective: ObjectiveSpec
    ineq: Tuple[AffineConstraint, ...] = ()
    eq: Tuple[AffineConstraint, ...] = ()
    integral: Tuple[bool, ...] = ()
    upper: Tuple[Optional[Fraction], ...] = ()


@dataclass(frozen=True, order=True)
class StrategyProfile:
    """A joint decision vector; compares lexicographically."""

    x: Vec

    def __str__(self) -> str:
        return "(" + ",".join(rat_str(v) for v in self.x) + ")"


@dataclass(frozen=True)
class GameSpec:
    players: Tuple[PlayerSpec, ...]
    validated: bool = False
    convex: bool = True
    warnings: Tuple[Diagnostic, ...] = ()
    # per player, per own var: inclusive integer enumeration range (lo, hi);
    # hi < lo encodes an empty box.  Populated by validate_game.
    boxes: Tuple[Tuple[Tuple[int, int], ...], ...] = ()

    @property
    def n(self) -> int:
        return sum(p.n_own for p in self.players)

    @property
    def n_players(self) -> int:
        return len(self.players)


def abs_term(weight: RationalLike, coeffs: Iterable[RationalLike], offset: RationalLike = 0) -> AbsTerm:
    return AbsTerm(rat(weight), vec(coeffs), rat(offset))


def objective(
    quad: Iterable[Iterable[RationalLike]],
    lin: Iterable[RationalLike],
    const: RationalLike = 0,
    abs_terms: Sequence[AbsTerm] = (),
) -> ObjectiveSpec:
    return ObjectiveSpec(mat(quad), vec(lin), rat(const), tuple(abs_terms))


def constraint(coeffs: Iterable[RationalLike], rhs: RationalLike) -> AffineConstraint:
    return AffineConstraint(vec(coeffs), rat(rhs))


def profile(values: Iterable[RationalLike]) -> StrategyProfile:
    return StrategyProfile(vec(values))


def make_game(players: Sequence[dict]) -> GameSpec:
    """Assemble an unvalidated GameSpec from per-player dicts.

    Each dict carries: ``n_own``, ``objective``, and optionally ``ineq``,
    ``eq``, ``integral``, ``upper``.  Ids and owned index ranges are
    assigned from list order.
    """
    specs: List[PlayerSpec] = []
    offset = 0
    for i, p in enumerate(players, start=1):
        n_own = p["n_own"]
        upper = tuple(
            None if u is None else rat(u) for u in p.get("upper", (None,) * n_own)
        )
        specs.append(
            PlayerSpec(
                id=i,
                n_own=n_own,
                owned=tuple(range(offset, offset + n_own)),
                objective=p["objective"],
                ineq=tuple(p.get("ineq", ())),
                eq=tuple(p.get("eq", ())),
                integral=tuple(p.get("integral", (True,) * n_own)),
                upper=upper,
            )
        )
        offset += n_own
    return GameSpec(players=tuple(specs))


def validate_game(game: GameSpec) -> GameSpec:
    """Check structure, convexity, and lattice boundedness.

    Hard violations are collected exhaustively and raised together as a
    GameValidationError.  A non-PSD own-variable block is only a warning:
    the equilibrium definition needs no convexity, so such games stay
    usable for equilibrium enumeration but are refused by the KKT side.
    """
    diags: List[Diagnostic] = []
    warnings: List[Diagnostic] = []
    n = game.n

    _check_ownership(game, diags)
    for p in game.players:
        _check_player_dims(p, n, diags)

    if any(d.code != NON_CONVEX_OWN_BLOCK for d in diags):
        raise GameValidationError(tuple(diags))

    convex = True
    for p in game.players:
        own_block = tuple(tuple(p.objective.quad[i][j] for j in p.owned) for i in p.owned)
        if not is_psd_ldlt(own_block):
            convex = False
            warnings.append(
                Diagnostic(
                    NON_CONVEX_OWN_BLOCK,
                    "own-variable quadratic block is not positive semidefinite; "
                    "game usable for equilibrium enumeration only",
                    player=p.id,
                )
            )

    boxes: List[Tuple[Tuple[int, int], ...]] = []
    for p in game.players:
        box, diag = _derive_box(p)
        boxes.append(box)
        if diag is not None:
            diags.append(diag)

    if diags:
        raise GameValidationError(tuple(diags + warnings))
    return replace(
        game,
        validated=True,
        convex=convex,
        warnings=tuple(warnings),
        boxes=tuple(boxes),
    )


def _check_ownership(game: GameSpec, diags: List[Diagnostic]) -> None:
    n = game.n
    seen: List[Optional[int]] = [None] * n
    for p in game.players:
        expected = tuple(range(p.owned[0], p.owned[0] + p.n_own)) if p.owned else ()
        if p.n_own < 1 or len(p.owned) != p.n_own or tuple(p.owned) != expected:
            diags.append(
                Diagnostic(OWNERSHIP_OVERLAP, f"owned indices {p.owned} are not a contiguous range of width {p.n_own}", p.id)
            )
            continue
        for i in p.owned:
            if i < 0 or i >= n:
                diags.append(Diagnostic(OWNERSHIP_OVERLAP, f"owned index {i} out of range", p.id))
            elif seen[i] is not None:
                diags.append(
                    Diagnostic(OWNERSHIP_OVERLAP, f"joint index {i} owned by players {seen[i]} and {p.id}", p.id)
                )
            else:
                seen[i] = p.id
    if any(s is None for s in seen):
        missing = [i for i, s in enumerate(seen) if s is None]
        diags.append(Diagnostic(OWNERSHIP_OVERLAP, f"joint indices {missing} owned by nobody"))
    ids = [p.id for p in game.players]
    if ids != list(range(1, len(ids) + 1)):
        diags.append(Diagnostic(BAD_PLAYER_IDS, f"player ids {ids} are not 1..{len(ids)}"))


def _check_player_dims(p: PlayerSpec, n: int, diags: List[Diagnostic]) -> None:
    obj = p.objective
    if len(obj.quad) != n or any(len(row) != n for row in obj.quad):
        diags.append(Diagnostic(BAD_DIMENSION, f"quadratic matrix is not {n}x{n}", p.id))
    elif any(obj.quad[i][j] != obj.quad[j][i] for i in range(n) for j in range(i + 1, n)):
        diags.append(Diagnostic(ASYMMETRIC_QUAD, "quadratic matrix is not symmetric", p.id))
    if len(obj.lin) != n:
        diags.append(Diagnostic(BAD_DIMENSION, f"linear vector has length {len(obj.lin)}, expected {n}", p.id))
    for t, term in enumerate(obj.abs_terms):
        if len(term.coeffs) != n:
            diags.append(Diagnostic(BAD_DIMENSION, f"abs term {t} coefficient width {len(term.coeffs)} != {n}", p.id))
        if term.weight < 0:
            diags.append(Diagnostic(NEGATIVE_ABS_WEIGHT, f"abs term {t} has weight {rat_str(term.weight)} < 0", p.id))
    for kind, rows in (("ineq", p.ineq), ("eq", p.eq)):
        for j, row in enumerate(rows):
            if len(row.coeffs) != p.n_own:
                diags.append(
                    Diagnostic(BAD_DIMENSION, f"{kind} constraint {j} width {len(row.coeffs)} != {p.n_own}", p.id)
                )
    if len(p.integral) != p.n_own or len(p.upper) != p.n_own:
        diags.append(Diagnostic(BAD_DIMENSION, "integral/upper flag lengths do not match own-variable count", p.id))
    elif not all(p.integral):
        diags.append(
            Diagnostic(CONTINUOUS_DECISION_VAR, "continuous decision variables are out of scope; all must be integral", p.id)
        )


def _derive_box(p: PlayerSpec) -> Tuple[Tuple[Tuple[int, int], ...], Optional[Diagnostic]]:
    """Interval propagation of own constraints over [0, upper] boxes.

    Returns the integer enumeration box and, when some variable has no
    finite upper bound, an unbounded-lattice diagnostic.  The box may be
    loose; lattice enumeration re-checks every constraint exactly.
    """
    m = p.n_own
    lo: List[Fraction] = [Fraction(0)] * m
    hi: List[Optional[Fraction]] = list(p.upper)
    rows: List[Tuple[Vec, Fraction]] = [(c.coeffs, c.rhs) for c in p.ineq]
    for c in p.eq:
        rows.append((c.coeffs, c.rhs))
        rows.append((tuple(-a for a in c.coeffs), -c.rhs))

    for _ in range(2 * m + 2):
        changed = False
        for coeffs, rhs in rows:
            for i in range(m):
                ai = coeffs[i]
                if ai == 0:
                    continue
                rest = Fraction(0)
                finite = True
                for k in range(m):
                    if k == i or coeffs[k] == 0:
                        continue
                    if coeffs[k] > 0:
                        rest += coeffs[k] * lo[k]
                    elif hi[k] is not None:
                        rest += coeffs[k] * hi[k]
                    else:
                        finite = False
                        break
                if not finite:
                    continue
                bound = (rhs - rest) / ai
                if ai > 0:
                    if hi[i] is None or bound < hi[i]:
                        hi[i] = bound
                        changed = True
                else:
                    if bound > lo[i]:
                        lo[i] = bound
                        changed = True
        if not changed:
            break

    if any(h is None for h in hi):
        which = [i for i, h in enumerate(hi) if h is None]
        return (), Diagnostic(
            UNBOUNDED_LATTICE,
            f"own variables {which} have no finite upper bound (declare one or add constraints)",
            p.id,
        )
    box = []
    for i in range(m):
        lo_i = -(-lo[i].numerator // lo[i].denominator)  # ceil
        hi_i = hi[i].numerator // hi[i].denominator  # floor
        box.append((lo_i, hi_i))
    return tuple(box), None


def require_validated(game: GameSpec) -> None:
    if not game.validated:
        raise GameNotValidatedError("operation requires a validated game; call validate_game first")


def evaluate_objective(game: GameSpec, player: int, x: StrategyProfile) -> Fraction:
    """Exact value of player ``player``'s cost at the joint profile ``x``."""
    require_validated(game)
    p = _player(game, player)
    if len(x.x) != game.n:
        raise DimensionMismatchError(f"profile has {len(x.x)} entries, game has {game.n} variables")
    obj = p.objective
    xs = x.x
    total = obj.const + dot(obj.lin, xs)
    for i, row in enumerate(obj.quad):
        if xs[i]:
            total += xs[i] * dot(row, xs)
    for term in obj.abs_terms:
        total += term.weight * abs(dot(term.coeffs, xs) + term.offset)
    return total


def constraint_slacks(p: PlayerSpec, own: Sequence[Fraction]) -> Tuple[Vec, Vec]:
    """(inequality slacks rhs - coeffs.x, equality residuals coeffs.x - rhs)."""
    ineq = tuple(c.rhs - dot(c.coeffs, own) for c in p.ineq)
    eq = tuple(dot(c.coeffs, own) - c.rhs for c in p.eq)
    return ineq, eq


def own_slice(game: GameSpec, player: int, x: StrategyProfile) -> Vec:
    p = _player(game, player)
    return tuple(x.x[i] for i in p.owned)


def own_point_feasible(p: PlayerSpec, own: Sequence[Fraction]) -> bool:
    if len(own) != p.n_own:
        raise DimensionMismatchError(f"own point width {len(own)} != {p.n_own}")
    if any(v < 0 for v in own):
        return False
    if any(flag and v.denominator != 1 for flag, v in zip(p.integral, own)):
        return False
    ineq, eq = constraint_slacks(p, own)
    return all(s >= 0 for s in ineq) and all(r == 0 for r in eq)


def enumerate_feasible_lattice(
    game: GameSpec, player: int, lattice_cap: int = DEFAULT_LATTICE_CAP
) -> Tuple[Vec, ...]:
    """All integral feasible own-variable points of one player, lex-sorted.

    Enumerates the derived bounding box and filters by exact constraint
    checks, so the result is exactly the feasible lattice regardless of
    how loose the derived box is.
    """
    require_validated(game)
    p = _player(game, player)
    box = game.boxes[p.id - 1]
    size = 1
    for lo_i, hi_i in box:
        size *= max(0, hi_i - lo_i + 1)
    if size > lattice_cap:
        raise LatticeTooLargeError(
            f"player {p.id}: bounding box holds {size} points, cap is {lattice_cap}"
        )
    points = []
    ranges = [range(lo_i, hi_i + 1) for lo_i, hi_i in box]
    for cand in itertools.product(*ranges):
        own = vec(cand)
        if own_point_feasible(p, own):
            points.append(own)
    return tuple(points)


def joint_lattice(
    game: GameSpec, lattice_cap: int = DEFAULT_LATTICE_CAP
) -> Tuple[Tuple[Vec, ...], Tuple[StrategyProfile, ...]]:
    """Per-player lattices plus every joint profile in lexicographic order."""
    require_validated(game)
    lattices = tuple(
        enumerate_feasible_lattice(game, p.id, lattice_cap) for p in game.players
    )
    total = 1
    for lat in lattices:
        total *= len(lat)
    if total > lattice_cap:
        raise LatticeTooLargeError(f"joint lattice holds {total} profiles, cap is {lattice_cap}")
    profiles = tuple(
        StrategyProfile(tuple(itertools.chain.from_iterable(combo)))
        for combo in itertools.product(*lattices)
    )
    return lattices, profiles


def _player(game: GameSpec, player: int) -> PlayerSpec:
    for p in game.players:
        if p.id == player:
            return p
    raise DimensionMismatchError(f"no player with id {player}")
