"""Congruence subgroups of prime level p and their cusp/character data.

Four nested groups appear, all containing the principal congruence group
of level p:

  Gamma0:      lower-left entry divisible by p
  Gamma1:      additionally a == d == 1 mod p
  Gamma2:      a mod p lies in the subgroup generated by g^k (order 2*ell)
  Gamma2Prime: index-2 kernel inside Gamma2 cut out by the sign characters

Membership never needs more than the residue a mod p and a discrete log,
so every test below is a few modular operations against a cached table.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .exact import PrimeContext, RootOfUnity, bernoulli2


@dataclass(frozen=True)
class SL2Matrix:
    """Integer matrix (a, b; c, d) with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.entries()} is not 1")

    @classmethod
    def identity(cls) -> "SL2Matrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, n: int) -> "SL2Matrix":
        """The power T^n of the unit translation."""
        return cls(1, n, 0, 1)

    @classmethod
    def parse(cls, text: str) -> "SL2Matrix":
        """Read 'a,b,c,d' (as printed by entries())."""
        try:
            a, b, c, d = (int(t) for t in text.split(","))
        except ValueError as exc:
            raise ValueError(f"expected 'a,b,c,d' integers, got {text!r}") from exc
        return cls(a, b, c, d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "SL2Matrix":
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def apply(self, tau: complex) -> complex:
        """Moebius action (a*tau + b)/(c*tau + d)."""
        return (self.a * tau + self.b) / (self.c * tau + self.d)


class Subgroup(Enum):
    GAMMA0 = "Gamma0"
    GAMMA1 = "Gamma1"
    GAMMA2 = "Gamma2"
    GAMMA2_PRIME = "Gamma2Prime"


@lru_cache(maxsize=None)
def _dlog_table(p: int, g: int) -> dict:
    table = {}
    x = 1
    for n in range(p - 1):
        table[x] = n
        x = x * g % p
    return table


def dlog(ctx: PrimeContext, a: int) -> int:
    """n in [0, p-2] with g^n == a mod p."""
    r = a % ctx.p
    if r == 0:
        raise ValueError(f"{a} is divisible by {ctx.p}")
    return _dlog_table(ctx.p, ctx.g)[r]


# -- characters ------------------------------------------------------------


def sign_character(m: SL2Matrix) -> int:
    """The order-2 character of the full modular group.

    Value (-1)^(a+d-1) when c is odd, (-1)^b when c is even; it is the
    6th power of the eta multiplier epsilon_factor.
    """
    if m.c % 2:
        return 1 if (m.a + m.d) % 2 else -1
    return 1 if m.b % 2 == 0 else -1


def quadratic_character(m: SL2Matrix, ctx: PrimeContext) -> int:
    """The order-2 character of Gamma2 trivial on Gamma1, for p == 1 mod 4.

    With a == g^(n*k) mod p the value is (-1)^n.
    """
    if ctx.ell % 2:
        raise ValueError(f"quadratic character needs p == 1 mod 4, p={ctx.p}")
    if not is_member(m, Subgroup.GAMMA2, ctx):
        raise ValueError(f"{m.entries()} is not in Gamma2({ctx.p})")
    n = dlog(ctx, m.a) // ctx.k
    return 1 if n % 2 == 0 else -1


def epsilon_factor(a: int, b: int, c: int, d: int) -> RootOfUnity:
    """Multiplier of the classical eta function under (a,b;c,d), a 12th root.

    Two published branches: for odd c the value is
    e^(2*pi*i*(bd(1-c^2)+c(a+d-3))/12), for odd d it is -i times
    e^(2*pi*i*(ac(1-d^2)+d(b-c+3))/12); -i is folded in as 9/12 of a turn.
    """
    if a * d - b * c != 1:
        raise ValueError(f"determinant of ({a},{b},{c},{d}) is not 1")
    if c % 2:
        return RootOfUnity(12, b * d * (1 - c * c) + c * (a + d - 3))
    if d % 2:
        return RootOfUnity(12, a * c * (1 - d * d) + d * (b - c + 3) + 9)
    raise ValueError("c and d cannot both be even in SL(2,Z)")


def eta_multiplier(g: int, level: int, m: SL2Matrix) -> tuple[RootOfUnity, int]:
    """(root of unity, new index) with E_g(m tau) = root * E_newindex(tau).

    m must lie in Gamma0(level).  Translations (c = 0, normalized so the
    diagonal is +1) contribute e^(pi*i*b*N*B(g/N)) and keep the index;
    otherwise the factor is epsilon(a, b*N, c/N, d) * e^(pi*i*(g^2 a b/N - g b))
    and the index moves to a*g.  The returned index is unreduced.
    """
    if g % level == 0:
        raise ValueError(f"index {g} vanishes mod {level}")
    if m.c % level:
        raise ValueError(f"{m.entries()} is not in Gamma0({level})")
    if m.c == 0:
        b = m.b if m.a == 1 else -m.b  # a = d = -1: use -m, same action
        phase = RootOfUnity.from_half_turns(b * level * bernoulli2(Fraction(g, level)))
        return phase, g
    eps = epsilon_factor(m.a, m.b * level, m.c // level, m.d)
    phase = RootOfUnity.from_half_turns(Fraction(g * g * m.a * m.b, level) - g * m.b)
    return eps * phase, m.a * g


# -- membership ------------------------------------------------------------


def is_member(m: SL2Matrix, group: Subgroup, ctx: PrimeContext) -> bool:
    p = ctx.p
    if m.c % p:
        return False
    if group is Subgroup.GAMMA0:
        return True
    if group is Subgroup.GAMMA1:
        return m.a % p == 1
    n = dlog(ctx, m.a)
    if n % ctx.k:
        return False
    if group is Subgroup.GAMMA2:
        return True
    # Gamma2Prime: kernel of psi*chi when chi exists, of psi otherwise
    s = sign_character(m)
    if ctx.ell % 2 == 0:
        s *= quadratic_character(m, ctx)
    return s == 1


def lift_with_upper_left(a: int, p: int) -> SL2Matrix:
    """Some element of Gamma0(p) whose upper-left entry is a mod p."""
    r = a % p
    if r == 0:
        raise ValueError(f"{a} is divisible by {p}")
    d = pow(r, -1, p)
    return SL2Matrix(r, (r * d - 1) // p, p, d)


def gamma2_generator(ctx: PrimeContext) -> SL2Matrix:
    """A concrete matrix generating Gamma2 over Gamma1: upper-left g^k."""
    return lift_with_upper_left(pow(ctx.g, ctx.k, ctx.p), ctx.p)


def random_member(group: Subgroup, ctx: PrimeContext, rng, cscale: int = 2) -> SL2Matrix:
    """Random small-entry member; lower-left is p times an integer in [-cscale, cscale]."""
    p = ctx.p
    while True:
        c0 = rng.randint(-cscale, cscale)
        if c0 == 0:
            m = SL2Matrix.translation(rng.randint(-4, 4))
            if group is not Subgroup.GAMMA1 and rng.random() < 0.5:
                m = -m
        else:
            if group is Subgroup.GAMMA0:
                res = rng.randrange(1, p)
            elif group is Subgroup.GAMMA1:
                res = 1
            else:
                res = pow(ctx.g, ctx.k * rng.randrange(2 * ctx.ell), p)
            c = p * c0
            a = res + p * rng.randint(0, 2)
            while gcd(a, c) != 1:
                a += p
            d, b = _complete_column(a, c)
            # pull d toward 0, then jitter with translations on both sides
            t = -round(d / c)
            d, b = d + t * c, b + t * a
            m = SL2Matrix(a, b, c, d)
            j = rng.randint(-2, 2)
            m = m * SL2Matrix.translation(j)
            i = rng.randint(-2, 2)
            m = SL2Matrix.translation(i) * m
            if group is not Subgroup.GAMMA1 and rng.random() < 0.5:
                m = -m
        if group is Subgroup.GAMMA2_PRIME and not is_member(m, group, ctx):
            continue  # rejection step: half of Gamma2 lands in the kernel
        assert is_member(m, group, ctx), (m.entries(), group)
        return m


def _complete_column(a: int, c: int) -> tuple[int, int]:
    """(d, b) with a*d - b*c = 1, via the extended Euclid algorithm."""
    old_r, r = a, c
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_x, x = x, old_x - qq * x
        old_y, y = y, old_y - qq * y
    if old_r == -1:
        old_r, old_x, old_y = 1, -old_x, -old_y
    if old_r != 1:
        raise ValueError(f"({a},{c}) is not a coprime pair")
    return old_x, -old_y


# -- the character cutting out Gamma2Prime ---------------------------------


def quotient_character(ctx: PrimeContext, m: SL2Matrix) -> RootOfUnity:
    """Character of Gamma0(p) with kernel exactly Gamma2Prime(p).

    For a == g^n mod p the value is zeta^n * psi(m) where zeta has order
    k (ell odd) or 2k (ell even).  Its image has order 2k = p-1 / ell,
    which is the degree of the certified covering.
    """
    if m.c % ctx.p:
        raise ValueError(f"{m.entries()} is not in Gamma0({ctx.p})")
    n = dlog(ctx, m.a)
    order = ctx.k if ctx.ell % 2 else 2 * ctx.k
    zeta = RootOfUnity(order, n % order)
    return zeta * RootOfUnity.from_sign(sign_character(m))


@dataclass(frozen=True)
class QuotientStructure:
    """Enumerated facts about Gamma0(p) / Gamma2Prime(p)."""

    index_gamma0_gamma2: int
    curve_index_gamma2_gamma1: int
    residue_classes_gamma2: int
    character_order: int
    kernel_matches: bool
    is_cyclic: bool


def quotient_structure(ctx: PrimeContext) -> QuotientStructure:
    """Enumerate Gamma0(p)/Gamma2Prime(p) through explicit lifts.

    For every residue class a = g^n we take a lift and its translate by T
    (the two differ in sign character), evaluate the quotient character,
    and compare its kernel against direct Gamma2Prime membership.  The
    image of a finite set of roots of unity generates a cyclic group of
    order lcm of the element orders.
    """
    p = ctx.p
    in_g2 = 0
    curve_classes = set()
    orders = [1]
    kernel_ok = True
    t = SL2Matrix.translation(1)
    for n in range(p - 1):
        a = pow(ctx.g, n, p)
        if n % ctx.k == 0:
            in_g2 += 1
            curve_classes.add(min(a, p - a))
        base = lift_with_upper_left(a, p)
        for m in (base, base * t):
            lam = quotient_character(ctx, m)
            orders.append(lam.order)
            if lam.is_one() != is_member(m, Subgroup.GAMMA2_PRIME, ctx):
                kernel_ok = False
    return QuotientStructure(
        index_gamma0_gamma2=(p - 1) // in_g2,
        curve_index_gamma2_gamma1=len(curve_classes),
        residue_classes_gamma2=in_g2,
        character_order=lcm(*orders),
        kernel_matches=kernel_ok,
        is_cyclic=True,  # finite subgroup of the circle group
    )


# -- cusps -----------------------------------------------------------------


@dataclass(frozen=True)
class Cusp:
    """Cusp a/c of the upper half plane, c >= 0, gcd(a,c) = 1; 1/0 is infinity."""

    a: int
    c: int

    def __post_init__(self):
        if self.c < 0 or gcd(self.a, self.c) != 1:
            raise ValueError(f"({self.a},{self.c}) is not a normalized cusp")
        if self.c == 0 and self.a != 1:
            raise ValueError("infinity is normalized as 1/0")

    @classmethod
    def infinity(cls) -> "Cusp":
        return cls(1, 0)

    @classmethod
    def from_pair(cls, a: int, c: int) -> "Cusp":
        g = gcd(a, c)
        if g == 0:
            raise ValueError("0/0 is not a cusp")
        a, c = a // g, c // g
        if c < 0 or (c == 0 and a < 0):
            a, c = -a, -c
        return cls(a, c)

    def section(self) -> SL2Matrix:
        """A matrix sending infinity to this cusp (first column a, c)."""
        d, b = _complete_column(self.a, self.c)
        return SL2Matrix(self.a, b, self.c, d)

    def __str__(self) -> str:
        return "inf" if self.c == 0 else f"{self.a}/{self.c}"


def psl_index(group: Subgroup, ctx: PrimeContext) -> int:
    """Index of the subgroup's image in PSL(2,Z); equals the cusp width sum."""
    p = ctx.p
    if group is Subgroup.GAMMA0:
        return p + 1
    if group is Subgroup.GAMMA1:
        return (p * p - 1) // 2
    if group is Subgroup.GAMMA2:
        return ctx.k * (p + 1)
    return 2 * ctx.k * (p + 1)


def cusps_equivalent(x: Cusp, y: Cusp, group: Subgroup, ctx: PrimeContext) -> bool:
    """Whether some member of the group maps x to y.

    Matrices sending x to y are exactly sec_y * (+-T^n) * sec_x^(-1).
    Conjugates of T^p land in the level-p principal group, where only the
    sign character can still vary, and it is constant on T^(2p) steps; a
    scan over n in [0, 2p) is therefore complete for every group here.
    """
    inv = x.section().inverse()
    m = y.section()
    t = SL2Matrix.translation(1)
    for _ in range(2 * ctx.p):
        cand = m * inv
        if is_member(cand, group, ctx) or is_member(-cand, group, ctx):
            return True
        m = m * t
    return False


def cusp_width(x: Cusp, group: Subgroup, ctx: PrimeContext) -> int:
    """Least w >= 1 with +-sec * T^w * sec^(-1) in the group.

    Widths divide 2p: the p-th conjugated power already lies in the
    principal group, where at most a sign-character flip survives.
    """
    sec = x.section()
    step = sec * SL2Matrix.translation(1) * sec.inverse()
    m = step
    for w in range(1, 2 * ctx.p + 1):
        if is_member(m, group, ctx) or is_member(-m, group, ctx):
            return w
        m = m * step
    raise ArithmeticError(f"no width <= {2 * ctx.p} at cusp {x}")


def _cusp_candidates(p: int):
    """Candidates covering every class: infinity, a/p, 1/c, then CRT lifts."""
    yield Cusp.infinity()
    for a in range(1, p):
        yield Cusp(a, p)
    for c in range(1, p + 1):
        yield Cusp(1, c)
    for c in range(1, p):
        cinv = pow(c, -1, p)
        for abar in range(p):
            # a == abar mod p and a == 1 mod c, so (a, c) is coprime
            t = (abar - 1) * cinv % p
            yield Cusp(1 + c * t, c)


def cusp_set(group: Subgroup, ctx: PrimeContext) -> list[tuple[Cusp, int]]:
    """Inequivalent cusps with widths; completeness certified by width sum.

    Widths of distinct classes sum to the PSL index, so reaching the
    independently computed index proves no class was missed.  The first
    candidate families already represent everything at prime level; the
    CRT tail only runs if they somehow did not.
    """
    target = psl_index(group, ctx)
    found: list[tuple[Cusp, int]] = []
    total = 0
    primary = 1 + (ctx.p - 1) + ctx.p
    for i, cand in enumerate(_cusp_candidates(ctx.p)):
        if i >= primary and total == target:
            break
        if any(cusps_equivalent(cand, rep, group, ctx) for rep, _ in found):
            continue
        w = cusp_width(cand, group, ctx)
        found.append((cand, w))
        total += w
    if total != target:
        raise ArithmeticError(
            f"cusp widths for {group.value}({ctx.p}) sum to {total}, expected {target}"
        )
    return found
