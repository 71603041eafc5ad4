"""Witt-basis Clifford algebra acting on Fock-basis spinors.

Conventions
-----------
The 2n generators split into null ladder vectors p_1..p_n, q_1..q_n with
the Witt relations  [p_j,p_k]+ = [q_j,q_k]+ = 0  and  [p_j,q_k]+ = d_jk.
Fock basis element omega_s, for s in [0, 2^n), is the ascending product
of the q_j with bit (j-1) of s set, applied to omega_0 = p_1...p_n.
Left multiplication therefore acts per component as

    q_j omega_s = 0                    if bit j-1 of s is set,
                  (-1)^l omega_{s+2^(j-1)}  otherwise,
    p_j omega_s = 0                    if bit j-1 of s is clear,
                  (-1)^l omega_{s-2^(j-1)}  otherwise,

where l counts the q's with smaller index already present in s
(l = popcount of s below bit j-1).  This sign makes the Witt relations
hold exactly on every basis element, which is what the tests pin down.

Scalars are exact: plain ints or Fractions.  Floats are tolerated for
interoperability but never used in annihilation or kernel statements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from random import Random
from typing import Mapping, Sequence

import numpy as np

from .errors import ContractViolation, ResourceLimit
from .exactla import MOD_P, nullspace_mod_p, rational_reconstruct, rref_mod_p, sparse_nullspace_fraction

FULL_SPINOR_MAX_N = 20
KERNEL_MAX_N = 14


@dataclass(frozen=True)
class Spinor:
    """Sparse spinor: map from Fock index s < 2^n to a scalar coefficient.

    Treat as immutable; zero coefficients are stripped at construction.
    """

    n: int
    components: dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        top = 1 << self.n
        clean = {}
        for s, c in self.components.items():
            if not (0 <= s < top):
                raise ContractViolation(f"Fock index {s} out of range for n={self.n}")
            if c:
                clean[s] = c
        object.__setattr__(self, "components", clean)

    def is_zero(self) -> bool:
        return not self.components

    def coeff(self, s: int):
        return self.components.get(s, 0)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.components))

    def __add__(self, other: "Spinor") -> "Spinor":
        if self.n != other.n:
            raise ContractViolation("spinor dimension mismatch")
        comps = dict(self.components)
        for s, c in other.components.items():
            comps[s] = comps.get(s, 0) + c
        return Spinor(self.n, comps)

    def scaled(self, factor) -> "Spinor":
        return Spinor(self.n, {s: factor * c for s, c in self.components.items()})

    def proportional_to(self, other: "Spinor") -> bool:
        """True iff self = c * other for some nonzero scalar c (exact)."""
        if self.n != other.n or self.support() != other.support():
            return False
        if self.is_zero():
            return True
        s0 = self.support()[0]
        ratio = Fraction(self.components[s0]) / Fraction(other.components[s0])
        return all(
            Fraction(self.components[s]) == ratio * Fraction(other.components[s])
            for s in self.support()
        )


def basis_spinor(n: int, s: int, coeff=1) -> Spinor:
    """The single Fock component coeff * omega_s."""
    return Spinor(n, {s: coeff})


def fock_bits(s: int, n: int) -> str:
    """q-occupation of omega_s as a binary string, least significant = q_1."""
    return format(s, f"0{n}b") if n else ""


@dataclass(frozen=True)
class WittVector:
    """Grade-1 element sum_j (alpha_j p_j + beta_j q_j)."""

    n: int
    alpha: tuple
    beta: tuple

    def __post_init__(self):
        if len(self.alpha) != self.n or len(self.beta) != self.n:
            raise ContractViolation("coefficient lists must have length n")
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))

    @classmethod
    def p(cls, j: int, n: int) -> "WittVector":
        """The basis vector p_j (1-based j)."""
        _check_index(j, n)
        return cls(n, tuple(int(i == j - 1) for i in range(n)), (0,) * n)

    @classmethod
    def q(cls, j: int, n: int) -> "WittVector":
        """The basis vector q_j (1-based j)."""
        _check_index(j, n)
        return cls(n, (0,) * n, tuple(int(i == j - 1) for i in range(n)))

    def is_zero(self) -> bool:
        return not any(self.alpha) and not any(self.beta)

    def __add__(self, other: "WittVector") -> "WittVector":
        if self.n != other.n:
            raise ContractViolation("dimension mismatch")
        return WittVector(
            self.n,
            tuple(a + b for a, b in zip(self.alpha, other.alpha)),
            tuple(a + b for a, b in zip(self.beta, other.beta)),
        )

    def __sub__(self, other: "WittVector") -> "WittVector":
        return self + (-1) * other

    def __rmul__(self, factor) -> "WittVector":
        return WittVector(
            self.n,
            tuple(factor * a for a in self.alpha),
            tuple(factor * b for b in self.beta),
        )


def _check_index(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise IndexError(f"ladder index {j} out of range 1..{n}")


def _sign_below(s: int, bit: int) -> int:
    return -1 if (s & (bit - 1)).bit_count() & 1 else 1


def apply_q(j: int, phi: Spinor) -> Spinor:
    """Left-multiply by q_j: sets bit j-1 with the ladder sign, kills
    components where it is already set."""
    _check_index(j, phi.n)
    bit = 1 << (j - 1)
    out = {}
    for s, c in phi.components.items():
        if s & bit:
            continue
        out[s | bit] = c if _sign_below(s, bit) > 0 else -c
    return Spinor(phi.n, out)


def apply_p(j: int, phi: Spinor) -> Spinor:
    """Left-multiply by p_j: clears bit j-1 with the ladder sign, kills
    components where it is absent."""
    _check_index(j, phi.n)
    bit = 1 << (j - 1)
    out = {}
    for s, c in phi.components.items():
        if not s & bit:
            continue
        out[s ^ bit] = c if _sign_below(s, bit) > 0 else -c
    return Spinor(phi.n, out)


def apply_witt(v: WittVector, phi: Spinor) -> Spinor:
    """Left Clifford multiplication of a grade-1 vector on a spinor."""
    if v.n != phi.n:
        raise ContractViolation("dimension mismatch between vector and spinor")
    out: dict[int, object] = {}
    for j in range(v.n):
        a, b = v.alpha[j], v.beta[j]
        if not a and not b:
            continue
        bit = 1 << j
        for s, c in phi.components.items():
            if s & bit:
                if a:
                    t = s ^ bit
                    out[t] = out.get(t, 0) + (a * c if _sign_below(s, bit) > 0 else -a * c)
            elif b:
                t = s | bit
                out[t] = out.get(t, 0) + (b * c if _sign_below(s, bit) > 0 else -b * c)
    return Spinor(phi.n, out)


def witt_anticommutator(v: WittVector, w: WittVector):
    """Scalar c with [v, w]+ = c * identity, from the Witt relations."""
    if v.n != w.n:
        raise ContractViolation("dimension mismatch")
    return sum(va * wb + wa * vb for va, vb, wa, wb in zip(v.alpha, v.beta, w.alpha, w.beta))


def witt_pairing(v: WittVector, w: WittVector):
    """Scalar product v . w = half the anticommutator (exact)."""
    s = witt_anticommutator(v, w)
    if isinstance(s, int):
        return s // 2 if s % 2 == 0 else Fraction(s, 2)
    return s / 2


def is_null(v: WittVector) -> bool:
    return witt_anticommutator(v, v) == 0


def is_tnp(vs: Sequence[WittVector]) -> bool:
    """True iff the vectors are all null and pairwise anticommute, i.e.
    their span is totally null."""
    if not vs:
        return True
    n = vs[0].n
    if any(v.n != n for v in vs):
        raise ContractViolation("mixed dimensions")
    for i, v in enumerate(vs):
        for w in vs[i:]:
            if witt_anticommutator(v, w) != 0:
                return False
    return True


def full_spinor(n: int, seed: int | None = None, max_n: int = FULL_SPINOR_MAX_N) -> Spinor:
    """The dense spinor with all 2^n Fock components present.

    Default coefficients are all 1.  With a seed, coefficients are
    random nonzero integers; uniform coefficients can hide sign errors
    through symmetric cancellation, so randomized tests use this.
    """
    if n > max_n:
        raise ResourceLimit(f"dense spinor needs 2^{n} components; capped at n <= {max_n}")
    if seed is None:
        comps = {s: 1 for s in range(1 << n)}
    else:
        rng = Random(seed)
        comps = {s: rng.choice((1, -1)) * rng.randint(1, 9) for s in range(1 << n)}
    return Spinor(n, comps)


def spinor_from_tnp(
    vs: Sequence[WittVector],
    phi: Spinor | None = None,
    max_n: int = FULL_SPINOR_MAX_N,
) -> Spinor:
    """Spinor annihilated by every vector of a totally null span:
    the product v_1 ... v_k applied to a dense spinor.

    The factors are applied right to left.  Reordering the input can
    only flip the overall sign, and the result is annihilated by each
    v_i; both facts are exercised by tests rather than assumed.
    """
    if not vs:
        raise ContractViolation("need at least one vector")
    n = vs[0].n
    if len(vs) > n:
        raise ContractViolation(f"{len(vs)} vectors cannot span a totally null plane in 2n={2*n}")
    if not is_tnp(vs):
        raise ContractViolation(
            "vectors are not null and mutually orthogonal: only a totally "
            "null span admits a common annihilated spinor"
        )
    if phi is None:
        phi = full_spinor(n, max_n=max_n)
    elif phi.n != n:
        raise ContractViolation("dimension mismatch")
    out = phi
    for v in reversed(vs):
        out = apply_witt(v, out)
    return out


# ---------------------------------------------------------------------------
# common kernel of the left-multiplication operators (Cartan equation)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _ladder_tables(n: int):
    """Per-index sign vectors and bit masks for vectorized operator action."""
    size = 1 << n
    s = np.arange(size, dtype=np.int64)
    signs = np.empty((n, size), dtype=np.int64)
    for j in range(n):
        below = np.bitwise_count(s & ((1 << j) - 1)).astype(np.int64)
        signs[j] = 1 - 2 * (below & 1)
    return s, signs


def _as_exact_int_vector(v: WittVector) -> WittVector | None:
    """Rescale a Fraction/int vector to integer coefficients (same span).
    Returns None for the zero vector; floats are rejected."""
    coeffs = list(v.alpha) + list(v.beta)
    for c in coeffs:
        if isinstance(c, float) or isinstance(c, complex):
            raise ContractViolation("kernel computation requires exact (int or Fraction) coefficients")
    fracs = [Fraction(c) for c in coeffs]
    if not any(fracs):
        return None
    from math import gcd, lcm

    denom = lcm(*(f.denominator for f in fracs))
    ints = [int(f * denom) for f in fracs]
    g = gcd(*ints)
    ints = [c // g for c in ints]
    return WittVector(v.n, tuple(ints[: v.n]), tuple(ints[v.n :]))


def _operator_on_basis(v: WittVector, basis: np.ndarray, n: int, p: int) -> np.ndarray:
    """Image of each basis column (mod p) under left multiplication by v."""
    size = 1 << n
    s, signs = _ladder_tables(n)
    out = np.zeros_like(basis)
    for j in range(n):
        a = v.alpha[j] % p
        b = v.beta[j] % p
        bit = 1 << j
        has_bit = (s & bit) != 0
        if a:
            src = s[has_bit]
            out[src ^ bit] = (out[src ^ bit] + (a * signs[j][src] % p)[:, None] * basis[src]) % p
        if b:
            src = s[~has_bit]
            out[src | bit] = (out[src | bit] + (b * signs[j][src] % p)[:, None] * basis[src]) % p
    return out


def _kernel_mod_p(vs: list[WittVector], n: int, p: int) -> np.ndarray:
    """Common nullspace mod p, as a (2^n x dim) column basis."""
    size = 1 << n
    basis = np.eye(size, dtype=np.int64)
    for v in vs:
        if basis.shape[1] == 0:
            break
        image = _operator_on_basis(v, basis, n, p)
        coeffs = nullspace_mod_p(image, p)
        basis = basis @ coeffs % p
    return basis


def _stacked_rows(vs: list[WittVector], n: int):
    """Sparse constraint rows of the stacked system, for the exact fallback."""
    size = 1 << n
    for v in vs:
        for t in range(size):
            row: dict[int, object] = {}
            for j in range(n):
                bit = 1 << j
                if t & bit:
                    if v.beta[j]:
                        src = t ^ bit
                        row[src] = row.get(src, 0) + v.beta[j] * _sign_below(src, bit)
                else:
                    if v.alpha[j]:
                        src = t ^ bit
                        row[src] = row.get(src, 0) + v.alpha[j] * _sign_below(src, bit)
            if row:
                yield row


def _spinor_from_fractions(n: int, entries: dict[int, Fraction]) -> Spinor:
    """Clear denominators and common factors; leading coefficient positive."""
    from math import gcd, lcm

    nz = {s: f for s, f in entries.items() if f}
    if not nz:
        return Spinor(n, {})
    denom = lcm(*(f.denominator for f in nz.values()))
    ints = {s: int(f * denom) for s, f in nz.items()}
    g = gcd(*ints.values())
    lead = min(ints)
    sign = 1 if ints[lead] > 0 else -1
    return Spinor(n, {s: sign * (c // g) for s, c in ints.items()})


def cartan_kernel(
    vs: Sequence[WittVector],
    n: int | None = None,
    max_n: int = KERNEL_MAX_N,
) -> tuple[int, list[Spinor]]:
    """Dimension and exact basis of {phi : v phi = 0 for every v in vs}.

    The answer is certified without any floating tolerance: elimination
    runs mod a large prime, giving an exact upper bound on the
    dimension, and the reconstructed rational basis is then verified by
    exact left multiplication, giving a matching lower bound.  When
    reconstruction fails (never observed for graph systems), a pure
    Fraction elimination takes over.
    """
    vs = list(vs)
    if n is None:
        if not vs:
            raise ContractViolation("dimension n required when no vectors are given")
        n = vs[0].n
    if any(v.n != n for v in vs):
        raise ContractViolation("mixed dimensions")
    if n > max_n:
        raise ResourceLimit(f"kernel over a 2^{n}-dimensional space; capped at n <= {max_n}")
    reduced = [w for w in (_as_exact_int_vector(v) for v in vs) if w is not None]
    size = 1 << n
    if not reduced:
        return size, [basis_spinor(n, s) for s in range(size)]

    kernel_p = _kernel_mod_p(reduced, n, MOD_P)
    dim = kernel_p.shape[1]
    if dim == 0:
        # full rank mod p forces full rank over the rationals: kernel is 0
        return 0, []

    basis = _reconstruct_basis(kernel_p, n)
    if basis is not None and all(
        apply_witt(v, b).is_zero() for v in reduced for b in basis
    ):
        return dim, basis

    # unlucky prime or failed lift: exact sparse elimination
    exact = sparse_nullspace_fraction(_stacked_rows(reduced, n), size)
    basis = [_spinor_from_fractions(n, vec) for vec in exact]
    return len(basis), basis


def _reconstruct_basis(kernel_p: np.ndarray, n: int) -> list[Spinor] | None:
    """Lift a mod-p kernel basis to exact integer spinors via RREF and
    rational reconstruction.  Row-reduced shape keeps the basis
    independent by construction (distinct leading components)."""
    rref, _ = rref_mod_p(kernel_p.T, MOD_P)
    basis = []
    for row in rref:
        entries: dict[int, Fraction] = {}
        for s in np.nonzero(row)[0]:
            f = rational_reconstruct(int(row[s]), MOD_P)
            if f is None:
                return None
            entries[int(s)] = f
        if not entries:
            return None
        basis.append(_spinor_from_fractions(n, entries))
    return basis


def spinor_to_json_dict(phi: Spinor) -> dict:
    """JSON form: components sorted by Fock index; exact coefficients
    stay exact ([num, den] for rationals), complex become [re, im]."""
    comps = []
    for s in phi.support():
        c = phi.components[s]
        if isinstance(c, bool):
            raise ContractViolation("boolean spinor coefficient")
        if isinstance(c, int):
            enc: object = c
        elif isinstance(c, Fraction):
            enc = [c.numerator, c.denominator] if c.denominator != 1 else c.numerator
        elif isinstance(c, complex):
            enc = [c.real, c.imag]
        else:
            enc = float(c)
        comps.append({"index": s, "bits": fock_bits(s, phi.n), "coeff": enc})
    return {"n": phi.n, "components": comps}
