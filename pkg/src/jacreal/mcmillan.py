"""Smith-McMillan form of a rational matrix whose denominators are powers of one prime."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .poly import Poly, valuation
from .polymat import PolyMatrix, smith_form
from .ratfun import PrimeComponent, RatFun, RatMatrix


@dataclass(frozen=True)
class SmithMcMillan:
    """``T = U @ Sigma @ V.T`` with ``Sigma = diag(a_i / p**k_i, 0, ...)``.

    ``numerators[i]`` is monic and coprime to ``prime``.  ``exponents`` are
    non-increasing; a negative exponent means ``p**(-k_i)`` divides the
    diagonal entry, which contributes nothing to a realization.
    """

    U: PolyMatrix
    numerators: tuple
    exponents: tuple
    prime: Poly
    V: PolyMatrix

    @property
    def rank(self) -> int:
        return len(self.numerators)

    def diagonal(self) -> list[RatFun]:
        out = []
        for a, k in zip(self.numerators, self.exponents):
            if k >= 0:
                out.append(RatFun(a, self.prime**k))
            else:
                out.append(RatFun(a * self.prime ** (-k)))
        return out

    def sigma(self) -> RatMatrix:
        f = self.prime.field
        out = RatMatrix.zeros(f, self.U.rows, self.V.rows)
        for i, d in enumerate(self.diagonal()):
            out.entries[i][i] = d
        return out

    def reconstruct(self) -> RatMatrix:
        f = self.prime.field
        u = RatMatrix.from_polys(f, self.U.entries, cols=self.U.cols)
        vt = RatMatrix.from_polys(f, self.V.transpose().entries, cols=self.V.rows)
        return u @ self.sigma() @ vt

    def degree(self) -> int:
        """Contribution ``sum(deg p * k_i)`` over positive exponents."""
        return self.prime.degree * sum(k for k in self.exponents if k > 0)


def smith_mcmillan(c: PrimeComponent) -> SmithMcMillan:
    """Smith-McMillan form of a prime component via the Smith form of its numerator."""
    p = c.prime
    T = c.component
    f = T.field
    ell = 0
    for row in T.entries:
        for x in row:
            if x.is_zero():
                continue
            if not x.is_strictly_proper():
                raise UsageError(f"entry {x} of a prime component is not strictly proper")
            e = valuation(x.den, p)
            if p**e != x.den:
                raise UsageError(f"denominator {x.den} is not a power of {p}")
            ell = max(ell, e)
    pl = p**ell
    N = PolyMatrix(
        f, [[x.num * pl.exact_div(x.den) for x in row] for row in T.entries], cols=T.cols
    )
    sd = smith_form(N)
    numerators = []
    exponents = []
    for d in sd.invariant_factors:
        v = valuation(d, p)
        numerators.append(d.exact_div(p**v))
        exponents.append(ell - v)
    # N = U_inv S V_inv, so T = U_inv (S / p^ell) V_inv
    return SmithMcMillan(
        U=sd.U_inv,
        numerators=tuple(numerators),
        exponents=tuple(exponents),
        prime=p,
        V=sd.V_inv.transpose(),
    )


def smith_mcmillan_from_fixture(
    U: PolyMatrix, diagonal: list[RatFun], V: PolyMatrix, prime: Poly, check: RatMatrix | None = None
) -> SmithMcMillan:
    """Wrap externally supplied ``U``, ``Sigma``, ``V``; optionally verify against ``check``."""
    numerators, exponents = [], []
    for d in diagonal:
        if d.is_zero():
            break
        vn = valuation(d.num, prime)
        vd = valuation(d.den, prime)
        if prime**vd != d.den:
            raise UsageError(f"diagonal entry {d} has a denominator other than a power of {prime}")
        numerators.append(d.num.exact_div(prime**vn))
        exponents.append(vd - vn)
    smf = SmithMcMillan(U=U, numerators=tuple(numerators), exponents=tuple(exponents), prime=prime, V=V)
    if check is not None and smf.reconstruct() != check:
        raise UsageError("U @ Sigma @ V.T does not reproduce the given matrix")
    return smf
