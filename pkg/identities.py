"""
Exact checks of the generalized Brylawski identities and the identities used to derive them.

For a ranked set with |E| = m and r(E) = r, and T = sum t_ij x^i y^j:
- Brylawski:    sum_{i<=h} sum_{j<=h-i} binom(h-i, j) (-1)^j t_ij = (-1)^(m-r) binom(h-r, h-m)
- hyperbola:    sum t_ij z^(i+j) (z-1)^(r-i) = z^m
- coefficients: sum t_ij (-1)^(r-k+j) binom(r-i, k-(i+j)) = delta(k, m)
- weights:      C(h, k) = (-1)^k binom(h-r, h-k) combine the coefficient identities into Brylawski's
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import config
from bipoly import BiPoly, UniPoly, binomial, expand_hyperbola
from utils.logger import logger


@dataclass(frozen=True)
class IdentityEntry:
    index: int
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class IdentityReport:
    """One identity checked over a range of h (or k)."""
    name: str
    index_name: str = 'h'
    entries: List[IdentityEntry] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def first_failure(self) -> Optional[IdentityEntry]:
        return next((entry for entry in self.entries if not entry.passed), None)


@dataclass
class VerificationSummary:
    m: int
    r: int
    brylawski: IdentityReport
    hyperbola: bool
    coefficients: IdentityReport
    proof_chain: IdentityReport
    rewriting: IdentityReport
    weight_collapse: bool
    classical: Dict[str, bool]
    hyperbola_error: Optional[str] = None

    @property
    def overall(self) -> bool:
        return (self.brylawski.overall and self.hyperbola and self.coefficients.overall
                and self.proof_chain.overall and self.rewriting.overall and self.weight_collapse
                and all(self.classical.values()))

    def first_failure(self) -> Optional[str]:
        """Human-readable witness for the first failing check, or None."""
        failure = self.brylawski.first_failure()
        if failure is not None:
            return f"brylawski fails at h={failure.index}: lhs={failure.lhs} rhs={failure.rhs}"
        if not self.hyperbola:
            return f"hyperbola identity fails: {self.hyperbola_error or 'expansion is not z^m'}"
        failure = self.coefficients.first_failure()
        if failure is not None:
            return f"coefficient identity fails at k={failure.index}: lhs={failure.lhs} rhs={failure.rhs}"
        for report in (self.proof_chain, self.rewriting):
            failure = report.first_failure()
            if failure is not None:
                return f"{report.name} fails at h={failure.index}: lhs={failure.lhs} rhs={failure.rhs}"
        if not self.weight_collapse:
            return "weight collapse fails on the support"
        for name, holds in self.classical.items():
            if not holds:
                return f"classical identity fails: {name}"
        return None


# --- Brylawski identities ---

def brylawski_lhs(t: BiPoly, h: int) -> int:
    """sum_{i=0}^{h} sum_{j=0}^{h-i} binom(h-i, j) (-1)^j t_ij."""
    if h < 0:
        raise ValueError(f"h must be nonnegative, got {h}")
    total = 0
    for (i, j), c in t.items():
        if i <= h and j <= h - i:
            total += binomial(h - i, j) * (-1) ** j * c
    return total


def brylawski_rhs(m: int, r: int, h: int) -> int:
    """(-1)^(m-r) binom(h-r, h-m), read as 0 when h < m."""
    if r < 0 or r > m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    if h < m:
        return 0
    return (-1) ** (m - r) * binomial(h - r, h - m)


def brylawski_rhs_graph(n: int, m: int, c: int, h: int) -> int:
    """Graph form: (-1)^(m-n+c) binom(h-n+c, h-m) for n vertices, m edges, c components."""
    return brylawski_rhs(m, n - c, h)


def verify_brylawski(t: BiPoly, m: int, r: int, h_max: Optional[int] = None) -> IdentityReport:
    if h_max is None:
        h_max = m + config.HMAX_OFFSET
    report = IdentityReport('brylawski', 'h')
    for h in range(h_max + 1):
        report.entries.append(IdentityEntry(h, brylawski_lhs(t, h), brylawski_rhs(m, r, h)))
    return report


# --- Hyperbola and coefficient identities ---

def verify_hyperbola(t: BiPoly, m: int, r: int) -> bool:
    """True iff the cleared hyperbola expansion equals z^m exactly."""
    return expand_hyperbola(t, r) == UniPoly.monomial(1, m)


def coefficient_identity_lhs(t: BiPoly, r: int, k: int) -> int:
    """Coefficient of z^k in the hyperbola expansion: sum t_ij (-1)^(r-k+j) binom(r-i, k-(i+j))."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    total = 0
    for (i, j), c in t.items():
        total += c * (-1) ** (r - k + j) * binomial(r - i, k - (i + j))
    return total


def verify_coefficient_identity(t: BiPoly, m: int, r: int, k_max: Optional[int] = None) -> IdentityReport:
    if k_max is None:
        k_max = m + config.COEFFICIENT_K_OFFSET
    report = IdentityReport('coefficients', 'k')
    for k in range(k_max + 1):
        report.entries.append(IdentityEntry(k, coefficient_identity_lhs(t, r, k), 1 if k == m else 0))
    return report


# --- Linear combination of the coefficient identities ---

def combination_weight(h: int, r: int, k: int) -> int:
    """C(h, k) = (-1)^k binom(h-r, h-k); h - r may be negative."""
    return (-1) ** k * binomial(h - r, h - k)


def verify_weight_collapse(h: int, r: int, i: int, j: int) -> bool:
    """sum_{k=0}^{h} binom(h-r, h-k) binom(r-i, k-(i+j)) == binom(h-i, h-(i+j))."""
    total = sum(binomial(h - r, h - k) * binomial(r - i, k - (i + j)) for k in range(h + 1))
    return total == binomial(h - i, h - (i + j))


def weighted_combination(t: BiPoly, r: int, h: int) -> int:
    """S_h = sum_{k=0}^{h} C(h, k) * (coefficient identity lhs at k)."""
    return sum(combination_weight(h, r, k) * coefficient_identity_lhs(t, r, k) for k in range(h + 1))


def verify_proof_chain(t: BiPoly, m: int, r: int, h_max: Optional[int] = None) -> IdentityReport:
    """Per h: S_h against C(h, m), which is zero for h < m."""
    if h_max is None:
        h_max = m + config.HMAX_OFFSET
    report = IdentityReport('proof_chain', 'h')
    for h in range(h_max + 1):
        expected = combination_weight(h, r, m) if m <= h else 0
        report.entries.append(IdentityEntry(h, weighted_combination(t, r, h), expected))
    return report


def verify_rewriting(t: BiPoly, r: int, h_max: int) -> IdentityReport:
    """Per h: S_h against (-1)^r times the Brylawski sum, the algebraic side of the derivation."""
    report = IdentityReport('rewriting', 'h')
    for h in range(h_max + 1):
        report.entries.append(IdentityEntry(h, weighted_combination(t, r, h), (-1) ** r * brylawski_lhs(t, h)))
    return report


def verify_support_collapse(t: BiPoly, r: int, h_max: int) -> bool:
    """Weight collapse on every support term (i, j) with i <= h, for every h up to h_max."""
    return all(verify_weight_collapse(h, r, i, j)
               for h in range(h_max + 1) for (i, j) in t.terms if i <= h)


# --- Classical specializations ---

def verify_classical(t: BiPoly, m: int) -> Dict[str, bool]:
    """The first three classical relations, each included only when m is large enough."""
    checks: Dict[str, bool] = {}
    if m >= 1:
        checks['t00 = 0'] = t.coefficient(0, 0) == 0
    if m >= 2:
        checks['t10 = t01'] = t.coefficient(1, 0) == t.coefficient(0, 1)
    if m >= 3:
        checks['t20 - t11 + t02 = t10'] = (
            t.coefficient(2, 0) - t.coefficient(1, 1) + t.coefficient(0, 2) == t.coefficient(1, 0))
    return checks


def verify_all(t: BiPoly, m: int, r: int, h_max: Optional[int] = None,
               k_max: Optional[int] = None) -> VerificationSummary:
    """Run every identity check on one Tutte polynomial."""
    hyperbola_error = None
    try:
        hyperbola = verify_hyperbola(t, m, r)
    except ValueError as e:
        hyperbola, hyperbola_error = False, str(e)
        logger.warning(f"⚠️ Hyperbola expansion rejected: {e}")
    if h_max is None:
        h_max = m + config.HMAX_OFFSET
    summary = VerificationSummary(
        m=m,
        r=r,
        brylawski=verify_brylawski(t, m, r, h_max),
        hyperbola=hyperbola,
        coefficients=verify_coefficient_identity(t, m, r, k_max),
        proof_chain=verify_proof_chain(t, m, r, h_max),
        rewriting=verify_rewriting(t, r, h_max),
        weight_collapse=verify_support_collapse(t, r, h_max),
        classical=verify_classical(t, m),
        hyperbola_error=hyperbola_error,
    )
    if summary.overall:
        logger.info(f"✅ All identities hold for m={m}, r={r}")
    else:
        logger.warning(f"⚠️ Identity failure for m={m}, r={r}: {summary.first_failure()}")
    return summary
