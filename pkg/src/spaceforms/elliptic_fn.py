"""Jacobi elliptic functions sn, cn, dn and the quarter period K.

K comes from the arithmetic-geometric mean; sn, cn, dn from the descending
Landen (Gauss) recursion on a reduced argument.  Parameters m <= 0 go through
the real Jacobi transformation to m/(m-1) in [0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SumNotZero

_MAX_STEPS = 40


def _agm_sequence(m: float):
    a, b, c = 1.0, math.sqrt(1.0 - m), math.sqrt(m)
    seq = [(a, b, c)]
    for _ in range(_MAX_STEPS):
        if abs(c) <= 1e-17 * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        seq.append((a, b, c))
    return seq


def complete_K(m: float) -> float:
    m = float(m)
    if not (0.0 <= m < 1.0):
        raise DomainError(f"complete_K needs 0 <= m < 1, got {m}")
    a = _agm_sequence(m)[-1][0]
    return math.pi / (2.0 * a)


def _scn_reduced(u: float, m: float, extra_steps: int = 0):
    """sn, cn, dn for 0 <= u <= K and 0 < m < 1 by the Gauss recursion."""
    seq = _agm_sequence(m)
    for _ in range(extra_steps):
        a, b, c = seq[-1]
        seq.append((0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)))
    n = len(seq) - 1
    phi = (2.0 ** n) * seq[-1][0] * u
    prev = phi
    for j in range(n, 0, -1):
        a, _, c = seq[j]
        prev = phi
        phi = 0.5 * (phi + math.asin(c / a * math.sin(phi)))
    sn, cn = math.sin(phi), math.cos(phi)
    if n == 0:
        return sn, cn, 1.0
    dn = cn / math.cos(prev - phi)
    return sn, cn, dn


def _scn_unit_interval(u: float, m: float, extra_steps: int = 0):
    """sn, cn, dn for 0 <= m < 1 and any real u."""
    if m == 0.0:
        return math.sin(u), math.cos(u), 1.0
    K = complete_K(m)
    sign = -1.0 if u < 0 else 1.0
    v = abs(u)
    v = math.fmod(v, 4.0 * K)
    # fold onto [0, K] using the quarter-period symmetries
    if v > 2.0 * K:
        v -= 2.0 * K
        s_sn, s_cn = -1.0, -1.0
    else:
        s_sn, s_cn = 1.0, 1.0
    if v > K:
        v = 2.0 * K - v
        s_cn = -s_cn
    if v > 0.5 * K:
        # sn(K - x) = cd(x), cn(K - x) = k' sd(x), dn(K - x) = k' nd(x)
        kp = math.sqrt(1.0 - m)
        s, c, d = _scn_reduced(K - v, m, extra_steps)
        sn, cn, dn = c / d, kp * s / d, kp / d
    else:
        sn, cn, dn = _scn_reduced(v, m, extra_steps)
    return sign * s_sn * sn, s_cn * cn, dn


def jacobi_sn_cn_dn(u: float, m: float, extra_steps: int = 0):
    u, m = float(u), float(m)
    if not m < 1.0:
        raise DomainError(f"jacobi functions need m < 1, got {m}")
    if m >= 0.0:
        return _scn_unit_interval(u, m, extra_steps)
    # cd(v, k) = cn(u, kh), sd(v, k) = sn(u, kh) / sqrt(1 - k^2), nd(v, k) = dn(u, kh)
    # with kh^2 = m < 0, k^2 = m / (m - 1) and u = sqrt(1 - k^2) v.
    mk = m / (m - 1.0)
    kp = math.sqrt(1.0 - mk)
    v = u / kp
    sn, cn, dn = _scn_unit_interval(v, mk, extra_steps)
    return kp * sn / dn, cn / dn, 1.0 / dn


def jacobi_vec(u, m: float):
    """Vectorised convenience wrapper returning three arrays."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.array([jacobi_sn_cn_dn(x, m) for x in u.reshape(-1)])
    if out.size == 0:
        return np.zeros(0), np.zeros(0), np.zeros(0)
    return out[:, 0].reshape(u.shape), out[:, 1].reshape(u.shape), out[:, 2].reshape(u.shape)


@dataclass(frozen=True)
class EllipticModulus:
    m: float
    K: float = field(init=False)
    Kprime: float = field(init=False)

    def __post_init__(self):
        m = float(self.m)
        if not m < 1.0:
            raise DomainError(f"modulus needs m < 1, got {m}")
        if m >= 0.0:
            K = complete_K(m)
        else:
            mk = m / (m - 1.0)
            K = complete_K(mk) / math.sqrt(1.0 - m)
        Kp = complete_K(1.0 - m) if 0.0 < m < 1.0 else math.nan
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "Kprime", Kp)

    @property
    def k(self) -> float:
        return math.sqrt(self.m) if self.m >= 0 else math.nan

    def scn(self, u: float):
        return jacobi_sn_cn_dn(u, self.m)


def addition_matrix(z, m: float) -> np.ndarray:
    rows = []
    for zi in z:
        sn, cn, dn = jacobi_sn_cn_dn(zi, m)
        rows.append([cn, sn, dn, 1.0])
    return np.array(rows)


def addition_determinant(z, m: float, check_sum: bool = True, rel_eps: float = 1e-9) -> float:
    z = [float(v) for v in z]
    if len(z) != 4:
        raise ValueError("need exactly four arguments")
    if check_sum and abs(sum(z)) > rel_eps * max(1.0, max(abs(v) for v in z)):
        raise SumNotZero(f"arguments sum to {sum(z)}")
    return float(np.linalg.det(addition_matrix(z, m)))
