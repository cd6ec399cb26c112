"""(c, k, n) ramp secret sharing on top of the MDS generators.

Any c shares are independent of the message and any k shares recover it.
With k = c + 1 this is ordinary (k, n) threshold sharing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .mds import MdsGenerator, MdsParams, build_generator, mds_decode, mds_encode


@dataclass(frozen=True)
class RampScheme:
    params: MdsParams
    generator: MdsGenerator


def make_ramp_scheme(params: MdsParams, variant: str = "B", seed: int = 0) -> RampScheme:
    return RampScheme(params, build_generator(params, variant, seed))


def ramp_share(scheme: RampScheme, message, keys) -> list:
    return list(mds_encode(scheme.generator, message, keys).symbols)


def ramp_reconstruct(scheme: RampScheme, positions, shares) -> list:
    message, _ = mds_decode(scheme.generator, positions, shares)
    return message


def ramp_region_check(rates, message_entropy, params: MdsParams) -> bool:
    """True iff every (k-c)-subset of the n rates sums to at least H(M)."""
    rates = [Fraction(r) for r in rates]
    if len(rates) != params.n:
        raise ValueError(f"expected {params.n} rates")
    if any(r < 0 for r in rates):
        raise ValueError("rates must be nonnegative")
    # the binding subsets are the ones made of the smallest rates
    smallest = sorted(rates)[: params.k - params.c]
    return sum(smallest, Fraction(0)) >= Fraction(message_entropy)
