"""Parity metrics over group outcome rates and confusion matrices.

The rate-based metrics (statistical parity, disparate impact) are what the
screening pipeline consumes; the error-rate metrics (TPR/FPR parity,
average absolute odds) are provided for completeness and need labeled
outcomes the pipeline does not have.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from pdei.errors import InputError


class UnknownGroupError(InputError):
    pass


class UndefinedRateError(InputError):
    pass


@dataclass
class GroupRates:
    """Favorable-outcome probability per group."""

    rates: Mapping[str, float]

    def __post_init__(self) -> None:
        if len(self.rates) < 2:
            raise InputError("need at least two groups")
        for group, p in self.rates.items():
            if not 0.0 <= p <= 1.0:
                raise InputError(f"rate for group {group!r} is {p}, outside [0, 1]")

    def rate(self, group: str) -> float:
        try:
            return self.rates[group]
        except KeyError:
            raise UnknownGroupError(f"unknown group {group!r}") from None


@dataclass
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "tn", "fn"):
            if getattr(self, name) < 0:
                raise InputError(f"{name} must be nonnegative")

    @property
    def tpr(self) -> float:
        if self.tp + self.fn == 0:
            raise UndefinedRateError("TPR undefined: tp + fn = 0")
        return self.tp / (self.tp + self.fn)

    @property
    def fpr(self) -> float:
        if self.fp + self.tn == 0:
            raise UndefinedRateError("FPR undefined: fp + tn = 0")
        return self.fp / (self.fp + self.tn)


def _as_rates(rates: GroupRates | Mapping[str, float]) -> GroupRates:
    return rates if isinstance(rates, GroupRates) else GroupRates(rates)


def statistical_parity_gap(rates, b: str, b_other: str) -> float:
    """|p(favorable | b) - p(favorable | b_other)|."""
    r = _as_rates(rates)
    return abs(r.rate(b) - r.rate(b_other))


def parity_holds(rates, b: str, b_other: str, tolerance: float = 1e-12) -> bool:
    return statistical_parity_gap(rates, b, b_other) <= tolerance


def disparate_impact(rates, b: str, b_other: str) -> float:
    """p(favorable | b) / p(favorable | b_other); reciprocal in (b, b_other)."""
    r = _as_rates(rates)
    denominator = r.rate(b_other)
    if denominator <= 0:
        raise UndefinedRateError(f"rate for group {b_other!r} is zero; ratio undefined")
    return r.rate(b) / denominator


def tpr_parity_gap(m_b: ConfusionMatrix, m_b_other: ConfusionMatrix) -> float:
    return abs(m_b.tpr - m_b_other.tpr)


def fpr_parity_gap(m_b: ConfusionMatrix, m_b_other: ConfusionMatrix) -> float:
    return abs(m_b.fpr - m_b_other.fpr)


def average_absolute_odds(m_b: ConfusionMatrix, m_b_other: ConfusionMatrix) -> float:
    return (tpr_parity_gap(m_b, m_b_other) + fpr_parity_gap(m_b, m_b_other)) / 2.0
