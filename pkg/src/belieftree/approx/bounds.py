#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from __future__ import annotations
from dataclasses import dataclass, asdict
import math
from ..compiler.junction import JunctionTree
from ..engine import propagation
from ..engine.case import Case, PropagationOutcome
from ..utils import ApproximationError, helper, printer
from .approximation import ApproximationReport


@dataclass(frozen=True)
class BoundReport:
    """
    The worst-case error of any posterior P(H | case) computed on an
    approximated tree, compared with the exact tree.
    """

    mu_case: float
    """Defines the normalization constant of the case on the approximated tree."""

    coarse_bound: float
    """Defines the bound from the global error alone."""

    refined_bound: float
    """Defines the bound from the smallest finding error of the case."""

    excluded: bool
    """Defines whether the case has no surviving support."""

    def export(self) -> dict:
        return asdict(self)

    def __str__(self) -> str:
        return helper.dumps(self.export(), indent=4)


def _bound(mass: float, mu_case: float, error: float) -> float:
    # mass / (mass + P(case and A)), where P(case and A) = mu_case * (1 - e)
    if mass <= 0.0:
        return 0.0
    return mass / (mass + mu_case * (1.0 - error))


def worst_case_bound(report: ApproximationReport, case: Case, mu_case: float) -> BoundReport:
    """
    Bounds the error of the posteriors of a case propagated on the
    approximated tree. The coarse bound uses the global error e; the refined
    bound uses the smallest prior mass of any finding together with an
    annihilated joint state. A multi-state finding sums that mass over its
    allowed states. Both bounds are 1 for an excluded case.

    :param report:      The report of the approximation
    :type report:       ApproximationReport
    :param case:        The case
    :type case:         Case
    :param mu_case:     The normalization constant of the case on the approximated tree
    :type mu_case:      float

    :returns:           The bounds
    :rtype:             BoundReport
    """

    if mu_case == 0.0:
        return BoundReport(mu_case, 1.0, 1.0, True)

    error = report.error
    mass = error
    for finding in case:
        finding_mass = math.fsum(report.get_finding_error(finding.node, s) for s in finding.allowed)
        mass = min(mass, finding_mass)

    return BoundReport(
        mu_case=mu_case,
        coarse_bound=_bound(error, mu_case, error),
        refined_bound=_bound(mass, mu_case, error),
        excluded=False,
    )


def check_case_admissible(jt: JunctionTree, case: Case, root: int = 0) -> PropagationOutcome:
    """
    Propagates a case on a copy of an approximated tree and reports whether
    it was excluded by the approximation. An excluded case should be
    answered by a less approximated tree.

    :param jt:      The approximated tree
    :type jt:       JunctionTree
    :param case:    The case
    :type case:     Case
    :param root:    The root clique
    :type root:     int

    :returns:       The normalization constant and the exclusion flag
    :rtype:         PropagationOutcome
    """

    if jt.has_evidence:
        raise ApproximationError("The tree already carries evidence.")
    _, outcome = propagation.propagate_case(jt, case, root)
    if outcome.excluded:
        printer.warning(f"Case {case!r} is excluded by the approximation of '{jt.name}'.")
    return outcome
