# hypercore/errors.py

"""
Exception hierarchy shared by every package.

Search outcomes (found / none / budget) are returned as values; these
exceptions signal bad input, refused work, or broken certificates.
"""


class KhgError(Exception):
    """Base class for all toolkit errors"""


class HypergraphError(KhgError, ValueError):
    """Invalid hypergraph data: arity, range, duplicates, wrong subset size"""


class KhgFormatError(HypergraphError):
    """Malformed .khg text"""

    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class ParameterError(KhgError, ValueError):
    """Precondition violation of a generator or calculator"""


class GuardExceeded(KhgError):
    """A configured size or feasibility guard refused the request"""

    def __init__(self, guard, requested, limit):
        self.guard = guard
        self.requested = requested
        self.limit = limit
        super().__init__(f"{guard}: requested {requested} exceeds limit {limit}")


class BudgetExceeded(KhgError):
    """A node or time budget ran out before the search finished"""


class BackendError(KhgError):
    """SAT backend failure or unparseable solver output"""


class SolverUnknown(KhgError):
    """An UNKNOWN verdict reached a place that needs an exact answer"""

    def __init__(self, t, detail=""):
        self.t = t
        super().__init__(f"solver returned UNKNOWN at t={t}" + (f" ({detail})" if detail else ""))


class CertificateError(KhgError):
    """An independently re-verified certificate did not check out"""
