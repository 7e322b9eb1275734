"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: ConfigError -> 2, DomainError and its
subclasses -> 3, I/O failures (OSError) -> 4.
"""


class ErgolabError(Exception):
    pass


class ConfigError(ErgolabError):
    """Invalid experiment configuration. Carries the full list of problems."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class DomainError(ErgolabError):
    """State, parameter or numeric-domain violation."""


class DomainEscapeError(DomainError):
    """An orbit left the declared invariant region."""

    def __init__(self, step, state):
        self.step = step
        self.state = state
        super().__init__(f"orbit left the domain at step {step}: {state}")


class SamplerError(DomainError):
    """Sampler strategy incompatible with the system or out of stock."""


class HorizonError(DomainError):
    """A trace does not cover the requested index range."""


class ReportIOError(ErgolabError, OSError):
    """Failed to read or write a report artifact."""
