import functools
import inspect
from contextlib import contextmanager
from typing import Iterator

from terwilliger.log.setup import CURRENT_RUN, LoggingConfigurator


@contextmanager
def run_context(label: str) -> Iterator[str]:
    """Tag every log record emitted inside the block with ``label`` (e.g. ``u=2,3 p=2``)."""
    token = CURRENT_RUN.set(label)
    try:
        yield label
    finally:
        CURRENT_RUN.reset(token)


def with_spinner(text: str, spinner: str = "simpleDotsScrolling"):
    """
    Decorator factory showing a rich status spinner while the decorated function runs.

    Parameters
    ----------
    text : str
        Status template, formatted with the bound arguments of the call
        (``"checking {name}"``). The raw text is shown if formatting fails.
    spinner : str, optional
        Rich spinner name.

    Notes
    -----
    Without a configured console (library use, tests) the function just runs.
    """

    def decorator(func):
        sig = inspect.signature(func)

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            console = LoggingConfigurator.get_console()
            if console is None:
                return func(*args, **kwargs)

            bound = sig.bind_partial(*args, **kwargs)
            bound.apply_defaults()
            try:
                message = text.format(**bound.arguments)
            except (KeyError, IndexError, ValueError):
                message = text
            run = CURRENT_RUN.get()
            if run != "-":
                message = f"{run}: {message}"

            with console.status(f"[bold green]{message}", spinner=spinner):
                return func(*args, **kwargs)
        return wrapper
    return decorator
