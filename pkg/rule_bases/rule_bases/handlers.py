import click

from .constants import EXIT_INPUT_ERROR
from .exceptions import InputError, RuleBasesError
from .logger import bases_logger


def handle_errors(error: RuleBasesError, command: str) -> int:
    """Reports an error that reached the command line and picks the exit code.

    Input errors are the user's to fix and get a one-line report. Anything
    else from the library also exits with the input-error code, but its
    traceback goes to the log.

    Args:
        error (RuleBasesError): The error
        command (str): The subcommand that raised it

    Returns:
        int: The process exit code
    """
    if isinstance(error, InputError):
        bases_logger.error("%s, Command: %s" % (error, command))
    else:
        bases_logger.exception(
            "Unexpected failure in %s", command, exc_info=error
        )

    click.echo(f"Error: {error}", err=True)
    return EXIT_INPUT_ERROR
