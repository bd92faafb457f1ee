# emacs: at the end of the file
# ex: set sts=4 ts=4 sw=4 et:
"""Safe import of duecredit constructs.

srfid cites the formulas it implements with ``@due.dcite(references.X)``.
When duecredit is not installed, or fails to import, the decorators below do
nothing and the package works unchanged.

Use as

    from .due import due, Doi, BibTeX, Text

Origin:     duecredit stub
Copyright:  2015-2019  DueCredit developers
License:    BSD-2
"""

__version__ = "0.0.8"


class InactiveDueCreditCollector(object):
    """Collector stub that records nothing."""

    def _donothing(self, *args, **kwargs):
        """Do nothing."""
        pass

    def dcite(self, *args, **kwargs):
        """Return a decorator that leaves the function untouched."""

        def nondecorating_decorator(func):
            return func

        return nondecorating_decorator

    active = False
    activate = add = cite = dump = load = _donothing

    def __repr__(self):
        return self.__class__.__name__ + "()"


def _donothing_func(*args, **kwargs):
    """Stand in for Doi, BibTeX, Text and Url."""
    pass


try:
    from duecredit import BibTeX, Doi, Text, Url, due

    if "due" in locals() and not hasattr(due, "cite"):
        raise RuntimeError("Imported due lacks .cite. DueCredit is now disabled")
except Exception as e:
    if not isinstance(e, ImportError):
        from loguru import logger

        logger.error(f"Failed to import duecredit due to {e}")
    due = InactiveDueCreditCollector()
    BibTeX = Doi = Url = Text = _donothing_func
