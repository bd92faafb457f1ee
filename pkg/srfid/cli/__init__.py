"""Command line interface of srfid."""
