"""diskfill: invariants and certificates for ribbon-disk fillings.

The pieces fit together like this: ``groups`` holds presentations of
disk-exterior fundamental groups and their abelianizations, ``fox``
turns a presentation plus a weight map into an Alexander polynomial over
the exact Laurent ring in ``laurent``, ``front`` models Legendrian front
diagrams with their filling moves and certificate checker, and
``kauffman`` computes the two-variable Kauffman polynomial of a PD-coded
diagram together with the Thurston-Bennequin upper bound it implies.
``cli`` wires everything to the command line; bundled data files live in
``diskfill/data``.
"""

from importlib import resources

__version__ = "0.1.0"


def data_path(name):
    """Filesystem path of a bundled data file."""
    path = resources.files(__name__) / "data" / name
    if not path.is_file():
        raise FileNotFoundError(f"no bundled data file named {name!r}")
    return path
