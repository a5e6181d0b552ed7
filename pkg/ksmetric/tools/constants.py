import json
import os
from functools import lru_cache

"""
Package paths and packaged defaults.

    get_constant() --> read a top-level entry of data/defaults.json
    get_tolerance() --> read one named tolerance
"""

#path to package
ksmetric_path = os.path.abspath(os.path.join(os.path.realpath(__file__), os.pardir, os.pardir))

#paths to files in data folder
data_folder = os.path.join(ksmetric_path, "data")
defaults_file = os.path.join(data_folder, "defaults.json")


@lru_cache(maxsize=1)
def _load_defaults():
    with open(defaults_file, "r") as f:
        return json.load(f)


def get_constant(name):
    """
    Return a deep copy of the named entry in the defaults file.
    """

    defaults = _load_defaults()
    if name not in defaults:
        raise KeyError(f"unknown constant: {name}")

    #round-trip so callers can mutate freely
    return json.loads(json.dumps(defaults[name]))


def get_tolerance(name):
    """
    Return the named tolerance as a float.
    """

    tolerances = get_constant("tolerances")
    if name not in tolerances:
        raise KeyError(f"unknown tolerance: {name}")
    return float(tolerances[name])


FORMAT_VERSION = get_constant("format_version")
SIZE_CAP = get_constant("size_cap")
