"""
Text formats
Circle elements, representation files, word lists, Lagrangian points and flat key=value configs
"""
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from .circle import CircleElement, MoebiusLift, PLMap
from .errors import InputError
from .lagrangian import LagrangianPoint
from .surface import PingPongCertificate, SurfaceData, SurfaceRep, verify_certificate
from .words import FreeWord

logger = logging.getLogger(__name__)

_RATIONAL = r"-?\d+(?:/\d+)?"
_PL_NODE = re.compile(rf"\(\s*({_RATIONAL})\s*,\s*({_RATIONAL})\s*\)")
_MOEBIUS = re.compile(
    rf"^moebius:\s*\[\s*\[\s*({_RATIONAL})\s*,\s*({_RATIONAL})\s*\]\s*,"
    rf"\s*\[\s*({_RATIONAL})\s*,\s*({_RATIONAL})\s*\]\s*\]\s*(?:winding\s+(-?\d+))?\s*$"
)
_SURFACE = re.compile(r"^surface\s+genus\s*=\s*(\d+)\s+boundary\s*=\s*(\d+)\s*$")
_LAGRANGIAN = re.compile(r"^lagrangian:\s*\[(.*)\]\s*theta\s+(\S+)\s*$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _content_lines(text: str) -> List[str]:
    return [stripped for stripped in (_strip(line) for line in text.splitlines()) if stripped]


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}")


def parse_element(text: str) -> CircleElement:
    """Parse 'pl: [(0, 0), (1/2, 1/4)]' or 'moebius: [[a,b],[c,d]] winding m'."""
    text = text.strip()
    if text.startswith("pl:"):
        body = text[3:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise InputError(f"piecewise-linear maps look like 'pl: [(x, y), ...]', got {text!r}")
        nodes = [(parse_rational(x), parse_rational(y)) for x, y in _PL_NODE.findall(body)]
        leftover = _PL_NODE.sub("", body[1:-1]).replace(",", "").strip()
        if leftover or not nodes:
            raise InputError(f"malformed piecewise-linear map: {text!r}")
        return PLMap(tuple(nodes))
    if text.startswith("moebius:"):
        match = _MOEBIUS.match(text)
        if not match:
            raise InputError(f"Moebius lifts look like 'moebius: [[a,b],[c,d]] winding m', got {text!r}")
        a, b, c, d, winding = match.groups()
        return MoebiusLift(tuple(parse_rational(e) for e in (a, b, c, d)), int(winding or 0))
    raise InputError(f"unknown element format: {text!r}")


def format_element(g: CircleElement) -> str:
    return str(g)


def read_elements(path: Union[str, Path]) -> List[CircleElement]:
    return [parse_element(line) for line in _content_lines(_read(path))]


def read_words(path: Union[str, Path]) -> List[FreeWord]:
    return [FreeWord(line) for line in _content_lines(_read(path))]


def _read(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise InputError(f"cannot read {path}: {error}")


# ---------- REPRESENTATION FILES ----------

def parse_rep(text: str) -> SurfaceRep:
    """
    Parse a representation file.

    The first line names the surface, e.g. 'surface genus=1 boundary=1'; each
    further line assigns a generator: 'a = moebius: [[1,1],[1,2]] winding 0'.
    Optional 'name = ...' and 'reference = true' lines are accepted.
    """
    lines = _content_lines(text)
    if not lines:
        raise InputError("empty representation file")
    match = _SURFACE.match(lines[0])
    if not match:
        raise InputError(f"first line must look like 'surface genus=1 boundary=1', got {lines[0]!r}")
    surface = SurfaceData(int(match.group(1)), int(match.group(2)))
    generators: Dict[str, MoebiusLift] = {}
    name, reference = "rho", False
    for line in lines[1:]:
        key, separator, value = line.partition("=")
        if not separator:
            raise InputError(f"expected 'key = value', got {line!r}")
        key, value = key.strip(), value.strip()
        if key == "name":
            name = value
        elif key == "reference":
            reference = value.lower() in ("1", "true", "yes")
        elif len(key) == 1 and key.islower():
            element = parse_element(value)
            if not isinstance(element, MoebiusLift):
                raise InputError(f"generator {key} must be a Moebius lift")
            generators[key] = element
        else:
            raise InputError(f"unknown representation key: {key!r}")
    expected = [chr(ord("a") + i) for i in range(surface.rank)]
    if sorted(generators) != expected:
        raise InputError(f"{surface} needs generators {expected}, got {sorted(generators)}")
    rep = SurfaceRep(surface, tuple(generators[g] for g in expected), name, reference,
                     PingPongCertificate("markov") if surface.rank == 2 and surface.genus == 1 else None)
    if rep.certificate is not None and not verify_certificate(rep):
        rep = SurfaceRep(surface, rep.lifts, name, reference)
    return rep


def format_rep(rep: SurfaceRep) -> str:
    lines = [str(rep.surface), f"name = {rep.name}"]
    if rep.reference:
        lines.append("reference = true")
    for index, lift in enumerate(rep.lifts):
        lines.append(f"{chr(ord('a') + index)} = {lift}")
    return "\n".join(lines) + "\n"


def read_rep(path: Union[str, Path]) -> SurfaceRep:
    return parse_rep(_read(path))


# ---------- LAGRANGIAN POINTS ----------

def parse_lagrangian(text: str) -> LagrangianPoint:
    """Row-major complex matrix with ';' between rows, then the lifted angle."""
    match = _LAGRANGIAN.match(text.strip())
    if not match:
        raise InputError(f"Lagrangian points look like 'lagrangian: [1+0j 0j; 0j 1+0j] theta 0', got {text!r}")
    rows_text, theta = match.groups()
    try:
        rows = [[complex(entry) for entry in row.split()] for row in rows_text.split(";")]
        return LagrangianPoint(np.array(rows, dtype=complex), float(theta))
    except ValueError as error:
        raise InputError(f"malformed Lagrangian point {text!r}: {error}")


# ---------- FLAT CONFIG ----------

def parse_config(text: str) -> Dict[str, str]:
    """Flat key=value text; blank lines and '#' comments are ignored."""
    values: Dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = _strip(line)
        if not stripped:
            continue
        key, separator, value = stripped.partition("=")
        if not separator or not key.strip():
            raise InputError(f"config line {number}: expected key=value, got {line!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def load_config(path: Union[str, Path]) -> Dict[str, str]:
    values = parse_config(_read(path))
    logger.debug("Loaded %d config keys from %s", len(values), path)
    return values


def split_pair(elements: List[CircleElement]) -> Tuple[CircleElement, CircleElement]:
    if len(elements) < 2:
        raise InputError(f"expected two elements, got {len(elements)}")
    return elements[0], elements[1]
