"""
Parsing of the plain-text descriptors the command line takes for trees, weights and radial functions.

A descriptor is `<family>[:<key>=<value>,<key>=<value>,...]`. Values may themselves contain commas, as the tree spec
inside `wradial:spec=custom:prefix=2,3;extend=repeat,beta=0.5,gamma=1`, so fields are split only at commas that are
followed by a new `<key>=`.
"""
import logging
import re
from typing import Dict, Optional, Tuple

from autohardy import exc
from autohardy.functions import radial_function as rf
from autohardy.functions.radial_function import RadialFunction, RadialTreeU
from autohardy.tree.radial_tree import RadialTreeSpec
from autohardy.weights.abstract import WeightSpec
from autohardy.weights.homogeneous import (
    RemainderBar,
    RemainderBetaGamma,
    RemainderRq,
    WBetaGamma,
    WHalfGamma,
    WOpt,
)
from autohardy.weights.radial import RadialTreeW

logger = logging.getLogger(__name__)

_FIELD_SPLIT = re.compile(r",(?=[A-Za-z_]\w*=)")

WEIGHT_FAMILIES = {
    "wopt": (WOpt, ("q",), ()),
    "wbg": (WBetaGamma, ("q", "beta", "gamma"), ()),
    "whg": (WHalfGamma, ("q", "gamma"), ()),
    "rq": (RemainderRq, ("q",), ()),
    "rbg": (RemainderBetaGamma, ("q", "beta", "gamma"), ()),
    "rbar": (RemainderBar, ("q",), ()),
    "wradial": (RadialTreeW, ("spec", "beta", "gamma"), ("psi1",)),
}

FUNCTION_FAMILIES = {
    "green-sqrt": ((), ()),
    "u": (("beta", "gamma"), ()),
    "u3": (("alpha", "beta", "gamma"), ()),
    "pair-u": (("gamma",), ()),
    "pair-v": (("gamma",), ()),
    "ground-z": (("gamma",), ()),
    "radial-u": (("beta", "gamma"), ("psi1",)),
}


def split_descriptor(text: str) -> Tuple[str, Dict[str, str]]:
    """
    Split a descriptor into its family name and its `key=value` fields.
    """
    text = text.strip()
    family, _, body = text.partition(":")

    fields = {}
    if body:
        for item in _FIELD_SPLIT.split(body):
            key, separator, value = item.partition("=")
            key = key.strip()
            if not separator or not key:
                raise exc.DescriptorException(f"Cannot parse the field '{item}' of descriptor '{text}'.")
            if key in fields:
                raise exc.DescriptorException(f"The field '{key}' appears twice in descriptor '{text}'.")
            fields[key] = value.strip()

    return family.strip(), fields


def _checked_fields(text: str, fields: Dict[str, str], required: Tuple[str, ...], optional: Tuple[str, ...]):
    missing = [key for key in required if key not in fields]
    if missing:
        raise exc.DescriptorException(f"Descriptor '{text}' is missing {', '.join(missing)}.")

    unknown = [key for key in fields if key not in required + optional]
    if unknown:
        raise exc.DescriptorException(f"Descriptor '{text}' has unknown fields {', '.join(unknown)}.")


def _number(text: str, key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise exc.DescriptorException(f"The field {key}={value} of descriptor '{text}' is not a number.")


def _integer(text: str, key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise exc.DescriptorException(f"The field {key}={value} of descriptor '{text}' is not an integer.")


def parse_tree(text: str) -> RadialTreeSpec:
    try:
        return RadialTreeSpec.from_string(text)
    except exc.TreeException as e:
        raise exc.DescriptorException(str(e)) from e


def parse_weight(text: str, param_tolerance: Optional[float] = None) -> WeightSpec:
    """
    Parse a weight or remainder descriptor such as `whg:q=2,gamma=0.70710678`.

    Parameters lying within `param_tolerance` of an endpoint of their range are snapped onto it before the family
    is validated.

    Raises
    ------
    DescriptorException
        If the descriptor cannot be parsed.
    InvalidParams
        If a parameter violates the range of its family; the exception names the violated bound.
    """
    family, fields = split_descriptor(text)

    if family not in WEIGHT_FAMILIES:
        raise exc.DescriptorException(
            f"Unknown weight family '{family}', use one of {', '.join(WEIGHT_FAMILIES)}."
        )

    cls, required, optional = WEIGHT_FAMILIES[family]
    _checked_fields(text, fields, required, optional)

    kwargs = {}
    for key, value in fields.items():
        if key == "spec":
            kwargs[key] = parse_tree(value)
        elif key == "q":
            kwargs[key] = _integer(text, key, value)
        else:
            kwargs[key] = _number(text, key, value)

    try:
        weight = cls(**kwargs)
    except exc.TreeException as e:
        raise exc.DescriptorException(str(e)) from e

    if param_tolerance:
        weight = weight.snapped(tolerance=param_tolerance)

    check = weight.validate()
    if not check.ok:
        raise exc.InvalidParams(bound=check.bound, message=check.message)

    logger.debug(f"Parsed weight descriptor '{text}' as {weight.descriptor}.")
    return weight


def parse_function(text: str, spec: RadialTreeSpec) -> RadialFunction:
    """
    Parse a radial function descriptor such as `ground-z:gamma=0.70710678` on the given tree.

    Every family except `radial-u` lives on a homogeneous tree and takes its q from it.
    """
    family, fields = split_descriptor(text)

    if family not in FUNCTION_FAMILIES:
        raise exc.DescriptorException(
            f"Unknown function family '{family}', use one of {', '.join(FUNCTION_FAMILIES)}."
        )

    required, optional = FUNCTION_FAMILIES[family]
    _checked_fields(text, fields, required, optional)
    values = {key: _number(text, key, value) for key, value in fields.items()}

    if family == "radial-u":
        return RadialTreeU(spec=spec, beta=values["beta"], gamma=values["gamma"], psi1=values.get("psi1", 1.0))

    if not spec.is_homogeneous:
        raise exc.DescriptorException(f"The function family '{family}' needs a homogeneous tree.")

    q = spec.q

    if family == "green-sqrt":
        return rf.green_sqrt(q=q)
    if family == "u":
        return rf.u_beta_gamma(q=q, beta=values["beta"], gamma=values["gamma"])
    if family == "u3":
        return rf.u_alpha_beta_gamma(q=q, alpha=values["alpha"], beta=values["beta"], gamma=values["gamma"])
    if family == "pair-u":
        return rf.pair_u(q=q, gamma=values["gamma"])
    if family == "pair-v":
        return rf.pair_v(q=q, gamma=values["gamma"])
    return rf.ground_z(q=q, gamma=values["gamma"])


def tree_for_weight(weight: WeightSpec, tree_text: Optional[str]) -> RadialTreeSpec:
    """
    The tree a weight is used on: the `--tree` descriptor when given, otherwise the tree the weight family names.

    Raises
    ------
    DescriptorException
        If the given tree disagrees with the tree of the weight family.
    """
    if isinstance(weight, RadialTreeW):
        own = weight.spec
    else:
        own = RadialTreeSpec.homogeneous(q=weight.homogeneous_q)

    if tree_text is None:
        return own

    spec = parse_tree(tree_text)
    if spec != own:
        raise exc.DescriptorException(
            f"The weight {weight.descriptor} lives on {own.to_string()}, not on {spec.to_string()}."
        )
    return spec
