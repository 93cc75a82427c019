"""Python front end of the kdvsym engine.

Every call goes through the command line front end with JSON output, so the
dictionaries returned here follow the schema in docs/json_schema.md.
"""

import json

from ._kdvsym import ParseError, run, simplify

__all__ = ["ParseError", "run", "simplify", "derive", "check", "compare", "KdvsymError"]


class KdvsymError(RuntimeError):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _params(params):
    return ",".join(f"{k}={v}" for k, v in sorted(params.items()))


def _json(command, seed, params, **flags):
    args = ["--format", "json", "--seed", str(seed)]
    if params:
        args += ["--params", _params(params)]
    if flags.get("cross_consequence"):
        args.append("--cross-consequence")
    code, out, err = run(args + command)
    if code == 2:
        raise KdvsymError(code, err.strip())
    report = json.loads(out)
    report["exit_code"] = code
    return report


def derive(target, seed=1, cross_consequence=False, **params):
    """Determining system of scalar, potential, augmented, a file or an instance."""
    return _json(["derive", target], seed, params, cross_consequence=cross_consequence)


def check(operator, system, seed=1, **params):
    """Symmetry verdict of an operator on a named instance or a system file."""
    return _json(["check", operator, system], seed, params)


def compare(theorem, seed=1, **params):
    """Proof steps of theorem 1 or 2, or the worked example for 3."""
    return _json(["compare", str(theorem)], seed, params)
