"""Command-line front end.

Subcommands: verify, equiv, twist, orbit, intrinsic, catalog. Anywhere a
file path is accepted, "catalog:<name>" loads a built-in entry instead.
Exit codes: 0 pass/equivalent, 1 fail/inequivalent, 2 usage or I/O error,
3 not-applicable. Verdicts come from exact arithmetic only; "--approx"
adds float renderings but never changes an exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from fsys.cyclotomic import CycField, CycNumber, embed_complex
from fsys.fusion import FusionSystem
from fsys.gauge import decide_gauge_equiv
from fsys.io import (
    SchemaError,
    SystemFile,
    catalog_names,
    catalog_text,
    load_catalog,
    load_file,
    save_file,
)
from fsys.modular import ModularSystem, intrinsic_data, verify_modular
from fsys.report import FAIL, FORMAT_VERSION, Report
from fsys.twist import Grading, galois_orbit, tau_twist, twist_system

CATALOG_PREFIX = "catalog:"


class UsageError(Exception):
    pass


def _resolve(arg: str) -> SystemFile:
    if arg.startswith(CATALOG_PREFIX):
        name = arg[len(CATALOG_PREFIX):]
        try:
            return load_catalog(name)
        except ValueError as e:
            raise UsageError(str(e)) from None
    try:
        return load_file(arg)
    except OSError as e:
        raise UsageError(f"cannot read {arg}: {e.strerror or e}") from None
    except SchemaError as e:
        raise UsageError(f"{arg}: {e}") from None


def _field(sf: SystemFile) -> CycField:
    system = sf.system
    base = system.base if isinstance(system, ModularSystem) else system
    return base.field


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def _print_report(rep: Report) -> None:
    for check in rep.checks:
        line = f"[{check.status}] {check.name}"
        if check.detail:
            line += f": {check.detail}"
        if check.violations:
            line += f" ({check.violations} violations)"
        print(line)
        if check.witness is not None and check.status == FAIL:
            print(f"  witness: {json.dumps(check.witness, sort_keys=True, default=list)}")
    print(f"outcome: {rep.outcome}")


def _approx_tree(value, field: CycField):
    """Float renderings for every wire found below value; None when empty."""
    if (
        isinstance(value, (list, tuple))
        and len(value) == field.degree
        and all(isinstance(x, str) for x in value)
    ):
        try:
            coeffs = [Fraction(x) for x in value]
        except (ValueError, ZeroDivisionError):
            return None
        re, im = embed_complex(CycNumber.from_coeffs(field, coeffs))
        return f"{re:.12g}{im:+.12g}j"
    if isinstance(value, (list, tuple)):
        out = [_approx_tree(v, field) for v in value]
        return out if any(v is not None for v in out) else None
    if isinstance(value, dict):
        picked = {}
        for k, v in value.items():
            a = _approx_tree(v, field)
            if a is not None:
                picked[k] = a
        return picked or None
    return None


def _attach_approx(rep: Report, field: CycField) -> None:
    source = {
        k: v
        for k, v in rep.values.items()
        if k not in ("labels", "fusion_rules", "rational", "approx")
    }
    approx = _approx_tree(source, field)
    rep.values["approx"] = approx if approx is not None else {}


def cmd_verify(args) -> int:
    sf = _resolve(args.path)
    rep = verify_modular(sf.system)
    if args.approx:
        _attach_approx(rep, _field(sf))
    if args.json:
        _emit_json(rep.to_dict())
    else:
        _print_report(rep)
    return 0 if rep.ok() else 1


def cmd_equiv(args) -> int:
    a = _resolve(args.path_a)
    b = _resolve(args.path_b)
    try:
        rep = decide_gauge_equiv(a.system, b.system)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.json:
        _emit_json(rep.to_dict())
    else:
        _print_report(rep)
    if rep.outcome == "equivalent":
        return 0
    if rep.outcome == "inequivalent":
        return 1
    return 3


def _parse_grading(spec: str, sf: SystemFile) -> Grading:
    system = sf.system
    ring = (system.base if isinstance(system, ModularSystem) else system).ring
    if "@" in spec:
        pairs, _, mod_text = spec.rpartition("@")
        try:
            modulus = int(mod_text)
        except ValueError:
            raise UsageError(f"bad grading modulus {mod_text!r}") from None
        deg = {}
        for item in pairs.split(","):
            label, sep, value = item.partition("=")
            if not sep:
                raise UsageError(f"bad grading item {item!r}; expected label=degree")
            try:
                deg[label.strip()] = int(value)
            except ValueError:
                raise UsageError(f"bad degree {value!r} for label {label!r}") from None
    else:
        try:
            with open(spec, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as e:
            raise UsageError(f"cannot read grading file {spec}: {e.strerror or e}") from None
        except json.JSONDecodeError as e:
            raise UsageError(f"grading file {spec} is not valid JSON: {e}") from None
        if not isinstance(doc, dict) or "modulus" not in doc or "deg" not in doc:
            raise UsageError("grading file must contain 'modulus' and 'deg'")
        modulus, deg = doc["modulus"], doc["deg"]
    if set(deg) != set(ring.labels):
        raise UsageError("grading must assign a degree to every label")
    g = Grading(modulus, tuple(int(deg[name]) for name in ring.labels))
    try:
        g.validate(ring)
    except ValueError as e:
        raise UsageError(f"grading: {e}") from None
    return g


def _parse_tau(text: str, field: CycField) -> CycNumber:
    if text.startswith("zeta:"):
        try:
            k = int(text[len("zeta:"):])
        except ValueError:
            raise UsageError(f"bad root exponent in {text!r}") from None
        return CycNumber.zeta_power(field, k)
    try:
        return CycNumber.rational(field, Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse tau value {text!r}") from None


def _default_out(args, suffix: str) -> Path:
    if args.out:
        return Path(args.out)
    if args.path.startswith(CATALOG_PREFIX):
        stem = args.path[len(CATALOG_PREFIX):]
        return Path(f"{stem}{suffix}.fsys")
    p = Path(args.path)
    return p.with_name(f"{p.stem}{suffix}.fsys")


def cmd_twist(args) -> int:
    sf = _resolve(args.path)
    if (args.sigma is None) == (args.tau is None):
        raise UsageError("exactly one of --sigma and --tau is required")
    if args.sigma is not None:
        try:
            twisted = twist_system(sf.system, args.sigma)
        except ValueError as e:
            raise UsageError(str(e)) from None
        out = _default_out(args, f"-sigma{args.sigma}")
    else:
        system = sf.system
        if not isinstance(system, FusionSystem):
            raise UsageError("tau twisting applies to fusion-only systems")
        grading = _parse_grading(args.grading, sf) if args.grading else sf.grading
        if grading is None:
            raise UsageError("no grading: pass --grading or use a file that ships one")
        tau = _parse_tau(args.tau, system.field)
        try:
            twisted = tau_twist(system, grading, tau)
        except ValueError as e:
            raise UsageError(str(e)) from None
        out = _default_out(args, "-tau")
    result = SystemFile(
        name=sf.name, system=twisted, grading=sf.grading, metadata=sf.metadata
    )
    try:
        save_file(result, out)
    except OSError as e:
        raise UsageError(f"cannot write {out}: {e.strerror or e}") from None
    rep = verify_modular(twisted)
    if args.json:
        payload = rep.to_dict()
        payload["output"] = str(out)
        _emit_json(payload)
    else:
        print(f"wrote {out}")
        _print_report(rep)
    return 0 if rep.ok() else 1


def cmd_orbit(args) -> int:
    sf = _resolve(args.path)
    orbit = galois_orbit(sf.system)
    if args.json:
        payload = {
            "format_version": FORMAT_VERSION,
            "order": orbit.order,
            "twists": list(orbit.twists),
            "classes": [list(c) for c in orbit.classes],
            "representatives": list(orbit.representatives),
            "method": orbit.method,
        }
        if orbit.caveat:
            payload["caveat"] = orbit.caveat
        _emit_json(payload)
    else:
        print(f"field Q(zeta_{orbit.order}), {len(orbit.twists)} twists: "
              f"{', '.join(str(k) for k in orbit.twists)}")
        for rep_k, cls in zip(orbit.representatives, orbit.classes):
            print(f"class of sigma_{rep_k}: {{{', '.join(str(k) for k in cls)}}}")
        print(f"classes: {len(orbit.classes)}")
        print(f"method: {orbit.method}")
        if orbit.caveat:
            print(f"caveat: {orbit.caveat}")
    return 0


def cmd_intrinsic(args) -> int:
    sf = _resolve(args.path)
    rep = intrinsic_data(sf.system)
    if args.approx:
        _attach_approx(rep, _field(sf))
    if args.json:
        _emit_json(rep.to_dict())
        return 0
    values = rep.values
    labels = values["labels"]
    print(f"labels: {', '.join(labels)}")
    rules = values["fusion_rules"]
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            terms = [
                (f"{n}*{labels[k]}" if n > 1 else labels[k])
                for k, n in enumerate(rules[i][j])
                if n
            ]
            print(f"{a} x {b} = {' + '.join(terms)}")
    if "s_hat" in values:
        print("s_hat rows (wire coordinates):")
        for row in values["s_hat"]:
            print("  " + "; ".join(",".join(w) for w in row))
    for key in ("u", "q"):
        if key in values and values[key] is not None:
            rendered = {k: ",".join(w) for k, w in values[key].items()}
            print(f"{key}: {json.dumps(rendered, sort_keys=True)}")
    if values.get("S") is None and "s_hat" in values:
        print("S: unavailable (no square roots of the u scalars on file)")
    if "r_char_polys" in values:
        print("R characteristic polynomials (low degree first):")
        for name, poly in values["r_char_polys"].items():
            print(f"  {name}: " + "; ".join(",".join(c) for c in poly))
    print(f"rational sublist: {json.dumps(values['rational'], sort_keys=True)}")
    if args.approx:
        print(f"approximate: {json.dumps(values['approx'], sort_keys=True)}")
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog_names():
            print(name)
        return 0
    if not args.name:
        raise UsageError(f"catalog {args.action} requires a name")
    try:
        text = catalog_text(args.name)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.action == "show":
        sys.stdout.write(text)
        return 0
    if not args.dest:
        raise UsageError("catalog export requires a destination path")
    try:
        Path(args.dest).write_text(text, encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot write {args.dest}: {e.strerror or e}") from None
    print(f"wrote {args.dest}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsys",
        description="Exact verification and comparison of fusion systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the axioms of one system")
    p.add_argument("path", help="a .fsys file or catalog:<name>")
    p.add_argument("--json", action="store_true")
    p.add_argument("--approx", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("equiv", help="decide gauge equivalence of two systems")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("twist", help="apply a Galois or tau twist, write the result")
    p.add_argument("path")
    p.add_argument("--sigma", type=int, default=None, metavar="K")
    p.add_argument("--tau", default=None, metavar="VALUE",
                   help="a rational like -1, or zeta:<k>")
    p.add_argument("--grading", default=None, metavar="SPEC",
                   help="inline 'label=deg,...@modulus' or a JSON file")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("orbit", help="group all Galois twists into classes")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("intrinsic", help="print gauge-independent data")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--approx", action="store_true")
    p.set_defaults(func=cmd_intrinsic)

    p = sub.add_parser("catalog", help="list, show, or export built-in entries")
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("dest", nargs="?", default=None)
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
