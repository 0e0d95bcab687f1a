"""
Command-line front end: parse a group/stratification configuration, run the
computations, and emit JSON reports or DOT Hasse diagrams.

Exit codes: 0 ok, 1 verification failure, 2 invalid input or capacity.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .coxeter import CartanType, DomainError, make_system
from .extended import (
    DiagramAut,
    GroupProfile,
    OmegaGroup,
    StrataPoset,
    double_quotient,
    ext_double_reps,
    gerbe_dim,
    omega_stabilizer,
    stack_dim,
)
from .fzip_oracle import crosscheck
from .ortho_k3 import K3Config, k3_report
from .strata import (
    DEFAULT_CAP,
    CapacityError,
    beta0,
    beta0_fiber,
    make_zip_datum,
    xi_poset,
)

SCHEMA = "bruhat-zip/1"


@dataclass
class RunConfig:
    family: str = "A"
    rank: int = 1
    torus_dim: int | None = None
    omega: str = "trivial"
    frobenius: str = "identity"
    J: list[int] = field(default_factory=list)
    K: list[int] | None = None
    theta: str = "trivial"
    fmt: str = "json"
    cap: int = DEFAULT_CAP


_CONFIG_FIELDS = (
    "family", "rank", "torus_dim", "omega", "frobenius",
    "J", "K", "theta", "fmt", "cap",
)


def _parse_indices(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise DomainError(f"invalid index list {text!r}")


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as handle:
            filed = json.load(handle)
        for key, value in filed.items():
            if key not in _CONFIG_FIELDS:
                raise DomainError(f"unknown config field {key!r}")
            setattr(cfg, key, value)
    overrides = {
        "family": args.family,
        "rank": args.rank,
        "torus_dim": getattr(args, "torus_dim", None),
        "omega": getattr(args, "omega", None),
        "frobenius": getattr(args, "frobenius", None),
        "J": _parse_indices(args.J) if getattr(args, "J", None) is not None else None,
        "K": _parse_indices(args.K) if getattr(args, "K", None) is not None else None,
        "theta": getattr(args, "theta", None),
        "fmt": getattr(args, "fmt", None),
        "cap": getattr(args, "cap", None),
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    return cfg


def build_profile(cfg: RunConfig) -> GroupProfile:
    system = make_system(CartanType(cfg.family, cfg.rank))
    m = system.m
    if cfg.omega == "trivial":
        omega = OmegaGroup.trivial(m)
    elif cfg.omega == "d-swap":
        if cfg.family != "D":
            raise DomainError("omega: d-swap requires family D")
        omega = OmegaGroup.d_swap(m)
    else:
        raise DomainError(f"omega: unknown value {cfg.omega!r}")
    if cfg.frobenius == "identity":
        frob = DiagramAut.identity(m)
    elif cfg.frobenius == "swap-last":
        frob = DiagramAut.swap_last(m)
    else:
        perm = _parse_indices(cfg.frobenius)
        frob = DiagramAut(tuple(perm))
    torus = cfg.torus_dim if cfg.torus_dim is not None else m
    return GroupProfile(system, omega, torus, frob)


def _theta_labels(cfg: RunConfig, profile: GroupProfile, J: frozenset[int]):
    if cfg.theta == "trivial":
        return (profile.omega.identity,)
    if cfg.theta == "full":
        return omega_stabilizer(J, profile.omega)
    raise DomainError(f"theta: unknown value {cfg.theta!r}")


def build_datum(cfg: RunConfig):
    profile = build_profile(cfg)
    J = frozenset(cfg.J)
    theta = _theta_labels(cfg, profile, J)
    datum = make_zip_datum(profile, J, theta, cap=cfg.cap)
    if cfg.K is not None and frozenset(cfg.K) != datum.K:
        raise DomainError(
            f"K: {sorted(cfg.K)} is inconsistent with the derived set "
            f"{sorted(datum.K)}"
        )
    return datum


def node_label(profile: GroupProfile, elt) -> str:
    word = ".".join(str(x) for x in profile.system.reduced_word(elt.w))
    label = f"{profile.system.length(elt.w)}:{word}"
    if len(profile.omega.labels) > 1:
        label += f":{elt.omega}"
    return label


def emit_json(payload: dict) -> str:
    payload = {"schema": SCHEMA, **payload}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def emit_dot(profile: GroupProfile, poset: StrataPoset) -> str:
    lines = ["digraph poset {", "  rankdir=BT;"]
    labels = [node_label(profile, node.rep) for node in poset.nodes]
    for label in labels:
        lines.append(f'  "{label}";')
    for low, high in poset.covers:
        lines.append(f'  "{labels[low]}" -> "{labels[high]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_payload(profile: GroupProfile, poset: StrataPoset) -> dict:
    nodes = [
        {
            "id": idx,
            "label": node_label(profile, node.rep),
            "length": node.length,
            "component": node.component,
            "members": sorted(node_label(profile, m) for m in node.members),
        }
        for idx, node in enumerate(poset.nodes)
    ]
    return {
        "nodes": nodes,
        "covers": [list(c) for c in poset.covers],
        "components": [list(c) for c in poset.component_classes],
        "order_method": poset.order_method,
    }


# ---------------------------------------------------------------------------
# commands

def cmd_cosets(args) -> int:
    cfg = build_config(args)
    profile = build_profile(cfg)
    sysm = profile.system
    J = frozenset(cfg.J)
    if len(profile.omega.labels) > 1:
        datum = build_datum(cfg)
        elements = ext_double_reps(datum.J, datum.K, profile)
        kind = "JWK-extended"
    elif cfg.K is not None:
        elements = [
            _PlainElt(w, profile.omega.identity)
            for w in sysm.min_double_reps(J, frozenset(cfg.K))
        ]
        kind = "JWK"
    else:
        elements = [
            _PlainElt(w, profile.omega.identity) for w in sysm.min_coset_reps(J)
        ]
        kind = "JW"
    rows = [
        {"length": sysm.length(e.w), "label": node_label(profile, e)}
        for e in sorted(elements, key=profile.sort_key)
    ]
    sys.stdout.write(emit_json({"kind": kind, "rows": rows, "count": len(rows)}))
    return 0


class _PlainElt:
    def __init__(self, w, omega):
        self.w = w
        self.omega = omega

    def __iter__(self):
        return iter((self.w, self.omega))

    def __getitem__(self, i):
        return (self.w, self.omega)[i]


def cmd_poset(args) -> int:
    cfg = build_config(args)
    datum = build_datum(cfg)
    profile = datum.profile
    if args.which == "bruhat":
        poset = double_quotient(
            datum.J, datum.Theta, datum.K, datum.Delta, profile
        )
        extra = {
            "gerbe_dims": [
                gerbe_dim(node, datum.J, datum.K, profile) for node in poset.nodes
            ],
            "stack_dim": stack_dim(datum.J, profile),
        }
    else:
        poset = xi_poset(datum)
        extra = {"lengths": [node.length for node in poset.nodes]}
    if cfg.fmt == "dot":
        sys.stdout.write(emit_dot(profile, poset))
    else:
        payload = {"which": args.which, **poset_payload(profile, poset), **extra}
        sys.stdout.write(emit_json(payload))
    return 0


def cmd_beta(args) -> int:
    cfg = build_config(args)
    datum = build_datum(cfg)
    profile = datum.profile
    bruhat = double_quotient(datum.J, datum.Theta, datum.K, datum.Delta, profile)
    xi = xi_poset(datum)
    images = [beta0(xi, i, bruhat, datum) for i in range(len(xi.nodes))]
    order_preserving = all(
        not xi.leq[a][b] or bruhat.leq[images[a]][images[b]]
        for a in range(len(xi.nodes))
        for b in range(len(xi.nodes))
    )
    fibers = [
        {
            "bruhat": node_label(profile, bruhat.nodes[i].rep),
            "fiber": [
                node_label(profile, xi.nodes[j].rep)
                for j in beta0_fiber(bruhat, i, xi, datum)
            ],
        }
        for i in range(len(bruhat.nodes))
    ]
    payload = {
        "zip_nodes": [
            {
                "label": node_label(profile, xi.nodes[i].rep),
                "beta": node_label(profile, bruhat.nodes[images[i]].rep),
            }
            for i in range(len(xi.nodes))
        ],
        "fibers": fibers,
        "order_preserving": order_preserving,
    }
    sys.stdout.write(emit_json(payload))
    return 0 if order_preserving else 1


def cmd_k3(args) -> int:
    report = k3_report(K3Config(args.p, args.d))
    sys.stdout.write(emit_json(report))
    return 0


def cmd_oracle(args) -> int:
    weights = tuple(_parse_indices(args.weights))
    report = crosscheck(args.n, args.q, weights)
    sys.stdout.write(emit_json(report))
    return 0 if report["pass"] else 1


def _add_group_flags(sub):
    sub.add_argument("--config", help="JSON config file; flags override it")
    sub.add_argument("--family", choices=("A", "B", "C", "D"))
    sub.add_argument("--rank", type=int)
    sub.add_argument("--torus-dim", dest="torus_dim", type=int)
    sub.add_argument("--omega", choices=("trivial", "d-swap"))
    sub.add_argument("--frobenius")
    sub.add_argument("--J")
    sub.add_argument("--K")
    sub.add_argument("--theta", choices=("trivial", "full"))
    sub.add_argument("--format", dest="fmt", choices=("json", "dot"))
    sub.add_argument("--cap", type=int)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bruhat-zip",
        description="Bruhat and zip stratification computations",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_cosets = subs.add_parser("cosets", help="list minimal coset representatives")
    _add_group_flags(p_cosets)
    p_cosets.set_defaults(fn=cmd_cosets)

    p_poset = subs.add_parser("poset", help="Bruhat or zip stratum poset")
    _add_group_flags(p_poset)
    p_poset.add_argument("--which", choices=("bruhat", "zip"), default="bruhat")
    p_poset.set_defaults(fn=cmd_poset)

    p_beta = subs.add_parser("beta", help="comparison map and fibers")
    _add_group_flags(p_beta)
    p_beta.set_defaults(fn=cmd_beta)

    p_k3 = subs.add_parser("k3", help="K3 stratum report")
    p_k3.add_argument("--p", type=int, required=True)
    p_k3.add_argument("--d", type=int, required=True)
    p_k3.set_defaults(fn=cmd_k3)

    p_oracle = subs.add_parser("oracle", help="finite-field brute-force crosscheck")
    p_oracle.add_argument("--n", type=int, required=True)
    p_oracle.add_argument("--q", type=int, required=True)
    p_oracle.add_argument("--weights", required=True)
    p_oracle.set_defaults(fn=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CapacityError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
