"""Command-line front end.

Exit codes: 0 success (or every verdict as expected), 1 property violation or
runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from akasim.crypto.types import RootKey, ServingNetworkId
from akasim.engines.keys import SessionKeys
from akasim.engines.runner import ProtocolTranscript, run_to_completion
from akasim.errors import AkaError, UnavailableError
from akasim.harness.report import run_matrix
from akasim.harness.scenarios import SCENARIOS, run_scenario
from akasim.harness.world import build_world, world_from_store
from akasim.store import SqnPolicy, SubscriberRecord, SubscriberStore
from akasim.variants import Role, Variant
from akasim.vectors import VectorFactory

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
DB_ENV = "AKASIM_DB"

_NET_FLAGS = {"snid_4g": "snid", "ani": "ani", "snn": "snn"}


def _variant(text: str) -> Variant:
    try:
        return Variant.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown variant {text!r}; choose from {', '.join(v.value for v in Variant)}")


def _hex(nbytes: int):
    def parse(text: str) -> bytes:
        try:
            raw = bytes.fromhex(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not hex")
        if len(raw) != nbytes:
            raise argparse.ArgumentTypeError(f"expected {nbytes * 8} bits")
        return raw
    return parse


def _add_network(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--snid", help="4G serving network identity, e.g. 001-01")
    g.add_argument("--ani", help="access network identity for 4G EAP-AKA'")
    g.add_argument("--snn", help="5G serving network name, e.g. 5G:mnc001.mcc001.3gppnetwork.org")


def _network(parser, args, variant: Variant) -> ServingNetworkId | None:
    kind = variant.network_kind
    given = {k: getattr(args, f) for k, f in _NET_FLAGS.items() if getattr(args, f, None)}
    if kind is None:
        return None
    if kind not in given:
        parser.error(f"--variant {variant.value} requires --{_NET_FLAGS[kind]}")
    try:
        return ServingNetworkId.parse(kind, given[kind])
    except AkaError as exc:
        parser.error(str(exc))


def _db_path(parser, args) -> Path:
    path = args.db or os.environ.get(DB_ENV)
    if not path:
        parser.error(f"--db is required (or set {DB_ENV})")
    return Path(path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="akasim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("provision", help="add a subscriber to the database")
    p.add_argument("--db")
    p.add_argument("--imsi", required=True)
    p.add_argument("--supi", default="")
    p.add_argument("--k", type=_hex(16), help="128-bit K; random from --seed if omitted")
    p.add_argument("--opc", type=_hex(16), help="128-bit OPc; random from --seed if omitted")
    p.add_argument("--sqn", type=int, default=None, help="initial home SQN (default: one step)")
    p.add_argument("--amf", type=_hex(2), default=b"\x00\x00")
    p.add_argument("--generations", default=",".join(v.value for v in Variant))
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--step", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("vectors", help="issue authentication vectors")
    p.add_argument("--db")
    p.add_argument("--imsi", required=True)
    p.add_argument("--variant", type=_variant, required=True)
    _add_network(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("run", help="run one AKA flow end to end")
    p.add_argument("--db", help="use a provisioned subscriber instead of a seeded one")
    p.add_argument("--imsi")
    p.add_argument("--variant", type=_variant, required=True)
    _add_network(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "table"), default="text")
    p.add_argument("--out", help="write the transcript here")
    p.add_argument("--reveal-keys", action="store_true")

    p = sub.add_parser("attack", help="run adversary scenarios")
    p.add_argument("--matrix", action="store_true", help="every scenario x variant")
    p.add_argument("--scenario", choices=sorted(SCENARIOS))
    p.add_argument("--variant", type=_variant)
    p.add_argument("--seed", type=int, action="append", default=None,
                   help="repeatable; default 7")
    p.add_argument("--format", choices=("text", "table"), default="text")
    p.add_argument("--out", help="directory for report, table, figure and evidence")
    p.add_argument("--expect", choices=("succeeds", "blocked"))

    p = sub.add_parser("inspect", help="summarise a saved transcript")
    p.add_argument("transcript")
    return parser


def cmd_provision(parser, args) -> int:
    path = _db_path(parser, args)
    if path.exists():
        store = SubscriberStore.load(path)
        if args.window or args.step:
            parser.error("--window/--step only apply when creating a database")
    else:
        store = SubscriberStore(path, SqnPolicy(args.window or 100, args.step or 32))
    rng = random.Random(args.seed)
    k = args.k or rng.randbytes(16)
    opc = args.opc or rng.randbytes(16)
    gens = frozenset(Variant.parse(g) for g in args.generations.split(",") if g)
    sqn = args.sqn if args.sqn is not None else store.policy.step
    store.provision(SubscriberRecord(imsi=args.imsi, supi=args.supi, root=RootKey(k, opc),
                                     sqn_hn=sqn, amf_field=args.amf, enabled_generations=gens))
    store.save(path)
    print(f"provisioned {args.imsi} in {path}")
    return EXIT_OK


def cmd_vectors(parser, args) -> int:
    store = SubscriberStore.load(_db_path(parser, args))
    v = args.variant
    net = _network(parser, args, v)
    factory = VectorFactory(store, random.Random(args.seed))
    for _ in range(args.count):
        if v is Variant.GSM:
            av = factory.gen_triplet(args.imsi)
        elif v is Variant.UMTS:
            av = factory.gen_quintet(args.imsi)
        elif v is Variant.ECGSM_IOT:
            av = factory.gen_ecgsm_av(args.imsi)
        elif v is Variant.EPS:
            av = factory.gen_eps_av(args.imsi, net)
        elif v is Variant.FIVEG_AKA:
            he = factory.gen_5g_he_av(args.imsi, net)
            print(he.to_text())
            av = factory.reduce_to_se_av(he)
        else:
            av = factory.gen_eap_material(args.imsi, v, net)
        print(av.to_text())
    return EXIT_OK


def _key_text(keys: SessionKeys, reveal: bool) -> list[tuple[str, str]]:
    return [(n, keys[n].hex() if reveal else keys.fingerprint(n)) for n in keys.names()]


def cmd_run(parser, args) -> int:
    v = args.variant
    net = _network(parser, args, v)
    if args.db:
        store = SubscriberStore.load(args.db)
        ident = args.imsi or next(iter(store)).imsi
        world = world_from_store(store, ident, v, args.seed, serving_network=net)
    else:
        world = build_world(v, args.seed, serving_network=net)
    parties = world.parties()
    transcript = run_to_completion(parties, world.bus())
    if args.out:
        transcript.save(args.out)

    problems, held = [], {}
    for party in parties:
        try:
            held[party.role] = party.session_keys()
        except UnavailableError:
            problems.append(f"{party.role.value} ended in {party.phase.value}")
    ue = held.get(Role.UE)
    for role in (Role.SERVING, Role.HOME):
        if ue is None or role not in held:
            continue
        for name in held[role].shared_with(ue):
            if held[role][name] != ue[name]:
                problems.append(f"{name} differs: ue {ue.fingerprint(name)} "
                                f"!= {role.value} {held[role].fingerprint(name)}")

    if args.format == "table":
        print("role\tphase\tkey\tvalue")
        for party in parties:
            keys = _key_text(held[party.role], args.reveal_keys) if party.role in held else []
            for name, val in keys or [("-", "-")]:
                print(f"{party.role.value}\t{party.phase.value}\t{name}\t{val}")
    else:
        print(f"variant {v.value} seed {args.seed}" + (f" network {net.text()}" if net else ""))
        for party in parties:
            keys = _key_text(held[party.role], args.reveal_keys) if party.role in held else []
            kt = " ".join(f"{n}={val}" for n, val in keys)
            print(f"{party.role.value:<11} {party.phase.value:<13} {kt}".rstrip())
        print("keys agree" if not problems else "VIOLATION")
    for p in problems:
        print(f"  {p}", file=sys.stderr)
    return EXIT_VIOLATION if problems else EXIT_OK


def cmd_attack(parser, args) -> int:
    seeds = args.seed or [7]
    if args.matrix:
        report = run_matrix(seeds)
        text = report.render_table() if args.format == "table" else report.render_text()
        sys.stdout.write(text)
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / "report.txt").write_text(report.render_text())
            (out / "matrix.tsv").write_text(report.render_table())
            report.write_evidence(out)
            from akasim.harness.plotting import plot_matrix
            plot_matrix(report, out / "matrix.png")
        return EXIT_VIOLATION if report.deviations() else EXIT_OK
    if not (args.scenario and args.variant):
        parser.error("attack needs --matrix, or both --scenario and --variant")
    failed = False
    for seed in seeds:
        outcome = run_scenario(args.scenario, args.variant, seed)
        label = "SUCCEEDS" if outcome.attack_succeeded else "BLOCKED"
        if args.format == "table":
            print(f"{outcome.scenario}\t{outcome.variant.value}\t{seed}\t"
                  f"{str(outcome.attack_succeeded).lower()}")
        else:
            print(f"{outcome.scenario} {outcome.variant.value} seed {seed}: {label}")
            for k in sorted(outcome.verdicts):
                print(f"  {k} {outcome.verdicts[k]}")
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            name = f"{outcome.scenario}__{outcome.variant.value}__seed{seed}.txt"
            (out / name).write_text(outcome.evidence_text())
        if args.expect and outcome.attack_succeeded != (args.expect == "succeeds"):
            failed = True
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_inspect(parser, args) -> int:
    transcript = ProtocolTranscript.load(args.transcript)
    print(f"variant {transcript.variant.value}, {len(transcript.entries)} messages")
    for e in transcript.entries:
        link = "air " if e.message.on_air else "core"
        fields = " ".join(f"{n}={v.hex()[:16]}{'..' if len(v) > 8 else ''}"
                          for n, v in e.message.fields)
        print(f"t={e.t:<3} {link} {e.sender.value:>10} -> {e.receiver.value:<10} "
              f"{e.message.kind.value:<13} {fields}".rstrip())
    for role, phase in transcript.outcome.items():
        print(f"outcome {role.value} {phase}")
    if transcript.stalled:
        print("stalled")
    return EXIT_OK


COMMANDS = {"provision": cmd_provision, "vectors": cmd_vectors, "run": cmd_run,
            "attack": cmd_attack, "inspect": cmd_inspect}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](parser, args)
    except (AkaError, OSError) as exc:
        print(f"akasim: error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
