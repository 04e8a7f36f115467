# coding=utf-8
"""
geoloop command line.

Every subcommand reads a manifold file and word/tuple files (a missing
--word, or "-", reads stdin), writes JSON or CSV to stdout and diagnostics
to stderr. Exit codes: 0 ok, 1 parse error, 2 validity error, 3 solver
failure. Nothing is written to stdout on a nonzero exit.
"""

import argparse
import csv
import io
import sys
from collections import namedtuple

from .config import env_eps_eq
from .const import EXIT_OK, EXIT_PARSE, EXIT_VALIDITY, EXIT_CONVERGENCE, JSON_DIGITS, GEOLOOP_VERSION
from .exceptions import ParseException, ValidityException, SolverException
from .g_logger import logger
from . import converters, group, invariants, random_words, realization, words

COMMANDS = ("validate", "reduce", "mul", "inv", "act", "realize", "sample", "solve-geodesic",
            "pi1", "deck", "conjugate", "chi", "relator", "random-words")

CommandResult = namedtuple("CommandResult", "exit_code output error")

_FLOAT_FORMAT = "%.{}g".format(JSON_DIGITS)


class CommandRequest:
    def __init__(self, command, manifold,
                 words=(),
                 tuple_path=None,
                 samples=64,
                 seed=0,
                 fmt="json",
                 tolerance=None,
                 src=None,
                 dst=None,
                 count=10,
                 max_length=8,
                 basepoint=None,
                 stdin=None):
        """
        :param command: one of COMMANDS
        :param manifold: path of the manifold JSON file
        :param words: word file paths; "-" reads stdin
        :param src: JSON coordinate list, start point of solve-geodesic
        :param dst: JSON coordinate list, end point of solve-geodesic
        :param basepoint: JSON coordinate list, basepoint of random-words
        :param stdin: text used for "-" instead of sys.stdin
        """
        if command not in COMMANDS:
            raise ParseException("ArgumentException", "unknown command {!r}".format(command))
        if fmt not in ("json", "csv"):
            raise ParseException("ArgumentException", "format should be json or csv")
        self.command = command
        self.manifold = manifold
        self.words = list(words)
        self.tuple_path = tuple_path
        self.samples = samples
        self.seed = seed
        self.fmt = fmt
        self.tolerance = tolerance
        self.src = src
        self.dst = dst
        self.count = count
        self.max_length = max_length
        self.basepoint = basepoint
        self.stdin = stdin

    @classmethod
    def from_args(cls, args, stdin=None):
        return cls(args.command, args.manifold,
                   words=args.word or (),
                   tuple_path=args.tuple,
                   samples=args.samples,
                   seed=args.seed,
                   fmt=args.format,
                   tolerance=args.tolerance,
                   src=args.src,
                   dst=args.dst,
                   count=args.count,
                   max_length=args.max_length,
                   basepoint=args.basepoint,
                   stdin=stdin)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseException("ArgumentException", message)


def build_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument("--manifold", required=True, metavar="PATH", help="manifold JSON file")
    common.add_argument("--word", action="append", metavar="PATH", help="word JSON file, repeatable; - is stdin")
    common.add_argument("--tuple", metavar="PATH", help="surface tuple JSON file")
    common.add_argument("--samples", type=int, default=64, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="S")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tolerance", type=float, metavar="X", help="point coincidence threshold eps_eq")
    common.add_argument("--from", dest="src", metavar="POINT", help="JSON coordinate list")
    common.add_argument("--to", dest="dst", metavar="POINT", help="JSON coordinate list")
    common.add_argument("--count", type=int, default=10)
    common.add_argument("--max-length", dest="max_length", type=int, default=8)
    common.add_argument("--basepoint", metavar="POINT", help="JSON coordinate list")

    parser = _ArgumentParser(prog="geoloop", description="geodesic words and loop spaces")
    parser.add_argument("--version", action="version", version="geoloop " + GEOLOOP_VERSION)
    sub = parser.add_subparsers(dest="command")
    sub.required = True
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


class _Session:
    def __init__(self, request):
        self.request = request
        eps_eq = request.tolerance if request.tolerance is not None else env_eps_eq()
        self.manifold = converters.parse_manifold(self._load(request.manifold), eps_eq, request.manifold)

    def _load(self, path):
        if path in (None, "-"):
            text = self.request.stdin if self.request.stdin is not None else sys.stdin.read()
            return converters.load_json(text, "<stdin>")
        return converters.read_json_file(path)

    def word(self, index=0):
        paths = self.request.words or ["-"]
        if index >= len(paths):
            raise ParseException("ArgumentException", "{} needs at least {} --word".format(
                self.request.command, index + 1))
        return converters.parse_word(self.manifold, self._load(paths[index]), paths[index])

    def element(self, index=0):
        w = self.word(index)
        return group.as_element(w)

    def elements(self):
        return [self.element(i) for i in range(max(len(self.request.words), 1))]

    def surface_tuple(self):
        if not self.request.tuple_path:
            raise ParseException("ArgumentException", "{} needs --tuple".format(self.request.command))
        return converters.parse_tuple(self.manifold, self._load(self.request.tuple_path), self.request.tuple_path)

    def point(self, text, flag):
        if text is None:
            raise ParseException("ArgumentException", "{} needs {}".format(self.request.command, flag))
        data = converters.load_json(text, flag)
        if not isinstance(data, list):
            raise ParseException("ParseException", "{}: expected a coordinate list".format(flag))
        return self.manifold.point(data)


def _word_output(w):
    return converters.dumps(converters.word_to_json(w))


def _samples_output(fmt, ts, points, extra):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for t, p in zip(ts, points):
            writer.writerow([_FLOAT_FORMAT % t] + [_FLOAT_FORMAT % c for c in p])
        return buf.getvalue()
    extra = dict(extra)
    extra["samples"] = [[t] + list(p) for t, p in zip(ts, points)]
    return converters.dumps(extra)


def _check_samples(n):
    if n < 1:
        raise ValidityException("PreconditionException", "samples should be >= 1, got {}".format(n))


def _validate(s):
    w = s.word()
    words.require_valid(w)
    return converters.dumps({"valid": True, "species": w.species, "k": w.k})


def _reduce(s):
    return _word_output(words.reduce(s.word()))


def _mul(s):
    elements = s.elements()
    result = elements[0]
    for g in elements[1:]:
        result = group.mul(result, g)
    return _word_output(result)


def _inv(s):
    return _word_output(group.inverse(s.element()))


def _act(s):
    return _word_output(group.action_mu(words.reduce(s.word(0)), s.element(1)))


def _realize(s):
    n = s.request.samples
    _check_samples(n)
    loop = realization.realize(s.word())
    ts = [float(i) / n for i in range(n + 1)]
    return _samples_output(s.request.fmt, ts, realization.sample(loop, n),
                           {"length": loop.length, "breakpoints": loop.breakpoints})


def _sample(s):
    n = s.request.samples
    _check_samples(n)
    points = realization.sample(realization.realize(s.word()), n)
    if s.request.fmt == "csv":
        return _samples_output("csv", [float(i) / n for i in range(n + 1)], points, {})
    return converters.dumps({"points": points})


def _solve_geodesic(s):
    n = s.request.samples
    _check_samples(n)
    a = s.point(s.request.src, "--from")
    b = s.point(s.request.dst, "--to")
    path = s.manifold.geodesic(a, b)
    ts = [float(i) / n for i in range(n + 1)]
    return _samples_output(s.request.fmt, ts, path.points(ts), {"length": path.length})


def _pi1(s):
    return converters.dumps({"class": converters.deck_to_json(invariants.pi1_class(s.word()))})


def _deck(s):
    return converters.dumps({"class": converters.deck_to_json(invariants.deck_element_of_path(s.word()))})


def _conjugate(s):
    return _word_output(invariants.conjugate(s.element(0), s.element(1)))


def _chi(s):
    return _word_output(invariants.chi(s.surface_tuple()))


def _relator(s):
    return converters.dumps({"class": invariants.is_surface_relator(s.surface_tuple())})


def _random_words(s):
    r = s.request
    v0 = s.point(r.basepoint, "--basepoint")
    corpus = random_words.random_words(s.manifold, v0, r.count, r.max_length, r.seed)
    return converters.dumps({"seed": r.seed, "words": [converters.word_to_json(w) for w in corpus]})


_HANDLERS = {
    "validate": _validate,
    "reduce": _reduce,
    "mul": _mul,
    "inv": _inv,
    "act": _act,
    "realize": _realize,
    "sample": _sample,
    "solve-geodesic": _solve_geodesic,
    "pi1": _pi1,
    "deck": _deck,
    "conjugate": _conjugate,
    "chi": _chi,
    "relator": _relator,
    "random-words": _random_words,
}


_EXIT_CODES = (
    (ParseException, EXIT_PARSE),
    (ValidityException, EXIT_VALIDITY),
    (SolverException, EXIT_CONVERGENCE),
)


def run(request):
    """
    Execute one request. The output is only produced when every step
    succeeded; on failure the result carries the exit code and the message.
    """
    try:
        output = _HANDLERS[request.command](_Session(request))
    except (ParseException, ValidityException, SolverException) as e:
        code = next(c for cls, c in _EXIT_CODES if isinstance(e, cls))
        logger.error("GeoLoop.Cli.run: %s failed, %s", request.command, e)
        return CommandResult(code, None, str(e))

    if not output.endswith("\n"):
        output += "\n"
    return CommandResult(EXIT_OK, output, None)


def main(argv=None, stdout=None, stderr=None, stdin=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        request = CommandRequest.from_args(build_parser().parse_args(argv), stdin)
    except ParseException as e:
        stderr.write("geoloop: {}\n".format(e))
        return EXIT_PARSE
    result = run(request)
    if result.exit_code == EXIT_OK:
        stdout.write(result.output)
    else:
        stderr.write("geoloop: {}\n".format(result.error))
    return result.exit_code


def entry():
    sys.exit(main())
