"""Command-line interface of fdsat.

Exit codes:

0
    Success.
1
    Invalid scenario, arguments or use case id.
2
    File could not be read or written.
3
    No satellite is visible to every node of the scenario.
"""

import argparse
import logging
import sys

import fdsat
from fdsat import geometry
from fdsat import report
from fdsat import scenario
from fdsat import usecases

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_NO_VISIBILITY = 3


class UsageError(ValueError):
    """Invalid command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parser():
    p = _Parser(
        prog='fdsat',
        description='Full-duplex satellite link assessment',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument('--version', action='version',
                   version=f'%(prog)s {fdsat.__version__}')
    p.add_argument('-v', '--verbose', action='count', default=0,
                   help='log progress (-v) or debug detail (-vv) to stderr')
    sub = p.add_subparsers(dest='command', required=True, parser_class=_Parser)

    assess = sub.add_parser(
        'assess', help='compare full duplex with FDD for one scenario',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    assess.add_argument('--scenario', required=True, help='scenario TOML file')
    assess.add_argument('--sic', type=float, default=None,
                        help='SIC in dB, overriding the scenario value')
    assess.add_argument('--format', choices=('table', 'json', 'csv'),
                        default='table', help='report format')
    assess.add_argument('--out', default=None,
                        help='write the report to a file instead of stdout')
    assess.set_defaults(func=cmd_assess)

    sweep = sub.add_parser(
        'sweep', help='sweep SIC and tabulate spectral efficiency',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sweep.add_argument('--scenario', required=True, help='scenario TOML file')
    sweep.add_argument('--sic-range', required=True,
                       help='SIC values as start:stop:step in dB')
    sweep.add_argument('--csv', default=None,
                       help='CSV output file; stdout if omitted')
    sweep.add_argument('--svg', default=None,
                       help='SVG chart of gain against SIC')
    sweep.set_defaults(func=cmd_sweep)

    vis = sub.add_parser(
        'visibility', help='list satellite passes over the scenario nodes',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    vis.add_argument('--scenario', required=True, help='scenario TOML file')
    vis.add_argument('--window-s', type=float, required=True,
                     help='scan window in seconds')
    vis.add_argument('--step-s', type=float, default=None,
                     help='scan step in seconds; scenario search step if omitted')
    vis.add_argument('--min-elev', type=float, default=None,
                     help='minimum elevation in degrees; scenario value if omitted')
    vis.set_defaults(func=cmd_visibility)

    cat = sub.add_parser(
        'catalog', help='list full-duplex use cases',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    cat.add_argument('id', nargs='?', default=None, help='use case id')
    cat.add_argument('--json', action='store_true', help='print JSON')
    cat.set_defaults(func=cmd_catalog)
    return p


def _write(text, path=None):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    logger.info('wrote %s', path)


def cmd_assess(args):
    s = scenario.load_scenario_file(args.scenario)
    if args.sic is not None:
        s = s.with_sic(args.sic, origin='command line')
    result = scenario.assess(s)
    if args.format == 'json':
        text = report.to_json(report.build_document(s, result))
    elif args.format == 'csv':
        table = scenario.sweep_table([(result.sic_db, result.comparison)])
        text = report.to_csv(table)
    else:
        text = report.format_table(s, result)
    _write(text, args.out)
    return EXIT_OK


def cmd_sweep(args):
    values = scenario.parse_sic_range(args.sic_range)
    s = scenario.load_scenario_file(args.scenario)
    table = scenario.sweep_table(scenario.sweep_sic(s, values))
    _write(report.to_csv(table), args.csv)
    if args.svg is not None:
        _write(report.render_svg(table), args.svg)
    return EXIT_OK


def cmd_visibility(args):
    s = scenario.load_scenario_file(args.scenario)
    passes = scenario.visibility(s, args.window_s, step_s=args.step_s,
                                 min_elev_deg=args.min_elev)
    _write(report.format_passes(passes))
    return EXIT_OK


def cmd_catalog(args):
    if args.json:
        if args.id is None:
            doc = [uc.to_dict() for uc in usecases.catalog()]
        else:
            doc = usecases.get(args.id).to_dict()
        _write(report.to_json(doc))
    else:
        table = usecases.catalog_table(args.id)
        _write(table.to_string() + '\n')
    return EXIT_OK


def _configure_logging(verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    """Run the command line and return the exit code."""
    try:
        args = parser().parse_args(argv)
    except UsageError as err:
        print(f'fdsat: error: {err}', file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as err:
        # --help and --version
        return err.code or EXIT_OK

    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except geometry.VisibilityError as err:
        print(f'fdsat: {err}', file=sys.stderr)
        return EXIT_NO_VISIBILITY
    except KeyError as err:
        print(f'fdsat: {err.args[0]}', file=sys.stderr)
        return EXIT_INVALID
    except ValueError as err:
        print(f'fdsat: {err}', file=sys.stderr)
        return EXIT_INVALID
    except OSError as err:
        where = err.filename if err.filename is not None else ''
        print(f'fdsat: {where}: {err.strerror or err}', file=sys.stderr)
        return EXIT_IO


if __name__ == '__main__':
    sys.exit(main())
