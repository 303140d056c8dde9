# pdgrid/core/fixtures.py
"""Plain-text fixture format for configurations.

    topology=<cycle|torus|window> field=<C|D|->
    CCDD...
    ...
"""

import re

import numpy as np

from pdgrid.core.configuration import Configuration
from pdgrid.core.strategy import Strategy
from pdgrid.core.topology import CYCLE, TORUS, WINDOW, Topology
from pdgrid.errors import InvalidParams

HEADER_RE = re.compile(r'^topology=(cycle|torus|window) field=([CD-])$')


def format_fixture(config: Configuration) -> str:
    """Render a configuration; the inverse of `parse_fixture`."""
    topology = config.topology
    field = config.field.symbol if config.field is not None else '-'
    lines = [f'topology={topology.kind} field={field}']
    grid = config.strategies.reshape(topology.rows, topology.cols)
    for row in grid.tolist():
        lines.append(''.join('C' if x else 'D' for x in row))
    return '\n'.join(lines) + '\n'


def parse_fixture(text: str) -> Configuration:
    """Parse fixture text into a configuration.

    Raises:
        InvalidParams: On a malformed header, ragged rows or bad symbols.
    """
    lines = text.split('\n')
    if lines and lines[-1] == '':
        lines.pop()
    if not lines:
        raise InvalidParams('Empty fixture')
    match = HEADER_RE.match(lines[0])
    if not match:
        raise InvalidParams(f'Malformed fixture header: {lines[0]!r}')
    kind, field_symbol = match.groups()
    rows = lines[1:]
    if not rows or any(len(row) != len(rows[0]) for row in rows):
        raise InvalidParams('Fixture rows must be non-empty and of equal length')
    if any(ch not in 'CD' for row in rows for ch in row):
        raise InvalidParams("Fixture rows may only contain 'C' and 'D'")

    if kind == WINDOW:
        if field_symbol == '-':
            raise InvalidParams('Window fixtures need a field strategy')
        field = Strategy.from_symbol(field_symbol)
    else:
        if field_symbol != '-':
            raise InvalidParams(f'{kind} fixtures take field=-')
        field = None

    if kind == CYCLE:
        if len(rows) != 1:
            raise InvalidParams('Cycle fixtures have exactly one row')
        topology = Topology.cycle(len(rows[0]))
    elif kind == TORUS:
        if len(rows) != len(rows[0]):
            raise InvalidParams('Torus fixtures must be square')
        topology = Topology.torus(len(rows))
    else:
        topology = Topology.window(len(rows), len(rows[0]))

    strategies = np.array([ch == 'C' for row in rows for ch in row], dtype=np.uint8)
    return Configuration(topology, strategies, field)
