"""
The Burkhardt quartic and its 45 nodes.

The nodes are generated in closed form and written to `data/burkhardt.csv` by
`write_fixture`; every node is checked against the quartic by `nodal.verify_nodes`.
"""
from itertools import combinations, product
from pathlib import Path
from typing import List, Tuple, Union

from .fields import EisensteinNumber, FieldMode, format_node_file
from .nodal import NodalConfiguration
from .polynomial import Quartic, parse_quartic

BURKHARDT_EQUATION = 'x0^4 - x0*(x1^3 + x2^3 + x3^3 + x4^3) + 3*x1*x2*x3*x4'
DATA_DIR = Path(__file__).resolve().parent / 'data'

Node = Tuple[EisensteinNumber, ...]


def burkhardt_quartic() -> Quartic:
    """The quartic x0^4 - x0(x1^3 + x2^3 + x3^3 + x4^3) + 3 x1 x2 x3 x4."""
    return parse_quartic(BURKHARDT_EQUATION, source='burkhardt')


def burkhardt_nodes() -> List[Node]:
    """
    The 45 nodes of the Burkhardt quartic over Q(ω).

    27 nodes (1 : ω^a : ω^b : ω^c : ω^d) with a + b + c + d = 0 mod 3, and for each
    pair i < j of 1..4 and each a, the node with x_i = 1, x_j = -ω^a and all other
    coordinates zero.
    """
    omega = EisensteinNumber.omega()
    one, zero = EisensteinNumber(1), EisensteinNumber(0)
    powers = [omega ** exponent for exponent in range(3)]
    nodes = [
        (one,) + tuple(powers[exponent] for exponent in exponents)
        for exponents in product(range(3), repeat=4)
        if sum(exponents) % 3 == 0
    ]
    for first, second in combinations(range(1, 5), 2):
        for exponent in range(3):
            node = [zero] * 5
            node[first] = one
            node[second] = -powers[exponent]
            nodes.append(tuple(node))
    return nodes


def burkhardt_configuration() -> NodalConfiguration:
    """The 45 nodes with the Burkhardt quartic attached."""
    return NodalConfiguration(nodes=tuple(burkhardt_nodes()), mode=FieldMode.EISENSTEIN, quartic=burkhardt_quartic())


def write_fixture(directory: Union[str, Path] = DATA_DIR) -> Path:
    """
    Write burkhardt.csv and burkhardt.poly.

    :return: The path of the node file.
    """
    directory = Path(directory)
    nodes_path = directory / 'burkhardt.csv'
    nodes_path.write_text(format_node_file(FieldMode.EISENSTEIN, burkhardt_nodes()), encoding='utf-8')
    (directory / 'burkhardt.poly').write_text(BURKHARDT_EQUATION + '\n', encoding='utf-8')
    return nodes_path
