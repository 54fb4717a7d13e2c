import random
import sys

from hmn import Hmn


def random_typed_hmn(rng: random.Random, n_nodes=6, n_layers=2, n_types=2, p=0.4, directed=False, multi=True, weighted=False):
    """Random typed HMN; nodes may sit in several layers when ``multi`` is set."""
    g = Hmn(directed=directed, layers=[f"L{i}" for i in range(n_layers)])
    types = [0] + [g.add_node_type(f"t{i}") for i in range(1, n_types)]
    etypes = [0, g.add_edge_type("e1")]
    for _ in range(n_nodes):
        if multi:
            layers = [lid for lid in range(n_layers) if rng.random() < 0.5] or [rng.randrange(n_layers)]
        else:
            layers = [rng.randrange(n_layers)]
        g.add_node(rng.choice(types), layers)
    xs = list(g.layered_nodes())
    for a in xs:
        for b in xs:
            if a == b or (not directed and b < a):
                continue
            if rng.random() < p:
                w = float(rng.randint(1, 3)) if weighted else 1.0
                g.add_edge(a, b, rng.choice(etypes), w)
    return g


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
