"""A guided tour: parse problems, search for loops, prove finiteness, replay.

Run from the repository root with ``python demos/walkthrough.py``.
"""

from pathlib import Path

from reldp import Bounds, bounded_finiteness, dump_proof, initial, load, load_proof, prove, replay, split_workflow
from reldp.processors import estimated_graph

HERE = Path(__file__).parent


def section(title):
    print(f"\n== {title} ==")


section("minus: a finiteness proof")
minus = initial(load(HERE / "minus.trs").payload.strict)
print("initial problem:", minus)
root = prove(minus)
print(root.render())
text = dump_proof(root)
print("certificate replays:", bool(replay(load_proof(text))))

section("a weak pair closed into a loop by a strict rule")
loop = load(HERE / "weak_loop.rdp").payload
result = bounded_finiteness(loop, Bounds(4, 5, 50))
print("oracle:", result.status.value)
w = result.witness
print("pairs on the loop:", w.pair_sequence(), "minimality:", w.minimality.value)
print("connection steps:", [(s.rule_index, s.position, s.strict) for s in w.closing_reduction])

section("split by labeling with a parity model")
parity = load(HERE / "parity.rdp").payload
print("estimated graph:", estimated_graph(parity))
tree = split_workflow(parity)
print(tree.render())
print("replays:", bool(replay(tree)))
# the tree keeps the split visible; the full prover lifts the loop to the root
print("prove:", prove(parity).outcome.value)
