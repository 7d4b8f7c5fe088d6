"""Strongly connected components of small directed graphs."""

from collections.abc import Callable, Hashable, Iterable


def tarjan_scc(nodes: Iterable[Hashable], successors: Callable) -> list[list]:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit.

    Components are returned in reverse topological order (sinks first), each
    listing its nodes in the order they were popped from the stack.
    """
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    result = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                result.append(component)
    return result


def nontrivial_sccs(nodes, successors) -> list[list]:
    """SCCs that can carry an infinite walk: size > 1, or a single node with a self-loop."""
    out = []
    for comp in tarjan_scc(nodes, successors):
        if len(comp) > 1 or comp[0] in set(successors(comp[0])):
            out.append(comp)
    return out


def has_cycle(nodes, successors) -> bool:
    return bool(nontrivial_sccs(nodes, successors))
