"""
Classification Tree Module

Inner nodes carry symbolic suffixes and leaves carry sets of prefixes. A
prefix is sifted from the root: at every inner node its tree query for the
node's suffix is compared, up to a register bijection, with those of the
children's representatives, and a new leaf is created when none matches.

The tree also owns the prefix sets of the learner: U (every sifted prefix)
and the short prefixes S_p, kept prefix-closed by expand().
"""

import hashlib
from typing import Dict, Iterator, List, Optional, Tuple

from ralearn.automaton import Guard, register_index
from ralearn.sdt import TreeOracle, find_bijection, initial_guards
from ralearn.theory import fresh_value
from ralearn.words import Action, DataSymbol, DataWord, EMPTY_SUFFIX, EMPTY_WORD, SymbolicSuffix, sort_words


class ClassificationTreeError(Exception):
    """Exception raised for invalid classification tree operations."""
    pass


class CTNode:
    def __init__(self, rep: DataWord, parent: Optional["CTNode"] = None,
                 suffix: Optional[SymbolicSuffix] = None):
        self.rep = rep
        self.parent = parent
        self.suffix = suffix
        self.children: List["CTNode"] = []
        self.prefixes: List[DataWord] = []

    @property
    def is_leaf(self) -> bool:
        return self.suffix is None

    def path(self) -> List["CTNode"]:
        """Nodes from the root down to this one."""
        nodes = []
        node = self
        while node is not None:
            nodes.append(node)
            node = node.parent
        return nodes[::-1]

    def ancestors(self) -> List[SymbolicSuffix]:
        """Suffixes of the strict ancestors, root first."""
        return [n.suffix for n in self.path()[:-1]]

    def suffixes_to_here(self) -> List[SymbolicSuffix]:
        return [n.suffix for n in self.path() if n.suffix is not None]

    def __repr__(self) -> str:
        if self.is_leaf:
            return f"Leaf(rep={self.rep}, prefixes={len(self.prefixes)})"
        return f"Inner(suffix={self.suffix}, children={len(self.children)})"


def representative_value(u: DataWord, guard: Guard) -> Optional[int]:
    """repr(u, g): the register's value if g forces p == x_i, else the fresh value after u."""
    if not guard.is_satisfiable():
        raise ClassificationTreeError(f"Guard {guard} is unsatisfiable after {u}")
    register = guard.equality_register
    if register is not None:
        i = register_index(register)
        if i > len(u.values):
            raise ClassificationTreeError(f"Guard {guard} refers beyond the data values of {u}")
        return u.values[i - 1]
    return fresh_value(u)


class ClassificationTree:
    """Classification tree with the prefix sets U and S_p."""

    def __init__(self, tree_oracle: TreeOracle, alphabet: Tuple[Action, ...]):
        self.tree_oracle = tree_oracle
        self.alphabet = tuple(alphabet)
        self.root = CTNode(EMPTY_WORD, suffix=EMPTY_SUFFIX)
        self.short_prefixes: List[DataWord] = []
        self.leaf_of: Dict[DataWord, CTNode] = {}

    # ------------------------------------------------------------------ queries

    @property
    def prefixes(self) -> List[DataWord]:
        return list(self.leaf_of)

    def is_short(self, u: DataWord) -> bool:
        return u in self.short_prefixes

    def leaves(self) -> List[CTNode]:
        return [n for n in self.nodes() if n.is_leaf]

    def nodes(self) -> Iterator[CTNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def suffixes(self) -> List[SymbolicSuffix]:
        """Suffixes of all inner nodes."""
        return [n.suffix for n in self.nodes() if not n.is_leaf]

    def ancestors(self, u: DataWord) -> List[SymbolicSuffix]:
        return self.leaf_of[u].ancestors()

    def short_prefixes_in(self, leaf: CTNode) -> List[DataWord]:
        return sort_words(u for u in leaf.prefixes if u in self.short_prefixes)

    def initial_guards(self, u: DataWord, action: Action) -> List[Guard]:
        return initial_guards(self.tree_oracle, u, self.ancestors(u), action)

    def extensions(self, u: DataWord) -> List[Tuple[Action, Guard, DataWord]]:
        """One-symbol extensions of u, one per action and initial guard."""
        result = []
        for action in self.alphabet:
            for guard in self.initial_guards(u, action):
                value = representative_value(u, guard) if action.arity == 1 else None
                result.append((action, guard, u.append(DataSymbol(action, value))))
        return result

    def lca(self, a: CTNode, b: CTNode) -> CTNode:
        if a is b:
            raise ClassificationTreeError("The lowest common ancestor needs two distinct leaves")
        above = set(id(n) for n in a.path())
        for node in reversed(b.path()):
            if id(node) in above:
                return node
        raise ClassificationTreeError("Leaves belong to different trees")

    # ---------------------------------------------------------------- mutation

    def sift(self, u: DataWord, node: Optional[CTNode] = None) -> CTNode:
        node = node or self.root
        while not node.is_leaf:
            suffixes = node.suffixes_to_here()
            match = None
            for child in node.children:
                if find_bijection(self.tree_oracle, u, child.rep, suffixes) is not None:
                    match = child
                    break
            if match is None:
                match = CTNode(u, parent=node)
                node.children.append(match)
            node = match
        if u not in node.prefixes:
            node.prefixes.append(u)
        self.leaf_of[u] = node
        return node

    def expand(self, u: DataWord) -> List[DataWord]:
        """Make u a short prefix and sift its one-symbol extensions; returns the new prefixes."""
        if u not in self.leaf_of:
            self.sift(u)
        if u in self.short_prefixes:
            return []
        self.short_prefixes.append(u)
        added = []
        for _, _, extension in self.extensions(u):
            if extension not in self.leaf_of:
                self.sift(extension)
                added.append(extension)
        return added

    def refine(self, leaf: CTNode, suffix: SymbolicSuffix) -> List[CTNode]:
        """
        Turn a leaf into an inner node labelled with suffix and re-sift its
        prefixes: the representative first, then short prefixes, then the
        rest, each group in length-lexicographic order. Returns the new leaves.
        """
        if not leaf.is_leaf:
            raise ClassificationTreeError("Only leaves can be refined")
        prefixes = list(leaf.prefixes)
        leaf.suffix = suffix
        leaf.prefixes = []
        rest = [u for u in prefixes if u != leaf.rep]
        short = sort_words(u for u in rest if u in self.short_prefixes)
        others = sort_words(u for u in rest if u not in self.short_prefixes)
        order = ([leaf.rep] if leaf.rep in prefixes else []) + short + others
        for u in order:
            self.sift(u, leaf)
        return list(leaf.children)

    # ------------------------------------------------------------------- output

    def edge_label(self, child: CTNode) -> str:
        """Short digest of the child's tree-query results over its ancestors."""
        trees = [str(self.tree_oracle.tree_query(child.rep, s)) for s in child.ancestors()]
        return hashlib.sha1("\n".join(trees).encode("utf-8")).hexdigest()[:8]

    def dump(self) -> str:
        lines: List[str] = []
        self._dump(self.root, 0, None, lines)
        return "\n".join(lines)

    def _dump(self, node: CTNode, depth: int, label: Optional[str], lines: List[str]) -> None:
        pad = "  " * depth
        edge = f"--{label}--> " if label else ""
        if node.is_leaf:
            names = ", ".join(f"{u}*" if u in self.short_prefixes else str(u) for u in sort_words(node.prefixes))
            lines.append(f"{pad}{edge}{{{names}}}  rep={node.rep}")
            return
        lines.append(f"{pad}{edge}[{node.suffix}]  rep={node.rep}")
        for child in node.children:
            self._dump(child, depth + 1, self.edge_label(child), lines)

    def to_dot(self) -> str:
        lines = ["digraph CT {", "  node [fontname=monospace];"]
        ids = {}
        for index, node in enumerate(self.nodes()):
            ids[id(node)] = f"n{index}"
            if node.is_leaf:
                names = "\\n".join(f"<u>{u}</u>" if u in self.short_prefixes else str(u)
                                   for u in sort_words(node.prefixes))
                lines.append(f'  n{index} [shape=box, label=<{names.replace(chr(92) + "n", "<br/>")}>];')
            else:
                lines.append(f'  n{index} [shape=ellipse, label="{node.suffix}"];')
        for node in self.nodes():
            for child in node.children:
                lines.append(f'  {ids[id(node)]} -> {ids[id(child)]} [label="{self.edge_label(child)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
